//! Orbit iteration over big integers with exact cycle detection.
//!
//! Cycles are found by Brent's algorithm, which keeps constant memory however
//! long the trajectory grows; a bounded hash table over the first few steps
//! catches short cycles directly.

use std::collections::HashMap;
use std::io::{self, Write};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::catalogue;
use crate::map::CongruentialMap;

#[derive(Clone, Debug)]
pub struct OrbitOptions {
    pub step_bound: u64,
    /// Stop once a value exceeds this bound. `None` means unbounded.
    pub value_bound: Option<BigUint>,
    pub store_values: bool,
    pub record_extrema: bool,
    /// Number of initial steps remembered in the hash table.
    pub hash_window: usize,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        OrbitOptions {
            step_bound: 1_000_000,
            value_bound: Some(BigUint::one() << 4096u32),
            store_values: false,
            record_extrema: true,
            hash_window: 4096,
        }
    }
}

impl OrbitOptions {
    pub fn steps(step_bound: u64) -> Self {
        OrbitOptions { step_bound, ..Self::default() }
    }

    pub fn unbounded_values(mut self) -> Self {
        self.value_bound = None;
        self
    }

    pub fn storing_values(mut self) -> Self {
        self.store_values = true;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundHit {
    StepBound,
    ValueBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    /// The value at `entry_step` recurs `length` steps later.
    Cycle { length: u64, entry_step: u64 },
    Open { bound: BoundHit },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremumKind {
    Min,
    Max,
}

/// A strict local extremum at an interior step (both neighbours exist).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Extremum {
    pub step: u64,
    pub kind: ExtremumKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRecord {
    pub seed: BigUint,
    /// Number of map applications performed.
    pub steps: u64,
    /// `values[i]` is the value after `i` steps, when stored.
    pub values: Option<Vec<BigUint>>,
    pub outcome: Outcome,
    pub extrema: Vec<Extremum>,
    pub last_value: BigUint,
    pub max_bits: u64,
    pub max_bits_step: u64,
}

impl OrbitRecord {
    pub fn cycle(&self) -> Option<(u64, u64)> {
        match self.outcome {
            Outcome::Cycle { length, entry_step } => Some((length, entry_step)),
            Outcome::Open { .. } => None,
        }
    }

    pub fn minima(&self) -> impl Iterator<Item = u64> + '_ {
        self.extrema.iter().filter(|e| e.kind == ExtremumKind::Min).map(|e| e.step)
    }

    pub fn maxima(&self) -> impl Iterator<Item = u64> + '_ {
        self.extrema.iter().filter(|e| e.kind == ExtremumKind::Max).map(|e| e.step)
    }

    /// `step,value_bits,is_local_min,is_local_max` rows; needs stored values.
    pub fn write_stats_csv(&self, out: &mut impl Write) -> io::Result<()> {
        let values = self.values.as_ref().ok_or_else(|| {
            io::Error::new(io::ErrorKind::InvalidInput, "trajectory values were not stored")
        })?;
        writeln!(out, "step,value_bits,is_local_min,is_local_max")?;
        let mut ext = self.extrema.iter().peekable();
        for (i, v) in values.iter().enumerate() {
            let (mut is_min, mut is_max) = (false, false);
            while let Some(e) = ext.peek().filter(|e| e.step == i as u64) {
                match e.kind {
                    ExtremumKind::Min => is_min = true,
                    ExtremumKind::Max => is_max = true,
                }
                ext.next();
            }
            writeln!(out, "{i},{},{},{}", v.bits(), is_min as u8, is_max as u8)?;
        }
        Ok(())
    }
}

pub(crate) fn classify(prev: &BigUint, cur: &BigUint, next: &BigUint) -> Option<ExtremumKind> {
    if prev > cur && next > cur {
        Some(ExtremumKind::Min)
    } else if prev < cur && next < cur {
        Some(ExtremumKind::Max)
    } else {
        None
    }
}

pub fn orbit(f: &CongruentialMap, seed: &BigUint, options: &OrbitOptions) -> OrbitRecord {
    assert!(options.step_bound >= 1, "step bound must be at least 1");
    let mut values = options.store_values.then(|| vec![seed.clone()]);
    let mut extrema = Vec::new();
    let mut window: HashMap<BigUint, u64> = HashMap::new();
    if options.hash_window > 0 {
        window.insert(seed.clone(), 0);
    }
    let mut prev: Option<BigUint> = None;
    let mut current = seed.clone();
    let (mut max_bits, mut max_bits_step) = (seed.bits(), 0);

    let mut tortoise = seed.clone();
    let (mut power, mut lam) = (1u64, 0u64);
    let mut step = 0u64;

    let outcome = loop {
        if step == options.step_bound {
            break Outcome::Open { bound: BoundHit::StepBound };
        }
        let next = f.eval(&current);
        step += 1;

        if options.record_extrema {
            if let Some(kind) = prev.as_ref().and_then(|p| classify(p, &current, &next)) {
                extrema.push(Extremum { step: step - 1, kind });
            }
        }
        if next.bits() > max_bits {
            max_bits = next.bits();
            max_bits_step = step;
        }
        if let Some(v) = values.as_mut() {
            v.push(next.clone());
        }
        if options.value_bound.as_ref().is_some_and(|b| &next > b) {
            current = next;
            break Outcome::Open { bound: BoundHit::ValueBound };
        }

        if step <= options.hash_window as u64 {
            if let Some(&first) = window.get(&next) {
                current = next;
                break Outcome::Cycle { length: step - first, entry_step: first };
            }
            window.insert(next.clone(), step);
        } else if !window.is_empty() {
            window = HashMap::new();
        }

        lam += 1;
        if next == tortoise {
            current = next;
            break Outcome::Cycle { length: lam, entry_step: cycle_entry(f, seed, lam) };
        }
        if lam == power {
            tortoise = next.clone();
            power *= 2;
            lam = 0;
        }
        prev = Some(std::mem::replace(&mut current, next));
    };

    OrbitRecord {
        seed: seed.clone(),
        steps: step,
        values,
        outcome,
        extrema,
        last_value: current,
        max_bits,
        max_bits_step,
    }
}

/// First step whose value lies on the cycle of length `length`.
fn cycle_entry(f: &CongruentialMap, seed: &BigUint, length: u64) -> u64 {
    let mut ahead = seed.clone();
    for _ in 0..length {
        ahead = f.eval(&ahead);
    }
    let mut behind = seed.clone();
    let mut mu = 0;
    while behind != ahead {
        behind = f.eval(&behind);
        ahead = f.eval(&ahead);
        mu += 1;
    }
    mu
}

pub fn iterate(f: &CongruentialMap, seed: &BigUint, steps: u64) -> BigUint {
    (0..steps).fold(seed.clone(), |x, _| f.eval(&x))
}

/// The values on the detected cycle, starting at its entry.
pub fn cycle_values(f: &CongruentialMap, record: &OrbitRecord) -> Option<Vec<BigUint>> {
    let (length, entry) = record.cycle()?;
    let mut x = iterate(f, &record.seed, entry);
    let mut out = Vec::with_capacity(length as usize);
    for _ in 0..length {
        out.push(x.clone());
        x = f.eval(&x);
    }
    Some(out)
}

/// Re-derives a reported cycle by direct iteration.
pub fn verify_cycle(f: &CongruentialMap, record: &OrbitRecord) -> bool {
    let Some((length, entry)) = record.cycle() else {
        return true;
    };
    let start = iterate(f, &record.seed, entry);
    let mut x = f.eval(&start);
    for _ in 1..length {
        if x == start {
            return false;
        }
        x = f.eval(&x);
    }
    x == start && (entry == 0 || iterate(f, &record.seed, entry - 1) != iterate(f, &start, length - 1))
}

#[derive(Clone, Debug, Serialize)]
pub struct AlphaOrbitReport {
    pub n_max: u64,
    pub checked: u64,
    pub counterexamples: Vec<String>,
}

impl AlphaOrbitReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Checks, for `n ≤ n_max`, the step-level facts behind the orbit structure
/// of the associator: `α⁻¹(0) = 0`; odd `n` gives `α⁻¹(n) = 2n + 1`; even
/// `n > 0` gives `0 < α⁻¹(n) < n`.
pub fn verify_alpha_orbit_structure(n_max: u64) -> AlphaOrbitReport {
    let inv = catalogue::alpha().inverse().expect("α is a bijection");
    let mut counterexamples = Vec::new();
    for n in 0..=n_max {
        let big = BigUint::from(n);
        let image = inv.eval(&big);
        let ok = if n == 0 {
            image.is_zero()
        } else if n % 2 == 1 {
            image == BigUint::from(2 * n + 1) && image.bit(0) && image > big
        } else {
            image < big && !image.is_zero()
        };
        if !ok {
            counterexamples.push(format!("alpha^-1({n}) = {image}"));
        }
    }
    AlphaOrbitReport { n_max, checked: n_max + 1, counterexamples }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuccReport {
    pub k_max: u64,
    pub n_max: u64,
    pub checked: u64,
    /// `(k, n)` with `λ^k(n) + 1 ≠ ρ^k(n + 1)`.
    pub mismatches: Vec<(u64, u64)>,
}

impl SuccReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// `λ^k(n) + 1 = ρ^k(n + 1)` for all `k ≤ k_max`, `n ≤ n_max`.
pub fn verify_succ_naturality(k_max: u64, n_max: u64) -> SuccReport {
    let (lambda, rho) = (catalogue::lambda(), catalogue::rho());
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for n in 0..=n_max {
        let mut l = BigUint::from(n);
        let mut r = BigUint::from(n + 1);
        for k in 0..=k_max {
            checked += 1;
            if &l + 1u32 != r {
                mismatches.push((k, n));
            }
            l = lambda.eval(&l);
            r = rho.eval(&r);
        }
    }
    SuccReport { k_max, n_max, checked, mismatches }
}
