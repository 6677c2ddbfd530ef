//! Bijectivity certificates and inverses.
//!
//! Piece `j` of a map with modulus `K` sends the class `K·m + j` onto the
//! progression `s_j·m + t_j`. The map is a bijection of ℕ exactly when every
//! `s_j > 0`, every `t_j < s_j`, and the residue classes `t_j mod s_j` tile
//! the integers. An offset `t_j ≥ s_j` leaves `t_j − s_j` uncovered: no other
//! progression may share its class without colliding with piece `j`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::affine::AffinePiece;
use crate::error::{Error, Result};
use crate::map::CongruentialMap;

/// Above this many residues the cover check switches from a marking pass
/// to pairwise disjointness plus a density count.
const MARKING_LIMIT: usize = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Progression {
    pub step: BigUint,
    pub offset: BigUint,
}

impl fmt::Display for Progression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}N+{}", self.step, self.offset)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionCertificate {
    /// Image progression of each domain class, indexed by residue.
    pub progressions: Vec<Progression>,
    /// `lcm` of the steps; the progressions tile `0..period`.
    pub period: BigUint,
}

impl BijectionCertificate {
    /// Re-checks the tiling by direct enumeration. Only feasible for small periods.
    pub fn verify_by_enumeration(&self) -> bool {
        let Some(period) = self.period.to_usize() else {
            return false;
        };
        let mut hits = vec![0u32; period];
        for p in &self.progressions {
            let (Some(step), Some(offset)) = (p.step.to_usize(), p.offset.to_usize()) else {
                return false;
            };
            if step == 0 || offset >= step {
                return false;
            }
            for r in (offset..period).step_by(step) {
                hits[r] += 1;
            }
        }
        hits.iter().all(|&h| h == 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Refusal {
    /// Piece is constant, so the map is not injective.
    ZeroSlope { residue: usize },
    /// Image of the class starts above its own step.
    OffsetBeyondStep { residue: usize, step: String, offset: String },
    /// Two image progressions share the value `witness`.
    Overlap { first: usize, second: usize, witness: String },
    /// Residue `witness` modulo `period` is hit by no image progression.
    Gap { witness: String, period: String },
}

impl fmt::Display for Refusal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refusal::ZeroSlope { residue } => write!(f, "piece {residue} is constant"),
            Refusal::OffsetBeyondStep { residue, step, offset } => write!(
                f,
                "piece {residue} has image {step}N+{offset} with offset not below its step"
            ),
            Refusal::Overlap { first, second, witness } => {
                write!(f, "pieces {first} and {second} both reach {witness}")
            }
            Refusal::Gap { witness, period } => {
                write!(f, "residue {witness} mod {period} is not in the image")
            }
        }
    }
}

pub fn is_bijection(f: &CongruentialMap) -> std::result::Result<BijectionCertificate, Refusal> {
    let k = f.modulus();
    let mut progressions = Vec::with_capacity(k);
    for (j, p) in f.pieces().iter().enumerate() {
        if p.a().is_zero() {
            return Err(Refusal::ZeroSlope { residue: j });
        }
        let (step, offset) = p.conway_form(k, j);
        let (step, offset) = (step.magnitude().clone(), offset.magnitude().clone());
        if offset >= step {
            return Err(Refusal::OffsetBeyondStep {
                residue: j,
                step: step.to_string(),
                offset: offset.to_string(),
            });
        }
        progressions.push(Progression { step, offset });
    }
    let period = progressions
        .iter()
        .fold(BigUint::one(), |acc, p| acc.lcm(&p.step));
    match period.to_usize().filter(|&l| l <= MARKING_LIMIT) {
        Some(l) => check_by_marking(&progressions, l)?,
        None => check_pairwise(&progressions, &period)?,
    }
    Ok(BijectionCertificate { progressions, period })
}

fn check_by_marking(progressions: &[Progression], period: usize) -> std::result::Result<(), Refusal> {
    let mut owner = vec![usize::MAX; period];
    for (j, p) in progressions.iter().enumerate() {
        let step = p.step.to_usize().unwrap();
        let offset = p.offset.to_usize().unwrap();
        for r in (offset..period).step_by(step) {
            if owner[r] != usize::MAX {
                return Err(Refusal::Overlap { first: owner[r], second: j, witness: r.to_string() });
            }
            owner[r] = j;
        }
    }
    match owner.iter().position(|&o| o == usize::MAX) {
        Some(r) => Err(Refusal::Gap { witness: r.to_string(), period: period.to_string() }),
        None => Ok(()),
    }
}

fn check_pairwise(progressions: &[Progression], period: &BigUint) -> std::result::Result<(), Refusal> {
    for (i, p) in progressions.iter().enumerate() {
        for (j, q) in progressions.iter().enumerate().skip(i + 1) {
            if let Some(w) = crt(p, q) {
                return Err(Refusal::Overlap { first: i, second: j, witness: w.to_string() });
            }
        }
    }
    let covered: BigUint = progressions.iter().map(|p| period / &p.step).sum();
    if &covered == period {
        return Ok(());
    }
    // disjoint but too sparse: some residue below the period is missing
    let mut r = BigUint::zero();
    loop {
        if !progressions.iter().any(|p| &r % &p.step == p.offset) {
            return Err(Refusal::Gap { witness: r.to_string(), period: period.to_string() });
        }
        r += 1u32;
    }
}

/// Smallest common member of two progressions, if any.
fn crt(p: &Progression, q: &Progression) -> Option<BigUint> {
    let (s1, t1) = (BigInt::from(p.step.clone()), BigInt::from(p.offset.clone()));
    let (s2, t2) = (BigInt::from(q.step.clone()), BigInt::from(q.offset.clone()));
    let e = s1.extended_gcd(&s2);
    let diff = &t2 - &t1;
    if !diff.is_multiple_of(&e.gcd) {
        return None;
    }
    let l = &s1 / &e.gcd * &s2;
    let k = (&diff / &e.gcd * &e.x).mod_floor(&(&s2 / &e.gcd));
    let mut x = (&t1 + &s1 * k).mod_floor(&l);
    // progressions start at their offsets
    let start = t1.clone().max(t2.clone());
    while x < start {
        x += &l;
    }
    debug_assert!(!x.is_negative());
    x.to_biguint()
}

/// Inverse of a certified bijection: on the class `t_j mod s_j` it is
/// `n ↦ (c_j·n − b_j)/a_j`.
pub fn inverse(f: &CongruentialMap) -> Result<CongruentialMap> {
    let cert = is_bijection(f).map_err(Error::NotBijection)?;
    inverse_with(f, &cert)
}

pub fn inverse_with(f: &CongruentialMap, cert: &BijectionCertificate) -> Result<CongruentialMap> {
    let period = cert
        .period
        .to_usize()
        .ok_or_else(|| Error::InvalidMap(format!("inverse modulus {} is too large", cert.period)))?;
    let mut pieces: Vec<Option<AffinePiece>> = vec![None; period];
    for (j, (p, prog)) in f.pieces().iter().zip(&cert.progressions).enumerate() {
        let inv = AffinePiece::new(p.c().clone(), -p.b(), p.a().clone())
            .ok_or_else(|| Error::InvalidMap(format!("piece {j} cannot be inverted")))?;
        let step = prog.step.to_usize().unwrap();
        let offset = prog.offset.to_usize().unwrap();
        for r in (offset..period).step_by(step) {
            pieces[r] = Some(inv.clone());
        }
    }
    let pieces = pieces
        .into_iter()
        .map(|p| p.expect("certificate tiles the period"))
        .collect();
    Ok(CongruentialMap::from_parts_unchecked(period, pieces).normalize())
}

impl CongruentialMap {
    pub fn is_bijection(&self) -> std::result::Result<BijectionCertificate, Refusal> {
        is_bijection(self)
    }

    pub fn inverse(&self) -> Result<CongruentialMap> {
        inverse(self)
    }
}
