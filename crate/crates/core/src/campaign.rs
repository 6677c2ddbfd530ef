//! Long-running orbit search for `ρ` with resumable checkpoints.
//!
//! The `λ` trajectory from `seed − 1` is advanced in lockstep and the
//! linkage `λ^k(seed − 1) + 1 = ρ^k(seed)` is asserted at every checkpoint.
//!
//! Checkpoint format:
//!
//! ```text
//! occ-checkpoint v1
//! seed 8
//! step 100000
//! value 1234...
//! prev_value 925...
//! twin_seed 7
//! twin_value 1233...
//! local_minima 31012
//! local_maxima 31011
//! min_pos 99998
//! max_pos 99997
//! max_bits 8165
//! max_bits_pos 99990
//! ```
//!
//! `prev_value`, `min_pos` and `max_pos` may be `none`.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::catalogue;
use crate::error::{Error, Result};
use crate::orbit::{classify, BoundHit, ExtremumKind, Outcome};

pub const CHECKPOINT_HEADER: &str = "occ-checkpoint v1";

#[derive(Clone, Debug)]
pub struct CampaignConfig {
    pub seed: BigUint,
    /// `None` runs until a cycle or the value bound is hit.
    pub step_bound: Option<u64>,
    pub value_bound: Option<BigUint>,
    pub checkpoint_every: u64,
    pub checkpoint_path: Option<PathBuf>,
    /// Continue from `checkpoint_path` if it exists.
    pub resume: bool,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            seed: BigUint::from(8u32),
            step_bound: Some(1_000_000),
            value_bound: None,
            checkpoint_every: 100_000,
            checkpoint_path: None,
            resume: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CampaignState {
    pub seed: BigUint,
    pub step: u64,
    pub value: BigUint,
    pub prev_value: Option<BigUint>,
    pub twin_value: BigUint,
    pub local_minima: u64,
    pub local_maxima: u64,
    pub min_pos: Option<u64>,
    pub max_pos: Option<u64>,
    pub max_bits: u64,
    pub max_bits_pos: u64,
}

impl CampaignState {
    pub fn start(seed: &BigUint) -> Result<Self> {
        if seed.is_zero() {
            return Err(Error::InvalidMap("campaign seed must be positive (the twin starts at seed - 1)".into()));
        }
        Ok(CampaignState {
            seed: seed.clone(),
            step: 0,
            value: seed.clone(),
            prev_value: None,
            twin_value: seed - 1u32,
            local_minima: 0,
            local_maxima: 0,
            min_pos: None,
            max_pos: None,
            max_bits: seed.bits(),
            max_bits_pos: 0,
        })
    }

    pub fn linkage_holds(&self) -> bool {
        &self.twin_value + 1u32 == self.value
    }

    pub fn to_text(&self) -> String {
        fn opt<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map_or_else(|| "none".to_string(), T::to_string)
        }
        format!(
            "{CHECKPOINT_HEADER}\nseed {}\nstep {}\nvalue {}\nprev_value {}\ntwin_seed {}\ntwin_value {}\n\
             local_minima {}\nlocal_maxima {}\nmin_pos {}\nmax_pos {}\nmax_bits {}\nmax_bits_pos {}\n",
            self.seed,
            self.step,
            self.value,
            opt(&self.prev_value),
            &self.seed - 1u32,
            self.twin_value,
            self.local_minima,
            self.local_maxima,
            opt(&self.min_pos),
            opt(&self.max_pos),
            self.max_bits,
            self.max_bits_pos,
        )
    }

    pub fn from_text(text: &str, path: &str) -> Result<Self> {
        let fail = |message: String| Error::Checkpoint { path: path.to_string(), message };
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        match lines.next() {
            Some(CHECKPOINT_HEADER) => {}
            Some(other) => return Err(fail(format!("unsupported header `{other}`"))),
            None => return Err(fail("empty checkpoint".into())),
        }
        let mut fields: HashMap<&str, &str> = HashMap::new();
        for line in lines {
            let (key, value) = line
                .split_once(' ')
                .ok_or_else(|| fail(format!("malformed line `{line}`")))?;
            if fields.insert(key, value.trim()).is_some() {
                return Err(fail(format!("duplicate field `{key}`")));
            }
        }
        let get = |key: &str| fields.get(key).copied().ok_or_else(|| fail(format!("missing field `{key}`")));
        let big = |key: &str| -> Result<BigUint> {
            get(key)?.parse().map_err(|_| fail(format!("field `{key}` is not a decimal integer")))
        };
        let num = |key: &str| -> Result<u64> {
            get(key)?.parse().map_err(|_| fail(format!("field `{key}` is not a step count")))
        };
        let opt_big = |key: &str| -> Result<Option<BigUint>> {
            match get(key)? {
                "none" => Ok(None),
                _ => big(key).map(Some),
            }
        };
        let opt_num = |key: &str| -> Result<Option<u64>> {
            match get(key)? {
                "none" => Ok(None),
                _ => num(key).map(Some),
            }
        };
        let state = CampaignState {
            seed: big("seed")?,
            step: num("step")?,
            value: big("value")?,
            prev_value: opt_big("prev_value")?,
            twin_value: big("twin_value")?,
            local_minima: num("local_minima")?,
            local_maxima: num("local_maxima")?,
            min_pos: opt_num("min_pos")?,
            max_pos: opt_num("max_pos")?,
            max_bits: num("max_bits")?,
            max_bits_pos: num("max_bits_pos")?,
        };
        if state.seed.is_zero() || big("twin_seed")? != &state.seed - 1u32 {
            return Err(fail("twin seed must be seed - 1".into()));
        }
        if !state.linkage_holds() {
            return Err(fail("twin value is not value - 1".into()));
        }
        if (state.step == 0) != state.prev_value.is_none() {
            return Err(fail("prev_value must be present exactly when step > 0".into()));
        }
        Ok(state)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Self::from_text(&text, &path.display().to_string())
    }

    /// Writes via a temporary file and rename so a crash never leaves a torn checkpoint.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        fs::write(&tmp, self.to_text())?;
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CampaignReport {
    pub seed: String,
    pub resumed_from_step: u64,
    pub steps: u64,
    pub outcome: Outcome,
    pub last_value_bits: u64,
    pub local_minima: u64,
    pub local_maxima: u64,
    pub max_bits: u64,
    pub max_bits_pos: u64,
    pub checkpoints_written: u64,
    pub linkage_checks: u64,
}

pub fn occ_campaign(config: &CampaignConfig) -> Result<(CampaignReport, CampaignState)> {
    let (rho, lambda) = (catalogue::rho(), catalogue::lambda());
    let mut state = match (&config.checkpoint_path, config.resume) {
        (Some(path), true) if path.exists() => {
            let s = CampaignState::load(path)?;
            if s.seed != config.seed {
                return Err(Error::Checkpoint {
                    path: path.display().to_string(),
                    message: format!("checkpoint seed {} does not match requested seed {}", s.seed, config.seed),
                });
            }
            s
        }
        _ => CampaignState::start(&config.seed)?,
    };
    let resumed_from_step = state.step;
    let every = config.checkpoint_every.max(1);
    let mut checkpoints_written = 0;
    let mut linkage_checks = 0;

    let mut tortoise = state.value.clone();
    let (mut power, mut lam) = (1u64, 0u64);

    let checkpoint = |state: &CampaignState, written: &mut u64, checks: &mut u64| -> Result<()> {
        *checks += 1;
        if !state.linkage_holds() {
            return Err(Error::Checkpoint {
                path: config.checkpoint_path.as_ref().map_or("<memory>".into(), |p| p.display().to_string()),
                message: format!("linkage broken at step {}: lambda-twin + 1 != rho value", state.step),
            });
        }
        if let Some(path) = &config.checkpoint_path {
            state.save(path)?;
            *written += 1;
        }
        Ok(())
    };

    let outcome = loop {
        if config.step_bound.is_some_and(|b| state.step >= b) {
            break Outcome::Open { bound: BoundHit::StepBound };
        }
        let next = rho.eval(&state.value);
        state.twin_value = lambda.eval(&state.twin_value);
        state.step += 1;
        if let Some(kind) = state.prev_value.as_ref().and_then(|p| classify(p, &state.value, &next)) {
            match kind {
                ExtremumKind::Min => {
                    state.local_minima += 1;
                    state.min_pos = Some(state.step - 1);
                }
                ExtremumKind::Max => {
                    state.local_maxima += 1;
                    state.max_pos = Some(state.step - 1);
                }
            }
        }
        if next.bits() > state.max_bits {
            state.max_bits = next.bits();
            state.max_bits_pos = state.step;
        }
        state.prev_value = Some(std::mem::replace(&mut state.value, next));

        if state.step % every == 0 {
            checkpoint(&state, &mut checkpoints_written, &mut linkage_checks)?;
        }
        if config.value_bound.as_ref().is_some_and(|b| &state.value > b) {
            break Outcome::Open { bound: BoundHit::ValueBound };
        }
        // ρ is a bijection, so an orbit that cycles has no tail and returns to its seed
        if state.value == state.seed {
            break Outcome::Cycle { length: state.step, entry_step: 0 };
        }
        lam += 1;
        if state.value == tortoise {
            break Outcome::Cycle { length: lam, entry_step: 0 };
        }
        if lam == power {
            tortoise = state.value.clone();
            power *= 2;
            lam = 0;
        }
    };
    checkpoint(&state, &mut checkpoints_written, &mut linkage_checks)?;

    let report = CampaignReport {
        seed: state.seed.to_string(),
        resumed_from_step,
        steps: state.step,
        outcome,
        last_value_bits: state.value.bits(),
        local_minima: state.local_minima,
        local_maxima: state.local_maxima,
        max_bits: state.max_bits,
        max_bits_pos: state.max_bits_pos,
        checkpoints_written,
        linkage_checks,
    };
    Ok((report, state))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::{iterate, orbit, OrbitOptions};

    fn config(seed: u64, steps: u64) -> CampaignConfig {
        CampaignConfig { seed: BigUint::from(seed), step_bound: Some(steps), ..CampaignConfig::default() }
    }

    #[test]
    fn seed_two_cycles() {
        let (report, _) = occ_campaign(&config(2, 1000)).unwrap();
        assert_eq!(report.outcome, Outcome::Cycle { length: 2, entry_step: 0 });
        assert_eq!(report.steps, 2);
    }

    #[test]
    fn seed_eight_matches_orbit() {
        let (report, state) = occ_campaign(&config(8, 2000)).unwrap();
        assert_eq!(report.outcome, Outcome::Open { bound: BoundHit::StepBound });
        let rec = orbit(&catalogue::rho(), &BigUint::from(8u32), &OrbitOptions::steps(2000).unbounded_values());
        assert_eq!(state.value, rec.last_value);
        assert_eq!(report.local_minima, rec.minima().count() as u64);
        assert_eq!(report.local_maxima, rec.maxima().count() as u64);
        assert_eq!(state.twin_value, iterate(&catalogue::lambda(), &BigUint::from(7u32), 2000));
    }

    #[test]
    fn checkpoint_round_trip() {
        let (_, state) = occ_campaign(&config(8, 500)).unwrap();
        let text = state.to_text();
        assert!(text.starts_with("occ-checkpoint v1\nseed 8\nstep 500\nvalue "));
        assert_eq!(CampaignState::from_text(&text, "x").unwrap(), state);
    }

    #[test]
    fn corrupt_checkpoints_are_refused() {
        let (_, state) = occ_campaign(&config(8, 50)).unwrap();
        let good = state.to_text();
        let cases = [
            good.replace("occ-checkpoint v1", "occ-checkpoint v2"),
            good.replace("twin_seed 7", "twin_seed 6"),
            good.replacen("value ", "value 1", 1),
            good.replace("step 50", "step fifty"),
            good.lines().filter(|l| !l.starts_with("max_bits_pos")).collect::<Vec<_>>().join("\n"),
            String::new(),
        ];
        for bad in cases {
            assert!(matches!(CampaignState::from_text(&bad, "x"), Err(Error::Checkpoint { .. })), "{bad}");
        }
    }

    #[test]
    fn resume_equals_uninterrupted_run() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("occ.ckpt");
        let first = CampaignConfig {
            checkpoint_every: 100,
            checkpoint_path: Some(path.clone()),
            resume: true,
            ..config(8, 700)
        };
        let (r1, _) = occ_campaign(&first).unwrap();
        assert_eq!(r1.checkpoints_written, 8);
        let second = CampaignConfig { step_bound: Some(1500), ..first };
        let (r2, resumed) = occ_campaign(&second).unwrap();
        assert_eq!(r2.resumed_from_step, 700);
        let (_, straight) = occ_campaign(&config(8, 1500)).unwrap();
        assert_eq!(resumed, straight);
        assert_eq!(CampaignState::load(&path).unwrap(), straight);
    }

    #[test]
    fn seed_mismatch_on_resume() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("occ.ckpt");
        let cfg = CampaignConfig { checkpoint_path: Some(path.clone()), resume: true, ..config(8, 10) };
        occ_campaign(&cfg).unwrap();
        let other = CampaignConfig { seed: BigUint::from(11u32), ..cfg };
        assert!(occ_campaign(&other).is_err());
    }

    #[test]
    fn zero_seed_rejected() {
        assert!(occ_campaign(&config(0, 10)).is_err());
    }
}
