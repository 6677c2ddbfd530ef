//! Congruential maps: total functions ℕ → ℕ given by one affine piece per
//! residue class modulo some `K`.
//!
//! Composition is right-to-left throughout: `f.compose(&g)` is `n ↦ f(g(n))`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::affine::AffinePiece;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CongruentialMap {
    modulus: usize,
    pieces: Vec<AffinePiece>,
}

/// One row of a case table such as `(n − 1)/2 when n ≡ 3 (mod 4)`.
#[derive(Clone, Debug)]
pub struct Case {
    pub modulus: usize,
    pub residue: usize,
    pub piece: AffinePiece,
}

impl Case {
    pub fn new(modulus: usize, residue: usize, a: i64, b: i64, c: i64) -> Self {
        Case {
            modulus,
            residue,
            piece: AffinePiece::new(a, b, c).expect("case coefficients must have a ≥ 0 and c > 0"),
        }
    }
}

impl CongruentialMap {
    /// Validates integrality and non-negativity of every piece on its class.
    pub fn new(modulus: usize, pieces: Vec<AffinePiece>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidMap("modulus must be positive".into()));
        }
        if pieces.len() != modulus {
            return Err(Error::InvalidMap(format!(
                "modulus {modulus} needs {modulus} pieces, got {}",
                pieces.len()
            )));
        }
        for (j, p) in pieces.iter().enumerate() {
            if !p.is_integral_on(modulus, j) {
                return Err(Error::InvalidMap(format!(
                    "piece {j} ({p}) is not a map into N on the class {j} mod {modulus}"
                )));
            }
        }
        Ok(CongruentialMap { modulus, pieces })
    }

    pub(crate) fn from_parts_unchecked(modulus: usize, pieces: Vec<AffinePiece>) -> Self {
        debug_assert_eq!(pieces.len(), modulus);
        CongruentialMap { modulus, pieces }
    }

    pub fn identity() -> Self {
        CongruentialMap { modulus: 1, pieces: vec![AffinePiece::identity()] }
    }

    /// Builds a map from a case table whose rows may use different moduli,
    /// e.g. `2n` on evens, `n + 1` on `1 mod 4`, `(n − 1)/2` on `3 mod 4`.
    ///
    /// Every residue must be matched by exactly one row.
    pub fn from_cases(cases: &[Case]) -> Result<Self> {
        if cases.is_empty() {
            return Err(Error::InvalidMap("empty case table".into()));
        }
        let modulus = cases.iter().try_fold(1usize, |acc, c| {
            if c.modulus == 0 || c.residue >= c.modulus {
                return Err(Error::InvalidMap(format!(
                    "bad case residue {} mod {}",
                    c.residue, c.modulus
                )));
            }
            Ok(acc.lcm(&c.modulus))
        })?;
        let mut pieces = Vec::with_capacity(modulus);
        for r in 0..modulus {
            let mut matching = cases.iter().filter(|c| r % c.modulus == c.residue);
            let case = matching
                .next()
                .ok_or_else(|| Error::InvalidMap(format!("no case covers residue {r} mod {modulus}")))?;
            if matching.next().is_some() {
                return Err(Error::InvalidMap(format!(
                    "residue {r} mod {modulus} is covered by more than one case"
                )));
            }
            pieces.push(case.piece.clone());
        }
        CongruentialMap::new(modulus, pieces)
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn pieces(&self) -> &[AffinePiece] {
        &self.pieces
    }

    pub fn piece(&self, residue: usize) -> &AffinePiece {
        &self.pieces[residue % self.modulus]
    }

    fn residue_of(&self, n: &BigUint) -> usize {
        (n % BigUint::from(self.modulus))
            .to_usize()
            .expect("residue is below the modulus")
    }

    pub fn eval(&self, n: &BigUint) -> BigUint {
        self.pieces[self.residue_of(n)].apply(n)
    }

    pub fn eval_u64(&self, n: u64) -> BigUint {
        self.eval(&BigUint::from(n))
    }

    /// Re-expresses the map over a multiple of its modulus. Pieces in `n`-form
    /// do not depend on the modulus, so this only replicates them.
    pub fn lift(&self, modulus: usize) -> CongruentialMap {
        assert!(
            modulus.is_multiple_of(self.modulus),
            "lift target {modulus} is not a multiple of {}",
            self.modulus
        );
        let pieces = (0..modulus).map(|r| self.pieces[r % self.modulus].clone()).collect();
        CongruentialMap { modulus, pieces }
    }

    /// `self ∘ inner`.
    ///
    /// `inner` is refined to the coarsest modulus on which the residue of
    /// `inner(n)` modulo `self.modulus()` is constant per class.
    pub fn compose(&self, inner: &CongruentialMap) -> CongruentialMap {
        let outer_k = self.modulus;
        let inner_k = inner.modulus;
        let big_outer = BigInt::from(outer_k);
        let refine = inner.pieces.iter().enumerate().fold(1usize, |acc, (j, p)| {
            let (step, _) = p.conway_form(inner_k, j);
            let step_mod = step.mod_floor(&big_outer).to_usize().expect("reduced below modulus");
            acc.lcm(&(outer_k / step_mod.gcd(&outer_k)))
        });
        let modulus = inner_k.checked_mul(refine).expect("composite modulus exceeds usize");
        let pieces = (0..modulus)
            .map(|r| {
                let g = inner.piece(r);
                let image = g.apply(&BigUint::from(r));
                let f = &self.pieces[(image % BigUint::from(outer_k)).to_usize().unwrap()];
                f.after(g)
            })
            .collect();
        CongruentialMap { modulus, pieces }.normalize()
    }

    fn has_period(&self, d: usize) -> bool {
        (d..self.modulus).all(|r| self.pieces[r] == self.pieces[r % d])
    }

    /// Canonical representative: the smallest modulus at which the pieces are
    /// periodic. Two maps are extensionally equal iff their normal forms are
    /// structurally identical.
    pub fn normalize(&self) -> CongruentialMap {
        let mut k = self.modulus;
        let mut current = self.clone();
        for p in prime_factors(self.modulus) {
            while k.is_multiple_of(p) && current.has_period(k / p) {
                k /= p;
                current.pieces.truncate(k);
                current.modulus = k;
            }
        }
        current
    }

    pub fn is_normalized(&self) -> bool {
        prime_factors(self.modulus).into_iter().all(|p| !self.has_period(self.modulus / p))
    }

    /// Extensional equality on ℕ, decided on the common refinement `lcm(K_f, K_g)`.
    pub fn equal(&self, other: &CongruentialMap) -> bool {
        self.first_difference(other).is_none()
    }

    fn first_difference(&self, other: &CongruentialMap) -> Option<usize> {
        let l = self.modulus.lcm(&other.modulus);
        (0..l).find(|&r| self.piece(r) != other.piece(r))
    }

    /// Smallest-class witness `n` with `self(n) ≠ other(n)`, or `None` if equal.
    ///
    /// Two distinct affine functions agree on at most one point of a class,
    /// so one of the first two members of the first differing class separates them.
    pub fn witness_difference(&self, other: &CongruentialMap) -> Option<BigUint> {
        let r = self.first_difference(other)?;
        let l = self.modulus.lcm(&other.modulus);
        [r, r + l]
            .into_iter()
            .map(BigUint::from)
            .find(|n| self.eval(n) != other.eval(n))
    }

    pub fn is_identity(&self) -> bool {
        self.equal(&CongruentialMap::identity())
    }

    /// `(x_j, y_j)` such that `f(K·m + j) = x_j·m + y_j`.
    pub fn conway_table(&self) -> Vec<(BigInt, BigInt)> {
        self.pieces
            .iter()
            .enumerate()
            .map(|(j, p)| p.conway_form(self.modulus, j))
            .collect()
    }

    pub fn has_constant_piece(&self) -> bool {
        self.pieces.iter().any(|p| p.a().is_zero())
    }
}

impl fmt::Display for CongruentialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::to_text(self))
    }
}

pub(crate) fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Free-function spelling of [`CongruentialMap::compose`].
pub fn compose(f: &CongruentialMap, g: &CongruentialMap) -> CongruentialMap {
    f.compose(g)
}

pub fn normalize(f: &CongruentialMap) -> CongruentialMap {
    f.normalize()
}

pub fn equal(f: &CongruentialMap, g: &CongruentialMap) -> bool {
    f.equal(g)
}

pub fn eval(f: &CongruentialMap, n: &BigUint) -> BigUint {
    f.eval(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rho() -> CongruentialMap {
        CongruentialMap::from_cases(&[
            Case::new(3, 0, 2, 0, 3),
            Case::new(3, 1, 4, -1, 3),
            Case::new(3, 2, 4, 1, 3),
        ])
        .unwrap()
    }

    #[test]
    fn eval_rho_values() {
        let r = rho();
        assert_eq!(r.eval_u64(6), BigUint::from(4u32));
        assert_eq!(r.eval_u64(0), BigUint::from(0u32));
        assert_eq!(r.eval_u64(8), BigUint::from(11u32));
    }

    #[test]
    fn rejects_non_integral_piece() {
        let bad = CongruentialMap::new(2, vec![AffinePiece::new(1, 0, 2).unwrap(), AffinePiece::identity()]);
        assert!(bad.is_ok());
        let bad = CongruentialMap::new(2, vec![AffinePiece::identity(), AffinePiece::new(1, 0, 2).unwrap()]);
        assert!(bad.is_err());
        assert!(CongruentialMap::new(0, vec![]).is_err());
        assert!(CongruentialMap::new(2, vec![AffinePiece::identity()]).is_err());
    }

    #[test]
    fn from_cases_detects_gaps_and_overlaps() {
        assert!(CongruentialMap::from_cases(&[Case::new(2, 0, 1, 0, 1)]).is_err());
        assert!(CongruentialMap::from_cases(&[
            Case::new(2, 0, 1, 0, 1),
            Case::new(4, 0, 1, 0, 1),
            Case::new(2, 1, 1, 0, 1)
        ])
        .is_err());
    }

    #[test]
    fn normalize_collapses_identity() {
        let m = CongruentialMap::new(4, vec![AffinePiece::identity(); 4]).unwrap();
        let n = m.normalize();
        assert_eq!(n.modulus(), 1);
        assert_eq!(n, CongruentialMap::identity());
    }

    #[test]
    fn normalize_keeps_minimal_period() {
        // period 6 inside modulus 12: pieces depend on n mod 2 and n mod 3 jointly
        let pieces: Vec<_> = (0..12)
            .map(|r| AffinePiece::new(1, (r % 6) as i64, 1).unwrap())
            .collect();
        let m = CongruentialMap::new(12, pieces).unwrap().normalize();
        assert_eq!(m.modulus(), 6);
        assert!(m.is_normalized());
    }

    #[test]
    fn compose_with_identity() {
        let r = rho();
        assert_eq!(r.compose(&CongruentialMap::identity()), r);
        assert_eq!(CongruentialMap::identity().compose(&r), r);
    }

    #[test]
    fn compose_rho_rho_at_four() {
        // oracle: rho(4) = 5, rho(5) = 7
        let r = rho();
        assert_eq!(r.eval(&r.eval_u64(4)), BigUint::from(7u32));
        assert_eq!(r.compose(&r).eval_u64(4), BigUint::from(7u32));
    }

    #[test]
    fn equality_and_witness() {
        let r = rho();
        let id = CongruentialMap::identity();
        assert!(r.equal(&r));
        assert!(!r.equal(&id));
        let w = r.witness_difference(&id).unwrap();
        assert_ne!(r.eval(&w), id.eval(&w));
        assert!(r.witness_difference(&r.lift(12)).is_none());
    }

    #[test]
    fn prime_factorisation() {
        assert_eq!(prime_factors(1), Vec::<usize>::new());
        assert_eq!(prime_factors(360), vec![2, 3, 5]);
        assert_eq!(prime_factors(97), vec![97]);
    }
}
