use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::map::{prime_factors, CongruentialMap};

/// The set `{n ∈ ℕ : f(n) = g(n)}` as whole residue classes modulo `modulus`
/// plus finitely many isolated points outside those classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AgreementSet {
    pub modulus: usize,
    pub residues: Vec<usize>,
    #[serde(serialize_with = "points_as_strings")]
    pub points: BTreeSet<BigUint>,
}

fn points_as_strings<S: serde::Serializer>(points: &BTreeSet<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(points.iter().map(|p| p.to_string()))
}

impl AgreementSet {
    pub fn is_everything(&self) -> bool {
        self.modulus == 1 && self.residues == [0]
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty() && self.points.is_empty()
    }

    pub fn contains(&self, n: &BigUint) -> bool {
        let r = (n % BigUint::from(self.modulus)).try_into().unwrap_or(usize::MAX);
        self.residues.binary_search(&r).is_ok() || self.points.contains(n)
    }

    /// Exactly the given points.
    pub fn finite(points: impl IntoIterator<Item = u64>) -> Self {
        AgreementSet {
            modulus: 1,
            residues: Vec::new(),
            points: points.into_iter().map(BigUint::from).collect(),
        }
    }

    fn canonical(mut self) -> Self {
        let mut member = vec![false; self.modulus];
        for &r in &self.residues {
            member[r] = true;
        }
        let mut k = self.modulus;
        for p in prime_factors(self.modulus) {
            while k.is_multiple_of(p) && (0..self.modulus).all(|r| member[r] == member[r % (k / p)]) {
                k /= p;
            }
        }
        self.modulus = k;
        self.residues = (0..k).filter(|&r| member[r]).collect();
        if self.residues.is_empty() {
            self.modulus = 1;
        }
        self
    }
}

impl fmt::Display for AgreementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .residues
            .iter()
            .map(|r| if self.modulus == 1 { "N".to_string() } else { format!("{}N+{r}", self.modulus) })
            .collect();
        parts.extend(self.points.iter().map(|p| p.to_string()));
        if parts.is_empty() {
            write!(f, "{{}}")
        } else {
            write!(f, "{{{}}}", parts.join(", "))
        }
    }
}

/// Solves `f(n) = g(n)` exactly on the common refinement: on each class the
/// two affine pieces agree nowhere, at one point, or everywhere.
pub fn solve_agreement(f: &CongruentialMap, g: &CongruentialMap) -> AgreementSet {
    let l = f.modulus().lcm(&g.modulus());
    let big_l = BigInt::from(l);
    let mut residues = Vec::new();
    let mut points = BTreeSet::new();
    for r in 0..l {
        let (p, q) = (f.piece(r), g.piece(r));
        if p == q {
            residues.push(r);
            continue;
        }
        // (a1 c2 − a2 c1)·n = b2 c1 − b1 c2
        let coeff = p.a() * q.c() - q.a() * p.c();
        let rhs = q.b() * p.c() - p.b() * q.c();
        if coeff.is_zero() {
            continue;
        }
        let (n, rem) = rhs.div_rem(&coeff);
        if rem.is_zero() && !n.is_negative() && n.mod_floor(&big_l) == BigInt::from(r) {
            points.insert(n.to_biguint().unwrap());
        }
    }
    AgreementSet { modulus: l, residues, points }.canonical()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue::{alpha, identity, lambda, rho};

    #[test]
    fn lambda_rho_agree_only_at_zero() {
        assert_eq!(solve_agreement(&lambda(), &rho()), AgreementSet::finite([0]));
    }

    #[test]
    fn self_agreement_is_everything() {
        assert!(solve_agreement(&rho(), &rho()).is_everything());
        assert!(solve_agreement(&rho(), &rho().lift(6)).is_everything());
    }

    #[test]
    fn alpha_fixed_points() {
        assert_eq!(solve_agreement(&alpha(), &identity()), AgreementSet::finite([0]));
    }

    #[test]
    fn rho_fixed_points() {
        assert_eq!(solve_agreement(&rho(), &identity()), AgreementSet::finite([0, 1]));
    }

    #[test]
    fn whole_classes_collapse() {
        // agree on evens only
        let f = crate::map::CongruentialMap::new(
            2,
            vec![crate::affine::AffinePiece::identity(), crate::affine::AffinePiece::new(1, 2, 1).unwrap()],
        )
        .unwrap();
        let s = solve_agreement(&f.lift(6), &identity());
        assert_eq!((s.modulus, s.residues.clone()), (2, vec![0]));
        assert!(s.points.is_empty());
        assert_eq!(s.to_string(), "{2N+0}");
    }
}
