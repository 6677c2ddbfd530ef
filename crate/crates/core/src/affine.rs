use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// One affine branch `n ↦ (a·n + b) / c` of a congruential map.
///
/// Triples are always stored with `a ≥ 0`, `c > 0` and `gcd(a, b, c) = 1`,
/// so two pieces denote the same function on an infinite residue class iff
/// they are structurally equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffinePiece {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl AffinePiece {
    /// Builds a reduced piece. Returns `None` when `a < 0` or `c ≤ 0`.
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Option<Self> {
        let (a, b, c) = (a.into(), b.into(), c.into());
        if a.is_negative() || !c.is_positive() {
            return None;
        }
        let g = a.gcd(&b).gcd(&c);
        Some(if g.is_one() {
            AffinePiece { a, b, c }
        } else {
            AffinePiece { a: a / &g, b: b / &g, c: c / &g }
        })
    }

    pub fn identity() -> Self {
        AffinePiece { a: BigInt::one(), b: BigInt::zero(), c: BigInt::one() }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    /// True iff this piece maps every `n ≡ residue (mod modulus)` to a natural number.
    pub fn is_integral_on(&self, modulus: usize, residue: usize) -> bool {
        let k = BigInt::from(modulus);
        let at_residue = &self.a * BigInt::from(residue) + &self.b;
        (&self.a * &k).is_multiple_of(&self.c)
            && at_residue.is_multiple_of(&self.c)
            && !at_residue.is_negative()
    }

    /// Evaluates the piece. Caller guarantees `n` lies on a class where the piece is integral.
    pub fn apply(&self, n: &BigUint) -> BigUint {
        let scaled = n * self.a.magnitude();
        let numerator = match self.b.sign() {
            Sign::Minus => scaled - self.b.magnitude(),
            _ => scaled + self.b.magnitude(),
        };
        numerator / self.c.magnitude()
    }

    pub fn apply_int(&self, n: &BigInt) -> BigInt {
        (&self.a * n + &self.b) / &self.c
    }

    /// `self ∘ inner`, i.e. `n ↦ self(inner(n))`.
    pub fn after(&self, inner: &AffinePiece) -> AffinePiece {
        AffinePiece::new(
            &self.a * &inner.a,
            &self.a * &inner.b + &self.b * &inner.c,
            &self.c * &inner.c,
        )
        .expect("product of valid pieces is valid")
    }

    /// Conway form on the class `K·m + residue`: returns `(x, y)` with `f(K·m + residue) = x·m + y`.
    pub fn conway_form(&self, modulus: usize, residue: usize) -> (BigInt, BigInt) {
        let x = &self.a * BigInt::from(modulus) / &self.c;
        let y = (&self.a * BigInt::from(residue) + &self.b) / &self.c;
        (x, y)
    }

    /// The piece `n ↦ (x·(n − residue)/K) + y`, i.e. the inverse of [`AffinePiece::conway_form`].
    pub fn from_conway(modulus: usize, residue: usize, x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        let (x, y) = (x.into(), y.into());
        let k = BigInt::from(modulus);
        AffinePiece::new(x.clone(), &k * y - x * BigInt::from(residue), k)
            .expect("Conway slopes are non-negative")
    }
}

impl fmt::Display for AffinePiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.a, self.b, self.c)
    }
}
