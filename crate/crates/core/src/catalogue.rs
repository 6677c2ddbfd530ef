//! The named bijections, transcribed from their case tables.

use crate::map::{Case, CongruentialMap};

fn table(cases: &[Case]) -> CongruentialMap {
    CongruentialMap::from_cases(cases).expect("built-in case table is well formed")
}

pub fn identity() -> CongruentialMap {
    CongruentialMap::identity()
}

/// The original Collatz bijection: `2n/3`, `(4n − 1)/3`, `(4n + 1)/3` on `n mod 3 = 0, 1, 2`.
pub fn rho() -> CongruentialMap {
    table(&[Case::new(3, 0, 2, 0, 3), Case::new(3, 1, 4, -1, 3), Case::new(3, 2, 4, 1, 3)])
}

pub fn rho_inverse() -> CongruentialMap {
    table(&[Case::new(2, 0, 3, 0, 2), Case::new(4, 1, 3, 1, 4), Case::new(4, 3, 3, -1, 4)])
}

/// The reduced Collatz bijection `λ(n) = ρ(n + 1) − 1`.
pub fn lambda() -> CongruentialMap {
    table(&[Case::new(3, 0, 4, 0, 3), Case::new(3, 1, 4, 2, 3), Case::new(3, 2, 2, -1, 3)])
}

pub fn lambda_inverse() -> CongruentialMap {
    table(&[Case::new(4, 0, 3, 0, 4), Case::new(4, 2, 3, -2, 4), Case::new(2, 1, 3, 1, 2)])
}

/// The associator: `2n` on evens, `n + 1` on `1 mod 4`, `(n − 1)/2` on `3 mod 4`.
pub fn alpha() -> CongruentialMap {
    table(&[Case::new(2, 0, 2, 0, 1), Case::new(4, 1, 1, 1, 1), Case::new(4, 3, 1, -1, 2)])
}

pub fn alpha_inverse() -> CongruentialMap {
    table(&[Case::new(4, 0, 1, 0, 2), Case::new(4, 2, 1, -1, 1), Case::new(2, 1, 2, 1, 1)])
}

/// `Id ⋆ α` written out: `n`, `2n − 1`, `n + 2`, `(n − 1)/2` on
/// `0 mod 2`, `1 mod 4`, `3 mod 8`, `7 mod 8`.
pub fn id_star_alpha() -> CongruentialMap {
    table(&[
        Case::new(2, 0, 1, 0, 1),
        Case::new(4, 1, 2, -1, 1),
        Case::new(8, 3, 1, 2, 1),
        Case::new(8, 7, 1, -1, 2),
    ])
}

/// `{Id, ρ, λ, α, Id⋆α, α⋆Id}`, the fixture set for exhaustive naturality checks.
pub fn fixtures() -> Vec<(&'static str, CongruentialMap)> {
    let alpha = alpha();
    let id = identity();
    vec![
        ("id", id.clone()),
        ("rho", rho()),
        ("lambda", lambda()),
        ("alpha", alpha.clone()),
        ("id*alpha", crate::operad::star(&id, &alpha)),
        ("alpha*id", crate::operad::star(&alpha, &id)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn lambda_is_rho_conjugated_by_successor() {
        let (l, r) = (lambda(), rho());
        for n in 0u64..500 {
            assert_eq!(l.eval_u64(n) + 1u32, r.eval_u64(n + 1));
        }
    }

    #[test]
    fn tables_are_mutually_inverse() {
        for (f, g) in [(rho(), rho_inverse()), (lambda(), lambda_inverse()), (alpha(), alpha_inverse())] {
            for n in 0u64..500 {
                assert_eq!(g.eval(&f.eval_u64(n)), BigUint::from(n));
                assert_eq!(f.eval(&g.eval_u64(n)), BigUint::from(n));
            }
        }
    }

    #[test]
    fn alpha_values() {
        assert_eq!(alpha().eval_u64(3), BigUint::from(1u32));
        assert_eq!(alpha().eval_u64(5), BigUint::from(6u32));
        assert_eq!(alpha().eval_u64(6), BigUint::from(12u32));
    }

    #[test]
    fn id_star_alpha_values() {
        let m = id_star_alpha();
        assert_eq!(m.modulus(), 8);
        assert_eq!(m.eval_u64(7), BigUint::from(3u32));
        assert_eq!(m.eval_u64(3), BigUint::from(5u32));
        assert_eq!(m.eval_u64(5), BigUint::from(9u32));
    }
}
