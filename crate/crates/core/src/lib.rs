//! Exact algebra of congruential bijections of ℕ.
//!
//! A [`CongruentialMap`] is a total map ℕ → ℕ given by one affine piece per
//! residue class. The crate provides composition, canonical normal forms,
//! decidable equality, bijectivity certificates and inverses; Girard's
//! conjunction and its `k`-ary generalisations; the congruential realisation
//! of Thompson's group F generated by the associator `α = λ ∘ ρ⁻¹`; big-integer
//! orbit exploration for the Collatz bijection `ρ`; and a commuting-diagram
//! checker.

pub mod affine;
pub mod agreement;
pub mod bijection;
pub mod campaign;
pub mod catalogue;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod expr;
pub mod map;
pub mod operad;
pub mod orbit;
pub mod random;
pub mod text;
pub mod thompson;

pub use affine::AffinePiece;
pub use agreement::{solve_agreement, AgreementSet};
pub use bijection::{inverse, is_bijection, BijectionCertificate, Progression, Refusal};
pub use error::{Error, Result};
pub use map::{compose, equal, normalize, Case, CongruentialMap};
pub use diagram::{build_figure1, build_k3, check_commutes, DiagramGraph};
pub use operad::{check_naturality, eval_tree, mu3, mu_k, star, PlanarTree};
pub use orbit::{orbit, OrbitOptions, OrbitRecord, Outcome};
pub use thompson::{check_pentagon, eval_word, generator, words_equal, GroupWord};
