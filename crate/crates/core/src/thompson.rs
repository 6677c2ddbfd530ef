//! The congruential realisation of Thompson's group F.
//!
//! `X_0 = α` and `X_{j+1} = Id ⋆ X_j`. Words are read as compositions, so
//! `x0 x1' x0` denotes `X_0 ∘ X_1⁻¹ ∘ X_0` and acts right-to-left.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;
use serde::Serialize;

use crate::catalogue;
use crate::error::{Error, Result};
use crate::map::CongruentialMap;
use crate::operad::star;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub index: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn x(index: usize) -> Self {
        Letter { index, inverse: false }
    }

    pub fn x_inv(index: usize) -> Self {
        Letter { index, inverse: true }
    }

    pub fn inverted(self) -> Self {
        Letter { inverse: !self.inverse, ..self }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupWord {
    pub letters: Vec<Letter>,
}

impl GroupWord {
    pub fn empty() -> Self {
        GroupWord::default()
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        GroupWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation; as maps, `self ∘ other`.
    pub fn then(&self, other: &GroupWord) -> GroupWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        GroupWord { letters }
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord { letters: self.letters.iter().rev().map(|l| l.inverted()).collect() }
    }

    /// Cancels adjacent `x_j x_j⁻¹` pairs. Purely syntactic.
    pub fn free_reduce(&self) -> GroupWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverted()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        GroupWord { letters: out }
    }

    /// Raises every index by one, realising `Id ⋆ w`.
    pub fn shift(&self) -> GroupWord {
        GroupWord {
            letters: self.letters.iter().map(|l| Letter { index: l.index + 1, ..*l }).collect(),
        }
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| format!("x{}{}", l.index, if l.inverse { "'" } else { "" }))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    /// Whitespace-separated `x<j>` letters, `'` marking inverses. `e` or an
    /// empty string is the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let mut offset = 0;
        for token in s.split_whitespace() {
            let position = s[offset..].find(token).map_or(offset, |p| p + offset);
            offset = position + token.len();
            if token == "e" {
                continue;
            }
            let bad = || Error::Expression { position, message: format!("bad letter `{token}`") };
            let body = token.strip_prefix('x').ok_or_else(bad)?;
            let (digits, inverse) = match body.strip_suffix('\'') {
                Some(d) => (d, true),
                None => (body, false),
            };
            let index = digits.parse().map_err(|_| bad())?;
            letters.push(Letter { index, inverse });
        }
        Ok(GroupWord { letters })
    }
}

/// Lazily extended, thread-safe table of `X_j` and `X_j⁻¹`.
#[derive(Default)]
pub struct GeneratorCatalogue {
    maps: RwLock<Vec<(Arc<CongruentialMap>, Arc<CongruentialMap>)>>,
}

impl GeneratorCatalogue {
    pub fn new() -> Self {
        Self::default()
    }

    fn entry(&self, j: usize) -> (Arc<CongruentialMap>, Arc<CongruentialMap>) {
        if let Some(e) = self.maps.read().unwrap().get(j) {
            return e.clone();
        }
        let mut maps = self.maps.write().unwrap();
        let id = CongruentialMap::identity();
        while maps.len() <= j {
            let next = match maps.last() {
                None => (catalogue::alpha(), catalogue::alpha_inverse()),
                Some((x, xi)) => (star(&id, x), star(&id, xi)),
            };
            maps.push((Arc::new(next.0), Arc::new(next.1)));
        }
        maps[j].clone()
    }

    pub fn generator(&self, j: usize) -> Arc<CongruentialMap> {
        self.entry(j).0
    }

    pub fn generator_inverse(&self, j: usize) -> Arc<CongruentialMap> {
        self.entry(j).1
    }

    pub fn letter(&self, l: Letter) -> Arc<CongruentialMap> {
        if l.inverse {
            self.generator_inverse(l.index)
        } else {
            self.generator(l.index)
        }
    }
}

fn shared() -> &'static GeneratorCatalogue {
    static CATALOGUE: OnceLock<GeneratorCatalogue> = OnceLock::new();
    CATALOGUE.get_or_init(GeneratorCatalogue::new)
}

pub fn generator(j: usize) -> CongruentialMap {
    (*shared().generator(j)).clone()
}

pub fn generator_inverse(j: usize) -> CongruentialMap {
    (*shared().generator_inverse(j)).clone()
}

pub fn eval_word(w: &GroupWord) -> CongruentialMap {
    let cat = shared();
    w.free_reduce()
        .letters
        .iter()
        .fold(CongruentialMap::identity(), |acc, &l| acc.compose(&cat.letter(l)))
}

pub fn words_equal(u: &GroupWord, v: &GroupWord) -> bool {
    eval_word(u).equal(&eval_word(v))
}

/// `τ² = (τ ⋆ Id) ∘ τ ∘ (Id ⋆ τ)`.
pub fn pentagon_holds(tau: &CongruentialMap) -> bool {
    let id = CongruentialMap::identity();
    tau.compose(tau)
        .equal(&star(tau, &id).compose(&tau.compose(&star(&id, tau))))
}

pub fn check_pentagon() -> bool {
    pentagon_holds(&catalogue::alpha())
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationFailure {
    pub i: usize,
    pub j: usize,
    pub target: usize,
    pub witness: String,
}

/// Checks `X_i⁻¹ ∘ X_j ∘ X_i = X_target`; on failure returns a separating `n`.
pub fn check_relation(i: usize, j: usize, target: usize) -> std::result::Result<(), BigUint> {
    let cat = shared();
    let conj = cat
        .generator_inverse(i)
        .compose(&cat.generator(j))
        .compose(&cat.generator(i));
    match conj.witness_difference(&cat.generator(target)) {
        None => Ok(()),
        Some(n) => Err(n),
    }
}

/// The same relation in the form `X_j = X_i ∘ X_{j+1} ∘ X_i⁻¹`.
pub fn check_relation_conjugate_form(i: usize, j: usize) -> std::result::Result<(), BigUint> {
    let cat = shared();
    let conj = cat
        .generator(i)
        .compose(&cat.generator(j + 1))
        .compose(&cat.generator_inverse(i));
    match conj.witness_difference(&cat.generator(j)) {
        None => Ok(()),
        Some(n) => Err(n),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub max_index: usize,
    pub checked: usize,
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// All relations `0 ≤ i < j ≤ max_index`, in both arrangements.
pub fn check_relations(max_index: usize) -> RelationReport {
    let mut failures = Vec::new();
    let mut checked = 0;
    for j in 1..=max_index {
        for i in 0..j {
            checked += 1;
            if let Err(n) = check_relation_conjugate_form(i, j).and_then(|_| check_relation(i, j, j + 1)) {
                failures.push(RelationFailure { i, j, target: j + 1, witness: n.to_string() });
            }
        }
    }
    RelationReport { max_index, checked, failures }
}

/// `α ∘ (Id ⋆ (Id ⋆ f)) ∘ α⁻¹ = Id ⋆ f`.
pub fn check_conjugation_recursion(f: &CongruentialMap) -> bool {
    let id = CongruentialMap::identity();
    let cat = shared();
    cat.generator(0)
        .compose(&star(&id, &star(&id, f)))
        .compose(&cat.generator_inverse(0))
        .equal(&star(&id, f))
}

/// Word for `x_j^{±1} ⋆ Id`, from the pentagon (`j = 0`) and naturality
/// (`X_j ⋆ Id = X_0 ∘ (Id ⋆ (X_{j−1} ⋆ Id)) ∘ X_0⁻¹`).
fn letter_star_id(l: Letter) -> GroupWord {
    let mut w = GroupWord::new(vec![Letter::x(0), Letter::x(0), Letter::x_inv(1), Letter::x_inv(0)]);
    for _ in 0..l.index {
        w = GroupWord::new(vec![Letter::x(0)])
            .then(&w.shift())
            .then(&GroupWord::new(vec![Letter::x_inv(0)]));
    }
    if l.inverse {
        w.inverse()
    } else {
        w
    }
}

/// A word in the generators denoting `eval(a) ⋆ eval(b)`, using
/// `a ⋆ b = (a ⋆ Id) ∘ (Id ⋆ b)`.
pub fn star_word(a: &GroupWord, b: &GroupWord) -> GroupWord {
    let left = a
        .letters
        .iter()
        .fold(GroupWord::empty(), |acc, &l| acc.then(&letter_star_id(l)));
    left.then(&b.shift()).free_reduce()
}

#[derive(Clone, Debug, Serialize)]
pub struct BrownReport {
    /// `(a⋆b)⋆c = X_0 ∘ (a⋆(b⋆c)) ∘ X_0⁻¹`
    pub conjugation: bool,
    /// `a⋆b`, `b⋆c`, `(a⋆b)⋆c` and `a⋆(b⋆c)` equal the maps of explicit words.
    pub closure: bool,
}

impl BrownReport {
    pub fn passed(&self) -> bool {
        self.conjugation && self.closure
    }
}

pub fn check_brown_conjugation(a: &GroupWord, b: &GroupWord, c: &GroupWord) -> BrownReport {
    let (fa, fb, fc) = (eval_word(a), eval_word(b), eval_word(c));
    let ab = star(&fa, &fb);
    let bc = star(&fb, &fc);
    let left = star(&ab, &fc);
    let right = star(&fa, &bc);
    let cat = shared();
    let conjugation = left.equal(
        &cat.generator(0).compose(&right).compose(&cat.generator_inverse(0)),
    );
    let ab_w = star_word(a, b);
    let bc_w = star_word(b, c);
    let closure = eval_word(&ab_w).equal(&ab)
        && eval_word(&bc_w).equal(&bc)
        && eval_word(&star_word(&ab_w, c)).equal(&left)
        && eval_word(&star_word(a, &bc_w)).equal(&right);
    BrownReport { conjugation, closure }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue::{alpha, id_star_alpha};

    fn w(s: &str) -> GroupWord {
        s.parse().unwrap()
    }

    #[test]
    fn first_generators() {
        assert_eq!(generator(0), alpha());
        assert_eq!(generator(1), id_star_alpha());
        assert_eq!(generator(1).eval_u64(7), BigUint::from(3u32));
    }

    #[test]
    fn generator_moduli_divide_powers_of_two() {
        for j in 0..=10 {
            let k = generator(j).modulus();
            assert_eq!((1usize << (j + 2)) % k, 0, "X_{j} has modulus {k}");
        }
    }

    #[test]
    fn word_syntax() {
        let word = w("x0 x1' x0");
        assert_eq!(word.letters, vec![Letter::x(0), Letter::x_inv(1), Letter::x(0)]);
        assert_eq!(word.to_string(), "x0 x1' x0");
        assert!(w("").is_empty());
        assert!(w("e").is_empty());
        assert!("x0 y1".parse::<GroupWord>().is_err());
        assert!("x".parse::<GroupWord>().is_err());
        assert!("x1''".parse::<GroupWord>().is_err());
    }

    #[test]
    fn free_reduction() {
        assert!(w("x0 x1 x1' x0'").free_reduce().is_empty());
        assert_eq!(w("x0 x0 x1").free_reduce(), w("x0 x0 x1"));
    }

    #[test]
    fn trivial_words() {
        assert!(eval_word(&GroupWord::empty()).is_identity());
        assert!(eval_word(&w("x0 x0'")).is_identity());
        assert!(eval_word(&w("x3' x3")).is_identity());
    }

    #[test]
    fn conjugate_gives_next_generator() {
        assert!(eval_word(&w("x0' x1 x0")).equal(&generator(2)));
    }

    #[test]
    fn non_abelian() {
        assert!(!words_equal(&w("x0 x1"), &w("x1 x0")));
    }

    #[test]
    fn pentagon() {
        assert!(check_pentagon());
        assert!(pentagon_holds(&CongruentialMap::identity()));
        // n = 3: α²(3) = α(1) = 2
        let a = alpha();
        let id = CongruentialMap::identity();
        assert_eq!(a.eval(&a.eval_u64(3)), BigUint::from(2u32));
        let step1 = star(&id, &a).eval_u64(3);
        assert_eq!(step1, BigUint::from(5u32));
        let step2 = a.eval(&step1);
        assert_eq!(step2, BigUint::from(6u32));
        assert_eq!(star(&a, &id).eval(&step2), BigUint::from(2u32));
    }

    #[test]
    fn wrong_relation_target_is_caught() {
        assert!(check_relation(0, 1, 2).is_ok());
        let n = check_relation(0, 1, 3).unwrap_err();
        let lhs = eval_word(&w("x0' x1 x0"));
        assert_ne!(lhs.eval(&n), generator(3).eval(&n));
    }

    #[test]
    fn star_word_denotes_star() {
        let (a, b) = (w("x0 x1'"), w("x2 x0"));
        assert!(eval_word(&star_word(&a, &b)).equal(&star(&eval_word(&a), &eval_word(&b))));
        assert!(eval_word(&star_word(&GroupWord::empty(), &a)).equal(&eval_word(&a.shift())));
    }

    #[test]
    fn brown_small_cases() {
        let e = GroupWord::empty();
        assert!(check_brown_conjugation(&e, &e, &e).passed());
        assert!(check_brown_conjugation(&w("x0"), &w("x1"), &w("x0")).passed());
    }

    #[test]
    fn catalogue_is_shareable_across_threads() {
        let cat = Arc::new(GeneratorCatalogue::new());
        let handles: Vec<_> = (0..4)
            .map(|t| {
                let cat = Arc::clone(&cat);
                std::thread::spawn(move || cat.generator(3 + t % 2).modulus())
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
        assert_eq!(*cat.generator(4), generator(4));
    }
}
