//! Girard's conjunction `⋆`, the ternary and k-ary interleavings `μ_(k)`,
//! and evaluation of rooted planar tree terms built from them.
//!
//! `μ_(k)(f_0, …, f_{k−1})` acts as `f_i` on the class `k·ℕ + i`:
//! `n ↦ k·f_i((n − i)/k) + i`. With one affine piece `(a·m + b)/c` this is
//! `(a·n − a·i + k·b + c·i)/c`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::affine::AffinePiece;
use crate::catalogue;
use crate::error::{Error, Result};
use crate::map::CongruentialMap;

/// Girard's conjunction: `2·a(n/2)` on evens, `2·b((n − 1)/2) + 1` on odds.
pub fn star(a: &CongruentialMap, b: &CongruentialMap) -> CongruentialMap {
    let half = a.modulus().lcm(&b.modulus());
    let pieces = (0..2 * half)
        .map(|r| {
            if r % 2 == 0 {
                let p = a.piece(r / 2);
                AffinePiece::new(p.a().clone(), 2 * p.b(), p.c().clone())
            } else {
                let p = b.piece((r - 1) / 2);
                AffinePiece::new(p.a().clone(), 2 * p.b() + p.c() - p.a(), p.c().clone())
            }
            .unwrap()
        })
        .collect();
    CongruentialMap::from_parts_unchecked(2 * half, pieces).normalize()
}

/// The ternary interleaving `3f(n/3)`, `3g((n − 1)/3) + 1`, `3h((n − 2)/3) + 2`.
pub fn mu3(f: &CongruentialMap, g: &CongruentialMap, h: &CongruentialMap) -> CongruentialMap {
    let third = f.modulus().lcm(&g.modulus()).lcm(&h.modulus());
    let pieces = (0..3 * third)
        .map(|r| {
            let (p, shift) = match r % 3 {
                0 => (f.piece(r / 3), 0),
                1 => (g.piece((r - 1) / 3), 1),
                _ => (h.piece((r - 2) / 3), 2),
            };
            let shift = BigInt::from(shift);
            AffinePiece::new(
                p.a().clone(),
                3 * p.b() + (p.c() - p.a()) * shift,
                p.c().clone(),
            )
            .unwrap()
        })
        .collect();
    CongruentialMap::from_parts_unchecked(3 * third, pieces).normalize()
}

/// `μ_(k)(F)(n) = k·f_{n mod k}((n − n mod k)/k) + n mod k`.
pub fn mu_k(family: &[CongruentialMap]) -> Result<CongruentialMap> {
    let k = family.len();
    if k == 0 {
        return Err(Error::Arity { expected: 1, found: 0 });
    }
    let inner = family.iter().fold(1usize, |acc, f| acc.lcm(&f.modulus()));
    let modulus = k * inner;
    let big_k = BigInt::from(k);
    let pieces = (0..modulus)
        .map(|r| {
            let i = r % k;
            let p = family[i].piece((r - i) / k);
            AffinePiece::new(
                p.a().clone(),
                &big_k * p.b() + (p.c() - p.a()) * BigInt::from(i),
                p.c().clone(),
            )
            .unwrap()
        })
        .collect();
    Ok(CongruentialMap::from_parts_unchecked(modulus, pieces).normalize())
}

/// Naturality of the associator:
/// `α ∘ (f ⋆ (g ⋆ h)) = ((f ⋆ g) ⋆ h) ∘ α`.
pub fn check_naturality(f: &CongruentialMap, g: &CongruentialMap, h: &CongruentialMap) -> bool {
    let alpha = catalogue::alpha();
    let left = alpha.compose(&star(f, &star(g, h)));
    let right = star(&star(f, g), h).compose(&alpha);
    left.equal(&right)
}

/// `ρ ∘ μ_3(f,g,h) = (f ⋆ (g ⋆ h)) ∘ ρ`.
pub fn check_rho_component(f: &CongruentialMap, g: &CongruentialMap, h: &CongruentialMap) -> bool {
    let rho = catalogue::rho();
    rho.compose(&mu3(f, g, h)).equal(&star(f, &star(g, h)).compose(&rho))
}

/// `λ ∘ μ_3(f,g,h) = ((f ⋆ g) ⋆ h) ∘ λ`.
pub fn check_lambda_component(f: &CongruentialMap, g: &CongruentialMap, h: &CongruentialMap) -> bool {
    let lambda = catalogue::lambda();
    lambda.compose(&mu3(f, g, h)).equal(&star(&star(f, g), h).compose(&lambda))
}

/// Rooted planar tree term. Each node of arity `k` stands for `μ_(k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PlanarTree {
    Leaf,
    Node(Vec<PlanarTree>),
}

impl PlanarTree {
    /// A node of arity `children.len()`. Arity one is only allowed as the
    /// whole-tree identity `μ_(1)` over a single leaf.
    pub fn node(children: Vec<PlanarTree>) -> Result<Self> {
        match children.len() {
            0 => Err(Error::Arity { expected: 1, found: 0 }),
            1 if children[0] != PlanarTree::Leaf => Err(Error::InvalidMap(
                "unary nodes are only allowed as the identity tree".into(),
            )),
            _ => Ok(PlanarTree::Node(children)),
        }
    }

    pub fn binary(left: PlanarTree, right: PlanarTree) -> Self {
        PlanarTree::Node(vec![left, right])
    }

    pub fn corolla(arity: usize) -> Self {
        PlanarTree::Node(vec![PlanarTree::Leaf; arity])
    }

    pub fn leaves(&self) -> usize {
        match self {
            PlanarTree::Leaf => 1,
            PlanarTree::Node(cs) => cs.iter().map(PlanarTree::leaves).sum(),
        }
    }

    fn is_valid(&self, root: bool) -> bool {
        match self {
            PlanarTree::Leaf => true,
            PlanarTree::Node(cs) if cs.len() == 1 => root && cs[0] == PlanarTree::Leaf,
            PlanarTree::Node(cs) => !cs.is_empty() && cs.iter().all(|c| c.is_valid(false)),
        }
    }
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanarTree::Leaf => f.write_str("_"),
            PlanarTree::Node(cs) => {
                if cs.len() == 2 {
                    f.write_str("(*")?;
                } else {
                    write!(f, "(#{}", cs.len())?;
                }
                for c in cs {
                    write!(f, " {c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl FromStr for PlanarTree {
    type Err = Error;

    /// Parses `_`, `(* t t)` and `(#k t … t)`.
    fn from_str(s: &str) -> Result<Self> {
        let tokens = tokenize_tree(s)?;
        let mut pos = 0;
        let tree = parse_tree(&tokens, &mut pos, true)?;
        if pos != tokens.len() {
            return Err(Error::Expression { position: tokens[pos].0, message: "trailing input".into() });
        }
        Ok(tree)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum TreeToken {
    Open,
    Close,
    Leaf,
    Arity(usize),
}

fn tokenize_tree(s: &str) -> Result<Vec<(usize, TreeToken)>> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' | b'\n' | b'\r' => {}
            b'(' => out.push((i, TreeToken::Open)),
            b')' => out.push((i, TreeToken::Close)),
            b'_' => out.push((i, TreeToken::Leaf)),
            b'*' => out.push((i, TreeToken::Arity(2))),
            b'#' => {
                let start = i;
                let digits: String = s[i + 1..].chars().take_while(char::is_ascii_digit).collect();
                let k = digits.parse().map_err(|_| Error::Expression {
                    position: start,
                    message: "`#` must be followed by an arity".into(),
                })?;
                i += digits.len();
                out.push((start, TreeToken::Arity(k)));
            }
            c => {
                return Err(Error::Expression {
                    position: i,
                    message: format!("unexpected character `{}`", c as char),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

fn parse_tree(tokens: &[(usize, TreeToken)], pos: &mut usize, root: bool) -> Result<PlanarTree> {
    let end = tokens.last().map_or(0, |t| t.0 + 1);
    let unexpected = |p: usize, m: &str| Error::Expression { position: p, message: m.into() };
    let (at, tok) = tokens.get(*pos).cloned().ok_or_else(|| unexpected(end, "unexpected end of tree"))?;
    *pos += 1;
    match tok {
        TreeToken::Leaf => Ok(PlanarTree::Leaf),
        TreeToken::Open => {
            let arity = match tokens.get(*pos) {
                Some((_, TreeToken::Arity(k))) => *k,
                _ => return Err(unexpected(at, "expected `*` or `#k` after `(`")),
            };
            *pos += 1;
            let mut children = Vec::with_capacity(arity);
            while !matches!(tokens.get(*pos), Some((_, TreeToken::Close)) | None) {
                children.push(parse_tree(tokens, pos, false)?);
            }
            if tokens.get(*pos).is_none() {
                return Err(unexpected(end, "unclosed `(`"));
            }
            *pos += 1;
            if children.len() != arity {
                return Err(unexpected(
                    at,
                    &format!("node of arity {arity} has {} children", children.len()),
                ));
            }
            let tree = PlanarTree::node(children)?;
            if !tree.is_valid(root) {
                return Err(unexpected(at, "unary nodes are only allowed as the identity tree"));
            }
            Ok(tree)
        }
        _ => Err(unexpected(at, "expected `_` or `(`")),
    }
}

/// Evaluates a tree term, feeding `args` to the leaves left to right.
pub fn eval_tree(tree: &PlanarTree, args: &[CongruentialMap]) -> Result<CongruentialMap> {
    let expected = tree.leaves();
    if expected != args.len() {
        return Err(Error::Arity { expected, found: args.len() });
    }
    fn go<'a>(t: &PlanarTree, args: &mut impl Iterator<Item = &'a CongruentialMap>) -> CongruentialMap {
        match t {
            PlanarTree::Leaf => args.next().expect("leaf count checked").clone(),
            PlanarTree::Node(cs) => {
                let vals: Vec<_> = cs.iter().map(|c| go(c, args)).collect();
                mu_k(&vals).expect("nodes have at least one child")
            }
        }
    }
    Ok(go(tree, &mut args.iter()))
}

/// All trees with `1..=max_leaves` leaves whose internal nodes have arities in `arities`.
pub fn enumerate_trees(max_leaves: usize, arities: &[usize]) -> Vec<PlanarTree> {
    let mut by_leaves: Vec<Vec<PlanarTree>> = vec![Vec::new(); max_leaves + 1];
    for n in 1..=max_leaves {
        let mut trees = Vec::new();
        if n == 1 {
            trees.push(PlanarTree::Leaf);
        }
        for &k in arities.iter().filter(|&&k| k >= 2 && k <= n) {
            for parts in compositions(n, k) {
                let mut partial: Vec<Vec<PlanarTree>> = vec![Vec::new()];
                for &p in &parts {
                    partial = partial
                        .into_iter()
                        .flat_map(|prefix| {
                            by_leaves[p].iter().map(move |t| {
                                let mut v = prefix.clone();
                                v.push(t.clone());
                                v
                            })
                        })
                        .collect();
                }
                trees.extend(partial.into_iter().map(PlanarTree::Node));
            }
        }
        by_leaves[n] = trees;
    }
    by_leaves.into_iter().flatten().collect()
}

/// Ordered ways of writing `n` as a sum of `k` positive parts.
fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 1 {
        return vec![vec![n]];
    }
    (1..=n.saturating_sub(k - 1))
        .flat_map(|first| {
            compositions(n - first, k - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct FreenessReport {
    pub max_leaves: usize,
    pub trees: usize,
    /// Pairs of distinct trees that induce the same map on the probe tuple.
    pub collisions: Vec<(String, String)>,
}

impl FreenessReport {
    pub fn passed(&self) -> bool {
        self.collisions.is_empty()
    }
}

/// Necessary condition for freeness: every tree over arities `{2, 3}` with at
/// most `max_leaves` leaves gives a different map on the tuple `(probe, …, probe)`.
pub fn freeness_probe(max_leaves: usize, probe: &CongruentialMap) -> FreenessReport {
    let trees = enumerate_trees(max_leaves, &[2, 3]);
    let mut seen: HashMap<CongruentialMap, usize> = HashMap::new();
    let mut collisions = Vec::new();
    for (i, t) in trees.iter().enumerate() {
        let args = vec![probe.clone(); t.leaves()];
        // normal forms are canonical, so structural hashing decides equality
        let value = eval_tree(t, &args).expect("arity matches");
        if let Some(&j) = seen.get(&value) {
            collisions.push((trees[j].to_string(), t.to_string()));
        } else {
            seen.insert(value, i);
        }
    }
    FreenessReport { max_leaves, trees: trees.len(), collisions }
}
