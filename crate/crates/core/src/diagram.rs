//! Commuting-diagram checker over graphs whose edges carry congruential maps.
//!
//! A path `e_1, …, e_k` denotes `label(e_k) ∘ … ∘ label(e_1)`. A diagram
//! commutes when, for every ordered pair of nodes, all directed paths of
//! length at most `max_path_len` between them denote equal maps.
//!
//! Text format:
//!
//! ```text
//! node V0
//! node V1
//! edge V0 V1 red alpha
//! ```
//!
//! The last field of an `edge` line is a map expression (see [`crate::expr`])
//! or a path to a map file, and may contain spaces.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr;
use crate::map::CongruentialMap;

#[derive(Clone, Debug)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub label: CongruentialMap,
    pub color: String,
    /// Expression the label was built from, used for display and serialisation.
    pub text: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct DiagramGraph {
    pub nodes: Vec<String>,
    pub edges: Vec<Edge>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub source: String,
    pub target: String,
    pub path_a: Vec<usize>,
    pub path_b: Vec<usize>,
    pub witness: String,
    pub value_a: String,
    pub value_b: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CommuteReport {
    pub max_path_len: usize,
    pub node_pairs: usize,
    pub paths: usize,
    /// First counterexample found for each violating node pair.
    pub violations: Vec<Violation>,
}

impl CommuteReport {
    pub fn commutes(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations_csv(&self) -> String {
        let mut out = String::from("source,target,path_a,path_b,witness,value_a,value_b\n");
        for v in &self.violations {
            let path = |p: &[usize]| p.iter().map(usize::to_string).collect::<Vec<_>>().join("-");
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                v.source,
                v.target,
                path(&v.path_a),
                path(&v.path_b),
                v.witness,
                v.value_a,
                v.value_b
            );
        }
        out
    }
}

impl DiagramGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, id: &str) -> usize {
        if let Some(i) = self.node_index(id) {
            return i;
        }
        self.nodes.push(id.to_string());
        self.nodes.len() - 1
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == id)
    }

    pub fn add_edge(&mut self, source: &str, target: &str, color: &str, label: CongruentialMap) -> usize {
        let (source, target) = (self.add_node(source), self.add_node(target));
        self.edges.push(Edge { source, target, label, color: color.to_string(), text: None });
        self.edges.len() - 1
    }

    /// Adds an edge whose label is given as a map expression.
    pub fn add_edge_expr(&mut self, source: &str, target: &str, color: &str, text: &str) -> Result<usize> {
        let label = expr::resolve(text)?;
        let i = self.add_edge(source, target, color, label);
        self.edges[i].text = Some(text.to_string());
        Ok(i)
    }

    pub fn find_edge(&self, source: &str, target: &str) -> Option<usize> {
        let (s, t) = (self.node_index(source)?, self.node_index(target)?);
        self.edges.iter().position(|e| e.source == s && e.target == t)
    }

    pub fn describe_edge(&self, i: usize) -> String {
        let e = &self.edges[i];
        format!(
            "{} -> {} [{}] {}",
            self.nodes[e.source],
            self.nodes[e.target],
            e.color,
            e.text.as_deref().unwrap_or("<map>")
        )
    }

    /// Composite of a path given as edge indices in traversal order.
    pub fn path_map(&self, path: &[usize]) -> CongruentialMap {
        path.iter()
            .fold(CongruentialMap::identity(), |acc, &e| self.edges[e].label.compose(&acc))
    }

    /// Every path of length `1..=max_len` from `source`, grouped by endpoint.
    fn paths_from(&self, source: usize, max_len: usize) -> BTreeMap<usize, Vec<(Vec<usize>, CongruentialMap)>> {
        let mut out: BTreeMap<usize, Vec<_>> = BTreeMap::new();
        let mut stack = vec![(source, Vec::new(), CongruentialMap::identity())];
        while let Some((node, path, map)) = stack.pop() {
            if path.len() == max_len {
                continue;
            }
            for (i, e) in self.edges.iter().enumerate().filter(|(_, e)| e.source == node) {
                let mut p = path.clone();
                p.push(i);
                let m = e.label.compose(&map);
                out.entry(e.target).or_default().push((p.clone(), m.clone()));
                stack.push((e.target, p, m));
            }
        }
        for paths in out.values_mut() {
            paths.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        }
        out
    }

    pub fn to_text(&self) -> Result<String> {
        let mut out = String::new();
        for n in &self.nodes {
            let _ = writeln!(out, "node {n}");
        }
        for (i, e) in self.edges.iter().enumerate() {
            let text = e.text.as_deref().ok_or_else(|| {
                Error::InvalidMap(format!("edge {i} has no expression and cannot be written inline"))
            })?;
            let _ = writeln!(out, "edge {} {} {} {}", self.nodes[e.source], self.nodes[e.target], e.color, text);
        }
        Ok(out)
    }

    pub fn from_text(input: &str) -> Result<Self> {
        let mut d = DiagramGraph::new();
        for (i, raw) in input.lines().enumerate() {
            let line = i + 1;
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let fail = |message: String| Error::Parse { line, message };
            let mut parts = text.splitn(5, char::is_whitespace).filter(|s| !s.is_empty());
            match parts.next() {
                Some("node") => {
                    let id = parts.next().ok_or_else(|| fail("expected `node <id>`".into()))?;
                    if parts.next().is_some() {
                        return Err(fail("node ids cannot contain spaces".into()));
                    }
                    d.add_node(id);
                }
                Some("edge") => {
                    let mut fields = text["edge".len()..].trim_start().splitn(4, char::is_whitespace);
                    let (Some(src), Some(dst), Some(color), Some(label)) =
                        (fields.next(), fields.next(), fields.next(), fields.next())
                    else {
                        return Err(fail("expected `edge <src> <dst> <color> <map>`".into()));
                    };
                    for n in [src, dst] {
                        if d.node_index(n).is_none() {
                            return Err(fail(format!("unknown node `{n}`")));
                        }
                    }
                    d.add_edge_expr(src, dst, color, label.trim())
                        .map_err(|e| fail(format!("bad edge label: {e}")))?;
                }
                Some(other) => return Err(fail(format!("unknown directive `{other}`"))),
                None => unreachable!(),
            }
        }
        Ok(d)
    }
}

pub fn check_commutes(d: &DiagramGraph, max_path_len: usize) -> CommuteReport {
    assert!(max_path_len >= 1, "paths need at least one edge");
    let mut violations = Vec::new();
    let mut node_pairs = 0;
    let mut paths = 0;
    for source in 0..d.nodes.len() {
        for (target, group) in d.paths_from(source, max_path_len) {
            node_pairs += 1;
            paths += group.len();
            let (first_path, first_map) = &group[0];
            if let Some((path, map, witness)) = group[1..]
                .iter()
                .find_map(|(p, m)| first_map.witness_difference(m).map(|w| (p, m, w)))
            {
                violations.push(Violation {
                    source: d.nodes[source].clone(),
                    target: d.nodes[target].clone(),
                    path_a: first_path.clone(),
                    path_b: path.clone(),
                    value_a: first_map.eval(&witness).to_string(),
                    value_b: map.eval(&witness).to_string(),
                    witness: witness.to_string(),
                });
            }
        }
    }
    CommuteReport { max_path_len, node_pairs, paths, violations }
}

/// A claim that `edge`'s label equals a composite of other edges' labels,
/// listed outermost first; `true` marks an inverted factor.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub edge: usize,
    pub factors: Vec<(usize, bool)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorizationCheck {
    pub edge: String,
    pub holds: bool,
}

pub fn check_factorizations(d: &DiagramGraph, claims: &[Factorization]) -> Result<Vec<FactorizationCheck>> {
    claims
        .iter()
        .map(|f| {
            let composite = f.factors.iter().try_fold(CongruentialMap::identity(), |acc, &(e, inv)| {
                let label = &d.edges[e].label;
                let m = if inv { label.inverse()? } else { label.clone() };
                Ok::<_, Error>(acc.compose(&m))
            })?;
            Ok(FactorizationCheck { edge: d.describe_edge(f.edge), holds: composite.equal(&d.edges[f.edge].label) })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangleCheck {
    pub edge: String,
    pub via: String,
    pub commutes: bool,
}

/// For edge `u → v`, every triangle it closes with a third node `w`:
/// `u → w → v`, `w → u → v` against `w → v`, and `u → v → w` against `u → w`.
pub fn local_triangles(d: &DiagramGraph, edge: usize) -> Vec<TriangleCheck> {
    let e = &d.edges[edge];
    let (u, v) = (e.source, e.target);
    let mut out = Vec::new();
    let mut push = |w: usize, lhs: CongruentialMap, rhs: CongruentialMap, shape: &str| {
        out.push(TriangleCheck {
            edge: d.describe_edge(edge),
            via: format!("{shape} {}", d.nodes[w]),
            commutes: lhs.equal(&rhs),
        });
    };
    let arrows: HashMap<(usize, usize), Vec<usize>> = d.edges.iter().enumerate().fold(HashMap::new(), |mut m, (i, x)| {
        m.entry((x.source, x.target)).or_default().push(i);
        m
    });
    let get = |a: usize, b: usize| arrows.get(&(a, b)).cloned().unwrap_or_default();
    for w in (0..d.nodes.len()).filter(|&w| w != u && w != v) {
        for a in get(u, w) {
            for b in get(w, v) {
                push(w, d.path_map(&[edge]), d.path_map(&[a, b]), "through");
            }
            for b in get(v, w) {
                push(w, d.path_map(&[a]), d.path_map(&[edge, b]), "onward to");
            }
        }
        for a in get(w, u) {
            for b in get(w, v) {
                push(w, d.path_map(&[b]), d.path_map(&[a, edge]), "back from");
            }
        }
    }
    out
}

/// Figure 1 as `(source, target, color, label)` with labels in expression syntax.
pub const FIGURE1_EDGES: &[(&str, &str, &str, &str)] = &[
    ("V0", "V1", "red", "alpha"),
    ("V1", "V2", "red", "alpha"),
    ("V0", "V4", "red", "id * alpha"),
    ("V4", "V3", "red", "alpha"),
    ("V3", "V2", "red", "alpha * id"),
    ("V0", "E0", "green", "rho'"),
    ("E0", "V1", "green", "lambda"),
    ("V1", "E1", "green", "rho'"),
    ("E1", "V2", "green", "lambda"),
    ("V0", "E4", "green", "id * rho'"),
    ("E4", "V4", "green", "id * lambda"),
    ("V4", "E3", "green", "rho'"),
    ("E3", "V3", "green", "lambda"),
    ("V3", "E2", "green", "rho' * id"),
    ("E2", "V2", "green", "lambda * id"),
    ("E0", "E1", "blue", "rho' lambda"),
    ("E1", "E2", "blue", "(lambda' * id) lambda"),
    ("E3", "E2", "blue", "(rho' * id) lambda"),
    ("E4", "E3", "blue", "rho' (id * lambda)"),
    ("E4", "E0", "blue", "rho' (id * rho)"),
];

/// The pentagram: MacLane's pentagon in red, its green factorisation
/// through `ρ⁻¹` and `λ`, and the inner blue pentagon.
pub fn build_figure1() -> DiagramGraph {
    let mut d = DiagramGraph::new();
    for n in ["V0", "V1", "V2", "V3", "V4", "E0", "E1", "E2", "E3", "E4"] {
        d.add_node(n);
    }
    for &(s, t, color, label) in FIGURE1_EDGES {
        d.add_edge_expr(s, t, color, label).expect("figure labels are valid expressions");
    }
    d
}

/// Factorisation claims of Figure 1: each red edge through its two green
/// edges, and each blue edge as its stated composite of green edges.
pub fn figure1_factorizations(d: &DiagramGraph) -> Vec<Factorization> {
    let e = |s: &str, t: &str| d.find_edge(s, t).unwrap_or_else(|| panic!("missing edge {s} -> {t}"));
    let via = |s: &str, mid: &str, t: &str| Factorization {
        edge: e(s, t),
        factors: vec![(e(mid, t), false), (e(s, mid), false)],
    };
    vec![
        via("V0", "E0", "V1"),
        via("V1", "E1", "V2"),
        via("V0", "E4", "V4"),
        via("V4", "E3", "V3"),
        via("V3", "E2", "V2"),
        via("E0", "V1", "E1"),
        via("E3", "V3", "E2"),
        via("E4", "V4", "E3"),
        Factorization { edge: e("E1", "E2"), factors: vec![(e("E2", "V2"), true), (e("E1", "V2"), false)] },
        Factorization { edge: e("E4", "E0"), factors: vec![(e("V0", "E0"), false), (e("V0", "E4"), true)] },
    ]
}

pub const K3_MIDDLE: &str = "(•••)";
pub const K3_LEFT: &str = "((••)•)";
pub const K3_RIGHT: &str = "(•(••))";

/// `((••)•) <-λ- (•••) -ρ-> (•(••))`.
pub fn build_k3() -> DiagramGraph {
    let mut d = DiagramGraph::new();
    d.add_edge_expr(K3_MIDDLE, K3_LEFT, "k3", "lambda").unwrap();
    d.add_edge_expr(K3_MIDDLE, K3_RIGHT, "k3", "rho").unwrap();
    d
}

/// K₃ closed into a triangle by the associator `(•(••)) → ((••)•)`.
pub fn build_k3_with_associator() -> DiagramGraph {
    let mut d = build_k3();
    d.add_edge_expr(K3_RIGHT, K3_LEFT, "red", "alpha").unwrap();
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue::{alpha, identity, rho};

    #[test]
    fn parallel_identical_edges_commute() {
        let mut d = DiagramGraph::new();
        d.add_edge("A", "B", "x", rho());
        d.add_edge("A", "B", "y", rho().lift(6));
        assert!(check_commutes(&d, 2).commutes());
    }

    #[test]
    fn parallel_distinct_edges_do_not() {
        let mut d = DiagramGraph::new();
        d.add_edge("A", "B", "x", rho());
        d.add_edge("A", "B", "y", alpha());
        let r = check_commutes(&d, 2);
        assert_eq!(r.violations.len(), 1);
        let v = &r.violations[0];
        assert_ne!(v.value_a, v.value_b);
        assert!(r.violations_csv().lines().count() == 2);
    }

    #[test]
    fn cycles_are_capped() {
        let mut d = DiagramGraph::new();
        d.add_edge("A", "A", "loop", identity());
        d.add_edge("A", "B", "x", rho());
        let r = check_commutes(&d, 5);
        assert!(r.commutes());
        assert_eq!(r.paths, 5 + 5);
    }

    #[test]
    fn red_pentagon_commutes() {
        let mut d = DiagramGraph::new();
        for &(s, t, c, l) in FIGURE1_EDGES.iter().filter(|e| e.2 == "red") {
            d.add_edge_expr(s, t, c, l).unwrap();
        }
        assert!(check_commutes(&d, 4).commutes());
    }

    #[test]
    fn figure1_shape() {
        let d = build_figure1();
        assert_eq!((d.nodes.len(), d.edges.len()), (10, 20));
        let blue = d.find_edge("E4", "E0").unwrap();
        let expected = rho().inverse().unwrap().compose(&crate::star(&identity(), &rho()));
        assert!(d.edges[blue].label.equal(&expected));
    }

    #[test]
    fn k3_edges() {
        let d = build_k3();
        assert_eq!(d.edges.len(), 2);
        assert!(check_commutes(&d, 3).commutes());
        assert!(check_commutes(&build_k3_with_associator(), 3).commutes());
    }

    #[test]
    fn text_round_trip() {
        let d = build_figure1();
        let text = d.to_text().unwrap();
        let back = DiagramGraph::from_text(&text).unwrap();
        assert_eq!(back.nodes, d.nodes);
        for (a, b) in back.edges.iter().zip(&d.edges) {
            assert!(a.label.equal(&b.label));
            assert_eq!((a.source, a.target, &a.color), (b.source, b.target, &b.color));
        }
    }

    #[test]
    fn text_errors_are_line_numbered() {
        let cases = [
            ("node A\nedge A B red rho\n", 2),
            ("node A\nnode B\nedge A B red\n", 3),
            ("node A\nnode B\nedge A B red beta\n", 3),
            ("node A\nvertex B\n", 2),
        ];
        for (src, line) in cases {
            match DiagramGraph::from_text(src) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{src}"),
                other => panic!("{src}: {other:?}"),
            }
        }
    }
}
