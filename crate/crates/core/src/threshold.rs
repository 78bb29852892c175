//! Simple graphs, the vicinal preorder and threshold graphs.
//!
//! The threshold pairs `TG_n` are pairs `(w, E)` of a threshold graph on
//! `[n]` and one of its degree orderings. They are in bijection with `D_n`
//! through `u -> (lambda_x^u, E^u)`, where `E^u` collects the pairs of
//! `lambda_x`-labels of the off-diagonal cells below the path of `u`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::barred::{psi, psi_inverse, SimplyBarredPermutation};
use crate::error::{parse_err, precondition, Error, Result};
use crate::pathrep::{path_representation, signed_from_path, HeightFunction};
use crate::sgnperm::{enumerate_group, Budget, Kind, Permutation, SignedPermutation};

/// Largest vertex count representable by the adjacency bitmasks.
pub const MAX_VERTICES: usize = 32;

/// A labelled simple graph on `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleGraph {
    n: usize,
    // bit u-1 of adj[v-1] is set iff {u, v} is an edge
    adj: Vec<u32>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Domain(format!("graphs are limited to {MAX_VERTICES} vertices")));
        }
        Ok(SimpleGraph { n, adj: vec![0; n] })
    }

    pub fn new<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut g = SimpleGraph::empty(n)?;
        for (a, b) in edges {
            if a == b || a == 0 || b == 0 || a > n || b > n {
                return Err(precondition!("{{{a},{b}}} is not an edge on [{n}]"));
            }
            g.adj[a - 1] |= 1 << (b - 1);
            g.adj[b - 1] |= 1 << (a - 1);
        }
        Ok(g)
    }

    /// The graph whose edges are the set bits of `mask`, pairs being
    /// numbered `{1,2}, {1,3}, ..., {n-1,n}`.
    pub fn from_edge_mask(n: usize, mask: u64) -> SimpleGraph {
        let mut adj = vec![0u32; n];
        let mut bit = 0;
        for a in 0..n {
            for b in a + 1..n {
                if mask >> bit & 1 == 1 {
                    adj[a] |= 1 << b;
                    adj[b] |= 1 << a;
                }
                bit += 1;
            }
        }
        SimpleGraph { n, adj }
    }

    pub fn edge_mask(&self) -> u64 {
        let mut mask = 0;
        let mut bit = 0;
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.adj[a] >> b & 1 == 1 {
                    mask |= 1 << bit;
                }
                bit += 1;
            }
        }
        mask
    }

    /// All `2^C(n,2)` labelled graphs on `[n]`.
    pub fn all(n: usize) -> impl Iterator<Item = SimpleGraph> {
        let pairs = n * n.saturating_sub(1) / 2;
        assert!(pairs < 64, "too many graphs to list");
        (0..1u64 << pairs).map(move |m| SimpleGraph::from_edge_mask(n, m))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a - 1] >> (b - 1) & 1 == 1
    }

    /// Neighbourhood of `v` as a bitmask over `[n]` (bit `u-1` for `u`).
    pub fn neighbours(&self, v: usize) -> u32 {
        self.adj[v - 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (1..=self.n).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as sorted pairs `(min, max)`.
    pub fn edges(&self) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for a in 1..=self.n {
            for b in a + 1..=self.n {
                if self.has_edge(a, b) {
                    out.insert((a, b));
                }
            }
        }
        out
    }

    pub fn is_subgraph_of(&self, other: &SimpleGraph) -> bool {
        self.n == other.n && self.adj.iter().zip(&other.adj).all(|(a, b)| a & !b == 0)
    }

    /// `sigma ∘ E = { {sigma(x), sigma(y)} : {x, y} ∈ E }`.
    pub fn relabel(&self, sigma: &Permutation) -> SimpleGraph {
        let mut g = SimpleGraph { n: self.n, adj: vec![0; self.n] };
        for (a, b) in self.edges() {
            let (x, y) = (sigma.apply(a) as usize, sigma.apply(b) as usize);
            g.adj[x - 1] |= 1 << (y - 1);
            g.adj[y - 1] |= 1 << (x - 1);
        }
        g
    }
}

impl fmt::Display for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges().iter().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "{}; {}", self.n, edges.join(", "))
    }
}

impl FromStr for SimpleGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, rest) = s.split_once(';').unwrap_or((s, ""));
        let n: usize = n.trim().parse().map_err(|_| parse_err!("bad vertex count in {s:?}"))?;
        let mut edges = Vec::new();
        for tok in rest.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (a, b) = tok.split_once('-').ok_or_else(|| parse_err!("bad edge {tok:?}"))?;
            let a = a.trim().parse().map_err(|_| parse_err!("bad edge {tok:?}"))?;
            let b = b.trim().parse().map_err(|_| parse_err!("bad edge {tok:?}"))?;
            edges.push((a, b));
        }
        SimpleGraph::new(n, edges).map_err(|e| parse_err!("{e}"))
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Serialize for SimpleGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson {
            n: self.n,
            edges: self.edges().into_iter().map(|(a, b)| [a, b]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimpleGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let g = GraphJson::deserialize(d)?;
        SimpleGraph::new(g.n, g.edges.into_iter().map(|[a, b]| (a, b))).map_err(serde::de::Error::custom)
    }
}

/// `v ≼ u` iff `N(v) ⊆ N(u) ∪ {u}`.
pub fn vicinal_compare(g: &SimpleGraph, v: usize, u: usize) -> bool {
    g.neighbours(v) & !(g.neighbours(u) | 1 << (u - 1)) == 0
}

/// How [`is_threshold`] decides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Recognition {
    /// The vicinal preorder is total.
    Vicinal,
    /// No induced `2K2`, `P4` or `C4` on any four vertices.
    Forbidden,
}

pub fn is_threshold(g: &SimpleGraph, method: Recognition) -> bool {
    let n = g.n();
    match method {
        Recognition::Vicinal => (1..=n).all(|v| {
            (v + 1..=n).all(|u| vicinal_compare(g, v, u) || vicinal_compare(g, u, v))
        }),
        Recognition::Forbidden => {
            for a in 1..=n {
                for b in a + 1..=n {
                    for c in b + 1..=n {
                        for d in c + 1..=n {
                            if forbidden_quad(g, [a, b, c, d]) {
                                return false;
                            }
                        }
                    }
                }
            }
            true
        }
    }
}

// Among graphs on four vertices, 2K2, P4 and C4 are the only ones whose
// degree sequences are (1,1,1,1), (1,1,2,2) and (2,2,2,2).
fn forbidden_quad(g: &SimpleGraph, quad: [usize; 4]) -> bool {
    let mut deg = [0usize; 4];
    for i in 0..4 {
        for j in i + 1..4 {
            if g.has_edge(quad[i], quad[j]) {
                deg[i] += 1;
                deg[j] += 1;
            }
        }
    }
    deg.sort_unstable();
    matches!(deg, [1, 1, 1, 1] | [1, 1, 2, 2] | [2, 2, 2, 2])
}

/// Degrees are non-increasing along `w`.
pub fn is_degree_ordering(g: &SimpleGraph, w: &Permutation) -> bool {
    w.len() == g.n()
        && w
            .word()
            .windows(2)
            .all(|p| g.degree(p[0] as usize) >= g.degree(p[1] as usize))
}

/// The degree ordering breaking ties by smaller label first.
pub fn canonical_degree_ordering(g: &SimpleGraph) -> Result<Permutation> {
    if !is_threshold(g, Recognition::Vicinal) {
        return Err(precondition!("{g} is not a threshold graph"));
    }
    let mut verts: Vec<usize> = (1..=g.n()).collect();
    verts.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    Ok(Permutation::from_word_unchecked(verts.into_iter().map(|v| v as i32).collect()))
}

/// Every degree ordering of `g`.
pub fn degree_orderings(g: &SimpleGraph) -> Vec<Permutation> {
    let mut classes: BTreeMap<std::cmp::Reverse<usize>, Vec<i32>> = BTreeMap::new();
    for v in 1..=g.n() {
        classes.entry(std::cmp::Reverse(g.degree(v))).or_default().push(v as i32);
    }
    let mut words: Vec<Vec<i32>> = vec![Vec::new()];
    for class in classes.into_values() {
        let arrangements: Vec<Vec<i32>> = enumerate_group(class.len(), Kind::A, &Budget::default())
            .expect("class sizes stay within budget")
            .map(|p| p.iter().map(|&i| class[i as usize - 1]).collect())
            .collect();
        words = words
            .into_iter()
            .flat_map(|prefix| {
                arrangements.iter().map(move |a| {
                    let mut w = prefix.clone();
                    w.extend_from_slice(a);
                    w
                })
            })
            .collect();
    }
    words.into_iter().map(Permutation::from_word_unchecked).collect()
}

/// An element `(w, E)` of `TG_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ThresholdPair {
    pub w: Permutation,
    pub graph: SimpleGraph,
}

impl ThresholdPair {
    pub fn new(w: Permutation, graph: SimpleGraph) -> Result<Self> {
        if !is_threshold(&graph, Recognition::Vicinal) {
            return Err(precondition!("{graph} is not a threshold graph"));
        }
        if !is_degree_ordering(&graph, &w) {
            return Err(precondition!("{w} is not a degree ordering of {graph}"));
        }
        Ok(ThresholdPair { w, graph })
    }
}

/// All of `TG_n`, grouped by graph in edge-mask order.
pub fn threshold_pairs(n: usize) -> Vec<ThresholdPair> {
    SimpleGraph::all(n)
        .filter(|g| is_threshold(g, Recognition::Vicinal))
        .flat_map(|g| {
            degree_orderings(&g)
                .into_iter()
                .map(move |w| ThresholdPair { w, graph: g.clone() })
        })
        .collect()
}

/// `E_f = { {x, y} : x != y, y <= f(x) }` for a self-adjoint `f`.
pub fn edges_from_height(f: &HeightFunction) -> Result<SimpleGraph> {
    if !f.is_self_adjoint() {
        return Err(precondition!("{:?} is not self-adjoint", f.values()));
    }
    edges_below(f)
}

fn edges_below(f: &HeightFunction) -> Result<SimpleGraph> {
    let n = f.n();
    let mut g = SimpleGraph::empty(n)?;
    for x in 1..=n {
        for y in 1..=f.value(x).min(n) {
            if x != y {
                g.adj[x - 1] |= 1 << (y - 1);
                g.adj[y - 1] |= 1 << (x - 1);
            }
        }
    }
    Ok(g)
}

/// `f_E(x) = max N(x)` (with `max ∅ = 0`, `f_E(0) = n`), for a threshold
/// graph having the identity as a degree ordering.
pub fn height_from_edges(g: &SimpleGraph) -> Result<HeightFunction> {
    let n = g.n();
    if !is_threshold(g, Recognition::Vicinal) {
        return Err(precondition!("{g} is not a threshold graph"));
    }
    if !is_degree_ordering(g, &Permutation::identity(n)) {
        return Err(precondition!("the identity is not a degree ordering of {g}"));
    }
    let mut values = vec![n];
    values.extend((1..=n).map(|x| 32 - g.neighbours(x).leading_zeros() as usize));
    HeightFunction::new(values)
}

/// `E^u`: pairs `{lambda_x(x), lambda_x(y)}`, `x != y`, with `(x, y)` below
/// the path of `u`. Defined for every signed permutation.
pub fn edges_from_signed(u: &SignedPermutation) -> SimpleGraph {
    let rep = path_representation(u);
    let below = edges_below(&rep.path.height_function()).expect("n within graph limits");
    below.relabel(&rep.lambda_x)
}

/// `u -> (lambda_x^u, E^u)`.
pub fn tg_pair(u: &SignedPermutation) -> ThresholdPair {
    ThresholdPair {
        w: path_representation(u).lambda_x,
        graph: edges_from_signed(u),
    }
}

/// The even-signed permutation mapped to `pair` by [`tg_pair`].
pub fn signed_from_tg(pair: &ThresholdPair) -> Result<SignedPermutation> {
    let pair = ThresholdPair::new(pair.w.clone(), pair.graph.clone())?;
    let f = height_from_edges(&pair.graph.relabel(&pair.w.inverse()))?;
    // fixed-point-free, so the path leaves the diagonal eastwards
    let lower = signed_from_path(&f.to_path(), &pair.w)?;
    Ok(lower.even_representative())
}

/// Whether two letters share a block of `sbp` iff they have equal degree in `g`.
pub fn same_block_iff_equal_degree(sbp: &SimplyBarredPermutation, g: &SimpleGraph) -> bool {
    let mut block_of = vec![0usize; sbp.n() + 1];
    for (i, b) in sbp.blocks().iter().enumerate() {
        for &v in b {
            block_of[v as usize] = i;
        }
    }
    (1..=sbp.n()).all(|i| {
        (i + 1..=sbp.n()).all(|j| (block_of[i] == block_of[j]) == (g.degree(i) == g.degree(j)))
    })
}

/// Compatibility decided by degrees in `E^{psi(w, B)}`.
pub fn is_compatible_by_degrees(sbp: &SimplyBarredPermutation) -> bool {
    same_block_iff_equal_degree(sbp, &edges_from_signed(&psi(sbp)))
}

/// Encodes a threshold graph on `[n]`, `n >= 2`, as a normal simply barred
/// permutation whose first block has at least two letters.
pub fn sbp_from_threshold(g: &SimpleGraph) -> Result<SimplyBarredPermutation> {
    if g.n() < 2 {
        return Err(Error::Domain(
            "the barred encoding of threshold graphs needs n >= 2".into(),
        ));
    }
    let w = canonical_degree_ordering(g)?;
    let u = signed_from_tg(&ThresholdPair { w, graph: g.clone() })?;
    let central = psi_inverse(&u.smooth_representative()?);
    Ok(central.rotate_central_first())
}

/// Inverse of [`sbp_from_threshold`].
pub fn threshold_from_sbp(sbp: &SimplyBarredPermutation) -> Result<SimpleGraph> {
    if sbp.n() < 2 {
        return Err(Error::Domain(
            "the barred encoding of threshold graphs needs n >= 2".into(),
        ));
    }
    if !sbp.is_normal() || sbp.blocks()[0].len() < 2 {
        return Err(precondition!("{sbp} is not normal with a first block of size >= 2"));
    }
    Ok(edges_from_signed(&psi(&sbp.rotate_first_to_central())))
}

/// Brute-force tally of threshold graphs on `[n]`: the total, and the
/// number with `i` distinct degrees at index `i - 1`, for `i = 1..=n`.
pub fn count_threshold_graphs(n: usize, method: Recognition) -> (u64, Vec<u64>) {
    let mut by = vec![0u64; n];
    for g in SimpleGraph::all(n).filter(|g| is_threshold(g, method)) {
        let distinct = g.degrees().into_iter().collect::<BTreeSet<_>>().len();
        by[distinct - 1] += 1;
    }
    (by.iter().sum(), by)
}

/// Sorted degree sequence.
pub fn degree_signature(g: &SimpleGraph) -> Vec<usize> {
    let mut d = g.degrees();
    d.sort_unstable();
    d
}

/// The smallest edge mask over all relabellings of `g`.
pub fn canonical_form_bruteforce(g: &SimpleGraph) -> u64 {
    enumerate_group(g.n(), Kind::A, &Budget::default())
        .expect("n within budget")
        .map(|w| g.relabel(&Permutation::from_word_unchecked(w)).edge_mask())
        .min()
        .unwrap_or(0)
}

/// Isomorphism classes of threshold graphs on `[n]`.
pub fn unlabeled_threshold_count(n: usize, exact: bool) -> usize {
    let graphs = SimpleGraph::all(n).filter(|g| is_threshold(g, Recognition::Vicinal));
    if exact {
        graphs.map(|g| canonical_form_bruteforce(&g)).collect::<BTreeSet<_>>().len()
    } else {
        graphs.map(|g| degree_signature(&g)).collect::<BTreeSet<_>>().len()
    }
}
