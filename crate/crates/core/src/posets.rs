//! Finite posets: weak orders of types A, B, D and the order on `TG_n`.
//!
//! The order relation is stored as a pair of bit matrices (up-sets and
//! down-sets), filled in parallel at construction. Lower covers are
//! computed on first use and cached; a poset is read-only once built.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::hash::Hash;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{precondition, Error, Result};
use crate::sgnperm::{enumerate_group, Budget, InversionSet, Kind, SignedPermutation};
use crate::threshold::{tg_pair, threshold_pairs, ThresholdPair};

/// Largest poset [`weak_poset`] and [`tg_poset`] will build.
pub const MAX_POSET_SIZE: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
struct BitRow(Vec<u64>);

impl BitRow {
    fn new(len: usize) -> Self {
        BitRow(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn and(&self, other: &BitRow) -> BitRow {
        BitRow(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset(&self, other: &BitRow) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| 64 * k + b)
        })
    }
}

/// A finite partially ordered set over indexed elements.
#[derive(Debug)]
pub struct FinitePoset<T> {
    elements: Vec<T>,
    up: Vec<BitRow>,
    down: Vec<BitRow>,
    lower_covers: OnceLock<Vec<Vec<usize>>>,
}

/// Outcome of [`FinitePoset::lattice_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeReport {
    pub is_lattice: bool,
    /// First pair (by index) lacking a join or a meet.
    pub witness: Option<(usize, usize)>,
    pub missing: Option<&'static str>,
}

impl<T: Sync> FinitePoset<T> {
    /// Builds the poset from a comparability test. Fails unless `leq` is a
    /// partial order on `elements`.
    pub fn from_relation<F>(elements: Vec<T>, leq: F) -> Result<Self>
    where
        F: Fn(&T, &T) -> bool + Sync,
    {
        let len = elements.len();
        let up: Vec<BitRow> = (0..len)
            .into_par_iter()
            .map(|i| {
                let mut row = BitRow::new(len);
                for j in 0..len {
                    if leq(&elements[i], &elements[j]) {
                        row.set(j);
                    }
                }
                row
            })
            .collect();
        let mut down = vec![BitRow::new(len); len];
        for (i, row) in up.iter().enumerate() {
            for j in row.ones() {
                down[j].set(i);
            }
        }
        let poset = FinitePoset { elements, up, down, lower_covers: OnceLock::new() };
        poset.check_partial_order()?;
        Ok(poset)
    }

    fn check_partial_order(&self) -> Result<()> {
        for i in 0..self.len() {
            if !self.up[i].get(i) {
                return Err(precondition!("relation is not reflexive at {i}"));
            }
            for j in self.up[i].ones() {
                if j != i && self.up[j].get(i) {
                    return Err(precondition!("relation is not antisymmetric at ({i}, {j})"));
                }
                if !self.up[j].is_subset(&self.up[i]) {
                    return Err(precondition!("relation is not transitive through ({i}, {j})"));
                }
            }
        }
        Ok(())
    }
}

impl<T> FinitePoset<T> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].get(j)
    }

    /// Indices of the elements `x` covered by `i`.
    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.all_lower_covers()[i]
    }

    fn all_lower_covers(&self) -> &Vec<Vec<usize>> {
        self.lower_covers.get_or_init(|| {
            (0..self.len())
                .map(|z| {
                    self.down[z]
                        .ones()
                        .filter(|&x| x != z && self.up[x].and(&self.down[z]).count() == 2)
                        .collect()
                })
                .collect()
        })
    }

    /// All cover pairs `(lower, upper)`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (z, lows) in self.all_lower_covers().iter().enumerate() {
            out.extend(lows.iter().map(|&x| (x, z)));
        }
        out.sort_unstable();
        out
    }

    // the least element of `set` if it has one: the member with the
    // smallest down-set is the only candidate
    fn least_of(&self, set: &BitRow) -> Option<usize> {
        let z = set.ones().min_by_key(|&z| self.down[z].count())?;
        set.is_subset(&self.up[z]).then_some(z)
    }

    fn greatest_of(&self, set: &BitRow) -> Option<usize> {
        let z = set.ones().min_by_key(|&z| self.up[z].count())?;
        set.is_subset(&self.down[z]).then_some(z)
    }

    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        self.least_of(&self.up[i].and(&self.up[j]))
    }

    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        self.greatest_of(&self.down[i].and(&self.down[j]))
    }

    /// Whether every pair has a join and a meet.
    pub fn lattice_check(&self) -> LatticeReport {
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let missing = if self.join(i, j).is_none() {
                    Some("join")
                } else if self.meet(i, j).is_none() {
                    Some("meet")
                } else {
                    None
                };
                if missing.is_some() {
                    return LatticeReport { is_lattice: false, witness: Some((i, j)), missing };
                }
            }
        }
        LatticeReport { is_lattice: true, witness: None, missing: None }
    }

    /// Elements with exactly one lower cover.
    pub fn join_irreducible_count(&self) -> Result<usize> {
        if !self.lattice_check().is_lattice {
            return Err(precondition!("join-irreducibles are counted in lattices only"));
        }
        Ok(self.all_lower_covers().iter().filter(|c| c.len() == 1).count())
    }

    /// Hasse diagram in Graphviz DOT, bottom to top.
    pub fn to_dot(&self, label: impl Fn(&T) -> String) -> String {
        let mut out = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=plaintext];\n");
        for (i, e) in self.elements.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", label(e).replace('"', "\\\""));
        }
        for (x, z) in self.covers() {
            let _ = writeln!(out, "  n{x} -> n{z};");
        }
        out.push_str("}\n");
        out
    }

    /// `{ "elements": [...], "covers": [[lower, upper], ...] }`.
    pub fn covers_json(&self, label: impl Fn(&T) -> String) -> serde_json::Value {
        serde_json::json!({
            "elements": self.elements.iter().map(label).collect::<Vec<_>>(),
            "covers": self.covers(),
        })
    }
}

impl<T: Eq + Hash> FinitePoset<T> {
    pub fn index_of(&self, e: &T) -> Option<usize> {
        self.elements.iter().position(|x| x == e)
    }
}

/// A chain `0 < 1 < ... < m-1`.
pub fn chain(m: usize) -> FinitePoset<usize> {
    FinitePoset::from_relation((0..m).collect(), |a, b| a <= b).expect("a chain is a poset")
}

/// `a <= b` in the weak order: inversion-set containment.
pub fn weak_leq(a: &SignedPermutation, b: &SignedPermutation, kind: Kind) -> Result<bool> {
    if a.len() != b.len() {
        return Err(precondition!("{a} and {b} have different sizes"));
    }
    for u in [a, b] {
        match kind {
            Kind::A if u.negative_count() > 0 => {
                return Err(precondition!("{u} is not a permutation"));
            }
            Kind::D if !u.is_even_signed() => {
                return Err(precondition!("{u} is not even-signed"));
            }
            _ => {}
        }
    }
    Ok(a.inversion_set(kind).is_subset(&b.inversion_set(kind)))
}

// Encodes inversion sets as bitmasks over the pairs that occur.
fn inversion_masks(sets: &[InversionSet]) -> Vec<u128> {
    let mut index: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    for s in sets {
        for &p in s.positive.iter().chain(&s.negative) {
            let next = index.len();
            index.entry(p).or_insert(next);
        }
    }
    assert!(index.len() <= 128, "too many inversion pairs for a mask");
    sets.iter()
        .map(|s| s.positive.iter().chain(&s.negative).fold(0u128, |m, p| m | 1 << index[p]))
        .collect()
}

fn check_size(order: u128) -> Result<()> {
    if order > MAX_POSET_SIZE as u128 {
        return Err(Error::Resource(format!("poset of {order} elements exceeds {MAX_POSET_SIZE}")));
    }
    Ok(())
}

/// The weak order on `S_n` (as positive signed permutations), `B_n` or `D_n`.
pub fn weak_poset(n: usize, kind: Kind, budget: &Budget) -> Result<FinitePoset<SignedPermutation>> {
    check_size(budget.check(n, kind)?)?;
    let elements: Vec<SignedPermutation> = enumerate_group(n, kind, budget)?
        .map(SignedPermutation::from_window_unchecked)
        .collect();
    let sets: Vec<InversionSet> = elements.iter().map(|u| u.inversion_set(kind)).collect();
    let masks = inversion_masks(&sets);
    let by_index: Vec<(usize, SignedPermutation)> = elements.into_iter().enumerate().collect();
    let poset = FinitePoset::from_relation(by_index, |(i, _), (j, _)| masks[*i] & !masks[*j] == 0)?;
    Ok(strip_indices(poset))
}

fn strip_indices<T>(p: FinitePoset<(usize, T)>) -> FinitePoset<T> {
    FinitePoset {
        elements: p.elements.into_iter().map(|(_, e)| e).collect(),
        up: p.up,
        down: p.down,
        lower_covers: p.lower_covers,
    }
}

/// `TG_n` ordered by `(w1, E1) <= (w2, E2)` iff `w1 <= w2` in the weak order
/// of `S_n` and `E1 ⊆ E2`.
pub fn tg_poset(n: usize) -> Result<FinitePoset<ThresholdPair>> {
    if n > 6 {
        return Err(Error::Resource(format!("TG_{n} exceeds the poset size limit")));
    }
    let elements = threshold_pairs(n);
    check_size(elements.len() as u128)?;
    let sets: Vec<InversionSet> = elements.iter().map(|p| p.w.inversion_set()).collect();
    let masks = inversion_masks(&sets);
    let by_index: Vec<(usize, ThresholdPair)> = elements.into_iter().enumerate().collect();
    let poset = FinitePoset::from_relation(by_index, |(i, a), (j, b)| {
        masks[*i] & !masks[*j] == 0 && a.graph.is_subgraph_of(&b.graph)
    })?;
    Ok(strip_indices(poset))
}

/// Whether `map` is a bijection `P -> Q` with `x <= y ⟺ map(x) <= map(y)`.
pub fn order_isomorphism_check<S, T, F>(p: &FinitePoset<S>, q: &FinitePoset<T>, map: F) -> Result<bool>
where
    T: Eq + Hash,
    F: Fn(&S) -> T,
{
    let lookup: HashMap<&T, usize> = q.elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut image = Vec::with_capacity(p.len());
    let mut hit = vec![false; q.len()];
    for x in &p.elements {
        let j = *lookup
            .get(&map(x))
            .ok_or_else(|| precondition!("the map leaves the target poset"))?;
        if std::mem::replace(&mut hit[j], true) {
            return Err(precondition!("the map is not injective"));
        }
        image.push(j);
    }
    if p.len() != q.len() {
        return Err(precondition!("the map is not surjective"));
    }
    Ok((0..p.len()).all(|a| (0..p.len()).all(|b| p.leq(a, b) == q.leq(image[a], image[b]))))
}

/// Checks that `tg_pair` is an order isomorphism `weak(D_n) -> TG_n`.
pub fn tg_isomorphism_holds(n: usize, budget: &Budget) -> Result<bool> {
    let d = weak_poset(n, Kind::D, budget)?;
    let tg = tg_poset(n)?;
    order_isomorphism_check(&d, &tg, tg_pair)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eulerian::closed_d_n1;

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn chains() {
        let c = chain(3);
        assert_eq!(c.covers(), vec![(0, 1), (1, 2)]);
        assert!(c.lattice_check().is_lattice);
        assert_eq!(chain(5).join_irreducible_count().unwrap(), 4);
    }

    #[test]
    fn antichain_is_not_a_lattice() {
        let p = FinitePoset::from_relation(vec![0, 1], |a, b| a == b).unwrap();
        let r = p.lattice_check();
        assert!(!r.is_lattice);
        assert_eq!(r.witness, Some((0, 1)));
        assert!(p.join_irreducible_count().is_err());
    }

    #[test]
    fn rejects_non_orders() {
        assert!(FinitePoset::from_relation(vec![0, 1], |_, _| true).is_err());
        assert!(FinitePoset::from_relation(vec![0, 1, 2], |a, b| a == b || b == &(a + 1)).is_err());
        assert!(FinitePoset::from_relation(vec![0], |_, _| false).is_err());
    }

    #[test]
    fn weak_a3() {
        let p = weak_poset(3, Kind::A, &budget()).unwrap();
        assert_eq!(p.len(), 6);
        assert!(p.lattice_check().is_lattice);
        let id = p.index_of(&SignedPermutation::identity(3)).unwrap();
        assert!((0..6).all(|j| p.leq(id, j)));
        assert_eq!(p.covers().len(), 6);
    }

    #[test]
    fn weak_leq_preconditions() {
        let a: SignedPermutation = "-1,2".parse().unwrap();
        let id = SignedPermutation::identity(2);
        assert!(weak_leq(&id, &a, Kind::B).unwrap());
        assert!(weak_leq(&id, &a, Kind::D).is_err());
        assert!(weak_leq(&id, &a, Kind::A).is_err());
        assert!(weak_leq(&id, &SignedPermutation::identity(3), Kind::B).is_err());
    }

    #[test]
    fn covers_are_descents() {
        for (n, kind) in [(4, Kind::A), (3, Kind::B), (4, Kind::D)] {
            let p = weak_poset(n, kind, &budget()).unwrap();
            for (i, u) in p.elements().iter().enumerate() {
                assert_eq!(p.lower_covers(i).len(), u.des(kind).unwrap(), "{kind} {u}");
            }
        }
    }

    #[test]
    fn join_irreducibles() {
        for n in 3..=5 {
            let p = weak_poset(n, Kind::A, &budget()).unwrap();
            assert_eq!(p.join_irreducible_count().unwrap(), (1 << n) - n - 1);
        }
        let d4 = weak_poset(4, Kind::D, &budget()).unwrap();
        assert_eq!(d4.join_irreducible_count().unwrap(), 44);
        assert_eq!(closed_d_n1(4), 44.into());
    }

    #[test]
    fn tg_posets() {
        let tg2 = tg_poset(2).unwrap();
        assert_eq!(tg2.len(), 4);
        assert!(tg2.lattice_check().is_lattice);
        let tg4 = tg_poset(4).unwrap();
        assert_eq!(tg4.len(), 192);
        let bottom = (0..tg4.len()).find(|&i| (0..tg4.len()).all(|j| tg4.leq(i, j))).unwrap();
        let b = &tg4.elements()[bottom];
        assert_eq!(b.w, crate::Permutation::identity(4));
        assert_eq!(b.graph.edge_count(), 0);
    }

    #[test]
    fn tg_pair_is_an_order_isomorphism() {
        for n in 2..=4 {
            assert!(tg_isomorphism_holds(n, &budget()).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn isomorphism_preconditions() {
        let c = chain(3);
        assert!(order_isomorphism_check(&c, &c, |&x| x).unwrap());
        assert!(order_isomorphism_check(&c, &c, |_| 0usize).is_err());
        let reversed = FinitePoset::from_relation(vec![0usize, 1, 2], |a, b| a >= b).unwrap();
        assert!(!order_isomorphism_check(&c, &reversed, |&x| x).unwrap());
    }

    #[test]
    fn exports() {
        let c = chain(2);
        let dot = c.to_dot(|x| x.to_string());
        assert!(dot.contains("n0 -> n1;"));
        let json = c.covers_json(|x| x.to_string());
        assert_eq!(json["covers"], serde_json::json!([[0, 1]]));
    }
}
