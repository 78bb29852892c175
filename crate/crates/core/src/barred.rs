//! Simply and loosely barred permutations.
//!
//! A simply barred permutation `(w, B)` places a bar after `w_i` for every
//! `i` in `B ⊆ [n]`; the bars cut `w` into blocks, of which only the last
//! may be empty. The map [`psi`] sends it to the signed permutation whose
//! path representation is the upper antidiagonal of the subgrid spanned by
//! `B ∪ {0}`, labelled by `w`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{parse_err, precondition, Error, Result};
use crate::pathrep::{path_representation, signed_from_path, LatticePath, Step};
use crate::sgnperm::{string_serde, Permutation, SignedPermutation};
use crate::text::parse_letters;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplyBarredPermutation {
    w: Permutation,
    bars: BTreeSet<usize>,
}

/// Normality and compatibility of a simply barred permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SbpClass {
    pub normal: bool,
    pub compatible: bool,
}

impl SimplyBarredPermutation {
    pub fn new(w: Permutation, bars: BTreeSet<usize>) -> Result<Self> {
        let n = w.len();
        if bars.iter().any(|&b| b == 0 || b > n) {
            return Err(precondition!("bars {bars:?} must lie in [1, {n}]"));
        }
        Ok(SimplyBarredPermutation { w, bars })
    }

    pub fn n(&self) -> usize {
        self.w.len()
    }

    pub fn w(&self) -> &Permutation {
        &self.w
    }

    pub fn bars(&self) -> &BTreeSet<usize> {
        &self.bars
    }

    /// All `2^n n!` simply barred permutations with the given `w`.
    pub fn all_with(w: &Permutation) -> impl Iterator<Item = SimplyBarredPermutation> + '_ {
        let n = w.len();
        (0u64..1 << n).map(move |mask| SimplyBarredPermutation {
            w: w.clone(),
            bars: (1..=n).filter(|&i| mask >> (i - 1) & 1 == 1).collect(),
        })
    }

    /// The `|B| + 1` blocks; the last one is empty iff `n ∈ B`.
    pub fn blocks(&self) -> Vec<Vec<i32>> {
        let word = self.w.word();
        let mut blocks = Vec::with_capacity(self.bars.len() + 1);
        let mut start = 0;
        for &b in &self.bars {
            blocks.push(word[start..b].to_vec());
            start = b;
        }
        blocks.push(word[start..].to_vec());
        blocks
    }

    /// 1-based index `ceil((|B| + 1) / 2)` of the central block.
    pub fn central_index(&self) -> usize {
        self.bars.len() / 2 + 1
    }

    pub fn central_block(&self) -> Vec<i32> {
        self.blocks().swap_remove(self.central_index() - 1)
    }

    /// Letters increase inside every block.
    pub fn is_normal(&self) -> bool {
        self.blocks().iter().all(|b| b.windows(2).all(|p| p[0] < p[1]))
    }

    /// Compatibility decided by the size of the central block.
    pub fn is_compatible(&self) -> bool {
        self.central_block().len() >= 2
    }

    pub fn classify(&self) -> SbpClass {
        SbpClass {
            normal: self.is_normal(),
            compatible: self.is_compatible(),
        }
    }

    /// `|Desc(w) \ B| + ceil(|B| / 2)`, the type B descent count of `psi(w, B)`.
    pub fn descent_index(&self) -> usize {
        let outside = self
            .w
            .descent_set()
            .into_iter()
            .filter(|d| !self.bars.contains(d))
            .count();
        outside + self.bars.len().div_ceil(2)
    }

    /// The number of strictly positive descents of `psi(w, B)`, computed from
    /// `descent_index` and the parity of `|B|`.
    pub fn positive_descent_index(&self) -> usize {
        let k = self.descent_index();
        if self.bars.len() % 2 == 1 {
            k - 1
        } else {
            k
        }
    }

    /// Membership in `SBP_{n,k}`.
    pub fn in_sbp_nk(&self, k: usize) -> bool {
        self.descent_index() == k
    }

    /// Membership in `SBP_n^k`.
    pub fn in_sbp_upper_k(&self, k: usize) -> bool {
        self.positive_descent_index() == k
    }

    /// The `n`-th block moved to the front, as used to encode threshold
    /// graphs by barred permutations whose first block is large.
    pub fn rotate_central_first(&self) -> SimplyBarredPermutation {
        let mut blocks = self.blocks();
        let c = blocks.remove(self.central_index() - 1);
        blocks.insert(0, c);
        Self::from_blocks(&blocks)
    }

    /// Inverse of [`SimplyBarredPermutation::rotate_central_first`].
    pub fn rotate_first_to_central(&self) -> SimplyBarredPermutation {
        let mut blocks = self.blocks();
        let first = blocks.remove(0);
        blocks.insert(self.central_index() - 1, first);
        Self::from_blocks(&blocks)
    }

    fn from_blocks(blocks: &[Vec<i32>]) -> SimplyBarredPermutation {
        let mut word = Vec::new();
        let mut bars = BTreeSet::new();
        for b in &blocks[..blocks.len() - 1] {
            word.extend_from_slice(b);
            bars.insert(word.len());
        }
        word.extend_from_slice(&blocks[blocks.len() - 1]);
        SimplyBarredPermutation {
            w: Permutation::from_word_unchecked(word),
            bars,
        }
    }
}

impl fmt::Display for SimplyBarredPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n() > 9 { "," } else { "" };
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| b.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(sep))
            .collect();
        f.write_str(&blocks.join("|"))
    }
}

impl FromStr for SimplyBarredPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let pieces: Vec<&str> = s.trim().split('|').collect();
        let mut word = Vec::new();
        let mut bars = BTreeSet::new();
        for (i, piece) in pieces.iter().enumerate() {
            let letters = parse_letters(piece)?;
            let last = i + 1 == pieces.len();
            if letters.is_empty() && !(last && i > 0) {
                return Err(parse_err!(
                    "empty block in {s:?}: consecutive or leading bars are not allowed"
                ));
            }
            word.extend(letters);
            if !last {
                bars.insert(word.len());
            }
        }
        let w = Permutation::new(word).map_err(|_| parse_err!("{s:?} does not carry a permutation"))?;
        SimplyBarredPermutation::new(w, bars)
    }
}

string_serde!(SimplyBarredPermutation);

/// A permutation with bars at positions in `{0..n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LooselyBarredPermutation {
    pub w: Permutation,
    pub bars: BTreeSet<usize>,
}

impl LooselyBarredPermutation {
    pub fn new(w: Permutation, bars: BTreeSet<usize>) -> Result<Self> {
        let n = w.len();
        if bars.iter().any(|&b| b > n) {
            return Err(precondition!("bars {bars:?} must lie in [0, {n}]"));
        }
        Ok(LooselyBarredPermutation { w, bars })
    }

    /// `des(w) + |B|`.
    pub fn weight(&self) -> usize {
        self.w.des() + self.bars.len()
    }

    /// All `2^(n+1)` loosely barred permutations with the given `w`.
    pub fn all_with(w: &Permutation) -> impl Iterator<Item = LooselyBarredPermutation> + '_ {
        let n = w.len();
        (0u64..1 << (n + 1)).map(move |mask| LooselyBarredPermutation {
            w: w.clone(),
            bars: (0..=n).filter(|&i| mask >> i & 1 == 1).collect(),
        })
    }
}

/// The upper antidiagonal of the subgrid `(B ∪ {0}) x (B ∪ {0})`, preceded
/// by South steps and followed by East steps to run from `(0, n)` to `(n, 0)`.
pub fn upper_antidiagonal(bars: &BTreeSet<usize>, n: usize) -> Result<LatticePath> {
    if bars.iter().any(|&b| b == 0 || b > n) {
        return Err(precondition!("bars {bars:?} must lie in [1, {n}]"));
    }
    let marks: Vec<usize> = std::iter::once(0).chain(bars.iter().copied()).collect();
    let m = marks.len() - 1;
    let top = marks[m];
    let mut steps = Vec::with_capacity(2 * n);
    steps.extend(std::iter::repeat_n(Step::South, n - top));
    for i in 0..m {
        steps.extend(std::iter::repeat_n(Step::East, marks[i + 1] - marks[i]));
        steps.extend(std::iter::repeat_n(Step::South, marks[m - i] - marks[m - i - 1]));
    }
    steps.extend(std::iter::repeat_n(Step::East, n - top));
    LatticePath::new(steps)
}

/// `psi(w, B)`: the signed permutation with path representation
/// `(upper_antidiagonal(B), w)`.
pub fn psi(sbp: &SimplyBarredPermutation) -> SignedPermutation {
    let path = upper_antidiagonal(&sbp.bars, sbp.n()).expect("bars validated on construction");
    signed_from_path(&path, &sbp.w).expect("upper antidiagonals are symmetric")
}

/// Turns every negative letter of the full notation into a bar, merges
/// consecutive bars and drops a bar at position 0.
pub fn psi_inverse(u: &SignedPermutation) -> SimplyBarredPermutation {
    let rep = path_representation(u);
    let mut bars = BTreeSet::new();
    let mut east = 0;
    for s in rep.path.steps() {
        match s {
            Step::East => east += 1,
            Step::South if east > 0 => {
                bars.insert(east);
            }
            Step::South => {}
        }
    }
    SimplyBarredPermutation {
        w: rep.lambda_x,
        bars,
    }
}

/// `xi_D(B) = (D Δ B) \ {0}`.
pub fn xi(d: &BTreeSet<usize>, b: &BTreeSet<usize>) -> BTreeSet<usize> {
    d.symmetric_difference(b).copied().filter(|&x| x != 0).collect()
}

/// The two preimages `D Δ C` and `(D Δ C) ∪ {0}` of `C` under `xi_D`.
pub fn xi_preimages(d: &BTreeSet<usize>, c: &BTreeSet<usize>) -> [BTreeSet<usize>; 2] {
    let b1: BTreeSet<usize> = d.symmetric_difference(c).copied().collect();
    let mut b2 = b1.clone();
    b2.insert(0);
    [b1, b2]
}

/// `Theta_n(w, B) = (w, xi_{Desc(w)}(B))`.
pub fn theta(lbp: &LooselyBarredPermutation) -> SimplyBarredPermutation {
    SimplyBarredPermutation {
        w: lbp.w.clone(),
        bars: xi(&lbp.w.descent_set(), &lbp.bars),
    }
}

/// Which restriction of `Theta_n` to invert.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThetaTarget {
    /// `Theta_{n,k}`: preimage with `des(w) + |B| = 2k`, image in `SBP_{n,k}`.
    EvenSum(usize),
    /// `Theta_n^k`: preimage with `des(w) + |B| = 2k + 1`, image in `SBP_n^k`.
    OddSum(usize),
}

pub fn theta_inverse(
    sbp: &SimplyBarredPermutation,
    target: ThetaTarget,
) -> Result<LooselyBarredPermutation> {
    let odd_c = sbp.bars.len() % 2 == 1;
    let [b1, b2] = xi_preimages(&sbp.w.descent_set(), &sbp.bars);
    let bars = match target {
        ThetaTarget::EvenSum(k) => {
            if !sbp.in_sbp_nk(k) {
                return Err(precondition!("{sbp} is not in SBP_(n,{k})"));
            }
            if odd_c {
                b2
            } else {
                b1
            }
        }
        ThetaTarget::OddSum(k) => {
            if !sbp.in_sbp_upper_k(k) {
                return Err(precondition!("{sbp} is not in SBP_n^{k}"));
            }
            if odd_c {
                b1
            } else {
                b2
            }
        }
    };
    Ok(LooselyBarredPermutation {
        w: sbp.w.clone(),
        bars,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sgnperm::{enumerate_group, Budget, Kind};

    fn sbp(s: &str) -> SimplyBarredPermutation {
        s.parse().unwrap()
    }

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    fn perms(n: usize) -> Vec<Permutation> {
        enumerate_group(n, Kind::A, &Budget::default())
            .unwrap()
            .map(|w| Permutation::new(w).unwrap())
            .collect()
    }

    fn all_sbp(n: usize) -> Vec<SimplyBarredPermutation> {
        perms(n)
            .iter()
            .flat_map(|w| SimplyBarredPermutation::all_with(w).collect::<Vec<_>>())
            .collect()
    }

    #[test]
    fn text_forms() {
        let s = sbp("74|2|316|5");
        assert_eq!(s.bars(), &set(&[2, 3, 6]));
        assert_eq!(s.w().to_string(), "7,4,2,3,1,6,5");
        assert_eq!(s.to_string(), "74|2|316|5");
        let t = sbp("34|1|265|7|");
        assert_eq!(t.bars(), &set(&[2, 3, 6, 7]));
        assert_eq!(t.to_string(), "34|1|265|7|");
        assert!("74||2316|5".parse::<SimplyBarredPermutation>().is_err());
        assert!("|7423165".parse::<SimplyBarredPermutation>().is_err());
        assert!("74|2|2".parse::<SimplyBarredPermutation>().is_err());
        let big = sbp("10,1|2,3,4,5,6,7,8,9|");
        assert_eq!(big.to_string(), "10,1|2,3,4,5,6,7,8,9|");
    }

    #[test]
    fn antidiagonals() {
        assert_eq!(upper_antidiagonal(&set(&[]), 3).unwrap().to_string(), "SSSEEE");
        assert_eq!(upper_antidiagonal(&set(&[1, 2, 3]), 3).unwrap().to_string(), "ESESES");
        let p = upper_antidiagonal(&set(&[2, 3, 6]), 7).unwrap();
        assert_eq!(p.to_string(), "SEESSSESEEESSE");
        assert_eq!(p.east_south_turns().len(), 3);
        for mask in 0u32..1 << 6 {
            let bars: BTreeSet<usize> = (1..=6).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            let p = upper_antidiagonal(&bars, 6).unwrap();
            assert!(p.is_diagonal_symmetric());
            assert_eq!(p.east_south_turns().len(), bars.len());
        }
    }

    #[test]
    fn psi_running_example() {
        let u = psi(&sbp("74|2|316|5"));
        assert_eq!(u.to_string(), "-2,3,1,6,-4,-7,5");
        assert_eq!(psi_inverse(&u), sbp("74|2|316|5"));
        assert_eq!(psi(&sbp("1234")), SignedPermutation::identity(4));
    }

    #[test]
    fn psi_round_trip_and_statistics_on_sbp5() {
        for s in all_sbp(5) {
            let u = psi(&s);
            assert_eq!(psi_inverse(&u), s);
            assert_eq!(s.descent_index(), u.des(Kind::B).unwrap(), "{s}");
            assert_eq!(u.descent_set(Kind::B).unwrap().contains(&0), s.bars().len() % 2 == 1);
            assert_eq!(path_representation(&u).path.east_south_turns().len(), s.bars().len());
            assert_eq!(s.positive_descent_index(), crate::sgnperm::des_positive(u.window()));
        }
    }

    #[test]
    fn descent_formula_examples() {
        assert_eq!(sbp("74|2|316|5").descent_index(), 4);
        assert_eq!(sbp("123").descent_index(), 0);
    }

    #[test]
    fn xi_basics() {
        assert_eq!(xi(&set(&[1, 3]), &set(&[0, 1])), set(&[3]));
        assert_eq!(xi(&set(&[]), &set(&[2, 4])), set(&[2, 4]));
        let d = set(&[1, 3]);
        let c = set(&[2, 3]);
        for b in xi_preimages(&d, &c) {
            assert_eq!(xi(&d, &b), c);
        }
    }

    #[test]
    fn xi_is_two_to_one_with_the_parity_rules() {
        let n = 4;
        let subsets = |top: usize, from: usize| -> Vec<BTreeSet<usize>> {
            (0u32..1 << (top - from + 1))
                .map(|m| (from..=top).filter(|i| m >> (i - from) & 1 == 1).collect())
                .collect()
        };
        for d in subsets(n, 1) {
            let mut fibres: std::collections::BTreeMap<BTreeSet<usize>, Vec<BTreeSet<usize>>> =
                Default::default();
            for b in subsets(n, 0) {
                let c = xi(&d, &b);
                let total = d.len() + b.len();
                let lower = d.difference(&c).count() + c.len().div_ceil(2);
                let zero = b.contains(&0);
                // the four cases of the parity table
                match (total % 2, zero) {
                    (0, false) => assert!(lower == total / 2 && c.len().is_multiple_of(2)),
                    (0, true) => assert!(lower == total / 2 && c.len() % 2 == 1),
                    (1, false) => assert!(lower == total / 2 + 1 && c.len() % 2 == 1),
                    _ => assert!(lower == total / 2 && c.len().is_multiple_of(2)),
                }
                fibres.entry(c).or_default().push(b);
            }
            assert_eq!(fibres.len(), 16);
            for (c, mut pre) in fibres {
                pre.sort();
                let mut want = xi_preimages(&d, &c).to_vec();
                want.sort();
                assert_eq!(pre, want);
            }
        }
    }

    #[test]
    fn theta_examples() {
        let w: Permutation = "7423165".parse().unwrap();
        let l = LooselyBarredPermutation::new(w.clone(), set(&[])).unwrap();
        assert_eq!(theta(&l).bars(), &w.descent_set());
        let l = LooselyBarredPermutation::new(w.clone(), w.descent_set()).unwrap();
        assert!(theta(&l).bars().is_empty());
    }

    #[test]
    fn theta_restrictions_are_bijections_for_n5() {
        let n = 5;
        let ps = perms(n);
        for k in 0..=n {
            let mut images = BTreeSet::new();
            let mut count = 0;
            for w in &ps {
                for l in LooselyBarredPermutation::all_with(w).filter(|l| l.weight() == 2 * k) {
                    let s = theta(&l);
                    assert!(s.in_sbp_nk(k));
                    assert_eq!(theta_inverse(&s, ThetaTarget::EvenSum(k)).unwrap(), l);
                    images.insert(s);
                    count += 1;
                }
            }
            let target = all_sbp(n).into_iter().filter(|s| s.in_sbp_nk(k)).count();
            assert_eq!(images.len(), count);
            assert_eq!(images.len(), target);
        }
    }

    #[test]
    fn theta_inverse_round_trips_for_n4() {
        let n = 4;
        for s in all_sbp(n) {
            let k = s.descent_index();
            let l = theta_inverse(&s, ThetaTarget::EvenSum(k)).unwrap();
            assert_eq!(l.weight(), 2 * k);
            assert_eq!(theta(&l), s);
            let k = s.positive_descent_index();
            let l = theta_inverse(&s, ThetaTarget::OddSum(k)).unwrap();
            assert_eq!(l.weight(), 2 * k + 1);
            assert_eq!(theta(&l), s);
            assert!(theta_inverse(&s, ThetaTarget::EvenSum(k + 5)).is_err());
        }
    }

    #[test]
    fn theta_inverse_picks_the_preimage_by_parity() {
        // |C| odd, even target: the preimage contains 0
        let s = sbp("74|2|316|5");
        let k = s.descent_index();
        assert!(theta_inverse(&s, ThetaTarget::EvenSum(k)).unwrap().bars.contains(&0));
        assert!(!theta_inverse(&s, ThetaTarget::OddSum(s.positive_descent_index()))
            .unwrap()
            .bars
            .contains(&0));
        // |C| even: the other way round
        let s = sbp("74|2316|5");
        let k = s.descent_index();
        assert!(!theta_inverse(&s, ThetaTarget::EvenSum(k)).unwrap().bars.contains(&0));
        assert!(theta_inverse(&s, ThetaTarget::OddSum(s.positive_descent_index()))
            .unwrap()
            .bars
            .contains(&0));
    }

    #[test]
    fn blocks_and_central_block() {
        let s = sbp("74|2|316|5");
        assert_eq!(s.blocks(), vec![vec![7, 4], vec![2], vec![3, 1, 6], vec![5]]);
        assert_eq!(s.central_index(), 2);
        assert_eq!(s.central_block(), vec![2]);
        let s = sbp("312");
        assert_eq!(s.blocks().len(), 1);
        assert_eq!(s.central_block(), vec![3, 1, 2]);
        let s = sbp("312|");
        assert_eq!(s.blocks(), vec![vec![3, 1, 2], vec![]]);
        assert_eq!(s.central_index(), 1);
    }

    #[test]
    fn classification() {
        assert_eq!(sbp("74|2|316|5").classify(), SbpClass { normal: false, compatible: false });
        assert!(sbp("12|34").is_normal());
        for s in all_sbp(5) {
            assert_eq!(s.is_compatible(), psi(&s).is_smooth().unwrap(), "{s}");
        }
    }

    #[test]
    fn rotations_are_inverse() {
        for s in all_sbp(4) {
            let r = s.rotate_central_first();
            assert_eq!(r.bars().len(), s.bars().len());
            assert_eq!(r.blocks()[0], s.central_block());
            assert_eq!(r.rotate_first_to_central(), s);
        }
    }
}
