//! Permutations and signed permutations with their type A, B and D
//! statistics.
//!
//! A signed permutation of `[n]` is stored in window notation `u_1 ... u_n`;
//! the full notation `u_{-n} ... u_{-1} u_1 ... u_n` is recovered on demand
//! from `u_{-i} = -u_i`.

mod enumerate;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use enumerate::{
    enumerate_group, group_order, par_fold_group, partition_ranges, rank, unrank, Budget,
    GroupEnumerator,
};

use crate::error::{parse_err, precondition, Error, Result};
use crate::text::{format_letters, parse_letters};

/// Coxeter type of a statistic or of a group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    A,
    B,
    D,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::A => "A",
            Kind::B => "B",
            Kind::D => "D",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kind> {
        match s.trim() {
            "A" | "a" => Ok(Kind::A),
            "B" | "b" => Ok(Kind::B),
            "D" | "d" => Ok(Kind::D),
            other => Err(parse_err!("unknown Coxeter type {other:?}")),
        }
    }
}

fn is_permutation_word(word: &[i32]) -> bool {
    let n = word.len();
    let mut seen = vec![false; n + 1];
    word.iter().all(|&v| {
        let ok = v >= 1 && (v as usize) <= n && !seen[v as usize];
        if ok {
            seen[v as usize] = true;
        }
        ok
    })
}

/// A permutation `w_1 ... w_n` of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<i32>,
}

impl Permutation {
    pub fn new(word: Vec<i32>) -> Result<Self> {
        if !is_permutation_word(&word) {
            return Err(precondition!("{word:?} is not a permutation of [{}]", word.len()));
        }
        Ok(Permutation { word })
    }

    pub(crate) fn from_word_unchecked(word: Vec<i32>) -> Self {
        debug_assert!(is_permutation_word(&word));
        Permutation { word }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n as i32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[i32] {
        &self.word
    }

    pub fn into_word(self) -> Vec<i32> {
        self.word
    }

    /// `w(i)` for `i` in `1..=n`.
    pub fn apply(&self, i: usize) -> i32 {
        self.word[i - 1]
    }

    /// `w^{-1}(v)`, the 1-based position of the letter `v`.
    pub fn position_of(&self, v: i32) -> usize {
        self.word.iter().position(|&x| x == v).expect("letter out of range") + 1
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.word.iter().enumerate() {
            inv[v as usize - 1] = i as i32 + 1;
        }
        Permutation { word: inv }
    }

    /// `Desc(w)`, positions `i` in `1..n` with `w_i > w_{i+1}`.
    pub fn descent_set(&self) -> BTreeSet<usize> {
        descents_a(&self.word).collect()
    }

    pub fn des(&self) -> usize {
        descents_a(&self.word).count()
    }

    /// `inv(w)` as pairs of values `(i, j)`, `i < j`, with `j` before `i`.
    pub fn inversion_set(&self) -> InversionSet {
        let inv = self.inverse();
        let n = self.len() as i32;
        let mut set = InversionSet::default();
        for i in 1..=n {
            for j in i + 1..=n {
                if inv.word[i as usize - 1] > inv.word[j as usize - 1] {
                    set.positive.insert((i, j));
                }
            }
        }
        set
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_letters(&self.word))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let word = parse_letters(s)?;
        if !is_permutation_word(&word) {
            return Err(parse_err!("{s:?} is not a permutation"));
        }
        Ok(Permutation { word })
    }
}

fn descents_a(w: &[i32]) -> impl Iterator<Item = usize> + '_ {
    w.windows(2)
        .enumerate()
        .filter(|(_, p)| p[0] > p[1])
        .map(|(i, _)| i + 1)
}

/// Number of type A descents of a word.
pub fn des_a(w: &[i32]) -> usize {
    w.windows(2).filter(|p| p[0] > p[1]).count()
}

/// Number of descents at positions `1..n` (strictly positive descents).
pub fn des_positive(w: &[i32]) -> usize {
    des_a(w)
}

/// Number of type B descents of a window word (sentinel `u_0 = 0`).
pub fn des_b(w: &[i32]) -> usize {
    usize::from(w.first().is_some_and(|&l| l < 0)) + des_a(w)
}

/// Number of type D descents of a window word (sentinel `u_0 = -u_2`).
///
/// Panics if the word has fewer than two letters.
pub fn des_d(w: &[i32]) -> usize {
    usize::from(-w[1] > w[0]) + des_a(w)
}

/// The type B inversions, split by the sign of the first coordinate.
///
/// Positive pairs `(i, j)` satisfy `1 <= i < j <= n`; negative pairs satisfy
/// `i < 0` and `1 <= |i| <= j <= n`. Both encode `u^{-1}(i) > u^{-1}(j)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InversionSet {
    pub positive: BTreeSet<(i32, i32)>,
    pub negative: BTreeSet<(i32, i32)>,
}

impl InversionSet {
    pub fn len(&self) -> usize {
        self.positive.len() + self.negative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, pair: (i32, i32)) -> bool {
        if pair.0 < 0 {
            self.negative.contains(&pair)
        } else {
            self.positive.contains(&pair)
        }
    }

    pub fn is_subset(&self, other: &InversionSet) -> bool {
        self.positive.is_subset(&other.positive) && self.negative.is_subset(&other.negative)
    }

    /// Negative pairs read as unordered pairs `{|i|, j}` (singletons on the
    /// diagonal are kept as `(j, j)`), normalised to `(min, max)`.
    pub fn unordered_negative(&self) -> BTreeSet<(i32, i32)> {
        self.negative
            .iter()
            .map(|&(i, j)| (i.abs().min(j), i.abs().max(j)))
            .collect()
    }
}

/// Smoothness and parity of a signed permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub smooth: bool,
    pub even_signed: bool,
}

/// A signed permutation of `[n]` in window notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    window: Vec<i32>,
}

impl SignedPermutation {
    pub fn new(window: Vec<i32>) -> Result<Self> {
        let abs: Vec<i32> = window.iter().map(|l| l.abs()).collect();
        if !is_permutation_word(&abs) {
            return Err(precondition!(
                "{window:?} is not a signed permutation of [{}]",
                window.len()
            ));
        }
        Ok(SignedPermutation { window })
    }

    pub(crate) fn from_window_unchecked(window: Vec<i32>) -> Self {
        debug_assert!(is_permutation_word(
            &window.iter().map(|l| l.abs()).collect::<Vec<_>>()
        ));
        SignedPermutation { window }
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            window: (1..=n as i32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.window.len()
    }

    pub fn is_empty(&self) -> bool {
        self.window.is_empty()
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    pub fn into_window(self) -> Vec<i32> {
        self.window
    }

    /// `u_i` for `i` in `±[n]`, with `u_0 = 0`.
    pub fn letter(&self, i: i32) -> i32 {
        match i {
            0 => 0,
            i if i > 0 => self.window[i as usize - 1],
            i => -self.window[(-i) as usize - 1],
        }
    }

    /// `u_{-n} ... u_{-1} u_1 ... u_n`.
    pub fn full_notation(&self) -> Vec<i32> {
        self.window
            .iter()
            .rev()
            .map(|&l| -l)
            .chain(self.window.iter().copied())
            .collect()
    }

    /// `u^{-1}(v)` for `v` in `±[n]`, as a signed position.
    pub fn position_of(&self, v: i32) -> i32 {
        for (p, &l) in self.window.iter().enumerate() {
            if l == v {
                return p as i32 + 1;
            }
            if l == -v {
                return -(p as i32 + 1);
            }
        }
        panic!("letter {v} out of range");
    }

    pub fn negative_count(&self) -> usize {
        self.window.iter().filter(|&&l| l < 0).count()
    }

    pub fn is_even_signed(&self) -> bool {
        self.negative_count().is_multiple_of(2)
    }

    /// The permutation `|u_1| ... |u_n|`.
    pub fn abs_word(&self) -> Permutation {
        Permutation::from_word_unchecked(self.window.iter().map(|l| l.abs()).collect())
    }

    /// Flips the sign of the first window letter.
    pub fn mate(&self) -> SignedPermutation {
        let mut window = self.window.clone();
        if let Some(first) = window.first_mut() {
            *first = -*first;
        }
        SignedPermutation { window }
    }

    /// Whether `u_1` and `u_2` share a sign.
    pub fn is_smooth(&self) -> Result<bool> {
        if self.len() < 2 {
            return Err(Error::Domain(
                "smoothness needs at least two letters".into(),
            ));
        }
        Ok((self.window[0] > 0) == (self.window[1] > 0))
    }

    pub fn classify(&self) -> Result<Classification> {
        Ok(Classification {
            smooth: self.is_smooth()?,
            even_signed: self.is_even_signed(),
        })
    }

    /// The smooth element of `{u, mate(u)}`.
    pub fn smooth_representative(&self) -> Result<SignedPermutation> {
        if self.is_smooth()? {
            Ok(self.clone())
        } else {
            Ok(self.mate())
        }
    }

    /// The even-signed element of `{u, mate(u)}`.
    pub fn even_representative(&self) -> SignedPermutation {
        if self.is_even_signed() {
            self.clone()
        } else {
            self.mate()
        }
    }

    /// Descent positions of the given type.
    ///
    /// Type A reads the absolute word; types B and D return positions in
    /// `0..n` using the sentinels `u_0 = 0` and `u_0 = -u_2` respectively.
    pub fn descent_set(&self, kind: Kind) -> Result<BTreeSet<usize>> {
        let w = &self.window;
        match kind {
            Kind::A => Ok(self.abs_word().descent_set()),
            Kind::B => {
                let mut set: BTreeSet<usize> = descents_a(w).collect();
                if w.first().is_some_and(|&l| l < 0) {
                    set.insert(0);
                }
                Ok(set)
            }
            Kind::D => {
                self.require_type_d()?;
                let mut set: BTreeSet<usize> = descents_a(w).collect();
                if -w[1] > w[0] {
                    set.insert(0);
                }
                Ok(set)
            }
        }
    }

    /// Type D descents in the form indexed by `{-1, 1, ..., n-1}`, where
    /// `-1` is a descent iff `u_{-1} = -u_1 > u_2`.
    pub fn descent_set_d_signed(&self) -> Result<BTreeSet<i32>> {
        self.require_type_d()?;
        let w = &self.window;
        let mut set: BTreeSet<i32> = descents_a(w).map(|i| i as i32).collect();
        if -w[0] > w[1] {
            set.insert(-1);
        }
        Ok(set)
    }

    pub fn des(&self, kind: Kind) -> Result<usize> {
        match kind {
            Kind::A => Ok(des_a(&self.abs_word().word)),
            Kind::B => Ok(des_b(&self.window)),
            Kind::D => {
                self.require_type_d()?;
                Ok(des_d(&self.window))
            }
        }
    }

    fn require_type_d(&self) -> Result<()> {
        if self.len() < 2 {
            return Err(Error::Domain(
                "type D statistics need n >= 2 (the sentinel u_0 = -u_2 is undefined)".into(),
            ));
        }
        Ok(())
    }

    /// Inversions of the given type.
    ///
    /// Type A uses the absolute word; type D drops the pairs `(-i, i)` from
    /// the type B set.
    pub fn inversion_set(&self, kind: Kind) -> InversionSet {
        if kind == Kind::A {
            return self.abs_word().inversion_set();
        }
        let n = self.len() as i32;
        let mut pos = vec![0i32; 2 * n as usize + 1];
        for v in -n..=n {
            if v != 0 {
                pos[(v + n) as usize] = self.position_of(v);
            }
        }
        let at = |v: i32| pos[(v + n) as usize];
        let mut set = InversionSet::default();
        for j in 1..=n {
            for i in 1..j {
                if at(i) > at(j) {
                    set.positive.insert((i, j));
                }
            }
            for i in -j..=-1 {
                if kind == Kind::D && i == -j {
                    continue;
                }
                if at(i) > at(j) {
                    set.negative.insert((i, j));
                }
            }
        }
        set
    }

    /// `chi(u) = (|u_1|, v)` for non-smooth `u`, where `v` renormalises the
    /// tail `u_2 ... u_n` to a signed permutation of `[n-1]`.
    pub fn chi(&self) -> Result<(i32, SignedPermutation)> {
        if self.is_smooth()? {
            return Err(precondition!("chi is defined on non-smooth elements only, got {self}"));
        }
        let x = self.window[0].abs();
        let tail = self.window[1..]
            .iter()
            .map(|&l| l.signum() * if l.abs() > x { l.abs() - 1 } else { l.abs() })
            .collect();
        Ok((x, SignedPermutation { window: tail }))
    }

    /// Inverse of [`SignedPermutation::chi`]: renames `v` to avoid `±x` and
    /// prepends `x` with the sign opposite to the new second letter.
    pub fn chi_inverse(x: i32, v: &SignedPermutation) -> Result<SignedPermutation> {
        let n = v.len() as i32 + 1;
        if n < 2 || x < 1 || x > n {
            return Err(precondition!("chi_inverse needs x in [1, {n}] and n >= 2"));
        }
        let renamed: Vec<i32> = v
            .window
            .iter()
            .map(|&l| l.signum() * if l.abs() >= x { l.abs() + 1 } else { l.abs() })
            .collect();
        let first = if renamed[0] > 0 { -x } else { x };
        let mut window = Vec::with_capacity(n as usize);
        window.push(first);
        window.extend(renamed);
        Ok(SignedPermutation { window })
    }

    /// Decomposes the window as `iota . w` with `w` a permutation and `iota`
    /// the order-preserving injection whose positive image is returned.
    pub fn window_decomposition(&self) -> (Permutation, BTreeSet<i32>) {
        let mut sorted = self.window.clone();
        sorted.sort_unstable();
        let w = self
            .window
            .iter()
            .map(|l| sorted.binary_search(l).expect("letter present") as i32 + 1)
            .collect();
        let positive = self.window.iter().copied().filter(|&l| l > 0).collect();
        (Permutation::from_word_unchecked(w), positive)
    }

    /// Rebuilds a signed permutation from a window decomposition.
    pub fn from_window_decomposition(
        w: &Permutation,
        positive_image: &BTreeSet<i32>,
    ) -> Result<SignedPermutation> {
        let n = w.len() as i32;
        if positive_image.iter().any(|&v| v < 1 || v > n) {
            return Err(precondition!("positive image must lie in [1, {n}]"));
        }
        // image of iota in increasing order
        let mut image: Vec<i32> = (1..=n)
            .filter(|v| !positive_image.contains(v))
            .map(|v| -v)
            .chain(positive_image.iter().copied())
            .collect();
        image.sort_unstable();
        let window = w.word.iter().map(|&i| image[i as usize - 1]).collect();
        Ok(SignedPermutation { window })
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_letters(&self.window))
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SignedPermutation::new(parse_letters(s)?)
            .map_err(|_| parse_err!("{s:?} is not a signed permutation"))
    }
}

macro_rules! string_serde {
    ($ty:ty) => {
        impl Serialize for $ty {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

pub(crate) use string_serde;

string_serde!(Permutation);
string_serde!(SignedPermutation);

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> SignedPermutation {
        s.parse().unwrap()
    }

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn b_group(n: usize) -> impl Iterator<Item = SignedPermutation> {
        enumerate_group(n, Kind::B, &Budget::default())
            .unwrap()
            .map(SignedPermutation::from_window_unchecked)
    }

    #[test]
    fn type_a_descents() {
        let set: Vec<_> = perm("7423165").descent_set().into_iter().collect();
        assert_eq!(set, vec![1, 2, 4, 6]);
        assert!(Permutation::identity(6).descent_set().is_empty());
    }

    #[test]
    fn type_b_descents_of_running_example() {
        let u = sp("-2,3,1,6,-4,-7,5");
        let set: Vec<_> = u.descent_set(Kind::B).unwrap().into_iter().collect();
        assert_eq!(set, vec![0, 2, 4, 5]);
        assert_eq!(u.des(Kind::B).unwrap(), 4);
    }

    #[test]
    fn type_d_needs_two_letters() {
        let u = sp("-1");
        assert!(matches!(u.descent_set(Kind::D), Err(Error::Domain(_))));
        assert!(matches!(u.is_smooth(), Err(Error::Domain(_))));
        assert!(u.descent_set(Kind::B).is_ok());
    }

    #[test]
    fn type_d_sentinel() {
        // u_0 = -u_2 = 3 > u_1 = 1
        let u = sp("1,-3,2");
        assert!(u.descent_set(Kind::D).unwrap().contains(&0));
        assert!(!u.descent_set(Kind::B).unwrap().contains(&0));
    }

    #[test]
    fn remark_negative_pairs() {
        let u = sp("-2,3,1,6,-4,-7,5");
        let got = u.inversion_set(Kind::B).unordered_negative();
        let want: BTreeSet<(i32, i32)> = [
            (7, 7), (7, 4), (7, 2), (7, 3), (7, 1), (7, 6),
            (4, 4), (4, 2), (4, 3), (4, 1), (4, 6), (2, 2),
        ]
        .into_iter()
        .map(|(a, b): (i32, i32)| (a.min(b), a.max(b)))
        .collect();
        assert_eq!(got, want);
        assert_eq!(u.inversion_set(Kind::B).negative.len(), 12);
        assert_eq!(
            u.inversion_set(Kind::B).positive,
            perm("7423165").inversion_set().positive
        );
    }

    #[test]
    fn inversion_counts_small_cases() {
        assert!(Permutation::identity(5).inversion_set().is_empty());
        // -1,-2 is the longest element of B_2; the signed reversal -2,-1 is not
        assert_eq!(sp("-1,-2").inversion_set(Kind::B).len(), 4);
        assert_eq!(sp("-2,-1").inversion_set(Kind::B).len(), 3);
        // the longest element of B_n has n^2 inversions, and only it
        for n in 1..=4 {
            let max = b_group(n).map(|u| u.inversion_set(Kind::B).len()).max().unwrap();
            assert_eq!(max, n * n);
        }
    }

    #[test]
    fn type_d_inversions_drop_diagonal_pairs() {
        let u = sp("-2,3,1,6,-4,-7,5");
        let b = u.inversion_set(Kind::B);
        let d = u.inversion_set(Kind::D);
        assert_eq!(b.len() - d.len(), 3);
        assert!(d.negative.iter().all(|&(i, j)| -i != j));
    }

    #[test]
    fn mates() {
        assert_eq!(sp("-2,3,1,6,-4,-7,5").mate(), sp("2,3,1,6,-4,-7,5"));
        for u in b_group(5) {
            assert_eq!(u.mate().mate(), u);
            assert_ne!(u.is_even_signed(), u.mate().is_even_signed());
        }
    }

    #[test]
    fn classification() {
        let c = sp("-2,3,1,6,-4,-7,5").classify().unwrap();
        assert_eq!(c, Classification { smooth: false, even_signed: false });
        let c = SignedPermutation::identity(4).classify().unwrap();
        assert_eq!(c, Classification { smooth: true, even_signed: true });
        for u in b_group(4) {
            assert_ne!(u.is_smooth().unwrap(), u.mate().is_smooth().unwrap());
        }
    }

    #[test]
    fn smooth_representatives() {
        assert_eq!(
            sp("-2,3,1,6,-4,-7,5").smooth_representative().unwrap(),
            sp("2,3,1,6,-4,-7,5")
        );
        for u in b_group(4) {
            let s = u.smooth_representative().unwrap();
            assert!(s.is_smooth().unwrap());
            assert_eq!(s.smooth_representative().unwrap(), s);
        }
    }

    #[test]
    fn chi_worked_examples() {
        assert_eq!(sp("-2,3,1,6,-4,-7,5").chi().unwrap(), (2, sp("2,1,5,-3,-6,4")));
        assert_eq!(sp("6,-1,-2,-3,-4,-7,5").chi().unwrap(), (6, sp("-1,-2,-3,-4,-6,5")));
        assert_eq!(
            SignedPermutation::chi_inverse(3, &sp("-1,5,-4,2,3")).unwrap(),
            sp("3,-1,6,-5,2,4")
        );
        assert!(matches!(sp("1,2,3").chi(), Err(Error::Precondition(_))));
    }

    #[test]
    fn window_decomposition_example() {
        let (w, image) = sp("3,-4,1,-2,-5").window_decomposition();
        assert_eq!(w, perm("52431"));
        assert_eq!(image, BTreeSet::from([1, 3]));
        let (w, image) = SignedPermutation::identity(4).window_decomposition();
        assert_eq!(w, Permutation::identity(4));
        assert_eq!(image, BTreeSet::from([1, 2, 3, 4]));
    }

    #[test]
    fn positive_descent_distribution_in_b3() {
        let mut counts = [0u32; 3];
        for u in b_group(3) {
            counts[des_positive(u.window())] += 1;
        }
        // 2^3 times the type A Eulerian numbers 1, 4, 1
        assert_eq!(counts, [8, 32, 8]);
    }

    #[test]
    fn text_round_trip() {
        let u = sp("-2316-4-75");
        assert_eq!(u.to_string(), "-2,3,1,6,-4,-7,5");
        assert!("1,1".parse::<SignedPermutation>().is_err());
        assert!("1,-4".parse::<SignedPermutation>().is_err());
        let json = serde_json::to_string(&u).unwrap();
        assert_eq!(serde_json::from_str::<SignedPermutation>(&json).unwrap(), u);
    }
}
