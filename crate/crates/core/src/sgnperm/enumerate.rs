//! Canonical enumeration of `S_n`, `B_n` and `D_n`.
//!
//! Elements are produced in lexicographic order of their window words, with
//! letters compared as integers (so `-3 < -1 < 1 < 3`). `D_n` is listed in
//! the order it inherits from `B_n`. Every element has a rank in this order;
//! [`unrank`] and [`rank`] convert between the two, which lets exhaustive
//! scans be split into reproducible index ranges.

use std::ops::Range;

use rayon::prelude::*;

use super::Kind;
use crate::error::{Error, Result};

/// Limits enforced before any enumeration starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest `n` accepted by any enumeration.
    pub max_n: usize,
    /// Largest group order that may be scanned.
    pub max_elements: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_n: 12,
            max_elements: 100_000_000,
        }
    }
}

impl Budget {
    pub fn check(&self, n: usize, kind: Kind) -> Result<u128> {
        if n > self.max_n {
            return Err(Error::Resource(format!(
                "n = {n} exceeds the configured limit {}",
                self.max_n
            )));
        }
        let order = group_order(n, kind);
        if order > self.max_elements {
            return Err(Error::Resource(format!(
                "|{kind}_{n}| = {order} exceeds the budget of {} elements",
                self.max_elements
            )));
        }
        Ok(order)
    }
}

pub fn factorial_u128(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// `n!`, `2^n n!` or `2^(n-1) n!`. `D_0` is taken to be trivial.
pub fn group_order(n: usize, kind: Kind) -> u128 {
    match kind {
        Kind::A => factorial_u128(n),
        Kind::B => factorial_u128(n) << n,
        Kind::D if n == 0 => 1,
        Kind::D => factorial_u128(n) << (n - 1),
    }
}

/// Number of completions of a suffix of `r` positions.
fn completions(r: usize, kind: Kind) -> u128 {
    match kind {
        Kind::A => factorial_u128(r),
        Kind::B => factorial_u128(r) << r,
        // with a parity constraint on the total sign count
        Kind::D if r == 0 => 1,
        Kind::D => factorial_u128(r) << (r - 1),
    }
}

/// The element of the given rank.
pub fn unrank(n: usize, kind: Kind, mut index: u128) -> Result<Vec<i32>> {
    let order = group_order(n, kind);
    if index >= order {
        return Err(Error::Domain(format!(
            "rank {index} out of range for a group of order {order}"
        )));
    }
    let mut remaining: Vec<i32> = (1..=n as i32).collect();
    let mut word = Vec::with_capacity(n);
    let mut negatives = 0usize;
    for pos in 0..n {
        let r = n - pos;
        if kind == Kind::A {
            let block = completions(r - 1, kind);
            let choice = (index / block) as usize;
            index %= block;
            word.push(remaining.remove(choice));
            continue;
        }
        if kind == Kind::D && r == 1 {
            let v = remaining[0];
            word.push(if negatives % 2 == 1 { -v } else { v });
            break;
        }
        let block = completions(r - 1, kind);
        let choice = (index / block) as usize;
        index %= block;
        // letters in increasing order: -a_r, ..., -a_1, a_1, ..., a_r
        let letter = if choice < r {
            negatives += 1;
            -remaining.remove(r - 1 - choice)
        } else {
            remaining.remove(choice - r)
        };
        word.push(letter);
    }
    Ok(word)
}

/// Position of `word` in the canonical order of its group.
pub fn rank(word: &[i32], kind: Kind) -> u128 {
    let n = word.len();
    let mut remaining: Vec<i32> = (1..=n as i32).collect();
    let mut index = 0u128;
    for (pos, &letter) in word.iter().enumerate() {
        let r = n - pos;
        let a = letter.abs();
        let at = remaining.iter().position(|&v| v == a).expect("not a group element");
        if kind == Kind::D && r == 1 {
            break;
        }
        let choice = match kind {
            Kind::A => at,
            _ if letter < 0 => r - 1 - at,
            _ => r + at,
        };
        index += choice as u128 * completions(r - 1, kind);
        remaining.remove(at);
    }
    index
}

fn next_permutation(w: &mut [i32]) -> bool {
    let n = w.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && w[i - 1] >= w[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while w[j] <= w[i - 1] {
        j -= 1;
    }
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

fn next_signed(w: &mut [i32]) -> bool {
    let n = w.len();
    let mut avail: Vec<i32> = Vec::with_capacity(n);
    for i in (0..n).rev() {
        avail.push(w[i].abs());
        // smallest letter over the available absolute values exceeding w[i]
        let cur = w[i];
        let best = avail
            .iter()
            .flat_map(|&a| [-a, a])
            .filter(|&l| l > cur)
            .min();
        if let Some(l) = best {
            w[i] = l;
            let mut rest: Vec<i32> = avail.iter().copied().filter(|&a| a != l.abs()).collect();
            rest.sort_unstable_by(|a, b| b.cmp(a));
            for (slot, a) in w[i + 1..].iter_mut().zip(rest) {
                *slot = -a;
            }
            return true;
        }
    }
    false
}

fn is_even_signed(w: &[i32]) -> bool {
    w.iter().filter(|&&l| l < 0).count() % 2 == 0
}

/// Streams a contiguous rank range of a group in canonical order.
///
/// Use [`GroupEnumerator::advance`] in hot loops to avoid allocating; the
/// `Iterator` implementation clones each word.
#[derive(Debug, Clone)]
pub struct GroupEnumerator {
    kind: Kind,
    current: Vec<i32>,
    remaining: u128,
    fresh: bool,
}

impl GroupEnumerator {
    pub fn range(n: usize, kind: Kind, ranks: Range<u128>, budget: &Budget) -> Result<Self> {
        let order = budget.check(n, kind)?;
        if ranks.end > order || ranks.start > ranks.end {
            return Err(Error::Domain(format!(
                "rank range {ranks:?} outside 0..{order}"
            )));
        }
        let current = if ranks.start < order {
            unrank(n, kind, ranks.start)?
        } else {
            Vec::new()
        };
        Ok(GroupEnumerator {
            kind,
            current,
            remaining: ranks.end - ranks.start,
            fresh: true,
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Moves to the next element and borrows its window word.
    pub fn advance(&mut self) -> Option<&[i32]> {
        if self.remaining == 0 {
            return None;
        }
        if self.fresh {
            self.fresh = false;
        } else {
            let moved = match self.kind {
                Kind::A => next_permutation(&mut self.current),
                Kind::B => next_signed(&mut self.current),
                Kind::D => loop {
                    if !next_signed(&mut self.current) {
                        break false;
                    }
                    if is_even_signed(&self.current) {
                        break true;
                    }
                },
            };
            debug_assert!(moved, "rank bookkeeping out of sync");
        }
        self.remaining -= 1;
        Some(&self.current)
    }
}

impl Iterator for GroupEnumerator {
    type Item = Vec<i32>;

    fn next(&mut self) -> Option<Vec<i32>> {
        self.advance().map(<[i32]>::to_vec)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}

/// All elements of the group, in canonical order.
pub fn enumerate_group(n: usize, kind: Kind, budget: &Budget) -> Result<GroupEnumerator> {
    let order = budget.check(n, kind)?;
    GroupEnumerator::range(n, kind, 0..order, budget)
}

/// Splits `0..order` into at most `parts` contiguous, nearly equal ranges.
pub fn partition_ranges(order: u128, parts: usize) -> Vec<Range<u128>> {
    let parts = (parts.max(1) as u128).min(order.max(1));
    let base = order / parts;
    let extra = order % parts;
    let mut start = 0;
    (0..parts)
        .map(|p| {
            let len = base + u128::from(p < extra);
            let r = start..start + len;
            start += len;
            r
        })
        .collect()
}

/// Folds every element of a group in parallel.
///
/// The group is cut into fixed rank ranges, each folded sequentially from
/// `init()`, and the partial results are combined left to right with
/// `reduce`. The result does not depend on the number of worker threads.
pub fn par_fold_group<T, I, F, R>(
    n: usize,
    kind: Kind,
    budget: &Budget,
    init: I,
    fold: F,
    reduce: R,
) -> Result<T>
where
    T: Send,
    I: Fn() -> T + Sync,
    F: Fn(&mut T, &[i32]) + Sync,
    R: Fn(T, T) -> T + Sync,
{
    let order = budget.check(n, kind)?;
    let parts = usize::try_from((order / 4096).clamp(1, 256)).unwrap_or(256);
    let partials = partition_ranges(order, parts)
        .into_par_iter()
        .map(|r| {
            let mut acc = init();
            let mut it = GroupEnumerator::range(n, kind, r, budget)?;
            while let Some(w) = it.advance() {
                fold(&mut acc, w);
            }
            Ok(acc)
        })
        .collect::<Result<Vec<T>>>()?;
    Ok(partials.into_iter().fold(init(), reduce))
}
