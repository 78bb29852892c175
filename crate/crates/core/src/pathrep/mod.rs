//! Lattice paths, height functions and the path representation of signed
//! permutations.
//!
//! Paths run on the grid `{0..n} x {0..n}` from `(0, n)` to `(n, 0)` with
//! East and South unit steps. The height function of a path sends `x` to
//! the ordinate at which the `x`-th East step is taken, with `f(0) = n`.
//! A cell `(x, y)` (column `x`, row `y`, both in `1..=n`) lies below the
//! path iff `y <= f(x)`.

mod render;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use render::{render_ascii, render_svg};

use crate::error::{parse_err, precondition, Error, Result};
use crate::sgnperm::{string_serde, InversionSet, Permutation, SignedPermutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    East,
    South,
}

/// An East/South path from `(0, n)` to `(n, 0)`, stored as its step word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePath {
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let east = steps.iter().filter(|&&s| s == Step::East).count();
        if 2 * east != steps.len() {
            return Err(precondition!(
                "a path needs as many East as South steps ({east} of {})",
                steps.len()
            ));
        }
        Ok(LatticePath { steps })
    }

    pub fn n(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// All `C(2n, n)` paths, in lexicographic order with `East < South`.
    pub fn all(n: usize) -> Vec<LatticePath> {
        fn go(e: usize, s: usize, cur: &mut Vec<Step>, out: &mut Vec<LatticePath>) {
            if e == 0 && s == 0 {
                out.push(LatticePath { steps: cur.clone() });
                return;
            }
            for (step, left) in [(Step::East, e), (Step::South, s)] {
                if left > 0 {
                    cur.push(step);
                    if step == Step::East {
                        go(e - 1, s, cur, out);
                    } else {
                        go(e, s - 1, cur, out);
                    }
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::with_capacity(2 * n), &mut out);
        out
    }

    /// The mirror image along the diagonal `y = x`.
    pub fn reflect(&self) -> LatticePath {
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|s| match s {
                Step::East => Step::South,
                Step::South => Step::East,
            })
            .collect();
        LatticePath { steps }
    }

    pub fn is_diagonal_symmetric(&self) -> bool {
        self.reflect() == *self
    }

    /// Grid points visited, starting at `(0, n)`.
    pub fn points(&self) -> Vec<(usize, usize)> {
        let (mut x, mut y) = (0, self.n());
        let mut pts = Vec::with_capacity(self.steps.len() + 1);
        pts.push((x, y));
        for s in &self.steps {
            match s {
                Step::East => x += 1,
                Step::South => y -= 1,
            }
            pts.push((x, y));
        }
        pts
    }

    pub fn height_function(&self) -> HeightFunction {
        let n = self.n();
        let mut values = Vec::with_capacity(n + 1);
        values.push(n);
        let mut y = n;
        for s in &self.steps {
            match s {
                Step::East => values.push(y),
                Step::South => y -= 1,
            }
        }
        HeightFunction { values }
    }

    /// Points where an East step is immediately followed by a South step.
    pub fn east_south_turns(&self) -> Vec<(usize, usize)> {
        let pts = self.points();
        self.steps
            .windows(2)
            .enumerate()
            .filter(|(_, p)| p[0] == Step::East && p[1] == Step::South)
            .map(|(i, _)| pts[i + 1])
            .collect()
    }

    /// Points of the path lying on the diagonal.
    pub fn diagonal_points(&self) -> Vec<usize> {
        self.points()
            .into_iter()
            .filter(|&(x, y)| x == y)
            .map(|(x, _)| x)
            .collect()
    }

    /// The step taken right after the first visit to the diagonal.
    pub fn step_after_diagonal(&self) -> Option<Step> {
        let pts = self.points();
        let i = pts.iter().position(|&(x, y)| x == y)?;
        self.steps.get(i).copied()
    }

    /// Whether the cell `(x, y)`, both in `1..=n`, lies below the path.
    pub fn is_below(&self, x: usize, y: usize) -> bool {
        y <= self.height_function().value(x)
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::East => "E",
                Step::South => "S",
            })?;
        }
        Ok(())
    }
}

impl FromStr for LatticePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .trim()
            .chars()
            .map(|c| match c {
                'E' | 'e' => Ok(Step::East),
                'S' | 's' => Ok(Step::South),
                other => Err(parse_err!("unexpected step {other:?} in {s:?}")),
            })
            .collect::<Result<Vec<_>>>()?;
        LatticePath::new(steps).map_err(|e| parse_err!("{e}"))
    }
}

string_serde!(LatticePath);

/// An antitone map `f: {0..n} -> {0..n}` with `f(0) = n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct HeightFunction {
    values: Vec<usize>,
}

impl TryFrom<Vec<usize>> for HeightFunction {
    type Error = Error;

    fn try_from(values: Vec<usize>) -> Result<Self> {
        HeightFunction::new(values)
    }
}

impl From<HeightFunction> for Vec<usize> {
    fn from(f: HeightFunction) -> Vec<usize> {
        f.values
    }
}

/// Order-theoretic data attached to a height function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightClass {
    pub self_adjoint: bool,
    pub fixed_point_free: bool,
    /// `max { x : x <= f(x) }`.
    pub center: usize,
    pub fixed_point: Option<usize>,
}

impl HeightFunction {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len().checked_sub(1).ok_or_else(|| precondition!("empty height function"))?;
        if values[0] != n {
            return Err(precondition!("f(0) must be {n}, got {}", values[0]));
        }
        if values.windows(2).any(|p| p[1] > p[0]) {
            return Err(precondition!("{values:?} is not antitone"));
        }
        Ok(HeightFunction { values })
    }

    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn value(&self, x: usize) -> usize {
        self.values[x]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn to_path(&self) -> LatticePath {
        let n = self.n();
        let mut steps = Vec::with_capacity(2 * n);
        for x in 1..=n {
            steps.extend(std::iter::repeat_n(Step::South, self.values[x - 1] - self.values[x]));
            steps.push(Step::East);
        }
        steps.extend(std::iter::repeat_n(Step::South, self.values[n]));
        LatticePath { steps }
    }

    /// `y <= f(x)` iff `x <= f(y)` for all `x, y`.
    pub fn is_self_adjoint(&self) -> bool {
        let n = self.n();
        (0..=n).all(|x| (0..=n).all(|y| (y <= self.values[x]) == (x <= self.values[y])))
    }

    /// The set `N_f = { x : x <= f(x) }`.
    pub fn negatives(&self) -> BTreeSet<usize> {
        (0..=self.n()).filter(|&x| x <= self.values[x]).collect()
    }

    /// The set `P_f = { x : f(x) <= x }`.
    pub fn positives(&self) -> BTreeSet<usize> {
        (0..=self.n()).filter(|&x| self.values[x] <= x).collect()
    }

    pub fn center(&self) -> usize {
        // N_f always holds 0 since f(0) = n
        (0..=self.n()).rev().find(|&x| x <= self.values[x]).unwrap_or(0)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..=self.n()).filter(|&x| self.values[x] == x).collect()
    }

    pub fn classify(&self) -> HeightClass {
        let fixed = self.fixed_points();
        HeightClass {
            self_adjoint: self.is_self_adjoint(),
            fixed_point_free: fixed.is_empty(),
            center: self.center(),
            fixed_point: fixed.first().copied(),
        }
    }
}

/// `(pi^u, lambda_x)`; `lambda_y(x) = -lambda_x(x)` is derived.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathRepresentation {
    pub path: LatticePath,
    pub lambda_x: Permutation,
}

impl PathRepresentation {
    pub fn lambda_y(&self, y: usize) -> i32 {
        -self.lambda_x.apply(y)
    }
}

/// Scans the full notation: positive letters are East steps (labelling the
/// x-axis), negative letters are South steps.
pub fn path_representation(u: &SignedPermutation) -> PathRepresentation {
    let full = u.full_notation();
    let steps = full
        .iter()
        .map(|&l| if l > 0 { Step::East } else { Step::South })
        .collect();
    let lambda_x = full.iter().copied().filter(|&l| l > 0).collect();
    PathRepresentation {
        path: LatticePath { steps },
        lambda_x: Permutation::from_word_unchecked(lambda_x),
    }
}

/// Inverse of [`path_representation`].
pub fn signed_from_path(path: &LatticePath, w: &Permutation) -> Result<SignedPermutation> {
    let n = path.n();
    if w.len() != n {
        return Err(precondition!("path has size {n} but the labelling has size {}", w.len()));
    }
    if !path.is_diagonal_symmetric() {
        return Err(precondition!("path {path} is not symmetric along the diagonal"));
    }
    let (mut x, mut y) = (0usize, n);
    let mut full = Vec::with_capacity(2 * n);
    for s in &path.steps {
        match s {
            Step::East => {
                x += 1;
                full.push(w.apply(x));
            }
            Step::South => {
                full.push(-w.apply(y));
                y -= 1;
            }
        }
    }
    Ok(SignedPermutation::from_window_unchecked(full.split_off(n)))
}

/// Type B inversions read off the path representation: positive pairs are
/// the inversions of `lambda_x`, negative pairs come from the cells below
/// the path.
pub fn inversions_via_path(u: &SignedPermutation) -> InversionSet {
    let rep = path_representation(u);
    let f = rep.path.height_function();
    let n = f.n();
    let mut set = InversionSet {
        positive: rep.lambda_x.inversion_set().positive,
        negative: BTreeSet::new(),
    };
    for x in 1..=n {
        for y in 1..=f.value(x).min(n) {
            // the pair (lambda_y(y), lambda_x(x)) identified with its mirror
            let (a, b) = (rep.lambda_x.apply(x), rep.lambda_x.apply(y));
            set.negative.insert((-a.min(b), a.max(b)));
        }
    }
    set
}
