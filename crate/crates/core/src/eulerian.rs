//! Eulerian numbers of types A, B and D, and the identities relating them.
//!
//! Every count is exact (`BigInt`). Brute-force rows scan the group once,
//! in parallel; formula rows never enumerate a group, so comparing the two
//! is a genuine cross-check.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{parse_err, precondition, Error, Result};
use crate::sgnperm::{des_a, des_b, des_d, des_positive, par_fold_group, Budget, Kind};

/// How an Eulerian number is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Bruteforce,
    Formula,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bruteforce" | "brute" => Ok(Method::Bruteforce),
            "formula" => Ok(Method::Formula),
            _ => Err(parse_err!("unknown method {s:?}")),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Bruteforce => "bruteforce",
            Method::Formula => "formula",
        })
    }
}

/// Polynomial coefficients, index = power of `t`.
///
/// Serialized as a list of decimal strings so that no value is rounded by
/// JSON readers.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoefficientVector(pub Vec<BigInt>);

impl CoefficientVector {
    pub fn from_u64s(values: &[u64]) -> Self {
        CoefficientVector(values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.0
    }

    pub fn get(&self, k: usize) -> BigInt {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub fn sum(&self) -> BigInt {
        self.0.iter().sum()
    }

    /// Drops trailing zeros.
    pub fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn mul(&self, other: &CoefficientVector) -> CoefficientVector {
        if self.0.is_empty() || other.0.is_empty() {
            return CoefficientVector::default();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        CoefficientVector(out)
    }

    pub fn add(&self, other: &CoefficientVector) -> CoefficientVector {
        let len = self.0.len().max(other.0.len());
        CoefficientVector((0..len).map(|k| self.get(k) + other.get(k)).collect())
    }

    pub fn scale(&self, c: &BigInt) -> CoefficientVector {
        CoefficientVector(self.0.iter().map(|a| a * c).collect())
    }

    /// `p(t) -> t^s p(t)`.
    pub fn shift(&self, s: usize) -> CoefficientVector {
        let mut out = vec![BigInt::zero(); s];
        out.extend(self.0.iter().cloned());
        CoefficientVector(out)
    }

    /// `p(t) -> p(t^2)`.
    pub fn square_argument(&self) -> CoefficientVector {
        let mut out = Vec::with_capacity(2 * self.0.len());
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                out.push(BigInt::zero());
            }
            out.push(a.clone());
        }
        CoefficientVector(out)
    }

    /// `(1 + t)^m`.
    pub fn one_plus_t_pow(m: usize) -> CoefficientVector {
        CoefficientVector((0..=m).map(|j| binomial(m as u64, j as u64)).collect())
    }
}

impl fmt::Display for CoefficientVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(BigInt::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for CoefficientVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(BigInt::to_string))
    }
}

impl<'de> Deserialize<'de> for CoefficientVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<_, _>>()
            .map(CoefficientVector)
    }
}

pub(crate) mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `C(n, k)` for a possibly negative `k`.
fn binomial_i(n: u64, k: i64) -> BigInt {
    u64::try_from(k).map_or_else(|_| BigInt::zero(), |k| binomial(n, k))
}

/// Stirling numbers of the second kind, by `S(n,i) = i S(n-1,i) + S(n-1,i-1)`.
pub fn stirling2(n: u64, i: u64) -> BigInt {
    if i > n {
        return BigInt::zero();
    }
    let mut row = vec![BigInt::one()];
    for m in 1..=n as usize {
        let mut next = vec![BigInt::zero(); m + 1];
        for j in 1..=m {
            let stay = if j < m { &row[j] * j } else { BigInt::zero() };
            next[j] = stay + &row[j - 1];
        }
        row = next;
    }
    row[i as usize].clone()
}

/// `sum_{j=0}^{k} (-1)^j C(n+1, j) (k+1-j)^n`.
pub fn alternating_sum(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::zero();
    for j in 0..=k {
        let term = binomial(n + 1, j) * BigInt::from(k + 1 - j).pow(n as u32);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn check_range(n: usize, k: usize, kind: Kind) -> Result<()> {
    let top = match kind {
        Kind::A => n.saturating_sub(1),
        Kind::B | Kind::D => n,
    };
    if n == 0 || (kind == Kind::D && n < 2) {
        return Err(Error::Domain(format!("Eulerian numbers of type {kind} need n >= {}", if kind == Kind::D { 2 } else { 1 })));
    }
    if k > top {
        return Err(precondition!("k = {k} out of range 0..={top} for type {kind}, n = {n}"));
    }
    Ok(())
}

/// Distribution of `stat` over a group, indexed `0..=n`.
pub fn statistic_distribution(
    n: usize,
    kind: Kind,
    stat: fn(&[i32]) -> usize,
    budget: &Budget,
) -> Result<Vec<u64>> {
    par_fold_group(
        n,
        kind,
        budget,
        || vec![0u64; n + 1],
        |acc, w| acc[stat(w)] += 1,
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    )
}

fn brute_row(n: usize, kind: Kind, budget: &Budget) -> Result<CoefficientVector> {
    let stat: fn(&[i32]) -> usize = match kind {
        Kind::A => des_a,
        Kind::B => des_b,
        Kind::D => des_d,
    };
    let mut counts = statistic_distribution(n, kind, stat, budget)?;
    if kind == Kind::A {
        counts.truncate(n);
    }
    Ok(CoefficientVector::from_u64s(&counts))
}

fn formula_row_a(n: usize) -> CoefficientVector {
    CoefficientVector((0..n as u64).map(|k| alternating_sum(n as u64, k)).collect())
}

/// `sum_i A(n,i) C(n+1, 2k-i)` for `k = 0..=n`.
fn formula_row_b(n: usize) -> CoefficientVector {
    let a = formula_row_a(n);
    CoefficientVector(
        (0..=n as i64)
            .map(|k| {
                (0..=2 * k)
                    .map(|i| a.get(i as usize) * binomial_i(n as u64 + 1, 2 * k - i))
                    .sum()
            })
            .collect(),
    )
}

/// `B(n,k) - n 2^{n-1} A(n-1,k-1)`.
fn formula_row_d(n: usize) -> CoefficientVector {
    let b = formula_row_b(n);
    let a = formula_row_a(n - 1);
    let c = BigInt::from(n) << (n - 1);
    CoefficientVector(
        (0..=n)
            .map(|k| {
                let sub = if k == 0 { BigInt::zero() } else { a.get(k - 1) };
                b.get(k) - &c * sub
            })
            .collect(),
    )
}

/// Type A row from `A(n,k) = (k+1) A(n-1,k) + (n-k) A(n-1,k-1)`.
pub fn recurrence_row_a(n: usize) -> CoefficientVector {
    let mut row = vec![BigInt::one()];
    for m in 2..=n {
        row = (0..m)
            .map(|k| {
                let stay = row.get(k).map_or_else(BigInt::zero, |v| v * (k + 1));
                let rise = if k > 0 { &row[k - 1] * (m - k) } else { BigInt::zero() };
                stay + rise
            })
            .collect();
    }
    CoefficientVector(row)
}

/// Type B row from `B(n,k) = (2k+1) B(n-1,k) + (2n-2k+1) B(n-1,k-1)`.
pub fn recurrence_row_b(n: usize) -> CoefficientVector {
    let mut row = vec![BigInt::one()];
    for m in 1..=n {
        row = (0..=m)
            .map(|k| {
                let stay = row.get(k).map_or_else(BigInt::zero, |v| v * (2 * k + 1));
                let rise = if k > 0 { &row[k - 1] * (2 * m - 2 * k + 1) } else { BigInt::zero() };
                stay + rise
            })
            .collect();
    }
    CoefficientVector(row)
}

/// The whole row `k = 0..` of Eulerian numbers (the coefficients of
/// `S_n`, `B_n` or `D_n`).
pub fn eulerian_polynomial(
    n: usize,
    kind: Kind,
    method: Method,
    budget: &Budget,
) -> Result<CoefficientVector> {
    check_range(n, 0, kind)?;
    match method {
        Method::Bruteforce => brute_row(n, kind, budget),
        Method::Formula => Ok(match kind {
            Kind::A => formula_row_a(n),
            Kind::B => formula_row_b(n),
            Kind::D => formula_row_d(n),
        }),
    }
}

pub fn eulerian(n: usize, k: usize, kind: Kind, method: Method, budget: &Budget) -> Result<BigInt> {
    check_range(n, k, kind)?;
    if method == Method::Formula && kind == Kind::A {
        return Ok(alternating_sum(n as u64, k as u64));
    }
    Ok(eulerian_polynomial(n, kind, method, budget)?.get(k))
}

/// The checkable identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Identity {
    #[serde(rename = "eulBeven")]
    EulBEven,
    #[serde(rename = "eulBodd")]
    EulBOdd,
    #[serde(rename = "main")]
    Main,
    #[serde(rename = "stembridge")]
    Stembridge,
    #[serde(rename = "alternating")]
    Alternating,
    #[serde(rename = "B_n1")]
    BN1,
    #[serde(rename = "D_n1")]
    DN1,
}

impl Identity {
    pub const ALL: [Identity; 7] = [
        Identity::EulBEven,
        Identity::EulBOdd,
        Identity::Main,
        Identity::Stembridge,
        Identity::Alternating,
        Identity::BN1,
        Identity::DN1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::EulBEven => "eulBeven",
            Identity::EulBOdd => "eulBodd",
            Identity::Main => "main",
            Identity::Stembridge => "stembridge",
            Identity::Alternating => "alternating",
            Identity::BN1 => "B_n1",
            Identity::DN1 => "D_n1",
        }
    }

    /// Smallest `n` the identity is stated for.
    pub fn min_n(self) -> usize {
        match self {
            Identity::Stembridge | Identity::DN1 | Identity::BN1 => 2,
            _ => 1,
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Identity::EulBEven => "B(n,k) = sum_i A(n,i) C(n+1,2k-i)",
            Identity::EulBOdd => "2^n A(n,k) = sum_i A(n,i) C(n+1,2k+1-i)",
            Identity::Main => "(1+t)^(n+1) S_n(t) = B_n(t^2) + 2^n t S_n(t^2)",
            Identity::Stembridge => "D(n,k) = B(n,k) - n 2^(n-1) A(n-1,k-1)",
            Identity::Alternating => "A(n,k) = sum_j (-1)^j C(n+1,j) (k+1-j)^n",
            Identity::BN1 => "B(n,1) = 3^n - n - 1",
            Identity::DN1 => "D(n,1) = 3^n - n - 1 - n 2^(n-1)",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| parse_err!("unknown identity {s:?}"))
    }
}

/// One coefficient of an identity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityRow {
    pub k: usize,
    #[serde(with = "bigint_string")]
    pub lhs: BigInt,
    #[serde(with = "bigint_string")]
    pub rhs: BigInt,
    /// A third, independently computed value that must equal both sides.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_bigint_string")]
    pub cross_check: Option<BigInt>,
    pub holds: bool,
}

mod opt_bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_some(&v.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}

impl IdentityRow {
    fn new(k: usize, lhs: BigInt, rhs: BigInt, cross_check: Option<BigInt>) -> Self {
        let holds = lhs == rhs && cross_check.as_ref().is_none_or(|c| *c == lhs);
        IdentityRow { k, lhs, rhs, cross_check, holds }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: Identity,
    pub n: usize,
    pub holds: bool,
    pub rows: Vec<IdentityRow>,
}

impl IdentityReport {
    /// First coefficient where the sides differ.
    pub fn first_failure(&self) -> Option<&IdentityRow> {
        self.rows.iter().find(|r| !r.holds)
    }
}

/// Checks `identity` at `n`, coefficient by coefficient. The left side is
/// counted by enumeration (except for `main`, which is polynomial
/// arithmetic on two independent recurrences), the right side by formula.
pub fn verify_identity(identity: Identity, n: usize, budget: &Budget) -> Result<IdentityReport> {
    if n < identity.min_n() {
        return Err(Error::Domain(format!("{identity} is stated for n >= {}", identity.min_n())));
    }
    let nn = n as u64;
    let two_n = BigInt::one() << n;
    let rows: Vec<IdentityRow> = match identity {
        Identity::Alternating => {
            let brute = brute_row(n, Kind::A, budget)?;
            (0..n).map(|k| IdentityRow::new(k, brute.get(k), alternating_sum(nn, k as u64), None)).collect()
        }
        Identity::EulBEven => {
            let brute = brute_row(n, Kind::B, budget)?;
            let rhs = formula_row_b(n);
            (0..=n).map(|k| IdentityRow::new(k, brute.get(k), rhs.get(k), None)).collect()
        }
        Identity::EulBOdd => {
            let positive = statistic_distribution(n, Kind::B, des_positive, budget)?;
            let a = formula_row_a(n);
            let brute_a = brute_row(n, Kind::A, budget)?;
            (0..n as i64)
                .map(|k| {
                    let rhs = (0..=2 * k + 1)
                        .map(|i| a.get(i as usize) * binomial_i(nn + 1, 2 * k + 1 - i))
                        .sum();
                    let k = k as usize;
                    IdentityRow::new(k, &two_n * brute_a.get(k), rhs, Some(BigInt::from(positive[k])))
                })
                .collect()
        }
        Identity::Main => {
            let lhs = CoefficientVector::one_plus_t_pow(n + 1).mul(&formula_row_a(n));
            let s = recurrence_row_a(n);
            let rhs = recurrence_row_b(n)
                .square_argument()
                .add(&s.square_argument().shift(1).scale(&two_n));
            (0..=2 * n).map(|j| IdentityRow::new(j, lhs.get(j), rhs.get(j), None)).collect()
        }
        Identity::Stembridge => {
            let d = brute_row(n, Kind::D, budget)?;
            let b = brute_row(n, Kind::B, budget)?;
            let a = brute_row(n - 1, Kind::A, budget)?;
            let c = BigInt::from(n) * (BigInt::one() << (n - 1));
            (0..=n)
                .map(|k| {
                    let sub = if k == 0 { BigInt::zero() } else { a.get(k - 1) };
                    IdentityRow::new(k, d.get(k), b.get(k) - &c * sub, None)
                })
                .collect()
        }
        Identity::BN1 => {
            let b = brute_row(n, Kind::B, budget)?;
            vec![IdentityRow::new(1, b.get(1), closed_b_n1(n), None)]
        }
        Identity::DN1 => {
            let d = brute_row(n, Kind::D, budget)?;
            vec![IdentityRow::new(1, d.get(1), closed_d_n1(n), None)]
        }
    };
    Ok(IdentityReport { identity, n, holds: rows.iter().all(|r| r.holds), rows })
}

/// `3^n - n - 1`.
pub fn closed_b_n1(n: usize) -> BigInt {
    BigInt::from(3).pow(n as u32) - n - 1
}

/// `3^n - n - 1 - n 2^{n-1}`.
pub fn closed_d_n1(n: usize) -> BigInt {
    closed_b_n1(n) - (BigInt::from(n) << n.saturating_sub(1))
}

/// Formula values counting threshold graphs on `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdCounts {
    pub n: usize,
    /// `T_n`.
    #[serde(with = "bigint_string")]
    pub total: BigInt,
    /// `T_{n,i}` for `i = 1..=n`: graphs with `i` distinct degrees.
    pub by_degree_classes: CoefficientVector,
    /// `tau_{n,k}` for `k = 0..n`.
    pub tau: CoefficientVector,
    #[serde(with = "bigint_string")]
    pub unlabeled: BigInt,
}

/// `T_{n,i} = 2 (i! S(n,i) - n (i-1)! S(n-1,i-1))`; `T_{1,1} = 1`.
pub fn threshold_by_degree_classes(n: usize, i: usize) -> BigInt {
    if n == 1 {
        // the formula counts each graph once per complement; for n = 1 the
        // single graph is its own complement
        return BigInt::from(u8::from(i == 1));
    }
    if i == 0 {
        return BigInt::zero();
    }
    let (n, i) = (n as u64, i as u64);
    let a = factorial(i) * stirling2(n, i);
    let b = BigInt::from(n) * factorial(i - 1) * stirling2(n - 1, i - 1);
    (a - b) * 2
}

/// `P(n,k) = (k+1) A(n-1,k)`, with `A(0,0) = 1`.
pub fn p_nk(n: usize, k: usize) -> BigInt {
    let a = match n {
        0 => BigInt::zero(),
        1 => BigInt::from(u8::from(k == 0)),
        _ if k + 1 >= n => BigInt::zero(),
        _ => alternating_sum(n as u64 - 1, k as u64),
    };
    a * (k + 1)
}

/// `tau_{n,k} = P(n,k) 2^{n-1-k}`.
pub fn tau(n: usize, k: usize) -> BigInt {
    if k >= n {
        return BigInt::zero();
    }
    p_nk(n, k) << (n - 1 - k)
}

/// `tau_{n,k}` in the form `2 P(n,k) 2^{n-2-k}`; agrees with [`tau`] for
/// `k <= n - 2`, and the exponent `-1` at `k = n - 1` halves exactly.
pub fn tau_doubled_form(n: usize, k: usize) -> BigInt {
    if k >= n {
        return BigInt::zero();
    }
    let twice = p_nk(n, k) * 2;
    match (n - 1).checked_sub(k + 1) {
        Some(e) => twice << e,
        None => twice >> 1,
    }
}

pub fn threshold_counts(n: usize) -> Result<ThresholdCounts> {
    if n == 0 {
        return Err(Error::Domain("threshold counts need n >= 1".into()));
    }
    let by = CoefficientVector((1..=n).map(|i| threshold_by_degree_classes(n, i)).collect());
    let tau = CoefficientVector((0..n).map(|k| tau(n, k)).collect());
    let total = tau.sum();
    Ok(ThresholdCounts { n, total, by_degree_classes: by, tau, unlabeled: BigInt::one() << (n - 1) })
}

impl ThresholdCounts {
    /// `sum_i T_{n,i} = sum_k tau_{n,k}`.
    pub fn is_consistent(&self) -> bool {
        self.by_degree_classes.sum() == self.total && !self.total.is_negative()
    }
}
