//! Exhaustive round-trip audits of the bijections.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::barred::{
    psi, psi_inverse, theta, theta_inverse, LooselyBarredPermutation, SimplyBarredPermutation,
    ThetaTarget,
};
use crate::error::{parse_err, Error, Result};
use crate::pathrep::{path_representation, signed_from_path};
use crate::sgnperm::{des_positive, enumerate_group, group_order, Budget, Kind, Permutation, SignedPermutation};
use crate::threshold::{
    edges_from_signed, is_threshold, same_block_iff_equal_degree, sbp_from_threshold,
    signed_from_tg, tg_pair, threshold_from_sbp, threshold_pairs, Recognition, SimpleGraph,
};

/// The bijection under audit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    /// `psi: SBP_n -> B_n` and its inverse, both directions.
    Psi,
    /// `Theta_{n,k}` and `Theta_n^k`: cardinalities and round trips.
    Theta,
    /// `chi` on non-smooth elements, with `des_+(v) = des_B(u) - 1`.
    Chi,
    /// `u -> (lambda_x, E^u)` from `D_n` onto `TG_n`, and mate invariance on `B_n`.
    Tgdo,
    /// Threshold graphs and normal barred permutations with first block >= 2.
    Bijtgsbps,
    /// `signed_from_path(path_representation(u)) = u` on `B_n`.
    Pathrep,
}

impl Check {
    pub const ALL: [Check; 6] =
        [Check::Psi, Check::Theta, Check::Chi, Check::Tgdo, Check::Bijtgsbps, Check::Pathrep];

    pub fn name(self) -> &'static str {
        match self {
            Check::Psi => "psi",
            Check::Theta => "theta",
            Check::Chi => "chi",
            Check::Tgdo => "tgdo",
            Check::Bijtgsbps => "bijtgsbps",
            Check::Pathrep => "pathrep",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| parse_err!("unknown bijection {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub check: Check,
    pub n: usize,
    /// Number of individual assertions made.
    pub checked: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

struct Tally {
    checked: u64,
    failures: u64,
    first_failure: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checked: 0, failures: 0, first_failure: None }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            self.first_failure.get_or_insert_with(what);
        }
    }

    fn finish(self, check: Check, n: usize) -> AuditReport {
        AuditReport {
            check,
            n,
            checked: self.checked,
            failures: self.failures,
            first_failure: self.first_failure,
        }
    }
}

fn signed_elements(n: usize, kind: Kind, budget: &Budget) -> Result<Vec<SignedPermutation>> {
    Ok(enumerate_group(n, kind, budget)?.map(SignedPermutation::from_window_unchecked).collect())
}

fn permutations(n: usize, budget: &Budget) -> Result<Vec<Permutation>> {
    Ok(enumerate_group(n, Kind::A, budget)?.map(Permutation::from_word_unchecked).collect())
}

pub fn run_audit(check: Check, n: usize, budget: &Budget) -> Result<AuditReport> {
    if n == 0 {
        return Err(Error::Domain("audits need n >= 1".into()));
    }
    if matches!(check, Check::Chi | Check::Tgdo | Check::Bijtgsbps) && n < 2 {
        return Err(Error::Domain(format!("the {check} audit needs n >= 2")));
    }
    if matches!(check, Check::Tgdo | Check::Bijtgsbps) && n > 6 {
        return Err(Error::Resource(format!("the {check} audit is limited to n <= 6")));
    }
    let mut t = Tally::new();
    match check {
        Check::Psi => audit_psi(n, budget, &mut t)?,
        Check::Theta => audit_theta(n, budget, &mut t)?,
        Check::Chi => audit_chi(n, budget, &mut t)?,
        Check::Tgdo => audit_tgdo(n, budget, &mut t)?,
        Check::Bijtgsbps => audit_bijtgsbps(n, budget, &mut t)?,
        Check::Pathrep => {
            for u in signed_elements(n, Kind::B, budget)? {
                let rep = path_representation(&u);
                t.expect(rep.path.is_diagonal_symmetric(), || format!("path of {u} is not symmetric"));
                let back = signed_from_path(&rep.path, &rep.lambda_x);
                t.expect(back.as_ref().ok() == Some(&u), || format!("{u} -> {back:?}"));
            }
        }
    }
    Ok(t.finish(check, n))
}

fn audit_psi(n: usize, budget: &Budget, t: &mut Tally) -> Result<()> {
    let mut images = HashSet::new();
    for w in permutations(n, budget)? {
        for s in SimplyBarredPermutation::all_with(&w) {
            let u = psi(&s);
            t.expect(psi_inverse(&u) == s, || format!("psi_inverse(psi({s})) != {s}"));
            t.expect(u.des(Kind::B).ok() == Some(s.descent_index()), || format!("des_B(psi({s}))"));
            t.expect(des_positive(u.window()) == s.positive_descent_index(), || format!("des_+(psi({s}))"));
            images.insert(u);
        }
    }
    t.expect(images.len() as u128 == group_order(n, Kind::B), || {
        format!("psi hits {} elements of B_{n}", images.len())
    });
    for u in signed_elements(n, Kind::B, budget)? {
        t.expect(psi(&psi_inverse(&u)) == u, || format!("psi(psi_inverse({u})) != {u}"));
    }
    Ok(())
}

fn audit_theta(n: usize, budget: &Budget, t: &mut Tally) -> Result<()> {
    // per k: (#weight 2k, #weight 2k+1, #SBP_{n,k}, #SBP_n^k)
    let mut counts: BTreeMap<usize, [u64; 4]> = BTreeMap::new();
    for w in permutations(n, budget)? {
        for l in LooselyBarredPermutation::all_with(&w) {
            let weight = l.weight();
            let k = weight / 2;
            let s = theta(&l);
            let target = if weight % 2 == 0 {
                counts.entry(k).or_default()[0] += 1;
                t.expect(s.in_sbp_nk(k), || format!("theta({l:?}) = {s} not in SBP_(n,{k})"));
                ThetaTarget::EvenSum(k)
            } else {
                counts.entry(k).or_default()[1] += 1;
                t.expect(s.in_sbp_upper_k(k), || format!("theta({l:?}) = {s} not in SBP_n^{k}"));
                ThetaTarget::OddSum(k)
            };
            let back = theta_inverse(&s, target);
            t.expect(back.as_ref().ok() == Some(&l), || format!("theta_inverse({s}) != {l:?}"));
        }
        for s in SimplyBarredPermutation::all_with(&w) {
            let (k, j) = (s.descent_index(), s.positive_descent_index());
            counts.entry(k).or_default()[2] += 1;
            counts.entry(j).or_default()[3] += 1;
            for target in [ThetaTarget::EvenSum(k), ThetaTarget::OddSum(j)] {
                let l = theta_inverse(&s, target)?;
                let parity = match target {
                    ThetaTarget::EvenSum(k) => l.weight() == 2 * k,
                    ThetaTarget::OddSum(k) => l.weight() == 2 * k + 1,
                };
                t.expect(parity && theta(&l) == s, || format!("theta(theta_inverse({s}, {target:?}))"));
            }
        }
    }
    for (k, [even, odd, nk, upper]) in counts {
        t.expect(even == nk, || format!("k={k}: {even} loosely barred of weight 2k, |SBP_(n,k)| = {nk}"));
        t.expect(odd == upper, || format!("k={k}: {odd} loosely barred of weight 2k+1, |SBP_n^k| = {upper}"));
    }
    Ok(())
}

fn audit_chi(n: usize, budget: &Budget, t: &mut Tally) -> Result<()> {
    let mut images = HashSet::new();
    for u in signed_elements(n, Kind::B, budget)? {
        if u.is_smooth()? {
            t.expect(u.mate().is_smooth().ok() == Some(false), || format!("{u} and its mate are smooth"));
            continue;
        }
        let (x, v) = u.chi()?;
        t.expect(SignedPermutation::chi_inverse(x, &v).ok() == Some(u.clone()), || {
            format!("chi_inverse(chi({u})) != {u}")
        });
        t.expect(des_positive(v.window()) + 1 == u.des(Kind::B)?, || {
            format!("descent shift fails at {u}")
        });
        images.insert((x, v));
    }
    t.expect(images.len() as u128 == n as u128 * group_order(n - 1, Kind::B), || {
        format!("chi hits {} pairs", images.len())
    });
    Ok(())
}

fn audit_tgdo(n: usize, budget: &Budget, t: &mut Tally) -> Result<()> {
    let targets: HashSet<_> = threshold_pairs(n).into_iter().collect();
    let mut images = HashSet::new();
    for u in signed_elements(n, Kind::D, budget)? {
        let pair = tg_pair(&u);
        t.expect(targets.contains(&pair), || format!("tg_pair({u}) is not in TG_{n}"));
        let back = signed_from_tg(&pair);
        t.expect(back.as_ref().ok() == Some(&u), || format!("signed_from_tg(tg_pair({u})) = {back:?}"));
        images.insert(pair);
    }
    t.expect(images.len() == targets.len(), || {
        format!("{} images, |TG_{n}| = {}", images.len(), targets.len())
    });
    for u in signed_elements(n, Kind::B, budget)? {
        let m = u.mate();
        t.expect(edges_from_signed(&u) == edges_from_signed(&m), || format!("E^u != E^mate(u) at {u}"));
        t.expect(
            path_representation(&u).lambda_x == path_representation(&m).lambda_x,
            || format!("lambda_x differs between {u} and its mate"),
        );
    }
    Ok(())
}

fn audit_bijtgsbps(n: usize, budget: &Budget, t: &mut Tally) -> Result<()> {
    let mut images = HashSet::new();
    let mut graphs = 0usize;
    for g in SimpleGraph::all(n).filter(|g| is_threshold(g, Recognition::Vicinal)) {
        graphs += 1;
        let s = sbp_from_threshold(&g)?;
        t.expect(s.is_normal() && s.blocks()[0].len() >= 2, || format!("{g} -> {s}"));
        t.expect(same_block_iff_equal_degree(&s, &g), || format!("blocks of {s} vs degrees of {g}"));
        let back = threshold_from_sbp(&s);
        t.expect(back.as_ref().ok() == Some(&g), || format!("{g} -> {s} -> {back:?}"));
        images.insert(s);
    }
    let mut targets = 0usize;
    for w in permutations(n, budget)? {
        for s in SimplyBarredPermutation::all_with(&w) {
            if s.is_normal() && s.blocks()[0].len() >= 2 {
                targets += 1;
                t.expect(images.contains(&s), || format!("{s} is not the image of a graph"));
            }
        }
    }
    t.expect(targets == graphs, || format!("{graphs} graphs, {targets} barred permutations"));
    Ok(())
}
