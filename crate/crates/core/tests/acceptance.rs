//! Acceptance suite: one line per criterion, exit status 1 if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use coxpath::audit::{run_audit, Check};
use coxpath::eulerian::{
    alternating_sum, closed_b_n1, closed_d_n1, eulerian_polynomial, threshold_by_degree_classes,
    threshold_counts, verify_identity, Identity, Method,
};
use coxpath::posets::{tg_poset, weak_poset, order_isomorphism_check};
use coxpath::threshold::{
    count_threshold_graphs, is_threshold, tg_pair, unlabeled_threshold_count, Recognition,
    SimpleGraph,
};
use coxpath::{Budget, Kind};
use num_bigint::BigInt;

type Outcome = Result<String, String>;

/// Name, time limit in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn identity_range(id: Identity, ns: std::ops::RangeInclusive<usize>) -> Outcome {
    let budget = Budget::default();
    let mut coefficients = 0;
    for n in ns.clone() {
        let r = verify_identity(id, n, &budget).map_err(|e| e.to_string())?;
        if let Some(row) = r.first_failure() {
            return Err(format!("n={n} k={}: lhs {} rhs {} cross {:?}", row.k, row.lhs, row.rhs, row.cross_check));
        }
        coefficients += r.rows.len();
    }
    Ok(format!("n={}..={}, {coefficients} coefficients equal", ns.start(), ns.end()))
}

fn c1() -> Outcome {
    let budget = Budget::default();
    let mut checked = 0;
    for n in 1..=9 {
        let brute = eulerian_polynomial(n, Kind::A, Method::Bruteforce, &budget).map_err(|e| e.to_string())?;
        for k in 0..n {
            let f = alternating_sum(n as u64, k as u64);
            ensure(brute.get(k) == f, || format!("n={n} k={k}: {} vs {f}", brute.get(k)))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} values, n<=9"))
}

fn c6() -> Outcome {
    let budget = Budget::default();
    for n in 2..=8 {
        let b = eulerian_polynomial(n, Kind::B, Method::Bruteforce, &budget).map_err(|e| e.to_string())?;
        ensure(b.get(1) == closed_b_n1(n), || format!("B({n},1) = {}", b.get(1)))?;
        let d = eulerian_polynomial(n, Kind::D, Method::Bruteforce, &budget).map_err(|e| e.to_string())?;
        ensure(d.get(1) == closed_d_n1(n), || format!("D({n},1) = {}", d.get(1)))?;
    }
    Ok("B(n,1) and D(n,1) for n=2..8".into())
}

fn audits(list: &[(Check, std::ops::RangeInclusive<usize>)]) -> Outcome {
    let budget = Budget::default();
    let mut total = 0;
    for (check, ns) in list {
        for n in ns.clone() {
            let r = run_audit(*check, n, &budget).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("{check} n={n}: {:?}", r.first_failure))?;
            total += r.checked;
        }
    }
    Ok(format!("{total} assertions"))
}

fn c7() -> Outcome {
    audits(&[
        (Check::Psi, 1..=6),
        (Check::Theta, 1..=5),
        (Check::Chi, 2..=6),
        (Check::Pathrep, 1..=6),
    ])
}

fn c8() -> Outcome {
    let expected = [1u64, 2, 8, 46, 332, 2874];
    for n in 1..=6 {
        for g in SimpleGraph::all(n) {
            let v = is_threshold(&g, Recognition::Vicinal);
            ensure(v == is_threshold(&g, Recognition::Forbidden), || format!("recognisers disagree on {g}"))?;
        }
        let (total, by) = count_threshold_graphs(n, Recognition::Forbidden);
        ensure(total == expected[n - 1], || format!("T_{n} = {total}"))?;
        let formulas = threshold_counts(n).map_err(|e| e.to_string())?;
        ensure(formulas.total == BigInt::from(total), || format!("sum tau_({n},k) = {}", formulas.total))?;
        ensure(formulas.by_degree_classes.sum() == BigInt::from(total), || format!("sum T_({n},i) differs"))?;
        for (i, &count) in by.iter().enumerate() {
            let f = threshold_by_degree_classes(n, i + 1);
            ensure(f == BigInt::from(count), || format!("T_({n},{}) = {f}, brute {count}", i + 1))?;
        }
        let unlabeled = unlabeled_threshold_count(n, true);
        ensure(unlabeled == 1 << (n - 1), || format!("{unlabeled} unlabeled classes at n={n}"))?;
        ensure(formulas.unlabeled == BigInt::from(unlabeled), || "unlabeled formula".into())?;
    }
    Ok("n<=6: recognisers agree, T_n = 1,2,8,46,332,2874, unlabeled 2^(n-1)".into())
}

fn c9() -> Outcome {
    let summary = audits(&[(Check::Tgdo, 2..=5)])?;
    let five = coxpath::threshold::threshold_pairs(5).len();
    ensure(five == 1920, || format!("|TG_5| = {five}"))?;
    Ok(format!("{summary}, |TG_5| = 1920"))
}

fn c10() -> Outcome {
    let budget = Budget::default();
    for n in 2..=4 {
        let d = weak_poset(n, Kind::D, &budget).map_err(|e| e.to_string())?;
        let tg = tg_poset(n).map_err(|e| e.to_string())?;
        ensure(d.lattice_check().is_lattice, || format!("weak D_{n} is not a lattice"))?;
        ensure(tg.lattice_check().is_lattice, || format!("TG_{n} is not a lattice"))?;
        let iso = order_isomorphism_check(&d, &tg, tg_pair).map_err(|e| e.to_string())?;
        ensure(iso, || format!("tg_pair is not an order isomorphism at n={n}"))?;
        let jd = d.join_irreducible_count().map_err(|e| e.to_string())?;
        let jt = tg.join_irreducible_count().map_err(|e| e.to_string())?;
        ensure(BigInt::from(jd) == closed_d_n1(n) && jt == jd, || format!("n={n}: {jd}, {jt} join-irreducibles"))?;
        let b = weak_poset(n, Kind::B, &budget).map_err(|e| e.to_string())?;
        let jb = b.join_irreducible_count().map_err(|e| e.to_string())?;
        ensure(BigInt::from(jb) == closed_b_n1(n), || format!("weak B_{n}: {jb}"))?;
    }
    for n in 2..=5 {
        let a = weak_poset(n, Kind::A, &budget).map_err(|e| e.to_string())?;
        let ja = a.join_irreducible_count().map_err(|e| e.to_string())?;
        ensure(ja == (1 << n) - n - 1, || format!("weak A_{n}: {ja}"))?;
    }
    Ok("n<=4 (A: n<=5): lattices, isomorphism, join-irreducibles = Eulerian numbers at k=1".into())
}

fn c11() -> Outcome {
    audits(&[(Check::Bijtgsbps, 2..=5)])
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("type A brute force = alternating sum", 60, c1),
        ("even-k type B identity", 180, || identity_range(Identity::EulBEven, 1..=8)),
        ("odd-k type B identity", 300, || identity_range(Identity::EulBOdd, 1..=8)),
        ("polynomial identity", 1, || identity_range(Identity::Main, 1..=10)),
        ("Stembridge identity", 300, || identity_range(Identity::Stembridge, 2..=7)),
        ("closed forms at k=1", 300, c6),
        ("bijection audits", 300, c7),
        ("threshold graph counts", 120, c8),
        ("D_n -> TG_n bijection", 300, c9),
        ("TG_n is a lattice isomorphic to weak D_n", 120, c10),
        ("threshold graphs <-> barred permutations", 300, c11),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(*limit) => {
                Err(format!("{detail}; took {elapsed:.1?}, limit {limit}s"))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
