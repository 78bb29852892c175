//! `coxpath`: Eulerian tables, identity checks, bijection audits, threshold
//! graph counts, path rendering and weak-order posets.

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use coxpath::audit::{run_audit, Check};
use coxpath::eulerian::{eulerian_polynomial, threshold_counts, verify_identity, Identity, Method};
use coxpath::pathrep::{path_representation, render_ascii, render_svg};
use coxpath::posets::{order_isomorphism_check, tg_poset, weak_poset, FinitePoset};
use coxpath::threshold::{
    count_threshold_graphs, is_threshold, sbp_from_threshold, tg_pair, unlabeled_threshold_count,
    Recognition, SimpleGraph,
};
use coxpath::{Budget, Error, Kind, SignedPermutation};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "coxpath", version, about = "Exact combinatorics of signed permutations and threshold graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Worker threads for exhaustive scans (results do not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest group order any scan may enumerate.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    max_elements: u128,
    /// Largest n accepted.
    #[arg(long, global = true, default_value_t = 12)]
    max_n: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Eulerian numbers, one row per n up to N.
    Eulerian {
        #[arg(long, value_parser = parse_kind)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_method, default_value = "formula")]
        method: Method,
    },
    /// Checks an identity coefficient by coefficient; exit 1 if it fails.
    Verify {
        #[arg(long, value_parser = parse_identity)]
        identity: Identity,
        #[arg(long)]
        max_n: usize,
    },
    /// Exhaustive round-trip audit of a bijection; exit 1 if any fails.
    Bijection {
        #[arg(long, value_parser = parse_check)]
        check: Check,
        #[arg(long)]
        n: usize,
    },
    /// Threshold graph counts, and optionally the graphs themselves.
    Threshold {
        #[arg(long)]
        n: usize,
        /// Print the counts (the default when --list is absent).
        #[arg(long)]
        counts: bool,
        /// List every threshold graph with its barred encoding.
        #[arg(long)]
        list: bool,
    },
    /// Draws the path representation of a signed permutation.
    Render {
        #[arg(long, allow_hyphen_values = true)]
        perm: String,
        /// Write an SVG drawing to this file instead of printing ASCII.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Weak orders and the threshold pair order.
    Poset {
        #[arg(long, value_enum, ignore_case = true)]
        kind: PosetKind,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        check: PosetCheck,
        /// Write the Hasse diagram in DOT format to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PosetKind {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    #[value(name = "D")]
    D,
    #[value(name = "TG")]
    Tg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PosetCheck {
    Lattice,
    Iso,
    Covers,
    Joinirr,
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_identity(s: &str) -> Result<Identity, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_check(s: &str) -> Result<Check, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// How a run ended, mapped to the exit status.
enum Failure {
    /// Bad input: exit 2.
    Usage(String),
    /// A check ran and did not hold: exit 1.
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Run = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let budget = Budget { max_n: cli.max_n, max_elements: cli.max_elements };
    let out = io::stdout();
    let mut out = out.lock();
    let result = match &cli.command {
        Command::Eulerian { kind, n, method } => eulerian(&mut out, cli.format, *kind, *n, *method, &budget),
        Command::Verify { identity, max_n } => verify(&mut out, cli.format, *identity, *max_n, &budget),
        Command::Bijection { check, n } => bijection(&mut out, cli.format, *check, *n, &budget),
        Command::Threshold { n, counts, list } => threshold(&mut out, cli.format, *n, *counts || !*list, *list),
        Command::Render { perm, svg } => render(&mut out, cli.format, perm, svg.as_ref()),
        Command::Poset { kind, n, check, dot } => poset(&mut out, cli.format, *kind, *n, *check, dot.as_ref(), &budget),
    };
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn write_json<W: Write, T: Serialize + ?Sized>(out: &mut W, value: &T) -> Run {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn write_csv<W: Write, T: Serialize>(out: &mut W, rows: impl IntoIterator<Item = T>) -> Run {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct EulerianRow {
    n: usize,
    kind: String,
    method: String,
    coefficients: coxpath::eulerian::CoefficientVector,
}

#[derive(Serialize)]
struct EulerianCsv {
    n: usize,
    k: usize,
    value: String,
}

fn eulerian<W: Write>(out: &mut W, format: Format, kind: Kind, n: usize, method: Method, budget: &Budget) -> Run {
    let first = if kind == Kind::D { 2 } else { 1 };
    if n < first {
        return Err(Failure::Usage(format!("type {kind} needs --n >= {first}")));
    }
    let rows = (first..=n)
        .map(|m| {
            Ok(EulerianRow {
                n: m,
                kind: kind.to_string(),
                method: method.to_string(),
                coefficients: eulerian_polynomial(m, kind, method, budget)?,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    match format {
        Format::Table => {
            for r in &rows {
                writeln!(out, "{:>3}  {}", r.n, r.coefficients)?;
            }
            Ok(())
        }
        Format::Json => write_json(out, &rows),
        Format::Csv => write_csv(
            out,
            rows.iter().flat_map(|r| {
                r.coefficients.coefficients().iter().enumerate().map(|(k, v)| EulerianCsv {
                    n: r.n,
                    k,
                    value: v.to_string(),
                })
            }),
        ),
    }
}

#[derive(Serialize)]
struct IdentityCsv {
    identity: String,
    n: usize,
    k: usize,
    lhs: String,
    rhs: String,
    holds: bool,
}

fn verify<W: Write>(out: &mut W, format: Format, identity: Identity, max_n: usize, budget: &Budget) -> Run {
    if max_n < identity.min_n() {
        return Err(Failure::Usage(format!("{identity} needs --max-n >= {}", identity.min_n())));
    }
    let reports = (identity.min_n()..=max_n)
        .map(|n| verify_identity(identity, n, budget))
        .collect::<Result<Vec<_>, _>>()?;
    match format {
        Format::Table => {
            writeln!(out, "{identity}: {}", identity.statement())?;
            for r in &reports {
                for row in &r.rows {
                    let mark = if row.holds { "ok" } else { "FAIL" };
                    writeln!(out, "n={:<3} k={:<3} lhs={} rhs={} {mark}", r.n, row.k, row.lhs, row.rhs)?;
                }
            }
        }
        Format::Json => write_json(out, &reports)?,
        Format::Csv => write_csv(
            out,
            reports.iter().flat_map(|r| {
                r.rows.iter().map(|row| IdentityCsv {
                    identity: identity.to_string(),
                    n: r.n,
                    k: row.k,
                    lhs: row.lhs.to_string(),
                    rhs: row.rhs.to_string(),
                    holds: row.holds,
                })
            }),
        )?,
    }
    if reports.iter().all(|r| r.holds) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn bijection<W: Write>(out: &mut W, format: Format, check: Check, n: usize, budget: &Budget) -> Run {
    let r = run_audit(check, n, budget)?;
    match format {
        Format::Table => {
            let status = if r.passed() { "all round trips close" } else { "FAILED" };
            writeln!(out, "{check} n={n}: {} assertions, {} failures: {status}", r.checked, r.failures)?;
            if let Some(f) = &r.first_failure {
                writeln!(out, "first failure: {f}")?;
            }
        }
        Format::Json => write_json(out, &r)?,
        Format::Csv => write_csv(out, [(r.check.name(), r.n, r.checked, r.failures)])?,
    }
    if r.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

#[derive(Serialize)]
struct ThresholdListing {
    graph: SimpleGraph,
    barred: Option<String>,
}

#[derive(Serialize)]
struct ThresholdReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    counts: Option<coxpath::eulerian::ThresholdCounts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    brute_force_total: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    unlabeled_brute_force: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    graphs: Option<Vec<ThresholdListing>>,
}

fn threshold<W: Write>(out: &mut W, format: Format, n: usize, counts: bool, list: bool) -> Run {
    if n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    if list && n > 7 {
        return Err(Failure::Usage("--list is limited to n <= 7".into()));
    }
    let mut report = ThresholdReport { counts: None, brute_force_total: None, unlabeled_brute_force: None, graphs: None };
    if counts {
        report.counts = Some(threshold_counts(n)?);
        if n <= 7 {
            report.brute_force_total = Some(count_threshold_graphs(n, Recognition::Vicinal).0);
            report.unlabeled_brute_force = Some(unlabeled_threshold_count(n, false));
        }
    }
    if list {
        report.graphs = Some(
            SimpleGraph::all(n)
                .filter(|g| is_threshold(g, Recognition::Vicinal))
                .map(|g| ThresholdListing {
                    barred: sbp_from_threshold(&g).ok().map(|s| s.to_string()),
                    graph: g,
                })
                .collect(),
        );
    }
    match format {
        Format::Json => write_json(out, &report),
        Format::Table => {
            if let Some(c) = &report.counts {
                writeln!(out, "T_{n} = {}", c.total)?;
                for (i, v) in c.by_degree_classes.coefficients().iter().enumerate() {
                    writeln!(out, "T_({n},{}) = {v}", i + 1)?;
                }
                for (k, v) in c.tau.coefficients().iter().enumerate() {
                    writeln!(out, "tau_({n},{k}) = {v}")?;
                }
                writeln!(out, "unlabeled = {}", c.unlabeled)?;
                if let Some(b) = report.brute_force_total {
                    writeln!(out, "brute force: {b} threshold graphs")?;
                }
            }
            for l in report.graphs.iter().flatten() {
                writeln!(out, "{}\t{}", l.graph, l.barred.as_deref().unwrap_or("-"))?;
            }
            Ok(())
        }
        Format::Csv => {
            let mut rows: Vec<(String, usize, String)> = Vec::new();
            if let Some(c) = &report.counts {
                rows.push(("T".into(), n, c.total.to_string()));
                for (i, v) in c.by_degree_classes.coefficients().iter().enumerate() {
                    rows.push(("T_ni".into(), i + 1, v.to_string()));
                }
                for (k, v) in c.tau.coefficients().iter().enumerate() {
                    rows.push(("tau_nk".into(), k, v.to_string()));
                }
                rows.push(("unlabeled".into(), n, c.unlabeled.to_string()));
            }
            for (i, l) in report.graphs.iter().flatten().enumerate() {
                rows.push(("graph".into(), i, l.graph.to_string()));
            }
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["quantity", "index", "value"])?;
            for (q, i, v) in rows {
                w.write_record([q, i.to_string(), v])?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

fn render<W: Write>(out: &mut W, format: Format, perm: &str, svg: Option<&PathBuf>) -> Run {
    let u: SignedPermutation = perm.parse()?;
    let rep = path_representation(&u);
    if let Some(path) = svg {
        std::fs::write(path, render_svg(&rep))?;
    }
    match format {
        Format::Json => write_json(
            out,
            &serde_json::json!({
                "window": u,
                "path": rep.path,
                "lambda_x": rep.lambda_x,
            }),
        ),
        Format::Csv => write_csv(out, [(u.to_string(), rep.path.to_string(), rep.lambda_x.to_string())]),
        Format::Table if svg.is_none() => {
            write!(out, "{}", render_ascii(&rep))?;
            Ok(())
        }
        Format::Table => Ok(()),
    }
}

#[derive(Serialize)]
struct PosetReport {
    kind: &'static str,
    n: usize,
    size: usize,
    check: &'static str,
    holds: bool,
    detail: String,
}

fn poset<W: Write>(
    out: &mut W,
    format: Format,
    kind: PosetKind,
    n: usize,
    check: PosetCheck,
    dot: Option<&PathBuf>,
    budget: &Budget,
) -> Run {
    match kind {
        PosetKind::A | PosetKind::B | PosetKind::D => {
            let k = match kind {
                PosetKind::A => Kind::A,
                PosetKind::B => Kind::B,
                _ => Kind::D,
            };
            if k == Kind::D && n < 2 {
                return Err(Failure::Usage("weak D_n needs --n >= 2".into()));
            }
            let p = weak_poset(n, k, budget)?;
            let descents = |i: usize, p: &FinitePoset<SignedPermutation>| p.elements()[i].des(k).ok();
            let iso = || -> Result<bool, Failure> {
                if k != Kind::D {
                    return Err(Failure::Usage("--check iso compares weak D_n with TG_n; use --kind D or TG".into()));
                }
                Ok(order_isomorphism_check(&p, &tg_poset(n)?, tg_pair)?)
            };
            poset_report(out, format, kind_name(kind), n, check, &p, dot, |x| x.to_string(), descents, iso)
        }
        PosetKind::Tg => {
            let p = tg_poset(n)?;
            let iso = || -> Result<bool, Failure> {
                if n < 2 {
                    return Err(Failure::Usage("the isomorphism with weak D_n needs --n >= 2".into()));
                }
                Ok(order_isomorphism_check(&weak_poset(n, Kind::D, budget)?, &p, tg_pair)?)
            };
            let label = |t: &coxpath::threshold::ThresholdPair| format!("{} {}", t.w, t.graph);
            poset_report(out, format, "TG", n, check, &p, dot, label, |_, _| None, iso)
        }
    }
}

fn kind_name(kind: PosetKind) -> &'static str {
    match kind {
        PosetKind::A => "A",
        PosetKind::B => "B",
        PosetKind::D => "D",
        PosetKind::Tg => "TG",
    }
}

#[allow(clippy::too_many_arguments)]
fn poset_report<W: Write, T>(
    out: &mut W,
    format: Format,
    kind: &'static str,
    n: usize,
    check: PosetCheck,
    p: &FinitePoset<T>,
    dot: Option<&PathBuf>,
    label: impl Fn(&T) -> String,
    descents: impl Fn(usize, &FinitePoset<T>) -> Option<usize>,
    iso: impl FnOnce() -> Result<bool, Failure>,
) -> Run {
    if let Some(path) = dot {
        std::fs::write(path, p.to_dot(&label))?;
    }
    let (check_name, holds, detail) = match check {
        PosetCheck::Lattice => {
            let r = p.lattice_check();
            let detail = match (r.witness, r.missing) {
                (Some((i, j)), Some(m)) => {
                    format!("no {m} for {} and {}", label(&p.elements()[i]), label(&p.elements()[j]))
                }
                _ => "every pair has a join and a meet".into(),
            };
            ("lattice", r.is_lattice, detail)
        }
        PosetCheck::Covers => {
            let mismatches = (0..p.len())
                .filter(|&i| descents(i, p).is_some_and(|d| d != p.lower_covers(i).len()))
                .count();
            let covers = p.covers().len();
            ("covers", mismatches == 0, format!("{covers} cover pairs, {mismatches} elements whose lower covers differ from their descents"))
        }
        PosetCheck::Joinirr => {
            let count = p.join_irreducible_count()?;
            ("joinirr", true, format!("{count} join-irreducible elements"))
        }
        PosetCheck::Iso => {
            let holds = iso()?;
            ("iso", holds, format!("tg_pair is {}an order isomorphism", if holds { "" } else { "not " }))
        }
    };
    let report = PosetReport { kind, n, size: p.len(), check: check_name, holds, detail };
    match format {
        Format::Table => writeln!(out, "{kind}_{n} ({} elements) {check_name}: {}", report.size, report.detail)?,
        Format::Json => {
            let mut v = serde_json::to_value(&report)?;
            if check == PosetCheck::Covers {
                v["hasse"] = p.covers_json(&label);
            }
            write_json(out, &v)?;
        }
        Format::Csv => write_csv(out, [&report])?,
    }
    if holds {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
