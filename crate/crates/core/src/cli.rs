//! Command-line front end: argument model, command dispatch, reports.

use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{fmt_rat, parse_rat, Rat};
use crate::blowup;
use crate::error::{Error, Result};
use crate::invariants::{self, check_inequalities, check_singular_locus};
use crate::morsify::{self, MorsCandidate, Provenance};
use crate::multipoly::{parse, MultiPoly, Ring};

pub const SCHEMA: &str = "linesing.report/1";

#[derive(Parser, Debug, Clone)]
#[command(name = "linesing", version, about = "Invariants of hypersurface germs singular along a line")]
pub struct Cli {
    /// Coordinates, comma separated; the last one is the line variable.
    #[arg(long, global = true, default_value = "x,y,z")]
    pub ring: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Full invariant report with inequality verdicts.
    Invariants { f: String },
    /// Transversal discriminant on the singular line.
    Transversal { f: String },
    /// Milnor number of an isolated singularity at the origin.
    Milnor { f: String },
    /// Jacobi number by both routes.
    Jacobi { f: String },
    /// δ on the stabilized window, by both routes.
    Delta { f: String },
    /// μ(f + x_n^k) for a range of k.
    Yomdin {
        f: String,
        #[arg(long, default_value_t = 2)]
        kmin: u32,
        #[arg(long)]
        kmax: Option<u32>,
    },
    /// Find and verify a relative morsification.
    Morsify {
        f: String,
        #[arg(long, default_value_t = 20)]
        trials: u64,
        #[arg(long = "t0")]
        t0: Vec<String>,
        /// Use the table preset instead of a random draw.
        #[arg(long)]
        preset: bool,
    },
    /// Verify f + t·g at sampled t0.
    Verify {
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long = "t0")]
        t0: Vec<String>,
    },
    /// Morse points of a polynomial off the singular line.
    CountA1 { f: String },
    /// Recompute a published table: ex3.3, ex4.tables or counterexample.
    Reproduce { id: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub version: &'static str,
    pub command: Vec<String>,
    pub seed: u64,
    pub ok: bool,
    pub results: Value,
    pub caveats: Vec<String>,
    pub timing_ms: u128,
}

/// One compared cell of a reproduced table.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Cell {
    pub row: String,
    pub quantity: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Cell {
    fn new(row: &str, quantity: &str, expected: impl ToString, computed: impl ToString) -> Cell {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        Cell { row: row.into(), quantity: quantity.into(), pass: expected == computed, expected, computed }
    }

    fn check(row: &str, quantity: &str, holds: bool) -> Cell {
        Cell::new(row, quantity, true, holds)
    }
}

struct Outcome {
    ok: bool,
    results: Value,
    caveats: Vec<String>,
}

fn outcome<T: Serialize>(ok: bool, results: &T, caveats: Vec<String>) -> Result<Outcome> {
    let results = serde_json::to_value(results).map_err(|e| Error::Invalid(e.to_string()))?;
    Ok(Outcome { ok, results, caveats })
}

/// Runs one command; `echo` is recorded verbatim in the report.
pub fn execute(cli: &Cli, echo: Vec<String>) -> Result<Report> {
    let start = Instant::now();
    let ring = Ring::parse_spec(&cli.ring)?;
    let out = dispatch(cli, &ring)?;
    Ok(Report {
        schema: SCHEMA,
        version: env!("CARGO_PKG_VERSION"),
        command: echo,
        seed: cli.seed,
        ok: out.ok,
        results: out.results,
        caveats: out.caveats,
        timing_ms: start.elapsed().as_millis(),
    })
}

fn samples(t0: &[String]) -> Result<Vec<Rat>> {
    if t0.is_empty() {
        return Ok(morsify::default_samples());
    }
    let ts = t0.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>()?;
    if ts.iter().any(|t| *t == crate::arith::rat_int(0)) {
        return Err(Error::Invalid("t0 samples must be nonzero".into()));
    }
    Ok(ts)
}

fn dispatch(cli: &Cli, ring: &Ring) -> Result<Outcome> {
    let poly = |s: &str| parse(s, ring);
    match &cli.command {
        Command::Invariants { f } => {
            let f = poly(f)?;
            let profile = check_singular_locus(&f)?;
            profile.require()?;
            let rep = check_inequalities(&f, None)?;
            let caveats = rep.caveats.clone();
            outcome(rep.all_hold(), &json!({ "f": f.to_string(), "profile": profile, "report": rep }), caveats)
        }
        Command::Transversal { f } => {
            let f = poly(f)?;
            let d = blowup::transversal_divisor(&f)?;
            outcome(true, &json!({ "f": f.to_string(), "transversal": d.summary() }), vec![invariants::CAVEAT_DIVISOR.into()])
        }
        Command::Milnor { f } => {
            let f = poly(f)?;
            outcome(true, &json!({ "f": f.to_string(), "mu": invariants::milnor_local(&f)? }), vec![])
        }
        Command::Jacobi { f } => {
            let f = poly(f)?;
            check_singular_locus(&f)?.require()?;
            let a = invariants::jacobi_truncation(&f)?;
            let b = invariants::jacobi_yomdin(&f)?;
            let e = invariants::jac_gen_multiplicity(&f)?;
            let mut caveats = vec![];
            if e != invariants::yomdin_step(f.i_order()?, f.ring().n()) {
                caveats.push(invariants::CAVEAT_MULTIPLICITY.into());
            }
            let res = json!({ "f": f.to_string(), "j": a, "j_truncation": a, "j_yomdin": b, "jac_gen_multiplicity": e });
            outcome(a == b, &res, caveats)
        }
        Command::Delta { f } => {
            let f = poly(f)?;
            check_singular_locus(&f)?.require()?;
            let (k, _) = invariants::yomdin_stabilize(&f)?;
            let dp = invariants::delta_profile(&f, k)?;
            let routes: Vec<Value> = dp
                .by_k
                .keys()
                .map(|&kk| invariants::delta_routes_at(&f, kk).map(|(r, c)| json!({ "k": kk, "rank": r, "colon": c })))
                .collect::<Result<_>>()?;
            let agree = routes.iter().all(|v| v["rank"] == v["colon"]);
            let caveats = if dp.stable().is_none() { vec![invariants::CAVEAT_DELTA_K.into()] } else { vec![] };
            let res = json!({ "f": f.to_string(), "delta": dp.stable(), "k_star": k, "by_k": dp.by_k, "routes": routes });
            outcome(agree, &res, caveats)
        }
        Command::Yomdin { f, kmin, kmax } => {
            let f = poly(f)?;
            check_singular_locus(&f)?.require()?;
            let (k, series) = invariants::yomdin_stabilize(&f)?;
            let top = kmax.unwrap_or(k + 2);
            let mut mu = std::collections::BTreeMap::new();
            for kk in *kmin..=top {
                mu.insert(kk, invariants::yomdin_mu(&f, kk)?);
            }
            let res = json!({ "f": f.to_string(), "k_star": k, "step": invariants::yomdin_step(f.i_order()?, f.ring().n()), "mu": mu, "stable_series": series });
            outcome(true, &res, vec![])
        }
        Command::Morsify { f, trials, t0, preset } => {
            let f = poly(f)?;
            let ts = samples(t0)?;
            let (cand, rep) = if *preset {
                let cand = morsify::preset_for(&f).ok_or_else(|| Error::Invalid(format!("no table preset matches {f}")))?;
                let rep = morsify::verify_relative_morsification(&cand, &ts)?;
                (cand, rep)
            } else if t0.is_empty() {
                morsify::search_morsification(&f, cli.seed, *trials)?
            } else {
                let mut found = None;
                for trial in 0..*trials {
                    let cand = morsify::candidate_family_trial(&f, cli.seed, trial)?;
                    let rep = morsify::verify_relative_morsification(&cand, &ts)?;
                    if rep.verdict {
                        found = Some((cand, rep));
                        break;
                    }
                }
                found.ok_or(Error::SearchExhausted { trials: *trials as usize, stats: "no verified candidate".into() })?
            };
            mors_outcome(&cand, rep, &ts)
        }
        Command::Verify { f, g, t0 } => {
            let cand = MorsCandidate::new(&poly(f)?, &poly(g)?, Provenance::Given)?;
            let ts = samples(t0)?;
            let rep = morsify::verify_relative_morsification(&cand, &ts)?;
            mors_outcome(&cand, rep, &ts)
        }
        Command::CountA1 { f } => {
            let f = poly(f)?;
            let c = morsify::count_a1(&f)?;
            let res = json!({ "f": f.to_string(), "a1_count": c, "eliminant": morsify::critical_eliminant(&f)? });
            outcome(true, &res, vec![morsify::CAVEAT_GLOBAL_COUNT.into()])
        }
        Command::Reproduce { id } => {
            let cells = match id.as_str() {
                "ex3.3" => reproduce_morsifications()?,
                "ex4.tables" => reproduce_tables()?,
                "counterexample" => reproduce_counterexample()?,
                other => return Err(Error::UnknownTable(other.into())),
            };
            let ok = cells.iter().all(|c| c.pass);
            outcome(ok, &json!({ "table": id, "cells": cells }), vec![invariants::CAVEAT_DIVISOR.into(), morsify::CAVEAT_SAMPLING.into()])
        }
    }
}

fn mors_outcome(cand: &MorsCandidate, rep: morsify::MorsReport, ts: &[Rat]) -> Result<Outcome> {
    let mut caveats = rep.caveats.clone();
    let mut res = json!({ "morsification": rep, "coefficients": cand.coefficients.iter().map(|(k, v)| (k.clone(), fmt_rat(v))).collect::<Vec<_>>() });
    let mut ok = rep.verdict;
    if let Some(ev) = morsify::mors_evidence(cand, &rep, ts)? {
        let inv = check_inequalities(&cand.f, Some(&ev))?;
        ok &= inv.all_hold();
        caveats.extend(inv.caveats.iter().cloned());
        res["evidence"] = serde_json::to_value(&ev).map_err(|e| Error::Invalid(e.to_string()))?;
        res["invariants"] = serde_json::to_value(&inv).map_err(|e| Error::Invalid(e.to_string()))?;
    }
    Ok(Outcome { ok, results: res, caveats })
}

fn zpow(q: u32) -> String {
    if q == 1 {
        "z".into()
    } else {
        format!("z^{q}")
    }
}

pub fn table_row(row: usize, p: u32, q1: u32, q2: u32) -> String {
    match row {
        1 => format!("x^{p}+y^{p}*z"),
        2 => format!("x^{p}+y^{p}*{}+y^{}", zpow(q1), p + 1),
        _ => format!("x^{p}*{}+y^{p}*{}+y^{}+x^{}", zpow(q1), zpow(q2), p + 1, p + 1),
    }
}

/// (j, deg) from the table formulas.
pub fn table_formula(row: usize, p: u32, q1: u32, q2: u32) -> (u32, u32) {
    match row {
        1 => (p - 1, p - 1),
        2 => ((2 * q1 - 1) * (p - 1), q1 * (p - 1)),
        _ => {
            let q = q1 + q2;
            ((p - 2) * (2 * q - 1) + 2 * q, q * (p - 1))
        }
    }
}

/// The n = 3 instances compared by `reproduce ex4.tables`.
pub fn table_instances() -> Vec<(usize, u32, u32, u32)> {
    let mut out = Vec::new();
    for p in [2, 3] {
        out.push((1, p, 0, 0));
        for q in [1, 2] {
            out.push((2, p, q, 0));
        }
        for (q1, q2) in [(1, 1), (1, 2), (2, 1)] {
            out.push((3, p, q1, q2));
        }
    }
    out
}

fn xyz() -> Ring {
    Ring::parse_spec("x,y,z").expect("fixed ring")
}

fn reproduce_tables() -> Result<Vec<Cell>> {
    let r = xyz();
    let mut cells = Vec::new();
    for (row, p, q1, q2) in table_instances() {
        let src = table_row(row, p, q1, q2);
        let f = parse(&src, &r)?;
        let (j, deg) = table_formula(row, p, q1, q2);
        cells.push(Cell::new(&src, "j", j, invariants::jacobi_number(&f)?));
        cells.push(Cell::new(&src, "deg", deg, blowup::transversal_divisor(&f)?.degree));
    }
    Ok(cells)
}

/// Preset rows at p ∈ {2, 3}: verified at two samples with #A1 = j − deg,
/// plus the non-example and the trivial deformation.
fn reproduce_morsifications() -> Result<Vec<Cell>> {
    let r = xyz();
    let ts = morsify::default_samples();
    let mut cells = Vec::new();
    let d = blowup::transversal_divisor(&parse("z*y^3+x^3", &r)?)?;
    cells.push(Cell::new("z*y^3+x^3", "h", "z^2", d.h.to_string()));
    cells.push(Cell::new("z*y^3+x^3", "reduced", false, d.squarefree));
    for (row, p, q1, q2) in table_instances() {
        let src = table_row(row, p, q1, q2);
        let f = parse(&src, &r)?;
        let Some(cand) = morsify::preset_for(&f) else {
            cells.push(Cell::check(&src, "preset exists", false));
            continue;
        };
        let rep = morsify::verify_relative_morsification(&cand, &ts)?;
        let (j, deg) = table_formula(row, p, q1, q2);
        cells.push(Cell::new(&src, "verdict", true, rep.verdict));
        cells.push(Cell::new(&src, "stable", true, rep.stable));
        cells.push(Cell::new(&src, "#A1", j - deg, rep.a1_germ.map_or("none".into(), |a| a.to_string())));
    }
    let non = parse("x^3+y^2", &r)?;
    let cand = MorsCandidate::new(&non, &parse("x^2", &r)?, Provenance::Given)?;
    let rep = morsify::verify_relative_morsification(&cand, &ts)?;
    cells.push(Cell::new("x^3+y^2+t*x^2", "verdict", false, rep.verdict));
    cells.push(Cell::check("x^3+y^2+t*x^2", "cond (b) fails at every sample", rep.samples.iter().all(|s| !s.cond_b)));
    let triv = MorsCandidate::new(&parse("x^2+y^2", &r)?, &MultiPoly::zero(&r), Provenance::Given)?;
    let rep = morsify::verify_relative_morsification(&triv, &ts)?;
    cells.push(Cell::new("x^2+y^2", "verdict", true, rep.verdict));
    cells.push(Cell::new("x^2+y^2", "#A1", 0, rep.a1_germ.map_or("none".into(), |a| a.to_string())));
    Ok(cells)
}

pub const COUNTEREXAMPLE: &str = "4*x^6+4*y^6-6*z^2*x^4*y^4";

fn reproduce_counterexample() -> Result<Vec<Cell>> {
    let r = xyz();
    let f = parse(COUNTEREXAMPLE, &r)?;
    let row = COUNTEREXAMPLE;
    let mut cells = Vec::new();
    let d = blowup::transversal_divisor(&f)?;
    cells.push(Cell::new(row, "transversal discriminant empty", true, d.empty));
    let j = invariants::jacobi_number(&f)?;
    cells.push(Cell::check(row, "j > 0", j > 0));
    let (k, _) = invariants::yomdin_stabilize(&f)?;
    let dp = invariants::delta_profile(&f, k)?;
    cells.push(Cell::check(row, "delta(k) > 0 for k > k*", dp.by_k.iter().filter(|(&kk, _)| kk > k).all(|(_, &v)| v > 0)));
    cells.push(Cell::new(row, "d_n f in J_(n-1)", false, invariants::delta_zero_iff_membership(&f)?));
    let cand = MorsCandidate::new(&f, &MultiPoly::zero(&r), Provenance::Given)?;
    let rep = morsify::verify_relative_morsification(&cand, &morsify::default_samples())?;
    cells.push(Cell::new(row, "trivial deformation verifies", true, rep.verdict));
    cells.push(Cell::new(row, "#A1", 0, rep.a1_germ.map_or("none".into(), |a| a.to_string())));
    cells.push(Cell::check(row, "j > #A1 + deg", j > rep.a1_germ.unwrap_or(usize::MAX / 2) + d.order_at_origin));
    Ok(cells)
}

/// Indented `key: value` rendering of a report.
pub fn render_text(rep: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} ({})\n", rep.command.join(" "), if rep.ok { "ok" } else { "MISMATCH" }));
    if let Some(cells) = rep.results.get("cells").and_then(Value::as_array) {
        for c in cells {
            let mark = if c["pass"].as_bool() == Some(true) { "pass" } else { "FAIL" };
            out.push_str(&format!(
                "  [{mark}] {} {}: expected {} computed {}\n",
                c["row"].as_str().unwrap_or(""),
                c["quantity"].as_str().unwrap_or(""),
                c["expected"].as_str().unwrap_or(""),
                c["computed"].as_str().unwrap_or("")
            ));
        }
    } else {
        write_value(&rep.results, 1, &mut out);
    }
    for c in &rep.caveats {
        out.push_str(&format!("  note: {c}\n"));
    }
    out
}

fn write_value(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if x.is_object() || (x.is_array() && x.as_array().is_some_and(|a| a.iter().any(|e| e.is_object()))) {
                    out.push_str(&format!("{pad}{k}:\n"));
                    write_value(x, depth + 1, out);
                } else {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar(x)));
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                out.push_str(&format!("{pad}- [{i}]\n"));
                write_value(x, depth + 1, out);
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        Value::Array(a) => format!("[{}]", a.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

/// Entry point shared by the binary: returns the process exit code.
pub fn main_with(args: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli, args[1..].to_vec()) {
        Ok(rep) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&rep).expect("serializable")),
                Format::Text => print!("{}", render_text(&rep)),
            }
            if rep.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Report {
        let args: Vec<String> = std::iter::once("linesing").chain(args.iter().copied()).map(String::from).collect();
        let cli = Cli::try_parse_from(&args).unwrap();
        execute(&cli, args[1..].to_vec()).unwrap()
    }

    #[test]
    fn invariants_command() {
        let r = run(&["invariants", "--format", "json", "x^3+y^3*z"]);
        assert!(r.ok);
        let rep = &r.results["report"];
        assert_eq!(rep["j"], 2);
        assert_eq!(rep["delta"], 4);
        assert_eq!(rep["deg_transversal"], 2);
        let r = run(&["invariants", "x^2+y^2"]);
        assert_eq!(r.results["report"]["delta"], 0);
        assert_eq!(r.results["report"]["transversal"]["empty"], true);
    }

    #[test]
    fn verify_command() {
        let r = run(&["verify", "--t0", "1/2", "--t0", "1/3", "--g", "x^2*y+y^2*x", "x^3+y^3*z"]);
        assert!(r.ok);
        assert_eq!(r.results["morsification"]["a1_germ"], 0);
        assert!(r.caveats.iter().any(|c| c == morsify::CAVEAT_SAMPLING));
    }

    #[test]
    fn exact_strings_and_determinism() {
        let a = run(&["--ring", "x,y,z", "transversal", "x^3+y^3*z+x*y^2"]);
        assert_eq!(a.results["transversal"]["h"], "z^2+4/27");
        let b = run(&["--ring", "x,y,z", "transversal", "x^3+y^3*z+x*y^2"]);
        assert_eq!(serde_json::to_string(&a.results).unwrap(), serde_json::to_string(&b.results).unwrap());
    }

    #[test]
    fn errors_and_exit_codes() {
        let cli = Cli::try_parse_from(["linesing", "reproduce", "ex9"]).unwrap();
        assert_eq!(execute(&cli, vec![]).unwrap_err(), Error::UnknownTable("ex9".into()));
        let cli = Cli::try_parse_from(["linesing", "verify", "--t0", "0", "--g", "x^3", "x^3+y^3*z"]).unwrap();
        assert!(matches!(execute(&cli, vec![]).unwrap_err(), Error::Invalid(_)));
        assert_eq!(main_with(vec!["linesing".into(), "milnor".into(), "x^2+y^2+z^2".into()]), 0);
        assert_eq!(main_with(vec!["linesing".into(), "milnor".into(), "x^2+y^2".into()]), 2);
    }

    #[test]
    fn table_formulas() {
        assert_eq!(table_formula(1, 3, 0, 0), (2, 2));
        assert_eq!(table_formula(2, 3, 2, 0), (6, 4));
        assert_eq!(table_formula(3, 3, 1, 1), (7, 4));
        assert_eq!(table_instances().len(), 12);
    }
}
