//! Command-line front end. [`run`] takes the full argument vector and returns
//! the exit code with the text for stdout and stderr, so the binary is a thin
//! wrapper and tests can drive every subcommand in-process.
//!
//! Exit codes: `0` success, `1` a `--strict` decision came out not finite (or
//! a certificate failed to verify), `2` unusable input.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::aplus::{enumerate_aplus, Seq};
use crate::covering::{
    chain_double_cover, detect_quotients, k_fold_cover, universal_cover, CoveringRelation,
};
use crate::decide::{decide, extremal_scheme, realize_root_system, verify_certificate, Decision};
use crate::error::Error;
use crate::exec::{self, Strategy};
use crate::oracle::{default_cap, groupoid_bfs, BfsReport};
use crate::roots::{build_root_system, positive_root_count, verify_axioms, RootSystem2};
use crate::scheme::CartanScheme2;

#[derive(Debug, Parser)]
#[command(
    name = "cartan-rank2",
    version,
    about = "Decide, build and enumerate finite root systems of rank-two Cartan schemes"
)]
struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SchemeArgs {
    /// Cycle scheme by characteristic sequence, e.g. 5,1,2,2.
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    cycle: Option<String>,
    /// Chain scheme by spine, e.g. 1,2,1.
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    chain: Option<String>,
    /// JSON scheme document: {"kind":"cycle","char_seq":[…]} or {"kind":"chain","spine":[…]}.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether the scheme admits a finite root system.
    Decide {
        #[command(flatten)]
        scheme: SchemeArgs,
        /// Print the reduction certificate.
        #[arg(long)]
        trace: bool,
        /// Exit with status 1 when the verdict is "not finite".
        #[arg(long)]
        strict: bool,
        /// Decide every scheme in FILE, one per line (JSON or `cycle:5,1,2,2`).
        #[arg(long, value_name = "FILE")]
        batch: Option<PathBuf>,
        /// Replay the certificate of a JSON decision document.
        #[arg(long, value_name = "FILE")]
        verify_cert: Option<PathBuf>,
        /// Also explore the Weyl groupoid with this state budget.
        #[arg(long, value_name = "N")]
        cap: Option<usize>,
    },
    /// List all A+ sequences of a given length up to rotation and reversal.
    Enumerate {
        #[arg(long, value_name = "N")]
        length: usize,
    },
    /// Build a root system from an A+ sequence, or realize one for a scheme.
    Roots {
        #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
        aplus: Option<String>,
        #[command(flatten)]
        scheme: SchemeArgs,
    },
    /// Coverings and quotients of a scheme.
    #[command(group(ArgGroup::new("mode").required(true).args(["k", "chain_double", "universal", "detect_quotients"])))]
    Cover {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long, value_name = "N")]
        k: Option<usize>,
        #[arg(long)]
        chain_double: bool,
        #[arg(long)]
        universal: bool,
        #[arg(long)]
        detect_quotients: bool,
    },
    /// Check the Cartan scheme axioms.
    Validate {
        #[command(flatten)]
        scheme: SchemeArgs,
    },
    /// Schemes attaining the bounds on Cartan entries.
    Extremal {
        #[arg(long, value_name = "N")]
        n: usize,
    },
    /// h, q and the number of positive roots of a finite scheme.
    Stats {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long, value_name = "N")]
        cap: Option<usize>,
    },
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { code: 0, stdout, stderr: String::new() }
    }

    fn input_error(msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        stderr.push('\n');
        Output { code: 2, stdout: String::new(), stderr }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable output");
    s.push('\n');
    s
}

fn parse_seq(s: &str) -> Result<Seq, String> {
    s.parse::<Seq>()
}

/// Parses one scheme from a JSON document or the `cycle:LIST` / `chain:LIST`
/// shorthand.
pub fn parse_scheme_document(text: &str) -> Result<CartanScheme2, String> {
    let t = text.trim();
    if t.starts_with('{') {
        return serde_json::from_str(t).map_err(|e| format!("invalid scheme document: {e}"));
    }
    match t.split_once(':') {
        Some(("cycle", list)) => Ok(CartanScheme2::Cycle { char_seq: parse_seq(list)? }),
        Some(("chain", list)) => Ok(CartanScheme2::Chain { spine: parse_seq(list)? }),
        _ => Err(format!("cannot parse scheme {t:?}; expected JSON or cycle:LIST / chain:LIST")),
    }
}

impl SchemeArgs {
    fn is_given(&self) -> bool {
        self.cycle.is_some() || self.chain.is_some() || self.input.is_some()
    }

    /// The scheme as given, without validation.
    fn raw(&self) -> Result<CartanScheme2, String> {
        let given = [self.cycle.is_some(), self.chain.is_some(), self.input.is_some()];
        match given.iter().filter(|g| **g).count() {
            0 => return Err("no scheme given; use --cycle, --chain or --input".into()),
            1 => {}
            _ => return Err("give exactly one of --cycle, --chain, --input".into()),
        }
        if let Some(c) = &self.cycle {
            return Ok(CartanScheme2::Cycle { char_seq: parse_seq(c)? });
        }
        if let Some(c) = &self.chain {
            return Ok(CartanScheme2::Chain { spine: parse_seq(c)? });
        }
        let path = self.input.as_ref().expect("checked above");
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        parse_scheme_document(&text)
    }

    /// The scheme, rejected unless it passes validation (mixed zeros allowed).
    fn decidable(&self) -> Result<CartanScheme2, String> {
        let s = self.raw()?;
        check_decidable(&s)?;
        Ok(s)
    }
}

fn check_decidable(s: &CartanScheme2) -> Result<(), String> {
    let report = s.validate();
    if report.is_decidable() {
        return Ok(());
    }
    let mut msg = format!("invalid scheme {s}:");
    for v in &report.violations {
        write!(msg, "\n  {v}").unwrap();
    }
    Err(msg)
}

/// Runs the command line `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: 2, stdout: String::new(), stderr: text }
            } else {
                Output::ok(text)
            };
        }
    };
    let json = cli.json;
    let result = match cli.command {
        Command::Decide { scheme, trace, strict, batch, verify_cert, cap } => {
            if let Some(path) = verify_cert {
                cmd_verify(&path, json)
            } else if let Some(path) = batch {
                cmd_batch(&path, json, trace, strict)
            } else {
                cmd_decide(&scheme, json, trace, strict, cap)
            }
        }
        Command::Enumerate { length } => cmd_enumerate(length, json),
        Command::Roots { aplus, scheme } => cmd_roots(aplus.as_deref(), &scheme, json),
        Command::Cover { scheme, k, chain_double, universal, detect_quotients } => {
            cmd_cover(&scheme, json, k, chain_double, universal, detect_quotients)
        }
        Command::Validate { scheme } => cmd_validate(&scheme, json),
        Command::Extremal { n } => cmd_extremal(n, json),
        Command::Stats { scheme, cap } => cmd_stats(&scheme, json, cap),
    };
    result.unwrap_or_else(Output::input_error)
}

type CmdResult = Result<Output, String>;

fn err(e: Error) -> String {
    e.to_string()
}

fn verdict(finite: bool) -> &'static str {
    if finite {
        "finite"
    } else {
        "not finite"
    }
}

fn write_decision(out: &mut String, d: &Decision, trace: bool) {
    writeln!(out, "{}: {}", d.scheme, verdict(d.finite)).unwrap();
    if d.finite && !d.irreducible {
        writeln!(out, "  reducible").unwrap();
    }
    if let Some(s) = &d.stats {
        writeln!(out, "  h = {}, q = {}, |R+| = {}", s.h, s.q, s.positive_roots).unwrap();
    }
    if trace {
        writeln!(out, "certificate:").unwrap();
        for (k, step) in d.certificate.iter().enumerate() {
            writeln!(out, "  {}. {step}", k + 1).unwrap();
        }
        let halves: Vec<String> = d.halves().iter().map(|h| format!("{h}²")).collect();
        if halves.len() > 1 {
            writeln!(out, "reduction: {}", halves.join(" → ")).unwrap();
        }
    }
}

fn write_bfs(out: &mut String, r: &BfsReport) {
    if r.budget_exceeded {
        writeln!(out, "groupoid: budget exceeded after {} states", r.states).unwrap();
    } else if !r.exact {
        writeln!(out, "groupoid: inconclusive after {} states (residue collision)", r.states).unwrap();
    } else {
        writeln!(
            out,
            "groupoid: {} states, |End| = {} ({} even, {} odd), C3 {}",
            r.states,
            r.end_size,
            r.end_even,
            r.end_odd,
            match (r.c3_holds, r.c3_exact) {
                (true, _) => "holds",
                (false, true) => "fails",
                (false, false) => "fails (by residues)",
            }
        )
        .unwrap();
    }
}

fn cmd_decide(args: &SchemeArgs, json: bool, trace: bool, strict: bool, cap: Option<usize>) -> CmdResult {
    let s = args.decidable()?;
    let d = decide(&s).map_err(err)?;
    let bfs = match cap {
        Some(c) => Some(groupoid_bfs(&s, c).map_err(err)?),
        None => None,
    };
    let stdout = if json {
        let mut v = serde_json::to_value(&d).expect("serializable decision");
        if let Some(b) = &bfs {
            v["groupoid"] = serde_json::to_value(b).expect("serializable report");
        }
        to_json(&v)
    } else {
        let mut out = String::new();
        write_decision(&mut out, &d, trace);
        if let Some(b) = &bfs {
            write_bfs(&mut out, b);
        }
        out
    };
    let code = if strict && !d.finite { 1 } else { 0 };
    Ok(Output { code, stdout, stderr: String::new() })
}

fn cmd_verify(path: &PathBuf, json: bool) -> CmdResult {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let d: Decision =
        serde_json::from_str(&text).map_err(|e| format!("invalid decision document: {e}"))?;
    let result = verify_certificate(&d);
    let stdout = if json {
        to_json(&json!({
            "scheme": d.scheme,
            "valid": result.is_ok(),
            "error": result.as_ref().err().map(|e| e.to_string()),
        }))
    } else {
        match &result {
            Ok(()) => format!("certificate valid: {} is {}\n", d.scheme, verdict(d.finite)),
            Err(e) => format!("certificate rejected: {e}\n"),
        }
    };
    Ok(Output { code: if result.is_ok() { 0 } else { 1 }, stdout, stderr: String::new() })
}

fn cmd_batch(path: &PathBuf, json: bool, trace: bool, strict: bool) -> CmdResult {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let results = exec::map(Strategy::default(), &lines, |(_, l)| {
        let s = parse_scheme_document(l)?;
        check_decidable(&s)?;
        decide(&s).map_err(err)
    });
    let any_error = results.iter().any(|r| r.is_err());
    let any_not_finite = results.iter().any(|r| matches!(r, Ok(d) if !d.finite));
    let stdout = if json {
        let items: Vec<serde_json::Value> = lines
            .iter()
            .zip(&results)
            .map(|((n, _), r)| match r {
                Ok(d) => json!({ "line": n, "decision": d }),
                Err(e) => json!({ "line": n, "error": e }),
            })
            .collect();
        to_json(&json!({ "results": items }))
    } else {
        let mut out = String::new();
        for ((n, l), r) in lines.iter().zip(&results) {
            match r {
                Ok(d) => {
                    write!(out, "line {n}: ").unwrap();
                    write_decision(&mut out, d, trace);
                }
                Err(e) => writeln!(out, "line {n}: error in {l:?}: {e}").unwrap(),
            }
        }
        out
    };
    let code = if any_error {
        2
    } else if strict && any_not_finite {
        1
    } else {
        0
    };
    Ok(Output { code, stdout, stderr: String::new() })
}

fn cmd_enumerate(n: usize, json: bool) -> CmdResult {
    let seqs = enumerate_aplus(n).map_err(err)?;
    let stdout = if json {
        to_json(&json!({ "length": n, "count": seqs.len(), "sequences": seqs }))
    } else {
        seqs.iter().map(|s| format!("{s}\n")).collect()
    };
    Ok(Output::ok(stdout))
}

fn write_root_system(rs: &RootSystem2, json: bool) -> CmdResult {
    let report = verify_axioms(rs);
    let count = positive_root_count(rs).map_err(err)?;
    if json {
        let objects: Vec<serde_json::Value> = rs
            .roots
            .iter()
            .enumerate()
            .map(|(a, r)| json!({ "object": a, "positive_roots": rs.positive_roots(a), "roots": r }))
            .collect();
        return Ok(Output::ok(to_json(&json!({
            "scheme": rs.scheme,
            "objects": objects,
            "positive_root_count": count,
            "axioms_hold": report.is_ok(),
            "violations": report.violations,
        }))));
    }
    let mut out = String::new();
    writeln!(out, "{}: {} objects, {count} positive roots each", rs.scheme, rs.roots.len()).unwrap();
    for a in 0..rs.roots.len() {
        let roots: Vec<String> =
            rs.positive_roots(a).iter().map(|r| format!("({},{})", r[0], r[1])).collect();
        writeln!(out, "  a{}: {}", a + 1, roots.join(" ")).unwrap();
    }
    if report.is_ok() {
        writeln!(out, "axioms (R1)-(R4) hold").unwrap();
    } else {
        for v in &report.violations {
            writeln!(out, "{v}").unwrap();
        }
    }
    Ok(Output::ok(out))
}

fn cmd_roots(aplus: Option<&str>, scheme: &SchemeArgs, json: bool) -> CmdResult {
    let rs = match (aplus, scheme.is_given()) {
        (Some(list), false) => build_root_system(&parse_seq(list)?).map_err(err)?,
        (None, true) => realize_root_system(&scheme.decidable()?).map_err(err)?,
        _ => return Err("give either --aplus or one scheme".into()),
    };
    write_root_system(&rs, json)
}

fn write_relation(rel: &CoveringRelation, json: bool) -> String {
    if json {
        return to_json(rel);
    }
    format!("{} is a {}-fold cover of {}\n", rel.cover, rel.fold, rel.base)
}

fn cmd_cover(
    args: &SchemeArgs,
    json: bool,
    k: Option<usize>,
    chain_double: bool,
    universal: bool,
    quotients: bool,
) -> CmdResult {
    let s = args.decidable()?;
    if quotients {
        let r = detect_quotients(&s).map_err(err)?;
        if json {
            return Ok(Output::ok(to_json(&r)));
        }
        let mut out = String::new();
        let spines = r.chain_spines();
        if spines.is_empty() {
            writeln!(out, "no chain quotient").unwrap();
        }
        for sp in spines {
            writeln!(out, "double cover of chain {sp}").unwrap();
        }
        match &r.half_quotient {
            Some(d) => writeln!(out, "double cover of cycle {d}").unwrap(),
            None => writeln!(out, "no half quotient").unwrap(),
        }
        return Ok(Output::ok(out));
    }
    let rel = if let Some(k) = k {
        k_fold_cover(&s, k)
    } else if chain_double {
        chain_double_cover(&s)
    } else if universal {
        universal_cover(&s)
    } else {
        unreachable!("clap requires one mode")
    }
    .map_err(err)?;
    rel.check().map_err(err)?;
    Ok(Output::ok(write_relation(&rel, json)))
}

fn cmd_validate(args: &SchemeArgs, json: bool) -> CmdResult {
    let s = args.raw()?;
    let report = s.validate();
    let code = if report.is_valid() { 0 } else { 2 };
    let stdout = if json {
        to_json(&json!({
            "scheme": s,
            "valid": report.is_valid(),
            "mixed_zero": report.mixed_zero,
            "violations": report.violations,
            "messages": report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        }))
    } else {
        let mut out = String::new();
        if report.is_valid() {
            writeln!(out, "{s}: valid Cartan scheme with {} objects", report.objects).unwrap();
        } else {
            writeln!(out, "{s}: invalid").unwrap();
            for v in &report.violations {
                writeln!(out, "  {v}").unwrap();
            }
        }
        if report.mixed_zero {
            writeln!(out, "  zero and nonzero entries are mixed: no root system exists").unwrap();
        }
        out
    };
    Ok(Output { code, stdout, stderr: String::new() })
}

fn cmd_extremal(n: usize, json: bool) -> CmdResult {
    let e = extremal_scheme(n).map_err(err)?;
    let dc = decide(&e.cycle).map_err(err)?;
    let dh = decide(&e.chain).map_err(err)?;
    let entry = 2 * n as i64 + 1;
    if json {
        return Ok(Output::ok(to_json(&json!({
            "n": n,
            "entry": entry,
            "cycle": { "scheme": e.cycle, "objects": e.cycle.num_objects(), "finite": dc.finite },
            "chain": { "scheme": e.chain, "objects": e.chain.num_objects(), "finite": dh.finite },
            "g2_base_case": e.g2_base_case,
        }))));
    }
    let mut out = String::new();
    writeln!(out, "n = {n}, entry -{entry}").unwrap();
    writeln!(out, "  {} ({} objects): {}", e.cycle, e.cycle.num_objects(), verdict(dc.finite)).unwrap();
    writeln!(out, "  {} ({} objects): {}", e.chain, e.chain.num_objects(), verdict(dh.finite)).unwrap();
    if e.g2_base_case {
        writeln!(out, "  base case: the two-object cycle (1,3)").unwrap();
    }
    Ok(Output::ok(out))
}

fn cmd_stats(args: &SchemeArgs, json: bool, cap: Option<usize>) -> CmdResult {
    let s = args.decidable()?;
    let d = decide(&s).map_err(err)?;
    let cap = cap.unwrap_or_else(|| default_cap(s.num_objects()));
    let bfs = groupoid_bfs(&s, cap).map_err(err)?;
    if json {
        return Ok(Output::ok(to_json(&json!({
            "scheme": s,
            "finite": d.finite,
            "stats": d.stats,
            "groupoid": bfs,
        }))));
    }
    let mut out = String::new();
    write_decision(&mut out, &d, false);
    if let Some(st) = &d.stats {
        writeln!(out, "  m = {}, largest entry {}", st.m, st.max_entry).unwrap();
    }
    write_bfs(&mut out, &bfs);
    Ok(Output::ok(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Output {
        run(std::iter::once("cartan-rank2").chain(args.iter().copied()))
    }

    #[test]
    fn decide_trace() {
        let o = run_args(&["decide", "--cycle", "5,1,2,2", "--trace"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("finite"));
        assert!(o.stdout.contains("(5,1,2,2)² → (4,1,2)² → (3,1)²"), "{}", o.stdout);
    }

    #[test]
    fn strict_exit_code() {
        assert_eq!(run_args(&["decide", "--cycle", "5,1,2,3", "--strict"]).code, 1);
        assert_eq!(run_args(&["decide", "--cycle", "5,1,2,3"]).code, 0);
    }

    #[test]
    fn input_errors() {
        assert_eq!(run_args(&["decide", "--cycle", "1,2,3"]).code, 2);
        assert_eq!(run_args(&["decide", "--cycle", "1,x"]).code, 2);
        assert_eq!(run_args(&["frobnicate"]).code, 2);
        assert_eq!(run_args(&["decide"]).code, 2);
        let o = run_args(&["validate", "--cycle", "1,-1,1,1"]);
        assert_eq!(o.code, 2);
        assert!(o.stdout.contains("(M1)"));
    }

    #[test]
    fn enumerate_three() {
        let o = run_args(&["enumerate", "--length", "3"]);
        assert_eq!(o.stdout, "(1,1,1)\n");
    }

    #[test]
    fn shorthand_documents() {
        assert_eq!(
            parse_scheme_document("cycle:5,1,2,2").unwrap(),
            CartanScheme2::Cycle { char_seq: Seq::from([5, 1, 2, 2]) }
        );
        assert_eq!(
            parse_scheme_document(r#"{"kind":"chain","spine":[1,1]}"#).unwrap(),
            CartanScheme2::Chain { spine: Seq::from([1, 1]) }
        );
        assert!(parse_scheme_document("triangle:1,2").is_err());
    }
}
