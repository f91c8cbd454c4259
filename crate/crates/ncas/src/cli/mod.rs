//! Command-line surface: build, verify, tabulate and export the scheme families.
//!
//! Exit codes: 0 verified, 1 usage error, 2 verification failure, 3 precondition failure.

mod schemefile;

pub use schemefile::{Provenance, SchemeFile, VERSION};

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{CycMatrix, CycScalar, FiniteField};
use crate::builders::{
    bgw_scheme, bgw_sgdd_params, fusion_bgw, fusion_gh, gh_scheme, stated_fused_q_bgw, stated_fused_q_gh, BgwScheme, Fusion,
};
use crate::designs::{bgw_build, gh_build, latin_build, verify_bgw, verify_gh, verify_latin, verify_sgdd};
use crate::error::{Error, ErrorClass, FileError};
use crate::oracle::{oracle_closure, oracle_spectrum};
use crate::schemes::{bm_search, AssociationScheme};
use crate::spectra::{wedderburn_bgw, wedderburn_gh, Eigensystem};

/// Environment variable naming the directory for relative `--out` paths.
pub const OUTPUT_DIR_ENV: &str = "NCAS_OUTPUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "ncas", version, about = "Noncommutative association schemes from BGW and GH matrices")]
pub struct Cli {
    /// Seed for the numeric oracle.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build and verify a scheme.
    Build {
        #[command(subcommand)]
        family: BuildFamily,
    },
    /// Re-verify a serialized scheme.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Also cross-check with the independent oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Character table, eigenmatrices and multiplicities.
    Table {
        #[arg(long)]
        q: usize,
        #[arg(long, conflicts_with = "gh")]
        m: Option<usize>,
        #[arg(long)]
        gh: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// The symmetric fusion and its second eigenmatrix; BGW when `--m` is given, GH otherwise.
    Fusion {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        m: Option<usize>,
        /// Search for a canonical-partition certificate.
        #[arg(long)]
        check_bm: bool,
    },
    /// Build and verify design ingredients on their own.
    Designs {
        #[command(subcommand)]
        kind: DesignKind,
    },
}

#[derive(Subcommand, Debug)]
pub enum BuildFamily {
    BgwScheme {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    GhScheme {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum DesignKind {
    Bgw {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        m: usize,
    },
    Gh {
        #[arg(long)]
        q: usize,
    },
    Latin {
        #[arg(long)]
        v: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// Result of a command: JSON payload, plain-text rendering and exit code.
struct Report {
    json: Value,
    text: String,
    code: i32,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report { json, text, code: 0 }
    }
}

/// Structured description of an error, as printed on stderr.
pub fn error_json(e: &Error) -> Value {
    let class = e.class();
    json!({
        "error": e.kind(),
        "class": format!("{class:?}").to_lowercase(),
        "exit_code": class.exit_code(),
        "message": e.to_string(),
        "witness": format!("{e:?}"),
    })
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { ErrorClass::Usage.exit_code() } else { 0 };
            if code == 0 {
                let _ = write!(out, "{e}");
            } else {
                let _ = writeln!(err, "{}", error_json(&Error::Usage(e.to_string())));
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok(r) => {
            let _ = if cli.json { writeln!(out, "{}", r.json) } else { write!(out, "{}", r.text) };
            r.code
        }
        Err(e) => {
            let _ = writeln!(err, "{}", error_json(&e));
            e.class().exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<Report, Error> {
    match &cli.command {
        Command::Build { family } => build(family),
        Command::Verify { input, oracle } => verify(input, *oracle, cli.seed),
        Command::Table { q, m, gh, format } => table(*q, *m, *gh, *format),
        Command::Fusion { q, m, check_bm } => fusion(*q, *m, *check_bm),
        Command::Designs { kind } => designs(kind),
    }
}

fn output_path(p: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if p.is_relative() => PathBuf::from(dir).join(p),
        _ => p.to_path_buf(),
    }
}

fn summary(s: &AssociationScheme) -> (Value, String) {
    let class = s.classify().name();
    let vals: Vec<String> = s.valencies().iter().map(u64::to_string).collect();
    let json = json!({
        "vertices": s.vertices(),
        "class": s.classes(),
        "classification": class,
        "commutative": s.is_commutative(),
        "labels": s.labels(),
        "valencies": s.valencies(),
    });
    let text = format!("class={}, vertices={}, {class}, valencies={}", s.classes(), s.vertices(), vals.join(","));
    (json, text)
}

fn build(family: &BuildFamily) -> Result<Report, Error> {
    let (s, prov, out, name) = match family {
        BuildFamily::BgwScheme { q, m, out } => {
            let b = bgw_scheme(*q, *m)?;
            let prov = Provenance { family: "bgw".into(), q: Some(*q), m: Some(*m), seed: None };
            (b.scheme, prov, out, format!("bgw-scheme q={q} m={m}"))
        }
        BuildFamily::GhScheme { q, out } => {
            let g = gh_scheme(*q)?;
            let prov = Provenance { family: "gh".into(), q: Some(*q), m: None, seed: None };
            (g.scheme, prov, out, format!("gh-scheme q={q}"))
        }
    };
    let (mut json, text) = summary(&s);
    json["family"] = json!(prov.family);
    json["verified"] = json!(true);
    if let Some(p) = out {
        let path = output_path(p);
        SchemeFile::from_scheme(&s, Some(prov)).write(&path)?;
        json["out"] = json!(path.display().to_string());
    }
    Ok(Report::ok(json, format!("{name}: {text}\n")))
}

fn family_eigensystem(prov: &Provenance, s: &AssociationScheme) -> Result<Option<Eigensystem>, Error> {
    Ok(match (prov.family.as_str(), prov.q, prov.m) {
        ("bgw", Some(q), Some(m)) => Some(wedderburn_bgw(s, q, m)?),
        ("gh", Some(q), _) => Some(wedderburn_gh(s, &FiniteField::of_order(q as u64)?)?),
        _ => None,
    })
}

fn verify(input: &Path, oracle: bool, seed: u64) -> Result<Report, Error> {
    let file = SchemeFile::read(input)?;
    let s = file.to_scheme()?;
    let (mut json, text) = summary(&s);
    json["verified"] = json!(true);
    let mut text = format!("{}: {text}\n", input.display());
    let mut code = 0;
    if oracle {
        let t = oracle_closure(s.basis())?;
        let disagreement = t.first_disagreement(|i, j, k| s.p(i, j, k));
        let spec = oracle_spectrum(s.basis(), seed)?;
        let exact = match &file.provenance {
            Some(p) => family_eigensystem(p, &s)?.map(|e| {
                let mut b: Vec<(usize, usize)> = e.blocks().iter().map(|b| (b.degree, b.multiplicity)).collect();
                b.sort_unstable();
                b
            }),
            None => None,
        };
        let spectrum_ok = exact.as_ref().map_or(true, |e| *e == spec.blocks);
        if disagreement.is_some() || !spectrum_ok {
            code = ErrorClass::Verification.exit_code();
        }
        text += &format!(
            "oracle tensor {}; spectrum {:?} (seed {}, attempt {}){}\n",
            if disagreement.is_none() { "agrees" } else { "DISAGREES" },
            spec.blocks,
            spec.seed,
            spec.attempts,
            match &exact {
                Some(e) if *e == spec.blocks => " matches exact".to_string(),
                Some(e) => format!(" DIFFERS from exact {e:?}"),
                None => String::new(),
            }
        );
        json["oracle"] = json!({
            "tensor_agrees": disagreement.is_none(),
            "first_disagreement": disagreement,
            "spectrum": spec,
            "exact_blocks": exact,
        });
    }
    Ok(Report { json, text, code })
}

fn rows(m: &CycMatrix) -> Vec<Vec<CycScalar>> {
    m.to_rows()
}

fn strings(row: &[CycScalar]) -> impl Iterator<Item = String> + '_ {
    row.iter().map(|x| x.to_string())
}

fn table(q: usize, m: Option<usize>, gh: bool, format: Format) -> Result<Report, Error> {
    let (eig, family) = match (m, gh) {
        (Some(m), false) => {
            let b = bgw_scheme(q, m)?;
            (wedderburn_bgw(&b.scheme, q, m)?, json!({"family": "bgw", "q": q, "m": m}))
        }
        (None, true) => {
            let g = gh_scheme(q)?;
            (wedderburn_gh(&g.scheme, &g.field)?, json!({"family": "gh", "q": q}))
        }
        _ => return Err(Error::Usage("table needs exactly one of --m M or --gh".into())),
    };
    let t = eig.character_table();
    let labels: Vec<String> = eig.blocks().iter().map(|b| b.label.clone()).collect();
    let duality = eig.check_pq_duality();
    let json = json!({
        "scheme": family,
        "relations": eig.labels(),
        "blocks": eig.blocks(),
        "units": eig.unit_names(),
        "character_table": t,
        "weighted_character_table": eig.weighted_character_table(),
        "p_matrix": rows(eig.p_matrix()),
        "q_matrix": rows(eig.q_matrix()),
        "duality": duality,
    });
    let text = match format {
        Format::Json => format!("{json:#}\n"),
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
            let header = |names: &[String]| -> Vec<String> { ["matrix", "row"].iter().map(|s| s.to_string()).chain(names.iter().cloned()).collect() };
            let csv_err = |e: csv::Error| Error::File(FileError::Malformed(e.to_string()));
            w.write_record(header(eig.labels())).map_err(csv_err)?;
            for (label, row) in labels.iter().zip(&t) {
                w.write_record(["T".to_string(), label.clone()].into_iter().chain(strings(row))).map_err(csv_err)?;
            }
            for (name, row) in eig.unit_names().iter().zip(rows(eig.p_matrix())) {
                w.write_record(["P".to_string(), name.clone()].into_iter().chain(strings(&row))).map_err(csv_err)?;
            }
            w.write_record(header(eig.unit_names())).map_err(csv_err)?;
            for (label, row) in eig.labels().iter().zip(rows(eig.q_matrix())) {
                w.write_record(["Q".to_string(), label.clone()].into_iter().chain(strings(&row))).map_err(csv_err)?;
            }
            for b in eig.blocks() {
                w.write_record(["m".to_string(), b.label.clone(), b.multiplicity.to_string()]).map_err(csv_err)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Error::Usage(e.to_string()))?).expect("csv is utf-8")
        }
    };
    let code = if duality.holds() { 0 } else { ErrorClass::Verification.exit_code() };
    Ok(Report { json, text, code })
}

fn columns(rows: &[Vec<CycScalar>]) -> Vec<Vec<CycScalar>> {
    (0..rows.first().map_or(0, |r| r.len())).map(|c| rows.iter().map(|r| r[c].clone()).collect()).collect()
}

fn fusion(q: usize, m: Option<usize>, check_bm: bool) -> Result<Report, Error> {
    let (f, stated, family): (Fusion, _, _) = match m {
        Some(m) => {
            let b: BgwScheme = bgw_scheme(q, m)?;
            (fusion_bgw(&b)?, stated_fused_q_bgw(q, m), json!({"family": "bgw", "q": q, "m": m}))
        }
        None => {
            let g = gh_scheme(q)?;
            let f = fusion_gh(&g)?;
            (f, stated_fused_q_gh(&g.field), json!({"family": "gh", "q": q}))
        }
    };
    let qm = rows(f.q_matrix());
    let got = columns(&qm);
    let unmatched: Vec<usize> = columns(&stated).iter().enumerate().filter(|(_, c)| !got.contains(c)).map(|(i, _)| i).collect();
    let (summary_json, summary_text) = summary(&f.scheme);
    let mut json = json!({
        "scheme": family,
        "partition": f.partition.blocks(),
        "fused": summary_json,
        "idempotents": f.eigensystem.unit_names(),
        "multiplicities": f.eigensystem.multiplicities(),
        "q_matrix": qm,
        "stated_columns_unmatched": unmatched,
    });
    let mut text = format!("fusion {}: {summary_text}\n", f.scheme.labels().join(" "));
    for (label, row) in f.scheme.labels().iter().zip(&qm) {
        text += &format!("Q[{label}] = {}\n", strings(row).collect::<Vec<_>>().join(", "));
    }
    if !unmatched.is_empty() {
        text += &format!("displayed Q columns not reproduced: {unmatched:?}\n");
    }
    let mut code = 0;
    if check_bm {
        let cert = bm_search(&f.parent, &f.partition)?;
        text += &match &cert {
            Some(c) => format!("canonical partition found: sum f^2 = {}\n", c.sum_f_squared()),
            None => "no canonical partition with sum f^2 = e+1\n".to_string(),
        };
        if cert.is_none() {
            code = ErrorClass::Verification.exit_code();
        }
        json["certificate"] = json!(cert);
    }
    Ok(Report { json, text, code })
}

fn designs(kind: &DesignKind) -> Result<Report, Error> {
    match kind {
        DesignKind::Bgw { q, m } => {
            let field = FiniteField::of_order(*q as u64)?;
            let w = bgw_build(&field, *m as u32)?;
            let d = verify_bgw(&w)?;
            let b = bgw_scheme(*q, *m)?;
            let p = bgw_sgdd_params(*q, *m);
            let mut failures = Vec::new();
            for (l, n) in b.n_mats.iter().enumerate() {
                if let Some(wit) = verify_sgdd(n, &p)? {
                    failures.push(format!("N_{l}: {wit:?}"));
                }
            }
            let code = if failures.is_empty() { 0 } else { ErrorClass::Verification.exit_code() };
            let json = json!({
                "design": "bgw", "q": q, "m": m,
                "v": d.v, "k": d.k, "lambda": d.lambda, "multiplicity": d.multiplicity,
                "symmetric": d.symmetric, "zero_diagonal": d.zero_diagonal,
                "sgdd": [p.v, p.k, p.m, p.n, p.lambda1, p.lambda2],
                "sgdd_failures": failures,
            });
            let text = format!(
                "BGW({}, {}, {}) over Z_{m}: symmetric={}, zero diagonal={}; N_l are SGDD{:?}: {}\n",
                d.v,
                d.k,
                d.lambda,
                d.symmetric,
                d.zero_diagonal,
                (p.v, p.k, p.m, p.n, p.lambda1, p.lambda2),
                if code == 0 { "ok" } else { "FAILED" }
            );
            Ok(Report { json, text, code })
        }
        DesignKind::Gh { q } => {
            let field = FiniteField::of_order(*q as u64)?;
            let d = verify_gh(&gh_build(&field))?;
            let json = json!({"design": "gh", "q": q, "v": d.v, "k": d.k, "lambda": d.lambda, "multiplicity": d.multiplicity});
            Ok(Report::ok(json, format!("GH({q}, 1) over GF({q})+: v={}, lambda={}\n", d.v, d.lambda)))
        }
        DesignKind::Latin { v } => {
            let l = latin_build(*v)?;
            verify_latin(&l)?;
            let cells: Vec<Vec<String>> = (0..*v).map(|r| (0..*v).map(|c| l.get(r, c).to_string()).collect()).collect();
            let text = cells.iter().map(|r| r.join(" ")).collect::<Vec<_>>().join("\n") + "\n";
            Ok(Report::ok(json!({"design": "latin", "order": v, "cells": cells}), text))
        }
    }
}
