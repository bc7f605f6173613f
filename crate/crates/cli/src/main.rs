//! `zipchow`: tables of cycle classes of zip strata and verification suites.

mod render;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use zipchow::chowpipeline::verify::{run_suite, Suite, SuiteReport};
use zipchow::chowpipeline::{
    build_coinvariant_model, cycle_class, cycle_classes, expansion_strings, hodge_class, hodge_power_expand,
    CycleReport, CycleReportJson, PipelineError,
};
use zipchow::zipdatum::{Preset, ZipDatum};

#[derive(Parser)]
#[command(name = "zipchow", version, about = "Cycle classes of zip strata in the rational Chow ring")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand)]
enum Command {
    /// One row per stratum: word, length, γ(w), flag class and zip class.
    Table {
        /// `siegel G`, `spin-odd N`, `hilbert-blumenthal D` (or `hb D`), `gl N A`.
        #[arg(num_args = 2..=3, required = true)]
        preset: Vec<String>,
        /// Primes at which to append Hodge-power expansions, e.g. `3,5`.
        #[arg(long, value_delimiter = ',')]
        numeric_p: Vec<i64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full report for a single stratum.
    Class {
        #[arg(num_args = 2..=3, required = true)]
        preset: Vec<String>,
        /// Reduced word such as `s2,s1,s2`, `e`, or one-line notation `[2,-1]`.
        #[arg(long)]
        element: String,
        #[arg(long, value_delimiter = ',')]
        numeric_p: Vec<i64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs property suites; exits 3 if any check fails.
    Verify {
        /// `all`, `operators`, `diagonal`, `chevalley`, `basis` or `hodge`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, value_delimiter = ',', default_values_t = [2i64, 3, 5])]
        numeric_p: Vec<i64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure classes, mapped to exit codes.
enum Outcome {
    Ok,
    Unsupported,
    Failed,
}

fn parse_size(s: &str, what: &str) -> Result<usize> {
    s.parse().with_context(|| format!("{what} must be a non-negative integer, got `{s}`"))
}

fn parse_preset(args: &[String]) -> Result<Preset> {
    let name = args[0].as_str();
    let rest = &args[1..];
    let one = |what: &str| -> Result<usize> {
        match rest {
            [n] => parse_size(n, what),
            _ => bail!("`{name}` takes exactly one size parameter"),
        }
    };
    let preset = match name {
        "siegel" => {
            let g = one("g")?;
            if !(2..=4).contains(&g) {
                bail!("siegel requires 2 <= g <= 4");
            }
            Preset::Siegel { g }
        }
        "spin-odd" => {
            let n = one("n")?;
            if !(2..=4).contains(&n) {
                bail!("spin-odd requires 2 <= n <= 4");
            }
            Preset::SpinOdd { n }
        }
        "hilbert-blumenthal" | "hb" => {
            let d = one("d")?;
            if !(1..=6).contains(&d) {
                bail!("hilbert-blumenthal requires 1 <= d <= 6");
            }
            Preset::HilbertBlumenthal { d }
        }
        "gl" => {
            let [n, a] = rest else {
                bail!("gl takes two parameters: n and a");
            };
            let (n, a) = (parse_size(n, "n")?, parse_size(a, "a")?);
            if !(1..=5).contains(&n) || a > n {
                bail!("gl requires 1 <= n <= 5 and 0 <= a <= n");
            }
            Preset::Gl { n, a }
        }
        _ => bail!("unknown preset `{name}`; expected siegel, spin-odd, hilbert-blumenthal or gl"),
    };
    Ok(preset)
}

fn check_primes(primes: &[i64]) -> Result<()> {
    for &p in primes {
        if p < 2 || (2..p).take_while(|k| k * k <= p).any(|k| p % k == 0) {
            bail!("--numeric-p expects primes, got {p}");
        }
    }
    Ok(())
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    preset: String,
    variables: Vec<String>,
    top_degree: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    hodge_class: Option<String>,
    rows: Vec<CycleReportJson>,
}

/// Rows with Hodge-power expansions `λ^{degree}` at each prime.
fn rows_json(preset: &Preset, zd: &ZipDatum, all: &[CycleReport], shown: &[CycleReport], primes: &[i64]) -> (Option<String>, Vec<CycleReportJson>) {
    let mut rows: Vec<CycleReportJson> = shown.iter().map(CycleReport::to_json).collect();
    if primes.is_empty() {
        return (None, rows);
    }
    let lambda = match hodge_class(zd, Some(preset), all) {
        Ok(l) => l,
        Err(e) => {
            eprintln!("warning: no numeric expansions: {e}");
            return (None, rows);
        }
    };
    for &p0 in primes {
        let model = build_coinvariant_model(zd, p0);
        let mut by_length: BTreeMap<usize, BTreeMap<String, String>> = BTreeMap::new();
        for (row, r) in rows.iter_mut().zip(shown) {
            let exp = match by_length.get(&r.length) {
                Some(e) => e.clone(),
                None => match hodge_power_expand(&model, all, &lambda, zd.d, r.length) {
                    Ok(h) => {
                        let coeffs: Vec<_> = h
                            .coefficients
                            .iter()
                            .map(|(w, c)| (all.iter().find(|x| &x.word == w).unwrap().w.clone(), c.clone()))
                            .collect();
                        let e = expansion_strings(all, &coeffs);
                        by_length.insert(r.length, e.clone());
                        e
                    }
                    Err(e) => {
                        eprintln!("warning: expansion at p = {p0} failed: {e}");
                        continue;
                    }
                },
            };
            row.expansions.insert(p0.to_string(), exp);
        }
    }
    (Some(lambda.lambda.to_string()), rows)
}

fn render(preset: &Preset, zd: &ZipDatum, all: &[CycleReport], shown: &[CycleReport], primes: &[i64], format: Format) -> Result<String> {
    let title = preset.to_string();
    Ok(match format {
        Format::Text => {
            let mut s = render::text_table(&title, shown);
            if !primes.is_empty() {
                let (lambda, rows) = rows_json(preset, zd, all, shown, primes);
                if let Some(l) = lambda {
                    s.push_str(&format!("# Hodge class {l}; expansions of its power of degree d - length(w)\n"));
                }
                for row in rows {
                    for (p0, e) in &row.expansions {
                        let terms: Vec<String> = e.iter().map(|(w, c)| format!("{c}*[{w}]")).collect();
                        s.push_str(&format!("  {} at p = {p0}: {}\n", row.w, terms.join(" + ")));
                    }
                }
            }
            s
        }
        Format::Latex => render::latex_table(&title, shown),
        Format::Json => {
            let (hodge_class, rows) = rows_json(preset, zd, all, shown, primes);
            let table = TableJson {
                preset: title,
                variables: zd.datum.space().names().to_vec(),
                top_degree: zd.d,
                hodge_class,
                rows,
            };
            serde_json::to_string_pretty(&table)? + "\n"
        }
    })
}

fn table(preset_args: &[String], primes: &[i64], format: Format, out: &Option<PathBuf>) -> Result<Outcome> {
    let preset = parse_preset(preset_args)?;
    check_primes(primes)?;
    let zd = preset.zip_datum();
    let reports = cycle_classes(&zd)?;
    emit(out, &render(&preset, &zd, &reports, &reports, primes, format)?)?;
    if reports.iter().any(|r| r.gamma.is_err()) {
        return Ok(Outcome::Unsupported);
    }
    Ok(Outcome::Ok)
}

fn class(preset_args: &[String], element: &str, primes: &[i64], format: Format, out: &Option<PathBuf>) -> Result<Outcome> {
    let preset = parse_preset(preset_args)?;
    check_primes(primes)?;
    let zd = preset.zip_datum();
    let w = zd.datum.parse_elt(element).map_err(|e| anyhow!("bad element `{element}`: {e}"))?;
    let report = match cycle_class(&zd, &w) {
        Ok(r) => r,
        Err(e @ PipelineError::NotInIW { .. }) => bail!("{e}"),
        Err(e) => return Err(e.into()),
    };
    let all = if primes.is_empty() {
        vec![report.clone()]
    } else {
        cycle_classes(&zd)?
    };
    let text = match format {
        Format::Json => {
            let (_, rows) = rows_json(&preset, &zd, &all, std::slice::from_ref(&report), primes);
            serde_json::to_string_pretty(&rows[0])? + "\n"
        }
        _ => render(&preset, &zd, &all, std::slice::from_ref(&report), primes, format)?,
    };
    emit(out, &text)?;
    Ok(if report.gamma.is_err() { Outcome::Unsupported } else { Outcome::Ok })
}

#[derive(Serialize)]
struct VerifySummary {
    seed: u64,
    primes: Vec<i64>,
    passed: bool,
    suites: Vec<SuiteReport>,
}

fn verify(suite: &str, primes: &[i64], seed: u64, out: &Option<PathBuf>) -> Result<Outcome> {
    check_primes(primes)?;
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse().map_err(|e: String| anyhow!(e))?]
    };
    let reports: Vec<SuiteReport> = suites.iter().map(|s| run_suite(*s, seed, primes)).collect();
    for r in &reports {
        for c in &r.checks {
            eprintln!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, r.suite, c.name);
            if let Some(ce) = &c.counterexample {
                eprintln!("    counterexample: {ce}");
            }
        }
    }
    let summary = VerifySummary {
        seed,
        primes: primes.to_vec(),
        passed: reports.iter().all(|r| r.passed),
        suites: reports,
    };
    emit(out, &(serde_json::to_string_pretty(&summary)? + "\n"))?;
    Ok(if summary.passed { Outcome::Ok } else { Outcome::Failed })
}

fn configure_threads() {
    if let Some(n) = std::env::var("ZIPCHOW_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    configure_threads();
    let result = match &cli.command {
        Command::Table { preset, numeric_p, format, out } => table(preset, numeric_p, *format, out),
        Command::Class { preset, element, numeric_p, format, out } => class(preset, element, numeric_p, *format, out),
        Command::Verify { suite, numeric_p, seed, out } => verify(suite, numeric_p, *seed, out),
    };
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Unsupported) => ExitCode::from(2),
        Ok(Outcome::Failed) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
