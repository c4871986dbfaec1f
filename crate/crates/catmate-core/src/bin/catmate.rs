use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use catmate_core::format::{parse_all, serialize, NamedFunctor, Workspace};
use catmate_core::localization::{default_bound, localize, LocStatus, RelCat};
use catmate_core::suite::{run_suite, Suite, SuiteConfig};
use catmate_core::{Budget, CatError};

const USAGE_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "catmate", version, about = "Check localizations, mates and homotopy colimits of finite categories")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate description files.
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Localize a relative category (or a category at its isomorphisms).
    Localize {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        cat: String,
        /// Word-length bound for the congruence closure.
        #[arg(long)]
        bound: Option<usize>,
        /// Write the localized category here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a check suite and print a report.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        suite: String,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        report: ReportFormat,
        /// Object cap for constructed categories; the morphism cap is ten times this.
        #[arg(long)]
        budget: Option<usize>,
        /// Comma-separated probe category names.
        #[arg(long, value_delimiter = ',')]
        probes: Option<Vec<String>>,
        #[arg(long)]
        bound: Option<usize>,
        /// Comma-separated index shape pairs `I:J`.
        #[arg(long, value_delimiter = ',')]
        shapes: Option<Vec<String>>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

fn load(files: &[PathBuf]) -> Result<Workspace, String> {
    let mut texts = Vec::new();
    for f in files {
        texts.push(std::fs::read_to_string(f).map_err(|e| format!("{}: {e}", f.display()))?);
    }
    parse_all(texts.iter().map(String::as_str)).map_err(|e| match e {
        CatError::Parse { .. } | CatError::Validation { .. } => e.to_string(),
        e => format!("invalid input: {e}"),
    })
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(USAGE_ERROR)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.cmd {
        Cmd::Validate { files } => match load(&files) {
            Ok(ws) => {
                println!(
                    "ok: {} categories, {} relative categories, {} functors, {} transformations, {} adjunctions, {} retractions",
                    ws.categories.len(),
                    ws.relcats.len(),
                    ws.functors.len(),
                    ws.nats.len(),
                    ws.adjunctions.len(),
                    ws.retractions.len()
                );
                ExitCode::SUCCESS
            }
            Err(e) => usage(e),
        },
        Cmd::Localize { files, cat, bound, out } => {
            let ws = match load(&files) {
                Ok(ws) => ws,
                Err(e) => return usage(e),
            };
            let rc = match (ws.relcats.get(&cat), ws.categories.get(&cat)) {
                (Some(r), _) => r.rc.clone(),
                (None, Some(c)) => RelCat::minimal(c.clone()),
                _ => return usage(format!("no relative category or category named `{cat}`")),
            };
            let bound = bound.unwrap_or_else(|| default_bound(&rc));
            let res = localize(&rc, bound);
            let loc = match (&res.status, &res.loc) {
                (LocStatus::Exact, Some(l)) => l,
                _ => {
                    println!("undecided: closure did not stabilize at bound {bound}");
                    return ExitCode::from(2);
                }
            };
            let mut text = format!("# localization of {cat} at bound {bound}\n");
            for m in loc.ho.morphisms() {
                let word = loc.word_name(&loc.normal_forms[m]);
                let word = if word.is_empty() { "(empty word)".to_string() } else { word };
                text.push_str(&format!("# {} = {word}\n", loc.ho.mor_name(m)));
            }
            let mut outw = Workspace::default();
            let ho = Arc::new((*loc.ho).clone());
            outw.categories.insert(ho.name().to_string(), ho.clone());
            let h_name = format!("H_{cat}");
            outw.functors.insert(
                h_name,
                NamedFunctor { src: rc.cat.name().to_string(), tgt: ho.name().to_string(), functor: loc.h.clone() },
            );
            match serialize(&outw) {
                Ok(s) => text.push_str(&s),
                Err(e) => return usage(e),
            }
            match out {
                Some(p) => {
                    if let Err(e) = std::fs::write(&p, text) {
                        return usage(format!("{}: {e}", p.display()));
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Cmd::Check { files, suite, report, budget, probes, bound, shapes } => {
            let suite: Suite = match suite.parse() {
                Ok(s) => s,
                Err(e) => return usage(e),
            };
            let ws = match load(&files) {
                Ok(ws) => ws,
                Err(e) => return usage(e),
            };
            let mut cfg = SuiteConfig { bound, ..SuiteConfig::default() };
            if let Some(n) = budget {
                cfg.bud = Budget { max_objects: n, max_morphisms: n.saturating_mul(10) };
            }
            if let Some(p) = probes {
                cfg.probes = p;
            }
            if let Some(sh) = shapes {
                let mut pairs = Vec::new();
                for s in sh {
                    match s.split_once(':') {
                        Some((i, j)) => pairs.push((i.to_string(), j.to_string())),
                        None => return usage(format!("shape `{s}` is not of the form I:J")),
                    }
                }
                cfg.shapes = pairs;
            }
            let rep = run_suite(&ws, suite, &cfg);
            match report {
                ReportFormat::Json => println!("{}", rep.to_json()),
                ReportFormat::Text => print!("{}", rep.to_text()),
            }
            ExitCode::from(rep.exit_code() as u8)
        }
    }
}
