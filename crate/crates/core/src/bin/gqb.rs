use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gq_bialgebra::eval::{self, Backend, CompareReport, EvalReport, Model, Verdict, Witness};
use gq_bialgebra::finite_model::Universe;
use gq_bialgebra::grid::{run_grid, GridConfig, GridReport};
use gq_bialgebra::lang::{Reading, SentenceAst};
use gq_bialgebra::model_file::load_model;
use gq_bialgebra::rel::{check_bialgebra_laws, check_snake_equations, DEFAULT_LAW_CAP};
use gq_bialgebra::vect::check_vect_laws;
use gq_bialgebra::{Error, Result};

/// Evaluate quantified sentences in finite models.
#[derive(Parser)]
#[command(name = "gqb", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a sentence under the chosen readings and backends.
    Eval {
        model: PathBuf,
        sentence: String,
        /// Defaults to both linear readings (one reading for intransitives).
        #[arg(long, alias = "reading", value_delimiter = ',', value_parser = parse_reading)]
        readings: Vec<Reading>,
        #[arg(long, alias = "backend", value_delimiter = ',', value_parser = parse_backend, default_value = "oracle,categorical")]
        backends: Vec<Backend>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate every reading on every backend and compare the readings.
    Compare {
        model: PathBuf,
        sentence: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the bialgebra and snake laws on P(U).
    CheckLaws {
        #[arg(long, conflicts_with = "model", required_unless_present = "model")]
        size: Option<usize>,
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the syntax tree of a sentence.
    Parse {
        model: PathBuf,
        sentence: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the pairs (A, X) of a quantifier's relation on the model's universe.
    Table {
        model: PathBuf,
        /// A quantifier defined in the model or a builtin such as `at_least(2)`.
        quantifier: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Cross-check the linear readings on a grid of generated models.
    Grid {
        #[arg(long, default_value_t = 3)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn parse_reading(s: &str) -> std::result::Result<Reading, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_backend(s: &str) -> std::result::Result<Backend, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn set(names: &[String]) -> String {
    format!("{{{}}}", names.join(", "))
}

fn reading_lines(out: &mut String, report: &EvalReport) {
    let mut readings: Vec<Reading> = report.outcomes.iter().map(|o| o.reading).collect();
    readings.dedup();
    for r in readings {
        let os: Vec<_> = report.outcomes.iter().filter(|o| o.reading == r).collect();
        let agreed = os.iter().all(|o| o.truth == os[0].truth);
        let mut line = format!("{:<13} ", r.as_str());
        if agreed {
            line.push_str(if os[0].truth { "true " } else { "false" });
        } else {
            line.push_str("DISAGREE");
        }
        for o in &os {
            let _ = write!(line, "  {}={}", o.backend, o.truth);
            if let Some(c) = o.scalar {
                let _ = write!(line, " scalar={c}");
            }
        }
        for o in &os {
            match &o.witness {
                Some(Witness::Scope { set: s }) => {
                    let _ = write!(line, "  scope={}", set(s));
                }
                Some(Witness::Branching { x, y }) => {
                    let _ = write!(line, "  witness=({}, {})", set(x), set(y));
                }
                None => {}
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    for n in &report.notes {
        let _ = writeln!(out, "note: {n}");
    }
}

fn eval_text(report: &EvalReport) -> String {
    let mut out = format!("sentence: {}\n", report.sentence);
    reading_lines(&mut out, report);
    out
}

fn compare_text(c: &CompareReport) -> String {
    let mut out = format!("sentence: {}\n", c.report.sentence);
    if let Some(case) = c.branching_case {
        let _ = writeln!(out, "branching case: {case}");
    }
    reading_lines(&mut out, &c.report);
    let _ = writeln!(
        out,
        "readings {}",
        match c.readings {
            Verdict::Agree => "AGREE",
            Verdict::Differ => "DIFFER",
        }
    );
    out
}

fn disagreement(report: &EvalReport) -> Result<()> {
    match report.notes.iter().find(|n| n.starts_with("backend disagreement")) {
        Some(n) => Err(Error::BackendDisagreement(n.clone())),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct LawLine {
    instantiation: &'static str,
    law: &'static str,
    /// `pass`, `fail` or `skipped`.
    result: &'static str,
}

#[derive(Serialize)]
struct LawReport {
    size: usize,
    laws: Vec<LawLine>,
    notes: Vec<String>,
}

fn check_laws(size: usize) -> Result<LawReport> {
    let u = Universe::anonymous(size)?;
    let rel_b = check_bialgebra_laws(&u)?;
    let rel_s = check_snake_equations(&u)?;
    let verdict = |ok: bool| if ok { "pass" } else { "fail" };
    let mut laws: Vec<LawLine> = rel_b
        .named()
        .into_iter()
        .chain(rel_s.named())
        .map(|(law, ok)| LawLine {
            instantiation: "rel",
            law,
            result: verdict(ok),
        })
        .collect();
    let mut notes = Vec::new();
    match check_vect_laws(&u) {
        Ok(v) => laws.extend(
            v.bialgebra
                .named()
                .into_iter()
                .chain(v.snakes.named())
                .map(|(law, ok)| LawLine {
                    instantiation: "vect",
                    law,
                    result: verdict(ok),
                }),
        ),
        Err(e @ Error::CapExceeded { .. }) => {
            laws.extend(rel_b.named().into_iter().chain(rel_s.named()).map(|(law, _)| LawLine {
                instantiation: "vect",
                law,
                result: "skipped",
            }));
            notes.push(format!("vect: {e}"));
        }
        Err(e) => return Err(e),
    }
    Ok(LawReport { size, laws, notes })
}

fn laws_text(r: &LawReport) -> String {
    let mut out = format!("universe size {}\n", r.size);
    for l in &r.laws {
        let _ = writeln!(out, "{:<5} {:<12} {}", l.instantiation, l.law, l.result.to_uppercase());
    }
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

fn ast_text(ast: &SentenceAst) -> String {
    match ast {
        SentenceAst::Transitive { d1, n1, v, d2, n2 } => {
            format!("transitive d1={d1} n1={n1} v={v} d2={d2} n2={n2}\n")
        }
        SentenceAst::Intransitive { d, n, vp } => format!("intransitive d={d} n={n} vp={vp}\n"),
    }
}

#[derive(Serialize)]
struct TableReport {
    quantifier: String,
    universe: Vec<String>,
    pairs: Vec<[Vec<String>; 2]>,
}

fn table(m: &Model, name: &str) -> Result<TableReport> {
    let q = m.quantifier(name)?;
    let pairs = q
        .as_table(m.universe())?
        .into_iter()
        .map(|(a, x)| [a.names(), x.names()])
        .collect();
    Ok(TableReport {
        quantifier: q.name().to_string(),
        universe: m.universe().entities().to_vec(),
        pairs,
    })
}

fn grid_text(r: &GridReport) -> String {
    let mut out = format!(
        "grid size {} seed {} ({}): {} models, {} cases, {} disagreements\n",
        r.size,
        r.seed,
        if r.exhaustive { "exhaustive" } else { "sampled" },
        r.models,
        r.cases,
        r.disagreement_count
    );
    for d in &r.disagreements {
        let _ = writeln!(
            out,
            "  n1={:#b} n2={:#b} verb={:#b} {} {} {}: oracle={} categorical={} vector={}",
            d.model.n1, d.model.n2, d.model.verb, d.d1, d.d2, d.reading, d.oracle, d.categorical, d.vector
        );
    }
    out
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce(&T) -> String) {
    print!(
        "{}",
        match format {
            Format::Text => text(value),
            Format::Json => json(value),
        }
    );
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Eval {
            model,
            sentence,
            readings,
            backends,
            format,
        } => {
            let m = load_model(&model)?;
            let readings = if !readings.is_empty() {
                readings
            } else if matches!(m.parse(&sentence)?, SentenceAst::Intransitive { .. }) {
                vec![Reading::SubjectWide]
            } else {
                Reading::LINEAR.to_vec()
            };
            let report = eval::evaluate(&m, &sentence, &readings, &backends)?;
            emit(format, &report, eval_text);
            disagreement(&report)
        }
        Command::Compare {
            model,
            sentence,
            format,
        } => {
            let m = load_model(&model)?;
            let c = eval::compare(&m, &sentence)?;
            emit(format, &c, compare_text);
            disagreement(&c.report)
        }
        Command::CheckLaws { size, model, format } => {
            let size = match (size, model) {
                (Some(n), _) => n,
                (None, Some(p)) => load_model(&p)?.universe().size(),
                (None, None) => unreachable!("clap requires one of them"),
            };
            // Fail before building anything when even the relational check is out of reach.
            if size > DEFAULT_LAW_CAP {
                return Err(Error::CapExceeded {
                    what: "law check universe size",
                    actual: size,
                    cap: DEFAULT_LAW_CAP,
                });
            }
            let r = check_laws(size)?;
            emit(format, &r, laws_text);
            Ok(())
        }
        Command::Parse {
            model,
            sentence,
            format,
        } => {
            let m = load_model(&model)?;
            let ast = m.parse(&sentence)?;
            emit(format, &ast, ast_text);
            Ok(())
        }
        Command::Table {
            model,
            quantifier,
            format,
        } => {
            let m = load_model(&model)?;
            let t = table(&m, &quantifier)?;
            emit(format, &t, |t| {
                let mut out = format!("{} on {}\n", t.quantifier, set(&t.universe));
                for [a, x] in &t.pairs {
                    let _ = writeln!(out, "{} {}", set(a), set(x));
                }
                out
            });
            Ok(())
        }
        Command::Grid {
            size,
            seed,
            samples,
            jobs,
            format,
        } => {
            let r = run_grid(&GridConfig {
                size,
                seed,
                samples,
                jobs,
            })?;
            emit(format, &r, grid_text);
            if r.disagreement_count > 0 {
                return Err(Error::BackendDisagreement(format!(
                    "{} grid cases disagree",
                    r.disagreement_count
                )));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gqb: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
