//! `dlp`: evaluate update semantics on program files, check candidate
//! models, print transformed programs and run property suites.
//!
//! Exit codes: 0 on success (some model found, candidate accepted, all
//! properties hold), 1 on a negative answer, 2 on any input or usage error.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use dlp_engine::interp::LiteralSet;
use dlp_engine::principles::{run_suite, GeneratorParams, PropertyCase, SuiteInput};
use dlp_engine::updates::{check, Transformation};
use dlp_engine::{models, parse_dlp, Alphabet, Dlp, EvalOptions, Interpretation, Program, SemanticsId};

#[derive(Parser, Debug)]
#[command(name = "dlp", version, about = "Update semantics for logic programs with strong and default negation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print every model of the input under a semantics, one per line.
    Models {
        #[command(flatten)]
        common: Common,
        /// Print a JSON object instead of one model per line.
        #[arg(long)]
        json: bool,
    },
    /// Decide whether a candidate interpretation is a model.
    Check {
        #[command(flatten)]
        common: Common,
        /// The candidate, e.g. `{-p, q}`.
        #[arg(long, allow_hyphen_values = true)]
        candidate: String,
        /// Also print the fixpoint iteration the semantics uses.
        #[arg(long)]
        trace: bool,
        /// Print a JSON object instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Print the input after a transformation, in the input format.
    Transform {
        /// `expone` or `exptwo`.
        transformation: Transformation,
        /// Program files, read as consecutive components (stdin if none).
        files: Vec<PathBuf>,
        /// Extra atoms to include in the alphabet.
        #[arg(long, value_parser = parse_alphabet)]
        alphabet: Option<Alphabet>,
    },
    /// Check update principles and properties on given or random inputs.
    Properties {
        #[command(flatten)]
        common: Common,
        /// Number of seeded random instances per property. Used when no
        /// files are given (default 200).
        #[arg(long)]
        random: Option<usize>,
        /// Seed of the first random instance.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Property to check (repeatable); all properties if omitted.
        #[arg(long = "case")]
        cases: Vec<PropertyCase>,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Program files, read as consecutive components (stdin if none).
    files: Vec<PathBuf>,
    /// Semantics: sm, ws, rd, ws-dlp, erd, ews, rd+expone, rd+exptwo,
    /// ws+expone or ws+exptwo.
    #[arg(long, short, default_value = "erd")]
    semantics: SemanticsId,
    /// Extra atoms to include in the alphabet, comma separated.
    #[arg(long, value_parser = parse_alphabet)]
    alphabet: Option<Alphabet>,
    /// Largest number of atoms to enumerate interpretations over.
    #[arg(long, env = "DLP_ENGINE_LIMIT", default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..))]
    limit: u32,
}

impl Common {
    fn options(&self) -> EvalOptions {
        let opts = EvalOptions::with_limit(self.limit as usize);
        match &self.alphabet {
            Some(extra) => opts.with_extra_atoms(extra),
            None => opts,
        }
    }
}

fn parse_alphabet(text: &str) -> Result<Alphabet, String> {
    Alphabet::parse_list(text).map_err(|e| e.to_string())
}

/// Reads the input DLP: files in order, each possibly split into several
/// components by update separators, or stdin when no file is given.
fn read_input(files: &[PathBuf]) -> anyhow::Result<Dlp> {
    if files.is_empty() {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).context("reading standard input")?;
        return parse_dlp(&text).context("<stdin>");
    }
    let mut components: Vec<Program> = Vec::new();
    for path in files {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let dlp = parse_dlp(&text).with_context(|| path.display().to_string())?;
        components.extend(dlp.into_components());
    }
    Ok(Dlp::new(components)?)
}

#[derive(Serialize)]
struct ModelsJson {
    semantics: &'static str,
    models: Vec<Vec<String>>,
    count: usize,
}

#[derive(Serialize)]
struct CheckJson {
    semantics: &'static str,
    candidate: Vec<String>,
    is_model: bool,
    rejected: Option<Vec<String>>,
}

fn literals(j: &Interpretation) -> Vec<String> {
    j.iter().map(ToString::to_string).collect()
}

fn render_set(s: &LiteralSet) -> String {
    let items: Vec<String> = s.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn cmd_models(common: &Common, json: bool) -> anyhow::Result<ExitCode> {
    let dlp = read_input(&common.files)?;
    let found = models(&dlp, common.semantics, &common.options())?;
    if json {
        let out = ModelsJson {
            semantics: common.semantics.name(),
            models: found.models().iter().map(literals).collect(),
            count: found.len(),
        };
        println!("{}", serde_json::to_string(&out)?);
    } else {
        for line in found.render() {
            println!("{line}");
        }
    }
    Ok(if found.is_empty() { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn cmd_check(common: &Common, candidate: &str, trace: bool, json: bool) -> anyhow::Result<ExitCode> {
    let dlp = read_input(&common.files)?;
    let j = Interpretation::parse(candidate).context("candidate")?;
    let verdict = check(&dlp, common.semantics, &j, &common.options())?;
    let rejected: Option<Vec<(String, String)>> = verdict.rejected.as_ref().map(|set| {
        set.iter().map(|at| (at.to_string(), verdict.evaluated.rule(at).to_string())).collect()
    });
    if json {
        let out = CheckJson {
            semantics: common.semantics.name(),
            candidate: literals(&j),
            is_model: verdict.is_model,
            rejected: rejected.map(|rs| rs.into_iter().map(|(_, rule)| rule).collect()),
        };
        println!("{}", serde_json::to_string(&out)?);
    } else {
        let mut out = String::new();
        writeln!(out, "{} is {}a model under {}", j, if verdict.is_model { "" } else { "not " }, common.semantics)?;
        if let Some(rs) = &rejected {
            writeln!(out, "rejected rules: {}", rs.len())?;
            for (at, rule) in rs {
                writeln!(out, "  {at}  {rule}")?;
            }
        }
        if let Some(defaults) = &verdict.defaults {
            let items: Vec<String> = defaults.iter().map(ToString::to_string).collect();
            writeln!(out, "default assumptions: {}", items.join(" "))?;
        }
        if let Some(mapping) = &verdict.level_mapping {
            writeln!(out, "level mapping: {mapping}")?;
        }
        if trace {
            for (k, stage) in verdict.trace.iter().enumerate() {
                writeln!(out, "T^{k} = {}", render_set(stage))?;
            }
        }
        print!("{out}");
    }
    Ok(if verdict.is_model { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_transform(
    transformation: Transformation,
    files: &[PathBuf],
    alphabet: Option<&Alphabet>,
) -> anyhow::Result<ExitCode> {
    let dlp = read_input(files)?;
    let full = match alphabet {
        Some(extra) => dlp.alphabet().union(extra),
        None => dlp.alphabet(),
    };
    let out = transformation.apply(&dlp, &full).to_string();
    if !out.is_empty() {
        println!("{out}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_properties(
    common: &Common,
    random: Option<usize>,
    seed: u64,
    cases: &[PropertyCase],
) -> anyhow::Result<ExitCode> {
    let cases: Vec<PropertyCase> = if cases.is_empty() { PropertyCase::ALL.to_vec() } else { cases.to_vec() };
    let input = match (random, common.files.is_empty()) {
        (Some(_), false) => bail!("give either input files or --random, not both"),
        (Some(count), true) => SuiteInput::Random { count, seed, params: GeneratorParams::default() },
        (None, true) => SuiteInput::Random { count: 200, seed, params: GeneratorParams::default() },
        (None, false) => SuiteInput::Given(
            common.files.iter().map(|f| read_input(std::slice::from_ref(f))).collect::<anyhow::Result<_>>()?,
        ),
    };
    let report = run_suite(common.semantics, &cases, &input, &common.options())?;
    print!("{report}");
    Ok(if report.is_ok() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match &cli.command {
        Command::Models { common, json } => cmd_models(common, *json),
        Command::Check { common, candidate, trace, json } => cmd_check(common, candidate, *trace, *json),
        Command::Transform { transformation, files, alphabet } => {
            cmd_transform(*transformation, files, alphabet.as_ref())
        }
        Command::Properties { common, random, seed, cases } => cmd_properties(common, *random, *seed, cases),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
