use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use twb_core::{
    bar_parity_per_component, braid_with_trace, closure_diagram, expand_word, full_presentation, gauss_code,
    gauss_equivalent, hyperoctahedral_image, markov_equivalent_bounded, reduced_presentation, sigma_exponent_sum,
    BraidWord, Category, DerivationChecker, DerivedVerdict, Family, MarkovBounds, MarkovVerdict, MorseDiagram,
    SearchBounds,
};

/// Twisted and flat twisted braids: braiding, closures, Gauss codes,
/// presentation checks and Markov equivalence.
#[derive(Parser)]
#[command(name = "twb", version)]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Config {
    /// Longest word a search may visit (default: |w1| + |w2| + 8).
    #[arg(long, global = true, env = "TWB_MAX_LENGTH", value_parser = clap::value_parser!(u64).range(1..))]
    max_length: Option<u64>,
    /// Words visited per search side before giving up.
    #[arg(long, global = true, env = "TWB_MAX_NODES", default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_nodes: u64,
    /// Strand ceiling for Markov search (default: max(n1, n2) + 2).
    #[arg(long, global = true, env = "TWB_MAX_STRANDS", value_parser = clap::value_parser!(u64).range(1..))]
    max_strands: Option<u64>,
    /// Reject input words of any other category.
    #[arg(long, global = true, env = "TWB_CATEGORY")]
    category: Option<String>,
    /// Write the main result here instead of standard output.
    #[arg(short, long, global = true, env = "TWB_OUTPUT")]
    output: Option<PathBuf>,
    /// Report timings and search sizes on standard error.
    #[arg(short, long, global = true, env = "TWB_VERBOSE")]
    verbose: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Turn a Morse diagram into a braid word.
    Braid {
        diagram: PathBuf,
        /// Write the elimination trace as JSON lines.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Close a braid word into a Morse diagram.
    Close { word: PathBuf },
    /// Print the twisted Gauss code of a Morse diagram.
    Gauss { diagram: PathBuf },
    /// Compare the Gauss codes of two Morse diagrams.
    GaussEq { first: PathBuf, second: PathBuf },
    /// Cancel adjacent inverse pairs.
    Reduce { word: PathBuf },
    /// Rewrite a word in the reduced generators.
    Expand { word: PathBuf },
    /// Derive every full relation from the reduced presentation.
    VerifyPresentation {
        /// TB_reduced or FT_reduced (the full names are accepted too).
        family: String,
        n: usize,
        /// Print the rewrite path of each proved relation.
        #[arg(long)]
        paths: bool,
    },
    /// Quotient invariants of a word.
    Invariants { word: PathBuf },
    /// Search for a Markov equivalence between two words.
    MarkovEq { first: PathBuf, second: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_word(path: &Path, config: &Config) -> Result<BraidWord> {
    let w = BraidWord::from_file_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    if let Some(c) = &config.category {
        let want: Category = c.parse().with_context(|| format!("category {c:?}"))?;
        if w.category() != want {
            bail!("{} holds a {} word, expected {want}", path.display(), w.category());
        }
    }
    Ok(w)
}

fn load_diagram(path: &Path) -> Result<MorseDiagram> {
    let d = MorseDiagram::from_file_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    d.validate().with_context(|| format!("validating {}", path.display()))?;
    Ok(d)
}

fn emit(config: &Config, text: &str) -> Result<()> {
    match &config.output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn verdict(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let config = &cli.config;
    let started = Instant::now();
    let code = match &cli.command {
        Command::Braid { diagram, trace } => {
            let d = load_diagram(diagram)?;
            let out = braid_with_trace(&d)?;
            if let Some(p) = trace {
                let mut lines = String::new();
                for step in &out.trace {
                    lines.push_str(&serde_json::to_string(step)?);
                    lines.push('\n');
                }
                fs::write(p, lines).with_context(|| format!("writing {}", p.display()))?;
            }
            if config.verbose {
                let dec = &out.decomposition;
                eprintln!(
                    "valid crossings: {} ({} classical), free up-arcs: {}",
                    dec.valid_crossings.len(),
                    dec.classical_valid(),
                    dec.free_up_arcs.len()
                );
            }
            emit(config, &out.word.to_file_string())?;
            ExitCode::SUCCESS
        }
        Command::Close { word } => {
            let w = load_word(word, config)?;
            emit(config, &closure_diagram(&w).to_file_string())?;
            ExitCode::SUCCESS
        }
        Command::Gauss { diagram } => {
            let g = gauss_code(&load_diagram(diagram)?)?;
            emit(config, &g.to_text())?;
            ExitCode::SUCCESS
        }
        Command::GaussEq { first, second } => {
            let a = gauss_code(&load_diagram(first)?)?;
            let b = gauss_code(&load_diagram(second)?)?;
            let same = gauss_equivalent(&a, &b);
            emit(config, if same { "equal\n" } else { "different\n" })?;
            verdict(same)
        }
        Command::Reduce { word } => {
            emit(config, &load_word(word, config)?.free_reduce().to_file_string())?;
            ExitCode::SUCCESS
        }
        Command::Expand { word } => {
            emit(config, &expand_word(&load_word(word, config)?).to_file_string())?;
            ExitCode::SUCCESS
        }
        Command::VerifyPresentation { family, n, paths } => verify_presentation(config, family, *n, *paths)?,
        Command::Invariants { word } => {
            let w = load_word(word, config)?;
            emit(config, &invariants_report(&w))?;
            ExitCode::SUCCESS
        }
        Command::MarkovEq { first, second } => {
            let a = load_word(first, config)?;
            let b = load_word(second, config)?;
            let mut bounds = MarkovBounds::for_pair(&a, &b);
            if let Some(s) = config.max_strands {
                bounds.max_strands = s as usize;
            }
            if let Some(l) = config.max_length {
                bounds.max_length = l as usize;
            }
            bounds.max_nodes = config.max_nodes as usize;
            match markov_equivalent_bounded(&a, &b, bounds)? {
                MarkovVerdict::Equal(path) => {
                    emit(config, &format!("equal in {} moves\n{path}", path.len()))?;
                    ExitCode::SUCCESS
                }
                MarkovVerdict::Unknown { explored } => {
                    emit(config, "unknown\n")?;
                    if config.verbose {
                        eprintln!("explored {explored} words");
                    }
                    ExitCode::from(1)
                }
            }
        }
    };
    if config.verbose {
        eprintln!("finished in {:.3?}", started.elapsed());
    }
    Ok(code)
}

fn verify_presentation(config: &Config, family: &str, n: usize, paths: bool) -> Result<ExitCode> {
    let family: Family = family.parse()?;
    let Some(full_family) = family.full_counterpart() else {
        bail!("{family} has no full presentation to derive");
    };
    let full = full_presentation(full_family, n)?;
    let reduced = reduced_presentation(family.reduced_counterpart(), n)?;
    let bounds = SearchBounds {
        max_length: config.max_length.unwrap_or(0) as usize,
        max_nodes: config.max_nodes as usize,
    };
    let mut checker = DerivationChecker::new(&reduced, bounds);
    let mut report = String::new();
    let mut unknown = 0;
    for rel in full.relations() {
        match checker.verify(rel) {
            DerivedVerdict::Proved(p) => {
                report.push_str(&format!("Proved {} steps={}\n", rel.name, p.len()));
                if paths {
                    report.push_str(&p.export());
                }
            }
            DerivedVerdict::Unknown => {
                unknown += 1;
                report.push_str(&format!("Unknown {}\n", rel.name));
            }
        }
    }
    let total = full.relations().len();
    report.push_str(&format!("{} of {total} relations proved\n", total - unknown));
    emit(config, &report)?;
    Ok(verdict(unknown == 0))
}

fn invariants_report(w: &BraidWord) -> String {
    let image = hyperoctahedral_image(w);
    let parities = bar_parity_per_component(w);
    let mut out = format!(
        "strands: {}\nimage: {image}\nexponent sum: {}\ncomponents: {}\n",
        w.n(),
        sigma_exponent_sum(w),
        parities.len()
    );
    for c in &parities {
        let strands: Vec<String> = c.strands.iter().map(|s| s.to_string()).collect();
        out.push_str(&format!("component [{}]: parity {}\n", strands.join(" "), c.parity));
    }
    out
}
