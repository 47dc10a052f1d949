use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use demazure_core::cache::CharacterCache;
use demazure_core::demazure::{finite_character, generalized_demazure_character};
use demazure_core::parse::{parse_factors, parse_weight};
use demazure_core::theorems::{run_suites, GridConfig, RunOptions, Suite, VerificationReport};
use demazure_core::{CartanType, RootSystem};

mod render;

use render::{graded_dims, latex_char, latex_graded, Format};

/// Characters of Demazure modules for current algebras, and checks of
/// identities between them.
#[derive(Parser, Debug)]
#[command(name = "demazure", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Cartan type, e.g. A2, B2, G2.
    #[arg(long = "type", short = 't')]
    cartan_type: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct CacheArgs {
    /// Directory for cached Demazure characters. Defaults to a per-user
    /// data directory.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Keep computed characters in memory only.
    #[arg(long)]
    no_cache: bool,
}

impl CacheArgs {
    fn open(&self) -> Result<CharacterCache> {
        if self.no_cache {
            return Ok(CharacterCache::in_memory());
        }
        let dir = match &self.cache_dir {
            Some(d) => d.clone(),
            None => match dirs::data_dir() {
                Some(d) => d.join("demazure").join("characters"),
                None => return Ok(CharacterCache::in_memory()),
            },
        };
        CharacterCache::with_dir(&dir).with_context(|| format!("opening cache {}", dir.display()))
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Character and dimension of the irreducible module V(λ).
    Char {
        #[command(flatten)]
        common: Common,
        /// Dominant weight in fundamental-weight coordinates, e.g. 1,0.
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Character of the Demazure module D(ℓ,λ).
    Demazure {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        level: i64,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        /// Print the q-graded h-character instead of the affine character.
        #[arg(long)]
        graded: bool,
        /// With --graded, also print the character of every grade.
        #[arg(long)]
        terms: bool,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Character of a generalized Demazure module.
    GenDemazure {
        #[command(flatten)]
        common: Common,
        /// Factors `element:weight|level[|degree]` separated by `;`, where an
        /// element is a `*`-product of id, w0, s[i,..] and t[c,..].
        #[arg(long, allow_hyphen_values = true)]
        factors: String,
        #[arg(long)]
        graded: bool,
    },
    /// The positive roots of a type, indexed as used elsewhere.
    Roots {
        #[arg(long = "type", short = 't')]
        cartan_type: String,
    },
    /// Run verification suites.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suites to run, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        required_unless_present = "all",
        conflicts_with = "all"
    )]
    suite: Vec<String>,
    /// Run every suite.
    #[arg(long)]
    all: bool,
    /// Restrict every suite to these types.
    #[arg(long = "type", short = 't', value_delimiter = ',')]
    types: Vec<String>,
    /// TOML grid file; missing entries keep their defaults.
    #[arg(long)]
    grid: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Perturb one coefficient in every case; every case must then fail.
    #[arg(long)]
    self_test: bool,
    /// Record elapsed time per case (makes output non-reproducible).
    #[arg(long)]
    timing: bool,
    /// Print every case, not only failures.
    #[arg(long, short)]
    verbose: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[command(flatten)]
    cache: CacheArgs,
}

fn root_system(t: &str) -> Result<RootSystem> {
    let t: CartanType = t.parse()?;
    Ok(RootSystem::new(t)?)
}

fn cmd_char(common: &Common, weight: &str) -> Result<String> {
    let rs = root_system(&common.cartan_type)?;
    let lambda = parse_weight(weight, Some(rs.rank())).context("--weight")?;
    let ch = finite_character(&rs, &lambda)?;
    Ok(match common.format {
        Format::Text => format!("{ch}\ndim {}\n", ch.coefficient_sum()),
        Format::Json => ch.to_json_pretty() + "\n",
        Format::Latex => format!("{}\n", latex_char(&ch)),
    })
}

fn cmd_demazure(
    common: &Common,
    level: i64,
    weight: &str,
    graded: bool,
    terms: bool,
    cache: &CacheArgs,
) -> Result<String> {
    let rs = root_system(&common.cartan_type)?;
    let lambda = parse_weight(weight, Some(rs.rank())).context("--weight")?;
    let d = cache.open()?.demazure(&rs, level, &lambda)?;
    let mut out = String::new();
    match (common.format, graded) {
        (Format::Json, _) => out = d.char.to_json_pretty() + "\n",
        (Format::Text, false) => writeln!(out, "{}\ndim {}", d.char, d.dim())?,
        (Format::Text, true) => {
            let g = d.graded()?;
            writeln!(out, "{}", graded_dims(&g))?;
            if terms {
                for (q, c) in g.pieces() {
                    writeln!(out, "q^{q}: {c}")?;
                }
            }
        }
        (Format::Latex, false) => writeln!(out, "{}", latex_char(&d.char))?,
        (Format::Latex, true) => writeln!(out, "{}", latex_graded(&d.graded()?))?,
    }
    Ok(out)
}

fn cmd_gen_demazure(common: &Common, factors: &str, graded: bool) -> Result<String> {
    let rs = root_system(&common.cartan_type)?;
    let factors = parse_factors(factors, &rs).context("--factors")?;
    let d = generalized_demazure_character(&rs, &factors)?;
    let mut out = String::new();
    match common.format {
        Format::Json => out = d.char.to_json_pretty() + "\n",
        Format::Text => {
            writeln!(out, "extremal weight {}", d.extremal_weight)?;
            writeln!(out, "generator weight {}", d.generator_weight)?;
            if graded {
                writeln!(out, "{}", graded_dims(&d.graded()?))?;
            } else {
                writeln!(out, "{}", d.char)?;
            }
            writeln!(out, "dim {}", d.dim())?;
        }
        Format::Latex => {
            if graded {
                writeln!(out, "{}", latex_graded(&d.graded()?))?;
            } else {
                writeln!(out, "{}", latex_char(&d.char))?;
            }
        }
    }
    Ok(out)
}

fn cmd_roots(t: &str) -> Result<String> {
    let rs = root_system(t)?;
    let mut out = String::new();
    writeln!(out, "index\tsimple-root coefficients\tweight\td")?;
    for (i, r) in rs.positive_roots().iter().enumerate() {
        writeln!(out, "{}\t{:?}\t{}\t{}", i + 1, r.coeffs, r.weight, r.d)?;
    }
    Ok(out)
}

fn summary_table(reports: &[VerificationReport]) -> String {
    let mut by_suite: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for r in reports {
        let e = by_suite.entry(&r.suite).or_default();
        e.0 += 1;
        if r.passed {
            e.1 += 1;
        }
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<10} {:>7} {:>7} {:>7}",
        "suite", "cases", "passed", "failed"
    );
    for (s, (n, p)) in &by_suite {
        let _ = writeln!(out, "{s:<10} {n:>7} {p:>7} {:>7}", n - p);
    }
    let total = reports.len();
    let passed = reports.iter().filter(|r| r.passed).count();
    let _ = writeln!(
        out,
        "{:<10} {total:>7} {passed:>7} {:>7}",
        "total",
        total - passed
    );
    out
}

fn cmd_verify(args: &VerifyArgs) -> Result<(String, bool)> {
    let mut cfg = match &args.grid {
        Some(p) => {
            let text =
                std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            GridConfig::from_toml(&text)?
        }
        None => GridConfig::default(),
    };
    if !args.types.is_empty() {
        for t in &args.types {
            t.parse::<CartanType>()?;
        }
        cfg.restrict_types(&args.types);
    }
    let suites: Vec<Suite> = if args.all {
        Suite::ALL.to_vec()
    } else {
        args.suite
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_, _>>()?
    };
    if suites.is_empty() {
        bail!("no suite selected");
    }
    let cache = args.cache.open()?;
    let opts = RunOptions {
        inject_fault: args.self_test,
        seed: args.seed,
        timing: args.timing,
    };
    let reports = run_suites(&cfg, &suites, &cache, opts)?;
    let all_passed = reports.iter().all(|r| r.passed);

    let mut out = String::new();
    match args.format {
        Format::Json => {
            for r in &reports {
                writeln!(out, "{}", serde_json::to_string(r)?)?;
            }
        }
        Format::Text | Format::Latex => {
            for r in &reports {
                if r.passed && !args.verbose {
                    continue;
                }
                let status = if r.passed { "PASS" } else { "FAIL" };
                write!(out, "{status} {} {}", r.suite, r.case_id)?;
                if let Some(w) = &r.witness {
                    write!(out, " witness: {w}")?;
                } else if !r.detail.is_empty() {
                    write!(out, " ({})", r.detail)?;
                }
                if let Some(ms) = r.elapsed_ms {
                    write!(out, " [{ms} ms]")?;
                }
                writeln!(out)?;
            }
            out.push_str(&summary_table(&reports));
            if args.self_test {
                let caught = reports
                    .iter()
                    .filter(|r| !r.passed && r.witness.is_some())
                    .count();
                writeln!(
                    out,
                    "self-test: {caught} of {} injected faults detected",
                    reports.len()
                )?;
            }
        }
    }
    Ok((out, all_passed))
}

/// Errors caused by the input rather than by the computation.
fn is_usage_error(e: &anyhow::Error) -> bool {
    use demazure_core::Error as E;
    e.chain().any(|c| {
        matches!(
            c.downcast_ref::<E>(),
            Some(
                E::InadmissibleType { .. }
                    | E::Parse { .. }
                    | E::Domain(_)
                    | E::Lattice(_)
                    | E::Precondition(_)
                    | E::Unsupported(_)
                    | E::Serialization(_)
            )
        )
    })
}

fn run(cli: &Cli) -> Result<(String, bool)> {
    Ok(match &cli.command {
        Command::Char { common, weight } => (cmd_char(common, weight)?, true),
        Command::Demazure {
            common,
            level,
            weight,
            graded,
            terms,
            cache,
        } => (
            cmd_demazure(common, *level, weight, *graded, *terms, cache)?,
            true,
        ),
        Command::GenDemazure {
            common,
            factors,
            graded,
        } => (cmd_gen_demazure(common, factors, *graded)?, true),
        Command::Roots { cartan_type } => (cmd_roots(cartan_type)?, true),
        Command::Verify(args) => cmd_verify(args)?,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if is_usage_error(&e) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
