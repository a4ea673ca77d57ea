//! `cb`: command-line access to sl2 conformal block divisor computations.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use cb_core::divisor::{class_in_basis, symmetric_class, BasisTag, DivisorClass};
use cb_core::fusion::rank;
use cb_core::intersect::{degree4, intersect_fcurve};
use cb_core::nefcone::certify_extremal;
use cb_core::polytope::{
    build_q, check_preset, fm::remove_redundant, lattice_point_with_parity, q_prime_count, HalfSpaceSystem, Preset,
    SymbolicQ,
};
use cb_core::search::{
    run_search, verify_main_prop, verify_one_ell, verify_theorem_n6, write_cross_section, MainPropConfig,
    OneEllConfig, SearchConfig, VerifyReport,
};
use cb_core::types::{FCurve, Level, WeightData};
use cb_core::CbError;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "cb", version, about = "Exact sl2 conformal block divisor computations on M_{0,n}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Datum {
    /// Level l.
    #[arg(long)]
    level: u32,
    /// Comma-separated weights in 0..=l.
    #[arg(long, value_delimiter = ',', required = true)]
    weights: Vec<u32>,
}

impl Datum {
    fn weight_data(&self) -> Result<WeightData, CbError> {
        WeightData::new(self.level, self.weights.clone())
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PresetArg {
    #[value(name = "I")]
    I,
    #[value(name = "J")]
    J,
    #[value(name = "script_I")]
    ScriptI,
}

impl From<PresetArg> for Preset {
    fn from(p: PresetArg) -> Self {
        match p {
            PresetArg::I => Preset::I,
            PresetArg::J => Preset::J,
            PresetArg::ScriptI => Preset::ScriptI,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank of the bundle. Prints one integer.
    Rank(Datum),
    /// Degree of the bundle on M_{0,4}. Prints one integer.
    Degree4(Datum),
    /// Intersection with an F-curve. Prints one integer.
    Intersect {
        #[command(flatten)]
        datum: Datum,
        /// The F-curve, e.g. "1,2,3|4|5|6".
        #[arg(long)]
        parts: String,
    },
    /// Divisor class in a basis of the Picard group. Prints JSON.
    Class {
        #[command(flatten)]
        datum: Datum,
        /// nonadjacent6, boundary_spanning or symmetric.
        #[arg(long, default_value = "boundary_spanning")]
        basis: String,
    },
    /// Primitive integer ray in the symmetric basis B_2, B_3, ... Prints integers.
    Symclass {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        datum: Datum,
    },
    /// The polytope Q for an F-curve and a parity-respecting lattice point. Prints JSON.
    Polytope {
        #[command(flatten)]
        datum: Datum,
        #[arg(long)]
        parts: String,
    },
    /// Symbolic elimination of the attachment weights for a bundled curve. Prints JSON.
    Fm {
        #[arg(long, value_enum)]
        preset: PresetArg,
    },
    /// Sweeps and checks; exit code 2 when a violation is found. Prints JSON.
    Verify {
        #[command(subcommand)]
        which: Verify,
    },
    /// Extremality certificate for a class in the F-nef cone. Prints JSON.
    Extremal {
        #[arg(long)]
        n: usize,
        /// Coefficients of B_2, B_3, ...
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, conflicts_with_all = ["level", "weights"])]
        symmetric: Option<Vec<i64>>,
        #[arg(long, requires = "weights")]
        level: Option<u32>,
        #[arg(long, value_delimiter = ',', requires = "level")]
        weights: Option<Vec<u32>>,
    },
    /// Symmetric rays of nondecreasing weight data up to a level. Prints JSON.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_level: u32,
        /// Smallest weight considered (0 or 1).
        #[arg(long, default_value_t = 1)]
        weight_floor: u32,
        /// Drop data whose divisor is zero.
        #[arg(long)]
        nontrivial: bool,
        /// Keep only data whose divisor is itself invariant under relabeling.
        #[arg(long)]
        symmetric_only: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Cross-section data for n = 9 as CSV.
    Emit {
        #[arg(long)]
        max_level: u32,
        #[arg(long, default_value_t = 1)]
        weight_floor: u32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// Pattern exclusion and ray census for n = 6.
    TheoremN6 {
        #[arg(long)]
        max_level: u32,
    },
    /// The positivity statement for the n = 9 curve.
    MainProp {
        #[arg(long)]
        min_level: u32,
        #[arg(long)]
        max_level: u32,
        /// Largest weight swept; capped at the level.
        #[arg(long, default_value_t = 12)]
        weight_cap: u32,
    },
    /// Vanishing from repeated extreme weights, n = 6..9.
    OneEll {
        #[arg(long)]
        max_level: u32,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Derives the bundled systems and compares them with the stored ones.
    Presets,
}

enum Outcome {
    Ok,
    Violations,
}

fn print_json(v: &Value) -> Result<(), CbError> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn print_line(s: &str) -> Result<(), CbError> {
    writeln!(std::io::stdout().lock(), "{s}")?;
    Ok(())
}

fn report_outcome(r: &VerifyReport) -> Result<Outcome, CbError> {
    print_json(&serde_json::to_value(r)?)?;
    Ok(if r.is_clean() { Outcome::Ok } else { Outcome::Violations })
}

fn fm_json(preset: Preset) -> Result<Value, CbError> {
    let assumptions = preset.assumptions()?;
    let vars = assumptions.variables().to_vec();
    let reduced = remove_redundant(&assumptions, &HalfSpaceSystem::new(vars.clone()))?;
    let orderings = preset.orderings()?;
    let sq = SymbolicQ::new(&preset.curve());
    let mut branches = Vec::new();
    for branch in sq.branches() {
        if sq.facts(&branch)?.is_inconsistent() {
            continue;
        }
        let q = sq.q_prime(&branch)?;
        let derived = sq.eliminate(&q, &reduced)?.embed(&vars)?;
        let count = q_prime_count(preset, &branch, &orderings)?;
        branches.push(json!({
            "branch": branch,
            "q_prime": q.format_all(),
            "q_prime_count": count,
            "eliminated": derived.format_all(),
        }));
    }
    Ok(json!({
        "preset": preset.name(),
        "curve": preset.curve().to_string(),
        "free_variables": sq.free_variables(),
        "branches": branches,
    }))
}

fn run(cli: Cli) -> Result<Outcome, CbError> {
    match cli.command {
        Command::Rank(d) => {
            let wd = d.weight_data()?;
            print_line(&rank(wd.level(), wd.weights())?.to_string())?;
        }
        Command::Degree4(d) => {
            let wd = d.weight_data()?;
            let [a, b, c, e] = wd.weights() else {
                return Err(CbError::Domain("degree4 needs exactly four weights".into()));
            };
            print_line(&degree4(Level(d.level), *a, *b, *c, *e)?.to_string())?;
        }
        Command::Intersect { datum, parts } => {
            let wd = datum.weight_data()?;
            let f: FCurve = parts.parse()?;
            print_line(&intersect_fcurve(&wd, &f)?.to_string())?;
        }
        Command::Class { datum, basis } => {
            let tag: BasisTag = basis.parse()?;
            print_json(&class_in_basis(&datum.weight_data()?, tag)?.to_json())?;
        }
        Command::Symclass { n, datum } => {
            let wd = datum.weight_data()?;
            if wd.n() != n {
                return Err(CbError::Domain(format!("--n {n} but {} weights given", wd.n())));
            }
            let ray = symmetric_class(&wd)?.primitive();
            print_line(&ray.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))?;
        }
        Command::Polytope { datum, parts } => {
            let wd = datum.weight_data()?;
            let f: FCurve = parts.parse()?;
            let q = build_q(&wd, &f)?;
            let point = lattice_point_with_parity(&q)?;
            print_json(&json!({
                "curve": f.to_string(),
                "system": q.to_json(),
                "lattice_point": point,
                "positive": point.is_some(),
            }))?;
        }
        Command::Fm { preset } => print_json(&fm_json(preset.into())?)?,
        Command::Verify { which } => {
            return match which {
                Verify::TheoremN6 { max_level } => report_outcome(&verify_theorem_n6(max_level)?),
                Verify::MainProp {
                    min_level,
                    max_level,
                    weight_cap,
                } => report_outcome(&verify_main_prop(MainPropConfig {
                    min_level,
                    max_level,
                    weight_cap,
                })?),
                Verify::OneEll {
                    max_level,
                    samples,
                    seed,
                } => {
                    let mut cfg = OneEllConfig::new(max_level);
                    cfg.random_samples = samples;
                    cfg.seed = seed;
                    report_outcome(&verify_one_ell(cfg)?)
                }
                Verify::Presets => {
                    let mut reports = Vec::new();
                    let mut clean = true;
                    for p in Preset::ALL {
                        let r = check_preset(p)?;
                        clean &= r.holds();
                        reports.push(r);
                    }
                    print_json(&serde_json::to_value(&reports)?)?;
                    Ok(if clean { Outcome::Ok } else { Outcome::Violations })
                }
            };
        }
        Command::Extremal {
            n,
            symmetric,
            level,
            weights,
        } => {
            let cls = match (symmetric, level, weights) {
                (Some(c), _, _) => DivisorClass::symmetric(n, &c)?,
                (None, Some(ell), Some(w)) => {
                    let wd = WeightData::new(ell, w)?;
                    if wd.n() != n {
                        return Err(CbError::Domain(format!("--n {n} but {} weights given", wd.n())));
                    }
                    class_in_basis(&wd, BasisTag::BoundarySpanning)?
                }
                _ => return Err(CbError::Domain("give --symmetric or --level with --weights".into())),
            };
            print_json(&serde_json::to_value(certify_extremal(&cls)?)?)?;
        }
        Command::Search {
            n,
            max_level,
            weight_floor,
            nontrivial,
            symmetric_only,
            output,
        } => {
            let mut cfg = SearchConfig::new(n, max_level);
            cfg.weight_floor = weight_floor;
            cfg.require_nontrivial = nontrivial;
            cfg.symmetric_only = symmetric_only;
            cfg.output_path = output.clone();
            let samples = run_search(&cfg)?;
            if output.is_none() {
                print_json(&serde_json::to_value(&samples)?)?;
            }
        }
        Command::Emit {
            max_level,
            weight_floor,
            output,
        } => {
            let mut cfg = SearchConfig::new(9, max_level);
            cfg.weight_floor = weight_floor;
            let samples = run_search(&cfg)?;
            match output {
                Some(path) => cb_core::search::emit_cross_section(&samples, &path)?,
                None => write_cross_section(&samples, std::io::stdout().lock())?,
            }
        }
    }
    Ok(Outcome::Ok)
}

fn configure_threads() -> Result<(), CbError> {
    let Ok(text) = std::env::var("CB_THREADS") else {
        return Ok(());
    };
    let threads: usize = text
        .trim()
        .parse()
        .map_err(|_| CbError::Domain(format!("CB_THREADS must be a nonnegative integer, got {text:?}")))?;
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CbError::Internal(e.to_string()))?;
    }
    Ok(())
}

fn is_broken_pipe(e: &CbError) -> bool {
    let kind = match e {
        CbError::Io(io) => Some(io.kind()),
        CbError::Json(j) => j.io_error_kind(),
        _ => None,
    };
    kind == Some(std::io::ErrorKind::BrokenPipe)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = configure_threads().and_then(|()| run(cli));
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Violations) => ExitCode::from(2),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cb: {e}");
            ExitCode::from(1)
        }
    }
}
