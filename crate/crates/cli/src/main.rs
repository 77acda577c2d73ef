use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hilbcover_core::cone::{hilbert_basis, is_flat, Cone, SubconeList};
use hilbcover_core::corpus::{self, append_hits, read_cone, write_cone, ConeFile, Report};
use hilbcover_core::icp::{caradec, f_subcones, monte_carlo_icp, IcpConfig, IcpError, MonteCarloConfig};
use hilbcover_core::lattice::{Int, IntMatrix};
use hilbcover_core::search::{is_tight, search_tight_with, HitKind, SearchConfig, SearchMode};
use hilbcover_core::uhc::{unicover_preprocessed, UhcConfig, UhcError};

/// Hilbert bases of rational cones, unimodular covers and the integral
/// Carathéodory property.
#[derive(Parser)]
#[command(name = "hilbcover", version)]
struct Cli {
    /// Worker threads; 1 is the deterministic reference (all outputs are
    /// deterministic regardless).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Hilbert basis as a cone file.
    Hilbert {
        #[command(flatten)]
        input: Input,
    },
    /// Print basis size, support count, flatness and tightness.
    Info {
        #[command(flatten)]
        input: Input,
    },
    /// Decide the unimodular Hilbert cover property.
    Uhc {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        uhc: UhcArgs,
        /// Exit 0 if covered, 1 if not, and print nothing.
        #[arg(long)]
        quiet: bool,
    },
    /// Decide the integral Carathéodory property.
    Icp {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        icp: IcpArgs,
        /// Exit 0 if covered, 1 if not, and print nothing.
        #[arg(long)]
        quiet: bool,
    },
    /// Sample lattice points in the regions the unimodular cover misses.
    Mc {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        uhc: UhcArgs,
        #[command(flatten)]
        mc: McArgs,
    },
    /// Random search for tight cones.
    Search(SearchArgs),
    /// Write a built-in cone (c10, c12, c12p, c15, k5) as a cone file.
    Corpus {
        name: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Input {
    /// Cone file, or `corpus:<name>` for a built-in cone.
    input: String,
    /// Also write the result to this file.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct UhcArgs {
    /// Seed the scan with regions left uncovered by this many triangulations.
    #[arg(long, default_value_t = UhcConfig::default().triangulations)]
    triangulations: usize,
    /// Seed for the shuffled triangulations.
    #[arg(long, default_value_t = UhcConfig::default().triangulation_seed)]
    seed: u64,
    #[arg(long, default_value_t = UhcConfig::default().max_regions)]
    max_regions: usize,
    #[arg(long, default_value_t = UhcConfig::default().max_subcones)]
    max_subcones: usize,
}

#[derive(Args)]
struct IcpArgs {
    #[arg(long, default_value_t = IcpConfig::default().residue_budget)]
    residue_budget: usize,
    #[arg(long, default_value_t = IcpConfig::default().max_regions)]
    max_regions: usize,
    #[arg(long, default_value_t = IcpConfig::default().max_subcones)]
    max_subcones: usize,
    /// Only scan f-subcones up to this determinant.
    #[arg(long)]
    max_det: Option<u64>,
}

#[derive(Args)]
struct McArgs {
    #[arg(long, default_value_t = MonteCarloConfig::default().samples)]
    samples: usize,
    /// Coefficients are drawn from 0..=bound.
    #[arg(long, default_value_t = MonteCarloConfig::default().bound)]
    bound: u32,
    #[arg(long = "mc-seed", default_value_t = MonteCarloConfig::default().seed)]
    mc_seed: u64,
    #[arg(long, default_value_t = MonteCarloConfig::default().max_hits)]
    max_hits: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    ZeroOne,
    Parallelotope,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_enum, default_value_t = Mode::ZeroOne)]
    mode: Mode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random cones to try.
    #[arg(long, default_value_t = 1000)]
    candidates: u64,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    min_generators: Option<usize>,
    #[arg(long)]
    max_generators: Option<usize>,
    /// Largest |det| of a parallelotope.
    #[arg(long)]
    volume_cap: Option<u64>,
    /// Skip the unimodular cover test.
    #[arg(long)]
    no_uhc: bool,
    /// Run the ICP decision on cones that fail UHC.
    #[arg(long)]
    icp: bool,
    /// Run the sampler on cones that fail UHC.
    #[arg(long)]
    monte_carlo: bool,
    /// Also screen the last K non-tight cones of each shrink (6 if K is omitted).
    #[arg(long, value_name = "K", num_args = 0..=1, default_missing_value = "6")]
    approximations: Option<usize>,
    #[arg(long, default_value_t = UhcConfig { max_regions: 1_000_000, ..UhcConfig::default() }.max_regions)]
    max_regions: usize,
    #[arg(long, default_value_t = UhcConfig::default().max_subcones)]
    max_subcones: usize,
    #[arg(long, default_value_t = IcpConfig::default().residue_budget)]
    residue_budget: usize,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    /// Append hits to this JSON-lines file.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

/// Failures that end a run: bad input (exit 2) or an exhausted budget (3).
enum Failure {
    Usage(String),
    Budget(String),
}

impl From<corpus::CorpusError> for Failure {
    fn from(e: corpus::CorpusError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Run = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("budget exceeded: {m}");
            ExitCode::from(3)
        }
    }
}

fn builtin(name: &str) -> Option<IntMatrix> {
    let key = name.trim().to_ascii_lowercase();
    let key = key.strip_prefix("corpus:").unwrap_or(&key);
    if key == "k5" {
        return Some(corpus::k5_cone());
    }
    corpus::by_name(key).map(|c| c.generators)
}

fn load(input: &str) -> Result<Cone, Failure> {
    if let Some(name) = input.strip_prefix("corpus:") {
        let m = builtin(name).ok_or_else(|| Failure::Usage(format!("unknown built-in cone {name:?}")))?;
        return Cone::from_generators(&m).map_err(|e| Failure::Usage(e.to_string()));
    }
    read_cone(input).map_err(|e| Failure::Usage(format!("{input}: {e}")))
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), Failure> {
    print!("{text}");
    if let Some(p) = output {
        fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn uhc_config(a: &UhcArgs) -> UhcConfig {
    UhcConfig {
        max_regions: a.max_regions,
        max_subcones: a.max_subcones,
        triangulations: a.triangulations,
        triangulation_seed: a.seed,
        ..UhcConfig::default()
    }
}

fn verdict(covered: bool) -> &'static str {
    if covered {
        "verdict covered\n"
    } else {
        "verdict not covered\n"
    }
}

fn run(command: Command) -> Run {
    match command {
        Command::Hilbert { input } => {
            let cone = load(&input.input)?;
            let h = hilbert_basis(&cone);
            let m = IntMatrix::new(h.into_elements(), cone.dim());
            emit(&ConeFile::new(m).render(), input.output.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Info { input } => {
            let cone = load(&input.input)?;
            let h = hilbert_basis(&cone);
            let flat = match is_flat(&h) {
                Some(l) => format!("{l:?}"),
                None => "no".into(),
            };
            let text = format!(
                "dim {}\n#Hilb {}\n#Supp {}\n#Rays {}\nflat {flat}\ntight {}\n",
                cone.dim(),
                h.len(),
                cone.supports().len(),
                cone.rays().len(),
                if is_tight(&h) { "yes" } else { "no" },
            );
            emit(&text, input.output.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Uhc { input, uhc, quiet } => {
            let cone = load(&input.input)?;
            let h = hilbert_basis(&cone);
            let mut subs = SubconeList::lazy_unimodular(h.elements());
            let report = unicover_preprocessed(&cone, &mut subs, &uhc_config(&uhc)).map_err(uhc_failure)?;
            if quiet {
                return Ok(quiet_code(report.covered));
            }
            let text = format!("{}{}", verdict(report.covered), Report::Uhc(&report).render());
            emit(&text, input.output.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Icp { input, icp, quiet } => {
            let cone = load(&input.input)?;
            let h = hilbert_basis(&cone);
            let cfg = IcpConfig {
                residue_budget: icp.residue_budget,
                max_regions: icp.max_regions,
                max_subcones: icp.max_subcones,
                max_det: icp.max_det.map(Int::from),
                check_invariants: false,
            };
            let report = f_subcones(&h, &cfg)
                .and_then(|subs| caradec(&cone, &subs, &cfg))
                .map_err(|abort| icp_failure(&abort.error, abort.partial.failures.len()))?;
            if quiet {
                return Ok(quiet_code(report.covered));
            }
            let text = format!("{}{}", verdict(report.covered), Report::Icp(&report).render());
            emit(&text, input.output.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Mc { input, uhc, mc } => {
            let cone = load(&input.input)?;
            let h = hilbert_basis(&cone);
            let mut subs = SubconeList::lazy_unimodular(h.elements());
            let report = unicover_preprocessed(&cone, &mut subs, &uhc_config(&uhc)).map_err(uhc_failure)?;
            let cfg = MonteCarloConfig { samples: mc.samples, bound: mc.bound, seed: mc.mc_seed, max_hits: mc.max_hits };
            let r = monte_carlo_icp(&report.witnesses, &h, &cfg);
            let text = format!("witnesses {}\n{}", report.witnesses.len(), Report::MonteCarlo(&r).render());
            emit(&text, input.output.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Search(a) => search(a),
        Command::Corpus { name, output } => {
            let m = builtin(&name).ok_or_else(|| Failure::Usage(format!("unknown built-in cone {name:?}")))?;
            let file = ConeFile::new(m);
            match output {
                Some(p) => write_cone(&p, &file)?,
                None => print!("{}", file.render()),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn quiet_code(holds: bool) -> ExitCode {
    if holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn uhc_failure(e: UhcError) -> Failure {
    match e {
        UhcError::ResourceLimit(_) | UhcError::SubconeLimit(_) => Failure::Budget(e.to_string()),
        UhcError::NoSplittingHyperplane => Failure::Usage(e.to_string()),
    }
}

fn icp_failure(e: &IcpError, partial_failures: usize) -> Failure {
    match e {
        IcpError::NoSplittingHyperplane => Failure::Usage(e.to_string()),
        _ => Failure::Budget(format!(
            "{e}; {partial_failures} failing end node(s) found before stopping; try `mc` instead"
        )),
    }
}

fn search(a: SearchArgs) -> Run {
    let base = match a.mode {
        Mode::ZeroOne => SearchConfig::zero_one(a.seed),
        Mode::Parallelotope => SearchConfig::parallelotope(a.seed),
    };
    let mut cfg = SearchConfig {
        max_candidates: a.candidates,
        screen_uhc: !a.no_uhc,
        screen_icp: a.icp,
        screen_monte_carlo: a.monte_carlo,
        approximations: a.approximations.unwrap_or(0),
        ..base
    };
    cfg.dim = a.dim.unwrap_or(cfg.dim);
    cfg.min_generators = a.min_generators.unwrap_or(cfg.min_generators);
    cfg.max_generators = a.max_generators.unwrap_or(cfg.max_generators).max(cfg.min_generators);
    cfg.volume_cap = a.volume_cap.unwrap_or(cfg.volume_cap);
    cfg.uhc.max_regions = a.max_regions;
    cfg.uhc.max_subcones = a.max_subcones;
    cfg.icp.residue_budget = a.residue_budget;
    cfg.monte_carlo.samples = a.samples;
    if cfg.dim < 2 {
        return Err(Failure::Usage("--dim must be at least 2".into()));
    }

    let start = Instant::now();
    let mut io_error = None;
    let stats = search_tight_with(&cfg, |hit| {
        let opt = |b: Option<bool>| b.map_or("?".to_string(), |b| if b { "yes" } else { "no" }.to_string());
        println!(
            "hit trial {} kind {} #Hilb {} #Supp {} uhc {} icp {} flat {}",
            hit.provenance.trial,
            match hit.provenance.kind {
                HitKind::Tight => "tight".to_string(),
                HitKind::Approximation { steps } => format!("approximation-{steps}"),
            },
            hit.basis.len(),
            hit.support_count,
            opt(hit.uhc),
            opt(hit.icp),
            if hit.flat.is_some() { "yes" } else { "no" },
        );
        if let Some(p) = &a.output {
            if let Err(e) = append_hits(p, [hit]) {
                io_error.get_or_insert(e);
            }
        }
    });
    if let Some(e) = io_error {
        return Err(e.into());
    }
    let secs = start.elapsed().as_secs_f64();
    let mode = match cfg.mode {
        SearchMode::ZeroOne => "zero_one",
        SearchMode::Parallelotope => "parallelotope",
    };
    println!(
        "mode {mode}\ntrials {}\ndegenerate {}\ntrivial {}\ntight {}\nduplicates {}\nfailures {}",
        stats.trials, stats.degenerate, stats.trivial, stats.tight, stats.duplicates, stats.failures
    );
    // timing goes to stderr so that stdout stays reproducible
    eprintln!("cones per second {:.1}", stats.trials as f64 / secs.max(1e-9));
    Ok(ExitCode::SUCCESS)
}
