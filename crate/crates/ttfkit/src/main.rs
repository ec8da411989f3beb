use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use ttfkit::error::{HarnessError, Result};
use ttfkit::parse::{parse_file, Environment};
use ttfkit::{analyze, gallery, render_text, AnalysisReport, Options};
use ttfkit_core::ideals::enumerate_ideals;
use ttfkit_core::limits::{self, Limits};
use ttfkit_core::{check_commutative_theorem, locally_fp_via_fix, FixVerdict, Side};

/// Writes to stdout; a closed pipe (e.g. `| head`) ends the process quietly.
macro_rules! out {
    ($($t:tt)*) => {
        emit(format!("{}\n", format_args!($($t)*)))
    };
}

macro_rules! out_raw {
    ($($t:tt)*) => {
        emit(format!($($t)*))
    };
}

fn emit(s: String) {
    use std::io::Write;
    if let Err(e) = std::io::stdout().lock().write_all(s.as_bytes()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("ttfkit: {e}");
        std::process::exit(2);
    }
}

#[derive(Parser)]
#[command(name = "ttfkit", version, about = "Idempotent ideals of finite rings")]
struct Cli {
    /// Largest ring or module carrier that may be built.
    #[arg(long, global = true, default_value_t = 65536)]
    module_cap: usize,
    /// Largest number of ideals one enumeration may produce.
    #[arg(long, global = true, default_value_t = 4096)]
    ideal_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
    TwoSided,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis of one ideal, or of every ideal in the file.
    Analyze {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long, default_value_t = 2)]
        kmax: usize,
        #[arg(long, default_value_t = 1 << 20)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Include per-stage wall-clock times (not reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// List the ideals of every ring in the file.
    EnumerateIdeals {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        idempotent_only: bool,
        #[arg(long, value_enum, default_value_t = SideArg::TwoSided)]
        side: SideArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Fix-closure search for local finite presentability.
    CheckLfp {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        ideal: String,
        #[arg(long, default_value_t = 2)]
        kmax: usize,
        #[arg(long, default_value_t = 1 << 20)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Local decomposition check for an ideal of a commutative ring.
    CheckCommutative {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        ideal: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Analyze the built-in example rings.
    Gallery {
        /// Re-derive every fixture with the brute-force oracles.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Fixture file to verify instead of the built-in one.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Print oracle-derived fixtures and exit.
        #[arg(long, hide = true)]
        emit_fixtures: bool,
        #[arg(long)]
        timings: bool,
    },
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn load(path: &std::path::Path) -> Result<Environment> {
    parse_file(path)
}

fn ideal_of<'a>(env: &'a Environment, name: &str) -> Result<&'a ttfkit::parse::NamedIdeal> {
    env.ideal(name)
        .ok_or_else(|| HarnessError::Input(format!("no ideal named `{name}`")))
}

fn print_reports(reports: &[AnalysisReport], format: Format) {
    match format {
        Format::Json => out!("{}", json(&reports)),
        Format::Text => {
            for r in reports {
                out_raw!("{}", render_text(r));
            }
        }
    }
}

#[derive(Serialize)]
struct IdealListing {
    ring: String,
    side: Side,
    ideals: Vec<IdealEntry>,
}

#[derive(Serialize)]
struct IdealEntry {
    members: Vec<u32>,
    order: usize,
    idempotent: bool,
}

#[derive(Serialize)]
struct LfpOutput {
    schema_version: u32,
    ring: String,
    ideal: String,
    lfp: ttfkit::analyze::LfpSection,
}

#[derive(Serialize)]
struct CommutativeOutput {
    schema_version: u32,
    ring: String,
    ideal: String,
    #[serde(flatten)]
    verdict: ttfkit_core::CommutativeVerdict,
}

fn run(cli: Cli) -> Result<()> {
    let mut lim = Limits {
        module_cap: cli.module_cap,
        ideal_cap: cli.ideal_cap,
        ..Limits::default()
    };
    if let Ok(v) = std::env::var("TTFKIT_CAP_BYTES") {
        lim.table_bytes = v
            .trim()
            .parse()
            .map_err(|_| HarnessError::Input(format!("TTFKIT_CAP_BYTES must be a byte count, got `{v}`")))?;
    }
    match cli.command {
        Command::Analyze {
            ring,
            ideal,
            kmax,
            budget,
            format,
            timings,
        } => {
            lim.matrix_budget = budget;
            limits::set(lim);
            let env = load(&ring)?;
            let opts = Options {
                k_max: kmax,
                budget,
                timings,
                ..Options::default()
            };
            let mut reports = Vec::new();
            let single = ideal.is_some();
            if let Some(name) = ideal {
                let ni = ideal_of(&env, &name)?;
                let nr = env.ring(&ni.ring).expect("parsed ideals name known rings");
                reports.push(analyze(&nr.ring, Some(&nr.name), &ni.ideal, Some(&ni.name), &opts)?);
            } else {
                for nr in &env.rings {
                    for i in enumerate_ideals(&nr.ring, Side::TwoSided).map_err(|source| HarnessError::Stage {
                        stage: "enumerate",
                        source,
                    })? {
                        let name = env.ideals_of(&nr.name).find(|n| n.ideal == i).map(|n| n.name.as_str());
                        reports.push(analyze(&nr.ring, Some(&nr.name), &i, name, &opts)?);
                    }
                }
            }
            if single && format == Format::Json {
                out!("{}", json(&reports[0]));
            } else {
                print_reports(&reports, format);
            }
        }
        Command::EnumerateIdeals {
            ring,
            idempotent_only,
            side,
            format,
        } => {
            limits::set(lim);
            let env = load(&ring)?;
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
                SideArg::TwoSided => Side::TwoSided,
            };
            let mut out = Vec::new();
            for nr in &env.rings {
                let ideals = enumerate_ideals(&nr.ring, side).map_err(|source| HarnessError::Stage {
                    stage: "enumerate",
                    source,
                })?;
                let ideals = ideals
                    .into_iter()
                    .map(|i| IdealEntry {
                        members: i.elements(),
                        order: i.order(),
                        idempotent: i.is_idempotent(),
                    })
                    .filter(|e| !idempotent_only || e.idempotent)
                    .collect();
                out.push(IdealListing {
                    ring: nr.name.clone(),
                    side,
                    ideals,
                });
            }
            match format {
                Format::Json => out!("{}", json(&out)),
                Format::Text => {
                    for l in &out {
                        out!("ring {} ({} ideals, {})", l.ring, l.ideals.len(), l.side);
                        for e in &l.ideals {
                            let m: Vec<String> = e.members.iter().map(|x| x.to_string()).collect();
                            out!("  {{{}}}{}", m.join(","), if e.idempotent { " idempotent" } else { "" });
                        }
                    }
                }
            }
        }
        Command::CheckLfp {
            ring,
            ideal,
            kmax,
            budget,
            format,
        } => {
            lim.matrix_budget = budget;
            limits::set(lim);
            let env = load(&ring)?;
            let ni = ideal_of(&env, &ideal)?;
            let rep = locally_fp_via_fix(&ni.ideal, kmax, budget).map_err(|source| HarnessError::Stage {
                stage: "lfp",
                source,
            })?;
            let out = LfpOutput {
                schema_version: ttfkit::analyze::SCHEMA_VERSION,
                ring: ni.ring.clone(),
                ideal: ni.name.clone(),
                lfp: (&rep).into(),
            };
            match format {
                Format::Json => out!("{}", json(&out)),
                Format::Text => {
                    let v = match rep.via_fix_closure {
                        FixVerdict::Certified { k } => format!("true (k = {k})"),
                        FixVerdict::Unknown => format!("unknown (k_max {kmax}, skipped {:?})", rep.skipped),
                    };
                    out!("{} in {}: locally fp via Fix closure: {v}", ni.name, ni.ring);
                    out!("locally fp via idempotents: {}", rep.via_idempotents);
                }
            }
        }
        Command::CheckCommutative { ring, ideal, format } => {
            limits::set(lim);
            let env = load(&ring)?;
            let ni = ideal_of(&env, &ideal)?;
            let verdict = check_commutative_theorem(&ni.ideal).map_err(|source| HarnessError::Stage {
                stage: "commutative",
                source,
            })?;
            match format {
                Format::Json => out!(
                    "{}",
                    json(&CommutativeOutput {
                        schema_version: ttfkit::analyze::SCHEMA_VERSION,
                        ring: ni.ring.clone(),
                        ideal: ni.name.clone(),
                        verdict,
                    })
                ),
                Format::Text => out!(
                    "{} in {}: holds {}, generator {:?}, factor sizes {:?}, support {:?}",
                    ni.name, ni.ring, verdict.holds, verdict.idempotent_generator, verdict.factor_sizes, verdict.support
                ),
            }
        }
        Command::Gallery {
            verify,
            format,
            fixtures,
            emit_fixtures,
            timings,
        } => {
            limits::set(lim);
            if emit_fixtures {
                out!("{}", json(&gallery::derive_fixtures()?));
                return Ok(());
            }
            let opts = Options {
                timings,
                ..Options::default()
            };
            let rep = gallery::report(&opts)?;
            match format {
                Format::Json => out!("{}", json(&rep)),
                Format::Text => print_reports(&rep.reports, Format::Text),
            }
            if verify {
                let text = match fixtures {
                    Some(p) => std::fs::read_to_string(&p)
                        .map_err(|e| HarnessError::Input(format!("cannot read {}: {e}", p.display())))?,
                    None => gallery::FIXTURES.to_string(),
                };
                let summary = gallery::verify(&text)?;
                eprintln!(
                    "verified {} rings, {} ideals, {} checks",
                    summary.rings, summary.ideals, summary.checks
                );
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ttfkit: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
