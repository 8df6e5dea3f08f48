//! `selberg`: congruence levels, torsion tables and lattice constructions
//! from the command line.

mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use selberg_core::construct::{construct, construct_sweep, MAX_PROBE_K};
use selberg_core::numfield::make_field;
use selberg_core::polyalg::parse_poly_text;
use selberg_core::selberg::{
    find_congruence_level, generator_bound_pipeline, grh_threshold, unconditional_index_bound,
    volume_index_bound_grh, GrowthForm,
};
use selberg_core::torsion::max_torsion_order;
use selberg_core::{Config, Error};

use output::{emit_csv, emit_json, Format};

const EXIT_PRECONDITION: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "selberg", version, about = "Torsion-free congruence subgroups and torsion bounds")]
struct Cli {
    /// Output format; tables default to CSV, everything else to JSON.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Worker threads for prime scans and sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// TOML file with constants; overrides $SELBERG_CONFIG.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Number field data for a polynomial file.
    #[command(subcommand)]
    Field(FieldCmd),
    /// Torsion-free congruence levels.
    #[command(subcommand)]
    Level(LevelCmd),
    /// GRH prime-ideal threshold.
    #[command(subcommand)]
    Grh(GrhCmd),
    /// Index bounds.
    #[command(subcommand)]
    Bound(BoundCmd),
    /// Maximal torsion orders.
    #[command(subcommand)]
    Torsion(TorsionCmd),
    /// Lattice with an element of order p.
    Construct(ConstructArgs),
    /// Application calculators.
    #[command(subcommand)]
    Apply(ApplyCmd),
}

#[derive(Subcommand, Debug)]
enum FieldCmd {
    Analyze { polyfile: PathBuf },
}

#[derive(Subcommand, Debug)]
enum LevelCmd {
    Find {
        polyfile: PathBuf,
        #[arg(long)]
        dimg: u32,
    },
}

#[derive(Subcommand, Debug)]
enum GrhCmd {
    Threshold {
        #[arg(long)]
        d: u32,
        #[arg(long, allow_negative_numbers = true)]
        logd: f64,
    },
}

#[derive(Subcommand, Debug)]
enum BoundCmd {
    Grh {
        #[arg(long)]
        v: f64,
        #[arg(long)]
        dimh: u32,
    },
    Unconditional {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        dimh: u32,
    },
}

#[derive(Subcommand, Debug)]
enum TorsionCmd {
    Table {
        #[arg(long)]
        nmax: u32,
        #[arg(long)]
        d: u32,
    },
}

#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true)]
struct ConstructArgs {
    #[arg(long)]
    p: Option<u64>,
    /// Largest denominator of the shift T, a power of 2.
    #[arg(long, default_value_t = 1 << 16)]
    dencap: u64,
    /// Run the mod 2^k isotropy probe.
    #[arg(long)]
    probe_k: Option<u32>,
    #[command(subcommand)]
    sweep: Option<ConstructCmd>,
}

#[derive(Subcommand, Debug)]
enum ConstructCmd {
    Sweep {
        #[arg(long)]
        pmax: u64,
    },
}

#[derive(Subcommand, Debug)]
enum ApplyCmd {
    Generators {
        #[arg(long)]
        v: f64,
        /// f(u) = u^(1 - alpha).
        #[arg(long, allow_negative_numbers = true, conflicts_with = "kappa")]
        alpha: Option<f64>,
        /// f(u) = (log u)^kappa.
        #[arg(long)]
        kappa: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
    },
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Input(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_resource_cap() => EXIT_RESOURCE,
            _ => EXIT_PRECONDITION,
        }
    }

    fn report(&self) -> serde_json::Value {
        match self {
            CliError::Core(e) => json!({
                "error": if e.is_resource_cap() { "resource_cap" } else { "precondition" },
                "message": e.to_string(),
            }),
            CliError::Input(m) => json!({ "error": "input", "message": m }),
        }
    }
}

fn read_field(path: &PathBuf) -> Result<Arc<selberg_core::numfield::NumberField>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let f = parse_poly_text(&text)?;
    Ok(Arc::new(make_field(&f)?))
}

fn table_format(f: Option<FormatArg>) -> Format {
    match f {
        Some(FormatArg::Json) => Format::Json,
        _ => Format::Csv,
    }
}

fn json_only(f: Option<FormatArg>) -> Result<(), CliError> {
    match f {
        Some(FormatArg::Csv) => Err(CliError::Input("this report is only available as JSON".into())),
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    let cfg: Config = config::load(cli.config.as_deref())?;
    let threads = cli.threads.max(1);
    match cli.command {
        Command::Field(FieldCmd::Analyze { polyfile }) => {
            json_only(cli.format)?;
            let k = read_field(&polyfile)?;
            let mut v = serde_json::to_value(&*k).expect("serializable");
            v["log_abs_disc"] = json!(k.log_abs_disc());
            Ok(emit_json(v))
        }
        Command::Level(LevelCmd::Find { polyfile, dimg }) => {
            json_only(cli.format)?;
            let k = read_field(&polyfile)?;
            let l = find_congruence_level(&k, dimg, cfg.prime_scan_cap, threads)?;
            Ok(emit_json(serde_json::to_value(&l).expect("serializable")))
        }
        Command::Grh(GrhCmd::Threshold { d, logd }) => {
            json_only(cli.format)?;
            let r = grh_threshold(d, logd, &cfg)?;
            Ok(emit_json(serde_json::to_value(&r).expect("serializable")))
        }
        Command::Bound(BoundCmd::Grh { v, dimh }) => {
            json_only(cli.format)?;
            let b = volume_index_bound_grh(v, dimh, cfg.epsilon, cfg.prasad_c1, cfg.prasad_c2, cfg.lemma_c)?;
            Ok(emit_json(json!({
                "v": v,
                "dim_h": dimh,
                "epsilon": cfg.epsilon,
                "prasad_c1": cfg.prasad_c1,
                "prasad_c2": cfg.prasad_c2,
                "lemma_C": cfg.lemma_c,
                "bound": b,
            })))
        }
        Command::Bound(BoundCmd::Unconditional { d, dimh }) => {
            json_only(cli.format)?;
            let b = unconditional_index_bound(d, dimh)?;
            Ok(emit_json(json!({ "d": d, "dim_h": dimh, "bound": b.to_string() })))
        }
        Command::Torsion(TorsionCmd::Table { nmax, d }) => {
            if nmax == 0 {
                return Err(Error::InvalidInput("nmax must be >= 1".into()).into());
            }
            let rows = (1..=nmax).map(|n| max_torsion_order(n, d)).collect::<Result<Vec<_>, _>>()?;
            match table_format(cli.format) {
                Format::Json => Ok(emit_json(serde_json::to_value(&rows).expect("serializable"))),
                Format::Csv => {
                    let header = ["n", "d", "exact", "witness", "stated_bound", "proof_bound", "stated_holds"];
                    let body = rows.iter().map(|r| {
                        let w: Vec<String> = r.witness_orders.iter().map(u64::to_string).collect();
                        vec![
                            r.n.to_string(),
                            r.d.to_string(),
                            r.exact_max_order.to_string(),
                            format!("{{{}}}", w.join(",")),
                            r.stated_bound.to_string(),
                            r.proof_bound.to_string(),
                            r.stated_holds.to_string(),
                        ]
                    });
                    Ok(emit_csv(&header, body))
                }
            }
        }
        Command::Construct(args) => match args.sweep {
            Some(ConstructCmd::Sweep { pmax }) => {
                let rows = construct_sweep(pmax, &cfg, threads)?;
                match table_format(cli.format) {
                    Format::Json => Ok(emit_json(serde_json::to_value(&rows).expect("serializable"))),
                    Format::Csv => {
                        let body = rows.iter().map(|r| {
                            vec![r.p.to_string(), r.disc.to_string(), r.log_v_hat.to_string(), r.ratio.to_string()]
                        });
                        Ok(emit_csv(&["p", "disc", "log_v_hat", "ratio"], body))
                    }
                }
            }
            None => {
                json_only(cli.format)?;
                let p = args.p.ok_or_else(|| CliError::Input("construct needs --p or a subcommand".into()))?;
                if let Some(k) = args.probe_k {
                    if k > MAX_PROBE_K {
                        return Err(Error::CapExceeded(format!("probe k {k} exceeds {MAX_PROBE_K}")).into());
                    }
                }
                let lc = construct(p, args.dencap, args.probe_k, &cfg)?;
                Ok(emit_json(serde_json::to_value(&lc).expect("serializable")))
            }
        },
        Command::Apply(ApplyCmd::Generators { v, alpha, kappa, c }) => {
            json_only(cli.format)?;
            let form = match (alpha, kappa) {
                (Some(alpha), None) => GrowthForm::Power { alpha },
                (None, Some(kappa)) => GrowthForm::LogPower { kappa },
                _ => return Err(CliError::Input("give exactly one of --alpha or --kappa".into())),
            };
            let value = generator_bound_pipeline(v, c, form)?;
            Ok(emit_json(json!({ "v": v, "c": c, "growth": form, "value": value })))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.report());
            ExitCode::from(e.exit_code())
        }
    }
}
