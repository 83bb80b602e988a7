//! Command-line front end: evaluate Green functions, run Lempert searches,
//! scan grids, and write verification reports.
//!
//! Exit codes: 0 success, 2 parse/configuration failure, 3 domain or
//! geometry violation, 4 no feasible disc, 5 empty work after exclusions.

mod literal;

use std::fs;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::json;

use literal::{parse_complex, parse_grid, parse_point, parse_region, C64};
use pluripot::{
    counterexample_experiment, lelong, lempert_bidisc_axis, lempert_subset_min, ma_det,
    AxisGreen, Domain, Ereal, Error as LibError, GridRegion, LempertResult, PoleConfig,
    SolverConfig,
};

#[derive(Parser)]
#[command(name = "pluripot", version, about = "Green and Lempert function toolkit on model domains")]
struct Cli {
    /// Worker threads (default: PLURIPOT_THREADS, else all cores). Outputs
    /// are identical for any thread count.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Recorded in solver configs; all searches are deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    /// Telescoped weighted sum of equal-weight functions.
    Sum,
    /// Max of affine branches.
    Max,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    /// Monge-Ampere determinant of the configured Green function.
    Ma,
    /// Green function values.
    Green,
    /// Radial functional around the region center.
    Lelong,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate the axis-pole Green function at a point.
    Eval {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated complex coordinates, e.g. "0+0i,0.3+0i".
        #[arg(long)]
        point: String,
        #[arg(long, value_enum, default_value_t = Form::Sum)]
        form: Form,
    },
    /// Minimize the disc objective over feasible node configurations.
    Lempert {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        point: String,
        /// Per-node search grid "radii,angles".
        #[arg(long, default_value = "64,64")]
        grid: String,
        /// Refinement tolerance.
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        /// Pick feasibility tolerance on the minimum eigenvalue.
        #[arg(long, default_value_t = 1e-10)]
        psd_tol: f64,
        /// "all" for the subset minimum, or 1-based indices like "1,2".
        #[arg(long, default_value = "all")]
        subset: String,
    },
    /// Run the strict-gap experiment and write its report.
    Counterexample {
        #[arg(long, default_value = "0.5")]
        a: String,
        #[arg(long, default_value = "-0.5")]
        b: String,
        #[arg(long, default_value = "0.3")]
        gamma: String,
        /// Output file, or "-" for standard output.
        #[arg(long, default_value = "-")]
        out: String,
        /// Per-node search grid "radii,angles".
        #[arg(long, default_value = "64,64")]
        grid: String,
    },
    /// Scan a grid region and write CSV rows
    /// re_z1,im_z1,re_z2,im_z2,value in lexicographic grid order.
    Scan {
        #[arg(long)]
        config: PathBuf,
        /// "c1,c2,w1,w2,w3,w4": complex centers, four real half-widths.
        #[arg(long)]
        region: String,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        #[arg(long, value_enum)]
        what: What,
        /// Output file, or "-" for standard output.
        #[arg(long)]
        out: String,
        /// Radius for the lelong scan's radial functional.
        #[arg(long, default_value_t = 1e-4)]
        lelong_r: f64,
    },
}

struct CliError {
    code: u8,
    msg: String,
}

impl CliError {
    fn new(code: u8, msg: impl Into<String>) -> CliError {
        CliError {
            code,
            msg: msg.into(),
        }
    }
}

impl From<LibError> for CliError {
    fn from(e: LibError) -> CliError {
        let code = match &e {
            LibError::OutsideDomain(_) | LibError::InvalidGeometry(_) => 3,
            LibError::Infeasible(_) => 4,
            LibError::EmptyRegion(_) => 5,
            _ => 2,
        };
        CliError::new(code, e.to_string())
    }
}

fn parse_err(msg: impl Into<String>) -> CliError {
    CliError::new(2, msg)
}

#[derive(Deserialize)]
struct PoleConfigFile {
    domain: String,
    #[serde(default)]
    n: Option<usize>,
    poles: Vec<PoleEntry>,
}

#[derive(Deserialize)]
struct PoleEntry {
    a_re: f64,
    a_im: f64,
    weight: f64,
}

struct LoadedConfig {
    cfg: PoleConfig,
    domain: Domain,
}

fn load_config(path: &PathBuf) -> Result<LoadedConfig, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| parse_err(format!("cannot read {}: {e}", path.display())))?;
    let file: PoleConfigFile =
        serde_json::from_str(&text).map_err(|e| parse_err(format!("bad config JSON: {e}")))?;
    let domain = match file.domain.as_str() {
        "bidisc" => Domain::Bidisc,
        "polydisc" => Domain::Polydisc(
            file.n
                .ok_or_else(|| parse_err("polydisc config needs \"n\""))?,
        ),
        "ball" => Domain::UnitBall(file.n.ok_or_else(|| parse_err("ball config needs \"n\""))?),
        other => return Err(parse_err(format!("unknown domain {other:?}"))),
    };
    let axis: Vec<(C64, f64)> = file
        .poles
        .iter()
        .map(|p| (C64::new(p.a_re, p.a_im), p.weight))
        .collect();
    let cfg = PoleConfig::axis(domain, &axis)?;
    Ok(LoadedConfig { cfg, domain })
}

fn require_product_domain(domain: Domain) -> Result<(), CliError> {
    match domain {
        Domain::Bidisc | Domain::Polydisc(_) => Ok(()),
        d => Err(CliError::new(
            3,
            format!("closed forms need the bidisc or a polydisc, got {d:?}"),
        )),
    }
}

fn fmt17(v: Ereal) -> String {
    match v {
        Ereal::NegInf => "-inf".to_string(),
        Ereal::PosInf => "inf".to_string(),
        Ereal::Fin(x) => format!("{x:.16e}"),
    }
}

fn out_writer(path: &str) -> Result<Box<dyn Write>, CliError> {
    if path == "-" {
        Ok(Box::new(BufWriter::new(std::io::stdout())))
    } else {
        let f = fs::File::create(path)
            .map_err(|e| parse_err(format!("cannot create {path}: {e}")))?;
        Ok(Box::new(BufWriter::new(f)))
    }
}

fn cmd_eval(config: &PathBuf, point: &str, form: Form) -> Result<(), CliError> {
    let loaded = load_config(config)?;
    require_product_domain(loaded.domain)?;
    let z = parse_point(point).map_err(parse_err)?;
    if z.len() != loaded.domain.dim() {
        return Err(parse_err(format!(
            "point has {} coordinates, domain {:?} wants {}",
            z.len(),
            loaded.domain,
            loaded.domain.dim()
        )));
    }
    let green = AxisGreen::from_config(&loaded.cfg)?;
    let value = match form {
        Form::Sum => green.eval(&z)?,
        Form::Max => green.eval_maxform(&z)?,
    };
    println!("{}", fmt17(value));
    Ok(())
}

fn lempert_result_json(res: &LempertResult) -> serde_json::Value {
    json!({
        "value": res.value.as_f64(),
        "subset_1based": res.subset.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "node_moduli": res.nodes.iter().map(|n| n.norm()).collect::<Vec<_>>(),
        "nodes": res.nodes.iter().map(|n| [n.re, n.im]).collect::<Vec<_>>(),
        "pick_certificates": res.certificates,
        "feasible": res.feasible(),
    })
}

fn cmd_lempert(
    config: &PathBuf,
    point: &str,
    grid: &str,
    tol: f64,
    psd_tol: f64,
    subset: &str,
    seed: u64,
) -> Result<(), CliError> {
    let loaded = load_config(config)?;
    if loaded.domain != Domain::Bidisc {
        return Err(CliError::new(
            3,
            format!("the Lempert solver works on the bidisc, got {:?}", loaded.domain),
        ));
    }
    let z = parse_point(point).map_err(parse_err)?;
    let (radii, angles) = parse_grid(grid).map_err(parse_err)?;
    let sc = SolverConfig {
        radii,
        angles,
        refine_tol: tol,
        psd_tol,
        seed,
        ..SolverConfig::default()
    };
    let weights = loaded.cfg.weights();
    let res = if subset == "all" {
        lempert_subset_min(&z, &loaded.cfg, &weights, &sc)?
    } else {
        let indices: Vec<usize> = subset
            .split(',')
            .map(|s| {
                s.parse::<usize>()
                    .ok()
                    .and_then(|i| i.checked_sub(1))
                    .ok_or_else(|| parse_err(format!("bad subset index {s:?} (1-based)")))
            })
            .collect::<Result<_, _>>()?;
        lempert_bidisc_axis(&z, &loaded.cfg, &weights, &indices, &sc)?
    };
    if !res.feasible() {
        return Err(CliError::new(
            4,
            "no feasible disc found at this resolution",
        ));
    }
    println!("{}", fmt17(res.value));
    println!("{}", lempert_result_json(&res));
    Ok(())
}

fn cmd_counterexample(
    a: &str,
    b: &str,
    gamma: &str,
    out: &str,
    grid: &str,
    seed: u64,
) -> Result<(), CliError> {
    let a = parse_complex(a).map_err(parse_err)?;
    let b = parse_complex(b).map_err(parse_err)?;
    let gamma = parse_complex(gamma).map_err(parse_err)?;
    let (radii, angles) = parse_grid(grid).map_err(parse_err)?;
    let sc = SolverConfig {
        radii,
        angles,
        seed,
        ..SolverConfig::default()
    };
    let report = counterexample_experiment(a, b, gamma, &sc)?;
    let mut w = out_writer(out)?;
    writeln!(w, "{}", report.to_json_string()).map_err(LibError::Io)?;
    Ok(())
}

fn effective_2d_domain(domain: Domain) -> Domain {
    match domain {
        Domain::Bidisc | Domain::Polydisc(_) => Domain::Bidisc,
        other => other,
    }
}

fn cmd_scan(
    config: &PathBuf,
    region: &str,
    step: f64,
    what: What,
    out: &str,
    lelong_r: f64,
) -> Result<(), CliError> {
    let loaded = load_config(config)?;
    require_product_domain(loaded.domain)?;
    let ((c1, c2), hw) = parse_region(region).map_err(parse_err)?;

    // a polydisc configuration is scanned on its (z1, z2) slice, where the
    // higher coordinates vanish and the Green function matches the bidisc one
    let bidisc_cfg = if loaded.domain == Domain::Bidisc {
        loaded.cfg.clone()
    } else {
        let axis: Vec<(C64, f64)> = loaded
            .cfg
            .poles()
            .iter()
            .map(|(loc, w)| (loc[0], *w))
            .collect();
        PoleConfig::axis(Domain::Bidisc, &axis)?
    };
    let green = AxisGreen::from_config(&bidisc_cfg)?;

    let exclusions: Vec<((C64, C64), f64)> = match what {
        What::Ma => bidisc_cfg
            .poles()
            .iter()
            .map(|(loc, _)| ((loc[0], loc[1]), (0.05f64).max(2.5 * step)))
            .collect(),
        What::Green | What::Lelong => vec![],
    };
    let grid = GridRegion::new(
        (c1, c2),
        hw,
        step,
        exclusions,
        effective_2d_domain(loaded.domain),
    )?;

    let n = grid.len();
    let rows: Vec<Option<String>> = (0..n)
        .into_par_iter()
        .map(|idx| {
            let (z1, z2) = grid.point(idx);
            let value = match what {
                What::Green => Some(green.eval_unchecked(&[z1, z2]).as_f64()),
                What::Ma => {
                    if grid.excluded(z1, z2) || green.branch_gap(&[z1, z2]) < 10.0 * step {
                        None
                    } else {
                        ma_det(&green, z1, z2, step).ok()
                    }
                }
                What::Lelong => {
                    let dir = [z1 - c1, z2 - c2];
                    if dir[0].norm() == 0.0 && dir[1].norm() == 0.0 {
                        None
                    } else {
                        let u = |p: &[C64]| green.eval_unchecked(&[c1 + p[0], c2 + p[1]]);
                        lelong::psi(u, &dir, lelong_r, 256).ok()
                    }
                }
            };
            value.map(|v| {
                format!(
                    "{},{},{},{},{}",
                    z1.re, z1.im, z2.re, z2.im, v
                )
            })
        })
        .collect();

    let written: Vec<&String> = rows.iter().flatten().collect();
    if written.is_empty() {
        return Err(CliError::new(5, "empty scan: every grid point was skipped"));
    }
    let mut w = out_writer(out)?;
    (|| -> std::io::Result<()> {
        writeln!(w, "re_z1,im_z1,re_z2,im_z2,value")?;
        for row in written {
            writeln!(w, "{row}")?;
        }
        w.flush()
    })()
    .map_err(LibError::Io)?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match &cli.cmd {
        Cmd::Eval {
            config,
            point,
            form,
        } => cmd_eval(config, point, *form),
        Cmd::Lempert {
            config,
            point,
            grid,
            tol,
            psd_tol,
            subset,
        } => cmd_lempert(config, point, grid, *tol, *psd_tol, subset, cli.seed),
        Cmd::Counterexample {
            a,
            b,
            gamma,
            out,
            grid,
        } => cmd_counterexample(a, b, gamma, out, grid, cli.seed),
        Cmd::Scan {
            config,
            region,
            step,
            what,
            out,
            lelong_r,
        } => cmd_scan(config, region, *step, *what, out, *lelong_r),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads.or_else(|| {
        std::env::var("PLURIPOT_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    let pool = {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(t) = threads {
            builder = builder.num_threads(t);
        }
        match builder.build() {
            Ok(p) => p,
            Err(e) => {
                eprintln!("error: cannot build thread pool: {e}");
                return ExitCode::from(2);
            }
        }
    };
    match pool.install(|| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}
