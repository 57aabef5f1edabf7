//! Batch command implementations behind the `arraydir` binary.
//!
//! Exit codes: 0 success, 2 input error, 3 math-domain error,
//! 4 convergence failure, 5 safety cap reached.

use crate::baselines::{self, GeometryKind};
use crate::directivity::{directivity_analytic, directivity_quadrature, ElementPattern};
use crate::error::{Error, Result};
use crate::ga::{self, GaConfig, GaProblem, GaVariant};
use crate::geometry::{convex_hull_area, DirectionSpec};
use crate::omni::objective_g;
use crate::omni::CoordBox;
use crate::oupa::{self, SevConfig};
use crate::report::ResultRecord;
use crate::spec_file::{parse_angle, ArraySpecFile, SPEED_OF_LIGHT};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::fs;
use std::path::PathBuf;

/// Fixed default seed so reruns reproduce by default.
pub const DEFAULT_SEED: u64 = 20220;

pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::SpecFile(_) | Error::InvalidInput(_) => 2,
        Error::DegenerateDirection { .. }
        | Error::NonPositiveDenominator { .. }
        | Error::BoundsViolation { .. } => 3,
        Error::QuadratureNotConverged { .. } | Error::NoLocalMinimum { .. } => 4,
    }
}

#[derive(Debug, Parser)]
#[command(name = "arraydir", version, about = "Antenna-array directivity evaluation and element-placement optimization")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a JSON array spec: closed-form and quadrature directivity.
    Eval(EvalArgs),
    /// Design an optimal uniform planar array for a look direction.
    Oupa(OupaArgs),
    /// Optimize element positions with a genetic algorithm.
    Ga(GaArgs),
    /// Evaluate a reference geometry (ULA, UCA, UHPA, UPA).
    Baseline(BaselineArgs),
    /// Sweep element spacing for a plane-constrained geometry; emits CSV.
    SweepDmin(SweepArgs),
    /// Grid-design tradeoff table over (n1, n2) ranges; emits CSV.
    Pareto(ParetoArgs),
}

#[derive(Debug, Args)]
pub struct CommonDirection {
    /// Elevation angle; radians by default, e.g. "0.785" or "45deg".
    #[arg(long, default_value = "45deg")]
    pub theta0: String,
    /// Azimuth angle; radians by default, e.g. "0.785" or "45deg".
    #[arg(long, default_value = "45deg")]
    pub phi0: String,
    /// Wave number in 1/m.
    #[arg(long, conflicts_with = "freq")]
    pub k: Option<f64>,
    /// Carrier frequency in Hz (converted with c = 2.998e8 m/s).
    #[arg(long)]
    pub freq: Option<f64>,
}

impl CommonDirection {
    pub fn resolve(&self) -> Result<DirectionSpec> {
        let theta0 = parse_angle(&self.theta0)?;
        let phi0 = parse_angle(&self.phi0)?;
        let k = match (self.k, self.freq) {
            (Some(k), None) => k,
            (None, Some(f)) => 2.0 * std::f64::consts::PI * f / SPEED_OF_LIGHT,
            (None, None) => 1.0,
            (Some(_), Some(_)) => {
                return Err(Error::InvalidInput("give either --k or --freq".into()))
            }
        };
        if !(k > 0.0) {
            return Err(Error::InvalidInput(format!("wave number must be positive, got {k}")));
        }
        Ok(DirectionSpec::new(theta0, phi0, k))
    }
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Path to the JSON array spec.
    pub spec: PathBuf,
    /// Override the spec's elevation angle.
    #[arg(long)]
    pub theta0: Option<String>,
    /// Override the spec's azimuth angle.
    #[arg(long)]
    pub phi0: Option<String>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct OupaArgs {
    #[command(flatten)]
    pub dir: CommonDirection,
    /// Vertical element count.
    #[arg(long)]
    pub n1: usize,
    /// Horizontal element count.
    #[arg(long)]
    pub n2: usize,
    /// Line-search step.
    #[arg(long, default_value_t = 1e-3)]
    pub c_step: f64,
    /// Export the designed layout as an array spec file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GaVariantArg {
    Base,
    Marginal,
    Stall,
}

#[derive(Debug, Args)]
pub struct GaArgs {
    #[arg(long, value_enum, default_value_t = GaVariantArg::Base)]
    pub variant: GaVariantArg,
    /// Number of elements.
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub dir: CommonDirection,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Crossover fraction override.
    #[arg(long)]
    pub cf: Option<f64>,
    /// Mutation rate override.
    #[arg(long)]
    pub mr: Option<f64>,
    /// Grid rows of the reference design (marginal/stall); quasi-square
    /// factorization of --n when omitted.
    #[arg(long)]
    pub n1: Option<usize>,
    #[arg(long)]
    pub n2: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct BaselineArgs {
    /// ula, uca, uhpa or upa.
    #[arg(long)]
    pub geometry: String,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub dir: CommonDirection,
    /// Element spacing (chord for uca); defaults to half a wavelength.
    #[arg(long)]
    pub d: Option<f64>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub geometry: String,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub dir: CommonDirection,
    #[arg(long)]
    pub d_from: f64,
    #[arg(long)]
    pub d_to: f64,
    #[arg(long)]
    pub step: f64,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ParetoArgs {
    /// Inclusive range "lo:hi".
    #[arg(long)]
    pub n1_range: String,
    #[arg(long)]
    pub n2_range: String,
    #[command(flatten)]
    pub dir: CommonDirection,
    #[arg(long, default_value_t = 1e-3)]
    pub c_step: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_range(s: &str) -> Result<Vec<usize>> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| Error::InvalidInput(format!("range '{s}' must look like lo:hi")))?;
    let lo: usize = lo
        .trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad range start '{lo}'")))?;
    let hi: usize = hi
        .trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad range end '{hi}'")))?;
    Ok((lo..=hi).collect())
}

fn print_record(record: &ResultRecord, format: OutputFormat) {
    match format {
        OutputFormat::Json => println!("{}", record.to_json()),
        OutputFormat::Table => println!("{}", record.to_table()),
    }
}

fn emit_csv(path: &Option<PathBuf>, csv: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, csv)
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

pub fn cmd_eval(args: &EvalArgs) -> Result<ResultRecord> {
    let text = fs::read_to_string(&args.spec)
        .map_err(|e| Error::SpecFile(format!("cannot read {}: {e}", args.spec.display())))?;
    let resolved = ArraySpecFile::from_json(&text)?.resolve()?;

    let (theta0, phi0) = match (&args.theta0, &args.phi0) {
        (Some(t), Some(p)) => (parse_angle(t)?, parse_angle(p)?),
        (None, None) => resolved.direction.ok_or_else(|| {
            Error::InvalidInput("no direction in the spec; pass --theta0/--phi0".into())
        })?,
        (t, p) => {
            let fallback = resolved.direction.unwrap_or((0.0, 0.0));
            (
                t.as_deref().map(parse_angle).transpose()?.unwrap_or(fallback.0),
                p.as_deref().map(parse_angle).transpose()?.unwrap_or(fallback.1),
            )
        }
    };
    let dir = DirectionSpec::new(theta0, phi0, resolved.k);

    let analytic = directivity_analytic(&resolved.layout, resolved.pattern, &dir)?;
    let quadrature = directivity_quadrature(&resolved.layout, resolved.pattern, &dir)?;
    let rel = (analytic.linear - quadrature.linear).abs() / quadrature.linear;
    let xy: Vec<(f64, f64)> = resolved.layout.positions.iter().map(|p| (p.x, p.y)).collect();

    Ok(ResultRecord::new(
        "eval",
        json!({
            "spec": args.spec.display().to_string(),
            "n_elements": resolved.layout.len(),
            "pattern": {"u": resolved.pattern.u, "v": resolved.pattern.v},
            "theta0": theta0,
            "phi0": phi0,
            "k": resolved.k,
        }),
        json!({
            "directivity_dbi": analytic.dbi,
            "directivity_linear": analytic.linear,
            "quadrature_dbi": quadrature.dbi,
            "relative_difference": rel,
            "f1": analytic.f1,
            "f2": analytic.f2,
            "hull_area_xy": convex_hull_area(&xy),
        }),
        None,
    ))
}

pub fn cmd_oupa(args: &OupaArgs) -> Result<ResultRecord> {
    let dir = args.dir.resolve()?;
    let mut cfg = SevConfig::for_direction(&dir);
    cfg.step_c = args.c_step;
    let result = oupa::oupa(&dir, args.n1, args.n2, &cfg)?;

    if let Some(path) = &args.out {
        let spec = ArraySpecFile::from_layout(&result.layout, ElementPattern::OMNI, &dir);
        fs::write(path, spec.to_json_pretty())
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))?;
    }

    Ok(ResultRecord::new(
        "oupa",
        json!({
            "theta0": dir.theta0,
            "phi0": dir.phi0,
            "k": dir.k,
            "n1": args.n1,
            "n2": args.n2,
            "c_step": cfg.step_c,
            "d_cap": cfg.d_cap,
        }),
        json!({
            "d_min_star": result.d_min_star,
            "directivity_dbi": result.directivity.dbi,
            "directivity_linear": result.directivity.linear,
            "area": result.area,
            "g": result.g_at_optimum,
            "exported": args.out.as_ref().map(|p| p.display().to_string()),
        }),
        None,
    ))
}

pub fn cmd_ga(args: &GaArgs) -> Result<(ResultRecord, bool)> {
    let dir = args.dir.resolve()?;
    dir.require_nondegenerate()?;
    if args.n < 2 {
        return Err(Error::InvalidInput("GA needs at least two elements".into()));
    }
    let problem = GaProblem::uniform(dir, args.n);

    let (report, reference_dbi, cfg) = match args.variant {
        GaVariantArg::Base => {
            let mut cfg = GaConfig::base(args.n, args.seed);
            // Table bounds are stated for k = 1; scale with wavelength.
            let x_max = 5.0 / dir.k;
            cfg.bounds = vec![(0.0, x_max); 2 * args.n];
            if let Some(cf) = args.cf {
                cfg.crossover_fraction = cf;
            }
            if let Some(mr) = args.mr {
                cfg.mutation_rate = mr;
            }
            let report = ga::ga_optimize(&problem, &cfg)?;
            (report, None, cfg)
        }
        GaVariantArg::Marginal | GaVariantArg::Stall => {
            let (n1, n2) = match (args.n1, args.n2) {
                (Some(a), Some(b)) => (a, b),
                _ => oupa::quasi_square_factors(args.n),
            };
            if n1 * n2 != args.n {
                return Err(Error::InvalidInput(format!(
                    "n1*n2 = {} does not match --n {}",
                    n1 * n2,
                    args.n
                )));
            }
            let sev_cfg = SevConfig::for_direction(&dir);
            let reference = oupa::oupa(&dir, n1, n2, &sev_cfg)?;
            let (_, _, p_max) = ga::planar_chart_of(&reference);
            let variant = match args.variant {
                GaVariantArg::Marginal => GaVariant::Marginal,
                _ => GaVariant::Stall,
            };
            let mut cfg = GaConfig::refined(args.n, p_max, args.seed, variant);
            if let Some(cf) = args.cf {
                cfg.crossover_fraction = cf;
            }
            if let Some(mr) = args.mr {
                cfg.mutation_rate = mr;
            }
            let report = match variant {
                GaVariant::Marginal => ga::ga_marginal(&reference, &problem, &cfg)?,
                _ => ga::ga_stall(&reference, &problem, &cfg)?,
            };
            (report, Some(reference.directivity.dbi), cfg)
        }
    };

    let width = cfg.bounds[0].1 - cfg.bounds[0].0;
    let bound_box = CoordBox {
        x_max: width,
        y_max: width,
    };
    let objective = objective_g(&report.best_solution, &bound_box)?;
    let variant_name = match args.variant {
        GaVariantArg::Base => "base",
        GaVariantArg::Marginal => "marginal",
        GaVariantArg::Stall => "stall",
    };

    let record = ResultRecord::new(
        "ga",
        json!({
            "variant": variant_name,
            "n": args.n,
            "theta0": dir.theta0,
            "phi0": dir.phi0,
            "k": dir.k,
            "population_size": cfg.population_size,
            "crossover_fraction": cfg.crossover_fraction,
            "mutation_rate": cfg.mutation_rate,
            "max_generations": cfg.max_generations,
            "bounds": [cfg.bounds[0].0, cfg.bounds[0].1],
        }),
        json!({
            "directivity_dbi": report.best_directivity_dbi,
            "g": report.best_g,
            "bound": objective.bound,
            "gap": objective.gap,
            "generations": report.generations_run,
            "wall_time_s": report.wall_time_s,
            "reference_dbi": reference_dbi,
            "safety_cap_reached": report.safety_cap_reached,
            "history_non_increasing": report
                .history
                .windows(2)
                .all(|w| w[1].best_g <= w[0].best_g + 1e-15),
        }),
        Some(args.seed),
    );
    Ok((record, report.safety_cap_reached))
}

pub fn cmd_baseline(args: &BaselineArgs) -> Result<ResultRecord> {
    let dir = args.dir.resolve()?;
    let geometry = GeometryKind::parse(&args.geometry)?;
    let d = args.d.unwrap_or(dir.wavelength() / 2.0);

    let (report, area) = match geometry {
        GeometryKind::Ula => {
            let arr = baselines::ula_steered(args.n, d, &dir);
            let rep = directivity_analytic(&arr.layout, ElementPattern::OMNI, &dir)?;
            (rep, 0.0)
        }
        GeometryKind::Uca => {
            let arr = baselines::uca_steered(args.n, &dir);
            let rep = directivity_analytic(&arr.layout, ElementPattern::OMNI, &dir)?;
            let xy: Vec<(f64, f64)> =
                arr.layout.positions.iter().map(|p| (p.x, p.y)).collect();
            (rep, convex_hull_area(&xy))
        }
        GeometryKind::Uhpa | GeometryKind::Upa => {
            let point = baselines::planar_directivity(geometry, args.n, d, &dir)?;
            let flat = baselines::planar_layout(geometry, args.n, d);
            let rep = {
                let rot = crate::geometry::rotation_matrix(&dir);
                let positions: Vec<_> =
                    flat.positions.iter().map(|&p| rot.mul_row(p)).collect();
                directivity_analytic(
                    &crate::geometry::ArrayLayout::uniform(positions),
                    ElementPattern::OMNI,
                    &dir,
                )?
            };
            (rep, point.area)
        }
    };

    Ok(ResultRecord::new(
        "baseline",
        json!({
            "geometry": geometry.name(),
            "n": args.n,
            "theta0": dir.theta0,
            "phi0": dir.phi0,
            "k": dir.k,
            "d": d,
        }),
        json!({
            "directivity_dbi": report.dbi,
            "directivity_linear": report.linear,
            "f1": report.f1,
            "f2": report.f2,
            "hull_area": area,
        }),
        None,
    ))
}

pub fn cmd_sweep_dmin(args: &SweepArgs) -> Result<(ResultRecord, String)> {
    let dir = args.dir.resolve()?;
    let geometry = GeometryKind::parse(&args.geometry)?;
    let curve = baselines::dmin_sweep(geometry, args.n, &dir, (args.d_from, args.d_to), args.step)?;

    let mut csv = String::from("d_min,directivity_dbi,area\n");
    for p in &curve {
        csv.push_str(&format!("{},{},{}\n", p.d_min, p.directivity_dbi, p.area));
    }
    let best = baselines::sweep_argmax(&curve);

    let record = ResultRecord::new(
        "sweep-dmin",
        json!({
            "geometry": geometry.name(),
            "n": args.n,
            "theta0": dir.theta0,
            "phi0": dir.phi0,
            "k": dir.k,
            "d_from": args.d_from,
            "d_to": args.d_to,
            "step": args.step,
        }),
        json!({
            "samples": curve.len(),
            "best_d_min": best.map(|b| b.d_min),
            "best_directivity_dbi": best.map(|b| b.directivity_dbi),
            "best_area": best.map(|b| b.area),
        }),
        None,
    );
    Ok((record, csv))
}

pub fn cmd_pareto(args: &ParetoArgs) -> Result<(ResultRecord, String)> {
    let dir = args.dir.resolve()?;
    let n1s = parse_range(&args.n1_range)?;
    let n2s = parse_range(&args.n2_range)?;
    let mut cfg = SevConfig::for_direction(&dir);
    cfg.step_c = args.c_step;

    let mut csv = String::from("N,n1,n2,d_min_star,directivity_dbi,area\n");
    let mut rows = 0usize;
    for &n1 in &n1s {
        for &n2 in &n2s {
            let res = oupa::oupa(&dir, n1, n2, &cfg)?;
            csv.push_str(&format!(
                "{},{},{},{},{},{}\n",
                n1 * n2,
                n1,
                n2,
                res.d_min_star,
                res.directivity.dbi,
                res.area
            ));
            rows += 1;
        }
    }

    let record = ResultRecord::new(
        "pareto",
        json!({
            "n1_range": args.n1_range,
            "n2_range": args.n2_range,
            "theta0": dir.theta0,
            "phi0": dir.phi0,
            "k": dir.k,
            "c_step": args.c_step,
        }),
        json!({ "rows": rows }),
        None,
    );
    Ok((record, csv))
}

/// Dispatches a parsed command line; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let outcome: Result<i32> = match &cli.command {
        Command::Eval(args) => cmd_eval(args).map(|rec| {
            print_record(&rec, args.format);
            0
        }),
        Command::Oupa(args) => cmd_oupa(args).map(|rec| {
            print_record(&rec, args.format);
            0
        }),
        Command::Ga(args) => cmd_ga(args).map(|(rec, capped)| {
            print_record(&rec, args.format);
            if capped {
                5
            } else {
                0
            }
        }),
        Command::Baseline(args) => cmd_baseline(args).map(|rec| {
            print_record(&rec, args.format);
            0
        }),
        Command::SweepDmin(args) => cmd_sweep_dmin(args).and_then(|(rec, csv)| {
            emit_csv(&args.out, &csv)?;
            if args.out.is_some() {
                print_record(&rec, OutputFormat::Json);
            }
            Ok(0)
        }),
        Command::Pareto(args) => cmd_pareto(args).and_then(|(rec, csv)| {
            emit_csv(&args.out, &csv)?;
            if args.out.is_some() {
                print_record(&rec, OutputFormat::Json);
            }
            Ok(0)
        }),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}
