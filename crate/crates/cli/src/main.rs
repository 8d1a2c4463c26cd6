//! `casimir-harmonic`: tables of bulk energies, stress components, asymptotic
//! coefficients and the golden self-test.

mod output;

use casimir_core::asymptotics::{
    asymptotic_match_report, default_k, large_r_expansion, small_r_expansion, MatchOptions, Order, RSquareFamily,
    RemainderConstant, SeriesExpansion, SplitPart, StressFamily,
};
use casimir_core::energy::{bulk_energy_quadrature, bulk_energy_zeta, bulk_energy_zeta_recursive};
use casimir_core::selftest;
use casimir_core::stress::{split_grid, stress_grid};
use casimir_core::{critical_coupling, ComponentTag, Error, HarmonicConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};
use output::{format_num, Cell, Format, Report};
use serde_json::{json, Value};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "casimir-harmonic", version, about = "Vacuum stress and Casimir energy in a harmonic potential")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bulk energy E/k from the quadrature and zeta pipelines.
    Energy(EnergyArgs),
    /// Renormalized stress components on a radial grid.
    Stress(StressArgs),
    /// Small-r and large-r coefficient tables with the matching report.
    Asympt(AsymptArgs),
    /// Golden self-test, one row per criterion.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write to a file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Args)]
struct EnergyArgs {
    /// Dimensions, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "3")]
    d: Vec<u32>,
    /// Integrations by parts (default d + 1).
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ComponentArg {
    Tt,
    Rr,
    Theta,
    All,
}

#[derive(Args)]
struct StressArgs {
    #[arg(long, default_value_t = 1)]
    d: u32,
    /// Coupling, a number or `conformal`.
    #[arg(long, default_value = "conformal")]
    xi: String,
    #[arg(long, default_value_t = 1.0)]
    kappa_over_k: f64,
    /// Oscillator scale k; adds a physical radius column x = r/k.
    #[arg(long)]
    k: Option<f64>,
    /// Radial grid as MIN MAX STEPS.
    #[arg(long, num_args = 3, value_names = ["MIN", "MAX", "STEPS"], allow_negative_numbers = true)]
    r: Option<Vec<String>>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    r_min: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    r_max: f64,
    #[arg(long, default_value_t = 51, allow_negative_numbers = true)]
    r_steps: i64,
    #[arg(long, value_enum, default_value = "all")]
    component: ComponentArg,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PartArg {
    Diamond,
    Square,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    T0,
    T1,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExpansionArg {
    Small,
    Large,
    Both,
}

#[derive(Args)]
struct AsymptArgs {
    #[arg(long, default_value_t = 1)]
    d: u32,
    #[arg(long, value_enum, default_value = "tt")]
    component: ComponentArg,
    #[arg(long, value_enum, default_value = "both")]
    part: PartArg,
    #[arg(long, value_enum, default_value = "both")]
    order: OrderArg,
    #[arg(long, value_enum, default_value = "both")]
    expansion: ExpansionArg,
    /// Small-r truncation order N (default: polynomial degree).
    #[arg(long)]
    n_max: Option<usize>,
    /// Large-r Taylor order K.
    #[arg(long)]
    watson_k: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    v0: f64,
    /// Radii for the matching report, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "5,7,10")]
    probe: Vec<f64>,
    /// Drop large-r rows with power at or below this in the matching report.
    #[arg(long, allow_negative_numbers = true)]
    cutoff: Option<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SelftestArgs {
    /// Run one criterion only.
    #[arg(long)]
    criterion: Option<u32>,
    /// Report wall-clock times (output is then not reproducible).
    #[arg(long)]
    timings: bool,
    #[command(flatten)]
    common: Common,
}

/// Failure with its exit code.
enum Failure {
    Validation(String),
    Numerical(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Validation(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Outcome = Result<(Report, ExitCode), Failure>;

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Validation(msg.into())
}

fn check_tol(tol: f64) -> Result<(), Failure> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("--tol must be positive, got {tol}")))
    }
}

fn components(d: u32, arg: ComponentArg) -> Result<Vec<ComponentTag>, Failure> {
    let all = ComponentTag::for_dimension(d);
    let pick = match arg {
        ComponentArg::All => return Ok(all.to_vec()),
        ComponentArg::Tt => ComponentTag::Tt,
        ComponentArg::Rr => ComponentTag::Rr,
        ComponentArg::Theta => ComponentTag::Theta1Theta1Reduced,
    };
    if all.contains(&pick) {
        Ok(vec![pick])
    } else {
        Err(invalid(format!("component {} is not defined for d = {d}", pick.name())))
    }
}

fn parse_xi(s: &str, d: u32) -> Result<f64, Failure> {
    if s == "conformal" {
        return Ok(critical_coupling(d));
    }
    s.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| invalid(format!("--xi must be a number or `conformal`, got `{s}`")))
}

fn radial_grid(args: &StressArgs) -> Result<Vec<f64>, Failure> {
    let (lo, hi, steps) = match &args.r {
        Some(v) => {
            let num = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| invalid(format!("--r expects MIN MAX STEPS, got `{s}`")))
            };
            let steps = v[2]
                .parse::<i64>()
                .map_err(|_| invalid(format!("--r STEPS must be an integer, got `{}`", v[2])))?;
            (num(&v[0])?, num(&v[1])?, steps)
        }
        None => (args.r_min, args.r_max, args.r_steps),
    };
    if !(lo >= 0.0 && lo.is_finite()) {
        return Err(invalid(format!("r_min must be >= 0, got {lo}")));
    }
    if !(hi >= lo && hi.is_finite()) {
        return Err(invalid(format!("r_max must be >= r_min, got {hi}")));
    }
    if steps < 1 {
        return Err(invalid(format!("r_steps must be >= 1, got {steps}")));
    }
    if steps == 1 {
        return Ok(vec![lo]);
    }
    let h = (hi - lo) / (steps - 1) as f64;
    Ok((0..steps).map(|i| if i == steps - 1 { hi } else { lo + i as f64 * h }).collect())
}

fn run_energy(a: &EnergyArgs) -> Outcome {
    check_tol(a.common.tol)?;
    if a.d.iter().any(|&d| d < 1) {
        return Err(invalid("--d must be at least 1"));
    }
    let dims: Vec<String> = a.d.iter().map(|d| d.to_string()).collect();
    let config = vec![
        ("d", dims.join(",")),
        ("xi", "n/a".into()),
        ("kappa_over_k", "n/a".into()),
        ("tol", format!("{:e}", a.common.tol)),
        ("n", a.n.map_or("d+1".into(), |n| n.to_string())),
    ];
    let mut rep = Report::new(
        "energy",
        config,
        &["d", "n", "quadrature", "quadrature_err", "zeta", "abs_diff"],
    );
    for &d in &a.d {
        let n = a.n.unwrap_or(d as usize + 1);
        let q = bulk_energy_quadrature(d, n, a.common.tol)?;
        let z = if d <= 3 { bulk_energy_zeta(d)? } else { bulk_energy_zeta_recursive(d)? };
        rep.rows.push(vec![
            Cell::Int(d as i64),
            Cell::Int(n as i64),
            Cell::Num(q.value_per_k),
            Cell::Num(q.err_estimate),
            Cell::Num(z.value_per_k),
            Cell::Num((q.value_per_k - z.value_per_k).abs()),
        ]);
    }
    Ok((rep, ExitCode::SUCCESS))
}

fn run_stress(a: &StressArgs) -> Outcome {
    check_tol(a.common.tol)?;
    if !(1..=3).contains(&a.d) {
        return Err(invalid(format!("stress requires d in 1..=3, got {}", a.d)));
    }
    let xi = parse_xi(&a.xi, a.d)?;
    let k = a.k.unwrap_or(1.0);
    if !(a.kappa_over_k > 0.0) {
        return Err(invalid(format!("--kappa-over-k must be positive, got {}", a.kappa_over_k)));
    }
    let cfg = HarmonicConfig::new(a.d, k, k * a.kappa_over_k, xi)?;
    let comps = components(a.d, a.component)?;
    let radii = radial_grid(a)?;
    let config = vec![
        ("d", a.d.to_string()),
        ("xi", xi.to_string()),
        ("kappa_over_k", a.kappa_over_k.to_string()),
        ("tol", format!("{:e}", a.common.tol)),
        ("k", a.k.map_or("unset".into(), |k| k.to_string())),
        ("xi_conformal", critical_coupling(a.d).to_string()),
    ];
    let mut cols = vec!["component", "r"];
    if a.k.is_some() {
        cols.push("x");
    }
    cols.extend([
        "t0",
        "t1",
        "vev",
        "diamond_t0",
        "diamond_t1",
        "diamond_vev",
        "square_t0",
        "square_t1",
        "square_vev",
    ]);
    let mut rep = Report::new("stress", config, &cols);
    for &comp in &comps {
        let direct = stress_grid(&cfg, comp, &radii, a.common.tol)?;
        let split = split_grid(&cfg, comp, &radii, a.common.tol)?;
        for (v, s) in direct.iter().zip(&split) {
            let mut row = vec![Cell::Text(comp.name().into()), Cell::Num(v.r)];
            if let Some(k) = a.k {
                row.push(Cell::Num(v.r / k));
            }
            row.extend(
                [v.t0, v.t1, v.vev, s.diamond.t0, s.diamond.t1, s.diamond.vev, s.square.t0, s.square.t1, s.square.vev]
                    .map(Cell::Num),
            );
            rep.rows.push(row);
        }
    }
    if comps.contains(&ComponentTag::Theta1Theta1Reduced) {
        rep.diagnostics
            .push(("theta1theta1_reduced".into(), json!("(k/r)^2 T_theta1theta1, the (r/k)^2 metric factor removed")));
    }
    rep.diagnostics
        .push(("square".into(), json!("d/dxi of the component; vev = diamond_vev + (xi - xi_conformal) square_vev")));
    Ok((rep, ExitCode::SUCCESS))
}

fn remainder_json(kind: &str, part: SplitPart, order: Order, s: &SeriesExpansion) -> Value {
    let constant = match s.remainder.constant {
        RemainderConstant::Global { c } => json!({ "c": format_num(c) }),
        RemainderConstant::LogBound { f, g } => json!({ "f": format_num(f), "g": format_num(g) }),
    };
    json!({
        "expansion": kind,
        "part": part.name(),
        "order": order_name(order),
        "power": s.remainder.order,
        "constant": constant,
        "validity": s.remainder.validity,
    })
}

fn order_name(o: Order) -> &'static str {
    match o {
        Order::T0 => "t0",
        Order::T1 => "t1",
    }
}

fn run_asympt(a: &AsymptArgs) -> Outcome {
    check_tol(a.common.tol)?;
    if !(1..=3).contains(&a.d) {
        return Err(invalid(format!("asympt requires d in 1..=3, got {}", a.d)));
    }
    if a.component == ComponentArg::All {
        return Err(invalid("asympt takes a single --component"));
    }
    let comp = components(a.d, a.component)?[0];
    let parts = match a.part {
        PartArg::Diamond => vec![SplitPart::Diamond],
        PartArg::Square => vec![SplitPart::Square],
        PartArg::Both => vec![SplitPart::Diamond, SplitPart::Square],
    };
    let orders = match a.order {
        OrderArg::T0 => vec![Order::T0],
        OrderArg::T1 => vec![Order::T1],
        OrderArg::Both => vec![Order::T0, Order::T1],
    };
    let small = a.expansion != ExpansionArg::Large;
    let large = a.expansion != ExpansionArg::Small;
    let k = a.watson_k.unwrap_or_else(|| default_k(a.d));
    let config = vec![
        ("d", a.d.to_string()),
        ("xi", "split".into()),
        ("kappa_over_k", "n/a".into()),
        ("tol", format!("{:e}", a.common.tol)),
        ("component", comp.name().into()),
        ("watson_k", k.to_string()),
        ("v0", a.v0.to_string()),
    ];
    let mut rep = Report::new(
        "asympt",
        config,
        &["expansion", "part", "order", "r_power", "log_r2", "coefficient", "source"],
    );
    let mut remainders = Vec::new();
    for &part in &parts {
        for &order in &orders {
            let fam = StressFamily::new(a.d, comp, part, order)?;
            let mut push = |kind: &str, source: &str, s: &SeriesExpansion| {
                // rows that vanish identically carry no information
                for row in s.rows.iter().filter(|r| r.coefficient != 0.0) {
                    rep.rows.push(vec![
                        Cell::Text(kind.into()),
                        Cell::Text(part.name().into()),
                        Cell::Text(order_name(order).into()),
                        Cell::Num(row.r_power),
                        Cell::Int(row.has_log as i64),
                        Cell::Num(row.coefficient),
                        Cell::Text(source.into()),
                    ]);
                }
                remainders.push(remainder_json(kind, part, order, s));
            };
            if small {
                let n = a.n_max.unwrap_or(fam.len() - 1);
                let s = small_r_expansion(&fam, n, a.common.tol)?;
                push("small_r", "taylor_moments", &s);
            }
            if large {
                let e = large_r_expansion(&fam, k, a.v0, a.common.tol)?;
                push("large_r", "watson_limit_form", &e.limit);
            }
        }
    }
    rep.diagnostics.push(("remainders".into(), Value::Array(remainders)));
    if large && orders.contains(&Order::T0) {
        let cfg = HarmonicConfig::conformal(a.d)?;
        let mut opts = MatchOptions::for_dimension(a.d);
        opts.k = k;
        opts.v0 = a.v0;
        opts.cutoff = a.cutoff;
        let mut reports = Vec::new();
        for &part in &parts {
            let m = asymptotic_match_report(&cfg, comp, part, &a.probe, opts)?;
            let rows: Vec<Value> = m
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "r": r.r,
                        "numeric": format_num(r.numeric),
                        "series": format_num(r.series),
                        "diff": format_num(r.diff),
                        "bound": format_num(r.bound),
                    })
                })
                .collect();
            reports.push(json!({
                "part": part.name(),
                "expected_exponent": m.expected_exponent,
                "slopes": m.slopes.iter().map(|s| format_num(*s)).collect::<Vec<_>>(),
                "consistent": m.consistent,
                "rows": rows,
            }));
        }
        rep.diagnostics.push(("match".into(), Value::Array(reports)));
    }
    Ok((rep, ExitCode::SUCCESS))
}

fn run_selftest(a: &SelftestArgs) -> Outcome {
    let reports = match a.criterion {
        Some(id) => vec![selftest::run_criterion(id).ok_or_else(|| {
            invalid(format!("criterion must be in 1..={}, got {id}", selftest::criterion_count()))
        })?],
        None => selftest::run_all(),
    };
    let config = vec![
        ("d", "1,2,3".into()),
        ("xi", "suite".into()),
        ("kappa_over_k", "1".into()),
        ("tol", "per-criterion".into()),
    ];
    let mut cols = vec!["criterion", "status", "passed_checks", "checks", "title"];
    if a.timings {
        cols.push("seconds");
    }
    let mut rep = Report::new("selftest", config, &cols);
    let mut failures = Vec::new();
    for r in &reports {
        let passed = r.checks.iter().filter(|c| c.passed).count();
        let mut row = vec![
            Cell::Int(r.id as i64),
            Cell::Text(if r.passed { "PASS" } else { "FAIL" }.into()),
            Cell::Int(passed as i64),
            Cell::Int(r.checks.len() as i64),
            Cell::Text(r.title.into()),
        ];
        if a.timings {
            row.push(Cell::Num(r.elapsed.as_secs_f64()));
        }
        rep.rows.push(row);
        for c in r.failures() {
            failures.push(json!({
                "criterion": r.id,
                "check": c.label,
                "value": format_num(c.value),
                "expected": format_num(c.expected),
                "deviation": format_num(c.deviation),
                "tolerance": format_num(c.tolerance),
            }));
        }
    }
    rep.diagnostics.push(("failures".into(), Value::Array(failures)));
    let code = if reports.iter().all(|r| r.passed) { ExitCode::SUCCESS } else { ExitCode::from(1) };
    Ok((rep, code))
}

fn emit_error(kind: &str, message: &str) {
    let e = json!({ "error": { "kind": kind, "message": message } });
    eprintln!("{e}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            if !e.use_stderr() {
                // --help and --version
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            emit_error("validation", e.to_string().trim());
            return ExitCode::from(2);
        }
    };
    let (outcome, common) = match &cli.command {
        Command::Energy(a) => (run_energy(a), &a.common),
        Command::Stress(a) => (run_stress(a), &a.common),
        Command::Asympt(a) => (run_asympt(a), &a.common),
        Command::Selftest(a) => (run_selftest(a), &a.common),
    };
    let result = outcome.and_then(|(rep, code)| {
        let mut out: Box<dyn Write> = match &common.output {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        rep.write(common.format, &mut out)?;
        out.flush()?;
        Ok(code)
    });
    match result {
        Ok(code) => code,
        Err(Failure::Validation(m)) => {
            emit_error("validation", &m);
            ExitCode::from(2)
        }
        Err(Failure::Numerical(m)) => {
            emit_error("numerical", &m);
            ExitCode::from(3)
        }
        Err(Failure::Io(m)) => {
            emit_error("io", &m);
            ExitCode::from(1)
        }
    }
}
