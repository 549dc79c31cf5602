//! Command-line front end: parameter sweeps, headline numbers and
//! cross-checks as CSV or JSON. Exit codes: 0 success, 1 computation or
//! verification failure, 2 usage error.

use clap::{Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use telefid::classical::max_classical_fidelity;
use telefid::distributions::IsotropicDistribution;
use telefid::engine::{
    self, max_avg_fidelity, useless_volume_fraction, VolumeEstimator,
};
use telefid::measurements::{agrawal_basis, bell_basis, computational_basis, AgrawalParams, VonNeumannBasis};
use telefid::mc::{simulate, SimConfig};
use telefid::quad::QuadConfig;
use telefid::resources::{classical_quantum, werner, BellDiagonal};
use telefid::TwoQubitBlochState;

#[derive(Parser)]
#[command(name = "telefid", version, about = "Maximal average fidelity of qubit teleportation")]
struct Cli {
    /// Cap the rayon worker count.
    #[arg(long, global = true, env = "TELEFID_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a named headline quantity.
    ///
    /// Names: classical-pure, classical-mixed, classical-fixed:<x>,
    /// delta-max-werner (prints "delta x").
    Value { name: String },
    /// Sweep one parameter and emit CSV `param,f_max,f_classical`.
    Curve {
        /// werner[:<p>] | cq:<axis>[:<c>] | bell:<c1>:<c2>:<c3>
        #[arg(long)]
        resource: String,
        /// bell | computational | agrawal[:<c_n>]
        #[arg(long)]
        basis: String,
        /// pure | fixed[:<x>] | ball | shell:<a>:<b>
        #[arg(long)]
        dist: String,
        /// name:start:stop:count with inclusive endpoints; name is one of
        /// p, c, c1, c2, c3, x, cn.
        #[arg(long)]
        sweep: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Useless-state volume fraction over a c_n grid, CSV `c_n,useless_fraction`.
    Volume {
        /// start:stop:count grid over the measurement strength c_n.
        #[arg(long, default_value = "0:1:21")]
        grid: String,
        /// grid:<n> (midpoint grid, n^3 cells) | mc:<samples>
        #[arg(long, default_value = "grid:200")]
        estimator: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Cross-check the quadrature engine against the Monte-Carlo oracle;
    /// emits a JSON report and fails (exit 1) when they disagree.
    Verify {
        #[arg(long)]
        resource: String,
        #[arg(long)]
        basis: String,
        #[arg(long)]
        dist: String,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Sample measurement outcomes per shot instead of averaging exactly.
        #[arg(long)]
        sample_outcomes: bool,
        /// Acceptance window in standard errors.
        #[arg(long, default_value_t = 3.0)]
        sigma: f64,
    },
}

fn usage(msg: impl std::fmt::Display) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(2);
}

fn fail(msg: impl std::fmt::Display) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(1);
}

/// 12 significant digits, locale independent.
fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

#[derive(Clone, Copy)]
enum ResourceSel {
    Werner(Option<f64>),
    Cq { axis: usize, c: Option<f64> },
    Bell([Option<f64>; 3]),
}

impl ResourceSel {
    fn parse(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| p.parse::<f64>().map_err(|_| format!("bad number `{p}` in `{s}`"));
        match parts.as_slice() {
            ["werner"] => Ok(Self::Werner(None)),
            ["werner", p] => Ok(Self::Werner(Some(num(p)?))),
            ["cq", axis] | ["cq", axis, _] => {
                let axis: usize =
                    axis.parse().map_err(|_| format!("bad axis in `{s}`"))?;
                let c = if parts.len() == 3 { Some(num(parts[2])?) } else { None };
                Ok(Self::Cq { axis, c })
            }
            ["bell", c1, c2, c3] => {
                Ok(Self::Bell([Some(num(c1)?), Some(num(c2)?), Some(num(c3)?)]))
            }
            // Two coefficients: c3 left open for the sweep.
            ["bell", c1, c2] => Ok(Self::Bell([Some(num(c1)?), Some(num(c2)?), None])),
            _ => Err(format!(
                "unknown resource `{s}` (expected werner[:<p>], cq:<axis>[:<c>], bell:<c1>:<c2>[:<c3>])"
            )),
        }
    }

    fn build(&self) -> Result<TwoQubitBlochState, String> {
        let missing = || "resource parameter unset: fix it in the selector or sweep it".to_string();
        let state = match *self {
            Self::Werner(p) => werner(p.ok_or_else(missing)?)
                .map_err(|e| e.to_string())?
                .to_state(),
            Self::Cq { axis, c } => classical_quantum(axis, c.ok_or_else(missing)?)
                .map_err(|e| e.to_string())?
                .to_state(),
            Self::Bell(c) => {
                let s = BellDiagonal::new(
                    c[0].ok_or_else(missing)?,
                    c[1].ok_or_else(missing)?,
                    c[2].ok_or_else(missing)?,
                );
                if !s.is_physical() {
                    return Err(format!("{s:?} is outside the Bell-diagonal tetrahedron"));
                }
                s.to_state()
            }
        };
        Ok(state)
    }
}

#[derive(Clone, Copy)]
enum BasisSel {
    Bell,
    Computational,
    Agrawal(Option<f64>),
}

impl BasisSel {
    fn parse(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["bell"] => Ok(Self::Bell),
            ["computational"] => Ok(Self::Computational),
            ["agrawal"] => Ok(Self::Agrawal(None)),
            ["agrawal", c] => Ok(Self::Agrawal(Some(
                c.parse().map_err(|_| format!("bad c_n in `{s}`"))?,
            ))),
            _ => Err(format!(
                "unknown basis `{s}` (expected bell, computational, agrawal[:<c_n>])"
            )),
        }
    }

    fn build(&self) -> Result<VonNeumannBasis, String> {
        match *self {
            Self::Bell => Ok(bell_basis()),
            Self::Computational => Ok(computational_basis()),
            Self::Agrawal(c_n) => {
                let c_n = c_n
                    .ok_or_else(|| "c_n unset: fix it in the selector or sweep it".to_string())?;
                Ok(agrawal_basis(
                    &AgrawalParams::from_correlation(c_n).map_err(|e| e.to_string())?,
                ))
            }
        }
    }
}

#[derive(Clone, Copy)]
enum DistSel {
    Pure,
    Fixed(Option<f64>),
    Ball,
    Shell(f64, f64),
}

impl DistSel {
    fn parse(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| p.parse::<f64>().map_err(|_| format!("bad number `{p}` in `{s}`"));
        match parts.as_slice() {
            ["pure"] => Ok(Self::Pure),
            ["fixed"] => Ok(Self::Fixed(None)),
            ["fixed", x] => Ok(Self::Fixed(Some(num(x)?))),
            ["ball"] => Ok(Self::Ball),
            ["shell", a, b] => Ok(Self::Shell(num(a)?, num(b)?)),
            _ => Err(format!(
                "unknown distribution `{s}` (expected pure, fixed[:<x>], ball, shell:<a>:<b>)"
            )),
        }
    }

    fn build(&self) -> Result<IsotropicDistribution, String> {
        match *self {
            Self::Pure => Ok(IsotropicDistribution::Pure),
            Self::Fixed(x) => IsotropicDistribution::fixed_purity(
                x.ok_or_else(|| "x unset: fix it in the selector or sweep it".to_string())?,
            )
            .map_err(|e| e.to_string()),
            Self::Ball => Ok(IsotropicDistribution::UniformBall),
            Self::Shell(a, b) => {
                IsotropicDistribution::shell(a, b).map_err(|e| e.to_string())
            }
        }
    }
}

/// `start:stop:count` with inclusive endpoints.
fn parse_grid(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, count] = parts.as_slice() else {
        return Err(format!("bad grid `{s}` (expected start:stop:count)"));
    };
    let start: f64 = start.parse().map_err(|_| format!("bad start in `{s}`"))?;
    let stop: f64 = stop.parse().map_err(|_| format!("bad stop in `{s}`"))?;
    let count: usize = count.parse().map_err(|_| format!("bad count in `{s}`"))?;
    if count == 0 {
        return Err("grid count must be >= 1".into());
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    Ok((0..count)
        .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
        .collect())
}

struct Sweep {
    name: String,
    values: Vec<f64>,
}

fn parse_sweep(s: &str) -> Result<Sweep, String> {
    let (name, rest) = s
        .split_once(':')
        .ok_or_else(|| format!("bad sweep `{s}` (expected name:start:stop:count)"))?;
    if !matches!(name, "p" | "c" | "c1" | "c2" | "c3" | "x" | "cn") {
        return Err(format!(
            "unknown sweep variable `{name}` (expected p, c, c1, c2, c3, x, cn)"
        ));
    }
    Ok(Sweep { name: name.into(), values: parse_grid(rest)? })
}

fn apply_sweep(
    name: &str,
    v: f64,
    resource: &mut ResourceSel,
    basis: &mut BasisSel,
    dist: &mut DistSel,
) -> Result<(), String> {
    match (name, &mut *resource, &mut *basis, &mut *dist) {
        ("p", ResourceSel::Werner(p), _, _) => *p = Some(v),
        ("c", ResourceSel::Cq { c, .. }, _, _) => *c = Some(v),
        ("c1", ResourceSel::Bell(c), _, _) => c[0] = Some(v),
        ("c2", ResourceSel::Bell(c), _, _) => c[1] = Some(v),
        ("c3", ResourceSel::Bell(c), _, _) => c[2] = Some(v),
        ("cn", _, BasisSel::Agrawal(c_n), _) => *c_n = Some(v),
        ("x", _, _, DistSel::Fixed(x)) => *x = Some(v),
        _ => {
            return Err(format!(
                "sweep variable `{name}` does not match the chosen selectors"
            ))
        }
    }
    Ok(())
}

fn write_out(path: &Option<PathBuf>, contents: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, contents),
        None => std::io::stdout().write_all(contents.as_bytes()),
    }
}

fn cmd_value(name: &str) -> Result<String, String> {
    match name {
        "classical-pure" => Ok(sig12(max_classical_fidelity(&IsotropicDistribution::Pure))),
        "classical-mixed" => Ok(sig12(max_classical_fidelity(
            &IsotropicDistribution::UniformBall,
        ))),
        "delta-max-werner" => {
            let (delta, x) = engine::werner_fixed_purity_max_gap(1.0 / 3.0)
                .map_err(|e| e.to_string())?;
            Ok(format!("{} {}", sig12(delta), sig12(x)))
        }
        _ => {
            if let Some(x) = name.strip_prefix("classical-fixed:") {
                let x: f64 = x.parse().map_err(|_| format!("bad x in `{name}`"))?;
                let d = IsotropicDistribution::fixed_purity(x).map_err(|e| e.to_string())?;
                Ok(sig12(max_classical_fidelity(&d)))
            } else {
                Err(format!(
                    "unknown quantity `{name}` (expected classical-pure, classical-mixed, classical-fixed:<x>, delta-max-werner)"
                ))
            }
        }
    }
}

fn cmd_curve(
    resource: &str,
    basis: &str,
    dist: &str,
    sweep: &str,
) -> Result<String, String> {
    let resource = ResourceSel::parse(resource)?;
    let basis = BasisSel::parse(basis)?;
    let dist = DistSel::parse(dist)?;
    let sweep = parse_sweep(sweep)?;
    let cfg = QuadConfig::default();
    let mut csv = String::from("param,f_max,f_classical\n");
    for &v in &sweep.values {
        let (mut r, mut b, mut d) = (resource, basis, dist);
        apply_sweep(&sweep.name, v, &mut r, &mut b, &mut d)?;
        let d = d.build()?;
        let result = max_avg_fidelity(&r.build()?, &b.build()?, &d, &cfg)
            .map_err(|e| e.to_string())?;
        let classical = max_classical_fidelity(&d);
        csv.push_str(&format!("{},{},{}\n", sig12(v), sig12(result.f_max), sig12(classical)));
    }
    Ok(csv)
}

fn cmd_volume(grid: &str, estimator: &str, seed: u64) -> Result<String, String> {
    let grid = parse_grid(grid)?;
    let estimator = match estimator.split_once(':') {
        Some(("grid", n)) => VolumeEstimator::Grid(
            n.parse().map_err(|_| format!("bad grid size in `{estimator}`"))?,
        ),
        Some(("mc", n)) => VolumeEstimator::MonteCarlo {
            samples: n.parse().map_err(|_| format!("bad sample count in `{estimator}`"))?,
            seed,
        },
        _ => return Err(format!("unknown estimator `{estimator}` (expected grid:<n> or mc:<samples>)")),
    };
    let mut csv = String::from("c_n,useless_fraction\n");
    for &c_n in &grid {
        let fraction = useless_volume_fraction(c_n, estimator).map_err(|e| e.to_string())?;
        csv.push_str(&format!("{},{}\n", sig12(c_n), sig12(fraction)));
    }
    Ok(csv)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            fail(e);
        }
    }
    match &cli.command {
        Command::Value { name } => match cmd_value(name) {
            Ok(out) => println!("{out}"),
            Err(e) => usage(e),
        },
        Command::Curve { resource, basis, dist, sweep, output } => {
            match cmd_curve(resource, basis, dist, sweep) {
                Ok(csv) => {
                    if let Err(e) = write_out(output, &csv) {
                        fail(e);
                    }
                }
                Err(e) => usage(e),
            }
        }
        Command::Volume { grid, estimator, seed, output } => {
            match cmd_volume(grid, estimator, *seed) {
                Ok(csv) => {
                    if let Err(e) = write_out(output, &csv) {
                        fail(e);
                    }
                }
                Err(e) => usage(e),
            }
        }
        Command::Verify { resource, basis, dist, samples, seed, sample_outcomes, sigma } => {
            let parse = || -> Result<_, String> {
                Ok((
                    ResourceSel::parse(resource)?.build()?,
                    BasisSel::parse(basis)?.build()?,
                    DistSel::parse(dist)?.build()?,
                ))
            };
            let (state, basis, dist) = match parse() {
                Ok(v) => v,
                Err(e) => usage(e),
            };
            let analytic = match max_avg_fidelity(&state, &basis, &dist, &QuadConfig::default()) {
                Ok(r) => r.f_max,
                Err(e) => fail(e),
            };
            let report = match simulate(
                &state,
                &basis,
                &SimConfig {
                    sample_count: *samples,
                    seed: *seed,
                    distribution: dist,
                    sample_outcomes: *sample_outcomes,
                },
            ) {
                Ok(r) => r,
                Err(e) => fail(e),
            };
            let delta = (analytic - report.mean_fidelity).abs();
            // A perfect protocol has zero variance; give the comparison an
            // absolute floor at quadrature accuracy.
            let pass = delta <= sigma * report.standard_error + 1e-9;
            let json = serde_json::json!({
                "analytic": analytic,
                "mc_mean": report.mean_fidelity,
                "mc_stderr": report.standard_error,
                "samples": report.sample_count,
                "outcome_frequencies": report.outcome_frequencies,
                "pass": pass,
                "seed": seed,
            });
            println!("{}", serde_json::to_string_pretty(&json).unwrap());
            if !pass {
                return ExitCode::from(1);
            }
        }
    }
    ExitCode::SUCCESS
}
