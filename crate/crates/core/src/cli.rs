//! `geocops` command line: run, verify, sweep, replay.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analysis::{self, delta, ShadowMap};
use crate::config::{rerun, RunConfig};
use crate::engine::{replay, Trace};
use crate::error::{Error, Result};
use crate::spaces::SpaceKind;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_ILLEGAL_MOVE: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "geocops", version, about = "Cops and Robber on compact geodesic spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Play one game from a config file.
    Run(RunArgs),
    /// Numerically check a supporting lemma.
    Verify(VerifyArgs),
    /// Play a template config over a parameter grid.
    Sweep(SweepArgs),
    /// Re-simulate a trace and compare.
    Replay(ReplayArgs),
}

#[derive(Args, Debug, Clone, Default)]
pub struct Overrides {
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, conflicts_with = "lenient")]
    pub strict: bool,
    #[arg(long)]
    pub lenient: bool,
    #[arg(long)]
    pub max_steps: Option<u64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
}

impl Overrides {
    fn apply(&self, mut c: RunConfig) -> RunConfig {
        if let Some(s) = self.seed {
            c.seed = s;
        }
        if self.strict {
            c.strict = true;
        }
        if self.lenient {
            c.strict = false;
        }
        if let Some(m) = self.max_steps {
            c.max_steps = m;
        }
        if let Some(e) = self.epsilon {
            c.epsilon = Some(e);
        }
        c
    }
}

#[derive(Args, Debug)]
pub struct RunArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory (defaults to the config's `out`, then `.`).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub overrides: Overrides,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Delta,
    Lipschitz,
    Technical,
    Simplex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DeltaSpace {
    Ball,
    Hemisphere,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// delta | lipschitz | technical | simplex
    pub suite: String,
    #[arg(long, value_enum)]
    pub space: Option<DeltaSpace>,
    #[arg(long)]
    pub d1: Option<f64>,
    #[arg(long)]
    pub d2: Option<f64>,
    #[arg(long)]
    pub d: Option<f64>,
    /// Grid resolution (delta: points per axis of the angle scan;
    /// technical: points per axis of the 4-D grid).
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Random triples per space for delta without explicit radii.
    #[arg(long, default_value_t = 100)]
    pub triples: usize,
    #[arg(long)]
    pub map: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// `path=v1,v2,...`; repeat for a Cartesian product.
    #[arg(long = "param", required = true)]
    pub params: Vec<String>,
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub overrides: Overrides,
}

#[derive(Args, Debug)]
pub struct ReplayArgs {
    pub trace: PathBuf,
    /// Write the re-simulated trace here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::IllegalMove { .. } => EXIT_ILLEGAL_MOVE,
        Error::Config(_) | Error::Parse(_) => EXIT_CONFIG,
        _ => EXIT_FAILURE,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_CONFIG,
            };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Run(a) => cmd_run(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Sweep(a) => cmd_sweep(&a),
        Command::Replay(a) => cmd_replay(&a),
    }
}

fn load_config(path: &Path) -> Result<RunConfig> {
    let text = fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    RunConfig::from_json(&text)
}

/// Writes trace.json and metrics.csv into `dir`.
pub fn write_outputs(dir: &Path, trace: &Trace) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("trace.json"), trace.to_json())?;
    fs::write(dir.join("metrics.csv"), analysis::trace_metrics(trace).to_csv())?;
    Ok(())
}

pub fn cmd_run(a: &RunArgs) -> Result<i32> {
    let config = a.overrides.apply(load_config(&a.config)?);
    config.validate()?;
    let dir = a
        .out
        .clone()
        .or_else(|| config.out.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    let trace = config.simulate()?;
    write_outputs(&dir, &trace)?;
    let summary = analysis::trace_metrics(&trace);
    if let Some(o) = &trace.outcome {
        println!("outcome\t{}", o.result.as_str());
        println!("steps\t{}", o.steps);
        println!("value\t{}", o.value);
        if let Some(c) = o.capturing_cop {
            println!("capturing_cop\t{c}");
        }
    }
    for f in &summary.flags {
        println!("{}\t{}\t{}", f.name, if f.ok { "ok" } else { "FAIL" }, f.detail);
    }
    Ok(EXIT_OK)
}

fn row(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<i32> {
    let suite = match Suite::from_str(&a.suite, true) {
        Ok(s) => s,
        Err(_) => return Err(Error::Config(format!("unknown suite `{}`", a.suite))),
    };
    let pass = match suite {
        Suite::Delta => verify_delta(a)?,
        Suite::Technical => {
            let r = analysis::technical::sweep(a.grid.unwrap_or(20));
            println!("grid\tchecked\tskipped\tviolations\tmin_margin\tresult");
            println!(
                "{}\t{}\t{}\t{}\t{:e}\t{}",
                r.grid,
                r.checked,
                r.skipped,
                r.violations,
                r.min_margin,
                row(r.pass)
            );
            r.pass
        }
        Suite::Lipschitz => {
            let maps: Vec<ShadowMap> = match &a.map {
                Some(m) => vec![m.parse()?],
                None => ShadowMap::ALL.to_vec(),
            };
            println!("map\tsamples\tmax_ratio\tidempotent\tfixes_image\tresult");
            let mut all = true;
            for m in maps {
                let r = analysis::check_lipschitz(m, a.samples.unwrap_or(10_000), a.seed)?;
                println!(
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    m.as_str(),
                    r.samples,
                    r.max_ratio,
                    r.idempotent,
                    r.fixes_image,
                    row(r.pass)
                );
                all &= r.pass;
            }
            all
        }
        Suite::Simplex => {
            let ns: Vec<usize> = a.n.map_or_else(|| (2..=5).collect(), |n| vec![n]);
            println!("n\tsamples\tbound_factor\tmin_slack\tresult");
            let mut all = true;
            for n in ns {
                let r = analysis::verify_simplex(n, a.samples.unwrap_or(10_000), a.seed)?;
                println!("{}\t{}\t{}\t{:e}\t{}", r.n, r.samples, r.bound_factor, r.min_slack, row(r.pass));
                all &= r.pass;
            }
            all
        }
    };
    Ok(if pass { EXIT_OK } else { EXIT_FAILURE })
}

/// Random valid (d₁, d₂, d) with 0 < d ≤ d₂ ≤ d₁ ≤ max and d < d₁.
pub fn random_triple(rng: &mut ChaCha8Rng, max: f64) -> (f64, f64, f64) {
    loop {
        let mut v = [rng.gen::<f64>() * max, rng.gen::<f64>() * max, rng.gen::<f64>() * max];
        v.sort_by(|x, y| y.total_cmp(x));
        if v[2] > 1e-3 && v[0] - v[2] > 1e-3 {
            return (v[0], v[1], v[2]);
        }
    }
}

fn verify_delta(a: &VerifyArgs) -> Result<bool> {
    let grid = a.grid.unwrap_or(delta::DEFAULT_GRID);
    let eval = |space: DeltaSpace, d1: f64, d2: f64, d: f64| match space {
        DeltaSpace::Ball => delta::delta_ball(d1, d2, d, grid),
        DeltaSpace::Hemisphere => delta::delta_hemisphere(d1, d2, d, grid),
    };
    if let (Some(d1), Some(d2), Some(d)) = (a.d1, a.d2, a.d) {
        let space = a.space.unwrap_or(DeltaSpace::Ball);
        let r = eval(space, d1, d2, d).map_err(|e| Error::Config(e.to_string()))?;
        println!("{}", r.infimum);
        let mut ok = r.positive;
        if let Some(c) = r.closed_form {
            let agree = (r.infimum - c).abs() <= 1e-6;
            eprintln!("closed form {c}, numeric {}, {}", r.infimum, row(agree));
            ok &= agree;
        }
        if let Some(lb) = r.lower_bound {
            eprintln!("lower bound {lb}, {}", row(r.infimum >= lb - 1e-12));
            ok &= r.infimum >= lb - 1e-12;
        }
        return Ok(ok);
    }
    if a.d1.is_some() || a.d2.is_some() || a.d.is_some() {
        return Err(Error::Config("give all of --d1, --d2, --d or none".into()));
    }
    let spaces = a.space.map_or_else(|| vec![DeltaSpace::Ball, DeltaSpace::Hemisphere], |s| vec![s]);
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    println!("space\ttriples\tmin_infimum\tresult");
    let mut all = true;
    for space in spaces {
        let max = match space {
            DeltaSpace::Ball => 1.0,
            DeltaSpace::Hemisphere => std::f64::consts::FRAC_PI_2,
        };
        let triples: Vec<_> = (0..a.triples).map(|_| random_triple(&mut rng, max)).collect();
        let reports = triples
            .par_iter()
            .map(|&(d1, d2, d)| eval(space, d1, d2, d))
            .collect::<Result<Vec<_>>>()?;
        let min = reports.iter().map(|r| r.infimum).fold(f64::INFINITY, f64::min);
        let ok = reports.iter().all(|r| r.positive);
        let kind = match space {
            DeltaSpace::Ball => SpaceKind::Ball,
            DeltaSpace::Hemisphere => SpaceKind::Hemisphere,
        };
        println!("{}\t{}\t{:e}\t{}", kind.as_str(), a.triples, min, row(ok));
        all &= ok;
    }
    Ok(all)
}

/// One grid point: the parameter assignments, in flag order.
pub type GridPoint = Vec<(String, String)>;

pub fn parse_grid(params: &[String]) -> Result<Vec<GridPoint>> {
    let mut axes = Vec::new();
    for p in params {
        let (path, values) = p
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("`{p}`: expected path=v1,v2,...")))?;
        let vals: Vec<String> = values.split(',').map(str::trim).filter(|v| !v.is_empty()).map(String::from).collect();
        if path.is_empty() || vals.is_empty() {
            return Err(Error::Config(format!("`{p}`: empty parameter axis")));
        }
        axes.push((path.to_string(), vals));
    }
    if axes.is_empty() {
        return Err(Error::Config("empty parameter grid".into()));
    }
    let mut points: Vec<GridPoint> = vec![vec![]];
    for (path, vals) in &axes {
        points = points
            .iter()
            .flat_map(|pt| {
                vals.iter().map(move |v| {
                    let mut q = pt.clone();
                    q.push((path.clone(), v.clone()));
                    q
                })
            })
            .collect();
    }
    Ok(points)
}

fn grid_key(pt: &GridPoint) -> String {
    pt.iter().map(|(p, v)| format!("{p}={v}")).collect::<Vec<_>>().join(";")
}

fn dir_name(key: &str) -> String {
    key.chars().map(|c| if c.is_ascii_alphanumeric() || c == '.' || c == '-' || c == '=' { c } else { '_' }).collect()
}

pub fn cmd_sweep(a: &SweepArgs) -> Result<i32> {
    let template = a.overrides.apply(load_config(&a.config)?);
    let points = parse_grid(&a.params)?;
    let configs = points
        .iter()
        .map(|pt| {
            Ok((grid_key(pt), template.with_params(pt)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows: BTreeMap<String, String> = BTreeMap::new();
    let results: Vec<(String, Result<Trace>)> =
        configs.par_iter().map(|(k, c)| (k.clone(), c.simulate())).collect();
    fs::create_dir_all(&a.out)?;
    for (key, res) in results {
        let trace = res?;
        write_outputs(&a.out.join(dir_name(&key)), &trace)?;
        let o = trace.outcome.as_ref().expect("finished run has an outcome");
        let flags_ok = analysis::trace_metrics(&trace).all_ok();
        rows.insert(
            key.clone(),
            format!("{key},{},{},{},{}", o.result.as_str(), o.steps, o.value, flags_ok),
        );
    }
    let mut csv = String::from("key,outcome,steps,value,flags_ok\n");
    for r in rows.values() {
        csv.push_str(r);
        csv.push('\n');
    }
    fs::write(a.out.join("summary.csv"), &csv)?;
    print!("{csv}");
    Ok(EXIT_OK)
}

pub fn cmd_replay(a: &ReplayArgs) -> Result<i32> {
    let text = fs::read_to_string(&a.trace)?;
    let original = Trace::from_json(&text)?;
    // recorded moves through the legality checks
    let scripted = replay(&original)?;
    let legal = scripted.same_play(&original);
    println!("moves\t{}", if legal { "identical" } else { "DIFFERS" });
    let mut ok = legal;
    if original.config.is_some() {
        let again = rerun(&original)?;
        let json = again.to_json();
        let bytes = json == text || json == text.trim_end();
        println!("rerun\t{}", if bytes { "byte-identical" } else { "DIFFERS" });
        if let Some(p) = &a.out {
            fs::write(p, json)?;
        }
        ok &= bytes;
    } else if let Some(p) = &a.out {
        fs::write(p, scripted.to_json())?;
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAILURE })
}
