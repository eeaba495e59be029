//! Command-line entry point: verification suites, simulation runs,
//! reduction comparisons and machine-readable reports.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use ckcontact::calculus::integrate::{integrate_fn, Monitor, Trajectory};
use ckcontact::calculus::parse::parse_coeff;
use ckcontact::calculus::CoefficientExpr;
use ckcontact::config::{parse_coeff_flag, parse_kappa_flag, parse_x0_flag, RunConfig};
use ckcontact::error::CkError;
use ckcontact::fibration::{
    commutation_check, downstairs_coords, embed_downstairs, fibration, project_system,
};
use ckcontact::geometry::charts::embed_parallel;
use ckcontact::geometry::{quadratic_form, KappaTriple};
use ckcontact::report::{CheckRecord, Report};
use ckcontact::systems::{catalog_get, instantiate, kappa_required, CATALOG_IDS};
use ckcontact::verify::{run_suite, SUITES};

#[derive(Parser)]
#[command(
    name = "ckcontact",
    version,
    about = "Contact Lie systems on the 3D Cayley-Klein spaces: verification, simulation and reduction"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and write a JSON report.
    Verify(CommonArgs),
    /// Integrate a catalogued system and write a trajectory CSV.
    Simulate(CommonArgs),
    /// Check a reduction: pullback identity and flow commutation.
    Reduce(CommonArgs),
    /// List catalog ids together with their kappa requirements.
    Catalog,
}

#[derive(Args, Default)]
struct CommonArgs {
    /// JSON config document; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    system: Option<String>,
    /// Contraction parameters, e.g. --kappa 1,-1,1
    #[arg(long, value_name = "k1,k2,k3")]
    kappa: Option<String>,
    /// Coefficient override, repeatable: --coeff b3="1 + 0.5*sin(t)"
    #[arg(long = "coeff", value_name = "name=expr")]
    coeff: Vec<String>,
    /// Initial state, comma-separated chart coordinates.
    #[arg(long, value_name = "v1,v2,...")]
    x0: Option<String>,
    #[arg(long)]
    t0: Option<f64>,
    #[arg(long)]
    t1: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output path (JSON report or trajectory CSV).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Verification suite: one of ktrig, geometry, contact, symplectic,
    /// systems, fibration, all.
    #[arg(long)]
    suite: Option<String>,
}

impl CommonArgs {
    fn into_config(self) -> Result<RunConfig, CkError> {
        let flags = RunConfig {
            system: self.system,
            kappa: self.kappa.as_deref().map(parse_kappa_flag).transpose()?,
            coeff: self
                .coeff
                .iter()
                .map(|s| parse_coeff_flag(s))
                .collect::<Result<_, _>>()?,
            x0: self.x0.as_deref().map(parse_x0_flag).transpose()?,
            t0: self.t0,
            t1: self.t1,
            tol: self.tol,
            seed: self.seed,
            out: self.out,
            suite: self.suite,
        };
        let base = match self.config {
            Some(path) => RunConfig::load(&path)?,
            None => RunConfig::default(),
        };
        let merged = base.overridden_by(flags);
        merged.validate()?;
        Ok(merged)
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<bool, CkError> {
    match cli.cmd {
        Command::Catalog => {
            println!("{:<16} {:<8} kappa", "id", "class");
            for id in CATALOG_IDS {
                let class = match id {
                    "liouville-s3" | "liouville-ads" => "P1",
                    "liouville-flat" => "P5",
                    "liouville-nh" => "I5",
                    "liouville-h3" => "I1",
                    _ => "-",
                };
                let kappa = match id {
                    "sp4-ck" => "required (k1,k2,k3)",
                    "liouville-flat" => "required (0,k2,1)",
                    "liouville-nh" => "required (+-1,0,1)",
                    "liouville-s3" => "fixed (1,1,1)",
                    "liouville-ads" => "fixed (1,-1,1)",
                    "liouville-h3" => "fixed (-1,1,1)",
                    "sp4-s3" => "fixed (1,1,1)",
                    _ => "none",
                };
                println!("{id:<16} {class:<8} {kappa}");
            }
            Ok(true)
        }
        Command::Verify(args) => run_verify(args.into_config()?),
        Command::Simulate(args) => run_simulate(args.into_config()?),
        Command::Reduce(args) => run_reduce(args.into_config()?),
    }
}

fn thread_pool() -> rayon::ThreadPool {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("CKCONTACT_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            builder = builder.num_threads(n.max(1));
        }
    }
    builder.build().expect("thread pool")
}

fn run_verify(cfg: RunConfig) -> Result<bool, CkError> {
    let seed = cfg.seed.unwrap_or(42);
    let suite = cfg.suite.as_deref().unwrap_or("all").to_string();
    if suite != "all" && !SUITES.contains(&suite.as_str()) {
        return Err(CkError::Usage(format!(
            "unknown suite {suite:?}; expected one of {} or all",
            SUITES.join(", ")
        )));
    }
    let started = Instant::now();
    let checks: Vec<CheckRecord> = if suite == "all" {
        let pool = thread_pool();
        let results: Vec<Result<Vec<CheckRecord>, CkError>> = pool.install(|| {
            use rayon::prelude::*;
            SUITES.par_iter().map(|s| run_suite(s, seed)).collect()
        });
        let mut all = Vec::new();
        for r in results {
            all.extend(r?);
        }
        all
    } else {
        run_suite(&suite, seed)?
    };
    let report = Report::new(suite.clone(), seed, checks);
    let elapsed = started.elapsed().as_secs_f64();
    print!("{}", report.render_lines());
    println!(
        "{}: {} checks, {}",
        suite,
        report.checks.len(),
        if report.all_pass() {
            "all pass"
        } else {
            "FAILURES"
        }
    );
    eprintln!("elapsed: {elapsed:.2}s");
    if let Some(path) = &cfg.out {
        std::fs::write(path, report.to_json())?;
    }
    Ok(report.all_pass())
}

fn default_x0(id: &str, kappa: Option<KappaTriple>) -> Vec<f64> {
    match id {
        "osc2d" => vec![1.0, 0.0, 0.0, 0.0],
        "thermo" => vec![0.0, 0.0, 0.0, 1.0, 0.0],
        "sp4-r4" => vec![1.0, 0.3, -0.2, 0.5],
        "sp4-s3" => vec![0.6, 0.0, 0.8, 0.0],
        "sp4-ck" => embed_parallel(kappa.expect("kappa known"), &[0.3, 0.2, -0.4]).to_vec(),
        _ => vec![0.3, 0.2, -0.4],
    }
}

fn parse_coeff_map(
    raw: &BTreeMap<String, String>,
) -> Result<BTreeMap<String, CoefficientExpr>, CkError> {
    raw.iter()
        .map(|(k, v)| Ok((k.clone(), parse_coeff(v)?)))
        .collect()
}

fn run_simulate(cfg: RunConfig) -> Result<bool, CkError> {
    let id = cfg
        .system
        .clone()
        .ok_or_else(|| CkError::Usage("simulate needs --system".into()))?;
    let d = catalog_get(&id, cfg.kappa_triple())?;
    let mut coeffs = d.preset_coefficients();
    for (k, v) in parse_coeff_map(&cfg.coeff)? {
        coeffs.insert(k, v);
    }
    let t0 = cfg.t0.unwrap_or(0.0);
    let t1 = cfg.t1.unwrap_or(10.0);
    if t1 <= t0 {
        return Err(CkError::Usage(format!("need t1 > t0, got [{t0}, {t1}]")));
    }
    let tol = cfg.tol.unwrap_or(1e-10);
    let x0 = cfg.x0.clone().unwrap_or_else(|| default_x0(&id, d.kappa));

    let traj: Trajectory = if id == "sp4-ck" {
        let k = d.kappa.unwrap();
        if x0.len() != 4 {
            return Err(CkError::Usage(
                "sp4-ck simulates in ambient coordinates; x0 needs 4 components".into(),
            ));
        }
        let rhs = ckcontact::systems::sp4ck_ambient_rhs(k, &coeffs)?;
        let monitor = Monitor {
            name: "I_kappa".into(),
            f: Box::new(move |_t, a: &[f64]| quadratic_form(k, a, a)),
        };
        integrate_fn(
            &rhs,
            ckcontact::calculus::Chart::Ambient4,
            &x0,
            t0,
            t1,
            tol,
            &[monitor],
        )?
    } else {
        let field = instantiate(&d, &coeffs)?;
        if x0.len() != d.chart.dim() {
            return Err(CkError::Usage(format!(
                "system {id} lives on a {}-dimensional chart; x0 has {} components",
                d.chart.dim(),
                x0.len()
            )));
        }
        let monitors = simulate_monitors(&d, &coeffs);
        ckcontact::calculus::integrate(&field, &x0, t0, t1, tol, &monitors)?
    };

    // Trajectory CSV with 17-significant-digit formatting.
    let out = cfg
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("trajectory.csv"));
    let coord_names: Vec<&str> = if id == "sp4-ck" {
        vec!["x0", "x1", "x2", "x3"]
    } else {
        d.chart.coord_names().to_vec()
    };
    let mut csv = String::from("t");
    for c in &coord_names {
        csv.push(',');
        csv.push_str(c);
    }
    for m in &traj.monitor_names {
        csv.push_str(&format!(",drift:{m}"));
    }
    csv.push('\n');
    for (i, s) in traj.samples.iter().enumerate() {
        csv.push_str(&format!("{:.16e}", s.t));
        for v in &s.state {
            csv.push_str(&format!(",{v:.16e}"));
        }
        for col in &traj.drifts {
            csv.push_str(&format!(",{:.16e}", col[i]));
        }
        csv.push('\n');
    }
    std::fs::File::create(&out)?.write_all(csv.as_bytes())?;

    let max_drifts: BTreeMap<String, f64> = traj
        .monitor_names
        .iter()
        .enumerate()
        .map(|(c, n)| (n.clone(), traj.max_drift(c)))
        .collect();
    let summary = serde_json::json!({
        "system": id,
        "samples": traj.samples.len(),
        "accepted_steps": traj.accepted_steps,
        "rejected_steps": traj.rejected_steps,
        "flagged": traj.flagged,
        "max_drifts": max_drifts,
        "out": out,
    });
    println!(
        "{}",
        serde_json::to_string_pretty(&summary).expect("summary serializes")
    );
    Ok(!traj.flagged)
}

fn simulate_monitors(
    d: &ckcontact::systems::SystemDescriptor,
    coeffs: &BTreeMap<String, CoefficientExpr>,
) -> Vec<Monitor> {
    use ckcontact::calculus::Chart;
    match (d.id.as_str(), d.chart) {
        ("osc2d" | "sp4-r4", _) => {
            let parts: Vec<(CoefficientExpr, ckcontact::calculus::ScalarField)> = d
                .basis
                .iter()
                .filter_map(|e| coeffs.get(&e.id).map(|c| (c.clone(), e.hamiltonian.clone())))
                .collect();
            vec![Monitor {
                name: "h_t".into(),
                f: Box::new(move |t, x: &[f64]| {
                    parts.iter().map(|(c, h)| c.eval(t) * h.at(x)).sum()
                }),
            }]
        }
        ("sp4-s3", _) => vec![Monitor {
            name: "sphere_constraint".into(),
            f: Box::new(|_t, x: &[f64]| x.iter().map(|v| v * v).sum()),
        }],
        (_, Chart::Parallel3) => {
            let k = d.kappa.expect("parallel-chart systems carry kappa");
            vec![Monitor {
                name: "I_kappa".into(),
                f: Box::new(move |_t, c: &[f64]| {
                    let a = embed_parallel(k, c);
                    quadratic_form(k, &a, &a)
                }),
            }]
        }
        _ => vec![],
    }
}

fn run_reduce(cfg: RunConfig) -> Result<bool, CkError> {
    let id = cfg
        .system
        .clone()
        .ok_or_else(|| CkError::Usage("reduce needs --system".into()))?;
    let t1 = cfg.t1.unwrap_or(5.0);
    let tol = cfg.tol.unwrap_or(1e-10);
    let seed = cfg.seed.unwrap_or(42);
    let started = Instant::now();

    let mut checks = Vec::new();
    let mut meta = BTreeMap::new();

    if id == "osc2d" {
        let records = ckcontact::verify::reduction_commutation_records(t1, tol);
        let (name, res) = records
            .into_iter()
            .find(|(n, _)| n.ends_with("osc2d"))
            .expect("oscillator record present");
        checks.push(CheckRecord::below(name, res, 1e-6, 1));
        meta.insert("reduction".to_string(), "scaling-symmetry".to_string());
    } else {
        // An explicit kappa override allows probing unsupported triples and
        // must surface NotRegular for the de Sitter spacetime.
        if let Some(k) = cfg.kappa_triple() {
            fibration(k)?;
        }
        let d = catalog_get(&id, if kappa_required(&id) { cfg.kappa_triple() } else { None })?;
        if !d.liouville {
            return Err(CkError::NotLiouville(id.clone()));
        }
        let kappa = d.kappa.expect("liouville entries carry kappa");
        let fib = fibration(kappa)?;
        if let Some(label) = d.class_label {
            meta.insert("class".to_string(), label.to_string());
        }
        meta.insert("fiber_group".to_string(), fib.fiber_group.to_string());

        // Pullback identity sweep over tangent pairs.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
        let cs =
            ckcontact::contact::contact_structure(kappa, ckcontact::calculus::Chart::Ambient4);
        let bounds =
            ckcontact::geometry::charts::chart_box(kappa, ckcontact::calculus::Chart::Parallel3);
        let mut worst_pull: f64 = 0.0;
        for _ in 0..50 {
            let c = ckcontact::calculus::sample_box(&mut rng, &bounds);
            let p = embed_parallel(kappa, &c);
            let basis = ckcontact::contact::tangent_basis(kappa, &p);
            let mut mix = || -> Vec<f64> {
                let w: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
                (0..4)
                    .map(|i| (0..3).map(|j| w[j] * basis[j][i]).sum())
                    .collect()
            };
            let v = mix();
            let w = mix();
            worst_pull =
                worst_pull.max(ckcontact::fibration::verify_pullback(&fib, &cs, &p, &v, &w));
        }
        checks.push(CheckRecord::below(
            "reduce.pullback-identity",
            worst_pull,
            1e-9,
            50,
        ));

        // Flow commutation through the bundle.
        let down_desc = project_system(&d, &fib)?;
        let mut coeffs = d.preset_coefficients();
        for (k, v) in parse_coeff_map(&cfg.coeff)? {
            coeffs.insert(k, v);
        }
        let up = instantiate(&d, &coeffs)?;
        let down = instantiate(&down_desc, &coeffs)?;
        let chart = down_desc.chart;
        let fib2 = fibration(kappa)?;
        let project = move |s: &[f64]| -> Vec<f64> {
            let amb = embed_parallel(kappa, s);
            downstairs_coords(&fib2, chart, &amb)
        };
        let embed = move |s: &[f64]| embed_downstairs(chart, s);
        let x0 = cfg.x0.clone().unwrap_or_else(|| vec![0.3, 0.2, -0.4]);
        let res = commutation_check(&up, &down, &project, &embed, &x0, t1, tol)?;
        checks.push(CheckRecord::below("reduce.flow-commutation", res, 1e-6, 1));
    }

    let mut report = Report::new(format!("reduce:{id}"), seed, checks);
    report.meta = meta;
    print!("{}", report.render_lines());
    for (k, v) in &report.meta {
        println!("meta {k} = {v}");
    }
    eprintln!("elapsed: {:.2}s", started.elapsed().as_secs_f64());
    if let Some(path) = &cfg.out {
        std::fs::write(path, report.to_json())?;
    }
    Ok(report.all_pass())
}
