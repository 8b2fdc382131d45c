use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64 as C;

use qcdiff::beltrami::rho_exterior;
use qcdiff::circle_maps::measure_gauge;
use qcdiff::error::{Error, Result};
use qcdiff::families::{catalog, FamilySpec, FieldSpec, MapSpec};
use qcdiff::grid::{log_spaced, ScanGrid};
use qcdiff::halfplane_ext::BaExtension;
use qcdiff::harness::{run_suite, write_report, SuiteConfig};
use qcdiff::schwarzian::{decay_scan, schwarzian, DecayGrid};
use qcdiff::solver::{bers_projection, SolverParams};
use qcdiff::{holder_constants, qs_constants, qsq};

#[derive(Parser)]
#[command(name = "qcdiff", about = "quasiconformal analysis of circle diffeomorphisms", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List built-in families, fields and maps with their JSON specs.
    Families,
    /// Quasisymmetric quotient scan and derived constants for a family.
    Qsq {
        /// Family spec JSON, e.g. {"type":"trig","coeffs":[[1,0.1,0.0]],"shift":0.0}
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        /// Also print a CSV table of (x, t, m) to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Beurling-Ahlfors extension: value and dilatation at a point, or a
    /// CSV dump of the dilatation over a half-plane grid.
    ExtendBa {
        #[arg(long)]
        family: String,
        /// Evaluation point "x,y" with y > 0; omit for a grid dump.
        #[arg(long)]
        at: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weighted norms and the boundary decay table of a Beltrami field.
    Norms {
        /// Field spec JSON, e.g. {"type":"radial","ell":0.3,"alpha":0.5}
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        /// CSV file for the kappa table.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the Beltrami equation and print the Schwarzian on a circle as
    /// CSV (z, S, rho^-2 |S|, rho^-2+a |S|).
    Phi {
        #[arg(long)]
        field: String,
        /// "N,L": grid resolution and half-width.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// "r,n": evaluation circle radius and point count.
        #[arg(long, default_value = "2.0,64")]
        eval_circle: String,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
    },
    /// Boundary decay scan beta/sigma of an exterior map as CSV (t, beta, sigma).
    Decay {
        /// Map spec JSON, e.g. {"type":"pole","k":0.2,"m":1}
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[arg(long, default_value_t = 0.00390625)]
        tmin: f64,
        #[arg(long, default_value_t = 0.5)]
        tmax: f64,
    },
    /// Run a certification suite and print the CertBound records as JSON.
    Certify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Run a verification suite, write report.json + CSV sidecars; exit 0
    /// iff the suite passes.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

fn load_config(suite: &str, path: &Option<PathBuf>) -> Result<SuiteConfig> {
    match path {
        Some(p) => {
            let mut cfg: SuiteConfig = serde_json::from_str(&std::fs::read_to_string(p)?)?;
            cfg.suite = suite.to_string();
            Ok(cfg)
        }
        None => Ok(SuiteConfig::new(suite)),
    }
}

fn parse_pair(s: &str, what: &str) -> Result<(f64, f64)> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::ConfigError(format!("{what} must be 'a,b', got '{s}'")));
    }
    let a = parts[0].trim().parse().map_err(|_| Error::ConfigError(format!("bad {what}: {s}")))?;
    let b = parts[1].trim().parse().map_err(|_| Error::ConfigError(format!("bad {what}: {s}")))?;
    Ok((a, b))
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Families => {
            println!("{}", serde_json::to_string_pretty(&catalog())?);
        }
        Cmd::Qsq { family, alpha, out } => {
            let spec: FamilySpec = serde_json::from_str(&family)?;
            let h = spec.build()?;
            let grid = ScanGrid::default();
            let qc = qs_constants(&h, alpha, &grid);
            let hc = holder_constants(&h, alpha, &grid);
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::json!({
                    "qs": {"m": qc.m, "b_alpha": qc.b_alpha, "alpha": alpha},
                    "holder": hc,
                }))?
            );
            if let Some(path) = out {
                let mut csv = String::from("x,t,m\n");
                for &t in &grid.t_samples() {
                    for &x in &grid.x_samples() {
                        csv.push_str(&format!("{x:e},{t:e},{:e}\n", qsq(&h, x, t)));
                    }
                }
                std::fs::write(path, csv)?;
            }
        }
        Cmd::ExtendBa { family, at, out } => {
            let spec: FamilySpec = serde_json::from_str(&family)?;
            let h = spec.build()?;
            let ext = BaExtension::new(&h);
            match at {
                Some(s) => {
                    let (x, y) = parse_pair(&s, "--at")?;
                    let z = C::new(x, y);
                    let f = ext.value(z)?;
                    let mu = ext.dilatation(z)?;
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&serde_json::json!({
                            "z": [x, y],
                            "F": [f.re, f.im],
                            "mu_F": [mu.re, mu.im],
                            "abs_mu_F": mu.norm(),
                        }))?
                    );
                }
                None => {
                    let mut csv = String::from("x,y,re_mu,im_mu\n");
                    for j in 1..=32 {
                        let y = 0.5 * j as f64 / 32.0;
                        for i in 0..64 {
                            let x = i as f64 / 64.0;
                            let mu = ext.dilatation(C::new(x, y))?;
                            csv.push_str(&format!("{x:e},{y:e},{:e},{:e}\n", mu.re, mu.im));
                        }
                    }
                    match out {
                        Some(path) => std::fs::write(path, csv)?,
                        None => print!("{csv}"),
                    }
                    // gauge table alongside the dump
                    let gauge = measure_gauge(&h, &ScanGrid::default());
                    eprintln!("gauge at t=1/4: {:.6e}", gauge.eval(0.25));
                }
            }
        }
        Cmd::Norms { field, alpha, out } => {
            let spec: FieldSpec = serde_json::from_str(&field)?;
            let mu = spec.build()?;
            let report = mu.norms(alpha, &ScanGrid::default());
            println!("{}", serde_json::to_string_pretty(&report)?);
            if let Some(path) = out {
                let mut csv = String::from("t,kappa\n");
                for (t, k) in &report.kappa_table {
                    csv.push_str(&format!("{t:e},{k:e}\n"));
                }
                std::fs::write(path, csv)?;
            }
        }
        Cmd::Phi { field, grid, tol, eval_circle, alpha } => {
            let spec: FieldSpec = serde_json::from_str(&field)?;
            let mut params = SolverParams { tol, ..Default::default() };
            if let Some(g) = grid {
                let (n, l) = parse_pair(&g, "--grid")?;
                params.n = n as usize;
                params.extent = l;
            }
            let (r, n) = parse_pair(&eval_circle, "--eval-circle")?;
            let f = bers_projection(&spec.build()?, &params)?;
            let mut csv = String::from("re_z,im_z,re_s,im_s,hyp_norm,hyp_norm_alpha\n");
            for i in 0..n as usize {
                let z = C::from_polar(r, 2.0 * std::f64::consts::PI * i as f64 / n);
                let s = schwarzian(&f, z)?;
                let rho = rho_exterior(z);
                csv.push_str(&format!(
                    "{:e},{:e},{:e},{:e},{:e},{:e}\n",
                    z.re,
                    z.im,
                    s.re,
                    s.im,
                    s.norm() / (rho * rho),
                    s.norm() * rho.powf(alpha - 2.0),
                ));
            }
            print!("{csv}");
        }
        Cmd::Decay { map, alpha, tmin, tmax } => {
            let spec: MapSpec = serde_json::from_str(&map)?;
            let f = spec.build()?;
            let ts = log_spaced(tmin, tmax, 24);
            let report = decay_scan(&f, alpha, &ts, &DecayGrid::default())?;
            let mut csv = String::from("t,beta,sigma\n");
            for (t, b, s) in &report.table {
                csv.push_str(&format!("{t:e},{b:e},{s:e}\n"));
            }
            print!("{csv}");
            eprintln!(
                "norm_inf: {:.6e}  norm_inf_alpha: {:.6e}  clip: {:.6e}",
                report.norm_inf, report.norm_inf_alpha, report.clip
            );
        }
        Cmd::Certify { suite, config } => {
            let cfg = load_config(&suite, &config)?;
            let (report, _) = run_suite(&cfg)?;
            println!("{}", serde_json::to_string_pretty(&report.records)?);
            return Ok(report.overall_pass);
        }
        Cmd::Verify { suite, out, config } => {
            let cfg = load_config(&suite, &config)?;
            let (report, sidecars) = run_suite(&cfg)?;
            write_report(&report, &sidecars, &out)?;
            for r in &report.records {
                println!(
                    "{} {} margin={:.3e}",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.name,
                    r.margin
                );
            }
            println!(
                "suite {}: {} ({} records, {:.1}s)",
                report.suite,
                if report.overall_pass { "PASS" } else { "FAIL" },
                report.records.len(),
                report.runtime_secs
            );
            return Ok(report.overall_pass);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
