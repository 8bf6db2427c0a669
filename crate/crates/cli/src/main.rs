//! Command-line entry point: catalog, solve, verify, barrier, kernel and
//! transform workflows with file-based, reproducible outputs (CSV for
//! fields, JSON-lines for verification reports, 17 significant digits
//! throughout).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use eulerlab_core::barriers;
use eulerlab_core::catalog;
use eulerlab_core::kernel::{convolve_boundary, kernel_mass, KernelSpec};
use eulerlab_core::operator::{GridFunction, HalfPlaneRect};
use eulerlab_core::transforms;
use eulerlab_core::verify;

mod problem;

#[derive(Parser)]
#[command(
    name = "eulerlab",
    about = "Numerical laboratory for Euler-type boundary-degenerate elliptic operators",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct GridOpt {
    /// Grid counts NX,NY
    #[arg(long, value_parser = parse_grid, default_value = "65,65")]
    grid: (usize, usize),
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("expected NX,NY".into());
    }
    let nx = parts[0].trim().parse().map_err(|e| format!("{e}"))?;
    let ny = parts[1].trim().parse().map_err(|e| format!("{e}"))?;
    Ok((nx, ny))
}

#[derive(Subcommand)]
enum Cmd {
    /// List, check or emit closed-form catalog entries
    Catalog {
        /// List entry names and classifications
        #[arg(long)]
        list: bool,
        /// Run the residual/regularity checks for one entry
        #[arg(long)]
        check: Option<String>,
        /// Emit a CSV surface for one entry
        #[arg(long)]
        emit: Option<String>,
        #[command(flatten)]
        grid: GridOpt,
        /// Output directory
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Solve a boundary-value problem described by a TOML file
    Solve {
        /// Problem file (see README for the schema)
        #[arg(long)]
        problem: PathBuf,
        /// Output directory
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run a verification suite and write a JSON-lines report
    Verify {
        /// One of harnack, max_principle, gradient, monotonicity,
        /// unspecifiability, poly_x, continuity, all
        #[arg(long, default_value = "all")]
        suite: String,
        /// RNG seed for randomized draws
        #[arg(long, default_value_t = eulerlab_core::verify::DEFAULT_SEED)]
        seed: u64,
        /// Output directory
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Emit CSV samples of a named barrier
    Barrier {
        /// harnack_lower | xdecay | liouville_upper | unspec_super |
        /// corollary_super | corollary_sub
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 1.0)]
        y0: f64,
        #[arg(long, default_value_t = 2.0)]
        lambda: f64,
        /// y_d for the x-decay barrier
        #[arg(long, default_value_t = 1.0)]
        y_d: f64,
        #[arg(long, default_value_t = 1.0)]
        c1: f64,
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
        #[arg(long, default_value_t = 1.0)]
        diam: f64,
        #[command(flatten)]
        grid: GridOpt,
        /// Output CSV file (or directory to place barrier.csv in)
        #[arg(long, default_value = "barrier.csv")]
        out: PathBuf,
    },
    /// Kernel mass and boundary-data reconstruction for b2 < 1
    Kernel {
        #[arg(long, default_value_t = 0.0)]
        b1: f64,
        #[arg(long, default_value_t = 0.5)]
        b2: f64,
        /// Print the kernel mass at y0 in {0.5, 1, 2}
        #[arg(long)]
        mass: bool,
        /// Reconstruct boundary data on a grid: one of one, cos, bump, ramp
        #[arg(long)]
        reconstruct: Option<String>,
        #[command(flatten)]
        grid: GridOpt,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Print Euler-form coefficients of an application operator at probes
    Transform {
        /// keldysh | population | heston | sabr | power
        #[arg(long)]
        which: String,
        /// Probe points in original coordinates: "p,q;p,q;..."
        #[arg(long, default_value = "1,1")]
        at: String,
        #[arg(long, default_value_t = 3.0)]
        k: f64,
        #[arg(long, default_value_t = 2.0)]
        b1: f64,
        #[arg(long, default_value_t = 1.0)]
        kappa: f64,
        #[arg(long, default_value_t = 0.04)]
        theta: f64,
        #[arg(long, default_value_t = 0.5)]
        sigma: f64,
        #[arg(long, default_value_t = 0.0)]
        rho: f64,
        #[arg(long, default_value_t = 0.02)]
        r: f64,
        #[arg(long, default_value_t = 0.0)]
        lambda_price: f64,
        #[arg(long, default_value_t = 0.5)]
        beta: f64,
        #[arg(long, default_value_t = 1.0)]
        nu: f64,
        #[arg(long, default_value_t = 2.0)]
        lambda: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_grid_csv(path: &Path, gf: &GridFunction) -> anyhow::Result<()> {
    let mut buf = Vec::new();
    gf.write_csv(&mut buf)?;
    fs::write(path, buf)?;
    println!("wrote {} ({} x {})", path.display(), gf.domain.nx, gf.domain.ny);
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.cmd {
        Cmd::Catalog {
            list,
            check,
            emit,
            grid,
            out,
        } => {
            if list {
                for e in catalog::catalog_entries() {
                    println!(
                        "{:<18} {:?} {}",
                        e.name,
                        e.kind,
                        e.boundary_regularity
                            .map(|h| format!("boundary C^0,{h}"))
                            .unwrap_or_default()
                    );
                }
                return Ok(ExitCode::SUCCESS);
            }
            if let Some(name) = check {
                let e = catalog::entry(&name)?;
                let g = {
                    let (x_lo, x_hi, y_max) = e.window;
                    HalfPlaneRect::new(x_lo, x_hi, y_max, grid.grid.0, grid.grid.1)?
                };
                let rep = catalog::check_entry(&name, &g)?;
                println!(
                    "{}: max residual {} over {} points, kind_ok = {}",
                    rep.name,
                    num(rep.max_residual),
                    rep.points_checked,
                    rep.kind_ok
                );
                if let Some((fit, claim)) = rep.regularity_fit {
                    println!("  boundary exponent: fitted {}, claimed {}", num(fit), num(claim));
                }
                for v in &rep.confirmed_violations {
                    println!("  confirmed violation: {v:?}");
                }
                return Ok(if rep.kind_ok {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                });
            }
            if let Some(name) = emit {
                let e = catalog::entry(&name)?;
                let (x_lo, x_hi, y_max) = e.window;
                let g = HalfPlaneRect::new(x_lo, x_hi, y_max, grid.grid.0, grid.grid.1)?;
                let gf = catalog::entry_surface(&name, &g)?;
                fs::create_dir_all(&out)?;
                write_grid_csv(&out.join(format!("{name}.csv")), &gf)?;
                return Ok(ExitCode::SUCCESS);
            }
            anyhow::bail!("catalog: pass --list, --check NAME or --emit NAME");
        }

        Cmd::Solve { problem, out } => {
            let text = fs::read_to_string(&problem)
                .map_err(|e| anyhow::anyhow!("{}: {e}", problem.display()))?;
            let spec: problem::ProblemFile = toml::from_str(&text)?;
            let (coeffs, domain, bc) = spec.build()?;
            let rep = eulerlab_core::solver::solve(&coeffs, &domain, &bc)?;
            fs::create_dir_all(&out)?;
            write_grid_csv(&out.join("solution.csv"), &rep.solution)?;
            let report = out.join("solve_report.csv");
            let mut w = fs::File::create(&report)?;
            writeln!(w, "linear_residual,iterations,closure_rule,upwind_nodes")?;
            writeln!(
                w,
                "{},{},{:?},{}",
                num(rep.linear_residual),
                rep.iterations,
                rep.closure_rule_used,
                rep.upwind_nodes
            )?;
            println!(
                "wrote {} (residual {}, closure {:?})",
                report.display(),
                num(rep.linear_residual),
                rep.closure_rule_used
            );
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Verify { suite, seed, out } => {
            let reports = verify::run_suite(&suite, seed)?;
            fs::create_dir_all(&out)?;
            let path = out.join(format!("verify_{suite}.jsonl"));
            let mut w = fs::File::create(&path)?;
            for r in &reports {
                writeln!(w, "{}", serde_json::to_string(r)?)?;
                println!(
                    "[{}] {} / {}: margin {} ({})",
                    if r.outcome_ok() { "ok" } else { "BAD" },
                    r.theorem_tag,
                    r.case,
                    num(r.margin),
                    if r.pass { "pass" } else { "fail" },
                );
            }
            let ok = verify::suite_ok(&reports);
            println!(
                "wrote {} ({} checks, overall {})",
                path.display(),
                reports.len(),
                if ok { "OK" } else { "FAILED" }
            );
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }

        Cmd::Barrier {
            name,
            y0,
            lambda,
            y_d,
            c1,
            epsilon,
            diam,
            grid,
            out,
        } => {
            let b = match name.as_str() {
                "harnack_lower" => barriers::harnack_lower(y0, lambda),
                "xdecay" => barriers::xdecay_barrier(lambda, y_d, c1)?,
                "liouville_upper" => barriers::liouville_upper(lambda, c1)?,
                "unspec_super" => barriers::unspecifiability_super(lambda, epsilon, diam)?,
                "corollary_super" => barriers::corollary_case_barrier(lambda)?,
                "corollary_sub" => barriers::corollary_case_subsolution(lambda)?,
                other => anyhow::bail!("unknown barrier `{other}`"),
            };
            let (x_lo, x_hi, y_lo, y_hi) = b.window;
            let _ = y_lo;
            let d = HalfPlaneRect::new(x_lo, x_hi, y_hi, grid.grid.0, grid.grid.1)?;
            let gf = GridFunction::from_fn(d, |x, y| b.eval(x, y));
            let path = if out.extension().is_some() {
                out.clone()
            } else {
                fs::create_dir_all(&out)?;
                out.join("barrier.csv")
            };
            write_grid_csv(&path, &gf)?;
            if name == "harnack_lower" {
                for item in barriers::harnack_lemma_report(y0, lambda) {
                    println!(
                        "  item {}: {} (margin {})",
                        item.label,
                        if item.pass { "pass" } else { "fail" },
                        num(item.margin)
                    );
                }
            }
            let sc = b.sign_check(40, 40, 1e-8);
            println!(
                "  certifies {:?}: worst residual {} over {} sample points",
                b.certifies,
                num(sc.worst),
                sc.checked
            );
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Kernel {
            b1,
            b2,
            mass,
            reconstruct,
            grid,
            out,
        } => {
            let spec = KernelSpec::new(b1, b2);
            if mass {
                if !spec.normalizable() {
                    println!("kernel b1={b1} b2={b2}: not normalizable (b2 >= 1)");
                    return Ok(ExitCode::from(1));
                }
                println!("y0,mass");
                for y0 in [0.5, 1.0, 2.0] {
                    println!("{},{}", num(y0), num(kernel_mass(&spec, y0)?));
                }
                return Ok(ExitCode::SUCCESS);
            }
            if let Some(preset) = reconstruct {
                let f0: Box<dyn Fn(f64) -> f64 + Sync> = match preset.as_str() {
                    "one" => Box::new(|_| 1.0),
                    "cos" => Box::new(|t: f64| t.cos()),
                    "bump" => Box::new(|t: f64| 1.0 / (1.0 + t * t)),
                    "ramp" => Box::new(|t: f64| 0.5 + 0.5 * t.tanh()),
                    other => anyhow::bail!("unknown boundary preset `{other}`"),
                };
                let d = HalfPlaneRect::new(-2.0, 2.0, 1.0, grid.grid.0, grid.grid.1)?;
                let mut pts = Vec::new();
                for j in 1..d.ny {
                    for i in 0..d.nx {
                        pts.push((d.x(i), d.y(j)));
                    }
                }
                let vals = convolve_boundary(&spec, &*f0, &pts)?;
                let mut gf = GridFunction::zeros(d);
                for i in 0..d.nx {
                    gf.set(i, 0, f0(d.x(i)));
                }
                for (k, (x, y)) in pts.iter().enumerate() {
                    let (i, j) = d.nearest(*x, *y);
                    gf.set(i, j, vals[k]);
                }
                fs::create_dir_all(&out)?;
                write_grid_csv(&out.join(format!("kernel_{preset}.csv")), &gf)?;
                return Ok(ExitCode::SUCCESS);
            }
            anyhow::bail!("kernel: pass --mass or --reconstruct PRESET");
        }

        Cmd::Transform {
            which,
            at,
            k,
            b1,
            kappa,
            theta,
            sigma,
            rho,
            r,
            lambda_price,
            beta,
            nu,
            lambda,
        } => {
            let pts: Vec<(f64, f64)> = at
                .split(';')
                .map(|pair| {
                    let mut it = pair.split(',');
                    let p: f64 = it.next().unwrap_or("0").trim().parse()?;
                    let q: f64 = it.next().unwrap_or("0").trim().parse()?;
                    Ok::<_, anyhow::Error>((p, q))
                })
                .collect::<Result<_, _>>()?;
            if which == "power" {
                let pm = transforms::PowerMultiplier::new(lambda);
                println!("lambda,b2_in,b2_out");
                println!(
                    "{},{},{}",
                    num(lambda),
                    num((pm.coeffs_in().b2)(0.0, 1.0)),
                    num((pm.coeffs_out().b2)(0.0, 1.0))
                );
                return Ok(ExitCode::SUCCESS);
            }
            let tr = match which.as_str() {
                "keldysh" => transforms::keldysh_to_euler(k)?,
                "population" => transforms::population_to_euler(b1),
                "heston" => transforms::heston_to_euler(transforms::HestonParams {
                    mu: 0.0,
                    kappa,
                    theta,
                    sigma,
                    rho,
                    r,
                    lambda_price,
                })?,
                "sabr" => transforms::sabr_rho0_to_euler(beta, nu)?,
                other => anyhow::bail!("unknown transform `{other}`"),
            };
            println!("p,q,x,y,b1,b2,c,prefactor");
            for (p, q) in pts {
                let (x, y) = (tr.map.forward)(p, q);
                println!(
                    "{},{},{},{},{},{},{},{}",
                    num(p),
                    num(q),
                    num(x),
                    num(y),
                    num((tr.coeffs.b1)(x, y)),
                    num((tr.coeffs.b2)(x, y)),
                    num((tr.coeffs.c)(x, y)),
                    num((tr.prefactor)(x, y))
                );
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
