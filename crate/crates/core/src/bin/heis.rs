use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use heis::suite::{init_threads, run, BumpConfig, Command, RunConfig};

fn list<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|e| format!("'{x}': {e}")))
        .collect::<Result<_, _>>()?;
    v.try_into()
        .map_err(|_| format!("expected {N} comma-separated numbers"))
}

fn grid(s: &str) -> Result<[usize; 2], String> {
    let (a, b) = s.split_once(['x', ',']).ok_or("expected NxM")?;
    Ok([
        a.trim().parse().map_err(|e| format!("{e}"))?,
        b.trim().parse().map_err(|e| format!("{e}"))?,
    ])
}

fn command(s: &str) -> Result<String, String> {
    s.parse::<Command>()
        .map(|c| c.name().to_string())
        .map_err(|e| e.to_string())
}

/// Verification suites for intrinsic graphs in the Heisenberg group.
#[derive(Debug, Parser)]
#[command(name = "heis", version)]
struct Cli {
    /// area | first-variation | second-variation | flow | fit-quadratic | verdict |
    /// calibration | cone-suite | cantor-suite | rayleigh | mesh
    #[arg(value_parser = command)]
    command: Option<String>,
    /// TOML file with the same keys as the flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// plane:a,b | cone | cone-eps[:e] | cantor[:n] | cantor-limit | table:path.csv | linear | t2 | zero
    #[arg(long)]
    field: Option<String>,
    /// y0,y1,t0,t1
    #[arg(long, value_parser = list::<4>, allow_hyphen_values = true)]
    region: Option<[f64; 4]>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    tol: Option<f64>,
    /// Output directory (default heis-out).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Single test bump cy,ct,ry,rt (amplitude 1).
    #[arg(long, value_parser = list::<4>, allow_hyphen_values = true)]
    bump: Option<[f64; 4]>,
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    from: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    to: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// s0,s1
    #[arg(long, value_parser = list::<2>, allow_hyphen_values = true)]
    s_range: Option<[f64; 2]>,
    /// tau0,tau1
    #[arg(long, value_parser = list::<2>, allow_hyphen_values = true)]
    tau_range: Option<[f64; 2]>,
    #[arg(long)]
    tau_samples: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    s_hat: Option<f64>,
    /// Weight coefficient A in h(t) = A t^2/2 + B t + 1.
    #[arg(long = "A", allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long = "B", allow_hyphen_values = true)]
    b: Option<f64>,
    /// Half-width R of the interval.
    #[arg(long)]
    halfwidth: Option<f64>,
    /// Number of elements N.
    #[arg(long)]
    gridsize: Option<usize>,
    /// Mesh resolution NxM.
    #[arg(long, value_parser = grid)]
    grid: Option<[usize; 2]>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    let base = match &cli.config {
        Some(p) => match RunConfig::from_file(p) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        None => RunConfig::default(),
    };
    let flags = RunConfig {
        command: cli.command.unwrap_or_default(),
        field: cli.field,
        region: cli.region,
        eps: cli.eps,
        n: cli.n,
        tol: cli.tol,
        out: cli.out,
        seed: cli.seed,
        quadrature: None,
        bump: cli.bump.map(|b| BumpConfig {
            center: [b[0], b[1]],
            radii: [b[2], b[3]],
            amplitude: 1.0,
        }),
        tau: cli.tau,
        from: cli.from,
        to: cli.to,
        steps: cli.steps,
        s_range: cli.s_range,
        tau_range: cli.tau_range,
        tau_samples: cli.tau_samples,
        s_hat: cli.s_hat,
        a: cli.a,
        b: cli.b,
        halfwidth: cli.halfwidth,
        gridsize: cli.gridsize,
        grid: cli.grid,
    };
    let cfg = base.overlay(&flags);
    if cfg.command.is_empty() {
        eprintln!("error: no command given");
        return ExitCode::from(2);
    }
    match run(&cfg) {
        Ok(out) => {
            print!("{}", out.summary);
            for f in &out.files {
                println!("wrote {}", f.display());
            }
            ExitCode::from(out.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
