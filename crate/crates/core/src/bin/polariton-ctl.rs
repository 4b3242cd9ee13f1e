use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use polariton::experiments::{self, output, validate, Config, Experiment, RunOptions, TargetKind};
use polariton::{Branch, Error, Result, TAU0};

#[derive(Parser)]
#[command(name = "polariton-ctl", version, about = "Pulse design and sweeps for a rotational polariton")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named experiment and write its CSV tables.
    Run {
        experiment: String,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Use the full Rabi model in the product basis.
        #[arg(long)]
        rabi: bool,
        #[arg(long)]
        workers: Option<usize>,
        /// Also write a matplotlib script next to the CSV.
        #[arg(long)]
        plot: bool,
    },
    /// Design the two-pulse field for a target state.
    Design {
        /// `max_orientation` or three comma-separated amplitudes c00,c-,c+.
        #[arg(long, default_value = "max_orientation")]
        target: String,
        /// Target phases φ-,φ+ in radians.
        #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
        phases: String,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        t_f_over_tau0: Option<f64>,
        #[arg(long)]
        bandwidth_over_g: Option<f64>,
        #[arg(long)]
        emit_field: Option<PathBuf>,
        #[arg(long, default_value_t = 0.05)]
        field_dt: f64,
    },
    /// Run the numerical self-checks.
    Validate,
}

fn parse_list(s: &str, n: usize, what: &str) -> Result<Vec<f64>> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Config(format!("{what}: {e}")))?;
    if v.len() != n {
        return Err(Error::Config(format!("{what}: expected {n} values, got {}", v.len())));
    }
    Ok(v)
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Run {
            experiment,
            config,
            out,
            rabi,
            workers,
            plot,
        } => {
            let experiment: Experiment = experiment.parse()?;
            let cfg = Config::load(experiment, config.as_deref())?;
            let result = experiments::run(experiment, &cfg, &RunOptions { rabi, workers })?;
            std::fs::create_dir_all(&out)?;
            for p in result.write(&out, plot)? {
                println!("wrote {}", p.display());
            }
            for (k, v) in &result.summary {
                println!("{k}={v}");
            }
        }
        Command::Design {
            target,
            phases,
            config,
            t_f_over_tau0,
            bandwidth_over_g,
            emit_field,
            field_dt,
        } => {
            let mut cfg = Config::load(Experiment::Custom, config.as_deref())?;
            let ph = parse_list(&phases, 2, "--phases")?;
            cfg.target.phases = [ph[0], ph[1]];
            if target == "max_orientation" {
                cfg.target.kind = TargetKind::MaxOrientation;
            } else {
                let a = parse_list(&target, 3, "--target")?;
                cfg.target.kind = TargetKind::Explicit;
                cfg.target.amplitudes = [a[0], a[1], a[2]];
            }
            if let Some(t) = t_f_over_tau0 {
                cfg.target.t_f_over_tau0 = t;
            }
            if let Some(b) = bandwidth_over_g {
                cfg.pulse.bandwidth_over_g = b;
            }
            cfg.validate()?;
            let model = cfg.build_model(false)?;
            let (design, target) = cfg.design(&model)?;
            println!("t_f_over_tau0={}", target.t_f / TAU0);
            for b in [Branch::Minus, Branch::Plus] {
                let p = design.pulse(b);
                let tag = if b == Branch::Minus { "minus" } else { "plus" };
                println!("{tag}.area={:.9}", p.area);
                println!("{tag}.area_phase={:.9}", p.area_phase);
                println!("{tag}.amplitude={:.9e}", p.amplitude);
                println!("{tag}.carrier={:.9}", p.carrier);
                println!("{tag}.carrier_phase={:.9}", p.phase);
                println!("{tag}.bandwidth={:.9e}", p.bandwidth);
                println!("{tag}.center_over_tau0={:.9}", p.center / TAU0);
            }
            println!("narrow_band={}", design.is_narrow_band(model.coupling()));
            if let Some(path) = emit_field {
                let t = output::field_table(&design, design.start_time(), design.end_time(), field_dt);
                let mut f = std::fs::File::create(&path)?;
                t.write_to(&mut f)?;
                println!("wrote {}", path.display());
            }
        }
        Command::Validate => {
            let checks = validate::run_checks()?;
            for c in &checks {
                println!("{}", c.line());
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            if failed > 0 {
                return Err(Error::Config(format!("{failed} validation checks failed")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = e.to_string().replace('"', "'");
            eprintln!("error kind={} message=\"{msg}\"", e.kind());
            ExitCode::FAILURE
        }
    }
}
