use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qdiscord::io::{ChannelFile, StateFile};
use qdiscord::protocol::format_sig12;
use qdiscord::thermo::bits_to_energy;
use qdiscord::{
    apply, build_liouvillian, discord, emit_csv, lift_local, lost_work_decomposition,
    min_decoherence_lost_work, run_protocol, steady_state, Basis, Config, Error, InfoReport,
    OptimizerConfig, Party, State,
};

#[derive(Parser)]
#[command(name = "qdiscord", version, about = "Discord and lost work in a predictive two-qubit process")]
struct Cli {
    /// Print optimizer diagnostics to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the update/relax protocol and write a CSV time series.
    Simulate(SimulateArgs),
    /// Report entropies, discord and lost work for a state file.
    Analyze(AnalyzeArgs),
    /// Write the relaxation steady state as a state file.
    SteadyState(SteadyArgs),
    /// Check state or channel files.
    Validate(ValidateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderingArg {
    #[value(name = "SX")]
    Sx,
    #[value(name = "XS")]
    Xs,
}

impl From<OrderingArg> for qdiscord::Ordering {
    fn from(o: OrderingArg) -> Self {
        match o {
            OrderingArg::Sx => qdiscord::Ordering::SX,
            OrderingArg::Xs => qdiscord::Ordering::XS,
        }
    }
}

#[derive(Args)]
struct OptimizerArgs {
    /// Polar step of the basis grid in degrees (the azimuthal step is twice this).
    #[arg(long, default_value_t = 2.0)]
    grid_deg: f64,
    /// Simplex spread at which the local refinement stops.
    #[arg(long)]
    refine_tol: Option<f64>,
}

impl OptimizerArgs {
    fn config(&self) -> OptimizerConfig {
        OptimizerConfig {
            refine_spread: self.refine_tol,
            ..OptimizerConfig::default().with_grid_deg(self.grid_deg)
        }
    }
}

#[derive(Args)]
struct SimulateArgs {
    /// Damping probability of the update channel.
    #[arg(long, default_value_t = 0.7)]
    p: f64,
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
    /// Relaxation between updates in units of 1/kappa.
    #[arg(long, default_value_t = 1.0)]
    kdt: f64,
    #[arg(long, default_value_t = 10)]
    steps: usize,
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    #[arg(long, value_enum, default_value = "SX")]
    ordering: OrderingArg,
    #[command(flatten)]
    optimizer: OptimizerArgs,
    /// Output path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    state: PathBuf,
    /// Channel on X; adds the lost-work ledger for the update.
    channel: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    #[command(flatten)]
    optimizer: OptimizerArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SteadyArgs {
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
    #[arg(long, value_enum, default_value = "SX")]
    ordering: OrderingArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(required = true)]
    files: Vec<PathBuf>,
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_input_error() { 2 } else { 3 },
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Error::from(e).into()
    }
}

fn output(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

fn num(x: f64) -> String {
    format_sig12(x)
}

fn basis(b: &Basis) -> String {
    format!("theta = {} deg, phi = {} deg", num(b.theta.to_degrees()), num(b.phi.to_degrees()))
}

fn simulate(args: &SimulateArgs, verbose: bool) -> Result<(), Failure> {
    if !(args.kappa > 0.0 && args.kappa.is_finite()) {
        return Err(Error::Domain(format!("kappa must be positive, got {}", args.kappa)).into());
    }
    let cfg = Config {
        p: args.p,
        kappa: args.kappa,
        step_duration: args.kdt / args.kappa,
        n_steps: args.steps,
        beta: args.beta,
        optimizer: args.optimizer.config(),
        ordering: args.ordering.into(),
        channel_schedule: None,
    };
    let records = run_protocol(&cfg)?;
    if verbose {
        for r in &records {
            eprintln!(
                "step {}: pre basis {}, post basis {}",
                r.step,
                basis(&r.basis_pre),
                basis(&r.basis_post)
            );
        }
    }
    let mut out = output(&args.out)?;
    emit_csv(&records, &mut out)?;
    out.flush()?;
    Ok(())
}

fn load_state(path: &Path) -> Result<State, Failure> {
    let file = StateFile::parse(&read(path)?)?;
    file.to_state().map_err(|e| match e {
        Error::InvalidState(v) => Failure {
            code: 3,
            message: format!("{}: validation failed: {v}", path.display()),
        },
        other => other.into(),
    })
}

fn analyze(args: &AnalyzeArgs, verbose: bool) -> Result<(), Failure> {
    let rho = load_state(&args.state)?;
    if !rho.is_bipartite() {
        return Err(Error::InvalidDimensions("analysis needs a bipartite state".into()).into());
    }
    let channel = match &args.channel {
        Some(p) => Some(ChannelFile::parse(&read(p)?)?.to_channel::<f64>()?),
        None => None,
    };
    let cfg = args.optimizer.config();
    let info = InfoReport::of(&rho)?;
    let sx = discord(&rho, Party::X, &cfg)?;
    let xs = discord(&rho, Party::S, &cfg)?;

    let mut out = output(&args.out)?;
    let mut line = |label: &str, value: String| writeln!(out, "{label:<28}{value}");
    line("ordering", rho.ordering().label().to_string())?;
    line("H(SX)", num(info.h_joint))?;
    line("H(S)", num(info.h_marginal_s))?;
    line("H(X)", num(info.h_marginal_x))?;
    line("H(S|X)", num(info.h_cond_s_given_x))?;
    line("H(X|S)", num(info.h_cond_x_given_s()))?;
    line("I(S:X)", num(info.mutual_info))?;
    for d in [&sx, &xs] {
        let (t, m) = (d.measured.other(), d.measured);
        line(&format!("I^C({t}|{m})"), num(d.classical_correlations))?;
        line(&format!("delta({t}|{m})"), num(d.discord))?;
        line(&format!("min basis on {m}"), basis(&d.argmin_basis))?;
        if verbose {
            let tr = d.optimizer_trace;
            eprintln!(
                "{t}|{m}: {} grid points, grid best {}, {} simplex iterations, refined {}",
                tr.grid_points,
                num(tr.grid_best),
                tr.iterations,
                tr.refined
            );
        }
    }
    let (w_min, w_basis) = min_decoherence_lost_work(&rho, args.beta, &cfg)?;
    let bits = std::f64::consts::LN_2 / args.beta;
    line("min decoherence W_lost", format!("{} bits, {} energy", num(w_min / bits), num(w_min)))?;
    line("min decoherence basis", basis(&w_basis))?;

    if let Some(ch) = channel {
        let lifted = lift_local(&ch, rho.dims(), rho.ordering())?;
        let after = apply(&lifted, &rho)?;
        let ledger = lost_work_decomposition(&rho, &after, args.beta, Party::X, &cfg)?;
        let (lost, classical, quantum) = ledger.in_bits();
        line("channel", ch.label().to_string())?;
        line("beta", num(ledger.beta))?;
        for (label, energy) in [("W_ext before", ledger.w_ext_before), ("W_ext after", ledger.w_ext_after)] {
            line(label, format!("{} bits, {} energy", num(energy / bits), num(energy)))?;
        }
        for (label, b) in [("W_lost", lost), ("W_lost classical", classical), ("W_lost quantum", quantum)] {
            line(label, format!("{} bits, {} energy", num(b), num(bits_to_energy(b, args.beta))))?;
        }
        line("delta(S|X) after", num(ledger.discord_after.discord))?;
    }
    out.flush()?;
    Ok(())
}

fn steady(args: &SteadyArgs) -> Result<(), Failure> {
    let ss = steady_state(&build_liouvillian(args.kappa, args.ordering.into())?)?;
    let mut out = output(&args.out)?;
    writeln!(out, "{}", StateFile::from_state(&ss).to_json())?;
    out.flush()?;
    Ok(())
}

fn validate_file(path: &Path) -> Result<String, Failure> {
    let text = read(path)?;
    if let Ok(state) = StateFile::parse(&text) {
        let report = state.validation_report::<f64>()?;
        if let Some(v) = report.violations.first() {
            return Err(Failure {
                code: 3,
                message: format!("{}: validation failed: {v}", path.display()),
            });
        }
        return Ok(format!(
            "{}: valid state, dims {:?}, min eigenvalue {}",
            path.display(),
            state.dims,
            report.min_eigenvalue.map_or("n/a".into(), num)
        ));
    }
    let channel = ChannelFile::parse(&text).map_err(|_| Failure {
        code: 2,
        message: format!("{}: neither a state nor a channel file", path.display()),
    })?;
    match channel.to_channel::<f64>() {
        Ok(ch) => Ok(format!(
            "{}: valid channel, dim {}, {} Kraus operators",
            path.display(),
            ch.dim(),
            ch.operators().len()
        )),
        Err(e @ Error::IncompleteKraus(_)) => Err(Failure {
            code: 3,
            message: format!("{}: validation failed: {e}", path.display()),
        }),
        Err(e) => Err(e.into()),
    }
}

fn validate(args: &ValidateArgs) -> Result<(), Failure> {
    let mut worst: Option<Failure> = None;
    for path in &args.files {
        match validate_file(path) {
            Ok(msg) => println!("{msg}"),
            Err(f) => {
                eprintln!("{}", f.message);
                if worst.as_ref().is_none_or(|w| f.code > w.code) {
                    worst = Some(f);
                }
            }
        }
    }
    match worst {
        Some(f) => Err(Failure { code: f.code, message: String::new() }),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Simulate(a) => simulate(a, cli.verbose),
        Command::Analyze(a) => analyze(a, cli.verbose),
        Command::SteadyState(a) => steady(a),
        Command::Validate(a) => validate(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("qdiscord: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
