use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use homq::hom::{approx_hom_restricted, hom_restricted_exact, ApproxOptions, ApproxResult};
use homq::io::{self, InstanceKind, ResultDoc};
use homq::iqp::{psi_statevector, psi_via_ising, psi_via_ising_approx_detailed, IsingMode};
use homq::ising::{ising_to_hom, z_ising_approx, z_ising_exact};
use homq::regimes::{polydisc_report, polyregion_report, zero_free_radius, RegimeReport};
use homq::HomqError;

#[derive(Parser)]
#[command(name = "homq", version, about = "Partition-function approximation on bounded-degree graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Instance file (JSON).
    instance: PathBuf,
    /// Relative accuracy of the approximation.
    #[arg(long, default_value_t = 0.01)]
    epsilon: f64,
    /// Brute-force evaluation instead of interpolation.
    #[arg(long)]
    exact: bool,
    /// Run outside the certified region; stamps "guarantee": false.
    #[arg(long)]
    force: bool,
    /// Write the result file here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Restricted multivariate graph homomorphism partition function.
    Hom(CommonArgs),
    /// Complex Ising partition function via the pendant-gadget reduction.
    Ising(CommonArgs),
    /// Graph-induced X-program amplitude at the all-zeros string.
    Iqp {
        #[command(flatten)]
        common: CommonArgs,
        /// Evaluation route.
        #[arg(long, value_parser = ["ising-exact", "ising-approx", "statevector"],
              default_value = "ising-approx")]
        mode: String,
        /// Emit |psi|^2 instead of the amplitude.
        #[arg(long)]
        probability: bool,
    },
    /// Zero-free radii and regime membership reports.
    Regime {
        /// Report the zero-free radius for this maximum degree.
        #[arg(long, conflicts_with = "instance")]
        delta_of: Option<usize>,
        /// Instance file to check for regime membership.
        instance: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn error_kind(err: &HomqError) -> &'static str {
    match err {
        HomqError::OutsideZeroFreeRegion { .. } => "outside-zero-free-region",
        HomqError::InstanceTooLarge { .. } => "instance-too-large",
        HomqError::Parse(_) => "parse",
        _ => "invalid-instance",
    }
}

fn exit_for(err: &HomqError) -> u8 {
    match err {
        HomqError::OutsideZeroFreeRegion { .. } => 2,
        HomqError::InstanceTooLarge { .. } => 4,
        _ => 3,
    }
}

fn fail(err: HomqError) -> ExitCode {
    print!("{}", io::render_error(error_kind(&err), &err.to_string()));
    ExitCode::from(exit_for(&err))
}

fn emit(doc: &ResultDoc, output: &Option<PathBuf>) -> Result<(), HomqError> {
    let text = doc.render();
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| HomqError::Parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_instance(path: &PathBuf) -> Result<String, HomqError> {
    std::fs::read_to_string(path)
        .map_err(|e| HomqError::Parse(format!("cannot read {}: {e}", path.display())))
}

fn approx_doc(res: &ApproxResult, report: RegimeReport, force: bool) -> ResultDoc {
    ResultDoc {
        value: res.value,
        method: "interpolation",
        epsilon: Some(res.epsilon),
        order: Some(res.order),
        regime: Some(report),
        guarantee: Some(!force || report.inside),
        diagnostics: Some(res.diagnostics),
    }
}

fn run_hom(args: &CommonArgs) -> Result<(), HomqError> {
    let inst = io::parse_hom(&read_instance(&args.instance)?)?;
    let doc = if args.exact {
        ResultDoc::exact(hom_restricted_exact(&inst)?)
    } else {
        let opts = ApproxOptions {
            force: args.force,
            ..ApproxOptions::default()
        };
        let res = approx_hom_restricted(&inst, args.epsilon, None, &opts)?;
        let threshold = zero_free_radius(inst.graph.max_degree().max(1));
        approx_doc(&res, polydisc_report(&inst.matrices, threshold), args.force)
    };
    emit(&doc, &args.output)
}

fn run_ising(args: &CommonArgs) -> Result<(), HomqError> {
    let inst = io::parse_ising(&read_instance(&args.instance)?)?;
    let doc = if args.exact {
        ResultDoc::exact(z_ising_exact(&inst)?)
    } else {
        let opts = ApproxOptions {
            force: args.force,
            ..ApproxOptions::default()
        };
        let res = z_ising_approx(&inst, args.epsilon, &opts)?;
        let hom_inst = ising_to_hom(&inst);
        let threshold = zero_free_radius(hom_inst.graph.max_degree().max(1));
        approx_doc(&res, polyregion_report(&inst, threshold), args.force)
    };
    emit(&doc, &args.output)
}

fn run_iqp(common: &CommonArgs, mode: &str, probability: bool) -> Result<(), HomqError> {
    let gxp = io::parse_iqp(&read_instance(&common.instance)?)?;
    let opts = ApproxOptions {
        force: common.force,
        ..ApproxOptions::default()
    };
    let mut doc = match mode {
        "statevector" => {
            let amp = psi_statevector(&gxp)?;
            let mut d = ResultDoc::exact(amp.value);
            d.method = "statevector";
            d
        }
        "ising-exact" => {
            let amp = psi_via_ising(&gxp, IsingMode::Exact, None, &opts)?;
            let mut d = ResultDoc::exact(amp.value);
            d.method = "ising-exact";
            d
        }
        _ => {
            let (amp, res) = psi_via_ising_approx_detailed(&gxp, common.epsilon, &opts)?;
            let ising = gxp.to_ising();
            let hom_inst = ising_to_hom(&ising);
            let threshold = zero_free_radius(hom_inst.graph.max_degree().max(1));
            let mut d = approx_doc(&res, polyregion_report(&ising, threshold), common.force);
            d.method = "ising-approx";
            d.value = amp.value;
            d
        }
    };
    if probability {
        doc.value = Complex64::new(doc.value.norm_sqr(), 0.0);
        // the squared modulus doubles the relative error
        if let Some(eps) = doc.epsilon.as_mut() {
            *eps *= 2.0;
        }
    }
    emit(&doc, &common.output)
}

fn run_regime(
    delta_of: Option<usize>,
    instance: Option<PathBuf>,
    output: &Option<PathBuf>,
) -> Result<(), HomqError> {
    let text = match (delta_of, instance) {
        (Some(degree), None) => {
            if degree == 0 {
                return Err(HomqError::DeltaOutOfRange { delta: 0.0 });
            }
            format!(
                "{{\n  \"max_degree\": {degree},\n  \"delta\": {:.16e}\n}}\n",
                zero_free_radius(degree)
            )
        }
        (None, Some(path)) => {
            let body = read_instance(&path)?;
            let report = match io::infer_kind(&body)? {
                InstanceKind::Hom => {
                    let inst = io::parse_hom(&body)?;
                    let threshold = zero_free_radius(inst.graph.max_degree().max(1));
                    polydisc_report(&inst.matrices, threshold)
                }
                InstanceKind::Ising => {
                    let inst = io::parse_ising(&body)?;
                    let threshold = zero_free_radius(inst.graph().max_degree() + 1);
                    polyregion_report(&inst, threshold)
                }
                InstanceKind::Iqp => {
                    let gxp = io::parse_iqp(&body)?;
                    let ising = gxp.to_ising();
                    let threshold = zero_free_radius(gxp.graph().max_degree() + 1);
                    polyregion_report(&ising, threshold)
                }
            };
            format!(
                "{{\n  \"margin\": {:.16e},\n  \"threshold\": {:.16e},\n  \"inside\": {}\n}}\n",
                report.margin, report.threshold, report.inside
            )
        }
        _ => {
            return Err(HomqError::Parse(
                "regime takes exactly one of --delta-of or an instance file".into(),
            ))
        }
    };
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| HomqError::Parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("HOMQ_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            print!("{}", io::render_error("parse", &e.to_string()));
            return ExitCode::from(3);
        }
        Err(e) => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let outcome = match &cli.command {
        Command::Hom(args) => run_hom(args),
        Command::Ising(args) => run_ising(args),
        Command::Iqp {
            common,
            mode,
            probability,
        } => run_iqp(common, mode, *probability),
        Command::Regime {
            delta_of,
            instance,
            output,
        } => run_regime(*delta_of, instance.clone(), output),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => fail(err),
    }
}
