//! Command-line front end: reproducible, machine-readable access to every
//! computation in the library.
//!
//! Exit codes: 0 success, 1 usage error (bad flags or flag values),
//! 2 validation failure (malformed or inconsistent input files, failed
//! verification).

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use beltnot::{
    analytic_optimum, avg_fidelity_closed, avg_fidelity_quadrature, belt_constants,
    classify_case, exemplar_chain, expand_to_qubits, fidelity_report, fidelity_sim,
    generic_chain, json, oracle_optimum, realize_from_report, verify_chain, BeltRegion,
    ExemplarState, GateSpec, InputState, JointState, MpsChain, QuadratureConfig,
};

#[derive(Parser)]
#[command(name = "beltnot", version, about = "Optimal 1-to-M NOT gates for Bloch-belt states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct BeltArgs {
    /// Lower latitude θ1 (radians unless --degrees)
    #[arg(long)]
    theta1: f64,
    /// Upper latitude θ2 (radians unless --degrees)
    #[arg(long)]
    theta2: f64,
    /// Interpret all angles as degrees
    #[arg(long)]
    degrees: bool,
}

#[derive(Args, Clone)]
struct OutputArg {
    /// Write the result here instead of standard output
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Belt constants K, P, Q, R (and the case, when -M is given)
    Constants {
        #[command(flatten)]
        belt: BeltArgs,
        /// Copy count, enables case classification
        #[arg(short = 'M', long = "copies")]
        m: Option<u32>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Analytic optimal gate report for a belt
    Optimize {
        #[command(flatten)]
        belt: BeltArgs,
        #[arg(short = 'M', long = "copies")]
        m: u32,
        /// Also write the realized gate (ancilla vectors) as JSON here
        #[arg(long, value_name = "FILE")]
        emit_gate: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Pointwise and averaged fidelity of the optimal gate, all four routes
    Fidelity {
        #[command(flatten)]
        belt: BeltArgs,
        #[arg(short = 'M', long = "copies")]
        m: u32,
        /// Polar angle θ for the pointwise values
        #[arg(long)]
        theta: f64,
        /// Gauss-Legendre nodes in u = cos θ
        #[arg(long, default_value_t = 64)]
        u_nodes: usize,
        /// Uniform φ samples
        #[arg(long, default_value_t = 64)]
        phi_nodes: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Closed-form vs quadrature fidelity over a grid of belts
    Sweep {
        /// θ1 values: a single number or start:end:count
        #[arg(long)]
        theta1: String,
        /// θ2 values: a single number or start:end:count
        #[arg(long)]
        theta2: String,
        #[arg(long)]
        degrees: bool,
        #[arg(short = 'M', long = "copies")]
        m: u32,
        #[arg(long, default_value_t = 64)]
        u_nodes: usize,
        #[arg(long, default_value_t = 64)]
        phi_nodes: usize,
        /// Output format
        #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
        format: String,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Brute-force optimality check against the analytic report
    Oracle {
        #[command(flatten)]
        belt: BeltArgs,
        #[arg(short = 'M', long = "copies")]
        m: u32,
        /// Simplex grid step
        #[arg(long, default_value_t = 0.02)]
        resolution: f64,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Apply a gate to one input state and report the output and fidelity
    Simulate {
        /// Gate JSON file; defaults to the optimal gate for the belt
        #[arg(long)]
        gate: Option<PathBuf>,
        #[arg(long)]
        theta1: Option<f64>,
        #[arg(long)]
        theta2: Option<f64>,
        #[arg(short = 'M', long = "copies")]
        m: Option<u32>,
        /// Input polar angle θ
        #[arg(long)]
        theta: f64,
        /// Input azimuth φ
        #[arg(long, default_value_t = 0.0)]
        phi: f64,
        #[arg(long)]
        degrees: bool,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Build an MPS chain: analytic exemplar or generic SVD sweep
    #[command(name = "mps-build")]
    MpsBuild {
        /// Odd copy count of the exemplar state
        #[arg(long, value_name = "M")]
        exemplar_m: Option<u32>,
        /// Exemplar weight γ in [0, 1]
        #[arg(long)]
        gamma: Option<f64>,
        /// Joint (Dicke ⊗ ancilla) state JSON to expand and factor
        #[arg(long)]
        joint: Option<PathBuf>,
        /// Full computational-basis state JSON to factor
        #[arg(long)]
        state: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Verify a chain file against a reference state
    #[command(name = "mps-verify")]
    MpsVerify {
        /// Chain JSON file
        chain: PathBuf,
        /// Full state JSON to compare against
        #[arg(long)]
        reference: Option<PathBuf>,
        /// Compare against the exemplar with this copy count
        #[arg(long, value_name = "M")]
        exemplar_m: Option<u32>,
        #[arg(long)]
        gamma: Option<f64>,
        #[command(flatten)]
        out: OutputArg,
    },
}

/// Failure carrying the process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }

    fn validation(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<beltnot::Error> for Failure {
    fn from(err: beltnot::Error) -> Self {
        Failure::validation(err.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Full computational-basis state file: {qubits, amplitudes: [[re, im], …]}.
#[derive(Serialize, Deserialize)]
struct FullStateFile {
    qubits: u32,
    #[serde(with = "json::complex_vec")]
    amplitudes: Vec<Complex64>,
}

/// Polar angle from the command line: optional degree conversion, then
/// angles written with a truncated π (3.1416 and the like) snap onto the
/// valid [0, π] range; anything further out is a genuine usage error.
fn to_radians(value: f64, degrees: bool) -> f64 {
    const SNAP: f64 = 1e-3;
    let v = if degrees { value.to_radians() } else { value };
    if v > std::f64::consts::PI && v <= std::f64::consts::PI + SNAP {
        std::f64::consts::PI
    } else if (-SNAP..0.0).contains(&v) {
        0.0
    } else {
        v
    }
}

/// Azimuth from the command line: periodic, so wrap into [0, 2π).
fn azimuth_to_radians(value: f64, degrees: bool) -> f64 {
    let v = if degrees { value.to_radians() } else { value };
    v.rem_euclid(2.0 * std::f64::consts::PI)
}

fn parse_region(theta1: f64, theta2: f64, degrees: bool) -> CliResult<BeltRegion> {
    BeltRegion::new(to_radians(theta1, degrees), to_radians(theta2, degrees))
        .map_err(|e| Failure::usage(e.to_string()))
}

/// "a" or "a:b:n" into an inclusive linspace.
fn parse_range(text: &str, field: &str, degrees: bool) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = |msg: String| Failure::usage(format!("{field}: {msg}"));
    match parts.as_slice() {
        [single] => {
            let v: f64 = single.parse().map_err(|_| bad(format!("cannot parse {single:?}")))?;
            Ok(vec![to_radians(v, degrees)])
        }
        [start, end, count] => {
            let a: f64 = start.parse().map_err(|_| bad(format!("cannot parse {start:?}")))?;
            let b: f64 = end.parse().map_err(|_| bad(format!("cannot parse {end:?}")))?;
            let n: usize = count.parse().map_err(|_| bad(format!("cannot parse {count:?}")))?;
            if n == 0 {
                return Err(bad("count must be positive".into()));
            }
            let (a, b) = (to_radians(a, degrees), to_radians(b, degrees));
            if n == 1 {
                return Ok(vec![a]);
            }
            Ok((0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect())
        }
        _ => Err(bad("expected a value or start:end:count".into())),
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &PathBuf, what: &str) -> CliResult<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::validation(format!("{what} {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::validation(format!("{what} {}: malformed JSON: {e}", path.display())))
}

fn emit(out: &OutputArg, text: &str) -> CliResult<()> {
    match &out.output {
        None => {
            println!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, format!("{text}\n"))
            .map_err(|e| Failure::validation(format!("output {}: {e}", path.display()))),
    }
}

fn emit_json<T: Serialize>(out: &OutputArg, value: &T) -> CliResult<()> {
    let text = json::to_string(value)
        .map_err(|e| Failure::validation(format!("serialization failed: {e}")))?;
    emit(out, &text)
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Constants { belt, m, out } => {
            let region = parse_region(belt.theta1, belt.theta2, belt.degrees)?;
            let consts = belt_constants(&region);
            #[derive(Serialize)]
            struct ConstantsOut {
                theta1: f64,
                theta2: f64,
                #[serde(rename = "K")]
                k: f64,
                #[serde(rename = "P")]
                p: f64,
                #[serde(rename = "Q")]
                q: f64,
                #[serde(rename = "R")]
                r: f64,
                #[serde(skip_serializing_if = "Option::is_none")]
                m: Option<u32>,
                #[serde(skip_serializing_if = "Option::is_none")]
                case: Option<String>,
            }
            let case = m.map(|m| classify_case(&region, m).to_string());
            emit_json(
                &out,
                &ConstantsOut {
                    theta1: region.theta1,
                    theta2: region.theta2,
                    k: consts.k_const,
                    p: consts.p_const,
                    q: consts.q_const,
                    r: consts.r_const,
                    m,
                    case,
                },
            )
        }
        Command::Optimize { belt, m, emit_gate, out } => {
            let region = parse_region(belt.theta1, belt.theta2, belt.degrees)?;
            let report = analytic_optimum(&region, m)?;
            if let Some(path) = emit_gate {
                let gate = realize_from_report(&report)?;
                let text = json::to_string(&gate)
                    .map_err(|e| Failure::validation(format!("serialization failed: {e}")))?;
                std::fs::write(&path, format!("{text}\n"))
                    .map_err(|e| Failure::validation(format!("output {}: {e}", path.display())))?;
            }
            emit_json(&out, &report)
        }
        Command::Fidelity { belt, m, theta, u_nodes, phi_nodes, out } => {
            let region = parse_region(belt.theta1, belt.theta2, belt.degrees)?;
            let theta = to_radians(theta, belt.degrees);
            if !(0.0..=std::f64::consts::PI).contains(&theta) {
                return Err(Failure::usage(format!("theta: {theta} outside [0, pi]")));
            }
            let report = analytic_optimum(&region, m)?;
            let gate = realize_from_report(&report)?;
            let config = QuadratureConfig { u_nodes, phi_nodes };
            let fid = fidelity_report(&gate, &region, theta, &config)?;
            emit_json(&out, &fid)
        }
        Command::Sweep { theta1, theta2, degrees, m, u_nodes, phi_nodes, format, out } => {
            run_sweep(theta1, theta2, degrees, m, u_nodes, phi_nodes, format, out)
        }
        Command::Oracle { belt, m, resolution, out } => {
            let region = parse_region(belt.theta1, belt.theta2, belt.degrees)?;
            let report = analytic_optimum(&region, m)?;
            let oracle = oracle_optimum(&region, m, resolution)?;
            #[derive(Serialize)]
            struct OracleOut {
                #[serde(flatten)]
                result: beltnot::OracleResult,
                analytic_f_bar: f64,
                residual_to_analytic: f64,
            }
            emit_json(
                &out,
                &OracleOut {
                    residual_to_analytic: oracle.best_f - report.f_bar,
                    analytic_f_bar: report.f_bar,
                    result: oracle,
                },
            )
        }
        Command::Simulate { gate, theta1, theta2, m, theta, phi, degrees, out } => {
            let spec: GateSpec = match (gate, theta1, theta2, m) {
                (Some(path), _, _, _) => {
                    let spec: GateSpec = read_json(&path, "gate file")?;
                    spec.ensure_valid()?;
                    spec
                }
                (None, Some(t1), Some(t2), Some(m)) => {
                    let region = parse_region(t1, t2, degrees)?;
                    realize_from_report(&analytic_optimum(&region, m)?)?
                }
                _ => {
                    return Err(Failure::usage(
                        "simulate needs either --gate FILE or --theta1/--theta2/-M".to_string(),
                    ))
                }
            };
            let input = InputState::new(to_radians(theta, degrees), azimuth_to_radians(phi, degrees))
                .map_err(|e| Failure::usage(e.to_string()))?;
            let output_state = beltnot::apply(&spec, &input)?;
            let fidelity = fidelity_sim(&spec, &input)?;
            #[derive(Serialize)]
            struct SimOut {
                theta: f64,
                phi: f64,
                fidelity_sim: f64,
                state: JointState,
            }
            emit_json(
                &out,
                &SimOut { theta: input.theta, phi: input.phi, fidelity_sim: fidelity, state: output_state },
            )
        }
        Command::MpsBuild { exemplar_m, gamma, joint, state, out } => {
            let chain: MpsChain = match (exemplar_m, gamma, joint, state) {
                (Some(m), Some(g), None, None) => {
                    let exemplar = ExemplarState::new(m, g)?;
                    exemplar_chain(&exemplar)?.0
                }
                (None, None, Some(path), None) => {
                    let joint_state: JointState = read_json(&path, "joint state file")?;
                    let full = expand_to_qubits(&joint_state)?;
                    let qubits = full.len().trailing_zeros();
                    generic_chain(&full, qubits)?
                }
                (None, None, None, Some(path)) => {
                    let file: FullStateFile = read_json(&path, "state file")?;
                    if file.amplitudes.len() != 1usize << file.qubits {
                        return Err(Failure::validation(format!(
                            "state file: {} amplitudes do not match {} qubits",
                            file.amplitudes.len(),
                            file.qubits
                        )));
                    }
                    generic_chain(&file.amplitudes, file.qubits)?
                }
                _ => {
                    return Err(Failure::usage(
                        "mps-build needs exactly one of --exemplar-m/--gamma, --joint, --state".to_string(),
                    ))
                }
            };
            emit_json(&out, &chain)
        }
        Command::MpsVerify { chain, reference, exemplar_m, gamma, out } => {
            let chain_data: MpsChain = read_json(&chain, "chain file")?;
            let reference_state: Vec<Complex64> = match (reference, exemplar_m, gamma) {
                (Some(path), None, None) => {
                    let file: FullStateFile = read_json(&path, "reference file")?;
                    file.amplitudes
                }
                (None, Some(m), Some(g)) => ExemplarState::new(m, g)?.full_state(),
                _ => {
                    return Err(Failure::usage(
                        "mps-verify needs --reference FILE or --exemplar-m/--gamma".to_string(),
                    ))
                }
            };
            let certificate = verify_chain(&chain_data, &reference_state)?;
            let passed = certificate.passed;
            emit_json(&out, &certificate)?;
            if passed {
                Ok(())
            } else {
                Err(Failure::validation(format!(
                    "chain verification failed: max isometry residual {:.3e}, overlap {:.12}",
                    certificate.max_isometry_residual, certificate.overlap
                )))
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn run_sweep(
    theta1: String,
    theta2: String,
    degrees: bool,
    m: u32,
    u_nodes: usize,
    phi_nodes: usize,
    format: String,
    out: OutputArg,
) -> CliResult<()> {
    #[derive(Serialize)]
    struct SweepConfig {
        theta1: String,
        theta2: String,
        m: u32,
        u_nodes: usize,
        phi_nodes: usize,
        degrees: bool,
    }
    #[derive(Serialize)]
    struct Row {
        theta1: f64,
        theta2: f64,
        m: u32,
        case: String,
        a: f64,
        #[serde(rename = "F_closed")]
        f_closed: f64,
        #[serde(rename = "F_quadrature")]
        f_quadrature: f64,
        residual: f64,
    }
    let config = SweepConfig {
        theta1: theta1.clone(),
        theta2: theta2.clone(),
        m,
        u_nodes,
        phi_nodes,
        degrees,
    };
    let grid1 = parse_range(&theta1, "theta1", degrees)?;
    let grid2 = parse_range(&theta2, "theta2", degrees)?;
    let quad = QuadratureConfig { u_nodes, phi_nodes };
    let mut rows = Vec::new();
    for &t1 in &grid1 {
        for &t2 in &grid2 {
            if t1 > t2 {
                continue;
            }
            let region = BeltRegion::new(t1, t2).map_err(|e| Failure::usage(e.to_string()))?;
            let report = analytic_optimum(&region, m)?;
            let gate = realize_from_report(&report)?;
            let f_closed = avg_fidelity_closed(&gate, &region)?;
            let f_quadrature = avg_fidelity_quadrature(&gate, &region, &quad)?;
            rows.push(Row {
                theta1: t1,
                theta2: t2,
                m,
                case: report.case.to_string(),
                a: report.a_star,
                f_closed,
                f_quadrature,
                residual: (f_closed - f_quadrature).abs(),
            });
        }
    }
    if format == "csv" {
        let mut text = String::new();
        let config_json = json::to_string(&config)
            .map_err(|e| Failure::validation(format!("serialization failed: {e}")))?;
        let _ = writeln!(text, "# config: {config_json}");
        let _ = writeln!(text, "theta1,theta2,M,case,a,F_closed,F_quadrature,residual");
        for r in &rows {
            let _ = writeln!(
                text,
                "{},{},{},{},{},{},{},{}",
                json::fmt_f64(r.theta1),
                json::fmt_f64(r.theta2),
                r.m,
                r.case,
                json::fmt_f64(r.a),
                json::fmt_f64(r.f_closed),
                json::fmt_f64(r.f_quadrature),
                json::fmt_f64(r.residual),
            );
        }
        emit(&out, text.trim_end())
    } else {
        #[derive(Serialize)]
        struct SweepOut {
            config: SweepConfig,
            rows: Vec<Row>,
        }
        emit_json(&out, &SweepOut { config, rows })
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            eprintln!("{err}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
