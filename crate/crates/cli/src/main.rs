use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sevenlevel::gates::{gate_library, BitString6};
use sevenlevel::parity::{run_parity_algorithm, Level};
use sevenlevel::pulse::DEFAULT_FIELD_AMPLITUDE;
use sevenlevel::thermal::{
    continuum_warning, information_sweep, linear_grid, write_csv, CONTINUUM_WARN_POPULATION,
    DEFAULT_POINTS, DEFAULT_TMAX, DEFAULT_TMIN,
};
use sevenlevel::well::{dipole_matrix, solve_bound_states, WellSpec};
use sevenlevel::verify::run_suite;

#[derive(Parser)]
#[command(name = "sevenlevel", version, about = "Seven-level square-well qudit toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bound states and dipole matrix of the well, as JSON.
    SolveWell {
        #[command(flatten)]
        well: WellArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Mutual-information sweep of the thermal state.
    ThermalSweep {
        #[command(flatten)]
        well: WellArgs,
        #[arg(long, default_value_t = DEFAULT_TMIN)]
        tmin: f64,
        #[arg(long, default_value_t = DEFAULT_TMAX)]
        tmax: f64,
        #[arg(long, default_value_t = DEFAULT_POINTS)]
        points: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Three-query parity of a six-bit string.
    Parity {
        #[command(flatten)]
        well: WellArgs,
        /// Six characters of 0/1, s1 first.
        #[arg(long)]
        string: String,
        /// gate or pulse.
        #[arg(long, default_value = "gate")]
        level: String,
        /// Also write the run as JSON to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gate matrices with their pulse schedules, as JSON.
    GatesDump {
        #[command(flatten)]
        well: WellArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run the invariant suite.
    Verify {
        #[command(flatten)]
        well: WellArgs,
    },
}

#[derive(Args)]
struct WellArgs {
    #[arg(long, default_value_t = 200.0)]
    depth: f64,
    #[arg(long, default_value_t = 1.0)]
    width: f64,
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
}

impl WellArgs {
    fn spec(&self) -> sevenlevel::Result<WellSpec> {
        WellSpec::new(self.depth, self.width, self.mass)
    }
}

#[derive(Args)]
struct OutArgs {
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

enum Failure {
    Usage(String),
    Verification,
    /// The reader closed stdout early, e.g. `| head`.
    ClosedPipe,
}

impl From<sevenlevel::Error> for Failure {
    fn from(e: sevenlevel::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure::ClosedPipe;
        }
        Failure::Usage(format!("i/o error: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        if e.io_error_kind() == Some(io::ErrorKind::BrokenPipe) {
            return Failure::ClosedPipe;
        }
        Failure::Usage(format!("json error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) | Err(Failure::ClosedPipe) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::SolveWell { well, out } => solve_well(&well, out.out.as_deref()),
        Command::ThermalSweep {
            well,
            tmin,
            tmax,
            points,
            format,
            out,
        } => thermal_sweep(&well, tmin, tmax, points, format, out.out.as_deref()),
        Command::Parity {
            well,
            string,
            level,
            out,
        } => parity(&well, &string, &level, out.as_deref()),
        Command::GatesDump { well, out } => gates_dump(&well, out.out.as_deref()),
        Command::Verify { well } => verify(&well),
    }
}

/// Writes to `path`, or to stdout when `path` is `None`.
fn emit(path: Option<&Path>, body: impl FnOnce(&mut dyn Write) -> Result<(), Failure>) -> Result<(), Failure> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            body(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            body(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<(), Failure> {
    emit(path, |w| {
        serde_json::to_writer_pretty(&mut *w, value)?;
        writeln!(w)?;
        Ok(())
    })
}

#[derive(Serialize)]
struct StateRow {
    n: usize,
    #[serde(rename = "E")]
    energy: f64,
    parity: &'static str,
    k: f64,
    kappa: f64,
}

#[derive(Serialize)]
struct WellDump {
    states: Vec<StateRow>,
    dipole: Vec<Vec<f64>>,
}

fn solve_well(args: &WellArgs, out: Option<&Path>) -> Result<(), Failure> {
    let states = solve_bound_states(&args.spec()?)?;
    let dump = WellDump {
        states: states
            .iter()
            .map(|s| StateRow {
                n: s.n,
                energy: s.energy,
                parity: s.parity.as_str(),
                k: s.k,
                kappa: s.kappa,
            })
            .collect(),
        dipole: dipole_matrix(&states).rows().to_vec(),
    };
    write_json(out, &dump)
}

#[derive(Serialize)]
struct SweepRow {
    #[serde(rename = "T")]
    temperature: f64,
    #[serde(rename = "I_AB")]
    i_ab: f64,
    #[serde(rename = "I_AC")]
    i_ac: f64,
    #[serde(rename = "I_BC")]
    i_bc: f64,
    #[serde(rename = "I_AB_given_C")]
    i_ab_given_c: f64,
    #[serde(rename = "I_AC_given_B")]
    i_ac_given_b: f64,
    #[serde(rename = "I_BC_given_A")]
    i_bc_given_a: f64,
}

fn thermal_sweep(
    args: &WellArgs,
    tmin: f64,
    tmax: f64,
    points: usize,
    format: Format,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let grid = linear_grid(tmin, tmax, points)?;
    let states = solve_bound_states(&args.spec()?)?;
    if states.len() < 7 {
        return Err(Failure::Usage(format!(
            "the three-qubit encoding needs 7 bound states, this well has {}",
            states.len()
        )));
    }
    let energies: Vec<f64> = states.iter().take(7).map(|s| s.energy).collect();
    let records = information_sweep(&energies, &grid)?;
    if let Some(t) = continuum_warning(&energies, &grid)? {
        eprintln!(
            "warning: from T = {t} a zero-energy continuum level would hold more than {}% of the population; the bound-state-only model is unreliable there",
            CONTINUUM_WARN_POPULATION * 100.0
        );
    }
    match format {
        Format::Csv => emit(out, |w| Ok(write_csv(&records, w)?)),
        Format::Json => {
            let rows: Vec<SweepRow> = records
                .iter()
                .map(|r| SweepRow {
                    temperature: r.temperature,
                    i_ab: r.info.i_ab,
                    i_ac: r.info.i_ac,
                    i_bc: r.info.i_bc,
                    i_ab_given_c: r.info.i_ab_given_c,
                    i_ac_given_b: r.info.i_ac_given_b,
                    i_bc_given_a: r.info.i_bc_given_a,
                })
                .collect();
            write_json(out, &rows)
        }
    }
}

#[derive(Serialize)]
struct ParityDump {
    string: String,
    level: String,
    outcome: u8,
    global_phase: f64,
    oracle_queries: usize,
    amplitudes: Vec<[f64; 2]>,
}

fn parity(args: &WellArgs, string: &str, level: &str, out: Option<&Path>) -> Result<(), Failure> {
    let s: BitString6 = string.parse()?;
    let level: Level = level.parse()?;
    let states = solve_bound_states(&args.spec()?)?;
    if states.len() < 7 {
        return Err(Failure::Usage(format!(
            "the qudit needs 7 bound states, this well has {}",
            states.len()
        )));
    }
    let run = run_parity_algorithm(&s, level, &dipole_matrix(&states[..7]))?;
    let amplitudes: Vec<[f64; 2]> = run.final_state.amplitudes().iter().map(|c| [c.re, c.im]).collect();

    println!("string: {s}");
    println!("level: {level}");
    println!("outcome: {}", run.outcome);
    println!("global_phase: {:+}", run.global_phase);
    println!("oracle_queries: {}", run.oracle_queries);
    println!("amplitudes:");
    for (i, [re, im]) in amplitudes.iter().enumerate() {
        println!("  |{}>: {re:+.12} {im:+.12}i", i + 1);
    }

    if let Some(path) = out {
        let dump = ParityDump {
            string: s.to_string(),
            level: level.to_string(),
            outcome: run.outcome,
            global_phase: run.global_phase,
            oracle_queries: run.oracle_queries,
            amplitudes,
        };
        write_json(Some(path), &dump)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct ScheduleRow {
    n: usize,
    m: usize,
    theta: f64,
    duration: f64,
}

#[derive(Serialize)]
struct GateDump {
    name: String,
    matrix: Vec<[f64; 2]>,
    schedule: Vec<ScheduleRow>,
    global_phase: f64,
}

fn gates_dump(args: &WellArgs, out: Option<&Path>) -> Result<(), Failure> {
    let states = solve_bound_states(&args.spec()?)?;
    if states.len() < 7 {
        return Err(Failure::Usage(format!(
            "pulse durations need 7 bound states, this well has {}",
            states.len()
        )));
    }
    let dipole = dipole_matrix(&states[..7]);
    let mut dumps = Vec::new();
    for gate in gate_library() {
        let mut schedule = Vec::new();
        if let Some(sched) = &gate.schedule {
            let durations = sched.durations(&dipole, DEFAULT_FIELD_AMPLITUDE)?;
            for (p, duration) in sched.pulses.iter().zip(durations) {
                schedule.push(ScheduleRow {
                    n: p.lower(),
                    m: p.upper(),
                    theta: p.theta(),
                    duration,
                });
            }
        }
        dumps.push(GateDump {
            name: gate.name.clone(),
            matrix: gate.matrix.entries().iter().map(|c| [c.re, c.im]).collect(),
            schedule,
            global_phase: gate.global_phase,
        });
    }
    write_json(out, &dumps)
}

fn verify(args: &WellArgs) -> Result<(), Failure> {
    let report = run_suite(&args.spec()?)?;
    for check in &report.checks {
        let tag = if check.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {}: {}", check.name, check.detail);
    }
    println!("{} passed, {} failed", report.passed(), report.failed());
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
