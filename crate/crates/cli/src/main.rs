use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use polycirc::circuit::{insert_h_pairs, lower, random_circuit, simplify_hh};
use polycirc::compile::{amplitude, circuit_to_poly, meas_prob_first_qubit};
use polycirc::gap::{gap_from_minimization, gap_monte_carlo, invariance_space, minimized_poly};
use polycirc::oracle::{statevector_amplitude, statevector_prob_first_qubit};
use polycirc::satcount::{count_sat, random_netlist, BoolCircuit};
use polycirc::width::width_report;
use polycirc::{Circuit, Engine, Error, GapOptions, LinMap, Poly};

#[derive(Parser)]
#[command(name = "polycirc", version, about = "Quantum circuits over {H, Z, CZ, CCZ} as cubic polynomials over GF(2)")]
struct Cli {
    /// log2 of the largest admissible operation count for exact engines
    #[arg(long, global = true, default_value_t = 30)]
    budget: u32,
    /// Worker threads (0 = one per core)
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Largest candidate space dimension enumerated by minimization
    #[arg(long, global = true, default_value_t = 20)]
    enum_limit: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Input file; `-` or absent reads stdin
    input: Option<PathBuf>,
}

#[derive(Args)]
struct EngineArg {
    #[arg(long, default_value = "auto", value_parser = parse_engine)]
    engine: Engine,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a circuit into its polynomial
    Compile(Input),
    /// Exact gap of a polynomial
    Gap {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        engine: EngineArg,
    },
    /// Monte Carlo estimate of gap / 2^n
    Estimate {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        #[arg(long)]
        seed: u64,
    },
    /// Amplitude <output|H C' H|input> of a circuit
    Amp {
        #[command(flatten)]
        input: Input,
        /// Input basis state as a bit string, qubit 0 first
        #[arg(long = "input")]
        in_bits: Option<String>,
        /// Output basis state as a bit string, qubit 0 first
        #[arg(long = "output")]
        out_bits: Option<String>,
        /// Also report the statevector simulation
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        engine: EngineArg,
    },
    /// Probability that qubit 0 measures 1
    Prob {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        engine: EngineArg,
    },
    /// Count satisfying assignments of a boolean netlist
    Satcount {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        engine: EngineArg,
    },
    /// Lower and upper bounds on the qubits needed for a polynomial
    Width {
        #[command(flatten)]
        input: Input,
        /// Write the witness circuit here
        #[arg(long)]
        emit_circuit: Option<PathBuf>,
    },
    /// Rewrite a circuit (3terms, simplify, lower) or polynomial (linmap, minimize)
    Transform {
        #[command(flatten)]
        input: Input,
        /// Operation, followed by the matrix file for `linmap`
        #[arg(long, num_args = 1..=2, value_names = ["OP", "MATRIX"], required = true)]
        op: Vec<String>,
    },
    /// Seeded random instances
    Random {
        #[command(subcommand)]
        kind: RandomKind,
    },
}

#[derive(Subcommand)]
enum RandomKind {
    Poly {
        #[arg(long)]
        vars: usize,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long)]
        seed: u64,
    },
    Circuit {
        #[arg(long)]
        qubits: usize,
        #[arg(long)]
        gates: usize,
        #[arg(long)]
        seed: u64,
    },
    Netlist {
        #[arg(long)]
        inputs: usize,
        #[arg(long)]
        gates: usize,
        #[arg(long)]
        seed: u64,
    },
}

fn parse_engine(s: &str) -> Result<Engine, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Res<T> = Result<T, Failure>;

fn read_source(path: Option<&Path>) -> Res<String> {
    match path {
        None => read_stdin(),
        Some(p) if p == Path::new("-") => read_stdin(),
        Some(p) => fs::read_to_string(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
    }
}

fn read_stdin() -> Res<String> {
    let mut s = String::new();
    io::stdin().read_to_string(&mut s).map_err(|e| Failure::Io(format!("stdin: {e}")))?;
    Ok(s)
}

fn parse_bits(s: Option<&str>, n: usize) -> Res<Vec<bool>> {
    let Some(s) = s else { return Ok(vec![false; n]) };
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Failure::Lib(Error::Precondition(format!("bit string {s:?} may only contain 0 and 1")))),
        })
        .collect()
}

fn run(cli: Cli) -> Res<String> {
    let opts = |e: &EngineArg| GapOptions {
        engine: e.engine,
        budget_log2: cli.budget,
        enum_limit: cli.enum_limit,
        ..GapOptions::default()
    };
    let circuit = |i: &Input| -> Res<Circuit> { Ok(Circuit::parse(&read_source(i.input.as_deref())?)?) };
    let poly = |i: &Input| -> Res<Poly> { Ok(Poly::parse(&read_source(i.input.as_deref())?)?) };

    let out = match &cli.command {
        Command::Compile(i) => circuit_to_poly(&circuit(i)?)?.to_report(),
        Command::Gap { input, engine } => format!("gap={}\n", opts(engine).gap(&poly(input)?)?),
        Command::Estimate { input, eps, delta, seed } => {
            let e = gap_monte_carlo(&poly(input)?, *eps, *delta, *seed)?;
            format!("estimate={} samples={}\n", e.normalized_estimate, e.samples)
        }
        Command::Amp { input, in_bits, out_bits, oracle, engine } => {
            let c = circuit(input)?;
            let x = parse_bits(in_bits.as_deref(), c.n_qubits())?;
            let y = parse_bits(out_bits.as_deref(), c.n_qubits())?;
            let a = amplitude(&c, &x, &y, &opts(engine))?;
            let mut s = format!("amp={a} float={}", a.to_f64());
            if *oracle {
                s += &format!(" oracle={}", statevector_amplitude(&c, &x, &y)?);
            }
            s + "\n"
        }
        Command::Prob { input, oracle, engine } => {
            let c = circuit(input)?;
            let p = meas_prob_first_qubit(&c, &opts(engine))?;
            let mut s = format!("prob={p} float={}", p.to_f64());
            if *oracle {
                s += &format!(" oracle={}", statevector_prob_first_qubit(&c)?);
            }
            s + "\n"
        }
        Command::Satcount { input, engine } => {
            let b = BoolCircuit::parse(&read_source(input.input.as_deref())?)?;
            format!("count={}\n", count_sat(&b, &opts(engine))?.count)
        }
        Command::Width { input, emit_circuit } => {
            let r = width_report(&poly(input)?)?;
            if let Some(path) = emit_circuit {
                fs::write(path, r.witness.to_text()).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            }
            r.summary() + "\n"
        }
        Command::Transform { input, op } => transform(input, op, cli.enum_limit, cli.budget)?,
        Command::Random { kind } => match *kind {
            RandomKind::Poly { vars, degree, seed } => {
                if degree > 3 {
                    return Err(Error::DegreeTooHigh { degree, max: 3 }.into());
                }
                Poly::random(vars, degree, seed).to_text()
            }
            RandomKind::Circuit { qubits, gates, seed } => random_circuit(qubits, gates, seed)?.to_text(),
            RandomKind::Netlist { inputs, gates, seed } => random_netlist(inputs, gates, seed)?.to_text(),
        },
    };
    Ok(out)
}

fn transform(input: &Input, op: &[String], enum_limit: usize, budget: u32) -> Res<String> {
    let src = read_source(input.input.as_deref())?;
    let usage = |msg: &str| Failure::Lib(Error::Precondition(msg.to_string()));
    let op_name = op[0].as_str();
    if op_name != "linmap" && op.len() > 1 {
        return Err(usage("only `--op linmap` takes a second argument"));
    }
    Ok(match op_name {
        "3terms" => insert_h_pairs(&Circuit::parse(&src)?)?.to_text(),
        "simplify" => simplify_hh(&Circuit::parse(&src)?).to_text(),
        "lower" => lower(&Circuit::parse(&src)?).to_text(),
        "linmap" => {
            let path = op.get(1).ok_or_else(|| usage("`--op linmap` needs a matrix file"))?;
            let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{path}: {e}")))?;
            let l = LinMap::parse(&text)?;
            Poly::parse(&src)?.apply_linear(&l)?.to_text()
        }
        "minimize" => {
            let f = Poly::parse(&src)?;
            let r = invariance_space(&f, enum_limit)?;
            let mut s = format!(
                "# essential={} invariance_dim={} anti_invariant={}\n",
                r.essential_count, r.invariance_dim, r.anti_invariant_found
            );
            if !r.anti_invariant_found {
                // Check the reduced form against the original before printing it.
                gap_from_minimization(&f, &r, budget)?;
            }
            s += &minimized_poly(&f, &r).to_text();
            s
        }
        other => return Err(usage(&format!("unknown transform `{other}`"))),
    })
}

fn exit_code(e: &Failure) -> u8 {
    match e {
        Failure::Lib(Error::Parse { .. }) => 2,
        Failure::Lib(Error::ResourceBudget(_)) => 3,
        Failure::Lib(Error::Inconclusive(_)) => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if cli.threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    }
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            match &e {
                Failure::Lib(err) => eprintln!("error: {err}"),
                Failure::Io(msg) => eprintln!("error: {msg}"),
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
