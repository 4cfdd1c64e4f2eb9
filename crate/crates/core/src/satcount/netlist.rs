//! Boolean circuits over AND, OR, XOR and NOT.
//!
//! Text format: `inputs <n>`, then one gate per line as `<id> = AND|OR|XOR
//! <a> <b>` or `<id> = NOT <a>`, then `output <id>`. Operands are inputs
//! `x1..xn` or ids defined on earlier lines. `#` starts a comment.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Signal {
    /// 0-based input index.
    Input(usize),
    /// Index into the gate list.
    Gate(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoolOp {
    And(Signal, Signal),
    Or(Signal, Signal),
    Xor(Signal, Signal),
    Not(Signal),
}

impl BoolOp {
    pub fn name(&self) -> &'static str {
        match self {
            BoolOp::And(..) => "AND",
            BoolOp::Or(..) => "OR",
            BoolOp::Xor(..) => "XOR",
            BoolOp::Not(..) => "NOT",
        }
    }

    pub fn is_binary(&self) -> bool {
        !matches!(self, BoolOp::Not(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoolCircuit {
    n_inputs: usize,
    names: Vec<String>,
    gates: Vec<BoolOp>,
    output: Signal,
}

fn is_input_name(s: &str) -> bool {
    s.len() > 1 && s.starts_with('x') && s[1..].bytes().all(|b| b.is_ascii_digit())
}

impl BoolCircuit {
    /// Builds a circuit from gates that only reference inputs and earlier gates.
    pub fn new(n_inputs: usize, gates: Vec<BoolOp>, output: Signal) -> Result<Self> {
        let check = |s: Signal, limit: usize| match s {
            Signal::Input(i) if i < n_inputs => Ok(()),
            Signal::Gate(g) if g < limit => Ok(()),
            _ => Err(Error::Precondition(format!("operand {s:?} is undefined at this point"))),
        };
        for (i, g) in gates.iter().enumerate() {
            match *g {
                BoolOp::And(a, b) | BoolOp::Or(a, b) | BoolOp::Xor(a, b) => {
                    check(a, i)?;
                    check(b, i)?;
                }
                BoolOp::Not(a) => check(a, i)?,
            }
        }
        check(output, gates.len())?;
        let names = (1..=gates.len()).map(|i| format!("g{i}")).collect();
        Ok(BoolCircuit { n_inputs, names, gates, output })
    }

    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn gates(&self) -> &[BoolOp] {
        &self.gates
    }

    pub fn output(&self) -> Signal {
        self.output
    }

    pub fn binary_gate_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_binary()).count()
    }

    pub fn eval(&self, x: &[bool]) -> Result<bool> {
        if x.len() != self.n_inputs {
            return Err(Error::InputShape { expected: self.n_inputs, got: x.len() });
        }
        let mut vals = Vec::with_capacity(self.gates.len());
        let get = |vals: &Vec<bool>, s: Signal| match s {
            Signal::Input(i) => x[i],
            Signal::Gate(g) => vals[g],
        };
        for g in &self.gates {
            let v = match *g {
                BoolOp::And(a, b) => get(&vals, a) & get(&vals, b),
                BoolOp::Or(a, b) => get(&vals, a) | get(&vals, b),
                BoolOp::Xor(a, b) => get(&vals, a) ^ get(&vals, b),
                BoolOp::Not(a) => !get(&vals, a),
            };
            vals.push(v);
        }
        Ok(get(&vals, self.output))
    }

    /// Number of satisfying assignments by enumerating the truth table.
    pub fn count_by_enumeration(&self) -> Result<u64> {
        if self.n_inputs > 30 {
            return Err(Error::ResourceBudget(format!("truth table over {} inputs", self.n_inputs)));
        }
        let mut count = 0;
        let mut x = vec![false; self.n_inputs];
        for m in 0u64..1 << self.n_inputs {
            for (i, b) in x.iter_mut().enumerate() {
                *b = m >> i & 1 == 1;
            }
            count += self.eval(&x)? as u64;
        }
        Ok(count)
    }

    fn signal_name(&self, s: Signal) -> String {
        match s {
            Signal::Input(i) => format!("x{}", i + 1),
            Signal::Gate(g) => self.names[g].clone(),
        }
    }

    pub fn parse(text: &str) -> Result<BoolCircuit> {
        let mut n_inputs: Option<usize> = None;
        let mut ids: HashMap<String, usize> = HashMap::new();
        let mut names = Vec::new();
        let mut gates = Vec::new();
        let mut output: Option<Signal> = None;
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            let Some(n) = n_inputs else {
                match words.as_slice() {
                    ["inputs", n] => {
                        n_inputs =
                            Some(n.parse().map_err(|_| Error::parse(lineno, format!("bad input count {n:?}")))?);
                        continue;
                    }
                    _ => return Err(Error::parse(lineno, "expected header `inputs <n>`")),
                }
            };
            if output.is_some() {
                return Err(Error::parse(lineno, "nothing may follow the `output` line"));
            }
            let operand = |w: &str| -> Result<Signal> {
                if is_input_name(w) {
                    let i: usize = w[1..].parse().map_err(|_| Error::parse(lineno, format!("bad input {w:?}")))?;
                    if i == 0 || i > n {
                        return Err(Error::parse(lineno, format!("input {w} out of range x1..x{n}")));
                    }
                    return Ok(Signal::Input(i - 1));
                }
                ids.get(w).map(|&g| Signal::Gate(g)).ok_or_else(|| {
                    Error::parse(lineno, format!("operand `{w}` is not an input or an earlier gate"))
                })
            };
            match words.as_slice() {
                ["output", id] => output = Some(operand(id)?),
                [id, "=", op, args @ ..] => {
                    if is_input_name(id) {
                        return Err(Error::parse(lineno, format!("gate id `{id}` clashes with an input name")));
                    }
                    if ids.contains_key(*id) {
                        return Err(Error::parse(lineno, format!("gate id `{id}` defined twice")));
                    }
                    let g = match (*op, args) {
                        ("AND", [a, b]) => BoolOp::And(operand(a)?, operand(b)?),
                        ("OR", [a, b]) => BoolOp::Or(operand(a)?, operand(b)?),
                        ("XOR", [a, b]) => BoolOp::Xor(operand(a)?, operand(b)?),
                        ("NOT", [a]) => BoolOp::Not(operand(a)?),
                        _ => {
                            return Err(Error::parse(lineno, format!("bad gate `{op}` with {} operands", args.len())))
                        }
                    };
                    ids.insert(id.to_string(), gates.len());
                    names.push(id.to_string());
                    gates.push(g);
                }
                _ => return Err(Error::parse(lineno, "expected `<id> = OP <a> [<b>]` or `output <id>`")),
            }
        }
        let n_inputs = n_inputs.ok_or_else(|| Error::parse(0, "missing header `inputs <n>`"))?;
        let output = output.ok_or_else(|| Error::parse(0, "missing `output <id>` line"))?;
        Ok(BoolCircuit { n_inputs, names, gates, output })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("inputs {}\n", self.n_inputs);
        for (name, g) in self.names.iter().zip(&self.gates) {
            let args = match *g {
                BoolOp::And(a, b) | BoolOp::Or(a, b) | BoolOp::Xor(a, b) => {
                    format!("{} {}", self.signal_name(a), self.signal_name(b))
                }
                BoolOp::Not(a) => self.signal_name(a),
            };
            s += &format!("{name} = {} {args}\n", g.name());
        }
        s += &format!("output {}\n", self.signal_name(self.output));
        s
    }
}

impl FromStr for BoolCircuit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoolCircuit::parse(s)
    }
}

impl fmt::Display for BoolCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Random netlist; the output is the last gate.
pub fn random_netlist(n_inputs: usize, n_gates: usize, seed: u64) -> Result<BoolCircuit> {
    if n_inputs == 0 || n_gates == 0 {
        return Err(Error::Precondition("need at least one input and one gate".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gates = Vec::with_capacity(n_gates);
    for i in 0..n_gates {
        let pick = |rng: &mut ChaCha8Rng| {
            let k = rng.gen_range(0..n_inputs + i);
            if k < n_inputs {
                Signal::Input(k)
            } else {
                Signal::Gate(k - n_inputs)
            }
        };
        let (a, b) = (pick(&mut rng), pick(&mut rng));
        gates.push(match rng.gen_range(0..4) {
            0 => BoolOp::And(a, b),
            1 => BoolOp::Or(a, b),
            2 => BoolOp::Xor(a, b),
            _ => BoolOp::Not(a),
        });
    }
    BoolCircuit::new(n_inputs, gates, Signal::Gate(n_gates - 1))
}
