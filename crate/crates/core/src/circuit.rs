//! Clifford circuits over the gate set `H, P, CZ, CNOT, X, Y, Z, PERMUTE`.
//!
//! Qubits are 0-based in memory and 1-based in text. Gates are listed in
//! time order, so a list `g1, g2, ..., gn` is the operator `gn ... g2 g1`.
//!
//! Text format:
//!
//! ```text
//! qubits 6
//! # comment
//! P 2
//! CZ 2 6
//! P 6
//! ```
//!
//! `PERMUTE` takes the 1-based image of every qubit: `PERMUTE 6 2 3 4 5 1`
//! moves the state of qubit 1 to qubit 6 and back.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    P(usize),
    X(usize),
    Y(usize),
    Z(usize),
    Cz(usize, usize),
    Cnot {
        control: usize,
        target: usize,
    },
    /// Qubit `i` moves to qubit `images[i]`.
    Permute(Vec<usize>),
}

impl Gate {
    /// Qubits the gate touches. For `Permute` these are the qubits that move.
    #[must_use]
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::H(q) | Gate::P(q) | Gate::X(q) | Gate::Y(q) | Gate::Z(q) => vec![*q],
            Gate::Cz(a, b) => vec![*a, *b],
            Gate::Cnot { control, target } => vec![*control, *target],
            Gate::Permute(images) => images
                .iter()
                .enumerate()
                .filter(|(i, &p)| *i != p)
                .map(|(i, _)| i)
                .collect(),
        }
    }

    /// A `CZ` with operands sorted ascending.
    #[must_use]
    pub fn cz(a: usize, b: usize) -> Self {
        Gate::Cz(a.min(b), a.max(b))
    }

    #[must_use]
    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::Cnot { control, target }
    }

    fn max_qubit(&self) -> usize {
        match self {
            Gate::Permute(images) => images.len().saturating_sub(1),
            g => g.qubits().into_iter().max().unwrap_or(0),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::H(q) => write!(f, "H {}", q + 1),
            Gate::P(q) => write!(f, "P {}", q + 1),
            Gate::X(q) => write!(f, "X {}", q + 1),
            Gate::Y(q) => write!(f, "Y {}", q + 1),
            Gate::Z(q) => write!(f, "Z {}", q + 1),
            Gate::Cz(a, b) => write!(f, "CZ {} {}", a.min(b) + 1, a.max(b) + 1),
            Gate::Cnot { control, target } => write!(f, "CNOT {} {}", control + 1, target + 1),
            Gate::Permute(images) => {
                f.write_str("PERMUTE")?;
                for p in images {
                    write!(f, " {}", p + 1)?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    #[must_use]
    pub fn new(num_qubits: usize) -> Self {
        Self {
            num_qubits,
            gates: Vec::new(),
        }
    }

    /// Builds a circuit after checking every qubit index.
    pub fn from_gates(num_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Self::new(num_qubits);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        validate_gate(&gate, self.num_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, other: &Circuit) -> Result<()> {
        if other.num_qubits != self.num_qubits {
            return Err(Error::Dimension(
                "circuits act on different qubit counts".into(),
            ));
        }
        self.gates.extend(other.gates.iter().cloned());
        Ok(())
    }

    #[must_use]
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    #[must_use]
    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.gates.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Depth under greedy as-soon-as-possible layering. A gate lands one
    /// stage after the latest stage of any qubit it touches. `PERMUTE` is a
    /// relabeling: it costs no stage and carries each qubit's stage along.
    #[must_use]
    pub fn depth(&self) -> usize {
        let mut stage = vec![0usize; self.num_qubits];
        let mut depth = 0;
        for g in &self.gates {
            if let Gate::Permute(images) = g {
                let mut next = vec![0; self.num_qubits];
                for (i, &p) in images.iter().enumerate() {
                    next[p] = stage[i];
                }
                stage = next;
                continue;
            }
            let qs = g.qubits();
            let s = qs.iter().map(|&q| stage[q]).max().unwrap_or(0) + 1;
            for q in qs {
                stage[q] = s;
            }
            depth = depth.max(s);
        }
        depth
    }

    /// The gate lines without the header, e.g. `"P 2\nCZ 2 6\nP 6\n"`.
    #[must_use]
    pub fn body_text(&self) -> String {
        let mut s = String::new();
        for g in &self.gates {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }

    /// The full file text: `qubits <m>` header followed by the body.
    #[must_use]
    pub fn serialize(&self) -> String {
        format!("qubits {}\n{}", self.num_qubits, self.body_text())
    }

    /// Parses the file format. The `qubits` header is required and must
    /// precede every gate line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut circuit: Option<Circuit> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let mut tokens = line.split_whitespace();
            let op = tokens.next().expect("line is nonempty");
            let args = tokens
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| err(format!("operand {t:?} is not a positive integer")))
                })
                .collect::<Result<Vec<_>>>()?;
            if op == "qubits" {
                if circuit.is_some() {
                    return Err(err("duplicate qubits header".into()));
                }
                match args.as_slice() {
                    [m] => circuit = Some(Circuit::new(*m)),
                    _ => return Err(err("qubits header takes one count".into())),
                }
                continue;
            }
            let Some(c) = circuit.as_mut() else {
                return Err(err("gate before the qubits header".into()));
            };
            if args.contains(&0) {
                return Err(err("qubit indices are 1-based".into()));
            }
            let q: Vec<usize> = args.iter().map(|a| a - 1).collect();
            let gate = match (op, q.as_slice()) {
                ("H", [a]) => Gate::H(*a),
                ("P", [a]) => Gate::P(*a),
                ("X", [a]) => Gate::X(*a),
                ("Y", [a]) => Gate::Y(*a),
                ("Z", [a]) => Gate::Z(*a),
                ("CZ", [a, b]) => Gate::cz(*a, *b),
                ("CNOT", [a, b]) => Gate::cnot(*a, *b),
                ("PERMUTE", images) => Gate::Permute(images.to_vec()),
                _ => {
                    return Err(err(format!(
                        "unknown gate {op:?} with {} operands",
                        args.len()
                    )))
                }
            };
            c.push(gate).map_err(|e| err(e.to_string()))?;
        }
        circuit.ok_or(Error::Parse {
            line: 0,
            message: "missing qubits header".into(),
        })
    }
}

fn validate_gate(gate: &Gate, m: usize) -> Result<()> {
    if let Gate::Permute(images) = gate {
        let mut seen = vec![false; m];
        if images.len() != m {
            return Err(Error::Dimension(format!(
                "PERMUTE lists {} images for {m} qubits",
                images.len()
            )));
        }
        for &p in images {
            if p >= m || seen[p] {
                return Err(Error::Dimension(
                    "PERMUTE images are not a permutation".into(),
                ));
            }
            seen[p] = true;
        }
        return Ok(());
    }
    if gate.max_qubit() >= m {
        return Err(Error::Dimension(format!("gate {gate} exceeds {m} qubits")));
    }
    let qs = gate.qubits();
    if qs.len() == 2 && qs[0] == qs[1] {
        return Err(Error::Dimension(format!("gate {gate} repeats a qubit")));
    }
    Ok(())
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}
