//! Pauli operators on `m` qubits in Hermitian (E-form) representation.
//!
//! `E(a, b) = i^(a.b) D(a, b)` with `D(a, b) = X^a1 Z^b1 (x) ... (x) X^am Z^bm`.
//! Every operator is stored as `i^kappa E(a, b)`, which makes the text label
//! a plain tensor product of `I`, `X`, `Y`, `Z` letters.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{symplectic_inner, BinVector};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    kappa: u8,
    x: BinVector,
    z: BinVector,
}

impl PauliOperator {
    /// `i^kappa E(a, b)`.
    ///
    /// # Panics
    /// Panics if `a` and `b` differ in length.
    #[must_use]
    pub fn new(kappa: u8, a: BinVector, b: BinVector) -> Self {
        assert_eq!(a.len(), b.len(), "X and Z parts must have equal length");
        Self {
            kappa: kappa % 4,
            x: a,
            z: b,
        }
    }

    /// `i^kappa D(a, b)`, converted to E-form.
    #[must_use]
    pub fn from_d(kappa: u8, a: BinVector, b: BinVector) -> Self {
        let ab = (a.overlap(&b) % 4) as u8;
        Self::new((kappa + 4 - ab) % 4, a, b)
    }

    #[must_use]
    pub fn identity(m: usize) -> Self {
        Self::new(0, BinVector::zeros(m), BinVector::zeros(m))
    }

    /// The operator `E(x)` for a phase-space vector `x = [a, b]`.
    #[must_use]
    pub fn from_symplectic(x: &BinVector) -> Self {
        let m = x.len() / 2;
        Self::new(0, x.slice(0, m), x.slice(m, m))
    }

    /// Single-qubit `X` on `qubit` (0-based).
    #[must_use]
    pub fn x_on(m: usize, qubit: usize) -> Self {
        Self::new(0, BinVector::unit(m, qubit), BinVector::zeros(m))
    }

    /// Single-qubit `Z` on `qubit` (0-based).
    #[must_use]
    pub fn z_on(m: usize, qubit: usize) -> Self {
        Self::new(0, BinVector::zeros(m), BinVector::unit(m, qubit))
    }

    #[must_use]
    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    #[must_use]
    pub fn kappa(&self) -> u8 {
        self.kappa
    }

    /// The exponent of `i` when the operator is written as `i^k D(a, b)`.
    #[must_use]
    pub fn d_phase(&self) -> u8 {
        ((self.kappa as usize + self.x.overlap(&self.z)) % 4) as u8
    }

    #[must_use]
    pub fn x_bits(&self) -> &BinVector {
        &self.x
    }

    #[must_use]
    pub fn z_bits(&self) -> &BinVector {
        &self.z
    }

    /// The phase-space vector `[a, b]`.
    #[must_use]
    pub fn symplectic(&self) -> BinVector {
        self.x.concat(&self.z)
    }

    /// True when the phase is `+1` or `-1`.
    #[must_use]
    pub fn is_hermitian(&self) -> bool {
        self.kappa.is_multiple_of(2)
    }

    #[must_use]
    pub fn with_kappa(&self, kappa: u8) -> Self {
        Self::new(kappa, self.x.clone(), self.z.clone())
    }

    /// Multiplies the phase by `i^k`.
    #[must_use]
    pub fn times_i(&self, k: u8) -> Self {
        self.with_kappa(self.kappa + k)
    }

    #[must_use]
    pub fn negate(&self) -> Self {
        self.times_i(2)
    }

    /// Operator product `self * other` with exact phase.
    ///
    /// # Panics
    /// Panics on a qubit-count mismatch.
    #[must_use]
    pub fn multiply(&self, other: &Self) -> Self {
        assert_eq!(
            self.num_qubits(),
            other.num_qubits(),
            "qubit count mismatch"
        );
        let a = &self.x;
        let b = &self.z;
        let a2 = &other.x;
        let b2 = &other.z;
        let s = a.xor(a2);
        let t = b.xor(b2);
        // Per qubit: E(a,b)E(a',b') = i^(ab + a'b' + 2ba' - (a^a')(b^b')) E(a^a', b^b').
        let e = a.overlap(b) + a2.overlap(b2) + 2 * b.overlap(a2) + 4 * s.len() - s.overlap(&t);
        let kappa = (self.kappa as usize + other.kappa as usize + e) % 4;
        Self::new(kappa as u8, s, t)
    }

    #[must_use]
    pub fn commutes(&self, other: &Self) -> bool {
        !symplectic_inner(&self.symplectic(), &other.symplectic())
    }

    /// Text label: optional phase prefix (`-`, `+i`, `-i`) followed by one
    /// of `I`, `X`, `Y`, `Z` per qubit. A `+1` phase has no prefix.
    #[must_use]
    pub fn to_label(&self) -> String {
        let mut s = String::from(match self.kappa {
            0 => "",
            1 => "+i",
            2 => "-",
            _ => "-i",
        });
        for q in 0..self.num_qubits() {
            s.push(match (self.x.get(q), self.z.get(q)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (true, true) => 'Y',
                (false, true) => 'Z',
            });
        }
        s
    }

    /// Parses a label such as `XYIIIZ`, `-ZZ` or `+iXI`.
    pub fn from_label(label: &str) -> Result<Self> {
        let (kappa, body) = if let Some(rest) = label.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = label.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = label.strip_prefix('+') {
            (0, rest)
        } else if let Some(rest) = label.strip_prefix('-') {
            (2, rest)
        } else {
            (0, label)
        };
        if body.is_empty() {
            return Err(Error::Parse {
                line: 0,
                message: format!("Pauli label {label:?} has no qubits"),
            });
        }
        let m = body.chars().count();
        let mut x = BinVector::zeros(m);
        let mut z = BinVector::zeros(m);
        for (q, c) in body.chars().enumerate() {
            let (xb, zb) = match c {
                'I' => (false, false),
                'X' => (true, false),
                'Y' => (true, true),
                'Z' => (false, true),
                other => {
                    return Err(Error::Parse {
                        line: 0,
                        message: format!("invalid Pauli letter {other:?} in {label:?}"),
                    })
                }
            };
            x.set(q, xb);
            z.set(q, zb);
        }
        Ok(Self::new(kappa, x, z))
    }

    /// Like [`from_label`](Self::from_label) but also checks the qubit count.
    pub fn from_label_m(label: &str, m: usize) -> Result<Self> {
        let p = Self::from_label(label)?;
        if p.num_qubits() != m {
            return Err(Error::Parse {
                line: 0,
                message: format!(
                    "label {label:?} has {} qubits, expected {m}",
                    p.num_qubits()
                ),
            });
        }
        Ok(p)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_label())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({})", self.to_label())
    }
}
