//! Checking circuits: exact symbolic conjugation of Paulis, a dense
//! state-vector simulator for small qubit counts, and reports comparing a
//! circuit against an operator specification.

use std::fmt;

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate};
use crate::codes::StabilizerCode;
use crate::error::{Error, Result};
use crate::gf2::{BinMatrix, BinVector};
use crate::pauli::PauliOperator;
use crate::synth::CliffordSpec;

/// Largest qubit count the dense simulator accepts.
pub const DENSE_LIMIT: usize = 12;

/// Tolerance for dense comparisons.
pub const DENSE_TOLERANCE: f64 = 1e-10;

/// `g p g^dagger` for a single gate, with exact phase.
#[must_use]
pub fn conjugate_gate(gate: &Gate, p: &PauliOperator) -> PauliOperator {
    let mut x = p.x_bits().clone();
    let mut z = p.z_bits().clone();
    let mut flip = false;
    match gate {
        Gate::H(q) => {
            let (a, b) = (x.get(*q), z.get(*q));
            flip = a & b;
            x.set(*q, b);
            z.set(*q, a);
        }
        Gate::P(q) => {
            let (a, b) = (x.get(*q), z.get(*q));
            flip = a & b;
            z.set(*q, a ^ b);
        }
        Gate::X(q) => flip = z.get(*q),
        Gate::Z(q) => flip = x.get(*q),
        Gate::Y(q) => flip = x.get(*q) ^ z.get(*q),
        Gate::Cnot { control, target } => {
            let (xc, zc, xt, zt) = (
                x.get(*control),
                z.get(*control),
                x.get(*target),
                z.get(*target),
            );
            flip = xc & zt & !(xt ^ zc);
            x.set(*target, xt ^ xc);
            z.set(*control, zc ^ zt);
        }
        Gate::Cz(a, b) => {
            let (xa, za, xb, zb) = (x.get(*a), z.get(*a), x.get(*b), z.get(*b));
            flip = xa & xb & (za ^ zb);
            z.set(*a, za ^ xb);
            z.set(*b, zb ^ xa);
        }
        Gate::Permute(images) => {
            let m = images.len();
            let mut nx = BinVector::zeros(m);
            let mut nz = BinVector::zeros(m);
            for (i, &t) in images.iter().enumerate() {
                nx.set(t, x.get(i));
                nz.set(t, z.get(i));
            }
            x = nx;
            z = nz;
        }
    }
    PauliOperator::new(p.kappa() + if flip { 2 } else { 0 }, x, z)
}

/// `U p U^dagger` for the whole circuit.
#[must_use]
pub fn conjugate(circuit: &Circuit, p: &PauliOperator) -> PauliOperator {
    circuit
        .gates()
        .iter()
        .fold(p.clone(), |acc, g| conjugate_gate(g, &acc))
}

/// The symplectic matrix induced by the circuit together with the sign of
/// each row image: row `i` is the image of `X_i`, row `m + j` that of `Z_j`.
#[must_use]
pub fn induced_symplectic_signed(circuit: &Circuit) -> (BinMatrix, Vec<bool>) {
    let m = circuit.num_qubits();
    let mut rows = Vec::with_capacity(2 * m);
    let mut signs = Vec::with_capacity(2 * m);
    let gens = (0..m)
        .map(|i| PauliOperator::x_on(m, i))
        .chain((0..m).map(|j| PauliOperator::z_on(m, j)));
    for g in gens {
        let img = conjugate(circuit, &g);
        signs.push(img.kappa() == 2);
        rows.push(img.symplectic());
    }
    (BinMatrix::from_rows(2 * m, rows).expect("uniform"), signs)
}

#[must_use]
pub fn induced_symplectic(circuit: &Circuit) -> BinMatrix {
    induced_symplectic_signed(circuit).0
}

/// Whether two circuits act identically on every Pauli (equal up to a
/// global phase).
#[must_use]
pub fn same_action(a: &Circuit, b: &Circuit) -> bool {
    a.num_qubits() == b.num_qubits() && induced_symplectic_signed(a) == induced_symplectic_signed(b)
}

/// A dense complex square matrix in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    #[must_use]
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[must_use]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.dim + c] = v;
    }

    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    #[must_use]
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// Largest entrywise distance.
    #[must_use]
    pub fn max_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn check_dense(m: usize) -> Result<()> {
    if m > DENSE_LIMIT {
        return Err(Error::SizeLimit(format!(
            "dense simulation is limited to {DENSE_LIMIT} qubits, got {m}"
        )));
    }
    Ok(())
}

/// Bit of qubit `q` in a basis index; qubit 0 is the most significant.
fn bit(index: usize, q: usize, m: usize) -> bool {
    (index >> (m - 1 - q)) & 1 == 1
}

fn mask(q: usize, m: usize) -> usize {
    1 << (m - 1 - q)
}

/// Applies one gate to a state vector of `2^m` amplitudes.
pub fn apply_gate(state: &mut [Complex64], gate: &Gate, m: usize) {
    let i_unit = Complex64::new(0.0, 1.0);
    let n = state.len();
    match gate {
        Gate::H(q) => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            let mk = mask(*q, m);
            for idx in 0..n {
                if idx & mk == 0 {
                    let (a, b) = (state[idx], state[idx | mk]);
                    state[idx] = (a + b) * s;
                    state[idx | mk] = (a - b) * s;
                }
            }
        }
        Gate::P(q) => {
            for (idx, amp) in state.iter_mut().enumerate() {
                if bit(idx, *q, m) {
                    *amp *= i_unit;
                }
            }
        }
        Gate::Z(q) => {
            for (idx, amp) in state.iter_mut().enumerate() {
                if bit(idx, *q, m) {
                    *amp = -*amp;
                }
            }
        }
        Gate::X(q) | Gate::Y(q) => {
            let mk = mask(*q, m);
            for idx in 0..n {
                if idx & mk == 0 {
                    let (a0, a1) = (state[idx], state[idx | mk]);
                    if matches!(gate, Gate::X(_)) {
                        state[idx] = a1;
                        state[idx | mk] = a0;
                    } else {
                        // Y|0> = i|1>, Y|1> = -i|0>.
                        state[idx] = -i_unit * a1;
                        state[idx | mk] = i_unit * a0;
                    }
                }
            }
        }
        Gate::Cz(a, b) => {
            for (idx, amp) in state.iter_mut().enumerate() {
                if bit(idx, *a, m) && bit(idx, *b, m) {
                    *amp = -*amp;
                }
            }
        }
        Gate::Cnot { control, target } => {
            let mk = mask(*target, m);
            for idx in 0..n {
                if bit(idx, *control, m) && idx & mk == 0 {
                    state.swap(idx, idx | mk);
                }
            }
        }
        Gate::Permute(images) => {
            let old = state.to_vec();
            for (idx, amp) in old.into_iter().enumerate() {
                let mut j = 0;
                for (i, &t) in images.iter().enumerate() {
                    if bit(idx, i, m) {
                        j |= mask(t, m);
                    }
                }
                state[j] = amp;
            }
        }
    }
}

/// Runs a circuit on a state vector.
pub fn apply_circuit(circuit: &Circuit, state: &mut [Complex64]) {
    for g in circuit.gates() {
        apply_gate(state, g, circuit.num_qubits());
    }
}

/// The full `2^m x 2^m` unitary of a circuit.
pub fn dense_unitary(circuit: &Circuit) -> Result<DenseMatrix> {
    let m = circuit.num_qubits();
    check_dense(m)?;
    let n = 1usize << m;
    let mut u = DenseMatrix::zeros(n);
    for col in 0..n {
        let mut state = vec![Complex64::new(0.0, 0.0); n];
        state[col] = Complex64::new(1.0, 0.0);
        apply_circuit(circuit, &mut state);
        for (row, amp) in state.into_iter().enumerate() {
            u.set(row, col, amp);
        }
    }
    Ok(u)
}

/// Applies `i^kappa E(a, b)` to a state vector.
pub fn apply_pauli(p: &PauliOperator, state: &[Complex64]) -> Vec<Complex64> {
    let m = p.num_qubits();
    let mut xm = 0usize;
    let mut zm = 0usize;
    for q in 0..m {
        if p.x_bits().get(q) {
            xm |= mask(q, m);
        }
        if p.z_bits().get(q) {
            zm |= mask(q, m);
        }
    }
    let phase = Complex64::new(0.0, 1.0).powu(u32::from(p.d_phase()));
    let mut out = vec![Complex64::new(0.0, 0.0); state.len()];
    for (v, &amp) in state.iter().enumerate() {
        // X^a Z^b |v> = (-1)^(b.v) |v + a>.
        let sign = if (zm & v).count_ones() % 2 == 1 {
            -1.0
        } else {
            1.0
        };
        out[v ^ xm] = amp * phase * sign;
    }
    out
}

/// The dense matrix of a Pauli operator.
pub fn pauli_matrix(p: &PauliOperator) -> Result<DenseMatrix> {
    let m = p.num_qubits();
    check_dense(m)?;
    let n = 1usize << m;
    let mut out = DenseMatrix::zeros(n);
    for col in 0..n {
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[col] = Complex64::new(1.0, 0.0);
        for (row, amp) in apply_pauli(p, &e).into_iter().enumerate() {
            out.set(row, col, amp);
        }
    }
    Ok(out)
}

/// Checks `U p U^dagger` against the symbolic image for each Pauli, densely.
/// Returns the largest deviation seen.
pub fn dense_conjugation_error(circuit: &Circuit, paulis: &[PauliOperator]) -> Result<f64> {
    let u = dense_unitary(circuit)?;
    let ud = u.adjoint();
    let mut worst: f64 = 0.0;
    for p in paulis {
        let lhs = u.mul(&pauli_matrix(p)?).mul(&ud);
        let rhs = pauli_matrix(&conjugate(circuit, p))?;
        worst = worst.max(lhs.max_diff(&rhs));
    }
    Ok(worst)
}

/// The CSS code state `|psi_x> = |C'|^-1/2 sum_{c in C'} |c + x G^X>`,
/// where `C'` is spanned by the X-type generators.
pub fn prepare_css_state(code: &StabilizerCode, x: &BinVector) -> Result<Vec<Complex64>> {
    let m = code.num_qubits();
    check_dense(m)?;
    let (hx, gx) = code.css_x_data()?;
    if x.len() != gx.rows() {
        return Err(Error::Dimension(format!(
            "logical input has {} bits, code encodes {}",
            x.len(),
            gx.rows()
        )));
    }
    let shift = x.mul_matrix(&gx);
    let r = hx.rows();
    let count = 1usize << r;
    let amp = Complex64::new(1.0 / (count as f64).sqrt(), 0.0);
    let mut state = vec![Complex64::new(0.0, 0.0); 1 << m];
    for sel in 0..count {
        let mut c = shift.clone();
        for t in 0..r {
            if (sel >> t) & 1 == 1 {
                c.xor_assign(hx.row(t));
            }
        }
        let idx = (0..m)
            .filter(|&q| c.get(q))
            .fold(0, |acc, q| acc | mask(q, m));
        state[idx] += amp;
    }
    Ok(state)
}

/// One line of a [`ConjugationReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportRow {
    pub name: String,
    pub input: PauliOperator,
    pub expected: PauliOperator,
    pub actual: PauliOperator,
}

impl ReportRow {
    #[must_use]
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

/// Expected versus computed images of every generator and logical.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ConjugationReport {
    pub rows: Vec<ReportRow>,
}

impl ConjugationReport {
    #[must_use]
    pub fn passed(&self) -> bool {
        self.rows.iter().all(ReportRow::passed)
    }

    #[must_use]
    pub fn failures(&self) -> Vec<&ReportRow> {
        self.rows.iter().filter(|r| !r.passed()).collect()
    }
}

impl fmt::Display for ConjugationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(
                f,
                "{:<6} {} -> {} expected {} [{}]",
                r.name,
                r.input,
                r.actual,
                r.expected,
                if r.passed() { "ok" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}

/// Conjugates each generator and logical of `code` through `circuit` and
/// compares with the images the spec demands, phases included.
pub fn verify_solution(
    code: &StabilizerCode,
    spec: &CliffordSpec,
    circuit: &Circuit,
) -> Result<ConjugationReport> {
    if circuit.num_qubits() != code.num_qubits() {
        return Err(Error::Dimension(
            "circuit and code qubit counts differ".into(),
        ));
    }
    let rows = spec
        .expected_images(code)?
        .into_iter()
        .map(|(name, input, expected)| {
            let actual = conjugate(circuit, &input);
            ReportRow {
                name,
                input,
                expected,
                actual,
            }
        })
        .collect();
    Ok(ConjugationReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        PauliOperator::from_label(s).unwrap()
    }

    fn one(g: Gate, m: usize) -> Circuit {
        Circuit::from_gates(m, vec![g]).unwrap()
    }

    #[test]
    fn single_qubit_rules() {
        assert_eq!(conjugate(&one(Gate::H(0), 1), &p("Z")), p("X"));
        assert_eq!(conjugate(&one(Gate::H(0), 1), &p("Y")), p("-Y"));
        assert_eq!(conjugate(&one(Gate::P(0), 1), &p("X")), p("Y"));
        assert_eq!(conjugate(&one(Gate::P(0), 1), &p("Y")), p("-X"));
    }

    #[test]
    fn cnot_sign_example() {
        assert_eq!(conjugate(&one(Gate::cnot(0, 1), 2), &p("XZ")), p("-YY"));
    }

    #[test]
    fn dense_matches_symbolic_for_each_gate() {
        let gates = [
            Gate::H(0),
            Gate::P(1),
            Gate::X(0),
            Gate::Y(1),
            Gate::Z(0),
            Gate::cz(0, 1),
            Gate::cnot(1, 0),
            Gate::Permute(vec![1, 0]),
        ];
        let all: Vec<PauliOperator> = ["XI", "ZI", "YI", "IX", "IZ", "IY", "XY", "ZZ", "YX"]
            .iter()
            .map(|s| p(s))
            .collect();
        for g in gates {
            let err = dense_conjugation_error(&one(g, 2), &all).unwrap();
            assert!(err < DENSE_TOLERANCE);
        }
    }
}
