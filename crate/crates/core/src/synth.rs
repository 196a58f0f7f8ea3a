//! Logical Clifford synthesis: from a code and the desired action on its
//! logical Paulis to verified physical circuits.
//!
//! Spec file format:
//!
//! ```text
//! op P1
//! mapX 1 XYIIIZ
//! policy centralize
//! ```
//!
//! Logicals without a `mapX` or `mapZ` line are left unchanged. Under
//! `policy normalize` every generator needs a `mapS <j> <label>` line giving
//! its image.

use std::fmt::Write as _;

use crate::circuit::{Circuit, Gate};
use crate::codes::StabilizerCode;
use crate::decompose::{decompose, factors_to_circuit, ElementaryFactor};
use crate::error::{Error, Result};
use crate::gf2::{BinMatrix, BinVector, SymplecticMatrix};
use crate::par::{self, Execution};
use crate::pauli::PauliOperator;
use crate::sympsolve::{find_symplectic, SymplecticSystem, DEFAULT_CAP};
use crate::verify::{conjugate, verify_solution, ConjugationReport};

/// What happens to the stabilizer generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Policy {
    /// Every generator is fixed.
    Centralize,
    /// Generator `j` maps to entry `j`.
    Normalize(Vec<PauliOperator>),
}

/// The desired action of a logical Clifford operator. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordSpec {
    pub name: String,
    pub images_x: Vec<(usize, PauliOperator)>,
    pub images_z: Vec<(usize, PauliOperator)>,
    pub policy: Policy,
}

impl CliffordSpec {
    #[must_use]
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            images_x: Vec::new(),
            images_z: Vec::new(),
            policy: Policy::Centralize,
        }
    }

    #[must_use]
    pub fn map_x(mut self, i: usize, image: PauliOperator) -> Self {
        self.images_x.push((i, image));
        self
    }

    #[must_use]
    pub fn map_z(mut self, i: usize, image: PauliOperator) -> Self {
        self.images_z.push((i, image));
        self
    }

    #[must_use]
    pub fn with_policy(mut self, policy: Policy) -> Self {
        self.policy = policy;
        self
    }

    /// `(name, input, expected image)` for every logical X, logical Z and
    /// generator of the code, in that order.
    pub fn expected_images(
        &self,
        code: &StabilizerCode,
    ) -> Result<Vec<(String, PauliOperator, PauliOperator)>> {
        let n = code.num_logical();
        let m = code.num_qubits();
        let mut tx: Vec<PauliOperator> = code.logical_x().to_vec();
        let mut tz: Vec<PauliOperator> = code.logical_z().to_vec();
        for (images, slot, kind) in [
            (&self.images_x, &mut tx, "X"),
            (&self.images_z, &mut tz, "Z"),
        ] {
            let mut seen = vec![false; n];
            for (i, p) in images {
                if *i >= n {
                    return Err(Error::InvalidSpec(format!(
                        "logical {kind}{} does not exist",
                        i + 1
                    )));
                }
                if std::mem::replace(&mut seen[*i], true) {
                    return Err(Error::InvalidSpec(format!(
                        "logical {kind}{} mapped twice",
                        i + 1
                    )));
                }
                if p.num_qubits() != m || !p.is_hermitian() {
                    return Err(Error::InvalidSpec(format!(
                        "image {p} of {kind}{} is not a Hermitian {m}-qubit Pauli",
                        i + 1
                    )));
                }
                slot[*i] = p.clone();
            }
        }
        let ts: Vec<PauliOperator> = match &self.policy {
            Policy::Centralize => code.stabilizers().to_vec(),
            Policy::Normalize(images) => {
                if images.len() != code.num_stabilizers() {
                    return Err(Error::InvalidSpec(format!(
                        "normalize policy lists {} generator images, code has {}",
                        images.len(),
                        code.num_stabilizers()
                    )));
                }
                if let Some(p) = images
                    .iter()
                    .find(|p| p.num_qubits() != m || !p.is_hermitian())
                {
                    return Err(Error::InvalidSpec(format!(
                        "generator image {p} is not a Hermitian {m}-qubit Pauli"
                    )));
                }
                images.clone()
            }
        };
        let mut out = Vec::with_capacity(2 * n + ts.len());
        for (i, (input, t)) in code.logical_x().iter().zip(tx).enumerate() {
            out.push((format!("X{}", i + 1), input.clone(), t));
        }
        for (i, (input, t)) in code.logical_z().iter().zip(tz).enumerate() {
            out.push((format!("Z{}", i + 1), input.clone(), t));
        }
        for (j, t) in ts.into_iter().enumerate() {
            out.push((format!("S{}", j + 1), code.stabilizers()[j].clone(), t));
        }
        Ok(out)
    }

    /// Parses the spec file format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut spec = Self::new("");
        let mut policy: Option<&str> = None;
        let mut stab_images: Vec<Option<PauliOperator>> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let err = |message: String| Error::Parse {
                line: idx + 1,
                message,
            };
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let index = |t: &str| {
                t.parse::<usize>()
                    .ok()
                    .filter(|&i| i >= 1)
                    .map(|i| i - 1)
                    .ok_or_else(|| err(format!("bad index {t:?}")))
            };
            let label = |t: &str| PauliOperator::from_label(t).map_err(|e| err(e.to_string()));
            match tokens.as_slice() {
                ["op", name] => spec.name = (*name).to_string(),
                ["mapX", i, l] => spec.images_x.push((index(i)?, label(l)?)),
                ["mapZ", i, l] => spec.images_z.push((index(i)?, label(l)?)),
                ["mapS", j, l] => {
                    let j = index(j)?;
                    if stab_images.len() <= j {
                        stab_images.resize(j + 1, None);
                    }
                    if stab_images[j].replace(label(l)?).is_some() {
                        return Err(err(format!("generator {} mapped twice", j + 1)));
                    }
                }
                ["policy", p @ ("centralize" | "normalize")] => policy = Some(p),
                _ => return Err(err(format!("unrecognized line {line:?}"))),
            }
        }
        match policy {
            Some("normalize") => {
                let images = stab_images
                    .into_iter()
                    .enumerate()
                    .map(|(j, p)| {
                        p.ok_or_else(|| Error::InvalidSpec(format!("mapS {} is missing", j + 1)))
                    })
                    .collect::<Result<Vec<_>>>()?;
                spec.policy = Policy::Normalize(images);
            }
            _ if !stab_images.is_empty() => {
                return Err(Error::InvalidSpec(
                    "mapS lines need policy normalize".into(),
                ));
            }
            _ => {}
        }
        Ok(spec)
    }

    #[must_use]
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if !self.name.is_empty() {
            let _ = writeln!(s, "op {}", self.name);
        }
        for (i, p) in &self.images_x {
            let _ = writeln!(s, "mapX {} {p}", i + 1);
        }
        for (i, p) in &self.images_z {
            let _ = writeln!(s, "mapZ {} {p}", i + 1);
        }
        match &self.policy {
            Policy::Centralize => s.push_str("policy centralize\n"),
            Policy::Normalize(images) => {
                s.push_str("policy normalize\n");
                for (j, p) in images.iter().enumerate() {
                    let _ = writeln!(s, "mapS {} {p}", j + 1);
                }
            }
        }
        s
    }
}

/// Symplectic basis `u = [X_1..X_n, S_1..S_k]`, `v = [Z_1..Z_n, W_1..W_k]`
/// where the `W_j` complete the generators to symplectic pairs.
fn code_basis(code: &StabilizerCode) -> Result<BinMatrix> {
    let m = code.num_qubits();
    let n = code.num_logical();
    let mut seed = Vec::with_capacity(2 * n + code.num_stabilizers());
    for i in 0..n {
        seed.push(code.logical_x()[i].symplectic());
        seed.push(code.logical_z()[i].symplectic());
    }
    seed.extend(code.stabilizers().iter().map(PauliOperator::symplectic));
    let pairs = crate::gf2::symplectic_gram_schmidt(&seed)?;
    let rows = pairs
        .iter()
        .map(|p| p.0.clone())
        .chain(pairs.iter().map(|p| p.1.clone()))
        .collect();
    BinMatrix::from_rows(2 * m, rows)
}

/// The linear system whose solutions are exactly the symplectic matrices
/// realizing `spec` on `code`: logicals and generators are constrained, the
/// completing partners of the generators are free.
pub fn build_system(code: &StabilizerCode, spec: &CliffordSpec) -> Result<SymplecticSystem> {
    let m = code.num_qubits();
    let n = code.num_logical();
    let images = spec.expected_images(code)?;
    let basis = code_basis(code)?;
    let mut targets = vec![None; 2 * m];
    for i in 0..n {
        targets[i] = Some(images[i].2.symplectic());
        targets[m + i] = Some(images[n + i].2.symplectic());
    }
    for j in 0..code.num_stabilizers() {
        targets[n + j] = Some(images[2 * n + j].2.symplectic());
    }
    SymplecticSystem::with_basis(basis, targets).map_err(|e| match e {
        Error::Infeasible(msg) => Error::InvalidSpec(format!("images are inconsistent: {msg}")),
        other => other,
    })
}

/// Whether to keep every solution or only the shallowest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    All,
    MinDepth,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SynthesisOptions {
    pub mode: Mode,
    pub execution: Execution,
    /// Largest solution count materialized in memory.
    pub cap: u128,
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        Self {
            mode: Mode::All,
            execution: Execution::default(),
            cap: DEFAULT_CAP,
        }
    }
}

/// A verified physical circuit for one symplectic solution.
#[derive(Clone, Debug)]
pub struct SynthesisResult {
    /// Position of the solution in the enumeration order.
    pub index: u128,
    pub symplectic: SymplecticMatrix,
    pub factors: Vec<ElementaryFactor>,
    /// Sign-corrected circuit; any Pauli correction comes first.
    pub circuit: Circuit,
    /// The Pauli applied before the factor circuit to fix signs.
    pub correction: PauliOperator,
    pub depth: usize,
    pub report: ConjugationReport,
}

impl SynthesisResult {
    fn rank_key(&self) -> (usize, usize, String) {
        (self.depth, self.circuit.len(), self.circuit.body_text())
    }
}

/// Prepends the Pauli correction that makes every image phase match.
///
/// `raw` must already induce the required symplectic map. The correction
/// `E(c)` is the lexicographically smallest `c` with `<c, input> = 1`
/// exactly for the rows whose sign is wrong.
pub fn fix_signs(
    code: &StabilizerCode,
    spec: &CliffordSpec,
    raw: &Circuit,
) -> Result<(Circuit, PauliOperator)> {
    let m = code.num_qubits();
    let images = spec.expected_images(code)?;
    let mut rows = Vec::with_capacity(images.len());
    let mut rhs = Vec::with_capacity(images.len());
    for (name, input, expected) in &images {
        let actual = conjugate(raw, input);
        if actual.symplectic() != expected.symplectic() {
            return Err(Error::Verification(format!(
                "{name}: circuit maps {input} to {actual}, not to {expected} up to sign"
            )));
        }
        let diff = (actual.kappa() + 4 - expected.kappa()) % 4;
        if diff % 2 == 1 {
            return Err(Error::Verification(format!(
                "{name}: phase differs by a factor of i"
            )));
        }
        rows.push(input.symplectic().omega());
        rhs.push(diff == 2);
    }
    let c = BinMatrix::from_rows(2 * m, rows)?
        .solve_affine(&BinVector::from_bits(&rhs))?
        .ok_or_else(|| Error::Verification("no Pauli fixes the signs".into()))?
        .lex_min();
    let correction = PauliOperator::from_symplectic(&c);
    let mut gates = Vec::new();
    for q in 0..m {
        match (c.get(q), c.get(m + q)) {
            (true, false) => gates.push(Gate::X(q)),
            (true, true) => gates.push(Gate::Y(q)),
            (false, true) => gates.push(Gate::Z(q)),
            (false, false) => {}
        }
    }
    gates.extend(raw.gates().iter().cloned());
    Ok((Circuit::from_gates(m, gates)?, correction))
}

/// Decomposes, lowers to gates, fixes signs and verifies one solution.
pub fn synthesize_one(
    code: &StabilizerCode,
    spec: &CliffordSpec,
    symplectic: SymplecticMatrix,
    index: u128,
) -> Result<SynthesisResult> {
    let m = code.num_qubits();
    let factors = decompose(&symplectic)?;
    let raw = factors_to_circuit(&factors, m)?;
    let (circuit, correction) = fix_signs(code, spec, &raw)?;
    let report = verify_solution(code, spec, &circuit)?;
    if !report.passed() {
        return Err(Error::Verification(format!("solution {index}:\n{report}")));
    }
    Ok(SynthesisResult {
        index,
        symplectic,
        factors,
        depth: circuit.depth(),
        circuit,
        correction,
        report,
    })
}

/// Enumerates every symplectic solution for `spec` and turns each into a
/// verified circuit. In `MinDepth` mode only the best circuit is returned,
/// ranked by depth, then gate count, then serialized text.
pub fn synthesize(
    code: &StabilizerCode,
    spec: &CliffordSpec,
    opts: &SynthesisOptions,
) -> Result<Vec<SynthesisResult>> {
    let space = build_system(code, spec)?.solutions()?;
    let count = space.count();
    let run = |start: u128, len: usize| {
        par::try_map_range(opts.execution, len, |i| {
            let l = start + i as u128;
            synthesize_one(code, spec, space.get(l), l)
        })
    };
    match opts.mode {
        Mode::All => {
            if count > opts.cap {
                return Err(Error::TooManySolutions {
                    count,
                    cap: opts.cap,
                });
            }
            run(0, count as usize)
        }
        Mode::MinDepth => {
            let chunk = opts.cap.max(1);
            let mut best: Option<SynthesisResult> = None;
            let mut start = 0;
            while start < count {
                let len = (count - start).min(chunk) as usize;
                for r in run(start, len)? {
                    if best.as_ref().is_none_or(|b| r.rank_key() < b.rank_key()) {
                        best = Some(r);
                    }
                }
                start += len as u128;
            }
            Ok(best.into_iter().collect())
        }
    }
}

/// Turns a solution that only normalizes the stabilizer group into one that
/// fixes every generator, without changing any logical image.
///
/// With `S' = S F_n` the generator images, `K` is found with `K S' = S` and
/// `H` with `X H = X`, `S H = K S`, `Z H = Z`; the result is `H F_n`.
pub fn normalizer_to_centralizer(
    code: &StabilizerCode,
    f_n: &SymplecticMatrix,
) -> Result<SymplecticMatrix> {
    let m = code.num_qubits();
    if f_n.m() != m {
        return Err(Error::Dimension("matrix and code sizes differ".into()));
    }
    let s = code.stabilizer_matrix();
    let s_img = s.mul(f_n.matrix());
    let s_img_t = s_img.transpose();
    let k = s.rows();
    let mut k_rows = Vec::with_capacity(k);
    for j in 0..k {
        let coeffs = s_img_t
            .solve_affine(s.row(j))?
            .ok_or_else(|| {
                Error::Infeasible("the matrix does not normalize the stabilizer group".into())
            })?
            .lex_min();
        k_rows.push(coeffs);
    }
    let k_mat = BinMatrix::from_rows(k, k_rows)?;
    let ks = k_mat.mul(&s);
    let mut constraints = Vec::new();
    for l in code.logical_x() {
        constraints.push((l.symplectic(), l.symplectic()));
    }
    for j in 0..k {
        constraints.push((s.row(j).clone(), ks.row(j).clone()));
    }
    for l in code.logical_z() {
        constraints.push((l.symplectic(), l.symplectic()));
    }
    let h = find_symplectic(&constraints, m)?.matrix;
    let f_c = h.mul(f_n);
    debug_assert!((0..k).all(|j| f_c.apply(s.row(j)) == *s.row(j)));
    Ok(f_c)
}
