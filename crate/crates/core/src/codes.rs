//! Stabilizer codes, CSS construction and the code file format.
//!
//! ```text
//! qubits 6
//! stabilizer XXXXXX
//! stabilizer ZZZZZZ
//! logicalX 1 XXIIII
//! logicalZ 1 IZIIIZ
//! ```

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::gf2::{BinMatrix, BinVector};
use crate::pauli::PauliOperator;

/// A stabilizer code on `m` qubits with `k` independent commuting
/// generators and `m - k` logical qubits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerCode {
    m: usize,
    stabilizers: Vec<PauliOperator>,
    logical_x: Vec<PauliOperator>,
    logical_z: Vec<PauliOperator>,
}

impl StabilizerCode {
    /// Validates and builds a code. Generators and logicals must be
    /// Hermitian; generators must commute and be independent; logicals must
    /// commute with every generator and pair as `<X_i, Z_j> = delta_ij`.
    pub fn new(
        stabilizers: Vec<PauliOperator>,
        logical_x: Vec<PauliOperator>,
        logical_z: Vec<PauliOperator>,
    ) -> Result<Self> {
        let m = stabilizers
            .first()
            .or(logical_x.first())
            .map(PauliOperator::num_qubits)
            .ok_or_else(|| Error::InvalidCode("code has no operators".into()))?;
        let all = stabilizers.iter().chain(&logical_x).chain(&logical_z);
        if all.clone().any(|p| p.num_qubits() != m) {
            return Err(Error::InvalidCode(
                "operators act on different qubit counts".into(),
            ));
        }
        if let Some(p) = all.clone().find(|p| !p.is_hermitian()) {
            return Err(Error::InvalidCode(format!("{p} is not Hermitian")));
        }
        let k = stabilizers.len();
        if k > m {
            return Err(Error::InvalidCode("more generators than qubits".into()));
        }
        if logical_x.len() != m - k || logical_z.len() != m - k {
            return Err(Error::InvalidCode(format!(
                "expected {} logical X and Z operators, got {} and {}",
                m - k,
                logical_x.len(),
                logical_z.len()
            )));
        }
        for (i, s) in stabilizers.iter().enumerate() {
            for t in &stabilizers[i + 1..] {
                if !s.commutes(t) {
                    return Err(Error::InvalidCode(format!(
                        "generators {s} and {t} anticommute"
                    )));
                }
            }
        }
        let gamma =
            BinMatrix::from_rows(2 * m, stabilizers.iter().map(|s| s.symplectic()).collect())?;
        if gamma.rank() != k {
            return Err(Error::InvalidCode("generators are not independent".into()));
        }
        for l in logical_x.iter().chain(&logical_z) {
            if let Some(s) = stabilizers.iter().find(|s| !s.commutes(l)) {
                return Err(Error::InvalidCode(format!(
                    "logical {l} anticommutes with {s}"
                )));
            }
        }
        for i in 0..m - k {
            for j in 0..m - k {
                let xz = !logical_x[i].commutes(&logical_z[j]);
                if xz != (i == j) {
                    return Err(Error::InvalidCode(format!(
                        "logical X{} and Z{} have the wrong commutation",
                        i + 1,
                        j + 1
                    )));
                }
                if i < j
                    && (!logical_x[i].commutes(&logical_x[j])
                        || !logical_z[i].commutes(&logical_z[j]))
                {
                    return Err(Error::InvalidCode(format!(
                        "logicals {} and {} of the same type anticommute",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self {
            m,
            stabilizers,
            logical_x,
            logical_z,
        })
    }

    #[must_use]
    pub fn num_qubits(&self) -> usize {
        self.m
    }

    /// Number of stabilizer generators.
    #[must_use]
    pub fn num_stabilizers(&self) -> usize {
        self.stabilizers.len()
    }

    #[must_use]
    pub fn num_logical(&self) -> usize {
        self.m - self.stabilizers.len()
    }

    #[must_use]
    pub fn stabilizers(&self) -> &[PauliOperator] {
        &self.stabilizers
    }

    #[must_use]
    pub fn logical_x(&self) -> &[PauliOperator] {
        &self.logical_x
    }

    #[must_use]
    pub fn logical_z(&self) -> &[PauliOperator] {
        &self.logical_z
    }

    /// Number of symplectic solutions for any logical operator that fixes
    /// the stabilizer generators: `2^(k(k+1)/2)`.
    #[must_use]
    pub fn solutions_per_operator(&self) -> u128 {
        let k = self.num_stabilizers() as u32;
        1u128 << (k * (k + 1) / 2)
    }

    /// The `k x 2m` matrix of generator phase-space vectors.
    #[must_use]
    pub fn stabilizer_matrix(&self) -> BinMatrix {
        BinMatrix::from_rows(
            2 * self.m,
            self.stabilizers.iter().map(|s| s.symplectic()).collect(),
        )
        .expect("uniform length")
    }

    /// Parses the code file format. Generators must carry a `+1` phase.
    pub fn parse(text: &str) -> Result<Self> {
        let mut m: Option<usize> = None;
        let mut stabs = Vec::new();
        let mut lx: Vec<Option<PauliOperator>> = Vec::new();
        let mut lz: Vec<Option<PauliOperator>> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.as_slice() {
                ["qubits", n] => {
                    if m.is_some() {
                        return Err(err("duplicate qubits header".into()));
                    }
                    m = Some(
                        n.parse()
                            .map_err(|_| err(format!("bad qubit count {n:?}")))?,
                    );
                }
                ["stabilizer", label] => {
                    let n = m.ok_or_else(|| err("stabilizer before qubits header".into()))?;
                    let p =
                        PauliOperator::from_label_m(label, n).map_err(|e| err(e.to_string()))?;
                    if p.kappa() != 0 {
                        return Err(err(format!("generator {label} must have phase +1")));
                    }
                    stabs.push(p);
                }
                [kind @ ("logicalX" | "logicalZ"), i, label] => {
                    let n = m.ok_or_else(|| err("logical before qubits header".into()))?;
                    let i: usize = i
                        .parse()
                        .ok()
                        .filter(|&i| i >= 1)
                        .ok_or_else(|| err(format!("bad logical index {i:?}")))?;
                    let p =
                        PauliOperator::from_label_m(label, n).map_err(|e| err(e.to_string()))?;
                    let slot = if *kind == "logicalX" {
                        &mut lx
                    } else {
                        &mut lz
                    };
                    if slot.len() < i {
                        slot.resize(i, None);
                    }
                    if slot[i - 1].replace(p).is_some() {
                        return Err(err(format!("duplicate {kind} {i}")));
                    }
                }
                _ => return Err(err(format!("unrecognized line {line:?}"))),
            }
        }
        if m.is_none() {
            return Err(Error::Parse {
                line: 0,
                message: "missing qubits header".into(),
            });
        }
        let collect = |v: Vec<Option<PauliOperator>>, kind: &str| {
            v.into_iter()
                .enumerate()
                .map(|(i, p)| {
                    p.ok_or_else(|| Error::InvalidCode(format!("{kind} {} is missing", i + 1)))
                })
                .collect::<Result<Vec<_>>>()
        };
        Self::new(stabs, collect(lx, "logicalX")?, collect(lz, "logicalZ")?)
    }

    #[must_use]
    pub fn to_text(&self) -> String {
        let mut s = format!("qubits {}\n", self.m);
        for p in &self.stabilizers {
            let _ = writeln!(s, "stabilizer {p}");
        }
        for (i, p) in self.logical_x.iter().enumerate() {
            let _ = writeln!(s, "logicalX {} {p}", i + 1);
        }
        for (i, p) in self.logical_z.iter().enumerate() {
            let _ = writeln!(s, "logicalZ {} {p}", i + 1);
        }
        s
    }

    /// For a CSS code, returns the X-type generator rows (spanning the dual
    /// code) and the X parts of the logical X operators.
    pub fn css_x_data(&self) -> Result<(BinMatrix, BinMatrix)> {
        let m = self.m;
        let mut hx = Vec::new();
        for s in &self.stabilizers {
            match (s.x_bits().is_zero(), s.z_bits().is_zero()) {
                (false, true) => hx.push(s.x_bits().clone()),
                (true, false) => {}
                _ => {
                    return Err(Error::InvalidCode(format!(
                        "{s} is not of pure X or Z type"
                    )))
                }
            }
        }
        let mut gx = Vec::new();
        for l in &self.logical_x {
            if !l.z_bits().is_zero() || l.kappa() != 0 {
                return Err(Error::InvalidCode(format!(
                    "logical {l} is not a bare X operator"
                )));
            }
            gx.push(l.x_bits().clone());
        }
        Ok((BinMatrix::from_rows(m, hx)?, BinMatrix::from_rows(m, gx)?))
    }
}

pub fn load_code(path: impl AsRef<Path>) -> Result<StabilizerCode> {
    let text = std::fs::read_to_string(path.as_ref()).map_err(|e| Error::Parse {
        line: 0,
        message: format!("{}: {e}", path.as_ref().display()),
    })?;
    StabilizerCode::parse(&text)
}

pub fn save_code(path: impl AsRef<Path>, code: &StabilizerCode) -> Result<()> {
    std::fs::write(path.as_ref(), code.to_text()).map_err(|e| Error::Parse {
        line: 0,
        message: format!("{}: {e}", path.as_ref().display()),
    })
}

/// Classical data describing a CSS code.
#[derive(Clone, Debug)]
pub enum CssSpec {
    /// A code `C` containing its dual, given by the dual's generator `hc`.
    SelfOrthogonal {
        hc: BinMatrix,
        gx: Option<BinMatrix>,
        gz: Option<BinMatrix>,
    },
    /// Nested codes `C2 < C1` given by generator matrices.
    Nested {
        c1: BinMatrix,
        c2: BinMatrix,
        gx: Option<BinMatrix>,
        gz: Option<BinMatrix>,
    },
}

/// Rows of `candidates` that extend `base` to a larger independent set,
/// taken greedily in order.
fn extend_basis(base: &BinMatrix, candidates: &BinMatrix) -> BinMatrix {
    let mut span = base.clone();
    let mut picked = BinMatrix::zeros(0, base.cols());
    let mut rank = span.rank();
    for r in candidates.row_vec() {
        let mut trial = span.clone();
        trial.push_row(r.clone());
        let tr = trial.rank();
        if tr > rank {
            span = trial;
            rank = tr;
            picked.push_row(r.clone());
        }
    }
    picked
}

fn nullspace(mat: &BinMatrix) -> Result<BinMatrix> {
    let zeros = BinVector::zeros(mat.rows());
    let space = mat
        .solve_affine(&zeros)?
        .expect("homogeneous systems are consistent");
    Ok(space.basis().clone())
}

/// Builds a CSS stabilizer code. Missing logical generators are completed:
/// `gx` greedily from a basis of the larger code, `gz` via
/// [`derive_logical_z`].
pub fn css_build(spec: &CssSpec) -> Result<StabilizerCode> {
    let (hx, hz, gx, gz) = match spec {
        CssSpec::SelfOrthogonal { hc, gx, gz } => {
            if !hc.mul(&hc.transpose()).is_zero() {
                return Err(Error::InvalidCode(
                    "dual code is not self-orthogonal".into(),
                ));
            }
            (hc.clone(), hc.clone(), gx.clone(), gz.clone())
        }
        CssSpec::Nested { c1, c2, gx, gz } => {
            if c1.cols() != c2.cols() || c1.vstack(c2).rank() != c1.rank() {
                return Err(Error::InvalidCode(
                    "second code is not contained in the first".into(),
                ));
            }
            (c2.clone(), nullspace(c1)?, gx.clone(), gz.clone())
        }
    };
    let m = hx.cols();
    if hx.rank() != hx.rows() || hz.rank() != hz.rows() {
        return Err(Error::InvalidCode(
            "generator rows must be independent".into(),
        ));
    }
    let logical = m
        .checked_sub(hx.rows() + hz.rows())
        .ok_or_else(|| Error::InvalidCode("too many generators".into()))?;
    let gx = match gx {
        Some(g) => g,
        None => extend_basis(&hx, &nullspace(&hz)?),
    };
    if gx.rows() != logical || gx.cols() != m {
        return Err(Error::InvalidCode(format!(
            "expected {logical} logical X rows of length {m}"
        )));
    }
    if !gx.mul(&hz.transpose()).is_zero() || hx.vstack(&gx).rank() != hx.rows() + logical {
        return Err(Error::InvalidCode(
            "logical X rows are not independent code words".into(),
        ));
    }
    let gz = match gz {
        Some(g) => g,
        None => derive_logical_z(&gx, &hx)?,
    };
    if gz.rows() != logical
        || gz.cols() != m
        || gx.mul(&gz.transpose()) != BinMatrix::identity(logical)
        || !gz.mul(&hx.transpose()).is_zero()
    {
        return Err(Error::InvalidCode(
            "logical Z rows do not pair with logical X rows".into(),
        ));
    }
    let zero = BinVector::zeros(m);
    let x_op = |r: &BinVector| PauliOperator::new(0, r.clone(), zero.clone());
    let z_op = |r: &BinVector| PauliOperator::new(0, zero.clone(), r.clone());
    let stabs = hx
        .row_vec()
        .iter()
        .map(x_op)
        .chain(hz.row_vec().iter().map(z_op))
        .collect();
    StabilizerCode::new(
        stabs,
        gx.row_vec().iter().map(x_op).collect(),
        gz.row_vec().iter().map(z_op).collect(),
    )
}

/// Logical Z rows `gz` with `gx * gz^T = I` and `hx * gz^T = 0`; each row is
/// the lexicographically smallest solution.
pub fn derive_logical_z(gx: &BinMatrix, hx: &BinMatrix) -> Result<BinMatrix> {
    let sys = hx.vstack(gx);
    let mut rows = Vec::with_capacity(gx.rows());
    for i in 0..gx.rows() {
        let mut rhs = BinVector::zeros(sys.rows());
        rhs.set(hx.rows() + i, true);
        let z = sys
            .solve_affine(&rhs)?
            .ok_or_else(|| Error::InvalidCode(format!("no logical Z partner for row {}", i + 1)))?
            .lex_min();
        rows.push(z);
    }
    BinMatrix::from_rows(gx.cols(), rows)
}
