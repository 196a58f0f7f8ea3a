//! Factorization of a symplectic matrix into elementary symplectic
//! transformations, and their translation into gates.
//!
//! Every `F` splits as `A_Q1 * Omega * T_R1 * G_k * T_R2 * A_Q2`, with
//! identity factors dropped. Because matrices act on the right, the factor
//! order is also the time order of the resulting circuit.

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::gf2::{BinMatrix, BinVector, SymplecticMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementaryFactor {
    /// `[[0, I], [I, 0]]`, realized by `H` on every qubit.
    Omega,
    /// `[[Q, 0], [0, Q^-T]]` for invertible `Q`, realized by CNOTs and a
    /// qubit permutation.
    AQ(BinMatrix),
    /// `[[I, R], [0, I]]` for symmetric `R`, realized by `P` and `CZ`.
    TR(BinMatrix),
    /// `[[L, U], [U, L]]` with `U` the first `k` coordinates and `L` the
    /// rest, realized by `H` on the first `k` qubits.
    GK(usize),
    /// `[[I, 0], [R, I]]`, realized by an `H`-conjugated `TR` circuit.
    OmegaTROmega(BinMatrix),
}

impl ElementaryFactor {
    /// The `2m x 2m` matrix of the factor.
    pub fn expand(&self, m: usize) -> Result<SymplecticMatrix> {
        let id = BinMatrix::identity(m);
        let zero = BinMatrix::zeros(m, m);
        let mat = match self {
            Self::Omega => BinMatrix::omega(m),
            Self::AQ(q) => {
                check_square(q, m)?;
                let inv_t = q.invert()?.transpose();
                BinMatrix::from_blocks(q, &zero, &zero, &inv_t)?
            }
            Self::TR(r) => {
                check_symmetric(r, m)?;
                BinMatrix::from_blocks(&id, r, &zero, &id)?
            }
            Self::OmegaTROmega(r) => {
                check_symmetric(r, m)?;
                BinMatrix::from_blocks(&id, &zero, r, &id)?
            }
            Self::GK(k) => {
                if *k > m {
                    return Err(Error::Dimension(format!("G_k with k = {k} > m = {m}")));
                }
                let mut u = BinMatrix::zeros(m, m);
                let mut l = BinMatrix::zeros(m, m);
                for i in 0..m {
                    if i < *k {
                        u.set(i, i, true);
                    } else {
                        l.set(i, i, true);
                    }
                }
                BinMatrix::from_blocks(&l, &u, &u, &l)?
            }
        };
        SymplecticMatrix::new(mat)
    }

    /// Gates realizing the factor, in time order.
    pub fn to_gates(&self, m: usize) -> Result<Vec<Gate>> {
        Ok(match self {
            Self::Omega => (0..m).map(Gate::H).collect(),
            Self::GK(k) => (0..*k.min(&m)).map(Gate::H).collect(),
            Self::TR(r) => {
                check_symmetric(r, m)?;
                tr_gates(r)
            }
            Self::OmegaTROmega(r) => {
                check_symmetric(r, m)?;
                let support: Vec<usize> = (0..m).filter(|&i| !r.row(i).is_zero()).collect();
                let mut gates: Vec<Gate> = support.iter().map(|&q| Gate::H(q)).collect();
                gates.extend(tr_gates(r));
                gates.extend(support.iter().map(|&q| Gate::H(q)));
                gates
            }
            Self::AQ(q) => {
                check_square(q, m)?;
                aq_gates(q)?
            }
        })
    }
}

fn check_square(q: &BinMatrix, m: usize) -> Result<()> {
    if q.rows() != m || q.cols() != m {
        return Err(Error::Dimension(format!("expected an {m} x {m} block")));
    }
    Ok(())
}

fn check_symmetric(r: &BinMatrix, m: usize) -> Result<()> {
    check_square(r, m)?;
    if r != &r.transpose() {
        return Err(Error::Dimension("T_R needs a symmetric R".into()));
    }
    Ok(())
}

/// `P` on each diagonal one, then `CZ` on each upper off-diagonal one.
fn tr_gates(r: &BinMatrix) -> Vec<Gate> {
    let m = r.rows();
    let mut gates: Vec<Gate> = (0..m).filter(|&i| r.get(i, i)).map(Gate::P).collect();
    for i in 0..m {
        for j in i + 1..m {
            if r.get(i, j) {
                gates.push(Gate::cz(i, j));
            }
        }
    }
    gates
}

/// Circuit for `e_v -> e_{vQ}` from `P Q = L U`: the permutation first,
/// then the CNOTs of `L` by ascending control, then those of `U` by
/// descending control.
fn aq_gates(q: &BinMatrix) -> Result<Vec<Gate>> {
    let m = q.rows();
    let lu = q.lu_decompose()?;
    let mut gates = Vec::new();
    let mut images = vec![0; m];
    for (j, &p) in lu.perm.iter().enumerate() {
        images[p] = j;
    }
    if images.iter().enumerate().any(|(i, &p)| i != p) {
        gates.push(Gate::Permute(images));
    }
    for c in 0..m {
        for t in 0..c {
            if lu.l.get(c, t) {
                gates.push(Gate::cnot(c, t));
            }
        }
    }
    for c in (0..m).rev() {
        for t in c + 1..m {
            if lu.u.get(c, t) {
                gates.push(Gate::cnot(c, t));
            }
        }
    }
    Ok(gates)
}

/// Splits `f` into elementary factors whose product, left to right, is `f`.
pub fn decompose(f: &SymplecticMatrix) -> Result<Vec<ElementaryFactor>> {
    let m = f.m();
    let n = 2 * m;
    let (a, b, _, _) = f.blocks();

    // M1 * A in reduced echelon form.
    let aug = BinMatrix::from_rows(
        2 * m,
        (0..m)
            .map(|i| a.row(i).concat(&BinVector::unit(m, i)))
            .collect(),
    )?;
    let (reduced, _) = aug.rref();
    let ra = reduced.block(0, 0, m, m);
    let m1 = reduced.block(0, m, m, m);
    let (_, pivots) = ra.rref();
    let k = pivots.len();

    // T stacks the k echelon rows with unit rows at non-pivot columns, so
    // N = T^-1 brings M1 * A to [[I_k, 0], [0, 0]].
    let mut t_rows: Vec<BinVector> = (0..k).map(|i| ra.row(i).clone()).collect();
    t_rows.extend(
        (0..m)
            .filter(|c| !pivots.contains(c))
            .map(|c| BinVector::unit(m, c)),
    );
    let t = BinMatrix::from_rows(m, t_rows)?;
    let n_mat = t.invert()?;

    let b1 = m1.mul(&b).mul(&t.transpose());
    let b_low = b1.block(k, k, m - k, m - k);
    let e_top = b1.block(0, k, k, m - k);
    let r_k = b1.block(0, 0, k, k);
    let m2 = BinMatrix::block_diag(&BinMatrix::identity(k), &b_low.invert()?);
    let m3 = {
        let mut rows = Vec::with_capacity(m);
        for i in 0..k {
            rows.push(BinVector::unit(k, i).concat(e_top.row(i)));
        }
        for i in 0..m - k {
            rows.push(BinVector::zeros(k).concat(&BinVector::unit(m - k, i)));
        }
        BinMatrix::from_rows(m, rows)?
    };
    let mm = m3.mul(&m2).mul(&m1);
    let q1 = mm.invert()?;
    let q2 = t;
    let r2 = BinMatrix::block_diag(&r_k, &BinMatrix::zeros(m - k, m - k));

    let a_m = ElementaryFactor::AQ(mm).expand(m)?;
    let a_n = ElementaryFactor::AQ(n_mat).expand(m)?;
    let t_r2 = ElementaryFactor::TR(r2.clone()).expand(m)?;
    let g_k = ElementaryFactor::GK(k).expand(m)?;
    let rest = a_m
        .mul(f)
        .mul(&a_n)
        .mul(&t_r2)
        .mul(&g_k)
        .mul(&SymplecticMatrix::omega(m));
    let (ra2, rb2, r1, rd2) = rest.blocks();
    let id = BinMatrix::identity(m);
    if ra2 != id || !rb2.is_zero() || rd2 != id {
        return Err(Error::Verification(format!(
            "reduction did not reach lower-triangular form for a {n} x {n} matrix"
        )));
    }

    let mut factors = Vec::new();
    if q1 != id {
        factors.push(ElementaryFactor::AQ(q1));
    }
    if k == m {
        if !r1.is_zero() {
            factors.push(ElementaryFactor::OmegaTROmega(r1));
        }
    } else {
        factors.push(ElementaryFactor::Omega);
        if !r1.is_zero() {
            factors.push(ElementaryFactor::TR(r1));
        }
        if k > 0 {
            factors.push(ElementaryFactor::GK(k));
        }
    }
    if !r2.is_zero() {
        factors.push(ElementaryFactor::TR(r2));
    }
    if q2 != id {
        factors.push(ElementaryFactor::AQ(q2));
    }
    Ok(factors)
}

/// The product of the expanded factors, left to right.
pub fn expand_all(factors: &[ElementaryFactor], m: usize) -> Result<SymplecticMatrix> {
    let mut f = SymplecticMatrix::identity(m);
    for factor in factors {
        f = f.mul(&factor.expand(m)?);
    }
    Ok(f)
}

/// Concatenates the gates of every factor into one circuit.
pub fn factors_to_circuit(factors: &[ElementaryFactor], m: usize) -> Result<Circuit> {
    let mut gates = Vec::new();
    for f in factors {
        gates.extend(f.to_gates(m)?);
    }
    Circuit::from_gates(m, gates)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_no_factors() {
        assert!(decompose(&SymplecticMatrix::identity(4))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn omega_roundtrip() {
        let f = SymplecticMatrix::omega(3);
        let factors = decompose(&f).unwrap();
        assert_eq!(expand_all(&factors, 3).unwrap(), f);
    }

    #[test]
    fn gk_extremes() {
        assert_eq!(
            ElementaryFactor::GK(0).expand(3).unwrap(),
            SymplecticMatrix::identity(3)
        );
        assert_eq!(
            ElementaryFactor::GK(3).expand(3).unwrap(),
            SymplecticMatrix::omega(3)
        );
    }

    #[test]
    fn tr_gate_order() {
        let r = BinMatrix::from_strs(&["000000", "010001", "000000", "000000", "000000", "010001"])
            .unwrap();
        let gates = ElementaryFactor::TR(r).to_gates(6).unwrap();
        assert_eq!(gates, vec![Gate::P(1), Gate::P(5), Gate::cz(1, 5)]);
    }
}
