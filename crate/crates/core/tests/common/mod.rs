//! Independent oracles and fixtures shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use std::path::PathBuf;

use clifford_synth::circuit::{Circuit, Gate};
use clifford_synth::codes::StabilizerCode;
use clifford_synth::gf2::{BinMatrix, BinVector, SymplecticMatrix};
use clifford_synth::pauli::PauliOperator;
use clifford_synth::sympsolve::transvection_matrix;
use clifford_synth::synth::CliffordSpec;
use num_complex::Complex64;
use rand::Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

pub fn code642() -> StabilizerCode {
    StabilizerCode::parse(&read_fixture("css642.code")).unwrap()
}

pub fn code513() -> StabilizerCode {
    StabilizerCode::parse(&read_fixture("five_qubit.code")).unwrap()
}

pub fn spec(name: &str) -> CliffordSpec {
    CliffordSpec::parse(&read_fixture(name)).unwrap()
}

pub fn golden(name: &str) -> Vec<BinMatrix> {
    BinMatrix::parse_many(&read_fixture(&format!("golden/{name}.txt"))).unwrap()
}

pub fn mat(rows: &[&str]) -> BinMatrix {
    BinMatrix::from_strs(rows).unwrap()
}

pub fn vecb(s: &str) -> BinVector {
    BinVector::parse(s).unwrap()
}

pub fn pauli(s: &str) -> PauliOperator {
    PauliOperator::from_label(s).unwrap()
}

pub fn random_vector<R: Rng>(rng: &mut R, len: usize) -> BinVector {
    let bits: Vec<bool> = (0..len).map(|_| rng.gen()).collect();
    BinVector::from_bits(&bits)
}

pub fn random_nonzero<R: Rng>(rng: &mut R, len: usize) -> BinVector {
    loop {
        let v = random_vector(rng, len);
        if !v.is_zero() {
            return v;
        }
    }
}

/// A random element of Sp(2m) as a product of random transvections, which
/// generate the group.
pub fn random_symplectic<R: Rng>(rng: &mut R, m: usize) -> SymplecticMatrix {
    let mut f = SymplecticMatrix::identity(m);
    for _ in 0..(4 * m + 4) {
        let h = random_nonzero(rng, 2 * m);
        f = f.mul(&transvection_matrix(&h));
    }
    f
}

/// `F Omega F^T == Omega`, checked by explicit matrix products.
pub fn is_symplectic_by_product(f: &BinMatrix) -> bool {
    let m = f.rows() / 2;
    let om = BinMatrix::omega(m);
    f.mul(&om).mul(&f.transpose()) == om
}

/// Every symplectic `2m x 2m` matrix, found by filtering all `2^(4m^2)`
/// binary matrices. Feasible for `m <= 2`.
pub fn brute_force_sp(m: usize) -> Vec<BinMatrix> {
    let n = 2 * m;
    let total: u64 = 1 << (n * n);
    let mut out = Vec::new();
    for code in 0..total {
        let rows = (0..n)
            .map(|i| {
                let bits: Vec<bool> = (0..n).map(|j| (code >> (i * n + j)) & 1 == 1).collect();
                BinVector::from_bits(&bits)
            })
            .collect();
        let f = BinMatrix::from_rows(n, rows).unwrap();
        if is_symplectic_by_product(&f) {
            out.push(f);
        }
    }
    out
}

pub fn random_gate<R: Rng>(rng: &mut R, m: usize) -> Gate {
    let q = rng.gen_range(0..m);
    let pick = if m > 1 {
        rng.gen_range(0..8)
    } else {
        rng.gen_range(0..5)
    };
    let mut other = || loop {
        let r = rng.gen_range(0..m);
        if r != q {
            return r;
        }
    };
    match pick {
        0 => Gate::H(q),
        1 => Gate::P(q),
        2 => Gate::X(q),
        3 => Gate::Y(q),
        4 => Gate::Z(q),
        5 => Gate::cz(q, other()),
        6 => Gate::cnot(q, other()),
        _ => {
            let mut images: Vec<usize> = (0..m).collect();
            let t = other();
            images.swap(q, t);
            Gate::Permute(images)
        }
    }
}

pub fn random_circuit<R: Rng>(rng: &mut R, m: usize, len: usize) -> Circuit {
    let gates = (0..len).map(|_| random_gate(rng, m)).collect();
    Circuit::from_gates(m, gates).unwrap()
}

/// Every non-identity Pauli on `m` qubits with phase `+1`.
pub fn all_paulis(m: usize) -> Vec<PauliOperator> {
    (1..(1usize << (2 * m)))
        .map(|code| {
            let bits: Vec<bool> = (0..2 * m).map(|i| (code >> i) & 1 == 1).collect();
            PauliOperator::from_symplectic(&BinVector::from_bits(&bits))
        })
        .collect()
}

/// Dense complex matrices built from Kronecker products, independent of the
/// library's simulator.
pub mod dense {
    use super::*;

    pub type M = Vec<Vec<Complex64>>;

    pub fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    pub fn from_real(rows: &[&[f64]]) -> M {
        rows.iter()
            .map(|r| r.iter().map(|&x| c(x, 0.0)).collect())
            .collect()
    }

    pub fn eye(n: usize) -> M {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) })
                    .collect()
            })
            .collect()
    }

    pub fn kron(a: &M, b: &M) -> M {
        let (ra, rb) = (a.len(), b.len());
        let mut out = vec![vec![c(0.0, 0.0); ra * rb]; ra * rb];
        for i in 0..ra {
            for j in 0..ra {
                for k in 0..rb {
                    for l in 0..rb {
                        out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                    }
                }
            }
        }
        out
    }

    pub fn mul(a: &M, b: &M) -> M {
        let n = a.len();
        let mut out = vec![vec![c(0.0, 0.0); n]; n];
        for i in 0..n {
            for k in 0..n {
                if a[i][k].norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
        out
    }

    pub fn adjoint(a: &M) -> M {
        let n = a.len();
        (0..n)
            .map(|i| (0..n).map(|j| a[j][i].conj()).collect())
            .collect()
    }

    pub fn scale(a: &M, s: Complex64) -> M {
        a.iter()
            .map(|r| r.iter().map(|x| x * s).collect())
            .collect()
    }

    pub fn max_diff(a: &M, b: &M) -> f64 {
        a.iter()
            .zip(b)
            .flat_map(|(r, s)| r.iter().zip(s).map(|(x, y)| (x - y).norm()))
            .fold(0.0, f64::max)
    }

    pub fn x() -> M {
        from_real(&[&[0.0, 1.0], &[1.0, 0.0]])
    }

    pub fn z() -> M {
        from_real(&[&[1.0, 0.0], &[0.0, -1.0]])
    }

    pub fn y() -> M {
        vec![
            vec![c(0.0, 0.0), c(0.0, -1.0)],
            vec![c(0.0, 1.0), c(0.0, 0.0)],
        ]
    }

    pub fn h() -> M {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        from_real(&[&[s, s], &[s, -s]])
    }

    pub fn p() -> M {
        vec![
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 1.0)],
        ]
    }

    pub fn cnot() -> M {
        from_real(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0],
        ])
    }

    pub fn cz() -> M {
        from_real(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 0.0, 0.0, -1.0],
        ])
    }

    /// Tensor product of the letters of a label with its phase prefix.
    pub fn pauli_label(p: &PauliOperator) -> M {
        let label = p.to_label();
        let body: String = label.chars().filter(|ch| "IXYZ".contains(*ch)).collect();
        let mut out = eye(1);
        for ch in body.chars() {
            let f = match ch {
                'I' => eye(2),
                'X' => x(),
                'Y' => y(),
                _ => z(),
            };
            out = kron(&out, &f);
        }
        let phase = match p.kappa() {
            0 => c(1.0, 0.0),
            1 => c(0.0, 1.0),
            2 => c(-1.0, 0.0),
            _ => c(0.0, -1.0),
        };
        scale(&out, phase)
    }

    /// Embeds a `2^k x 2^k` gate acting on `qubits` (first listed is the
    /// most significant) into `m` qubits; qubit 0 is most significant.
    pub fn embed(g: &M, qubits: &[usize], m: usize) -> M {
        let n = 1usize << m;
        let sub = |idx: usize| {
            qubits
                .iter()
                .fold(0, |acc, &q| (acc << 1) | ((idx >> (m - 1 - q)) & 1))
        };
        let rest_mask: usize = (0..m)
            .filter(|q| !qubits.contains(q))
            .fold(0, |acc, q| acc | (1 << (m - 1 - q)));
        let mut out = vec![vec![c(0.0, 0.0); n]; n];
        for i in 0..n {
            for j in 0..n {
                if i & rest_mask == j & rest_mask {
                    out[i][j] = g[sub(i)][sub(j)];
                }
            }
        }
        out
    }

    /// Unitary of a circuit built from embedded gate matrices.
    pub fn circuit_unitary(circuit: &Circuit) -> M {
        let m = circuit.num_qubits();
        let mut u = eye(1 << m);
        for g in circuit.gates() {
            let gm = match g {
                Gate::H(q) => embed(&h(), &[*q], m),
                Gate::P(q) => embed(&p(), &[*q], m),
                Gate::X(q) => embed(&x(), &[*q], m),
                Gate::Y(q) => embed(&y(), &[*q], m),
                Gate::Z(q) => embed(&z(), &[*q], m),
                Gate::Cz(a, b) => embed(&cz(), &[*a, *b], m),
                Gate::Cnot { control, target } => embed(&cnot(), &[*control, *target], m),
                Gate::Permute(images) => {
                    let n = 1usize << m;
                    let mut pm = vec![vec![c(0.0, 0.0); n]; n];
                    for idx in 0..n {
                        let mut j = 0;
                        for (i, &t) in images.iter().enumerate() {
                            if (idx >> (m - 1 - i)) & 1 == 1 {
                                j |= 1 << (m - 1 - t);
                            }
                        }
                        pm[j][idx] = c(1.0, 0.0);
                    }
                    pm
                }
            };
            u = mul(&gm, &u);
        }
        u
    }
}
