//! Symplectic transvections and the two solvers built on them: one that
//! finds a single symplectic matrix meeting linear constraints, and one that
//! enumerates every such matrix.

use crate::error::{Error, Result};
use crate::gf2::{
    symplectic_gram_schmidt, symplectic_inner, AffineSpace, BinMatrix, BinVector, SymplecticMatrix,
};
use crate::par::{self, Execution};

/// Default ceiling on the number of solutions materialized at once.
pub const DEFAULT_CAP: u128 = 1 << 20;

/// `x + <x, h> h`.
#[must_use]
pub fn apply_transvection(h: &BinVector, x: &BinVector) -> BinVector {
    if symplectic_inner(x, h) {
        x.xor(h)
    } else {
        x.clone()
    }
}

/// The matrix `I + Omega h^T h` of the transvection `x -> x + <x, h> h`.
#[must_use]
pub fn transvection_matrix(h: &BinVector) -> SymplecticMatrix {
    let n = h.len();
    let rows = (0..n)
        .map(|i| apply_transvection(h, &BinVector::unit(n, i)))
        .collect();
    SymplecticMatrix::new_unchecked(BinMatrix::from_rows(n, rows).expect("square"))
}

/// Right-multiplies `f` by the transvection matrix of `h`.
fn compose_transvection(f: &BinMatrix, h: &BinVector) -> BinMatrix {
    let rows = f
        .row_vec()
        .iter()
        .map(|r| apply_transvection(h, r))
        .collect();
    BinMatrix::from_rows(f.cols(), rows).expect("same shape")
}

/// Lexicographically smallest `w` with `<c_i, w> = rhs_i` for every pair.
fn solve_inner(n: usize, conds: &[(&BinVector, bool)]) -> Result<Option<AffineSpace>> {
    let rows = conds.iter().map(|(c, _)| c.omega()).collect();
    let rhs: Vec<bool> = conds.iter().map(|(_, b)| *b).collect();
    BinMatrix::from_rows(n, rows)?.solve_affine(&BinVector::from_bits(&rhs))
}

/// At most two transvection vectors whose product maps `x` to `y`.
///
/// Both vectors must be nonzero. The result is empty when `x == y`, a single
/// vector `x + y` when `<x, y> = 1`, and otherwise `[w + y, x + w]` with `w`
/// the lexicographically smallest vector satisfying `<x, w> = <y, w> = 1`.
pub fn map_vector(x: &BinVector, y: &BinVector) -> Result<Vec<BinVector>> {
    if x.len() != y.len() || !x.len().is_multiple_of(2) {
        return Err(Error::Dimension("vectors must share an even length".into()));
    }
    if x.is_zero() || y.is_zero() {
        return Err(Error::Infeasible(
            "cannot map to or from the zero vector".into(),
        ));
    }
    if x == y {
        return Ok(Vec::new());
    }
    if symplectic_inner(x, y) {
        return Ok(vec![x.xor(y)]);
    }
    let w = solve_inner(x.len(), &[(x, true), (y, true)])?
        .ok_or_else(|| Error::Infeasible("no intermediate vector".into()))?
        .lex_min();
    Ok(vec![w.xor(y), x.xor(&w)])
}

/// A symplectic matrix mapping each `x_i` to `y_i`, together with the
/// transvection vectors whose product it is.
#[derive(Clone, Debug)]
pub struct FoundSymplectic {
    pub matrix: SymplecticMatrix,
    pub transvections: Vec<BinVector>,
}

/// Finds a symplectic `F` with `x_i F = y_i` for every constraint, processed
/// in the given order with at most two transvections per constraint.
///
/// The `x_i` must be linearly independent and the constraints must preserve
/// every pairwise symplectic inner product.
pub fn find_symplectic(
    constraints: &[(BinVector, BinVector)],
    m: usize,
) -> Result<FoundSymplectic> {
    check_constraints(constraints, m)?;
    let n = 2 * m;
    let mut f = BinMatrix::identity(n);
    let mut hs = Vec::new();
    for (i, (x, y)) in constraints.iter().enumerate() {
        let xt = x.mul_matrix(&f);
        if &xt == y {
            continue;
        }
        let step = if symplectic_inner(&xt, y) {
            vec![xt.xor(y)]
        } else {
            let mut conds: Vec<(&BinVector, bool)> = vec![(&xt, true), (y, true)];
            for (_, yj) in &constraints[..i] {
                conds.push((yj, symplectic_inner(yj, y)));
            }
            let w = solve_inner(n, &conds)?
                .ok_or_else(|| Error::Infeasible(format!("constraint {} cannot be met", i + 1)))?
                .lex_min();
            vec![w.xor(y), xt.xor(&w)]
        };
        for h in step {
            f = compose_transvection(&f, &h);
            hs.push(h);
        }
    }
    Ok(FoundSymplectic {
        matrix: SymplecticMatrix::new_unchecked(f),
        transvections: hs,
    })
}

fn check_constraints(constraints: &[(BinVector, BinVector)], m: usize) -> Result<()> {
    let n = 2 * m;
    if constraints
        .iter()
        .any(|(x, y)| x.len() != n || y.len() != n)
    {
        return Err(Error::Dimension(format!(
            "constraint vectors must have length {n}"
        )));
    }
    for (i, (xi, yi)) in constraints.iter().enumerate() {
        for (xj, yj) in &constraints[i + 1..] {
            if symplectic_inner(xi, xj) != symplectic_inner(yi, yj) {
                return Err(Error::Infeasible(
                    "constraints do not preserve symplectic inner products".into(),
                ));
            }
        }
    }
    if constraints.is_empty() {
        return Ok(());
    }
    let xs = BinMatrix::from_rows(n, constraints.iter().map(|c| c.0.clone()).collect())?;
    let ys = BinMatrix::from_rows(n, constraints.iter().map(|c| c.1.clone()).collect())?;
    if xs.rank() != constraints.len() {
        return Err(Error::Infeasible(
            "constrained inputs are linearly dependent".into(),
        ));
    }
    if ys.rank() != constraints.len() {
        return Err(Error::Infeasible(
            "constrained images are linearly dependent".into(),
        ));
    }
    Ok(())
}

/// Linear constraints on a symplectic matrix, phrased over a symplectic
/// basis `u_1..u_m, v_1..v_m`: basis row `r` must map to `targets[r]` when
/// that entry is present and is free otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticSystem {
    m: usize,
    basis: SymplecticMatrix,
    targets: Vec<Option<BinVector>>,
}

impl SymplecticSystem {
    /// `basis` lists `u_1..u_m` then `v_1..v_m` as rows.
    pub fn with_basis(basis: BinMatrix, targets: Vec<Option<BinVector>>) -> Result<Self> {
        let basis = SymplecticMatrix::new(basis)
            .map_err(|_| Error::Infeasible("basis rows are not a symplectic basis".into()))?;
        let m = basis.m();
        if targets.len() != 2 * m {
            return Err(Error::Dimension(format!(
                "{} targets for a basis of size {}",
                targets.len(),
                2 * m
            )));
        }
        let sys = Self { m, basis, targets };
        check_constraints(&sys.constraints(), m)?;
        Ok(sys)
    }

    /// Builds a system from arbitrary pairs `x_i -> y_i` by rewriting the
    /// inputs into a symplectic basis of their span and completing it.
    pub fn from_constraints(m: usize, constraints: &[(BinVector, BinVector)]) -> Result<Self> {
        check_constraints(constraints, m)?;
        let n = 2 * m;
        if constraints.is_empty() {
            return Self::with_basis(BinMatrix::identity(n), vec![None; n]);
        }
        let mut rest: Vec<(BinVector, BinVector)> = constraints.to_vec();
        let mut seed: Vec<(BinVector, BinVector)> = Vec::new();
        while !rest.is_empty() {
            let (x, y) = rest.remove(0);
            if let Some(p) = rest.iter().position(|(z, _)| symplectic_inner(&x, z)) {
                let (x2, y2) = rest.remove(p);
                for (z, zy) in &mut rest {
                    let c1 = symplectic_inner(z, &x2);
                    let c2 = symplectic_inner(z, &x);
                    if c1 {
                        z.xor_assign(&x);
                        zy.xor_assign(&y);
                    }
                    if c2 {
                        z.xor_assign(&x2);
                        zy.xor_assign(&y2);
                    }
                }
                seed.push((x, y));
                seed.push((x2, y2));
            } else {
                seed.push((x, y));
            }
        }
        let seed_x: Vec<BinVector> = seed.iter().map(|s| s.0.clone()).collect();
        let pairs = symplectic_gram_schmidt(&seed_x)?;
        let lookup = |v: &BinVector| seed.iter().find(|s| &s.0 == v).map(|s| s.1.clone());
        let mut rows = Vec::with_capacity(n);
        let mut targets = vec![None; n];
        for (a, (u, _)) in pairs.iter().enumerate() {
            targets[a] = lookup(u);
            rows.push(u.clone());
        }
        for (a, (_, v)) in pairs.iter().enumerate() {
            targets[m + a] = lookup(v);
            rows.push(v.clone());
        }
        Self::with_basis(BinMatrix::from_rows(n, rows)?, targets)
    }

    #[must_use]
    pub fn m(&self) -> usize {
        self.m
    }

    #[must_use]
    pub fn basis(&self) -> &SymplecticMatrix {
        &self.basis
    }

    #[must_use]
    pub fn targets(&self) -> &[Option<BinVector>] {
        &self.targets
    }

    /// The constrained pairs `(basis row, target)` in row order.
    #[must_use]
    pub fn constraints(&self) -> Vec<(BinVector, BinVector)> {
        self.targets
            .iter()
            .enumerate()
            .filter_map(|(r, t)| {
                t.as_ref()
                    .map(|t| (self.basis.matrix().row(r).clone(), t.clone()))
            })
            .collect()
    }

    /// Number of free basis rows.
    #[must_use]
    pub fn alpha(&self) -> usize {
        self.targets.iter().filter(|t| t.is_none()).count()
    }

    /// One solution from the greedy transvection solver.
    pub fn find_symplectic(&self) -> Result<FoundSymplectic> {
        find_symplectic(&self.constraints(), self.m)
    }

    #[must_use]
    pub fn is_solution(&self, f: &SymplecticMatrix) -> bool {
        self.targets.iter().enumerate().all(|(r, t)| match t {
            Some(t) => &f.apply(self.basis.matrix().row(r)) == t,
            None => true,
        })
    }

    /// The full solution set, indexed and decodable on demand.
    pub fn solutions(&self) -> Result<SolutionSpace> {
        SolutionSpace::new(self)
    }

    /// Every solution, in increasing index order.
    pub fn enumerate_all(&self, cap: u128, exec: Execution) -> Result<Vec<SymplecticMatrix>> {
        self.solutions()?.collect_all(cap, exec)
    }
}

#[derive(Clone, Debug)]
enum Step {
    /// A free row whose partner row is fixed.
    Single {
        row: usize,
        dim: usize,
    },
    /// The first row of a pair with both rows free; index 0 skips zero.
    PairFirst {
        row: usize,
        dim: usize,
    },
    PairSecond {
        row: usize,
        dim: usize,
    },
}

impl Step {
    fn count(&self) -> u128 {
        match self {
            Step::Single { dim, .. } | Step::PairSecond { dim, .. } => 1u128 << dim,
            Step::PairFirst { dim, .. } => (1u128 << dim) - 1,
        }
    }
}

/// Every symplectic matrix satisfying a [`SymplecticSystem`].
///
/// Starting from one particular solution `F0`, the constrained rows of
/// `A = basis * F0` are held fixed and each free row is replaced in turn by a
/// vector with the inner products a symplectic basis requires. Solution
/// `l` decodes `l` in mixed radix, first free row most significant, and
/// returns `F0 * A^-1 * B`.
#[derive(Clone, Debug)]
pub struct SolutionSpace {
    m: usize,
    f0: SymplecticMatrix,
    a: BinMatrix,
    a_inv: BinMatrix,
    fixed: Vec<bool>,
    steps: Vec<Step>,
    count: u128,
}

impl SolutionSpace {
    fn new(sys: &SymplecticSystem) -> Result<Self> {
        let m = sys.m;
        let f0 = sys.find_symplectic()?.matrix;
        let a = sys.basis.matrix().mul(f0.matrix());
        let a_inv = SymplecticMatrix::new_unchecked(a.clone())
            .inverse()
            .into_matrix();
        let fixed: Vec<bool> = sys.targets.iter().map(Option::is_some).collect();
        let alpha = fixed.iter().filter(|f| !**f).count();
        let mut steps = Vec::new();
        let mut dim = alpha;
        for r in 0..2 * m {
            let partner = (r + m) % (2 * m);
            if !fixed[r] && fixed[partner] {
                steps.push(Step::Single { row: r, dim });
                dim -= 1;
            }
        }
        let open_pairs: Vec<usize> = (0..m).filter(|&d| !fixed[d] && !fixed[d + m]).collect();
        let mut left = open_pairs.len();
        for d in open_pairs {
            steps.push(Step::PairFirst {
                row: d,
                dim: 2 * left,
            });
            steps.push(Step::PairSecond {
                row: d + m,
                dim: 2 * left - 1,
            });
            left -= 1;
        }
        let mut count: u128 = 1;
        for s in &steps {
            count = count
                .checked_mul(s.count())
                .ok_or_else(|| Error::SizeLimit("solution count overflows u128".into()))?;
        }
        Ok(Self {
            m,
            f0,
            a,
            a_inv,
            fixed,
            steps,
            count,
        })
    }

    #[must_use]
    pub fn count(&self) -> u128 {
        self.count
    }

    /// The particular solution the enumeration is built around.
    #[must_use]
    pub fn base(&self) -> &SymplecticMatrix {
        &self.f0
    }

    /// Solution number `index`.
    ///
    /// # Panics
    /// Panics if `index >= count()`.
    #[must_use]
    pub fn get(&self, index: u128) -> SymplecticMatrix {
        assert!(index < self.count, "solution index out of range");
        let n = 2 * self.m;
        let mut digits = vec![0u128; self.steps.len()];
        let mut rest = index;
        for (i, s) in self.steps.iter().enumerate().rev() {
            digits[i] = rest % s.count();
            rest /= s.count();
        }
        let mut b = self.a.clone();
        let mut known = self.fixed.clone();
        for (s, &digit) in self.steps.iter().zip(&digits) {
            let (row, pick) = match s {
                Step::Single { row, .. } | Step::PairSecond { row, .. } => (*row, digit),
                Step::PairFirst { row, .. } => (*row, digit + 1),
            };
            let partner = (row + self.m) % n;
            let conds: Vec<(&BinVector, bool)> = (0..n)
                .filter(|&r| known[r])
                .map(|r| (b.row(r), r == partner))
                .collect();
            let space = solve_inner(n, &conds)
                .expect("well-formed system")
                .expect("a symplectic completion always exists");
            *b.row_mut(row) = space.element(pick);
            known[row] = true;
        }
        SymplecticMatrix::new_unchecked(self.f0.matrix().mul(&self.a_inv).mul(&b))
    }

    /// All solutions in index order; fails if there are more than `cap`.
    pub fn collect_all(&self, cap: u128, exec: Execution) -> Result<Vec<SymplecticMatrix>> {
        if self.count > cap {
            return Err(Error::TooManySolutions {
                count: self.count,
                cap,
            });
        }
        let n = usize::try_from(self.count).expect("count is below the cap");
        Ok(par::map_range(exec, n, |l| self.get(l as u128)))
    }

    /// Streams the solutions in index order without materializing them.
    pub fn iter(&self) -> impl Iterator<Item = SymplecticMatrix> + '_ {
        (0..self.count).map(move |l| self.get(l))
    }
}

/// `|Sp(2m, F2)| = 2^(m^2) * prod_{j=1..m} (4^j - 1)`.
#[must_use]
pub fn symplectic_group_order(m: u32) -> u128 {
    let mut n: u128 = 1u128 << (m * m);
    for j in 1..=m {
        n *= (1u128 << (2 * j)) - 1;
    }
    n
}
