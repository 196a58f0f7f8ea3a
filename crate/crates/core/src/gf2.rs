//! Bit-packed vectors and matrices over GF(2), plus the symplectic helpers
//! built on them.
//!
//! Vectors are row vectors and matrices act on the right, so a matrix `F`
//! sends `x` to `x * F`. Phase-space vectors of length `2m` hold the X part
//! in bits `0..m` and the Z part in bits `m..2m`.
//!
//! Lexicographic order compares bit 0 first, which matches comparing the
//! `0`/`1` text rendering as strings.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinVector {
    len: usize,
    words: Vec<u64>,
}

impl BinVector {
    #[must_use]
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// The unit vector with a single one at `index`.
    #[must_use]
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    #[must_use]
    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Parses a string of `0`/`1` characters; spaces are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut bits = Vec::new();
        for c in text.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                ' ' | '\t' => {}
                other => {
                    return Err(Error::Parse {
                        line: 0,
                        message: format!("unexpected character {other:?} in bit string"),
                    })
                }
            }
        }
        Ok(Self::from_bits(&bits))
    }

    /// Concatenates two vectors, `self` first.
    #[must_use]
    pub fn concat(&self, other: &Self) -> Self {
        let mut v = Self::zeros(self.len + other.len);
        for i in self.ones() {
            v.set(i, true);
        }
        for i in other.ones() {
            v.set(self.len + i, true);
        }
        v
    }

    /// The sub-vector `start..start + len`.
    #[must_use]
    pub fn slice(&self, start: usize, len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                v.set(i, true);
            }
        }
        v
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.len
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// # Panics
    /// Panics if `index >= len`.
    #[must_use]
    pub fn get(&self, index: usize) -> bool {
        assert!(
            index < self.len,
            "bit index {index} out of range {}",
            self.len
        );
        (self.words[index / WORD] >> (index % WORD)) & 1 == 1
    }

    /// # Panics
    /// Panics if `index >= len`.
    pub fn set(&mut self, index: usize, value: bool) {
        assert!(
            index < self.len,
            "bit index {index} out of range {}",
            self.len
        );
        let mask = 1u64 << (index % WORD);
        if value {
            self.words[index / WORD] |= mask;
        } else {
            self.words[index / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, index: usize) {
        let v = self.get(index);
        self.set(index, !v);
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[must_use]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Positions of the set bits in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// The first set position, if any.
    #[must_use]
    pub fn leading(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * WORD + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// # Panics
    /// Panics if the lengths differ.
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    #[must_use]
    pub fn xor(&self, other: &Self) -> Self {
        let mut v = self.clone();
        v.xor_assign(other);
        v
    }

    #[must_use]
    pub fn and(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len, "length mismatch");
        Self {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    /// Ordinary dot product mod 2.
    #[must_use]
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "length mismatch");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    /// Number of positions where both vectors are one.
    #[must_use]
    pub fn overlap(&self, other: &Self) -> usize {
        assert_eq!(self.len, other.len, "length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Swaps the two halves, i.e. computes `x * Omega`.
    ///
    /// # Panics
    /// Panics if the length is odd.
    #[must_use]
    pub fn omega(&self) -> Self {
        assert!(
            self.len.is_multiple_of(2),
            "phase-space vector must have even length"
        );
        let m = self.len / 2;
        self.slice(m, m).concat(&self.slice(0, m))
    }

    /// `x * M`, the XOR of the rows of `M` selected by `x`.
    #[must_use]
    pub fn mul_matrix(&self, m: &BinMatrix) -> Self {
        assert_eq!(
            self.len,
            m.rows(),
            "dimension mismatch in vector-matrix product"
        );
        let mut out = Self::zeros(m.cols());
        for i in self.ones() {
            out.xor_assign(m.row(i));
        }
        out
    }
}

impl Ord for BinVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for i in 0..self.len {
                match (self.get(i), other.get(i)) {
                    (false, true) => return Ordering::Less,
                    (true, false) => return Ordering::Greater,
                    _ => {}
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for BinVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BinVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Symplectic inner product of two phase-space vectors:
/// `<[a,b],[a',b']> = a'.b + b'.a (mod 2)`.
#[must_use]
pub fn symplectic_inner(x: &BinVector, y: &BinVector) -> bool {
    assert_eq!(x.len(), y.len(), "length mismatch");
    assert!(
        x.len().is_multiple_of(2),
        "phase-space vector must have even length"
    );
    let m = x.len() / 2;
    let mut acc = false;
    for i in 0..m {
        acc ^= x.get(i) & y.get(m + i);
        acc ^= x.get(m + i) & y.get(i);
    }
    acc
}

/// A dense matrix over GF(2) stored row by row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinMatrix {
    cols: usize,
    data: Vec<BinVector>,
}

impl BinMatrix {
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            data: vec![BinVector::zeros(cols); rows],
        }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        Self::from_rows_unchecked(n, (0..n).map(|i| BinVector::unit(n, i)).collect())
    }

    /// The symplectic form `[[0, I], [I, 0]]` of size `2m`.
    #[must_use]
    pub fn omega(m: usize) -> Self {
        Self::from_rows_unchecked(
            2 * m,
            (0..2 * m)
                .map(|i| BinVector::unit(2 * m, (i + m) % (2 * m)))
                .collect(),
        )
    }

    /// Builds a matrix from rows that all have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BinVector>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension(format!(
                "row of length {} in a matrix with {cols} columns",
                r.len()
            )));
        }
        Ok(Self { cols, data: rows })
    }

    fn from_rows_unchecked(cols: usize, rows: Vec<BinVector>) -> Self {
        Self { cols, data: rows }
    }

    /// Parses rows of `0`/`1` strings, e.g. `&["110", "011"]`.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| BinVector::parse(r))
            .collect::<Result<Vec<_>>>()?;
        let cols = rows.first().map_or(0, BinVector::len);
        Self::from_rows(cols, rows)
    }

    /// Assembles `[[a, b], [c, d]]` from four equally sized square blocks.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        let n = a.rows();
        for blk in [a, b, c, d] {
            if blk.rows() != n || blk.cols() != n {
                return Err(Error::Dimension("blocks must be square and equal".into()));
            }
        }
        let mut rows = Vec::with_capacity(2 * n);
        for i in 0..n {
            rows.push(a.row(i).concat(b.row(i)));
        }
        for i in 0..n {
            rows.push(c.row(i).concat(d.row(i)));
        }
        Ok(Self::from_rows_unchecked(2 * n, rows))
    }

    /// Block-diagonal `[[a, 0], [0, b]]` for square `a`, `b` of any sizes.
    #[must_use]
    pub fn block_diag(a: &Self, b: &Self) -> Self {
        let n = a.cols() + b.cols();
        let mut rows = Vec::with_capacity(a.rows() + b.rows());
        for r in &a.data {
            rows.push(r.concat(&BinVector::zeros(b.cols())));
        }
        for r in &b.data {
            rows.push(BinVector::zeros(a.cols()).concat(r));
        }
        Self::from_rows_unchecked(n, rows)
    }

    /// The `rows x cols` block starting at (`row`, `col`).
    #[must_use]
    pub fn block(&self, row: usize, col: usize, rows: usize, cols: usize) -> Self {
        Self::from_rows_unchecked(
            cols,
            (row..row + rows)
                .map(|i| self.data[i].slice(col, cols))
                .collect(),
        )
    }

    #[must_use]
    pub fn rows(&self) -> usize {
        self.data.len()
    }

    #[must_use]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[must_use]
    pub fn row(&self, i: usize) -> &BinVector {
        &self.data[i]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut BinVector {
        &mut self.data[i]
    }

    #[must_use]
    pub fn row_vec(&self) -> &[BinVector] {
        &self.data
    }

    #[must_use]
    pub fn into_rows(self) -> Vec<BinVector> {
        self.data
    }

    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.data[i].set(j, value);
    }

    pub fn push_row(&mut self, row: BinVector) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.data.push(row);
    }

    /// Stacks `other` below `self`.
    #[must_use]
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self::from_rows_unchecked(self.cols, data)
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BinVector::is_zero)
    }

    #[must_use]
    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows());
        for (i, r) in self.data.iter().enumerate() {
            for j in r.ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Matrix product `self * other`.
    ///
    /// # Panics
    /// Panics on a dimension mismatch.
    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols,
            other.rows(),
            "dimension mismatch in matrix product"
        );
        Self::from_rows_unchecked(
            other.cols,
            self.data.iter().map(|r| r.mul_matrix(other)).collect(),
        )
    }

    #[must_use]
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            (self.rows(), self.cols),
            (other.rows(), other.cols),
            "dimension mismatch in matrix sum"
        );
        Self::from_rows_unchecked(
            self.cols,
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.xor(b))
                .collect(),
        )
    }

    /// Reduced row-echelon form together with the pivot column of each
    /// nonzero row.
    #[must_use]
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(self.cols);
        (m, pivots)
    }

    /// Row-reduces using only the first `limit` columns for pivots. Row
    /// operations are applied to whole rows, so trailing columns ride along.
    fn rref_in_place(&mut self, limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit {
            if r == self.rows() {
                break;
            }
            let Some(p) = (r..self.rows()).find(|&i| self.data[i].get(c)) else {
                continue;
            };
            self.data.swap(r, p);
            let pivot_row = self.data[r].clone();
            for i in 0..self.rows() {
                if i != r && self.data[i].get(c) {
                    self.data[i].xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// The inverse of a square matrix.
    pub fn invert(&self) -> Result<Self> {
        let n = self.rows();
        if n != self.cols {
            return Err(Error::Dimension(
                "only square matrices can be inverted".into(),
            ));
        }
        let mut aug = Self::from_rows_unchecked(
            2 * n,
            self.data
                .iter()
                .enumerate()
                .map(|(i, r)| r.concat(&BinVector::unit(n, i)))
                .collect(),
        );
        let pivots = aug.rref_in_place(n);
        if pivots.len() < n {
            return Err(Error::Singular);
        }
        Ok(Self::from_rows_unchecked(
            n,
            aug.data.iter().map(|r| r.slice(n, n)).collect(),
        ))
    }

    /// Solves `self * X = rhs` for `X`.
    ///
    /// Returns `Ok(None)` when the system is inconsistent. Otherwise the
    /// result holds one particular solution (free variables set to zero)
    /// and a basis of the null space of `self`, written as rows in reduced
    /// row-echelon order.
    pub fn solve_linear(&self, rhs: &Self) -> Result<Option<LinearSolution>> {
        if rhs.rows() != self.rows() {
            return Err(Error::Dimension(format!(
                "right-hand side has {} rows, system has {}",
                rhs.rows(),
                self.rows()
            )));
        }
        let n = self.cols;
        let k = rhs.cols;
        let mut aug = Self::from_rows_unchecked(
            n + k,
            self.data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.concat(b))
                .collect(),
        );
        let pivots = aug.rref_in_place(n);
        for r in pivots.len()..aug.rows() {
            if !aug.data[r].slice(n, k).is_zero() {
                return Ok(None);
            }
        }
        let mut particular = Self::zeros(n, k);
        for (r, &c) in pivots.iter().enumerate() {
            particular.data[c] = aug.data[r].slice(n, k);
        }
        let mut is_pivot = vec![false; n];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut null = Vec::new();
        for f in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = BinVector::unit(n, f);
            for (r, &c) in pivots.iter().enumerate() {
                if aug.data[r].get(f) {
                    v.set(c, true);
                }
            }
            null.push(v);
        }
        let (nullspace, _) = Self::from_rows_unchecked(n, null).rref();
        let nullspace = nullspace.nonzero_rows();
        Ok(Some(LinearSolution {
            particular,
            nullspace,
        }))
    }

    /// All `x` with `row_i . x = rhs_i` for every row, as an affine space.
    /// Returns `None` when inconsistent.
    pub fn solve_affine(&self, rhs: &BinVector) -> Result<Option<AffineSpace>> {
        let rhs_col = Self::from_rows_unchecked(
            1,
            (0..rhs.len())
                .map(|i| BinVector::from_bits(&[rhs.get(i)]))
                .collect(),
        );
        let sol = self.solve_linear(&rhs_col)?;
        Ok(sol.map(|s| {
            let offset = s.particular.transpose().data.remove(0);
            AffineSpace::new(offset, s.nullspace)
        }))
    }

    fn nonzero_rows(self) -> Self {
        let cols = self.cols;
        Self::from_rows_unchecked(
            cols,
            self.data.into_iter().filter(|r| !r.is_zero()).collect(),
        )
    }

    /// LU factorization with row pivoting, `P * self = L * U`, where `L` is
    /// unit lower triangular and `U` unit upper triangular. `P` has a one at
    /// `(i, perm[i])`, so row `i` of `P * self` is row `perm[i]` of `self`.
    pub fn lu_decompose(&self) -> Result<LuDecomposition> {
        let n = self.rows();
        if n != self.cols {
            return Err(Error::Dimension("LU needs a square matrix".into()));
        }
        let mut u = self.clone();
        let mut l = Self::identity(n);
        let mut perm: Vec<usize> = (0..n).collect();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| u.get(i, c)) else {
                return Err(Error::Singular);
            };
            if p != c {
                u.data.swap(p, c);
                perm.swap(p, c);
                for j in 0..c {
                    let a = l.get(p, j);
                    let b = l.get(c, j);
                    l.set(p, j, b);
                    l.set(c, j, a);
                }
            }
            let pivot_row = u.data[c].clone();
            for i in c + 1..n {
                if u.get(i, c) {
                    u.data[i].xor_assign(&pivot_row);
                    l.set(i, c, true);
                }
            }
        }
        Ok(LuDecomposition { perm, l, u })
    }

    /// Permutation matrix with a one at `(i, perm[i])`.
    #[must_use]
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        Self::from_rows_unchecked(n, perm.iter().map(|&p| BinVector::unit(n, p)).collect())
    }

    /// Renders the matrix in the text format: one row per line with entries
    /// separated by single spaces.
    #[must_use]
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.data {
            let line: Vec<&str> = (0..self.cols)
                .map(|j| if r.get(j) { "1" } else { "0" })
                .collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses one matrix from the text format. Leading blank lines and `#`
    /// comments are skipped; the matrix ends at the next blank line.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut all = Self::parse_many(text)?;
        match all.len() {
            0 => Err(Error::Parse {
                line: 0,
                message: "no matrix found".into(),
            }),
            _ => Ok(all.remove(0)),
        }
    }

    /// Parses a sequence of matrices separated by blank lines.
    pub fn parse_many(text: &str) -> Result<Vec<Self>> {
        let mut out = Vec::new();
        let mut current: Vec<BinVector> = Vec::new();
        let mut cols = 0;
        for (idx, line) in text.lines().enumerate() {
            let t = line.trim();
            if t.starts_with('#') {
                continue;
            }
            if t.is_empty() {
                if !current.is_empty() {
                    out.push(Self::from_rows_unchecked(
                        cols,
                        std::mem::take(&mut current),
                    ));
                }
                continue;
            }
            let mut bits = Vec::new();
            for tok in t.split(' ') {
                match tok {
                    "0" => bits.push(false),
                    "1" => bits.push(true),
                    _ => {
                        return Err(Error::Parse {
                            line: idx + 1,
                            message: format!("matrix entry {tok:?} is not 0 or 1"),
                        })
                    }
                }
            }
            if current.is_empty() {
                cols = bits.len();
            } else if bits.len() != cols {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("row has {} entries, expected {cols}", bits.len()),
                });
            }
            current.push(BinVector::from_bits(&bits));
        }
        if !current.is_empty() {
            out.push(Self::from_rows_unchecked(cols, current));
        }
        Ok(out)
    }
}

impl fmt::Debug for BinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinMatrix {}x{}", self.rows(), self.cols)?;
        for r in &self.data {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}

/// Output of [`BinMatrix::solve_linear`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub particular: BinMatrix,
    pub nullspace: BinMatrix,
}

/// Output of [`BinMatrix::lu_decompose`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LuDecomposition {
    pub perm: Vec<usize>,
    pub l: BinMatrix,
    pub u: BinMatrix,
}

/// An affine subspace `offset + span(basis)` with the basis kept in
/// reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSpace {
    offset: BinVector,
    basis: BinMatrix,
}

impl AffineSpace {
    /// `basis` must already be in reduced row-echelon form with no zero rows.
    fn new(offset: BinVector, basis: BinMatrix) -> Self {
        let mut s = Self { offset, basis };
        s.offset = s.reduce(&s.offset);
        s
    }

    fn reduce(&self, v: &BinVector) -> BinVector {
        let mut v = v.clone();
        for b in self.basis.row_vec() {
            let lead = b.leading().expect("basis rows are nonzero");
            if v.get(lead) {
                v.xor_assign(b);
            }
        }
        v
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    #[must_use]
    pub fn basis(&self) -> &BinMatrix {
        &self.basis
    }

    /// The lexicographically smallest member.
    #[must_use]
    pub fn lex_min(&self) -> BinVector {
        self.offset.clone()
    }

    /// The member selected by `index`: bit `dim - 1 - t` of `index` adds
    /// basis row `t`. Index zero is the lexicographic minimum.
    ///
    /// # Panics
    /// Panics if `index >= 2^dim`.
    #[must_use]
    pub fn element(&self, index: u128) -> BinVector {
        let d = self.dim();
        assert!(
            d >= 128 || index < (1u128 << d),
            "element index out of range"
        );
        let mut v = self.offset.clone();
        for t in 0..d {
            if (index >> (d - 1 - t)) & 1 == 1 {
                v.xor_assign(self.basis.row(t));
            }
        }
        v
    }

    #[must_use]
    pub fn contains(&self, v: &BinVector) -> bool {
        self.reduce(v) == self.offset
    }
}

/// A `2m x 2m` matrix `F` with `F * Omega * F^T = Omega`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymplecticMatrix {
    m: usize,
    mat: BinMatrix,
}

impl SymplecticMatrix {
    /// Wraps `mat` after checking that it is symplectic.
    pub fn new(mat: BinMatrix) -> Result<Self> {
        if mat.rows() != mat.cols() || !mat.rows().is_multiple_of(2) {
            return Err(Error::Dimension(format!(
                "a symplectic matrix must be 2m x 2m, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        if !Self::is_symplectic(&mat) {
            return Err(Error::NotSymplectic);
        }
        Ok(Self {
            m: mat.rows() / 2,
            mat,
        })
    }

    pub(crate) fn new_unchecked(mat: BinMatrix) -> Self {
        debug_assert!(Self::is_symplectic(&mat));
        Self {
            m: mat.rows() / 2,
            mat,
        }
    }

    #[must_use]
    pub fn identity(m: usize) -> Self {
        Self::new_unchecked(BinMatrix::identity(2 * m))
    }

    #[must_use]
    pub fn omega(m: usize) -> Self {
        Self::new_unchecked(BinMatrix::omega(m))
    }

    #[must_use]
    pub fn is_symplectic(mat: &BinMatrix) -> bool {
        if mat.rows() != mat.cols() || !mat.rows().is_multiple_of(2) {
            return false;
        }
        let n = mat.rows();
        let m = n / 2;
        for i in 0..n {
            for j in i..n {
                let want = j == i + m;
                if symplectic_inner(mat.row(i), mat.row(j)) != want {
                    return false;
                }
            }
        }
        true
    }

    #[must_use]
    pub fn m(&self) -> usize {
        self.m
    }

    #[must_use]
    pub fn matrix(&self) -> &BinMatrix {
        &self.mat
    }

    #[must_use]
    pub fn into_matrix(self) -> BinMatrix {
        self.mat
    }

    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        Self::new_unchecked(self.mat.mul(&other.mat))
    }

    /// The inverse, `Omega * F^T * Omega`.
    #[must_use]
    pub fn inverse(&self) -> Self {
        let om = BinMatrix::omega(self.m);
        Self::new_unchecked(om.mul(&self.mat.transpose()).mul(&om))
    }

    /// The image `x * F`.
    #[must_use]
    pub fn apply(&self, x: &BinVector) -> BinVector {
        x.mul_matrix(&self.mat)
    }

    /// The four `m x m` blocks `(A, B, C, D)`.
    #[must_use]
    pub fn blocks(&self) -> (BinMatrix, BinMatrix, BinMatrix, BinMatrix) {
        let m = self.m;
        (
            self.mat.block(0, 0, m, m),
            self.mat.block(0, m, m, m),
            self.mat.block(m, 0, m, m),
            self.mat.block(m, m, m, m),
        )
    }
}

impl fmt::Debug for SymplecticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Symplectic{:?}", self.mat)
    }
}

/// Completes a seed set of phase-space vectors to a full symplectic basis.
///
/// The seed must be linearly independent and every seed vector may pair
/// (inner product one) with at most one other seed vector. The result lists
/// `m` pairs `(u, v)` with `<u_i, v_j> = delta_ij` and all other inner
/// products zero. Seeds are visited in order: a seed with a partner later in
/// the list forms a pair with it, an unpaired seed gets the
/// lexicographically smallest admissible partner, and any remaining
/// dimensions are filled with lexicographically smallest pairs.
pub fn symplectic_gram_schmidt(seed: &[BinVector]) -> Result<Vec<(BinVector, BinVector)>> {
    let Some(first) = seed.first() else {
        return Err(Error::Dimension("seed must not be empty".into()));
    };
    let n = first.len();
    if n % 2 != 0 || seed.iter().any(|s| s.len() != n) {
        return Err(Error::Dimension(
            "seed vectors must share an even length".into(),
        ));
    }
    let m = n / 2;
    let seed_mat = BinMatrix::from_rows(n, seed.to_vec())?;
    if seed_mat.rank() != seed.len() {
        return Err(Error::Infeasible(
            "seed vectors are linearly dependent".into(),
        ));
    }
    let mut partner: Vec<Option<usize>> = vec![None; seed.len()];
    for i in 0..seed.len() {
        for j in 0..seed.len() {
            if i != j && symplectic_inner(&seed[i], &seed[j]) {
                if partner[i].is_some() {
                    return Err(Error::Infeasible(
                        "a seed vector pairs with more than one other seed vector".into(),
                    ));
                }
                partner[i] = Some(j);
            }
        }
    }

    let mut pairs: Vec<(BinVector, BinVector)> = Vec::new();
    let mut used = vec![false; seed.len()];
    let mut chosen: Vec<BinVector> = Vec::new();
    for i in 0..seed.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        if let Some(j) = partner[i] {
            used[j] = true;
            pairs.push((seed[i].clone(), seed[j].clone()));
            continue;
        }
        // Partner must pair with seed i only and be orthogonal to every
        // other seed and every partner chosen so far.
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (t, s) in seed.iter().enumerate() {
            rows.push(s.omega());
            rhs.push(t == i);
        }
        for c in &chosen {
            rows.push(c.omega());
            rhs.push(false);
        }
        let space = BinMatrix::from_rows(n, rows)?
            .solve_affine(&BinVector::from_bits(&rhs))?
            .ok_or_else(|| Error::Infeasible("no symplectic partner exists".into()))?;
        let w = space.lex_min();
        chosen.push(w.clone());
        pairs.push((seed[i].clone(), w));
    }

    while pairs.len() < m {
        let span: Vec<BinVector> = pairs
            .iter()
            .flat_map(|(u, v)| [u.omega(), v.omega()])
            .collect();
        let rows = BinMatrix::from_rows(n, span.clone())?;
        let zeros = BinVector::zeros(span.len());
        let complement = rows
            .solve_affine(&zeros)?
            .ok_or_else(|| Error::Infeasible("complement is empty".into()))?;
        let basis = complement.basis();
        let u = basis.row(basis.rows() - 1).clone();
        let mut rows_v = span;
        rows_v.push(u.omega());
        let mut rhs = vec![false; rows_v.len()];
        *rhs.last_mut().expect("nonempty") = true;
        let v = BinMatrix::from_rows(n, rows_v)?
            .solve_affine(&BinVector::from_bits(&rhs))?
            .ok_or_else(|| Error::Infeasible("no partner in complement".into()))?
            .lex_min();
        pairs.push((u, v));
    }
    Ok(pairs)
}
