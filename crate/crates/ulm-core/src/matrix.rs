//! Matrices of polynomials: products, antidiagonal adjoint, minors and
//! determinants by memoized cofactor expansion.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::One;

use crate::error::KernelError;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

/// A rows x cols grid of polynomials over one ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: PolyRing,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(ring: &PolyRing, rows: usize, cols: usize, entries: Vec<Polynomial>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        for e in &entries {
            assert!(e.ring() == ring, "entry ring mismatch");
        }
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries,
        }
    }

    pub fn zero(ring: &PolyRing, rows: usize, cols: usize) -> Self {
        let entries = (0..rows * cols).map(|_| Polynomial::zero(ring)).collect();
        Self::new(ring, rows, cols, entries)
    }

    pub fn identity(ring: &PolyRing, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Polynomial::one(ring);
        }
        m
    }

    /// `c * I_n` for a scalar polynomial `c`.
    pub fn scalar(ring: &PolyRing, n: usize, c: &Polynomial) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = c.clone();
        }
        m
    }

    /// Antidiagonal unit matrix `H` of size n.
    pub fn antidiag(ring: &PolyRing, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            *m.at_mut(i, n - 1 - i) = Polynomial::one(ring);
        }
        m
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Polynomial {
        &mut self.entries[r * self.cols + c]
    }

    /// Entries row-major.
    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(&self.ring, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self, KernelError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(KernelError::OutOfRange("matrix shape mismatch".to_string()));
        }
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(&self.ring, self.rows, self.cols, entries))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, KernelError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let entries = self.entries.iter().map(|e| e.neg()).collect();
        Self::new(&self.ring, self.rows, self.cols, entries)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, KernelError> {
        if self.cols != other.rows {
            return Err(KernelError::OutOfRange("matrix shape mismatch".to_string()));
        }
        let mut out = Self::zero(&self.ring, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.cols {
                    acc = acc.add(&self.at(r, k).mul(other.at(k, c))?)?;
                }
                *out.at_mut(r, c) = acc;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Polynomial) -> Result<Self, KernelError> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.mul(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(&self.ring, self.rows, self.cols, entries))
    }

    /// Submatrix by row/column index selections.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                entries.push(self.at(r, c).clone());
            }
        }
        Self::new(&self.ring, rows.len(), cols.len(), entries)
    }

    /// Simultaneous row/column permutation: `out[i][j] = self[perm[i]][perm[j]]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(self.rows, self.cols);
        assert_eq!(perm.len(), self.rows);
        self.submatrix(perm, perm)
    }

    /// Contiguous block `self[r0..r1][c0..c1]`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        let rows: Vec<usize> = (r0..r1).collect();
        let cols: Vec<usize> = (c0..c1).collect();
        self.submatrix(&rows, &cols)
    }

    /// Determinant by cofactor expansion along the first remaining row, with
    /// memoization on the remaining-column mask. Exact and adequate for the
    /// sizes the charts need (n <= 8).
    pub fn det(&self) -> Result<Polynomial, KernelError> {
        if self.rows != self.cols {
            return Err(KernelError::OutOfRange("determinant of non-square".to_string()));
        }
        if self.rows == 0 {
            return Ok(Polynomial::one(&self.ring));
        }
        assert!(self.cols <= 64, "mask width");
        let full: u64 = if self.cols == 64 {
            u64::MAX
        } else {
            (1u64 << self.cols) - 1
        };
        let mut memo: BTreeMap<u64, Polynomial> = BTreeMap::new();
        self.det_rec(0, full, &mut memo)
    }

    fn det_rec(
        &self,
        row: usize,
        colmask: u64,
        memo: &mut BTreeMap<u64, Polynomial>,
    ) -> Result<Polynomial, KernelError> {
        if colmask == 0 {
            return Ok(Polynomial::one(&self.ring));
        }
        if let Some(p) = memo.get(&colmask) {
            return Ok(p.clone());
        }
        let mut acc = Polynomial::zero(&self.ring);
        let mut sign = BigRational::one();
        for c in 0..self.cols {
            if colmask & (1 << c) == 0 {
                continue;
            }
            let e = self.at(row, c);
            if !e.is_zero() {
                let sub = self.det_rec(row + 1, colmask & !(1 << c), memo)?;
                let term = e.mul(&sub)?.scale(&sign)?;
                acc = acc.add(&term)?;
            }
            sign = -sign;
        }
        memo.insert(colmask, acc.clone());
        Ok(acc)
    }

    /// All `r x r` minors in lexicographic order of (row subset, col subset).
    ///
    /// `minors(M, 1)` returns the entries row-major; for square `M` and
    /// `r = rows`, the single determinant.
    pub fn minors(&self, r: usize) -> Result<Vec<Polynomial>, KernelError> {
        if r == 0 || r > self.rows.min(self.cols) {
            return Err(KernelError::OutOfRange(alloc::format!(
                "minor size {r} out of range for {}x{}",
                self.rows,
                self.cols
            )));
        }
        let row_sets = subsets(self.rows, r);
        let col_sets = subsets(self.cols, r);
        let mut out = Vec::with_capacity(row_sets.len() * col_sets.len());
        for rs in &row_sets {
            for cs in &col_sets {
                out.push(self.submatrix(rs, cs).det()?);
            }
        }
        Ok(out)
    }
}

/// The antidiagonal adjoint `H * M^t * H`.
///
/// `h` must be the antidiagonal unit matrix of matching size.
pub fn ad(m: &PolyMatrix, h: &PolyMatrix) -> Result<PolyMatrix, KernelError> {
    if m.rows() != m.cols() || h.rows() != m.rows() || h.cols() != m.rows() {
        return Err(KernelError::OutOfRange("ad: size mismatch".to_string()));
    }
    let expect = PolyMatrix::antidiag(m.ring(), m.rows());
    if *h != expect {
        return Err(KernelError::Invalid(
            "ad: second argument is not the antidiagonal unit matrix".to_string(),
        ));
    }
    h.mul(&m.transpose())?.mul(h)
}

/// Adjoint without passing `H` explicitly: `H_cols * M^t * H_rows`, defined
/// for rectangular blocks as well; `out[i][j] = m[rows-1-j][cols-1-i]`.
pub fn adjoint(m: &PolyMatrix) -> PolyMatrix {
    let (r, c) = (m.rows(), m.cols());
    let mut out = PolyMatrix::zero(m.ring(), c, r);
    for i in 0..c {
        for j in 0..r {
            *out.at_mut(i, j) = m.at(r - 1 - j, c - 1 - i).clone();
        }
    }
    out
}

/// Trace of a square matrix.
pub fn trace(m: &PolyMatrix) -> Result<Polynomial, KernelError> {
    if m.rows() != m.cols() {
        return Err(KernelError::OutOfRange("trace of non-square".to_string()));
    }
    let mut acc = Polynomial::zero(m.ring());
    for i in 0..m.rows() {
        acc = acc.add(m.at(i, i))?;
    }
    Ok(acc)
}

/// All `r`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..r).collect();
    if r > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        // advance
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - r {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..r {
            cur[j] = cur[j - 1] + 1;
        }
    }
}
