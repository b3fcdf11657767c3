//! Minimal exact linear algebra over the rationals, enough for the
//! desk-scale module computations (dimensions <= 6). Scalars are
//! arbitrary-precision: iterated matrix products blow past any fixed
//! width even at these sizes.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::rat::Rat;

/// Arbitrary-precision rational scalar for the module linear algebra.
pub type QQ = BigRational;

pub fn qq(x: &Rat) -> QQ {
    QQ::new((*x.numer()).into(), (*x.denom()).into())
}

pub fn qq_int(n: i64) -> QQ {
    QQ::from_integer(n.into())
}

/// Exact power with negative exponents allowed (base nonzero).
pub fn qq_pow(x: &QQ, e: i64) -> QQ {
    if e == 0 {
        return QQ::one();
    }
    let mag = {
        let mut acc = QQ::one();
        for _ in 0..e.abs() {
            acc *= x;
        }
        acc
    };
    if e > 0 {
        mag
    } else {
        QQ::one() / mag
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<QQ>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![QQ::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, QQ::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &QQ {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: QQ) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &QQ) {
        self.data[r * self.cols + c] += v;
    }

    pub fn add(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = a * rhs.get(k, j);
                    out.add_to(i, j, &v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[QQ]) -> Vec<QQ> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * &v[j])
                    .fold(QQ::zero(), |a, b| a + b)
            })
            .collect()
    }

    pub fn vstack(mats: &[RatMatrix]) -> RatMatrix {
        assert!(!mats.is_empty());
        let cols = mats[0].cols;
        let rows = mats.iter().map(|m| m.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for m in mats {
            assert_eq!(m.cols, cols);
            data.extend_from_slice(&m.data);
        }
        RatMatrix { rows, cols, data }
    }

    /// Row-reduces in place; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let pivot = (row..self.rows).find(|&r| !self.get(r, col).is_zero());
            let Some(p) = pivot else { continue };
            if p != row {
                for c in 0..self.cols {
                    self.data.swap(row * self.cols + c, p * self.cols + c);
                }
            }
            let inv = QQ::one() / self.get(row, col).clone();
            for c in 0..self.cols {
                let v = self.get(row, c) * &inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r != row && !self.get(r, col).is_zero() {
                    let factor = self.get(r, col).clone();
                    for c in 0..self.cols {
                        let v = self.get(r, c) - &factor * self.get(row, c);
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut copy = self.clone();
        copy.rref().len()
    }

    pub fn nullspace_basis(&self) -> Vec<Vec<QQ>> {
        let mut copy = self.clone();
        let pivots = copy.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![QQ::zero(); self.cols];
            v[f] = QQ::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -copy.get(r, f).clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = RatMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, QQ::one());
        }
        let pivots = aug.rref();
        if pivots != (0..n).collect::<Vec<_>>() {
            return None;
        }
        let mut inv = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn trace(&self) -> QQ {
        assert_eq!(self.rows, self.cols);
        (0..self.rows)
            .map(|i| self.get(i, i))
            .fold(QQ::zero(), |a, b| a + b)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<QQ>) -> Self {
        assert_eq!(data.len(), rows * cols);
        RatMatrix { rows, cols, data }
    }

    pub fn flat(&self) -> &[QQ] {
        &self.data
    }
}

/// Incrementally maintained reduced row-echelon basis. Insertions reduce
/// the candidate against the existing rows, which keeps coefficients
/// small across long span closures.
pub struct Echelon {
    dim: usize,
    rows: Vec<Vec<QQ>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<QQ>] {
        &self.rows
    }

    /// Inserts the vector if it enlarges the span; returns the reduced
    /// representative actually stored.
    pub fn insert(&mut self, mut v: Vec<QQ>) -> Option<Vec<QQ>> {
        assert_eq!(v.len(), self.dim);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &factor * r;
                }
            }
        }
        let pivot = v.iter().position(|x| !x.is_zero())?;
        let lead = v[pivot].clone();
        for x in v.iter_mut() {
            *x /= &lead;
        }
        // back-eliminate the new pivot from existing rows
        for (row, _) in self.rows.iter_mut().zip(&self.pivots) {
            if !row[pivot].is_zero() {
                let factor = row[pivot].clone();
                for (x, n) in row.iter_mut().zip(&v) {
                    *x -= &factor * n;
                }
            }
        }
        self.rows.push(v.clone());
        self.pivots.push(pivot);
        Some(v)
    }
}

/// Dimension of the span of the given vectors.
pub fn span_dim(vectors: &[Vec<QQ>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let cols = vectors[0].len();
    let mut m = RatMatrix::zeros(vectors.len(), cols);
    for (i, v) in vectors.iter().enumerate() {
        for (j, x) in v.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    m.rank()
}

/// Closes `seed` under the action of `mats`, returning a basis of the
/// smallest invariant subspace containing the seed vectors.
pub fn invariant_closure(seed: &[Vec<QQ>], mats: &[RatMatrix]) -> Vec<Vec<QQ>> {
    let dim = match seed.first() {
        Some(v) => v.len(),
        None => return Vec::new(),
    };
    let mut ech = Echelon::new(dim);
    let mut queue: Vec<Vec<QQ>> = seed.to_vec();
    while let Some(v) = queue.pop() {
        if let Some(reduced) = ech.insert(v) {
            for m in mats {
                queue.push(m.mul_vec(&reduced));
            }
        }
    }
    ech.rows().to_vec()
}

/// Matrix whose nullspace is the span of the given vectors, as a row
/// stack of annihilating functionals.
pub fn annihilator(vectors: &[Vec<QQ>], dim: usize) -> RatMatrix {
    if vectors.is_empty() {
        return RatMatrix::identity(dim);
    }
    let mut m = RatMatrix::zeros(vectors.len(), dim);
    for (i, v) in vectors.iter().enumerate() {
        for (j, x) in v.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    let functionals = m.nullspace_basis();
    let mut out = RatMatrix::zeros(functionals.len().max(1), dim);
    for (i, f) in functionals.iter().enumerate() {
        for (j, x) in f.iter().enumerate() {
            out.set(i, j, x.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_rows(rows: &[&[i64]]) -> RatMatrix {
        let mut m = RatMatrix::zeros(rows.len(), rows[0].len());
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, qq_int(x));
            }
        }
        m
    }

    #[test]
    fn rank_and_nullspace() {
        let m = from_rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace_basis();
        assert_eq!(ns.len(), 1);
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let m = from_rows(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMatrix::identity(2));
        let singular = from_rows(&[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn closure_finds_invariant_subspace() {
        // shift matrix: e1 -> e2 -> 0
        let shift = from_rows(&[&[0, 0], &[1, 0]]);
        let closure = invariant_closure(&[vec![qq_int(1), qq_int(0)]], &[shift.clone()]);
        assert_eq!(span_dim(&closure), 2);
        let closure = invariant_closure(&[vec![qq_int(0), qq_int(1)]], &[shift]);
        assert_eq!(span_dim(&closure), 1);
    }

    #[test]
    fn annihilator_cuts_the_span() {
        let ann = annihilator(&[vec![qq_int(1), qq_int(1), qq_int(0)]], 3);
        let v = [qq_int(1), qq_int(1), qq_int(0)];
        for i in 0..ann.rows() {
            let dot: QQ = (0..3)
                .map(|j| ann.get(i, j) * &v[j])
                .fold(QQ::zero(), |a, b| a + b);
            assert!(dot.is_zero());
        }
        assert_eq!(ann.nullity(), 1);
    }

    #[test]
    fn conversion_from_fixed_width() {
        assert_eq!(qq(&Rat::new(3, -6)), QQ::new((-1).into(), 2.into()));
        assert_eq!(qq_pow(&qq_int(2), -3), QQ::new(1.into(), 8.into()));
    }
}
