//! Dense exact linear algebra: row reduction, kernels, subspaces and linear systems.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<K> {
    rows: usize,
    cols: usize,
    data: Vec<K>,
}

impl<K: Scalar> Matrix<K> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![K::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, K::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> K) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: impl IntoIterator<Item = Vec<K>>) -> Self {
        let mut data = Vec::new();
        let mut n = 0;
        for row in rows {
            assert_eq!(row.len(), cols, "row length mismatch");
            data.extend(row);
            n += 1;
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<K>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter().map(|r| r.iter().map(|&x| K::from_i64(x)).collect()),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &K {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: K) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[K] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &[K]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<K> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &Matrix<K>) -> Matrix<K> {
        assert_eq!(self.cols, rhs.rows, "incompatible shapes for product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[K]) -> Vec<K> {
        assert_eq!(self.cols, v.len(), "incompatible shapes for product");
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    pub fn add(&self, rhs: &Matrix<K>) -> Matrix<K> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, c: &K) -> Matrix<K> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// Stacks `rhs` below `self`.
    pub fn vstack(&self, rhs: &Matrix<K>) -> Matrix<K> {
        assert_eq!(self.cols, rhs.cols);
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Matrix {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    /// Places `rhs` to the right of `self`.
    pub fn hstack(&self, rhs: &Matrix<K>) -> Matrix<K> {
        assert_eq!(self.rows, rhs.rows);
        Self::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs.get(i, j - self.cols).clone()
            }
        })
    }

    /// Reduced row-echelon form together with the pivot columns.
    pub fn rref_with_pivots(&self) -> (Matrix<K>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv();
            for j in c..m.cols {
                let v = m.get(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j).clone() - f.clone() * m.get(r, j).clone();
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Reduced row-echelon form and rank.
    pub fn rref(&self) -> (Matrix<K>, usize) {
        let (m, pivots) = self.rref_with_pivots();
        (m, pivots.len())
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// Null space `{x : self * x = 0}`.
    pub fn kernel(&self) -> Subspace<K> {
        let (r, pivots) = self.rref_with_pivots();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut vectors = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![K::zero(); self.cols];
            x[f] = K::one();
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = -r.get(i, f).clone();
            }
            vectors.push(x);
        }
        Subspace::from_vectors(self.cols, vectors)
    }

    /// Column space as a subspace of `K^rows`.
    pub fn image(&self) -> Subspace<K> {
        Subspace::from_vectors(self.rows, (0..self.cols).map(|j| self.column(j)))
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[K]) -> Option<Vec<K>> {
        assert_eq!(b.len(), self.rows, "right-hand side has wrong length");
        let aug = self.hstack(&Matrix::from_columns(self.rows, &[b.to_vec()]));
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![K::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<K: Scalar> fmt::Debug for Matrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

pub fn dot<K: Scalar>(a: &[K], b: &[K]) -> K {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(K::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn is_zero_vec<K: Scalar>(v: &[K]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn unit_vec<K: Scalar>(n: usize, i: usize) -> Vec<K> {
    let mut v = vec![K::zero(); n];
    v[i] = K::one();
    v
}

/// `a + c * b`, in place.
pub fn axpy<K: Scalar>(a: &mut [K], c: &K, b: &[K]) {
    if c.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x = x.clone() + c.clone() * y.clone();
        }
    }
}

/// A linear subspace of `K^ambient`, stored by its reduced row-echelon basis.
///
/// The echelon basis is canonical, so two subspaces are equal iff their bases are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace<K> {
    ambient: usize,
    rows: Vec<Vec<K>>,
    pivots: Vec<usize>,
}

impl<K: Scalar> Subspace<K> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_vectors(ambient, (0..ambient).map(|i| unit_vec(ambient, i)))
    }

    pub fn from_vectors<I, V>(ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[K]>,
    {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.insert(v.as_ref());
        }
        s
    }

    /// Row space of a matrix.
    pub fn row_space(m: &Matrix<K>) -> Self {
        Self::from_vectors(m.cols(), m.row_vectors())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Echelon basis rows; row `i` has a one in column `pivots()[i]` and zeros in every
    /// other pivot column.
    pub fn basis(&self) -> &[Vec<K>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> Matrix<K> {
        Matrix::from_rows(self.ambient, self.rows.iter().cloned())
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &[K]) -> Vec<K> {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p].clone();
            if !c.is_zero() {
                axpy(&mut w, &(-c), row);
            }
        }
        w
    }

    pub fn contains(&self, v: &[K]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[K]) -> Option<Vec<K>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Adds a vector to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[K]) -> bool {
        let mut w = self.reduce(v);
        let Some(lead) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[lead].inv();
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        for row in self.rows.iter_mut() {
            let c = row[lead].clone();
            if !c.is_zero() {
                axpy(row, &(-c), &w);
            }
        }
        let pos = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(pos, lead);
        self.rows.insert(pos, w);
        true
    }

    pub fn sum(&self, other: &Subspace<K>) -> Result<Subspace<K>> {
        self.check_ambient(other)?;
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v);
        }
        Ok(s)
    }

    /// Intersection by the Zassenhaus block construction.
    pub fn intersect(&self, other: &Subspace<K>) -> Result<Subspace<K>> {
        self.check_ambient(other)?;
        let n = self.ambient;
        let mut block = Subspace::zero(2 * n);
        for u in &self.rows {
            let mut v = u.clone();
            v.extend(u.iter().cloned());
            block.insert(&v);
        }
        for w in &other.rows {
            let mut v = w.clone();
            v.extend(std::iter::repeat_n(K::zero(), n));
            block.insert(&v);
        }
        let vectors = block
            .rows
            .iter()
            .zip(&block.pivots)
            .filter(|(_, &p)| p >= n)
            .map(|(row, _)| row[n..].to_vec());
        Ok(Subspace::from_vectors(n, vectors))
    }

    pub fn is_subspace_of(&self, other: &Subspace<K>) -> bool {
        self.ambient == other.ambient && self.rows.iter().all(|v| other.contains(v))
    }

    /// Coordinates that are not pivots: their unit vectors span a complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }

    fn check_ambient(&self, other: &Subspace<K>) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }
}

impl<K: Scalar> fmt::Debug for Subspace<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) {:?}", self.dim(), self.ambient, self.basis_matrix())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{F2, Q};

    fn q(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_i64(rows)
    }

    fn qv(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| Q::from_i64(x)).collect()
    }

    #[test]
    fn rref_of_identity_is_identity() {
        let (r, rank) = Matrix::<Q>::identity(2).rref();
        assert_eq!(r, Matrix::identity(2));
        assert_eq!(rank, 2);
    }

    #[test]
    fn dependent_rows_over_q() {
        assert_eq!(q(&[&[1, 1], &[2, 2]]).rank(), 1);
    }

    #[test]
    fn dependent_rows_over_f2() {
        let m: Matrix<F2> = Matrix::from_i64(&[&[1, 1], &[2, 2]]);
        let (r, rank) = m.rref();
        assert_eq!(rank, 1);
        assert_eq!(r, Matrix::from_i64(&[&[1, 1], &[0, 0]]));
    }

    #[test]
    fn kernel_examples() {
        let k = q(&[&[1, 1]]).kernel();
        assert_eq!(k, Subspace::from_vectors(2, [qv(&[1, -1])]));
        assert!(Matrix::<Q>::identity(3).kernel().is_zero());
        assert_eq!(Matrix::<Q>::zeros(2, 3).kernel(), Subspace::full(3));
    }

    #[test]
    fn subspace_operations() {
        let u = Subspace::from_vectors(3, [qv(&[1, 0, 0]), qv(&[0, 1, 0])]);
        let v = Subspace::from_vectors(3, [qv(&[0, 1, 0]), qv(&[0, 0, 1])]);
        assert_eq!(
            u.intersect(&v).unwrap(),
            Subspace::from_vectors(3, [qv(&[0, 1, 0])])
        );
        assert_eq!(u.sum(&Subspace::zero(3)).unwrap(), u);
        let diag = Subspace::from_vectors(2, [qv(&[1, 1])]);
        assert!(!diag.contains(&qv(&[1, 0])));
        assert!(u.sum(&Subspace::zero(2)).is_err());
    }

    #[test]
    fn solve_examples() {
        let b = qv(&[3, -2]);
        assert_eq!(Matrix::<Q>::identity(2).solve(&b), Some(b.clone()));
        let a = q(&[&[1, 1]]);
        let x = a.solve(&qv(&[1])).unwrap();
        assert_eq!(a.mul_vec(&x), qv(&[1]));
        assert_eq!(q(&[&[1], &[1]]).solve(&qv(&[1, 2])), None);
    }

    #[test]
    fn coordinates_in_echelon_basis() {
        let s = Subspace::from_vectors(3, [qv(&[1, 2, 0]), qv(&[0, 1, 1])]);
        let v = qv(&[2, 5, 1]);
        let c = s.coordinates(&v).unwrap();
        let mut back = vec![Q::from_i64(0); 3];
        for (ci, row) in c.iter().zip(s.basis()) {
            axpy(&mut back, ci, row);
        }
        assert_eq!(back, v);
    }
}
