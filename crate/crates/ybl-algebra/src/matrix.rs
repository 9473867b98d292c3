use std::fmt;

use crate::error::AlgebraError;
use crate::field::Field;

/// Dense row-major matrix over an exact field.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<K> {
    rows: usize,
    cols: usize,
    data: Vec<K>,
}

impl<K: Field> Matrix<K> {
    pub fn new(rows: usize, cols: usize, data: Vec<K>) -> Result<Self, AlgebraError> {
        if data.len() != rows * cols {
            return Err(AlgebraError::ShapeMismatch(format!("{} entries for {rows}x{cols}", data.len())));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![K::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, K::one())
    }

    pub fn scalar(n: usize, c: K) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn diagonal(d: &[K]) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in d.iter().enumerate() {
            m.data[i * n + i] = x.clone();
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

    pub fn from_columns(rows: usize, cols: &[Vec<K>]) -> Self {
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &K {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) outside {}x{}", self.rows, self.cols);
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: K) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) outside {}x{}", self.rows, self.cols);
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[K] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<K> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<K> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn map<L: Field>(&self, f: impl FnMut(&K) -> L) -> Matrix<L> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<L: Field, E>(&self, f: impl FnMut(&K) -> Result<L, E>) -> Result<Matrix<L>, E> {
        Ok(Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect::<Result<_, _>>()? })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, AlgebraError> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(self.shape_err(o));
        }
        Ok(Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() })
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, AlgebraError> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(self.shape_err(o));
        }
        Ok(Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() })
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, AlgebraError> {
        if self.cols != o.rows {
            return Err(self.shape_err(o));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o.data[k * o.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    fn shape_err(&self, o: &Self) -> AlgebraError {
        AlgebraError::ShapeMismatch(format!("{}x{} vs {}x{}", self.rows, self.cols, o.rows, o.cols))
    }

    pub fn add(&self, o: &Self) -> Self {
        self.checked_add(o).expect("matrix shape mismatch")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.checked_sub(o).expect("matrix shape mismatch")
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.checked_mul(o).expect("matrix shape mismatch")
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }

    pub fn scale(&self, c: &K) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn mul_vec(&self, v: &[K]) -> Vec<K> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = K::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = &self.data[i * self.cols + j];
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> K {
        let mut acc = K::zero();
        for i in 0..self.rows.min(self.cols) {
            acc = acc.add(self.get(i, i));
        }
        acc
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::identity(self.rows);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn det(&self) -> Result<K, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::ShapeMismatch(format!("det of {}x{}", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(K::one());
        }
        let mut a = self.data.clone();
        let mut sign = false;
        let mut prev = K::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                    return Ok(K::zero());
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[i * n + j].mul(&a[k * n + k]).sub(&a[i * n + k].mul(&a[k * n + j]));
                    a[i * n + j] = v.div(&prev);
                }
            }
            prev = a[k * n + k].clone();
        }
        let d = a[n * n - 1].clone();
        Ok(if sign { d.neg() } else { d })
    }

    /// Fraction-free forward elimination; returns pivot columns.
    fn bareiss_echelon(a: &mut [K], rows: usize, cols: usize, limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut prev = K::one();
        let mut r = 0;
        for c in 0..limit {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else { continue };
            if p != r {
                for j in 0..cols {
                    a.swap(r * cols + j, p * cols + j);
                }
            }
            let piv = a[r * cols + c].clone();
            for i in r + 1..rows {
                let f = a[i * cols + c].clone();
                for j in 0..cols {
                    let v = a[i * cols + j].mul(&piv).sub(&f.mul(&a[r * cols + j]));
                    a[i * cols + j] = v.div(&prev);
                }
            }
            prev = piv;
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut a = self.data.clone();
        Self::bareiss_echelon(&mut a, self.rows, self.cols, self.cols).len()
    }

    /// Solve `self * X = b` for square invertible `self`.
    pub fn solve(&self, b: &Self) -> Result<Self, AlgebraError> {
        if !self.is_square() || b.rows != self.rows {
            return Err(self.shape_err(b));
        }
        let n = self.rows;
        let w = n + b.cols;
        let mut a = Vec::with_capacity(n * w);
        for i in 0..n {
            a.extend_from_slice(&self.data[i * n..(i + 1) * n]);
            a.extend_from_slice(&b.data[i * b.cols..(i + 1) * b.cols]);
        }
        let piv = Self::bareiss_echelon(&mut a, n, w, n);
        if piv.len() < n {
            return Err(AlgebraError::Singular);
        }
        let mut x = Self::zeros(n, b.cols);
        for j in 0..b.cols {
            for i in (0..n).rev() {
                let mut acc = a[i * w + n + j].clone();
                for k in i + 1..n {
                    acc = acc.sub(&a[i * w + k].mul(x.get(k, j)));
                }
                x.set(i, j, acc.div(&a[i * w + i]));
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        self.solve(&Self::identity(self.rows))
    }

    /// Solve for one right-hand side vector.
    pub fn solve_vec(&self, b: &[K]) -> Result<Vec<K>, AlgebraError> {
        let bm = Matrix::from_columns(b.len(), &[b.to_vec()]);
        Ok(self.solve(&bm)?.column(0))
    }
}

impl<K: Field> fmt::Display for Matrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::RatFunc;
    use crate::registry::{Role, VarRegistry};
    use crate::Q;

    fn qi(i: i64) -> Q {
        Q::from_integer(i.into())
    }

    #[test]
    fn det_tridiagonal_by_hand() {
        let r = VarRegistry::new(vec![("u", Role::U), ("x1", Role::Aux), ("x2", Role::Aux), ("r1", Role::Aux)]).unwrap();
        let v = |i| RatFunc::var(&r, i);
        let m = Matrix::new(2, 2, vec![&v(0) - &v(1), RatFunc::from_int(-1), v(3), &v(0) - &v(2)]).unwrap();
        let expect = &(&(&v(0) - &v(1)) * &(&v(0) - &v(2))) + &v(3);
        assert_eq!(m.det().unwrap(), expect);
    }

    #[test]
    fn commutator_with_self_vanishes() {
        let m = Matrix::from_fn(3, 3, |i, j| qi((i * 3 + j) as i64 - 4));
        assert!(m.commutator(&m).is_zero());
    }

    #[test]
    fn solve_identity() {
        let b = Matrix::from_fn(3, 1, |i, _| qi(i as i64 + 7));
        assert_eq!(Matrix::<Q>::identity(3).solve(&b).unwrap(), b);
    }

    #[test]
    fn singular_solve_errors() {
        let m = Matrix::new(2, 2, vec![qi(1), qi(2), qi(2), qi(4)]).unwrap();
        assert_eq!(m.solve(&Matrix::identity(2)), Err(AlgebraError::Singular));
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn inverse_roundtrip_with_pivoting() {
        let m = Matrix::new(3, 3, vec![qi(0), qi(1), qi(2), qi(1), qi(0), qi(3), qi(4), qi(-3), qi(8)]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3));
        assert_eq!(m.det().unwrap(), qi(-2));
    }

    #[test]
    fn shape_errors() {
        let a = Matrix::<Q>::zeros(2, 3);
        assert!(matches!(a.checked_mul(&a), Err(AlgebraError::ShapeMismatch(_))));
        assert!(matches!(a.det(), Err(AlgebraError::ShapeMismatch(_))));
    }
}
