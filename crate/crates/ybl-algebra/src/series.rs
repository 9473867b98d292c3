use std::fmt;

use crate::error::AlgebraError;
use crate::field::Field;

/// Truncated quotient `a/b` of power series, coefficients `0..=order`.
/// Panics if `b[0] == 0`.
pub fn series_div<K: Field>(a: &[K], b: &[K], order: usize) -> Vec<K> {
    let b0inv = b.first().and_then(|x| x.inv()).expect("series divisor must have invertible constant term");
    let at = |v: &[K], i: usize| v.get(i).cloned().unwrap_or_else(K::zero);
    let mut out: Vec<K> = Vec::with_capacity(order + 1);
    for s in 0..=order {
        let mut acc = at(a, s);
        for k in 1..=s.min(b.len().saturating_sub(1)) {
            if !b[k].is_zero() && !out[s - k].is_zero() {
                acc = acc.sub(&b[k].mul(&out[s - k]));
            }
        }
        out.push(acc.mul(&b0inv));
    }
    out
}

/// Power series in `q` truncated after `q^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct QSeries<K> {
    order: usize,
    c: Vec<K>,
}

impl<K: Field> QSeries<K> {
    pub fn new(order: usize, mut c: Vec<K>) -> Self {
        c.resize(order + 1, K::zero());
        QSeries { order, c }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, Vec::new())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[K] {
        &self.c
    }

    pub fn coeff(&self, d: usize) -> &K {
        &self.c[d]
    }

    fn check(&self, o: &Self) -> Result<(), AlgebraError> {
        if self.order != o.order {
            return Err(AlgebraError::ShapeMismatch(format!("series orders {} and {}", self.order, o.order)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.check(o)?;
        Ok(QSeries { order: self.order, c: self.c.iter().zip(&o.c).map(|(a, b)| a.add(b)).collect() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.check(o)?;
        Ok(QSeries { order: self.order, c: self.c.iter().zip(&o.c).map(|(a, b)| a.sub(b)).collect() })
    }

    pub fn mul(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.check(o)?;
        let mut c = vec![K::zero(); self.order + 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate().take(self.order + 1 - i) {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Ok(QSeries { order: self.order, c })
    }

    pub fn scale(&self, k: &K) -> Self {
        QSeries { order: self.order, c: self.c.iter().map(|x| x.mul(k)).collect() }
    }

    /// `q d/dq`.
    pub fn euler(&self) -> Self {
        QSeries { order: self.order, c: self.c.iter().enumerate().map(|(d, x)| x.mul(&K::from_int(d as i64))).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// Lowest order with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }
}

impl<K: Field> fmt::Display for QSeries<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, k)| !k.is_zero())
            .map(|(d, k)| format!("({k})*q^{d}"))
            .collect();
        write!(f, "{} + O(q^{})", if parts.is_empty() { "0".into() } else { parts.join(" + ") }, self.order + 1)
    }
}
