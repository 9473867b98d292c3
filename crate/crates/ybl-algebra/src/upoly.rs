use std::fmt;

use crate::error::AlgebraError;
use crate::field::Field;
use crate::series::series_div;

/// Dense univariate polynomial in the spectral variable `u`, lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct UPoly<K> {
    c: Vec<K>,
}

impl<K: Field> UPoly<K> {
    pub fn new(mut c: Vec<K>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn constant(k: K) -> Self {
        Self::new(vec![k])
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    /// `u - a`.
    pub fn linear(a: &K) -> Self {
        Self::new(vec![a.neg(), K::one()])
    }

    pub fn coeffs(&self) -> &[K] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> K {
        self.c.get(i).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&K> {
        self.c.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        UPoly { c: self.c.iter().map(|x| x.neg()).collect() }
    }

    pub fn scale(&self, k: &K) -> Self {
        Self::new(self.c.iter().map(|x| x.mul(k)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![K::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(out)
    }

    pub fn eval(&self, x: &K) -> K {
        let mut acc = K::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(x).add(a);
        }
        acc
    }

    /// `p(u + a)`.
    pub fn shift(&self, a: &K) -> Self {
        let lin = Self::new(vec![a.clone(), K::one()]);
        let mut acc = Self::zero();
        for k in self.c.iter().rev() {
            acc = acc.mul(&lin).add(&Self::constant(k.clone()));
        }
        acc
    }

    pub fn map<L: Field>(&self, f: impl FnMut(&K) -> L) -> UPoly<L> {
        UPoly::new(self.c.iter().map(f).collect())
    }
}

/// Coefficients `a_0..a_order` of `num/den = sum a_s u^{-s}` at `u = infinity`.
pub fn expand_at_infinity<K: Field>(num: &UPoly<K>, den: &UPoly<K>, order: usize) -> Result<Vec<K>, AlgebraError> {
    let dd = den.degree().ok_or(AlgebraError::DivisionByZero)?;
    if let Some(dn) = num.degree() {
        if dn > dd {
            return Err(AlgebraError::GrowsAtInfinity { num: dn, den: dd });
        }
    }
    let nt: Vec<K> = (0..=dd).map(|k| num.coeff(dd - k)).collect();
    let dt: Vec<K> = (0..=dd).map(|k| den.coeff(dd - k)).collect();
    Ok(series_div(&nt, &dt, order))
}

impl<K: Field> fmt::Display for UPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, k)| !k.is_zero())
            .map(|(i, k)| match i {
                0 => format!("({k})"),
                1 => format!("({k})*u"),
                _ => format!("({k})*u^{i}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::RatFunc;
    use crate::registry::{Role, VarRegistry};
    use crate::Q;

    #[test]
    fn geometric_series() {
        let r = VarRegistry::new(vec![("z1", Role::Z(1)), ("z2", Role::Z(2)), ("h", Role::H)]).unwrap();
        let (z1, z2, h) = (RatFunc::var(&r, 0), RatFunc::var(&r, 1), RatFunc::var(&r, 2));
        // 1 + h/(u - z1) = (u - z1 + h)/(u - z1)
        let num = UPoly::new(vec![&h - &z1, RatFunc::one()]);
        let den = UPoly::linear(&z1);
        let a = expand_at_infinity(&num, &den, 4).unwrap();
        assert_eq!(a[0], RatFunc::one());
        assert_eq!(a[1], h);
        assert_eq!(a[2], &h * &z1);
        assert_eq!(a[3], &(&h * &z1) * &z1);

        let num = UPoly::constant(&h * &h);
        let den = UPoly::linear(&z1).mul(&UPoly::linear(&z2));
        let a = expand_at_infinity(&num, &den, 3).unwrap();
        assert!(a[0].is_zero() && a[1].is_zero());
        assert_eq!(a[2], &h * &h);
        assert_eq!(a[3], &(&h * &h) * &(&z1 + &z2));
    }

    #[test]
    fn constant_one() {
        let a = expand_at_infinity(&UPoly::<Q>::one(), &UPoly::one(), 5).unwrap();
        assert_eq!(a[0], Q::from_integer(1.into()));
        assert!(a[1..].iter().all(|x| *x == Q::from_integer(0.into())));
    }

    #[test]
    fn growth_rejected() {
        let u = UPoly::<Q>::linear(&Q::from_integer(0.into()));
        assert!(matches!(expand_at_infinity(&u, &UPoly::one(), 2), Err(AlgebraError::GrowsAtInfinity { .. })));
    }

    #[test]
    fn shift_matches_eval() {
        let p = UPoly::new(vec![Q::from_integer(3.into()), Q::from_integer((-2).into()), Q::from_integer(5.into())]);
        let a = Q::new(1.into(), 3.into());
        let x = Q::from_integer(7.into());
        assert_eq!(p.shift(&a).eval(&x), p.eval(&(&x + &a)));
    }
}
