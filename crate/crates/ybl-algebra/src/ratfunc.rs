use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::AlgebraError;
use crate::gcd::gcd;
use crate::poly::MultiPoly;
use crate::registry::{Role, VarRegistry};
use crate::Q;

/// Reduced quotient of polynomials; the denominator's leading coefficient is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return RatFunc { num, den: MultiPoly::one() };
        }
        if let Some(c) = den.constant_value() {
            return RatFunc { num: num.scale(&c.recip()), den: MultiPoly::one() };
        }
        if let Some(q) = num.exact_div(&den) {
            return RatFunc { num: q, den: MultiPoly::one() };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides numerator"), den.exact_div(&g).expect("gcd divides denominator"))
        };
        Self::normalize_lc(num, den)
    }

    fn normalize_lc(num: MultiPoly, den: MultiPoly) -> Self {
        let lc = den.leading().map(|(_, c)| c.clone()).unwrap();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc { num: p, den: MultiPoly::one() }
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(MultiPoly::from_int(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(MultiPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }

    pub fn var(reg: &Arc<VarRegistry>, i: usize) -> Self {
        Self::from_poly(MultiPoly::var(reg, i))
    }

    pub fn var_named(reg: &Arc<VarRegistry>, name: &str) -> Result<Self, AlgebraError> {
        Ok(Self::from_poly(MultiPoly::var_named(reg, name)?))
    }

    pub fn var_role(reg: &Arc<VarRegistry>, role: Role) -> Option<Self> {
        reg.index_of(role).map(|i| Self::var(reg, i))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn registry(&self) -> Option<&Arc<VarRegistry>> {
        self.num.registry().or(self.den.registry())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Ok(o.clone());
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        if self.den.is_one() && o.den.is_one() {
            return Ok(Self::from_poly(self.num.try_add(&o.num)?));
        }
        if self.den == o.den {
            return Ok(Self::reduce(self.num.try_add(&o.num)?, self.den.clone()));
        }
        if o.den.is_one() {
            return Ok(RatFunc { num: self.num.try_add(&o.num.try_mul(&self.den)?)?, den: self.den.clone() });
        }
        if self.den.is_one() {
            return Ok(RatFunc { num: o.num.try_add(&self.num.try_mul(&o.den)?)?, den: o.den.clone() });
        }
        let g = gcd(&self.den, &o.den);
        if g.is_constant() {
            let num = self.num.try_mul(&o.den)?.try_add(&o.num.try_mul(&self.den)?)?;
            let den = self.den.try_mul(&o.den)?;
            return Ok(Self::normalize_lc(num, den));
        }
        let b1 = self.den.exact_div(&g).expect("gcd divides");
        let d1 = o.den.exact_div(&g).expect("gcd divides");
        let num = self.num.try_mul(&d1)?.try_add(&o.num.try_mul(&b1)?)?;
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g2 = gcd(&num, &g);
        let (num, g) = if g2.is_constant() {
            (num, g)
        } else {
            (num.exact_div(&g2).unwrap(), g.exact_div(&g2).unwrap())
        };
        let den = b1.try_mul(&d1)?.try_mul(&g)?;
        Ok(Self::normalize_lc(num, den))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.try_add(&o.neg())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, AlgebraError> {
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero());
        }
        if self.den.is_one() && o.den.is_one() {
            return Ok(Self::from_poly(self.num.try_mul(&o.num)?));
        }
        if let Some(c) = self.as_constant() {
            return Ok(RatFunc { num: o.num.scale(&c), den: o.den.clone() });
        }
        if let Some(c) = o.as_constant() {
            return Ok(RatFunc { num: self.num.scale(&c), den: self.den.clone() });
        }
        let (a, b) = cancel(&self.num, &o.den);
        let (c, d) = cancel(&o.num, &self.den);
        let num = a.try_mul(&c)?;
        let den = d.try_mul(&b)?;
        Ok(Self::normalize_lc(num, den))
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalize_lc(self.den.clone(), self.num.clone()))
    }

    pub fn try_div(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.try_mul(&o.inv()?)
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, e: i32) -> Self {
        let base = if e < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        RatFunc { num: base.num.pow(e.unsigned_abs()), den: base.den.pow(e.unsigned_abs()) }
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, point: &[Q]) -> Result<Q, AlgebraError> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(AlgebraError::ZeroDenominator(self.den.to_string()));
        }
        Ok(self.num.eval(point)? / d)
    }

    pub fn eval_var(&self, var: usize, val: &Q) -> Result<Self, AlgebraError> {
        let d = self.den.eval_var(var, val);
        if d.is_zero() {
            return Err(AlgebraError::ZeroDenominator(self.den.to_string()));
        }
        Self::new(self.num.eval_var(var, val), d)
    }

    pub fn substitute(&self, var: usize, by: &RatFunc) -> Result<Self, AlgebraError> {
        let n = subst_poly(&self.num, var, by)?;
        let d = subst_poly(&self.den, var, by)?;
        if d.is_zero() {
            return Err(AlgebraError::ZeroDenominator(self.den.to_string()));
        }
        n.try_div(&d)
    }

    pub fn derivative(&self, var: usize) -> Self {
        let dn = self.num.derivative(var);
        let dd = self.den.derivative(var);
        if dd.is_zero() {
            return Self::reduce(dn, self.den.clone());
        }
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        Self::reduce(num, &self.den * &self.den)
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        Self::normalize_lc(self.num.swap_vars(i, j), self.den.swap_vars(i, j))
    }

    /// `deg_var(num) - deg_var(den)`.
    pub fn degree_in(&self, var: usize) -> i64 {
        self.num.degree_in(var) as i64 - self.den.degree_in(var) as i64
    }

    pub fn reembed(&self, target: &Arc<VarRegistry>) -> Result<Self, AlgebraError> {
        Ok(RatFunc { num: self.num.reembed(target)?, den: self.den.reembed(target)? })
    }
}

fn cancel(a: &MultiPoly, b: &MultiPoly) -> (MultiPoly, MultiPoly) {
    if b.is_constant() || a.is_constant() {
        return (a.clone(), b.clone());
    }
    if let Some(q) = a.exact_div(b) {
        return (q, MultiPoly::one());
    }
    let g = gcd(a, b);
    if g.is_constant() {
        (a.clone(), b.clone())
    } else {
        (a.exact_div(&g).unwrap(), b.exact_div(&g).unwrap())
    }
}

fn subst_poly(p: &MultiPoly, var: usize, by: &RatFunc) -> Result<RatFunc, AlgebraError> {
    let coeffs = p.coeffs_in(var);
    let mut acc = RatFunc::zero();
    for c in coeffs.iter().rev() {
        acc = acc.try_mul(by)?.try_add(&RatFunc::from_poly(c.clone()))?;
    }
    Ok(acc)
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &MultiPoly| if p.len() > 1 { format!("({p})") } else { p.to_string() };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

macro_rules! rf_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl std::ops::$tr<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, o: &RatFunc) -> RatFunc {
                self.$try(o).expect("rational function operation failed")
            }
        }
    };
}

rf_binop!(Add, add, try_add);
rf_binop!(Sub, sub, try_sub);
rf_binop!(Mul, mul, try_mul);
rf_binop!(Div, div, try_div);

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        Self::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Arc<VarRegistry>, RatFunc, RatFunc, RatFunc) {
        let r = VarRegistry::zhq(2, 0, false);
        let (z1, z2, h) = (RatFunc::var(&r, 0), RatFunc::var(&r, 1), RatFunc::var(&r, 2));
        (r, z1, z2, h)
    }

    #[test]
    fn common_denominator() {
        let (_, z1, z2, h) = setup();
        let d = &z1 - &z2;
        let s = &(&h / &d) + &(&(&d - &h) / &d);
        assert!(s.is_one());
    }

    #[test]
    fn inverse() {
        let (_, z1, z2, h) = setup();
        let a = &(&z1 - &z2) + &h;
        assert!((&a.inv().unwrap() * &a).is_one());
        assert_eq!(RatFunc::zero().inv(), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn gcd_cancellation() {
        let (_, z1, z2, _) = setup();
        let f = RatFunc::new((&(&z1 * &z1) - &(&z2 * &z2)).num().clone(), (&z1 - &z2).num().clone()).unwrap();
        assert_eq!(f, &z1 + &z2);
    }

    #[test]
    fn denominator_is_monic() {
        let (_, z1, z2, _) = setup();
        let f = &RatFunc::one() / &(&z2.scale(&Q::from_integer(3.into())) - &z1);
        assert!(f.den().leading().unwrap().1.is_one());
        assert_eq!(&f * &(&z2.scale(&Q::from_integer(3.into())) - &z1), RatFunc::one());
    }

    #[test]
    fn derivative_quotient_rule() {
        let (_, z1, z2, _) = setup();
        let f = &z1 / &(&z1 - &z2);
        let df = f.derivative(0);
        let expect = &(-&z2) / &(&(&z1 - &z2) * &(&z1 - &z2));
        assert_eq!(df, expect);
    }

    #[test]
    fn substitution_with_zero_denominator_errors() {
        let (_, z1, z2, _) = setup();
        let f = &RatFunc::one() / &(&z1 - &z2);
        assert!(matches!(f.substitute(0, &z2), Err(AlgebraError::ZeroDenominator(_))));
    }
}

impl std::ops::Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(self)
    }
}
