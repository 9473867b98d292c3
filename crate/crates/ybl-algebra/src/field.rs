use std::collections::HashMap;
use std::fmt::{Debug, Display};

use num_traits::{One, Zero};

use crate::poly::MultiPoly;
use crate::ratfunc::RatFunc;
use crate::registry::Role;
use crate::Q;

/// Exact scalar field used by the matrix and series code.
pub trait Field: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_q(q: &Q) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;

    fn from_int(i: i64) -> Self {
        Self::from_q(&Q::from_integer(i.into()))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv().expect("division by zero"))
    }

    fn scale_q(&self, q: &Q) -> Self {
        self.mul(&Self::from_q(q))
    }

    fn pow(&self, e: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Exchange `z_i` and `z_{i+1}` (1-based). Constants are fixed.
    fn swap_z(&self, _i: usize) -> Self {
        self.clone()
    }
}

impl Field for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_q(q: &Q) -> Self {
        q.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn from_q(q: &Q) -> Self {
        RatFunc::constant(q.clone())
    }
    fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("registry mismatch")
    }
    fn sub(&self, o: &Self) -> Self {
        self.try_sub(o).expect("registry mismatch")
    }
    fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("registry mismatch")
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        RatFunc::inv(self).ok()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn is_one(&self) -> bool {
        RatFunc::is_one(self)
    }
    fn scale_q(&self, q: &Q) -> Self {
        self.scale(q)
    }
    fn pow(&self, e: u32) -> Self {
        RatFunc::pow(self, e as i32)
    }
    fn swap_z(&self, i: usize) -> Self {
        let Some(reg) = self.registry() else { return self.clone() };
        match (reg.index_of(Role::Z(i)), reg.index_of(Role::Z(i + 1))) {
            (Some(a), Some(b)) => self.swap_vars(a, b),
            _ => self.clone(),
        }
    }
}

/// Evaluate a polynomial in any field, variable `i` taking the value `val(i)`.
pub fn eval_poly<K: Field>(p: &MultiPoly, mut val: impl FnMut(usize) -> K) -> K {
    let mut base: HashMap<usize, Vec<K>> = HashMap::new();
    let mut acc = K::zero();
    for (m, c) in p.terms() {
        let mut t = K::from_q(c);
        for (i, e) in m.exps().iter().enumerate() {
            if *e == 0 {
                continue;
            }
            let pw = base.entry(i).or_insert_with(|| vec![K::one()]);
            if pw.len() == 1 {
                pw.push(val(i));
            }
            while pw.len() <= *e as usize {
                let next = pw.last().unwrap().mul(&pw[1]);
                pw.push(next);
            }
            t = t.mul(&pw[*e as usize]);
        }
        acc = acc.add(&t);
    }
    acc
}

/// Evaluate a rational function in any field.
pub fn eval_ratfunc<K: Field>(f: &RatFunc, mut val: impl FnMut(usize) -> K) -> Option<K> {
    let n = eval_poly(f.num(), &mut val);
    let d = eval_poly(f.den(), &mut val);
    d.inv().map(|di| n.mul(&di))
}
