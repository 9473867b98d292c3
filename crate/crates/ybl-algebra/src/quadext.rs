use std::fmt;

use crate::field::Field;
use crate::Q;

/// `a + b*sqrt(d)` in Q(sqrt d). A zero `d` marks a plain rational that
/// adopts the discriminant of whatever it is combined with.
#[derive(Clone, Debug)]
pub struct QuadExt {
    a: Q,
    b: Q,
    d: Q,
}

impl PartialEq for QuadExt {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a && self.b == o.b && (self.b.is_zero() || self.d == o.d)
    }
}

impl Eq for QuadExt {}

impl QuadExt {
    pub fn new(a: Q, b: Q, d: Q) -> Self {
        if d.is_zero() {
            assert!(b.is_zero(), "irrational part without a discriminant");
        }
        QuadExt { a, b, d }
    }

    pub fn rational(a: Q) -> Self {
        QuadExt { a, b: Q::zero(), d: Q::zero() }
    }

    pub fn sqrt(d: Q) -> Self {
        QuadExt { a: Q::zero(), b: Q::one(), d }
    }

    pub fn a(&self) -> &Q {
        &self.a
    }

    pub fn b(&self) -> &Q {
        &self.b
    }

    pub fn disc(&self) -> &Q {
        &self.d
    }

    pub fn conj(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -&self.b, d: self.d.clone() }
    }

    pub fn norm(&self) -> Q {
        &self.a * &self.a - &self.b * &self.b * &self.d
    }

    fn disc_with(&self, o: &Self) -> Q {
        match (self.d.is_zero(), o.d.is_zero()) {
            (true, _) => o.d.clone(),
            (_, true) => self.d.clone(),
            _ => {
                assert_eq!(self.d, o.d, "mixed quadratic extensions");
                self.d.clone()
            }
        }
    }
}

impl Field for QuadExt {
    fn zero() -> Self {
        Self::rational(Q::zero())
    }
    fn one() -> Self {
        Self::rational(Q::one())
    }
    fn from_q(q: &Q) -> Self {
        Self::rational(q.clone())
    }
    fn add(&self, o: &Self) -> Self {
        QuadExt { a: &self.a + &o.a, b: &self.b + &o.b, d: self.disc_with(o) }
    }
    fn sub(&self, o: &Self) -> Self {
        QuadExt { a: &self.a - &o.a, b: &self.b - &o.b, d: self.disc_with(o) }
    }
    fn mul(&self, o: &Self) -> Self {
        let d = self.disc_with(o);
        QuadExt { a: &self.a * &o.a + &self.b * &o.b * &d, b: &self.a * &o.b + &self.b * &o.a, d }
    }
    fn neg(&self) -> Self {
        QuadExt { a: -&self.a, b: -&self.b, d: self.d.clone() }
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(QuadExt { a: &self.a / &n, b: -&self.b / &n, d: self.d.clone() })
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + ({})*sqrt({})", self.a, self.b, self.d)
        }
    }
}
