use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::AlgebraError;
use crate::registry::VarRegistry;
use crate::Q;

type Exps = SmallVec<[u32; 8]>;

/// Exponent vector, trailing zeros trimmed so equal monomials compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(Exps);

impl Mono {
    pub fn one() -> Self {
        Mono(Exps::new())
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        let mut v: Exps = exps.iter().copied().collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        Mono(v)
    }

    pub fn var(i: usize, e: u32) -> Self {
        let mut v = Exps::from_elem(0, i + 1);
        v[i] = e;
        Mono::from_exps(&v)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let (a, b) = if self.0.len() >= o.0.len() { (self, o) } else { (o, self) };
        let mut v = a.0.clone();
        for (x, y) in v.iter_mut().zip(b.0.iter()) {
            *x += *y;
        }
        Mono(v)
    }

    pub fn div(&self, o: &Mono) -> Option<Mono> {
        if o.0.len() > self.0.len() {
            return None;
        }
        let mut v = self.0.clone();
        for (x, y) in v.iter_mut().zip(o.0.iter()) {
            if *x < *y {
                return None;
            }
            *x -= *y;
        }
        while v.last() == Some(&0) {
            v.pop();
        }
        Some(Mono(v))
    }

    pub fn gcd(&self, o: &Mono) -> Mono {
        let v: Exps = self.0.iter().zip(o.0.iter()).map(|(a, b)| *a.min(b)).collect();
        Mono::from_exps(&v)
    }

    /// Same monomial with the exponent of variable `i` replaced.
    pub fn with(&self, i: usize, e: u32) -> Mono {
        let mut v = self.0.clone();
        if v.len() <= i {
            if e == 0 {
                return self.clone();
            }
            v.resize(i + 1, 0);
        }
        v[i] = e;
        while v.last() == Some(&0) {
            v.pop();
        }
        Mono(v)
    }

    pub fn swap(&self, i: usize, j: usize) -> Mono {
        let (a, b) = (self.exp(i), self.exp(j));
        self.with(i, b).with(j, a)
    }

    pub fn grlex_cmp(&self, o: &Mono) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| {
            let n = self.0.len().max(o.0.len());
            for i in 0..n {
                match self.exp(i).cmp(&o.exp(i)) {
                    Ordering::Equal => continue,
                    c => return c,
                }
            }
            Ordering::Equal
        })
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.grlex_cmp(o)
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

pub(crate) fn merge_registry(
    a: &Option<Arc<VarRegistry>>,
    b: &Option<Arc<VarRegistry>>,
) -> Result<Option<Arc<VarRegistry>>, AlgebraError> {
    match (a, b) {
        (None, r) | (r, None) => Ok(r.clone()),
        (Some(x), Some(y)) => {
            if Arc::ptr_eq(x, y) || **x == **y {
                Ok(Some(x.clone()))
            } else {
                Err(AlgebraError::RegistryMismatch)
            }
        }
    }
}

/// Sparse multivariate polynomial with rational coefficients, terms sorted
/// in descending graded-lex order.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    reg: Option<Arc<VarRegistry>>,
    terms: Vec<(Mono, Q)>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms
    }
}

impl Eq for MultiPoly {}

fn sort_merge(mut v: Vec<(Mono, Q)>) -> Vec<(Mono, Q)> {
    v.sort_unstable_by(|a, b| b.0.cmp(&a.0));
    let mut out: Vec<(Mono, Q)> = Vec::with_capacity(v.len());
    for (m, c) in v {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc += c,
            _ => out.push((m, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { reg: None, terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly { reg: None, terms: vec![(Mono::one(), c)] }
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Q::from_integer(c.into()))
    }

    pub fn var(reg: &Arc<VarRegistry>, i: usize) -> Self {
        assert!(i < reg.len(), "variable index {i} outside registry {reg}");
        MultiPoly { reg: Some(reg.clone()), terms: vec![(Mono::var(i, 1), Q::one())] }
    }

    pub fn var_named(reg: &Arc<VarRegistry>, name: &str) -> Result<Self, AlgebraError> {
        let i = reg.index(name).ok_or_else(|| AlgebraError::UnknownVariable(name.into()))?;
        Ok(Self::var(reg, i))
    }

    pub fn from_terms(reg: Option<Arc<VarRegistry>>, terms: Vec<(Mono, Q)>) -> Self {
        MultiPoly { reg, terms: sort_merge(terms) }
    }

    pub fn registry(&self) -> Option<&Arc<VarRegistry>> {
        self.reg.as_ref()
    }

    pub fn with_registry(mut self, reg: &Arc<VarRegistry>) -> Self {
        self.reg = Some(reg.clone());
        self
    }

    pub fn terms(&self) -> &[(Mono, Q)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<Q> {
        match self.terms.as_slice() {
            [] => Some(Q::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(&Mono, &Q)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(var)).max().unwrap_or(0)
    }

    /// Bitmask of the variables that occur.
    pub fn support_mask(&self) -> u64 {
        let mut mask = 0u64;
        for (m, _) in &self.terms {
            for (i, e) in m.exps().iter().enumerate() {
                if *e > 0 {
                    mask |= 1 << i;
                }
            }
        }
        mask
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, AlgebraError> {
        let reg = merge_registry(&self.reg, &o.reg)?;
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Ok(MultiPoly { reg, terms: out })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.try_add(&o.neg())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, AlgebraError> {
        let reg = merge_registry(&self.reg, &o.reg)?;
        if self.is_zero() || o.is_zero() {
            return Ok(MultiPoly { reg, terms: Vec::new() });
        }
        if let Some(c) = o.constant_value() {
            return Ok(self.scale(&c).with_reg(reg));
        }
        if let Some(c) = self.constant_value() {
            return Ok(o.scale(&c).with_reg(reg));
        }
        let mut acc: HashMap<Mono, Q> = HashMap::with_capacity(self.len() * o.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = m1.mul(m2);
                let c = c1 * c2;
                match acc.get_mut(&m) {
                    Some(v) => *v += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<(Mono, Q)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Ok(MultiPoly { reg, terms })
    }

    fn with_reg(mut self, reg: Option<Arc<VarRegistry>>) -> Self {
        self.reg = reg;
        self
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            reg: self.reg.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return MultiPoly { reg: self.reg.clone(), terms: Vec::new() };
        }
        MultiPoly {
            reg: self.reg.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> Self {
        MultiPoly {
            reg: self.reg.clone(),
            terms: self.terms.iter().map(|(x, c)| (x.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = MultiPoly::one().with_reg(self.reg.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Full evaluation at a point indexed by variable.
    pub fn eval(&self, point: &[Q]) -> Result<Q, AlgebraError> {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in m.exps().iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                let v = point.get(i).ok_or_else(|| AlgebraError::UnknownVariable(self.var_name(i)))?;
                t *= num_traits::pow(v.clone(), *e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitute a rational value for one variable.
    pub fn eval_var(&self, var: usize, val: &Q) -> Self {
        let mut powers: Vec<Q> = vec![Q::one()];
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let e = m.exp(var) as usize;
                while powers.len() <= e {
                    let next = powers.last().unwrap() * val;
                    powers.push(next);
                }
                (m.with(var, 0), c * &powers[e])
            })
            .collect();
        MultiPoly::from_terms(self.reg.clone(), terms)
    }

    /// Substitute a polynomial for one variable.
    pub fn substitute(&self, var: usize, by: &MultiPoly) -> Result<Self, AlgebraError> {
        if let Some(r) = &self.reg {
            if var >= r.len() {
                return Err(AlgebraError::UnknownVariable(format!("#{var}")));
            }
        }
        let reg = merge_registry(&self.reg, &by.reg)?;
        let mut powers: Vec<MultiPoly> = vec![MultiPoly::one()];
        let mut acc = MultiPoly::zero().with_reg(reg.clone());
        let mut plain: Vec<(Mono, Q)> = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(var) as usize;
            if e == 0 {
                plain.push((m.clone(), c.clone()));
                continue;
            }
            while powers.len() <= e {
                let next = &powers[powers.len() - 1] * by;
                powers.push(next);
            }
            let t = powers[e].mul_mono(&m.with(var, 0)).scale(c);
            acc = acc.try_add(&t)?;
        }
        acc.try_add(&MultiPoly::from_terms(reg, plain))
    }

    pub fn derivative(&self, var: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(var) > 0)
            .map(|(m, c)| {
                let e = m.exp(var);
                (m.with(var, e - 1), c * Q::from_integer(e.into()))
            })
            .collect();
        MultiPoly::from_terms(self.reg.clone(), terms)
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.swap(i, j), c.clone())).collect();
        MultiPoly::from_terms(self.reg.clone(), terms)
    }

    /// Coefficient of `var^d`, as a polynomial free of `var`.
    pub fn coeff_in(&self, var: usize, d: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(var) == d)
            .map(|(m, c)| (m.with(var, 0), c.clone()))
            .collect();
        MultiPoly::from_terms(self.reg.clone(), terms)
    }

    /// All coefficients with respect to `var`, index = exponent.
    pub fn coeffs_in(&self, var: usize) -> Vec<Self> {
        let d = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Mono, Q)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            buckets[m.exp(var) as usize].push((m.with(var, 0), c.clone()));
        }
        buckets.into_iter().map(|t| MultiPoly::from_terms(self.reg.clone(), t)).collect()
    }

    /// Exact quotient, or `None` when `g` does not divide `self`.
    pub fn exact_div(&self, g: &MultiPoly) -> Option<MultiPoly> {
        if g.is_zero() {
            return None;
        }
        if let Some(c) = g.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (gm, gc) = g.leading().unwrap();
        let (gm, gc) = (gm.clone(), gc.clone());
        let mut r = self.clone();
        let mut q: Vec<(Mono, Q)> = Vec::new();
        while let Some((rm, rc)) = r.leading() {
            let m = rm.div(&gm)?;
            let c = rc / &gc;
            let sub = g.mul_mono(&m).scale(&c);
            r = r.try_sub(&sub).ok()?;
            q.push((m, c));
        }
        Some(MultiPoly::from_terms(merge_registry(&self.reg, &g.reg).ok()?, q))
    }

    /// `self = content * prim` where `prim` has coprime integer coefficients
    /// and a positive leading coefficient.
    pub fn primitive_z(&self) -> (Q, Vec<(Mono, BigInt)>) {
        if self.is_zero() {
            return (Q::zero(), Vec::new());
        }
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.terms.iter().map(|(_, c)| c.numer() * (&den / c.denom())).collect();
        let mut g = BigInt::zero();
        for i in &ints {
            g = g.gcd(i);
            if g.is_one() {
                break;
            }
        }
        if ints[0].is_negative() {
            g = -g;
        }
        let prim = self.terms.iter().zip(ints).map(|((m, _), i)| (m.clone(), i / &g)).collect();
        (Q::new(g, den), prim)
    }

    pub fn from_z(reg: Option<Arc<VarRegistry>>, z: Vec<(Mono, BigInt)>) -> Self {
        MultiPoly { reg, terms: z.into_iter().map(|(m, c)| (m, Q::from_integer(c))).collect() }
    }

    /// Re-express over another registry, matching variables by name.
    pub fn reembed(&self, target: &Arc<VarRegistry>) -> Result<Self, AlgebraError> {
        let Some(src) = &self.reg else {
            return Ok(self.clone().with_reg(Some(target.clone())));
        };
        let map: Vec<Option<usize>> = src.names().iter().map(|n| target.index(n)).collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, x) in m.exps().iter().enumerate() {
                if *x == 0 {
                    continue;
                }
                let j = map[i].ok_or_else(|| AlgebraError::UnknownVariable(src.name(i).into()))?;
                e[j] = *x;
            }
            terms.push((Mono::from_exps(&e), c.clone()));
        }
        Ok(MultiPoly::from_terms(Some(target.clone()), terms))
    }

    fn var_name(&self, i: usize) -> String {
        match &self.reg {
            Some(r) if i < r.len() => r.name(i).to_string(),
            _ => format!("x{i}"),
        }
    }

    pub(crate) fn fmt_mono(&self, m: &Mono) -> String {
        let mut parts = Vec::new();
        for (i, e) in m.exps().iter().enumerate() {
            match *e {
                0 => {}
                1 => parts.push(self.var_name(i)),
                e => parts.push(format!("{}^{e}", self.var_name(i))),
            }
        }
        parts.join("*")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", self.fmt_mono(m))?;
            } else {
                write!(f, "{a}*{}", self.fmt_mono(m))?;
            }
        }
        Ok(())
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl std::ops::$tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: &MultiPoly) -> MultiPoly {
                self.$try(o).expect("polynomial registry mismatch")
            }
        }
        impl std::ops::$tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: MultiPoly) -> MultiPoly {
                (&self).$try(&o).expect("polynomial registry mismatch")
            }
        }
    };
}

poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::Role;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn reg() -> Arc<VarRegistry> {
        VarRegistry::zhq(2, 2, true)
    }

    #[test]
    fn additive_inverse() {
        let r = reg();
        let z1 = MultiPoly::var(&r, 0);
        let z2 = MultiPoly::var(&r, 1);
        assert!((&(&z1 - &z2) + &(&z2 - &z1)).is_zero());
    }

    #[test]
    fn eval_shift_factor() {
        let r = reg();
        let p = &(&MultiPoly::var(&r, 0) - &MultiPoly::var(&r, 1)) + &MultiPoly::var(&r, 2);
        let v = p.eval(&[q(3, 1), q(1, 1), q(1, 2)]).unwrap();
        assert_eq!(v, q(5, 2));
    }

    #[test]
    fn derivative_of_product() {
        let r = reg();
        let p = &MultiPoly::var(&r, 3) * &MultiPoly::var(&r, 4);
        assert_eq!(p.derivative(3), MultiPoly::var(&r, 4));
    }

    #[test]
    fn exact_division() {
        let r = reg();
        let z1 = MultiPoly::var(&r, 0);
        let z2 = MultiPoly::var(&r, 1);
        let a = &(&z1 * &z1) - &(&z2 * &z2);
        let b = &z1 - &z2;
        assert_eq!(a.exact_div(&b).unwrap(), &z1 + &z2);
        assert!(b.exact_div(&(&z1 + &z2)).is_none());
    }

    #[test]
    fn substitute_and_swap() {
        let r = reg();
        let z1 = MultiPoly::var(&r, 0);
        let z2 = MultiPoly::var(&r, 1);
        let h = MultiPoly::var(&r, 2);
        let p = &(&z1 - &z2) + &h;
        let s = p.substitute(0, &(&z2 + &h)).unwrap();
        assert_eq!(s, &h + &h);
        assert_eq!(p.swap_vars(0, 1), &(&z2 - &z1) + &h);
    }

    #[test]
    fn registry_mismatch_is_an_error() {
        let a = MultiPoly::var(&reg(), 0);
        let other = VarRegistry::new(vec![("u", Role::U)]).unwrap();
        let b = MultiPoly::var(&other, 0);
        assert_eq!(a.try_add(&b), Err(AlgebraError::RegistryMismatch));
    }

    #[test]
    fn display_is_grlex() {
        let r = reg();
        let z1 = MultiPoly::var(&r, 0);
        let h = MultiPoly::var(&r, 2);
        let p = &(&z1 * &z1) - &(&h.scale(&q(3, 2)) - &MultiPoly::from_int(1));
        assert_eq!(p.to_string(), "z1^2 - 3/2*h + 1");
    }
}
