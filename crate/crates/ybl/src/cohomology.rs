//! `H_λ` in the fixed-point restriction model: classes are vectors of values
//! at the fixed points `I ∈ I_λ`, products are pointwise and integrals are
//! localization sums.

use std::sync::Arc;

use ybl_algebra::{eval_ratfunc, Field, Matrix, RatFunc, Role, VarRegistry};

use crate::error::{Result, YblError};
use crate::model::{Op, Sc, Setup, Weight};
use crate::weight_space::{Composition, Sign};
use crate::yangian::inv_or;

/// A class of `H_λ`, stored as its restrictions to the fixed points, indexed
/// like the color words of `V_λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct CohomClass {
    pub lambda: Composition,
    pub values: Vec<Sc>,
}

impl CohomClass {
    pub fn one(w: &Weight) -> Self {
        CohomClass { lambda: w.lambda().clone(), values: vec![Sc::one(); w.dim()] }
    }

    pub fn scalar(w: &Weight, c: Sc) -> Self {
        CohomClass { lambda: w.lambda().clone(), values: vec![c; w.dim()] }
    }

    /// The class whose restriction at `I` is `f(z_{I_1}; …; z_{I_N})`.
    pub fn from_fn(setup: &Setup, w: &Weight, f: impl Fn(&[Vec<Sc>]) -> Sc) -> Self {
        let values = (0..w.dim())
            .map(|k| {
                let gam: Vec<Vec<Sc>> = w.basis.blocks(k).iter().map(|b| b.iter().map(|&a| setup.z(a).clone()).collect()).collect();
                f(&gam)
            })
            .collect();
        CohomClass { lambda: w.lambda().clone(), values }
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.lambda != o.lambda {
            return Err(YblError::Precondition(format!("classes of different weights {} and {}", self.lambda, o.lambda)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(CohomClass { lambda: self.lambda.clone(), values: self.values.iter().zip(&o.values).map(|(a, b)| a.add(b)).collect() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(CohomClass { lambda: self.lambda.clone(), values: self.values.iter().zip(&o.values).map(|(a, b)| a.sub(b)).collect() })
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(CohomClass { lambda: self.lambda.clone(), values: self.values.iter().zip(&o.values).map(|(a, b)| a.mul(b)).collect() })
    }

    pub fn scale(&self, c: &Sc) -> Self {
        CohomClass { lambda: self.lambda.clone(), values: self.values.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }
}

/// Registry of the setup extended by the Chern roots `γ_{p,i}` of `λ`.
pub fn gamma_registry(setup: &Setup, lambda: &Composition) -> Result<Arc<VarRegistry>> {
    let reg = setup.registry();
    let mut v: Vec<(String, Role)> = (0..reg.len()).map(|i| (reg.name(i).to_string(), reg.role(i))).collect();
    for p in 1..=lambda.big_n() {
        for i in 1..=lambda.part(p) {
            v.push((format!("g{p}_{i}"), Role::Gamma(p, i)));
        }
    }
    Ok(VarRegistry::new(v)?)
}

/// Class of a block-symmetric function of `γ`, `z`, `h`, `q` written over [`gamma_registry`].
pub fn class_from_poly(setup: &Setup, lambda: &Composition, f: &RatFunc) -> Result<CohomClass> {
    let Some(reg) = f.registry().cloned() else {
        let c = f.as_constant().ok_or_else(|| YblError::Precondition("class without registry".into()))?;
        return Ok(CohomClass::scalar(&*setup.weight(lambda)?, RatFunc::constant(c)));
    };
    for p in 1..=lambda.big_n() {
        for i in 1..lambda.part(p) {
            if let (Some(a), Some(b)) = (reg.index_of(Role::Gamma(p, i)), reg.index_of(Role::Gamma(p, i + 1))) {
                if f.swap_vars(a, b) != *f {
                    return Err(YblError::Precondition(format!("class is not symmetric in block {p}")));
                }
            }
        }
    }
    let w = setup.weight(lambda)?;
    let mut values = Vec::with_capacity(w.dim());
    for k in 0..w.dim() {
        let blocks = w.basis.blocks(k);
        let val = eval_ratfunc(f, |v| match reg.role(v) {
            Role::Z(a) => setup.z(a).clone(),
            Role::H => setup.h().clone(),
            Role::Q(i) => setup.q(i).clone(),
            Role::Gamma(p, i) => setup.z(blocks[p - 1][i - 1]).clone(),
            _ => setup.var(reg.role(v)).expect("variable known to the setup"),
        })
        .ok_or_else(|| YblError::Degenerate("class denominator at a fixed point".into()))?;
        values.push(val);
    }
    Ok(CohomClass { lambda: lambda.clone(), values })
}

/// `γ_{p,1} + … + γ_{p,λ_p}`.
pub fn gamma_sum(setup: &Setup, lambda: &Composition, p: usize) -> Result<CohomClass> {
    let w = setup.weight(lambda)?;
    Ok(CohomClass::from_fn(setup, &w, |g| g[p - 1].iter().fold(Sc::zero(), |a, b| a.add(b))))
}

/// `σ_r(Γ_p)`.
pub fn gamma_elementary(setup: &Setup, lambda: &Composition, p: usize, r: usize) -> Result<CohomClass> {
    let w = setup.weight(lambda)?;
    Ok(CohomClass::from_fn(setup, &w, |g| elementary(&g[p - 1], r)))
}

pub(crate) fn elementary(xs: &[Sc], r: usize) -> Sc {
    let mut e = vec![Sc::zero(); r + 1];
    e[0] = Sc::one();
    for x in xs {
        for k in (1..=r).rev() {
            e[k] = e[k].add(&e[k - 1].mul(x));
        }
    }
    e[r].clone()
}

/// `f_{p,s}`: `∏_i (1 + h/(u − γ_{p,i})) = 1 + h Σ_s f_{p,s} u^{-s}`.
pub fn f_ps(setup: &Setup, lambda: &Composition, p: usize, s: usize) -> Result<CohomClass> {
    let w = setup.weight(lambda)?;
    let h = setup.h().clone();
    Ok(CohomClass::from_fn(setup, &w, |g| {
        // 1 + h Σ f u^{-s} = ∏ (u − γ + h)/(u − γ); expand with complete symmetric sums
        let mut ser = vec![Sc::zero(); s + 1];
        ser[0] = Sc::one();
        for gam in &g[p - 1] {
            // (1 + h/(u−γ)) = 1 + Σ_{k≥1} h γ^{k−1} u^{-k}
            let mut next = vec![Sc::zero(); s + 1];
            for (a, x) in ser.iter().enumerate() {
                next[a] = next[a].add(x);
                let mut pw = h.clone();
                for b in a + 1..=s {
                    next[b] = next[b].add(&x.mul(&pw));
                    pw = pw.mul(gam);
                }
            }
            ser = next;
        }
        ser[s].div(&h)
    }))
}

/// Which space the class is sent to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NuKind {
    Plus,
    Eq,
    Minus,
}

impl NuKind {
    pub fn xi_sign(self) -> Sign {
        match self {
            NuKind::Minus => Sign::Minus,
            _ => Sign::Plus,
        }
    }

    /// Sign of the Yangian action on `V` that this identification transports.
    pub fn v_sign(self) -> Sign {
        self.xi_sign()
    }

    /// Sign of the induced action on cohomology.
    pub fn h_sign(self) -> Sign {
        match self {
            NuKind::Plus => Sign::Plus,
            _ => Sign::Minus,
        }
    }
}

/// Integration over `F_λ` or `T*F_λ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntKind {
    Fl,
    Tfl,
}

/// Localization integral; over `F_λ` the result must be a polynomial.
pub fn integrate(setup: &Setup, kind: IntKind, c: &CohomClass) -> Result<Sc> {
    let w = setup.weight(&c.lambda)?;
    let mut acc = Sc::zero();
    for k in 0..w.dim() {
        let mut den = w.r[k].clone();
        if kind == IntKind::Tfl {
            den = den.mul(&w.q[k]);
        }
        acc = acc.add(&c.values[k].mul(&inv_or(&den, "tangent weight")?));
    }
    let acc = acc.scale_q(&ybl_algebra::qi(Setup::cross_sign(&c.lambda)));
    if kind == IntKind::Fl && !acc.is_polynomial() {
        return Err(YblError::Check(format!("integral over F_{} has poles: {acc}", c.lambda)));
    }
    Ok(acc)
}

fn nu_weights(w: &Weight, kind: NuKind) -> Result<Vec<Sc>> {
    (0..w.dim())
        .map(|k| {
            let r = inv_or(&w.r[k], "R(z_I)")?;
            Ok(if kind == NuKind::Plus { w.q[k].mul(&r) } else { r })
        })
        .collect()
}

/// Matrix of `ν` from restriction coordinates to the `v` basis.
pub fn nu_matrix(setup: &Setup, kind: NuKind, lambda: &Composition) -> Result<Op> {
    let w = setup.weight(lambda)?;
    let d = Matrix::diagonal(&nu_weights(&w, kind)?);
    Ok(w.xi_matrix(kind.xi_sign()).mul(&d))
}

pub fn nu_map(setup: &Setup, kind: NuKind, c: &CohomClass) -> Result<Vec<Sc>> {
    Ok(nu_matrix(setup, kind, &c.lambda)?.mul_vec(&c.values))
}

/// Inverse of `ν`, reading a vector of `V_λ` as a class.
pub fn nu_inverse(setup: &Setup, kind: NuKind, lambda: &Composition, v: &[Sc]) -> Result<CohomClass> {
    let values = nu_matrix(setup, kind, lambda)?.solve_vec(v)?;
    Ok(CohomClass { lambda: lambda.clone(), values })
}

/// `μ(c) = Ξ · diag(c) · Ξ^{-1}`, the Bethe operator with `μ(c) ν(g) = ν(cg)`.
pub fn mu_map(setup: &Setup, kind: NuKind, c: &CohomClass) -> Result<Op> {
    let w = setup.weight(&c.lambda)?;
    let xi = w.xi_matrix(kind.xi_sign());
    Ok(xi.mul(&Matrix::diagonal(&c.values)).mul(&xi.inverse()?))
}

/// An operator `V_λ → V_μ` transported to restriction coordinates:
/// `ν_μ^{-1} M ν_λ`.
pub fn rho_on_h(setup: &Setup, kind: NuKind, src: &Composition, tgt: &Composition, m: &Op) -> Result<Op> {
    let ns = nu_matrix(setup, kind, src)?;
    let nt = nu_matrix(setup, kind, tgt)?;
    Ok(nt.inverse()?.mul(m).mul(&ns))
}

/// The multiplication formula for `ρ^±(A_p(u))` on restriction coordinates.
pub fn a_on_h(setup: &Setup, p: usize, lambda: &Composition, u: &Sc) -> Result<Op> {
    let w = setup.weight(lambda)?;
    let h = setup.h();
    let mut diag = Vec::new();
    for k in 0..w.dim() {
        let mut c = Sc::one();
        for b in w.basis.blocks(k).iter().take(p) {
            for &a in b {
                let d = u.sub(setup.z(a));
                c = c.mul(&d.add(h).mul(&inv_or(&d, "u - z")?));
            }
        }
        diag.push(c);
    }
    Ok(Matrix::diagonal(&diag))
}

/// The `γ`-substitution formulas for `ρ^±(E_p(u)): H_{λ−α_p} → H_λ` (when `raise`)
/// or `ρ^±(F_p(u)): H_{λ+α_p} → H_λ`, on restriction coordinates.
/// Returns `None` if the source weight is empty.
pub fn ef_on_h(setup: &Setup, sign: Sign, raise: bool, p: usize, lambda: &Composition, u: &Sc) -> Result<Option<(Composition, Op)>> {
    let src_l = if raise { lambda.shifted(p + 1, p) } else { lambda.shifted(p, p + 1) };
    let Some(src_l) = src_l else { return Ok(None) };
    let tgt = setup.weight(lambda)?;
    let src = setup.weight(&src_l)?;
    let h = setup.h();
    // E moves an element of block p into block p+1 of the target point; F the reverse.
    let (from, to) = if raise { (p, p + 1) } else { (p + 1, p) };
    let mut m = Matrix::zeros(tgt.dim(), src.dim());
    for (k, word) in tgt.basis.words().iter().enumerate() {
        let blocks = tgt.basis.blocks(k);
        let mine = &blocks[from - 1];
        let other = &blocks[to - 1];
        for &i in mine {
            let zi = setup.z(i);
            let mut c = inv_or(&u.sub(zi), "u - z")?;
            for &j in mine {
                if j == i {
                    continue;
                }
                let zj = setup.z(j);
                c = match sign {
                    Sign::Plus => {
                        let d = zi.sub(zj);
                        let t = if raise { d.sub(h) } else { d.add(h) };
                        c.mul(&t).mul(&inv_or(&d, "z_i - z_j")?)
                    }
                    Sign::Minus => {
                        let d = if raise { zj.sub(zi) } else { zi.sub(zj) };
                        c.mul(&inv_or(&d, "z_i - z_j")?)
                    }
                };
            }
            if sign == Sign::Minus {
                for &kk in other {
                    let zk = setup.z(kk);
                    let t = if raise { zi.sub(zk).add(h) } else { zk.sub(zi).add(h) };
                    c = c.mul(&t);
                }
            }
            let mut w2 = word.clone();
            w2[i - 1] = to;
            let col = src.basis.index_of(&w2).expect("moved point");
            m.set(k, col, c);
        }
    }
    Ok(Some((src_l, m)))
}

/// A basis of `H_λ` over the scalars by monomials in the block elementary
/// symmetric classes `σ_r(Γ_p)`.
#[derive(Clone, Debug)]
pub struct HBasis {
    pub lambda: Composition,
    /// Exponents `(p, r) ↦ a` of each monomial, listed `p`-major.
    pub exponents: Vec<Vec<usize>>,
    pub classes: Vec<CohomClass>,
    /// Columns are the restriction vectors of `classes`.
    pub matrix: Op,
    pub inverse: Op,
}

pub(crate) fn monomials_by_degree(weights: &[usize], max_deg: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for deg in 0..=max_deg {
        fn rec(weights: &[usize], left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == weights.len() {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let w = weights[cur.len()];
            for a in 0..=left / w {
                cur.push(a);
                rec(weights, left - a * w, cur, out);
                cur.pop();
            }
        }
        let mut level = Vec::new();
        rec(weights, deg, &mut Vec::new(), &mut level);
        level.sort();
        level.reverse();
        out.extend(level);
    }
    out
}

impl HBasis {
    pub fn new(setup: &Setup, lambda: &Composition) -> Result<Self> {
        let w = setup.weight(lambda)?;
        let d = w.dim();
        // σ_r(Γ_N) is redundant given the relations, so only blocks 1..N−1 are used
        let gens: Vec<(usize, usize)> =
            (1..lambda.big_n()).flat_map(|p| (1..=lambda.part(p)).map(move |r| (p, r))).collect();
        let gen_classes: Vec<CohomClass> = gens.iter().map(|&(p, r)| gamma_elementary(setup, lambda, p, r)).collect::<Result<_>>()?;
        let weights: Vec<usize> = gens.iter().map(|&(_, r)| r).collect();
        let max_deg = lambda.cross_degree();
        let mut exponents = Vec::new();
        let mut classes = Vec::new();
        let mut cols: Vec<Vec<Sc>> = Vec::new();
        for e in monomials_by_degree(&weights, max_deg) {
            let mut c = CohomClass::one(&w);
            for (g, &a) in gen_classes.iter().zip(&e) {
                for _ in 0..a {
                    c = c.mul(g)?;
                }
            }
            cols.push(c.values.clone());
            if Matrix::from_columns(d, &cols).rank() == cols.len() {
                exponents.push(e);
                classes.push(c);
                if classes.len() == d {
                    break;
                }
            } else {
                cols.pop();
            }
        }
        if classes.len() < d {
            return Err(YblError::Degenerate(format!("no monomial basis for H_{lambda} at these parameters")));
        }
        let matrix = Matrix::from_columns(d, &cols);
        let inverse = matrix.inverse()?;
        Ok(HBasis { lambda: lambda.clone(), exponents, classes, matrix, inverse })
    }

    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    /// Coordinates of a class in this basis.
    pub fn coords(&self, c: &CohomClass) -> Vec<Sc> {
        self.inverse.mul_vec(&c.values)
    }

    /// An operator on restriction coordinates written in basis coordinates.
    pub fn conjugate(&self, m: &Op) -> Op {
        self.inverse.mul(m).mul(&self.matrix)
    }

    /// Rectangular operator between two bases.
    pub fn between(src: &HBasis, tgt: &HBasis, m: &Op) -> Op {
        tgt.inverse.mul(m).mul(&src.matrix)
    }

    pub fn label(&self, k: usize) -> String {
        let mut gens = Vec::new();
        for p in 1..self.lambda.big_n() {
            for r in 1..=self.lambda.part(p) {
                gens.push(format!("e{p}_{r}"));
            }
        }
        let parts: Vec<String> = gens
            .iter()
            .zip(&self.exponents[k])
            .filter(|(_, &a)| a > 0)
            .map(|(g, &a)| if a == 1 { g.clone() } else { format!("{g}^{a}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::QMode;
    use crate::weight_space::shapovalov;
    use crate::yangian::{a_series, aef_by_minors, bethe_generators, c_generators, dynamical_hamiltonians, AefSeries, HamKind};
    use ybl_algebra::{q, qi};

    fn lam(p: &[usize]) -> Composition {
        Composition::new(p.to_vec()).unwrap()
    }

    fn spec(n: usize, big_n: usize) -> Setup {
        let z = [qi(0), qi(1), qi(5), qi(17), q(-7, 3)];
        Setup::specialized(z[..n].to_vec(), qi(3), big_n, QMode::Symbolic).unwrap()
    }

    #[test]
    fn integrals_for_two_points() {
        let s = Setup::symbolic(2, 2).unwrap();
        let l = lam(&[1, 1]);
        let one = CohomClass::one(&s.weight(&l).unwrap());
        let g = gamma_sum(&s, &l, 1).unwrap();
        assert!(integrate(&s, IntKind::Fl, &one).unwrap().is_zero());
        assert_eq!(integrate(&s, IntKind::Fl, &g).unwrap(), Sc::from_int(-1));
        let (z1, z2, h) = (s.z(1).clone(), s.z(2).clone(), s.h().clone());
        let den = z1.sub(&z2).add(&h).mul(&z2.sub(&z1).add(&h));
        assert_eq!(integrate(&s, IntKind::Tfl, &one).unwrap(), Sc::from_int(2).div(&den));
        assert_eq!(integrate(&s, IntKind::Tfl, &g).unwrap(), z1.add(&z2).sub(&h).div(&den));
    }

    #[test]
    fn class_from_polynomial_representative() {
        let s = Setup::symbolic(2, 2).unwrap();
        let l = lam(&[1, 1]);
        let reg = gamma_registry(&s, &l).unwrap();
        let g = RatFunc::var_role(&reg, Role::Gamma(1, 1)).unwrap();
        let c = class_from_poly(&s, &l, &g).unwrap();
        assert_eq!(c.values, vec![s.z(1).clone(), s.z(2).clone()]);
        let l = lam(&[2, 1]);
        let s = Setup::symbolic(3, 2).unwrap();
        let reg = gamma_registry(&s, &l).unwrap();
        let g1 = RatFunc::var_role(&reg, Role::Gamma(1, 1)).unwrap();
        let g2 = RatFunc::var_role(&reg, Role::Gamma(1, 2)).unwrap();
        assert!(class_from_poly(&s, &l, &g1).is_err());
        let sym = class_from_poly(&s, &l, &g1.mul(&g2)).unwrap();
        assert_eq!(sym, gamma_elementary(&s, &l, 1, 2).unwrap());
        // Σ_all γ = Σ z
        let total = gamma_sum(&s, &l, 1).unwrap().add(&gamma_sum(&s, &l, 2).unwrap()).unwrap();
        let zsum = s.zs().iter().fold(Sc::zero(), |a, b| a.add(b));
        assert_eq!(total, CohomClass::scalar(&s.weight(&l).unwrap(), zsum));
    }

    #[test]
    fn nu_and_mu_for_two_points() {
        let s = Setup::symbolic(2, 2).unwrap();
        let l = lam(&[1, 1]);
        let (z1, z2, h) = (s.z(1).clone(), s.z(2).clone(), s.h().clone());
        let one = CohomClass::one(&s.weight(&l).unwrap());
        let g = gamma_sum(&s, &l, 1).unwrap();
        assert_eq!(nu_map(&s, NuKind::Plus, &one).unwrap(), vec![Sc::one(), Sc::one()]);
        assert_eq!(nu_map(&s, NuKind::Plus, &g).unwrap(), vec![z1.add(&h), z2.clone()]);
        let dm = z1.sub(&z2).add(&h);
        assert_eq!(nu_map(&s, NuKind::Minus, &one).unwrap(), vec![Sc::one().div(&dm), Sc::from_int(-1).div(&dm)]);
        assert_eq!(nu_map(&s, NuKind::Minus, &g).unwrap(), vec![z1.div(&dm), z2.sub(&h).neg().div(&dm)]);
        let de = z1.sub(&z2).sub(&h);
        assert_eq!(nu_map(&s, NuKind::Eq, &one).unwrap(), vec![Sc::one().div(&de), Sc::from_int(-1).div(&de)]);
        assert_eq!(nu_map(&s, NuKind::Eq, &g).unwrap(), vec![z1.sub(&h).div(&de), z2.neg().div(&de)]);
        let up = Matrix::new(2, 2, vec![z1.clone(), h.clone(), Sc::zero(), z2.clone()]).unwrap();
        let lo = Matrix::new(2, 2, vec![z1.clone(), Sc::zero(), h.clone(), z2.clone()]).unwrap();
        assert_eq!(mu_map(&s, NuKind::Plus, &g).unwrap(), up);
        assert_eq!(mu_map(&s, NuKind::Eq, &g).unwrap(), up);
        assert_eq!(mu_map(&s, NuKind::Minus, &g).unwrap(), lo);
        for k in [NuKind::Plus, NuKind::Eq, NuKind::Minus] {
            assert_eq!(mu_map(&s, k, &one).unwrap(), Matrix::identity(2));
        }
    }

    #[test]
    fn pairing_bridge() {
        let s = spec(4, 2);
        for l in [lam(&[2, 2]), lam(&[3, 1]), lam(&[1, 3])] {
            let b = HBasis::new(&s, &l).unwrap();
            let sg = Sc::from_int(Setup::cross_sign(&l));
            for f in &b.classes {
                for g in &b.classes {
                    let fg = f.mul(g).unwrap();
                    let nm = nu_map(&s, NuKind::Minus, g).unwrap();
                    let lhs = shapovalov(&nu_map(&s, NuKind::Plus, f).unwrap(), &nm).unwrap();
                    assert_eq!(lhs, integrate(&s, IntKind::Fl, &fg).unwrap().mul(&sg));
                    let lhs = shapovalov(&nu_map(&s, NuKind::Eq, f).unwrap(), &nm).unwrap();
                    assert_eq!(lhs, integrate(&s, IntKind::Tfl, &fg).unwrap().mul(&sg));
                }
            }
        }
    }

    #[test]
    fn integrals_of_polynomial_classes_have_no_poles() {
        let s = Setup::symbolic(3, 2).unwrap();
        for l in Composition::all(3, 2) {
            let b = HBasis::new(&s, &l).unwrap();
            for f in &b.classes {
                integrate(&s, IntKind::Fl, f).unwrap();
            }
        }
    }

    #[test]
    fn mu_matches_generator_images() {
        let s = spec(3, 3);
        for l in [lam(&[1, 1, 1]), lam(&[2, 1, 0]), lam(&[0, 2, 1])] {
            for kind in [NuKind::Plus, NuKind::Minus] {
                let c = c_generators(&s, kind.xi_sign(), &l, 3).unwrap();
                for p in 1..=3 {
                    for k in 1..=3 {
                        let f = f_ps(&s, &l, p, k).unwrap();
                        assert_eq!(mu_map(&s, kind, &f).unwrap(), c[&(p, k)], "{kind:?} {l} f[{p},{k}]");
                    }
                }
            }
        }
    }

    #[test]
    fn regular_representation() {
        let s = spec(3, 2);
        for l in Composition::all(3, 2) {
            let b = HBasis::new(&s, &l).unwrap();
            for kind in [NuKind::Plus, NuKind::Eq, NuKind::Minus] {
                for f in &b.classes {
                    let m = mu_map(&s, kind, f).unwrap();
                    for g in &b.classes {
                        assert_eq!(m.mul_vec(&nu_map(&s, kind, g).unwrap()), nu_map(&s, kind, &f.mul(g).unwrap()).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn transported_actions_match_substitution_formulas() {
        let s = spec(3, 3);
        let u = RatFunc::constant(q(23, 5));
        for kind in [NuKind::Plus, NuKind::Eq, NuKind::Minus] {
            let hs = kind.h_sign();
            for l in Composition::all(3, 3) {
                for p in 1..=3 {
                    let a = a_series(&s, kind.v_sign(), p, &l).unwrap().eval(&u).unwrap();
                    assert_eq!(rho_on_h(&s, kind, &l, &l, &a).unwrap(), a_on_h(&s, p, &l, &u).unwrap());
                }
                for p in 1..=2 {
                    for raise in [true, false] {
                        let Some((src, formula)) = ef_on_h(&s, hs, raise, p, &l, &u).unwrap() else { continue };
                        let op = if raise {
                            aef_by_minors(&s, kind.v_sign(), AefSeries::E, p, &src, &u)
                        } else {
                            aef_by_minors(&s, kind.v_sign(), AefSeries::F, p, &src, &u)
                        }
                        .unwrap()
                        .unwrap()
                        .1;
                        assert_eq!(rho_on_h(&s, kind, &src, &l, &op).unwrap(), formula, "{kind:?} {l} p={p} raise={raise}");
                    }
                }
            }
        }
    }

    #[test]
    fn dynamical_hamiltonian_is_multiplication_by_gamma_sum() {
        let s = spec(3, 3);
        for l in Composition::all(3, 3) {
            for kind in [NuKind::Plus, NuKind::Minus] {
                let xs = dynamical_hamiltonians(&s, kind.v_sign(), HamKind::Inf, &l).unwrap();
                for i in 1..=3 {
                    let m = rho_on_h(&s, kind, &l, &l, &xs[i - 1]).unwrap();
                    assert_eq!(m, Matrix::diagonal(&gamma_sum(&s, &l, i).unwrap().values));
                }
            }
        }
    }

    #[test]
    fn bethe_operators_are_self_adjoint_for_tfl_pairing() {
        let s = Setup::specialized(vec![qi(0), qi(1), qi(5)], qi(3), 2, QMode::Values(vec![qi(2), qi(-5)])).unwrap();
        for l in Composition::all(3, 2) {
            let b = HBasis::new(&s, &l).unwrap();
            let set = bethe_generators(&s, Sign::Minus, &l, 3).unwrap();
            for x in set.all_ops() {
                let m = rho_on_h(&s, NuKind::Minus, &l, &l, x).unwrap();
                for f in &b.classes {
                    for g in &b.classes {
                        let xf = CohomClass { lambda: l.clone(), values: m.mul_vec(&f.values) };
                        let xg = CohomClass { lambda: l.clone(), values: m.mul_vec(&g.values) };
                        assert_eq!(
                            integrate(&s, IntKind::Tfl, &g.mul(&xf).unwrap()).unwrap(),
                            integrate(&s, IntKind::Tfl, &f.mul(&xg).unwrap()).unwrap()
                        );
                    }
                }
            }
        }
    }
}
