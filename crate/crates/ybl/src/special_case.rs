//! Full flags, `N = n`, `λ = (1, …, 1)`: the degenerate affine Hecke actions
//! `τ^±` on `H_λ`, the elements `Y^k_i`, Bethe-ansatz idempotents for two
//! points, and the series solutions of the quantum differential equation.

use ybl_algebra::{series_div, Field, Matrix, QuadExt, Role, Q};

use crate::cohomology::{gamma_sum, rho_on_h, CohomClass, NuKind};
use crate::error::{Result, YblError};
use crate::model::{Op, QMode, Sc, Setup};
use crate::weight_space::{Composition, Sign};
use crate::wronskian_quantum::{HkAlgebra, QProduct};
use crate::yangian::{dynamical_hamiltonians, flatness_failure, inv_or, HamKind};

fn full_flag(setup: &Setup) -> Result<Composition> {
    if setup.n() != setup.big_n() {
        return Err(YblError::Precondition(format!("full flags need N = n, got N={}, n={}", setup.big_n(), setup.n())));
    }
    Composition::new(vec![1; setup.n()])
}

/// `τ^±` on restriction vectors of `H_λ`: `y_i` is multiplication by `x_i`,
/// `c` is `±h`, `s_i` per the divided-difference formula.
#[derive(Clone, Debug)]
pub struct HeckeAction {
    pub n: usize,
    pub sign: Sign,
    pub lambda: Composition,
    pub c: Sc,
    pub y: Vec<Op>,
    /// `s[i−1] = τ(s_i)`.
    pub s: Vec<Op>,
}

impl HeckeAction {
    pub fn new(setup: &Setup, sign: Sign) -> Result<Self> {
        let lambda = full_flag(setup)?;
        let n = setup.n();
        let w = setup.weight(&lambda)?;
        let d = w.dim();
        let words = w.basis.words();
        // x_p at a fixed point is z_a for the point a of color p
        let x = |k: usize, p: usize| -> Sc {
            let a = words[k].iter().position(|&c| c == p).expect("every color occurs once");
            setup.z(a + 1).clone()
        };
        let y = (1..=n).map(|p| Matrix::diagonal(&(0..d).map(|k| x(k, p)).collect::<Vec<_>>())).collect();
        let h = setup.h();
        let pm = Sc::from_int(sign.as_int());
        let mut s = Vec::new();
        for i in 1..n {
            let mut m = Matrix::zeros(d, d);
            for (k, word) in words.iter().enumerate() {
                let relabeled: Vec<usize> = word.iter().map(|&c| if c == i { i + 1 } else if c == i + 1 { i } else { c }).collect();
                let k2 = w.basis.index_of(&relabeled).expect("same weight");
                let dx = x(k, i).sub(&x(k, i + 1));
                let inv = inv_or(&dx, "x_i - x_{i+1}")?;
                m.set(k, k2, dx.sub(&pm.mul(h)).mul(&inv));
                let diag = m.get(k, k).add(&pm.mul(h).mul(&inv));
                m.set(k, k, diag);
            }
            s.push(m);
        }
        let act = HeckeAction { n, sign, lambda, c: pm.mul(h), y, s };
        if let Some(bad) = act.relation_failure() {
            return Err(YblError::Inconsistent(format!("Hecke relation {bad}")));
        }
        Ok(act)
    }

    pub fn dim(&self) -> usize {
        self.y[0].rows()
    }

    /// First violated relation among `s_i y_i − y_{i+1} s_i = c`,
    /// `[s_i, y_j] = 0` (`j ≠ i, i+1`), `s_i² = 1`, the braid relations,
    /// `[y_i, y_j] = 0` and `s_i · 1 = 1`.
    pub fn relation_failure(&self) -> Option<String> {
        let d = self.dim();
        let id: Op = Matrix::identity(d);
        let one = vec![Sc::one(); d];
        for i in 1..self.n {
            let s = &self.s[i - 1];
            if s.mul(&self.y[i - 1]).sub(&self.y[i].mul(s)) != Matrix::scalar(d, self.c.clone()) {
                return Some(format!("s{i} y{i} - y{} s{i} = c", i + 1));
            }
            for j in 1..=self.n {
                if j != i && j != i + 1 && !s.commutator(&self.y[j - 1]).is_zero() {
                    return Some(format!("[s{i}, y{j}] = 0"));
                }
            }
            if s.mul(s) != id {
                return Some(format!("s{i}^2 = 1"));
            }
            if s.mul_vec(&one) != one {
                return Some(format!("s{i} 1 = 1"));
            }
            if i + 1 < self.n {
                let t = &self.s[i];
                if s.mul(t).mul(s) != t.mul(s).mul(t) {
                    return Some(format!("braid s{i} s{}", i + 1));
                }
            }
            for j in i + 2..self.n {
                if !s.commutator(&self.s[j - 1]).is_zero() {
                    return Some(format!("[s{i}, s{j}] = 0"));
                }
            }
        }
        for i in 0..self.n {
            for j in i + 1..self.n {
                if !self.y[i].commutator(&self.y[j]).is_zero() {
                    return Some(format!("[y{}, y{}] = 0", i + 1, j + 1));
                }
            }
        }
        None
    }

    /// `τ(s_{i,j})` through `s_{j−1} ⋯ s_{i+1} s_i s_{i+1} ⋯ s_{j−1}`.
    pub fn transposition(&self, i: usize, j: usize) -> Op {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let mut m = self.s[i - 1].clone();
        for k in i + 1..j {
            m = self.s[k - 1].mul(&m).mul(&self.s[k - 1]);
        }
        m
    }

    /// `τ(Y^k_i)`.
    pub fn y_k(&self, setup: &Setup, i: usize) -> Result<Op> {
        let qi = setup.q(i);
        let mut m = self.y[i - 1].clone();
        for j in 1..=self.n {
            if j == i {
                continue;
            }
            let qj = setup.q(j);
            let num = if j < i { qi } else { qj };
            let coef = self.c.mul(num).mul(&inv_or(&qi.sub(qj), "q_i - q_j")?);
            m = m.add(&self.transposition(i, j).scale(&coef));
        }
        Ok(m)
    }
}

/// `ρ^±(X^k_i) = τ^±(Y^k_i)`, both sides on restriction coordinates; returns
/// the first failing `i`.
pub fn hecke_vs_bethe(setup: &Setup, sign: Sign) -> Result<Option<String>> {
    let act = HeckeAction::new(setup, sign)?;
    let kind = if sign == Sign::Plus { NuKind::Plus } else { NuKind::Minus };
    let xs = dynamical_hamiltonians(setup, sign, HamKind::K, &act.lambda)?;
    for i in 1..=act.n {
        let lhs = rho_on_h(setup, kind, &act.lambda, &act.lambda, &xs[i - 1])?;
        let rhs = act.y_k(setup, i)?;
        if lhs != rhs {
            let d = act.dim();
            let (r, c) = (0..d * d).map(|t| (t / d, t % d)).find(|&(r, c)| lhs.get(r, c) != rhs.get(r, c)).expect("differ");
            return Ok(Some(format!("i={i}, entry ({r},{c}): {} vs {}", lhs.get(r, c), rhs.get(r, c))));
        }
    }
    Ok(None)
}

/// Flatness of the affine KZ connection `κ q_i∂_{q_i} − τ(Y^k_i)` (symbolic `q`).
pub fn akz_flatness_failure(setup: &Setup, sign: Sign) -> Result<Option<String>> {
    let act = HeckeAction::new(setup, sign)?;
    let ys = (1..=act.n).map(|i| act.y_k(setup, i)).collect::<Result<Vec<_>>>()?;
    flatness_failure(setup, &ys)
}

/// `x = x_1 − x_2` as a class for two points.
fn x_class(setup: &Setup, lambda: &Composition) -> Result<CohomClass> {
    gamma_sum(setup, lambda, 1)?.sub(&gamma_sum(setup, lambda, 2)?)
}

fn rational(x: &Sc) -> Result<Q> {
    x.as_constant().ok_or_else(|| YblError::Precondition(format!("expected a rational number, got {x}")))
}

/// The reduced two-point setting `z_1 = z/2`, `z_2 = −z/2`.
fn reduced_setup(z: &Q, h: &Q, q: QMode, extra: &[(&str, Role)]) -> Result<Setup> {
    let half = ybl_algebra::q(1, 2);
    Setup::specialized_with(vec![z * &half, -(z * &half)], h.clone(), 2, q, extra)
}

/// The idempotents `w_1, w_2` of `•` for two points.
#[derive(Clone, Debug)]
pub struct Idempotents {
    pub discriminant: Q,
    pub roots: [QuadExt; 2],
    /// Restriction vectors of `w_1`, `w_2`.
    pub w: [Vec<QuadExt>; 2],
    /// `x•` on restriction coordinates.
    pub x_bullet: Matrix<Q>,
    pub first_failure: Option<String>,
}

fn sqrt_q(d: &Q) -> Option<Q> {
    if d < &Q::from_integer(0.into()) {
        return None;
    }
    let (a, b) = (d.numer().sqrt(), d.denom().sqrt());
    (&a * &a == *d.numer() && &b * &b == *d.denom()).then(|| Q::new(a, b))
}

/// Solve `(u−z)(u+z) = q(u−z+2h)(u+z+2h)` over `ℚ(√Δ)` and verify
/// `w_i • w_j = δ_{ij} w_i`, `w_1 + w_2 = 1` and `x • w_i = u_i w_i`.
/// At `q = 0` the product is the classical one.
pub fn bethe_idempotents_2x2(z: &Q, h: &Q, q: &Q) -> Result<Idempotents> {
    let one = Q::from_integer(1.into());
    if *q == one {
        return Err(YblError::Degenerate("q = 1".into()));
    }
    let lambda = Composition::new(vec![1, 1])?;
    let qz = q.is_zero();
    let setup = reduced_setup(z, h, QMode::Values(vec![one.clone(), if qz { ybl_algebra::q(1, 2) } else { q.clone() }]), &[])?;
    let x = x_class(&setup, &lambda)?;
    let m = if qz {
        Matrix::diagonal(&x.values)
    } else {
        HkAlgebra::new(&setup, &lambda)?.quantum_mul_op(QProduct::Bullet, &x)?
    };
    let m = m.try_map(rational)?;
    // u² − c u − (c h + z²) = 0 with c = 4hq/(1−q)
    let c = Q::from_integer(4.into()) * h * q / (&one - q);
    let disc = &c * &c + Q::from_integer(4.into()) * (&c * h + z * z);
    if disc.is_zero() {
        return Err(YblError::Degenerate("Bethe ansatz roots coincide".into()));
    }
    let half = ybl_algebra::q(1, 2);
    let (r, s) = match sqrt_q(&disc) {
        Some(s) => (QuadExt::rational(s), QuadExt::zero()),
        None => (QuadExt::zero(), QuadExt::sqrt(disc.clone())),
    };
    let root = r.add(&s).scale_q(&half);
    let roots = [QuadExt::from_q(&(&c * &half)).add(&root), QuadExt::from_q(&(&c * &half)).sub(&root)];
    // BAE check on the roots
    let two_h = QuadExt::from_q(&(h * Q::from_integer(2.into())));
    let zq = QuadExt::from_q(z);
    for u in &roots {
        let lhs = u.sub(&zq).mul(&u.add(&zq));
        let rhs = QuadExt::from_q(q).mul(&u.sub(&zq).add(&two_h)).mul(&u.add(&zq).add(&two_h));
        if lhs != rhs {
            return Err(YblError::Inconsistent("root does not solve the Bethe ansatz equation".into()));
        }
    }
    let d = m.rows();
    let mq: Matrix<QuadExt> = m.map(QuadExt::from_q);
    let xv: Vec<QuadExt> = x.values.iter().map(|v| rational(v).map(|r| QuadExt::from_q(&r))).collect::<Result<_>>()?;
    // w_i = a_i x + b_i
    let coef = |i: usize| -> Result<(QuadExt, QuadExt)> {
        let inv = Field::inv(&roots[i].sub(&roots[1 - i])).ok_or_else(|| YblError::Degenerate("u_1 = u_2".into()))?;
        Ok((inv.clone(), roots[1 - i].neg().mul(&inv)))
    };
    let mut w: [Vec<QuadExt>; 2] = [Vec::new(), Vec::new()];
    let mut ops: Vec<Matrix<QuadExt>> = Vec::new();
    for (i, wi) in w.iter_mut().enumerate() {
        let (a, b) = coef(i)?;
        *wi = xv.iter().map(|x| a.mul(x).add(&b)).collect();
        ops.push(mq.scale(&a).add(&Matrix::scalar(d, b)));
    }
    let mut first_failure = None;
    for i in 0..2 {
        for j in 0..2 {
            let got = ops[i].mul_vec(&w[j]);
            let want = if i == j { w[i].clone() } else { vec![QuadExt::zero(); d] };
            if got != want && first_failure.is_none() {
                first_failure = Some(format!("w{} • w{}", i + 1, j + 1));
            }
        }
        if mq.mul_vec(&w[i]) != w[i].iter().map(|v| v.mul(&roots[i])).collect::<Vec<_>>() && first_failure.is_none() {
            first_failure = Some(format!("x • w{} = u{} w{}", i + 1, i + 1, i + 1));
        }
    }
    let sum: Vec<QuadExt> = w[0].iter().zip(&w[1]).map(|(a, b)| a.add(b)).collect();
    if sum != vec![QuadExt::one(); d] && first_failure.is_none() {
        first_failure = Some("w1 + w2 = 1".into());
    }
    Ok(Idempotents { discriminant: disc, roots, w, x_bullet: m, first_failure })
}

/// Which residue series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QdeSolution {
    /// Residues at `u ∈ κℤ_{≥0}`, prefactor `q^{z/2κ}`.
    J1,
    /// Residues at `u ∈ −z + κℤ_{≥0}`, prefactor `q^{−z/2κ}`.
    J2,
}

#[derive(Clone, Debug)]
pub struct QdeProblem {
    pub z: Q,
    pub h: Q,
    pub kappa: Q,
    pub order: usize,
}

#[derive(Clone, Debug)]
pub struct QdeReport {
    pub which: QdeSolution,
    /// Per order `d = 0..=D`: whether the `q^d` residual vanishes.
    pub residual_zero: Vec<bool>,
    pub first_failure: Option<usize>,
}

impl QdeReport {
    pub fn passes(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// `x•` for two reduced points as a power series `Σ_m q^m X_m`, read off
/// the quantum product with `q_1 = 1`, `q_2 = q`.
pub fn x_bullet_series(z: &Q, h: &Q, order: usize) -> Result<Vec<Matrix<Q>>> {
    let extra = [("t", Role::Series)];
    let lambda = Composition::new(vec![1, 1])?;
    let probe = reduced_setup(z, h, QMode::Symbolic, &extra)?;
    let t = probe.var(Role::Series).expect("series variable");
    let tv = probe.registry().index_of(Role::Series).expect("series variable");
    let setup = reduced_setup(z, h, QMode::Exprs(vec![Sc::one(), t]), &extra)?;
    let alg = HkAlgebra::new(&setup, &lambda)?;
    let m = alg.quantum_mul_op(QProduct::Bullet, &x_class(&setup, &lambda)?)?;
    let d = m.rows();
    let mut out = vec![Matrix::<Q>::zeros(d, d); order + 1];
    for r in 0..d {
        for c in 0..d {
            let f = m.get(r, c);
            let coeffs = |p: &ybl_algebra::MultiPoly| -> Result<Vec<Q>> {
                p.coeffs_in(tv).iter().map(|c| c.constant_value().ok_or_else(|| YblError::Precondition("x• depends on more than q".into()))).collect()
            };
            let (num, den) = (coeffs(f.num())?, coeffs(f.den())?);
            if den.first().map_or(true, |c| c.is_zero()) {
                return Err(YblError::Degenerate("x• has a pole at q = 0".into()));
            }
            for (k, v) in series_div(&num, &den, order).into_iter().enumerate() {
                out[k].set(r, c, v);
            }
        }
    }
    Ok(out)
}

/// Coefficients `J_d` (restriction vectors) of the residue series, Gamma
/// prefactors dropped: `J = q^{±z/2κ} Σ_d q^d J_d`.
pub fn qde_coefficients(p: &QdeProblem, which: QdeSolution) -> Result<Vec<Vec<Q>>> {
    let lambda = Composition::new(vec![1, 1])?;
    let setup = reduced_setup(&p.z, &p.h, QMode::Values(vec![Q::from_integer(1.into()), ybl_algebra::q(1, 2)]), &[])?;
    let xs: Vec<Q> = x_class(&setup, &lambda)?.values.iter().map(rational).collect::<Result<_>>()?;
    let (z, h, k) = (&p.z, &p.h, &p.kappa);
    if k.is_zero() {
        return Err(YblError::Precondition("κ must be nonzero".into()));
    }
    let mut out = Vec::new();
    let mut c = k.clone(); // 1/(κ^{d−1} d!) ∏_{i<d} …, at d = 0
    for d in 0..=p.order {
        if d > 0 {
            let i = Q::from_integer((d - 1).into());
            let (num, den) = match which {
                QdeSolution::J1 => ((h - k * &i) * (h - z - k * &i), z + k * (&i + Q::from_integer(1.into()))),
                QdeSolution::J2 => ((h - k * &i) * (h + z - k * &i), k * (&i + Q::from_integer(1.into())) - z),
            };
            if den.is_zero() {
                return Err(YblError::Degenerate(format!("small denominator at i = {i}")));
            }
            c = c * num / den / k / Q::from_integer(d.into());
        }
        let dq = Q::from_integer(d.into());
        out.push(
            xs.iter()
                .map(|x| {
                    let lin = match which {
                        QdeSolution::J1 => z - x + Q::from_integer(2.into()) * k * &dq,
                        QdeSolution::J2 => Q::from_integer(2.into()) * k * &dq - z - x,
                    };
                    (x + h) * lin * &c
                })
                .collect(),
        );
    }
    Ok(out)
}

/// Per order `d`: `−2κ(d + shift/2κ) J_d − Σ_m X_m J_{d−m} = 0`.
fn residual_flags(xb: &[Matrix<Q>], j: &[Vec<Q>], kappa: &Q, shift: &Q) -> Vec<bool> {
    (0..j.len().min(xb.len()))
        .map(|d| {
            let f = -(Q::from_integer(2.into()) * kappa * Q::from_integer(d.into()) + shift);
            let mut r: Vec<Q> = j[d].iter().map(|v| v * &f).collect();
            for m in 0..=d {
                for (ri, v) in r.iter_mut().zip(xb[m].mul_vec(&j[d - m])) {
                    *ri -= v;
                }
            }
            r.iter().all(|v| v.is_zero())
        })
        .collect()
}

/// Check `−2κ q∂_q J = x• J` order by order through `q^D`.
pub fn qde_series_check(p: &QdeProblem, which: QdeSolution) -> Result<QdeReport> {
    if p.order < 1 {
        return Err(YblError::Precondition("series order must be at least 1".into()));
    }
    let xb = x_bullet_series(&p.z, &p.h, p.order)?;
    let j = qde_coefficients(p, which)?;
    let shift = match which {
        QdeSolution::J1 => p.z.clone(),
        QdeSolution::J2 => -p.z.clone(),
    };
    let residual_zero = residual_flags(&xb, &j, &p.kappa, &shift);
    let first_failure = residual_zero.iter().position(|ok| !ok);
    Ok(QdeReport { which, residual_zero, first_failure })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ybl_algebra::{q, qi};

    fn spec(n: usize) -> Setup {
        let z: Vec<Q> = [0, 2, 7, 19, 40].iter().take(n).map(|&v| qi(v)).collect();
        let qs: Vec<Q> = [1, 3, 5, 7, 11].iter().take(n).map(|&p| q(1, p)).collect();
        Setup::specialized(z, qi(3), n, QMode::Values(qs)).unwrap()
    }

    #[test]
    fn hecke_relations_hold() {
        for n in 2..=4 {
            let s = spec(n);
            for sign in [Sign::Plus, Sign::Minus] {
                let act = HeckeAction::new(&s, sign).unwrap();
                assert_eq!(act.relation_failure(), None);
            }
        }
    }

    #[test]
    fn bethe_matches_hecke() {
        for n in 2..=3 {
            let s = spec(n);
            for sign in [Sign::Plus, Sign::Minus] {
                assert_eq!(hecke_vs_bethe(&s, sign).unwrap(), None, "n={n} {sign:?}");
                let act = HeckeAction::new(&s, sign).unwrap();
                let total = (1..=n).fold(Matrix::zeros(act.dim(), act.dim()), |acc: Op, i| acc.add(&act.y_k(&s, i).unwrap()));
                let ys = act.y.iter().fold(Matrix::zeros(act.dim(), act.dim()), |acc: Op, y| acc.add(y));
                assert_eq!(total, ys);
            }
        }
        let s = Setup::symbolic(2, 2).unwrap();
        for sign in [Sign::Plus, Sign::Minus] {
            assert_eq!(hecke_vs_bethe(&s, sign).unwrap(), None);
            assert_eq!(akz_flatness_failure(&s, sign).unwrap(), None);
        }
    }

    #[test]
    fn reduced_swap_and_x_bullet() {
        let extra = [("t", Role::Series)];
        let probe = reduced_setup(&qi(3), &qi(1), QMode::Symbolic, &extra).unwrap();
        let t = probe.var(Role::Series).unwrap();
        let s = reduced_setup(&qi(3), &qi(1), QMode::Exprs(vec![Sc::one(), t.clone()]), &extra).unwrap();
        let l = Composition::new(vec![1, 1]).unwrap();
        let act = HeckeAction::new(&s, Sign::Minus).unwrap();
        let x = x_class(&s, &l).unwrap();
        let h = s.h();
        // τ^-(s): f ↦ ((x+h)/x) f(−x) − (h/x) f(x), applied to f = x and f = x²
        for f in [x.values.clone(), x.values.iter().map(|v| v.mul(v)).collect::<Vec<_>>()] {
            let got = act.s[0].mul_vec(&f);
            let want: Vec<Sc> = (0..2)
                .map(|k| {
                    let xv = &x.values[k];
                    let inv = Field::inv(xv).unwrap();
                    xv.add(h).mul(&inv).mul(&f[1 - k]).sub(&h.mul(&inv).mul(&f[k]))
                })
                .collect();
            assert_eq!(got, want);
        }
        let alg = HkAlgebra::new(&s, &l).unwrap();
        let m = alg.quantum_mul_op(QProduct::Bullet, &x).unwrap();
        let c = Sc::from_int(2).mul(h).mul(&t).div(&Sc::one().sub(&t));
        let want = Matrix::diagonal(&x.values).sub(&act.s[0].sub(&Matrix::identity(2)).scale(&c));
        assert_eq!(m, want);
    }

    #[test]
    fn idempotents() {
        for (z, h, qq) in [(qi(3), qi(1), q(1, 4)), (qi(5), q(1, 2), q(2, 3)), (q(7, 2), qi(2), qi(3))] {
            let r = bethe_idempotents_2x2(&z, &h, &qq).unwrap();
            assert_eq!(r.first_failure, None);
        }
        let r = bethe_idempotents_2x2(&qi(3), &qi(1), &qi(0)).unwrap();
        assert_eq!(r.first_failure, None);
        let mut roots: Vec<QuadExt> = r.roots.to_vec();
        roots.sort_by_key(|u| u.a().clone());
        assert_eq!(roots, vec![QuadExt::from_int(-3), QuadExt::from_int(3)]);
        // the classical idempotents are the fixed-point classes
        assert!(r.w.iter().all(|w| w.iter().filter(|v| v.is_zero()).count() == 1));
        assert!(bethe_idempotents_2x2(&qi(3), &qi(1), &qi(1)).is_err());
    }

    #[test]
    fn qde_series() {
        let p = QdeProblem { z: qi(3), h: qi(1), kappa: qi(2), order: 12 };
        for which in [QdeSolution::J1, QdeSolution::J2] {
            let r = qde_series_check(&p, which).unwrap();
            assert!(r.passes(), "{which:?} fails at {:?}", r.first_failure);
        }
        for p in [QdeProblem { z: qi(5), h: qi(2), kappa: qi(3), order: 8 }, QdeProblem { z: q(7, 2), h: q(1, 3), kappa: q(5, 4), order: 8 }] {
            for which in [QdeSolution::J1, QdeSolution::J2] {
                assert!(qde_series_check(&p, which).unwrap().passes());
            }
        }
        // wrong exponent or wrong h in the coefficients breaks it
        let j = qde_coefficients(&p, QdeSolution::J1).unwrap();
        assert!(j[0].iter().any(|v| !v.is_zero()));
        let xb = x_bullet_series(&p.z, &p.h, 6).unwrap();
        assert!(residual_flags(&xb, &j, &p.kappa, &-p.z.clone()).iter().any(|ok| !ok));
        let other = qde_coefficients(&QdeProblem { h: qi(2), ..p.clone() }, QdeSolution::J1).unwrap();
        assert!(residual_flags(&xb, &other, &p.kappa, &p.z).iter().any(|ok| !ok));
    }
}
