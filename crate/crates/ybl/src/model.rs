//! A run's scalar setting: which of `z`, `h`, `q` are symbols and which are
//! rationals, plus the per-weight ξ tables built in that setting.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use ybl_algebra::{Field, Matrix, RatFunc, Role, VarRegistry, Q};

use crate::error::{Result, YblError};
use crate::orbit::{Orbit, OrbitFrame};
use crate::weight_space::{build_xi, Composition, Sign, WeightBasis, ZH};

pub type Sc = RatFunc;
pub type Op = Matrix<RatFunc>;

/// How the quantum parameters enter a run.
#[derive(Clone, Debug)]
pub enum QMode {
    Symbolic,
    Values(Vec<Q>),
    /// Arbitrary expressions in the run's registry (e.g. in a series variable `t`).
    Exprs(Vec<RatFunc>),
}

/// Everything attached to one weight `λ`.
#[derive(Debug)]
pub struct Weight {
    pub basis: Arc<WeightBasis>,
    /// `ξ^+_I` as coordinate vectors, outer index `I`.
    pub xi_plus: Vec<Vec<Sc>>,
    pub xi_minus: Vec<Vec<Sc>>,
    /// `Q(z_I)` and `R(z_I)`.
    pub q: Vec<Sc>,
    pub r: Vec<Sc>,
}

impl Weight {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn lambda(&self) -> &Composition {
        self.basis.lambda()
    }

    pub fn xi(&self, sign: Sign) -> &[Vec<Sc>] {
        match sign {
            Sign::Plus => &self.xi_plus,
            Sign::Minus => &self.xi_minus,
        }
    }

    /// Matrix whose columns are the `ξ^±_I`.
    pub fn xi_matrix(&self, sign: Sign) -> Op {
        Matrix::from_columns(self.dim(), self.xi(sign))
    }

    /// `v^+_λ = Σ_I v_I`.
    pub fn v_plus(&self) -> Vec<Sc> {
        vec![Sc::one(); self.dim()]
    }

    /// `Σ_I ξ^±_I / R(z_I)`: `v^=_λ` for the plus sign, `v^-_λ` for the minus sign.
    pub fn v_dist(&self, sign: Sign) -> Vec<Sc> {
        let mut out = vec![Sc::zero(); self.dim()];
        for (x, r) in self.xi(sign).iter().zip(&self.r) {
            let c = Field::inv(r).expect("R(z_I) is nonzero");
            for (o, a) in out.iter_mut().zip(x) {
                *o = o.add(&a.mul(&c));
            }
        }
        out
    }
}

pub struct Setup {
    n: usize,
    big_n: usize,
    reg: Arc<VarRegistry>,
    z: Vec<Sc>,
    h: Sc,
    q: Vec<Sc>,
    spec: Option<(Vec<Q>, Q)>,
    frame: Option<Arc<OrbitFrame>>,
    weights: Mutex<HashMap<Composition, Arc<Weight>>>,
}

impl std::fmt::Debug for Setup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Setup").field("n", &self.n).field("N", &self.big_n).field("reg", &self.reg.names()).finish()
    }
}

fn base_registry(n: usize, big_n: usize, extra: &[(&str, Role)]) -> Result<Arc<VarRegistry>> {
    let mut v: Vec<(String, Role)> = (1..=n).map(|a| (format!("z{a}"), Role::Z(a))).collect();
    v.push(("h".into(), Role::H));
    v.extend((1..=big_n).map(|i| (format!("q{i}"), Role::Q(i))));
    v.extend(extra.iter().map(|(s, r)| (s.to_string(), *r)));
    Ok(VarRegistry::new(v)?)
}

fn resolve_q(reg: &Arc<VarRegistry>, big_n: usize, q: QMode) -> Vec<Sc> {
    match q {
        QMode::Symbolic => (1..=big_n).map(|i| RatFunc::var_role(reg, Role::Q(i)).expect("q")).collect(),
        QMode::Values(v) => v.into_iter().map(RatFunc::constant).collect(),
        QMode::Exprs(v) => v,
    }
}

impl Setup {
    /// `z`, `h` and `q` all symbolic.
    pub fn symbolic(n: usize, big_n: usize) -> Result<Self> {
        Self::symbolic_with(n, big_n, QMode::Symbolic, &[])
    }

    /// Symbolic `z`, `h` with the given quantum parameters.
    pub fn symbolic_with_q(n: usize, big_n: usize, q: QMode) -> Result<Self> {
        Self::symbolic_with(n, big_n, q, &[])
    }

    /// Symbolic `z`, `h`, with extra registry variables.
    pub fn symbolic_with(n: usize, big_n: usize, q: QMode, extra: &[(&str, Role)]) -> Result<Self> {
        let reg = base_registry(n, big_n, extra)?;
        let z = (1..=n).map(|a| RatFunc::var_role(&reg, Role::Z(a)).expect("z")).collect();
        let h = RatFunc::var_role(&reg, Role::H).expect("h");
        let q = resolve_q(&reg, big_n, q);
        Self::finish(n, big_n, reg, z, h, q, None)
    }

    /// Rational `z` and `h`.
    pub fn specialized(z: Vec<Q>, h: Q, big_n: usize, q: QMode) -> Result<Self> {
        Self::specialized_with(z, h, big_n, q, &[])
    }

    /// Rational `z` and `h`, with extra registry variables (such as a series variable).
    pub fn specialized_with(z: Vec<Q>, h: Q, big_n: usize, q: QMode, extra: &[(&str, Role)]) -> Result<Self> {
        let n = z.len();
        let reg = base_registry(n, big_n, extra)?;
        let zs: Vec<Sc> = z.iter().map(|c| RatFunc::constant(c.clone())).collect();
        let hs = RatFunc::constant(h.clone());
        let q = resolve_q(&reg, big_n, q);
        Self::finish(n, big_n, reg, zs, hs, q, Some((z, h)))
    }

    fn finish(n: usize, big_n: usize, reg: Arc<VarRegistry>, z: Vec<Sc>, h: Sc, q: Vec<Sc>, spec: Option<(Vec<Q>, Q)>) -> Result<Self> {
        if q.len() != big_n {
            return Err(YblError::Precondition(format!("expected {big_n} quantum parameters, got {}", q.len())));
        }
        let frame = spec.as_ref().map(|_| OrbitFrame::new(n));
        let s = Setup { n, big_n, reg, z, h, q, spec, frame, weights: Mutex::default() };
        s.zh().genericity()?;
        for i in 0..big_n {
            if s.q[i].is_zero() {
                return Err(YblError::Degenerate(format!("q{}", i + 1)));
            }
            for j in i + 1..big_n {
                if s.q[i] == s.q[j] {
                    return Err(YblError::Degenerate(format!("q{}-q{}", i + 1, j + 1)));
                }
            }
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn big_n(&self) -> usize {
        self.big_n
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.reg
    }

    pub fn z(&self, a: usize) -> &Sc {
        &self.z[a - 1]
    }

    pub fn zs(&self) -> &[Sc] {
        &self.z
    }

    pub fn h(&self) -> &Sc {
        &self.h
    }

    pub fn q(&self, i: usize) -> &Sc {
        &self.q[i - 1]
    }

    pub fn qs(&self) -> &[Sc] {
        &self.q
    }

    pub fn is_symbolic_z(&self) -> bool {
        self.spec.is_none()
    }

    /// Registry index of `q_i` when it is a free symbol of this run.
    pub fn q_var(&self, i: usize) -> Option<usize> {
        let idx = self.reg.index_of(Role::Q(i))?;
        let v = RatFunc::var(&self.reg, idx);
        (self.q[i - 1] == v).then_some(idx)
    }

    pub fn zh(&self) -> ZH<Sc> {
        ZH { z: self.z.clone(), h: self.h.clone() }
    }

    pub fn var(&self, role: Role) -> Option<Sc> {
        RatFunc::var_role(&self.reg, role)
    }

    pub fn int(&self, k: i64) -> Sc {
        Sc::from_int(k)
    }

    /// The weight data for `λ` (built once, then shared).
    pub fn weight(&self, lambda: &Composition) -> Result<Arc<Weight>> {
        if lambda.n() != self.n || lambda.big_n() != self.big_n {
            return Err(YblError::Precondition(format!("weight {lambda} does not fit n={}, N={}", self.n, self.big_n)));
        }
        if let Some(w) = self.weights.lock().expect("poisoned").get(lambda) {
            return Ok(w.clone());
        }
        let basis = WeightBasis::new(lambda);
        let (xp, xm) = match (&self.spec, &self.frame) {
            (Some((z, h)), Some(frame)) => {
                let zh = ZH { z: (1..=self.n).map(|a| Orbit::z(frame, z, a)).collect(), h: Orbit::Const(h.clone()) };
                let conv = |t: Vec<Vec<Orbit>>| -> Vec<Vec<Sc>> {
                    t.into_iter().map(|v| v.into_iter().map(|c| RatFunc::constant(c.value())).collect()).collect()
                };
                (conv(build_xi(Sign::Plus, &zh, &basis)?), conv(build_xi(Sign::Minus, &zh, &basis)?))
            }
            _ => {
                let zh = self.zh();
                (build_xi(Sign::Plus, &zh, &basis)?, build_xi(Sign::Minus, &zh, &basis)?)
            }
        };
        let zh = self.zh();
        let q = (0..basis.dim()).map(|k| zh.q_of(&basis.blocks(k))).collect();
        let r = (0..basis.dim()).map(|k| zh.r_of(&basis.blocks(k))).collect();
        let w = Arc::new(Weight { basis, xi_plus: xp, xi_minus: xm, q, r });
        self.weights.lock().expect("poisoned").insert(lambda.clone(), w.clone());
        Ok(w)
    }

    /// Weight data for `λ + e_i − e_j`, if that weight is nonempty.
    pub fn shifted_weight(&self, lambda: &Composition, i: usize, j: usize) -> Result<Option<Arc<Weight>>> {
        match lambda.shifted(i, j) {
            Some(l) => Ok(Some(self.weight(&l)?)),
            None => Ok(None),
        }
    }

    /// `Q_λ`-style sign `(−1)^{Σ_{i<j} λ_i λ_j}`.
    pub fn cross_sign(lambda: &Composition) -> i64 {
        if lambda.cross_degree() % 2 == 0 {
            1
        } else {
            -1
        }
    }
}
