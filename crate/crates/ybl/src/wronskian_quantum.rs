//! The discrete Wronskian `W^k(u)`, the algebra `H^k_λ` realized as the Bethe
//! operator algebra on `V_λ`, the transports `β^±`, the quantum products, the
//! pairings on `H^k_λ`, and the Calogero–Moser and `h → ∞` checks.
//!
//! Polynomials in `ê_{p,r} = σ_r(γ̂_{p,1}, …, γ̂_{p,λ_p})` live in their own
//! registry (`z`, `h`, symbolic `q`, `ê`, `u`, `x`, optionally `r_i`); they
//! are pushed into a run's scalars by role.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use ybl_algebra::{expand_at_infinity, gcd, Field, Matrix, MultiPoly, RatFunc, Role, UPoly, VarRegistry, Q};

use crate::cohomology::{monomials_by_degree, nu_matrix, rho_on_h, CohomClass, HBasis, NuKind};
use crate::error::{Result, YblError};
use crate::model::{Op, Sc, Setup, Weight};
use crate::weight_space::{shapovalov, Composition, Sign};
use crate::yangian::{bethe_generators, default_s_max, dynamical_hamiltonians, flatness_failure, inv_or, BetheGenSet, HamKind};

fn var(reg: &Arc<VarRegistry>, role: Role) -> RatFunc {
    RatFunc::var_role(reg, role).expect("registry built with this role")
}

/// Determinant of a small matrix of rational functions: rows are cleared of
/// denominators, then expanded by minors over polynomials.
pub fn det_exact(rows: &[Vec<RatFunc>]) -> Result<RatFunc> {
    let n = rows.len();
    if n == 0 {
        return Ok(RatFunc::one());
    }
    let mut den = MultiPoly::one();
    let mut prows: Vec<Vec<MultiPoly>> = Vec::with_capacity(n);
    for row in rows {
        if row.len() != n {
            return Err(YblError::Precondition("determinant of a non-square matrix".into()));
        }
        let mut l = MultiPoly::one();
        for e in row.iter().filter(|e| !e.is_zero() && !e.den().is_constant()) {
            let g = gcd(&l, e.den());
            l = &l * &e.den().exact_div(&g).expect("gcd divides");
        }
        prows.push(
            row.iter()
                .map(|e| if e.is_zero() { MultiPoly::zero() } else { e.num() * &l.exact_div(e.den()).expect("lcm") })
                .collect(),
        );
        den = &den * &l;
    }
    fn rec(k: usize, mask: u64, m: &[Vec<MultiPoly>], memo: &mut HashMap<u64, MultiPoly>) -> MultiPoly {
        let n = m.len();
        if k == n {
            return MultiPoly::one();
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let mut acc = MultiPoly::zero();
        let mut pos = 0;
        for c in 0..n {
            if mask & (1 << c) != 0 {
                continue;
            }
            if !m[k][c].is_zero() {
                let t = &m[k][c] * &rec(k + 1, mask | (1 << c), m, memo);
                acc = if pos % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            pos += 1;
        }
        memo.insert(mask, acc.clone());
        acc
    }
    let num = rec(0, 0, &prows, &mut HashMap::new());
    Ok(RatFunc::new(num, den)?)
}

/// Coefficients of `f` in the variable `v`, lowest first.
fn coeffs_in(f: &RatFunc, v: usize) -> Result<Vec<RatFunc>> {
    if f.den().degree_in(v) > 0 {
        return Err(YblError::Precondition("not polynomial in the expansion variable".into()));
    }
    f.num().coeffs_in(v).into_iter().map(|c| Ok(RatFunc::new(c, f.den().clone())?)).collect()
}

/// `∏_{i<j}(a_i − a_j)`.
fn vandermonde(a: &[RatFunc]) -> RatFunc {
    let mut v = RatFunc::one();
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            v = v.mul(&a[i].sub(&a[j]));
        }
    }
    v
}

fn elementary<K: Field>(xs: &[K], r: usize) -> K {
    let mut e = vec![K::zero(); r + 1];
    e[0] = K::one();
    for x in xs {
        for k in (1..=r).rev() {
            e[k] = e[k].add(&e[k - 1].mul(x));
        }
    }
    e[r].clone()
}

/// `W^k(u)`, `Ŵ^k(u, x)` and the elements `W^k_{p,s}`, `U^k_{i,s}` as
/// polynomials in `ê`, `z`, `h`, `q`.
#[derive(Clone, Debug)]
pub struct WronskianData {
    pub lambda: Composition,
    pub reg: Arc<VarRegistry>,
    /// Generators `(p, r)`, `p`-major; `ê_{p,r}` is registry variable `elem_vars[g]`.
    pub gens: Vec<(usize, usize)>,
    pub elem_vars: Vec<usize>,
    pub kappa: Vec<RatFunc>,
    /// `∏_{i<j}(κ_i − κ_j)`.
    pub vandermonde: RatFunc,
    pub w: RatFunc,
    pub w_hat: RatFunc,
    pub w_ps: BTreeMap<(usize, usize), RatFunc>,
    pub u_is: BTreeMap<(usize, usize), RatFunc>,
}

/// Registry for Wronskian computations.
pub fn wronskian_registry(lambda: &Composition, with_r: bool) -> Result<Arc<VarRegistry>> {
    let (n, big_n) = (lambda.n(), lambda.big_n());
    let mut v: Vec<(String, Role)> = (1..=n).map(|a| (format!("z{a}"), Role::Z(a))).collect();
    v.push(("h".into(), Role::H));
    v.extend((1..=big_n).map(|i| (format!("q{i}"), Role::Q(i))));
    for p in 1..=big_n {
        for r in 1..=lambda.part(p) {
            v.push((format!("e{p}_{r}"), Role::Elem(p, r)));
        }
    }
    v.push(("u".into(), Role::U));
    v.push(("x".into(), Role::X));
    if with_r {
        v.extend((1..big_n).map(|i| (format!("r{i}"), Role::Aux)));
    }
    Ok(VarRegistry::new(v)?)
}

impl WronskianData {
    /// Build `W^k` and `Ŵ^k`; `q` symbolic unless values are given. The
    /// elements `W^k_{p,s}`, `U^k_{i,s}` are extracted for `s ≤ s_max`.
    pub fn new(lambda: &Composition, q: Option<&[Q]>, s_max: usize) -> Result<Self> {
        Self::build(lambda, q, s_max, false)
    }

    fn build(lambda: &Composition, q: Option<&[Q]>, s_max: usize, with_r: bool) -> Result<Self> {
        let reg = wronskian_registry(lambda, with_r)?;
        let big_n = lambda.big_n();
        let kappa: Vec<RatFunc> = match q {
            None => (1..=big_n).map(|i| var(&reg, Role::Q(i))).collect(),
            Some(v) => {
                if v.len() != big_n {
                    return Err(YblError::Precondition(format!("expected {big_n} quantum parameters")));
                }
                v.iter().map(|c| RatFunc::constant(c.clone())).collect()
            }
        };
        let vdm = vandermonde(&kappa);
        if vdm.is_zero() {
            return Err(YblError::Degenerate("q_i - q_j".into()));
        }
        let mut gens = Vec::new();
        let mut elem_vars = Vec::new();
        for p in 1..=big_n {
            for r in 1..=lambda.part(p) {
                gens.push((p, r));
                elem_vars.push(reg.index_of(Role::Elem(p, r)).expect("elem var"));
            }
        }
        let u = var(&reg, Role::U);
        let x = var(&reg, Role::X);
        let h = var(&reg, Role::H);
        let factor = |p: usize, shift: i64| -> RatFunc {
            // ∏_k (u − γ̂_{p,k} + shift·h) = Σ_r (−1)^r ê_{p,r} (u + shift·h)^{λ_p − r}
            let base = u.add(&h.mul(&RatFunc::from_int(shift)));
            let lp = lambda.part(p);
            let mut acc = RatFunc::zero();
            for r in 0..=lp {
                let e = if r == 0 { RatFunc::one() } else { var(&reg, Role::Elem(p, r)) };
                let t = e.mul(&Field::pow(&base, (lp - r) as u32));
                acc = if r % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            acc
        };
        let rows: Vec<Vec<RatFunc>> = (1..=big_n)
            .map(|i| (1..=big_n).map(|j| Field::pow(&kappa[i - 1], (big_n - j) as u32).mul(&factor(i, i as i64 - j as i64))).collect())
            .collect();
        let w = det_exact(&rows)?;
        let mut hat_rows: Vec<Vec<RatFunc>> = vec![(0..=big_n).map(|j| Field::pow(&x, (big_n - j) as u32)).collect()];
        for i in 1..=big_n {
            hat_rows.push((0..=big_n).map(|j| Field::pow(&kappa[i - 1], (big_n - j) as u32).mul(&factor(i, i as i64 - j as i64))).collect());
        }
        let w_hat = det_exact(&hat_rows)?;
        let mut data = WronskianData {
            lambda: lambda.clone(),
            reg,
            gens,
            elem_vars,
            kappa,
            vandermonde: vdm,
            w,
            w_hat,
            w_ps: BTreeMap::new(),
            u_is: BTreeMap::new(),
        };
        if s_max > 0 {
            data.extract(s_max)?;
        }
        Ok(data)
    }

    pub fn u_var(&self) -> usize {
        self.reg.index_of(Role::U).expect("u")
    }

    pub fn x_var(&self) -> usize {
        self.reg.index_of(Role::X).expect("x")
    }

    pub fn h(&self) -> RatFunc {
        var(&self.reg, Role::H)
    }

    pub fn elem(&self, p: usize, r: usize) -> RatFunc {
        var(&self.reg, Role::Elem(p, r))
    }

    pub fn z(&self, a: usize) -> RatFunc {
        var(&self.reg, Role::Z(a))
    }

    fn extract(&mut self, s_max: usize) -> Result<()> {
        let big_n = self.lambda.big_n();
        let uv = self.u_var();
        let xv = self.x_var();
        let den = UPoly::new(coeffs_in(&self.w, uv)?);
        let by_x = coeffs_in(&self.w_hat, xv)?;
        let h = self.h();
        for p in 0..=big_n {
            let c = by_x.get(big_n - p).cloned().unwrap_or_else(RatFunc::zero);
            let num = UPoly::new(coeffs_in(&c, uv)?);
            let ser = expand_at_infinity(&num, &den, s_max)?;
            let sign = if p % 2 == 0 { RatFunc::one() } else { RatFunc::from_int(-1) };
            if ser[0] != sign.mul(&elementary(&self.kappa, p)) {
                return Err(YblError::Inconsistent(format!("leading x^{} term of Ŵ/W", big_n - p)));
            }
            if p == 0 {
                if ser.iter().skip(1).any(|c| !c.is_zero()) {
                    return Err(YblError::Inconsistent("x^N term of Ŵ/W is not 1".into()));
                }
                continue;
            }
            let norm = inv_or(&h.mul(&sign), "h")?;
            for (s, c) in ser.into_iter().enumerate().skip(1) {
                self.w_ps.insert((p, s), c.mul(&norm));
            }
        }
        for i in 1..=big_n {
            let ki = &self.kappa[i - 1];
            let mut d = RatFunc::one();
            for j in 1..=big_n {
                if j != i {
                    d = d.mul(&ki.sub(&self.kappa[j - 1]));
                }
            }
            let d = inv_or(&d, "q_i - q_j")?;
            for s in 1..=s_max {
                let mut acc = RatFunc::zero();
                for p in 1..=big_n {
                    let c = ki.pow(big_n as i32 - p as i32 - 1).mul(&d).mul(&self.w_ps[&(p, s)]);
                    acc = if p % 2 == 1 { acc.add(&c) } else { acc.sub(&c) };
                }
                self.u_is.insert((i, s), acc);
            }
        }
        Ok(())
    }

    /// `W^k(u) / ∏(q_i − q_j)`.
    pub fn normalized(&self) -> Result<RatFunc> {
        Ok(self.w.div(&self.vandermonde))
    }

    /// The coefficients of `u^0, …, u^{n−1}` in `W^k(u)/∏(q_i−q_j) − ∏_a(u − z_a)`;
    /// they generate the relation ideal.
    pub fn relations(&self) -> Result<Vec<RatFunc>> {
        let n = self.lambda.n();
        let uv = self.u_var();
        let mut target = RatFunc::one();
        let u = var(&self.reg, Role::U);
        for a in 1..=n {
            target = target.mul(&u.sub(&self.z(a)));
        }
        let diff = self.normalized()?.sub(&target);
        let mut c = coeffs_in(&diff, uv)?;
        if c.len() > n {
            return Err(YblError::Inconsistent("W/∏(q_i−q_j) is not monic of degree n".into()));
        }
        c.resize(n, RatFunc::zero());
        Ok(c)
    }
}

/// Value of a scalar role in a run.
fn setup_value(setup: &Setup, role: Role) -> Option<Sc> {
    match role {
        Role::Z(a) if a <= setup.n() => Some(setup.z(a).clone()),
        Role::H => Some(setup.h().clone()),
        Role::Q(i) if i <= setup.big_n() => Some(setup.q(i).clone()),
        _ => None,
    }
}

fn scalar_values(setup: &Setup, reg: &VarRegistry) -> Vec<Option<Sc>> {
    (0..reg.len()).map(|i| setup_value(setup, reg.role(i))).collect()
}

/// An element of `H^k_λ` as a polynomial in the `ê_{p,r}` with run scalars
/// as coefficients. Exponent vectors follow `WronskianData::gens`.
#[derive(Clone, Debug, PartialEq)]
pub struct HkElem {
    pub terms: BTreeMap<Vec<u32>, Sc>,
    width: usize,
}

impl HkElem {
    pub fn zero(width: usize) -> Self {
        HkElem { terms: BTreeMap::new(), width }
    }

    pub fn scalar(width: usize, c: Sc) -> Self {
        let mut e = Self::zero(width);
        e.push(vec![0; width], c);
        e
    }

    pub fn one(width: usize) -> Self {
        Self::scalar(width, Sc::one())
    }

    pub fn monomial(exps: Vec<u32>) -> Self {
        let mut e = Self::zero(exps.len());
        e.push(exps, Sc::one());
        e
    }

    pub fn width(&self) -> usize {
        self.width
    }

    fn push(&mut self, k: Vec<u32>, c: Sc) {
        let v = match self.terms.remove(&k) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(k, v);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.push(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Sc::from_int(-1)))
    }

    pub fn scale(&self, c: &Sc) -> Self {
        let mut out = Self::zero(self.width);
        for (k, v) in &self.terms {
            out.push(k.clone(), v.mul(c));
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.width);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.push(a.iter().zip(b).map(|(i, j)| i + j).collect(), x.mul(y));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Read a polynomial in `ê` (denominator free of `ê`, `u`, `x`) into run scalars.
    pub fn from_ratfunc(setup: &Setup, data: &WronskianData, f: &RatFunc) -> Result<Self> {
        let vals = scalar_values(setup, &data.reg);
        let gen_of: HashMap<usize, usize> = data.elem_vars.iter().enumerate().map(|(g, &v)| (v, g)).collect();
        let scalar = |i: usize| -> Result<&Sc> {
            vals[i].as_ref().ok_or_else(|| YblError::Precondition(format!("variable {} has no value in this run", data.reg.name(i))))
        };
        let mut den = Sc::zero();
        for (m, c) in f.den().terms() {
            let mut t = Sc::from_q(c);
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&Field::pow(scalar(i)?, e));
                }
            }
            den = den.add(&t);
        }
        let den = inv_or(&den, "denominator of a Wronskian coefficient")?;
        let width = data.gens.len();
        let mut out = Self::zero(width);
        for (m, c) in f.num().terms() {
            let mut key = vec![0u32; width];
            let mut t = Sc::from_q(c);
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match gen_of.get(&i) {
                    Some(&g) => key[g] = e,
                    None => t = t.mul(&Field::pow(scalar(i)?, e)),
                }
            }
            out.push(key, t.mul(&den));
        }
        Ok(out)
    }
}

/// Operator images of monomials, with cached powers.
struct PowCache<'a> {
    gens: &'a [Op],
    pows: Vec<Vec<Op>>,
}

impl<'a> PowCache<'a> {
    fn new(gens: &'a [Op]) -> Self {
        let pows = gens.iter().map(|g| vec![Matrix::identity(g.rows())]).collect();
        PowCache { gens, pows }
    }

    fn pow(&mut self, g: usize, e: u32) -> &Op {
        while self.pows[g].len() <= e as usize {
            let next = self.pows[g].last().expect("identity").mul(&self.gens[g]);
            self.pows[g].push(next);
        }
        &self.pows[g][e as usize]
    }

    fn monomial(&mut self, exps: &[u32], d: usize) -> Op {
        let mut m: Op = Matrix::identity(d);
        for (g, &e) in exps.iter().enumerate() {
            if e > 0 {
                m = m.mul(self.pow(g, e));
            }
        }
        m
    }
}

fn eval_elem(f: &HkElem, gens: &[Op], d: usize) -> Op {
    let mut cache = PowCache::new(gens);
    let mut acc = Matrix::zeros(d, d);
    for (k, c) in &f.terms {
        acc = acc.add(&cache.monomial(k, d).scale(c));
    }
    acc
}

/// Which quantum product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QProduct {
    /// `⋆`, through `ν^+` and the plus action.
    Star,
    /// `•`, through `ν^-` and the minus action.
    Bullet,
}

impl QProduct {
    pub fn nu_kind(self) -> NuKind {
        match self {
            QProduct::Star => NuKind::Plus,
            QProduct::Bullet => NuKind::Minus,
        }
    }
}

/// The two pairings on `H^k_λ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    /// `(f, g) = 𝒮(ν^{k+} f, ν^{k−} g)`.
    Round,
    /// `⟨f, g⟩ = 𝒮(ν^{k=} f, ν^{k−} g)`.
    Angle,
}

/// A spanning monomial family of `H^k_λ` selected on cyclic-vector images.
#[derive(Clone, Debug)]
pub struct HkFrame {
    pub kind: NuKind,
    pub exponents: Vec<Vec<u32>>,
    pub ops: Vec<Op>,
    /// Columns are `μ^k(m) v`.
    pub images: Op,
    pub inverse: Op,
}

/// `H^k_λ` in a run: the Wronskian data together with the operator images
/// `μ^{k±}(ê_{p,r})`.
pub struct HkAlgebra<'a> {
    pub setup: &'a Setup,
    pub lambda: Composition,
    pub weight: Arc<Weight>,
    pub data: WronskianData,
    pub plus: BetheGenSet,
    pub minus: BetheGenSet,
    gens_plus: Vec<Op>,
    gens_minus: Vec<Op>,
    frames: [OnceLock<HkFrame>; 3],
}

fn kind_slot(kind: NuKind) -> usize {
    match kind {
        NuKind::Plus => 0,
        NuKind::Eq => 1,
        NuKind::Minus => 2,
    }
}

impl<'a> HkAlgebra<'a> {
    pub fn new(setup: &'a Setup, lambda: &Composition) -> Result<Self> {
        let s_max = default_s_max(lambda);
        let weight = setup.weight(lambda)?;
        let data = WronskianData::new(lambda, None, s_max)?;
        let plus = bethe_generators(setup, Sign::Plus, lambda, s_max)?;
        let minus = bethe_generators(setup, Sign::Minus, lambda, s_max)?;
        let gens_plus = solve_generators(setup, &data, &plus, weight.dim())?;
        let gens_minus = solve_generators(setup, &data, &minus, weight.dim())?;
        Ok(HkAlgebra {
            setup,
            lambda: lambda.clone(),
            weight,
            data,
            plus,
            minus,
            gens_plus,
            gens_minus,
            frames: Default::default(),
        })
    }

    pub fn dim(&self) -> usize {
        self.weight.dim()
    }

    pub fn width(&self) -> usize {
        self.data.gens.len()
    }

    fn gens(&self, kind: NuKind) -> &[Op] {
        match kind.v_sign() {
            Sign::Plus => &self.gens_plus,
            Sign::Minus => &self.gens_minus,
        }
    }

    fn set(&self, sign: Sign) -> &BetheGenSet {
        match sign {
            Sign::Plus => &self.plus,
            Sign::Minus => &self.minus,
        }
    }

    /// `μ^k(ê_{p,r})` for the sign of `kind`.
    pub fn gen_op(&self, kind: NuKind, p: usize, r: usize) -> Option<&Op> {
        let g = self.data.gens.iter().position(|&x| x == (p, r))?;
        Some(&self.gens(kind)[g])
    }

    pub fn elem(&self, p: usize, r: usize) -> Result<HkElem> {
        let g = self.data.gens.iter().position(|&x| x == (p, r)).ok_or_else(|| YblError::Precondition(format!("no generator ê_{{{p},{r}}}")))?;
        let mut e = vec![0; self.width()];
        e[g] = 1;
        Ok(HkElem::monomial(e))
    }

    /// `Σ_k γ̂_{p,k}`.
    pub fn gamma_hat_sum(&self, p: usize) -> Result<HkElem> {
        if self.lambda.part(p) == 0 {
            return Ok(HkElem::zero(self.width()));
        }
        self.elem(p, 1)
    }

    pub fn from_ratfunc(&self, f: &RatFunc) -> Result<HkElem> {
        HkElem::from_ratfunc(self.setup, &self.data, f)
    }

    pub fn mu(&self, kind: NuKind, f: &HkElem) -> Op {
        eval_elem(f, self.gens(kind), self.dim())
    }

    pub fn cyclic(&self, kind: NuKind) -> Vec<Sc> {
        match kind {
            NuKind::Plus => self.weight.v_plus(),
            NuKind::Eq => self.weight.v_dist(Sign::Plus),
            NuKind::Minus => self.weight.v_dist(Sign::Minus),
        }
    }

    /// `ν^{k±}(f) = μ^{k±}(f) v^±`.
    pub fn nu(&self, kind: NuKind, f: &HkElem) -> Vec<Sc> {
        self.mu(kind, f).mul_vec(&self.cyclic(kind))
    }

    pub fn pairing(&self, kind: PairKind, f: &HkElem, g: &HkElem) -> Result<Sc> {
        let left = match kind {
            PairKind::Round => self.nu(NuKind::Plus, f),
            PairKind::Angle => self.nu(NuKind::Eq, f),
        };
        shapovalov(&left, &self.nu(NuKind::Minus, g))
    }

    /// First `(p, s)` with `μ^k(W^k_{p,s}) ≠ ρ(h^{s−1}B^k_{p,s})` or
    /// `μ^k(U^k_{i,s}) ≠ ρ(h^{s−1}S^k_{i,s})`.
    pub fn generator_failure(&self, sign: Sign) -> Result<Option<String>> {
        let kind = if sign == Sign::Plus { NuKind::Plus } else { NuKind::Minus };
        let set = self.set(sign);
        for ((p, s), m) in &set.b {
            if self.mu(kind, &self.from_ratfunc(&self.data.w_ps[&(*p, *s)])?) != *m {
                return Ok(Some(format!("W[{p},{s}]")));
            }
        }
        for ((i, s), m) in &set.s {
            if self.mu(kind, &self.from_ratfunc(&self.data.u_is[&(*i, *s)])?) != *m {
                return Ok(Some(format!("U[{i},{s}]")));
            }
        }
        Ok(None)
    }

    /// Substitute the operators `μ^k(ê_{p,r})` into `W^k(u)` and compare with
    /// `∏(q_i−q_j) ∏(u−z_a) · Id`; reports the first failing `u`-coefficient.
    pub fn hk_relation_failure(&self, sign: Sign) -> Result<Option<String>> {
        let kind = if sign == Sign::Plus { NuKind::Plus } else { NuKind::Minus };
        let uv = self.data.u_var();
        let coeffs = coeffs_in(&self.data.w, uv)?;
        let n = self.lambda.n();
        let vdm = HkElem::from_ratfunc(self.setup, &self.data, &self.data.vandermonde)?;
        let vdm = vdm.terms.get(&vec![0; self.width()]).cloned().unwrap_or_else(Sc::zero);
        let d = self.dim();
        for k in 0..=n.max(coeffs.len().saturating_sub(1)) {
            let got = match coeffs.get(k) {
                Some(c) => self.mu(kind, &self.from_ratfunc(c)?),
                None => Matrix::zeros(d, d),
            };
            // coefficient of u^k in ∏(u − z_a) is (−1)^{n−k} σ_{n−k}(z)
            let want = if k <= n {
                let e = elementary(self.setup.zs(), n - k);
                let e = if (n - k) % 2 == 0 { e } else { e.neg() };
                Matrix::scalar(d, e.mul(&vdm))
            } else {
                Matrix::zeros(d, d)
            };
            if got != want {
                return Ok(Some(format!("coefficient of u^{k}")));
            }
        }
        Ok(None)
    }

    /// The multiplication formula for `ρ^{k±}(X^{k−}_{λ,i})` as an element of `H^k_λ`.
    pub fn x_kminus_elem(&self, i: usize) -> Result<HkElem> {
        let h = self.setup.h();
        let li = self.lambda.part(i) as i64;
        let qi = self.setup.q(i);
        let mut c = Sc::zero();
        for j in 1..=self.lambda.big_n() {
            if j == i {
                continue;
            }
            let m = (self.lambda.part(j) as i64 - li).min(0);
            if m == 0 {
                continue;
            }
            let qj = self.setup.q(j);
            let num = if j < i { qi } else { qj };
            c = c.add(&num.mul(&inv_or(&qi.sub(qj), "q_i - q_j")?).mul(h).mul(&Sc::from_int(m)));
        }
        Ok(self.gamma_hat_sum(i)?.add(&HkElem::scalar(self.width(), c)))
    }

    /// Monomials in `ê_{p,r}`, `p < N`, by weighted degree, greedily kept while
    /// their cyclic-vector images stay independent.
    pub fn frame(&self, kind: NuKind) -> Result<&HkFrame> {
        let slot = &self.frames[kind_slot(kind)];
        if let Some(f) = slot.get() {
            return Ok(f);
        }
        let f = self.build_frame(kind)?;
        let _ = slot.set(f);
        Ok(slot.get().expect("just set"))
    }

    fn build_frame(&self, kind: NuKind) -> Result<HkFrame> {
        let d = self.dim();
        let big_n = self.lambda.big_n();
        let free: Vec<usize> = (0..self.width()).filter(|&g| self.data.gens[g].0 < big_n).collect();
        let weights: Vec<usize> = free.iter().map(|&g| self.data.gens[g].1).collect();
        let v = self.cyclic(kind);
        let mut cache = PowCache::new(self.gens(kind));
        let (mut exponents, mut ops, mut cols) = (Vec::new(), Vec::new(), Vec::<Vec<Sc>>::new());
        for e in monomials_by_degree(&weights, self.lambda.cross_degree()) {
            let mut full = vec![0u32; self.width()];
            for (&g, &a) in free.iter().zip(&e) {
                full[g] = a as u32;
            }
            let op = cache.monomial(&full, d);
            cols.push(op.mul_vec(&v));
            if Matrix::from_columns(d, &cols).rank() == cols.len() {
                exponents.push(full);
                ops.push(op);
                if ops.len() == d {
                    break;
                }
            } else {
                cols.pop();
            }
        }
        if ops.len() < d {
            return Err(YblError::Degenerate(format!("cyclic vector images do not span V_{} at these parameters", self.lambda)));
        }
        let images = Matrix::from_columns(d, &cols);
        let inverse = images.inverse()?;
        Ok(HkFrame { kind, exponents, ops, images, inverse })
    }

    /// `β(c) = (ν^k)^{-1} ν(c)` as an element of `H^k_λ` (`Plus`: `β^+`, `Minus`: `β^-`).
    pub fn beta(&self, kind: NuKind, c: &CohomClass) -> Result<HkElem> {
        let frame = self.frame(kind)?;
        let y = frame.inverse.mul_vec(&crate::cohomology::nu_map(self.setup, kind, c)?);
        let mut out = HkElem::zero(self.width());
        for (e, c) in frame.exponents.iter().zip(y) {
            out = out.add(&HkElem::monomial(e.clone()).scale(&c));
        }
        Ok(out)
    }

    /// The Bethe operator `B_c` with `B_c v = ν(c)`, i.e. `μ^k(β(c))`.
    pub fn bethe_op(&self, kind: NuKind, c: &CohomClass) -> Result<Op> {
        let frame = self.frame(kind)?;
        let y = frame.inverse.mul_vec(&crate::cohomology::nu_map(self.setup, kind, c)?);
        let d = self.dim();
        Ok(frame.ops.iter().zip(&y).fold(Matrix::zeros(d, d), |acc, (m, c)| acc.add(&m.scale(c))))
    }

    /// `f ⊙` on restriction coordinates: `ν^{-1} B_f ν`.
    pub fn quantum_mul_op(&self, prod: QProduct, f: &CohomClass) -> Result<Op> {
        let kind = prod.nu_kind();
        let nu = nu_matrix(self.setup, kind, &self.lambda)?;
        Ok(nu.inverse()?.mul(&self.bethe_op(kind, f)?).mul(&nu))
    }

    pub fn quantum_mul(&self, prod: QProduct, f: &CohomClass, g: &CohomClass) -> Result<CohomClass> {
        Ok(CohomClass { lambda: self.lambda.clone(), values: self.quantum_mul_op(prod, f)?.mul_vec(&g.values) })
    }
}

/// `μ^k(ê_{i,r})` from `U^k_{i,r+1} = r ê_{i,r} + (terms in ê_{·,r'}, r' < r)`.
fn solve_generators(setup: &Setup, data: &WronskianData, set: &BetheGenSet, d: usize) -> Result<Vec<Op>> {
    let width = data.gens.len();
    let mut ops: Vec<Option<Op>> = vec![None; width];
    let rmax = data.gens.iter().map(|g| g.1).max().unwrap_or(0);
    for r in 1..=rmax {
        for (g, &(i, rr)) in data.gens.iter().enumerate() {
            if rr != r {
                continue;
            }
            let u = HkElem::from_ratfunc(setup, data, &data.u_is[&(i, r + 1)])?;
            let mut lin = vec![0u32; width];
            lin[g] = 1;
            let mut rest = HkElem::zero(width);
            let mut lead = Sc::zero();
            for (k, c) in &u.terms {
                if *k == lin {
                    lead = c.clone();
                    continue;
                }
                if k.iter().enumerate().any(|(g2, &e)| e > 0 && data.gens[g2].1 >= r) {
                    return Err(YblError::Inconsistent(format!("U[{i},{}] is not triangular in ê", r + 1)));
                }
                rest.push(k.clone(), c.clone());
            }
            let known: Vec<Op> = ops.iter().map(|o| o.clone().unwrap_or_else(|| Matrix::zeros(d, d))).collect();
            let lead = inv_or(&lead, "leading coefficient of U")?;
            let op = set.s[&(i, r + 1)].sub(&eval_elem(&rest, &known, d)).scale(&lead);
            ops[g] = Some(op);
        }
    }
    Ok(ops.into_iter().map(|o| o.expect("all generators solved")).collect())
}

/// `(Σ_k γ_{i,k}) ⊙` through the dynamical Hamiltonians: `ρ^+_H(X^{k+}_i)` for
/// `⋆`, `ρ^-_H(X^{k−}_{λ,i})` for `•`.
pub fn chern_sum_mul_op(setup: &Setup, prod: QProduct, lambda: &Composition, i: usize) -> Result<Op> {
    let (sign, kind) = match prod {
        QProduct::Star => (Sign::Plus, HamKind::KPlus),
        QProduct::Bullet => (Sign::Minus, HamKind::KMinus),
    };
    let x = dynamical_hamiltonians(setup, sign, kind, lambda)?;
    rho_on_h(setup, prod.nu_kind(), lambda, lambda, &x[i - 1])
}

/// Matrices of `(Σ_k γ_{i,k}) ⊙` on the `HBasis` frame, `i = 1..N`, computed
/// through `β`, and the flatness verdict of `κ q_i∂_{q_i} − (Σγ_i)⊙`.
pub fn quantum_connection(setup: &Setup, prod: QProduct, lambda: &Composition) -> Result<(Vec<Op>, Option<String>)> {
    let alg = HkAlgebra::new(setup, lambda)?;
    let hb = HBasis::new(setup, lambda)?;
    let mut mats = Vec::new();
    for i in 1..=lambda.big_n() {
        let c = crate::cohomology::gamma_sum(setup, lambda, i)?;
        mats.push(hb.conjugate(&alg.quantum_mul_op(prod, &c)?));
    }
    let flat = flatness_failure(setup, &mats)?;
    Ok((mats, flat))
}

/// Outcome of the Calogero–Moser identities.
#[derive(Clone, Debug, PartialEq)]
pub struct CmReport {
    pub w_matches: bool,
    pub w_hat_matches: bool,
    pub rank: usize,
    pub trace_matches: bool,
    pub first_failure: Option<String>,
}

/// The matrix `C` for `N = n`, `λ = (1, …, 1)`, with `x_i = ê_{i,1}`.
pub fn cm_matrix(data: &WronskianData) -> Matrix<RatFunc> {
    let n = data.lambda.big_n();
    let h = data.h();
    let k = &data.kappa;
    Matrix::from_fn(n, n, |i, j| {
        if i == j {
            let mut c = data.elem(i + 1, 1);
            for jj in 0..n {
                if jj == i {
                    continue;
                }
                let num = if jj < i { &k[i] } else { &k[jj] };
                c = c.sub(&h.mul(num).div(&k[i].sub(&k[jj])));
            }
            c
        } else {
            h.mul(&k[i]).div(&k[i].sub(&k[j]))
        }
    })
}

fn rows_of(m: &Matrix<RatFunc>) -> Vec<Vec<RatFunc>> {
    (0..m.rows()).map(|i| m.row(i)).collect()
}

/// `W^k(u) = det(u − C)∏(q_i−q_j)`, `Ŵ^k(u,x) = det((u−C)(x−Q) − hQ)∏(q_i−q_j)`,
/// `rank(CQ − QC − hQ) = 1` at a numeric point, and the trace identity
/// `tr C² = Σ C_ii² − 2h² Σ_{i<j} q_iq_j/(q_i−q_j)²`.
pub fn cm_identities(n: usize, q: Option<&[Q]>) -> Result<CmReport> {
    let lambda = Composition::new(vec![1; n])?;
    let data = WronskianData::new(&lambda, q, 0)?;
    let c = cm_matrix(&data);
    let u = var(&data.reg, Role::U);
    let x = var(&data.reg, Role::X);
    let h = data.h();
    let uc = Matrix::scalar(n, u.clone()).sub(&c);
    let w = det_exact(&rows_of(&uc))?.mul(&data.vandermonde);
    let qm = Matrix::diagonal(&data.kappa);
    let hat = uc.mul(&Matrix::scalar(n, x.clone()).sub(&qm)).sub(&qm.scale(&h));
    let w_hat = det_exact(&rows_of(&hat))?.mul(&data.vandermonde);
    let mut first_failure = None;
    let w_matches = w == data.w;
    if !w_matches {
        let d = coeffs_in(&w.sub(&data.w), data.u_var())?;
        let k = d.iter().position(|c| !c.is_zero()).unwrap_or(0);
        first_failure = Some(format!("W: coefficient of u^{k}"));
    }
    let w_hat_matches = w_hat == data.w_hat;
    if !w_hat_matches && first_failure.is_none() {
        let d = coeffs_in(&w_hat.sub(&data.w_hat), data.x_var())?;
        let k = d.iter().position(|c| !c.is_zero()).unwrap_or(0);
        first_failure = Some(format!("Ŵ: coefficient of x^{k}"));
    }
    // numeric rank at a fixed generic point
    let comm = c.mul(&qm).sub(&qm.mul(&c)).sub(&qm.scale(&h));
    let point: Vec<Q> = (0..data.reg.len())
        .map(|i| match data.reg.role(i) {
            Role::Q(j) => ybl_algebra::q(2 * j as i64 + 1, 3 + j as i64),
            Role::H => ybl_algebra::q(5, 7),
            _ => ybl_algebra::q(3 * i as i64 + 2, 11),
        })
        .collect();
    let numeric = comm.try_map(|e| e.eval(&point))?;
    let rank = numeric.rank();
    if rank != 1 && first_failure.is_none() {
        first_failure = Some(format!("rank(CQ − QC − hQ) = {rank}"));
    }
    let mut rhs = RatFunc::zero();
    for i in 0..n {
        rhs = rhs.add(&Field::pow(c.get(i, i), 2));
        for j in i + 1..n {
            let (a, b) = (&data.kappa[i], &data.kappa[j]);
            rhs = rhs.sub(&h.mul(&h).mul(&RatFunc::from_int(2)).mul(a).mul(b).div(&Field::pow(&a.sub(b), 2)));
        }
    }
    let trace_matches = c.mul(&c).trace() == rhs;
    if !trace_matches && first_failure.is_none() {
        first_failure = Some("tr C²".into());
    }
    Ok(CmReport { w_matches, w_hat_matches, rank, trace_matches, first_failure })
}

/// Outcome of the `h → ∞` limit check.
#[derive(Clone, Debug)]
pub struct LimitReport {
    /// `det M(u)` in the Wronskian registry.
    pub limit: RatFunc,
    /// `W^k/∏(q_i−q_j) − det M(u)` after the substitution.
    pub difference: RatFunc,
    /// `deg_h` of the difference (`None` when it vanishes).
    pub h_degree: Option<i64>,
}

impl LimitReport {
    pub fn passes(&self) -> bool {
        self.h_degree.map_or(true, |d| d < 0)
    }
}

/// Substitute `q_1 = 1`, `q_{i+1} = r_i q_i h^{−λ_i−λ_{i+1}}` into
/// `W^k(u)/∏(q_i−q_j)` and compare with `det M(u)` as `h → ∞`.
pub fn limit_h_inf(lambda: &Composition) -> Result<LimitReport> {
    if lambda.parts().iter().any(|&l| l == 0) {
        return Err(YblError::Precondition("the h → ∞ limit needs all λ_i > 0".into()));
    }
    let big_n = lambda.big_n();
    let data = WronskianData::build(lambda, None, 0, true)?;
    let reg = &data.reg;
    let h = data.h();
    let r: Vec<RatFunc> = (1..big_n).map(|i| RatFunc::var_named(reg, &format!("r{i}")).expect("r var")).collect();
    let mut kappa = vec![RatFunc::one()];
    for i in 1..big_n {
        let e = -((lambda.part(i) + lambda.part(i + 1)) as i32);
        kappa.push(r[i - 1].mul(&kappa[i - 1]).mul(&h.pow(e)));
    }
    let mut f = data.normalized()?;
    for (i, k) in kappa.iter().enumerate() {
        f = f.substitute(reg.index_of(Role::Q(i + 1)).expect("q var"), k)?;
    }
    let u = var(reg, Role::U);
    let m = Matrix::from_fn(big_n, big_n, |i, j| {
        if i == j {
            let lp = lambda.part(i + 1);
            let mut acc = RatFunc::zero();
            for rr in 0..=lp {
                let e = if rr == 0 { RatFunc::one() } else { data.elem(i + 1, rr) };
                let t = e.mul(&Field::pow(&u, (lp - rr) as u32));
                acc = if rr % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            acc
        } else if j == i + 1 {
            RatFunc::from_int(if lambda.part(i + 1) % 2 == 0 { 1 } else { -1 })
        } else if i == j + 1 {
            r[j].clone()
        } else {
            RatFunc::zero()
        }
    });
    let limit = det_exact(&rows_of(&m))?;
    let difference = f.sub(&limit);
    let hv = reg.index_of(Role::H).expect("h");
    let h_degree = (!difference.is_zero()).then(|| difference.degree_in(hv));
    Ok(LimitReport { limit, difference, h_degree })
}
