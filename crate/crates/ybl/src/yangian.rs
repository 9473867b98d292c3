//! The Yangian actions `ρ^±` on weight subspaces: `L^±(u)` entries, quantum
//! minors, Bethe and Gelfand–Tsetlin generators, the `A/E/F` series,
//! dynamical Hamiltonians and the qKZ operators at zero step.

use std::collections::BTreeMap;
use std::sync::Arc;

use ybl_algebra::{expand_at_infinity, Field, Matrix, UPoly};

use crate::error::{Result, YblError};
use crate::model::{Op, Sc, Setup, Weight};
use crate::weight_space::{gl_action, Composition, Sign, Word};

/// Operator-valued polynomial `Σ_k c_k u^k` from one weight space to another.
#[derive(Clone, Debug, PartialEq)]
pub struct UOp {
    rows: usize,
    cols: usize,
    c: Vec<Op>,
}

impl UOp {
    pub fn zero(rows: usize, cols: usize) -> Self {
        UOp { rows, cols, c: Vec::new() }
    }

    pub fn constant(m: Op) -> Self {
        UOp { rows: m.rows(), cols: m.cols(), c: vec![m] }.trimmed()
    }

    pub fn identity(d: usize) -> Self {
        Self::constant(Matrix::identity(d))
    }

    fn trimmed(mut self) -> Self {
        while self.c.last().is_some_and(|m| m.is_zero()) {
            self.c.pop();
        }
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn coeffs(&self) -> &[Op] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> Op {
        self.c.get(k).cloned().unwrap_or_else(|| Matrix::zeros(self.rows, self.cols))
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        UOp { rows: self.rows, cols: self.cols, c: (0..n).map(|k| self.coeff(k).add(&o.coeff(k))).collect() }.trimmed()
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        UOp { rows: self.rows, cols: self.cols, c: self.c.iter().map(|m| m.neg()).collect() }
    }

    pub fn scale(&self, k: &Sc) -> Self {
        UOp { rows: self.rows, cols: self.cols, c: self.c.iter().map(|m| m.scale(k)).collect() }.trimmed()
    }

    /// Composition `self ∘ o`.
    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UOp::zero(self.rows, o.cols);
        }
        let mut c = vec![Matrix::zeros(self.rows, o.cols); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = c[i + j].add(&a.mul(b));
                }
            }
        }
        UOp { rows: self.rows, cols: o.cols, c }.trimmed()
    }

    pub fn mul_upoly(&self, p: &UPoly<Sc>) -> Self {
        if self.is_zero() || p.is_zero() {
            return UOp::zero(self.rows, self.cols);
        }
        let mut c = vec![Matrix::zeros(self.rows, self.cols); self.c.len() + p.coeffs().len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in p.coeffs().iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = c[i + j].add(&a.scale(b));
                }
            }
        }
        UOp { rows: self.rows, cols: self.cols, c }.trimmed()
    }

    pub fn eval(&self, u: &Sc) -> Op {
        let mut acc = Matrix::zeros(self.rows, self.cols);
        for m in self.c.iter().rev() {
            acc = acc.scale(u).add(m);
        }
        acc
    }

    pub fn entry(&self, r: usize, c: usize) -> UPoly<Sc> {
        UPoly::new(self.c.iter().map(|m| m.get(r, c).clone()).collect())
    }

    /// Image of a coordinate vector, one polynomial per target coordinate.
    pub fn apply(&self, v: &[Sc]) -> Vec<UPoly<Sc>> {
        let imgs: Vec<Vec<Sc>> = self.c.iter().map(|m| m.mul_vec(v)).collect();
        (0..self.rows).map(|r| UPoly::new(imgs.iter().map(|x| x[r].clone()).collect())).collect()
    }
}

/// `num(u)/den(u)` with a scalar denominator: the image of a Yangian series.
#[derive(Clone, Debug)]
pub struct RatOp {
    pub src: Arc<Weight>,
    pub tgt: Arc<Weight>,
    pub num: UOp,
    pub den: UPoly<Sc>,
}

impl RatOp {
    /// Coefficients of `u^0, u^{-1}, …, u^{-order}` at `u = ∞`.
    pub fn expand(&self, order: usize) -> Result<Vec<Op>> {
        let mut out = vec![Matrix::zeros(self.num.rows, self.num.cols); order + 1];
        for r in 0..self.num.rows {
            for c in 0..self.num.cols {
                let e = self.num.entry(r, c);
                if e.is_zero() {
                    continue;
                }
                for (s, a) in expand_at_infinity(&e, &self.den, order)?.into_iter().enumerate() {
                    out[s].set(r, c, a);
                }
            }
        }
        Ok(out)
    }

    pub fn eval(&self, u: &Sc) -> Result<Op> {
        let d = inv_or(&self.den.eval(u), "spectral denominator")?;
        Ok(self.num.eval(u).scale(&d))
    }
}

/// `∏_a (u − z_a − h·shift)`.
pub fn z_den(setup: &Setup, shift: i64) -> UPoly<Sc> {
    let hs = setup.h().mul(&Sc::from_int(shift));
    setup.zs().iter().fold(UPoly::one(), |acc, z| acc.mul(&UPoly::linear(&z.add(&hs))))
}

/// Weight reached from `λ` by `e_{j_1}+… − e_{i_1} −…`.
fn shift_weight(lambda: &Composition, plus: &[usize], minus: &[usize]) -> Option<Composition> {
    let mut p: Vec<i64> = lambda.parts().iter().map(|&x| x as i64).collect();
    for &j in plus {
        p[j - 1] += 1;
    }
    for &i in minus {
        p[i - 1] -= 1;
    }
    if p.iter().any(|&x| x < 0) {
        return None;
    }
    Composition::new(p.into_iter().map(|x| x as usize).collect()).ok()
}

/// Numerator `L^±_{i,j}(u − h·shift)` restricted to `V_λ`, mapping into
/// `V_{λ+e_j−e_i}`; `None` when that weight space is empty.
pub fn l_entry(setup: &Setup, sign: Sign, i: usize, j: usize, src: &Arc<Weight>, shift: i64) -> Result<Option<(Arc<Weight>, UOp)>> {
    let Some(tl) = shift_weight(src.lambda(), &[j], &[i]) else { return Ok(None) };
    let tgt = setup.weight(&tl)?;
    let n = setup.n();
    let order: Vec<usize> = match sign {
        Sign::Plus => (0..n).collect(),
        Sign::Minus => (0..n).rev().collect(),
    };
    let hs = setup.h().mul(&Sc::from_int(shift));
    let lin: Vec<UPoly<Sc>> = setup.zs().iter().map(|z| UPoly::linear(&z.add(&hs))).collect();
    let mut c: Vec<Op> = vec![Matrix::zeros(tgt.dim(), src.dim()); n + 1];
    struct Walk<'a> {
        order: &'a [usize],
        lin: &'a [UPoly<Sc>],
        h: &'a Sc,
        end: usize,
    }
    fn go(w: &Walk, step: usize, aux: usize, word: &mut Word, poly: UPoly<Sc>, out: &mut Vec<(Word, UPoly<Sc>)>) {
        if step == w.order.len() {
            if aux == w.end {
                out.push((word.clone(), poly));
            }
            return;
        }
        let a = w.order[step];
        go(w, step + 1, aux, word, poly.mul(&w.lin[a]), out);
        let other = word[a];
        word[a] = aux;
        go(w, step + 1, other, word, poly.scale(w.h), out);
        word[a] = other;
    }
    let walk = Walk { order: &order, lin: &lin, h: setup.h(), end: i };
    for (k, w) in src.basis.words().iter().enumerate() {
        let mut out = Vec::new();
        go(&walk, 0, j, &mut w.clone(), UPoly::one(), &mut out);
        for (word, poly) in out {
            let r = tgt.basis.index_of(&word).expect("weight bookkeeping");
            for (m, a) in poly.coeffs().iter().enumerate() {
                let v = c[m].get(r, k).add(a);
                c[m].set(r, k, v);
            }
        }
    }
    Ok(Some((tgt.clone(), UOp { rows: tgt.dim(), cols: src.dim(), c }.trimmed())))
}

/// `ρ^±(T_{i,j}(u/h)) = L^±_{i,j}(u) / ∏(u − z_a)` on `V_λ`.
pub fn rho_t(setup: &Setup, sign: Sign, i: usize, j: usize, lambda: &Composition) -> Result<Option<RatOp>> {
    let src = setup.weight(lambda)?;
    Ok(l_entry(setup, sign, i, j, &src, 0)?.map(|(tgt, num)| RatOp { src, tgt, num, den: z_den(setup, 0) }))
}

fn permutations(p: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                cur.push(k);
                rec(cur, used, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; p], &mut out);
    out.into_iter()
        .map(|s| {
            let inv = (0..p).flat_map(|a| (a + 1..p).map(move |b| (a, b))).filter(|&(a, b)| s[a] > s[b]).count();
            (s, if inv % 2 == 0 { 1 } else { -1 })
        })
        .collect()
}

/// `ρ^±(M_{𝐢,𝐣}(u/h))` on `V_λ`; `None` when the target weight is empty.
pub fn quantum_minor(setup: &Setup, sign: Sign, rows: &[usize], cols: &[usize], lambda: &Composition) -> Result<Option<RatOp>> {
    let p = rows.len();
    if cols.len() != p || rows.windows(2).any(|w| w[0] >= w[1]) || cols.windows(2).any(|w| w[0] >= w[1]) {
        return Err(YblError::Precondition("minor indices must be increasing and of equal length".into()));
    }
    let Some(tl) = shift_weight(lambda, cols, rows) else { return Ok(None) };
    let src = setup.weight(lambda)?;
    let tgt = setup.weight(&tl)?;
    let mut num = UOp::zero(tgt.dim(), src.dim());
    'perm: for (s, sg) in permutations(p) {
        let mut acc = UOp::identity(src.dim());
        let mut cur = src.clone();
        for m in (0..p).rev() {
            match l_entry(setup, sign, rows[m], cols[s[m]], &cur, m as i64)? {
                Some((next, l)) => {
                    acc = l.mul(&acc);
                    cur = next;
                }
                None => continue 'perm,
            }
            if acc.is_zero() {
                continue 'perm;
            }
        }
        num = if sg > 0 { num.add(&acc) } else { num.sub(&acc) };
    }
    let den = (0..p as i64).fold(UPoly::one(), |acc, m| acc.mul(&z_den(setup, m)));
    Ok(Some(RatOp { src, tgt, num, den }))
}

/// `A_p(u) = M_{1..p,1..p}(u/h)`.
pub fn a_series(setup: &Setup, sign: Sign, p: usize, lambda: &Composition) -> Result<RatOp> {
    let idx: Vec<usize> = (1..=p).collect();
    Ok(quantum_minor(setup, sign, &idx, &idx, lambda)?.expect("diagonal minor"))
}

/// `h·E_p(u)·A_p(u) = M_{𝐣,𝐢}(u/h)` with `𝐢 = 1..p`, `𝐣 = 1..p−1,p+1`: raises the weight by `α_p`.
pub fn e_minor(setup: &Setup, sign: Sign, p: usize, lambda: &Composition) -> Result<Option<RatOp>> {
    let i: Vec<usize> = (1..=p).collect();
    let mut j: Vec<usize> = (1..p).collect();
    j.push(p + 1);
    quantum_minor(setup, sign, &j, &i, lambda)
}

/// `h·A_p(u)·F_p(u) = M_{𝐢,𝐣}(u/h)`: lowers the weight by `α_p`.
pub fn f_minor(setup: &Setup, sign: Sign, p: usize, lambda: &Composition) -> Result<Option<RatOp>> {
    let i: Vec<usize> = (1..=p).collect();
    let mut j: Vec<usize> = (1..p).collect();
    j.push(p + 1);
    quantum_minor(setup, sign, &i, &j, lambda)
}

/// Coefficients `u^0..u^{-order}` of `E_p(u)` on `V_λ` (the `u^{-s}` term is `ρ(h^{s−1}E_{p,s})`).
pub fn e_series(setup: &Setup, sign: Sign, p: usize, lambda: &Composition, order: usize) -> Result<Option<(Arc<Weight>, Vec<Op>)>> {
    let Some(m) = e_minor(setup, sign, p, lambda)? else { return Ok(None) };
    let a = a_series(setup, sign, p, lambda)?.expand(order)?;
    let hi = h_inv(setup);
    let prod = series_mul(&m.expand(order)?, &series_inv(&a, order)?, order);
    Ok(Some((m.tgt.clone(), prod.into_iter().map(|x| x.scale(&hi)).collect())))
}

/// Coefficients of `F_p(u)` on `V_λ`.
pub fn f_series(setup: &Setup, sign: Sign, p: usize, lambda: &Composition, order: usize) -> Result<Option<(Arc<Weight>, Vec<Op>)>> {
    let Some(m) = f_minor(setup, sign, p, lambda)? else { return Ok(None) };
    let a = a_series(setup, sign, p, m.tgt.lambda())?.expand(order)?;
    let hi = h_inv(setup);
    let prod = series_mul(&series_inv(&a, order)?, &m.expand(order)?, order);
    Ok(Some((m.tgt.clone(), prod.into_iter().map(|x| x.scale(&hi)).collect())))
}

/// Truncated product of operator series in `u^{-1}`.
pub fn series_mul(a: &[Op], b: &[Op], order: usize) -> Vec<Op> {
    (0..=order)
        .map(|s| {
            let mut acc = Matrix::zeros(a[0].rows(), b[0].cols());
            for k in 0..=s {
                if k < a.len() && s - k < b.len() {
                    acc = acc.add(&a[k].mul(&b[s - k]));
                }
            }
            acc
        })
        .collect()
}

/// Inverse of an operator series with invertible constant term.
pub fn series_inv(a: &[Op], order: usize) -> Result<Vec<Op>> {
    let y0 = a[0].inverse()?;
    let mut y = vec![y0.clone()];
    for s in 1..=order {
        let mut acc = Matrix::zeros(a[0].rows(), a[0].cols());
        for k in 1..=s.min(a.len() - 1) {
            acc = acc.add(&a[k].mul(&y[s - k]));
        }
        y.push(y0.mul(&acc).neg());
    }
    Ok(y)
}

pub(crate) fn inv_or(x: &Sc, what: &str) -> Result<Sc> {
    Field::inv(x).ok_or_else(|| YblError::Degenerate(what.to_string()))
}

fn h_inv(setup: &Setup) -> Sc {
    Field::inv(setup.h()).expect("h is nonzero")
}

/// `ρ^±(h^{s−1} T^{(s)}_{i,j})`, from the `u^{-s}` coefficient of `ρ^±(T_{i,j}(u/h))`.
pub fn t_coeff(setup: &Setup, sign: Sign, i: usize, j: usize, lambda: &Composition, s: usize) -> Result<Option<(Arc<Weight>, Op)>> {
    Ok(match rho_t(setup, sign, i, j, lambda)? {
        Some(t) => Some((t.tgt.clone(), t.expand(s)?[s].scale(&h_inv(setup)))),
        None => None,
    })
}

fn subsets(big_n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, big_n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..=big_n {
            cur.push(i);
            rec(i + 1, big_n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, big_n, p, &mut Vec::new(), &mut out);
    out
}

/// `σ_p(q_1..q_N)`.
pub fn elementary_q(setup: &Setup, p: usize) -> Sc {
    subsets(setup.big_n(), p)
        .iter()
        .fold(Sc::zero(), |acc, s| acc.add(&s.iter().fold(Sc::one(), |m, &i| m.mul(setup.q(i)))))
}

/// The stored generators of the Bethe algebra on one weight space.
#[derive(Clone, Debug)]
pub struct BetheGenSet {
    pub sign: Sign,
    pub weight: Arc<Weight>,
    pub s_max: usize,
    /// `(p, s) ↦ ρ^±(h^{s−1} B^k_{p,s})`.
    pub b: BTreeMap<(usize, usize), Op>,
    /// `(i, s) ↦ ρ^±(h^{s−1} S^k_{i,s})`.
    pub s: BTreeMap<(usize, usize), Op>,
}

impl BetheGenSet {
    pub fn all_ops(&self) -> impl Iterator<Item = &Op> {
        self.b.values().chain(self.s.values())
    }

    /// First pair of stored generators that fails to commute.
    pub fn first_noncommuting(&self) -> Option<String> {
        let ops: Vec<(String, &Op)> = self
            .b
            .iter()
            .map(|((p, s), m)| (format!("B[{p},{s}]"), m))
            .chain(self.s.iter().map(|((i, s), m)| (format!("S[{i},{s}]"), m)))
            .collect();
        for x in 0..ops.len() {
            for y in x + 1..ops.len() {
                if !ops[x].1.commutator(ops[y].1).is_zero() {
                    return Some(format!("{} vs {}", ops[x].0, ops[y].0));
                }
            }
        }
        None
    }
}

/// Default series depth `max_p λ_p + 1`.
pub fn default_s_max(lambda: &Composition) -> usize {
    lambda.parts().iter().copied().max().unwrap_or(0) + 1
}

/// `B^k_p(u)` numerators summed over `p`-subsets, expanded at infinity.
pub fn bethe_generators(setup: &Setup, sign: Sign, lambda: &Composition, s_max: usize) -> Result<BetheGenSet> {
    let w = setup.weight(lambda)?;
    let big_n = setup.big_n();
    let hi = h_inv(setup);
    let mut b = BTreeMap::new();
    for p in 1..=big_n {
        let mut num = UOp::zero(w.dim(), w.dim());
        let mut den = UPoly::one();
        for set in subsets(big_n, p) {
            let m = quantum_minor(setup, sign, &set, &set, lambda)?.expect("diagonal minor");
            let qp = set.iter().fold(Sc::one(), |acc, &i| acc.mul(setup.q(i)));
            num = num.add(&m.num.scale(&qp));
            den = m.den;
        }
        let ser = RatOp { src: w.clone(), tgt: w.clone(), num, den }.expand(s_max)?;
        if ser[0] != Matrix::scalar(w.dim(), elementary_q(setup, p)) {
            return Err(YblError::Inconsistent(format!("leading term of B_{p}(u)")));
        }
        for (s, m) in ser.into_iter().enumerate().skip(1) {
            b.insert((p, s), m.scale(&hi));
        }
    }
    let mut st = BTreeMap::new();
    for i in 1..=big_n {
        let qi = setup.q(i);
        let mut den = Sc::one();
        for j in 1..=big_n {
            if j != i {
                den = den.mul(&qi.sub(setup.q(j)));
            }
        }
        let den = inv_or(&den, "q_i - q_j")?;
        for s in 1..=s_max {
            let mut acc = Matrix::zeros(w.dim(), w.dim());
            for p in 1..=big_n {
                let e = big_n as i32 - p as i32 - 1;
                let c = qi.pow_i(e).mul(&den);
                let c = if p % 2 == 1 { c } else { c.neg() };
                acc = acc.add(&b[&(p, s)].scale(&c));
            }
            st.insert((i, s), acc);
        }
    }
    let set = BetheGenSet { sign, weight: w, s_max, b, s: st };
    if let Some(bad) = set.first_noncommuting() {
        return Err(YblError::Inconsistent(format!("Bethe generators do not commute: {bad}")));
    }
    Ok(set)
}

trait PowI {
    fn pow_i(&self, e: i32) -> Self;
}

impl PowI for Sc {
    fn pow_i(&self, e: i32) -> Self {
        ybl_algebra::RatFunc::pow(self, e)
    }
}

/// `(p, s) ↦ ρ^±(h^{s−1} B^∞_{p,s})`, the Gelfand–Tsetlin generators.
pub fn gt_generators(setup: &Setup, sign: Sign, lambda: &Composition, s_max: usize) -> Result<BTreeMap<(usize, usize), Op>> {
    let hi = h_inv(setup);
    let mut out = BTreeMap::new();
    for p in 1..=setup.big_n() {
        let ser = a_series(setup, sign, p, lambda)?.expand(s_max)?;
        for (s, m) in ser.into_iter().enumerate().skip(1) {
            out.insert((p, s), m.scale(&hi));
        }
    }
    Ok(out)
}

/// `(p, s) ↦ ρ^±(C_{p,s})` where `A_{p−1}(u)^{-1} A_p(u) = 1 + h Σ_s C_{p,s} u^{-s}`.
pub fn c_generators(setup: &Setup, sign: Sign, lambda: &Composition, s_max: usize) -> Result<BTreeMap<(usize, usize), Op>> {
    let hi = h_inv(setup);
    let d = setup.weight(lambda)?.dim();
    let mut prev: Vec<Op> = (0..=s_max).map(|s| if s == 0 { Matrix::identity(d) } else { Matrix::zeros(d, d) }).collect();
    let mut out = BTreeMap::new();
    for p in 1..=setup.big_n() {
        let cur = a_series(setup, sign, p, lambda)?.expand(s_max)?;
        let quot = series_mul(&series_inv(&prev, s_max)?, &cur, s_max);
        for (s, m) in quot.into_iter().enumerate().skip(1) {
            out.insert((p, s), m.scale(&hi));
        }
        prev = cur;
    }
    Ok(out)
}

/// Matrix of `e_{i,j}` from `V_λ` to `V_{λ+e_i−e_j}`.
pub fn e_op(setup: &Setup, i: usize, j: usize, lambda: &Composition) -> Result<Option<(Arc<Weight>, Op)>> {
    let src = setup.weight(lambda)?;
    let Some(tgt) = setup.shifted_weight(lambda, i, j)? else { return Ok(None) };
    let cols: Vec<Vec<Sc>> = (0..src.dim())
        .map(|k| {
            let mut e = vec![Sc::zero(); src.dim()];
            e[k] = Sc::one();
            gl_action(i, j, &src.basis, &tgt.basis, &e)
        })
        .collect();
    Ok(Some((tgt.clone(), Matrix::from_columns(tgt.dim(), &cols))))
}

/// `e_{i,j} e_{j,i}` on `V_λ`.
pub fn ee(setup: &Setup, i: usize, j: usize, lambda: &Composition) -> Result<Op> {
    let d = setup.weight(lambda)?.dim();
    let Some((mid, b)) = e_op(setup, j, i, lambda)? else { return Ok(Matrix::zeros(d, d)) };
    let (_, a) = e_op(setup, i, j, mid.lambda())?.expect("inverse shift");
    Ok(a.mul(&b))
}

fn eii(setup: &Setup, i: usize, lambda: &Composition) -> Result<Op> {
    let d = setup.weight(lambda)?.dim();
    Ok(Matrix::scalar(d, Sc::from_int(lambda.part(i) as i64)))
}

/// `G_{i,j} = e_{i,j} e_{j,i} − e_{i,i}`.
pub fn g_op(setup: &Setup, i: usize, j: usize, lambda: &Composition) -> Result<Op> {
    Ok(ee(setup, i, j, lambda)?.sub(&eii(setup, i, lambda)?))
}

/// Which dynamical Hamiltonians to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HamKind {
    Inf,
    K,
    KPlus,
    KMinus,
}

fn g_variant(setup: &Setup, kind: HamKind, i: usize, j: usize, lambda: &Composition) -> Result<Op> {
    Ok(match kind {
        HamKind::Inf | HamKind::K => g_op(setup, i, j, lambda)?,
        HamKind::KPlus => g_op(setup, i, j, lambda)?.sub(&eii(setup, i, lambda)?.mul(&eii(setup, j, lambda)?)),
        HamKind::KMinus => {
            if lambda.part(i) >= lambda.part(j) {
                ee(setup, j, i, lambda)?
            } else {
                ee(setup, i, j, lambda)?
            }
        }
    })
}

/// `ρ^±(X_i)` for `i = 1..N`.
pub fn dynamical_hamiltonians(setup: &Setup, sign: Sign, kind: HamKind, lambda: &Composition) -> Result<Vec<Op>> {
    let h = setup.h().clone();
    let half_h = h.scale_q(&ybl_algebra::q(1, 2));
    let mut out = Vec::new();
    for i in 1..=setup.big_n() {
        let (_, t2) = t_coeff(setup, sign, i, i, lambda, 2)?.expect("diagonal");
        let e = eii(setup, i, lambda)?;
        let d = e.rows();
        let mut x = t2.sub(&e.mul(&e.sub(&Matrix::identity(d))).scale(&half_h));
        for j in 1..i {
            x = x.sub(&g_op(setup, i, j, lambda)?.scale(&h));
        }
        if kind != HamKind::Inf {
            let qi = setup.q(i);
            for j in 1..=setup.big_n() {
                if j == i {
                    continue;
                }
                let qj = setup.q(j);
                let num = if j < i { qi } else { qj };
                let c = num.div(&qi.sub(qj)).mul(&h);
                x = x.add(&g_variant(setup, kind, i, j, lambda)?.scale(&c));
            }
        }
        out.push(x);
    }
    Ok(out)
}

/// `ρ^±(X^k_i)` through the Bethe generator `S^k_{i,2}`.
pub fn hamiltonians_via_s(setup: &Setup, set: &BetheGenSet) -> Result<Vec<Op>> {
    let lambda = set.weight.lambda().clone();
    let h = setup.h().clone();
    let half_h = h.scale_q(&ybl_algebra::q(1, 2));
    let mut out = Vec::new();
    for i in 1..=setup.big_n() {
        let e = eii(setup, i, &lambda)?;
        let d = e.rows();
        let mut x = set.s[&(i, 2)].sub(&e.mul(&e.sub(&Matrix::identity(d))).scale(&half_h));
        for j in 1..=setup.big_n() {
            if j != i {
                let c = setup.q(j).div(&setup.q(i).sub(setup.q(j))).mul(&h);
                x = x.add(&e.mul(&eii(setup, j, &lambda)?).scale(&c));
            }
        }
        out.push(x);
    }
    Ok(out)
}

/// `ρ^±(X^∞_i)` through the Gelfand–Tsetlin generators `B^∞_{i,2}`.
pub fn hamiltonians_via_gt(setup: &Setup, sign: Sign, lambda: &Composition) -> Result<Vec<Op>> {
    let gt = gt_generators(setup, sign, lambda, 2)?;
    let h = setup.h().clone();
    let half_h = h.scale_q(&ybl_algebra::q(1, 2));
    let mut out = Vec::new();
    for i in 1..=setup.big_n() {
        let e = eii(setup, i, lambda)?;
        let d = e.rows();
        let mut x = gt[&(i, 2)].clone();
        if i > 1 {
            x = x.sub(&gt[&(i - 1, 2)]);
        }
        x = x.sub(&e.mul(&e.sub(&Matrix::identity(d))).scale(&half_h));
        let mut below = Matrix::zeros(d, d);
        for j in 1..i {
            below = below.add(&eii(setup, j, lambda)?);
        }
        out.push(x.sub(&e.mul(&below).scale(&h)));
    }
    Ok(out)
}

/// `ρ^±(X^∞_i)` written directly through single-slot matrix units.
pub fn xinf_direct(setup: &Setup, sign: Sign, i: usize, lambda: &Composition) -> Result<Op> {
    let w = setup.weight(lambda)?;
    let b = &w.basis;
    let d = w.dim();
    let n = setup.n();
    let h = setup.h();
    let mut m = Matrix::zeros(d, d);
    for (k, word) in b.words().iter().enumerate() {
        let diag = (0..n).filter(|&a| word[a] == i).fold(Sc::zero(), |acc, a| acc.add(setup.z(a + 1)));
        m.set(k, k, diag);
        for j in 1..=setup.big_n() {
            for a in 0..n {
                for bb in 0..n {
                    let ordered = match sign {
                        Sign::Plus => a < bb,
                        Sign::Minus => bb < a,
                    };
                    if !ordered || word[bb] != i {
                        continue;
                    }
                    let mut w2 = word.clone();
                    w2[bb] = j;
                    if w2[a] != j {
                        continue;
                    }
                    w2[a] = i;
                    let r = b.index_of(&w2).expect("same weight");
                    let v = m.get(r, k).add(h);
                    m.set(r, k, v);
                }
            }
        }
    }
    let e = eii(setup, i, lambda)?;
    let half_h = h.scale_q(&ybl_algebra::q(1, 2));
    m = m.add(&e.sub(&e.mul(&e)).scale(&half_h));
    for j in 1..i {
        m = m.sub(&g_op(setup, i, j, lambda)?.scale(h));
    }
    Ok(m)
}

/// Flatness of `κ q_i∂_{q_i} − X_i`: `q_i∂_{q_i} X_j = q_j∂_{q_j} X_i` and `[X_i, X_j] = 0`.
/// Returns the first failing pair.
pub fn flatness_failure(setup: &Setup, xs: &[Op]) -> Result<Option<String>> {
    let mut vars = Vec::new();
    for i in 1..=xs.len() {
        vars.push(setup.q_var(i).ok_or_else(|| YblError::Precondition("flatness needs symbolic q".into()))?);
    }
    let euler = |m: &Op, i: usize| -> Op { m.map(|x| x.derivative(vars[i]).mul(setup.q(i + 1))) };
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if euler(&xs[j], i) != euler(&xs[i], j) {
                return Ok(Some(format!("q{0}∂X{1} ≠ q{1}∂X{0}", i + 1, j + 1)));
            }
            if !xs[i].commutator(&xs[j]).is_zero() {
                return Ok(Some(format!("[X{}, X{}] ≠ 0", i + 1, j + 1)));
            }
        }
    }
    Ok(None)
}

/// `P^{(a,b)}` on `V_λ` (0-based slots).
fn slot_swap(w: &Weight, a: usize, b: usize) -> Op {
    let d = w.dim();
    let mut m = Matrix::zeros(d, d);
    for (k, word) in w.basis.words().iter().enumerate() {
        let mut w2 = word.clone();
        w2.swap(a, b);
        m.set(w.basis.index_of(&w2).expect("same weight"), k, Sc::one());
    }
    m
}

/// `R^{(a,b)}(x) = (x + h P^{(a,b)})/(x + h)`, slots 1-based.
fn r_matrix(setup: &Setup, w: &Weight, a: usize, b: usize, x: &Sc) -> Result<Op> {
    let den = inv_or(&x.add(setup.h()), &format!("R-matrix at slots {a},{b}"))?;
    Ok(Matrix::scalar(w.dim(), x.clone()).add(&slot_swap(w, a - 1, b - 1).scale(setup.h())).scale(&den))
}

/// The qKZ operators `K^±_1, …, K^±_n` with step `κ`.
pub fn qkz_operators(setup: &Setup, sign: Sign, lambda: &Composition, kappa: &Sc) -> Result<Vec<Op>> {
    let w = setup.weight(lambda)?;
    let n = setup.n();
    let d = w.dim();
    let mut out = Vec::new();
    for i in 1..=n {
        let mut qd = Matrix::zeros(d, d);
        for (k, word) in w.basis.words().iter().enumerate() {
            qd.set(k, k, setup.q(word[i - 1]).clone());
        }
        let zi = setup.z(i);
        let r = |j: usize, shift: bool| -> Result<Op> {
            let mut x = zi.sub(setup.z(j));
            if shift {
                x = x.sub(kappa);
            }
            r_matrix(setup, &w, i, j, &x)
        };
        let mut m = Matrix::identity(d);
        match sign {
            Sign::Plus => {
                for j in (1..i).rev() {
                    m = m.mul(&r(j, false)?);
                }
                m = m.mul(&qd);
                for j in (i + 1..=n).rev() {
                    m = m.mul(&r(j, true)?);
                }
            }
            Sign::Minus => {
                for j in i + 1..=n {
                    m = m.mul(&r(j, false)?);
                }
                m = m.mul(&qd);
                for j in 1..i {
                    m = m.mul(&r(j, true)?);
                }
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// `(ρ^±(B_1(u/h)) ∏_j (u − z_j)/(u − z_j + h))|_{u = z_i}`.
pub fn qkz_from_b1(setup: &Setup, sign: Sign, lambda: &Composition, i: usize) -> Result<Op> {
    let w = setup.weight(lambda)?;
    let mut num = UOp::zero(w.dim(), w.dim());
    for a in 1..=setup.big_n() {
        let t = rho_t(setup, sign, a, a, lambda)?.expect("diagonal");
        num = num.add(&t.num.scale(setup.q(a)));
    }
    let zi = setup.z(i);
    let mut den = Sc::one();
    for j in 1..=setup.n() {
        den = den.mul(&zi.sub(setup.z(j)).add(setup.h()));
    }
    Ok(num.eval(zi).scale(&inv_or(&den, "z_i - z_j + h")?))
}

/// The three series `A_p`, `E_p`, `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AefSeries {
    A,
    E,
    F,
}

fn aef_target(which: AefSeries, p: usize, lambda: &Composition) -> Option<Composition> {
    match which {
        AefSeries::A => Some(lambda.clone()),
        AefSeries::E => lambda.shifted(p, p + 1),
        AefSeries::F => lambda.shifted(p + 1, p),
    }
}

/// The closed forms on the `ξ^±` basis, written in the `v` basis and evaluated at `u`.
pub fn aef_on_xi(setup: &Setup, sign: Sign, which: AefSeries, p: usize, lambda: &Composition, u: &Sc) -> Result<Option<(Arc<Weight>, Op)>> {
    let src = setup.weight(lambda)?;
    let Some(tl) = aef_target(which, p, lambda) else { return Ok(None) };
    let tgt = setup.weight(&tl)?;
    let h = setup.h();
    let mut m = Matrix::zeros(tgt.dim(), src.dim());
    for (k, word) in src.basis.words().iter().enumerate() {
        match which {
            AefSeries::A => {
                let mut c = Sc::one();
                for (a, &col) in word.iter().enumerate() {
                    if col <= p {
                        let d = u.sub(setup.z(a + 1));
                        c = c.mul(&d.add(h).mul(&inv_or(&d, "u - z")?));
                    }
                }
                m.set(k, k, c);
            }
            AefSeries::E | AefSeries::F => {
                let (from, to, sh) = match which {
                    AefSeries::E => (p + 1, p, h.clone()),
                    _ => (p, p + 1, h.neg()),
                };
                let block: Vec<usize> = (0..word.len()).filter(|&a| word[a] == from).collect();
                for &i in &block {
                    let zi = setup.z(i + 1);
                    let mut c = inv_or(&u.sub(zi), "u - z")?;
                    for &kk in &block {
                        if kk != i {
                            let d = zi.sub(setup.z(kk + 1));
                            c = c.mul(&d.add(&sh).mul(&inv_or(&d, "z_i - z_k")?));
                        }
                    }
                    let mut w2 = word.clone();
                    w2[i] = to;
                    let r = tgt.basis.index_of(&w2).expect("moved index");
                    m.set(r, k, c);
                }
            }
        }
    }
    let xs = src.xi_matrix(sign);
    let xt = tgt.xi_matrix(sign);
    Ok(Some((tgt.clone(), xt.mul(&m).mul(&xs.inverse()?))))
}

/// The same operators through quantum minors, `E_p = h^{-1} M_{𝐣,𝐢} A_p^{-1}`,
/// `F_p = h^{-1} A_p^{-1} M_{𝐢,𝐣}`, evaluated at `u`.
pub fn aef_by_minors(setup: &Setup, sign: Sign, which: AefSeries, p: usize, lambda: &Composition, u: &Sc) -> Result<Option<(Arc<Weight>, Op)>> {
    let hi = h_inv(setup);
    Ok(match which {
        AefSeries::A => {
            let a = a_series(setup, sign, p, lambda)?;
            Some((a.tgt.clone(), a.eval(u)?))
        }
        AefSeries::E => match e_minor(setup, sign, p, lambda)? {
            Some(m) => {
                let a = a_series(setup, sign, p, lambda)?.eval(u)?;
                Some((m.tgt.clone(), m.eval(u)?.mul(&a.inverse()?).scale(&hi)))
            }
            None => None,
        },
        AefSeries::F => match f_minor(setup, sign, p, lambda)? {
            Some(m) => {
                let a = a_series(setup, sign, p, m.tgt.lambda())?.eval(u)?;
                Some((m.tgt.clone(), a.inverse()?.mul(&m.eval(u)?).scale(&hi)))
            }
            None => None,
        },
    })
}
