//! Weight subspaces of `(ℂ^N)^{⊗n}`, the symmetric-group actions on
//! V-valued functions, the vectors `ξ^±_I`, the θ maps and the Shapovalov form.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use ybl_algebra::{Field, Q};

use crate::error::{Result, YblError};
use crate::orbit::ZPerm;

/// `λ = (λ_1, …, λ_N)` with `Σ λ_i = n`; zero parts are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(YblError::Composition("no parts".into()));
        }
        if parts.iter().sum::<usize>() == 0 {
            return Err(YblError::Composition("n = 0".into()));
        }
        Ok(Composition(parts))
    }

    /// Parse `"2,1"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: std::result::Result<Vec<usize>, _> = s.split(',').map(|p| p.trim().parse()).collect();
        Self::new(parts.map_err(|_| YblError::Composition(s.into()))?)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// `λ_i`, 1-based.
    pub fn part(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn big_n(&self) -> usize {
        self.0.len()
    }

    /// `λ + e_i − e_j`, if it is still a composition.
    pub fn shifted(&self, i: usize, j: usize) -> Option<Composition> {
        if i == j {
            return Some(self.clone());
        }
        if self.0[j - 1] == 0 {
            return None;
        }
        let mut p = self.0.clone();
        p[i - 1] += 1;
        p[j - 1] -= 1;
        Some(Composition(p))
    }

    /// `Σ_{i<j} λ_i λ_j`.
    pub fn cross_degree(&self) -> usize {
        let mut s = 0;
        for i in 0..self.0.len() {
            for j in i + 1..self.0.len() {
                s += self.0[i] * self.0[j];
            }
        }
        s
    }

    /// `λ_1! ⋯ λ_N!`.
    pub fn factorial_product(&self) -> u64 {
        self.0.iter().map(|&l| (1..=l as u64).product::<u64>()).product()
    }

    /// All compositions of `n` into `big_n` parts, lexicographically.
    pub fn all(n: usize, big_n: usize) -> Vec<Composition> {
        fn rec(left: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if slots == 1 {
                cur.push(left);
                out.push(Composition(cur.clone()));
                cur.pop();
                return;
            }
            for k in 0..=left {
                cur.push(k);
                rec(left - k, slots - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if big_n > 0 {
            rec(n, big_n, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Color word `(i_1, …, i_n)`, colors 1-based; equivalent to the blocks
/// `I_j = {a : i_a = j}`.
pub type Word = Vec<usize>;

/// Blocks `I_1, …, I_N` (1-based sorted positions) of a color word.
pub fn blocks(word: &[usize], big_n: usize) -> Vec<Vec<usize>> {
    let mut b = vec![Vec::new(); big_n];
    for (a, &c) in word.iter().enumerate() {
        b[c - 1].push(a + 1);
    }
    b
}

/// `s_i(I)`: exchange positions `i, i+1` (1-based) of the color word.
pub fn swap_word(word: &[usize], i: usize) -> Word {
    let mut w = word.to_vec();
    w.swap(i - 1, i);
    w
}

/// Partial order on index decompositions: compare the first differing
/// block elementwise (sorted).
pub fn index_le(a: &[usize], b: &[usize], big_n: usize) -> bool {
    if a == b {
        return true;
    }
    let (ba, bb) = (blocks(a, big_n), blocks(b, big_n));
    for (x, y) in ba.iter().zip(&bb) {
        if x != y {
            return x.iter().zip(y).all(|(p, q)| p <= q);
        }
    }
    true
}

/// The canonical basis `{v_I}` of `V_λ`, in lexicographic order of color words.
#[derive(Debug, PartialEq, Eq)]
pub struct WeightBasis {
    lambda: Composition,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl WeightBasis {
    pub fn new(lambda: &Composition) -> Arc<Self> {
        let n = lambda.n();
        let mut words = Vec::new();
        let mut left = lambda.parts().to_vec();
        let mut cur = Vec::with_capacity(n);
        fn rec(left: &mut [usize], cur: &mut Vec<usize>, n: usize, out: &mut Vec<Word>) {
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            for c in 0..left.len() {
                if left[c] > 0 {
                    left[c] -= 1;
                    cur.push(c + 1);
                    rec(left, cur, n, out);
                    cur.pop();
                    left[c] += 1;
                }
            }
        }
        rec(&mut left, &mut cur, n, &mut words);
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        Arc::new(WeightBasis { lambda: lambda.clone(), words, index })
    }

    pub fn lambda(&self) -> &Composition {
        &self.lambda
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn n(&self) -> usize {
        self.lambda.n()
    }

    pub fn big_n(&self) -> usize {
        self.lambda.big_n()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word(&self, k: usize) -> &Word {
        &self.words[k]
    }

    pub fn index_of(&self, w: &[usize]) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn blocks(&self, k: usize) -> Vec<Vec<usize>> {
        blocks(&self.words[k], self.big_n())
    }

    pub fn imin(&self) -> usize {
        0
    }

    pub fn imax(&self) -> usize {
        self.words.len() - 1
    }

    /// `k ↦ index of s_i(I_k)`.
    pub fn swapped(&self, k: usize, i: usize) -> usize {
        self.index[&swap_word(&self.words[k], i)]
    }

    /// Permutation `π_I` with `f(z_I) = f(z_{π(1)}, …, z_{π(n)})`, 0-based.
    pub fn restriction_perm(&self, k: usize) -> Vec<usize> {
        self.blocks(k).into_iter().flatten().map(|a| a - 1).collect()
    }
}

/// The equivariant parameters `z_1..z_n` and `h` in a permutable field.
#[derive(Clone, Debug)]
pub struct ZH<K> {
    pub z: Vec<K>,
    pub h: K,
}

impl<K: ZPerm> ZH<K> {
    pub fn n(&self) -> usize {
        self.z.len()
    }

    fn zdiff(&self, i: usize, j: usize) -> K {
        self.z[i - 1].sub(&self.z[j - 1])
    }

    /// `Q(z_I)` for the blocks of `I`.
    pub fn q_of(&self, b: &[Vec<usize>]) -> K {
        self.cross_product(b, true)
    }

    /// `R(z_I)`.
    pub fn r_of(&self, b: &[Vec<usize>]) -> K {
        self.cross_product(b, false)
    }

    fn cross_product(&self, b: &[Vec<usize>], with_h: bool) -> K {
        let mut acc = K::one();
        for x in 0..b.len() {
            for y in x + 1..b.len() {
                for &i in &b[x] {
                    for &j in &b[y] {
                        let mut f = self.zdiff(i, j);
                        if with_h {
                            f = f.add(&self.h);
                        }
                        acc = acc.mul(&f);
                    }
                }
            }
        }
        acc
    }

    /// `D = ∏_{i<j} (z_i − z_j + h)`.
    pub fn d(&self) -> K {
        let mut acc = K::one();
        for i in 1..=self.n() {
            for j in i + 1..=self.n() {
                acc = acc.mul(&self.zdiff(i, j).add(&self.h));
            }
        }
        acc
    }

    /// `Ď = ∏_{i<j} (z_j − z_i + h)`.
    pub fn d_check(&self) -> K {
        let mut acc = K::one();
        for i in 1..=self.n() {
            for j in i + 1..=self.n() {
                acc = acc.mul(&self.zdiff(j, i).add(&self.h));
            }
        }
        acc
    }

    /// `Z = D Ď`.
    pub fn zz(&self) -> K {
        self.d().mul(&self.d_check())
    }

    /// Every factor `z_i − z_j`, `z_i − z_j ± h` and `h` is nonzero.
    pub fn genericity(&self) -> Result<()> {
        if self.h.is_zero() {
            return Err(YblError::Degenerate("h".into()));
        }
        for i in 1..=self.n() {
            for j in i + 1..=self.n() {
                let d = self.zdiff(i, j);
                for (f, name) in [
                    (d.clone(), format!("z{i}-z{j}")),
                    (d.add(&self.h), format!("z{i}-z{j}+h")),
                    (d.sub(&self.h), format!("z{i}-z{j}-h")),
                ] {
                    if f.is_zero() {
                        return Err(YblError::Degenerate(name));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `±` label used throughout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_int(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// The six elementary-transposition actions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SnKind {
    Plus,
    Minus,
    TildePlus,
    TildeMinus,
    HatPlus,
    HatMinus,
}

fn swap_coeffs<K: ZPerm>(f: &[K], i: usize, n: usize) -> Vec<K> {
    f.iter().map(|c| c.swap_adjacent(i, n)).collect()
}

fn inv<K: Field>(x: &K, what: &str) -> Result<K> {
    x.inv().ok_or_else(|| YblError::Degenerate(what.into()))
}

/// `s_i` acting on a V-valued function given by its coordinates in `basis`.
pub fn sn_action_vec<K: ZPerm>(kind: SnKind, i: usize, zh: &ZH<K>, basis: &WeightBasis, f: &[K]) -> Result<Vec<K>> {
    let n = zh.n();
    let d = zh.zdiff(i, i + 1);
    let fs = swap_coeffs(f, i, n);
    let pf: Vec<K> = (0..basis.dim()).map(|k| fs[basis.swapped(k, i)].clone()).collect();
    let name = format!("z{}-z{}", i, i + 1);
    let out = match kind {
        SnKind::Plus | SnKind::Minus => {
            let sg = if kind == SnKind::Plus { K::one() } else { K::one().neg() };
            let hs = zh.h.mul(&sg);
            let di = inv(&d, &name)?;
            (0..basis.dim())
                .map(|k| d.mul(&pf[k]).sub(&hs.mul(&fs[k])).mul(&di).add(&hs.mul(&di).mul(&f[k])))
                .collect()
        }
        SnKind::TildePlus | SnKind::TildeMinus => {
            let hs = if kind == SnKind::TildePlus { zh.h.clone() } else { zh.h.neg() };
            let di = inv(&d.sub(&hs), &format!("{name}∓h"))?;
            (0..basis.dim()).map(|k| d.mul(&pf[k]).sub(&hs.mul(&fs[k])).mul(&di)).collect()
        }
        SnKind::HatPlus | SnKind::HatMinus => {
            return Err(YblError::Precondition("hat actions act on scalar functions".into()));
        }
    };
    Ok(out)
}

/// `ŝ_i^±` acting on a scalar function.
pub fn sn_action_scalar<K: ZPerm>(kind: SnKind, i: usize, zh: &ZH<K>, f: &K) -> Result<K> {
    let hs = match kind {
        SnKind::HatPlus => zh.h.clone(),
        SnKind::HatMinus => zh.h.neg(),
        _ => return Err(YblError::Precondition("only hat actions act on scalar functions".into())),
    };
    let d = zh.zdiff(i, i + 1);
    let di = inv(&d, &format!("z{}-z{}", i, i + 1))?;
    let fs = f.swap_adjacent(i, zh.n());
    Ok(d.add(&hs).mul(&di).mul(&fs).sub(&hs.mul(&di).mul(f)))
}

/// `ξ^±_I` for every `I`, as coordinate vectors (outer index `I`).
///
/// Built by a breadth-first walk of the `S_n`-orbit from `I^min` (plus) or
/// `I^max` (minus); every revisit recomputes the vector along the new edge
/// and requires agreement.
pub fn build_xi<K: ZPerm>(sign: Sign, zh: &ZH<K>, basis: &WeightBasis) -> Result<Vec<Vec<K>>> {
    let dim = basis.dim();
    let n = basis.n();
    let kind = match sign {
        Sign::Plus => SnKind::TildePlus,
        Sign::Minus => SnKind::TildeMinus,
    };
    let start = match sign {
        Sign::Plus => basis.imin(),
        Sign::Minus => basis.imax(),
    };
    let mut xi: Vec<Option<Vec<K>>> = vec![None; dim];
    let mut e = vec![K::zero(); dim];
    e[start] = K::one();
    xi[start] = Some(e);
    let mut queue = VecDeque::from([start]);
    while let Some(k) = queue.pop_front() {
        let cur = xi[k].clone().expect("visited");
        for i in 1..n {
            let j = basis.swapped(k, i);
            let cand = sn_action_vec(kind, i, zh, basis, &cur)?;
            match &xi[j] {
                Some(prev) => {
                    if prev != &cand {
                        return Err(YblError::Inconsistent(format!(
                            "xi recursion disagrees at {:?} via s_{i} from {:?}",
                            basis.word(j),
                            basis.word(k)
                        )));
                    }
                }
                None => {
                    xi[j] = Some(cand);
                    queue.push_back(j);
                }
            }
        }
    }
    let xi: Vec<Vec<K>> = xi.into_iter().map(|x| x.expect("orbit is transitive")).collect();
    check_triangular(sign, zh, basis, &xi)?;
    Ok(xi)
}

fn check_triangular<K: ZPerm>(sign: Sign, zh: &ZH<K>, basis: &WeightBasis, xi: &[Vec<K>]) -> Result<()> {
    let big_n = basis.big_n();
    for (k, v) in xi.iter().enumerate() {
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let ok = match sign {
                Sign::Plus => index_le(basis.word(j), basis.word(k), big_n),
                Sign::Minus => index_le(basis.word(k), basis.word(j), big_n),
            };
            if !ok {
                return Err(YblError::Inconsistent(format!("xi {:?} not triangular", basis.word(k))));
            }
        }
    }
    let corner = match sign {
        Sign::Plus => basis.imax(),
        Sign::Minus => basis.imin(),
    };
    let b = basis.blocks(corner);
    let expect = zh.r_of(&b).mul(&inv(&zh.q_of(&b), "Q")?);
    if xi[corner][corner] != expect {
        return Err(YblError::Inconsistent("xi corner coefficient".into()));
    }
    Ok(())
}

/// `f(z_I)` for a block-symmetric function `f`.
pub fn restrict<K: ZPerm>(f: &K, basis: &WeightBasis, k: usize) -> K {
    f.permute_z(&basis.restriction_perm(k))
}

/// Kinds of θ map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaKind {
    Plus,
    Eq,
    Minus,
}

/// θ map by its defining sum over `S_n`.
pub fn theta_sum<K: ZPerm>(kind: ThetaKind, zh: &ZH<K>, basis: &WeightBasis, f: &K) -> Result<Vec<K>> {
    let n = basis.n();
    let ql = zh.q_of(&basis.blocks(basis.imin()));
    let (g, start, hat) = match kind {
        ThetaKind::Plus => (f.reverse_z(n), basis.imax(), SnKind::HatPlus),
        ThetaKind::Eq => (f.mul(&inv(&ql, "Q_λ")?).reverse_z(n), basis.imax(), SnKind::HatPlus),
        ThetaKind::Minus => (f.mul(&inv(&ql, "Q_λ")?), basis.imin(), SnKind::HatMinus),
    };
    // Walk S_n as words in the generators: σ' = s_i σ.
    let mut seen: HashMap<Vec<usize>, (K, Word)> = HashMap::new();
    let id: Vec<usize> = (0..n).collect();
    seen.insert(id.clone(), (g, basis.word(start).clone()));
    let mut queue = VecDeque::from([id]);
    while let Some(s) = queue.pop_front() {
        let (val, w) = seen[&s].clone();
        for i in 1..n {
            let mut t = s.clone();
            for x in t.iter_mut() {
                if *x == i - 1 {
                    *x = i;
                } else if *x == i {
                    *x = i - 1;
                }
            }
            if seen.contains_key(&t) {
                continue;
            }
            let v = sn_action_scalar(hat, i, zh, &val)?;
            seen.insert(t.clone(), (v, swap_word(&w, i)));
            queue.push_back(t);
        }
    }
    let mut out = vec![K::zero(); basis.dim()];
    for (_, (v, w)) in seen {
        let k = basis.index_of(&w).expect("orbit word");
        out[k] = out[k].add(&v);
    }
    let c = Q::new(1.into(), (basis.lambda().factorial_product() as i64).into());
    Ok(out.into_iter().map(|x| x.scale_q(&c)).collect())
}

/// θ map through the ξ-expansion closed forms.
pub fn theta_closed<K: ZPerm>(kind: ThetaKind, zh: &ZH<K>, basis: &WeightBasis, xi: &[Vec<K>], f: &K) -> Result<Vec<K>> {
    let mut out = vec![K::zero(); basis.dim()];
    for (k, v) in xi.iter().enumerate() {
        let b = basis.blocks(k);
        let mut c = restrict(f, basis, k).mul(&inv(&zh.r_of(&b), "R")?);
        if kind == ThetaKind::Plus {
            c = c.mul(&zh.q_of(&b));
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o = o.add(&c.mul(x));
        }
    }
    Ok(out)
}

/// `𝒮(f, g) = Σ_I f_I g_I`.
pub fn shapovalov<K: Field>(f: &[K], g: &[K]) -> Result<K> {
    if f.len() != g.len() {
        return Err(YblError::Precondition("weight mismatch".into()));
    }
    Ok(f.iter().zip(g).fold(K::zero(), |acc, (a, b)| acc.add(&a.mul(b))))
}

/// `e_{i,j} = Σ_a e^{(a)}_{i,j}` from `V_λ` to `V_{λ+e_i−e_j}`; `None` when the target is empty.
pub fn gl_action<K: Field>(i: usize, j: usize, src: &WeightBasis, tgt: &WeightBasis, f: &[K]) -> Vec<K> {
    let mut out = vec![K::zero(); tgt.dim()];
    for (k, w) in src.words().iter().enumerate() {
        if f[k].is_zero() {
            continue;
        }
        if i == j {
            let m = w.iter().filter(|&&c| c == j).count() as i64;
            out[k] = out[k].add(&f[k].mul(&K::from_int(m)));
            continue;
        }
        for a in 0..w.len() {
            if w[a] == j {
                let mut w2 = w.clone();
                w2[a] = i;
                let t = tgt.index_of(&w2).expect("target weight");
                out[t] = out[t].add(&f[k]);
            }
        }
    }
    out
}

/// `Π̃ f`: reverse the tensor slots and substitute `z_a ↦ z_{n+1−a}`.
pub fn pi_tilde<K: ZPerm>(basis: &WeightBasis, f: &[K]) -> Vec<K> {
    let n = basis.n();
    let mut out = vec![K::zero(); basis.dim()];
    for (k, w) in basis.words().iter().enumerate() {
        let r: Word = w.iter().rev().copied().collect();
        out[basis.index_of(&r).expect("same weight")] = f[k].reverse_z(n);
    }
    out
}
