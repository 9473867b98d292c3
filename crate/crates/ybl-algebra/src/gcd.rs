//! Multivariate gcd over Q: monomial/content shortcuts, then the heuristic
//! evaluation gcd, with a primitive PRS as the fallback.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};

use crate::poly::{merge_registry, Mono, MultiPoly};

type ZPoly = Vec<(Mono, BigInt)>;

const HEU_ATTEMPTS: usize = 6;

fn z_sort_merge(mut v: ZPoly) -> ZPoly {
    v.sort_unstable_by(|a, b| b.0.cmp(&a.0));
    let mut out: ZPoly = Vec::with_capacity(v.len());
    for (m, c) in v {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc += c,
            _ => out.push((m, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

fn mask(f: &ZPoly) -> u64 {
    let mut m = 0u64;
    for (mono, _) in f {
        for (i, e) in mono.exps().iter().enumerate() {
            if *e > 0 {
                m |= 1 << i;
            }
        }
    }
    m
}

fn is_const(f: &ZPoly) -> bool {
    f.is_empty() || (f.len() == 1 && f[0].0.is_one())
}

fn content(f: &ZPoly) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in f {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn div_ground(f: &ZPoly, c: &BigInt) -> ZPoly {
    f.iter().map(|(m, x)| (m.clone(), x / c)).collect()
}

fn mul_ground(f: &ZPoly, c: &BigInt) -> ZPoly {
    f.iter().map(|(m, x)| (m.clone(), x * c)).collect()
}

/// Primitive part with positive leading coefficient.
fn prim(f: &ZPoly) -> ZPoly {
    if f.is_empty() {
        return Vec::new();
    }
    let mut g = content(f);
    if f[0].1.is_negative() {
        g = -g;
    }
    div_ground(f, &g)
}

fn z_sub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut v = a.clone();
    v.extend(b.iter().map(|(m, c)| (m.clone(), -c)));
    z_sort_merge(v)
}

fn z_mul_term(f: &ZPoly, m: &Mono, c: &BigInt) -> ZPoly {
    f.iter().map(|(x, y)| (x.mul(m), y * c)).collect()
}

/// Exact division over Z; `None` if any step is not integral.
fn z_div(f: &ZPoly, g: &ZPoly) -> Option<ZPoly> {
    let (gm, gc) = g.first()?;
    let mut r = f.clone();
    let mut q = Vec::new();
    while let Some((rm, rc)) = r.first() {
        let m = rm.div(gm)?;
        let (c, rem) = rc.div_rem(gc);
        if !rem.is_zero() {
            return None;
        }
        r = z_sub(&r, &z_mul_term(g, &m, &c));
        q.push((m, c));
    }
    Some(z_sort_merge(q))
}

fn z_eval(f: &ZPoly, var: usize, x: &BigInt) -> ZPoly {
    let mut powers = vec![BigInt::one()];
    let v = f
        .iter()
        .map(|(m, c)| {
            let e = m.exp(var) as usize;
            while powers.len() <= e {
                let nx = powers.last().unwrap() * x;
                powers.push(nx);
            }
            (m.with(var, 0), c * &powers[e])
        })
        .collect();
    z_sort_merge(v)
}

/// Symmetric x-adic expansion of every coefficient into powers of `var`.
fn z_interp(h: &ZPoly, var: usize, x: &BigInt) -> ZPoly {
    let half = x / 2;
    let mut out = Vec::new();
    for (m, c) in h {
        let mut c = c.clone();
        let mut i = 0u32;
        while !c.is_zero() {
            let mut d = c.mod_floor(x);
            if d > half {
                d -= x;
            }
            if !d.is_zero() {
                out.push((m.with(var, i), d.clone()));
            }
            c = (c - d) / x;
            i += 1;
        }
    }
    z_sort_merge(out)
}

fn max_norm(f: &ZPoly) -> BigInt {
    f.iter().map(|(_, c)| c.abs()).max().unwrap_or_else(BigInt::zero)
}

type Triple = (ZPoly, ZPoly, ZPoly);

fn heu(f: &ZPoly, g: &ZPoly, vars: &[usize]) -> Option<Triple> {
    if f.is_empty() && g.is_empty() {
        return Some((Vec::new(), Vec::new(), Vec::new()));
    }
    let one = vec![(Mono::one(), BigInt::one())];
    if f.is_empty() {
        return Some((g.clone(), Vec::new(), one));
    }
    if g.is_empty() {
        return Some((f.clone(), one, Vec::new()));
    }
    if vars.is_empty() || (is_const(f) && is_const(g)) {
        let (a, b) = (&f[0].1, &g[0].1);
        let d = a.gcd(b);
        return Some((vec![(Mono::one(), d.clone())], vec![(Mono::one(), a / &d)], vec![(Mono::one(), b / &d)]));
    }
    let cg = content(f).gcd(&content(g));
    let f = div_ground(f, &cg);
    let g = div_ground(g, &cg);
    let (fnorm, gnorm) = (max_norm(&f), max_norm(&g));
    let b: BigInt = BigInt::from(2) * fnorm.clone().min(gnorm.clone()) + 29;
    let lf = f[0].1.abs();
    let lg = g[0].1.abs();
    let mut x = (b.clone().min(BigInt::from(99) * Roots::sqrt(&b)))
        .max(BigInt::from(2) * (&fnorm / &lf).min(&gnorm / &lg) + 4);
    let v = vars[0];
    let rest = &vars[1..];
    for _ in 0..HEU_ATTEMPTS {
        let ff = z_eval(&f, v, &x);
        let gg = z_eval(&g, v, &x);
        if !ff.is_empty() && !gg.is_empty() {
            let (h, cff, cfg) = heu(&ff, &gg, rest)?;
            let h = prim(&z_interp(&h, v, &x));
            if let Some(cf) = z_div(&f, &h) {
                if let Some(cgq) = z_div(&g, &h) {
                    return Some((mul_ground(&h, &cg), cf, cgq));
                }
            }
            let cff = z_interp(&cff, v, &x);
            if let Some(hh) = z_div(&f, &cff) {
                if let Some(cgq) = z_div(&g, &hh) {
                    return Some((mul_ground(&hh, &cg), cff, cgq));
                }
            }
            let cfg = z_interp(&cfg, v, &x);
            if let Some(hh) = z_div(&g, &cfg) {
                if let Some(cfq) = z_div(&f, &hh) {
                    return Some((mul_ground(&hh, &cg), cfq, cfg));
                }
            }
        }
        x = BigInt::from(73794) * &x * Roots::sqrt(&Roots::sqrt(&x)) / BigInt::from(27011);
    }
    None
}

fn mono_content(f: &ZPoly) -> Mono {
    let mut it = f.iter();
    let Some((m0, _)) = it.next() else { return Mono::one() };
    let mut m = m0.clone();
    for (x, _) in it {
        m = m.gcd(x);
        if m.is_one() {
            break;
        }
    }
    m
}

fn coeffs_in(f: &ZPoly, var: usize) -> Vec<ZPoly> {
    let d = f.iter().map(|(m, _)| m.exp(var)).max().unwrap_or(0) as usize;
    let mut b: Vec<ZPoly> = vec![Vec::new(); d + 1];
    for (m, c) in f {
        b[m.exp(var) as usize].push((m.with(var, 0), c.clone()));
    }
    b.into_iter().filter(|c| !c.is_empty()).map(z_sort_merge).collect()
}

/// gcd of two primitive integer polynomials; primitive, positive leading coefficient.
fn zgcd(f: &ZPoly, g: &ZPoly) -> ZPoly {
    let one = || vec![(Mono::one(), BigInt::one())];
    if f.is_empty() {
        return prim(g);
    }
    if g.is_empty() {
        return prim(f);
    }
    if is_const(f) || is_const(g) {
        return one();
    }
    let mf = mono_content(f);
    let mg = mono_content(g);
    let m = mf.gcd(&mg);
    let mono_part = |p: ZPoly| -> ZPoly { p.into_iter().map(|(x, c)| (x.mul(&m), c)).collect() };
    if f.len() == 1 || g.len() == 1 {
        return mono_part(one());
    }
    let f: ZPoly = f.iter().map(|(x, c)| (x.div(&mf).unwrap(), c.clone())).collect();
    let g: ZPoly = g.iter().map(|(x, c)| (x.div(&mg).unwrap(), c.clone())).collect();
    let (af, ag) = (mask(&f), mask(&g));
    if af != ag {
        let diff = af ^ ag;
        let v = diff.trailing_zeros() as usize;
        let (with_v, other) = if af & (1 << v) != 0 { (&f, &g) } else { (&g, &f) };
        let mut cur = prim(other);
        for c in coeffs_in(with_v, v) {
            cur = zgcd(&cur, &prim(&c));
            if is_const(&cur) {
                return mono_part(one());
            }
        }
        return mono_part(cur);
    }
    let vars: Vec<usize> = (0..64).filter(|i| af & (1 << i) != 0).collect();
    let h = match heu(&f, &g, &vars) {
        Some((h, _, _)) => prim(&h),
        None => {
            let fp = MultiPoly::from_z(None, f.clone());
            let gp = MultiPoly::from_z(None, g.clone());
            prs_gcd(&fp, &gp, vars[0]).primitive_z().1
        }
    };
    mono_part(h)
}

fn content_in(f: &MultiPoly, var: usize) -> MultiPoly {
    let mut g = MultiPoly::zero();
    for c in f.coeffs_in(var) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            return MultiPoly::one();
        }
    }
    g
}

fn pp_in(f: &MultiPoly, var: usize) -> MultiPoly {
    let c = content_in(f, var);
    f.exact_div(&c).expect("content divides")
}

fn prem(a: &MultiPoly, b: &MultiPoly, var: usize) -> MultiPoly {
    let db = b.degree_in(var);
    let lb = b.coeff_in(var, db);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lr = r.coeff_in(var, dr);
        let shift = Mono::var(var, dr - db);
        r = &(&lb * &r) - &(&lr * &b.mul_mono(&shift));
    }
    r
}

fn prs_gcd(f: &MultiPoly, g: &MultiPoly, var: usize) -> MultiPoly {
    let c = gcd(&content_in(f, var), &content_in(g, var));
    let (mut a, mut b) = (pp_in(f, var), pp_in(g, var));
    if a.degree_in(var) < b.degree_in(var) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = prem(&a, &b, var);
        if r.is_zero() {
            break;
        }
        if r.degree_in(var) == 0 {
            b = MultiPoly::one();
            break;
        }
        a = b;
        b = pp_in(&r, var);
    }
    &c * &pp_in(&b, var)
}

/// Greatest common divisor, normalised to a primitive integer polynomial with
/// positive leading coefficient (so `gcd(c, p) = 1` for nonzero constants `c`).
pub fn gcd(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let reg = merge_registry(&f.registry().cloned(), &g.registry().cloned()).expect("gcd registry mismatch");
    let (_, fz) = f.primitive_z();
    let (_, gz) = g.primitive_z();
    let h = zgcd(&fz, &gz);
    let out = MultiPoly::from_z(reg.clone(), h);
    match reg {
        Some(r) => out.with_registry(&r),
        None => out,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;
    use crate::registry::VarRegistry;
    use std::sync::Arc;

    fn vars() -> (Arc<VarRegistry>, Vec<MultiPoly>) {
        let r = VarRegistry::zhq(3, 0, false);
        let v = (0..4).map(|i| MultiPoly::var(&r, i)).collect();
        (r, v)
    }

    #[test]
    fn cancels_common_linear_factor() {
        let (_, v) = vars();
        let a = &(&v[0] - &v[1]) + &v[3];
        let b = &v[0] + &v[2];
        let c = &v[1] - &v[2].scale(&Q::from_integer(3.into()));
        let f = &a * &b;
        let g = &a * &c;
        assert_eq!(gcd(&f, &g), a);
    }

    #[test]
    fn coprime_gives_one() {
        let (_, v) = vars();
        let f = &(&v[0] * &v[0]) + &v[3];
        let g = &v[0] - &v[1];
        assert!(gcd(&f, &g).is_one());
    }

    #[test]
    fn monomial_factors() {
        let (_, v) = vars();
        let f = &(&v[0] * &v[0]) * &v[1];
        let g = &(&v[0] * &v[2]) + &(&v[0] * &v[1]);
        assert_eq!(gcd(&f, &g), v[0].clone());
    }

    #[test]
    fn prs_fallback_agrees() {
        let (_, v) = vars();
        let a = &(&v[0] * &v[1]) - &(&v[2] + &v[3]);
        let f = &a * &(&v[0] + &v[3]);
        let g = &a * &(&v[1] - &v[3]);
        assert_eq!(prs_gcd(&f, &g, 0).primitive_z().1, a.primitive_z().1);
    }

    #[test]
    fn squared_factor_with_large_coefficients() {
        let (_, v) = vars();
        let big = Q::from_integer(BigInt::from(10).pow(30));
        let a = &v[0].scale(&big) - &v[1];
        let f = &(&a * &a) * &(&v[2] + &v[3]);
        let g = &a * &(&v[2] - &v[3]);
        assert_eq!(gcd(&f, &g), a);
    }
}
