//! Verification suites. Each check reports pass, fail (with a witness) or
//! skip (with the reason it does not apply to the configuration).

use std::time::Instant;

use anyhow::Result;
use serde::Serialize;
use ybl::cohomology::{gamma_sum, integrate, mu_map, nu_map, CohomClass, HBasis, IntKind, NuKind};
use ybl::special_case::{akz_flatness_failure, bethe_idempotents_2x2, hecke_vs_bethe, qde_series_check, HeckeAction, QdeProblem, QdeSolution};
use ybl::weight_space::shapovalov;
use ybl::wronskian_quantum::{chern_sum_mul_op, cm_identities, limit_h_inf, HkAlgebra, QProduct, WronskianData};
use ybl::yangian::{bethe_generators, default_s_max, dynamical_hamiltonians, flatness_failure, qkz_operators, HamKind};
use ybl::{Composition, Sc, Setup, Sign};
use ybl_algebra::{q, qi, q_to_string, Field, Matrix, RatFunc, Role, Q};

use crate::config::{RunConfig, Scalars};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Check {
    pub id: String,
    /// Entry of the acceptance catalog this check belongs to.
    pub anchor: &'static str,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

pub enum Outcome {
    Pass,
    Fail(String),
    Skip(String),
}

fn verdict(bad: Option<String>) -> Outcome {
    bad.map_or(Outcome::Pass, Outcome::Fail)
}

fn when(ok: bool, witness: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(witness())
    }
}

struct Ctx<'a> {
    cfg: &'a RunConfig,
    setup: &'a Setup,
    lambda: &'a Composition,
    checks: Vec<Check>,
}

impl Ctx<'_> {
    fn run(&mut self, id: impl Into<String>, anchor: &'static str, f: impl FnOnce() -> Result<Outcome>) {
        let t = Instant::now();
        let (status, witness, note) = match f() {
            Ok(Outcome::Pass) => (Status::Pass, None, None),
            Ok(Outcome::Fail(w)) => (Status::Fail, Some(w), None),
            Ok(Outcome::Skip(n)) => (Status::Skip, None, Some(n)),
            Err(e) => (Status::Fail, Some(format!("{e:#}")), None),
        };
        let elapsed_ms = self.cfg.timings.then(|| t.elapsed().as_millis() as u64);
        self.checks.push(Check { id: id.into(), anchor, status, witness, note, elapsed_ms });
    }

    fn skip(&mut self, id: &str, anchor: &'static str, why: &str) {
        self.run(id, anchor, || Ok(Outcome::Skip(why.to_string())));
    }

    fn symbolic_q(&self) -> bool {
        self.setup.q_var(1).is_some()
    }

    fn full_flag(&self) -> bool {
        self.cfg.n == self.cfg.big_n && self.lambda.parts().iter().all(|&p| p == 1)
    }

    fn two_points(&self) -> bool {
        self.cfg.n == 2 && self.full_flag()
    }
}

const SIGNS: [(Sign, &str); 2] = [(Sign::Plus, "plus"), (Sign::Minus, "minus")];

pub fn run_suite(name: &str, cfg: &RunConfig, setup: &Setup) -> SuiteReport {
    let mut ctx = Ctx { cfg, setup, lambda: &cfg.lambda, checks: Vec::new() };
    match name {
        "xi" => xi(&mut ctx),
        "bethe-commute" => bethe_commute(&mut ctx),
        "flatness" => flatness(&mut ctx),
        "cohomology-examples" => cohomology_examples(&mut ctx),
        "wronskian" => wronskian(&mut ctx),
        "quantum-products" => quantum_products(&mut ctx),
        "calogero-moser" => calogero_moser(&mut ctx),
        "limit-h" => limit_h(&mut ctx),
        "hecke" => hecke(&mut ctx),
        "idempotents" => idempotents(&mut ctx),
        "qde" => qde(&mut ctx),
        _ => unreachable!("suite names are validated with the config"),
    }
    SuiteReport { suite: name.to_string(), checks: ctx.checks }
}

fn xi(c: &mut Ctx) {
    let (s, l) = (c.setup, c.lambda);
    c.run("orthogonality", "A2 orthogonality", || {
        let w = s.weight(l)?;
        for (i, xp) in w.xi_plus.iter().enumerate() {
            for (j, xm) in w.xi_minus.iter().enumerate() {
                let expect = if i == j { w.r[i].div(&w.q[i]) } else { Sc::zero() };
                if shapovalov(xp, xm)? != expect {
                    return Ok(Outcome::Fail(format!("pair ({i},{j})")));
                }
            }
        }
        Ok(Outcome::Pass)
    });
    c.run("extreme-vectors", "A1 xi-examples", || {
        let w = s.weight(l)?;
        let d = w.dim();
        let unit = |k: usize| (0..d).map(|i| if i == k { Sc::one() } else { Sc::zero() }).collect::<Vec<_>>();
        let (lo, hi) = (w.basis.imin(), w.basis.imax());
        Ok(when(w.xi_plus[lo] == unit(lo) && w.xi_minus[hi] == unit(hi), || "ξ at the extreme index is not a basis vector".into()))
    });
}

fn bethe_commute(c: &mut Ctx) {
    let (s, l) = (c.setup, c.lambda);
    for (sign, tag) in SIGNS {
        c.run(format!("commute-{tag}"), "A4 bethe-commutativity", || {
            Ok(verdict(bethe_generators(s, sign, l, default_s_max(l))?.first_noncommuting()))
        });
    }
    for (sign, tag) in SIGNS {
        c.run(format!("qkz-zero-step-{tag}"), "A11 qkz", || {
            let ks = qkz_operators(s, sign, l, &Sc::zero())?;
            let set = bethe_generators(s, sign, l, default_s_max(l))?;
            for (i, k) in ks.iter().enumerate() {
                if !set.all_ops().all(|g| k.commutator(g).is_zero()) {
                    return Ok(Outcome::Fail(format!("K{}", i + 1)));
                }
            }
            Ok(Outcome::Pass)
        });
    }
}

fn flatness(c: &mut Ctx) {
    let (s, l) = (c.setup, c.lambda);
    for (kind, kt) in [(HamKind::K, "k"), (HamKind::KPlus, "k-plus"), (HamKind::KMinus, "k-minus")] {
        for (sign, tag) in SIGNS {
            let id = format!("flat-{kt}-{tag}");
            if !c.symbolic_q() {
                c.skip(&id, "A10 flatness", "needs symbolic q");
                continue;
            }
            c.run(id, "A10 flatness", || Ok(verdict(flatness_failure(s, &dynamical_hamiltonians(s, sign, kind, l)?)?)));
        }
    }
}

fn cohomology_examples(c: &mut Ctx) {
    let (s, l) = (c.setup, c.lambda);
    c.run("regular-representation", "A6 regular-representation", || {
        let b = HBasis::new(s, l)?;
        for kind in [NuKind::Plus, NuKind::Eq, NuKind::Minus] {
            for f in &b.classes {
                let m = mu_map(s, kind, f)?;
                for g in &b.classes {
                    if m.mul_vec(&nu_map(s, kind, g)?) != nu_map(s, kind, &f.mul(g)?)? {
                        return Ok(Outcome::Fail(format!("{kind:?}")));
                    }
                }
            }
        }
        Ok(Outcome::Pass)
    });
    c.run("pairing-bridge", "A6 regular-representation", || {
        let b = HBasis::new(s, l)?;
        let sg = Sc::from_int(Setup::cross_sign(l));
        for f in &b.classes {
            for g in &b.classes {
                let fg = f.mul(g)?;
                let nm = nu_map(s, NuKind::Minus, g)?;
                if shapovalov(&nu_map(s, NuKind::Plus, f)?, &nm)? != integrate(s, IntKind::Fl, &fg)?.mul(&sg) {
                    return Ok(Outcome::Fail("plus/minus".into()));
                }
                if shapovalov(&nu_map(s, NuKind::Eq, f)?, &nm)? != integrate(s, IntKind::Tfl, &fg)?.mul(&sg) {
                    return Ok(Outcome::Fail("eq/minus".into()));
                }
            }
        }
        Ok(Outcome::Pass)
    });
    if !c.two_points() {
        c.skip("two-point-values", "A5 cohomology-examples", "needs N = n = 2, lambda = 1,1");
        return;
    }
    c.run("two-point-values", "A5 cohomology-examples", || {
        let (z1, z2, h) = (s.z(1).clone(), s.z(2).clone(), s.h().clone());
        let w = s.weight(l)?;
        let one = CohomClass::one(&w);
        let g = gamma_sum(s, l, 1)?;
        let den = z1.sub(&z2).add(&h).mul(&z2.sub(&z1).add(&h));
        let dm = z1.sub(&z2).add(&h);
        let de = z1.sub(&z2).sub(&h);
        let checks: [(&str, bool); 10] = [
            ("∫[1]", integrate(s, IntKind::Fl, &one)?.is_zero()),
            ("∫[γ]", integrate(s, IntKind::Fl, &g)? == Sc::from_int(-1)),
            ("∫̃[1]", integrate(s, IntKind::Tfl, &one)? == Sc::from_int(2).div(&den)),
            ("∫̃[γ]", integrate(s, IntKind::Tfl, &g)? == z1.add(&z2).sub(&h).div(&den)),
            ("ν⁺(γ)", nu_map(s, NuKind::Plus, &g)? == vec![z1.add(&h), z2.clone()]),
            ("ν⁻(1)", nu_map(s, NuKind::Minus, &one)? == vec![Sc::one().div(&dm), Sc::from_int(-1).div(&dm)]),
            ("ν⁻(γ)", nu_map(s, NuKind::Minus, &g)? == vec![z1.div(&dm), z2.sub(&h).neg().div(&dm)]),
            ("ν⁼(γ)", nu_map(s, NuKind::Eq, &g)? == vec![z1.sub(&h).div(&de), z2.neg().div(&de)]),
            ("μ⁺(γ)", mu_map(s, NuKind::Plus, &g)? == Matrix::new(2, 2, vec![z1.clone(), h.clone(), Sc::zero(), z2.clone()])?),
            ("μ⁻(γ)", mu_map(s, NuKind::Minus, &g)? == Matrix::new(2, 2, vec![z1.clone(), Sc::zero(), h.clone(), z2.clone()])?),
        ];
        Ok(verdict(checks.iter().find(|(_, ok)| !ok).map(|(n, _)| n.to_string())))
    });
}

fn wronskian(c: &mut Ctx) {
    let (s, l) = (c.setup, c.lambda);
    let alg = match HkAlgebra::new(s, l) {
        Ok(a) => a,
        Err(e) => {
            c.run("setup", "A7 wronskian-presentation", || Ok(Outcome::Fail(e.to_string())));
            return;
        }
    };
    for (sign, tag) in SIGNS {
        c.run(format!("generators-{tag}"), "A7 wronskian-presentation", || Ok(verdict(alg.generator_failure(sign)?)));
        c.run(format!("relations-{tag}"), "A7 wronskian-presentation", || Ok(verdict(alg.hk_relation_failure(sign)?)));
    }
    if l.parts() != [1, 1] {
        c.skip("two-point-relations", "A7 wronskian-presentation", "needs lambda = 1,1");
        return;
    }
    c.run("two-point-relations", "A7 wronskian-presentation", || {
        let data = WronskianData::new(l, None, 2)?;
        let var = |r: Role| RatFunc::var_role(&data.reg, r).expect("registry variable");
        let (g1, g2) = (data.elem(1, 1), data.elem(2, 1));
        let (z1, z2, h) = (data.z(1), data.z(2), data.h());
        let (q1, q2) = (var(Role::Q(1)), var(Role::Q(2)));
        let rel = data.relations()?;
        let first = g1.add(&g2).sub(&z1).sub(&z2).neg();
        let second = g1.mul(&g2).add(&q2.div(&q1.sub(&q2)).mul(&h).mul(&g1.sub(&g2).add(&h))).sub(&z1.mul(&z2));
        Ok(when(rel[1] == first && rel[0] == second, || format!("got {} and {}", rel[1], rel[0])))
    });
}

fn quantum_products(c: &mut Ctx) {
    let (s, l) = (c.setup, c.lambda);
    let (alg, hb) = match HkAlgebra::new(s, l).and_then(|a| Ok((a, HBasis::new(s, l)?))) {
        Ok(x) => x,
        Err(e) => {
            c.run("setup", "A9 quantum-product", || Ok(Outcome::Fail(e.to_string())));
            return;
        }
    };
    for (prod, tag) in [(QProduct::Star, "star"), (QProduct::Bullet, "bullet")] {
        c.run(format!("chern-sums-{tag}"), "A9 quantum-product", || {
            for i in 1..=l.big_n() {
                let c = gamma_sum(s, l, i)?;
                if alg.quantum_mul_op(prod, &c)? != chern_sum_mul_op(s, prod, l, i)? {
                    return Ok(Outcome::Fail(format!("i = {i}")));
                }
            }
            Ok(Outcome::Pass)
        });
        c.run(format!("algebra-{tag}"), "A9 quantum-product", || {
            let m = |a: &CohomClass, b: &CohomClass| alg.quantum_mul(prod, a, b);
            let one = { let w = s.weight(l)?; CohomClass::one(&w) };
            for f in &hb.classes {
                if m(f, &one)? != *f {
                    return Ok(Outcome::Fail("unit".into()));
                }
                for g in &hb.classes {
                    let fg = m(f, g)?;
                    if fg != m(g, f)? {
                        return Ok(Outcome::Fail("commutativity".into()));
                    }
                    for k in &hb.classes {
                        if m(&fg, k)? != m(f, &m(g, k)?)? {
                            return Ok(Outcome::Fail("associativity".into()));
                        }
                    }
                }
            }
            Ok(Outcome::Pass)
        });
    }
    c.run("frobenius-bullet", "A8 pairings", || {
        let int = |x: &CohomClass| integrate(s, IntKind::Tfl, x);
        for (a, f) in hb.classes.iter().enumerate() {
            for (b, g) in hb.classes.iter().enumerate() {
                let fg = alg.quantum_mul(QProduct::Bullet, f, g)?;
                for (d, k) in hb.classes.iter().enumerate() {
                    if int(&fg.mul(k)?)? != int(&f.mul(&alg.quantum_mul(QProduct::Bullet, g, k)?)?)? {
                        return Ok(Outcome::Fail(format!("({}, {}, {})", hb.label(a), hb.label(b), hb.label(d))));
                    }
                }
            }
        }
        Ok(Outcome::Pass)
    });
    if !c.two_points() {
        c.skip("quadratic-relation", "A9 quantum-product", "needs N = n = 2, lambda = 1,1");
        return;
    }
    c.run("quadratic-relation", "A9 quantum-product", || {
        let x = gamma_sum(s, l, 1)?.sub(&gamma_sum(s, l, 2)?)?;
        let m = alg.quantum_mul_op(QProduct::Bullet, &x)?;
        let qq = s.q(2).div(s.q(1));
        let k = Sc::from_int(4).mul(s.h()).mul(&qq).div(&Sc::one().sub(&qq));
        let lhs = m.mul(&m).sub(&Matrix::scalar(2, s.h().clone()).add(&m).scale(&k));
        let z = s.z(1).sub(s.z(2));
        Ok(when(lhs == Matrix::scalar(2, z.mul(&z)), || "(x•)² − c(h + x•) ≠ z²".into()))
    });
}

fn calogero_moser(c: &mut Ctx) {
    if !c.full_flag() {
        c.skip("identities", "A12 calogero-moser", "needs N = n and lambda = 1,..,1");
        return;
    }
    let (n, q) = (c.cfg.n, c.cfg.q.clone());
    c.run("identities", "A12 calogero-moser", || {
        let r = cm_identities(n, q.as_deref())?;
        if let Some(bad) = r.first_failure {
            return Ok(Outcome::Fail(bad));
        }
        Ok(when(n == 1 || r.rank == 1, || format!("rank {}", r.rank)))
    });
}

fn limit_h(c: &mut Ctx) {
    let l = c.lambda.clone();
    if l.parts().iter().any(|&p| p == 0) {
        c.skip("limit", "A13 h-infinity-limit", "needs all lambda_i > 0");
        return;
    }
    c.run("limit", "A13 h-infinity-limit", || {
        let r = limit_h_inf(&l)?;
        Ok(when(r.passes(), || format!("h-degree {:?}", r.h_degree)))
    });
}

fn hecke(c: &mut Ctx) {
    if !c.full_flag() || c.cfg.n < 2 {
        c.skip("hecke", "A14 hecke", "needs N = n ≥ 2 and lambda = 1,..,1");
        return;
    }
    let s = c.setup;
    for (sign, tag) in SIGNS {
        c.run(format!("relations-{tag}"), "A14 hecke", || Ok(verdict(HeckeAction::new(s, sign)?.relation_failure())));
        c.run(format!("bethe-{tag}"), "A14 hecke", || Ok(verdict(hecke_vs_bethe(s, sign)?)));
        if c.symbolic_q() {
            c.run(format!("affine-kz-flat-{tag}"), "A14 hecke", || Ok(verdict(akz_flatness_failure(s, sign)?)));
        } else {
            c.skip(&format!("affine-kz-flat-{tag}"), "A14 hecke", "needs symbolic q");
        }
    }
}

/// `(z_1 − z_2, h, q_2/q_1)` for two points when everything is rational,
/// otherwise a fixed panel.
fn two_point_panel(c: &Ctx) -> (Q, Q, Q, Option<String>) {
    match (&c.cfg.scalars, &c.cfg.q) {
        (Scalars::Specialized { z, h }, Some(qs)) => (&z[0] - &z[1], h.clone(), &qs[1] / &qs[0], None),
        _ => (qi(3), qi(1), q(1, 4), Some("symbolic configuration; ran the panel z=3, h=1, q=1/4".into())),
    }
}

fn idempotents(c: &mut Ctx) {
    if !c.two_points() {
        c.skip("idempotents", "A15 idempotents", "needs N = n = 2, lambda = 1,1");
        return;
    }
    let (z, h, qq, note) = two_point_panel(c);
    c.run("idempotents", "A15 idempotents", || {
        let r = bethe_idempotents_2x2(&z, &h, &qq)?;
        Ok(verdict(r.first_failure))
    });
    if let (Some(n), Some(last)) = (note, c.checks.last_mut()) {
        last.note = Some(n);
    }
}

fn qde(c: &mut Ctx) {
    if !c.two_points() {
        c.skip("qde", "A16 qde", "needs N = n = 2, lambda = 1,1");
        return;
    }
    let (z, h, _, note) = two_point_panel(c);
    let p = QdeProblem { z, h, kappa: c.cfg.kappa.clone(), order: c.cfg.order };
    for (which, tag) in [(QdeSolution::J1, "j1"), (QdeSolution::J2, "j2")] {
        c.run(format!("series-{tag}"), "A16 qde", || {
            let r = qde_series_check(&p, which)?;
            Ok(match r.first_failure {
                None => Outcome::Pass,
                Some(d) => Outcome::Fail(format!("residual nonzero at order q^{d} (z={}, h={}, kappa={})", q_to_string(&p.z), q_to_string(&p.h), q_to_string(&p.kappa))),
            })
        });
        if let (Some(n), Some(last)) = (&note, c.checks.last_mut()) {
            last.note = Some(n.clone());
        }
    }
}
