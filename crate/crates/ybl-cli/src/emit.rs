//! Serialized artifacts: matrices, vectors, relations and pairing values.

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};
use ybl::cohomology::{gamma_elementary, mu_map, CohomClass, NuKind};
use ybl::wronskian_quantum::{cm_matrix, quantum_connection, HkAlgebra, HkElem, PairKind, QProduct, WronskianData};
use ybl::yangian::{bethe_generators, default_s_max};
use ybl::{Composition, Sc, Setup, Sign, WeightBasis};
use ybl_algebra::{q_to_string, Matrix, RatFunc};

use crate::config::RunConfig;

pub struct Emitted {
    pub json: Value,
    pub text: String,
}

pub fn scalar(x: &RatFunc) -> String {
    match x.as_constant() {
        Some(c) => q_to_string(&c),
        None => x.to_string(),
    }
}

fn matrix_json(m: &Matrix<RatFunc>) -> Value {
    Value::Array((0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(|x| Value::String(scalar(x))).collect())).collect())
}

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let width: Vec<usize> = (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().enumerate().map(|(c, s)| format!("{s:<w$}", w = width[c])).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn matrix_text(m: &Matrix<RatFunc>, labels: &[String]) -> String {
    let mut rows = vec![std::iter::once(String::new()).chain(labels.iter().cloned()).collect::<Vec<_>>()];
    for r in 0..m.rows() {
        rows.push(std::iter::once(labels.get(r).cloned().unwrap_or_default()).chain(m.row(r).iter().map(scalar)).collect());
    }
    table(&rows)
}

fn word_labels(b: &WeightBasis) -> Vec<String> {
    b.words().iter().map(|w| w.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("")).collect()
}

fn parse_usize(s: Option<&String>, what: &str) -> Result<usize> {
    s.with_context(|| format!("missing {what}"))?.parse().with_context(|| format!("bad {what}"))
}

/// `e<p>_<r>` (σ_r of the p-th block), `g<p>` (its first Chern class),
/// `γ<p>,1` when the block has size one, or an integer.
enum Factor {
    Int(i64),
    Elem(usize, usize),
}

fn parse_factor(t: &str, l: &Composition) -> Result<Factor> {
    let t = t.trim();
    if let Ok(k) = t.parse::<i64>() {
        return Ok(Factor::Int(k));
    }
    let bad = || anyhow::anyhow!("cannot read class factor {t:?} (use e<p>_<r>, g<p>, γ<p>,<i> or an integer)");
    let strip = |s: &str| s.replace(['{', '}', '_'], ",").split(',').filter(|x| !x.is_empty()).map(|x| x.parse::<usize>()).collect::<Result<Vec<_>, _>>();
    let (p, r) = if let Some(rest) = t.strip_prefix('e') {
        match strip(rest).map_err(|_| bad())?[..] {
            [p, r] => (p, r),
            _ => return Err(bad()),
        }
    } else if let Some(rest) = t.strip_prefix("gamma").or_else(|| t.strip_prefix('γ')) {
        match strip(rest).map_err(|_| bad())?[..] {
            [p, 1] if p >= 1 && p <= l.big_n() && l.part(p) == 1 => (p, 1),
            [_, _] => bail!("{t}: single Chern roots are classes only for blocks of size one; use e<p>_<r>"),
            _ => return Err(bad()),
        }
    } else if let Some(rest) = t.strip_prefix('g') {
        (rest.parse().map_err(|_| bad())?, 1)
    } else {
        return Err(bad());
    };
    if p == 0 || p > l.big_n() || r == 0 || r > l.part(p) {
        bail!("{t}: no such generator for lambda = {l}");
    }
    Ok(Factor::Elem(p, r))
}

fn parse_class(s: &Setup, l: &Composition, expr: &str) -> Result<CohomClass> {
    let w = s.weight(l)?;
    let mut acc = CohomClass::one(&w);
    for t in expr.split('*') {
        acc = match parse_factor(t, l)? {
            Factor::Int(k) => acc.scale(&Sc::from_int(k)),
            Factor::Elem(p, r) => acc.mul(&gamma_elementary(s, l, p, r)?)?,
        };
    }
    Ok(acc)
}

fn parse_hk(alg: &HkAlgebra, l: &Composition, expr: &str) -> Result<HkElem> {
    let mut acc = HkElem::one(alg.width());
    for t in expr.split('*') {
        acc = match parse_factor(t, l)? {
            Factor::Int(k) => acc.scale(&Sc::from_int(k)),
            Factor::Elem(p, r) => acc.mul(&alg.elem(p, r)?),
        };
    }
    Ok(acc)
}

pub fn emit(cfg: &RunConfig, setup: &Setup, args: &[String]) -> Result<Emitted> {
    let l = &cfg.lambda;
    let head = args.first().map(String::as_str).context("missing object to emit")?;
    let base = |obj: &str| json!({ "schema": "ybl/1", "object": obj, "config": serde_json::to_value(cfg.echo()).expect("serializable") });
    let mut out = base(head);
    let text;
    match head {
        "xi" => {
            let w = setup.weight(l)?;
            let labels = word_labels(&w.basis);
            let side = |v: &[Vec<Sc>]| Value::Array(v.iter().map(|x| Value::Array(x.iter().map(|c| Value::String(scalar(c))).collect())).collect());
            out["basis"] = json!(labels);
            out["plus"] = side(&w.xi_plus);
            out["minus"] = side(&w.xi_minus);
            let mut rows = vec![vec!["index".to_string(), "sign".into(), "coordinates".into()]];
            for (k, lab) in labels.iter().enumerate() {
                rows.push(vec![lab.clone(), "+".into(), w.xi_plus[k].iter().map(scalar).collect::<Vec<_>>().join(", ")]);
                rows.push(vec![lab.clone(), "-".into(), w.xi_minus[k].iter().map(scalar).collect::<Vec<_>>().join(", ")]);
            }
            text = table(&rows);
        }
        "bethe-matrix" => {
            let p = parse_usize(args.get(1), "block p")?;
            let s = parse_usize(args.get(2), "degree s")?;
            let sign = match args.get(3).map(String::as_str) {
                None | Some("plus") => Sign::Plus,
                Some("minus") => Sign::Minus,
                Some(o) => bail!("unknown sign {o:?}"),
            };
            let set = bethe_generators(setup, sign, l, default_s_max(l).max(s))?;
            let m = set.b.get(&(p, s)).with_context(|| format!("no generator B[{p},{s}]"))?;
            let labels = word_labels(&set.weight.basis);
            out["basis"] = json!(labels);
            out["generator"] = json!({ "p": p, "s": s, "sign": if sign == Sign::Plus { "plus" } else { "minus" } });
            out["matrix"] = matrix_json(m);
            text = matrix_text(m, &labels);
        }
        "mu" => {
            let kind = match args.get(1).map(String::as_str) {
                Some("plus") => NuKind::Plus,
                Some("eq") => NuKind::Eq,
                Some("minus") => NuKind::Minus,
                o => bail!("mu needs a kind plus|eq|minus, got {o:?}"),
            };
            let expr = args.get(2).context("mu needs a class")?;
            let m = mu_map(setup, kind, &parse_class(setup, l, expr)?)?;
            let labels = word_labels(&setup.weight(l)?.basis);
            out["basis"] = json!(labels);
            out["class"] = json!(expr);
            out["matrix"] = matrix_json(&m);
            text = matrix_text(&m, &labels);
        }
        "quantum-matrix" => {
            let prod = match args.get(1).map(String::as_str) {
                Some("star") => QProduct::Star,
                Some("bullet") => QProduct::Bullet,
                o => bail!("quantum-matrix needs star|bullet, got {o:?}"),
            };
            let i = parse_usize(args.get(2), "index i")?;
            if i == 0 || i > l.big_n() {
                bail!("index i must lie in 1..={}", l.big_n());
            }
            let (mats, _) = quantum_connection(setup, prod, l)?;
            let hb = ybl::cohomology::HBasis::new(setup, l)?;
            let labels: Vec<String> = (0..hb.dim()).map(|k| hb.label(k)).collect();
            out["basis"] = json!(labels);
            out["index"] = json!(i);
            out["matrix"] = matrix_json(&mats[i - 1]);
            text = matrix_text(&mats[i - 1], &labels);
        }
        "wronskian" => {
            let data = WronskianData::new(l, cfg.q.as_deref(), 0)?;
            let rel: Vec<String> = data.relations()?.iter().map(|r| format!("{r} = 0")).collect();
            out["variables"] = json!(data.reg.names());
            out["relations"] = json!(rel);
            text = rel.iter().map(|r| format!("{r}\n")).collect();
        }
        "pairing" => {
            let kind = match args.get(1).map(String::as_str) {
                Some("round") => PairKind::Round,
                Some("angle") => PairKind::Angle,
                o => bail!("pairing needs round|angle, got {o:?}"),
            };
            let (f, g) = (args.get(2).context("pairing needs two elements")?, args.get(3).context("pairing needs two elements")?);
            let alg = HkAlgebra::new(setup, l)?;
            let v = alg.pairing(kind, &parse_hk(&alg, l, f)?, &parse_hk(&alg, l, g)?)?;
            out["arguments"] = json!([f, g]);
            out["value"] = json!(scalar(&v));
            text = format!("{}\n", scalar(&v));
        }
        "cm-matrix" => {
            if l.parts().iter().any(|&p| p != 1) {
                bail!("cm-matrix needs lambda = 1,..,1");
            }
            let data = WronskianData::new(l, cfg.q.as_deref(), 0)?;
            let m = cm_matrix(&data);
            let labels: Vec<String> = (1..=l.big_n()).map(|i| i.to_string()).collect();
            out["variables"] = json!(data.reg.names());
            out["matrix"] = matrix_json(&m);
            text = matrix_text(&m, &labels);
        }
        other => bail!("unknown object {other:?} (xi, bethe-matrix, mu, quantum-matrix, wronskian, pairing, cm-matrix)"),
    }
    Ok(Emitted { json: out, text })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_factors() {
        let l = Composition::new(vec![2, 1]).unwrap();
        assert!(matches!(parse_factor("e1_2", &l), Ok(Factor::Elem(1, 2))));
        assert!(matches!(parse_factor("g2", &l), Ok(Factor::Elem(2, 1))));
        assert!(matches!(parse_factor("γ_{2,1}", &l), Ok(Factor::Elem(2, 1))));
        assert!(matches!(parse_factor(" -3 ", &l), Ok(Factor::Int(-3))));
        assert!(parse_factor("γ_{1,1}", &l).is_err());
        assert!(parse_factor("e2_2", &l).is_err());
        assert!(parse_factor("e3_1", &l).is_err());
        assert!(parse_factor("x", &l).is_err());
    }

    #[test]
    fn aligned_table() {
        let t = table(&[vec!["a".into(), "bb".into()], vec!["ccc".into(), "d".into()]]);
        assert_eq!(t, "a    bb\nccc  d\n");
    }
}
