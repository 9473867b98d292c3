//! Scalars that can be permuted in the equivariant variables.
//!
//! Symbolic runs use [`RatFunc`] directly. Specialized runs fix `z` to
//! rationals, which destroys the ability to swap `z_i` and `z_{i+1}`; an
//! [`Orbit`] keeps the values of a function at every permutation of the
//! specialized point instead, so the swap is a relabeling of the table.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use ybl_algebra::{Field, RatFunc, Role, Q};

/// Field elements on which `S_n` acts by permuting `z_1..z_n`.
pub trait ZPerm: Field {
    /// `f ↦ f(z_{π(1)}, …, z_{π(n)})`, with `π` given 0-based.
    fn permute_z(&self, pi: &[usize]) -> Self;

    /// Exchange `z_i` and `z_{i+1}` (1-based).
    fn swap_adjacent(&self, i: usize, n: usize) -> Self {
        let mut pi: Vec<usize> = (0..n).collect();
        pi.swap(i - 1, i);
        self.permute_z(&pi)
    }

    /// `f ↦ f(z_n, …, z_1)`.
    fn reverse_z(&self, n: usize) -> Self {
        let pi: Vec<usize> = (0..n).rev().collect();
        self.permute_z(&pi)
    }
}

/// Transpositions `t_1, …, t_k` with `π = t_k ∘ … ∘ t_1`; applying the
/// variable swaps in this order realizes `f ↦ f∘π`.
fn transpositions(pi: &[usize]) -> Vec<(usize, usize)> {
    let mut cur = pi.to_vec();
    let mut out = Vec::new();
    for i in 0..cur.len() {
        if cur[i] != i {
            let j = cur.iter().position(|&x| x == i).expect("not a permutation");
            cur.swap(i, j);
            out.push((i, j));
        }
    }
    out
}

impl ZPerm for RatFunc {
    fn permute_z(&self, pi: &[usize]) -> Self {
        let Some(reg) = self.registry().cloned() else { return self.clone() };
        let mut f = self.clone();
        for (a, b) in transpositions(pi) {
            if let (Some(x), Some(y)) = (reg.index_of(Role::Z(a + 1)), reg.index_of(Role::Z(b + 1))) {
                f = f.swap_vars(x, y);
            }
        }
        f
    }
}

/// All permutations of `0..n` with an index, shared by every [`Orbit`] of a run.
#[derive(Debug)]
pub struct OrbitFrame {
    perms: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl OrbitFrame {
    pub fn new(n: usize) -> Arc<Self> {
        let mut perms = vec![Vec::new()];
        for k in 0..n {
            let mut next = Vec::with_capacity(perms.len() * (k + 1));
            for p in &perms {
                for pos in 0..=k {
                    let mut q = p.clone();
                    q.insert(pos, k);
                    next.push(q);
                }
            }
            perms = next;
        }
        perms.sort();
        let index = perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        Arc::new(OrbitFrame { perms, index })
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    fn identity(&self) -> usize {
        0
    }
}

/// A function of `z` recorded by its values at all permuted points `z_σ`.
#[derive(Clone, Debug)]
pub enum Orbit {
    Const(Q),
    Table(Arc<OrbitFrame>, Vec<Q>),
}

impl Orbit {
    /// The coordinate function `z_a` (1-based) at the point `values`.
    pub fn z(frame: &Arc<OrbitFrame>, values: &[Q], a: usize) -> Self {
        let t = frame.perms.iter().map(|s| values[s[a - 1]].clone()).collect();
        Orbit::Table(frame.clone(), t)
    }

    /// Value at the unpermuted point.
    pub fn value(&self) -> Q {
        match self {
            Orbit::Const(c) => c.clone(),
            Orbit::Table(f, t) => t[f.identity()].clone(),
        }
    }

    fn zip(&self, o: &Self, op: impl Fn(&Q, &Q) -> Q) -> Self {
        match (self, o) {
            (Orbit::Const(a), Orbit::Const(b)) => Orbit::Const(op(a, b)),
            (Orbit::Table(f, t), Orbit::Const(b)) => Orbit::Table(f.clone(), t.iter().map(|a| op(a, b)).collect()),
            (Orbit::Const(a), Orbit::Table(f, t)) => Orbit::Table(f.clone(), t.iter().map(|b| op(a, b)).collect()),
            (Orbit::Table(f, t), Orbit::Table(_, u)) => {
                Orbit::Table(f.clone(), t.iter().zip(u).map(|(a, b)| op(a, b)).collect())
            }
        }
    }
}

impl PartialEq for Orbit {
    fn eq(&self, o: &Self) -> bool {
        match (self, o) {
            (Orbit::Const(a), Orbit::Const(b)) => a == b,
            (Orbit::Table(_, t), Orbit::Const(b)) | (Orbit::Const(b), Orbit::Table(_, t)) => t.iter().all(|a| a == b),
            (Orbit::Table(_, t), Orbit::Table(_, u)) => t == u,
        }
    }
}

impl fmt::Display for Orbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl Field for Orbit {
    fn zero() -> Self {
        Orbit::Const(<Q as Field>::zero())
    }
    fn one() -> Self {
        Orbit::Const(<Q as Field>::one())
    }
    fn from_q(q: &Q) -> Self {
        Orbit::Const(q.clone())
    }
    fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a + b)
    }
    fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a - b)
    }
    fn mul(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a * b)
    }
    fn neg(&self) -> Self {
        match self {
            Orbit::Const(a) => Orbit::Const(-a),
            Orbit::Table(f, t) => Orbit::Table(f.clone(), t.iter().map(|a| -a).collect()),
        }
    }
    fn inv(&self) -> Option<Self> {
        match self {
            Orbit::Const(a) => Field::inv(a).map(Orbit::Const),
            Orbit::Table(f, t) => {
                let v: Option<Vec<Q>> = t.iter().map(Field::inv).collect();
                v.map(|v| Orbit::Table(f.clone(), v))
            }
        }
    }
    fn is_zero(&self) -> bool {
        match self {
            Orbit::Const(a) => Field::is_zero(a),
            Orbit::Table(_, t) => t.iter().all(Field::is_zero),
        }
    }
}

impl ZPerm for Orbit {
    fn permute_z(&self, pi: &[usize]) -> Self {
        match self {
            Orbit::Const(_) => self.clone(),
            Orbit::Table(f, t) => {
                let out = f
                    .perms
                    .iter()
                    .map(|s| {
                        let comp: Vec<usize> = pi.iter().map(|&k| s[k]).collect();
                        t[f.index[&comp]].clone()
                    })
                    .collect();
                Orbit::Table(f.clone(), out)
            }
        }
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use ybl_algebra::{qi, VarRegistry};

    #[test]
    fn orbit_permutation_matches_symbolic_substitution() {
        let reg = VarRegistry::zhq(3, 1, false);
        let z: Vec<RatFunc> = (1..=3).map(|a| RatFunc::var_role(&reg, Role::Z(a)).unwrap()).collect();
        // f = z1^2 z2 + 3 z3
        let f = z[0].mul(&z[0]).mul(&z[1]).add(&z[2].scale_q(&qi(3)));
        let pt = [qi(2), qi(-5), qi(7)];
        let frame = OrbitFrame::new(3);
        let oz: Vec<Orbit> = (1..=3).map(|a| Orbit::z(&frame, &pt, a)).collect();
        let of = oz[0].mul(&oz[0]).mul(&oz[1]).add(&oz[2].scale_q(&qi(3)));
        for pi in [[1, 0, 2], [2, 0, 1], [2, 1, 0], [0, 2, 1]] {
            let sym = f.permute_z(&pi).eval(&[pt[0].clone(), pt[1].clone(), pt[2].clone(), qi(0)]).unwrap();
            assert_eq!(of.permute_z(&pi).value(), sym);
        }
    }

    #[test]
    fn composition_law() {
        let reg = VarRegistry::zhq(3, 1, false);
        let z: Vec<RatFunc> = (1..=3).map(|a| RatFunc::var_role(&reg, Role::Z(a)).unwrap()).collect();
        let f = z[0].mul(&z[1]).mul(&z[1]).add(&z[2].mul(&z[2]).mul(&z[2]));
        // (f^s)^t = f^{t∘s}
        let s = [1, 0, 2];
        let t = [0, 2, 1];
        let ts: Vec<usize> = s.iter().map(|&k| t[k]).collect();
        assert_eq!(f.permute_z(&s).permute_z(&t), f.permute_z(&ts));
        assert_eq!(f.swap_adjacent(1, 3).swap_adjacent(1, 3), f);
        assert_eq!(f.reverse_z(3), f.permute_z(&[2, 1, 0]));
    }
}
