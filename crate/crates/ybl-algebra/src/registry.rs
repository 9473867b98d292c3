use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::AlgebraError;

/// What a variable stands for. Roles are fixed when the registry is built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    /// Equivariant parameter `z_a` (1-based).
    Z(usize),
    /// Deformation parameter `h`.
    H,
    /// Quantum parameter `q_i` (1-based).
    Q(usize),
    /// Chern root `gamma_{p,i}` (1-based block, 1-based index).
    Gamma(usize, usize),
    /// Elementary symmetric function `e_r` of the roots of block `p`.
    Elem(usize, usize),
    /// Spectral variable `u`.
    U,
    /// Auxiliary variable `x`.
    X,
    /// Formal series variable.
    Series,
    /// Anything else (`kappa`, `r_i`, ...).
    Aux,
}

#[derive(Debug, PartialEq, Eq)]
pub struct VarRegistry {
    names: Vec<String>,
    roles: Vec<Role>,
    by_name: HashMap<String, usize>,
}

impl VarRegistry {
    pub fn new<S: Into<String>>(vars: Vec<(S, Role)>) -> Result<Arc<Self>, AlgebraError> {
        let mut names = Vec::with_capacity(vars.len());
        let mut roles = Vec::with_capacity(vars.len());
        let mut by_name = HashMap::new();
        for (i, (name, role)) in vars.into_iter().enumerate() {
            let name = name.into();
            if by_name.insert(name.clone(), i).is_some() {
                return Err(AlgebraError::DuplicateVariable(name));
            }
            if role != Role::Aux && roles.contains(&role) {
                return Err(AlgebraError::DuplicateVariable(name));
            }
            names.push(name);
            roles.push(role);
        }
        Ok(Arc::new(VarRegistry { names, roles, by_name }))
    }

    /// `z1..zn, h` followed by `q1..qN` when `with_q` is set.
    pub fn zhq(n: usize, big_n: usize, with_q: bool) -> Arc<Self> {
        let mut v: Vec<(String, Role)> = (1..=n).map(|a| (format!("z{a}"), Role::Z(a))).collect();
        v.push(("h".into(), Role::H));
        if with_q {
            v.extend((1..=big_n).map(|i| (format!("q{i}"), Role::Q(i))));
        }
        Self::new(v).expect("generated names are unique")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn role(&self, i: usize) -> Role {
        self.roles[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn index_of(&self, role: Role) -> Option<usize> {
        self.roles.iter().position(|r| *r == role)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }
}

impl fmt::Display for VarRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.names.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_names_rejected() {
        let r = VarRegistry::new(vec![("z1", Role::Z(1)), ("z1", Role::Aux)]);
        assert!(matches!(r, Err(AlgebraError::DuplicateVariable(_))));
    }

    #[test]
    fn role_lookup() {
        let r = VarRegistry::zhq(3, 2, true);
        assert_eq!(r.len(), 6);
        assert_eq!(r.index_of(Role::H), Some(3));
        assert_eq!(r.index_of(Role::Q(2)), Some(5));
        assert_eq!(r.index("z2"), Some(1));
    }
}
