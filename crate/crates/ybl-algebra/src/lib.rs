//! Exact arithmetic kernel: rationals, sparse multivariate polynomials,
//! reduced rational functions, dense matrices over exact fields, polynomials
//! in a spectral variable, truncated power series and quadratic extensions.

pub mod error;
pub mod field;
pub mod gcd;
pub mod matrix;
pub mod poly;
pub mod quadext;
pub mod ratfunc;
pub mod registry;
pub mod series;
pub mod upoly;

pub use error::AlgebraError;
pub use field::{eval_poly, eval_ratfunc, Field};
pub use gcd::gcd;
pub use matrix::Matrix;
pub use poly::{Mono, MultiPoly};
pub use quadext::QuadExt;
pub use ratfunc::RatFunc;
pub use registry::{Role, VarRegistry};
pub use series::{series_div, QSeries};
pub use upoly::{expand_at_infinity, UPoly};

pub type Q = num_rational::BigRational;

/// Parse `p`, `-p` or `p/q`.
pub fn parse_q(s: &str) -> Result<Q, AlgebraError> {
    let s = s.trim();
    let err = || AlgebraError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: num_bigint::BigInt = n.trim().parse().map_err(|_| err())?;
            let d: num_bigint::BigInt = d.trim().parse().map_err(|_| err())?;
            if num_traits::Zero::is_zero(&d) {
                return Err(err());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| err())?)),
    }
}

/// Canonical `p/q` string (denominator always written).
pub fn q_to_string(q: &Q) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}
