use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{Algebra, Elem, Points, Term};

/// `lhs ≈ rhs`, universally quantified over the variables that occur.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityEquation {
    pub lhs: Term,
    pub rhs: Term,
}

impl IdentityEquation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        IdentityEquation { lhs, rhs }
    }

    pub fn variables(&self) -> usize {
        self.lhs.max_var().max(self.rhs.max_var())
    }
}

impl FromStr for IdentityEquation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (l, r) = s.split_once('=').ok_or_else(|| Error::Parse {
            pos: 0,
            msg: "an identity needs `=`".into(),
        })?;
        Ok(IdentityEquation::new(l.parse()?, r.parse()?))
    }
}

impl fmt::Display for IdentityEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// Idempotence, associativity and `x∘y∘z = x∘z` for the binary operation `op`.
pub fn pattern_axioms(op: &str) -> Vec<IdentityEquation> {
    let o = |a: Term, b: Term| Term::apply(op, vec![a, b]);
    let (x, y, z) = (Term::var(1), Term::var(2), Term::var(3));
    vec![
        IdentityEquation::new(o(x.clone(), x.clone()), x.clone()),
        IdentityEquation::new(
            o(o(x.clone(), y.clone()), z.clone()),
            o(x.clone(), o(y.clone(), z.clone())),
        ),
        IdentityEquation::new(o(o(x.clone(), y), z.clone()), o(x, z)),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityFailure {
    /// Index into the checked equation list.
    pub equation: usize,
    /// Values of `x1, x2, ...`.
    pub assignment: Vec<Elem>,
    pub lhs: Elem,
    pub rhs: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityVerdict {
    pub holds: bool,
    pub failure: Option<IdentityFailure>,
}

/// Checks every equation under every assignment; the first failure in
/// equation order, then tuple-index order of assignments, is reported.
pub fn check_identities(algebra: &Algebra, equations: &[IdentityEquation]) -> Result<IdentityVerdict> {
    for eq in equations {
        algebra.check_term(&eq.lhs)?;
        algebra.check_term(&eq.rhs)?;
    }
    for (k, eq) in equations.iter().enumerate() {
        for env in Points::new(algebra.q(), eq.variables()) {
            let lhs = algebra.eval_term(&eq.lhs, &env)?;
            let rhs = algebra.eval_term(&eq.rhs, &env)?;
            if lhs != rhs {
                return Ok(IdentityVerdict {
                    holds: false,
                    failure: Some(IdentityFailure {
                        equation: k,
                        assignment: env,
                        lhs,
                        rhs,
                    }),
                });
            }
        }
    }
    Ok(IdentityVerdict {
        holds: true,
        failure: None,
    })
}
