use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::table::{Carrier, Elem, OpTable, Points};
use super::term::Term;
use crate::error::{Error, Result};

/// A finite algebra `(A; Ω)`: a carrier, a distinguished zero and named
/// basic operations, ordered by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Algebra {
    carrier: Carrier,
    zero: Elem,
    ops: BTreeMap<String, OpTable>,
}

impl Algebra {
    pub fn new(
        q: usize,
        zero: Elem,
        ops: impl IntoIterator<Item = (String, OpTable)>,
    ) -> Result<Self> {
        let carrier = Carrier::new(q)?;
        carrier.check(zero as usize)?;
        let mut algebra = Algebra {
            carrier,
            zero,
            ops: BTreeMap::new(),
        };
        for (name, table) in ops {
            algebra.insert(name, table)?;
        }
        Ok(algebra)
    }

    fn insert(&mut self, name: String, table: OpTable) -> Result<()> {
        if table.q() != self.q() {
            return Err(Error::CarrierMismatch {
                left: self.q(),
                right: table.q(),
            });
        }
        if name.is_empty()
            || !name
                .bytes()
                .all(|c| c.is_ascii_alphanumeric() || c == b'_' || c == b'.')
            || name.starts_with(|c: char| c.is_ascii_digit())
        {
            return Err(Error::Invalid(format!("invalid operation name `{name}`")));
        }
        if self.ops.contains_key(&name) {
            return Err(Error::DuplicateOp(name));
        }
        self.ops.insert(name, table);
        Ok(())
    }

    /// A copy of this algebra with one more basic operation.
    pub fn with_op(&self, name: impl Into<String>, table: OpTable) -> Result<Algebra> {
        let mut out = self.clone();
        out.insert(name.into(), table)?;
        Ok(out)
    }

    pub fn q(&self) -> usize {
        self.carrier.size()
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn op(&self, name: &str) -> Result<&OpTable> {
        self.ops
            .get(name)
            .ok_or_else(|| Error::UnknownOp(name.to_string()))
    }

    pub fn ops(&self) -> impl Iterator<Item = (&str, &OpTable)> {
        self.ops.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn op_count(&self) -> usize {
        self.ops.len()
    }

    /// Checks that every application names an operation of matching arity.
    pub fn check_term(&self, term: &Term) -> Result<()> {
        match term {
            Term::Var(0) => Err(Error::VariableOutOfRange {
                index: 0,
                available: 0,
            }),
            Term::Var(_) => Ok(()),
            Term::Const(a) => self.carrier.check(*a as usize).map(|_| ()),
            Term::Apply(name, args) => {
                let table = self.op(name)?;
                if table.arity() != args.len() {
                    return Err(Error::Arity {
                        expected: table.arity(),
                        got: args.len(),
                    });
                }
                args.iter().try_for_each(|a| self.check_term(a))
            }
        }
    }

    /// Evaluates `term` with `Var(i)` bound to `env[i - 1]`.
    pub fn eval_term(&self, term: &Term, env: &[Elem]) -> Result<Elem> {
        match term {
            Term::Var(i) => {
                if *i == 0 || *i > env.len() {
                    return Err(Error::VariableOutOfRange {
                        index: *i,
                        available: env.len(),
                    });
                }
                self.carrier.check(env[i - 1] as usize)
            }
            Term::Const(a) => self.carrier.check(*a as usize),
            Term::Apply(name, args) => {
                let table = self.op(name)?;
                let values = args
                    .iter()
                    .map(|a| self.eval_term(a, env))
                    .collect::<Result<Vec<_>>>()?;
                table.eval(&values)
            }
        }
    }

    /// The `n`-ary function `term` denotes.
    pub fn table_of_term(&self, term: &Term, n: usize) -> Result<OpTable> {
        if term.max_var() > n {
            return Err(Error::VariableOutOfRange {
                index: term.max_var(),
                available: n,
            });
        }
        self.check_term(term)?;
        let entries = Points::new(self.q(), n)
            .map(|p| self.eval_term(term, &p))
            .collect::<Result<Vec<_>>>()?;
        Ok(OpTable::from_raw(self.q(), n, entries))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> Algebra {
        let meet = OpTable::from_fn(3, 2, |p| p[0].min(p[1])).unwrap();
        let vee =
            OpTable::from_fn(3, 2, |p| if p[0] != 0 && p[1] != 0 { p[0].max(p[1]) } else { 0 })
                .unwrap();
        Algebra::new(3, 0, [("meet".to_string(), meet), ("vee".to_string(), vee)]).unwrap()
    }

    #[test]
    fn eval_op_examples() {
        let a = chain3();
        assert_eq!(a.op("meet").unwrap().eval(&[0, 2]).unwrap(), 0);
        assert_eq!(a.op("vee").unwrap().eval(&[1, 2]).unwrap(), 2);
        assert_eq!(a.op("vee").unwrap().eval(&[0, 2]).unwrap(), 0);
    }

    #[test]
    fn eval_term_examples() {
        let a = chain3();
        assert_eq!(a.eval_term(&Term::var(1), &[2]).unwrap(), 2);
        assert_eq!(a.eval_term(&Term::constant(1), &[0, 0, 0]).unwrap(), 1);
        let t = Term::apply("vee", vec![Term::var(1), Term::constant(2)]);
        assert_eq!(a.eval_term(&t, &[1]).unwrap(), 2);
        assert!(matches!(
            a.eval_term(&Term::apply("nope", vec![]), &[]),
            Err(Error::UnknownOp(_))
        ));
        assert!(matches!(
            a.eval_term(&Term::var(2), &[1]),
            Err(Error::VariableOutOfRange { index: 2, available: 1 })
        ));
    }

    #[test]
    fn table_of_term_examples() {
        let a = chain3();
        assert_eq!(a.table_of_term(&Term::var(1), 1).unwrap().entries(), &[0, 1, 2]);
        let meet = Term::apply("meet", vec![Term::var(1), Term::var(2)]);
        assert_eq!(
            a.table_of_term(&meet, 2).unwrap().entries(),
            &[0, 0, 0, 0, 1, 1, 0, 1, 2]
        );
        let vee = Term::apply("vee", vec![Term::var(1), Term::var(2)]);
        assert_eq!(
            a.table_of_term(&vee, 2).unwrap().entries(),
            &[0, 0, 0, 0, 1, 2, 0, 2, 2]
        );
        assert!(a.table_of_term(&meet, 1).is_err());
        let bad = Term::apply("meet", vec![Term::var(1)]);
        assert!(matches!(a.table_of_term(&bad, 1), Err(Error::Arity { .. })));
    }

    #[test]
    fn single_op_term_reproduces_table() {
        let a = chain3();
        for (name, table) in a.ops() {
            let t = Term::apply(name, (1..=table.arity()).map(Term::var).collect());
            assert_eq!(&a.table_of_term(&t, table.arity()).unwrap(), table);
        }
    }

    #[test]
    fn rejects_bad_algebras() {
        let t2 = OpTable::identity(2).unwrap();
        assert!(matches!(
            Algebra::new(3, 0, [("f".to_string(), t2)]),
            Err(Error::CarrierMismatch { .. })
        ));
        let id = OpTable::identity(3).unwrap();
        assert!(matches!(
            Algebra::new(3, 0, [("f".to_string(), id.clone()), ("f".to_string(), id.clone())]),
            Err(Error::DuplicateOp(_))
        ));
        assert!(Algebra::new(3, 3, []).is_err());
        assert!(Algebra::new(3, 0, [("x(".to_string(), id)]).is_err());
    }
}
