use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::table::Elem;
use crate::error::{Error, Result};

/// A polynomial expression: variables `x1, x2, ...`, constants, and
/// applications of named basic operations.
///
/// Equality is structural. The ordering is the canonical witness order used
/// throughout the crate: node count first, then variables before constants
/// before applications, then variable index, constant value, or operation
/// name followed by the arguments lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Term {
    /// 1-based variable index.
    Var(usize),
    Const(Elem),
    Apply(String, Vec<Term>),
}

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn constant(a: Elem) -> Term {
        Term::Const(a)
    }

    pub fn apply(op: impl Into<String>, args: Vec<Term>) -> Term {
        Term::Apply(op.into(), args)
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) => 1,
            Term::Apply(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// Largest variable index occurring in the term, 0 if none.
    pub fn max_var(&self) -> usize {
        match self {
            Term::Var(i) => *i,
            Term::Const(_) => 0,
            Term::Apply(_, args) => args.iter().map(Term::max_var).max().unwrap_or(0),
        }
    }

    /// Replaces every occurrence of `Var(var)` by `Const(value)`; other
    /// variables keep their indices.
    pub fn substitute_const(&self, var: usize, value: Elem) -> Term {
        match self {
            Term::Var(i) if *i == var => Term::Const(value),
            Term::Var(_) | Term::Const(_) => self.clone(),
            Term::Apply(op, args) => Term::Apply(
                op.clone(),
                args.iter().map(|t| t.substitute_const(var, value)).collect(),
            ),
        }
    }

    fn kind_rank(&self) -> u8 {
        match self {
            Term::Var(_) => 0,
            Term::Const(_) => 1,
            Term::Apply(..) => 2,
        }
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.kind_rank().cmp(&other.kind_rank()))
            .then_with(|| match (self, other) {
                (Term::Var(a), Term::Var(b)) => a.cmp(b),
                (Term::Const(a), Term::Const(b)) => a.cmp(b),
                (Term::Apply(f, xs), Term::Apply(g, ys)) => f.cmp(g).then_with(|| xs.cmp(ys)),
                _ => unreachable!("kind ranks differ"),
            })
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{i}"),
            Term::Const(a) => write!(f, "c{a}"),
            Term::Apply(op, args) => {
                write!(f, "{op}(")?;
                for (k, arg) in args.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{arg}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl FromStr for Term {
    type Err = Error;

    /// Parses the prefix notation produced by `Display`, e.g.
    /// `vee(meet(x1,c2),f20(x2))`. Whitespace is ignored. A bare `x<k>` is a
    /// variable and a bare `c<k>` a constant; anything followed by `(` is an
    /// operation application.
    fn from_str(s: &str) -> Result<Term> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let t = p.term()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(t)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn ident(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            if c.is_ascii_alphanumeric() || c == b'_' || c == b'.' {
                self.pos += 1;
            } else {
                break;
            }
        }
        if start == self.pos {
            return Err(self.err("expected identifier"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn term(&mut self) -> Result<Term> {
        let start = self.pos;
        let name = self.ident()?.to_string();
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let mut args = Vec::new();
            if self.peek() == Some(b')') {
                self.pos += 1;
                return Ok(Term::Apply(name, args));
            }
            loop {
                args.push(self.term()?);
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        return Ok(Term::Apply(name, args));
                    }
                    _ => return Err(self.err("expected `,` or `)`")),
                }
            }
        }
        let numeric = |rest: &str| rest.parse::<usize>().ok().filter(|_| !rest.is_empty());
        if let Some(i) = name.strip_prefix('x').and_then(numeric) {
            if i == 0 {
                return Err(Error::Parse {
                    pos: start,
                    msg: "variables are numbered from x1".into(),
                });
            }
            return Ok(Term::Var(i));
        }
        if let Some(a) = name.strip_prefix('c').and_then(numeric) {
            let a = Elem::try_from(a).map_err(|_| Error::Parse {
                pos: start,
                msg: format!("constant c{a} out of range"),
            })?;
            return Ok(Term::Const(a));
        }
        Err(Error::Parse {
            pos: start,
            msg: format!("`{name}` is neither a variable, a constant, nor an application"),
        })
    }
}
