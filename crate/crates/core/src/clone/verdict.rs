use serde::{Deserialize, Serialize};

use super::{generate_clone_level, CloneLevel};
use crate::caps::EnumerationCaps;
use crate::error::{Error, Result};
use crate::kernel::{Algebra, Elem, OpTable, Term};
use crate::pol::enumerate_preserving;
use crate::relations::Relation;

/// The witness proving `table ∈ P_n(A)`, if any.
///
/// `None` is only conclusive when `level.complete_fixpoint()` holds.
pub fn membership<'l>(level: &'l CloneLevel, table: &OpTable) -> Result<Option<&'l Term>> {
    if table.q() != level.q() {
        return Err(Error::CarrierMismatch {
            left: level.q(),
            right: table.q(),
        });
    }
    if table.arity() != level.arity() {
        return Err(Error::Arity {
            expected: level.arity(),
            got: table.arity(),
        });
    }
    Ok(level.witness(table))
}

/// Comparison of `Pol_ρ^(n)` with `P_n(A)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletenessVerdict {
    pub arity: usize,
    /// `Some(gap.is_empty())` when both sides were computed exactly, `None` otherwise.
    pub holds: Option<bool>,
    /// Compatible functions that are not polynomial, in table order.
    pub gap: Vec<OpTable>,
    /// Polynomial functions that are not compatible. Empty whenever every
    /// basic operation preserves the relations.
    pub non_compatible_polynomials: Vec<OpTable>,
    pub pol_count: usize,
    pub clone_count: usize,
    pub trusted: bool,
}

pub fn completeness_verdict(
    algebra: &Algebra,
    rel: &Relation,
    n: usize,
    caps: &EnumerationCaps,
) -> Result<CompletenessVerdict> {
    completeness_verdict_all(algebra, std::slice::from_ref(rel), n, caps)
}

/// As [`completeness_verdict`], against the intersection of `Pol` over `rels`.
pub fn completeness_verdict_all(
    algebra: &Algebra,
    rels: &[Relation],
    n: usize,
    caps: &EnumerationCaps,
) -> Result<CompletenessVerdict> {
    let level = generate_clone_level(algebra, n, caps)?;
    let pol = enumerate_preserving(algebra.q(), rels, n, caps)?;
    Ok(compare(&level, &pol.tables, pol.status.is_complete()))
}

pub(crate) fn compare(level: &CloneLevel, pol: &[OpTable], pol_complete: bool) -> CompletenessVerdict {
    let gap: Vec<OpTable> = pol.iter().filter(|t| !level.contains(t)).cloned().collect();
    let mut beyond: Vec<OpTable> = level
        .members()
        .iter()
        .filter(|t| pol.binary_search(t).is_err())
        .cloned()
        .collect();
    beyond.sort();
    let trusted = pol_complete && level.complete_fixpoint();
    CompletenessVerdict {
        arity: level.arity(),
        holds: trusted.then_some(gap.is_empty()),
        gap,
        non_compatible_polynomials: if pol_complete { beyond } else { Vec::new() },
        pol_count: pol.len(),
        clone_count: level.len(),
        trusted,
    }
}

/// Substitutes the constant `value` for `x_var`; remaining variables keep
/// their indices.
pub fn specialize(term: &Term, var: usize, value: Elem) -> Term {
    term.substitute_const(var, value)
}

/// The `(n-1)`-ary function obtained from `term` by fixing `x_var = value`
/// and dropping that coordinate.
pub fn specialized_table(
    algebra: &Algebra,
    term: &Term,
    n: usize,
    var: usize,
    value: Elem,
) -> Result<OpTable> {
    let fixed = specialize(term, var, value);
    algebra.table_of_term(&fixed, n)?.slice(var, value)
}
