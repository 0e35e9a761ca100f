//! Bounded probes for maximality and prepolynomial completeness. These give
//! evidence at fixed arities; they never prove the unbounded statements.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{generate_clone_level, generate_term_level};
use crate::caps::EnumerationCaps;
use crate::error::{Error, Result};
use crate::kernel::{checked_power, decode_index, Algebra, OpTable};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalityEvidence {
    pub probe_arity: usize,
    /// `Some(reached == target)` when the closure reached its fixpoint.
    pub generates_all: Option<bool>,
    pub reached: usize,
    pub target: usize,
    pub trusted: bool,
}

fn all_functions_count(q: usize, k: usize) -> Result<usize> {
    checked_power(q, checked_power(q, k)?)
}

/// Whether the clone generated by `generators ∪ {f}` contains every `k`-ary
/// function. Constants are not added; include them among the generators.
pub fn maximality_probe(
    generators: &[OpTable],
    f: &OpTable,
    k: usize,
    caps: &EnumerationCaps,
) -> Result<MaximalityEvidence> {
    let q = f.q();
    let ops = generators
        .iter()
        .enumerate()
        .map(|(i, g)| (format!("g{i}"), g.clone()))
        .chain(std::iter::once(("f".to_string(), f.clone())));
    let algebra = Algebra::new(q, 0, ops)?;
    let target = all_functions_count(q, k)?;
    let level = generate_term_level(&algebra, k, caps)?;
    let trusted = level.complete_fixpoint();
    Ok(MaximalityEvidence {
        probe_arity: k,
        generates_all: trusted.then_some(level.len() == target),
        reached: level.len(),
        target,
        trusted,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrepolyFailure {
    /// The non-polynomial operation that was adjoined.
    pub adjoined: OpTable,
    /// Size of the probe level after adjoining it.
    pub reached: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrepolyReport {
    pub missing_arity_cap: usize,
    pub probe_arity: usize,
    pub target: usize,
    /// Number of non-polynomial operations tried, per arity `1..=cap`.
    pub missing_per_arity: Vec<usize>,
    pub failures: Vec<PrepolyFailure>,
    /// `Some(failures.is_empty())` when every closure ran to its fixpoint.
    pub passes: Option<bool>,
    pub trusted: bool,
}

/// For each operation `g` of arity `1..=missing_arity_cap` outside `P(A)`,
/// checks whether adjoining `g` makes every `k`-ary function polynomial.
pub fn prepolynomial_probe(
    algebra: &Algebra,
    missing_arity_cap: usize,
    k: usize,
    caps: &EnumerationCaps,
) -> Result<PrepolyReport> {
    let q = algebra.q();
    let target = all_functions_count(q, k)?;
    let name = (0..)
        .map(|i| format!("adjoined{i}"))
        .find(|n| algebra.op(n).is_err())
        .unwrap();
    let mut trusted = true;
    let mut missing_per_arity = Vec::new();
    let mut failures = Vec::new();
    for m in 1..=missing_arity_cap {
        let level = generate_clone_level(algebra, m, caps)?;
        trusted &= level.complete_fixpoint();
        let total = all_functions_count(q, m)?;
        if total > caps.max_results {
            return Err(Error::TooLarge(format!(
                "{total} operations of arity {m} exceed the result cap"
            )));
        }
        let len = checked_power(q, m)?;
        let missing: Vec<OpTable> = (0..total)
            .map(|code| OpTable::from_raw(q, m, decode_index(code, q, len)))
            .filter(|t| !level.contains(t))
            .collect();
        missing_per_arity.push(missing.len());
        let outcomes = missing
            .into_par_iter()
            .map(|g| {
                let extended = algebra.with_op(name.clone(), g.clone())?;
                let probe = generate_clone_level(&extended, k, caps)?;
                Ok((g, probe.len(), probe.complete_fixpoint()))
            })
            .collect::<Result<Vec<_>>>()?;
        for (g, reached, complete) in outcomes {
            trusted &= complete;
            if reached < target {
                failures.push(PrepolyFailure { adjoined: g, reached });
            }
        }
    }
    Ok(PrepolyReport {
        missing_arity_cap,
        probe_arity: k,
        target,
        missing_per_arity,
        passes: trusted.then_some(failures.is_empty()),
        failures,
        trusted,
    })
}
