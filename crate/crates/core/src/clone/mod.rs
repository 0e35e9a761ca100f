//! Closure engines for polynomial clones and term clones, with witnesses.
//!
//! A level is built one term size at a time. Every table is first reached at
//! the node count of its smallest term, and because a smallest term can
//! always be rebuilt from smallest witnesses of its arguments, only
//! witnesses ever need to be combined. Each pair of argument witnesses is
//! therefore visited exactly once per operation.

mod identities;
mod probe;
pub(crate) mod verdict;

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::caps::{CapHit, Deadline, EnumerationCaps, SearchStatus};
use crate::error::{Error, Result};
use crate::kernel::{checked_power, Algebra, Elem, OpTable, Term};

pub use identities::{check_identities, pattern_axioms, IdentityEquation, IdentityFailure, IdentityVerdict};
pub use probe::{
    maximality_probe, prepolynomial_probe, MaximalityEvidence, PrepolyFailure, PrepolyReport,
};
pub use verdict::{
    completeness_verdict, completeness_verdict_all, membership, specialize, specialized_table,
    CompletenessVerdict,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureMode {
    /// Projections and all constants as seeds: polynomial functions.
    Polynomial,
    /// Projections only: term functions, the clone generated by the operations.
    Term,
}

/// The `n`-ary part of a polynomial clone (or term clone), every member
/// carrying its canonical witness.
///
/// Members are stored in canonical witness order: smaller terms first, ties
/// broken by [`Term`]'s ordering.
#[derive(Clone, Debug)]
pub struct CloneLevel {
    q: usize,
    arity: usize,
    mode: ClosureMode,
    members: Vec<OpTable>,
    witnesses: Vec<Term>,
    lookup: HashMap<Vec<Elem>, usize>,
    status: SearchStatus,
}

impl CloneLevel {
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn mode(&self) -> ClosureMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// True iff the closure ran to its fixpoint; only then is absence of a
    /// table a proof that it is not in the clone.
    pub fn complete_fixpoint(&self) -> bool {
        self.status.is_complete()
    }

    pub fn status(&self) -> SearchStatus {
        self.status
    }

    pub fn members(&self) -> &[OpTable] {
        &self.members
    }

    pub fn witnesses(&self) -> &[Term] {
        &self.witnesses
    }

    pub fn iter(&self) -> impl Iterator<Item = (&OpTable, &Term)> {
        self.members.iter().zip(&self.witnesses)
    }

    pub fn contains(&self, table: &OpTable) -> bool {
        table.q() == self.q && table.arity() == self.arity && self.lookup.contains_key(table.entries())
    }

    pub fn witness(&self, table: &OpTable) -> Option<&Term> {
        if table.q() != self.q || table.arity() != self.arity {
            return None;
        }
        self.lookup.get(table.entries()).map(|&i| &self.witnesses[i])
    }

    /// Members in lexicographic table order.
    pub fn sorted_members(&self) -> Vec<&OpTable> {
        let mut v: Vec<_> = self.members.iter().collect();
        v.sort();
        v
    }
}

/// `P_n(A)`: all `n`-ary polynomial functions of `algebra`.
pub fn generate_clone_level(algebra: &Algebra, n: usize, caps: &EnumerationCaps) -> Result<CloneLevel> {
    generate_level(algebra, n, ClosureMode::Polynomial, caps)
}

/// The `n`-ary term functions of `algebra` (no constants).
pub fn generate_term_level(algebra: &Algebra, n: usize, caps: &EnumerationCaps) -> Result<CloneLevel> {
    generate_level(algebra, n, ClosureMode::Term, caps)
}

/// Candidate for a new table: operation index and argument member ids.
type Key = (usize, Vec<usize>);

pub fn generate_level(
    algebra: &Algebra,
    n: usize,
    mode: ClosureMode,
    caps: &EnumerationCaps,
) -> Result<CloneLevel> {
    if n == 0 {
        return Err(Error::Invalid("clone levels need arity at least 1".into()));
    }
    let q = algebra.q();
    checked_power(q, n)?;
    let deadline = caps.deadline();
    let ops: Vec<(&str, &OpTable)> = algebra.ops().collect();
    let max_arity = ops.iter().map(|(_, t)| t.arity()).max().unwrap_or(0);

    let mut level = CloneLevel {
        q,
        arity: n,
        mode,
        members: Vec::new(),
        witnesses: Vec::new(),
        lookup: HashMap::new(),
        status: SearchStatus::Complete,
    };
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(), Vec::new()];

    let mut seeds: Vec<(OpTable, Term)> = Vec::new();
    for i in 1..=n {
        seeds.push((OpTable::projection(q, n, i)?, Term::Var(i)));
    }
    if mode == ClosureMode::Polynomial {
        for a in algebra.carrier().elements() {
            seeds.push((OpTable::constant(q, n, a)?, Term::Const(a)));
        }
    }
    for (name, table) in &ops {
        if table.arity() == 0 {
            seeds.push((OpTable::constant(q, n, table.at(0))?, Term::apply(*name, vec![])));
        }
    }
    for (table, term) in seeds {
        if !level.lookup.contains_key(table.entries()) {
            let id = level.push(table, term);
            buckets[1].push(id);
        }
    }

    let mut size = 1usize;
    loop {
        if level.members.len() > caps.max_results {
            level.truncate(caps.max_results);
            level.status = SearchStatus::CapExceeded(CapHit::MaxResults);
            break;
        }
        let largest = buckets.iter().rposition(|b| !b.is_empty()).unwrap_or(0);
        size += 1;
        if max_arity == 0 || size > 1 + max_arity * largest {
            break;
        }
        if deadline.expired() {
            level.status = SearchStatus::CapExceeded(CapHit::TimeBudget);
            break;
        }
        let (found, timed_out) = level.expand(&ops, &buckets, size, deadline);
        if timed_out {
            level.status = SearchStatus::CapExceeded(CapHit::TimeBudget);
            break;
        }
        let mut found: Vec<(Vec<Elem>, Key)> = found.into_iter().collect();
        found.sort_by(|a, b| a.1.cmp(&b.1));
        let mut bucket = Vec::with_capacity(found.len());
        for (entries, (op, args)) in found {
            let term = Term::Apply(
                ops[op].0.to_string(),
                args.iter().map(|&a| level.witnesses[a].clone()).collect(),
            );
            bucket.push(level.push(OpTable::from_raw(q, n, entries), term));
        }
        buckets.push(bucket);
    }
    Ok(level)
}

/// One unit of closure work: an operation, a split of the argument sizes,
/// and a slice of the first argument's bucket.
struct Job<'b> {
    op: usize,
    first: &'b [usize],
    rest: Vec<&'b [usize]>,
}

impl CloneLevel {
    fn push(&mut self, table: OpTable, term: Term) -> usize {
        let id = self.members.len();
        self.lookup.insert(table.entries().to_vec(), id);
        self.members.push(table);
        self.witnesses.push(term);
        id
    }

    fn truncate(&mut self, len: usize) {
        for t in &self.members[len..] {
            self.lookup.remove(t.entries());
        }
        self.members.truncate(len);
        self.witnesses.truncate(len);
    }

    /// All tables first reachable with a term of exactly `size` nodes, each
    /// with its least candidate key.
    fn expand(
        &self,
        ops: &[(&str, &OpTable)],
        buckets: &[Vec<usize>],
        size: usize,
        deadline: Deadline,
    ) -> (HashMap<Vec<Elem>, Key>, bool) {
        const CHUNK: usize = 32;
        let mut jobs = Vec::new();
        for (op, (_, table)) in ops.iter().enumerate() {
            let m = table.arity();
            if m == 0 {
                continue;
            }
            for parts in compositions(size - 1, m, buckets.len() - 1) {
                if parts.iter().any(|&p| buckets[p].is_empty()) {
                    continue;
                }
                let rest: Vec<&[usize]> = parts[1..].iter().map(|&p| buckets[p].as_slice()).collect();
                for first in buckets[parts[0]].chunks(CHUNK) {
                    jobs.push(Job {
                        op,
                        first,
                        rest: rest.clone(),
                    });
                }
            }
        }
        jobs.into_par_iter()
            .map(|job| self.run_job(ops, &job, deadline))
            .reduce(
                || (HashMap::new(), false),
                |(mut a, ta), (b, tb)| {
                    for (entries, key) in b {
                        match a.get_mut(&entries) {
                            Some(existing) if *existing <= key => {}
                            Some(existing) => *existing = key,
                            None => {
                                a.insert(entries, key);
                            }
                        }
                    }
                    (a, ta || tb)
                },
            )
    }

    fn run_job(
        &self,
        ops: &[(&str, &OpTable)],
        job: &Job<'_>,
        deadline: Deadline,
    ) -> (HashMap<Vec<Elem>, Key>, bool) {
        let table = ops[job.op].1;
        let mut out: HashMap<Vec<Elem>, Key> = HashMap::new();
        let mut args = vec![0usize; 1 + job.rest.len()];
        let mut cursor = vec![0usize; job.rest.len()];
        let mut ticks = 0u32;
        for &first in job.first {
            args[0] = first;
            cursor.iter_mut().for_each(|c| *c = 0);
            loop {
                for (k, &c) in cursor.iter().enumerate() {
                    args[k + 1] = job.rest[k][c];
                }
                let cols: Vec<&[Elem]> = args.iter().map(|&a| self.members[a].entries()).collect();
                let result = table.superpose(&cols);
                if !self.lookup.contains_key(&result) {
                    // Arguments are visited in increasing order, so the
                    // first candidate for a table wins within a job.
                    out.entry(result).or_insert_with(|| (job.op, args.clone()));
                }
                ticks = ticks.wrapping_add(1);
                if ticks.is_multiple_of(8192) && deadline.expired() {
                    return (out, true);
                }
                let mut k = cursor.len();
                let done = loop {
                    if k == 0 {
                        break true;
                    }
                    k -= 1;
                    cursor[k] += 1;
                    if cursor[k] < job.rest[k].len() {
                        break false;
                    }
                    cursor[k] = 0;
                };
                if done {
                    break;
                }
            }
        }
        (out, false)
    }
}

/// Ordered ways of writing `total` as `parts` positive summands, each at most `max`.
fn compositions(total: usize, parts: usize, max: usize) -> Vec<Vec<usize>> {
    fn go(total: usize, parts: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let lo = 1;
        let hi = max.min(total.saturating_sub(parts - 1));
        for p in lo..=hi {
            if total - p > (parts - 1) * max {
                continue;
            }
            prefix.push(p);
            go(total - p, parts - 1, max, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(total, parts, max, &mut Vec::with_capacity(parts), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_enumerate_all() {
        assert_eq!(compositions(3, 2, 3), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(compositions(4, 2, 2), vec![vec![2, 2]]);
        assert!(compositions(1, 2, 5).is_empty());
        assert_eq!(compositions(2, 1, 5), vec![vec![2]]);
    }

    fn left_projection(q: usize) -> Algebra {
        let o = OpTable::projection(q, 2, 1).unwrap();
        Algebra::new(q, 0, [("o".to_string(), o)]).unwrap()
    }

    #[test]
    fn pattern_algebra_binary_level() {
        let level = generate_clone_level(&left_projection(3), 2, &EnumerationCaps::default()).unwrap();
        assert!(level.complete_fixpoint());
        assert_eq!(level.len(), 5);
        let texts: Vec<String> = level.witnesses().iter().map(Term::to_string).collect();
        assert_eq!(texts, ["x1", "x2", "c0", "c1", "c2"]);
    }

    #[test]
    fn rejects_nullary_levels() {
        assert!(generate_clone_level(&left_projection(2), 0, &EnumerationCaps::default()).is_err());
    }

    #[test]
    fn term_mode_has_no_constants() {
        let level = generate_term_level(&left_projection(3), 2, &EnumerationCaps::default()).unwrap();
        assert_eq!(level.len(), 2);
        assert_eq!(level.mode(), ClosureMode::Term);
    }

    #[test]
    fn witnesses_are_minimal_and_sorted() {
        let meet = OpTable::from_fn(3, 2, |p| p[0].min(p[1])).unwrap();
        let alg = Algebra::new(3, 0, [("meet".to_string(), meet)]).unwrap();
        let level = generate_clone_level(&alg, 2, &EnumerationCaps::default()).unwrap();
        assert!(level.witnesses().windows(2).all(|w| w[0] < w[1]));
        let m = alg.table_of_term(&"meet(x1,x2)".parse().unwrap(), 2).unwrap();
        assert_eq!(level.witness(&m).unwrap().to_string(), "meet(x1,x2)");
        let m1 = alg.table_of_term(&"meet(x1,c1)".parse().unwrap(), 2).unwrap();
        assert_eq!(level.witness(&m1).unwrap().to_string(), "meet(x1,c1)");
    }

    #[test]
    fn cap_truncates_and_flags() {
        let meet = OpTable::from_fn(3, 2, |p| p[0].min(p[1])).unwrap();
        let alg = Algebra::new(3, 0, [("meet".to_string(), meet)]).unwrap();
        let caps = EnumerationCaps::default().with_max_results(4);
        let level = generate_clone_level(&alg, 2, &caps).unwrap();
        assert!(!level.complete_fixpoint());
        assert_eq!(level.len(), 4);
        assert_eq!(level.status(), SearchStatus::CapExceeded(CapHit::MaxResults));
    }
}
