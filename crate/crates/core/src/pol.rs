//! Relation preservation and enumeration of `Pol_ρ` at a fixed arity.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::caps::{CapHit, Deadline, EnumerationCaps, SearchStatus};
use crate::error::{Error, Result};
use crate::kernel::{checked_power, tuple_index, Elem, OpTable};
use crate::relations::Relation;

/// A violating argument matrix: `arguments[r]` is the `r`-th point fed to the
/// operation (a row), each column is a tuple of the relation, and `image` is
/// the resulting row of values, which is not in the relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub arguments: Vec<Vec<Elem>>,
    pub image: Vec<Elem>,
}

impl Counterexample {
    /// The relation tuples the arguments were built from.
    pub fn columns(&self) -> Vec<Vec<Elem>> {
        let n = self.arguments.first().map_or(0, Vec::len);
        (0..n)
            .map(|k| self.arguments.iter().map(|row| row[k]).collect())
            .collect()
    }

    pub fn replay(&self, table: &OpTable) -> Result<Vec<Elem>> {
        self.arguments.iter().map(|row| table.eval(row)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatReport {
    pub compatible: bool,
    pub counterexample: Option<Counterexample>,
}

fn check_shape(table_q: usize, rel: &Relation) -> Result<()> {
    if table_q != rel.q() {
        return Err(Error::CarrierMismatch {
            left: table_q,
            right: rel.q(),
        });
    }
    Ok(())
}

/// Whether `table` preserves `rel`. The counterexample, if any, is the least
/// violating choice of columns, ordered with column 1 most significant and
/// each column ordered as a relation tuple.
pub fn is_compatible(table: &OpTable, rel: &Relation) -> Result<CompatReport> {
    check_shape(table.q(), rel)?;
    let q = table.q();
    let n = table.arity();
    let h = rel.arity();
    let tuples: Vec<Vec<Elem>> = rel.tuples().collect();
    if tuples.is_empty() {
        return Ok(CompatReport {
            compatible: true,
            counterexample: None,
        });
    }
    let mut choice = vec![0usize; n];
    let mut image = vec![0 as Elem; h];
    loop {
        for (r, slot) in image.iter_mut().enumerate() {
            let idx = choice
                .iter()
                .fold(0, |acc, &c| acc * q + tuples[c][r] as usize);
            *slot = table.at(idx);
        }
        if !rel.contains_index(tuple_index(&image, q)?) {
            let arguments = (0..h)
                .map(|r| choice.iter().map(|&c| tuples[c][r]).collect())
                .collect();
            return Ok(CompatReport {
                compatible: false,
                counterexample: Some(Counterexample {
                    arguments,
                    image,
                }),
            });
        }
        // Odometer, last column least significant.
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(CompatReport {
                    compatible: true,
                    counterexample: None,
                });
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < tuples.len() {
                break;
            }
            choice[k] = 0;
        }
    }
}

/// Tables found by [`enumerate_compatible`], in lexicographic order of entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    pub q: usize,
    pub arity: usize,
    pub tables: Vec<OpTable>,
    pub status: SearchStatus,
}

impl Enumeration {
    /// The size of `Pol_ρ^(n)`, only when the search ran to completion.
    pub fn count(&self) -> Option<usize> {
        self.status.is_complete().then_some(self.tables.len())
    }
}

/// All `n`-ary tables on `{0..q}` that preserve `rel`.
pub fn enumerate_compatible(
    q: usize,
    rel: &Relation,
    n: usize,
    caps: &EnumerationCaps,
) -> Result<Enumeration> {
    enumerate_preserving(q, std::slice::from_ref(rel), n, caps)
}

/// All `n`-ary tables on `{0..q}` that preserve every relation in `rels`.
pub fn enumerate_preserving(
    q: usize,
    rels: &[Relation],
    n: usize,
    caps: &EnumerationCaps,
) -> Result<Enumeration> {
    for rel in rels {
        check_shape(q, rel)?;
    }
    let plan = Plan::compile(q, rels, n)?;
    let deadline = caps.deadline();
    let limit = caps.max_results;
    let parts: Vec<(Vec<Vec<Elem>>, SearchStatus)> = (0..q as Elem)
        .into_par_iter()
        .map(|first| {
            let mut search = Search {
                plan: &plan,
                entries: vec![0; plan.len],
                found: Vec::new(),
                limit: limit + 1,
                deadline,
                ticks: 0,
                status: SearchStatus::Complete,
            };
            search.entries[0] = first;
            if search.satisfied(0) {
                search.descend(1);
            }
            (search.found, search.status)
        })
        .collect();
    let mut status = SearchStatus::Complete;
    let mut tables = Vec::new();
    for (found, s) in parts {
        status = status.merge(s);
        tables.extend(found.into_iter().map(|e| OpTable::from_raw(q, n, e)));
    }
    if tables.len() > limit {
        tables.truncate(limit);
        status = status.merge(SearchStatus::CapExceeded(CapHit::MaxResults));
    }
    Ok(Enumeration {
        q,
        arity: n,
        tables,
        status,
    })
}

/// Constraint instances grouped by the last table position they mention.
struct Plan<'a> {
    q: usize,
    len: usize,
    rels: &'a [Relation],
    by_last: Vec<Vec<(usize, Vec<usize>)>>,
}

const MAX_CONSTRAINTS: usize = 50_000_000;

impl<'a> Plan<'a> {
    fn compile(q: usize, rels: &'a [Relation], n: usize) -> Result<Self> {
        let len = checked_power(q, n)?;
        let mut by_last = vec![Vec::new(); len];
        let mut seen = HashSet::new();
        let mut total = 0usize;
        for (ri, rel) in rels.iter().enumerate() {
            let tuples: Vec<Vec<Elem>> = rel.tuples().collect();
            if tuples.is_empty() {
                continue;
            }
            let count = checked_power(tuples.len(), n)?;
            total = total.saturating_add(count);
            if total > MAX_CONSTRAINTS {
                return Err(Error::TooLarge(format!(
                    "more than {MAX_CONSTRAINTS} constraint instances"
                )));
            }
            let mut choice = vec![0usize; n];
            'outer: loop {
                let points: Vec<usize> = (0..rel.arity())
                    .map(|r| choice.iter().fold(0, |acc, &c| acc * q + tuples[c][r] as usize))
                    .collect();
                let last = *points.iter().max().unwrap();
                if seen.insert((ri, points.clone())) {
                    by_last[last].push((ri, points));
                }
                let mut k = n;
                loop {
                    if k == 0 {
                        break 'outer;
                    }
                    k -= 1;
                    choice[k] += 1;
                    if choice[k] < tuples.len() {
                        break;
                    }
                    choice[k] = 0;
                }
            }
        }
        Ok(Plan {
            q,
            len,
            rels,
            by_last,
        })
    }
}

struct Search<'p, 'a> {
    plan: &'p Plan<'a>,
    entries: Vec<Elem>,
    found: Vec<Vec<Elem>>,
    limit: usize,
    deadline: Deadline,
    ticks: u32,
    status: SearchStatus,
}

impl Search<'_, '_> {
    fn satisfied(&self, pos: usize) -> bool {
        let q = self.plan.q;
        self.plan.by_last[pos].iter().all(|(ri, points)| {
            let idx = points
                .iter()
                .fold(0, |acc, &p| acc * q + self.entries[p] as usize);
            self.plan.rels[*ri].contains_index(idx)
        })
    }

    fn descend(&mut self, pos: usize) {
        if !self.status.is_complete() {
            return;
        }
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks.is_multiple_of(4096) && self.deadline.expired() {
            self.status = SearchStatus::CapExceeded(CapHit::TimeBudget);
            return;
        }
        if pos == self.plan.len {
            self.found.push(self.entries.clone());
            if self.found.len() >= self.limit {
                self.status = SearchStatus::CapExceeded(CapHit::MaxResults);
            }
            return;
        }
        for v in 0..self.plan.q as Elem {
            self.entries[pos] = v;
            if self.satisfied(pos) {
                self.descend(pos + 1);
                if !self.status.is_complete() {
                    return;
                }
            }
        }
    }
}
