//! Brute-force oracles. These deliberately share no code with the engines
//! beyond the table and relation containers.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use polyclone::relations::Relation;
use polyclone::{Elem, OpTable};

pub fn index(point: &[Elem], q: usize) -> usize {
    point.iter().fold(0, |acc, &x| acc * q + x as usize)
}

pub fn all_points(q: usize, n: usize) -> Vec<Vec<Elem>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..q as Elem).map(move |x| {
                    let mut p = p.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

pub fn all_tables(q: usize, n: usize) -> Vec<Vec<Elem>> {
    all_points(q, q.pow(n as u32))
}

/// Naive preservation check over every n-tuple of relation tuples.
pub fn preserves(entries: &[Elem], q: usize, n: usize, rel: &BTreeSet<Vec<Elem>>) -> bool {
    let tuples: Vec<&Vec<Elem>> = rel.iter().collect();
    let h = tuples.first().map_or(0, |t| t.len());
    let choices = all_points(tuples.len(), n);
    choices.iter().all(|choice| {
        let image: Vec<Elem> = (0..h)
            .map(|r| {
                let point: Vec<Elem> = choice.iter().map(|&c| tuples[c as usize][r]).collect();
                entries[index(&point, q)]
            })
            .collect();
        rel.contains(&image)
    })
}

pub fn central_set(q: usize) -> BTreeSet<Vec<Elem>> {
    let mut s = BTreeSet::new();
    for a in 0..q as Elem {
        for b in 0..q as Elem {
            if a == 0 || b == 0 || a == b {
                s.insert(vec![a, b]);
            }
        }
    }
    s
}

pub fn relation_set(rel: &Relation) -> BTreeSet<Vec<Elem>> {
    rel.tuples().collect()
}

pub fn pol_oracle(q: usize, n: usize, rel: &BTreeSet<Vec<Elem>>) -> Vec<Vec<Elem>> {
    all_tables(q, n)
        .into_iter()
        .filter(|t| preserves(t, q, n, rel))
        .collect()
}

/// Worklist-free closure: apply every op to every tuple of members until
/// nothing changes.
pub fn closure_oracle(
    q: usize,
    n: usize,
    ops: &[(usize, Vec<Elem>)],
    constants: bool,
) -> HashSet<Vec<Elem>> {
    let points = all_points(q, n);
    let mut members: HashSet<Vec<Elem>> = (0..n)
        .map(|i| points.iter().map(|p| p[i]).collect())
        .collect();
    if constants {
        for a in 0..q as Elem {
            members.insert(vec![a; points.len()]);
        }
    }
    loop {
        let current: Vec<Vec<Elem>> = members.iter().cloned().collect();
        let mut next = members.clone();
        for (m, table) in ops {
            for args in all_points(current.len(), *m) {
                let f: Vec<Elem> = (0..points.len())
                    .map(|k| {
                        let idx = args.iter().fold(0, |acc, &a| acc * q + current[a as usize][k] as usize);
                        table[idx]
                    })
                    .collect();
                next.insert(f);
            }
        }
        if next.len() == members.len() {
            return members;
        }
        members = next;
    }
}

/// Operations of the R-algebra over the chain, built without the library.
pub fn r_ops(q: usize) -> Vec<(usize, Vec<Elem>)> {
    let mut ops = vec![
        (2, all_points(q, 2).iter().map(|p| p[0].min(p[1])).collect()),
        (
            2,
            all_points(q, 2)
                .iter()
                .map(|p| if p[0] != 0 && p[1] != 0 { p[0].max(p[1]) } else { 0 })
                .collect(),
        ),
    ];
    for values in all_points(q, q - 1) {
        let mut t = vec![0];
        t.extend(values);
        ops.push((1, t));
    }
    ops
}

pub fn table(q: usize, n: usize, entries: Vec<Elem>) -> OpTable {
    OpTable::new(q, n, entries).unwrap()
}
