//! The algebra `R = (R; ∧, ⊻, 0, f̄_i)` that preserves the binary central
//! relation with center `{0}`, and term synthesis over it.
//!
//! `⊻` is the strict join: `x ⊻ y = x ∨ y` when both are nonzero and `0`
//! otherwise. The lifted unaries `f̄` extend a map `{1..q-1} → {0..q-1}` by
//! `f̄(0) = 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{checked_power, decode_index, Algebra, Elem, OpTable, Points, Term};

pub const MEET: &str = "meet";
pub const STRICT_JOIN: &str = "vee";
/// Zero-neutral join used only by the repaired decomposition mode.
pub const ZERO_NEUTRAL_JOIN: &str = "zjoin";
/// Most lifted unaries `build_r_algebra` will create.
pub const MAX_LIFTED_UNARIES: usize = 256;

/// A lattice on `{0..q}` with bottom `0`, validated on construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    q: usize,
    meet: OpTable,
    join: OpTable,
}

impl LatticeSpec {
    pub fn new(meet: OpTable, join: OpTable) -> Result<Self> {
        let q = meet.q();
        if join.q() != q {
            return Err(Error::CarrierMismatch {
                left: q,
                right: join.q(),
            });
        }
        if meet.arity() != 2 || join.arity() != 2 {
            return Err(Error::InvalidLattice("meet and join must be binary".into()));
        }
        for (name, op) in [("meet", &meet), ("join", &join)] {
            for x in 0..q as Elem {
                if op.at(x as usize * q + x as usize) != x {
                    return Err(Error::InvalidLattice(format!("{name} is not idempotent at {x}")));
                }
                for y in 0..q as Elem {
                    let xy = op.at(x as usize * q + y as usize);
                    if xy != op.at(y as usize * q + x as usize) {
                        return Err(Error::InvalidLattice(format!(
                            "{name} is not commutative at ({x},{y})"
                        )));
                    }
                    for z in 0..q as Elem {
                        let left = op.at(xy as usize * q + z as usize);
                        let yz = op.at(y as usize * q + z as usize);
                        if left != op.at(x as usize * q + yz as usize) {
                            return Err(Error::InvalidLattice(format!(
                                "{name} is not associative at ({x},{y},{z})"
                            )));
                        }
                    }
                }
            }
        }
        for x in 0..q {
            if meet.at(x) != 0 {
                return Err(Error::InvalidLattice(format!("meet(0,{x}) is not 0")));
            }
            for y in 0..q {
                let m = meet.at(x * q + y) as usize;
                let j = join.at(x * q + y) as usize;
                if join.at(x * q + m) as usize != x || meet.at(x * q + j) as usize != x {
                    return Err(Error::InvalidLattice(format!("absorption fails at ({x},{y})")));
                }
            }
        }
        Ok(LatticeSpec { q, meet, join })
    }

    /// The chain `0 < 1 < ... < q-1`.
    pub fn chain(q: usize) -> Result<Self> {
        let meet = OpTable::from_fn(q, 2, |p| p[0].min(p[1]))?;
        let join = OpTable::from_fn(q, 2, |p| p[0].max(p[1]))?;
        LatticeSpec::new(meet, join)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn meet(&self) -> &OpTable {
        &self.meet
    }

    pub fn join(&self) -> &OpTable {
        &self.join
    }

    /// `x ⊻ y`.
    pub fn strict_join(&self) -> OpTable {
        let q = self.q;
        let entries = Points::new(q, 2)
            .map(|p| {
                if p[0] != 0 && p[1] != 0 {
                    self.join.at(p[0] as usize * q + p[1] as usize)
                } else {
                    0
                }
            })
            .collect();
        OpTable::new(q, 2, entries).expect("strict join table is well formed")
    }
}

/// Which lifted unaries to include in an R-algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftedUnaries {
    /// One for every map `{1..q-1} → {0..q-1}`.
    All,
    /// The listed maps, each given as its values on `1..q-1`.
    Listed(Vec<Vec<Elem>>),
}

/// Operation name of a lifted unary: `f` followed by its values on `1..q-1`.
pub fn lift_name(q: usize, values: &[Elem]) -> String {
    let sep = if q > 10 { "." } else { "" };
    let digits: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("f{}", digits.join(sep))
}

/// `f̄`: `0 ↦ 0` and `x ↦ values[x-1]` for `x ≠ 0`.
pub fn lift_unary(q: usize, values: &[Elem]) -> Result<OpTable> {
    if values.len() + 1 != q {
        return Err(Error::Invalid(format!(
            "a lifted unary on {q} elements needs {} values, got {}",
            q.saturating_sub(1),
            values.len()
        )));
    }
    let mut entries = Vec::with_capacity(q);
    entries.push(0);
    entries.extend_from_slice(values);
    OpTable::new(q, 1, entries)
}

/// Builds `(R; ∧, ⊻, 0, f̄_i)` from a lattice. Lifted unaries are added in
/// lexicographic order of their value sequences.
pub fn build_r_algebra(spec: &LatticeSpec, unaries: &LiftedUnaries) -> Result<Algebra> {
    let q = spec.q();
    let maps: Vec<Vec<Elem>> = match unaries {
        LiftedUnaries::All => {
            let count = checked_power(q, q - 1).unwrap_or(usize::MAX);
            if count > MAX_LIFTED_UNARIES {
                return Err(Error::UnaryCap {
                    count,
                    cap: MAX_LIFTED_UNARIES,
                });
            }
            (0..count).map(|c| decode_index(c, q, q - 1)).collect()
        }
        LiftedUnaries::Listed(list) => {
            let mut list = list.clone();
            list.sort();
            list.dedup();
            list
        }
    };
    let mut ops = vec![
        (MEET.to_string(), spec.meet().clone()),
        (STRICT_JOIN.to_string(), spec.strict_join()),
    ];
    for values in maps {
        ops.push((lift_name(q, &values), lift_unary(q, &values)?));
    }
    Algebra::new(q, 0, ops)
}

fn require_op<'a>(algebra: &'a Algebra, name: &str, expected: &OpTable) -> Result<&'a OpTable> {
    match algebra.op(name) {
        Ok(t) if t == expected => Ok(t),
        _ => Err(Error::MissingLift(name.to_string())),
    }
}

/// A term for the function that is `value` at `point` and `0` elsewhere.
///
/// Built as `u_1(x1) ⊻ (u_2(x2) ⊻ ...)`, where `u_i` is the lifted unary
/// sending `point[i]` to `value` and every other nonzero element to `0`.
/// Points with a zero coordinate, and `value = 0`, give `c0`.
pub fn indicator_term(algebra: &Algebra, point: &[Elem], value: Elem) -> Result<Term> {
    let q = algebra.q();
    if point.is_empty() {
        return Err(Error::Invalid("indicator points need at least one coordinate".into()));
    }
    for &x in point.iter().chain(std::iter::once(&value)) {
        algebra.carrier().check(x as usize)?;
    }
    if value == 0 || point.contains(&0) {
        return Ok(Term::Const(0));
    }
    let strict = strict_join_of(algebra)?;
    let mut summands = Vec::with_capacity(point.len());
    for (i, &a) in point.iter().enumerate() {
        let values: Vec<Elem> = (1..q as Elem).map(|x| if x == a { value } else { 0 }).collect();
        let name = lift_name(q, &values);
        require_op(algebra, &name, &lift_unary(q, &values)?)?;
        summands.push(Term::apply(name, vec![Term::Var(i + 1)]));
    }
    if point.len() > 1 {
        require_op(algebra, STRICT_JOIN, &strict)?;
    }
    Ok(right_fold(STRICT_JOIN, summands))
}

fn strict_join_of(algebra: &Algebra) -> Result<OpTable> {
    algebra
        .op(STRICT_JOIN)
        .cloned()
        .map_err(|_| Error::MissingLift(STRICT_JOIN.to_string()))
}

fn right_fold(op: &str, mut terms: Vec<Term>) -> Term {
    let Some(mut acc) = terms.pop() else {
        return Term::Const(0);
    };
    while let Some(t) = terms.pop() {
        acc = Term::apply(op, vec![t, acc]);
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecompositionMode {
    /// Indicators combined with the algebra's own `⊻`.
    Literal,
    /// Indicators combined with a zero-neutral join that is not part of the
    /// algebra's signature. Diagnostic only.
    Repaired,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub point: Vec<Elem>,
    pub expected: Elem,
    pub got: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub input: OpTable,
    pub term: Term,
    pub mode: DecompositionMode,
    pub verified: bool,
    pub mismatches: Vec<Mismatch>,
}

/// `x zjoin y`: `0` is neutral, nonzero pairs use `⊻`.
pub fn zero_neutral_join(strict_join: &OpTable) -> OpTable {
    let q = strict_join.q();
    let entries = Points::new(q, 2)
        .map(|p| match (p[0], p[1]) {
            (0, y) => y,
            (x, 0) => x,
            (x, y) => strict_join.at(x as usize * q + y as usize),
        })
        .collect();
    OpTable::new(q, 2, entries).expect("zero-neutral join table is well formed")
}

/// Joins the indicators of `f` over every point of `{1..q-1}^n` where `f` is
/// nonzero, right-associated in tuple order, then checks the result against
/// `f` at every point.
pub fn decompose(algebra: &Algebra, f: &OpTable, mode: DecompositionMode) -> Result<DecompositionReport> {
    let q = algebra.q();
    if f.q() != q {
        return Err(Error::CarrierMismatch { left: q, right: f.q() });
    }
    let n = f.arity();
    if n == 0 {
        return Err(Error::Invalid("decomposition needs arity at least 1".into()));
    }
    let mut summands = Vec::new();
    for (idx, point) in f.points().enumerate() {
        let v = f.at(idx);
        if v != 0 && !point.contains(&0) {
            summands.push(indicator_term(algebra, &point, v)?);
        }
    }
    let (term, evaluator) = match mode {
        DecompositionMode::Literal => (right_fold(STRICT_JOIN, summands), algebra.clone()),
        DecompositionMode::Repaired => {
            let zjoin = zero_neutral_join(&strict_join_of(algebra)?);
            let evaluator = match algebra.op(ZERO_NEUTRAL_JOIN) {
                Ok(existing) if *existing == zjoin => algebra.clone(),
                Ok(_) => {
                    return Err(Error::Invalid(format!(
                        "`{ZERO_NEUTRAL_JOIN}` already names a different operation"
                    )))
                }
                Err(_) => algebra.with_op(ZERO_NEUTRAL_JOIN, zjoin)?,
            };
            (right_fold(ZERO_NEUTRAL_JOIN, summands), evaluator)
        }
    };
    let table = evaluator.table_of_term(&term, n)?;
    let mismatches: Vec<Mismatch> = f
        .points()
        .enumerate()
        .filter(|(i, _)| table.at(*i) != f.at(*i))
        .map(|(i, point)| Mismatch {
            point,
            expected: f.at(i),
            got: table.at(i),
        })
        .collect();
    Ok(DecompositionReport {
        input: f.clone(),
        term,
        mode,
        verified: mismatches.is_empty(),
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r3() -> Algebra {
        build_r_algebra(&LatticeSpec::chain(3).unwrap(), &LiftedUnaries::All).unwrap()
    }

    #[test]
    fn strict_join_table() {
        let spec = LatticeSpec::chain(3).unwrap();
        assert_eq!(spec.strict_join().entries(), &[0, 0, 0, 0, 1, 2, 0, 2, 2]);
    }

    #[test]
    fn r3_has_nine_lifts() {
        let a = r3();
        let unary: Vec<_> = a.ops().filter(|(_, t)| t.arity() == 1).collect();
        assert_eq!(unary.len(), 9);
        assert!(unary.iter().all(|(_, t)| t.at(0) == 0));
        assert_eq!(a.op("f20").unwrap().entries(), &[0, 2, 0]);
    }

    #[test]
    fn lift_examples() {
        assert_eq!(lift_unary(3, &[2, 0]).unwrap().entries(), &[0, 2, 0]);
        assert_eq!(lift_unary(3, &[1, 2]).unwrap(), OpTable::identity(3).unwrap());
        assert!(lift_unary(3, &[1]).is_err());
        assert!(lift_unary(3, &[1, 3]).is_err());
        assert_eq!(lift_name(12, &[1, 11]), "f1.11");
    }

    #[test]
    fn unary_cap() {
        let spec = LatticeSpec::chain(5).unwrap();
        assert!(matches!(
            build_r_algebra(&spec, &LiftedUnaries::All),
            Err(Error::UnaryCap { count: 625, .. })
        ));
        let listed = build_r_algebra(&spec, &LiftedUnaries::Listed(vec![vec![1, 2, 3, 4]])).unwrap();
        assert_eq!(listed.op_count(), 3);
    }

    #[test]
    fn lattice_validation() {
        let min = OpTable::from_fn(3, 2, |p| p[0].min(p[1])).unwrap();
        let max = OpTable::from_fn(3, 2, |p| p[0].max(p[1])).unwrap();
        assert!(LatticeSpec::new(min.clone(), max.clone()).is_ok());
        // Swapped: bottom would be 2.
        assert!(matches!(LatticeSpec::new(max, min.clone()), Err(Error::InvalidLattice(_))));
        let proj = OpTable::projection(3, 2, 1).unwrap();
        assert!(LatticeSpec::new(min, proj).is_err());
    }

    #[test]
    fn diamond_lattice() {
        // 0 < 1, 2 < 3 with 1, 2 incomparable.
        let meet = OpTable::from_fn(4, 2, |p| p[0] & p[1]).unwrap();
        let join = OpTable::from_fn(4, 2, |p| p[0] | p[1]).unwrap();
        let spec = LatticeSpec::new(meet, join).unwrap();
        assert_eq!(spec.strict_join().eval(&[1, 2]).unwrap(), 3);
        assert_eq!(spec.strict_join().eval(&[0, 2]).unwrap(), 0);
    }

    #[test]
    fn indicator_examples() {
        let a = r3();
        let t = indicator_term(&a, &[2], 1).unwrap();
        assert_eq!(a.table_of_term(&t, 1).unwrap().entries(), &[0, 0, 1]);
        let t = indicator_term(&a, &[1, 2], 2).unwrap();
        assert_eq!(t.to_string(), "vee(f20(x1),f02(x2))");
        let table = a.table_of_term(&t, 2).unwrap();
        assert_eq!(table.entries(), &[0, 0, 0, 0, 0, 2, 0, 0, 0]);
        for v in 0..3 {
            assert_eq!(indicator_term(&a, &[0, 2], v).unwrap(), Term::Const(0));
        }
    }

    #[test]
    fn indicator_requires_lifts() {
        let spec = LatticeSpec::chain(3).unwrap();
        let bare = build_r_algebra(&spec, &LiftedUnaries::Listed(vec![])).unwrap();
        assert!(matches!(indicator_term(&bare, &[1], 2), Err(Error::MissingLift(_))));
    }

    #[test]
    fn decomposition_examples() {
        let a = r3();
        let single = OpTable::from_fn(3, 2, |p| if p == [1, 2] { 2 } else { 0 }).unwrap();
        assert!(decompose(&a, &single, DecompositionMode::Literal).unwrap().verified);

        let double = OpTable::from_fn(3, 2, |p| match p {
            [1, 1] => 1,
            [2, 2] => 2,
            _ => 0,
        })
        .unwrap();
        let r = decompose(&a, &double, DecompositionMode::Literal).unwrap();
        assert!(!r.verified);
        let points: Vec<_> = r.mismatches.iter().map(|m| m.point.clone()).collect();
        assert_eq!(points, vec![vec![1, 1], vec![2, 2]]);
        assert!(r.mismatches.iter().all(|m| m.got == 0));
        let r = decompose(&a, &double, DecompositionMode::Repaired).unwrap();
        assert!(r.verified);
        assert!(r.term.to_string().starts_with("zjoin("));

        let zero = OpTable::constant(3, 2, 0).unwrap();
        let r = decompose(&a, &zero, DecompositionMode::Literal).unwrap();
        assert_eq!(r.term, Term::Const(0));
        assert!(r.verified);
    }

    #[test]
    fn strict_join_laws() {
        for q in 1..=4 {
            let j = LatticeSpec::chain(q).unwrap().strict_join();
            for p in Points::new(q, 3) {
                let (x, y, z) = (p[0], p[1], p[2]);
                let op = |a: Elem, b: Elem| j.eval(&[a, b]).unwrap();
                assert_eq!(op(x, x), x);
                assert_eq!(op(x, y), op(y, x));
                assert_eq!(op(op(x, y), z), op(x, op(y, z)));
            }
        }
    }
}
