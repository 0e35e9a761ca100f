//! Relations on finite carriers: minimal central relations, their
//! recognition, and the diagonal relations.

use std::collections::BTreeSet;

use bitvec::vec::BitVec;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{decode_index, tuple_index, Carrier, Elem, Points};

/// An `h`-ary relation with constant-time membership.
///
/// Tuples are kept sorted in tuple-index order, which is also the
/// lexicographic order of the tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawRelation", into = "RawRelation")]
pub struct Relation {
    q: usize,
    arity: usize,
    members: BitVec,
    indices: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawRelation {
    q: usize,
    arity: usize,
    tuples: Vec<Vec<usize>>,
}

impl TryFrom<RawRelation> for Relation {
    type Error = Error;
    fn try_from(raw: RawRelation) -> Result<Self> {
        let carrier = Carrier::new(raw.q)?;
        let mut tuples = Vec::with_capacity(raw.tuples.len());
        for (k, t) in raw.tuples.into_iter().enumerate() {
            if t.len() != raw.arity {
                return Err(Error::Invalid(format!(
                    "tuples[{k}] has length {}, expected arity {}",
                    t.len(),
                    raw.arity
                )));
            }
            let t = t
                .into_iter()
                .map(|e| carrier.check(e))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::Invalid(format!("tuples[{k}]: {e}")))?;
            tuples.push(t);
        }
        Relation::from_tuples(raw.q, raw.arity, tuples)
    }
}

impl From<Relation> for RawRelation {
    fn from(rel: Relation) -> Self {
        RawRelation {
            q: rel.q,
            arity: rel.arity,
            tuples: rel
                .tuples()
                .map(|t| t.into_iter().map(usize::from).collect())
                .collect(),
        }
    }
}

impl Relation {
    pub fn from_tuples(
        q: usize,
        arity: usize,
        tuples: impl IntoIterator<Item = Vec<Elem>>,
    ) -> Result<Self> {
        Relation::from_predicate_checked(q, arity, |_| false).and_then(|mut rel| {
            for t in tuples {
                if t.len() != arity {
                    return Err(Error::Arity {
                        expected: arity,
                        got: t.len(),
                    });
                }
                let i = tuple_index(&t, q)?;
                rel.members.set(i, true);
            }
            rel.indices = rel.members.iter_ones().collect();
            Ok(rel)
        })
    }

    fn from_predicate_checked(
        q: usize,
        arity: usize,
        mut pred: impl FnMut(&[Elem]) -> bool,
    ) -> Result<Self> {
        Carrier::new(q)?;
        if arity == 0 {
            return Err(Error::Invalid("relations have arity at least 1".into()));
        }
        let total = crate::kernel::checked_power(q, arity)?;
        let members: BitVec = Points::new(q, arity).map(|p| pred(&p)).collect();
        debug_assert_eq!(members.len(), total);
        let indices = members.iter_ones().collect();
        Ok(Relation {
            q,
            arity,
            members,
            indices,
        })
    }

    /// `{t ∈ {0..q}^h : pred(t)}`.
    pub fn from_predicate(q: usize, arity: usize, pred: impl FnMut(&[Elem]) -> bool) -> Result<Self> {
        Relation::from_predicate_checked(q, arity, pred)
    }

    pub fn full(q: usize, arity: usize) -> Result<Self> {
        Relation::from_predicate(q, arity, |_| true)
    }

    /// `{(a, ..., a)}`; for arity 2 the equality relation.
    pub fn equality(q: usize, arity: usize) -> Result<Self> {
        Relation::from_predicate(q, arity, |t| t.iter().all(|&x| x == t[0]))
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.indices.len() == self.members.len()
    }

    #[inline]
    pub fn contains_index(&self, index: usize) -> bool {
        self.members[index]
    }

    pub fn contains(&self, tuple: &[Elem]) -> bool {
        tuple.len() == self.arity
            && tuple_index(tuple, self.q).is_ok_and(|i| self.members[i])
    }

    /// Member tuple indices, ascending.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn tuples(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        self.indices
            .iter()
            .map(|&i| decode_index(i, self.q, self.arity))
    }
}

/// The smallest `h`-ary relation containing every tuple with a coordinate in
/// `center` and every tuple with two equal coordinates.
///
/// For `h = 2` and center `{0}` this is `{(r,0)} ∪ {(0,s)} ∪ {(t,t)}`.
pub fn build_central_minimal(q: usize, arity: usize, center: &BTreeSet<Elem>) -> Result<Relation> {
    let carrier = Carrier::new(q)?;
    for &z in center {
        carrier
            .check(z as usize)
            .map_err(|e| Error::InvalidCenter(e.to_string()))?;
    }
    if center.is_empty() {
        return Err(Error::InvalidCenter("center must be nonempty".into()));
    }
    if center.len() == q {
        return Err(Error::InvalidCenter(
            "center must be a proper subset of the carrier".into(),
        ));
    }
    Relation::from_predicate(q, arity, |t| {
        t.iter().any(|x| center.contains(x)) || has_repeat(t)
    })
}

fn has_repeat(t: &[Elem]) -> bool {
    t.iter()
        .enumerate()
        .any(|(i, x)| t[i + 1..].contains(x))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transitivity {
    Transitive,
    /// `(a,b), (b,c) ∈ ρ` but `(a,c) ∉ ρ`; the least such pair in tuple order.
    Counterexample([[Elem; 2]; 2]),
    /// Only defined for binary relations.
    NotApplicable,
}

/// Structural properties of a relation, computed exhaustively.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationProfile {
    pub reflexive: bool,
    /// Every tuple with two equal coordinates belongs to the relation.
    pub totally_reflexive: bool,
    pub symmetric: bool,
    pub transitivity: Transitivity,
    /// The relation is not the full `A^h`.
    pub proper: bool,
    /// Elements `a` such that every tuple containing `a` is in the relation.
    pub centers: BTreeSet<Elem>,
    pub is_central: bool,
}

impl RelationProfile {
    pub fn transitive(&self) -> Option<bool> {
        match self.transitivity {
            Transitivity::Transitive => Some(true),
            Transitivity::Counterexample(_) => Some(false),
            Transitivity::NotApplicable => None,
        }
    }
}

pub fn classify(rel: &Relation) -> RelationProfile {
    let q = rel.q();
    let h = rel.arity();
    let reflexive = (0..q).all(|a| rel.contains(&vec![a as Elem; h]));
    let totally_reflexive = rel_points(rel).all(|t| !has_repeat(&t) || rel.contains(&t));
    // Adjacent transpositions generate the symmetric group.
    let symmetric = rel.tuples().all(|t| {
        (0..h.saturating_sub(1)).all(|k| {
            let mut s = t.clone();
            s.swap(k, k + 1);
            rel.contains(&s)
        })
    });
    let transitivity = if h == 2 {
        transitivity(rel)
    } else {
        Transitivity::NotApplicable
    };
    let proper = !rel.is_full();
    let centers: BTreeSet<Elem> = (0..q as Elem)
        .filter(|&a| rel_points(rel).all(|t| !t.contains(&a) || rel.contains(&t)))
        .collect();
    let is_central = proper && totally_reflexive && symmetric && !centers.is_empty();
    RelationProfile {
        reflexive,
        totally_reflexive,
        symmetric,
        transitivity,
        proper,
        centers,
        is_central,
    }
}

fn rel_points(rel: &Relation) -> Points {
    Points::new(rel.q(), rel.arity())
}

fn transitivity(rel: &Relation) -> Transitivity {
    let q = rel.q() as Elem;
    for first in rel.tuples() {
        let (a, b) = (first[0], first[1]);
        for c in 0..q {
            if rel.contains(&[b, c]) && !rel.contains(&[a, c]) {
                return Transitivity::Counterexample([[a, b], [b, c]]);
            }
        }
    }
    Transitivity::Transitive
}

/// Set partitions of `{0..h}` as restricted growth strings, in lexicographic order.
pub fn set_partitions(h: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, max: usize, h: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == h {
            out.push(prefix.clone());
            return;
        }
        let limit = if prefix.is_empty() { 0 } else { max + 1 };
        for b in 0..=limit {
            prefix.push(b);
            go(prefix, max.max(b), h, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(h), 0, h, &mut out);
    out
}

/// One relation per partition of the coordinate set: tuples whose
/// coordinates agree within every block.
pub fn diagonal_relations(q: usize, arity: usize) -> Result<Vec<Relation>> {
    set_partitions(arity)
        .into_iter()
        .map(|blocks| {
            Relation::from_predicate(q, arity, |t| {
                (0..arity).all(|i| (0..i).all(|j| blocks[i] != blocks[j] || t[i] == t[j]))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zero() -> BTreeSet<Elem> {
        BTreeSet::from([0])
    }

    #[test]
    fn central_q3_matches_explicit_set() {
        let rho = build_central_minimal(3, 2, &zero()).unwrap();
        let tuples: Vec<_> = rho.tuples().collect();
        let mut expected = vec![
            vec![0, 0],
            vec![0, 1],
            vec![0, 2],
            vec![1, 0],
            vec![2, 0],
            vec![1, 1],
            vec![2, 2],
        ];
        expected.sort();
        assert_eq!(tuples, expected);
    }

    #[test]
    fn small_carriers_give_full_relations() {
        assert!(build_central_minimal(2, 2, &zero()).unwrap().is_full());
        let r = build_central_minimal(2, 3, &zero()).unwrap();
        assert_eq!(r.len(), 8);
    }

    #[test]
    fn invalid_centers() {
        assert!(matches!(
            build_central_minimal(3, 2, &BTreeSet::new()),
            Err(Error::InvalidCenter(_))
        ));
        assert!(matches!(
            build_central_minimal(2, 2, &BTreeSet::from([0, 1])),
            Err(Error::InvalidCenter(_))
        ));
        assert!(matches!(
            build_central_minimal(2, 2, &BTreeSet::from([5])),
            Err(Error::InvalidCenter(_))
        ));
    }

    #[test]
    fn classify_central() {
        let p = classify(&build_central_minimal(3, 2, &zero()).unwrap());
        assert!(p.reflexive && p.symmetric && p.totally_reflexive && p.proper);
        assert_eq!(p.transitivity, Transitivity::Counterexample([[1, 0], [0, 2]]));
        assert_eq!(p.centers, zero());
        assert!(p.is_central);
    }

    #[test]
    fn classify_equality_and_full() {
        let eq = classify(&Relation::equality(3, 2).unwrap());
        assert!(eq.centers.is_empty());
        assert!(!eq.is_central);
        assert_eq!(eq.transitive(), Some(true));
        let full = classify(&Relation::full(3, 2).unwrap());
        assert!(!full.proper);
        assert!(!full.is_central);
        let ternary = classify(&build_central_minimal(4, 3, &zero()).unwrap());
        assert_eq!(ternary.transitive(), None);
        assert!(ternary.is_central);
    }

    #[test]
    fn minimal_central_is_totally_reflexive_and_symmetric() {
        for q in 2..=4usize {
            for h in 1..=3 {
                for mask in 1..(1u32 << q) - 1 {
                    let center: BTreeSet<Elem> =
                        (0..q as Elem).filter(|&a| mask >> a & 1 == 1).collect();
                    let rel = build_central_minimal(q, h, &center).unwrap();
                    let p = classify(&rel);
                    assert!(p.totally_reflexive && p.symmetric, "q={q} h={h} {center:?}");
                    assert!(p.centers.is_superset(&center));
                }
            }
        }
    }

    #[test]
    fn central_binary_is_never_transitive_from_q3() {
        for q in 3..=5 {
            let p = classify(&build_central_minimal(q, 2, &zero()).unwrap());
            assert!(matches!(p.transitivity, Transitivity::Counterexample(_)));
        }
    }

    #[test]
    fn diagonal_counts_are_bell_numbers() {
        let counts: Vec<_> = (1..=5).map(|h| diagonal_relations(3, h).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 15, 52]);
        let d2 = diagonal_relations(3, 2).unwrap();
        assert_eq!(d2[0], Relation::equality(3, 2).unwrap());
        assert_eq!(d2[1], Relation::full(3, 2).unwrap());
        assert!(diagonal_relations(3, 1).unwrap()[0].is_full());
    }

    #[test]
    fn contains_rejects_malformed() {
        let rho = build_central_minimal(3, 2, &zero()).unwrap();
        assert!(!rho.contains(&[0]));
        assert!(!rho.contains(&[0, 3]));
        assert!(rho.contains(&[2, 0]));
        assert!(Relation::from_tuples(3, 2, [vec![0, 1, 2]]).is_err());
    }
}
