mod common;

use std::collections::BTreeSet;

use common::*;
use polyclone::audit::default_r_algebra;
use polyclone::central_algebra::{
    build_r_algebra, decompose, indicator_term, lift_unary, DecompositionMode, LatticeSpec, LiftedUnaries,
};
use polyclone::clone::{generate_clone_level, membership, specialized_table, CloneLevel};
use polyclone::kernel::{decode_index, tuple_index, Points};
use polyclone::pol::is_compatible;
use polyclone::relations::{build_central_minimal, diagonal_relations, Relation};
use polyclone::{Elem, EnumerationCaps, OpTable, Term};
use proptest::prelude::*;

fn rho(q: usize) -> Relation {
    build_central_minimal(q, 2, &BTreeSet::from([0])).unwrap()
}

fn level(q: usize, n: usize) -> CloneLevel {
    generate_clone_level(&default_r_algebra(q).unwrap(), n, &EnumerationCaps::default()).unwrap()
}

#[test]
fn witnesses_evaluate_to_their_tables() {
    for (q, n) in [(2, 2), (3, 1), (3, 2), (4, 1)] {
        let alg = default_r_algebra(q).unwrap();
        let lvl = level(q, n);
        for (t, w) in lvl.iter() {
            assert_eq!(&alg.table_of_term(w, n).unwrap(), t, "{w}");
        }
    }
}

#[test]
fn levels_are_closed_and_seeded() {
    let alg = default_r_algebra(3).unwrap();
    let lvl = level(3, 2);
    for i in 1..=2 {
        assert!(lvl.contains(&OpTable::projection(3, 2, i).unwrap()));
    }
    for a in 0..3 {
        assert!(lvl.contains(&OpTable::constant(3, 2, a).unwrap()));
    }
    for (_, op) in alg.ops() {
        match op.arity() {
            1 => {
                for f in lvl.members() {
                    assert!(lvl.contains(&OpTable::compose(op, std::slice::from_ref(f)).unwrap()));
                }
            }
            2 => {
                for f in lvl.members() {
                    for g in lvl.members() {
                        assert!(lvl.contains(&OpTable::compose(op, &[f.clone(), g.clone()]).unwrap()));
                    }
                }
            }
            _ => unreachable!(),
        }
    }
}

#[test]
fn polynomials_are_compatible() {
    for n in 1..=2 {
        for t in level(3, n).members() {
            assert!(is_compatible(t, &rho(3)).unwrap().compatible);
        }
    }
}

#[test]
fn specialization_lands_in_unary_level() {
    let alg = default_r_algebra(3).unwrap();
    let unary = level(3, 1);
    for (t, w) in level(3, 2).iter() {
        for a in 0..3 {
            let s = specialized_table(&alg, w, 2, 1, a).unwrap();
            assert_eq!(s, t.slice(1, a).unwrap());
            assert!(unary.contains(&s));
        }
    }
}

#[test]
fn generation_is_deterministic_across_pools() {
    let alg = default_r_algebra(3).unwrap();
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| generate_clone_level(&alg, 2, &EnumerationCaps::default()).unwrap())
    };
    let a = run(1);
    let b = run(8);
    assert_eq!(a.members(), b.members());
    assert_eq!(a.witnesses(), b.witnesses());
}

#[test]
fn adding_an_operation_never_shrinks_levels() {
    let spec = LatticeSpec::chain(3).unwrap();
    let some = build_r_algebra(&spec, &LiftedUnaries::Listed(vec![vec![2, 1]])).unwrap();
    let more = some.with_op("f11", lift_unary(3, &[1, 1]).unwrap()).unwrap();
    let caps = EnumerationCaps::default();
    for n in 1..=2 {
        let small = generate_clone_level(&some, n, &caps).unwrap();
        let big = generate_clone_level(&more, n, &caps).unwrap();
        assert!(small.members().iter().all(|t| big.contains(t)));
        assert!(big.len() >= small.len());
    }
}

#[test]
fn membership_examples() {
    let lvl = level(3, 1);
    let alg = default_r_algebra(3).unwrap();
    let id = OpTable::identity(3).unwrap();
    assert_eq!(membership(&lvl, &id).unwrap(), Some(&Term::var(1)));
    let swap = OpTable::new(3, 1, vec![0, 2, 1]).unwrap();
    let w = membership(&lvl, &swap).unwrap().unwrap();
    assert_eq!(w.to_string(), "f21(x1)");
    assert_eq!(alg.table_of_term(w, 1).unwrap(), swap);
    let not_poly = OpTable::new(3, 1, vec![1, 0, 0]).unwrap();
    assert!(lvl.complete_fixpoint());
    assert_eq!(membership(&lvl, &not_poly).unwrap(), None);
}

#[test]
fn basic_operations_are_compatible() {
    for q in 2..=4 {
        let alg = default_r_algebra(q).unwrap();
        assert_eq!(alg.op_count(), 2 + q.pow(q as u32 - 1));
        for (name, op) in alg.ops() {
            assert!(is_compatible(op, &rho(q)).unwrap().compatible, "q={q} {name}");
        }
    }
}

#[test]
fn indicators_match_piecewise_definition() {
    let alg = default_r_algebra(3).unwrap();
    for n in 1..=2 {
        for a in all_points(3, n) {
            for v in 0..3 {
                let t = indicator_term(&alg, &a, v).unwrap();
                let tab = alg.table_of_term(&t, n).unwrap();
                let vanishes = v == 0 || a.contains(&0);
                for p in all_points(3, n) {
                    let expected = if !vanishes && p == a { v } else { 0 };
                    assert_eq!(tab.eval(&p).unwrap(), expected);
                }
                if !vanishes {
                    assert!(level(3, n).contains(&tab));
                }
            }
        }
    }
}

#[test]
fn verified_decompositions_are_compatible_polynomials() {
    let alg = default_r_algebra(3).unwrap();
    let lvl = level(3, 2);
    for entries in all_tables(3, 2).into_iter().step_by(7) {
        let f = table(3, 2, entries);
        let r = decompose(&alg, &f, DecompositionMode::Literal).unwrap();
        assert_eq!(r.verified, r.mismatches.is_empty());
        let got = alg.table_of_term(&r.term, 2).unwrap();
        assert!(lvl.contains(&got));
        for m in &r.mismatches {
            assert_eq!(got.eval(&m.point).unwrap(), m.got);
            assert_eq!(f.eval(&m.point).unwrap(), m.expected);
        }
        if r.verified {
            assert!(is_compatible(&f, &rho(3)).unwrap().compatible);
        }
    }
}

fn arb_table(q: usize, n: usize) -> impl Strategy<Value = OpTable> {
    prop::collection::vec(0..q as Elem, q.pow(n as u32)).prop_map(move |e| OpTable::new(q, n, e).unwrap())
}

proptest! {
    #[test]
    fn every_table_preserves_diagonals(
        (q, n) in (1usize..=3, 0usize..=2),
        h in 1usize..=3,
        seed in prop::collection::vec(any::<u8>(), 27),
    ) {
        let entries: Vec<Elem> = seed.iter().take(q.pow(n as u32)).map(|x| x % q as u8).collect();
        let f = OpTable::new(q, n, entries).unwrap();
        for rel in diagonal_relations(q, h).unwrap() {
            prop_assert!(is_compatible(&f, &rel).unwrap().compatible);
        }
    }

    #[test]
    fn counterexamples_replay(f in arb_table(3, 2)) {
        let r = is_compatible(&f, &rho(3)).unwrap();
        prop_assert_eq!(r.compatible, r.counterexample.is_none());
        prop_assert_eq!(r.compatible, preserves(f.entries(), 3, 2, &central_set(3)));
        if let Some(cx) = r.counterexample {
            prop_assert_eq!(cx.replay(&f).unwrap(), cx.image.clone());
            prop_assert!(!rho(3).contains(&cx.image));
            for col in cx.columns() {
                prop_assert!(rho(3).contains(&col));
            }
        }
    }

    #[test]
    fn index_round_trip(q in 1usize..=6, point in prop::collection::vec(0u8..6, 0..5)) {
        let point: Vec<Elem> = point.into_iter().map(|x| x % q as u8).collect();
        let i = tuple_index(&point, q).unwrap();
        prop_assert_eq!(decode_index(i, q, point.len()), point);
    }

    #[test]
    fn printed_terms_parse_back(t in arb_term()) {
        let text = t.to_string();
        prop_assert_eq!(text.parse::<Term>().unwrap(), t);
    }

    #[test]
    fn compose_matches_pointwise(f in arb_table(3, 2), g in arb_table(3, 2), h in arb_table(3, 2)) {
        let c = OpTable::compose(&f, &[g.clone(), h.clone()]).unwrap();
        for p in Points::new(3, 2) {
            let inner = [g.eval(&p).unwrap(), h.eval(&p).unwrap()];
            prop_assert_eq!(c.eval(&p).unwrap(), f.eval(&inner).unwrap());
        }
    }
}

fn arb_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![(1usize..5).prop_map(Term::Var), (0u8..4).prop_map(Term::Const)];
    leaf.prop_recursive(4, 24, 3, |inner| {
        (prop::sample::select(vec!["meet", "vee", "f21", "o"]), prop::collection::vec(inner, 0..3))
            .prop_map(|(op, args)| Term::apply(op, args))
    })
}

