//! Computational audit of the completeness claims made for the R-algebra and
//! for the left-projection pattern algebra.
//!
//! Every verdict here is computed from the engines; none is assumed.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::caps::EnumerationCaps;
use crate::central_algebra::{build_r_algebra, decompose, DecompositionMode, LatticeSpec, LiftedUnaries};
use crate::clone::verdict::compare;
use crate::clone::{check_identities, generate_clone_level, pattern_axioms, CloneLevel, CompletenessVerdict};
use crate::error::Result;
use crate::kernel::{Algebra, OpTable, Term};
use crate::pol::{enumerate_compatible, enumerate_preserving};
use crate::relations::{build_central_minimal, diagonal_relations, Relation};

/// How many gap members are quoted in summaries.
pub const GAP_SAMPLES: usize = 8;
/// Diagonal relations of arity `1..=DIAGONAL_MAX_ARITY` are used for the pattern audit.
pub const DIAGONAL_MAX_ARITY: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessedTable {
    pub table: OpTable,
    pub witness: Term,
    pub text: String,
}

fn witnessed(level: &CloneLevel) -> Vec<WitnessedTable> {
    level
        .iter()
        .map(|(t, w)| WitnessedTable {
            table: t.clone(),
            witness: w.clone(),
            text: w.to_string(),
        })
        .collect()
}

/// Outcome of decomposing every compatible function of one arity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionStats {
    pub compatible: usize,
    pub literal_verified: usize,
    pub repaired_verified: usize,
    /// Exactly one nonzero value, located in `{1..q-1}^n`.
    pub single_support: usize,
    pub single_support_literal_verified: usize,
    /// At least two nonzero values on `{1..q-1}^n`.
    pub multi_support: usize,
    /// Multi-support functions whose literal decomposition reported a
    /// mismatch at every nonzero point of `{1..q-1}^n`.
    pub multi_support_all_points_mismatched: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArityAudit {
    pub arity: usize,
    pub verdict: CompletenessVerdict,
    pub gap_samples: Vec<OpTable>,
    pub members: Vec<WitnessedTable>,
    pub decomposition: Option<DecompositionStats>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternAudit {
    pub arity: usize,
    pub diagonal_relations: usize,
    pub identities_hold: bool,
    pub holds: Option<bool>,
    pub trusted: bool,
    pub pol_count: usize,
    pub clone_count: usize,
    pub all_functions: usize,
    pub gap_count: usize,
    pub gap_samples: Vec<OpTable>,
    pub members: Vec<WitnessedTable>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    /// Every compatible unary function is a polynomial of R.
    UnaryCentralCompleteness,
    /// Every compatible `n`-ary function is a polynomial of R.
    CentralCompleteness,
    /// Every compatible function equals the strict join of its indicators.
    IndicatorDecomposition,
    /// The left-projection algebra has `P = Pol` of the diagonal relations.
    PatternDiagonalCompleteness,
}

/// A claim compared with its computed value. `computed` is `None` when a cap
/// was hit; `consistent` is then also `None`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub claim: Claim,
    pub arity: usize,
    pub claimed: bool,
    pub computed: Option<bool>,
    pub consistent: Option<bool>,
    pub detail: String,
}

impl Finding {
    fn new(claim: Claim, arity: usize, computed: Option<bool>, detail: String) -> Self {
        Finding {
            claim,
            arity,
            claimed: true,
            computed,
            consistent: computed,
            detail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimAuditReport {
    pub q: usize,
    pub max_arity: usize,
    pub relation: Relation,
    pub arities: Vec<ArityAudit>,
    pub pattern: Vec<PatternAudit>,
    pub findings: Vec<Finding>,
    pub trusted: bool,
}

/// R-algebra over the chain with all lifted unaries.
pub fn default_r_algebra(q: usize) -> Result<Algebra> {
    build_r_algebra(&LatticeSpec::chain(q)?, &LiftedUnaries::All)
}

/// `(A; o)` with `o(x, y) = x`.
pub fn left_projection_algebra(q: usize) -> Result<Algebra> {
    Algebra::new(q, 0, [("o".to_string(), OpTable::projection(q, 2, 1)?)])
}

pub fn audit_claims(q: usize, max_arity: usize, caps: &EnumerationCaps) -> Result<ClaimAuditReport> {
    let algebra = default_r_algebra(q)?;
    let rho = build_central_minimal(q, 2, &BTreeSet::from([0]))?;
    let mut arities = Vec::new();
    let mut findings = Vec::new();
    let mut trusted = true;

    for n in 1..=max_arity {
        let level = generate_clone_level(&algebra, n, caps)?;
        let pol = enumerate_compatible(q, &rho, n, caps)?;
        let verdict = compare(&level, &pol.tables, pol.status.is_complete());
        trusted &= verdict.trusted;
        let decomposition = pol
            .status
            .is_complete()
            .then(|| decomposition_stats(&algebra, &pol.tables))
            .transpose()?;

        let claim = if n == 1 {
            Claim::UnaryCentralCompleteness
        } else {
            Claim::CentralCompleteness
        };
        let detail = if verdict.trusted {
            format!(
                "{} compatible, {} polynomial, {} compatible functions are not polynomial",
                verdict.pol_count,
                verdict.clone_count,
                verdict.gap.len()
            )
        } else {
            "a cap was hit; counts are lower bounds".to_string()
        };
        findings.push(Finding::new(claim, n, verdict.holds, detail));
        if let Some(stats) = &decomposition {
            let holds = stats.literal_verified == stats.compatible;
            findings.push(Finding::new(
                Claim::IndicatorDecomposition,
                n,
                Some(holds),
                format!(
                    "literal join verifies for {} of {} compatible functions ({} with the zero-neutral join)",
                    stats.literal_verified, stats.compatible, stats.repaired_verified
                ),
            ));
        }
        arities.push(ArityAudit {
            arity: n,
            gap_samples: verdict.gap.iter().take(GAP_SAMPLES).cloned().collect(),
            members: witnessed(&level),
            decomposition,
            verdict,
        });
    }

    let mut pattern = Vec::new();
    let pattern_algebra = left_projection_algebra(q)?;
    let identities_hold = check_identities(&pattern_algebra, &pattern_axioms("o"))?.holds;
    let diagonals: Vec<Relation> = (1..=DIAGONAL_MAX_ARITY)
        .map(|h| diagonal_relations(q, h))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    for n in 1..=max_arity {
        let level = generate_clone_level(&pattern_algebra, n, caps)?;
        let pol = enumerate_preserving(q, &diagonals, n, caps)?;
        let verdict = compare(&level, &pol.tables, pol.status.is_complete());
        trusted &= verdict.trusted;
        let all_functions = crate::kernel::checked_power(q, crate::kernel::checked_power(q, n)?)?;
        findings.push(Finding::new(
            Claim::PatternDiagonalCompleteness,
            n,
            verdict.holds,
            format!(
                "{} polynomial functions against {} operations preserving all {} diagonal relations ({} functions in total)",
                verdict.clone_count,
                verdict.pol_count,
                diagonals.len(),
                all_functions
            ),
        ));
        pattern.push(PatternAudit {
            arity: n,
            diagonal_relations: diagonals.len(),
            identities_hold,
            holds: verdict.holds,
            trusted: verdict.trusted,
            pol_count: verdict.pol_count,
            clone_count: verdict.clone_count,
            all_functions,
            gap_count: verdict.gap.len(),
            gap_samples: verdict.gap.iter().take(GAP_SAMPLES).cloned().collect(),
            members: witnessed(&level),
        });
    }

    Ok(ClaimAuditReport {
        q,
        max_arity,
        relation: rho,
        arities,
        pattern,
        findings,
        trusted,
    })
}

fn decomposition_stats(algebra: &Algebra, compatible: &[OpTable]) -> Result<DecompositionStats> {
    let per_function = compatible
        .par_iter()
        .map(|f| {
            let literal = decompose(algebra, f, DecompositionMode::Literal)?;
            let repaired = decompose(algebra, f, DecompositionMode::Repaired)?;
            let cube: Vec<usize> = f
                .points()
                .enumerate()
                .filter(|(i, p)| !p.contains(&0) && f.at(*i) != 0)
                .map(|(i, _)| i)
                .collect();
            let nonzero = f.entries().iter().filter(|&&v| v != 0).count();
            let single = nonzero == 1 && cube.len() == 1;
            let multi = cube.len() >= 2;
            let all_mismatched = multi
                && cube.iter().all(|&i| {
                    let point = crate::kernel::decode_index(i, f.q(), f.arity());
                    literal.mismatches.iter().any(|m| m.point == point)
                });
            Ok([
                literal.verified,
                repaired.verified,
                single,
                single && literal.verified,
                multi,
                all_mismatched,
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let count = |k: usize| per_function.iter().filter(|flags| flags[k]).count();
    Ok(DecompositionStats {
        compatible: compatible.len(),
        literal_verified: count(0),
        repaired_verified: count(1),
        single_support: count(2),
        single_support_literal_verified: count(3),
        multi_support: count(4),
        multi_support_all_points_mismatched: count(5),
    })
}
