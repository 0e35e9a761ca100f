use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::Duration;

use polyclone::audit::{audit_claims, default_r_algebra, ClaimAuditReport};
use polyclone::central_algebra::{
    decompose, indicator_term, DecompositionMode, DecompositionReport, LatticeSpec,
};
use polyclone::clone::{
    check_identities, completeness_verdict, generate_clone_level, maximality_probe, membership,
    pattern_axioms, prepolynomial_probe, CompletenessVerdict, IdentityEquation, IdentityVerdict,
    MaximalityEvidence, PrepolyReport,
};
use polyclone::pol::{enumerate_compatible, is_compatible};
use polyclone::relations::{build_central_minimal, classify, diagonal_relations, set_partitions, Relation, RelationProfile};
use polyclone::{Algebra, Elem, EnumerationCaps, OpTable, SearchStatus};
use serde::{Deserialize, Serialize};

use crate::cli::*;
use crate::error::{invalid, CliResult};
use crate::files::{load_algebra, load_relation, load_table, load_tables, parse_file, write_file, AlgebraFile, LatticeBlock};
use crate::json::to_canonical;
use crate::params;
use crate::report::{Outcome, RenderedTerm};

pub struct Context {
    pub caps: EnumerationCaps,
    pub global: Global,
}

impl Context {
    pub fn new(global: Global) -> CliResult<Self> {
        if global.cap == 0 {
            return Err(invalid("--cap must be positive"));
        }
        if !(global.time_budget > 0.0 && global.time_budget.is_finite()) {
            return Err(invalid("--time-budget must be a positive number of seconds"));
        }
        Ok(Context {
            caps: EnumerationCaps::new(global.cap, Duration::from_secs_f64(global.time_budget)),
            global,
        })
    }

    /// Inline the tables, or write them to `--out` (or `default_name` when
    /// there are too many to print).
    fn place_tables<'a, T: Serialize>(&self, items: &'a [T], default_name: &str) -> CliResult<Placement<'a, T>> {
        let path = match &self.global.out {
            Some(p) => Some(p.clone()),
            None if items.len() > self.global.inline_limit => Some(PathBuf::from(default_name)),
            None => None,
        };
        match path {
            Some(p) => {
                write_file(&p, &to_canonical(&items))?;
                Ok(Placement {
                    inline: None,
                    file: Some(p.display().to_string()),
                })
            }
            None => Ok(Placement {
                inline: Some(items),
                file: None,
            }),
        }
    }
}

struct Placement<'a, T> {
    inline: Option<&'a [T]>,
    file: Option<String>,
}

fn element(q: usize, value: usize, what: &str) -> CliResult<Elem> {
    if value < q {
        Ok(value as Elem)
    } else {
        Err(invalid(format!("{what}: {value} is out of range for q = {q}")))
    }
}

fn relation_from(source: &RelationSource, q: Option<usize>) -> CliResult<Relation> {
    if let Some(path) = &source.relation {
        let rel = load_relation(path)?;
        if let Some(q) = q {
            if rel.q() != q {
                return Err(invalid(format!("relation has q = {}, expected {q}", rel.q())));
            }
        }
        return Ok(rel);
    }
    let q = q.ok_or_else(|| invalid("--q is required unless --relation is given"))?;
    let center = if source.center.is_empty() { vec![0] } else { source.center.clone() };
    let center = center
        .into_iter()
        .map(|c| element(q, c, "center"))
        .collect::<CliResult<BTreeSet<_>>>()?;
    Ok(build_central_minimal(q, source.rel_arity, &center)?)
}

fn table_from(source: &TableSource, q: usize, arity: Option<usize>) -> CliResult<OpTable> {
    if let Some(path) = &source.table {
        let t = load_table(path)?;
        if t.q() != q {
            return Err(invalid(format!("table has q = {}, expected {q}", t.q())));
        }
        return Ok(t);
    }
    if source.entries.is_empty() {
        return Err(invalid("give --table or --entries"));
    }
    let arity = arity.ok_or_else(|| invalid("--arity is required with --entries"))?;
    let entries = source
        .entries
        .iter()
        .enumerate()
        .map(|(k, &e)| element(q, e, &format!("entries[{k}]")))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(OpTable::new(q, arity, entries)?)
}

fn status_trusted(s: SearchStatus) -> bool {
    s.is_complete()
}

pub fn dispatch(ctx: &Context, command: &Group) -> CliResult<Outcome> {
    match command {
        Group::Rel(cmd) => rel(ctx, cmd),
        Group::Pol(cmd) => pol(ctx, cmd),
        Group::Clone(cmd) => clone_cmd(ctx, cmd),
        Group::Algebra(cmd) => algebra_cmd(ctx, cmd),
        Group::Synth(cmd) => synth(ctx, cmd),
        Group::Paper(PaperCmd::Audit { q, max_arity }) => audit(ctx, *q, *max_arity),
    }
}

// ---------------------------------------------------------------- rel

#[derive(Serialize, Deserialize)]
pub struct RelationPayload {
    pub size: usize,
    pub relation: Relation,
}

#[derive(Serialize, Deserialize)]
pub struct ClassifyPayload {
    pub size: usize,
    pub profile: RelationProfile,
}

#[derive(Serialize, Deserialize)]
pub struct DiagonalEntry {
    pub partition: Vec<usize>,
    pub relation: Relation,
}

#[derive(Serialize, Deserialize)]
pub struct DiagonalPayload {
    pub count: usize,
    pub relations: Vec<DiagonalEntry>,
}

fn tuples_text(rel: &Relation) -> String {
    rel.tuples()
        .map(|t| format!("({})", t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn rel(_ctx: &Context, cmd: &RelCmd) -> CliResult<Outcome> {
    match cmd {
        RelCmd::Central { q, center, arity } => {
            let source = RelationSource {
                relation: None,
                center: center.clone(),
                rel_arity: *arity,
            };
            let relation = relation_from(&source, Some(*q))?;
            let human = format!("{} tuples: {}\n", relation.len(), tuples_text(&relation));
            let payload = RelationPayload {
                size: relation.len(),
                relation,
            };
            Ok(Outcome::new(
                "rel central",
                params!("q" => q, "center" => center, "arity" => arity),
                true,
                None,
                &payload,
                human,
            ))
        }
        RelCmd::Classify { q, source } => {
            let relation = relation_from(source, *q)?;
            let profile = classify(&relation);
            let human = format!(
                "reflexive {}\ntotally reflexive {}\nsymmetric {}\ntransitive {}\nproper {}\ncenters {:?}\ncentral {}\n",
                profile.reflexive,
                profile.totally_reflexive,
                profile.symmetric,
                match profile.transitivity {
                    polyclone::relations::Transitivity::Transitive => "true".to_string(),
                    polyclone::relations::Transitivity::Counterexample([a, b]) =>
                        format!("false: {a:?} {b:?}"),
                    polyclone::relations::Transitivity::NotApplicable => "n/a".to_string(),
                },
                profile.proper,
                profile.centers,
                profile.is_central
            );
            let verdict = Some(profile.is_central);
            Ok(Outcome::new(
                "rel classify",
                params!(
                    "q" => relation.q(),
                    "relation" => source.relation.as_ref().map(|p| p.display().to_string()),
                ),
                true,
                verdict,
                &ClassifyPayload {
                    size: relation.len(),
                    profile,
                },
                human,
            ))
        }
        RelCmd::Diagonal { q, arity } => {
            let rels = diagonal_relations(*q, *arity)?;
            let relations: Vec<DiagonalEntry> = set_partitions(*arity)
                .into_iter()
                .zip(rels)
                .map(|(partition, relation)| DiagonalEntry { partition, relation })
                .collect();
            let human = relations
                .iter()
                .map(|d| format!("{:?}: {} tuples\n", d.partition, d.relation.len()))
                .collect();
            Ok(Outcome::new(
                "rel diagonal",
                params!("q" => q, "arity" => arity),
                true,
                None,
                &DiagonalPayload {
                    count: relations.len(),
                    relations,
                },
                human,
            ))
        }
    }
}

// ---------------------------------------------------------------- pol

#[derive(Serialize, Deserialize)]
pub struct EnumeratePayload {
    pub q: usize,
    pub arity: usize,
    pub status: SearchStatus,
    pub count: Option<usize>,
    pub found: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tables: Option<Vec<Vec<Elem>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tables_file: Option<String>,
}

fn pol(ctx: &Context, cmd: &PolCmd) -> CliResult<Outcome> {
    let (name, args, list) = match cmd {
        PolCmd::Enumerate(a) => ("pol enumerate", a, true),
        PolCmd::Count(a) => ("pol count", a, false),
    };
    let relation = relation_from(&args.source, args.q)?;
    let q = relation.q();
    let e = enumerate_compatible(q, &relation, args.arity, &ctx.caps)?;
    let trusted = status_trusted(e.status);
    let entries: Vec<Vec<Elem>> = e.tables.iter().map(|t| t.entries().to_vec()).collect();
    let (tables, tables_file) = if list {
        let placed = ctx.place_tables(&entries, &format!("pol-q{q}-n{}.json", args.arity))?;
        (placed.inline.map(<[_]>::to_vec), placed.file)
    } else {
        (None, None)
    };
    let mut human = match e.count() {
        Some(c) => format!("{c} compatible tables\n"),
        None => format!("cap exceeded after {} tables; no count\n", e.tables.len()),
    };
    if let Some(ts) = &tables {
        for t in ts {
            human.push_str(&format!("{t:?}\n"));
        }
    }
    if let Some(f) = &tables_file {
        human.push_str(&format!("tables written to {f}\n"));
    }
    let payload = EnumeratePayload {
        q,
        arity: args.arity,
        status: e.status,
        count: e.count(),
        found: e.tables.len(),
        tables,
        tables_file,
    };
    Ok(Outcome::new(
        name,
        params!(
            "q" => q,
            "arity" => args.arity,
            "relation" => args.source.relation.as_ref().map(|p| p.display().to_string()),
            "center" => (args.source.relation.is_none()).then(|| if args.source.center.is_empty() { vec![0] } else { args.source.center.clone() }),
            "cap" => ctx.caps.max_results,
        ),
        trusted,
        None,
        &payload,
        human,
    ))
}

// ---------------------------------------------------------------- clone

#[derive(Serialize, Deserialize)]
pub struct MemberEntry {
    pub entries: Vec<Elem>,
    pub witness: RenderedTerm,
}

#[derive(Serialize, Deserialize)]
pub struct GeneratePayload {
    pub q: usize,
    pub arity: usize,
    pub size: usize,
    pub complete_fixpoint: bool,
    pub status: SearchStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<MemberEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub members_file: Option<String>,
}

#[derive(Serialize, Deserialize)]
pub struct MembershipPayload {
    pub table: OpTable,
    /// `None` when the level was truncated and the table was not found.
    pub polynomial: Option<bool>,
    pub witness: Option<RenderedTerm>,
}

#[derive(Serialize, Deserialize)]
pub struct CompletePayload {
    pub verdict: CompletenessVerdict,
}

#[derive(Serialize, Deserialize)]
pub struct IdentitiesPayload {
    pub equations: Vec<String>,
    pub verdict: IdentityVerdict,
}

fn clone_cmd(ctx: &Context, cmd: &CloneCmd) -> CliResult<Outcome> {
    match cmd {
        CloneCmd::Generate { algebra, arity } => {
            let alg = load_algebra(algebra)?;
            let level = generate_clone_level(&alg, *arity, &ctx.caps)?;
            let members: Vec<MemberEntry> = level
                .iter()
                .map(|(t, w)| MemberEntry {
                    entries: t.entries().to_vec(),
                    witness: w.into(),
                })
                .collect();
            let placed = ctx.place_tables(&members, &format!("clone-q{}-n{arity}.json", alg.q()))?;
            let mut human = format!(
                "{} polynomial functions of arity {arity}{}\n",
                level.len(),
                if level.complete_fixpoint() { "" } else { " (cap hit, incomplete)" }
            );
            if let Some(ms) = placed.inline {
                for m in ms {
                    human.push_str(&format!("{:?}  {}\n", m.entries, m.witness.text));
                }
            }
            if let Some(f) = &placed.file {
                human.push_str(&format!("members written to {f}\n"));
            }
            let payload = GeneratePayload {
                q: alg.q(),
                arity: *arity,
                size: level.len(),
                complete_fixpoint: level.complete_fixpoint(),
                status: level.status(),
                members_file: placed.file.clone(),
                members: placed.inline.map(|_| members.iter().map(|m| MemberEntry {
                    entries: m.entries.clone(),
                    witness: m.witness.clone(),
                }).collect()),
            };
            Ok(Outcome::new(
                "clone generate",
                params!("algebra" => algebra.display().to_string(), "arity" => arity, "cap" => ctx.caps.max_results),
                level.complete_fixpoint(),
                None,
                &payload,
                human,
            ))
        }
        CloneCmd::Member { algebra, arity, table } => {
            let alg = load_algebra(algebra)?;
            let t = table_from(table, alg.q(), *arity)?;
            let level = generate_clone_level(&alg, t.arity(), &ctx.caps)?;
            let witness = membership(&level, &t)?.map(RenderedTerm::from);
            let polynomial = match (&witness, level.complete_fixpoint()) {
                (Some(_), _) => Some(true),
                (None, true) => Some(false),
                (None, false) => None,
            };
            let human = match (&witness, polynomial) {
                (Some(w), _) => format!("polynomial: {}\n", w.text),
                (None, Some(false)) => "not polynomial\n".to_string(),
                _ => "not found before the cap; undecided\n".to_string(),
            };
            Ok(Outcome::new(
                "clone member",
                params!("algebra" => algebra.display().to_string(), "arity" => t.arity(), "entries" => t.entries()),
                level.complete_fixpoint() || witness.is_some(),
                polynomial,
                &MembershipPayload { table: t, polynomial, witness },
                human,
            ))
        }
        CloneCmd::Complete { algebra, arity, source } => {
            let alg = load_algebra(algebra)?;
            let relation = relation_from(source, Some(alg.q()))?;
            let verdict = completeness_verdict(&alg, &relation, *arity, &ctx.caps)?;
            let mut human = format!(
                "compatible {}  polynomial {}  gap {}  holds {}\n",
                verdict.pol_count,
                verdict.clone_count,
                verdict.gap.len(),
                verdict.holds.map_or("undecided".to_string(), |h| h.to_string())
            );
            for g in verdict.gap.iter().take(20) {
                human.push_str(&format!("  gap {:?}\n", g.entries()));
            }
            Ok(Outcome::new(
                "clone complete",
                params!(
                    "algebra" => algebra.display().to_string(),
                    "arity" => arity,
                    "relation" => source.relation.as_ref().map(|p| p.display().to_string()),
                    "cap" => ctx.caps.max_results,
                ),
                verdict.trusted,
                verdict.holds,
                &CompletePayload { verdict },
                human,
            ))
        }
        CloneCmd::Probe(ProbeCmd::Maximal { generators, f, arity }) => {
            let gens = load_tables(generators)?;
            let f_table = load_table(f)?;
            let evidence: MaximalityEvidence = maximality_probe(&gens, &f_table, *arity, &ctx.caps)?;
            let human = format!(
                "reached {} of {} functions of arity {arity}; generates all: {}\n",
                evidence.reached,
                evidence.target,
                evidence.generates_all.map_or("undecided".into(), |b: bool| b.to_string())
            );
            Ok(Outcome::new(
                "clone probe maximal",
                params!("generators" => generators.display().to_string(), "f" => f.display().to_string(), "arity" => arity),
                evidence.trusted,
                evidence.generates_all,
                &evidence,
                human,
            ))
        }
        CloneCmd::Probe(ProbeCmd::Prepoly { algebra, missing_arity, arity }) => {
            let alg = load_algebra(algebra)?;
            let report: PrepolyReport = prepolynomial_probe(&alg, *missing_arity, *arity, &ctx.caps)?;
            let mut human = format!(
                "missing per arity {:?}; {} failures; passes: {}\n",
                report.missing_per_arity,
                report.failures.len(),
                report.passes.map_or("undecided".into(), |b: bool| b.to_string())
            );
            for f in &report.failures {
                human.push_str(&format!("  {:?} reaches {}\n", f.adjoined.entries(), f.reached));
            }
            Ok(Outcome::new(
                "clone probe prepoly",
                params!("algebra" => algebra.display().to_string(), "missing_arity" => missing_arity, "arity" => arity),
                report.trusted,
                report.passes,
                &report,
                human,
            ))
        }
        CloneCmd::Identities { algebra, equations, pattern_axioms: op } => {
            let alg = load_algebra(algebra)?;
            let mut eqs: Vec<IdentityEquation> = equations
                .iter()
                .map(|e| e.parse::<IdentityEquation>())
                .collect::<Result<_, _>>()?;
            if let Some(op) = op {
                eqs.extend(pattern_axioms(op));
            }
            if eqs.is_empty() {
                return Err(invalid("give --eq or --pattern-axioms"));
            }
            let verdict = check_identities(&alg, &eqs)?;
            let human = match &verdict.failure {
                None => format!("all {} identities hold\n", eqs.len()),
                Some(f) => format!(
                    "`{}` fails at {:?}: {} vs {}\n",
                    eqs[f.equation], f.assignment, f.lhs, f.rhs
                ),
            };
            let texts: Vec<String> = eqs.iter().map(|e| e.to_string()).collect();
            Ok(Outcome::new(
                "clone identities",
                params!("algebra" => algebra.display().to_string(), "equations" => texts),
                true,
                Some(verdict.holds),
                &IdentitiesPayload { equations: texts, verdict },
                human,
            ))
        }
    }
}

// ---------------------------------------------------------------- algebra

#[derive(Serialize, Deserialize)]
pub struct BuildPayload {
    pub algebra: AlgebraFile,
    pub operation_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub written_to: Option<String>,
}

#[derive(Serialize, Deserialize)]
pub struct OpCheck {
    pub name: String,
    pub arity: usize,
    pub compatible: bool,
}

#[derive(Serialize, Deserialize)]
pub struct CheckPayload {
    pub q: usize,
    pub zero: Elem,
    pub center: Vec<usize>,
    pub operations: Vec<OpCheck>,
    pub all_compatible: bool,
}

fn lattice_block(spec: &LatticeSpec) -> LatticeBlock {
    let v = |t: &OpTable| t.entries().iter().map(|&e| e as usize).collect();
    LatticeBlock {
        meet: v(spec.meet()),
        join: v(spec.join()),
    }
}

fn algebra_cmd(ctx: &Context, cmd: &AlgebraCmd) -> CliResult<Outcome> {
    match cmd {
        AlgebraCmd::BuildR { q, lattice, no_lifts, expand } => {
            let spec = match lattice {
                None => LatticeSpec::chain(*q)?,
                Some(path) => {
                    let block: LatticeBlock = parse_file(path)?;
                    let probe = AlgebraFile {
                        q: *q,
                        zero: 0,
                        operations: vec![],
                        lattice: Some(block.clone()),
                        all_lifted_unaries: false,
                    };
                    probe.to_algebra()?;
                    let t = |e: &[usize]| OpTable::new(*q, 2, e.iter().map(|&x| x as Elem).collect());
                    LatticeSpec::new(t(&block.meet)?, t(&block.join)?)?
                }
            };
            let compact = AlgebraFile {
                q: *q,
                zero: 0,
                operations: vec![],
                lattice: Some(lattice_block(&spec)),
                all_lifted_unaries: !no_lifts,
            };
            let algebra = compact.to_algebra()?;
            let file = if *expand { AlgebraFile::expanded(&algebra) } else { compact };
            let written_to = match &ctx.global.out {
                Some(p) => {
                    write_file(p, &file.to_text())?;
                    Some(p.display().to_string())
                }
                None => None,
            };
            let human = format!(
                "{} operations: {}\n",
                algebra.op_count(),
                algebra.ops().map(|(n, _)| n).collect::<Vec<_>>().join(" ")
            );
            Ok(Outcome::new(
                "algebra build-r",
                params!("q" => q, "lattice" => lattice.as_ref().map(|p| p.display().to_string()), "lifts" => !no_lifts),
                true,
                None,
                &BuildPayload {
                    operation_count: algebra.op_count(),
                    algebra: file,
                    written_to,
                },
                human,
            ))
        }
        AlgebraCmd::Check { algebra, center } => {
            let alg = load_algebra(algebra)?;
            let source = RelationSource {
                relation: None,
                center: center.clone(),
                rel_arity: 2,
            };
            let rho = relation_from(&source, Some(alg.q()))?;
            let operations = alg
                .ops()
                .map(|(name, t)| {
                    Ok(OpCheck {
                        name: name.to_string(),
                        arity: t.arity(),
                        compatible: is_compatible(t, &rho)?.compatible,
                    })
                })
                .collect::<CliResult<Vec<_>>>()?;
            let all_compatible = operations.iter().all(|o| o.compatible);
            let human = operations
                .iter()
                .map(|o| format!("{:>10}/{}  compatible {}\n", o.name, o.arity, o.compatible))
                .collect();
            Ok(Outcome::new(
                "algebra check",
                params!("algebra" => algebra.display().to_string(), "center" => center),
                true,
                Some(all_compatible),
                &CheckPayload {
                    q: alg.q(),
                    zero: alg.zero(),
                    center: center.clone(),
                    operations,
                    all_compatible,
                },
                human,
            ))
        }
    }
}

// ---------------------------------------------------------------- synth

#[derive(Serialize, Deserialize)]
pub struct IndicatorPayload {
    pub point: Vec<Elem>,
    pub value: Elem,
    pub term: RenderedTerm,
    pub table: OpTable,
}

#[derive(Serialize, Deserialize)]
pub struct DecomposePayload {
    pub text: String,
    pub report: DecompositionReport,
}

fn r_algebra(q: Option<usize>, algebra: &Option<PathBuf>) -> CliResult<Algebra> {
    match (algebra, q) {
        (Some(path), q) => {
            let a = load_algebra(path)?;
            if q.is_some_and(|q| q != a.q()) {
                return Err(invalid("--q disagrees with the algebra file"));
            }
            Ok(a)
        }
        (None, Some(q)) => Ok(default_r_algebra(q)?),
        (None, None) => Err(invalid("give --q or --algebra")),
    }
}

fn synth(_ctx: &Context, cmd: &SynthCmd) -> CliResult<Outcome> {
    match cmd {
        SynthCmd::Indicator { q, algebra, point, value } => {
            let alg = r_algebra(*q, algebra)?;
            let point = point
                .iter()
                .map(|&x| element(alg.q(), x, "point"))
                .collect::<CliResult<Vec<_>>>()?;
            let value = element(alg.q(), *value, "value")?;
            let term = indicator_term(&alg, &point, value)?;
            let table = alg.table_of_term(&term, point.len())?;
            let human = format!("{term}\n{:?}\n", table.entries());
            Ok(Outcome::new(
                "synth indicator",
                params!("q" => alg.q(), "algebra" => algebra.as_ref().map(|p| p.display().to_string()), "point" => point, "value" => value),
                true,
                None,
                &IndicatorPayload {
                    point: point.clone(),
                    value,
                    term: (&term).into(),
                    table,
                },
                human,
            ))
        }
        SynthCmd::Decompose { q, algebra, arity, table, repaired } => {
            let alg = r_algebra(*q, algebra)?;
            let f = table_from(table, alg.q(), *arity)?;
            let mode = if *repaired { DecompositionMode::Repaired } else { DecompositionMode::Literal };
            let report = decompose(&alg, &f, mode)?;
            let mut human = format!("{}\nverified {}\n", report.term, report.verified);
            for m in &report.mismatches {
                human.push_str(&format!("  at {:?}: expected {} got {}\n", m.point, m.expected, m.got));
            }
            Ok(Outcome::new(
                "synth decompose",
                params!("q" => alg.q(), "algebra" => algebra.as_ref().map(|p| p.display().to_string()), "entries" => f.entries(), "arity" => f.arity(), "repaired" => repaired),
                true,
                Some(report.verified),
                &DecomposePayload {
                    text: report.term.to_string(),
                    report,
                },
                human,
            ))
        }
    }
}

// ---------------------------------------------------------------- paper

fn audit(ctx: &Context, q: usize, max_arity: usize) -> CliResult<Outcome> {
    let report: ClaimAuditReport = audit_claims(q, max_arity, &ctx.caps)?;
    let mut human = String::new();
    for a in &report.arities {
        let v = &a.verdict;
        human.push_str(&format!(
            "arity {}: compatible {} polynomial {} gap {} holds {}\n",
            a.arity,
            v.pol_count,
            v.clone_count,
            v.gap.len(),
            v.holds.map_or("undecided".into(), |h| h.to_string())
        ));
        if let Some(d) = &a.decomposition {
            human.push_str(&format!(
                "  decomposition: literal {}/{} repaired {}/{} single-support {}/{} multi-support mismatched {}/{}\n",
                d.literal_verified, d.compatible, d.repaired_verified, d.compatible,
                d.single_support_literal_verified, d.single_support,
                d.multi_support_all_points_mismatched, d.multi_support
            ));
        }
    }
    for p in &report.pattern {
        human.push_str(&format!(
            "pattern arity {}: polynomial {} vs diagonal-preserving {} (axioms hold {})\n",
            p.arity, p.clone_count, p.pol_count, p.identities_hold
        ));
    }
    human.push_str("findings:\n");
    for f in &report.findings {
        human.push_str(&format!(
            "  {:?} arity {}: claimed {} computed {} — {}\n",
            f.claim,
            f.arity,
            f.claimed,
            f.computed.map_or("undecided".into(), |c| c.to_string()),
            f.detail
        ));
    }
    let verdict = report
        .findings
        .iter()
        .map(|f| f.consistent)
        .collect::<Option<Vec<_>>>()
        .map(|v| v.into_iter().all(|c| c));
    Ok(Outcome::new(
        "paper audit",
        params!("q" => q, "max_arity" => max_arity, "cap" => ctx.caps.max_results),
        report.trusted,
        verdict,
        &report,
        human,
    ))
}

