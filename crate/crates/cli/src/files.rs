//! On-disk schemas for algebras, relations and single tables.
//!
//! Tables are always flat arrays in tuple-index order (first coordinate most
//! significant).

use std::path::Path;

use polyclone::central_algebra::{build_r_algebra, LatticeSpec, LiftedUnaries};
use polyclone::relations::Relation;
use polyclone::{Algebra, Elem, OpTable};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, CliError, CliResult};
use crate::json::to_canonical;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperationEntry {
    pub name: String,
    pub arity: usize,
    pub entries: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeBlock {
    pub meet: Vec<usize>,
    pub join: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub q: usize,
    #[serde(default)]
    pub zero: usize,
    #[serde(default)]
    pub operations: Vec<OperationEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeBlock>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub all_lifted_unaries: bool,
}

fn table_from(
    field: &str,
    q: usize,
    arity: usize,
    entries: &[usize],
    errors: &mut Vec<String>,
) -> Option<OpTable> {
    let expected = u32::try_from(arity).ok().and_then(|a| q.checked_pow(a));
    let mut ok = true;
    if expected != Some(entries.len()) {
        errors.push(format!(
            "{field}: has {} entries, expected {q}^{arity} = {}",
            entries.len(),
            expected.map_or_else(|| "overflow".to_string(), |e| e.to_string())
        ));
        ok = false;
    }
    for (k, &e) in entries.iter().enumerate() {
        if e >= q {
            errors.push(format!("{field}[{k}]: value {e} is out of range for q = {q}"));
            ok = false;
        }
    }
    if !ok {
        return None;
    }
    let entries: Vec<Elem> = entries.iter().map(|&e| e as Elem).collect();
    match OpTable::new(q, arity, entries) {
        Ok(t) => Some(t),
        Err(e) => {
            errors.push(format!("{field}: {e}"));
            None
        }
    }
}

impl AlgebraFile {
    /// Validates every field, reporting all problems at once.
    pub fn to_algebra(&self) -> CliResult<Algebra> {
        let mut errors = Vec::new();
        let q = self.q;
        if q == 0 || q > polyclone::kernel::MAX_CARRIER {
            return Err(invalid(format!("q: carrier size {q} is not supported")));
        }
        if self.zero >= q {
            errors.push(format!("zero: {} is out of range for q = {q}", self.zero));
        }
        let mut explicit = Vec::new();
        for (k, op) in self.operations.iter().enumerate() {
            let field = format!("operations[{k}].entries");
            if let Some(t) = table_from(&field, q, op.arity, &op.entries, &mut errors) {
                explicit.push((op.name.clone(), t));
            }
        }
        let mut algebra = None;
        match &self.lattice {
            Some(block) => {
                if self.zero != 0 {
                    errors.push("zero: must be 0 when a lattice block is given".into());
                }
                let meet = table_from("lattice.meet", q, 2, &block.meet, &mut errors);
                let join = table_from("lattice.join", q, 2, &block.join, &mut errors);
                if let (Some(meet), Some(join)) = (meet, join) {
                    let lifts = if self.all_lifted_unaries {
                        LiftedUnaries::All
                    } else {
                        LiftedUnaries::Listed(Vec::new())
                    };
                    match LatticeSpec::new(meet, join).and_then(|s| build_r_algebra(&s, &lifts)) {
                        Ok(a) => algebra = Some(a),
                        Err(e) => errors.push(format!("lattice: {e}")),
                    }
                }
            }
            None => {
                if self.all_lifted_unaries {
                    errors.push("all_lifted_unaries: requires a lattice block".into());
                }
                match Algebra::new(q, self.zero.min(q - 1) as Elem, []) {
                    Ok(a) => algebra = Some(a),
                    Err(e) => errors.push(e.to_string()),
                }
            }
        }
        let mut algebra = match algebra {
            Some(a) if errors.is_empty() => a,
            _ => return Err(CliError::Invalid(errors)),
        };
        for (k, (name, table)) in explicit.into_iter().enumerate() {
            match algebra.with_op(name, table) {
                Ok(a) => algebra = a,
                Err(e) => errors.push(format!("operations[{k}].name: {e}")),
            }
        }
        if errors.is_empty() {
            Ok(algebra)
        } else {
            Err(CliError::Invalid(errors))
        }
    }

    /// Every operation written out explicitly.
    pub fn expanded(algebra: &Algebra) -> AlgebraFile {
        AlgebraFile {
            q: algebra.q(),
            zero: algebra.zero() as usize,
            operations: algebra
                .ops()
                .map(|(name, t)| OperationEntry {
                    name: name.to_string(),
                    arity: t.arity(),
                    entries: t.entries().iter().map(|&e| e as usize).collect(),
                })
                .collect(),
            lattice: None,
            all_lifted_unaries: false,
        }
    }

    pub fn to_text(&self) -> String {
        to_canonical(self)
    }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))
}

pub fn parse_file<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Json(path.display().to_string(), e))
}

pub fn load_algebra(path: &Path) -> CliResult<Algebra> {
    let file: AlgebraFile = parse_file(path)?;
    file.to_algebra().map_err(|e| match e {
        CliError::Invalid(msgs) => CliError::Invalid(
            msgs.into_iter()
                .map(|m| format!("{}: {m}", path.display()))
                .collect(),
        ),
        other => other,
    })
}

pub fn load_relation(path: &Path) -> CliResult<Relation> {
    parse_file(path)
}

pub fn load_table(path: &Path) -> CliResult<OpTable> {
    parse_file(path)
}

pub fn load_tables(path: &Path) -> CliResult<Vec<OpTable>> {
    parse_file(path)
}

pub fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::Io(path.display().to_string(), e))
}
