//! JSON wire formats. Exact rationals travel as `"p/q"` strings, complex
//! entries as `[re, im]` pairs, undefined images as `null`. Map-like
//! structures use BTreeMap so serialized output is byte-stable.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::action::PartialAction;
use crate::error::{Error, Result};
use crate::free_action::FreeAction;
use crate::group::FiniteGroup;
use crate::pbij::PartialBijection;
use crate::ratio::{rat_from_str, rat_to_string, Rat};
use crate::words::FreeGroupContext;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSchema {
    Table { table: Vec<Vec<usize>> },
    Perm { degree: usize, generators: Vec<Vec<usize>> },
    Free { rank: usize },
}

/// Either a finite group or a free-group context.
#[derive(Debug, Clone)]
pub enum GroupInput {
    Finite(Arc<FiniteGroup>),
    Free(FreeGroupContext),
}

pub fn load_group(schema: &GroupSchema) -> Result<GroupInput> {
    match schema {
        GroupSchema::Table { table } => {
            Ok(GroupInput::Finite(Arc::new(FiniteGroup::from_table(table.clone())?)))
        }
        GroupSchema::Perm { degree, generators } => Ok(GroupInput::Finite(Arc::new(
            FiniteGroup::from_permutations(*degree, generators)?,
        ))),
        GroupSchema::Free { rank } => Ok(GroupInput::Free(FreeGroupContext::new(*rank))),
    }
}

pub fn dump_group(group: &FiniteGroup) -> GroupSchema {
    GroupSchema::Table { table: group.table.clone() }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ActionSchema {
    pub group: GroupSchema,
    pub set_size: usize,
    /// element index (finite) or generator word like "a" (free) ↦ images
    pub maps: BTreeMap<String, Vec<Option<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<String>>,
}

#[derive(Debug, Clone)]
pub enum ActionInput {
    Finite(PartialAction),
    Free(FreeAction),
}

pub fn load_action(schema: &ActionSchema) -> Result<ActionInput> {
    let weights: Option<Vec<Rat>> = schema
        .weights
        .as_ref()
        .map(|w| w.iter().map(|s| rat_from_str(s)).collect::<Result<Vec<_>>>())
        .transpose()?;
    match load_group(&schema.group)? {
        GroupInput::Finite(group) => {
            let mut alpha = vec![PartialBijection::empty(schema.set_size); group.order];
            let mut seen = vec![false; group.order];
            for (key, mapping) in &schema.maps {
                let t: usize = key
                    .parse()
                    .map_err(|_| Error::Invalid(format!("bad element key {key:?}")))?;
                if t >= group.order {
                    return Err(Error::Invalid(format!("element {t} out of range")));
                }
                alpha[t] = PartialBijection::new(mapping.clone())?;
                seen[t] = true;
            }
            if !seen[group.identity] {
                alpha[group.identity] = PartialBijection::identity(schema.set_size);
            }
            Ok(ActionInput::Finite(PartialAction::new(group, alpha, weights)?))
        }
        GroupInput::Free(ctx) => {
            let mut gens = vec![PartialBijection::empty(schema.set_size); ctx.rank];
            for (key, mapping) in &schema.maps {
                let word = crate::words::parse_word(&ctx, key)?;
                if word.len() != 1 || word[0] < 0 {
                    return Err(Error::Invalid(format!(
                        "free actions are specified on generators; got key {key:?}"
                    )));
                }
                gens[(word[0] - 1) as usize] = PartialBijection::new(mapping.clone())?;
            }
            Ok(ActionInput::Free(FreeAction::new(ctx, gens, weights)?))
        }
    }
}

pub fn dump_action(a: &PartialAction) -> ActionSchema {
    let maps = a
        .group
        .elements()
        .map(|t| (t.to_string(), a.alpha[t].mapping.clone()))
        .collect();
    ActionSchema {
        group: dump_group(&a.group),
        set_size: a.set_size,
        maps,
        weights: if a.counting_weights() {
            None
        } else {
            Some(a.weights.iter().map(rat_to_string).collect())
        },
    }
}

pub fn dump_free_action(a: &FreeAction) -> ActionSchema {
    let maps = a
        .gens
        .iter()
        .enumerate()
        .map(|(i, p)| (crate::words::word_to_string(&[(i + 1) as i32]), p.mapping.clone()))
        .collect();
    ActionSchema {
        group: GroupSchema::Free { rank: a.ctx.rank },
        set_size: a.set_size,
        maps,
        weights: if a.counting_weights() {
            None
        } else {
            Some(a.weights.iter().map(rat_to_string).collect())
        },
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RepSchema {
    pub group: GroupSchema,
    pub dim: usize,
    /// element index ↦ row-major matrix of [re, im] pairs
    pub matrices: BTreeMap<String, Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inner_weights: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubgroupSchema {
    pub elements: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictStatus {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "NA")]
    NotApplicable,
}

/// One audited claim on one instance. FAIL entries carry a
/// machine-checkable counterexample in `witness`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AuditVerdict {
    pub id: String,
    pub instance: String,
    pub status: VerdictStatus,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub witness: serde_json::Value,
}

impl AuditVerdict {
    pub fn pass(id: &str, instance: &str) -> Self {
        AuditVerdict {
            id: id.into(),
            instance: instance.into(),
            status: VerdictStatus::Pass,
            witness: serde_json::Value::Null,
        }
    }

    pub fn fail(id: &str, instance: &str, witness: serde_json::Value) -> Self {
        AuditVerdict { id: id.into(), instance: instance.into(), status: VerdictStatus::Fail, witness }
    }

    pub fn na(id: &str, instance: &str, reason: &str) -> Self {
        AuditVerdict {
            id: id.into(),
            instance: instance.into(),
            status: VerdictStatus::NotApplicable,
            witness: serde_json::json!({ "reason": reason }),
        }
    }

    pub fn of(id: &str, instance: &str, ok: bool, witness: serde_json::Value) -> Self {
        if ok {
            AuditVerdict::pass(id, instance)
        } else {
            AuditVerdict::fail(id, instance, witness)
        }
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_json<T: Serialize>(path: &std::path::Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}


pub fn load_rep(schema: &RepSchema) -> Result<crate::prep::PartialRep> {
    let GroupInput::Finite(group) = load_group(&schema.group)? else {
        return Err(Error::FreeContextRejected("matrix representations"));
    };
    let d = schema.dim;
    let mut pi = Vec::with_capacity(group.order);
    for t in 0..group.order {
        let key = t.to_string();
        let mat = match schema.matrices.get(&key) {
            None if t == group.identity => crate::cx::CMat::identity(d),
            None => crate::cx::CMat::zeros(d, d),
            Some(rows) => {
                if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                    return Err(Error::DimMismatch(format!("matrix for element {t}")));
                }
                crate::cx::CMat::from_rows(
                    rows.iter()
                        .map(|r| r.iter().map(|&[re, im]| crate::cx::c(re, im)).collect())
                        .collect(),
                )
            }
        };
        pi.push(mat);
    }
    let rep = crate::prep::PartialRep::new(group, pi)?;
    match &schema.inner_weights {
        None => Ok(rep),
        Some(w) => {
            let weights = w
                .iter()
                .map(|s| rat_from_str(s).map(|r| crate::ratio::rat_to_f64(&r)))
                .collect::<Result<Vec<_>>>()?;
            rep.with_inner_weights(weights)
        }
    }
}

pub fn dump_rep(rep: &crate::prep::PartialRep) -> RepSchema {
    let matrices = (0..rep.group.order)
        .map(|t| {
            let m = &rep.pi[t];
            let rows = (0..m.rows)
                .map(|i| (0..m.cols).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                .collect();
            (t.to_string(), rows)
        })
        .collect();
    RepSchema {
        group: dump_group(&rep.group),
        dim: rep.dim,
        matrices,
        inner_weights: if rep.counting_inner() {
            None
        } else {
            Some(rep.inner_weights.iter().map(|&w| format!("{w}")).collect())
        },
    }
}

/// Subgroup file: the ambient group plus the element list.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubgroupFileSchema {
    pub group: GroupSchema,
    pub elements: Vec<usize>,
}

/// Envelope dump: classes with member lists, global action table, iota.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnvelopeSchema {
    pub classes: Vec<Vec<(usize, usize)>>,
    pub beta: Vec<Vec<usize>>,
    pub iota: Vec<usize>,
}

/// Groupoid certificate dump: {fibers, measures, defect:0}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupoidCertSchema {
    pub fibers: Vec<Vec<usize>>,
    pub measures: Vec<BTreeMap<String, String>>,
    pub defect: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::instance_e1;

    #[test]
    fn action_round_trip_is_identity() {
        let a = instance_e1();
        let schema = dump_action(&a);
        let text = serde_json::to_string(&schema).unwrap();
        let back: ActionSchema = serde_json::from_str(&text).unwrap();
        match load_action(&back).unwrap() {
            ActionInput::Finite(b) => {
                assert_eq!(a.set_size, b.set_size);
                assert_eq!(a.alpha, b.alpha);
                assert_eq!(a.weights, b.weights);
            }
            _ => panic!("expected finite"),
        }
        let text2 = serde_json::to_string(&back).unwrap();
        assert_eq!(text, text2);
    }

    #[test]
    fn rep_round_trip() {
        let rep = crate::prep::instance_e5();
        let schema = dump_rep(&rep);
        let text = serde_json::to_string(&schema).unwrap();
        let back: RepSchema = serde_json::from_str(&text).unwrap();
        let loaded = load_rep(&back).unwrap();
        for t in 0..4 {
            assert!(loaded.pi[t].approx_eq(&rep.pi[t], 0.0));
        }
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn free_action_round_trip() {
        let fa = crate::free_action::free_ball_action(2, 1);
        let schema = dump_free_action(&fa);
        match load_action(&schema).unwrap() {
            ActionInput::Free(fb) => {
                assert_eq!(fa.gens, fb.gens);
            }
            _ => panic!("expected free"),
        }
    }
}
