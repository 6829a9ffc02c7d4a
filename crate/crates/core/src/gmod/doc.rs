use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::{CatPresentation, CoeffDoc};

use super::tensor::Cokernel;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleKind {
    Projective,
    Simple,
    Cokernel,
}

/// A shifted representable `Hom(−, object)[shift]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandDoc {
    pub object: String,
    #[serde(default)]
    pub shift: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CokernelDoc {
    pub rows: Vec<SummandDoc>,
    #[serde(default)]
    pub cols: Vec<SummandDoc>,
    /// `entries[i][j]`: coordinates in the hom basis of `Hom(col_j, row_i)`.
    #[serde(default)]
    pub entries: Vec<Vec<Vec<CoeffDoc>>>,
}

/// On-disk module description. With `opposite` set, the module lives over
/// the opposite of the referenced presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub presentation: String,
    pub kind: ModuleKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object: Option<String>,
    #[serde(default)]
    pub shift: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cokernel: Option<CokernelDoc>,
    #[serde(default)]
    pub opposite: bool,
}

impl ModuleDoc {
    pub fn from_json(text: &str) -> Result<ModuleDoc> {
        Ok(serde_json::from_str(text)?)
    }

    /// Builds the module's presentation over `base` (already flipped if `opposite`).
    pub fn build(&self, base: Arc<CatPresentation>) -> Result<Cokernel> {
        let object = || -> Result<usize> {
            let name = self
                .object
                .as_deref()
                .ok_or_else(|| Error::InvalidModule(format!("{:?} module needs an \"object\"", self.kind)))?;
            base.object_id(name)
        };
        match self.kind {
            ModuleKind::Projective => Cokernel::representable(base.clone(), object()?, -self.shift),
            ModuleKind::Simple => Cokernel::simple(base.clone(), object()?),
            ModuleKind::Cokernel => {
                let doc = self
                    .cokernel
                    .as_ref()
                    .ok_or_else(|| Error::InvalidModule("cokernel module needs a \"cokernel\" table".into()))?;
                let summands = |list: &[SummandDoc]| -> Result<Vec<(usize, i64)>> {
                    list.iter().map(|s| Ok((base.object_id(&s.object)?, -s.shift))).collect()
                };
                let rows = summands(&doc.rows)?;
                let cols = summands(&doc.cols)?;
                let entries = if doc.entries.is_empty() && cols.is_empty() {
                    vec![Vec::new(); rows.len()]
                } else {
                    doc.entries
                        .iter()
                        .map(|r| {
                            r.iter()
                                .map(|e| e.iter().map(|c| c.parse(base.field())).collect::<Result<Vec<_>>>())
                                .collect::<Result<Vec<_>>>()
                        })
                        .collect::<Result<Vec<_>>>()?
                };
                Cokernel::new(base.clone(), rows, cols, entries)
            }
        }
    }
}
