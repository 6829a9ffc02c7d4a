use serde::{Deserialize, Serialize};

use super::category::{CatPresentation, Relation};
use super::quiver::GradedQuiver;
use crate::error::{Error, Result};
use crate::xla::{Field, FieldDoc, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowDoc {
    pub name: String,
    pub from: String,
    pub to: String,
}

/// Coefficients are exact rationals written `"p/q"`; bare integers are accepted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffDoc {
    Text(String),
    Int(i64),
}

impl CoeffDoc {
    pub fn parse(&self, field: Field) -> Result<Scalar> {
        match self {
            CoeffDoc::Text(s) => field.parse_scalar(s),
            CoeffDoc::Int(n) => Ok(field.from_i64(*n)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub coeff: CoeffDoc,
    pub path: Vec<String>,
}

/// On-disk presentation. `nilpotency` is only meaningful for ungraded algebras.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationDoc {
    pub field: FieldDoc,
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
    #[serde(default)]
    pub relations: Vec<Vec<TermDoc>>,
    pub truncation: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nilpotency: Option<usize>,
}

impl PresentationDoc {
    pub fn from_json(text: &str) -> Result<PresentationDoc> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn quiver(&self) -> Result<GradedQuiver> {
        let arrows: Vec<(&str, &str, &str)> = self
            .arrows
            .iter()
            .map(|a| (a.name.as_str(), a.from.as_str(), a.to.as_str()))
            .collect();
        let objects: Vec<&str> = self.objects.iter().map(String::as_str).collect();
        GradedQuiver::new(&objects, &arrows)
    }

    /// Relations as parsed term lists, without homogeneity checks.
    pub fn relation_terms(&self, quiver: &GradedQuiver, field: Field) -> Result<Vec<Vec<(Scalar, super::Path)>>> {
        self.relations
            .iter()
            .enumerate()
            .map(|(index, terms)| {
                terms
                    .iter()
                    .map(|t| {
                        let c = t.coeff.parse(field)?;
                        let p = quiver.path_from_names(&t.path).map_err(|e| Error::InvalidRelation {
                            index,
                            reason: e.to_string(),
                        })?;
                        Ok((c, p))
                    })
                    .collect()
            })
            .collect()
    }

    /// Builds a graded presentation; `field` and `truncation` override the document.
    pub fn build(&self, field: Option<Field>, truncation: Option<usize>) -> Result<CatPresentation> {
        let field = match field {
            Some(f) => f,
            None => Field::from_doc(&self.field)?,
        };
        let quiver = self.quiver()?;
        let relations = self
            .relation_terms(&quiver, field)?
            .into_iter()
            .map(Relation::new)
            .collect();
        CatPresentation::new(quiver, field, relations, truncation.unwrap_or(self.truncation))
    }
}

impl CatPresentation {
    pub fn from_json(text: &str) -> Result<CatPresentation> {
        PresentationDoc::from_json(text)?.build(None, None)
    }

    pub fn to_doc(&self) -> PresentationDoc {
        let q = self.quiver();
        PresentationDoc {
            field: self.field().to_doc(),
            objects: q.objects().to_vec(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowDoc {
                    name: a.name.clone(),
                    from: q.object_name(a.source).to_string(),
                    to: q.object_name(a.target).to_string(),
                })
                .collect(),
            relations: self
                .relations()
                .iter()
                .map(|r| {
                    r.terms()
                        .iter()
                        .map(|(c, p)| TermDoc {
                            coeff: CoeffDoc::Text(c.to_canonical_string()),
                            path: p.names(q).into_iter().map(String::from).collect(),
                        })
                        .collect()
                })
                .collect(),
            truncation: self.truncation(),
            nilpotency: None,
        }
    }

    pub fn to_json(&self) -> String {
        self.to_doc().to_json()
    }
}
