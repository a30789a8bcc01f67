//! JSON curve documents: the on-disk presentation of a curve by branch
//! parametrizations.
//!
//! ```json
//! {
//!   "field": {"kind": "rational"},
//!   "variables": ["x", "y"],
//!   "branches": [
//!     {"name": "b1", "series": {"x": [[2, "1"]], "y": [[3, "1"]]}}
//!   ],
//!   "truncation": 32
//! }
//! ```
//!
//! Every variable must appear in every branch (an empty list is the exact
//! zero series), exponents are strictly increasing, and coefficients are
//! strings in the scalar syntax (`"-3"`, `"1/2"`).  The optional `truncation`
//! declares the input series trusted only below that power of `t`; the engine
//! then never widens its window past it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::engine::CurveSpec;
use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};
use crate::series::{BranchElement, Precision, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FieldDocument {
    Rational,
    Prime { p: u64 },
}

impl FieldDocument {
    pub fn to_field(&self) -> Result<FieldSpec> {
        match self {
            FieldDocument::Rational => Ok(FieldSpec::rationals()),
            FieldDocument::Prime { p } => FieldSpec::prime(*p),
        }
    }

    pub fn from_field(field: FieldSpec) -> FieldDocument {
        match field.characteristic() {
            0 => FieldDocument::Rational,
            p => FieldDocument::Prime { p },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Variable name to `[exponent, coefficient]` pairs, exponents strictly
    /// increasing.
    pub series: BTreeMap<String, Vec<(u32, String)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDocument {
    pub field: FieldDocument,
    pub variables: Vec<String>,
    pub branches: Vec<BranchDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<u32>,
}

impl CurveDocument {
    pub fn from_json(text: &str) -> Result<CurveDocument> {
        serde_json::from_str(text).map_err(|e| Error::SchemaError(format!("curve document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serialization cannot fail")
    }

    fn branch_label(&self, i: usize) -> String {
        match &self.branches[i].name {
            Some(name) => format!("`{name}`"),
            None => format!("{}", i + 1),
        }
    }

    /// Validate the document and build the engine presentation.
    pub fn to_spec(&self) -> Result<CurveSpec> {
        let field = self.field.to_field()?;
        if self.variables.is_empty() {
            return Err(Error::SchemaError("no variables declared".into()));
        }
        if self.branches.is_empty() {
            return Err(Error::SchemaError("no branches declared".into()));
        }
        for (i, v) in self.variables.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::SchemaError("empty variable name".into()));
            }
            if self.variables[..i].contains(v) {
                return Err(Error::SchemaError(format!("duplicate variable `{v}`")));
            }
        }
        if let Some(t) = self.truncation {
            if t == 0 {
                return Err(Error::SchemaError("truncation 0 leaves no data".into()));
            }
        }

        let mut parsed: Vec<BTreeMap<&str, TruncatedSeries>> = Vec::new();
        for (i, branch) in self.branches.iter().enumerate() {
            let label = self.branch_label(i);
            for key in branch.series.keys() {
                if !self.variables.contains(key) {
                    return Err(Error::SchemaError(format!(
                        "branch {label} has a series for unknown variable `{key}`"
                    )));
                }
            }
            let mut series = BTreeMap::new();
            for v in &self.variables {
                let pairs = branch.series.get(v).ok_or_else(|| {
                    Error::SchemaError(format!(
                        "branch {label} is missing the series for variable `{v}`"
                    ))
                })?;
                let mut terms = Vec::with_capacity(pairs.len());
                let mut last: Option<u32> = None;
                for (exp, coeff_text) in pairs {
                    if let Some(prev) = last {
                        if *exp <= prev {
                            return Err(Error::SchemaError(format!(
                                "branch {label}, variable `{v}`: exponents must be \
                                 strictly increasing (saw {exp} after {prev})"
                            )));
                        }
                    }
                    last = Some(*exp);
                    let coeff = Scalar::parse(field, coeff_text)?;
                    terms.push((*exp, coeff));
                }
                series.insert(
                    v.as_str(),
                    TruncatedSeries::from_terms(field, terms, Precision::Exact)?,
                );
            }
            parsed.push(series);
        }

        let generators: Vec<BranchElement> = self
            .variables
            .iter()
            .map(|v| {
                let comps = parsed.iter().map(|b| b[v.as_str()].clone()).collect();
                BranchElement::new(field, comps)
            })
            .collect::<Result<_>>()?;

        let spec = CurveSpec::new(field, self.variables.clone(), generators)?
            .with_truncation_hint(self.truncation);

        // Branches that the declared precision cannot tell apart would make
        // every pairwise invariant uncertifiable.
        if self.truncation.is_some() {
            let r = spec.branches();
            for i in 0..r {
                for j in i + 1..r {
                    let identical = spec
                        .generators()
                        .iter()
                        .all(|g| g.component(i) == g.component(j));
                    if identical {
                        return Err(Error::CoincidentBranches(i + 1, j + 1));
                    }
                }
            }
        }
        Ok(spec)
    }

    /// Document form of a presentation with exact generators (catalog
    /// curves); branch names are positional.
    pub fn from_spec(spec: &CurveSpec) -> CurveDocument {
        let r = spec.branches();
        let branches = (0..r)
            .map(|i| {
                let series = spec
                    .variable_names()
                    .iter()
                    .zip(spec.generators())
                    .map(|(v, g)| {
                        let pairs = g
                            .component(i)
                            .terms()
                            .map(|(e, c)| (e, c.to_string()))
                            .collect();
                        (v.clone(), pairs)
                    })
                    .collect();
                BranchDocument {
                    name: Some(format!("b{}", i + 1)),
                    series,
                }
            })
            .collect();
        CurveDocument {
            field: FieldDocument::from_field(spec.field()),
            variables: spec.variable_names().to_vec(),
            branches,
            truncation: spec.truncation_hint(),
        }
    }
}

/// Load a validated engine presentation from a document.
pub fn load_curve(doc: &CurveDocument) -> Result<CurveSpec> {
    doc.to_spec()
}

#[cfg(test)]
mod tests {
    use super::*;

    const CUSP: &str = r#"{
        "field": {"kind": "rational"},
        "variables": ["x", "y"],
        "branches": [
            {"name": "b1", "series": {"x": [[2, "1"]], "y": [[3, "1"]]}}
        ]
    }"#;

    #[test]
    fn cusp_document_loads() {
        let doc = CurveDocument::from_json(CUSP).unwrap();
        let spec = doc.to_spec().unwrap();
        assert_eq!(spec.branches(), 1);
        assert_eq!(spec.variable_names(), ["x", "y"]);
        assert_eq!(
            crate::engine::Engine::new(spec).delta().unwrap(),
            1
        );
    }

    #[test]
    fn document_round_trips_through_json() {
        let doc = CurveDocument::from_json(CUSP).unwrap();
        let text = doc.to_json();
        let again = CurveDocument::from_json(&text).unwrap();
        assert_eq!(doc, again);
    }

    #[test]
    fn spec_export_round_trips() {
        let doc = CurveDocument::from_json(CUSP).unwrap();
        let spec = doc.to_spec().unwrap();
        let exported = CurveDocument::from_spec(&spec);
        let spec2 = exported.to_spec().unwrap();
        assert_eq!(spec.generators(), spec2.generators());
    }

    #[test]
    fn missing_variable_is_a_schema_error() {
        let text = r#"{
            "field": {"kind": "rational"},
            "variables": ["x", "y"],
            "branches": [{"series": {"x": [[2, "1"]]}}]
        }"#;
        let doc = CurveDocument::from_json(text).unwrap();
        assert!(matches!(doc.to_spec(), Err(Error::SchemaError(_))));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{
            "field": {"kind": "rational"},
            "variables": ["x"],
            "branches": [{"series": {"x": [[1, "1"]]}}],
            "comment": "oops"
        }"#;
        assert!(matches!(
            CurveDocument::from_json(text),
            Err(Error::SchemaError(_))
        ));
    }

    #[test]
    fn decreasing_exponents_are_rejected() {
        let text = r#"{
            "field": {"kind": "rational"},
            "variables": ["x"],
            "branches": [{"series": {"x": [[3, "1"], [2, "1"]]}}]
        }"#;
        let doc = CurveDocument::from_json(text).unwrap();
        assert!(matches!(doc.to_spec(), Err(Error::SchemaError(_))));
    }

    #[test]
    fn prime_field_documents_load() {
        let text = r#"{
            "field": {"kind": "prime", "p": 7},
            "variables": ["x", "y"],
            "branches": [
                {"series": {"x": [[3, "1"]], "y": [[4, "6"]]}}
            ]
        }"#;
        let doc = CurveDocument::from_json(text).unwrap();
        let spec = doc.to_spec().unwrap();
        assert_eq!(spec.field().characteristic(), 7);
    }

    #[test]
    fn truncated_coincident_branches_are_rejected() {
        let text = r#"{
            "field": {"kind": "rational"},
            "variables": ["x"],
            "branches": [
                {"series": {"x": [[1, "1"]]}},
                {"series": {"x": [[1, "1"], [9, "1"]]}}
            ],
            "truncation": 4
        }"#;
        let doc = CurveDocument::from_json(text).unwrap();
        assert!(matches!(
            doc.to_spec(),
            Err(Error::CoincidentBranches(1, 2))
        ));
    }
}
