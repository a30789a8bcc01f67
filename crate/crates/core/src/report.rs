//! Assembled analysis reports.
//!
//! A [`Report`] bundles everything the engine can say about one curve: the
//! invariant table, both semigroups, and the ADE verdict.  The JSON rendering
//! is deterministic (object keys sorted, no floats), so identical inputs
//! produce byte-identical reports.

use serde_json::{json, Value};

use crate::ade::{classify_engine, ADEClass};
use crate::engine::{CurveInvariants, Engine};
use crate::error::Result;
use crate::numerical::NumericalSemigroup;
use crate::value_semigroup::ValueSemigroup;

/// Full analysis of a single curve.
#[derive(Debug, Clone)]
pub struct Report {
    pub invariants: CurveInvariants,
    pub gamma: NumericalSemigroup,
    pub nu: ValueSemigroup,
    pub ade: Option<ADEClass>,
    pub diagnostics: Vec<String>,
}

impl Report {
    /// Runs every analysis the engine offers on one curve.
    pub fn build(engine: &mut Engine) -> Result<Report> {
        let invariants = engine.invariants()?;
        let nu = engine.value_semigroup()?;
        let gamma = engine.gamma_semigroup()?;
        let ade = classify_engine(engine)?;
        let window = engine.certified_window()?;

        let mut diagnostics = vec![format!("certified at precision window {window}")];
        if let Some(ADEClass::D(k)) = ade {
            diagnostics.push(format!(
                "reference semigroup for D{k} computed from the catalog model"
            ));
        }

        Ok(Report {
            invariants,
            gamma,
            nu,
            ade,
            diagnostics,
        })
    }

    /// Stable JSON form.  `serde_json` objects are ordered maps, so keys come
    /// out sorted and repeated runs agree byte for byte.
    pub fn to_json(&self) -> Value {
        let inv = &self.invariants;
        json!({
            "ade": self.ade.map(|c| c.to_string()),
            "diagnostics": self.diagnostics,
            "gamma": self.gamma.to_json(),
            "invariants": {
                "branch_mults": inv.branch_mults,
                "certified": inv.certified,
                "conductor": inv.conductor,
                "delta": inv.delta,
                "edim": inv.edim,
                "gorenstein": inv.gorenstein,
                "local_type": inv.local_type.to_string(),
                "milnor": inv.milnor,
                "mult": inv.mult,
                "mu_vec": inv.mu_vec,
                "r": inv.r,
            },
            "nu": self.nu.to_json(),
        })
    }

    pub fn to_json_string(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.to_json())
            .expect("report serialization cannot fail");
        text.push('\n');
        text
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ade::ADEClass;
    use crate::engine::Engine;

    fn e7_engine() -> Engine {
        let spec = ADEClass::e(7)
            .unwrap()
            .catalog_curve(crate::scalar::FieldSpec::rationals())
            .unwrap();
        Engine::new(spec)
    }

    #[test]
    fn e7_report_contents() {
        let mut engine = e7_engine();
        let report = Report::build(&mut engine).unwrap();
        assert_eq!(report.invariants.milnor, 7);
        assert_eq!(report.invariants.r, 2);
        assert_eq!(report.nu.gamma(), &[3, 5]);
        assert_eq!(report.ade, Some(ADEClass::E7));

        let value = report.to_json();
        assert_eq!(value["ade"], json!("E7"));
        assert_eq!(value["invariants"]["milnor"], json!(7));
        assert_eq!(value["invariants"]["local_type"], json!("Other"));
        assert!(value["diagnostics"][0]
            .as_str()
            .unwrap()
            .contains("precision window"));
    }

    #[test]
    fn json_rendering_is_deterministic() {
        let first = Report::build(&mut e7_engine()).unwrap().to_json_string();
        let second = Report::build(&mut e7_engine()).unwrap().to_json_string();
        assert_eq!(first, second);
        assert!(first.ends_with('\n'));

        let parsed: Value = serde_json::from_str(&first).unwrap();
        let keys: Vec<String> = parsed.as_object().unwrap().keys().cloned().collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn d_family_reports_carry_a_reference_note() {
        let spec = ADEClass::d(5)
            .unwrap()
            .catalog_curve(crate::scalar::FieldSpec::rationals())
            .unwrap();
        let mut engine = Engine::new(spec);
        let report = Report::build(&mut engine).unwrap();
        assert_eq!(report.ade, Some(ADEClass::D(5)));
        assert!(report
            .diagnostics
            .iter()
            .any(|d| d.contains("catalog model")));
    }
}
