//! The catalog of simple curve singularities: the families `A_k` (`k ≥ 1`),
//! `D_k` (`k ≥ 4`) and the exceptional `E_6`, `E_7`, `E_8`, each with a
//! rational normal form, its expected invariants, and a reference value
//! semigroup.
//!
//! Classification is verification-based: the numerics `(mult, r, μ)` only
//! nominate candidates, and a candidate is accepted exactly when the full
//! value semigroup matches the reference up to branch permutation.  The `A`
//! and `E` reference semigroups are closed forms; the `D` references are
//! computed once from the normal form and cached, because the closed-form
//! descriptions in circulation are not consistent with the sum-map rule
//! (for instance `(2,2)` in the stated `ν(D_5)` would force `4 ∈ Γ` against
//! the stated `Γ = {3} ∪ (5 + ℕ)`); the verify suite prints the diff.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::engine::{CurveSpec, Engine};
use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};
use crate::series::{BranchElement, TruncatedSeries};
use crate::value_semigroup::ValueSemigroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ADEClass {
    A(u32),
    D(u32),
    E6,
    E7,
    E8,
}

impl fmt::Display for ADEClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ADEClass::A(k) => write!(f, "A{k}"),
            ADEClass::D(k) => write!(f, "D{k}"),
            ADEClass::E6 => write!(f, "E6"),
            ADEClass::E7 => write!(f, "E7"),
            ADEClass::E8 => write!(f, "E8"),
        }
    }
}

/// Invariants a catalog class must exhibit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectedInvariants {
    pub mu: u32,
    pub r: u32,
    pub mult: u32,
    pub mu_vec: Vec<u32>,
    pub delta: u32,
}

impl ADEClass {
    pub fn a(k: u32) -> Result<ADEClass> {
        if k == 0 {
            return Err(Error::InadmissibleIndex("A requires index ≥ 1".into()));
        }
        Ok(ADEClass::A(k))
    }

    pub fn d(k: u32) -> Result<ADEClass> {
        if k < 4 {
            return Err(Error::InadmissibleIndex(format!(
                "D requires index ≥ 4, got {k}"
            )));
        }
        Ok(ADEClass::D(k))
    }

    pub fn e(k: u32) -> Result<ADEClass> {
        match k {
            6 => Ok(ADEClass::E6),
            7 => Ok(ADEClass::E7),
            8 => Ok(ADEClass::E8),
            _ => Err(Error::InadmissibleIndex(format!(
                "E requires index in {{6, 7, 8}}, got {k}"
            ))),
        }
    }

    pub fn from_family(family: &str, index: u32) -> Result<ADEClass> {
        match family.trim().to_ascii_uppercase().as_str() {
            "A" => ADEClass::a(index),
            "D" => ADEClass::d(index),
            "E" => ADEClass::e(index),
            other => Err(Error::InadmissibleIndex(format!(
                "unknown family `{other}` (expected A, D or E)"
            ))),
        }
    }

    /// Accepts `A4`, `a4`, `A_4`, `D_5`, `E7`, ...
    pub fn parse(text: &str) -> Result<ADEClass> {
        let s = text.trim();
        let mut chars = s.chars();
        let family = chars.next().ok_or_else(|| {
            Error::InadmissibleIndex("empty class name".into())
        })?;
        let rest: &str = chars.as_str();
        let digits = rest.strip_prefix('_').unwrap_or(rest);
        let index: u32 = digits.parse().map_err(|_| {
            Error::InadmissibleIndex(format!("cannot read an index from `{text}`"))
        })?;
        ADEClass::from_family(&family.to_string(), index)
    }

    pub fn index(&self) -> u32 {
        match self {
            ADEClass::A(k) | ADEClass::D(k) => *k,
            ADEClass::E6 => 6,
            ADEClass::E7 => 7,
            ADEClass::E8 => 8,
        }
    }

    pub fn expected_invariants(&self) -> ExpectedInvariants {
        match *self {
            ADEClass::A(k) if k % 2 == 0 => {
                // A_{2n}: one branch (t^{2n+1}, t^2).
                ExpectedInvariants {
                    mu: k,
                    r: 1,
                    mult: 2,
                    mu_vec: vec![k],
                    delta: k / 2,
                }
            }
            ADEClass::A(k) => {
                // A_{2n+1}: two branches tangent to order n+1.
                let n = (k - 1) / 2;
                ExpectedInvariants {
                    mu: k,
                    r: 2,
                    mult: 2,
                    mu_vec: vec![n + 1, n + 1],
                    delta: n + 1,
                }
            }
            ADEClass::D(k) if k % 2 == 0 => {
                // D_{2n}: a transversal line and an A_{2n-3} pair.
                let n = k / 2;
                ExpectedInvariants {
                    mu: k,
                    r: 3,
                    mult: 3,
                    mu_vec: vec![2, n, n],
                    delta: n + 1,
                }
            }
            ADEClass::D(k) => {
                // D_{2n+1}: a line and a cusp-like branch.
                let n = (k - 1) / 2;
                ExpectedInvariants {
                    mu: k,
                    r: 2,
                    mult: 3,
                    mu_vec: vec![2, 2 * n],
                    delta: n + 1,
                }
            }
            ADEClass::E6 => ExpectedInvariants {
                mu: 6,
                r: 1,
                mult: 3,
                mu_vec: vec![6],
                delta: 3,
            },
            ADEClass::E7 => ExpectedInvariants {
                mu: 7,
                r: 2,
                mult: 3,
                mu_vec: vec![3, 5],
                delta: 4,
            },
            ADEClass::E8 => ExpectedInvariants {
                mu: 8,
                r: 1,
                mult: 3,
                mu_vec: vec![8],
                delta: 4,
            },
        }
    }

    /// Characteristics in which the rational normal form degenerates.
    pub fn guard_characteristic(&self, field: FieldSpec) -> Result<()> {
        let p = field.characteristic();
        let banned: &[u64] = match self {
            ADEClass::A(_) | ADEClass::D(_) => &[2],
            ADEClass::E6 | ADEClass::E7 | ADEClass::E8 => &[2, 3, 5],
        };
        if banned.contains(&p) {
            return Err(Error::UnsupportedCharacteristic(
                p,
                format!("the {self} normal form degenerates in characteristic {p}"),
            ));
        }
        Ok(())
    }

    /// The rational normal form as a branch parametrization, `x` first.
    pub fn catalog_curve(&self, field: FieldSpec) -> Result<CurveSpec> {
        self.guard_characteristic(field)?;
        let mono = |e: u32, c: i64| -> TruncatedSeries {
            TruncatedSeries::monomial(field, e, Scalar::from_i64(field, c))
        };
        let zero = TruncatedSeries::zero(field);
        // (x-components per branch, y-components per branch)
        let (xs, ys): (Vec<TruncatedSeries>, Vec<TruncatedSeries>) = match *self {
            ADEClass::A(k) if k % 2 == 0 => (vec![mono(k + 1, 1)], vec![mono(2, 1)]),
            ADEClass::A(k) => {
                let n = (k - 1) / 2;
                (
                    vec![mono(n + 1, 1), mono(n + 1, -1)],
                    vec![mono(1, 1), mono(1, 1)],
                )
            }
            ADEClass::D(k) if k % 2 == 0 => {
                let n = k / 2;
                (
                    vec![zero.clone(), mono(1, 1), mono(1, 1)],
                    vec![mono(1, 1), mono(n - 1, 1), mono(n - 1, -1)],
                )
            }
            ADEClass::D(k) => {
                let n = (k - 1) / 2;
                (
                    vec![zero.clone(), mono(2, 1)],
                    vec![mono(1, 1), mono(2 * n - 1, 1)],
                )
            }
            ADEClass::E6 => (vec![mono(4, 1)], vec![mono(3, 1)]),
            ADEClass::E7 => (vec![zero.clone(), mono(3, 1)], vec![mono(1, 1), mono(2, 1)]),
            ADEClass::E8 => (vec![mono(5, 1)], vec![mono(3, 1)]),
        };
        let x = BranchElement::new(field, xs)?;
        let y = BranchElement::new(field, ys)?;
        CurveSpec::new(field, vec!["x".into(), "y".into()], vec![x, y])
    }

    /// Closed-form reference semigroup; `None` for the D families, whose
    /// reference is engine-derived (see [`ADEClass::reference_nu`]).
    pub fn closed_form_value_semigroup(&self) -> Option<ValueSemigroup> {
        let build = |gamma: Vec<u32>, members: Vec<Vec<u32>>| {
            let set: BTreeSet<Vec<u32>> = members.into_iter().collect();
            Some(ValueSemigroup::new(gamma, set).expect("closed form is a valid semigroup"))
        };
        match *self {
            ADEClass::A(k) if k % 2 == 0 => {
                let members = (0..=k / 2).map(|j| vec![2 * j]).collect();
                build(vec![k], members)
            }
            ADEClass::A(k) => {
                let n = (k - 1) / 2;
                let members = (0..=n + 1).map(|j| vec![j, j]).collect();
                build(vec![n + 1, n + 1], members)
            }
            ADEClass::D(_) => None,
            ADEClass::E6 => build(vec![6], vec![vec![0], vec![3], vec![4], vec![6]]),
            ADEClass::E7 => build(
                vec![3, 5],
                vec![
                    vec![0, 0],
                    vec![1, 2],
                    vec![2, 3],
                    vec![2, 4],
                    vec![3, 3],
                    vec![3, 5],
                ],
            ),
            ADEClass::E8 => build(vec![8], vec![vec![0], vec![3], vec![5], vec![6], vec![8]]),
        }
    }

    /// The reference semigroup used by the classifier: the closed form where
    /// one exists, otherwise the semigroup of the normal form, computed once
    /// per (class, characteristic) and cached.
    pub fn reference_nu(&self, field: FieldSpec) -> Result<ValueSemigroup> {
        if let Some(nu) = self.closed_form_value_semigroup() {
            return Ok(nu);
        }
        static CACHE: OnceLock<Mutex<HashMap<(u32, u64), ValueSemigroup>>> = OnceLock::new();
        let key = (self.index(), field.characteristic());
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(nu) = cache.lock().unwrap().get(&key) {
            return Ok(nu.clone());
        }
        let spec = self.catalog_curve(field)?;
        let nu = Engine::new(spec).value_semigroup()?;
        let mut guard = cache.lock().unwrap();
        let entry = guard.entry(key).or_insert(nu);
        Ok(entry.clone())
    }
}

/// Every catalog class with Milnor index at most `max_index`.
pub fn catalog_classes(max_index: u32) -> Vec<ADEClass> {
    let mut out = Vec::new();
    for k in 1..=max_index {
        out.push(ADEClass::A(k));
    }
    for k in 4..=max_index {
        out.push(ADEClass::D(k));
    }
    for k in [6, 7, 8] {
        if k <= max_index {
            out.push(ADEClass::e(k).unwrap());
        }
    }
    out
}

/// Equal value semigroups up to branch permutation.
pub fn equisingular(c1: &CurveSpec, c2: &CurveSpec) -> Result<bool> {
    let nu1 = Engine::new(c1.clone()).value_semigroup()?;
    let nu2 = Engine::new(c2.clone()).value_semigroup()?;
    Ok(nu1.equals(&nu2, true))
}

/// Nominate candidates from `(mult, r, μ)`, then verify by full semigroup
/// equality; `None` means no catalog class matches.
pub fn classify_engine(engine: &mut Engine) -> Result<Option<ADEClass>> {
    let inv = engine.invariants()?;
    let mu = inv.milnor;
    let mut candidates: Vec<ADEClass> = Vec::new();
    match (inv.mult, inv.r) {
        (2, _) => {
            if mu >= 1 {
                candidates.push(ADEClass::A(mu));
            }
        }
        (3, 1) => {
            if mu == 6 {
                candidates.push(ADEClass::E6);
            }
            if mu == 8 {
                candidates.push(ADEClass::E8);
            }
        }
        // µ = 7 with two branches is ambiguous between E_7 and D_7 at this
        // level; the semigroup check resolves it.
        (3, 2) => {
            if mu == 7 {
                candidates.push(ADEClass::E7);
            }
            if mu >= 4 {
                candidates.push(ADEClass::D(mu));
            }
        }
        (3, 3)
            if mu >= 4 => {
                candidates.push(ADEClass::D(mu));
            }
        _ => {}
    }
    if candidates.is_empty() {
        return Ok(None);
    }
    let field = engine.spec().field();
    let nu = engine.value_semigroup()?;
    for candidate in candidates {
        if candidate.guard_characteristic(field).is_err() {
            continue;
        }
        let reference = candidate.reference_nu(field)?;
        if nu.equals(&reference, true) {
            return Ok(Some(candidate));
        }
    }
    Ok(None)
}

pub fn classify(spec: &CurveSpec) -> Result<Option<ADEClass>> {
    classify_engine(&mut Engine::new(spec.clone()))
}

/// The finite-CM-type test next to the classifier verdict; `violation` marks
/// a finite-CM-type curve the catalog does not recognize.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FcmReport {
    pub has_finite_cm_type: bool,
    pub ade: Option<ADEClass>,
    pub violation: bool,
}

pub fn fcm_classification_check(spec: &CurveSpec) -> Result<FcmReport> {
    let mut engine = Engine::new(spec.clone());
    let has_finite_cm_type = engine.has_finite_cm_type()?;
    let ade = classify_engine(&mut engine)?;
    Ok(FcmReport {
        has_finite_cm_type,
        ade,
        violation: has_finite_cm_type && ade.is_none(),
    })
}
