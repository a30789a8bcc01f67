//! Reproduction suite behind the `verify-paper` command.
//!
//! Every check recomputes a family of documented quantities from scratch and
//! compares them with the engine.  The identities are exact integer facts, so
//! there are no tolerances; a check ends in one of three states:
//!
//! * `Pass`: computed and documented values agree.
//! * `Warn`: the computed values disagree with a documented closed form in a
//!   tracked, understood way.  The detail line carries the diff and the engine
//!   implements the corrected form.
//! * `Fail`: an engine-level violation.  A correct build never produces one;
//!   the front end maps any `Fail` to a nonzero exit.
//!
//! Checks are independent and deterministic (fixed RNG seeds), so the suite
//! output is byte-identical across runs and survives `--filter` slicing.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ade::{catalog_classes, classify_engine, fcm_classification_check, ADEClass};
use crate::engine::{CurveSpec, Engine, LengthResult, LocalType};
use crate::error::Result;
use crate::numerical::NumericalSemigroup;
use crate::poly::PolyExpr;
use crate::scalar::{FieldSpec, Scalar};
use crate::series::{BranchElement, Precision, TruncatedSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Warn,
    Fail,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Warn => "WARN",
            CheckStatus::Fail => "FAIL",
        })
    }
}

/// One line of suite output.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

type CheckFn = fn() -> Result<(CheckStatus, String)>;

/// Runs the suite; `filter` keeps the checks whose name contains it.
pub fn run_suite(filter: Option<&str>) -> Vec<CheckResult> {
    let checks: &[(&str, CheckFn)] = &[
        ("catalog-invariants", catalog_invariants),
        ("catalog-closed-form-nu", catalog_closed_form_nu),
        ("d-family-consistency", d_family_consistency),
        ("d-family-printed-forms", d_family_printed_forms),
        ("identity-suite", identity_suite),
        ("hironaka-plane", hironaka_plane),
        ("hironaka-scope", hironaka_scope),
        ("gorenstein-symmetry", gorenstein_check),
        ("branch-gamma", branch_gamma),
        ("morse-classification", morse_classification),
        ("blowup-chains", blowup_chains),
        ("milnor-drop-printed-form", milnor_drop_printed_form),
        ("fcm-classification", fcm_classification),
        ("value-length-oracle", value_length_oracle),
        ("power-length-bound", power_length_bound),
        ("mu-vec-sum-printed-form", mu_vec_sum_printed_form),
        ("parity-f7", parity_f7),
        ("parity-f101", parity_f101),
    ];
    checks
        .iter()
        .filter(|(name, _)| filter.is_none_or(|f| name.contains(f)))
        .map(|&(name, body)| match body() {
            Ok((status, detail)) => CheckResult {
                name: name.into(),
                status,
                detail,
            },
            Err(err) => CheckResult {
                name: name.into(),
                status: CheckStatus::Fail,
                detail: format!("error: {err}"),
            },
        })
        .collect()
}

fn verdict(count: usize, what: &str, failures: Vec<String>) -> (CheckStatus, String) {
    if failures.is_empty() {
        (CheckStatus::Pass, format!("{what} on {count} curves"))
    } else {
        (CheckStatus::Fail, failures.join("; "))
    }
}

// ---------------------------------------------------------------------------
// Corpus.

type Terms<'a> = &'a [(u32, i64)];

const Z: Terms<'static> = &[];
const T: Terms<'static> = &[(1, 1)];

fn series(field: FieldSpec, terms: Terms<'_>) -> TruncatedSeries {
    TruncatedSeries::from_terms(
        field,
        terms.iter().map(|&(e, c)| (e, Scalar::from_i64(field, c))),
        Precision::Exact,
    )
    .expect("corpus term lists are well formed")
}

/// `data[j][i]` holds generator `j` restricted to branch `i`.
fn corpus_curve(field: FieldSpec, vars: &[&str], data: &[&[Terms<'_>]]) -> Result<CurveSpec> {
    let gens = data
        .iter()
        .map(|per_branch| {
            let comps = per_branch.iter().map(|t| series(field, t)).collect();
            BranchElement::new(field, comps)
        })
        .collect::<Result<Vec<_>>>()?;
    CurveSpec::new(field, vars.iter().map(|s| s.to_string()).collect(), gens)
}

/// The non-catalog members of the identity corpus.
fn extra_corpus(field: FieldSpec) -> Result<Vec<(String, CurveSpec)>> {
    let xy = &["x", "y"];
    let mut out = Vec::new();
    out.push((
        "node-axes".to_string(),
        corpus_curve(field, xy, &[&[T, Z], &[Z, T]])?,
    ));
    out.push((
        "node-diag".to_string(),
        corpus_curve(field, xy, &[&[T, T], &[T, &[(1, -1)]]])?,
    ));
    for k in 1..=5u32 {
        let m = 2 * k + 1;
        out.push((
            format!("branch-2-{m}"),
            corpus_curve(field, xy, &[&[&[(2, 1)]], &[&[(m, 1)]]])?,
        ));
    }
    out.push((
        "branch-3-7".to_string(),
        corpus_curve(field, xy, &[&[&[(3, 1)]], &[&[(7, 1)]]])?,
    ));
    out.push((
        "tangent-4-6-7".to_string(),
        corpus_curve(field, xy, &[&[&[(4, 1)]], &[&[(6, 1), (7, 1)]]])?,
    ));
    out.push((
        "three-axes".to_string(),
        corpus_curve(
            field,
            &["x", "y", "z"],
            &[&[T, Z, Z], &[Z, T, Z], &[Z, Z, T]],
        )?,
    ));
    out.push((
        "three-lines".to_string(),
        corpus_curve(field, xy, &[&[T, Z, T], &[Z, T, T]])?,
    ));
    out.push((
        "four-lines".to_string(),
        corpus_curve(field, xy, &[&[T, Z, T, T], &[Z, T, T, &[(1, -1)]]])?,
    ));
    out.push((
        "smooth-line".to_string(),
        corpus_curve(field, xy, &[&[T], &[&[(2, 1)]]])?,
    ));
    Ok(out)
}

/// Catalog plus extras, all over the rationals.
fn full_corpus() -> Result<Vec<(String, CurveSpec)>> {
    let q = FieldSpec::rationals();
    let mut out = Vec::new();
    for class in catalog_classes(8) {
        out.push((class.to_string(), class.catalog_curve(q)?));
    }
    out.extend(extra_corpus(q)?);
    Ok(out)
}

fn branch_deltas_of(spec: &CurveSpec) -> Result<Vec<u32>> {
    (0..spec.branches())
        .map(|i| Engine::new(spec.branch_curve(i)?).delta())
        .collect()
}

fn same_numerical(a: &NumericalSemigroup, b: &NumericalSemigroup) -> bool {
    a.conductor() == b.conductor() && a.small_values() == b.small_values()
}

// ---------------------------------------------------------------------------
// Checks.

fn catalog_invariants() -> Result<(CheckStatus, String)> {
    let q = FieldSpec::rationals();
    let classes = catalog_classes(8);
    let count = classes.len();
    let mut failures = Vec::new();
    for class in classes {
        let expected = class.expected_invariants();
        let mut engine = Engine::new(class.catalog_curve(q)?);
        let inv = engine.invariants()?;
        let got = (inv.milnor, inv.r, inv.mult, inv.delta);
        let want = (expected.mu, expected.r, expected.mult, expected.delta);
        if got != want {
            failures.push(format!("{class}: computed {got:?}, table {want:?}"));
        }
        if inv.mu_vec != expected.mu_vec {
            failures.push(format!(
                "{class}: conductor {:?}, table {:?}",
                inv.mu_vec, expected.mu_vec
            ));
        }
    }
    Ok(verdict(
        count,
        "(mu, r, mult, delta) and conductor vectors match the catalog table",
        failures,
    ))
}

fn catalog_closed_form_nu() -> Result<(CheckStatus, String)> {
    let q = FieldSpec::rationals();
    let mut count = 0;
    let mut failures = Vec::new();
    for class in catalog_classes(8) {
        let Some(closed) = class.closed_form_value_semigroup() else {
            continue;
        };
        count += 1;
        let mut engine = Engine::new(class.catalog_curve(q)?);
        let nu = engine.value_semigroup()?;
        if !nu.equals(&closed, false) {
            failures.push(format!(
                "{class}: computed members {:?} vs closed form {:?}",
                nu.box_members(),
                closed.box_members()
            ));
        }
    }
    Ok(verdict(
        count,
        "closed-form value semigroups match the computed ones exactly",
        failures,
    ))
}

fn d_family_consistency() -> Result<(CheckStatus, String)> {
    let q = FieldSpec::rationals();
    let mut failures = Vec::new();
    for k in 4..=8u32 {
        let class = ADEClass::d(k)?;
        let mut engine = Engine::new(class.catalog_curve(q)?);
        let inv = engine.invariants()?;
        let nu = engine.value_semigroup()?;
        let gamma = engine.gamma_semigroup()?;
        let pattern = if k % 2 == 0 {
            vec![2, k / 2, k / 2]
        } else {
            vec![2, k - 1]
        };
        if nu.gamma() != pattern.as_slice() {
            failures.push(format!(
                "D{k}: conductor {:?}, pattern {:?}",
                nu.gamma(),
                pattern
            ));
        }
        if !same_numerical(&nu.sum_image()?, &gamma) {
            failures.push(format!("D{k}: sum image differs from Gamma"));
        }
        if !inv.gorenstein || !nu.gorenstein_symmetry(&inv.conductor)? {
            failures.push(format!("D{k}: Gorenstein symmetry violated"));
        }
        if !nu.equals(&class.reference_nu(q)?, false) {
            failures.push(format!("D{k}: cached reference disagrees"));
        }
    }
    Ok(verdict(
        5,
        "sum image = Gamma, conductor pattern (2,n,n)/(2,2n) and Gorenstein symmetry",
        failures,
    ))
}

fn d_family_printed_forms() -> Result<(CheckStatus, String)> {
    let q = FieldSpec::rationals();
    let mut d4 = Engine::new(ADEClass::d(4)?.catalog_curve(q)?);
    let nu4 = d4.value_semigroup()?;
    let mut d5 = Engine::new(ADEClass::d(5)?.catalog_curve(q)?);
    let nu5 = d5.value_semigroup()?;
    let gamma5 = d5.gamma_semigroup()?;
    let members = gamma5.members_through(8);
    let facts_hold = nu4.gamma() == [2, 2, 2]
        && nu5.contains(&[2, 2])?
        && !gamma5.contains(2)
        && gamma5.contains(4)
        && gamma5.contains(5);
    if !facts_hold {
        return Ok((
            CheckStatus::Fail,
            format!(
                "computed D-family values changed: gamma(D4) = {:?}, Gamma(D5) members <= 8: {members:?}",
                nu4.gamma()
            ),
        ));
    }
    Ok((
        CheckStatus::Warn,
        format!(
            "documented D-family closed forms disagree with the computation and with each other: \
             the documented conductor (2,n-1,n-1) vs computed gamma(D4) = {:?}; the documented \
             Gamma(D) = {{0,3}} + (5..) omits 4, vs computed Gamma(D5) members <= 8: {members:?}; \
             the documented nu(D5) itself contains (2,2), which forces 4 into Gamma; reports use \
             the computed reference semigroups",
            nu4.gamma()
        ),
    ))
}

fn identity_suite() -> Result<(CheckStatus, String)> {
    let corpus = full_corpus()?;
    let count = corpus.len();
    let mut failures = Vec::new();
    for (name, spec) in corpus {
        let mut engine = Engine::new(spec.clone());
        let inv = engine.invariants()?;
        let nu = engine.value_semigroup()?;
        let gamma = engine.gamma_semigroup()?;
        if inv.milnor + inv.r != 2 * inv.delta + 1 {
            failures.push(format!("{name}: mu != 2*delta - r + 1"));
        }
        if inv.mult != inv.branch_mults.iter().sum::<u32>() || inv.mult < inv.r {
            failures.push(format!("{name}: multiplicity bookkeeping"));
        }
        if inv.delta + 1 < inv.mult || inv.delta + 1 < inv.r {
            failures.push(format!("{name}: delta lower bounds"));
        }
        if gamma.min_nonzero() != inv.mult {
            failures.push(format!(
                "{name}: min of Gamma is {}, mult is {}",
                gamma.min_nonzero(),
                inv.mult
            ));
        }
        let g = gamma
            .members_through(gamma.conductor() + 1)
            .into_iter()
            .filter(|&n| n > 0)
            .fold(0u32, num::integer::gcd);
        if g != 1 {
            failures.push(format!("{name}: gcd(Gamma) = {g}"));
        }
        for v in nu.box_members() {
            if v.contains(&0) && v.iter().any(|&c| c != 0) {
                failures.push(format!("{name}: axis point {v:?} in nu"));
            }
        }
        let r = inv.r as usize;
        if r >= 2 {
            let branch_delta = branch_deltas_of(&spec)?;
            for i in 0..r {
                for j in (i + 1)..r {
                    let cross = engine.intersection_multiplicity(i, j)?;
                    let pair_delta = Engine::new(spec.subcurve(&[i, j])?).delta()?;
                    if cross == 0 || pair_delta != branch_delta[i] + branch_delta[j] + cross {
                        failures.push(format!("{name}: pair ({i},{j}) delta split"));
                    }
                }
            }
        }
    }
    Ok(verdict(
        count,
        "mu/delta/mult identities, semigroup minima, axis property and pairwise delta splitting",
        failures,
    ))
}

fn hironaka_plane() -> Result<(CheckStatus, String)> {
    let mut count = 0;
    let mut failures = Vec::new();
    for (name, spec) in full_corpus()? {
        if spec.generator_count() != 2 {
            continue;
        }
        count += 1;
        let mut engine = Engine::new(spec.clone());
        let inv = engine.invariants()?;
        let r = inv.r as usize;
        let branch_delta = branch_deltas_of(&spec)?;
        let mut cross = 0u32;
        for i in 0..r {
            for j in (i + 1)..r {
                cross += engine.intersection_multiplicity(i, j)?;
            }
        }
        if inv.delta != branch_delta.iter().sum::<u32>() + cross {
            failures.push(format!("{name}: delta recursion"));
        }
        // Branch Milnor numbers are 2*delta_i, so the recursion reads
        // mu - 1 = sum(2*delta_i - 1) + 2*cross.
        let rhs: i64 =
            branch_delta.iter().map(|&d| 2 * i64::from(d) - 1).sum::<i64>() + 2 * i64::from(cross);
        if i64::from(inv.milnor) - 1 != rhs {
            failures.push(format!("{name}: mu recursion"));
        }
        if inv.milnor < (inv.r - 1) * (inv.r - 1) {
            failures.push(format!("{name}: mu below (r-1)^2"));
        }
        if inv.mu_vec.iter().sum::<u32>() != 2 * inv.delta {
            failures.push(format!("{name}: sum(mu_vec) != 2*delta"));
        }
    }
    Ok(verdict(
        count,
        "plane delta/mu recursions, mu >= (r-1)^2 and sum(mu_vec) = 2*delta",
        failures,
    ))
}

fn hironaka_scope() -> Result<(CheckStatus, String)> {
    let q = FieldSpec::rationals();
    let (_, spec) = extra_corpus(q)?
        .into_iter()
        .find(|(n, _)| n == "three-axes")
        .expect("corpus contains the coordinate axes");
    let mut engine = Engine::new(spec);
    let inv = engine.invariants()?;
    let mut cross = 0u32;
    for i in 0..3 {
        for j in (i + 1)..3 {
            cross += engine.intersection_multiplicity(i, j)?;
        }
    }
    // All three branches are smooth, so the documented general recursion
    // would give delta = cross and mu >= (r-1)^2.
    if inv.delta != 2 || cross != 3 || inv.milnor != 2 {
        return Ok((
            CheckStatus::Fail,
            format!(
                "coordinate-axes witness changed: delta = {}, pairwise sum = {cross}, mu = {}",
                inv.delta, inv.milnor
            ),
        ));
    }
    Ok((
        CheckStatus::Warn,
        format!(
            "the documented delta/mu recursions and the bound mu >= (r-1)^2 are stated for all \
             analytically unramified rings, but the three coordinate axes in 3-space give \
             delta = {} while branch deltas + pairwise intersections = {cross}, and \
             mu = {} < (r-1)^2 = {}; the pairwise terms over-count off the plane, so the engine \
             asserts these identities for plane curves only (pair splitting itself stays exact)",
            inv.delta,
            inv.milnor,
            (inv.r - 1) * (inv.r - 1)
        ),
    ))
}

fn gorenstein_check() -> Result<(CheckStatus, String)> {
    let corpus = full_corpus()?;
    let count = corpus.len();
    let mut failures = Vec::new();
    let mut non_gorenstein = Vec::new();
    for (name, spec) in corpus {
        let mut engine = Engine::new(spec);
        let inv = engine.invariants()?;
        let nu = engine.value_semigroup()?;
        let by_sum = inv.conductor.iter().sum::<u32>() == 2 * inv.delta;
        let by_symmetry = nu.gorenstein_symmetry(&inv.conductor)?;
        if inv.gorenstein != by_sum || by_sum != by_symmetry {
            failures.push(format!(
                "{name}: flag {}, sum test {by_sum}, symmetry {by_symmetry}",
                inv.gorenstein
            ));
        }
        if inv.r == 1 && inv.gorenstein != engine.gamma_semigroup()?.is_symmetric() {
            failures.push(format!("{name}: Gamma symmetry disagrees"));
        }
        if !inv.gorenstein {
            non_gorenstein.push(name);
        }
    }
    if !failures.is_empty() {
        return Ok((CheckStatus::Fail, failures.join("; ")));
    }
    Ok((
        CheckStatus::Pass,
        format!(
            "Gorenstein <=> sum(gamma) = 2*delta <=> Delta-symmetry on {count} curves \
             (non-Gorenstein members: {non_gorenstein:?})"
        ),
    ))
}

fn branch_gamma() -> Result<(CheckStatus, String)> {
    let mut count = 0;
    let mut failures = Vec::new();
    for (name, spec) in full_corpus()? {
        if spec.branches() != 1 {
            continue;
        }
        count += 1;
        let mut engine = Engine::new(spec);
        let inv = engine.invariants()?;
        let gamma = engine.gamma_semigroup()?;
        if gamma.conductor() != 2 * inv.delta {
            failures.push(format!("{name}: conductor(Gamma) != 2*delta"));
        }
        if gamma.genus() != inv.delta {
            failures.push(format!("{name}: gap count != delta"));
        }
        if inv.delta > 0 && gamma.contains(2 * inv.delta - 1) {
            failures.push(format!("{name}: 2*delta - 1 is not a gap"));
        }
    }
    Ok(verdict(
        count,
        "single-branch Gamma: conductor 2*delta, delta gaps, 2*delta - 1 a gap",
        failures,
    ))
}

fn morse_classification() -> Result<(CheckStatus, String)> {
    let corpus = full_corpus()?;
    let count = corpus.len();
    let mut failures = Vec::new();
    for (name, spec) in corpus {
        let mut engine = Engine::new(spec.clone());
        let inv = engine.invariants()?;
        let ade = classify_engine(&mut engine)?;
        let smooth = inv.delta == 0 && inv.r == 1;
        if (inv.milnor == 0) != smooth || smooth != (inv.local_type == LocalType::Regular) {
            failures.push(format!("{name}: mu = 0 predicate"));
        }
        if (inv.milnor == 1) != (inv.local_type == LocalType::DoublePoint) {
            failures.push(format!("{name}: mu = 1 vs double point"));
        }
        if (inv.milnor == 1) != (ade == Some(ADEClass::A(1))) {
            failures.push(format!("{name}: node classification"));
        }
        if (inv.delta == 1) != matches!(ade, Some(ADEClass::A(1)) | Some(ADEClass::A(2))) {
            failures.push(format!("{name}: delta = 1 vs A1/A2"));
        }
        if spec.generator_count() == 2 {
            if (inv.milnor == 2) != (ade == Some(ADEClass::A(2))) {
                failures.push(format!("{name}: mu = 2 vs A2"));
            }
            if inv.local_type == LocalType::OrdinaryMultiplePoint
                && inv.milnor != (inv.r - 1) * (inv.r - 1)
            {
                failures.push(format!("{name}: ordinary multiple point mu"));
            }
        }
    }
    Ok(verdict(
        count,
        "mu = 0/1/2, delta = 1 and ordinary-multiple-point predicates match classification",
        failures,
    ))
}

fn blowup_chains() -> Result<(CheckStatus, String)> {
    let q = FieldSpec::rationals();
    let mut failures = Vec::new();

    let mut cusp = Engine::new(ADEClass::a(2)?.catalog_curve(q)?);
    if cusp.blowup()?.rho != 1 {
        failures.push("cusp rho".to_string());
    }
    if cusp.multiplicity_sequence()? != [2] {
        failures.push("cusp multiplicity sequence".to_string());
    }

    let mut e8 = Engine::new(ADEClass::e(8)?.catalog_curve(q)?);
    let chain = e8.blowup_chain(None)?;
    let rhos: Vec<u32> = chain.iter().map(|s| s.rho).collect();
    let mults: Vec<u32> = chain.iter().map(|s| s.mult_before).collect();
    if rhos != [3, 1] || mults != [3, 2] {
        failures.push(format!("E8 chain: rho {rhos:?}, mult {mults:?}"));
    }

    let mut chains = 0;
    for (name, spec) in full_corpus()? {
        if spec.branches() != 1 {
            continue;
        }
        chains += 1;
        let mut engine = Engine::new(spec);
        let delta = engine.delta()?;
        let chain = engine.blowup_chain(None)?;
        if chain.iter().map(|s| s.rho).sum::<u32>() != delta {
            failures.push(format!("{name}: delta != sum(rho)"));
        }
        let mut mu = engine.invariants()?.milnor;
        for step in &chain {
            let e = step.mult_before;
            if step.rho + 1 < e || 2 * step.rho > e * (e - 1) {
                failures.push(format!("{name}: Kirby bounds at mult {e}"));
            }
            let mu_child = Engine::new(step.curve.clone()).invariants()?.milnor;
            if mu != mu_child + 2 * step.rho {
                failures.push(format!(
                    "{name}: mu {mu} -> {mu_child} with rho {}",
                    step.rho
                ));
            }
            mu = mu_child;
        }
        if mu != 0 {
            failures.push(format!("{name}: chain ends at mu = {mu}"));
        }
    }
    Ok(verdict(
        chains,
        "rho sequences, Kirby bounds and the 2*rho Milnor recursion along branch chains",
        failures,
    ))
}

fn milnor_drop_printed_form() -> Result<(CheckStatus, String)> {
    let q = FieldSpec::rationals();
    let mut e8 = Engine::new(ADEClass::e(8)?.catalog_curve(q)?);
    let mu = e8.invariants()?.milnor;
    let step = e8.blowup()?;
    let mu_child = Engine::new(step.curve.clone()).invariants()?.milnor;
    let drop = mu - mu_child;
    if drop != 2 * step.rho || drop == step.rho {
        return Ok((
            CheckStatus::Fail,
            format!("E8 blow-up drop {drop} vs rho {}", step.rho),
        ));
    }
    Ok((
        CheckStatus::Warn,
        format!(
            "the documented blow-up recursion appears once as mu - mu' = rho and once as \
             mu - mu' = 2*rho; computed E8: mu {mu} -> {mu_child} with rho = {}, so the drop \
             is 2*rho; the engine and the chain recursion use the 2*rho form",
            step.rho
        ),
    ))
}

fn fcm_classification() -> Result<(CheckStatus, String)> {
    let q = FieldSpec::rationals();
    let mut count = 0;
    let mut failures = Vec::new();
    for class in catalog_classes(8) {
        count += 1;
        let report = fcm_classification_check(&class.catalog_curve(q)?)?;
        if !report.has_finite_cm_type || report.ade != Some(class) || report.violation {
            failures.push(format!(
                "{class}: finite type {}, classified {:?}",
                report.has_finite_cm_type, report.ade
            ));
        }
    }
    for (name, spec) in extra_corpus(q)? {
        if !matches!(name.as_str(), "branch-3-7" | "tangent-4-6-7" | "four-lines") {
            continue;
        }
        count += 1;
        let report = fcm_classification_check(&spec)?;
        if report.has_finite_cm_type || report.ade.is_some() || report.violation {
            failures.push(format!(
                "{name}: finite type {}, classified {:?}",
                report.has_finite_cm_type, report.ade
            ));
        }
        if name == "branch-3-7" && Engine::new(spec).drozd_roiter_cyclicity()? != 2 {
            failures.push(format!("{name}: cyclicity"));
        }
    }
    Ok(verdict(
        count,
        "finite-type verdicts with zero classification violations",
        failures,
    ))
}

// ---------------------------------------------------------------------------
// Independent value oracle: dense, untruncated polynomial substitution.

fn dense_of(series: &TruncatedSeries) -> Vec<Scalar> {
    let mut out = Vec::new();
    for (exp, c) in series.terms() {
        let exp = exp as usize;
        if out.len() <= exp {
            out.resize(exp + 1, Scalar::zero(series.field()));
        }
        out[exp] = c.clone();
    }
    out
}

fn dense_add(field: FieldSpec, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(field); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] = out[i].add(c);
    }
    for (i, c) in b.iter().enumerate() {
        out[i] = out[i].add(c);
    }
    out
}

fn dense_mul(field: FieldSpec, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Scalar::zero(field); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    out
}

fn dense_pow(field: FieldSpec, a: &[Scalar], k: u32) -> Vec<Scalar> {
    let mut out = vec![Scalar::one(field)];
    for _ in 0..k {
        out = dense_mul(field, &out, a);
    }
    out
}

fn dense_order(a: &[Scalar]) -> Option<u32> {
    a.iter().position(|c| !c.is_zero()).map(|i| i as u32)
}

/// Substitutes the branch parametrization (one dense polynomial per
/// generator) into `poly`.
fn substitute(poly: &PolyExpr, gen_polys: &[Vec<Scalar>]) -> Vec<Scalar> {
    let field = poly.field();
    let mut acc = Vec::new();
    for (exps, c) in poly.terms() {
        let mut term = vec![c.clone()];
        for (j, &e) in exps.iter().enumerate() {
            term = dense_mul(field, &term, &dense_pow(field, &gen_polys[j], e));
        }
        acc = dense_add(field, &acc, &term);
    }
    acc
}

fn value_length_oracle() -> Result<(CheckStatus, String)> {
    let q = FieldSpec::rationals();
    let mut failures = Vec::new();
    let mut nzd_total = 0usize;
    let mut zero_divisors = 0usize;
    for (idx, class) in catalog_classes(8).into_iter().enumerate() {
        let spec = class.catalog_curve(q)?;
        let mut engine = Engine::new(spec.clone());
        let nu = engine.value_semigroup()?;
        let dense: Vec<Vec<Vec<Scalar>>> = (0..spec.branches())
            .map(|i| {
                spec.generators()
                    .iter()
                    .map(|g| dense_of(g.component(i)))
                    .collect()
            })
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE ^ ((idx as u64) << 8));
        let mut seen = 0usize;
        let mut attempts = 0usize;
        while seen < 100 && attempts < 2000 {
            attempts += 1;
            let mut poly = PolyExpr::new(q, 2);
            for _ in 0..rng.random_range(1..=4u32) {
                let exps = [rng.random_range(0..=3u32), rng.random_range(0..=3u32)];
                let c = rng.random_range(-3..=3i64);
                if c != 0 {
                    poly.add_term(&exps, Scalar::from_i64(q, c))?;
                }
            }
            if poly.is_zero() {
                continue;
            }
            let orders: Vec<Option<u32>> = dense
                .iter()
                .map(|gens| dense_order(&substitute(&poly, gens)))
                .collect();
            let engine_len = engine.length_of(&poly)?;
            let engine_vec = engine.value_vector_of(&poly)?;
            if orders.iter().any(Option::is_none) {
                zero_divisors += 1;
                if engine_len != LengthResult::NotNzd || engine_vec.is_some() {
                    failures.push(format!("{class}: zero divisor missed"));
                }
                continue;
            }
            seen += 1;
            nzd_total += 1;
            let expected: Vec<u32> = orders.into_iter().flatten().collect();
            let total: u32 = expected.iter().sum();
            if engine_len != LengthResult::Finite(total) {
                failures.push(format!(
                    "{class}: length {engine_len:?} vs substituted {total}"
                ));
            }
            if engine_vec.as_deref() != Some(expected.as_slice()) {
                failures.push(format!("{class}: value vector {engine_vec:?} vs {expected:?}"));
            }
            if !nu.contains(&expected)? {
                failures.push(format!("{class}: {expected:?} missing from nu"));
            }
        }
        if seen < 100 {
            failures.push(format!("{class}: only {seen} nonzerodivisor samples"));
        }
    }
    if !failures.is_empty() {
        return Ok((CheckStatus::Fail, failures.join("; ")));
    }
    Ok((
        CheckStatus::Pass,
        format!(
            "lengths and value vectors of {nzd_total} random elements match untruncated \
             substitution; {zero_divisors} zero divisors detected consistently"
        ),
    ))
}

fn power_length_bound() -> Result<(CheckStatus, String)> {
    let q = FieldSpec::rationals();
    // The documented bound fails already on the cusp at n = 1: the
    // second coordinate has order 2 = mult, not mult + rho.
    let mut cusp = Engine::new(ADEClass::a(2)?.catalog_curve(q)?);
    let y = PolyExpr::variable(q, 2, 1);
    let witness_len = cusp.length_of(&y)?;
    let rho = cusp.blowup()?.rho;
    let mult = cusp.invariants()?.mult;
    if witness_len != LengthResult::Finite(2) || mult + rho != 3 {
        return Ok((
            CheckStatus::Fail,
            format!("cusp witness changed: l(y) = {witness_len:?}, mult + rho = {}", mult + rho),
        ));
    }
    // The provable part, l(g) >= n*mult for g in m^n, on sampled products of
    // maximal-ideal generators.
    let mut samples = 0usize;
    let mut failures = Vec::new();
    for (idx, class) in catalog_classes(8).into_iter().enumerate() {
        let mut engine = Engine::new(class.catalog_curve(q)?);
        let mult = engine.invariants()?.mult;
        let x = PolyExpr::variable(q, 2, 0);
        let y = PolyExpr::variable(q, 2, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(0xB0B0 + idx as u64);
        for n in 1..=3u32 {
            for _ in 0..2 {
                let mut g = PolyExpr::constant(q, 2, Scalar::one(q));
                for _ in 0..n {
                    let a = Scalar::from_i64(q, rng.random_range(-2..=2i64));
                    let b = Scalar::from_i64(q, rng.random_range(-2..=2i64));
                    let lin = x.scalar_mul(&a).add(&y.scalar_mul(&b))?;
                    g = g.mul(&lin)?;
                }
                if g.is_zero() {
                    continue;
                }
                if let LengthResult::Finite(l) = engine.length_of(&g)? {
                    samples += 1;
                    if l < n * mult {
                        failures.push(format!("{class}: l = {l} below {n}*{mult}"));
                    }
                }
            }
        }
    }
    if !failures.is_empty() {
        return Ok((CheckStatus::Fail, failures.join("; ")));
    }
    Ok((
        CheckStatus::Warn,
        format!(
            "documented: l(g) >= n*mult + rho for g in the n-th power of the maximal ideal; \
             computed counterexample on the cusp: g = y has l = 2 < 3 = mult + rho at n = 1; \
             the provable bound l(g) >= n*mult holds on {samples} sampled products"
        ),
    ))
}

fn mu_vec_sum_printed_form() -> Result<(CheckStatus, String)> {
    let mut example = String::new();
    for (name, spec) in full_corpus()? {
        if spec.generator_count() != 2 {
            continue;
        }
        let mut engine = Engine::new(spec);
        let inv = engine.invariants()?;
        let total: u32 = inv.mu_vec.iter().sum();
        if total != inv.milnor + inv.r - 1 {
            return Ok((
                CheckStatus::Fail,
                format!(
                    "{name}: sum(mu_vec) = {total} differs from mu + r - 1 = {}",
                    inv.milnor + inv.r - 1
                ),
            ));
        }
        if name == "E7" {
            example = format!(
                "E7: computed 3 + 5 = {total} = mu + r - 1, while the documented form \
                 mu - r + 1 gives {}",
                inv.milnor + 1 - inv.r
            );
        }
    }
    Ok((
        CheckStatus::Warn,
        format!(
            "documented: the branch Milnor numbers sum to mu - r + 1; computed plane curves \
             satisfy sum(mu_vec) = mu + r - 1 = 2*delta ({example}); the two forms agree \
             only when r = 1"
        ),
    ))
}

fn parity_for(p: u64, include_d: bool) -> Result<(CheckStatus, String)> {
    let q = FieldSpec::rationals();
    let fp = FieldSpec::prime(p)?;
    let mut count = 0;
    let mut failures = Vec::new();
    for class in catalog_classes(8) {
        if !include_d && matches!(class, ADEClass::D(_)) {
            continue;
        }
        count += 1;
        let mut over_q = Engine::new(class.catalog_curve(q)?);
        let mut over_p = Engine::new(class.catalog_curve(fp)?);
        let inv_q = over_q.invariants()?;
        let inv_p = over_p.invariants()?;
        if (inv_q.milnor, inv_q.r, inv_q.mult, inv_q.delta, &inv_q.mu_vec)
            != (inv_p.milnor, inv_p.r, inv_p.mult, inv_p.delta, &inv_p.mu_vec)
        {
            failures.push(format!("{class}: invariants differ over F_{p}"));
        }
        let nu_p = over_p.value_semigroup()?;
        if !over_q.value_semigroup()?.equals(&nu_p, false) {
            failures.push(format!("{class}: value semigroups differ over F_{p}"));
        }
        if let Some(closed) = class.closed_form_value_semigroup() {
            if !nu_p.equals(&closed, false) {
                failures.push(format!("{class}: closed form fails over F_{p}"));
            }
        }
        if !same_numerical(&over_q.gamma_semigroup()?, &over_p.gamma_semigroup()?) {
            failures.push(format!("{class}: Gamma differs over F_{p}"));
        }
    }
    Ok(verdict(
        count,
        &format!("catalog invariants and semigroups over F_{p} match the rational ones"),
        failures,
    ))
}

fn parity_f7() -> Result<(CheckStatus, String)> {
    parity_for(7, false)
}

fn parity_f101() -> Result<(CheckStatus, String)> {
    parity_for(101, true)
}
