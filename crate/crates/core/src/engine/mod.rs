//! The singularity engine: invariants of a curve germ from its branch
//! parametrizations.
//!
//! A curve is presented by `m` generators, each an element of `∏_i k[[t_i]]`
//! with one component per branch.  The engine builds the truncated algebra
//! model, certifies a conductor window, and derives everything else from the
//! certified model:
//!
//! * `δ = Σ γ_i − dim_k(V mod conductor box)` and `μ = 2δ − r + 1`;
//! * branch multiplicities from per-branch staircases, `mult = Σ e_i`;
//! * the relative Milnor vector `μ_i = μ(R/p_i) + Σ_{j≠i} i(p_i, p_j)`;
//! * the value semigroup by a window-box subspace scan;
//! * embedding dimension, Gorenstein symmetry, the Drozd–Roiter cyclicity
//!   bound, and the blow-up chain (see [`blowup`]).
//!
//! Certification rule: a window `T` is accepted once, on every branch,
//! `T ≥ 2·γ_i + max_j ord_i(g_j)` and the conductor tail was actually
//! observed.  Until then the engine doubles `T`, up to a configurable cap
//! (`CURVEMILNOR_PRECISION_CAP`), and reports `PrecisionExhausted` past it.

mod blowup;
mod model;

pub use blowup::BlowupStep;
pub use model::{AlgebraModel, Monomial};

use std::collections::BTreeMap;
use std::fmt;

use num::BigInt;

use crate::error::{Error, Result};
use crate::numerical::NumericalSemigroup;
use crate::poly::PolyExpr;
use crate::scalar::FieldSpec;
use crate::series::{BranchElement, OrderResult};
use crate::value_semigroup::ValueSemigroup;

use model::Eliminator;

/// How a spec came to exist; derived specs (blow-up children) may contain
/// units and idempotent-like generators and skip the local-ring validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SpecOrigin {
    Root,
    Derived,
}

/// A curve germ given by generator parametrizations.
#[derive(Debug, Clone)]
pub struct CurveSpec {
    field: FieldSpec,
    variable_names: Vec<String>,
    generators: Vec<BranchElement>,
    truncation_hint: Option<u32>,
    origin: SpecOrigin,
}

impl CurveSpec {
    /// Validate and construct a root curve: generators in the maximal ideal,
    /// no branch collapsing onto a proper subring of `k[[t]]`, branches
    /// pairwise distinct as far as the given data can tell.
    pub fn new(
        field: FieldSpec,
        variable_names: Vec<String>,
        generators: Vec<BranchElement>,
    ) -> Result<CurveSpec> {
        let spec = CurveSpec::assemble(field, variable_names, generators, SpecOrigin::Root)?;
        spec.validate_root()?;
        Ok(spec)
    }

    pub(crate) fn new_derived(
        field: FieldSpec,
        variable_names: Vec<String>,
        generators: Vec<BranchElement>,
    ) -> Result<CurveSpec> {
        CurveSpec::assemble(field, variable_names, generators, SpecOrigin::Derived)
    }

    fn assemble(
        field: FieldSpec,
        variable_names: Vec<String>,
        generators: Vec<BranchElement>,
        origin: SpecOrigin,
    ) -> Result<CurveSpec> {
        if generators.is_empty() {
            return Err(Error::DimensionMismatch(
                "a curve needs at least one generator".into(),
            ));
        }
        if variable_names.len() != generators.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} generator names for {} generators",
                variable_names.len(),
                generators.len()
            )));
        }
        for (i, name) in variable_names.iter().enumerate() {
            if variable_names[..i].contains(name) {
                return Err(Error::SchemaError(format!(
                    "duplicate generator name `{name}`"
                )));
            }
        }
        let r = generators[0].branch_count();
        for g in &generators {
            if g.field() != field {
                return Err(Error::FieldMismatch(
                    "generator field differs from curve field".into(),
                ));
            }
            if g.branch_count() != r {
                return Err(Error::DimensionMismatch(
                    "generators disagree on the number of branches".into(),
                ));
            }
        }
        Ok(CurveSpec {
            field,
            variable_names,
            generators,
            truncation_hint: None,
            origin,
        })
    }

    fn validate_root(&self) -> Result<()> {
        let r = self.branches();
        for (j, g) in self.generators.iter().enumerate() {
            for i in 0..r {
                match g.component(i).order() {
                    OrderResult::Finite(0) => {
                        return Err(Error::NotLocal(format!(
                            "generator `{}` is a unit on branch {}",
                            self.variable_names[j],
                            i + 1
                        )))
                    }
                    OrderResult::UnknownBeyond(0) => {
                        return Err(Error::NotLocal(format!(
                            "generator `{}` has no known coefficients on branch {}",
                            self.variable_names[j],
                            i + 1
                        )))
                    }
                    _ => {}
                }
            }
        }
        for i in 0..r {
            // Exponent-support gcd over all generators: a common divisor d > 1
            // traps the branch image inside k[[t^d]], so delta would be
            // infinite.  Skipped for truncated components, where unseen terms
            // could still break the divisor; certification catches those.
            let mut gcd = 0u32;
            let mut all_exact = true;
            let mut all_zero = true;
            for g in &self.generators {
                let comp = g.component(i);
                if !comp.precision().is_exact() {
                    all_exact = false;
                }
                for (exp, _) in comp.terms() {
                    all_zero = false;
                    gcd = gcd_u32(gcd, exp);
                }
            }
            if all_zero && all_exact {
                return Err(Error::DegenerateBranch(
                    i + 1,
                    "every generator vanishes identically".into(),
                ));
            }
            if all_exact && gcd > 1 {
                return Err(Error::DegenerateBranch(
                    i + 1,
                    format!("generator exponents share the common divisor {gcd}"),
                ));
            }
        }
        for i in 0..r {
            for j in i + 1..r {
                let identical = self
                    .generators
                    .iter()
                    .all(|g| g.component(i) == g.component(j));
                if identical {
                    return Err(Error::CoincidentBranches(i + 1, j + 1));
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn branches(&self) -> usize {
        self.generators[0].branch_count()
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn variable_names(&self) -> &[String] {
        &self.variable_names
    }

    pub fn generators(&self) -> &[BranchElement] {
        &self.generators
    }

    pub fn truncation_hint(&self) -> Option<u32> {
        self.truncation_hint
    }

    /// Declare the input series trusted only below `t^hint`; the engine will
    /// not widen its window past it.
    pub fn with_truncation_hint(mut self, hint: Option<u32>) -> CurveSpec {
        if let Some(h) = hint {
            self.generators = self
                .generators
                .iter()
                .map(|g| g.truncate_to(&vec![h; g.branch_count()]))
                .collect();
        }
        self.truncation_hint = hint;
        self
    }

    /// Restriction to a subset of branches (the quotient by the complementary
    /// minimal primes).
    pub fn subcurve(&self, keep: &[usize]) -> Result<CurveSpec> {
        let r = self.branches();
        if keep.is_empty() {
            return Err(Error::DimensionMismatch("kept branch set is empty".into()));
        }
        for (pos, &i) in keep.iter().enumerate() {
            if i >= r {
                return Err(Error::DimensionMismatch(format!(
                    "branch index {} out of range (curve has {} branches)",
                    i + 1,
                    r
                )));
            }
            if keep[..pos].contains(&i) {
                return Err(Error::DimensionMismatch(format!(
                    "branch index {} repeated",
                    i + 1
                )));
            }
        }
        let generators: Vec<BranchElement> = self
            .generators
            .iter()
            .map(|g| {
                let comps = keep.iter().map(|&i| g.component(i).clone()).collect();
                BranchElement::new(self.field, comps)
            })
            .collect::<Result<_>>()?;
        let mut sub = match self.origin {
            SpecOrigin::Root => {
                CurveSpec::new(self.field, self.variable_names.clone(), generators)?
            }
            SpecOrigin::Derived => {
                CurveSpec::new_derived(self.field, self.variable_names.clone(), generators)?
            }
        };
        sub.truncation_hint = self.truncation_hint;
        Ok(sub)
    }

    pub fn branch_curve(&self, i: usize) -> Result<CurveSpec> {
        self.subcurve(&[i])
    }

    /// Largest finite generator order on a branch (at least 1); feeds the
    /// certification margin.
    fn max_generator_order(&self, branch: usize) -> Result<u32> {
        let mut best = 1u32;
        for (j, g) in self.generators.iter().enumerate() {
            match g.component(branch).order() {
                OrderResult::Finite(o) => best = best.max(o),
                OrderResult::ExactZero => {}
                OrderResult::UnknownBeyond(b) => {
                    return Err(Error::PrecisionExhausted(format!(
                        "order of generator `{}` on branch {} unresolved below t^{}",
                        self.variable_names[j],
                        branch + 1,
                        b
                    )))
                }
            }
        }
        Ok(best)
    }
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

/// Truncation policy for the certification loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    /// First window tried.
    pub initial_truncation: u32,
    /// Doubling stops here; an uncertified model at the cap is an error.
    pub truncation_cap: u32,
}

impl Default for EngineConfig {
    fn default() -> EngineConfig {
        EngineConfig {
            initial_truncation: 16,
            truncation_cap: 1 << 14,
        }
    }
}

impl EngineConfig {
    /// Default config with the cap optionally overridden by the
    /// `CURVEMILNOR_PRECISION_CAP` environment variable.
    pub fn from_env() -> EngineConfig {
        let mut config = EngineConfig::default();
        if let Ok(text) = std::env::var("CURVEMILNOR_PRECISION_CAP") {
            if let Ok(cap) = text.trim().parse::<u32>() {
                if cap >= 2 {
                    config.truncation_cap = cap;
                }
            }
        }
        config
    }
}

/// Coarse position of a curve in the classification landscape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalType {
    Regular,
    DoublePoint,
    OrdinaryMultiplePoint,
    Other,
}

impl fmt::Display for LocalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            LocalType::Regular => "Regular",
            LocalType::DoublePoint => "DoublePoint",
            LocalType::OrdinaryMultiplePoint => "OrdinaryMultiplePoint",
            LocalType::Other => "Other",
        };
        f.write_str(text)
    }
}

/// The invariant bundle of a certified curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveInvariants {
    pub delta: u32,
    pub milnor: u32,
    pub r: u32,
    pub mult: u32,
    pub branch_mults: Vec<u32>,
    pub edim: u32,
    pub mu_vec: Vec<u32>,
    pub conductor: Vec<u32>,
    pub gorenstein: bool,
    pub local_type: LocalType,
    pub certified: bool,
}

/// `length_of` result: the colength of a principal ideal, or the verdict
/// that the element is a zero divisor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LengthResult {
    Finite(u32),
    NotNzd,
}

/// Outcome of the Noether-type membership test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoetherOutcome {
    MembershipInNormalization,
    LengthObstruction,
    Neither,
}

impl fmt::Display for NoetherOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            NoetherOutcome::MembershipInNormalization => "MembershipInNormalization",
            NoetherOutcome::LengthObstruction => "LengthObstruction",
            NoetherOutcome::Neither => "Neither",
        };
        f.write_str(text)
    }
}

/// Build the raw (uncertified) model of a spec at a fixed window; mainly for
/// cross-checking the engine against independent spans.
pub fn build_model(spec: &CurveSpec, truncations: &[u32]) -> Result<AlgebraModel> {
    if truncations.len() != spec.branches() {
        return Err(Error::DimensionMismatch(format!(
            "{} truncation orders for {} branches",
            truncations.len(),
            spec.branches()
        )));
    }
    AlgebraModel::build(spec.field(), spec.generators(), truncations)
}

#[derive(Debug, Clone)]
pub(crate) struct Certified {
    pub model: AlgebraModel,
    pub gamma: Vec<u32>,
    pub window: u32,
}

/// Stateful computation front end for one curve; caches the certified model
/// and derived data.
#[derive(Debug)]
pub struct Engine {
    spec: CurveSpec,
    config: EngineConfig,
    certified: Option<Certified>,
    invariants_cache: Option<CurveInvariants>,
    nu_cache: Option<ValueSemigroup>,
    branch_delta_cache: Option<Vec<u32>>,
    pair_cache: BTreeMap<(usize, usize), u32>,
}

impl Engine {
    pub fn new(spec: CurveSpec) -> Engine {
        Engine::with_config(spec, EngineConfig::from_env())
    }

    pub fn with_config(spec: CurveSpec, config: EngineConfig) -> Engine {
        Engine {
            spec,
            config,
            certified: None,
            invariants_cache: None,
            nu_cache: None,
            branch_delta_cache: None,
            pair_cache: BTreeMap::new(),
        }
    }

    pub fn spec(&self) -> &CurveSpec {
        &self.spec
    }

    fn sub_engine(&self, keep: &[usize]) -> Result<Engine> {
        Ok(Engine::with_config(self.spec.subcurve(keep)?, self.config))
    }

    /// Largest window the input precision admits.
    fn window_limit(&self) -> u32 {
        match self.spec.truncation_hint {
            Some(h) => h.min(self.config.truncation_cap),
            None => self.config.truncation_cap,
        }
    }

    fn ensure_certified(&mut self) -> Result<()> {
        if self.certified.is_some() {
            return Ok(());
        }
        let r = self.spec.branches();
        let limit = self.window_limit();
        if limit < 2 {
            return Err(Error::PrecisionExhausted(format!(
                "window limit {limit} is below the minimal window 2"
            )));
        }
        let mut window = self.config.initial_truncation.clamp(2, limit);
        loop {
            let model = AlgebraModel::build(self.spec.field, &self.spec.generators, &vec![window; r])?;
            let gamma: Vec<u32> = (0..r).map(|i| model.tail_start(i)).collect();
            let mut ok = true;
            for (i, &g) in gamma.iter().enumerate() {
                let margin = 2 * g + self.spec.max_generator_order(i)?;
                if g >= window || window < margin {
                    ok = false;
                    break;
                }
            }
            if ok {
                self.certified = Some(Certified {
                    model,
                    gamma,
                    window,
                });
                return Ok(());
            }
            if window >= limit {
                return Err(Error::PrecisionExhausted(format!(
                    "no certified conductor within window t^{window} \
                     (limit {limit}); observed tail starts {gamma:?}"
                )));
            }
            window = (window.saturating_mul(2)).min(limit);
        }
    }

    fn cert(&self) -> &Certified {
        self.certified
            .as_ref()
            .expect("certified model must be ensured first")
    }

    /// Drop caches and force the next certification to start at a wider
    /// window; used by blow-up retries.
    pub(crate) fn widen(&mut self) -> Result<()> {
        let current = match &self.certified {
            Some(c) => c.window,
            None => self.config.initial_truncation,
        };
        let limit = self.window_limit();
        if current >= limit {
            return Err(Error::PrecisionExhausted(format!(
                "cannot widen past window t^{current} (limit {limit})"
            )));
        }
        self.config.initial_truncation = (current.saturating_mul(2)).min(limit);
        self.certified = None;
        self.invariants_cache = None;
        self.nu_cache = None;
        self.branch_delta_cache = None;
        self.pair_cache.clear();
        Ok(())
    }

    /// Certified conductor exponents; the flag is part of the contract and is
    /// always true on success (failure is an error, never a silent guess).
    pub fn conductor_exponents(&mut self) -> Result<(Vec<u32>, bool)> {
        self.ensure_certified()?;
        Ok((self.cert().gamma.clone(), true))
    }

    pub(crate) fn certified_window(&mut self) -> Result<u32> {
        self.ensure_certified()?;
        Ok(self.cert().window)
    }

    fn delta_from(cert: &Certified) -> u32 {
        let below = cert.model.rank_below(&cert.gamma) as u32;
        let total: u32 = cert.gamma.iter().sum();
        total - below
    }

    pub fn delta(&mut self) -> Result<u32> {
        self.ensure_certified()?;
        Ok(Self::delta_from(self.cert()))
    }

    fn branch_mults_from(cert: &Certified) -> Result<Vec<u32>> {
        (0..cert.model.branches())
            .map(|i| {
                cert.model
                    .branch_staircase(i)
                    .into_iter()
                    .find(|&e| e > 0)
                    .ok_or_else(|| {
                        Error::Internal(format!(
                            "branch {} staircase has no positive order in a certified window",
                            i + 1
                        ))
                    })
            })
            .collect()
    }

    pub(crate) fn branch_multiplicities(&mut self) -> Result<Vec<u32>> {
        self.ensure_certified()?;
        Self::branch_mults_from(self.cert())
    }

    fn edim_from(cert: &Certified) -> Result<u32> {
        // The window T ≥ 2γ puts the truncation ideal inside m², so m/m² is
        // computed faithfully from window spans.
        let m_rows = cert.model.maximal_ideal_rows()?;
        let width = cert.model.truncations().iter().map(|&t| t as usize).sum();
        let mut squares = Eliminator::new(width);
        for a in 0..m_rows.len() {
            for b in a..m_rows.len() {
                squares.insert(cert.model.vec_mul(&m_rows[a], &m_rows[b]));
            }
        }
        Ok((m_rows.len() - squares.rank()) as u32)
    }

    pub fn embedding_dimension(&mut self) -> Result<u32> {
        self.ensure_certified()?;
        Self::edim_from(self.cert())
    }

    pub fn is_gorenstein(&mut self) -> Result<bool> {
        self.ensure_certified()?;
        let cert = self.cert();
        let total: u32 = cert.gamma.iter().sum();
        Ok(total == 2 * Self::delta_from(cert))
    }

    fn branch_deltas(&mut self) -> Result<Vec<u32>> {
        if self.branch_delta_cache.is_none() {
            let r = self.spec.branches();
            let deltas = if r == 1 {
                vec![self.delta()?]
            } else {
                (0..r)
                    .map(|i| self.sub_engine(&[i])?.delta())
                    .collect::<Result<_>>()?
            };
            self.branch_delta_cache = Some(deltas);
        }
        Ok(self.branch_delta_cache.clone().unwrap())
    }

    /// `i(p_i, p_j) = δ(pair) − δ_i − δ_j`, the base case of the branch
    /// expansion, asserted to be at least 1.
    pub fn intersection_multiplicity(&mut self, i: usize, j: usize) -> Result<u32> {
        let r = self.spec.branches();
        if i == j || i >= r || j >= r {
            return Err(Error::DimensionMismatch(format!(
                "intersection multiplicity needs two distinct branches below {r}"
            )));
        }
        let key = (i.min(j), i.max(j));
        if let Some(&v) = self.pair_cache.get(&key) {
            return Ok(v);
        }
        let pair_delta = self.sub_engine(&[key.0, key.1])?.delta()?;
        let deltas = self.branch_deltas()?;
        let value = pair_delta
            .checked_sub(deltas[key.0] + deltas[key.1])
            .ok_or_else(|| {
                Error::Internal(format!(
                    "pair delta {} below branch deltas {} + {}",
                    pair_delta, deltas[key.0], deltas[key.1]
                ))
            })?;
        if value == 0 {
            return Err(Error::Internal(format!(
                "intersection multiplicity of branches {} and {} is zero",
                key.0 + 1,
                key.1 + 1
            )));
        }
        self.pair_cache.insert(key, value);
        Ok(value)
    }

    pub fn invariants(&mut self) -> Result<CurveInvariants> {
        if let Some(inv) = &self.invariants_cache {
            return Ok(inv.clone());
        }
        self.ensure_certified()?;
        let r = self.spec.branches();
        let (gamma, delta, branch_mults, edim) = {
            let cert = self.cert();
            (
                cert.gamma.clone(),
                Self::delta_from(cert),
                Self::branch_mults_from(cert)?,
                Self::edim_from(cert)?,
            )
        };
        let mult: u32 = branch_mults.iter().sum();
        let milnor = (2 * delta + 1)
            .checked_sub(r as u32)
            .ok_or_else(|| Error::Internal(format!("delta {delta} below r {r} - 1")))?;

        let branch_deltas = self.branch_deltas()?;
        let mut cross = vec![0u32; r];
        let mut all_transverse = true;
        for i in 0..r {
            for j in i + 1..r {
                let v = self.intersection_multiplicity(i, j)?;
                cross[i] += v;
                cross[j] += v;
                all_transverse &= v == 1;
            }
        }
        let mu_vec: Vec<u32> = branch_deltas
            .iter()
            .zip(&cross)
            .map(|(&d, &c)| 2 * d + c)
            .collect();

        let local_type = if milnor == 0 {
            LocalType::Regular
        } else if milnor == 1 {
            LocalType::DoublePoint
        } else if r >= 2 && branch_deltas.iter().all(|&d| d == 0) && all_transverse {
            LocalType::OrdinaryMultiplePoint
        } else {
            LocalType::Other
        };

        let gamma_sum: u32 = gamma.iter().sum();
        let inv = CurveInvariants {
            delta,
            milnor,
            r: r as u32,
            mult,
            branch_mults,
            edim,
            mu_vec,
            conductor: gamma,
            gorenstein: gamma_sum == 2 * delta,
            local_type,
            certified: true,
        };
        self.check_identities(&inv)?;
        self.invariants_cache = Some(inv.clone());
        Ok(inv)
    }

    fn check_identities(&self, inv: &CurveInvariants) -> Result<()> {
        let fail = |msg: String| Err(Error::Internal(msg));
        if inv.milnor + inv.r != 2 * inv.delta + 1 {
            return fail(format!(
                "milnor {} != 2*{} - {} + 1",
                inv.milnor, inv.delta, inv.r
            ));
        }
        if inv.delta + 1 < inv.mult {
            return fail(format!("delta {} < mult {} - 1", inv.delta, inv.mult));
        }
        if inv.delta + 1 < inv.r {
            return fail(format!("delta {} < r {} - 1", inv.delta, inv.r));
        }
        if inv.mult < inv.r {
            return fail(format!("mult {} < r {}", inv.mult, inv.r));
        }
        // Σ μ_i = 2δ expands the pairwise branch formula; that expansion is a
        // plane-curve statement (and automatic for r ≤ 2), not a theorem of
        // the general model: the three-axes space curve has Σ μ_i = 6 > 2δ = 4.
        if self.spec.generator_count() == 2 || inv.r <= 2 {
            let total: u32 = inv.mu_vec.iter().sum();
            if total != 2 * inv.delta {
                return fail(format!(
                    "relative Milnor numbers sum to {} instead of 2δ = {}",
                    total,
                    2 * inv.delta
                ));
            }
        }
        Ok(())
    }

    pub fn classify_local_type(&mut self) -> Result<LocalType> {
        Ok(self.invariants()?.local_type)
    }

    /// The value semigroup in its finite box encoding.  Membership of `v` is
    /// decided on the subspaces `W_v = {g ∈ V : ord ≥ v}`: over an infinite
    /// field `v` is realized iff every leading-coefficient functional is
    /// nonzero on `W_v`; over `F_p` the exact count of joint non-vanishing
    /// elements is inclusion–exclusion over coordinate subspaces.
    pub fn value_semigroup(&mut self) -> Result<ValueSemigroup> {
        if let Some(nu) = &self.nu_cache {
            return Ok(nu.clone());
        }
        self.ensure_certified()?;
        let cert = self.cert();
        let r = self.spec.branches();
        let gamma = cert.gamma.clone();
        let dim = cert.model.dim();

        // dim W_v for every v in the [0, γ+1] box.
        let limits: Vec<u32> = gamma.iter().map(|&g| g + 1).collect();
        let mut dims: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
        for v in box_points(&limits) {
            let below = cert.model.rank_below(&v);
            dims.insert(v, dim - below);
        }

        let mut members = std::collections::BTreeSet::new();
        let char_p = self.spec.field.characteristic();
        for v in box_points(&gamma) {
            let member = if char_p == 0 {
                (0..r).all(|i| {
                    let mut up = v.clone();
                    up[i] += 1;
                    dims[&up] < dims[&v]
                })
            } else {
                let p = BigInt::from(char_p);
                let mut count = BigInt::from(0);
                for mask in 0u32..(1 << r) {
                    let mut up = v.clone();
                    let mut bits = 0;
                    for (i, item) in up.iter_mut().enumerate() {
                        if mask & (1 << i) != 0 {
                            *item += 1;
                            bits += 1;
                        }
                    }
                    let term = p.pow(dims[&up] as u32);
                    if bits % 2 == 0 {
                        count += term;
                    } else {
                        count -= term;
                    }
                }
                count > BigInt::from(0)
            };
            if member {
                members.insert(v);
            }
        }
        let nu = ValueSemigroup::new(gamma, members)
            .map_err(|e| Error::Internal(format!("value semigroup assembly: {e}")))?;
        self.nu_cache = Some(nu.clone());
        Ok(nu)
    }

    /// `Γ(R)`: the image of the value semigroup under coordinate sum.
    pub fn gamma_semigroup(&mut self) -> Result<NumericalSemigroup> {
        let nu = self.value_semigroup()?;
        nu.sum_image()
            .map_err(|e| Error::Internal(format!("sum image of engine semigroup: {e}")))
    }

    fn evaluate(&self, g: &PolyExpr) -> Result<BranchElement> {
        if g.field() != self.spec.field {
            return Err(Error::FieldMismatch(
                "polynomial field differs from curve field".into(),
            ));
        }
        g.evaluate(&self.spec.generators)
    }

    /// Value vector of a polynomial in the generators; `None` when some
    /// component is exactly zero (a zero divisor).
    pub fn value_vector_of(&mut self, g: &PolyExpr) -> Result<Option<Vec<u32>>> {
        let image = self.evaluate(g)?;
        let mut orders = Vec::with_capacity(image.branch_count());
        for (i, ord) in image.value_vector().into_iter().enumerate() {
            match ord {
                OrderResult::Finite(o) => orders.push(o),
                OrderResult::ExactZero => return Ok(None),
                OrderResult::UnknownBeyond(b) => {
                    return Err(Error::PrecisionExhausted(format!(
                        "order on branch {} unresolved below t^{}",
                        i + 1,
                        b
                    )))
                }
            }
        }
        Ok(Some(orders))
    }

    /// `l(g, R) = dim_k(R/gR) = Σ_i ord_i(g)` for non-zero-divisors.
    pub fn length_of(&mut self, g: &PolyExpr) -> Result<LengthResult> {
        Ok(match self.value_vector_of(g)? {
            Some(orders) => LengthResult::Finite(orders.iter().sum()),
            None => LengthResult::NotNzd,
        })
    }

    /// Noether-type test: does `h` land in `⟨g⟩·R̄`, or is it pinned to the
    /// exact obstruction length `l(g) + μ − r`?
    pub fn noether_check(&mut self, g: &PolyExpr, h: &PolyExpr) -> Result<NoetherOutcome> {
        let names = self.spec.variable_names.clone();
        let vg = self.value_vector_of(g)?.ok_or_else(|| {
            Error::NotNzd(format!(
                "`{}` vanishes identically on a branch",
                g.display_with(&names)
            ))
        })?;
        let vh = self.value_vector_of(h)?.ok_or_else(|| {
            Error::NotNzd(format!(
                "`{}` vanishes identically on a branch",
                h.display_with(&names)
            ))
        })?;
        let inv = self.invariants()?;
        let membership = (0..vg.len()).all(|i| vh[i] >= vg[i] + inv.mu_vec[i]);
        if membership {
            debug_assert!((0..vg.len()).all(|i| vh[i] >= vg[i]));
            return Ok(NoetherOutcome::MembershipInNormalization);
        }
        let lg: u32 = vg.iter().sum();
        let lh: u32 = vh.iter().sum();
        if i64::from(lh) == i64::from(lg) + i64::from(inv.milnor) - i64::from(inv.r) {
            return Ok(NoetherOutcome::LengthObstruction);
        }
        Ok(NoetherOutcome::Neither)
    }

    /// `dim_k(M/mM)` for `M = (mR̄ + R)/R`; the module is cyclic iff this is
    /// at most 1 (the second Drozd–Roiter condition).
    pub fn drozd_roiter_cyclicity(&mut self) -> Result<u32> {
        let mults = self.branch_multiplicities()?;
        let cert = self.cert();
        // mM = (m²R̄ + R)/R with m²R̄ = ∏ t^{2e_i}; both tails live inside the
        // window because γ_i ≥ e_i on every branch of a certified local model.
        let with_m: Vec<u32> = mults.clone();
        let with_m2: Vec<u32> = mults.iter().map(|&e| 2 * e).collect();
        let top = cert.model.rank_with_tails(&with_m);
        let bottom = cert.model.rank_with_tails(&with_m2);
        Ok((top - bottom) as u32)
    }

    /// Drozd–Roiter: finite Cohen-Macaulay type iff `mult ≤ 3` and the
    /// cyclicity bound holds.
    pub fn has_finite_cm_type(&mut self) -> Result<bool> {
        let mults = self.branch_multiplicities()?;
        let mult: u32 = mults.iter().sum();
        if mult > 3 {
            return Ok(false);
        }
        Ok(self.drozd_roiter_cyclicity()? <= 1)
    }
}

/// All lattice points `0 ≤ v ≤ limits`, lexicographically.
fn box_points(limits: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut v = vec![0u32; limits.len()];
    loop {
        out.push(v.clone());
        let mut k = limits.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if v[k] < limits[k] {
                v[k] += 1;
                break;
            }
            v[k] = 0;
        }
    }
}
