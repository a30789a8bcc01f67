//! Blow-up of a curve germ: the quadratic transform `R' = R[m/x]` along a
//! superficial element `x`.
//!
//! A superficial element realizes the multiplicity on every branch:
//! `ord_i(x) = e_i`.  One always exists among linear combinations of the
//! maximal-ideal generators when the field has more than `r` elements; the
//! search walks coefficient tuples shell by shell (max-norm over the value
//! ladder `0, 1, -1, 2, -2, ...`), lexicographically inside a shell, and
//! returns the first hit, so the chosen element is deterministic.
//!
//! The child ring keeps the parent generators and adjoins the quotients
//! `g/x` of the centered generators.  For the drop `ρ = δ(R) − δ(R')` the
//! multiplicity bounds `e − 1 ≤ ρ ≤ e(e−1)/2` hold at local parents, and
//! `ρ = 0` exactly at regular points, so blow-up chains terminate.

use crate::error::{Error, Result};
use crate::poly::PolyExpr;
use crate::scalar::{FieldSpec, Scalar};
use crate::series::{BranchElement, OrderResult};

use super::{CurveSpec, Engine, EngineConfig};

/// One quadratic transform: the child presentation, the delta drop, and the
/// multiplicity of the parent.
#[derive(Debug, Clone)]
pub struct BlowupStep {
    pub curve: CurveSpec,
    pub rho: u32,
    pub mult_before: u32,
}

/// Coefficient values tried per coordinate, in search order.  Over `F_p` the
/// ladder stops once every residue appears.
fn coefficient_ladder(field: FieldSpec, count: usize) -> Vec<Scalar> {
    let mut vals = vec![Scalar::zero(field)];
    let mut k = 1i64;
    while vals.len() < count {
        vals.push(Scalar::from_i64(field, k));
        if vals.len() < count {
            vals.push(Scalar::from_i64(field, -k));
        }
        k += 1;
    }
    vals
}

impl Engine {
    /// Generators with the shared constant term removed; the centered
    /// generators generate the maximal ideal.  Errors with `NotLocal` when
    /// some generator has branch-dependent constant terms (a genuinely
    /// semilocal presentation has no superficial element).
    fn centered_generators(&self) -> Result<(Vec<BranchElement>, Vec<Scalar>)> {
        let field = self.spec.field();
        let r = self.spec.branches();
        let mut centered = Vec::with_capacity(self.spec.generator_count());
        let mut constants = Vec::with_capacity(self.spec.generator_count());
        for (j, g) in self.spec.generators().iter().enumerate() {
            let mut shared: Option<Scalar> = None;
            for i in 0..r {
                let c = g.component(i).known_coeff(0).ok_or_else(|| {
                    Error::PrecisionExhausted(format!(
                        "constant term of generator `{}` unknown on branch {}",
                        self.spec.variable_names()[j],
                        i + 1
                    ))
                })?;
                match &shared {
                    None => shared = Some(c),
                    Some(prev) if *prev == c => {}
                    Some(_) => {
                        return Err(Error::NotLocal(format!(
                            "generator `{}` takes different constant values on \
                             different branches",
                            self.spec.variable_names()[j]
                        )))
                    }
                }
            }
            let c = shared.expect("at least one branch");
            let centered_g = if c.is_zero() {
                g.clone()
            } else {
                let shift = BranchElement::one(field, r).scalar_mul(&c);
                g.sub(&shift)?
            };
            centered.push(centered_g);
            constants.push(c);
        }
        Ok((centered, constants))
    }

    /// First linear combination of the generators whose value vector equals
    /// the multiplicity vector, in the deterministic shell order.
    pub fn superficial_element(&mut self) -> Result<PolyExpr> {
        let mults = self.branch_multiplicities()?;
        let field = self.spec.field();
        let m = self.spec.generator_count();
        let r = self.spec.branches();
        let (centered, constants) = self.centered_generators()?;

        // A grid with more than r values per coordinate escapes the r leading
        // hyperplanes over an infinite field; over F_p the whole space is
        // tried before giving up.
        let ladder_len = match field.characteristic() {
            0 => 2 * r + 1,
            p => (p as usize).min(2 * r + 1),
        };
        let ladder = coefficient_ladder(field, ladder_len.max(2));

        for shell in 1..ladder.len() {
            let mut idx = vec![0usize; m];
            'tuples: loop {
                if idx.iter().copied().max().unwrap_or(0) == shell {
                    if let Some(poly) =
                        self.try_candidate(&idx, &ladder, &centered, &constants, &mults)?
                    {
                        return Ok(poly);
                    }
                }
                let mut k = m;
                loop {
                    if k == 0 {
                        break 'tuples;
                    }
                    k -= 1;
                    if idx[k] < shell {
                        idx[k] += 1;
                        break;
                    }
                    idx[k] = 0;
                }
            }
        }
        Err(Error::NoSuperficialFound((ladder.len() - 1) as u32))
    }

    fn try_candidate(
        &self,
        idx: &[usize],
        ladder: &[Scalar],
        centered: &[BranchElement],
        constants: &[Scalar],
        mults: &[u32],
    ) -> Result<Option<PolyExpr>> {
        let field = self.spec.field();
        let r = self.spec.branches();
        let m = centered.len();
        let mut image = BranchElement::zero(field, r);
        for (j, &i) in idx.iter().enumerate() {
            if !ladder[i].is_zero() {
                image = image.add(&centered[j].scalar_mul(&ladder[i]))?;
            }
        }
        let superficial = image
            .value_vector()
            .iter()
            .zip(mults)
            .all(|(ord, &e)| matches!(ord, OrderResult::Finite(o) if *o == e));
        if !superficial {
            return Ok(None);
        }
        let mut poly = PolyExpr::new(field, m);
        let mut shift = Scalar::zero(field);
        for (j, &i) in idx.iter().enumerate() {
            if ladder[i].is_zero() {
                continue;
            }
            let mut exps = vec![0u32; m];
            exps[j] = 1;
            poly.add_term(&exps, ladder[i].clone())?;
            shift = shift.add(&ladder[i].mul(&constants[j]).neg());
        }
        if !shift.is_zero() {
            poly.add_term(&vec![0u32; m], shift)?;
        }
        Ok(Some(poly))
    }

    /// One quadratic transform.  Retries at a wider window whenever the
    /// quotient generators or the child model run out of precision.
    pub fn blowup(&mut self) -> Result<BlowupStep> {
        loop {
            match self.try_blowup() {
                Ok(step) => return Ok(step),
                Err(Error::PrecisionExhausted(_)) => self.widen()?,
                Err(e) => return Err(e),
            }
        }
    }

    pub(crate) fn try_blowup(&mut self) -> Result<BlowupStep> {
        let delta_before = self.delta()?;
        let mults = self.branch_multiplicities()?;
        let mult_before: u32 = mults.iter().sum();
        let parent_local = self.cert().model.is_local();
        let superficial = self.superficial_element()?;
        let window = self.certified_window()?;
        let field = self.spec.field();
        let r = self.spec.branches();
        let (centered, _) = self.centered_generators()?;
        let x_img = superficial.evaluate(self.spec.generators())?;

        let budgets = vec![window; r];
        let mut child_gens: Vec<BranchElement> = self.spec.generators().to_vec();
        let mut child_names: Vec<String> = self.spec.variable_names().to_vec();
        for (j, g) in centered.iter().enumerate() {
            if g.is_exact_zero() {
                continue;
            }
            let q = match g.divide(&x_img, &budgets) {
                Ok(q) => q,
                // The centered generators sit in the maximal ideal, so their
                // orders dominate the superficial orders; a failed division
                // can only mean the window was too narrow to see that.
                Err(Error::NotDivisible(msg)) => {
                    return Err(Error::PrecisionExhausted(format!(
                        "quotient by the superficial element undetermined: {msg}"
                    )))
                }
                Err(e) => return Err(e),
            };
            if q.is_exact_zero() || is_exact_shared_constant(&q) {
                continue;
            }
            if child_gens.contains(&q) {
                continue;
            }
            child_names.push(fresh_name(&self.spec.variable_names()[j], &child_names));
            child_gens.push(q);
        }

        let mut hint: Option<u32> = None;
        for g in &child_gens {
            for c in g.components() {
                if let Some(b) = c.precision().bound() {
                    hint = Some(hint.map_or(b, |h| h.min(b)));
                }
            }
        }
        let mut child_spec = CurveSpec::new_derived(field, child_names, child_gens)?;
        if hint.is_some() {
            child_spec = child_spec.with_truncation_hint(hint);
        }

        let mut child = Engine::with_config(child_spec.clone(), self.config);
        let delta_after = child.delta()?;
        let rho = delta_before.checked_sub(delta_after).ok_or_else(|| {
            Error::Internal(format!(
                "delta grew under blow-up: {delta_before} to {delta_after}"
            ))
        })?;
        if (rho == 0) != (delta_before == 0) {
            return Err(Error::Internal(format!(
                "delta drop {rho} inconsistent with delta {delta_before}"
            )));
        }
        if parent_local && delta_before > 0 {
            let e = mult_before;
            if rho + 1 < e || 2 * rho > e * (e - 1) {
                return Err(Error::Internal(format!(
                    "delta drop {rho} outside the multiplicity bounds for e = {e}"
                )));
            }
        }
        Ok(BlowupStep {
            curve: child_spec,
            rho,
            mult_before,
        })
    }

    /// Iterated blow-up of a branch (r = 1) until the ring is regular.  Any
    /// precision failure along the chain restarts it from the exact root
    /// presentation with a doubled starting window.
    pub fn blowup_chain(&mut self, max_steps: Option<usize>) -> Result<Vec<BlowupStep>> {
        let r = self.spec.branches();
        if r != 1 {
            return Err(Error::NotLocalChain(r));
        }
        let limit = self.window_limit();
        let mut budget = self.config.initial_truncation.clamp(2, limit.max(2));
        loop {
            match self.try_chain(budget, max_steps) {
                Ok(steps) => return Ok(steps),
                Err(Error::PrecisionExhausted(_)) if budget < limit => {
                    budget = budget.saturating_mul(2).min(limit);
                }
                Err(e) => return Err(e),
            }
        }
    }

    fn try_chain(&self, budget: u32, max_steps: Option<usize>) -> Result<Vec<BlowupStep>> {
        let config = EngineConfig {
            initial_truncation: budget,
            truncation_cap: self.config.truncation_cap,
        };
        let mut current = Engine::with_config(self.spec.clone(), config);
        let mut steps: Vec<BlowupStep> = Vec::new();
        loop {
            if let Some(limit) = max_steps {
                if steps.len() >= limit {
                    return Ok(steps);
                }
            }
            if current.delta()? == 0 {
                return Ok(steps);
            }
            let step = current.try_blowup()?;
            current = Engine::with_config(step.curve.clone(), config);
            steps.push(step);
        }
    }

    /// Multiplicities along the resolution chain, singular stages only; a
    /// regular germ has the empty sequence.
    pub fn multiplicity_sequence(&mut self) -> Result<Vec<u32>> {
        Ok(self
            .blowup_chain(None)?
            .into_iter()
            .map(|s| s.mult_before)
            .collect())
    }
}

/// True for elements of the form `(c, ..., c)` with one exact shared
/// constant; those generate nothing beyond the ground field.  Elements with
/// branch-dependent constants are idempotent directions and must be kept.
fn is_exact_shared_constant(g: &BranchElement) -> bool {
    let zero = Scalar::zero(g.field());
    let mut shared: Option<Scalar> = None;
    for c in g.components() {
        if !c.precision().is_exact() {
            return false;
        }
        let mut value = zero.clone();
        for (e, coeff) in c.terms() {
            if e > 0 {
                return false;
            }
            value = coeff.clone();
        }
        match &shared {
            None => shared = Some(value),
            Some(prev) if *prev == value => {}
            Some(_) => return false,
        }
    }
    true
}

fn fresh_name(base: &str, taken: &[String]) -> String {
    let mut name = format!("{base}'");
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}
