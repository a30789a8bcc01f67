//! Truncated power series in one variable and tuples of them across branches.
//!
//! A [`TruncatedSeries`] is a sparse polynomial in `t` together with a
//! [`Precision`]: either `Exact` (all coefficients known, the element is the
//! stored polynomial) or `Truncated(T)` (coefficients known only for
//! exponents `< T`; the element may continue with arbitrary terms from `t^T`
//! on).  Exact inputs stay exact through ring operations; precision is lost
//! only by division, and every operation records the precision actually
//! certified by its inputs:
//!
//! * `order(a + b) >= min(order a, order b)` with the stored precision the
//!   minimum of the operand precisions,
//! * `precision(a * b) = min(prec a + ord b, prec b + ord a)`,
//! * `precision(a / b) = min(prec a, prec b + ord a - ord b) - ord b`.
//!
//! Invariants:
//! * no zero coefficients are stored,
//! * under `Truncated(T)` every stored exponent is `< T`,
//! * all coefficients share the series' field.
//!
//! The order of a series with at least one stored coefficient is exact (its
//! leading coefficient is known to be nonzero); an empty truncated series has
//! unknown order, reported as [`OrderResult::UnknownBeyond`], never silently
//! treated as zero.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

/// How far the coefficients of a series are known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Precision {
    /// Every coefficient is known; the series is the stored polynomial.
    Exact,
    /// Coefficients are known for exponents strictly below the bound.
    Truncated(u32),
}

impl Precision {
    pub fn min(self, other: Precision) -> Precision {
        match (self, other) {
            (Precision::Exact, p) | (p, Precision::Exact) => p,
            (Precision::Truncated(a), Precision::Truncated(b)) => Precision::Truncated(a.min(b)),
        }
    }

    /// Shifts the knowledge window up by `k` exponents.
    fn plus(self, k: u32) -> Precision {
        match self {
            Precision::Exact => Precision::Exact,
            Precision::Truncated(t) => Precision::Truncated(t.saturating_add(k)),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Precision::Exact)
    }

    /// The truncation bound, `None` when exact.
    pub fn bound(&self) -> Option<u32> {
        match self {
            Precision::Exact => None,
            Precision::Truncated(t) => Some(*t),
        }
    }

    /// True when coefficients at every exponent `< upto` are known.
    pub fn covers(&self, upto: u32) -> bool {
        match self {
            Precision::Exact => true,
            Precision::Truncated(t) => *t >= upto,
        }
    }
}

/// Result of an order (valuation) query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderResult {
    /// The leading exponent; its coefficient is known to be nonzero.
    Finite(u32),
    /// The series is exactly zero, i.e. the order is infinite.
    ExactZero,
    /// All known coefficients vanish but the series is only certified up to
    /// the stated bound; the true order is `>= bound`, possibly infinite.
    UnknownBeyond(u32),
}

impl OrderResult {
    pub fn finite(&self) -> Option<u32> {
        match self {
            OrderResult::Finite(e) => Some(*e),
            _ => None,
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self, OrderResult::ExactZero)
    }
}

/// Extended naturals used for order bookkeeping; `None` is infinity.
type Ext = Option<u32>;

fn ext_add(a: Ext, b: Ext) -> Ext {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.saturating_add(y)),
        _ => None,
    }
}

fn ext_min(a: Ext, b: Ext) -> Ext {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

fn ext_to_precision(e: Ext) -> Precision {
    match e {
        None => Precision::Exact,
        Some(t) => Precision::Truncated(t),
    }
}

/// A sparse truncated power series over a fixed field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    field: FieldSpec,
    coeffs: BTreeMap<u32, Scalar>,
    precision: Precision,
}

impl TruncatedSeries {
    /// The exact zero series.
    pub fn zero(field: FieldSpec) -> Self {
        TruncatedSeries { field, coeffs: BTreeMap::new(), precision: Precision::Exact }
    }

    /// A series all of whose known coefficients vanish.
    pub fn zero_truncated(field: FieldSpec, bound: u32) -> Self {
        TruncatedSeries { field, coeffs: BTreeMap::new(), precision: Precision::Truncated(bound) }
    }

    /// The exact monomial `c * t^exp`.
    pub fn monomial(field: FieldSpec, exp: u32, coeff: Scalar) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            assert_eq!(coeff.field(), field, "coefficient field mismatch");
            coeffs.insert(exp, coeff);
        }
        TruncatedSeries { field, coeffs, precision: Precision::Exact }
    }

    /// Builds a series from `(exponent, coefficient)` terms; duplicate
    /// exponents accumulate, zero coefficients are dropped, and exponents at
    /// or above a finite bound are rejected.
    pub fn from_terms<I>(field: FieldSpec, terms: I, precision: Precision) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, Scalar)>,
    {
        let mut coeffs: BTreeMap<u32, Scalar> = BTreeMap::new();
        for (exp, c) in terms {
            if c.field() != field {
                return Err(Error::FieldMismatch(format!(
                    "coefficient over {} in a series over {}",
                    c.field(),
                    field
                )));
            }
            if let Some(bound) = precision.bound() {
                if exp >= bound {
                    return Err(Error::DimensionMismatch(format!(
                        "term t^{exp} at or beyond truncation bound {bound}"
                    )));
                }
            }
            let entry = match coeffs.remove(&exp) {
                Some(prev) => prev.add(&c),
                None => c,
            };
            if !entry.is_zero() {
                coeffs.insert(exp, entry);
            }
        }
        Ok(TruncatedSeries { field, coeffs, precision })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.precision.is_exact()
    }

    /// Leading term, if any coefficient is known to be nonzero.
    pub fn leading(&self) -> Option<(u32, &Scalar)> {
        self.coeffs.iter().next().map(|(e, c)| (*e, c))
    }

    pub fn order(&self) -> OrderResult {
        match self.leading() {
            Some((e, _)) => OrderResult::Finite(e),
            None => match self.precision {
                Precision::Exact => OrderResult::ExactZero,
                Precision::Truncated(t) => OrderResult::UnknownBeyond(t),
            },
        }
    }

    /// Lower bound for the true order: leading exponent, the truncation
    /// bound for an empty truncated series, infinity for exact zero.
    fn order_floor(&self) -> Ext {
        match self.order() {
            OrderResult::Finite(e) => Some(e),
            OrderResult::UnknownBeyond(t) => Some(t),
            OrderResult::ExactZero => None,
        }
    }

    /// Coefficient of `t^exp` when it lies inside the certified window.
    pub fn known_coeff(&self, exp: u32) -> Option<Scalar> {
        if !self.precision.covers(exp + 1) {
            return None;
        }
        Some(self.coeffs.get(&exp).cloned().unwrap_or_else(|| Scalar::zero(self.field)))
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Scalar)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    fn check_field(&self, other: &TruncatedSeries) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!(
                "series over {} combined with series over {}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    fn normalized(field: FieldSpec, mut coeffs: BTreeMap<u32, Scalar>, precision: Precision) -> Self {
        coeffs.retain(|_, c| !c.is_zero());
        if let Some(bound) = precision.bound() {
            coeffs.retain(|e, _| *e < bound);
        }
        TruncatedSeries { field, coeffs, precision }
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_field(other)?;
        let precision = self.precision.min(other.precision);
        let mut coeffs = self.coeffs.clone();
        for (e, c) in &other.coeffs {
            let entry = match coeffs.remove(e) {
                Some(prev) => prev.add(c),
                None => c.clone(),
            };
            if !entry.is_zero() {
                coeffs.insert(*e, entry);
            }
        }
        Ok(Self::normalized(self.field, coeffs, precision))
    }

    pub fn neg(&self) -> TruncatedSeries {
        let coeffs = self.coeffs.iter().map(|(e, c)| (*e, c.neg())).collect();
        TruncatedSeries { field: self.field, coeffs, precision: self.precision }
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.add(&other.neg())
    }

    /// Multiplication by a scalar.  Scaling by zero gives the exact zero
    /// series: the result is known completely whatever the operand precision.
    pub fn scalar_mul(&self, s: &Scalar) -> TruncatedSeries {
        assert_eq!(s.field(), self.field, "scalar field mismatch");
        if s.is_zero() {
            return TruncatedSeries::zero(self.field);
        }
        let coeffs = self.coeffs.iter().map(|(e, c)| (*e, c.mul(s))).collect();
        TruncatedSeries { field: self.field, coeffs, precision: self.precision }
    }

    /// Multiplication by `t^k`.
    pub fn shift_up(&self, k: u32) -> TruncatedSeries {
        let coeffs = self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect();
        TruncatedSeries { field: self.field, coeffs, precision: self.precision.plus(k) }
    }

    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_field(other)?;
        // The unknown tail of one factor meets the known part of the other
        // from exponent prec + ord on; exact zero on either side makes both
        // contributions infinite and the product exactly zero.
        let bound = ext_min(
            ext_add(self.precision.bound(), other.order_floor()),
            ext_add(other.precision.bound(), self.order_floor()),
        );
        let precision = ext_to_precision(bound);
        let mut coeffs: BTreeMap<u32, Scalar> = BTreeMap::new();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                let e = ea + eb;
                if let Precision::Truncated(t) = precision {
                    if e >= t {
                        continue;
                    }
                }
                let term = ca.mul(cb);
                let entry = match coeffs.remove(&e) {
                    Some(prev) => prev.add(&term),
                    None => term,
                };
                if !entry.is_zero() {
                    coeffs.insert(e, entry);
                }
            }
        }
        Ok(Self::normalized(self.field, coeffs, precision))
    }

    /// Restricts the certified window to exponents `< bound`.
    pub fn truncate_to(&self, bound: u32) -> TruncatedSeries {
        Self::normalized(
            self.field,
            self.coeffs.clone(),
            self.precision.min(Precision::Truncated(bound)),
        )
    }

    /// Quotient `self / divisor` in `k[[t]]`.
    ///
    /// The divisor must have certified finite order not exceeding the order
    /// of the numerator.  The result carries precision
    /// `min(prec self, prec divisor + ord self - ord divisor) - ord divisor`;
    /// when both operands are exact the division is carried out up to
    /// `exact_budget` coefficients (or exactly, if the remainder terminates).
    pub fn divide(&self, divisor: &TruncatedSeries, exact_budget: u32) -> Result<TruncatedSeries> {
        self.check_field(divisor)?;
        let (ob, lead_b) = match divisor.order() {
            OrderResult::Finite(e) => (e, divisor.coeffs.get(&e).unwrap().clone()),
            OrderResult::ExactZero => return Err(Error::DivideByExactZero),
            OrderResult::UnknownBeyond(t) => {
                return Err(Error::NotDivisible(format!(
                    "divisor order unknown beyond t^{t}"
                )))
            }
        };
        if self.is_exact_zero() {
            return Ok(TruncatedSeries::zero(self.field));
        }
        match self.order() {
            OrderResult::Finite(e) if e < ob => {
                return Err(Error::NotDivisible(format!(
                    "numerator order {e} below divisor order {ob}"
                )));
            }
            OrderResult::UnknownBeyond(t) if t <= ob => {
                return Err(Error::NotDivisible(format!(
                    "numerator known only beyond t^{t}, divisor order {ob}"
                )));
            }
            _ => {}
        }
        let oa = self.order_floor().expect("nonzero handled above");
        let contractual = ext_min(
            self.precision.bound(),
            ext_add(divisor.precision.bound(), Some(oa.saturating_sub(ob))),
        )
        .map(|p| p.saturating_sub(ob));
        let target = contractual.unwrap_or(exact_budget);

        let mut quotient: BTreeMap<u32, Scalar> = BTreeMap::new();
        let mut rem = self.clone();
        while let Some((e, c)) = rem.leading() {
            debug_assert!(e >= ob, "remainder order dropped below divisor order");
            let qe = e - ob;
            if qe >= target {
                break;
            }
            let qc = c.div(&lead_b).expect("leading coefficient nonzero");
            let piece = divisor.shift_up(qe).scalar_mul(&qc);
            rem = rem.sub(&piece)?;
            quotient.insert(qe, qc);
        }
        let precision = if contractual.is_none() && rem.is_exact_zero() {
            Precision::Exact
        } else {
            Precision::Truncated(target)
        };
        Ok(Self::normalized(self.field, quotient, precision))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        } else {
            for (i, (e, c)) in self.coeffs.iter().enumerate() {
                if i > 0 {
                    write!(f, " + ")?;
                }
                match e {
                    0 => write!(f, "{c}")?,
                    1 => write!(f, "({c})*t")?,
                    _ => write!(f, "({c})*t^{e}")?,
                }
            }
        }
        if let Precision::Truncated(t) = self.precision {
            write!(f, " + O(t^{t})")?;
        }
        Ok(())
    }
}

/// An element of the normalization `∏_i k[[t_i]]`: one series per branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchElement {
    field: FieldSpec,
    components: Vec<TruncatedSeries>,
}

impl BranchElement {
    pub fn new(field: FieldSpec, components: Vec<TruncatedSeries>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::DimensionMismatch("element with zero branches".into()));
        }
        for c in &components {
            if c.field() != field {
                return Err(Error::FieldMismatch(format!(
                    "component over {} in an element over {}",
                    c.field(),
                    field
                )));
            }
        }
        Ok(BranchElement { field, components })
    }

    /// The multiplicative identity `(1, ..., 1)`.
    pub fn one(field: FieldSpec, branches: usize) -> Self {
        let one = TruncatedSeries::monomial(field, 0, Scalar::one(field));
        BranchElement { field, components: vec![one; branches] }
    }

    pub fn zero(field: FieldSpec, branches: usize) -> Self {
        BranchElement { field, components: vec![TruncatedSeries::zero(field); branches] }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn branch_count(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, i: usize) -> &TruncatedSeries {
        &self.components[i]
    }

    pub fn components(&self) -> &[TruncatedSeries] {
        &self.components
    }

    fn check_compatible(&self, other: &BranchElement) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!(
                "element over {} combined with element over {}",
                self.field, other.field
            )));
        }
        if self.components.len() != other.components.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} branches combined with {}",
                self.components.len(),
                other.components.len()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &BranchElement) -> Result<BranchElement> {
        self.check_compatible(other)?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(BranchElement { field: self.field, components })
    }

    pub fn sub(&self, other: &BranchElement) -> Result<BranchElement> {
        self.check_compatible(other)?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<_>>()?;
        Ok(BranchElement { field: self.field, components })
    }

    pub fn mul(&self, other: &BranchElement) -> Result<BranchElement> {
        self.check_compatible(other)?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.mul(b))
            .collect::<Result<_>>()?;
        Ok(BranchElement { field: self.field, components })
    }

    pub fn scalar_mul(&self, s: &Scalar) -> BranchElement {
        let components = self.components.iter().map(|c| c.scalar_mul(s)).collect();
        BranchElement { field: self.field, components }
    }

    /// Componentwise quotient.  A branch where the numerator is exactly zero
    /// yields exact zero whatever the divisor; elsewhere the series division
    /// contract applies with the per-branch budget.
    pub fn divide(&self, divisor: &BranchElement, budgets: &[u32]) -> Result<BranchElement> {
        self.check_compatible(divisor)?;
        if budgets.len() != self.components.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} budgets for {} branches",
                budgets.len(),
                self.components.len()
            )));
        }
        let components = self
            .components
            .iter()
            .zip(&divisor.components)
            .zip(budgets)
            .map(|((a, b), budget)| {
                if a.is_exact_zero() {
                    Ok(TruncatedSeries::zero(self.field))
                } else {
                    a.divide(b, *budget)
                }
            })
            .collect::<Result<_>>()?;
        Ok(BranchElement { field: self.field, components })
    }

    /// Per-branch orders; exact zeros come back as [`OrderResult::ExactZero`]
    /// (order infinity) and undercertified branches as `UnknownBeyond`.
    pub fn value_vector(&self) -> Vec<OrderResult> {
        self.components.iter().map(|c| c.order()).collect()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_exact_zero())
    }

    pub fn truncate_to(&self, bounds: &[u32]) -> BranchElement {
        let components = self
            .components
            .iter()
            .zip(bounds)
            .map(|(c, b)| c.truncate_to(*b))
            .collect();
        BranchElement { field: self.field, components }
    }
}

impl fmt::Display for BranchElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn mono(e: u32, c: i64) -> TruncatedSeries {
        TruncatedSeries::monomial(q(), e, Scalar::from_i64(q(), c))
    }

    #[test]
    fn order_distinguishes_exact_zero_from_unknown() {
        assert_eq!(TruncatedSeries::zero(q()).order(), OrderResult::ExactZero);
        assert_eq!(
            TruncatedSeries::zero_truncated(q(), 5).order(),
            OrderResult::UnknownBeyond(5)
        );
        let s = mono(3, 1).add(&mono(5, 2)).unwrap();
        assert_eq!(s.order(), OrderResult::Finite(3));
    }

    #[test]
    fn addition_cancels_and_respects_precision() {
        let a = mono(2, 5).truncate_to(8);
        let b = mono(2, -5);
        let sum = a.add(&b).unwrap();
        assert_eq!(sum.order(), OrderResult::UnknownBeyond(8));

        let c = mono(1, 1).truncate_to(4);
        let d = mono(2, 1).truncate_to(9);
        assert_eq!(c.add(&d).unwrap().precision(), Precision::Truncated(4));
    }

    #[test]
    fn multiplication_gains_precision_from_orders() {
        // exact t^2 times a series known to precision 5: product known to 7.
        let a = mono(2, 1);
        let b = mono(1, 3).truncate_to(5);
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.precision(), Precision::Truncated(7));
        assert_eq!(prod.order(), OrderResult::Finite(3));
    }

    #[test]
    fn multiplying_by_exact_zero_is_exact() {
        let a = TruncatedSeries::zero(q());
        let b = mono(1, 3).truncate_to(5);
        let prod = a.mul(&b).unwrap();
        assert!(prod.is_exact_zero());
    }

    #[test]
    fn exact_products_stay_exact() {
        let a = mono(2, 1).add(&mono(3, 1)).unwrap();
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq.precision(), Precision::Exact);
        assert_eq!(sq.known_coeff(4).unwrap(), Scalar::from_i64(q(), 1));
        assert_eq!(sq.known_coeff(5).unwrap(), Scalar::from_i64(q(), 2));
        assert_eq!(sq.known_coeff(6).unwrap(), Scalar::from_i64(q(), 1));
    }

    #[test]
    fn division_produces_the_geometric_tail() {
        // t^5 / (t^3 + t^4) = t^2 - t^3 + t^4 - ... ; the independent check
        // is multiplying back and comparing with t^5 at the result precision.
        let a = mono(5, 1);
        let b = mono(3, 1).add(&mono(4, 1)).unwrap();
        let quotient = a.divide(&b, 6).unwrap();
        assert_eq!(quotient.precision(), Precision::Truncated(6));
        for k in 2..6u32 {
            let expected = if k % 2 == 0 { 1 } else { -1 };
            assert_eq!(quotient.known_coeff(k).unwrap(), Scalar::from_i64(q(), expected));
        }
        let back = quotient.mul(&b).unwrap();
        let diff = back.sub(&a).unwrap();
        assert_eq!(diff.order(), OrderResult::UnknownBeyond(9));
    }

    #[test]
    fn division_detects_exact_quotients() {
        let a = mono(5, 2).add(&mono(7, 2)).unwrap();
        let b = mono(2, 2);
        let quotient = a.divide(&b, 64).unwrap();
        assert_eq!(quotient.precision(), Precision::Exact);
        assert_eq!(quotient, mono(3, 1).add(&mono(5, 1)).unwrap());
    }

    #[test]
    fn division_errors() {
        let a = mono(3, 1);
        let b = mono(5, 1);
        assert!(matches!(a.divide(&b, 16), Err(Error::NotDivisible(_))));
        assert!(matches!(
            a.divide(&TruncatedSeries::zero(q()), 16),
            Err(Error::DivideByExactZero)
        ));
        let unknown = TruncatedSeries::zero_truncated(q(), 4);
        assert!(matches!(a.divide(&unknown, 16), Err(Error::NotDivisible(_))));
    }

    #[test]
    fn truncated_numerator_limits_quotient_precision() {
        let a = mono(5, 1).truncate_to(10);
        let b = mono(3, 1).add(&mono(4, 1)).unwrap();
        let quotient = a.divide(&b, 99).unwrap();
        // available precision of the numerator minus ord(divisor).
        assert_eq!(quotient.precision(), Precision::Truncated(7));
    }

    #[test]
    fn field_mismatch_is_reported() {
        let a = mono(1, 1);
        let b = TruncatedSeries::monomial(
            FieldSpec::prime(7).unwrap(),
            1,
            Scalar::from_i64(FieldSpec::prime(7).unwrap(), 1),
        );
        assert!(matches!(a.add(&b), Err(Error::FieldMismatch(_))));
        assert!(matches!(a.mul(&b), Err(Error::FieldMismatch(_))));
    }

    #[test]
    fn value_vector_reports_exact_zero_branches() {
        let e = BranchElement::new(
            q(),
            vec![TruncatedSeries::zero(q()), mono(3, 1)],
        )
        .unwrap();
        assert_eq!(
            e.value_vector(),
            vec![OrderResult::ExactZero, OrderResult::Finite(3)]
        );
    }

    #[test]
    fn branch_division_zero_over_anything_is_exact_zero() {
        let num = BranchElement::new(q(), vec![TruncatedSeries::zero(q()), mono(5, 1)]).unwrap();
        let den = BranchElement::new(q(), vec![mono(1, 1), mono(2, 1)]).unwrap();
        let quot = num.divide(&den, &[16, 16]).unwrap();
        assert!(quot.component(0).is_exact_zero());
        assert_eq!(quot.component(1).order(), OrderResult::Finite(3));
    }
}
