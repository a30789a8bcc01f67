//! Polynomial expressions in the curve generators.
//!
//! A [`PolyExpr`] is a finite k-linear combination of monomials in `arity`
//! formal variables.  Evaluating it on the generator tuple of a curve gives
//! an element of the curve ring as a [`BranchElement`]; evaluation is a ring
//! homomorphism, and on exact generator series it is exact.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};
use crate::series::BranchElement;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyExpr {
    field: FieldSpec,
    arity: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl PolyExpr {
    /// The zero polynomial.
    pub fn new(field: FieldSpec, arity: usize) -> Self {
        PolyExpr { field, arity, terms: BTreeMap::new() }
    }

    pub fn constant(field: FieldSpec, arity: usize, c: Scalar) -> Self {
        let mut p = PolyExpr::new(field, arity);
        p.add_term(&vec![0; arity], c).expect("arity matches by construction");
        p
    }

    /// The j-th variable as a polynomial.
    pub fn variable(field: FieldSpec, arity: usize, j: usize) -> Self {
        assert!(j < arity, "variable index out of range");
        let mut exps = vec![0; arity];
        exps[j] = 1;
        let mut p = PolyExpr::new(field, arity);
        p.add_term(&exps, Scalar::one(field)).expect("arity matches by construction");
        p
    }

    /// Adds `c * x^exps`, accumulating with any existing term.
    pub fn add_term(&mut self, exps: &[u32], c: Scalar) -> Result<()> {
        if exps.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: exps.len() });
        }
        if c.field() != self.field {
            return Err(Error::FieldMismatch(format!(
                "coefficient over {} in a polynomial over {}",
                c.field(),
                self.field
            )));
        }
        let key = exps.to_vec();
        let entry = match self.terms.remove(&key) {
            Some(prev) => prev.add(&c),
            None => c,
        };
        if !entry.is_zero() {
            self.terms.insert(key, entry);
        }
        Ok(())
    }

    pub fn from_terms<I>(field: FieldSpec, arity: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Scalar)>,
    {
        let mut p = PolyExpr::new(field, arity);
        for (exps, c) in terms {
            p.add_term(&exps, c)?;
        }
        Ok(p)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Scalar)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    fn check_compatible(&self, other: &PolyExpr) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!(
                "polynomial over {} combined with polynomial over {}",
                self.field, other.field
            )));
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: other.arity });
        }
        Ok(())
    }

    pub fn add(&self, other: &PolyExpr) -> Result<PolyExpr> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e, c.clone())?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &PolyExpr) -> Result<PolyExpr> {
        self.check_compatible(other)?;
        let mut out = PolyExpr::new(self.field, self.arity);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(&exps, ca.mul(cb))?;
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, s: &Scalar) -> PolyExpr {
        assert_eq!(s.field(), self.field, "scalar field mismatch");
        let mut out = PolyExpr::new(self.field, self.arity);
        for (e, c) in &self.terms {
            let sc = c.mul(s);
            if !sc.is_zero() {
                out.terms.insert(e.clone(), sc);
            }
        }
        out
    }

    /// Substitutes one branch element per variable.  Powers are cached per
    /// variable; precision propagates through the series operations.
    pub fn evaluate(&self, gens: &[BranchElement]) -> Result<BranchElement> {
        if gens.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: gens.len() });
        }
        let branches = match gens.first() {
            Some(g) => g.branch_count(),
            None => {
                return Err(Error::ArityMismatch { expected: 1, got: 0 });
            }
        };
        for g in gens {
            if g.field() != self.field {
                return Err(Error::FieldMismatch(format!(
                    "generator over {} substituted into a polynomial over {}",
                    g.field(),
                    self.field
                )));
            }
            if g.branch_count() != branches {
                return Err(Error::DimensionMismatch(
                    "generators with different branch counts".into(),
                ));
            }
        }
        // powers[j][k] = gens[j]^k
        let mut powers: Vec<Vec<BranchElement>> = gens
            .iter()
            .map(|_| vec![BranchElement::one(self.field, branches)])
            .collect();
        for (j, g) in gens.iter().enumerate() {
            let max_e = self.terms.keys().map(|e| e[j]).max().unwrap_or(0);
            for _ in 0..max_e {
                let next = powers[j].last().unwrap().mul(g)?;
                powers[j].push(next);
            }
        }
        let mut acc = BranchElement::zero(self.field, branches);
        for (exps, c) in &self.terms {
            let mut m = BranchElement::one(self.field, branches);
            for (j, e) in exps.iter().enumerate() {
                if *e > 0 {
                    m = m.mul(&powers[j][*e as usize])?;
                }
            }
            acc = acc.add(&m.scalar_mul(c))?;
        }
        Ok(acc)
    }

    /// Renders the polynomial with the given variable names.
    pub fn display_with(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.arity, "one name per variable");
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (exps, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let mono: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(j, e)| {
                    if *e == 1 {
                        names[j].clone()
                    } else {
                        format!("{}^{}", names[j], e)
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&c.to_string());
            } else if c.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{}*{}", c, mono.join("*")));
            }
        }
        out
    }
}

impl fmt::Display for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.arity).map(|j| format!("g{}", j + 1)).collect();
        write!(f, "{}", self.display_with(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::TruncatedSeries;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn mono(e: u32, c: i64) -> TruncatedSeries {
        TruncatedSeries::monomial(q(), e, Scalar::from_i64(q(), c))
    }

    fn elem(series: Vec<TruncatedSeries>) -> BranchElement {
        BranchElement::new(q(), series).unwrap()
    }

    #[test]
    fn cusp_relation_evaluates_to_exact_zero() {
        // y^2 - x^3 vanishes on x = t^3, y = t^2 ... with x = t^2, y = t^3:
        // y^2 - x^3 = t^6 - t^6 = 0 exactly.
        let x = elem(vec![mono(2, 1)]);
        let y = elem(vec![mono(3, 1)]);
        let mut p = PolyExpr::new(q(), 2);
        p.add_term(&[0, 2], Scalar::from_i64(q(), 1)).unwrap();
        p.add_term(&[3, 0], Scalar::from_i64(q(), -1)).unwrap();
        let v = p.evaluate(&[x, y]).unwrap();
        assert!(v.is_exact_zero());
    }

    #[test]
    fn constants_evaluate_to_the_diagonal() {
        let x = elem(vec![mono(1, 1), mono(2, 1)]);
        let y = elem(vec![mono(3, 1), mono(1, 1)]);
        let p = PolyExpr::constant(q(), 2, Scalar::one(q()));
        let v = p.evaluate(&[x, y]).unwrap();
        for i in 0..2 {
            assert!(v.component(i).known_coeff(0).unwrap().is_one());
        }
    }

    #[test]
    fn arity_is_checked() {
        let x = elem(vec![mono(1, 1)]);
        let p = PolyExpr::variable(q(), 2, 0);
        assert!(matches!(
            p.evaluate(&[x]),
            Err(Error::ArityMismatch { expected: 2, got: 1 })
        ));
        let mut p2 = PolyExpr::new(q(), 2);
        assert!(matches!(
            p2.add_term(&[1], Scalar::one(q())),
            Err(Error::ArityMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn evaluation_is_multiplicative() {
        let x = elem(vec![mono(2, 1), mono(3, 2)]);
        let y = elem(vec![mono(3, 1), mono(2, -1)]);
        let gens = [x, y];
        let a = PolyExpr::from_terms(
            q(),
            2,
            vec![
                (vec![1, 0], Scalar::from_i64(q(), 2)),
                (vec![0, 1], Scalar::from_i64(q(), -3)),
            ],
        )
        .unwrap();
        let b = PolyExpr::from_terms(
            q(),
            2,
            vec![
                (vec![1, 1], Scalar::from_i64(q(), 1)),
                (vec![0, 0], Scalar::from_i64(q(), 5)),
            ],
        )
        .unwrap();
        let lhs = a.mul(&b).unwrap().evaluate(&gens).unwrap();
        let rhs = a.evaluate(&gens).unwrap().mul(&b.evaluate(&gens).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
