//! Numerical semigroups: cofinite additive submonoids of the naturals.
//!
//! Stored as the finite set of members strictly below the conductor plus the
//! conductor itself; membership for arbitrary `n` is
//! `n >= conductor || small_values.contains(n)`.
//!
//! Invariants:
//! * every stored small value is strictly below the conductor,
//! * `0` is a member (so `0 ∈ small_values` whenever the conductor is
//!   positive),
//! * `conductor - 1` is not a member when the conductor is positive,
//! * the member set is closed under addition.
//!
//! The canonical text rendering is `gamma = {v1,...,vk} + c•N`, listing the
//! small values and the conductor.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalSemigroup {
    small_values: BTreeSet<u32>,
    conductor: u32,
}

fn gcd(a: u32, b: u32) -> u32 {
    num::integer::gcd(a, b)
}

impl NumericalSemigroup {
    /// The full monoid of naturals.
    pub fn naturals() -> Self {
        NumericalSemigroup { small_values: BTreeSet::new(), conductor: 0 }
    }

    /// Submonoid generated by the given values.  Zero generators are
    /// ignored; the gcd of the rest must be 1 for the complement to be
    /// finite.
    pub fn from_generators(generators: &[u32]) -> Result<Self> {
        let gens: Vec<u32> = generators.iter().copied().filter(|g| *g > 0).collect();
        let g = gens.iter().fold(0, |acc, v| gcd(acc, *v));
        if g != 1 {
            return Err(Error::NotNumerical(g));
        }
        let m0 = *gens.iter().min().expect("gcd 1 requires a nonzero generator") as usize;
        // Sieve until a run of m0 consecutive members appears; closure then
        // extends the run forever.  The bound doubles as needed (the
        // conductor is finite because the gcd is 1).
        let mut bound = 4 * gens.iter().map(|g| *g as usize).max().unwrap() + 4;
        loop {
            let mut member = vec![false; bound + 1];
            member[0] = true;
            for n in 0..=bound {
                if !member[n] {
                    continue;
                }
                for g in &gens {
                    let next = n + *g as usize;
                    if next <= bound {
                        member[next] = true;
                    }
                }
            }
            let mut run = 0usize;
            let mut conductor = None;
            for (n, &hit) in member.iter().enumerate() {
                if hit {
                    run += 1;
                    if run >= m0 {
                        conductor = Some(n + 1 - m0);
                        break;
                    }
                } else {
                    run = 0;
                }
            }
            if let Some(c) = conductor {
                let small_values =
                    (0..c).filter(|n| member[*n]).map(|n| n as u32).collect();
                return Ok(NumericalSemigroup { small_values, conductor: c as u32 });
            }
            bound *= 2;
        }
    }

    /// Packages an explicitly listed value set certified up to (and
    /// including) `certified_through`.
    pub fn from_value_set(values: &BTreeSet<u32>, certified_through: u32) -> Result<Self> {
        if !values.contains(&0) {
            return Err(Error::NotClosed(0, 0));
        }
        if let Some(max) = values.iter().next_back() {
            if *max > certified_through {
                return Err(Error::ConductorNotCertified(format!(
                    "value {max} beyond certified range {certified_through}"
                )));
            }
        }
        for a in values {
            for b in values.range(a..) {
                let s = a + b;
                if s <= certified_through && !values.contains(&s) {
                    return Err(Error::NotClosed(*a, *b));
                }
            }
        }
        let m0 = match values.iter().find(|v| **v > 0) {
            Some(m) => *m,
            None => {
                return Err(Error::ConductorNotCertified(
                    "no nonzero member below the certified bound".into(),
                ))
            }
        };
        // Minimal c with [c, certified_through] fully contained in the set;
        // the tail run must be at least m0 long for closure to certify it.
        let mut c = certified_through + 1;
        while c > 0 && values.contains(&(c - 1)) {
            c -= 1;
        }
        if certified_through + 1 - c < m0 {
            return Err(Error::ConductorNotCertified(format!(
                "tail run of length {} below minimal member {m0}",
                certified_through + 1 - c
            )));
        }
        let small_values = values.range(..c).copied().collect();
        Ok(NumericalSemigroup { small_values, conductor: c })
    }

    pub fn contains(&self, n: u32) -> bool {
        n >= self.conductor || self.small_values.contains(&n)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn small_values(&self) -> &BTreeSet<u32> {
        &self.small_values
    }

    /// Smallest nonzero member (the multiplicity when this is the value
    /// semigroup of a branch).
    pub fn min_nonzero(&self) -> u32 {
        match self.small_values.iter().find(|v| **v > 0) {
            Some(m) => *m,
            None => self.conductor.max(1),
        }
    }

    /// Complement of the semigroup in the naturals.
    pub fn gaps(&self) -> Vec<u32> {
        (0..self.conductor).filter(|n| !self.small_values.contains(n)).collect()
    }

    pub fn genus(&self) -> u32 {
        self.gaps().len() as u32
    }

    /// Symmetry of the gap structure: `s` is a member iff `c - 1 - s` is
    /// not.  For value semigroups of Gorenstein branches this is exactly the
    /// Gorenstein condition.
    pub fn is_symmetric(&self) -> bool {
        let c = self.conductor;
        (0..c).all(|s| self.contains(s) != self.contains(c - 1 - s))
    }

    /// Members up to and including `upto`.
    pub fn members_through(&self, upto: u32) -> Vec<u32> {
        (0..=upto).filter(|n| self.contains(*n)).collect()
    }

    /// Canonical JSON array: the small values followed by the conductor.
    pub fn to_json(&self) -> serde_json::Value {
        let mut arr: Vec<serde_json::Value> =
            self.small_values.iter().map(|v| serde_json::Value::from(*v)).collect();
        arr.push(serde_json::Value::from(self.conductor));
        serde_json::Value::Array(arr)
    }

    /// Inverse of [`to_json`](Self::to_json).
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let arr = value
            .as_array()
            .ok_or_else(|| Error::SchemaError("numerical semigroup must be an array".into()))?;
        let nums: Vec<u32> = arr
            .iter()
            .map(|v| {
                v.as_u64()
                    .and_then(|n| u32::try_from(n).ok())
                    .ok_or_else(|| Error::SchemaError("non-natural entry".into()))
            })
            .collect::<Result<_>>()?;
        let (conductor, smalls) = match nums.split_last() {
            Some((c, rest)) => (*c, rest),
            None => return Err(Error::SchemaError("empty numerical semigroup array".into())),
        };
        let small_values: BTreeSet<u32> = smalls.iter().copied().collect();
        if let Some(max) = small_values.iter().next_back() {
            if *max >= conductor {
                return Err(Error::SchemaError(
                    "small value at or beyond the conductor".into(),
                ));
            }
        }
        if conductor > 0 && !small_values.contains(&0) {
            return Err(Error::SchemaError("0 must be a member".into()));
        }
        Ok(NumericalSemigroup { small_values, conductor })
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let smalls: Vec<String> = self.small_values.iter().map(|v| v.to_string()).collect();
        write!(f, "gamma = {{{}}} + {}\u{2022}N", smalls.join(","), self.conductor)
    }
}
