//! Value semigroups of multibranch curve rings: subsets of `N^r` closed
//! under addition, with a conductor vector `gamma` such that everything at
//! or above `gamma` belongs to the set.
//!
//! The semigroup is stored as the finite set of members inside the box
//! `[0, gamma]`; membership of an arbitrary vector `v` is decided by capping,
//! `v ∈ ν  iff  min(v, gamma) ∈ box_members` componentwise.  Capping is
//! faithful because the conductor region corresponds to an ideal of the
//! normalization: a coordinate can be raised past `gamma_i` or lowered onto
//! it by adding a conductor element on that branch alone.
//!
//! Invariants:
//! * `0` and `gamma` are members, every member lies in the box,
//! * closure: for members `a, b`, `cap(a + b)` is again a member,
//! * unit axis property (locality): a nonzero member has no zero coordinate,
//! * `gamma` is the componentwise-minimal conductor vector.
//!
//! `validate` reports violations of the algebraic invariants; the engine
//! treats a non-empty report on its own output as an internal error.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::numerical::NumericalSemigroup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueSemigroup {
    gamma: Vec<u32>,
    box_members: BTreeSet<Vec<u32>>,
}

impl ValueSemigroup {
    /// Wraps a conductor vector and box member set, enforcing the structural
    /// invariants (dimensions, bounds, `0` and `gamma` membership).  The
    /// algebraic invariants are checked by [`validate`](Self::validate).
    pub fn new(gamma: Vec<u32>, box_members: BTreeSet<Vec<u32>>) -> Result<Self> {
        if gamma.is_empty() {
            return Err(Error::DimensionMismatch("empty conductor vector".into()));
        }
        let r = gamma.len();
        for m in &box_members {
            if m.len() != r {
                return Err(Error::DimensionMismatch(format!(
                    "member of length {} in a semigroup of {} branches",
                    m.len(),
                    r
                )));
            }
            if m.iter().zip(&gamma).any(|(a, g)| a > g) {
                return Err(Error::DimensionMismatch(format!(
                    "member {m:?} outside the conductor box {gamma:?}"
                )));
            }
        }
        if !box_members.contains(&vec![0; r]) {
            return Err(Error::DimensionMismatch("0 must be a member".into()));
        }
        if !box_members.contains(&gamma) {
            return Err(Error::ConductorMismatch(format!(
                "conductor {gamma:?} is not a member"
            )));
        }
        Ok(ValueSemigroup { gamma, box_members })
    }

    pub fn r(&self) -> usize {
        self.gamma.len()
    }

    pub fn gamma(&self) -> &[u32] {
        &self.gamma
    }

    pub fn box_members(&self) -> &BTreeSet<Vec<u32>> {
        &self.box_members
    }

    fn cap(&self, v: &[u32]) -> Vec<u32> {
        v.iter().zip(&self.gamma).map(|(a, g)| (*a).min(*g)).collect()
    }

    pub fn contains(&self, v: &[u32]) -> Result<bool> {
        if v.len() != self.gamma.len() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} branches",
                v.len(),
                self.gamma.len()
            )));
        }
        Ok(self.box_members.contains(&self.cap(v)))
    }

    /// The componentwise-minimal nonzero member.  For the value semigroup of
    /// a curve this is the vector of branch multiplicities; over very small
    /// fields the minimum of the member set need not itself be a member, in
    /// which case there is no unique minimum.
    pub fn minimal_nonzero(&self) -> Result<Vec<u32>> {
        let r = self.gamma.len();
        let zero = vec![0; r];
        let mut candidate: Option<Vec<u32>> = None;
        for m in &self.box_members {
            if *m == zero {
                continue;
            }
            candidate = Some(match candidate {
                None => m.clone(),
                Some(c) => c.iter().zip(m).map(|(a, b)| (*a).min(*b)).collect(),
            });
        }
        match candidate {
            None => {
                // Box contains only 0, so gamma = 0 and the semigroup is all
                // of N^r; minimal nonzero exists only in one dimension.
                if r == 1 {
                    Ok(vec![1])
                } else {
                    Err(Error::NotUnique("no nonzero member in the box".into()))
                }
            }
            Some(c) => {
                if self.box_members.contains(&c) {
                    Ok(c)
                } else {
                    Err(Error::NotUnique(format!(
                        "componentwise minimum {c:?} is not a member"
                    )))
                }
            }
        }
    }

    /// Projection onto the listed coordinate axes, with the conductor
    /// re-minimized (a projection can be regular on axes where the original
    /// was not).
    pub fn project(&self, keep: &[usize]) -> Result<ValueSemigroup> {
        let r = self.gamma.len();
        if keep.is_empty() {
            return Err(Error::DimensionMismatch("projection onto no axes".into()));
        }
        let mut seen = vec![false; r];
        for &j in keep {
            if j >= r {
                return Err(Error::DimensionMismatch(format!(
                    "axis {j} out of range for {r} branches"
                )));
            }
            if seen[j] {
                return Err(Error::DimensionMismatch(format!("axis {j} repeated")));
            }
            seen[j] = true;
        }
        let old_gamma: Vec<u32> = keep.iter().map(|&j| self.gamma[j]).collect();
        let projected: BTreeSet<Vec<u32>> = self
            .box_members
            .iter()
            .map(|m| keep.iter().map(|&j| m[j]).collect())
            .collect();
        // Re-minimize the conductor one axis at a time: valid conductor
        // vectors are closed under componentwise min, so the axes decouple.
        let k = keep.len();
        let mut new_gamma = old_gamma.clone();
        for j in 0..k {
            let mut c = old_gamma[j];
            while c > 0 {
                let mut probe = old_gamma.clone();
                probe[j] = c - 1;
                if projected.contains(&probe) {
                    c -= 1;
                } else {
                    break;
                }
            }
            new_gamma[j] = c;
        }
        let members: BTreeSet<Vec<u32>> = projected
            .iter()
            .map(|m| m.iter().zip(&new_gamma).map(|(a, g)| (*a).min(*g)).collect())
            .collect();
        ValueSemigroup::new(new_gamma, members)
    }

    /// Image of the semigroup under coordinate sum: the value semigroup of
    /// lengths `l(g) = Σ ord_i(g)`.
    pub fn sum_image(&self) -> Result<NumericalSemigroup> {
        let total: u32 = self.gamma.iter().sum();
        let bound = 2 * total + 2;
        let mut values: BTreeSet<u32> = BTreeSet::new();
        for m in &self.box_members {
            let s: u32 = m.iter().sum();
            let saturated = m.iter().zip(&self.gamma).any(|(a, g)| a == g && *g > 0);
            if saturated || self.gamma.iter().all(|g| *g == 0) {
                for n in s..=bound {
                    values.insert(n);
                }
            } else {
                values.insert(s);
            }
        }
        NumericalSemigroup::from_value_set(&values, bound)
    }

    /// Structural equality, optionally up to a permutation of the branches.
    pub fn equals(&self, other: &ValueSemigroup, up_to_permutation: bool) -> bool {
        if self.gamma.len() != other.gamma.len() {
            return false;
        }
        if !up_to_permutation {
            return self == other;
        }
        if self == other {
            return true;
        }
        let r = self.gamma.len();
        let mut perm: Vec<usize> = (0..r).collect();
        permute_all(&mut perm, 0, &mut |p| {
            let g: Vec<u32> = p.iter().map(|&j| self.gamma[j]).collect();
            if g != other.gamma {
                return false;
            }
            let members: BTreeSet<Vec<u32>> = self
                .box_members
                .iter()
                .map(|m| p.iter().map(|&j| m[j]).collect())
                .collect();
            members == other.box_members
        })
    }

    /// Duality test underlying the Gorenstein property: `v` is a member iff
    /// for every axis `i` the shifted slice `Δ_i(mu_vec - 1 - v)` misses the
    /// semigroup.  The candidate `mu_vec` must equal the conductor vector
    /// (they coincide exactly when the duality can hold at all).
    ///
    /// The scan runs over the box `[0, gamma]`; outside it both sides are
    /// stable (membership by capping, the slices because the raised base
    /// coordinates have gone negative).
    pub fn gorenstein_symmetry(&self, mu_vec: &[u32]) -> Result<bool> {
        let r = self.gamma.len();
        if mu_vec != self.gamma {
            return Err(Error::ConductorMismatch(format!(
                "candidate {:?} differs from the conductor vector {:?}",
                mu_vec, self.gamma
            )));
        }
        let scan = self.gamma.clone();
        let mut v = vec![0u32; r];
        loop {
            let lhs = self.contains(&v)?;
            let mut rhs = true;
            for axis in 0..r {
                let base: Vec<i64> = mu_vec
                    .iter()
                    .zip(&v)
                    .map(|(m, x)| *m as i64 - 1 - *x as i64)
                    .collect();
                let delta = DeltaSet { base, axis };
                if delta.intersects(self)? {
                    rhs = false;
                    break;
                }
            }
            if lhs != rhs {
                return Ok(false);
            }
            // Odometer over the scan box.
            let mut i = 0;
            loop {
                if i == r {
                    return Ok(true);
                }
                if v[i] < scan[i] {
                    v[i] += 1;
                    break;
                }
                v[i] = 0;
                i += 1;
            }
        }
    }

    /// Checks the algebraic invariants, returning one line per violation.
    pub fn validate(&self) -> Vec<String> {
        let mut report = Vec::new();
        let r = self.gamma.len();
        let zero = vec![0u32; r];
        for a in &self.box_members {
            for b in &self.box_members {
                let sum: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if !self.box_members.contains(&self.cap(&sum)) {
                    report.push(format!("closure fails: {a:?} + {b:?}"));
                }
            }
        }
        for m in &self.box_members {
            if *m != zero && m.contains(&0) && m.iter().any(|x| *x > 0) {
                report.push(format!("axis property fails: {m:?} mixes zero and nonzero"));
            }
        }
        for i in 0..r {
            if self.gamma[i] == 0 {
                continue;
            }
            let mut u = self.gamma.clone();
            u[i] -= 1;
            if self.box_members.contains(&u) {
                report.push(format!("conductor not minimal on axis {i}"));
            }
        }
        report
    }

    /// Canonical JSON object with keys `gamma`, `members`, `r`; members are
    /// listed in lexicographic order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "r": self.gamma.len(),
            "gamma": self.gamma,
            "members": self.box_members.iter().collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::SchemaError("value semigroup must be an object".into()))?;
        let gamma: Vec<u32> = parse_u32_array(
            obj.get("gamma")
                .ok_or_else(|| Error::SchemaError("missing gamma".into()))?,
        )?;
        let members_json = obj
            .get("members")
            .and_then(|m| m.as_array())
            .ok_or_else(|| Error::SchemaError("missing members array".into()))?;
        let mut members = BTreeSet::new();
        for m in members_json {
            members.insert(parse_u32_array(m)?);
        }
        if let Some(r) = obj.get("r").and_then(|r| r.as_u64()) {
            if r as usize != gamma.len() {
                return Err(Error::SchemaError("r disagrees with gamma length".into()));
            }
        }
        ValueSemigroup::new(gamma, members)
    }
}

fn parse_u32_array(value: &serde_json::Value) -> Result<Vec<u32>> {
    value
        .as_array()
        .ok_or_else(|| Error::SchemaError("expected an array of naturals".into()))?
        .iter()
        .map(|v| {
            v.as_u64()
                .and_then(|n| u32::try_from(n).ok())
                .ok_or_else(|| Error::SchemaError("non-natural entry".into()))
        })
        .collect()
}

/// Tries permutations of `perm[from..]`, returning true as soon as the
/// visitor accepts one.
fn permute_all(perm: &mut Vec<usize>, from: usize, accept: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if from == perm.len() {
        return accept(perm);
    }
    for i in from..perm.len() {
        perm.swap(from, i);
        if permute_all(perm, from + 1, accept) {
            perm.swap(from, i);
            return true;
        }
        perm.swap(from, i);
    }
    false
}

/// The slice `Δ_axis(base) = { w : w_axis = base_axis, w_j > base_j for j ≠ axis }`.
///
/// Used in the Gorenstein duality test; base coordinates may be negative, in
/// which case the constraint on that coordinate is empty (for the fixed axis)
/// or vacuous (for the others).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaSet {
    pub base: Vec<i64>,
    pub axis: usize,
}

impl DeltaSet {
    /// Whether the slice meets the semigroup.  Only capped representatives
    /// need to be enumerated: raising a coordinate past `gamma` never
    /// changes membership.
    pub fn intersects(&self, semigroup: &ValueSemigroup) -> Result<bool> {
        let r = semigroup.r();
        if self.base.len() != r {
            return Err(Error::DimensionMismatch(format!(
                "delta set in dimension {} against {} branches",
                self.base.len(),
                r
            )));
        }
        if self.axis >= r {
            return Err(Error::DimensionMismatch(format!("axis {} out of range", self.axis)));
        }
        if self.base[self.axis] < 0 {
            return Ok(false);
        }
        let gamma = semigroup.gamma();
        // Candidate classes per coordinate: the fixed axis is pinned to its
        // capped value; the others range over (base_j, gamma_j] capped.
        let mut ranges: Vec<Vec<u32>> = Vec::with_capacity(r);
        for (j, &g) in gamma.iter().enumerate() {
            if j == self.axis {
                ranges.push(vec![(self.base[j] as u32).min(g)]);
            } else {
                let lo = (self.base[j] + 1).max(0) as u32;
                if lo > g {
                    ranges.push(vec![g]);
                } else {
                    ranges.push((lo..=g).collect());
                }
            }
        }
        let mut idx = vec![0usize; r];
        loop {
            let w: Vec<u32> = idx.iter().enumerate().map(|(j, &k)| ranges[j][k]).collect();
            if semigroup.box_members().contains(&w) {
                return Ok(true);
            }
            let mut j = 0;
            loop {
                if j == r {
                    return Ok(false);
                }
                if idx[j] + 1 < ranges[j].len() {
                    idx[j] += 1;
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
        }
    }
}

impl fmt::Display for ValueSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "nu: gamma = {:?}, {} box members", self.gamma, self.box_members.len())
    }
}
