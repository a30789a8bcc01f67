//! Truncated linear-algebra model of the curve ring inside its normalization.
//!
//! The subalgebra `R = k[g_1, …, g_m] ⊆ ∏_i k[[t_i]]` is modeled by its image
//! `V` in the finite quotient `∏_i k[t]/(t^{T_i})`.  `V` is the span of all
//! monomials in the generators; it is computed by a worklist closure: starting
//! from `1`, multiply spanning elements by generators and keep products that
//! enlarge the span.  Every monomial image lies in the final span — by
//! induction on degree, a monomial `m'·g_j` is a combination of
//! `(inserted row)·g_j` products, and each of those was offered to the basis.
//!
//! Vectors are flattened branch-major: position `offset_i + e` holds the `t^e`
//! coefficient on branch `i`.  The basis is kept in reduced echelon form with
//! strictly increasing pivots, so pivot positions read off per-branch order
//! data directly (the staircase of the projected module is exactly the set of
//! orders realized by elements of the projection).

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};
use crate::series::BranchElement;

/// Coordinate layout of the flattened product `∏_i k[t]/(t^{T_i})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Layout {
    pub field: FieldSpec,
    pub truncations: Vec<u32>,
    pub offsets: Vec<usize>,
    pub total: usize,
}

impl Layout {
    pub fn new(field: FieldSpec, truncations: &[u32]) -> Layout {
        let mut offsets = Vec::with_capacity(truncations.len());
        let mut total = 0usize;
        for &t in truncations {
            offsets.push(total);
            total += t as usize;
        }
        Layout {
            field,
            truncations: truncations.to_vec(),
            offsets,
            total,
        }
    }

    pub fn branches(&self) -> usize {
        self.truncations.len()
    }

    pub fn position(&self, branch: usize, exp: u32) -> usize {
        self.offsets[branch] + exp as usize
    }

    pub fn zero_vec(&self) -> Vec<Scalar> {
        vec![Scalar::zero(self.field); self.total]
    }

    pub fn unit_vec(&self, branch: usize, exp: u32) -> Vec<Scalar> {
        let mut v = self.zero_vec();
        v[self.position(branch, exp)] = Scalar::one(self.field);
        v
    }

    /// Dense image of a branch element; requires every component to be known
    /// through the full window.
    pub fn flatten(&self, element: &BranchElement) -> Result<Vec<Scalar>> {
        if element.branch_count() != self.branches() {
            return Err(Error::DimensionMismatch(format!(
                "element has {} components, model has {} branches",
                element.branch_count(),
                self.branches()
            )));
        }
        let mut v = self.zero_vec();
        for (i, &t) in self.truncations.iter().enumerate() {
            let comp = element.component(i);
            if !comp.precision().covers(t) {
                return Err(Error::PrecisionExhausted(format!(
                    "branch {} series known only below t^{}, model window needs t^{}",
                    i + 1,
                    comp.precision().bound().unwrap_or(0),
                    t
                )));
            }
            for (exp, c) in comp.terms() {
                if exp < t {
                    v[self.position(i, exp)] = c.clone();
                }
            }
        }
        Ok(v)
    }

    /// Branchwise truncated product of two dense vectors.
    pub fn convolve(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vec();
        for (i, &t) in self.truncations.iter().enumerate() {
            let off = self.offsets[i];
            let t = t as usize;
            for e1 in 0..t {
                if a[off + e1].is_zero() {
                    continue;
                }
                for e2 in 0..t - e1 {
                    if b[off + e2].is_zero() {
                        continue;
                    }
                    let prod = a[off + e1].mul(&b[off + e2]);
                    out[off + e1 + e2] = out[off + e1 + e2].add(&prod);
                }
            }
        }
        out
    }
}

/// Reduced-echelon accumulator over an exact field.
#[derive(Debug, Clone)]
pub(crate) struct Eliminator {
    width: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Eliminator {
    pub fn new(width: usize) -> Eliminator {
        Eliminator {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Eliminate every pivot coordinate of `v` against the basis.
    pub fn reduce(&self, v: &mut [Scalar]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x = x.sub(&c.mul(y));
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Scalar::is_zero)
    }

    /// Insert `v` if independent of the basis; returns the new pivot.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> Option<usize> {
        debug_assert_eq!(v.len(), self.width);
        self.reduce(&mut v);
        let p = v.iter().position(|c| !c.is_zero())?;
        let inv = v[p].inv().expect("nonzero field element is invertible");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    if !y.is_zero() {
                        *x = x.sub(&c.mul(y));
                    }
                }
            }
        }
        let at = self
            .pivots
            .binary_search(&p)
            .expect_err("pivot position must be new");
        self.rows.insert(at, v);
        self.pivots.insert(at, p);
        Some(p)
    }
}

/// Monomial in the generators together with its dense image.
#[derive(Debug, Clone)]
pub struct Monomial {
    /// Exponent vector over the generators.
    pub exponents: Vec<u32>,
    /// Unreduced flattened image in the model window.
    pub image: Vec<Scalar>,
}

/// Echelonized image of the curve ring in a fixed truncation window.
#[derive(Debug, Clone)]
pub struct AlgebraModel {
    layout: Layout,
    monomials: Vec<Monomial>,
    basis: Eliminator,
}

impl AlgebraModel {
    /// Span all monomials in `generators` inside `∏ k[t]/(t^{T_i})`.
    pub fn build(
        field: FieldSpec,
        generators: &[BranchElement],
        truncations: &[u32],
    ) -> Result<AlgebraModel> {
        if truncations.is_empty() || truncations.contains(&0) {
            return Err(Error::DimensionMismatch(
                "truncation orders must all be at least 1".into(),
            ));
        }
        let layout = Layout::new(field, truncations);
        let m = generators.len();
        let gen_images: Vec<Vec<Scalar>> = generators
            .iter()
            .map(|g| layout.flatten(g))
            .collect::<Result<_>>()?;

        let mut basis = Eliminator::new(layout.total);
        let mut monomials = Vec::new();
        let mut queue: VecDeque<(Vec<u32>, Vec<Scalar>)> = VecDeque::new();

        let one = layout.flatten(&BranchElement::one(field, layout.branches()))?;
        basis
            .insert(one.clone())
            .expect("1 is nonzero in a fresh basis");
        monomials.push(Monomial {
            exponents: vec![0; m],
            image: one.clone(),
        });
        queue.push_back((vec![0; m], one));

        while let Some((exps, img)) = queue.pop_front() {
            for (j, gimg) in gen_images.iter().enumerate() {
                let prod = layout.convolve(&img, gimg);
                if basis.insert(prod.clone()).is_some() {
                    let mut e = exps.clone();
                    e[j] += 1;
                    monomials.push(Monomial {
                        exponents: e.clone(),
                        image: prod.clone(),
                    });
                    queue.push_back((e, prod));
                }
            }
        }
        Ok(AlgebraModel {
            layout,
            monomials,
            basis,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.layout.field
    }

    pub fn branches(&self) -> usize {
        self.layout.branches()
    }

    pub fn truncations(&self) -> &[u32] {
        &self.layout.truncations
    }

    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    /// Pivot positions in flattened branch-major order.
    pub fn pivots(&self) -> &[usize] {
        self.basis.pivots()
    }

    /// Monomials that enlarged the span during construction (their images
    /// span `V`).
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn flatten(&self, element: &BranchElement) -> Result<Vec<Scalar>> {
        self.layout.flatten(element)
    }

    pub fn vec_mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.layout.convolve(a, b)
    }

    pub fn in_span(&self, v: &[Scalar]) -> bool {
        self.basis.contains(v)
    }

    /// Start of the longest run of unit vectors `(branch, e), e < T` lying in
    /// `V`; equals the conductor exponent on that branch once certified.
    pub fn tail_start(&self, branch: usize) -> u32 {
        let t = self.layout.truncations[branch];
        let mut start = t;
        for e in (0..t).rev() {
            if self.in_span(&self.layout.unit_vec(branch, e)) {
                start = e;
            } else {
                break;
            }
        }
        start
    }

    /// Rank of the projection of `V` onto the positions `(i, e)` with
    /// `e < cutoffs[i]`.  Rows are compacted onto the kept columns so the
    /// elimination runs at cutoff size, not window size; the semigroup scan
    /// calls this once per box point.
    pub fn rank_below(&self, cutoffs: &[u32]) -> usize {
        debug_assert_eq!(cutoffs.len(), self.branches());
        let mut keep: Vec<usize> = Vec::new();
        for (i, &cut) in cutoffs.iter().enumerate() {
            for e in 0..cut.min(self.layout.truncations[i]) {
                keep.push(self.layout.position(i, e));
            }
        }
        let mut elim = Eliminator::new(keep.len());
        for row in self.basis.rows() {
            if keep.iter().all(|&p| row[p].is_zero()) {
                continue;
            }
            elim.insert(keep.iter().map(|&p| row[p].clone()).collect());
        }
        elim.rank()
    }

    /// Rank of `V` together with all unit tails `(i, e), e ≥ starts[i]`.
    pub fn rank_with_tails(&self, starts: &[u32]) -> usize {
        debug_assert_eq!(starts.len(), self.branches());
        let mut elim = self.basis.clone();
        for (i, &start) in starts.iter().enumerate() {
            for e in start..self.layout.truncations[i] {
                elim.insert(self.layout.unit_vec(i, e));
            }
        }
        elim.rank()
    }

    /// Orders realized by the projection of `V` onto branch `i`, within the
    /// window; for a curve this is `Γ(R/p_i) ∩ [0, T_i)`.
    pub fn branch_staircase(&self, branch: usize) -> Vec<u32> {
        let t = self.layout.truncations[branch] as usize;
        let off = self.layout.offsets[branch];
        let mut elim = Eliminator::new(t);
        for row in self.basis.rows() {
            elim.insert(row[off..off + t].to_vec());
        }
        elim.pivots().iter().map(|&p| p as u32).collect()
    }

    /// True when every basis vector has equal constant terms across branches
    /// (the model of a local ring).
    pub fn is_local(&self) -> bool {
        let first = self.layout.position(0, 0);
        self.basis.rows().iter().all(|row| {
            (1..self.branches()).all(|i| row[self.layout.position(i, 0)] == row[first])
        })
    }

    /// Basis of the maximal-ideal subspace `m = ker(constant functional)`.
    /// In reduced echelon form this is every row except the constant row.
    pub fn maximal_ideal_rows(&self) -> Result<Vec<Vec<Scalar>>> {
        if !self.is_local() {
            return Err(Error::NotLocal(
                "model has unequal constant terms across branches".into(),
            ));
        }
        let const_pos = self.layout.position(0, 0);
        Ok(self
            .basis
            .rows()
            .iter()
            .zip(self.basis.pivots())
            .filter(|(_, &p)| p != const_pos)
            .map(|(row, _)| {
                debug_assert!(row[const_pos].is_zero());
                row.clone()
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::TruncatedSeries;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn mono(exp: u32) -> TruncatedSeries {
        TruncatedSeries::monomial(q(), exp, Scalar::one(q()))
    }

    fn elem(components: Vec<TruncatedSeries>) -> BranchElement {
        BranchElement::new(q(), components).unwrap()
    }

    #[test]
    fn cuspidal_quartic_pivots() {
        // x = t^4, y = t^3: the staircase of ⟨3,4⟩ below 12.
        let gens = vec![elem(vec![mono(4)]), elem(vec![mono(3)])];
        let model = AlgebraModel::build(q(), &gens, &[12]).unwrap();
        assert_eq!(model.pivots(), &[0, 3, 4, 6, 7, 8, 9, 10, 11]);
        assert_eq!(model.dim(), 9);
        assert_eq!(model.tail_start(0), 6);
        assert_eq!(
            model.branch_staircase(0),
            vec![0, 3, 4, 6, 7, 8, 9, 10, 11]
        );
        // delta = 6 - rank below the conductor.
        assert_eq!(model.rank_below(&[6]), 3);
    }

    #[test]
    fn node_model_dimension() {
        let gens = vec![
            elem(vec![mono(1), TruncatedSeries::zero(q())]),
            elem(vec![TruncatedSeries::zero(q()), mono(1)]),
        ];
        let model = AlgebraModel::build(q(), &gens, &[3, 3]).unwrap();
        assert_eq!(model.dim(), 5);
        assert_eq!(model.pivots(), &[0, 1, 2, 4, 5]);
        assert_eq!(model.tail_start(0), 1);
        assert_eq!(model.tail_start(1), 1);
        assert!(model.is_local());
        assert_eq!(model.maximal_ideal_rows().unwrap().len(), 4);
        assert_eq!(model.branch_staircase(0), vec![0, 1, 2]);
    }

    #[test]
    fn smooth_branch_fills_the_window() {
        let gens = vec![elem(vec![mono(1)])];
        let model = AlgebraModel::build(q(), &gens, &[4]).unwrap();
        assert_eq!(model.dim(), 4);
        assert_eq!(model.tail_start(0), 0);
    }

    #[test]
    fn tails_and_cyclicity_ranks() {
        // Node: m·normalization is already inside the span, so both ranks
        // stay at dim V and the cyclicity defect is 0.
        let gens = vec![
            elem(vec![mono(1), TruncatedSeries::zero(q())]),
            elem(vec![TruncatedSeries::zero(q()), mono(1)]),
        ];
        let model = AlgebraModel::build(q(), &gens, &[3, 3]).unwrap();
        assert_eq!(model.rank_with_tails(&[1, 1]), 5);
        assert_eq!(model.rank_with_tails(&[2, 2]), 5);

        // The (3, 7) branch misses {1, 2} above t^3 and {1, 2, 4, 5} above
        // t^6, so the ranks differ by the cyclicity defect 2.
        let gens = vec![elem(vec![mono(3)]), elem(vec![mono(7)])];
        let model = AlgebraModel::build(q(), &gens, &[14]).unwrap();
        assert_eq!(model.rank_with_tails(&[3]), 12);
        assert_eq!(model.rank_with_tails(&[6]), 10);
    }

    #[test]
    fn convolution_truncates() {
        let layout = Layout::new(q(), &[3]);
        let a = layout
            .flatten(&elem(vec![mono(2)]))
            .unwrap();
        let sq = layout.convolve(&a, &a);
        assert!(sq.iter().all(Scalar::is_zero));
    }

    #[test]
    fn monomial_images_stay_in_span() {
        // Spot-check the worklist closure: x^2, y^3, x·y all reduce to zero.
        let gens = vec![elem(vec![mono(4)]), elem(vec![mono(3)])];
        let model = AlgebraModel::build(q(), &gens, &[12]).unwrap();
        let x = model.flatten(&gens[0]).unwrap();
        let y = model.flatten(&gens[1]).unwrap();
        for img in [
            model.vec_mul(&x, &x),
            model.vec_mul(&model.vec_mul(&y, &y), &y),
            model.vec_mul(&x, &y),
        ] {
            assert!(model.in_span(&img));
        }
        for mono in model.monomials() {
            assert!(model.in_span(&mono.image));
        }
    }

    #[test]
    fn rejects_zero_window() {
        let gens = vec![elem(vec![mono(1)])];
        assert!(matches!(
            AlgebraModel::build(q(), &gens, &[0]),
            Err(Error::DimensionMismatch(_))
        ));
    }
}
