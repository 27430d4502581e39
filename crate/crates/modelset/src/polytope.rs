//! Hyperplanes, half-spaces and convex polytopes over an exact scalar field.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg;
use crate::lp::{self, Constraint, LpResult};
use crate::scalar::Scalar;

/// Affine hyperplane `⟨normal, x⟩ = offset`, kept in canonical form: the first
/// nonzero normal entry is 1, so equal hyperplanes compare and hash equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Hyperplane<S> {
    normal: Vec<S>,
    offset: S,
}

impl<S: Scalar> Hyperplane<S> {
    pub fn new(normal: Vec<S>, offset: S) -> Result<Self> {
        let pivot = normal.iter().position(|c| !c.is_zero());
        let Some(p) = pivot else {
            return Err(Error::InvalidWindow("hyperplane with zero normal".into()));
        };
        let lead = normal[p].clone();
        let normal = normal
            .into_iter()
            .map(|c| c / lead.clone())
            .collect();
        Ok(Hyperplane {
            normal,
            offset: offset / lead,
        })
    }

    /// The hyperplane `{x : x_i = c}`.
    pub fn coordinate(dim: usize, i: usize, c: S) -> Self {
        let mut normal = vec![S::zero(); dim];
        normal[i] = S::one();
        Hyperplane { normal, offset: c }
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn normal(&self) -> &[S] {
        &self.normal
    }

    pub fn offset(&self) -> &S {
        &self.offset
    }

    /// `⟨normal, x⟩ − offset`.
    pub fn eval(&self, x: &[S]) -> S {
        linalg::dot(&self.normal, x) - self.offset.clone()
    }

    pub fn contains_point(&self, x: &[S]) -> bool {
        self.eval(x).is_zero()
    }

    /// An affine chart of the hyperplane: a base point and a basis of the
    /// direction space, mapping `t ∈ ℝ^{d−1}` to `base + Σ tⱼ dirⱼ`.
    pub fn chart(&self) -> HyperplaneChart<S> {
        let pivot = self
            .normal
            .iter()
            .position(|c| !c.is_zero())
            .expect("canonical hyperplane has a pivot");
        let d = self.dim();
        let mut base = vec![S::zero(); d];
        base[pivot] = self.offset.clone(); // normal[pivot] == 1
        let mut dirs = Vec::with_capacity(d - 1);
        for j in 0..d {
            if j == pivot {
                continue;
            }
            let mut v = vec![S::zero(); d];
            v[j] = S::one();
            v[pivot] = -self.normal[j].clone();
            dirs.push(v);
        }
        HyperplaneChart { base, dirs }
    }

    /// The two closed half-spaces bounded by this hyperplane.
    pub fn halfspaces(&self) -> (Halfspace<S>, Halfspace<S>) {
        (
            Halfspace::new(self.normal.clone(), self.offset.clone()),
            Halfspace::new(linalg::neg(&self.normal), -self.offset.clone()),
        )
    }
}

/// Chart of a hyperplane used to restrict geometry to it.
pub struct HyperplaneChart<S> {
    pub base: Vec<S>,
    pub dirs: Vec<Vec<S>>,
}

impl<S: Scalar> HyperplaneChart<S> {
    pub fn embed(&self, t: &[S]) -> Vec<S> {
        let mut x = self.base.clone();
        for (tj, dir) in t.iter().zip(self.dirs.iter()) {
            x = linalg::add(&x, &linalg::scale(dir, tj));
        }
        x
    }

    /// Pulls a hyperplane of the ambient space back to chart coordinates.
    /// `None` when the two are parallel or coincident (no proper trace).
    pub fn trace_hyperplane(&self, other: &Hyperplane<S>) -> Option<Hyperplane<S>> {
        let normal: Vec<S> = self
            .dirs
            .iter()
            .map(|dir| linalg::dot(other.normal(), dir))
            .collect();
        if linalg::is_zero_vec(&normal) {
            return None;
        }
        let offset = other.offset.clone() - linalg::dot(other.normal(), &self.base);
        Some(Hyperplane::new(normal, offset).expect("nonzero trace normal"))
    }

    pub fn trace_halfspace(&self, hs: &Halfspace<S>) -> TraceResult<S> {
        let normal: Vec<S> = self
            .dirs
            .iter()
            .map(|dir| linalg::dot(&hs.normal, dir))
            .collect();
        let offset = hs.offset.clone() - linalg::dot(&hs.normal, &self.base);
        if linalg::is_zero_vec(&normal) {
            match offset.signum() {
                s if s < 0 => TraceResult::Empty,
                0 => TraceResult::OnBoundary,
                _ => TraceResult::Full,
            }
        } else {
            TraceResult::Proper(Halfspace::new(normal, offset))
        }
    }
}

pub enum TraceResult<S> {
    /// The half-space does not constrain the chart.
    Full,
    /// The chart lies inside the half-space's boundary hyperplane.
    OnBoundary,
    /// The half-space excludes the whole chart.
    Empty,
    Proper(Halfspace<S>),
}

/// Closed half-space `⟨normal, x⟩ ≤ offset`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Halfspace<S> {
    pub normal: Vec<S>,
    pub offset: S,
}

impl<S: Scalar> Halfspace<S> {
    pub fn new(normal: Vec<S>, offset: S) -> Self {
        Halfspace { normal, offset }
    }

    pub fn boundary(&self) -> Result<Hyperplane<S>> {
        Hyperplane::new(self.normal.clone(), self.offset.clone())
    }

    /// `offset − ⟨normal, x⟩`: nonnegative inside, positive strictly inside.
    pub fn slack(&self, x: &[S]) -> S {
        self.offset.clone() - linalg::dot(&self.normal, x)
    }

    pub fn constraint(&self) -> Constraint<S> {
        Constraint::new(self.normal.clone(), self.offset.clone())
    }
}

/// Where a point sits relative to a closed convex set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Membership {
    Interior,
    Boundary,
    Outside,
}

/// Convex polytope as an intersection of closed half-spaces.
#[derive(Clone, Debug)]
pub struct Polytope<S> {
    dim: usize,
    halfspaces: Vec<Halfspace<S>>,
}

impl<S: Scalar> Polytope<S> {
    pub fn new(dim: usize, halfspaces: Vec<Halfspace<S>>) -> Self {
        for h in &halfspaces {
            assert_eq!(h.normal.len(), dim, "halfspace dimension mismatch");
        }
        Polytope { dim, halfspaces }
    }

    /// The axis box `∏ [lo_i, hi_i]`.
    pub fn box_at(center: &[S], half_sides: &[S]) -> Self {
        let dim = center.len();
        let mut hs = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            let mut n = vec![S::zero(); dim];
            n[i] = S::one();
            hs.push(Halfspace::new(n.clone(), center[i].clone() + half_sides[i].clone()));
            let mut m = vec![S::zero(); dim];
            m[i] = -S::one();
            hs.push(Halfspace::new(m, half_sides[i].clone() - center[i].clone()));
        }
        Polytope::new(dim, hs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[Halfspace<S>] {
        &self.halfspaces
    }

    pub fn constraints(&self) -> Vec<Constraint<S>> {
        self.halfspaces.iter().map(|h| h.constraint()).collect()
    }

    pub fn membership(&self, x: &[S]) -> Membership {
        let mut on_boundary = false;
        for h in &self.halfspaces {
            match h.slack(x).signum() {
                s if s < 0 => return Membership::Outside,
                0 => on_boundary = true,
                _ => {}
            }
        }
        if on_boundary {
            Membership::Boundary
        } else {
            Membership::Interior
        }
    }

    pub fn contains(&self, x: &[S]) -> bool {
        self.membership(x) != Membership::Outside
    }

    pub fn contains_strictly(&self, x: &[S]) -> bool {
        self.membership(x) == Membership::Interior
    }

    pub fn is_feasible(&self) -> bool {
        lp::feasible(&self.constraints()).is_some()
    }

    /// A point with positive slack in every half-space, when one exists.
    pub fn interior_point(&self) -> Option<Vec<S>> {
        // maximize t subject to ⟨a, x⟩ + t ≤ b
        let d = self.dim;
        let mut cons: Vec<Constraint<S>> = Vec::with_capacity(self.halfspaces.len() + 1);
        for h in &self.halfspaces {
            let mut coeffs = h.normal.clone();
            coeffs.push(S::one());
            cons.push(Constraint::new(coeffs, h.offset.clone()));
        }
        // keep t bounded so the LP can't run off to infinity
        let mut tcap = vec![S::zero(); d];
        tcap.push(S::one());
        cons.push(Constraint::new(tcap, S::one()));
        let mut obj = vec![S::zero(); d];
        obj.push(S::one());
        match lp::maximize(&obj, &cons) {
            LpResult::Optimal { point, value } if value.is_positive() => {
                Some(point[..d].to_vec())
            }
            _ => None,
        }
    }

    /// Exact max of `⟨a, x⟩` over the polytope.
    pub fn support(&self, a: &[S]) -> LpResult<S> {
        lp::maximize(a, &self.constraints())
    }

    pub fn is_bounded(&self) -> bool {
        for i in 0..self.dim {
            let mut e = vec![S::zero(); self.dim];
            e[i] = S::one();
            if matches!(self.support(&e), LpResult::Unbounded) {
                return false;
            }
            e[i] = -S::one();
            if matches!(self.support(&e), LpResult::Unbounded) {
                return false;
            }
        }
        true
    }

    /// Per-coordinate `[min, max]` over the polytope. Requires boundedness
    /// and feasibility.
    pub fn bounding_box(&self) -> Result<Vec<(S, S)>> {
        let mut out = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let mut e = vec![S::zero(); self.dim];
            e[i] = S::one();
            let hi = match self.support(&e) {
                LpResult::Optimal { value, .. } => value,
                LpResult::Unbounded => {
                    return Err(Error::InvalidWindow("region is unbounded".into()))
                }
                LpResult::Infeasible => {
                    return Err(Error::InvalidWindow("region is empty".into()))
                }
            };
            e[i] = -S::one();
            let lo = match self.support(&e) {
                LpResult::Optimal { value, .. } => -value,
                LpResult::Unbounded => {
                    return Err(Error::InvalidWindow("region is unbounded".into()))
                }
                LpResult::Infeasible => {
                    return Err(Error::InvalidWindow("region is empty".into()))
                }
            };
            out.push((lo, hi));
        }
        Ok(out)
    }

    /// All vertices, by solving the d×d systems of active boundaries.
    /// Intended for small face counts.
    pub fn vertices(&self) -> Vec<Vec<S>> {
        let d = self.dim;
        let n = self.halfspaces.len();
        if d == 0 || n < d {
            return Vec::new();
        }
        let mut seen: BTreeSet<Vec<S>> = BTreeSet::new();
        let mut subset: Vec<usize> = (0..d).collect();
        loop {
            let a: Vec<Vec<S>> = subset
                .iter()
                .map(|&i| self.halfspaces[i].normal.clone())
                .collect();
            let b: Vec<S> = subset
                .iter()
                .map(|&i| self.halfspaces[i].offset.clone())
                .collect();
            if let Some(x) = linalg::solve_unique(&a, &b) {
                if self.contains(&x) {
                    seen.insert(x);
                }
            }
            // next d-subset of {0..n}
            let mut k = d;
            loop {
                if k == 0 {
                    return seen.into_iter().collect();
                }
                k -= 1;
                if subset[k] + 1 <= n - (d - k) {
                    subset[k] += 1;
                    for j in k + 1..d {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    /// The image `{M x + t : x ∈ P}` given the inverse of `M`.
    pub fn map_affine(&self, m_inv: &[Vec<S>], t: &[S]) -> Polytope<S> {
        let hs = self
            .halfspaces
            .iter()
            .map(|h| {
                let normal = linalg::vec_mat(&h.normal, m_inv);
                let offset = h.offset.clone() + linalg::dot(&normal, t);
                Halfspace::new(normal, offset)
            })
            .collect();
        Polytope::new(self.dim, hs)
    }

    /// Restriction to a hyperplane chart: `{t : embed(t) ∈ P}` with closed
    /// semantics (a chart lying inside a bounding hyperplane is kept).
    pub fn restrict_to(&self, chart: &HyperplaneChart<S>) -> Option<Polytope<S>> {
        let d = chart.dirs.len();
        let mut hs = Vec::new();
        for h in &self.halfspaces {
            match chart.trace_halfspace(h) {
                TraceResult::Full | TraceResult::OnBoundary => {}
                TraceResult::Empty => return None,
                TraceResult::Proper(t) => hs.push(t),
            }
        }
        Some(Polytope::new(d, hs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Quad, Scalar};

    fn q(n: i64, d: i64) -> Quad {
        Quad::from_rat(&rat(n, d))
    }

    fn unit_cube(dim: usize) -> Polytope<Quad> {
        Polytope::box_at(&vec![Quad::zero(); dim], &vec![q(1, 2); dim])
    }

    #[test]
    fn cube_memberships() {
        let c = unit_cube(3);
        assert_eq!(c.membership(&[q(0, 1), q(0, 1), q(0, 1)]), Membership::Interior);
        assert_eq!(c.membership(&[q(1, 2), q(0, 1), q(0, 1)]), Membership::Boundary);
        assert_eq!(c.membership(&[q(3, 4), q(0, 1), q(0, 1)]), Membership::Outside);
        assert!(c.is_bounded());
        assert!(c.interior_point().is_some());
    }

    #[test]
    fn unbounded_is_detected() {
        let slab = Polytope::new(
            2,
            vec![
                Halfspace::new(vec![q(1, 1), q(0, 1)], q(1, 1)),
                Halfspace::new(vec![q(-1, 1), q(0, 1)], q(1, 1)),
            ],
        );
        assert!(!slab.is_bounded());
    }

    #[test]
    fn cube_vertices_and_box() {
        let c = unit_cube(2);
        let verts = c.vertices();
        assert_eq!(verts.len(), 4);
        let bb = c.bounding_box().unwrap();
        assert_eq!(bb[0], (q(-1, 2), q(1, 2)));
        assert_eq!(bb[1], (q(-1, 2), q(1, 2)));
    }

    #[test]
    fn empty_interior_square_has_no_witness() {
        // x ≤ 0 and x ≥ 0 pinches to a segment
        let degenerate = Polytope::new(
            2,
            vec![
                Halfspace::new(vec![q(1, 1), q(0, 1)], q(0, 1)),
                Halfspace::new(vec![q(-1, 1), q(0, 1)], q(0, 1)),
                Halfspace::new(vec![q(0, 1), q(1, 1)], q(1, 1)),
                Halfspace::new(vec![q(0, 1), q(-1, 1)], q(1, 1)),
            ],
        );
        assert!(degenerate.interior_point().is_none());
        assert!(degenerate.is_feasible());
    }

    #[test]
    fn hyperplane_canonical_form() {
        let h1 = Hyperplane::new(vec![q(2, 1), q(4, 1)], q(6, 1)).unwrap();
        let h2 = Hyperplane::new(vec![q(1, 1), q(2, 1)], q(3, 1)).unwrap();
        let h3 = Hyperplane::new(vec![q(-1, 1), q(-2, 1)], q(-3, 1)).unwrap();
        assert_eq!(h1, h2);
        assert_eq!(h1, h3);
    }

    #[test]
    fn chart_embeds_points_of_the_plane() {
        let h = Hyperplane::new(vec![q(1, 1), q(2, 1), q(-1, 1)], q(3, 1)).unwrap();
        let chart = h.chart();
        assert!(h.contains_point(&chart.base));
        for t in [[q(1, 1), q(0, 1)], [q(2, 3), q(-5, 7)]] {
            assert!(h.contains_point(&chart.embed(&t)));
        }
    }

    #[test]
    fn trace_of_parallel_plane_is_none() {
        let h = Hyperplane::new(vec![q(1, 1), q(0, 1)], q(0, 1)).unwrap();
        let par = Hyperplane::new(vec![q(1, 1), q(0, 1)], q(1, 1)).unwrap();
        let cross = Hyperplane::new(vec![q(0, 1), q(1, 1)], q(2, 1)).unwrap();
        let chart = h.chart();
        assert!(chart.trace_hyperplane(&par).is_none());
        assert!(chart.trace_hyperplane(&h).is_none());
        let tr = chart.trace_hyperplane(&cross).unwrap();
        // the traced point maps back onto both planes
        let pt = chart.embed(&[tr.offset().clone()]);
        assert!(cross.contains_point(&pt) && h.contains_point(&pt));
    }

    #[test]
    fn affine_image_of_cube() {
        // shear (x, y) ↦ (x + y, y), inverse (x, y) ↦ (x − y, y)
        let c = unit_cube(2);
        let m_inv = vec![vec![q(1, 1), q(-1, 1)], vec![q(0, 1), q(1, 1)]];
        let img = c.map_affine(&m_inv, &[q(2, 1), q(0, 1)]);
        // (0,0) maps to (2,0); (1/2, 1/2) maps to (3, 1/2)
        assert!(img.contains_strictly(&[q(2, 1), q(0, 1)]));
        assert_eq!(img.membership(&[q(3, 1), q(1, 2)]), Membership::Boundary);
        assert!(!img.contains(&[q(0, 1), q(0, 1)]));
    }

    #[test]
    fn restriction_to_a_line() {
        let c = unit_cube(2);
        let diag = Hyperplane::new(vec![q(1, 1), q(-1, 1)], q(0, 1)).unwrap();
        let seg = c.restrict_to(&diag.chart()).unwrap();
        assert_eq!(seg.dim(), 1);
        let bb = seg.bounding_box().unwrap();
        assert_eq!(bb[0], (q(-1, 2), q(1, 2)));
    }
}
