//! Homogeneous Lie groups of nilpotency degree at most two, in exponential
//! coordinates.
//!
//! A group is described by its dimension, dilation weights and sparse bracket
//! structure constants. The product is `x ∗ y = x + y + ½[x, y]`, the inverse
//! is coordinate negation, and dilations scale coordinate `i` by `r^{ν_i}`.
//! Everything here is exact; the only floating-point outputs are the
//! quasi-norm value, hyperplane angles and the sampled conjugation bound.

use num::{BigInt, One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg;
use crate::polytope::{Hyperplane, Polytope};
use crate::scalar::{Rat, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormKind {
    WeightedMax,
    Koranyi,
}

/// A sparse bracket entry `[e_i, e_j] = c · e_k` (stored with `i < j`).
#[derive(Clone, Debug)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: Rat,
}

#[derive(Clone, Debug)]
pub struct GroupSpec {
    dim: usize,
    weights: Vec<Rat>,
    brackets: Vec<BracketEntry>,
    norm_kind: NormKind,
    /// common denominator of the weights
    weight_den: u32,
    /// weight numerators over `weight_den`
    weight_num: Vec<u32>,
}

impl GroupSpec {
    pub fn new(
        dim: usize,
        weights: Vec<Rat>,
        brackets: Vec<(usize, usize, usize, Rat)>,
        norm_kind: NormKind,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidGroupSpec("dimension must be positive".into()));
        }
        if weights.len() != dim {
            return Err(Error::InvalidGroupSpec(format!(
                "expected {dim} weights, got {}",
                weights.len()
            )));
        }
        for w in &weights {
            if !w.is_positive() {
                return Err(Error::InvalidGroupSpec("weights must be positive".into()));
            }
        }
        for pair in weights.windows(2) {
            if pair[0] > pair[1] {
                return Err(Error::InvalidGroupSpec(
                    "weights must be non-decreasing".into(),
                ));
            }
        }
        let mut canon: Vec<BracketEntry> = Vec::new();
        for (i, j, k, c) in brackets {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidGroupSpec("bracket index out of range".into()));
            }
            if i == j {
                return Err(Error::InvalidGroupSpec(
                    "bracket [e_i, e_i] must be zero".into(),
                ));
            }
            if c.is_zero() {
                continue;
            }
            let (i, j, c) = if i < j { (i, j, c) } else { (j, i, -c) };
            if canon.iter().any(|e| e.i == i && e.j == j && e.k == k) {
                return Err(Error::InvalidGroupSpec(format!(
                    "duplicate bracket entry ({i},{j},{k})"
                )));
            }
            canon.push(BracketEntry { i, j, k, c });
        }
        // dilation compatibility: c_{ij}^k ≠ 0 ⇒ ν_k = ν_i + ν_j
        for e in &canon {
            if weights[e.k].clone() != weights[e.i].clone() + weights[e.j].clone() {
                return Err(Error::InvalidGroupSpec(format!(
                    "bracket ({},{},{}) violates dilation compatibility",
                    e.i, e.j, e.k
                )));
            }
        }
        let weight_den = weights
            .iter()
            .fold(BigInt::one(), |acc, w| num::integer::lcm(acc, w.denom().clone()));
        let weight_den = weight_den
            .to_u32()
            .ok_or_else(|| Error::InvalidGroupSpec("weight denominators too large".into()))?;
        let weight_num = weights
            .iter()
            .map(|w| {
                let scaled = w * Rat::from_integer(weight_den.into());
                scaled
                    .numer()
                    .to_u32()
                    .ok_or_else(|| Error::InvalidGroupSpec("weight numerators too large".into()))
            })
            .collect::<Result<Vec<_>>>()?;

        let spec = GroupSpec {
            dim,
            weights,
            brackets: canon,
            norm_kind,
            weight_den,
            weight_num,
        };
        spec.check_jacobi()?;
        if norm_kind == NormKind::Koranyi && !spec.has_heisenberg_layout() {
            return Err(Error::UnsupportedNorm(
                "the Koranyi norm requires the 3-dimensional (1,1,2) layout".into(),
            ));
        }
        Ok(spec)
    }

    pub fn abelian(dim: usize) -> Self {
        GroupSpec::new(
            dim,
            vec![Rat::one(); dim],
            Vec::new(),
            NormKind::WeightedMax,
        )
        .expect("abelian spec is always valid")
    }

    pub fn heisenberg(norm_kind: NormKind) -> Self {
        GroupSpec::new(
            3,
            vec![Rat::one(), Rat::one(), Rat::from_integer(2.into())],
            vec![(0, 1, 2, Rat::one())],
            norm_kind,
        )
        .expect("heisenberg spec is valid")
    }

    /// 4-dimensional filiform algebra `[e1,e2]=e3, [e1,e3]=e4`: 3-step.
    pub fn filiform4() -> Self {
        GroupSpec::new(
            4,
            vec![
                Rat::one(),
                Rat::one(),
                Rat::from_integer(2.into()),
                Rat::from_integer(3.into()),
            ],
            vec![(0, 1, 2, Rat::one()), (0, 2, 3, Rat::one())],
            NormKind::WeightedMax,
        )
        .expect("filiform spec is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn brackets(&self) -> &[BracketEntry] {
        &self.brackets
    }

    pub fn norm_kind(&self) -> NormKind {
        self.norm_kind
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    /// Sum of the dilation weights.
    pub fn homogeneous_dim(&self) -> Rat {
        self.weights.iter().fold(Rat::zero(), |acc, w| acc + w)
    }

    pub fn has_heisenberg_layout(&self) -> bool {
        self.dim == 3
            && self.weights[0].is_one()
            && self.weights[1].is_one()
            && self.weights[2] == Rat::from_integer(2.into())
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let mut acc = vec![Rat::zero(); n];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        // [e_a, [e_b, e_c]]
                        for e1 in &self.brackets {
                            let c1 = self.coeff_signed(e1, b, c);
                            if c1.is_zero() {
                                continue;
                            }
                            for e2 in &self.brackets {
                                let c2 = self.coeff_signed(e2, a, e1.k);
                                if c2.is_zero() {
                                    continue;
                                }
                                acc[e2.k] += &c1 * &c2;
                            }
                        }
                    }
                    if acc.iter().any(|v| !v.is_zero()) {
                        return Err(Error::InvalidGroupSpec(format!(
                            "Jacobi identity fails on basis triple ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `c` of `[e_a, e_b]` read off the canonical `i < j` entry.
    fn coeff_signed(&self, e: &BracketEntry, a: usize, b: usize) -> Rat {
        if e.i == a && e.j == b {
            e.c.clone()
        } else if e.i == b && e.j == a {
            -e.c.clone()
        } else {
            Rat::zero()
        }
    }

    /// `[e_i, [e_j, e_k]] = 0` for all basis triples.
    pub fn is_locally_two_step(&self) -> bool {
        for e1 in &self.brackets {
            // [·, e_{e1.k}] must vanish identically
            for e2 in &self.brackets {
                if e2.i == e1.k || e2.j == e1.k {
                    return false;
                }
            }
        }
        true
    }

    pub fn require_two_step(&self) -> Result<()> {
        if self.is_locally_two_step() {
            Ok(())
        } else {
            Err(Error::Crooked(
                "group law does not preserve hyperplanes".into(),
            ))
        }
    }

    fn check_point(&self, x: &[impl Scalar]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(())
    }

    pub fn identity<S: Scalar>(&self) -> Vec<S> {
        vec![S::zero(); self.dim]
    }

    /// Bilinear bracket `[x, y]` via structure constants.
    pub fn bracket<S: Scalar>(&self, x: &[S], y: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim];
        for e in &self.brackets {
            let c = S::from_rat(&e.c);
            let term = c * (x[e.i].clone() * y[e.j].clone() - x[e.j].clone() * y[e.i].clone());
            out[e.k] = out[e.k].clone() + term;
        }
        out
    }

    /// Group law `x ∗ y = x + y + ½[x, y]`.
    pub fn multiply<S: Scalar>(&self, x: &[S], y: &[S]) -> Result<Vec<S>> {
        self.check_point(x)?;
        self.check_point(y)?;
        self.require_two_step()?;
        let half = S::from_rat(&Rat::new(1.into(), 2.into()));
        let br = self.bracket(x, y);
        Ok((0..self.dim)
            .map(|i| x[i].clone() + y[i].clone() + half.clone() * br[i].clone())
            .collect())
    }

    pub fn inverse<S: Scalar>(&self, x: &[S]) -> Vec<S> {
        linalg::neg(x)
    }

    /// `x ∗ y⁻¹`, the displacement entering the right-invariant metric.
    pub fn right_quotient<S: Scalar>(&self, x: &[S], y: &[S]) -> Result<Vec<S>> {
        self.multiply(x, &self.inverse(y))
    }

    /// Matrix of `ad_x`: column `j` holds `[x, e_j]`.
    pub fn ad_matrix<S: Scalar>(&self, x: &[S]) -> Vec<Vec<S>> {
        let mut m = vec![vec![S::zero(); self.dim]; self.dim];
        for e in &self.brackets {
            let c = S::from_rat(&e.c);
            m[e.k][e.j] = m[e.k][e.j].clone() + c.clone() * x[e.i].clone();
            m[e.k][e.i] = m[e.k][e.i].clone() - c * x[e.j].clone();
        }
        m
    }

    /// `I + s·ad_x`. In the 2-step case `ad_x² = 0`, so `I − s·ad_x` is the
    /// exact inverse.
    pub fn unipotent<S: Scalar>(&self, x: &[S], s: &Rat) -> Vec<Vec<S>> {
        let ad = self.ad_matrix(x);
        let f = S::from_rat(s);
        let mut m = vec![vec![S::zero(); self.dim]; self.dim];
        for i in 0..self.dim {
            m[i][i] = S::one();
            for j in 0..self.dim {
                m[i][j] = m[i][j].clone() + f.clone() * ad[i][j].clone();
            }
        }
        m
    }

    /// Dilation `D_r`, exact. Errors when `r ≤ 0` or when a fractional weight
    /// makes `r^{ν_i}` irrational.
    pub fn dilate<S: Scalar>(&self, r: &Rat, x: &[S]) -> Result<Vec<S>> {
        self.check_point(x)?;
        if !r.is_positive() {
            return Err(Error::InexactDilation(format!(
                "factor {r} must be positive"
            )));
        }
        let root = self.weight_root(r)?;
        Ok(x.iter()
            .enumerate()
            .map(|(i, xi)| {
                let factor = rat_pow_u(&root, self.weight_num[i]);
                xi.clone() * S::from_rat(&factor)
            })
            .collect())
    }

    fn weight_root(&self, r: &Rat) -> Result<Rat> {
        if self.weight_den == 1 {
            return Ok(r.clone());
        }
        rat_nth_root(r, self.weight_den).ok_or_else(|| {
            Error::InexactDilation(format!("{r}^(1/{}) is irrational", self.weight_den))
        })
    }

    /// Homogeneous quasi-norm, as a float (exact comparisons go through
    /// `ball_contains`).
    pub fn quasi_norm<S: Scalar>(&self, x: &[S]) -> Result<f64> {
        self.check_point(x)?;
        match self.norm_kind {
            NormKind::WeightedMax => {
                let mut best: f64 = 0.0;
                for (i, xi) in x.iter().enumerate() {
                    let v = xi.to_f64().abs();
                    let w = self.weight_num[i] as f64 / self.weight_den as f64;
                    best = best.max(v.powf(1.0 / w));
                }
                Ok(best)
            }
            NormKind::Koranyi => {
                let x0 = x[0].to_f64();
                let x1 = x[1].to_f64();
                let x2 = x[2].to_f64();
                Ok(((x0 * x0 + x1 * x1).powi(2) + x2 * x2).powf(0.25))
            }
        }
    }

    /// Exact test `|x ∗ center⁻¹| < r` for the right-invariant metric ball
    /// `B_r(center)`.
    pub fn ball_contains<S: Scalar>(&self, r: &Rat, center: &[S], x: &[S]) -> Result<bool> {
        self.check_point(center)?;
        self.check_point(x)?;
        assert!(r.is_positive(), "ball radius must be positive");
        let y = self.right_quotient(x, center)?;
        self.norm_lt(&y, r)
    }

    /// Exact `|y| < r`.
    pub fn norm_lt<S: Scalar>(&self, y: &[S], r: &Rat) -> Result<bool> {
        self.check_point(y)?;
        match self.norm_kind {
            NormKind::WeightedMax => {
                let v = self.weight_den;
                for (i, yi) in y.iter().enumerate() {
                    // |y_i| < r^{ν_i}  ⇔  |y_i|^v < r^{u_i}
                    let lhs = yi.abs().pow_u(v);
                    let rhs = S::from_rat(&rat_pow_u(r, self.weight_num[i]));
                    if lhs >= rhs {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            NormKind::Koranyi => {
                let plane = y[0].clone() * y[0].clone() + y[1].clone() * y[1].clone();
                let lhs = plane.clone() * plane + y[2].clone() * y[2].clone();
                let rhs = S::from_rat(&rat_pow_u(r, 4));
                Ok(lhs < rhs)
            }
        }
    }

    /// The ball `B_r(e)` of the weighted-max norm as a polytope (an axis box
    /// with half-sides `r^{ν_i}`).
    pub fn norm_ball_polytope<S: Scalar>(&self, r: &Rat) -> Result<Polytope<S>> {
        if self.norm_kind != NormKind::WeightedMax {
            return Err(Error::UnsupportedNorm(
                "only the weighted-max ball is a polytope".into(),
            ));
        }
        let root = self.weight_root(r)?;
        let half_sides: Vec<S> = (0..self.dim)
            .map(|i| S::from_rat(&rat_pow_u(&root, self.weight_num[i])))
            .collect();
        Ok(Polytope::box_at(&vec![S::zero(); self.dim], &half_sides))
    }

    /// Volume of `B_r(e)` for the weighted-max norm: `2^n · r^{homdim}`.
    pub fn ball_volume(&self, r: &Rat) -> Result<Rat> {
        if self.norm_kind != NormKind::WeightedMax {
            return Err(Error::UnsupportedNorm(
                "no closed-form ball volume for this norm".into(),
            ));
        }
        assert!(r.is_positive(), "ball radius must be positive");
        let total: u32 = self.weight_num.iter().sum();
        let root = self.weight_root(r)?;
        let mut vol = rat_pow_u(&root, total);
        for _ in 0..self.dim {
            vol *= Rat::from_integer(2.into());
        }
        Ok(vol)
    }

    /// Exact image of a hyperplane under left translation by `x`.
    pub fn act_on_hyperplane<S: Scalar>(
        &self,
        x: &[S],
        p: &Hyperplane<S>,
    ) -> Result<Hyperplane<S>> {
        self.check_point(x)?;
        self.require_two_step()?;
        // x ∗ p = x + M p with M = I + ½ad_x; M⁻¹ = I − ½ad_x
        let m_inv = self.unipotent(x, &Rat::new((-1).into(), 2.into()));
        let normal = linalg::vec_mat(p.normal(), &m_inv);
        let offset = p.offset().clone() + linalg::dot(&normal, x);
        Hyperplane::new(normal, offset)
    }

    /// Exact image `{x ∗ w : w ∈ P}` of a polytope under left translation.
    pub fn translate_polytope<S: Scalar>(&self, x: &[S], p: &Polytope<S>) -> Result<Polytope<S>> {
        self.check_point(x)?;
        self.require_two_step()?;
        let m_inv = self.unipotent(x, &Rat::new((-1).into(), 2.into()));
        Ok(p.map_affine(&m_inv, x))
    }

    /// Exact image `{w ∗ x : w ∈ P}` under right translation.
    pub fn right_translate_polytope<S: Scalar>(
        &self,
        x: &[S],
        p: &Polytope<S>,
    ) -> Result<Polytope<S>> {
        self.check_point(x)?;
        self.require_two_step()?;
        // w ∗ x = (I − ½ad_x)w + x, inverse matrix I + ½ad_x
        let m_inv = self.unipotent(x, &Rat::new(1.into(), 2.into()));
        Ok(p.map_affine(&m_inv, x))
    }

    /// Upper bound κ with `|x ∗ y| ≤ κ(|x| + |y|)` for the weighted-max norm.
    pub fn triangle_constant(&self) -> Result<Rat> {
        if self.norm_kind != NormKind::WeightedMax {
            return Err(Error::UnsupportedNorm(
                "triangle constant derived for the weighted-max norm only".into(),
            ));
        }
        for w in &self.weights {
            let ok = w.is_one() || *w == Rat::from_integer(2.into());
            if !ok {
                return Err(Error::UnsupportedNorm(
                    "triangle constant requires weights in {1, 2}".into(),
                ));
            }
        }
        let mut mass = Rat::zero();
        for k in 0..self.dim {
            let mut row = Rat::zero();
            for e in &self.brackets {
                if e.k == k {
                    row += e.c.abs();
                }
            }
            if row > mass {
                mass = row;
            }
        }
        // per weight-2 coordinate: |x_k + y_k + ½[x,y]_k| ≤ s² + t² + mass·st
        // and (s² + t² + mass·st) / (s + t)² peaks at s = t with (2 + mass)/4
        let bound_sq = (Rat::from_integer(2.into()) + mass) / Rat::from_integer(4.into());
        if bound_sq <= Rat::one() {
            return Ok(Rat::one());
        }
        Ok(rat_sqrt_upper(&bound_sq))
    }

    /// A rational `u ≥ |x|` close to the norm (weighted-max only).
    pub fn norm_upper_bound<S: Scalar>(&self, x: &[S]) -> Result<Rat> {
        if self.norm_kind != NormKind::WeightedMax {
            return Err(Error::UnsupportedNorm(
                "norm bound implemented for the weighted-max norm".into(),
            ));
        }
        let v = self.weight_den;
        let mut best = Rat::zero();
        for (i, xi) in x.iter().enumerate() {
            let mag = xi.abs();
            if mag.is_zero() {
                continue;
            }
            // rational u with mag^v ≤ u^{num_i}
            let target = mag.pow_u(v);
            let exp = self.weight_num[i];
            let guess = xi.to_f64().abs().powf(v as f64 / exp as f64) * 1.001 + 1e-9;
            let mut u = f64_to_rat_upper(guess);
            while S::from_rat(&rat_pow_u(&u, exp)) < target {
                u *= Rat::new(1025.into(), 1024.into());
            }
            if u > best {
                best = u;
            }
        }
        Ok(best)
    }

    /// Angle between two hyperplanes via unit normals, in `[0, π/2]`.
    pub fn angle_between<S: Scalar>(p: &Hyperplane<S>, q: &Hyperplane<S>) -> f64 {
        let np: Vec<f64> = p.normal().iter().map(|c| c.to_f64()).collect();
        let nq: Vec<f64> = q.normal().iter().map(|c| c.to_f64()).collect();
        let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let dot: f64 = np.iter().zip(nq.iter()).map(|(a, b)| a * b).sum();
        let c = (dot / (norm(&np) * norm(&nq))).abs().min(1.0);
        c.acos()
    }

    /// Sampled sup of `|x ∗ u ∗ x⁻¹|` over `u ∈ B_eps(e)`. Deterministic for a
    /// fixed RNG; includes the box corners so the abelian case attains `eps`.
    pub fn conjugation_distortion<S: Scalar>(
        &self,
        x: &[S],
        eps: &Rat,
        samples: usize,
        rng: &mut impl Rng,
    ) -> Result<f64> {
        self.check_point(x)?;
        assert!(eps.is_positive() && samples >= 1);
        let scales: Vec<Rat> = (0..self.dim)
            .map(|i| self.coordinate_scale(eps, i))
            .collect();
        let x_inv = self.inverse(x);
        let mut worst: f64 = 0.0;
        let mut probe = |u: &[S]| -> Result<()> {
            let conj = self.multiply(&self.multiply(x, u)?, &x_inv)?;
            let n = self.quasi_norm(&conj)?;
            if n > worst {
                worst = n;
            }
            Ok(())
        };
        for mask in 0..(1u64 << self.dim.min(16)) {
            let u: Vec<S> = (0..self.dim)
                .map(|i| {
                    let s = S::from_rat(&scales[i]);
                    if mask >> i & 1 == 1 {
                        -s
                    } else {
                        s
                    }
                })
                .collect();
            probe(&u)?;
        }
        let denom: i64 = 1 << 20;
        for _ in 0..samples {
            let u: Vec<S> = (0..self.dim)
                .map(|i| {
                    let t = Rat::new(rng.random_range(-denom..=denom).into(), denom.into());
                    S::from_rat(&(t * &scales[i]))
                })
                .collect();
            probe(&u)?;
        }
        Ok(worst)
    }

    /// `eps^{ν_i}` exactly when possible, otherwise a rational lower
    /// approximation so samples stay inside the ball.
    fn coordinate_scale(&self, eps: &Rat, i: usize) -> Rat {
        if self.weight_den == 1 {
            return rat_pow_u(eps, self.weight_num[i]);
        }
        if let Some(root) = rat_nth_root(eps, self.weight_den) {
            return rat_pow_u(&root, self.weight_num[i]);
        }
        let approx = eps
            .to_f64()
            .unwrap_or(f64::NAN)
            .powf(self.weight_num[i] as f64 / self.weight_den as f64);
        f64_to_rat_lower(approx)
    }
}

pub fn rat_pow_u(r: &Rat, e: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

/// Exact `r^(1/n)` when it is rational.
pub fn rat_nth_root(r: &Rat, n: u32) -> Option<Rat> {
    if !r.is_positive() {
        return None;
    }
    let num_root = r.numer().nth_root(n);
    let den_root = r.denom().nth_root(n);
    let exact = num::pow::pow(num_root.clone(), n as usize) == *r.numer()
        && num::pow::pow(den_root.clone(), n as usize) == *r.denom();
    exact.then(|| Rat::new(num_root, den_root))
}

/// A rational upper bound for √r (exact when the root is rational).
pub fn rat_sqrt_upper(r: &Rat) -> Rat {
    assert!(!r.is_negative());
    if r.is_zero() {
        return Rat::zero();
    }
    if let Some(exact) = rat_nth_root(r, 2) {
        return exact;
    }
    let mut guess = f64_to_rat_upper(r.to_f64().unwrap_or(f64::NAN).sqrt() * 1.0001);
    while &guess * &guess < *r {
        guess *= Rat::new(1025.into(), 1024.into());
    }
    guess
}

pub fn f64_to_rat_upper(x: f64) -> Rat {
    let scaled = (x * (1u64 << 32) as f64).ceil() as i128;
    Rat::new(scaled.into(), BigInt::from(1u64 << 32))
}

pub fn f64_to_rat_lower(x: f64) -> Rat {
    let scaled = (x * (1u64 << 32) as f64).floor() as i128;
    Rat::new(scaled.into(), BigInt::from(1u64 << 32))
}
