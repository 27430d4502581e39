//! Exact linear programming over an ordered field.
//!
//! A dense two-phase simplex with Bland's rule: no floating point, no cycling.
//! Problem sizes here are tiny (a handful of variables, tens of constraints),
//! so the dense tableau is the right tool. Variables are free; internally each
//! is split into a difference of nonnegatives.

use crate::scalar::Scalar;

/// One inequality `⟨coeffs, x⟩ ≤ rhs`.
#[derive(Clone, Debug)]
pub struct Constraint<S> {
    pub coeffs: Vec<S>,
    pub rhs: S,
}

impl<S: Scalar> Constraint<S> {
    pub fn new(coeffs: Vec<S>, rhs: S) -> Self {
        Constraint { coeffs, rhs }
    }

    /// The pair of inequalities equivalent to `⟨coeffs, x⟩ = rhs`.
    pub fn equality(coeffs: Vec<S>, rhs: S) -> [Self; 2] {
        let neg: Vec<S> = coeffs.iter().map(|c| -c.clone()).collect();
        [
            Constraint::new(coeffs, rhs.clone()),
            Constraint::new(neg, -rhs),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpResult<S> {
    Infeasible,
    Unbounded,
    Optimal { point: Vec<S>, value: S },
}

impl<S: Scalar> LpResult<S> {
    pub fn optimal(self) -> Option<(Vec<S>, S)> {
        match self {
            LpResult::Optimal { point, value } => Some((point, value)),
            _ => None,
        }
    }
}

/// Maximizes `⟨objective, x⟩` subject to the constraints, `x` free.
pub fn maximize<S: Scalar>(objective: &[S], constraints: &[Constraint<S>]) -> LpResult<S> {
    Tableau::solve(objective, constraints)
}

pub fn minimize<S: Scalar>(objective: &[S], constraints: &[Constraint<S>]) -> LpResult<S> {
    let neg: Vec<S> = objective.iter().map(|c| -c.clone()).collect();
    match maximize(&neg, constraints) {
        LpResult::Optimal { point, value } => LpResult::Optimal {
            point,
            value: -value,
        },
        other => other,
    }
}

/// Phase-1 feasibility; returns a witness point if the system is solvable.
pub fn feasible<S: Scalar>(constraints: &[Constraint<S>]) -> Option<Vec<S>> {
    let n = constraints.first().map_or(0, |c| c.coeffs.len());
    let zero_obj = vec![S::zero(); n];
    match maximize(&zero_obj, constraints) {
        LpResult::Optimal { point, .. } => Some(point),
        LpResult::Unbounded => Some(vec![S::zero(); n]),
        LpResult::Infeasible => None,
    }
}

struct Tableau<S> {
    /// rows[i] = constraint row, last entry is the rhs
    rows: Vec<Vec<S>>,
    /// objective row, same layout, rhs entry holds the negated value
    obj: Vec<S>,
    basis: Vec<usize>,
    cols: usize,
    banned_from: usize,
}

impl<S: Scalar> Tableau<S> {
    fn solve(objective: &[S], constraints: &[Constraint<S>]) -> LpResult<S> {
        let n_free = objective.len();
        let m = constraints.len();
        if m == 0 {
            let all_zero = objective.iter().all(|c| c.is_zero());
            return if all_zero {
                LpResult::Optimal {
                    point: vec![S::zero(); n_free],
                    value: S::zero(),
                }
            } else {
                LpResult::Unbounded
            };
        }
        // column layout: [u_1..u_n, v_1..v_n, s_1..s_m, artificials..., rhs]
        let split = 2 * n_free;
        let n_slack = m;
        let mut artificial_rows = Vec::new();
        for (i, c) in constraints.iter().enumerate() {
            assert_eq!(c.coeffs.len(), n_free, "constraint arity mismatch");
            if c.rhs.is_negative() {
                artificial_rows.push(i);
            }
        }
        let n_art = artificial_rows.len();
        let cols = split + n_slack + n_art + 1;
        let mut rows = vec![vec![S::zero(); cols]; m];
        let mut basis = vec![0usize; m];
        let mut art_idx = 0usize;
        for (i, c) in constraints.iter().enumerate() {
            let negate = c.rhs.is_negative();
            for (j, a) in c.coeffs.iter().enumerate() {
                let val = if negate { -a.clone() } else { a.clone() };
                rows[i][j] = val.clone();
                rows[i][n_free + j] = -val;
            }
            let slack = if negate { -S::one() } else { S::one() };
            rows[i][split + i] = slack;
            rows[i][cols - 1] = if negate {
                -c.rhs.clone()
            } else {
                c.rhs.clone()
            };
            if negate {
                let col = split + n_slack + art_idx;
                rows[i][col] = S::one();
                basis[i] = col;
                art_idx += 1;
            } else {
                basis[i] = split + i;
            }
        }

        let mut t = Tableau {
            rows,
            obj: vec![S::zero(); cols],
            basis,
            cols,
            banned_from: cols - 1,
        };

        if n_art > 0 {
            // phase 1: maximize -(sum of artificials)
            for k in 0..n_art {
                t.obj[split + n_slack + k] = S::one();
            }
            t.make_obj_consistent();
            t.run();
            if !t.obj[t.cols - 1].is_zero() {
                return LpResult::Infeasible;
            }
            t.evict_artificials(split + n_slack);
            t.banned_from = split + n_slack;
        }

        // phase 2
        for e in t.obj.iter_mut() {
            *e = S::zero();
        }
        for (j, c) in objective.iter().enumerate() {
            t.obj[j] = -c.clone();
            t.obj[n_free + j] = c.clone();
        }
        t.make_obj_consistent();
        if !t.run() {
            return LpResult::Unbounded;
        }

        let mut point = vec![S::zero(); n_free];
        for (i, &b) in t.basis.iter().enumerate() {
            if b < n_free {
                point[b] = point[b].clone() + t.rows[i][t.cols - 1].clone();
            } else if b < split {
                point[b - n_free] = point[b - n_free].clone() - t.rows[i][t.cols - 1].clone();
            }
        }
        let value = objective
            .iter()
            .zip(point.iter())
            .fold(S::zero(), |acc, (c, x)| acc + c.clone() * x.clone());
        LpResult::Optimal { point, value }
    }

    /// Zeroes the objective row on basic columns.
    fn make_obj_consistent(&mut self) {
        for i in 0..self.rows.len() {
            let b = self.basis[i];
            if !self.obj[b].is_zero() {
                let factor = self.obj[b].clone();
                for j in 0..self.cols {
                    self.obj[j] = self.obj[j].clone() - factor.clone() * self.rows[i][j].clone();
                }
            }
        }
    }

    /// Runs simplex to optimality. Returns false on unboundedness.
    fn run(&mut self) -> bool {
        loop {
            // Bland: entering column = lowest index with negative reduced cost
            let mut entering = None;
            for j in 0..self.banned_from {
                if self.obj[j].is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(e) = entering else {
                return true;
            };
            // ratio test; Bland tie-break on smallest basis index
            let mut leave: Option<(usize, S)> = None;
            for i in 0..self.rows.len() {
                let pivot = &self.rows[i][e];
                if !pivot.is_positive() {
                    continue;
                }
                let ratio = self.rows[i][self.cols - 1].clone() / pivot.clone();
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((li, _)) = leave else {
                return false;
            };
            self.pivot(li, e);
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for j in 0..self.cols {
            self.rows[row][j] = self.rows[row][j].clone() / p.clone();
        }
        for i in 0..self.rows.len() {
            if i == row || self.rows[i][col].is_zero() {
                continue;
            }
            let f = self.rows[i][col].clone();
            for j in 0..self.cols {
                self.rows[i][j] =
                    self.rows[i][j].clone() - f.clone() * self.rows[row][j].clone();
            }
        }
        if !self.obj[col].is_zero() {
            let f = self.obj[col].clone();
            for j in 0..self.cols {
                self.obj[j] = self.obj[j].clone() - f.clone() * self.rows[row][j].clone();
            }
        }
        self.basis[row] = col;
    }

    /// After phase 1, pivots zero-valued artificial variables out of the basis.
    fn evict_artificials(&mut self, first_art_col: usize) {
        for i in 0..self.rows.len() {
            if self.basis[i] < first_art_col {
                continue;
            }
            let col = (0..first_art_col).find(|&j| !self.rows[i][j].is_zero());
            if let Some(c) = col {
                self.pivot(i, c);
            }
            // a fully zero row is a redundant constraint; it can stay basic
            // at zero because artificial columns are banned from entering
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Quad, Scalar};

    fn q(n: i64, d: i64) -> Quad {
        Quad::from_rat(&rat(n, d))
    }

    fn le(coeffs: &[(i64, i64)], rhs: (i64, i64)) -> Constraint<Quad> {
        Constraint::new(
            coeffs.iter().map(|&(n, d)| q(n, d)).collect(),
            q(rhs.0, rhs.1),
        )
    }

    #[test]
    fn maximizes_over_a_square() {
        // max x+y over [-1,1]^2 → 2 at (1,1)
        let cons = vec![
            le(&[(1, 1), (0, 1)], (1, 1)),
            le(&[(-1, 1), (0, 1)], (1, 1)),
            le(&[(0, 1), (1, 1)], (1, 1)),
            le(&[(0, 1), (-1, 1)], (1, 1)),
        ];
        let (point, value) = maximize(&[q(1, 1), q(1, 1)], &cons).optimal().unwrap();
        assert_eq!(value, q(2, 1));
        assert_eq!(point, vec![q(1, 1), q(1, 1)]);
    }

    #[test]
    fn detects_infeasibility() {
        let cons = vec![le(&[(1, 1)], (0, 1)), le(&[(-1, 1)], (-1, 1))]; // x ≤ 0 and x ≥ 1
        assert_eq!(maximize(&[q(1, 1)], &cons), LpResult::Infeasible);
        assert!(feasible(&cons).is_none());
    }

    #[test]
    fn detects_unboundedness() {
        let cons = vec![le(&[(-1, 1)], (0, 1))]; // x ≥ 0
        assert_eq!(maximize(&[q(1, 1)], &cons), LpResult::Unbounded);
    }

    #[test]
    fn handles_negative_rhs_via_phase_one() {
        // x ≥ 3 (as -x ≤ -3), x ≤ 5: max -x → -3 at x=3
        let cons = vec![le(&[(-1, 1)], (-3, 1)), le(&[(1, 1)], (5, 1))];
        let (point, value) = maximize(&[q(-1, 1)], &cons).optimal().unwrap();
        assert_eq!(value, q(-3, 1));
        assert_eq!(point, vec![q(3, 1)]);
    }

    #[test]
    fn solves_exactly_with_irrational_data() {
        // x ≤ √2, x ≥ 0: max x = √2 exactly
        let r2 = Quad::sqrt_d(2);
        let cons = vec![
            Constraint::new(vec![q(1, 1)], r2.clone()),
            le(&[(-1, 1)], (0, 1)),
        ];
        let (_, value) = maximize(&[q(1, 1)], &cons).optimal().unwrap();
        assert_eq!(value, r2);
    }

    #[test]
    fn equality_pairs_pin_a_value() {
        let mut cons = Constraint::equality(vec![q(2, 1), q(1, 1)], q(4, 1)).to_vec();
        cons.push(le(&[(0, 1), (1, 1)], (0, 1))); // y ≤ 0
        let (point, value) = maximize(&[q(0, 1), q(1, 1)], &cons).optimal().unwrap();
        assert_eq!(value, q(0, 1));
        assert_eq!(point[0], q(2, 1));
    }

    #[test]
    fn degenerate_ties_terminate() {
        // several redundant constraints through the optimum
        let cons = vec![
            le(&[(1, 1), (1, 1)], (1, 1)),
            le(&[(2, 1), (2, 1)], (2, 1)),
            le(&[(1, 1), (0, 1)], (1, 1)),
            le(&[(0, 1), (1, 1)], (1, 1)),
            le(&[(-1, 1), (0, 1)], (0, 1)),
            le(&[(0, 1), (-1, 1)], (0, 1)),
        ];
        let (_, value) = maximize(&[q(1, 1), q(1, 1)], &cons).optimal().unwrap();
        assert_eq!(value, q(1, 1));
    }
}
