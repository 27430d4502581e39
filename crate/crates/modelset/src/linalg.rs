//! Small dense exact linear algebra: Gaussian elimination over an ordered field.

use crate::scalar::Scalar;

/// Solution set of `A x = b`: a particular point plus a basis of the kernel.
#[derive(Clone, Debug)]
pub struct AffineSolution<S> {
    pub particular: Vec<S>,
    pub kernel: Vec<Vec<S>>,
}

impl<S: Scalar> AffineSolution<S> {
    pub fn dim(&self) -> usize {
        self.kernel.len()
    }
}

/// Row-reduces `[A | b]`; returns `None` when inconsistent.
pub fn solve_affine<S: Scalar>(a: &[Vec<S>], b: &[S]) -> Option<AffineSolution<S>> {
    let rows = a.len();
    assert_eq!(rows, b.len());
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<S>> = a
        .iter()
        .zip(b.iter())
        .map(|(r, v)| {
            let mut row = r.clone();
            row.push(v.clone());
            row
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone().recip();
        for j in c..=cols {
            m[r][j] = m[r][j].clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=cols {
                    m[i][j] = m[i][j].clone() - f.clone() * m[r][j].clone();
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    // inconsistent if some zero row has nonzero rhs
    for i in r..rows {
        if !m[i][cols].is_zero() {
            return None;
        }
    }

    let mut particular = vec![S::zero(); cols];
    for (row, &pc) in pivot_cols.iter().enumerate() {
        particular[pc] = m[row][cols].clone();
    }
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut kernel = Vec::new();
    for &fc in &free_cols {
        let mut v = vec![S::zero(); cols];
        v[fc] = S::one();
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[row][fc].clone();
        }
        kernel.push(v);
    }
    Some(AffineSolution { particular, kernel })
}

/// Unique solution of a square system, if the matrix is invertible.
pub fn solve_unique<S: Scalar>(a: &[Vec<S>], b: &[S]) -> Option<Vec<S>> {
    let sol = solve_affine(a, b)?;
    if sol.kernel.is_empty() {
        Some(sol.particular)
    } else {
        None
    }
}

pub fn invert<S: Scalar>(m: &[Vec<S>]) -> Option<Vec<Vec<S>>> {
    let n = m.len();
    let mut cols = Vec::with_capacity(n);
    for k in 0..n {
        let mut e = vec![S::zero(); n];
        e[k] = S::one();
        cols.push(solve_unique(m, &e)?);
    }
    // cols[k] is the k-th column of the inverse
    let mut inv = vec![vec![S::zero(); n]; n];
    for (k, col) in cols.iter().enumerate() {
        for i in 0..n {
            inv[i][k] = col[i].clone();
        }
    }
    Some(inv)
}

pub fn mat_vec<S: Scalar>(m: &[Vec<S>], x: &[S]) -> Vec<S> {
    m.iter()
        .map(|row| dot(row, x))
        .collect()
}

/// `Mᵀ x`, i.e. x as a row vector times M.
pub fn vec_mat<S: Scalar>(x: &[S], m: &[Vec<S>]) -> Vec<S> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| {
            m.iter()
                .zip(x.iter())
                .fold(S::zero(), |acc, (row, xi)| acc + row[j].clone() * xi.clone())
        })
        .collect()
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b.iter())
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn add<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| x.clone() + y.clone())
        .collect()
}

pub fn sub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| x.clone() - y.clone())
        .collect()
}

pub fn scale<S: Scalar>(a: &[S], f: &S) -> Vec<S> {
    a.iter().map(|x| x.clone() * f.clone()).collect()
}

pub fn neg<S: Scalar>(a: &[S]) -> Vec<S> {
    a.iter().map(|x| -x.clone()).collect()
}

pub fn is_zero_vec<S: Scalar>(a: &[S]) -> bool {
    a.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Quad, Scalar};

    fn q(n: i64) -> Quad {
        Quad::from_int(n)
    }

    #[test]
    fn solves_unique_system() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(-1)]];
        let b = vec![q(4), q(-1)];
        let x = solve_unique(&a, &b).unwrap();
        assert_eq!(x, vec![q(1), q(2)]);
    }

    #[test]
    fn reports_inconsistency() {
        let a = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert!(solve_affine(&a, &[q(1), q(3)]).is_none());
    }

    #[test]
    fn kernel_of_rank_deficient_system() {
        let a = vec![vec![q(1), q(1), q(0)]];
        let sol = solve_affine(&a, &[q(2)]).unwrap();
        assert_eq!(sol.dim(), 2);
        for k in &sol.kernel {
            assert!(dot(&a[0], k).is_zero());
        }
        assert_eq!(dot(&a[0], &sol.particular), q(2));
    }

    #[test]
    fn inverse_round_trips() {
        let m = vec![
            vec![q(1), q(2), q(0)],
            vec![q(0), q(1), q(3)],
            vec![q(1), q(0), q(1)],
        ];
        let inv = invert(&m).unwrap();
        let prod: Vec<Vec<Quad>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| {
                        (0..3).fold(Quad::from_rat(&rat(0, 1)), |acc, k| {
                            acc + m[i][k].clone() * inv[k][j].clone()
                        })
                    })
                    .collect()
            })
            .collect();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(prod[i][j], if i == j { q(1) } else { q(0) });
            }
        }
    }
}
