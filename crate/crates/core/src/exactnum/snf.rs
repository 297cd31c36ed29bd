//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// `left * m * right == diag(diagonal)` with unimodular `left`, `right` and
/// `diagonal[i] | diagonal[i+1]`. The diagonal has `min(rows, cols)` entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

pub fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix, inner: usize, cols: usize) -> IntMatrix {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Bareiss-free cofactor determinant; only used on tiny matrices in checks.
pub fn int_det(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = BigInt::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: IntMatrix = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != c)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][c] * int_det(&minor);
        if c % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    rows: usize,
    cols: usize,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in self.a.iter_mut() {
            r.swap(i, j);
        }
        for r in self.v.iter_mut() {
            r.swap(i, j);
        }
    }

    // row_dst -= f * row_src
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for c in 0..self.cols {
            let x = f * &self.a[src][c];
            self.a[dst][c] -= x;
        }
        for c in 0..self.rows {
            let x = f * &self.u[src][c];
            self.u[dst][c] -= x;
        }
    }

    // col_dst -= f * col_src
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for r in 0..self.rows {
            let x = f * &self.a[r][src];
            self.a[r][dst] -= x;
        }
        for r in 0..self.cols {
            let x = f * &self.v[r][src];
            self.v[r][dst] -= x;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for x in self.a[r].iter_mut() {
            *x = -x.clone();
        }
        for x in self.u[r].iter_mut() {
            *x = -x.clone();
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for r in t..self.rows {
            for c in t..self.cols {
                if self.a[r][c].is_zero() {
                    continue;
                }
                match best {
                    Some((br, bc)) if self.a[br][bc].abs() <= self.a[r][c].abs() => {}
                    _ => best = Some((r, c)),
                }
            }
        }
        best
    }
}

pub fn snf(m: &IntMatrix) -> Snf {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut w = Work {
        a: m.clone(),
        u: identity(rows),
        v: identity(cols),
        rows,
        cols,
    };
    let steps = rows.min(cols);
    for t in 0..steps {
        loop {
            let Some((r, c)) = w.min_entry(t) else {
                break;
            };
            w.swap_rows(t, r);
            w.swap_cols(t, c);
            let mut dirty = false;
            for r in t + 1..rows {
                if w.a[r][t].is_zero() {
                    continue;
                }
                let q = w.a[r][t].div_floor(&w.a[t][t]);
                w.add_row(r, t, &q);
                dirty |= !w.a[r][t].is_zero();
            }
            for c in t + 1..cols {
                if w.a[t][c].is_zero() {
                    continue;
                }
                let q = w.a[t][c].div_floor(&w.a[t][t]);
                w.add_col(c, t, &q);
                dirty |= !w.a[t][c].is_zero();
            }
            if dirty {
                continue;
            }
            // divisibility: fold a non-divisible row into the pivot row
            let pivot = w.a[t][t].clone();
            let bad = (t + 1..rows)
                .find(|&r| (t + 1..cols).any(|c| !(&w.a[r][c] % &pivot).is_zero()));
            match bad {
                Some(r) => {
                    let minus_one = -BigInt::one();
                    w.add_row(t, r, &minus_one);
                }
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
    }
    Snf {
        diagonal: (0..steps).map(|i| w.a[i][i].clone()).collect(),
        left: w.u,
        right: w.v,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> Snf {
        let s = snf(m);
        let rows = m.len();
        let cols = m.first().map_or(0, |r| r.len());
        let d = mat_mul(&mat_mul(&s.left, m, rows, cols), &s.right, cols, cols);
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i == j {
                    assert_eq!(x, &s.diagonal[i]);
                } else {
                    assert!(x.is_zero(), "off-diagonal entry in {d:?}");
                }
            }
        }
        assert_eq!(int_det(&s.left).abs(), BigInt::one());
        assert_eq!(int_det(&s.right).abs(), BigInt::one());
        for pair in s.diagonal.windows(2) {
            if !pair[0].is_zero() {
                assert!((&pair[1] % &pair[0]).is_zero());
            } else {
                assert!(pair[1].is_zero());
            }
        }
        s
    }

    #[test]
    fn diag_two_three() {
        let s = check(&int_matrix(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn identity_case() {
        let s = check(&int_matrix(&[vec![1, 0], vec![0, 1]]));
        assert_eq!(s.diagonal, vec![BigInt::one(), BigInt::one()]);
    }

    #[test]
    fn cp2_lambda_transposed() {
        let s = check(&int_matrix(&[vec![1, 0, -1], vec![0, 1, -1]]));
        assert_eq!(s.diagonal, vec![BigInt::one(), BigInt::one()]);
    }

    #[test]
    fn empty_matrix() {
        assert!(snf(&Vec::new()).diagonal.is_empty());
    }

    #[test]
    fn rank_deficient() {
        let s = check(&int_matrix(&[vec![2, 4, 6], vec![4, 8, 12], vec![1, 1, 1]]));
        assert_eq!(s.diagonal[2], BigInt::zero());
    }

    proptest::proptest! {
        #[test]
        fn random_snf_invariants(entries in proptest::collection::vec(-6i64..6, 12)) {
            let m: Vec<Vec<i64>> = entries.chunks(4).map(|c| c.to_vec()).collect();
            check(&int_matrix(&m));
        }
    }
}
