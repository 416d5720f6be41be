use num::bigint::BigInt;
use num::{Signed, Zero};

/// Determinant of a square integer matrix, computed exactly through the
/// rational elimination and read back as an integer.
pub fn int_matrix_det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let rm = super::RationalMatrix::from_rows(
        m.iter()
            .map(|row| {
                assert_eq!(row.len(), n, "non-square matrix");
                row.iter().map(|&v| super::rat(v)).collect()
            })
            .collect(),
    );
    let d = rm.det();
    assert!(d.is_integer());
    d.to_integer()
}

/// Diagonal of the Smith normal form of an integer matrix, with nonnegative
/// entries, each dividing the next, padded with zeros up to `min(rows, cols)`.
pub fn smith_normal_form(m: &[Vec<i64>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut diag = Vec::new();
    let mut top = 0;

    while top < rows && top < cols {
        let Some((pr, pc)) = min_nonzero(&a, top) else {
            break;
        };
        a.swap(top, pr);
        swap_cols(&mut a, top, pc);

        // Reduce the cross until the pivot divides everything in its row and
        // column, then clear.
        loop {
            let mut clean = true;
            for r in top + 1..rows {
                if !a[r][top].is_zero() {
                    let q = &a[r][top] / &a[top][top];
                    for c in top..cols {
                        let sub = &q * &a[top][c];
                        a[r][c] = &a[r][c] - sub;
                    }
                    if !a[r][top].is_zero() {
                        a.swap(top, r);
                        clean = false;
                    }
                }
            }
            for c in top + 1..cols {
                if !a[top][c].is_zero() {
                    let q = &a[top][c] / &a[top][top];
                    for r in top..rows {
                        let sub = &q * &a[r][top];
                        a[r][c] = &a[r][c] - sub;
                    }
                    if !a[top][c].is_zero() {
                        swap_cols(&mut a, top, c);
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }

        // Enforce divisibility towards the lower-right block.
        let mut fixed = false;
        'outer: for r in top + 1..rows {
            for c in top + 1..cols {
                if !(&a[r][c] % &a[top][top]).is_zero() {
                    for cc in top..cols {
                        let add = a[r][cc].clone();
                        a[top][cc] = &a[top][cc] + add;
                    }
                    fixed = true;
                    break 'outer;
                }
            }
        }
        if fixed {
            continue;
        }

        diag.push(a[top][top].abs());
        top += 1;
    }

    while diag.len() < rows.min(cols) {
        diag.push(BigInt::zero());
    }
    diag
}

fn min_nonzero(a: &[Vec<BigInt>], top: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (r, row) in a.iter().enumerate().skip(top) {
        for (c, v) in row.iter().enumerate().skip(top) {
            if !v.is_zero() {
                let better = match best {
                    None => true,
                    Some((br, bc)) => v.abs() < a[br][bc].abs(),
                };
                if better {
                    best = Some((r, c));
                }
            }
        }
    }
    best
}

fn swap_cols(a: &mut [Vec<BigInt>], x: usize, y: usize) {
    if x == y {
        return;
    }
    for row in a {
        row.swap(x, y);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_diagonalizes() {
        let d = smith_normal_form(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let vals: Vec<i64> = d.iter().map(|b| i64::try_from(b).unwrap()).collect();
        assert_eq!(vals, vec![2, 2, 156]);
    }

    #[test]
    fn snf_of_singular() {
        let d = smith_normal_form(&[vec![1, 2], vec![2, 4]]);
        let vals: Vec<i64> = d.iter().map(|b| i64::try_from(b).unwrap()).collect();
        assert_eq!(vals, vec![1, 0]);
    }

    #[test]
    fn det_matches_product_of_snf() {
        let m = vec![vec![3, 1, 0], vec![0, 2, 5], vec![1, 1, 1]];
        let det = int_matrix_det(&m);
        let prod: BigInt = smith_normal_form(&m).iter().product();
        assert_eq!(det.abs(), prod.abs());
    }
}
