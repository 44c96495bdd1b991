//! Gauss-Jordan elimination over a [`FieldTower`].

use crate::fields::{FieldTower, Scalar};

pub type Row = Vec<Scalar>;

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Vec<Row>, ncols: usize) -> (Vec<Row>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        // Prefer a constant pivot to keep fractions small.
        let mut best: Option<usize> = None;
        for (i, row) in rows.iter().enumerate().skip(r) {
            if !row[col].is_zero() {
                if row[col].is_constant() {
                    best = Some(i);
                    break;
                }
                if best.is_none() {
                    best = Some(i);
                }
            }
        }
        let Some(p) = best else { continue };
        rows.swap(r, p);
        let inv = rows[r][col].inv().unwrap();
        if !inv.is_one() {
            for c in col..ncols {
                if !rows[r][c].is_zero() {
                    rows[r][c] = &rows[r][c] * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        let support: Vec<usize> = (col..ncols).filter(|&c| !pivot_row[c].is_zero()).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for &c in &support {
                row[c] = &row[c] - &(&f * &pivot_row[c]);
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: Vec<Row>, ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{x : rows * x = 0}`, one vector per free column, in column order.
pub fn nullspace(tower: &FieldTower, rows: Vec<Row>, ncols: usize) -> Vec<Row> {
    let (red, pivots) = rref(rows, ncols);
    let mut basis = Vec::new();
    let mut is_pivot = vec![None; ncols];
    for (i, &p) in pivots.iter().enumerate() {
        is_pivot[p] = Some(i);
    }
    for free in 0..ncols {
        if is_pivot[free].is_some() {
            continue;
        }
        let mut v = vec![tower.zero(); ncols];
        v[free] = tower.one();
        for (i, &p) in pivots.iter().enumerate() {
            if !red[i][free].is_zero() {
                v[p] = -&red[i][free];
            }
        }
        basis.push(v);
    }
    basis
}

/// One solution of `rows * x = b`, if the system is consistent.
pub fn solve(tower: &FieldTower, rows: &[Row], b: &[Scalar]) -> Option<Row> {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let aug: Vec<Row> = rows
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![tower.zero(); ncols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = red[i][ncols].clone();
    }
    Some(x)
}

/// Transpose a list of columns into rows.
pub fn transpose(tower: &FieldTower, cols: &[Row], nrows: usize) -> Vec<Row> {
    let mut rows = vec![vec![tower.zero(); cols.len()]; nrows];
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c.iter().enumerate() {
            if !x.is_zero() {
                rows[i][j] = x.clone();
            }
        }
    }
    rows
}

/// Express `v` in terms of the given independent vectors.
pub fn coordinates(tower: &FieldTower, basis: &[Row], v: &[Scalar]) -> Option<Row> {
    let rows = transpose(tower, basis, v.len());
    solve(tower, &rows, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(t: &FieldTower, rows: &[&[i64]]) -> Vec<Row> {
        rows.iter()
            .map(|r| r.iter().map(|&x| t.int(x)).collect())
            .collect()
    }

    #[test]
    fn rank_and_kernel() {
        let q = FieldTower::rationals();
        let a = m(&q, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(a.clone(), 3), 2);
        let ker = nullspace(&q, a.clone(), 3);
        assert_eq!(ker.len(), 1);
        for row in &a {
            let dot = row
                .iter()
                .zip(&ker[0])
                .fold(q.zero(), |acc, (x, y)| &acc + &(x * y));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn solve_system() {
        let q = FieldTower::rationals();
        let a = m(&q, &[&[2, 1], &[1, 3]]);
        let x = solve(&q, &a, &[q.int(3), q.int(5)]).unwrap();
        assert_eq!(x, vec![q.rational(4, 5).unwrap(), q.rational(7, 5).unwrap()]);
        let sing = m(&q, &[&[1, 1], &[1, 1]]);
        assert!(solve(&q, &sing, &[q.int(1), q.int(2)]).is_none());
    }

    #[test]
    fn over_function_field() {
        let f = FieldTower::rationals().adjoin_var("t").unwrap();
        let t = f.var("t").unwrap();
        let a = vec![vec![t.clone(), f.one()], vec![f.one(), t.clone()]];
        // determinant t^2 - 1 is nonzero
        assert_eq!(rank(a, 2), 2);
    }
}
