//! Jacobian matrices and exact determinants.

use crate::error::{Error, Result};
use crate::poly::Polynomial;

pub fn jacobian_matrix(maps: &[Polynomial], vars: &[&str]) -> Result<Vec<Vec<Polynomial>>> {
    let Some(first) = maps.first() else {
        return Err(Error::Arity {
            expected: vars.len(),
            got: 0,
        });
    };
    let ctx = first.context();
    let mut indices = Vec::with_capacity(vars.len());
    for v in vars {
        let i = ctx.require(v)?;
        if indices.contains(&i) {
            return Err(Error::Invalid(format!("variable `{v}` repeated")));
        }
        indices.push(i);
    }
    maps.iter()
        .map(|f| {
            if f.context() != ctx {
                return Err(Error::ContextMismatch("jacobian entries".into()));
            }
            Ok(indices.iter().map(|&i| f.partial_at(i)).collect())
        })
        .collect()
}

/// Determinant of a square polynomial matrix by cofactor expansion.
pub fn determinant(matrix: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = matrix.len();
    if n == 0 {
        return Err(Error::Arity { expected: 1, got: 0 });
    }
    if let Some(row) = matrix.iter().find(|r| r.len() != n) {
        return Err(Error::Arity {
            expected: n,
            got: row.len(),
        });
    }
    let cols: Vec<usize> = (0..n).collect();
    Ok(minor(matrix, 0, &cols))
}

fn minor(m: &[Vec<Polynomial>], row: usize, cols: &[usize]) -> Polynomial {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let ctx = m[0][0].context();
    let mut acc = Polynomial::zero(ctx);
    for (k, &c) in cols.iter().enumerate() {
        if m[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&j| j != c).collect();
        let term = &m[row][c] * &minor(m, row + 1, &rest);
        if k % 2 == 0 {
            acc = &acc + &term;
        } else {
            acc = &acc - &term;
        }
    }
    acc
}

/// Determinant of the Jacobian of `maps` with respect to `vars`.
pub fn jacobian_det(maps: &[Polynomial], vars: &[&str]) -> Result<Polynomial> {
    if maps.len() != vars.len() {
        return Err(Error::Arity {
            expected: vars.len(),
            got: maps.len(),
        });
    }
    determinant(&jacobian_matrix(maps, vars)?)
}

/// Whether some `k × k` minor of the Jacobian is a nonzero polynomial.
pub fn jacobian_has_rank(maps: &[Polynomial], vars: &[&str], k: usize) -> Result<bool> {
    let jm = jacobian_matrix(maps, vars)?;
    let rows = subsets(maps.len(), k);
    let cols = subsets(vars.len(), k);
    for r in &rows {
        for c in &cols {
            let sub: Vec<Vec<Polynomial>> = r
                .iter()
                .map(|&i| c.iter().map(|&j| jm[i][j].clone()).collect())
                .collect();
            if !determinant(&sub)?.is_zero() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}
