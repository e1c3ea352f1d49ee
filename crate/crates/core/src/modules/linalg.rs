//! Dense matrices over a [`Ring`]; elimination assumes the ring is a field.

use crate::coeffs::Ring;
use crate::error::Result;

/// Row-major; column `j` is the image of basis vector `j`.
pub type Matrix<E> = Vec<Vec<E>>;

pub fn zeros<R: Ring>(r: &R, rows: usize, cols: usize) -> Matrix<R::Elt> {
    vec![vec![r.zero(); cols]; rows]
}

pub fn identity<R: Ring>(r: &R, n: usize) -> Matrix<R::Elt> {
    let mut m = zeros(r, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = r.one();
    }
    m
}

pub fn mat_mul<R: Ring>(r: &R, a: &Matrix<R::Elt>, b: &Matrix<R::Elt>) -> Result<Matrix<R::Elt>> {
    let cols = b.first().map_or(0, |x| x.len());
    let mut out = zeros(r, a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for (k, aik) in row.iter().enumerate() {
            if r.is_zero(aik) {
                continue;
            }
            for j in 0..cols {
                if !r.is_zero(&b[k][j]) {
                    out[i][j] = r.add(&out[i][j], &r.mul(aik, &b[k][j]))?;
                }
            }
        }
    }
    Ok(out)
}

pub fn mat_add<R: Ring>(r: &R, a: &Matrix<R::Elt>, b: &Matrix<R::Elt>) -> Result<Matrix<R::Elt>> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| r.add(p, q)).collect())
        .collect()
}

pub fn mat_scale<R: Ring>(r: &R, a: &Matrix<R::Elt>, c: &R::Elt) -> Matrix<R::Elt> {
    a.iter().map(|row| row.iter().map(|x| r.mul(x, c)).collect()).collect()
}

pub fn transpose<E: Clone>(a: &Matrix<E>) -> Matrix<E> {
    let cols = a.first().map_or(0, |x| x.len());
    (0..cols).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_vec<R: Ring>(r: &R, a: &Matrix<R::Elt>, v: &[R::Elt]) -> Result<Vec<R::Elt>> {
    a.iter()
        .map(|row| {
            let mut acc = r.zero();
            for (x, y) in row.iter().zip(v) {
                if !r.is_zero(x) && !r.is_zero(y) {
                    acc = r.add(&acc, &r.mul(x, y))?;
                }
            }
            Ok(acc)
        })
        .collect()
}

/// `c·I` when `a` is scalar.
pub fn scalar_value<R: Ring>(r: &R, a: &Matrix<R::Elt>) -> Option<R::Elt> {
    if a.is_empty() {
        return Some(r.zero());
    }
    let c = a[0][0].clone();
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let expect = if i == j { &c } else { &r.zero() };
            if x != expect && !(r.is_zero(x) && r.is_zero(expect)) {
                return None;
            }
        }
    }
    Some(c)
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<R: Ring>(r: &R, a: &mut Matrix<R::Elt>) -> Result<Vec<usize>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |x| x.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&i| !r.is_zero(&a[i][col])) else { continue };
        a.swap(row, p);
        let inv = r.inv(&a[row][col])?;
        a[row] = a[row].iter().map(|x| r.mul(x, &inv)).collect();
        for i in 0..rows {
            if i != row && !r.is_zero(&a[i][col]) {
                let f = a[i][col].clone();
                for j in 0..cols {
                    let t = r.mul(&f, &a[row][j]);
                    a[i][j] = r.sub(&a[i][j], &t)?;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    Ok(pivots)
}

pub fn rank<R: Ring>(r: &R, a: &Matrix<R::Elt>) -> Result<usize> {
    Ok(rref(r, &mut a.clone())?.len())
}

/// A basis of `{v : a v = 0}`.
pub fn kernel<R: Ring>(r: &R, a: &Matrix<R::Elt>, cols: usize) -> Result<Vec<Vec<R::Elt>>> {
    let mut m = a.clone();
    let pivots = rref(r, &mut m)?;
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    Ok(free
        .iter()
        .map(|&f| {
            let mut v = vec![r.zero(); cols];
            v[f] = r.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = r.neg(&m[i][f]);
            }
            v
        })
        .collect())
}

/// `det(x·I − a)` by Berkowitz's division-free algorithm, low degree first.
pub fn char_poly<R: Ring>(r: &R, a: &Matrix<R::Elt>) -> Result<Vec<R::Elt>> {
    let n = a.len();
    // Coefficients high degree first during the recursion.
    let mut poly = vec![r.one()];
    for k in 0..n {
        // Leading k×k block is done; extend by row/column k.
        let akk = a[k][k].clone();
        let row: Vec<R::Elt> = (0..k).map(|j| a[k][j].clone()).collect();
        let col: Vec<R::Elt> = (0..k).map(|i| a[i][k].clone()).collect();
        let block: Matrix<R::Elt> = (0..k).map(|i| a[i][..k].to_vec()).collect();
        // Toeplitz column: 1, -a_kk, -R C, -R A C, ...
        let mut t = vec![r.one(), r.neg(&akk)];
        let mut v = col;
        for _ in 0..k {
            let rv = row.iter().zip(&v).try_fold(r.zero(), |acc, (x, y)| r.add(&acc, &r.mul(x, y)))?;
            t.push(r.neg(&rv));
            v = mat_vec(r, &block, &v)?;
        }
        let mut next = vec![r.zero(); k + 2];
        for (i, ti) in t.iter().enumerate() {
            for (j, pj) in poly.iter().enumerate() {
                if i + j < k + 2 && !r.is_zero(ti) && !r.is_zero(pj) {
                    next[i + j] = r.add(&next[i + j], &r.mul(ti, pj))?;
                }
            }
        }
        poly = next;
    }
    poly.reverse();
    Ok(poly)
}

/// Product of matrices along a word of generator indices.
pub fn word_matrix<R: Ring>(r: &R, mats: &[Matrix<R::Elt>], word: &[usize], n: usize) -> Result<Matrix<R::Elt>> {
    let mut acc = identity(r, n);
    for &g in word {
        acc = mat_mul(r, &acc, &mats[g])?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::Rationals;
    use num_rational::BigRational;

    fn m(rows: &[&[i64]]) -> Matrix<BigRational> {
        rows.iter().map(|r| r.iter().map(|x| BigRational::from_integer((*x).into())).collect()).collect()
    }

    fn ints(v: &[BigRational]) -> Vec<i64> {
        v.iter().map(|x| i64::try_from(x.to_integer()).unwrap()).collect()
    }

    #[test]
    fn char_poly_matches_cofactor_expansion() {
        let r = Rationals;
        // x^2 - 5x - 2
        assert_eq!(ints(&char_poly(&r, &m(&[&[1, 2], &[3, 4]])).unwrap()), vec![-2, -5, 1]);
        // trace 6, principal minors 2 + 3 + 7, det 15
        let a = m(&[&[2, 1, 3], &[0, 1, 4], &[1, -1, 3]]);
        assert_eq!(ints(&char_poly(&r, &a).unwrap()), vec![-15, 12, -6, 1]);
    }

    #[test]
    fn rank_and_kernel() {
        let r = Rationals;
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&r, &a).unwrap(), 2);
        let k = kernel(&r, &a, 3).unwrap();
        assert_eq!(k.len(), 1);
        assert!(mat_vec(&r, &a, &k[0]).unwrap().iter().all(|x| x == &BigRational::from_integer(0.into())));
    }
}
