//! Small dense exact linear algebra over [`Rational`].
//!
//! Everything here works on row-major `Vec<Vec<Rational>>`. The matrices in
//! this crate are tiny (rank of a Néron–Severi lattice, number of curves), so
//! the routines favour exactness and simplicity over asymptotics.

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use crate::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Sign counts of a symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// Multiplies a rational row by the lcm of its denominators.
fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&l / x.denom()))
        .collect()
}

/// Fraction-free (Bareiss) forward elimination in place.
///
/// Returns the pivot columns.
fn bareiss(m: &mut [Vec<BigInt>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        if m[r][c].is_zero() {
            match (r + 1..rows).find(|&i| !m[i][c].is_zero()) {
                Some(i) => m.swap(r, i),
                None => continue,
            }
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(a: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = a.iter().map(|r| integer_row(r)).collect();
    bareiss(&mut m).len()
}

pub fn determinant(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    if n == 0 {
        return Rational::one();
    }
    // Track the row scalings so the determinant of the original is recovered.
    let mut scale = Rational::one();
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for row in a {
        let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        scale = scale * Rational::from(l.clone());
        m.push(row.iter().map(|x| x.numer() * (&l / x.denom())).collect());
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = Rational::from(m[n - 1][n - 1].clone()) / scale;
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Unique solution of the square system `a x = b`, or `None` when `a` is
/// singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    assert_eq!(b.len(), n, "right-hand side length");
    if n == 0 {
        return Some(Vec::new());
    }
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), n, "matrix must be square");
            let mut aug = row.clone();
            aug.push(rhs.clone());
            integer_row(&aug)
        })
        .collect();
    let pivots = bareiss(&mut m);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from(m[i][n].clone());
        for j in i + 1..n {
            acc -= &(Rational::from(m[i][j].clone()) * &x[j]);
        }
        x[i] = acc / Rational::from(m[i][i].clone());
    }
    Some(x)
}

/// Basis of the right kernel of `a` (columns count = `cols`), via reduced row
/// echelon form.
pub fn kernel(a: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut m: Matrix = a.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &(&f * p);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -&m[row][f];
            }
            v
        })
        .collect()
}

/// Signature of a symmetric matrix by congruence diagonalization.
///
/// Symmetric row/column operations preserve the inertia; a trailing block
/// with no usable pivot is the radical.
pub fn signature(a: &[Vec<Rational>]) -> Signature {
    let n = a.len();
    let mut m: Matrix = a.to_vec();
    let mut sig = Signature {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    for k in 0..n {
        if let Some(i) = (k..n).find(|&i| !m[i][i].is_zero()) {
            swap_sym(&mut m, k, i);
        } else {
            let off = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !m[i][j].is_zero());
            let Some((i, j)) = off else {
                sig.zero = n - k;
                return sig;
            };
            // Both diagonals vanish, so adding row/col j to i yields 2·m[i][j] ≠ 0.
            add_sym(&mut m, i, j, &Rational::one());
            swap_sym(&mut m, k, i);
        }
        let p = m[k][k].clone();
        if p.is_positive() {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = -(&m[i][k] / &p);
            add_sym(&mut m, i, k, &f);
        }
    }
    sig
}

fn swap_sym(m: &mut Matrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    m.swap(a, b);
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// row_i += f·row_j, then col_i += f·col_j.
#[allow(clippy::needless_range_loop)]
fn add_sym(m: &mut Matrix, i: usize, j: usize, f: &Rational) {
    let n = m.len();
    for c in 0..n {
        let d = f * &m[j][c];
        m[i][c] += &d;
    }
    for r in 0..n {
        let d = f * &m[r][j];
        m[r][i] += &d;
    }
}

/// Leading principal minors `det(a[..k][..k])` for k = 1..=n.
pub fn leading_minors(a: &[Vec<Rational>]) -> Vec<Rational> {
    let n = a.len();
    (1..=n)
        .map(|k| {
            let sub: Matrix = a[..k].iter().map(|r| r[..k].to_vec()).collect();
            determinant(&sub)
        })
        .collect()
}

/// `(-1)^k det(A_k) > 0` for every leading principal minor. The empty matrix is
/// negative definite.
pub fn is_negative_definite(a: &[Vec<Rational>]) -> bool {
    leading_minors(a).iter().enumerate().all(|(i, d)| {
        if (i + 1) % 2 == 0 {
            d.is_positive()
        } else {
            d.is_negative()
        }
    })
}

pub fn mat_vec(a: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum())
        .collect()
}

pub fn dot(x: &[Rational], y: &[Rational]) -> Rational {
    x.iter().zip(y).map(|(p, q)| p * q).sum()
}

/// Scales a nonzero rational vector to the primitive integer vector on the same
/// ray.
pub fn primitive(v: &[Rational]) -> Vec<Rational> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter()
        .map(|x| Rational::from(x / g.abs()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| Rational::integer(x)).collect())
            .collect()
    }

    #[test]
    fn determinant_with_row_swap_and_fractions() {
        let a = vec![
            vec![q(0, 1), q(1, 2)],
            vec![q(2, 3), q(5, 1)],
        ];
        assert_eq!(determinant(&a), q(-1, 3));
        assert_eq!(determinant(&m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]])), q(6, 1));
        assert_eq!(determinant(&m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]])), Rational::zero());
        assert_eq!(determinant(&m(&[&[1, 2], &[2, 4]])), Rational::zero());
    }

    #[test]
    fn solve_exact() {
        let a = m(&[&[-2, 1], &[1, 0]]);
        let x = solve(&a, &[q(1, 2), q(3, 1)]).unwrap();
        assert_eq!(x, vec![q(3, 1), q(13, 2)]);
        assert!(solve(&m(&[&[1, 2], &[2, 4]]), &[q(1, 1), q(2, 1)]).is_none());
    }

    #[test]
    fn signatures() {
        let s = signature(&m(&[&[1, 0], &[0, -1]]));
        assert_eq!((s.positive, s.negative, s.zero), (1, 1, 0));
        let s = signature(&m(&[&[1, 0], &[0, 1]]));
        assert_eq!((s.positive, s.negative, s.zero), (2, 0, 0));
        let s = signature(&m(&[&[-2, 1], &[1, 0]]));
        assert_eq!((s.positive, s.negative, s.zero), (1, 1, 0));
        // hyperbolic plane needs the off-diagonal pivot step
        let s = signature(&m(&[&[0, 1], &[1, 0]]));
        assert_eq!((s.positive, s.negative, s.zero), (1, 1, 0));
        let s = signature(&m(&[&[1, 1], &[1, 1]]));
        assert_eq!((s.positive, s.negative, s.zero), (1, 0, 1));
    }

    #[test]
    fn negative_definite() {
        assert!(is_negative_definite(&m(&[&[-2, 1], &[1, -2]])));
        assert!(!is_negative_definite(&m(&[&[-1, 1], &[1, 0]])));
        assert!(is_negative_definite(&[]));
    }

    #[test]
    fn kernel_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(rank(&a), 1);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&a, v).iter().all(Rational::is_zero));
        }
    }

    #[test]
    fn primitive_scaling() {
        assert_eq!(primitive(&[q(1, 2), q(-3, 4)]), vec![q(2, 1), q(-3, 1)]);
    }
}
