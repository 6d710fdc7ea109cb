//! Dense exact linear algebra over `Q`: row reduction, kernels, rank and
//! generalized eigenspaces of commuting operators.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

/// Row-major dense matrix.
pub type Mat = Vec<Vec<Q>>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn zeros(rows: usize, cols: usize) -> Mat {
    vec![vec![Q::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Mat {
    let mut a = zeros(n, n);
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    a
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    let mut out = zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for (k, aik) in row.iter().enumerate().take(inner) {
            if aik.is_zero() {
                continue;
            }
            for j in 0..cols {
                if !b[k][j].is_zero() {
                    out[i][j] += aik * &b[k][j];
                }
            }
        }
    }
    out
}

/// `a − c·I`.
pub fn shift(a: &Mat, c: &Q) -> Mat {
    let mut out = a.clone();
    for (i, row) in out.iter_mut().enumerate() {
        row[i] -= c;
    }
    out
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(a: &mut Mat) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let (pivot_row, target) = if i < r {
                    let (lo, hi) = a.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = a.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (x, y) in target[c..cols].iter_mut().zip(&pivot_row[c..cols]) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(a: &Mat) -> usize {
    rref(&mut a.clone()).len()
}

/// A kernel basis of the `cols`-column matrix `a`.
///
/// The returned vectors carry an identity block on the free (non-pivot)
/// coordinates, which are returned alongside.
pub fn kernel(a: &Mat, cols: usize) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut r = a.clone();
    let pivots = rref(&mut r);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[row][f].clone();
            }
            v
        })
        .collect();
    (basis, free)
}

/// `a^k` for `k ≥ 1` by repeated squaring.
pub fn power(a: &Mat, mut k: usize) -> Mat {
    let mut base = a.clone();
    let mut acc = identity(a.len());
    while k > 0 {
        if k & 1 == 1 {
            acc = mul(&acc, &base);
        }
        k >>= 1;
        if k > 0 {
            base = mul(&base, &base);
        }
    }
    acc
}

/// `ker (a − c)^k` for `k` large, found by raising the power until the kernel stops growing.
pub fn generalized_kernel(a: &Mat, c: &Q, dim: usize) -> (Vec<Vec<Q>>, Vec<usize>) {
    let n = shift(a, c);
    let mut current = n.clone();
    let (mut basis, mut free) = kernel(&current, dim);
    while !basis.is_empty() && basis.len() < dim {
        current = mul(&current, &n);
        let (next, next_free) = kernel(&current, dim);
        if next.len() == basis.len() {
            break;
        }
        basis = next;
        free = next_free;
    }
    (basis, free)
}

/// Matrix of `op` restricted to the invariant subspace spanned by `basis`,
/// in the coordinates given by the identity block at `free`.
pub fn restrict(op: &Mat, basis: &[Vec<Q>], free: &[usize]) -> Mat {
    let k = basis.len();
    let mut out = zeros(k, k);
    for (j, b) in basis.iter().enumerate() {
        for (i, &f) in free.iter().enumerate() {
            let mut acc = Q::zero();
            for (c, bc) in b.iter().enumerate() {
                if !bc.is_zero() && !op[f][c].is_zero() {
                    acc += &op[f][c] * bc;
                }
            }
            out[i][j] = acc;
        }
    }
    out
}

/// Simultaneous generalized eigenspace dimensions of the commuting matrices `ops`,
/// with eigenvalues searched among `candidates`.
///
/// Returns the tuples of eigenvalues with positive dimension, and the part of the
/// space not accounted for by the candidates.
pub fn joint_generalized_eigenspaces(ops: &[Mat], dim: usize, candidates: &[i64]) -> (Vec<(Vec<i64>, usize)>, usize) {
    let mut out = Vec::new();
    let mut missing = 0;
    split(ops, dim, candidates, &mut Vec::new(), &mut out, &mut missing);
    (out, missing)
}

fn split(ops: &[Mat], dim: usize, candidates: &[i64], prefix: &mut Vec<i64>, out: &mut Vec<(Vec<i64>, usize)>, missing: &mut usize) {
    if dim == 0 {
        return;
    }
    let Some((first, rest)) = ops.split_first() else {
        out.push((prefix.clone(), dim));
        return;
    };
    let mut found = 0;
    for &c in candidates {
        let (basis, free) = generalized_kernel(first, &q(c), dim);
        if basis.is_empty() {
            continue;
        }
        found += basis.len();
        let restricted: Vec<Mat> = rest.iter().map(|op| restrict(op, &basis, &free)).collect();
        prefix.push(c);
        split(&restricted, basis.len(), candidates, prefix, out, missing);
        prefix.pop();
    }
    *missing += dim - found;
}
