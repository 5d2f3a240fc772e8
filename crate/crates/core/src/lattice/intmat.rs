//! Small dense integer-matrix kernels used throughout the crate.
//!
//! Matrices are row-major `Vec<Vec<BigInt>>`. Every routine is exact; unimodular
//! reductions use Euclid steps so entries stay close to the input size.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) type Row = Vec<BigInt>;

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn sub(a: &[BigInt], b: &[BigInt]) -> Row {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn add(a: &[BigInt], b: &[BigInt]) -> Row {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Gcd of the absolute values of the entries; zero for the zero vector.
pub(crate) fn content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for x in v {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
    }
    g
}

/// Divides out the content. The zero vector is returned unchanged.
pub(crate) fn make_primitive(mut v: Row) -> Row {
    let g = content(&v);
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    v
}

/// Flips the sign so that the first nonzero entry is positive.
pub(crate) fn normalize_sign(mut v: Row) -> Row {
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
    }
    v
}

pub(crate) fn identity(n: usize) -> Vec<Row> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// Rank over the rationals, by content-normalized elimination.
pub(crate) fn rank(rows: &[Row]) -> usize {
    let Some(ncols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut m: Vec<Row> = rows.to_vec();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot = &head[r];
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for j in c..ncols {
                row[j] = &pivot[c] * &row[j] - &factor * &pivot[j];
            }
            *row = make_primitive(std::mem::take(row));
        }
        r += 1;
    }
    r
}

/// Determinant of a square matrix (Bareiss fraction-free elimination).
pub(crate) fn determinant(m: &[Row]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Row> = m.to_vec();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// A basis of the integer kernel `{x in Z^ncols : A x = 0}`.
///
/// Column-reduces `A` with unimodular operations tracked in `U`; the columns of
/// `U` beyond the last pivot span the kernel lattice, which is saturated because
/// `U` is unimodular.
pub(crate) fn integer_kernel(rows: &[Row], ncols: usize) -> Vec<Row> {
    let mut a: Vec<Row> = rows.to_vec();
    let mut u = identity(ncols);
    let mut pc = 0;

    let swap_cols = |a: &mut Vec<Row>, u: &mut Vec<Row>, x: usize, y: usize| {
        for row in a.iter_mut().chain(u.iter_mut()) {
            row.swap(x, y);
        }
    };
    let axpy_col = |a: &mut Vec<Row>, u: &mut Vec<Row>, dst: usize, src: usize, q: &BigInt| {
        for row in a.iter_mut().chain(u.iter_mut()) {
            let v = &row[src] * q;
            row[dst] -= v;
        }
    };

    for i in 0..a.len() {
        if pc == ncols {
            break;
        }
        loop {
            let best = (pc..ncols)
                .filter(|&j| !a[i][j].is_zero())
                .min_by(|&x, &y| a[i][x].abs().cmp(&a[i][y].abs()));
            let Some(b) = best else { break };
            swap_cols(&mut a, &mut u, pc, b);
            let mut reduced = true;
            for j in pc + 1..ncols {
                if a[i][j].is_zero() {
                    continue;
                }
                let q = a[i][j].div_floor(&a[i][pc]);
                axpy_col(&mut a, &mut u, j, pc, &q);
                if !a[i][j].is_zero() {
                    reduced = false;
                }
            }
            if reduced {
                pc += 1;
                break;
            }
        }
    }

    (pc..ncols)
        .map(|j| u.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Row-style Hermite normal form: same row lattice, echelon with positive
/// pivots and entries above each pivot reduced into `[0, pivot)`. Zero rows
/// are dropped.
pub(crate) fn hermite_rows(mut rows: Vec<Row>) -> Vec<Row> {
    let Some(ncols) = rows.first().map(Vec::len) else {
        return rows;
    };
    let mut pr = 0;
    for c in 0..ncols {
        if pr == rows.len() {
            break;
        }
        loop {
            let best = (pr..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&x, &y| rows[x][c].abs().cmp(&rows[y][c].abs()));
            let Some(b) = best else { break };
            rows.swap(pr, b);
            let mut reduced = true;
            for i in pr + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[pr][c]);
                for j in c..ncols {
                    let v = &rows[pr][j] * &q;
                    rows[i][j] -= v;
                }
                if !rows[i][c].is_zero() {
                    reduced = false;
                }
            }
            if reduced {
                if rows[pr][c].is_negative() {
                    for x in rows[pr].iter_mut() {
                        *x = -&*x;
                    }
                }
                for i in 0..pr {
                    let q = rows[i][c].div_floor(&rows[pr][c]);
                    if q.is_zero() {
                        continue;
                    }
                    for j in c..ncols {
                        let v = &rows[pr][j] * &q;
                        rows[i][j] -= v;
                    }
                }
                pr += 1;
                break;
            }
        }
    }
    rows.truncate(pr);
    rows
}
