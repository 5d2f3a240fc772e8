//! Lattice-normalized volumes and mixed volumes.
//!
//! Every body is first rewritten in the integer coordinates of a saturated
//! frame, where the unit cube has volume one. Mixed volumes use the
//! polarization formula over Minkowski sums, grouped by multiplicity.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hull::{self, FullHull};
use crate::lattice::intmat::{self, Row};
use crate::lattice::{to_frame_coords, IntPoint, LatticeFrame};
use crate::polytope::LatticePolytope;

/// Bodies `S_1, ..., S_l` in a common rank-`l` lattice frame.
#[derive(Clone, Debug)]
pub struct VolumeQuery {
    pub polytopes: Vec<LatticePolytope>,
    pub frame: LatticeFrame,
}

impl VolumeQuery {
    pub fn new(polytopes: Vec<LatticePolytope>, frame: LatticeFrame) -> Result<Self> {
        if polytopes.len() != frame.rank() {
            return Err(Error::FrameMismatch(format!(
                "{} bodies for a frame of rank {}",
                polytopes.len(),
                frame.rank()
            )));
        }
        Ok(VolumeQuery { polytopes, frame })
    }

    pub fn l(&self) -> usize {
        self.frame.rank()
    }
}

pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Vertices of `P` in frame coordinates, translated so the first vertex is the
/// origin. Fails if some edge direction leaves the frame's span.
pub(crate) fn body_coords(p: &LatticePolytope, frame: &LatticeFrame) -> Result<Vec<Row>> {
    if p.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    if p.ambient_dim() != frame.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: frame.ambient_dim(),
            found: p.ambient_dim(),
        });
    }
    let mut out = vec![vec![BigInt::zero(); frame.rank()]];
    for d in p.directions() {
        out.push(frame.direction_coords(&d).map_err(|_| {
            Error::FrameMismatch("polytope is not parallel to the frame".into())
        })?);
    }
    Ok(out)
}

/// `Vol_l(P)` in the frame's lattice normalization.
pub fn lattice_volume(p: &LatticePolytope, frame: &LatticeFrame) -> Result<BigRational> {
    let coords = body_coords(p, frame)?;
    let l = frame.rank();
    Ok(BigRational::new(
        hull::normalized_volume(&coords),
        factorial(l),
    ))
}

/// Independent volume computation: counts lattice points of `tP` for
/// `t = 0..=l` and extracts the leading coefficient of the counting
/// polynomial by finite differences.
pub fn lattice_point_volume_oracle(
    p: &LatticePolytope,
    frame: &LatticeFrame,
) -> Result<BigRational> {
    // Validates that P is parallel to the frame.
    body_coords(p, frame)?;
    let l = frame.rank();
    // The saturated lattice of P's own span agrees with the frame lattice
    // whenever P is full-dimensional in the frame.
    let own = LatticeFrame::spanned_by(p.vertices()[0].clone(), &p.directions())?;
    let pts = to_frame_coords(p.vertices(), &own)?;
    let pts: Vec<Vec<i64>> = pts
        .iter()
        .map(IntPoint::to_i64s)
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Internal("oracle coordinates exceed i64".into()))?;
    let counter = PointCounter::new(&pts, own.rank())?;
    let counts: Vec<BigInt> = (0..=l as i64).map(|t| BigInt::from(counter.count(t))).collect();
    // l-th forward difference at 0.
    let mut diff = BigInt::zero();
    for (j, c) in counts.iter().enumerate() {
        let term = binomial(l, j) * c;
        if (l - j) % 2 == 0 {
            diff += term;
        } else {
            diff -= term;
        }
    }
    Ok(BigRational::new(diff, factorial(l)))
}

struct PointCounter {
    rank: usize,
    lo: Vec<i64>,
    hi: Vec<i64>,
    /// `a · x >= b` for points of `P`.
    facets: Vec<(Vec<i64>, i64)>,
}

impl PointCounter {
    fn new(pts: &[Vec<i64>], rank: usize) -> Result<Self> {
        let lo = (0..rank).map(|j| pts.iter().map(|p| p[j]).min().unwrap_or(0)).collect();
        let hi = (0..rank).map(|j| pts.iter().map(|p| p[j]).max().unwrap_or(0)).collect();
        let facets = if rank >= 2 {
            let rows: Vec<Row> = pts
                .iter()
                .map(|p| p.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            let hull = FullHull::compute(rows)
                .ok_or_else(|| Error::Internal("own frame is not full rank".into()))?;
            hull.distinct_facets()
                .into_iter()
                .map(|(n, o)| {
                    let n: Option<Vec<i64>> = n.iter().map(|x| i64::try_from(x).ok()).collect();
                    Some((n?, i64::try_from(&o).ok()?))
                })
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Internal("facet data exceeds i64".into()))?
        } else {
            Vec::new()
        };
        Ok(PointCounter {
            rank,
            lo,
            hi,
            facets,
        })
    }

    fn count(&self, t: i64) -> i64 {
        match self.rank {
            0 => 1,
            1 => t * (self.hi[0] - self.lo[0]) + 1,
            r => {
                let mut x = vec![0i64; r];
                self.count_rec(t, 0, &mut x)
            }
        }
    }

    fn count_rec(&self, t: i64, j: usize, x: &mut Vec<i64>) -> i64 {
        let r = self.rank;
        if j == r - 1 {
            let mut lo = t * self.lo[j];
            let mut hi = t * self.hi[j];
            for (a, b) in &self.facets {
                let rest: i64 = (0..j).map(|i| a[i] * x[i]).sum();
                let rhs = t * b - rest;
                let c = a[j];
                if c > 0 {
                    lo = lo.max(Integer::div_ceil(&rhs, &c));
                } else if c < 0 {
                    hi = hi.min(Integer::div_floor(&-rhs, &-c));
                } else if rhs > 0 {
                    return 0;
                }
            }
            return (hi - lo + 1).max(0);
        }
        let mut total = 0;
        for v in t * self.lo[j]..=t * self.hi[j] {
            x[j] = v;
            total += self.count_rec(t, j + 1, x);
        }
        total
    }
}

type GroupKey = Vec<(Vec<Row>, usize)>;

/// Thread-safe memo table for normalized mixed volumes, keyed by bodies in
/// frame coordinates (translated to the origin) with multiplicities.
#[derive(Debug, Default)]
pub struct MixedVolumeCache {
    table: Mutex<HashMap<GroupKey, BigInt>>,
}

fn canonical_body(mut rows: Vec<Row>) -> Vec<Row> {
    rows.sort();
    rows.dedup();
    let base = rows[0].clone();
    rows.iter().map(|r| intmat::sub(r, &base)).collect()
}

impl MixedVolumeCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.table.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `l! · MV(S_1, ..., S_l)` in the given rank-`l` frame.
    pub fn normalized_mixed_volume(
        &self,
        bodies: &[&LatticePolytope],
        frame: &LatticeFrame,
    ) -> Result<BigInt> {
        let l = frame.rank();
        if bodies.len() != l {
            return Err(Error::FrameMismatch(format!(
                "{} bodies for a frame of rank {l}",
                bodies.len()
            )));
        }
        if bodies.iter().any(|b| b.is_empty()) {
            return Ok(BigInt::zero());
        }
        let groups = bodies
            .iter()
            .map(|b| Ok((body_coords(b, frame)?, 1)))
            .collect::<Result<Vec<_>>>()?;
        self.grouped(groups, l)
    }

    /// `l! · MV` of bodies given in frame coordinates of `Z^l`, each repeated
    /// with its multiplicity; multiplicities must sum to `l`.
    pub(crate) fn grouped(&self, groups: Vec<(Vec<Row>, usize)>, l: usize) -> Result<BigInt> {
        debug_assert_eq!(groups.iter().map(|g| g.1).sum::<usize>(), l);
        if l == 0 {
            return Ok(BigInt::one());
        }
        let mut merged: Vec<(Vec<Row>, usize)> = Vec::new();
        for (body, mult) in groups {
            let body = canonical_body(body);
            match merged.iter_mut().find(|(b, _)| *b == body) {
                Some(entry) => entry.1 += mult,
                None => merged.push((body, mult)),
            }
        }
        merged.sort();
        if let Some(v) = self.table.lock().expect("cache lock").get(&merged) {
            return Ok(v.clone());
        }
        let value = polarize(&merged, l)?;
        self.table
            .lock()
            .expect("cache lock")
            .insert(merged, value.clone());
        Ok(value)
    }
}

/// `l! · MV = Σ_{0 ≤ c ≤ a, c ≠ 0} (-1)^{l-|c|} ∏ C(a_i, c_i) Vol(Σ c_i S_i)`.
fn polarize(groups: &[(Vec<Row>, usize)], l: usize) -> Result<BigInt> {
    let mut c = vec![0usize; groups.len()];
    let mut total = BigInt::zero();
    loop {
        // Odometer increment over 0 <= c_i <= a_i.
        let mut i = 0;
        while i < c.len() && c[i] == groups[i].1 {
            c[i] = 0;
            i += 1;
        }
        if i == c.len() {
            break;
        }
        c[i] += 1;

        let mut sum: Vec<Row> = vec![vec![BigInt::zero(); l]];
        let mut weight = BigInt::one();
        for ((body, a), &ci) in groups.iter().zip(&c) {
            if ci == 0 {
                continue;
            }
            weight *= binomial(*a, ci);
            let factor = BigInt::from(ci);
            let mut next = Vec::with_capacity(sum.len() * body.len());
            for s in &sum {
                for v in body {
                    next.push(s.iter().zip(v).map(|(x, y)| x + y * &factor).collect());
                }
            }
            next.sort();
            next.dedup();
            sum = hull::extreme_points(&next).0;
        }
        let vol = hull::normalized_volume(&sum) * weight;
        let size: usize = c.iter().sum();
        if (l - size) % 2 == 0 {
            total += vol;
        } else {
            total -= vol;
        }
    }
    let lf = factorial(l);
    let (q, r) = total.div_rem(&lf);
    if !r.is_zero() || q.is_negative() {
        return Err(Error::Internal(format!(
            "mixed volume polarization gave {total}, not a nonnegative multiple of {lf}"
        )));
    }
    Ok(q)
}

/// `l! · MV(S_1, ..., S_l)` with a throwaway cache.
pub fn normalized_mixed_volume(q: &VolumeQuery) -> Result<BigInt> {
    let refs: Vec<&LatticePolytope> = q.polytopes.iter().collect();
    MixedVolumeCache::new().normalized_mixed_volume(&refs, &q.frame)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(n: usize, pts: &[&[i64]]) -> LatticePolytope {
        let pts: Vec<IntPoint> = pts.iter().map(|p| IntPoint::from_i64s(p)).collect();
        LatticePolytope::hull(n, &pts).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn volume_examples() {
        let f3 = LatticeFrame::standard(3);
        let simplex = poly(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(lattice_volume(&simplex, &f3).unwrap(), rat(1, 6));
        let diag = LatticeFrame::spanned_by(IntPoint::origin(2), &[IntPoint::from([1, 1])]).unwrap();
        let seg = poly(2, &[&[0, 0], &[1, 1]]);
        assert_eq!(lattice_volume(&seg, &diag).unwrap(), rat(1, 1));
        assert_eq!(lattice_volume(&poly(2, &[&[2, 2]]), &diag).unwrap(), rat(0, 1));
        let off = poly(2, &[&[1, 0], &[0, 1]]);
        assert!(matches!(
            lattice_volume(&off, &diag),
            Err(Error::FrameMismatch(_))
        ));
    }

    #[test]
    fn oracle_examples() {
        let f2 = LatticeFrame::standard(2);
        let sq = poly(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(lattice_point_volume_oracle(&sq, &f2).unwrap(), rat(1, 1));
        let tri = poly(2, &[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(lattice_point_volume_oracle(&tri, &f2).unwrap(), rat(1, 2));
        assert_eq!(
            lattice_point_volume_oracle(&poly(2, &[&[1, 1]]), &f2).unwrap(),
            rat(0, 1)
        );
        let seg = poly(2, &[&[0, 0], &[3, 0]]);
        assert_eq!(lattice_point_volume_oracle(&seg, &f2).unwrap(), rat(0, 1));
    }

    #[test]
    fn mixed_volume_examples() {
        let f2 = LatticeFrame::standard(2);
        let a = poly(2, &[&[0, 0], &[1, 0]]);
        let b = poly(2, &[&[0, 0], &[0, 1]]);
        let nmv = |x: &LatticePolytope, y: &LatticePolytope| {
            normalized_mixed_volume(&VolumeQuery::new(vec![x.clone(), y.clone()], f2.clone()).unwrap())
                .unwrap()
        };
        assert_eq!(nmv(&a, &b), BigInt::from(1));
        assert_eq!(nmv(&a, &a), BigInt::from(0));
        let tri = poly(2, &[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(nmv(&tri, &tri), BigInt::from(1));
        assert_eq!(nmv(&tri, &LatticePolytope::empty(2)), BigInt::from(0));
    }

    #[test]
    fn rank_zero_mixed_volume_is_one() {
        let frame = LatticeFrame::spanned_by(IntPoint::origin(2), &[]).unwrap();
        let q = VolumeQuery::new(Vec::new(), frame).unwrap();
        assert_eq!(normalized_mixed_volume(&q).unwrap(), BigInt::one());
    }
}
