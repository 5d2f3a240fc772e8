//! The forms `Q^l_k`, the degree-`l` part of `∏ x_i / (1 + x_i)`, and their
//! evaluation on polytopes through mixed volumes.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::LatticeFrame;
use crate::mixed_volume::{body_coords, MixedVolumeCache};
use crate::polytope::LatticePolytope;

/// Positive parts `(a_1, ..., a_k)`, one exponent per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Option<Self> {
        parts.iter().all(|&a| a >= 1).then_some(Composition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }
}

/// All compositions of `l` into `k` positive parts, in lexicographic order,
/// each with its sign `(-1)^(l-k)`.
pub fn q_compositions(l: usize, k: usize) -> Vec<(Composition, i32)> {
    if k > l || (k == 0 && l > 0) {
        return Vec::new();
    }
    let sign = if (l - k) % 2 == 0 { 1 } else { -1 };
    let mut out = Vec::new();
    let mut parts = Vec::with_capacity(k);
    fn rec(remaining: usize, slots: usize, parts: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if remaining == 0 {
                out.push(parts.clone());
            }
            return;
        }
        for a in 1..=remaining + 1 - slots {
            parts.push(a);
            rec(remaining - a, slots - 1, parts, out);
            parts.pop();
        }
    }
    rec(l, k, &mut parts, &mut out);
    out.into_iter()
        .map(|parts| (Composition { parts }, sign))
        .collect()
}

/// `l! · Q^l_k(faces)` in a rank-`l` frame.
pub fn q_exponent_cached(
    cache: &MixedVolumeCache,
    l: usize,
    faces: &[&LatticePolytope],
    frame: &LatticeFrame,
) -> Result<BigInt> {
    let k = faces.len();
    if l == 0 {
        return Ok(if k == 0 { BigInt::one() } else { BigInt::zero() });
    }
    if frame.rank() != l {
        return Err(Error::FrameMismatch(format!(
            "degree {l} form evaluated in a frame of rank {}",
            frame.rank()
        )));
    }
    if k > l || k == 0 || faces.iter().any(|f| f.is_empty()) {
        return Ok(BigInt::zero());
    }
    let coords = faces
        .iter()
        .map(|f| body_coords(f, frame))
        .collect::<Result<Vec<_>>>()?;
    let mut total = BigInt::zero();
    for (comp, sign) in q_compositions(l, k) {
        let groups = coords
            .iter()
            .cloned()
            .zip(comp.parts().iter().copied())
            .collect();
        let v = cache.grouped(groups, l)?;
        if sign > 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    Ok(total)
}

/// `l! · Q~^l_{k+1}(face0, faces) = l! · (Q^l_k(faces) - Q^l_{k+1}(face0, faces))`.
pub fn q_tilde_exponent_cached(
    cache: &MixedVolumeCache,
    l: usize,
    face0: &LatticePolytope,
    faces: &[&LatticePolytope],
    frame: &LatticeFrame,
) -> Result<BigInt> {
    if face0.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let with0: Vec<&LatticePolytope> = std::iter::once(face0).chain(faces.iter().copied()).collect();
    Ok(q_exponent_cached(cache, l, faces, frame)? - q_exponent_cached(cache, l, &with0, frame)?)
}

pub fn q_exponent(l: usize, faces: &[&LatticePolytope], frame: &LatticeFrame) -> Result<BigInt> {
    q_exponent_cached(&MixedVolumeCache::new(), l, faces, frame)
}

pub fn q_tilde_exponent(
    l: usize,
    face0: &LatticePolytope,
    faces: &[&LatticePolytope],
    frame: &LatticeFrame,
) -> Result<BigInt> {
    q_tilde_exponent_cached(&MixedVolumeCache::new(), l, face0, faces, frame)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::IntPoint;

    fn poly(n: usize, pts: &[&[i64]]) -> LatticePolytope {
        let pts: Vec<IntPoint> = pts.iter().map(|p| IntPoint::from_i64s(p)).collect();
        LatticePolytope::hull(n, &pts).unwrap()
    }

    fn comps(l: usize, k: usize) -> Vec<(Vec<usize>, i32)> {
        q_compositions(l, k)
            .into_iter()
            .map(|(c, s)| (c.parts().to_vec(), s))
            .collect()
    }

    #[test]
    fn composition_examples() {
        assert_eq!(comps(1, 1), vec![(vec![1], 1)]);
        assert_eq!(comps(2, 1), vec![(vec![2], -1)]);
        assert_eq!(comps(2, 2), vec![(vec![1, 1], 1)]);
        assert!(comps(1, 2).is_empty());
        assert!(comps(3, 0).is_empty());
        assert_eq!(comps(0, 0), vec![(vec![], 1)]);
        assert_eq!(
            comps(4, 2),
            vec![(vec![1, 3], 1), (vec![2, 2], 1), (vec![3, 1], 1)]
        );
    }

    #[test]
    fn composition_counts_are_binomial() {
        for l in 1..8usize {
            for k in 1..=l {
                let expected = (1..k).fold(1usize, |acc, i| acc * (l - i) / i);
                assert_eq!(q_compositions(l, k).len(), expected, "l={l} k={k}");
            }
        }
    }

    #[test]
    fn q_exponent_examples() {
        let f0 = LatticeFrame::spanned_by(IntPoint::origin(2), &[]).unwrap();
        assert_eq!(q_exponent(0, &[], &f0).unwrap(), BigInt::one());
        let f1 = LatticeFrame::standard(1);
        let seg = poly(1, &[&[0], &[1]]);
        assert_eq!(q_exponent(1, &[&seg], &f1).unwrap(), BigInt::one());
        let f2 = LatticeFrame::standard(2);
        let tri = poly(2, &[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(q_exponent(2, &[&tri], &f2).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn q_tilde_examples() {
        let f0 = LatticeFrame::spanned_by(IntPoint::origin(1), &[]).unwrap();
        let pt = poly(1, &[&[4]]);
        assert_eq!(q_tilde_exponent(0, &pt, &[], &f0).unwrap(), BigInt::one());
        let f1 = LatticeFrame::standard(1);
        let seg = poly(1, &[&[2], &[5]]);
        assert_eq!(q_tilde_exponent(1, &seg, &[], &f1).unwrap(), BigInt::from(-3));
        assert_eq!(
            q_tilde_exponent(1, &pt, &[&seg], &f1).unwrap(),
            BigInt::from(3)
        );
    }
}
