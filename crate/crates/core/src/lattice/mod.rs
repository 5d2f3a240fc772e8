//! Integer points, primitive covectors and saturated lattice frames.
//!
//! Points and covectors are both integer vectors but are kept as distinct
//! types: the only pairing between them is [`Covector::eval`].

pub(crate) mod intmat;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use intmat::Row;

/// An integer point (exponent vector) in `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoint(Vec<BigInt>);

impl IntPoint {
    pub fn new(coords: Vec<BigInt>) -> Self {
        IntPoint(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        IntPoint(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn origin(dim: usize) -> Self {
        IntPoint(vec![BigInt::zero(); dim])
    }

    /// The unit vector `e_i` (0-based `i`).
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![BigInt::zero(); dim];
        v[i] = BigInt::one();
        IntPoint(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &IntPoint) -> IntPoint {
        IntPoint(intmat::add(&self.0, &other.0))
    }

    pub fn sub(&self, other: &IntPoint) -> IntPoint {
        IntPoint(intmat::sub(&self.0, &other.0))
    }

    pub fn scale(&self, c: &BigInt) -> IntPoint {
        IntPoint(self.0.iter().map(|x| x * c).collect())
    }

    /// Coordinates as `i64`, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|x| i64::try_from(x).ok()).collect()
    }
}

impl<const N: usize> From<[i64; N]> for IntPoint {
    fn from(c: [i64; N]) -> Self {
        IntPoint::from_i64s(&c)
    }
}

impl fmt::Display for IntPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

/// An integer linear functional on `Z^n`, written in the dual basis `dk_1, ..., dk_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Covector(Vec<BigInt>);

impl Covector {
    pub fn new(comps: Vec<BigInt>) -> Self {
        Covector(comps)
    }

    pub fn from_i64s(comps: &[i64]) -> Self {
        Covector(comps.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The coordinate functional `dk_i` (0-based `i`).
    pub fn coordinate(dim: usize, i: usize) -> Self {
        Covector(IntPoint::unit(dim, i).0)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn comps(&self) -> &[BigInt] {
        &self.0
    }

    pub fn component(&self, i: usize) -> &BigInt {
        &self.0[i]
    }

    /// The pairing `α(k)`.
    pub fn eval(&self, p: &IntPoint) -> BigInt {
        intmat::dot(&self.0, p.coords())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_primitive(&self) -> bool {
        intmat::content(&self.0).is_one()
    }

    pub fn neg(&self) -> Covector {
        Covector(self.0.iter().map(|x| -x).collect())
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|x| i64::try_from(x).ok()).collect()
    }
}

impl<const N: usize> From<[i64; N]> for Covector {
    fn from(c: [i64; N]) -> Self {
        Covector::from_i64s(&c)
    }
}

impl fmt::Display for Covector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, v: &[BigInt]) -> fmt::Result {
    f.write_str("(")?;
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}

fn check_dims<'a>(vs: impl IntoIterator<Item = &'a IntPoint>) -> Result<Option<usize>> {
    let mut dim = None;
    for v in vs {
        match dim {
            None => dim = Some(v.dim()),
            Some(d) if d != v.dim() => {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: v.dim(),
                })
            }
            _ => {}
        }
    }
    Ok(dim)
}

/// Divides a nonzero covector by the gcd of its components, keeping its sign.
pub fn primitive_part(v: &Covector) -> Result<Covector> {
    if v.is_zero() {
        return Err(Error::ZeroCovector);
    }
    Ok(Covector(intmat::make_primitive(v.0.clone())))
}

/// A basis of the saturation `span(vectors) ∩ Z^n`, in Hermite normal form.
///
/// The result has length equal to the rank of the input; an empty or all-zero
/// input gives an empty basis.
pub fn saturated_basis(vectors: &[IntPoint]) -> Result<Vec<IntPoint>> {
    let Some(n) = check_dims(vectors)? else {
        return Ok(Vec::new());
    };
    let rows: Vec<Row> = vectors.iter().map(|v| v.0.clone()).collect();
    if intmat::rank(&rows) == 0 {
        return Ok(Vec::new());
    }
    // (span^⊥)^⊥ ∩ Z^n, computed as two integer kernels.
    let perp = intmat::integer_kernel(&rows, n);
    let sat = intmat::integer_kernel(&perp, n);
    Ok(intmat::hermite_rows(sat).into_iter().map(IntPoint).collect())
}

/// The two primitive generators `±β` of the line of covectors annihilating a
/// rank `d-1` set of directions in `Z^d`. `β` has positive leading entry.
pub fn orthogonal_line_generators(
    directions: &[IntPoint],
    dim: usize,
) -> Result<(Covector, Covector)> {
    if let Some(d) = check_dims(directions)? {
        if d != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: d,
            });
        }
    }
    let rows: Vec<Row> = directions.iter().map(|v| v.0.clone()).collect();
    let rank = intmat::rank(&rows);
    if dim == 0 || rank + 1 != dim {
        return Err(Error::NormalSpaceNotLine {
            rank,
            expected: dim.saturating_sub(1),
        });
    }
    let mut kernel = intmat::integer_kernel(&rows, dim);
    debug_assert_eq!(kernel.len(), 1);
    let beta = Covector(intmat::normalize_sign(kernel.pop().expect("rank d-1 kernel")));
    let minus = beta.neg();
    Ok((beta, minus))
}

/// An affine lattice frame: an origin plus a basis of a saturated sublattice.
///
/// Coordinates of any lattice point in the affine span are integers. The
/// frame's `rank` is the number of basis vectors.
#[derive(Clone, Debug)]
pub struct LatticeFrame {
    origin: IntPoint,
    basis: Vec<IntPoint>,
    solver: FrameSolver,
}

/// Left inverse of the basis restricted to `rank` independent coordinates.
#[derive(Clone, Debug)]
struct FrameSolver {
    pivots: Vec<usize>,
    inverse: Vec<Vec<BigRational>>,
}

impl PartialEq for LatticeFrame {
    fn eq(&self, other: &Self) -> bool {
        self.origin == other.origin && self.basis == other.basis
    }
}

impl Eq for LatticeFrame {}

impl LatticeFrame {
    /// The standard frame of `Z^n` at the origin.
    pub fn standard(n: usize) -> Self {
        let basis = (0..n).map(|i| IntPoint::unit(n, i)).collect();
        Self::trusted(IntPoint::origin(n), basis)
    }

    /// The frame of the saturated lattice spanned by `generators`, placed at `origin`.
    pub fn spanned_by(origin: IntPoint, generators: &[IntPoint]) -> Result<Self> {
        check_dims(std::iter::once(&origin).chain(generators))?;
        let basis = saturated_basis(generators)?;
        Ok(Self::trusted(origin, basis))
    }

    /// A frame from an explicit basis, which must be independent and saturated.
    pub fn from_basis(origin: IntPoint, basis: Vec<IntPoint>) -> Result<Self> {
        check_dims(std::iter::once(&origin).chain(&basis))?;
        let rows: Vec<Row> = basis.iter().map(|b| b.0.clone()).collect();
        if intmat::rank(&rows) != basis.len() {
            return Err(Error::FrameMismatch(
                "frame basis vectors are linearly dependent".into(),
            ));
        }
        let given = intmat::hermite_rows(rows);
        let saturated: Vec<Row> = saturated_basis(&basis)?.into_iter().map(|p| p.0).collect();
        if given != saturated {
            return Err(Error::FrameMismatch(
                "frame basis does not generate a saturated lattice".into(),
            ));
        }
        Ok(Self::trusted(origin, basis))
    }

    /// Builds the solver for a basis already known to be independent and saturated.
    pub(crate) fn trusted(origin: IntPoint, basis: Vec<IntPoint>) -> Self {
        let solver = FrameSolver::new(origin.dim(), &basis);
        LatticeFrame {
            origin,
            basis,
            solver,
        }
    }

    pub fn origin(&self) -> &IntPoint {
        &self.origin
    }

    pub fn basis(&self) -> &[IntPoint] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.origin.dim()
    }

    /// Integer coordinates of a direction vector in the frame basis.
    pub fn direction_coords(&self, v: &IntPoint) -> Result<Vec<BigInt>> {
        if v.dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: v.dim(),
            });
        }
        let r = self.rank();
        let mut coords = Vec::with_capacity(r);
        for row in &self.solver.inverse {
            let mut acc = BigRational::zero();
            for (a, &p) in row.iter().zip(&self.solver.pivots) {
                acc += a * BigRational::from_integer(v.0[p].clone());
            }
            if !acc.is_integer() {
                return Err(Error::NotInFrameSpan);
            }
            coords.push(acc.to_integer());
        }
        if self.combine(&coords) != *v {
            return Err(Error::NotInFrameSpan);
        }
        Ok(coords)
    }

    /// Integer coordinates of a point relative to the frame origin.
    pub fn coords(&self, p: &IntPoint) -> Result<Vec<BigInt>> {
        if p.dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: p.dim(),
            });
        }
        self.direction_coords(&p.sub(&self.origin))
    }

    /// `Σ c_i b_i` (no origin).
    pub fn combine(&self, coeffs: &[BigInt]) -> IntPoint {
        let mut out = vec![BigInt::zero(); self.ambient_dim()];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(&b.0) {
                *o += c * x;
            }
        }
        IntPoint(out)
    }

    /// The point with the given frame coordinates.
    pub fn point_at(&self, coords: &[BigInt]) -> IntPoint {
        self.origin.add(&self.combine(coords))
    }
}

impl FrameSolver {
    fn new(ambient: usize, basis: &[IntPoint]) -> Self {
        let r = basis.len();
        // Pick r coordinates on which the basis restricts to an invertible matrix.
        let mut pivots = Vec::with_capacity(r);
        let mut chosen: Vec<Row> = Vec::with_capacity(r);
        for i in 0..ambient {
            if pivots.len() == r {
                break;
            }
            let row: Row = basis.iter().map(|b| b.0[i].clone()).collect();
            chosen.push(row);
            if intmat::rank(&chosen) == chosen.len() {
                pivots.push(i);
            } else {
                chosen.pop();
            }
        }
        assert_eq!(pivots.len(), r, "frame basis must be linearly independent");
        FrameSolver {
            pivots,
            inverse: rational_inverse(&chosen),
        }
    }
}

fn rational_inverse(m: &[Row]) -> Vec<Vec<BigRational>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .cloned()
                .map(BigRational::from_integer)
                .chain((0..n).map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                }))
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&i| !a[i][c].is_zero())
            .expect("matrix is invertible");
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..2 * n {
                let v = &f * &a[c][j];
                a[i][j] -= v;
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// Frame coordinates of each point.
pub fn to_frame_coords(points: &[IntPoint], frame: &LatticeFrame) -> Result<Vec<IntPoint>> {
    points
        .iter()
        .map(|p| frame.coords(p).map(IntPoint))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i64]]) -> Vec<IntPoint> {
        v.iter().map(|c| IntPoint::from_i64s(c)).collect()
    }

    #[test]
    fn primitive_part_examples() {
        assert_eq!(primitive_part(&[2, 4].into()).unwrap(), [1, 2].into());
        assert_eq!(primitive_part(&[0, -3].into()).unwrap(), [0, -1].into());
        assert_eq!(
            primitive_part(&[6, 10, 15].into()).unwrap(),
            [6, 10, 15].into()
        );
        assert_eq!(primitive_part(&[0, 0].into()), Err(Error::ZeroCovector));
    }

    #[test]
    fn saturated_basis_examples() {
        assert_eq!(
            saturated_basis(&pts(&[&[2, 2, 0]])).unwrap(),
            pts(&[&[1, 1, 0]])
        );
        assert_eq!(
            saturated_basis(&pts(&[&[1, 0, 0], &[1, 2, 0]])).unwrap(),
            pts(&[&[1, 0, 0], &[0, 1, 0]])
        );
        assert!(saturated_basis(&[]).unwrap().is_empty());
        assert!(saturated_basis(&pts(&[&[0, 0]])).unwrap().is_empty());
    }

    #[test]
    fn frame_coordinates() {
        let frame = LatticeFrame::spanned_by(IntPoint::origin(3), &pts(&[&[1, 1, 0]])).unwrap();
        let got = to_frame_coords(&pts(&[&[0, 0, 0], &[1, 1, 0]]), &frame).unwrap();
        assert_eq!(got, pts(&[&[0], &[1]]));
        assert_eq!(
            to_frame_coords(&pts(&[&[2, 2, 0]]), &frame).unwrap(),
            pts(&[&[2]])
        );
        assert_eq!(
            to_frame_coords(&pts(&[&[1, 0, 0]]), &frame),
            Err(Error::NotInFrameSpan)
        );
    }

    #[test]
    fn frame_rejects_unsaturated_basis() {
        let err = LatticeFrame::from_basis(IntPoint::origin(2), pts(&[&[2, 0]])).unwrap_err();
        assert!(matches!(err, Error::FrameMismatch(_)));
        assert!(LatticeFrame::from_basis(IntPoint::origin(2), pts(&[&[1, 1], &[0, 1]])).is_ok());
    }

    #[test]
    fn rank_zero_frame() {
        let frame = LatticeFrame::spanned_by(IntPoint::from([3, 4]), &[]).unwrap();
        assert_eq!(frame.rank(), 0);
        assert!(frame.coords(&IntPoint::from([3, 4])).unwrap().is_empty());
        assert_eq!(
            frame.coords(&IntPoint::from([3, 5])),
            Err(Error::NotInFrameSpan)
        );
    }

    #[test]
    fn orthogonal_line_examples() {
        let (b, m) = orthogonal_line_generators(&pts(&[&[1, 0, 0], &[0, 1, 0]]), 3).unwrap();
        assert_eq!(b, [0, 0, 1].into());
        assert_eq!(m, [0, 0, -1].into());
        let (b, _) = orthogonal_line_generators(&pts(&[&[1, 1]]), 2).unwrap();
        assert_eq!(b, [1, -1].into());
        assert!(matches!(
            orthogonal_line_generators(&pts(&[&[1, 0, 0]]), 3),
            Err(Error::NormalSpaceNotLine { rank: 1, .. })
        ));
        // A point in Z^1: the whole dual line.
        let (b, _) = orthogonal_line_generators(&[], 1).unwrap();
        assert_eq!(b, [1].into());
    }
}
