//! Lattice polytopes in vertex representation.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::hull::{self, FullHull};
use crate::lattice::intmat::{self, Row};
use crate::lattice::{Covector, IntPoint};

/// A subset of the coordinate indices `{0, ..., n-1}`, kept sorted.
///
/// Indices are 0-based internally; `Display` prints them 1-based, `{1,2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        IndexSet(indices)
    }

    /// `{0, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        IndexSet((0..n).collect())
    }

    pub fn from_mask(mask: u64, n: usize) -> Self {
        IndexSet((0..n).filter(|&i| mask >> i & 1 == 1).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// All subsets of `{0..n-1}` containing `i`, in increasing mask order.
    pub fn subsets_containing(n: usize, i: usize) -> Vec<IndexSet> {
        (0u64..1 << n)
            .filter(|m| m >> i & 1 == 1)
            .map(|m| IndexSet::from_mask(m, n))
            .collect()
    }

    /// All nonempty subsets of `{0..n-1}`, in increasing mask order.
    pub fn nonempty_subsets(n: usize) -> Vec<IndexSet> {
        (1u64..1 << n).map(|m| IndexSet::from_mask(m, n)).collect()
    }

    /// All subsets of `{0..n-1}` including the empty one.
    pub fn all_subsets(n: usize) -> Vec<IndexSet> {
        (0u64..1 << n).map(|m| IndexSet::from_mask(m, n)).collect()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}

/// A convex polytope with integer vertices, possibly empty.
///
/// Vertices are stored sorted and irredundant, so structural equality is
/// geometric equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePolytope {
    ambient_dim: usize,
    vertices: Vec<IntPoint>,
    dim: i64,
}

/// The face of a polytope where a covector attains its minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceRecord {
    pub face: LatticePolytope,
    pub normal: Covector,
    pub min_value: BigInt,
}

fn affine_rank(points: &[IntPoint]) -> usize {
    let Some(base) = points.first() else {
        return 0;
    };
    let rows: Vec<Row> = points[1..]
        .iter()
        .map(|p| p.sub(base).into_coords())
        .collect();
    intmat::rank(&rows)
}

impl LatticePolytope {
    pub fn empty(ambient_dim: usize) -> Self {
        LatticePolytope {
            ambient_dim,
            vertices: Vec::new(),
            dim: -1,
        }
    }

    pub fn point(p: IntPoint) -> Self {
        LatticePolytope {
            ambient_dim: p.dim(),
            vertices: vec![p],
            dim: 0,
        }
    }

    /// Convex hull of a finite point set in `Z^ambient_dim`.
    pub fn hull(ambient_dim: usize, points: &[IntPoint]) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.dim() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: p.dim(),
            });
        }
        if points.is_empty() {
            return Ok(Self::empty(ambient_dim));
        }
        let mut rows: Vec<Row> = points.iter().map(|p| p.coords().to_vec()).collect();
        rows.sort();
        rows.dedup();
        let (verts, dim) = hull::extreme_points(&rows);
        Ok(LatticePolytope {
            ambient_dim,
            vertices: verts.into_iter().map(IntPoint::new).collect(),
            dim: dim as i64,
        })
    }

    /// Builds a polytope from points already known to be its vertices.
    pub(crate) fn from_vertices_unchecked(ambient_dim: usize, mut vertices: Vec<IntPoint>) -> Self {
        vertices.sort();
        vertices.dedup();
        let dim = if vertices.is_empty() {
            -1
        } else {
            affine_rank(&vertices) as i64
        };
        LatticePolytope {
            ambient_dim,
            vertices,
            dim,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[IntPoint] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Affine dimension, `-1` for the empty polytope.
    pub fn dim(&self) -> i64 {
        self.dim
    }

    fn check_covector(&self, alpha: &Covector) -> Result<()> {
        if alpha.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: alpha.dim(),
            });
        }
        if self.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        Ok(())
    }

    /// `min(α|_P)`.
    pub fn support_min(&self, alpha: &Covector) -> Result<BigInt> {
        self.check_covector(alpha)?;
        Ok(self
            .vertices
            .iter()
            .map(|v| alpha.eval(v))
            .min()
            .expect("nonempty"))
    }

    /// The face `P^α` on which `α` is minimal.
    pub fn face(&self, alpha: &Covector) -> Result<FaceRecord> {
        let min_value = self.support_min(alpha)?;
        let verts = self
            .vertices
            .iter()
            .filter(|v| alpha.eval(v) == min_value)
            .cloned()
            .collect();
        Ok(FaceRecord {
            face: Self::from_vertices_unchecked(self.ambient_dim, verts),
            normal: alpha.clone(),
            min_value,
        })
    }

    pub fn minkowski_sum(&self, other: &LatticePolytope) -> Result<LatticePolytope> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        if self.is_empty() || other.is_empty() {
            return Ok(Self::empty(self.ambient_dim));
        }
        if self.vertices.len() == 1 {
            return Ok(other.translate(&self.vertices[0]));
        }
        if other.vertices.len() == 1 {
            return Ok(self.translate(&other.vertices[0]));
        }
        let mut sums = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                sums.push(a.add(b));
            }
        }
        Self::hull(self.ambient_dim, &sums)
    }

    /// Minkowski sum of a list; the empty list sums to `{0}`.
    pub fn minkowski_sum_all<'a>(
        ambient_dim: usize,
        polytopes: impl IntoIterator<Item = &'a LatticePolytope>,
    ) -> Result<LatticePolytope> {
        let mut acc = Self::point(IntPoint::origin(ambient_dim));
        for p in polytopes {
            acc = acc.minkowski_sum(p)?;
        }
        Ok(acc)
    }

    pub fn translate(&self, v: &IntPoint) -> LatticePolytope {
        LatticePolytope {
            ambient_dim: self.ambient_dim,
            vertices: self.vertices.iter().map(|p| p.add(v)).collect(),
            dim: self.dim,
        }
    }

    /// Dilation by a nonnegative integer.
    pub fn scale(&self, c: &BigInt) -> LatticePolytope {
        assert!(!c.is_negative(), "dilation factor must be nonnegative");
        if c.is_zero() && !self.is_empty() {
            return Self::point(IntPoint::origin(self.ambient_dim));
        }
        LatticePolytope {
            ambient_dim: self.ambient_dim,
            vertices: self.vertices.iter().map(|p| p.scale(c)).collect(),
            dim: self.dim,
        }
    }

    /// `P ∩ R^I`, where `R^I` is the coordinate subspace with `k_i = 0` for
    /// `i ∉ I`. Requires nonnegative vertices, for which the intersection is
    /// the face spanned by the vertices supported on `I`.
    pub fn restrict_to_index_set(&self, index_set: &IndexSet) -> Result<LatticePolytope> {
        if self
            .vertices
            .iter()
            .any(|v| v.coords().iter().any(Signed::is_negative))
        {
            return Err(Error::NegativeCoordinates);
        }
        let verts = self
            .vertices
            .iter()
            .filter(|v| Self::supported_on(v, index_set))
            .cloned()
            .collect();
        Ok(Self::from_vertices_unchecked(self.ambient_dim, verts))
    }

    fn supported_on(v: &IntPoint, index_set: &IndexSet) -> bool {
        v.coords()
            .iter()
            .enumerate()
            .all(|(i, x)| x.is_zero() || index_set.contains(i))
    }

    /// True when every vertex has zero coordinates outside `I`.
    pub fn lies_in(&self, index_set: &IndexSet) -> bool {
        self.vertices
            .iter()
            .all(|v| Self::supported_on(v, index_set))
    }

    /// Primitive inner facet normals with their facets. `P` must be
    /// full-dimensional; the result is sorted by normal.
    pub fn facet_normals(&self) -> Result<Vec<(Covector, FaceRecord)>> {
        if self.dim != self.ambient_dim as i64 || self.ambient_dim == 0 {
            return Err(Error::NotFullDimensional {
                dim: self.dim,
                ambient: self.ambient_dim,
            });
        }
        let rows: Vec<Row> = self.vertices.iter().map(|v| v.coords().to_vec()).collect();
        let hull = FullHull::compute(rows).expect("full-dimensional by construction");
        hull.distinct_facets()
            .into_iter()
            .map(|(normal, _)| {
                let alpha = Covector::new(normal);
                let rec = self.face(&alpha)?;
                Ok((alpha, rec))
            })
            .collect()
    }

    /// Keeps only the coordinates in `I`, giving a polytope in `Z^|I|`.
    pub fn project(&self, index_set: &IndexSet) -> LatticePolytope {
        let d = index_set.len();
        if self.is_empty() {
            return Self::empty(d);
        }
        let pts: Vec<IntPoint> = self
            .vertices
            .iter()
            .map(|v| {
                IntPoint::new(
                    index_set
                        .indices()
                        .iter()
                        .map(|&i| v.coords()[i].clone())
                        .collect(),
                )
            })
            .collect();
        Self::hull(d, &pts).expect("consistent dimensions")
    }

    /// Pads every vertex with zeros up to `new_dim`.
    pub fn lift(&self, new_dim: usize) -> LatticePolytope {
        assert!(new_dim >= self.ambient_dim);
        let pad = new_dim - self.ambient_dim;
        LatticePolytope {
            ambient_dim: new_dim,
            vertices: self
                .vertices
                .iter()
                .map(|v| {
                    let mut c = v.coords().to_vec();
                    c.extend(std::iter::repeat(BigInt::zero()).take(pad));
                    IntPoint::new(c)
                })
                .collect(),
            dim: self.dim,
        }
    }

    /// Applies an integer linear map given by its matrix (rows act on columns).
    pub fn transform(&self, matrix: &[Vec<BigInt>]) -> Result<LatticePolytope> {
        let pts: Vec<IntPoint> = self
            .vertices
            .iter()
            .map(|v| IntPoint::new(matrix.iter().map(|row| intmat::dot(row, v.coords())).collect()))
            .collect();
        Self::hull(matrix.len(), &pts)
    }

    /// Direction vectors `v - v_0` from the first vertex.
    pub(crate) fn directions(&self) -> Vec<IntPoint> {
        match self.vertices.split_first() {
            Some((base, rest)) => rest.iter().map(|v| v.sub(base)).collect(),
            None => Vec::new(),
        }
    }
}

impl fmt::Display for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("conv{}");
        }
        f.write_str("conv{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(n: usize, pts: &[&[i64]]) -> LatticePolytope {
        let pts: Vec<IntPoint> = pts.iter().map(|p| IntPoint::from_i64s(p)).collect();
        LatticePolytope::hull(n, &pts).unwrap()
    }

    fn verts(p: &LatticePolytope) -> Vec<Vec<i64>> {
        p.vertices().iter().map(|v| v.to_i64s().unwrap()).collect()
    }

    #[test]
    fn hull_examples() {
        let p = poly(2, &[&[0, 0], &[1, 0], &[2, 0], &[1, 1]]);
        assert_eq!(verts(&p), vec![vec![0, 0], vec![1, 1], vec![2, 0]]);
        assert_eq!(verts(&poly(2, &[&[5, 7]])), vec![vec![5, 7]]);
        assert!(poly(2, &[]).is_empty());
        let err = LatticePolytope::hull(2, &[IntPoint::from([1, 2, 3])]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn dims() {
        assert_eq!(poly(2, &[&[3, 3]]).dim(), 0);
        assert_eq!(poly(2, &[&[0, 0], &[1, 1]]).dim(), 1);
        assert_eq!(poly(2, &[]).dim(), -1);
        assert_eq!(poly(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]).dim(), 2);
    }

    #[test]
    fn collinear_and_coplanar_inputs_in_higher_dimension() {
        let seg = poly(3, &[&[0, 0, 0], &[1, 1, 1], &[2, 2, 2], &[3, 3, 3]]);
        assert_eq!(verts(&seg), vec![vec![0, 0, 0], vec![3, 3, 3]]);
        let sq = poly(
            4,
            &[&[0, 0, 1, 1], &[2, 0, 1, 1], &[0, 2, 1, 1], &[2, 2, 1, 1], &[1, 1, 1, 1]],
        );
        assert_eq!(sq.dim(), 2);
        assert_eq!(sq.vertices().len(), 4);
    }

    #[test]
    fn support_min_examples() {
        let seg = poly(2, &[&[0, 0], &[1, 1]]);
        assert_eq!(seg.support_min(&[-1, 1].into()).unwrap(), BigInt::zero());
        assert_eq!(
            poly(2, &[&[1, 1]]).support_min(&[1, 1].into()).unwrap(),
            BigInt::from(2)
        );
        let sq = poly(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(sq.support_min(&[1, 0].into()).unwrap(), BigInt::zero());
        assert_eq!(
            poly(2, &[]).support_min(&[1, 0].into()),
            Err(Error::EmptyPolytope)
        );
    }

    #[test]
    fn face_examples() {
        let seg = poly(2, &[&[0, 0], &[1, 1]]);
        let f = seg.face(&[1, 1].into()).unwrap();
        assert_eq!(verts(&f.face), vec![vec![0, 0]]);
        assert_eq!(f.min_value, BigInt::zero());
        assert_eq!(seg.face(&[-1, 1].into()).unwrap().face, seg);
        let tri = poly(2, &[&[0, 0], &[2, 0], &[1, 1]]);
        let f = tri.face(&[0, 1].into()).unwrap();
        assert_eq!(verts(&f.face), vec![vec![0, 0], vec![2, 0]]);
        assert_eq!(f.face.dim(), 1);
    }

    #[test]
    fn minkowski_examples() {
        let a = poly(2, &[&[0, 0], &[1, 0]]);
        let b = poly(2, &[&[0, 0], &[0, 1]]);
        assert_eq!(
            a.minkowski_sum(&b).unwrap(),
            poly(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])
        );
        let p = poly(2, &[&[3, 4]]);
        assert_eq!(a.minkowski_sum(&p).unwrap(), poly(2, &[&[3, 4], &[4, 4]]));
        assert!(a.minkowski_sum(&poly(2, &[])).unwrap().is_empty());
    }

    #[test]
    fn restriction_examples() {
        let d = poly(2, &[&[1, 0], &[0, 1], &[2, 1]]);
        assert_eq!(
            d.restrict_to_index_set(&IndexSet::new(vec![1])).unwrap(),
            poly(2, &[&[0, 1]])
        );
        assert_eq!(
            d.restrict_to_index_set(&IndexSet::new(vec![0])).unwrap(),
            poly(2, &[&[1, 0]])
        );
        let sq = poly(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(
            sq.restrict_to_index_set(&IndexSet::default()).unwrap(),
            poly(2, &[&[0, 0]])
        );
        assert_eq!(sq.restrict_to_index_set(&IndexSet::full(2)).unwrap(), sq);
        assert_eq!(
            poly(2, &[&[-1, 0], &[1, 1]]).restrict_to_index_set(&IndexSet::full(2)),
            Err(Error::NegativeCoordinates)
        );
    }

    #[test]
    fn facet_normal_examples() {
        let sq = poly(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let normals: Vec<Covector> = sq.facet_normals().unwrap().into_iter().map(|x| x.0).collect();
        assert_eq!(
            normals,
            vec![[-1, 0].into(), [0, -1].into(), [0, 1].into(), [1, 0].into()]
        );
        let tri = poly(2, &[&[0, 0], &[1, 0], &[0, 1]]);
        let normals: Vec<Covector> = tri.facet_normals().unwrap().into_iter().map(|x| x.0).collect();
        assert_eq!(normals, vec![[-1, -1].into(), [0, 1].into(), [1, 0].into()]);
        assert!(matches!(
            poly(2, &[&[0, 0], &[1, 1]]).facet_normals(),
            Err(Error::NotFullDimensional { dim: 1, ambient: 2 })
        ));
    }

    #[test]
    fn index_set_display_and_subsets() {
        assert_eq!(IndexSet::new(vec![1, 0]).to_string(), "{1,2}");
        assert_eq!(IndexSet::subsets_containing(3, 2).len(), 4);
        assert_eq!(IndexSet::nonempty_subsets(3).len(), 7);
    }
}
