//! Exact convex hulls of full-dimensional integer point sets.
//!
//! The boundary is kept as a simplicial complex (coplanar pieces allowed):
//! every facet is a `d`-subset of the input with a primitive inner normal.
//! Points are inserted quickhull-style, each outside point owned by one facet
//! it lies strictly beyond. Distinct supporting hyperplanes and extreme points
//! are recovered afterwards.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::lattice::intmat::{self, Row};

#[derive(Clone, Debug)]
pub(crate) struct SimplexFacet {
    /// Sorted point indices.
    pub verts: Vec<usize>,
    /// Primitive inner normal: `normal·x >= offset` on the hull.
    pub normal: Row,
    pub offset: BigInt,
}

#[derive(Clone, Debug)]
pub(crate) struct FullHull {
    pub dim: usize,
    pub points: Vec<Row>,
    pub facets: Vec<SimplexFacet>,
}

struct WorkFacet {
    facet: SimplexFacet,
    /// `neighbors[i]` shares every vertex except `verts[i]`.
    neighbors: Vec<usize>,
    outside: Vec<usize>,
    alive: bool,
}

/// Normal of the hyperplane through `d` affinely independent points of `Z^d`
/// (generalized cross product of the edge vectors), made primitive.
fn hyperplane_normal(pts: &[&Row]) -> Row {
    let d = pts.len();
    let edges: Vec<Row> = pts[1..].iter().map(|p| intmat::sub(p, pts[0])).collect();
    let mut normal = Vec::with_capacity(d);
    for j in 0..d {
        let minor: Vec<Row> = edges
            .iter()
            .map(|e| {
                e.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let det = intmat::determinant(&minor);
        normal.push(if j % 2 == 0 { det } else { -det });
    }
    intmat::make_primitive(normal)
}

/// Greedy affine echelon of a point set: indices of affinely independent
/// points (the lexicographically smallest first) and, for each chosen edge
/// vector, a pivot column. Projection onto the pivot columns is injective on
/// the affine hull.
pub(crate) fn affine_echelon(points: &[Row]) -> (Vec<usize>, Vec<usize>) {
    let Some(start) = (0..points.len()).min_by(|&a, &b| points[a].cmp(&points[b])) else {
        return (Vec::new(), Vec::new());
    };
    let d = points[start].len();
    let mut chosen = vec![start];
    let mut echelon: Vec<(usize, Row)> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if echelon.len() == d {
            break;
        }
        let mut v = intmat::sub(p, &points[start]);
        for (pc, row) in &echelon {
            if v[*pc].is_zero() {
                continue;
            }
            let f = v[*pc].clone();
            v = v
                .iter()
                .zip(row)
                .map(|(x, y)| &row[*pc] * x - &f * y)
                .collect();
            v = intmat::make_primitive(v);
        }
        if let Some(pc) = v.iter().position(|x| !x.is_zero()) {
            echelon.push((pc, v));
            chosen.push(i);
        }
    }
    let mut pivots: Vec<usize> = echelon.into_iter().map(|(pc, _)| pc).collect();
    pivots.sort_unstable();
    (chosen, pivots)
}

fn project(points: &[Row], cols: &[usize]) -> Vec<Row> {
    points
        .iter()
        .map(|p| cols.iter().map(|&c| p[c].clone()).collect())
        .collect()
}

/// Extreme points of a nonempty point set in any dimension, sorted and
/// deduplicated, together with the affine dimension.
pub(crate) fn extreme_points(points: &[Row]) -> (Vec<Row>, usize) {
    let (chosen, pivots) = affine_echelon(points);
    let r = pivots.len();
    let mut out: Vec<Row> = match r {
        0 => vec![points[chosen[0]].clone()],
        1 => {
            let c = pivots[0];
            let lo = points.iter().min_by(|a, b| a[c].cmp(&b[c])).expect("nonempty");
            let hi = points.iter().max_by(|a, b| a[c].cmp(&b[c])).expect("nonempty");
            vec![lo.clone(), hi.clone()]
        }
        _ => {
            let hull = FullHull::compute(project(points, &pivots)).expect("full rank projection");
            hull.vertex_indices()
                .into_iter()
                .map(|i| points[i].clone())
                .collect()
        }
    };
    out.sort();
    out.dedup();
    (out, r)
}

/// `d! · Vol_d` of the hull of points in `Z^d`; zero when not full-dimensional
/// and one in dimension zero.
pub(crate) fn normalized_volume(points: &[Row]) -> BigInt {
    let Some(d) = points.first().map(Vec::len) else {
        return BigInt::zero();
    };
    if d == 0 {
        return BigInt::from(1);
    }
    let (_, pivots) = affine_echelon(points);
    if pivots.len() < d {
        return BigInt::zero();
    }
    if d == 1 {
        let lo = points.iter().map(|p| &p[0]).min().expect("nonempty");
        let hi = points.iter().map(|p| &p[0]).max().expect("nonempty");
        return hi - lo;
    }
    FullHull::compute(points.to_vec())
        .expect("full-dimensional")
        .normalized_volume()
}

impl FullHull {
    /// Hull of `points` in `Z^d`, `d >= 1`. Returns `None` when the points do
    /// not affinely span `R^d`. Duplicate points are tolerated.
    pub fn compute(points: Vec<Row>) -> Option<FullHull> {
        let d = points.first()?.len();
        if d == 0 {
            return None;
        }
        let (simplex, pivots) = affine_echelon(&points);
        if pivots.len() < d {
            return None;
        }
        if d == 1 {
            return Some(Self::segment(points));
        }

        // Scaled interior reference point: sum of the simplex vertices.
        let scale = BigInt::from(d + 1);
        let mut center = vec![BigInt::zero(); d];
        for &i in &simplex {
            center = intmat::add(&center, &points[i]);
        }

        let make_facet = |verts: Vec<usize>| -> SimplexFacet {
            let refs: Vec<&Row> = verts.iter().map(|&i| &points[i]).collect();
            let mut normal = hyperplane_normal(&refs);
            let mut offset = intmat::dot(&normal, &points[verts[0]]);
            if intmat::dot(&normal, &center) < &offset * &scale {
                normal = normal.into_iter().map(|x| -x).collect();
                offset = -offset;
            }
            SimplexFacet {
                verts,
                normal,
                offset,
            }
        };

        let mut work: Vec<WorkFacet> = Vec::new();
        // Facet j omits simplex[j]; it neighbors facet i across the ridge missing simplex[i].
        for j in 0..=d {
            let mut verts: Vec<usize> = simplex
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, &v)| v)
                .collect();
            verts.sort_unstable();
            let neighbors = verts
                .iter()
                .map(|v| simplex.iter().position(|s| s == v).expect("simplex vertex"))
                .collect();
            work.push(WorkFacet {
                facet: make_facet(verts),
                neighbors,
                outside: Vec::new(),
                alive: true,
            });
        }

        let beyond = |f: &SimplexFacet, p: &Row| intmat::dot(&f.normal, p) < f.offset;

        for (i, p) in points.iter().enumerate() {
            if simplex.contains(&i) {
                continue;
            }
            if let Some(f) = work.iter_mut().find(|f| beyond(&f.facet, p)) {
                f.outside.push(i);
            }
        }

        let mut pending: Vec<usize> = (0..work.len())
            .filter(|&f| !work[f].outside.is_empty())
            .collect();

        while let Some(start) = pending.pop() {
            if !work[start].alive || work[start].outside.is_empty() {
                continue;
            }
            // Farthest outside point of this facet (largest violation).
            let apex = {
                let f = &work[start].facet;
                *work[start]
                    .outside
                    .iter()
                    .max_by_key(|&&q| &f.offset - intmat::dot(&f.normal, &points[q]))
                    .expect("nonempty outside set")
            };
            let p = &points[apex];

            // Visible region: connected set of facets strictly below p.
            let mut visible = vec![start];
            let mut is_visible: HashMap<usize, bool> = HashMap::from([(start, true)]);
            let mut queue = VecDeque::from([start]);
            while let Some(f) = queue.pop_front() {
                for &nb in &work[f].neighbors {
                    if is_visible.contains_key(&nb) {
                        continue;
                    }
                    let vis = beyond(&work[nb].facet, p);
                    is_visible.insert(nb, vis);
                    if vis {
                        visible.push(nb);
                        queue.push_back(nb);
                    }
                }
            }

            // Horizon ridges become new facets coned from p.
            let mut new_ids = Vec::new();
            let mut open_ridges: HashMap<Vec<usize>, (usize, usize)> = HashMap::new();
            for &v in &visible {
                for idx in 0..d {
                    let nb = work[v].neighbors[idx];
                    if is_visible[&nb] {
                        continue;
                    }
                    let mut verts: Vec<usize> = work[v]
                        .facet
                        .verts
                        .iter()
                        .enumerate()
                        .filter(|&(k, _)| k != idx)
                        .map(|(_, &x)| x)
                        .collect();
                    verts.push(apex);
                    verts.sort_unstable();
                    let id = work.len();
                    let mut neighbors = vec![usize::MAX; d];
                    let apex_pos = verts.iter().position(|&x| x == apex).expect("apex");
                    neighbors[apex_pos] = nb;
                    let back = work[nb]
                        .neighbors
                        .iter()
                        .position(|&x| x == v)
                        .expect("adjacency is symmetric");
                    work[nb].neighbors[back] = id;
                    for (k, _) in verts.iter().enumerate() {
                        if k == apex_pos {
                            continue;
                        }
                        let ridge: Vec<usize> = verts
                            .iter()
                            .enumerate()
                            .filter(|&(j, _)| j != k)
                            .map(|(_, &x)| x)
                            .collect();
                        if let Some((other, other_k)) = open_ridges.remove(&ridge) {
                            neighbors[k] = other;
                            work[other].neighbors[other_k] = id;
                        } else {
                            open_ridges.insert(ridge, (id, k));
                        }
                    }
                    work.push(WorkFacet {
                        facet: make_facet(verts),
                        neighbors,
                        outside: Vec::new(),
                        alive: true,
                    });
                    new_ids.push(id);
                }
            }
            debug_assert!(open_ridges.is_empty(), "horizon must close up");

            let mut orphans = Vec::new();
            for &v in &visible {
                work[v].alive = false;
                orphans.append(&mut work[v].outside);
            }
            for q in orphans {
                if q == apex {
                    continue;
                }
                if let Some(&f) = new_ids
                    .iter()
                    .find(|&&f| beyond(&work[f].facet, &points[q]))
                {
                    work[f].outside.push(q);
                }
            }
            pending.extend(
                new_ids
                    .iter()
                    .copied()
                    .filter(|&f| !work[f].outside.is_empty()),
            );
        }

        let facets = work
            .into_iter()
            .filter(|w| w.alive)
            .map(|w| w.facet)
            .collect();
        Some(FullHull {
            dim: d,
            points,
            facets,
        })
    }

    fn segment(points: Vec<Row>) -> FullHull {
        let lo = (0..points.len())
            .min_by(|&a, &b| points[a].cmp(&points[b]))
            .expect("nonempty");
        let hi = (0..points.len())
            .max_by(|&a, &b| points[a].cmp(&points[b]))
            .expect("nonempty");
        let one = BigInt::from(1);
        let facets = vec![
            SimplexFacet {
                verts: vec![lo],
                normal: vec![one.clone()],
                offset: points[lo][0].clone(),
            },
            SimplexFacet {
                verts: vec![hi],
                normal: vec![-one],
                offset: -points[hi][0].clone(),
            },
        ];
        FullHull {
            dim: 1,
            points,
            facets,
        }
    }

    /// Distinct supporting hyperplanes `(normal, offset)`, sorted.
    pub fn distinct_facets(&self) -> Vec<(Row, BigInt)> {
        let mut set = BTreeMap::new();
        for f in &self.facets {
            set.entry(f.normal.clone()).or_insert_with(|| f.offset.clone());
        }
        set.into_iter().collect()
    }

    /// Indices of the extreme points, sorted and deduplicated by coordinates.
    pub fn vertex_indices(&self) -> Vec<usize> {
        let planes = self.distinct_facets();
        let mut candidates: Vec<usize> = self
            .facets
            .iter()
            .flat_map(|f| f.verts.iter().copied())
            .collect();
        candidates.sort_unstable();
        candidates.dedup();
        let mut out: BTreeMap<&Row, usize> = BTreeMap::new();
        for c in candidates {
            let p = &self.points[c];
            let active: Vec<Row> = planes
                .iter()
                .filter(|(n, o)| intmat::dot(n, p) == *o)
                .map(|(n, _)| n.clone())
                .collect();
            if intmat::rank(&active) == self.dim {
                out.entry(p).or_insert(c);
            }
        }
        out.into_values().collect()
    }

    /// `d! · Vol_d` of the hull, an integer: cone from a boundary point over
    /// the simplicial facets.
    pub fn normalized_volume(&self) -> BigInt {
        let base = &self.points[self.facets[0].verts[0]];
        let mut total = BigInt::zero();
        for f in &self.facets {
            let rows: Vec<Row> = f
                .verts
                .iter()
                .map(|&v| intmat::sub(&self.points[v], base))
                .collect();
            total += intmat::determinant(&rows).abs();
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(v: &[&[i64]]) -> Vec<Row> {
        v.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn square_with_edge_and_interior_points() {
        let pts = rows(&[
            &[0, 0],
            &[1, 0],
            &[2, 0],
            &[2, 2],
            &[0, 2],
            &[1, 1],
            &[0, 1],
        ]);
        let h = FullHull::compute(pts.clone()).unwrap();
        let verts: Vec<&Row> = h.vertex_indices().iter().map(|&i| &pts[i]).collect();
        assert_eq!(verts, vec![&pts[0], &pts[4], &pts[2], &pts[3]]);
        assert_eq!(h.normalized_volume(), BigInt::from(8));
        assert_eq!(h.distinct_facets().len(), 4);
    }

    #[test]
    fn cube_volume_and_facets() {
        let mut pts = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    pts.push(vec![BigInt::from(x), BigInt::from(y), BigInt::from(z)]);
                }
            }
        }
        let h = FullHull::compute(pts).unwrap();
        assert_eq!(h.vertex_indices().len(), 8);
        assert_eq!(h.distinct_facets().len(), 6);
        // 3! * 8
        assert_eq!(h.normalized_volume(), BigInt::from(48));
    }

    #[test]
    fn degenerate_input_is_rejected() {
        assert!(FullHull::compute(rows(&[&[0, 0], &[1, 1], &[2, 2]])).is_none());
        assert!(FullHull::compute(rows(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]])).is_none());
    }

    #[test]
    fn all_points_satisfy_every_facet() {
        let pts = rows(&[
            &[0, 0, 0, 0],
            &[3, 1, 0, 2],
            &[1, 4, 1, 0],
            &[0, 2, 3, 1],
            &[2, 2, 2, 2],
            &[1, 0, 1, 3],
            &[4, 0, 2, 1],
            &[1, 1, 1, 1],
            &[0, 3, 0, 3],
        ]);
        let h = FullHull::compute(pts.clone()).unwrap();
        for (n, o) in h.distinct_facets() {
            for p in &pts {
                assert!(intmat::dot(&n, p) >= o);
            }
        }
    }
}
