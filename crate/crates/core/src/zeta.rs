//! Monodromy zeta-functions as products over primitive covectors.
//!
//! Every computation decomposes into coordinate strata `R^I`. Inside a
//! stratum the product over covectors `α` is finite: a factor can only be
//! nontrivial when the face of the total Minkowski sum `P` cut out by `α` has
//! dimension `|I| - 1`. If `dim P = |I|` those covectors are the facet normals
//! of `P`; if `dim P = |I| - 1` they are the two generators of the line
//! orthogonal to `P`; otherwise there are none. The normal cone of a
//! codimension-one face is a ray, so each face yields one primitive `α`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::intmat::{self, Row};
use crate::lattice::{orthogonal_line_generators, Covector, IntPoint, LatticeFrame};
use crate::mixed_volume::MixedVolumeCache;
use crate::polytope::{IndexSet, LatticePolytope};
use crate::qforms::{q_exponent_cached, q_tilde_exponent_cached};
use crate::system::{
    cone_system, fiber_polytopes, restrict_system, RestrictedSystem, SystemMode, SystemSpec,
};

/// A formal product `∏ (1 - t^m)^{e_m}` with `m >= 1` and `e_m != 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ZetaProduct {
    factors: BTreeMap<BigInt, BigInt>,
}

impl ZetaProduct {
    pub fn one() -> Self {
        Self::default()
    }

    /// `(1 - t^m)^e`.
    pub fn factor(m: impl Into<BigInt>, e: impl Into<BigInt>) -> Self {
        let mut z = Self::one();
        z.push(m.into(), e.into());
        z
    }

    pub fn from_factors<M: Into<BigInt>, E: Into<BigInt>>(
        pairs: impl IntoIterator<Item = (M, E)>,
    ) -> Self {
        let mut z = Self::one();
        for (m, e) in pairs {
            z.push(m.into(), e.into());
        }
        z
    }

    /// Multiplies in `(1 - t^m)^e`.
    pub fn push(&mut self, m: BigInt, e: BigInt) {
        assert!(m.is_positive(), "factor (1-t^m) needs m >= 1");
        if e.is_zero() {
            return;
        }
        let entry = self.factors.entry(m.clone()).or_insert_with(BigInt::zero);
        *entry += e;
        if entry.is_zero() {
            self.factors.remove(&m);
        }
    }

    pub fn multiply(&self, other: &ZetaProduct) -> ZetaProduct {
        let mut out = self.clone();
        for (m, e) in &other.factors {
            out.push(m.clone(), e.clone());
        }
        out
    }

    /// `(m, e)` pairs, ascending in `m`.
    pub fn factors(&self) -> &BTreeMap<BigInt, BigInt> {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Degree as a rational function, `Σ m · e`.
    pub fn degree(&self) -> BigInt {
        self.factors.iter().map(|(m, e)| m * e).sum()
    }

    /// Human form such as `(1-t^3)*(1-t)^-1`: positive exponents first, then
    /// negative ones, each group ascending in `m`.
    pub fn pretty(&self) -> String {
        if self.is_one() {
            return "1".into();
        }
        let render = |m: &BigInt, e: &BigInt| {
            let base = if m.is_one() {
                "(1-t)".to_string()
            } else {
                format!("(1-t^{m})")
            };
            if e.is_one() {
                base
            } else {
                format!("{base}^{e}")
            }
        };
        let pos = self.factors.iter().filter(|(_, e)| e.is_positive());
        let neg = self.factors.iter().filter(|(_, e)| e.is_negative());
        pos.chain(neg)
            .map(|(m, e)| render(m, e))
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Coefficient lists (constant term first) of the numerator and
    /// denominator polynomials. For display only.
    pub fn expand(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        let mut num = vec![BigInt::one()];
        let mut den = vec![BigInt::one()];
        for (m, e) in &self.factors {
            let m = usize::try_from(m).expect("factor degree fits in memory");
            let target = if e.is_positive() { &mut num } else { &mut den };
            let times = e.abs();
            let mut i = BigInt::zero();
            while i < times {
                let mut next = vec![BigInt::zero(); target.len() + m];
                for (j, c) in target.iter().enumerate() {
                    next[j] += c;
                    next[j + m] -= c;
                }
                *target = next;
                i += 1;
            }
        }
        (num, den)
    }
}

impl fmt::Display for ZetaProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Origin,
    Infinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scope {
    /// Only the open torus `(C*)^n`.
    Torus,
    /// All of `C^n`, as a product over coordinate strata.
    Affine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TraceKind {
    /// A factor attached to a primitive covector.
    Covector,
    /// The factor `(1-t)^χ` of the zero level `{F_0 = 0}` in a torus stratum.
    ZeroLevel,
}

/// One nontrivial factor of a zeta-function and where it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContributionTrace {
    pub index_set: IndexSet,
    pub kind: TraceKind,
    /// The covector in `Z^n` (zero outside `I`); `None` for zero-level factors.
    pub alpha: Option<Covector>,
    pub m: BigInt,
    pub exponent: BigInt,
    /// Dimensions of the faces entering the exponent (objective first, if any).
    pub face_dims: Vec<i64>,
}

/// The non-degeneracy hypothesis a result depends on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hypothesis {
    SigmaNondegenerate,
    SigmaNondegenerateAtInfinity,
    Nondegenerate,
}

impl Hypothesis {
    pub fn label(self) -> &'static str {
        match self {
            Hypothesis::SigmaNondegenerate => "σ-non-degenerate",
            Hypothesis::SigmaNondegenerateAtInfinity => "σ-non-degenerate at infinity",
            Hypothesis::Nondegenerate => "non-degenerate",
        }
    }

    pub fn for_direction(direction: Direction) -> Self {
        match direction {
            Direction::Origin => Hypothesis::SigmaNondegenerate,
            Direction::Infinity => Hypothesis::SigmaNondegenerateAtInfinity,
        }
    }
}

/// Candidates in `Z^d` for polytopes already projected to `Z^d`.
fn projected_candidates(polys: &[LatticePolytope], d: usize) -> Result<Vec<Row>> {
    let sum = LatticePolytope::minkowski_sum_all(d, polys)?;
    let dim = sum.dim();
    if d > 0 && dim == d as i64 {
        Ok(sum
            .facet_normals()?
            .into_iter()
            .map(|(n, _)| n.comps().to_vec())
            .collect())
    } else if d > 0 && dim == d as i64 - 1 {
        let (b, m) = orthogonal_line_generators(&sum.directions(), d)?;
        let mut v = vec![m.comps().to_vec(), b.comps().to_vec()];
        v.sort();
        Ok(v)
    } else {
        Ok(Vec::new())
    }
}

fn lift_covector(alpha: &[BigInt], index_set: &IndexSet, n: usize) -> Covector {
    let mut c = vec![BigInt::zero(); n];
    for (v, &i) in alpha.iter().zip(index_set.indices()) {
        c[i] = v.clone();
    }
    Covector::new(c)
}

/// The finite set of primitive covectors `α` of `(R^I)*` (written in `Z^n`,
/// zero outside `I`) whose face of `P = Σ polytopes` has dimension `|I| - 1`.
/// The empty list sums to `{0}`.
pub fn candidate_covectors(
    polytopes: &[LatticePolytope],
    index_set: &IndexSet,
    n: usize,
) -> Result<Vec<Covector>> {
    for p in polytopes {
        if p.ambient_dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.ambient_dim(),
            });
        }
        if p.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        if !p.lies_in(index_set) {
            return Err(Error::OutsideIndexSet(index_set.to_string()));
        }
    }
    let projected: Vec<LatticePolytope> = polytopes.iter().map(|p| p.project(index_set)).collect();
    Ok(projected_candidates(&projected, index_set.len())?
        .iter()
        .map(|a| lift_covector(a, index_set, n))
        .collect())
}

/// The saturated lattice `ker α ∩ Z^d` as a frame at the origin.
fn hyperplane_frame(alpha: &[BigInt]) -> LatticeFrame {
    let d = alpha.len();
    let basis = intmat::integer_kernel(&[alpha.to_vec()], d)
        .into_iter()
        .map(IntPoint::new)
        .collect();
    LatticeFrame::trusted(IntPoint::origin(d), basis)
}

/// Evaluation context: a shared mixed-volume cache and an optional thread pool.
pub struct Engine {
    cache: MixedVolumeCache,
    pool: Option<rayon::ThreadPool>,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new()
    }
}

type Traced = (ZetaProduct, Vec<ContributionTrace>);

fn collect_traces(traces: Vec<ContributionTrace>) -> Traced {
    let mut z = ZetaProduct::one();
    for t in &traces {
        z.push(t.m.clone(), t.exponent.clone());
    }
    (z, traces)
}

impl Engine {
    /// A sequential engine.
    pub fn new() -> Self {
        Engine {
            cache: MixedVolumeCache::new(),
            pool: None,
        }
    }

    /// An engine evaluating strata and covectors on `jobs` worker threads.
    /// Results do not depend on `jobs`.
    pub fn with_jobs(jobs: usize) -> Result<Self> {
        if jobs <= 1 {
            return Ok(Self::new());
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
        Ok(Engine {
            cache: MixedVolumeCache::new(),
            pool: Some(pool),
        })
    }

    pub fn cache(&self) -> &MixedVolumeCache {
        &self.cache
    }

    /// Order-preserving map, parallel when a pool is configured.
    fn map<T, R, F>(&self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match &self.pool {
            Some(pool) => pool.install(|| items.into_par_iter().map(f).collect()),
            None => items.into_iter().map(f).collect(),
        }
    }

    fn check_stratum(rs: &RestrictedSystem) -> Result<()> {
        if !rs.index_set.contains(rs.n - 1) {
            return Err(Error::InvalidSystem(format!(
                "stratum {} does not contain the deformation index {}",
                rs.index_set, rs.n
            )));
        }
        Ok(())
    }

    /// The stratum factor for a deformation at the origin or at infinity:
    /// `∏ (1 - t^{±α_n})^{l! Q^l_{k(I)}(faces)}` over candidates with the
    /// matching sign of `α_n`, where `l = |I| - 1`.
    pub fn zeta_stratum(&self, rs: &RestrictedSystem, direction: Direction) -> Result<Traced> {
        Self::check_stratum(rs)?;
        let d = rs.index_set.len();
        let l = d - 1;
        let k = rs.k_of_i;
        // Q^l_k vanishes for k > l, and for k = 0 < l.
        if k > l || (k == 0 && l > 0) {
            return Ok((ZetaProduct::one(), Vec::new()));
        }
        let projected: Vec<LatticePolytope> =
            rs.polytopes.iter().map(|p| p.project(&rs.index_set)).collect();
        let candidates: Vec<Row> = projected_candidates(&projected, d)?
            .into_iter()
            .filter(|a| match direction {
                Direction::Origin => a[l].is_positive(),
                Direction::Infinity => a[l].is_negative(),
            })
            .collect();
        let results = self.map(candidates, |alpha| -> Result<Option<ContributionTrace>> {
            let covector = Covector::new(alpha.clone());
            let faces = projected
                .iter()
                .map(|p| p.face(&covector).map(|r| r.face))
                .collect::<Result<Vec<_>>>()?;
            let refs: Vec<&LatticePolytope> = faces.iter().collect();
            let exponent = q_exponent_cached(&self.cache, l, &refs, &hyperplane_frame(&alpha))?;
            if exponent.is_zero() {
                return Ok(None);
            }
            Ok(Some(ContributionTrace {
                index_set: rs.index_set.clone(),
                kind: TraceKind::Covector,
                m: alpha[l].abs(),
                alpha: Some(lift_covector(&alpha, &rs.index_set, rs.n)),
                exponent,
                face_dims: faces.iter().map(LatticePolytope::dim).collect(),
            }))
        });
        let traces = results.into_iter().collect::<Result<Vec<_>>>()?;
        Ok(collect_traces(traces.into_iter().flatten().collect()))
    }

    /// Zeta-function of the deformation `z_n = σ` of `{F_1 = ... = F_k = 0}`,
    /// on the torus or on all of `C^n`.
    pub fn zeta_deformation(
        &self,
        spec: &SystemSpec,
        direction: Direction,
        scope: Scope,
    ) -> Result<Traced> {
        if spec.mode() != SystemMode::Deformation {
            return Err(Error::InvalidSystem(
                "deformation zeta needs a system without an objective".into(),
            ));
        }
        let n = spec.n();
        let strata = match scope {
            Scope::Torus => vec![IndexSet::full(n)],
            Scope::Affine => IndexSet::subsets_containing(n, n - 1),
        };
        let per = self.map(strata, |i| {
            let rs = restrict_system(spec, &i)?;
            self.zeta_stratum(&rs, direction)
        });
        let mut traces = Vec::new();
        for r in per {
            traces.extend(r?.1);
        }
        Ok(collect_traces(traces))
    }

    /// Stratum factor of `F_0` on the complete intersection: covector factors
    /// `(1 - t^{m(α)})^{l! Q~}` with `m(α) = min(α|Δ_0^I) > 0`, times the
    /// zero-level factor `(1 - t)^{|I|! Q^{|I|}_{k(I)+1}(Δ_0^I, Δ_1^I, ...)}`.
    pub fn zeta_polynomial_stratum(&self, rs: &RestrictedSystem) -> Result<Traced> {
        let Some(delta0) = &rs.objective_restriction else {
            return Err(Error::MissingObjective);
        };
        if delta0.is_empty() {
            return Ok((ZetaProduct::one(), Vec::new()));
        }
        let d = rs.index_set.len();
        let l = d - 1;
        let k = rs.k_of_i;
        let p0 = delta0.project(&rs.index_set);
        let projected: Vec<LatticePolytope> =
            rs.polytopes.iter().map(|p| p.project(&rs.index_set)).collect();
        let mut traces = Vec::new();

        if k <= l {
            let all: Vec<LatticePolytope> = std::iter::once(p0.clone())
                .chain(projected.iter().cloned())
                .collect();
            let candidates: Vec<(Row, BigInt)> = projected_candidates(&all, d)?
                .into_iter()
                .map(|a| {
                    let m = p0.support_min(&Covector::new(a.clone()))?;
                    Ok((a, m))
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .filter(|(_, m)| m.is_positive())
                .collect();
            let results = self.map(candidates, |(alpha, m)| -> Result<Option<ContributionTrace>> {
                let covector = Covector::new(alpha.clone());
                let face0 = p0.face(&covector)?.face;
                let faces = projected
                    .iter()
                    .map(|p| p.face(&covector).map(|r| r.face))
                    .collect::<Result<Vec<_>>>()?;
                let refs: Vec<&LatticePolytope> = faces.iter().collect();
                let exponent = q_tilde_exponent_cached(
                    &self.cache,
                    l,
                    &face0,
                    &refs,
                    &hyperplane_frame(&alpha),
                )?;
                if exponent.is_zero() {
                    return Ok(None);
                }
                Ok(Some(ContributionTrace {
                    index_set: rs.index_set.clone(),
                    kind: TraceKind::Covector,
                    alpha: Some(lift_covector(&alpha, &rs.index_set, rs.n)),
                    m,
                    exponent,
                    face_dims: std::iter::once(&face0)
                        .chain(&faces)
                        .map(LatticePolytope::dim)
                        .collect(),
                }))
            });
            for r in results {
                traces.extend(r?);
            }
        }

        if k < d {
            let refs: Vec<&LatticePolytope> = std::iter::once(&p0).chain(&projected).collect();
            let exponent =
                q_exponent_cached(&self.cache, d, &refs, &LatticeFrame::standard(d))?;
            if !exponent.is_zero() {
                traces.push(ContributionTrace {
                    index_set: rs.index_set.clone(),
                    kind: TraceKind::ZeroLevel,
                    alpha: None,
                    m: BigInt::one(),
                    exponent,
                    face_dims: refs.iter().map(|p| p.dim()).collect(),
                });
            }
        }
        Ok(collect_traces(traces))
    }

    /// Zeta-function of `F_0` restricted to `{F_1 = ... = F_k = 0}`.
    pub fn zeta_polynomial(&self, spec: &SystemSpec, scope: Scope) -> Result<Traced> {
        if spec.mode() != SystemMode::PolynomialOnCi {
            return Err(Error::MissingObjective);
        }
        let n = spec.n();
        let strata = match scope {
            Scope::Torus => vec![IndexSet::full(n)],
            Scope::Affine => IndexSet::nonempty_subsets(n),
        };
        let per = self.map(strata, |i| {
            let rs = restrict_system(spec, &i)?;
            self.zeta_polynomial_stratum(&rs)
        });
        let mut traces = Vec::new();
        for r in per {
            traces.extend(r?.1);
        }
        Ok(collect_traces(traces))
    }

    /// The torus zeta-function of `F_0` computed instead as the deformation
    /// zeta-function of the cone system `F_1, ..., F_k, F_0 - z_{n+1}`.
    pub fn zeta_polynomial_via_cone(&self, spec: &SystemSpec) -> Result<ZetaProduct> {
        let cone = cone_system(spec)?;
        Ok(self
            .zeta_deformation(&cone, Direction::Origin, Scope::Torus)?
            .0)
    }

    /// `n! · Q^n_k(polytopes)`, the Euler characteristic of a generic complete
    /// intersection in `(C*)^n` with these Newton polytopes.
    pub fn euler_ci_torus(&self, polytopes: &[LatticePolytope], n: usize) -> Result<BigInt> {
        if polytopes.iter().any(LatticePolytope::is_empty) {
            return Ok(BigInt::zero());
        }
        if let Some(p) = polytopes.iter().find(|p| p.ambient_dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.ambient_dim(),
            });
        }
        let refs: Vec<&LatticePolytope> = polytopes.iter().collect();
        q_exponent_cached(&self.cache, n, &refs, &LatticeFrame::standard(n))
    }

    /// Euler characteristic of the generic fiber `{z_n = σ}` of a deformation
    /// system, summed over all coordinate strata of `C^{n-1}` (the empty
    /// stratum is the origin).
    pub fn fiber_euler_characteristic(&self, spec: &SystemSpec) -> Result<BigInt> {
        if spec.mode() != SystemMode::Deformation {
            return Err(Error::InvalidSystem(
                "fiber Euler characteristic needs a deformation system".into(),
            ));
        }
        let fibers = fiber_polytopes(spec);
        let strata = IndexSet::all_subsets(spec.n() - 1);
        let per = self.map(strata, |j| -> Result<BigInt> {
            let mut restricted = Vec::new();
            for p in &fibers {
                let r = p.restrict_to_index_set(&j)?;
                if !r.is_empty() {
                    restricted.push(r.project(&j));
                }
            }
            self.euler_ci_torus(&restricted, j.len())
        });
        per.into_iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::parse_polynomial;

    fn vars(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("z{i}")).collect()
    }

    fn poly(n: usize, pts: &[&[i64]]) -> LatticePolytope {
        let pts: Vec<IntPoint> = pts.iter().map(|p| IntPoint::from_i64s(p)).collect();
        LatticePolytope::hull(n, &pts).unwrap()
    }

    fn deformation(n: usize, fs: &[&str]) -> SystemSpec {
        let fs = fs
            .iter()
            .map(|f| parse_polynomial(f, &vars(n)).unwrap())
            .collect();
        SystemSpec::deformation(n, fs).unwrap()
    }

    fn polynomial(n: usize, fs: &[&str], f0: &str) -> SystemSpec {
        let fs = fs
            .iter()
            .map(|f| parse_polynomial(f, &vars(n)).unwrap())
            .collect();
        SystemSpec::polynomial_on_ci(n, fs, parse_polynomial(f0, &vars(n)).unwrap()).unwrap()
    }

    #[test]
    fn product_formatting_and_degree() {
        let z = ZetaProduct::from_factors([(1, 2)]);
        assert_eq!(z.pretty(), "(1-t)^2");
        assert_eq!(z.degree(), BigInt::from(2));
        assert_eq!(ZetaProduct::one().pretty(), "1");
        assert_eq!(ZetaProduct::one().degree(), BigInt::zero());
        let z = ZetaProduct::from_factors([(3, 1), (1, -1)]);
        assert_eq!(z.pretty(), "(1-t^3)*(1-t)^-1");
        assert_eq!(z.degree(), BigInt::from(2));
        assert!(z.multiply(&ZetaProduct::from_factors([(3, -1), (1, 1)])).is_one());
    }

    #[test]
    fn expansion() {
        let z = ZetaProduct::from_factors([(2, 1), (1, -2)]);
        let (num, den) = z.expand();
        let ints = |v: Vec<BigInt>| v.into_iter().map(|x| i64::try_from(x).unwrap()).collect::<Vec<_>>();
        assert_eq!(ints(num), vec![1, 0, -1]);
        assert_eq!(ints(den), vec![1, -2, 1]);
    }

    #[test]
    fn candidate_examples() {
        let seg = poly(2, &[&[0, 0], &[1, 1]]);
        let c = candidate_covectors(&[seg], &IndexSet::full(2), 2).unwrap();
        assert_eq!(c, vec![[-1, 1].into(), [1, -1].into()]);

        let tri = poly(2, &[&[1, 0], &[0, 1], &[2, 1]]);
        let c = candidate_covectors(&[tri], &IndexSet::full(2), 2).unwrap();
        assert_eq!(c, vec![[-1, 1].into(), [0, -1].into(), [1, 1].into()]);

        let c = candidate_covectors(&[], &IndexSet::new(vec![1]), 2).unwrap();
        assert_eq!(c, vec![[0, -1].into(), [0, 1].into()]);

        let pt = poly(3, &[&[1, 1, 1]]);
        assert!(candidate_covectors(std::slice::from_ref(&pt), &IndexSet::full(3), 3)
            .unwrap()
            .is_empty());
        assert!(matches!(
            candidate_covectors(&[pt], &IndexSet::new(vec![0, 2]), 3),
            Err(Error::OutsideIndexSet(_))
        ));
    }

    #[test]
    fn monomial_strata() {
        let engine = Engine::new();
        let spec = deformation(2, &[]);
        let rs = restrict_system(&spec, &IndexSet::new(vec![1])).unwrap();
        assert_eq!(
            engine.zeta_stratum(&rs, Direction::Origin).unwrap().0,
            ZetaProduct::factor(1, 1)
        );
        assert_eq!(
            engine.zeta_stratum(&rs, Direction::Infinity).unwrap().0,
            ZetaProduct::factor(1, 1)
        );
        let spec = deformation(2, &["z2 + 1"]);
        let rs = restrict_system(&spec, &IndexSet::new(vec![1])).unwrap();
        assert!(engine.zeta_stratum(&rs, Direction::Origin).unwrap().0.is_one());
        let rs = restrict_system(&spec, &IndexSet::new(vec![0])).unwrap();
        assert!(matches!(
            engine.zeta_stratum(&rs, Direction::Origin),
            Err(Error::InvalidSystem(_))
        ));
    }

    #[test]
    fn worked_example() {
        let engine = Engine::new();
        let spec = deformation(2, &["z1 + z2*(1+z1^2)"]);
        for scope in [Scope::Torus, Scope::Affine] {
            let (z, traces) = engine
                .zeta_deformation(&spec, Direction::Origin, scope)
                .unwrap();
            assert_eq!(z, ZetaProduct::factor(1, 2), "{scope:?}");
            assert!(!traces.is_empty());
        }
        let (z, _) = engine
            .zeta_deformation(&spec, Direction::Infinity, Scope::Torus)
            .unwrap();
        assert_eq!(z, ZetaProduct::factor(1, 2));
    }

    #[test]
    fn infinity_of_hyperbola() {
        let engine = Engine::new();
        let spec = deformation(2, &["z1*z2 - 1"]);
        let (z, traces) = engine
            .zeta_deformation(&spec, Direction::Infinity, Scope::Torus)
            .unwrap();
        assert_eq!(z, ZetaProduct::factor(1, 1));
        assert_eq!(traces[0].alpha, Some([1, -1].into()));
    }

    #[test]
    fn single_variable_deformation() {
        let engine = Engine::new();
        let spec = deformation(1, &[]);
        let (z, _) = engine
            .zeta_deformation(&spec, Direction::Origin, Scope::Affine)
            .unwrap();
        assert_eq!(z, ZetaProduct::factor(1, 1));
    }

    #[test]
    fn powers_of_one_variable() {
        let engine = Engine::new();
        for a in 1..=5 {
            let spec = polynomial(1, &[], &format!("z1^{a}"));
            let (z, _) = engine.zeta_polynomial(&spec, Scope::Affine).unwrap();
            assert_eq!(z, ZetaProduct::factor(a, 1), "a={a}");
            assert_eq!(engine.zeta_polynomial_via_cone(&spec).unwrap(), z);
        }
    }

    #[test]
    fn product_of_coordinates_has_trivial_zeta() {
        let engine = Engine::new();
        let spec = polynomial(2, &[], "z1*z2");
        assert!(engine.zeta_polynomial(&spec, Scope::Affine).unwrap().0.is_one());
        assert!(engine.zeta_polynomial(&spec, Scope::Torus).unwrap().0.is_one());
        assert!(engine.zeta_polynomial_via_cone(&spec).unwrap().is_one());
    }

    #[test]
    fn constant_term_gives_no_covector_factor() {
        let engine = Engine::new();
        let spec = polynomial(2, &[], "1 + z1 + z2^2");
        let (_, traces) = engine.zeta_polynomial(&spec, Scope::Affine).unwrap();
        assert!(traces.iter().all(|t| t.kind == TraceKind::ZeroLevel));
    }

    /// `z + z^2` has two roots of `F_0 = σ` near `σ = 0`: one tends to 0, the
    /// other stays near `-1` and is fixed by monodromy, so `ζ = (1-t)^2`.
    /// The covector factors alone only see the first root.
    #[test]
    fn zero_level_factor_counts_fixed_roots() {
        let engine = Engine::new();
        let spec = polynomial(1, &[], "z1 + z1^2");
        let (z, traces) = engine.zeta_polynomial(&spec, Scope::Torus).unwrap();
        assert_eq!(z, ZetaProduct::factor(1, 2));
        let covector_only = collect_traces(
            traces
                .into_iter()
                .filter(|t| t.kind == TraceKind::Covector)
                .collect(),
        )
        .0;
        assert_eq!(covector_only, ZetaProduct::factor(1, 1));
        assert_eq!(engine.zeta_polynomial_via_cone(&spec).unwrap(), z);
    }

    #[test]
    fn euler_examples() {
        let engine = Engine::new();
        let tri = poly(2, &[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(engine.euler_ci_torus(&[tri], 2).unwrap(), BigInt::from(-1));
        assert_eq!(engine.euler_ci_torus(&[], 2).unwrap(), BigInt::zero());
        assert_eq!(engine.euler_ci_torus(&[], 0).unwrap(), BigInt::one());
        let axes: Vec<LatticePolytope> = (0..3)
            .map(|i| {
                LatticePolytope::hull(3, &[IntPoint::origin(3), IntPoint::unit(3, i)]).unwrap()
            })
            .collect();
        assert_eq!(engine.euler_ci_torus(&axes, 3).unwrap(), BigInt::one());
        assert_eq!(
            engine
                .euler_ci_torus(&[LatticePolytope::empty(2)], 2)
                .unwrap(),
            BigInt::zero()
        );
    }

    #[test]
    fn degree_matches_fiber_euler_characteristic() {
        let engine = Engine::new();
        for fs in [
            vec!["z1 + z2*(1+z1^2)"],
            vec![],
            vec!["z1*z2 - 1"],
            vec!["z1^2 + z2^3 + z1*z2"],
        ] {
            let spec = deformation(2, &fs);
            let chi = engine.fiber_euler_characteristic(&spec).unwrap();
            for dir in [Direction::Origin, Direction::Infinity] {
                let (z, _) = engine.zeta_deformation(&spec, dir, Scope::Affine).unwrap();
                assert_eq!(z.degree(), chi, "{fs:?} {dir:?}");
            }
        }
    }

    #[test]
    fn parallel_engine_matches_sequential() {
        let spec = deformation(3, &["z1 + z2^2*z3 + z3^3 + z1*z2*z3"]);
        let a = Engine::new()
            .zeta_deformation(&spec, Direction::Origin, Scope::Affine)
            .unwrap();
        let b = Engine::with_jobs(4)
            .unwrap()
            .zeta_deformation(&spec, Direction::Origin, Scope::Affine)
            .unwrap();
        assert_eq!(a, b);
    }
}
