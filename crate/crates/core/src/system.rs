//! Polynomial input, Newton polytopes and system assembly.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::IntPoint;
use crate::parse::{self, Terms};
use crate::polytope::{IndexSet, LatticePolytope};

/// A polynomial with rational coefficients in `n` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialInput {
    n: usize,
    terms: BTreeMap<IntPoint, BigRational>,
    source_text: Option<String>,
}

impl PolynomialInput {
    /// Validates a term map: nonempty, no zero coefficients, nonnegative
    /// exponent vectors of length `n`.
    pub fn from_terms(n: usize, terms: BTreeMap<IntPoint, BigRational>) -> Result<Self> {
        let terms: BTreeMap<_, _> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if terms.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        for k in terms.keys() {
            if k.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: k.dim(),
                });
            }
            if k.coords().iter().any(Signed::is_negative) {
                return Err(Error::InvalidSystem(format!(
                    "exponent vector {k} has a negative entry"
                )));
            }
        }
        Ok(PolynomialInput {
            n,
            terms,
            source_text: None,
        })
    }

    /// A polynomial given only by its support; every coefficient is 1.
    pub fn from_support(n: usize, support: &[IntPoint]) -> Result<Self> {
        let terms = support
            .iter()
            .map(|k| (k.clone(), BigRational::one()))
            .collect();
        Self::from_terms(n, terms)
    }

    /// Parses an expression over the named variables.
    pub fn parse(text: &str, variables: &[String]) -> Result<Self> {
        let terms: Terms = parse::parse_terms(text, variables)?;
        let mut p = Self::from_terms(variables.len(), terms)?;
        p.source_text = Some(text.to_string());
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<IntPoint, BigRational> {
        &self.terms
    }

    pub fn source_text(&self) -> Option<&str> {
        self.source_text.as_deref()
    }

    pub fn support(&self) -> Vec<IntPoint> {
        self.terms.keys().cloned().collect()
    }

    /// Renders the polynomial so that [`PolynomialInput::parse`] reproduces
    /// the same term map. Terms go from the highest exponent vector down.
    pub fn to_expression(&self, variables: &[String]) -> String {
        let mut out = String::new();
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || k.is_zero() {
                factors.push(abs.to_string());
            }
            for (j, e) in k.coords().iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                if e.is_one() {
                    factors.push(variables[j].clone());
                } else {
                    factors.push(format!("{}^{e}", variables[j]));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// Product of two polynomials in the same variables.
    pub fn product(&self, other: &PolynomialInput) -> Result<PolynomialInput> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Self::from_terms(self.n, parse::mul(&self.terms, &other.terms))
    }

    /// Reorders variables: new variable `j` is old variable `perm[j]`.
    pub fn permute(&self, perm: &[usize]) -> PolynomialInput {
        assert_eq!(perm.len(), self.n);
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| {
                let coords = perm.iter().map(|&p| k.coords()[p].clone()).collect();
                (IntPoint::new(coords), c.clone())
            })
            .collect();
        PolynomialInput {
            n: self.n,
            terms,
            source_text: None,
        }
    }

    /// The same polynomial viewed in `new_n >= n` variables.
    pub fn lift(&self, new_n: usize) -> PolynomialInput {
        assert!(new_n >= self.n);
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mut coords = k.coords().to_vec();
                coords.resize(new_n, BigInt::zero());
                (IntPoint::new(coords), c.clone())
            })
            .collect();
        PolynomialInput {
            n: new_n,
            terms,
            source_text: None,
        }
    }
}

/// Parses `text` over `variables`; see [`PolynomialInput::parse`].
pub fn parse_polynomial(text: &str, variables: &[String]) -> Result<PolynomialInput> {
    PolynomialInput::parse(text, variables)
}

/// Convex hull of the support.
pub fn newton_polytope(p: &PolynomialInput) -> LatticePolytope {
    LatticePolytope::hull(p.n, &p.support()).expect("support vectors share the dimension")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SystemMode {
    /// Slices `z_n = σ` of `{F_1 = ... = F_k = 0}`.
    Deformation,
    /// The function `F_0` on `{F_1 = ... = F_k = 0}`.
    PolynomialOnCi,
}

/// A system `F_1, ..., F_k` in `n` variables, with an optional objective `F_0`.
#[derive(Clone, Debug)]
pub struct SystemSpec {
    n: usize,
    constraints: Vec<PolynomialInput>,
    objective: Option<PolynomialInput>,
    nondegeneracy_acknowledged: bool,
    constraint_polytopes: Vec<LatticePolytope>,
    objective_polytope: Option<LatticePolytope>,
}

impl SystemSpec {
    fn build(
        n: usize,
        constraints: Vec<PolynomialInput>,
        objective: Option<PolynomialInput>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSystem("at least one variable is required".into()));
        }
        if constraints.len() + 1 > n {
            return Err(Error::InvalidSystem(format!(
                "{} constraints in {n} variables; at most {} allowed",
                constraints.len(),
                n - 1
            )));
        }
        for p in constraints.iter().chain(objective.iter()) {
            if p.n != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: p.n,
                });
            }
        }
        let constraint_polytopes = constraints.iter().map(newton_polytope).collect();
        let objective_polytope = objective.as_ref().map(newton_polytope);
        Ok(SystemSpec {
            n,
            constraints,
            objective,
            nondegeneracy_acknowledged: false,
            constraint_polytopes,
            objective_polytope,
        })
    }

    /// A deformation system; the deformation parameter is the last variable.
    pub fn deformation(n: usize, constraints: Vec<PolynomialInput>) -> Result<Self> {
        Self::build(n, constraints, None)
    }

    /// The polynomial `objective` on the complete intersection of `constraints`.
    pub fn polynomial_on_ci(
        n: usize,
        constraints: Vec<PolynomialInput>,
        objective: PolynomialInput,
    ) -> Result<Self> {
        Self::build(n, constraints, Some(objective))
    }

    pub fn with_acknowledgement(mut self, acknowledged: bool) -> Self {
        self.nondegeneracy_acknowledged = acknowledged;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.constraints.len()
    }

    pub fn constraints(&self) -> &[PolynomialInput] {
        &self.constraints
    }

    pub fn objective(&self) -> Option<&PolynomialInput> {
        self.objective.as_ref()
    }

    pub fn nondegeneracy_acknowledged(&self) -> bool {
        self.nondegeneracy_acknowledged
    }

    pub fn mode(&self) -> SystemMode {
        if self.objective.is_some() {
            SystemMode::PolynomialOnCi
        } else {
            SystemMode::Deformation
        }
    }

    pub fn constraint_polytopes(&self) -> &[LatticePolytope] {
        &self.constraint_polytopes
    }

    pub fn objective_polytope(&self) -> Option<&LatticePolytope> {
        self.objective_polytope.as_ref()
    }
}

/// The system seen on the coordinate subspace `R^I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedSystem {
    /// Ambient dimension of the original system.
    pub n: usize,
    pub index_set: IndexSet,
    /// Number of constraints whose polytope meets `R^I`.
    pub k_of_i: usize,
    /// 0-based indices of those constraints, increasing.
    pub indices: Vec<usize>,
    /// `Δ_j ∩ R^I` for each kept `j`, all nonempty, in ambient dimension `n`.
    pub polytopes: Vec<LatticePolytope>,
    /// `Δ_0 ∩ R^I`, possibly empty; `None` without an objective.
    pub objective_restriction: Option<LatticePolytope>,
}

pub fn restrict_system(spec: &SystemSpec, index_set: &IndexSet) -> Result<RestrictedSystem> {
    if let Some(&i) = index_set.indices().iter().find(|&&i| i >= spec.n) {
        return Err(Error::InvalidSystem(format!(
            "index {} outside 1..{}",
            i + 1,
            spec.n
        )));
    }
    let mut indices = Vec::new();
    let mut polytopes = Vec::new();
    for (j, p) in spec.constraint_polytopes.iter().enumerate() {
        let r = p.restrict_to_index_set(index_set)?;
        if !r.is_empty() {
            indices.push(j);
            polytopes.push(r);
        }
    }
    let objective_restriction = spec
        .objective_polytope
        .as_ref()
        .map(|p| p.restrict_to_index_set(index_set))
        .transpose()?;
    Ok(RestrictedSystem {
        n: spec.n,
        index_set: index_set.clone(),
        k_of_i: indices.len(),
        indices,
        polytopes,
        objective_restriction,
    })
}

/// The deformation system `G_i = F_i`, `G_{k+1} = F_0 - z_{n+1}` in `n + 1`
/// variables, whose last Newton polytope is the height-one cone over `Δ_0`.
pub fn cone_system(spec: &SystemSpec) -> Result<SystemSpec> {
    let f0 = spec.objective.as_ref().ok_or(Error::MissingObjective)?;
    let m = spec.n + 1;
    let mut constraints: Vec<PolynomialInput> = spec.constraints.iter().map(|f| f.lift(m)).collect();
    let mut g_terms = f0.lift(m).terms;
    let apex = IntPoint::unit(m, spec.n);
    g_terms.insert(apex.clone(), -BigRational::one());
    let g = PolynomialInput::from_terms(m, g_terms)?;

    let mut cone_pts: Vec<IntPoint> = newton_polytope(f0).lift(m).vertices().to_vec();
    cone_pts.push(apex);
    let cone = LatticePolytope::hull(m, &cone_pts)?;
    if newton_polytope(&g) != cone {
        return Err(Error::Internal(
            "Newton polytope of F0 - z_{n+1} is not the cone over Newton(F0)".into(),
        ));
    }
    constraints.push(g);
    Ok(SystemSpec::deformation(m, constraints)?
        .with_acknowledgement(spec.nondegeneracy_acknowledged))
}

/// Newton polytopes of the generic slices `F_i(z_1, ..., z_{n-1}, σ)`: the
/// projections forgetting the last coordinate.
pub fn fiber_polytopes(spec: &SystemSpec) -> Vec<LatticePolytope> {
    let keep = IndexSet::full(spec.n - 1);
    spec.constraint_polytopes
        .iter()
        .map(|p| p.project(&keep))
        .collect()
}

/// Human-readable summary of a system, one line per polynomial.
pub fn describe(spec: &SystemSpec) -> String {
    let mut out = String::new();
    for (i, p) in spec.constraint_polytopes.iter().enumerate() {
        let _ = writeln!(out, "F{}: dim {} {}", i + 1, p.dim(), p);
    }
    if let Some(p) = &spec.objective_polytope {
        let _ = writeln!(out, "F0: dim {} {}", p.dim(), p);
    }
    out
}
