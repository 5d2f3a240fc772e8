//! Job and result documents for the `newton-zeta` command-line tool.
//!
//! A [`JobDocument`] is read from JSON, [`run`] dispatches it to the
//! library, and the returned [`ResultDocument`] serializes back to JSON.
//! Integers are written as JSON numbers when they fit in `i64` and as
//! decimal strings otherwise.

use clap::ValueEnum;
use newton_zeta::{
    newton_polytope, parse_polynomial, ContributionTrace, Direction, Engine, Hypothesis,
    IntPoint, LatticeFrame, LatticePolytope, PolynomialInput, Scope, SystemSpec, TraceKind,
    ZetaProduct,
};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    /// Zeta-function at the origin of the deformation by the last variable.
    DeformOrigin,
    /// Zeta-function at infinity of the deformation by the last variable.
    DeformInfinity,
    /// Zeta-function of the objective on the complete intersection.
    Polyzeta,
    /// Euler characteristic of the complete intersection in the torus.
    Euler,
    /// Normalized mixed volume of exactly `n` polytopes.
    Mixedvol,
    /// Newton polytopes of the input.
    Info,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::DeformOrigin => "deform-origin",
            Task::DeformInfinity => "deform-infinity",
            Task::Polyzeta => "polyzeta",
            Task::Euler => "euler",
            Task::Mixedvol => "mixedvol",
            Task::Info => "info",
        }
    }

    fn direction(self) -> Option<Direction> {
        match self {
            Task::DeformOrigin => Some(Direction::Origin),
            Task::DeformInfinity => Some(Direction::Infinity),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ScopeArg {
    Torus,
    #[default]
    Affine,
}

impl From<ScopeArg> for Scope {
    fn from(s: ScopeArg) -> Scope {
        match s {
            ScopeArg::Torus => Scope::Torus,
            ScopeArg::Affine => Scope::Affine,
        }
    }
}

/// A polynomial given as an expression or as a list of exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged, expecting = "expected a polynomial string or a list of exponent vectors")]
pub enum PolySource {
    Text(String),
    Support(Vec<Vec<i64>>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobOptions {
    #[serde(default)]
    pub trace: bool,
    #[serde(default)]
    pub deform_var: Option<String>,
    #[serde(default)]
    pub assume_nondegenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobDocument {
    pub n: usize,
    /// Variable names; `z1, ..., zn` when absent.
    #[serde(default)]
    pub variables: Option<Vec<String>>,
    #[serde(default)]
    pub constraints: Vec<PolySource>,
    #[serde(default)]
    pub objective: Option<PolySource>,
    #[serde(default)]
    pub task: Option<Task>,
    #[serde(default)]
    pub scope: Option<ScopeArg>,
    #[serde(default)]
    pub options: JobOptions,
}

/// Command-line settings layered over the document.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub task: Option<Task>,
    pub scope: Option<ScopeArg>,
    pub trace: bool,
    pub jobs: Option<usize>,
    pub deform_var: Option<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn input(context: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{context}: {e}"))
}

fn internal(e: newton_zeta::Error) -> CliError {
    CliError::Internal(e.to_string())
}

/// An integer serialized as a JSON number when it fits in `i64`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Num(pub BigInt);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl From<&BigInt> for Num {
    fn from(v: &BigInt) -> Self {
        Num(v.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorEntry {
    pub m: Num,
    pub exponent: Num,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    /// Names of the variables of the coordinate stratum.
    pub index_set: Vec<String>,
    /// `"covector"` or `"zero-level"`.
    pub kind: &'static str,
    /// In the input's variable order; `null` for zero-level factors.
    pub alpha: Option<Vec<Num>>,
    pub m: Num,
    pub exponent: Num,
    pub face_dims: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolytopeEntry {
    pub name: String,
    pub dim: i64,
    pub vertices: Vec<Vec<Num>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResultDocument {
    pub task: Task,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scope: Option<ScopeArg>,
    pub n: usize,
    pub variables: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deformation_variable: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<FactorEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pretty: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Num>,
    pub assumptions: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assumptions_unacknowledged: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub traces: Option<Vec<TraceEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polytopes: Option<Vec<PolytopeEntry>>,
}

impl ResultDocument {
    /// One-line human summary: the product, the value, or the polytopes.
    pub fn summary(&self) -> String {
        if let Some(p) = &self.pretty {
            return p.clone();
        }
        if let Some(v) = &self.value {
            return v.0.to_string();
        }
        self.polytopes
            .iter()
            .flatten()
            .map(|p| {
                let verts: Vec<String> = p
                    .vertices
                    .iter()
                    .map(|v| {
                        let c: Vec<String> = v.iter().map(|x| x.0.to_string()).collect();
                        format!("({})", c.join(","))
                    })
                    .collect();
                format!("{}: dim {} [{}]", p.name, p.dim, verts.join(" "))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn to_json(&self) -> CliResult<String> {
        serde_json::to_string_pretty(self).map_err(|e| CliError::Internal(e.to_string()))
    }
}

/// Reads a job document, reporting schema violations with their field path.
pub fn parse_job(text: &str) -> CliResult<JobDocument> {
    let mut de = serde_json::Deserializer::from_str(text);
    let job: JobDocument = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        if path == "." {
            CliError::Input(e.inner().to_string())
        } else {
            input(&path, e.inner())
        }
    })?;
    de.end().map_err(|e| CliError::Input(e.to_string()))?;
    Ok(job)
}

fn build_poly(
    context: &str,
    source: &PolySource,
    variables: &[String],
) -> CliResult<PolynomialInput> {
    let n = variables.len();
    match source {
        PolySource::Text(text) => parse_polynomial(text, variables).map_err(|e| input(context, e)),
        PolySource::Support(rows) => {
            let mut pts = Vec::with_capacity(rows.len());
            for (j, row) in rows.iter().enumerate() {
                if row.len() != n {
                    return Err(input(
                        &format!("{context}[{j}]"),
                        format!("exponent vector has length {}, expected {n}", row.len()),
                    ));
                }
                if row.iter().any(|&x| x < 0) {
                    return Err(input(&format!("{context}[{j}]"), "negative exponent"));
                }
                pts.push(IntPoint::from_i64s(row));
            }
            PolynomialInput::from_support(n, &pts).map_err(|e| input(context, e))
        }
    }
}

fn resolve_variables(job: &JobDocument) -> CliResult<Vec<String>> {
    if job.n == 0 {
        return Err(input("n", "at least one variable is required"));
    }
    let vars = match &job.variables {
        Some(v) => v.clone(),
        None => (1..=job.n).map(|i| format!("z{i}")).collect(),
    };
    if vars.len() != job.n {
        return Err(input(
            "variables",
            format!("{} names given for n = {}", vars.len(), job.n),
        ));
    }
    for (i, v) in vars.iter().enumerate() {
        let mut chars = v.chars();
        let ok = chars
            .next()
            .is_some_and(|c| c.is_alphabetic() || c == '_')
            && chars.all(|c| c.is_alphanumeric() || c == '_');
        if !ok {
            return Err(input(&format!("variables[{i}]"), format!("invalid name {v:?}")));
        }
        if vars[..i].contains(v) {
            return Err(input(&format!("variables[{i}]"), format!("duplicate name {v:?}")));
        }
    }
    Ok(vars)
}

fn resolve_task(job: &JobDocument, over: &Overrides) -> CliResult<Task> {
    match (over.task, job.task) {
        (Some(a), Some(b)) if a != b => Err(input(
            "task",
            format!("document names {} but {} was requested", b.name(), a.name()),
        )),
        (Some(t), _) | (None, Some(t)) => Ok(t),
        (None, None) => Err(input("task", "no task given")),
    }
}

fn factor_entries(z: &ZetaProduct) -> Vec<FactorEntry> {
    z.factors()
        .iter()
        .map(|(m, e)| FactorEntry {
            m: m.into(),
            exponent: e.into(),
        })
        .collect()
}

/// Maps a trace back to the input's variable order; new coordinate `j` is
/// input variable `perm[j]`.
fn trace_entry(t: &ContributionTrace, perm: &[usize], variables: &[String]) -> TraceEntry {
    let mut idx: Vec<usize> = t.index_set.indices().iter().map(|&j| perm[j]).collect();
    idx.sort_unstable();
    let alpha = t.alpha.as_ref().map(|a| {
        let mut out = vec![Num(BigInt::from(0)); perm.len()];
        for (j, v) in a.comps().iter().enumerate() {
            out[perm[j]] = Num(v.clone());
        }
        out
    });
    TraceEntry {
        index_set: idx.into_iter().map(|i| variables[i].clone()).collect(),
        kind: match t.kind {
            TraceKind::Covector => "covector",
            TraceKind::ZeroLevel => "zero-level",
        },
        alpha,
        m: (&t.m).into(),
        exponent: (&t.exponent).into(),
        face_dims: t.face_dims.clone(),
    }
}

fn polytope_entry(name: String, p: &LatticePolytope) -> PolytopeEntry {
    PolytopeEntry {
        name,
        dim: p.dim(),
        vertices: p
            .vertices()
            .iter()
            .map(|v| v.coords().iter().map(Num::from).collect())
            .collect(),
    }
}

/// Executes a job. Input problems yield [`CliError::Input`]; a failed
/// internal consistency check yields [`CliError::Internal`].
pub fn run(job: &JobDocument, over: &Overrides) -> CliResult<ResultDocument> {
    let task = resolve_task(job, over)?;
    let variables = resolve_variables(job)?;
    let n = job.n;
    let scope = over.scope.or(job.scope).unwrap_or_default();
    let trace = over.trace || job.options.trace;
    let acknowledged = job.options.assume_nondegenerate;

    match (task, &job.objective) {
        (Task::Polyzeta, None) => return Err(input("objective", "required for polyzeta")),
        (Task::Polyzeta | Task::Info, _) | (_, None) => {}
        (t, Some(_)) => {
            return Err(input(
                "objective",
                format!("not allowed for {}", t.name()),
            ))
        }
    }

    // Deformation tasks move the chosen variable to the last position.
    let mut perm: Vec<usize> = (0..n).collect();
    if task.direction().is_some() {
        if let Some(name) = over.deform_var.as_ref().or(job.options.deform_var.as_ref()) {
            let p = variables
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| input("deform_var", format!("unknown variable {name:?}")))?;
            perm.remove(p);
            perm.push(p);
        }
    }

    let constraints: Vec<PolynomialInput> = job
        .constraints
        .iter()
        .enumerate()
        .map(|(i, s)| build_poly(&format!("constraints[{i}]"), s, &variables))
        .collect::<CliResult<_>>()?;
    let objective = job
        .objective
        .as_ref()
        .map(|s| build_poly("objective", s, &variables))
        .transpose()?;

    let jobs = over.jobs.unwrap_or(1);
    if jobs == 0 {
        return Err(input("jobs", "must be at least 1"));
    }
    let engine = Engine::with_jobs(jobs).map_err(internal)?;

    let mut doc = ResultDocument {
        task,
        scope: None,
        n,
        variables: variables.clone(),
        deformation_variable: None,
        factors: None,
        pretty: None,
        degree: None,
        value: None,
        assumptions: Vec::new(),
        assumptions_unacknowledged: None,
        traces: None,
        polytopes: None,
    };

    let (zeta, traces) = match task {
        Task::DeformOrigin | Task::DeformInfinity => {
            let direction = task.direction().expect("deformation task");
            let permuted = constraints.iter().map(|p| p.permute(&perm)).collect();
            let spec = SystemSpec::deformation(n, permuted)
                .map_err(|e| input("constraints", e))?
                .with_acknowledgement(acknowledged);
            doc.deformation_variable = Some(variables[perm[n - 1]].clone());
            doc.assumptions = vec![Hypothesis::for_direction(direction).label().to_string()];
            engine
                .zeta_deformation(&spec, direction, scope.into())
                .map_err(internal)?
        }
        Task::Polyzeta => {
            let objective = objective.expect("checked above");
            let spec = SystemSpec::polynomial_on_ci(n, constraints, objective)
                .map_err(|e| input("constraints", e))?
                .with_acknowledgement(acknowledged);
            doc.assumptions = vec![Hypothesis::Nondegenerate.label().to_string()];
            let (z, traces) = engine
                .zeta_polynomial(&spec, scope.into())
                .map_err(internal)?;
            if scope == ScopeArg::Torus {
                let cone = engine.zeta_polynomial_via_cone(&spec).map_err(internal)?;
                if cone != z {
                    return Err(CliError::Internal(format!(
                        "cone cross-check failed: direct {z}, via cone {cone}"
                    )));
                }
            }
            (z, traces)
        }
        Task::Euler => {
            if constraints.len() > n {
                return Err(input(
                    "constraints",
                    format!("{} constraints in {n} variables", constraints.len()),
                ));
            }
            let polys: Vec<LatticePolytope> = constraints.iter().map(newton_polytope).collect();
            let chi = engine.euler_ci_torus(&polys, n).map_err(internal)?;
            doc.value = Some(Num(chi));
            doc.assumptions = vec![Hypothesis::Nondegenerate.label().to_string()];
            doc.assumptions_unacknowledged = Some(!acknowledged);
            return Ok(doc);
        }
        Task::Mixedvol => {
            if constraints.len() != n {
                return Err(input(
                    "constraints",
                    format!("mixedvol needs exactly {n} polytopes, got {}", constraints.len()),
                ));
            }
            let polys: Vec<LatticePolytope> = constraints.iter().map(newton_polytope).collect();
            let refs: Vec<&LatticePolytope> = polys.iter().collect();
            let v = engine
                .cache()
                .normalized_mixed_volume(&refs, &LatticeFrame::standard(n))
                .map_err(internal)?;
            doc.value = Some(Num(v));
            return Ok(doc);
        }
        Task::Info => {
            let mut entries: Vec<PolytopeEntry> = constraints
                .iter()
                .enumerate()
                .map(|(i, p)| polytope_entry(format!("F{}", i + 1), &newton_polytope(p)))
                .collect();
            if let Some(f0) = &objective {
                entries.push(polytope_entry("F0".into(), &newton_polytope(f0)));
            }
            doc.polytopes = Some(entries);
            return Ok(doc);
        }
    };

    let mut check = ZetaProduct::one();
    for t in &traces {
        check.push(t.m.clone(), t.exponent.clone());
    }
    if check != zeta {
        return Err(CliError::Internal(format!(
            "traces multiply to {check}, result is {zeta}"
        )));
    }

    doc.scope = Some(scope);
    doc.factors = Some(factor_entries(&zeta));
    doc.pretty = Some(zeta.pretty());
    doc.degree = Some(Num(zeta.degree()));
    doc.assumptions_unacknowledged = Some(!acknowledged);
    if trace {
        doc.traces = Some(
            traces
                .iter()
                .map(|t| trace_entry(t, &perm, &variables))
                .collect(),
        );
    }
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Input("x".into()).exit_code(), 2);
        assert_eq!(CliError::Internal("x".into()).exit_code(), 3);
    }

    #[test]
    fn numbers_fall_back_to_strings() {
        let small = serde_json::to_string(&Num(BigInt::from(-7))).unwrap();
        assert_eq!(small, "-7");
        let big = BigInt::from(i64::MAX) + 1;
        let s = serde_json::to_string(&Num(big)).unwrap();
        assert_eq!(s, "\"9223372036854775808\"");
    }

    #[test]
    fn task_resolution() {
        let job = parse_job(r#"{"n": 1, "task": "euler"}"#).unwrap();
        let over = Overrides::default();
        assert_eq!(resolve_task(&job, &over).unwrap(), Task::Euler);
        let over = Overrides {
            task: Some(Task::Info),
            ..Overrides::default()
        };
        assert!(matches!(resolve_task(&job, &over), Err(CliError::Input(_))));
        let job = parse_job(r#"{"n": 1}"#).unwrap();
        assert!(resolve_task(&job, &Overrides::default()).is_err());
    }

    #[test]
    fn trailing_garbage_is_rejected() {
        assert!(parse_job(r#"{"n": 1} x"#).is_err());
    }
}
