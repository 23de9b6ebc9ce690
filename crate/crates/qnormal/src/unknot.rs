//! End-to-end pipeline: enumerate the quad (or standard) vertex solutions of
//! a triangulation, realize each as a normal surface, and decide whether an
//! essential disc exists among them. For an orientable, irreducible manifold
//! with a single torus boundary this certifies solid-torus-ness: an
//! essential disc compresses the torus boundary to a sphere bounding a ball.

use thiserror::Error;

use crate::boundary::{boundary_analysis, BoundaryError, BoundarySurface};
use crate::coordinates::{
    is_admissible, project_to_quad, q_matching_system, quad_to_standard, standard_matching_system,
    vertex_link, CoordKind, CoordinateError, MatchingSystem, QuadVector, StandardVector,
};
use crate::enumeration::{
    enumerate_bruteforce, enumerate_dd, EnumStats, EnumerationError, EnumerationResult,
    VertexSolution, DEFAULT_ORACLE_LIMIT,
};
use crate::num::Scalar;
use crate::surface::{
    is_essential_disc, realize, BoundaryCurveClass, SurfaceError, SurfaceInvariants,
    DEFAULT_MAX_DISCS,
};
use crate::triangulation::{Triangulation, TriangulationError};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Triangulation(#[from] TriangulationError),
    #[error(transparent)]
    Coordinate(#[from] CoordinateError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Boundary(#[from] BoundaryError),
    #[error("{kind} vertex sets disagree between the double description run and the oracle")]
    OracleMismatch { kind: CoordKind },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    DiscFound,
    NoDisc,
    Unsupported,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::DiscFound => "DISC_FOUND",
            Verdict::NoDisc => "NO_DISC",
            Verdict::Unsupported => "UNSUPPORTED",
        }
    }

    /// CLI exit code: 0 disc found, 1 no disc, 2 unsupported.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::DiscFound => 0,
            Verdict::NoDisc => 1,
            Verdict::Unsupported => 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub kind: CoordKind,
    pub filter: bool,
    pub oracle: bool,
    pub max_rays: usize,
    pub max_discs: u64,
    pub oracle_limit: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            kind: CoordKind::Quad,
            filter: true,
            oracle: false,
            max_rays: 1 << 22,
            max_discs: DEFAULT_MAX_DISCS,
            oracle_limit: DEFAULT_ORACLE_LIMIT,
        }
    }
}

/// Which hypotheses were machine-checked and which are assumptions the
/// caller must supply.
#[derive(Clone, Debug)]
pub struct Preconditions {
    pub orientable: bool,
    pub closed: bool,
    pub boundary_components: usize,
    pub torus_boundary: bool,
    /// Not checked by this tool; required for the certificate.
    pub assumed_irreducible: bool,
}

/// One vertex solution, realized, with its invariants.
#[derive(Clone, Debug)]
pub struct SurveyRow<S> {
    pub index: usize,
    pub solution: VertexSolution<S>,
    pub standard: StandardVector<S>,
    pub invariants: SurfaceInvariants<S>,
    pub boundary_classes: Vec<BoundaryCurveClass<S>>,
    /// None when the manifold has no boundary or a non-torus component.
    pub essential_disc: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct SurveyReport<S> {
    pub kind: CoordKind,
    pub rows: Vec<SurveyRow<S>>,
    pub stats: EnumStats,
    pub oracle_checked: bool,
}

#[derive(Clone, Debug)]
pub struct RecognitionReport<S> {
    pub verdict: Verdict,
    pub unsupported_reason: Option<String>,
    pub preconditions: Preconditions,
    pub kind: CoordKind,
    /// Index (into `survey`) of the first essential disc in vertex order.
    pub witness: Option<usize>,
    /// Among all essential disc witnesses, the one minimizing
    /// (weight, size) lexicographically.
    pub minimal_witness: Option<usize>,
    pub survey: Vec<SurveyRow<S>>,
    pub stats: EnumStats,
    pub oracle_checked: bool,
}

/// The logical contract the verdict carries, spelled out for reports.
pub const CONTRACT: &str = "For an orientable, irreducible 3-manifold with a single torus \
boundary component: DISC_FOUND certifies the manifold is a solid torus (for a knot exterior, \
the knot is trivial); NO_DISC certifies that no vertex surface of the projective solution \
space is an essential disc, which for such a manifold certifies there is no essential disc \
at all (for a knot exterior, the knot is nontrivial). Irreducibility is assumed, not checked.";

fn preconditions<S: Scalar>(tri: &Triangulation, boundary: &BoundarySurface<S>) -> Preconditions {
    Preconditions {
        orientable: tri.is_orientable(),
        closed: tri.is_closed(),
        boundary_components: boundary.components.len(),
        torus_boundary: boundary.components.len() == 1 && boundary.components[0].is_torus(),
        assumed_irreducible: true,
    }
}

fn enumerate_with_oracle<S: Scalar>(
    system: &MatchingSystem<S>,
    cfg: &PipelineConfig,
) -> Result<(EnumerationResult<S>, bool), PipelineError> {
    let result = enumerate_dd(system, cfg.filter, cfg.max_rays)?;
    if !cfg.oracle {
        return Ok((result, false));
    }
    match enumerate_bruteforce(system, cfg.oracle_limit) {
        Ok(oracle) => {
            if oracle.vertices != result.vertices {
                return Err(PipelineError::OracleMismatch { kind: system.kind });
            }
            Ok((result, true))
        }
        Err(EnumerationError::OracleLimitExceeded { .. }) => Ok((result, false)),
        Err(e) => Err(e.into()),
    }
}

/// Build the survey of every vertex solution of the configured system:
/// realized surface invariants and boundary curve classes, in the
/// deterministic (lexicographic) vertex order.
pub fn survey<S: Scalar>(
    tri: &Triangulation,
    cfg: &PipelineConfig,
) -> Result<SurveyReport<S>, PipelineError> {
    let boundary = boundary_analysis::<S>(tri);
    let all_tori = !boundary.components.is_empty()
        && boundary.components.iter().all(|c| c.is_torus());

    let (result, oracle_checked) = match cfg.kind {
        CoordKind::Quad => {
            let system = q_matching_system::<S>(tri)?;
            enumerate_with_oracle(&system, cfg)?
        }
        CoordKind::Standard => {
            let system = standard_matching_system::<S>(tri);
            enumerate_with_oracle(&system, cfg)?
        }
    };

    let mut rows = Vec::with_capacity(result.vertices.len());
    for (index, solution) in result.vertices.iter().enumerate() {
        let standard = match cfg.kind {
            CoordKind::Quad => quad_to_standard(&QuadVector(solution.vector.clone()), tri)?,
            CoordKind::Standard => StandardVector(solution.vector.clone()),
        };
        let surface = realize(&standard, tri, cfg.max_discs)?;
        let invariants = surface.invariants::<S>(tri)?;
        let boundary_classes = surface.boundary_curves(tri, &boundary)?;
        let essential_disc = if all_tori {
            let mut any = false;
            for comp in 0..invariants.components.len() {
                if is_essential_disc(comp, &invariants, &boundary_classes, &boundary)? {
                    any = true;
                }
            }
            Some(any)
        } else {
            None
        };
        rows.push(SurveyRow {
            index,
            solution: solution.clone(),
            standard,
            invariants,
            boundary_classes,
            essential_disc,
        });
    }
    Ok(SurveyReport {
        kind: cfg.kind,
        rows,
        stats: result.stats,
        oracle_checked,
    })
}

/// Search the vertex surfaces for an essential disc and report the verdict.
pub fn recognize<S: Scalar>(
    tri: &Triangulation,
    cfg: &PipelineConfig,
) -> Result<RecognitionReport<S>, PipelineError> {
    let boundary = boundary_analysis::<S>(tri);
    let pre = preconditions(tri, &boundary);

    let unsupported = if !pre.orientable {
        Some("triangulation is not orientable".to_string())
    } else if pre.closed {
        Some("triangulation is closed; the search needs a torus boundary".to_string())
    } else if pre.boundary_components != 1 {
        Some(format!(
            "expected one boundary component, found {}",
            pre.boundary_components
        ))
    } else if !pre.torus_boundary {
        Some("boundary component is not a torus".to_string())
    } else {
        None
    };
    if let Some(reason) = unsupported {
        return Ok(RecognitionReport {
            verdict: Verdict::Unsupported,
            unsupported_reason: Some(reason),
            preconditions: pre,
            kind: cfg.kind,
            witness: None,
            minimal_witness: None,
            survey: Vec::new(),
            stats: EnumStats::default(),
            oracle_checked: false,
        });
    }

    let report = survey::<S>(tri, cfg)?;
    let witnesses: Vec<usize> = report
        .rows
        .iter()
        .filter(|r| r.essential_disc == Some(true))
        .map(|r| r.index)
        .collect();
    let witness = witnesses.first().copied();
    let minimal_witness = witnesses
        .iter()
        .copied()
        .min_by_key(|&i| {
            let inv = &report.rows[i].invariants;
            (inv.total_weight, inv.components[0].size)
        });

    // recompute the witness invariants from scratch and insist they agree
    if let Some(w) = witness {
        let row = &report.rows[w];
        let surface = realize(&row.standard, tri, cfg.max_discs)?;
        let again = surface.invariants::<S>(tri)?;
        if again.components.len() != row.invariants.components.len()
            || again.total_weight != row.invariants.total_weight
            || again.total_euler != row.invariants.total_euler
        {
            return Err(PipelineError::Surface(SurfaceError::Internal(
                "witness invariants changed between realizations".into(),
            )));
        }
    }

    Ok(RecognitionReport {
        verdict: if witness.is_some() {
            Verdict::DiscFound
        } else {
            Verdict::NoDisc
        },
        unsupported_reason: None,
        preconditions: pre,
        kind: cfg.kind,
        witness,
        minimal_witness,
        survey: report.rows,
        stats: report.stats,
        oracle_checked: report.oracle_checked,
    })
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct CrossCheckReport {
    pub checks: Vec<CheckResult>,
    pub discrepancies: Vec<String>,
    pub oracle_skipped: Vec<String>,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed) && self.discrepancies.is_empty()
    }
}

/// True iff the vector is a nonnegative integer combination of vertex links:
/// all quads zero and the triangle values constant on every vertex class.
pub fn is_vertex_link_combination<S: Scalar>(v: &StandardVector<S>, tri: &Triangulation) -> bool {
    for t in 0..tri.tets() {
        for q in 0..3 {
            if !v.quad(t, q).is_zero() {
                return false;
            }
        }
    }
    for class in tri.vertex_classes() {
        let first = v.tri(class.corners[0].0, class.corners[0].1);
        if first.is_negative() {
            return false;
        }
        if !class
            .corners
            .iter()
            .all(|&(t, c)| v.tri(t, c) == first)
        {
            return false;
        }
    }
    true
}

/// Validate the standard/quad correspondence on one triangulation:
/// enumeration modes agree (with the brute-force leg skipped above the
/// oracle limit), standard vertices project into the quad system, quad
/// vertices lift to admissible standard vectors, and the lift differs from
/// any standard preimage by a vertex-link combination.
pub fn cross_check<S: Scalar>(
    tri: &Triangulation,
    cfg: &PipelineConfig,
) -> Result<CrossCheckReport, PipelineError> {
    let mut report = CrossCheckReport::default();
    let std_system = standard_matching_system::<S>(tri);
    let quad_system = q_matching_system::<S>(tri)?;

    let mut enum_results = Vec::new();
    for system in [&std_system, &quad_system] {
        let filtered = enumerate_dd(system, true, cfg.max_rays)?;
        let unfiltered = enumerate_dd(system, false, cfg.max_rays)?;
        let same = filtered.vertices == unfiltered.vertices;
        if !same {
            report
                .discrepancies
                .push(format!("{} filtered vs unfiltered vertex sets differ", system.kind));
        }
        report.checks.push(CheckResult {
            name: format!("{}_filtered_equals_unfiltered", system.kind),
            passed: same,
            detail: format!("{} vertices", filtered.vertices.len()),
        });
        match enumerate_bruteforce(system, cfg.oracle_limit) {
            Ok(oracle) => {
                let same = oracle.vertices == filtered.vertices;
                if !same {
                    report
                        .discrepancies
                        .push(format!("{} oracle vertex set differs", system.kind));
                }
                report.checks.push(CheckResult {
                    name: format!("{}_oracle_agrees", system.kind),
                    passed: same,
                    detail: format!("{} supports checked", oracle.stats.supports_checked),
                });
            }
            Err(EnumerationError::OracleLimitExceeded { cols, limit }) => {
                report.oracle_skipped.push(format!(
                    "{}: {cols} coordinates above oracle limit {limit}",
                    system.kind
                ));
            }
            Err(e) => return Err(e.into()),
        }
        enum_results.push(filtered);
    }
    let std_vertices = &enum_results[0].vertices;
    let quad_vertices = &enum_results[1].vertices;

    // standard vertices: quad projections satisfy the quad matching; the
    // projection vanishes exactly for vertex-link combinations
    let mut proj_ok = true;
    for v in std_vertices {
        let sv = StandardVector(v.vector.clone());
        let qv = project_to_quad(&sv);
        if !quad_system.annihilates(&qv.0) {
            proj_ok = false;
            report
                .discrepancies
                .push(format!("projection of standard vertex {:?} fails quad matching", v.support));
        }
        let zero_proj = qv.0.iter().all(|x| x.is_zero());
        if zero_proj != is_vertex_link_combination(&sv, tri) {
            proj_ok = false;
            report.discrepancies.push(format!(
                "standard vertex {:?}: zero projection and link-combination disagree",
                v.support
            ));
        }
    }
    report.checks.push(CheckResult {
        name: "standard_vertices_project_into_quad_system".into(),
        passed: proj_ok,
        detail: format!("{} standard vertices", std_vertices.len()),
    });

    // quad vertices lift to admissible canonical standard vectors
    let mut lift_ok = true;
    for v in quad_vertices {
        let lifted = quad_to_standard(&QuadVector(v.vector.clone()), tri)?;
        let adm = is_admissible(&lifted.0, &std_system)?;
        if !adm.is_admissible() {
            lift_ok = false;
            report
                .discrepancies
                .push(format!("lift of quad vertex {:?} is not admissible", v.support));
        }
        if project_to_quad(&lifted).0 != v.vector {
            lift_ok = false;
            report
                .discrepancies
                .push(format!("lift of quad vertex {:?} does not project back", v.support));
        }
    }
    report.checks.push(CheckResult {
        name: "quad_vertices_lift_admissibly".into(),
        passed: lift_ok,
        detail: format!("{} quad vertices", quad_vertices.len()),
    });

    // round trip on standard vertices differs by a vertex-link combination
    let mut round_ok = true;
    for v in std_vertices {
        let sv = StandardVector(v.vector.clone());
        let lifted = quad_to_standard(&project_to_quad(&sv), tri)?;
        let diff: Vec<S> = sv
            .0
            .iter()
            .zip(&lifted.0)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        if !is_vertex_link_combination(&StandardVector(diff), tri) {
            round_ok = false;
            report.discrepancies.push(format!(
                "standard vertex {:?} minus its lift is not a link combination",
                v.support
            ));
        }
    }
    report.checks.push(CheckResult {
        name: "standard_round_trip_is_link_combination".into(),
        passed: round_ok,
        detail: format!("{} standard vertices", std_vertices.len()),
    });

    // vertex links project to zero
    let mut links_ok = true;
    for class in 0..tri.vertex_classes().len() {
        let link = vertex_link::<S>(tri, class);
        if !project_to_quad(&link).0.iter().all(|x| x.is_zero()) {
            links_ok = false;
            report
                .discrepancies
                .push(format!("vertex link {class} has a nonzero quad projection"));
        }
    }
    report.checks.push(CheckResult {
        name: "vertex_links_project_to_zero".into(),
        passed: links_ok,
        detail: format!("{} vertex classes", tri.vertex_classes().len()),
    });

    Ok(report)
}
