//! JSON report shapes for the CLI. Scalars are rendered as decimal strings
//! so arbitrary-precision values survive the trip; field order is fixed by
//! the struct declarations and the output carries no timing, so reports are
//! byte-identical across runs.

use serde::Serialize;

use crate::boundary::HomologyClass;
use crate::enumeration::EnumStats;
use crate::num::Scalar;
use crate::surface::BoundaryCurveClass;
use crate::unknot::{
    CrossCheckReport, Preconditions, RecognitionReport, SurveyReport, SurveyRow, CONTRACT,
};

pub const SCHEMA: u32 = 1;

fn dense<S: Scalar>(v: &[S]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn sparse<S: Scalar>(v: &[S]) -> Vec<(usize, String)> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.to_string()))
        .collect()
}

#[derive(Serialize)]
pub struct ClassJson {
    pub surface_component: usize,
    pub boundary_component: usize,
    pub free: Vec<String>,
    pub torsion: Vec<(String, String)>,
    pub zero: bool,
}

impl ClassJson {
    fn new<S: Scalar>(c: &BoundaryCurveClass<S>) -> Self {
        let HomologyClass { free, torsion } = &c.class;
        ClassJson {
            surface_component: c.surface_component,
            boundary_component: c.boundary_component,
            free: dense(free),
            torsion: torsion
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
            zero: c.class.is_zero(),
        }
    }
}

#[derive(Serialize)]
pub struct ComponentJson {
    pub euler: i64,
    pub orientable: bool,
    pub closed: bool,
    pub weight: u64,
    pub size: usize,
    pub boundary_curves: usize,
    pub vector: Vec<(usize, String)>,
}

#[derive(Serialize)]
pub struct RowJson {
    pub index: usize,
    pub vector: Vec<(usize, String)>,
    pub standard_vector: Vec<(usize, String)>,
    pub components: Vec<ComponentJson>,
    pub euler: i64,
    pub weight: u64,
    pub boundary_classes: Vec<ClassJson>,
    pub essential_disc: Option<bool>,
}

impl RowJson {
    fn new<S: Scalar>(row: &SurveyRow<S>) -> Self {
        RowJson {
            index: row.index,
            vector: sparse(&row.solution.vector),
            standard_vector: sparse(&row.standard.0),
            components: row
                .invariants
                .components
                .iter()
                .map(|c| ComponentJson {
                    euler: c.euler,
                    orientable: c.orientable,
                    closed: c.closed,
                    weight: c.weight,
                    size: c.size,
                    boundary_curves: c.boundary_curves,
                    vector: sparse(&c.vector.0),
                })
                .collect(),
            euler: row.invariants.total_euler,
            weight: row.invariants.total_weight,
            boundary_classes: row.boundary_classes.iter().map(ClassJson::new).collect(),
            essential_disc: row.essential_disc,
        }
    }
}

#[derive(Serialize)]
pub struct StatsJson {
    pub stages: Vec<StageJson>,
    pub filtered_total: usize,
    pub supports_checked: usize,
}

#[derive(Serialize)]
pub struct StageJson {
    pub row: usize,
    pub rays_before: usize,
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
    pub created: usize,
    pub filtered: usize,
}

impl StatsJson {
    fn new(stats: &EnumStats) -> Self {
        StatsJson {
            stages: stats
                .stages
                .iter()
                .map(|s| StageJson {
                    row: s.row,
                    rays_before: s.rays_before,
                    positive: s.positive,
                    negative: s.negative,
                    zero: s.zero,
                    created: s.created,
                    filtered: s.filtered,
                })
                .collect(),
            filtered_total: stats.filtered_total,
            supports_checked: stats.supports_checked,
        }
    }
}

#[derive(Serialize)]
pub struct PreconditionsJson {
    pub orientable: bool,
    pub closed: bool,
    pub boundary_components: usize,
    pub torus_boundary: bool,
    pub assumed_irreducible: bool,
}

impl PreconditionsJson {
    fn new(p: &Preconditions) -> Self {
        PreconditionsJson {
            orientable: p.orientable,
            closed: p.closed,
            boundary_components: p.boundary_components,
            torus_boundary: p.torus_boundary,
            assumed_irreducible: p.assumed_irreducible,
        }
    }
}

#[derive(Serialize)]
pub struct WitnessJson {
    pub index: usize,
    pub vector: Vec<String>,
    pub standard_vector: Vec<String>,
    pub euler: i64,
    pub weight: u64,
    pub size: usize,
    pub two_sided: bool,
    pub boundary_class: ClassJson,
}

#[derive(Serialize)]
pub struct RecognitionJson {
    pub schema: u32,
    pub file: Option<String>,
    pub coords: String,
    pub verdict: &'static str,
    pub unsupported_reason: Option<String>,
    pub preconditions: PreconditionsJson,
    pub contract: &'static str,
    pub oracle_checked: bool,
    pub witness: Option<WitnessJson>,
    pub minimal_witness: Option<WitnessJson>,
    pub survey: Vec<RowJson>,
    pub stats: StatsJson,
}

fn witness_json<S: Scalar>(report: &RecognitionReport<S>, index: usize) -> WitnessJson {
    let row = &report.survey[index];
    // a vertex surface is connected; its single component carries the data
    let c = &row.invariants.components[0];
    WitnessJson {
        index,
        vector: dense(&row.solution.vector),
        standard_vector: dense(&row.standard.0),
        euler: c.euler,
        weight: c.weight,
        size: c.size,
        two_sided: c.orientable,
        boundary_class: ClassJson::new(&row.boundary_classes[0]),
    }
}

pub fn recognition_json<S: Scalar>(
    report: &RecognitionReport<S>,
    file: Option<&str>,
) -> RecognitionJson {
    RecognitionJson {
        schema: SCHEMA,
        file: file.map(String::from),
        coords: report.kind.to_string(),
        verdict: report.verdict.as_str(),
        unsupported_reason: report.unsupported_reason.clone(),
        preconditions: PreconditionsJson::new(&report.preconditions),
        contract: CONTRACT,
        oracle_checked: report.oracle_checked,
        witness: report.witness.map(|w| witness_json(report, w)),
        minimal_witness: report.minimal_witness.map(|w| witness_json(report, w)),
        survey: report.survey.iter().map(RowJson::new).collect(),
        stats: StatsJson::new(&report.stats),
    }
}

#[derive(Serialize)]
pub struct SurveyJson {
    pub schema: u32,
    pub file: Option<String>,
    pub coords: String,
    pub vertex_count: usize,
    pub oracle_checked: bool,
    pub rows: Vec<RowJson>,
    pub stats: StatsJson,
}

pub fn survey_json<S: Scalar>(report: &SurveyReport<S>, file: Option<&str>) -> SurveyJson {
    SurveyJson {
        schema: SCHEMA,
        file: file.map(String::from),
        coords: report.kind.to_string(),
        vertex_count: report.rows.len(),
        oracle_checked: report.oracle_checked,
        rows: report.rows.iter().map(RowJson::new).collect(),
        stats: StatsJson::new(&report.stats),
    }
}

#[derive(Serialize)]
pub struct CheckJson {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Serialize)]
pub struct CrossCheckJson {
    pub schema: u32,
    pub file: Option<String>,
    pub passed: bool,
    pub checks: Vec<CheckJson>,
    pub discrepancies: Vec<String>,
    pub oracle_skipped: Vec<String>,
}

pub fn crosscheck_json(report: &CrossCheckReport, file: Option<&str>) -> CrossCheckJson {
    CrossCheckJson {
        schema: SCHEMA,
        file: file.map(String::from),
        passed: report.passed(),
        checks: report
            .checks
            .iter()
            .map(|c| CheckJson {
                name: c.name.clone(),
                passed: c.passed,
                detail: c.detail.clone(),
            })
            .collect(),
        discrepancies: report.discrepancies.clone(),
        oracle_skipped: report.oracle_skipped.clone(),
    }
}

/// One vector per line in sparse `index:value` form.
pub fn dump_rays<S: Scalar>(rows: &[SurveyRow<S>]) -> String {
    let mut out = String::new();
    for row in rows {
        let parts: Vec<String> = sparse(&row.solution.vector)
            .into_iter()
            .map(|(i, v)| format!("{i}:{v}"))
            .collect();
        out.push_str(&parts.join(" "));
        out.push('\n');
    }
    out
}
