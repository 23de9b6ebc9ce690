//! Normal surface coordinates: the standard (7t) and quadrilateral (3t)
//! systems, admissibility, projections between them, and Haken sums.
//!
//! Standard layout per tetrahedron: 4 triangle coordinates indexed by the
//! cut-off vertex, then 3 quad coordinates indexed by the separated pair
//! {0, q+1}. Quad layout: the 3 quad coordinates alone.

use std::fmt;

use thiserror::Error;

use crate::num::{dot, Scalar};
use crate::tet::edge_index;
use crate::tet::{quad_for_arc, DiscType, FACE_VERTS, QUAD_AVOIDING_EDGE};
use crate::triangulation::Triangulation;

#[derive(Debug, Error)]
pub enum CoordinateError {
    #[error("vector has length {got}, expected {want}")]
    Length { got: usize, want: usize },
    #[error("two distinct quad types meet in tetrahedron {tet}")]
    QuadIncompatible { tet: usize },
    #[error("vector is not admissible: {0}")]
    NotAdmissible(String),
    #[error("quad vector fails the quad matching around edge class {edge_class}: inconsistent corner integration")]
    IntegrationInconsistent { edge_class: usize },
    #[error("quad matching system requires an orientable triangulation")]
    NonOrientable,
}

/// Which coordinate system a vector or matrix lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoordKind {
    Standard,
    Quad,
}

impl CoordKind {
    pub fn coords_per_tet(self) -> usize {
        match self {
            CoordKind::Standard => 7,
            CoordKind::Quad => 3,
        }
    }
}

impl fmt::Display for CoordKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoordKind::Standard => write!(f, "standard"),
            CoordKind::Quad => write!(f, "quad"),
        }
    }
}

/// Column of the triangle coordinate cutting off vertex `v` of tet `t`.
pub fn std_tri(t: usize, v: usize) -> usize {
    7 * t + v
}

/// Column of quad coordinate `q` of tet `t` in the standard system.
pub fn std_quad(t: usize, q: usize) -> usize {
    7 * t + 4 + q
}

/// Column of quad coordinate `q` of tet `t` in the quad system.
pub fn quad_col(t: usize, q: usize) -> usize {
    3 * t + q
}

/// Nonnegative integer vector of standard coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardVector<S>(pub Vec<S>);

/// Nonnegative integer vector of quad coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadVector<S>(pub Vec<S>);

impl<S: Scalar> StandardVector<S> {
    pub fn zero(tets: usize) -> Self {
        StandardVector(vec![S::zero(); 7 * tets])
    }

    pub fn tets(&self) -> usize {
        self.0.len() / 7
    }

    pub fn tri(&self, t: usize, v: usize) -> &S {
        &self.0[std_tri(t, v)]
    }

    pub fn quad(&self, t: usize, q: usize) -> &S {
        &self.0[std_quad(t, q)]
    }

    pub fn check_len(&self, tets: usize) -> Result<(), CoordinateError> {
        if self.0.len() != 7 * tets {
            return Err(CoordinateError::Length {
                got: self.0.len(),
                want: 7 * tets,
            });
        }
        Ok(())
    }
}

impl<S: Scalar> QuadVector<S> {
    pub fn zero(tets: usize) -> Self {
        QuadVector(vec![S::zero(); 3 * tets])
    }

    pub fn tets(&self) -> usize {
        self.0.len() / 3
    }

    pub fn quad(&self, t: usize, q: usize) -> &S {
        &self.0[quad_col(t, q)]
    }

    pub fn check_len(&self, tets: usize) -> Result<(), CoordinateError> {
        if self.0.len() != 3 * tets {
            return Err(CoordinateError::Length {
                got: self.0.len(),
                want: 3 * tets,
            });
        }
        Ok(())
    }
}

/// Row provenance inside a matching system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowMeta {
    /// Arc type `arc` (the cut-off vertex on the source side) of the interior
    /// face pairing src -> dst.
    StandardArc {
        src: (usize, usize),
        dst: (usize, usize),
        arc: usize,
    },
    /// The row of one interior edge class.
    QuadEdge { edge_class: usize },
}

/// An exact integer constraint matrix over standard or quad coordinates.
#[derive(Clone, Debug)]
pub struct MatchingSystem<S> {
    pub kind: CoordKind,
    pub cols: usize,
    pub rows: Vec<Vec<S>>,
    pub meta: Vec<RowMeta>,
}

impl<S: Scalar> MatchingSystem<S> {
    pub fn residual(&self, v: &[S]) -> Vec<S> {
        self.rows.iter().map(|row| dot(row, v)).collect()
    }

    pub fn annihilates(&self, v: &[S]) -> bool {
        self.rows.iter().all(|row| dot(row, v).is_zero())
    }

    /// Sparse triplet dump, one `row col coeff` line per nonzero.
    pub fn dump_triplets(&self) -> String {
        let mut out = String::new();
        for (i, row) in self.rows.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.push_str(&format!("{i} {j} {c}\n"));
                }
            }
        }
        out
    }
}

/// One matching equation per interior face pairing and normal arc type:
/// the triangle+quad count carrying the arc on one side equals the count on
/// the other. Rows ordered by face pairing, then arc type.
pub fn standard_matching_system<S: Scalar>(tri: &Triangulation) -> MatchingSystem<S> {
    let cols = 7 * tri.tets();
    let mut rows = Vec::new();
    let mut meta = Vec::new();
    for ((t, f), g) in tri.face_pairings() {
        for &v in &FACE_VERTS[f] {
            let w = g.perm.apply(v);
            let mut row = vec![S::zero(); cols];
            let mut add = |col: usize, delta: i64| {
                row[col] = row[col].clone() + S::from_i64(delta).unwrap();
            };
            add(std_tri(t, v), 1);
            add(std_quad(t, quad_for_arc(f, v)), 1);
            add(std_tri(g.tet, w), -1);
            add(std_quad(g.tet, quad_for_arc(g.face, w)), -1);
            rows.push(row);
            meta.push(RowMeta::StandardArc {
                src: (t, f),
                dst: (g.tet, g.face),
                arc: v,
            });
        }
    }
    MatchingSystem {
        kind: CoordKind::Standard,
        cols,
        rows,
        meta,
    }
}

/// Per-incidence quad coefficients of an edge class at its `incidence`-th
/// (tet, edge) incidence: +1 for the quad whose arcs cut off the tail in the
/// first face around the edge and the head in the second, -1 for the
/// opposite quad, 0 for the quad disjoint from the edge.
///
/// The two faces are ordered by the rotation sense induced from the
/// tetrahedron orientation and the class's walk direction; tail and head
/// follow the chosen orientation. Reversing the chosen orientation therefore
/// negates the coefficients.
pub fn q_incidence_coefficients(tri: &Triangulation, edge_class: usize, incidence: usize) -> [i64; 3] {
    let signs = tri
        .orientation()
        .expect("quad coefficients require an orientable triangulation");
    let ec = &tri.edge_classes()[edge_class];
    let inc = &ec.incidences[incidence];
    let (a, b) = inc.walk_ends();
    let mut others: Vec<usize> = (0..4).filter(|&x| x != a && x != b).collect();
    // rotation anchor: order the two opposite vertices (c, d) so that the
    // label permutation (a, b, c, d) has the tetrahedron's orientation sign
    let perm_sign = |p: [usize; 4]| -> i8 {
        let mut inv = 0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                if p[i] > p[j] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    };
    if perm_sign([a, b, others[0], others[1]]) != signs[inc.tet] {
        others.swap(0, 1);
    }
    let (c, d) = (others[0], others[1]);
    let (tail, _) = ec.chosen_ends(incidence);
    let mut coeffs = [0i64; 3];
    coeffs[QUAD_AVOIDING_EDGE[edge_index(tail, c)]] += 1;
    coeffs[QUAD_AVOIDING_EDGE[edge_index(tail, d)]] -= 1;
    coeffs
}

/// One row per interior edge class: the signed quad balance around the edge
/// is zero. Coefficients accumulate over repeated incidences of the class in
/// a single tetrahedron.
pub fn q_matching_system<S: Scalar>(
    tri: &Triangulation,
) -> Result<MatchingSystem<S>, CoordinateError> {
    if !tri.is_orientable() {
        return Err(CoordinateError::NonOrientable);
    }
    let cols = 3 * tri.tets();
    let mut rows = Vec::new();
    let mut meta = Vec::new();
    for ec_id in tri.interior_edges() {
        let mut row = vec![S::zero(); cols];
        for (i, inc) in tri.edge_classes()[ec_id].incidences.iter().enumerate() {
            let coeffs = q_incidence_coefficients(tri, ec_id, i);
            for (q, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    let col = quad_col(inc.tet, q);
                    row[col] = row[col].clone() + S::from_i64(c).unwrap();
                }
            }
        }
        rows.push(row);
        meta.push(RowMeta::QuadEdge { edge_class: ec_id });
    }
    Ok(MatchingSystem {
        kind: CoordKind::Quad,
        cols,
        rows,
        meta,
    })
}

/// Tetrahedra in which more than one quad coordinate is positive.
pub fn quad_violations<S: Scalar>(kind: CoordKind, v: &[S]) -> Vec<usize> {
    let per = kind.coords_per_tet();
    debug_assert_eq!(v.len() % per, 0);
    let quad_slice = |t: usize| match kind {
        CoordKind::Standard => &v[7 * t + 4..7 * t + 7],
        CoordKind::Quad => &v[3 * t..3 * t + 3],
    };
    (0..v.len() / per)
        .filter(|&t| quad_slice(t).iter().filter(|x| !x.is_zero()).count() > 1)
        .collect()
}

/// True iff at most one quad type is positive in every tetrahedron.
pub fn satisfies_quad_condition<S: Scalar>(kind: CoordKind, v: &[S]) -> bool {
    quad_violations(kind, v).is_empty()
}

/// Full admissibility report for a vector against a matching system.
#[derive(Clone, Debug)]
pub struct AdmissibilityReport {
    pub nonnegative: bool,
    pub matching: bool,
    pub quad_condition: bool,
    pub negative_indices: Vec<usize>,
    pub failing_rows: Vec<usize>,
    pub quad_violations: Vec<usize>,
}

impl AdmissibilityReport {
    pub fn is_admissible(&self) -> bool {
        self.nonnegative && self.matching && self.quad_condition
    }
}

pub fn is_admissible<S: Scalar>(
    v: &[S],
    system: &MatchingSystem<S>,
) -> Result<AdmissibilityReport, CoordinateError> {
    if v.len() != system.cols {
        return Err(CoordinateError::Length {
            got: v.len(),
            want: system.cols,
        });
    }
    let negative_indices: Vec<usize> = (0..v.len()).filter(|&i| v[i].is_negative()).collect();
    let failing_rows: Vec<usize> = system
        .rows
        .iter()
        .enumerate()
        .filter(|(_, row)| !dot(row, v).is_zero())
        .map(|(i, _)| i)
        .collect();
    let quad_violations = quad_violations(system.kind, v);
    Ok(AdmissibilityReport {
        nonnegative: negative_indices.is_empty(),
        matching: failing_rows.is_empty(),
        quad_condition: quad_violations.is_empty(),
        negative_indices,
        failing_rows,
        quad_violations,
    })
}

/// Drop the triangle coordinates.
pub fn project_to_quad<S: Scalar>(v: &StandardVector<S>) -> QuadVector<S> {
    let tets = v.tets();
    let mut out = Vec::with_capacity(3 * tets);
    for t in 0..tets {
        for q in 0..3 {
            out.push(v.quad(t, q).clone());
        }
    }
    QuadVector(out)
}

/// The vertex-linking coordinate vector of a vertex class: triangle
/// coordinate 1 at every corner of the class, everything else 0.
pub fn vertex_link<S: Scalar>(tri: &Triangulation, class: usize) -> StandardVector<S> {
    let mut v = StandardVector::zero(tri.tets());
    for &(t, corner) in &tri.vertex_classes()[class].corners {
        v.0[std_tri(t, corner)] = S::one();
    }
    v
}

/// Canonical minimal standard representative of an admissible quad vector:
/// triangle values are integrated over each vertex class's corner graph from
/// the difference rule forced by the standard matching equations, then
/// shifted so each class's minimum is zero. Subtracting any vertex link from
/// the result would break nonnegativity.
pub fn quad_to_standard<S: Scalar>(
    q: &QuadVector<S>,
    tri: &Triangulation,
) -> Result<StandardVector<S>, CoordinateError> {
    q.check_len(tri.tets())?;
    if q.0.iter().any(|x| x.is_negative()) {
        return Err(CoordinateError::NotAdmissible("negative entry".into()));
    }
    if !satisfies_quad_condition(CoordKind::Quad, &q.0) {
        return Err(CoordinateError::NotAdmissible(
            "quad condition violated".into(),
        ));
    }

    // corner graph: corners adjacent when they share an interior face;
    // crossing from (t, v) to (t', pi(v)) changes the triangle value by
    // q_t(quad under the arc) - q_t'(quad under the image arc)
    let tets = tri.tets();
    let mut value: Vec<Option<S>> = vec![None; 4 * tets];
    let corner = |t: usize, v: usize| 4 * t + v;

    for class in tri.vertex_classes() {
        let root = class.corners[0];
        value[corner(root.0, root.1)] = Some(S::zero());
        let mut stack = vec![root];
        while let Some((t, v)) = stack.pop() {
            let base = value[corner(t, v)].clone().unwrap();
            for f in 0..4 {
                if f == v {
                    continue;
                }
                let Some(g) = tri.gluing(t, f) else { continue };
                let w = g.perm.apply(v);
                let delta = q.quad(t, quad_for_arc(f, v)).clone()
                    - q.quad(g.tet, quad_for_arc(g.face, w)).clone();
                let next = base.clone() + delta;
                match &value[corner(g.tet, w)] {
                    None => {
                        value[corner(g.tet, w)] = Some(next);
                        stack.push((g.tet, w));
                    }
                    Some(existing) => {
                        if *existing != next {
                            // the failed cycle wraps an interior edge whose
                            // quad matching equation q violates
                            let edge_class = tri.edge_class_of(t, edge_index(v, f));
                            return Err(CoordinateError::IntegrationInconsistent { edge_class });
                        }
                    }
                }
            }
        }
        // shift the class so its minimum is zero
        let min = class
            .corners
            .iter()
            .map(|&(t, v)| value[corner(t, v)].clone().unwrap())
            .min()
            .unwrap();
        for &(t, v) in &class.corners {
            let cur = value[corner(t, v)].clone().unwrap();
            value[corner(t, v)] = Some(cur - min.clone());
        }
    }

    let mut out = StandardVector::zero(tets);
    for t in 0..tets {
        for v in 0..4 {
            out.0[std_tri(t, v)] = value[corner(t, v)].clone().unwrap();
        }
        for qq in 0..3 {
            out.0[std_quad(t, qq)] = q.quad(t, qq).clone();
        }
    }
    Ok(out)
}

/// Entrywise sum of two admissible vectors of the same kind; fails when two
/// different quad types would coexist in a tetrahedron.
pub fn haken_sum<S: Scalar>(
    kind: CoordKind,
    v1: &[S],
    v2: &[S],
) -> Result<Vec<S>, CoordinateError> {
    if v1.len() != v2.len() {
        return Err(CoordinateError::Length {
            got: v2.len(),
            want: v1.len(),
        });
    }
    let sum: Vec<S> = v1
        .iter()
        .zip(v2)
        .map(|(a, b)| a.clone() + b.clone())
        .collect();
    if let Some(&tet) = quad_violations(kind, &sum).first() {
        return Err(CoordinateError::QuadIncompatible { tet });
    }
    Ok(sum)
}

/// Disc type and tetrahedron of a standard coordinate column.
pub fn std_column_disc(col: usize) -> (usize, DiscType) {
    (col / 7, DiscType::from_slot(col % 7))
}
