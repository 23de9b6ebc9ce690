//! Realization of an admissible standard vector as the unique embedded
//! normal surface cell complex, and the surface's invariants: components,
//! Euler characteristic, orientability, weight, size, and the homology
//! classes of its boundary curves.
//!
//! Along each edge the discs stack in the one embedded order: triangles of
//! each corner nest nearest their vertex, the (single) quad block sits
//! between the two triangle blocks. Arcs of equal type on the two sides of
//! an interior face pair up outermost-to-outermost, as the matching
//! equations force.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::boundary::{BoundaryError, BoundarySurface, HomologyClass};
use crate::coordinates::{
    is_admissible, standard_matching_system, std_quad, std_tri, StandardVector,
};
use crate::num::Scalar;
use crate::tet::{quad_for_arc, quad_pair, DiscType, EDGE_VERTS, FACE_VERTS};
use crate::triangulation::Triangulation;

#[derive(Debug, Error)]
pub enum SurfaceError {
    #[error("vector is not admissible: {0}")]
    NotAdmissible(String),
    #[error("coordinate {col} does not fit a machine count")]
    CountOverflow { col: usize },
    #[error("surface would have {total} discs, above the cap {cap}")]
    TooManyDiscs { total: u64, cap: u64 },
    #[error("essential disc test requires a torus boundary component, got component {component}")]
    UnsupportedBoundary { component: usize },
    #[error("boundary chain error: {0}")]
    Boundary(#[from] BoundaryError),
    #[error("realization invariant broken: {0}")]
    Internal(String),
}

/// Default cap on the number of realized discs.
pub const DEFAULT_MAX_DISCS: u64 = 1 << 20;

/// One normal disc instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Disc {
    pub tet: usize,
    pub dtype: DiscType,
    pub copy: u64,
}

/// One side of a normal arc: which disc, where in its boundary cycle, and
/// how deep it nests towards the cut-off vertex of its face.
#[derive(Clone, Copy, Debug)]
pub struct ArcSide {
    pub disc: usize,
    pub cycle_pos: usize,
    pub tet: usize,
    pub face: usize,
    pub cut_vertex: usize,
    pub depth: u64,
}

/// A normal arc of the realized surface: two sides across an interior face,
/// or one side lying in the boundary.
#[derive(Clone, Debug)]
pub struct Arc {
    pub sides: Vec<ArcSide>,
}

impl Arc {
    pub fn is_boundary(&self) -> bool {
        self.sides.len() == 1
    }
}

/// The realized cell complex of an admissible standard vector.
pub struct NormalSurface {
    pub tets: usize,
    pub counts: Vec<u64>,
    pub discs: Vec<Disc>,
    pub arcs: Vec<Arc>,
    /// Intersection count with each edge class (equal across incidences).
    pub edge_points: Vec<u64>,
    /// Disc crossings along each (tet, edge) incidence, ordered from the
    /// lower local vertex.
    pub edge_orderings: BTreeMap<(usize, usize), Vec<usize>>,
    pub component_of_disc: Vec<usize>,
    pub component_count: usize,
    component_of_arc: Vec<usize>,
    /// Orientation-propagation result per component.
    orientable: Vec<bool>,
    /// Crossing position of a disc on a local edge, from the lower vertex.
    corner_pos: BTreeMap<(usize, usize), u64>,
}

/// Invariants of one connected component.
#[derive(Clone, Debug)]
pub struct ComponentData<S> {
    pub vector: StandardVector<S>,
    pub euler: i64,
    pub orientable: bool,
    pub closed: bool,
    pub weight: u64,
    pub size: usize,
    pub boundary_curves: usize,
}

#[derive(Clone, Debug)]
pub struct SurfaceInvariants<S> {
    pub components: Vec<ComponentData<S>>,
    pub total_weight: u64,
    pub total_euler: i64,
}

/// A boundary curve of the surface reduced to homology coordinates in its
/// boundary component.
#[derive(Clone, Debug)]
pub struct BoundaryCurveClass<S> {
    pub surface_component: usize,
    pub boundary_component: usize,
    pub class: HomologyClass<S>,
}

/// Build the unique normal surface with coordinate vector `v`.
pub fn realize<S: Scalar>(
    v: &StandardVector<S>,
    tri: &Triangulation,
    max_discs: u64,
) -> Result<NormalSurface, SurfaceError> {
    v.check_len(tri.tets())
        .map_err(|e| SurfaceError::NotAdmissible(e.to_string()))?;
    let system = standard_matching_system::<S>(tri);
    let report = is_admissible(&v.0, &system)
        .map_err(|e| SurfaceError::NotAdmissible(e.to_string()))?;
    if !report.is_admissible() {
        let mut parts = Vec::new();
        if !report.nonnegative {
            parts.push(format!("negative coordinates {:?}", report.negative_indices));
        }
        if !report.matching {
            parts.push(format!("failing rows {:?}", report.failing_rows));
        }
        if !report.quad_condition {
            parts.push(format!(
                "quad condition violated in tetrahedra {:?}",
                report.quad_violations
            ));
        }
        return Err(SurfaceError::NotAdmissible(parts.join("; ")));
    }

    let tets = tri.tets();
    let mut counts = vec![0u64; 7 * tets];
    for (col, x) in v.0.iter().enumerate() {
        counts[col] = x
            .to_u64()
            .ok_or(SurfaceError::CountOverflow { col })?;
    }
    let total: u64 = counts.iter().sum();
    if total > max_discs {
        return Err(SurfaceError::TooManyDiscs {
            total,
            cap: max_discs,
        });
    }

    // disc instances, in (tet, slot, copy) order
    let mut discs = Vec::with_capacity(total as usize);
    let mut first_disc = vec![0usize; 7 * tets];
    for t in 0..tets {
        for slot in 0..7 {
            first_disc[7 * t + slot] = discs.len();
            for copy in 0..counts[7 * t + slot] {
                discs.push(Disc {
                    tet: t,
                    dtype: DiscType::from_slot(slot),
                    copy,
                });
            }
        }
    }
    let disc_id = |t: usize, dtype: DiscType, copy: u64| -> usize {
        first_disc[7 * t + dtype.slot()] + copy as usize
    };

    // stacking order along each (tet, edge) incidence, from the lower vertex
    let mut edge_orderings: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let mut corner_pos: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for t in 0..tets {
        let quad_type = (0..3).find(|&q| counts[std_quad(t, q)] > 0);
        for e in 0..6 {
            let (lo, hi) = EDGE_VERTS[e];
            let n_lo = counts[std_tri(t, lo)];
            let n_hi = counts[std_tri(t, hi)];
            let crossing_quad = quad_type.filter(|&q| DiscType::Quad(q).meets_edge(e));
            let n_q = crossing_quad.map_or(0, |q| counts[std_quad(t, q)]);
            let mut order = Vec::with_capacity((n_lo + n_q + n_hi) as usize);
            for c in 0..n_lo {
                order.push(disc_id(t, DiscType::Tri(lo), c));
            }
            if let Some(q) = crossing_quad {
                let (p0, p1) = quad_pair(q);
                let lo_on_pair = lo == p0 || lo == p1;
                for i in 0..n_q {
                    let c = if lo_on_pair { i } else { n_q - 1 - i };
                    order.push(disc_id(t, DiscType::Quad(q), c));
                }
            }
            for c in (0..n_hi).rev() {
                order.push(disc_id(t, DiscType::Tri(hi), c));
            }
            for (pos, &d) in order.iter().enumerate() {
                corner_pos.insert((d, e), pos as u64);
            }
            edge_orderings.insert((t, e), order);
        }
    }

    // intersection counts per edge class, equal across incidences by the
    // matching equations; assert it
    let mut edge_points = Vec::with_capacity(tri.edge_classes().len());
    for ec in tri.edge_classes() {
        let mut counts_seen: Option<u64> = None;
        for inc in &ec.incidences {
            let n = edge_orderings[&(inc.tet, inc.edge)].len() as u64;
            match counts_seen {
                None => counts_seen = Some(n),
                Some(m) => {
                    if m != n {
                        return Err(SurfaceError::Internal(format!(
                            "edge crossing counts differ across incidences of a class: {m} vs {n}"
                        )));
                    }
                }
            }
        }
        edge_points.push(counts_seen.unwrap_or(0));
    }

    // arcs: nested families per (face, arc type), glued across interior faces
    let mut arcs: Vec<Arc> = Vec::new();
    let side_at = |t: usize, f: usize, cut: usize, depth: u64| -> ArcSide {
        let n_tri = counts[std_tri(t, cut)];
        let (disc, dtype) = if depth < n_tri {
            (disc_id(t, DiscType::Tri(cut), depth), DiscType::Tri(cut))
        } else {
            // quad sheets nest away from the separated pair's side: counted
            // from a cut vertex on that side the copies ascend, from the
            // other side they descend
            let q = quad_for_arc(f, cut);
            let n_q = counts[std_quad(t, q)];
            let (p0, p1) = quad_pair(q);
            let copy = if cut == p0 || cut == p1 {
                depth - n_tri
            } else {
                n_q - 1 - (depth - n_tri)
            };
            (disc_id(t, DiscType::Quad(q), copy), DiscType::Quad(q))
        };
        let cycle = dtype.boundary_cycle();
        let cycle_pos = cycle
            .iter()
            .position(|&(_, face)| face == f)
            .expect("disc has an arc in the face");
        ArcSide {
            disc,
            cycle_pos,
            tet: t,
            face: f,
            cut_vertex: cut,
            depth,
        }
    };
    for (t, f) in tri.faces() {
        for &cut in &FACE_VERTS[f] {
            let n_here = counts[std_tri(t, cut)] + counts[std_quad(t, quad_for_arc(f, cut))];
            match tri.gluing(t, f) {
                Some(g) => {
                    let cut2 = g.perm.apply(cut);
                    let n_there =
                        counts[std_tri(g.tet, cut2)] + counts[std_quad(g.tet, quad_for_arc(g.face, cut2))];
                    if n_here != n_there {
                        return Err(SurfaceError::Internal(
                            "arc counts differ across a matched face".into(),
                        ));
                    }
                    for depth in 0..n_here {
                        arcs.push(Arc {
                            sides: vec![
                                side_at(t, f, cut, depth),
                                side_at(g.tet, g.face, cut2, depth),
                            ],
                        });
                    }
                }
                None => {
                    for depth in 0..n_here {
                        arcs.push(Arc {
                            sides: vec![side_at(t, f, cut, depth)],
                        });
                    }
                }
            }
        }
    }

    // components by union-find over glued discs
    let mut uf = UnionFind::new(discs.len());
    for arc in &arcs {
        if arc.sides.len() == 2 {
            uf.union(arc.sides[0].disc, arc.sides[1].disc);
        }
    }
    let mut component_of_disc = vec![usize::MAX; discs.len()];
    let mut component_count = 0;
    for d in 0..discs.len() {
        let root = uf.find(d);
        if component_of_disc[root] == usize::MAX {
            component_of_disc[root] = component_count;
            component_count += 1;
        }
        component_of_disc[d] = component_of_disc[root];
    }
    let component_of_arc: Vec<usize> = arcs
        .iter()
        .map(|a| {
            let c = component_of_disc[a.sides[0].disc];
            debug_assert!(a
                .sides
                .iter()
                .all(|s| component_of_disc[s.disc] == c));
            c
        })
        .collect();

    // orientation propagation: discs 2-coloured so that glued arcs are
    // traversed oppositely in the arc's own frame
    let mut orientable = vec![true; component_count];
    let mut colour: Vec<i8> = vec![0; discs.len()];
    // adjacency lists through interior arcs
    let mut adj: Vec<Vec<(usize, i8)>> = vec![Vec::new(); discs.len()];
    for arc in &arcs {
        if arc.sides.len() != 2 {
            continue;
        }
        let (sa, sb) = (&arc.sides[0], &arc.sides[1]);
        let ta = traversal_sign(&discs[sa.disc], sa);
        let tb = traversal_sign(&discs[sb.disc], sb);
        // arc endpoints: local edges {v,wa} -> {v,wb} with wa < wb on side a;
        // flip when the gluing reverses that order on side b
        let g = tri
            .gluing(sa.tet, sa.face)
            .expect("two-sided arc sits in a glued face");
        let (wa, wb) = arc_frame(&discs[sa.disc], sa);
        let flip = g.perm.apply(wa) > g.perm.apply(wb);
        // o_a * ta = - o_b * tb * (flip ? -1 : 1)
        let rel = -ta * tb * if flip { -1 } else { 1 };
        adj[sa.disc].push((sb.disc, rel));
        adj[sb.disc].push((sa.disc, rel));
    }
    for d0 in 0..discs.len() {
        if colour[d0] != 0 {
            continue;
        }
        colour[d0] = 1;
        let mut stack = vec![d0];
        while let Some(d) = stack.pop() {
            for &(e, rel) in &adj[d] {
                let want = colour[d] * rel;
                if colour[e] == 0 {
                    colour[e] = want;
                    stack.push(e);
                } else if colour[e] != want {
                    orientable[component_of_disc[e]] = false;
                }
            }
        }
    }

    let surface = NormalSurface {
        tets,
        counts,
        discs,
        arcs,
        edge_points,
        edge_orderings,
        component_of_disc,
        component_count,
        component_of_arc,
        orientable,
        corner_pos,
    };
    surface.check_corner_components(tri)?;
    Ok(surface)
}

/// +1 when the disc's boundary cycle traverses the arc from its lower-vertex
/// end to its higher-vertex end.
fn traversal_sign(disc: &Disc, side: &ArcSide) -> i8 {
    let cycle = disc.dtype.boundary_cycle();
    let n = cycle.len();
    let e_from = cycle[side.cycle_pos].0;
    let e_to = cycle[(side.cycle_pos + 1) % n].0;
    let w_from = other_end(e_from, side.cut_vertex);
    let w_to = other_end(e_to, side.cut_vertex);
    if w_from < w_to {
        1
    } else {
        -1
    }
}

/// The two non-cut vertices of the arc's corner edges, in ascending order.
fn arc_frame(disc: &Disc, side: &ArcSide) -> (usize, usize) {
    let cycle = disc.dtype.boundary_cycle();
    let n = cycle.len();
    let e_from = cycle[side.cycle_pos].0;
    let e_to = cycle[(side.cycle_pos + 1) % n].0;
    let a = other_end(e_from, side.cut_vertex);
    let b = other_end(e_to, side.cut_vertex);
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn other_end(edge: usize, v: usize) -> usize {
    let (a, b) = EDGE_VERTS[edge];
    if a == v {
        b
    } else {
        a
    }
}

impl NormalSurface {
    pub fn is_empty(&self) -> bool {
        self.discs.is_empty()
    }

    /// Surface 0-cell (edge class, position along the class orientation) of
    /// a disc's crossing of a local edge.
    fn corner_cell(&self, tri: &Triangulation, disc: usize, edge: usize) -> (usize, u64) {
        let t = self.discs[disc].tet;
        let class = tri.edge_class_of(t, edge);
        let local = self.corner_pos[&(disc, edge)];
        let ec = &tri.edge_classes()[class];
        let idx = ec
            .incidences
            .iter()
            .position(|i| i.tet == t && i.edge == edge)
            .expect("incidence listed in its class");
        let n = self.edge_points[class];
        let global = if ec.chosen_forward(idx) {
            local
        } else {
            n - 1 - local
        };
        (class, global)
    }

    /// Component of each corner point, asserting agreement across all
    /// incidences of every edge class.
    fn check_corner_components(&self, tri: &Triangulation) -> Result<(), SurfaceError> {
        for (cid, ec) in tri.edge_classes().iter().enumerate() {
            let n = self.edge_points[cid];
            for pos in 0..n {
                let mut seen: Option<usize> = None;
                for (idx, inc) in ec.incidences.iter().enumerate() {
                    let order = &self.edge_orderings[&(inc.tet, inc.edge)];
                    let local = if ec.chosen_forward(idx) { pos } else { n - 1 - pos };
                    let comp = self.component_of_disc[order[local as usize]];
                    match seen {
                        None => seen = Some(comp),
                        Some(c) => {
                            if c != comp {
                                return Err(SurfaceError::Internal(format!(
                                    "corner point ({cid},{pos}) meets two components"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Boundary curves as closed chains of boundary arcs. Each entry is the
    /// arc list of one curve with traversal directions.
    fn trace_boundary_curves(
        &self,
        tri: &Triangulation,
    ) -> Result<Vec<Vec<(usize, bool)>>, SurfaceError> {
        // endpoints of each boundary arc as surface 0-cells
        let mut cell_arcs: BTreeMap<(usize, u64), Vec<(usize, usize)>> = BTreeMap::new();
        let mut endpoints: Vec<Option<[(usize, u64); 2]>> = vec![None; self.arcs.len()];
        for (ai, arc) in self.arcs.iter().enumerate() {
            if !arc.is_boundary() {
                continue;
            }
            let side = &arc.sides[0];
            let disc = &self.discs[side.disc];
            let cycle = disc.dtype.boundary_cycle();
            let n = cycle.len();
            let e_from = cycle[side.cycle_pos].0;
            let e_to = cycle[(side.cycle_pos + 1) % n].0;
            let p0 = self.corner_cell(tri, side.disc, e_from);
            let p1 = self.corner_cell(tri, side.disc, e_to);
            endpoints[ai] = Some([p0, p1]);
            cell_arcs.entry(p0).or_default().push((ai, 0));
            cell_arcs.entry(p1).or_default().push((ai, 1));
        }
        for (cell, ends) in &cell_arcs {
            if ends.len() != 2 {
                return Err(SurfaceError::Internal(format!(
                    "boundary corner {cell:?} has {} arc ends, expected 2",
                    ends.len()
                )));
            }
        }

        let mut used = vec![false; self.arcs.len()];
        let mut curves = Vec::new();
        for start in 0..self.arcs.len() {
            if used[start] || endpoints[start].is_none() {
                continue;
            }
            let mut curve: Vec<(usize, bool)> = Vec::new();
            let mut ai = start;
            let mut enter = 0usize; // endpoint index we enter through
            loop {
                used[ai] = true;
                // traverse from `enter` to the other endpoint
                curve.push((ai, enter == 0));
                let exit_cell = endpoints[ai].unwrap()[1 - enter];
                let both = &cell_arcs[&exit_cell];
                let (next, next_end) = both
                    .iter()
                    .copied()
                    .find(|&(a, e)| (a, e) != (ai, 1 - enter))
                    .ok_or_else(|| SurfaceError::Internal("open boundary chain".into()))?;
                if next == start && next_end == 0 && used[next] {
                    break;
                }
                if used[next] {
                    return Err(SurfaceError::Internal("boundary chain crossing".into()));
                }
                ai = next;
                enter = next_end;
            }
            curves.push(curve);
        }
        Ok(curves)
    }

    /// Per-component invariants.
    pub fn invariants<S: Scalar>(
        &self,
        tri: &Triangulation,
    ) -> Result<SurfaceInvariants<S>, SurfaceError> {
        let mut vertices = vec![0i64; self.component_count];
        for (cid, ec) in tri.edge_classes().iter().enumerate() {
            let n = self.edge_points[cid];
            if n == 0 {
                continue;
            }
            let inc = &ec.incidences[0];
            let order = &self.edge_orderings[&(inc.tet, inc.edge)];
            for &d in order.iter() {
                vertices[self.component_of_disc[d]] += 1;
            }
        }
        let mut arcs_per = vec![0i64; self.component_count];
        for &c in &self.component_of_arc {
            arcs_per[c] += 1;
        }
        let mut faces_per = vec![0i64; self.component_count];
        let mut vectors: Vec<Vec<S>> = vec![vec![S::zero(); 7 * self.tets]; self.component_count];
        for (d, disc) in self.discs.iter().enumerate() {
            let c = self.component_of_disc[d];
            faces_per[c] += 1;
            let col = 7 * disc.tet + disc.dtype.slot();
            vectors[c][col] = vectors[c][col].clone() + S::one();
        }
        let mut closed = vec![true; self.component_count];
        for (ai, arc) in self.arcs.iter().enumerate() {
            if arc.is_boundary() {
                closed[self.component_of_arc[ai]] = false;
            }
        }
        let curves = self.trace_boundary_curves(tri)?;
        let mut curve_count = vec![0usize; self.component_count];
        for curve in &curves {
            let c = self.component_of_arc[curve[0].0];
            curve_count[c] += 1;
        }

        let mut components = Vec::with_capacity(self.component_count);
        for c in 0..self.component_count {
            let euler = vertices[c] - arcs_per[c] + faces_per[c];
            let vector = StandardVector(vectors[c].clone());
            let size = vector.0.iter().filter(|x| !x.is_zero()).count();
            components.push(ComponentData {
                vector,
                euler,
                orientable: self.orientable[c],
                closed: closed[c],
                weight: vertices[c] as u64,
                size,
                boundary_curves: curve_count[c],
            });
        }
        let total_weight = self.edge_points.iter().sum();
        let total_euler = components.iter().map(|c| c.euler).sum();
        Ok(SurfaceInvariants {
            components,
            total_weight,
            total_euler,
        })
    }

    /// Homology classes of the boundary curves: each curve is pushed to a
    /// cellular 1-cycle of the boundary complex (sliding every normal arc to
    /// the vertex it cuts off) and reduced against the component's homology
    /// basis.
    pub fn boundary_curves<S: Scalar>(
        &self,
        tri: &Triangulation,
        boundary: &BoundarySurface<S>,
    ) -> Result<Vec<BoundaryCurveClass<S>>, SurfaceError> {
        let curves = self.trace_boundary_curves(tri)?;
        let mut out = Vec::new();
        for curve in &curves {
            let mut coeffs: BTreeMap<usize, i64> = BTreeMap::new();
            let mut bcomp: Option<usize> = None;
            for &(ai, forward) in curve {
                let side = &self.arcs[ai].sides[0];
                let comp = boundary
                    .component_of_face(side.tet, side.face)
                    .ok_or_else(|| {
                        SurfaceError::Internal("boundary arc outside the boundary".into())
                    })?;
                match bcomp {
                    None => bcomp = Some(comp),
                    Some(c) => {
                        if c != comp {
                            return Err(SurfaceError::Internal(
                                "curve crosses boundary components".into(),
                            ));
                        }
                    }
                }
                let disc = &self.discs[side.disc];
                let cycle = disc.dtype.boundary_cycle();
                let n = cycle.len();
                let e_from = cycle[side.cycle_pos].0;
                let e_to = cycle[(side.cycle_pos + 1) % n].0;
                let (e_start, e_end) = if forward {
                    (e_from, e_to)
                } else {
                    (e_to, e_from)
                };
                // push each endpoint to the tail vertex of its edge class:
                // the segment from the tail to the cut vertex is the whole
                // edge when the cut vertex is the head, and empty otherwise
                for (e_local, sign) in [(e_start, 1i64), (e_end, -1i64)] {
                    let class = tri.edge_class_of(side.tet, e_local);
                    let ec = &tri.edge_classes()[class];
                    let idx = ec
                        .incidences
                        .iter()
                        .position(|i| i.tet == side.tet && i.edge == e_local)
                        .expect("incidence listed in its class");
                    let (_, head) = ec.chosen_ends(idx);
                    if side.cut_vertex == head {
                        *coeffs.entry(class).or_insert(0) += sign;
                    }
                }
            }
            let bcomp = bcomp.expect("curves are nonempty");
            let coeffs_s: BTreeMap<usize, S> = coeffs
                .into_iter()
                .filter(|(_, v)| *v != 0)
                .map(|(k, v)| (k, S::from_i64(v).unwrap()))
                .collect();
            let class = boundary.class_of_cycle(bcomp, &coeffs_s)?;
            out.push(BoundaryCurveClass {
                surface_component: self.component_of_arc[curve[0].0],
                boundary_component: bcomp,
                class,
            });
        }
        Ok(out)
    }
}

/// Essential disc test for one component: connected (a component), Euler
/// characteristic 1, exactly one boundary curve, and that curve essential in
/// its torus boundary component. A non-torus boundary component is
/// unsupported.
pub fn is_essential_disc<S: Scalar>(
    component: usize,
    invariants: &SurfaceInvariants<S>,
    curves: &[BoundaryCurveClass<S>],
    boundary: &BoundarySurface<S>,
) -> Result<bool, SurfaceError> {
    let data = &invariants.components[component];
    if data.closed || data.euler != 1 || data.boundary_curves != 1 {
        return Ok(false);
    }
    let curve = curves
        .iter()
        .find(|c| c.surface_component == component)
        .ok_or_else(|| SurfaceError::Internal("missing boundary curve".into()))?;
    if !boundary.components[curve.boundary_component].is_torus() {
        return Err(SurfaceError::UnsupportedBoundary {
            component: curve.boundary_component,
        });
    }
    // on a torus a simple closed curve is nullhomotopic iff nullhomologous
    Ok(!curve.class.is_zero() && data.orientable)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::boundary_analysis;
    use crate::coordinates::{haken_sum, quad_to_standard, vertex_link, CoordKind, QuadVector};
    use crate::parse_triangulation;

    const LST1: &str = "tets 1\nglue 0 0 0 1 1230\n";
    const S3_DOUBLE: &str =
        "tets 2\nglue 0 0 1 0 0123\nglue 0 1 1 1 0123\nglue 0 2 1 2 0123\nglue 0 3 1 3 0123\n";

    #[test]
    fn zero_vector_realizes_the_empty_surface() {
        let t = parse_triangulation(LST1).unwrap();
        let s = realize(&StandardVector::<i64>::zero(1), &t, DEFAULT_MAX_DISCS).unwrap();
        assert!(s.is_empty());
        assert_eq!(s.component_count, 0);
        let inv = s.invariants::<i64>(&t).unwrap();
        assert!(inv.components.is_empty());
        assert_eq!(inv.total_weight, 0);
    }

    #[test]
    fn interior_vertex_link_is_a_sphere() {
        let t = parse_triangulation(S3_DOUBLE).unwrap();
        for class in 0..t.vertex_classes().len() {
            let link = vertex_link::<i64>(&t, class);
            let s = realize(&link, &t, DEFAULT_MAX_DISCS).unwrap();
            let inv = s.invariants::<i64>(&t).unwrap();
            assert_eq!(inv.components.len(), 1);
            let c = &inv.components[0];
            assert_eq!(c.euler, 2);
            assert!(c.closed);
            assert!(c.orientable);
            assert_eq!(c.boundary_curves, 0);
            assert_eq!(c.vector, link);
        }
    }

    #[test]
    fn boundary_vertex_link_is_a_disc_with_null_boundary() {
        let t = parse_triangulation(LST1).unwrap();
        let link = vertex_link::<i64>(&t, 0);
        let s = realize(&link, &t, DEFAULT_MAX_DISCS).unwrap();
        let inv = s.invariants::<i64>(&t).unwrap();
        assert_eq!(inv.components.len(), 1);
        let c = &inv.components[0];
        assert_eq!(c.euler, 1);
        assert!(!c.closed);
        assert_eq!(c.boundary_curves, 1);
        assert!(c.orientable);
        let b = boundary_analysis::<i64>(&t);
        let curves = s.boundary_curves(&t, &b).unwrap();
        assert_eq!(curves.len(), 1);
        assert!(curves[0].class.is_zero());
        // and therefore not an essential disc
        assert!(!is_essential_disc(0, &inv, &curves, &b).unwrap());
    }

    #[test]
    fn disjoint_links_realize_two_components() {
        let t = parse_triangulation(S3_DOUBLE).unwrap();
        let l0 = vertex_link::<i64>(&t, 0);
        let l1 = vertex_link::<i64>(&t, 1);
        let sum = haken_sum(CoordKind::Standard, &l0.0, &l1.0).unwrap();
        let s = realize(&StandardVector(sum), &t, DEFAULT_MAX_DISCS).unwrap();
        let inv = s.invariants::<i64>(&t).unwrap();
        assert_eq!(inv.components.len(), 2);
        for c in &inv.components {
            assert_eq!(c.euler, 2);
        }
    }

    #[test]
    fn lst1_has_an_essential_quad_disc() {
        let t = parse_triangulation(LST1).unwrap();
        let b = boundary_analysis::<i64>(&t);
        let mut found_disc = false;
        let mut seen = Vec::new();
        for q in 0..3 {
            let mut qv = QuadVector::<i64>::zero(1);
            qv.0[q] = 1;
            let sv = quad_to_standard(&qv, &t).unwrap();
            let s = realize(&sv, &t, DEFAULT_MAX_DISCS).unwrap();
            let inv = s.invariants::<i64>(&t).unwrap();
            assert_eq!(inv.components.len(), 1);
            let curves = s.boundary_curves(&t, &b).unwrap();
            let c = &inv.components[0];
            seen.push((c.euler, c.orientable, c.boundary_curves));
            if is_essential_disc(0, &inv, &curves, &b).unwrap() {
                found_disc = true;
                assert_eq!(c.euler, 1);
                assert!(c.orientable);
                assert_eq!(c.boundary_curves, 1);
            }
        }
        assert!(found_disc, "no essential disc among quad units: {seen:?}");
    }

    #[test]
    fn weight_and_euler_are_additive_for_compatible_sums() {
        let t = parse_triangulation(LST1).unwrap();
        let link = vertex_link::<i64>(&t, 0);
        let mut qv = QuadVector::<i64>::zero(1);
        qv.0[0] = 1;
        let sv = quad_to_standard(&qv, &t).unwrap();
        let sum = haken_sum(CoordKind::Standard, &link.0, &sv.0).unwrap();
        let s1 = realize(&link, &t, DEFAULT_MAX_DISCS).unwrap();
        let s2 = realize(&sv, &t, DEFAULT_MAX_DISCS).unwrap();
        let s12 = realize(&StandardVector(sum), &t, DEFAULT_MAX_DISCS).unwrap();
        let i1 = s1.invariants::<i64>(&t).unwrap();
        let i2 = s2.invariants::<i64>(&t).unwrap();
        let i12 = s12.invariants::<i64>(&t).unwrap();
        assert_eq!(i12.total_weight, i1.total_weight + i2.total_weight);
        assert_eq!(i12.total_euler, i1.total_euler + i2.total_euler);
    }

    #[test]
    fn disc_counts_round_trip() {
        let t = parse_triangulation(LST1).unwrap();
        let link = vertex_link::<i64>(&t, 0);
        let mut qv = QuadVector::<i64>::zero(1);
        qv.0[1] = 2;
        let sv = quad_to_standard(&qv, &t).unwrap();
        let sum = StandardVector(haken_sum(CoordKind::Standard, &link.0, &sv.0).unwrap());
        let s = realize(&sum, &t, DEFAULT_MAX_DISCS).unwrap();
        let mut recount = vec![0i64; 7];
        for d in &s.discs {
            recount[7 * d.tet + d.dtype.slot()] += 1;
        }
        assert_eq!(recount, sum.0);
    }

    #[test]
    fn inadmissible_vectors_are_rejected() {
        let t = parse_triangulation(LST1).unwrap();
        let mut v = StandardVector::<i64>::zero(1);
        v.0[4] = 1;
        v.0[5] = 1; // two quad types
        assert!(matches!(
            realize(&v, &t, DEFAULT_MAX_DISCS),
            Err(SurfaceError::NotAdmissible(_))
        ));
        let mut w = StandardVector::<i64>::zero(1);
        w.0[0] = -1;
        assert!(matches!(
            realize(&w, &t, DEFAULT_MAX_DISCS),
            Err(SurfaceError::NotAdmissible(_))
        ));
        // matching violation: a lone triangle in a glued corner
        let mut m = StandardVector::<i64>::zero(1);
        m.0[0] = 1;
        let r = realize(&m, &t, DEFAULT_MAX_DISCS);
        assert!(matches!(r, Err(SurfaceError::NotAdmissible(_))));
    }

    #[test]
    fn disc_cap_is_enforced() {
        let t = parse_triangulation(S3_DOUBLE).unwrap();
        let link = vertex_link::<i64>(&t, 0);
        assert!(matches!(
            realize(&link, &t, 1),
            Err(SurfaceError::TooManyDiscs { .. })
        ));
    }
}
