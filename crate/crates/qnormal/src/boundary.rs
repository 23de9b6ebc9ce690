//! The boundary surface of a triangulation: closed surface components with
//! Euler characteristic, orientability, and first homology presented so that
//! boundary 1-cycles can be reduced to explicit homology coordinates.
//!
//! Cells are intrinsic to the boundary complex: 2-cells are the unglued
//! faces, 1-cells the boundary edge classes (each of which joins exactly two
//! boundary face sides), 0-cells the orbits of face corners under the edge
//! end identifications.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::linalg::{kernel_lattice_basis, smith_normal_form, solve_integer};
use crate::num::Scalar;
use crate::tet::edge_index;
use crate::triangulation::Triangulation;

#[derive(Debug, Error)]
pub enum BoundaryError {
    #[error("chain is not a 1-cycle of the boundary complex")]
    NotACycle,
    #[error("cycle does not lie in the kernel lattice (internal error)")]
    SolveFailure,
    #[error("edge class {0} is not a boundary edge of the requested component")]
    ForeignEdge(usize),
}

/// One closed component of the boundary surface.
#[derive(Clone, Debug)]
pub struct BoundaryComponent {
    pub faces: Vec<(usize, usize)>,
    pub edge_classes: Vec<usize>,
    pub vertex_count: usize,
    pub euler: i64,
    pub orientable: bool,
}

impl BoundaryComponent {
    pub fn is_torus(&self) -> bool {
        self.euler == 0 && self.orientable
    }
}

/// A homology class of a boundary 1-cycle: coordinates over the free part of
/// H1 of its component, plus torsion coordinates with their orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyClass<S> {
    pub free: Vec<S>,
    pub torsion: Vec<(S, S)>,
}

impl<S: Scalar> HomologyClass<S> {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(|x| x.is_zero()) && self.torsion.iter().all(|(c, _)| c.is_zero())
    }
}

struct ComponentHomology<S> {
    edge_ids: Vec<usize>,
    kernel: Vec<Vec<S>>, // lattice basis of 1-cycles, one vector per basis element
    u: Vec<Vec<S>>,      // row transform of the SNF of the relation matrix
    diag: Vec<S>,
}

/// Boundary structure of a triangulation, with per-component homology data.
pub struct BoundarySurface<S: Scalar> {
    pub components: Vec<BoundaryComponent>,
    face_component: BTreeMap<(usize, usize), usize>,
    edge_component: BTreeMap<usize, usize>,
    homology: Vec<ComponentHomology<S>>,
}

/// Decompose the boundary into closed surface components and set up their
/// homology presentations. Closed triangulations yield no components.
pub fn boundary_analysis<S: Scalar>(tri: &Triangulation) -> BoundarySurface<S> {
    let bfaces: Vec<(usize, usize)> = tri.boundary_faces().to_vec();
    let face_idx: BTreeMap<(usize, usize), usize> = bfaces
        .iter()
        .enumerate()
        .map(|(i, &tf)| (tf, i))
        .collect();

    // boundary edge classes with their two face-side ends
    let boundary_edges: Vec<usize> = (0..tri.edge_classes().len())
        .filter(|&i| !tri.edge_classes()[i].is_interior())
        .collect();

    // components: union-find over boundary faces through edge ends
    let mut face_uf = UnionFind::new(bfaces.len());
    for &e in &boundary_edges {
        let ends = [
            tri.edge_classes()[e].oriented_end(0),
            tri.edge_classes()[e].oriented_end(1),
        ];
        let a = face_idx[&(ends[0].tet, ends[0].face)];
        let b = face_idx[&(ends[1].tet, ends[1].face)];
        face_uf.union(a, b);
    }

    // intrinsic 0-cells: orbits of (boundary face, corner) under end matching
    let corner_key = |fi: usize, v: usize| 3 * fi + v; // v indexed within face verts
    let vert_pos = |f: usize, v: usize| -> usize {
        crate::tet::FACE_VERTS[f]
            .iter()
            .position(|&x| x == v)
            .expect("vertex lies in face")
    };
    let mut corner_uf = UnionFind::new(3 * bfaces.len());
    for &e in &boundary_edges {
        let ends = [
            tri.edge_classes()[e].oriented_end(0),
            tri.edge_classes()[e].oriented_end(1),
        ];
        let fa = face_idx[&(ends[0].tet, ends[0].face)];
        let fb = face_idx[&(ends[1].tet, ends[1].face)];
        let ta = vert_pos(ends[0].face, ends[0].tail);
        let tb = vert_pos(ends[1].face, ends[1].tail);
        let ha = vert_pos(ends[0].face, ends[0].head);
        let hb = vert_pos(ends[1].face, ends[1].head);
        corner_uf.union(corner_key(fa, ta), corner_key(fb, tb));
        corner_uf.union(corner_key(fa, ha), corner_key(fb, hb));
    }

    // group faces into components, deterministically by smallest face
    let mut comp_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut components: Vec<BoundaryComponent> = Vec::new();
    let mut face_component = BTreeMap::new();
    for (fi, &tf) in bfaces.iter().enumerate() {
        let root = face_uf.find(fi);
        let cid = *comp_of_root.entry(root).or_insert_with(|| {
            components.push(BoundaryComponent {
                faces: Vec::new(),
                edge_classes: Vec::new(),
                vertex_count: 0,
                euler: 0,
                orientable: true,
            });
            components.len() - 1
        });
        components[cid].faces.push(tf);
        face_component.insert(tf, cid);
    }
    let mut edge_component = BTreeMap::new();
    for &e in &boundary_edges {
        let ends = tri.edge_classes()[e].ends.unwrap();
        let cid = face_component[&(ends[0].tet, ends[0].face)];
        components[cid].edge_classes.push(e);
        edge_component.insert(e, cid);
    }

    // vertex counts per component
    let mut orbit_comp: BTreeMap<usize, usize> = BTreeMap::new();
    for (fi, &tf) in bfaces.iter().enumerate() {
        for v in 0..3 {
            orbit_comp.insert(corner_uf.find(corner_key(fi, v)), face_component[&tf]);
        }
    }
    for &cid in orbit_comp.values() {
        components[cid].vertex_count += 1;
    }
    for comp in components.iter_mut() {
        comp.euler =
            comp.vertex_count as i64 - comp.edge_classes.len() as i64 + comp.faces.len() as i64;
    }

    // orientation signs of each end: +1 when the ascending-vertex cycle of
    // the face traverses the edge in class direction
    let end_sign = |e: usize, which: usize| -> (usize, i64) {
        let end = tri.edge_classes()[e].oriented_end(which);
        let fi = face_idx[&(end.tet, end.face)];
        let verts = crate::tet::FACE_VERTS[end.face];
        let (v0, v1, v2) = (verts[0], verts[1], verts[2]);
        for (x, y) in [(v0, v1), (v1, v2), (v2, v0)] {
            if edge_index(x, y) == edge_index(end.tail, end.head) {
                let sign = if (end.tail, end.head) == (x, y) { 1 } else { -1 };
                return (fi, sign);
            }
        }
        unreachable!("end edge not found in its face")
    };

    // orientability: 2-colour faces so the two sides of every edge traverse
    // it oppositely
    let mut colour: Vec<i64> = vec![0; bfaces.len()];
    for start in 0..bfaces.len() {
        if colour[start] != 0 {
            continue;
        }
        colour[start] = 1;
        let mut stack = vec![start];
        while let Some(fi) = stack.pop() {
            for &e in &boundary_edges {
                let (fa, sa) = end_sign(e, 0);
                let (fb, sb) = end_sign(e, 1);
                let (other, want) = if fa == fi {
                    (fb, -colour[fi] * sa * sb)
                } else if fb == fi {
                    (fa, -colour[fi] * sa * sb)
                } else {
                    continue;
                };
                if colour[other] == 0 {
                    colour[other] = want;
                    stack.push(other);
                } else if colour[other] != want {
                    let cid = face_component[&bfaces[fi]];
                    components[cid].orientable = false;
                }
            }
        }
    }

    // homology presentation per component
    let mut homology = Vec::new();
    for comp in components.iter() {
        let edge_ids: Vec<usize> = comp.edge_classes.clone();
        let edge_pos: BTreeMap<usize, usize> =
            edge_ids.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        // local 0-cells
        let mut orbit_ids: Vec<usize> = Vec::new();
        for &tf in &comp.faces {
            let fi = face_idx[&tf];
            for v in 0..3 {
                let root = corner_uf.find(corner_key(fi, v));
                if !orbit_ids.contains(&root) {
                    orbit_ids.push(root);
                }
            }
        }
        orbit_ids.sort_unstable();
        let orbit_pos = |root: usize| orbit_ids.iter().position(|&r| r == root).unwrap();

        // d1: 0-cells x 1-cells
        let mut d1 = vec![vec![S::zero(); edge_ids.len()]; orbit_ids.len()];
        for (col, &e) in edge_ids.iter().enumerate() {
            let end = tri.edge_classes()[e].oriented_end(0);
            let fi = face_idx[&(end.tet, end.face)];
            let tail = corner_uf.find(corner_key(fi, vert_pos(end.face, end.tail)));
            let head = corner_uf.find(corner_key(fi, vert_pos(end.face, end.head)));
            let tp = orbit_pos(tail);
            let hp = orbit_pos(head);
            d1[hp][col] = d1[hp][col].clone() + S::one();
            d1[tp][col] = d1[tp][col].clone() - S::one();
        }

        // d2: 1-cells x 2-cells
        let mut d2 = vec![vec![S::zero(); comp.faces.len()]; edge_ids.len()];
        for (fcol, &tf) in comp.faces.iter().enumerate() {
            let verts = crate::tet::FACE_VERTS[tf.1];
            let (v0, v1, v2) = (verts[0], verts[1], verts[2]);
            for (x, y) in [(v0, v1), (v1, v2), (v2, v0)] {
                let e = tri.edge_class_of(tf.0, edge_index(x, y));
                let row = edge_pos[&e];
                // the end of e sitting on this face side fixes the sign
                let ends = [
                    tri.edge_classes()[e].oriented_end(0),
                    tri.edge_classes()[e].oriented_end(1),
                ];
                let end = ends
                    .iter()
                    .find(|end| {
                        (end.tet, end.face) == tf
                            && edge_index(end.tail, end.head) == edge_index(x, y)
                    })
                    .expect("boundary face side matches an edge end");
                let sign = if (end.tail, end.head) == (x, y) {
                    S::one()
                } else {
                    -S::one()
                };
                d2[row][fcol] = d2[row][fcol].clone() + sign;
            }
        }

        // kernel lattice of d1, then present H1 = ker d1 / im d2
        let kernel = kernel_lattice_basis(&d1, edge_ids.len());
        let kmat: Vec<Vec<S>> = (0..edge_ids.len())
            .map(|r| kernel.iter().map(|k| k[r].clone()).collect())
            .collect();
        let mut y_cols: Vec<Vec<S>> = Vec::new();
        for fcol in 0..comp.faces.len() {
            let b: Vec<S> = (0..edge_ids.len()).map(|r| d2[r][fcol].clone()).collect();
            let y = solve_integer(&kmat, kernel.len(), &b)
                .expect("face boundaries lie in the cycle lattice");
            y_cols.push(y);
        }
        let ymat: Vec<Vec<S>> = (0..kernel.len())
            .map(|r| y_cols.iter().map(|c| c[r].clone()).collect())
            .collect();
        let snf = smith_normal_form(&ymat, y_cols.len());
        homology.push(ComponentHomology {
            edge_ids,
            kernel,
            u: snf.u,
            diag: snf.diag,
        });
    }

    BoundarySurface {
        components,
        face_component,
        edge_component,
        homology,
    }
}

impl<S: Scalar> BoundarySurface<S> {
    pub fn component_of_face(&self, tet: usize, face: usize) -> Option<usize> {
        self.face_component.get(&(tet, face)).copied()
    }

    pub fn component_of_edge(&self, edge_class: usize) -> Option<usize> {
        self.edge_component.get(&edge_class).copied()
    }

    /// Reduce a boundary 1-cycle, given as coefficients on boundary edge
    /// classes (oriented by their class orientations), to homology
    /// coordinates in its component.
    pub fn class_of_cycle(
        &self,
        component: usize,
        coeffs: &BTreeMap<usize, S>,
    ) -> Result<HomologyClass<S>, BoundaryError> {
        let h = &self.homology[component];
        let mut c = vec![S::zero(); h.edge_ids.len()];
        for (&e, val) in coeffs {
            let pos = h
                .edge_ids
                .iter()
                .position(|&x| x == e)
                .ok_or(BoundaryError::ForeignEdge(e))?;
            c[pos] = val.clone();
        }
        let kmat: Vec<Vec<S>> = (0..h.edge_ids.len())
            .map(|r| h.kernel.iter().map(|k| k[r].clone()).collect())
            .collect();
        let y = solve_integer(&kmat, h.kernel.len(), &c).ok_or(BoundaryError::NotACycle)?;
        // u * y, then split coordinates by the diagonal
        let mut free = Vec::new();
        let mut torsion = Vec::new();
        for i in 0..h.kernel.len() {
            let mut acc = S::zero();
            for (j, yj) in y.iter().enumerate() {
                acc = acc + h.u[i][j].clone() * yj.clone();
            }
            let d = h.diag.get(i).cloned().unwrap_or_else(S::zero);
            if d.is_zero() {
                free.push(acc);
            } else if !d.is_one() {
                torsion.push((acc.mod_floor(&d), d));
            }
        }
        Ok(HomologyClass { free, torsion })
    }

    /// Rank of the free part of H1 of a component.
    pub fn homology_rank(&self, component: usize) -> usize {
        let h = &self.homology[component];
        let nonzero_diag = h.diag.iter().filter(|d| !d.is_zero()).count();
        h.kernel.len() - nonzero_diag
    }
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
