//! Triangulations of compact 3-manifolds: face gluings, the derived edge and
//! vertex skeleton, orientability, and the gluing file format.
//!
//! File format (line oriented, `#` starts a comment):
//! ```text
//! tets N
//! glue A f B g p0p1p2p3
//! ```
//! Face `f` of tetrahedron `A` is glued to face `g` of tetrahedron `B` via
//! the vertex permutation sending label `i` to `p_i`. Each gluing appears
//! once; the involutive partner is implied, and checked if present.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::perm::Perm4;
use crate::tet::{edge_index, faces_at_edge, EDGE_VERTS};

#[derive(Debug, Error)]
pub enum TriangulationError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: index {value} out of range for {what} (max {max})")]
    IndexOutOfRange {
        line: usize,
        what: &'static str,
        value: usize,
        max: usize,
    },
    #[error("invalid permutation {images:?}: not a bijection on 0..3")]
    BadPermutation { images: [u8; 4] },
    #[error("line {line}: permutation {perm} does not map face {f} onto face {g}")]
    PermutationFaceMismatch {
        line: usize,
        perm: Perm4,
        f: usize,
        g: usize,
    },
    #[error("line {line}: face {face} of tetrahedron {tet} glued to itself")]
    SelfGluedFace { line: usize, tet: usize, face: usize },
    #[error("line {line}: face {face} of tetrahedron {tet} glued more than once")]
    DuplicateGluing { line: usize, tet: usize, face: usize },
    #[error("inverse gluing of face {face} of tetrahedron {tet} disagrees with its partner")]
    InvolutionMismatch { tet: usize, face: usize },
    #[error("edge {edge} of tetrahedron {tet} is identified with itself in reverse")]
    ReversedEdge { tet: usize, edge: usize },
    #[error("triangulation must contain at least one tetrahedron")]
    Empty,
}

/// One side of a face gluing: the target (tet, face) and the label map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gluing {
    pub tet: usize,
    pub face: usize,
    pub perm: Perm4,
}

/// A (tet, edge) incidence of an edge class. `forward` is true when the walk
/// direction of the class runs from the lower local vertex label to the
/// higher. The walk direction anchors the rotation sense around the edge;
/// the class's chosen orientation may reverse it (see [`EdgeClass`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeIncidence {
    pub tet: usize,
    pub edge: usize,
    pub forward: bool,
}

impl EdgeIncidence {
    /// Local (tail, head) labels of the walk direction at this incidence.
    pub fn walk_ends(&self) -> (usize, usize) {
        let (lo, hi) = EDGE_VERTS[self.edge];
        if self.forward {
            (lo, hi)
        } else {
            (hi, lo)
        }
    }
}

/// A boundary face side terminating the walk of a boundary edge class,
/// with the class-oriented local labels of the edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeEnd {
    pub tet: usize,
    pub face: usize,
    pub tail: usize,
    pub head: usize,
}

/// An edge of the triangulation: the orbit of (tet, edge) incidences under
/// the gluings, in walk order around the edge. Interior edges have a cyclic
/// incidence sequence; boundary edges a linear one with two boundary ends.
///
/// The walk fixes both a direction along the edge (tail = lower local label
/// of the lowest incidence) and the rotation anchor around it. The chosen
/// orientation defaults to the walk direction; `reversed` flips it without
/// touching the rotation anchor, so exactly the sign conventions derived
/// from the orientation change.
#[derive(Clone, Debug)]
pub struct EdgeClass {
    pub incidences: Vec<EdgeIncidence>,
    pub ends: Option<[EdgeEnd; 2]>,
    pub reversed: bool,
}

impl EdgeClass {
    pub fn is_interior(&self) -> bool {
        self.ends.is_none()
    }

    /// True when the chosen orientation at incidence `i` runs from the lower
    /// local vertex label to the higher.
    pub fn chosen_forward(&self, i: usize) -> bool {
        self.incidences[i].forward != self.reversed
    }

    /// Local (tail, head) labels of the chosen orientation at incidence `i`.
    pub fn chosen_ends(&self, i: usize) -> (usize, usize) {
        let (a, b) = self.incidences[i].walk_ends();
        if self.reversed {
            (b, a)
        } else {
            (a, b)
        }
    }

    /// A boundary end with (tail, head) in the chosen orientation.
    pub fn oriented_end(&self, which: usize) -> EdgeEnd {
        let mut end = self.ends.expect("boundary edge class")[which];
        if self.reversed {
            std::mem::swap(&mut end.tail, &mut end.head);
        }
        end
    }
}

/// A vertex of the triangulation: the orbit of (tet, vertex) corners.
#[derive(Clone, Debug)]
pub struct VertexClass {
    pub corners: Vec<(usize, usize)>,
    pub interior: bool,
}

/// A validated triangulation with its derived skeleton.
#[derive(Clone)]
pub struct Triangulation {
    tets: usize,
    gluings: Vec<[Option<Gluing>; 4]>,
    edge_classes: Vec<EdgeClass>,
    edge_class_of: Vec<[usize; 6]>,
    vertex_classes: Vec<VertexClass>,
    vertex_class_of: Vec<[usize; 4]>,
    boundary_faces: Vec<(usize, usize)>,
    orientation: Option<Vec<i8>>,
}

impl fmt::Debug for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Triangulation(t={}, edges={}, vertices={}, boundary_faces={})",
            self.tets,
            self.edge_classes.len(),
            self.vertex_classes.len(),
            self.boundary_faces.len()
        )
    }
}

impl Triangulation {
    /// Build and validate from an explicit gluing list
    /// `(tet, face, tet', face', perm)`, one entry per gluing.
    pub fn from_gluings(
        tets: usize,
        list: &[(usize, usize, usize, usize, Perm4)],
    ) -> Result<Self, TriangulationError> {
        if tets == 0 {
            return Err(TriangulationError::Empty);
        }
        let mut slots: Vec<[Option<Gluing>; 4]> = vec![[None; 4]; tets];
        // explicit lines first, then imply partners and cross-check
        for (line0, &(a, f, b, g, perm)) in list.iter().enumerate() {
            let line = line0 + 1;
            for (what, value, max) in [("tetrahedron", a, tets - 1), ("tetrahedron", b, tets - 1)] {
                if value > max {
                    return Err(TriangulationError::IndexOutOfRange {
                        line,
                        what,
                        value,
                        max,
                    });
                }
            }
            for (what, value) in [("face", f), ("face", g)] {
                if value > 3 {
                    return Err(TriangulationError::IndexOutOfRange {
                        line,
                        what,
                        value,
                        max: 3,
                    });
                }
            }
            if perm.apply(f) != g {
                return Err(TriangulationError::PermutationFaceMismatch { line, perm, f, g });
            }
            if (a, f) == (b, g) {
                return Err(TriangulationError::SelfGluedFace { line, tet: a, face: f });
            }
            let entry = Gluing { tet: b, face: g, perm };
            match slots[a][f] {
                None => slots[a][f] = Some(entry),
                Some(prev) if prev == entry => {
                    return Err(TriangulationError::DuplicateGluing { line, tet: a, face: f })
                }
                Some(_) => {
                    return Err(TriangulationError::DuplicateGluing { line, tet: a, face: f })
                }
            }
        }
        // imply the involutive partners; detect conflicts
        for t in 0..tets {
            for f in 0..4 {
                let Some(g) = slots[t][f] else { continue };
                let back = Gluing {
                    tet: t,
                    face: f,
                    perm: g.perm.inverse(),
                };
                match slots[g.tet][g.face] {
                    None => slots[g.tet][g.face] = Some(back),
                    Some(existing) if existing == back => {}
                    Some(_) => {
                        return Err(TriangulationError::InvolutionMismatch {
                            tet: g.tet,
                            face: g.face,
                        })
                    }
                }
            }
        }
        Self::build(tets, slots)
    }

    fn build(
        tets: usize,
        gluings: Vec<[Option<Gluing>; 4]>,
    ) -> Result<Self, TriangulationError> {
        let boundary_faces: Vec<(usize, usize)> = (0..tets)
            .flat_map(|t| (0..4).map(move |f| (t, f)))
            .filter(|&(t, f)| gluings[t][f].is_none())
            .collect();

        let (edge_classes, edge_class_of) = compute_edge_classes(tets, &gluings)?;
        let (vertex_classes, vertex_class_of) =
            compute_vertex_classes(tets, &gluings, &boundary_faces);
        let orientation = compute_orientation(tets, &gluings);

        Ok(Triangulation {
            tets,
            gluings,
            edge_classes,
            edge_class_of,
            vertex_classes,
            vertex_class_of,
            boundary_faces,
            orientation,
        })
    }

    pub fn tets(&self) -> usize {
        self.tets
    }

    pub fn gluing(&self, tet: usize, face: usize) -> Option<&Gluing> {
        self.gluings[tet][face].as_ref()
    }

    pub fn is_boundary_face(&self, tet: usize, face: usize) -> bool {
        self.gluings[tet][face].is_none()
    }

    pub fn boundary_faces(&self) -> &[(usize, usize)] {
        &self.boundary_faces
    }

    pub fn edge_classes(&self) -> &[EdgeClass] {
        &self.edge_classes
    }

    pub fn edge_class_of(&self, tet: usize, edge: usize) -> usize {
        self.edge_class_of[tet][edge]
    }

    pub fn vertex_classes(&self) -> &[VertexClass] {
        &self.vertex_classes
    }

    pub fn vertex_class_of(&self, tet: usize, vertex: usize) -> usize {
        self.vertex_class_of[tet][vertex]
    }

    /// Per-tetrahedron orientation signs, when the triangulation is
    /// orientable: tet of lowest index in each component positive, signs
    /// propagated so every gluing permutation is odd w.r.t. the signs.
    pub fn orientation(&self) -> Option<&[i8]> {
        self.orientation.as_deref()
    }

    pub fn is_orientable(&self) -> bool {
        self.orientation.is_some()
    }

    pub fn is_closed(&self) -> bool {
        self.boundary_faces.is_empty()
    }

    /// V - E + F - T of the cell structure.
    pub fn euler_characteristic(&self) -> i64 {
        let faces = (4 * self.tets - self.boundary_faces.len()) / 2 + self.boundary_faces.len();
        self.vertex_classes.len() as i64 - self.edge_classes.len() as i64 + faces as i64
            - self.tets as i64
    }

    pub fn interior_edges(&self) -> Vec<usize> {
        (0..self.edge_classes.len())
            .filter(|&i| self.edge_classes[i].is_interior())
            .collect()
    }

    /// Interior face pairings, each listed once from its lexicographically
    /// smaller side, in that order.
    pub fn face_pairings(&self) -> Vec<((usize, usize), Gluing)> {
        let mut out = Vec::new();
        for t in 0..self.tets {
            for f in 0..4 {
                if let Some(g) = self.gluings[t][f] {
                    if (t, f) < (g.tet, g.face) {
                        out.push(((t, f), g));
                    }
                }
            }
        }
        out
    }

    /// All faces of the cell structure, interior pairings listed once from
    /// their smaller side, boundary faces as themselves.
    pub fn faces(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for t in 0..self.tets {
            for f in 0..4 {
                match self.gluings[t][f] {
                    Some(g) => {
                        if (t, f) < (g.tet, g.face) {
                            out.push((t, f));
                        }
                    }
                    None => out.push((t, f)),
                }
            }
        }
        out
    }

    /// Relabel tetrahedra by `sigma` (new index of old tet i is sigma[i]).
    pub fn permuted(&self, sigma: &[usize]) -> Result<Self, TriangulationError> {
        assert_eq!(sigma.len(), self.tets);
        let mut list = Vec::new();
        for t in 0..self.tets {
            for f in 0..4 {
                if let Some(g) = self.gluings[t][f] {
                    if (t, f) < (g.tet, g.face) {
                        list.push((sigma[t], f, sigma[g.tet], g.face, g.perm));
                    }
                }
            }
        }
        list.sort_by_key(|&(a, f, ..)| (a, f));
        Self::from_gluings(self.tets, &list)
    }

    /// Clone with the chosen orientation of one edge class reversed.
    /// Only the sign conventions derived from that orientation change.
    pub fn with_flipped_edge(&self, class_id: usize) -> Self {
        let mut out = self.clone();
        let ec = &mut out.edge_classes[class_id];
        ec.reversed = !ec.reversed;
        out
    }
}

fn compute_vertex_classes(
    tets: usize,
    gluings: &[[Option<Gluing>; 4]],
    boundary_faces: &[(usize, usize)],
) -> (Vec<VertexClass>, Vec<[usize; 4]>) {
    let idx = |t: usize, v: usize| 4 * t + v;
    let mut uf = UnionFind::new(4 * tets);
    for t in 0..tets {
        for f in 0..4 {
            if let Some(g) = gluings[t][f] {
                for v in 0..4 {
                    if v != f {
                        uf.union(idx(t, v), idx(g.tet, g.perm.apply(v)));
                    }
                }
            }
        }
    }
    let mut on_boundary = vec![false; 4 * tets];
    for &(t, f) in boundary_faces {
        for v in 0..4 {
            if v != f {
                on_boundary[uf.find(idx(t, v))] = true;
            }
        }
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut class_of = vec![[usize::MAX; 4]; tets];
    let mut classes: Vec<VertexClass> = Vec::new();
    for t in 0..tets {
        for v in 0..4 {
            let root = uf.find(idx(t, v));
            let cid = match roots.iter().position(|&r| r == root) {
                Some(i) => i,
                None => {
                    roots.push(root);
                    classes.push(VertexClass {
                        corners: Vec::new(),
                        interior: !on_boundary[root],
                    });
                    roots.len() - 1
                }
            };
            classes[cid].corners.push((t, v));
            class_of[t][v] = cid;
        }
    }
    (classes, class_of)
}

type WalkStep = (usize, usize, usize, usize); // (tet, a, b, entry face)

/// Walk around every edge, collecting orbits of (tet, edge) incidences in
/// cyclic (interior) or linear (boundary) order. The class orientation is
/// fixed by the walk start: the lowest incidence gets tail = lower label.
fn compute_edge_classes(
    tets: usize,
    gluings: &[[Option<Gluing>; 4]],
) -> Result<(Vec<EdgeClass>, Vec<[usize; 6]>), TriangulationError> {
    let step = |t: usize, a: usize, b: usize, exit: usize| -> Option<WalkStep> {
        gluings[t][exit]
            .as_ref()
            .map(|g| (g.tet, g.perm.apply(a), g.perm.apply(b), g.perm.apply(exit)))
    };

    let mut class_of = vec![[usize::MAX; 6]; tets];
    let mut classes: Vec<EdgeClass> = Vec::new();

    for t0 in 0..tets {
        for e0 in 0..6 {
            if class_of[t0][e0] != usize::MAX {
                continue;
            }
            let (a0, b0) = EDGE_VERTS[e0];
            let (first_exit_back, first_exit_fwd) = faces_at_edge(e0);
            let mut visited: HashSet<(usize, usize)> = HashSet::new();
            visited.insert((t0, e0));
            let mut incidences = vec![EdgeIncidence {
                tet: t0,
                edge: e0,
                forward: true,
            }];
            let mut ends: Vec<EdgeEnd> = Vec::new();
            let mut closed = false;

            // forward
            let (mut t, mut a, mut b, mut exit) = (t0, a0, b0, first_exit_fwd);
            loop {
                match step(t, a, b, exit) {
                    None => {
                        ends.push(EdgeEnd {
                            tet: t,
                            face: exit,
                            tail: a,
                            head: b,
                        });
                        break;
                    }
                    Some((t2, a2, b2, entry)) => {
                        let e2 = edge_index(a2, b2);
                        if (t2, e2) == (t0, e0) {
                            if (a2, b2) != (a0, b0) {
                                return Err(TriangulationError::ReversedEdge {
                                    tet: t0,
                                    edge: e0,
                                });
                            }
                            closed = true;
                            break;
                        }
                        if !visited.insert((t2, e2)) {
                            return Err(TriangulationError::ReversedEdge { tet: t2, edge: e2 });
                        }
                        incidences.push(EdgeIncidence {
                            tet: t2,
                            edge: e2,
                            forward: a2 < b2,
                        });
                        let (fc, fd) = faces_at_edge(e2);
                        let next_exit = if fc == entry { fd } else { fc };
                        t = t2;
                        a = a2;
                        b = b2;
                        exit = next_exit;
                    }
                }
            }

            if !closed {
                // backward from the start, prepended in reverse
                let mut back: Vec<EdgeIncidence> = Vec::new();
                let (mut t, mut a, mut b, mut exit) = (t0, a0, b0, first_exit_back);
                loop {
                    match step(t, a, b, exit) {
                        None => {
                            ends.insert(
                                0,
                                EdgeEnd {
                                    tet: t,
                                    face: exit,
                                    tail: a,
                                    head: b,
                                },
                            );
                            break;
                        }
                        Some((t2, a2, b2, entry)) => {
                            let e2 = edge_index(a2, b2);
                            if !visited.insert((t2, e2)) {
                                return Err(TriangulationError::ReversedEdge {
                                    tet: t2,
                                    edge: e2,
                                });
                            }
                            back.push(EdgeIncidence {
                                tet: t2,
                                edge: e2,
                                forward: a2 < b2,
                            });
                            let (fc, fd) = faces_at_edge(e2);
                            let next_exit = if fc == entry { fd } else { fc };
                            t = t2;
                            a = a2;
                            b = b2;
                            exit = next_exit;
                        }
                    }
                }
                back.reverse();
                back.extend(incidences);
                incidences = back;
            }

            let id = classes.len();
            for inc in &incidences {
                class_of[inc.tet][inc.edge] = id;
            }
            classes.push(EdgeClass {
                incidences,
                ends: if closed {
                    None
                } else {
                    Some([ends[0], ends[1]])
                },
                reversed: false,
            });
        }
    }
    Ok((classes, class_of))
}

/// Parse the triangulation file format.
pub fn parse_triangulation(text: &str) -> Result<Triangulation, TriangulationError> {
    let mut tets: Option<usize> = None;
    let mut list: Vec<(usize, usize, usize, usize, Perm4)> = Vec::new();

    for (line0, raw) in text.lines().enumerate() {
        let line = line0 + 1;
        let content = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let tokens: Vec<(usize, &str)> = tokenize(content);
        if tokens.is_empty() {
            continue;
        }
        let syntax = |col: usize, msg: String| TriangulationError::Syntax { line, col, msg };
        match tokens[0].1 {
            "tets" => {
                if tets.is_some() {
                    return Err(syntax(tokens[0].0, "duplicate 'tets' line".into()));
                }
                if tokens.len() != 2 {
                    return Err(syntax(
                        tokens[0].0,
                        "expected 'tets N' with a single count".into(),
                    ));
                }
                let n: usize = tokens[1]
                    .1
                    .parse()
                    .map_err(|_| syntax(tokens[1].0, format!("bad count '{}'", tokens[1].1)))?;
                if n == 0 {
                    return Err(TriangulationError::Empty);
                }
                tets = Some(n);
            }
            "glue" => {
                if tets.is_none() {
                    return Err(syntax(tokens[0].0, "'glue' before 'tets'".into()));
                }
                if tokens.len() != 6 {
                    return Err(syntax(
                        tokens[0].0,
                        "expected 'glue A f B g p0p1p2p3'".into(),
                    ));
                }
                let mut nums = [0usize; 4];
                for (i, slot) in nums.iter_mut().enumerate() {
                    *slot = tokens[i + 1].1.parse().map_err(|_| {
                        syntax(tokens[i + 1].0, format!("bad index '{}'", tokens[i + 1].1))
                    })?;
                }
                let ptok = tokens[5].1;
                if ptok.len() != 4 || !ptok.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(syntax(
                        tokens[5].0,
                        format!("bad permutation '{ptok}': expected 4 digits"),
                    ));
                }
                let digits: Vec<u8> = ptok.bytes().map(|b| b - b'0').collect();
                let perm = Perm4::new([digits[0], digits[1], digits[2], digits[3]])?;
                list.push((nums[0], nums[1], nums[2], nums[3], perm));
            }
            other => {
                return Err(syntax(tokens[0].0, format!("unknown directive '{other}'")));
            }
        }
    }
    let tets = tets.ok_or(TriangulationError::Empty)?;
    Triangulation::from_gluings(tets, &list)
}

fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn compute_orientation(tets: usize, gluings: &[[Option<Gluing>; 4]]) -> Option<Vec<i8>> {
    let mut sign = vec![0i8; tets];
    for start in 0..tets {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        let mut stack = vec![start];
        while let Some(t) = stack.pop() {
            for f in 0..4 {
                if let Some(g) = gluings[t][f] {
                    let want = -g.perm.sign() * sign[t];
                    if sign[g.tet] == 0 {
                        sign[g.tet] = want;
                        stack.push(g.tet);
                    } else if sign[g.tet] != want {
                        return None;
                    }
                }
            }
        }
    }
    Some(sign)
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
            // deterministic: smaller root wins
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}
