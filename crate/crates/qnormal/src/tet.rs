//! Combinatorics of a single tetrahedron: vertex/edge/face indexing and the
//! normal disc types living inside it.
//!
//! Conventions used throughout the crate:
//! - vertices are labelled 0..3; face `f` is the face opposite vertex `f`;
//! - the 6 edges are indexed by vertex pairs in the fixed order
//!   01, 02, 03, 12, 13, 23;
//! - triangle type `v` cuts off vertex `v`;
//! - quad type `q` (0..2) separates the vertex pair {0, q+1} from the other
//!   two vertices.

/// Edge index -> its two vertices, ascending.
pub const EDGE_VERTS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Face index -> its three vertices, ascending.
pub const FACE_VERTS: [[usize; 3]; 4] = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]];

/// The quad type disjoint from a given edge (and from its opposite edge).
pub const QUAD_AVOIDING_EDGE: [usize; 6] = [0, 1, 2, 2, 1, 0];

/// Edge index of the (unordered) vertex pair {a,b}.
pub fn edge_index(a: usize, b: usize) -> usize {
    debug_assert!(a != b && a < 4 && b < 4);
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    match (lo, hi) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        _ => 5,
    }
}

/// The two faces containing an edge: the faces opposite the other two vertices.
pub fn faces_at_edge(e: usize) -> (usize, usize) {
    let (a, b) = EDGE_VERTS[e];
    let mut others = (usize::MAX, usize::MAX);
    for v in 0..4 {
        if v != a && v != b {
            if others.0 == usize::MAX {
                others.0 = v;
            } else {
                others.1 = v;
            }
        }
    }
    others
}

/// The vertex pair {0, q+1} separated off by quad type `q`.
pub fn quad_pair(q: usize) -> (usize, usize) {
    (0, q + 1)
}

/// True if quad type `q` intersects edge `e` (it meets 4 of the 6 edges).
pub fn quad_meets_edge(q: usize, e: usize) -> bool {
    QUAD_AVOIDING_EDGE[e] != q
}

/// The vertex cut off by the face-`f` normal arc of quad type `q`:
/// the partner of `f` on its side of the quad's vertex partition.
pub fn quad_arc_vertex(q: usize, f: usize) -> usize {
    let (p0, p1) = quad_pair(q);
    if f == p0 {
        p1
    } else if f == p1 {
        p0
    } else {
        // f lies on the complementary pair; return its partner there
        let mut partner = usize::MAX;
        for v in 0..4 {
            if v != f && v != p0 && v != p1 {
                partner = v;
            }
        }
        partner
    }
}

/// The quad type whose face-`f` arc cuts off vertex `v` (with `v` a vertex of
/// face `f`): the quad avoiding the edge {f, v}.
pub fn quad_for_arc(f: usize, v: usize) -> usize {
    debug_assert!(f != v);
    QUAD_AVOIDING_EDGE[edge_index(f, v)]
}

/// A normal disc type within one tetrahedron.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DiscType {
    /// Triangle cutting off the given vertex.
    Tri(usize),
    /// Quad separating the pair {0, q+1}.
    Quad(usize),
}

impl DiscType {
    /// Standard-coordinate slot (0..6) within a tetrahedron block.
    pub fn slot(&self) -> usize {
        match *self {
            DiscType::Tri(v) => v,
            DiscType::Quad(q) => 4 + q,
        }
    }

    pub fn from_slot(slot: usize) -> Self {
        if slot < 4 {
            DiscType::Tri(slot)
        } else {
            DiscType::Quad(slot - 4)
        }
    }

    /// Corner edges of the disc in cyclic boundary order, together with the
    /// face carrying the arc from each corner to the next.
    ///
    /// For `Tri(v)` with other vertices a<b<c the cycle is
    ///   edge(v,a) -[face c]- edge(v,b) -[face a]- edge(v,c) -[face b]- ...
    /// For `Quad(q)` separating {0,i} from {j,k} (j<k) the cycle is
    ///   edge(0,j) -[face k]- edge(i,j) -[face 0]- edge(i,k) -[face j]-
    ///   edge(0,k) -[face i]- ...
    pub fn boundary_cycle(&self) -> Vec<(usize, usize)> {
        match *self {
            DiscType::Tri(v) => {
                let others: Vec<usize> = (0..4).filter(|&x| x != v).collect();
                let (a, b, c) = (others[0], others[1], others[2]);
                vec![
                    (edge_index(v, a), c),
                    (edge_index(v, b), a),
                    (edge_index(v, c), b),
                ]
            }
            DiscType::Quad(q) => {
                let (_, i) = quad_pair(q);
                let others: Vec<usize> = (1..4).filter(|&x| x != i).collect();
                let (j, k) = (others[0], others[1]);
                vec![
                    (edge_index(0, j), k),
                    (edge_index(i, j), 0),
                    (edge_index(i, k), j),
                    (edge_index(0, k), i),
                ]
            }
        }
    }

    /// True if the disc crosses the given edge (always exactly once).
    pub fn meets_edge(&self, e: usize) -> bool {
        match *self {
            DiscType::Tri(v) => {
                let (a, b) = EDGE_VERTS[e];
                v == a || v == b
            }
            DiscType::Quad(q) => quad_meets_edge(q, e),
        }
    }
}
