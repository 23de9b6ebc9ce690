//! Vertex solutions of the admissible solution cone {Ax = 0, x >= 0}:
//! incremental double description enumeration with an optional quad-condition
//! filter, and an independent brute-force oracle over coordinate supports.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::coordinates::{satisfies_quad_condition, CoordKind, MatchingSystem};
use crate::linalg::{kernel_generator, rank};
use crate::num::{dot, vec_gcd, Scalar};

#[derive(Debug, Error)]
pub enum EnumerationError {
    #[error("system has {cols} coordinates; enumeration supports at most {max}")]
    TooManyCoordinates { cols: usize, max: usize },
    #[error("intermediate ray count exceeded the configured cap of {limit}")]
    RayLimitExceeded { limit: usize },
    #[error("system has {cols} coordinates, above the oracle limit {limit}")]
    OracleLimitExceeded { cols: usize, limit: usize },
    #[error("the zero vector has no primitive representative")]
    ZeroVector,
}

/// The most coordinates the double description bitsets can carry.
pub const MAX_COORDS: usize = 128;

/// Default coordinate cap for the brute-force oracle.
pub const DEFAULT_ORACLE_LIMIT: usize = 24;

/// A primitive admissible extreme ray of the solution cone.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct VertexSolution<S> {
    pub vector: Vec<S>,
    pub kind: CoordKind,
    pub support: Vec<usize>,
}

impl<S: Scalar> VertexSolution<S> {
    fn new(vector: Vec<S>, kind: CoordKind) -> Self {
        let support = (0..vector.len())
            .filter(|&i| !vector[i].is_zero())
            .collect();
        VertexSolution {
            vector,
            kind,
            support,
        }
    }
}

/// Per-insertion-stage ray accounting.
#[derive(Clone, Debug, Default)]
pub struct StageStats {
    pub row: usize,
    pub rays_before: usize,
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
    pub created: usize,
    pub filtered: usize,
}

#[derive(Clone, Debug, Default)]
pub struct EnumStats {
    pub stages: Vec<StageStats>,
    pub filtered_total: usize,
    pub supports_checked: usize,
    pub wall: Duration,
}

#[derive(Clone, Debug)]
pub struct EnumerationResult<S> {
    pub kind: CoordKind,
    pub vertices: Vec<VertexSolution<S>>,
    pub stats: EnumStats,
}

/// Divide a nonzero nonnegative vector by the gcd of its entries.
pub fn primitive<S: Scalar>(v: &[S]) -> Result<Vec<S>, EnumerationError> {
    let g = vec_gcd(v);
    if g.is_zero() {
        return Err(EnumerationError::ZeroVector);
    }
    if g.is_one() {
        return Ok(v.to_vec());
    }
    Ok(v.iter().map(|x| x.div_floor(&g)).collect())
}

struct Ray<S> {
    vec: Vec<S>,
    zero: u128,
}

impl<S: Scalar> Ray<S> {
    fn new(vec: Vec<S>) -> Self {
        let mut zero = 0u128;
        for (i, x) in vec.iter().enumerate() {
            if x.is_zero() {
                zero |= 1 << i;
            }
        }
        Ray { vec, zero }
    }
}

/// All admissible extreme rays of {Ax = 0, x >= 0}, as primitive integer
/// vectors in lexicographic order.
///
/// With `filter` set, rays violating the quad condition are discarded at
/// every insertion stage (sound: supports only grow under the conic
/// combinations the method forms, so a violating intermediate ray can never
/// spawn an admissible one, and any adjacency witness for an admissible pair
/// is itself admissible). Without it they are discarded at the end. Both
/// settings return the same vertex set.
pub fn enumerate_dd<S: Scalar>(
    system: &MatchingSystem<S>,
    filter: bool,
    max_rays: usize,
) -> Result<EnumerationResult<S>, EnumerationError> {
    let start = Instant::now();
    let (rays, mut stats) = dd_stages(system, filter, max_rays)?;
    let mut vertices: Vec<VertexSolution<S>> = Vec::new();
    for r in rays {
        if satisfies_quad_condition(system.kind, &r.vec) {
            debug_assert!(system.annihilates(&r.vec));
            debug_assert!(vec_gcd(&r.vec).is_one());
            vertices.push(VertexSolution::new(r.vec, system.kind));
        } else {
            stats.filtered_total += 1;
        }
    }
    vertices.sort();
    stats.wall = start.elapsed();
    Ok(EnumerationResult {
        kind: system.kind,
        vertices,
        stats,
    })
}

/// Every extreme ray of {Ax = 0, x >= 0}, admissible or not, sorted.
/// Cross-check surface for the adjacency tests.
pub fn enumerate_extreme_rays<S: Scalar>(
    system: &MatchingSystem<S>,
    max_rays: usize,
) -> Result<Vec<Vec<S>>, EnumerationError> {
    let (rays, _) = dd_stages(system, false, max_rays)?;
    let mut out: Vec<Vec<S>> = rays.into_iter().map(|r| r.vec).collect();
    out.sort();
    Ok(out)
}

/// The incremental double description loop: insert one equation at a time,
/// keep the zero rays, combine adjacent positive/negative pairs.
fn dd_stages<S: Scalar>(
    system: &MatchingSystem<S>,
    filter: bool,
    max_rays: usize,
) -> Result<(Vec<Ray<S>>, EnumStats), EnumerationError> {
    let cols = system.cols;
    if cols > MAX_COORDS {
        return Err(EnumerationError::TooManyCoordinates {
            cols,
            max: MAX_COORDS,
        });
    }

    // positive orthant extreme rays
    let mut rays: Vec<Ray<S>> = (0..cols)
        .map(|i| {
            let mut v = vec![S::zero(); cols];
            v[i] = S::one();
            Ray::new(v)
        })
        .collect();
    if rays.len() > max_rays {
        return Err(EnumerationError::RayLimitExceeded { limit: max_rays });
    }

    // insert sparse rows first
    let mut order: Vec<usize> = (0..system.rows.len()).collect();
    order.sort_by_key(|&i| (system.rows[i].iter().filter(|c| !c.is_zero()).count(), i));

    let mut stats = EnumStats::default();

    for &ri in &order {
        let row = &system.rows[ri];
        let mut stage = StageStats {
            row: ri,
            rays_before: rays.len(),
            ..Default::default()
        };

        let dots: Vec<S> = rays.iter().map(|r| dot(row, &r.vec)).collect();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut zero = Vec::new();
        for (i, d) in dots.iter().enumerate() {
            if d.is_zero() {
                zero.push(i);
            } else if d.is_positive() {
                pos.push(i);
            } else {
                neg.push(i);
            }
        }
        stage.positive = pos.len();
        stage.negative = neg.len();
        stage.zero = zero.len();

        // adjacency: no third current ray's zero set contains the pair's
        // common zero set
        let adjacent = |a: usize, b: usize, rays: &[Ray<S>]| -> bool {
            let meet = rays[a].zero & rays[b].zero;
            rays.iter()
                .enumerate()
                .all(|(k, r)| k == a || k == b || (meet & !r.zero) != 0)
        };

        let mut created: BTreeSet<Vec<S>> = BTreeSet::new();
        for &p in &pos {
            for &n in &neg {
                if !adjacent(p, n, &rays) {
                    continue;
                }
                // (a.p) * n - (a.n) * p lies on the hyperplane and is a
                // positive combination of the pair
                let (dp, dn) = (dots[p].clone(), dots[n].clone());
                let combo: Vec<S> = rays[n]
                    .vec
                    .iter()
                    .zip(&rays[p].vec)
                    .map(|(nx, px)| dp.clone() * nx.clone() - dn.clone() * px.clone())
                    .collect();
                let combo = primitive(&combo)?;
                if filter && !satisfies_quad_condition(system.kind, &combo) {
                    stage.filtered += 1;
                    continue;
                }
                created.insert(combo);
            }
        }
        stage.created = created.len();
        stats.filtered_total += stage.filtered;

        let mut next: Vec<Ray<S>> = Vec::with_capacity(zero.len() + created.len());
        let mut keep: Vec<bool> = vec![false; rays.len()];
        for &i in &zero {
            keep[i] = true;
        }
        for (i, r) in rays.drain(..).enumerate() {
            if keep[i] {
                next.push(r);
            }
        }
        next.extend(created.into_iter().map(Ray::new));
        rays = next;
        if rays.len() > max_rays {
            return Err(EnumerationError::RayLimitExceeded { limit: max_rays });
        }
        stats.stages.push(stage);
    }
    Ok((rays, stats))
}

/// Quad-condition-respecting support patterns for one tetrahedron.
fn tet_patterns(kind: CoordKind) -> Vec<u8> {
    match kind {
        // 3 quad slots, at most one set
        CoordKind::Quad => vec![0b000, 0b001, 0b010, 0b100],
        // 4 triangle slots free, at most one of 3 quad slots set
        CoordKind::Standard => {
            let mut out = Vec::new();
            for tri in 0u8..16 {
                for quad in [0u8, 1, 2, 4] {
                    out.push(tri | (quad << 4));
                }
            }
            out
        }
    }
}

/// Independent oracle: sweep every quad-condition-respecting coordinate
/// support; where the system restricted to the support has a one-dimensional
/// solution space with a nonnegative generator supported on the whole set,
/// that generator is an admissible extreme ray. Output is sorted and
/// identical to [`enumerate_dd`].
pub fn enumerate_bruteforce<S: Scalar>(
    system: &MatchingSystem<S>,
    limit: usize,
) -> Result<EnumerationResult<S>, EnumerationError> {
    let start = Instant::now();
    let cols = system.cols;
    if cols > limit {
        return Err(EnumerationError::OracleLimitExceeded { cols, limit });
    }
    let per = system.kind.coords_per_tet();
    let tets = cols / per;
    let patterns = tet_patterns(system.kind);

    let mut digits = vec![0usize; tets];
    let mut found: BTreeSet<Vec<S>> = BTreeSet::new();
    let mut supports_checked = 0usize;
    loop {
        let mut support: Vec<usize> = Vec::new();
        for (t, &d) in digits.iter().enumerate() {
            let mask = patterns[d];
            for s in 0..per {
                if mask & (1 << s) != 0 {
                    support.push(per * t + s);
                }
            }
        }
        if !support.is_empty() {
            supports_checked += 1;
            // rows restricted to the support (rows vanishing there are void)
            let sub: Vec<Vec<S>> = system
                .rows
                .iter()
                .filter(|row| support.iter().any(|&c| !row[c].is_zero()))
                .map(|row| support.iter().map(|&c| row[c].clone()).collect())
                .collect();
            if let Some(gen) = kernel_generator(&sub, support.len()) {
                let nonneg = gen.iter().all(|x| !x.is_negative());
                let full_support = gen.iter().all(|x| !x.is_zero());
                if nonneg && full_support {
                    let mut full = vec![S::zero(); cols];
                    for (i, &c) in support.iter().enumerate() {
                        full[c] = gen[i].clone();
                    }
                    debug_assert!(satisfies_quad_condition(system.kind, &full));
                    debug_assert!(system.annihilates(&full));
                    found.insert(full);
                }
            }
        }
        // odometer over per-tet patterns
        let mut t = 0;
        loop {
            if t == tets {
                let vertices: Vec<VertexSolution<S>> = found
                    .into_iter()
                    .map(|v| VertexSolution::new(v, system.kind))
                    .collect();
                let stats = EnumStats {
                    supports_checked,
                    wall: start.elapsed(),
                    ..Default::default()
                };
                return Ok(EnumerationResult {
                    kind: system.kind,
                    vertices,
                    stats,
                });
            }
            digits[t] += 1;
            if digits[t] < patterns.len() {
                break;
            }
            digits[t] = 0;
            t += 1;
        }
    }
}

/// Algebraic adjacency cross-check: two extreme rays of {Ax = 0, x >= 0} are
/// adjacent iff the face of the cone spanned by their supports is
/// two-dimensional.
pub fn adjacency_by_rank<S: Scalar>(rows: &[Vec<S>], r1: &[S], r2: &[S]) -> bool {
    let support: Vec<usize> = (0..r1.len())
        .filter(|&i| !r1[i].is_zero() || !r2[i].is_zero())
        .collect();
    let sub: Vec<Vec<S>> = rows
        .iter()
        .map(|row| support.iter().map(|&c| row[c].clone()).collect())
        .collect();
    support.len() - rank(&sub, support.len()) == 2
}
