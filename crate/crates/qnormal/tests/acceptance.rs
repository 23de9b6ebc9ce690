//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! The corpus lives in `corpus/` at the workspace root; the sidecar
//! `*.expected.json` files hold results derived from the brute-force oracle
//! and frozen after cross-verification.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qnormal::boundary::boundary_analysis;
use qnormal::coordinates::{
    haken_sum, project_to_quad, q_incidence_coefficients, q_matching_system, quad_to_standard,
    standard_matching_system, vertex_link, CoordKind, StandardVector,
};
use qnormal::enumeration::{enumerate_bruteforce, enumerate_dd, VertexSolution};
use qnormal::report::survey_json;
use qnormal::surface::{realize, DEFAULT_MAX_DISCS};
use qnormal::unknot::{
    is_vertex_link_combination, recognize, survey, PipelineConfig, Verdict,
};
use qnormal::{parse_triangulation, Triangulation};

const MAX_RAYS: usize = 1 << 22;
const ORACLE_LIMIT: usize = 24;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .join("corpus")
}

fn corpus_files() -> Vec<(String, Triangulation, serde_json::Value)> {
    let dir = corpus_dir();
    let mut names: Vec<String> = std::fs::read_dir(&dir)
        .expect("corpus directory present")
        .filter_map(|e| {
            let name = e.unwrap().file_name().into_string().unwrap();
            name.strip_suffix(".tri").map(String::from)
        })
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|name| {
            let text = std::fs::read_to_string(dir.join(format!("{name}.tri"))).unwrap();
            let tri = parse_triangulation(&text).unwrap();
            let expected: serde_json::Value = serde_json::from_str(
                &std::fs::read_to_string(dir.join(format!("{name}.expected.json"))).unwrap(),
            )
            .unwrap();
            (name, tri, expected)
        })
        .collect()
}

fn vectors_of(vs: &[VertexSolution<i64>]) -> Vec<Vec<i64>> {
    vs.iter().map(|v| v.vector.clone()).collect()
}

/// Deterministically sample admissible standard vectors as small
/// nonnegative combinations of the standard vertex solutions.
fn random_admissible_sums(
    tri: &Triangulation,
    vertices: &[VertexSolution<i64>],
    rng: &mut ChaCha8Rng,
    want: usize,
) -> Vec<StandardVector<i64>> {
    let cols = 7 * tri.tets();
    let mut out = Vec::new();
    let mut guard = 0;
    while out.len() < want && guard < want * 200 {
        guard += 1;
        let mut sum = vec![0i64; cols];
        for v in vertices {
            let c = rng.gen_range(0..3i64);
            if c == 0 {
                continue;
            }
            match haken_sum(CoordKind::Standard, &sum, &v.vector.iter().map(|x| c * x).collect::<Vec<_>>()) {
                Ok(s) => sum = s,
                Err(_) => continue, // incompatible quad types; skip this summand
            }
        }
        if sum.iter().any(|&x| x != 0) {
            out.push(StandardVector(sum));
        }
    }
    assert_eq!(out.len(), want, "could not sample enough admissible sums");
    out
}

#[test]
fn criterion_1_oracle_equivalence() {
    let start = Instant::now();
    let mut checked = 0;
    for (name, tri, _) in corpus_files() {
        if tri.tets() > 4 {
            continue;
        }
        let systems = vec![
            standard_matching_system::<i64>(&tri),
            q_matching_system::<i64>(&tri).unwrap(),
        ];
        for sys in &systems {
            let filtered = enumerate_dd(sys, true, MAX_RAYS).unwrap();
            let unfiltered = enumerate_dd(sys, false, MAX_RAYS).unwrap();
            let oracle = enumerate_bruteforce(sys, ORACLE_LIMIT).unwrap();
            assert_eq!(
                vectors_of(&filtered.vertices),
                vectors_of(&unfiltered.vertices),
                "{name} {}: filtered vs unfiltered",
                sys.kind
            );
            assert_eq!(
                vectors_of(&filtered.vertices),
                vectors_of(&oracle.vertices),
                "{name} {}: dd vs oracle",
                sys.kind
            );
            // the vertex set is scalar-independent: lift to BigInt and re-run
            let big = match sys.kind {
                CoordKind::Standard => standard_matching_system::<BigInt>(&tri),
                CoordKind::Quad => q_matching_system::<BigInt>(&tri).unwrap(),
            };
            let big_result = enumerate_dd(&big, true, MAX_RAYS).unwrap();
            let lifted: Vec<Vec<BigInt>> = filtered
                .vertices
                .iter()
                .map(|v| v.vector.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            let big_vecs: Vec<Vec<BigInt>> =
                big_result.vertices.iter().map(|v| v.vector.clone()).collect();
            assert_eq!(lifted, big_vecs, "{name} {}: i64 vs BigInt", sys.kind);
            checked += 1;
        }
    }
    assert!(checked >= 10, "expected at least five small corpus files");
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(10),
        "criterion 1 took {elapsed:?}"
    );
    println!("[criterion 1] PASS: oracle equivalence on {checked} systems in {elapsed:?}");
}

#[test]
fn criterion_2_solid_torus_recognition() {
    let start = Instant::now();
    let cfg = PipelineConfig {
        oracle: true,
        ..Default::default()
    };
    for name in ["lst1", "lst2", "lst3"] {
        let text = std::fs::read_to_string(corpus_dir().join(format!("{name}.tri"))).unwrap();
        let tri = parse_triangulation(&text).unwrap();
        let rep = recognize::<BigInt>(&tri, &cfg).unwrap();
        assert_eq!(rep.verdict, Verdict::DiscFound, "{name}");
        let row = &rep.survey[rep.witness.unwrap()];
        assert_eq!(row.invariants.components.len(), 1, "{name}: connected");
        let c = &row.invariants.components[0];
        assert_eq!(c.euler, 1, "{name}: euler 1");
        assert_eq!(c.boundary_curves, 1, "{name}: one boundary curve");
        assert!(c.orientable, "{name}: two-sided");
        assert!(
            !row.boundary_classes[0].class.is_zero(),
            "{name}: essential boundary"
        );
        assert!(rep.oracle_checked, "{name}: oracle leg ran");
        assert!(rep.minimal_witness.is_some());
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(5),
        "criterion 2 took {elapsed:?}"
    );
    println!("[criterion 2] PASS: layered solid tori recognized in {elapsed:?}");
}

#[test]
fn criterion_3_knotted_control() {
    let start = Instant::now();
    let text = std::fs::read_to_string(corpus_dir().join("trefoil.tri")).unwrap();
    let tri = parse_triangulation(&text).unwrap();
    let cfg = PipelineConfig {
        oracle: true,
        ..Default::default()
    };
    let rep = recognize::<BigInt>(&tri, &cfg).unwrap();
    assert_eq!(rep.verdict, Verdict::NoDisc);
    assert!(!rep.survey.is_empty());
    for row in &rep.survey {
        assert_eq!(
            row.essential_disc,
            Some(false),
            "vertex {} must fail the essential disc test",
            row.index
        );
    }
    assert!(rep.oracle_checked, "quad oracle leg ran");
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(60),
        "criterion 3 took {elapsed:?}"
    );
    println!(
        "[criterion 3] PASS: trefoil exterior has no disc among {} vertex surfaces in {elapsed:?}",
        rep.survey.len()
    );
}

#[test]
fn criterion_4_quad_lift_decomposition() {
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    let mut tested = 0;
    let files = corpus_files();
    // every standard vertex solution of the corpus
    for (name, tri, _) in &files {
        let sys = standard_matching_system::<i64>(tri);
        let vertices = enumerate_dd(&sys, true, MAX_RAYS).unwrap().vertices;
        let mut battery: Vec<StandardVector<i64>> = vertices
            .iter()
            .map(|v| StandardVector(v.vector.clone()))
            .collect();
        // plus random admissible sums, 100 spread over the corpus
        let per_file = 100 / files.len() + 1;
        battery.extend(random_admissible_sums(tri, &vertices, &mut rng, per_file));
        for v in &battery {
            let lifted = quad_to_standard(&project_to_quad(v), tri).unwrap();
            let diff: Vec<i64> = v.0.iter().zip(&lifted.0).map(|(a, b)| a - b).collect();
            let diff = StandardVector(diff);
            assert!(
                is_vertex_link_combination(&diff, tri),
                "{name}: difference is not a nonnegative link combination"
            );
            tested += 1;
        }
    }
    assert!(tested >= 100);
    println!("[criterion 4] PASS: lift decomposition held for {tested} vectors");
}

#[test]
fn criterion_5_quad_system_structure() {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    for (name, tri, _) in corpus_files() {
        // per-incidence coefficients are a signed permutation of {+1,-1,0}
        for (ec_id, ec) in tri.edge_classes().iter().enumerate() {
            for i in 0..ec.incidences.len() {
                let mut c = q_incidence_coefficients(&tri, ec_id, i);
                c.sort();
                assert_eq!(c, [-1, 0, 1], "{name}: incidence coefficients");
            }
        }
        // vertex links project to zero quad vectors
        for class in 0..tri.vertex_classes().len() {
            let link = vertex_link::<i64>(&tri, class);
            assert!(project_to_quad(&link).0.iter().all(|&x| x == 0), "{name}");
        }
        // quad rows annihilate the projection of every standard solution
        let std_sys = standard_matching_system::<i64>(&tri);
        let q_sys = q_matching_system::<i64>(&tri).unwrap();
        let vertices = enumerate_dd(&std_sys, true, MAX_RAYS).unwrap().vertices;
        let mut battery: Vec<StandardVector<i64>> = vertices
            .iter()
            .map(|v| StandardVector(v.vector.clone()))
            .collect();
        battery.extend(random_admissible_sums(&tri, &vertices, &mut rng, 10));
        for v in &battery {
            assert!(
                q_sys.annihilates(&project_to_quad(v).0),
                "{name}: projection fails quad matching"
            );
        }
    }
    println!("[criterion 5] PASS: quad system structure verified on the corpus");
}

#[test]
fn criterion_6_invariance() {
    for (name, tri, _) in corpus_files() {
        let base_q = enumerate_dd(&q_matching_system::<i64>(&tri).unwrap(), true, MAX_RAYS)
            .unwrap()
            .vertices;

        // flipping any single edge orientation negates that edge's row (a
        // no-op when the row cancels to zero), leaves every other row alone,
        // and keeps the vertex set unchanged
        let base_sys = q_matching_system::<i64>(&tri).unwrap();
        for &e in &tri.interior_edges() {
            let flipped_tri = tri.with_flipped_edge(e);
            let sys = q_matching_system::<i64>(&flipped_tri).unwrap();
            for ((a, b), meta) in base_sys.rows.iter().zip(&sys.rows).zip(&base_sys.meta) {
                let is_flipped_row = matches!(
                    meta,
                    qnormal::coordinates::RowMeta::QuadEdge { edge_class } if *edge_class == e
                );
                if is_flipped_row {
                    let negated: Vec<i64> = b.iter().map(|x| -x).collect();
                    assert_eq!(*a, negated, "{name}: flipped edge must negate its row");
                } else {
                    assert_eq!(a, b, "{name}: unflipped rows must not move");
                }
            }
            let flipped = enumerate_dd(&sys, true, MAX_RAYS).unwrap().vertices;
            assert_eq!(
                vectors_of(&base_q),
                vectors_of(&flipped),
                "{name}: vertex set changed under edge flip"
            );
        }

        // permuting tetrahedron indices maps the vertex set by the induced
        // coordinate permutation and preserves the verdict
        let n = tri.tets();
        let sigma: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let permuted = tri.permuted(&sigma).unwrap();
        let perm_q = enumerate_dd(&q_matching_system::<i64>(&permuted).unwrap(), true, MAX_RAYS)
            .unwrap()
            .vertices;
        let mut mapped: Vec<Vec<i64>> = base_q
            .iter()
            .map(|v| {
                let mut w = vec![0i64; v.vector.len()];
                for t in 0..n {
                    for q in 0..3 {
                        w[3 * sigma[t] + q] = v.vector[3 * t + q];
                    }
                }
                w
            })
            .collect();
        mapped.sort();
        assert_eq!(mapped, vectors_of(&perm_q), "{name}: permutation equivariance");

        let cfg = PipelineConfig::default();
        let v1 = recognize::<i64>(&tri, &cfg).unwrap().verdict;
        let v2 = recognize::<i64>(&permuted, &cfg).unwrap().verdict;
        assert_eq!(v1, v2, "{name}: verdict must be isomorphism invariant");
    }
    println!("[criterion 6] PASS: edge flips and tet permutations leave results unchanged");
}

#[test]
fn criterion_7_realization_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(70);
    let files = corpus_files();

    // vertex links: spheres chi=2 at interior vertices, discs chi=1 at
    // boundary vertices
    for (name, tri, _) in &files {
        for (class, data) in tri.vertex_classes().iter().enumerate() {
            let link = vertex_link::<i64>(tri, class);
            let s = realize(&link, tri, DEFAULT_MAX_DISCS).unwrap();
            let inv = s.invariants::<i64>(tri).unwrap();
            assert_eq!(inv.components.len(), 1, "{name}: link connected");
            let c = &inv.components[0];
            if data.interior {
                assert_eq!(c.euler, 2, "{name}: linking sphere");
                assert!(c.closed);
            } else {
                assert_eq!(c.euler, 1, "{name}: linking disc");
                assert_eq!(c.boundary_curves, 1);
            }
        }
    }

    // chi and weight additive over 50 compatible random pairs
    let mut pairs = 0;
    let mut guard = 0;
    'outer: loop {
        for (_, tri, _) in &files {
            let sys = standard_matching_system::<i64>(tri);
            let vertices = enumerate_dd(&sys, true, MAX_RAYS).unwrap().vertices;
            let sums = random_admissible_sums(tri, &vertices, &mut rng, 4);
            for chunk in sums.chunks(2) {
                if chunk.len() < 2 {
                    continue;
                }
                guard += 1;
                assert!(guard < 10_000, "not enough compatible pairs");
                let (a, b) = (&chunk[0], &chunk[1]);
                let Ok(sum) = haken_sum(CoordKind::Standard, &a.0, &b.0) else {
                    continue;
                };
                let sa = realize(a, tri, DEFAULT_MAX_DISCS).unwrap();
                let sb = realize(b, tri, DEFAULT_MAX_DISCS).unwrap();
                let sab = realize(&StandardVector(sum), tri, DEFAULT_MAX_DISCS).unwrap();
                let ia = sa.invariants::<i64>(tri).unwrap();
                let ib = sb.invariants::<i64>(tri).unwrap();
                let iab = sab.invariants::<i64>(tri).unwrap();
                assert_eq!(iab.total_euler, ia.total_euler + ib.total_euler);
                assert_eq!(iab.total_weight, ia.total_weight + ib.total_weight);
                // per-edge counts agree across incidences: recompute and
                // compare each class against its own incidences
                for (cid, ec) in tri.edge_classes().iter().enumerate() {
                    let counts: Vec<usize> = ec
                        .incidences
                        .iter()
                        .map(|inc| sab.edge_orderings[&(inc.tet, inc.edge)].len())
                        .collect();
                    assert!(
                        counts.iter().all(|&c| c as u64 == sab.edge_points[cid]),
                        "per-edge counts differ across incidences"
                    );
                }
                pairs += 1;
                if pairs >= 50 {
                    break 'outer;
                }
            }
        }
    }
    println!("[criterion 7] PASS: links, additivity over {pairs} pairs, per-edge counts");
}

#[test]
fn criterion_8_survey_determinism() {
    for (name, tri, _) in corpus_files() {
        let cfg = PipelineConfig::default();
        let a = survey::<BigInt>(&tri, &cfg).unwrap();
        let b = survey::<BigInt>(&tri, &cfg).unwrap();
        let ja = serde_json::to_string_pretty(&survey_json(&a, Some(&name))).unwrap();
        let jb = serde_json::to_string_pretty(&survey_json(&b, Some(&name))).unwrap();
        assert_eq!(ja.as_bytes(), jb.as_bytes(), "{name}: survey JSON must be byte-identical");
    }
    println!("[criterion 8] PASS: survey JSON byte-identical across runs");
}

/// Sidecar agreement: the frozen oracle-derived expectations hold.
#[test]
fn sidecars_match_engine_output() {
    for (name, tri, expected) in corpus_files() {
        let exp = expected.as_object().unwrap();
        assert_eq!(tri.tets() as u64, exp["tets"].as_u64().unwrap(), "{name}");
        assert_eq!(
            tri.is_orientable(),
            exp["orientable"].as_bool().unwrap(),
            "{name}"
        );
        assert_eq!(
            tri.interior_edges().len() as u64,
            exp["interior_edges"].as_u64().unwrap(),
            "{name}"
        );
        let boundary = boundary_analysis::<i64>(&tri);
        assert_eq!(
            boundary.components.len() as u64,
            exp["boundary_components"].as_u64().unwrap(),
            "{name}"
        );
        let torus = boundary.components.len() == 1 && boundary.components[0].is_torus();
        assert_eq!(torus, exp["torus_boundary"].as_bool().unwrap(), "{name}");

        let std_count = enumerate_dd(&standard_matching_system::<i64>(&tri), true, MAX_RAYS)
            .unwrap()
            .vertices
            .len() as u64;
        assert_eq!(std_count, exp["standard_vertices"].as_u64().unwrap(), "{name}");
        let quad_count = enumerate_dd(&q_matching_system::<i64>(&tri).unwrap(), true, MAX_RAYS)
            .unwrap()
            .vertices
            .len() as u64;
        assert_eq!(quad_count, exp["quad_vertices"].as_u64().unwrap(), "{name}");

        let cfg = PipelineConfig::default();
        let rep = recognize::<i64>(&tri, &cfg).unwrap();
        assert_eq!(
            rep.verdict.as_str(),
            exp["verdict"].as_str().unwrap(),
            "{name}"
        );
        if rep.verdict == Verdict::DiscFound {
            let row = &rep.survey[rep.witness.unwrap()];
            let c = &row.invariants.components[0];
            assert_eq!(c.euler, exp["witness_euler"].as_i64().unwrap(), "{name}");
            assert_eq!(
                c.weight,
                exp["witness_weight"].as_u64().unwrap(),
                "{name}"
            );
            assert_eq!(c.size as u64, exp["witness_size"].as_u64().unwrap(), "{name}");
        }
    }
    println!("[sidecars] PASS: frozen expectations agree with the engine");
}

/// Verdict invariance under edge flips, end to end (recognize on a flipped
/// skeleton gives the same verdict and witness invariants).
#[test]
fn verdict_invariant_under_edge_flips() {
    let dir = corpus_dir();
    for name in ["lst2", "lst3", "trefoil"] {
        let text = std::fs::read_to_string(dir.join(format!("{name}.tri"))).unwrap();
        let tri = parse_triangulation(&text).unwrap();
        let cfg = PipelineConfig::default();
        let base = recognize::<i64>(&tri, &cfg).unwrap();
        for &e in &tri.interior_edges() {
            let flipped = tri.with_flipped_edge(e);
            let rep = recognize::<i64>(&flipped, &cfg).unwrap();
            assert_eq!(base.verdict, rep.verdict, "{name} edge {e}");
            assert_eq!(base.survey.len(), rep.survey.len(), "{name} edge {e}");
        }
    }
    println!("[edge flips] PASS: verdicts stable under edge orientation flips");
}

/// The survey rows exercised with a BTreeMap sanity: solution supports are
/// consistent with the reported sparse vectors.
#[test]
fn survey_supports_are_consistent() {
    let dir = corpus_dir();
    let text = std::fs::read_to_string(dir.join("trefoil.tri")).unwrap();
    let tri = parse_triangulation(&text).unwrap();
    let cfg = PipelineConfig::default();
    let rep = survey::<i64>(&tri, &cfg).unwrap();
    for row in &rep.rows {
        let mut sparse: BTreeMap<usize, i64> = BTreeMap::new();
        for (i, &x) in row.solution.vector.iter().enumerate() {
            if x != 0 {
                sparse.insert(i, x);
            }
        }
        assert_eq!(
            sparse.keys().copied().collect::<Vec<_>>(),
            row.solution.support
        );
    }
    println!("[supports] PASS");
}
