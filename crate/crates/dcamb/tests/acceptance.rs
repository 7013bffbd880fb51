//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its timing. All arithmetic is exact; tolerances are zero throughout, and
//! the stated wall-clock budgets are asserted.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use dcamb::cyclic::{enumerate_omega_sortables, OmegaSortables, Orientation};
use dcamb::eta::{classify, eta, funny_roots, interval_word, VertexClass};
use dcamb::fan::{check_fan, check_simplicial, det};
use dcamb::framework::build;
use dcamb::oracle::{compare, exchange_graph};
use dcamb::perm::{enumerate_up_to_length, longest_element, AffinePermutation};
use dcamb::root::Root;
use dcamb::sorting::{antipode_finite, first_block_tail, CoxeterWord, Sortables};
use dcamb::verify::verify_all;
use dcamb::DEFAULT_SEED;

fn word(n: usize, w: &[usize]) -> AffinePermutation {
    AffinePermutation::from_word(n, w)
}

fn report(id: usize, budget: Option<Duration>, started: Instant, summary: &str) {
    let elapsed = started.elapsed();
    println!("criterion {id:2}: PASS — {summary} ({elapsed:.2?})");
    if let Some(limit) = budget {
        assert!(
            elapsed < limit,
            "criterion {id} exceeded its {limit:?} budget: {elapsed:?}"
        );
    }
}

#[test]
fn criterion_01_figure_one_and_two_census() {
    let t = Instant::now();
    let omega = Orientation::omega(3);

    let expected_omega: BTreeSet<AffinePermutation> = [
        vec![],
        vec![1],
        vec![1, 2],
        vec![1, 2, 1],
        vec![2],
        vec![2, 3],
        vec![2, 3, 2],
        vec![3],
        vec![3, 1],
        vec![3, 1, 3],
    ]
    .iter()
    .map(|w| word(3, w))
    .collect();
    let got: BTreeSet<AffinePermutation> =
        enumerate_omega_sortables(&omega).into_iter().collect();
    assert_eq!(got, expected_omega, "Ω-sortable census");
    assert_eq!(got.len(), 10);

    let expected_neg: BTreeSet<AffinePermutation> = [
        vec![],
        vec![3],
        vec![3, 2],
        vec![3, 2, 3],
        vec![2],
        vec![1, 3],
        vec![1, 3, 1],
        vec![1],
        vec![2, 1],
        vec![2, 1, 2],
    ]
    .iter()
    .map(|w| word(3, w))
    .collect();
    let got_neg: BTreeSet<AffinePermutation> =
        enumerate_omega_sortables(&omega.reverse()).into_iter().collect();
    assert_eq!(got_neg, expected_neg, "(−Ω)-sortable census");
    assert_eq!(got_neg.len(), 10);

    let expected_glue: BTreeSet<(AffinePermutation, AffinePermutation)> = [
        (vec![1, 2], vec![3, 2, 3]),
        (vec![1, 2, 1], vec![3, 2]),
        (vec![2, 3], vec![1, 3, 1]),
        (vec![2, 3, 2], vec![1, 3]),
        (vec![3, 1], vec![2, 1, 2]),
        (vec![3, 1, 3], vec![2, 1]),
    ]
    .iter()
    .map(|(a, b)| (word(3, a), word(3, b)))
    .collect();
    let got_glue: BTreeSet<(AffinePermutation, AffinePermutation)> = got
        .iter()
        .filter(|v| matches!(classify(&omega, v).unwrap(), VertexClass::CaseB(_)))
        .map(|v| (v.clone(), eta(&omega, v).unwrap()))
        .collect();
    assert_eq!(got_glue, expected_glue, "gluing identifications");
    assert_eq!(got_glue.len(), 6);

    report(
        1,
        Some(Duration::from_secs(1)),
        t,
        "n=3 census: 10 + 10 sortables, 6 gluings, all lists verbatim",
    );
}

#[test]
fn criterion_02_dcamb3_shape() {
    let t = Instant::now();
    let g = build(3).unwrap();
    assert_eq!(g.vertices.len(), 14, "vertex count");
    assert_eq!(g.edges.len(), 21, "edge count");
    assert!(g.half_edges.is_empty(), "completeness");
    for vid in 0..g.vertices.len() {
        assert_eq!(g.degree(vid), 3, "regularity at {}", g.vertices[vid].key);
        let labels = &g.vertices[vid].labels;
        assert_eq!(labels.len(), 3);
        let mut m = vec![vec![0i64; 3]; 3];
        for (col, label) in labels.iter().enumerate() {
            for row in 0..3 {
                m[row][col] = label.coords()[row];
            }
        }
        assert_eq!(det(&m).abs(), 1, "unimodular basis at {}", g.vertices[vid].key);
    }
    report(
        2,
        Some(Duration::from_secs(1)),
        t,
        "DCamb_3: 14 vertices, 21 edges, 3-regular, complete, unimodular labels",
    );
}

#[test]
fn criterion_03_framework_axioms_n3_to_n6() {
    let t = Instant::now();
    for n in 3..=6 {
        let g = build(n).unwrap();
        let rep = verify_all(&g);
        assert!(
            rep.all_passed(),
            "axiom failure at n={n}: {:?}",
            rep.failed()
        );
    }
    report(
        3,
        Some(Duration::from_secs(60)),
        t,
        "all framework axioms (Sign, Base, Transition, UniqueMinimum, FullEdge, \
         DescendingChain, Completeness, Regularity) pass for n = 3, 4, 5, 6",
    );
}

#[test]
fn criterion_04_oracle_isomorphism() {
    let t = Instant::now();
    let expected = [(3usize, 14usize), (4, 50), (5, 182)];
    for (n, size) in expected {
        let oracle = exchange_graph(n, 1_000_000).unwrap();
        assert_eq!(oracle.seeds.len(), size, "oracle size at n={n}");
        let g = build(n).unwrap();
        let rep = compare(&g, &oracle);
        assert!(rep.matched, "n={n}: {:?}", rep.mismatch);
        assert_eq!(rep.framework_vertices, size);
        assert_eq!(rep.oracle_seeds, size);
    }
    report(
        4,
        Some(Duration::from_secs(60)),
        t,
        "exchange graphs of sizes 14, 50, 182 isomorphic to the framework \
         with exact B/c/g agreement",
    );
}

#[test]
fn criterion_05_delta_sum_at_every_glued_vertex() {
    let t = Instant::now();
    let mut total = 0usize;
    for n in 3..=6 {
        let omega = Orientation::omega(n);
        let delta = Root::delta(n);
        for v in enumerate_omega_sortables(&omega) {
            if !matches!(classify(&omega, &v).unwrap(), VertexClass::CaseB(_)) {
                continue;
            }
            let (beta, gamma) = funny_roots(&omega, &v).unwrap();
            assert!(beta.is_negative(), "beta at {v:?} must be negative");
            assert!(gamma.is_positive(), "gamma at {v:?} must be positive");
            assert_eq!(gamma, delta.plus(&beta), "gamma − beta = delta at {v:?}");
            total += 1;
        }
    }
    assert_eq!(total, 6 + 20 + 70 + 252, "case-(b) census n = 3..6");
    report(
        5,
        None,
        t,
        "funny roots: beta < 0 < gamma with gamma − beta = delta at all 348 glued vertices, n = 3..6",
    );
}

#[test]
fn criterion_06_first_block_reversal_shift() {
    let t = Instant::now();
    let mut total = 0usize;
    for k in 3..=7usize {
        // S_k is the parabolic on letters 1..k−1 of rank n = k.
        let n = k;
        let letters: Vec<usize> = (1..k).collect();
        let c = CoxeterWord::new(n, letters.clone()).unwrap();
        let c_rev = c.reversed();
        let rev_cache = Sortables::new(&c_rev).unwrap();
        let letter_set: BTreeSet<usize> = letters.iter().copied().collect();
        let w0 = longest_element(n, &letter_set).unwrap();
        let m = k - 1;
        let fwd_cache = Sortables::new(&c).unwrap();
        for u in fwd_cache.elements() {
            let g = first_block_tail(&c, u).unwrap();
            let u_prime = rev_cache.pi_down(&u.mul(&w0)).unwrap();
            if k <= 5 {
                assert_eq!(u_prime, antipode_finite(&c, u).unwrap());
            }
            let q = first_block_tail(&c_rev, &u_prime).unwrap();
            let g_prime = m + 1 - q;
            assert_eq!(g_prime, g - 1, "reversal shift for u = {u:?} at k = {k}");
            total += 1;
        }
    }
    assert_eq!(total, 5 + 14 + 42 + 132 + 429, "Catalan census k = 3..7");
    report(
        6,
        None,
        t,
        "g' = g − 1 for every linear-word sortable of S_k, k = 3..7 (622 elements)",
    );
}

#[test]
fn criterion_07_fan_completeness() {
    let t = Instant::now();
    for n in [3usize, 4] {
        let g = build(n).unwrap();
        let rep = check_fan(&g, 10_000, DEFAULT_SEED);
        assert!(rep.all_passed(), "fan failure at n={n}: {:?}", rep.failed());
    }
    report(
        7,
        Some(Duration::from_secs(60)),
        t,
        "facets perfectly paired and 10,000 seeded rational points each in \
         exactly one cone, n = 3 and 4",
    );
}

#[test]
fn criterion_08_fiber_property() {
    let t = Instant::now();
    let mut checked = 0usize;
    for n in [3usize, 4] {
        let omega = Orientation::omega(n);
        let cache = OmegaSortables::new(omega);
        let label_vecs: Vec<BTreeSet<Root>> =
            cache.labels.iter().map(|l| l.roots()).collect();
        for w in enumerate_up_to_length(n, 8) {
            let v = cache.pi_down(&w).clone();
            // An interior point of wD: the image of the all-ones point of D,
            // read off in coordinates as x̂_j = coordinate sum of w⁻¹·α_j.
            let w_inv = w.inverse();
            let xhat: Vec<i64> = (1..=n)
                .map(|j| w_inv.act_on_root(&Root::simple(n, j)).coord_sum())
                .collect();
            for (idx, candidate) in cache.elements.iter().enumerate() {
                let strictly_inside = label_vecs[idx].iter().all(|beta| {
                    let dot: i64 = xhat
                        .iter()
                        .zip(beta.coords())
                        .map(|(x, b)| x * b)
                        .sum();
                    dot > 0
                });
                assert_eq!(
                    strictly_inside,
                    *candidate == v,
                    "fiber mismatch: w = {w:?}, candidate = {candidate:?}, n = {n}"
                );
            }
            checked += 1;
        }
    }
    report(
        8,
        None,
        t,
        &format!(
            "pi_down fibers match cone membership exactly for all {checked} \
             elements of length <= 8, n = 3 and 4"
        ),
    );
}

#[test]
fn criterion_09_shi_census() {
    let t = Instant::now();
    for n in [3usize, 4, 5] {
        let g = build(n).unwrap();
        let positives: BTreeSet<Root> = g
            .vertices
            .iter()
            .flat_map(|v| v.labels.iter())
            .filter(|r| r.is_positive())
            .cloned()
            .collect();
        assert_eq!(
            positives.len(),
            n * (n - 1),
            "distinct positive labels at n={n}"
        );
        // They are exactly the cyclic-interval roots of length < n.
        for root in &positives {
            assert!(root.coords().iter().all(|&c| c == 0 || c == 1));
        }
    }
    report(
        9,
        None,
        t,
        "distinct positive labels number n(n−1) for n = 3, 4, 5 \
         (the Shi arrangement normals)",
    );
}

#[test]
fn criterion_10_negative_controls() {
    let t = Instant::now();
    let reference = build(3).unwrap();
    let a1 = Root::simple(3, 1);
    let corrupt = |r: &Root| -> Root {
        if *r == a1.negated() {
            r.plus_scaled(2, &a1)
        } else {
            r.plus(&a1)
        }
    };
    let mut cases = 0usize;

    // Corrupt each edge-endpoint label.
    for eid in 0..reference.edges.len() {
        for side in 0..2 {
            let mut g = reference.clone();
            let (u, v) = (g.edges[eid].u, g.edges[eid].v);
            if side == 0 {
                g.edges[eid].label_u = corrupt(&g.edges[eid].label_u);
            } else {
                g.edges[eid].label_v = corrupt(&g.edges[eid].label_v);
            }
            let rep = verify_all(&g);
            assert!(!rep.all_passed(), "corruption of edge {eid} went unnoticed");
            let u_key = &reference.vertices[u].key;
            let v_key = &reference.vertices[v].key;
            assert!(
                rep.failed().iter().any(|c| c
                    .witness
                    .as_ref()
                    .is_some_and(|w| w.mentions(u_key) || w.mentions(v_key))),
                "witness for edge {eid} does not name an endpoint"
            );
            cases += 1;
        }
    }

    // Corrupt each entry of each vertex label set.
    for vid in 0..reference.vertices.len() {
        for slot in 0..3 {
            let mut g = reference.clone();
            g.vertices[vid].labels[slot] = corrupt(&g.vertices[vid].labels[slot]);
            let rep = verify_all(&g);
            assert!(!rep.all_passed(), "corruption of vertex {vid} went unnoticed");
            let key = &reference.vertices[vid].key;
            assert!(
                rep.failed().iter().any(|c| c
                    .witness
                    .as_ref()
                    .is_some_and(|w| w.mentions(key))),
                "witness for vertex {vid} does not name it"
            );
            cases += 1;
        }
    }

    assert_eq!(cases, 42 + 42);
    report(
        10,
        None,
        t,
        "all 84 single-label corruptions of DCamb_3 caught with a witness \
         naming the corrupted location",
    );
}

// Mechanical sanity for the suite itself: the interval-word helper used by
// the gluing criteria agrees with the hand lists, and the simplicial check
// used by criterion 7's precondition passes standalone.
#[test]
fn interval_words_used_by_criteria() {
    assert_eq!(interval_word(3, 4, 5).unwrap().letters(), &[1, 2]);
    assert_eq!(interval_word(6, 7, 11).unwrap().letters(), &[1, 2, 3, 4, 5]);
    assert!(check_simplicial(&build(3).unwrap()).all_passed());
}
