//! Exact-rational cone geometry for the doubled Cambrian fan.
//!
//! Each vertex's labels are inward normals of a simplicial cone in V*; the
//! dual basis of the labels gives the cone's rays, which realize the
//! g-vectors. Completeness of the fan is certified by perfect facet pairing
//! across every edge plus seeded rational point location (every generic
//! sample lies in exactly one cone). This is a strong exhaustive check at
//! desk scale, not a formal proof, and everything is exact: integer label
//! matrices with determinant ±1, rational rays, no tolerances.

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::framework::LabeledQuasiGraph;
use crate::root::Root;
use crate::verify::{AxiomCheck, AxiomReport, Witness};

pub type Rat = Rational64;

/// A point of V* in the basis dual to the simple roots; ⟨x, α_i⟩ = x_i.
pub type RationalPoint = Vec<Rat>;

/// A vertex's cone: n labels (inward normals) and the dual rays,
/// ⟨ray_e, label_f⟩ = δ_ef.
#[derive(Clone, Debug)]
pub struct ConeDescription {
    pub labels: Vec<Root>,
    pub rays: Vec<Vec<Rat>>,
}

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
pub fn det(matrix: &[Vec<i64>]) -> i64 {
    let n = matrix.len();
    let mut m: Vec<Vec<i128>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    i64::try_from(sign * m[n - 1][n - 1]).expect("desk-scale determinant fits i64")
}

fn minor_det(matrix: &[Vec<i64>], skip_row: usize, skip_col: usize) -> i64 {
    let n = matrix.len();
    let sub: Vec<Vec<i64>> = (0..n)
        .filter(|&r| r != skip_row)
        .map(|r| {
            (0..n)
                .filter(|&c| c != skip_col)
                .map(|c| matrix[r][c])
                .collect()
        })
        .collect();
    if sub.is_empty() {
        1
    } else {
        det(&sub)
    }
}

/// Exact inverse of an integer matrix via the adjugate; errors when singular.
pub fn inverse(matrix: &[Vec<i64>]) -> Result<Vec<Vec<Rat>>> {
    let n = matrix.len();
    let d = det(matrix);
    if d == 0 {
        return Err(Error::SingularMatrix);
    }
    let mut inv = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            // adj(M)[i][j] = sign · minor with row j, column i removed.
            inv[i][j] = Rat::new(sign * minor_det(matrix, j, i), d);
        }
    }
    Ok(inv)
}

/// The dual basis of n independent labels: rows of the inverse of the matrix
/// whose columns are the labels. Row e pairs to 1 with label e and to 0 with
/// the others; these are the g-vector rays.
pub fn dual_basis(labels: &[Root]) -> Result<Vec<Vec<Rat>>> {
    let n = labels.len();
    let mut m = vec![vec![0i64; n]; n];
    for (col, label) in labels.iter().enumerate() {
        assert_eq!(label.rank(), n, "labels must live in rank n");
        for row in 0..n {
            m[row][col] = label.coords()[row];
        }
    }
    inverse(&m)
}

impl ConeDescription {
    pub fn from_labels(labels: Vec<Root>) -> Result<ConeDescription> {
        let rays = dual_basis(&labels)?;
        Ok(ConeDescription { labels, rays })
    }
}

/// ⟨x, β⟩ for x in dual coordinates.
pub fn pairing(x: &[Rat], beta: &Root) -> Rat {
    x.iter()
        .zip(beta.coords())
        .map(|(xi, &bi)| *xi * Rat::from_integer(bi))
        .sum()
}

/// Membership in the cone cut out by the labels: all pairings ≥ 0
/// (> 0 when strict).
pub fn cone_contains(cone: &ConeDescription, x: &[Rat], strict: bool) -> bool {
    cone.labels.iter().all(|beta| {
        let p = pairing(x, beta);
        if strict {
            p.is_positive()
        } else {
            !p.is_negative()
        }
    })
}

/// Halfspace membership directly from a label list (no rays needed); used
/// for deficient single-side graphs too.
pub fn labels_contain(labels: &[Root], x: &[Rat], strict: bool) -> bool {
    labels.iter().all(|beta| {
        let p = pairing(x, beta);
        if strict {
            p.is_positive()
        } else {
            !p.is_negative()
        }
    })
}

/// Every vertex must carry n labels forming a unimodular basis (|det| = 1).
pub fn check_simplicial(g: &LabeledQuasiGraph) -> AxiomReport {
    let mut report = AxiomReport::default();
    let name = "Simplicial";
    for (vid, vertex) in g.vertices.iter().enumerate() {
        if vertex.labels.len() != g.n {
            report.push(AxiomCheck::fail(
                name,
                Witness {
                    vertex: Some(vertex.key.clone()),
                    edge: None,
                    label: None,
                    message: format!("{} labels instead of {}", vertex.labels.len(), g.n),
                },
            ));
            return report;
        }
        let mut m = vec![vec![0i64; g.n]; g.n];
        for (col, label) in vertex.labels.iter().enumerate() {
            for row in 0..g.n {
                m[row][col] = label.coords()[row];
            }
        }
        let d = det(&m);
        if d.abs() != 1 {
            report.push(AxiomCheck::fail(
                name,
                Witness {
                    vertex: Some(vertex.key.clone()),
                    edge: None,
                    label: None,
                    message: format!("label determinant {d}, expected ±1"),
                },
            ));
            let _ = vid;
            return report;
        }
    }
    report.push(AxiomCheck::pass(
        name,
        format!("{} unimodular label bases", g.vertices.len()),
    ));
    report
}

/// Scale a rational vector to a primitive integer vector, preserving
/// direction. Used to compare rays up to positive scaling.
fn primitive(ray: &[Rat]) -> Vec<i64> {
    let lcm = ray
        .iter()
        .fold(1i64, |acc, r| acc.lcm(r.denom()));
    let ints: Vec<i64> = ray.iter().map(|r| r.numer() * (lcm / r.denom())).collect();
    let gcd = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if gcd == 0 {
        ints
    } else {
        ints.iter().map(|&x| x / gcd).collect()
    }
}

/// Facet pairing across every full edge: the two cones must share exactly
/// n−1 rays (up to positive scaling), and the two remaining rays must lie
/// strictly on opposite sides of the wall hyperplane.
pub fn check_facets(g: &LabeledQuasiGraph) -> AxiomReport {
    let mut report = AxiomReport::default();
    let name = "FacetPairing";
    let cones: Vec<ConeDescription> = match g
        .vertices
        .iter()
        .map(|v| ConeDescription::from_labels(v.labels.clone()))
        .collect::<Result<Vec<_>>>()
    {
        Ok(c) => c,
        Err(_) => {
            report.push(AxiomCheck::fail(
                name,
                Witness {
                    vertex: None,
                    edge: None,
                    label: None,
                    message: "a vertex has a singular label set; run Simplicial first".into(),
                },
            ));
            return report;
        }
    };
    for (eid, edge) in g.edges.iter().enumerate() {
        let (u, v) = (edge.u, edge.v);
        let beta_u = edge.label_at(u);
        let pos_u = g.vertices[u]
            .labels
            .iter()
            .position(|l| l == beta_u)
            .expect("edge label is a vertex label");
        let pos_v = g.vertices[v]
            .labels
            .iter()
            .position(|l| l == edge.label_at(v))
            .expect("edge label is a vertex label");
        let shared_u: Vec<Vec<i64>> = (0..g.n)
            .filter(|&k| k != pos_u)
            .map(|k| primitive(&cones[u].rays[k]))
            .collect();
        let shared_v: Vec<Vec<i64>> = (0..g.n)
            .filter(|&k| k != pos_v)
            .map(|k| primitive(&cones[v].rays[k]))
            .collect();
        let mut su = shared_u.clone();
        let mut sv = shared_v.clone();
        su.sort();
        sv.sort();
        if su != sv {
            report.push(AxiomCheck::fail(
                name,
                Witness::at_edge(g, eid, "facet rays do not match across the edge".into()),
            ));
            return report;
        }
        // Opposite rays strictly on opposite sides of the wall β⊥.
        let opp_u = pairing(&cones[u].rays[pos_u], beta_u);
        let opp_v = pairing(&cones[v].rays[pos_v], beta_u);
        if !(opp_u.is_positive() && opp_v.is_negative()) {
            report.push(AxiomCheck::fail(
                name,
                Witness::at_edge(
                    g,
                    eid,
                    "opposite rays are not strictly separated by the wall".into(),
                ),
            ));
            return report;
        }
    }
    report.push(AxiomCheck::pass(
        name,
        format!("{} walls perfectly paired", g.edges.len()),
    ));
    report
}

/// Point-location coverage: `samples` seeded rational points, each
/// resampled away from every label hyperplane, must each lie in exactly one
/// cone. For the complete doubled fan this certifies (at desk scale) that
/// the cones tile V*.
pub fn check_coverage(g: &LabeledQuasiGraph, samples: usize, seed: u64) -> AxiomReport {
    let mut report = AxiomReport::default();
    let name = "Coverage";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let label_sets: Vec<&[Root]> = g.vertices.iter().map(|v| v.labels.as_slice()).collect();
    let mut multi = 0usize;
    let mut uncovered = 0usize;
    let mut witness: Option<Witness> = None;
    for _ in 0..samples {
        let x = match sample_generic_point(g, &mut rng) {
            Some(x) => x,
            None => {
                report.push(AxiomCheck::fail(
                    name,
                    Witness {
                        vertex: None,
                        edge: None,
                        label: None,
                        message: "failed to sample a generic point".into(),
                    },
                ));
                return report;
            }
        };
        let containing: Vec<usize> = (0..label_sets.len())
            .filter(|&i| labels_contain(label_sets[i], &x, false))
            .collect();
        if containing.len() != 1 {
            if containing.is_empty() {
                uncovered += 1;
            } else {
                multi += 1;
            }
            if witness.is_none() {
                let coords: Vec<String> = x.iter().map(|r| r.to_string()).collect();
                witness = Some(Witness {
                    vertex: containing.first().map(|&i| g.vertices[i].key.clone()),
                    edge: None,
                    label: None,
                    message: format!(
                        "point ({}) lies in {} cones",
                        coords.join(", "),
                        containing.len()
                    ),
                });
            }
        }
    }
    if uncovered == 0 && multi == 0 {
        report.push(AxiomCheck::pass(
            name,
            format!("{samples} sample points each in exactly one cone"),
        ));
    } else {
        let mut w = witness.expect("counted a failure");
        w.message = format!(
            "{uncovered} uncovered and {multi} multiply-covered of {samples} samples; first: {}",
            w.message
        );
        report.push(AxiomCheck::fail(name, w));
    }
    report
}

/// A random rational point with odd denominators, rejected (and resampled)
/// while it lies on any label hyperplane of the graph.
fn sample_generic_point(g: &LabeledQuasiGraph, rng: &mut ChaCha8Rng) -> Option<RationalPoint> {
    'outer: for _ in 0..100 {
        let x: RationalPoint = (0..g.n)
            .map(|_| {
                let num = rng.gen_range(-1024i64..=1024);
                let den = 2 * rng.gen_range(0i64..16) + 1;
                Rat::new(num, den)
            })
            .collect();
        for vertex in &g.vertices {
            for label in &vertex.labels {
                if pairing(&x, label).is_zero() {
                    continue 'outer;
                }
            }
        }
        return Some(x);
    }
    None
}

/// The full fan check: simpliciality, facet pairing, and sampled coverage.
pub fn check_fan(g: &LabeledQuasiGraph, samples: usize, seed: u64) -> AxiomReport {
    let mut report = check_simplicial(g);
    if !report.all_passed() {
        return report;
    }
    report.merge(check_facets(g));
    report.merge(check_coverage(g, samples, seed));
    report
}

/// Boundary-face data of a glued vertex: both label sets reduced mod δ.
/// The two must induce the same halfspace description in V/ℝδ, confirming
/// that the glued cones share their (n−1)-dimensional boundary cone.
pub fn boundary_trace(g: &LabeledQuasiGraph, vid: usize) -> Result<Vec<Vec<i64>>> {
    use crate::cyclic::{labels_omega, Orientation};
    use crate::framework::VertexOrigin;
    let (v_omega, v_neg) = match &g.vertices[vid].origin {
        VertexOrigin::Glued { omega, neg } => (omega.clone(), neg.clone()),
        _ => return Err(Error::NotCaseB),
    };
    let omega = Orientation::omega(g.n);
    let side_o: Vec<Vec<i64>> = labels_omega(&omega, &v_omega)?
        .roots()
        .into_iter()
        .map(|r| r.reduced_mod_delta())
        .collect();
    let side_r: Vec<Vec<i64>> = labels_omega(&omega.reverse(), &v_neg)?
        .roots()
        .into_iter()
        .map(|r| r.negated().reduced_mod_delta())
        .collect();
    let mut a = side_o.clone();
    let mut b = side_r;
    a.sort();
    a.dedup();
    b.sort();
    b.dedup();
    if a != b {
        return Err(Error::Invalid(format!(
            "boundary cones of {} disagree mod delta",
            g.vertices[vid].key
        )));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::build;

    #[test]
    fn determinants() {
        assert_eq!(det(&[vec![1, 0], vec![0, 1]]), 1);
        assert_eq!(det(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(det(&[vec![2, 0], vec![0, 3]]), 6);
        assert_eq!(
            det(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]),
            0
        );
    }

    #[test]
    fn dual_basis_examples() {
        let n = 3;
        let a = |i: usize| Root::simple(n, i);
        // Simple roots give identity rays.
        let rays = dual_basis(&[a(1), a(2), a(3)]).unwrap();
        for (i, ray) in rays.iter().enumerate() {
            for (j, x) in ray.iter().enumerate() {
                assert_eq!(*x, Rat::from_integer(i64::from(i == j)));
            }
        }
        // {−α1, α1+α2, α3}: rays {(−1,1,0),(0,1,0),(0,0,1)} — the oracle
        // G-matrix after one mutation.
        let labels = vec![a(1).negated(), a(1).plus(&a(2)), a(3)];
        let rays = dual_basis(&labels).unwrap();
        let want = [[-1i64, 1, 0], [0, 1, 0], [0, 0, 1]];
        for (ray, row) in rays.iter().zip(want.iter()) {
            for (x, &w) in ray.iter().zip(row.iter()) {
                assert_eq!(*x, Rat::from_integer(w));
            }
        }
        // Rank-deficient sets are rejected.
        assert!(dual_basis(&[a(1), a(1), a(3)]).is_err());
    }

    #[test]
    fn rays_pair_to_identity() {
        for n in [3usize, 4, 5] {
            let g = build(n).unwrap();
            for vertex in &g.vertices {
                let cone = ConeDescription::from_labels(vertex.labels.clone()).unwrap();
                for (e, ray) in cone.rays.iter().enumerate() {
                    for (f, label) in cone.labels.iter().enumerate() {
                        let want = Rat::from_integer(i64::from(e == f));
                        assert_eq!(pairing(ray, label), want);
                    }
                }
            }
        }
    }

    #[test]
    fn cone_membership() {
        let n = 3;
        let a = |i: usize| Root::simple(n, i);
        let cone = ConeDescription::from_labels(vec![a(1), a(2), a(3)]).unwrap();
        let inside: Vec<Rat> = vec![Rat::from_integer(1); 3];
        assert!(cone_contains(&cone, &inside, true));
        let outside: Vec<Rat> = vec![Rat::from_integer(-1); 3];
        assert!(!cone_contains(&cone, &outside, false));
        let boundary: Vec<Rat> = vec![
            Rat::from_integer(0),
            Rat::from_integer(1),
            Rat::from_integer(1),
        ];
        assert!(cone_contains(&cone, &boundary, false));
        assert!(!cone_contains(&cone, &boundary, true));
    }

    #[test]
    fn simplicial_passes_for_dcamb() {
        for n in [3usize, 4, 5] {
            let g = build(n).unwrap();
            assert!(check_simplicial(&g).all_passed());
        }
    }

    #[test]
    fn fan_check_small() {
        let g = build(3).unwrap();
        let report = check_fan(&g, 500, 56491);
        assert!(report.all_passed(), "failures: {:?}", report.failed());
    }

    #[test]
    fn boundary_traces_match_for_all_glued() {
        let g = build(3).unwrap();
        for vid in 0..g.vertices.len() {
            match &g.vertices[vid].origin {
                crate::framework::VertexOrigin::Glued { .. } => {
                    let face = boundary_trace(&g, vid).unwrap();
                    assert_eq!(face.len(), g.n - 1);
                }
                _ => {
                    assert!(boundary_trace(&g, vid).is_err());
                }
            }
        }
    }

    #[test]
    fn delta_pairing_signs() {
        // Case-(a) cones stay on one side of the Tits boundary; glued cones
        // cross it: read off from the δ-pairings of the rays.
        use crate::framework::VertexOrigin;
        for n in [3usize, 4] {
            let g = build(n).unwrap();
            let delta = Root::delta(n);
            for vertex in &g.vertices {
                let cone = ConeDescription::from_labels(vertex.labels.clone()).unwrap();
                let sums: Vec<Rat> = cone.rays.iter().map(|r| pairing(r, &delta)).collect();
                match vertex.origin {
                    VertexOrigin::Glued { .. } => {
                        assert!(sums.iter().any(|s| s.is_positive()));
                        assert!(sums.iter().any(|s| s.is_negative()));
                    }
                    VertexOrigin::Omega(_) => {
                        assert!(sums.iter().all(|s| !s.is_negative()));
                    }
                    VertexOrigin::Neg(_) => {
                        assert!(sums.iter().all(|s| !s.is_positive()));
                    }
                }
            }
        }
    }
}
