//! Flat-file interchange: JSON documents (lossless, diff-friendly), DOT
//! graphs, and the two-chart SVG slice of the n = 3 fan.
//!
//! The JSON schema is
//! `{n, vertices: [{key, side, word, labels: [[int]], rays: [[[num,den]]]}],
//!   edges: [{u, v, label_u, label_v}], half_edges: [...]}`
//! with integer labels and rational `[numerator, denominator]` pairs for the
//! rays. Repeated runs produce byte-identical output.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::dual_basis;
use crate::framework::{Edge, LabeledQuasiGraph, Vertex, VertexOrigin};
use crate::perm::AffinePermutation;
use crate::root::Root;

#[derive(Serialize, Deserialize)]
pub struct GraphDoc {
    pub n: usize,
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<EdgeDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub half_edges: Vec<HalfEdgeDoc>,
}

#[derive(Serialize, Deserialize)]
pub struct VertexDoc {
    pub key: String,
    pub side: String,
    pub word: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word_neg: Option<String>,
    pub labels: Vec<Vec<i64>>,
    pub rays: Vec<Vec<[i64; 2]>>,
}

#[derive(Serialize, Deserialize)]
pub struct EdgeDoc {
    pub u: String,
    pub v: String,
    pub label_u: Vec<i64>,
    pub label_v: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
pub struct HalfEdgeDoc {
    pub v: String,
    pub label: Vec<i64>,
}

/// Graph → JSON document. Rays are derived from the labels when the label
/// set is a basis; deficient vertices (single-side graphs) export no rays.
pub fn to_doc(g: &LabeledQuasiGraph) -> GraphDoc {
    let vertices = g
        .vertices
        .iter()
        .map(|v| {
            let rays = if v.labels.len() == g.n {
                dual_basis(&v.labels)
                    .map(|rows| {
                        rows.iter()
                            .map(|row| row.iter().map(|r| [*r.numer(), *r.denom()]).collect())
                            .collect()
                    })
                    .unwrap_or_default()
            } else {
                Vec::new()
            };
            let (word, word_neg) = match &v.origin {
                VertexOrigin::Omega(w) => (w.to_string(), None),
                VertexOrigin::Neg(w) => (w.to_string(), None),
                VertexOrigin::Glued { omega, neg } => {
                    (omega.to_string(), Some(neg.to_string()))
                }
            };
            VertexDoc {
                key: v.key.clone(),
                side: v.origin.side_name().to_string(),
                word,
                word_neg,
                labels: v.labels.iter().map(|r| r.coords().to_vec()).collect(),
                rays,
            }
        })
        .collect();
    let edges = g
        .edges
        .iter()
        .map(|e| EdgeDoc {
            u: g.vertices[e.u].key.clone(),
            v: g.vertices[e.v].key.clone(),
            label_u: e.label_u.coords().to_vec(),
            label_v: e.label_v.coords().to_vec(),
        })
        .collect();
    let half_edges = g
        .half_edges
        .iter()
        .map(|(vid, label)| HalfEdgeDoc {
            v: g.vertices[*vid].key.clone(),
            label: label.coords().to_vec(),
        })
        .collect();
    GraphDoc {
        n: g.n,
        vertices,
        edges,
        half_edges,
    }
}

pub fn to_json(g: &LabeledQuasiGraph) -> String {
    let mut s = serde_json::to_string_pretty(&to_doc(g)).expect("serializable");
    s.push('\n');
    s
}

fn parse_word(n: usize, word: &str) -> Result<AffinePermutation> {
    if word == "e" {
        return Ok(AffinePermutation::identity(n));
    }
    let mut letters = Vec::new();
    for part in word.split('.') {
        let idx: usize = part
            .strip_prefix('s')
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Invalid(format!("bad word component {part:?}")))?;
        if !(1..=n).contains(&idx) {
            return Err(Error::Invalid(format!("letter {idx} out of range 1..={n}")));
        }
        letters.push(idx);
    }
    Ok(AffinePermutation::from_word(n, &letters))
}

/// JSON document → graph. Labels and edges are taken at face value so that
/// a corrupted file is re-checkable by the verifier; rays are derived data
/// and ignored on input.
pub fn from_doc(doc: &GraphDoc) -> Result<LabeledQuasiGraph> {
    let n = doc.n;
    if n < 3 {
        return Err(Error::RankTooSmall(n));
    }
    let mut vertices = Vec::with_capacity(doc.vertices.len());
    for vd in &doc.vertices {
        let origin = match vd.side.as_str() {
            "omega" => VertexOrigin::Omega(parse_word(n, &vd.word)?),
            "neg" => VertexOrigin::Neg(parse_word(n, &vd.word)?),
            "glued" => VertexOrigin::Glued {
                omega: parse_word(n, &vd.word)?,
                neg: parse_word(
                    n,
                    vd.word_neg
                        .as_deref()
                        .ok_or_else(|| Error::Invalid("glued vertex lacks word_neg".into()))?,
                )?,
            },
            other => return Err(Error::Invalid(format!("unknown side {other:?}"))),
        };
        let labels = vd
            .labels
            .iter()
            .map(|c| {
                if c.len() != n || c.iter().all(|&x| x == 0) {
                    Err(Error::Invalid(format!("bad label {c:?}")))
                } else {
                    Ok(Root::new(c.clone()))
                }
            })
            .collect::<Result<Vec<Root>>>()?;
        vertices.push(Vertex {
            key: vd.key.clone(),
            origin,
            labels,
        });
    }
    let vid = |key: &str| -> Result<usize> {
        vertices
            .iter()
            .position(|v: &Vertex| v.key == key)
            .ok_or_else(|| Error::Invalid(format!("edge references unknown vertex {key:?}")))
    };
    let mut edges = Vec::with_capacity(doc.edges.len());
    for ed in &doc.edges {
        edges.push(Edge {
            u: vid(&ed.u)?,
            v: vid(&ed.v)?,
            label_u: Root::new(ed.label_u.clone()),
            label_v: Root::new(ed.label_v.clone()),
        });
    }
    let mut half_edges = Vec::with_capacity(doc.half_edges.len());
    for hd in &doc.half_edges {
        half_edges.push((vid(&hd.v)?, Root::new(hd.label.clone())));
    }
    let base = vertices
        .iter()
        .position(|v| matches!(&v.origin, VertexOrigin::Omega(w) if w.is_identity()));
    Ok(LabeledQuasiGraph {
        n,
        vertices,
        edges,
        half_edges,
        base,
    })
}

pub fn from_json(text: &str) -> Result<LabeledQuasiGraph> {
    let doc: GraphDoc = serde_json::from_str(text)?;
    from_doc(&doc)
}

/// DOT rendering of the underlying graph, vertices named by sorting words.
pub fn to_dot(g: &LabeledQuasiGraph) -> String {
    let mut out = String::new();
    out.push_str(&format!("graph dcamb{} {{\n", g.n));
    out.push_str("  node [shape=box, fontsize=10];\n");
    for v in &g.vertices {
        let label = match &v.origin {
            VertexOrigin::Glued { omega, neg } => format!("{omega} = -{neg}"),
            VertexOrigin::Neg(w) => format!("-{w}"),
            VertexOrigin::Omega(w) => w.to_string(),
        };
        out.push_str(&format!("  \"{}\" [label=\"{}\"];\n", v.key, label));
    }
    for e in &g.edges {
        out.push_str(&format!(
            "  \"{}\" -- \"{}\" [label=\"{}\"];\n",
            g.vertices[e.u].key,
            g.vertices[e.v].key,
            positive_side(&e.label_u, &e.label_v),
        ));
    }
    out.push_str("}\n");
    out
}

fn positive_side<'a>(a: &'a Root, b: &'a Root) -> &'a Root {
    if a.is_positive() {
        a
    } else {
        b
    }
}

// ---------------------------------------------------------------------------
// SVG slice rendering for n = 3.
//
// The fan lives in a 3-dimensional V*; we draw its intersection with the two
// affine planes ⟨x, δ⟩ = ±1 (one chart per side of the Tits cone), with the
// clip circle standing in for the boundary at infinity. This is the affine
// slice, not the paper's stereographic projection; wall adjacencies agree.
// Floating point is used here for rendering only.
// ---------------------------------------------------------------------------

const SVG_R: f64 = 170.0; // clip radius in chart coordinates

fn project(p: [f64; 3]) -> [f64; 2] {
    let u1 = [0.707_106_781_186_547_5, -0.707_106_781_186_547_5, 0.0];
    let u2 = [0.408_248_290_463_863, 0.408_248_290_463_863, -0.816_496_580_927_726];
    [
        p[0] * u1[0] + p[1] * u1[1] + p[2] * u1[2],
        p[0] * u2[0] + p[1] * u2[1] + p[2] * u2[2],
    ]
}

fn clip_to_disk(a: [f64; 2], b: [f64; 2], r: f64) -> Option<([f64; 2], [f64; 2])> {
    // Intersect the parametric segment a + t(b−a), t ∈ [0,1], with |q| ≤ r.
    let d = [b[0] - a[0], b[1] - a[1]];
    let qa = d[0] * d[0] + d[1] * d[1];
    let qb = 2.0 * (a[0] * d[0] + a[1] * d[1]);
    let qc = a[0] * a[0] + a[1] * a[1] - r * r;
    if qa < 1e-12 {
        return if qc <= 0.0 { Some((a, b)) } else { None };
    }
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    let t0 = ((-qb - sq) / (2.0 * qa)).max(0.0);
    let t1 = ((-qb + sq) / (2.0 * qa)).min(1.0);
    if t0 >= t1 {
        return None;
    }
    let point = |t: f64| [a[0] + t * d[0], a[1] + t * d[1]];
    Some((point(t0), point(t1)))
}

/// Two-chart SVG of the doubled fan slice; n = 3 only.
pub fn to_svg(g: &LabeledQuasiGraph) -> Result<String> {
    if g.n != 3 {
        return Err(Error::Invalid(format!(
            "SVG rendering is defined for n = 3 only, got n = {}",
            g.n
        )));
    }
    let cones: Vec<Vec<Vec<f64>>> = g
        .vertices
        .iter()
        .map(|v| {
            let rays = dual_basis(&v.labels)?;
            Ok(rays
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|x| *x.numer() as f64 / *x.denom() as f64)
                        .collect()
                })
                .collect())
        })
        .collect::<Result<_>>()?;

    let width = 2.0 * (SVG_R + 30.0);
    let height = SVG_R * 2.0 + 80.0;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0}\" height=\"{:.0}\" \
         viewBox=\"0 0 {:.0} {:.0}\" font-family=\"sans-serif\">\n",
        2.0 * width,
        height,
        2.0 * width,
        height
    ));

    for (chart, s) in [(0usize, 1.0f64), (1, -1.0)] {
        let cx = width / 2.0 + chart as f64 * width;
        let cy = height / 2.0 + 10.0;
        let title = if s > 0.0 {
            "slice ⟨x, δ⟩ = 1 (Tits side)"
        } else {
            "slice ⟨x, δ⟩ = −1 (antipodal side)"
        };
        out.push_str(&format!(
            "<text x=\"{cx:.1}\" y=\"22\" text-anchor=\"middle\" font-size=\"13\">{title}</text>\n"
        ));
        // The red circle stands in for the Tits boundary at infinity.
        out.push_str(&format!(
            "<circle cx=\"{cx:.1}\" cy=\"{cy:.1}\" r=\"{SVG_R:.1}\" fill=\"none\" \
             stroke=\"#cc2222\" stroke-width=\"1.2\"/>\n"
        ));

        // Walls: each edge's facet is spanned by the two shared rays.
        for e in &g.edges {
            let u = e.u;
            let pos_u = g.vertices[u]
                .labels
                .iter()
                .position(|l| l == e.label_at(u))
                .expect("edge label present");
            let shared: Vec<Vec<f64>> = (0..3)
                .filter(|&k| k != pos_u)
                .map(|k| cones[u][k].clone())
                .collect();
            let (r1, r2) = (&shared[0], &shared[1]);
            let tau1 = s * (r1[0] + r1[1] + r1[2]);
            let tau2 = s * (r2[0] + r2[1] + r2[2]);
            let crossing = tau1 * tau2 < -1e-12;
            // A ray with s·Σr = τ > 0 meets the slice ⟨x, δ⟩ = s at r/τ.
            let seg3 = match (tau1 > 1e-12, tau2 > 1e-12) {
                (true, true) => Some((slice_point(r1, tau1), slice_point(r2, tau2))),
                (true, false) => Some(halfline(r1, tau1, r2, tau2)),
                (false, true) => Some(halfline(r2, tau2, r1, tau1)),
                (false, false) => None,
            };
            if let Some((p1, p2)) = seg3 {
                let scale = SVG_R * 0.55;
                let a = project(p1).map(|x| x * scale);
                let b = project(p2).map(|x| x * scale);
                if let Some((qa, qb)) = clip_to_disk(a, b, SVG_R) {
                    let style = if crossing {
                        "stroke=\"#5555cc\" stroke-width=\"1.0\" stroke-dasharray=\"5,3\""
                    } else if s > 0.0 {
                        "stroke=\"#222222\" stroke-width=\"1.2\""
                    } else {
                        "stroke=\"#3355bb\" stroke-width=\"1.2\""
                    };
                    out.push_str(&format!(
                        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" {}/>\n",
                        cx + qa[0],
                        cy - qa[1],
                        cx + qb[0],
                        cy - qb[1],
                        style
                    ));
                }
            }
        }

        // Cone labels at the centroid of their finite slice points.
        for (vid, vertex) in g.vertices.iter().enumerate() {
            let mut finite: Vec<[f64; 2]> = Vec::new();
            let mut infinite_dir = [0.0f64, 0.0];
            for ray in &cones[vid] {
                let tau = s * (ray[0] + ray[1] + ray[2]);
                if tau > 1e-12 {
                    finite.push(project(slice_point(ray, tau)));
                } else if tau.abs() <= 1e-12 {
                    let q = project([ray[0], ray[1], ray[2]]);
                    let norm = (q[0] * q[0] + q[1] * q[1]).sqrt().max(1e-9);
                    infinite_dir[0] += q[0] / norm;
                    infinite_dir[1] += q[1] / norm;
                }
            }
            if finite.is_empty() {
                continue;
            }
            let mut anchor = [0.0f64, 0.0];
            for q in &finite {
                anchor[0] += q[0];
                anchor[1] += q[1];
            }
            let scale = SVG_R * 0.55;
            anchor[0] = anchor[0] / finite.len() as f64 * scale + infinite_dir[0] * SVG_R * 0.45;
            anchor[1] = anchor[1] / finite.len() as f64 * scale + infinite_dir[1] * SVG_R * 0.45;
            let name = match &vertex.origin {
                VertexOrigin::Glued { omega, neg } => format!("{omega}=-{neg}"),
                VertexOrigin::Neg(w) => format!("-{w}"),
                VertexOrigin::Omega(w) => w.to_string(),
            };
            let x = cx + anchor[0];
            let y = cy - anchor[1];
            if (x - cx).powi(2) + (y - cy).powi(2) <= (SVG_R * 1.08).powi(2) {
                out.push_str(&format!(
                    "<text x=\"{x:.1}\" y=\"{y:.1}\" text-anchor=\"middle\" \
                     font-size=\"8.5\" fill=\"#333\">{name}</text>\n"
                ));
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn slice_point(r: &[f64], tau: f64) -> [f64; 3] {
    [r[0] / tau, r[1] / tau, r[2] / tau]
}

/// The slice piece of a facet with one finite ray: a half-line from the
/// finite ray's slice point toward the direction where ⟨·, δ⟩ stays flat.
fn halfline(r_fin: &[f64], tau_fin: f64, r_other: &[f64], tau_other: f64) -> ([f64; 3], [f64; 3]) {
    let p = slice_point(r_fin, tau_fin);
    // d = τ_fin·r_other − τ_other·r_fin has δ-sum 0 and points into the facet.
    let d = [
        tau_fin * r_other[0] - tau_other * r_fin[0],
        tau_fin * r_other[1] - tau_other * r_fin[1],
        tau_fin * r_other[2] - tau_other * r_fin[2],
    ];
    let norm = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt().max(1e-9);
    let far = 1e3;
    (
        p,
        [
            p[0] + d[0] / norm * far,
            p[1] + d[1] / norm * far,
            p[2] + d[2] / norm * far,
        ],
    )
}
