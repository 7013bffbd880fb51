//! The doubled Cambrian framework for the oriented n-cycle.
//!
//! Vertices are the Ω-sortables together with the negated (−Ω)-sortables,
//! with each case-(b) vertex v glued to −η(v). Edges are the Hasse covers of
//! the two Cambrian semilattices, with an Ω-side edge and a (−Ω)-side edge
//! identified when they join the same glued pair carrying equal labels at
//! both endpoints. The label set DC(v) of a glued vertex is the union
//! C_Ω(v) ∪ −C_{−Ω}(η(v)); every vertex ends up with n labels forming a
//! unimodular basis of the root lattice, n full edges, and no half-edges.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::cyclic::{OmegaSortables, Orientation};
use crate::error::{Error, Result};
use crate::eta::{classify, eta, VertexClass};
use crate::perm::AffinePermutation;
use crate::root::Root;

/// Which Cambrian semilattice(s) a vertex came from.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum VertexOrigin {
    /// An Ω-sortable in case (a).
    Omega(AffinePermutation),
    /// A (−Ω)-sortable in case (a); the vertex is its antipodal copy.
    Neg(AffinePermutation),
    /// A glued pair: case-(b) Ω-sortable and its η-image.
    Glued {
        omega: AffinePermutation,
        neg: AffinePermutation,
    },
}

impl VertexOrigin {
    pub fn side_name(&self) -> &'static str {
        match self {
            VertexOrigin::Omega(_) => "omega",
            VertexOrigin::Neg(_) => "neg",
            VertexOrigin::Glued { .. } => "glued",
        }
    }
}

/// A framework vertex: its origin and its n-element label set
/// (sorted lexicographically for determinism).
#[derive(Clone, Debug)]
pub struct Vertex {
    pub key: String,
    pub origin: VertexOrigin,
    pub labels: Vec<Root>,
}

/// A full edge with its two endpoint labels (label_u at u, label_v at v).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub label_u: Root,
    pub label_v: Root,
}

impl Edge {
    /// The label at a given endpoint vertex index.
    pub fn label_at(&self, vertex: usize) -> &Root {
        if vertex == self.u {
            &self.label_u
        } else {
            debug_assert_eq!(vertex, self.v);
            &self.label_v
        }
    }

    pub fn other(&self, vertex: usize) -> usize {
        if vertex == self.u {
            self.v
        } else {
            debug_assert_eq!(vertex, self.v);
            self.u
        }
    }
}

/// A quasi-graph with root labels on incident pairs. Half-edges carry a
/// vertex and a label; the doubled framework has none, but single-side
/// Cambrian graphs (used as negative controls) do.
#[derive(Clone, Debug)]
pub struct LabeledQuasiGraph {
    pub n: usize,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub half_edges: Vec<(usize, Root)>,
    /// Index of the base vertex (identity on the Ω side), when known.
    pub base: Option<usize>,
}

impl LabeledQuasiGraph {
    /// Indices of edges incident to a vertex.
    pub fn incident_edges(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.u == v || e.v == v)
            .map(|(i, _)| i)
            .collect()
    }

    /// All incident-pair labels at a vertex: full-edge labels then half-edge
    /// labels.
    pub fn incident_labels(&self, v: usize) -> Vec<Root> {
        let mut out: Vec<Root> = self
            .incident_edges(v)
            .into_iter()
            .map(|i| self.edges[i].label_at(v).clone())
            .collect();
        out.extend(
            self.half_edges
                .iter()
                .filter(|(u, _)| *u == v)
                .map(|(_, r)| r.clone()),
        );
        out
    }

    /// Total degree (full + half edges) of a vertex.
    pub fn degree(&self, v: usize) -> usize {
        self.incident_edges(v).len()
            + self.half_edges.iter().filter(|(u, _)| *u == v).count()
    }

    pub fn vertex_by_key(&self, key: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.key == key)
    }
}

/// Key used to identify coinciding edges produced by the two sides.
type EdgeKey = ((usize, Vec<i64>), (usize, Vec<i64>));

fn edge_key(e: &Edge) -> EdgeKey {
    let a = (e.u, e.label_u.coords().to_vec());
    let b = (e.v, e.label_v.coords().to_vec());
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn word_key(v: &AffinePermutation) -> String {
    v.to_string()
}

/// Build the doubled Cambrian framework DCamb_Ω for rank n ≥ 3.
///
/// Panics (invariant violation) if any vertex would end with a number of
/// distinct incident labels different from n; returns an error only for
/// invalid input.
pub fn build(n: usize) -> Result<LabeledQuasiGraph> {
    if n < 3 {
        return Err(Error::RankTooSmall(n));
    }
    let omega = Orientation::omega(n);
    let side_o = OmegaSortables::new(omega);
    let side_r = OmegaSortables::new(omega.reverse());

    // Gluing: case-(b) Ω-sortables map to case-(b) (−Ω)-sortables via η.
    let mut glue_o_to_r: HashMap<usize, usize> = HashMap::new();
    let mut glue_r_to_o: HashMap<usize, usize> = HashMap::new();
    for (io, v) in side_o.elements.iter().enumerate() {
        if let VertexClass::CaseB(_) = classify(&omega, v)? {
            let image = eta(&omega, v)?;
            let ir = side_r
                .index_of(&image)
                .expect("eta image is a (−Ω)-sortable");
            glue_o_to_r.insert(io, ir);
            let previous = glue_r_to_o.insert(ir, io);
            assert!(previous.is_none(), "eta is injective");
        }
    }

    // Vertices: all Ω-sortables first (glued ones keyed by their Ω window),
    // then the unglued (−Ω)-sortables.
    let mut vertices = Vec::new();
    let mut vid_of_o: HashMap<usize, usize> = HashMap::new();
    let mut vid_of_r: HashMap<usize, usize> = HashMap::new();
    for (io, v) in side_o.elements.iter().enumerate() {
        let labels_o = side_o.labels[io].roots();
        let (origin, label_set): (VertexOrigin, BTreeSet<Root>) = match glue_o_to_r.get(&io) {
            Some(&ir) => {
                let partner = side_r.elements[ir].clone();
                let mut set = labels_o;
                set.extend(side_r.labels[ir].roots().into_iter().map(|r| r.negated()));
                (
                    VertexOrigin::Glued {
                        omega: v.clone(),
                        neg: partner,
                    },
                    set,
                )
            }
            None => (VertexOrigin::Omega(v.clone()), labels_o),
        };
        let labels: Vec<Root> = label_set.into_iter().collect();
        assert_eq!(
            labels.len(),
            n,
            "vertex {v:?} must carry exactly n distinct labels"
        );
        vid_of_o.insert(io, vertices.len());
        vertices.push(Vertex {
            key: word_key(v),
            origin,
            labels,
        });
    }
    for (ir, v) in side_r.elements.iter().enumerate() {
        if glue_r_to_o.contains_key(&ir) {
            let io = glue_r_to_o[&ir];
            vid_of_r.insert(ir, vid_of_o[&io]);
            continue;
        }
        let labels: Vec<Root> = side_r.labels[ir]
            .roots()
            .into_iter()
            .map(|r| r.negated())
            .collect::<BTreeSet<Root>>()
            .into_iter()
            .collect();
        assert_eq!(labels.len(), n);
        vid_of_r.insert(ir, vertices.len());
        vertices.push(Vertex {
            key: format!("-{}", word_key(v)),
            origin: VertexOrigin::Neg(v.clone()),
            labels,
        });
    }

    // Edges from the Hasse covers of each side; coinciding edges between the
    // same glued pair with equal labels are identified.
    let mut edges: Vec<Edge> = Vec::new();
    let mut seen: BTreeMap<EdgeKey, usize> = BTreeMap::new();
    let mut doubly_produced = 0usize;

    for (lo, hi) in side_o.hasse_covers() {
        let beta = side_flip_root(&side_o.labels[lo].roots(), &side_o.labels[hi].roots())?;
        let e = Edge {
            u: vid_of_o[&lo],
            v: vid_of_o[&hi],
            label_u: beta.clone(),
            label_v: beta.negated(),
        };
        let key = edge_key(&e);
        if seen.insert(key, edges.len()).is_none() {
            edges.push(e);
        }
    }
    for (lo, hi) in side_r.hasse_covers() {
        let beta = side_flip_root(&side_r.labels[lo].roots(), &side_r.labels[hi].roots())?;
        // Negation flips the side: the lower (−Ω)-cover endpoint carries −β.
        let e = Edge {
            u: vid_of_r[&lo],
            v: vid_of_r[&hi],
            label_u: beta.negated(),
            label_v: beta,
        };
        let key = edge_key(&e);
        match seen.get(&key) {
            Some(_) => doubly_produced += 1,
            None => {
                seen.insert(key, edges.len());
                edges.push(e);
            }
        }
    }

    // Every doubly-produced edge must join two glued vertices, and every
    // edge between two glued vertices must have been produced by both sides.
    let glued_vids: BTreeSet<usize> = glue_o_to_r.keys().map(|io| vid_of_o[io]).collect();
    let both_glued = edges
        .iter()
        .filter(|e| glued_vids.contains(&e.u) && glued_vids.contains(&e.v))
        .count();
    assert_eq!(
        doubly_produced, both_glued,
        "edge identification must pair exactly the glued-glued covers"
    );

    edges.sort_by_key(|e| edge_key(e));

    let base = vertices
        .iter()
        .position(|v| matches!(&v.origin, VertexOrigin::Omega(w) if w.is_identity()));

    let graph = LabeledQuasiGraph {
        n,
        vertices,
        edges,
        half_edges: Vec::new(),
        base,
    };

    // Regularity and label consistency are construction invariants here.
    for vid in 0..graph.vertices.len() {
        let mut incident: Vec<Root> = graph.incident_labels(vid);
        incident.sort();
        let distinct: BTreeSet<&Root> = incident.iter().collect();
        assert_eq!(
            distinct.len(),
            n,
            "vertex {} has repeated incident labels",
            graph.vertices[vid].key
        );
        assert_eq!(
            incident,
            graph.vertices[vid].labels,
            "incident labels of {} differ from its label set",
            graph.vertices[vid].key
        );
    }
    Ok(graph)
}

/// The unique positive root β with β in the lower label set and −β in the
/// upper one (the flip root of a Hasse cover).
fn side_flip_root(lower: &BTreeSet<Root>, upper: &BTreeSet<Root>) -> Result<Root> {
    let mut found: Option<Root> = None;
    for beta in lower {
        if beta.is_positive() && upper.contains(&beta.negated()) {
            if found.is_some() {
                return Err(Error::NoFlipRoot);
            }
            found = Some(beta.clone());
        }
    }
    found.ok_or(Error::NoFlipRoot)
}

/// The unique positive root in `labels(v_lo)` whose negative is in
/// `labels(v_hi)`, for a Hasse cover of the relevant Cambrian semilattice.
pub fn edge_flip_root(g: &LabeledQuasiGraph, v_lo: usize, v_hi: usize) -> Result<Root> {
    let lower: BTreeSet<Root> = g.vertices[v_lo].labels.iter().cloned().collect();
    let upper: BTreeSet<Root> = g.vertices[v_hi].labels.iter().cloned().collect();
    side_flip_root(&lower, &upper)
}

/// The label set DC_Ω(v) of a vertex.
pub fn dc_labels(g: &LabeledQuasiGraph, vid: usize) -> &[Root] {
    &g.vertices[vid].labels
}

/// The transition bijection μ_e between the label sets of the two endpoints
/// of a full edge: e ↦ e, and γ ↦ γ + [sgn(β)ω(β,γ)]₊ β for the others.
/// Returned as pairs (label at v, matched label at the far endpoint), with v
/// the given endpoint. Errors if a transition image is absent.
pub fn mu_edge(g: &LabeledQuasiGraph, edge_idx: usize, v: usize) -> Result<Vec<(Root, Root)>> {
    let edge = &g.edges[edge_idx];
    let w = edge.other(v);
    let beta = edge.label_at(v).clone();
    let far: BTreeSet<Root> = g.vertices[w].labels.iter().cloned().collect();
    let omega = crate::verify::OmegaForm::new(g.n);
    let mut out = Vec::with_capacity(g.n);
    for gamma in &g.vertices[v].labels {
        if *gamma == beta {
            out.push((beta.clone(), beta.negated()));
            continue;
        }
        let sgn = match beta.sign() {
            Some(crate::root::Sign::Positive) => 1,
            Some(crate::root::Sign::Negative) => -1,
            None => return Err(Error::Invalid(format!("mixed-sign label {beta}"))),
        };
        let coef = (sgn * omega.pair(&beta, gamma)).max(0);
        let image = gamma.plus_scaled(coef, &beta);
        if !far.contains(&image) {
            return Err(Error::Invalid(format!(
                "transition image {image} of {gamma} across {beta} is missing at {}",
                g.vertices[w].key
            )));
        }
        out.push((gamma.clone(), image));
    }
    Ok(out)
}

/// A single Cambrian side as a quasi-graph (used as a negative control: the
/// unglued graph fails completeness/regularity). Case-(b) vertices carry
/// only n−1 labels and no half-edge can be attached for the missing one.
pub fn build_single_side(orientation: Orientation) -> LabeledQuasiGraph {
    let n = orientation.n();
    let side = OmegaSortables::new(orientation);
    let vertices: Vec<Vertex> = side
        .elements
        .iter()
        .enumerate()
        .map(|(i, v)| Vertex {
            key: word_key(v),
            origin: VertexOrigin::Omega(v.clone()),
            labels: side.labels[i].roots().into_iter().collect(),
        })
        .collect();
    let mut edges = Vec::new();
    for (lo, hi) in side.hasse_covers() {
        let beta = side_flip_root(&side.labels[lo].roots(), &side.labels[hi].roots())
            .expect("cover has a flip root");
        edges.push(Edge {
            u: lo,
            v: hi,
            label_u: beta.clone(),
            label_v: beta.negated(),
        });
    }
    // Half-edges for labels not carried by any full edge.
    let mut half_edges = Vec::new();
    for (vid, vertex) in vertices.iter().enumerate() {
        let used: BTreeSet<Root> = edges
            .iter()
            .filter(|e| e.u == vid || e.v == vid)
            .map(|e| e.label_at(vid).clone())
            .collect();
        for label in &vertex.labels {
            if !used.contains(label) {
                half_edges.push((vid, label.clone()));
            }
        }
    }
    let base = side.elements.iter().position(|v| v.is_identity());
    LabeledQuasiGraph {
        n,
        vertices,
        edges,
        half_edges,
        base,
    }
}
