//! Independent principal-coefficients seed-mutation oracle, and the
//! isomorphism check between its exchange graph and the doubled Cambrian
//! framework.
//!
//! A seed is a triple (B, C, G): the exchange matrix, the c-vectors (columns
//! of C), and the g-vectors (columns of G). B and C mutate by the standard
//! extended skew-symmetric matrix mutation; G mutates by the tropical-dual
//! rule with ε the common sign of the mutated c-column. Two invariants are
//! enforced at every reachable seed, never assumed: every c-column is
//! sign-coherent, and GᵀC = I (equivalently, the g-vectors are the basis
//! dual to the c-vectors). The second is double-entry bookkeeping for the
//! mutation sign convention.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::framework::LabeledQuasiGraph;
use crate::verify::OmegaForm;

/// A principal-coefficients seed: B row-major, C and G as column lists.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Seed {
    pub b: Vec<Vec<i64>>,
    pub c: Vec<Vec<i64>>,
    pub g: Vec<Vec<i64>>,
}

/// Canonical form of a seed up to simultaneous column permutation: columns
/// are jointly sorted by (c-column, g-column), with B re-indexed to match.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SeedKey(Vec<i64>);

impl Seed {
    pub fn rank(&self) -> usize {
        self.b.len()
    }

    /// Sign of the k-th c-column; errors if the column has mixed signs
    /// (sign-coherence is checked, not assumed).
    pub fn column_sign(&self, k: usize) -> Result<i64> {
        let col = &self.c[k];
        let pos = col.iter().any(|&x| x > 0);
        let neg = col.iter().any(|&x| x < 0);
        match (pos, neg) {
            (true, false) => Ok(1),
            (false, true) => Ok(-1),
            (false, false) => Err(Error::MixedSigns(k)), // zero column
            (true, true) => Err(Error::MixedSigns(k)),
        }
    }

    /// GᵀC = I: the g-vectors are dual to the c-vectors.
    pub fn duality_holds(&self) -> bool {
        let n = self.rank();
        for e in 0..n {
            for f in 0..n {
                let dot: i64 = (0..n).map(|i| self.g[e][i] * self.c[f][i]).sum();
                if dot != i64::from(e == f) {
                    return false;
                }
            }
        }
        true
    }

    pub fn key(&self) -> SeedKey {
        let n = self.rank();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&k| (self.c[k].clone(), self.g[k].clone()));
        let mut flat = Vec::with_capacity(3 * n * n);
        for &i in &order {
            for &j in &order {
                flat.push(self.b[i][j]);
            }
        }
        for &k in &order {
            flat.extend(&self.c[k]);
        }
        for &k in &order {
            flat.extend(&self.g[k]);
        }
        SeedKey(flat)
    }
}

/// The initial seed for the oriented n-cycle: b_{i,i+1} = 1, b_{i+1,i} = −1
/// (mod n), C = G = I.
pub fn initial_seed(n: usize) -> Result<Seed> {
    if n < 3 {
        return Err(Error::RankTooSmall(n));
    }
    let form = OmegaForm::new(n);
    let b = (1..=n)
        .map(|i| (1..=n).map(|j| form.b_entry(i, j)).collect())
        .collect();
    let eye = |k: usize| {
        let mut col = vec![0i64; n];
        col[k] = 1;
        col
    };
    Ok(Seed {
        b,
        c: (0..n).map(eye).collect(),
        g: (0..n).map(eye).collect(),
    })
}

/// Mutate a seed in direction k (0-based). Involutive; errors if column k of
/// C is not sign-coherent. Panics if the mutated seed violates duality,
/// which would mean the g-vector sign convention is wrong.
pub fn mutate(seed: &Seed, k: usize) -> Result<Seed> {
    let n = seed.rank();
    let eps = seed.column_sign(k)?;

    // Extended matrix mutation for B (and the same rule drives C below):
    // entries in row/column k flip sign, the rest gain sgn(b_ik)[b_ik b_kj]₊.
    let mut b = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            b[i][j] = if i == k || j == k {
                -seed.b[i][j]
            } else {
                seed.b[i][j] + seed.b[i][k].signum() * (seed.b[i][k] * seed.b[k][j]).max(0)
            };
        }
    }

    // Column form of the C mutation, using sign-coherence:
    // c'_k = −c_k, and c'_j = c_j + [ε b_kj]₊ c_k for j ≠ k.
    let mut c = seed.c.clone();
    c[k] = seed.c[k].iter().map(|&x| -x).collect();
    for j in 0..n {
        if j == k {
            continue;
        }
        let coef = (eps * seed.b[k][j]).max(0);
        if coef != 0 {
            for i in 0..n {
                c[j][i] += coef * seed.c[k][i];
            }
        }
    }

    // Tropical-dual G mutation: g'_k = −g_k + Σ_{i≠k} [ε b_ki]₊ g_i.
    let mut g = seed.g.clone();
    let mut gk: Vec<i64> = seed.g[k].iter().map(|&x| -x).collect();
    for i in 0..n {
        if i == k {
            continue;
        }
        let coef = (eps * seed.b[k][i]).max(0);
        if coef != 0 {
            for (x, &gi) in gk.iter_mut().zip(&seed.g[i]) {
                *x += coef * gi;
            }
        }
    }
    g[k] = gk;

    let out = Seed { b, c, g };
    assert!(
        out.duality_holds(),
        "mutation broke GᵀC = I: the sign convention is wrong"
    );
    Ok(out)
}

/// The exchange graph of the principal-coefficients cluster algebra: BFS
/// closure under mutation, with seeds identified up to simultaneous column
/// permutation.
pub struct ExchangeGraph {
    pub n: usize,
    /// One representative seed per vertex, in BFS order.
    pub seeds: Vec<Seed>,
    /// Adjacency: `adjacency[v][k]` is the seed reached from `seeds[v]` by
    /// mutating in direction k.
    pub adjacency: Vec<Vec<usize>>,
    pub index: HashMap<SeedKey, usize>,
}

/// BFS the exchange graph; errors if more than `max_seeds` are found.
pub fn exchange_graph(n: usize, max_seeds: usize) -> Result<ExchangeGraph> {
    let root = initial_seed(n)?;
    let mut seeds = vec![root.clone()];
    let mut index = HashMap::new();
    index.insert(root.key(), 0usize);
    let mut adjacency: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::new();
    queue.push_back(0usize);
    while let Some(at) = queue.pop_front() {
        let mut nbrs = Vec::with_capacity(n);
        for k in 0..n {
            // Sign-coherence is a checked invariant at every visited seed.
            let next = mutate(&seeds[at], k)?;
            let key = next.key();
            let id = match index.get(&key) {
                Some(&id) => id,
                None => {
                    let id = seeds.len();
                    if id >= max_seeds {
                        return Err(Error::SeedCapExceeded(max_seeds));
                    }
                    index.insert(key, id);
                    seeds.push(next);
                    queue.push_back(id);
                    id
                }
            };
            nbrs.push(id);
        }
        adjacency.push(nbrs);
        debug_assert_eq!(adjacency.len(), at + 1);
    }
    Ok(ExchangeGraph {
        n,
        seeds,
        adjacency,
        index,
    })
}

/// Outcome of the isomorphism check of the framework against the oracle.
#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    pub framework_vertices: usize,
    pub oracle_seeds: usize,
    pub matched: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<String>,
}

/// Construct the isomorphism v ↦ Seed(v) by BFS from (base vertex, initial
/// seed) and verify, at every vertex:
///   (1) the B-matrix entries equal ω of the label pairs,
///   (2) the c-vector columns equal the DC labels as a set,
///   (3) the g-vector columns equal the dual basis of the labels,
/// matching each framework edge to the mutation in the direction of the
/// equal c-column. A mismatch is reported, not thrown.
pub fn compare(g: &LabeledQuasiGraph, oracle: &ExchangeGraph) -> CompareReport {
    let n = g.n;
    let fail = |msg: String| CompareReport {
        framework_vertices: g.vertices.len(),
        oracle_seeds: oracle.seeds.len(),
        matched: false,
        mismatch: Some(msg),
    };
    let base = match g.base {
        Some(b) => b,
        None => return fail("framework has no base vertex".into()),
    };
    let form = OmegaForm::new(n);
    let initial = match initial_seed(n) {
        Ok(s) => s,
        Err(e) => return fail(e.to_string()),
    };

    let mut assigned: Vec<Option<Seed>> = vec![None; g.vertices.len()];
    let mut key_to_vertex: HashMap<SeedKey, usize> = HashMap::new();
    assigned[base] = Some(initial.clone());
    key_to_vertex.insert(initial.key(), base);
    let mut queue = VecDeque::new();
    queue.push_back(base);
    let mut visited = 0usize;

    while let Some(at) = queue.pop_front() {
        visited += 1;
        let seed = assigned[at].clone().expect("queued vertices are assigned");
        let vkey = &g.vertices[at].key;

        if !oracle.index.contains_key(&seed.key()) {
            return fail(format!("seed at {vkey} is not in the oracle exchange graph"));
        }

        // (2) c-columns must biject with the DC labels.
        let labels = &g.vertices[at].labels;
        let mut col_of_label: HashMap<Vec<i64>, usize> = HashMap::new();
        for (k, col) in seed.c.iter().enumerate() {
            col_of_label.insert(col.clone(), k);
        }
        if col_of_label.len() != n {
            return fail(format!("repeated c-columns at {vkey}"));
        }
        let mut matched_cols = Vec::with_capacity(n);
        for label in labels {
            match col_of_label.get(label.coords()) {
                Some(&k) => matched_cols.push(k),
                None => {
                    return fail(format!(
                        "label {label} at {vkey} is not a c-vector of the matched seed"
                    ))
                }
            }
        }

        // (1) B-matrix entries through ω.
        for (e, &ke) in matched_cols.iter().enumerate() {
            for (f, &kf) in matched_cols.iter().enumerate() {
                let expected = form.pair(&labels[e], &labels[f]);
                if seed.b[ke][kf] != expected {
                    return fail(format!(
                        "B[{ke}][{kf}] = {} at {vkey} but omega gives {expected}",
                        seed.b[ke][kf]
                    ));
                }
            }
        }

        // (3) g-columns = dual basis of the labels.
        let rays = match crate::fan::dual_basis(labels) {
            Ok(r) => r,
            Err(e) => return fail(format!("labels at {vkey} are singular: {e}")),
        };
        for (e, &ke) in matched_cols.iter().enumerate() {
            for i in 0..n {
                let want = &rays[e][i];
                if *want.denom() != 1 || *want.numer() != seed.g[ke][i] {
                    return fail(format!(
                        "g-vector column {ke} at {vkey} differs from the dual-basis ray"
                    ));
                }
            }
        }

        // Traverse edges by mutating in the matched direction.
        for eid in g.incident_edges(at) {
            let edge = &g.edges[eid];
            let far = edge.other(at);
            let k = matched_cols[labels
                .iter()
                .position(|l| l == edge.label_at(at))
                .expect("edge label is a vertex label")];
            let next = match mutate(&seed, k) {
                Ok(s) => s,
                Err(e) => return fail(format!("mutation at {vkey} failed: {e}")),
            };
            let nkey = next.key();
            match &assigned[far] {
                Some(existing) => {
                    if existing.key() != nkey {
                        return fail(format!(
                            "edge {vkey} — {} maps to an inconsistent seed",
                            g.vertices[far].key
                        ));
                    }
                }
                None => {
                    if let Some(&other) = key_to_vertex.get(&nkey) {
                        return fail(format!(
                            "seed collision: vertices {} and {} map to one seed",
                            g.vertices[other].key, g.vertices[far].key
                        ));
                    }
                    key_to_vertex.insert(nkey, far);
                    assigned[far] = Some(next);
                    queue.push_back(far);
                }
            }
        }
    }

    if visited != g.vertices.len() {
        return fail(format!(
            "only {visited} of {} framework vertices reached",
            g.vertices.len()
        ));
    }
    if g.vertices.len() != oracle.seeds.len() {
        return fail(format!(
            "vertex count {} differs from oracle seed count {}",
            g.vertices.len(),
            oracle.seeds.len()
        ));
    }
    CompareReport {
        framework_vertices: g.vertices.len(),
        oracle_seeds: oracle.seeds.len(),
        matched: true,
        mismatch: None,
    }
}
