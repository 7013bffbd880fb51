//! Sortable elements for the cyclically oriented n-cycle.
//!
//! The orientation Ω has edges s₁ ← s₂ ← ⋯ ← sₙ ← s₁ (and −Ω the reverse).
//! A subset J of the simple indices is Ω-acyclic exactly when J ≠ S, and
//! c(Ω, J) is the Coxeter element of W_J whose word lists s_i before s_j
//! whenever there is an edge s_i ← s_j. An element w is Ω-sortable when its
//! support J(w) is Ω-acyclic and w is c(Ω, J(w))-sortable.
//!
//! Labels C_Ω^r(v) are computed inside the parabolic on J(v) ∪ {r} and are
//! defined only when that set is still acyclic, so a vertex carries n or n−1
//! labels; the doubled construction in [`crate::framework`] restores the
//! missing ones.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::perm::{enumerate_parabolic, AffinePermutation, SimpleIndex};
use crate::root::Root;
use crate::sorting::{self, CoxeterWord};

/// One of the two cyclic orientations of the n-cycle.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Orientation {
    n: usize,
    reversed: bool,
}

impl Orientation {
    /// Ω: edges s_i ← s_{i+1} for all i (indices mod n).
    pub fn omega(n: usize) -> Orientation {
        assert!(n >= 3, "rank must be at least 3");
        Orientation { n, reversed: false }
    }

    /// −Ω: all edges reversed.
    pub fn neg_omega(n: usize) -> Orientation {
        assert!(n >= 3, "rank must be at least 3");
        Orientation { n, reversed: true }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_forward(&self) -> bool {
        !self.reversed
    }

    pub fn reverse(&self) -> Orientation {
        Orientation {
            n: self.n,
            reversed: !self.reversed,
        }
    }

    /// The predecessor of j in the precedence order: the index that must be
    /// emitted before j when both are present.
    fn predecessor(&self, j: SimpleIndex) -> SimpleIndex {
        let n = self.n;
        if self.reversed {
            j % n + 1
        } else {
            (j + n - 2) % n + 1
        }
    }

    /// Every proper induced subgraph of the directed n-cycle is acyclic.
    pub fn is_acyclic(&self, j: &BTreeSet<SimpleIndex>) -> bool {
        j.len() < self.n
    }

    /// The word c(Ω, J): repeatedly emit the smallest-index remaining source
    /// of the induced precedence order.
    pub fn coxeter_element(&self, j: &BTreeSet<SimpleIndex>) -> Result<CoxeterWord> {
        if !self.is_acyclic(j) {
            return Err(Error::NotAcyclic(j.iter().copied().collect()));
        }
        let mut remaining = j.clone();
        let mut letters = Vec::with_capacity(j.len());
        while !remaining.is_empty() {
            let source = remaining
                .iter()
                .copied()
                .find(|&cand| !remaining.contains(&self.predecessor(cand)))
                .expect("a proper subset of the cycle has a source");
            remaining.remove(&source);
            letters.push(source);
        }
        CoxeterWord::new(self.n, letters)
    }
}

/// Labels C_Ω(v): defined exactly on {r : J(v) ∪ {r} is Ω-acyclic}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialLabeling {
    pub entries: BTreeMap<SimpleIndex, Root>,
}

impl PartialLabeling {
    pub fn roots(&self) -> BTreeSet<Root> {
        self.entries.values().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// True iff J(w) is Ω-acyclic and w is c(Ω, J(w))-sortable. False whenever
/// the support is the whole index set.
pub fn is_omega_sortable(omega: &Orientation, w: &AffinePermutation) -> bool {
    let j = w.support();
    if !omega.is_acyclic(&j) {
        return false;
    }
    let c = omega
        .coxeter_element(&j)
        .expect("acyclic support has a word");
    sorting::is_sortable(&c, w).expect("support is contained in its own word")
}

/// All Ω-sortable elements: the union over i of the c(Ω, ⟨s_i⟩)-sortables of
/// the maximal proper parabolics, deduplicated and sorted by (length, window).
pub fn enumerate_omega_sortables(omega: &Orientation) -> Vec<AffinePermutation> {
    let n = omega.n();
    let mut seen = BTreeSet::new();
    for skip in 1..=n {
        let j: BTreeSet<SimpleIndex> = (1..=n).filter(|&i| i != skip).collect();
        let c = omega.coxeter_element(&j).expect("proper subset");
        for w in enumerate_parabolic(n, &j).expect("proper subset") {
            if sorting::is_sortable(&c, &w).expect("inside parabolic") {
                seen.insert(w);
            }
        }
    }
    let mut out: Vec<AffinePermutation> = seen.into_iter().collect();
    out.sort_by_key(|w| (w.len(), w.window().to_vec()));
    out
}

/// The partial labeling C_Ω(v). Errors if v is not Ω-sortable.
pub fn labels_omega(omega: &Orientation, v: &AffinePermutation) -> Result<PartialLabeling> {
    if !is_omega_sortable(omega, v) {
        return Err(Error::NotOmegaSortable);
    }
    let n = omega.n();
    let j = v.support();
    let mut entries = BTreeMap::new();
    for r in 1..=n {
        let mut jr = j.clone();
        jr.insert(r);
        if !omega.is_acyclic(&jr) {
            continue;
        }
        let c = omega.coxeter_element(&jr)?;
        entries.insert(r, sorting::label(&c, v, r)?);
    }
    Ok(PartialLabeling { entries })
}

/// π_↓^Ω(w): the unique maximal Ω-sortable element weakly below w. Always
/// defined (the identity is Ω-sortable). Brute-force maximum over the
/// enumerated sortables.
pub fn pi_down_omega(omega: &Orientation, w: &AffinePermutation) -> AffinePermutation {
    let cache = OmegaSortables::new(*omega);
    cache.pi_down(w).clone()
}

/// Read-only memo of one orientation's sortables: elements, inversion sets,
/// labels, and the Hasse covers of the Ω-Cambrian semilattice.
pub struct OmegaSortables {
    pub orientation: Orientation,
    pub elements: Vec<AffinePermutation>,
    pub labels: Vec<PartialLabeling>,
    inv_sets: Vec<BTreeSet<Root>>,
    index: HashMap<AffinePermutation, usize>,
}

impl OmegaSortables {
    pub fn new(orientation: Orientation) -> OmegaSortables {
        let elements = enumerate_omega_sortables(&orientation);
        let labels = elements
            .iter()
            .map(|v| labels_omega(&orientation, v).expect("enumerated element is sortable"))
            .collect();
        let inv_sets = elements.iter().map(|v| v.inversion_set()).collect();
        let index = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        OmegaSortables {
            orientation,
            elements,
            labels,
            inv_sets,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, v: &AffinePermutation) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Weak-order comparison of two sortables by cached inversion sets.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.inv_sets[a].is_subset(&self.inv_sets[b])
    }

    /// π_↓^Ω(w) out of the cache; asserts uniqueness of the maximum.
    pub fn pi_down(&self, w: &AffinePermutation) -> &AffinePermutation {
        let inv_w = w.inversion_set();
        let below: Vec<usize> = (0..self.len())
            .filter(|&i| self.inv_sets[i].is_subset(&inv_w))
            .collect();
        let &best = below
            .iter()
            .max_by_key(|&&i| self.elements[i].len())
            .expect("the identity is sortable");
        for &i in &below {
            assert!(
                self.leq(i, best),
                "no unique maximal sortable below {w:?}"
            );
        }
        &self.elements[best]
    }

    /// Hasse covers of the induced subposet on the sortables, as index pairs
    /// (lower, upper). Covers may skip weak-order length (e.g. s2 ⋖ s1s2s1).
    pub fn hasse_covers(&self) -> Vec<(usize, usize)> {
        let m = self.len();
        let mut strictly_less = vec![vec![false; m]; m];
        for (a, row) in strictly_less.iter_mut().enumerate() {
            for (b, cell) in row.iter_mut().enumerate() {
                *cell = a != b && self.leq(a, b);
            }
        }
        let mut covers = Vec::new();
        for a in 0..m {
            for b in 0..m {
                if !strictly_less[a][b] {
                    continue;
                }
                let between = (0..m).any(|c| strictly_less[a][c] && strictly_less[c][b]);
                if !between {
                    covers.push((a, b));
                }
            }
        }
        covers.sort_unstable();
        covers
    }
}
