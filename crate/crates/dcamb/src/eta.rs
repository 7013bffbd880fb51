//! The gluing bijection η between case-(b) sortables of the two orientations.
//!
//! An Ω-sortable v falls in case (a) when |J(v)| ≤ n−2 (all n labels defined)
//! or case (b) when J(v) = ⟨s_i⟩ misses a single index (n−1 labels). Case-(b)
//! vertices are exactly the ones whose cones cross the Tits boundary, and η
//! matches each of them with a (−Ω)-sortable crossing the boundary in the
//! antipodal cone:
//!
//!   η(c[i+1, i+n−1]·u)  =  c[i+n, i+2]·(u′)⁺⁺
//!
//! where u′ is the finite-type antipode of u in the A-type parabolic on the
//! letters s_{i+1},…,s_{i+n−2} and ⁺ is the diagram rotation s_j ↦ s_{j+1}.
//! The two "funny roots" — the lone negative label of v and the negated lone
//! extra label of η(v) — differ by the imaginary root δ.

use crate::cyclic::Orientation;
use crate::error::{Error, Result};
use crate::perm::{wrap_index, AffinePermutation, SimpleIndex};
use crate::root::Root;
use crate::sorting::{self, CoxeterWord};

/// The two-case classification of an Ω-sortable vertex.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VertexClass {
    /// |J(v)| ≤ n−2: all n labels defined, cone inside the closed Tits cone.
    CaseA,
    /// J(v) = ⟨s_i⟩: label at i undefined, cone crosses the Tits boundary.
    CaseB(SimpleIndex),
}

/// Classify an Ω-sortable element. Errors if v is not Ω-sortable.
pub fn classify(omega: &Orientation, v: &AffinePermutation) -> Result<VertexClass> {
    if !crate::cyclic::is_omega_sortable(omega, v) {
        return Err(Error::NotOmegaSortable);
    }
    let n = omega.n();
    let j = v.support();
    if j.len() == n - 1 {
        let missing = (1..=n)
            .find(|i| !j.contains(i))
            .expect("exactly one index missing");
        Ok(VertexClass::CaseB(missing))
    } else {
        Ok(VertexClass::CaseA)
    }
}

/// The interval word c[i,j]: ascending s_i s_{i+1} ⋯ s_j when i ≤ j,
/// descending s_i s_{i−1} ⋯ s_j when i ≥ j, indices reduced modulo n.
/// Errors when the range would repeat a letter.
pub fn interval_word(n: usize, i: i64, j: i64) -> Result<CoxeterWord> {
    let span = (i - j).unsigned_abs() as usize;
    if span >= n {
        return Err(Error::IntervalTooLong { n, i, j });
    }
    let step = if i <= j { 1 } else { -1 };
    let mut letters = Vec::with_capacity(span + 1);
    let mut k = i;
    loop {
        letters.push(wrap_index(n, k));
        if k == j {
            break;
        }
        k += step;
    }
    CoxeterWord::new(n, letters)
}

/// The diagram rotation s_i ↦ s_{i+k} on group elements: conjugation of the
/// window by the shift x ↦ x+1, applied k times (negative k rotates back).
pub fn rotate(w: &AffinePermutation, k: i64) -> AffinePermutation {
    let n = w.rank();
    let steps = k.rem_euclid(n as i64) as usize;
    let mut window = w.window().to_vec();
    for _ in 0..steps {
        // (w⁺)(x) = w(x−1) + 1.
        let mut next = vec![0; n];
        next[0] = window[n - 1] - n as i64 + 1;
        for idx in 1..n {
            next[idx] = window[idx - 1] + 1;
        }
        window = next;
    }
    AffinePermutation::from_window(window).expect("rotation preserves validity")
}

/// η(v) for v in case (b) of the forward orientation. The factorization
/// v = c[i+1, i+n−1]·u and its length additivity are invariants guaranteed by
/// the theory; their failure is a panic, not a recoverable error.
pub fn eta(omega: &Orientation, v: &AffinePermutation) -> Result<AffinePermutation> {
    if !omega.is_forward() {
        return Err(Error::EtaNeedsForward);
    }
    let i = match classify(omega, v)? {
        VertexClass::CaseB(i) => i as i64,
        VertexClass::CaseA => return Err(Error::NotCaseB),
    };
    let n = omega.n();

    let c_full = interval_word(n, i + 1, i + n as i64 - 1)?;
    let u = c_full.element().inverse().mul(v);
    assert_eq!(
        v.len(),
        c_full.letters().len() + u.len(),
        "case-(b) sortable must factor through its first block"
    );

    let c_sub = interval_word(n, i + 1, i + n as i64 - 2)?;
    let u_prime = sorting::antipode_finite(&c_sub, &u)
        .expect("the cofactor of a case-(b) sortable is sortable for the shortened word");

    let prefix = interval_word(n, i + n as i64, i + 2)?;
    Ok(prefix.element().mul(&rotate(&u_prime, 2)))
}

/// The δ-paired roots of a case-(b) vertex: β is the label of v at s_{i−1}
/// (negative) and γ is the negated label of η(v) at s_{i+2} (positive), with
/// γ − β = δ.
pub fn funny_roots(omega: &Orientation, v: &AffinePermutation) -> Result<(Root, Root)> {
    let i = match classify(omega, v)? {
        VertexClass::CaseB(i) => i as i64,
        VertexClass::CaseA => return Err(Error::NotCaseB),
    };
    let n = omega.n();
    let eta_v = eta(omega, v)?;

    let c_v = interval_word(n, i + 1, i + n as i64 - 1)?;
    let beta = sorting::label(&c_v, v, wrap_index(n, i - 1))?;

    let c_eta = interval_word(n, i + n as i64, i + 2)?;
    let gamma = sorting::label(&c_eta, &eta_v, wrap_index(n, i + 2))?.negated();

    debug_assert!(beta.is_negative());
    debug_assert!(gamma.is_positive());
    debug_assert_eq!(gamma, Root::delta(n).plus(&beta));
    Ok((beta, gamma))
}

/// The case-(b) sortables U_Ω(s_i), grouped by missing index.
pub fn case_b_census(omega: &Orientation) -> Vec<(SimpleIndex, Vec<AffinePermutation>)> {
    let n = omega.n();
    let mut buckets: Vec<Vec<AffinePermutation>> = vec![Vec::new(); n];
    for v in crate::cyclic::enumerate_omega_sortables(omega) {
        if let VertexClass::CaseB(i) = classify(omega, &v).expect("enumerated") {
            buckets[i - 1].push(v);
        }
    }
    buckets
        .into_iter()
        .enumerate()
        .map(|(idx, vs)| (idx + 1, vs))
        .collect()
}
