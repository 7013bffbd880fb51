//! The affine Coxeter group Ã₍ₙ₋₁₎ in window notation.
//!
//! An element is a bijection f: ℤ → ℤ with f(i+n) = f(i)+n and
//! Σ_{i=1}^{n} f(i) = n(n+1)/2, stored as the window (f(1),…,f(n)).
//! The simple generators s₁,…,sₙ act on positions (right multiplication)
//! or values (left multiplication), with sₙ doing the wrap swap.
//!
//! Everything here is exact and pure; no floating point anywhere.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::root::Root;

/// Index of a simple generator, written 1..=n with arithmetic modulo n.
pub type SimpleIndex = usize;

/// Normalize an integer to a simple index in 1..=n.
pub fn wrap_index(n: usize, i: i64) -> SimpleIndex {
    ((i - 1).rem_euclid(n as i64) + 1) as usize
}

/// An element of Ã₍ₙ₋₁₎ in window notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePermutation {
    window: Vec<i64>,
}

impl AffinePermutation {
    /// The identity of Ã₍ₙ₋₁₎ (window (1,…,n)). Requires n ≥ 3.
    pub fn identity(n: usize) -> AffinePermutation {
        assert!(n >= 3, "rank must be at least 3");
        AffinePermutation {
            window: (1..=n as i64).collect(),
        }
    }

    /// Validate and wrap a window: residues mod n must be a permutation of
    /// 1..=n and the entries must sum to n(n+1)/2.
    pub fn from_window(window: Vec<i64>) -> Result<AffinePermutation> {
        let n = window.len();
        if n < 3 {
            return Err(Error::RankTooSmall(n));
        }
        let n64 = n as i64;
        let mut seen = vec![false; n];
        for &v in &window {
            let r = (v - 1).rem_euclid(n64) as usize;
            if seen[r] {
                return Err(Error::InvalidWindow(window.clone()));
            }
            seen[r] = true;
        }
        if window.iter().sum::<i64>() != n64 * (n64 + 1) / 2 {
            return Err(Error::InvalidWindow(window));
        }
        Ok(AffinePermutation { window })
    }

    /// The simple generator s_i as a group element.
    pub fn simple(n: usize, i: SimpleIndex) -> AffinePermutation {
        AffinePermutation::identity(n).right_mul_simple(i)
    }

    /// Build the product s_{w₁} s_{w₂} ⋯ s_{w_k} from a word.
    pub fn from_word(n: usize, word: &[SimpleIndex]) -> AffinePermutation {
        let mut w = AffinePermutation::identity(n);
        for &i in word {
            w = w.right_mul_simple(i);
        }
        w
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(k, &v)| v == k as i64 + 1)
    }

    /// Evaluate f(x) for any integer x using periodicity.
    pub fn eval(&self, x: i64) -> i64 {
        let n = self.rank() as i64;
        let q = (x - 1).div_euclid(n);
        let r = (x - 1).rem_euclid(n) as usize;
        self.window[r] + q * n
    }

    /// w · s_i (right multiplication): swaps window positions i, i+1; for
    /// i = n the swap wraps, adjusting the moved values by ±n.
    pub fn right_mul_simple(&self, i: SimpleIndex) -> AffinePermutation {
        let n = self.rank();
        debug_assert!((1..=n).contains(&i));
        let mut window = self.window.clone();
        if i < n {
            window.swap(i - 1, i);
        } else {
            let first = window[0];
            let last = window[n - 1];
            window[0] = last - n as i64;
            window[n - 1] = first + n as i64;
        }
        AffinePermutation { window }
    }

    /// s_i · w (left multiplication): swaps the values ≡ i and ≡ i+1 mod n.
    pub fn left_mul_simple(&self, i: SimpleIndex) -> AffinePermutation {
        let n = self.rank() as i64;
        let i = i as i64;
        let window = self
            .window
            .iter()
            .map(|&v| {
                let r = (v - i).rem_euclid(n);
                if r == 0 {
                    v + 1
                } else if r == 1 {
                    v - 1
                } else {
                    v
                }
            })
            .collect();
        AffinePermutation { window }
    }

    /// Group product: (self · other)(x) = self(other(x)).
    pub fn mul(&self, other: &AffinePermutation) -> AffinePermutation {
        assert_eq!(self.rank(), other.rank());
        let n = self.rank();
        let window = (1..=n as i64).map(|x| self.eval(other.eval(x))).collect();
        AffinePermutation { window }
    }

    pub fn inverse(&self) -> AffinePermutation {
        let n = self.rank();
        let n64 = n as i64;
        let mut window = vec![0; n];
        for k in 1..=n as i64 {
            let v = self.window[(k - 1) as usize];
            let r = (v - 1).rem_euclid(n64) + 1; // v ≡ r mod n, r in 1..=n
            window[(r - 1) as usize] = k - (v - r);
        }
        AffinePermutation { window }
    }

    /// Coxeter length = number of inversions:
    /// ℓ(w) = Σ_{1 ≤ i < j ≤ n} |⌊(w(j) − w(i))/n⌋|.
    pub fn len(&self) -> usize {
        let n = self.rank();
        let n64 = n as i64;
        let mut total = 0i64;
        for i in 0..n {
            for j in (i + 1)..n {
                total += (self.window[j] - self.window[i]).div_euclid(n64).abs();
            }
        }
        total as usize
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    /// Right descents: i such that ℓ(w s_i) < ℓ(w), i.e. w(i) > w(i+1)
    /// (with w(n+1) = w(1) + n).
    pub fn right_descents(&self) -> Vec<SimpleIndex> {
        let n = self.rank();
        let mut out = Vec::new();
        for i in 1..=n {
            let a = self.window[i - 1];
            let b = if i < n {
                self.window[i]
            } else {
                self.window[0] + n as i64
            };
            if a > b {
                out.push(i);
            }
        }
        out
    }

    /// Left descents: i such that ℓ(s_i w) < ℓ(w).
    pub fn left_descents(&self) -> Vec<SimpleIndex> {
        self.inverse().right_descents()
    }

    pub fn is_left_descent(&self, i: SimpleIndex) -> bool {
        // s_i is a left descent iff i appears later than i+1 in w⁻¹, i.e.
        // w⁻¹(i) > w⁻¹(i+1).
        let inv = self.inverse();
        let n = inv.rank();
        let a = inv.window[i - 1];
        let b = if i < n {
            inv.window[i]
        } else {
            inv.window[0] + n as i64
        };
        a > b
    }

    /// A reduced word, produced by repeatedly stripping the smallest right
    /// descent. Deterministic.
    pub fn reduced_word(&self) -> Vec<SimpleIndex> {
        let mut w = self.clone();
        let mut rev = Vec::new();
        while !w.is_identity() {
            let i = *w
                .right_descents()
                .first()
                .expect("non-identity element has a right descent");
            rev.push(i);
            w = w.right_mul_simple(i);
        }
        rev.reverse();
        rev
    }

    /// Apply w to a root, letter by letter along a reduced word. Fixes δ.
    pub fn act_on_root(&self, beta: &Root) -> Root {
        let word = self.reduced_word();
        let mut current = beta.clone();
        for &i in word.iter().rev() {
            current = current.reflect_simple(i);
        }
        current
    }

    /// Inversion set as positive roots: {β_t : ℓ(tw) < ℓ(w)}, computed from
    /// the prefix formula along a reduced word.
    pub fn inversion_set(&self) -> BTreeSet<Root> {
        let n = self.rank();
        let word = self.reduced_word();
        let mut out = BTreeSet::new();
        // β_m = s_{i₁} ⋯ s_{i_{m−1}} α_{i_m}; build prefixes incrementally.
        for (m, &letter) in word.iter().enumerate() {
            let mut beta = Root::simple(n, letter);
            for &j in word[..m].iter().rev() {
                beta = beta.reflect_simple(j);
            }
            out.insert(beta);
        }
        out
    }

    /// Support J(w): the set of letters occurring in any reduced word.
    pub fn support(&self) -> BTreeSet<SimpleIndex> {
        self.reduced_word().into_iter().collect()
    }

    /// Cover reflection roots: {−w·α_i : i a right descent of w}. These are
    /// exactly the β_t for t ∈ cov(w).
    pub fn cover_reflection_roots(&self) -> BTreeSet<Root> {
        let n = self.rank();
        self.right_descents()
            .into_iter()
            .map(|i| {
                let r = self.act_on_root(&Root::simple(n, i)).negated();
                debug_assert!(r.is_positive());
                r
            })
            .collect()
    }
}

impl fmt::Debug for AffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.window.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for AffinePermutation {
    /// Reduced-word form, e.g. `s1.s2.s1`; the identity prints as `e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = self.reduced_word();
        if word.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = word.iter().map(|i| format!("s{i}")).collect();
        write!(f, "{}", parts.join("."))
    }
}

/// x ≤ y in right weak order, i.e. inv(x) ⊆ inv(y).
pub fn weak_leq(x: &AffinePermutation, y: &AffinePermutation) -> bool {
    if x.len() > y.len() {
        return false;
    }
    let inv_y = y.inversion_set();
    x.inversion_set().iter().all(|b| inv_y.contains(b))
}

/// The projection w_J: the unique maximal element of W_J weakly below w.
/// Errors when J = S (the full affine group is not a proper parabolic).
pub fn parabolic_projection(
    w: &AffinePermutation,
    j: &BTreeSet<SimpleIndex>,
) -> Result<AffinePermutation> {
    let n = w.rank();
    if j.len() >= n {
        return Err(Error::FullParabolic);
    }
    let inv_w: HashSet<Root> = w.inversion_set().into_iter().collect();
    let mut x = AffinePermutation::identity(n);
    // Greedy ascent inside W_J: x·α_s is the inversion added by x ↦ xs, so we
    // may take the step exactly when that root is still an inversion of w.
    loop {
        let mut advanced = false;
        for &s in j {
            let beta = x.act_on_root(&Root::simple(n, s));
            if beta.is_positive() && inv_w.contains(&beta) {
                x = x.right_mul_simple(s);
                advanced = true;
                break;
            }
        }
        if !advanced {
            return Ok(x);
        }
    }
}

/// The longest element w₀(J) of the finite parabolic W_J, J ⊊ S.
pub fn longest_element(n: usize, j: &BTreeSet<SimpleIndex>) -> Result<AffinePermutation> {
    if j.len() >= n {
        return Err(Error::FullParabolic);
    }
    let mut x = AffinePermutation::identity(n);
    loop {
        let mut advanced = false;
        for &s in j {
            let beta = x.act_on_root(&Root::simple(n, s));
            if beta.is_positive() {
                x = x.right_mul_simple(s);
                advanced = true;
                break;
            }
        }
        if !advanced {
            return Ok(x);
        }
    }
}

/// All elements of the standard parabolic W_J (must be proper, hence finite),
/// sorted by (length, window).
pub fn enumerate_parabolic(
    n: usize,
    j: &BTreeSet<SimpleIndex>,
) -> Result<Vec<AffinePermutation>> {
    if j.len() >= n {
        return Err(Error::FullParabolic);
    }
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    let e = AffinePermutation::identity(n);
    seen.insert(e.clone());
    queue.push_back(e);
    while let Some(w) = queue.pop_front() {
        for &s in j {
            let ws = w.right_mul_simple(s);
            if ws.len() > w.len() && !seen.contains(&ws) {
                seen.insert(ws.clone());
                queue.push_back(ws);
            }
        }
    }
    let mut out: Vec<AffinePermutation> = seen.into_iter().collect();
    out.sort_by_key(|w| (w.len(), w.window().to_vec()));
    Ok(out)
}

/// All elements of Ã₍ₙ₋₁₎ of length at most `max_len`, sorted by
/// (length, window). Exhaustive BFS of the weak order.
pub fn enumerate_up_to_length(n: usize, max_len: usize) -> Vec<AffinePermutation> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    let e = AffinePermutation::identity(n);
    seen.insert(e.clone());
    queue.push_back(e);
    while let Some(w) = queue.pop_front() {
        if w.len() == max_len {
            continue;
        }
        for s in 1..=n {
            let ws = w.right_mul_simple(s);
            if ws.len() > w.len() && !seen.contains(&ws) {
                seen.insert(ws.clone());
                queue.push_back(ws);
            }
        }
    }
    let mut out: Vec<AffinePermutation> = seen.into_iter().collect();
    out.sort_by_key(|w| (w.len(), w.window().to_vec()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(n: usize, w: &[usize]) -> AffinePermutation {
        AffinePermutation::from_word(n, w)
    }

    #[test]
    fn generator_windows() {
        assert_eq!(word(3, &[1]).window(), &[2, 1, 3]);
        assert_eq!(word(3, &[3]).window(), &[0, 2, 4]);
        assert_eq!(word(3, &[1, 2]).window(), &[2, 3, 1]);
    }

    #[test]
    fn generators_are_involutions() {
        for i in 1..=4 {
            let s = AffinePermutation::simple(4, i);
            assert!(s.mul(&s).is_identity());
            assert_eq!(s.len(), 1);
        }
    }

    #[test]
    fn lengths_of_small_words() {
        assert_eq!(AffinePermutation::identity(3).len(), 0);
        assert_eq!(word(3, &[1, 2]).len(), 2);
        assert_eq!(word(3, &[1, 2, 1]).len(), 3);
        // s1 s2 s1 = s2 s1 s2 (braid relation).
        assert_eq!(word(3, &[1, 2, 1]), word(3, &[2, 1, 2]));
    }

    #[test]
    fn inversion_sets_match_prefix_formula() {
        let n = 3;
        let a = |i: usize| Root::simple(n, i);
        assert!(AffinePermutation::identity(n).inversion_set().is_empty());
        let inv12: BTreeSet<Root> = [a(1), a(1).plus(&a(2))].into_iter().collect();
        assert_eq!(word(n, &[1, 2]).inversion_set(), inv12);
        let inv31: BTreeSet<Root> = [a(3), a(1).plus(&a(3))].into_iter().collect();
        assert_eq!(word(n, &[3, 1]).inversion_set(), inv31);
    }

    #[test]
    fn weak_order_examples() {
        let n = 3;
        let e = AffinePermutation::identity(n);
        assert!(weak_leq(&e, &word(n, &[1, 2, 1])));
        assert!(weak_leq(&word(n, &[1]), &word(n, &[1, 2])));
        assert!(!weak_leq(&word(n, &[1]), &word(n, &[2, 1])));
    }

    #[test]
    fn root_action_examples() {
        let n = 3;
        let a = |i: usize| Root::simple(n, i);
        assert_eq!(word(n, &[1]).act_on_root(&a(1)), a(1).negated());
        assert_eq!(word(n, &[1]).act_on_root(&a(2)), a(1).plus(&a(2)));
        assert_eq!(word(n, &[1, 2, 1]).act_on_root(&a(2)), a(1).negated());
    }

    #[test]
    fn support_examples() {
        assert!(AffinePermutation::identity(3).support().is_empty());
        assert_eq!(
            word(3, &[1, 2]).support(),
            [1usize, 2].into_iter().collect::<BTreeSet<_>>()
        );
        assert_eq!(
            word(3, &[3, 1, 3]).support(),
            [1usize, 3].into_iter().collect::<BTreeSet<_>>()
        );
    }

    #[test]
    fn cover_reflections_examples() {
        let n = 3;
        let a = |i: usize| Root::simple(n, i);
        assert!(AffinePermutation::identity(n)
            .cover_reflection_roots()
            .is_empty());
        let c12: BTreeSet<Root> = [a(1).plus(&a(2))].into_iter().collect();
        assert_eq!(word(n, &[1, 2]).cover_reflection_roots(), c12);
        let c121: BTreeSet<Root> = [a(1), a(2)].into_iter().collect();
        assert_eq!(word(n, &[1, 2, 1]).cover_reflection_roots(), c121);
    }

    #[test]
    fn cover_reflection_removal_gives_coatom() {
        // inv(tw) = inv(w) ∖ {β_t} for each cover reflection t.
        for w in enumerate_up_to_length(3, 5) {
            let inv = w.inversion_set();
            for i in w.right_descents() {
                let beta = w.act_on_root(&Root::simple(3, i)).negated();
                let coatom = w.right_mul_simple(i);
                let mut expect = inv.clone();
                assert!(expect.remove(&beta));
                assert_eq!(coatom.inversion_set(), expect);
            }
        }
    }

    #[test]
    fn projection_examples() {
        let n = 3;
        let j2: BTreeSet<usize> = [2].into_iter().collect();
        assert_eq!(
            parabolic_projection(&word(n, &[2, 1]), &j2).unwrap(),
            word(n, &[2])
        );
        assert_eq!(
            parabolic_projection(&word(n, &[1, 2]), &j2).unwrap(),
            AffinePermutation::identity(n)
        );
        // Projection fixes members of the parabolic.
        let j12: BTreeSet<usize> = [1, 2].into_iter().collect();
        let v = word(n, &[1, 2, 1]);
        assert_eq!(parabolic_projection(&v, &j12).unwrap(), v);
        // The full index set is rejected.
        let all: BTreeSet<usize> = (1..=n).collect();
        assert!(parabolic_projection(&v, &all).is_err());
    }

    #[test]
    fn longest_element_examples() {
        let n = 3;
        let j1: BTreeSet<usize> = [1].into_iter().collect();
        assert_eq!(longest_element(n, &j1).unwrap(), word(n, &[1]));
        let j12: BTreeSet<usize> = [1, 2].into_iter().collect();
        let w0 = longest_element(n, &j12).unwrap();
        assert_eq!(w0, word(n, &[1, 2, 1]));
        assert_eq!(w0.len(), 3);
        assert!(w0.mul(&w0).is_identity());
        // A_3 parabolic of Ã_3 has longest element of length 6.
        let j123: BTreeSet<usize> = [1, 2, 3].into_iter().collect();
        assert_eq!(longest_element(4, &j123).unwrap().len(), 6);
    }

    #[test]
    fn parabolic_enumeration_sizes() {
        let j12: BTreeSet<usize> = [1, 2].into_iter().collect();
        assert_eq!(enumerate_parabolic(3, &j12).unwrap().len(), 6);
        let j123: BTreeSet<usize> = [1, 2, 3].into_iter().collect();
        assert_eq!(enumerate_parabolic(4, &j123).unwrap().len(), 24);
    }

    #[test]
    fn inverse_and_eval() {
        let w = word(4, &[1, 2, 3, 4, 2]);
        let winv = w.inverse();
        assert!(w.mul(&winv).is_identity());
        assert!(winv.mul(&w).is_identity());
        for x in -5..10 {
            assert_eq!(winv.eval(w.eval(x)), x);
        }
        assert_eq!(w.eval(1 + 4), w.eval(1) + 4);
    }

    #[test]
    fn window_validation() {
        assert!(AffinePermutation::from_window(vec![2, 1, 3]).is_ok());
        // Wrong sum.
        assert!(AffinePermutation::from_window(vec![4, 1, 3]).is_err());
        // Repeated residue.
        assert!(AffinePermutation::from_window(vec![1, 4, 1]).is_err());
    }
}
