//! Sorting words, sortable elements, and the label machinery of Cambrian
//! combinatorics inside finite standard parabolics.
//!
//! Given a reduced word c = s₁s₂⋯s_k for a Coxeter element of a finite
//! parabolic, the c-sorting word of w is the lexicographically leftmost
//! reduced subword of c^∞ for w, found by a greedy scan: at each occurrence
//! of a letter s, take it exactly when s is a left descent of the unmatched
//! remainder. The element is c-sortable when the letters taken from
//! successive copies of c are weakly nested.
//!
//! For each letter r there is a first occurrence of r in c^∞ that the
//! sorting word omits — the "skip" of r. Skips are recorded as prefix
//! lengths into the sorting word, so the label
//! C_c^r(v) = (prefix before the skip of r)·α_r is a pure fold.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::perm::{enumerate_parabolic, longest_element, AffinePermutation, SimpleIndex};
use crate::root::Root;

/// A reduced word for a Coxeter element of a finite standard parabolic:
/// pairwise-distinct letters, a proper subset of the n simple indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoxeterWord {
    n: usize,
    letters: Vec<SimpleIndex>,
}

impl CoxeterWord {
    pub fn new(n: usize, letters: Vec<SimpleIndex>) -> Result<CoxeterWord> {
        let set: BTreeSet<SimpleIndex> = letters.iter().copied().collect();
        if set.len() != letters.len() {
            return Err(Error::RepeatedLetter(letters));
        }
        if set.len() >= n {
            return Err(Error::FullParabolic);
        }
        debug_assert!(letters.iter().all(|&i| (1..=n).contains(&i)));
        Ok(CoxeterWord { n, letters })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[SimpleIndex] {
        &self.letters
    }

    pub fn letter_set(&self) -> BTreeSet<SimpleIndex> {
        self.letters.iter().copied().collect()
    }

    /// The reversed word, a reduced word for c⁻¹.
    pub fn reversed(&self) -> CoxeterWord {
        let mut letters = self.letters.clone();
        letters.reverse();
        CoxeterWord {
            n: self.n,
            letters,
        }
    }

    pub fn element(&self) -> AffinePermutation {
        AffinePermutation::from_word(self.n, &self.letters)
    }
}

/// The c-sorting word of an element, with its block structure and skips.
#[derive(Clone, Debug)]
pub struct SortingWord {
    /// Letters of the sorting word, in order.
    pub letters: Vec<SimpleIndex>,
    /// Letters taken from each copy of c (empty trailing blocks trimmed).
    pub blocks: Vec<Vec<SimpleIndex>>,
    /// For each letter r of c: the number of sorting-word letters strictly
    /// before the first omitted occurrence of r in c^∞.
    pub skips: BTreeMap<SimpleIndex, usize>,
}

impl SortingWord {
    /// Blocks weakly nested as sets: I₁ ⊇ I₂ ⊇ ⋯ (the sortability test).
    pub fn is_nested(&self) -> bool {
        let sets: Vec<BTreeSet<SimpleIndex>> = self
            .blocks
            .iter()
            .map(|b| b.iter().copied().collect())
            .collect();
        sets.windows(2).all(|w| w[1].is_subset(&w[0]))
    }
}

/// Greedy scan of c^∞ computing the c-sorting word of w.
/// Errors if the support of w is not contained in the letters of c.
pub fn sorting_word(c: &CoxeterWord, w: &AffinePermutation) -> Result<SortingWord> {
    let letter_set = c.letter_set();
    let support = w.support();
    if !support.is_subset(&letter_set) {
        return Err(Error::SupportNotInWord {
            support: support.into_iter().collect(),
            letters: letter_set.into_iter().collect(),
        });
    }

    let mut remainder = w.clone();
    let mut letters: Vec<SimpleIndex> = Vec::new();
    let mut blocks: Vec<Vec<SimpleIndex>> = Vec::new();
    let mut skips: BTreeMap<SimpleIndex, usize> = BTreeMap::new();
    let cap = w.len() + 2;
    for _ in 0..cap {
        if remainder.is_identity() && skips.len() == c.letters().len() {
            break;
        }
        let mut block = Vec::new();
        for &s in c.letters() {
            if !remainder.is_identity() && remainder.is_left_descent(s) {
                letters.push(s);
                block.push(s);
                remainder = remainder.left_mul_simple(s);
            } else {
                skips.entry(s).or_insert(letters.len());
            }
        }
        if !block.is_empty() {
            blocks.push(block);
        }
    }
    debug_assert!(remainder.is_identity());
    debug_assert_eq!(skips.len(), c.letters().len());
    debug_assert_eq!(letters.len(), w.len());
    Ok(SortingWord {
        letters,
        blocks,
        skips,
    })
}

/// True iff w is c-sortable (blocks of the sorting word weakly nested).
pub fn is_sortable(c: &CoxeterWord, w: &AffinePermutation) -> Result<bool> {
    Ok(sorting_word(c, w)?.is_nested())
}

/// The label C_c^r(v): the prefix of the c-sorting word before the skip of r,
/// applied to α_r. Errors if v is not c-sortable or r is not a letter of c.
pub fn label(c: &CoxeterWord, v: &AffinePermutation, r: SimpleIndex) -> Result<Root> {
    let sw = sorting_word(c, v)?;
    if !sw.is_nested() {
        return Err(Error::NotSortable);
    }
    let &t = sw
        .skips
        .get(&r)
        .ok_or_else(|| Error::SupportNotInWord {
            support: vec![r],
            letters: c.letter_set().into_iter().collect(),
        })?;
    let mut root = Root::simple(c.rank(), r);
    for &i in sw.letters[..t].iter().rev() {
        root = root.reflect_simple(i);
    }
    Ok(root)
}

/// All labels C_c(v) = {C_c^r(v) : r a letter of c}, keyed by r.
pub fn labels(c: &CoxeterWord, v: &AffinePermutation) -> Result<BTreeMap<SimpleIndex, Root>> {
    let sw = sorting_word(c, v)?;
    if !sw.is_nested() {
        return Err(Error::NotSortable);
    }
    let mut out = BTreeMap::new();
    for (&r, &t) in &sw.skips {
        let mut root = Root::simple(c.rank(), r);
        for &i in sw.letters[..t].iter().rev() {
            root = root.reflect_simple(i);
        }
        out.insert(r, root);
    }
    Ok(out)
}

/// All c-sortable elements of the parabolic on c's letters, sorted by
/// (length, window). Exhaustive filter over the finite parabolic.
pub fn enumerate_sortables(c: &CoxeterWord) -> Result<Vec<AffinePermutation>> {
    let all = enumerate_parabolic(c.rank(), &c.letter_set())?;
    let mut out = Vec::new();
    for w in all {
        if is_sortable(c, &w)? {
            out.push(w);
        }
    }
    Ok(out)
}

/// Read-only memo of one word's sortables with their inversion sets.
/// Builds once, answers π_↓ queries without re-enumerating the parabolic.
pub struct Sortables {
    word: CoxeterWord,
    elements: Vec<AffinePermutation>,
    inv_sets: Vec<BTreeSet<Root>>,
}

impl Sortables {
    pub fn new(c: &CoxeterWord) -> Result<Sortables> {
        let elements = enumerate_sortables(c)?;
        let inv_sets = elements.iter().map(|v| v.inversion_set()).collect();
        Ok(Sortables {
            word: c.clone(),
            elements,
            inv_sets,
        })
    }

    pub fn word(&self) -> &CoxeterWord {
        &self.word
    }

    pub fn elements(&self) -> &[AffinePermutation] {
        &self.elements
    }

    /// π_↓^c(w): the unique maximum c-sortable weakly below w. The maximum
    /// exists and is unique by the theory, and this is asserted.
    pub fn pi_down(&self, w: &AffinePermutation) -> Result<AffinePermutation> {
        let support = w.support();
        if !support.is_subset(&self.word.letter_set()) {
            return Err(Error::SupportNotInWord {
                support: support.into_iter().collect(),
                letters: self.word.letter_set().into_iter().collect(),
            });
        }
        let inv_w = w.inversion_set();
        let below: Vec<usize> = (0..self.elements.len())
            .filter(|&i| self.inv_sets[i].is_subset(&inv_w))
            .collect();
        let &best = below
            .iter()
            .max_by_key(|&&i| self.elements[i].len())
            .expect("the identity is sortable and below everything");
        for &i in &below {
            assert!(
                self.inv_sets[i].is_subset(&self.inv_sets[best]),
                "sortables below {w:?} have no unique maximum"
            );
        }
        Ok(self.elements[best].clone())
    }
}

/// Process-wide memo of [`Sortables`] keyed by (rank, letters). Enumerating
/// a parabolic is the dominant cost of π_↓ and the antipode; the memo makes
/// repeated calls against the same word cheap. Entries are immutable once
/// built.
fn shared_sortables(c: &CoxeterWord) -> Result<Arc<Sortables>> {
    type Memo = Mutex<HashMap<(usize, Vec<SimpleIndex>), Arc<Sortables>>>;
    static MEMO: OnceLock<Memo> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (c.rank(), c.letters().to_vec());
    if let Some(hit) = memo.lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let built = Arc::new(Sortables::new(c)?);
    Ok(memo
        .lock()
        .unwrap()
        .entry(key)
        .or_insert(built)
        .clone())
}

/// π_↓^c(w): the unique maximum c-sortable element weakly below w.
/// Requires w to lie in the finite parabolic on c's letters.
///
/// Computed as the brute-force maximum over all c-sortables below w, against
/// the shared enumeration memo.
pub fn pi_down(c: &CoxeterWord, w: &AffinePermutation) -> Result<AffinePermutation> {
    shared_sortables(c)?.pi_down(w)
}

/// The finite-type antipode: the unique c⁻¹-sortable u' with
/// C_c(u) = −C_{c⁻¹}(u'), computed as π_↓^{c⁻¹}(u·w₀) against a
/// caller-provided cache of the reversed word's sortables.
pub fn antipode_finite_cached(
    c: &CoxeterWord,
    reversed: &Sortables,
    u: &AffinePermutation,
) -> Result<AffinePermutation> {
    debug_assert_eq!(reversed.word().letters(), c.reversed().letters());
    if !is_sortable(c, u)? {
        return Err(Error::NotSortable);
    }
    let w0 = longest_element(c.rank(), &c.letter_set())?;
    reversed.pi_down(&u.mul(&w0))
}

/// The finite-type antipode: the unique c⁻¹-sortable u' with
/// C_c(u) = −C_{c⁻¹}(u'), computed as π_↓^{c⁻¹}(u·w₀).
pub fn antipode_finite(c: &CoxeterWord, u: &AffinePermutation) -> Result<AffinePermutation> {
    let reversed = shared_sortables(&c.reversed())?;
    antipode_finite_cached(c, &reversed, u)
}

/// Start of the final consecutive run of word positions in the first block.
///
/// With c = t₁t₂⋯t_{k−1} read positionally, returns the paper-style index g:
/// the first block of u's c-sorting word has the form
/// t_{i₁}⋯t_{i_r} t_g t_{g+1}⋯t_{k−1}, and g = k when the last letter of c
/// is absent from the first block. For the reversed (descending) word the
/// analogous g′ is `c.letters().len() − first_block_tail(c, u) + 1`.
pub fn first_block_tail(c: &CoxeterWord, u: &AffinePermutation) -> Result<usize> {
    let sw = sorting_word(c, u)?;
    if !sw.is_nested() {
        return Err(Error::NotSortable);
    }
    let m = c.letters().len();
    let first: BTreeSet<SimpleIndex> = match sw.blocks.first() {
        Some(b) => b.iter().copied().collect(),
        None => BTreeSet::new(),
    };
    let mut start = m; // 0-based start of the trailing run; m means empty
    while start > 0 && first.contains(&c.letters()[start - 1]) {
        start -= 1;
    }
    Ok(start + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cw(n: usize, letters: &[usize]) -> CoxeterWord {
        CoxeterWord::new(n, letters.to_vec()).unwrap()
    }

    fn word(n: usize, w: &[usize]) -> AffinePermutation {
        AffinePermutation::from_word(n, w)
    }

    #[test]
    fn sorting_word_of_identity() {
        let c = cw(3, &[1, 2]);
        let sw = sorting_word(&c, &AffinePermutation::identity(3)).unwrap();
        assert!(sw.letters.is_empty());
        assert_eq!(sw.skips[&1], 0);
        assert_eq!(sw.skips[&2], 0);
        assert!(sw.is_nested());
    }

    #[test]
    fn sorting_word_blocks() {
        let c = cw(3, &[1, 2]);
        let sw = sorting_word(&c, &word(3, &[1, 2, 1])).unwrap();
        assert_eq!(sw.letters, vec![1, 2, 1]);
        assert_eq!(sw.blocks, vec![vec![1, 2], vec![1]]);
        assert!(sw.is_nested());

        let sw = sorting_word(&c, &word(3, &[2, 1])).unwrap();
        assert_eq!(sw.letters, vec![2, 1]);
        assert_eq!(sw.blocks, vec![vec![2], vec![1]]);
        assert!(!sw.is_nested());
    }

    #[test]
    fn sortability_examples() {
        let c = cw(3, &[1, 2]);
        assert!(is_sortable(&c, &word(3, &[1, 2, 1])).unwrap());
        assert!(!is_sortable(&c, &word(3, &[2, 1])).unwrap());
        assert!(is_sortable(&c, &AffinePermutation::identity(3)).unwrap());
        // Support outside the word is an error, not "false".
        assert!(is_sortable(&c, &word(3, &[3])).is_err());
    }

    #[test]
    fn label_examples() {
        let n = 3;
        let a = |i: usize| Root::simple(n, i);
        let c = cw(n, &[1, 2]);
        // Empty prefix: labels of the identity are the simple roots.
        assert_eq!(label(&c, &AffinePermutation::identity(n), 1).unwrap(), a(1));
        let v = word(n, &[1, 2]);
        assert_eq!(label(&c, &v, 2).unwrap(), a(1).plus(&a(2)).negated());
        assert_eq!(label(&c, &v, 1).unwrap(), a(2));
        // A skip can occur before any letter is taken: C^{s1}(s2) = α1.
        assert_eq!(label(&c, &word(n, &[2]), 1).unwrap(), a(1));
    }

    #[test]
    fn labels_not_sortable_is_error() {
        let c = cw(3, &[1, 2]);
        assert!(matches!(
            label(&c, &word(3, &[2, 1]), 1),
            Err(Error::NotSortable)
        ));
    }

    #[test]
    fn sortable_counts_are_catalan() {
        // A_1: 2, A_2: 5, A_3: 14 (Catalan numbers).
        assert_eq!(enumerate_sortables(&cw(3, &[1])).unwrap().len(), 2);
        assert_eq!(enumerate_sortables(&cw(3, &[1, 2])).unwrap().len(), 5);
        assert_eq!(enumerate_sortables(&cw(4, &[1, 2, 3])).unwrap().len(), 14);
    }

    #[test]
    fn pi_down_examples() {
        let n = 3;
        let c = cw(n, &[1, 2]);
        // Idempotence on sortables.
        for v in enumerate_sortables(&c).unwrap() {
            assert_eq!(pi_down(&c, &v).unwrap(), v);
        }
        // Sortables below s2s1 are {e, s2}.
        assert_eq!(pi_down(&c, &word(n, &[2, 1])).unwrap(), word(n, &[2]));
    }

    #[test]
    fn antipode_examples() {
        let n = 3;
        // A_1 with c = s1: the antipode of e is s1.
        let c1 = cw(n, &[1]);
        assert_eq!(
            antipode_finite(&c1, &AffinePermutation::identity(n)).unwrap(),
            word(n, &[1])
        );
        // A_2 with c = s1s2: t1 ↦ t2t1, and the label sets are negatives.
        let c = cw(n, &[1, 2]);
        let u = word(n, &[1]);
        let u_prime = antipode_finite(&c, &u).unwrap();
        assert_eq!(u_prime, word(n, &[2, 1]));
        let lu: BTreeSet<Root> = labels(&c, &u).unwrap().into_values().collect();
        let lu_prime: BTreeSet<Root> = labels(&c.reversed(), &u_prime)
            .unwrap()
            .into_values()
            .map(|r| r.negated())
            .collect();
        assert_eq!(lu, lu_prime);
        // w0 maps to e.
        let w0 = word(n, &[1, 2, 1]);
        assert!(antipode_finite(&c, &w0)
            .unwrap()
            .is_identity());
    }

    #[test]
    fn first_block_tail_examples() {
        // u = e gives the sentinel g = k (empty run).
        let c = cw(4, &[1, 2]);
        assert_eq!(
            first_block_tail(&c, &AffinePermutation::identity(4)).unwrap(),
            3
        );
        // A_2, c = t1t2, u = t2: first block "t2", so g = 2.
        assert_eq!(first_block_tail(&c, &word(4, &[2])).unwrap(), 2);
        // A_3, c = t1t2t3, u = t1t3: first block "t1 t3", so g = 3.
        let c3 = cw(5, &[1, 2, 3]);
        assert_eq!(first_block_tail(&c3, &word(5, &[1, 3])).unwrap(), 3);
    }
}
