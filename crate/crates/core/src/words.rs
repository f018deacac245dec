//! Words with distinct positive letters and their order statistics.
//!
//! A [`Word`] is a sequence of distinct positive integers. Tree labels,
//! permutations, and the components of permutation pairs are all words;
//! the statistics here (inversions, odd-position descents) and the shape
//! predicates (unimodal, alternating, compressed up-down) are the raw
//! material every signed enumeration in the crate is built from.
//!
//! Only relative order ever matters, so generators accept arbitrary letter
//! sets, not just `{1..n}`.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A word: a sequence of distinct positive integers.
///
/// Serialized as a plain JSON array of its letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u32>);

/// The two alternating shapes.
///
/// `DownUp` words satisfy `w1 > w2 < w3 > w4 < ...`; `UpDown` words satisfy
/// `w1 < w2 > w3 < w4 > ...`. Words of length 0 or 1 are both.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlternatingMode {
    DownUp,
    UpDown,
}

impl Word {
    /// Builds a word, validating that all letters are positive and distinct.
    pub fn try_new(letters: Vec<u32>) -> Result<Self, String> {
        if letters.contains(&0) {
            return Err("word letters must be positive".into());
        }
        let mut seen = letters.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|p| p[0] == p[1]) {
            return Err(format!("word has repeated letters: {letters:?}"));
        }
        Ok(Word(letters))
    }

    /// Builds a word; panics if letters repeat or are zero.
    pub fn new(letters: Vec<u32>) -> Self {
        Self::try_new(letters).expect("invalid word")
    }

    /// The empty word.
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The letters in order.
    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    /// The word read right to left.
    pub fn reversed(&self) -> Self {
        Word(self.0.iter().rev().copied().collect())
    }

    /// This word followed by `other`.
    pub fn concat(&self, other: &Word) -> Self {
        Word::new(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    /// Number of inversions: pairs `i < j` with `w_i > w_j`.
    pub fn inv_count(&self) -> usize {
        let w = &self.0;
        let mut inv = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// True if the word rises to a unique peak and then falls
    /// (`w1 < ... < wk > ... > wm` for some peak position `k`).
    /// A single letter is unimodal. Panics on the empty word.
    pub fn is_unimodal(&self) -> bool {
        assert!(!self.is_empty(), "is_unimodal is undefined on the empty word");
        let w = &self.0;
        let peak = (0..w.len()).max_by_key(|&i| w[i]).unwrap();
        w[..peak].windows(2).all(|p| p[0] < p[1])
            && w[peak..].windows(2).all(|p| p[0] > p[1])
            && (peak == 0 || w[peak - 1] < w[peak])
            && (peak + 1 == w.len() || w[peak] > w[peak + 1])
    }

    /// True if the word alternates in the given mode; empty and
    /// single-letter words count as alternating in both modes.
    pub fn is_alternating(&self, mode: AlternatingMode) -> bool {
        self.0.windows(2).enumerate().all(|(i, p)| {
            let descent_here = match mode {
                AlternatingMode::DownUp => i % 2 == 0,
                AlternatingMode::UpDown => i % 2 == 1,
            };
            if descent_here {
                p[0] > p[1]
            } else {
                p[0] < p[1]
            }
        })
    }

    /// Number of descents of the subword formed by the letters in odd
    /// positions (1-based): indices `i` with `w_{2i-1} > w_{2i+1}`.
    pub fn des_odd(&self) -> usize {
        self.0
            .iter()
            .step_by(2)
            .collect::<Vec<_>>()
            .windows(2)
            .filter(|p| p[0] > p[1])
            .count()
    }

    /// True if this is the compressed up-down arrangement of its letters:
    /// the letters ascend along the odd positions (1-based) left to right
    /// and then continue ascending along the even positions right to left,
    /// i.e. `w_1 < w_3 < ... < w_{2l-1} < w_{2l} < w_{2l-2} < ... < w_2`.
    /// Such a word is up-down, and each letter set of even size admits
    /// exactly one. Panics on odd length.
    pub fn is_compressed_up_down(&self) -> bool {
        assert!(
            self.0.len() % 2 == 0,
            "compressed up-down words have even length"
        );
        let w = &self.0;
        let l = w.len() / 2;
        if l == 0 {
            return true;
        }
        (0..l - 1).all(|i| w[2 * i] < w[2 * i + 2])
            && w[2 * l - 2] < w[2 * l - 1]
            && (1..l).all(|i| w[2 * i + 1] < w[2 * i - 1])
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "()");
        }
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let letters = Vec::<u32>::deserialize(deserializer)?;
        Word::try_new(letters).map_err(D::Error::custom)
    }
}

/// All unimodal words on the given letter set, in lexicographic order.
///
/// There are exactly `2^(m-1)` of them for `m` letters: each word is
/// determined by which non-maximal letters sit on the ascending side of
/// the peak. Panics on an empty letter set.
pub fn unimodal_words(letters: &[u32]) -> Vec<Word> {
    assert!(!letters.is_empty(), "unimodal words need at least one letter");
    let mut sorted = letters.to_vec();
    sorted.sort_unstable();
    let choices = sorted.len() - 1;
    let mut out: Vec<Word> = (0..1u64 << choices)
        .map(|mask| unimodal_from_mask(&sorted, mask))
        .collect();
    out.sort();
    out
}

/// The unimodal word on a strictly increasing letter slice whose ascending
/// side holds exactly the non-maximal letters selected by `mask` (bit `i`
/// picks `sorted[i]`); everything else descends after the peak.
pub(crate) fn unimodal_from_mask(sorted: &[u32], mask: u64) -> Word {
    let peak_index = sorted.len() - 1;
    let mut word = Vec::with_capacity(sorted.len());
    for (i, &l) in sorted[..peak_index].iter().enumerate() {
        if mask & (1 << i) != 0 {
            word.push(l);
        }
    }
    word.push(sorted[peak_index]);
    for (i, &l) in sorted[..peak_index].iter().enumerate().rev() {
        if mask & (1 << i) == 0 {
            word.push(l);
        }
    }
    Word(word)
}

/// All alternating words on the given letter set in the given mode, in
/// lexicographic order. The empty set yields the empty word.
pub fn alternating_words(letters: &[u32], mode: AlternatingMode) -> Vec<Word> {
    let mut sorted = letters.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(sorted.len());
    let mut used = vec![false; sorted.len()];
    extend_alternating(&sorted, mode, &mut prefix, &mut used, &mut out);
    out
}

/// All alternating permutations of `{1..n}` in the given mode, in
/// lexicographic order.
pub fn alternating_perms(n: usize, mode: AlternatingMode) -> Vec<Word> {
    let letters: Vec<u32> = (1..=n as u32).collect();
    alternating_words(&letters, mode)
}

fn extend_alternating(
    letters: &[u32],
    mode: AlternatingMode,
    prefix: &mut Vec<u32>,
    used: &mut [bool],
    out: &mut Vec<Word>,
) {
    if prefix.len() == letters.len() {
        out.push(Word(prefix.clone()));
        return;
    }
    for i in 0..letters.len() {
        if used[i] {
            continue;
        }
        let l = letters[i];
        if let Some(&prev) = prefix.last() {
            let descent_here = match mode {
                AlternatingMode::DownUp => prefix.len() % 2 == 1,
                AlternatingMode::UpDown => prefix.len() % 2 == 0,
            };
            if descent_here && prev <= l {
                continue;
            }
            if !descent_here && prev >= l {
                continue;
            }
        }
        used[i] = true;
        prefix.push(l);
        extend_alternating(letters, mode, prefix, used, out);
        prefix.pop();
        used[i] = false;
    }
}

/// The unique compressed up-down word on an even-size letter set: the
/// smaller half sits ascending in the odd positions, the larger half fills
/// the even positions from right to left in increasing order.
pub fn compressed_up_down_word(letters: &[u32]) -> Word {
    assert!(letters.len() % 2 == 0, "compressed up-down words have even length");
    let mut sorted = letters.to_vec();
    sorted.sort_unstable();
    let l = sorted.len() / 2;
    let mut word = vec![0u32; sorted.len()];
    for i in 0..l {
        word[2 * i] = sorted[i];
    }
    // positions 2l, 2l-2, ..., 2 (1-based) get the top half ascending
    for (j, &x) in sorted[l..].iter().enumerate() {
        word[sorted.len() - 1 - 2 * j] = x;
    }
    Word(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlaurent::{neg_q_pochhammer, LaurentPoly};
    use itertools::Itertools;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn w(letters: &[u32]) -> Word {
        Word::new(letters.to_vec())
    }

    #[test]
    fn word_validation() {
        assert!(Word::try_new(vec![2, 1, 3]).is_ok());
        assert!(Word::try_new(vec![]).is_ok());
        assert!(Word::try_new(vec![2, 1, 2]).is_err());
        assert!(Word::try_new(vec![0, 1]).is_err());
    }

    #[test]
    fn inversion_counts() {
        assert_eq!(w(&[2, 1]).inv_count(), 1);
        assert_eq!(w(&[1, 2, 3]).inv_count(), 0);
        assert_eq!(w(&[9, 5, 2]).inv_count(), 3);
        assert_eq!(w(&[4, 6, 7, 3, 8, 1, 9, 5, 2]).inv_count(), 19);
        assert_eq!(Word::empty().inv_count(), 0);
    }

    #[test]
    fn unimodal_predicate() {
        assert!(w(&[5]).is_unimodal());
        assert!(w(&[1, 3, 2]).is_unimodal());
        assert!(w(&[2, 3, 1]).is_unimodal());
        assert!(w(&[1, 2, 3]).is_unimodal());
        assert!(w(&[3, 2, 1]).is_unimodal());
        assert!(!w(&[2, 1, 3]).is_unimodal());
        assert!(!w(&[3, 1, 2]).is_unimodal());
        assert!(!w(&[2, 5, 7, 1, 8]).is_unimodal());
        assert!(w(&[4, 6, 7, 3]).is_unimodal());
    }

    #[test]
    fn alternating_predicate() {
        assert!(Word::empty().is_alternating(AlternatingMode::DownUp));
        assert!(Word::empty().is_alternating(AlternatingMode::UpDown));
        assert!(w(&[7]).is_alternating(AlternatingMode::DownUp));
        assert!(w(&[2, 1, 3]).is_alternating(AlternatingMode::DownUp));
        assert!(!w(&[2, 1, 3]).is_alternating(AlternatingMode::UpDown));
        assert!(w(&[1, 4, 2, 3]).is_alternating(AlternatingMode::UpDown));
        assert!(!w(&[1, 2, 3]).is_alternating(AlternatingMode::UpDown));
        assert!(w(&[5, 1, 4, 2, 3]).is_alternating(AlternatingMode::DownUp));
    }

    #[test]
    fn odd_position_subword_descents() {
        // odd-position subwords: 34 -> 0, 21 -> 1, 254 -> 1
        assert_eq!(w(&[3, 1, 4, 2]).des_odd(), 0);
        assert_eq!(w(&[2, 4, 1, 3]).des_odd(), 1);
        assert_eq!(w(&[2, 1, 5, 3, 4]).des_odd(), 1);
        assert_eq!(w(&[1, 2]).des_odd(), 0);
        assert_eq!(w(&[5, 1, 4, 2, 3]).des_odd(), 2);
        assert_eq!(Word::empty().des_odd(), 0);
    }

    #[test]
    fn compressed_up_down_examples() {
        assert!(w(&[1, 2]).is_compressed_up_down());
        assert!(w(&[1, 4, 2, 3]).is_compressed_up_down());
        assert!(!w(&[1, 3, 2, 4]).is_compressed_up_down());
        assert!(!w(&[2, 4, 1, 3]).is_compressed_up_down());
        assert!(Word::empty().is_compressed_up_down());
        assert_eq!(compressed_up_down_word(&[1, 2, 3, 4]), w(&[1, 4, 2, 3]));
        assert_eq!(
            compressed_up_down_word(&[1, 2, 3, 4, 5, 6]),
            w(&[1, 6, 2, 5, 3, 4])
        );
    }

    #[test]
    fn compressed_word_is_the_unique_one() {
        // over all permutations of {1..2l}, exactly one is compressed,
        // and it carries l^2 - l inversions
        for l in 1..=3usize {
            let letters: Vec<u32> = (1..=2 * l as u32).collect();
            let compressed: Vec<Word> = letters
                .iter()
                .copied()
                .permutations(2 * l)
                .map(Word::new)
                .filter(Word::is_compressed_up_down)
                .collect();
            assert_eq!(compressed.len(), 1, "l = {l}");
            assert_eq!(compressed[0], compressed_up_down_word(&letters));
            assert_eq!(compressed[0].inv_count(), l * l - l);
            assert!(compressed[0].is_alternating(AlternatingMode::UpDown));
        }
        for l in 4..=5usize {
            let letters: Vec<u32> = (1..=2 * l as u32).collect();
            let word = compressed_up_down_word(&letters);
            assert!(word.is_compressed_up_down());
            assert_eq!(word.inv_count(), l * l - l);
        }
    }

    #[test]
    fn unimodal_generation() {
        let words = unimodal_words(&[2, 5, 9]);
        let rendered: Vec<Vec<u32>> = words.iter().map(|w| w.letters().to_vec()).collect();
        assert_eq!(
            rendered,
            vec![vec![2, 5, 9], vec![2, 9, 5], vec![5, 9, 2], vec![9, 5, 2]]
        );
        assert_eq!(unimodal_words(&[7]), vec![w(&[7])]);
        for m in 1..=8usize {
            let letters: Vec<u32> = (1..=m as u32).collect();
            let words = unimodal_words(&letters);
            assert_eq!(words.len(), 1 << (m - 1));
            assert!(words.iter().all(Word::is_unimodal));
            assert!(words.windows(2).all(|p| p[0] < p[1]), "lexicographic order");
        }
    }

    #[test]
    fn unimodal_inversions_match_subset_sums() {
        // the inversion generating function over unimodal words on m
        // letters is (-q;q)_{m-1}, for any letter set
        for letters in [
            (1..=6u32).collect::<Vec<_>>(),
            vec![2, 5, 9, 11, 14, 20],
            (1..=8u32).collect::<Vec<_>>(),
        ] {
            let sum = LaurentPoly::from_terms(
                unimodal_words(&letters)
                    .iter()
                    .map(|w| (w.inv_count() as i64, BigInt::from(1))),
            );
            assert_eq!(sum, neg_q_pochhammer(letters.len() - 1));
        }
    }

    #[test]
    fn alternating_generation() {
        assert_eq!(alternating_perms(0, AlternatingMode::DownUp), vec![Word::empty()]);
        assert_eq!(alternating_perms(1, AlternatingMode::UpDown), vec![w(&[1])]);
        assert_eq!(
            alternating_perms(3, AlternatingMode::DownUp),
            vec![w(&[2, 1, 3]), w(&[3, 1, 2])]
        );
        assert_eq!(
            alternating_perms(4, AlternatingMode::UpDown),
            vec![
                w(&[1, 3, 2, 4]),
                w(&[1, 4, 2, 3]),
                w(&[2, 3, 1, 4]),
                w(&[2, 4, 1, 3]),
                w(&[3, 4, 1, 2])
            ]
        );
        // zigzag counts 1, 1, 1, 2, 5, 16, 61, 272, 1385 in both modes
        let expect = [1usize, 1, 1, 2, 5, 16, 61, 272, 1385];
        for (n, &count) in expect.iter().enumerate() {
            assert_eq!(alternating_perms(n, AlternatingMode::DownUp).len(), count);
            assert_eq!(alternating_perms(n, AlternatingMode::UpDown).len(), count);
        }
        // arbitrary letter sets: only relative order matters
        assert_eq!(alternating_words(&[4, 7, 19], AlternatingMode::DownUp).len(), 2);
    }

    proptest! {
        #[test]
        fn inversions_of_reverse_are_complementary(perm in proptest::sample::subsequence((1u32..=30).collect::<Vec<_>>(), 0..=8).prop_shuffle()) {
            let word = Word::new(perm);
            let n = word.len();
            prop_assert_eq!(
                word.inv_count() + word.reversed().inv_count(),
                n * n.saturating_sub(1) / 2
            );
        }

        #[test]
        fn unimodal_words_agree_with_filter(mask in 1u32..64) {
            // compare the closed-form generator against brute force over
            // permutations of a scattered letter set
            let letters: Vec<u32> = (0..6).filter(|i| mask & (1 << i) != 0).map(|i| 3 * i + 2).collect();
            let brute: Vec<Word> = letters
                .iter()
                .copied()
                .permutations(letters.len())
                .map(Word::new)
                .filter(Word::is_unimodal)
                .sorted()
                .collect();
            prop_assert_eq!(unimodal_words(&letters), brute);
        }
    }
}
