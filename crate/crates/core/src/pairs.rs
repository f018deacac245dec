//! Ordered pairs of words that partition `{1..m}`, and the
//! sign-reversing involutions that cancel almost all of them.
//!
//! A [`PermutationPair`] `(pi | sigma)` splits `{1..m}` into a front
//! word and a back word; its sign is `(-1)^(floor(|sigma| / 2))` and its
//! inversion count is that of the concatenation `pi sigma`. Three
//! families of such pairs are enumerated here:
//!
//! * [`ip_pairs`]: increasing `pi` with an up-down `sigma` of even
//!   length, on an odd ground set;
//! * [`up_pairs`]: unimodal `pi` of odd length with a down-up `sigma`
//!   containing the maximal letter, on an even ground set;
//! * [`cp_pairs`]: up-down `pi` of even length with the unique
//!   compressed arrangement of the remaining letters as `sigma`.
//!
//! On each family an involution moves two letters across the boundary
//! between the words — the concatenation is left untouched, so the
//! inversion count is preserved while the sign flips. [`f_map`] acts on
//! the first family and fixes exactly the pairs whose concatenation is
//! down-up; [`g_map`] acts on the second and fixes the pairs whose
//! `sigma` leads with the maximal letter while `pi` increases;
//! [`h_map`] acts on the third, has no fixed pairs at all, and
//! preserves the refined [`weight`](PermutationPair::weight) statistic
//! instead of the raw inversion count, occasionally exchanging two
//! letter values to do so.

use std::fmt;

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize};

use crate::words::{
    alternating_words, compressed_up_down_word, unimodal_words, AlternatingMode, Word,
};

/// An ordered pair of words jointly holding each letter `1..=m` once.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PermutationPair {
    pi: Word,
    sigma: Word,
}

impl PermutationPair {
    /// Build a pair after checking that the two words together form a
    /// permutation of `{1..m}`.
    pub fn try_new(pi: Word, sigma: Word) -> Result<Self, String> {
        let mut letters: Vec<u32> = pi.letters().to_vec();
        letters.extend_from_slice(sigma.letters());
        let m = letters.len();
        letters.sort_unstable();
        for (i, &l) in letters.iter().enumerate() {
            if l != i as u32 + 1 {
                return Err(format!(
                    "the words must jointly hold each letter 1..={m} exactly once"
                ));
            }
        }
        Ok(PermutationPair { pi, sigma })
    }

    /// Build a pair, panicking if the words do not partition `{1..m}`.
    pub fn new(pi: Word, sigma: Word) -> Self {
        Self::try_new(pi, sigma).expect("valid permutation pair")
    }

    /// The front word.
    pub fn pi(&self) -> &Word {
        &self.pi
    }

    /// The back word.
    pub fn sigma(&self) -> &Word {
        &self.sigma
    }

    /// Total number of letters `m`.
    pub fn ground_size(&self) -> usize {
        self.pi.len() + self.sigma.len()
    }

    /// The sign `(-1)^(floor(|sigma| / 2))`.
    pub fn sign(&self) -> i32 {
        if (self.sigma.len() / 2) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Inversions of the concatenation `pi sigma`.
    pub fn inv(&self) -> usize {
        self.pi.concat(&self.sigma).inv_count()
    }

    /// The weight used on compressed pairs: inversions of the
    /// concatenation, plus the descents of `pi`'s odd-position subword,
    /// plus half the length of `sigma`, minus one when `pi` is empty.
    pub fn weight(&self) -> i64 {
        let chi_empty = i64::from(self.pi.is_empty());
        self.inv() as i64 + self.pi.des_odd() as i64 - chi_empty + (self.sigma.len() / 2) as i64
    }
}

impl fmt::Display for PermutationPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} | {})", self.pi, self.sigma)
    }
}

#[derive(Deserialize)]
struct PairRepr {
    pi: Word,
    sigma: Word,
}

impl<'de> Deserialize<'de> for PermutationPair {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PairRepr::deserialize(deserializer)?;
        PermutationPair::try_new(repr.pi, repr.sigma).map_err(D::Error::custom)
    }
}

/// How an involution transformed a pair.
///
/// The non-fixed branches come in mutually inverse pairs:
/// `TakeTwo`/`GiveTwo` and `TakeTwoSwapped`/`GiveTwoSwapped`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairBranch {
    /// The pair maps to itself.
    Fixed,
    /// The first two letters of `sigma` move to the end of `pi`.
    TakeTwo,
    /// The last two letters of `pi` move to the front of `sigma`.
    GiveTwo,
    /// Two letter values are exchanged, then two letters move to `pi`.
    TakeTwoSwapped,
    /// Two letter values are exchanged, then two letters move to `sigma`.
    GiveTwoSwapped,
}

impl PairBranch {
    /// The branch that undoes this one (`Fixed` undoes itself).
    pub fn inverse(self) -> PairBranch {
        match self {
            PairBranch::Fixed => PairBranch::Fixed,
            PairBranch::TakeTwo => PairBranch::GiveTwo,
            PairBranch::GiveTwo => PairBranch::TakeTwo,
            PairBranch::TakeTwoSwapped => PairBranch::GiveTwoSwapped,
            PairBranch::GiveTwoSwapped => PairBranch::TakeTwoSwapped,
        }
    }
}

impl fmt::Display for PairBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            PairBranch::Fixed => "fixed",
            PairBranch::TakeTwo => "take-two",
            PairBranch::GiveTwo => "give-two",
            PairBranch::TakeTwoSwapped => "take-two-swapped",
            PairBranch::GiveTwoSwapped => "give-two-swapped",
        };
        f.write_str(name)
    }
}

fn is_increasing_word(word: &Word) -> bool {
    word.letters().windows(2).all(|p| p[0] < p[1])
}

/// Membership in the family [`f_map`] acts on: odd ground set,
/// nonempty increasing `pi`, up-down `sigma` of even length.
pub fn is_ip_pair(pair: &PermutationPair) -> bool {
    pair.ground_size() % 2 == 1
        && !pair.pi.is_empty()
        && is_increasing_word(&pair.pi)
        && pair.sigma.len() % 2 == 0
        && pair.sigma.is_alternating(AlternatingMode::UpDown)
}

/// Membership in the family [`g_map`] acts on: even ground set,
/// unimodal `pi` of odd length, down-up `sigma` of odd length holding
/// the maximal letter.
pub fn is_up_pair(pair: &PermutationPair) -> bool {
    let m = pair.ground_size();
    m % 2 == 0
        && m > 0
        && pair.pi.len() % 2 == 1
        && pair.pi.is_unimodal()
        && pair.sigma.len() % 2 == 1
        && pair.sigma.is_alternating(AlternatingMode::DownUp)
        && pair.sigma.letters().contains(&(m as u32))
}

/// Membership in the family [`h_map`] acts on: even ground set,
/// up-down `pi` of even length, `sigma` the compressed arrangement of
/// the remaining letters.
pub fn is_cp_pair(pair: &PermutationPair) -> bool {
    pair.ground_size() % 2 == 0
        && pair.pi.len() % 2 == 0
        && pair.pi.is_alternating(AlternatingMode::UpDown)
        && pair.sigma.len() % 2 == 0
        && pair.sigma.is_compressed_up_down()
}

/// All pairs on `{1..2n+1}` with increasing `pi` and up-down `sigma`
/// of even length, grouped by `|sigma|` and otherwise lexicographic.
pub fn ip_pairs(n: usize) -> Vec<PermutationPair> {
    use itertools::Itertools;
    let m = (2 * n + 1) as u32;
    let mut out = Vec::new();
    for k in 0..=n {
        for sigma_set in (1..=m).combinations(2 * k) {
            let pi = Word::new((1..=m).filter(|x| !sigma_set.contains(x)).collect());
            for sigma in alternating_words(&sigma_set, AlternatingMode::UpDown) {
                out.push(PermutationPair {
                    pi: pi.clone(),
                    sigma,
                });
            }
        }
    }
    out
}

/// All pairs on `{1..2n+2}` with unimodal `pi` of odd length and
/// down-up `sigma` of odd length holding the letter `2n+2`, grouped by
/// `|sigma|` and otherwise lexicographic.
pub fn up_pairs(n: usize) -> Vec<PermutationPair> {
    use itertools::Itertools;
    let m = (2 * n + 2) as u32;
    let mut out = Vec::new();
    for j in 0..=n {
        for mut sigma_set in (1..m).combinations(2 * j) {
            sigma_set.push(m);
            let complement: Vec<u32> = (1..m).filter(|x| !sigma_set.contains(x)).collect();
            for pi in unimodal_words(&complement) {
                for sigma in alternating_words(&sigma_set, AlternatingMode::DownUp) {
                    out.push(PermutationPair {
                        pi: pi.clone(),
                        sigma,
                    });
                }
            }
        }
    }
    out
}

/// All pairs on `{1..2n}` with up-down `pi` of even length and the
/// compressed arrangement of the remaining letters as `sigma`, grouped
/// by `|pi|` and otherwise lexicographic.
pub fn cp_pairs(n: usize) -> Vec<PermutationPair> {
    use itertools::Itertools;
    let m = (2 * n) as u32;
    let mut out = Vec::new();
    for k in 0..=n {
        for pi_set in (1..=m).combinations(2 * k) {
            let rest: Vec<u32> = (1..=m).filter(|x| !pi_set.contains(x)).collect();
            let sigma = compressed_up_down_word(&rest);
            for pi in alternating_words(&pi_set, AlternatingMode::UpDown) {
                out.push(PermutationPair {
                    pi,
                    sigma: sigma.clone(),
                });
            }
        }
    }
    out
}

/// Move the first two letters of `sigma` to the end of `pi`.
fn take_two(pair: &PermutationPair) -> PermutationPair {
    let sigma = pair.sigma.letters();
    let mut pi = pair.pi.letters().to_vec();
    pi.extend_from_slice(&sigma[..2]);
    PermutationPair {
        pi: Word::new(pi),
        sigma: Word::new(sigma[2..].to_vec()),
    }
}

/// Move the last two letters of `pi` to the front of `sigma`.
fn give_two(pair: &PermutationPair) -> PermutationPair {
    let pi = pair.pi.letters();
    let split = pi.len() - 2;
    let mut sigma = pi[split..].to_vec();
    sigma.extend_from_slice(pair.sigma.letters());
    PermutationPair {
        pi: Word::new(pi[..split].to_vec()),
        sigma: Word::new(sigma),
    }
}

/// Exchange the letter values `x` and `y` wherever they occur.
fn swap_letters(pair: &PermutationPair, x: u32, y: u32) -> PermutationPair {
    let exchange = |w: &Word| {
        Word::new(
            w.letters()
                .iter()
                .map(|&l| {
                    if l == x {
                        y
                    } else if l == y {
                        x
                    } else {
                        l
                    }
                })
                .collect(),
        )
    };
    PermutationPair {
        pi: exchange(&pair.pi),
        sigma: exchange(&pair.sigma),
    }
}

/// The involution on pairs with increasing `pi` and up-down `sigma`.
///
/// Two letters shift toward whichever side keeps both words in shape;
/// pairs whose concatenation is already down-up stay fixed. The
/// concatenation never changes, so the inversion count is preserved
/// while `floor(|sigma| / 2)` changes parity on every non-fixed pair.
pub fn f_map(pair: &PermutationPair) -> (PermutationPair, PairBranch) {
    debug_assert!(is_ip_pair(pair), "not in the family: {pair}");
    let pi = pair.pi.letters();
    let sigma = pair.sigma.letters();
    let branch = if !sigma.is_empty() && pi[pi.len() - 1] < sigma[0] {
        PairBranch::TakeTwo
    } else if pi.len() >= 3 {
        PairBranch::GiveTwo
    } else {
        PairBranch::Fixed
    };
    let image = match branch {
        PairBranch::TakeTwo => take_two(pair),
        PairBranch::GiveTwo => give_two(pair),
        _ => pair.clone(),
    };
    debug_assert!(is_ip_pair(&image), "left the family: {pair} -> {image}");
    debug_assert_eq!(image.inv(), pair.inv());
    (image, branch)
}

/// [`f_map`] without the branch tag.
pub fn f_involution(pair: &PermutationPair) -> PermutationPair {
    f_map(pair).0
}

/// The involution on pairs with unimodal `pi` and down-up `sigma`
/// holding the maximal letter.
///
/// Pairs where `sigma` leads with the maximal letter over an increasing
/// `pi` stay fixed; otherwise two letters shift across the boundary,
/// preserving the concatenation and flipping the sign.
pub fn g_map(pair: &PermutationPair) -> (PermutationPair, PairBranch) {
    debug_assert!(is_up_pair(pair), "not in the family: {pair}");
    let pi = pair.pi.letters();
    let sigma = pair.sigma.letters();
    let top = pair.ground_size() as u32;
    let pi_increasing = is_increasing_word(&pair.pi);
    let branch = if pi[pi.len() - 1] > sigma[0] || (sigma[0] != top && pi_increasing) {
        PairBranch::TakeTwo
    } else if sigma[0] == top && pi_increasing {
        PairBranch::Fixed
    } else {
        PairBranch::GiveTwo
    };
    let image = match branch {
        PairBranch::TakeTwo => take_two(pair),
        PairBranch::GiveTwo => give_two(pair),
        _ => pair.clone(),
    };
    debug_assert!(is_up_pair(&image), "left the family: {pair} -> {image}");
    debug_assert_eq!(image.inv(), pair.inv());
    (image, branch)
}

/// [`g_map`] without the branch tag.
pub fn g_involution(pair: &PermutationPair) -> PermutationPair {
    g_map(pair).0
}

/// The involution on pairs with up-down `pi` and compressed `sigma`.
///
/// Two letters shift across the boundary whenever that lands back in
/// the family with the weight intact; in the two remaining situations
/// a single exchange of letter values repairs the shift, trading one
/// inversion against the descent bookkeeping. Every pair moves: the
/// map has no fixed points, preserves the weight, and flips the sign.
///
/// Panics on the unique pair over the empty ground set.
pub fn h_map(pair: &PermutationPair) -> (PermutationPair, PairBranch) {
    debug_assert!(is_cp_pair(pair), "not in the family: {pair}");
    assert!(
        pair.ground_size() >= 2,
        "the involution needs a nonempty ground set"
    );
    let pi = pair.pi.letters();
    let sigma = pair.sigma.letters();
    let len = pi.len();
    let branch = if len == 0 || (!sigma.is_empty() && pi[len - 2] > sigma[0]) {
        PairBranch::TakeTwo
    } else if sigma.len() < 2 || pi[len - 1] > sigma[1] {
        if len == 2 || pi[len - 4] > pi[len - 2] {
            PairBranch::GiveTwo
        } else {
            PairBranch::GiveTwoSwapped
        }
    } else {
        PairBranch::TakeTwoSwapped
    };
    let image = match branch {
        PairBranch::TakeTwo => take_two(pair),
        PairBranch::GiveTwo => give_two(pair),
        PairBranch::GiveTwoSwapped => {
            // The next-to-last letter staying in pi exchanges values
            // with the greatest smaller letter that ends up in sigma.
            let pivot = pi[len - 3];
            let partner = [pi[len - 2], pi[len - 1]]
                .into_iter()
                .chain(sigma.iter().copied())
                .filter(|&x| x < pivot)
                .max()
                .expect("the detached letters include a smaller one");
            let image = give_two(&swap_letters(pair, pivot, partner));
            debug_assert_eq!(image.inv() + 1, pair.inv());
            image
        }
        PairBranch::TakeTwoSwapped => {
            // The last letter of pi exchanges values with the smallest
            // greater letter of sigma.
            let pivot = pi[len - 1];
            let partner = sigma
                .iter()
                .copied()
                .filter(|&x| x > pivot)
                .min()
                .expect("sigma holds a greater letter");
            let image = take_two(&swap_letters(pair, pivot, partner));
            debug_assert_eq!(image.inv(), pair.inv() + 1);
            image
        }
        PairBranch::Fixed => unreachable!("every pair moves"),
    };
    debug_assert!(is_cp_pair(&image), "left the family: {pair} -> {image}");
    debug_assert_eq!(image.weight(), pair.weight());
    (image, branch)
}

/// [`h_map`] without the branch tag.
pub fn h_involution(pair: &PermutationPair) -> PermutationPair {
    h_map(pair).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{hat_t, q_secant, q_secant_odd, q_tangent};
    use crate::qlaurent::{neg_q_pochhammer, q_binomial, LaurentPoly};
    use num_bigint::BigInt;
    use num_traits::One;

    fn pair(pi: &[u32], sigma: &[u32]) -> PermutationPair {
        PermutationPair::new(Word::new(pi.to_vec()), Word::new(sigma.to_vec()))
    }

    /// Signed generating function `sum sign * q^inv` of some pairs.
    fn signed_inv_sum<'a, I: IntoIterator<Item = &'a PermutationPair>>(pairs: I) -> LaurentPoly {
        LaurentPoly::from_terms(
            pairs
                .into_iter()
                .map(|p| (p.inv() as i64, BigInt::from(p.sign()))),
        )
    }

    #[test]
    fn construction_validates_the_partition() {
        assert!(PermutationPair::try_new(Word::new(vec![2, 1]), Word::new(vec![3])).is_ok());
        // letter 3 missing
        assert!(PermutationPair::try_new(Word::new(vec![2, 1]), Word::new(vec![4])).is_err());
        // letter 1 twice
        assert!(PermutationPair::try_new(Word::new(vec![1, 2]), Word::new(vec![1])).is_err());
        assert_eq!(pair(&[1, 2], &[3, 4]).to_string(), "(1,2 | 3,4)");
        assert_eq!(pair(&[1, 2], &[]).to_string(), "(1,2 | ())");
    }

    #[test]
    fn serde_round_trip_and_validation() {
        let p = pair(&[2, 5, 7, 1], &[8, 6, 4, 9, 3]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, "{\"pi\":[2,5,7,1],\"sigma\":[8,6,4,9,3]}");
        let back: PermutationPair = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<PermutationPair>("{\"pi\":[1],\"sigma\":[3]}").is_err());
        assert_eq!(
            serde_json::to_string(&PairBranch::GiveTwoSwapped).unwrap(),
            "\"give-two-swapped\""
        );
    }

    #[test]
    fn sign_and_inversions_read_off_the_concatenation() {
        let split = pair(&[2, 5, 7, 1], &[8, 6, 4, 9, 3]);
        assert_eq!(split.sign(), 1);
        let whole = pair(&[], &[2, 5, 7, 1, 8, 6, 4, 9, 3]);
        assert_eq!(split.inv(), whole.inv());
        assert_eq!(whole.sign(), 1);
        assert_eq!(pair(&[1], &[3, 2]).sign(), -1);
        // the concatenation 132 has the single inversion (3, 2)
        assert_eq!(pair(&[1], &[3, 2]).inv(), 1);
    }

    #[test]
    fn weight_examples() {
        assert_eq!(pair(&[], &[]).weight(), -1);
        assert_eq!(pair(&[], &[1, 2]).weight(), 0);
        assert_eq!(pair(&[1, 2], &[]).weight(), 0);
        // inv(1423) = 2, no odd-position descent, two sigma letters
        assert_eq!(pair(&[1, 4], &[2, 3]).weight(), 3);
    }

    #[test]
    fn family_sizes_are_frozen() {
        assert_eq!(ip_pairs(0).len(), 1);
        assert_eq!(ip_pairs(1).len(), 4);
        assert_eq!(ip_pairs(3).len(), 624);
        assert_eq!(ip_pairs(4).len(), 18256);
        assert_eq!(up_pairs(0).len(), 1);
        assert_eq!(up_pairs(3).len(), 4880);
        assert_eq!(cp_pairs(0).len(), 1);
        assert_eq!(cp_pairs(1).len(), 2);
        assert_eq!(cp_pairs(4).len(), 3472);
        assert_eq!(cp_pairs(5).len(), 126752);
    }

    #[test]
    fn generated_pairs_lie_in_their_families() {
        for p in ip_pairs(2) {
            assert!(is_ip_pair(&p), "{p}");
        }
        for p in up_pairs(2) {
            assert!(is_up_pair(&p), "{p}");
        }
        for p in cp_pairs(2) {
            assert!(is_cp_pair(&p), "{p}");
        }
    }

    #[test]
    fn first_family_worked_examples() {
        let (image, branch) = f_map(&pair(&[1, 2, 3], &[]));
        assert_eq!(branch, PairBranch::GiveTwo);
        assert_eq!(image, pair(&[1], &[2, 3]));
        let (back, back_branch) = f_map(&image);
        assert_eq!(back_branch, PairBranch::TakeTwo);
        assert_eq!(back, pair(&[1, 2, 3], &[]));

        let (same, fixed) = f_map(&pair(&[3], &[1, 2]));
        assert_eq!(fixed, PairBranch::Fixed);
        assert_eq!(same, pair(&[3], &[1, 2]));
    }

    #[test]
    fn first_family_involution_properties() {
        for n in 0..=3usize {
            let pairs = ip_pairs(n);
            for p in &pairs {
                let (image, branch) = f_map(p);
                assert!(is_ip_pair(&image), "{p}");
                assert_eq!(image.inv(), p.inv());
                let down_up = p
                    .pi
                    .concat(&p.sigma)
                    .is_alternating(AlternatingMode::DownUp);
                if branch == PairBranch::Fixed {
                    assert_eq!(image, *p);
                    assert!(down_up, "fixed pairs concatenate down-up: {p}");
                } else {
                    assert!(!down_up);
                    assert_eq!(image.sign(), -p.sign(), "{p}");
                    let (back, back_branch) = f_map(&image);
                    assert_eq!(back, *p);
                    assert_eq!(back_branch, branch.inverse());
                }
            }
        }
    }

    #[test]
    fn first_family_fixed_pairs_sum_to_the_q_tangent() {
        for n in 0..=3usize {
            let fixed: Vec<PermutationPair> = ip_pairs(n)
                .into_iter()
                .filter(|p| f_map(p).1 == PairBranch::Fixed)
                .collect();
            let mut expected = q_tangent(n);
            if n % 2 == 1 {
                expected = -expected;
            }
            assert_eq!(signed_inv_sum(&fixed), expected, "n = {n}");
        }
    }

    #[test]
    fn first_family_groups_by_sigma_length() {
        // Unsigned: the pairs with |sigma| = 2k carry the inversion
        // generating function [2n+1 choose 2k]_q S_2k(q).
        for n in 0..=3usize {
            let pairs = ip_pairs(n);
            for k in 0..=n {
                let group = LaurentPoly::from_terms(
                    pairs
                        .iter()
                        .filter(|p| p.sigma.len() == 2 * k)
                        .map(|p| (p.inv() as i64, BigInt::one())),
                );
                let expected = &q_binomial(2 * n + 1, 2 * k as isize) * &q_secant(k);
                assert_eq!(group, expected, "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn second_family_worked_examples() {
        let (same, fixed) = g_map(&pair(&[1], &[2]));
        assert_eq!(fixed, PairBranch::Fixed);
        assert_eq!(same, pair(&[1], &[2]));

        // pi increasing but sigma not led by the top letter: take two.
        let (image, branch) = g_map(&pair(&[1], &[3, 2, 4]));
        assert_eq!(branch, PairBranch::TakeTwo);
        assert_eq!(image, pair(&[1, 3, 2], &[4]));
        let (back, back_branch) = g_map(&image);
        assert_eq!(back_branch, PairBranch::GiveTwo);
        assert_eq!(back, pair(&[1], &[3, 2, 4]));
    }

    #[test]
    fn second_family_involution_properties() {
        for n in 0..=3usize {
            let pairs = up_pairs(n);
            let top = (2 * n + 2) as u32;
            for p in &pairs {
                let (image, branch) = g_map(p);
                assert!(is_up_pair(&image), "{p}");
                assert_eq!(image.inv(), p.inv());
                let fixed_shape =
                    p.sigma.letters()[0] == top && is_increasing_word(&p.pi);
                if branch == PairBranch::Fixed {
                    assert_eq!(image, *p);
                    assert!(fixed_shape, "{p}");
                } else {
                    assert!(!fixed_shape, "{p}");
                    assert_eq!(image.sign(), -p.sign(), "{p}");
                    let (back, back_branch) = g_map(&image);
                    assert_eq!(back, *p);
                    assert_eq!(back_branch, branch.inverse());
                }
            }
        }
    }

    #[test]
    fn second_family_fixed_pairs_sum_to_the_alternating_secant_tangent() {
        for n in 0..=3usize {
            let fixed: Vec<PermutationPair> = up_pairs(n)
                .into_iter()
                .filter(|p| g_map(p).1 == PairBranch::Fixed)
                .collect();
            let mut expected = hat_t(n);
            if n % 2 == 1 {
                expected = -expected;
            }
            assert_eq!(signed_inv_sum(&fixed), expected, "n = {n}");
        }
    }

    #[test]
    fn second_family_groups_by_sigma_length() {
        // Unsigned: the pairs with |sigma| = 2k+1 carry
        // [2n+1 choose 2k]_q (-q;q)_{2n-2k} T_{2k+1}(q).
        for n in 0..=3usize {
            let pairs = up_pairs(n);
            for k in 0..=n {
                let group = LaurentPoly::from_terms(
                    pairs
                        .iter()
                        .filter(|p| p.sigma.len() == 2 * k + 1)
                        .map(|p| (p.inv() as i64, BigInt::one())),
                );
                let expected = &(&q_binomial(2 * n + 1, 2 * k as isize)
                    * &neg_q_pochhammer(2 * n - 2 * k))
                    * &q_tangent(k);
                assert_eq!(group, expected, "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn third_family_worked_examples() {
        let (image, branch) = h_map(&pair(&[], &[1, 2]));
        assert_eq!(branch, PairBranch::TakeTwo);
        assert_eq!(image, pair(&[1, 2], &[]));
        let (back, back_branch) = h_map(&image);
        assert_eq!(back_branch, PairBranch::GiveTwo);
        assert_eq!(back, pair(&[], &[1, 2]));

        // The swapped branches: 1423 gives two letters away only after
        // exchanging 4 with 3, dropping one inversion.
        let source = pair(&[1, 4, 2, 3], &[]);
        let (image, branch) = h_map(&source);
        assert_eq!(branch, PairBranch::GiveTwoSwapped);
        assert_eq!(image, pair(&[1, 3], &[2, 4]));
        assert_eq!(image.inv() + 1, source.inv());
        assert_eq!(image.weight(), source.weight());
        let (back, back_branch) = h_map(&image);
        assert_eq!(back_branch, PairBranch::TakeTwoSwapped);
        assert_eq!(back, source);
    }

    #[test]
    fn third_family_involution_properties() {
        for n in 1..=4usize {
            let pairs = cp_pairs(n);
            for p in &pairs {
                let (image, branch) = h_map(p);
                assert!(is_cp_pair(&image), "{p}");
                assert_ne!(branch, PairBranch::Fixed, "every pair moves: {p}");
                assert_ne!(image, *p);
                assert_eq!(image.weight(), p.weight(), "{p}");
                assert_eq!(image.sign(), -p.sign(), "{p}");
                let (back, back_branch) = h_map(&image);
                assert_eq!(back, *p, "{p}");
                assert_eq!(back_branch, branch.inverse());
            }
            // Complete cancellation: the signed weight sum vanishes.
            let total = LaurentPoly::from_terms(
                pairs.iter().map(|p| (p.weight(), BigInt::from(p.sign()))),
            );
            assert!(total.is_zero(), "n = {n}: {total}");
        }
    }

    #[test]
    fn third_family_groups_by_pi_length() {
        // Unsigned: the pairs with |pi| = 2k carry the weight
        // generating function q^((n-k)^2) [2n choose 2k]_q S^o_2k(q).
        for n in 0..=4usize {
            let pairs = cp_pairs(n);
            for k in 0..=n {
                let group = LaurentPoly::from_terms(
                    pairs
                        .iter()
                        .filter(|p| p.pi.len() == 2 * k)
                        .map(|p| (p.weight(), BigInt::one())),
                );
                let d = (n - k) as i64;
                let expected = &q_binomial(2 * n, 2 * k as isize)
                    .shifted(d * d)
                    * &q_secant_odd(k);
                assert_eq!(group, expected, "n = {n}, k = {k}");
            }
        }
    }
}
