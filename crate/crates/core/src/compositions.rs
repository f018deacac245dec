//! Ordered set compositions of `{1..m}` with blocks of odd size.
//!
//! A set composition is a sequence of disjoint nonempty blocks whose union
//! is `{1..m}`; here every block must have odd cardinality. These are the
//! label-content skeletons of the labeled trees in [`crate::trees`]: a tree
//! on `k` nodes takes its node labels from a composition into `k` blocks.
//!
//! Two independent paths are provided: a streaming generator
//! ([`odd_set_compositions`]) and a closed-form count
//! ([`count_odd_set_compositions`]) via the first-block recursion
//! `O(m,k) = sum_s C(m,s) O(m-s,k-1)` over odd `s`. The test suite checks
//! them against each other.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::qlaurent::binomial;

/// An ordered sequence of disjoint blocks (each a sorted set of letters)
/// covering `{1..m}`. Serialized as an array of arrays.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SetComposition {
    blocks: Vec<Vec<u32>>,
}

impl SetComposition {
    /// Builds a composition from blocks, sorting each block.
    pub fn new(mut blocks: Vec<Vec<u32>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        SetComposition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Total number of letters across all blocks.
    pub fn ground_size(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Checks that this is a composition of `{1..m}` into odd blocks:
    /// every block nonempty of odd size, blocks disjoint, union `{1..m}`.
    pub fn validate(&self, m: usize) -> Result<(), String> {
        let mut seen = vec![false; m + 1];
        for b in &self.blocks {
            if b.is_empty() || b.len() % 2 == 0 {
                return Err(format!("block {b:?} does not have odd size"));
            }
            for &x in b {
                if x == 0 || x as usize > m {
                    return Err(format!("letter {x} outside 1..={m}"));
                }
                if seen[x as usize] {
                    return Err(format!("letter {x} appears twice"));
                }
                seen[x as usize] = true;
            }
        }
        if let Some(missing) = (1..=m).find(|&x| !seen[x]) {
            return Err(format!("letter {missing} missing"));
        }
        Ok(())
    }
}

impl std::fmt::Display for SetComposition {
    /// Comma-joined blocks separated by bars: `(1,2,5 | 3 | 4,6,7)`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            for (j, x) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, ")")
    }
}

/// Streams all compositions of `{1..m}` into exactly `k` ordered blocks of
/// odd size, in lexicographic order of the block sequences (blocks compared
/// as sorted letter vectors). Empty when `m` and `k` have different parity
/// or `k > m`; the single empty composition when `m = k = 0`.
pub fn odd_set_compositions(m: usize, k: usize) -> OddSetCompositions {
    let remaining: Vec<u32> = (1..=m as u32).collect();
    OddSetCompositions {
        k,
        blocks: Vec::new(),
        stack: vec![Frame::new(remaining)],
        emitted_empty: false,
    }
}

/// Streaming iterator over odd-block set compositions; see
/// [`odd_set_compositions`].
pub struct OddSetCompositions {
    k: usize,
    blocks: Vec<Vec<u32>>,
    stack: Vec<Frame>,
    emitted_empty: bool,
}

/// One level of the search: a pool of remaining letters plus an odometer
/// over its nonempty subsets in lexicographic order (a subset is an
/// increasing index vector; successor = extend by the next index if
/// possible, otherwise pop and bump).
struct Frame {
    remaining: Vec<u32>,
    subset: Vec<usize>,
    started: bool,
}

impl Frame {
    fn new(remaining: Vec<u32>) -> Self {
        Frame {
            remaining,
            subset: Vec::new(),
            started: false,
        }
    }

    /// Advances to the next subset in lexicographic order; false when done.
    fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            if self.remaining.is_empty() {
                return false;
            }
            self.subset = vec![0];
            return true;
        }
        let r = self.remaining.len();
        if let Some(&last) = self.subset.last() {
            if last + 1 < r {
                self.subset.push(last + 1);
                return true;
            }
        }
        // can't extend: pop the maximal index, bump the new last
        self.subset.pop();
        match self.subset.last_mut() {
            None => false,
            Some(last) => {
                *last += 1;
                true
            }
        }
    }

    fn subset_letters(&self) -> Vec<u32> {
        self.subset.iter().map(|&i| self.remaining[i]).collect()
    }

    fn rest_letters(&self) -> Vec<u32> {
        let mut rest = Vec::with_capacity(self.remaining.len() - self.subset.len());
        let mut take = self.subset.iter().peekable();
        for (i, &l) in self.remaining.iter().enumerate() {
            if take.peek() == Some(&&i) {
                take.next();
            } else {
                rest.push(l);
            }
        }
        rest
    }
}

impl Iterator for OddSetCompositions {
    type Item = SetComposition;

    fn next(&mut self) -> Option<SetComposition> {
        // the empty ground set composes only into zero blocks
        if self.k == 0 {
            let hit = !self.emitted_empty && self.stack.last().is_some_and(|f| f.remaining.is_empty());
            self.emitted_empty = true;
            return hit.then(|| SetComposition { blocks: Vec::new() });
        }
        while let Some(frame) = self.stack.last_mut() {
            let blocks_left = self.k - self.blocks.len();
            let r = frame.remaining.len();
            // feasibility: enough letters, matching parity
            if r < blocks_left || (r - blocks_left) % 2 != 0 {
                self.stack.pop();
                self.blocks.pop();
                continue;
            }
            // the last block has no choice: it takes the whole pool
            if blocks_left == 1 {
                if frame.started {
                    self.stack.pop();
                    self.blocks.pop();
                    continue;
                }
                frame.started = true;
                let mut blocks = self.blocks.clone();
                blocks.push(frame.remaining.clone());
                return Some(SetComposition { blocks });
            }
            let max_block = r - (blocks_left - 1);
            let mut found = false;
            while frame.advance() {
                let s = frame.subset.len();
                if s % 2 == 1 && s <= max_block {
                    found = true;
                    break;
                }
            }
            if !found {
                self.stack.pop();
                self.blocks.pop();
                continue;
            }
            let block = frame.subset_letters();
            let rest = frame.rest_letters();
            self.blocks.push(block);
            self.stack.push(Frame::new(rest));
        }
        None
    }
}

/// Counts the compositions of `{1..m}` into exactly `k` ordered odd blocks
/// via `O(m,k) = sum_{s odd} C(m,s) O(m-s,k-1)`, `O(0,0) = 1`.
pub fn count_odd_set_compositions(m: usize, k: usize) -> BigInt {
    // table[j][b] = O(j, b)
    let mut table = vec![vec![BigInt::zero(); k + 1]; m + 1];
    table[0][0] = BigInt::one();
    for j in 1..=m {
        for b in 1..=k {
            let mut acc = BigInt::zero();
            let mut s = 1;
            while s <= j {
                if j - s >= b - 1 {
                    acc += binomial(j, s as isize) * &table[j - s][b - 1];
                }
                s += 2;
            }
            table[j][b] = acc;
        }
    }
    table[m][k].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count_by_generation(m: usize, k: usize) -> usize {
        odd_set_compositions(m, k).count()
    }

    #[test]
    fn closed_form_counts() {
        let cases = [
            (0, 0, 1u64),
            (1, 1, 1),
            (3, 1, 1),
            (3, 3, 6),
            (4, 2, 8),
            (4, 4, 24),
            (5, 3, 60),
            (5, 5, 120),
            (7, 3, 546),
            (7, 5, 4200),
            (7, 7, 5040),
            (9, 3, 4920),
            (9, 5, 115920),
            (9, 7, 423360),
            (9, 9, 362880),
        ];
        for (m, k, expect) in cases {
            assert_eq!(
                count_odd_set_compositions(m, k),
                BigInt::from(expect),
                "O({m},{k})"
            );
        }
        // parity mismatches and overlong compositions are empty
        assert_eq!(count_odd_set_compositions(4, 1), BigInt::zero());
        assert_eq!(count_odd_set_compositions(3, 2), BigInt::zero());
        assert_eq!(count_odd_set_compositions(2, 4), BigInt::zero());
        assert_eq!(count_odd_set_compositions(0, 2), BigInt::zero());
    }

    #[test]
    fn generator_matches_closed_form() {
        for m in 0..=8usize {
            for k in 0..=m {
                assert_eq!(
                    BigInt::from(count_by_generation(m, k)),
                    count_odd_set_compositions(m, k),
                    "gen vs count at ({m},{k})"
                );
            }
        }
    }

    #[test]
    fn generated_compositions_are_valid_and_distinct() {
        for (m, k) in [(5usize, 3usize), (6, 2), (7, 5), (7, 1)] {
            let all: Vec<SetComposition> = odd_set_compositions(m, k).collect();
            for c in &all {
                c.validate(m).unwrap();
                assert_eq!(c.block_count(), k);
            }
            let mut dedup = all.clone();
            dedup.sort_by(|a, b| a.blocks.cmp(&b.blocks));
            dedup.dedup();
            assert_eq!(dedup.len(), all.len(), "duplicates at ({m},{k})");
        }
    }

    #[test]
    fn generation_order_is_lexicographic() {
        let all: Vec<Vec<Vec<u32>>> = odd_set_compositions(3, 3)
            .map(|c| c.blocks().to_vec())
            .collect();
        assert_eq!(
            all,
            vec![
                vec![vec![1], vec![2], vec![3]],
                vec![vec![1], vec![3], vec![2]],
                vec![vec![2], vec![1], vec![3]],
                vec![vec![2], vec![3], vec![1]],
                vec![vec![3], vec![1], vec![2]],
                vec![vec![3], vec![2], vec![1]],
            ]
        );
        let first: Vec<Vec<u32>> = odd_set_compositions(5, 3).next().unwrap().blocks().to_vec();
        assert_eq!(first, vec![vec![1], vec![2], vec![3, 4, 5]]);
        // deterministic: two runs agree
        let again: Vec<SetComposition> = odd_set_compositions(5, 3).collect();
        let once: Vec<SetComposition> = odd_set_compositions(5, 3).collect();
        assert_eq!(once, again);
    }

    #[test]
    fn edge_cases() {
        assert_eq!(count_by_generation(0, 0), 1);
        assert_eq!(odd_set_compositions(0, 0).next().unwrap().block_count(), 0);
        assert_eq!(count_by_generation(2, 0), 0);
        assert_eq!(count_by_generation(1, 1), 1);
        let single: Vec<SetComposition> = odd_set_compositions(9, 1).collect();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].blocks()[0], (1..=9).collect::<Vec<u32>>());
    }
}
