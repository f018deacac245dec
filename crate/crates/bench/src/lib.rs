//! Shared fixtures for the benchmark targets.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zigzag_core::trees::sample_labeled_tree;
use zigzag_core::LabeledTree;

/// A reproducible batch of uniform random labeled trees on `{1..2n+1}`.
pub fn seeded_tree_batch(n: usize, count: usize, seed: u64) -> Vec<LabeledTree> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| sample_labeled_tree(n, &mut rng)).collect()
}
