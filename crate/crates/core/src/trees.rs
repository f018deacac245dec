//! Complete binary trees labeled by odd unimodal words.
//!
//! A labeled tree on `[m]` (with `m` odd) is a complete binary tree —
//! every node has zero or two children — whose nodes carry nonempty
//! odd-length unimodal words that together partition `{1, ..., m}`.
//! Trees whose labels are all singletons increasing away from the root
//! form the increasing subfamily.
//!
//! Reading the labels in in-order and concatenating gives the tree's
//! word, a permutation of `[m]`; its inversion count is the tree's `inv`
//! statistic, and half the edge count is the `h` statistic whose parity
//! is the tree's sign. Trees are generated exhaustively by combining a
//! shape, an odd set composition, and a unimodal word per block, and can
//! be sampled uniformly at random by drawing those three layers with the
//! correct weights.

use std::fmt;

use itertools::Itertools;
use num_bigint::{BigInt, BigUint, RandBigInt};
use num_traits::One;
use rand::Rng;
use serde::de::Error as DeError;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::compositions::{count_odd_set_compositions, odd_set_compositions};
use crate::numbers::catalan;
use crate::qlaurent::binomial;
use crate::words::{unimodal_from_mask, unimodal_words, Word};

/// Direction taken when stepping from a node to one of its children.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Left,
    Right,
}

/// Ways a tree can fail validation against a ground set.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("label {0} is not a nonempty odd unimodal word")]
    BadLabel(String),
    #[error("labels do not partition 1..={0}")]
    BadCoverage(u32),
}

/// A complete binary tree whose nodes carry unimodal words of odd length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledTree {
    label: Word,
    children: Option<Box<(LabeledTree, LabeledTree)>>,
}

impl LabeledTree {
    /// A childless node. Panics if the label is not odd unimodal.
    pub fn leaf(label: Word) -> Self {
        Self::assert_label(&label);
        LabeledTree {
            label,
            children: None,
        }
    }

    /// An internal node with two children. Panics if the label is not
    /// odd unimodal.
    pub fn node(label: Word, left: LabeledTree, right: LabeledTree) -> Self {
        Self::assert_label(&label);
        LabeledTree {
            label,
            children: Some(Box::new((left, right))),
        }
    }

    fn assert_label(label: &Word) {
        assert!(label.len() % 2 == 1, "tree labels have odd length");
        assert!(label.is_unimodal(), "tree labels are unimodal");
    }

    pub fn label(&self) -> &Word {
        &self.label
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_none()
    }

    pub fn children(&self) -> Option<(&LabeledTree, &LabeledTree)> {
        self.children.as_ref().map(|c| (&c.0, &c.1))
    }

    pub fn left(&self) -> Option<&LabeledTree> {
        self.children().map(|(l, _)| l)
    }

    pub fn right(&self) -> Option<&LabeledTree> {
        self.children().map(|(_, r)| r)
    }

    pub fn node_count(&self) -> usize {
        1 + self
            .children()
            .map_or(0, |(l, r)| l.node_count() + r.node_count())
    }

    /// Half the number of edges; the tree's sign is `(-1)` to this power.
    pub fn half_edges(&self) -> usize {
        (self.node_count() - 1) / 2
    }

    /// Total number of letters across all labels.
    pub fn ground_size(&self) -> usize {
        self.label.len()
            + self
                .children()
                .map_or(0, |(l, r)| l.ground_size() + r.ground_size())
    }

    /// The nodes in in-order: left subtree, node, right subtree.
    pub fn in_order(&self) -> Vec<&LabeledTree> {
        let mut out = Vec::new();
        self.collect_in_order(&mut out);
        out
    }

    fn collect_in_order<'a>(&'a self, out: &mut Vec<&'a LabeledTree>) {
        if let Some((l, r)) = self.children() {
            l.collect_in_order(out);
            out.push(self);
            r.collect_in_order(out);
        } else {
            out.push(self);
        }
    }

    /// The concatenation of all labels in in-order.
    pub fn word(&self) -> Word {
        let mut letters = Vec::with_capacity(self.ground_size());
        for node in self.in_order() {
            letters.extend_from_slice(node.label.letters());
        }
        Word::new(letters)
    }

    /// Inversion count of the tree's word.
    pub fn inv(&self) -> usize {
        self.word().inv_count()
    }

    /// True iff every label is a singleton and labels strictly increase
    /// from each node to its children.
    pub fn is_increasing(&self) -> bool {
        fn go(t: &LabeledTree, bound: Option<u32>) -> bool {
            if t.label.len() != 1 {
                return false;
            }
            let letter = t.label.letters()[0];
            if bound.is_some_and(|b| letter < b) {
                return false;
            }
            match t.children() {
                None => true,
                Some((l, r)) => go(l, Some(letter)) && go(r, Some(letter)),
            }
        }
        go(self, None)
    }

    /// A node is active when its subtree is not increasing but both of
    /// its branches are (vacuously so for a leaf). Returns the in-order
    /// index of the first active node, or `None` iff the tree is
    /// increasing.
    pub fn first_active_index(&self) -> Option<usize> {
        self.first_active().map(|(index, _)| index)
    }

    pub(crate) fn first_active_path(&self) -> Option<Vec<Branch>> {
        self.first_active().map(|(_, path)| path)
    }

    fn first_active(&self) -> Option<(usize, Vec<Branch>)> {
        fn walk<'a>(
            t: &'a LabeledTree,
            path: &mut Vec<Branch>,
            index: &mut usize,
        ) -> Option<(usize, Vec<Branch>)> {
            if let Some((l, _)) = t.children() {
                path.push(Branch::Left);
                let hit = walk(l, path, index);
                path.pop();
                if hit.is_some() {
                    return hit;
                }
            }
            let branches_increasing = match t.children() {
                None => true,
                Some((l, r)) => l.is_increasing() && r.is_increasing(),
            };
            if branches_increasing && !t.is_increasing() {
                return Some((*index, path.clone()));
            }
            *index += 1;
            if let Some((_, r)) = t.children() {
                path.push(Branch::Right);
                let hit = walk(r, path, index);
                path.pop();
                if hit.is_some() {
                    return hit;
                }
            }
            None
        }
        walk(self, &mut Vec::new(), &mut 0)
    }

    /// The tree reflected left-to-right: children swapped at every node
    /// and every label reversed (unimodality survives reversal).
    pub fn mirrored(&self) -> LabeledTree {
        let label = self.label.reversed();
        match self.children() {
            None => LabeledTree::leaf(label),
            Some((l, r)) => LabeledTree::node(label, r.mirrored(), l.mirrored()),
        }
    }

    pub(crate) fn set_label(&mut self, label: Word) {
        Self::assert_label(&label);
        self.label = label;
    }

    /// Rebuild this node in place from its owned value.
    pub(crate) fn replace_with(&mut self, f: impl FnOnce(LabeledTree) -> LabeledTree) {
        let placeholder = LabeledTree {
            label: Word::new(vec![1]),
            children: None,
        };
        let old = std::mem::replace(self, placeholder);
        *self = f(old);
    }

    /// Decompose into label and children, consuming the tree.
    pub(crate) fn into_parts(self) -> (Word, Option<(LabeledTree, LabeledTree)>) {
        (self.label, self.children.map(|c| (c.0, c.1)))
    }

    pub(crate) fn subtree_at_path(&self, path: &[Branch]) -> &LabeledTree {
        let mut cur = self;
        for branch in path {
            let (l, r) = cur.children().expect("path descends into a leaf");
            cur = match branch {
                Branch::Left => l,
                Branch::Right => r,
            };
        }
        cur
    }

    pub(crate) fn subtree_at_path_mut(&mut self, path: &[Branch]) -> &mut LabeledTree {
        let mut cur = self;
        for branch in path {
            let c = cur.children.as_mut().expect("path descends into a leaf");
            cur = match branch {
                Branch::Left => &mut c.0,
                Branch::Right => &mut c.1,
            };
        }
        cur
    }

    /// Check all structural invariants against the ground set `1..=ground`:
    /// odd unimodal labels (enforced at construction, revalidated here) and
    /// letters forming a partition of the ground set.
    pub fn validate(&self, ground: u32) -> Result<(), TreeError> {
        let mut letters = Vec::with_capacity(ground as usize);
        for node in self.in_order() {
            if node.label.is_empty() || node.label.len() % 2 == 0 || !node.label.is_unimodal() {
                return Err(TreeError::BadLabel(node.label.to_string()));
            }
            letters.extend_from_slice(node.label.letters());
        }
        letters.sort_unstable();
        let expected: Vec<u32> = (1..=ground).collect();
        if letters != expected {
            return Err(TreeError::BadCoverage(ground));
        }
        Ok(())
    }
}

impl fmt::Display for LabeledTree {
    /// Parenthesized in-order rendering, e.g. `((4) 6,7,3 ((8) 1 (9,5,2)))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.children() {
            None => write!(f, "({})", self.label),
            Some((l, r)) => write!(f, "({l} {} {r})", self.label),
        }
    }
}

impl Serialize for LabeledTree {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let entries = if self.is_leaf() { 1 } else { 3 };
        let mut map = serializer.serialize_map(Some(entries))?;
        map.serialize_entry("label", &self.label)?;
        if let Some((l, r)) = self.children() {
            map.serialize_entry("left", l)?;
            map.serialize_entry("right", r)?;
        }
        map.end()
    }
}

#[derive(Deserialize)]
struct TreeRepr {
    label: Word,
    #[serde(default)]
    left: Option<Box<LabeledTree>>,
    #[serde(default)]
    right: Option<Box<LabeledTree>>,
}

impl<'de> Deserialize<'de> for LabeledTree {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = TreeRepr::deserialize(deserializer)?;
        if repr.label.is_empty() || repr.label.len() % 2 == 0 || !repr.label.is_unimodal() {
            return Err(D::Error::custom(format!(
                "label {} is not a nonempty odd unimodal word",
                repr.label
            )));
        }
        match (repr.left, repr.right) {
            (None, None) => Ok(LabeledTree::leaf(repr.label)),
            (Some(l), Some(r)) => Ok(LabeledTree::node(repr.label, *l, *r)),
            _ => Err(D::Error::custom("a node has either no children or both")),
        }
    }
}

/// An unlabeled complete binary tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Leaf,
    Node(Box<(Shape, Shape)>),
}

impl Shape {
    pub fn node_count(&self) -> usize {
        match self {
            Shape::Leaf => 1,
            Shape::Node(c) => 1 + c.0.node_count() + c.1.node_count(),
        }
    }
}

/// All complete binary tree shapes with `m` nodes, ordered by growing
/// left subtree. There are `C_{(m-1)/2}` of them. Panics on even `m`.
pub fn complete_shapes(m: usize) -> Vec<Shape> {
    assert!(m % 2 == 1, "complete binary trees have an odd node count");
    if m == 1 {
        return vec![Shape::Leaf];
    }
    let mut out = Vec::new();
    for left_nodes in (1..m - 1).step_by(2) {
        let right_nodes = m - 1 - left_nodes;
        for right in complete_shapes(right_nodes) {
            for left in complete_shapes(left_nodes) {
                out.push(Shape::Node(Box::new((left, right.clone()))));
            }
        }
    }
    out
}

/// Assign `labels` to the shape's nodes by in-order position.
fn fill_shape(shape: &Shape, labels: &[Word]) -> LabeledTree {
    fn go(shape: &Shape, labels: &[Word], cursor: &mut usize) -> LabeledTree {
        match shape {
            Shape::Leaf => {
                let t = LabeledTree::leaf(labels[*cursor].clone());
                *cursor += 1;
                t
            }
            Shape::Node(c) => {
                let left = go(&c.0, labels, cursor);
                let label = labels[*cursor].clone();
                *cursor += 1;
                let right = go(&c.1, labels, cursor);
                LabeledTree::node(label, left, right)
            }
        }
    }
    let mut cursor = 0;
    let tree = go(shape, labels, &mut cursor);
    debug_assert_eq!(cursor, labels.len(), "every label is consumed");
    tree
}

/// Every labeled tree on `[2n+1]`, streamed. Trees with `2k+1` nodes
/// arise for each `k = 0..=n` by pairing a shape with an odd set
/// composition of `[2n+1]` into `2k+1` blocks and one unimodal word per
/// block, blocks filling nodes in in-order position.
pub fn labeled_trees(n: usize) -> impl Iterator<Item = LabeledTree> {
    let m = 2 * n + 1;
    (0..=n).flat_map(move |k| {
        let shapes = complete_shapes(2 * k + 1);
        odd_set_compositions(m, 2 * k + 1).flat_map(move |comp| {
            let menus: Vec<Vec<Word>> = comp
                .blocks()
                .iter()
                .map(|block| unimodal_words(block))
                .collect();
            shapes
                .clone()
                .into_iter()
                .flat_map(move |shape| {
                    menus
                        .clone()
                        .into_iter()
                        .multi_cartesian_product()
                        .map(move |labels| fill_shape(&shape, &labels))
                })
        })
    })
}

/// Closed-form size of the family streamed by [`labeled_trees`]:
/// sum over `k` of `O(2n+1, 2k+1) * 2^(2n-2k) * C_k`.
pub fn count_labeled_trees(n: usize) -> BigInt {
    (0..=n)
        .map(|k| {
            count_odd_set_compositions(2 * n + 1, 2 * k + 1)
                * (BigInt::one() << (2 * n - 2 * k))
                * catalan(k)
        })
        .sum()
}

fn to_biguint(value: BigInt) -> BigUint {
    value
        .to_biguint()
        .expect("tree-counting weights are nonnegative")
}

/// Draw a tree on `[2n+1]` uniformly at random: node count with
/// probability proportional to the number of trees carrying it, shape by
/// recursive Catalan splitting, composition block by block with each
/// block size weighted by its completions, and each label by a uniform
/// unimodal choice.
pub fn sample_labeled_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> LabeledTree {
    let m = 2 * n + 1;
    let weights: Vec<BigUint> = (0..=n)
        .map(|k| {
            to_biguint(
                count_odd_set_compositions(m, 2 * k + 1)
                    * (BigInt::one() << (2 * n - 2 * k))
                    * catalan(k),
            )
        })
        .collect();
    let total: BigUint = weights.iter().sum();
    let mut draw = rng.gen_biguint_below(&total);
    let mut k = n;
    for (i, weight) in weights.iter().enumerate() {
        if draw < *weight {
            k = i;
            break;
        }
        draw -= weight;
    }
    let shape = sample_shape(2 * k + 1, rng);
    let blocks = sample_odd_composition(m, 2 * k + 1, rng);
    let labels: Vec<Word> = blocks
        .iter()
        .map(|block| {
            let mask = if block.len() == 1 {
                0
            } else {
                rng.gen_range(0..1u64 << (block.len() - 1))
            };
            unimodal_from_mask(block, mask)
        })
        .collect();
    fill_shape(&shape, &labels)
}

/// Uniform complete binary tree shape with the given node count.
fn sample_shape<R: Rng + ?Sized>(nodes: usize, rng: &mut R) -> Shape {
    if nodes == 1 {
        return Shape::Leaf;
    }
    let k = (nodes - 1) / 2;
    let total = to_biguint(catalan(k));
    let mut draw = rng.gen_biguint_below(&total);
    for left_k in 0..k {
        let weight = to_biguint(catalan(left_k) * catalan(k - 1 - left_k));
        if draw < weight {
            let left = sample_shape(2 * left_k + 1, rng);
            let right = sample_shape(nodes - 2 - 2 * left_k, rng);
            return Shape::Node(Box::new((left, right)));
        }
        draw -= weight;
    }
    unreachable!("Catalan split weights sum to the total")
}

/// Uniform odd set composition of `[m]` into `r` blocks, drawn block by
/// block: a first block of size `s` is chosen with weight
/// `C(m, s) * O(m - s, r - 1)`, then a uniform `s`-subset.
fn sample_odd_composition<R: Rng + ?Sized>(m: usize, r: usize, rng: &mut R) -> Vec<Vec<u32>> {
    let mut pool: Vec<u32> = (1..=m as u32).collect();
    let mut blocks = Vec::with_capacity(r);
    for blocks_left in (1..=r).rev() {
        if blocks_left == 1 {
            let mut block: Vec<u32> = pool.drain(..).collect();
            block.sort_unstable();
            blocks.push(block);
            break;
        }
        let avail = pool.len();
        let sizes: Vec<usize> = (1..=avail).step_by(2).collect();
        let weights: Vec<BigUint> = sizes
            .iter()
            .map(|&s| {
                to_biguint(
                    binomial(avail, s as isize)
                        * count_odd_set_compositions(avail - s, blocks_left - 1),
                )
            })
            .collect();
        let total: BigUint = weights.iter().sum();
        debug_assert_eq!(
            total,
            to_biguint(count_odd_set_compositions(avail, blocks_left)),
            "block-size weights add up to the composition count"
        );
        let mut draw = rng.gen_biguint_below(&total);
        let mut size = *sizes.last().unwrap();
        for (s, weight) in sizes.iter().zip(&weights) {
            if draw < *weight {
                size = *s;
                break;
            }
            draw -= weight;
        }
        for i in 0..size {
            let j = rng.gen_range(i..pool.len());
            pool.swap(i, j);
        }
        let mut block: Vec<u32> = pool.drain(..size).collect();
        block.sort_unstable();
        blocks.push(block);
    }
    blocks
}

#[cfg(test)]
mod tests {
    use std::collections::{HashMap, HashSet};

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::words::{alternating_perms, AlternatingMode};

    fn w(letters: &[u32]) -> Word {
        Word::new(letters.to_vec())
    }

    fn leaf(letters: &[u32]) -> LabeledTree {
        LabeledTree::leaf(w(letters))
    }

    /// Five nodes on [9]: root 673, left leaf 4, right node 1 over
    /// leaves 8 and 952.
    fn example_tree_a() -> LabeledTree {
        LabeledTree::node(
            w(&[6, 7, 3]),
            leaf(&[4]),
            LabeledTree::node(w(&[1]), leaf(&[8]), leaf(&[9, 5, 2])),
        )
    }

    /// Three nodes on [9]: root 39621 over leaves 578 and 4.
    fn example_tree_b() -> LabeledTree {
        LabeledTree::node(w(&[3, 9, 6, 2, 1]), leaf(&[5, 7, 8]), leaf(&[4]))
    }

    /// Nine singleton-labeled nodes on [9], not increasing.
    fn example_tree_c() -> LabeledTree {
        LabeledTree::node(
            w(&[3]),
            LabeledTree::node(
                w(&[4]),
                leaf(&[1]),
                LabeledTree::node(w(&[6]), leaf(&[9]), leaf(&[7])),
            ),
            LabeledTree::node(w(&[5]), leaf(&[8]), leaf(&[2])),
        )
    }

    #[test]
    fn stats_of_examples() {
        let a = example_tree_a();
        assert_eq!(a.node_count(), 5);
        assert_eq!(a.half_edges(), 2);
        assert_eq!(a.ground_size(), 9);
        assert_eq!(a.word(), w(&[4, 6, 7, 3, 8, 1, 9, 5, 2]));
        assert_eq!(a.inv(), 19);
        assert!(!a.is_increasing());

        let in_order: Vec<&Word> = a.in_order().iter().map(|t| t.label()).collect();
        assert_eq!(
            in_order,
            vec![
                &w(&[4]),
                &w(&[6, 7, 3]),
                &w(&[8]),
                &w(&[1]),
                &w(&[9, 5, 2])
            ]
        );

        let b = example_tree_b();
        assert_eq!(b.node_count(), 3);
        assert_eq!(b.half_edges(), 1);
        assert_eq!(b.word(), w(&[5, 7, 8, 3, 9, 6, 2, 1, 4]));

        let c = example_tree_c();
        assert_eq!(c.node_count(), 9);
        assert_eq!(c.half_edges(), 4);
        assert_eq!(c.word(), w(&[1, 4, 9, 6, 7, 3, 8, 5, 2]));
        assert!(!c.is_increasing());
        assert!(c.validate(9).is_ok());
    }

    #[test]
    fn first_active_node_of_examples() {
        let a = example_tree_a();
        let idx = a.first_active_index().unwrap();
        assert_eq!(idx, 4);
        assert_eq!(a.in_order()[idx].label(), &w(&[9, 5, 2]));

        let b = example_tree_b();
        let idx = b.first_active_index().unwrap();
        assert_eq!(idx, 0);
        assert_eq!(b.in_order()[idx].label(), &w(&[5, 7, 8]));

        // two nodes qualify here (labels 4 and 5); in-order picks 4
        let c = example_tree_c();
        let idx = c.first_active_index().unwrap();
        assert_eq!(idx, 1);
        assert_eq!(c.in_order()[idx].label(), &w(&[4]));

        assert_eq!(leaf(&[1]).first_active_index(), None);
    }

    #[test]
    fn increasing_examples() {
        assert!(leaf(&[1]).is_increasing());
        assert!(!leaf(&[1, 3, 2]).is_increasing());
        assert!(LabeledTree::node(w(&[1]), leaf(&[2]), leaf(&[3])).is_increasing());
        assert!(!LabeledTree::node(w(&[2]), leaf(&[1]), leaf(&[3])).is_increasing());
        assert!(example_tree_c()
            .in_order()
            .iter()
            .all(|t| t.label().len() == 1));
    }

    #[test]
    fn shape_counts_are_catalan() {
        for (m, expected) in [(1, 1), (3, 1), (5, 2), (7, 5), (9, 14)] {
            let shapes = complete_shapes(m);
            assert_eq!(shapes.len(), expected, "m = {m}");
            assert!(shapes.iter().all(|s| s.node_count() == m));
        }
    }

    #[test]
    fn enumeration_matches_closed_form() {
        let expected = [1u64, 10, 496, 67_600];
        for (n, &count) in expected.iter().enumerate() {
            assert_eq!(count_labeled_trees(n), BigInt::from(count), "n = {n}");
            assert_eq!(labeled_trees(n).count() as u64, count, "n = {n}");
        }
    }

    #[test]
    fn generated_trees_are_valid_and_distinct() {
        for n in 0..=2 {
            let trees: Vec<LabeledTree> = labeled_trees(n).collect();
            for t in &trees {
                t.validate(2 * n as u32 + 1).unwrap();
                assert_eq!(t.ground_size(), 2 * n + 1);
            }
            let distinct: HashSet<&LabeledTree> = trees.iter().collect();
            assert_eq!(distinct.len(), trees.len(), "n = {n}");
        }
    }

    #[test]
    fn increasing_trees_give_down_up_words() {
        // increasing trees are counted by the odd zigzag numbers and
        // their words run over all down-up permutations, once each,
        // preserving inversions by construction
        let expected = [1usize, 2, 16, 272];
        for (n, &count) in expected.iter().enumerate() {
            let words: Vec<Word> = labeled_trees(n)
                .filter(LabeledTree::is_increasing)
                .map(|t| t.word())
                .collect();
            assert_eq!(words.len(), count, "n = {n}");
            let seen: HashSet<Word> = words.iter().cloned().collect();
            assert_eq!(seen.len(), words.len(), "words repeat at n = {n}");
            let down_up: HashSet<Word> = alternating_perms(2 * n + 1, AlternatingMode::DownUp)
                .into_iter()
                .collect();
            assert_eq!(seen, down_up, "n = {n}");
        }
    }

    #[test]
    fn mirror_is_an_involution_reversing_words() {
        for t in [example_tree_a(), example_tree_b(), example_tree_c()] {
            let m = t.mirrored();
            assert_eq!(m.mirrored(), t);
            assert_eq!(m.word(), t.word().reversed());
            assert_eq!(m.node_count(), t.node_count());
        }
        let increasing = LabeledTree::node(w(&[1]), leaf(&[2]), leaf(&[3]));
        assert!(increasing.mirrored().is_increasing());
    }

    #[test]
    fn serialization_round_trips() {
        for t in [example_tree_a(), example_tree_c()] {
            let json = serde_json::to_string(&t).unwrap();
            let back: LabeledTree = serde_json::from_str(&json).unwrap();
            assert_eq!(back, t);
        }
        assert_eq!(
            serde_json::to_string(&leaf(&[9, 5, 2])).unwrap(),
            r#"{"label":[9,5,2]}"#
        );
    }

    #[test]
    fn deserialization_rejects_malformed_trees() {
        // one child only
        assert!(
            serde_json::from_str::<LabeledTree>(r#"{"label":[1],"left":{"label":[2]}}"#).is_err()
        );
        // even-length label
        assert!(serde_json::from_str::<LabeledTree>(r#"{"label":[1,2]}"#).is_err());
        // non-unimodal label
        assert!(serde_json::from_str::<LabeledTree>(r#"{"label":[2,1,3]}"#).is_err());
        // empty label
        assert!(serde_json::from_str::<LabeledTree>(r#"{"label":[]}"#).is_err());
    }

    #[test]
    fn validation_failures() {
        // duplicate letters across labels
        let t = LabeledTree::node(w(&[1]), leaf(&[2]), leaf(&[2]));
        assert_eq!(t.validate(3), Err(TreeError::BadCoverage(3)));
        // wrong ground size
        assert_eq!(
            leaf(&[1]).validate(3),
            Err(TreeError::BadCoverage(3))
        );
    }

    #[test]
    fn sampling_is_deterministic_and_valid() {
        let mut rng_a = ChaCha8Rng::seed_from_u64(7);
        let mut rng_b = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=4 {
            for _ in 0..50 {
                let t = sample_labeled_tree(n, &mut rng_a);
                assert_eq!(t, sample_labeled_tree(n, &mut rng_b));
                t.validate(2 * n as u32 + 1).unwrap();
            }
        }
    }

    #[test]
    fn sampling_is_close_to_uniform_on_small_ground() {
        // ten trees at n=1; 20000 draws put each near 2000
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut counts: HashMap<LabeledTree, usize> = HashMap::new();
        for _ in 0..20_000 {
            *counts.entry(sample_labeled_tree(1, &mut rng)).or_default() += 1;
        }
        assert_eq!(counts.len(), 10);
        for (tree, count) in &counts {
            assert!(
                (1800..=2200).contains(count),
                "tree {tree} drawn {count} times"
            );
        }
    }
}
