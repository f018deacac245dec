//! A sign-reversing involution on labeled complete binary trees.
//!
//! The involution pairs each tree with one of the opposite sign
//! (`(-1)^h`, where `h` is half the edge count) while keeping the word
//! read off in order — and therefore the inversion count — unchanged.
//! Exactly the increasing trees stay fixed, which reduces the signed
//! enumeration of all labeled trees to counting increasing ones.
//!
//! All activity happens at the first active node in order: the first
//! node whose own subtree is not increasing even though both of its
//! branches are. Depending on the local picture the subtree is
//! rewritten by one of six mutually inverse transforms:
//!
//! * [`Split`](KappaCase::Split) breaks up the label of an active leaf
//!   into an inner node and two new leaves; [`Merge`](KappaCase::Merge)
//!   glues a node and its two leaf children back into one leaf.
//! * The graft/absorb pairs move letters between the node's label and
//!   the chain hanging off one of its children: a graft plants two
//!   label letters as a new chain node, an absorb pulls the two
//!   deepest chain letters back into the label. Which side acts is
//!   decided by comparing two indicator values, one per side.
//!
//! [`kappa`] applies the involution, [`classify`] names the transform
//! without applying it, and [`kappa_traced`] returns both together with
//! the indicator values and the position of the active node.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::trees::{Branch, LabeledTree};
use crate::words::Word;

/// A chain letter or plus infinity, with infinity comparing above
/// every letter.
///
/// Each side of an active node gets such a value; the smaller one
/// picks the side that the involution rewrites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Indicator {
    /// A finite indicator: one of the letters near the active node.
    Letter(u32),
    /// No admissible letter on this side.
    Infinity,
}

impl fmt::Display for Indicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Indicator::Letter(x) => write!(f, "{x}"),
            Indicator::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Indicator {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// The transform the involution applies to a given tree.
///
/// The six non-fixed cases come in mutually inverse pairs:
/// `Split`/`Merge`, `GraftLeft`/`AbsorbLeft`, `GraftRight`/`AbsorbRight`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KappaCase {
    /// The tree is increasing and maps to itself.
    Fixed,
    /// An active leaf with a long label becomes a three-node subtree.
    Split,
    /// An active node with two leaf children collapses into one leaf.
    Merge,
    /// Two label letters move onto the chain below the left child.
    GraftLeft,
    /// The two deepest letters of the left chain join the label.
    AbsorbLeft,
    /// Two label letters move onto the chain below the right child.
    GraftRight,
    /// The two deepest letters of the right chain join the label.
    AbsorbRight,
}

impl KappaCase {
    /// The transform that undoes this one (`Fixed` undoes itself).
    pub fn inverse(self) -> KappaCase {
        match self {
            KappaCase::Fixed => KappaCase::Fixed,
            KappaCase::Split => KappaCase::Merge,
            KappaCase::Merge => KappaCase::Split,
            KappaCase::GraftLeft => KappaCase::AbsorbLeft,
            KappaCase::AbsorbLeft => KappaCase::GraftLeft,
            KappaCase::GraftRight => KappaCase::AbsorbRight,
            KappaCase::AbsorbRight => KappaCase::GraftRight,
        }
    }
}

impl fmt::Display for KappaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            KappaCase::Fixed => "fixed",
            KappaCase::Split => "split",
            KappaCase::Merge => "merge",
            KappaCase::GraftLeft => "graft-left",
            KappaCase::AbsorbLeft => "absorb-left",
            KappaCase::GraftRight => "graft-right",
            KappaCase::AbsorbRight => "absorb-right",
        };
        f.write_str(name)
    }
}

/// One application of the involution, with everything observable about
/// the decision it made.
#[derive(Clone, Debug, Serialize)]
pub struct KappaTrace {
    /// Which transform fired.
    pub case: KappaCase,
    /// In-order index of the active node; absent for fixed trees.
    pub active_index: Option<usize>,
    /// Indicator of the left side, when indicators were consulted.
    pub ind_left: Option<Indicator>,
    /// Indicator of the right side, when indicators were consulted.
    pub ind_right: Option<Indicator>,
    /// The image tree.
    pub output: LabeledTree,
}

/// Apply the involution.
pub fn kappa(tree: &LabeledTree) -> LabeledTree {
    kappa_traced(tree).output
}

/// Name the transform that [`kappa`] would apply, without applying it.
pub fn classify(tree: &LabeledTree) -> KappaCase {
    if tree.is_increasing() {
        return KappaCase::Fixed;
    }
    let path = tree
        .first_active_path()
        .expect("a non-increasing tree has an active node");
    decide(tree.subtree_at_path(&path)).0
}

/// Apply the involution and report the transform, the active node's
/// in-order index, and the indicator values that drove the decision.
pub fn kappa_traced(tree: &LabeledTree) -> KappaTrace {
    if tree.is_increasing() {
        return KappaTrace {
            case: KappaCase::Fixed,
            active_index: None,
            ind_left: None,
            ind_right: None,
            output: tree.clone(),
        };
    }
    let path = tree
        .first_active_path()
        .expect("a non-increasing tree has an active node");
    let active_index = tree
        .first_active_index()
        .expect("a non-increasing tree has an active node");
    let active = tree.subtree_at_path(&path);
    let (case, indicators) = decide(active);
    let image = apply(active, case);
    let mut output = tree.clone();
    *output.subtree_at_path_mut(&path) = image;
    debug_assert_eq!(
        output.word(),
        tree.word(),
        "the involution only re-brackets the word"
    );
    KappaTrace {
        case,
        active_index: Some(active_index),
        ind_left: indicators.map(|(l, _)| l),
        ind_right: indicators.map(|(_, r)| r),
        output,
    }
}

/// Letters along the maximal chain of `branch` edges from `start`
/// downward, starting with `start`'s own letter.
///
/// The walk happens inside an increasing branch of an active node, so
/// every label on the way is a singleton.
fn chain_letters(start: &LabeledTree, branch: Branch) -> Vec<u32> {
    let mut letters = Vec::new();
    let mut cur = start;
    loop {
        assert_eq!(
            cur.label().len(),
            1,
            "chain nodes inside an increasing branch carry singleton labels"
        );
        letters.push(cur.label().letters()[0]);
        let next = match branch {
            Branch::Left => cur.left(),
            Branch::Right => cur.right(),
        };
        match next {
            Some(child) => cur = child,
            None => break,
        }
    }
    letters
}

/// The indicator of one side of an active node.
///
/// `chain` holds the chain letters from the child downward and `pi`
/// the node's label read with this side's end first, so the right
/// indicator is this function on the reversed label. `k` is the label
/// half-length: the label has `2k + 1` letters.
fn chain_indicator(k: usize, chain: &[u32], pi: &[u32]) -> Indicator {
    debug_assert_eq!(pi.len(), 2 * k + 1);
    let s = chain.len() - 1;
    let head = chain[0];
    let deepest = chain[s];
    if k == 0 {
        if s == 0 {
            Indicator::Infinity
        } else {
            Indicator::Letter(head)
        }
    } else if deepest > pi[0] && pi[0] < pi[1] {
        Indicator::Letter(head.min(pi[0]))
    } else if s == 0 {
        Indicator::Infinity
    } else {
        Indicator::Letter(head)
    }
}

/// Decide which transform applies at an active node, returning the
/// indicator pair whenever indicators were consulted.
fn decide(active: &LabeledTree) -> (KappaCase, Option<(Indicator, Indicator)>) {
    debug_assert!(!active.is_increasing(), "active nodes are not increasing");
    let pi = active.label().letters();
    let k = (pi.len() - 1) / 2;
    let Some((left, right)) = active.children() else {
        // A leaf with an increasing (singleton) label would not be
        // active, so there is something to split.
        assert!(k >= 1, "an active leaf carries at least three letters");
        return (KappaCase::Split, None);
    };
    if left.is_leaf() && right.is_leaf() {
        assert_eq!(left.label().len(), 1, "leaf branches of an active node are singletons");
        assert_eq!(right.label().len(), 1, "leaf branches of an active node are singletons");
        let mut merged = vec![left.label().letters()[0]];
        merged.extend_from_slice(pi);
        merged.push(right.label().letters()[0]);
        if Word::new(merged).is_unimodal() {
            return (KappaCase::Merge, None);
        }
    }
    let a_chain = chain_letters(left, Branch::Right);
    let b_chain = chain_letters(right, Branch::Left);
    let reversed: Vec<u32> = pi.iter().rev().copied().collect();
    let ind_left = chain_indicator(k, &a_chain, pi);
    let ind_right = chain_indicator(k, &b_chain, &reversed);
    assert_ne!(
        ind_left, ind_right,
        "the two indicators of an active node are distinct"
    );
    let case = if ind_left < ind_right {
        if k > 0 && *a_chain.last().unwrap() > pi[0] && pi[0] < pi[1] {
            KappaCase::GraftLeft
        } else {
            KappaCase::AbsorbLeft
        }
    } else if k > 0 && *b_chain.last().unwrap() > pi[2 * k] && pi[2 * k] < pi[2 * k - 1] {
        KappaCase::GraftRight
    } else {
        KappaCase::AbsorbRight
    };
    (case, Some((ind_left, ind_right)))
}

/// Rewrite the subtree rooted at an active node according to `case`.
fn apply(active: &LabeledTree, case: KappaCase) -> LabeledTree {
    match case {
        KappaCase::Fixed => unreachable!("fixed trees are handled before dispatch"),
        KappaCase::Split => split(active),
        KappaCase::Merge => merge(active),
        KappaCase::GraftLeft => graft_left(active),
        KappaCase::AbsorbLeft => absorb_left(active),
        KappaCase::GraftRight => graft_left(&active.mirrored()).mirrored(),
        KappaCase::AbsorbRight => absorb_left(&active.mirrored()).mirrored(),
    }
}

/// Break an active leaf `pi_1 ... pi_{2k+1}` into an inner node
/// labeled `pi_2 ... pi_{2k}` whose children are leaves labeled `pi_1`
/// and `pi_{2k+1}`.
fn split(active: &LabeledTree) -> LabeledTree {
    debug_assert!(active.is_leaf());
    let pi = active.label().letters();
    let last = pi.len() - 1;
    LabeledTree::node(
        Word::new(pi[1..last].to_vec()),
        LabeledTree::leaf(Word::new(vec![pi[0]])),
        LabeledTree::leaf(Word::new(vec![pi[last]])),
    )
}

/// Collapse an active node with leaf children `a` and `b` into the
/// single leaf labeled `a pi b`.
fn merge(active: &LabeledTree) -> LabeledTree {
    let (left, right) = active
        .children()
        .expect("merging happens at an inner node");
    let mut letters = vec![left.label().letters()[0]];
    letters.extend_from_slice(active.label().letters());
    letters.push(right.label().letters()[0]);
    LabeledTree::leaf(Word::new(letters))
}

/// Plant the first two label letters onto the left chain: the chain
/// node at the first letter exceeding `pi_1` becomes the left child of
/// a new node labeled `pi_1` whose right child is a new leaf `pi_2`.
fn graft_left(active: &LabeledTree) -> LabeledTree {
    let pi = active.label().letters().to_vec();
    let k = (pi.len() - 1) / 2;
    debug_assert!(k > 0, "grafting takes two letters off the label");
    let (left, _) = active
        .children()
        .expect("grafting happens at an inner node");
    let chain = chain_letters(left, Branch::Right);
    let i = chain
        .iter()
        .position(|&a| a > pi[0])
        .expect("the deepest chain letter exceeds the label head");
    let mut out = active.clone();
    out.set_label(Word::new(pi[2..].to_vec()));
    let mut path = vec![Branch::Left];
    path.extend(std::iter::repeat(Branch::Right).take(i));
    out.subtree_at_path_mut(&path).replace_with(|grafted| {
        LabeledTree::node(
            Word::new(vec![pi[0]]),
            grafted,
            LabeledTree::leaf(Word::new(vec![pi[1]])),
        )
    });
    out
}

/// Pull the two deepest letters of the left chain into the label: the
/// next-to-last chain node is replaced by its left subtree and its
/// letter, with the deepest chain letter, prefixes the label.
fn absorb_left(active: &LabeledTree) -> LabeledTree {
    let pi = active.label().letters().to_vec();
    let (left, _) = active
        .children()
        .expect("absorbing happens at an inner node");
    let chain = chain_letters(left, Branch::Right);
    let s = chain.len() - 1;
    assert!(s >= 1, "absorbing needs a chain of at least two nodes");
    let mut letters = vec![chain[s - 1], chain[s]];
    letters.extend_from_slice(&pi);
    let mut out = active.clone();
    out.set_label(Word::new(letters));
    let mut path = vec![Branch::Left];
    path.extend(std::iter::repeat(Branch::Right).take(s - 1));
    out.subtree_at_path_mut(&path).replace_with(|node| {
        let (_, children) = node.into_parts();
        let (child_left, child_right) = children.expect("the next-to-last chain node is inner");
        debug_assert!(child_right.is_leaf(), "the chain ends in a leaf");
        child_left
    });
    out
}
