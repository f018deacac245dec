//! Exhaustive and sampled audits of the four involutions.
//!
//! An audit walks a population of objects, applies the involution to
//! each, and checks every property it is supposed to have: the image
//! stays in the family, the preserved statistic really is preserved,
//! the sign flips on every moved object, applying the map twice gives
//! the object back through the inverse branch, and the fixed objects
//! are exactly the advertised ones. Exhaustive audits additionally
//! compare the fixed-point census against the closed form it should
//! equal.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::identities::negate_if_odd;
use crate::kappa::{kappa_traced, KappaCase};
use crate::numbers::{hat_t, q_tangent, tangent_int};
use crate::pairs::{
    cp_pairs, f_map, g_map, h_map, ip_pairs, is_cp_pair, is_ip_pair, is_up_pair, up_pairs,
    PairBranch, PermutationPair,
};
use crate::qlaurent::LaurentPoly;
use crate::trees::{count_labeled_trees, labeled_trees, sample_labeled_tree, LabeledTree};
use crate::words::AlternatingMode;

/// At most this many violations are carried in a report; the count is
/// always exact.
const MAX_RECORDED: usize = 10;

/// Mixes a sample index into the base seed, one independent generator
/// per sample.
const SEED_STRIDE: u64 = 0x9E37_79B9_7F4A_7C15;

/// The four involutions an audit can drive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// The sign-reversing involution on labeled trees.
    Kappa,
    /// The involution on increasing/up-down pairs.
    F,
    /// The involution on unimodal/down-up pairs.
    G,
    /// The weight-preserving involution on compressed pairs.
    H,
}

impl Family {
    /// Every family, in presentation order.
    pub const ALL: [Family; 4] = [Family::Kappa, Family::F, Family::G, Family::H];

    /// Stable machine name, also accepted by `FromStr`.
    pub fn name(self) -> &'static str {
        match self {
            Family::Kappa => "kappa",
            Family::F => "f",
            Family::G => "g",
            Family::H => "h",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family {s:?}; expected kappa, f, g, or h"))
    }
}

/// Whether an audit sweeps the whole population or seeded samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AuditMode {
    /// Every object of the population, plus census checks.
    Exhaustive,
    /// `count` objects drawn with a deterministic per-index generator.
    Sample { count: u64, seed: u64 },
}

/// One failed property on one object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// The offending object, rendered.
    pub object: String,
    /// Which property failed.
    pub detail: String,
}

/// The outcome of one audit.
#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub family: Family,
    pub n: usize,
    pub mode: AuditMode,
    /// Objects examined (samples count with multiplicity).
    pub population: u64,
    /// Total size of the family at this `n`.
    pub family_size: String,
    /// Fixed points among the examined objects.
    pub fixed_points: u64,
    /// Exact number of failed checks.
    pub violation_count: u64,
    /// The first few violations; a best-effort sample when parallel
    /// workers race, always empty on a clean audit.
    pub violations: Vec<Violation>,
}

impl AuditReport {
    /// True when not a single check failed.
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    fixed: u64,
    violation_count: u64,
    violations: Vec<Violation>,
}

impl Tally {
    fn violation(&mut self, object: &impl fmt::Display, detail: &str) {
        self.violation_count += 1;
        if self.violations.len() < MAX_RECORDED {
            self.violations.push(Violation {
                object: object.to_string(),
                detail: detail.to_string(),
            });
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.fixed += other.fixed;
        self.violation_count += other.violation_count;
        for v in other.violations {
            if self.violations.len() < MAX_RECORDED {
                self.violations.push(v);
            }
        }
        self
    }
}

fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ index.wrapping_mul(SEED_STRIDE))
}

/// Run one audit. Pair-family audits materialize the population even
/// in sample mode (those families stay small); tree audits sample
/// without enumerating, so any `n` is fair game there.
///
/// Panics for [`Family::H`] at `n = 0`, where the involution is not
/// defined.
pub fn audit(family: Family, n: usize, mode: AuditMode) -> AuditReport {
    match family {
        Family::Kappa => audit_kappa(n, mode),
        Family::H if n == 0 => panic!("the compressed-pair involution needs n >= 1"),
        _ => audit_pairs(family, n, mode),
    }
}

fn check_tree(tree: &LabeledTree, tally: &mut Tally) {
    tally.checked += 1;
    let trace = kappa_traced(tree);
    if trace.output.word() != tree.word() {
        tally.violation(tree, "the word changed");
    }
    if trace.case == KappaCase::Fixed {
        tally.fixed += 1;
        if trace.output != *tree {
            tally.violation(tree, "a fixed tree was altered");
        }
        if !tree.is_increasing() {
            tally.violation(tree, "a non-increasing tree was declared fixed");
        }
    } else {
        if tree.is_increasing() {
            tally.violation(tree, "an increasing tree moved");
        }
        if trace.output == *tree {
            tally.violation(tree, "a moved tree came back unchanged");
        }
        if trace.output.half_edges() % 2 == tree.half_edges() % 2 {
            tally.violation(tree, "the sign did not flip");
        }
        let back = kappa_traced(&trace.output);
        if back.output != *tree {
            tally.violation(tree, "applying the involution twice strayed");
        }
        if back.case != trace.case.inverse() {
            tally.violation(tree, "the return branch is not the inverse case");
        }
    }
}

fn audit_kappa(n: usize, mode: AuditMode) -> AuditReport {
    let family_size = count_labeled_trees(n);
    let mut tally = match mode {
        AuditMode::Exhaustive => {
            let mut tally = labeled_trees(n)
                .par_bridge()
                .map(|tree| {
                    let mut local = Tally::default();
                    check_tree(&tree, &mut local);
                    local
                })
                .reduce(Tally::default, Tally::merge);
            if BigInt::from(tally.checked) != family_size {
                tally.violation(&n, "the enumeration does not match the closed-form count");
            }
            if BigInt::from(tally.fixed) != tangent_int(n) {
                tally.violation(&n, "the fixed-point census is not the tangent number");
            }
            tally
        }
        AuditMode::Sample { count, seed } => (0..count)
            .into_par_iter()
            .map(|i| {
                let mut rng = sample_rng(seed, i);
                let tree = sample_labeled_tree(n, &mut rng);
                let mut local = Tally::default();
                check_tree(&tree, &mut local);
                local
            })
            .reduce(Tally::default, Tally::merge),
    };
    tally.violations.truncate(MAX_RECORDED);
    AuditReport {
        family: Family::Kappa,
        n,
        mode,
        population: tally.checked,
        family_size: family_size.to_string(),
        fixed_points: tally.fixed,
        violation_count: tally.violation_count,
        violations: tally.violations,
    }
}

fn is_increasing(pair_pi: &crate::words::Word) -> bool {
    pair_pi.letters().windows(2).all(|p| p[0] < p[1])
}

/// Apply one pair involution and check every local property; returns
/// the branch so censuses can group by it.
fn check_pair(family: Family, pair: &PermutationPair, tally: &mut Tally) -> PairBranch {
    tally.checked += 1;
    let (map, member): (
        fn(&PermutationPair) -> (PermutationPair, PairBranch),
        fn(&PermutationPair) -> bool,
    ) = match family {
        Family::F => (f_map, is_ip_pair),
        Family::G => (g_map, is_up_pair),
        Family::H => (h_map, is_cp_pair),
        Family::Kappa => unreachable!("tree audits take the other path"),
    };
    let (image, branch) = map(pair);
    if !member(&image) {
        tally.violation(pair, "the image left the family");
    }
    match family {
        Family::H => {
            if image.weight() != pair.weight() {
                tally.violation(pair, "the weight changed");
            }
        }
        _ => {
            if image.inv() != pair.inv() {
                tally.violation(pair, "the inversion count changed");
            }
        }
    }
    let fixed_shape = match family {
        Family::F => pair
            .pi()
            .concat(pair.sigma())
            .is_alternating(AlternatingMode::DownUp),
        Family::G => {
            pair.sigma().letters()[0] == pair.ground_size() as u32 && is_increasing(pair.pi())
        }
        Family::H => false,
        Family::Kappa => unreachable!(),
    };
    if branch == PairBranch::Fixed {
        tally.fixed += 1;
        if image != *pair {
            tally.violation(pair, "a fixed pair was altered");
        }
        if !fixed_shape {
            tally.violation(pair, "a pair outside the fixed shape was declared fixed");
        }
        if family == Family::H {
            tally.violation(pair, "the compressed-pair involution fixed something");
        }
    } else {
        if fixed_shape {
            tally.violation(pair, "a fixed-shape pair moved");
        }
        if image == *pair {
            tally.violation(pair, "a moved pair came back unchanged");
        }
        if image.sign() != -pair.sign() {
            tally.violation(pair, "the sign did not flip");
        }
        let (back, back_branch) = map(&image);
        if back != *pair {
            tally.violation(pair, "applying the involution twice strayed");
        }
        if back_branch != branch.inverse() {
            tally.violation(pair, "the return branch is not the inverse");
        }
    }
    branch
}

fn audit_pairs(family: Family, n: usize, mode: AuditMode) -> AuditReport {
    let pairs = match family {
        Family::F => ip_pairs(n),
        Family::G => up_pairs(n),
        Family::H => cp_pairs(n),
        Family::Kappa => unreachable!(),
    };
    let statistic = |p: &PermutationPair| -> i64 {
        if family == Family::H {
            p.weight()
        } else {
            p.inv() as i64
        }
    };
    let mut tally = Tally::default();
    match mode {
        AuditMode::Exhaustive => {
            let mut fixed_sum = LaurentPoly::zero();
            let mut signed_total = LaurentPoly::zero();
            for pair in &pairs {
                let branch = check_pair(family, pair, &mut tally);
                let term = LaurentPoly::monomial(statistic(pair)).scaled(&BigInt::from(pair.sign()));
                if branch == PairBranch::Fixed {
                    fixed_sum = &fixed_sum + &term;
                }
                signed_total = &signed_total + &term;
            }
            // Census: the fixed points carry the whole signed sum.
            if signed_total != fixed_sum {
                tally.violation(&n, "the moved pairs did not cancel");
            }
            let expected_fixed = match family {
                Family::F => negate_if_odd(n, q_tangent(n)),
                Family::G => negate_if_odd(n, hat_t(n)),
                Family::H => LaurentPoly::zero(),
                Family::Kappa => unreachable!(),
            };
            if fixed_sum != expected_fixed {
                tally.violation(&n, "the fixed-point census missed its closed form");
            }
        }
        AuditMode::Sample { count, seed } => {
            for i in 0..count {
                let mut rng = sample_rng(seed, i);
                let pair = &pairs[rng.gen_range(0..pairs.len())];
                check_pair(family, pair, &mut tally);
            }
        }
    }
    AuditReport {
        family,
        n,
        mode,
        population: tally.checked,
        family_size: pairs.len().to_string(),
        fixed_points: tally.fixed,
        violation_count: tally.violation_count,
        violations: tally.violations,
    }
}
