//! The ten verifiable identities: exact computation of both sides.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::compositions::count_odd_set_compositions;
use crate::numbers::{hat_t, q_secant, q_secant_odd, q_tangent, tangent_int, tilde_t};
use crate::pairs::cp_pairs;
use crate::qlaurent::{binomial, neg_q_pochhammer, q_binomial, LaurentPoly};
use crate::trees::labeled_trees;

/// One of the identities the harness can verify.
///
/// The doc comment of each variant states the claim; `O(m, b)` counts
/// ordered set compositions of `{1..m}` into `b` blocks of odd size,
/// `C_k` is a Catalan number, `T` and `S` are tangent and secant
/// numbers with `T(q)`, `S(q)`, `S^o(q)` their q-refinements,
/// `~T(q)` the convolution q-tangent, `^T(q)` the alternating-secant
/// q-tangent, `[n k]_q` a Gaussian binomial, and `(-q;q)_m` the poly
/// `(1+q)(1+q^2)...(1+q^m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdentityId {
    /// `sum_k (-1)^k O(2n+1, 2k+1) 2^(2n-2k) C_k = (-1)^n T_{2n+1}`.
    CatTan,
    /// `sum_{k<n} (-1)^k C(2n, 2k+1) 2^(2n-2k) T_{2k+1} = 2^(2n+1)`
    /// for `n >= 1` (at `n = 0` the left side is an empty sum).
    Genocchi,
    /// `sum_k (-1)^k C(2n+1, 2k) 2^(2n-2k) T_{2k+1} = (-1)^n T_{2n+1}`.
    Tan2,
    /// `T_{2n+1} + sum_{k>=1} (-1)^k C(2n+1, 2k) 2^(2k-1) T_{2n-2k+1}
    /// = (-1)^n 2^(2n)`.
    AndrewsGessel,
    /// `sum_T (-1)^(h(T)) = (-1)^n T_{2n+1}` over all labeled trees on
    /// `{1..2n+1}`, where `h` is half the edge count.
    SignedTrees,
    /// `sum_T (-1)^(h(T)) q^(inv(T)) = (-1)^n T_{2n+1}(q)` over the
    /// same trees, refined by the inversion count of the tree's word.
    SignedTreesQ,
    /// `sum_k (-1)^k [2n+1 2k]_q (-q;q)_{2n-2k} ~T_{2k+1}(q)
    /// = (-1)^n T_{2n+1}(q)`.
    Q1,
    /// `sum_k (-1)^k [2n+1 2k]_q (-q;q)_{2n-2k} T_{2k+1}(q)
    /// = (-1)^n ^T_{2n+1}(q)`, equivalently the term-by-term
    /// difference against `q^(2k) S_{2k}(q)` vanishes.
    Q2,
    /// `sum_k (-1)^k [2n+1 2k]_q S_{2k}(q) = (-1)^n T_{2n+1}(q)`.
    QSecTan,
    /// `sum_k (-1)^k [2n 2k]_q q^((n-k)^2) S^o_{2k}(q) = 0` for
    /// `n >= 1`, with `S^o_0(q) = q^-1` (at `n = 0` the sum is the
    /// single term `q^-1`, not zero).
    HuberYee,
}

impl IdentityId {
    /// Every identity, in presentation order.
    pub const ALL: [IdentityId; 10] = [
        IdentityId::CatTan,
        IdentityId::Genocchi,
        IdentityId::Tan2,
        IdentityId::AndrewsGessel,
        IdentityId::SignedTrees,
        IdentityId::SignedTreesQ,
        IdentityId::Q1,
        IdentityId::Q2,
        IdentityId::QSecTan,
        IdentityId::HuberYee,
    ];

    /// Stable machine name, also accepted by `FromStr`.
    pub fn name(self) -> &'static str {
        match self {
            IdentityId::CatTan => "cat_tan",
            IdentityId::Genocchi => "genocchi",
            IdentityId::Tan2 => "tan2",
            IdentityId::AndrewsGessel => "andrews_gessel",
            IdentityId::SignedTrees => "signed_trees",
            IdentityId::SignedTreesQ => "signed_trees_q",
            IdentityId::Q1 => "q1",
            IdentityId::Q2 => "q2",
            IdentityId::QSecTan => "q_sec_tan",
            IdentityId::HuberYee => "huber_yee",
        }
    }

    /// Smallest `n` the identity holds at.
    pub fn min_n(self) -> usize {
        match self {
            IdentityId::Genocchi | IdentityId::HuberYee => 1,
            _ => 0,
        }
    }

    /// Largest `n` verification is willing to compute.
    pub fn max_n(self) -> usize {
        match self {
            IdentityId::CatTan
            | IdentityId::Genocchi
            | IdentityId::Tan2
            | IdentityId::AndrewsGessel => 12,
            IdentityId::SignedTrees | IdentityId::SignedTreesQ => 3,
            IdentityId::Q1 | IdentityId::Q2 | IdentityId::QSecTan => 8,
            IdentityId::HuberYee => 5,
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = IdentityId::ALL.iter().map(|id| id.name()).collect();
                format!("unknown identity {s:?}; expected one of {}", names.join(", "))
            })
    }
}

impl Serialize for IdentityId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// How the left side of a report was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Closed sums over precomputed sequences.
    Formula,
    /// A sum over explicitly generated combinatorial objects.
    Enumeration,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Formula => "formula",
            Method::Enumeration => "enumeration",
        })
    }
}

/// Refusal to verify outside an identity's supported range.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum VerifyError {
    /// The identity is not claimed (or is false) below `min`.
    #[error("{identity} needs n >= {min}: {reason}")]
    BelowRange {
        identity: IdentityId,
        n: usize,
        min: usize,
        reason: &'static str,
    },
    /// Verification above `max` is not attempted.
    #[error("{identity} is verified only up to n = {max} (got n = {n})")]
    AboveCutoff {
        identity: IdentityId,
        n: usize,
        max: usize,
    },
}

/// The outcome of verifying one identity at one `n`.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub identity: IdentityId,
    pub n: usize,
    pub method: Method,
    /// Left side, rendered exactly.
    pub lhs: String,
    /// Right side, rendered exactly.
    pub rhs: String,
    pub equal: bool,
    /// Wall time, filled in by callers that opted into timings.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl IdentityReport {
    fn new(identity: IdentityId, n: usize, method: Method, lhs: String, rhs: String, equal: bool) -> Self {
        IdentityReport {
            identity,
            n,
            method,
            lhs,
            rhs,
            equal,
            elapsed_ms: None,
        }
    }
}

fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

fn int_sign(k: usize) -> BigInt {
    if k % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn poly_signed_sum(n: usize, term: impl Fn(usize) -> LaurentPoly) -> LaurentPoly {
    let mut sum = LaurentPoly::zero();
    for k in 0..=n {
        let t = term(k);
        sum = if k % 2 == 0 { &sum + &t } else { &sum - &t };
    }
    sum
}

pub(crate) fn negate_if_odd(n: usize, poly: LaurentPoly) -> LaurentPoly {
    if n % 2 == 1 {
        -poly
    } else {
        poly
    }
}

/// Signed generating function of all labeled trees on `{1..2n+1}` by
/// `(sign, statistic)`.
fn signed_tree_sum(n: usize, stat: impl Fn(&crate::trees::LabeledTree) -> i64) -> LaurentPoly {
    LaurentPoly::from_terms(labeled_trees(n).map(|t| {
        let sign = if t.half_edges() % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        (stat(&t), sign)
    }))
}

/// Verify one identity at one `n`, computing both sides exactly.
pub fn verify(identity: IdentityId, n: usize) -> Result<IdentityReport, VerifyError> {
    let min = identity.min_n();
    if n < min {
        let reason = match identity {
            IdentityId::Genocchi => "the left side is an empty sum at n = 0, where the identity fails",
            IdentityId::HuberYee => "at n = 0 the sum is the single term q^-1, not zero",
            _ => unreachable!("only identities with min_n > 0 can be below range"),
        };
        return Err(VerifyError::BelowRange {
            identity,
            n,
            min,
            reason,
        });
    }
    if n > identity.max_n() {
        return Err(VerifyError::AboveCutoff {
            identity,
            n,
            max: identity.max_n(),
        });
    }

    let report = match identity {
        IdentityId::CatTan => {
            let mut lhs = BigInt::zero();
            for k in 0..=n {
                lhs += int_sign(k)
                    * count_odd_set_compositions(2 * n + 1, 2 * k + 1)
                    * pow2(2 * n - 2 * k)
                    * crate::numbers::catalan(k);
            }
            let rhs = int_sign(n) * tangent_int(n);
            let equal = lhs == rhs;
            IdentityReport::new(identity, n, Method::Formula, lhs.to_string(), rhs.to_string(), equal)
        }
        IdentityId::Genocchi => {
            let mut lhs = BigInt::zero();
            for k in 0..n {
                lhs += int_sign(k)
                    * binomial(2 * n, 2 * k as isize + 1)
                    * pow2(2 * n - 2 * k)
                    * tangent_int(k);
            }
            let rhs = pow2(2 * n + 1);
            let equal = lhs == rhs;
            IdentityReport::new(identity, n, Method::Formula, lhs.to_string(), rhs.to_string(), equal)
        }
        IdentityId::Tan2 => {
            let mut lhs = BigInt::zero();
            for k in 0..=n {
                lhs += int_sign(k)
                    * binomial(2 * n + 1, 2 * k as isize)
                    * pow2(2 * n - 2 * k)
                    * tangent_int(k);
            }
            let rhs = int_sign(n) * tangent_int(n);
            let equal = lhs == rhs;
            IdentityReport::new(identity, n, Method::Formula, lhs.to_string(), rhs.to_string(), equal)
        }
        IdentityId::AndrewsGessel => {
            let mut lhs = tangent_int(n);
            for k in 1..=n {
                lhs += int_sign(k)
                    * binomial(2 * n + 1, 2 * k as isize)
                    * pow2(2 * k - 1)
                    * tangent_int(n - k);
            }
            let rhs = int_sign(n) * pow2(2 * n);
            let equal = lhs == rhs;
            IdentityReport::new(identity, n, Method::Formula, lhs.to_string(), rhs.to_string(), equal)
        }
        IdentityId::SignedTrees => {
            let lhs = signed_tree_sum(n, |_| 0).coeff(0);
            let rhs = int_sign(n) * tangent_int(n);
            let equal = lhs == rhs;
            IdentityReport::new(
                identity,
                n,
                Method::Enumeration,
                lhs.to_string(),
                rhs.to_string(),
                equal,
            )
        }
        IdentityId::SignedTreesQ => {
            let lhs = signed_tree_sum(n, |t| t.inv() as i64);
            let rhs = negate_if_odd(n, q_tangent(n));
            let equal = lhs == rhs;
            IdentityReport::new(
                identity,
                n,
                Method::Enumeration,
                lhs.to_string(),
                rhs.to_string(),
                equal,
            )
        }
        IdentityId::Q1 => {
            let lhs = poly_signed_sum(n, |k| {
                &(&q_binomial(2 * n + 1, 2 * k as isize) * &neg_q_pochhammer(2 * n - 2 * k))
                    * &tilde_t(k)
            });
            let rhs = negate_if_odd(n, q_tangent(n));
            let equal = lhs == rhs;
            IdentityReport::new(identity, n, Method::Formula, lhs.to_string(), rhs.to_string(), equal)
        }
        IdentityId::Q2 => {
            let lhs = poly_signed_sum(n, |k| {
                &(&q_binomial(2 * n + 1, 2 * k as isize) * &neg_q_pochhammer(2 * n - 2 * k))
                    * &q_tangent(k)
            });
            let rhs = negate_if_odd(n, hat_t(n));
            // The equivalent vanishing form: each term minus its
            // secant counterpart, summed with the same signs.
            let difference = poly_signed_sum(n, |k| {
                let gauss = q_binomial(2 * n + 1, 2 * k as isize);
                let tangent_part = &(&gauss * &neg_q_pochhammer(2 * n - 2 * k)) * &q_tangent(k);
                let secant_part = &gauss * &q_secant(k).shifted(2 * k as i64);
                &tangent_part - &secant_part
            });
            let equal = lhs == rhs && difference.is_zero();
            IdentityReport::new(identity, n, Method::Formula, lhs.to_string(), rhs.to_string(), equal)
        }
        IdentityId::QSecTan => {
            let lhs =
                poly_signed_sum(n, |k| &q_binomial(2 * n + 1, 2 * k as isize) * &q_secant(k));
            let rhs = negate_if_odd(n, q_tangent(n));
            let equal = lhs == rhs;
            IdentityReport::new(identity, n, Method::Formula, lhs.to_string(), rhs.to_string(), equal)
        }
        IdentityId::HuberYee => {
            let lhs = poly_signed_sum(n, |k| {
                let d = (n - k) as i64;
                &q_binomial(2 * n, 2 * k as isize).shifted(d * d) * &q_secant_odd(k)
            });
            // Independent cross-check: the same cancellation performed
            // by hand over the compressed pairs.
            let census = LaurentPoly::from_terms(
                cp_pairs(n)
                    .iter()
                    .map(|p| (p.weight(), BigInt::from(p.sign()))),
            );
            let equal = lhs.is_zero() && census.is_zero();
            IdentityReport::new(
                identity,
                n,
                Method::Formula,
                lhs.to_string(),
                "0".to_string(),
                equal,
            )
        }
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::LabeledTree;

    #[test]
    fn names_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(id.name().parse::<IdentityId>().unwrap(), id);
            assert!(id.min_n() <= id.max_n());
        }
        assert!("tan3".parse::<IdentityId>().is_err());
        assert_eq!(serde_json::to_string(&IdentityId::QSecTan).unwrap(), "\"q_sec_tan\"");
    }

    #[test]
    fn every_identity_verifies_on_small_instances() {
        for id in IdentityId::ALL {
            let hi = match id {
                IdentityId::SignedTrees | IdentityId::SignedTreesQ => 2,
                IdentityId::HuberYee => 3,
                _ => 4,
            };
            for n in id.min_n()..=hi {
                let report = verify(id, n).unwrap();
                assert!(report.equal, "{id} at n = {n}: {} != {}", report.lhs, report.rhs);
            }
        }
    }

    #[test]
    fn catalan_tangent_instance_is_frozen() {
        let report = verify(IdentityId::CatTan, 2).unwrap();
        assert_eq!(report.lhs, "16");
        assert_eq!(report.rhs, "16");
        assert_eq!(report.method, Method::Formula);
        // term by term: 16 - 240 + 240
        assert_eq!(count_odd_set_compositions(5, 1), BigInt::from(1));
        assert_eq!(count_odd_set_compositions(5, 3), BigInt::from(60));
        assert_eq!(count_odd_set_compositions(5, 5), BigInt::from(120));
    }

    #[test]
    fn genocchi_refuses_the_empty_sum() {
        let err = verify(IdentityId::Genocchi, 0).unwrap_err();
        assert!(matches!(err, VerifyError::BelowRange { n: 0, min: 1, .. }));
        assert!(err.to_string().contains("empty sum"));
        assert_eq!(verify(IdentityId::Genocchi, 2).unwrap().rhs, "32");
    }

    #[test]
    fn huber_yee_refuses_the_lone_term() {
        let err = verify(IdentityId::HuberYee, 0).unwrap_err();
        assert!(err.to_string().contains("q^-1"));
        let report = verify(IdentityId::HuberYee, 1).unwrap();
        assert_eq!(report.rhs, "0");
        assert!(report.equal);
    }

    #[test]
    fn cutoffs_are_enforced() {
        let err = verify(IdentityId::SignedTrees, 4).unwrap_err();
        assert_eq!(
            err,
            VerifyError::AboveCutoff {
                identity: IdentityId::SignedTrees,
                n: 4,
                max: 3
            }
        );
    }

    #[test]
    fn elapsed_is_omitted_from_json_unless_set() {
        let report = verify(IdentityId::Tan2, 1).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert!(!json.contains("elapsed_ms"));
        assert!(json.contains("\"identity\":\"tan2\""));
        let mut timed = report;
        timed.elapsed_ms = Some(3);
        assert!(serde_json::to_string(&timed).unwrap().contains("\"elapsed_ms\":3"));
    }

    #[test]
    fn trees_group_by_root_label_size() {
        // Refinement behind the first q-identity: trees whose root
        // label has 2n+1-2k letters sum (signed, by inversions) to
        // (-1)^k [2n+1 2k]_q (-q;q)_{2n-2k} ~T_{2k+1}(q).
        for n in 0..=2usize {
            let mut groups: Vec<LaurentPoly> = vec![LaurentPoly::zero(); n + 1];
            for tree in labeled_trees(n) {
                let k = (2 * n + 1 - tree.label().len()) / 2;
                let sign = if tree.half_edges() % 2 == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                };
                let term = LaurentPoly::monomial(tree.inv() as i64).scaled(&sign);
                groups[k] = &groups[k] + &term;
            }
            for (k, group) in groups.iter().enumerate() {
                let expected = negate_if_odd(
                    k,
                    &(&q_binomial(2 * n + 1, 2 * k as isize)
                        * &neg_q_pochhammer(2 * n - 2 * k))
                        * &tilde_t(k),
                );
                assert_eq!(group, &expected, "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn signed_tree_identities_match_direct_recount() {
        // Independent of the report plumbing: recompute the n = 1
        // signed sums straight from the ten trees.
        let trees: Vec<LabeledTree> = labeled_trees(1).collect();
        assert_eq!(trees.len(), 10);
        let signed: i64 = trees
            .iter()
            .map(|t| if t.half_edges() % 2 == 0 { 1 } else { -1 })
            .sum();
        assert_eq!(signed, -2);
        assert!(verify(IdentityId::SignedTrees, 1).unwrap().equal);
        assert!(verify(IdentityId::SignedTreesQ, 1).unwrap().equal);
    }
}
