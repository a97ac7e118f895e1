//! Closed-form Turán numbers for vertex-disjoint clique packings in
//! complete multipartite hosts, with strict domain-of-validity tagging.
//!
//! All arithmetic is exact integer arithmetic; part sizes up to 10⁴ total
//! vertices stay far inside the 64-bit range.

use crate::error::{Error, Result};
use crate::graph::{HostSpec, PartSizes};
use serde::{Deserialize, Serialize};
use std::fmt;

/// How much a formula value may be trusted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Validity {
    /// Exact by the main theorem (or a cited exact special case).
    ExactTheorem,
    /// Exact because the forbidden packing cannot fit in the host at all,
    /// so the full host is the extremal subgraph.
    ExactTrivialRange,
    /// Only a lower bound is claimed.
    LowerBoundOnly,
}

impl fmt::Display for Validity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Validity::ExactTheorem => "exact-theorem",
            Validity::ExactTrivialRange => "exact-trivial-range",
            Validity::LowerBoundOnly => "lower-bound-only",
        })
    }
}

/// A formula evaluation: the edge count, how exact it is, and the sorted
/// spec that was actually evaluated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaResult {
    pub value: u64,
    pub validity: Validity,
    pub canonical_spec: HostSpec,
}

impl FormulaResult {
    pub fn is_exact(&self) -> bool {
        matches!(
            self.validity,
            Validity::ExactTheorem | Validity::ExactTrivialRange
        )
    }
}

/// The raw closed form Σ_{i<j} nᵢnⱼ − n₁n₂ + n₂(k−1), evaluated over the
/// tuple exactly as given (no sorting).
///
/// In range (1 ≤ k ≤ n₁ ≤ … ≤ n_r, r ≥ 3) this is the Turán number for k
/// vertex-disjoint transversal cliques; out of range it is just arithmetic.
pub fn closed_form(parts: &PartSizes, k: u64) -> Result<i64> {
    if k == 0 {
        return Err(Error::OutOfRange("k must be >= 1".into()));
    }
    let n = parts.sizes();
    let mut sum: i64 = 0;
    for i in 0..n.len() {
        for j in i + 1..n.len() {
            let prod = (n[i] as i64)
                .checked_mul(n[j] as i64)
                .ok_or(Error::Overflow("closed_form"))?;
            sum = sum.checked_add(prod).ok_or(Error::Overflow("closed_form"))?;
        }
    }
    let n1n2 = (n[0] as i64) * (n[1] as i64);
    let correction = (n[1] as i64)
        .checked_mul(k as i64 - 1)
        .ok_or(Error::Overflow("closed_form"))?;
    sum.checked_sub(n1n2)
        .and_then(|s| s.checked_add(correction))
        .ok_or(Error::Overflow("closed_form"))
}

/// ex(K_{n₁,…,n_r}, kK_r).
///
/// Sizes are canonicalized (sorted) first; the Turán number is invariant
/// under permuting parts because the host graph is. For r ≥ 3 and k ≤ n₁
/// the value is the closed form, exact. For k > n₁ no k disjoint
/// transversals fit (each needs one vertex per part), so the full host is
/// returned with the trivial-range tag. r = 2 delegates to the bipartite
/// matching formula.
pub fn turan_number(spec: &HostSpec) -> Result<FormulaResult> {
    let canonical = spec.canonicalized();
    let parts = canonical.parts();
    let k = canonical.k();
    if parts.len() == 2 {
        return bipartite_matching_number(parts.sizes()[0], parts.sizes()[1], k);
    }
    let n1 = parts.sizes()[0] as u64;
    if k <= n1 {
        let value = closed_form(parts, k)? as u64;
        Ok(FormulaResult {
            value,
            validity: Validity::ExactTheorem,
            canonical_spec: canonical,
        })
    } else {
        Ok(FormulaResult {
            value: parts.host_edge_count(),
            validity: Validity::ExactTrivialRange,
            canonical_spec: canonical,
        })
    }
}

/// ex(K_{m,n}, kK₂) = m(k−1) for 1 ≤ k ≤ n ≤ m; for k > min(m,n) the host
/// has no k-matching at all and the full edge count is exact.
pub fn bipartite_matching_number(m: usize, n: usize, k: u64) -> Result<FormulaResult> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidPartSizes("bipartite sides must be >= 1".into()));
    }
    if k == 0 {
        return Err(Error::OutOfRange("k must be >= 1".into()));
    }
    let (small, large) = if m <= n { (m, n) } else { (n, m) };
    let canonical = HostSpec::new(PartSizes::new(vec![small, large])?, k)?;
    if k <= small as u64 {
        Ok(FormulaResult {
            value: large as u64 * (k - 1),
            validity: Validity::ExactTheorem,
            canonical_spec: canonical,
        })
    } else {
        Ok(FormulaResult {
            value: (small * large) as u64,
            validity: Validity::ExactTrivialRange,
            canonical_spec: canonical,
        })
    }
}

/// ex(K_{n₁,…,n_ℓ}, kK₂) = (k−1)·Σ_{i=2}^ℓ nᵢ for matchings in an ℓ-partite
/// host, exact for 1 ≤ k ≤ n₁ (sizes sorted).
///
/// The exactness range beyond k ≤ n₁ is not settled, so larger k only
/// degrades the tag to lower-bound-only rather than guessing.
pub fn multipartite_matching_number(parts: &PartSizes, k: u64) -> Result<FormulaResult> {
    if k == 0 {
        return Err(Error::OutOfRange("k must be >= 1".into()));
    }
    let sorted = parts.canonicalized();
    let sizes = sorted.sizes();
    let rest: u64 = sizes[1..].iter().map(|&s| s as u64).sum();
    let value = (k - 1) * rest;
    let validity = if k <= sizes[0] as u64 {
        Validity::ExactTheorem
    } else {
        Validity::LowerBoundOnly
    };
    Ok(FormulaResult {
        value,
        validity,
        canonical_spec: HostSpec::new(sorted, k)?,
    })
}

/// Lower bound (n₁+n₂+n₃)n₄ + (k−1)n₃ for ex(K_{n₁,n₂,n₃,n₄}, kK₃);
/// whether it is extremal is open, so the tag is always lower-bound-only.
pub fn four_partite_triangle_lower_bound(parts: &PartSizes, k: u64) -> Result<FormulaResult> {
    if parts.len() != 4 {
        return Err(Error::OutOfRange(format!(
            "need exactly 4 parts, got {}",
            parts.len()
        )));
    }
    if k == 0 {
        return Err(Error::OutOfRange("k must be >= 1".into()));
    }
    let sorted = parts.canonicalized();
    let n = sorted.sizes();
    let value = ((n[0] + n[1] + n[2]) * n[3]) as u64 + (k - 1) * n[2] as u64;
    Ok(FormulaResult {
        value,
        validity: Validity::LowerBoundOnly,
        canonical_spec: HostSpec::new(sorted, k)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parts(sizes: &[usize]) -> PartSizes {
        PartSizes::new(sizes.to_vec()).unwrap()
    }

    fn spec(sizes: &[usize], k: u64) -> HostSpec {
        HostSpec::new(parts(sizes), k).unwrap()
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(closed_form(&parts(&[1, 1, 1]), 1).unwrap(), 2);
        assert_eq!(closed_form(&parts(&[2, 2, 2]), 2).unwrap(), 10);
        assert_eq!(closed_form(&parts(&[3, 3, 3]), 2).unwrap(), 21);
        // raw formula, no sorting applied
        assert_eq!(closed_form(&parts(&[3, 2]), 2).unwrap(), 2);
    }

    #[test]
    fn turan_number_examples() {
        let r = turan_number(&spec(&[2, 2, 2], 1)).unwrap();
        assert_eq!((r.value, r.validity), (8, Validity::ExactTheorem));

        let r = turan_number(&spec(&[2, 2, 2], 3)).unwrap();
        assert_eq!((r.value, r.validity), (12, Validity::ExactTrivialRange));

        // permutation invariance: (3,2,2) canonicalizes to (2,2,3)
        let r = turan_number(&spec(&[3, 2, 2], 2)).unwrap();
        assert_eq!(r.value, 14);
        assert_eq!(r.canonical_spec.parts().sizes(), &[2, 2, 3]);
        let r2 = turan_number(&spec(&[2, 3, 2], 2)).unwrap();
        assert_eq!(r.value, r2.value);
    }

    #[test]
    fn bipartite_examples() {
        let r = bipartite_matching_number(4, 3, 2).unwrap();
        assert_eq!((r.value, r.validity), (4, Validity::ExactTheorem));

        let r = bipartite_matching_number(5, 5, 1).unwrap();
        assert_eq!((r.value, r.validity), (0, Validity::ExactTheorem));

        let r = bipartite_matching_number(2, 2, 3).unwrap();
        assert_eq!((r.value, r.validity), (4, Validity::ExactTrivialRange));
    }

    #[test]
    fn turan_delegates_bipartite() {
        let r = turan_number(&spec(&[3, 4], 2)).unwrap();
        assert_eq!((r.value, r.validity), (4, Validity::ExactTheorem));
        assert_eq!(r.canonical_spec.r(), 2);
    }

    #[test]
    fn multipartite_matching_examples() {
        let r = multipartite_matching_number(&parts(&[2, 2, 2]), 2).unwrap();
        assert_eq!((r.value, r.validity), (4, Validity::ExactTheorem));

        let r = multipartite_matching_number(&parts(&[1, 1, 1]), 1).unwrap();
        assert_eq!((r.value, r.validity), (0, Validity::ExactTheorem));

        let r = multipartite_matching_number(&parts(&[2, 3, 4]), 2).unwrap();
        assert_eq!((r.value, r.validity), (7, Validity::ExactTheorem));

        let r = multipartite_matching_number(&parts(&[2, 3, 4]), 3).unwrap();
        assert_eq!(r.validity, Validity::LowerBoundOnly);
    }

    #[test]
    fn four_partite_bound_examples() {
        let r = four_partite_triangle_lower_bound(&parts(&[2, 2, 2, 2]), 2).unwrap();
        assert_eq!((r.value, r.validity), (14, Validity::LowerBoundOnly));

        let r = four_partite_triangle_lower_bound(&parts(&[1, 1, 1, 1]), 1).unwrap();
        assert_eq!(r.value, 3);

        let r = four_partite_triangle_lower_bound(&parts(&[2, 2, 2, 2]), 1).unwrap();
        assert_eq!(r.value, 12);

        assert!(four_partite_triangle_lower_bound(&parts(&[2, 2, 2]), 1).is_err());
    }

    #[test]
    fn monotone_in_k_and_sizes() {
        for n1 in 1..=4usize {
            for n2 in n1..=4 {
                for n3 in n2..=4 {
                    let mut prev = 0;
                    for k in 1..=(n1 as u64 + 2) {
                        let v = turan_number(&spec(&[n1, n2, n3], k)).unwrap().value;
                        assert!(v >= prev, "not monotone in k at ({n1},{n2},{n3}),{k}");
                        prev = v;
                    }
                    // monotone when any part grows
                    let base = turan_number(&spec(&[n1, n2, n3], 1)).unwrap().value;
                    for grown in [[n1 + 1, n2, n3], [n1, n2 + 1, n3], [n1, n2, n3 + 1]] {
                        let v = turan_number(&spec(&grown, 1)).unwrap().value;
                        assert!(v >= base);
                    }
                }
            }
        }
    }

    #[test]
    fn never_exceeds_host_and_seam_consistency() {
        for n1 in 1..=3usize {
            for n2 in n1..=3 {
                for r in 3..=5usize {
                    let mut sizes = vec![n2; r];
                    sizes[0] = n1;
                    let p = parts(&sizes);
                    let host = p.host_edge_count();
                    for k in 1..=(n1 as u64 + 1) {
                        let v = turan_number(&HostSpec::new(p.clone(), k).unwrap()).unwrap();
                        assert!(v.value <= host);
                        if k > n1 as u64 {
                            assert_eq!(v.value, host);
                        }
                    }
                    // k = 1 and k = n₁ agree with the closed form on the
                    // almost-balanced shape (the two induction base cases)
                    let v1 = turan_number(&HostSpec::new(p.clone(), 1).unwrap()).unwrap();
                    assert_eq!(v1.value as i64, closed_form(&p, 1).unwrap());
                    let vm = turan_number(&HostSpec::new(p.clone(), n1 as u64).unwrap()).unwrap();
                    assert_eq!(vm.value as i64, closed_form(&p.canonicalized(), n1 as u64).unwrap());
                }
            }
        }
    }
}
