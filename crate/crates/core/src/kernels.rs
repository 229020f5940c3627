//! Single-letter counts: the ways `n` identical elements split into `r`
//! ordered runs (every run nonempty) under a bound on how many runs may be
//! longer than `q`, plus the signed kernels obtained by folding those counts
//! against `(-1)^r C(r-1, p-1)` over `r`.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::combinatorics::{BinomialTable, ExactCount, SignedExact};
use crate::error::{Error, Result};

fn check_runs(n: usize, r: usize) -> Result<()> {
    if n == 0 || r == 0 || r > n {
        return Err(Error::RunCount { n, r });
    }
    Ok(())
}

fn check_index(n: usize, p: usize) -> Result<()> {
    if n == 0 || p == 0 || p > n {
        return Err(Error::SummationIndex { n, p });
    }
    Ok(())
}

/// `acc += (-1)^negative * a * b * c`
#[inline]
fn accumulate(acc: &mut BigInt, negative: bool, a: &BigUint, b: &BigUint, c: &BigUint) {
    let term = BigInt::from(a * b * c);
    if negative {
        *acc -= term;
    } else {
        *acc += term;
    }
}

fn into_count(value: BigInt) -> ExactCount {
    debug_assert!(!value.is_negative(), "arrangement count went negative: {value}");
    value.into_parts().1
}

/// Placements of `n` elements into `r` runs with exactly `m` runs longer
/// than `q`.
pub fn exactly_exceeding(binom: &BinomialTable, n: usize, q: usize, r: usize, m: usize) -> Result<ExactCount> {
    check_runs(n, r)?;
    if q == 0 {
        // every run is longer than zero
        return Ok(if r == m { binom.get(n - 1, r - 1).clone() } else { BigUint::zero() });
    }
    let upper = r.min((n - r) / q);
    let mut acc = BigInt::zero();
    for j in m..=upper {
        accumulate(&mut acc, (m + j) % 2 == 1, binom.get(j, m), binom.get(r, j), binom.get(n - q * j - 1, r - 1));
    }
    Ok(into_count(acc))
}

/// Placements of `n` elements into `r` runs with at most `m` runs longer
/// than `q`, i.e. the `(m+1)`-th longest run is at most `q`.
pub fn at_most_exceeding(binom: &BinomialTable, n: usize, q: usize, r: usize, m: usize) -> Result<ExactCount> {
    check_runs(n, r)?;
    if q == 0 {
        return Ok(if r > m { BigUint::zero() } else { binom.get(n - 1, r - 1).clone() });
    }
    let upper = r.min((n - r) / q);
    // j = 0 carries C(-1, m) = (-1)^m, which cancels the leading sign.
    let mut acc = BigInt::from(binom.get(n - 1, r - 1).clone());
    // C(j-1, m) vanishes for 1 <= j <= m
    for j in m + 1..=upper {
        accumulate(&mut acc, (m + j) % 2 == 1, binom.get(j - 1, m), binom.get(r, j), binom.get(n - q * j - 1, r - 1));
    }
    Ok(into_count(acc))
}

/// Unrestricted placements of `n` elements into `r` runs, `C(n-1, r-1)`.
/// Zero when `r` is out of range.
pub fn unrestricted(binom: &BinomialTable, n: usize, r: usize) -> ExactCount {
    if n == 0 || r == 0 || r > n {
        return BigUint::zero();
    }
    binom.get(n - 1, r - 1).clone()
}

/// Range of `j` with `(n-p)/(q+1) <= j <= (n-p)/q`, for `q >= 1`.
fn collapsed_range(n: usize, p: usize, q: usize) -> core::ops::RangeInclusive<usize> {
    let gap = n - p;
    gap.div_ceil(q + 1)..=gap / q
}

/// `H_m(n, q, p) = sum_r (-1)^r C(r-1, p-1) h_m(n, q, r)` in closed form.
pub fn collapsed_h(binom: &BinomialTable, n: usize, q: usize, p: usize, m: usize) -> Result<SignedExact> {
    check_index(n, p)?;
    Ok(collapsed(binom, n, q, p, m, true))
}

/// `sum_r (-1)^r C(r-1, p-1) hbar_m(n, q, r)` in closed form.
pub fn collapsed_hbar(binom: &BinomialTable, n: usize, q: usize, p: usize, m: usize) -> Result<SignedExact> {
    check_index(n, p)?;
    Ok(collapsed(binom, n, q, p, m, false))
}

/// Shared closed form; `at_most` selects `C(j-1, m)` (H) over `C(j, m)` (Hbar).
pub(crate) fn collapsed(binom: &BinomialTable, n: usize, q: usize, p: usize, m: usize, at_most: bool) -> SignedExact {
    let (n_i, p_i, m_i) = (n as i64, p as i64, m as i64);
    if q == 0 {
        let (value, sign_odd) = if at_most {
            // Both q = 0 cases reduce to this product. The extra -C(n-p-1, n-1)
            // of the n > m case is nonzero only at p = n, where the r-sum is 0.
            (binom.signed(n_i - 1, p_i - 1) * binom.signed(n_i - p_i - 1, m_i - p_i), m % 2 == 1)
        } else {
            (binom.signed(m_i - 1, p_i - 1) * binom.signed(n_i - 1, m_i - 1), m % 2 == 1)
        };
        return if sign_odd { -value } else { value };
    }
    let mut acc = BigInt::zero();
    for j in collapsed_range(n, p, q) {
        let rank = if at_most { binom.signed_parts(j as i64 - 1, m_i) } else { binom.signed_parts(j as i64, m_i) };
        let Some((rank_negative, rank)) = rank else { continue };
        let rest = n - q * j;
        if rest < j || rest == 0 {
            continue;
        }
        let negative = (n + m + q * j + j) % 2 == 1;
        accumulate(&mut acc, negative ^ rank_negative, &rank, binom.get(rest - 1, p - 1), binom.get(p, rest - j));
    }
    acc
}

/// Folds any single-letter count `U(n, r)` into `sum_r (-1)^(r-p) C(r-1, p-1) U(n, r)`
/// for `p = 1..=n`; entry `p - 1` of the result holds index `p`.
pub(crate) fn fold_runs<F>(binom: &BinomialTable, n: usize, mut count: F) -> Result<alloc::vec::Vec<SignedExact>>
where
    F: FnMut(usize) -> Result<ExactCount>,
{
    let per_r: alloc::vec::Vec<ExactCount> = (1..=n).map(&mut count).collect::<Result<_>>()?;
    let mut out = alloc::vec::Vec::with_capacity(n);
    for p in 1..=n {
        let mut acc = BigInt::zero();
        for (r, u) in per_r.iter().enumerate().map(|(i, u)| (i + 1, u)).skip(p - 1) {
            if u.is_zero() {
                continue;
            }
            let term = BigInt::from(binom.get(r - 1, p - 1) * u);
            if (r - p) % 2 == 1 {
                acc -= term;
            } else {
                acc += term;
            }
        }
        out.push(acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;
    use num_traits::One;
    use proptest::prelude::*;

    fn table() -> BinomialTable {
        BinomialTable::new(40)
    }

    /// All compositions of `n` into `r` positive parts.
    fn compositions(n: usize, r: usize) -> Vec<Vec<usize>> {
        fn walk(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if parts == 0 {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            for first in 1..=left.saturating_sub(parts - 1) {
                cur.push(first);
                walk(left - first, parts - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        walk(n, r, &mut Vec::new(), &mut out);
        out
    }

    fn brute_exactly(n: usize, q: usize, r: usize, m: usize) -> u64 {
        compositions(n, r).iter().filter(|c| c.iter().filter(|&&x| x > q).count() == m).count() as u64
    }

    fn brute_at_most(n: usize, q: usize, r: usize, m: usize) -> u64 {
        compositions(n, r).iter().filter(|c| c.iter().filter(|&&x| x > q).count() <= m).count() as u64
    }

    /// Coefficient of x^n y^m in (sum_{1<=l<=q} x^l + y sum_{l>q} x^l)^r.
    fn generating_coefficient(n: usize, q: usize, r: usize, m: usize) -> u128 {
        // poly[x][y]
        let mut poly = vec![vec![0u128; r + 1]; n + 1];
        poly[0][0] = 1;
        for _ in 0..r {
            let mut next = vec![vec![0u128; r + 1]; n + 1];
            for x in 0..=n {
                for y in 0..=r {
                    let c = poly[x][y];
                    if c == 0 {
                        continue;
                    }
                    for len in 1..=n - x {
                        if len > q {
                            if y < r {
                                next[x + len][y + 1] += c;
                            }
                        } else {
                            next[x + len][y] += c;
                        }
                    }
                }
            }
            poly = next;
        }
        if m > r {
            0
        } else {
            poly[n][m]
        }
    }

    fn direct_fold(n: usize, q: usize, p: usize, m: usize, at_most: bool) -> BigInt {
        let b = table();
        let mut acc = BigInt::zero();
        for r in 1..=n {
            let h =
                if at_most { at_most_exceeding(&b, n, q, r, m) } else { exactly_exceeding(&b, n, q, r, m) }.unwrap();
            let term = crate::combinatorics::binomial(r as i64 - 1, p as i64 - 1) * BigInt::from(h);
            if r % 2 == 1 {
                acc -= term;
            } else {
                acc += term;
            }
        }
        acc
    }

    #[test]
    fn exactly_examples() {
        let b = table();
        assert_eq!(exactly_exceeding(&b, 4, 2, 2, 1).unwrap(), BigUint::from(2u32));
        assert_eq!(exactly_exceeding(&b, 4, 0, 2, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(exactly_exceeding(&b, 4, 0, 2, 1).unwrap(), BigUint::zero());
        assert_eq!(exactly_exceeding(&b, 4, 2, 2, 0).unwrap(), BigUint::one());
    }

    #[test]
    fn at_most_examples() {
        let b = table();
        assert_eq!(at_most_exceeding(&b, 4, 2, 2, 0).unwrap(), BigUint::one());
        assert_eq!(at_most_exceeding(&b, 4, 2, 2, 1).unwrap(), BigUint::from(3u32));
        assert_eq!(at_most_exceeding(&b, 5, 0, 3, 2).unwrap(), BigUint::zero());
        for n in 1..=10 {
            for r in 1..=n {
                for q in n..n + 3 {
                    assert_eq!(at_most_exceeding(&b, n, q, r, 0).unwrap(), unrestricted(&b, n, r));
                }
            }
        }
    }

    #[test]
    fn kernel_domain_errors() {
        let b = table();
        assert_eq!(exactly_exceeding(&b, 3, 1, 4, 0), Err(Error::RunCount { n: 3, r: 4 }));
        assert!(at_most_exceeding(&b, 0, 1, 1, 0).is_err());
        assert!(at_most_exceeding(&b, 3, 1, 0, 0).is_err());
        assert_eq!(collapsed_h(&b, 3, 1, 4, 0), Err(Error::SummationIndex { n: 3, p: 4 }));
        assert!(collapsed_hbar(&b, 3, 1, 0, 0).is_err());
    }

    #[test]
    fn unrestricted_examples() {
        let b = table();
        assert_eq!(unrestricted(&b, 5, 2), BigUint::from(4u32));
        assert_eq!(unrestricted(&b, 7, 1), BigUint::one());
        assert_eq!(unrestricted(&b, 7, 7), BigUint::one());
        assert_eq!(unrestricted(&b, 3, 4), BigUint::zero());
    }

    #[test]
    fn kernels_match_composition_enumeration() {
        let b = table();
        for n in 1..=12 {
            for r in 1..=n {
                for q in 0..=n {
                    for m in 0..=r + 1 {
                        assert_eq!(
                            exactly_exceeding(&b, n, q, r, m).unwrap(),
                            BigUint::from(brute_exactly(n, q, r, m)),
                            "hbar n={n} q={q} r={r} m={m}"
                        );
                        assert_eq!(
                            at_most_exceeding(&b, n, q, r, m).unwrap(),
                            BigUint::from(brute_at_most(n, q, r, m)),
                            "h n={n} q={q} r={r} m={m}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn kernels_match_generating_function() {
        let b = table();
        for n in 1..=20 {
            for r in 1..=n {
                for q in 0..=n {
                    for m in 0..=r {
                        assert_eq!(
                            exactly_exceeding(&b, n, q, r, m).unwrap(),
                            BigUint::from(generating_coefficient(n, q, r, m)),
                            "n={n} q={q} r={r} m={m}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn completeness_and_saturation() {
        let b = table();
        for n in 1..=14 {
            for r in 1..=n {
                for q in 0..=n + 1 {
                    let total: BigUint = (0..=r).map(|m| exactly_exceeding(&b, n, q, r, m).unwrap()).sum();
                    assert_eq!(total, unrestricted(&b, n, r));
                    for m in r..r + 3 {
                        assert_eq!(at_most_exceeding(&b, n, q, r, m).unwrap(), unrestricted(&b, n, r));
                    }
                }
            }
        }
    }

    #[test]
    fn monotone_in_bound_and_order() {
        let b = table();
        for n in 1..=12 {
            for r in 1..=n {
                for q in 0..=n {
                    for m in 0..=r {
                        let here = at_most_exceeding(&b, n, q, r, m).unwrap();
                        assert!(at_most_exceeding(&b, n, q + 1, r, m).unwrap() >= here);
                        assert!(at_most_exceeding(&b, n, q, r, m + 1).unwrap() >= here);
                    }
                }
            }
        }
    }

    #[test]
    fn collapsed_kernels_match_direct_sum() {
        let b = table();
        for n in 1..=12 {
            for q in 0..=n + 1 {
                for p in 1..=n {
                    for m in 0..=n + 1 {
                        assert_eq!(
                            collapsed_h(&b, n, q, p, m).unwrap(),
                            direct_fold(n, q, p, m, true),
                            "H n={n} q={q} p={p} m={m}"
                        );
                        assert_eq!(
                            collapsed_hbar(&b, n, q, p, m).unwrap(),
                            direct_fold(n, q, p, m, false),
                            "Hbar n={n} q={q} p={p} m={m}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn collapsed_examples() {
        let b = table();
        for n in 1..=12 {
            let expected = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            for q in 1..=n + 1 {
                for m in 0..5 {
                    assert_eq!(collapsed_h(&b, n, q, n, m).unwrap(), expected);
                }
            }
        }
        assert_eq!(collapsed_h(&b, 4, 0, 2, 5).unwrap(), BigInt::zero());
        assert_eq!(collapsed_hbar(&b, 3, 0, 2, 2).unwrap(), BigInt::from(2));
    }

    #[test]
    fn hbar_orders_sum_to_h() {
        let b = table();
        for n in 1..=10 {
            for q in 0..=n {
                for p in 1..=n {
                    for m in 0..=n {
                        let partial: BigInt = (0..=m).map(|i| collapsed_hbar(&b, n, q, p, i).unwrap()).sum();
                        assert_eq!(partial, collapsed_h(&b, n, q, p, m).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn fold_of_h_is_signed_collapsed_h() {
        let b = table();
        for n in 1..=9 {
            for q in 0..=n {
                let folded = fold_runs(&b, n, |r| at_most_exceeding(&b, n, q, r, 1)).unwrap();
                for p in 1..=n {
                    let h = collapsed_h(&b, n, q, p, 1).unwrap();
                    let expected = if p % 2 == 1 { -h } else { h };
                    assert_eq!(folded[p - 1], expected);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn large_kernels_stay_nonnegative(n in 1usize..=40, q in 1usize..=10, r_frac in 0.0f64..1.0, m in 0usize..6) {
            let b = table();
            let r = 1 + ((n - 1) as f64 * r_frac) as usize;
            let exact: BigUint = (0..=r).map(|i| exactly_exceeding(&b, n, q, r, i).unwrap()).sum();
            prop_assert_eq!(exact, unrestricted(&b, n, r));
            let upto: BigUint = (0..=m).map(|i| exactly_exceeding(&b, n, q, r, i).unwrap()).sum();
            prop_assert_eq!(upto, at_most_exceeding(&b, n, q, r, m).unwrap());
        }
    }
}
