//! Distributions, moments and exceedance tests built on the exact counts.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::assembly::{Counter, PerLetterSpec, RestrictionSet};
use crate::combinatorics::{BinomialTable, ExactCount, ExactProbability};
use crate::error::{Error, Result};
use crate::kernels::at_most_exceeding;

/// How run lengths are ranked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Definition {
    /// Runs of `letter` (0-based) ranked among themselves.
    PerLetter { letter: usize },
    /// All runs ranked together.
    Whole,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub q: usize,
    pub pmf: ExactProbability,
    pub cdf: ExactProbability,
}

/// Exact distribution of the `(m+1)`-th longest run over `q = 0..=support_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionTable {
    pub definition: Definition,
    pub m: usize,
    pub rows: Vec<Row>,
    pub support_max: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentSummary {
    pub m: usize,
    pub mean: BigRational,
    pub second_moment: BigRational,
    pub variance: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestResult {
    pub statistic_name: String,
    pub observed_q: usize,
    pub p_value: ExactProbability,
    pub alpha: BigRational,
    pub reject: bool,
}

/// Arrangements with `l_m^{(letter)} = q`, all other letters free.
fn letter_at_count(counter: &Counter, letter: usize, q: usize, m: usize) -> Result<ExactCount> {
    let kernel = move |binom: &BinomialTable, n: usize, r: usize| -> Result<ExactCount> {
        let within = at_most_exceeding(binom, n, q, r, m)?;
        let below = if q == 0 { BigUint::zero() } else { at_most_exceeding(binom, n, q - 1, r, m)? };
        Ok(within - below)
    };
    counter.assemble_generic(&RestrictionSet::new().restrict(letter, kernel))
}

/// Arrangements with `l_m^{(letter)} <= q`, all other letters free.
fn letter_within_count(counter: &Counter, letter: usize, q: usize, m: usize) -> Result<ExactCount> {
    let comp = counter.composition();
    let mut m_vec = alloc::vec![0; comp.k()];
    let mut q_vec: Vec<i64> = comp.counts().iter().map(|&n| n as i64).collect();
    m_vec[letter] = m;
    q_vec[letter] = q as i64;
    counter.count_n(&PerLetterSpec::new(m_vec, q_vec)?)
}

fn check_letter(counter: &Counter, definition: Definition) -> Result<()> {
    if let Definition::PerLetter { letter } = definition {
        let k = counter.composition().k();
        if letter >= k {
            return Err(Error::LetterIndex { letter, k });
        }
    }
    Ok(())
}

/// Exact pmf and cdf of `l_m` (whole system) or `l_m^{(letter)}`.
///
/// The cdf comes straight from the "at most q" counts and the pmf from the
/// "exactly q" counts; the two are checked against each other.
pub fn pmf_table(counter: &Counter, definition: Definition, m: usize) -> Result<DistributionTable> {
    check_letter(counter, definition)?;
    let total = counter.total_arrangements();
    let comp = counter.composition();
    let q_max = comp.max_count();
    let mut pmf_counts = Vec::with_capacity(q_max + 1);
    let mut cdf_counts = Vec::with_capacity(q_max + 1);
    match definition {
        Definition::Whole => {
            let mut previous = BigUint::zero();
            for q in 0..=q_max {
                let within = counter.count_q(q as i64, m)?;
                pmf_counts.push(&within - &previous);
                cdf_counts.push(within.clone());
                previous = within;
            }
        }
        Definition::PerLetter { letter } => {
            for q in 0..=q_max {
                pmf_counts.push(letter_at_count(counter, letter, q, m)?);
                cdf_counts.push(letter_within_count(counter, letter, q, m)?);
            }
        }
    }
    let mut running = BigUint::zero();
    for (q, (pmf, cdf)) in pmf_counts.iter().zip(&cdf_counts).enumerate() {
        running += pmf;
        if running != *cdf {
            return Err(Error::Inconsistent { q });
        }
    }
    if running != total {
        return Err(Error::Inconsistent { q: q_max });
    }
    let support_max = pmf_counts.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
    let rows = pmf_counts
        .into_iter()
        .zip(cdf_counts)
        .take(support_max + 1)
        .enumerate()
        .map(|(q, (pmf, cdf))| {
            Ok(Row {
                q,
                pmf: ExactProbability::new(pmf, total.clone())?,
                cdf: ExactProbability::new(cdf, total.clone())?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(DistributionTable { definition, m, rows, support_max })
}

/// Exact mean, second moment and variance of a table's pmf.
pub fn moments(table: &DistributionTable) -> MomentSummary {
    let mut mean = BigRational::zero();
    let mut second_moment = BigRational::zero();
    for row in &table.rows {
        let q = BigRational::from_integer(BigInt::from(row.q));
        let weighted = row.pmf.as_ratio() * &q;
        second_moment += &weighted * &q;
        mean += weighted;
    }
    let variance = &second_moment - &mean * &mean;
    debug_assert!(!variance.is_negative());
    MomentSummary { m: table.m, mean, second_moment, variance }
}

/// Exact probability that the `(m+1)`-th longest run is at least `observed_q`.
pub fn p_value_at_least(
    counter: &Counter,
    definition: Definition,
    m: usize,
    observed_q: usize,
    alpha: &BigRational,
) -> Result<TestResult> {
    check_letter(counter, definition)?;
    let statistic_name = match definition {
        Definition::PerLetter { letter } => format!("l_{m}^({}) >= {observed_q}", letter + 1),
        Definition::Whole => format!("l_{m} >= {observed_q}"),
    };
    let total = counter.total_arrangements();
    let p_value = if observed_q == 0 {
        ExactProbability::one()
    } else {
        match definition {
            Definition::PerLetter { letter } => {
                ExactProbability::new(counter.count_z_for_letter(letter, observed_q, m)?, total)?
            }
            Definition::Whole => ExactProbability::new(counter.count_q(observed_q as i64 - 1, m)?, total)?.complement(),
        }
    };
    let reject = p_value.as_ratio() <= alpha;
    Ok(TestResult { statistic_name, observed_q, p_value, alpha: alpha.clone(), reject })
}

/// Moment summaries for `m = 0..=m_max`; the spread is expected to shrink as
/// `m` grows, but that is reported rather than enforced.
pub fn narrowing_report(counter: &Counter, definition: Definition, m_max: usize) -> Result<Vec<MomentSummary>> {
    (0..=m_max).map(|m| pmf_table(counter, definition, m).map(|t| moments(&t))).collect()
}

/// Default significance level, 1/20.
pub fn default_alpha() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(20))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::Composition;
    use alloc::vec;

    fn counter(counts: &[usize]) -> Counter {
        Counter::new(Composition::new(counts.to_vec()).unwrap())
    }

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_whole_tables() {
        let table = pmf_table(&counter(&[2, 2]), Definition::Whole, 0).unwrap();
        assert_eq!(table.support_max, 2);
        let pmf: Vec<_> = table.rows.iter().map(|r| r.pmf.as_ratio().clone()).collect();
        assert_eq!(pmf, vec![ratio(0, 1), ratio(1, 3), ratio(2, 3)]);
        assert!(table.rows.last().unwrap().cdf.is_one());

        let table = pmf_table(&counter(&[1, 1]), Definition::Whole, 0).unwrap();
        assert_eq!(table.support_max, 1);
        assert!(table.rows[1].pmf.is_one());
    }

    #[test]
    fn per_letter_table_matches_exceedance() {
        let c = counter(&[10, 7]);
        for m in 0..3 {
            let table = pmf_table(&c, Definition::PerLetter { letter: 0 }, m).unwrap();
            for row in &table.rows {
                if row.q == 0 {
                    continue;
                }
                let p = p_value_at_least(&c, Definition::PerLetter { letter: 0 }, m, row.q, &default_alpha()).unwrap();
                let below = &table.rows[row.q - 1].cdf;
                assert_eq!(p.p_value, below.complement());
            }
        }
    }

    #[test]
    fn point_mass_moments() {
        // a single letter always forms one run of its full length
        let table = pmf_table(&counter(&[5]), Definition::Whole, 0).unwrap();
        let summary = moments(&table);
        assert_eq!(summary.mean, ratio(5, 1));
        assert!(summary.variance.is_zero());
    }

    #[test]
    fn p_value_edges() {
        let c = counter(&[10, 7]);
        let alpha = default_alpha();
        let p = p_value_at_least(&c, Definition::Whole, 0, 1, &alpha).unwrap();
        assert!(p.p_value.is_one());
        assert!(!p.reject);
        let p = p_value_at_least(&c, Definition::Whole, 2, 0, &alpha).unwrap();
        assert!(p.p_value.is_one());
        let p = p_value_at_least(&c, Definition::PerLetter { letter: 0 }, 0, 11, &alpha).unwrap();
        assert!(p.p_value.is_zero());
        assert!(p.reject);
        assert!(p_value_at_least(&c, Definition::PerLetter { letter: 2 }, 0, 3, &alpha).is_err());
    }

    #[test]
    fn report_has_one_row_per_order() {
        let c = counter(&[4, 6]);
        assert_eq!(narrowing_report(&c, Definition::Whole, 0).unwrap().len(), 1);
        let rows = narrowing_report(&c, Definition::Whole, 3).unwrap();
        assert_eq!(rows.iter().map(|r| r.m).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        for row in rows {
            assert_eq!(row.variance, &row.second_moment - &row.mean * &row.mean);
            assert!(!row.variance.is_negative());
        }
    }
}
