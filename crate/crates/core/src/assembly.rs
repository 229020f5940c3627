//! Whole-sequence counts assembled from single-letter kernels.
//!
//! Every collapsed formula here has the shape
//! `sum over p-tuples of multinom(p; p_1..p_k) * prod_i c_i(p_i)`, which is
//! evaluated as a chain of binomial convolutions (one letter at a time),
//! grouping terms by `P = p_1 + ... + p_k`. The cost is `O(n * n_i)` big-integer
//! products per letter rather than a separate multinomial per tuple.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::combinatorics::{BinomialTable, ExactCount, SignedExact};
use crate::error::{Error, Result};
use crate::kernels::{self, at_most_exceeding, exactly_exceeding, fold_runs};

/// Fixed letter counts `n = (n_1, ..., n_k)`; every letter is present.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    counts: Vec<usize>,
    total: usize,
}

impl Composition {
    pub fn new(counts: Vec<usize>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::EmptyComposition);
        }
        if let Some(letter) = counts.iter().position(|&c| c == 0) {
            return Err(Error::AbsentLetter { letter });
        }
        let total = counts.iter().sum();
        Ok(Composition { counts, total })
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Number of letter types `k`.
    pub fn k(&self) -> usize {
        self.counts.len()
    }

    /// Total length `n`.
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn max_count(&self) -> usize {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    /// The same composition with `letter` (0-based) swapped into first place.
    pub fn with_letter_first(&self, letter: usize) -> Result<Self> {
        if letter >= self.k() {
            return Err(Error::LetterIndex { letter, k: self.k() });
        }
        let mut counts = self.counts.clone();
        counts.swap(0, letter);
        Ok(Composition { counts, total: self.total })
    }
}

/// Per-letter order indices `m_i` and length bounds `q_i >= -1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerLetterSpec {
    m: Vec<usize>,
    q: Vec<i64>,
}

impl PerLetterSpec {
    pub fn new(m: Vec<usize>, q: Vec<i64>) -> Result<Self> {
        if m.len() != q.len() {
            return Err(Error::ArityMismatch { expected: m.len(), got: q.len() });
        }
        if let Some(&bad) = q.iter().find(|&&q| q < -1) {
            return Err(Error::BoundTooSmall { q: bad });
        }
        Ok(PerLetterSpec { m, q })
    }

    /// Same `m` and `q` for each of `k` letters.
    pub fn uniform(k: usize, m: usize, q: i64) -> Result<Self> {
        Self::new(vec![m; k], vec![q; k])
    }

    pub fn m(&self) -> &[usize] {
        &self.m
    }

    pub fn q(&self) -> &[i64] {
        &self.q
    }

    /// Every bound lowered by one.
    pub fn lowered(&self) -> Result<Self> {
        Self::new(self.m.clone(), self.q.iter().map(|q| q - 1).collect())
    }

    fn check(&self, comp: &Composition) -> Result<()> {
        if self.m.len() != comp.k() {
            return Err(Error::ArityMismatch { expected: comp.k(), got: self.m.len() });
        }
        Ok(())
    }
}

/// Whole-system order index `m` and length bound `q >= -1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WholeSpec {
    pub m: usize,
    pub q: i64,
}

impl WholeSpec {
    pub fn new(m: usize, q: i64) -> Result<Self> {
        if q < -1 {
            return Err(Error::BoundTooSmall { q });
        }
        Ok(WholeSpec { m, q })
    }
}

/// Single-letter count `U(n, r; X)`: arrangements of `n` elements of one
/// letter into exactly `r` runs under some restriction `X`.
pub trait LetterRestriction {
    fn count(&self, binom: &BinomialTable, n: usize, r: usize) -> Result<ExactCount>;
}

impl<F> LetterRestriction for F
where
    F: Fn(&BinomialTable, usize, usize) -> Result<ExactCount>,
{
    fn count(&self, binom: &BinomialTable, n: usize, r: usize) -> Result<ExactCount> {
        self(binom, n, r)
    }
}

/// `(m+1)`-th longest run at most `q`; `q = -1` admits nothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AtMostExceeding {
    pub q: i64,
    pub m: usize,
}

impl LetterRestriction for AtMostExceeding {
    fn count(&self, binom: &BinomialTable, n: usize, r: usize) -> Result<ExactCount> {
        match usize::try_from(self.q) {
            Ok(q) => at_most_exceeding(binom, n, q, r, self.m),
            Err(_) if self.q == -1 => Ok(BigUint::zero()),
            Err(_) => Err(Error::BoundTooSmall { q: self.q }),
        }
    }
}

/// Exactly `m` runs longer than `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactlyExceeding {
    pub q: usize,
    pub m: usize,
}

impl LetterRestriction for ExactlyExceeding {
    fn count(&self, binom: &BinomialTable, n: usize, r: usize) -> Result<ExactCount> {
        exactly_exceeding(binom, n, self.q, r, self.m)
    }
}

/// Which letters carry a restriction, and which kernel each one uses.
/// Letters without an entry are unrestricted.
#[derive(Default)]
pub struct RestrictionSet<'a> {
    kernels: Vec<(usize, Box<dyn LetterRestriction + 'a>)>,
}

impl<'a> RestrictionSet<'a> {
    pub fn new() -> Self {
        RestrictionSet { kernels: Vec::new() }
    }

    /// Restrict `letter` (0-based); a later call for the same letter replaces it.
    pub fn restrict(mut self, letter: usize, kernel: impl LetterRestriction + 'a) -> Self {
        self.kernels.retain(|(l, _)| *l != letter);
        self.kernels.push((letter, Box::new(kernel)));
        self
    }

    pub fn restricted(&self) -> impl Iterator<Item = usize> + '_ {
        self.kernels.iter().map(|(l, _)| *l)
    }

    fn kernel(&self, letter: usize) -> Option<&(dyn LetterRestriction + 'a)> {
        self.kernels.iter().find(|(l, _)| *l == letter).map(|(_, k)| k.as_ref())
    }
}

/// Sparse per-letter factor: `(p, c(p))` with `c(p) != 0`.
type Factor = Vec<(usize, SignedExact)>;

fn sparse(values: impl IntoIterator<Item = (usize, SignedExact)>) -> Factor {
    values.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// `S(P) = sum_{p_1+..+p_k = P} multinom(P; p) prod_i c_i(p_i)`, indexed by `P`.
fn convolve(binom: &BinomialTable, factors: &[Factor]) -> Vec<SignedExact> {
    let span: usize = factors.iter().map(|f| f.iter().map(|(p, _)| *p).max().unwrap_or(0)).sum();
    let mut acc = vec![BigInt::zero(); span + 1];
    let Some((first, rest)) = factors.split_first() else {
        acc[0] = BigInt::from(1);
        return acc;
    };
    for (p, v) in first {
        acc[*p] = v.clone();
    }
    let mut reach = first.iter().map(|(p, _)| *p).max().unwrap_or(0);
    for factor in rest {
        let mut next = vec![BigInt::zero(); span + 1];
        for (prefix, s) in acc.iter().enumerate().take(reach + 1) {
            if s.is_zero() {
                continue;
            }
            for (p, c) in factor {
                let binom_ref = binomial_ref(binom, prefix + p, *p);
                next[prefix + p] += s * c * BigInt::from(binom_ref);
            }
        }
        reach += factor.iter().map(|(p, _)| *p).max().unwrap_or(0);
        acc = next;
    }
    acc
}

fn binomial_ref(binom: &BinomialTable, a: usize, b: usize) -> BigUint {
    if a <= binom.max_n() {
        binom.get(a, b).clone()
    } else {
        crate::combinatorics::binomial(a as i64, b as i64).into_parts().1
    }
}

/// `sum_P (-1)^P S(P)`.
fn alternating_total(values: &[SignedExact]) -> SignedExact {
    let mut acc = BigInt::zero();
    for (p, v) in values.iter().enumerate() {
        if p % 2 == 1 {
            acc -= v;
        } else {
            acc += v;
        }
    }
    acc
}

fn into_count(value: SignedExact) -> ExactCount {
    debug_assert!(!value.is_negative(), "arrangement count went negative: {value}");
    value.into_parts().1
}

fn negate_if(value: SignedExact, odd: bool) -> SignedExact {
    if odd {
        -value
    } else {
        value
    }
}

/// Ways to line up `r_i` blocks of each letter `i` with no two blocks of the
/// same letter adjacent: the alternating sum over `1 <= p_i <= r_i` of
/// `(-1)^(sum r_i - p_i) prod C(r_i - 1, p_i - 1) multinom(p)`.
pub fn separator_f(binom: &BinomialTable, runs: &[usize]) -> Result<ExactCount> {
    if runs.is_empty() {
        return Err(Error::EmptyRunVector);
    }
    if runs.contains(&0) {
        return Err(Error::ZeroRuns);
    }
    let factors: Vec<Factor> = runs
        .iter()
        .map(|&r| sparse((1..=r).map(|p| (p, negate_if(binom.signed(r as i64 - 1, p as i64 - 1), (r - p) % 2 == 1)))))
        .collect();
    Ok(into_count(convolve(binom, &factors).into_iter().sum()))
}

/// All `F(r)` for `1 <= r_i <= n_i`, stored row-major over the letters.
struct SeparatorTable {
    dims: Vec<usize>,
    values: Vec<ExactCount>,
}

impl SeparatorTable {
    fn new(binom: &BinomialTable, comp: &Composition) -> Result<Self> {
        let dims = comp.counts().to_vec();
        let mut values = Vec::with_capacity(dims.iter().product());
        for runs in tuples(&dims) {
            values.push(separator_f(binom, &runs)?);
        }
        Ok(SeparatorTable { dims, values })
    }

    fn iter(&self) -> impl Iterator<Item = (Vec<usize>, &ExactCount)> {
        tuples(&self.dims).zip(self.values.iter())
    }
}

/// Every tuple with `1 <= t_i <= dims_i`, last index fastest.
fn tuples(dims: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let mut current: Option<Vec<usize>> = if dims.iter().all(|&d| d >= 1) { Some(vec![1; dims.len()]) } else { None };
    core::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut i = dims.len();
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            if next[i] < dims[i] {
                next[i] += 1;
                current = Some(next);
                break;
            }
            next[i] = 1;
        }
        Some(out)
    })
}

/// Every `a` with `sum a_i = total` over `parts` entries.
fn weak_compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn walk(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 0..=left {
            cur.push(first);
            walk(left - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        walk(total, parts, &mut Vec::new(), &mut out);
    }
    out
}

/// Counting engine for one composition, holding a binomial table large
/// enough for every index its formulas touch.
#[derive(Debug, Clone)]
pub struct Counter {
    comp: Composition,
    binom: BinomialTable,
}

impl Counter {
    pub fn new(comp: Composition) -> Self {
        let binom = BinomialTable::new(comp.total() + 1);
        Counter { comp, binom }
    }

    /// Uses a caller-supplied table; it must cover at least `total + 1` rows.
    pub fn with_table(comp: Composition, binom: BinomialTable) -> Result<Self> {
        if binom.max_n() < comp.total() + 1 {
            return Err(Error::Invalid(alloc::format!(
                "binomial table holds rows up to {}, composition needs {}",
                binom.max_n(),
                comp.total() + 1
            )));
        }
        Ok(Counter { comp, binom })
    }

    pub fn composition(&self) -> &Composition {
        &self.comp
    }

    pub fn binomials(&self) -> &BinomialTable {
        &self.binom
    }

    /// Number of distinct arrangements, `multinom(n; n_1..n_k)`.
    pub fn total_arrangements(&self) -> ExactCount {
        self.binom.multinomial(self.comp.counts())
    }

    /// Restricted count over a subset of letters; unrestricted letters are
    /// summed out in closed form. An empty set gives the multinomial total.
    pub fn assemble_generic(&self, restrictions: &RestrictionSet<'_>) -> Result<ExactCount> {
        for letter in restrictions.restricted() {
            if letter >= self.comp.k() {
                return Err(Error::LetterIndex { letter, k: self.comp.k() });
            }
        }
        let mut factors = Vec::with_capacity(self.comp.k());
        for (letter, &n) in self.comp.counts().iter().enumerate() {
            match restrictions.kernel(letter) {
                Some(kernel) => {
                    let folded = fold_runs(&self.binom, n, |r| kernel.count(&self.binom, n, r))?;
                    factors.push(sparse(folded.into_iter().enumerate().map(|(i, v)| (i + 1, v))));
                }
                None => factors.push(vec![(n, BigInt::from(1))]),
            }
        }
        Ok(into_count(convolve(&self.binom, &factors).into_iter().sum()))
    }

    /// Arrangements with `l_{m_i}^{(i)} <= q_i` for every letter `i`.
    pub fn count_n(&self, spec: &PerLetterSpec) -> Result<ExactCount> {
        spec.check(&self.comp)?;
        let Some(factors) =
            self.collapsed_factors(spec, |binom, n, q, p, m| kernels::collapsed(binom, n, q, p, m, true))?
        else {
            return Ok(BigUint::zero());
        };
        Ok(into_count(alternating_total(&convolve(&self.binom, &factors))))
    }

    /// `(-1)^p`-free per-letter factors `H_{m_i}(n_i, q_i, p)`; `None` if some `q_i = -1`.
    fn collapsed_factors<K>(&self, spec: &PerLetterSpec, kernel: K) -> Result<Option<Vec<Factor>>>
    where
        K: Fn(&BinomialTable, usize, usize, usize, usize) -> SignedExact,
    {
        let mut factors = Vec::with_capacity(self.comp.k());
        for ((&n, &q), &m) in self.comp.counts().iter().zip(spec.q()).zip(spec.m()) {
            let Ok(q) = usize::try_from(q) else { return Ok(None) };
            factors.push(sparse((1..=n).map(|p| (p, kernel(&self.binom, n, q, p, m)))));
        }
        Ok(Some(factors))
    }

    /// Same count as [`Counter::count_n`], summing `F(r) prod h_{m_i}(n_i, q_i, r_i)`
    /// over every run vector. Cubic per letter; kept as a cross-check.
    pub fn count_n_naive(&self, spec: &PerLetterSpec) -> Result<ExactCount> {
        spec.check(&self.comp)?;
        if spec.q().iter().any(|&q| q < 0) {
            return Ok(BigUint::zero());
        }
        let separators = SeparatorTable::new(&self.binom, &self.comp)?;
        let mut total = BigUint::zero();
        'runs: for (runs, f) in separators.iter() {
            if f.is_zero() {
                continue;
            }
            let mut product = f.clone();
            for (i, &r) in runs.iter().enumerate() {
                let h = at_most_exceeding(&self.binom, self.comp.counts()[i], spec.q()[i] as usize, r, spec.m()[i])?;
                if h.is_zero() {
                    continue 'runs;
                }
                product *= h;
            }
            total += product;
        }
        Ok(total)
    }

    /// Arrangements with every `l_{m_i}^{(i)} <= q_i` and at least one equality:
    /// `N(q) - N(q - 1)`.
    pub fn count_l(&self, spec: &PerLetterSpec) -> Result<ExactCount> {
        let upper = self.count_n(spec)?;
        let lower = self.count_n(&spec.lowered()?)?;
        Ok(upper - lower)
    }

    /// Arrangements with `l_{m_i}^{(i)} = q_i` for every letter.
    pub fn count_w_per_letter(&self, spec: &PerLetterSpec) -> Result<ExactCount> {
        spec.check(&self.comp)?;
        if spec.q().iter().any(|&q| q < 0) {
            return Ok(BigUint::zero());
        }
        let mut factors = Vec::with_capacity(self.comp.k());
        for ((&n, &q), &m) in self.comp.counts().iter().zip(spec.q()).zip(spec.m()) {
            let q = q as usize;
            factors.push(sparse((1..=n).map(|p| {
                let upper = kernels::collapsed(&self.binom, n, q, p, m, true);
                // H at q - 1 = -1 is zero: no run has length <= -1
                let lower = if q == 0 { BigInt::zero() } else { kernels::collapsed(&self.binom, n, q - 1, p, m, true) };
                (p, upper - lower)
            })));
        }
        Ok(into_count(alternating_total(&convolve(&self.binom, &factors))))
    }

    /// Arrangements with at least `m + 1` runs of the first letter of length
    /// `q` or more, whatever the other letters do.
    pub fn count_z(&self, q: usize, m: usize) -> Result<ExactCount> {
        if q == 0 {
            return Err(Error::ZeroThreshold);
        }
        let counts = self.comp.counts();
        let n = self.comp.total();
        let first = counts[0];
        let others = n - first;
        let prefactor = self.binom.multinomial(&counts[1..]);
        // Terms past first / q vanish: there 0 <= n - qj < n - n_1.
        let upper = (others + 1).min(n / q).min(first / q);
        let mut acc = BigInt::zero();
        for j in m + 1..=upper {
            let term = self.binom.get(j - 1, m) * self.binom.get(others + 1, j) * self.binom.get(n - q * j, others);
            if (m + j + 1) % 2 == 1 {
                acc -= BigInt::from(term);
            } else {
                acc += BigInt::from(term);
            }
        }
        Ok(into_count(acc) * prefactor)
    }

    /// [`Counter::count_z`] for any letter (0-based) by moving it to the front.
    pub fn count_z_for_letter(&self, letter: usize, q: usize, m: usize) -> Result<ExactCount> {
        if letter == 0 {
            return self.count_z(q, m);
        }
        let permuted = self.comp.with_letter_first(letter)?;
        Counter::with_table(permuted, self.binom.clone())?.count_z(q, m)
    }

    /// Arrangements whose `(m+1)`-th longest run overall is at most `q`.
    pub fn count_q(&self, q: i64, m: usize) -> Result<ExactCount> {
        let n = self.comp.total();
        match q {
            q if q < -1 => Err(Error::BoundTooSmall { q }),
            -1 => Ok(BigUint::zero()),
            // at most n runs exist, so l_m = 0 for m >= n
            _ if m >= n => Ok(self.total_arrangements()),
            0 => {
                // at most m runs in total
                let s = self.run_start_convolution();
                let mut acc = BigInt::zero();
                for (p, v) in s.iter().enumerate() {
                    let c = self.binom.signed(n as i64 - p as i64 - 1, m as i64 - p as i64);
                    acc += negate_if(v * c, p % 2 == 1);
                }
                Ok(into_count(negate_if(acc, m % 2 == 1)))
            }
            q if q as usize >= n => Ok(self.total_arrangements()),
            q => Ok(into_count(self.whole_system_sum(q as usize, m))),
        }
    }

    /// `S(P)` for the factors `C(n_i - 1, p - 1)`, shared by the run-total counts.
    fn run_start_convolution(&self) -> Vec<SignedExact> {
        let factors: Vec<Factor> = self
            .comp
            .counts()
            .iter()
            .map(|&n| sparse((1..=n).map(|p| (p, BigInt::from(self.binom.get(n - 1, p - 1).clone())))))
            .collect();
        convolve(&self.binom, &factors)
    }

    /// Collapsed whole-system sum for `q >= 1`:
    /// `(-1)^(n+m) sum_p (-1)^p multinom(p) sum_{j_i} (-1)^{j(q+1)} C(j-1, m) prod_i A_i(p_i, j_i)`
    /// with `j = sum j_i` and `A_i(p, j) = C(n_i - q j - 1, p - 1) C(p, n_i - q j - j)`.
    ///
    /// `C(j - 1, m)` is split over the letters with Vandermonde's identity,
    /// `C((j_1 - 1) + j_2 + .. + j_k, m) = sum_{a_1+..+a_k=m} C(j_1 - 1, a_1) prod_{i>1} C(j_i, a_i)`,
    /// so each term of the split factorizes per letter and goes through the
    /// same binomial convolution as the per-letter counts.
    fn whole_system_sum(&self, q: usize, m: usize) -> SignedExact {
        let k = self.comp.k();
        let n = self.comp.total();
        // tables[i][a] = sparse factor for letter i at split part a
        let tables: Vec<Vec<Factor>> = self
            .comp
            .counts()
            .iter()
            .enumerate()
            .map(|(i, &n_i)| (0..=m).map(|a| self.split_factor(n_i, q, a, i == 0)).collect())
            .collect();
        let mut acc = BigInt::zero();
        for split in weak_compositions(m, k) {
            let factors: Vec<Factor> = split.iter().enumerate().map(|(i, &a)| tables[i][a].clone()).collect();
            if factors.iter().any(|f| f.is_empty()) {
                continue;
            }
            acc += alternating_total(&convolve(&self.binom, &factors));
        }
        negate_if(acc, (n + m) % 2 == 1)
    }

    /// `G(p) = sum_j (-1)^{j(q+1)} C(j - shift, a) C(n - qj - 1, p - 1) C(p, n - qj - j)`
    /// over `(n-p)/(q+1) <= j <= (n-p)/q`, with `shift = 1` for the first letter.
    fn split_factor(&self, n: usize, q: usize, a: usize, first: bool) -> Factor {
        let mut out = Vec::new();
        for p in 1..=n {
            let gap = n - p;
            let mut acc = BigInt::zero();
            for j in gap.div_ceil(q + 1)..=gap / q {
                let top = if first { j as i64 - 1 } else { j as i64 };
                let Some((rank_negative, rank)) = self.binom.signed_parts(top, a as i64) else { continue };
                let rest = n - q * j;
                if rest < j {
                    continue;
                }
                let term = BigInt::from(&*rank * self.binom.get(rest - 1, p - 1) * self.binom.get(p, rest - j));
                let negative = rank_negative ^ (j * (q + 1) % 2 == 1);
                if negative {
                    acc -= term;
                } else {
                    acc += term;
                }
            }
            if !acc.is_zero() {
                out.push((p, acc));
            }
        }
        out
    }

    /// Same count as [`Counter::count_q`] for `q >= 0`, summing
    /// `F(r) prod hbar_{m_i}(n_i, q, r_i)` over run vectors and over every
    /// split `m_1 + .. + m_k <= m`. Kept as a cross-check.
    pub fn count_q_naive(&self, q: i64, m: usize) -> Result<ExactCount> {
        if q < 0 {
            return Err(Error::BoundTooSmall { q });
        }
        let q = q as usize;
        let separators = SeparatorTable::new(&self.binom, &self.comp)?;
        let mut total = BigUint::zero();
        for (runs, f) in separators.iter() {
            if f.is_zero() {
                continue;
            }
            // poly[s] = sum over splits with sum m_i = s of prod hbar
            let mut poly = vec![BigUint::zero(); m + 1];
            poly[0] = BigUint::from(1u32);
            for (i, &r) in runs.iter().enumerate() {
                let n_i = self.comp.counts()[i];
                let letter: Vec<BigUint> =
                    (0..=m.min(r)).map(|mi| exactly_exceeding(&self.binom, n_i, q, r, mi)).collect::<Result<_>>()?;
                let mut next = vec![BigUint::zero(); m + 1];
                for (s, acc) in poly.iter().enumerate() {
                    if acc.is_zero() {
                        continue;
                    }
                    for (mi, h) in letter.iter().enumerate() {
                        if s + mi <= m && !h.is_zero() {
                            next[s + mi] += acc * h;
                        }
                    }
                }
                poly = next;
            }
            let within: BigUint = poly.into_iter().sum();
            total += f * within;
        }
        Ok(total)
    }

    /// Arrangements whose `(m+1)`-th longest run overall is exactly `q`.
    pub fn count_w_whole(&self, q: i64, m: usize) -> Result<ExactCount> {
        if q < 0 {
            return Err(Error::BoundTooSmall { q });
        }
        Ok(self.count_q(q, m)? - self.count_q(q - 1, m)?)
    }

    /// Arrangements with exactly `r` runs in total.
    pub fn count_t(&self, r: usize) -> ExactCount {
        let n = self.comp.total();
        if r < self.comp.k() || r > n {
            return BigUint::zero();
        }
        let s = self.run_start_convolution();
        let mut acc = BigInt::zero();
        for (p, v) in s.iter().enumerate() {
            let c = self.binom.signed(n as i64 - p as i64, r as i64 - p as i64);
            acc += negate_if(v * c, p % 2 == 1);
        }
        into_count(negate_if(acc, r % 2 == 1))
    }
}
