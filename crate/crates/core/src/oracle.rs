//! Ground truth by brute force: every distinct arrangement of a small
//! composition, or seeded uniform samples of a larger one.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::assembly::Composition;
use crate::combinatorics::multinomial;
use crate::error::{Error, Result};

/// Default ceiling on the number of arrangements an enumeration may visit.
pub const DEFAULT_CAP: u64 = 2_000_000;

/// Sorted run lengths of one arrangement.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RunProfile {
    /// For each letter, its run lengths in descending order.
    pub per_letter: Vec<Vec<usize>>,
    /// All run lengths in descending order.
    pub whole: Vec<usize>,
    pub total_runs: usize,
}

impl RunProfile {
    /// Profile of a sequence of 0-based letter symbols drawn from `k` letters.
    pub fn from_symbols(symbols: &[usize], k: usize) -> Self {
        let mut per_letter = vec![Vec::new(); k];
        let mut whole = Vec::new();
        let mut i = 0;
        while i < symbols.len() {
            let letter = symbols[i];
            let start = i;
            while i < symbols.len() && symbols[i] == letter {
                i += 1;
            }
            per_letter[letter].push(i - start);
            whole.push(i - start);
        }
        for runs in &mut per_letter {
            runs.sort_unstable_by(|a, b| b.cmp(a));
        }
        whole.sort_unstable_by(|a, b| b.cmp(a));
        let total_runs = whole.len();
        RunProfile { per_letter, whole, total_runs }
    }

    /// `l_m^{(letter)}`: the `(m+1)`-th longest run of `letter`, 0 if absent.
    pub fn letter_order(&self, letter: usize, m: usize) -> usize {
        self.per_letter[letter].get(m).copied().unwrap_or(0)
    }

    /// `l_m`: the `(m+1)`-th longest run overall, 0 if absent.
    pub fn whole_order(&self, m: usize) -> usize {
        self.whole.get(m).copied().unwrap_or(0)
    }

    /// Number of runs of `letter` with length at least `q`.
    pub fn runs_at_least(&self, letter: usize, q: usize) -> usize {
        self.per_letter[letter].iter().take_while(|&&len| len >= q).count()
    }

    /// Checks the structural invariants against the composition it came from.
    pub fn is_consistent_with(&self, comp: &Composition) -> bool {
        if self.per_letter.len() != comp.k() {
            return false;
        }
        let sums_match = self.per_letter.iter().zip(comp.counts()).all(|(runs, &n)| runs.iter().sum::<usize>() == n);
        let descending = |v: &[usize]| v.windows(2).all(|w| w[0] >= w[1]);
        let mut merged: Vec<usize> = self.per_letter.iter().flatten().copied().collect();
        merged.sort_unstable_by(|a, b| b.cmp(a));
        sums_match
            && self.per_letter.iter().all(|runs| descending(runs) && runs.iter().all(|&len| len > 0))
            && merged == self.whole
            && self.total_runs == self.whole.len()
            && self.total_runs > 0
    }
}

/// Events whose counts the closed forms compute; letters are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunEvent {
    /// Every letter has `l_{m_i}^{(i)} <= q_i`.
    AllWithin { m: Vec<usize>, q: Vec<i64> },
    /// Every letter within its bound and at least one exactly at it.
    WithinSomeAt { m: Vec<usize>, q: Vec<i64> },
    /// Every letter has `l_{m_i}^{(i)} = q_i`.
    AllAt { m: Vec<usize>, q: Vec<i64> },
    /// At least `m + 1` runs of `letter` with length `q` or more.
    LongRuns { letter: usize, q: usize, m: usize },
    /// Overall `l_m <= q`.
    WholeWithin { m: usize, q: i64 },
    /// Overall `l_m = q`.
    WholeAt { m: usize, q: i64 },
    /// Exactly `r` runs in total.
    TotalRuns { r: usize },
}

impl RunEvent {
    pub fn holds(&self, profile: &RunProfile) -> bool {
        let order = |letter: usize, m: usize| profile.letter_order(letter, m) as i64;
        match self {
            RunEvent::AllWithin { m, q } => m.iter().zip(q).enumerate().all(|(i, (&m, &q))| order(i, m) <= q),
            RunEvent::WithinSomeAt { m, q } => {
                let within = m.iter().zip(q).enumerate().all(|(i, (&m, &q))| order(i, m) <= q);
                within && m.iter().zip(q).enumerate().any(|(i, (&m, &q))| order(i, m) == q)
            }
            RunEvent::AllAt { m, q } => m.iter().zip(q).enumerate().all(|(i, (&m, &q))| order(i, m) == q),
            RunEvent::LongRuns { letter, q, m } => profile.runs_at_least(*letter, *q) > *m,
            RunEvent::WholeWithin { m, q } => (profile.whole_order(*m) as i64) <= *q,
            RunEvent::WholeAt { m, q } => profile.whole_order(*m) as i64 == *q,
            RunEvent::TotalRuns { r } => profile.total_runs == *r,
        }
    }
}

/// Distinct arrangements of a multiset in lexicographic order.
#[derive(Debug, Clone)]
pub struct Arrangements {
    current: Option<Vec<usize>>,
}

impl Arrangements {
    pub fn new(comp: &Composition) -> Self {
        let symbols =
            comp.counts().iter().enumerate().flat_map(|(letter, &n)| core::iter::repeat_n(letter, n)).collect();
        Arrangements { current: Some(symbols) }
    }
}

impl Iterator for Arrangements {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        if next_permutation(&mut next) {
            self.current = Some(next);
        }
        Some(out)
    }
}

/// Advances to the next lexicographic permutation; false at the last one.
fn next_permutation(items: &mut [usize]) -> bool {
    if items.len() < 2 {
        return false;
    }
    let mut i = items.len() - 1;
    while i > 0 && items[i - 1] >= items[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = items.len() - 1;
    while items[j] <= items[i - 1] {
        j -= 1;
    }
    items.swap(i - 1, j);
    items[i..].reverse();
    true
}

fn check_cap(comp: &Composition, cap: u64) -> Result<()> {
    let count = multinomial(comp.counts());
    if count.to_u64().is_none_or(|c| c > cap) {
        return Err(Error::CapExceeded { count, cap });
    }
    Ok(())
}

/// Profiles of every distinct arrangement, refusing when there are more than `cap`.
pub fn enumerate_profiles(comp: &Composition, cap: u64) -> Result<impl Iterator<Item = RunProfile>> {
    check_cap(comp, cap)?;
    let k = comp.k();
    Ok(Arrangements::new(comp).map(move |symbols| RunProfile::from_symbols(&symbols, k)))
}

/// Number of arrangements whose profile satisfies `predicate`.
pub fn oracle_count<P>(comp: &Composition, cap: u64, mut predicate: P) -> Result<BigUint>
where
    P: FnMut(&RunProfile) -> bool,
{
    let hits = enumerate_profiles(comp, cap)?.filter(|profile| predicate(profile)).count();
    Ok(BigUint::from(hits))
}

/// Distinct profiles with their multiplicities.
pub fn tally_profiles(comp: &Composition, cap: u64) -> Result<BTreeMap<RunProfile, u64>> {
    let mut tally = BTreeMap::new();
    for profile in enumerate_profiles(comp, cap)? {
        *tally.entry(profile).or_insert(0) += 1;
    }
    Ok(tally)
}

/// Seeded stream of uniformly random arrangements.
///
/// Uses ChaCha8 seeded through `SeedableRng::seed_from_u64`, and an in-place
/// Fisher-Yates shuffle with Lemire's unbiased bounded draw, so the stream is
/// identical on every platform for a given seed.
#[derive(Debug, Clone)]
pub struct ProfileSampler {
    rng: ChaCha8Rng,
    symbols: Vec<usize>,
    k: usize,
    remaining: u64,
}

impl ProfileSampler {
    pub fn new(comp: &Composition, count: u64, seed: u64) -> Self {
        let symbols =
            comp.counts().iter().enumerate().flat_map(|(letter, &n)| core::iter::repeat_n(letter, n)).collect();
        ProfileSampler { rng: ChaCha8Rng::seed_from_u64(seed), symbols, k: comp.k(), remaining: count }
    }

    /// Uniform integer in `0..range`, `range > 0`.
    fn bounded(&mut self, range: u64) -> u64 {
        let mut product = u128::from(self.rng.next_u64()) * u128::from(range);
        let mut low = product as u64;
        if low < range {
            let threshold = range.wrapping_neg() % range;
            while low < threshold {
                product = u128::from(self.rng.next_u64()) * u128::from(range);
                low = product as u64;
            }
        }
        (product >> 64) as u64
    }

    /// Shuffles and returns the next arrangement.
    pub fn next_arrangement(&mut self) -> &[usize] {
        for i in (1..self.symbols.len()).rev() {
            let j = self.bounded(i as u64 + 1) as usize;
            self.symbols.swap(i, j);
        }
        &self.symbols
    }
}

impl Iterator for ProfileSampler {
    type Item = RunProfile;

    fn next(&mut self) -> Option<RunProfile> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let k = self.k;
        Some(RunProfile::from_symbols(self.next_arrangement(), k))
    }
}

/// `count` uniform i.i.d. profiles, deterministic in `seed`.
pub fn sample_profiles(comp: &Composition, count: u64, seed: u64) -> Result<ProfileSampler> {
    if count == 0 {
        return Err(Error::Invalid(alloc::string::String::from("sample count must be at least 1")));
    }
    Ok(ProfileSampler::new(comp, count, seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(counts: &[usize]) -> Composition {
        Composition::new(counts.to_vec()).unwrap()
    }

    #[test]
    fn worked_example_profile() {
        // 111 | 2 | 111 | 333 | 444444 | 33 | 11111
        let text = ["111", "2", "111", "333", "444444", "33", "11111"].concat();
        let symbols: Vec<usize> = text.bytes().map(|b| (b - b'1') as usize).collect();
        let profile = RunProfile::from_symbols(&symbols, 4);
        assert_eq!(profile.letter_order(0, 0), 5);
        assert_eq!(profile.letter_order(0, 1), 3);
        assert_eq!(profile.letter_order(0, 2), 3);
        assert_eq!(profile.letter_order(1, 0), 1);
        assert_eq!(profile.letter_order(2, 0), 3);
        assert_eq!(profile.letter_order(2, 1), 2);
        assert_eq!(profile.letter_order(3, 0), 6);
        assert_eq!(profile.letter_order(3, 1), 0);
        assert_eq!(profile.whole, vec![6, 5, 3, 3, 3, 2, 1]);
        assert_eq!(profile.whole_order(0), 6);
        assert_eq!(profile.whole_order(1), 5);
        assert_eq!(profile.whole_order(5), 2);
        assert_eq!(profile.whole_order(6), 1);
        assert_eq!(profile.whole_order(7), 0);
        assert_eq!(profile.total_runs, 7);
        assert!(profile.is_consistent_with(&comp(&[11, 1, 5, 6])));
        assert!(!profile.is_consistent_with(&comp(&[10, 1, 5, 6])));
    }

    #[test]
    fn enumeration_counts() {
        let profiles: Vec<_> = enumerate_profiles(&comp(&[2, 2]), DEFAULT_CAP).unwrap().collect();
        assert_eq!(profiles.len(), 6);
        let profiles: Vec<_> = enumerate_profiles(&comp(&[1, 1, 1]), DEFAULT_CAP).unwrap().collect();
        assert_eq!(profiles.len(), 6);
        assert!(profiles.iter().all(|p| p.whole == vec![1, 1, 1]));
        for counts in [&[3usize, 2, 2][..], &[4, 1], &[1, 2, 3, 1], &[5]] {
            let c = comp(counts);
            let seen: Vec<Vec<usize>> = Arrangements::new(&c).collect();
            assert_eq!(BigUint::from(seen.len()), multinomial(counts));
            assert!(seen.windows(2).all(|w| w[0] < w[1]), "strictly increasing, so duplicate-free");
            let all_consistent = enumerate_profiles(&c, DEFAULT_CAP).unwrap().all(|p| p.is_consistent_with(&c));
            assert!(all_consistent);
        }
    }

    #[test]
    fn cap_refusal_reports_count() {
        let err = enumerate_profiles(&comp(&[10, 10]), 1000).err().unwrap();
        assert_eq!(err, Error::CapExceeded { count: BigUint::from(184_756u32), cap: 1000 });
    }

    #[test]
    fn predicate_counts() {
        let c = comp(&[2, 2]);
        assert_eq!(oracle_count(&c, DEFAULT_CAP, |p| p.whole_order(0) <= 1).unwrap(), BigUint::from(2u32));
        assert_eq!(
            oracle_count(&c, DEFAULT_CAP, |p| RunEvent::TotalRuns { r: 3 }.holds(p)).unwrap(),
            BigUint::from(2u32)
        );
        let wide = RunEvent::AllWithin { m: vec![0, 0], q: vec![2, 9] };
        assert_eq!(oracle_count(&c, DEFAULT_CAP, |p| wide.holds(p)).unwrap(), BigUint::from(6u32));
        let tally = tally_profiles(&c, DEFAULT_CAP).unwrap();
        assert_eq!(tally.values().sum::<u64>(), 6);
    }

    #[test]
    fn sampler_is_deterministic() {
        let c = comp(&[5, 4, 3]);
        let a: Vec<_> = sample_profiles(&c, 50, 7).unwrap().collect();
        let b: Vec<_> = sample_profiles(&c, 50, 7).unwrap().collect();
        let other: Vec<_> = sample_profiles(&c, 50, 8).unwrap().collect();
        assert_eq!(a, b);
        assert_ne!(a, other);
        assert_eq!(sample_profiles(&c, 1, 3).unwrap().count(), 1);
        assert!(sample_profiles(&c, 0, 3).is_err());
        assert!(a.iter().all(|p| p.is_consistent_with(&c)));
    }

    #[test]
    fn sampler_is_roughly_uniform() {
        // 6 arrangements of AABB, each should appear ~1/6 of the time
        let c = comp(&[2, 2]);
        let mut sampler = ProfileSampler::new(&c, 0, 11);
        let mut seen = BTreeMap::new();
        let draws = 60_000;
        for _ in 0..draws {
            *seen.entry(sampler.next_arrangement().to_vec()).or_insert(0u32) += 1;
        }
        assert_eq!(seen.len(), 6);
        for &hits in seen.values() {
            let expected = draws as f64 / 6.0;
            assert!((hits as f64 - expected).abs() < 5.0 * (expected * 5.0 / 6.0).sqrt());
        }
    }
}
