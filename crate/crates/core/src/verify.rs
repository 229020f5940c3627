//! Oracle-backed verification over every small composition: each closed-form
//! count against exhaustive enumeration, plus the structural identities that
//! tie the counts together.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::assembly::{separator_f, Composition, Counter, PerLetterSpec};
use crate::combinatorics::{binomial, BinomialTable};
use crate::error::Result;
use crate::kernels::{exactly_exceeding, unrestricted};
use crate::oracle::{tally_profiles, RunProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Largest total length `n` to enumerate.
    pub max_total: usize,
    /// Largest number of letter types.
    pub max_k: usize,
    /// Largest run order `m` (per letter and whole system).
    pub max_order: usize,
    /// Enumeration cap per composition.
    pub cap: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { max_total: 10, max_k: 3, max_order: 4, cap: crate::oracle::DEFAULT_CAP }
    }
}

/// Outcome of one named identity across the whole grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: &'static str,
    pub checks: u64,
    pub failures: u64,
    /// First failing case, or the witness for an existence check.
    pub detail: Option<String>,
}

impl IdentityReport {
    fn new(name: &'static str) -> Self {
        IdentityReport { name, checks: 0, failures: 0, detail: None }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checks > 0
    }

    fn record(&mut self, ok: bool, context: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.detail.is_none() {
                self.detail = Some(context());
            }
        }
    }
}

/// Every composition with `1 <= k <= max_k` positive parts summing to at most `max_total`.
pub fn compositions_up_to(max_total: usize, max_k: usize) -> Vec<Composition> {
    fn walk(left: usize, parts_left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if parts_left == 0 {
            return;
        }
        for part in 1..=left {
            cur.push(part);
            walk(left - part, parts_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    walk(max_total, max_k, &mut Vec::new(), &mut raw);
    raw.sort_by(|a, b| (a.iter().sum::<usize>(), a.len(), a).cmp(&(b.iter().sum::<usize>(), b.len(), b)));
    raw.into_iter().filter_map(|c| Composition::new(c).ok()).collect()
}

/// Every vector with `0 <= v_i <= limit_i`.
pub fn grid(limits: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &limit in limits {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=limit).map(move |v| {
                    let mut next = prefix.clone();
                    next.push(v);
                    next
                })
            })
            .collect();
    }
    out
}

struct Suite {
    per_letter_n: IdentityReport,
    per_letter_l: IdentityReport,
    per_letter_w: IdentityReport,
    exceedance_z: IdentityReport,
    whole_q: IdentityReport,
    whole_w: IdentityReport,
    total_runs_t: IdentityReport,
    w_partition: IdentityReport,
    w_whole_partition: IdentityReport,
    zero_bound_runs: IdentityReport,
    bridge: IdentityReport,
    separator_k2: IdentityReport,
    kernel_completeness: IdentityReport,
    naive_n: IdentityReport,
    naive_q: IdentityReport,
    bridge_breaks: IdentityReport,
    counterexample: Option<String>,
}

/// Runs the full suite over every composition the config admits.
pub fn run_suite(config: &VerifyConfig) -> Result<Vec<IdentityReport>> {
    let mut suite = Suite {
        per_letter_n: IdentityReport::new("N matches enumeration"),
        per_letter_l: IdentityReport::new("L matches enumeration"),
        per_letter_w: IdentityReport::new("W (per letter) matches enumeration"),
        exceedance_z: IdentityReport::new("Z matches enumeration"),
        whole_q: IdentityReport::new("Q matches enumeration"),
        whole_w: IdentityReport::new("W (whole system) matches enumeration"),
        total_runs_t: IdentityReport::new("T matches enumeration"),
        w_partition: IdentityReport::new("sum over q of W (per letter) = multinomial"),
        w_whole_partition: IdentityReport::new("sum over q of W (whole system) = multinomial"),
        zero_bound_runs: IdentityReport::new("Q(n; 0; m) = sum_{r<=m} T(r; n)"),
        bridge: IdentityReport::new("N(q,..,q; m=0) = Q(q; 0)"),
        separator_k2: IdentityReport::new("F(r1, r2) = C(2, r1 - r2 + 1)"),
        kernel_completeness: IdentityReport::new("sum over m of hbar_m(n, q, r) = C(n-1, r-1)"),
        naive_n: IdentityReport::new("N collapsed = N via F(r)"),
        naive_q: IdentityReport::new("Q collapsed = Q via F(r)"),
        bridge_breaks: IdentityReport::new("N(q,..,q; m) != Q(q; m) for some m > 0"),
        counterexample: None,
    };

    let table = BinomialTable::new(config.max_total.max(30) + 2);
    for r1 in 1..=30usize {
        for r2 in 1..=30usize {
            let lhs = BigInt::from(separator_f(&table, &[r1, r2])?);
            let rhs = binomial(2, r1 as i64 - r2 as i64 + 1);
            suite.separator_k2.record(lhs == rhs, || format!("r = ({r1}, {r2})"));
        }
    }
    for n in 1..=config.max_total {
        for r in 1..=n {
            for q in 0..=n {
                let sum: BigUint = (0..=r).map(|m| exactly_exceeding(&table, n, q, r, m)).sum::<Result<BigUint>>()?;
                suite.kernel_completeness.record(sum == unrestricted(&table, n, r), || format!("n={n} q={q} r={r}"));
            }
        }
    }

    for comp in compositions_up_to(config.max_total, config.max_k) {
        check_composition(&mut suite, &comp, config)?;
    }
    match suite.counterexample.take() {
        Some(example) => {
            suite.bridge_breaks.record(true, String::new);
            suite.bridge_breaks.detail = Some(format!("witness: {example}"));
        }
        None => suite.bridge_breaks.record(false, || String::from("no composition separates N and Q for m > 0")),
    }

    let Suite {
        per_letter_n,
        per_letter_l,
        per_letter_w,
        exceedance_z,
        whole_q,
        whole_w,
        total_runs_t,
        w_partition,
        w_whole_partition,
        zero_bound_runs,
        bridge,
        separator_k2,
        kernel_completeness,
        naive_n,
        naive_q,
        bridge_breaks,
        ..
    } = suite;
    Ok(vec![
        per_letter_n,
        per_letter_l,
        per_letter_w,
        exceedance_z,
        whole_q,
        whole_w,
        total_runs_t,
        w_partition,
        w_whole_partition,
        zero_bound_runs,
        bridge,
        separator_k2,
        kernel_completeness,
        naive_n,
        naive_q,
        bridge_breaks,
    ])
}

fn check_composition(suite: &mut Suite, comp: &Composition, config: &VerifyConfig) -> Result<()> {
    let counter = Counter::new(comp.clone());
    let tally: Vec<(RunProfile, u64)> = tally_profiles(comp, config.cap)?.into_iter().collect();
    let total = counter.total_arrangements();
    let k = comp.k();
    let n = comp.total();
    let label = |extra: String| format!("n={:?} {extra}", comp.counts());

    // per-letter: histogram of (l_{m_1}^(1), .., l_{m_k}^(k)) for each m-vector
    let m_limits = vec![config.max_order; k];
    let q_limits: Vec<usize> = comp.counts().to_vec();
    let q_vectors = grid(&q_limits);
    for m_vec in grid(&m_limits) {
        let mut histogram: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
        for (profile, weight) in &tally {
            let key: Vec<usize> = m_vec.iter().enumerate().map(|(i, &m)| profile.letter_order(i, m)).collect();
            *histogram.entry(key).or_insert(0) += weight;
        }
        let mut w_sum = BigUint::zero();
        for q_vec in &q_vectors {
            let (mut within, mut some_at, mut all_at) = (0u64, 0u64, 0u64);
            for (key, &weight) in &histogram {
                if key.iter().zip(q_vec).all(|(l, q)| l <= q) {
                    within += weight;
                    if key.iter().zip(q_vec).any(|(l, q)| l == q) {
                        some_at += weight;
                    }
                    if key == q_vec {
                        all_at += weight;
                    }
                }
            }
            let spec = PerLetterSpec::new(m_vec.clone(), q_vec.iter().map(|&q| q as i64).collect())?;
            let ctx = || label(format!("m={m_vec:?} q={q_vec:?}"));
            suite.per_letter_n.record(counter.count_n(&spec)? == BigUint::from(within), ctx);
            suite.per_letter_l.record(counter.count_l(&spec)? == BigUint::from(some_at), ctx);
            let w = counter.count_w_per_letter(&spec)?;
            suite.per_letter_w.record(w == BigUint::from(all_at), ctx);
            w_sum += w;
        }
        suite.w_partition.record(w_sum == total, || label(format!("m={m_vec:?}")));
    }

    for letter in 0..k {
        for q in 1..=comp.counts()[letter] + 1 {
            for m in 0..=config.max_order {
                let expected: u64 = tally.iter().filter(|(p, _)| p.runs_at_least(letter, q) > m).map(|(_, w)| w).sum();
                let got = counter.count_z_for_letter(letter, q, m)?;
                suite
                    .exceedance_z
                    .record(got == BigUint::from(expected), || label(format!("letter={letter} q={q} m={m}")));
            }
        }
    }

    for m in 0..=config.max_order {
        let mut w_sum = BigUint::zero();
        for q in -1..=n as i64 {
            let within: u64 = tally.iter().filter(|(p, _)| p.whole_order(m) as i64 <= q).map(|(_, w)| w).sum();
            let ctx = || label(format!("q={q} m={m}"));
            suite.whole_q.record(counter.count_q(q, m)? == BigUint::from(within), ctx);
            if q >= 0 {
                let at: u64 = tally.iter().filter(|(p, _)| p.whole_order(m) as i64 == q).map(|(_, w)| w).sum();
                let w = counter.count_w_whole(q, m)?;
                suite.whole_w.record(w == BigUint::from(at), ctx);
                w_sum += w;
            }
        }
        suite.w_whole_partition.record(w_sum == total, || label(format!("m={m}")));
    }

    let mut running = BigUint::zero();
    for r in 0..=n + 1 {
        let expected: u64 = tally.iter().filter(|(p, _)| p.total_runs == r).map(|(_, w)| w).sum();
        let t = counter.count_t(r);
        suite.total_runs_t.record(t == BigUint::from(expected), || label(format!("r={r}")));
        running += t;
        suite.zero_bound_runs.record(counter.count_q(0, r)? == running, || label(format!("m={r}")));
    }

    for q in 0..=n as i64 {
        let uniform = PerLetterSpec::uniform(k, 0, q)?;
        suite.bridge.record(counter.count_n(&uniform)? == counter.count_q(q, 0)?, || label(format!("q={q}")));
        for m in 0..=config.max_order.min(3) {
            let spec = PerLetterSpec::uniform(k, m, q)?;
            let n_count = counter.count_n(&spec)?;
            suite.naive_n.record(n_count == counter.count_n_naive(&spec)?, || label(format!("q={q} m={m}")));
            let q_count = counter.count_q(q, m)?;
            suite.naive_q.record(q_count == counter.count_q_naive(q, m)?, || label(format!("q={q} m={m}")));
            if m > 0 && n_count != q_count && suite.counterexample.is_none() {
                suite.counterexample = Some(label(format!("q={q} m={m}: N={n_count} Q={q_count}")));
            }
        }
    }
    Ok(())
}
