//! Degree-profile enumeration for the (p, q)-restricted search.
//!
//! Profiles are enumerated up to vertex relabeling (every quantity checked
//! is relabeling-invariant): vertices are laid out as p slots with `s = 0`,
//! then q slots with `t = 0`, then the rest, with z sorted within the
//! first two segments and `(z, s)` sorted within the third. A profile is
//! admissible when `sum(z) = 2(n-3)`, every `z <= n-3`, the per-vertex
//! identity holds, and `sum(s)` (hence `sum(t)`) is even.
//!
//! Work shards over prefixes (the z values of the P and Q slots). After a
//! full z vector is fixed, the violation condition decomposes per slot:
//! with `c = n-1-z`, a slot's s choice contributes `s*(c-z) - s^2` to
//! `i_st - i_zs` and `s*(c+z) - s^2 - z*c` to `i_st - i_zt`, both concave
//! in s. Summed per-slot minima therefore lower-bound either difference
//! over a whole subtree; once a bound is nonnegative no violation can
//! exist below, and the subtree's admissible profiles are added to the
//! counter in bulk by a small parity-aware counting DP instead of being
//! walked one by one. A violating profile counts as a finding only if
//! [`crate::realize::realize_profile`] certifies it with a witness
//! partition.

use crate::error::{Error, Result};
use crate::incidence::check_incidence_bound;
use crate::kn::DegreeProfile;
use crate::realize::realize_profile;

use super::{Accum, ViolationRecord};

#[derive(Clone, Debug)]
pub(crate) struct Prefix {
    zp: Vec<i64>,
    zq: Vec<i64>,
}

pub(crate) struct ProfileJob {
    pub n: usize,
    pub realize_all: bool,
    pub prefixes: Vec<Prefix>,
}

impl ProfileJob {
    pub fn new(n: usize, p: usize, q: usize, realize_all: bool) -> Self {
        ProfileJob {
            n,
            realize_all,
            prefixes: build_prefixes(n, p, q),
        }
    }
}

/// Non-decreasing tuples of `len` values from `0..=cap` with sum at most
/// `max_sum`, lexicographically ordered, paired with their sums.
fn sorted_tuples(len: usize, cap: i64, max_sum: i64) -> Vec<(Vec<i64>, i64)> {
    fn walk(
        len: usize,
        min_val: i64,
        cap: i64,
        budget: i64,
        current: &mut Vec<i64>,
        out: &mut Vec<(Vec<i64>, i64)>,
        used: i64,
    ) {
        if current.len() == len {
            out.push((current.clone(), used));
            return;
        }
        for v in min_val..=cap.min(budget) {
            current.push(v);
            walk(len, v, cap, budget - v, current, out, used + v);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if max_sum >= 0 {
        walk(len, 0, cap, max_sum, &mut Vec::new(), &mut out, 0);
    }
    out
}

/// All (sorted zp, sorted zq) pairs that leave a distributable remainder
/// for the R slots, in lexicographic order.
fn build_prefixes(n: usize, p: usize, q: usize) -> Vec<Prefix> {
    let zcap = n as i64 - 3;
    let target = 2 * (n as i64 - 3);
    let r = (n - p - q) as i64;
    let mut prefixes = Vec::new();
    for (zp, used_p) in sorted_tuples(p, zcap, target) {
        for (zq, used_q) in sorted_tuples(q, zcap, target - used_p) {
            let rem = target - used_p - used_q;
            if rem <= r * zcap {
                prefixes.push(Prefix { zp: zp.clone(), zq });
            }
        }
    }
    prefixes
}

pub(crate) fn process_range(job: &ProfileJob, start: u128, end: u128) -> Accum {
    let mut accum = Accum::default();
    if job.realize_all {
        accum.realizable_profiles = Some(0);
    }
    let mut explorer = Explorer::new(job.n, job.realize_all, None);
    for prefix in &job.prefixes[start as usize..end as usize] {
        explorer.explore_prefix(prefix, &mut accum);
    }
    accum
}

/// Visit every admissible profile for (n, p, q) in enumeration order.
/// This walks the full space with no pruning; meant for small n, where it
/// doubles as the oracle the pruned search is tested against.
pub fn for_each_profile<F: FnMut(&DegreeProfile)>(
    n: usize,
    p: usize,
    q: usize,
    mut visit: F,
) -> Result<()> {
    if p + q > n {
        return Err(Error::Domain(format!("p + q = {} exceeds n = {n}", p + q)));
    }
    let job = ProfileJob::new(n, p, q, false);
    let mut accum = Accum::default();
    let mut explorer = Explorer::new(n, false, Some(&mut visit));
    for prefix in &job.prefixes {
        explorer.explore_prefix(prefix, &mut accum);
    }
    Ok(())
}

struct Run {
    zv: i64,
    len: usize,
    /// `n - 1 - zv`; s ranges over `1..=c-1`.
    c: i64,
    min_f: i64,
    min_g: i64,
    min_h: i64,
}

struct Explorer<'v> {
    n: usize,
    n1: i64,
    zcap: i64,
    r: usize,
    realize_all: bool,
    visitor: Option<&'v mut dyn FnMut(&DegreeProfile)>,
    // Per-prefix state.
    base_d1: i64,
    base_d2: i64,
    needed_parity: u8,
    zp: Vec<i64>,
    zq: Vec<i64>,
    // Per-z-vector state (reused buffers).
    zr: Vec<i64>,
    runs: Vec<Run>,
    suffix_min_f: Vec<i64>,
    suffix_min_g: Vec<i64>,
    suffix_min_h: Vec<i64>,
    suffix_pairs: Vec<[u64; 2]>,
    s_choices: Vec<i64>,
    /// Memoized [`count_sorted_parity`] keyed by (len, lo, hi).
    count_memo: Vec<Option<[u64; 2]>>,
    memo_dim: usize,
}

impl<'v> Explorer<'v> {
    fn new(
        n: usize,
        realize_all: bool,
        visitor: Option<&'v mut dyn FnMut(&DegreeProfile)>,
    ) -> Self {
        let memo_dim = n + 1;
        Explorer {
            n,
            n1: n as i64 - 1,
            zcap: n as i64 - 3,
            r: 0,
            realize_all,
            visitor,
            base_d1: 0,
            base_d2: 0,
            needed_parity: 0,
            zp: Vec::new(),
            zq: Vec::new(),
            zr: Vec::new(),
            runs: Vec::new(),
            suffix_min_f: Vec::new(),
            suffix_min_g: Vec::new(),
            suffix_min_h: Vec::new(),
            suffix_pairs: Vec::new(),
            s_choices: Vec::new(),
            count_memo: vec![None; memo_dim * memo_dim * memo_dim],
            memo_dim,
        }
    }

    fn counts(&mut self, len: usize, lo: i64, hi: i64) -> [u64; 2] {
        if len == 0 {
            return [1, 0];
        }
        if lo > hi {
            return [0, 0];
        }
        let idx = (len * self.memo_dim + lo as usize) * self.memo_dim + hi as usize;
        if let Some(cached) = self.count_memo[idx] {
            return cached;
        }
        let computed = count_sorted_parity(len, lo, hi);
        self.count_memo[idx] = Some(computed);
        computed
    }

    fn pruning(&self) -> bool {
        !self.realize_all && self.visitor.is_none()
    }

    fn explore_prefix(&mut self, prefix: &Prefix, accum: &mut Accum) {
        self.zp = prefix.zp.clone();
        self.zq = prefix.zq.clone();
        self.r = self.n - self.zp.len() - self.zq.len();

        // Fixed contributions: a P slot (s = 0) adds -z*c to d2 only;
        // a Q slot (s = c) adds -z*c to d1 only and c to the s sum.
        self.base_d1 = self.zq.iter().map(|&z| -z * (self.n1 - z)).sum();
        self.base_d2 = self.zp.iter().map(|&z| -z * (self.n1 - z)).sum();
        self.needed_parity = (self.zq.iter().map(|&z| self.n1 - z).sum::<i64>() & 1) as u8;

        let used: i64 = self.zp.iter().sum::<i64>() + self.zq.iter().sum::<i64>();
        let rem = 2 * (self.n as i64 - 3) - used;
        self.zr.clear();
        self.descend_z(0, 0, rem, accum);
    }

    /// Choose z values for the R slots, non-decreasing, summing to `rem`.
    fn descend_z(&mut self, idx: usize, min_val: i64, rem: i64, accum: &mut Accum) {
        if idx == self.r {
            if rem == 0 {
                self.stage_s(accum);
            }
            return;
        }
        let slots_after = (self.r - idx - 1) as i64;
        for v in min_val..=self.zcap {
            let rest = rem - v;
            if rest < slots_after * v {
                break; // later slots must each carry at least v
            }
            if rest > slots_after * self.zcap {
                continue;
            }
            self.zr.push(v);
            self.descend_z(idx + 1, v, rest, accum);
            self.zr.pop();
        }
    }

    fn stage_s(&mut self, accum: &mut Accum) {
        // Group equal z values of R into runs and precompute bounds.
        self.runs.clear();
        let mut i = 0;
        while i < self.zr.len() {
            let zv = self.zr[i];
            let mut len = 1;
            while i + len < self.zr.len() && self.zr[i + len] == zv {
                len += 1;
            }
            let c = self.n1 - zv;
            let w = c - 1;
            let min_f = slot_f(1, c, zv).min(slot_f(w, c, zv));
            let min_g = slot_g(1, c, zv).min(slot_g(w, c, zv));
            let min_h = slot_h(1, c, zv).min(slot_h(w, c, zv));
            self.runs.push(Run {
                zv,
                len,
                c,
                min_f,
                min_g,
                min_h,
            });
            i += len;
        }

        let k = self.runs.len();
        self.suffix_min_f.clear();
        self.suffix_min_f.resize(k + 1, 0);
        self.suffix_min_g.clear();
        self.suffix_min_g.resize(k + 1, 0);
        self.suffix_min_h.clear();
        self.suffix_min_h.resize(k + 1, 0);
        self.suffix_pairs.clear();
        self.suffix_pairs.resize(k + 1, [1, 0]);
        for j in (0..k).rev() {
            let len = self.runs[j].len;
            self.suffix_min_f[j] = self.suffix_min_f[j + 1] + len as i64 * self.runs[j].min_f;
            self.suffix_min_g[j] = self.suffix_min_g[j + 1] + len as i64 * self.runs[j].min_g;
            self.suffix_min_h[j] = self.suffix_min_h[j + 1] + len as i64 * self.runs[j].min_h;
            let full = self.counts(len, 1, self.runs[j].c - 1);
            self.suffix_pairs[j] = convolve(full, self.suffix_pairs[j + 1]);
        }

        self.s_choices.clear();
        self.descend_s(0, 0, 1, self.base_d1, self.base_d2, 0, accum);
    }

    #[allow(clippy::too_many_arguments)]
    fn descend_s(
        &mut self,
        run_idx: usize,
        pos: usize,
        lo: i64,
        d1: i64,
        d2: i64,
        parity: u8,
        accum: &mut Accum,
    ) {
        if run_idx == self.runs.len() {
            self.leaf(d1, d2, parity, accum);
            return;
        }
        let run = &self.runs[run_idx];
        let (zv, c, len) = (run.zv, run.c, run.len);
        let w = c - 1;

        if self.pruning() {
            // Lower-bound the two differences and their sum over every
            // completion; a violation needs both differences negative, so a
            // nonnegative bound on either (or on the sum, which fixes
            // `i_zs + i_zt` once z is chosen) proves the subtree clean and
            // its admissible profiles are counted wholesale.
            let rest_here = (len - pos) as i64;
            let f_here = slot_f(lo, c, zv).min(slot_f(w, c, zv));
            let bound_f = d1 + rest_here * f_here + self.suffix_min_f[run_idx + 1];
            if bound_f >= 0 {
                accum.profiles_checked += self.count_completions(run_idx, pos, lo, parity);
                return;
            }
            let g_here = slot_g(lo, c, zv).min(slot_g(w, c, zv));
            let bound_g = d2 + rest_here * g_here + self.suffix_min_g[run_idx + 1];
            if bound_g >= 0 {
                accum.profiles_checked += self.count_completions(run_idx, pos, lo, parity);
                return;
            }
            let h_here = slot_h(lo, c, zv).min(slot_h(w, c, zv));
            let bound_h = d1 + d2 + rest_here * h_here + self.suffix_min_h[run_idx + 1];
            if bound_h >= 0 {
                accum.profiles_checked += self.count_completions(run_idx, pos, lo, parity);
                return;
            }
        }

        let (next_run, next_pos) = if pos + 1 == len {
            (run_idx + 1, 0)
        } else {
            (run_idx, pos + 1)
        };
        for s in lo..=w {
            let nd1 = d1 + slot_f(s, c, zv);
            let nd2 = d2 + slot_g(s, c, zv);
            let np = parity ^ (s & 1) as u8;
            let next_lo = if next_pos == 0 { 1 } else { s };
            self.s_choices.push(s);
            self.descend_s(next_run, next_pos, next_lo, nd1, nd2, np, accum);
            self.s_choices.pop();
        }
    }

    fn count_completions(&mut self, run_idx: usize, pos: usize, lo: i64, parity: u8) -> u64 {
        let (len, c) = (self.runs[run_idx].len, self.runs[run_idx].c);
        let here = self.counts(len - pos, lo, c - 1);
        let combined = convolve(here, self.suffix_pairs[run_idx + 1]);
        combined[(self.needed_parity ^ parity) as usize]
    }

    fn leaf(&mut self, d1: i64, d2: i64, parity: u8, accum: &mut Accum) {
        if parity != self.needed_parity {
            return;
        }
        accum.profiles_checked += 1;

        let mut profile = None;
        if self.visitor.is_some() || self.realize_all || (d1 < 0 && d2 < 0) {
            profile = Some(self.materialize());
        }
        if let Some(v) = self.visitor.as_deref_mut() {
            v(profile.as_ref().unwrap());
        }
        if self.realize_all {
            let realization = realize_profile(profile.as_ref().unwrap()).expect("valid profile");
            if realization.is_realizable() {
                *accum.realizable_profiles.get_or_insert(0) += 1;
            }
        }
        if d1 < 0 && d2 < 0 {
            accum.relaxation_violations += 1;
            let realization = realize_profile(profile.as_ref().unwrap()).expect("valid profile");
            if let Some(witness) = realization.witness_partition() {
                let report = check_incidence_bound(witness).expect("witness is theorem mode");
                debug_assert!(!report.bound_holds);
                accum.realizable_violations += 1;
                accum.violations.push(ViolationRecord {
                    partition: witness.to_line(),
                });
            }
        }
    }

    fn materialize(&self) -> DegreeProfile {
        let mut s = Vec::with_capacity(self.n);
        let mut z = Vec::with_capacity(self.n);
        for &zv in &self.zp {
            s.push(0);
            z.push(zv);
        }
        for &zv in &self.zq {
            s.push(self.n1 - zv);
            z.push(zv);
        }
        for (slot, &zv) in self.zr.iter().enumerate() {
            s.push(self.s_choices[slot]);
            z.push(zv);
        }
        DegreeProfile::from_sz(self.n, s, z).expect("constructed within bounds")
    }
}

/// Contribution of one slot to `i_st - i_zs`.
#[inline]
fn slot_f(s: i64, c: i64, z: i64) -> i64 {
    s * (c - z) - s * s
}

/// Contribution of one slot to `i_st - i_zt`.
#[inline]
fn slot_g(s: i64, c: i64, z: i64) -> i64 {
    s * (c + z) - s * s - z * c
}

/// Contribution of one slot to `2*i_st - i_zs - i_zt` (the sum of the two
/// differences; `i_zs + i_zt` is a constant of the z vector).
#[inline]
fn slot_h(s: i64, c: i64, z: i64) -> i64 {
    2 * s * (c - s) - z * c
}

/// Number of non-decreasing sequences of `len` values from `lo..=hi`,
/// split by sum parity `[even, odd]`.
fn count_sorted_parity(len: usize, lo: i64, hi: i64) -> [u64; 2] {
    if len == 0 {
        return [1, 0];
    }
    if lo > hi {
        return [0, 0];
    }
    let mut dp = vec![[0u64; 2]; len + 1];
    dp[0][0] = 1;
    for v in lo..=hi {
        let pv = (v & 1) as usize;
        for j in 1..=len {
            let inherit = dp[j - 1];
            dp[j][0] += inherit[pv];
            dp[j][1] += inherit[1 - pv];
        }
    }
    dp[len]
}

fn convolve(a: [u64; 2], b: [u64; 2]) -> [u64; 2] {
    [a[0] * b[0] + a[1] * b[1], a[0] * b[1] + a[1] * b[0]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_parity_counts_match_brute_force() {
        for len in 0..5usize {
            for lo in 1..4i64 {
                for hi in lo..6i64 {
                    let expected = brute(len, lo, hi);
                    assert_eq!(
                        count_sorted_parity(len, lo, hi),
                        expected,
                        "{len} {lo} {hi}"
                    );
                }
            }
        }
    }

    fn brute(len: usize, lo: i64, hi: i64) -> [u64; 2] {
        fn walk(len: usize, min: i64, hi: i64, sum: i64, out: &mut [u64; 2]) {
            if len == 0 {
                out[(sum & 1) as usize] += 1;
                return;
            }
            for v in min..=hi {
                walk(len - 1, v, hi, sum + v, out);
            }
        }
        let mut out = [0; 2];
        walk(len, lo, hi, 0, &mut out);
        out
    }

    #[test]
    fn prefixes_cover_the_budget() {
        let prefixes = build_prefixes(6, 2, 1);
        assert!(!prefixes.is_empty());
        for prefix in &prefixes {
            assert!(prefix.zp.windows(2).all(|w| w[0] <= w[1]));
            let used: i64 = prefix.zp.iter().sum::<i64>() + prefix.zq.iter().sum::<i64>();
            assert!(used <= 6);
        }
    }

    #[test]
    fn enumeration_counts_match_pruned_counts() {
        // The bulk-counting prune must agree exactly with plain walking.
        for (n, p, q) in [(6, 2, 1), (7, 2, 2), (7, 3, 0), (8, 2, 1)] {
            let mut walked = 0u64;
            for_each_profile(n, p, q, |_| walked += 1).unwrap();
            let job = ProfileJob::new(n, p, q, false);
            let accum = process_range(&job, 0, job.prefixes.len() as u128);
            assert_eq!(accum.profiles_checked, walked, "n={n} p={p} q={q}");
        }
    }

    #[test]
    fn profiles_satisfy_the_linear_invariants() {
        for_each_profile(7, 2, 1, |profile| {
            assert!(profile.is_theorem_mode());
            assert_eq!(profile.sum_s() % 2, 0);
            assert_eq!(profile.sum_t() % 2, 0);
            assert_eq!(profile.s.iter().filter(|&&v| v == 0).count(), 2);
            assert_eq!(profile.t.iter().filter(|&&v| v == 0).count(), 1);
            assert!(profile.z.iter().all(|&v| v <= 4));
        })
        .unwrap();
    }
}
