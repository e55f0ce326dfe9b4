//! Exhaustive and randomized searches for MDP codes over small fields, and
//! the subspace decomposition used in the field-size lower bound.

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::conv::{for_each_subset, profile_lengths, sliding, CodeDescriptor, SlidingKind};
use crate::error::{budget, Error, Result};
use crate::field::{prime_power, Elt, Field};
use crate::linalg::{det_in_place, intersection_dim, rank, solve, Mat, PolyMat};
use crate::mdp::minor_check_g;

pub const DEFAULT_SEARCH_BUDGET: u128 = 100_000_000;
const CHUNK: u128 = 4096;

/// Reproducible 64-bit linear congruential generator.
#[derive(Clone, Debug)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub const A: u64 = 6364136223846793005;
    pub const C: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Lcg {
        Lcg { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(Lcg::A).wrapping_add(Lcg::C);
        self.state
    }

    /// `(state >> 33) mod bound` after one step.
    pub fn below(&mut self, bound: u64) -> u64 {
        (self.next_u64() >> 33) % bound
    }
}

/// Generators `G_0 + ... + G_m D^m` of `(n, k)` codes over `field` with
/// constraint length `delta`.
#[derive(Clone, Debug)]
pub struct SearchSpace {
    pub n: usize,
    pub k: usize,
    pub memory: usize,
    pub delta: usize,
    pub field: Field,
    /// Optional required row degrees.
    pub row_degrees: Option<Vec<usize>>,
}

impl SearchSpace {
    /// All rows of degree `memory`, so `delta = k * memory`.
    pub fn new(n: usize, k: usize, memory: usize, field: Field) -> Result<SearchSpace> {
        SearchSpace::with_delta(n, k, memory, k * memory, field)
    }

    pub fn with_delta(
        n: usize,
        k: usize,
        memory: usize,
        delta: usize,
        field: Field,
    ) -> Result<SearchSpace> {
        if k == 0 || k >= n {
            return Err(Error::InvalidParameters(format!(
                "need 0 < k < n, got n = {n}, k = {k}"
            )));
        }
        if delta > k * memory {
            return Err(Error::InvalidParameters(format!(
                "delta = {delta} exceeds k * memory = {}",
                k * memory
            )));
        }
        Ok(SearchSpace {
            n,
            k,
            memory,
            delta,
            field,
            row_degrees: None,
        })
    }

    pub fn digits(&self) -> usize {
        self.k * self.n * (self.memory + 1)
    }

    /// `|F|^{k n (m+1)}`, `None` on overflow.
    pub fn candidates(&self) -> Option<u128> {
        (self.field.order() as u128).checked_pow(self.digits() as u32)
    }

    pub fn profile_length(&self) -> usize {
        profile_lengths(self.n, self.k, self.delta).0
    }

    /// SHA-256 over a canonical JSON description of the space.
    pub fn fingerprint(&self) -> String {
        let desc = serde_json::json!({
            "n": self.n,
            "k": self.k,
            "memory": self.memory,
            "delta": self.delta,
            "field": self.field.spec(),
            "row_degrees": self.row_degrees,
            "order": "little-endian digits over (coefficient, row, column)",
        });
        let digest = Sha256::digest(desc.to_string().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Generator for a given digit string (coefficient-major, then row, col).
    pub fn generator_from_digits(&self, digits: &[u64]) -> PolyMat {
        let (n, k) = (self.n, self.k);
        let coeffs = (0..=self.memory)
            .map(|c| {
                let mut m = Mat::zeros(k, n);
                for r in 0..k {
                    for col in 0..n {
                        m.set(r, col, Elt(digits[c * k * n + r * n + col]));
                    }
                }
                m
            })
            .collect();
        PolyMat::new(k, n, coeffs).expect("shape is consistent")
    }

    pub fn generator_at(&self, mut index: u128) -> PolyMat {
        let q = self.field.order() as u128;
        let digits: Vec<u64> = (0..self.digits())
            .map(|_| {
                let d = (index % q) as u64;
                index /= q;
                d
            })
            .collect();
        self.generator_from_digits(&digits)
    }

    /// The search predicate: constraint length `delta`, minimal, `G_0`
    /// generating an MDS block code, and every window `j <= L` passing the
    /// minor criterion.
    pub fn accepts(&self, g: &PolyMat, minor_budget: u128) -> Result<bool> {
        let f = &self.field;
        let nu: Vec<usize> = (0..self.k).map(|r| g.row_degree(r).unwrap_or(0)).collect();
        if nu.iter().sum::<usize>() != self.delta {
            return Ok(false);
        }
        if let Some(want) = &self.row_degrees {
            if &nu != want {
                return Ok(false);
            }
        }
        if !g0_is_mds(f, &g.coeff(0), self.k, self.n) {
            return Ok(false);
        }
        let mut gbar = Mat::zeros(self.k, self.n);
        for (r, &d) in nu.iter().enumerate() {
            for c in 0..self.n {
                gbar.set(r, c, g.coeff(d).get(r, c));
            }
        }
        if rank(f, &gbar) < self.k {
            return Ok(false);
        }
        for j in 1..=self.profile_length() {
            if !minor_check_g(f, g, j, minor_budget)?.holds {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn g0_is_mds(f: &Field, g0: &Mat, k: usize, n: usize) -> bool {
    let mut ok = true;
    for_each_subset(n, k, |cols| {
        let mut buf = Vec::with_capacity(k * k);
        for r in 0..k {
            buf.extend(cols.iter().map(|&c| g0.get(r, c)));
        }
        ok = !det_in_place(f, &mut buf, k).is_zero();
        ok
    });
    ok
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Randomized { seed: u64, trials: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub fingerprint: String,
    pub candidates: u128,
    pub scanned: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub mode: &'static str,
    pub found: bool,
    /// Candidate index (exhaustive) or trial number (randomized).
    pub index: Option<u128>,
    pub generator: Option<PolyMat>,
    pub certificate: Certificate,
    #[serde(skip)]
    pub code: Option<CodeDescriptor>,
}

pub fn search_mdp(
    space: &SearchSpace,
    mode: &SearchMode,
    search_budget: u128,
    minor_budget: u128,
) -> Result<SearchOutcome> {
    let total = space.candidates().unwrap_or(u128::MAX);
    let fingerprint = space.fingerprint();
    let accept = |g: &PolyMat| space.accepts(g, minor_budget);
    let (mode_name, hit, scanned) = match *mode {
        SearchMode::Exhaustive => {
            budget("search", total, search_budget)?;
            let mut start = 0u128;
            let mut hit = None;
            while start < total && hit.is_none() {
                let end = (start + CHUNK).min(total);
                let idx: Vec<u128> = (start..end).collect();
                hit = idx
                    .into_par_iter()
                    .map(|i| accept(&space.generator_at(i)).map(|ok| ok.then_some(i)))
                    .find_first(|r| !matches!(r, Ok(None)))
                    .transpose()?
                    .flatten();
                start = end;
            }
            let scanned = hit.map_or(total, |i| i + 1);
            ("exhaustive", hit.map(|i| (i, space.generator_at(i))), scanned)
        }
        SearchMode::Randomized { seed, trials } => {
            budget("search", trials as u128, search_budget)?;
            let q = space.field.order();
            let mut rng = Lcg::new(seed);
            let mut done = 0u64;
            let mut hit = None;
            while done < trials && hit.is_none() {
                let batch = (trials - done).min(CHUNK as u64);
                let gens: Vec<(u128, PolyMat)> = (0..batch)
                    .map(|t| {
                        let digits: Vec<u64> =
                            (0..space.digits()).map(|_| rng.below(q)).collect();
                        ((done + t) as u128, space.generator_from_digits(&digits))
                    })
                    .collect();
                hit = gens
                    .into_par_iter()
                    .map(|(t, g)| accept(&g).map(|ok| ok.then_some((t, g))))
                    .find_first(|r| !matches!(r, Ok(None)))
                    .transpose()?
                    .flatten();
                done += batch;
            }
            let scanned = hit.as_ref().map_or(trials as u128, |(t, _)| t + 1);
            ("randomized", hit, scanned)
        }
    };
    let code = match &hit {
        Some((_, g)) => Some(CodeDescriptor::new(space.field.clone(), g.clone())?),
        None => None,
    };
    Ok(SearchOutcome {
        mode: mode_name,
        found: hit.is_some(),
        index: hit.as_ref().map(|(i, _)| *i),
        generator: hit.map(|(_, g)| g),
        certificate: Certificate {
            fingerprint,
            candidates: total,
            scanned,
        },
        code,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FrontierRow {
    pub q: u64,
    pub candidates: u128,
    pub scanned: u128,
    pub found: bool,
    pub generator: Option<PolyMat>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Frontier {
    pub n: usize,
    pub k: usize,
    pub delta: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub q_min: Option<u64>,
    /// `n^(L-1)`, the growth rate of the lower bound (constants omitted).
    pub growth_reference: u128,
    pub rows: Vec<FrontierRow>,
}

/// Exhaustive search over each `q` in ascending order, with memory
/// `ceil(delta / k)`.
pub fn min_field_frontier(
    n: usize,
    k: usize,
    delta: usize,
    qs: &[u64],
    search_budget: u128,
    minor_budget: u128,
) -> Result<Frontier> {
    let mut qs = qs.to_vec();
    qs.sort_unstable();
    qs.dedup();
    let memory = delta.div_ceil(k);
    let mut rows = Vec::new();
    for &q in &qs {
        let (p, e) = prime_power(q)
            .ok_or_else(|| Error::InvalidParameters(format!("{q} is not a prime power")))?;
        let field = Field::base_field(p, e)?;
        let space = SearchSpace::with_delta(n, k, memory, delta, field)?;
        let out = search_mdp(&space, &SearchMode::Exhaustive, search_budget, minor_budget)?;
        rows.push(FrontierRow {
            q,
            candidates: out.certificate.candidates,
            scanned: out.certificate.scanned,
            found: out.found,
            generator: out.generator,
        });
    }
    let l = profile_lengths(n, k, delta).0;
    Ok(Frontier {
        n,
        k,
        delta,
        l,
        q_min: rows.iter().find(|r| r.found).map(|r| r.q),
        growth_reference: (n as u128).pow(l.saturating_sub(1) as u32),
        rows,
    })
}

// ---------------------------------------------------------------------------
// Subspace probe.

/// Sets `A_1..A_L` and `B_j ⊂ A_j` (1-based column indices within a block).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeConfig {
    pub a: Vec<Vec<usize>>,
    pub b: Vec<Vec<usize>>,
}

impl ProbeConfig {
    pub fn validate(&self, n: usize, k: usize, l: usize) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if l == 0 {
            return bad("maximum profile length must be at least 1".into());
        }
        if self.a.len() != l || self.b.len() != l {
            return bad(format!("expected {l} sets A_j and B_j"));
        }
        let total: usize = self.a.iter().map(Vec::len).sum();
        if total != k * (l + 1) {
            return bad(format!("sum of |A_j| is {total}, expected {}", k * (l + 1)));
        }
        let (lo, hi) = (k / l, k.div_ceil(l));
        for (j, (a, b)) in self.a.iter().zip(&self.b).enumerate() {
            let strictly = |s: &[usize]| s.windows(2).all(|w| w[0] < w[1]);
            if !strictly(a) || a.iter().any(|&x| x == 0 || x > n) {
                return bad(format!("A_{} must be a strictly increasing subset of 1..={n}", j + 1));
            }
            if a.len() < k || !(lo..=hi).contains(&(a.len() - k)) {
                return bad(format!("|A_{}| - k must be {lo} or {hi}", j + 1));
            }
            if b.len() != k || !strictly(b) || b.iter().any(|x| !a.contains(x)) {
                return bad(format!("B_{} must be a k-subset of A_{}", j + 1, j + 1));
            }
        }
        Ok(())
    }

    /// Every valid configuration for `(n, k, L)` in lexicographic order.
    pub fn enumerate(n: usize, k: usize, l: usize) -> Vec<ProbeConfig> {
        if l == 0 {
            return Vec::new();
        }
        let (lo, hi) = (k / l, k.div_ceil(l));
        let mut sizes: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..l {
            sizes = sizes
                .into_iter()
                .flat_map(|s| {
                    (lo..=hi).filter(|&e| k + e <= n).map(move |e| {
                        let mut t = s.clone();
                        t.push(k + e);
                        t
                    })
                })
                .collect();
            sizes.dedup();
        }
        sizes.retain(|s| s.iter().sum::<usize>() == k * (l + 1));
        sizes.sort();
        sizes.dedup();
        let mut out = Vec::new();
        for s in sizes {
            let mut partial: Vec<ProbeConfig> = vec![ProbeConfig {
                a: Vec::new(),
                b: Vec::new(),
            }];
            for &sz in &s {
                let mut next = Vec::new();
                for cfg in &partial {
                    for_each_subset(n, sz, |a| {
                        for_each_subset(sz, k, |bi| {
                            let mut c = cfg.clone();
                            c.a.push(a.iter().map(|x| x + 1).collect());
                            c.b.push(bi.iter().map(|&i| a[i] + 1).collect());
                            next.push(c);
                            true
                        });
                        true
                    });
                }
                partial = next;
            }
            out.extend(partial);
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    #[serde(rename = "L")]
    pub l: usize,
    pub rank_p: usize,
    pub expected_rank_p: usize,
    pub k_j: Vec<usize>,
    pub s_ranks: Vec<usize>,
    pub total_rank: usize,
    /// `rank P = (L+1)k`, `rank S_j = k_j` and `rank [S_1 .. S_L] = k`.
    pub rank_ok: bool,
    pub direct_sum: bool,
    /// Column bases of each `S_j`, as row-reduced rows (one per basis vector).
    pub spans: Vec<Mat>,
    /// Same for `[S_1 .. S_j]`.
    pub cumulative_spans: Vec<Mat>,
    #[serde(skip)]
    pub s: Vec<Mat>,
}

fn require_mdp(code: &CodeDescriptor, l: usize, minor_budget: u128) -> Result<()> {
    for j in 0..=l {
        let c = minor_check_g(&code.field, &code.generator, j, minor_budget)?;
        if !c.holds {
            return Err(Error::NotMdp(format!(
                "window {j} fails at columns {:?}",
                c.witness.unwrap_or_default()
            )));
        }
    }
    Ok(())
}

/// `S_j` for `j = 1..=upto`, from the given `A`/`B` prefixes (1-based).
fn s_matrices(
    f: &Field,
    gl: &Mat,
    n: usize,
    k: usize,
    a: &[Vec<usize>],
    b: &[Vec<usize>],
) -> Result<Vec<Mat>> {
    // Column of G_L^c for block c (0-based) and in-block index x (1-based).
    let col = |blk: usize, x: usize| blk * n + x - 1;
    let block_rows = |v: &[Elt], r: usize| -> Mat {
        Mat::from_vec(k, 1, v[r * k..(r + 1) * k].to_vec()).expect("block shape")
    };
    let mut out = Vec::new();
    for j in 1..=a.len() {
        let (aj, bj) = (&a[j - 1], &b[j - 1]);
        let extra: Vec<usize> = aj.iter().copied().filter(|x| !bj.contains(x)).collect();
        let mut s = Mat::zeros(k, extra.len());
        for (t, &x) in extra.iter().enumerate() {
            let c = col(j, x);
            let mut v: Vec<Elt> = (0..gl.rows()).map(|r| gl.get(r, c)).collect();
            for r in (1..=j).rev() {
                // Clear row block r using B_r columns of column block r,
                // whose row block r is G_{0,B_r}.
                let br = &b[r - 1];
                let cols: Vec<usize> = br.iter().map(|&y| col(r, y)).collect();
                let g0b = gl.select_cols(&cols).submatrix(
                    &(r * k..(r + 1) * k).collect::<Vec<_>>(),
                    &(0..k).collect::<Vec<_>>(),
                )?;
                let x = solve(f, &g0b, &block_rows(&v, r))?
                    .ok_or_else(|| Error::NotMdp(format!("G_0 restricted to B_{r} is singular")))?;
                for (i, &cc) in cols.iter().enumerate() {
                    let coef = f.neg(x.get(i, 0));
                    if coef.is_zero() {
                        continue;
                    }
                    for (row, e) in v.iter_mut().enumerate() {
                        *e = f.mul_add(coef, gl.get(row, cc), *e);
                    }
                }
            }
            debug_assert!(v[k..].iter().all(|e| e.is_zero()));
            for row in 0..k {
                s.set(row, t, v[row]);
            }
        }
        out.push(s);
    }
    Ok(out)
}

/// Row-reduced basis of the column space of `m`.
fn col_span(f: &Field, m: &Mat) -> Mat {
    crate::linalg::row_basis(f, &m.transpose())
}

pub fn subspace_probe(
    code: &CodeDescriptor,
    config: &ProbeConfig,
    minor_budget: u128,
) -> Result<ProbeReport> {
    let (n, k) = (code.n, code.k);
    let l = profile_lengths(n, k, crate::conv::profile(code).delta).0;
    config.validate(n, k, l)?;
    require_mdp(code, l, minor_budget)?;
    let f = &code.field;
    let gl = sliding(&code.generator, l, SlidingKind::Generator)?.blocks;
    let pcols: Vec<usize> = config
        .a
        .iter()
        .enumerate()
        .flat_map(|(j, a)| a.iter().map(move |&x| (j + 1) * n + x - 1))
        .collect();
    let rank_p = rank(f, &gl.select_cols(&pcols));
    let s = s_matrices(f, &gl, n, k, &config.a, &config.b)?;
    let k_j: Vec<usize> = config.a.iter().map(|a| a.len() - k).collect();
    let s_ranks: Vec<usize> = s.iter().map(|m| rank(f, m)).collect();
    let mut all = Mat::zeros(k, 0);
    let mut cumulative_spans = Vec::new();
    for m in &s {
        all = all.hstack(m)?;
        cumulative_spans.push(col_span(f, &all));
    }
    let total_rank = rank(f, &all);
    let rank_ok = rank_p == (l + 1) * k && s_ranks == k_j && total_rank == k;
    let direct_sum = s_ranks.iter().sum::<usize>() == total_rank && total_rank == k;
    Ok(ProbeReport {
        l,
        rank_p,
        expected_rank_p: (l + 1) * k,
        k_j,
        s_ranks,
        total_rank,
        rank_ok,
        direct_sum,
        spans: s.iter().map(|m| col_span(f, m)).collect(),
        cumulative_spans,
        s,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanInvariance {
    /// Number of `(B_1, .., B_L)` tuples compared.
    pub choices: usize,
    /// Per `j`: `span S_j` is the same for every choice.
    pub per_step: Vec<bool>,
    /// Per `j`: `span [S_1 .. S_j]` is the same for every choice.
    pub cumulative: Vec<bool>,
}

impl SpanInvariance {
    pub fn holds(&self) -> bool {
        self.per_step.iter().all(|&b| b)
    }
}

/// Compares `span S_j` and `span [S_1 .. S_j]` across every choice of
/// `B_1..B_L` for the given `A_1..A_L`.
pub fn span_invariance(
    code: &CodeDescriptor,
    a: &[Vec<usize>],
    minor_budget: u128,
) -> Result<SpanInvariance> {
    let k = code.k;
    let mut choices: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for aj in a {
        let mut next = Vec::new();
        for c in &choices {
            for_each_subset(aj.len(), k, |bi| {
                let mut t = c.clone();
                t.push(bi.iter().map(|&i| aj[i]).collect());
                next.push(t);
                true
            });
        }
        choices = next;
    }
    let mut out = SpanInvariance {
        choices: choices.len(),
        per_step: vec![true; a.len()],
        cumulative: vec![true; a.len()],
    };
    let mut reference: Option<ProbeReport> = None;
    for b in choices {
        let rep = subspace_probe(
            code,
            &ProbeConfig {
                a: a.to_vec(),
                b,
            },
            minor_budget,
        )?;
        match &reference {
            None => reference = Some(rep),
            Some(r) => {
                for j in 0..a.len() {
                    out.per_step[j] &= r.spans[j] == rep.spans[j];
                    out.cumulative[j] &= r.cumulative_spans[j] == rep.cumulative_spans[j];
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionAudit {
    pub j: usize,
    pub i: usize,
    pub k_j: usize,
    pub dimension: usize,
    pub expected: usize,
}

/// `dim(S_j ∩ S'_j)` where `S_j` and `S'_j` share the prefix
/// `(A_1, B_1), .., (A_{j-1}, B_{j-1})` and use `A_j`, `A'_j` of equal size.
pub fn intersection_dimension_audit(
    code: &CodeDescriptor,
    prefix_a: &[Vec<usize>],
    prefix_b: &[Vec<usize>],
    a_j: &[usize],
    a_j_prime: &[usize],
    minor_budget: u128,
) -> Result<IntersectionAudit> {
    let (n, k) = (code.n, code.k);
    let l = profile_lengths(n, k, crate::conv::profile(code).delta).0;
    let j = prefix_a.len() + 1;
    if j > l || prefix_b.len() != prefix_a.len() {
        return Err(Error::InvalidConfig(format!(
            "window {j} exceeds the maximum profile length {l}"
        )));
    }
    if a_j.len() != a_j_prime.len() || a_j.len() < k {
        return Err(Error::InvalidConfig(
            "A_j and A'_j must have the same size, at least k".into(),
        ));
    }
    let k_j = a_j.len() - k;
    let i = a_j.iter().filter(|x| a_j_prime.contains(x)).count();
    if i < 2 * k_j {
        return Err(Error::InvalidConfig(format!(
            "|A_j ∩ A'_j| = {i} is below 2 k_j = {}",
            2 * k_j
        )));
    }
    require_mdp(code, l, minor_budget)?;
    let f = &code.field;
    let gl = sliding(&code.generator, l, SlidingKind::Generator)?.blocks;
    let s_for = |aj: &[usize]| -> Result<Mat> {
        let mut a = prefix_a.to_vec();
        let mut b = prefix_b.to_vec();
        a.push(aj.to_vec());
        b.push(aj[..k].to_vec());
        Ok(s_matrices(f, &gl, n, k, &a, &b)?.pop().expect("j >= 1"))
    };
    let s = s_for(a_j)?;
    let sp = s_for(a_j_prime)?;
    let dimension = intersection_dim(f, &s.transpose(), &sp.transpose())?;
    Ok(IntersectionAudit {
        j,
        i,
        k_j,
        dimension,
        expected: i.saturating_sub(k),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> Field {
        let (p, e) = prime_power(q).unwrap();
        Field::base_field(p, e).unwrap()
    }

    #[test]
    fn lcg_is_pinned() {
        let mut r = Lcg::new(0);
        assert_eq!(r.next_u64(), Lcg::C);
        let mut r = Lcg::new(1);
        assert_eq!(r.next_u64(), Lcg::A.wrapping_add(Lcg::C));
    }

    #[test]
    fn two_one_one_over_f2_is_exhausted() {
        let s = SearchSpace::new(2, 1, 1, f(2)).unwrap();
        let out = search_mdp(&s, &SearchMode::Exhaustive, 1000, 1000).unwrap();
        assert!(!out.found);
        assert_eq!(out.certificate.candidates, 16);
        assert_eq!(out.certificate.scanned, 16);
    }

    #[test]
    fn two_one_one_over_f3_found() {
        let s = SearchSpace::new(2, 1, 1, f(3)).unwrap();
        let out = search_mdp(&s, &SearchMode::Exhaustive, 1000, 1000).unwrap();
        assert!(out.found);
        let g = out.generator.unwrap();
        assert_eq!(g.coeff(0).to_indices(), vec![vec![2, 1]]);
        assert_eq!(g.coeff(1).to_indices(), vec![vec![1, 1]]);
        let c = out.code.unwrap();
        assert_eq!(crate::conv::column_distance_bruteforce(&c, 2, 1000).unwrap(), 4);
    }

    #[test]
    fn repetition_code_is_mds_over_f2() {
        let s = SearchSpace::new(3, 1, 0, f(2)).unwrap();
        let out = search_mdp(&s, &SearchMode::Exhaustive, 1000, 1000).unwrap();
        assert!(out.found);
        assert_eq!(out.generator.unwrap().coeff(0).to_indices(), vec![vec![1, 1, 1]]);
    }

    #[test]
    fn frontier_two_one_one() {
        let fr = min_field_frontier(2, 1, 1, &[2, 3, 4], 10_000, 1000).unwrap();
        assert_eq!(fr.q_min, Some(3));
        assert_eq!(fr.l, 2);
        let fr = min_field_frontier(2, 1, 0, &[2, 3], 10_000, 1000).unwrap();
        assert_eq!(fr.q_min, Some(2));
    }

    #[test]
    fn randomized_is_reproducible() {
        let s = SearchSpace::new(2, 1, 1, f(5)).unwrap();
        let mode = SearchMode::Randomized { seed: 7, trials: 500 };
        let a = search_mdp(&s, &mode, 1000, 1000).unwrap();
        let b = search_mdp(&s, &mode, 1000, 1000).unwrap();
        assert!(a.found);
        assert_eq!(a.index, b.index);
        assert_eq!(a.generator, b.generator);
    }

    #[test]
    fn probe_on_f3_code() {
        let s = SearchSpace::new(2, 1, 1, f(3)).unwrap();
        let code = search_mdp(&s, &SearchMode::Exhaustive, 1000, 1000).unwrap().code.unwrap();
        let cfg = ProbeConfig {
            a: vec![vec![1, 2], vec![1]],
            b: vec![vec![1], vec![1]],
        };
        let rep = subspace_probe(&code, &cfg, 1000).unwrap();
        assert!(rep.rank_ok && rep.direct_sum);
        assert_eq!(rep.s_ranks, vec![1, 0]);
        assert!(span_invariance(&code, &cfg.a, 1000).unwrap().holds());
        let configs = ProbeConfig::enumerate(2, 1, 2);
        assert!(configs.contains(&cfg));
        for c in &configs {
            c.validate(2, 1, 2).unwrap();
        }
    }

    #[test]
    fn probe_rejects_bad_config() {
        let s = SearchSpace::new(2, 1, 1, f(3)).unwrap();
        let code = search_mdp(&s, &SearchMode::Exhaustive, 1000, 1000).unwrap().code.unwrap();
        let cfg = ProbeConfig {
            a: vec![vec![1, 2], vec![1, 2]],
            b: vec![vec![1], vec![1]],
        };
        assert!(matches!(
            subspace_probe(&code, &cfg, 1000),
            Err(Error::InvalidConfig(_))
        ));
    }
}
