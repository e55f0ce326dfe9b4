//! Minor criteria for optimal column distances, MDP classification and the
//! dual-code check.

use rayon::prelude::*;
use serde::Serialize;

use crate::conv::{
    bounds, column_distance_bruteforce, column_distance_messages, is_basic_with_budget,
    profile, profile_lengths, sliding, CodeDescriptor, DegreeProfile, SlidingKind,
    BASIC_MINOR_BUDGET, DEFAULT_DISTANCE_BUDGET,
};
use crate::error::{budget, Error, Result};
use crate::field::{Elt, Field};
use crate::linalg::{det_in_place, kernel_minimal_basis, Mat, PolyMat};

pub const DEFAULT_MINOR_BUDGET: u128 = 10_000_000;
const CHUNK: usize = 2048;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    G,
    H,
}

/// Index condition used on the parity-check side.
///
/// `Corrected` requires `t_{(n-k)s} <= ns`: the first `(n-k)s` rows of
/// `H_j^c` live in the first `ns` columns, so at least `(n-k)s` chosen
/// columns must fall there. `AsPrinted` uses `t_{ks} <= ns`, treating
/// positions beyond the tuple length as vacuous.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HConvention {
    AsPrinted,
    #[default]
    Corrected,
}

/// Lexicographic enumeration of constrained column tuples (0-based values).
#[derive(Clone, Debug)]
pub struct MinorPattern {
    pub side: Side,
    pub j: usize,
    pub size: usize,
    pub columns: usize,
    lo: Vec<usize>,
    hi: Vec<usize>,
}

impl MinorPattern {
    /// Tuples `t_1 < ... < t_{k(j+1)}` with `t_{ks+1} >= ns + 1`.
    pub fn g_side(n: usize, k: usize, j: usize) -> MinorPattern {
        let size = k * (j + 1);
        let columns = n * (j + 1);
        let mut lo: Vec<usize> = (0..size).collect();
        let hi: Vec<usize> = (0..size).map(|i| columns - size + i).collect();
        for s in 1..=j {
            lo[k * s] = lo[k * s].max(n * s);
        }
        MinorPattern::finish(Side::G, j, size, columns, lo, hi)
    }

    /// Tuples of size `(n-k)(j+1)` for an `(n, k)` code's parity check.
    pub fn h_side(n: usize, k: usize, j: usize, conv: HConvention) -> MinorPattern {
        let r = n - k;
        let size = r * (j + 1);
        let columns = n * (j + 1);
        let lo: Vec<usize> = (0..size).collect();
        let mut hi: Vec<usize> = (0..size).map(|i| columns - size + i).collect();
        let step = match conv {
            HConvention::Corrected => r,
            HConvention::AsPrinted => k,
        };
        for s in 1..=j {
            let pos = step * s;
            if pos >= 1 && pos <= size {
                hi[pos - 1] = hi[pos - 1].min(n * s - 1);
            }
        }
        MinorPattern::finish(Side::H, j, size, columns, lo, hi)
    }

    fn finish(
        side: Side,
        j: usize,
        size: usize,
        columns: usize,
        mut lo: Vec<usize>,
        mut hi: Vec<usize>,
    ) -> MinorPattern {
        // Propagate so that every prefix respecting lo/hi is extendable.
        for i in 1..size {
            lo[i] = lo[i].max(lo[i - 1] + 1);
        }
        for i in (0..size.saturating_sub(1)).rev() {
            hi[i] = hi[i].min(hi[i + 1].saturating_sub(1));
        }
        MinorPattern {
            side,
            j,
            size,
            columns,
            lo,
            hi,
        }
    }

    fn satisfiable(&self) -> bool {
        (0..self.size).all(|i| self.lo[i] <= self.hi[i])
    }

    /// Number of tuples.
    pub fn count(&self) -> u128 {
        if self.size == 0 {
            return 1;
        }
        if !self.satisfiable() {
            return 0;
        }
        // ways[v] = tuples for positions i.. with t_i = v
        let c = self.columns;
        let mut ways = vec![0u128; c + 1];
        let last = self.size - 1;
        for v in self.lo[last]..=self.hi[last] {
            ways[v] = 1;
        }
        for i in (0..last).rev() {
            // suffix sums of the previous layer
            let mut suffix = vec![0u128; c + 2];
            for v in (0..c).rev() {
                suffix[v] = suffix[v + 1] + ways[v];
            }
            let mut next = vec![0u128; c + 1];
            for v in self.lo[i]..=self.hi[i] {
                next[v] = suffix[v + 1];
            }
            ways = next;
        }
        ways.iter().sum()
    }

    /// Iterator over tuples in lexicographic order.
    pub fn iter(&self) -> MinorTuples<'_> {
        MinorTuples {
            p: self,
            cur: None,
            done: !self.satisfiable(),
        }
    }

    /// Whether `t` (0-based) belongs to this pattern.
    pub fn contains(&self, t: &[usize]) -> bool {
        t.len() == self.size
            && t.iter()
                .enumerate()
                .all(|(i, &v)| v >= self.lo[i] && v <= self.hi[i])
            && t.windows(2).all(|w| w[0] < w[1])
    }
}

pub struct MinorTuples<'a> {
    p: &'a MinorPattern,
    cur: Option<Vec<usize>>,
    done: bool,
}

impl Iterator for MinorTuples<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let p = self.p;
        match &mut self.cur {
            None => {
                let first = p.lo.clone();
                self.cur = Some(first.clone());
                if p.size == 0 {
                    self.done = true;
                }
                Some(first)
            }
            Some(t) => {
                let Some(i) = (0..p.size).rev().find(|&i| t[i] < p.hi[i]) else {
                    self.done = true;
                    return None;
                };
                t[i] += 1;
                for x in i + 1..p.size {
                    t[x] = p.lo[x].max(t[x - 1] + 1);
                }
                Some(t.clone())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorCheck {
    pub side: Side,
    pub j: usize,
    pub holds: bool,
    /// Number of constrained minors in the pattern.
    pub minors: u128,
    /// Lexicographically first vanishing minor, as 1-based column indices.
    pub witness: Option<Vec<usize>>,
}

fn check_pattern(f: &Field, m: &Mat, pat: &MinorPattern) -> Option<Vec<usize>> {
    let rows = m.rows();
    let zero_minor = |t: &Vec<usize>| {
        let mut buf = Vec::with_capacity(rows * rows);
        for r in 0..rows {
            buf.extend(t.iter().map(|&c| m.get(r, c)));
        }
        det_in_place(f, &mut buf, rows) == Elt::ZERO
    };
    let mut it = pat.iter();
    loop {
        let chunk: Vec<Vec<usize>> = it.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            return None;
        }
        if let Some(w) = chunk.into_par_iter().find_first(zero_minor) {
            return Some(w);
        }
    }
}

/// Every constrained full-size minor of `G_j^c` is nonzero.
pub fn minor_check_g(
    f: &Field,
    g: &PolyMat,
    j: usize,
    minor_budget: u128,
) -> Result<MinorCheck> {
    let (k, n) = (g.rows(), g.cols());
    let pat = MinorPattern::g_side(n, k, j);
    let count = pat.count();
    budget("minor", count, minor_budget)?;
    let m = sliding(g, j, SlidingKind::Generator)?.blocks;
    let witness = check_pattern(f, &m, &pat);
    Ok(MinorCheck {
        side: Side::G,
        j,
        holds: witness.is_none() && count > 0,
        minors: count,
        witness: witness.map(|w| w.into_iter().map(|c| c + 1).collect()),
    })
}

/// Every constrained full-size minor of `H_j^c` is nonzero, where `h` is an
/// `(n-k) x n` parity check of an `(n, k)` code.
pub fn minor_check_h(
    f: &Field,
    h: &PolyMat,
    n: usize,
    k: usize,
    j: usize,
    conv: HConvention,
    minor_budget: u128,
) -> Result<MinorCheck> {
    if h.cols() != n || k >= n || h.rows() != n - k {
        return Err(Error::DimensionMismatch(format!(
            "parity check must be {}x{n}, got {}x{}",
            n.saturating_sub(k),
            h.rows(),
            h.cols()
        )));
    }
    let pat = MinorPattern::h_side(n, k, j, conv);
    let count = pat.count();
    budget("minor", count, minor_budget)?;
    let m = sliding(h, j, SlidingKind::ParityCheck)?.blocks;
    let witness = check_pattern(f, &m, &pat);
    Ok(MinorCheck {
        side: Side::H,
        j,
        holds: witness.is_none() && count > 0,
        minors: count,
        witness: witness.map(|w| w.into_iter().map(|c| c + 1).collect()),
    })
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    pub minor_budget: u128,
    pub distance_budget: u128,
    pub basic_budget: u128,
    /// Cross-check each window by brute force when it fits the budget.
    pub bruteforce: bool,
    pub strongly_mds: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            minor_budget: DEFAULT_MINOR_BUDGET,
            distance_budget: DEFAULT_DISTANCE_BUDGET,
            basic_budget: BASIC_MINOR_BUDGET,
            bruteforce: true,
            strongly_mds: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowReport {
    pub j: usize,
    pub bound: usize,
    pub minor_check: bool,
    pub minors: u128,
    pub witness: Option<Vec<usize>>,
    /// Brute-force `d_j^c`, when evaluated.
    pub distance: Option<usize>,
    pub attains: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BasicMethod {
    MinorGcd,
    /// Implied by MDP with `k | δ`, equal row degrees and minimality.
    EqualRowDegreeShortcut,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StronglyMds {
    pub window: usize,
    pub bound: usize,
    pub distance: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub k: usize,
    pub profile: DegreeProfile,
    pub minimal: bool,
    pub basic: bool,
    pub basic_method: BasicMethod,
    pub windows: Vec<WindowReport>,
    pub mdp: bool,
    /// `None` when not evaluated (disabled or over budget).
    pub strongly_mds: Option<StronglyMds>,
}

impl VerificationReport {
    /// First vanishing minor, as `(j, 1-based tuple)`.
    pub fn witness(&self) -> Option<(usize, &[usize])> {
        self.windows
            .iter()
            .find_map(|w| w.witness.as_deref().map(|t| (w.j, t)))
    }
}

fn affordable(code: &CodeDescriptor, j: usize, distance_budget: u128) -> bool {
    column_distance_messages(code.field.order(), code.k, j).is_some_and(|c| c <= distance_budget)
}

/// Runs minimality, basicness, the minor criterion for `j = 0..=L` and
/// optional brute-force and strongly-MDS checks.
pub fn classify(code: &CodeDescriptor, opts: &ClassifyOptions) -> Result<VerificationReport> {
    let f = &code.field;
    let prof = profile(code);
    let (n, k, delta) = (code.n, code.k, prof.delta);
    let g0_full = crate::linalg::rank(f, &code.generator.coeff(0)) == k;
    let mut windows = Vec::new();
    let mut mdp = true;
    for j in 0..=prof.l {
        let mc = minor_check_g(f, &code.generator, j, opts.minor_budget)?;
        let bound = bounds(n, k, delta, j).1;
        let distance = if opts.bruteforce && g0_full && affordable(code, j, opts.distance_budget) {
            Some(column_distance_bruteforce(code, j, opts.distance_budget)?)
        } else {
            None
        };
        let holds = mc.holds;
        windows.push(WindowReport {
            j,
            bound,
            minor_check: mc.holds,
            minors: mc.minors,
            witness: mc.witness,
            distance,
            attains: distance.map(|d| d == bound),
        });
        if !holds {
            mdp = false;
            break;
        }
    }
    let equal_rows = delta % k == 0 && prof.row_degrees.iter().all(|&d| d == delta / k);
    let (basic, basic_method) = if mdp && prof.minimal && equal_rows {
        (true, BasicMethod::EqualRowDegreeShortcut)
    } else {
        (
            is_basic_with_budget(code, opts.basic_budget)?,
            BasicMethod::MinorGcd,
        )
    };
    let strongly_mds = if opts.strongly_mds && g0_full && affordable(code, prof.m_window, opts.distance_budget) {
        let distance = column_distance_bruteforce(code, prof.m_window, opts.distance_budget)?;
        let bound = bounds(n, k, delta, prof.m_window).0;
        Some(StronglyMds {
            window: prof.m_window,
            bound,
            distance,
            holds: distance == bound,
        })
    } else {
        None
    };
    Ok(VerificationReport {
        n,
        k,
        minimal: prof.minimal,
        profile: prof,
        basic,
        basic_method,
        windows,
        mdp,
        strongly_mds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualReport {
    pub n: usize,
    /// Dimension of the dual code, `n - k`.
    pub k: usize,
    pub delta: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub convention: HConvention,
    /// Minor checks on the primal generator used as the dual's parity check.
    pub parity_side: Vec<MinorCheck>,
    pub mdp: bool,
    /// Rows of a minimal polynomial basis of the kernel of `G(D)`.
    pub dual_generator: Option<PolyMat>,
    /// Minor checks on that dual generator, when computed.
    pub generator_side: Option<Vec<MinorCheck>>,
}

/// MDP check of the dual `(n, n-k)` code, using `G(D)` as its parity check.
/// With `with_generator`, also extracts a dual generator (kernel basis of
/// degree at most δ) and checks it on the generator side.
pub fn dual_mdp_check(
    code: &CodeDescriptor,
    conv: HConvention,
    with_generator: bool,
    minor_budget: u128,
) -> Result<DualReport> {
    let f = &code.field;
    if !is_basic_with_budget(code, BASIC_MINOR_BUDGET)? {
        return Err(Error::InvalidParameters("generator is not basic".into()));
    }
    let (n, k) = (code.n, code.k);
    let rd = n - k;
    let delta = profile(code).delta;
    let (l, _) = profile_lengths(n, rd, delta);
    let mut parity_side = Vec::new();
    let mut mdp = true;
    for j in 0..=l {
        let c = minor_check_h(f, &code.generator, n, rd, j, conv, minor_budget)?;
        let holds = c.holds;
        parity_side.push(c);
        if !holds {
            mdp = false;
            break;
        }
    }
    let (dual_generator, generator_side) = if with_generator {
        let h = kernel_minimal_basis(f, &code.generator, delta, rd)?;
        let mut checks = Vec::new();
        for j in 0..=l {
            let c = minor_check_g(f, &h, j, minor_budget)?;
            let holds = c.holds;
            checks.push(c);
            if !holds {
                break;
            }
        }
        (Some(h), Some(checks))
    } else {
        (None, None)
    };
    Ok(DualReport {
        n,
        k: rd,
        delta,
        l,
        convention: conv,
        parity_side,
        mdp,
        dual_generator,
        generator_side,
    })
}
