//! Convolutional codes given by a polynomial generator matrix `G(D)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{budget, Error, Result};
use crate::field::{Elt, Field};
use crate::linalg::{poly_deg, poly_det, poly_gcd, rank, Mat, Poly, PolyMat};

pub const DEFAULT_DISTANCE_BUDGET: u128 = 100_000_000;
pub const BASIC_MINOR_BUDGET: u128 = 100_000;
pub const SLIDING_ENTRY_BUDGET: u128 = 1_000_000;

/// An `(n, k)` convolutional code over `field` with a `k x n` generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeDescriptor {
    pub n: usize,
    pub k: usize,
    pub field: Field,
    pub generator: PolyMat,
    pub label: Option<String>,
    pub provenance: Option<String>,
}

impl CodeDescriptor {
    pub fn new(field: Field, generator: PolyMat) -> Result<CodeDescriptor> {
        let (k, n) = (generator.rows(), generator.cols());
        if k == 0 || k >= n {
            return Err(Error::InvalidParameters(format!(
                "need 0 < k < n, got n = {n}, k = {k}"
            )));
        }
        if let Some(bad) = generator
            .coeffs()
            .iter()
            .flat_map(|m| m.data().iter())
            .find(|e| e.0 >= field.order())
        {
            return Err(Error::ElementOutOfRange {
                index: bad.0,
                order: field.order(),
            });
        }
        Ok(CodeDescriptor {
            n,
            k,
            field,
            generator,
            label: None,
            provenance: None,
        })
    }

    /// Builds from raw coefficient matrices `G_0, G_1, ...` given as element
    /// indices.
    pub fn from_indices(field: Field, coeffs: &[Vec<Vec<u64>>]) -> Result<CodeDescriptor> {
        let k = coeffs.first().map_or(0, Vec::len);
        let n = coeffs.first().and_then(|m| m.first()).map_or(0, Vec::len);
        let mats = coeffs.iter().map(|m| Mat::from_rows(m)).collect();
        CodeDescriptor::new(field, PolyMat::new(k, n, mats)?)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn with_provenance(mut self, p: impl Into<String>) -> Self {
        self.provenance = Some(p.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub row_degrees: Vec<usize>,
    pub memory: usize,
    pub constraint_length: usize,
    /// Equal to the constraint length; it is the code's degree when
    /// `minimal` holds.
    pub delta: usize,
    pub minimal: bool,
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "M")]
    pub m_window: usize,
}

/// `(L, M)` for an `(n, k, δ)` code.
pub fn profile_lengths(n: usize, k: usize, delta: usize) -> (usize, usize) {
    let r = n - k;
    (delta / k + delta / r, delta / k + delta.div_ceil(r))
}

/// Free-distance Singleton bound and the `j`-th column-distance bound.
pub fn bounds(n: usize, k: usize, delta: usize, j: usize) -> (usize, usize) {
    let r = n - k;
    (r * (delta / k + 1) + delta + 1, r * (j + 1) + 1)
}

fn row_degrees(g: &PolyMat) -> Vec<usize> {
    (0..g.rows()).map(|r| g.row_degree(r).unwrap_or(0)).collect()
}

/// Matrix of highest-order row coefficients and whether it has rank `k`.
pub fn is_minimal(code: &CodeDescriptor) -> (bool, Mat) {
    let g = &code.generator;
    let nu = row_degrees(g);
    let mut gbar = Mat::zeros(code.k, code.n);
    for (r, &d) in nu.iter().enumerate() {
        let c = g.coeff(d);
        for col in 0..code.n {
            gbar.set(r, col, c.get(r, col));
        }
    }
    (rank(&code.field, &gbar) == code.k, gbar)
}

pub fn profile(code: &CodeDescriptor) -> DegreeProfile {
    let row_degrees = row_degrees(&code.generator);
    let memory = row_degrees.iter().copied().max().unwrap_or(0);
    let nu: usize = row_degrees.iter().sum();
    let (l, m_window) = profile_lengths(code.n, code.k, nu);
    DegreeProfile {
        minimal: is_minimal(code).0,
        row_degrees,
        memory,
        constraint_length: nu,
        delta: nu,
        l,
        m_window,
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Calls `visit` on every `k`-subset of `0..n` in lexicographic order until it
/// returns `false`.
pub(crate) fn for_each_subset(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !visit(&idx) {
            return;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return;
        };
        idx[i] += 1;
        for t in i + 1..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

/// True iff the gcd of all full-size polynomial minors of `G(D)` is a unit.
pub fn is_basic(code: &CodeDescriptor) -> Result<bool> {
    is_basic_with_budget(code, BASIC_MINOR_BUDGET)
}

pub fn is_basic_with_budget(code: &CodeDescriptor, minor_budget: u128) -> Result<bool> {
    let f = &code.field;
    budget("basic-minor", binomial(code.n, code.k), minor_budget)?;
    let entries = code.generator.entries();
    let mut g: Option<Poly> = None;
    let mut err = None;
    for_each_subset(code.n, code.k, |cols| {
        let sub: Vec<Vec<Poly>> = entries
            .iter()
            .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
            .collect();
        let d = match poly_det(f, &sub) {
            Ok(d) => d,
            Err(e) => {
                err = Some(e);
                return false;
            }
        };
        if poly_deg(&d).is_none() {
            return true;
        }
        let next = match &g {
            None => poly_gcd(f, &d, &[]),
            Some(acc) => poly_gcd(f, acc, &d),
        };
        match next {
            Ok(p) => {
                let unit = p.len() == 1;
                g = Some(p);
                !unit
            }
            Err(e) => {
                err = Some(e);
                false
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(g.is_some_and(|p| p.len() == 1))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SlidingKind {
    /// Upper block-triangular generator window `G_j^c`.
    Generator,
    /// Lower block-triangular parity-check window `H_j^c`.
    ParityCheck,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlidingMatrix {
    pub kind: SlidingKind,
    pub j: usize,
    pub blocks: Mat,
}

/// `G_j^c` (block `(r, c)` is `G_{c-r}`) or `H_j^c` (block `(r, c)` is
/// `H_{r-c}`) for the coefficient matrices of `pm`.
pub fn sliding(pm: &PolyMat, j: usize, kind: SlidingKind) -> Result<SlidingMatrix> {
    let (br, bc) = (pm.rows(), pm.cols());
    let rows = br * (j + 1);
    let cols = bc * (j + 1);
    budget("sliding-matrix", rows as u128 * cols as u128, SLIDING_ENTRY_BUDGET)?;
    let mut m = Mat::zeros(rows, cols);
    for r in 0..=j {
        for c in 0..=j {
            let d = match kind {
                SlidingKind::Generator if c >= r => c - r,
                SlidingKind::ParityCheck if r >= c => r - c,
                _ => continue,
            };
            let Some(blk) = pm.coeffs().get(d) else {
                continue;
            };
            for i in 0..br {
                for t in 0..bc {
                    m.set(r * br + i, c * bc + t, blk.get(i, t));
                }
            }
        }
    }
    Ok(SlidingMatrix {
        kind,
        j,
        blocks: m,
    })
}

/// Number of normalized messages for the `j`-th column distance.
pub fn column_distance_messages(q: u64, k: usize, j: usize) -> Option<u128> {
    let q = q as u128;
    let lead = (q.checked_pow(k as u32)? - 1) / (q - 1);
    lead.checked_mul(q.checked_pow((k * j) as u32)?)
}

/// Exact `d_j^c` by enumerating `(u_0, ..., u_j)` with the first nonzero
/// coordinate of `u_0` equal to 1.
pub fn column_distance_bruteforce(
    code: &CodeDescriptor,
    j: usize,
    distance_budget: u128,
) -> Result<usize> {
    let f = &code.field;
    if rank(f, &code.generator.coeff(0)) < code.k {
        return Err(Error::RankDeficientG0);
    }
    let needed = column_distance_messages(f.order(), code.k, j).unwrap_or(u128::MAX);
    budget("distance", needed, distance_budget)?;
    let gj = sliding(&code.generator, j, SlidingKind::Generator)?.blocks;
    let k = code.k;
    let len = gj.cols();
    let q = f.order();

    // Tasks: (lead position, value of the first free coordinate if any).
    let mut tasks: Vec<(usize, Option<u64>)> = Vec::new();
    for lead in 0..k {
        let free = k * (j + 1) - lead - 1;
        if free == 0 {
            tasks.push((lead, None));
        } else {
            tasks.extend((0..q).map(|v| (lead, Some(v))));
        }
    }
    let best = tasks
        .par_iter()
        .map(|&(lead, first)| {
            let mut cw = gj.row(lead).to_vec();
            let free: Vec<usize> = (lead + 1..gj.rows()).collect();
            let mut start = 0;
            if let Some(v) = first {
                add_scaled(f, &mut cw, gj.row(free[0]), Elt(v));
                start = 1;
            }
            let rest = &free[start..];
            let mut digits = vec![0u64; rest.len()];
            let mut best = weight(&cw);
            'odometer: loop {
                // advance to the next assignment of `rest`
                let mut i = 0;
                loop {
                    if i == rest.len() {
                        break 'odometer;
                    }
                    let old = Elt(digits[i]);
                    let next = (digits[i] + 1) % q;
                    digits[i] = next;
                    let delta = f.sub(Elt(next), old);
                    add_scaled(f, &mut cw, gj.row(rest[i]), delta);
                    if next != 0 {
                        break;
                    }
                    i += 1;
                }
                best = best.min(weight(&cw));
            }
            best
        })
        .min()
        .unwrap_or(len);
    Ok(best)
}

#[inline]
fn add_scaled(f: &Field, acc: &mut [Elt], row: &[Elt], c: Elt) {
    if c.is_zero() {
        return;
    }
    for (a, &r) in acc.iter_mut().zip(row) {
        if !r.is_zero() {
            *a = f.mul_add(c, r, *a);
        }
    }
}

#[inline]
fn weight(v: &[Elt]) -> usize {
    v.iter().filter(|e| !e.is_zero()).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> CodeDescriptor {
        let f = Field::build(5, 1, 1).unwrap();
        CodeDescriptor::from_indices(f, &[vec![vec![1, 2, 3]], vec![vec![1, 1, 1]]]).unwrap()
    }

    #[test]
    fn profile_examples() {
        let p = profile(&example());
        assert_eq!(p.row_degrees, vec![1]);
        assert_eq!((p.memory, p.delta, p.l, p.m_window), (1, 1, 1, 2));
        assert!(p.minimal);

        let f = Field::build(5, 1, 1).unwrap();
        let c = CodeDescriptor::from_indices(f.clone(), &[vec![vec![1, 2, 3]]]).unwrap();
        let p = profile(&c);
        assert_eq!((p.delta, p.l, p.m_window), (0, 0, 0));
        assert_eq!(profile_lengths(2, 1, 1), (2, 2));
    }

    #[test]
    fn minimality() {
        let (ok, gbar) = is_minimal(&example());
        assert!(ok);
        assert_eq!(gbar.to_indices(), vec![vec![1, 1, 1]]);

        let f = Field::build(5, 1, 1).unwrap();
        let dd = CodeDescriptor::from_indices(f.clone(), &[vec![vec![0, 0]], vec![vec![1, 1]]])
            .unwrap();
        assert!(is_minimal(&dd).0);

        // Two rows of degree 1 with equal top coefficients.
        let c = CodeDescriptor::from_indices(
            f,
            &[
                vec![vec![1, 0, 0], vec![0, 1, 0]],
                vec![vec![1, 2, 3], vec![1, 2, 3]],
            ],
        )
        .unwrap();
        assert!(!is_minimal(&c).0);
    }

    #[test]
    fn basicness() {
        assert!(is_basic(&example()).unwrap());
        let f = Field::build(5, 1, 1).unwrap();
        let c = CodeDescriptor::from_indices(
            f.clone(),
            &[vec![vec![0, 0]], vec![vec![1, 0]], vec![vec![0, 1]]],
        )
        .unwrap();
        assert!(!is_basic(&c).unwrap());
        let c = CodeDescriptor::from_indices(
            f,
            &[vec![vec![1, 0, 2], vec![0, 1, 3]], vec![vec![0; 3]; 2]],
        )
        .unwrap();
        assert!(is_basic(&c).unwrap());
    }

    #[test]
    fn sliding_layout() {
        let g = &example().generator;
        let s0 = sliding(g, 0, SlidingKind::Generator).unwrap();
        assert_eq!(s0.blocks, g.coeff(0));
        let s1 = sliding(g, 1, SlidingKind::Generator).unwrap();
        assert_eq!(
            s1.blocks.to_indices(),
            vec![vec![1, 2, 3, 1, 1, 1], vec![0, 0, 0, 1, 2, 3]]
        );
        let h = PolyMat::new(
            1,
            2,
            vec![Mat::from_rows(&[[1, 2]]), Mat::from_rows(&[[3, 4]])],
        )
        .unwrap();
        let hs = sliding(&h, 1, SlidingKind::ParityCheck).unwrap();
        assert_eq!(
            hs.blocks.to_indices(),
            vec![vec![1, 2, 0, 0], vec![3, 4, 1, 2]]
        );
    }

    #[test]
    fn bruteforce_examples() {
        let c = example();
        assert_eq!(column_distance_bruteforce(&c, 0, 1000).unwrap(), 3);
        assert_eq!(column_distance_bruteforce(&c, 1, 1000).unwrap(), 5);
        let f3 = Field::build(3, 1, 1).unwrap();
        let b = CodeDescriptor::from_indices(f3, &[vec![vec![1, 0, 1]]]).unwrap();
        assert_eq!(column_distance_bruteforce(&b, 0, 10).unwrap(), 2);
        assert!(matches!(
            column_distance_bruteforce(&c, 1, 4),
            Err(Error::BudgetExceeded { needed: 5, .. })
        ));
        let f5 = Field::build(5, 1, 1).unwrap();
        let z = CodeDescriptor::from_indices(f5, &[vec![vec![0, 0]], vec![vec![1, 1]]]).unwrap();
        assert_eq!(
            column_distance_bruteforce(&z, 0, 100),
            Err(Error::RankDeficientG0)
        );
    }

    #[test]
    fn bound_formulas() {
        assert_eq!(bounds(3, 1, 1, 1), (6, 5));
        // 3 * (1 + 1) + 2 + 1
        assert_eq!(bounds(5, 2, 2, 1), (9, 7));
        assert_eq!(bounds(2, 1, 1, 2), (4, 4));
    }

    #[test]
    fn subsets_in_lex_order() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, |s| {
            seen.push(s.to_vec());
            true
        });
        assert_eq!(seen.len() as u128, binomial(4, 2));
        assert_eq!(seen[0], vec![0, 1]);
        assert_eq!(seen[5], vec![2, 3]);
    }
}
