//! Test oracles written without the library's algorithms: schoolbook
//! arithmetic in the tower straight from the moduli, cofactor determinants,
//! and codeword enumeration.
#![allow(dead_code)]

use skewmdp::conv::CodeDescriptor;
use skewmdp::field::{Elt, Field, FieldSpec};
use skewmdp::linalg::{Mat, PolyMat};

/// Schoolbook arithmetic in `F_p[x]/(b)` then `F_q[y]/(m)`.
pub struct Tower {
    p: u64,
    e: usize,
    k: usize,
    base: Vec<u64>,
    ext: Vec<Vec<u64>>,
}

fn digits(mut v: u64, base: u64, len: usize) -> Vec<u64> {
    (0..len)
        .map(|_| {
            let d = v % base;
            v /= base;
            d
        })
        .collect()
}

fn undigits(d: &[u64], base: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &x| acc * base + x)
}

impl Tower {
    pub fn new(spec: &FieldSpec) -> Tower {
        Tower {
            p: spec.p,
            e: spec.e as usize,
            k: spec.k_ext as usize,
            base: spec.base_modulus.clone(),
            ext: spec.ext_modulus.clone(),
        }
    }

    fn q(&self) -> u64 {
        self.p.pow(self.e as u32)
    }

    /// Product of two `F_q` elements given as digit vectors.
    fn base_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut prod = vec![0u64; 2 * self.e];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // reduce by the monic base modulus
        for t in (self.e..prod.len()).rev() {
            let c = prod[t];
            if c == 0 {
                continue;
            }
            for i in 0..=self.e {
                let s = t - self.e + i;
                prod[s] = (prod[s] + p - c * self.base[i] % p) % p;
            }
        }
        prod.truncate(self.e);
        prod
    }

    fn base_add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    fn base_neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|x| (self.p - x) % self.p).collect()
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let n = self.e * self.k;
        let s: Vec<u64> = digits(a, self.p, n)
            .iter()
            .zip(digits(b, self.p, n))
            .map(|(x, y)| (x + y) % self.p)
            .collect();
        undigits(&s, self.p)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let q = self.q();
        let k = self.k;
        let zero = vec![0u64; self.e];
        let ad: Vec<Vec<u64>> = digits(a, q, k).iter().map(|&c| digits(c, self.p, self.e)).collect();
        let bd: Vec<Vec<u64>> = digits(b, q, k).iter().map(|&c| digits(c, self.p, self.e)).collect();
        let mut prod = vec![zero.clone(); 2 * k];
        for i in 0..k {
            for j in 0..k {
                let t = self.base_mul(&ad[i], &bd[j]);
                prod[i + j] = self.base_add(&prod[i + j], &t);
            }
        }
        for t in (k..prod.len()).rev() {
            let c = prod[t].clone();
            if c.iter().all(|&x| x == 0) {
                continue;
            }
            for i in 0..=k {
                let s = t - k + i;
                let sub = self.base_mul(&c, &self.ext[i]);
                prod[s] = self.base_add(&prod[s], &self.base_neg(&sub));
            }
        }
        let coeffs: Vec<u64> = prod[..k].iter().map(|c| undigits(c, self.p)).collect();
        undigits(&coeffs, q)
    }

    pub fn pow(&self, a: u64, mut e: u128) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(f: &Field, m: &[Vec<Elt>]) -> Elt {
    let n = m.len();
    if n == 0 {
        return Elt::ONE;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut acc = Elt::ZERO;
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Elt>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(i, _)| *i != c).map(|(_, &x)| x).collect())
            .collect();
        let term = f.mul(m[0][c], cofactor_det(f, &minor));
        acc = if c % 2 == 0 { f.add(acc, term) } else { f.sub(acc, term) };
    }
    acc
}

pub fn rows_of(m: &Mat) -> Vec<Vec<Elt>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

/// Rank by repeatedly testing all square minors (small matrices only).
pub fn minor_rank(f: &Field, m: &Mat) -> usize {
    let (r, c) = (m.rows(), m.cols());
    for size in (1..=r.min(c)).rev() {
        for rs in subsets(r, size) {
            for cs in subsets(c, size) {
                let sub: Vec<Vec<Elt>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| m.get(i, j)).collect())
                    .collect();
                if !cofactor_det(f, &sub).is_zero() {
                    return size;
                }
            }
        }
    }
    0
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// `d_j^c` by enumerating every `(u_0, ..., u_j)` with `u_0 != 0` and
/// forming `v_t = sum_i u_{t-i} G_i` directly.
pub fn naive_column_distance(code: &CodeDescriptor, j: usize) -> usize {
    let f = &code.field;
    let (n, k) = (code.n, code.k);
    let q = f.order();
    let total = q.pow((k * (j + 1)) as u32);
    let g = &code.generator;
    let mut best = usize::MAX;
    for idx in 0..total {
        let u = digits(idx, q, k * (j + 1));
        if u[..k].iter().all(|&x| x == 0) {
            continue;
        }
        let mut w = 0;
        for t in 0..=j {
            for c in 0..n {
                let mut v = Elt::ZERO;
                for i in 0..=t {
                    if i > g.degree().unwrap_or(0) {
                        break;
                    }
                    let gi = g.coeff(i);
                    for r in 0..k {
                        v = f.add(v, f.mul(Elt(u[(t - i) * k + r]), gi.get(r, c)));
                    }
                }
                if !v.is_zero() {
                    w += 1;
                }
            }
        }
        best = best.min(w);
    }
    best
}

/// Whether every G-side constrained minor of `G_j^c` is nonzero, using the
/// block-Toeplitz matrix built here and cofactor determinants.
pub fn naive_minor_check_g(code: &CodeDescriptor, j: usize) -> bool {
    let f = &code.field;
    let (n, k) = (code.n, code.k);
    let m = block_toeplitz(&code.generator, j);
    let size = k * (j + 1);
    subsets(n * (j + 1), size).into_iter().all(|t| {
        let constrained = (1..=j).all(|s| t[k * s] >= n * s);
        if !constrained {
            return true;
        }
        let sub: Vec<Vec<Elt>> = (0..size)
            .map(|r| t.iter().map(|&c| m.get(r, c)).collect())
            .collect();
        !cofactor_det(f, &sub).is_zero()
    })
}

/// Upper block-Toeplitz `G_j^c`.
pub fn block_toeplitz(g: &PolyMat, j: usize) -> Mat {
    let (k, n) = (g.rows(), g.cols());
    let mut m = Mat::zeros(k * (j + 1), n * (j + 1));
    for r in 0..=j {
        for c in r..=j {
            let gi = g.coeff(c - r);
            for a in 0..k {
                for b in 0..n {
                    m.set(r * k + a, c * n + b, gi.get(a, b));
                }
            }
        }
    }
    m
}

pub fn bound(n: usize, k: usize, j: usize) -> usize {
    (n - k) * (j + 1) + 1
}

pub fn random_code(
    f: &Field,
    n: usize,
    k: usize,
    m: usize,
    mut next: impl FnMut() -> u64,
) -> CodeDescriptor {
    let coeffs: Vec<Vec<Vec<u64>>> = (0..=m)
        .map(|_| (0..k).map(|_| (0..n).map(|_| next() % f.order()).collect()).collect())
        .collect();
    CodeDescriptor::from_indices(f.clone(), &coeffs).unwrap()
}

/// Proptest settings for integration tests, which have no source file to
/// anchor a regressions directory.
pub fn cases(n: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases: n,
        failure_persistence: None,
        ..Default::default()
    }
}
