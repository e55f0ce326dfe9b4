//! Skew polynomials over `F_{q^k}` with the Frobenius twist `x a = σ(a) x`.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elt, Field};
use crate::linalg::{rank, Mat};

/// Field size limit for [`root_space_audit`].
pub const ROOT_AUDIT_BUDGET: u64 = 1 << 16;

/// Coefficients `f_0, f_1, ...` of `Σ f_i x^i`, without trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SkewPoly {
    coeffs: Vec<Elt>,
}

impl SkewPoly {
    pub fn new(mut coeffs: Vec<Elt>) -> SkewPoly {
        while coeffs.last().is_some_and(|e| e.is_zero()) {
            coeffs.pop();
        }
        SkewPoly { coeffs }
    }

    pub fn from_indices(c: &[u64]) -> SkewPoly {
        SkewPoly::new(c.iter().map(|&x| Elt(x)).collect())
    }

    pub fn zero() -> SkewPoly {
        SkewPoly::default()
    }

    pub fn constant(c: Elt) -> SkewPoly {
        SkewPoly::new(vec![c])
    }

    /// `x - a`
    pub fn linear(f: &Field, a: Elt) -> SkewPoly {
        SkewPoly::new(vec![f.neg(a), Elt::ONE])
    }

    pub fn coeffs(&self) -> &[Elt] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, f: &Field, other: &SkewPoly) -> SkewPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        SkewPoly::new(
            (0..n)
                .map(|i| {
                    f.add(
                        self.coeffs.get(i).copied().unwrap_or_default(),
                        other.coeffs.get(i).copied().unwrap_or_default(),
                    )
                })
                .collect(),
        )
    }

    pub fn sub(&self, f: &Field, other: &SkewPoly) -> SkewPoly {
        let neg = SkewPoly::new(other.coeffs.iter().map(|&c| f.neg(c)).collect());
        self.add(f, &neg)
    }

    /// `(Σ a_i x^i)(Σ b_j x^j) = Σ a_i σ^i(b_j) x^{i+j}`.
    pub fn mul(&self, f: &Field, other: &SkewPoly) -> SkewPoly {
        if self.is_zero() || other.is_zero() {
            return SkewPoly::zero();
        }
        let mut out = vec![Elt::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.mul_add(a, f.frobenius_pow(b, i), out[i + j]);
            }
        }
        SkewPoly::new(out)
    }

    /// `f(a) = Σ f_i N_i(a)`.
    pub fn eval(&self, f: &Field, a: Elt) -> Elt {
        let mut acc = Elt::ZERO;
        let mut n = Elt::ONE;
        for &c in &self.coeffs {
            acc = f.mul_add(c, n, acc);
            // N_{i+1}(a) = σ(N_i(a)) a
            n = f.mul(f.frobenius(n), a);
        }
        acc
    }

    /// `D_{f,a}(β) = f(^β a) β`, extended by `D(0) = 0`.
    pub fn linearize(&self, f: &Field, a: Elt, beta: Elt) -> Elt {
        if beta.is_zero() {
            return Elt::ZERO;
        }
        let c = f.conjugate(a, beta).expect("nonzero conjugator");
        f.mul(self.eval(f, c), beta)
    }
}

/// `V_k(Ω)`: entry `(r, i)` is `N_r(a_i)`.
pub fn vandermonde(f: &Field, k: usize, omega: &[Elt]) -> Mat {
    let mut m = Mat::zeros(k, omega.len());
    for (i, &a) in omega.iter().enumerate() {
        for r in 0..k {
            m.set(r, i, f.norm(r, a));
        }
    }
    m
}

/// `n x m` matrix with entry `(r, j) = N_r(^{β_j} a_j) β_j`.
pub fn scaled_vandermonde(f: &Field, n: usize, points: &[(Elt, Elt)]) -> Result<Mat> {
    let mut m = Mat::zeros(n, points.len());
    for (j, &(a, beta)) in points.iter().enumerate() {
        let c = f.conjugate(a, beta)?;
        for r in 0..n {
            m.set(r, j, f.mul(f.norm(r, c), beta));
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRootSpace {
    /// Position in [`Field::conjugacy_partition`] (0 is the zero class).
    pub class_index: usize,
    pub representative: Elt,
    pub roots: Vec<Elt>,
    /// `F_q`-dimension of `{β : ^β a is a root} ∪ {0}`; for the zero class,
    /// the `F_{q^k}`-dimension (0 or 1).
    pub dimension: usize,
    /// Whether that set is closed, i.e. has exactly `q^dimension` elements.
    pub closed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootSpaceAudit {
    pub classes: Vec<ClassRootSpace>,
    pub total: usize,
    pub degree: usize,
    pub holds: bool,
}

/// Enumerates all roots of `p`, groups them by conjugacy class and checks
/// that the root-space dimensions sum to at most `deg p`.
pub fn root_space_audit(f: &Field, p: &SkewPoly) -> Result<RootSpaceAudit> {
    let order = f.order();
    if order > ROOT_AUDIT_BUDGET {
        return Err(Error::EnumerationBudgetExceeded {
            needed: order as u128,
            budget: ROOT_AUDIT_BUDGET as u128,
        });
    }
    let degree = p
        .degree()
        .ok_or_else(|| Error::InvalidParameters("zero polynomial has no finite degree".into()))?;
    let q = f.q();
    let sub = f.subfield();

    // ^β a = u(β) a with u(β) = σ(β)/β, so group the conjugators by u.
    let mut by_ratio: HashMap<Elt, Vec<Elt>> = HashMap::new();
    for b in 1..order {
        let beta = Elt(b);
        let u = f.div(f.frobenius(beta), beta)?;
        by_ratio.entry(u).or_default().push(beta);
    }

    let mut grouped: Vec<(usize, Vec<Elt>)> = Vec::new();
    for a in f.elements() {
        if p.eval(f, a).is_zero() {
            let ci = f.conjugacy_class_index(a)?;
            match grouped.iter_mut().find(|(c, _)| *c == ci) {
                Some((_, v)) => v.push(a),
                None => grouped.push((ci, vec![a])),
            }
        }
    }
    grouped.sort_by_key(|(c, _)| *c);

    let gamma = f.primitive_element()?;
    let mut classes = Vec::new();
    for (ci, roots) in grouped {
        if ci == 0 {
            classes.push(ClassRootSpace {
                class_index: 0,
                representative: Elt::ZERO,
                roots,
                dimension: 1,
                closed: true,
            });
            continue;
        }
        let rep = f.pow(gamma, (ci - 1) as u128);
        let rep_inv = f.inv(rep)?;
        let mut betas: Vec<Elt> = Vec::new();
        for &r in &roots {
            if let Some(bs) = by_ratio.get(&f.mul(r, rep_inv)) {
                betas.extend_from_slice(bs);
            }
        }
        let k = f.k_ext() as usize;
        let mut m = Mat::zeros(betas.len(), k);
        for (i, &b) in betas.iter().enumerate() {
            for (c, x) in f.base_coords(b).into_iter().enumerate() {
                m.set(i, c, x);
            }
        }
        let dimension = rank(&sub, &m);
        let closed = (betas.len() as u128 + 1) == (q as u128).pow(dimension as u32);
        classes.push(ClassRootSpace {
            class_index: ci,
            representative: rep,
            roots,
            dimension,
            closed,
        });
    }
    let total = classes.iter().map(|c| c.dimension).sum();
    Ok(RootSpaceAudit {
        holds: total <= degree,
        classes,
        total,
        degree,
    })
}
