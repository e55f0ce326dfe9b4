//! Exact arithmetic in a two-level tower `F_p ⊂ F_q ⊂ F_{q^k}`.
//!
//! Elements are identified by their canonical index: the element of
//! `F_{q^k}` with coefficient vector `(c_0, ..., c_{k-1})` over `F_q` (in the
//! polynomial basis of the extension modulus), where each `c_i` is itself a
//! vector of `e` digits over `F_p`, has index equal to the little-endian
//! base-`p` reading of the flattened digit string. Indices `0..q` are exactly
//! the embedded copy of `F_q`.
//!
//! Small fields (up to 2^18 elements) get log/antilog/Zech tables; larger
//! fields fall back to polynomial arithmetic on digit vectors.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field (number of elements) accepted by [`Field::new`].
pub const SIZE_BUDGET: u64 = 1 << 48;
/// Largest field that [`Field::conjugacy_partition`] will enumerate.
pub const ENUMERATION_BUDGET: u64 = 1 << 20;

const TABLE_LIMIT: u64 = 1 << 18;
const MAX_DIGITS: usize = 48;
const TRIAL_DIVISION_LIMIT: u64 = 1 << 25;
const NO_LOG: u32 = u32::MAX;

/// Serializable description of a field tower.
///
/// Both moduli are stored with their leading coefficient, constant term
/// first. `base_modulus` has `e + 1` entries in `[0, p)`; `ext_modulus` has
/// `k_ext + 1` entries, each an `F_q` element written as `e` base-`p` digits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub e: u32,
    pub k_ext: u32,
    pub base_modulus: Vec<u64>,
    pub ext_modulus: Vec<Vec<u64>>,
}

/// A field element, stored as its canonical index.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elt(pub u64);

impl Elt {
    pub const ZERO: Elt = Elt(0);
    pub const ONE: Elt = Elt(1);

    #[inline]
    pub fn index(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

// ---------------------------------------------------------------------------
// Layered slow-path arithmetic on indices.

trait Layer {
    fn size(&self) -> u64;
    fn add(&self, a: u64, b: u64) -> u64;
    fn neg(&self, a: u64) -> u64;
    fn mul(&self, a: u64, b: u64) -> u64;

    fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    fn pow(&self, a: u64, mut exp: u128) -> u64 {
        let mut base = a;
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Caller guarantees `a != 0`.
    fn inv(&self, a: u64) -> u64 {
        self.pow(a, (self.size() - 2) as u128)
    }
}

#[derive(Debug, Clone)]
struct PrimeLayer {
    p: u64,
}

impl Layer for PrimeLayer {
    fn size(&self) -> u64 {
        self.p
    }
    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }
    fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }
}

#[derive(Debug, Clone)]
struct ExtLayer<B> {
    base: B,
    /// Monic, constant term first, length `degree + 1`.
    modulus: Vec<u64>,
    degree: usize,
    size: u64,
}

impl<B: Layer> ExtLayer<B> {
    fn new(base: B, modulus: Vec<u64>) -> Self {
        let degree = modulus.len() - 1;
        let size = base.size().pow(degree as u32);
        ExtLayer {
            base,
            modulus,
            degree,
            size,
        }
    }

    fn digits(&self, mut a: u64, out: &mut [u64]) {
        let s = self.base.size();
        for d in out.iter_mut().take(self.degree) {
            *d = a % s;
            a /= s;
        }
    }

    fn pack(&self, c: &[u64]) -> u64 {
        let s = self.base.size();
        c[..self.degree].iter().rev().fold(0, |acc, &d| acc * s + d)
    }
}

impl<B: Layer> Layer for ExtLayer<B> {
    fn size(&self) -> u64 {
        self.size
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        if self.degree == 1 {
            return self.base.add(a, b);
        }
        let (mut x, mut y) = ([0u64; MAX_DIGITS], [0u64; MAX_DIGITS]);
        self.digits(a, &mut x);
        self.digits(b, &mut y);
        for i in 0..self.degree {
            x[i] = self.base.add(x[i], y[i]);
        }
        self.pack(&x)
    }

    fn neg(&self, a: u64) -> u64 {
        if self.degree == 1 {
            return self.base.neg(a);
        }
        let mut x = [0u64; MAX_DIGITS];
        self.digits(a, &mut x);
        for d in x.iter_mut().take(self.degree) {
            *d = self.base.neg(*d);
        }
        self.pack(&x)
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        let d = self.degree;
        if d == 1 {
            // x ≡ -m_0, but products of constants never reach degree 1.
            return self.base.mul(a, b);
        }
        let (mut x, mut y) = ([0u64; MAX_DIGITS], [0u64; MAX_DIGITS]);
        self.digits(a, &mut x);
        self.digits(b, &mut y);
        let mut prod = [0u64; 2 * MAX_DIGITS];
        for i in 0..d {
            if x[i] == 0 {
                continue;
            }
            for j in 0..d {
                if y[j] != 0 {
                    prod[i + j] = self.base.add(prod[i + j], self.base.mul(x[i], y[j]));
                }
            }
        }
        for t in (d..2 * d - 1).rev() {
            let c = prod[t];
            if c == 0 {
                continue;
            }
            prod[t] = 0;
            for i in 0..d {
                let m = self.modulus[i];
                if m != 0 {
                    prod[t - d + i] = self.base.sub(prod[t - d + i], self.base.mul(c, m));
                }
            }
        }
        self.pack(&prod)
    }
}

// Dense polynomials over a layer, used for irreducibility tests.

fn ptrim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn prem<L: Layer>(l: &L, a: &[u64], f: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    ptrim(&mut r);
    let df = f.len() - 1;
    let lead_inv = l.inv(f[df]);
    while r.len() > df {
        let t = r.len() - 1;
        let c = l.mul(r[t], lead_inv);
        for i in 0..=df {
            r[t - df + i] = l.sub(r[t - df + i], l.mul(c, f[i]));
        }
        ptrim(&mut r);
    }
    r
}

fn pmulmod<L: Layer>(l: &L, a: &[u64], b: &[u64], f: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = l.add(prod[i + j], l.mul(x, y));
        }
    }
    prem(l, &prod, f)
}

fn ppowmod<L: Layer>(l: &L, a: &[u64], mut exp: u128, f: &[u64]) -> Vec<u64> {
    let mut base = prem(l, a, f);
    let mut acc = prem(l, &[1], f);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = pmulmod(l, &acc, &base, f);
        }
        base = pmulmod(l, &base, &base, f);
        exp >>= 1;
    }
    acc
}

fn pgcd_degree<L: Layer>(l: &L, a: &[u64], b: &[u64]) -> usize {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    ptrim(&mut a);
    ptrim(&mut b);
    while !b.is_empty() {
        let r = prem(l, &a, &b);
        a = b;
        b = r;
    }
    a.len().saturating_sub(1)
}

/// Irreducibility of a monic polynomial over `l`: no common factor with
/// `x^{s^i} - x` for `i <= deg/2`.
fn is_irreducible<L: Layer>(l: &L, f: &[u64]) -> bool {
    let d = f.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let s = l.size() as u128;
    let mut h = vec![0, 1];
    for _ in 1..=d / 2 {
        h = ppowmod(l, &h, s, f);
        let mut g = h.clone();
        g.resize(g.len().max(2), 0);
        g[1] = l.sub(g[1], 1);
        ptrim(&mut g);
        if g.is_empty() || pgcd_degree(l, &g, f) > 0 {
            return false;
        }
    }
    true
}

fn smallest_irreducible<L: Layer>(l: &L, degree: usize) -> Vec<u64> {
    let s = l.size();
    let count = s.pow(degree as u32);
    for idx in 0..count {
        let mut f = Vec::with_capacity(degree + 1);
        let mut x = idx;
        for _ in 0..degree {
            f.push(x % s);
            x /= s;
        }
        f.push(1);
        if is_irreducible(l, &f) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

// ---------------------------------------------------------------------------

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn factor_distinct(mut n: u64) -> Result<Vec<u64>> {
    let orig = n;
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if d > TRIAL_DIVISION_LIMIT {
            return Err(Error::FactorizationBudgetExceeded(orig));
        }
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    Ok(out)
}

/// Splits a prime power into `(p, e)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut e = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    log_minus_one: u32,
}

struct Inner {
    spec: FieldSpec,
    q: u64,
    order: u64,
    prime_field: bool,
    top: ExtLayer<ExtLayer<PrimeLayer>>,
    tables: Option<Tables>,
    factors: OnceLock<Result<Vec<u64>>>,
    primitive: OnceLock<Result<Elt>>,
    subfield: OnceLock<Field>,
}

/// A finite field `F_{q^k}` together with its base field `F_q`.
///
/// Cheap to clone; all state is immutable and shared.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}^{}^{})",
            self.0.spec.p, self.0.spec.e, self.0.spec.k_ext
        )
    }
}

fn digits_of(mut v: u64, base: u64, len: usize) -> Vec<u64> {
    (0..len)
        .map(|_| {
            let d = v % base;
            v /= base;
            d
        })
        .collect()
}

fn from_digits(d: &[u64], base: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &x| acc * base + x)
}

impl Field {
    /// Builds the tower with the smallest-index monic irreducible moduli.
    pub fn build(p: u64, e: u32, k_ext: u32) -> Result<Field> {
        check_shape(p, e, k_ext)?;
        let prime = PrimeLayer { p };
        let base_modulus = smallest_irreducible(&prime, e as usize);
        let base = ExtLayer::new(prime, base_modulus.clone());
        let ext = smallest_irreducible(&base, k_ext as usize);
        let q = base.size();
        let ext_modulus = ext
            .iter()
            .map(|&c| digits_of(c, p, e as usize))
            .collect();
        Field::new(FieldSpec {
            p,
            e,
            k_ext,
            base_modulus,
            ext_modulus,
        })
        .map(|f| {
            debug_assert_eq!(f.q(), q);
            f
        })
    }

    /// Prime field or `F_q` with `q = p^e` (no top extension).
    pub fn base_field(p: u64, e: u32) -> Result<Field> {
        Field::build(p, e, 1)
    }

    /// Validates `spec` (primality, shapes, irreducibility, size budget).
    pub fn new(spec: FieldSpec) -> Result<Field> {
        check_shape(spec.p, spec.e, spec.k_ext)?;
        let p = spec.p;
        let e = spec.e as usize;
        let k = spec.k_ext as usize;
        if spec.base_modulus.len() != e + 1 {
            return Err(Error::InvalidModulus(format!(
                "base modulus has {} coefficients, expected {}",
                spec.base_modulus.len(),
                e + 1
            )));
        }
        if spec.base_modulus.iter().any(|&c| c >= p) || spec.base_modulus[e] != 1 {
            return Err(Error::InvalidModulus(
                "base modulus must be monic with coefficients in [0, p)".into(),
            ));
        }
        let prime = PrimeLayer { p };
        if !is_irreducible(&prime, &spec.base_modulus) {
            return Err(Error::InvalidModulus("base modulus is reducible".into()));
        }
        let base = ExtLayer::new(prime, spec.base_modulus.clone());
        let q = base.size();
        if spec.ext_modulus.len() != k + 1 {
            return Err(Error::InvalidModulus(format!(
                "extension modulus has {} coefficients, expected {}",
                spec.ext_modulus.len(),
                k + 1
            )));
        }
        let mut ext = Vec::with_capacity(k + 1);
        for c in &spec.ext_modulus {
            if c.len() != e || c.iter().any(|&d| d >= p) {
                return Err(Error::InvalidModulus(
                    "extension modulus coefficient is not a valid F_q element".into(),
                ));
            }
            ext.push(from_digits(c, p));
        }
        if ext[k] != 1 {
            return Err(Error::InvalidModulus("extension modulus must be monic".into()));
        }
        if !is_irreducible(&base, &ext) {
            return Err(Error::InvalidModulus("extension modulus is reducible".into()));
        }
        let top = ExtLayer::new(base, ext);
        let order = top.size();
        let mut inner = Inner {
            spec,
            q,
            order,
            prime_field: e == 1 && k == 1,
            top,
            tables: None,
            factors: OnceLock::new(),
            primitive: OnceLock::new(),
            subfield: OnceLock::new(),
        };
        if order <= TABLE_LIMIT && !inner.prime_field {
            let factors = factor_distinct(order - 1)?;
            let g = find_primitive(&inner.top, order, &factors);
            inner.tables = Some(build_tables(&inner.top, order, g));
            let _ = inner.primitive.set(Ok(Elt(g)));
            let _ = inner.factors.set(Ok(factors));
        }
        Ok(Field(Arc::new(inner)))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    /// Characteristic.
    pub fn p(&self) -> u64 {
        self.0.spec.p
    }

    pub fn e(&self) -> u32 {
        self.0.spec.e
    }

    /// Size of the base field `F_q`.
    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// Degree of `F_{q^k}` over `F_q`.
    pub fn k_ext(&self) -> u32 {
        self.0.spec.k_ext
    }

    /// Number of elements, `q^k`.
    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn zero(&self) -> Elt {
        Elt::ZERO
    }

    pub fn one(&self) -> Elt {
        Elt::ONE
    }

    pub fn elt(&self, index: u64) -> Result<Elt> {
        if index < self.0.order {
            Ok(Elt(index))
        } else {
            Err(Error::ElementOutOfRange {
                index,
                order: self.0.order,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elt> {
        (0..self.0.order).map(Elt)
    }

    pub fn ensure_same(&self, other: &Field) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    #[inline]
    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        let inner = &*self.0;
        if inner.spec.p == 2 {
            return Elt(a.0 ^ b.0);
        }
        if inner.prime_field {
            return Elt((a.0 + b.0) % inner.spec.p);
        }
        if let Some(t) = &inner.tables {
            if a.0 == 0 {
                return b;
            }
            if b.0 == 0 {
                return a;
            }
            let n = (inner.order - 1) as u32;
            let la = t.log[a.0 as usize];
            let lb = t.log[b.0 as usize];
            let d = if lb >= la { lb - la } else { lb + n - la };
            let z = t.zech[d as usize];
            if z == NO_LOG {
                return Elt::ZERO;
            }
            return Elt(t.exp[(la + z) as usize] as u64);
        }
        Elt(inner.top.add(a.0, b.0))
    }

    #[inline]
    pub fn neg(&self, a: Elt) -> Elt {
        let inner = &*self.0;
        if inner.spec.p == 2 || a.0 == 0 {
            return a;
        }
        if inner.prime_field {
            return Elt(inner.spec.p - a.0);
        }
        if let Some(t) = &inner.tables {
            let l = t.log[a.0 as usize] + t.log_minus_one;
            return Elt(t.exp[l as usize] as u64);
        }
        Elt(inner.top.neg(a.0))
    }

    #[inline]
    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        let inner = &*self.0;
        if a.0 == 0 || b.0 == 0 {
            return Elt::ZERO;
        }
        if inner.prime_field {
            let p = inner.spec.p;
            return Elt(((a.0 as u128 * b.0 as u128) % p as u128) as u64);
        }
        if let Some(t) = &inner.tables {
            let l = t.log[a.0 as usize] + t.log[b.0 as usize];
            return Elt(t.exp[l as usize] as u64);
        }
        Elt(inner.top.mul(a.0, b.0))
    }

    /// `a * b + c`
    #[inline]
    pub fn mul_add(&self, a: Elt, b: Elt, c: Elt) -> Elt {
        self.add(self.mul(a, b), c)
    }

    pub fn inv(&self, a: Elt) -> Result<Elt> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let inner = &*self.0;
        if let Some(t) = &inner.tables {
            let n = (inner.order - 1) as u32;
            let l = t.log[a.0 as usize];
            return Ok(Elt(t.exp[((n - l) % n) as usize] as u64));
        }
        Ok(Elt(inner.top.inv(a.0)))
    }

    pub fn div(&self, a: Elt, b: Elt) -> Result<Elt> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^exp`; the exponent is reduced modulo `q^k - 1` for nonzero `a`,
    /// and `0^0 = 1`.
    pub fn pow(&self, a: Elt, exp: u128) -> Elt {
        if a.0 == 0 {
            return if exp == 0 { Elt::ONE } else { Elt::ZERO };
        }
        let n = (self.0.order - 1) as u128;
        let exp = exp % n;
        if let Some(t) = &self.0.tables {
            let l = (t.log[a.0 as usize] as u128 * exp) % n;
            return Elt(t.exp[l as usize] as u64);
        }
        if self.0.prime_field {
            return Elt(PrimeLayer { p: self.0.spec.p }.pow(a.0, exp));
        }
        Elt(self.0.top.pow(a.0, exp))
    }

    /// The Frobenius automorphism `a -> a^q`.
    pub fn frobenius(&self, a: Elt) -> Elt {
        self.pow(a, self.0.q as u128)
    }

    /// `σ^i(a) = a^{q^i}`.
    pub fn frobenius_pow(&self, a: Elt, i: usize) -> Elt {
        let k = self.k_ext() as usize;
        let r = i % k;
        if r == 0 {
            return a;
        }
        let n = (self.0.order - 1) as u128;
        let mut exp = 1u128;
        for _ in 0..r {
            exp = exp * self.0.q as u128 % n.max(1);
        }
        if n == 1 {
            return a;
        }
        self.pow(a, exp)
    }

    /// `N_i(a) = a^{(q^i - 1)/(q - 1)}`, with `N_0 ≡ 1` (also at zero) and
    /// `N_i(0) = 0` for `i >= 1`.
    pub fn norm(&self, i: usize, a: Elt) -> Elt {
        if i == 0 {
            return Elt::ONE;
        }
        if a.0 == 0 {
            return Elt::ZERO;
        }
        let n = (self.0.order - 1) as u128;
        let q = self.0.q as u128 % n.max(1);
        // 1 + q + ... + q^{i-1} mod (q^k - 1); period k in i.
        let mut exp = 0u128;
        for _ in 0..i {
            exp = (exp * q + 1) % n.max(1);
        }
        self.pow(a, exp)
    }

    /// `^β a = σ(β) a β^{-1}`.
    pub fn conjugate(&self, a: Elt, beta: Elt) -> Result<Elt> {
        if beta.0 == 0 {
            return Err(Error::ZeroConjugator);
        }
        Ok(self.mul(self.mul(self.frobenius(beta), a), self.inv(beta)?))
    }

    /// True if `a` lies in the embedded base field `F_q`.
    pub fn in_base(&self, a: Elt) -> bool {
        a.0 < self.0.q
    }

    /// Coordinates of `a` over `F_q` in the polynomial basis, as indices
    /// into the base field.
    pub fn base_coords(&self, a: Elt) -> Vec<Elt> {
        digits_of(a.0, self.0.q, self.k_ext() as usize)
            .into_iter()
            .map(Elt)
            .collect()
    }

    pub fn from_base_coords(&self, coords: &[Elt]) -> Result<Elt> {
        if coords.len() != self.k_ext() as usize {
            return Err(Error::DimensionMismatch(format!(
                "expected {} base coordinates, got {}",
                self.k_ext(),
                coords.len()
            )));
        }
        if let Some(c) = coords.iter().find(|c| c.0 >= self.0.q) {
            return Err(Error::ElementOutOfRange {
                index: c.0,
                order: self.0.q,
            });
        }
        let raw: Vec<u64> = coords.iter().map(|c| c.0).collect();
        Ok(Elt(from_digits(&raw, self.0.q)))
    }

    /// The base field `F_q` as a standalone field. Its element indices agree
    /// with the embedded indices `0..q`.
    pub fn subfield(&self) -> Field {
        if self.k_ext() == 1 {
            return self.clone();
        }
        self.0
            .subfield
            .get_or_init(|| {
                let e = self.e() as usize;
                let mut one = vec![0u64; e];
                one[0] = 1;
                Field::new(FieldSpec {
                    p: self.p(),
                    e: self.e(),
                    k_ext: 1,
                    base_modulus: self.0.spec.base_modulus.clone(),
                    ext_modulus: vec![vec![0u64; e], one],
                })
                .expect("subfield of a valid field is valid")
            })
            .clone()
    }

    /// Nested coefficient encoding: `k_ext` rows of `e` base-`p` digits.
    pub fn encode(&self, a: Elt) -> Vec<Vec<u64>> {
        let e = self.e() as usize;
        digits_of(a.0, self.0.q, self.k_ext() as usize)
            .into_iter()
            .map(|c| digits_of(c, self.p(), e))
            .collect()
    }

    pub fn decode(&self, coeffs: &[Vec<u64>]) -> Result<Elt> {
        let e = self.e() as usize;
        if coeffs.len() != self.k_ext() as usize || coeffs.iter().any(|c| c.len() != e) {
            return Err(Error::DimensionMismatch(format!(
                "element must be {} x {} digits",
                self.k_ext(),
                e
            )));
        }
        let mut raw = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            if let Some(&d) = c.iter().find(|&&d| d >= self.p()) {
                return Err(Error::ElementOutOfRange {
                    index: d,
                    order: self.p(),
                });
            }
            raw.push(from_digits(c, self.p()));
        }
        Ok(Elt(from_digits(&raw, self.0.q)))
    }

    fn order_factors(&self) -> Result<&Vec<u64>> {
        self.0
            .factors
            .get_or_init(|| factor_distinct(self.0.order - 1))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: Elt) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let mut ord = self.0.order - 1;
        for &r in self.order_factors()? {
            while ord % r == 0 && self.pow(a, (ord / r) as u128) == Elt::ONE {
                ord /= r;
            }
        }
        Ok(ord)
    }

    /// The primitive element of smallest canonical index.
    pub fn primitive_element(&self) -> Result<Elt> {
        self.0
            .primitive
            .get_or_init(|| {
                let factors = self.order_factors()?.clone();
                let n = self.0.order - 1;
                for idx in 1..self.0.order {
                    let a = Elt(idx);
                    if factors.iter().all(|&r| self.pow(a, (n / r) as u128) != Elt::ONE) {
                        return Ok(a);
                    }
                }
                unreachable!("multiplicative group of a finite field is cyclic")
            })
            .clone()
    }

    /// Partition of the field into Frobenius conjugacy classes, computed by
    /// conjugating each representative by every nonzero β.
    ///
    /// The first class is `{0}`; class `i + 1` has representative `γ^i`,
    /// `i = 0..q-2`, for the canonical primitive element `γ`.
    pub fn conjugacy_partition(&self) -> Result<Vec<ConjugacyClass>> {
        let order = self.0.order;
        if order > ENUMERATION_BUDGET {
            return Err(Error::EnumerationBudgetExceeded {
                needed: order as u128,
                budget: ENUMERATION_BUDGET as u128,
            });
        }
        let gamma = self.primitive_element()?;
        let mut classes = vec![ConjugacyClass {
            representative: Elt::ZERO,
            members: vec![Elt::ZERO],
        }];
        for i in 0..self.0.q - 1 {
            let rep = self.pow(gamma, i as u128);
            let mut members: Vec<Elt> = (1..order)
                .map(|b| self.conjugate(rep, Elt(b)).expect("nonzero conjugator"))
                .collect();
            members.sort_unstable();
            members.dedup();
            classes.push(ConjugacyClass {
                representative: rep,
                members,
            });
        }
        Ok(classes)
    }

    /// Index of the conjugacy class containing `a` within
    /// [`Field::conjugacy_partition`]: `0` for zero, else `1 + (log_γ a mod (q-1))`.
    pub fn conjugacy_class_index(&self, a: Elt) -> Result<usize> {
        if a.0 == 0 {
            return Ok(0);
        }
        // a ∈ C_{γ^i} iff a / γ^i is a (q-1)-th power iff a^{(Q-1)/(q-1)} = γ^{i (Q-1)/(q-1)}.
        let gamma = self.primitive_element()?;
        let m = ((self.0.order - 1) / (self.0.q - 1)) as u128;
        let target = self.pow(a, m);
        let step = self.pow(gamma, m);
        let mut cur = Elt::ONE;
        for i in 0..self.0.q - 1 {
            if cur == target {
                return Ok(i as usize + 1);
            }
            cur = self.mul(cur, step);
        }
        unreachable!("norm map is onto F_q^*")
    }
}

/// One Frobenius conjugacy class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    pub representative: Elt,
    pub members: Vec<Elt>,
}

impl Serialize for Elt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.0)
    }
}

fn check_shape(p: u64, e: u32, k_ext: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 || k_ext == 0 {
        return Err(Error::DegreeZero);
    }
    let digits = e as u64 * k_ext as u64;
    let ok = u32::try_from(digits)
        .ok()
        .and_then(|d| p.checked_pow(d))
        .is_some_and(|size| size <= SIZE_BUDGET);
    if !ok {
        return Err(Error::SizeBudgetExceeded { p, digits });
    }
    Ok(())
}

fn find_primitive<L: Layer>(l: &L, order: u64, factors: &[u64]) -> u64 {
    let n = order - 1;
    (1..order)
        .find(|&a| {
            factors
                .iter()
                .all(|&r| l.pow(a, (n / r) as u128) != 1)
        })
        .expect("cyclic group has a generator")
}

fn build_tables<L: Layer>(l: &L, order: u64, g: u64) -> Tables {
    let n = (order - 1) as usize;
    let mut exp = vec![0u32; 2 * n];
    let mut log = vec![NO_LOG; order as usize];
    let mut x = 1u64;
    for i in 0..n {
        exp[i] = x as u32;
        exp[i + n] = x as u32;
        log[x as usize] = i as u32;
        x = l.mul(x, g);
    }
    let zech = (0..n)
        .map(|d| {
            let s = l.add(1, exp[d] as u64);
            if s == 0 {
                NO_LOG
            } else {
                log[s as usize]
            }
        })
        .collect();
    let log_minus_one = log[l.neg(1) as usize];
    Tables {
        exp,
        log,
        zech,
        log_minus_one,
    }
}
