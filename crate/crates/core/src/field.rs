//! Arithmetic in `F_{p^m}` with a fixed primitive element and lookup tables.
//!
//! A [`FieldSpec`] owns everything that makes the field concrete: the prime,
//! the irreducible modulus, the primitive element `gamma`, and (for fields up
//! to the table limit) full power/discrete-log/trace tables. Elements are
//! stored packed as a single integer `c0 + c1*p + ... + c_{m-1}*p^{m-1}`, so
//! they are `Copy` and cheap to move through exhaustive sweeps; coordinates
//! are unpacked on demand.
//!
//! The spec is immutable after construction and all operations are pure, so
//! it can be shared freely across worker threads.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::util::{is_prime, prime_factors};

/// Default cap on the field size and on building the full lookup tables.
pub const DEFAULT_MAX_Q: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldError {
    /// `p` is not prime.
    NotPrime,
    /// A supplied modulus factors over `F_p`.
    Reducible,
    /// `p^m` exceeds the configured limit.
    TooLarge,
    /// No primitive element was found (cannot happen for a true field;
    /// kept as a defensive signal).
    NoPrimitiveModulus,
    /// Inversion or division by zero.
    DivisionByZero,
    /// Discrete log of zero.
    ZeroArgument,
    /// Requested subfield degree does not divide `m`.
    BadSubfield,
    /// Requested root-of-unity order does not divide `q - 1`.
    NotDivisor,
    /// A supplied modulus is not monic of the right degree.
    BadModulus,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            FieldError::NotPrime => "p is not prime",
            FieldError::Reducible => "modulus is reducible over F_p",
            FieldError::TooLarge => "p^m exceeds the configured limit",
            FieldError::NoPrimitiveModulus => "no primitive element found",
            FieldError::DivisionByZero => "division by zero",
            FieldError::ZeroArgument => "discrete log of zero",
            FieldError::BadSubfield => "subfield degree does not divide m",
            FieldError::NotDivisor => "order does not divide q - 1",
            FieldError::BadModulus => "modulus is not monic of degree m",
        };
        f.write_str(msg)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for FieldError {}

/// An element of `F_{p^m}`, packed as `c0 + c1*p + ... + c_{m-1}*p^{m-1}`.
///
/// The packed value is only meaningful relative to the [`FieldSpec`] that
/// produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(pub(crate) u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The packed index in `[0, q)`. Useful as a table key.
    pub fn index(self) -> u32 {
        self.0
    }

    /// Rebuild from a packed index; the caller guarantees `idx < q` for the
    /// field the element will be used with.
    pub fn from_index(idx: u32) -> FieldElement {
        FieldElement(idx)
    }
}

/// Size/table limits applied at construction time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldConfig {
    pub max_q: u64,
    pub dlog_table_limit: u64,
}

impl Default for FieldConfig {
    fn default() -> Self {
        FieldConfig { max_q: DEFAULT_MAX_Q, dlog_table_limit: DEFAULT_MAX_Q }
    }
}

/// A concrete `F_{p^m}`: fixed modulus, fixed primitive element, tables.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    p: u64,
    m: u32,
    q: u64,
    /// Ascending coefficients, length `m + 1`, monic.
    modulus: Vec<u64>,
    gamma: FieldElement,
    /// `pow_table[e]` = packed index of `gamma^e`, length `q - 1`.
    pow_table: Option<Vec<u32>>,
    /// `dlog_table[idx]` = e with `gamma^e` = element `idx`; entry 0 unused.
    dlog_table: Option<Vec<u32>>,
    /// Absolute trace to `F_p` per packed index.
    trace_table: Option<Vec<u32>>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}
impl Eq for FieldSpec {}

impl FieldSpec {
    /// Build `F_{p^m}` with the canonical modulus and primitive element.
    ///
    /// With no modulus supplied and `m > 1`, the modulus is the
    /// lexicographically smallest (ascending coefficient vector, constant
    /// term compared first) monic irreducible of degree `m` whose residue
    /// class of `x` is primitive, and `gamma` is that class. For `m = 1`,
    /// `gamma` is the smallest primitive root mod `p`.
    pub fn new(p: u64, m: u32, modulus: Option<&[u64]>) -> Result<FieldSpec, FieldError> {
        FieldSpec::with_config(p, m, modulus, FieldConfig::default())
    }

    pub fn with_config(
        p: u64,
        m: u32,
        modulus: Option<&[u64]>,
        config: FieldConfig,
    ) -> Result<FieldSpec, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime);
        }
        if m == 0 {
            return Err(FieldError::BadModulus);
        }
        let mut q: u64 = 1;
        for _ in 0..m {
            q = q.checked_mul(p).ok_or(FieldError::TooLarge)?;
            if q > config.max_q {
                return Err(FieldError::TooLarge);
            }
        }

        let modulus = match modulus {
            Some(coeffs) => {
                if coeffs.len() != (m as usize) + 1 {
                    return Err(FieldError::BadModulus);
                }
                let reduced: Vec<u64> = coeffs.iter().map(|&c| c % p).collect();
                if reduced[m as usize] != 1 {
                    return Err(FieldError::BadModulus);
                }
                if m > 1 && !poly_is_irreducible(&reduced, p) {
                    return Err(FieldError::Reducible);
                }
                reduced
            }
            None => canonical_modulus(p, m)?,
        };

        let mut spec = FieldSpec {
            p,
            m,
            q,
            modulus,
            gamma: FieldElement(0),
            pow_table: None,
            dlog_table: None,
            trace_table: None,
        };

        spec.gamma = spec.find_gamma()?;

        if q <= config.dlog_table_limit {
            spec.build_tables();
        }
        Ok(spec)
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
    pub fn gamma(&self) -> FieldElement {
        self.gamma
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// Embed an integer as an element of the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let r = n.rem_euclid(self.p as i64) as u32;
        FieldElement(r)
    }

    /// Element from ascending coordinates (shorter vectors are zero-padded).
    pub fn from_coords(&self, coords: &[u64]) -> Option<FieldElement> {
        if coords.len() > self.m as usize {
            return None;
        }
        let mut packed: u64 = 0;
        for (i, &c) in coords.iter().enumerate() {
            packed += (c % self.p) * self.p.pow(i as u32);
        }
        Some(FieldElement(packed as u32))
    }

    /// Ascending coordinates, length exactly `m`.
    pub fn coords(&self, x: FieldElement) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.m as usize);
        let mut idx = x.0 as u64;
        for _ in 0..self.m {
            v.push(idx % self.p);
            idx /= self.p;
        }
        v
    }

    /// All elements in packed-index order (`0` first).
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q as u32).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.m == 1 {
            return FieldElement(((a.0 as u64 + b.0 as u64) % self.p) as u32);
        }
        let (mut x, mut y) = (a.0 as u64, b.0 as u64);
        let mut out = 0u64;
        let mut base = 1u64;
        for _ in 0..self.m {
            out += ((x + y) % self.p) * base;
            base *= self.p;
            x /= self.p;
            y /= self.p;
        }
        FieldElement(out as u32)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.m == 1 {
            return FieldElement(((self.p - a.0 as u64) % self.p) as u32);
        }
        let mut x = a.0 as u64;
        let mut out = 0u64;
        let mut base = 1u64;
        for _ in 0..self.m {
            out += ((self.p - x % self.p) % self.p) * base;
            base *= self.p;
            x /= self.p;
        }
        FieldElement(out as u32)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.m == 1 {
            return FieldElement(((a.0 as u64 * b.0 as u64) % self.p) as u32);
        }
        let av = self.coords(a);
        let bv = self.coords(b);
        let m = self.m as usize;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &ai) in av.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in bv.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % self.p;
            }
        }
        // reduce mod the monic modulus
        for k in (m..2 * m - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for j in 0..m {
                let sub = c * self.modulus[j] % self.p;
                prod[k - m + j] = (prod[k - m + j] + self.p - sub) % self.p;
            }
        }
        let mut packed = 0u64;
        let mut base = 1u64;
        for &c in prod.iter().take(m) {
            packed += c * base;
            base *= self.p;
        }
        FieldElement(packed as u32)
    }

    /// `x^e` for a non-negative exponent (`0^0 = 1`).
    pub fn pow_u(&self, x: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return self.one();
        }
        if x.is_zero() {
            return self.zero();
        }
        // reduce via the multiplicative order
        let e = e % (self.q - 1);
        if e == 0 {
            return self.one();
        }
        if let Some(pow) = &self.pow_table {
            if let Some(dlog) = &self.dlog_table {
                let k = dlog[x.0 as usize] as u64;
                return FieldElement(pow[((k * e) % (self.q - 1)) as usize]);
            }
        }
        let mut base = x;
        let mut acc = self.one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement, FieldError> {
        if x.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow_u(x, self.q - 2))
    }

    /// `x^e` for any integer exponent; negative exponents require `x != 0`.
    pub fn pow(&self, x: FieldElement, e: i64) -> Result<FieldElement, FieldError> {
        if e >= 0 {
            return Ok(self.pow_u(x, e as u64));
        }
        if x.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let inv = self.inv(x)?;
        Ok(self.pow_u(inv, e.unsigned_abs()))
    }

    /// Discrete log base `gamma`: the exponent `e` in `[0, q-2]` with
    /// `gamma^e = x`. Table lookup when available, baby-step giant-step
    /// otherwise.
    pub fn dlog(&self, x: FieldElement) -> Result<u64, FieldError> {
        if x.is_zero() {
            return Err(FieldError::ZeroArgument);
        }
        if let Some(table) = &self.dlog_table {
            return Ok(table[x.0 as usize] as u64);
        }
        self.dlog_bsgs(x)
    }

    fn dlog_bsgs(&self, x: FieldElement) -> Result<u64, FieldError> {
        let n = self.q - 1;
        let mut m = 1u64;
        while m * m < n {
            m += 1;
        }
        let mut baby = alloc::collections::BTreeMap::new();
        let mut cur = self.one();
        for j in 0..m {
            baby.entry(cur.0).or_insert(j);
            cur = self.mul(cur, self.gamma);
        }
        // giant step multiplies by gamma^{-m}
        let giant = self.pow_u(self.inv(self.gamma)?, m);
        let mut probe = x;
        for i in 0..=m {
            if let Some(&j) = baby.get(&probe.0) {
                return Ok((i * m + j) % n);
            }
            probe = self.mul(probe, giant);
        }
        Err(FieldError::ZeroArgument)
    }

    /// `gamma^e` via the power table when present.
    pub fn gamma_pow(&self, e: u64) -> FieldElement {
        let e = e % (self.q - 1);
        if let Some(pow) = &self.pow_table {
            return FieldElement(pow[e as usize]);
        }
        self.pow_u(self.gamma, e)
    }

    /// Trace onto the subfield `F_{p^d}` (`d | m`):
    /// `sum_{i=0}^{m/d - 1} x^{(p^d)^i}`. The result is returned in this
    /// field's representation; it is fixed by the subfield Frobenius.
    /// `d = 1` gives the absolute trace.
    pub fn trace(&self, sub_degree: u32, x: FieldElement) -> Result<FieldElement, FieldError> {
        if sub_degree == 0 || self.m % sub_degree != 0 {
            return Err(FieldError::BadSubfield);
        }
        let frob = self.p.pow(sub_degree);
        let mut acc = x;
        let mut y = x;
        for _ in 1..(self.m / sub_degree) {
            y = self.pow_u(y, frob);
            acc = self.add(acc, y);
        }
        Ok(acc)
    }

    /// Absolute trace to `F_p`, as an integer in `[0, p)`.
    pub fn abs_trace(&self, x: FieldElement) -> u64 {
        if let Some(t) = &self.trace_table {
            return t[x.0 as usize] as u64;
        }
        if self.m == 1 {
            return x.0 as u64;
        }
        let tr = self.trace(1, x).expect("1 divides m");
        // absolute trace lands in F_p, i.e. the constant coordinate
        tr.0 as u64 % self.p
    }

    /// The `n`-th roots of unity, `n | q - 1`, as
    /// `[gamma^{(q-1)i/n} for i in 0..n]`.
    pub fn roots_of_unity(&self, n: u64) -> Result<Vec<FieldElement>, FieldError> {
        if n == 0 || (self.q - 1) % n != 0 {
            return Err(FieldError::NotDivisor);
        }
        let step = (self.q - 1) / n;
        Ok((0..n).map(|i| self.gamma_pow(step * i)).collect())
    }

    /// Compare by coordinate vectors, low-degree coordinate first. This is
    /// the order used to pick the "smallest" primitive element.
    pub fn cmp_elems(&self, a: FieldElement, b: FieldElement) -> core::cmp::Ordering {
        if self.m == 1 {
            return a.0.cmp(&b.0);
        }
        self.coords(a).cmp(&self.coords(b))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: FieldElement) -> Result<u64, FieldError> {
        if x.is_zero() {
            return Err(FieldError::ZeroArgument);
        }
        let mut ord = self.q - 1;
        for w in prime_factors(self.q - 1) {
            while ord % w == 0 && self.pow_u(x, ord / w) == self.one() {
                ord /= w;
            }
        }
        Ok(ord)
    }

    pub fn is_primitive(&self, x: FieldElement) -> bool {
        !x.is_zero() && self.order(x) == Ok(self.q - 1)
    }

    pub fn elem_to_string(&self, x: FieldElement) -> String {
        if self.m == 1 {
            alloc::format!("{}", x.0)
        } else {
            let coords = self.coords(x);
            let inner: Vec<String> = coords.iter().map(|c| alloc::format!("{c}")).collect();
            alloc::format!("[{}]", inner.join(","))
        }
    }

    fn find_gamma(&self) -> Result<FieldElement, FieldError> {
        // Enumerate in the low-degree-first lexicographic element order.
        for k in 1..self.q {
            let candidate = if self.m == 1 {
                FieldElement(k as u32)
            } else {
                // digits of k base p, most significant digit = constant coord
                let mut digits = vec![0u64; self.m as usize];
                let mut v = k;
                for i in (0..self.m as usize).rev() {
                    digits[i] = v % self.p;
                    v /= self.p;
                }
                self.from_coords(&digits).unwrap()
            };
            if self.is_primitive(candidate) {
                return Ok(candidate);
            }
        }
        Err(FieldError::NoPrimitiveModulus)
    }

    fn build_tables(&mut self) {
        let n = (self.q - 1) as usize;
        let mut pow = Vec::with_capacity(n);
        let mut dlog = vec![0u32; self.q as usize];
        let mut acc = self.one();
        for e in 0..n {
            pow.push(acc.0);
            dlog[acc.0 as usize] = e as u32;
            acc = self.mul(acc, self.gamma);
        }
        debug_assert_eq!(acc, self.one(), "gamma must have order q - 1");

        // absolute trace is F_p-linear: trace the basis, then combine
        let mut basis_tr = vec![0u64; self.m as usize];
        for (i, bt) in basis_tr.iter_mut().enumerate() {
            let mut coords = vec![0u64; self.m as usize];
            coords[i] = 1;
            let b = self.from_coords(&coords).unwrap();
            let tr = self.trace(1, b).expect("1 divides m");
            *bt = tr.0 as u64 % self.p;
        }
        let mut trace = vec![0u32; self.q as usize];
        for (idx, slot) in trace.iter_mut().enumerate() {
            let mut v = idx as u64;
            let mut acc = 0u64;
            for &bt in &basis_tr {
                acc += (v % self.p) * bt;
                v /= self.p;
            }
            *slot = (acc % self.p) as u32;
        }

        self.pow_table = Some(pow);
        self.dlog_table = Some(dlog);
        self.trace_table = Some(trace);
    }
}

/// Canonical modulus: lexicographically smallest monic irreducible with a
/// primitive residue class of `x` (see [`FieldSpec::new`]).
fn canonical_modulus(p: u64, m: u32) -> Result<Vec<u64>, FieldError> {
    if m == 1 {
        return Ok(vec![0, 1]);
    }
    let mut count = 1u64;
    for _ in 0..m {
        count *= p;
    }
    for k in 0..count {
        // digits of k base p with the constant coordinate most significant
        let mut coeffs = vec![0u64; m as usize + 1];
        coeffs[m as usize] = 1;
        let mut v = k;
        for i in (0..m as usize).rev() {
            coeffs[i] = v % p;
            v /= p;
        }
        if coeffs[0] == 0 {
            continue; // x divides it
        }
        if !poly_is_irreducible(&coeffs, p) {
            continue;
        }
        if x_is_primitive(&coeffs, p, m) {
            return Ok(coeffs);
        }
    }
    Err(FieldError::NoPrimitiveModulus)
}

/// Check that the residue class of `x` generates the multiplicative group.
fn x_is_primitive(modulus: &[u64], p: u64, m: u32) -> bool {
    let q = p.pow(m);
    let x = poly_from_coeffs(&[0, 1], p);
    if poly_powmod(&x, q - 1, modulus, p) != vec![1] {
        return false;
    }
    for w in prime_factors(q - 1) {
        if poly_powmod(&x, (q - 1) / w, modulus, p) == vec![1] {
            return false;
        }
    }
    true
}

// --- dense polynomial helpers over F_p, used only at construction time ---

fn poly_from_coeffs(coeffs: &[u64], p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = coeffs.iter().map(|&c| c % p).collect();
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    if v.is_empty() {
        v.push(0);
    }
    v
}

fn poly_mulmod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    poly_rem(&prod, modulus, p)
}

fn poly_rem(a: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let m = modulus.len() - 1;
    let mut rem: Vec<u64> = a.to_vec();
    while rem.len() > m {
        let k = rem.len() - 1;
        let c = rem[k];
        rem.pop();
        if c == 0 {
            continue;
        }
        for j in 0..m {
            let sub = c * modulus[j] % p;
            rem[k - m + j] = (rem[k - m + j] + p - sub) % p;
        }
    }
    while rem.len() > 1 && *rem.last().unwrap() == 0 {
        rem.pop();
    }
    if rem.is_empty() {
        rem.push(0);
    }
    rem
}

fn poly_powmod(base: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut base = poly_rem(base, modulus, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &base, modulus, p);
        }
        base = poly_mulmod(&base, &base, modulus, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !(b.len() == 1 && b[0] == 0) {
        let r = poly_rem_general(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Remainder by a not-necessarily-monic divisor.
fn poly_rem_general(a: &[u64], d: &[u64], p: u64) -> Vec<u64> {
    let deg_d = d.len() - 1;
    if deg_d == 0 {
        return vec![0]; // nonzero constant divides everything
    }
    let dl = *d.last().unwrap();
    let inv = mod_inv(dl, p);
    let mut rem = a.to_vec();
    while rem.len() > deg_d && !(rem.len() == 1 && rem[0] == 0) {
        let k = rem.len() - 1;
        let c = rem[k] * inv % p;
        rem.pop();
        if c == 0 {
            continue;
        }
        for j in 0..deg_d {
            let sub = c * d[j] % p;
            rem[k - deg_d + j] = (rem[k - deg_d + j] + p - sub) % p;
        }
        while rem.len() > 1 && *rem.last().unwrap() == 0 {
            rem.pop();
        }
    }
    while rem.len() > 1 && *rem.last().unwrap() == 0 {
        rem.pop();
    }
    rem
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime, a != 0
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Rabin's test: `f` monic of degree `m` is irreducible over `F_p` iff
/// `x^{p^m} = x mod f` and `gcd(x^{p^{m/w}} - x, f) = 1` for each prime `w | m`.
fn poly_is_irreducible(modulus: &[u64], p: u64) -> bool {
    let m = (modulus.len() - 1) as u32;
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    let x = poly_from_coeffs(&[0, 1], p);
    let qm = p.pow(m);
    let frob_m = poly_powmod(&x, qm, modulus, p);
    if frob_m != x {
        return false;
    }
    for w in prime_factors(m as u64) {
        let e = p.pow(m / w as u32);
        let frob = poly_powmod(&x, e, modulus, p);
        // gcd(frob - x, modulus) must be trivial
        let mut diff = vec![0u64; frob.len().max(2)];
        for (i, &c) in frob.iter().enumerate() {
            diff[i] = c;
        }
        diff[1] = (diff[1] + p - 1) % p;
        let diff = poly_from_coeffs(&diff, p);
        if diff == vec![0] {
            return false;
        }
        let g = poly_gcd(modulus, &diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}
