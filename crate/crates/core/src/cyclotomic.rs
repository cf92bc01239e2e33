//! Exact values in `Z[zeta_p]`, the ring where additive character sums live.
//!
//! A value is an integer coefficient vector indexed by powers of
//! `zeta_p = e^{2*pi*i/p}`. Since `1 + zeta + ... + zeta^{p-1} = 0`, the
//! representation is made canonical by forcing the last coefficient to zero;
//! two values are equal iff their canonical vectors are equal. Equality is
//! always exact; floating point appears only in [`CyclotomicValue::abs`],
//! which returns a conservative error bound alongside the magnitude.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::field::{FieldElement, FieldSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CyclotomicError {
    /// Operands live in different `Z[zeta_p]`.
    PrimeMismatch,
}

impl fmt::Display for CyclotomicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("cyclotomic values have different primes")
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CyclotomicError {}

/// An element of `Z[zeta_p]` in canonical form (`coeffs[p-1] == 0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicValue {
    prime: u64,
    coeffs: Vec<i64>,
}

impl CyclotomicValue {
    pub fn zero(prime: u64) -> CyclotomicValue {
        CyclotomicValue { prime, coeffs: vec![0; prime as usize] }
    }

    /// `n * zeta_p^exp`, canonicalized.
    pub fn root_power(prime: u64, exp: u64, n: i64) -> CyclotomicValue {
        let mut v = CyclotomicValue::zero(prime);
        v.coeffs[(exp % prime) as usize] = n;
        v.canonicalize();
        v
    }

    /// The integer `n` as a cyclotomic value.
    pub fn integer(prime: u64, n: i64) -> CyclotomicValue {
        CyclotomicValue::root_power(prime, 0, n)
    }

    /// Construct from a raw coefficient vector of length `p`.
    pub fn from_coeffs(prime: u64, coeffs: Vec<i64>) -> Option<CyclotomicValue> {
        if coeffs.len() != prime as usize {
            return None;
        }
        let mut v = CyclotomicValue { prime, coeffs };
        v.canonicalize();
        Some(v)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Canonical coefficients (length `p`, last entry zero).
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// If the value is a plain integer (only the `zeta^0` coefficient may be
    /// nonzero), return it.
    pub fn as_integer(&self) -> Option<i64> {
        if self.coeffs.iter().skip(1).all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    /// Subtract `coeffs[p-1]` from every entry (valid because the powers of
    /// `zeta_p` sum to zero). Idempotent.
    fn canonicalize(&mut self) {
        let last = *self.coeffs.last().unwrap();
        if last != 0 {
            for c in &mut self.coeffs {
                *c -= last;
            }
        }
    }

    pub fn add(&self, other: &CyclotomicValue) -> Result<CyclotomicValue, CyclotomicError> {
        if self.prime != other.prime {
            return Err(CyclotomicError::PrimeMismatch);
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        let mut v = CyclotomicValue { prime: self.prime, coeffs };
        v.canonicalize();
        Ok(v)
    }

    pub fn sub(&self, other: &CyclotomicValue) -> Result<CyclotomicValue, CyclotomicError> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, n: i64) -> CyclotomicValue {
        let coeffs = self.coeffs.iter().map(|c| c * n).collect();
        let mut v = CyclotomicValue { prime: self.prime, coeffs };
        v.canonicalize();
        v
    }

    /// Magnitude `|sum coeffs[j] * e^{2*pi*i*j/p}|` in binary64, together
    /// with a conservative forward error bound
    /// `8 * p * max|coeff| * machine_epsilon`.
    pub fn abs(&self) -> (f64, f64) {
        let p = self.prime as f64;
        let mut re = 0.0f64;
        let mut im = 0.0f64;
        let mut max_c = 0i64;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            max_c = max_c.max(c.abs());
            let theta = 2.0 * PI * (j as f64) / p;
            re += c as f64 * libm::cos(theta);
            im += c as f64 * libm::sin(theta);
        }
        let value = libm::sqrt(re * re + im * im);
        let err = 8.0 * p * (max_c as f64) * f64::EPSILON;
        (value, err)
    }
}

/// The canonical additive character `psi(x) = zeta_p^{Tr(x)}`, `Tr` the
/// absolute trace to `F_p`. Other characters `psi_c(x) = psi(c*x)` are
/// obtained by pre-scaling the argument.
pub fn cv_char(spec: &FieldSpec, x: FieldElement) -> CyclotomicValue {
    CyclotomicValue::root_power(spec.p(), spec.abs_trace(x), 1)
}

/// Accumulator for character sums: raw root-power tallies, turned into a
/// canonical [`CyclotomicValue`] once at the end.
#[derive(Debug, Clone)]
pub struct CharSumAccumulator {
    prime: u64,
    tallies: Vec<i64>,
}

impl CharSumAccumulator {
    pub fn new(prime: u64) -> CharSumAccumulator {
        CharSumAccumulator { prime, tallies: vec![0; prime as usize] }
    }

    /// Add `n * zeta_p^exp`; `exp` is typically a trace value already in
    /// `[0, p)`.
    #[inline]
    pub fn add_root(&mut self, exp: u64, n: i64) {
        self.tallies[(exp % self.prime) as usize] += n;
    }

    pub fn finish(self) -> CyclotomicValue {
        CyclotomicValue::from_coeffs(self.prime, self.tallies).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    #[test]
    fn char_examples() {
        let f7 = FieldSpec::new(7, 1, None).unwrap();
        let one = cv_char(&f7, f7.zero());
        assert_eq!(one, CyclotomicValue::integer(7, 1));
        assert_eq!(cv_char(&f7, f7.from_int(3)), CyclotomicValue::root_power(7, 3, 1));

        let f9 = FieldSpec::new(3, 2, None).unwrap();
        assert_eq!(cv_char(&f9, f9.one()), CyclotomicValue::root_power(3, 2, 1));
    }

    #[test]
    fn canonical_reduction() {
        // 1 + zeta + ... + zeta^6 = 0 for p = 7
        let mut all = CharSumAccumulator::new(7);
        for j in 0..7 {
            all.add_root(j, 1);
        }
        assert!(all.finish().is_zero());
        // idempotence of canonical form: re-canonicalizing changes nothing
        let v = CyclotomicValue::from_coeffs(7, vec![5, 0, 0, 1, 1, 0, 0]).unwrap();
        assert_eq!(CyclotomicValue::from_coeffs(7, v.coeffs().to_vec()).unwrap(), v);
    }

    #[test]
    fn add_and_scale() {
        let a = CyclotomicValue::root_power(7, 1, 1);
        let b = CyclotomicValue::root_power(7, 2, 1);
        let s = a.add(&b).unwrap();
        assert_eq!(s.coeffs(), &[0, 1, 1, 0, 0, 0, 0]);
        assert_eq!(CyclotomicValue::integer(7, 1).scale(7), CyclotomicValue::integer(7, 7));
        let other_p = CyclotomicValue::integer(5, 1);
        assert_eq!(a.add(&other_p), Err(CyclotomicError::PrimeMismatch));
    }

    #[test]
    fn add_is_associative_and_commutative() {
        let vals: Vec<CyclotomicValue> = (0..5)
            .map(|i| CyclotomicValue::from_coeffs(5, vec![i, 2 * i - 3, -i, i * i, 1]).unwrap())
            .collect();
        for a in &vals {
            for b in &vals {
                assert_eq!(a.add(b).unwrap(), b.add(a).unwrap());
                for c in &vals {
                    let left = a.add(b).unwrap().add(c).unwrap();
                    let right = a.add(&b.add(c).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn abs_examples() {
        let (z, _) = CyclotomicValue::zero(7).abs();
        assert_eq!(z, 0.0);

        let (q, err) = CyclotomicValue::integer(7, 7).abs();
        assert!((q - 7.0).abs() <= err.max(1e-12));

        // 5 + zeta^3 + zeta^4 = 5 + 2cos(6*pi/7)
        let v = CyclotomicValue::from_coeffs(7, vec![5, 0, 0, 1, 1, 0, 0]).unwrap();
        let (a, _) = v.abs();
        let expected = 5.0 + 2.0 * libm::cos(6.0 * PI / 7.0);
        assert!((a - expected).abs() < 1e-12);
        assert!((a - 3.1980622).abs() < 1e-6);
    }

    #[test]
    fn characters_have_unit_magnitude() {
        for (p, m) in [(7, 1), (3, 2), (2, 4), (13, 1)] {
            let f = FieldSpec::new(p, m, None).unwrap();
            for x in f.elements() {
                let (a, err) = cv_char(&f, x).abs();
                assert!((a - 1.0).abs() <= err.max(1e-12));
            }
        }
    }

    #[test]
    fn full_sum_of_scaled_character() {
        // sum over x of psi(c*x): exactly q for c = 0, exactly 0 otherwise
        for (p, m) in [(7, 1), (3, 2), (2, 4)] {
            let f = FieldSpec::new(p, m, None).unwrap();
            for c in f.elements() {
                let mut acc = CharSumAccumulator::new(p);
                for x in f.elements() {
                    acc.add_root(f.abs_trace(f.mul(c, x)), 1);
                }
                let acc = acc.finish();
                if c.is_zero() {
                    assert_eq!(acc, CyclotomicValue::integer(p, f.q() as i64));
                } else {
                    assert!(acc.is_zero());
                }
            }
        }
    }
}
