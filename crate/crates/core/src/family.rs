//! Deterministic polynomial families for sweeps, and the seeded generator
//! behind the `random` family.
//!
//! Random field elements are produced by splitmix64 mixing followed by a
//! rejection-free modular reduction of dlog exponents: a nonzero element is
//! `gamma^(w mod (q-1))`, a possibly-zero element maps `w mod q` to zero on
//! `0` and to `gamma^(w mod q - 1)` otherwise. Identical seeds therefore
//! give identical corpora on every platform.

use alloc::vec::Vec;

use crate::field::{FieldElement, FieldSpec};
use crate::poly::SparsePoly;

/// splitmix64: the 64-bit mixer with the golden-ratio increment.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// A field element, zero included.
    pub fn element(&mut self, spec: &FieldSpec) -> FieldElement {
        let w = self.next_u64() % spec.q();
        if w == 0 {
            spec.zero()
        } else {
            spec.gamma_pow(w - 1)
        }
    }

    /// A nonzero field element.
    pub fn nonzero_element(&mut self, spec: &FieldSpec) -> FieldElement {
        spec.gamma_pow(self.next_u64() % (spec.q() - 1))
    }
}

/// A named family of polynomials over one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyFamily {
    /// `a x^n + b`-free monomials `a x^n`, `1 <= n <= q-1`, `a != 0`.
    Monomials,
    /// Monic binomials `x^n + a x^r`, `1 <= r < n <= q-1`, `a != 0`.
    Binomials,
    /// Monic trinomials `x^n + c x^j + d x^r`, `r < j < n <= max_degree`,
    /// `c, d != 0`.
    Trinomials { max_degree: u64 },
    /// Every polynomial with all coefficients free, degree `<= max_degree`.
    AllDense { max_degree: u64 },
    /// Every monic polynomial of degree exactly 1..=`max_degree` with the
    /// lower coefficients free.
    MonicDense { max_degree: u64 },
    /// Seeded random dense polynomials of degree `<= max_degree`.
    Random { count: u64, max_degree: u64 },
    Explicit(Vec<SparsePoly>),
}

impl PolyFamily {
    /// Stream every member, in a deterministic order, skipping constants.
    pub fn for_each(&self, spec: &FieldSpec, seed: u64, mut visit: impl FnMut(SparsePoly)) {
        let q = spec.q();
        match self {
            PolyFamily::Monomials => {
                for n in 1..q {
                    for a_dlog in 0..q - 1 {
                        let a = spec.gamma_pow(a_dlog);
                        visit(SparsePoly::from_terms(spec, [(n, a)]));
                    }
                }
            }
            PolyFamily::Binomials => {
                for n in 2..q {
                    for r in 1..n {
                        for a_dlog in 0..q - 1 {
                            let a = spec.gamma_pow(a_dlog);
                            visit(SparsePoly::from_terms(spec, [(n, spec.one()), (r, a)]));
                        }
                    }
                }
            }
            PolyFamily::Trinomials { max_degree } => {
                let top = (*max_degree).min(q - 1);
                for n in 3..=top.max(2) {
                    for j in 2..n {
                        for r in 1..j {
                            for c_dlog in 0..q - 1 {
                                for d_dlog in 0..q - 1 {
                                    let c = spec.gamma_pow(c_dlog);
                                    let d = spec.gamma_pow(d_dlog);
                                    visit(SparsePoly::from_terms(
                                        spec,
                                        [(n, spec.one()), (j, c), (r, d)],
                                    ));
                                }
                            }
                        }
                    }
                }
            }
            PolyFamily::AllDense { max_degree } => {
                let deg = (*max_degree).min(q - 1);
                let total = dense_count(q, deg);
                for code in 0..total {
                    let g = dense_poly(spec, code, deg);
                    if !g.is_constant() {
                        visit(g);
                    }
                }
            }
            PolyFamily::MonicDense { max_degree } => {
                let top = (*max_degree).min(q - 1);
                for n in 1..=top {
                    let lower = dense_count(q, n - 1);
                    for code in 0..lower {
                        let mut g = dense_poly(spec, code, n - 1);
                        g = SparsePoly::from_terms(
                            spec,
                            g.terms().iter().copied().chain([(n, spec.one())]),
                        );
                        visit(g);
                    }
                }
            }
            PolyFamily::Random { count, max_degree } => {
                let mut rng = SplitMix64::new(seed);
                let mut emitted = 0;
                while emitted < *count {
                    let g = random_poly(spec, &mut rng, *max_degree);
                    if g.is_constant() {
                        continue;
                    }
                    emitted += 1;
                    visit(g);
                }
            }
            PolyFamily::Explicit(polys) => {
                for g in polys {
                    visit(g.clone());
                }
            }
        }
    }

    /// Collect the family (use only when the family is known to be small).
    pub fn collect(&self, spec: &FieldSpec, seed: u64) -> Vec<SparsePoly> {
        let mut out = Vec::new();
        self.for_each(spec, seed, |g| out.push(g));
        out
    }
}

/// Number of coefficient vectors of degree `<= max_degree`: `q^(max_degree+1)`.
pub fn dense_count(q: u64, max_degree: u64) -> u64 {
    q.pow(max_degree as u32 + 1)
}

/// The `code`-th dense polynomial: base-`q` digits of `code` are the
/// coefficients, constant term first. Exponent `e`'s coefficient is digit
/// `e`; nonzero digits map to `gamma^(digit-1)` so every element appears.
pub fn dense_poly(spec: &FieldSpec, code: u64, max_degree: u64) -> SparsePoly {
    let q = spec.q();
    let mut v = code;
    let mut terms = Vec::new();
    for e in 0..=max_degree {
        let digit = v % q;
        v /= q;
        if digit != 0 {
            terms.push((e, spec.gamma_pow(digit - 1)));
        }
    }
    // exponents ascend by construction
    SparsePoly::from_sorted_terms(terms)
}

/// A seeded random dense polynomial of degree `<= max_degree`.
pub fn random_poly(spec: &FieldSpec, rng: &mut SplitMix64, max_degree: u64) -> SparsePoly {
    let mut terms = Vec::new();
    for e in 0..=max_degree {
        let c = rng.element(spec);
        if !c.is_zero() {
            terms.push((e, c));
        }
    }
    SparsePoly::from_terms(spec, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_values() {
        // the well-known first outputs for seed 1234567
        let mut rng = SplitMix64::new(1234567);
        assert_eq!(rng.next_u64(), 6457827717110365317);
        assert_eq!(rng.next_u64(), 3203168211198807973);
    }

    #[test]
    fn element_mapping_is_deterministic_and_covers() {
        let f7 = FieldSpec::new(7, 1, None).unwrap();
        let mut rng = SplitMix64::new(42);
        let mut seen = [false; 7];
        for _ in 0..200 {
            seen[rng.element(&f7).index() as usize] = true;
        }
        assert!(seen.iter().all(|&s| s));
        let mut rng2 = SplitMix64::new(42);
        let mut rng3 = SplitMix64::new(42);
        for _ in 0..50 {
            assert_eq!(rng2.element(&f7), rng3.element(&f7));
        }
    }

    #[test]
    fn binomial_family_count() {
        let f5 = FieldSpec::new(5, 1, None).unwrap();
        let polys = PolyFamily::Binomials.collect(&f5, 0);
        // n in 2..=4, r < n, a in F_5^*: (1 + 2 + 3) * 4 = 24
        assert_eq!(polys.len(), 24);
        for g in &polys {
            assert_eq!(g.terms().len(), 2);
        }
    }

    #[test]
    fn dense_enumeration_hits_every_polynomial() {
        let f3 = FieldSpec::new(3, 1, None).unwrap();
        let mut seen = alloc::collections::BTreeSet::new();
        for code in 0..dense_count(3, 2) {
            seen.insert(alloc::format!("{:?}", dense_poly(&f3, code, 2)));
        }
        assert_eq!(seen.len(), 27);
    }

    #[test]
    fn monic_dense_family() {
        let f3 = FieldSpec::new(3, 1, None).unwrap();
        let polys = PolyFamily::MonicDense { max_degree: 2 }.collect(&f3, 0);
        // degree 1: 3, degree 2: 9
        assert_eq!(polys.len(), 12);
        for g in &polys {
            assert_eq!(g.leading_coeff(), Some(f3.one()));
        }
    }

    #[test]
    fn random_family_reproducible() {
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        let a = PolyFamily::Random { count: 20, max_degree: 6 }.collect(&f9, 7);
        let b = PolyFamily::Random { count: 20, max_degree: 6 }.collect(&f9, 7);
        let c = PolyFamily::Random { count: 20, max_degree: 6 }.collect(&f9, 8);
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.iter().all(|g| !g.is_constant()));
    }
}
