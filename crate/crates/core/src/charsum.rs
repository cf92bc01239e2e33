//! Exact character sums, computed along independent routes.
//!
//! [`char_sum_full`] walks every element of the field and evaluates the
//! polynomial directly. [`char_sum_via_cosets`] never touches the polynomial:
//! it walks each cyclotomic coset and applies the branch monomials of the
//! piecewise map. Agreement of the two (exact vector equality in `Z[zeta_p]`)
//! is the crate's central self-check.
//!
//! Sums iterate `F_q` in the fixed order `0, gamma^0, gamma^1, ...` so that
//! partial sums are reproducible; partitioned partial sums merge by
//! [`CyclotomicValue::add`] to the bit-identical total.

use alloc::vec::Vec;
use core::fmt;

use crate::cyclotomic::{cv_char, CharSumAccumulator, CyclotomicValue};
use crate::field::{FieldElement, FieldSpec};
use crate::index::CyclotomicMapping;
use crate::poly::SparsePoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharsumError {
    /// The mapping's branch count does not divide `q - 1` (or the branch
    /// list has the wrong length).
    BranchMismatch,
}

impl fmt::Display for CharsumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("mapping branches do not match the field")
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CharsumError {}

/// `sum_{x in F_q} psi(g(x))`, exactly.
pub fn char_sum_full(spec: &FieldSpec, g: &SparsePoly) -> CyclotomicValue {
    let g = g.canonicalize(spec);
    let q1 = spec.q() - 1;
    let mut acc = CharSumAccumulator::new(spec.p());

    // x = 0 first
    let constant = g.constant_term();
    acc.add_root(spec.abs_trace(constant), 1);

    // then x = gamma^j for j = 0..q-2, with the exponent of each term
    // advanced incrementally: c*x^e at gamma^j is gamma^{dlog(c) + j*e}
    let mut walkers: Vec<(u64, u64)> = Vec::new(); // (current exponent, step)
    for &(e, c) in g.terms() {
        if e == 0 {
            continue;
        }
        let k = spec.dlog(c).expect("coefficients are nonzero");
        walkers.push((k, e % q1));
    }
    for _ in 0..q1 {
        let mut val = constant;
        for w in &mut walkers {
            val = spec.add(val, spec.gamma_pow(w.0));
            w.0 += w.1;
            if w.0 >= q1 {
                w.0 -= q1;
            }
        }
        acc.add_root(spec.abs_trace(val), 1);
    }
    acc.finish()
}

/// `sum_{x nonzero in F_q} psi(g(x))` = full sum minus `psi(g(0))`.
pub fn char_sum_nonzero(spec: &FieldSpec, g: &SparsePoly) -> CyclotomicValue {
    let full = char_sum_full(spec, g);
    let at_zero = cv_char(spec, g.canonicalize(spec).constant_term());
    full.sub(&at_zero).expect("same prime")
}

/// The coset-route sum: `psi(b)` for `x = 0`, then for each coset `C_i`
/// (walked directly, so no division by `d` ever happens in `Z[zeta_p]`)
/// the values `psi(a_i * R_i(y) + b)`.
pub fn char_sum_via_cosets(
    spec: &FieldSpec,
    map: &CyclotomicMapping,
    offset: FieldElement,
) -> Result<CyclotomicValue, CharsumError> {
    let q1 = spec.q() - 1;
    let d = map.d;
    if d == 0 || q1 % d != 0 || map.branches.len() != d as usize {
        return Err(CharsumError::BranchMismatch);
    }
    let s = q1 / d;
    let mut acc = CharSumAccumulator::new(spec.p());

    // the map sends 0 to 0, so x = 0 contributes psi(b)
    let offset_trace = spec.abs_trace(offset);
    acc.add_root(offset_trace, 1);

    for (i, (a_i, r_i)) in map.branches.iter().enumerate() {
        if a_i.is_zero() {
            acc.add_root(offset_trace, s as i64);
            continue;
        }
        if let [(e, c)] = r_i.terms() {
            // monomial branch: a_i * c * y^e with y = gamma^{i + d t}
            let k = spec.dlog(spec.mul(*a_i, *c)).expect("nonzero");
            let mut idx = (k + (i as u64 % q1) * (e % q1)) % q1;
            let step = (d % q1) * (e % q1) % q1;
            if offset.is_zero() {
                for _ in 0..s {
                    acc.add_root(spec.abs_trace(spec.gamma_pow(idx)), 1);
                    idx = (idx + step) % q1;
                }
            } else {
                for _ in 0..s {
                    let val = spec.add(spec.gamma_pow(idx), offset);
                    acc.add_root(spec.abs_trace(val), 1);
                    idx = (idx + step) % q1;
                }
            }
        } else {
            for t in 0..s {
                let y = spec.gamma_pow(i as u64 + d * t);
                let val = spec.add(spec.mul(*a_i, r_i.eval(spec, y)), offset);
                acc.add_root(spec.abs_trace(val), 1);
            }
        }
    }
    Ok(acc.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldElement;
    use crate::index::{index_form, mapping_from_index};
    use proptest::prelude::*;

    fn f7() -> FieldSpec {
        FieldSpec::new(7, 1, None).unwrap()
    }

    fn quintic(spec: &FieldSpec) -> SparsePoly {
        SparsePoly::from_int_terms(spec, &[(5, 1), (3, 1), (1, 1)])
    }

    /// Slow reference: evaluate and tally, no exponent tricks.
    fn naive_full(spec: &FieldSpec, g: &SparsePoly) -> CyclotomicValue {
        let mut acc = CharSumAccumulator::new(spec.p());
        for x in spec.elements() {
            acc.add_root(spec.abs_trace(g.eval(spec, x)), 1);
        }
        acc.finish()
    }

    #[test]
    fn full_sum_examples() {
        let f = f7();
        assert_eq!(char_sum_full(&f, &SparsePoly::zero()), CyclotomicValue::integer(7, 7));
        let x = SparsePoly::from_int_terms(&f, &[(1, 1)]);
        assert!(char_sum_full(&f, &x).is_zero());
        let s = char_sum_full(&f, &quintic(&f));
        assert_eq!(s.coeffs(), &[5, 0, 0, 1, 1, 0, 0]);
    }

    #[test]
    fn full_matches_naive() {
        for (p, m) in [(7, 1), (3, 2), (2, 4), (13, 1)] {
            let f = FieldSpec::new(p, m, None).unwrap();
            let polys = [
                SparsePoly::from_int_terms(&f, &[(5, 1), (3, 1), (1, 1)]),
                SparsePoly::from_int_terms(&f, &[(4, 2), (0, 1)]),
                SparsePoly::from_int_terms(&f, &[(2, 1)]),
                SparsePoly::from_int_terms(&f, &[(f.q() - 1, 1), (1, 1)]),
            ];
            for g in &polys {
                assert_eq!(char_sum_full(&f, g), naive_full(&f, g), "g = {:?}", g);
            }
        }
    }

    #[test]
    fn nonzero_sum_examples() {
        let f = f7();
        assert_eq!(char_sum_nonzero(&f, &SparsePoly::zero()), CyclotomicValue::integer(7, 6));
        let x = SparsePoly::from_int_terms(&f, &[(1, 1)]);
        assert_eq!(char_sum_nonzero(&f, &x), CyclotomicValue::integer(7, -1));
    }

    #[test]
    fn nonzero_plus_char_at_zero_is_full() {
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        for seed in 0..50u64 {
            let g = SparsePoly::from_int_terms(
                &f9,
                &[(6, (seed % 9) as i64), (3, (seed / 9 % 9) as i64), (0, (seed % 5) as i64)],
            );
            let lhs = char_sum_nonzero(&f9, &g)
                .add(&cv_char(&f9, g.canonicalize(&f9).constant_term()))
                .unwrap();
            assert_eq!(lhs, char_sum_full(&f9, &g));
        }
    }

    #[test]
    fn coset_route_examples() {
        let f = f7();
        // paper example: exact vector equality with the direct route
        let g = quintic(&f);
        let form = index_form(&f, &g).unwrap();
        let map = mapping_from_index(&f, &form);
        let via = char_sum_via_cosets(&f, &map, form.b).unwrap();
        assert_eq!(via, char_sum_full(&f, &g));

        // single identity branch is the same as g = x
        let id = CyclotomicMapping {
            d: 1,
            branches: alloc::vec![(f.one(), SparsePoly::from_int_terms(&f, &[(1, 1)]))],
            offset: f.zero(),
        };
        assert!(char_sum_via_cosets(&f, &id, f.zero()).unwrap().is_zero());

        // all branches dead: every x maps to 0
        let dead = CyclotomicMapping {
            d: 3,
            branches: alloc::vec![
                (f.zero(), SparsePoly::from_int_terms(&f, &[(1, 1)])),
                (f.zero(), SparsePoly::from_int_terms(&f, &[(1, 1)])),
                (f.zero(), SparsePoly::from_int_terms(&f, &[(1, 1)])),
            ],
            offset: f.zero(),
        };
        assert_eq!(
            char_sum_via_cosets(&f, &dead, f.zero()).unwrap(),
            CyclotomicValue::integer(7, 7)
        );
    }

    #[test]
    fn coset_route_rejects_bad_branch_count() {
        let f = f7();
        let map = CyclotomicMapping {
            d: 4, // does not divide 6
            branches: alloc::vec![
                (f.one(), SparsePoly::from_int_terms(&f, &[(1, 1)])),
                (f.one(), SparsePoly::from_int_terms(&f, &[(1, 1)])),
                (f.one(), SparsePoly::from_int_terms(&f, &[(1, 1)])),
                (f.one(), SparsePoly::from_int_terms(&f, &[(1, 1)])),
            ],
            offset: f.zero(),
        };
        assert_eq!(char_sum_via_cosets(&f, &map, f.zero()), Err(CharsumError::BranchMismatch));
    }

    #[test]
    fn oracle_equivalence_exhaustive_small() {
        // every nonconstant polynomial of degree <= 4 over F_7 and F_9
        for (p, m) in [(7, 1), (3, 2)] {
            let f = FieldSpec::new(p, m, None).unwrap();
            let q = f.q();
            let n_codes = q.pow(5);
            for code in 0..n_codes {
                let mut v = code;
                let mut terms = Vec::new();
                for e in 0..5u64 {
                    let c = v % q;
                    v /= q;
                    if c != 0 {
                        terms.push((e, FieldElement(c as u32)));
                    }
                }
                let g = SparsePoly::from_terms(&f, terms);
                if g.is_constant() {
                    continue;
                }
                let form = index_form(&f, &g).unwrap();
                let map = mapping_from_index(&f, &form);
                let direct = char_sum_full(&f, &g);
                let coset = char_sum_via_cosets(&f, &map, form.b).unwrap();
                assert_eq!(direct, coset, "g = {}", g.to_display(&f));
            }
        }
    }

    #[test]
    fn magnitude_at_most_q() {
        let f = FieldSpec::new(5, 2, None).unwrap();
        for seed in 0..200u64 {
            let g = SparsePoly::from_int_terms(
                &f,
                &[
                    (seed % 23 + 1, (seed % 24) as i64),
                    (seed % 7 + 1, (seed % 11) as i64),
                    (0, (seed % 25) as i64),
                ],
            );
            let (a, err) = char_sum_full(&f, &g).abs();
            assert!(a <= f.q() as f64 + err);
        }
    }

    #[test]
    fn partitioned_sums_merge_exactly() {
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        let g = SparsePoly::from_int_terms(&f9, &[(7, 2), (5, 1), (2, 1), (0, 1)]);
        let total = char_sum_full(&f9, &g);
        // split the domain by dlog parity plus the zero element
        let mut parts = [CharSumAccumulator::new(3), CharSumAccumulator::new(3)];
        parts[0].add_root(f9.abs_trace(g.eval(&f9, f9.zero())), 1);
        for j in 0..f9.q() - 1 {
            let x = f9.gamma_pow(j);
            parts[(j % 2) as usize].add_root(f9.abs_trace(g.eval(&f9, x)), 1);
        }
        let [a, b] = parts;
        assert_eq!(a.finish().add(&b.finish()).unwrap(), total);
    }

    /// Test-only product in `Z[zeta_p]` (convolution of exponents mod p).
    fn cv_mul(a: &CyclotomicValue, b: &CyclotomicValue) -> CyclotomicValue {
        let p = a.prime() as usize;
        let mut out = alloc::vec![0i64; p];
        for (i, &ai) in a.coeffs().iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.coeffs().iter().enumerate() {
                out[(i + j) % p] += ai * bj;
            }
        }
        CyclotomicValue::from_coeffs(a.prime(), out).unwrap()
    }

    fn cv_conj(a: &CyclotomicValue) -> CyclotomicValue {
        let p = a.prime() as usize;
        let mut out = alloc::vec![0i64; p];
        for (i, &ai) in a.coeffs().iter().enumerate() {
            out[(p - i) % p] += ai;
        }
        CyclotomicValue::from_coeffs(a.prime(), out).unwrap()
    }

    #[test]
    fn parseval_identity() {
        // sum over c of |S(c*g)|^2 = q * #{(x, y) : g(x) = g(y)}, both sides
        // exact in Z[zeta_p]
        for (p, m) in [(7, 1), (3, 2), (11, 1)] {
            let f = FieldSpec::new(p, m, None).unwrap();
            let g = SparsePoly::from_int_terms(&f, &[(4, 1), (2, 2), (1, 1)]);
            let mut lhs = CyclotomicValue::zero(p);
            for c in f.elements() {
                let cg = g.scale(&f, c);
                let s = char_sum_full(&f, &cg);
                lhs = lhs.add(&cv_mul(&s, &cv_conj(&s))).unwrap();
            }
            let mut collisions = 0i64;
            for x in f.elements() {
                for y in f.elements() {
                    if g.eval(&f, x) == g.eval(&f, y) {
                        collisions += 1;
                    }
                }
            }
            assert_eq!(lhs, CyclotomicValue::integer(p, f.q() as i64 * collisions));
        }
    }

    proptest! {
        #[test]
        fn oracle_equivalence_random(seed in 0u64..5000) {
            // a deterministic scatter of sparse polynomials over F_25
            let f = FieldSpec::new(5, 2, None).unwrap();
            let q = f.q();
            let mut v = seed.wrapping_mul(0x9E3779B97F4A7C15) | 1;
            let mut terms = Vec::new();
            for _ in 0..4 {
                v = v.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let e = (v >> 33) % (2 * q); // deliberately allow unreduced exponents
                let c = (v >> 13) % q;
                if c != 0 {
                    terms.push((e, FieldElement(c as u32)));
                }
            }
            let g = SparsePoly::from_terms(&f, terms);
            prop_assume!(!g.canonicalize(&f).is_constant());
            let form = index_form(&f, &g).unwrap();
            let map = mapping_from_index(&f, &form);
            let direct = char_sum_full(&f, &g);
            let coset = char_sum_via_cosets(&f, &map, form.b).unwrap();
            prop_assert_eq!(direct, coset);
        }
    }
}
