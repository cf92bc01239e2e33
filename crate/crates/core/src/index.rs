//! The unique index decomposition `g = a * x^r * f(x^s) + b` and its
//! piecewise cyclotomic-mapping form.
//!
//! For a nonconstant reduced polynomial, write the exponents of `g - b` as
//! `n > n - i_1 > ... > r`. With
//! `s = gcd(n - r, n - r - i_1, ..., q - 1)` and `ell = (q - 1)/s`, the
//! polynomial factors uniquely as `a * x^r * f(x^s) + b` where `f` is monic,
//! `f(0) != 0`, and the gcd of `f`'s exponents with `ell` is 1. `ell` is the
//! *index* of `g`. A monomial `a*x^r + b` has `ell = 1` and `f = 1`.
//!
//! On each cyclotomic coset `C_i = gamma^i * C_0` (with `C_0` the nonzero
//! `ell`-th powers), `g - b` acts as `x -> a_i * x^r` with
//! `a_i = a * f(zeta^i)`, `zeta = gamma^s`. That piecewise view is the
//! [`CyclotomicMapping`], and `n0` counts its zero branches, equivalently the
//! `ell`-th roots of unity where `f` vanishes.

use alloc::vec::Vec;
use core::fmt;

use crate::field::{FieldElement, FieldSpec};
use crate::poly::SparsePoly;
use crate::util::gcd;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexError {
    /// The polynomial is constant after reduction; the index is undefined.
    ConstantPolynomial,
}

impl fmt::Display for IndexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("constant polynomial has no index decomposition")
    }
}

#[cfg(feature = "std")]
impl std::error::Error for IndexError {}

/// The unique decomposition `g = a * x^r * f(x^s) + b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexForm {
    /// Constant term `g(0)`.
    pub b: FieldElement,
    /// Leading coefficient of `g - b`.
    pub a: FieldElement,
    /// Lowest degree in `g - b` (the vanishing order at 0).
    pub r: u64,
    /// `(q - 1) / ell`.
    pub s: u64,
    /// The index.
    pub ell: u64,
    /// Monic with nonzero constant term; `gcd(exponents of f, ell) = 1`.
    pub f: SparsePoly,
    /// Number of `i in [0, ell)` with `f(zeta^i) = 0`.
    pub n0: u64,
}

impl IndexForm {
    /// Rebuild `a * x^r * f(x^s) + b` as a reduced polynomial.
    pub fn reconstruct(&self, spec: &FieldSpec) -> SparsePoly {
        let mut terms: Vec<(u64, FieldElement)> = Vec::new();
        for &(e, c) in self.f.terms() {
            terms.push((self.r + e * self.s, spec.mul(self.a, c)));
        }
        if !self.b.is_zero() {
            terms.push((0, self.b));
        }
        SparsePoly::from_terms(spec, terms).canonicalize(spec)
    }
}

/// A piecewise map: `0 -> 0` and `x -> a_i * R_i(x)` for `x in C_i`,
/// `0 <= i < d`. The additive offset of the originating polynomial is
/// carried alongside but is not part of the map itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicMapping {
    /// Number of cosets; divides `q - 1`.
    pub d: u64,
    /// `(a_i, R_i)` per coset, exactly `d` entries; each `R_i` is nonzero.
    pub branches: Vec<(FieldElement, SparsePoly)>,
    /// Constant offset `b` of the polynomial this map was derived from.
    pub offset: FieldElement,
}

impl CyclotomicMapping {
    /// Indices with a nonzero branch coefficient (the set `L`).
    pub fn live_branches(&self) -> Vec<usize> {
        self.branches
            .iter()
            .enumerate()
            .filter(|(_, (a, _))| !a.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// `n0 = d - |L|`, the number of zero branches.
    pub fn n_zero_branches(&self) -> u64 {
        self.branches.iter().filter(|(a, _)| a.is_zero()).count() as u64
    }
}

/// Reduce mod `x^q - x`; see [`SparsePoly::canonicalize`].
pub fn canonicalize(spec: &FieldSpec, g: &SparsePoly) -> SparsePoly {
    g.canonicalize(spec)
}

/// Compute the unique index decomposition of a nonconstant polynomial.
pub fn index_form(spec: &FieldSpec, g: &SparsePoly) -> Result<IndexForm, IndexError> {
    let g = g.canonicalize(spec);
    let b = g.constant_term();
    let body = g.without_constant();
    if body.is_zero() {
        return Err(IndexError::ConstantPolynomial);
    }
    let a = body.leading_coeff().expect("nonconstant");
    let r = body.terms().first().map(|&(e, _)| e).expect("nonconstant");
    let q1 = spec.q() - 1;

    let mut s = q1;
    for &(e, _) in body.terms() {
        s = gcd(s, e - r);
    }
    let ell = q1 / s;

    let a_inv = spec.inv(a).expect("leading coefficient is nonzero");
    let f = SparsePoly::from_terms(
        spec,
        body.terms().iter().map(|&(e, c)| ((e - r) / s, spec.mul(c, a_inv))),
    );

    let roots = spec.roots_of_unity(ell).expect("ell divides q - 1");
    let n0 = roots.iter().filter(|&&z| f.eval(spec, z).is_zero()).count() as u64;

    Ok(IndexForm { b, a, r, s, ell, f, n0 })
}

/// The cyclotomic mapping of an index form: `d = ell`, `R_i = x^r`,
/// `a_i = a * f(zeta^i)` with `zeta = gamma^s`.
pub fn mapping_from_index(spec: &FieldSpec, form: &IndexForm) -> CyclotomicMapping {
    let roots = spec.roots_of_unity(form.ell).expect("ell divides q - 1");
    let monomial = SparsePoly::from_terms(spec, [(form.r, spec.one())]);
    let branches = roots
        .iter()
        .map(|&z| (spec.mul(form.a, form.f.eval(spec, z)), monomial.clone()))
        .collect();
    CyclotomicMapping { d: form.ell, branches, offset: form.b }
}

/// The canonical polynomial that agrees with the piecewise map on `F_q^*`
/// and sends 0 to 0.
///
/// Built from the coset-sum presentation
/// `g(x) = (1/d) * sum_{i,j} zeta^{-ji} * a_i * x^{js} * R_i(x)` and reduced;
/// when some `R_i(0) != 0` leaves a value at 0, the correction
/// `c * (x^{q-1} - 1)` (zero on `F_q^*`, `-c` at 0) repairs it exactly.
pub fn poly_from_mapping(spec: &FieldSpec, map: &CyclotomicMapping) -> SparsePoly {
    let d = map.d;
    let q1 = spec.q() - 1;
    let s = q1 / d;
    let d_inv = spec.inv(spec.from_int(d as i64)).expect("d divides q - 1, so p does not divide d");

    let mut terms: Vec<(u64, FieldElement)> = Vec::new();
    for (i, (a_i, r_i)) in map.branches.iter().enumerate() {
        if a_i.is_zero() {
            continue;
        }
        for j in 0..d {
            // zeta^{-ji} with zeta = gamma^s
            let exp_neg = (d - (j * i as u64) % d) % d;
            let zeta_pow = spec.gamma_pow(exp_neg * s);
            let coeff = spec.mul(d_inv, spec.mul(zeta_pow, *a_i));
            for &(e, c) in r_i.terms() {
                terms.push((j * s + e, spec.mul(coeff, c)));
            }
        }
    }
    let h = SparsePoly::from_terms(spec, terms).canonicalize(spec);
    let at_zero = h.constant_term();
    if at_zero.is_zero() {
        return h;
    }
    let fix = SparsePoly::from_terms(spec, [(q1, at_zero), (0, spec.neg(at_zero))]);
    SparsePoly::from_terms(spec, h.terms().iter().copied().chain(fix.terms().iter().copied()))
        .canonicalize(spec)
}

/// Evaluate the piecewise map: 0 at 0, else `a_i * R_i(x)` with
/// `i = dlog(x) mod d`.
pub fn mapping_eval(spec: &FieldSpec, map: &CyclotomicMapping, x: FieldElement) -> FieldElement {
    if x.is_zero() {
        return FieldElement::ZERO;
    }
    let i = (spec.dlog(x).expect("x is nonzero") % map.d) as usize;
    let (a_i, r_i) = &map.branches[i];
    if a_i.is_zero() {
        return FieldElement::ZERO;
    }
    spec.mul(*a_i, r_i.eval(spec, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn f7() -> FieldSpec {
        FieldSpec::new(7, 1, None).unwrap()
    }

    fn paper_quintic(spec: &FieldSpec) -> SparsePoly {
        SparsePoly::from_int_terms(spec, &[(5, 1), (3, 1), (1, 1)])
    }

    #[test]
    fn paper_example_f7() {
        let f = f7();
        let form = index_form(&f, &paper_quintic(&f)).unwrap();
        assert_eq!(form.b, f.zero());
        assert_eq!(form.a, f.one());
        assert_eq!(form.r, 1);
        assert_eq!(form.s, 2);
        assert_eq!(form.ell, 3);
        assert_eq!(form.f, SparsePoly::from_int_terms(&f, &[(2, 1), (1, 1), (0, 1)]));
        assert_eq!(form.n0, 2);
    }

    #[test]
    fn monomial_has_index_one() {
        let f13 = FieldSpec::new(13, 1, None).unwrap();
        let g = SparsePoly::from_int_terms(&f13, &[(4, 5), (0, 2)]);
        let form = index_form(&f13, &g).unwrap();
        assert_eq!(form.b, f13.from_int(2));
        assert_eq!(form.a, f13.from_int(5));
        assert_eq!(form.r, 4);
        assert_eq!(form.ell, 1);
        assert_eq!(form.s, 12);
        assert_eq!(form.f, SparsePoly::constant(f13.one()));
        assert_eq!(form.n0, 0);
    }

    #[test]
    fn binomial_f13() {
        let f13 = FieldSpec::new(13, 1, None).unwrap();
        let g = SparsePoly::from_int_terms(&f13, &[(9, 1), (1, 1)]);
        let form = index_form(&f13, &g).unwrap();
        assert_eq!((form.b, form.a, form.r, form.s, form.ell), (f13.zero(), f13.one(), 1, 4, 3));
        assert_eq!(form.f, SparsePoly::from_int_terms(&f13, &[(2, 1), (0, 1)]));
        assert_eq!(form.n0, 0);
    }

    #[test]
    fn constant_is_rejected() {
        let f = f7();
        let g = SparsePoly::from_int_terms(&f, &[(0, 3)]);
        assert_eq!(index_form(&f, &g), Err(IndexError::ConstantPolynomial));
        // x^8 + 6x^2 reduces to zero
        let z = SparsePoly::from_int_terms(&f, &[(8, 1), (2, 6)]);
        assert_eq!(index_form(&f, &z), Err(IndexError::ConstantPolynomial));
    }

    #[test]
    fn mapping_of_paper_example() {
        let f = f7();
        let form = index_form(&f, &paper_quintic(&f)).unwrap();
        let map = mapping_from_index(&f, &form);
        assert_eq!(map.d, 3);
        let coeffs: Vec<u32> = map.branches.iter().map(|(a, _)| a.index()).collect();
        assert_eq!(coeffs, alloc::vec![3, 0, 0]);
        for (_, r_i) in &map.branches {
            assert_eq!(r_i, &SparsePoly::from_int_terms(&f, &[(1, 1)]));
        }
        assert_eq!(map.n_zero_branches(), form.n0);
        assert_eq!(map.live_branches(), alloc::vec![0]);
    }

    #[test]
    fn mapping_eval_matches_polynomial() {
        let f = f7();
        let g = paper_quintic(&f);
        let form = index_form(&f, &g).unwrap();
        let map = mapping_from_index(&f, &form);
        assert_eq!(mapping_eval(&f, &map, f.zero()), f.zero());
        assert_eq!(mapping_eval(&f, &map, f.one()), f.from_int(3));
        assert_eq!(mapping_eval(&f, &map, f.from_int(3)), f.zero());
        for x in f.elements() {
            assert_eq!(mapping_eval(&f, &map, x), g.eval(&f, x));
        }
    }

    #[test]
    fn poly_from_mapping_roundtrip() {
        let f = f7();
        let g = paper_quintic(&f);
        let form = index_form(&f, &g).unwrap();
        let back = poly_from_mapping(&f, &mapping_from_index(&f, &form));
        assert_eq!(back, g);
    }

    #[test]
    fn poly_from_mapping_trivial_cases() {
        let f = f7();
        let identity = CyclotomicMapping {
            d: 1,
            branches: alloc::vec![(f.one(), SparsePoly::from_int_terms(&f, &[(1, 1)]))],
            offset: f.zero(),
        };
        assert_eq!(poly_from_mapping(&f, &identity), SparsePoly::from_int_terms(&f, &[(1, 1)]));

        let dead = CyclotomicMapping {
            d: 3,
            branches: alloc::vec![
                (f.zero(), SparsePoly::from_int_terms(&f, &[(1, 1)])),
                (f.zero(), SparsePoly::from_int_terms(&f, &[(1, 1)])),
                (f.zero(), SparsePoly::from_int_terms(&f, &[(1, 1)])),
            ],
            offset: f.zero(),
        };
        assert!(poly_from_mapping(&f, &dead).is_zero());
    }

    #[test]
    fn poly_from_mapping_fixes_value_at_zero() {
        // R_i with nonzero constant term: the map still sends 0 to 0
        let f = f7();
        let r = SparsePoly::from_int_terms(&f, &[(1, 1), (0, 2)]);
        let map = CyclotomicMapping {
            d: 2,
            branches: alloc::vec![(f.one(), r.clone()), (f.from_int(3), r.clone())],
            offset: f.zero(),
        };
        let poly = poly_from_mapping(&f, &map);
        assert_eq!(poly.eval(&f, f.zero()), f.zero());
        for x in f.elements().skip(1) {
            assert_eq!(poly.eval(&f, x), mapping_eval(&f, &map, x));
        }
    }

    #[test]
    fn reconstruction_reproduces_input() {
        // exhaustive over a small field: every nonconstant reduced polynomial
        let f5 = FieldSpec::new(5, 1, None).unwrap();
        let q = f5.q();
        // polynomials of degree <= 3 indexed by coefficient vectors
        for code in 0..(5u64.pow(4)) {
            let mut v = code;
            let mut terms = Vec::new();
            for e in 0..4u64 {
                let c = v % q;
                v /= q;
                if c != 0 {
                    terms.push((e, f5.from_int(c as i64)));
                }
            }
            let g = SparsePoly::from_terms(&f5, terms);
            if g.is_constant() {
                continue;
            }
            let form = index_form(&f5, &g).unwrap();
            assert_eq!(form.reconstruct(&f5), g.canonicalize(&f5));
            // gcd of f's exponents with ell is 1
            let mut d = form.ell;
            for &(e, _) in form.f.terms() {
                d = gcd(d, e);
            }
            assert_eq!(d, 1);
            assert_eq!(form.ell == 1, g.without_constant().terms().len() == 1);
            assert_eq!((q - 1) % form.ell, 0);
        }
    }

    #[test]
    fn index_depends_only_on_reduced_poly() {
        let f = f7();
        let g = paper_quintic(&f);
        // x^11 and x^9 reduce to x^5 and x^3; same function, same form
        let inflated = SparsePoly::from_int_terms(&f, &[(11, 1), (9, 1), (1, 1)]);
        assert_eq!(inflated.canonicalize(&f), g);
        assert_eq!(index_form(&f, &inflated).unwrap(), index_form(&f, &g).unwrap());
    }
}
