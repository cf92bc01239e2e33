//! Sparse polynomials over a finite field.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::field::{FieldElement, FieldSpec};

/// A polynomial stored as `(exponent, nonzero coefficient)` pairs with
/// strictly increasing exponents. The zero polynomial is the empty list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    terms: Vec<(u64, FieldElement)>,
}

impl SparsePoly {
    pub fn zero() -> SparsePoly {
        SparsePoly { terms: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> SparsePoly {
        if c.is_zero() {
            SparsePoly::zero()
        } else {
            SparsePoly { terms: alloc::vec![(0, c)] }
        }
    }

    /// Build from arbitrary `(exponent, coefficient)` pairs: like terms are
    /// merged and zero coefficients dropped. Exponents are *not* reduced mod
    /// `x^q - x`; see [`SparsePoly::canonicalize`].
    pub fn from_terms(
        spec: &FieldSpec,
        terms: impl IntoIterator<Item = (u64, FieldElement)>,
    ) -> SparsePoly {
        let mut acc: BTreeMap<u64, FieldElement> = BTreeMap::new();
        for (e, c) in terms {
            let entry = acc.entry(e).or_insert(FieldElement::ZERO);
            *entry = spec.add(*entry, c);
        }
        SparsePoly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Convenience constructor from `(exponent, integer coefficient)` pairs.
    pub fn from_int_terms(spec: &FieldSpec, terms: &[(u64, i64)]) -> SparsePoly {
        SparsePoly::from_terms(spec, terms.iter().map(|&(e, c)| (e, spec.from_int(c))))
    }

    /// Construct directly from terms already in canonical shape (strictly
    /// increasing exponents, nonzero coefficients). Used by the enumerators
    /// where going through the merging constructor would dominate the
    /// sweep's runtime.
    pub(crate) fn from_sorted_terms(terms: Vec<(u64, FieldElement)>) -> SparsePoly {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        SparsePoly { terms }
    }

    pub fn terms(&self) -> &[(u64, FieldElement)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when the polynomial has no term of positive degree.
    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|&(e, _)| e == 0)
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.last().map(|&(e, _)| e)
    }

    pub fn leading_coeff(&self) -> Option<FieldElement> {
        self.terms.last().map(|&(_, c)| c)
    }

    pub fn constant_term(&self) -> FieldElement {
        match self.terms.first() {
            Some(&(0, c)) => c,
            _ => FieldElement::ZERO,
        }
    }

    /// Reduce every exponent `e >= q` to `1 + (e - 1) mod (q - 1)`, merge
    /// like terms, drop zeros. This preserves the function on `F_q`
    /// (`x^q = x`) and is idempotent on already-reduced input.
    pub fn canonicalize(&self, spec: &FieldSpec) -> SparsePoly {
        let q = spec.q();
        let already = self.terms.iter().all(|&(e, _)| e <= q - 1);
        if already {
            return self.clone();
        }
        SparsePoly::from_terms(
            spec,
            self.terms.iter().map(|&(e, c)| {
                let e = if e >= q { 1 + (e - 1) % (q - 1) } else { e };
                (e, c)
            }),
        )
    }

    /// Evaluate at `x` by per-term repeated squaring.
    pub fn eval(&self, spec: &FieldSpec, x: FieldElement) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        for &(e, c) in &self.terms {
            let term = if e == 0 { c } else { spec.mul(c, spec.pow_u(x, e)) };
            acc = spec.add(acc, term);
        }
        acc
    }

    /// The polynomial with every coefficient multiplied by `c`.
    pub fn scale(&self, spec: &FieldSpec, c: FieldElement) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero();
        }
        SparsePoly { terms: self.terms.iter().map(|&(e, k)| (e, spec.mul(k, c))).collect() }
    }

    /// The polynomial minus its constant term.
    pub fn without_constant(&self) -> SparsePoly {
        SparsePoly { terms: self.terms.iter().copied().filter(|&(e, _)| e != 0).collect() }
    }

    /// Render in the CLI syntax, highest degree first: `x^5+x^3+x`,
    /// `5*x^4+2`, `[1,2]*x^3`.
    pub fn to_display(&self, spec: &FieldSpec) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut parts: Vec<String> = Vec::new();
        for &(e, c) in self.terms.iter().rev() {
            let coeff = spec.elem_to_string(c);
            let is_one = c == spec.one();
            let part = match (e, is_one) {
                (0, _) => coeff,
                (1, true) => String::from("x"),
                (1, false) => alloc::format!("{coeff}*x"),
                (_, true) => alloc::format!("x^{e}"),
                (_, false) => alloc::format!("{coeff}*x^{e}"),
            };
            parts.push(part);
        }
        parts.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    #[test]
    fn eval_examples() {
        let f7 = FieldSpec::new(7, 1, None).unwrap();
        let g = SparsePoly::from_int_terms(&f7, &[(5, 1), (3, 1), (1, 1)]);
        assert_eq!(g.eval(&f7, f7.from_int(2)), f7.zero());
        assert_eq!(g.eval(&f7, f7.from_int(1)), f7.from_int(3));
        assert_eq!(g.eval(&f7, f7.zero()), f7.zero());

        let with_const = SparsePoly::from_int_terms(&f7, &[(4, 5), (0, 2)]);
        assert_eq!(with_const.eval(&f7, f7.zero()), f7.from_int(2));
    }

    #[test]
    fn canonicalize_examples() {
        let f7 = FieldSpec::new(7, 1, None).unwrap();
        let x7 = SparsePoly::from_int_terms(&f7, &[(7, 1)]);
        assert_eq!(x7.canonicalize(&f7), SparsePoly::from_int_terms(&f7, &[(1, 1)]));

        let cancel = SparsePoly::from_int_terms(&f7, &[(8, 1), (2, 6)]);
        assert!(cancel.canonicalize(&f7).is_zero());

        let reduced = SparsePoly::from_int_terms(&f7, &[(5, 1), (3, 1), (1, 1)]);
        assert_eq!(reduced.canonicalize(&f7), reduced);
    }

    #[test]
    fn canonicalize_preserves_function() {
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        let g = SparsePoly::from_int_terms(&f9, &[(17, 2), (9, 1), (4, 1), (0, 2)]);
        let c = g.canonicalize(&f9);
        assert!(c.degree().unwrap() <= 8);
        for x in f9.elements() {
            assert_eq!(g.eval(&f9, x), c.eval(&f9, x));
        }
        // idempotent
        assert_eq!(c.canonicalize(&f9), c);
    }

    #[test]
    fn display_syntax() {
        let f13 = FieldSpec::new(13, 1, None).unwrap();
        let g = SparsePoly::from_int_terms(&f13, &[(4, 5), (0, 2)]);
        assert_eq!(g.to_display(&f13), "5*x^4+2");
        let h = SparsePoly::from_int_terms(&f13, &[(5, 1), (3, 1), (1, 1)]);
        assert_eq!(h.to_display(&f13), "x^5+x^3+x");
        assert_eq!(SparsePoly::zero().to_display(&f13), "0");
    }

    #[test]
    fn merges_and_drops_zeros() {
        let f5 = FieldSpec::new(5, 1, None).unwrap();
        let g = SparsePoly::from_int_terms(&f5, &[(2, 3), (2, 2), (1, 4)]);
        assert_eq!(g, SparsePoly::from_int_terms(&f5, &[(1, 4)]));
    }
}
