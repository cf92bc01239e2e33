//! Both sides of every character-sum bound, with verdicts that can only
//! blame the math, not the floating point.
//!
//! Centers (main terms) are exact rationals times a root of unity, bounds
//! are exact rationals times `sqrt(radicand)`. To decide a verdict the
//! centered sum is first rescaled so that everything stays in `Z[zeta_p]`;
//! if the rescaled difference is a plain integer the comparison is done in
//! exact integer arithmetic on squares, otherwise in binary64 with the
//! conservative error from [`CyclotomicValue::abs`] granted to the
//! favorable side. A bound is reported `Violated` only when
//! `lhs - err > rhs + err`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::charsum::{char_sum_full, char_sum_via_cosets, CharsumError};
use crate::cyclotomic::CyclotomicValue;
use crate::field::{FieldElement, FieldSpec};
use crate::index::{index_form, CyclotomicMapping, IndexError, IndexForm};
use crate::poly::SparsePoly;
use crate::util::gcd;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundError {
    /// The polynomial is constant; no bound applies.
    ConstantPolynomial,
    /// Binomial exponents must satisfy `q - 1 >= n > r >= 1` and `a != 0`.
    BadExponents,
    /// A mapping's branches do not match the field.
    BranchMismatch,
}

impl fmt::Display for BoundError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            BoundError::ConstantPolynomial => "constant polynomial",
            BoundError::BadExponents => "bad binomial exponents",
            BoundError::BranchMismatch => "mapping branches do not match the field",
        };
        f.write_str(msg)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for BoundError {}

impl From<IndexError> for BoundError {
    fn from(_: IndexError) -> Self {
        BoundError::ConstantPolynomial
    }
}

impl From<CharsumError> for BoundError {
    fn from(_: CharsumError) -> Self {
        BoundError::BranchMismatch
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HoldsStatus {
    Holds,
    /// The bound is exceeded by more than the accumulated numerical error.
    Violated,
    /// Could not be decided (non-finite numerics; defensive, never observed).
    Inconclusive,
}

impl HoldsStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            HoldsStatus::Holds => "holds",
            HoldsStatus::Violated => "violated",
            HoldsStatus::Inconclusive => "inconclusive",
        }
    }
}

/// Exact main term `(num/den) * zeta_p^root_exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CenterTerm {
    pub num: i64,
    pub den: i64,
    pub root_exp: u64,
}

impl CenterTerm {
    pub const ZERO: CenterTerm = CenterTerm { num: 0, den: 1, root_exp: 0 };

    /// Normalized: the fraction is reduced, and zero is `0/1 * zeta^0`.
    pub fn new(num: i64, den: i64, root_exp: u64) -> CenterTerm {
        debug_assert!(den > 0);
        if num == 0 {
            return CenterTerm::ZERO;
        }
        let g = gcd(num.unsigned_abs(), den as u64) as i64;
        CenterTerm { num: num / g, den: den / g, root_exp }
    }

    pub fn rational(num: i64, den: i64) -> CenterTerm {
        CenterTerm::new(num, den, 0)
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

/// Exact bound `(num/den) * sqrt(radicand)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RhsBound {
    pub num: u64,
    pub den: u64,
    pub radicand: u64,
}

impl RhsBound {
    pub fn simple(coeff: u64, radicand: u64) -> RhsBound {
        RhsBound { num: coeff, den: 1, radicand }
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64 * libm::sqrt(self.radicand as f64)
    }
}

/// Which bound a report is about (also the CSV label).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Weil,
    Index,
    CycloFull,
    CycloMonomial,
    CycloNonzero,
    Binomial,
    ArtinSchreier,
    ArtinBinomial,
    CodeWeight,
}

impl BoundKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundKind::Weil => "weil",
            BoundKind::Index => "index",
            BoundKind::CycloFull => "cyclo-full",
            BoundKind::CycloMonomial => "cyclo-monomial",
            BoundKind::CycloNonzero => "cyclo-nonzero",
            BoundKind::Binomial => "binomial",
            BoundKind::ArtinSchreier => "artin-schreier",
            BoundKind::ArtinBinomial => "artin-binomial",
            BoundKind::CodeWeight => "code-weight",
        }
    }
}

/// A secondary center/bound pair carried alongside the main verdict (used
/// for the paper-literal variants that can differ from the exact ones).
#[derive(Debug, Clone, PartialEq)]
pub struct LiteralPart {
    pub center: CenterTerm,
    pub lhs: f64,
    pub lhs_err: f64,
    pub rhs: RhsBound,
    pub rhs_value: f64,
    pub holds: HoldsStatus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub kind: BoundKind,
    /// The exact sum the bound is about. For counting bounds this is the
    /// integer count embedded as `N * zeta^0`.
    pub sum: CyclotomicValue,
    pub center: CenterTerm,
    /// `|sum - center|` in binary64, with its conservative error bound.
    pub lhs: f64,
    pub lhs_err: f64,
    pub rhs: RhsBound,
    pub rhs_value: f64,
    pub holds: HoldsStatus,
    /// `rhs - lhs`.
    pub slack: f64,
    pub applicable: bool,
    pub note: Option<String>,
    /// `gcd(r, p)` where `r` is the vanishing order at 0 (recorded, not a
    /// gate, except where a theorem's hypothesis demands it).
    pub gcd_r_p: Option<u64>,
    /// Paper-literal variant, when it differs from the exact center/bound.
    pub literal: Option<LiteralPart>,
    /// Set when `|sum| = q` exactly, the signature of `c + f^p - f`.
    pub degenerate: bool,
}

/// Decide `|sum - center| <= rhs`, exactly when possible.
fn evaluate(sum: &CyclotomicValue, center: &CenterTerm, rhs: &RhsBound) -> (f64, f64, HoldsStatus) {
    let den = center.den;
    debug_assert!(den > 0);
    let scaled = sum
        .scale(den)
        .sub(&CyclotomicValue::root_power(sum.prime(), center.root_exp, center.num))
        .expect("same prime");

    if let Some(v) = scaled.as_integer() {
        // |v|/den vs (num/den_r)*sqrt(rad): compare squares in integers
        let lhs = (v.unsigned_abs() as f64) / den as f64;
        let exact = (|| -> Option<bool> {
            let l = (v.unsigned_abs() as u128).checked_pow(2)?.checked_mul(
                (rhs.den as u128).checked_pow(2)?,
            )?;
            let r = (rhs.num as u128)
                .checked_pow(2)?
                .checked_mul(rhs.radicand as u128)?
                .checked_mul((den as u128).checked_pow(2)?)?;
            Some(l <= r)
        })();
        if let Some(ok) = exact {
            return (lhs, 0.0, if ok { HoldsStatus::Holds } else { HoldsStatus::Violated });
        }
        // overflow: fall through to the float comparison with a tiny error
        let rhs_value = rhs.value();
        let margin = 4.0 * f64::EPSILON * (lhs.abs() + rhs_value.abs());
        return float_verdict(lhs, margin, rhs_value);
    }

    let (scaled_lhs, scaled_err) = scaled.abs();
    let lhs = scaled_lhs / den as f64;
    let lhs_err = scaled_err / den as f64;
    let rhs_value = rhs.value();
    let rhs_err = 8.0 * f64::EPSILON * rhs_value;
    let (l, e, h) = float_verdict(lhs, lhs_err + rhs_err, rhs_value);
    (l, if e > lhs_err { e } else { lhs_err }, h)
}

fn float_verdict(lhs: f64, margin: f64, rhs_value: f64) -> (f64, f64, HoldsStatus) {
    if !lhs.is_finite() || !rhs_value.is_finite() {
        return (lhs, margin, HoldsStatus::Inconclusive);
    }
    if lhs <= rhs_value + margin {
        (lhs, margin, HoldsStatus::Holds)
    } else {
        // lhs - err > rhs + err
        (lhs, margin, HoldsStatus::Violated)
    }
}

pub(crate) fn assemble(
    kind: BoundKind,
    sum: CyclotomicValue,
    center: CenterTerm,
    rhs: RhsBound,
    applicable: bool,
    note: Option<String>,
    gcd_r_p: Option<u64>,
    q: u64,
) -> BoundReport {
    let (lhs, lhs_err, holds) = evaluate(&sum, &center, &rhs);
    let rhs_value = rhs.value();
    let mut note = note;
    if rhs_value > q as f64 {
        let extra = "bound weaker than trivial (rhs > q)";
        note = Some(match note {
            Some(n) => alloc::format!("{n}; {extra}"),
            None => String::from(extra),
        });
    }
    BoundReport {
        kind,
        sum,
        center,
        lhs,
        lhs_err,
        rhs,
        rhs_value,
        holds,
        slack: rhs_value - lhs,
        applicable,
        note,
        gcd_r_p,
        literal: None,
        degenerate: false,
    }
}

pub(crate) fn literal_part(sum: &CyclotomicValue, center: CenterTerm, rhs: RhsBound) -> LiteralPart {
    let (lhs, lhs_err, holds) = evaluate(sum, &center, &rhs);
    LiteralPart { center, lhs, lhs_err, rhs, rhs_value: rhs.value(), holds }
}

/// `|sum| = q` exactly, i.e. `sum = q * zeta^t` for some `t`.
fn is_full_magnitude(sum: &CyclotomicValue, q: u64) -> bool {
    (0..sum.prime()).any(|t| *sum == CyclotomicValue::root_power(sum.prime(), t, q as i64))
}

/// The Weil bound `|S(g)| <= (n - 1) sqrt(q)` for the reduced degree `n`.
/// Applicable when `p` does not divide `n`; flags the degenerate
/// `c + f^p - f` shape when `|S| = q` exactly.
pub fn weil_report(spec: &FieldSpec, g: &SparsePoly) -> Result<BoundReport, BoundError> {
    let g = g.canonicalize(spec);
    if g.is_constant() {
        return Err(BoundError::ConstantPolynomial);
    }
    let n = g.degree().expect("nonconstant");
    let sum = char_sum_full(spec, &g);
    let applicable = n % spec.p() != 0;
    let note = if applicable {
        None
    } else {
        Some(String::from("p divides deg g; Weil hypothesis not guaranteed"))
    };
    let rhs = RhsBound::simple(n - 1, spec.q());
    let mut report =
        assemble(BoundKind::Weil, sum, CenterTerm::ZERO, rhs, applicable, note, None, spec.q());
    if is_full_magnitude(&report.sum, spec.q()) {
        report.degenerate = true;
        let extra = "|S| = q exactly: suspected c + f^p - f";
        report.note = Some(match report.note.take() {
            Some(n) => alloc::format!("{n}; {extra}"),
            None => String::from(extra),
        });
    }
    Ok(report)
}

/// The index bound
/// `|S(g) - psi(b) (q/ell) n0| <= (ell - n0) gcd(r, (q-1)/ell) sqrt(q)`.
///
/// The center carries the exact `psi(b)` factor (valid since
/// `S(g) = psi(b) S(g - b)`); the paper-literal center `(q/ell) n0 * 1` is
/// reported alongside whenever `b != 0` and the two can differ.
pub fn index_report(spec: &FieldSpec, g: &SparsePoly) -> Result<BoundReport, BoundError> {
    let form = index_form(spec, g)?;
    let sum = char_sum_full(spec, g);
    index_report_from_parts(spec, form, sum)
}

/// Same as [`index_report`] when the index form and sum are already known.
pub fn index_report_from_parts(
    spec: &FieldSpec,
    form: IndexForm,
    sum: CyclotomicValue,
) -> Result<BoundReport, BoundError> {
    let q = spec.q();
    let center =
        CenterTerm::new((q * form.n0) as i64, form.ell as i64, spec.abs_trace(form.b));
    let rhs = RhsBound::simple((form.ell - form.n0) * gcd(form.r, form.s), q);
    let mut report = assemble(
        BoundKind::Index,
        sum,
        center,
        rhs,
        true,
        None,
        Some(gcd(form.r, spec.p())),
        q,
    );
    if !form.b.is_zero() && form.n0 > 0 {
        let literal_center = CenterTerm::rational(center.num, center.den);
        report.literal = Some(literal_part(&report.sum, literal_center, rhs));
    }
    Ok(report)
}

/// Variant selector for [`cyclo_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycloVariant {
    /// Sum over all of `F_q`, bound `(d - n0) r sqrt(q)`.
    Full,
    /// Monomial branches, bound `(d - n0) max gcd(r_i, (q-1)/d) sqrt(q)`.
    Monomial,
    /// Sum over `F_q^*` only, bound `(d - n0) r sqrt(q)`.
    Nonzero,
}

/// Bounds for a general cyclotomic mapping (the map itself, offset ignored).
pub fn cyclo_report(
    spec: &FieldSpec,
    map: &CyclotomicMapping,
    variant: CycloVariant,
) -> Result<BoundReport, BoundError> {
    let q = spec.q();
    let d = map.d;
    let live = map.live_branches();
    let n0 = d - live.len() as u64;
    let s = (q - 1) / d;

    let mut notes: Vec<String> = Vec::new();
    let mut applicable = true;

    let mut r_max = 0u64;
    let mut gcd_max = 0u64;
    let mut all_monomial = true;
    let mut gcd_rp = None;
    for &i in &live {
        let (_, r_i) = &map.branches[i];
        let deg = r_i.degree().expect("branches are nonzero");
        r_max = r_max.max(deg);
        gcd_max = gcd_max.max(gcd(deg, s));
        if r_i.terms().len() != 1 {
            all_monomial = false;
        }
        let g = gcd(deg, spec.p());
        gcd_rp = Some(gcd_rp.map_or(g, |old: u64| old.max(g)));
    }

    let kind = match variant {
        CycloVariant::Full => BoundKind::CycloFull,
        CycloVariant::Monomial => BoundKind::CycloMonomial,
        CycloVariant::Nonzero => BoundKind::CycloNonzero,
    };

    match variant {
        CycloVariant::Full | CycloVariant::Nonzero => {
            if live.iter().any(|&i| {
                gcd(map.branches[i].1.degree().unwrap(), spec.p()) != 1
            }) {
                applicable = false;
                notes.push(String::from("gcd(deg R_i, p) != 1 for a live branch"));
            }
            if variant == CycloVariant::Full
                && live.iter().any(|&i| !map.branches[i].1.constant_term().is_zero())
            {
                notes.push(String::from("R_i(0) != 0: normalization of the full-sum form not met"));
            }
        }
        CycloVariant::Monomial => {
            if !all_monomial {
                applicable = false;
                notes.push(String::from("non-monomial live branch; using deg R_i in the gcd"));
            }
            if live
                .iter()
                .any(|&i| gcd(map.branches[i].1.degree().unwrap(), spec.p()) != 1)
            {
                notes.push(String::from("gcd(r_i, p) != 1 for a live branch"));
            }
        }
    }

    let full = char_sum_via_cosets(spec, map, FieldElement::ZERO)?;
    let (sum, center) = match variant {
        CycloVariant::Full | CycloVariant::Monomial => {
            (full, CenterTerm::rational((q * n0) as i64, d as i64))
        }
        CycloVariant::Nonzero => {
            // the map sends 0 to 0, so dropping x = 0 subtracts psi(0) = 1
            let nz = full.sub(&CyclotomicValue::integer(spec.p(), 1)).expect("same prime");
            (nz, CenterTerm::rational(((q - 1) * n0) as i64, d as i64))
        }
    };

    let coeff = match variant {
        CycloVariant::Full | CycloVariant::Nonzero => (d - n0) * r_max,
        CycloVariant::Monomial => (d - n0) * gcd_max,
    };
    let rhs = RhsBound::simple(coeff, q);
    let note = if notes.is_empty() { None } else { Some(notes.join("; ")) };
    Ok(assemble(kind, sum, center, rhs, applicable, note, gcd_rp, q))
}

/// Everything [`binomial_report`] knows about `x^n + a x^r`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinomialReport {
    /// The verdict on the exact index-form bound; `literal` inside holds the
    /// paper-stated `u`-based center and bound, which differ when `u > 1`.
    pub report: BoundReport,
    pub ell: u64,
    /// `gcd(n, r, q-1)`; equals `gcd(r, (q-1)/ell)`.
    pub t: u64,
    /// `gcd(n - r, ell)`.
    pub u: u64,
    /// `dlog(-a)`.
    pub k: u64,
    /// Zeros of `f` among the `ell`-th roots of unity (0 or 1 for binomials).
    pub n0: u64,
    /// Does `x^{n-r} + a` have a root among the `ell`-th roots of unity?
    pub root_by_search: bool,
    /// The same question decided by `(q-1)u/ell | k`.
    pub root_by_dlog: bool,
    pub root_exists: bool,
}

/// Bound report for the binomial `x^n + a x^r`.
///
/// `root_exists` is decided both by direct search over the `ell`-th roots of
/// unity and by the divisibility test on `k = dlog(-a)`; the two always
/// agree. The primary verdict uses the index-form main term
/// `(q/ell) n0` with `n0 in {0, 1}` (equivalently: `n0 = 1` iff
/// `(q-1)/ell | k`); the `u`-based literal variant is reported alongside.
pub fn binomial_report(
    spec: &FieldSpec,
    n: u64,
    r: u64,
    a: FieldElement,
) -> Result<BinomialReport, BoundError> {
    let q = spec.q();
    if a.is_zero() || r < 1 || n <= r || n > q - 1 {
        return Err(BoundError::BadExponents);
    }
    let g = SparsePoly::from_terms(spec, [(n, spec.one()), (r, a)]);
    let form = index_form(spec, &g).expect("binomial is nonconstant");
    let ell = form.ell;
    debug_assert_eq!(ell, (q - 1) / gcd(n - r, q - 1));
    let t = gcd(gcd(n, r), q - 1);
    debug_assert_eq!(t, gcd(form.r, form.s));
    let u = gcd(n - r, ell);

    let k = spec.dlog(spec.neg(a)).expect("a is nonzero");
    let roots = spec.roots_of_unity(ell).expect("ell divides q - 1");
    let minus_a = spec.neg(a);
    let root_by_search = roots.iter().any(|&z| spec.pow_u(z, n - r) == minus_a);
    let root_by_dlog = k % ((q - 1) * u / ell) == 0;

    let sum = char_sum_full(spec, &g);
    let mut report = index_report_from_parts(spec, form.clone(), sum)?;
    report.kind = BoundKind::Binomial;
    debug_assert_eq!(report.rhs, RhsBound::simple((ell - form.n0) * t, q));

    // paper-stated variant: center q*u/ell when a root exists, bound
    // (ell - u) t sqrt(q); otherwise center 0, bound ell t sqrt(q)
    let (lit_center, lit_coeff) = if root_by_search {
        (CenterTerm::rational((q * u) as i64, ell as i64), (ell - u) * t)
    } else {
        (CenterTerm::ZERO, ell * t)
    };
    report.literal = Some(literal_part(&report.sum, lit_center, RhsBound::simple(lit_coeff, q)));
    if u > 1 {
        let extra = "u > 1: literal center/bound differ from the index form";
        report.note = Some(match report.note.take() {
            Some(n) => alloc::format!("{n}; {extra}"),
            None => String::from(extra),
        });
    }

    Ok(BinomialReport {
        report,
        ell,
        t,
        u,
        k,
        n0: form.n0,
        root_by_search,
        root_by_dlog,
        root_exists: root_by_search,
    })
}
