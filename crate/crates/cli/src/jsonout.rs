//! JSON views of core values and reports.
//!
//! Elements of prime fields serialize as integers, extension-field elements
//! as ascending coordinate arrays. A cyclotomic value serializes as
//! `{"p": 7, "coeffs": [5,0,0,1,1,0,0]}`.

use ffindex_core::bounds::{BoundReport, LiteralPart};
use ffindex_core::{CyclotomicValue, FieldElement, FieldSpec, IndexForm, SparsePoly};
use serde_json::{json, Value};

pub fn elem_json(spec: &FieldSpec, x: FieldElement) -> Value {
    if spec.m() == 1 {
        json!(x.index())
    } else {
        json!(spec.coords(x))
    }
}

pub fn field_json(spec: &FieldSpec) -> Value {
    json!({
        "p": spec.p(),
        "m": spec.m(),
        "q": spec.q(),
        "modulus": spec.modulus(),
        "gamma": elem_json(spec, spec.gamma()),
    })
}

pub fn cv_json(v: &CyclotomicValue) -> Value {
    json!({ "p": v.prime(), "coeffs": v.coeffs() })
}

pub fn cv_json_with_abs(v: &CyclotomicValue) -> Value {
    let (abs, err) = v.abs();
    json!({ "p": v.prime(), "coeffs": v.coeffs(), "abs": abs, "abs_err": err })
}

pub fn index_form_json(spec: &FieldSpec, form: &IndexForm) -> Value {
    json!({
        "b": elem_json(spec, form.b),
        "a": elem_json(spec, form.a),
        "r": form.r,
        "s": form.s,
        "ell": form.ell,
        "f": form.f.to_display(spec),
        "n0": form.n0,
    })
}

pub fn poly_json(spec: &FieldSpec, g: &SparsePoly) -> Value {
    json!(g.to_display(spec))
}

fn literal_json(lit: &LiteralPart) -> Value {
    json!({
        "center": { "num": lit.center.num, "den": lit.center.den, "root_exp": lit.center.root_exp },
        "lhs": lit.lhs,
        "lhs_err": lit.lhs_err,
        "rhs": lit.rhs_value,
        "holds": lit.holds.as_str(),
    })
}

pub fn report_json(report: &BoundReport) -> Value {
    let mut v = json!({
        "bound": report.kind.as_str(),
        "sum": cv_json(&report.sum),
        "center": {
            "num": report.center.num,
            "den": report.center.den,
            "root_exp": report.center.root_exp,
        },
        "lhs": report.lhs,
        "lhs_err": report.lhs_err,
        "rhs": report.rhs_value,
        "rhs_exact": {
            "num": report.rhs.num,
            "den": report.rhs.den,
            "radicand": report.rhs.radicand,
        },
        "holds": report.holds.as_str(),
        "slack": report.slack,
        "applicable": report.applicable,
    });
    let obj = v.as_object_mut().unwrap();
    if let Some(note) = &report.note {
        obj.insert("note".into(), json!(note));
    }
    if let Some(g) = report.gcd_r_p {
        obj.insert("gcd_r_p".into(), json!(g));
    }
    if let Some(lit) = &report.literal {
        obj.insert("literal".into(), literal_json(lit));
    }
    if report.degenerate {
        obj.insert("degenerate".into(), json!(true));
    }
    v
}
