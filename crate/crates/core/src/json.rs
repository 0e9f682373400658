//! JSON views of the main types. Group elements and rationals are written in
//! their canonical text form so that values stay exact.

use serde_json::{json, Value};

use crate::group::{fmt_rational, ExtGroupElement, GroupElement};
use crate::kapranov::{Certificate, PuiseuxStep, WitnessReport};
use crate::laurent::LaurentPolynomial;
use crate::series::{Series, ValResult};
use crate::tropical::{Cell2D, TropicalPolynomial};

pub fn group(g: &GroupElement) -> Value {
    Value::String(g.to_string())
}

pub fn ext_group(g: &ExtGroupElement) -> Value {
    Value::String(g.to_string())
}

pub fn gamma(v: &[GroupElement]) -> Value {
    Value::Array(v.iter().map(group).collect())
}

pub fn series(s: &Series) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .iter()
        .map(|(e, c)| json!({"exp": group(e), "coeff": fmt_rational(c)}))
        .collect();
    json!({"terms": terms, "precision": ext_group(s.precision()), "text": s.to_string()})
}

pub fn tropical(f: &TropicalPolynomial) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .map(|(e, c)| json!({"exp": e, "coeff": group(c)}))
        .collect();
    json!({"nvars": f.nvars(), "terms": terms, "text": f.to_string()})
}

pub fn laurent(f: &LaurentPolynomial) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .map(|(e, c)| json!({"exp": e, "coeff": series(c)}))
        .collect();
    json!({"nvars": f.nvars(), "terms": terms, "text": f.to_string()})
}

pub fn cell(c: &Cell2D) -> Value {
    json!({
        "kind": c.kind.as_str(),
        "base": c.base.iter().map(fmt_rational).collect::<Vec<_>>(),
        "dir": c.dir.iter().map(fmt_rational).collect::<Vec<_>>(),
        "pair": [&c.pair.0, &c.pair.1],
    })
}

pub fn val_result(v: &ValResult) -> Value {
    Value::String(v.to_string())
}

pub fn puiseux_step(s: &PuiseuxStep) -> Value {
    json!({
        "eta": group(&s.eta),
        "coefficient": fmt_rational(&s.coefficient),
        "residual": val_result(&s.residual),
    })
}

pub fn witness(w: &WitnessReport) -> Value {
    json!({
        "point": w.point.iter().map(series).collect::<Vec<_>>(),
        "valuation": gamma(&w.valuation),
        "residual_valuation": val_result(&w.residual_valuation),
        "certified_to": group(&w.certified_to),
        "split_coordinate": w.split_coordinate,
        "trace": w.trace.iter().map(puiseux_step).collect::<Vec<_>>(),
    })
}

pub fn certificate(eta: &GroupElement, c: &Certificate) -> Value {
    match c {
        Certificate::Root(z) => json!({"valuation": group(eta), "certified": true, "root": series(z)}),
        Certificate::Failed(reason) => {
            json!({"valuation": group(eta), "certified": false, "reason": reason})
        }
    }
}
