//! Stable JSON renderings of kernel results: series as canonical text,
//! rationals as `a/b` strings, object keys in sorted order.

use serde_json::{json, Value};

use crate::automorphism::{AutoMap, AutoMapKind, Direction};
use crate::factor::{FactorStatus, Factorization};
use crate::growth::{LambdaReport, LambdaViolation};
use crate::norm::{MembershipReport, NormExp, Weights};
use crate::series::Series;
use crate::weierstrass::{DivisionResult, Preparation};

pub fn series_json(s: &Series) -> Value {
    json!(s.to_string())
}

pub fn norm_exp_json(e: &NormExp) -> Value {
    match e {
        NormExp::Zero => json!({ "zero": true }),
        NormExp::Exp(q) => json!({ "exp": q.to_string() }),
    }
}

pub fn weights_json(w: &Weights) -> Value {
    Value::Array(w.as_slice().iter().map(|c| json!(c.to_string())).collect())
}

pub fn division_json(d: &DivisionResult) -> Value {
    let mut obj = json!({
        "q": d.q.to_string(),
        "r": d.r.to_string(),
        "s": d.s,
        "iterations": d.iterations,
    });
    if let Some(w) = &d.weights_used {
        obj["weights"] = weights_json(w);
    }
    obj
}

pub fn preparation_json(p: &Preparation) -> Value {
    json!({
        "omega": p.omega.to_string(),
        "unit": p.unit.to_string(),
        "s": p.s,
    })
}

pub fn automap_json(m: &AutoMap) -> Value {
    let direction = match m.direction {
        Direction::Forward => "forward",
        Direction::Inverse => "inverse",
    };
    match &m.kind {
        AutoMapKind::Elementary { i, j, d } => json!({
            "kind": "elementary",
            "i": i + 1,
            "j": j + 1,
            "d": d,
            "direction": direction,
        }),
        AutoMapKind::Distinguishing { d, t, nu, s } => json!({
            "kind": "distinguishing",
            "d": d,
            "t": t,
            "nu": nu,
            "s": s,
            "direction": direction,
        }),
    }
}

pub fn factorization_json(f: &Factorization) -> Value {
    let factors: Vec<Value> = f
        .factors
        .iter()
        .map(|e| match &e.status {
            FactorStatus::LiftedCoprime => json!({
                "series": e.series.to_string(),
                "multiplicity": e.multiplicity,
                "status": "lifted_coprime",
            }),
            FactorStatus::UnsplitBlock(reason) => json!({
                "series": e.series.to_string(),
                "multiplicity": e.multiplicity,
                "status": "unsplit_block",
                "reason": reason,
            }),
        })
        .collect();
    json!({
        "unit": f.unit.to_string(),
        "y_power": f.y_power,
        "factors": factors,
    })
}

pub fn lambda_report_json(r: &LambdaReport) -> Value {
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| match v {
            LambdaViolation::OriginNonzero { value } => json!({
                "kind": "origin_nonzero",
                "value": value.to_string(),
            }),
            LambdaViolation::NotIncreasing { x, y, fx, fy } => json!({
                "kind": "not_increasing",
                "x": x,
                "y": y,
                "fx": fx.to_string(),
                "fy": fy.to_string(),
            }),
            LambdaViolation::NotSuperadditive { x, y, sum, joint } => json!({
                "kind": "not_superadditive",
                "x": x,
                "y": y,
                "sum": sum.to_string(),
                "joint": joint.to_string(),
            }),
        })
        .collect();
    json!({
        "valid": r.is_valid(),
        "bound": r.bound,
        "violations": violations,
    })
}

pub fn membership_json(r: &MembershipReport) -> Value {
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| {
            json!({
                "k": v.k,
                "degree": v.degree,
                "bound": v.bound.to_string(),
            })
        })
        .collect();
    json!({
        "pass": r.passed(),
        "c": r.c.to_string(),
        "k0": r.k0,
        "prec": r.prec,
        "violations": violations,
        "note": "truncation-level heuristic: membership is asymptotic",
    })
}

pub fn coordinates_json(coords: &[Series]) -> Value {
    Value::Array(coords.iter().map(series_json).collect())
}

pub fn distinguished_json(s: Option<u32>) -> Value {
    match s {
        Some(s) => json!({ "distinguished": true, "s": s }),
        None => json!({ "distinguished": false }),
    }
}
