//! JSON schemas of everything the CLI emits.

use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

pub const KINDS: [&str; 5] = ["homfly", "correlators", "toprec", "verify", "curve"];

const RATIONAL: &str = "^-?[0-9]+(/[0-9]+)?$";

fn rational() -> Value {
    json!({"type": "string", "pattern": RATIONAL})
}

fn knot() -> Value {
    json!({"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2})
}

fn parts() -> Value {
    json!({"type": "array", "items": {"type": "integer", "minimum": 1}})
}

fn envelope(kind: &str, props: Value, required: &[&str]) -> Value {
    let mut p = json!({
        "schema_version": {"const": SCHEMA_VERSION},
        "kind": {"const": kind},
        "knot": knot(),
    });
    let obj = p.as_object_mut().unwrap();
    for (k, v) in props.as_object().unwrap() {
        obj.insert(k.clone(), v.clone());
    }
    let mut req = vec!["schema_version", "kind", "knot"];
    req.extend_from_slice(required);
    json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": format!("torus-tr {kind} output"),
        "type": "object",
        "properties": p,
        "required": req,
    })
}

fn homfly() -> Value {
    let term = json!({
        "type": "object",
        "properties": {"q_exp": rational(), "A_exp": rational(), "coeff": rational()},
        "required": ["q_exp", "A_exp", "coeff"],
    });
    let color = json!({
        "type": "object",
        "properties": {
            "R": parts(),
            "numerator": {"type": "array", "items": term},
            "denominator_q_diffs": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        },
        "required": ["R", "numerator", "denominator_q_diffs"],
    });
    envelope(
        "homfly",
        json!({"rmax": {"type": "integer"}, "colors": {"type": "array", "items": color}}),
        &["rmax", "colors"],
    )
}

fn correlators() -> Value {
    let row = json!({
        "type": "object",
        "properties": {
            "g": {"type": "integer", "minimum": 0},
            "mu": parts(),
            "normalization": {"enum": ["p_tilde"]},
            "coeff": rational(),
        },
        "required": ["g", "mu", "normalization", "coeff"],
    });
    let table = json!({
        "type": "object",
        "properties": {
            "g": {"type": "integer", "minimum": 0},
            "n": {"type": "integer", "minimum": 1},
            "rows": {"type": "array", "items": row},
        },
        "required": ["g", "n", "rows"],
    });
    envelope(
        "correlators",
        json!({
            "A": rational(),
            "gmax": {"type": "integer"},
            "nmax": {"type": "integer"},
            "degree": {"type": "integer", "minimum": 1},
            "tables": {"type": "array", "items": table},
        }),
        &["A", "gmax", "nmax", "degree", "tables"],
    )
}

fn toprec() -> Value {
    let rational_form = json!({
        "type": "object",
        "properties": {
            "numerator": {"type": "array", "items": {
                "type": "object",
                "properties": {
                    "exp": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                    "coeff": rational(),
                },
                "required": ["exp", "coeff"],
            }},
            "q_exponents": {"type": "array", "items": {"type": "integer", "minimum": 0}},
            "pair_exponents": {"type": "array", "items": {
                "type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 3, "maxItems": 3,
            }},
            "denominator": {"type": "string"},
        },
        "required": ["numerator", "q_exponents", "pair_exponents", "denominator"],
    });
    let part = json!({
        "type": "object",
        "properties": {
            "slots": {"type": "array", "items": {
                "type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 2, "maxItems": 2,
            }},
            "coeff": {"type": "array", "items": rational(), "minItems": 2, "maxItems": 2},
        },
        "required": ["slots", "coeff"],
    });
    let omega = json!({
        "type": "object",
        "properties": {
            "g": {"type": "integer", "minimum": 0},
            "n": {"type": "integer", "minimum": 1},
            "rational_form": rational_form,
            "principal_parts": {"type": "array", "items": part},
        },
        "required": ["g", "n", "rational_form", "principal_parts"],
    });
    envelope(
        "toprec",
        json!({
            "A": rational(),
            "disc": rational(),
            "order": {"type": "integer"},
            "omegas": {"type": "array", "items": omega},
        }),
        &["A", "disc", "order", "omegas"],
    )
}

fn curve() -> Value {
    let point = json!({"type": "array", "items": rational(), "minItems": 3, "maxItems": 3});
    envelope(
        "curve",
        json!({
            "A": rational(),
            "c": rational(),
            "disc": rational(),
            "branch_points": {"type": "array", "items": point, "minItems": 2, "maxItems": 2},
            "rings": {"type": "array", "items": {"enum": ["R1", "R2", "R3", null]}},
            "gamma": {"type": "integer"},
            "delta": {"type": "integer"},
        }),
        &["A", "c", "disc", "branch_points", "rings", "gamma", "delta"],
    )
}

/// One line of `verify` output.
fn verify() -> Value {
    json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": "torus-tr verify report line",
        "type": "object",
        "properties": {
            "schema_version": {"const": SCHEMA_VERSION},
            "kind": {"const": "verify"},
            "name": {"type": "string"},
            "parameters": {"type": "object"},
            "status": {"enum": ["pass", "fail"]},
            "witness": {},
        },
        "required": ["schema_version", "kind", "name", "parameters", "status", "witness"],
    })
}

pub fn schema_for(kind: &str) -> Option<Value> {
    Some(match kind {
        "homfly" => homfly(),
        "correlators" => correlators(),
        "toprec" => toprec(),
        "verify" => verify(),
        "curve" => curve(),
        _ => return None,
    })
}

/// All schemas keyed by output kind.
pub fn all() -> Value {
    let mut m = serde_json::Map::new();
    for k in KINDS {
        m.insert(k.into(), schema_for(k).unwrap());
    }
    json!({"schema_version": SCHEMA_VERSION, "kinds": m})
}
