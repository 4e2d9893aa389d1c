//! Browser bindings: three interactive operations on top of `novikov-core`.
//!
//! Every export takes and returns plain strings; results are JSON objects with
//! either the requested data or an `"error"` field. The logic lives in plain
//! Rust functions so it can be tested natively.

use novikov_core::document::{execute_command, parse_document, Command, CommandOptions};
use novikov_core::invertibility::invertibility_cones;
use novikov_core::{Character, CoefficientDomain, Exponent, IntegralSubset, LaurentPoly, Scalar, VanishingOptions};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

/// The set of characters at which `poly` becomes a Novikov unit.
///
/// `poly` uses variables `t` (rank 1), `x, y` (rank 2) or `x, y, z` (rank 3),
/// e.g. `"2 + x - 3*x*y^-1"`; `domain` is `"Z"`, `"Q"` or `"GF(p)"`.
#[wasm_bindgen]
pub fn polynomial_fan(poly: &str, domain: &str, extent: i32) -> String {
    render(polynomial_fan_value(poly, domain, extent))
}

/// The vanishing locus of a problem document, with a membership grid.
#[wasm_bindgen]
pub fn vanishing_locus(document: &str, extent: i32) -> String {
    render(vanishing_locus_value(document, extent))
}

/// The positivity verdict for a document with meridians.
#[wasm_bindgen]
pub fn positivity(document: &str) -> String {
    render(positivity_value(document))
}

fn render(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

const MAX_EXTENT: i32 = 12;

pub fn polynomial_fan_value(poly: &str, domain: &str, extent: i32) -> Result<Value, String> {
    let domain: CoefficientDomain = domain.trim().parse().map_err(|e| format!("{e}"))?;
    let p = parse_polynomial(poly, domain)?;
    let set = invertibility_cones(&p).simplified();
    Ok(json!({
        "polynomial": p.to_string(),
        "rank": p.rank(),
        "cones": cone_strings(&set),
        "grid": grid(&set, extent)?,
    }))
}

pub fn vanishing_locus_value(document: &str, extent: i32) -> Result<Value, String> {
    let doc = parse_document(document).map_err(|e| e.to_string())?;
    let report = doc.complex().map_err(|e| e.to_string())?.vanishing_set(&VanishingOptions::default());
    let report = report.map_err(|e| e.to_string())?;
    let set = &report.vanishing_set;
    Ok(json!({
        "rank": set.rank(),
        "tau_chains": report.tau_chains.to_string(),
        "cones": cone_strings(set),
        "grid": grid(set, extent)?,
    }))
}

pub fn positivity_value(document: &str) -> Result<Value, String> {
    let doc = parse_document(document).map_err(|e| e.to_string())?;
    let verdict = execute_command(Command::Positive, &doc, &CommandOptions::default()).map_err(|e| e.to_string())?;
    Ok(json!({ "verdict": verdict.trim_end() }))
}

fn cone_strings(set: &IntegralSubset) -> Vec<String> {
    set.cones().iter().map(ToString::to_string).collect()
}

/// Memberships of lattice points in `[-extent, extent]^r` for `r ≤ 2`:
/// a list for rank 1, rows from top (`y = extent`) to bottom for rank 2.
fn grid(set: &IntegralSubset, extent: i32) -> Result<Value, String> {
    if !(0..=MAX_EXTENT).contains(&extent) {
        return Err(format!("extent must be between 0 and {MAX_EXTENT}"));
    }
    let e = i64::from(extent);
    let member = |v: &[i64]| set.contains_point(&Character::from_integers(v)).unwrap_or(false);
    Ok(match set.rank() {
        1 => json!((-e..=e).map(|x| member(&[x])).collect::<Vec<_>>()),
        2 => json!((-e..=e).rev().map(|y| (-e..=e).map(|x| member(&[x, y])).collect::<Vec<_>>()).collect::<Vec<_>>()),
        _ => Value::Null,
    })
}

/// Parses sums of terms like `-3/2*x^2*y^-1`. The rank is 1 if only `t`
/// occurs, otherwise the number of variables among `x, y, z` that are needed.
pub fn parse_polynomial(text: &str, domain: CoefficientDomain) -> Result<LaurentPoly, String> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut raw_terms: Vec<(Scalar, [i64; 3])> = Vec::new();
    let mut uses_t = false;
    let mut max_var = 0usize;
    for (sign, body) in split_terms(&compact)? {
        let mut coeff = Scalar::from_integer(sign.into());
        let mut exp = [0i64; 3];
        for factor in body.split('*') {
            let (base, power) = match factor.split_once('^') {
                Some((b, p)) => (b, p.parse::<i64>().map_err(|_| format!("bad exponent in {factor:?}"))?),
                None => (factor, 1),
            };
            let slot = match base {
                "t" => {
                    uses_t = true;
                    Some(0)
                }
                "x" => Some(0),
                "y" => Some(1),
                "z" => Some(2),
                _ => None,
            };
            match slot {
                Some(i) => {
                    if base != "t" {
                        max_var = max_var.max(i + 1);
                    }
                    exp[i] += power;
                }
                None => {
                    if factor.contains('^') {
                        return Err(format!("unknown variable in {factor:?}"));
                    }
                    let value = novikov_core::grouprings::parse_rational(factor)
                        .map_err(|_| format!("cannot read {factor:?}"))?;
                    coeff *= value;
                }
            }
        }
        raw_terms.push((coeff, exp));
    }
    if uses_t && max_var > 0 {
        return Err("use either t or x, y, z".into());
    }
    let rank = max_var.max(1);
    let terms = raw_terms.into_iter().map(|(c, e)| (c, Exponent::new(e[..rank].to_vec())));
    LaurentPoly::from_terms(domain, rank, terms).map_err(|e| e.to_string())
}

fn split_terms(text: &str) -> Result<Vec<(i64, &str)>, String> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut start = 0;
    let mut sign = 1;
    if bytes[0] == b'+' || bytes[0] == b'-' {
        sign = if bytes[0] == b'-' { -1 } else { 1 };
        start = 1;
    }
    let mut i = start;
    while i <= bytes.len() {
        // A sign splits terms unless it follows `^` (a negative exponent).
        let at_split =
            i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && i > start && bytes[i - 1] != b'^');
        if at_split {
            let body = &text[start..i];
            if body.is_empty() {
                return Err("empty term".into());
            }
            out.push((sign, body));
            if i < bytes.len() {
                sign = if bytes[i] == b'-' { -1 } else { 1 };
            }
            start = i + 1;
        }
        i += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_polynomials() {
        let z = CoefficientDomain::Integers;
        assert_eq!(parse_polynomial("1 - 3*t + t^2", z).unwrap().to_string(), "1 - 3*t + t^2");
        let p = parse_polynomial("2 + x - 3*x*y^-1", z).unwrap();
        assert_eq!(p.rank(), 2);
        assert_eq!(p.num_terms(), 3);
        assert!(parse_polynomial("x + t", z).is_err());
        assert!(parse_polynomial("1/2*t", z).is_err());
        assert!(parse_polynomial("1/2*t", CoefficientDomain::Rationals).is_ok());
        assert!(parse_polynomial("", z).is_err());
        assert!(parse_polynomial("1 + + t", z).is_err());
    }

    #[test]
    fn fan_of_two_plus_t() {
        let v = polynomial_fan_value("2 + t", "Z", 2).unwrap();
        assert_eq!(v["cones"], json!(["(1) > 0"]));
        assert_eq!(v["grid"], json!([false, false, false, true, true]));
        assert!(polynomial_fan_value("2 + t", "GF(4)", 2).unwrap_err().contains("modulus must be prime"));
    }

    #[test]
    fn document_operations() {
        let trefoil = r#"{"domain": "Z", "gamma_rank": 1,
            "presentation": {"generators": 2, "relators": [[1, 2, 1, -2, -1, -2]], "psi": [[1], [1]]},
            "meridians": [[1]]}"#;
        let v = vanishing_locus_value(trefoil, 1).unwrap();
        assert_eq!(v["grid"], json!([true, false, true]));
        assert_eq!(positivity_value(trefoil).unwrap()["verdict"], "Vanishes");
        let out = vanishing_locus("not json", 1);
        assert!(out.contains("\"error\""));
    }
}
