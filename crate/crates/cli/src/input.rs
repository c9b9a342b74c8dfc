//! Parsing of the small value languages the flags use: quaternions and
//! complex numbers as comma-separated components, and the weight-rule DSL
//! `const:<q>` / `ratio` / `custom:<file.json>`.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use qcd_core::shifts::WeightRule;
use qcd_core::{Error, Quaternion, Result};
use serde::Deserialize;

fn parse_components(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|e| Error::InvalidConfig(format!("bad number {:?}: {e}", part.trim())))
        })
        .collect()
}

/// Parses a quaternion from 1, 2 or 4 comma-separated components:
/// `w` (real), `w,x` (complex slice) or `w,x,y,z`.
pub fn parse_quaternion(text: &str) -> Result<Quaternion> {
    let c = parse_components(text)?;
    match c.as_slice() {
        [w] => Ok(Quaternion::from_real(*w)),
        [w, x] => Ok(Quaternion::new(*w, *x, 0.0, 0.0)),
        [w, x, y, z] => Ok(Quaternion::new(*w, *x, *y, *z)),
        _ => Err(Error::InvalidConfig(format!(
            "a quaternion takes 1, 2 or 4 components, got {} in {text:?}",
            c.len()
        ))),
    }
}

/// Parses a complex number from `re` or `re,im`.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let c = parse_components(text)?;
    match c.as_slice() {
        [re] => Ok(Complex64::new(*re, 0.0)),
        [re, im] => Ok(Complex64::new(*re, *im)),
        _ => Err(Error::InvalidConfig(format!(
            "a complex number takes 1 or 2 components, got {} in {text:?}",
            c.len()
        ))),
    }
}

/// On-disk format for `custom:` weight tables.
#[derive(Debug, Deserialize)]
struct WeightFile {
    schema: u32,
    weights: Vec<[f64; 4]>,
}

/// Parses the weight-rule DSL.
///
/// * `const:<q>` — constant weight (quaternion components as in
///   [`parse_quaternion`]).
/// * `ratio` — the rule `wₙ = (n+1)/n`.
/// * `custom:<file.json>` — finite table from a JSON file
///   `{"schema": 1, "weights": [[w,x,y,z], ...]}`.
pub fn parse_weight_rule(text: &str) -> Result<WeightRule> {
    if text == "ratio" {
        return Ok(WeightRule::Ratio);
    }
    if let Some(arg) = text.strip_prefix("const:") {
        return Ok(WeightRule::Const(parse_quaternion(arg)?));
    }
    if let Some(path) = text.strip_prefix("custom:") {
        return load_weight_table(Path::new(path));
    }
    Err(Error::InvalidConfig(format!(
        "unknown weight rule {text:?}; expected const:<q>, ratio or custom:<file.json>"
    )))
}

fn load_weight_table(path: &Path) -> Result<WeightRule> {
    let raw = fs::read_to_string(path)
        .map_err(|e| Error::InvalidConfig(format!("cannot read {}: {e}", path.display())))?;
    let file: WeightFile = serde_json::from_str(&raw)
        .map_err(|e| Error::InvalidConfig(format!("cannot parse {}: {e}", path.display())))?;
    if file.schema != 1 {
        return Err(Error::InvalidConfig(format!(
            "unsupported weight-file schema {} in {}",
            file.schema,
            path.display()
        )));
    }
    if file.weights.is_empty() {
        return Err(Error::InvalidConfig(format!(
            "empty weight table in {}",
            path.display()
        )));
    }
    Ok(WeightRule::Table(
        file.weights
            .into_iter()
            .map(|[w, x, y, z]| Quaternion::new(w, x, y, z))
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternions_parse_from_one_two_or_four_parts() {
        assert_eq!(parse_quaternion("2").unwrap(), Quaternion::from_real(2.0));
        assert_eq!(
            parse_quaternion("0,0.5").unwrap(),
            Quaternion::new(0.0, 0.5, 0.0, 0.0)
        );
        assert_eq!(
            parse_quaternion("1, -2, 3, 4").unwrap(),
            Quaternion::new(1.0, -2.0, 3.0, 4.0)
        );
        assert!(parse_quaternion("1,2,3").is_err());
        assert!(parse_quaternion("a").is_err());
    }

    #[test]
    fn complex_numbers_parse() {
        assert_eq!(parse_complex("0.5").unwrap(), Complex64::new(0.5, 0.0));
        assert_eq!(parse_complex("0,1.3").unwrap(), Complex64::new(0.0, 1.3));
        assert!(parse_complex("1,2,3").is_err());
    }

    #[test]
    fn weight_dsl_covers_the_three_rules() {
        assert!(matches!(
            parse_weight_rule("const:1").unwrap(),
            WeightRule::Const(_)
        ));
        assert!(matches!(
            parse_weight_rule("ratio").unwrap(),
            WeightRule::Ratio
        ));
        assert!(parse_weight_rule("bogus").is_err());
        assert!(parse_weight_rule("custom:/no/such/file.json").is_err());
    }

    #[test]
    fn weight_files_round_trip_and_reject_garbage() {
        let dir = std::env::temp_dir();
        let good = dir.join("qcd_test_weights_good.json");
        fs::write(&good, r#"{"schema":1,"weights":[[1,0,0,0],[0,1,0,0]]}"#).unwrap();
        let rule = parse_weight_rule(&format!("custom:{}", good.display())).unwrap();
        match rule {
            WeightRule::Table(t) => {
                assert_eq!(t.len(), 2);
                assert_eq!(t[1], Quaternion::I);
            }
            other => panic!("expected a table, got {other:?}"),
        }

        let bad = dir.join("qcd_test_weights_bad.json");
        fs::write(&bad, r#"{"schema":1,"weights":[[1,0,0"#).unwrap();
        assert!(parse_weight_rule(&format!("custom:{}", bad.display())).is_err());
    }
}
