//! The fan file format:
//! `{"dim": n, "rays": [[int,...],...], "max_cones": [[idx,...],...]}`
//! with 0-based ray indices and cones sorted ascending.

use num_bigint::BigInt;
use serde_json::{Map, Number, Value};

use crate::error::{Error, Result};
use crate::fan::{validate_parts, Fan};
use crate::lattice::{Int, LatticeVector};

/// JSON number for an arbitrary-precision integer.
pub fn int_to_json(v: &Int) -> Value {
    Value::Number(v.to_string().parse::<Number>().expect("integers are valid JSON numbers"))
}

fn json_to_int(v: &Value, at: &str) -> Result<Int> {
    let Value::Number(n) = v else {
        return Err(Error::Parse(format!("{at}: expected integer, found {v}")));
    };
    let text = n.to_string();
    text.parse::<BigInt>().map_err(|_| Error::Parse(format!("{at}: expected integer, found {text}")))
}

fn json_to_index(v: &Value, at: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| Error::Parse(format!("{at}: expected non-negative index, found {v}")))
}

fn array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Parse(format!("{at}: expected array, found {v}")))
}

/// Parses and validates a fan document.
pub fn parse_fan_json(text: &str) -> Result<Fan> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let obj = doc.as_object().ok_or_else(|| Error::Parse("top level: expected object".into()))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "dim" | "rays" | "max_cones") {
            return Err(Error::Parse(format!("unknown field \"{key}\"")));
        }
    }
    let field = |k: &str| obj.get(k).ok_or_else(|| Error::Parse(format!("missing field \"{k}\"")));
    let dim = json_to_index(field("dim")?, "dim")?;
    let rays = array(field("rays")?, "rays")?
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let coords = array(r, &format!("rays[{i}]"))?
                .iter()
                .enumerate()
                .map(|(j, c)| json_to_int(c, &format!("rays[{i}][{j}]")))
                .collect::<Result<Vec<_>>>()?;
            Ok(LatticeVector::new(coords))
        })
        .collect::<Result<Vec<_>>>()?;
    let cones = array(field("max_cones")?, "max_cones")?
        .iter()
        .enumerate()
        .map(|(i, c)| {
            array(c, &format!("max_cones[{i}]"))?
                .iter()
                .enumerate()
                .map(|(j, x)| json_to_index(x, &format!("max_cones[{i}][{j}]")))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let report = validate_parts(dim, &rays, &cones);
    if let Some(v) = report.violations.first() {
        return Err(Error::InvalidFan(report.describe(v)));
    }
    Fan::new(dim, rays, cones)
}

pub fn fan_to_json(fan: &Fan) -> Value {
    let mut obj = Map::new();
    obj.insert("dim".into(), Value::from(fan.dim()));
    obj.insert(
        "rays".into(),
        Value::Array(fan.rays().iter().map(|r| Value::Array(r.coords().iter().map(int_to_json).collect())).collect()),
    );
    obj.insert(
        "max_cones".into(),
        Value::Array(
            fan.max_cones().iter().map(|c| Value::Array(c.rays().iter().map(|&i| Value::from(i)).collect())).collect(),
        ),
    );
    Value::Object(obj)
}

/// Compact single-line serialization, keys in `dim, rays, max_cones` order.
pub fn write_fan_json(fan: &Fan) -> String {
    let mut s = String::from("{\"dim\":");
    s.push_str(&fan.dim().to_string());
    s.push_str(",\"rays\":");
    s.push_str(&fan_to_json(fan)["rays"].to_string());
    s.push_str(",\"max_cones\":");
    s.push_str(&fan_to_json(fan)["max_cones"].to_string());
    s.push('}');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const P3: &str = r#"{"dim": 3, "rays": [[1,0,0],[0,1,0],[0,0,1],[-1,-1,-1]],
        "max_cones": [[0,1,2],[0,1,3],[0,2,3],[1,2,3]]}"#;

    #[test]
    fn parses_projective_space() {
        let fan = parse_fan_json(P3).unwrap();
        assert_eq!(fan.ray_count(), 4);
        assert_eq!(fan.max_cones().len(), 4);
        assert_eq!(fan, Fan::projective_space(3));
    }

    #[test]
    fn rejects_bad_input() {
        let e = parse_fan_json(&P3.replace("[1,0,0]", "[2,0,0]")).unwrap_err();
        assert_eq!(e.to_string(), "invalid fan: ray 0 not primitive");
        let e = parse_fan_json(&P3.replace("[0,1,2],", "[0,1],")).unwrap_err();
        assert_eq!(e.to_string(), "invalid fan: cone 0 has size 2, expected 3");
        let e = parse_fan_json(&P3.replace("[0,1,0]", "[0,1.5,0]")).unwrap_err();
        assert!(e.to_string().contains("rays[1][1]"), "{e}");
        let e = parse_fan_json(&P3.replace("[0,1,0]", "[1,0,0]")).unwrap_err();
        assert!(e.to_string().contains("duplicates"), "{e}");
        assert!(matches!(parse_fan_json("{\"dim\": 3"), Err(Error::Parse(_))));
        assert!(matches!(parse_fan_json("{\"dim\": 3, \"rays\": []}"), Err(Error::Parse(_))));
    }

    #[test]
    fn big_coordinates_survive() {
        let big = "123456789012345678901234567890";
        let text = format!(r#"{{"dim":2,"rays":[[1,0],[{big},1],[-1,0]],"max_cones":[[0,1],[1,2]]}}"#);
        let fan = parse_fan_json(&text).unwrap();
        assert_eq!(fan.ray(1).coords()[0].to_string(), big);
        assert_eq!(write_fan_json(&fan), text);
    }

    #[test]
    fn writes_compact_form() {
        assert_eq!(
            write_fan_json(&Fan::projective_space(2)),
            r#"{"dim":2,"rays":[[1,0],[0,1],[-1,-1]],"max_cones":[[0,1],[0,2],[1,2]]}"#
        );
    }
}
