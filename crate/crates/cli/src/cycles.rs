//! Cycle-type JSON: an object from cycle length to cycle count.
//!
//! Counts that fit in a `u64` are JSON numbers, larger ones decimal strings.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::Value;

use realseq_core::CycleType;

use crate::error::FormatError;

/// Compact rendering with keys in ascending numeric order.
pub fn render(ct: &CycleType) -> String {
    // serde_json orders object keys as strings, so build the text by hand
    let body: Vec<String> = ct
        .iter()
        .map(|(len, count)| {
            let v = match count.to_u64() {
                Some(c) => c.to_string(),
                None => format!("\"{count}\""),
            };
            format!("\"{len}\":{v}")
        })
        .collect();
    format!("{{{}}}", body.join(","))
}

pub fn parse(text: &str) -> Result<BTreeMap<usize, BigUint>, FormatError> {
    let value: Value = serde_json::from_str(text)?;
    let Value::Object(map) = value else {
        return Err(FormatError::Report("cycle type must be a JSON object".into()));
    };
    let mut out = BTreeMap::new();
    for (k, v) in map {
        let len: usize = k
            .parse()
            .ok()
            .filter(|&l| l > 0)
            .ok_or_else(|| FormatError::Report(format!("bad cycle length `{k}`")))?;
        let count = match &v {
            Value::Number(n) => n.as_u64().map(BigUint::from),
            Value::String(s) => s.parse().ok(),
            _ => None,
        }
        .ok_or_else(|| FormatError::Report(format!("bad count for length {len}")))?;
        out.insert(len, count);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_in_numeric_order() {
        let ct = CycleType::new(
            12,
            [(1, 1u32), (2, 3), (10, 2)].map(|(l, c)| (l, BigUint::from(c))),
        )
        .unwrap();
        assert_eq!(render(&ct), r#"{"1":1,"2":3,"10":2}"#);
        let parsed = parse(&render(&ct)).unwrap();
        assert_eq!(parsed.get(&10), Some(&BigUint::from(2u8)));
    }

    #[test]
    fn huge_counts_are_strings() {
        let huge: BigUint = "340282366920938463463374607431768211456".parse().unwrap();
        let ct = CycleType::new(3, [(3, huge.clone())]).unwrap();
        let text = render(&ct);
        assert_eq!(text, format!("{{\"3\":\"{huge}\"}}"));
        assert_eq!(parse(&text).unwrap()[&3], huge);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse("[1]").is_err());
        assert!(parse(r#"{"0":1}"#).is_err());
        assert!(parse(r#"{"1":-1}"#).is_err());
    }
}
