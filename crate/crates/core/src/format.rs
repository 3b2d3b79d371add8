//! Text and JSON forms of alpha vectors and cuts.
//!
//! Both are flat maps from colour name to integer. The text form has one
//! `name: value` pair per line. The JSON form is an object, optionally
//! wrapped under an `"alpha"` or `"cut"` key. Cut positions are 1-based.

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::necklace::{AlphaVector, Cut, CutEvaluation, Necklace};

/// Reads `name: value` pairs from text or JSON. For JSON input, `wrapper`
/// names an optional enclosing key.
pub fn parse_named_values(input: &str, wrapper: &str) -> Result<Vec<(String, usize)>> {
    let trimmed = input.trim_start();
    if trimmed.starts_with('{') {
        let value: Value =
            serde_json::from_str(input).map_err(|e| Error::Parse(format!("json: {e}")))?;
        let obj = match value.get(wrapper) {
            Some(inner) => inner,
            None => &value,
        };
        let obj = obj
            .as_object()
            .ok_or_else(|| Error::Parse(format!("expected an object of {wrapper} values")))?;
        return obj
            .iter()
            .map(|(k, v)| {
                v.as_u64()
                    .map(|x| (k.clone(), x as usize))
                    .ok_or_else(|| Error::Parse(format!("value for {k} is not a natural number")))
            })
            .collect();
    }
    let mut pairs = Vec::new();
    for (lineno, line) in input.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, value) = line
            .split_once(':')
            .or_else(|| line.split_once('='))
            .or_else(|| line.split_once(char::is_whitespace))
            .ok_or_else(|| Error::Parse(format!("line {}: expected name: value", lineno + 1)))?;
        let value = value
            .trim()
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
        pairs.push((name.trim().to_string(), value));
    }
    Ok(pairs)
}

fn by_colour(necklace: &Necklace, pairs: Vec<(String, usize)>) -> Result<Vec<usize>> {
    let mut values = vec![None; necklace.n()];
    for (name, v) in pairs {
        let c = necklace
            .colour_by_name(&name)
            .ok_or_else(|| Error::Parse(format!("unknown colour {name}")))?;
        if values[c].replace(v).is_some() {
            return Err(Error::Parse(format!("colour {name} given twice")));
        }
    }
    values
        .into_iter()
        .enumerate()
        .map(|(c, v)| v.ok_or_else(|| Error::Parse(format!("missing colour {}", necklace.name(c)))))
        .collect()
}

pub fn parse_alpha(necklace: &Necklace, input: &str) -> Result<AlphaVector> {
    let values = by_colour(necklace, parse_named_values(input, "alpha")?)?;
    AlphaVector::for_necklace(necklace, values)
}

pub fn parse_cut(necklace: &Necklace, input: &str) -> Result<Cut> {
    let values = by_colour(necklace, parse_named_values(input, "cut")?)?;
    if values.contains(&0) {
        return Err(Error::InvalidCut("positions are 1-based".into()));
    }
    let cut = Cut::from_one_based(&values);
    cut.validate(necklace)?;
    Ok(cut)
}

pub fn alpha_map(necklace: &Necklace, alpha: &AlphaVector) -> Map<String, Value> {
    necklace
        .colours()
        .map(|c| (c.name.to_string(), Value::from(alpha.get(c.id))))
        .collect()
}

pub fn cut_map(necklace: &Necklace, cut: &Cut) -> Map<String, Value> {
    necklace
        .colours()
        .map(|c| (c.name.to_string(), Value::from(cut.point(c.id) + 1)))
        .collect()
}

pub fn alpha_to_text(necklace: &Necklace, alpha: &AlphaVector) -> String {
    necklace
        .colours()
        .map(|c| format!("{}: {}\n", c.name, alpha.get(c.id)))
        .collect()
}

pub fn cut_to_text(necklace: &Necklace, cut: &Cut) -> String {
    necklace
        .colours()
        .map(|c| format!("{}: {}\n", c.name, cut.point(c.id) + 1))
        .collect()
}

pub fn alpha_to_json(necklace: &Necklace, alpha: &AlphaVector) -> Value {
    let mut obj = Map::new();
    obj.insert("alpha".into(), Value::Object(alpha_map(necklace, alpha)));
    Value::Object(obj)
}

/// `{"cut": .., "sign": "+"|"-", "alpha": ..}` for an evaluated cut.
pub fn evaluation_to_json(necklace: &Necklace, cut: &Cut, ev: &CutEvaluation) -> Value {
    let mut obj = Map::new();
    obj.insert("cut".into(), Value::Object(cut_map(necklace, cut)));
    obj.insert("sign".into(), Value::from(ev.sign.symbol()));
    obj.insert("alpha".into(), Value::Object(alpha_map(necklace, &ev.alpha)));
    Value::Object(obj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::necklace::evaluate_cut;

    #[test]
    fn text_and_json_agree() {
        let neck = Necklace::parse("a b a").unwrap();
        let text = parse_alpha(&neck, "a: 2\nb: 1\n").unwrap();
        let flat = parse_alpha(&neck, r#"{"a": 2, "b": 1}"#).unwrap();
        let wrapped = parse_alpha(&neck, r#"{"alpha": {"b": 1, "a": 2}}"#).unwrap();
        assert_eq!(text, flat);
        assert_eq!(text, wrapped);
        assert_eq!(alpha_to_text(&neck, &text), "a: 2\nb: 1\n");
    }

    #[test]
    fn alpha_round_trip() {
        let neck = Necklace::parse("x y y x z").unwrap();
        let alpha = AlphaVector::new(vec![2, 1, 1]);
        let json = alpha_to_json(&neck, &alpha).to_string();
        assert_eq!(parse_alpha(&neck, &json).unwrap(), alpha);
        assert_eq!(parse_alpha(&neck, &alpha_to_text(&neck, &alpha)).unwrap(), alpha);
    }

    #[test]
    fn missing_and_unknown_colours() {
        let neck = Necklace::parse("a b a").unwrap();
        assert!(parse_alpha(&neck, "a: 1").is_err());
        assert!(parse_alpha(&neck, "a: 1\nb: 1\nc: 1").is_err());
        assert!(parse_alpha(&neck, "a: 1\na: 1\nb: 1").is_err());
    }

    #[test]
    fn cut_json_has_sign() {
        let neck = Necklace::parse("a b a").unwrap();
        let cut = parse_cut(&neck, "a: 1\nb: 2").unwrap();
        let ev = evaluate_cut(&neck, &cut).unwrap();
        let json = evaluation_to_json(&neck, &cut, &ev);
        assert_eq!(json["sign"], "+");
        assert_eq!(json["cut"]["a"], 1);
        assert_eq!(json["alpha"]["a"], 2);
        assert_eq!(parse_cut(&neck, &json.to_string()).unwrap(), cut);
    }

    #[test]
    fn cut_rejects_wrong_bead() {
        let neck = Necklace::parse("a b a").unwrap();
        assert!(parse_cut(&neck, "a: 2\nb: 2").is_err());
        assert!(parse_cut(&neck, "a: 0\nb: 2").is_err());
    }
}
