//! JSON and text serialization of structures and linear combinations.
//!
//! Indices are 1-based on the wire. Coefficients are exact fractions
//! written `"p/q"`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{Element, Tensor};
use crate::canonical::canonical_key;
use crate::dqp::DoubleQuasiPoset;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::preorder::{Preorder, MAX_N};
use crate::words::{GroupElement, PackedWord, WordCombination};

/// Wire form of a double quasi-poset: closed, non-reflexive, sorted pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DqpJson {
    pub n: usize,
    pub le1: Vec<[usize; 2]>,
    pub le2: Vec<[usize; 2]>,
}

fn pairs_out(p: &Preorder) -> Vec<[usize; 2]> {
    p.pairs().into_iter().map(|(i, j)| [i + 1, j + 1]).collect()
}

fn pairs_in(n: usize, pairs: &[[usize; 2]]) -> Result<Preorder> {
    let zero_based = pairs
        .iter()
        .map(|&[i, j]| {
            if i == 0 || j == 0 || i > n || j > n {
                let index = if i == 0 || i > n { i } else { j };
                Err(Error::IndexOutOfRange { index, n })
            } else {
                Ok((i - 1, j - 1))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Preorder::from_closed_pairs(n, &zero_based)
}

impl From<&DoubleQuasiPoset> for DqpJson {
    fn from(p: &DoubleQuasiPoset) -> Self {
        DqpJson {
            n: p.len(),
            le1: pairs_out(p.le1()),
            le2: pairs_out(p.le2()),
        }
    }
}

impl TryFrom<&DqpJson> for DoubleQuasiPoset {
    type Error = Error;
    fn try_from(j: &DqpJson) -> Result<Self> {
        Error::check_limit("double quasi-poset", j.n, MAX_N)?;
        DoubleQuasiPoset::new(pairs_in(j.n, &j.le1)?, pairs_in(j.n, &j.le2)?)
    }
}

pub fn dqp_to_json(p: &DoubleQuasiPoset) -> Value {
    serde_json::to_value(DqpJson::from(p)).expect("plain data serializes")
}

pub fn dqp_from_json(v: &Value) -> Result<DoubleQuasiPoset> {
    let j: DqpJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    DoubleQuasiPoset::try_from(&j)
}

/// Accepts either the JSON object or the `dqp n; ..; ..` text form.
pub fn parse_dqp(text: &str) -> Result<DoubleQuasiPoset> {
    let text = text.trim();
    if text.starts_with('{') {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        dqp_from_json(&v)
    } else {
        DoubleQuasiPoset::parse_text(text)
    }
}

pub fn rational_to_string(c: &BigRational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad coefficient {text:?}"));
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

/// `[["p/q", dqp], ..]` in key order.
pub fn element_to_json(a: &Element) -> Value {
    Value::Array(
        a.iter()
            .map(|(k, c)| json!([rational_to_string(c), dqp_to_json(&k.to_dqp())]))
            .collect(),
    )
}

fn pair_entries(v: &Value) -> Result<Vec<(BigRational, &Value)>> {
    let entries = v
        .as_array()
        .ok_or_else(|| Error::Parse("expected a list of [coefficient, value] pairs".into()))?;
    entries
        .iter()
        .map(|e| match e.as_array().map(Vec::as_slice) {
            Some([Value::String(c), x]) => Ok((parse_rational(c)?, x)),
            _ => Err(Error::Parse(format!("bad term {e}"))),
        })
        .collect()
}

/// Reads a combination; terms are canonicalized and accumulate.
pub fn element_from_json(v: &Value) -> Result<Element> {
    let mut out = Element::zero();
    for (c, x) in pair_entries(v)? {
        out.add_term(canonical_key(&dqp_from_json(x)?), c);
    }
    Ok(out)
}

/// Accepts a single structure (JSON or text) or a combination list.
pub fn parse_element(text: &str) -> Result<Element> {
    let trimmed = text.trim();
    if trimmed.starts_with('[') {
        let v: Value = serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()))?;
        element_from_json(&v)
    } else {
        Ok(Element::basis(canonical_key(&parse_dqp(trimmed)?)))
    }
}

/// `[["p/q", [left, right]], ..]` in key order.
pub fn tensor_to_json(t: &Tensor) -> Value {
    Value::Array(
        t.iter()
            .map(|((a, b), c)| {
                json!([
                    rational_to_string(c),
                    [dqp_to_json(&a.to_dqp()), dqp_to_json(&b.to_dqp())]
                ])
            })
            .collect(),
    )
}

pub fn tensor_from_json(v: &Value) -> Result<Tensor> {
    let mut out = Tensor::zero();
    for (c, x) in pair_entries(v)? {
        let [a, b] = x
            .as_array()
            .map(Vec::as_slice)
            .and_then(|s| <&[Value; 2]>::try_from(s).ok())
            .ok_or_else(|| Error::Parse(format!("expected a pair of structures, got {x}")))?;
        let key = (
            canonical_key(&dqp_from_json(a)?),
            canonical_key(&dqp_from_json(b)?),
        );
        out.add_term(key, c);
    }
    Ok(out)
}

/// `[["p/q", "213"], ..]`.
pub fn words_to_json(x: &WordCombination) -> Value {
    Value::Array(
        x.iter()
            .map(|(w, c)| json!([rational_to_string(c), w.to_string()]))
            .collect(),
    )
}

pub fn words_from_json(v: &Value) -> Result<WordCombination> {
    let mut out = WordCombination::zero();
    for (c, x) in pair_entries(v)? {
        let text = x
            .as_str()
            .ok_or_else(|| Error::Parse(format!("expected a word string, got {x}")))?;
        out.add_term(PackedWord::parse(text)?, c);
    }
    Ok(out)
}

/// Permutations in 1-based one-line notation.
pub fn group_to_json(x: &GroupElement) -> Value {
    Value::Array(
        x.iter()
            .map(|(s, c)| {
                json!([
                    rational_to_string(c),
                    PackedWord::from_permutation(s).to_string()
                ])
            })
            .collect(),
    )
}

pub fn permutation_to_json(f: &Permutation) -> Value {
    json!(f.one_line())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{coproduct, Variant};
    use crate::canonical::enumerate_isoclasses;
    use crate::dqp::Family;
    use crate::lincomb::rational;

    #[test]
    fn dqp_round_trips_bit_exactly() {
        for n in 0..=3 {
            for key in enumerate_isoclasses(n, Family::Dqp).unwrap() {
                let p = key.to_dqp();
                let v = dqp_to_json(&p);
                assert_eq!(dqp_from_json(&v).unwrap(), p);
                let text = serde_json::to_string(&v).unwrap();
                assert_eq!(parse_dqp(&text).unwrap(), p);
                assert_eq!(
                    serde_json::to_string(&dqp_to_json(&parse_dqp(&text).unwrap())).unwrap(),
                    text
                );
                assert_eq!(parse_dqp(&p.to_string()).unwrap(), p);
            }
        }
    }

    #[test]
    fn json_shape() {
        let p = DoubleQuasiPoset::trivial_chain(2);
        assert_eq!(dqp_to_json(&p), json!({"n": 2, "le1": [], "le2": [[1, 2]]}));
    }

    #[test]
    fn strict_ingestion() {
        let open = json!({"n": 3, "le1": [[1, 2], [2, 3]], "le2": []});
        assert!(matches!(dqp_from_json(&open), Err(Error::NotClosed(..))));
        let out_of_range = json!({"n": 2, "le1": [[1, 3]], "le2": []});
        assert!(matches!(
            dqp_from_json(&out_of_range),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(dqp_from_json(&json!({"n": 1})).is_err());
        assert!(parse_dqp("{nope").is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(
            parse_rational("-6/4").unwrap(),
            BigRational::new(BigInt::from(-3), BigInt::from(2))
        );
        assert_eq!(parse_rational("5").unwrap(), rational(5));
        assert_eq!(rational_to_string(&rational(-2)), "-2/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn combinations_round_trip() {
        let keys = enumerate_isoclasses(2, Family::Dqp).unwrap();
        let a: Element = keys
            .iter()
            .enumerate()
            .map(|(i, k)| (*k, rational(i as i64 - 4)))
            .collect();
        assert_eq!(element_from_json(&element_to_json(&a)).unwrap(), a);
        let text = serde_json::to_string(&element_to_json(&a)).unwrap();
        assert_eq!(parse_element(&text).unwrap(), a);
        let t = coproduct(&a, Variant::Strict);
        assert_eq!(tensor_from_json(&tensor_to_json(&t)).unwrap(), t);
        let w: WordCombination = [(PackedWord::parse("212").unwrap(), rational(3))]
            .into_iter()
            .collect();
        assert_eq!(words_from_json(&words_to_json(&w)).unwrap(), w);
    }
}
