//! JSON encodings of modules and results.
//!
//! Integers are JSON numbers when they fit in an `i64` and decimal strings
//! otherwise. Matrices are arrays of rows. Unknown fields are rejected, and
//! decoding errors carry a location (line/column for syntax, a path for
//! semantic problems).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, Ring};
use crate::module::{KCModule, PresentedHCModule, Relation, Side, TabulatedHCModule};
use crate::monoid::FiniteCommMonoid;

/// A JSON number when the value fits in an `i64`, a decimal string otherwise.
pub fn bigint_value(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => Value::from(x),
        None => Value::from(v.to_string()),
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Num {
    Small(i64),
    Big(String),
}

impl Num {
    fn value(&self, at: &str) -> Result<BigInt> {
        match self {
            Num::Small(x) => Ok(BigInt::from(*x)),
            Num::Big(s) => s.parse().map_err(|_| Error::parse(at, format!("{s:?} is not an integer"))),
        }
    }
}

fn syntax(e: serde_json::Error) -> Error {
    Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
}

fn semantic(at: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::Parse { .. } => e,
        other => Error::parse(at, other.to_string()),
    }
}

pub fn matrix_value(m: &IntMatrix) -> Value {
    let mut rows = vec![vec![Value::from(0); m.cols()]; m.rows()];
    for (i, j, v) in m.triplets() {
        rows[i][j] = bigint_value(v);
    }
    Value::from(rows.into_iter().map(Value::from).collect::<Vec<_>>())
}

fn decode_matrix(rows: &[Vec<Num>], shape: (usize, usize), at: &str) -> Result<IntMatrix> {
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return Err(Error::parse(at, format!("expected a {}×{} matrix", shape.0, shape.1)));
    }
    let mut entries = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            entries.push((i, j, x.value(at)?));
        }
    }
    Ok(IntMatrix::from_triplets(shape.0, shape.1, entries))
}

/// Serialize with object keys sorted at every level, independent of how
/// `serde_json` orders maps.
pub fn canonical_string(v: &Value) -> String {
    fn write(v: &Value, out: &mut String) {
        match v {
            Value::Object(map) => {
                let sorted: BTreeMap<&String, &Value> = map.iter().collect();
                out.push('{');
                for (k, (key, val)) in sorted.into_iter().enumerate() {
                    if k > 0 {
                        out.push(',');
                    }
                    out.push_str(&Value::from(key.as_str()).to_string());
                    out.push(':');
                    write(val, out);
                }
                out.push('}');
            }
            Value::Array(items) => {
                out.push('[');
                for (k, item) in items.iter().enumerate() {
                    if k > 0 {
                        out.push(',');
                    }
                    write(item, out);
                }
                out.push(']');
            }
            other => out.push_str(&other.to_string()),
        }
    }
    let mut out = String::new();
    write(v, &mut out);
    out
}

// ---- tabulated modules ------------------------------------------------

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TabulatedJson {
    side: String,
    ranks: Vec<usize>,
    act: BTreeMap<String, Vec<Vec<Num>>>,
}

/// `{"side", "ranks", "act": {"c,a": matrix}}`, one matrix per pair.
pub fn tabulated_value(m: &TabulatedHCModule) -> Value {
    let c = m.monoid();
    let mut act = serde_json::Map::new();
    for x in c.elements() {
        for a in c.elements() {
            act.insert(format!("{x},{a}"), matrix_value(m.act(x, a)));
        }
    }
    json!({"side": m.side().as_str(), "ranks": m.ranks(), "act": act})
}

pub fn decode_tabulated(text: &str, monoid: &FiniteCommMonoid) -> Result<TabulatedHCModule> {
    let raw: TabulatedJson = serde_json::from_str(text).map_err(syntax)?;
    let side: Side = raw.side.parse().map_err(semantic("side"))?;
    let size = monoid.size();
    if raw.ranks.len() != size {
        return Err(Error::parse("ranks", format!("expected {size} ranks")));
    }
    let mut act = vec![vec![None; size]; size];
    for (key, rows) in &raw.act {
        let at = format!("act[{key:?}]");
        let pair = key
            .split_once(',')
            .and_then(|(x, a)| Some((x.trim().parse::<usize>().ok()?, a.trim().parse::<usize>().ok()?)));
        let (x, a) = match pair {
            Some((x, a)) if x < size && a < size => (x, a),
            _ => return Err(Error::parse(&at, "key must be \"c,a\" with c, a monoid elements")),
        };
        let (r_a, r_xa) = (raw.ranks[a], raw.ranks[monoid.mul(x, a)]);
        let shape = match side {
            Side::Left => (r_xa, r_a),
            Side::Right => (r_a, r_xa),
        };
        act[x][a] = Some(decode_matrix(rows, shape, &at)?);
    }
    let act = act
        .into_iter()
        .enumerate()
        .map(|(x, row)| {
            row.into_iter()
                .enumerate()
                .map(|(a, m)| m.ok_or_else(|| Error::parse("act", format!("missing entry \"{x},{a}\""))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    TabulatedHCModule::new(side, monoid.clone(), raw.ranks, act).map_err(semantic("module"))
}

// ---- presented modules ------------------------------------------------

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorJson {
    label: String,
    degree: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RelationJson {
    degree: usize,
    terms: Vec<(usize, usize, Num)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentedJson {
    /// Defaults to `left`, the side of `Ω_C`.
    #[serde(default)]
    side: Option<String>,
    generators: Vec<GeneratorJson>,
    relations: Vec<RelationJson>,
}

/// `{"side", "generators": [{"label", "degree"}], "relations": [{"degree", "terms": [[g, c, coeff]]}]}`.
pub fn presented_value(p: &PresentedHCModule) -> Value {
    let generators: Vec<Value> = p
        .generators()
        .iter()
        .map(|(label, degree)| json!({"label": label, "degree": degree}))
        .collect();
    let relations: Vec<Value> = p
        .relations()
        .iter()
        .map(|r| {
            let terms: Vec<Value> = r.terms.iter().map(|(g, c, v)| json!([g, c, bigint_value(v)])).collect();
            json!({"degree": r.degree, "terms": terms})
        })
        .collect();
    json!({"side": p.side().as_str(), "generators": generators, "relations": relations})
}

pub fn decode_presented(text: &str, monoid: &FiniteCommMonoid) -> Result<PresentedHCModule> {
    let raw: PresentedJson = serde_json::from_str(text).map_err(syntax)?;
    let side = match &raw.side {
        Some(s) => s.parse().map_err(semantic("side"))?,
        None => Side::Left,
    };
    let generators = raw.generators.into_iter().map(|g| (g.label, g.degree)).collect();
    let relations = raw
        .relations
        .iter()
        .enumerate()
        .map(|(k, r)| {
            let at = format!("relations[{k}]");
            let terms = r
                .terms
                .iter()
                .map(|(g, c, v)| Ok((*g, *c, v.value(&at)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(Relation {
                degree: r.degree,
                terms,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    PresentedHCModule::new(side, monoid.clone(), generators, relations).map_err(semantic("module"))
}

// ---- K[C]-modules -----------------------------------------------------

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct KcJson {
    ring: String,
    rank: usize,
    action: Vec<Vec<Vec<Num>>>,
}

/// `{"ring", "rank", "action": [matrix of every element]}`.
pub fn kc_value(a: &KCModule) -> Value {
    let action: Vec<Value> = a.monoid().elements().map(|c| matrix_value(a.action(c))).collect();
    json!({"ring": a.ring().as_str(), "rank": a.rank(), "action": action})
}

pub fn decode_kc(text: &str, monoid: &FiniteCommMonoid) -> Result<KCModule> {
    let raw: KcJson = serde_json::from_str(text).map_err(syntax)?;
    let ring: Ring = raw.ring.parse().map_err(semantic("ring"))?;
    if raw.action.len() != monoid.size() {
        return Err(Error::parse("action", format!("expected {} matrices", monoid.size())));
    }
    let action = raw
        .action
        .iter()
        .enumerate()
        .map(|(c, rows)| decode_matrix(rows, (raw.rank, raw.rank), &format!("action[{c}]")))
        .collect::<Result<Vec<_>>>()?;
    KCModule::new(monoid.clone(), ring, raw.rank, action).map_err(semantic("module"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{omega, std_projective};
    use crate::monoid::{cyclic_group, product_monoid, truncated_add};
    use proptest::prelude::*;

    fn round_trip(m: &TabulatedHCModule) -> TabulatedHCModule {
        decode_tabulated(&canonical_string(&tabulated_value(m)), m.monoid()).unwrap()
    }

    #[test]
    fn monoid_file_round_trip() {
        let z2 = cyclic_group(2).unwrap();
        let text = z2.to_json();
        assert_eq!(text, r#"{"identity":0,"size":2,"table":[[0,1],[1,0]]}"#);
        assert_eq!(FiniteCommMonoid::from_json(&text).unwrap(), z2);
    }

    #[test]
    fn module_with_a_two_by_three_block() {
        // Over truncated_add(2) the right projective C_2 has ranks 1, 2, 3, so 1^* on N(2) → N(1) is 2×3.
        let c = truncated_add(2).unwrap();
        let m = std_projective(&c, 2, Side::Right);
        assert_eq!(m.act(1, 1).shape(), (2, 3));
        assert_eq!(round_trip(&m), m);
    }

    #[test]
    fn rejections() {
        let z2 = cyclic_group(2).unwrap();
        let bad_table = r#"{"identity":0,"size":2,"table":[[0,1],[1,2]]}"#;
        assert!(FiniteCommMonoid::from_json(bad_table).is_err());
        let extra = r#"{"identity":0,"size":2,"table":[[0,1],[1,0]],"name":"x"}"#;
        assert!(matches!(FiniteCommMonoid::from_json(extra), Err(Error::Parse { .. })));
        let text = r#"{"side":"left","ranks":[1,1],"act":{"0,0":[[1]],"0,1":[[1]],"1,0":[[1]],"1,1":[[1]],"2,0":[[1]]}}"#;
        let err = decode_tabulated(text, &z2).unwrap_err();
        assert!(matches!(&err, Error::Parse { location, .. } if location.contains("2,0")), "{err}");
        let missing = r#"{"side":"left","ranks":[1,1],"act":{"0,0":[[1]]}}"#;
        assert!(decode_tabulated(missing, &z2).is_err());
        let shape = r#"{"side":"left","ranks":[1,1],"act":{"0,0":[[1,0]],"0,1":[[1]],"1,0":[[1]],"1,1":[[1]]}}"#;
        assert!(decode_tabulated(shape, &z2).is_err());
        let syntax = decode_tabulated("{\"side\":", &z2).unwrap_err();
        assert!(matches!(syntax, Error::Parse { location, .. } if location.starts_with("line 1")));
    }

    #[test]
    fn presented_and_kc_round_trip() {
        let c = truncated_add(2).unwrap();
        let om = omega(&c);
        let text = canonical_string(&presented_value(&om));
        assert_eq!(decode_presented(&text, &c).unwrap(), om);
        let no_side = r#"{"generators":[{"label":"g","degree":1}],"relations":[{"degree":2,"terms":[[0,1,2]]}]}"#;
        assert_eq!(decode_presented(no_side, &c).unwrap().side(), Side::Left);
        let reg = KCModule::regular(&c, Ring::Q);
        assert_eq!(decode_kc(&canonical_string(&kc_value(&reg)), &c).unwrap(), reg);
    }

    #[test]
    fn big_entries_are_strings() {
        let big = BigInt::from(i64::MAX) * 4;
        assert_eq!(bigint_value(&big), Value::from(big.to_string()));
        let rows = vec![vec![Num::Big(big.to_string())]];
        assert_eq!(decode_matrix(&rows, (1, 1), "x").unwrap().get(0, 0), big);
    }

    #[test]
    fn canonical_sorts_keys() {
        let v = json!({"b": 1, "a": {"d": [1, {"z": 0, "y": 1}], "c": null}});
        assert_eq!(canonical_string(&v), r#"{"a":{"c":null,"d":[1,{"y":1,"z":0}]},"b":1}"#);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn projective_sums_round_trip(k1 in 1usize..4, k2 in 1usize..3, a in 0usize..6, b in 0usize..6, left in any::<bool>()) {
            let side = if left { Side::Left } else { Side::Right };
            let c = product_monoid(&cyclic_group(k1).unwrap(), &truncated_add(k2).unwrap()).monoid;
            let m = std_projective(&c, a % c.size(), side)
                .direct_sum(&std_projective(&c, b % c.size(), side))
                .unwrap();
            prop_assert_eq!(round_trip(&m), m);
        }
    }
}
