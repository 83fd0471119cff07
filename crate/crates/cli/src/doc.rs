//! JSON encoding of groups, homomorphisms, bitorsors and morphisms.
//!
//! Derived objects reference groups by index into a per-document `groups`
//! array. Tables of objects larger than [`EMBED_LIMIT`] are replaced by
//! `{"sha256": …}` of their JSON serialization; a reader restores them by
//! recomputing the object and comparing hashes.

use bitorsor_kit::bitorsor::Bitorsor;
use bitorsor_kit::{BitorsorMorphism, Error, FiniteGroup, GroupHom};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "bitorsor-kit/1";
pub const EMBED_LIMIT: usize = 24;

pub fn sha256_hex(v: &Value) -> String {
    let bytes = serde_json::to_vec(v).expect("JSON values serialize");
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn tabulate(v: Value, embed: bool) -> Value {
    if embed {
        v
    } else {
        json!({ "sha256": sha256_hex(&v) })
    }
}

/// A group with its full table, regardless of size.
pub fn full_group(g: &FiniteGroup) -> Value {
    group_value(g, true)
}

fn group_value(g: &FiniteGroup, embed: bool) -> Value {
    json!({
        "label": g.label(),
        "order": g.order(),
        "generators": g.generators(),
        "table": tabulate(json!(g.table_rows()), embed),
    })
}

pub struct Encoder {
    groups: Vec<FiniteGroup>,
    embed_all: bool,
}

impl Encoder {
    pub fn new(embed_all: bool) -> Self {
        Encoder {
            groups: Vec::new(),
            embed_all,
        }
    }

    pub fn group(&mut self, g: &FiniteGroup) -> usize {
        if let Some(i) = self.groups.iter().position(|h| h == g) {
            return i;
        }
        self.groups.push(g.clone());
        self.groups.len() - 1
    }

    pub fn hom(&mut self, h: &GroupHom) -> Value {
        json!({ "src": self.group(h.src()), "dst": self.group(h.dst()), "map": h.map() })
    }

    pub fn bitorsor(&mut self, b: &Bitorsor) -> Value {
        let embed = self.embed_all
            || [
                b.size(),
                b.left().order(),
                b.right().order(),
                b.pi().order(),
            ]
            .iter()
            .all(|&k| k <= EMBED_LIMIT);
        json!({
            "left": self.group(b.left()),
            "right": self.group(b.right()),
            "pi": self.group(b.pi()),
            "size": b.size(),
            "left_act": tabulate(json!(b.left_act_table()), embed),
            "right_act": tabulate(json!(b.right_act_table()), embed),
            "pi_points": tabulate(json!(b.pi_points_table()), embed),
        })
    }

    /// The maps of a morphism; source and target are implied by context.
    pub fn morphism(&mut self, m: &BitorsorMorphism) -> Value {
        json!({
            "phi_left": self.hom(m.phi_left()),
            "point_map": m.point_map(),
            "phi_right": self.hom(m.phi_right()),
        })
    }

    pub fn groups(&self) -> Value {
        Value::Array(
            self.groups
                .iter()
                .map(|g| group_value(g, self.embed_all || g.order() <= EMBED_LIMIT))
                .collect(),
        )
    }
}

/// Malformed or inconsistent document content.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DocError {
    Shape(String),
    Domain(Error),
}

impl std::fmt::Display for DocError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DocError::Shape(m) => write!(f, "certificate: {m}"),
            DocError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl<E: Into<Error>> From<E> for DocError {
    fn from(e: E) -> Self {
        DocError::Domain(e.into())
    }
}

fn shape(m: impl Into<String>) -> DocError {
    DocError::Shape(m.into())
}

pub fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, DocError> {
    v.get(key).ok_or_else(|| shape(format!("missing `{key}`")))
}

pub fn usize_of(v: &Value, key: &str) -> Result<usize, DocError> {
    field(v, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| shape(format!("`{key}` is not a non-negative integer")))
}

pub fn usizes(v: &Value, what: &str) -> Result<Vec<usize>, DocError> {
    let arr = v
        .as_array()
        .ok_or_else(|| shape(format!("`{what}` is not an array")))?;
    arr.iter()
        .map(|x| {
            x.as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| shape(format!("`{what}` has a non-integer entry")))
        })
        .collect()
}

pub fn usizes_of(v: &Value, key: &str) -> Result<Vec<usize>, DocError> {
    usizes(field(v, key)?, key)
}

/// Builds a group from its JSON form; the table must be embedded.
pub fn parse_group(v: &Value) -> Result<FiniteGroup, DocError> {
    let order = usize_of(v, "order")?;
    let label = field(v, "label")?
        .as_str()
        .ok_or_else(|| shape("`label` is not a string"))?;
    let gens = usizes_of(v, "generators")?;
    let rows = field(v, "table")?
        .as_array()
        .ok_or_else(|| shape("group table is not embedded"))?
        .iter()
        .map(|r| usizes(r, "table"))
        .collect::<Result<Vec<_>, _>>()?;
    if rows.len() != order {
        return Err(shape(format!(
            "table has {} rows, order is {order}",
            rows.len()
        )));
    }
    Ok(bitorsor_kit::group::make_group(&rows, &gens, label)?)
}

pub struct Decoder {
    groups: Vec<FiniteGroup>,
}

impl Decoder {
    pub fn new(groups: &Value) -> Result<Self, DocError> {
        let arr = groups
            .as_array()
            .ok_or_else(|| shape("`groups` is not an array"))?;
        Ok(Decoder {
            groups: arr.iter().map(parse_group).collect::<Result<_, _>>()?,
        })
    }

    pub fn group(&self, v: &Value, key: &str) -> Result<FiniteGroup, DocError> {
        let i = usize_of(v, key)?;
        self.groups
            .get(i)
            .cloned()
            .ok_or_else(|| shape(format!("group index {i} out of range")))
    }

    pub fn hom(&self, v: &Value) -> Result<GroupHom, DocError> {
        Ok(GroupHom::new(
            self.group(v, "src")?,
            self.group(v, "dst")?,
            usizes_of(v, "map")?,
        )?)
    }

    pub fn bitorsor(&self, v: &Value) -> Result<Bitorsor, DocError> {
        Ok(Bitorsor::with_pi(
            self.group(v, "left")?,
            self.group(v, "right")?,
            usizes_of(v, "left_act")?,
            usizes_of(v, "right_act")?,
            self.group(v, "pi")?,
            usizes_of(v, "pi_points")?,
        )?)
    }

    /// A morphism between known bitorsors. Its laws are left to the caller's
    /// exhaustive check.
    pub fn morphism(
        &self,
        v: &Value,
        src: Bitorsor,
        dst: Bitorsor,
    ) -> Result<BitorsorMorphism, DocError> {
        let phi_left = self.hom(field(v, "phi_left")?)?;
        let phi_right = self.hom(field(v, "phi_right")?)?;
        let point_map = usizes_of(v, "point_map")?;
        Ok(BitorsorMorphism::from_parts_unchecked(
            src, dst, phi_left, point_map, phi_right,
        ))
    }
}

pub fn has_hashed(v: &Value) -> bool {
    match v {
        Value::Object(m) => m.contains_key("sha256") || m.values().any(has_hashed),
        Value::Array(a) => a.iter().any(has_hashed),
        _ => false,
    }
}

/// Replaces every `{"sha256": h}` in `doc` by the value at the same place in
/// `full`, after checking that it hashes to `h`.
pub fn fill_hashed(doc: &mut Value, full: &Value, path: &str) -> Result<(), DocError> {
    match doc {
        Value::Object(m) if m.len() == 1 && m.contains_key("sha256") => {
            let want = m["sha256"].as_str().unwrap_or_default();
            if sha256_hex(full) != want {
                return Err(shape(format!("hash mismatch at {path}")));
            }
            *doc = full.clone();
            Ok(())
        }
        Value::Object(m) => {
            for (k, v) in m.iter_mut() {
                let sub = full
                    .get(k)
                    .ok_or_else(|| shape(format!("unexpected field {path}.{k}")))?;
                fill_hashed(v, sub, &format!("{path}.{k}"))?;
            }
            Ok(())
        }
        Value::Array(a) => {
            let fa = full
                .as_array()
                .filter(|f| f.len() == a.len())
                .ok_or_else(|| shape(format!("length mismatch at {path}")))?;
            for (i, (v, f)) in a.iter_mut().zip(fa).enumerate() {
                fill_hashed(v, f, &format!("{path}[{i}]"))?;
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use bitorsor_kit::bitorsor::{inverse, trivial_bitorsor};
    use bitorsor_kit::group::builtin::{cyclic, symmetric};

    #[test]
    fn round_trip() {
        let b = inverse(&trivial_bitorsor(&symmetric(3)));
        let mut enc = Encoder::new(false);
        let v = enc.bitorsor(&b);
        let dec = Decoder::new(&enc.groups()).unwrap();
        assert_eq!(dec.bitorsor(&v).unwrap(), b);
    }

    #[test]
    fn large_tables_are_hashed_and_restored() {
        let b = trivial_bitorsor(&cyclic(30));
        let mut small = Encoder::new(false);
        let mut doc = json!({ "b": small.bitorsor(&b), "groups": small.groups() });
        assert!(has_hashed(&doc));
        let mut full = Encoder::new(true);
        let f = json!({ "b": full.bitorsor(&b), "groups": full.groups() });
        fill_hashed(&mut doc, &f, "").unwrap();
        assert_eq!(doc, f);
        let dec = Decoder::new(&doc["groups"]).unwrap();
        assert_eq!(dec.bitorsor(&doc["b"]).unwrap(), b);

        let mut tampered = json!({ "b": small.bitorsor(&b), "groups": small.groups() });
        let mut other = f.clone();
        other["b"]["left_act"][0] = json!(1);
        assert!(matches!(
            fill_hashed(&mut tampered, &other, ""),
            Err(DocError::Shape(_))
        ));
    }
}
