//! The JSON input document.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use pg0_core::burniat::BurniatConfig;
use pg0_core::cover_algebra::Exponent;
use pg0_core::plane_geom::parse_rat;
use pg0_core::{ProjLine, ProjPoint, Rat};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

pub const SCHEMA: &str = "pg0-geography/1";

/// `"a:b:c"` with integer or `p/q` entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Homogeneous<T>(pub T);

pub type PointStr = Homogeneous<ProjPoint>;
pub type LineStr = Homogeneous<ProjLine>;

fn colon_form(c: &[impl fmt::Display; 3]) -> String {
    format!("{}:{}:{}", c[0], c[1], c[2])
}

impl Serialize for PointStr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&colon_form(self.0.coords()))
    }
}

impl Serialize for LineStr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&colon_form(self.0.coords()))
    }
}

impl<'de, T: FromStr> Deserialize<'de> for Homogeneous<T>
where
    T::Err: fmt::Display,
{
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map(Homogeneous).map_err(de::Error::custom)
    }
}

/// Pencil parameter `"λ:μ"`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Param(pub Rat, pub Rat);

impl Serialize for Param {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}:{}", self.0, self.1))
    }
}

impl<'de> Deserialize<'de> for Param {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let parts: Vec<&str> = s.split(':').collect();
        let [l, m] = parts[..] else {
            return Err(de::Error::custom(format!("pencil parameter {s:?}: expected \"λ:μ\"")));
        };
        Ok(Param(parse_rat(l).map_err(de::Error::custom)?, parse_rat(m).map_err(de::Error::custom)?))
    }
}

/// Monomial key `"a,b,c,d"`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct ExpKey(pub Exponent);

impl Serialize for ExpKey {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let [a, b, c, d] = self.0;
        s.serialize_str(&format!("{a},{b},{c},{d}"))
    }
}

impl<'de> Deserialize<'de> for ExpKey {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let parts: Result<Vec<u32>, _> = s.split(',').map(|p| p.trim().parse::<u32>()).collect();
        match parts.ok().as_deref() {
            Some(&[a, b, c, d]) => Ok(ExpKey([a, b, c, d])),
            _ => Err(de::Error::custom(format!("monomial key {s:?}: expected four exponents \"a,b,c,d\""))),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatStr(pub Rat);

impl Serialize for RatStr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for RatStr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map(RatStr).map_err(de::Error::custom)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<[PointStr; 3]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra_points: Vec<PointStr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pencils: Option<[[LineStr; 3]; 3]>,
    /// Per index: `null` keeps the Burniat divisor, a parameter selects the
    /// conic of a strictly extended one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extended: Option<[Option<Param>; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub campedelli: Option<Vec<LineStr>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub godeaux: Option<BTreeMap<ExpKey, RatStr>>,
}

impl ConfigDocument {
    pub fn burniat(&self) -> Option<BurniatConfig> {
        let vertices = self.vertices.as_ref()?.clone().map(|p| p.0);
        let pencils = self.pencils.as_ref()?.clone().map(|pen| pen.map(|l| l.0));
        Some(BurniatConfig::new(vertices, self.extra_points.iter().map(|p| p.0.clone()).collect(), pencils))
    }

    pub fn from_burniat(name: &str, cfg: &BurniatConfig) -> Self {
        ConfigDocument {
            schema: SCHEMA.into(),
            name: Some(name.into()),
            vertices: Some(cfg.vertices.clone().map(Homogeneous)),
            extra_points: cfg.extra_points.iter().cloned().map(Homogeneous).collect(),
            pencils: Some(cfg.pencils.clone().map(|p| p.map(Homogeneous))),
            extended: None,
            campedelli: None,
            godeaux: None,
        }
    }

    pub fn campedelli_lines(&self) -> Option<Vec<ProjLine>> {
        self.campedelli.as_ref().map(|ls| ls.iter().map(|l| l.0.clone()).collect())
    }

    pub fn extended_choices(&self) -> Option<[Option<(Rat, Rat)>; 3]> {
        self.extended.as_ref().map(|e| e.clone().map(|p| p.map(|Param(l, m)| (l, m))))
    }

    pub fn godeaux_coeffs(&self) -> Option<BTreeMap<Exponent, Rat>> {
        self.godeaux.as_ref().map(|g| g.iter().map(|(k, v)| (k.0, v.0.clone())).collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes") + "\n"
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    /// Path to the offending value, e.g. `vertices[1]`.
    pub path: String,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.line, self.column)?;
        if !self.path.is_empty() && self.path != "." {
            write!(f, "at {}: ", self.path)?;
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for ParseError {}

pub fn parse_config(text: &str) -> Result<ConfigDocument, ParseError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: ConfigDocument = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        // serde_json appends " at line L column C" to the message
        let msg = inner.to_string();
        let message = msg.rsplit_once(" at line ").map_or(msg.as_str(), |(m, _)| m).to_string();
        ParseError { path, line: inner.line(), column: inner.column(), message }
    })?;
    let err = |path: &str, message: String| ParseError { path: path.into(), line: 0, column: 0, message };
    if doc.schema != SCHEMA {
        return Err(err("schema", format!("unsupported schema {:?}, expected {SCHEMA:?}", doc.schema)));
    }
    if doc.vertices.is_some() != doc.pencils.is_some() {
        return Err(err(".", "\"vertices\" and \"pencils\" must be given together".into()));
    }
    if doc.vertices.is_none() && (!doc.extra_points.is_empty() || doc.extended.is_some()) {
        return Err(err(".", "\"extra_points\" and \"extended\" need a line configuration".into()));
    }
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use pg0_core::burniat::examples;

    const PRIMARY: &str = r#"{
  "schema": "pg0-geography/1",
  "vertices": ["1:0:0", "0:1:0", "0:0:1"],
  "pencils": [
    ["0:0:1", "0:1:-1", "0:1:-2"],
    ["1:0:0", "1:0:-1", "1:0:-3"],
    ["0:1:0", "1:-2:0", "1:-5:0"]
  ]
}"#;

    #[test]
    fn primary_parses() {
        let doc = parse_config(PRIMARY).unwrap();
        assert_eq!(doc.burniat().unwrap(), examples::primary());
    }

    #[test]
    fn short_triple_names_key() {
        let text = PRIMARY.replace("\"0:1:0\", \"0:0:1\"", "\"1:0\", \"0:0:1\"");
        let e = parse_config(&text).unwrap_err();
        assert_eq!(e.path, "vertices[1]");
        assert_eq!(e.line, 3);
        assert!(e.message.contains("expected 3 entries"), "{}", e.message);
    }

    #[test]
    fn rational_entries() {
        let text = PRIMARY.replace("\"1:0:0\", \"0:1:0\"", "\"2/3:1:0\", \"0:1:0\"");
        let doc = parse_config(&text).unwrap();
        assert_eq!(doc.vertices.unwrap()[0].0, ProjPoint::from_ints(2, 3, 0).unwrap());
    }

    #[test]
    fn round_trip_is_idempotent() {
        let text = PRIMARY.replace("\"0:1:-2\"", "\"0:2:-4\"");
        let once = parse_config(&text).unwrap().to_json();
        let twice = parse_config(&once).unwrap().to_json();
        assert_eq!(once, twice);
        assert!(once.contains("\"0:1:-2\""));
    }

    #[test]
    fn schema_and_keys() {
        let e = parse_config(&PRIMARY.replace("pg0-geography/1", "other/2")).unwrap_err();
        assert_eq!(e.path, "schema");
        let e = parse_config(&PRIMARY.replace("\"pencils\"", "\"pencil\"")).unwrap_err();
        assert!(e.message.contains("unknown field"), "{}", e.message);
        let godeaux = r#"{"schema": "pg0-geography/1", "godeaux": {"5,0,0,x": "1"}}"#;
        assert_eq!(parse_config(godeaux).unwrap_err().path, "godeaux.5,0,0,x");
    }
}
