//! Input documents and the per-backend JSON payload codecs.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

use relhom_core::eclass::{finab_coprime_kernel, forgetful_split_preimage, EClass};
use relhom_core::finab::{FinAb, FinAbMorphism, FinAbObject};
use relhom_core::fingrp::{group_by_name, FinGrp, Group, GrpMorphism};
use relhom_core::pset::{PSet, PSetMorphism, PSetObject};
use relhom_core::tablecat::{TableCategory, TableSpec};
use relhom_core::{CatError, PointedCategory};

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input: exit code 2.
    #[error("input error: {0}")]
    Input(String),
    #[error("{0}")]
    Engine(#[from] CatError),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Engine(e) => match e {
                CatError::Input(_)
                | CatError::Composability { .. }
                | CatError::NotMono(_)
                | CatError::NotEpi(_)
                | CatError::Plugin { .. } => 2,
                CatError::Hypothesis(_) | CatError::Budget(_) | CatError::NoLimit(_) | CatError::Inconsistency(_) => 3,
            },
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    Sequence,
    Short5,
    Snake,
    Grid,
    CategoryTable,
    Witness,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct MorphismEntry {
    pub dom: String,
    pub cod: String,
    #[serde(flatten)]
    pub payload: Map<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct SequenceEntry {
    pub arrows: Vec<String>,
    #[serde(default)]
    pub leading_zero: bool,
    #[serde(default)]
    pub trailing_zero: bool,
}

/// A diagram, category table or witness file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct InputDocument {
    pub format_version: String,
    pub backend: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<Shape>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    /// The category itself, for `tablecat`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<TableSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub objects: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, MorphismEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<SequenceEntry>,
    /// Witness files: the axiom, its recorded status and the reason.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axiom: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl InputDocument {
    pub fn new(backend: &str, shape: Shape) -> Self {
        InputDocument {
            format_version: FORMAT_VERSION.into(),
            backend: backend.into(),
            shape: Some(shape),
            class: None,
            category: None,
            objects: BTreeMap::new(),
            morphisms: BTreeMap::new(),
            sequence: None,
            axiom: None,
            status: None,
            reason: None,
        }
    }

    pub fn parse(text: &str, origin: &str) -> CliResult<Self> {
        let doc: InputDocument = serde_json::from_str(text).map_err(|e| {
            CliError::input(format!("{origin}: line {}, column {}: {e}", e.line(), e.column()))
        })?;
        if doc.format_version != FORMAT_VERSION {
            return Err(CliError::input(format!(
                "{origin}: format-version: expected \"{FORMAT_VERSION}\", found {:?}",
                doc.format_version
            )));
        }
        Ok(doc)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn expect_shape(&self, shape: Shape) -> CliResult<()> {
        match self.shape {
            Some(s) if s == shape => Ok(()),
            other => Err(CliError::input(format!("shape: expected {shape:?}, found {other:?}"))),
        }
    }

    /// The table category carried by a `tablecat` document.
    pub fn table(&self) -> CliResult<TableCategory> {
        let spec = self
            .category
            .as_ref()
            .ok_or_else(|| CliError::input("category: required for backend tablecat"))?;
        Ok(spec.build()?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

/// Decoding and encoding of one backend's objects and arrows.
pub trait Codec: PointedCategory + Sized {
    fn decode_object(&self, v: &Value, at: &str) -> CliResult<Self::Obj>;
    fn encode_object(&self, a: &Self::Obj) -> Value;
    fn decode_morphism(&self, dom: &Self::Obj, cod: &Self::Obj, payload: &Map<String, Value>, at: &str) -> CliResult<Self::Mor>;
    fn encode_morphism(&self, f: &Self::Mor) -> Map<String, Value>;

    /// Backend-specific class selectors beyond the builtin ones.
    fn extra_class(&self, _selector: &str) -> CliResult<Option<EClass<Self>>> {
        Ok(None)
    }

    fn spec(&self) -> Option<TableSpec> {
        None
    }

    /// Payload printed for a single arrow (e.g. the constructed `d`).
    fn payload_text(&self, f: &Self::Mor) -> String {
        Value::Object(self.encode_morphism(f)).to_string()
    }
}

pub fn parse_class<C: Codec>(cat: &C, selector: &str) -> CliResult<EClass<C>> {
    if let Some(e) = EClass::builtin(selector) {
        return Ok(e);
    }
    cat.extra_class(selector)?
        .ok_or_else(|| CliError::input(format!("unknown class selector `{selector}` for backend {}", cat.backend())))
}

fn field<'a>(payload: &'a Map<String, Value>, key: &str, at: &str) -> CliResult<&'a Value> {
    payload.get(key).ok_or_else(|| CliError::input(format!("{at}: missing field `{key}`")))
}

fn reject_extra(payload: &Map<String, Value>, allowed: &[&str], at: &str) -> CliResult<()> {
    match payload.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(CliError::input(format!("{at}: unknown field `{k}`"))),
        None => Ok(()),
    }
}

/// A non-negative integer given as a JSON number or a decimal string.
fn as_u64(v: &Value, at: &str) -> CliResult<u64> {
    match v {
        Value::Number(n) => n.as_u64(),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
    .ok_or_else(|| CliError::input(format!("{at}: expected a non-negative integer, found {v}")))
}

fn as_array<'a>(v: &'a Value, at: &str) -> CliResult<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| CliError::input(format!("{at}: expected an array, found {v}")))
}

fn u64_list(v: &Value, at: &str) -> CliResult<Vec<u64>> {
    as_array(v, at)?
        .iter()
        .enumerate()
        .map(|(i, x)| as_u64(x, &format!("{at}[{i}]")))
        .collect()
}

fn usize_list(v: &Value, at: &str) -> CliResult<Vec<usize>> {
    Ok(u64_list(v, at)?.into_iter().map(|x| x as usize).collect())
}

fn at_field(at: &str, e: CatError) -> CliError {
    CliError::input(format!("{at}: {}", match e {
        CatError::Input(m) => m,
        other => other.to_string(),
    }))
}

impl Codec for FinAb {
    fn decode_object(&self, v: &Value, at: &str) -> CliResult<FinAbObject> {
        FinAbObject::new(u64_list(v, at)?).map_err(|e| at_field(at, e))
    }

    fn encode_object(&self, a: &FinAbObject) -> Value {
        Value::from(a.factors().to_vec())
    }

    fn decode_morphism(&self, dom: &FinAbObject, cod: &FinAbObject, payload: &Map<String, Value>, at: &str) -> CliResult<FinAbMorphism> {
        reject_extra(payload, &["matrix"], at)?;
        let at = format!("{at}.matrix");
        let rows = as_array(field(payload, "matrix", &at)?, &at)?
            .iter()
            .enumerate()
            .map(|(i, r)| u64_list(r, &format!("{at}[{i}]")))
            .collect::<CliResult<Vec<_>>>()?;
        self.mor(dom, cod, rows).map_err(|e| at_field(&at, e))
    }

    fn encode_morphism(&self, f: &FinAbMorphism) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("matrix".into(), Value::from(f.matrix().to_vec()));
        m
    }

    fn extra_class(&self, selector: &str) -> CliResult<Option<EClass<Self>>> {
        match selector.strip_prefix("coprime_kernel:") {
            Some(p) => {
                let p = p
                    .parse()
                    .map_err(|_| CliError::input(format!("class `{selector}`: expected a prime after the colon")))?;
                Ok(Some(finab_coprime_kernel(p)))
            }
            None => Ok(None),
        }
    }

    fn payload_text(&self, f: &FinAbMorphism) -> String {
        Value::from(f.matrix().to_vec()).to_string()
    }
}

impl Codec for FinGrp {
    fn decode_object(&self, v: &Value, at: &str) -> CliResult<Group> {
        match v {
            Value::String(name) => {
                group_by_name(name).ok_or_else(|| CliError::input(format!("{at}: no bundled group named `{name}`")))
            }
            Value::Object(m) => {
                reject_extra(m, &["table"], at)?;
                let at = format!("{at}.table");
                let rows = as_array(field(m, "table", &at)?, &at)?
                    .iter()
                    .enumerate()
                    .map(|(i, r)| Ok(u64_list(r, &format!("{at}[{i}]"))?.into_iter().map(|x| x as u32).collect()))
                    .collect::<CliResult<Vec<Vec<u32>>>>()?;
                Group::from_table(rows).map_err(|e| at_field(&at, e))
            }
            _ => Err(CliError::input(format!("{at}: expected a group name or {{\"table\": ...}}"))),
        }
    }

    fn encode_object(&self, a: &Group) -> Value {
        match a.name().and_then(group_by_name) {
            Some(g) if &g == a => Value::from(g.name().expect("library groups are named")),
            _ => serde_json::json!({ "table": a.table() }),
        }
    }

    fn decode_morphism(&self, dom: &Group, cod: &Group, payload: &Map<String, Value>, at: &str) -> CliResult<GrpMorphism> {
        reject_extra(payload, &["map"], at)?;
        let at = format!("{at}.map");
        let map = usize_list(field(payload, "map", &at)?, &at)?;
        self.mor(dom, cod, map).map_err(|e| at_field(&at, e))
    }

    fn encode_morphism(&self, f: &GrpMorphism) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("map".into(), Value::from(f.map()));
        m
    }

    fn extra_class(&self, selector: &str) -> CliResult<Option<EClass<Self>>> {
        Ok((selector == "forgetful_split_preimage").then(forgetful_split_preimage))
    }

    fn payload_text(&self, f: &GrpMorphism) -> String {
        Value::from(f.map()).to_string()
    }
}

impl Codec for PSet {
    fn decode_object(&self, v: &Value, at: &str) -> CliResult<PSetObject> {
        PSetObject::new(as_u64(v, at)? as usize).map_err(|e| at_field(at, e))
    }

    fn encode_object(&self, a: &PSetObject) -> Value {
        Value::from(a.size())
    }

    fn decode_morphism(&self, dom: &PSetObject, cod: &PSetObject, payload: &Map<String, Value>, at: &str) -> CliResult<PSetMorphism> {
        reject_extra(payload, &["map"], at)?;
        let at = format!("{at}.map");
        let map = usize_list(field(payload, "map", &at)?, &at)?;
        PSetMorphism::new(*dom, *cod, map).map_err(|e| at_field(&at, e))
    }

    fn encode_morphism(&self, f: &PSetMorphism) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("map".into(), Value::from(f.map().to_vec()));
        m
    }

    fn payload_text(&self, f: &PSetMorphism) -> String {
        Value::from(f.map().to_vec()).to_string()
    }
}

impl Codec for TableCategory {
    fn decode_object(&self, v: &Value, at: &str) -> CliResult<usize> {
        let name = v.as_str().ok_or_else(|| CliError::input(format!("{at}: expected an object name")))?;
        self.object_by_name(name)
            .ok_or_else(|| CliError::input(format!("{at}: the category has no object `{name}`")))
    }

    fn encode_object(&self, a: &usize) -> Value {
        Value::from(self.data().objects[*a].clone())
    }

    fn decode_morphism(&self, dom: &usize, cod: &usize, payload: &Map<String, Value>, at: &str) -> CliResult<usize> {
        reject_extra(payload, &["arrow"], at)?;
        let at = format!("{at}.arrow");
        let name = field(payload, "arrow", &at)?
            .as_str()
            .ok_or_else(|| CliError::input(format!("{at}: expected an arrow name")))?;
        let f = self
            .arrow_by_name(name)
            .ok_or_else(|| CliError::input(format!("{at}: the category has no arrow `{name}`")))?;
        if self.dom(&f) != *dom || self.cod(&f) != *cod {
            return Err(CliError::input(format!("{at}: arrow `{name}` does not match the declared dom/cod")));
        }
        Ok(f)
    }

    fn encode_morphism(&self, f: &usize) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("arrow".into(), Value::from(self.arrow(*f).name.clone()));
        m
    }

    fn extra_class(&self, selector: &str) -> CliResult<Option<EClass<Self>>> {
        let Some(list) = selector.strip_prefix("explicit:") else {
            return Ok(None);
        };
        let mut arrows = std::collections::HashSet::new();
        for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let f = self
                .arrow_by_name(name)
                .ok_or_else(|| CliError::input(format!("class `{selector}`: no arrow `{name}`")))?;
            arrows.insert(f);
        }
        Ok(Some(EClass::Explicit { label: list.to_string(), arrows }))
    }

    fn spec(&self) -> Option<TableSpec> {
        Some(self.to_spec())
    }

    fn payload_text(&self, f: &usize) -> String {
        self.arrow(*f).name.clone()
    }
}

/// Decodes the named objects and arrows of a document.
pub struct Decoded<C: PointedCategory> {
    pub objects: BTreeMap<String, C::Obj>,
    pub arrows: BTreeMap<String, C::Mor>,
}

impl<C: PointedCategory> Decoded<C> {
    pub fn get(&self, name: &str) -> CliResult<&C::Mor> {
        self.arrows
            .get(name)
            .ok_or_else(|| CliError::input(format!("morphisms: missing arrow `{name}`")))
    }
}

pub fn decode<C: Codec>(cat: &C, doc: &InputDocument) -> CliResult<Decoded<C>> {
    let mut objects = BTreeMap::new();
    for (name, v) in &doc.objects {
        objects.insert(name.clone(), cat.decode_object(v, &format!("objects.{name}"))?);
    }
    let mut arrows = BTreeMap::new();
    for (name, m) in &doc.morphisms {
        let at = format!("morphisms.{name}");
        let obj = |o: &str, which: &str| {
            objects
                .get(o)
                .ok_or_else(|| CliError::input(format!("{at}.{which}: unknown object `{o}`")))
        };
        let (dom, cod) = (obj(&m.dom, "dom")?, obj(&m.cod, "cod")?);
        arrows.insert(name.clone(), cat.decode_morphism(dom, cod, &m.payload, &at)?);
    }
    Ok(Decoded { objects, arrows })
}

/// Encodes named arrows into a document, naming objects `X0`, `X1`, … in
/// order of first appearance.
pub fn encode<C: Codec>(cat: &C, doc: &mut InputDocument, arrows: &[(String, C::Mor)]) {
    let mut seen: Vec<C::Obj> = vec![];
    let mut name_of = |o: C::Obj, doc: &mut InputDocument| {
        let i = seen.iter().position(|x| *x == o).unwrap_or_else(|| {
            seen.push(o.clone());
            seen.len() - 1
        });
        let name = format!("X{i}");
        doc.objects.entry(name.clone()).or_insert_with(|| cat.encode_object(&o));
        name
    };
    for (name, f) in arrows {
        let dom = name_of(cat.dom(f), doc);
        let cod = name_of(cat.cod(f), doc);
        doc.morphisms.insert(
            name.clone(),
            MorphismEntry {
                dom,
                cod,
                payload: cat.encode_morphism(f),
            },
        );
    }
    doc.category = cat.spec();
}
