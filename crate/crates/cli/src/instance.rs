//! Instance files: JSON documents declaring spaces, maps, contact
//! structures, morphism tables and suite requests, possibly spread over
//! several files linked by `imports`.
//!
//! Loading resolves every cross-reference and builds the core objects, so
//! later stages never see an unvalidated instance.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Deserialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use lcdual_core::category::{delta_t_map, MdhlcMorphism};
use lcdual_core::duality::psi_t;
use lcdual_core::ideals::down_set;
use lcdual_core::{
    AtomSet, BooleanAlgebra, Bounded, ContactSpec, ContinuousMap, ElementSet, FiniteCarrier,
    FiniteLca, FiniteSpace, TailCarrier, TailLca, DEFAULT_TAIL_SAMPLE, MAX_ATOMS,
};

use crate::error::CliError;
use crate::suite::Suite;

pub const INSTANCE_SCHEMA: &str = "lcdual-instance/1";

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    schema: String,
    #[serde(default)]
    imports: Vec<String>,
    #[serde(default)]
    items: Vec<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpace {
    id: String,
    points: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    id: String,
    source: String,
    target: String,
    map: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum RawContact {
    Overlap,
    FullAdjacency,
    AtomGraph {
        adjacency: BTreeMap<String, Vec<String>>,
    },
    Explicit {
        pairs: Vec<(Vec<String>, Vec<String>)>,
        #[serde(default)]
        include_overlap: bool,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    id: String,
    atoms: Vec<String>,
    contact: RawContact,
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum RawBounded {
    All,
    GeneratedBy { atoms: Vec<String> },
    FiniteElements,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTail {
    branches: usize,
    #[serde(default)]
    sample: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLca {
    id: String,
    #[serde(default)]
    algebra: Option<String>,
    #[serde(default)]
    discrete_space: Option<String>,
    #[serde(default)]
    tail: Option<RawTail>,
    #[serde(default)]
    bounded: Option<RawBounded>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawImage {
    Elements(Vec<Vec<String>>),
    Down { down: Vec<String> },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    element: Vec<String>,
    image: RawImage,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMorphism {
    id: String,
    #[serde(default)]
    source: Option<String>,
    #[serde(default)]
    target: Option<String>,
    #[serde(default)]
    table: Option<Vec<RawEntry>>,
    #[serde(default)]
    from_map: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRequest {
    #[serde(default)]
    id: Option<String>,
    suite: Suite,
    #[serde(default)]
    targets: Option<Vec<String>>,
}

/// A loaded contact structure.
#[derive(Clone, Debug)]
pub enum StructureObj {
    Finite(Arc<FiniteLca>),
    Tail(TailLca),
}

#[derive(Clone, Debug)]
pub struct SuiteRequest {
    pub suite: Suite,
    pub targets: Option<Vec<String>>,
}

#[derive(Clone, Debug)]
pub enum Object {
    Space(FiniteSpace),
    Map(ContinuousMap),
    Structure(StructureObj),
    Morphism(MdhlcMorphism),
    Request(SuiteRequest),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Space(_) => "finite_space",
            Object::Map(_) => "continuous_map",
            Object::Structure(_) => "structure",
            Object::Morphism(_) => "morphism_table",
            Object::Request(_) => "suite_request",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub id: String,
    pub origin: PathBuf,
    pub object: Object,
}

#[derive(Clone, Copy, Debug)]
pub struct LoadOptions {
    pub seed: u64,
    pub max_atoms: usize,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            seed: 0,
            max_atoms: 4,
        }
    }
}

/// Every entry from the given files and their imports, in load order.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub entries: Vec<Entry>,
    index: BTreeMap<String, usize>,
    digest: Vec<u8>,
}

impl Workspace {
    pub fn get(&self, id: &str) -> Option<&Entry> {
        self.index.get(id).map(|&i| &self.entries[i])
    }

    /// SHA-256 over the loaded file contents in load order, each prefixed
    /// by its byte length.
    pub fn digest(&self) -> String {
        hex::encode(&self.digest)
    }

    pub fn requests(&self) -> impl Iterator<Item = &SuiteRequest> {
        self.entries.iter().filter_map(|e| match &e.object {
            Object::Request(r) => Some(r),
            _ => None,
        })
    }
}

pub fn load(paths: &[PathBuf], opts: LoadOptions) -> Result<Workspace, CliError> {
    if opts.max_atoms > MAX_ATOMS {
        return Err(CliError::Usage(format!(
            "--max-atoms {} is above the hard limit {MAX_ATOMS}",
            opts.max_atoms
        )));
    }
    let mut loader = Loader {
        opts,
        ws: Workspace::default(),
        hasher: Sha256::new(),
        done: BTreeSet::new(),
        active: Vec::new(),
        auto: 0,
    };
    for p in paths {
        loader.file(p)?;
    }
    let mut ws = loader.ws;
    ws.digest = loader.hasher.finalize().to_vec();
    Ok(ws)
}

struct Loader {
    opts: LoadOptions,
    ws: Workspace,
    hasher: Sha256,
    done: BTreeSet<PathBuf>,
    active: Vec<PathBuf>,
    auto: usize,
}

fn schema(path: &Path, field: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Schema {
        path: path.to_path_buf(),
        field: field.into(),
        message: message.into(),
    }
}

fn model(path: &Path, field: impl Into<String>) -> impl FnOnce(lcdual_core::Error) -> CliError {
    let path = path.to_path_buf();
    let field = field.into();
    move |source| CliError::Model {
        path,
        field,
        source,
    }
}

fn typed<T: for<'de> Deserialize<'de>>(path: &Path, field: &str, v: Value) -> Result<T, CliError> {
    serde_json::from_value(v).map_err(|e| schema(path, field, e.to_string()))
}

fn check_labels(path: &Path, field: &str, labels: &[String]) -> Result<(), CliError> {
    let mut seen = BTreeSet::new();
    for (i, l) in labels.iter().enumerate() {
        if !seen.insert(l) {
            return Err(CliError::Duplicate {
                path: path.to_path_buf(),
                field: format!("{field}[{i}]"),
                name: l.clone(),
            });
        }
    }
    Ok(())
}

fn element(
    path: &Path,
    field: &str,
    c: &FiniteCarrier,
    names: &[String],
) -> Result<AtomSet, CliError> {
    let mut s = AtomSet::EMPTY;
    for (i, n) in names.iter().enumerate() {
        match c.atom_index(n) {
            Some(k) => s = s.union(AtomSet::singleton(k)),
            None => {
                return Err(CliError::Unresolved {
                    path: path.to_path_buf(),
                    field: format!("{field}[{i}]"),
                    name: n.clone(),
                })
            }
        }
    }
    Ok(s)
}

impl Loader {
    fn file(&mut self, path: &Path) -> Result<(), CliError> {
        let key = fs::canonicalize(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        if self.active.contains(&key) {
            return Err(CliError::ImportCycle {
                path: path.to_path_buf(),
            });
        }
        if self.done.contains(&key) {
            return Ok(());
        }
        let text = fs::read(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let raw: RawFile = serde_json::from_slice(&text).map_err(|e| CliError::Syntax {
            path: path.to_path_buf(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if raw.schema != INSTANCE_SCHEMA {
            return Err(schema(
                path,
                "schema",
                format!("expected `{INSTANCE_SCHEMA}`, found `{}`", raw.schema),
            ));
        }
        self.active.push(key.clone());
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        for imp in &raw.imports {
            self.file(&dir.join(imp))?;
        }
        self.active.pop();
        self.hasher.update((text.len() as u64).to_le_bytes());
        self.hasher.update(&text);
        for (i, item) in raw.items.into_iter().enumerate() {
            self.item(path, &format!("items[{i}]"), item)?;
        }
        self.done.insert(key);
        Ok(())
    }

    fn resolve(&self, path: &Path, field: &str, id: &str) -> Result<&Entry, CliError> {
        self.ws.get(id).ok_or_else(|| CliError::Unresolved {
            path: path.to_path_buf(),
            field: field.to_string(),
            name: id.to_string(),
        })
    }

    fn space(&self, path: &Path, field: &str, id: &str) -> Result<FiniteSpace, CliError> {
        match &self.resolve(path, field, id)?.object {
            Object::Space(s) => Ok(s.clone()),
            other => Err(mismatch(path, field, id, other.kind(), "finite_space")),
        }
    }

    fn finite(&self, path: &Path, field: &str, id: &str) -> Result<Arc<FiniteLca>, CliError> {
        match &self.resolve(path, field, id)?.object {
            Object::Structure(StructureObj::Finite(l)) => Ok(l.clone()),
            Object::Structure(StructureObj::Tail(_)) => Err(mismatch(
                path,
                field,
                id,
                "tail structure",
                "finite structure",
            )),
            other => Err(mismatch(path, field, id, other.kind(), "finite structure")),
        }
    }

    fn limit(&self, path: &Path, field: &str, got: usize) -> Result<(), CliError> {
        if got > self.opts.max_atoms {
            return Err(CliError::SizeLimit {
                path: path.to_path_buf(),
                field: field.to_string(),
                got,
                limit: self.opts.max_atoms,
            });
        }
        Ok(())
    }

    fn push(
        &mut self,
        path: &Path,
        field: &str,
        id: String,
        object: Object,
    ) -> Result<(), CliError> {
        if self.ws.index.contains_key(&id) {
            return Err(CliError::Duplicate {
                path: path.to_path_buf(),
                field: format!("{field}.id"),
                name: id,
            });
        }
        self.ws.index.insert(id.clone(), self.ws.entries.len());
        self.ws.entries.push(Entry {
            id,
            origin: path.to_path_buf(),
            object,
        });
        Ok(())
    }

    fn item(&mut self, path: &Path, field: &str, mut v: Value) -> Result<(), CliError> {
        let kind = match v.as_object_mut().and_then(|o| o.remove("kind")) {
            Some(Value::String(k)) => k,
            Some(_) => return Err(schema(path, format!("{field}.kind"), "must be a string")),
            None => return Err(schema(path, format!("{field}.kind"), "missing")),
        };
        match kind.as_str() {
            "finite_space" => self.finite_space(path, field, typed(path, field, v)?),
            "continuous_map" => self.continuous_map(path, field, typed(path, field, v)?),
            "contact_algebra" => self.contact_algebra(path, field, typed(path, field, v)?),
            "lca" => self.lca(path, field, typed(path, field, v)?),
            "morphism_table" => self.morphism(path, field, typed(path, field, v)?),
            "suite_request" => self.request(path, field, typed(path, field, v)?),
            other => Err(schema(
                path,
                format!("{field}.kind"),
                format!("unknown kind `{other}`"),
            )),
        }
    }

    fn finite_space(&mut self, path: &Path, field: &str, raw: RawSpace) -> Result<(), CliError> {
        check_labels(path, &format!("{field}.points"), &raw.points)?;
        self.limit(path, &format!("{field}.points"), raw.points.len())?;
        let s =
            FiniteSpace::new(raw.points.iter()).map_err(model(path, format!("{field}.points")))?;
        self.push(path, field, raw.id, Object::Space(s))
    }

    fn continuous_map(&mut self, path: &Path, field: &str, raw: RawMap) -> Result<(), CliError> {
        let src = self.space(path, &format!("{field}.source"), &raw.source)?;
        let tgt = self.space(path, &format!("{field}.target"), &raw.target)?;
        for k in raw.map.keys() {
            if src.index_of(k).is_none() {
                return Err(CliError::Unresolved {
                    path: path.to_path_buf(),
                    field: format!("{field}.map"),
                    name: k.clone(),
                });
            }
        }
        let mut table = Vec::with_capacity(src.len());
        for p in src.points() {
            let f = format!("{field}.map.{p}");
            let img = raw
                .map
                .get(p)
                .ok_or_else(|| schema(path, &f, "the map is not total: no image given"))?;
            table.push(tgt.index_of(img).ok_or_else(|| CliError::Unresolved {
                path: path.to_path_buf(),
                field: f.clone(),
                name: img.clone(),
            })?);
        }
        let m = ContinuousMap::new(src, tgt, table).map_err(model(path, format!("{field}.map")))?;
        self.push(path, field, raw.id, Object::Map(m))
    }

    fn carrier(
        &self,
        path: &Path,
        field: &str,
        atoms: &[String],
    ) -> Result<FiniteCarrier, CliError> {
        check_labels(path, field, atoms)?;
        self.limit(path, field, atoms.len())?;
        FiniteCarrier::new(atoms.iter()).map_err(model(path, field))
    }

    fn contact_algebra(
        &mut self,
        path: &Path,
        field: &str,
        raw: RawAlgebra,
    ) -> Result<(), CliError> {
        let c = self.carrier(path, &format!("{field}.atoms"), &raw.atoms)?;
        let cf = format!("{field}.contact");
        let spec = match raw.contact {
            RawContact::Overlap => ContactSpec::Overlap,
            RawContact::FullAdjacency => ContactSpec::full_adjacency(c.atom_count()),
            RawContact::AtomGraph { adjacency } => {
                let mut pairs = Vec::new();
                for (a, row) in &adjacency {
                    let i = c.atom_index(a).ok_or_else(|| CliError::Unresolved {
                        path: path.to_path_buf(),
                        field: format!("{cf}.adjacency"),
                        name: a.clone(),
                    })?;
                    let row = element(path, &format!("{cf}.adjacency.{a}"), &c, row)?;
                    pairs.extend(row.atoms().map(|j| (i, j)));
                }
                ContactSpec::atom_graph(c.atom_count(), &pairs).map_err(model(path, &cf))?
            }
            RawContact::Explicit {
                pairs,
                include_overlap,
            } => {
                let mut set = BTreeSet::new();
                if include_overlap {
                    for a in c.elements() {
                        for b in c.elements().filter(|b| b.intersects(a)) {
                            set.insert((a, b));
                        }
                    }
                }
                for (k, (a, b)) in pairs.iter().enumerate() {
                    let pf = format!("{cf}.pairs[{k}]");
                    set.insert((
                        element(path, &format!("{pf}[0]"), &c, a)?,
                        element(path, &format!("{pf}[1]"), &c, b)?,
                    ));
                }
                ContactSpec::ExplicitTable(set)
            }
        };
        let l = FiniteLca::new(c, spec, Bounded::All).map_err(model(path, cf))?;
        self.push(
            path,
            field,
            raw.id,
            Object::Structure(StructureObj::Finite(Arc::new(l))),
        )
    }

    fn lca(&mut self, path: &Path, field: &str, raw: RawLca) -> Result<(), CliError> {
        let sources = [
            raw.algebra.is_some(),
            raw.discrete_space.is_some(),
            raw.tail.is_some(),
        ];
        if sources.iter().filter(|s| **s).count() != 1 {
            return Err(schema(
                path,
                field,
                "exactly one of `algebra`, `discrete_space`, `tail` is required",
            ));
        }
        let bf = format!("{field}.bounded");
        let obj = if let Some(t) = raw.tail {
            let carrier = TailCarrier::new(t.branches)
                .map_err(model(path, format!("{field}.tail.branches")))?;
            let bounded = match raw.bounded {
                None | Some(RawBounded::FiniteElements) => Bounded::FiniteElements,
                Some(RawBounded::All) => Bounded::All,
                Some(RawBounded::GeneratedBy { .. }) => {
                    return Err(schema(path, bf, "`generated_by` needs a finite carrier"))
                }
            };
            let sample = t.sample.unwrap_or(DEFAULT_TAIL_SAMPLE);
            let tl =
                TailLca::new(carrier, bounded, sample, self.opts.seed).map_err(model(path, bf))?;
            StructureObj::Tail(tl)
        } else {
            let base = if let Some(id) = &raw.algebra {
                (*self.finite(path, &format!("{field}.algebra"), id)?).clone()
            } else {
                let id = raw.discrete_space.as_deref().unwrap_or_default();
                psi_t(&self.space(path, &format!("{field}.discrete_space"), id)?)
            };
            let bounded = match raw.bounded {
                None | Some(RawBounded::All) => Bounded::All,
                Some(RawBounded::GeneratedBy { atoms }) => Bounded::GeneratedBy(element(
                    path,
                    &format!("{bf}.atoms"),
                    base.carrier(),
                    &atoms,
                )?),
                Some(RawBounded::FiniteElements) => {
                    return Err(schema(path, bf, "`finite_elements` needs a tail carrier"))
                }
            };
            let l = FiniteLca::new(base.carrier().clone(), base.contact_spec().clone(), bounded)
                .map_err(model(path, bf))?;
            StructureObj::Finite(Arc::new(l))
        };
        self.push(path, field, raw.id, Object::Structure(obj))
    }

    fn morphism(&mut self, path: &Path, field: &str, raw: RawMorphism) -> Result<(), CliError> {
        let phi = match (&raw.from_map, &raw.table) {
            (Some(f), None) => {
                if raw.source.is_some() || raw.target.is_some() {
                    return Err(schema(
                        path,
                        field,
                        "`from_map` fixes source and target; omit them",
                    ));
                }
                let ff = format!("{field}.from_map");
                match &self.resolve(path, &ff, f)?.object {
                    Object::Map(m) => delta_t_map(m),
                    other => return Err(mismatch(path, &ff, f, other.kind(), "continuous_map")),
                }
            }
            (None, Some(table)) => {
                let (Some(s), Some(t)) = (&raw.source, &raw.target) else {
                    return Err(schema(
                        path,
                        field,
                        "`source` and `target` are required with `table`",
                    ));
                };
                let src = self.finite(path, &format!("{field}.source"), s)?;
                let tgt = self.finite(path, &format!("{field}.target"), t)?;
                let mut cells: Vec<Option<ElementSet>> = vec![None; src.elements().len()];
                for (k, e) in table.iter().enumerate() {
                    let ef = format!("{field}.table[{k}]");
                    let a = element(path, &format!("{ef}.element"), src.carrier(), &e.element)?;
                    if cells[a.index()].is_some() {
                        return Err(CliError::Duplicate {
                            path: path.to_path_buf(),
                            field: format!("{ef}.element"),
                            name: src.carrier().render(&a),
                        });
                    }
                    let img = match &e.image {
                        RawImage::Elements(v) => {
                            let mut s = ElementSet::EMPTY;
                            for (j, b) in v.iter().enumerate() {
                                s.insert(element(
                                    path,
                                    &format!("{ef}.image[{j}]"),
                                    tgt.carrier(),
                                    b,
                                )?);
                            }
                            s
                        }
                        RawImage::Down { down } => down_set(
                            &tgt,
                            element(path, &format!("{ef}.image.down"), tgt.carrier(), down)?,
                        ),
                    };
                    cells[a.index()] = Some(img);
                }
                let mut full = Vec::with_capacity(cells.len());
                for (i, c) in cells.into_iter().enumerate() {
                    match c {
                        Some(s) => full.push(s),
                        None => {
                            return Err(CliError::Model {
                                path: path.to_path_buf(),
                                field: format!("{field}.table"),
                                source: lcdual_core::Error::Malformed(format!(
                                    "partial table: no entry for {}",
                                    src.carrier().render(&src.elements()[i])
                                )),
                            })
                        }
                    }
                }
                MdhlcMorphism::new(src, tgt, full).map_err(model(path, format!("{field}.table")))?
            }
            _ => {
                return Err(schema(
                    path,
                    field,
                    "exactly one of `table` and `from_map` is required",
                ))
            }
        };
        self.push(path, field, raw.id, Object::Morphism(phi))
    }

    fn request(&mut self, path: &Path, field: &str, raw: RawRequest) -> Result<(), CliError> {
        if let Some(ts) = &raw.targets {
            for (i, t) in ts.iter().enumerate() {
                self.resolve(path, &format!("{field}.targets[{i}]"), t)?;
            }
        }
        let id = raw.id.unwrap_or_else(|| {
            self.auto += 1;
            format!("request#{}", self.auto)
        });
        self.push(
            path,
            field,
            id,
            Object::Request(SuiteRequest {
                suite: raw.suite,
                targets: raw.targets,
            }),
        )
    }
}

fn mismatch(
    path: &Path,
    field: &str,
    name: &str,
    found: &'static str,
    expected: &'static str,
) -> CliError {
    CliError::KindMismatch {
        path: path.to_path_buf(),
        field: field.to_string(),
        name: name.to_string(),
        found,
        expected,
    }
}
