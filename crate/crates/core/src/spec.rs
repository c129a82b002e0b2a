//! JSON loaders for categories, conflation classes, percolating specs and
//! complexes. Matrices are lists of rows; entries are integers or `"p/q"`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use indexmap::IndexMap;
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::complex::Complex;
use crate::conflation::{ClassKind, ConflationClass};
use crate::error::{Error, Result};
use crate::linalg::{parse_rational, Matrix, Rational};
use crate::percolation::PercolatingSpec;
use crate::quiver::QuiverAlgebra;
use crate::rep::{KCPair, RepMorphism, Representation};

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    fn value(&self) -> Result<Rational> {
        match self {
            Scalar::Int(n) => Ok(crate::linalg::q(*n)),
            Scalar::Text(s) => parse_rational(s),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum VertexRef {
    Int(i64),
    Text(String),
}

impl VertexRef {
    fn id(&self) -> String {
        match self {
            VertexRef::Int(n) => n.to_string(),
            VertexRef::Text(s) => s.clone(),
        }
    }
}

type RawMatrix = Vec<Vec<Scalar>>;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawArrow {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTerm {
    #[serde(default = "unit_scalar")]
    pub coeff: Scalar,
    pub path: Vec<String>,
}

fn unit_scalar() -> Scalar {
    Scalar::Int(1)
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawRep {
    #[serde(default)]
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub maps: BTreeMap<String, RawMatrix>,
}

/// A morphism between named objects; missing vertex blocks are zero.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMorphism {
    #[serde(default)]
    pub src: Option<String>,
    #[serde(default)]
    pub dst: Option<String>,
    #[serde(default)]
    pub blocks: BTreeMap<String, RawMatrix>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSequence {
    pub inflation: RawMorphism,
    pub deflation: RawMorphism,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum SequenceRef {
    Named(String),
    Inline(RawSequence),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum RawClass {
    AllShortExact,
    AllShortExactMinus { removed: Vec<SequenceRef> },
    SplitOnly,
    ExplicitList { sequences: Vec<SequenceRef> },
    DegreewiseInduced { inner: Box<RawClass> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPercolating {
    #[serde(default)]
    pub serre_generators: Option<Vec<VertexRef>>,
    #[serde(default)]
    pub objects: Option<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCategory {
    #[serde(default)]
    category: Option<String>,
    #[serde(default)]
    vertices: Option<Vec<VertexRef>>,
    #[serde(default)]
    arrows: Vec<RawArrow>,
    #[serde(default)]
    relations: Vec<Vec<RawTerm>>,
    #[serde(default)]
    reps: IndexMap<String, RawRep>,
    #[serde(default)]
    sequences: IndexMap<String, RawSequence>,
    #[serde(default)]
    class: Option<RawClass>,
    #[serde(default)]
    percolating: Option<RawPercolating>,
    #[serde(default)]
    generators: Option<Vec<String>>,
}

/// A loaded category file: algebra, named objects and sequences, the
/// conflation class (all short exact sequences unless given) and the
/// optional percolating subcategory and generator list.
#[derive(Clone, Debug)]
pub struct CategorySpec {
    pub path: PathBuf,
    pub algebra: Arc<QuiverAlgebra>,
    pub named: Vec<(String, Representation)>,
    pub sequences: Vec<(String, KCPair)>,
    pub class: ConflationClass,
    pub percolating: Option<PercolatingSpec>,
    pub generators: Vec<String>,
}

impl CategorySpec {
    pub fn get(&self, name: &str) -> Result<&Representation> {
        self.named
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, r)| r)
            .ok_or_else(|| Error::InvalidInput(format!("unknown object {name:?}")))
    }

    pub fn sequence(&self, name: &str) -> Result<&KCPair> {
        self.sequences
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown sequence {name:?}")))
    }

    pub fn objects(&self) -> Vec<Representation> {
        self.named.iter().map(|(_, r)| r.clone()).collect()
    }

    pub fn generator_objects(&self) -> Result<Vec<(String, Representation)>> {
        self.generators.iter().map(|g| Ok((g.clone(), self.get(g)?.clone()))).collect()
    }

    pub fn vertex(&self, id: &str) -> Result<usize> {
        self.algebra
            .vertex_index(id)
            .ok_or_else(|| Error::InvalidInput(format!("unknown vertex {id:?}")))
    }

    pub fn morphism(&self, raw: &RawMorphism) -> Result<RepMorphism> {
        let src = raw.src.as_deref().ok_or_else(|| Error::InvalidInput("morphism without src".into()))?;
        let dst = raw.dst.as_deref().ok_or_else(|| Error::InvalidInput("morphism without dst".into()))?;
        build_morphism(&self.algebra, self.get(src)?, self.get(dst)?, &raw.blocks)
            .map_err(|e| context(e, &format!("morphism {src} -> {dst}")))
    }

    pub fn raw_sequence(&self, raw: &RawSequence) -> Result<KCPair> {
        KCPair::new(self.morphism(&raw.inflation)?, self.morphism(&raw.deflation)?)
    }

    pub fn sequence_ref(&self, r: &SequenceRef) -> Result<KCPair> {
        match r {
            SequenceRef::Named(n) => self.sequence(n).cloned(),
            SequenceRef::Inline(raw) => self.raw_sequence(raw),
        }
    }

    pub fn class_from(&self, raw: &RawClass) -> Result<ConflationClass> {
        let seqs = |list: &[SequenceRef]| list.iter().map(|r| self.sequence_ref(r)).collect::<Result<Vec<_>>>();
        let kind = match raw {
            RawClass::AllShortExact => ClassKind::AllShortExact,
            RawClass::AllShortExactMinus { removed } => ClassKind::AllShortExactMinus(seqs(removed)?),
            RawClass::SplitOnly => ClassKind::SplitOnly,
            RawClass::ExplicitList { sequences } => ClassKind::ExplicitList(seqs(sequences)?),
            RawClass::DegreewiseInduced { inner } => ClassKind::DegreewiseInduced(Box::new(self.class_from(inner)?)),
        };
        Ok(ConflationClass::new(&self.algebra, kind))
    }

    /// Percolating spec over `class`.
    pub fn percolating_from(&self, raw: &RawPercolating, class: &ConflationClass) -> Result<PercolatingSpec> {
        match (&raw.serre_generators, &raw.objects) {
            (Some(g), None) => {
                let gens = g.iter().map(|v| self.vertex(&v.id())).collect::<Result<Vec<_>>>()?;
                Ok(PercolatingSpec::serre(class, gens))
            }
            (None, Some(o)) => {
                let objs = o.iter().map(|n| Ok((n.clone(), self.get(n)?.clone()))).collect::<Result<Vec<_>>>()?;
                Ok(PercolatingSpec::explicit(class, objs))
            }
            _ => Err(Error::InvalidInput("percolating spec needs exactly one of serre_generators, objects".into())),
        }
    }

    /// A complex `{entries: {deg: name}, diffs: {deg: morphism}}`; missing
    /// differentials are zero.
    pub fn complex(&self, raw: &RawComplex) -> Result<Complex> {
        let mut entries: BTreeMap<i32, Representation> = BTreeMap::new();
        for (d, name) in &raw.entries {
            entries.insert(parse_degree(d)?, self.get(name)?.clone());
        }
        let zero = Representation::zero(&self.algebra);
        let Some((&lo, _)) = entries.first_key_value() else {
            return Ok(Complex::zero(&self.algebra));
        };
        let hi = *entries.last_key_value().unwrap().0;
        let objs: Vec<Representation> = (lo..=hi).map(|n| entries.get(&n).cloned().unwrap_or_else(|| zero.clone())).collect();
        let mut diffs: Vec<RepMorphism> = (lo..hi)
            .map(|n| RepMorphism::zero(&objs[(n - lo) as usize], &objs[(n - lo + 1) as usize]))
            .collect();
        for (d, m) in &raw.diffs {
            let n = parse_degree(d)?;
            if n < lo || n >= hi {
                return Err(Error::InvalidInput(format!("differential in degree {n} leaves the support")));
            }
            let (s, t) = (&objs[(n - lo) as usize], &objs[(n - lo + 1) as usize]);
            diffs[(n - lo) as usize] =
                build_morphism(&self.algebra, s, t, &m.blocks).map_err(|e| context(e, &format!("differential in degree {n}")))?;
        }
        Complex::new(&self.algebra, lo, objs, diffs)
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawComplex {
    pub entries: BTreeMap<String, String>,
    #[serde(default)]
    pub diffs: BTreeMap<String, RawMorphism>,
}

fn parse_degree(s: &str) -> Result<i32> {
    s.trim().parse().map_err(|_| Error::Parse(format!("degree {s:?} is not an integer")))
}

fn context(e: Error, what: &str) -> Error {
    match e {
        Error::RelationViolated { relation, .. } => Error::RelationViolated { rep: what.into(), relation },
        Error::Naturality(a) => Error::Naturality(format!("{a} ({what})")),
        other => Error::InvalidInput(format!("{what}: {other}")),
    }
}

fn matrix(raw: &RawMatrix, rows: usize, cols: usize, what: &str) -> Result<Matrix> {
    if raw.len() != rows || raw.iter().any(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch(format!("{what} must be {rows}x{cols}")));
    }
    let data = raw.iter().flatten().map(Scalar::value).collect::<Result<Vec<_>>>()?;
    Ok(Matrix::new(rows, cols, data))
}

fn build_morphism(
    alg: &Arc<QuiverAlgebra>,
    src: &Representation,
    dst: &Representation,
    blocks: &BTreeMap<String, RawMatrix>,
) -> Result<RepMorphism> {
    for v in blocks.keys() {
        if alg.vertex_index(v).is_none() {
            return Err(Error::InvalidInput(format!("block at unknown vertex {v:?}")));
        }
    }
    let mats = alg
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| match blocks.get(v) {
            Some(m) => matrix(m, dst.dim(i), src.dim(i), &format!("block at vertex {v}")),
            None => Ok(Matrix::zeros(dst.dim(i), src.dim(i))),
        })
        .collect::<Result<Vec<_>>>()?;
    RepMorphism::new(src, dst, mats)
}

fn build_rep(alg: &Arc<QuiverAlgebra>, name: &str, raw: &RawRep) -> Result<Representation> {
    for v in raw.dims.keys() {
        if alg.vertex_index(v).is_none() {
            return Err(Error::InvalidInput(format!("{name}: dimension at unknown vertex {v:?}")));
        }
    }
    for a in raw.maps.keys() {
        if alg.arrow_index(a).is_none() {
            return Err(Error::InvalidInput(format!("{name}: map for unknown arrow {a:?}")));
        }
    }
    let dims: Vec<usize> = alg.vertices().iter().map(|v| raw.dims.get(v).copied().unwrap_or(0)).collect();
    let maps = alg
        .arrows()
        .iter()
        .map(|a| match raw.maps.get(&a.id) {
            Some(m) => matrix(m, dims[a.tgt], dims[a.src], &format!("{name}: arrow {}", a.id)),
            None => Ok(Matrix::zeros(dims[a.tgt], dims[a.src])),
        })
        .collect::<Result<Vec<_>>>()?;
    Representation::new(alg, dims, maps).map_err(|e| match e {
        Error::RelationViolated { relation, .. } => Error::RelationViolated { rep: name.into(), relation },
        other => other,
    })
}

/// Parses JSON text, reporting syntax and schema errors with line and
/// column.
pub fn parse_json<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{origin}:{}:{}: {}", e.line(), e.column(), strip_position(&e))))
}

fn strip_position(e: &serde_json::Error) -> String {
    let s = e.to_string();
    match s.rfind(" at line ") {
        Some(i) => s[..i].to_string(),
        None => s,
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    parse_json(&text, &path.display().to_string())
}

/// Resolves `rel` against the directory holding `base`.
pub fn relative_to(base: &Path, rel: &str) -> PathBuf {
    let p = Path::new(rel);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.parent().unwrap_or(Path::new(".")).join(p)
    }
}

/// Loads a category file. A file with a `"category"` key extends the file
/// it names: it may add sequences and replace the class, percolating spec
/// and generators, but not the quiver or objects.
pub fn load_category_spec(path: &Path) -> Result<CategorySpec> {
    load_with_depth(path, 0)
}

fn load_with_depth(path: &Path, depth: usize) -> Result<CategorySpec> {
    if depth > 8 {
        return Err(Error::InvalidInput(format!("{}: category chain too deep", path.display())));
    }
    let raw: RawCategory = read_json(path)?;
    let at = |e: Error| match e {
        Error::Parse(_) => e,
        other => Error::InvalidInput(format!("{}: {other}", path.display())),
    };
    let mut spec = match &raw.category {
        Some(base) => {
            if raw.vertices.is_some() || !raw.arrows.is_empty() || !raw.relations.is_empty() || !raw.reps.is_empty() {
                return Err(at(Error::InvalidInput("a file extending a category cannot redefine its quiver or objects".into())));
            }
            let mut s = load_with_depth(&relative_to(path, base), depth + 1)?;
            s.path = path.to_path_buf();
            s
        }
        None => base_spec(path, &raw).map_err(at)?,
    };
    if raw.category.is_some() {
        for (name, seq) in &raw.sequences {
            let pair = spec.raw_sequence(seq).map_err(|e| at(context(e, &format!("sequence {name}"))))?;
            spec.sequences.push((name.clone(), pair));
        }
    }
    if let Some(c) = &raw.class {
        spec.class = spec.class_from(c).map_err(at)?;
        if let Some(p) = &spec.percolating {
            spec.percolating = Some(PercolatingSpec {
                class: spec.class.clone(),
                ..p.clone()
            });
        }
    }
    if let Some(p) = &raw.percolating {
        spec.percolating = Some(spec.percolating_from(p, &spec.class).map_err(at)?);
    }
    if let Some(g) = &raw.generators {
        for n in g {
            spec.get(n).map_err(at)?;
        }
        spec.generators = g.clone();
    }
    Ok(spec)
}

fn base_spec(path: &Path, raw: &RawCategory) -> Result<CategorySpec> {
    let vertices: Vec<String> = raw
        .vertices
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("missing \"vertices\"".into()))?
        .iter()
        .map(VertexRef::id)
        .collect();
    let arrows = raw.arrows.iter().map(|a| (a.id.clone(), a.src.clone(), a.tgt.clone())).collect();
    let relations = raw
        .relations
        .iter()
        .map(|r| r.iter().map(|t| Ok((t.coeff.value()?, t.path.clone()))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let algebra = QuiverAlgebra::new(vertices, arrows, relations)?;
    let named = raw
        .reps
        .iter()
        .map(|(n, r)| Ok((n.clone(), build_rep(&algebra, n, r)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut spec = CategorySpec {
        path: path.to_path_buf(),
        class: ConflationClass::all_short_exact(&algebra),
        algebra,
        named,
        sequences: Vec::new(),
        percolating: None,
        generators: Vec::new(),
    };
    for (name, seq) in &raw.sequences {
        let pair = spec.raw_sequence(seq).map_err(|e| context(e, &format!("sequence {name}")))?;
        spec.sequences.push((name.clone(), pair));
    }
    Ok(spec)
}
