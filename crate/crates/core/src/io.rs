//! JSON documents: one object per line with a `kind`, a `field` header and a kind-specific payload.
//!
//! Scalars are strings (`"7"`, `"-3/2"`), matrices are arrays of rows, vectors are arrays of
//! scalars, and subspaces are lists of basis vectors. Representations inside a document refer
//! to the document's single `algebra` object and list one matrix per generator, in generator
//! order.

use std::sync::Arc;

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize};

use crate::algebra::{intertwines, AlgebraPresentation, Relation, Representation, Term, UnitRule};
use crate::certificate::RiedtmannCertificate;
use crate::error::{Error, Result};
use crate::ladder::{verify_ladder, LadderCertificate};
use crate::matrix::{Matrix, Vector};
use crate::module::{is_invariant, Submodule};
use crate::report::Report;
use crate::scalar::{FieldSpec, Scalar};
use crate::series::{CompositionSeries, CompositionVector};
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Algebra(Arc<AlgebraPresentation>),
    Representation(Representation),
    Map {
        source: Representation,
        target: Representation,
        matrix: Matrix,
    },
    Submodule {
        ambient: Representation,
        space: Subspace,
    },
    Certificate(RiedtmannCertificate),
    Ladder(LadderCertificate),
    Series(CompositionSeries),
    CompositionVector {
        algebra: Arc<AlgebraPresentation>,
        vector: CompositionVector,
    },
}

// ---------------------------------------------------------------- wire format

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum FieldWire {
    Rationals { rationals: True },
    Prime { p: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct True;

impl<'de> Deserialize<'de> for True {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        if bool::deserialize(d)? {
            Ok(True)
        } else {
            Err(de::Error::custom("\"rationals\" must be true"))
        }
    }
}

impl Serialize for True {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_bool(true)
    }
}

/// Rectangular grid of scalar strings; raggedness is a parse error.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
struct Grid(Vec<Vec<String>>);

impl<'de> Deserialize<'de> for Grid {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        if let Some(first) = rows.first() {
            if let Some((i, r)) = rows
                .iter()
                .enumerate()
                .find(|(_, r)| r.len() != first.len())
            {
                return Err(de::Error::custom(format!(
                    "row {i} has {} entries, row 0 has {}",
                    r.len(),
                    first.len()
                )));
            }
        }
        Ok(Grid(rows))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraWire {
    name: String,
    generators: Vec<String>,
    idempotents: Vec<String>,
    radical: Vec<String>,
    relations: Vec<Vec<(String, Vec<String>)>>,
    /// A generator name, or `"idempotents"` when the idempotents sum to 1.
    unit: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepWire {
    dim: usize,
    mats: Vec<Grid>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesWire {
    ambient: RepWire,
    flags: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDoc {
    kind: String,
    field: FieldWire,
    algebra: AlgebraWire,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepresentationDoc {
    kind: String,
    field: FieldWire,
    algebra: AlgebraWire,
    rep: RepWire,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapDoc {
    kind: String,
    field: FieldWire,
    algebra: AlgebraWire,
    source: RepWire,
    target: RepWire,
    matrix: Grid,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SubmoduleDoc {
    kind: String,
    field: FieldWire,
    algebra: AlgebraWire,
    ambient: RepWire,
    basis: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateDoc {
    kind: String,
    field: FieldWire,
    algebra: AlgebraWire,
    x: RepWire,
    m: RepWire,
    n: RepWire,
    f: Grid,
    g: Grid,
    q: Grid,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LadderDoc {
    kind: String,
    field: FieldWire,
    algebra: AlgebraWire,
    m_series: SeriesWire,
    n_series: SeriesWire,
    x: Vec<RepWire>,
    h: Vec<Grid>,
    fg: Vec<Grid>,
    q: Vec<Grid>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesDoc {
    kind: String,
    field: FieldWire,
    algebra: AlgebraWire,
    series: SeriesWire,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CompositionVectorDoc {
    kind: String,
    field: FieldWire,
    algebra: AlgebraWire,
    entries: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
enum Wire {
    Algebra(AlgebraDoc),
    Representation(RepresentationDoc),
    Map(MapDoc),
    Submodule(SubmoduleDoc),
    Certificate(CertificateDoc),
    Ladder(LadderDoc),
    Series(SeriesDoc),
    CompositionVector(CompositionVectorDoc),
}

const KINDS: &[&str] = &[
    "algebra",
    "representation",
    "map",
    "submodule",
    "certificate",
    "ladder",
    "series",
    "composition-vector",
];

// ---------------------------------------------------------------- decoding

fn field_of(w: &FieldWire) -> Result<FieldSpec> {
    match *w {
        FieldWire::Rationals { .. } => Ok(FieldSpec::Rationals),
        FieldWire::Prime { p } => FieldSpec::prime(p),
    }
}

struct Decoder {
    field: FieldSpec,
    algebra: Arc<AlgebraPresentation>,
}

fn generator(alg_gens: &[String], name: &str) -> Result<usize> {
    alg_gens
        .iter()
        .position(|g| g == name)
        .ok_or_else(|| Error::InvalidInput(format!("unknown generator {name:?}")))
}

fn decode_algebra(field: FieldSpec, w: &AlgebraWire) -> Result<AlgebraPresentation> {
    let gens = &w.generators;
    let idx = |names: &[String]| {
        names
            .iter()
            .map(|n| generator(gens, n))
            .collect::<Result<Vec<_>>>()
    };
    let relations = w
        .relations
        .iter()
        .map(|r| {
            let terms = r
                .iter()
                .map(|(c, word)| {
                    Ok(Term {
                        coeff: field.parse(c)?,
                        word: idx(word)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Relation { terms })
        })
        .collect::<Result<Vec<_>>>()?;
    let unit = if w.unit == "idempotents" {
        UnitRule::SumOfIdempotents
    } else {
        UnitRule::Generator(generator(gens, &w.unit)?)
    };
    AlgebraPresentation::new(
        w.name.clone(),
        field,
        gens.clone(),
        idx(&w.idempotents)?,
        idx(&w.radical)?,
        relations,
        unit,
    )
}

impl Decoder {
    fn new(field: &FieldWire, algebra: &AlgebraWire) -> Result<Self> {
        let field = field_of(field)?;
        Ok(Decoder {
            field,
            algebra: Arc::new(decode_algebra(field, algebra)?),
        })
    }

    fn vector(&self, v: &[String], len: usize) -> Result<Vector> {
        if v.len() != len {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {}, expected {len}",
                v.len()
            )));
        }
        v.iter().map(|s| self.field.parse(s)).collect()
    }

    fn matrix(&self, g: &Grid, rows: usize, cols: usize, what: &str) -> Result<Matrix> {
        let g = &g.0;
        let got_cols = g.first().map_or(0, |r| r.len());
        let shape_ok = g.len() == rows && (rows == 0 || got_cols == cols);
        if !shape_ok {
            return Err(Error::DimensionMismatch(format!(
                "{what} is {}x{got_cols}, expected {rows}x{cols}",
                g.len()
            )));
        }
        let data = g
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| self.field.parse(s))
                    .collect::<Result<Vec<Scalar>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(self.field, rows, cols, data)
    }

    fn rep(&self, w: &RepWire) -> Result<Representation> {
        let n = self.algebra.generators().len();
        if w.mats.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for {n} generators",
                w.mats.len()
            )));
        }
        let mats = w
            .mats
            .iter()
            .zip(self.algebra.generators())
            .map(|(g, name)| self.matrix(g, w.dim, w.dim, name))
            .collect::<Result<Vec<_>>>()?;
        Representation::new(self.algebra.clone(), w.dim, mats)
    }

    fn subspace(&self, basis: &[Vec<String>], n: usize) -> Result<Subspace> {
        let vs = basis
            .iter()
            .map(|v| self.vector(v, n))
            .collect::<Result<Vec<_>>>()?;
        let s = Subspace::span(self.field, n, &vs);
        if s.dim() != vs.len() {
            return Err(Error::InvalidInput(
                "basis vectors are linearly dependent".into(),
            ));
        }
        Ok(s)
    }

    fn series(&self, w: &SeriesWire) -> Result<CompositionSeries> {
        let ambient = self.rep(&w.ambient)?;
        let flags = w
            .flags
            .iter()
            .map(|b| self.subspace(b, ambient.dim()))
            .collect::<Result<Vec<_>>>()?;
        CompositionSeries::new(ambient, flags)
    }
}

fn decode(w: &Wire) -> Result<Document> {
    Ok(match w {
        Wire::Algebra(AlgebraDoc { field, algebra, .. }) => {
            Document::Algebra(Decoder::new(field, algebra)?.algebra)
        }
        Wire::Representation(RepresentationDoc {
            field,
            algebra,
            rep,
            ..
        }) => Document::Representation(Decoder::new(field, algebra)?.rep(rep)?),
        Wire::Map(MapDoc {
            field,
            algebra,
            source,
            target,
            matrix,
            ..
        }) => {
            let d = Decoder::new(field, algebra)?;
            let (source, target) = (d.rep(source)?, d.rep(target)?);
            let matrix = d.matrix(matrix, target.dim(), source.dim(), "matrix")?;
            Document::Map {
                source,
                target,
                matrix,
            }
        }
        Wire::Submodule(SubmoduleDoc {
            field,
            algebra,
            ambient,
            basis,
            ..
        }) => {
            let d = Decoder::new(field, algebra)?;
            let ambient = d.rep(ambient)?;
            let space = d.subspace(basis, ambient.dim())?;
            Document::Submodule { ambient, space }
        }
        Wire::Certificate(CertificateDoc {
            field,
            algebra,
            x,
            m,
            n,
            f,
            g,
            q,
            ..
        }) => {
            let d = Decoder::new(field, algebra)?;
            let (x, m, n) = (d.rep(x)?, d.rep(m)?, d.rep(n)?);
            let f = d.matrix(f, x.dim(), x.dim(), "f")?;
            let g = d.matrix(g, m.dim(), x.dim(), "g")?;
            let q = d.matrix(q, n.dim(), x.dim() + m.dim(), "q")?;
            Document::Certificate(RiedtmannCertificate::new(x, m, n, f, g, q)?)
        }
        Wire::Ladder(LadderDoc {
            field,
            algebra,
            m_series,
            n_series,
            x,
            h,
            fg,
            q,
            ..
        }) => {
            let d = Decoder::new(field, algebra)?;
            let ms = d.series(m_series)?;
            let ns = d.series(n_series)?;
            let xs = x.iter().map(|r| d.rep(r)).collect::<Result<Vec<_>>>()?;
            let len = ms.len();
            if xs.len() != len || h.len() + 1 != len || fg.len() != len || q.len() != len {
                return Err(Error::DimensionMismatch(format!(
                    "ladder of length {len} has mismatched lists"
                )));
            }
            let hs = (0..len - 1)
                .map(|i| d.matrix(&h[i], xs[i + 1].dim(), xs[i].dim(), "h"))
                .collect::<Result<Vec<_>>>()?;
            let fgs = (0..len)
                .map(|i| d.matrix(&fg[i], xs[i].dim() + i + 1, xs[i].dim(), "fg"))
                .collect::<Result<Vec<_>>>()?;
            let qs = (0..len)
                .map(|i| d.matrix(&q[i], i + 1, xs[i].dim() + i + 1, "q"))
                .collect::<Result<Vec<_>>>()?;
            Document::Ladder(LadderCertificate::new(ms, ns, xs, hs, fgs, qs)?)
        }
        Wire::Series(SeriesDoc {
            field,
            algebra,
            series,
            ..
        }) => Document::Series(Decoder::new(field, algebra)?.series(series)?),
        Wire::CompositionVector(CompositionVectorDoc {
            field,
            algebra,
            entries,
            ..
        }) => {
            let d = Decoder::new(field, algebra)?;
            let alg = &d.algebra;
            let entries = entries
                .iter()
                .map(|n| {
                    (0..alg.idempotents().len())
                        .find(|&k| alg.idempotent_name(k) == n)
                        .ok_or_else(|| {
                            Error::InvalidInput(format!("{n:?} is not a declared idempotent"))
                        })
                })
                .collect::<Result<Vec<_>>>()?;
            Document::CompositionVector {
                algebra: d.algebra,
                vector: CompositionVector { entries },
            }
        }
    })
}

/// Parses one document. Syntax and schema errors carry the line and column.
pub fn parse(text: &str) -> Result<Document> {
    fn json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }
    #[derive(Deserialize)]
    struct Kind {
        kind: String,
    }
    let kind = json::<Kind>(text)?.kind;
    let wire = match kind.as_str() {
        "algebra" => Wire::Algebra(json(text)?),
        "representation" => Wire::Representation(json(text)?),
        "map" => Wire::Map(json(text)?),
        "submodule" => Wire::Submodule(json(text)?),
        "certificate" => Wire::Certificate(json(text)?),
        "ladder" => Wire::Ladder(json(text)?),
        "series" => Wire::Series(json(text)?),
        "composition-vector" => Wire::CompositionVector(json(text)?),
        other => {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: format!(
                    "unknown kind {other:?}, expected one of {}",
                    KINDS.join(", ")
                ),
            })
        }
    };
    decode(&wire)
}

/// Reads and parses a file, prefixing errors with its path.
pub fn read(path: &std::path::Path) -> Result<Document> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    parse(&text)
}

// ---------------------------------------------------------------- encoding

fn enc_field(f: FieldSpec) -> FieldWire {
    match f {
        FieldSpec::Rationals => FieldWire::Rationals { rationals: True },
        FieldSpec::PrimeField(p) => FieldWire::Prime { p },
    }
}

fn enc_algebra(a: &AlgebraPresentation) -> AlgebraWire {
    let gens = a.generators();
    let names = |idx: &[usize]| idx.iter().map(|&i| gens[i].clone()).collect::<Vec<_>>();
    AlgebraWire {
        name: a.name().to_string(),
        generators: gens.to_vec(),
        idempotents: names(a.idempotents()),
        radical: names(a.radical_generators()),
        relations: a
            .relations()
            .iter()
            .map(|r| {
                r.terms
                    .iter()
                    .map(|t| (t.coeff.to_string(), names(&t.word)))
                    .collect()
            })
            .collect(),
        unit: match a.unit() {
            UnitRule::SumOfIdempotents => "idempotents".into(),
            UnitRule::Generator(g) => gens[*g].clone(),
        },
    }
}

fn enc_matrix(m: &Matrix) -> Grid {
    Grid(
        m.to_rows()
            .iter()
            .map(|r| r.iter().map(|s| s.to_string()).collect())
            .collect(),
    )
}

fn enc_vectors(s: &Subspace) -> Vec<Vec<String>> {
    s.vectors()
        .iter()
        .map(|v| v.iter().map(|x| x.to_string()).collect())
        .collect()
}

fn enc_rep(r: &Representation) -> RepWire {
    RepWire {
        dim: r.dim(),
        mats: r.mats().iter().map(enc_matrix).collect(),
    }
}

fn enc_series(s: &CompositionSeries) -> SeriesWire {
    SeriesWire {
        ambient: enc_rep(s.ambient()),
        flags: s.flags().iter().map(|f| enc_vectors(f.space())).collect(),
    }
}

fn encode(doc: &Document) -> Wire {
    let alg = doc.algebra();
    let field = enc_field(alg.field());
    let algebra = enc_algebra(alg);
    match doc {
        Document::Algebra(_) => Wire::Algebra(AlgebraDoc {
            kind: "algebra".into(),
            field,
            algebra,
        }),
        Document::Representation(r) => Wire::Representation(RepresentationDoc {
            kind: "representation".into(),
            field,
            algebra,
            rep: enc_rep(r),
        }),
        Document::Map {
            source,
            target,
            matrix,
        } => Wire::Map(MapDoc {
            kind: "map".into(),
            field,
            algebra,
            source: enc_rep(source),
            target: enc_rep(target),
            matrix: enc_matrix(matrix),
        }),
        Document::Submodule { ambient, space } => Wire::Submodule(SubmoduleDoc {
            kind: "submodule".into(),
            field,
            algebra,
            ambient: enc_rep(ambient),
            basis: enc_vectors(space),
        }),
        Document::Certificate(c) => Wire::Certificate(CertificateDoc {
            kind: "certificate".into(),
            field,
            algebra,
            x: enc_rep(c.x()),
            m: enc_rep(c.m()),
            n: enc_rep(c.n()),
            f: enc_matrix(c.f()),
            g: enc_matrix(c.g()),
            q: enc_matrix(c.q()),
        }),
        Document::Ladder(l) => Wire::Ladder(LadderDoc {
            kind: "ladder".into(),
            field,
            algebra,
            m_series: enc_series(l.m_series()),
            n_series: enc_series(l.n_series()),
            x: l.x().iter().map(enc_rep).collect(),
            h: l.h().iter().map(enc_matrix).collect(),
            fg: l.fg().iter().map(enc_matrix).collect(),
            q: l.q().iter().map(enc_matrix).collect(),
        }),
        Document::Series(s) => Wire::Series(SeriesDoc {
            kind: "series".into(),
            field,
            algebra,
            series: enc_series(s),
        }),
        Document::CompositionVector { algebra: a, vector } => {
            Wire::CompositionVector(CompositionVectorDoc {
                kind: "composition-vector".into(),
                field,
                algebra,
                entries: vector.names(a).into_iter().map(String::from).collect(),
            })
        }
    }
}

/// Canonical single-line form, newline terminated.
pub fn print(doc: &Document) -> String {
    let mut s = serde_json::to_string(&encode(doc)).expect("documents serialize");
    s.push('\n');
    s
}

// ---------------------------------------------------------------- access

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Algebra(_) => "algebra",
            Document::Representation(_) => "representation",
            Document::Map { .. } => "map",
            Document::Submodule { .. } => "submodule",
            Document::Certificate(_) => "certificate",
            Document::Ladder(_) => "ladder",
            Document::Series(_) => "series",
            Document::CompositionVector { .. } => "composition-vector",
        }
    }

    pub fn algebra(&self) -> &Arc<AlgebraPresentation> {
        match self {
            Document::Algebra(a) | Document::CompositionVector { algebra: a, .. } => a,
            Document::Representation(r)
            | Document::Map { source: r, .. }
            | Document::Submodule { ambient: r, .. } => r.algebra(),
            Document::Certificate(c) => c.m().algebra(),
            Document::Ladder(l) => l.m_series().ambient().algebra(),
            Document::Series(s) => s.ambient().algebra(),
        }
    }

    /// Every invariant the document's kind promises.
    pub fn validate(&self) -> Report {
        match self {
            Document::Algebra(_) => Report::new(),
            Document::Representation(r) => r.validate(),
            Document::Map {
                source,
                target,
                matrix,
            } => {
                let mut r = Report::new();
                r.absorb("source", source.validate());
                r.absorb("target", target.validate());
                r.check("matrix intertwines", intertwines(source, target, matrix));
                r
            }
            Document::Submodule { ambient, space } => {
                let mut r = Report::new();
                r.absorb("ambient", ambient.validate());
                r.check("subspace is invariant", is_invariant(ambient, space));
                r
            }
            Document::Certificate(c) => c.verify(),
            Document::Ladder(l) => verify_ladder(l),
            Document::Series(s) => s.validate(),
            Document::CompositionVector { .. } => Report::new(),
        }
    }

    fn wrong(&self, want: &str) -> Error {
        Error::InvalidInput(format!("expected a {want} document, found {}", self.kind()))
    }

    pub fn into_representation(self) -> Result<Representation> {
        match self {
            Document::Representation(r) => Ok(r),
            other => Err(other.wrong("representation")),
        }
    }

    pub fn into_submodule(self) -> Result<Submodule> {
        match self {
            Document::Submodule { ambient, space } => Submodule::new(ambient, space),
            other => Err(other.wrong("submodule")),
        }
    }

    pub fn into_certificate(self) -> Result<RiedtmannCertificate> {
        match self {
            Document::Certificate(c) => Ok(c),
            other => Err(other.wrong("certificate")),
        }
    }

    pub fn into_ladder(self) -> Result<LadderCertificate> {
        match self {
            Document::Ladder(l) => Ok(l),
            other => Err(other.wrong("ladder")),
        }
    }

    pub fn into_series(self) -> Result<CompositionSeries> {
        match self {
            Document::Series(s) => Ok(s),
            other => Err(other.wrong("series")),
        }
    }

    pub fn into_composition_vector(self) -> Result<CompositionVector> {
        match self {
            Document::CompositionVector { vector, .. } => Ok(vector),
            other => Err(other.wrong("composition-vector")),
        }
    }
}

impl From<Representation> for Document {
    fn from(r: Representation) -> Self {
        Document::Representation(r)
    }
}

impl From<RiedtmannCertificate> for Document {
    fn from(c: RiedtmannCertificate) -> Self {
        Document::Certificate(c)
    }
}

impl From<LadderCertificate> for Document {
    fn from(l: LadderCertificate) -> Self {
        Document::Ladder(l)
    }
}

impl From<CompositionSeries> for Document {
    fn from(s: CompositionSeries) -> Self {
        Document::Series(s)
    }
}

impl From<Submodule> for Document {
    fn from(s: Submodule) -> Self {
        Document::Submodule {
            ambient: s.ambient().clone(),
            space: s.space().clone(),
        }
    }
}
