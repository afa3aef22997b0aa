//! Command-line front end. Every subcommand reads documents, calls one library operation
//! and writes documents or small JSON summaries, one per line.
//!
//! Exit codes: 0 success or true, 1 verified false, 2 error or undecided.

use std::ffi::OsString;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::algebra::Representation;
use crate::certificate::{
    codim, compose_certificates, hom_defect, orbit_dim_gl, push_submodule, split_submodule,
    verify_certificate, virtual_chain,
};
use crate::enumerate::enum_submodules;
use crate::error::{Error, Result};
use crate::hom::hom_matrices;
use crate::io::{self, Document};
use crate::iso::{is_isomorphic, IsoVerdict, SearchOptions};
use crate::ladder::{
    build_family, evaluate_family, make_monic, orbit_dim_ud, psi_embed, verify_ladder,
};
use crate::matrix::Matrix;
use crate::oracle::{jordan_type, nilpotent_rank_profile, rank_condition_degenerates};
use crate::report::Report;
use crate::series::{
    composition_series, composition_vector, series_isomorphic, series_to_triangular,
    simultaneous_triangularize, SeriesIsoVerdict, TriangularRep,
};
use crate::subspace::Subspace;

#[derive(Debug, Parser)]
#[command(name = "modegen", version, about = "Exact module degeneration toolkit")]
pub struct Cli {
    /// Seed for every randomized search.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Random trials before falling back to exhaustive search or giving up.
    #[arg(long, global = true, default_value_t = 32)]
    pub max_trials: usize,
    #[command(subcommand)]
    pub command: Command,
}

/// File arguments accept `-` for standard input.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the invariants of any document.
    Validate { file: PathBuf },
    /// Basis of Hom(M, N).
    Hom { m: PathBuf, n: PathBuf },
    /// [N,N] - [M,M].
    Codim { m: PathBuf, n: PathBuf },
    /// Orbit dimension under GL_d, or under invertible upper-triangular matrices with --ud.
    OrbitDim {
        #[arg(long)]
        ud: bool,
        m: PathBuf,
    },
    /// Verify a degeneration certificate.
    CheckCert { c: PathBuf },
    /// Push a submodule of M through a certificate.
    PushSub { c: PathBuf, submodule: PathBuf },
    /// Split a submodule of X ⊕ Y along the projection to X.
    SplitSub {
        x: PathBuf,
        y: PathBuf,
        submodule: PathBuf,
    },
    /// Compose certificates for A <= B and B <= C.
    Compose { c1: PathBuf, c2: PathBuf },
    /// Descending chains for a certificate of M ⊕ Y <= N ⊕ Y.
    Vchain {
        c: PathBuf,
        submodule: PathBuf,
        /// Dimension of the common summand Y, the trailing block of both M-slot and N-slot.
        #[arg(long)]
        y_dim: usize,
    },
    /// [X,N] - [X,M] for each test module X.
    HomDefect {
        m: PathBuf,
        n: PathBuf,
        #[arg(required = true)]
        tests: Vec<PathBuf>,
    },
    /// A composition series through the socle.
    Series { m: PathBuf },
    /// Triangular representation of a series.
    Triangularize { series: PathBuf },
    /// Composition vector of a series.
    CompVector { series: PathBuf },
    /// Triangularize two modules with equal composition vectors compatibly.
    SimTri {
        m: PathBuf,
        n: PathBuf,
        sm: PathBuf,
        sn: PathBuf,
    },
    /// Whether two triangular representations are conjugate by an upper-triangular matrix.
    SeriesIso {
        a: PathBuf,
        b: PathBuf,
        /// Give up instead of enumerating when the greedy choice fails.
        #[arg(long)]
        no_exhaustive: bool,
    },
    /// Whether two representations are isomorphic.
    Iso { m: PathBuf, n: PathBuf },
    /// Verify a ladder certificate.
    CheckLadder { l: PathBuf },
    /// Replace a ladder by one with injective horizontal maps.
    MakeMonic { l: PathBuf },
    /// Evaluate the deformation family of a ladder at sample points.
    Deform {
        l: PathBuf,
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_hyphen_values = true
        )]
        t: Vec<String>,
        #[arg(long)]
        cvec: Option<PathBuf>,
    },
    /// Embed triangular representations (or both borders of a ladder) as modules over
    /// upper-triangular matrices.
    Psi { input: PathBuf },
    /// Rank profiles and rank-condition comparison of two nilpotent modules.
    OracleNilp { mu: PathBuf, nu: PathBuf },
    /// All submodules over a small prime field.
    EnumSubs { m: PathBuf },
}

/// What a run printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Out {
    lines: Vec<String>,
    code: i32,
}

impl Out {
    fn new() -> Self {
        Out {
            lines: Vec::new(),
            code: 0,
        }
    }

    fn doc(&mut self, d: &Document) {
        self.lines.push(io::print(d).trim_end().to_string());
    }

    fn json(&mut self, v: Value) {
        self.lines.push(v.to_string());
    }

    fn text(&mut self, s: impl ToString) {
        self.lines.push(s.to_string());
    }

    fn verdict(mut self, ok: bool) -> Self {
        self.code = if ok { 0 } else { 1 };
        self
    }
}

fn load(path: &Path) -> Result<Document> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Error::InvalidInput(format!("stdin: {e}")))?;
        return io::parse(&text);
    }
    io::read(path)
}

/// Loads a document and insists its invariants hold.
fn load_valid(path: &Path) -> Result<Document> {
    let doc = load(path)?;
    let report = doc.validate();
    if !report.is_valid() {
        let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        return Err(Error::InvalidInput(format!(
            "{}: {}",
            path.display(),
            failed.join("; ")
        )));
    }
    Ok(doc)
}

fn rep(path: &Path) -> Result<Representation> {
    load_valid(path)?.into_representation()
}

fn triangular(path: &Path) -> Result<TriangularRep> {
    TriangularRep::new(rep(path)?)
}

fn grid(m: &Matrix) -> Value {
    json!(m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn basis(s: &Subspace) -> Value {
    json!(s
        .vectors()
        .iter()
        .map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn report(r: &Report) -> Value {
    json!({ "valid": r.is_valid(), "checks": r.checks })
}

fn execute(cli: &Cli) -> Result<Out> {
    let opts = SearchOptions {
        seed: cli.seed,
        max_trials: cli.max_trials,
    };
    let mut out = Out::new();
    match &cli.command {
        Command::Validate { file } => {
            let r = load(file)?.validate();
            out.json(report(&r));
            return Ok(out.verdict(r.is_valid()));
        }
        Command::Hom { m, n } => {
            let b = hom_matrices(&rep(m)?, &rep(n)?)?;
            out.json(json!({ "dim": b.len(), "basis": b.iter().map(grid).collect::<Vec<_>>() }));
        }
        Command::Codim { m, n } => out.text(codim(&rep(m)?, &rep(n)?)?),
        Command::OrbitDim { ud, m } => {
            let v = if *ud {
                orbit_dim_ud(&triangular(m)?)?
            } else {
                orbit_dim_gl(&rep(m)?)?
            };
            out.text(v);
        }
        Command::CheckCert { c } => {
            let r = verify_certificate(&load(c)?.into_certificate()?);
            out.json(report(&r));
            return Ok(out.verdict(r.is_valid()));
        }
        Command::PushSub { c, submodule } => {
            let c = load_valid(c)?.into_certificate()?;
            let p = push_submodule(&c, &load_valid(submodule)?.into_submodule()?)?;
            out.doc(&p.nprime.into());
            out.doc(&p.certificate.into());
        }
        Command::SplitSub { x, y, submodule } => {
            let s = split_submodule(
                &rep(x)?,
                &rep(y)?,
                &load_valid(submodule)?.into_submodule()?,
            )?;
            out.doc(&s.xprime.into());
            out.doc(&s.yprime.into());
            out.doc(&s.certificate.into());
        }
        Command::Compose { c1, c2 } => {
            let c = compose_certificates(
                &load_valid(c1)?.into_certificate()?,
                &load_valid(c2)?.into_certificate()?,
            )?;
            out.doc(&c.into());
        }
        Command::Vchain {
            c,
            submodule,
            y_dim,
        } => {
            let c = load_valid(c)?.into_certificate()?;
            let sub = load_valid(submodule)?.into_submodule()?;
            let vc = virtual_chain(&c, *y_dim, &sub).map_err(|f| {
                let trace: Vec<Value> = f
                    .trace
                    .iter()
                    .map(|s| json!({ "n": basis(&s.n), "y": basis(&s.y) }))
                    .collect();
                Error::InvalidInput(format!("{} (trace: {})", f.error, json!(trace)))
            })?;
            out.doc(&vc.nfinal.into());
            out.doc(&vc.yfinal.into());
            out.doc(&vc.certificate.into());
            let trace: Vec<Value> = vc
                .trace
                .iter()
                .map(|s| json!({ "n": basis(&s.n), "y": basis(&s.y) }))
                .collect();
            out.json(json!({ "trace": trace }));
        }
        Command::HomDefect { m, n, tests } => {
            let tests = tests.iter().map(|t| rep(t)).collect::<Result<Vec<_>>>()?;
            let h = hom_defect(&rep(m)?, &rep(n)?, &tests)?;
            out.json(json!({ "values": h.values, "refutes": h.refutes() }));
            return Ok(out.verdict(!h.refutes()));
        }
        Command::Series { m } => out.doc(&composition_series(&rep(m)?)?.into()),
        Command::Triangularize { series } => {
            let s = load_valid(series)?.into_series()?;
            out.doc(&series_to_triangular(&s)?.into_rep().into());
        }
        Command::CompVector { series } => {
            let s = load_valid(series)?.into_series()?;
            out.doc(&Document::CompositionVector {
                algebra: s.ambient().algebra().clone(),
                vector: composition_vector(&s),
            });
        }
        Command::SimTri { m, n, sm, sn } => {
            let sm = load_valid(sm)?.into_series()?;
            let sn = load_valid(sn)?.into_series()?;
            match simultaneous_triangularize(&rep(m)?, &rep(n)?, &sm, &sn) {
                Ok((a, b)) => {
                    out.doc(&a.into_rep().into());
                    out.doc(&b.into_rep().into());
                }
                Err(e @ Error::VectorMismatch(_)) => {
                    out.json(json!({ "error": e.kind(), "message": e.to_string() }));
                    return Ok(out.verdict(false));
                }
                Err(e) => return Err(e),
            }
        }
        Command::SeriesIso {
            a,
            b,
            no_exhaustive,
        } => {
            let v = series_isomorphic(&triangular(a)?, &triangular(b)?, !no_exhaustive)?;
            let ok = v.is_isomorphic();
            match v {
                SeriesIsoVerdict::Isomorphic(w) => {
                    out.json(json!({ "series_isomorphic": true, "witness": grid(&w) }))
                }
                SeriesIsoVerdict::NotIsomorphic => out.json(json!({ "series_isomorphic": false })),
            }
            return Ok(out.verdict(ok));
        }
        Command::Iso { m, n } => {
            let v = is_isomorphic(&rep(m)?, &rep(n)?, opts)?;
            let ok = v.is_isomorphic();
            match v {
                IsoVerdict::Isomorphic(w) => {
                    out.json(json!({ "isomorphic": true, "witness": grid(w.matrix()) }))
                }
                IsoVerdict::NotIsomorphic => out.json(json!({ "isomorphic": false })),
            }
            return Ok(out.verdict(ok));
        }
        Command::CheckLadder { l } => {
            let r = verify_ladder(&load(l)?.into_ladder()?);
            out.json(report(&r));
            return Ok(out.verdict(r.is_valid()));
        }
        Command::MakeMonic { l } => out.doc(&make_monic(&load_valid(l)?.into_ladder()?)?.into()),
        Command::Deform { l, t, cvec } => {
            let mut lc = load_valid(l)?.into_ladder()?;
            if !lc.is_monic() {
                lc = make_monic(&lc)?;
            }
            let cv = cvec
                .as_ref()
                .map(|p| load(p)?.into_composition_vector())
                .transpose()?;
            let fam = build_family(&lc, cv.as_ref())?;
            let field = lc.m_series().ambient().field();
            for s in t {
                let value = field.parse(s)?;
                out.doc(&evaluate_family(&fam, &value)?.into_rep().into());
            }
        }
        Command::Psi { input } => match load_valid(input)? {
            Document::Ladder(lc) => {
                out.doc(&psi_embed(&series_to_triangular(lc.m_series())?).into());
                out.doc(&psi_embed(&series_to_triangular(lc.n_series())?).into());
            }
            other => out.doc(&psi_embed(&TriangularRep::new(other.into_representation()?)?).into()),
        },
        Command::OracleNilp { mu, nu } => {
            let (a, b) = (rep(mu)?, rep(nu)?);
            let forward = rank_condition_degenerates(&a, &b)?;
            let backward = rank_condition_degenerates(&b, &a)?;
            out.json(json!({
                "mu_ranks": nilpotent_rank_profile(&a)?,
                "nu_ranks": nilpotent_rank_profile(&b)?,
                "mu_type": jordan_type(&a)?,
                "nu_type": jordan_type(&b)?,
                "mu_degenerates_to_nu": forward,
                "nu_degenerates_to_mu": backward,
                "same_orbit": forward && backward,
            }));
        }
        Command::EnumSubs { m } => {
            for s in enum_submodules(&rep(m)?)? {
                out.doc(&s.into());
            }
        }
    }
    Ok(out)
}

fn error_json(e: &Error) -> String {
    let mut v = json!({ "error": e.kind(), "message": e.to_string() });
    if let Error::Parse { line, column, .. } = e {
        v["line"] = json!(line);
        v["column"] = json!(column);
    }
    v.to_string()
}

/// Parses arguments (the first is the program name) and runs one command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let mut stdout = out.lines.join("\n");
            stdout.push('\n');
            Outcome {
                code: out.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: error_json(&e) + "\n",
        },
    }
}
