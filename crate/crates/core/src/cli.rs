//! Command-line surface: fan documents in, reports out.
//!
//! Every subcommand fills one or more sections of a [`ReportDocument`]; the
//! text renderer and the JSON renderer read the same document, so the two
//! outputs never disagree.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangements::{
    braid_arrangement, defining_arrangement, derivation_table, exponents_from_derivations, flat_counts,
    lattice_with_mobius, poincare_polynomial, Arrangement, ArrangementError,
};
use crate::complex::{euler_identity_holds, ChainComplexSpec, ComplexError};
use crate::constructions::{nonfree_annulus_fan, p1_fan, p2_fan, perturbed_p2a3};
use crate::exactla::subspace::{primitive, Vector};
use crate::exactla::Rational;
use crate::fan::{face_lattice, Fan, FanError};
use crate::splines::{
    free_decomposition, interpolate_hilbert_polynomial, FreeDecompositionResult, HilbertPolynomial, SplineError,
    SplineSystem,
};
use crate::supports::{SupportAnalysis, SupportError};
use crate::verify;

/// A ray coordinate as written in a fan document: an integer or a rational
/// string such as `"-3"` or `"1/2"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coordinate {
    Integer(i64),
    Text(String),
}

/// On-disk description of a fan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    pub rays: Vec<Vec<Coordinate>>,
    /// Zero-based ray indices.
    pub maximal_cones: Vec<Vec<usize>>,
}

impl FanDocument {
    /// Rays written as primitive integer strings.
    pub fn from_fan(name: Option<String>, fan: &Fan) -> Self {
        FanDocument {
            name,
            dim: fan.dim(),
            rays: fan
                .rays()
                .iter()
                .map(|r| primitive(r).iter().map(|c| Coordinate::Text(c.to_string())).collect())
                .collect(),
            maximal_cones: fan.maximal_cones().to_vec(),
        }
    }

    pub fn to_fan(&self) -> Result<Fan, CliError> {
        let mut rays = Vec::with_capacity(self.rays.len());
        for (i, ray) in self.rays.iter().enumerate() {
            let mut v = Vector::with_capacity(ray.len());
            for (j, c) in ray.iter().enumerate() {
                v.push(parse_coordinate(c).ok_or_else(|| CliError::Parse(format!("ray {i}, coordinate {j}: not a rational number")))?);
            }
            rays.push(v);
        }
        Fan::new(self.dim, rays, self.maximal_cones.clone()).map_err(|source| CliError::Validation {
            location: self.name.clone().unwrap_or_else(|| "fan document".into()),
            source,
        })
    }
}

fn parse_coordinate(c: &Coordinate) -> Option<Rational> {
    match c {
        Coordinate::Integer(x) => Some(Rational::from_integer((*x).into())),
        Coordinate::Text(s) => {
            let s = s.trim();
            let r: Rational = s.parse().ok()?;
            // "1/0" parses to nothing useful
            if s.contains('/') && r.denom().is_zero() {
                return None;
            }
            Some(r)
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("malformed fan document: {0}")]
    Parse(String),
    #[error("invalid fan in {location}: {source}")]
    Validation {
        location: String,
        #[source]
        source: FanError,
    },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Support(#[from] SupportError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// All errors are input errors; verification failures are reported
    /// through the report, not through this type.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

pub fn parse_fan_str(text: &str) -> Result<Fan, CliError> {
    let doc: FanDocument = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    doc.to_fan()
}

pub fn parse_fan(path: &Path) -> Result<Fan, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let doc: FanDocument = serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let mut doc = doc;
    doc.name.get_or_insert_with(|| path.display().to_string());
    doc.to_fan()
}

// ---------------------------------------------------------------------------
// Report document

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ReportDocument {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fan: Option<FanSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hilbert: Option<HilbertSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homology: Option<HomologySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<AlphaSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub associated_primes: Option<AssociatedPrimesSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrangement: Option<ArrangementSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construct: Option<ConstructSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<Vec<CriterionReport>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanSummary {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    pub num_rays: usize,
    pub num_maximal_cones: usize,
    /// Face counts by dimension `1..=d`.
    pub f_vector: Vec<usize>,
    /// Interior face counts by dimension `1..=d`.
    pub interior_f_vector: Vec<usize>,
    pub hereditary: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialReport {
    /// Rational coefficients, constant term first.
    pub coefficients: Vec<String>,
    pub stable_from: usize,
    pub display: String,
}

impl From<&HilbertPolynomial> for PolynomialReport {
    fn from(p: &HilbertPolynomial) -> Self {
        PolynomialReport {
            coefficients: p.coefficients.iter().map(ToString::to_string).collect(),
            stable_from: p.stable_from,
            display: p.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FreeReport {
    GeneratorDegrees { degrees: Vec<usize> },
    NotFreeEvidence { index: usize },
    Inconclusive,
}

impl From<Result<FreeDecompositionResult, SplineError>> for FreeReport {
    fn from(r: Result<FreeDecompositionResult, SplineError>) -> Self {
        match r {
            Ok(FreeDecompositionResult::GeneratorDegrees(degrees)) => FreeReport::GeneratorDegrees { degrees },
            Ok(FreeDecompositionResult::NotFreeEvidence(index)) => FreeReport::NotFreeEvidence { index },
            Err(_) => FreeReport::Inconclusive,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSection {
    pub max_degree: usize,
    pub dims: Vec<usize>,
    /// Absent when the table has not stabilized within the window.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<PolynomialReport>,
    pub free_decomposition: FreeReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologySection {
    pub max_degree: usize,
    /// `dims[i - 1][k]` is the dimension of `H_i` in degree `k`.
    pub dims: Vec<Vec<usize>>,
    pub euler_identity: bool,
    pub squares_to_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatReport {
    /// Reduced row echelon basis, rational entries as strings.
    pub basis: Vec<Vec<String>>,
    pub origin: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_xi: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaSection {
    pub codim: usize,
    pub alpha: usize,
    /// Every candidate flat with its contribution, zero contributions included.
    pub flats: Vec<FlatReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociatedPrimesSection {
    pub codim: usize,
    pub flats: Vec<FlatReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MobiusEntry {
    pub rank: usize,
    /// One-based hyperplane indices.
    pub hyperplanes: Vec<usize>,
    pub mobius: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementSection {
    pub ambient_dim: usize,
    /// Primitive integer forms, entries as strings.
    pub forms: Vec<Vec<String>>,
    /// Poincare polynomial coefficients, constant term first.
    pub poincare: Vec<i64>,
    pub flat_counts: Vec<usize>,
    pub mobius: Vec<MobiusEntry>,
    pub max_degree: usize,
    pub derivation_dims: Vec<usize>,
    pub exponents: FreeReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructSection {
    pub kind: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    pub document: FanDocument,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub id: usize,
    pub title: String,
    pub passed: bool,
    pub detail: String,
}

// ---------------------------------------------------------------------------
// Sections

fn rational_rows(rows: &[Vector]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

pub fn fan_summary(name: Option<String>, fan: &Fan) -> FanSummary {
    let fl = face_lattice(fan);
    FanSummary {
        name,
        dim: fan.dim(),
        num_rays: fan.rays().len(),
        num_maximal_cones: fan.num_maximal_cones(),
        f_vector: fl.f_vector(),
        interior_f_vector: fl.interior_f_vector(),
        hereditary: fl.is_hereditary(),
    }
}

pub fn hilbert_section(fan: &Fan, max_degree: usize) -> HilbertSection {
    let t = SplineSystem::new(fan).hilbert_function(max_degree, "C0");
    let d = fan.dim();
    HilbertSection {
        max_degree,
        polynomial: interpolate_hilbert_polynomial(&t, d).ok().as_ref().map(PolynomialReport::from),
        free_decomposition: free_decomposition(&t, d, fan.num_maximal_cones()).into(),
        dims: t.dims,
    }
}

pub fn homology_section(fan: &Fan, max_degree: usize) -> Result<HomologySection, CliError> {
    let fl = face_lattice(fan);
    let complex = ChainComplexSpec::from_lattice(&fl)?;
    let splines = SplineSystem::from_lattice(fan, &fl).hilbert_function(max_degree, "C0");
    let h = complex.homology(max_degree);
    Ok(HomologySection {
        max_degree,
        euler_identity: euler_identity_holds(&complex, &splines, max_degree),
        squares_to_zero: complex.squares_to_zero(max_degree),
        dims: h.dims,
    })
}

pub fn alpha_section(fan: &Fan, codim: usize) -> Result<AlphaSection, CliError> {
    let s = SupportAnalysis::new(fan);
    let mut contributions = s.contributions(codim)?;
    contributions.sort_by(|a, b| a.0.basis.cmp(&b.0.basis));
    Ok(AlphaSection {
        codim,
        alpha: s.alpha(codim)?,
        flats: contributions
            .into_iter()
            .map(|(f, a)| FlatReport {
                basis: rational_rows(&f.basis),
                origin: origin_name(&f),
                a_xi: Some(a),
            })
            .collect(),
    })
}

pub fn associated_primes_section(fan: &Fan, codim: usize) -> Result<AssociatedPrimesSection, CliError> {
    let mut flats = SupportAnalysis::new(fan).associated_prime_flats(codim)?;
    flats.sort_by(|a, b| a.basis.cmp(&b.basis));
    Ok(AssociatedPrimesSection {
        codim,
        flats: flats
            .iter()
            .map(|f| FlatReport {
                basis: rational_rows(&f.basis),
                origin: origin_name(f),
                a_xi: None,
            })
            .collect(),
    })
}

fn origin_name(f: &crate::supports::FlatCandidate) -> String {
    serde_json::to_value(f.origin)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

pub fn arrangement_section(a: &Arrangement, max_degree: usize) -> Result<ArrangementSection, CliError> {
    let l = lattice_with_mobius(a);
    Ok(ArrangementSection {
        ambient_dim: a.ambient_dim(),
        forms: a.forms().iter().map(|f| f.iter().map(ToString::to_string).collect()).collect(),
        poincare: poincare_polynomial(a),
        flat_counts: flat_counts(&l),
        mobius: l
            .flats
            .iter()
            .map(|f| MobiusEntry {
                rank: f.rank,
                hyperplanes: f.hyperplanes.iter().map(|h| h + 1).collect(),
                mobius: f.mobius,
            })
            .collect(),
        max_degree,
        derivation_dims: derivation_table(a, max_degree).dims,
        exponents: exponents_from_derivations(a, max_degree).into(),
    })
}

pub fn verification_section() -> Vec<CriterionReport> {
    verify::run_all()
        .into_iter()
        .map(|o| CriterionReport {
            id: o.id,
            title: o.title,
            passed: o.passed,
            detail: o.detail,
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Rendering

/// Canonical text or pretty JSON; identical documents give identical bytes.
pub fn emit_report(report: &ReportDocument, json: bool) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(report).expect("report serializes");
        s.push('\n');
        return s;
    }
    let mut out = String::new();
    if let Some(f) = &report.fan {
        if let Some(name) = &f.name {
            let _ = writeln!(out, "fan: {name}");
        }
        let _ = writeln!(out, "dimension: {}", f.dim);
        let _ = writeln!(out, "rays: {}", f.num_rays);
        let _ = writeln!(out, "maximal cones: {}", f.num_maximal_cones);
        let _ = writeln!(out, "f-vector (dim 1..d): {:?}", f.f_vector);
        let _ = writeln!(out, "interior f-vector (dim 1..d): {:?}", f.interior_f_vector);
        let _ = writeln!(out, "hereditary: {}", f.hereditary);
    }
    if let Some(h) = &report.hilbert {
        let _ = writeln!(out, "Hilbert function, k = 0..{}:", h.max_degree);
        for (k, v) in h.dims.iter().enumerate() {
            let _ = writeln!(out, "  {k:>3}  {v}");
        }
        match &h.polynomial {
            Some(p) => {
                let _ = writeln!(out, "Hilbert polynomial: {} (agrees from k = {})", p.display, p.stable_from);
            }
            None => {
                let _ = writeln!(out, "Hilbert polynomial: not stabilized within the window");
            }
        }
        let _ = writeln!(out, "free decomposition: {}", free_text(&h.free_decomposition));
    }
    if let Some(h) = &report.homology {
        let _ = writeln!(out, "homology dimensions, k = 0..{}:", h.max_degree);
        for (i, row) in h.dims.iter().enumerate() {
            let _ = writeln!(out, "  H_{}: {:?}", i + 1, row);
        }
        let _ = writeln!(out, "Euler identity: {}", h.euler_identity);
        let _ = writeln!(out, "d^2 = 0: {}", h.squares_to_zero);
    }
    if let Some(a) = &report.alpha {
        let _ = writeln!(out, "alpha_{} = {}", a.codim, a.alpha);
        for f in &a.flats {
            let _ = writeln!(out, "  a_xi = {}  {}  ({})", f.a_xi.unwrap_or(0), basis_text(&f.basis), f.origin);
        }
    }
    if let Some(a) = &report.associated_primes {
        let _ = writeln!(out, "associated prime flats of codimension {}: {}", a.codim + 1, a.flats.len());
        for f in &a.flats {
            let _ = writeln!(out, "  {}", basis_text(&f.basis));
        }
    }
    if let Some(a) = &report.arrangement {
        let _ = writeln!(out, "arrangement in dimension {} with {} hyperplanes:", a.ambient_dim, a.forms.len());
        for (i, f) in a.forms.iter().enumerate() {
            let _ = writeln!(out, "  {:>3}  ({})", i + 1, f.join(", "));
        }
        let _ = writeln!(out, "Poincare polynomial: {}", poly_text(&a.poincare));
        let _ = writeln!(out, "flats by rank: {:?}", a.flat_counts);
        let _ = writeln!(out, "Mobius values:");
        for m in &a.mobius {
            let label: Vec<String> = m.hyperplanes.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "  rank {}  {{{}}}  {}", m.rank, label.join(","), m.mobius);
        }
        let _ = writeln!(out, "derivation dimensions, k = 0..{}: {:?}", a.max_degree, a.derivation_dims);
        let _ = writeln!(out, "exponents: {}", free_text(&a.exponents));
    }
    if let Some(c) = &report.construct {
        match &c.output {
            Some(path) => {
                let _ = writeln!(out, "wrote {} (n = {}) to {path}", c.kind, c.n);
            }
            None => {
                out.push_str(&serde_json::to_string_pretty(&c.document).expect("document serializes"));
                out.push('\n');
            }
        }
    }
    if let Some(v) = &report.verification {
        for c in v {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "[{mark}] {:>2} {}: {}", c.id, c.title, c.detail);
        }
        let passed = v.iter().filter(|c| c.passed).count();
        let _ = writeln!(out, "{passed}/{} criteria passed", v.len());
    }
    out
}

fn free_text(f: &FreeReport) -> String {
    match f {
        FreeReport::GeneratorDegrees { degrees } => format!("free, generators in degrees {degrees:?}"),
        FreeReport::NotFreeEvidence { index } => format!("not free (negative numerator coefficient at t^{index})"),
        FreeReport::Inconclusive => "inconclusive within the window".into(),
    }
}

fn basis_text(basis: &[Vec<String>]) -> String {
    let rows: Vec<String> = basis.iter().map(|r| format!("({})", r.join(", "))).collect();
    format!("span{{{}}}", rows.join(", "))
}

fn poly_text(coeffs: &[i64]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match i {
            0 => c.to_string(),
            1 => format!("{c}t"),
            _ => format!("{c}t^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

// ---------------------------------------------------------------------------
// Command line

#[derive(Debug, Parser)]
#[command(name = "fanspline", version, about = "Graded invariants of splines on polyhedral fans")]
struct Cli {
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Face counts and the hereditary flag.
    Faces { fan: PathBuf },
    /// Hilbert function of continuous splines, its polynomial and a freeness test.
    Hilbert {
        fan: PathBuf,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Homology of the chain complex and the Euler identity.
    Homology {
        fan: PathBuf,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Contributions of candidate flats of codimension `codim + 1`.
    Alpha {
        fan: PathBuf,
        #[arg(long)]
        codim: usize,
    },
    /// Flats of codimension `codim + 1` that support lower homology.
    AssocPrimes {
        fan: PathBuf,
        #[arg(long)]
        codim: usize,
    },
    /// Intersection lattice, Poincare polynomial and derivation module.
    Arrangement {
        /// Fan whose interior walls define the arrangement.
        fan: Option<PathBuf>,
        /// Use the braid arrangement A_n instead of a fan.
        #[arg(long, conflicts_with = "fan")]
        braid: Option<usize>,
        /// Essential braid arrangement in n variables instead of n + 1.
        #[arg(long, requires = "braid")]
        essential: bool,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Write one of the named fans as a fan document.
    Construct {
        kind: FanKind,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Run the reproduction suite.
    VerifyPaper,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FanKind {
    P1,
    P2,
    SigmaPrime,
    Annulus,
}

impl FanKind {
    fn name(self) -> &'static str {
        match self {
            FanKind::P1 => "p1",
            FanKind::P2 => "p2",
            FanKind::SigmaPrime => "sigma-prime",
            FanKind::Annulus => "annulus",
        }
    }
}

fn default_degree(dim: usize) -> usize {
    2 * dim + 4
}

fn build_fan(kind: FanKind, n: usize) -> Result<(String, Fan), CliError> {
    match kind {
        FanKind::P1 if n >= 1 => Ok((format!("p1_a{n}"), p1_fan(n))),
        FanKind::P2 if n >= 2 => Ok((format!("p2_a{n}"), p2_fan(n))),
        FanKind::SigmaPrime => Ok(("sigma_prime".into(), perturbed_p2a3())),
        FanKind::Annulus => Ok(("annulus".into(), nonfree_annulus_fan())),
        _ => Err(CliError::Usage(format!("{} needs a larger --n, got {n}", kind.name()))),
    }
}

fn execute(cli: Cli) -> Result<ReportDocument, CliError> {
    let mut report = ReportDocument::default();
    match cli.command {
        Command::Faces { fan } => {
            report.command = "faces".into();
            let f = parse_fan(&fan)?;
            report.fan = Some(fan_summary(Some(fan.display().to_string()), &f));
        }
        Command::Hilbert { fan, max_degree } => {
            report.command = "hilbert".into();
            let f = parse_fan(&fan)?;
            report.fan = Some(fan_summary(Some(fan.display().to_string()), &f));
            report.hilbert = Some(hilbert_section(&f, max_degree.unwrap_or(default_degree(f.dim()))));
        }
        Command::Homology { fan, max_degree } => {
            report.command = "homology".into();
            let f = parse_fan(&fan)?;
            report.fan = Some(fan_summary(Some(fan.display().to_string()), &f));
            report.homology = Some(homology_section(&f, max_degree.unwrap_or(default_degree(f.dim())))?);
        }
        Command::Alpha { fan, codim } => {
            report.command = "alpha".into();
            let f = parse_fan(&fan)?;
            report.fan = Some(fan_summary(Some(fan.display().to_string()), &f));
            report.alpha = Some(alpha_section(&f, codim)?);
        }
        Command::AssocPrimes { fan, codim } => {
            report.command = "assoc-primes".into();
            let f = parse_fan(&fan)?;
            report.fan = Some(fan_summary(Some(fan.display().to_string()), &f));
            report.associated_primes = Some(associated_primes_section(&f, codim)?);
        }
        Command::Arrangement {
            fan,
            braid,
            essential,
            max_degree,
        } => {
            report.command = "arrangement".into();
            let a = match (fan, braid) {
                (_, Some(n)) if n >= 1 => braid_arrangement(n, essential),
                (_, Some(_)) => return Err(CliError::Usage("--braid needs n >= 1".into())),
                (Some(path), None) => {
                    let f = parse_fan(&path)?;
                    report.fan = Some(fan_summary(Some(path.display().to_string()), &f));
                    defining_arrangement(&f)
                }
                (None, None) => return Err(CliError::Usage("give a fan document or --braid n".into())),
            };
            let k = max_degree.unwrap_or(default_degree(a.ambient_dim()));
            report.arrangement = Some(arrangement_section(&a, k)?);
        }
        Command::Construct { kind, n, output } => {
            report.command = "construct".into();
            let (name, fan) = build_fan(kind, n)?;
            let document = FanDocument::from_fan(Some(name), &fan);
            if let Some(path) = &output {
                let mut text = serde_json::to_string_pretty(&document).expect("document serializes");
                text.push('\n');
                std::fs::write(path, text).map_err(|e| CliError::Io {
                    path: path.clone(),
                    message: e.to_string(),
                })?;
            }
            report.construct = Some(ConstructSection {
                kind: kind.name().into(),
                n,
                output: output.map(|p| p.display().to_string()),
                document,
            });
        }
        Command::VerifyPaper => {
            report.command = "verify-paper".into();
            report.verification = Some(verification_section());
        }
    }
    Ok(report)
}

/// Runs the command line, writing the report to `out` and errors to `err`.
///
/// Exit codes: 0 on success, 1 when a verification criterion fails, 2 on
/// any input error.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    let json = cli.json;
    match execute(cli) {
        Ok(report) => {
            let _ = out.write_all(emit_report(&report, json).as_bytes());
            let failed = report.verification.as_ref().is_some_and(|v| v.iter().any(|c| !c.passed));
            i32::from(failed)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(rays: &str, cones: &str) -> String {
        format!(r#"{{"dim": 3, "rays": {rays}, "maximal_cones": {cones}}}"#)
    }

    #[test]
    fn rational_rays_are_primitivized() {
        let f = parse_fan_str(&doc(r#"[["1/2","0","0"],[0,1,0],["0","0","3"]]"#, "[[0,1,2]]")).unwrap();
        let rays: Vec<Vec<String>> = f.rays().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        assert!(rays.contains(&vec!["1".to_string(), "0".into(), "0".into()]));
        assert!(rays.contains(&vec!["0".to_string(), "0".into(), "1".into()]));
    }

    #[test]
    fn malformed_and_invalid_documents() {
        assert!(matches!(parse_fan_str("{"), Err(CliError::Parse(_))));
        assert!(matches!(
            parse_fan_str(&doc(r#"[["a",0,0],[0,1,0],[0,0,1]]"#, "[[0,1,2]]")),
            Err(CliError::Parse(_))
        ));
        assert!(matches!(
            parse_fan_str(&doc(r#"[["1/0",0,0],[0,1,0],[0,0,1]]"#, "[[0,1,2]]")),
            Err(CliError::Parse(_))
        ));
        let non_pointed = doc("[[1,0,0],[-1,0,0],[0,1,0],[0,0,1]]", "[[0,1,2,3]]");
        assert!(matches!(
            parse_fan_str(&non_pointed),
            Err(CliError::Validation {
                source: FanError::NotPointed(0),
                ..
            })
        ));
    }

    #[test]
    fn documents_round_trip_through_fans() {
        let fan = p2_fan(3);
        let d = FanDocument::from_fan(Some("p2_a3".into()), &fan);
        let text = serde_json::to_string(&d).unwrap();
        assert_eq!(parse_fan_str(&text).unwrap(), fan);
    }

    #[test]
    fn polynomial_text() {
        assert_eq!(poly_text(&[1, 6, 11, 6]), "1 + 6t + 11t^2 + 6t^3");
        assert_eq!(poly_text(&[]), "0");
    }
}
