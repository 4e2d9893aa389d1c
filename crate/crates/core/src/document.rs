//! The problem-document format and the batch command layer.
//!
//! A document is a single JSON object; the grammar is in `docs/FORMAT.md`.
//! [`parse_document`] validates everything (syntax, domain tag, shapes,
//! `∂∂ = 0`, well-definedness of presentations), and
//! [`ProblemDocument::to_canonical_string`] prints the unique canonical text
//! of a document, so `serialize ∘ parse` is the identity on canonical input.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::complexes::{mapping_torus, BasedChainComplex, VanishingOptions};
use crate::error::Error;
use crate::foxfront::{TwistedPresentation, Word};
use crate::grouprings::{parse_rational, Character, CoefficientDomain, Exponent, LaurentPoly, Scalar};
use crate::invertibility::PolyMatrix;

/// Which class of failure a [`DocumentError`] belongs to; each maps to its own exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed JSON or a document that does not fit the schema.
    Parse,
    /// Well-formed input that violates a mathematical or shape constraint.
    Validation,
    /// A configured resource limit (the `τ`-chain cap) was exceeded.
    Resource,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Parse => 2,
            ErrorKind::Validation => 3,
            ErrorKind::Resource => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DocumentError {
    pub kind: ErrorKind,
    pub message: String,
}

impl DocumentError {
    fn parse(message: impl Into<String>) -> Self {
        DocumentError { kind: ErrorKind::Parse, message: message.into() }
    }

    fn validation(message: impl Into<String>) -> Self {
        DocumentError { kind: ErrorKind::Validation, message: message.into() }
    }

    /// Prefixes the message with the document field it concerns.
    fn at(self, field: &str) -> Self {
        DocumentError { message: format!("{field}: {}", self.message), ..self }
    }
}

impl fmt::Display for DocumentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self.kind {
            ErrorKind::Parse => "parse error",
            ErrorKind::Validation => "validation error",
            ErrorKind::Resource => "resource error",
        };
        write!(f, "{label}: {}", self.message)
    }
}

impl std::error::Error for DocumentError {}

impl From<Error> for DocumentError {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::ResourceLimit(_) => ErrorKind::Resource,
            _ => ErrorKind::Validation,
        };
        DocumentError { kind, message: e.to_string() }
    }
}

type DocResult<T> = std::result::Result<T, DocumentError>;

// ---------------------------------------------------------------------------
// Raw schema (what serde sees)

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    domain: String,
    gamma_rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    complex: Option<RawComplex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    presentation: Option<RawPresentation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mapping_torus: Option<RawTorus>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    meridians: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    query_points: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    coeff: String,
    exp: Vec<i64>,
}

type RawPoly = Vec<RawTerm>;
type RawPolyMatrix = Vec<Vec<RawPoly>>;
type RawScalarMatrix = Vec<Vec<String>>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComplex {
    dims: Vec<usize>,
    boundaries: Vec<RawPolyMatrix>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPresentation {
    generators: usize,
    relators: Vec<Vec<i32>>,
    psi: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha: Option<Vec<RawScalarMatrix>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTorus {
    fiber_dims: Vec<usize>,
    #[serde(default)]
    fiber_boundaries: Vec<RawScalarMatrix>,
    monodromy: Vec<RawScalarMatrix>,
}

// ---------------------------------------------------------------------------
// Typed document

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Complex(BasedChainComplex),
    Presentation(TwistedPresentation),
    /// A chain automorphism `monodromy` of a complex `fiber` over `S`.
    MappingTorus {
        fiber: BasedChainComplex,
        monodromy: Vec<PolyMatrix>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemDocument {
    pub domain: CoefficientDomain,
    pub gamma_rank: usize,
    pub payload: Payload,
    pub meridians: Vec<Exponent>,
    pub query_points: Vec<Character>,
}

/// Parses and fully validates a document.
pub fn parse_document(text: &str) -> DocResult<ProblemDocument> {
    let mut de = serde_json::Deserializer::from_str(text);
    let raw: RawDocument = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let location = format!("line {}, column {}", inner.line(), inner.column());
        if path.is_empty() || path == "." {
            DocumentError::parse(format!("{location}: {inner}"))
        } else {
            DocumentError::parse(format!("{location}, field `{path}`: {inner}"))
        }
    })?;
    de.end().map_err(|e| DocumentError::parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    from_raw(raw)
}

fn from_raw(raw: RawDocument) -> DocResult<ProblemDocument> {
    let domain = CoefficientDomain::from_str(&raw.domain).map_err(|e| DocumentError::from(e).at("domain"))?;
    let rank = raw.gamma_rank;
    let payload = match (raw.complex, raw.presentation, raw.mapping_torus) {
        (Some(c), None, None) => Payload::Complex(complex_from_raw(domain, rank, c)?),
        (None, Some(p), None) => Payload::Presentation(presentation_from_raw(domain, rank, p)?),
        (None, None, Some(t)) => {
            if rank != 1 {
                return Err(DocumentError::validation(format!(
                    "gamma_rank: a mapping torus lives over Γ = ℤ, so gamma_rank must be 1, got {rank}"
                )));
            }
            let (fiber, monodromy) = torus_from_raw(domain, t)?;
            Payload::MappingTorus { fiber, monodromy }
        }
        _ => {
            return Err(DocumentError::parse(
                "exactly one of `complex`, `presentation`, `mapping_torus` must be present",
            ))
        }
    };
    let meridians = raw
        .meridians
        .into_iter()
        .enumerate()
        .map(|(i, m)| exponent(m, rank).map_err(|e| e.at(&format!("meridians[{i}]"))))
        .collect::<DocResult<Vec<_>>>()?;
    let query_points = raw
        .query_points
        .iter()
        .enumerate()
        .map(|(i, q)| character(q, rank).map_err(|e| e.at(&format!("query_points[{i}]"))))
        .collect::<DocResult<Vec<_>>>()?;
    let doc = ProblemDocument { domain, gamma_rank: rank, payload, meridians, query_points };
    doc.complex()?;
    Ok(doc)
}

fn exponent(entries: Vec<i64>, rank: usize) -> DocResult<Exponent> {
    if entries.len() != rank {
        return Err(DocumentError::validation(format!("expected {rank} entries, got {}", entries.len())));
    }
    Ok(Exponent::new(entries))
}

/// Parses a point written as `"a/b,c,..."`.
pub fn character(text: &str, rank: usize) -> DocResult<Character> {
    let xi = Character::from_str(text).map_err(DocumentError::from)?;
    if xi.rank() != rank {
        return Err(DocumentError::validation(format!(
            "point {text:?} has {} coordinates, expected {rank}",
            xi.rank()
        )));
    }
    Ok(xi)
}

fn scalar(domain: CoefficientDomain, text: &str) -> DocResult<Scalar> {
    let value = parse_rational(text)?;
    Ok(domain.normalize(value)?)
}

fn poly(domain: CoefficientDomain, rank: usize, raw: RawPoly) -> DocResult<LaurentPoly> {
    let terms = raw
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            let coeff = scalar(domain, &t.coeff).map_err(|e| e.at(&format!("term {i}")))?;
            let exp = exponent(t.exp, rank).map_err(|e| e.at(&format!("term {i} exponent")))?;
            Ok((coeff, exp))
        })
        .collect::<DocResult<Vec<_>>>()?;
    Ok(LaurentPoly::from_terms(domain, rank, terms)?)
}

/// Checks that `rows` is an `r × c` array, naming the matrix in the error.
fn check_shape<T>(name: &str, rows: &[Vec<T>], r: usize, c: usize) -> DocResult<()> {
    if rows.len() != r {
        return Err(DocumentError::validation(format!(
            "shape error in {name}: expected {r}x{c}, found {} rows",
            rows.len()
        )));
    }
    if let Some((i, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != c) {
        return Err(DocumentError::validation(format!(
            "shape error in {name}: expected {r}x{c}, row {} has {} entries",
            i + 1,
            row.len()
        )));
    }
    Ok(())
}

fn poly_matrix(
    domain: CoefficientDomain,
    rank: usize,
    name: &str,
    raw: RawPolyMatrix,
    r: usize,
    c: usize,
) -> DocResult<PolyMatrix> {
    check_shape(name, &raw, r, c)?;
    let mut entries = Vec::with_capacity(r * c);
    for (i, row) in raw.into_iter().enumerate() {
        for (j, p) in row.into_iter().enumerate() {
            entries.push(poly(domain, rank, p).map_err(|e| e.at(&format!("{name}[{}][{}]", i + 1, j + 1)))?);
        }
    }
    Ok(PolyMatrix::new(domain, rank, r, c, entries)?)
}

fn scalar_matrix(
    domain: CoefficientDomain,
    name: &str,
    raw: &RawScalarMatrix,
    r: usize,
    c: usize,
) -> DocResult<PolyMatrix> {
    check_shape(name, raw, r, c)?;
    let mut entries = Vec::with_capacity(r * c);
    for (i, row) in raw.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            let v = scalar(domain, s).map_err(|e| e.at(&format!("{name}[{}][{}]", i + 1, j + 1)))?;
            entries.push(LaurentPoly::constant(domain, 0, v)?);
        }
    }
    Ok(PolyMatrix::new(domain, 0, r, c, entries)?)
}

fn complex_from_raw(domain: CoefficientDomain, rank: usize, raw: RawComplex) -> DocResult<BasedChainComplex> {
    let dims = raw.dims;
    if dims.is_empty() {
        return Err(DocumentError::validation("complex.dims: at least one chain module is required"));
    }
    if raw.boundaries.len() + 1 != dims.len() {
        return Err(DocumentError::validation(format!(
            "complex.boundaries: {} chain modules need {} boundary matrices, got {}",
            dims.len(),
            dims.len() - 1,
            raw.boundaries.len()
        )));
    }
    let boundaries = raw
        .boundaries
        .into_iter()
        .enumerate()
        .map(|(i, m)| poly_matrix(domain, rank, &format!("boundary A{i}"), m, dims[i + 1], dims[i]))
        .collect::<DocResult<Vec<_>>>()?;
    let complex = BasedChainComplex::new(domain, rank, dims, boundaries)?;
    complex.validate().map_err(|v| DocumentError::validation(format!("complex: {v}")))?;
    Ok(complex)
}

fn presentation_from_raw(
    domain: CoefficientDomain,
    rank: usize,
    raw: RawPresentation,
) -> DocResult<TwistedPresentation> {
    let g = raw.generators;
    if raw.psi.len() != g {
        return Err(DocumentError::validation(format!(
            "presentation.psi: expected one image per generator ({g}), got {}",
            raw.psi.len()
        )));
    }
    let psi = raw
        .psi
        .into_iter()
        .enumerate()
        .map(|(i, e)| exponent(e, rank).map_err(|err| err.at(&format!("presentation.psi[{i}]"))))
        .collect::<DocResult<Vec<_>>>()?;
    let relators: Vec<Word> = raw.relators;
    let presentation = match raw.alpha {
        None => TwistedPresentation::untwisted(domain, rank, g, relators, psi)?,
        Some(alpha) => {
            if alpha.len() != g {
                return Err(DocumentError::validation(format!(
                    "presentation.alpha: expected one matrix per generator ({g}), got {}",
                    alpha.len()
                )));
            }
            let k = alpha.first().map_or(0, Vec::len);
            let alpha = alpha
                .iter()
                .enumerate()
                .map(|(i, m)| scalar_matrix(domain, &format!("presentation.alpha[{i}]"), m, k, k))
                .collect::<DocResult<Vec<_>>>()?;
            TwistedPresentation::new(domain, rank, g, relators, psi, alpha)?
        }
    };
    presentation.validate().map_err(|e| DocumentError::from(e).at("presentation"))?;
    Ok(presentation)
}

fn torus_from_raw(domain: CoefficientDomain, raw: RawTorus) -> DocResult<(BasedChainComplex, Vec<PolyMatrix>)> {
    let dims = raw.fiber_dims;
    if dims.is_empty() {
        return Err(DocumentError::validation("mapping_torus.fiber_dims: at least one chain module is required"));
    }
    let boundaries = if raw.fiber_boundaries.is_empty() {
        dims.windows(2).map(|w| PolyMatrix::zero(domain, 0, w[1], w[0])).collect::<crate::Result<Vec<_>>>()?
    } else {
        if raw.fiber_boundaries.len() + 1 != dims.len() {
            return Err(DocumentError::validation(format!(
                "mapping_torus.fiber_boundaries: expected {} matrices, got {}",
                dims.len() - 1,
                raw.fiber_boundaries.len()
            )));
        }
        raw.fiber_boundaries
            .iter()
            .enumerate()
            .map(|(i, m)| scalar_matrix(domain, &format!("fiber boundary d{i}"), m, dims[i + 1], dims[i]))
            .collect::<DocResult<Vec<_>>>()?
    };
    if raw.monodromy.len() != dims.len() {
        return Err(DocumentError::validation(format!(
            "mapping_torus.monodromy: expected one matrix per degree ({}), got {}",
            dims.len(),
            raw.monodromy.len()
        )));
    }
    let monodromy = raw
        .monodromy
        .iter()
        .enumerate()
        .map(|(i, m)| scalar_matrix(domain, &format!("monodromy phi{i}"), m, dims[i], dims[i]))
        .collect::<DocResult<Vec<_>>>()?;
    let fiber = BasedChainComplex::new(domain, 0, dims, boundaries)?;
    fiber.validate().map_err(|v| DocumentError::validation(format!("mapping_torus fiber: {v}")))?;
    Ok((fiber, monodromy))
}

// ---------------------------------------------------------------------------
// Serialization

fn raw_poly(p: &LaurentPoly) -> RawPoly {
    p.terms().map(|(e, c)| RawTerm { coeff: c.to_string(), exp: e.entries().to_vec() }).collect()
}

fn raw_poly_matrix(m: &PolyMatrix) -> RawPolyMatrix {
    (0..m.rows()).map(|r| m.row(r).iter().map(raw_poly).collect()).collect()
}

fn raw_scalar_matrix(m: &PolyMatrix) -> RawScalarMatrix {
    (0..m.rows()).map(|r| m.row(r).iter().map(|p| p.constant_value().to_string()).collect()).collect()
}

fn raw_complex(c: &BasedChainComplex) -> RawComplex {
    RawComplex { dims: c.dims().to_vec(), boundaries: c.boundaries().iter().map(raw_poly_matrix).collect() }
}

fn point_text(xi: &Character) -> String {
    xi.coords().iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

impl ProblemDocument {
    /// A document whose payload is an explicit complex.
    pub fn from_complex(complex: BasedChainComplex) -> Self {
        ProblemDocument {
            domain: complex.domain(),
            gamma_rank: complex.rank(),
            payload: Payload::Complex(complex),
            meridians: Vec::new(),
            query_points: Vec::new(),
        }
    }

    /// The chain complex the payload describes.
    pub fn complex(&self) -> DocResult<BasedChainComplex> {
        match &self.payload {
            Payload::Complex(c) => Ok(c.clone()),
            Payload::Presentation(p) => Ok(p.presentation_complex()?),
            Payload::MappingTorus { fiber, monodromy } => Ok(mapping_torus(fiber, monodromy)?),
        }
    }

    fn to_raw(&self) -> RawDocument {
        let (mut complex, mut presentation, mut torus) = (None, None, None);
        match &self.payload {
            Payload::Complex(c) => complex = Some(raw_complex(c)),
            Payload::Presentation(p) => {
                let trivial = p.k() == 1 && p.alpha().iter().all(|a| a.get(0, 0).is_one());
                presentation = Some(RawPresentation {
                    generators: p.generators(),
                    relators: p.relators().to_vec(),
                    psi: p.psi().iter().map(|e| e.entries().to_vec()).collect(),
                    alpha: (!trivial).then(|| p.alpha().iter().map(raw_scalar_matrix).collect()),
                })
            }
            Payload::MappingTorus { fiber, monodromy } => {
                torus = Some(RawTorus {
                    fiber_dims: fiber.dims().to_vec(),
                    fiber_boundaries: fiber.boundaries().iter().map(raw_scalar_matrix).collect(),
                    monodromy: monodromy.iter().map(raw_scalar_matrix).collect(),
                })
            }
        }
        RawDocument {
            domain: self.domain.to_string(),
            gamma_rank: self.gamma_rank,
            complex,
            presentation,
            mapping_torus: torus,
            meridians: self.meridians.iter().map(|e| e.entries().to_vec()).collect(),
            query_points: self.query_points.iter().map(point_text).collect(),
        }
    }

    /// The canonical text of the document: fixed key order, normalized
    /// coefficients, terms sorted by exponent, and a deterministic layout.
    pub fn to_canonical_string(&self) -> String {
        let value = serde_json::to_value(self.to_raw()).expect("document schema serializes");
        let mut out = String::new();
        write_value(&value, 0, &mut out);
        out.push('\n');
        out
    }
}

const LINE_WIDTH: usize = 100;

fn compact(v: &Value) -> String {
    match v {
        Value::Array(items) => format!("[{}]", items.iter().map(compact).collect::<Vec<_>>().join(", ")),
        Value::Object(map) => format!(
            "{{{}}}",
            map.iter()
                .map(|(k, v)| format!("{}: {}", Value::String(k.clone()), compact(v)))
                .collect::<Vec<_>>()
                .join(", ")
        ),
        scalar => scalar.to_string(),
    }
}

/// Containers that fit within the line width stay on one line; larger ones
/// put one element per line with two-space indentation.
fn write_value(v: &Value, indent: usize, out: &mut String) {
    let flat = compact(v);
    if indent + flat.len() <= LINE_WIDTH {
        out.push_str(&flat);
        return;
    }
    let pad = " ".repeat(indent + 2);
    match v {
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad);
                write_value(item, indent + 2, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&" ".repeat(indent));
            out.push(']');
        }
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(item, indent + 2, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&" ".repeat(indent));
            out.push('}');
        }
        _ => out.push_str(&flat),
    }
}

// ---------------------------------------------------------------------------
// Commands

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Vanish,
    Check,
    Betti,
    Euler,
    Positive,
    Fox,
    Torus,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::Vanish,
        Command::Check,
        Command::Betti,
        Command::Euler,
        Command::Positive,
        Command::Fox,
        Command::Torus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Vanish => "vanish",
            Command::Check => "check",
            Command::Betti => "betti",
            Command::Euler => "euler",
            Command::Positive => "positive",
            Command::Fox => "fox",
            Command::Torus => "torus",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Command::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| format!("unknown command {s:?}"))
    }
}

#[derive(Clone, Debug, Default)]
pub struct CommandOptions {
    pub vanishing: VanishingOptions,
    /// For `check`: probe this point instead of the document's query points.
    pub xi: Option<String>,
}

fn yes_no(v: bool) -> &'static str {
    if v {
        "vanishes"
    } else {
        "nonvanishing"
    }
}

/// Runs one command and returns its report text (always newline-terminated).
pub fn execute_command(cmd: Command, doc: &ProblemDocument, options: &CommandOptions) -> DocResult<String> {
    let opts = &options.vanishing;
    match cmd {
        Command::Vanish => {
            let report = doc.complex()?.vanishing_set(opts)?;
            let set = &report.vanishing_set;
            let mut out =
                format!("rank {}: {} cone(s) from {} tau-chain(s)\n", set.rank(), set.cones().len(), report.tau_chains);
            if set.cones().is_empty() {
                out.push_str("empty\n");
            }
            for (i, cone) in set.cones().iter().enumerate() {
                out.push_str(&format!("cone {}: {cone}\n", i + 1));
            }
            Ok(out)
        }
        Command::Check => {
            let points = match &options.xi {
                Some(text) => vec![character(text, doc.gamma_rank).map_err(|e| e.at("--xi"))?],
                None => doc.query_points.clone(),
            };
            if points.is_empty() {
                return Err(DocumentError::validation("check needs query_points in the document or --xi"));
            }
            let complex = doc.complex()?;
            let set = complex.vanishing_set(opts)?.vanishing_set;
            let mut out = String::new();
            let mut disagreements = 0;
            for xi in &points {
                let by_cones = set.contains_point(xi)?;
                let by_oracle = complex.vanishes_at_with(xi, opts)?;
                let verdict = if by_cones == by_oracle { "agree" } else { "DISAGREE" };
                disagreements += usize::from(by_cones != by_oracle);
                out.push_str(&format!(
                    "xi {xi}: cones {}, oracle {}, {verdict}\n",
                    yes_no(by_cones),
                    yes_no(by_oracle)
                ));
            }
            out.push_str(&format!("{} point(s), {disagreements} disagreement(s)\n", points.len()));
            Ok(out)
        }
        Command::Betti => {
            let betti = doc.complex()?.betti_numbers()?;
            Ok(format!("{}\n", betti.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")))
        }
        Command::Euler => Ok(format!("{}\n", doc.complex()?.euler_characteristic())),
        Command::Positive => {
            if doc.meridians.is_empty() {
                return Err(DocumentError::validation("positive needs meridians in the document"));
            }
            let verdict = doc.complex()?.verify_positive_vanishing(&doc.meridians, opts)?;
            Ok(format!("{verdict}\n"))
        }
        Command::Fox => match doc.payload {
            Payload::Presentation(_) => Ok(derived_document(doc)?.to_canonical_string()),
            _ => Err(DocumentError::validation("fox needs a `presentation` payload")),
        },
        Command::Torus => match doc.payload {
            Payload::MappingTorus { .. } => Ok(derived_document(doc)?.to_canonical_string()),
            _ => Err(DocumentError::validation("torus needs a `mapping_torus` payload")),
        },
    }
}

/// The constructed complex as a document, keeping meridians and query points.
fn derived_document(doc: &ProblemDocument) -> DocResult<ProblemDocument> {
    Ok(ProblemDocument { payload: Payload::Complex(doc.complex()?), ..doc.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
  "domain": "Z",
  "gamma_rank": 1,
  "complex": {"dims": [1, 1], "boundaries": [[[[{"coeff": "1", "exp": [0]}, {"coeff": "1", "exp": [1]}]]]]}
}
"#;

    const TREFOIL: &str = r#"{
  "domain": "Z",
  "gamma_rank": 1,
  "presentation": {"generators": 2, "relators": [[1, 2, 1, -2, -1, -2]], "psi": [[1], [1]]},
  "meridians": [[1]]
}
"#;

    fn run(cmd: Command, text: &str) -> DocResult<String> {
        execute_command(cmd, &parse_document(text)?, &CommandOptions::default())
    }

    #[test]
    fn minimal_round_trip() {
        let doc = parse_document(MINIMAL).unwrap();
        assert_eq!(doc.to_canonical_string(), MINIMAL);
        assert_eq!(parse_document(TREFOIL).unwrap().to_canonical_string(), TREFOIL);
    }

    #[test]
    fn canonicalization_normalizes() {
        let messy = r#"{"domain":"Q","gamma_rank":1,"complex":{"dims":[1,1],"boundaries":[[[[
            {"coeff":"2/4","exp":[1]},{"coeff":"3","exp":[0]},{"coeff":"1","exp":[1]}]]]]},
            "query_points":["2/4"]}"#;
        let canonical = parse_document(messy).unwrap().to_canonical_string();
        assert!(canonical.contains(r#"[{"coeff": "3", "exp": [0]}, {"coeff": "3/2", "exp": [1]}]"#), "{canonical}");
        assert!(canonical.contains(r#""query_points": ["1/2"]"#), "{canonical}");
        assert_eq!(parse_document(&canonical).unwrap().to_canonical_string(), canonical);
    }

    #[test]
    fn rejects_composite_modulus() {
        let err = parse_document(&MINIMAL.replace("\"Z\"", "\"GF(4)\"")).unwrap_err();
        assert_eq!(err.kind, ErrorKind::Validation);
        assert!(err.message.contains("modulus must be prime"), "{err}");
        let err = parse_document(&MINIMAL.replace("\"Z\"", "\"R\"")).unwrap_err();
        assert!(err.message.starts_with("domain:"), "{err}");
    }

    #[test]
    fn shape_error_names_the_matrix() {
        let err = parse_document(&MINIMAL.replace("[1, 1]", "[1, 2]")).unwrap_err();
        assert_eq!(err.kind, ErrorKind::Validation);
        assert!(err.message.contains("boundary A0"), "{err}");
    }

    #[test]
    fn syntax_errors_carry_locations() {
        let err = parse_document("{\"domain\": \"Z\",\n \"gamma_rank\": -1}").unwrap_err();
        assert_eq!(err.kind, ErrorKind::Parse);
        assert!(err.message.contains("line 2") && err.message.contains("gamma_rank"), "{err}");
        let err = parse_document(&MINIMAL.replace("\"coeff\": \"1\", \"exp\": [0]", "\"coef\": \"1\", \"exp\": [0]"))
            .unwrap_err();
        assert_eq!(err.kind, ErrorKind::Parse);
        assert!(err.message.contains("complex.boundaries[0][0][0][0]"), "{err}");
        let err = parse_document(r#"{"domain": "Z", "gamma_rank": 1}"#).unwrap_err();
        assert_eq!(err.kind, ErrorKind::Parse);
    }

    #[test]
    fn commands_on_small_documents() {
        let two_plus_t = MINIMAL.replace(r#"{"coeff": "1", "exp": [0]}"#, r#"{"coeff": "2", "exp": [0]}"#);
        assert_eq!(
            run(Command::Vanish, &two_plus_t).unwrap(),
            "rank 1: 1 cone(s) from 1 tau-chain(s)\ncone 1: (1) > 0\n"
        );
        assert_eq!(run(Command::Euler, &two_plus_t).unwrap(), "0\n");
        assert_eq!(run(Command::Betti, &two_plus_t).unwrap(), "0 0\n");
        assert_eq!(run(Command::Positive, TREFOIL).unwrap(), "Vanishes\n");
        assert_eq!(run(Command::Positive, MINIMAL).unwrap_err().kind, ErrorKind::Validation);
        assert_eq!(run(Command::Torus, MINIMAL).unwrap_err().kind, ErrorKind::Validation);

        let options = CommandOptions { xi: Some("-1".into()), ..Default::default() };
        let report = execute_command(Command::Check, &parse_document(&two_plus_t).unwrap(), &options).unwrap();
        assert_eq!(report, "xi (-1): cones nonvanishing, oracle nonvanishing, agree\n1 point(s), 0 disagreement(s)\n");

        let fox = run(Command::Fox, TREFOIL).unwrap();
        let derived = parse_document(&fox).unwrap();
        assert_eq!(derived.complex().unwrap().dims(), &[1, 2, 1]);
        assert_eq!(derived.to_canonical_string(), fox);
        assert_eq!(run(Command::Positive, &fox).unwrap(), "Vanishes\n");
    }

    #[test]
    fn tau_cap_is_a_resource_error() {
        let options = CommandOptions { vanishing: VanishingOptions { tau_cap: 0, jobs: 1 }, xi: None };
        let err = execute_command(Command::Vanish, &parse_document(MINIMAL).unwrap(), &options).unwrap_err();
        assert_eq!(err.kind, ErrorKind::Resource);
    }

    #[test]
    fn mapping_torus_documents() {
        let text = r#"{"domain": "Z", "gamma_rank": 1,
            "mapping_torus": {"fiber_dims": [2], "monodromy": [[["2", "1"], ["1", "1"]]]}}"#;
        let torus = run(Command::Torus, text).unwrap();
        assert!(torus.contains("\"dims\": [2, 2]"), "{torus}");
        assert_eq!(
            run(Command::Vanish, text).unwrap(),
            "rank 1: 2 cone(s) from 1 tau-chain(s)\ncone 1: (-1) > 0\ncone 2: (1) > 0\n"
        );
        let singular = text.replace("\"2\", \"1\"", "\"2\", \"2\"");
        assert_eq!(run(Command::Torus, &singular).unwrap_err().kind, ErrorKind::Validation);
        let wrong_rank = text.replace("\"gamma_rank\": 1", "\"gamma_rank\": 2");
        assert_eq!(parse_document(&wrong_rank).unwrap_err().kind, ErrorKind::Validation);
    }
}
