//! Line-oriented text description of a matrix-product code and its
//! constituent decoders.
//!
//! ```text
//! # comment
//! field p=2 m=4
//! constituent rs k=10 v=4
//! constituent rs k=4 v=4
//! matrix rows=2 cols=2
//! row 1, 1
//! row 0, 1
//! ```
//!
//! Constituents are `rs k=<k> [offset=<b>]` or `cyclic gen=<poly>`, with
//! optional `v=<multiplicity>`, `decoder=gs|brute` and `tau=<radius>` (brute
//! force only). Matrix entries are field elements, or polynomials (any entry
//! mentioning `x`), which selects the polynomial-unit construction over
//! `F_q[x]/(x^m - 1)`. An optional `distance d=<d>` line records the true
//! minimum distance for unique decoding. `field` also accepts
//! `modulus=c0,c1,...` (coefficients low to high).

use std::fmt;
use std::sync::Arc;

use crate::constituent::{BruteForceDecoder, ListDecoder};
use crate::decoder::{DecodeOptions, DecodeOutput, DecoderSpec, MatrixProductCode};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linear_code::{LinearCode, DEFAULT_ENUMERATION_CAP};
use crate::matrix_product::{BlockWord, ScalarMatrix, ScalarMpc};
use crate::poly::{Polynomial, RingElement};
use crate::reed_solomon::{root_window, GsDecoder, RsCode};
use crate::unit_mpc::{DStar, PolyMatrix, UnitMpc, DEFAULT_MODULE_CAP};

/// One constituent code with its decoder.
#[derive(Clone)]
pub struct Constituent {
    pub code: LinearCode,
    pub decoder: Arc<dyn ListDecoder>,
    /// Minimum distance, from the Reed-Solomon formula or brute force.
    pub distance: usize,
}

impl fmt::Debug for Constituent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Constituent({}, d={})", self.decoder.describe(), self.distance)
    }
}

#[derive(Clone, Debug)]
pub enum MatrixEntries {
    Scalar(ScalarMatrix),
    Poly(PolyMatrix),
}

#[derive(Clone, Debug)]
pub struct CodeSpec {
    pub field: Field,
    pub constituents: Vec<Constituent>,
    pub matrix: MatrixEntries,
    /// True minimum distance, when declared.
    pub distance: Option<usize>,
}

/// A ready-to-use decoder over either kind of matrix.
pub enum AnyDecoder {
    Scalar(DecoderSpec<ScalarMpc>),
    Unit(DecoderSpec<UnitMpc>),
}

macro_rules! dispatch {
    ($self:expr, $d:ident => $e:expr) => {
        match $self {
            AnyDecoder::Scalar($d) => $e,
            AnyDecoder::Unit($d) => $e,
        }
    };
}

/// Splits `key=value` items where values may contain spaces, e.g.
/// `gen=x^2 + a v=2` gives `[("gen", "x^2 + a"), ("v", "2")]`.
fn key_values(tokens: &[&str], line: usize) -> Result<Vec<(String, String)>> {
    let mut out: Vec<(String, String)> = Vec::new();
    for tok in tokens {
        match tok.split_once('=') {
            Some((k, v)) if !k.is_empty() && k.chars().all(|c| c.is_ascii_alphabetic() || c == '_') => {
                out.push((k.to_string(), v.to_string()));
            }
            _ => match out.last_mut() {
                Some((_, v)) => {
                    v.push(' ');
                    v.push_str(tok);
                }
                None => return Err(parse_err(line, format!("expected key=value, found '{tok}'"))),
            },
        }
    }
    Ok(out)
}

fn parse_err(line: usize, msg: impl fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

struct Keys {
    items: Vec<(String, String)>,
    line: usize,
}

impl Keys {
    fn get(&self, key: &str) -> Option<&str> {
        self.items.iter().find(|(k, _)| k == key).map(|(_, v)| v.trim())
    }

    fn require(&self, key: &str) -> Result<&str> {
        self.get(key).ok_or_else(|| parse_err(self.line, format!("missing {key}=")))
    }

    fn number<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.get(key)
            .map(|v| v.parse::<T>().map_err(|_| parse_err(self.line, format!("bad number for {key}: '{v}'"))))
            .transpose()
    }

    fn check_known(&self, known: &[&str]) -> Result<()> {
        match self.items.iter().find(|(k, _)| !known.contains(&k.as_str())) {
            Some((k, _)) => Err(parse_err(self.line, format!("unknown key '{k}'"))),
            None => Ok(()),
        }
    }
}

impl CodeSpec {
    pub fn parse(text: &str) -> Result<CodeSpec> {
        Self::parse_with_modulus(text, None)
    }

    /// Like [`CodeSpec::parse`], with the field modulus overridden.
    pub fn parse_with_modulus(text: &str, modulus: Option<&[u32]>) -> Result<CodeSpec> {
        let mut field: Option<Field> = None;
        let mut constituents = Vec::new();
        let mut shape: Option<(usize, usize, usize)> = None;
        let mut rows: Vec<(usize, Vec<String>)> = Vec::new();
        let mut distance = None;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap().trim();
            if content.is_empty() {
                continue;
            }
            let (head, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
            match head {
                "field" => {
                    if field.is_some() {
                        return Err(parse_err(line, "duplicate field line"));
                    }
                    let tokens: Vec<&str> = rest.split_whitespace().collect();
                    let keys = Keys { items: key_values(&tokens, line)?, line };
                    keys.check_known(&["p", "m", "modulus"])?;
                    let p = keys.number::<u32>("p")?.ok_or_else(|| parse_err(line, "missing p="))?;
                    let m = keys.number::<u32>("m")?.unwrap_or(1);
                    let declared = keys
                        .get("modulus")
                        .map(|v| parse_u32_list(v, line))
                        .transpose()?;
                    let chosen = modulus.map(<[u32]>::to_vec).or(declared);
                    field = Some(Field::new(p, m, chosen.as_deref())?);
                }
                "constituent" => {
                    let f = field.as_ref().ok_or_else(|| parse_err(line, "constituent before field"))?;
                    constituents.push(parse_constituent(f, rest, line)?);
                }
                "matrix" => {
                    if shape.is_some() {
                        return Err(parse_err(line, "duplicate matrix line"));
                    }
                    let tokens: Vec<&str> = rest.split_whitespace().collect();
                    let keys = Keys { items: key_values(&tokens, line)?, line };
                    keys.check_known(&["rows", "cols"])?;
                    let r = keys.number::<usize>("rows")?.ok_or_else(|| parse_err(line, "missing rows="))?;
                    let c = keys.number::<usize>("cols")?.ok_or_else(|| parse_err(line, "missing cols="))?;
                    shape = Some((r, c, line));
                }
                "row" => {
                    if shape.is_none() {
                        return Err(parse_err(line, "row before matrix"));
                    }
                    rows.push((line, rest.split(',').map(|t| t.trim().to_string()).collect()));
                }
                "distance" => {
                    let tokens: Vec<&str> = rest.split_whitespace().collect();
                    let keys = Keys { items: key_values(&tokens, line)?, line };
                    keys.check_known(&["d"])?;
                    distance = keys.number::<usize>("d")?;
                }
                other => return Err(parse_err(line, format!("unknown directive '{other}'"))),
            }
        }

        let field = field.ok_or_else(|| Error::Parse("missing field line".into()))?;
        if constituents.is_empty() {
            return Err(Error::Parse("no constituent lines".into()));
        }
        let (nr, nc, mline) = shape.ok_or_else(|| Error::Parse("missing matrix line".into()))?;
        if rows.len() != nr {
            return Err(parse_err(mline, format!("matrix declares {nr} rows, found {}", rows.len())));
        }
        if let Some((line, r)) = rows.iter().find(|(_, r)| r.len() != nc) {
            return Err(parse_err(*line, format!("expected {nc} entries, found {}", r.len())));
        }
        let poly = rows.iter().any(|(_, r)| r.iter().any(|t| t.contains('x')));
        let matrix = if poly {
            let m = constituents[0].code.length();
            let entries = rows
                .iter()
                .map(|(line, r)| {
                    r.iter()
                        .map(|t| RingElement::parse(&field, m, t).map_err(|e| parse_err(*line, e)))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            MatrixEntries::Poly(PolyMatrix::new(entries)?)
        } else {
            let entries = rows
                .iter()
                .map(|(line, r)| {
                    r.iter()
                        .map(|t| field.parse_element(t).map_err(|e| parse_err(*line, e)))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            MatrixEntries::Scalar(ScalarMatrix::new(entries)?)
        };
        Ok(CodeSpec { field, constituents, matrix, distance })
    }

    /// Constructs the code and decoder, checking nestedness and the
    /// column-minor condition.
    pub fn build(&self) -> Result<AnyDecoder> {
        let codes: Vec<LinearCode> = self.constituents.iter().map(|c| c.code.clone()).collect();
        let decoders: Vec<Arc<dyn ListDecoder>> =
            self.constituents.iter().map(|c| c.decoder.clone()).collect();
        Ok(match &self.matrix {
            MatrixEntries::Scalar(a) => {
                AnyDecoder::Scalar(DecoderSpec::new(ScalarMpc::new(codes, a.clone())?, decoders)?)
            }
            MatrixEntries::Poly(a) => {
                AnyDecoder::Unit(DecoderSpec::new(UnitMpc::new(codes, a.clone())?, decoders)?)
            }
        })
    }

    pub fn constituent_distances(&self) -> Vec<usize> {
        self.constituents.iter().map(|c| c.distance).collect()
    }
}

fn parse_u32_list(text: &str, line: usize) -> Result<Vec<u32>> {
    text.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| parse_err(line, format!("bad coefficient '{t}'"))))
        .collect()
}

fn parse_constituent(field: &Field, rest: &str, line: usize) -> Result<Constituent> {
    let tokens: Vec<&str> = rest.split_whitespace().collect();
    let (kind, tail) = tokens.split_first().ok_or_else(|| parse_err(line, "missing constituent kind"))?;
    let keys = Keys { items: key_values(tail, line)?, line };
    let v = keys.number::<usize>("v")?.unwrap_or(1);
    let tau = keys.number::<usize>("tau")?;
    let brute = match keys.get("decoder") {
        None | Some("gs") => false,
        Some("brute") => true,
        Some(other) => return Err(parse_err(line, format!("unknown decoder '{other}'"))),
    };
    let rs = match *kind {
        "rs" => {
            keys.check_known(&["k", "offset", "v", "decoder", "tau"])?;
            let k = keys.number::<usize>("k")?.ok_or_else(|| parse_err(line, "missing k="))?;
            let offset = keys.number::<usize>("offset")?.unwrap_or(1);
            Some(RsCode::with_offset(field, k, offset)?)
        }
        "cyclic" => {
            keys.check_known(&["gen", "n", "v", "decoder", "tau"])?;
            let g = Polynomial::parse(field, keys.require("gen")?).map_err(|e| parse_err(line, e))?;
            let n = keys.number::<usize>("n")?.unwrap_or(field.order() as usize - 1);
            if n == field.order() as usize - 1 && root_window(&g).is_some() {
                Some(RsCode::from_generator_poly(&g)?)
            } else {
                if !brute {
                    return Err(parse_err(
                        line,
                        format!("{g} is not a Reed-Solomon generator of length {n}; use decoder=brute"),
                    ));
                }
                let code = LinearCode::cyclic(&g, n)?;
                return brute_constituent(code, tau);
            }
        }
        other => return Err(parse_err(line, format!("unknown constituent kind '{other}'"))),
    };
    let rs = rs.unwrap();
    if brute {
        return brute_constituent(rs.linear_code().clone(), tau);
    }
    if tau.is_some() {
        return Err(parse_err(line, "tau= applies to decoder=brute only; use v= for gs"));
    }
    let distance = rs.min_distance();
    let code = rs.linear_code().clone();
    let dec = GsDecoder::new(rs, v).map_err(|e| parse_err(line, e))?;
    Ok(Constituent { code, decoder: Arc::new(dec), distance })
}

fn brute_constituent(code: LinearCode, tau: Option<usize>) -> Result<Constituent> {
    let distance = code.min_distance_bruteforce(DEFAULT_ENUMERATION_CAP)?;
    let tau = tau.unwrap_or((distance - 1) / 2);
    let dec = BruteForceDecoder::new(code.clone(), tau);
    Ok(Constituent { code, decoder: Arc::new(dec), distance })
}

/// Where a reported minimum distance comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DistanceInfo {
    /// `min (l - i + 1) d_i`, exact for nested constituents and a matrix
    /// that is non-singular by columns.
    NestedFormula(usize),
    /// Declared in the spec.
    Declared(usize),
    /// Only the lower bound `d*` is known.
    LowerBound(DStar),
}

impl DistanceInfo {
    pub fn exact(&self) -> Option<usize> {
        match self {
            DistanceInfo::NestedFormula(d) | DistanceInfo::Declared(d) => Some(*d),
            DistanceInfo::LowerBound(_) => None,
        }
    }
}

impl AnyDecoder {
    pub fn field(&self) -> &Field {
        dispatch!(self, d => d.code().field())
    }

    pub fn length(&self) -> usize {
        dispatch!(self, d => d.code().length())
    }

    pub fn dimension(&self) -> usize {
        dispatch!(self, d => d.code().dimension())
    }

    pub fn num_blocks(&self) -> usize {
        dispatch!(self, d => d.code().num_blocks())
    }

    pub fn block_len(&self) -> usize {
        dispatch!(self, d => d.code().block_len())
    }

    pub fn constituents(&self) -> &[LinearCode] {
        dispatch!(self, d => d.code().constituents())
    }

    pub fn decoders(&self) -> &[Arc<dyn ListDecoder>] {
        dispatch!(self, d => d.decoders())
    }

    pub fn taus(&self) -> Vec<usize> {
        dispatch!(self, d => d.taus())
    }

    pub fn tau(&self) -> usize {
        dispatch!(self, d => d.tau())
    }

    pub fn tau_bound(&self) -> usize {
        dispatch!(self, d => d.tau_bound())
    }

    pub fn branch_cap(&self) -> Option<usize> {
        dispatch!(self, d => d.branch_cap())
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, AnyDecoder::Unit(_))
    }

    pub fn with_tau(self, tau: usize) -> AnyDecoder {
        match self {
            AnyDecoder::Scalar(d) => AnyDecoder::Scalar(d.with_tau(tau)),
            AnyDecoder::Unit(d) => AnyDecoder::Unit(d.with_tau(tau)),
        }
    }

    pub fn encode_flat(&self, message: &[FieldElement]) -> Result<BlockWord> {
        dispatch!(self, d => d.code().encode_flat(message))
    }

    pub fn list_decode(&self, received: &BlockWord, opts: DecodeOptions) -> Result<DecodeOutput> {
        dispatch!(self, d => d.list_decode(received, opts))
    }

    pub fn unique_decode(&self, received: &BlockWord, distance: usize) -> Result<Option<BlockWord>> {
        dispatch!(self, d => d.unique_decode(received, distance))
    }

    /// The best distance information available without brute force.
    pub fn distance_info(&self, spec: &CodeSpec) -> Result<DistanceInfo> {
        if let Some(d) = spec.distance {
            return Ok(DistanceInfo::Declared(d));
        }
        let ds = spec.constituent_distances();
        match self {
            AnyDecoder::Scalar(d) => Ok(DistanceInfo::NestedFormula(d.code().distance_nested_nsc(&ds)?)),
            AnyDecoder::Unit(d) => Ok(DistanceInfo::LowerBound(d.code().d_star(&ds, DEFAULT_MODULE_CAP)?)),
        }
    }

    /// Generator matrix of the full code as a flat linear code.
    pub fn to_linear_code(&self) -> Result<LinearCode> {
        let k = self.dimension();
        let f = self.field().clone();
        let rows = (0..k)
            .map(|i| {
                let mut msg = vec![FieldElement::ZERO; k];
                msg[i] = FieldElement::ONE;
                self.encode_flat(&msg).map(|w| w.to_flat())
            })
            .collect::<Result<Vec<_>>>()?;
        LinearCode::new(&f, rows)
    }
}
