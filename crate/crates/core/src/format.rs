//! Line-oriented description files for algebras, pairs and Z-forms.
//!
//! One grammar covers all three kinds; see `docs/formats.md`. A file is a
//! sequence of lines of the forms
//!
//! ```text
//! # comment
//! ring: Z
//! even: a, b
//! odd: e, f
//! [e,f] = a + b
//! e^<2> = 0
//! rank: 2
//! weight e = (1,-1)
//! divided: E, F
//! cartan: h
//! ```

use std::sync::Arc;

use thiserror::Error;

use crate::chevalley::{ChevalleyError, ZFormSpec};
use crate::coeff::{parse_scalar, CoeffError, CoeffRing, Scalar};
use crate::hcp::{HarishChandraPair, HcpError};
use crate::lie::{LieError, LieSuperAlgebra, TwoOperation};
use crate::superlin::LinComb;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `{0}:` line")]
    Missing(&'static str),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Hcp(#[from] HcpError),
    #[error(transparent)]
    Chevalley(#[from] ChevalleyError),
}

type Terms = Vec<(Scalar, String)>;

/// The parsed contents of a description file, before any validation of
/// the algebra itself.
#[derive(Debug, Clone, Default)]
pub struct Description {
    pub ring: Option<CoeffRing>,
    pub even: Vec<String>,
    pub odd: Vec<String>,
    pub brackets: Vec<(String, String, Terms)>,
    pub squares: Vec<(String, Terms)>,
    pub rank: Option<usize>,
    pub weights: Vec<(String, Vec<i64>)>,
    pub divided: Vec<String>,
    pub cartan: Vec<String>,
}

fn names(s: &str) -> Vec<String> {
    s.split(',').map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect()
}

/// `c1*b1 + c2*b2 - b3`, or `0`.
fn parse_terms(ring: &CoeffRing, s: &str) -> Result<Terms, String> {
    let s = s.trim();
    if s == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut rest = s;
    let mut first = true;
    while !rest.is_empty() {
        let (neg, body) = match rest.chars().next() {
            Some('+') if !first => (false, rest[1..].trim_start()),
            Some('-') => (true, rest[1..].trim_start()),
            _ if first => (false, rest),
            _ => return Err(format!("expected + or - before `{rest}`")),
        };
        first = false;
        if body.is_empty() {
            return Err(format!("dangling sign in `{s}`"));
        }
        let end = body[1..].find(['+', '-']).map(|i| i + 1).unwrap_or(body.len());
        let term = body[..end].trim();
        rest = body[end..].trim_start();
        let (coeff, name) = match term.split_once('*') {
            Some((c, n)) => (parse_scalar(ring, c).map_err(|e| e.to_string())?, n.trim()),
            None => (ring.one(), term),
        };
        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(format!("bad term `{term}`"));
        }
        out.push((ring.signed(neg, coeff), name.to_string()));
    }
    Ok(out)
}

fn parse_tuple(s: &str) -> Result<Vec<i64>, String> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| format!("expected (w1,...,wr), got `{s}`"))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(|t| t.trim().parse::<i64>().map_err(|_| format!("bad weight `{t}`"))).collect()
}

impl Description {
    pub fn parse(text: &str) -> Result<Description, FormatError> {
        let mut d = Description::default();
        let mut deferred = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let err = |msg: String| FormatError::Syntax { line: line_no, msg };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some((key, val)) = line.split_once(':').filter(|(k, _)| !k.contains(['[', '='])) {
                match key.trim() {
                    "ring" => d.ring = Some(val.trim().parse().map_err(|e: CoeffError| err(e.to_string()))?),
                    "even" => d.even = names(val),
                    "odd" => d.odd = names(val),
                    "rank" => d.rank = Some(val.trim().parse().map_err(|_| err(format!("bad rank `{}`", val.trim())))?),
                    "divided" => d.divided = names(val),
                    "cartan" => d.cartan = names(val),
                    other => return Err(err(format!("unknown header `{other}`"))),
                }
            } else {
                // coefficients need the ring, which may be declared later
                deferred.push((line_no, line.to_string()));
            }
        }
        let ring = d.ring.clone().ok_or(FormatError::Missing("ring"))?;
        for (line_no, line) in deferred {
            let err = |msg: String| FormatError::Syntax { line: line_no, msg };
            let (lhs, rhs) = line.split_once('=').ok_or_else(|| err(format!("cannot read `{line}`")))?;
            let lhs = lhs.trim();
            if let Some(pair) = lhs.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
                let (z, w) = pair.split_once(',').ok_or_else(|| err(format!("bad bracket `{lhs}`")))?;
                d.brackets.push((z.trim().into(), w.trim().into(), parse_terms(&ring, rhs).map_err(err)?));
            } else if let Some(x) = lhs.strip_suffix("^<2>") {
                d.squares.push((x.trim().into(), parse_terms(&ring, rhs).map_err(err)?));
            } else if let Some(x) = lhs.strip_prefix("weight ") {
                d.weights.push((x.trim().into(), parse_tuple(rhs).map_err(err)?));
            } else {
                return Err(err(format!("cannot read `{line}`")));
            }
        }
        Ok(d)
    }

    pub fn ring(&self) -> &CoeffRing {
        self.ring.as_ref().expect("parse requires a ring line")
    }

    fn index(&self, name: &str) -> Result<usize, FormatError> {
        self.even
            .iter()
            .chain(&self.odd)
            .position(|n| n == name)
            .ok_or_else(|| FormatError::UnknownSymbol(name.into()))
    }

    fn vector(&self, terms: &Terms) -> Result<LinComb<usize>, FormatError> {
        let mut v = LinComb::zero();
        for (c, n) in terms {
            v.add_term(self.ring(), self.index(n)?, c.clone());
        }
        Ok(v)
    }

    pub fn lie(&self) -> Result<LieSuperAlgebra, FormatError> {
        let entries = self
            .brackets
            .iter()
            .map(|(z, w, t)| Ok((self.index(z)?, self.index(w)?, self.vector(t)?)))
            .collect::<Result<Vec<_>, FormatError>>()?;
        Ok(LieSuperAlgebra::from_table(self.ring().clone(), &self.even, &self.odd, entries)?)
    }

    /// `None` when the file has no `^<2>` lines; unlisted squares are zero.
    pub fn two_operation(&self, g: &LieSuperAlgebra) -> Result<Option<TwoOperation>, FormatError> {
        if self.squares.is_empty() {
            return Ok(None);
        }
        let mut q = TwoOperation::zero(self.odd.len());
        for (x, t) in &self.squares {
            let i = self.index(x)?;
            if i < self.even.len() {
                return Err(LieError::TwoOperationShape(x.clone()).into());
            }
            q.values[i - self.even.len()] = self.vector(t)?;
        }
        q.validate(g)?;
        Ok(Some(q))
    }

    pub fn pair(&self) -> Result<HarishChandraPair, FormatError> {
        let g = self.lie()?;
        if let Some(r) = self.rank {
            if r != g.n_even() {
                return Err(HcpError::WeightShape { rank: r, odd: g.n_odd() }.into());
            }
        }
        let q = self.two_operation(&g)?;
        let mut weights = vec![None; g.n_odd()];
        for (x, w) in &self.weights {
            let i = self.index(x)?;
            if i < g.n_even() || weights[i - g.n_even()].replace(w.clone()).is_some() {
                return Err(HcpError::WeightShape { rank: g.n_even(), odd: g.n_odd() }.into());
            }
        }
        let weights = weights
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or(HcpError::WeightShape { rank: g.n_even(), odd: g.n_odd() })?;
        Ok(HarishChandraPair::new(Arc::new(g), q, weights)?)
    }

    pub fn zform(&self) -> Result<ZFormSpec, FormatError> {
        let g = self.lie()?;
        let q = self.two_operation(&g)?;
        Ok(ZFormSpec::new(Arc::new(g), q, &self.divided, &self.cartan)?)
    }
}
