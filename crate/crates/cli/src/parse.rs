//! Text formats: monomial ideals, rational lists, sequence descriptors and
//! approximation sequences.
//!
//! Parsing is two-phase. Ideals are first scanned into variable/exponent
//! lists, then resolved against the dimension shared by every object of one
//! invocation (see [`DimContext`]).

use std::str::FromStr;

use vallab::{ApproxSeq, GradedSeq, MonomialIdeal, Rational, Sequence, WeightVector};

use crate::CliError;

/// A variable name: `x`, `y`, `z` or `x1`, `x2`, ... (stored 0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Letter(usize),
    Indexed(usize),
}

impl Var {
    pub fn index(self) -> usize {
        match self {
            Var::Letter(i) | Var::Indexed(i) => i,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Letters,
    Indexed,
}

/// An ideal before its dimension is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScannedIdeal {
    monomials: Vec<Vec<(Var, u32)>>,
    style: Option<Style>,
}

impl ScannedIdeal {
    /// Smallest dimension containing every variable mentioned.
    pub fn min_dim(&self) -> usize {
        self.monomials
            .iter()
            .flatten()
            .map(|(v, _)| v.index() + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn style(&self) -> Option<Style> {
        self.style
    }

    pub fn resolve(&self, dim: usize) -> Result<MonomialIdeal, CliError> {
        if self.min_dim() > dim {
            return Err(CliError::Domain(format!(
                "ideal uses {} variables but the dimension is {dim}",
                self.min_dim()
            )));
        }
        let gens = self.monomials.iter().map(|m| {
            let mut e = vec![0u32; dim];
            for (v, k) in m {
                e[v.index()] += k;
            }
            e
        });
        Ok(MonomialIdeal::new(dim, gens)?)
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    base: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, base: usize) -> Self {
        Cursor { text, pos: 0, base }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.text.len()
    }

    fn error(&self, message: impl Into<String>) -> CliError {
        CliError::Parse {
            offset: self.base + self.pos,
            message: message.into(),
        }
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        &self.text[start..self.pos]
    }

    fn number(&mut self) -> Result<u32, CliError> {
        let at = self.pos;
        let d = self.digits();
        if d.is_empty() {
            return Err(self.error("expected a nonnegative integer"));
        }
        d.parse().map_err(|_| CliError::Parse {
            offset: self.base + at,
            message: format!("integer {d} is too large"),
        })
    }
}

fn scan_var(cur: &mut Cursor) -> Result<Var, CliError> {
    let at = cur.pos;
    let letter = match cur.peek() {
        Some(c @ ('x' | 'y' | 'z')) => c,
        _ => return Err(cur.error("expected a variable (x, y, z or x1, x2, ...)")),
    };
    cur.bump();
    let digits = cur.digits();
    if digits.is_empty() {
        return Ok(Var::Letter(match letter {
            'x' => 0,
            'y' => 1,
            _ => 2,
        }));
    }
    let bad = || CliError::Parse {
        offset: cur.base + at,
        message: format!("invalid variable {letter}{digits}"),
    };
    if letter != 'x' {
        return Err(bad());
    }
    match digits.parse::<usize>() {
        Ok(i) if i >= 1 => Ok(Var::Indexed(i - 1)),
        _ => Err(bad()),
    }
}

fn scan_monomial(cur: &mut Cursor) -> Result<Vec<(Var, u32)>, CliError> {
    if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
        let at = cur.pos;
        return match cur.number()? {
            1 => Ok(vec![]),
            _ => Err(CliError::Parse {
                offset: cur.base + at,
                message: "the only constant allowed is 1".into(),
            }),
        };
    }
    let mut factors = Vec::new();
    loop {
        cur.skip_ws();
        let var = scan_var(cur)?;
        cur.skip_ws();
        let mut exp = 1;
        if cur.eat('^') {
            cur.skip_ws();
            if cur.peek() == Some('-') {
                return Err(cur.error("exponents must be nonnegative"));
            }
            exp = cur.number()?;
        }
        factors.push((var, exp));
        cur.skip_ws();
        if !cur.eat('*') {
            return Ok(factors);
        }
    }
}

/// Scans a comma-separated monomial list; `base` is added to error offsets.
pub fn scan_ideal(text: &str, base: usize) -> Result<ScannedIdeal, CliError> {
    let mut cur = Cursor::new(text, base);
    let mut monomials = Vec::new();
    loop {
        cur.skip_ws();
        if cur.at_end() {
            return Err(cur.error("expected a monomial"));
        }
        monomials.push(scan_monomial(&mut cur)?);
        cur.skip_ws();
        if cur.at_end() {
            break;
        }
        if !cur.eat(',') {
            return Err(cur.error("expected ',' between monomials"));
        }
    }
    let mut style = None;
    for (v, _) in monomials.iter().flatten() {
        let s = match v {
            Var::Letter(_) => Style::Letters,
            Var::Indexed(_) => Style::Indexed,
        };
        match style {
            None => style = Some(s),
            Some(t) if t != s => return Err(CliError::MixedVariableSets),
            _ => {}
        }
    }
    Ok(ScannedIdeal { monomials, style })
}

/// Parses a monomial ideal. Without `dim`, the dimension is the smallest one
/// containing every variable used (at least 1).
pub fn parse_ideal(text: &str, dim: Option<usize>) -> Result<MonomialIdeal, CliError> {
    let scanned = scan_ideal(text, 0)?;
    scanned.resolve(dim.unwrap_or(scanned.min_dim().max(1)))
}

pub fn parse_rational(text: &str, base: usize) -> Result<Rational, CliError> {
    let lead = text.len() - text.trim_start().len();
    let t = text.trim();
    Rational::from_str(t).map_err(|_| CliError::Parse {
        offset: base + lead,
        message: format!("expected a rational p/q, found {t:?}"),
    })
}

/// Comma-separated rationals, e.g. `3/8,1/4`.
pub fn parse_rational_list(text: &str, base: usize) -> Result<Vec<Rational>, CliError> {
    let mut out = Vec::new();
    let mut offset = base;
    for part in text.split(',') {
        out.push(parse_rational(part, offset)?);
        offset += part.len() + 1;
    }
    Ok(out)
}

/// A graded-sequence descriptor before dimension resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeqDesc {
    Pow(ScannedIdeal),
    Val(Vec<Rational>),
    Enl(Box<SeqDesc>, ScannedIdeal, Rational),
}

/// `pow:<ideal>`, `val:<weights>` or `enl:<seq>;<ideal>;<beta>`.
pub fn scan_sequence(text: &str, base: usize) -> Result<SeqDesc, CliError> {
    let err = |offset: usize, message: &str| CliError::Parse {
        offset: base + offset,
        message: message.into(),
    };
    let Some((kind, body)) = text.split_once(':') else {
        return Err(err(0, "sequence descriptor must start with pow:, val: or enl:"));
    };
    let start = kind.len() + 1;
    match kind.trim() {
        "pow" => Ok(SeqDesc::Pow(scan_ideal(body, base + start)?)),
        "val" => Ok(SeqDesc::Val(parse_rational_list(body, base + start)?)),
        "enl" => {
            let Some(j) = body.rfind(';') else {
                return Err(err(start, "expected enl:<seq>;<ideal>;<beta>"));
            };
            let Some(i) = body[..j].rfind(';') else {
                return Err(err(start, "expected enl:<seq>;<ideal>;<beta>"));
            };
            let inner = scan_sequence(&body[..i], base + start)?;
            let qprime = scan_ideal(&body[i + 1..j], base + start + i + 1)?;
            let beta = parse_rational(&body[j + 1..], base + start + j + 1)?;
            Ok(SeqDesc::Enl(Box::new(inner), qprime, beta))
        }
        _ => Err(err(0, "sequence descriptor must start with pow:, val: or enl:")),
    }
}

impl SeqDesc {
    fn ideals(&self) -> Vec<&ScannedIdeal> {
        match self {
            SeqDesc::Pow(a) => vec![a],
            SeqDesc::Val(_) => vec![],
            SeqDesc::Enl(inner, q, _) => {
                let mut v = inner.ideals();
                v.push(q);
                v
            }
        }
    }

    fn weight_dim(&self) -> Option<usize> {
        match self {
            SeqDesc::Pow(_) => None,
            SeqDesc::Val(w) => Some(w.len()),
            SeqDesc::Enl(inner, _, _) => inner.weight_dim(),
        }
    }

    /// The innermost weight vector, if the sequence is built from one.
    pub fn base_weights(&self) -> Option<&[Rational]> {
        match self {
            SeqDesc::Pow(_) => None,
            SeqDesc::Val(w) => Some(w),
            SeqDesc::Enl(inner, _, _) => inner.base_weights(),
        }
    }

    pub fn resolve(&self, dim: usize) -> Result<Sequence, CliError> {
        Ok(match self {
            SeqDesc::Pow(a) => GradedSeq::powers(a.resolve(dim)?)?,
            SeqDesc::Val(w) => GradedSeq::ValSeq(WeightVector::new(w.clone())?),
            SeqDesc::Enl(inner, q, beta) => GradedSeq::enlarged(inner.resolve(dim)?, q.resolve(dim)?, beta.clone())?,
        })
    }
}

/// Collects the dimension constraints of one invocation.
#[derive(Debug, Default)]
pub struct DimContext {
    style: Option<Style>,
    min: usize,
    fixed: Option<(usize, String)>,
}

impl DimContext {
    pub fn new(flag: Option<usize>) -> Self {
        DimContext {
            fixed: flag.map(|d| (d, "--dim".to_string())),
            ..Default::default()
        }
    }

    pub fn ideal(&mut self, ideal: &ScannedIdeal) -> Result<(), CliError> {
        if let Some(s) = ideal.style() {
            match self.style {
                Some(t) if t != s => return Err(CliError::MixedVariableSets),
                _ => self.style = Some(s),
            }
        }
        self.min = self.min.max(ideal.min_dim());
        Ok(())
    }

    pub fn exact(&mut self, dim: usize, what: &str) -> Result<(), CliError> {
        match &self.fixed {
            Some((d, source)) if *d != dim => Err(CliError::Domain(format!(
                "dimension mismatch: {source} has dimension {d} but {what} has dimension {dim}"
            ))),
            Some(_) => Ok(()),
            None => {
                self.fixed = Some((dim, what.to_string()));
                Ok(())
            }
        }
    }

    pub fn sequence(&mut self, seq: &SeqDesc) -> Result<(), CliError> {
        for a in seq.ideals() {
            self.ideal(a)?;
        }
        if let Some(d) = seq.weight_dim() {
            self.exact(d, "the weight vector")?;
        }
        Ok(())
    }

    pub fn finish(&self) -> Result<usize, CliError> {
        match &self.fixed {
            Some((d, source)) if *d < self.min => Err(CliError::Domain(format!(
                "variables need dimension {} but {source} gives {d}",
                self.min
            ))),
            Some((d, _)) => Ok(*d),
            None => Ok(self.min.max(1)),
        }
    }
}

/// `alpha:mult,alpha:mult,...`, e.g. `3/2:1,2:2`.
pub fn parse_approx_seq(text: &str) -> Result<ApproxSeq, CliError> {
    let mut steps = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let Some((alpha, mult)) = part.split_once(':') else {
            return Err(CliError::Parse {
                offset,
                message: "expected alpha:multiplicity".into(),
            });
        };
        let alpha = parse_rational(alpha, offset)?;
        let moff = offset + part.find(':').unwrap_or(0) + 1;
        let m: u32 = mult.trim().parse().map_err(|_| CliError::Parse {
            offset: moff,
            message: format!("expected a positive integer multiplicity, found {:?}", mult.trim()),
        })?;
        steps.push((alpha, m));
        offset += part.len() + 1;
    }
    Ok(ApproxSeq::new(steps)?)
}
