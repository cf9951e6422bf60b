//! Input formats for cubic forms.

use super::mpoly::MPoly;
use super::CubicForm;
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElem};
use serde_json::Value;

fn field_from_header(line: &str) -> Option<Result<FieldCtx>> {
    let rest = line.strip_prefix("field")?;
    Some(FieldCtx::from_spec(rest.trim()))
}

pub fn parse_text(s: &str, field: Option<&FieldCtx>) -> Result<CubicForm> {
    let mut k = field.cloned();
    let mut terms = Vec::new();
    for raw in s.lines() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if let Some(f) = field_from_header(line) {
            let f = f?;
            if let Some(given) = &k {
                if given != &f && field.is_some() {
                    return Err(Error::IncompatibleFields(format!(
                        "file declares F_{}, caller asked for F_{}",
                        f.spec_string(),
                        given.spec_string()
                    )));
                }
            }
            k = Some(f);
            continue;
        }
        let kk = k.as_ref().ok_or_else(|| Error::Parse("no field given (add a 'field p^r' header)".into()))?;
        // the coefficient may be a bracketed vector containing spaces
        let (coef, rest) = if line.starts_with('[') {
            let end = line.find(']').ok_or_else(|| Error::Parse(format!("unterminated coefficient in '{line}'")))?;
            (&line[..=end], &line[end + 1..])
        } else {
            line.split_once(char::is_whitespace).ok_or_else(|| Error::Parse(format!("bad term line '{line}'")))?
        };
        let c = kk.parse(coef)?;
        let e = rest
            .split_whitespace()
            .map(|x| x.parse::<u8>().map_err(|_| Error::Parse(format!("bad exponent '{x}'"))))
            .collect::<Result<Vec<u8>>>()?;
        if e.iter().map(|&x| x as usize).sum::<usize>() != 3 {
            return Err(Error::Parse(format!("term '{line}' does not have degree 3")));
        }
        terms.push((e, c));
    }
    let k = k.ok_or_else(|| Error::Parse("no field given".into()))?;
    let m = terms.first().map(|t| t.0.len()).ok_or(Error::ZeroPolynomial)?;
    if m < 3 {
        return Err(Error::Parse("need at least 3 variables".into()));
    }
    CubicForm::new(&k, m - 2, terms)
}

pub fn parse_json(s: &str) -> Result<CubicForm> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let q = match &v["q"] {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(Error::Parse("missing \"q\"".into())),
    };
    let k = FieldCtx::from_spec(&q)?;
    let terms = v["terms"].as_array().ok_or_else(|| Error::Parse("missing \"terms\"".into()))?;
    let mut out = Vec::new();
    for t in terms {
        let c = match &t["c"] {
            Value::String(s) => k.parse(s)?,
            Value::Number(n) => k.from_int(n.as_i64().ok_or_else(|| Error::Parse("bad coefficient".into()))?),
            Value::Array(a) => {
                let coeffs = a
                    .iter()
                    .map(|x| x.as_i64().ok_or_else(|| Error::Parse("bad coefficient".into())))
                    .collect::<Result<Vec<_>>>()?;
                k.from_coeffs(&coeffs)?
            }
            _ => return Err(Error::Parse("term without \"c\"".into())),
        };
        let e = t["e"]
            .as_array()
            .ok_or_else(|| Error::Parse("term without \"e\"".into()))?
            .iter()
            .map(|x| x.as_u64().filter(|&d| d <= 3).map(|d| d as u8).ok_or_else(|| Error::Parse("bad exponent".into())))
            .collect::<Result<Vec<u8>>>()?;
        out.push((e, c));
    }
    let m = out.first().map(|t| t.0.len()).ok_or(Error::ZeroPolynomial)?;
    let n = match v["n"].as_u64() {
        Some(n) => n as usize,
        None => m.checked_sub(2).ok_or_else(|| Error::Parse("too few variables".into()))?,
    };
    CubicForm::new(&k, n, out)
}

pub fn parse_any(s: &str, field: Option<&FieldCtx>) -> Result<CubicForm> {
    let t = s.trim_start();
    if t.starts_with('{') {
        return parse_json(s);
    }
    // expression input has an 'x'; the term format never does
    let body: Vec<&str> = s.lines().map(|l| l.split('#').next().unwrap().trim()).filter(|l| !l.is_empty()).collect();
    let mut k = field.cloned();
    let mut rest = Vec::new();
    for l in body {
        match field_from_header(l) {
            Some(f) => k = Some(f?),
            None => rest.push(l),
        }
    }
    let joined = rest.join(" ");
    if joined.contains('x') {
        let k = k.ok_or_else(|| Error::Parse("no field given".into()))?;
        parse_expr(&joined, &k, None)
    } else {
        parse_text(s, k.as_ref())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Var(usize),
    Gen,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    let read_num = |i: &mut usize| -> Result<i64> {
        let start = *i;
        while *i < b.len() && b[*i].is_ascii_digit() {
            *i += 1;
        }
        s[start..*i].parse::<i64>().map_err(|_| Error::Parse(format!("bad number at offset {start}")))
    };
    while i < b.len() {
        let c = b[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'0'..=b'9' => out.push(Tok::Num(read_num(&mut i)?)),
            b'x' | b'X' => {
                i += 1;
                if i < b.len() && b[i] == b'_' {
                    i += 1;
                }
                let v = read_num(&mut i)?;
                if v < 1 {
                    return Err(Error::Parse("variables are numbered from 1".into()));
                }
                out.push(Tok::Var(v as usize - 1));
            }
            b't' | b'u' | b'a' => {
                out.push(Tok::Gen);
                i += 1;
            }
            b'+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            b'-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            b'*' => {
                out.push(Tok::Star);
                i += 1;
            }
            b'^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            b'(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            b')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            _ => return Err(Error::Parse(format!("unexpected character '{}'", c as char))),
        }
    }
    Ok(out)
}

struct ExprParser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    k: &'a FieldCtx,
    nvars: usize,
}

impl<'a> ExprParser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut neg = false;
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            neg = true;
        } else if self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.scale(self.k.neg(FieldElem::ONE));
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::Gen) | Some(Tok::LParen) => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let Some(Tok::Num(e)) = self.peek().cloned() else {
                return Err(Error::Parse("exponent must be a nonnegative integer".into()));
            };
            self.pos += 1;
            let mut out = MPoly::constant(self.k, self.nvars, FieldElem::ONE);
            for _ in 0..e {
                out = out.mul(&base);
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly> {
        let tok = self.peek().cloned().ok_or_else(|| Error::Parse("unexpected end of expression".into()))?;
        self.pos += 1;
        match tok {
            Tok::Num(v) => Ok(MPoly::constant(self.k, self.nvars, self.k.from_int(v))),
            Tok::Var(i) => Ok(MPoly::var(self.k, self.nvars, i)),
            Tok::Gen => {
                let g = if self.k.r() == 1 {
                    return Err(Error::Parse("field generator used over a prime field".into()));
                } else {
                    self.k.from_coeffs(&[0, 1])?
                };
                Ok(MPoly::constant(self.k, self.nvars, g))
            }
            Tok::LParen => {
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            t => Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }
}

pub fn parse_expr(s: &str, k: &FieldCtx, nvars: Option<usize>) -> Result<CubicForm> {
    let toks = tokenize(s)?;
    let max_var = toks.iter().filter_map(|t| if let Tok::Var(i) = t { Some(*i + 1) } else { None }).max();
    let nvars = nvars.or(max_var).ok_or_else(|| Error::Parse("expression has no variables".into()))?;
    if max_var.unwrap_or(0) > nvars {
        return Err(Error::Parse(format!("variable index exceeds {nvars}")));
    }
    if nvars < 3 {
        return Err(Error::Parse("need at least 3 variables".into()));
    }
    let mut p = ExprParser { toks, pos: 0, k, nvars };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    CubicForm::from_poly(nvars - 2, poly)
}
