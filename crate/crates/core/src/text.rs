//! Text grammar for ideals.
//!
//! A generator is either a product like `x1^2*x3` or an exponent tuple
//! `[2,0,1]`; `1` is the unit monomial. An ideal is a `;`-separated list or
//! a JSON array of such generators. The token `m` stands for the maximal
//! ideal and `0` for the zero ideal.

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

fn parse_err(token: &str, position: usize, message: &str) -> Error {
    Error::Parse {
        token: token.to_string(),
        position,
        message: message.to_string(),
    }
}

#[derive(Debug)]
enum RawGen {
    Product(Vec<(usize, u64)>),
    Tuple(Vec<u64>),
}

/// Parse an ideal. `nvars` fixes the ambient; when `None` it is inferred
/// from the largest variable index or tuple length.
pub fn parse_ideal(src: &str, nvars: Option<usize>) -> Result<MonomialIdeal> {
    let t = src.trim();
    if t == "m" {
        let n = nvars.ok_or_else(|| {
            parse_err("m", 0, "the maximal ideal needs an explicit variable count")
        })?;
        return Ok(MonomialIdeal::maximal(n));
    }
    if t == "0" {
        let n = nvars.ok_or_else(|| parse_err("0", 0, "the zero ideal needs an explicit variable count"))?;
        return Ok(MonomialIdeal::zero(n));
    }
    let pieces = split_pieces(src)?;
    if pieces.is_empty() {
        return Err(parse_err(src, 0, "empty ideal"));
    }
    let mut raw = Vec::with_capacity(pieces.len());
    for (pos, piece) in &pieces {
        raw.push(parse_generator(piece, *pos)?);
    }
    let inferred = raw
        .iter()
        .map(|g| match g {
            RawGen::Product(f) => f.iter().map(|(i, _)| i + 1).max().unwrap_or(0),
            RawGen::Tuple(e) => e.len(),
        })
        .max()
        .unwrap_or(0);
    let n = match nvars {
        Some(n) => {
            if inferred > n {
                return Err(parse_err(
                    src,
                    0,
                    &format!("generator uses {inferred} variables but ambient has {n}"),
                ));
            }
            n
        }
        None => inferred,
    };
    if n == 0 {
        return Err(parse_err(src, 0, "cannot infer a positive variable count"));
    }
    let mut gens = Vec::with_capacity(raw.len());
    for (g, (pos, piece)) in raw.into_iter().zip(&pieces) {
        let e = match g {
            RawGen::Product(f) => {
                let mut e = vec![0u64; n];
                for (i, k) in f {
                    e[i] = e[i]
                        .checked_add(k)
                        .ok_or_else(|| parse_err(piece, *pos, "exponent overflow"))?;
                }
                e
            }
            RawGen::Tuple(e) => {
                if e.len() != n {
                    return Err(parse_err(
                        piece,
                        *pos,
                        &format!("tuple has length {} but ambient has {n}", e.len()),
                    ));
                }
                e
            }
        };
        gens.push(Monomial::new(e));
    }
    MonomialIdeal::new(n, gens)
}

/// Split into `(byte offset, text)` generator pieces.
fn split_pieces(src: &str) -> Result<Vec<(usize, String)>> {
    let t = src.trim_start();
    let lead = src.len() - t.len();
    let t = t.trim_end();
    if t.starts_with('[') && t.contains("[[") || t.starts_with("[\"") {
        // JSON array of tuples or strings
        let v: serde_json::Value =
            serde_json::from_str(t).map_err(|e| parse_err(t, lead, &e.to_string()))?;
        let arr = v
            .as_array()
            .ok_or_else(|| parse_err(t, lead, "expected a JSON array"))?;
        return arr
            .iter()
            .map(|item| match item {
                serde_json::Value::String(s) => Ok((lead, s.clone())),
                serde_json::Value::Array(_) => Ok((lead, item.to_string())),
                other => Err(parse_err(&other.to_string(), lead, "unexpected JSON element")),
            })
            .collect();
    }
    let mut out = Vec::new();
    let mut start = 0usize;
    for (i, ch) in src.char_indices() {
        if ch == ';' {
            push_piece(src, start, i, &mut out);
            start = i + 1;
        }
    }
    push_piece(src, start, src.len(), &mut out);
    Ok(out)
}

fn push_piece(src: &str, start: usize, end: usize, out: &mut Vec<(usize, String)>) {
    let raw = &src[start..end];
    let trimmed = raw.trim_start();
    let off = start + (raw.len() - trimmed.len());
    let trimmed = trimmed.trim_end();
    if !trimmed.is_empty() {
        out.push((off, trimmed.to_string()));
    }
}

fn parse_generator(piece: &str, pos: usize) -> Result<RawGen> {
    if piece.starts_with('[') {
        let v: Vec<u64> = serde_json::from_str(piece)
            .map_err(|_| parse_err(piece, pos, "invalid exponent tuple"))?;
        return Ok(RawGen::Tuple(v));
    }
    if piece == "1" {
        return Ok(RawGen::Product(Vec::new()));
    }
    let mut factors = Vec::new();
    let mut off = 0usize;
    for factor in piece.split('*') {
        let fpos = pos + off;
        off += factor.len() + 1;
        let f = factor.trim();
        let (var, exp) = match f.split_once('^') {
            Some((v, e)) => (v.trim(), Some(e.trim())),
            None => (f, None),
        };
        let idx = var
            .strip_prefix('x')
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&i| i >= 1)
            .ok_or_else(|| parse_err(f, fpos, "expected a variable x1, x2, ..."))?;
        let k = match exp {
            Some(e) => e
                .parse::<u64>()
                .map_err(|_| parse_err(f, fpos, "invalid exponent"))?,
            None => 1,
        };
        factors.push((idx - 1, k));
    }
    Ok(RawGen::Product(factors))
}
