//! Polynomial text format.
//!
//! Canonical form is a sum of terms in decreasing degree, e.g. `2*t^3 + t + 1`,
//! with coefficients written as field elements (`[a0,a1]` over extension
//! fields). The parser also accepts `-`, omitted `*` and `^` (`2t3`), and the
//! compact coefficient list `[c0,c1,...]` (`[[..],[..]]` over extension fields).

use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use super::{MonicPrime, Poly};
use crate::error::{Error, Result};
use crate::ff::{FFElem, FieldCtx};

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let coef = self.ctx.format_elem(c);
            match (k, c.is_one()) {
                (0, _) => f.write_str(&coef)?,
                (1, true) => f.write_str("t")?,
                (1, false) => write!(f, "{coef}*t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{coef}*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Serialize for MonicPrime {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_poly().serialize(s)
    }
}

impl fmt::Display for MonicPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.as_poly().fmt(f)
    }
}

impl Poly {
    /// Compact coefficient list, low to high.
    pub fn to_compact(&self) -> String {
        let c: Vec<String> = self.coeffs.iter().map(|&c| self.ctx.format_elem(c)).collect();
        format!("[{}]", c.join(","))
    }

    pub fn parse(ctx: &Arc<FieldCtx>, text: &str) -> Result<Poly> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let compact = if ctx.is_prime_field() { s.starts_with('[') } else { s.starts_with("[[") || s == "[]" };
        if compact {
            return parse_compact(ctx, &s);
        }
        let mut coeffs: Vec<FFElem> = Vec::new();
        for (negative, term) in split_terms(&s)? {
            let (c, k) = parse_term(ctx, term)?;
            let c = if negative { ctx.neg(c) } else { c };
            if coeffs.len() <= k {
                coeffs.resize(k + 1, FFElem::ZERO);
            }
            coeffs[k] = ctx.add(coeffs[k], c);
        }
        Ok(Poly::from_coeffs(ctx, coeffs))
    }
}

fn parse_compact(ctx: &Arc<FieldCtx>, s: &str) -> Result<Poly> {
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("unbalanced brackets in `{s}`")))?;
    if inner.is_empty() {
        return Ok(Poly::zero(ctx));
    }
    let mut coeffs = Vec::new();
    if ctx.is_prime_field() {
        for c in inner.split(',') {
            coeffs.push(ctx.parse_elem(c)?);
        }
    } else {
        let mut rest = inner;
        while !rest.is_empty() {
            let end = rest.find(']').ok_or_else(|| Error::Parse(format!("unbalanced brackets in `{s}`")))?;
            coeffs.push(ctx.parse_elem(&rest[..=end])?);
            rest = rest[end + 1..].strip_prefix(',').unwrap_or(&rest[end + 1..]);
        }
    }
    Ok(Poly::from_coeffs(ctx, coeffs))
}

/// Splits on top-level `+`/`-`, returning `(negated, term)` pairs.
fn split_terms(s: &str) -> Result<Vec<(bool, &str)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut negative = false;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            '+' | '-' if depth == 0 => {
                if i > start {
                    out.push((negative, &s[start..i]));
                } else if i > 0 {
                    return Err(Error::Parse(format!("dangling sign in `{s}`")));
                }
                negative = ch == '-';
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced brackets in `{s}`")));
        }
    }
    if start >= s.len() {
        return Err(Error::Parse(format!("trailing sign in `{s}`")));
    }
    out.push((negative, &s[start..]));
    Ok(out)
}

/// Parses `c`, `c*t^k`, `ct^k`, `t^k`, `tk`, `t`, `c*t`.
fn parse_term(ctx: &FieldCtx, term: &str) -> Result<(FFElem, usize)> {
    let bad = || Error::Parse(format!("bad term `{term}`"));
    let (coef_part, var_part) = match term.find('t') {
        Some(i) => (&term[..i], Some(&term[i + 1..])),
        None => (term, None),
    };
    let coef_part = match var_part {
        Some(_) => coef_part.strip_suffix('*').unwrap_or(coef_part),
        None => coef_part,
    };
    let coef = if coef_part.is_empty() {
        if var_part.is_none() {
            return Err(bad());
        }
        FFElem::ONE
    } else {
        ctx.parse_elem(coef_part)?
    };
    let k = match var_part {
        None => 0,
        Some("") => 1,
        Some(rest) => {
            let digits = rest.strip_prefix('^').unwrap_or(rest);
            digits.parse::<usize>().map_err(|_| bad())?
        }
    };
    Ok((coef, k))
}
