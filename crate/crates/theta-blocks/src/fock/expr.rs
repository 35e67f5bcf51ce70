//! A small text grammar for slot expressions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := [rational ('*' | '·')] factor (('·' | '*') factor)*
//! factor  := B{i,p;k,q}(m) | L{i;j}(m) | R{i;j}(m)
//!          | phi^{j,p}(m) | phi_{j,p}(m)
//!          | 1 | v[Y] | ns[Y] | col
//! ```
//!
//! The rightmost factor acts first. Generators and base vectors must sit to the
//! right of every operator. `v[Y]` is v_Y in the Ramond slot and v^Y in the opposite
//! slot; `ns[Y]` and `col` are NS highest-weight vectors.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::bilinear::{lift, BilinearOp, Side};
use super::gauge::SlotExpression;
use super::hwv::{ns_column, ns_diagram, ns_words, v_lower, v_upper};
use super::qsqrt2::QSqrt2;
use super::state::{FockVector, Gen, Label, Sector};
use crate::error::{Error, Result};
use crate::weights::YoungDiagram;

/// One coefficient-weighted slot expression.
pub type SlotTerm = (QSqrt2, SlotExpression);

enum Factor {
    Ops(Vec<BilinearOp>),
    Gen(Gen),
    Base(FockVector),
}

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn split_top(text: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut negative = false;
    for ch in text.chars() {
        match ch {
            '{' | '(' | '[' => depth += 1,
            '}' | ')' | ']' => depth -= 1,
            _ => {}
        }
        if depth == 0 && (ch == '+' || ch == '-') && !cur.trim().is_empty() {
            out.push((negative, std::mem::take(&mut cur)));
            negative = ch == '-';
            continue;
        }
        if depth == 0 && ch == '-' && cur.trim().is_empty() {
            negative = !negative;
            continue;
        }
        if depth == 0 && ch == '+' && cur.trim().is_empty() {
            continue;
        }
        cur.push(ch);
    }
    if depth != 0 {
        return Err(err(format!("unbalanced brackets in {text:?}")));
    }
    if cur.trim().is_empty() {
        return Err(err(format!("empty term in {text:?}")));
    }
    out.push((negative, cur));
    Ok(out)
}

fn split_factors(term: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in term.chars() {
        match ch {
            '{' | '(' | '[' => depth += 1,
            '}' | ')' | ']' => depth -= 1,
            _ => {}
        }
        if depth == 0 && (ch == '·' || ch == '*') {
            out.push(std::mem::take(&mut cur).trim().to_string());
            continue;
        }
        cur.push(ch);
    }
    out.push(cur.trim().to_string());
    if out.iter().any(|f| f.is_empty()) {
        return Err(err(format!("empty factor in {term:?}")));
    }
    Ok(out)
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err(format!("bad number {s:?}")))?;
    let d: BigInt = d.parse().map_err(|_| err(format!("bad number {s:?}")))?;
    if d == BigInt::from(0) {
        return Err(err("zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

fn parse_ints(s: &str, sep: char) -> Result<Vec<i32>> {
    s.split(sep)
        .map(|x| x.trim().parse::<i32>().map_err(|_| err(format!("bad index {x:?}"))))
        .collect()
}

/// Split "NAME{args}(mode)" into (args, mode).
fn braces_and_mode(rest: &str) -> Result<(String, String)> {
    let rest = rest.trim();
    let open = rest
        .find('{')
        .ok_or_else(|| err(format!("expected '{{' in {rest:?}")))?;
    let close = rest
        .find('}')
        .ok_or_else(|| err(format!("expected '}}' in {rest:?}")))?;
    let tail = rest[close + 1..].trim();
    let mode = tail
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| err(format!("expected (mode) after {rest:?}")))?;
    Ok((rest[open + 1..close].to_string(), mode.to_string()))
}

fn mode2_of(text: &str) -> Result<i32> {
    let q = parse_rational(&text.replace('−', "-"))? * BigRational::from_integer(2.into());
    if !q.is_integer() {
        return Err(err(format!("mode {text:?} is not a multiple of 1/2")));
    }
    i32::try_from(q.to_integer()).map_err(|_| err(format!("mode {text:?} out of range")))
}

fn check_label(l: Label, r: usize, s: usize) -> Result<()> {
    if l.j.unsigned_abs() as usize > r || l.p.unsigned_abs() as usize > s {
        return Err(err(format!("index ({l}) outside [-{r}..{r}]x[-{s}..{s}]")));
    }
    Ok(())
}

fn parse_diagram(inner: &str) -> Result<YoungDiagram> {
    let inner = inner.trim();
    if inner.is_empty() {
        return Ok(YoungDiagram::empty());
    }
    let rows = inner
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| err(format!("bad row {x:?}"))))
        .collect::<Result<Vec<_>>>()?;
    YoungDiagram::new(rows)
}

fn parse_factor(f: &str, sector: Sector, r: usize, s: usize) -> Result<Factor> {
    let f = f.trim();
    if f == "1" {
        return Ok(Factor::Base(FockVector::vacuum(sector)));
    }
    if f == "col" {
        return Ok(Factor::Base(ns_column(r)));
    }
    if let Some(inner) = f.strip_prefix("v[").and_then(|t| t.strip_suffix(']')) {
        let y = parse_diagram(inner)?;
        return Ok(Factor::Base(match sector {
            Sector::RamondOpp => v_upper(&y, r, s)?,
            _ => v_lower(&y, r, s)?,
        }));
    }
    if let Some(inner) = f.strip_prefix("ns[").and_then(|t| t.strip_suffix(']')) {
        return Ok(Factor::Base(ns_diagram(&parse_diagram(inner)?, r, s)?));
    }
    if let Some(rest) = f.strip_prefix("phi^").or_else(|| f.strip_prefix("phi_")) {
        let (args, mode) = braces_and_mode(rest)?;
        let idx = parse_ints(&args, ',')?;
        let [j, p] = idx[..] else {
            return Err(err(format!("generator needs two indices: {f:?}")));
        };
        let mode2 = mode2_of(&mode)?;
        let g = if f.starts_with("phi^") {
            Gen::upper(j, p, mode2)
        } else {
            Gen::lower(j, p, mode2)
        };
        check_label(g.label, r, s)?;
        return Ok(Factor::Gen(g));
    }
    if let Some(rest) = f.strip_prefix('B') {
        let (args, mode) = braces_and_mode(rest)?;
        let (up, low) = args
            .split_once(';')
            .ok_or_else(|| err(format!("expected ';' in {f:?}")))?;
        let (up, low) = (parse_ints(up, ',')?, parse_ints(low, ',')?);
        let ([i, p], [k, q]) = (&up[..], &low[..]) else {
            return Err(err(format!("operator needs two index pairs: {f:?}")));
        };
        let op = BilinearOp::b(*i, *p, *k, *q, parse_mode_int(&mode)?);
        check_label(op.upper, r, s)?;
        check_label(op.lower, r, s)?;
        return Ok(Factor::Ops(vec![op]));
    }
    for (prefix, side, bound) in [('L', Side::L, r), ('R', Side::R, s)] {
        if let Some(rest) = f.strip_prefix(prefix) {
            let (args, mode) = braces_and_mode(rest)?;
            let idx = parse_ints(&args, ';')?;
            let [i, j] = idx[..] else {
                return Err(err(format!("embedded operator needs two indices: {f:?}")));
            };
            if i.unsigned_abs() as usize > bound || j.unsigned_abs() as usize > bound {
                return Err(err(format!("index out of range in {f:?}")));
            }
            return Ok(Factor::Ops(lift(side, i, j, parse_mode_int(&mode)?, r, s)));
        }
    }
    Err(err(format!("unknown factor {f:?}")))
}

fn parse_mode_int(text: &str) -> Result<i32> {
    let m2 = mode2_of(text)?;
    if m2 % 2 != 0 {
        return Err(err(format!("operator mode {text:?} must be an integer")));
    }
    Ok(m2 / 2)
}

/// Parse a slot expression in the given sector into weighted operator words.
pub fn parse_slot(text: &str, sector: Sector, r: usize, s: usize) -> Result<Vec<SlotTerm>> {
    let text = text.replace('−', "-");
    let mut out = Vec::new();
    for (negative, term) in split_top(&text)? {
        let mut factors = split_factors(&term)?;
        let mut coeff = QSqrt2::from_int(if negative { -1 } else { 1 });
        if factors.len() > 1 {
            if let Ok(q) = parse_rational(&factors[0]) {
                coeff = coeff.scale(&q);
                factors.remove(0);
            }
        }
        let mut base: Option<FockVector> = None;
        let mut words: Vec<Vec<BilinearOp>> = vec![Vec::new()];
        let mut seen_op = false;
        for f in factors.iter().rev() {
            match parse_factor(f, sector, r, s)? {
                Factor::Base(v) => {
                    if base.is_some() || seen_op {
                        return Err(err(format!("base vector {f:?} must be the rightmost factor")));
                    }
                    if v.sector() != sector {
                        return Err(Error::Sector(format!("{f:?} is not in the {sector} sector")));
                    }
                    base = Some(v);
                }
                Factor::Gen(g) => {
                    if seen_op {
                        return Err(err(format!("generator {f:?} must sit right of all operators")));
                    }
                    let v = base.take().unwrap_or_else(|| FockVector::vacuum(sector));
                    base = Some(v.apply_gen(g)?);
                }
                Factor::Ops(ops) => {
                    seen_op = true;
                    words = words
                        .into_iter()
                        .flat_map(|w| {
                            ops.iter().map(move |op| {
                                let mut w2 = vec![*op];
                                w2.extend_from_slice(&w);
                                w2
                            })
                        })
                        .collect();
                }
            }
        }
        let base = base.unwrap_or_else(|| FockVector::vacuum(sector));
        let bases: Vec<SlotTerm> = if sector == Sector::Ns {
            ns_words(&base)?
        } else {
            vec![(QSqrt2::one(), SlotExpression::bare(base))]
        };
        for word in &words {
            for (c, e) in &bases {
                let mut ops = word.clone();
                ops.extend_from_slice(&e.ops);
                out.push((&coeff * c, SlotExpression::new(ops, e.base.clone())));
            }
        }
    }
    Ok(out)
}
