//! Shell-friendly text grammar for groups and elements.
//!
//! Groups: `Z`, `Z^d`, `Z/q`, `D2n` (order `2n`), `Dinf`, `H3`, `F k` or `Fk`,
//! products joined by ` x ` (right-nested; parentheses group), and `@file.json`
//! for a Cayley table.
//!
//! Elements: a parenthesized tuple of the flattened coordinates, e.g. `(0,1)` in
//! `Z x Z/2` or `(i,j,l)` in `H3`; one-coordinate groups also accept a bare value.
//! Dihedral elements are `(k,e)` for `r^k s^e`. Free words are written as
//! `x1*x2^-1`, with `e` for the empty word. Products containing a free factor use
//! `<left|right>`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{free_push, reduce_mod, CayleyTable, Element, Group};
use crate::error::{Error, Result};

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::FiniteCyclic(q) => write!(f, "Z/{q}"),
            Group::IntVector(1) => write!(f, "Z"),
            Group::IntVector(d) => write!(f, "Z^{d}"),
            Group::DihedralFinite(n) => write!(f, "D{}", 2 * n),
            Group::DihedralInfinite => write!(f, "Dinf"),
            Group::Heisenberg => write!(f, "H3"),
            Group::Free(k) => write!(f, "F{k}"),
            Group::Product(l, r) => {
                if matches!(**l, Group::Product(..)) {
                    write!(f, "({l}) x {r}")
                } else {
                    write!(f, "{l} x {r}")
                }
            }
            Group::CayleyTable(t) => write!(f, "Table{}", t.size()),
        }
    }
}

/// Splits `s` at top-level occurrences of `sep` (outside `()`, `[]`, `<>`).
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' | '<' => depth += 1,
            ')' | ']' | '>' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn strip_wrapping(s: &str, open: char, close: char) -> Option<&str> {
    let s = s.trim();
    if s.starts_with(open) && s.ends_with(close) && s.len() >= 2 {
        let inner = &s[open.len_utf8()..s.len() - close.len_utf8()];
        // make sure the outer pair actually matches
        let mut depth = 0i32;
        for ch in inner.chars() {
            if ch == open {
                depth += 1;
            } else if ch == close {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
        }
        if depth == 0 {
            return Some(inner);
        }
    }
    None
}

fn parse_uint<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::parse(format!("expected a positive integer for {what}, got {s:?}")))
}

pub fn parse_group(text: &str) -> Result<Group> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::parse("empty group descriptor"));
    }
    // products: whitespace-delimited `x` at depth 0
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let mut factors: Vec<String> = Vec::new();
    let mut current: Vec<&str> = Vec::new();
    let mut depth = 0i32;
    for tok in tokens {
        if tok == "x" && depth == 0 {
            if current.is_empty() {
                return Err(Error::parse(format!("dangling product in {text:?}")));
            }
            factors.push(current.join(" "));
            current.clear();
            continue;
        }
        depth += tok.matches('(').count() as i32 - tok.matches(')').count() as i32;
        current.push(tok);
    }
    if current.is_empty() {
        return Err(Error::parse(format!("dangling product in {text:?}")));
    }
    factors.push(current.join(" "));
    let mut groups = factors.iter().map(|f| parse_factor(f)).collect::<Result<Vec<_>>>()?;
    let mut acc = groups.pop().expect("at least one factor");
    while let Some(g) = groups.pop() {
        acc = Group::product(g, acc);
    }
    Ok(acc)
}

fn parse_factor(text: &str) -> Result<Group> {
    let t = text.trim();
    if let Some(inner) = strip_wrapping(t, '(', ')') {
        return parse_group(inner);
    }
    if let Some(path) = t.strip_prefix('@') {
        return Ok(Group::table(CayleyTable::load(path.trim())?));
    }
    match t {
        "Z" => return Ok(Group::IntVector(1)),
        "Dinf" | "D∞" => return Ok(Group::DihedralInfinite),
        "H3" | "H" => return Ok(Group::Heisenberg),
        _ => {}
    }
    if let Some(d) = t.strip_prefix("Z^") {
        return Group::int_vector(parse_uint(d, "Z^d")?);
    }
    if let Some(q) = t.strip_prefix("Z/") {
        return Group::cyclic(parse_uint(q, "Z/q")?);
    }
    if let Some(k) = t.strip_prefix('F') {
        return Group::free(parse_uint(k, "F k")?);
    }
    if let Some(order) = t.strip_prefix('D') {
        let order: u64 = parse_uint(order, "D2n")?;
        if order == 0 || order % 2 == 1 {
            return Err(Error::parse(format!(
                "dihedral order must be even and positive, got {order}"
            )));
        }
        return Group::dihedral(order / 2);
    }
    Err(Error::parse(format!("unknown group {t:?}")))
}

/// Number of flattened tuple coordinates, `None` if a free factor is involved.
fn arity(group: &Group) -> Option<usize> {
    match group {
        Group::FiniteCyclic(_) | Group::CayleyTable(_) => Some(1),
        Group::IntVector(d) => Some(*d),
        Group::DihedralFinite(_) | Group::DihedralInfinite => Some(2),
        Group::Heisenberg => Some(3),
        Group::Free(_) => None,
        Group::Product(l, r) => Some(arity(l)? + arity(r)?),
    }
}

fn components(group: &Group, g: &Element, out: &mut Vec<String>) {
    match (group, g) {
        (_, Element::Cyclic(x)) => out.push(x.to_string()),
        (_, Element::Vector(v)) => out.extend(v.iter().map(|x| x.to_string())),
        (_, Element::Dihedral { rot, flip }) => {
            out.push(rot.to_string());
            out.push(if *flip { "1" } else { "0" }.to_string());
        }
        (_, Element::Heisenberg(t)) => out.extend(t.iter().map(|x| x.to_string())),
        (Group::CayleyTable(t), Element::Table(i)) if *i < t.size() => out.push(t.name(*i).to_string()),
        (_, Element::Table(i)) => out.push(format!("#{i}")),
        (Group::Product(l, r), Element::Pair(a, b)) => {
            components(l, a, out);
            components(r, b, out);
        }
        (_, other) => out.push(format!("{other:?}")),
    }
}

fn format_free(w: &[i32]) -> String {
    if w.is_empty() {
        return "e".to_string();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let letter = w[i];
        let mut run = 0i64;
        while i < w.len() && w[i] == letter {
            run += 1;
            i += 1;
        }
        let gen = letter.abs();
        let exp = run * letter.signum() as i64;
        if exp == 1 {
            parts.push(format!("x{gen}"));
        } else {
            parts.push(format!("x{gen}^{exp}"));
        }
    }
    parts.join("*")
}

pub(super) fn format_element(group: &Group, g: &Element) -> String {
    if let (Group::Free(_), Element::Free(w)) = (group, g) {
        return format_free(w);
    }
    match arity(group) {
        Some(n) => {
            let mut parts = Vec::with_capacity(n);
            components(group, g, &mut parts);
            if parts.len() == 1 && !matches!(group, Group::Product(..)) {
                parts.pop().unwrap()
            } else {
                format!("({})", parts.join(","))
            }
        }
        None => match (group, g) {
            (Group::Product(l, r), Element::Pair(a, b)) => {
                format!("<{}|{}>", format_element(l, a), format_element(r, b))
            }
            _ => format!("{g:?}"),
        },
    }
}

fn parse_big(s: &str) -> Result<BigInt> {
    s.trim()
        .parse()
        .map_err(|_| Error::parse(format!("expected an integer, got {s:?}")))
}

fn parse_free_word(k: usize, text: &str) -> Result<Element> {
    let t = text.trim();
    if t == "e" || t == "1" || t.is_empty() {
        return Ok(Element::Free(Vec::new()));
    }
    let mut word = Vec::new();
    for syl in t.split('*') {
        let syl = syl.trim();
        let rest = syl
            .strip_prefix('x')
            .ok_or_else(|| Error::parse(format!("free letter must look like x1, got {syl:?}")))?;
        let (gen, exp) = match rest.split_once('^') {
            Some((g, e)) => (
                g,
                e.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::parse(format!("bad exponent in {syl:?}")))?,
            ),
            None => (rest, 1),
        };
        let gen: usize = parse_uint(gen, "free letter index")?;
        if gen == 0 || gen > k {
            return Err(Error::domain(format!("letter x{gen} is not in F{k}")));
        }
        let letter = gen as i32 * exp.signum() as i32;
        for _ in 0..exp.unsigned_abs() {
            free_push(&mut word, letter);
        }
    }
    Ok(Element::Free(word))
}

fn build_from_components(group: &Group, parts: &[&str]) -> Result<Element> {
    let bad = || Error::parse(format!("wrong number of coordinates for {group}"));
    match group {
        Group::FiniteCyclic(q) => {
            let [x] = parts else { return Err(bad()) };
            let r = reduce_mod(&parse_big(x)?, *q);
            Ok(Element::Cyclic(r.to_u64().ok_or_else(bad)?))
        }
        Group::IntVector(d) => {
            if parts.len() != *d {
                return Err(bad());
            }
            Ok(Element::Vector(
                parts.iter().map(|p| parse_big(p)).collect::<Result<_>>()?,
            ))
        }
        Group::DihedralFinite(_) | Group::DihedralInfinite => {
            let [k, e] = parts else { return Err(bad()) };
            let mut rot = parse_big(k)?;
            if let Group::DihedralFinite(n) = group {
                rot = reduce_mod(&rot, *n);
            }
            let flip = match e.trim() {
                "0" => false,
                "1" => true,
                other => return Err(Error::parse(format!("reflection flag must be 0 or 1, got {other:?}"))),
            };
            Ok(Element::Dihedral { rot, flip })
        }
        Group::Heisenberg => {
            let [i, j, l] = parts else { return Err(bad()) };
            Ok(Element::Heisenberg([parse_big(i)?, parse_big(j)?, parse_big(l)?]))
        }
        Group::CayleyTable(t) => {
            let [x] = parts else { return Err(bad()) };
            let x = x.trim();
            if let Some(i) = t.index_of(x) {
                return Ok(Element::Table(i));
            }
            match x.trim_start_matches('#').parse::<usize>() {
                Ok(i) if i < t.size() => Ok(Element::Table(i)),
                _ => Err(Error::parse(format!("unknown table element {x:?}"))),
            }
        }
        Group::Product(l, r) => {
            let n = arity(l).ok_or_else(bad)?;
            if parts.len() < n {
                return Err(bad());
            }
            Ok(Element::pair(
                build_from_components(l, &parts[..n])?,
                build_from_components(r, &parts[n..])?,
            ))
        }
        Group::Free(_) => Err(bad()),
    }
}

pub fn parse_element(group: &Group, text: &str) -> Result<Element> {
    let t = text.trim();
    let el = match (group, arity(group)) {
        (Group::Free(k), _) => parse_free_word(*k, t)?,
        (Group::Product(l, r), None) => {
            let inner = strip_wrapping(t, '<', '>')
                .ok_or_else(|| Error::parse(format!("expected <left|right> for {group}")))?;
            let halves = split_top(inner, '|');
            let [a, b] = halves.as_slice() else {
                return Err(Error::parse(format!("expected <left|right>, got {t:?}")));
            };
            Element::pair(parse_element(l, a)?, parse_element(r, b)?)
        }
        (_, Some(n)) => {
            let parts: Vec<&str> = match strip_wrapping(t, '(', ')') {
                Some(inner) => split_top(inner, ','),
                None => vec![t],
            };
            if parts.len() != n {
                return Err(Error::parse(format!(
                    "{group} elements have {n} coordinates, got {t:?}"
                )));
            }
            build_from_components(group, &parts)?
        }
        _ => unreachable!("free factors handled above"),
    };
    group.check(&el)?;
    Ok(el)
}

/// Parses `[g1, g2, ...]` (brackets optional).
pub fn parse_element_list(group: &Group, text: &str) -> Result<Vec<Element>> {
    let t = text.trim();
    let inner = strip_wrapping(t, '[', ']').unwrap_or(t);
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top(inner, ',')
        .into_iter()
        .map(|item| parse_element(group, item))
        .collect()
}
