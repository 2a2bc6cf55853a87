//! cdd-style `.ine` / `.ext` files with two extension lines.
//!
//! ```text
//! * comment
//! interval
//! H-representation
//! linearity 1 3
//! strict 1 2
//! begin
//!  3 2 integer
//!  -1 1
//!  3 -1
//!  0 1
//! end
//! ```
//!
//! H rows are `b a1 .. an` for `b + a·x >= 0`; `linearity` marks
//! equalities and `strict` strict inequalities. V rows are `d x1 .. xn`:
//! a point `x / d` when `d > 0`, a ray when `d = 0`; `linearity` marks
//! lines and `closure` turns points into closure points. Indices are
//! 1-based rows of the `begin` block. Only the `integer` number type is
//! read.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::arith::HomVec;
use crate::error::{Error, Result};
use crate::geom::{ConKind, Constraint, GenKind, Generator};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Body {
    H(Vec<Constraint>),
    V(Vec<Generator>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CddFile {
    pub name: Option<String>,
    pub dim: usize,
    pub body: Body,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Parses `k i1 .. ik` after a marker keyword.
fn parse_index_list(line: usize, rest: &[&str]) -> Result<BTreeSet<usize>> {
    let nums = rest
        .iter()
        .map(|t| t.parse::<usize>().map_err(|_| perr(line, format!("bad index `{t}`"))))
        .collect::<Result<Vec<_>>>()?;
    let Some((&k, ids)) = nums.split_first() else {
        return Err(perr(line, "missing count"));
    };
    if k != ids.len() {
        return Err(perr(line, format!("count {k} but {} indices", ids.len())));
    }
    if ids.contains(&0) {
        return Err(perr(line, "indices are 1-based"));
    }
    Ok(ids.iter().copied().collect())
}

pub fn parse(text: &str) -> Result<CddFile> {
    let mut name = None;
    let mut kind: Option<bool> = None; // true for H
    let mut linearity = BTreeSet::new();
    let mut marked = BTreeSet::new();
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let mut began = false;
    for (no, l) in lines.by_ref() {
        if l.is_empty() || l.starts_with('*') {
            continue;
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks[0] {
            "H-representation" => kind = Some(true),
            "V-representation" => kind = Some(false),
            "linearity" => linearity = parse_index_list(no, &toks[1..])?,
            "strict" if kind != Some(false) => marked = parse_index_list(no, &toks[1..])?,
            "closure" if kind != Some(true) => marked = parse_index_list(no, &toks[1..])?,
            "strict" | "closure" => return Err(perr(no, format!("`{}` does not fit this representation", toks[0]))),
            "begin" => {
                began = true;
                break;
            }
            _ if kind.is_none() && name.is_none() => name = Some(l.to_string()),
            other => return Err(perr(no, format!("unexpected `{other}`"))),
        }
    }
    if !began {
        return Err(perr(text.lines().count().max(1), "missing `begin`"));
    }
    let is_h = kind.unwrap_or(true);

    let (no, header) = lines
        .by_ref()
        .find(|(_, l)| !l.is_empty() && !l.starts_with('*'))
        .ok_or_else(|| perr(0, "missing size line"))?;
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() != 3 {
        return Err(perr(no, "size line must be `rows cols type`"));
    }
    let m: usize = h[0].parse().map_err(|_| perr(no, "bad row count"))?;
    let n: usize = h[1].parse().map_err(|_| perr(no, "bad column count"))?;
    if h[2] != "integer" {
        return Err(perr(no, format!("unsupported number type `{}`", h[2])));
    }
    if n < 2 {
        return Err(perr(no, "space dimension must be positive"));
    }
    if let Some(&bad) = linearity.iter().chain(&marked).find(|&&i| i > m) {
        return Err(perr(no, format!("index {bad} beyond {m} rows")));
    }
    if let Some(&both) = linearity.intersection(&marked).next() {
        return Err(perr(no, format!("row {both} marked twice")));
    }

    let mut cons = Vec::new();
    let mut gens = Vec::new();
    let mut rows_seen = 0;
    let mut ended = false;
    for (no, l) in lines.by_ref() {
        if l.is_empty() || l.starts_with('*') {
            continue;
        }
        if l == "end" {
            ended = true;
            break;
        }
        rows_seen += 1;
        if rows_seen > m {
            return Err(perr(no, format!("more than {m} rows")));
        }
        let coeffs = l
            .split_whitespace()
            .map(|t| t.parse::<BigInt>().map_err(|_| perr(no, format!("bad integer `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() != n {
            return Err(perr(no, format!("expected {n} entries, found {}", coeffs.len())));
        }
        let row = HomVec::new(coeffs);
        let wrap = |e: Error| perr(no, e.to_string());
        if is_h {
            let kind = if linearity.contains(&rows_seen) {
                ConKind::Equality
            } else if marked.contains(&rows_seen) {
                ConKind::Strict
            } else {
                ConKind::NonStrict
            };
            cons.push(Constraint::new(kind, row).map_err(wrap)?);
        } else {
            let kind = if linearity.contains(&rows_seen) {
                GenKind::Line
            } else if row.slot0() == &BigInt::from(0) {
                if marked.contains(&rows_seen) {
                    return Err(perr(no, "only point rows can be closure points"));
                }
                GenKind::Ray
            } else if marked.contains(&rows_seen) {
                GenKind::ClosurePoint
            } else {
                GenKind::Point
            };
            gens.push(Generator::new(kind, row).map_err(wrap)?);
        }
    }
    if rows_seen != m {
        return Err(perr(0, format!("expected {m} rows, found {rows_seen}")));
    }
    if !ended {
        return Err(perr(text.lines().count(), "missing `end`"));
    }
    let body = if is_h { Body::H(cons) } else { Body::V(gens) };
    Ok(CddFile { name, dim: n - 1, body })
}

fn index_line(out: &mut String, key: &str, ids: &[usize]) {
    if !ids.is_empty() {
        let list: Vec<String> = ids.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(out, "{key} {} {}", ids.len(), list.join(" "));
    }
}

pub fn emit(file: &CddFile) -> String {
    let mut out = String::new();
    if let Some(name) = &file.name {
        let _ = writeln!(out, "{name}");
    }
    let rows: Vec<&HomVec> = match &file.body {
        Body::H(cs) => {
            out.push_str("H-representation\n");
            let pick = |k| (1..=cs.len()).filter(|&i| cs[i - 1].kind == k).collect::<Vec<_>>();
            index_line(&mut out, "linearity", &pick(ConKind::Equality));
            index_line(&mut out, "strict", &pick(ConKind::Strict));
            cs.iter().map(|c| &c.row).collect()
        }
        Body::V(gs) => {
            out.push_str("V-representation\n");
            let pick = |k| (1..=gs.len()).filter(|&i| gs[i - 1].kind == k).collect::<Vec<_>>();
            index_line(&mut out, "linearity", &pick(GenKind::Line));
            index_line(&mut out, "closure", &pick(GenKind::ClosurePoint));
            gs.iter().map(|g| &g.row).collect()
        }
    };
    out.push_str("begin\n");
    let _ = writeln!(out, " {} {} integer", rows.len(), file.dim + 1);
    for r in rows {
        let cells: Vec<String> = r.coeffs().iter().map(|c| c.to_string()).collect();
        let _ = writeln!(out, " {}", cells.join(" "));
    }
    out.push_str("end\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const INTERVAL: &str = "* half-open interval\ninterval\nH-representation\nstrict 1 2\nbegin\n 2 2 integer\n -1 1\n 3 -1\nend\n";

    #[test]
    fn strict_marker() {
        let f = parse(INTERVAL).unwrap();
        assert_eq!(f.name.as_deref(), Some("interval"));
        assert_eq!(f.dim, 1);
        assert_eq!(f.body, Body::H(vec![Constraint::ge(&[1], 1), Constraint::lt(&[1], 3)]));
        assert_eq!(parse(&emit(&f)).unwrap(), f);
    }

    #[test]
    fn v_rows() {
        let text = "V-representation\nlinearity 1 3\nclosure 1 1\nbegin\n 3 3 integer\n 1 3 0\n 0 1 0\n 0 0 1\nend\n";
        let f = parse(text).unwrap();
        let Body::V(gs) = &f.body else { panic!() };
        assert_eq!(gs[0], Generator::closure_point(&[3, 0], 1));
        assert_eq!(gs[1], Generator::ray(&[1, 0]));
        assert_eq!(gs[2], Generator::line(&[0, 1]));
        assert_eq!(parse(&emit(&f)).unwrap(), f);
    }

    #[test]
    fn malformed_inputs() {
        let bad = [
            ("H-representation\nbegin\n 1 2 rational\n 0 1\nend\n", 3),
            ("H-representation\nbegin\n 1 2 integer\n 0 1 2\nend\n", 4),
            ("H-representation\nbegin\n 1 2 integer\n 0 x\nend\n", 4),
            ("H-representation\nstrict 2 1\nbegin\n 1 2 integer\n 0 1\nend\n", 2),
            ("H-representation\nbegin\n 1 1 integer\n 0\nend\n", 3),
        ];
        for (text, line) in bad {
            match parse(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
        assert!(parse("H-representation\n").is_err());
    }
}
