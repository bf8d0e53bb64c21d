//! Text and JSON encodings of solution files.
//!
//! ```text
//! ybe-solution v1
//! n 3
//! names a b c            # optional
//! map 3 1 -> 2 3         # r(x3, x1) = (x2, x3); unlisted pairs are fixed
//! coef 3 1 -> 2 3 : 2/3  # optional scalar on R(x3 ⊗ x1)
//! ```

use serde::{Deserialize, Serialize};

use super::{Pair, SolutionMap};
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Rational};

pub const HEADER: &str = "ybe-solution v1";

/// A `coef` line: `R(x_i ⊗ x_j) = value · x_k ⊗ x_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientLine {
    pub line: usize,
    pub pair: Pair,
    pub image: Pair,
    pub value: Rational,
}

/// Everything a solution file can carry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionFile {
    pub solution: SolutionMap,
    pub coefficients: Vec<CoefficientLine>,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let content = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in content.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token { text: &content[s..i], column: s + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &content[s..], column: s + 1 });
    }
    out
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, column, message: message.into() }
}

fn index(tok: &Token<'_>, line: usize, n: usize) -> Result<usize> {
    let k: usize =
        tok.text.parse().map_err(|_| syntax(line, tok.column, format!("expected an index, found `{}`", tok.text)))?;
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange { line, index: k, n });
    }
    Ok(k - 1)
}

/// Parses `i j -> k l` starting at `toks[0]`.
fn mapping(toks: &[Token<'_>], line: usize, n: usize, end_column: usize) -> Result<(Pair, Pair)> {
    if toks.len() < 5 {
        let col = toks.get(toks.len().wrapping_sub(1)).map_or(end_column, |t| t.column + t.text.len());
        return Err(syntax(line, col, "expected `<i> <j> -> <k> <l>`"));
    }
    if toks[2].text != "->" {
        return Err(syntax(line, toks[2].column, format!("expected `->`, found `{}`", toks[2].text)));
    }
    let i = index(&toks[0], line, n)?;
    let j = index(&toks[1], line, n)?;
    let k = index(&toks[3], line, n)?;
    let l = index(&toks[4], line, n)?;
    Ok(((i, j), (k, l)))
}

/// Parses a solution file, keeping any coefficient lines.
pub fn parse_solution_file(text: &str) -> Result<SolutionFile> {
    let mut header_seen = false;
    let mut n: Option<usize> = None;
    let mut names: Option<Vec<String>> = None;
    let mut entries: Vec<Option<Pair>> = Vec::new();
    let mut coefficients = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let toks = tokenize(raw);
        let Some(first) = toks.first() else { continue };
        if !header_seen {
            let joined: Vec<&str> = toks.iter().map(|t| t.text).collect();
            if joined.join(" ") != HEADER {
                return Err(syntax(line, first.column, format!("expected header `{HEADER}`")));
            }
            header_seen = true;
            continue;
        }
        match first.text {
            "n" => {
                if n.is_some() {
                    return Err(syntax(line, first.column, "`n` given twice"));
                }
                let Some(tok) = toks.get(1) else {
                    return Err(syntax(line, first.column + 1, "expected the size after `n`"));
                };
                let value: usize = tok.text.parse().map_err(|_| {
                    syntax(line, tok.column, format!("expected a positive integer, found `{}`", tok.text))
                })?;
                if value == 0 {
                    return Err(syntax(line, tok.column, "n must be positive"));
                }
                if let Some(extra) = toks.get(2) {
                    return Err(syntax(line, extra.column, "unexpected token"));
                }
                n = Some(value);
                entries = vec![None; value * value];
            }
            "names" | "map" | "coef" => {
                let Some(size) = n else {
                    return Err(syntax(line, first.column, format!("`{}` before `n`", first.text)));
                };
                match first.text {
                    "names" => {
                        if toks.len() - 1 != size {
                            return Err(syntax(
                                line,
                                first.column,
                                format!("expected {size} names, found {}", toks.len() - 1),
                            ));
                        }
                        names = Some(toks[1..].iter().map(|t| t.text.to_string()).collect());
                    }
                    "map" => {
                        let (from, to) = mapping(&toks[1..], line, size, raw.len() + 1)?;
                        if let Some(extra) = toks.get(6) {
                            return Err(syntax(line, extra.column, "unexpected token"));
                        }
                        let slot = &mut entries[from.0 * size + from.1];
                        if slot.is_some() {
                            return Err(Error::DuplicateMapping { line, pair: from });
                        }
                        *slot = Some(to);
                    }
                    _ => {
                        let (from, to) = mapping(&toks[1..], line, size, raw.len() + 1)?;
                        let colon = toks.get(6);
                        let value_tok = toks.get(7);
                        match (colon, value_tok) {
                            (Some(c), Some(v)) if c.text == ":" => {
                                let value = parse_rational(v.text).ok_or_else(|| {
                                    syntax(line, v.column, format!("expected a rational `p/q`, found `{}`", v.text))
                                })?;
                                if let Some(extra) = toks.get(8) {
                                    return Err(syntax(line, extra.column, "unexpected token"));
                                }
                                coefficients.push(CoefficientLine { line, pair: from, image: to, value });
                            }
                            _ => return Err(syntax(line, raw.len() + 1, "expected `: <p>/<q>`")),
                        }
                    }
                }
            }
            other => return Err(syntax(line, first.column, format!("unknown directive `{other}`"))),
        }
    }

    if !header_seen {
        return Err(syntax(1, 1, format!("missing header `{HEADER}`")));
    }
    let Some(n) = n else {
        return Err(syntax(text.lines().count().max(1), 1, "missing `n` line"));
    };
    let table: Vec<Pair> = entries.into_iter().enumerate().map(|(u, e)| e.unwrap_or((u / n, u % n))).collect();
    let mut solution = SolutionMap::new(n, table)?;
    if let Some(names) = names {
        solution = solution.with_names(names)?;
    }
    Ok(SolutionFile { solution, coefficients })
}

/// Parses a solution file; pairs not listed are fixed points of `r`.
pub fn parse_solution(text: &str) -> Result<SolutionMap> {
    parse_solution_file(text).map(|f| f.solution)
}

/// Text form: fixed points are omitted, moved pairs listed in order.
pub fn serialize(s: &SolutionMap) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    out.push_str(&format!("n {}\n", s.n()));
    if let Some(names) = s.names() {
        out.push_str("names ");
        out.push_str(&names.join(" "));
        out.push('\n');
    }
    let n = s.n();
    for u in 0..n * n {
        let (x, y) = (u / n, u % n);
        let (a, b) = s.get(x, y);
        if (a, b) != (x, y) {
            out.push_str(&format!("map {} {} -> {} {}\n", x + 1, y + 1, a + 1, b + 1));
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct JsonSolution {
    n: usize,
    names: Option<Vec<String>>,
    map: Vec<[usize; 4]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    coef: Vec<(usize, usize, usize, usize, String)>,
}

pub fn serialize_json(s: &SolutionMap) -> serde_json::Value {
    let n = s.n();
    let map = (0..n * n)
        .filter_map(|u| {
            let (x, y) = (u / n, u % n);
            let (a, b) = s.get(x, y);
            ((a, b) != (x, y)).then_some([x + 1, y + 1, a + 1, b + 1])
        })
        .collect();
    serde_json::to_value(JsonSolution { n, names: s.names().map(<[String]>::to_vec), map, coef: Vec::new() })
        .expect("plain data serializes")
}

/// Reads the JSON rendering (`n`, `names`, `map` as 1-based 4-tuples, optional `coef`).
pub fn parse_solution_json(text: &str) -> Result<SolutionFile> {
    let js: JsonSolution = serde_json::from_str(text)?;
    let n = js.n;
    if n == 0 {
        return Err(Error::SizeMismatch("n must be positive".into()));
    }
    let check = |k: usize| -> Result<usize> {
        if k == 0 || k > n {
            Err(Error::IndexOutOfRange { line: 0, index: k, n })
        } else {
            Ok(k - 1)
        }
    };
    let mut entries: Vec<Option<Pair>> = vec![None; n * n];
    for [i, j, k, l] in js.map {
        let (i, j, k, l) = (check(i)?, check(j)?, check(k)?, check(l)?);
        if entries[i * n + j].replace((k, l)).is_some() {
            return Err(Error::DuplicateMapping { line: 0, pair: (i, j) });
        }
    }
    let table = entries.into_iter().enumerate().map(|(u, e)| e.unwrap_or((u / n, u % n))).collect();
    let mut solution = SolutionMap::new(n, table)?;
    if let Some(names) = js.names {
        solution = solution.with_names(names)?;
    }
    let mut coefficients = Vec::new();
    for (i, j, k, l, v) in js.coef {
        let value = parse_rational(&v).ok_or_else(|| Error::Syntax {
            line: 0,
            column: 0,
            message: format!("bad rational `{v}`"),
        })?;
        coefficients.push(CoefficientLine {
            line: 0,
            pair: (check(i)?, check(j)?),
            image: (check(k)?, check(l)?),
            value,
        });
    }
    Ok(SolutionFile { solution, coefficients })
}
