//! Line-oriented text formats, one object per file.
//!
//! Blank lines and lines starting with `#` are ignored. Every other line is a
//! keyword followed by unsigned integers.
//!
//! ```text
//! sset <P>
//! sizes <|X_0|> … <|X_P|>
//! face <n> <i> <d_i of every n-simplex>       1 ≤ n ≤ P, 0 ≤ i ≤ n
//! degen <n> <i> <s_i of every n-simplex>      0 ≤ n < P, 0 ≤ i ≤ n
//! end
//!
//! category <objects>                          (or `relative <objects>`)
//! arrow <id> <dom> <cod>
//! identity <id of 1_0> … <id of 1_{n−1}>
//! comp <g> <f> <g∘f>
//! weq <ids>                                   (relative only, may repeat)
//! end
//!
//! scat <objects> <P>
//! units <unit vertex of hom(a,a), per object>
//! hom <a> <b>
//! <sset block>
//! comp <a> <b> <c> <p> <g∘f for f·|hom(b,c)_p| + g>
//! end
//! ```

use std::fmt::Write;

use thiserror::Error;

use crate::cat::{Arrow, FiniteCategory, RelativeCategory};
use crate::scat::FiniteSimplicialCategory;
use crate::simp::{from_facets, TruncatedSimplicialSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TextError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unexpected end of input")]
    Eof,
    #[error("tables rejected: {0}")]
    Tables(String),
}

struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    at: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Self { lines, at: 0 }
    }

    fn peek_keyword(&self) -> Option<&'a str> {
        self.lines.get(self.at).and_then(|(_, l)| l.split_whitespace().next())
    }

    /// The next line, split into its keyword and integer arguments.
    fn next(&mut self) -> Result<(usize, &'a str, Vec<usize>), TextError> {
        let &(line, text) = self.lines.get(self.at).ok_or(TextError::Eof)?;
        self.at += 1;
        let mut words = text.split_whitespace();
        let keyword = words.next().expect("nonempty line");
        let args = words
            .map(|w| w.parse().map_err(|_| TextError::Syntax { line, message: format!("`{w}` is not an unsigned integer") }))
            .collect::<Result<_, _>>()?;
        Ok((line, keyword, args))
    }

    fn expect(&mut self, keyword: &str, arity: Option<usize>) -> Result<(usize, Vec<usize>), TextError> {
        let (line, k, args) = self.next()?;
        if k != keyword {
            return Err(TextError::Syntax { line, message: format!("expected `{keyword}`, found `{k}`") });
        }
        if let Some(n) = arity {
            if args.len() != n {
                return Err(TextError::Syntax { line, message: format!("`{keyword}` takes {n} arguments") });
            }
        }
        Ok((line, args))
    }

    fn finish(&self) -> Result<(), TextError> {
        match self.lines.get(self.at) {
            None => Ok(()),
            Some(&(line, _)) => Err(TextError::Syntax { line, message: "trailing input".into() }),
        }
    }
}

fn join(xs: impl IntoIterator<Item = usize>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn syntax(line: usize, message: impl Into<String>) -> TextError {
    TextError::Syntax { line, message: message.into() }
}

pub fn write_simplicial_set(x: &TruncatedSimplicialSet) -> String {
    let mut out = String::new();
    let p = x.truncation();
    writeln!(out, "sset {p}").unwrap();
    writeln!(out, "sizes {}", join(x.sizes().iter().copied())).unwrap();
    for n in 1..=p {
        for i in 0..=n {
            writeln!(out, "face {n} {i} {}", join(x.face_table(n, i).iter().copied())).unwrap();
        }
    }
    for n in 0..p {
        for i in 0..=n {
            writeln!(out, "degen {n} {i} {}", join(x.degen_table(n, i).iter().copied())).unwrap();
        }
    }
    out.push_str("end\n");
    out
}

fn parse_simplicial_set(lines: &mut Lines) -> Result<TruncatedSimplicialSet, TextError> {
    let (_, head) = lines.expect("sset", Some(1))?;
    let p = head[0];
    let (line, sizes) = lines.expect("sizes", Some(p + 1))?;
    let mut faces: Vec<Vec<Vec<usize>>> = (0..=p).map(|n| vec![Vec::new(); if n == 0 { 0 } else { n + 1 }]).collect();
    let mut degens: Vec<Vec<Vec<usize>>> = (0..p).map(|n| vec![Vec::new(); n + 1]).collect();
    let mut seen = 0;
    loop {
        let (l, keyword, args) = lines.next()?;
        let table = match keyword {
            "end" => break,
            "face" | "degen" if args.len() >= 2 => {
                let (n, i) = (args[0], args[1]);
                let slot = if keyword == "face" {
                    faces.get_mut(n).and_then(|f| f.get_mut(i))
                } else {
                    degens.get_mut(n).and_then(|d| d.get_mut(i))
                };
                slot.ok_or_else(|| syntax(l, format!("no map `{keyword} {n} {i}` at truncation {p}")))?
            }
            _ => return Err(syntax(l, format!("unexpected `{keyword}` in a simplicial set"))),
        };
        *table = args[2..].to_vec();
        seen += 1;
    }
    let expected: usize = (1..=p).map(|n| n + 1).sum::<usize>() + (0..p).map(|n| n + 1).sum::<usize>();
    if seen != expected {
        return Err(syntax(line, format!("{seen} structure maps given, {expected} needed")));
    }
    TruncatedSimplicialSet::from_tables(sizes, faces, degens).map_err(|e| TextError::Tables(e.to_string()))
}

pub fn read_simplicial_set(text: &str) -> Result<TruncatedSimplicialSet, TextError> {
    let mut lines = Lines::new(text);
    let x = parse_simplicial_set(&mut lines)?;
    lines.finish()?;
    Ok(x)
}

fn write_category_body(out: &mut String, c: &FiniteCategory) {
    for (m, a) in c.arrows().iter().enumerate() {
        writeln!(out, "arrow {m} {} {}", a.dom, a.cod).unwrap();
    }
    writeln!(out, "identity {}", join(c.identities().iter().copied())).unwrap();
    for (g, f, gf) in c.composable_pairs() {
        if let Some(gf) = gf {
            writeln!(out, "comp {g} {f} {gf}").unwrap();
        }
    }
}

pub fn write_category(c: &FiniteCategory) -> String {
    let mut out = format!("category {}\n", c.n_objects());
    write_category_body(&mut out, c);
    out.push_str("end\n");
    out
}

pub fn write_relative_category(x: &RelativeCategory) -> String {
    let mut out = format!("relative {}\n", x.underlying.n_objects());
    write_category_body(&mut out, &x.underlying);
    writeln!(out, "weq {}", join(x.weq_ids())).unwrap();
    out.push_str("end\n");
    out
}

fn parse_category(lines: &mut Lines, header: &str) -> Result<(FiniteCategory, Vec<usize>), TextError> {
    let (_, head) = lines.expect(header, Some(1))?;
    let n = head[0];
    let mut arrows = Vec::new();
    let mut identity = None;
    let mut table = Vec::new();
    let mut weq = Vec::new();
    loop {
        let (l, keyword, args) = lines.next()?;
        match (keyword, args.len()) {
            ("end", 0) => break,
            ("arrow", 3) => {
                if args[0] != arrows.len() {
                    return Err(syntax(l, format!("arrow ids must be consecutive, expected {}", arrows.len())));
                }
                arrows.push(Arrow { dom: args[1], cod: args[2] });
            }
            ("identity", _) if identity.is_none() => identity = Some(args),
            ("comp", 3) => table.push((args[0], args[1], args[2])),
            ("weq", _) if header == "relative" => weq.extend(args),
            _ => return Err(syntax(l, format!("unexpected `{keyword}` with {} arguments", args.len()))),
        }
    }
    let identity = identity.ok_or_else(|| TextError::Tables("missing identity line".into()))?;
    let c = FiniteCategory::from_table(n, arrows, identity, table).map_err(|e| TextError::Tables(e.to_string()))?;
    if c.n_composable_pairs() > 0 && c.composable_pairs().any(|(_, _, gf)| gf.is_none()) {
        return Err(TextError::Tables("composition table is incomplete".into()));
    }
    if let Some(&bad) = weq.iter().find(|&&m| m >= c.n_morphisms()) {
        return Err(TextError::Tables(format!("weak equivalence {bad} out of range")));
    }
    Ok((c, weq))
}

pub fn read_category(text: &str) -> Result<FiniteCategory, TextError> {
    let mut lines = Lines::new(text);
    let (c, _) = parse_category(&mut lines, "category")?;
    lines.finish()?;
    Ok(c)
}

pub fn read_relative_category(text: &str) -> Result<RelativeCategory, TextError> {
    let mut lines = Lines::new(text);
    let (c, weq) = parse_category(&mut lines, "relative")?;
    lines.finish()?;
    Ok(RelativeCategory::new(c, weq))
}

pub fn write_simplicial_category(x: &FiniteSimplicialCategory) -> String {
    let n = x.n_objects();
    let p = x.truncation();
    let mut out = format!("scat {n} {p}\n");
    writeln!(out, "units {}", join((0..n).map(|a| x.unit_vertex(a)))).unwrap();
    for a in 0..n {
        for b in 0..n {
            writeln!(out, "hom {a} {b}").unwrap();
            out.push_str(&write_simplicial_set(x.hom(a, b)));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for q in 0..=p {
                    let (s1, s2) = (x.hom(a, b).size(q), x.hom(b, c).size(q));
                    let table = (0..s1 * s2).map(|fg| x.compose(a, b, c, q, fg / s2, fg % s2));
                    writeln!(out, "comp {a} {b} {c} {q} {}", join(table)).unwrap();
                }
            }
        }
    }
    out.push_str("end\n");
    out
}

pub fn read_simplicial_category(text: &str) -> Result<FiniteSimplicialCategory, TextError> {
    let mut lines = Lines::new(text);
    let (_, head) = lines.expect("scat", Some(2))?;
    let (n, p) = (head[0], head[1]);
    let (_, units) = lines.expect("units", Some(n))?;
    let mut homs = Vec::with_capacity(n * n);
    for ab in 0..n * n {
        let (l, args) = lines.expect("hom", Some(2))?;
        if args != [ab / n, ab % n] {
            return Err(syntax(l, format!("expected `hom {} {}`", ab / n, ab % n)));
        }
        let h = parse_simplicial_set(&mut lines)?;
        if h.truncation() != p {
            return Err(syntax(l, format!("hom truncated at {} instead of {p}", h.truncation())));
        }
        homs.push(h);
    }
    let mut comp = vec![vec![Vec::new(); p + 1]; n * n * n];
    while lines.peek_keyword() == Some("comp") {
        let (l, args) = lines.expect("comp", None)?;
        if args.len() < 4 || args[..3].iter().any(|&o| o >= n) || args[3] > p {
            return Err(syntax(l, "`comp a b c p` names no table"));
        }
        comp[(args[0] * n + args[1]) * n + args[2]][args[3]] = args[4..].to_vec();
    }
    lines.expect("end", Some(0))?;
    lines.finish()?;
    FiniteSimplicialCategory::new(n, homs, comp, units).map_err(|e| TextError::Tables(e.to_string()))
}

/// A facet list, one facet per line as vertex ids, read as the ordered
/// simplicial complex it generates, truncated at `p`.
pub fn read_facets(text: &str, p: usize) -> Result<TruncatedSimplicialSet, TextError> {
    let mut facets = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let facet = line
            .split_whitespace()
            .map(|w| w.parse().map_err(|_| syntax(i + 1, format!("`{w}` is not a vertex id"))))
            .collect::<Result<Vec<usize>, _>>()?;
        facets.push(facet);
    }
    Ok(from_facets(&facets, p).set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::RelativeCategory;
    use crate::simp::standard_simplex;

    #[test]
    fn simplex_round_trip() {
        let x = standard_simplex(2, 3).set;
        let text = write_simplicial_set(&x);
        assert!(text.starts_with("sset 3\nsizes 3 6 10 15\nface 1 0 "));
        assert_eq!(read_simplicial_set(&text).unwrap(), x);
    }

    #[test]
    fn category_round_trip() {
        let c = FiniteCategory::linear_order(2);
        assert_eq!(read_category(&write_category(&c)).unwrap(), c);
        let r = RelativeCategory::hat(2);
        assert_eq!(read_relative_category(&write_relative_category(&r)).unwrap(), r);
    }

    #[test]
    fn simplicial_category_round_trip() {
        let x = FiniteSimplicialCategory::preorder(2, 1, |a, b| a <= b);
        assert_eq!(read_simplicial_category(&write_simplicial_category(&x)).unwrap(), x);
    }

    #[test]
    fn malformed_input() {
        assert_eq!(read_simplicial_set(""), Err(TextError::Eof));
        let err = read_simplicial_set("sset 0\nsizes x\nend\n").unwrap_err();
        assert!(matches!(err, TextError::Syntax { line: 2, .. }));
        assert!(matches!(read_simplicial_set("sset 1\nsizes 1 1\nend\n"), Err(TextError::Syntax { .. })));
        assert!(matches!(read_simplicial_set("sset 0\nsizes 1\nend\nend\n"), Err(TextError::Syntax { line: 4, .. })));
        let bad = "category 1\narrow 0 0 0\nidentity 0\nend\n";
        assert!(matches!(read_category(bad), Err(TextError::Tables(_))));
    }

    #[test]
    fn facets_with_comments() {
        let x = read_facets("# boundary of a triangle\n0 1\n1 2\n\n0 2\n", 2).unwrap();
        assert_eq!(x.size(0), 3);
        assert_eq!(x.size(1), 3 + 3);
    }
}
