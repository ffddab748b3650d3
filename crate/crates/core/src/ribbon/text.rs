//! Text formats for ribbon graphs.
//!
//! ```text
//! v1: h1 h3 h2
//! v2: h4
//! edge e1 + : h1 h2
//! edge e2 - : h3 h4
//! ```
//!
//! or the bouquet shorthand
//!
//! ```text
//! bouquet: a b a b
//! signs: a=+ b=-
//! ```

use std::collections::HashMap;
use std::fmt;

use super::{Bouquet, RibbonGraph, Sign};
use crate::error::{Error, Result};
use crate::setsystem::GroundSet;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn split_colon(ln: usize, line: &str) -> Result<(&str, &str)> {
    line.split_once(':')
        .map(|(l, r)| (l.trim(), r.trim()))
        .ok_or_else(|| Error::parse(ln, 1, "expected ':'"))
}

fn parse_sign(ln: usize, s: &str) -> Result<Sign> {
    match s {
        "+" => Ok(Sign::Plus),
        "-" => Ok(Sign::Minus),
        other => Err(Error::parse(
            ln,
            1,
            format!("bad sign {other:?}, expected + or -"),
        )),
    }
}

pub(super) fn parse_bouquet(text: &str) -> Result<Bouquet> {
    let mut word: Option<(usize, Vec<&str>)> = None;
    let mut signs: Vec<(usize, &str, Sign)> = Vec::new();
    for (ln, line) in content_lines(text) {
        let (key, rest) = split_colon(ln, line)?;
        match key {
            "bouquet" if word.is_none() => word = Some((ln, rest.split_whitespace().collect())),
            "signs" => {
                for item in rest.split_whitespace() {
                    let (label, sign) = item.split_once('=').ok_or_else(|| {
                        Error::parse(ln, 1, format!("expected label=sign, got {item:?}"))
                    })?;
                    signs.push((ln, label, parse_sign(ln, sign)?));
                }
            }
            other => {
                return Err(Error::parse(
                    ln,
                    1,
                    format!("unexpected `{other}:` in bouquet"),
                ))
            }
        }
    }
    let (wl, word) = word.ok_or_else(|| Error::parse(1, 1, "expected `bouquet:` line"))?;
    let twisted: Vec<&str> = signs
        .iter()
        .filter(|s| s.2 == Sign::Minus)
        .map(|s| s.1)
        .collect();
    for &(ln, label, _) in &signs {
        if !word.contains(&label) {
            return Err(Error::parse(
                ln,
                1,
                format!("sign for unknown edge {label:?}"),
            ));
        }
    }
    Bouquet::new(&word, &twisted).map_err(|e| Error::parse(wl, 1, e.to_string()))
}

pub(super) fn parse_ribbon(text: &str) -> Result<RibbonGraph> {
    if content_lines(text).any(|(_, l)| l.starts_with("bouquet")) {
        let b = parse_bouquet(text)?;
        return Ok(b.to_ribbon());
    }
    let mut vertices: Vec<(usize, Vec<&str>)> = Vec::new();
    let mut labels = Vec::new();
    let mut signs = Vec::new();
    let mut half_ids: HashMap<&str, usize> = HashMap::new();
    for (ln, line) in content_lines(text) {
        let (head, rest) = split_colon(ln, line)?;
        let head_words: Vec<&str> = head.split_whitespace().collect();
        if head_words.first() == Some(&"edge") {
            let [_, label, sign] = head_words[..] else {
                return Err(Error::parse(ln, 1, "expected `edge LABEL SIGN : H1 H2`"));
            };
            let ends: Vec<&str> = rest.split_whitespace().collect();
            let [h0, h1] = ends[..] else {
                return Err(Error::parse(ln, 1, "an edge needs exactly two half-edges"));
            };
            let e = labels.len();
            for (k, h) in [h0, h1].into_iter().enumerate() {
                if half_ids.insert(h, 2 * e + k).is_some() {
                    return Err(Error::parse(
                        ln,
                        1,
                        format!("half-edge {h:?} used by two edges"),
                    ));
                }
            }
            labels.push(label.to_string());
            signs.push(parse_sign(ln, sign)?);
        } else if head_words.len() == 1 {
            vertices.push((ln, rest.split_whitespace().collect()));
        } else {
            return Err(Error::parse(ln, 1, format!("unrecognised line {line:?}")));
        }
    }
    let mut rotations = Vec::with_capacity(vertices.len());
    for (ln, names) in vertices {
        let rot = names
            .iter()
            .map(|h| {
                half_ids.get(h).copied().ok_or_else(|| {
                    Error::parse(ln, 1, format!("half-edge {h:?} belongs to no edge"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rotations.push(rot);
    }
    let edges = GroundSet::new(labels).map_err(|e| Error::parse(1, 1, e.to_string()))?;
    let g = RibbonGraph::build(rotations, edges, signs)?;
    if g.components() != 1 {
        return Err(Error::Disconnected);
    }
    Ok(g)
}

fn half_name(g: &RibbonGraph, h: usize) -> String {
    format!("{}.{}", g.edges().label(h / 2), h % 2)
}

pub(super) fn write_ribbon(g: &RibbonGraph, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (v, rot) in g.rotations().iter().enumerate() {
        let names: Vec<String> = rot.iter().map(|&h| half_name(g, h)).collect();
        write!(f, "v{}:", v + 1)?;
        for n in names {
            write!(f, " {n}")?;
        }
        writeln!(f)?;
    }
    for e in 0..g.num_edges() {
        writeln!(
            f,
            "edge {} {} : {} {}",
            g.edges().label(e),
            g.sign(e).symbol(),
            half_name(g, 2 * e),
            half_name(g, 2 * e + 1)
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rotation_system() {
        let g = RibbonGraph::parse("v1: h1 h3 h2\nv2: h4\nedge e1 + : h1 h2\nedge e2 - : h3 h4\n")
            .unwrap();
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.num_edges(), 2);
        assert_eq!(g.rotations()[0], vec![0, 2, 1]);
        assert_eq!(g.signs(), &[Sign::Plus, Sign::Minus]);
        let again = RibbonGraph::parse(&g.to_string()).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn parses_bouquet_shorthand() {
        let g = RibbonGraph::parse("bouquet: a b a b\nsigns: a=+ b=-").unwrap();
        assert_eq!(g.num_vertices(), 1);
        assert_eq!(g.signs(), &[Sign::Plus, Sign::Minus]);
        let b = Bouquet::parse("bouquet: a b a b").unwrap();
        assert_eq!(b.to_string().parse::<String>().unwrap(), "bouquet: a b a b");
    }

    #[test]
    fn reports_errors() {
        assert!(matches!(
            RibbonGraph::parse("v1: h1\nedge e + : h1 h2"),
            Err(Error::InvalidRibbonGraph(_))
        ));
        assert!(matches!(
            RibbonGraph::parse("v1: h1 h9\nedge e + : h1 h2"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            RibbonGraph::parse("v1: h1 h2\nedge e * : h1 h2"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            RibbonGraph::parse("v1: h1 h2\nv2:\nedge e + : h1 h2"),
            Err(Error::Disconnected)
        ));
        assert!(matches!(
            Bouquet::parse("bouquet: a b a\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            Bouquet::parse("bouquet: a a\nsigns: q=-"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
