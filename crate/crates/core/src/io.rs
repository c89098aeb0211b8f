//! PACE 2017 `.gr` graph and `.td` tree decomposition formats.
//!
//! Both use 1-based vertex ids on disk and 0-based ids in memory. Comment
//! lines start with `c`.

use std::fmt::Write as _;

use crate::decomposition::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub(crate) fn is_comment(line: &str) -> bool {
    line == "c" || line.starts_with("c ") || line.starts_with("c\t")
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !is_comment(l))
        .map(|(i, l)| (i, l.split_whitespace().collect()))
}

fn number(line: usize, field: &str) -> Result<usize> {
    field
        .parse()
        .map_err(|_| parse_err(line, format!("`{field}` is not a non-negative integer")))
}

fn one_based(line: usize, field: &str, bound: usize, what: &str) -> Result<usize> {
    let v = number(line, field)?;
    if v == 0 || v > bound {
        return Err(parse_err(line, format!("{what} {v} outside 1..={bound}")));
    }
    Ok(v - 1)
}

pub fn read_gr(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hl, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing `p tw` header"))?;
    if header.len() != 4 || header[0] != "p" || header[1] != "tw" {
        return Err(parse_err(hl, "expected `p tw <n> <m>`"));
    }
    let n = number(hl, header[2])?;
    let m = number(hl, header[3])?;
    let mut edges = Vec::with_capacity(m);
    for (ln, fields) in lines {
        if fields.len() != 2 {
            return Err(parse_err(ln, "expected an edge `u v`"));
        }
        let u = one_based(ln, fields[0], n, "vertex")?;
        let v = one_based(ln, fields[1], n, "vertex")?;
        edges.push((ln, u, v));
    }
    if edges.len() != m {
        return Err(parse_err(
            hl,
            format!("header announces {m} edges, found {}", edges.len()),
        ));
    }
    let mut seen = std::collections::HashSet::new();
    for &(ln, u, v) in &edges {
        if u == v {
            return Err(parse_err(ln, format!("self-loop at vertex {}", u + 1)));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(parse_err(ln, format!("repeated edge {} {}", u + 1, v + 1)));
        }
    }
    Graph::from_edges(n, edges.into_iter().map(|(_, u, v)| (u, v)))
}

pub fn write_gr(g: &Graph) -> String {
    let mut out = format!("p tw {} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", u + 1, v + 1);
    }
    out
}

/// Parses a `.td` file. Returns the decomposition and the vertex count
/// announced in the header.
pub fn read_td(text: &str) -> Result<(TreeDecomposition, usize)> {
    let mut lines = content_lines(text);
    let (hl, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing `s td` header"))?;
    if header.len() != 5 || header[0] != "s" || header[1] != "td" {
        return Err(parse_err(hl, "expected `s td <bags> <max_bag_size> <n>`"));
    }
    let bag_count = number(hl, header[2])?;
    let max_bag = number(hl, header[3])?;
    let n = number(hl, header[4])?;
    let mut bags: Vec<Option<VertexSet>> = vec![None; bag_count];
    let mut tree_edges = Vec::new();
    for (ln, fields) in lines {
        if fields[0] == "b" {
            if fields.len() < 2 {
                return Err(parse_err(ln, "bag line without an id"));
            }
            let id = one_based(ln, fields[1], bag_count, "bag")?;
            if bags[id].is_some() {
                return Err(parse_err(ln, format!("bag {} defined twice", id + 1)));
            }
            let bag = fields[2..]
                .iter()
                .map(|f| one_based(ln, f, n, "vertex"))
                .collect::<Result<VertexSet>>()?;
            if bag.len() > max_bag {
                return Err(parse_err(
                    ln,
                    format!("bag larger than announced maximum {max_bag}"),
                ));
            }
            bags[id] = Some(bag);
        } else {
            if fields.len() != 2 {
                return Err(parse_err(ln, "expected a tree edge `i j`"));
            }
            let a = one_based(ln, fields[0], bag_count, "bag")?;
            let b = one_based(ln, fields[1], bag_count, "bag")?;
            tree_edges.push((a, b));
        }
    }
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| parse_err(hl, format!("bag {} never defined", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    Ok((TreeDecomposition::new(bags, tree_edges)?, n))
}

pub fn write_td(td: &TreeDecomposition, n: usize) -> String {
    let mut out = format!("s td {} {} {}\n", td.bag_count(), td.max_bag_size(), n);
    for (i, bag) in td.bags().iter().enumerate() {
        let _ = write!(out, "b {}", i + 1);
        for v in bag {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    let mut edges = td.tree_edges().to_vec();
    edges.sort_unstable();
    for (a, b) in edges {
        let _ = writeln!(out, "{} {}", a + 1, b + 1);
    }
    out
}

/// An ordering as one line of 1-based positions, listed in vertex-id order.
pub fn write_ordering(positions: &[usize]) -> String {
    let fields: Vec<String> = positions.iter().map(usize::to_string).collect();
    format!("{}\n", fields.join(" "))
}

pub fn read_ordering(text: &str) -> Result<Vec<usize>> {
    let mut lines = content_lines(text);
    let Some((ln, fields)) = lines.next() else {
        return Ok(Vec::new());
    };
    if let Some((extra, _)) = lines.next() {
        return Err(parse_err(extra, "ordering must be a single line"));
    }
    fields.iter().map(|f| number(ln, f)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, path};

    #[test]
    fn gr_header_and_edges() {
        let text = write_gr(&cycle(4).unwrap());
        assert_eq!(text, "p tw 4 4\n1 2\n1 4\n2 3\n3 4\n");
        assert_eq!(read_gr(&text).unwrap(), cycle(4).unwrap());
    }

    #[test]
    fn gr_rejects_bad_input() {
        assert!(matches!(
            read_gr("p tw 2 1\n1 3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            read_gr("p tw 2 2\n1 2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            read_gr("p tw 2 2\n1 2\n2 1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            read_gr("p tw 2 1\n1 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(read_gr("c only\n"), Err(Error::Parse { .. })));
        let g = read_gr("c a comment\np tw 3 2\nc mid\n1 2\n2 3\n").unwrap();
        assert_eq!(g, path(3).unwrap());
    }

    #[test]
    fn td_round_trip() {
        let td = TreeDecomposition::new(
            vec![[0, 1].into(), [1, 2].into(), [2, 3].into()],
            vec![(1, 0), (1, 2)],
        )
        .unwrap();
        let text = write_td(&td, 4);
        assert_eq!(text, "s td 3 2 4\nb 1 1 2\nb 2 2 3\nb 3 3 4\n1 2\n2 3\n");
        let (back, n) = read_td(&text).unwrap();
        assert_eq!(n, 4);
        assert_eq!(back, td);
    }

    #[test]
    fn td_errors() {
        assert!(matches!(
            read_td("s td 2 2 3\nb 1 1 2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            read_td("s td 2 2 3\nb 1 1 2\nb 2 2 3\n"),
            Err(Error::Structural(_))
        ));
        assert!(matches!(
            read_td("s td 1 1 3\nb 1 1 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn ordering_line() {
        assert_eq!(write_ordering(&[2, 1, 3]), "2 1 3\n");
        assert_eq!(read_ordering("2 1 3\n").unwrap(), vec![2, 1, 3]);
        assert!(read_ordering("1\n2\n").is_err());
    }
}
