//! Plain-text graph files: a header `n d`, then `n` lines `id x y [z]`.

use std::fmt::Write as _;
use std::path::Path;

use super::graph::Node;
use crate::error::{Error, Result};

pub fn parse_graph(text: &str) -> Result<Vec<Node>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::Parse {
            line: hline,
            message: "header must be `n d`".into(),
        });
    }
    let n: usize = parse_field(fields[0], hline)?;
    let d: usize = parse_field(fields[1], hline)?;
    if !(2..=3).contains(&d) {
        return Err(Error::Parse {
            line: hline,
            message: format!("coordinate dimension must be 2 or 3, got {d}"),
        });
    }
    let mut nodes: Vec<Option<Node>> = vec![None; n];
    let mut count = 0;
    for (line, l) in lines {
        let fields: Vec<&str> = l.split_whitespace().collect();
        if fields.len() != d + 1 {
            return Err(Error::Parse {
                line,
                message: format!("expected {} fields, found {}", d + 1, fields.len()),
            });
        }
        let id: usize = parse_field(fields[0], line)?;
        if id >= n {
            return Err(Error::Parse {
                line,
                message: format!("node id {id} out of range 0..{n}"),
            });
        }
        if nodes[id].is_some() {
            return Err(Error::Parse {
                line,
                message: format!("duplicate node id {id}"),
            });
        }
        let coords = fields[1..]
            .iter()
            .map(|f| parse_field::<f64>(f, line))
            .collect::<Result<Vec<_>>>()?;
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::Parse {
                line,
                message: "non-finite coordinate".into(),
            });
        }
        nodes[id] = Some(Node::new(id, coords));
        count += 1;
    }
    if count != n {
        return Err(Error::Parse {
            line: hline,
            message: format!("header declares {n} nodes, found {count}"),
        });
    }
    Ok(nodes.into_iter().map(|n| n.expect("all ids present")).collect())
}

fn parse_field<T: std::str::FromStr>(s: &str, line: usize) -> Result<T> {
    s.parse().map_err(|_| Error::Parse {
        line,
        message: format!("cannot parse `{s}`"),
    })
}

pub fn read_graph_file(path: &Path) -> Result<Vec<Node>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("{}: {e}", path.display())))?;
    parse_graph(&text)
}

pub fn write_graph(nodes: &[Node]) -> String {
    let d = nodes.first().map_or(2, |n| n.coords.len());
    let mut out = format!("{} {}\n", nodes.len(), d);
    for node in nodes {
        let _ = write!(out, "{}", node.id);
        for c in &node.coords {
            let _ = write!(out, " {c}");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_two_and_three_dimensional_files() {
        let nodes = parse_graph("3 2\n0 0 0\n1 1.5 0\n2 0 2\n").unwrap();
        assert_eq!(nodes.len(), 3);
        assert_eq!(nodes[1].coords, vec![1.5, 0.0]);
        let nodes = parse_graph("2 3\n1 0 0 1\n0 1 1 1\n").unwrap();
        assert_eq!(nodes[0].coords, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn reports_the_offending_line() {
        let err = parse_graph("2 2\n0 0 0\n1 x 0\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                message: "cannot parse `x`".into()
            }
        );
        assert!(matches!(parse_graph("3 2\n0 0 0\n1 1 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph("2 2\n0 0 0\n0 1 1\n"), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn write_then_parse_preserves_nodes() {
        let nodes = vec![Node::new(0, vec![0.25, -1.0]), Node::new(1, vec![3.0, 4.5])];
        assert_eq!(parse_graph(&write_graph(&nodes)).unwrap(), nodes);
    }
}
