//! Text formats.
//!
//! Edge list: optional `#` comment lines, a header `p <n> <m>`, then `m`
//! lines `<u> <v>` with 0-based ids. Emulators use the header `e <n> <m>`
//! and lines `<u> <v> <w>`.

use std::fmt::Write as _;

use super::{Dist, Edge, EdgeSet, Emulator, Graph, Vertex};
use crate::error::{Error, Result};

struct Record<'a> {
    line: usize,
    fields: Vec<&'a str>,
}

fn records(document: &str) -> impl Iterator<Item = Record<'_>> {
    document.lines().enumerate().filter_map(|(i, raw)| {
        let text = raw.trim();
        if text.is_empty() || text.starts_with('#') {
            None
        } else {
            Some(Record {
                line: i + 1,
                fields: text.split_whitespace().collect(),
            })
        }
    })
}

fn parse_num<T: std::str::FromStr>(field: &str, line: usize, what: &str) -> Result<T> {
    field.parse().map_err(|_| Error::Parse {
        line,
        message: format!("invalid {what} `{field}`"),
    })
}

fn header(rec: Option<Record<'_>>, tag: &str) -> Result<(usize, usize)> {
    let rec = rec.ok_or_else(|| Error::Parse {
        line: 0,
        message: "missing header".into(),
    })?;
    if rec.fields.len() != 3 || rec.fields[0] != tag {
        return Err(Error::Parse {
            line: rec.line,
            message: format!("expected header `{tag} <n> <m>`"),
        });
    }
    let n = parse_num(rec.fields[1], rec.line, "vertex count")?;
    let m = parse_num(rec.fields[2], rec.line, "edge count")?;
    Ok((n, m))
}

fn endpoint(field: &str, line: usize, n: usize) -> Result<Vertex> {
    let id: u64 = parse_num(field, line, "vertex id")?;
    if id >= n as u64 {
        return Err(Error::Parse {
            line,
            message: format!("vertex {id} out of range (n = {n})"),
        });
    }
    Ok(id as Vertex)
}

/// Parses an edge-list document. Self-loops, duplicate edges and
/// out-of-range ids are rejected with the offending line number.
pub fn load_graph(document: &str) -> Result<Graph> {
    let mut recs = records(document);
    let (n, m) = header(recs.next(), "p")?;
    let mut edges = EdgeSet::new();
    let mut count = 0;
    for rec in recs {
        if rec.fields.len() != 2 {
            return Err(Error::Parse {
                line: rec.line,
                message: "expected `<u> <v>`".into(),
            });
        }
        let u = endpoint(rec.fields[0], rec.line, n)?;
        let v = endpoint(rec.fields[1], rec.line, n)?;
        if u == v {
            return Err(Error::Parse {
                line: rec.line,
                message: format!("self-loop on vertex {u}"),
            });
        }
        if !edges.insert(Edge::new(u, v)) {
            return Err(Error::Parse {
                line: rec.line,
                message: format!("duplicate edge ({u}, {v})"),
            });
        }
        count += 1;
    }
    if count != m {
        return Err(Error::Parse {
            line: 0,
            message: format!("header announces {m} edges, found {count}"),
        });
    }
    Ok(Graph::from_edge_set(n, &edges))
}

pub fn load_emulator(document: &str) -> Result<Emulator> {
    let mut recs = records(document);
    let (n, m) = header(recs.next(), "e")?;
    let mut h = Emulator::new(n);
    let mut count = 0;
    for rec in recs {
        if rec.fields.len() != 3 {
            return Err(Error::Parse {
                line: rec.line,
                message: "expected `<u> <v> <w>`".into(),
            });
        }
        let u = endpoint(rec.fields[0], rec.line, n)?;
        let v = endpoint(rec.fields[1], rec.line, n)?;
        let w: Dist = parse_num(rec.fields[2], rec.line, "weight")?;
        if h.weight(u, v).is_some() {
            return Err(Error::Parse {
                line: rec.line,
                message: format!("duplicate edge ({u}, {v})"),
            });
        }
        h.insert(u, v, w).map_err(|e| Error::Parse {
            line: rec.line,
            message: e.to_string(),
        })?;
        count += 1;
    }
    if count != m {
        return Err(Error::Parse {
            line: 0,
            message: format!("header announces {m} edges, found {count}"),
        });
    }
    Ok(h)
}

pub fn format_edge_list<'a, I>(n: usize, edges: I) -> String
where
    I: IntoIterator<Item = &'a Edge>,
    I::IntoIter: ExactSizeIterator,
{
    let edges = edges.into_iter();
    let mut out = String::new();
    writeln!(out, "p {} {}", n, edges.len()).unwrap();
    for e in edges {
        writeln!(out, "{} {}", e.u(), e.v()).unwrap();
    }
    out
}

pub fn format_emulator(h: &Emulator) -> String {
    let mut out = String::new();
    writeln!(out, "e {} {}", h.n(), h.m()).unwrap();
    for (e, w) in h.edges() {
        writeln!(out, "{} {} {}", e.u(), e.v(), w).unwrap();
    }
    out
}

impl Graph {
    pub fn to_edge_list(&self) -> String {
        format_edge_list(self.n(), &self.edge_set())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_path_and_cycle() {
        let g = load_graph("# a path\np 3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.neighbors(1), &[0, 2]);
        let c = load_graph("p 5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n").unwrap();
        assert_eq!(c.m(), 5);
        assert!(c.vertices().all(|v| c.degree(v) == 2));
    }

    #[test]
    fn reports_line_numbers() {
        match load_graph("p 2 1\n0 0\n") {
            Err(Error::Parse { line: 2, message }) => assert!(message.contains("self-loop")),
            other => panic!("unexpected {other:?}"),
        }
        match load_graph("p 3 2\n0 1\n1 0\n") {
            Err(Error::Parse { line: 3, message }) => assert!(message.contains("duplicate")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            load_graph("p 2 1\n0 7\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            load_graph("p 2 2\n0 1\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            load_graph("q 2 0\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            load_graph("p 2 1\n0 x\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn text_round_trip() {
        let g = crate::graph::petersen_graph();
        assert_eq!(load_graph(&g.to_edge_list()).unwrap(), g);

        let mut h = Emulator::from_graph(&crate::graph::path_graph(4));
        h.insert(0, 3, 3).unwrap();
        assert_eq!(load_emulator(&format_emulator(&h)).unwrap(), h);
    }
}
