//! Plain-text edge lists: one `u v` pair per line, `#` comments, blank lines
//! ignored.
//!
//! Vertex ids in the file may be arbitrary non-negative integers; they are
//! compacted to `0..n` in ascending id order. A `# vertices N` directive (as
//! written by [`save_edge_list`]) keeps ids verbatim over `0..N`, which
//! preserves isolated vertices across a round trip.

use std::collections::BTreeSet;
use std::io::{BufRead, Write};

use super::Graph;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct LoadedGraph {
    pub graph: Graph,
    /// Original file id of every compacted vertex.
    pub original_ids: Vec<u64>,
}

pub fn load_edge_list<R: BufRead>(reader: R) -> Result<LoadedGraph> {
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    let mut declared: Option<u64> = None;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let body = line.trim();
        if let Some(comment) = body.strip_prefix('#') {
            let mut words = comment.split_whitespace();
            if words.next() == Some("vertices") {
                if let Some(Ok(n)) = words.next().map(str::parse::<u64>) {
                    declared = Some(n);
                }
            }
            continue;
        }
        if body.is_empty() {
            continue;
        }
        let mut fields = body.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<u64> {
            let tok = tok.ok_or_else(|| Error::Parse {
                line: lineno,
                message: "expected two vertex ids".into(),
            })?;
            tok.parse::<u64>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("`{tok}` is not a non-negative integer"),
            })
        };
        let u = parse(fields.next())?;
        let v = parse(fields.next())?;
        if fields.next().is_some() {
            return Err(Error::Parse {
                line: lineno,
                message: "expected exactly two vertex ids".into(),
            });
        }
        if u == v {
            return Err(Error::SelfLoop {
                line: lineno,
                vertex: u,
            });
        }
        pairs.push((u, v));
    }

    let max_id = pairs.iter().map(|&(u, v)| u.max(v)).max();
    let verbatim = match (declared, max_id) {
        (Some(n), Some(m)) => m < n,
        (Some(_), None) => true,
        _ => false,
    };
    let original_ids: Vec<u64> = if verbatim {
        (0..declared.unwrap()).collect()
    } else {
        let ids: BTreeSet<u64> = pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
        ids.into_iter().collect()
    };
    if original_ids.len() > u32::MAX as usize {
        return Err(Error::Size(format!("{} vertices", original_ids.len())));
    }
    let edges: Vec<(u32, u32)> = if verbatim {
        pairs.iter().map(|&(u, v)| (u as u32, v as u32)).collect()
    } else {
        let pos = |x: u64| original_ids.binary_search(&x).unwrap() as u32;
        pairs.iter().map(|&(u, v)| (pos(u), pos(v))).collect()
    };
    let graph = Graph::from_edges(original_ids.len(), edges)?;
    Ok(LoadedGraph {
        graph,
        original_ids,
    })
}

pub fn save_edge_list<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    writeln!(
        out,
        "# vertices {} edges {}",
        g.vertex_count(),
        g.edge_count()
    )?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(s: &str) -> Result<LoadedGraph> {
        load_edge_list(s.as_bytes())
    }

    #[test]
    fn two_edge_path() {
        let g = load("0 1\n1 2").unwrap().graph;
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.degrees(), vec![1, 2, 1]);
    }

    #[test]
    fn duplicates_collapse() {
        let g = load("0 1\n1 0\n0 1").unwrap().graph;
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn tadpole_degrees() {
        let g = load("0 1\n1 2\n2 0\n2 3\n").unwrap().graph;
        assert_eq!(g.degree_sequence(), vec![3, 2, 2, 1]);
    }

    #[test]
    fn sparse_ids_are_compacted() {
        let loaded = load("# comment\n\n100 7\n7 42\n").unwrap();
        assert_eq!(loaded.original_ids, vec![7, 42, 100]);
        assert_eq!(loaded.graph.degrees(), vec![2, 1, 1]);
    }

    #[test]
    fn malformed_lines_report_line_numbers() {
        match load("0 1\n1 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        match load("0 1\n\n2\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(load("0 1 2"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(load("-1 2"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn self_loop_rejected() {
        assert!(matches!(
            load("0 1\n3 3\n"),
            Err(Error::SelfLoop { line: 2, vertex: 3 })
        ));
    }

    #[test]
    fn save_keeps_isolated_vertices() {
        let g = Graph::from_edges(5, [(0, 3), (3, 4)]).unwrap();
        let mut buf = Vec::new();
        save_edge_list(&g, &mut buf).unwrap();
        let back = load_edge_list(buf.as_slice()).unwrap().graph;
        assert_eq!(back, g);
    }
}
