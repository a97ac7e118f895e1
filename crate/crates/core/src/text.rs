//! Plain-text graph exchange format.
//!
//! Line 1: `r n₁ n₂ … n_r`. Every following non-blank, non-comment line is
//! one edge, `p₁ i₁ p₂ i₂` with 0-based part/index coordinates. `#` starts
//! a comment. Writers emit edges sorted lexicographically so output is
//! byte-stable.

use crate::error::{Error, Result};
use crate::graph::{MultipartiteGraph, VertexId};
use std::path::Path;

/// Render a graph in the text format.
pub fn write_graph(g: &MultipartiteGraph) -> String {
    let mut out = String::new();
    out.push_str(&g.part_count().to_string());
    for &s in g.part_sizes() {
        out.push(' ');
        out.push_str(&s.to_string());
    }
    out.push('\n');
    for (u, v) in g.edges() {
        out.push_str(&format!("{} {} {} {}\n", u.part, u.index, v.part, v.index));
    }
    out
}

/// Parse the text format. Duplicate edge lines are tolerated; an edge
/// inside a single part is a partiteness error.
pub fn parse_graph(input: &str) -> Result<MultipartiteGraph> {
    let mut graph: Option<MultipartiteGraph> = None;
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut sizes: Vec<usize> = Vec::new();

    for (lineno, raw) in input.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parse_num = |s: &str| -> Result<usize> {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line: lineno + 1,
                msg: format!("expected a non-negative integer, got {s:?}"),
            })
        };
        if graph.is_none() {
            // header: r followed by r part sizes
            let r = parse_num(fields[0])?;
            if r == 0 || fields.len() != r + 1 {
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: format!(
                        "header must be `r n1 .. nr`; r={r} but {} sizes follow",
                        fields.len() - 1
                    ),
                });
            }
            sizes = fields[1..].iter().map(|s| parse_num(s)).collect::<Result<_>>()?;
            graph = Some(MultipartiteGraph::edgeless(&sizes)?);
            continue;
        }
        if fields.len() != 4 {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: format!("edge line needs 4 fields `p1 i1 p2 i2`, got {}", fields.len()),
            });
        }
        let nums: Vec<usize> = fields.iter().map(|s| parse_num(s)).collect::<Result<_>>()?;
        let (u, v) = (VertexId::new(nums[0], nums[1]), VertexId::new(nums[2], nums[3]));
        for w in [u, v] {
            if w.part >= sizes.len() || w.index >= sizes[w.part] {
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: format!("vertex {w} outside declared part sizes"),
                });
            }
        }
        if u.part == v.part {
            return Err(Error::Partiteness(format!(
                "line {}: edge {u}-{v} joins two vertices of part {}",
                lineno + 1,
                u.part
            )));
        }
        edges.push((u, v));
    }

    match graph {
        Some(_) => MultipartiteGraph::from_edges(&sizes, edges),
        None => Err(Error::Parse {
            line: 0,
            msg: "empty input: missing header line".into(),
        }),
    }
}

pub fn write_graph_file(g: &MultipartiteGraph, path: &Path) -> Result<()> {
    std::fs::write(path, write_graph(g))?;
    Ok(())
}

pub fn read_graph_file(path: &Path) -> Result<MultipartiteGraph> {
    parse_graph(&std::fs::read_to_string(path)?)
}
