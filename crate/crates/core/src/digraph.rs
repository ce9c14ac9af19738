//! Labeled digraphs with ordered edge blocks, plus their text and JSON formats.
//!
//! Edges carry the labels `1..=m` implicitly through their position in the
//! edge list. Blocks partition the label range into consecutive intervals;
//! edges of one block must land in distinct paths of any admissible
//! decomposition. A graph without block structure is stored as `m` singleton
//! blocks - the two presentations are indistinguishable through every
//! operation, since a singleton block constrains nothing.
//!
//! # Text format
//!
//! One edge per line, `tail head`, in label order. Optional directives:
//!
//! ```text
//! #vertices N     (before any edge; otherwise N = max vertex mentioned)
//! #block K        (K = 1, 2, ...; edges after it belong to block K)
//! ```
//!
//! If any `#block` directive appears, every edge must follow one. Files
//! without `#block` lines denote blockless graphs. Blank lines are ignored.
//! The same fields round-trip through a JSON object
//! `{"vertices": N, "edges": [[tail, head], ...], "blocks": [size, ...]}`
//! (`"blocks": null` for blockless graphs).

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::multiset::VertexMultiset;
use crate::perm::Permutation;
use crate::{Error, Result};

/// A directed edge. Loops (`tail == head`) are permitted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub tail: u32,
    pub head: u32,
}

impl Edge {
    pub fn new(tail: u32, head: u32) -> Self {
        Self { tail, head }
    }

    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

/// A digraph on vertices `1..=n` with edges labeled `1..=m` and an ordered
/// partition of the label range into consecutive blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledDigraph {
    n: u32,
    edges: Vec<Edge>,
    /// Half-open ranges of 0-based edge indices; consecutive and covering `0..m`.
    blocks: Vec<Range<usize>>,
}

impl LabeledDigraph {
    /// A blockless graph (stored as singleton blocks).
    pub fn blockless(n: u32, edges: Vec<Edge>) -> Result<Self> {
        let m = edges.len();
        Self::with_block_sizes(n, edges, &vec![1; m])
    }

    /// A graph whose consecutive blocks have the given sizes.
    pub fn with_block_sizes(n: u32, edges: Vec<Edge>, block_sizes: &[usize]) -> Result<Self> {
        let m = edges.len();
        if block_sizes.iter().sum::<usize>() != m || block_sizes.contains(&0) {
            return Err(Error::Invalid(format!(
                "block sizes {block_sizes:?} do not cover {m} edges"
            )));
        }
        for e in &edges {
            if e.tail == 0 || e.tail > n || e.head == 0 || e.head > n {
                return Err(Error::Invalid(format!(
                    "edge ({}, {}) outside vertex range 1..={n}",
                    e.tail, e.head
                )));
            }
        }
        let mut blocks = Vec::with_capacity(block_sizes.len());
        let mut start = 0;
        for &s in block_sizes {
            blocks.push(start..start + s);
            start += s;
        }
        Ok(Self { n, edges, blocks })
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    /// Number of edges `m`.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in label order (label = index + 1).
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// The edge with the given 1-based label.
    pub fn edge(&self, label: u32) -> Result<Edge> {
        self.edges
            .get(label as usize - 1)
            .copied()
            .ok_or(Error::UnknownLabel {
                label,
                edge_count: self.edges.len(),
            })
    }

    /// Block index ranges, in order.
    pub fn blocks(&self) -> &[Range<usize>] {
        &self.blocks
    }

    /// Block sizes, in order.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|r| r.len()).collect()
    }

    /// 0-based block index of the edge with 0-based index `idx`.
    pub fn block_of_index(&self, idx: usize) -> usize {
        self.blocks
            .iter()
            .position(|r| r.contains(&idx))
            .expect("edge index within 0..m")
    }

    /// True when some block has more than one edge.
    pub fn has_nontrivial_blocks(&self) -> bool {
        self.blocks.iter().any(|r| r.len() > 1)
    }

    /// `V_out`: each vertex once per outgoing edge. A loop contributes to both
    /// `V_out` and `V_in`.
    pub fn out_multiset(&self) -> VertexMultiset {
        VertexMultiset::from_elements(self.edges.iter().map(|e| e.tail))
    }

    /// `V_in`: each vertex once per incoming edge.
    pub fn in_multiset(&self) -> VertexMultiset {
        VertexMultiset::from_elements(self.edges.iter().map(|e| e.head))
    }

    /// Sinks determined by the given sources: `J = V_in (+) I - V_out`,
    /// computed exactly. Returns `None` when some vertex would need a negative
    /// count, i.e. no decomposition with sources `i` can exist.
    pub fn sinks_for_sources(&self, sources: &VertexMultiset) -> Option<VertexMultiset> {
        let v_out = self.out_multiset();
        let v_in = self.in_multiset();
        let mut j = VertexMultiset::new();
        for v in 1..=self.n {
            let have = v_in.count(v) + sources.count(v);
            let need = v_out.count(v);
            if have < need {
                return None;
            }
            j.insert_many(v, have - need);
        }
        Some(j)
    }

    /// Relabels edges: position `k` of the result holds the edge previously
    /// labeled `sigma(k)`. Block structure is dropped (the symmetrization that
    /// consumes relabeled graphs is defined on blockless graphs).
    pub fn permute_labels(&self, sigma: &Permutation) -> Result<Self> {
        if sigma.len() != self.edges.len() {
            return Err(Error::SizeMismatch {
                expected: self.edges.len(),
                found: sigma.len(),
            });
        }
        let edges = (1..=self.edges.len() as u32)
            .map(|k| self.edges[sigma.image(k) as usize - 1])
            .collect();
        Self::blockless(self.n, edges)
    }

    /// Removes the edge with the given label; remaining labels are compacted
    /// to `1..=m-1` preserving relative order, and block intervals shrink
    /// (empty blocks disappear). Compaction loses the original label, so
    /// remove-then-reinsert does not round-trip.
    pub fn remove_edge(&self, label: u32) -> Result<Self> {
        let m = self.edges.len();
        if label == 0 || label as usize > m {
            return Err(Error::UnknownLabel {
                label,
                edge_count: m,
            });
        }
        let idx = label as usize - 1;
        let mut edges = self.edges.clone();
        edges.remove(idx);
        let sizes: Vec<usize> = self
            .blocks
            .iter()
            .map(|r| r.len() - usize::from(r.contains(&idx)))
            .filter(|&s| s > 0)
            .collect();
        Self::with_block_sizes(self.n, edges, &sizes)
    }

    /// Applies a vertex relabeling given by 1-based images (`v -> images[v-1]`).
    /// Labels and blocks are unchanged.
    pub fn relabel_vertices(&self, images: &[u32]) -> Result<Self> {
        if images.len() != self.n as usize {
            return Err(Error::SizeMismatch {
                expected: self.n as usize,
                found: images.len(),
            });
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(images[e.tail as usize - 1], images[e.head as usize - 1]))
            .collect();
        Self::with_block_sizes(self.n, edges, &self.block_sizes())
    }

    /// Parses the text format described in the module docs.
    pub fn parse(text: &str) -> Result<Self> {
        let mut vertices: Option<u32> = None;
        let mut edges: Vec<(u32, u32)> = Vec::new();
        let mut block_sizes: Vec<usize> = Vec::new();
        let mut in_blocks = false;

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let err = |msg: String| Error::Parse {
                line: lineno + 1,
                msg,
            };
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let mut parts = rest.split_whitespace();
                match parts.next() {
                    Some("vertices") => {
                        if !edges.is_empty() || vertices.is_some() {
                            return Err(err("#vertices must appear once, before any edge".into()));
                        }
                        let v: u32 = parts
                            .next()
                            .and_then(|s| s.parse().ok())
                            .ok_or_else(|| err("#vertices expects a positive integer".into()))?;
                        if parts.next().is_some() {
                            return Err(err("trailing tokens after #vertices".into()));
                        }
                        vertices = Some(v);
                    }
                    Some("block") => {
                        let k: usize = parts
                            .next()
                            .and_then(|s| s.parse().ok())
                            .ok_or_else(|| err("#block expects a positive integer".into()))?;
                        if parts.next().is_some() {
                            return Err(err("trailing tokens after #block".into()));
                        }
                        if !in_blocks && !edges.is_empty() {
                            return Err(err("edges before the first #block directive".into()));
                        }
                        if k != block_sizes.len() + 1 {
                            return Err(err(format!(
                                "expected #block {}, found #block {k}",
                                block_sizes.len() + 1
                            )));
                        }
                        if in_blocks && *block_sizes.last().unwrap() == 0 {
                            return Err(err("empty block".into()));
                        }
                        in_blocks = true;
                        block_sizes.push(0);
                    }
                    other => {
                        return Err(err(format!(
                            "unknown directive #{}",
                            other.unwrap_or_default()
                        )));
                    }
                }
                continue;
            }
            let mut parts = line.split_whitespace();
            let tail: u32 = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| err(format!("expected `tail head`, found {line:?}")))?;
            let head: u32 = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| err(format!("expected `tail head`, found {line:?}")))?;
            if parts.next().is_some() {
                return Err(err(format!("trailing tokens in edge line {line:?}")));
            }
            if tail == 0 || head == 0 {
                return Err(err("vertex ids are 1-based".into()));
            }
            if in_blocks {
                *block_sizes.last_mut().unwrap() += 1;
            }
            edges.push((tail, head));
        }
        if in_blocks && block_sizes.last() == Some(&0) {
            return Err(Error::Parse {
                line: text.lines().count(),
                msg: "empty final block".into(),
            });
        }

        let max_vertex = edges.iter().map(|&(t, h)| t.max(h)).max().unwrap_or(0);
        let n = match vertices {
            Some(v) if v < max_vertex => {
                return Err(Error::Invalid(format!(
                    "#vertices {v} smaller than largest mentioned vertex {max_vertex}"
                )));
            }
            Some(v) => v,
            None => max_vertex,
        };
        let edges: Vec<Edge> = edges.into_iter().map(|(t, h)| Edge::new(t, h)).collect();
        if in_blocks {
            LabeledDigraph::with_block_sizes(n, edges, &block_sizes)
        } else {
            LabeledDigraph::blockless(n, edges)
        }
    }

    /// Serializes to the JSON exchange format.
    pub fn to_json(&self) -> String {
        let dto = GraphJson {
            vertices: self.n,
            edges: self.edges.iter().map(|e| [e.tail, e.head]).collect(),
            blocks: if self.has_nontrivial_blocks() {
                Some(self.block_sizes())
            } else {
                None
            },
        };
        serde_json::to_string_pretty(&dto).expect("graph serialization cannot fail")
    }

    /// Parses the JSON exchange format.
    pub fn from_json(text: &str) -> Result<Self> {
        let dto: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })?;
        let edges = dto.edges.iter().map(|&[t, h]| Edge::new(t, h)).collect();
        match dto.blocks {
            Some(sizes) => LabeledDigraph::with_block_sizes(dto.vertices, edges, &sizes),
            None => LabeledDigraph::blockless(dto.vertices, edges),
        }
    }
}

/// JSON mirror of the graph fields.
#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: u32,
    edges: Vec<[u32; 2]>,
    blocks: Option<Vec<usize>>,
}

impl fmt::Display for LabeledDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "#vertices {}", self.n)?;
        let with_blocks = self.has_nontrivial_blocks();
        for (b, range) in self.blocks.iter().enumerate() {
            if with_blocks {
                writeln!(f, "#block {}", b + 1)?;
            }
            for idx in range.clone() {
                let e = self.edges[idx];
                writeln!(f, "{} {}", e.tail, e.head)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn six_edge_graph() -> LabeledDigraph {
        // Six edges on four vertices; the fifth edge is (2,3).
        LabeledDigraph::blockless(
            4,
            vec![
                Edge::new(1, 2),
                Edge::new(2, 1),
                Edge::new(4, 2),
                Edge::new(1, 4),
                Edge::new(2, 3),
                Edge::new(4, 3),
            ],
        )
        .unwrap()
    }

    fn ms(elems: &[u32]) -> VertexMultiset {
        VertexMultiset::from_elements(elems.iter().copied())
    }

    #[test]
    fn degree_multisets() {
        let g = six_edge_graph();
        assert_eq!(g.out_multiset(), ms(&[1, 1, 2, 2, 4, 4]));
        assert_eq!(g.in_multiset(), ms(&[1, 2, 2, 3, 3, 4]));
        assert_eq!(g.out_multiset().len(), g.edge_count() as u64);
        assert_eq!(g.in_multiset().len(), g.edge_count() as u64);
    }

    #[test]
    fn loop_contributes_to_both() {
        let g = LabeledDigraph::blockless(1, vec![Edge::new(1, 1)]).unwrap();
        assert_eq!(g.out_multiset(), ms(&[1]));
        assert_eq!(g.in_multiset(), ms(&[1]));
    }

    #[test]
    fn five_edge_degree_multisets() {
        let g = LabeledDigraph::blockless(
            3,
            vec![
                Edge::new(1, 1),
                Edge::new(2, 3),
                Edge::new(2, 1),
                Edge::new(3, 3),
                Edge::new(1, 2),
            ],
        )
        .unwrap();
        assert_eq!(g.out_multiset(), ms(&[1, 1, 2, 2, 3]));
        assert_eq!(g.in_multiset(), ms(&[1, 1, 2, 3, 3]));
    }

    #[test]
    fn permute_labels_convention() {
        // sigma = (2 1): position 1 of the result holds the old edge 2.
        let g = LabeledDigraph::blockless(2, vec![Edge::new(1, 2), Edge::new(2, 1)]).unwrap();
        let sigma = Permutation::from_images(vec![2, 1]).unwrap();
        let h = g.permute_labels(&sigma).unwrap();
        assert_eq!(h.edge(1).unwrap(), Edge::new(2, 1));
        assert_eq!(h.edge(2).unwrap(), Edge::new(1, 2));
        let id = Permutation::identity(2);
        assert_eq!(g.permute_labels(&id).unwrap().edges(), g.edges());
        let back = h.permute_labels(&sigma.inverse()).unwrap();
        assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn permute_labels_is_right_action() {
        // Non-commuting pair in S_3: check g^(sigma tau) = (g^sigma)^tau with
        // (sigma tau)(k) = sigma(tau(k)).
        let g = LabeledDigraph::blockless(
            3,
            vec![Edge::new(1, 2), Edge::new(2, 3), Edge::new(3, 1)],
        )
        .unwrap();
        let sigma = Permutation::from_images(vec![2, 1, 3]).unwrap();
        let tau = Permutation::from_images(vec![1, 3, 2]).unwrap();
        assert_ne!(
            sigma.compose(&tau).unwrap(),
            tau.compose(&sigma).unwrap(),
            "pair must not commute"
        );
        let lhs = g
            .permute_labels(&sigma)
            .unwrap()
            .permute_labels(&tau)
            .unwrap();
        let rhs = g.permute_labels(&sigma.compose(&tau).unwrap()).unwrap();
        assert_eq!(lhs.edges(), rhs.edges());
    }

    #[test]
    fn remove_edge_compacts_labels_and_blocks() {
        let g = LabeledDigraph::with_block_sizes(
            4,
            vec![
                Edge::new(1, 2),
                Edge::new(2, 1),
                Edge::new(4, 2),
                Edge::new(1, 4),
                Edge::new(2, 3),
                Edge::new(4, 3),
            ],
            &[2, 1, 3],
        )
        .unwrap();
        let h = g.remove_edge(6).unwrap();
        assert_eq!(h.edge_count(), 5);
        assert_eq!(h.edges(), &g.edges()[..5]);
        assert_eq!(h.block_sizes(), vec![2, 1, 2]);

        let h1 = g.remove_edge(1).unwrap();
        assert_eq!(h1.edge(1).unwrap(), Edge::new(2, 1));
        assert_eq!(h1.block_sizes(), vec![1, 1, 3]);

        let h3 = g.remove_edge(3).unwrap();
        assert_eq!(h3.block_sizes(), vec![2, 3]);
        assert!(g.remove_edge(7).is_err());
    }

    #[test]
    fn text_format_round_trip() {
        let g = LabeledDigraph::with_block_sizes(
            4,
            vec![
                Edge::new(1, 2),
                Edge::new(2, 1),
                Edge::new(4, 2),
                Edge::new(1, 4),
                Edge::new(2, 3),
                Edge::new(4, 3),
            ],
            &[2, 1, 3],
        )
        .unwrap();
        let printed = g.to_string();
        let parsed = LabeledDigraph::parse(&printed).unwrap();
        assert_eq!(parsed, g);

        let blockless = six_edge_graph();
        let parsed = LabeledDigraph::parse(&blockless.to_string()).unwrap();
        assert_eq!(parsed, blockless);
    }

    #[test]
    fn blockless_file_without_header_infers_vertices() {
        let g = LabeledDigraph::parse("1 2\n2 1\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.block_sizes(), vec![1, 1]);
        assert!(!g.has_nontrivial_blocks());
    }

    #[test]
    fn blockless_equals_all_singleton_blocks() {
        let edges = vec![Edge::new(1, 2), Edge::new(2, 1), Edge::new(2, 2)];
        let a = LabeledDigraph::blockless(2, edges.clone()).unwrap();
        let b = LabeledDigraph::with_block_sizes(2, edges, &[1, 1, 1]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            LabeledDigraph::parse("1 2 3\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(LabeledDigraph::parse("#block 2\n1 2\n").is_err());
        assert!(LabeledDigraph::parse("1 2\n#block 1\n2 1\n").is_err());
        assert!(LabeledDigraph::parse("#vertices 1\n1 2\n").is_err());
        assert!(LabeledDigraph::parse("#banana 1\n").is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = LabeledDigraph::with_block_sizes(
            3,
            vec![Edge::new(1, 2), Edge::new(2, 3), Edge::new(3, 1)],
            &[2, 1],
        )
        .unwrap();
        assert_eq!(LabeledDigraph::from_json(&g.to_json()).unwrap(), g);

        let blockless = LabeledDigraph::blockless(2, vec![Edge::new(1, 2)]).unwrap();
        assert_eq!(
            LabeledDigraph::from_json(&blockless.to_json()).unwrap(),
            blockless
        );
        let with_null = r#"{"vertices": 2, "edges": [[1, 2]], "blocks": null}"#;
        assert_eq!(LabeledDigraph::from_json(with_null).unwrap(), blockless);
        let omitted = r#"{"vertices": 2, "edges": [[1, 2]]}"#;
        assert_eq!(LabeledDigraph::from_json(omitted).unwrap(), blockless);
    }

    #[test]
    fn sinks_for_sources_identity_and_rejection() {
        let g = six_edge_graph();
        let j = g.sinks_for_sources(&ms(&[1, 4, 4])).unwrap();
        assert_eq!(j, ms(&[3, 3, 4]));
        // A single edge (1,2) cannot have a path sourced at 2.
        let h = LabeledDigraph::blockless(2, vec![Edge::new(1, 2)]).unwrap();
        assert!(h.sinks_for_sources(&ms(&[2])).is_none());
    }
}
