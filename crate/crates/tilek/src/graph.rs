//! Connected bipartite graphs with 1-based vertex indices.
//!
//! White vertices are `u_1..u_alpha`, black vertices `v_1..v_beta`. The text
//! format is an edge list: a `bipartite <alpha> <beta>` header followed by one
//! `<i> <j>` pair per line; `#` starts a comment.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("both sides must have at least one vertex")]
    EmptySide,
    #[error("line {line}: malformed header, expected `bipartite <alpha> <beta>`")]
    MalformedHeader { line: usize },
    #[error("line {line}: expected `<white> <black>`, got {text:?}")]
    MalformedEdge { line: usize, text: String },
    #[error("edge ({u}, {v}) out of range for a {alpha}+{beta} graph")]
    EdgeOutOfRange { u: u32, v: u32, alpha: u32, beta: u32 },
    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: u32, v: u32 },
    #[error("graph is disconnected")]
    Disconnected,
}

/// A connected bipartite graph on `alpha` white and `beta` black vertices.
///
/// Immutable after construction; connectivity is enforced by every
/// constructor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    alpha: u32,
    beta: u32,
    edges: Vec<(u32, u32)>,
}

impl BipartiteGraph {
    /// Build from an explicit edge list; rejects out-of-range indices,
    /// duplicates and disconnected graphs.
    pub fn new(alpha: u32, beta: u32, edges: Vec<(u32, u32)>) -> Result<Self, GraphError> {
        if alpha == 0 || beta == 0 {
            return Err(GraphError::EmptySide);
        }
        let mut seen = BTreeSet::new();
        for &(u, v) in &edges {
            if u == 0 || v == 0 || u > alpha || v > beta {
                return Err(GraphError::EdgeOutOfRange { u, v, alpha, beta });
            }
            if !seen.insert((u, v)) {
                return Err(GraphError::DuplicateEdge { u, v });
            }
        }
        let g = BipartiteGraph {
            alpha,
            beta,
            edges: seen.into_iter().collect(),
        };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    /// The complete bipartite graph on `alpha` white and `beta` black
    /// vertices, with all `alpha * beta` edges.
    pub fn complete(alpha: u32, beta: u32) -> Result<Self, GraphError> {
        if alpha == 0 || beta == 0 {
            return Err(GraphError::EmptySide);
        }
        let mut edges = Vec::with_capacity(alpha as usize * beta as usize);
        for u in 1..=alpha {
            for v in 1..=beta {
                edges.push((u, v));
            }
        }
        Ok(BipartiteGraph { alpha, beta, edges })
    }

    /// Parse the edge-list text format (LF or CRLF, `#` comments).
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut header: Option<(u32, u32)> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            match header {
                None => {
                    if fields.len() != 3 || fields[0] != "bipartite" {
                        return Err(GraphError::MalformedHeader { line });
                    }
                    let alpha = fields[1]
                        .parse()
                        .map_err(|_| GraphError::MalformedHeader { line })?;
                    let beta = fields[2]
                        .parse()
                        .map_err(|_| GraphError::MalformedHeader { line })?;
                    header = Some((alpha, beta));
                }
                Some(_) => {
                    if fields.len() != 2 {
                        return Err(GraphError::MalformedEdge {
                            line,
                            text: content.to_string(),
                        });
                    }
                    let u = fields[0].parse().map_err(|_| GraphError::MalformedEdge {
                        line,
                        text: content.to_string(),
                    })?;
                    let v = fields[1].parse().map_err(|_| GraphError::MalformedEdge {
                        line,
                        text: content.to_string(),
                    })?;
                    edges.push((u, v));
                }
            }
        }
        let (alpha, beta) = header.ok_or(GraphError::MalformedHeader { line: 1 })?;
        Self::new(alpha, beta, edges)
    }

    /// Render in the same edge-list format accepted by [`BipartiteGraph::parse`].
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "bipartite {} {}", self.alpha, self.beta);
        for (u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn beta(&self) -> u32 {
        self.beta
    }

    /// Edges as 1-based (white, black) pairs, sorted.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.alpha as usize * self.beta as usize
    }

    /// Connectivity of the underlying undirected graph. Constructors enforce
    /// this, so it holds for every value that exists.
    pub fn is_connected(&self) -> bool {
        let n = (self.alpha + self.beta) as usize;
        if n == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &self.edges {
            let (a, b) = (u as usize - 1, self.alpha as usize + v as usize - 1);
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == n
    }
}
