//! Simple undirected graphs on up to 63 vertices, stored as symmetric
//! GF(2) adjacency rows (one `u64` bitmask per vertex).
//!
//! Vertex labels are 1-based in every text format and 0-based internally.
//! The upper-triangle bit code used for ordering and canonical forms lists
//! the pairs column-major, `(0,1), (0,2), (1,2), (0,3), ...`, with the first
//! pair in the most significant position; this is also the graph6 bit order.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::subset::{full_mask, SubsetMask};

/// Largest vertex count; every [`SubsetMask`] fits one machine word.
pub const MAX_VERTICES: usize = 63;
/// Largest vertex count for exhaustive enumeration and canonicalization.
pub const MAX_ENUMERATION_VERTICES: usize = 8;
/// Largest vertex count graph6 can encode in its short form.
pub const MAX_GRAPH6_VERTICES: usize = 62;

/// A simple undirected graph: no self-loops, no multi-edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Graph with `n` vertices and the given 0-based edges.
    /// Duplicate edges collapse; `{a,b}` and `{b,a}` are the same edge.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n == 0 {
            return Err(Error::Syntax("vertex count must be at least 1".into()));
        }
        if n > MAX_VERTICES {
            return Err(Error::Overflow(format!(
                "vertex count {n} exceeds the limit of {MAX_VERTICES}"
            )));
        }
        let mut adj = vec![0u64; n];
        for &(a, b) in edges {
            if a >= n {
                return Err(Error::VertexOutOfRange { label: a + 1, n });
            }
            if b >= n {
                return Err(Error::VertexOutOfRange { label: b + 1, n });
            }
            if a == b {
                return Err(Error::SelfLoop(a + 1));
            }
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        Ok(Graph { n, adj })
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        Graph::new(n, &[])
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Neighbor bitmask of vertex `v`.
    pub fn adjacency_row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && self.adj[a] >> b & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges as 0-based pairs `(a, b)` with `a < b`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for a in 0..self.n {
            let mut rest = self.adj[a] & !full_mask(a + 1);
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                out.push((a, b));
                rest &= rest - 1;
            }
        }
        out
    }

    /// True iff every vertex is reachable from vertex 0. A single vertex
    /// counts as connected.
    pub fn is_connected(&self) -> bool {
        let full = full_mask(self.n);
        let mut seen = 1u64;
        loop {
            let mut next = seen;
            let mut rest = seen;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                next |= self.adj[v];
                rest &= rest - 1;
            }
            if next == seen {
                return seen == full;
            }
            seen = next;
        }
    }

    /// Relabeled copy: vertex `v` becomes `perm[v]`. `perm` must be a
    /// permutation of `0..n`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![0u64; self.n];
        for v in 0..self.n {
            let mut rest = self.adj[v];
            while rest != 0 {
                let w = rest.trailing_zeros() as usize;
                adj[perm[v]] |= 1 << perm[w];
                rest &= rest - 1;
            }
        }
        Graph { n: self.n, adj }
    }

    /// Upper-triangle bit code of the adjacency matrix (graph6 bit order,
    /// first pair most significant). Total order on same-`n` graphs.
    pub fn upper_triangle_code(&self) -> u64 {
        debug_assert!(self.n <= 11, "code does not fit u64 beyond n=11");
        let mut code = 0u64;
        for j in 1..self.n {
            for i in 0..j {
                code = code << 1 | (self.adj[i] >> j & 1);
            }
        }
        code
    }

    /// Inverse of [`Graph::upper_triangle_code`].
    pub fn from_upper_triangle_code(n: usize, code: u64) -> Result<Graph> {
        if n == 0 || n > 11 {
            return Err(Error::Overflow(format!(
                "code form supports 1..=11 vertices, got {n}"
            )));
        }
        let mut adj = vec![0u64; n];
        let mut pos = n * (n - 1) / 2;
        for j in 1..n {
            for i in 0..j {
                pos -= 1;
                if code >> pos & 1 == 1 {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
            }
        }
        Ok(Graph { n, adj })
    }

    /// Lexicographically minimal relabeling, by brute force over all `n!`
    /// vertex permutations. Idempotent; isomorphic graphs map to equal
    /// outputs. Limited to `n <= 8`.
    pub fn canonical_form(&self) -> Result<Graph> {
        if self.n > MAX_ENUMERATION_VERTICES {
            return Err(Error::Overflow(format!(
                "canonical form is brute-force and limited to {MAX_ENUMERATION_VERTICES} vertices, got {}",
                self.n
            )));
        }
        let mut best = u64::MAX;
        // perm[i] = original vertex placed at new label i
        for_each_permutation(self.n, |perm| {
            let mut code = 0u64;
            for j in 1..self.n {
                for i in 0..j {
                    code = code << 1 | (self.adj[perm[i]] >> perm[j] & 1);
                }
            }
            if code < best {
                best = code;
            }
        });
        Graph::from_upper_triangle_code(self.n, best)
    }

    /// Toggle every edge among the neighbors of `v`.
    /// Applying it twice at the same vertex returns the original graph.
    pub fn local_complement(&self, v: usize) -> Result<Graph> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange {
                label: v + 1,
                n: self.n,
            });
        }
        let nb = self.adj[v];
        let mut adj = self.adj.clone();
        let mut rest = nb;
        while rest != 0 {
            let a = rest.trailing_zeros() as usize;
            adj[a] ^= nb & !(1 << a);
            rest &= rest - 1;
        }
        Ok(Graph { n: self.n, adj })
    }

    /// Adjacency block between S and its complement S': one row per vertex
    /// of S (ascending), columns packed over S' (ascending, bit 0 = smallest
    /// vertex of S').
    pub fn cut_submatrix(&self, s: SubsetMask) -> Vec<u64> {
        let bits = s.bits() & full_mask(self.n);
        let comp = full_mask(self.n) ^ bits;
        let mut rows = Vec::with_capacity(bits.count_ones() as usize);
        let mut rest = bits;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rows.push(compress_bits(self.adj[v], comp));
            rest &= rest - 1;
        }
        rows
    }

    /// Parse the edge-list format `"n: a-b, c-d, ..."` with 1-based labels.
    /// Whitespace-insensitive; the edge section may be empty; duplicate
    /// edges collapse.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let (head, tail) = text
            .split_once(':')
            .ok_or_else(|| Error::Syntax(format!("missing ':' in edge list {text:?}")))?;
        let n: usize = head
            .trim()
            .parse()
            .map_err(|_| Error::Syntax(format!("bad vertex count {:?}", head.trim())))?;
        if n == 0 {
            return Err(Error::Syntax("vertex count must be at least 1".into()));
        }
        if n > MAX_VERTICES {
            return Err(Error::Overflow(format!(
                "vertex count {n} exceeds the limit of {MAX_VERTICES}"
            )));
        }
        let mut edges = Vec::new();
        let body = tail.trim();
        if !body.is_empty() {
            for token in body.split(',') {
                let token = token.trim();
                let (a, b) = token
                    .split_once('-')
                    .ok_or_else(|| Error::Syntax(format!("malformed edge token {token:?}")))?;
                let a: usize = a
                    .trim()
                    .parse()
                    .map_err(|_| Error::Syntax(format!("malformed edge token {token:?}")))?;
                let b: usize = b
                    .trim()
                    .parse()
                    .map_err(|_| Error::Syntax(format!("malformed edge token {token:?}")))?;
                if a < 1 || a > n {
                    return Err(Error::VertexOutOfRange { label: a, n });
                }
                if b < 1 || b > n {
                    return Err(Error::VertexOutOfRange { label: b, n });
                }
                if a == b {
                    return Err(Error::SelfLoop(a));
                }
                edges.push((a - 1, b - 1));
            }
        }
        Graph::new(n, &edges)
    }

    /// Render the graph in the edge-list format accepted by
    /// [`Graph::parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let edges: Vec<String> = self
            .edges()
            .iter()
            .map(|&(a, b)| format!("{}-{}", a + 1, b + 1))
            .collect();
        if edges.is_empty() {
            format!("{}:", self.n)
        } else {
            format!("{}: {}", self.n, edges.join(", "))
        }
    }

    /// Parse one graph6 line (optional `>>graph6<<` header tolerated).
    pub fn parse_graph6(text: &str) -> Result<Graph> {
        let line = text.trim().trim_start_matches(">>graph6<<").trim();
        let bytes = line.as_bytes();
        if bytes.is_empty() {
            return Err(Error::Syntax("empty graph6 line".into()));
        }
        if bytes[0] == b'~' {
            return Err(Error::Overflow(
                "graph6 long-form vertex counts (n > 62) are not supported".into(),
            ));
        }
        if !(63..=126).contains(&bytes[0]) {
            return Err(Error::Syntax(format!(
                "bad graph6 size byte 0x{:02x}",
                bytes[0]
            )));
        }
        let n = (bytes[0] - 63) as usize;
        if n == 0 {
            return Err(Error::Syntax(
                "graph6 vertex count must be at least 1".into(),
            ));
        }
        let nbits = n * (n - 1) / 2;
        let nbytes = nbits.div_ceil(6);
        if bytes.len() != 1 + nbytes {
            return Err(Error::Syntax(format!(
                "graph6 line for n={n} must have {} data bytes, got {}",
                nbytes,
                bytes.len() - 1
            )));
        }
        let mut adj = vec![0u64; n];
        let mut pos = 0usize;
        for j in 1..n {
            for i in 0..j {
                let byte = bytes[1 + pos / 6];
                if !(63..=126).contains(&byte) {
                    return Err(Error::Syntax(format!("bad graph6 data byte 0x{byte:02x}")));
                }
                let bit = (byte - 63) >> (5 - pos % 6) & 1;
                if bit == 1 {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
                pos += 1;
            }
        }
        Ok(Graph { n, adj })
    }

    /// Encode as a graph6 line. Fails for `n > 62` (short form only).
    pub fn to_graph6(&self) -> Result<String> {
        if self.n > MAX_GRAPH6_VERTICES {
            return Err(Error::Overflow(format!(
                "graph6 short form encodes at most {MAX_GRAPH6_VERTICES} vertices, got {}",
                self.n
            )));
        }
        let mut out = vec![self.n as u8 + 63];
        let mut acc = 0u8;
        let mut filled = 0u8;
        for j in 1..self.n {
            for i in 0..j {
                acc = acc << 1 | (self.adj[i] >> j & 1) as u8;
                filled += 1;
                if filled == 6 {
                    out.push(acc + 63);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push((acc << (6 - filled)) + 63);
        }
        Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
    }
}

/// Pack the bits of `value` selected by `selector` into the low bits of the
/// result, preserving order (software PEXT).
pub(crate) fn compress_bits(value: u64, selector: u64) -> u64 {
    let mut out = 0u64;
    let mut rest = selector;
    let mut t = 0;
    while rest != 0 {
        let p = rest.trailing_zeros();
        out |= (value >> p & 1) << t;
        t += 1;
        rest &= rest - 1;
    }
    out
}

/// Heap's algorithm; calls `f` with each permutation of `0..n`.
pub(crate) fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&a);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            f(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Exhaustively enumerate the graphs on `n` vertices in a deterministic
/// order: ascending upper-triangle code for labeled graphs, ascending
/// canonical code with one representative per isomorphism class when
/// `up_to_iso` is set. Limited to `n <= 8`.
pub fn enumerate_graphs(n: usize, connected_only: bool, up_to_iso: bool) -> Result<Vec<Graph>> {
    if n == 0 {
        return Err(Error::Syntax("vertex count must be at least 1".into()));
    }
    if n > MAX_ENUMERATION_VERTICES {
        return Err(Error::Overflow(format!(
            "enumeration is limited to {MAX_ENUMERATION_VERTICES} vertices, got {n}"
        )));
    }
    let mut out = Vec::new();
    let mut keep = |code: u64| -> Result<()> {
        let g = Graph::from_upper_triangle_code(n, code)?;
        if !connected_only || g.is_connected() {
            out.push(g);
        }
        Ok(())
    };
    if up_to_iso {
        for code in isomorphism_class_codes(n)? {
            keep(code)?;
        }
    } else {
        for code in 0..1u64 << (n * (n - 1) / 2) {
            keep(code)?;
        }
    }
    Ok(out)
}

/// Canonical codes of all isomorphism classes on `n` vertices, ascending.
///
/// Built level by level: every class on `k` vertices arises from some class
/// on `k-1` vertices by appending one vertex with some neighborhood, so
/// extending every representative by every neighborhood and canonicalizing
/// is exhaustive.
fn isomorphism_class_codes(n: usize) -> Result<Vec<u64>> {
    let mut cur: Vec<u64> = vec![0];
    for k in 2..=n {
        let mut found = BTreeSet::new();
        for &code in &cur {
            let base = Graph::from_upper_triangle_code(k - 1, code)?;
            for neighborhood in 0..1u64 << (k - 1) {
                let mut adj = base.adj.clone();
                for (v, row) in adj.iter_mut().enumerate() {
                    if neighborhood >> v & 1 == 1 {
                        *row |= 1 << (k - 1);
                    }
                }
                adj.push(neighborhood);
                let g = Graph { n: k, adj };
                found.insert(g.canonical_form()?.upper_triangle_code());
            }
        }
        cur = found.into_iter().collect();
    }
    Ok(cur)
}
