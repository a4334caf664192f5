//! Dense undirected graphs and vertex sets.
//!
//! A [`Graph`] is an immutable, loop-free, undirected graph on the vertices
//! `0..n`, stored as one bit row per vertex. Every operation that changes the
//! graph returns a fresh value.

use std::fmt;

use crate::error::{Error, Result};

/// Largest vertex count accepted by [`Graph`] constructors.
pub const MAX_VERTICES: usize = 512;

fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

/// A subset of `0..universe`, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    bits: Vec<u64>,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet { universe, bits: vec![0; words_for(universe)] }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::new(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    /// Builds a set from vertices, rejecting any vertex `>= universe`.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(universe: usize, vertices: I) -> Result<Self> {
        let mut s = Self::new(universe);
        for v in vertices {
            if v >= universe {
                return Err(Error::VertexOutOfRange { vertex: v, n: universe });
            }
            s.insert(v);
        }
        Ok(s)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < self.universe);
        self.bits[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.universe {
            self.bits[v / 64] &= !(1 << (v % 64));
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.bits[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + t)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn min(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.iter().zip(other.bits.iter().chain(std::iter::repeat(&0))).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & b == 0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
        out
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        for (i, a) in out.bits.iter_mut().enumerate() {
            *a &= other.bits.get(i).copied().unwrap_or(0);
        }
        out
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(&other.bits) {
            *a &= !b;
        }
        out
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.bits
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Loop-free undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n, cap: MAX_VERTICES });
        }
        let words = words_for(n);
        Ok(Graph { n, words, rows: vec![0; n * words] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.check(u)?;
            g.check(v)?;
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        Ok(Self::empty(n)?.complement())
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!("cycle needs at least 3 vertices, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| ((u + 1)..self.n).filter(move |&v| self.has_edge(u, v)).map(move |v| (u, v)))
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Returns `Err` unless `v < n`.
    pub fn check(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub(crate) fn check_set(&self, s: &VertexSet) -> Result<()> {
        match s.iter().find(|&v| v >= self.n) {
            Some(v) => Err(Error::VertexOutOfRange { vertex: v, n: self.n }),
            None => Ok(()),
        }
    }

    fn set_edge(&mut self, u: usize, v: usize, on: bool) {
        let (wu, wv) = (u * self.words + v / 64, v * self.words + u / 64);
        if on {
            self.rows[wu] |= 1 << (v % 64);
            self.rows[wv] |= 1 << (u % 64);
        } else {
            self.rows[wu] &= !(1 << (v % 64));
            self.rows[wv] &= !(1 << (u % 64));
        }
    }

    /// Copy of this graph with the edge `uv` toggled on or off.
    pub fn with_edge(&self, u: usize, v: usize, on: bool) -> Result<Graph> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
        }
        let mut g = self.clone();
        g.set_edge(u, v, on);
        Ok(g)
    }

    /// Adds a vertex `n` adjacent to exactly `neighbours`.
    pub fn add_vertex(&self, neighbours: &[usize]) -> Result<Graph> {
        let n = self.n + 1;
        let mut g = Graph::empty(n)?;
        for (u, v) in self.edges() {
            g.set_edge(u, v, true);
        }
        for &u in neighbours {
            self.check(u)?;
            g.set_edge(u, self.n, true);
        }
        Ok(g)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// N(v).
    pub fn neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check(v)?;
        Ok(VertexSet { universe: self.n, bits: self.row(v).to_vec() })
    }

    /// N[v].
    pub fn closed_neighborhood(&self, v: usize) -> Result<VertexSet> {
        let mut s = self.neighborhood(v)?;
        s.insert(v);
        Ok(s)
    }

    /// N(S): vertices outside `s` with a neighbour in `s`.
    pub fn set_neighborhood(&self, s: &VertexSet) -> Result<VertexSet> {
        self.check_set(s)?;
        let mut out = VertexSet::new(self.n);
        for v in s.iter() {
            for (a, b) in out.bits.iter_mut().zip(self.row(v)) {
                *a |= b;
            }
        }
        Ok(out.difference(s))
    }

    /// N[S] = N(S) ∪ S.
    pub fn closed_set_neighborhood(&self, s: &VertexSet) -> Result<VertexSet> {
        Ok(self.set_neighborhood(s)?.union(s))
    }

    pub fn is_independent(&self, s: &VertexSet) -> Result<bool> {
        self.check_set(s)?;
        Ok(self.independent_violation(s).is_none())
    }

    pub(crate) fn independent_violation(&self, s: &VertexSet) -> Option<(usize, usize)> {
        let members = s.to_vec();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                if self.has_edge(u, v) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        let members = s.to_vec();
        members.iter().enumerate().all(|(i, &u)| members[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    fn check_between(&self, x: &VertexSet, y: &VertexSet) -> Result<()> {
        self.check_set(x)?;
        self.check_set(y)?;
        match x.intersection(y).min() {
            Some(v) => Err(Error::Overlap(v)),
            None => Ok(()),
        }
    }

    /// Every vertex of `x` adjacent to every vertex of `y`.
    pub fn is_complete_between(&self, x: &VertexSet, y: &VertexSet) -> Result<bool> {
        self.check_between(x, y)?;
        Ok(x.iter().all(|u| y.iter().all(|v| self.has_edge(u, v))))
    }

    /// No edge between `x` and `y`.
    pub fn is_anticomplete_between(&self, x: &VertexSet, y: &VertexSet) -> Result<bool> {
        self.check_between(x, y)?;
        Ok(x.iter().all(|u| y.iter().all(|v| !self.has_edge(u, v))))
    }

    /// Vertices outside `s` with at least one neighbour and one non-neighbour in `s`.
    pub fn mixed_vertices(&self, s: &VertexSet) -> Result<VertexSet> {
        self.check_set(s)?;
        if s.is_empty() {
            return Err(Error::InvalidParameter("mixed_vertices needs a nonempty set".into()));
        }
        let size = s.len();
        let mut out = VertexSet::new(self.n);
        for v in (0..self.n).filter(|&v| !s.contains(v)) {
            let hits = s.iter().filter(|&u| self.has_edge(u, v)).count();
            if hits > 0 && hits < size {
                out.insert(v);
            }
        }
        Ok(out)
    }

    /// The subgraph induced by `s`, relabelled in increasing vertex order.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<Graph> {
        self.check_set(s)?;
        self.induced_by(&s.to_vec())
    }

    /// The subgraph induced by `order`, with `order[i]` becoming vertex `i`.
    pub fn induced_by(&self, order: &[usize]) -> Result<Graph> {
        let mut g = Graph::empty(order.len())?;
        for (i, &u) in order.iter().enumerate() {
            self.check(u)?;
            for (j, &v) in order.iter().enumerate().skip(i + 1) {
                if u == v {
                    return Err(Error::Overlap(u));
                }
                if self.has_edge(u, v) {
                    g.set_edge(i, j, true);
                }
            }
        }
        Ok(g)
    }

    /// `self` minus vertex `v`, remaining vertices keep their relative order.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.check(v)?;
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced_by(&keep)
    }

    /// Relabels so that vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter("permutation length mismatch".into()));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
        }
        let mut g = Graph::empty(self.n)?;
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v], true);
        }
        Ok(g)
    }

    /// G + H: vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let mut g = Graph::empty(self.n + other.n)?;
        for (u, v) in self.edges() {
            g.set_edge(u, v, true);
        }
        for (u, v) in other.edges() {
            g.set_edge(u + self.n, v + self.n, true);
        }
        Ok(g)
    }

    /// Disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let mut g = self.disjoint_union(other)?;
        for u in 0..self.n {
            for v in 0..other.n {
                g.set_edge(u, self.n + v, true);
            }
        }
        Ok(g)
    }

    pub fn complement(&self) -> Graph {
        let mut g = self.clone();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                g.set_edge(u, v, !self.has_edge(u, v));
            }
        }
        g
    }

    /// Components ordered by least vertex; each is returned as a vertex set.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new(self.n);
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::new(self.n);
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(u) = stack.pop() {
                comp.insert(u);
                for v in self.neighbors(u) {
                    if !seen.contains(v) {
                        seen.insert(v);
                        stack.push(v);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    /// `true` for the null graph and K1.
    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    pub fn is_complete(&self) -> bool {
        (0..self.n).all(|v| self.degree(v) + 1 == self.n)
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    /// Neighbours of `v` in increasing order. Panics if `v` is out of range.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let row = self.row(v);
        row.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + t)
                }
            })
        })
    }

    /// N(u) ⊆ N(v), ignoring `v` itself in N(u).
    pub(crate) fn neighborhood_within(&self, u: usize, v: usize) -> bool {
        let (ru, rv) = (self.row(u), self.row(v));
        ru.iter().zip(rv).enumerate().all(|(i, (a, b))| {
            let mut a = *a;
            if v / 64 == i {
                a &= !(1 << (v % 64));
            }
            a & !b == 0
        })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}
