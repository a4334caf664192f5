//! Canonical labelling and isomorphism-free generation of small graphs.

use std::collections::HashMap;
use std::io::BufRead;

use rayon::prelude::*;

use crate::chroma::is_k_colorable;
use crate::critical::{has_comparable_nonadjacent, is_vertex_critical, CriticalDb};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::{parse_graph6, to_graph6};
use crate::patterns::{Family, PatternSpec};

/// Largest order accepted by [`canonical_form`].
pub const CANON_MAX: usize = 16;
/// Largest order [`enumerate_graphs`] will generate natively.
pub const ENUM_MAX: usize = 10;

/// graph6 text of the canonical relabelling; equal iff isomorphic.
///
/// The relabelling minimizes the adjacency bit string over all orders that
/// respect the refined degree partition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub text: String,
}

/// Packed upper triangle in graph6 bit order, first bit most significant.
fn code_of(adj: &[u64], order: &[usize]) -> u128 {
    let mut code = 0u128;
    for j in 1..order.len() {
        let row = adj[order[j]];
        for &u in &order[..j] {
            code = code << 1 | (row >> u & 1) as u128;
        }
    }
    code
}

/// Splits cells by neighbour counts into each cell until stable. Sub-cells
/// are ordered by count, so the result is labelling-invariant.
fn refine(adj: &[u64], mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    'outer: loop {
        for j in 0..cells.len() {
            let splitter: u64 = cells[j].iter().fold(0, |m, &v| m | 1 << v);
            let mut next = Vec::with_capacity(cells.len() + 1);
            let mut split = false;
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> =
                    cell.iter().map(|&v| ((adj[v] & splitter).count_ones(), v)).collect();
                keyed.sort_unstable();
                let before = next.len();
                for (i, &(key, v)) in keyed.iter().enumerate() {
                    if i == 0 || keyed[i - 1].0 != key {
                        next.push(Vec::new());
                    }
                    next.last_mut().expect("cell").push(v);
                }
                split |= next.len() - before > 1;
            }
            if split {
                cells = next;
                continue 'outer;
            }
        }
        return cells;
    }
}

struct Canonizer<'a> {
    adj: &'a [u64],
    best: Option<(u128, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl Canonizer<'_> {
    /// Orbit representative of each vertex under the stored automorphisms
    /// that fix every vertex of `path`.
    fn orbits(&self, path: &[usize]) -> Vec<usize> {
        let n = self.adj.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for gamma in &self.automorphisms {
            if path.iter().all(|&v| gamma[v] == v) {
                for v in 0..n {
                    let (a, b) = (find(&mut parent, v), find(&mut parent, gamma[v]));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        (0..n).map(|v| find(&mut parent, v)).collect()
    }

    fn search(&mut self, cells: Vec<Vec<usize>>, path: &mut Vec<usize>) {
        let cells = refine(self.adj, cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let code = code_of(self.adj, &order);
            match &self.best {
                Some((best, best_order)) if code == *best => {
                    // position p holds best_order[p] in one leaf and order[p] in the other
                    let mut gamma = vec![0; order.len()];
                    for (a, b) in best_order.iter().zip(&order) {
                        gamma[*a] = *b;
                    }
                    if gamma.iter().enumerate().any(|(i, &g)| i != g) {
                        self.automorphisms.push(gamma);
                    }
                }
                Some((best, _)) if code > *best => {}
                _ => self.best = Some((code, order)),
            }
            return;
        };
        let cell = cells[target].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            if !explored.is_empty() {
                let orbit = self.orbits(path);
                if explored.iter().any(|&w| orbit[w] == orbit[v]) {
                    continue;
                }
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(vec![v]);
            child.push(cell.iter().copied().filter(|&w| w != v).collect());
            child.extend_from_slice(&cells[target + 1..]);
            path.push(v);
            self.search(child, path);
            path.pop();
            explored.push(v);
        }
    }
}

/// Canonical vertex order and its code: `order[p]` is the vertex placed at position `p`.
pub(crate) fn canonical_labeling(g: &Graph) -> Result<(u128, Vec<usize>)> {
    let n = g.order();
    if n > CANON_MAX {
        return Err(Error::OverBudget { what: "canonical form", n, cap: CANON_MAX });
    }
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let adj: Vec<u64> = (0..n).map(|v| g.neighbors(v).fold(0u64, |m, u| m | 1 << u)).collect();
    let mut degrees: Vec<(usize, usize)> = (0..n).map(|v| (g.degree(v), v)).collect();
    degrees.sort_unstable();
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for (i, &(d, v)) in degrees.iter().enumerate() {
        if i == 0 || degrees[i - 1].0 != d {
            cells.push(Vec::new());
        }
        cells.last_mut().expect("cell").push(v);
    }
    let mut canon = Canonizer { adj: &adj, best: None, automorphisms: Vec::new() };
    canon.search(cells, &mut Vec::new());
    Ok(canon.best.expect("at least one leaf"))
}

/// The canonically relabelled copy of `g`.
pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    let (_, order) = canonical_labeling(g)?;
    g.induced_by(&order)
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    Ok(CanonicalForm { text: to_graph6(&canonical_graph(g)?) })
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    Ok(a.order() == b.order() && canonical_labeling(a)?.0 == canonical_labeling(b)?.0)
}

/// One augmentation round: every parent gains a vertex with every possible
/// neighbourhood, children failing `keep` are dropped, survivors are
/// deduplicated and returned in canonical order.
fn augment<F>(parents: &[Graph], keep: F) -> Vec<Graph>
where
    F: Fn(&Graph) -> bool + Sync,
{
    let found: HashMap<u128, Graph> = parents
        .par_iter()
        .fold(HashMap::new, |mut acc: HashMap<u128, Graph>, parent| {
            let n = parent.order();
            for mask in 0u32..1 << n {
                let nbrs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                let child = parent.add_vertex(&nbrs).expect("within cap");
                if !keep(&child) {
                    continue;
                }
                let (code, order) = canonical_labeling(&child).expect("within canon budget");
                acc.entry(code).or_insert_with(|| child.induced_by(&order).expect("permutation"));
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                a.entry(k).or_insert(v);
            }
            a
        });
    let mut out: Vec<(u128, Graph)> = found.into_iter().collect();
    out.sort_unstable_by_key(|(code, _)| *code);
    out.into_iter().map(|(_, g)| g).collect()
}

/// All free graphs of every order `0..=n_max`, one per isomorphism class,
/// with `extra` as an additional hereditary filter.
fn levels<F>(n_max: usize, family: &Family, extra: F) -> Vec<Vec<Graph>>
where
    F: Fn(&Graph) -> bool + Sync,
{
    let null = Graph::empty(0).expect("null graph");
    let mut levels = vec![vec![null]];
    for _ in 0..n_max {
        let last = levels.last().expect("level");
        let next = augment(last, |child| {
            family.violation_containing(child, child.order() - 1).is_none() && extra(child)
        });
        levels.push(next);
    }
    levels
}

fn check_enum_budget(n: usize) -> Result<()> {
    if n > ENUM_MAX {
        Err(Error::OverBudget { what: "enumeration", n, cap: ENUM_MAX })
    } else {
        Ok(())
    }
}

/// Every `n`-vertex graph free of `filters` (and connected if asked), one
/// per isomorphism class, canonically labelled and in canonical order.
///
/// Children of each `(n-1)`-vertex survivor are pruned as they are made,
/// which is sound because freeness is hereditary.
pub fn enumerate_graphs(n: usize, filters: &[PatternSpec], connected_only: bool) -> Result<Vec<Graph>> {
    check_enum_budget(n)?;
    let family = Family::new(filters)?;
    let mut graphs = levels(n, &family, |_| true).pop().expect("level n");
    if connected_only {
        graphs.retain(Graph::is_connected);
    }
    Ok(graphs)
}

/// Every free graph of each order `0..=n_max`; entry `n` holds order `n`.
pub fn enumerate_all(n_max: usize, filters: &[PatternSpec]) -> Result<Vec<Vec<Graph>>> {
    check_enum_budget(n_max)?;
    Ok(levels(n_max, &Family::new(filters)?, |_| true))
}

/// Cheap necessary conditions for k-vertex-criticality.
fn plausibly_critical(g: &Graph, k: usize) -> bool {
    g.order() >= k
        && g.is_connected()
        && g.min_degree().unwrap_or(0) + 1 >= k
        && !has_comparable_nonadjacent(g)
}

/// All k-vertex-critical `family`-free graphs on at most `n_max` vertices.
///
/// Every induced subgraph of a k-vertex-critical graph is k-colourable, so
/// the generation is also pruned by k-colourability. On the last level the
/// cheap filters (connectivity, minimum degree, comparable neighbourhoods)
/// run before deduplication.
pub fn enumerate_critical(k: usize, n_max: usize, family: &[PatternSpec]) -> Result<CriticalDb> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    check_enum_budget(n_max)?;
    let fam = Family::new(family)?;
    let colorable = |g: &Graph| is_k_colorable(g, k).is_some();
    let mut members = Vec::new();
    if n_max == 0 {
        return Ok(CriticalDb::new(k, family.to_vec(), members));
    }
    let lower = levels(n_max - 1, &fam, colorable);
    for level in &lower[1..] {
        members.extend(level.par_iter().filter(|g| plausibly_critical(g, k) && is_vertex_critical(g, k)).cloned().collect::<Vec<_>>());
    }
    let last = augment(lower.last().expect("level"), |child| {
        fam.violation_containing(child, child.order() - 1).is_none() && plausibly_critical(child, k) && colorable(child)
    });
    members.extend(last.into_par_iter().filter(|g| is_vertex_critical(g, k)).collect::<Vec<_>>());
    Ok(CriticalDb::new(k, family.to_vec(), members))
}

/// A graph6 line that failed to parse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineError {
    pub line: usize,
    pub error: Error,
}

impl std::fmt::Display for LineError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.error)
    }
}

/// Parses one graph per line, skipping blank lines. After a malformed line
/// the iterator stops if `abort_on_error` is set, otherwise it continues.
pub fn ingest_graph6_stream<R: BufRead>(
    reader: R,
    abort_on_error: bool,
) -> impl Iterator<Item = std::result::Result<Graph, LineError>> {
    let mut lines = reader.lines().enumerate();
    let mut done = false;
    std::iter::from_fn(move || loop {
        if done {
            return None;
        }
        let (i, line) = lines.next()?;
        let parsed = match line {
            Ok(text) if text.trim().is_empty() => continue,
            Ok(text) => parse_graph6(text.trim_end()),
            Err(e) => Err(Error::Graph6 { offset: 0, reason: e.to_string() }),
        };
        if parsed.is_err() && abort_on_error {
            done = true;
        }
        return Some(parsed.map_err(|error| LineError { line: i + 1, error }));
    })
}
