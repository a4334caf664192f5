//! k-vertex-criticality: reports, extraction, obstructions, diagnostics on
//! mixed vertices over an independent set, and certifying k-colourability.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::chroma::{chromatic_number, is_k_colorable, Coloring};
use crate::enumerate::canonical_form;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::graph6::parse_graph6;
use crate::patterns::{find_induced, format_family, parse_family, Embedding, Family, PatternSpec};

/// χ(G) and χ(G - v) for every v, against a target k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CritReport {
    pub k: usize,
    pub chi: usize,
    pub per_vertex: Vec<usize>,
    pub verdict: bool,
}

pub fn criticality_report(g: &Graph, k: usize) -> Result<CritReport> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let chi = chromatic_number(g).0;
    let per_vertex: Vec<usize> = (0..g.order())
        .into_par_iter()
        .map(|v| chromatic_number(&g.delete_vertex(v).expect("vertex in range")).0)
        .collect();
    let verdict = chi == k && per_vertex.iter().all(|&c| c + 1 == k);
    Ok(CritReport { k, chi, per_vertex, verdict })
}

/// Decision-only criticality test; cheaper than a full report.
pub fn is_vertex_critical(g: &Graph, k: usize) -> bool {
    if k == 0 || g.order() == 0 {
        return false;
    }
    if is_k_colorable(g, k).is_none() || is_k_colorable(g, k - 1).is_some() {
        return false;
    }
    (0..g.order()).all(|v| is_k_colorable(&g.delete_vertex(v).expect("vertex in range"), k - 1).is_some())
}

/// A k-vertex-critical induced subgraph together with the host vertices it uses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalSubgraph {
    pub vertices: Vec<usize>,
    pub graph: Graph,
}

/// Deletes the least-indexed vertex whose removal keeps χ ≥ k until none is left.
pub fn extract_critical_subgraph(g: &Graph, k: usize) -> Result<CriticalSubgraph> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if is_k_colorable(g, k - 1).is_some() {
        return Err(Error::ChromaticTooSmall { chi: chromatic_number(g).0, k });
    }
    let mut vertices: Vec<usize> = (0..g.order()).collect();
    let mut current = g.clone();
    'scan: loop {
        for i in 0..vertices.len() {
            let smaller = current.delete_vertex(i)?;
            if is_k_colorable(&smaller, k - 1).is_none() {
                vertices.remove(i);
                current = smaller;
                continue 'scan;
            }
        }
        break;
    }
    Ok(CriticalSubgraph { vertices, graph: current })
}

/// Least nonadjacent pair `(u, v)` with N(u) ⊆ N(v); pairs scanned as
/// `(a, b)` with `a < b`, trying `(a, b)` before `(b, a)`.
pub fn find_comparable_nonadjacent(g: &Graph) -> Option<(usize, usize)> {
    let n = g.order();
    for a in 0..n {
        for b in (a + 1)..n {
            if g.has_edge(a, b) {
                continue;
            }
            if g.neighborhood_within(a, b) {
                return Some((a, b));
            }
            if g.neighborhood_within(b, a) {
                return Some((b, a));
            }
        }
    }
    None
}

pub(crate) fn has_comparable_nonadjacent(g: &Graph) -> bool {
    find_comparable_nonadjacent(g).is_some()
}

/// Subsets of `0..n` with at most `cap` members, in lexicographic order of
/// their sorted member lists.
fn subsets_lex(n: usize, cap: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, cap: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for v in start..n {
            cur.push(v);
            out.push(cur.clone());
            if cur.len() < cap {
                go(n, cap, v + 1, cur, out);
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, cap, 0, &mut Vec::new(), &mut out);
    out
}

fn combinations(pool: &[usize], size: usize) -> Vec<Vec<usize>> {
    fn go(pool: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i]);
            go(pool, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(pool, size, 0, &mut Vec::new(), &mut out);
    out
}

/// Nonempty, anticomplete `X`, `Y` with χ(G[X]) ≤ χ(G[Y]) and `Y` complete
/// to N(X), no larger than `size_cap` each. Such a pair never exists in a
/// vertex-critical graph. Searched in order of `(|X|+|Y|, X, Y)`.
pub fn find_lemma_xy_violation(g: &Graph, size_cap: usize) -> Result<Option<(VertexSet, VertexSet)>> {
    if size_cap == 0 {
        return Err(Error::InvalidParameter("size_cap must be at least 1".into()));
    }
    let n = g.order();
    let xs = subsets_lex(n, size_cap);
    let mut chi_cache: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut chi_of = |vs: &[usize]| -> usize {
        *chi_cache
            .entry(vs.to_vec())
            .or_insert_with(|| chromatic_number(&g.induced_by(vs).expect("valid subset")).0)
    };
    for total in 2..=2 * size_cap {
        for x in &xs {
            let ysize = match total.checked_sub(x.len()) {
                Some(s) if (1..=size_cap).contains(&s) => s,
                _ => continue,
            };
            let xset = VertexSet::from_vertices(n, x.iter().copied())?;
            let nx = g.set_neighborhood(&xset)?;
            let closed = nx.union(&xset);
            // Y avoids N[X] and sees all of N(X)
            let pool: Vec<usize> =
                (0..n).filter(|&y| !closed.contains(y) && nx.iter().all(|w| g.has_edge(w, y))).collect();
            if pool.len() < ysize {
                continue;
            }
            let chi_x = chi_of(x);
            for y in combinations(&pool, ysize) {
                if chi_x <= chi_of(&y) {
                    return Ok(Some((xset, VertexSet::from_vertices(n, y)?)));
                }
            }
        }
    }
    Ok(None)
}

/// binom(kℓ, ⌊kℓ/2⌋).
pub fn sperner_constant(k: u64, ell: u64) -> Result<u64> {
    if k == 0 || ell == 0 {
        return Err(Error::InvalidParameter("k and ell must be at least 1".into()));
    }
    let n = k.checked_mul(ell).ok_or(Error::Overflow("k * ell"))?;
    let r = n / 2;
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc.checked_mul((n - i) as u128).ok_or(Error::Overflow("central binomial"))? / (i as u128 + 1);
        if acc > u64::MAX as u128 {
            return Err(Error::Overflow("central binomial"));
        }
    }
    Ok(acc as u64)
}

/// Mixed vertices over an independent set, grouped by their trace on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TracePartition {
    pub mixed: VertexSet,
    /// Ordered by least member.
    pub classes: Vec<VertexSet>,
    /// Least member of each class.
    pub representatives: VertexSet,
}

pub fn mixed_trace_partition(g: &Graph, s: &VertexSet) -> Result<TracePartition> {
    g.check_set(s)?;
    if let Some((u, v)) = g.independent_violation(s) {
        return Err(Error::NotIndependent(u, v));
    }
    let n = g.order();
    let mixed = g.mixed_vertices(s)?;
    let mut by_trace: Vec<(VertexSet, VertexSet)> = Vec::new();
    for v in mixed.iter() {
        let trace = g.neighborhood(v)?.intersection(s);
        match by_trace.iter_mut().find(|(t, _)| *t == trace) {
            Some((_, cls)) => cls.insert(v),
            None => by_trace.push((trace, VertexSet::from_vertices(n, [v])?)),
        }
    }
    let classes: Vec<VertexSet> = by_trace.into_iter().map(|(_, c)| c).collect();
    let representatives = VertexSet::from_vertices(n, classes.iter().filter_map(VertexSet::min))?;
    Ok(TracePartition { mixed, classes, representatives })
}

/// True iff the sets N(s) ∩ U, s ∈ S, are pairwise incomparable.
pub fn antichain_check(g: &Graph, s: &VertexSet, u: &VertexSet) -> Result<bool> {
    g.check_set(s)?;
    g.check_set(u)?;
    let traces: Vec<VertexSet> =
        s.iter().map(|v| g.neighborhood(v).map(|nb| nb.intersection(u))).collect::<Result<_>>()?;
    for (i, a) in traces.iter().enumerate() {
        for (j, b) in traces.iter().enumerate() {
            if i != j && a.is_subset(b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// k-vertex-critical family-free graphs, stored by canonical graph6.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalDb {
    pub k: usize,
    pub family: Vec<PatternSpec>,
    /// Sorted by order, then text.
    pub members: Vec<String>,
}

impl CriticalDb {
    /// Canonicalizes and deduplicates `graphs`.
    pub fn new(k: usize, family: Vec<PatternSpec>, graphs: Vec<Graph>) -> Self {
        let mut members: Vec<(usize, String)> = graphs
            .iter()
            .map(|g| (g.order(), canonical_form(g).expect("member within canon budget").text))
            .collect();
        members.sort();
        members.dedup();
        CriticalDb { k, family, members: members.into_iter().map(|(_, t)| t).collect() }
    }

    pub fn graphs(&self) -> Result<Vec<Graph>> {
        self.members.iter().map(|m| parse_graph6(m)).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("#critdb k={} family={}\n", self.k, format_family(&self.family));
        for m in &self.members {
            let _ = writeln!(out, "{m}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::DbFormat { line: 1, reason: "empty file".into() })?;
        let bad = |reason: &str| Error::DbFormat { line: 1, reason: reason.into() };
        let rest = header.strip_prefix("#critdb ").ok_or_else(|| bad("missing #critdb header"))?;
        let (k_part, fam_part) = rest.split_once(' ').unwrap_or((rest, "family="));
        let k: usize = k_part
            .strip_prefix("k=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| bad("expected k=<number>"))?;
        let fam_text = fam_part.trim().strip_prefix("family=").ok_or_else(|| bad("expected family=<specs>"))?;
        let family = parse_family(fam_text).map_err(|e| bad(&e.to_string()))?;
        let mut members = Vec::new();
        for (i, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            parse_graph6(line).map_err(|e| Error::DbFormat { line: i + 1, reason: e.to_string() })?;
            members.push(line.to_string());
        }
        Ok(CriticalDb { k, family, members })
    }
}

/// Outcome of [`certify_k_colorable`]: each side carries a checkable witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Colorable(Coloring),
    /// An induced copy of the database member `member`.
    Obstruction { member: usize, graph: Graph, embedding: Embedding },
}

impl Certificate {
    pub fn verify(&self, g: &Graph, k: usize) -> bool {
        match self {
            Certificate::Colorable(c) => c.is_proper(g) && c.palette_size() <= k,
            Certificate::Obstruction { graph, embedding, .. } => embedding.verify(g, graph),
        }
    }
}

/// Decides k-colourability of a family-free graph against a database of
/// (k+1)-vertex-critical graphs for that family.
pub fn certify_k_colorable(g: &Graph, k: usize, db: &CriticalDb) -> Result<Certificate> {
    if db.k != k + 1 {
        return Err(Error::DbMismatch { db_k: db.k, expected: k + 1 });
    }
    if let Some(v) = Family::new(&db.family)?.first_violation(g) {
        return Err(v.into_error());
    }
    for (member, text) in db.members.iter().enumerate() {
        let h = parse_graph6(text)?;
        if let Some(embedding) = find_induced(g, &h) {
            return Ok(Certificate::Obstruction { member, graph: h, embedding });
        }
    }
    match is_k_colorable(g, k) {
        Some(c) => Ok(Certificate::Colorable(c)),
        None => Err(Error::DbIncomplete { k }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied()).unwrap()
    }

    fn w5() -> Graph {
        Graph::cycle(5).unwrap().join(&Graph::empty(1).unwrap()).unwrap()
    }

    #[test]
    fn report_examples() {
        assert!(criticality_report(&Graph::complete(4).unwrap(), 4).unwrap().verdict);
        let r = criticality_report(&Graph::cycle(5).unwrap(), 3).unwrap();
        assert_eq!((r.chi, r.per_vertex.clone(), r.verdict), (3, vec![2; 5], true));
        let pendant = Graph::complete(4).unwrap().add_vertex(&[0]).unwrap();
        let r = criticality_report(&pendant, 4).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.per_vertex[4], 4);
        assert!(criticality_report(&pendant, 0).is_err());
        assert!(is_vertex_critical(&w5(), 4));
        assert!(!is_vertex_critical(&pendant, 4));
    }

    #[test]
    fn extraction_examples() {
        let k4_iso = Graph::complete(4).unwrap().disjoint_union(&Graph::empty(1).unwrap()).unwrap();
        let h = extract_critical_subgraph(&k4_iso, 4).unwrap();
        assert_eq!((h.vertices, h.graph), (vec![0, 1, 2, 3], Graph::complete(4).unwrap()));
        let h = extract_critical_subgraph(&Graph::complete(5).unwrap(), 4).unwrap();
        assert_eq!(h.graph, Graph::complete(4).unwrap());
        assert_eq!(h.vertices, vec![1, 2, 3, 4]);
        // no single deletion keeps chi >= 4
        let w = w5();
        assert!((0..6).all(|v| is_k_colorable(&w.delete_vertex(v).unwrap(), 3).is_some()));
        assert_eq!(extract_critical_subgraph(&w, 4).unwrap().graph, w);
        assert!(matches!(extract_critical_subgraph(&Graph::cycle(5).unwrap(), 4), Err(Error::ChromaticTooSmall { chi: 3, k: 4 })));
    }

    #[test]
    fn comparable_pairs() {
        assert_eq!(find_comparable_nonadjacent(&Graph::path(3).unwrap()), Some((0, 2)));
        assert_eq!(find_comparable_nonadjacent(&Graph::cycle(5).unwrap()), None);
        assert_eq!(find_comparable_nonadjacent(&Graph::complete(4).unwrap()), None);
        // N(3) = {0} inside N(1) = {0, 2}: pair reported as (3, 1)
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 3), (0, 2)]).unwrap();
        assert_eq!(find_comparable_nonadjacent(&g), Some((3, 1)));
    }

    #[test]
    fn lemma_pairs() {
        let p3 = Graph::path(3).unwrap();
        let (x, y) = find_lemma_xy_violation(&p3, 1).unwrap().unwrap();
        assert_eq!((x, y), (set(3, &[0]), set(3, &[2])));
        assert_eq!(find_lemma_xy_violation(&Graph::complete(4).unwrap(), 2).unwrap(), None);
        assert_eq!(find_lemma_xy_violation(&Graph::cycle(5).unwrap(), 2).unwrap(), None);
        assert!(find_lemma_xy_violation(&p3, 0).is_err());
        // X = {0,1} (an edge, chi 2) vs Y = {3,4} (an edge) in 2K2 + a common neighbour
        let g = Graph::from_edges(5, &[(0, 1), (3, 4), (2, 0), (2, 1), (2, 3), (2, 4)]).unwrap();
        let (x, y) = find_lemma_xy_violation(&g, 2).unwrap().unwrap();
        assert!(g.is_anticomplete_between(&x, &y).unwrap());
    }

    #[test]
    fn subset_order() {
        let s = subsets_lex(3, 2);
        assert_eq!(s, vec![vec![0], vec![0, 1], vec![0, 2], vec![1], vec![1, 2], vec![2]]);
    }

    #[test]
    fn sperner_values() {
        assert_eq!(sperner_constant(1, 1).unwrap(), 1);
        assert_eq!(sperner_constant(2, 1).unwrap(), 2);
        assert_eq!(sperner_constant(2, 2).unwrap(), 6);
        assert_eq!(sperner_constant(5, 4).unwrap(), 184_756);
        assert_eq!(sperner_constant(66, 1).unwrap(), 7_219_428_434_016_265_740);
        assert!(matches!(sperner_constant(68, 1), Err(Error::Overflow(_))));
        assert!(sperner_constant(0, 3).is_err());
    }

    #[test]
    fn trace_partitions() {
        // s1=0, s2=1; a=2 ~ s1; b=3 ~ both; c=4 ~ s1
        let g = Graph::from_edges(5, &[(2, 0), (3, 0), (3, 1), (4, 0)]).unwrap();
        let t = mixed_trace_partition(&g, &set(5, &[0, 1])).unwrap();
        assert_eq!(t.mixed, set(5, &[2, 4]));
        assert_eq!(t.classes, vec![set(5, &[2, 4])]);
        assert_eq!(t.representatives, set(5, &[2]));

        let two_p2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let t = mixed_trace_partition(&two_p2, &set(4, &[0, 2])).unwrap();
        assert_eq!(t.mixed, set(4, &[1, 3]));
        assert_eq!(t.classes.len(), 2);
        assert_eq!(t.representatives, set(4, &[1, 3]));

        let k3 = Graph::complete(3).unwrap();
        assert!(mixed_trace_partition(&k3, &set(3, &[0])).unwrap().mixed.is_empty());
        assert_eq!(mixed_trace_partition(&k3, &set(3, &[0, 1])), Err(Error::NotIndependent(0, 1)));
    }

    #[test]
    fn antichains() {
        let two_p2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(antichain_check(&two_p2, &set(4, &[0, 2]), &set(4, &[1, 3])).unwrap());
        let p3 = Graph::path(3).unwrap();
        assert!(!antichain_check(&p3, &set(3, &[0, 2]), &set(3, &[1])).unwrap());
    }

    #[test]
    fn db_text_round_trip() {
        let db = CriticalDb::new(4, vec![PatternSpec::Path(4), PatternSpec::Broom(4, 1)], vec![Graph::complete(4).unwrap(), w5()]);
        let text = db.to_text();
        assert!(text.starts_with("#critdb k=4 family=P4,broom(4,1)\n"));
        assert_eq!(CriticalDb::parse(&text).unwrap(), db);
        let empty = CriticalDb::new(2, vec![], vec![]);
        assert_eq!(CriticalDb::parse(&empty.to_text()).unwrap(), empty);
        assert!(matches!(CriticalDb::parse("#critdb k=3 family=P4\nC~\nzz\n"), Err(Error::DbFormat { line: 3, .. })));
        assert!(CriticalDb::parse("k=3\n").is_err());
    }

    #[test]
    fn certify_examples() {
        let db = CriticalDb::new(4, vec![PatternSpec::Path(4)], vec![Graph::complete(4).unwrap()]);
        let k5 = Graph::complete(5).unwrap();
        let cert = certify_k_colorable(&k5, 3, &db).unwrap();
        assert!(matches!(cert, Certificate::Obstruction { member: 0, .. }));
        assert!(cert.verify(&k5, 3));

        let c4 = Graph::cycle(4).unwrap();
        match certify_k_colorable(&c4, 3, &db).unwrap() {
            Certificate::Colorable(c) => assert!(c.is_proper(&c4) && c.palette_size() == 2),
            other => panic!("{other:?}"),
        }
        let paw = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap();
        match certify_k_colorable(&paw, 3, &db).unwrap() {
            Certificate::Colorable(c) => assert!(c.is_proper(&paw) && c.palette_size() == 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(certify_k_colorable(&Graph::path(4).unwrap(), 3, &db), Err(Error::NotFree { .. })));
        assert!(matches!(certify_k_colorable(&k5, 4, &db), Err(Error::DbMismatch { .. })));
        let incomplete = CriticalDb::new(4, vec![], vec![]);
        assert_eq!(certify_k_colorable(&k5, 3, &incomplete), Err(Error::DbIncomplete { k: 3 }));
    }
}
