//! P4-free graphs: recognition by twin elimination, cotrees, optimal
//! colouring, and the anticomplete pair with a shared neighbourhood.

use std::collections::HashMap;
use std::fmt;

use crate::chroma::Coloring;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::patterns::find_induced;

/// Union/join decomposition of a P4-free graph.
///
/// Children are sorted by least leaf and unions never sit directly under
/// unions (same for joins). The null graph is the childless `Union`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Cotree {
    Leaf(usize),
    Union(Vec<Cotree>),
    Join(Vec<Cotree>),
}

impl Cotree {
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Cotree::Leaf(v) => out.push(*v),
            Cotree::Union(cs) | Cotree::Join(cs) => cs.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    fn min_leaf(&self) -> usize {
        match self {
            Cotree::Leaf(v) => *v,
            Cotree::Union(cs) | Cotree::Join(cs) => cs.iter().map(Cotree::min_leaf).min().unwrap_or(usize::MAX),
        }
    }

    /// The graph on `0..leaf count` described by this tree.
    pub fn realize(&self) -> Result<Graph> {
        let leaves = self.leaves();
        let n = leaves.len();
        let mut seen = vec![false; n];
        for &v in &leaves {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidParameter("cotree leaves are not a permutation of 0..n".into()));
            }
        }
        let mut edges = Vec::new();
        self.collect_edges(&mut edges);
        Graph::from_edges(n, &edges)
    }

    fn collect_edges(&self, edges: &mut Vec<(usize, usize)>) {
        match self {
            Cotree::Leaf(_) => {}
            Cotree::Union(cs) => cs.iter().for_each(|c| c.collect_edges(edges)),
            Cotree::Join(cs) => {
                let groups: Vec<Vec<usize>> = cs.iter().map(Cotree::leaves).collect();
                for (i, a) in groups.iter().enumerate() {
                    for b in &groups[i + 1..] {
                        for &u in a {
                            edges.extend(b.iter().map(|&v| (u, v)));
                        }
                    }
                }
                cs.iter().for_each(|c| c.collect_edges(edges));
            }
        }
    }

    /// Checks arity and alternation of internal nodes.
    pub fn is_well_formed(&self) -> bool {
        fn ok(t: &Cotree, parent_union: Option<bool>) -> bool {
            match t {
                Cotree::Leaf(_) => true,
                Cotree::Union(cs) => {
                    cs.len() >= 2 && parent_union != Some(true) && cs.iter().all(|c| ok(c, Some(true)))
                }
                Cotree::Join(cs) => {
                    cs.len() >= 2 && parent_union != Some(false) && cs.iter().all(|c| ok(c, Some(false)))
                }
            }
        }
        matches!(self, Cotree::Union(cs) if cs.is_empty()) || ok(self, None)
    }
}

impl fmt::Display for Cotree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (tag, cs) = match self {
            Cotree::Leaf(v) => return write!(f, "{v}"),
            Cotree::Union(cs) => ('U', cs),
            Cotree::Join(cs) => ('J', cs),
        };
        write!(f, "{tag}(")?;
        for (i, c) in cs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TwinKind {
    /// N(u) = N(v)
    False,
    /// N[u] = N[v]
    True,
}

/// Least twin pair among `active`, false twins first.
fn find_twins(g: &Graph, active: &VertexSet) -> Option<(usize, usize, TwinKind)> {
    let mask = active.words();
    let mut best: [Option<(usize, usize)>; 2] = [None, None];
    for (slot, kind) in [(0, TwinKind::False), (1, TwinKind::True)] {
        let mut first: HashMap<Vec<u64>, usize> = HashMap::new();
        for v in active.iter() {
            let mut key: Vec<u64> = g.row(v).iter().zip(mask).map(|(a, b)| a & b).collect();
            if kind == TwinKind::True {
                key[v / 64] |= 1 << (v % 64);
            }
            match first.get(&key) {
                Some(&u) => {
                    if best[slot].is_none_or(|b| (u, v) < b) {
                        best[slot] = Some((u, v));
                    }
                }
                None => {
                    first.insert(key, v);
                }
            }
        }
        if let Some((u, v)) = best[slot] {
            return Some((u, v, kind));
        }
    }
    None
}

/// Removes twins until one vertex is left; `None` if it gets stuck.
fn eliminate(g: &Graph) -> Option<Vec<(usize, usize, TwinKind)>> {
    let mut active = g.vertices();
    let mut steps = Vec::with_capacity(g.order());
    while active.len() > 1 {
        let (u, v, kind) = find_twins(g, &active)?;
        steps.push((u, v, kind));
        active.remove(v);
    }
    Some(steps)
}

fn p4_witness(g: &Graph) -> Error {
    let p4 = Graph::path(4).expect("P4");
    match find_induced(g, &p4) {
        Some(e) => Error::HasInducedP4(e.map),
        None => Error::Internal("twin elimination stalled on a P4-free graph".into()),
    }
}

#[derive(Debug)]
enum Slot {
    Leaf(usize),
    Node(TwinKind, Vec<usize>),
}

/// Builds the cotree, or reports an induced P4.
pub fn recognize(g: &Graph) -> Result<Cotree> {
    if g.order() == 0 {
        return Ok(Cotree::Union(Vec::new()));
    }
    let steps = eliminate(g).ok_or_else(|| p4_witness(g))?;

    // arena replay of the eliminations in reverse
    let root_vertex = (0..g.order()).find(|&v| steps.iter().all(|s| s.1 != v)).expect("one survivor");
    let mut slots = vec![Slot::Leaf(root_vertex)];
    let mut parent: Vec<Option<usize>> = vec![None];
    let mut leaf_of = vec![usize::MAX; g.order()];
    leaf_of[root_vertex] = 0;
    let mut root = 0usize;
    for &(u, v, kind) in steps.iter().rev() {
        let lu = leaf_of[u];
        let lv = slots.len();
        slots.push(Slot::Leaf(v));
        parent.push(None);
        leaf_of[v] = lv;
        match parent[lu] {
            Some(p) if matches!(slots[p], Slot::Node(k, _) if k == kind) => {
                if let Slot::Node(_, cs) = &mut slots[p] {
                    cs.push(lv);
                }
                parent[lv] = Some(p);
            }
            p => {
                let node = slots.len();
                slots.push(Slot::Node(kind, vec![lu, lv]));
                parent.push(p);
                parent[lu] = Some(node);
                parent[lv] = Some(node);
                match p {
                    Some(p) => {
                        if let Slot::Node(_, cs) = &mut slots[p] {
                            let at = cs.iter().position(|&c| c == lu).expect("child link");
                            cs[at] = node;
                        }
                    }
                    None => root = node,
                }
            }
        }
    }

    fn build(slots: &[Slot], at: usize) -> Cotree {
        match &slots[at] {
            Slot::Leaf(v) => Cotree::Leaf(*v),
            Slot::Node(kind, cs) => {
                let mut children: Vec<Cotree> = cs.iter().map(|&c| build(slots, c)).collect();
                children.sort_by_key(Cotree::min_leaf);
                match kind {
                    TwinKind::False => Cotree::Union(children),
                    TwinKind::True => Cotree::Join(children),
                }
            }
        }
    }
    Ok(build(&slots, root))
}

pub fn is_cograph(g: &Graph) -> bool {
    g.order() == 0 || eliminate(g).is_some()
}

/// Colours the realized graph with ω colours: unions share a palette,
/// joins stack their children's palettes.
pub fn cograph_color(tree: &Cotree) -> Coloring {
    fn walk(t: &Cotree, offset: usize, colors: &mut [usize]) -> usize {
        match t {
            Cotree::Leaf(v) => {
                colors[*v] = offset;
                1
            }
            Cotree::Union(cs) => cs.iter().map(|c| walk(c, offset, colors)).max().unwrap_or(0),
            Cotree::Join(cs) => cs.iter().fold(0, |used, c| used + walk(c, offset + used, colors)),
        }
    }
    let n = tree.leaves().len();
    let mut colors = vec![0; n];
    let palette = walk(tree, 0, &mut colors);
    Coloring::new(palette, colors).expect("colours within palette")
}

/// Anticomplete sets with a common, nonempty neighbourhood `w` to which
/// both are complete.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnticompletePair {
    pub x: VertexSet,
    pub y: VertexSet,
    pub w: VertexSet,
}

impl AnticompletePair {
    /// Re-checks every invariant against `g`.
    pub fn verify(&self, g: &Graph) -> bool {
        let (x, y, w) = (&self.x, &self.y, &self.w);
        if x.is_empty() || y.is_empty() || w.is_empty() || !x.is_disjoint(y) {
            return false;
        }
        let (Ok(nx), Ok(ny)) = (g.set_neighborhood(x), g.set_neighborhood(y)) else {
            return false;
        };
        nx == *w
            && ny == *w
            && g.is_anticomplete_between(x, y) == Ok(true)
            && g.is_complete_between(y, w) == Ok(true)
            && g.is_complete_between(x, w) == Ok(true)
    }
}

/// Finds an [`AnticompletePair`] in a connected, P4-free, non-complete graph.
///
/// Strips true twins until a false-twin pair appears, which seeds `X` and
/// `Y`; each stripped twin then rejoins whichever of `X`, `Y` holds its
/// partner, or neither.
pub fn find_anticomplete_pair(g: &Graph) -> Result<AnticompletePair> {
    if !is_cograph(g) {
        return Err(p4_witness(g));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.is_complete() {
        return Err(Error::NoInducedP3);
    }
    let n = g.order();
    let mut active = g.vertices();
    let mut stripped = Vec::new();
    let (mut x, mut y) = loop {
        match find_twins(g, &active) {
            Some((u, v, TwinKind::False)) => {
                break (VertexSet::from_vertices(n, [u])?, VertexSet::from_vertices(n, [v])?);
            }
            Some((u, v, TwinKind::True)) => {
                stripped.push((u, v));
                active.remove(v);
            }
            None => return Err(Error::Internal("no twins in a P4-free graph".into())),
        }
    };
    for &(u, v) in stripped.iter().rev() {
        if x.contains(u) {
            x.insert(v);
        } else if y.contains(u) {
            y.insert(v);
        }
    }
    let w = g.set_neighborhood(&x)?;
    let pair = AnticompletePair { x, y, w };
    if !pair.verify(g) {
        return Err(Error::Internal(format!("anticomplete pair failed verification: {pair:?}")));
    }
    Ok(pair)
}
