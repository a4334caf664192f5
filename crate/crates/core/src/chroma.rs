//! Exact colouring: clique and independence numbers, k-colourability and
//! the chromatic number.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A proper colouring with colours `0..palette_size`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    palette_size: usize,
    colors: Vec<usize>,
}

impl Coloring {
    pub fn new(palette_size: usize, colors: Vec<usize>) -> Result<Self> {
        if let Some(&c) = colors.iter().find(|&&c| c >= palette_size) {
            return Err(Error::InvalidParameter(format!("colour {c} outside palette of {palette_size}")));
        }
        Ok(Coloring { palette_size, colors })
    }

    /// Renumbers the colours in order of first use, dropping unused ones.
    pub fn compacted(colors: &[usize]) -> Self {
        let mut remap = std::collections::HashMap::new();
        let colors: Vec<usize> = colors
            .iter()
            .map(|&c| {
                let next = remap.len();
                *remap.entry(c).or_insert(next)
            })
            .collect();
        Coloring { palette_size: remap.len(), colors }
    }

    pub fn palette_size(&self) -> usize {
        self.palette_size
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    /// Vertices grouped by colour, one entry per palette colour.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.palette_size];
        for (v, &c) in self.colors.iter().enumerate() {
            classes[c].push(v);
        }
        classes
    }

    /// Total on `g` and no edge is monochromatic.
    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colors.len() == g.order()
            && self.colors.iter().all(|&c| c < self.palette_size)
            && g.edges().all(|(u, v)| self.colors[u] != self.colors[v])
    }
}

/// Exact solver with an optional cap on search nodes.
#[derive(Debug, Clone, Default)]
pub struct Solver {
    budget: Option<u64>,
    nodes: u64,
}

impl Solver {
    pub fn new() -> Self {
        Solver::default()
    }

    pub fn with_budget(budget: u64) -> Self {
        Solver { budget: Some(budget), nodes: 0 }
    }

    /// Search nodes visited so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        match self.budget {
            Some(b) if self.nodes > b => Err(Error::BudgetExhausted(b)),
            _ => Ok(()),
        }
    }

    /// A maximum clique, as increasing vertex indices.
    pub fn max_clique(&mut self, g: &Graph) -> Result<Vec<usize>> {
        let mut best = Vec::new();
        let mut clique = Vec::new();
        let mut cand: Vec<usize> = (0..g.order()).collect();
        cand.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
        self.expand_clique(g, &mut clique, cand, &mut best)?;
        best.sort_unstable();
        Ok(best)
    }

    fn expand_clique(&mut self, g: &Graph, clique: &mut Vec<usize>, cand: Vec<usize>, best: &mut Vec<usize>) -> Result<()> {
        self.tick()?;
        let (order, bounds) = color_sort(g, &cand);
        for i in (0..order.len()).rev() {
            if clique.len() + bounds[i] <= best.len() {
                return Ok(());
            }
            let v = order[i];
            clique.push(v);
            let next: Vec<usize> = order[..i].iter().copied().filter(|&u| g.has_edge(u, v)).collect();
            if next.is_empty() {
                if clique.len() > best.len() {
                    *best = clique.clone();
                }
            } else {
                self.expand_clique(g, clique, next, best)?;
            }
            clique.pop();
        }
        Ok(())
    }

    pub fn clique_number(&mut self, g: &Graph) -> Result<usize> {
        Ok(self.max_clique(g)?.len())
    }

    pub fn independence_number(&mut self, g: &Graph) -> Result<usize> {
        self.clique_number(&g.complement())
    }

    /// A proper colouring with at most `k` colours, or `None`.
    ///
    /// DSATUR-ordered backtracking: the next vertex has the fewest feasible
    /// colours, then the highest degree, then the least index. A colour
    /// class is only ever opened as the next unused index.
    pub fn is_k_colorable(&mut self, g: &Graph, k: usize) -> Result<Option<Coloring>> {
        let n = g.order();
        if n == 0 {
            return Ok(Some(Coloring { palette_size: 0, colors: Vec::new() }));
        }
        if k == 0 {
            return Ok(None);
        }
        let k = k.min(n);
        let mut state = DsaturState::new(g, k);
        if state.search(self, g)? {
            let colors: Vec<usize> = state.colors.iter().map(|&c| c as usize).collect();
            Ok(Some(Coloring { palette_size: state.used_max, colors }))
        } else {
            Ok(None)
        }
    }

    /// χ(G) with a witness using exactly χ colours.
    pub fn chromatic_number(&mut self, g: &Graph) -> Result<(usize, Coloring)> {
        if g.order() == 0 {
            return Ok((0, Coloring { palette_size: 0, colors: Vec::new() }));
        }
        let lower = self.clique_number(g)?;
        let greedy = dsatur_greedy(g);
        for k in lower..greedy.palette_size {
            if let Some(c) = self.is_k_colorable(g, k)? {
                return Ok((c.palette_size, c));
            }
        }
        Ok((greedy.palette_size, greedy))
    }
}

/// Greedy colouring of `cand` in order; returns vertices sorted by colour
/// and, per position, the number of colours used up to it.
fn color_sort(g: &Graph, cand: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in cand {
        match classes.iter_mut().find(|cls| cls.iter().all(|&u| !g.has_edge(u, v))) {
            Some(cls) => cls.push(v),
            None => classes.push(vec![v]),
        }
    }
    let mut order = Vec::with_capacity(cand.len());
    let mut bounds = Vec::with_capacity(cand.len());
    for (i, cls) in classes.into_iter().enumerate() {
        for v in cls {
            order.push(v);
            bounds.push(i + 1);
        }
    }
    (order, bounds)
}

const UNCOLORED: u32 = u32::MAX;

struct DsaturState {
    k: usize,
    colors: Vec<u32>,
    // neighbour colour counts, row-major n x k
    counts: Vec<u32>,
    degree: Vec<usize>,
    used: usize,
    used_max: usize,
    remaining: usize,
}

impl DsaturState {
    fn new(g: &Graph, k: usize) -> Self {
        let n = g.order();
        DsaturState {
            k,
            colors: vec![UNCOLORED; n],
            counts: vec![0; n * k],
            degree: (0..n).map(|v| g.degree(v)).collect(),
            used: 0,
            used_max: 0,
            remaining: n,
        }
    }

    fn feasible(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let limit = (self.used + 1).min(self.k);
        (0..limit).filter(move |&c| self.counts[v * self.k + c] == 0)
    }

    fn pick(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for v in 0..self.colors.len() {
            if self.colors[v] != UNCOLORED {
                continue;
            }
            let f = self.feasible(v).count();
            let better = match best {
                None => true,
                Some((b, bf)) => f < bf || (f == bf && self.degree[v] > self.degree[b]),
            };
            if better {
                best = Some((v, f));
                if f == 0 {
                    break;
                }
            }
        }
        best
    }

    fn assign(&mut self, g: &Graph, v: usize, c: usize) {
        self.colors[v] = c as u32;
        for u in g.neighbors(v) {
            self.counts[u * self.k + c] += 1;
        }
        self.remaining -= 1;
    }

    fn unassign(&mut self, g: &Graph, v: usize, c: usize) {
        self.colors[v] = UNCOLORED;
        for u in g.neighbors(v) {
            self.counts[u * self.k + c] -= 1;
        }
        self.remaining += 1;
    }

    fn search(&mut self, solver: &mut Solver, g: &Graph) -> Result<bool> {
        solver.tick()?;
        if self.remaining == 0 {
            self.used_max = self.used;
            return Ok(true);
        }
        let (v, f) = self.pick().expect("an uncoloured vertex remains");
        if f == 0 {
            return Ok(false);
        }
        let options: Vec<usize> = self.feasible(v).collect();
        for c in options {
            let opened = c == self.used;
            if opened {
                self.used += 1;
            }
            self.assign(g, v, c);
            if self.search(solver, g)? {
                return Ok(true);
            }
            self.unassign(g, v, c);
            if opened {
                self.used -= 1;
            }
        }
        Ok(false)
    }
}

/// Plain DSATUR heuristic; always succeeds.
pub fn dsatur_greedy(g: &Graph) -> Coloring {
    let n = g.order();
    let mut state = DsaturState::new(g, n.max(1));
    while state.remaining > 0 {
        let (v, _) = state.pick().expect("an uncoloured vertex remains");
        let c = state.feasible(v).next().expect("a fresh colour is always available");
        if c == state.used {
            state.used += 1;
        }
        state.assign(g, v, c);
    }
    Coloring { palette_size: state.used, colors: state.colors.iter().map(|&c| c as usize).collect() }
}

pub fn clique_number(g: &Graph) -> usize {
    Solver::new().clique_number(g).expect("unbounded solver")
}

pub fn max_clique(g: &Graph) -> Vec<usize> {
    Solver::new().max_clique(g).expect("unbounded solver")
}

pub fn independence_number(g: &Graph) -> usize {
    Solver::new().independence_number(g).expect("unbounded solver")
}

pub fn is_k_colorable(g: &Graph, k: usize) -> Option<Coloring> {
    Solver::new().is_k_colorable(g, k).expect("unbounded solver")
}

pub fn chromatic_number(g: &Graph) -> (usize, Coloring) {
    Solver::new().chromatic_number(g).expect("unbounded solver")
}
