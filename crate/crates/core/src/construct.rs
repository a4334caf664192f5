//! Constructive colourings of (P4 + ℓP1, K_k)-free graphs.
//!
//! Pick an independent set `S = {v_1, ..., v_s}` (greedily, at most ℓ
//! vertices). `S_i` is the set of vertices adjacent to `v_i` but to no
//! earlier `v_j`; `S` and the `S_i` partition N[S]. `S` takes one colour,
//! each `S_i` is coloured recursively with fresh colours (one colour when
//! the input is triangle-free), and when `|S| = ℓ` the rest of the graph is
//! P4-free, so it is coloured optimally through its cotree with one of its
//! classes reusing the colour of `S`.

use crate::chroma::Coloring;
use crate::cograph::{cograph_color, recognize};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::patterns::{Family, PatternSpec};

/// Closed form `ℓ^{k-2} + 2ℓ^{k-3} + ... + (k-2)ℓ + (k-1)`.
pub fn bound_f(k: u64, ell: u64) -> Result<u64> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("bound_f needs k >= 3, got {k}")));
    }
    let mut total: u64 = 0;
    for i in 1..k {
        let power = ell.checked_pow((k - 1 - i) as u32).ok_or(Error::Overflow("bound_f"))?;
        let term = power.checked_mul(i).ok_or(Error::Overflow("bound_f"))?;
        total = total.checked_add(term).ok_or(Error::Overflow("bound_f"))?;
    }
    Ok(total)
}

/// Same value via `f(3) = ℓ + 2`, `f(k+1) = ℓ·f(k) + k`.
pub fn bound_f_recursive(k: u64, ell: u64) -> Result<u64> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("bound_f needs k >= 3, got {k}")));
    }
    let mut f = ell.checked_add(2).ok_or(Error::Overflow("bound_f"))?;
    for j in 3..k {
        f = ell.checked_mul(f).and_then(|x| x.checked_add(j)).ok_or(Error::Overflow("bound_f"))?;
    }
    Ok(f)
}

/// `S`, the blocks `S_i` (one per member of `S`, possibly empty) and the
/// rest of the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodPartition {
    pub independent: Vec<usize>,
    pub blocks: Vec<VertexSet>,
    pub remainder: VertexSet,
}

/// Greedy `S`: least-indexed vertex nonadjacent to all chosen, up to ℓ.
pub fn partition_closed_neighborhood(g: &Graph, ell: usize) -> NeighborhoodPartition {
    let n = g.order();
    let mut s: Vec<usize> = Vec::new();
    for v in 0..n {
        if s.len() == ell {
            break;
        }
        if s.iter().all(|&u| !g.has_edge(u, v)) {
            s.push(v);
        }
    }
    let mut covered = VertexSet::from_vertices(n, s.iter().copied()).expect("in range");
    let mut blocks = Vec::with_capacity(s.len());
    for &v in &s {
        let block = g.neighborhood(v).expect("in range").difference(&covered);
        covered = covered.union(&block);
        blocks.push(block);
    }
    NeighborhoodPartition { independent: s, blocks, remainder: VertexSet::full(n).difference(&covered) }
}

fn cograph_colors(g: &Graph) -> Result<(Vec<usize>, usize)> {
    let tree = recognize(g)?;
    let c = cograph_color(&tree);
    Ok((c.colors().to_vec(), c.palette_size()))
}

/// Colours a (P4 + ℓP1, K_k)-free graph; returns raw colours and palette size.
fn color_rec(g: &Graph, ell: usize, k: usize) -> Result<(Vec<usize>, usize)> {
    let n = g.order();
    if n == 0 {
        return Ok((Vec::new(), 0));
    }
    if ell == 0 {
        return cograph_colors(g);
    }
    let part = partition_closed_neighborhood(g, ell);
    let mut colors = vec![usize::MAX; n];
    for &v in &part.independent {
        colors[v] = 0;
    }
    let mut next = 1;
    for block in &part.blocks {
        if block.is_empty() {
            continue;
        }
        let members = block.to_vec();
        if k <= 3 {
            // triangle-free: N(v_i) is independent
            for &v in &members {
                colors[v] = next;
            }
            next += 1;
        } else {
            let (sub, used) = color_rec(&g.induced_by(&members)?, ell, k - 1)?;
            for (&v, &c) in members.iter().zip(&sub) {
                colors[v] = next + c;
            }
            next += used;
        }
    }
    if !part.remainder.is_empty() {
        let members = part.remainder.to_vec();
        let (sub, used) = cograph_colors(&g.induced_by(&members)?)?;
        for (&v, &c) in members.iter().zip(&sub) {
            colors[v] = if c == 0 { 0 } else { next + c - 1 };
        }
        next += used.saturating_sub(1);
    }
    Ok((colors, next))
}

fn finish(g: &Graph, colors: Vec<usize>) -> Result<Coloring> {
    let coloring = Coloring::compacted(&colors);
    if !coloring.is_proper(g) {
        return Err(Error::InvalidParameter("input lies outside the family; construction is not proper".into()));
    }
    Ok(coloring)
}

fn check_family(g: &Graph, ell: usize, k: usize) -> Result<()> {
    let family = Family::new(&[PatternSpec::Path(4).plus_isolated(ell), PatternSpec::Clique(k)])?;
    match family.first_violation(g) {
        Some(v) => Err(v.into_error()),
        None => Ok(()),
    }
}

/// Colours a (P4 + ℓP1, K3)-free graph with at most ℓ + 2 colours.
pub fn color_k3_free(g: &Graph, ell: usize) -> Result<Coloring> {
    color_k3_free_with(g, ell, true)
}

/// [`color_k3_free`] with the family check optional.
pub fn color_k3_free_with(g: &Graph, ell: usize, verify: bool) -> Result<Coloring> {
    if verify {
        check_family(g, ell, 3)?;
    }
    let (colors, _) = color_rec(g, ell, 3)?;
    finish(g, colors)
}

/// Colours a (P4 + ℓP1, K_k)-free graph with at most `bound_f(k, ℓ)` colours.
pub fn color_kk_free(g: &Graph, ell: usize, k: usize) -> Result<Coloring> {
    color_kk_free_with(g, ell, k, true)
}

pub fn color_kk_free_with(g: &Graph, ell: usize, k: usize, verify: bool) -> Result<Coloring> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("clique parameter must be at least 3, got {k}")));
    }
    if verify {
        check_family(g, ell, k)?;
    }
    let (colors, _) = color_rec(g, ell, k)?;
    finish(g, colors)
}
