//! Forbidden-pattern families and induced-subgraph search.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Symbolic description of a small forbidden graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatternSpec {
    Path(usize),
    Clique(usize),
    /// K_{1,m}: centre 0, leaves `1..=m`.
    Star(usize),
    Cycle(usize),
    /// Path `u_1..u_n` whose last vertex also carries `m` pendant leaves.
    Broom(usize, usize),
    /// B(3,m) with a triangle glued onto the edge `u_2 u_3`.
    BroomPlus(usize),
    Chair,
    Bull,
    Cricket,
    TwoP2,
    Gem,
    Union(Box<PatternSpec>, Box<PatternSpec>),
    PlusIsolated(Box<PatternSpec>, usize),
}

impl PatternSpec {
    /// `spec + ell P1`.
    pub fn plus_isolated(self, ell: usize) -> Self {
        PatternSpec::PlusIsolated(Box::new(self), ell)
    }

    pub fn union(self, other: PatternSpec) -> Self {
        PatternSpec::Union(Box::new(self), Box::new(other))
    }

    /// Builds the labelled graph for this pattern. The labelling is fixed per variant.
    pub fn realize(&self) -> Result<Graph> {
        use PatternSpec::*;
        match *self {
            Path(n) => {
                if n == 0 {
                    return Err(Error::Pattern("P0 has no vertices".into()));
                }
                Graph::path(n)
            }
            Clique(n) => {
                if n == 0 {
                    return Err(Error::Pattern("K0 has no vertices".into()));
                }
                Graph::complete(n)
            }
            Star(m) => {
                let edges: Vec<_> = (1..=m).map(|i| (0, i)).collect();
                Graph::from_edges(m + 1, &edges)
            }
            Cycle(n) => {
                if n < 3 {
                    return Err(Error::Pattern(format!("C{n} needs at least 3 vertices")));
                }
                Graph::cycle(n)
            }
            Broom(n, m) => {
                if n < 2 {
                    return Err(Error::Pattern(format!("broom({n},{m}) needs a path of order at least 2")));
                }
                let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
                edges.extend((n..n + m).map(|w| (n - 1, w)));
                Graph::from_edges(n + m, &edges)
            }
            BroomPlus(m) => {
                // u1=0, u2=1, u3=2, x=3, w_i=4..
                let mut edges = vec![(0, 1), (1, 2), (1, 3), (2, 3)];
                edges.extend((4..4 + m).map(|w| (2, w)));
                Graph::from_edges(4 + m, &edges)
            }
            Chair => Broom(3, 2).realize(),
            Bull => BroomPlus(1).realize(),
            // triangle 0,1,2 with two leaves on 0
            Cricket => Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4)]),
            TwoP2 => Graph::from_edges(4, &[(0, 1), (2, 3)]),
            Gem => Graph::path(4)?.join(&Graph::empty(1)?),
            Union(ref a, ref b) => a.realize()?.disjoint_union(&b.realize()?),
            PlusIsolated(ref s, ell) => s.realize()?.disjoint_union(&Graph::empty(ell)?),
        }
    }
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use PatternSpec::*;
        match self {
            Path(n) => write!(f, "P{n}"),
            Clique(n) => write!(f, "K{n}"),
            Star(m) => write!(f, "star({m})"),
            Cycle(n) => write!(f, "C{n}"),
            Broom(n, m) => write!(f, "broom({n},{m})"),
            BroomPlus(m) => write!(f, "broomplus({m})"),
            Chair => write!(f, "chair"),
            Bull => write!(f, "bull"),
            Cricket => write!(f, "cricket"),
            TwoP2 => write!(f, "2P2"),
            Gem => write!(f, "gem"),
            Union(a, b) => write!(f, "{a}+{b}"),
            PlusIsolated(s, 0) => write!(f, "{s}"),
            PlusIsolated(s, 1) => write!(f, "{s}+P1"),
            PlusIsolated(s, ell) => write!(f, "{s}+{ell}P1"),
        }
    }
}

fn split_top_level(text: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

/// Parses a comma-separated list such as `P4+2P1,broom(4,1),K3`.
pub fn parse_family(text: &str) -> Result<Vec<PatternSpec>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top_level(text, ',').into_iter().map(str::parse).collect()
}

pub fn format_family(family: &[PatternSpec]) -> String {
    family.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_number(s: &str, whole: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| Error::Pattern(format!("bad number {s:?} in {whole:?}")))
}

fn parse_args<'a>(rest: &'a str, whole: &str) -> Result<Vec<&'a str>> {
    let inner = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Pattern(format!("expected parenthesised arguments in {whole:?}")))?;
    Ok(inner.split(',').collect())
}

fn parse_base(term: &str, whole: &str) -> Result<PatternSpec> {
    use PatternSpec::*;
    let simple = match term {
        "chair" => Some(Chair),
        "bull" => Some(Bull),
        "cricket" => Some(Cricket),
        "gem" => Some(Gem),
        _ => None,
    };
    if let Some(s) = simple {
        return Ok(s);
    }
    for (name, arity) in [("broomplus", 1), ("broom", 2), ("star", 1)] {
        if let Some(rest) = term.strip_prefix(name) {
            let args = parse_args(rest, whole)?;
            if args.len() != arity {
                return Err(Error::Pattern(format!("{name} takes {arity} argument(s) in {whole:?}")));
            }
            let nums: Vec<usize> = args.iter().map(|a| parse_number(a, whole)).collect::<Result<_>>()?;
            return Ok(match name {
                "broomplus" => BroomPlus(nums[0]),
                "broom" => Broom(nums[0], nums[1]),
                _ => Star(nums[0]),
            });
        }
    }
    let mut chars = term.chars();
    let head = chars.next().ok_or_else(|| Error::Pattern(format!("empty term in {whole:?}")))?;
    let n = parse_number(chars.as_str(), whole)?;
    match head {
        'p' => Ok(Path(n)),
        'k' => Ok(Clique(n)),
        'c' => Ok(Cycle(n)),
        _ => Err(Error::Pattern(format!("unknown pattern {term:?} in {whole:?}"))),
    }
}

impl FromStr for PatternSpec {
    type Err = Error;

    /// Case-insensitive. Terms joined by `+`; a leading count repeats the
    /// term, and `cP1` terms become isolated vertices on the rest.
    fn from_str(text: &str) -> Result<Self> {
        let lower: String = text.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
        if lower.is_empty() {
            return Err(Error::Pattern("empty pattern".into()));
        }
        let mut base: Option<PatternSpec> = None;
        let mut isolated = 0usize;
        for term in split_top_level(&lower, '+') {
            let digits = term.chars().take_while(|c| c.is_ascii_digit()).count();
            let (count, body) = if digits > 0 {
                (parse_number(&term[..digits], text)?, &term[digits..])
            } else {
                (1, term)
            };
            if count == 0 {
                return Err(Error::Pattern(format!("zero multiplicity in {text:?}")));
            }
            let spec = parse_base(body, text)?;
            if spec == PatternSpec::Path(1) {
                isolated += count;
                continue;
            }
            let repeated = if spec == PatternSpec::Path(2) && count == 2 {
                PatternSpec::TwoP2
            } else {
                (1..count).fold(spec.clone(), |acc, _| acc.union(spec.clone()))
            };
            base = Some(match base {
                None => repeated,
                Some(b) => b.union(repeated),
            });
        }
        Ok(match (base, isolated) {
            (Some(b), 0) => b,
            (Some(b), ell) => b.plus_isolated(ell),
            (None, 1) => PatternSpec::Path(1),
            (None, ell) => PatternSpec::Path(1).plus_isolated(ell - 1),
        })
    }
}

/// Injective map from pattern vertices to host vertices preserving adjacency
/// and non-adjacency. `map[p]` is the image of pattern vertex `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Re-checks the induced condition pair by pair.
    pub fn verify(&self, host: &Graph, pattern: &Graph) -> bool {
        if self.map.len() != pattern.order() || self.map.iter().any(|&h| h >= host.order()) {
            return false;
        }
        for a in 0..self.map.len() {
            for b in (a + 1)..self.map.len() {
                if self.map[a] == self.map[b] || pattern.has_edge(a, b) != host.has_edge(self.map[a], self.map[b]) {
                    return false;
                }
            }
        }
        true
    }

    /// Image vertices in increasing order.
    pub fn image(&self) -> Vec<usize> {
        let mut v = self.map.clone();
        v.sort_unstable();
        v
    }
}

struct Search<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    order: Vec<usize>,
    pdeg: Vec<usize>,
    hdeg: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl<'a> Search<'a> {
    fn new(host: &'a Graph, pattern: &'a Graph) -> Self {
        let pdeg: Vec<usize> = (0..pattern.order()).map(|p| pattern.degree(p)).collect();
        let mut order: Vec<usize> = (0..pattern.order()).collect();
        order.sort_by(|&a, &b| pdeg[b].cmp(&pdeg[a]).then(a.cmp(&b)));
        Search {
            host,
            pattern,
            order,
            pdeg,
            hdeg: (0..host.order()).map(|h| host.degree(h)).collect(),
            map: vec![usize::MAX; pattern.order()],
            used: vec![false; host.order()],
        }
    }

    fn fits(&self, p: usize, h: usize, depth: usize) -> bool {
        let (np, nh) = (self.pattern.order(), self.host.order());
        if self.used[h] || self.hdeg[h] < self.pdeg[p] || nh - 1 - self.hdeg[h] < np - 1 - self.pdeg[p] {
            return false;
        }
        self.order[..depth].iter().all(|&q| self.pattern.has_edge(p, q) == self.host.has_edge(h, self.map[q]))
    }

    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let p = self.order[depth];
        if self.map[p] != usize::MAX {
            // pre-assigned
            let h = self.map[p];
            self.map[p] = usize::MAX;
            let ok = self.fits(p, h, depth);
            self.map[p] = h;
            if !ok {
                return false;
            }
            self.used[h] = true;
            if self.run(depth + 1) {
                return true;
            }
            self.used[h] = false;
            return false;
        }
        for h in 0..self.host.order() {
            if self.fits(p, h, depth) {
                self.map[p] = h;
                self.used[h] = true;
                if self.run(depth + 1) {
                    return true;
                }
                self.used[h] = false;
                self.map[p] = usize::MAX;
            }
        }
        false
    }
}

/// Looks for an induced copy of `pattern` in `host`.
///
/// Pattern vertices are matched in order of decreasing degree (ties by
/// index) and host candidates in increasing index, so the result is the
/// least embedding in that order.
pub fn find_induced(host: &Graph, pattern: &Graph) -> Option<Embedding> {
    if pattern.order() > host.order() {
        return None;
    }
    let mut search = Search::new(host, pattern);
    search.run(0).then_some(Embedding { map: search.map })
}

/// Like [`find_induced`], but only embeddings whose image contains `vertex`.
pub fn find_induced_containing(host: &Graph, pattern: &Graph, vertex: usize) -> Option<Embedding> {
    if pattern.order() > host.order() || vertex >= host.order() {
        return None;
    }
    for p in 0..pattern.order() {
        let mut search = Search::new(host, pattern);
        // move p to the front so the fixed vertex constrains everything after it
        search.order.retain(|&q| q != p);
        search.order.insert(0, p);
        search.map[p] = vertex;
        if search.run(0) {
            return Some(Embedding { map: search.map });
        }
    }
    None
}

/// First violated pattern of a freeness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub index: usize,
    pub spec: PatternSpec,
    pub embedding: Embedding,
}

impl Violation {
    pub fn into_error(self) -> Error {
        Error::NotFree { pattern: self.spec.to_string(), embedding: self.embedding.map }
    }
}

/// Realized family, ready for repeated freeness checks.
#[derive(Debug, Clone)]
pub struct Family {
    specs: Vec<PatternSpec>,
    graphs: Vec<Graph>,
}

impl Family {
    pub fn new(specs: &[PatternSpec]) -> Result<Self> {
        let graphs = specs.iter().map(PatternSpec::realize).collect::<Result<_>>()?;
        Ok(Family { specs: specs.to_vec(), graphs })
    }

    pub fn specs(&self) -> &[PatternSpec] {
        &self.specs
    }

    pub fn graphs(&self) -> &[Graph] {
        &self.graphs
    }

    pub fn first_violation(&self, g: &Graph) -> Option<Violation> {
        self.graphs.iter().enumerate().find_map(|(i, p)| {
            find_induced(g, p).map(|embedding| Violation { index: i, spec: self.specs[i].clone(), embedding })
        })
    }

    /// Only copies using `vertex`; enough when `g - vertex` is already free.
    pub fn violation_containing(&self, g: &Graph, vertex: usize) -> Option<Violation> {
        self.graphs.iter().enumerate().find_map(|(i, p)| {
            find_induced_containing(g, p, vertex)
                .map(|embedding| Violation { index: i, spec: self.specs[i].clone(), embedding })
        })
    }

    pub fn is_free(&self, g: &Graph) -> bool {
        self.first_violation(g).is_none()
    }
}

/// `Ok(None)` if `g` is free of every spec, else the first violation.
pub fn is_free(g: &Graph, specs: &[PatternSpec]) -> Result<Option<Violation>> {
    Ok(Family::new(specs)?.first_violation(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;
    use PatternSpec::*;

    fn iso(a: &Graph, b: &Graph) -> bool {
        a.order() == b.order() && a.edge_count() == b.edge_count() && find_induced(a, b).is_some()
    }

    #[test]
    fn named_identities() {
        assert_eq!(Broom(4, 1).realize().unwrap(), Graph::path(5).unwrap());
        assert!(iso(&BroomPlus(1).realize().unwrap(), &Bull.realize().unwrap()));
        assert!(iso(&Broom(3, 2).realize().unwrap(), &Chair.realize().unwrap()));
        // cricket: delete the leaf at the degree-3 vertex of B(3,2)+
        let bp2 = BroomPlus(2).realize().unwrap();
        let deg3: Vec<_> = (0..bp2.order()).filter(|&v| bp2.degree(v) == 3).collect();
        assert_eq!(deg3.len(), 1);
        let leaf = bp2.neighbors(deg3[0]).find(|&w| bp2.degree(w) == 1).unwrap();
        let cricket = bp2.delete_vertex(leaf).unwrap();
        assert!(iso(&cricket, &Cricket.realize().unwrap()));
        assert_eq!(Broom(3, 4).realize().unwrap().order(), 7);
        assert_eq!(BroomPlus(3).realize().unwrap().order(), 7);
    }

    #[test]
    fn bull_shape() {
        let bull = Bull.realize().unwrap();
        let mut degrees: Vec<_> = (0..5).map(|v| bull.degree(v)).collect();
        degrees.sort();
        assert_eq!(degrees, vec![1, 1, 2, 3, 3]);
    }

    #[test]
    fn broom3_inside_broom4_and_broomplus() {
        for m in 0..4 {
            let b3 = Broom(3, m).realize().unwrap();
            assert!(find_induced(&Broom(4, m).realize().unwrap(), &b3).is_some());
            assert!(find_induced(&BroomPlus(m).realize().unwrap(), &b3).is_some());
        }
    }

    #[test]
    fn invalid_parameters() {
        assert!(Broom(1, 3).realize().is_err());
        assert!(Cycle(2).realize().is_err());
        assert!(Path(0).realize().is_err());
    }

    #[test]
    fn find_induced_examples() {
        let c5 = Graph::cycle(5).unwrap();
        let e = find_induced(&c5, &Graph::path(4).unwrap()).unwrap();
        assert!(e.verify(&c5, &Graph::path(4).unwrap()));
        assert!(find_induced(&Graph::complete(4).unwrap(), &Graph::path(3).unwrap()).is_none());
        assert!(find_induced(&c5, &TwoP2.realize().unwrap()).is_none());
        assert!(find_induced(&Graph::path(2).unwrap(), &Graph::path(3).unwrap()).is_none());
    }

    #[test]
    fn find_containing() {
        let g = Graph::path(4).unwrap().disjoint_union(&Graph::empty(1).unwrap()).unwrap();
        let p3 = Graph::path(3).unwrap();
        assert!(find_induced_containing(&g, &p3, 4).is_none());
        let e = find_induced_containing(&g, &p3, 3).unwrap();
        assert!(e.map.contains(&3) && e.verify(&g, &p3));
    }

    #[test]
    fn is_free_examples() {
        let c5 = Graph::cycle(5).unwrap();
        assert!(is_free(&c5, &[Path(5)]).unwrap().is_none());
        let k5 = Graph::complete(5).unwrap();
        let v = is_free(&k5, &[Clique(4)]).unwrap().unwrap();
        assert_eq!(v.spec, Clique(4));
        assert!(v.embedding.verify(&k5, &Graph::complete(4).unwrap()));
        assert!(is_free(&c5, &[Path(4).plus_isolated(1)]).unwrap().is_none());
    }

    #[test]
    fn union_and_isolated() {
        let u = Path(3).union(Clique(2)).realize().unwrap();
        assert_eq!(u, Graph::path(3).unwrap().disjoint_union(&Graph::complete(2).unwrap()).unwrap());
        let p = Path(4).plus_isolated(3).realize().unwrap();
        assert_eq!(p.order(), 7);
        assert_eq!(p.edge_count(), 3);
        let iso = VertexSet::from_vertices(7, 4..7).unwrap();
        assert_eq!(p.set_neighborhood(&iso).unwrap().len(), 0);
    }

    #[test]
    fn grammar() {
        let cases = [
            ("P5", Path(5)),
            ("k4", Clique(4)),
            ("C5", Cycle(5)),
            ("2P2", TwoP2),
            ("Chair", Chair),
            ("BULL", Bull),
            ("cricket", Cricket),
            ("gem", Gem),
            ("broom(4,1)", Broom(4, 1)),
            ("broomplus(2)", BroomPlus(2)),
            ("star(3)", Star(3)),
            ("P4+2P1", Path(4).plus_isolated(2)),
            ("P4+P1", Path(4).plus_isolated(1)),
            ("2P1+P4", Path(4).plus_isolated(2)),
            ("bull+P1", Bull.plus_isolated(1)),
            ("P3+P2", Path(3).union(Path(2))),
            ("2P3", Path(3).union(Path(3))),
            ("3P1", Path(1).plus_isolated(2)),
        ];
        for (text, spec) in cases {
            assert_eq!(text.parse::<PatternSpec>().unwrap(), spec, "{text}");
            let shown = spec.to_string();
            assert_eq!(shown.parse::<PatternSpec>().unwrap().realize().unwrap(), spec.realize().unwrap());
        }
        for bad in ["", "Q4", "broom(1)", "P", "0P2", "star(x)"] {
            assert!(bad.parse::<PatternSpec>().is_err(), "{bad}");
        }
        let fam = parse_family("P4+2P1,broom(4,1),K3").unwrap();
        assert_eq!(fam, vec![Path(4).plus_isolated(2), Broom(4, 1), Clique(3)]);
        assert_eq!(parse_family(&format_family(&fam)).unwrap(), fam);
        assert!(parse_family("").unwrap().is_empty());
    }
}
