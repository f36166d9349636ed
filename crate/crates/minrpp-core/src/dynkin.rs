//! Simply-laced Dynkin diagrams, their orientations and root systems.
//!
//! Vertices are stored 0-based; vertex `v` carries the label `v + 1`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    D,
    E,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => "A",
            Family::D => "D",
            Family::E => "E",
        };
        f.write_str(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DynkinError {
    BadRank(Family, usize),
    BadName(String),
    VertexOutOfRange(usize),
    NotAnEdge(usize, usize),
    EdgeCount { expected: usize, got: usize },
    NotSourceOrSink(usize),
    NotMinuscule(usize),
    BadOrientation(String),
}

impl fmt::Display for DynkinError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinError::BadRank(fam, n) => write!(f, "no Dynkin diagram {fam}{n}"),
            DynkinError::BadName(s) => write!(f, "cannot parse diagram name {s:?}"),
            DynkinError::VertexOutOfRange(v) => write!(f, "vertex {} out of range", v + 1),
            DynkinError::NotAnEdge(a, b) => write!(f, "{} and {} are not adjacent", a + 1, b + 1),
            DynkinError::EdgeCount { expected, got } => {
                write!(f, "orientation lists {got} arrows, diagram has {expected} edges")
            }
            DynkinError::NotSourceOrSink(v) => write!(f, "vertex {} is neither a source nor a sink", v + 1),
            DynkinError::NotMinuscule(v) => write!(f, "vertex {} is not minuscule", v + 1),
            DynkinError::BadOrientation(s) => write!(f, "cannot parse orientation {s:?}"),
        }
    }
}

impl core::error::Error for DynkinError {}

/// A root written in the basis of simple roots.
pub type Root = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinDiagram {
    family: Family,
    rank: usize,
    adj: Vec<Vec<usize>>,
}

impl DynkinDiagram {
    pub fn new(family: Family, rank: usize) -> Result<Self, DynkinError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if !ok {
            return Err(DynkinError::BadRank(family, rank));
        }
        let mut edges: Vec<(usize, usize)> = Vec::new();
        match family {
            Family::A => {
                for v in 1..rank {
                    edges.push((v - 1, v));
                }
            }
            Family::D => {
                for v in 1..rank - 1 {
                    edges.push((v - 1, v));
                }
                edges.push((rank - 3, rank - 1));
            }
            Family::E => {
                // path 1..n-1 with the branch vertex n hanging off 3
                for v in 1..rank - 1 {
                    edges.push((v - 1, v));
                }
                edges.push((2, rank - 1));
            }
        }
        let mut adj = vec![Vec::new(); rank];
        for (a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        Ok(DynkinDiagram { family, rank, adj })
    }

    /// Parses names such as `A5`, `d4`, `E7`.
    pub fn parse(name: &str) -> Result<Self, DynkinError> {
        let name = name.trim();
        let mut chars = name.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(DynkinError::BadName(name.into())),
        };
        let rank: usize =
            chars.as_str().trim_start_matches('_').parse().map_err(|_| DynkinError::BadName(name.into()))?;
        Self::new(family, rank)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        a < self.rank && self.adj[a].contains(&b)
    }

    /// Edges as pairs `(a, b)` with `a < b`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.rank {
            for &b in &self.adj[a] {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), DynkinError> {
        if v < self.rank {
            Ok(())
        } else {
            Err(DynkinError::VertexOutOfRange(v))
        }
    }

    /// `(beta, alpha_i)` for the symmetric Cartan form.
    pub fn pairing(&self, beta: &[i64], i: usize) -> i64 {
        2 * beta[i] - self.adj[i].iter().map(|&j| beta[j]).sum::<i64>()
    }

    pub fn reflect(&self, beta: &[i64], i: usize) -> Root {
        let c = self.pairing(beta, i);
        let mut out = beta.to_vec();
        out[i] -= c;
        out
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut r = vec![0; self.rank];
        r[i] = 1;
        r
    }

    /// All positive roots, ordered by height and then lexicographically.
    pub fn positive_roots(&self) -> Vec<Root> {
        let mut seen: BTreeSet<Root> = BTreeSet::new();
        let mut stack: Vec<Root> = (0..self.rank).map(|i| self.simple_root(i)).collect();
        while let Some(r) = stack.pop() {
            if !seen.insert(r.clone()) {
                continue;
            }
            for i in 0..self.rank {
                let s = self.reflect(&r, i);
                if s.iter().all(|&x| x >= 0) && !seen.contains(&s) {
                    stack.push(s);
                }
            }
        }
        let mut out: Vec<Root> = seen.into_iter().collect();
        out.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| a.cmp(b))
        });
        out
    }

    pub fn highest_root(&self) -> Root {
        self.positive_roots().pop().expect("root system is non-empty")
    }

    /// Order of the Coxeter element `s_1 s_2 ... s_n` acting on all roots.
    pub fn coxeter_number(&self) -> usize {
        let pos = self.positive_roots();
        let mut roots: Vec<Root> = pos.clone();
        roots.extend(pos.iter().map(|r| r.iter().map(|x| -x).collect::<Root>()));
        let apply = |r: &Root| -> Root {
            let mut x = r.clone();
            for i in (0..self.rank).rev() {
                x = self.reflect(&x, i);
            }
            x
        };
        let mut order = 1usize;
        for r in &roots {
            let mut x = apply(r);
            let mut len = 1usize;
            while &x != r {
                x = apply(&x);
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }

    pub fn minuscule_vertices(&self) -> Vec<usize> {
        let n = self.rank;
        match (self.family, n) {
            (Family::A, _) => (0..n).collect(),
            (Family::D, _) => vec![0, n - 2, n - 1],
            (Family::E, 6) => vec![0, 4],
            (Family::E, 7) => vec![5],
            _ => Vec::new(),
        }
    }

    pub fn is_minuscule(&self, v: usize) -> bool {
        self.minuscule_vertices().contains(&v)
    }

    /// The diagram involution induced by the longest Weyl group element.
    pub fn psi(&self) -> Vec<usize> {
        let n = self.rank;
        let mut p: Vec<usize> = (0..n).collect();
        match (self.family, n) {
            (Family::A, _) => {
                for (v, slot) in p.iter_mut().enumerate() {
                    *slot = n - 1 - v;
                }
            }
            (Family::D, _) if n % 2 == 1 => {
                p.swap(n - 2, n - 1);
            }
            (Family::E, 6) => {
                p.swap(0, 4);
                p.swap(1, 3);
            }
            _ => {}
        }
        p
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// A Dynkin diagram with an orientation and its admissible numbering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinQuiver {
    diagram: DynkinDiagram,
    arrows: Vec<(usize, usize)>,
    order: Vec<usize>,
    num: Vec<usize>,
}

impl DynkinQuiver {
    /// `arrows` lists `(source, target)` pairs, one per edge.
    pub fn new(diagram: DynkinDiagram, arrows: Vec<(usize, usize)>) -> Result<Self, DynkinError> {
        let n = diagram.rank();
        let expected = diagram.edges().len();
        if arrows.len() != expected {
            return Err(DynkinError::EdgeCount { expected, got: arrows.len() });
        }
        let mut seen = BTreeSet::new();
        for &(a, b) in &arrows {
            diagram.check_vertex(a)?;
            diagram.check_vertex(b)?;
            if !diagram.adjacent(a, b) || !seen.insert((a.min(b), a.max(b))) {
                return Err(DynkinError::NotAnEdge(a, b));
            }
        }
        // sources first, ties to the smallest label
        let mut indeg = vec![0usize; n];
        for &(_, b) in &arrows {
            indeg[b] += 1;
        }
        let mut done = vec![false; n];
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let v = (0..n).find(|&v| !done[v] && indeg[v] == 0).expect("orientations of trees are acyclic");
            done[v] = true;
            order.push(v);
            for &(a, b) in &arrows {
                if a == v {
                    indeg[b] -= 1;
                }
            }
        }
        let mut num = vec![0; n];
        for (k, &v) in order.iter().enumerate() {
            num[v] = k;
        }
        let mut arrows = arrows;
        arrows.sort_unstable();
        Ok(DynkinQuiver { diagram, arrows, order, num })
    }

    /// Every edge oriented from the smaller label to the larger one.
    pub fn standard(diagram: DynkinDiagram) -> Self {
        let arrows = diagram.edges();
        Self::new(diagram, arrows).expect("edge list is complete")
    }

    /// Accepts `1<2>3` chains (the arrow head points at the target) or
    /// comma-separated arrows such as `1>2,3>2`.
    pub fn parse(diagram: DynkinDiagram, spec: &str) -> Result<Self, DynkinError> {
        let bad = || DynkinError::BadOrientation(spec.into());
        let label = |s: &str| -> Result<usize, DynkinError> {
            let v: usize = s.trim().parse().map_err(|_| bad())?;
            if v == 0 || v > diagram.rank() {
                return Err(DynkinError::VertexOutOfRange(v.wrapping_sub(1)));
            }
            Ok(v - 1)
        };
        let mut arrows = Vec::new();
        for piece in spec.split(',').filter(|p| !p.trim().is_empty()) {
            let mut labels = Vec::new();
            let mut dirs = Vec::new();
            let mut cur = String::new();
            for ch in piece.chars() {
                match ch {
                    '<' | '>' => {
                        labels.push(label(&cur)?);
                        dirs.push(ch);
                        cur.clear();
                    }
                    _ => cur.push(ch),
                }
            }
            labels.push(label(&cur)?);
            if dirs.is_empty() {
                return Err(bad());
            }
            for (k, d) in dirs.iter().enumerate() {
                let (a, b) = (labels[k], labels[k + 1]);
                arrows.push(if *d == '>' { (a, b) } else { (b, a) });
            }
        }
        if diagram.rank() == 1 && arrows.is_empty() {
            return Ok(Self::standard(diagram));
        }
        Self::new(diagram, arrows)
    }

    /// All `2^(n-1)` orientations of a diagram.
    pub fn all_orientations(diagram: &DynkinDiagram) -> Vec<DynkinQuiver> {
        let edges = diagram.edges();
        let mut out = Vec::new();
        for mask in 0u32..(1u32 << edges.len()) {
            let arrows =
                edges.iter().enumerate().map(|(k, &(a, b))| if mask >> k & 1 == 1 { (b, a) } else { (a, b) }).collect();
            out.push(Self::new(diagram.clone(), arrows).expect("valid orientation"));
        }
        out
    }

    pub fn diagram(&self) -> &DynkinDiagram {
        &self.diagram
    }

    pub fn rank(&self) -> usize {
        self.diagram.rank()
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// Vertices in admissible order: every arrow goes forward in this list.
    pub fn admissible_order(&self) -> &[usize] {
        &self.order
    }

    /// Position of `v` in the admissible order.
    pub fn number(&self, v: usize) -> usize {
        self.num[v]
    }

    pub fn has_arrow(&self, a: usize, b: usize) -> bool {
        self.arrows.binary_search(&(a, b)).is_ok()
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.arrows.iter().all(|&(_, b)| b != v)
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows.iter().all(|&(a, _)| a != v)
    }

    /// Reverses every arrow at `k`.
    pub fn sigma(&self, k: usize) -> Result<DynkinQuiver, DynkinError> {
        self.diagram.check_vertex(k)?;
        if !self.is_source(k) && !self.is_sink(k) {
            return Err(DynkinError::NotSourceOrSink(k));
        }
        let arrows = self.arrows.iter().map(|&(a, b)| if a == k || b == k { (b, a) } else { (a, b) }).collect();
        Self::new(self.diagram.clone(), arrows)
    }

    /// Human-readable arrow list using 1-based labels.
    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.arrows.iter().map(|&(a, b)| format!("{}>{}", a + 1, b + 1)).collect();
        format!("{} [{}]", self.diagram.name(), parts.join(","))
    }
}
