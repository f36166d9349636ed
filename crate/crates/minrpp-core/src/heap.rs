//! Heaps over Dynkin graphs, with the minuscule heaps `P_{Q,m}` as the main
//! instance.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arquiver::{Pos, Zq};
use crate::bitset::Bitset;
use crate::dynkin::{DynkinError, DynkinQuiver, Family, Root};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HeapError {
    Dynkin(DynkinError),
    NotMinuscule(usize),
    Cyclic,
    NoAntiautomorphism,
    IsoMismatch(String),
}

impl fmt::Display for HeapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeapError::Dynkin(e) => e.fmt(f),
            HeapError::NotMinuscule(m) => write!(f, "vertex {} is not minuscule", m + 1),
            HeapError::Cyclic => f.write_str("cover relation contains a cycle"),
            HeapError::NoAntiautomorphism => f.write_str("no order-reversing map intertwines the fibres with psi"),
            HeapError::IsoMismatch(s) => write!(f, "heap is not isomorphic to {s}"),
        }
    }
}

impl core::error::Error for HeapError {}

impl From<DynkinError> for HeapError {
    fn from(e: DynkinError) -> Self {
        HeapError::Dynkin(e)
    }
}

/// A finite poset stored as its strict order relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    above: Vec<Bitset>,
}

impl Poset {
    /// `relations` lists pairs `(x, y)` with `x < y`; the order is their
    /// transitive closure.
    pub fn from_relations(n: usize, relations: &[(usize, usize)]) -> Result<Self, HeapError> {
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(x, y) in relations {
            succ[x].push(y);
            indeg[y] += 1;
        }
        let mut topo = Vec::with_capacity(n);
        let mut ready: Vec<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
        while let Some(x) = ready.pop() {
            topo.push(x);
            for &y in &succ[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    ready.push(y);
                }
            }
        }
        if topo.len() != n {
            return Err(HeapError::Cyclic);
        }
        let mut above = vec![Bitset::new(n); n];
        for &x in topo.iter().rev() {
            let mut acc = Bitset::new(n);
            for &y in &succ[x] {
                acc.insert(y);
                acc.union_with(&above[y]);
            }
            above[x] = acc;
        }
        Ok(Poset { above })
    }

    pub fn chain(n: usize) -> Self {
        let rel: Vec<_> = (1..n).map(|x| (x - 1, x)).collect();
        Self::from_relations(n, &rel).expect("chains are acyclic")
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_relations(n, &[]).expect("no relations")
    }

    /// The product of chains `[a] × [b]`; element `(i, j)` has index `i * b + j`.
    pub fn grid(a: usize, b: usize) -> Self {
        let mut rel = Vec::new();
        for i in 0..a {
            for j in 0..b {
                if i + 1 < a {
                    rel.push((i * b + j, (i + 1) * b + j));
                }
                if j + 1 < b {
                    rel.push((i * b + j, i * b + j + 1));
                }
            }
        }
        Self::from_relations(a * b, &rel).expect("grids are acyclic")
    }

    pub fn len(&self) -> usize {
        self.above.len()
    }

    pub fn is_empty(&self) -> bool {
        self.above.is_empty()
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.above[x].contains(y)
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        x == y || self.lt(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.le(x, y) || self.le(y, x)
    }

    pub fn strictly_above(&self, x: usize) -> &Bitset {
        &self.above[x]
    }

    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in self.above[x].iter() {
                if !self.above[x].iter().any(|z| self.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Elements sorted so that every relation goes forward.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.len()).collect();
        v.sort_by_key(|&x| (self.len() - self.above[x].count(), x));
        v
    }

    pub fn is_ideal(&self, s: &Bitset) -> bool {
        (0..self.len()).all(|y| !s.contains(y) || (0..self.len()).all(|x| !self.lt(x, y) || s.contains(x)))
    }

    pub fn is_filter(&self, s: &Bitset) -> bool {
        s.iter().all(|x| self.above[x].is_subset(s))
    }

    /// All order ideals, in no particular order.
    pub fn ideals(&self) -> Vec<Bitset> {
        let n = self.len();
        let order = self.linear_extension();
        let below: Vec<Vec<usize>> = (0..n).map(|y| (0..n).filter(|&x| self.lt(x, y)).collect()).collect();
        let mut out = Vec::new();
        let mut cur = Bitset::new(n);
        fn go(k: usize, order: &[usize], below: &[Vec<usize>], cur: &mut Bitset, out: &mut Vec<Bitset>) {
            if k == order.len() {
                out.push(cur.clone());
                return;
            }
            let x = order[k];
            go(k + 1, order, below, cur, out);
            if below[x].iter().all(|&z| cur.contains(z)) {
                cur.insert(x);
                go(k + 1, order, below, cur, out);
                cur.remove(x);
            }
        }
        go(0, &order, &below, &mut cur, &mut out);
        out
    }

    pub fn filters(&self) -> Vec<Bitset> {
        self.ideals().iter().map(|i| i.complement()).collect()
    }

    /// The lattice of order ideals ordered by inclusion.
    pub fn j(&self) -> Poset {
        let ideals = self.ideals();
        let n = ideals.len();
        let mut rel = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && ideals[a].is_subset(&ideals[b]) {
                    rel.push((a, b));
                }
            }
        }
        Poset::from_relations(n, &rel).expect("inclusion is acyclic")
    }

    pub fn dual(&self) -> Poset {
        let n = self.len();
        let mut rel = Vec::new();
        for x in 0..n {
            for y in self.above[x].iter() {
                rel.push((y, x));
            }
        }
        Poset::from_relations(n, &rel).expect("dual of a poset is a poset")
    }

    /// Sub-poset induced on `elems`, re-indexed in the given order.
    pub fn induced(&self, elems: &[usize]) -> Poset {
        let mut rel = Vec::new();
        for (a, &x) in elems.iter().enumerate() {
            for (b, &y) in elems.iter().enumerate() {
                if self.lt(x, y) {
                    rel.push((a, b));
                }
            }
        }
        Poset::from_relations(elems.len(), &rel).expect("restriction of a poset")
    }

    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        isomorphism(self, None, other, None).is_some()
    }
}

/// Finds an order isomorphism `a → b`, optionally respecting labels.
pub fn isomorphism(a: &Poset, la: Option<&[usize]>, b: &Poset, lb: Option<&[usize]>) -> Option<Vec<usize>> {
    let n = a.len();
    if n != b.len() {
        return None;
    }
    let sig = |p: &Poset, l: Option<&[usize]>| -> Vec<(usize, usize, usize)> {
        let below: Vec<usize> = (0..n).map(|y| (0..n).filter(|&x| p.lt(x, y)).count()).collect();
        (0..n).map(|x| (p.above[x].count(), below[x], l.map_or(0, |l| l[x] + 1))).collect()
    };
    let sa = sig(a, la);
    let sb = sig(b, lb);
    let mut ca = sa.clone();
    let mut cb = sb.clone();
    ca.sort_unstable();
    cb.sort_unstable();
    if ca != cb {
        return None;
    }
    let order = a.linear_extension();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    #[allow(clippy::too_many_arguments)]
    fn go(
        k: usize,
        order: &[usize],
        a: &Poset,
        b: &Poset,
        sa: &[(usize, usize, usize)],
        sb: &[(usize, usize, usize)],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let x = order[k];
        for y in 0..b.len() {
            if used[y] || sa[x] != sb[y] {
                continue;
            }
            let ok = order[..k].iter().all(|&z| {
                let w = map[z];
                a.lt(z, x) == b.lt(w, y) && a.lt(x, z) == b.lt(y, w)
            });
            if !ok {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if go(k + 1, order, a, b, sa, sb, map, used) {
                return true;
            }
            used[y] = false;
            map[x] = usize::MAX;
        }
        false
    }
    if go(0, &order, a, b, &sa, &sb, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

/// Pass/fail for each heap axiom.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HeapReport {
    pub h1: bool,
    pub h2: bool,
    pub h3: bool,
    pub two_neighbourly: bool,
    pub converse: bool,
    pub converse_dual: bool,
}

impl HeapReport {
    pub fn all_pass(&self) -> bool {
        self.h1 && self.h2 && self.h3 && self.two_neighbourly && self.converse && self.converse_dual
    }

    pub fn entries(&self) -> [(&'static str, bool); 6] {
        [
            ("H1", self.h1),
            ("H2", self.h2),
            ("H3", self.h3),
            ("two-neighbourly", self.two_neighbourly),
            ("converse", self.converse),
            ("converse-dual", self.converse_dual),
        ]
    }
}

/// A poset with a fibre map to the vertices of a graph.
#[derive(Clone, Debug)]
pub struct Heap {
    graph: Vec<Vec<usize>>,
    fib: Vec<usize>,
    poset: Poset,
    up: Vec<Vec<usize>>,
    lo: Vec<Vec<usize>>,
    fibres: Vec<Vec<usize>>,
}

impl Heap {
    /// `covers` lists pairs `(x, y)` with `x ⋖ y`.
    pub fn new(graph: Vec<Vec<usize>>, fib: Vec<usize>, covers: &[(usize, usize)]) -> Result<Self, HeapError> {
        let poset = Poset::from_relations(fib.len(), covers)?;
        Ok(Self::from_parts(graph, fib, poset, covers))
    }

    /// Keeps `poset` as the order even if `covers` does not generate it.
    pub fn from_parts(graph: Vec<Vec<usize>>, fib: Vec<usize>, poset: Poset, covers: &[(usize, usize)]) -> Self {
        let n = fib.len();
        let mut up = vec![Vec::new(); n];
        let mut lo = vec![Vec::new(); n];
        for &(x, y) in covers {
            up[x].push(y);
            lo[y].push(x);
        }
        let ext = poset.linear_extension();
        let mut fibres = vec![Vec::new(); graph.len()];
        for &x in &ext {
            fibres[fib[x]].push(x);
        }
        Heap { graph, fib, poset, up, lo, fibres }
    }

    pub fn len(&self) -> usize {
        self.fib.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fib.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.graph.len()
    }

    pub fn graph(&self) -> &[Vec<usize>] {
        &self.graph
    }

    pub fn fib(&self, x: usize) -> usize {
        self.fib[x]
    }

    pub fn fib_map(&self) -> &[usize] {
        &self.fib
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.up[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lo[x]
    }

    /// Fibre over `i`, bottom to top.
    pub fn fibre(&self, i: usize) -> &[usize] {
        &self.fibres[i]
    }

    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            for &y in &self.up[x] {
                out.push((x, y));
            }
        }
        out
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.poset.lt(x, y)
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.poset.le(x, y)
    }

    fn near(&self, i: usize, j: usize) -> bool {
        i == j || self.graph[i].contains(&j)
    }

    pub fn is_filter(&self, s: &Bitset) -> bool {
        self.poset.is_filter(s)
    }

    pub fn is_ideal(&self, s: &Bitset) -> bool {
        self.poset.is_ideal(s)
    }

    pub fn filters(&self) -> Vec<Bitset> {
        self.poset.filters()
    }

    /// Elements sorted bottom to top.
    pub fn linear_extension(&self) -> Vec<usize> {
        self.poset.linear_extension()
    }

    pub fn verify(&self) -> HeapReport {
        let n = self.len();
        let h1 = (0..n).all(|x| (0..n).all(|y| self.fib[x] != self.fib[y] || self.poset.comparable(x, y)));
        let h2 = (0..n)
            .all(|x| (0..n).all(|y| !self.graph[self.fib[x]].contains(&self.fib[y]) || self.poset.comparable(x, y)));
        let mut gen = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.lt(x, y) && self.near(self.fib[x], self.fib[y]) {
                    gen.push((x, y));
                }
            }
        }
        let from_near = Poset::from_relations(n, &gen).map(|p| p == self.poset).unwrap_or(false);
        let from_covers = Poset::from_relations(n, &self.covers()).map(|p| p == self.poset).unwrap_or(false);
        let h3 = from_near && from_covers;

        let mut two = true;
        for f in &self.fibres {
            for w in f.windows(2) {
                let (x, y) = (w[0], w[1]);
                let between = (0..n)
                    .filter(|&z| self.lt(x, z) && self.lt(z, y) && self.graph[self.fib[x]].contains(&self.fib[z]))
                    .count();
                two &= between == 2;
            }
        }

        let converse_of = |p: &Poset| -> bool {
            for x in 0..n {
                let i = self.fib[x];
                let ys: Vec<usize> = p
                    .strictly_above(x)
                    .iter()
                    .filter(|&y| self.graph[i].contains(&self.fib[y]))
                    .filter(|&y| !p.strictly_above(x).iter().any(|z| p.lt(z, y)))
                    .collect();
                for (a, &y1) in ys.iter().enumerate() {
                    for &y2 in &ys[a + 1..] {
                        let found = (0..n).any(|z| self.fib[z] == i && p.le(y1, z) && p.le(y2, z));
                        if !found {
                            return false;
                        }
                    }
                }
            }
            true
        };
        let converse = converse_of(&self.poset);
        let converse_dual = converse_of(&self.poset.dual());
        HeapReport { h1, h2, h3, two_neighbourly: two, converse, converse_dual }
    }

    /// The closed interval `[x, y]` as a heap; also returns the original
    /// indices of its elements.
    pub fn interval(&self, x: usize, y: usize) -> (Heap, Vec<usize>) {
        let elems: Vec<usize> = (0..self.len()).filter(|&z| self.le(x, z) && self.le(z, y)).collect();
        self.restrict(&elems)
    }

    pub fn restrict(&self, elems: &[usize]) -> (Heap, Vec<usize>) {
        let local: BTreeMap<usize, usize> = elems.iter().enumerate().map(|(a, &z)| (z, a)).collect();
        let mut covers = Vec::new();
        for &z in elems {
            for &w in &self.up[z] {
                if let Some(&b) = local.get(&w) {
                    covers.push((local[&z], b));
                }
            }
        }
        let fib = elems.iter().map(|&z| self.fib[z]).collect();
        let poset = self.poset.induced(elems);
        (Heap::from_parts(self.graph.clone(), fib, poset, &covers), elems.to_vec())
    }

    /// The unique order-reversing bijection sending fibre `i` to fibre
    /// `psi(i)`.
    pub fn ant(&self, psi: &[usize]) -> Result<Vec<usize>, HeapError> {
        let mut a = vec![usize::MAX; self.len()];
        for (f, &j) in self.fibres.iter().zip(psi) {
            let g = &self.fibres[j];
            if f.len() != g.len() {
                return Err(HeapError::NoAntiautomorphism);
            }
            for (k, &x) in f.iter().enumerate() {
                a[x] = g[g.len() - 1 - k];
            }
        }
        for x in 0..self.len() {
            for y in 0..self.len() {
                if self.lt(x, y) != self.lt(a[y], a[x]) {
                    return Err(HeapError::NoAntiautomorphism);
                }
            }
        }
        Ok(a)
    }

    /// Isomorphism of posets that preserves fibre labels.
    pub fn labelled_isomorphism(&self, other: &Heap) -> Option<Vec<usize>> {
        isomorphism(&self.poset, Some(&self.fib), &other.poset, Some(&other.fib))
    }
}

/// The isomorphism types of the minuscule posets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoType {
    /// `[a] × [b]`
    Grid(usize, usize),
    /// `J^k([a] × [b])`
    IteratedJ { k: usize, a: usize, b: usize },
}

impl IsoType {
    pub fn for_vertex(family: Family, rank: usize, m: usize) -> Option<IsoType> {
        let n = rank;
        let label = m + 1;
        match family {
            Family::A => Some(IsoType::Grid(label, n + 1 - label)),
            Family::D if label == 1 => Some(IsoType::IteratedJ { k: n - 3, a: 2, b: 2 }),
            Family::D if label == n - 1 || label == n => Some(IsoType::IteratedJ { k: 1, a: 2, b: n - 2 }),
            Family::E if n == 6 && (label == 1 || label == 5) => Some(IsoType::IteratedJ { k: 2, a: 2, b: 3 }),
            Family::E if n == 7 && label == 6 => Some(IsoType::IteratedJ { k: 3, a: 2, b: 3 }),
            _ => None,
        }
    }

    /// Builds the poset from scratch.
    pub fn build(&self) -> Poset {
        match *self {
            IsoType::Grid(a, b) => Poset::grid(a, b),
            IsoType::IteratedJ { k, a, b } => {
                let mut p = Poset::grid(a, b);
                for _ in 0..k {
                    p = p.j();
                }
                p
            }
        }
    }
}

impl fmt::Display for IsoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            IsoType::Grid(a, b) => write!(f, "[{a}]x[{b}]"),
            IsoType::IteratedJ { k: 1, a, b } => write!(f, "J([{a}]x[{b}])"),
            IsoType::IteratedJ { k, a, b } => write!(f, "J^{k}([{a}]x[{b}])"),
        }
    }
}

/// The heap `P_{Q,m}` together with its embedding in `ZQ`.
#[derive(Clone, Debug)]
pub struct MinusculeHeap {
    zq: Zq,
    m: usize,
    heap: Heap,
    pos: Vec<Pos>,
    roots: Vec<Root>,
    index: BTreeMap<Pos, usize>,
}

impl MinusculeHeap {
    pub fn new(quiver: &DynkinQuiver, m: usize) -> Result<Self, HeapError> {
        quiver.diagram().check_vertex(m)?;
        if !quiver.diagram().is_minuscule(m) {
            return Err(HeapError::NotMinuscule(m));
        }
        Ok(Self::from_zq(Zq::new(quiver), m))
    }

    pub fn from_zq(zq: Zq, m: usize) -> Self {
        let mut pos: Vec<Pos> = zq.module_positions().into_iter().filter(|&p| zq.class(p)[m] != 0).collect();
        pos.sort_by_key(|&p| (zq.height(p), p));
        let index: BTreeMap<Pos, usize> = pos.iter().enumerate().map(|(x, &p)| (p, x)).collect();
        let roots: Vec<Root> = pos.iter().map(|&p| zq.class(p)).collect();
        let mut covers = Vec::new();
        for (x, &p) in pos.iter().enumerate() {
            for q in zq.succ(p) {
                if let Some(&y) = index.get(&q) {
                    covers.push((x, y));
                }
            }
        }
        let graph: Vec<Vec<usize>> = (0..zq.rank()).map(|v| zq.quiver().diagram().neighbours(v).to_vec()).collect();
        let fib = pos.iter().map(|p| p.0).collect();
        let heap = Heap::new(graph, fib, &covers).expect("paths in ZQ are acyclic");
        MinusculeHeap { zq, m, heap, pos, roots, index }
    }

    pub fn zq(&self) -> &Zq {
        &self.zq
    }

    pub fn quiver(&self) -> &DynkinQuiver {
        self.zq.quiver()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn heap(&self) -> &Heap {
        &self.heap
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    pub fn position(&self, x: usize) -> Pos {
        self.pos[x]
    }

    pub fn root(&self, x: usize) -> &Root {
        &self.roots[x]
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn element_at(&self, p: Pos) -> Option<usize> {
        self.index.get(&p).copied()
    }

    /// Looks up a position up to the shift `[2]`.
    pub fn element_at_mod(&self, (i, k): Pos) -> Option<usize> {
        self.element_at((i, k.rem_euclid(self.zq.coxeter_number() as i64)))
    }

    /// Element whose dimension vector is `root`.
    pub fn find_root(&self, root: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r.as_slice() == root)
    }

    /// Dimension vector written as a string of digits, e.g. `01100`.
    pub fn root_name(&self, x: usize) -> String {
        root_string(&self.roots[x])
    }

    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        (0..self.len()).find(|&x| self.root_name(x) == name)
    }

    pub fn ant(&self) -> Vec<usize> {
        self.heap.ant(self.zq.psi()).expect("minuscule heaps carry an antiautomorphism")
    }

    pub fn verify(&self) -> HeapReport {
        self.heap.verify()
    }

    pub fn iso_type(&self) -> Result<IsoType, HeapError> {
        let d = self.quiver().diagram();
        let t = IsoType::for_vertex(d.family(), d.rank(), self.m).ok_or(HeapError::NotMinuscule(self.m))?;
        if t.build().is_isomorphic(self.heap.poset()) {
            Ok(t)
        } else {
            Err(HeapError::IsoMismatch(format!("{t}")))
        }
    }
}

pub fn root_string(r: &[i64]) -> String {
    let mut s = String::new();
    for &c in r {
        s.push_str(&format!("{c}"));
    }
    s
}
