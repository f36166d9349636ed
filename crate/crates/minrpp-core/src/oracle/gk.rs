//! Greene–Kleitman invariants of finite posets.

use alloc::vec;
use alloc::vec::Vec;

use super::genjf::OracleError;
use crate::dynkin::Family;
use crate::heap::{MinusculeHeap, Poset};
use crate::jordan::Partition;

struct Edge {
    to: usize,
    cap: i64,
    cost: i64,
}

struct Flow {
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl Flow {
    fn new(n: usize) -> Self {
        Flow { edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    fn add(&mut self, a: usize, b: usize, cap: i64, cost: i64) {
        self.adj[a].push(self.edges.len());
        self.edges.push(Edge { to: b, cap, cost });
        self.adj[b].push(self.edges.len());
        self.edges.push(Edge { to: a, cap: 0, cost: -cost });
    }

    /// Cheapest augmenting path by Bellman–Ford; returns its cost.
    fn augment(&mut self, s: usize, t: usize) -> Option<i64> {
        let n = self.adj.len();
        let mut dist = vec![i64::MAX; n];
        let mut via = vec![usize::MAX; n];
        dist[s] = 0;
        for _ in 0..n {
            let mut changed = false;
            for v in 0..n {
                if dist[v] == i64::MAX {
                    continue;
                }
                for &e in &self.adj[v] {
                    let ed = &self.edges[e];
                    if ed.cap > 0 && dist[v] + ed.cost < dist[ed.to] {
                        dist[ed.to] = dist[v] + ed.cost;
                        via[ed.to] = e;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        if dist[t] == i64::MAX {
            return None;
        }
        let mut v = t;
        while v != s {
            let e = via[v];
            self.edges[e].cap -= 1;
            self.edges[e ^ 1].cap += 1;
            v = self.edges[e ^ 1].to;
        }
        Some(dist[t])
    }
}

/// `Δ_k` for `k = 0..=|P|`: the largest size of a union of `k` chains.
pub fn chain_cover_sizes(p: &Poset) -> Vec<usize> {
    let n = p.len();
    let (s, t) = (2 * n, 2 * n + 1);
    let mut g = Flow::new(2 * n + 2);
    for x in 0..n {
        g.add(s, 2 * x, 1, 0);
        g.add(2 * x, 2 * x + 1, 1, -1);
        g.add(2 * x + 1, t, 1, 0);
        for y in p.strictly_above(x).iter() {
            g.add(2 * x + 1, 2 * y, 1, 0);
        }
    }
    let mut out = vec![0usize];
    let mut covered = 0i64;
    for _ in 0..n {
        if let Some(c) = g.augment(s, t) {
            if c < 0 {
                covered -= c;
            }
        }
        out.push(covered as usize);
    }
    out
}

/// The partition `(Δ_1 − Δ_0, Δ_2 − Δ_1, …)`.
pub fn gk_partition(p: &Poset, bound: usize) -> Result<Partition, OracleError> {
    if p.len() > bound {
        return Err(OracleError::TooLarge { size: p.len(), bound });
    }
    let d = chain_cover_sizes(p);
    Ok(Partition::new(d.windows(2).map(|w| (w[1] - w[0]) as u64).collect()))
}

/// The heap elements supported at `i` that occur in `M`, each replaced by
/// a chain of length its multiplicity.
pub fn build_tilde_poset(mh: &MinusculeHeap, mults: &[u64], i: usize) -> Result<Poset, OracleError> {
    if mh.quiver().diagram().family() != Family::A {
        return Err(OracleError::NotTypeA);
    }
    if mults.len() != mh.len() {
        return Err(OracleError::Precondition("one multiplicity per heap element"));
    }
    let mut elems: Vec<(usize, u64)> = Vec::new();
    for (x, &k) in mults.iter().enumerate() {
        if mh.root(x)[i] != 0 {
            for a in 0..k {
                elems.push((x, a));
            }
        }
    }
    let heap = mh.heap();
    let mut rel = Vec::new();
    for (u, &(x, a)) in elems.iter().enumerate() {
        for (v, &(y, b)) in elems.iter().enumerate() {
            if heap.lt(x, y) || (x == y && a < b) {
                rel.push((u, v));
            }
        }
    }
    Ok(Poset::from_relations(elems.len(), &rel).expect("a poset"))
}
