//! The bijection `ρ_{Q,m}` from objects of `C_{Q,m}` to reverse plane
//! partitions, its inverse, and the split version `ρ^Ξ` for hearts `Ξ`
//! derived equivalent to `Q`.
//!
//! An object of `C_{Q,m}` is a multiplicity vector `c`, one entry per heap
//! element. A heart is recorded by a section `s` of `ZQ`: the projectives of
//! `Ξ` sit at the positions `(i, s_i)`.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arquiver::{Pos, Zq};
use crate::bitset::Bitset;
use crate::dynkin::{DynkinQuiver, Root};
use crate::heap::MinusculeHeap;
use crate::jordan::{sigma_on_graph, JordanError, Partition, PartitionTuple};
use crate::rpp::{check_rpp, ExtValue, RppError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BijectionError {
    Length { expected: usize, got: usize },
    NotRpp(RppError),
    NotSection(Vec<i64>),
    NotSource(usize),
    NotSink(usize),
    Unreachable,
    NotLinearExtension,
    Jordan(JordanError),
    Negative(usize),
    Internal(String),
}

impl fmt::Display for BijectionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BijectionError::Length { expected, got } => write!(f, "expected {expected} entries, got {got}"),
            BijectionError::NotRpp(e) => e.fmt(f),
            BijectionError::NotSection(s) => write!(f, "{s:?} is not a section of ZQ"),
            BijectionError::NotSource(i) => write!(f, "vertex {} is not a source of the heart", i + 1),
            BijectionError::NotSink(i) => write!(f, "vertex {} is not a sink of the heart", i + 1),
            BijectionError::Unreachable => f.write_str("target heart is not reachable by source reflections"),
            BijectionError::NotLinearExtension => f.write_str("order is not compatible with the AR quiver"),
            BijectionError::Jordan(e) => e.fmt(f),
            BijectionError::Negative(x) => write!(f, "negative multiplicity recovered at element {x}"),
            BijectionError::Internal(s) => write!(f, "internal inconsistency: {s}"),
        }
    }
}

impl core::error::Error for BijectionError {}

impl From<RppError> for BijectionError {
    fn from(e: RppError) -> Self {
        BijectionError::NotRpp(e)
    }
}

impl From<JordanError> for BijectionError {
    fn from(e: JordanError) -> Self {
        BijectionError::Jordan(e)
    }
}

fn check_len(mh: &MinusculeHeap, got: usize) -> Result<(), BijectionError> {
    if got == mh.len() {
        Ok(())
    } else {
        Err(BijectionError::Length { expected: mh.len(), got })
    }
}

/// All indecomposable representations of `Q`, from right to left in the
/// AR quiver: a linear extension of the opposite path order.
pub fn linearize(mh: &MinusculeHeap) -> Vec<Pos> {
    let zq = mh.zq();
    let mut v = zq.module_positions();
    v.sort_by_key(|&p| (core::cmp::Reverse(zq.height(p)), p));
    v
}

/// `ρ_{Q,m}(M)` for the multiplicity vector `c`.
pub fn rho(mh: &MinusculeHeap, c: &[u64]) -> Result<Vec<u64>, BijectionError> {
    rho_with_order(mh, c, &linearize(mh))
}

fn check_order(zq: &Zq, order: &[Pos]) -> Result<(), BijectionError> {
    let all: BTreeSet<Pos> = zq.module_positions().into_iter().collect();
    let given: BTreeSet<Pos> = order.iter().copied().collect();
    if all != given || order.len() != all.len() {
        return Err(BijectionError::NotLinearExtension);
    }
    let mut seen = BTreeSet::new();
    for &p in order {
        if zq.succ(p).iter().any(|q| all.contains(q) && !seen.contains(q)) {
            return Err(BijectionError::NotLinearExtension);
        }
        seen.insert(p);
    }
    Ok(())
}

/// `ρ_{Q,m}` computed along an arbitrary linear order of the
/// indecomposables compatible with the opposite of the AR quiver.
pub fn rho_with_order(mh: &MinusculeHeap, c: &[u64], order: &[Pos]) -> Result<Vec<u64>, BijectionError> {
    check_len(mh, c.len())?;
    check_order(mh.zq(), order)?;
    let heap = mh.heap();
    let mut vals = vec![0u64; mh.len()];
    let mut done = vec![false; mh.len()];
    for &(i, k) in order {
        for &x in heap.fibre(i) {
            if done[x] && mh.position(x).1 > k {
                tog_processed(mh, &mut vals, &done, x)?;
            }
        }
        if let Some(x) = mh.element_at((i, k)) {
            if heap.upper_covers(x).iter().any(|&y| !done[y]) {
                return Err(BijectionError::Internal("upper cover not yet processed".into()));
            }
            vals[x] = max_up(mh, &vals, x) + c[x];
            done[x] = true;
        }
    }
    Ok(vals)
}

fn max_up(mh: &MinusculeHeap, vals: &[u64], x: usize) -> u64 {
    mh.heap().upper_covers(x).iter().map(|&y| vals[y]).max().unwrap_or(0)
}

fn tog_processed(mh: &MinusculeHeap, vals: &mut [u64], done: &[bool], x: usize) -> Result<(), BijectionError> {
    let heap = mh.heap();
    let lo = heap.lower_covers(x);
    if lo.is_empty() || lo.iter().any(|&y| !done[y]) || heap.upper_covers(x).iter().any(|&y| !done[y]) {
        return Err(BijectionError::Internal("toggled element has unprocessed neighbours".into()));
    }
    let mn = lo.iter().map(|&y| vals[y]).min().expect("non-empty");
    let mx = max_up(mh, vals, x);
    if mx > vals[x] || vals[x] > mn {
        return Err(BijectionError::Internal("intermediate filling is not order-reversing".into()));
    }
    vals[x] = mx + mn - vals[x];
    Ok(())
}

/// The multiplicity vector `M` with `ρ_{Q,m}(M) = vals`.
pub fn rho_inverse(mh: &MinusculeHeap, vals: &[u64]) -> Result<Vec<u64>, BijectionError> {
    check_len(mh, vals.len())?;
    check_rpp(mh.heap(), vals, None)?;
    let heap = mh.heap();
    let order = linearize(mh);
    let mut vals = vals.to_vec();
    let mut done = vec![true; mh.len()];
    let mut c = vec![0u64; mh.len()];
    for &(i, k) in order.iter().rev() {
        if let Some(x) = mh.element_at((i, k)) {
            let mx = max_up(mh, &vals, x);
            c[x] = vals[x].checked_sub(mx).ok_or(BijectionError::Negative(x))?;
            vals[x] = 0;
            done[x] = false;
        }
        for &x in heap.fibre(i) {
            if done[x] && mh.position(x).1 > k {
                tog_processed(mh, &mut vals, &done, x)?;
            }
        }
    }
    Ok(c)
}

/// Positive entries of each fibre, read as a partition.
pub fn fibre_partitions(mh: &MinusculeHeap, vals: &[u64]) -> PartitionTuple {
    let heap = mh.heap();
    PartitionTuple((0..heap.rank()).map(|i| Partition::new(heap.fibre(i).iter().map(|&x| vals[x]).collect())).collect())
}

/// `Σ c_x dim(M_x)`.
pub fn dimension_vector(mh: &MinusculeHeap, c: &[u64]) -> Vec<u64> {
    let mut d = vec![0u64; mh.zq().rank()];
    for (x, &cx) in c.iter().enumerate() {
        for (j, &r) in mh.root(x).iter().enumerate() {
            d[j] += cx * r as u64;
        }
    }
    d
}

/// A heart derived equivalent to `rep Q`, given by its section in `ZQ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Heart {
    s: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Reflection at a source; the heart moves towards `τ`.
    Left,
    /// Reflection at a sink.
    Right,
}

impl Heart {
    /// `rep Q` itself.
    pub fn standard(n: usize) -> Self {
        Heart { s: vec![0; n] }
    }

    pub fn new(quiver: &DynkinQuiver, s: Vec<i64>) -> Result<Self, BijectionError> {
        if s.len() != quiver.rank() || !Self::is_section(quiver, &s) {
            return Err(BijectionError::NotSection(s));
        }
        Ok(Heart { s })
    }

    pub fn is_section(quiver: &DynkinQuiver, s: &[i64]) -> bool {
        quiver.arrows().iter().all(|&(a, b)| matches!(s[b] - s[a], 0 | 1))
    }

    pub fn section(&self) -> &[i64] {
        &self.s
    }

    /// Every heart whose section takes values in `[lo, hi]`.
    pub fn all_in_window(quiver: &DynkinQuiver, lo: i64, hi: i64) -> Vec<Heart> {
        let n = quiver.rank();
        let mut order = vec![0usize];
        let mut parent = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut k = 0;
        while k < order.len() {
            let v = order[k];
            for &w in quiver.diagram().neighbours(v) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    order.push(w);
                }
            }
            k += 1;
        }
        let mut out = Vec::new();
        let mut s = vec![0i64; n];
        #[allow(clippy::too_many_arguments)]
        fn go(
            k: usize,
            order: &[usize],
            parent: &[usize],
            q: &DynkinQuiver,
            lo: i64,
            hi: i64,
            s: &mut Vec<i64>,
            out: &mut Vec<Heart>,
        ) {
            if k == order.len() {
                out.push(Heart { s: s.clone() });
                return;
            }
            let v = order[k];
            let cands: Vec<i64> = if k == 0 {
                (lo..=hi).collect()
            } else {
                let p = parent[v];
                if q.has_arrow(p, v) {
                    vec![s[p], s[p] + 1]
                } else {
                    vec![s[p] - 1, s[p]]
                }
            };
            for x in cands {
                if (lo..=hi).contains(&x) {
                    s[v] = x;
                    go(k + 1, order, parent, q, lo, hi, s, out);
                }
            }
        }
        go(0, &order, &parent, quiver, lo, hi, &mut s, &mut out);
        out.sort();
        out
    }

    /// The quiver `Ξ` of the heart.
    pub fn quiver(&self, quiver: &DynkinQuiver) -> DynkinQuiver {
        let arrows =
            quiver.arrows().iter().map(|&(a, b)| if self.s[a] == self.s[b] { (a, b) } else { (b, a) }).collect();
        DynkinQuiver::new(quiver.diagram().clone(), arrows).expect("reorientation of a tree")
    }

    pub fn sources(&self, quiver: &DynkinQuiver) -> Vec<usize> {
        let xi = self.quiver(quiver);
        (0..quiver.rank()).filter(|&i| xi.is_source(i)).collect()
    }

    pub fn sinks(&self, quiver: &DynkinQuiver) -> Vec<usize> {
        let xi = self.quiver(quiver);
        (0..quiver.rank()).filter(|&i| xi.is_sink(i)).collect()
    }

    pub fn reflect(&self, quiver: &DynkinQuiver, i: usize, dir: Direction) -> Result<Heart, BijectionError> {
        let xi = self.quiver(quiver);
        let mut s = self.s.clone();
        match dir {
            Direction::Left => {
                if !xi.is_source(i) {
                    return Err(BijectionError::NotSource(i));
                }
                s[i] -= 1;
            }
            Direction::Right => {
                if !xi.is_sink(i) {
                    return Err(BijectionError::NotSink(i));
                }
                s[i] += 1;
            }
        }
        Ok(Heart { s })
    }

    /// `τΞ`.
    pub fn tau(&self) -> Heart {
        Heart { s: self.s.iter().map(|x| x - 1).collect() }
    }

    /// Sources of `Ξ` in the order a full sweep of source reflections visits
    /// them; reflecting along it yields `τΞ`.
    pub fn sweep_order(&self, quiver: &DynkinQuiver) -> Vec<usize> {
        let mut h = self.clone();
        let mut order = Vec::new();
        while order.len() < quiver.rank() {
            let i = h
                .sources(quiver)
                .into_iter()
                .find(|i| !order.contains(i))
                .expect("a sweep always finds a fresh source");
            h = h.reflect(quiver, i, Direction::Left).expect("source");
            order.push(i);
        }
        order
    }

    /// Whether the heart lies between `rep Q` and `rep Q[1]` with
    /// `0 <= s_j <= r_j`.
    pub fn is_right_window(&self, zq: &Zq) -> bool {
        (0..zq.rank()).all(|j| 0 <= self.s[j] && self.s[j] <= zq.orbit_len(j) as i64)
    }

    /// Whether the heap element `x` lies in `Ξ` rather than `Ξ[1]`, up to
    /// even shifts.
    pub fn is_even(&self, mh: &MinusculeHeap, x: usize) -> bool {
        let zq = mh.zq();
        let h = zq.coxeter_number() as i64;
        let (j, k) = mh.position(x);
        let t = self.s[zq.psi()[j]] + zq.orbit_len(j) as i64;
        (k - self.s[j]).rem_euclid(h) < t - self.s[j]
    }

    pub fn even_set(&self, mh: &MinusculeHeap) -> Bitset {
        Bitset::from_elems(mh.len(), (0..mh.len()).filter(|&x| self.is_even(mh, x)))
    }

    /// The order filter `P^even_Ξ` that carries the finite entries.
    pub fn even_filter(&self, mh: &MinusculeHeap) -> Bitset {
        let e = self.even_set(mh);
        if mh.heap().is_filter(&e) {
            e
        } else {
            let ant = mh.ant();
            let f = Bitset::from_elems(mh.len(), e.iter().map(|x| ant[x]));
            assert!(mh.heap().is_filter(&f), "neither the even set nor its image under Ant is a filter");
            f
        }
    }

    /// Dimension vectors as representations of `Ξ` of the heap elements
    /// lying in `Ξ`.
    pub fn xi_dimension_vectors(&self, mh: &MinusculeHeap) -> Vec<Option<Root>> {
        let zq = mh.zq();
        let xi = Zq::new(&self.quiver(zq.quiver()));
        (0..mh.len())
            .map(|x| {
                if !self.is_even(mh, x) {
                    return None;
                }
                let (j, k) = mh.position(x);
                Some(xi.class((j, k - self.s[j])))
            })
            .collect()
    }
}

/// An object of `C_{Q,m}` viewed in the derived category relative to a
/// heart: summands in `Ξ` form the even part, summands in `Ξ[1]` the odd
/// part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitObject {
    pub heart: Heart,
    pub mults: Vec<u64>,
}

impl SplitObject {
    pub fn new(heart: Heart, mults: Vec<u64>) -> Self {
        SplitObject { heart, mults }
    }

    pub fn even_mults(&self, mh: &MinusculeHeap) -> Vec<u64> {
        (0..mh.len()).map(|x| if self.heart.is_even(mh, x) { self.mults[x] } else { 0 }).collect()
    }

    pub fn odd_mults(&self, mh: &MinusculeHeap) -> Vec<u64> {
        (0..mh.len()).map(|x| if self.heart.is_even(mh, x) { 0 } else { self.mults[x] }).collect()
    }

    pub fn filter(&self, mh: &MinusculeHeap) -> Bitset {
        self.heart.even_filter(mh)
    }
}

/// `ρ^Ξ_{Q,m}(X)`, obtained from `ρ_{Q,m}(X)` by following source
/// reflections from a shift of `rep Q` to `Ξ` and applying `σ_i` to the
/// Jordan data of both parts.
pub fn rho_xi(mh: &MinusculeHeap, split: &SplitObject) -> Result<Vec<ExtValue>, BijectionError> {
    check_len(mh, split.mults.len())?;
    let zq = mh.zq();
    let quiver = zq.quiver();
    let n = zq.rank();
    let h = zq.coxeter_number() as i64;
    let c = &split.mults;
    let target = split.heart.section();
    let top = target.iter().copied().max().unwrap_or(0);
    let q = if top > 0 { (top + h - 1) / h } else { 0 };
    let mut cur = Heart { s: vec![q * h; n] };
    let mut even = fibre_partitions(mh, &rho(mh, c)?);
    let mut odd = PartitionTuple::empty(n);
    let mult_at = |p: Pos| mh.element_at_mod(p).map_or(0, |x| c[x]);
    while cur.s.as_slice() != target {
        let i = cur.sources(quiver).into_iter().find(|&i| cur.s[i] > target[i]).ok_or(BijectionError::Unreachable)?;
        let psi_i = zq.psi()[i];
        let leaving = mult_at((psi_i, cur.s[i] + zq.orbit_len(psi_i) as i64 - 1));
        let arriving = mult_at((i, cur.s[i] - 1));
        let nb = quiver.diagram().neighbours(i);
        even[i] = even[i].sub_from_largest(leaving)?;
        even = sigma_on_graph(&even, nb, i)?;
        even[i] = even[i].add_to_largest(arriving);
        odd[i] = odd[i].sub_from_largest(arriving)?;
        odd = sigma_on_graph(&odd, nb, i)?;
        odd[i] = odd[i].add_to_largest(leaving);
        cur.s[i] -= 1;
    }
    assemble(mh, &split.heart, &even, &odd)
}

/// Places the even Jordan data on `P^even` and the odd data, as `∞ − j`,
/// on its complement.
pub fn assemble(
    mh: &MinusculeHeap,
    heart: &Heart,
    even: &PartitionTuple,
    odd: &PartitionTuple,
) -> Result<Vec<ExtValue>, BijectionError> {
    let heap = mh.heap();
    let pe = heart.even_filter(mh);
    let mut vals = vec![ExtValue::ZERO; mh.len()];
    for i in 0..heap.rank() {
        let fe: Vec<usize> = heap.fibre(i).iter().copied().filter(|&x| pe.contains(x)).collect();
        let fo: Vec<usize> = heap.fibre(i).iter().copied().filter(|&x| !pe.contains(x)).collect();
        if even[i].len() > fe.len() || odd[i].len() > fo.len() {
            return Err(BijectionError::Internal("Jordan data does not fit its region".into()));
        }
        for (k, &x) in fe.iter().enumerate() {
            vals[x] = ExtValue::Fin(even[i].part(k as i64 + 1));
        }
        let pad = fo.len() - odd[i].len();
        for (k, &x) in fo.iter().enumerate() {
            let j = if k < pad { 0 } else { odd[i].part((fo.len() - k) as i64) };
            vals[x] = ExtValue::CoFin(j);
        }
    }
    check_rpp(heap, &vals, None)
        .map_err(|_| BijectionError::Internal("assembled filling is not order-reversing".into()))?;
    Ok(vals)
}

/// `ρ^Ξ_{Q,m}(X)` for hearts in the right window, computed directly by the
/// recurrence on the even part and its dual on the odd part.
pub fn rho_xi_direct(mh: &MinusculeHeap, split: &SplitObject) -> Result<Vec<ExtValue>, BijectionError> {
    check_len(mh, split.mults.len())?;
    let zq = mh.zq();
    if !split.heart.is_right_window(zq) {
        return Err(BijectionError::Unreachable);
    }
    let s = split.heart.section();
    let c = &split.mults;
    let (even_order, odd_order) = direct_orders(zq, s);
    let heap = mh.heap();
    let n = mh.len();

    let mut vals = vec![0u64; n];
    let mut done = vec![false; n];
    for &(j, k) in &even_order {
        for &x in heap.fibre(j) {
            if done[x] && mh.position(x).1 > k {
                tog_processed(mh, &mut vals, &done, x)?;
            }
        }
        if let Some(x) = mh.element_at((j, k)) {
            vals[x] = max_up(mh, &vals, x) + c[x];
            done[x] = true;
        }
    }

    let mut jv = vec![0u64; n];
    let mut odd_done = vec![false; n];
    for &(j, k) in &odd_order {
        for &x in heap.fibre(j) {
            if odd_done[x] && mh.position(x).1 < k {
                tog_dual(mh, &mut jv, &odd_done, x)?;
            }
        }
        if let Some(x) = mh.element_at((j, k)) {
            jv[x] = max_down(mh, &jv, x) + c[x];
            odd_done[x] = true;
        }
    }
    Ok((0..n).map(|x| if done[x] { ExtValue::Fin(vals[x]) } else { ExtValue::CoFin(jv[x]) }).collect())
}

fn direct_orders(zq: &Zq, s: &[i64]) -> (Vec<Pos>, Vec<Pos>) {
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for (j, &sj) in s.iter().enumerate().take(zq.rank()) {
        let r = zq.orbit_len(j) as i64;
        for k in 0..r {
            if k >= sj {
                even.push((j, k));
            } else {
                odd.push((j, k));
            }
        }
    }
    even.sort_by_key(|&p| (core::cmp::Reverse(zq.height(p)), p));
    odd.sort_by_key(|&p| (zq.height(p), p));
    (even, odd)
}

fn max_down(mh: &MinusculeHeap, vals: &[u64], x: usize) -> u64 {
    mh.heap().lower_covers(x).iter().map(|&y| vals[y]).max().unwrap_or(0)
}

fn tog_dual(mh: &MinusculeHeap, vals: &mut [u64], done: &[bool], x: usize) -> Result<(), BijectionError> {
    let heap = mh.heap();
    let up = heap.upper_covers(x);
    if up.is_empty() || up.iter().any(|&y| !done[y]) || heap.lower_covers(x).iter().any(|&y| !done[y]) {
        return Err(BijectionError::Internal("dual toggle at an element with unprocessed neighbours".into()));
    }
    let mn = up.iter().map(|&y| vals[y]).min().expect("non-empty");
    let mx = max_down(mh, vals, x);
    if mx > vals[x] || vals[x] > mn {
        return Err(BijectionError::Internal("intermediate dual filling is not order-preserving".into()));
    }
    vals[x] = mx + mn - vals[x];
    Ok(())
}

/// The right-window heart whose even filter is `filter`.
pub fn heart_for_filter(mh: &MinusculeHeap, filter: &Bitset) -> Result<Heart, BijectionError> {
    let zq = mh.zq();
    let mut reached: BTreeSet<Pos> = filter.iter().map(|x| mh.position(x)).collect();
    let mut stack: Vec<Pos> = reached.iter().copied().collect();
    while let Some(p) = stack.pop() {
        for q in zq.succ(p) {
            if zq.is_module(q) && reached.insert(q) {
                stack.push(q);
            }
        }
    }
    let s: Vec<i64> = (0..zq.rank())
        .map(|j| reached.iter().filter(|p| p.0 == j).map(|p| p.1).min().unwrap_or(zq.orbit_len(j) as i64))
        .collect();
    Heart::new(zq.quiver(), s)
}

/// Finds a heart and an object of `C_{Q,m}` realising an extended filling.
pub fn split_for_rpp(mh: &MinusculeHeap, vals: &[ExtValue]) -> Result<SplitObject, BijectionError> {
    check_len(mh, vals.len())?;
    check_rpp(mh.heap(), vals, None)?;
    let n = mh.len();
    let filter = Bitset::from_elems(n, (0..n).filter(|&x| vals[x].is_finite()));
    let heart = heart_for_filter(mh, &filter)?;
    let zq = mh.zq();
    let heap = mh.heap();
    let (even_order, odd_order) = direct_orders(zq, heart.section());
    let mut c = vec![0u64; n];

    let mut fin = vec![0u64; n];
    let mut done = vec![false; n];
    let mut jv = vec![0u64; n];
    let mut odd_done = vec![false; n];
    for x in 0..n {
        match vals[x] {
            ExtValue::Fin(v) => {
                fin[x] = v;
                done[x] = true;
            }
            ExtValue::CoFin(j) => {
                jv[x] = j;
                odd_done[x] = true;
            }
        }
    }
    if (0..n).any(|x| done[x] != heart.is_even(mh, x)) {
        return Err(BijectionError::Internal("finite entries do not match the heart".into()));
    }
    for &(j, k) in even_order.iter().rev() {
        if let Some(x) = mh.element_at((j, k)) {
            let mx = max_up(mh, &fin, x);
            c[x] = fin[x].checked_sub(mx).ok_or(BijectionError::Negative(x))?;
            fin[x] = 0;
            done[x] = false;
        }
        for &x in heap.fibre(j) {
            if done[x] && mh.position(x).1 > k {
                tog_processed(mh, &mut fin, &done, x)?;
            }
        }
    }
    for &(j, k) in odd_order.iter().rev() {
        if let Some(x) = mh.element_at((j, k)) {
            let mx = max_down(mh, &jv, x);
            c[x] = jv[x].checked_sub(mx).ok_or(BijectionError::Negative(x))?;
            jv[x] = 0;
            odd_done[x] = false;
        }
        for &x in heap.fibre(j) {
            if odd_done[x] && mh.position(x).1 < k {
                tog_dual(mh, &mut jv, &odd_done, x)?;
            }
        }
    }
    Ok(SplitObject { heart, mults: c })
}

/// Reflects the heart at `i` and returns it with its new even filter.
pub fn reflect_filter(
    mh: &MinusculeHeap,
    heart: &Heart,
    i: usize,
    dir: Direction,
) -> Result<(Heart, Bitset), BijectionError> {
    let h = heart.reflect(mh.quiver(), i, dir)?;
    let f = h.even_filter(mh);
    Ok((h, f))
}
