//! Partitions as Jordan types: dominance, interlacing, `diff` and the
//! reflection rule `σ_k` on tuples of partitions.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use crate::bitset::Bitset;
use crate::dynkin::{DynkinError, DynkinQuiver};
use crate::heap::Heap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JordanError {
    SizeMismatch(u64, u64),
    NotInterlaced { lambda: Partition, mu: Partition, t: Option<i64> },
    Dynkin(DynkinError),
    TupleLength { expected: usize, got: usize },
    Underflow { part: Partition, amount: u64 },
}

impl fmt::Display for JordanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JordanError::SizeMismatch(a, b) => write!(f, "partitions of different sizes {a} and {b}"),
            JordanError::NotInterlaced { lambda, mu, t: Some(t) } => {
                write!(f, "lambda = {lambda} and mu = {mu} are not {t}-interlaced")
            }
            JordanError::NotInterlaced { lambda, mu, t: None } => {
                write!(f, "lambda = {lambda} and mu = {mu} are not interlaced for any t")
            }
            JordanError::Dynkin(e) => e.fmt(f),
            JordanError::TupleLength { expected, got } => write!(f, "expected {expected} partitions, got {got}"),
            JordanError::Underflow { part, amount } => {
                write!(f, "cannot remove {amount} from the largest part of {part}")
            }
        }
    }
}

impl core::error::Error for JordanError {}

impl From<DynkinError> for JordanError {
    fn from(e: DynkinError) -> Self {
        JordanError::Dynkin(e)
    }
}

/// A weakly decreasing list of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u64>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<u64>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// Accepts `parts` only if already weakly decreasing.
    pub fn from_decreasing(parts: Vec<u64>) -> Option<Self> {
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&p| p > 0) {
            Some(Partition(parts))
        } else {
            None
        }
    }

    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u64> {
        self.0
    }

    /// Number of non-zero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.0.iter().sum()
    }

    /// The `i`-th part, 1-based, read as zero past the end.
    pub fn part(&self, i: i64) -> u64 {
        if i >= 1 && (i as usize) <= self.0.len() {
            self.0[i as usize - 1]
        } else {
            0
        }
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(1);
        Partition((1..=first).map(|k| self.0.iter().filter(|&&p| p >= k).count() as u64).collect())
    }

    pub fn dominance_leq(&self, other: &Partition) -> Result<bool, JordanError> {
        if self.size() != other.size() {
            return Err(JordanError::SizeMismatch(self.size(), other.size()));
        }
        let (mut a, mut b) = (0u64, 0u64);
        for k in 1..=self.len().max(other.len()) as i64 {
            a += self.part(k);
            b += other.part(k);
            if a > b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Multiset union of parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Partition::new(v)
    }

    /// Part-wise sum `λ + ν`.
    pub fn sum(&self, other: &Partition) -> Partition {
        let n = self.len().max(other.len());
        Partition::new((1..=n as i64).map(|k| self.part(k) + other.part(k)).collect())
    }

    pub fn add_to_largest(&self, c: u64) -> Partition {
        if c == 0 {
            return self.clone();
        }
        let mut v = self.0.clone();
        match v.first_mut() {
            Some(p) => *p += c,
            None => v.push(c),
        }
        Partition(v)
    }

    /// Removes `c` from the largest part; fails if the result is not a
    /// partition.
    pub fn sub_from_largest(&self, c: u64) -> Result<Partition, JordanError> {
        if c == 0 {
            return Ok(self.clone());
        }
        let err = || JordanError::Underflow { part: self.clone(), amount: c };
        let mut v = self.0.clone();
        let first = v.first_mut().ok_or_else(err)?;
        *first = first.checked_sub(c).ok_or_else(err)?;
        Partition::from_decreasing(v).ok_or_else(err)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl From<&[u64]> for Partition {
    fn from(v: &[u64]) -> Self {
        Partition::new(v.to_vec())
    }
}

/// Non-negative reading of `t`-interlacing.
fn interlaced_nonneg(lambda: &Partition, mu: &Partition, t: i64) -> bool {
    let bound = (lambda.len() + mu.len()) as i64 + t.abs() + 2;
    (1..=bound).all(|j| {
        let l = lambda.part(j);
        mu.part(t + 2 * j) <= l && l <= mu.part(t + 2 * j - 1)
    })
}

/// Non-positive reading, with `s = -t`.
fn interlaced_nonpos(lambda: &Partition, mu: &Partition, s: i64) -> bool {
    if (1..=s).any(|i| lambda.part(i) != mu.part(i)) {
        return false;
    }
    let bound = (lambda.len() + mu.len()) as i64 + s + 2;
    (1..=bound).all(|j| {
        let l = lambda.part(s + j);
        mu.part(s + 2 * j) <= l && l <= mu.part(s + 2 * j - 1)
    })
}

/// Whether `λ` and `μ` are `t`-interlaced.
pub fn interlaced(lambda: &Partition, mu: &Partition, t: i64) -> bool {
    if t == 0 {
        let a = interlaced_nonneg(lambda, mu, 0);
        let b = interlaced_nonpos(lambda, mu, 0);
        assert_eq!(a, b, "the two readings of 0-interlacing disagree on {lambda}, {mu}");
        a
    } else if t > 0 {
        interlaced_nonneg(lambda, mu, t)
    } else {
        interlaced_nonpos(lambda, mu, -t)
    }
}

/// The set of `t` for which two partitions are interlaced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interlacing {
    /// Valid values of `t`, increasing. When `degenerate` holds this is the
    /// smallest valid non-negative `t` only.
    pub values: Vec<i64>,
    /// Set when infinitely many `t` qualify.
    pub degenerate: bool,
}

impl Interlacing {
    /// The value used by `σ_k`: the smallest non-negative one if there is
    /// one, otherwise the largest.
    pub fn preferred(&self) -> Option<i64> {
        self.values.iter().copied().find(|&t| t >= 0).or_else(|| self.values.last().copied())
    }
}

pub fn interlace_values(lambda: &Partition, mu: &Partition) -> Interlacing {
    if lambda.is_empty() {
        // every t >= len(mu) - 1 works
        let t = (mu.len() as i64 - 1).max(0);
        debug_assert!(interlaced(lambda, mu, t));
        return Interlacing { values: vec![t], degenerate: true };
    }
    let lo = -(lambda.len() as i64);
    let hi = mu.len() as i64;
    let values = (lo..=hi).filter(|&t| interlaced(lambda, mu, t)).collect();
    Interlacing { values, degenerate: false }
}

/// `diff(μ, λ)` computed with the given `t`.
pub fn diff(mu: &Partition, lambda: &Partition, t: i64) -> Result<Partition, JordanError> {
    if !interlaced(lambda, mu, t) {
        return Err(JordanError::NotInterlaced { lambda: lambda.clone(), mu: mu.clone(), t: Some(t) });
    }
    let len = (lambda.len() + mu.len()) as i64 + t.abs() + 2;
    let mut out: Vec<u64> = Vec::new();
    if t >= 0 {
        out.extend((1..=t).map(|i| mu.part(i)));
        out.extend((1..=len).map(|j| mu.part(t + 2 * j - 1) + mu.part(t + 2 * j) - lambda.part(j)));
    } else {
        let s = -t;
        out.extend((1..=len).map(|j| mu.part(s + 2 * j - 1) + mu.part(s + 2 * j) - lambda.part(s + j)));
    }
    let p = Partition::from_decreasing(out).expect("diff of interlaced partitions is a partition");
    Ok(p)
}

/// One partition per quiver vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionTuple(pub Vec<Partition>);

impl PartitionTuple {
    pub fn empty(n: usize) -> Self {
        PartitionTuple(vec![Partition::empty(); n])
    }

    pub fn from_parts(parts: Vec<Vec<u64>>) -> Self {
        PartitionTuple(parts.into_iter().map(Partition::new).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Partition> {
        self.0.iter()
    }

    /// Sizes of the partitions, a dimension vector.
    pub fn sizes(&self) -> Vec<u64> {
        self.0.iter().map(|p| p.size()).collect()
    }

    /// Vertex-wise dominance.
    pub fn dominance_leq(&self, other: &PartitionTuple) -> Result<bool, JordanError> {
        let mut ok = true;
        for (a, b) in self.0.iter().zip(&other.0) {
            ok &= a.dominance_leq(b)?;
        }
        Ok(ok)
    }
}

impl Index<usize> for PartitionTuple {
    type Output = Partition;
    fn index(&self, i: usize) -> &Partition {
        &self.0[i]
    }
}

impl IndexMut<usize> for PartitionTuple {
    fn index_mut(&mut self, i: usize) -> &mut Partition {
        &mut self.0[i]
    }
}

impl fmt::Display for PartitionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Replaces `ν^k` by `diff(ν^adj(k), ν^k)`; the graph neighbours of `k`
/// are read from `neighbours`.
pub fn sigma_on_graph(nu: &PartitionTuple, neighbours: &[usize], k: usize) -> Result<PartitionTuple, JordanError> {
    let lambda = &nu[k];
    let mu = neighbours.iter().fold(Partition::empty(), |acc, &j| acc.union(&nu[j]));
    let il = interlace_values(lambda, &mu);
    let t =
        il.preferred().ok_or_else(|| JordanError::NotInterlaced { lambda: lambda.clone(), mu: mu.clone(), t: None })?;
    let mut out = nu.clone();
    out[k] = diff(&mu, lambda, t)?;
    Ok(out)
}

/// `σ_k` on a tuple of partitions; `k` must be a source or a sink.
pub fn sigma_k_tuple(nu: &PartitionTuple, quiver: &DynkinQuiver, k: usize) -> Result<PartitionTuple, JordanError> {
    let n = quiver.rank();
    if nu.len() != n {
        return Err(JordanError::TupleLength { expected: n, got: nu.len() });
    }
    quiver.sigma(k)?;
    sigma_on_graph(nu, quiver.diagram().neighbours(k), k)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FitError {
    TooManyParts { vertex: usize, parts: usize, slots: usize },
    NotOrderReversing,
}

impl fmt::Display for FitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FitError::TooManyParts { vertex, parts, slots } => {
                write!(f, "vertex {} has {parts} parts but only {slots} slots", vertex + 1)
            }
            FitError::NotOrderReversing => f.write_str("filling is not order-reversing"),
        }
    }
}

impl core::error::Error for FitError {}

/// Places the parts of `ν^i` into the fibre over `i` (restricted to
/// `region`, the whole heap if absent) in decreasing order going up.
/// Elements outside the region are left as `None`.
pub fn fits_in(nu: &PartitionTuple, heap: &Heap, region: Option<&Bitset>) -> Result<Vec<Option<u64>>, FitError> {
    let inside = |x: usize| region.is_none_or(|r| r.contains(x));
    let mut vals = vec![None; heap.len()];
    for i in 0..heap.rank() {
        let slots: Vec<usize> = heap.fibre(i).iter().copied().filter(|&x| inside(x)).collect();
        let p = nu.0.get(i).cloned().unwrap_or_default();
        if p.len() > slots.len() {
            return Err(FitError::TooManyParts { vertex: i, parts: p.len(), slots: slots.len() });
        }
        for (k, &x) in slots.iter().enumerate() {
            vals[x] = Some(p.part(k as i64 + 1));
        }
    }
    for (x, y) in heap.covers() {
        if let (Some(a), Some(b)) = (vals[x], vals[y]) {
            if a < b {
                return Err(FitError::NotOrderReversing);
            }
        }
    }
    Ok(vals)
}
