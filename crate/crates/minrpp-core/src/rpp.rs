//! Reverse plane partitions on heaps: toggles, promotion and the extended
//! value set `ℕ ∪ (∞ − ℕ)`.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use rand::Rng;

use crate::bitset::Bitset;
use crate::heap::Heap;

/// An entry of an extended filling: `Fin(k)` is `k`, `CoFin(k)` is `∞ − k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtValue {
    Fin(u64),
    CoFin(u64),
}

impl ExtValue {
    pub const ZERO: ExtValue = ExtValue::Fin(0);
    pub const INFINITY: ExtValue = ExtValue::CoFin(0);

    fn lin(self) -> (i64, i64) {
        match self {
            ExtValue::Fin(k) => (0, k as i64),
            ExtValue::CoFin(k) => (1, -(k as i64)),
        }
    }

    fn from_lin((inf, off): (i64, i64)) -> Option<ExtValue> {
        match inf {
            0 if off >= 0 => Some(ExtValue::Fin(off as u64)),
            1 if off <= 0 => Some(ExtValue::CoFin((-off) as u64)),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtValue::Fin(_))
    }

    /// The value with `∞` replaced by `n`.
    pub fn restrict(self, n: u64) -> Option<u64> {
        match self {
            ExtValue::Fin(k) => Some(k),
            ExtValue::CoFin(k) => n.checked_sub(k),
        }
    }
}

impl Ord for ExtValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lin().cmp(&other.lin())
    }
}

impl PartialOrd for ExtValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::Fin(k) => write!(f, "{k}"),
            ExtValue::CoFin(0) => f.write_str("inf"),
            ExtValue::CoFin(k) => write!(f, "inf-{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RppError {
    WrongLength { expected: usize, got: usize },
    OutOfRange { element: usize, value: u64, bound: u64 },
    NotOrderReversing { lower: usize, upper: usize },
    NotCloseEnough { bound: u64 },
}

impl fmt::Display for RppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RppError::WrongLength { expected, got } => write!(f, "expected {expected} values, got {got}"),
            RppError::OutOfRange { element, value, bound } => {
                write!(f, "value {value} at element {element} exceeds bound {bound}")
            }
            RppError::NotOrderReversing { lower, upper } => {
                write!(f, "element {lower} lies below {upper} but carries a smaller value")
            }
            RppError::NotCloseEnough { bound } => write!(f, "{bound} is not close enough to infinity"),
        }
    }
}

impl core::error::Error for RppError {}

/// Checks that `vals` is order-reversing with entries in `[0, bound]`.
pub fn check_rpp<T>(heap: &Heap, vals: &[T], bound: Option<T>) -> Result<(), RppError>
where
    T: Ord + Copy + Into<Option<u64>>,
{
    if vals.len() != heap.len() {
        return Err(RppError::WrongLength { expected: heap.len(), got: vals.len() });
    }
    if let Some(b) = bound {
        for (x, &v) in vals.iter().enumerate() {
            if v > b {
                return Err(RppError::OutOfRange {
                    element: x,
                    value: v.into().unwrap_or(u64::MAX),
                    bound: b.into().unwrap_or(u64::MAX),
                });
            }
        }
    }
    for (x, y) in heap.covers() {
        if vals[x] < vals[y] {
            return Err(RppError::NotOrderReversing { lower: x, upper: y });
        }
    }
    Ok(())
}

impl From<ExtValue> for Option<u64> {
    fn from(v: ExtValue) -> Self {
        match v {
            ExtValue::Fin(k) => Some(k),
            ExtValue::CoFin(_) => None,
        }
    }
}

pub fn is_rpp(heap: &Heap, vals: &[u64], bound: u64) -> bool {
    check_rpp(heap, vals, Some(bound)).is_ok()
}

pub fn is_ext_rpp(heap: &Heap, vals: &[ExtValue]) -> bool {
    check_rpp(heap, vals, None).is_ok()
}

/// `t_x` on a `[0, bound]` filling.
pub fn toggle(heap: &Heap, vals: &mut [u64], x: usize, bound: u64) {
    let mx = heap.upper_covers(x).iter().map(|&y| vals[y]).max().unwrap_or(0);
    let mn = heap.lower_covers(x).iter().map(|&y| vals[y]).min().unwrap_or(bound);
    debug_assert!(mx <= vals[x] && vals[x] <= mn, "toggle applied to a filling that is not order-reversing");
    vals[x] = mx + mn - vals[x];
}

/// `t_x` on an extended filling.
pub fn toggle_ext(heap: &Heap, vals: &mut [ExtValue], x: usize) {
    let mx = heap.upper_covers(x).iter().map(|&y| vals[y]).max().unwrap_or(ExtValue::ZERO).lin();
    let mn = heap.lower_covers(x).iter().map(|&y| vals[y]).min().unwrap_or(ExtValue::INFINITY).lin();
    let v = vals[x].lin();
    let r = (mx.0 + mn.0 - v.0, mx.1 + mn.1 - v.1);
    vals[x] = ExtValue::from_lin(r).expect("toggle of an extended filling left the value set");
}

/// `t_i`: toggles every element of the fibre over `i`.
pub fn toggle_fibre(heap: &Heap, vals: &mut [u64], i: usize, bound: u64) {
    for &x in heap.fibre(i) {
        toggle(heap, vals, x, bound);
    }
}

pub fn toggle_fibre_ext(heap: &Heap, vals: &mut [ExtValue], i: usize) {
    for &x in heap.fibre(i) {
        toggle_ext(heap, vals, x);
    }
}

/// Fibre toggles applied in the order given by `order`.
pub fn promotion(heap: &Heap, vals: &mut [u64], order: &[usize], bound: u64) {
    for &i in order {
        toggle_fibre(heap, vals, i, bound);
    }
}

pub fn promotion_ext(heap: &Heap, vals: &mut [ExtValue], order: &[usize]) {
    for &i in order {
        toggle_fibre_ext(heap, vals, i);
    }
}

/// Replaces each `∞ − k` by `n − k`; fails unless the result is a
/// `[0, n]` reverse plane partition.
pub fn restrict_infinity(heap: &Heap, vals: &[ExtValue], n: u64) -> Result<Vec<u64>, RppError> {
    let out: Option<Vec<u64>> = vals.iter().map(|v| v.restrict(n)).collect();
    let out = out.ok_or(RppError::NotCloseEnough { bound: n })?;
    match check_rpp(heap, &out, Some(n)) {
        Ok(()) => Ok(out),
        Err(_) => Err(RppError::NotCloseEnough { bound: n }),
    }
}

/// Whether replacing `∞` by `n` keeps every `∞ − k` at or above every
/// finite entry, so that it preserves the order of all entries at once.
pub fn is_order_faithful(vals: &[ExtValue], n: u64) -> bool {
    let top_fin = vals.iter().filter_map(|v| if v.is_finite() { v.restrict(0) } else { None }).max();
    let low_inf = vals.iter().filter(|v| !v.is_finite()).map(|v| v.restrict(n)).min();
    match (top_fin, low_inf) {
        (Some(a), Some(b)) => b.is_some_and(|b| a <= b),
        (_, Some(b)) => b.is_some(),
        _ => true,
    }
}

/// Every `[0, bound]` reverse plane partition of the heap.
pub fn all_rpps(heap: &Heap, bound: u64) -> Vec<Vec<u64>> {
    let order: Vec<usize> = heap.linear_extension().into_iter().rev().collect();
    let mut out = Vec::new();
    let mut vals = vec![0u64; heap.len()];
    fn go(k: usize, order: &[usize], heap: &Heap, bound: u64, vals: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if k == order.len() {
            out.push(vals.clone());
            return;
        }
        let x = order[k];
        let lo = heap.upper_covers(x).iter().map(|&y| vals[y]).max().unwrap_or(0);
        for v in lo..=bound {
            vals[x] = v;
            go(k + 1, order, heap, bound, vals, out);
        }
        vals[x] = 0;
    }
    go(0, &order, heap, bound, &mut vals, &mut out);
    out
}

/// Reverse plane partitions of the sub-poset `region` (an order filter or
/// any convex subset) with total sum at most `budget`; entries outside the
/// region are zero.
pub fn rpps_up_to_sum(heap: &Heap, region: &Bitset, budget: u64) -> Vec<Vec<u64>> {
    let order: Vec<usize> = heap.linear_extension().into_iter().rev().filter(|&x| region.contains(x)).collect();
    let above: Vec<Vec<usize>> = (0..heap.len())
        .map(|x| heap.poset().strictly_above(x).iter().filter(|&y| region.contains(y)).collect())
        .collect();
    let mut out = Vec::new();
    let mut vals = vec![0u64; heap.len()];
    fn go(k: usize, order: &[usize], above: &[Vec<usize>], left: u64, vals: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if k == order.len() {
            out.push(vals.clone());
            return;
        }
        let x = order[k];
        let lo = above[x].iter().map(|&y| vals[y]).max().unwrap_or(0);
        let mut v = lo;
        while v <= left {
            vals[x] = v;
            go(k + 1, order, above, left - v, vals, out);
            v += 1;
        }
        vals[x] = 0;
    }
    go(0, &order, &above, budget, &mut vals, &mut out);
    out
}

/// A random `[0, bound]` filling; not uniform.
pub fn random_rpp<R: Rng + ?Sized>(heap: &Heap, bound: u64, rng: &mut R) -> Vec<u64> {
    let mut vals = vec![0u64; heap.len()];
    for x in heap.linear_extension().into_iter().rev() {
        let lo = heap.upper_covers(x).iter().map(|&y| vals[y]).max().unwrap_or(0);
        vals[x] = rng.gen_range(lo..=bound);
    }
    vals
}

/// A random extended filling: finite on a random order filter, `∞ − k`
/// on the complementary ideal.
pub fn random_ext_rpp<R: Rng + ?Sized>(heap: &Heap, max_step: u64, rng: &mut R) -> Vec<ExtValue> {
    let n = heap.len();
    let mut filter = Bitset::new(n);
    for x in 0..n {
        if rng.gen_bool(0.5) {
            filter.insert(x);
            filter.union_with(heap.poset().strictly_above(x));
        }
    }
    let mut vals = vec![ExtValue::ZERO; n];
    for x in heap.linear_extension().into_iter().rev() {
        let ups: Vec<ExtValue> = heap.upper_covers(x).iter().map(|&y| vals[y]).collect();
        if filter.contains(x) {
            let lo = ups.iter().map(|v| v.restrict(0).unwrap_or(0)).max().unwrap_or(0);
            vals[x] = ExtValue::Fin(lo + rng.gen_range(0..=max_step));
        } else {
            let cap = ups
                .iter()
                .filter_map(|v| match v {
                    ExtValue::CoFin(k) => Some(*k),
                    ExtValue::Fin(_) => None,
                })
                .min()
                .unwrap_or(max_step * n as u64);
            vals[x] = ExtValue::CoFin(rng.gen_range(0..=cap));
        }
    }
    vals
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Length of the promotion orbit of `vals`, or `None` past `cap` steps.
pub fn orbit_len(heap: &Heap, vals: &[u64], order: &[usize], bound: u64, cap: u64) -> Option<u64> {
    let mut cur = vals.to_vec();
    for k in 1..=cap {
        promotion(heap, &mut cur, order, bound);
        if cur == vals {
            return Some(k);
        }
    }
    None
}

pub fn orbit_len_ext(heap: &Heap, vals: &[ExtValue], order: &[usize], cap: u64) -> Option<u64> {
    let mut cur = vals.to_vec();
    for k in 1..=cap {
        promotion_ext(heap, &mut cur, order);
        if cur == vals {
            return Some(k);
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitMode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

/// Least `k` with `pro^k` the identity on every tested filling, i.e. the
/// lcm of the orbit lengths. `None` if some orbit exceeds `cap`.
pub fn promotion_order(heap: &Heap, order: &[usize], bound: u64, mode: OrbitMode, cap: u64) -> Option<u64> {
    let fillings: Vec<Vec<u64>> = match mode {
        OrbitMode::Exhaustive => all_rpps(heap, bound),
        OrbitMode::Sampled { count, seed } => {
            let mut rng = crate::oracle::seeded_rng(seed);
            (0..count).map(|_| random_rpp(heap, bound, &mut rng)).collect()
        }
    };
    let mut acc = 1u64;
    for f in &fillings {
        let k = orbit_len(heap, f, order, bound, cap)?;
        acc = acc / gcd(acc, k) * k;
    }
    Some(acc)
}

/// As [`promotion_order`] on random extended fillings.
pub fn promotion_order_ext(heap: &Heap, order: &[usize], count: usize, seed: u64, cap: u64) -> Option<u64> {
    let mut rng = crate::oracle::seeded_rng(seed);
    let mut acc = 1u64;
    for _ in 0..count {
        let f = random_ext_rpp(heap, 3, &mut rng);
        let k = orbit_len_ext(heap, &f, order, cap)?;
        acc = acc / gcd(acc, k) * k;
    }
    Some(acc)
}
