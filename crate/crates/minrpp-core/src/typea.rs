//! Type A: rim hooks of an `r × c` rectangle, the Hillman–Grassl
//! correspondence and RSK.
//!
//! For `A_n` with `m = c` and `n = r + c - 1`, the border of the rectangle
//! read from its south-west box east along the bottom row and then north up
//! the right column has `n` boxes. A rim hook covers a contiguous run of the
//! border containing the south-east box, and corresponds to the interval
//! root that is 1 exactly on that run. Rows and columns are 0-based, row 0
//! at the top. A hook is keyed by `(row of its NE box, column of its SW
//! box)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::dynkin::{Family, Root};
use crate::heap::{isomorphism, Heap, MinusculeHeap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeAError {
    BadHook { row: usize, col: usize },
    NotInterval(Root),
    NotTypeA,
    NotMonotone,
    Shape { rows: usize, cols: usize },
    NoTransport,
}

impl fmt::Display for TypeAError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeAError::BadHook { row, col } => write!(f, "no rim hook with NE row {row} and SW column {col}"),
            TypeAError::NotInterval(r) => write!(f, "{r:?} is not an interval root through m"),
            TypeAError::NotTypeA => f.write_str("not a type A heap"),
            TypeAError::NotMonotone => f.write_str("grid is not weakly increasing towards the south-east"),
            TypeAError::Shape { rows, cols } => write!(f, "grid shape does not match {rows}x{cols}"),
            TypeAError::NoTransport => f.write_str("heap is not isomorphic to the rectangle"),
        }
    }
}

impl core::error::Error for TypeAError {}

pub type HookKey = (usize, usize);
pub type Grid = Vec<Vec<u64>>;

/// A multiset of rim hooks of the `rows × cols` rectangle.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RimHookMultiset {
    pub rows: usize,
    pub cols: usize,
    pub mults: BTreeMap<HookKey, u64>,
}

impl RimHookMultiset {
    pub fn new(rows: usize, cols: usize) -> Self {
        RimHookMultiset { rows, cols, mults: BTreeMap::new() }
    }

    pub fn add(&mut self, key: HookKey, k: u64) -> Result<(), TypeAError> {
        if key.0 >= self.rows || key.1 >= self.cols {
            return Err(TypeAError::BadHook { row: key.0, col: key.1 });
        }
        if k > 0 {
            *self.mults.entry(key).or_insert(0) += k;
        }
        Ok(())
    }

    pub fn total(&self) -> u64 {
        self.mults.values().sum()
    }

    /// Multiplicities as a matrix indexed by `(NE row, SW column)`.
    pub fn matrix(&self) -> Grid {
        let mut a = vec![vec![0; self.cols]; self.rows];
        for (&(i, j), &k) in &self.mults {
            a[i][j] = k;
        }
        a
    }

    pub fn from_matrix(a: &Grid) -> Self {
        let rows = a.len();
        let cols = a.first().map_or(0, |r| r.len());
        let mut out = Self::new(rows, cols);
        for (i, row) in a.iter().enumerate() {
            for (j, &k) in row.iter().enumerate() {
                out.add((i, j), k).expect("in range");
            }
        }
        out
    }
}

/// The interval root of a rim hook.
pub fn rimhook_dimvector(rows: usize, cols: usize, key: HookKey) -> Result<Root, TypeAError> {
    let (i1, c0) = key;
    if i1 >= rows || c0 >= cols {
        return Err(TypeAError::BadHook { row: i1, col: c0 });
    }
    let n = rows + cols - 1;
    let (a, b) = (c0 + 1, n - i1);
    Ok((1..=n).map(|v| i64::from(a <= v && v <= b)).collect())
}

/// The rim hook of an interval root through `m = cols`.
pub fn dimvector_rimhook(rows: usize, cols: usize, root: &[i64]) -> Result<HookKey, TypeAError> {
    let n = rows + cols - 1;
    let bad = || TypeAError::NotInterval(root.to_vec());
    if root.len() != n || root.iter().any(|&x| x != 0 && x != 1) {
        return Err(bad());
    }
    let a = root.iter().position(|&x| x == 1).ok_or_else(bad)? + 1;
    let b = n - root.iter().rev().position(|&x| x == 1).ok_or_else(bad)?;
    if root[a - 1..b].iter().any(|&x| x != 1) || a > cols || b < cols {
        return Err(bad());
    }
    Ok((n - b, a - 1))
}

/// Boxes of the rim hook from its SW box to its NE box.
pub fn rimhook_cells(rows: usize, cols: usize, key: HookKey) -> Vec<(usize, usize)> {
    let (i1, c0) = key;
    let mut out: Vec<(usize, usize)> = (c0..cols).map(|j| (rows - 1, j)).collect();
    out.extend((i1..rows - 1).rev().map(|i| (i, cols - 1)));
    out
}

pub fn is_grid_rpp(g: &Grid, rows: usize, cols: usize) -> bool {
    g.len() == rows
        && g.iter().all(|r| r.len() == cols)
        && (0..rows)
            .all(|i| (0..cols).all(|j| (j == 0 || g[i][j - 1] <= g[i][j]) && (i == 0 || g[i - 1][j] <= g[i][j])))
}

/// The Hillman–Grassl image of a multiset of rim hooks.
pub fn hillman_grassl(hooks: &RimHookMultiset) -> Grid {
    let (r, c) = (hooks.rows, hooks.cols);
    let mut g = vec![vec![0u64; c]; r];
    let mut items: Vec<HookKey> = Vec::new();
    for (&k, &m) in &hooks.mults {
        items.extend(core::iter::repeat_n(k, m as usize));
    }
    items.sort_by_key(|&(i1, c0)| (core::cmp::Reverse(c0), i1));
    for (i1, c0) in items {
        let (mut i, mut j) = (i1, c - 1);
        let mut path = vec![(i, j)];
        while (i, j) != (r - 1, c0) {
            if j == c0 || (i + 1 < r && g[i + 1][j] == g[i][j]) {
                i += 1;
            } else {
                j -= 1;
            }
            path.push((i, j));
        }
        for (a, b) in path {
            g[a][b] += 1;
        }
    }
    g
}

/// Inverse of [`hillman_grassl`].
pub fn hillman_grassl_inverse(grid: &Grid) -> Result<RimHookMultiset, TypeAError> {
    let r = grid.len();
    let c = grid.first().map_or(0, |row| row.len());
    if !is_grid_rpp(grid, r, c) {
        return Err(TypeAError::NotMonotone);
    }
    let mut g = grid.clone();
    let mut out = RimHookMultiset::new(r, c);
    while let Some(c0) = (0..c).find(|&j| (0..r).any(|i| g[i][j] > 0)) {
        let (mut i, mut j) = (r - 1, c0);
        let mut path = vec![(i, j)];
        loop {
            if i > 0 && g[i - 1][j] == g[i][j] {
                i -= 1;
            } else if j + 1 < c {
                j += 1;
            } else {
                break;
            }
            path.push((i, j));
        }
        for (a, b) in path {
            g[a][b] -= 1;
        }
        out.add((i, c0), 1)?;
    }
    Ok(out)
}

fn rsk_insert(p: &mut Vec<Vec<usize>>, q: &mut Vec<Vec<usize>>, x: usize, label: usize) {
    let mut x = x;
    let mut row = 0;
    loop {
        if row == p.len() {
            p.push(vec![x]);
            q.push(vec![label]);
            return;
        }
        match p[row].iter().position(|&y| y > x) {
            None => {
                p[row].push(x);
                q[row].push(label);
                return;
            }
            Some(k) => {
                core::mem::swap(&mut p[row][k], &mut x);
                row += 1;
            }
        }
    }
}

fn shape_upto(t: &[Vec<usize>], v: usize) -> Vec<u64> {
    t.iter().map(|row| row.iter().filter(|&&y| y <= v).count() as u64).filter(|&k| k > 0).collect()
}

/// The RSK image: the matrix of hook multiplicities is read as a biword,
/// the tableau pair is encoded along the diagonals of the rectangle.
pub fn rsk_rect(hooks: &RimHookMultiset) -> Grid {
    let (r, c) = (hooks.rows, hooks.cols);
    let a = hooks.matrix();
    let mut p = Vec::new();
    let mut q = Vec::new();
    for (i, row) in a.iter().enumerate() {
        for (j, &k) in row.iter().enumerate() {
            for _ in 0..k {
                rsk_insert(&mut p, &mut q, j, i);
            }
        }
    }
    let mut g = vec![vec![0u64; c]; r];
    for j in 0..c {
        for (t, &v) in shape_upto(&p, j).iter().enumerate() {
            if t < r && t <= j {
                g[r - 1 - t][j - t] = v;
            }
        }
    }
    for i in 0..r {
        for (t, &v) in shape_upto(&q, i).iter().enumerate() {
            if t <= i && t < c {
                g[i - t][c - 1 - t] = v;
            }
        }
    }
    g
}

/// Semistandard tableau from a chain of shapes `shapes[v]` = cells with
/// entry at most `v`.
fn tableau_from_shapes(shapes: &[Vec<u64>]) -> Option<Vec<Vec<usize>>> {
    let mut t: Vec<Vec<usize>> = Vec::new();
    let mut prev: Vec<u64> = Vec::new();
    for (v, sh) in shapes.iter().enumerate() {
        for (row, &len) in sh.iter().enumerate() {
            let before = prev.get(row).copied().unwrap_or(0);
            if len < before {
                return None;
            }
            if row == t.len() {
                t.push(Vec::new());
            }
            for _ in before..len {
                t[row].push(v);
            }
        }
        if sh.len() < prev.len() {
            return None;
        }
        prev = sh.clone();
    }
    Some(t)
}

/// Inverse of [`rsk_rect`].
pub fn rsk_rect_inverse(grid: &Grid) -> Result<RimHookMultiset, TypeAError> {
    let r = grid.len();
    let c = grid.first().map_or(0, |row| row.len());
    if !is_grid_rpp(grid, r, c) {
        return Err(TypeAError::NotMonotone);
    }
    let diag = |i0: usize, j0: usize| -> Vec<u64> {
        let mut v = Vec::new();
        let (mut i, mut j) = (i0 as i64, j0 as i64);
        while i >= 0 && j >= 0 {
            v.push(grid[i as usize][j as usize]);
            i -= 1;
            j -= 1;
        }
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    let p_shapes: Vec<Vec<u64>> = (0..c).map(|j| diag(r - 1, j)).collect();
    let q_shapes: Vec<Vec<u64>> = (0..r).map(|i| diag(i, c - 1)).collect();
    let mut p = tableau_from_shapes(&p_shapes).ok_or(TypeAError::NotMonotone)?;
    let mut q = tableau_from_shapes(&q_shapes).ok_or(TypeAError::NotMonotone)?;
    let mut a = vec![vec![0u64; c]; r];
    loop {
        // largest entry of Q, rightmost among equals
        let mut best: Option<(usize, usize)> = None;
        for (row, qr) in q.iter().enumerate() {
            if let Some(&last) = qr.last() {
                let better = match best {
                    None => true,
                    Some((br, _)) => {
                        let cur = *q[br].last().expect("non-empty");
                        last > cur || (last == cur && qr.len() > q[br].len())
                    }
                };
                if better {
                    best = Some((row, last));
                }
            }
        }
        let Some((row, i)) = best else { break };
        q[row].pop();
        let mut x = p[row].pop().expect("same shape");
        for rr in (0..row).rev() {
            let k = p[rr].iter().rposition(|&y| y < x).expect("reverse bump");
            core::mem::swap(&mut p[rr][k], &mut x);
        }
        a[i][x] += 1;
        while q.last().is_some_and(|v| v.is_empty()) {
            q.pop();
            p.pop();
        }
    }
    Ok(RimHookMultiset::from_matrix(&a))
}

/// Identification of a type A minuscule heap with the rectangle, as the
/// unique fibre-preserving isomorphism onto the poset of boxes ordered by
/// `(i, j) <= (i', j')` when `i' <= i` and `j' <= j`. The box `(i, j)`
/// lies over the vertex `j - i + rows - 1`.
#[derive(Clone, Debug)]
pub struct GridTransport {
    pub rows: usize,
    pub cols: usize,
    cell: Vec<(usize, usize)>,
}

pub fn rectangle_heap(rows: usize, cols: usize) -> Heap {
    let n = rows + cols - 1;
    let graph: Vec<Vec<usize>> = (0..n).map(|v| (0..n).filter(|&w| w + 1 == v || v + 1 == w).collect()).collect();
    let id = |i: usize, j: usize| i * cols + j;
    let mut covers = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            if i > 0 {
                covers.push((id(i, j), id(i - 1, j)));
            }
            if j > 0 {
                covers.push((id(i, j), id(i, j - 1)));
            }
        }
    }
    let fib = (0..rows * cols).map(|x| x % cols + rows - 1 - x / cols).collect();
    Heap::new(graph, fib, &covers).expect("grids are acyclic")
}

impl GridTransport {
    pub fn new(mh: &MinusculeHeap) -> Result<Self, TypeAError> {
        let d = mh.quiver().diagram();
        if d.family() != Family::A {
            return Err(TypeAError::NotTypeA);
        }
        let cols = mh.m() + 1;
        let rows = d.rank() + 1 - cols;
        let rect = rectangle_heap(rows, cols);
        let map = isomorphism(mh.heap().poset(), Some(mh.heap().fib_map()), rect.poset(), Some(rect.fib_map()))
            .ok_or(TypeAError::NoTransport)?;
        let cell = map.into_iter().map(|y| (y / cols, y % cols)).collect();
        Ok(GridTransport { rows, cols, cell })
    }

    pub fn cell(&self, x: usize) -> (usize, usize) {
        self.cell[x]
    }

    pub fn to_grid(&self, vals: &[u64]) -> Grid {
        let mut g = vec![vec![0u64; self.cols]; self.rows];
        for (x, &(i, j)) in self.cell.iter().enumerate() {
            g[i][j] = vals[x];
        }
        g
    }

    pub fn from_grid(&self, g: &Grid) -> Result<Vec<u64>, TypeAError> {
        if g.len() != self.rows || g.iter().any(|r| r.len() != self.cols) {
            return Err(TypeAError::Shape { rows: self.rows, cols: self.cols });
        }
        Ok(self.cell.iter().map(|&(i, j)| g[i][j]).collect())
    }
}

/// Rim hooks of the summands of a multiplicity vector on a type A heap.
pub fn hooks_of_mults(mh: &MinusculeHeap, mults: &[u64]) -> Result<RimHookMultiset, TypeAError> {
    let cols = mh.m() + 1;
    let rows = mh.quiver().rank() + 1 - cols;
    let mut out = RimHookMultiset::new(rows, cols);
    for (x, &k) in mults.iter().enumerate() {
        out.add(dimvector_rimhook(rows, cols, mh.root(x))?, k)?;
    }
    Ok(out)
}

/// Inverse of [`hooks_of_mults`].
pub fn mults_of_hooks(mh: &MinusculeHeap, hooks: &RimHookMultiset) -> Result<Vec<u64>, TypeAError> {
    let mut c = vec![0u64; mh.len()];
    for (&key, &k) in &hooks.mults {
        let root = rimhook_dimvector(hooks.rows, hooks.cols, key)?;
        let x = mh.find_root(&root).ok_or(TypeAError::NotInterval(root))?;
        c[x] += k;
    }
    Ok(c)
}
