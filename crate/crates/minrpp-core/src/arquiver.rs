//! Knitting of the Auslander–Reiten quiver of a Dynkin quiver and its
//! repetition `ZQ`.
//!
//! Positions of `ZQ` are pairs `(i, k)` meaning `τ^{-k} P_i`. Each arrow
//! `a → b` of `Q` gives arrows `(b, k) → (a, k)` and `(a, k) → (b, k + 1)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::dynkin::{DynkinQuiver, Root};

pub type Pos = (usize, i64);

/// Dimension vector of the indecomposable projective at `i`: one at every
/// vertex reachable from `i` by a path.
pub fn projective_dim(q: &DynkinQuiver, i: usize) -> Root {
    let mut d = vec![0i64; q.rank()];
    d[i] = 1;
    let mut stack = vec![i];
    while let Some(v) = stack.pop() {
        for &(a, b) in q.arrows() {
            if a == v && d[b] == 0 {
                d[b] = 1;
                stack.push(b);
            }
        }
    }
    d
}

#[derive(Clone, Debug)]
pub struct Zq {
    quiver: DynkinQuiver,
    psi: Vec<usize>,
    r: Vec<usize>,
    h: usize,
    // classes over one period `0 <= k < h`
    classes: Vec<Vec<Root>>,
}

impl Zq {
    pub fn new(quiver: &DynkinQuiver) -> Self {
        let n = quiver.rank();
        let diagram = quiver.diagram();
        let h = diagram.coxeter_number();
        let psi = diagram.psi();
        let mut by_num: Vec<usize> = (0..n).collect();
        by_num.sort_by_key(|&v| core::cmp::Reverse(quiver.number(v)));
        let mut classes: Vec<Vec<Root>> = (0..n).map(|i| vec![projective_dim(quiver, i)]).collect();
        for k in 0..h {
            for &i in &by_num {
                let mut d: Root = classes[i][k].iter().map(|x| -x).collect();
                for &(a, b) in quiver.arrows() {
                    if a == i {
                        add_into(&mut d, &classes[b][k + 1]);
                    }
                    if b == i {
                        add_into(&mut d, &classes[a][k]);
                    }
                }
                classes[i].push(d);
            }
        }
        for (i, row) in classes.iter().enumerate() {
            assert_eq!(row[h], row[0], "knitting is not {h}-periodic at vertex {}", i + 1);
        }
        let r: Vec<usize> = classes
            .iter()
            .map(|row| row.iter().take_while(|c| c.iter().all(|&x| x >= 0) && c.iter().any(|&x| x > 0)).count())
            .collect();
        for i in 0..n {
            assert_eq!(r[i] + r[psi[i]], h, "orbit lengths do not add up to the Coxeter number");
        }
        for row in classes.iter_mut() {
            row.pop();
        }
        Zq { quiver: quiver.clone(), psi, r, h, classes }
    }

    pub fn quiver(&self) -> &DynkinQuiver {
        &self.quiver
    }

    pub fn rank(&self) -> usize {
        self.quiver.rank()
    }

    pub fn psi(&self) -> &[usize] {
        &self.psi
    }

    /// Number of indecomposable representations in the τ-orbit of `P_i`.
    pub fn orbit_len(&self, i: usize) -> usize {
        self.r[i]
    }

    pub fn orbit_lens(&self) -> &[usize] {
        &self.r
    }

    pub fn coxeter_number(&self) -> usize {
        self.h
    }

    /// Class in the Grothendieck group of the object at `(i, k)`.
    pub fn class(&self, (i, k): Pos) -> Root {
        self.classes[i][k.rem_euclid(self.h as i64) as usize].clone()
    }

    pub fn is_module(&self, (i, k): Pos) -> bool {
        k >= 0 && (k as usize) < self.r[i]
    }

    /// A linear extension of the path order of `ZQ`.
    pub fn height(&self, (i, k): Pos) -> i64 {
        let n = self.rank() as i64;
        2 * n * k + (n - self.quiver.number(i) as i64)
    }

    pub fn succ(&self, (i, k): Pos) -> Vec<Pos> {
        let mut out = Vec::new();
        for &(a, b) in self.quiver.arrows() {
            if b == i {
                out.push((a, k));
            }
            if a == i {
                out.push((b, k + 1));
            }
        }
        out
    }

    pub fn pred(&self, (i, k): Pos) -> Vec<Pos> {
        let mut out = Vec::new();
        for &(a, b) in self.quiver.arrows() {
            if a == i {
                out.push((b, k));
            }
            if b == i {
                out.push((a, k - 1));
            }
        }
        out
    }

    /// The shift functor `[1]`.
    pub fn shift(&self, (a, k): Pos) -> Pos {
        let b = self.psi[a];
        (b, k + self.r[b] as i64)
    }

    /// All positions `(i, k)` that are indecomposable representations of `Q`.
    pub fn module_positions(&self) -> Vec<Pos> {
        let mut out = Vec::new();
        for i in 0..self.rank() {
            for k in 0..self.r[i] as i64 {
                out.push((i, k));
            }
        }
        out
    }
}

fn add_into(d: &mut [i64], e: &[i64]) {
    for (x, y) in d.iter_mut().zip(e) {
        *x += y;
    }
}

/// The Auslander–Reiten quiver of `rep Q`.
#[derive(Clone, Debug)]
pub struct ArQuiver {
    zq: Zq,
    positions: Vec<Pos>,
    roots: Vec<Root>,
    arrows: Vec<(usize, usize)>,
    index: BTreeMap<Pos, usize>,
}

impl ArQuiver {
    pub fn new(quiver: &DynkinQuiver) -> Self {
        Self::from_zq(Zq::new(quiver))
    }

    pub fn from_zq(zq: Zq) -> Self {
        let mut positions = zq.module_positions();
        positions.sort_by_key(|&p| (zq.height(p), p));
        let index: BTreeMap<Pos, usize> = positions.iter().enumerate().map(|(x, &p)| (p, x)).collect();
        let roots = positions.iter().map(|&p| zq.class(p)).collect();
        let mut arrows = Vec::new();
        for (x, &p) in positions.iter().enumerate() {
            for q in zq.succ(p) {
                if let Some(&y) = index.get(&q) {
                    arrows.push((x, y));
                }
            }
        }
        arrows.sort_unstable();
        ArQuiver { zq, positions, roots, arrows, index }
    }

    pub fn zq(&self) -> &Zq {
        &self.zq
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn position(&self, v: usize) -> Pos {
        self.positions[v]
    }

    pub fn root(&self, v: usize) -> &Root {
        &self.roots[v]
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn vertex_at(&self, p: Pos) -> Option<usize> {
        self.index.get(&p).copied()
    }

    pub fn find_root(&self, root: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r.as_slice() == root)
    }

    /// The AR translate, undefined on projectives.
    pub fn tau(&self, v: usize) -> Option<usize> {
        let (i, k) = self.positions[v];
        if k == 0 {
            None
        } else {
            self.vertex_at((i, k - 1))
        }
    }

    /// Index of the projective sharing a τ-orbit with `v`.
    pub fn pi(&self, v: usize) -> usize {
        self.positions[v].0
    }

    /// Vertices whose dimension vector is non-zero at `m`, in increasing
    /// height.
    pub fn support_at(&self, m: usize) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.roots[v][m] != 0).collect()
    }

    /// Checks `dim τX + dim X = Σ dim Y` over arrows `Y → X` at every
    /// non-projective vertex.
    pub fn verify_mesh(&self) -> bool {
        (0..self.len()).all(|v| match self.tau(v) {
            None => true,
            Some(t) => {
                let mut lhs: Root = self.roots[v].clone();
                add_into(&mut lhs, &self.roots[t]);
                let mut rhs = vec![0i64; lhs.len()];
                for &(a, b) in &self.arrows {
                    if b == v {
                        add_into(&mut rhs, &self.roots[a]);
                    }
                }
                lhs == rhs
            }
        })
    }
}
