//! Generic Jordan forms of nilpotent endomorphisms, sampled over `F_p`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use super::fp::{Field, Matrix};
use super::seeded_rng;
use crate::dynkin::{DynkinQuiver, Root};
use crate::jordan::{Partition, PartitionTuple};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    NoIndecomposable(Root),
    Precondition(&'static str),
    TooLarge { size: usize, bound: usize },
    NotTypeA,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::NoIndecomposable(r) => write!(f, "no indecomposable found with dimension vector {r:?}"),
            OracleError::Precondition(s) => f.write_str(s),
            OracleError::TooLarge { size, bound } => write!(f, "poset has {size} elements, bound is {bound}"),
            OracleError::NotTypeA => f.write_str("only available in type A"),
        }
    }
}

impl core::error::Error for OracleError {}

/// A representation given by matrices, one per arrow of the quiver in the
/// order of `DynkinQuiver::arrows`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRep {
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

impl MatrixRep {
    pub fn zero(q: &DynkinQuiver, dims: Vec<usize>) -> Self {
        let maps = q.arrows().iter().map(|&(a, b)| Matrix::zero(dims[b], dims[a])).collect();
        MatrixRep { dims, maps }
    }

    pub fn random<R: Rng + ?Sized>(q: &DynkinQuiver, f: &Field, dims: Vec<usize>, rng: &mut R) -> Self {
        let maps = q.arrows().iter().map(|&(a, b)| Matrix::random(f, dims[b], dims[a], rng)).collect();
        MatrixRep { dims, maps }
    }

    pub fn direct_sum(q: &DynkinQuiver, parts: &[&MatrixRep]) -> Self {
        let n = q.rank();
        let dims: Vec<usize> = (0..n).map(|i| parts.iter().map(|p| p.dims[i]).sum()).collect();
        let mut out = MatrixRep::zero(q, dims);
        let mut off = vec![0usize; n];
        for p in parts {
            for (k, &(a, b)) in q.arrows().iter().enumerate() {
                out.maps[k].put(off[b], off[a], &p.maps[k]);
            }
            for (o, d) in off.iter_mut().zip(&p.dims) {
                *o += d;
            }
        }
        out
    }
}

/// Basis of `Hom(X, Y)`; each element is one matrix `X_i → Y_i` per vertex.
pub fn hom_basis(q: &DynkinQuiver, f: &Field, x: &MatrixRep, y: &MatrixRep) -> Vec<Vec<Matrix>> {
    let n = q.rank();
    let mut off = vec![0usize; n + 1];
    for i in 0..n {
        off[i + 1] = off[i] + y.dims[i] * x.dims[i];
    }
    let unknowns = off[n];
    let var = |i: usize, r: usize, c: usize| off[i] + r * x.dims[i] + c;
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for (k, &(a, b)) in q.arrows().iter().enumerate() {
        let fx = &x.maps[k];
        let fy = &y.maps[k];
        for r in 0..y.dims[b] {
            for c in 0..x.dims[a] {
                let mut eq = vec![0u64; unknowns];
                for t in 0..x.dims[b] {
                    let v = var(b, r, t);
                    eq[v] = f.add(eq[v], fx.get(t, c));
                }
                for t in 0..y.dims[a] {
                    let v = var(a, t, c);
                    eq[v] = f.sub(eq[v], fy.get(r, t));
                }
                rows.push(eq);
            }
        }
    }
    let sys = Matrix::from_rows(rows.len(), unknowns, rows.concat());
    sys.nullspace(f)
        .into_iter()
        .map(|v| (0..n).map(|i| Matrix::from_rows(y.dims[i], x.dims[i], v[off[i]..off[i + 1]].to_vec())).collect())
        .collect()
}

/// A representation with dimension vector `root` and one-dimensional
/// endomorphism ring, found as a random point of the representation space.
pub fn indec_matrices<R: Rng + ?Sized>(
    q: &DynkinQuiver,
    f: &Field,
    root: &[i64],
    rng: &mut R,
) -> Result<MatrixRep, OracleError> {
    let dims: Vec<usize> = root.iter().map(|&d| d as usize).collect();
    for _ in 0..64 {
        let x = MatrixRep::random(q, f, dims.clone(), rng);
        if hom_basis(q, f, &x, &x).len() == 1 {
            return Ok(x);
        }
    }
    Err(OracleError::NoIndecomposable(root.to_vec()))
}

/// Jordan type of a nilpotent matrix, from the ranks of its powers.
pub fn jordan_type(f: &Field, n: &Matrix) -> Partition {
    let d = n.rows();
    let mut ranks = vec![d];
    let mut pw = Matrix::identity(d);
    while *ranks.last().expect("non-empty") > 0 {
        pw = pw.mul(f, n);
        let r = pw.rank(f);
        assert!(r < *ranks.last().expect("non-empty"), "matrix is not nilpotent");
        ranks.push(r);
    }
    // ranks[k-1] - ranks[k] counts Jordan blocks of size at least k
    let conj: Vec<u64> = ranks.windows(2).map(|w| (w[0] - w[1]) as u64).collect();
    Partition::new(conj).conjugate()
}

/// A nilpotent endomorphism, one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilSample {
    pub n: Vec<Matrix>,
}

impl NilSample {
    pub fn is_compatible(&self, q: &DynkinQuiver, f: &Field, x: &MatrixRep) -> bool {
        q.arrows().iter().enumerate().all(|(k, &(a, b))| self.n[b].mul(f, &x.maps[k]) == x.maps[k].mul(f, &self.n[a]))
    }

    pub fn is_nilpotent(&self, f: &Field) -> bool {
        self.n.iter().all(|m| m.pow(f, m.rows()).is_zero())
    }

    pub fn jordan_types(&self, f: &Field) -> PartitionTuple {
        PartitionTuple(self.n.iter().map(|m| jordan_type(f, m)).collect())
    }
}

/// Matrix models of a fixed list of indecomposables with all Hom spaces
/// between them.
#[derive(Clone, Debug)]
pub struct SummandModels {
    quiver: DynkinQuiver,
    field: Field,
    roots: Vec<Root>,
    reps: Vec<MatrixRep>,
    homs: BTreeMap<(usize, usize), Vec<Vec<Matrix>>>,
}

impl SummandModels {
    pub fn new(q: &DynkinQuiver, f: Field, roots: &[Root], seed: u64) -> Result<Self, OracleError> {
        let mut rng = seeded_rng(seed);
        let reps = roots.iter().map(|r| indec_matrices(q, &f, r, &mut rng)).collect::<Result<Vec<_>, _>>()?;
        let mut homs = BTreeMap::new();
        for u in 0..reps.len() {
            for v in 0..reps.len() {
                if u != v {
                    homs.insert((u, v), hom_basis(q, &f, &reps[u], &reps[v]));
                }
            }
        }
        Ok(SummandModels { quiver: q.clone(), field: f, roots: roots.to_vec(), reps, homs })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn rep(&self, u: usize) -> &MatrixRep {
        &self.reps[u]
    }

    pub fn hom_dim(&self, u: usize, v: usize) -> usize {
        if u == v {
            1
        } else {
            self.homs[&(u, v)].len()
        }
    }

    /// `⊕ M_u^{c_u}`, copies of each summand adjacent.
    pub fn total(&self, mults: &[u64]) -> MatrixRep {
        let parts: Vec<&MatrixRep> =
            mults.iter().enumerate().flat_map(|(u, &c)| core::iter::repeat_n(&self.reps[u], c as usize)).collect();
        MatrixRep::direct_sum(&self.quiver, &parts)
    }

    /// A random element of the radical of `End(⊕ M_u^{c_u})` plus a strictly
    /// upper triangular part between copies of the same summand.
    pub fn sample<R: Rng + ?Sized>(&self, mults: &[u64], rng: &mut R) -> NilSample {
        let f = &self.field;
        let n = self.quiver.rank();
        let copies: Vec<(usize, usize)> =
            mults.iter().enumerate().flat_map(|(u, &c)| (0..c as usize).map(move |a| (u, a))).collect();
        let mut offsets = vec![vec![0usize; copies.len()]; n];
        let mut dims = vec![0usize; n];
        for (k, &(u, _)) in copies.iter().enumerate() {
            for i in 0..n {
                offsets[i][k] = dims[i];
                dims[i] += self.reps[u].dims[i];
            }
        }
        let mut out: Vec<Matrix> = dims.iter().map(|&d| Matrix::zero(d, d)).collect();
        for (s, &(u, a)) in copies.iter().enumerate() {
            for (t, &(v, b)) in copies.iter().enumerate() {
                // block from copy s to copy t
                if u == v {
                    if b < a {
                        let lam = f.random(rng);
                        for i in 0..n {
                            let blk = Matrix::identity(self.reps[u].dims[i]).scale(f, lam);
                            out[i].put(offsets[i][t], offsets[i][s], &blk);
                        }
                    }
                    continue;
                }
                let basis = &self.homs[&(u, v)];
                if basis.is_empty() {
                    continue;
                }
                let coeffs: Vec<u64> = basis.iter().map(|_| f.random(rng)).collect();
                for i in 0..n {
                    let mut blk = Matrix::zero(self.reps[v].dims[i], self.reps[u].dims[i]);
                    for (hb, &co) in basis.iter().zip(&coeffs) {
                        blk = blk.add(f, &hb[i].scale(f, co));
                    }
                    out[i].put(offsets[i][t], offsets[i][s], &blk);
                }
            }
        }
        NilSample { n: out }
    }
}

/// Result of sampling generic Jordan forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenJf {
    /// Dominance maximum over the samples.
    pub jf: PartitionTuple,
    /// All samples gave the same Jordan data.
    pub agree: bool,
    pub samples: Vec<PartitionTuple>,
    pub prime: u64,
}

/// Dominance maximum, vertex by vertex; `None` when some vertex has no
/// maximum among the candidates.
pub fn dominance_max(cands: &[PartitionTuple]) -> Option<PartitionTuple> {
    let n = cands.first()?.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let best =
            cands.iter().map(|t| &t[i]).find(|p| cands.iter().all(|t| t[i].dominance_leq(p).unwrap_or(false)))?;
        out.push(best.clone());
    }
    Some(PartitionTuple(out))
}

/// Generic Jordan data of `⊕ M_u^{c_u}` estimated from `samples` random
/// nilpotent endomorphisms over `F_p`.
pub fn gen_jf(
    q: &DynkinQuiver,
    summands: &[(Root, u64)],
    samples: usize,
    p: u64,
    seed: u64,
) -> Result<GenJf, OracleError> {
    if samples == 0 {
        return Err(OracleError::Precondition("need at least one sample"));
    }
    let f = Field::new(p);
    let roots: Vec<Root> = summands.iter().map(|(r, _)| r.clone()).collect();
    let mults: Vec<u64> = summands.iter().map(|&(_, c)| c).collect();
    let models = SummandModels::new(q, f, &roots, seed)?;
    let mut rng = seeded_rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    let samples: Vec<PartitionTuple> = (0..samples).map(|_| models.sample(&mults, &mut rng).jordan_types(&f)).collect();
    let agree = samples.windows(2).all(|w| w[0] == w[1]);
    let jf = match dominance_max(&samples) {
        Some(jf) => jf,
        None => samples.iter().max().expect("non-empty").clone(),
    };
    Ok(GenJf { jf, agree: agree && dominance_max(&samples).is_some(), samples, prime: p })
}

/// As [`gen_jf`], retrying once at a larger prime if the samples disagree.
pub fn gen_jf_with_retry(
    q: &DynkinQuiver,
    summands: &[(Root, u64)],
    samples: usize,
    p: u64,
    seed: u64,
) -> Result<GenJf, OracleError> {
    let first = gen_jf(q, summands, samples, p, seed)?;
    if first.agree {
        return Ok(first);
    }
    let bigger = super::fp::next_prime(p.saturating_mul(16).min((1 << 31) - 2000));
    gen_jf(q, summands, samples, bigger, seed)
}

/// Jordan type of the nilpotent operator induced on `W / U`, where `U` is
/// spanned by the columns of `u` and is stable under `n`.
pub fn quotient_jordan_type(f: &Field, n: &Matrix, u: &Matrix) -> Partition {
    let d = n.rows();
    let du = u.rank(f);
    let mut ranks = vec![d - du];
    let mut pw = Matrix::identity(d);
    loop {
        pw = pw.mul(f, n);
        let r = pw.hstack(u).rank(f) - du;
        ranks.push(r);
        if r == 0 {
            break;
        }
        assert!(ranks.len() <= d + 2, "operator is not nilpotent on the quotient");
    }
    let conj: Vec<u64> = ranks.windows(2).map(|w| (w[0] - w[1]) as u64).collect();
    Partition::new(conj).conjugate()
}

/// Jordan type of `N` on the cokernel of a random module map
/// `k[N]/N^b → k[N]/N^a ⊕ k[N]/N^c`.
pub fn generic_coker_jf(a: usize, b: usize, c: usize, p: u64, seed: u64) -> Result<Partition, OracleError> {
    if !(a >= b && b >= c) {
        return Err(OracleError::Precondition("need a >= b >= c"));
    }
    let f = Field::new(p);
    let mut rng = seeded_rng(seed);
    let d = a + c;
    let mut n = Matrix::zero(d, d);
    for i in 0..a.saturating_sub(1) {
        n.set(i + 1, i, 1);
    }
    for i in 0..c.saturating_sub(1) {
        n.set(a + i + 1, a + i, 1);
    }
    // image of 1: killed by N^b
    let mut g = vec![0u64; d];
    for slot in g.iter_mut().take(a).skip(a - b) {
        *slot = f.random(&mut rng);
    }
    for slot in g.iter_mut().skip(a) {
        *slot = f.random(&mut rng);
    }
    let mut cols = Vec::with_capacity(b);
    let mut v = Matrix::from_columns(d, &[g]);
    for _ in 0..b {
        cols.push(v.column(0));
        v = n.mul(&f, &v);
    }
    let u = Matrix::from_columns(d, &cols);
    Ok(quotient_jordan_type(&f, &n, &u))
}

/// Jordan types `(λ, μ, ν)` along `0 → V_k → ⊕ V_j → C → 0` at a source
/// `k`, where the middle sum runs over arrows `k → j`. `None` if the map
/// is not injective.
pub fn source_sequence_types(
    q: &DynkinQuiver,
    f: &Field,
    x: &MatrixRep,
    s: &NilSample,
    k: usize,
) -> Option<(Partition, Partition, Partition)> {
    let outs: Vec<(usize, usize)> =
        q.arrows().iter().enumerate().filter(|(_, &(a, _))| a == k).map(|(e, &(_, b))| (e, b)).collect();
    let total: usize = outs.iter().map(|&(_, b)| x.dims[b]).sum();
    let mut phi = Matrix::zero(total, x.dims[k]);
    let mut nmid = Matrix::zero(total, total);
    let mut off = 0;
    for &(e, b) in &outs {
        phi.put(off, 0, &x.maps[e]);
        nmid.put(off, off, &s.n[b]);
        off += x.dims[b];
    }
    if phi.rank(f) != x.dims[k] {
        return None;
    }
    let lambda = jordan_type(f, &s.n[k]);
    let mu = jordan_type(f, &nmid);
    let nu = quotient_jordan_type(f, &nmid, &phi);
    Some((lambda, mu, nu))
}
