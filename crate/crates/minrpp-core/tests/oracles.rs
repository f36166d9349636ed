use minrpp_core::bijection::{fibre_partitions, rho};
use minrpp_core::dynkin::Root;
use minrpp_core::heap::Poset;
use minrpp_core::oracle::fp::{Field, Matrix};
use minrpp_core::oracle::genjf::{
    gen_jf, generic_coker_jf, hom_basis, indec_matrices, jordan_type, source_sequence_types, MatrixRep, SummandModels,
};
use minrpp_core::oracle::gk::{build_tilde_poset, chain_cover_sizes, gk_partition};
use minrpp_core::oracle::seeded_rng;
use minrpp_core::{DynkinDiagram, DynkinQuiver, MinusculeHeap, Partition, PartitionTuple};
use proptest::prelude::*;
use rand::Rng;

const P: u64 = 32003;

fn quiver(name: &str, orient: &str) -> DynkinQuiver {
    DynkinQuiver::parse(DynkinDiagram::parse(name).unwrap(), orient).unwrap()
}

fn summands(mh: &MinusculeHeap, c: &[u64]) -> Vec<(Root, u64)> {
    (0..mh.len()).filter(|&x| c[x] > 0).map(|x| (mh.root(x).clone(), c[x])).collect()
}

fn tuple(parts: [&[u64]; 3]) -> PartitionTuple {
    PartitionTuple::from_parts(parts.iter().map(|p| p.to_vec()).collect())
}

#[test]
fn closed_form_on_the_running_example() {
    let q = quiver("A3", "1>2<3");
    let mh = MinusculeHeap::new(&q, 1).unwrap();
    let at = |r: [i64; 3]| mh.find_root(&r).unwrap();
    let (e010, e011, e110, e111) = (at([0, 1, 0]), at([0, 1, 1]), at([1, 1, 0]), at([1, 1, 1]));
    let mut disagree = 0;
    for a in 0..=3u64 {
        for b in 0..=3u64 {
            for c in 0..=3u64 {
                for d in 0..=3u64 {
                    let mut mults = vec![0; 4];
                    mults[e010] = a;
                    mults[e011] = b;
                    mults[e110] = c;
                    mults[e111] = d;
                    let want = tuple([&[c + d], &[b.max(c) + a + d, b.min(c)], &[b + d]]);
                    let vals = rho(&mh, &mults).unwrap();
                    assert_eq!(fibre_partitions(&mh, &vals), want);
                    let g = gen_jf(&q, &summands(&mh, &mults), 8, P, a * 64 + b * 16 + c * 4 + d).unwrap();
                    disagree += usize::from(!g.agree);
                    assert_eq!(g.jf, want, "a={a} b={b} c={c} d={d}");
                }
            }
        }
    }
    assert!(disagree < 8, "{disagree} cases with degenerate samples");
}

#[test]
fn gen_jf_matches_rho_on_random_cases() {
    let cases = [
        MinusculeHeap::new(&quiver("A4", "1<2>3<4"), 1).unwrap(),
        MinusculeHeap::new(&quiver("A4", "1>2>3<4"), 2).unwrap(),
        MinusculeHeap::new(&quiver("D5", "1<2>3<4,3>5"), 0).unwrap(),
        MinusculeHeap::new(&quiver("D5", "1>2>3>4,3<5"), 4).unwrap(),
    ];
    let mut rng = seeded_rng(7);
    for mh in &cases {
        for k in 0..6u64 {
            let c: Vec<u64> = (0..mh.len()).map(|_| if rng.gen_bool(0.4) { rng.gen_range(1..3) } else { 0 }).collect();
            let want = fibre_partitions(mh, &rho(mh, &c).unwrap());
            let g = gen_jf(mh.quiver(), &summands(mh, &c), 8, P, k).unwrap();
            assert_eq!(g.jf, want, "{} {:?}", mh.quiver().describe(), c);
            for s in &g.samples {
                assert!(s.dominance_leq(&g.jf).unwrap());
            }
        }
    }
}

#[test]
fn samples_are_compatible_and_nilpotent() {
    let q = quiver("D4", "1<2>3,2<4");
    let mh = MinusculeHeap::new(&q, 0).unwrap();
    let f = Field::new(P);
    let roots: Vec<Root> = mh.roots().to_vec();
    let models = SummandModels::new(&q, f, &roots, 3).unwrap();
    let mut rng = seeded_rng(11);
    for _ in 0..10 {
        let c: Vec<u64> = (0..roots.len()).map(|_| rng.gen_range(0..3)).collect();
        let x = models.total(&c);
        let s = models.sample(&c, &mut rng);
        assert!(s.is_compatible(&q, &f, &x));
        assert!(s.is_nilpotent(&f));
    }
}

#[test]
fn coker_formula() {
    for a in 0..=6usize {
        for b in 0..=a {
            for c in 0..=b {
                let got = generic_coker_jf(a, b, c, P, (a * 49 + b * 7 + c) as u64).unwrap();
                let want = if a + c == b { Partition::empty() } else { Partition::new(vec![(a + c - b) as u64]) };
                assert_eq!(got, want, "({a},{b},{c})");
            }
        }
    }
    assert!(generic_coker_jf(2, 3, 1, P, 0).is_err());
}

#[test]
fn jordan_type_of_known_matrices() {
    let f = Field::new(P);
    // blocks of sizes 3 and 1
    let mut n = Matrix::zero(4, 4);
    n.set(1, 0, 1);
    n.set(2, 1, 5);
    assert_eq!(jordan_type(&f, &n), Partition::new(vec![3, 1]));
    assert_eq!(jordan_type(&f, &Matrix::zero(3, 3)), Partition::new(vec![1, 1, 1]));
}

#[test]
fn hom_spaces() {
    let q = quiver("A2", "1>2");
    let f = Field::new(P);
    let one = Matrix::identity(1);
    let rep = |d: [usize; 2], maps: Vec<Matrix>| MatrixRep { dims: d.to_vec(), maps };
    let p1 = rep([1, 1], vec![one.clone()]);
    let s1 = rep([1, 0], vec![Matrix::zero(0, 1)]);
    let s2 = rep([0, 1], vec![Matrix::zero(1, 0)]);
    assert_eq!(hom_basis(&q, &f, &s2, &p1).len(), 1);
    assert_eq!(hom_basis(&q, &f, &p1, &s2).len(), 0);
    assert_eq!(hom_basis(&q, &f, &p1, &s1).len(), 1);
    assert_eq!(hom_basis(&q, &f, &s1, &p1).len(), 0);
    assert_eq!(hom_basis(&q, &f, &s1, &s2).len(), 0);
    let two = MatrixRep::direct_sum(&q, &[&p1, &p1]);
    assert_eq!(hom_basis(&q, &f, &two, &two).len(), 4);
    let mixed = MatrixRep::direct_sum(&q, &[&s1, &s2]);
    assert_eq!(hom_basis(&q, &f, &mixed, &mixed).len(), 2);
}

#[test]
fn indecomposables_have_trivial_endomorphisms() {
    let f = Field::new(P);
    let mut rng = seeded_rng(5);
    for (name, orient) in [("A4", "1<2>3<4"), ("D4", "1>2<3,2>4"), ("D5", "1<2<3<4,3<5")] {
        let q = quiver(name, orient);
        for r in q.diagram().positive_roots() {
            let x = indec_matrices(&q, &f, &r, &mut rng).unwrap();
            assert_eq!(x.dims, r.iter().map(|&d| d as usize).collect::<Vec<_>>());
            assert_eq!(hom_basis(&q, &f, &x, &x).len(), 1);
        }
    }
}

#[test]
fn source_sequences_dominate_union() {
    let f = Field::new(P);
    let mut rng = seeded_rng(9);
    for (name, orient, m) in [("A4", "1<2>3<4", 1), ("D4", "1<2>3,2<4", 0), ("A3", "1<2<3", 0)] {
        let q = quiver(name, orient);
        let mh = MinusculeHeap::new(&q, m).unwrap();
        let models = SummandModels::new(&q, f, mh.roots(), 1).unwrap();
        let sources: Vec<usize> = (0..q.rank()).filter(|&k| q.arrows().iter().all(|&(_, b)| b != k)).collect();
        let mut seen = 0;
        for _ in 0..30 {
            let c: Vec<u64> = (0..mh.len()).map(|_| rng.gen_range(0..3)).collect();
            let x = models.total(&c);
            let s = models.sample(&c, &mut rng);
            for &k in &sources {
                if let Some((lam, mu, nu)) = source_sequence_types(&q, &f, &x, &s, k) {
                    assert!(lam.union(&nu).dominance_leq(&mu).unwrap());
                    seen += 1;
                }
            }
        }
        assert!(seen > 0);
    }
}

// Largest union of k chains, via Dilworth: the largest subset of width at most k.
fn brute_gk(p: &Poset) -> Partition {
    let n = p.len();
    let full = 1usize << n;
    let mut width = vec![0usize; full];
    for mask in 1..full {
        let elems: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let anti = elems.iter().all(|&x| elems.iter().all(|&y| x == y || !p.comparable(x, y)));
        width[mask] = if anti { elems.len() } else { elems.iter().map(|&i| width[mask & !(1 << i)]).max().unwrap() };
    }
    let delta: Vec<usize> =
        (0..=n).map(|k| (0..full).filter(|&m| width[m] <= k).map(|m| m.count_ones() as usize).max().unwrap()).collect();
    Partition::new(delta.windows(2).map(|w| (w[1] - w[0]) as u64).collect())
}

#[test]
fn gk_small_posets() {
    assert_eq!(gk_partition(&Poset::chain(3), 25).unwrap(), Partition::new(vec![3]));
    assert_eq!(gk_partition(&Poset::antichain(3), 25).unwrap(), Partition::new(vec![1, 1, 1]));
    assert_eq!(gk_partition(&Poset::grid(2, 3), 25).unwrap(), brute_gk(&Poset::grid(2, 3)));
    assert_eq!(chain_cover_sizes(&Poset::chain(2)), vec![0, 2, 2]);
    assert!(gk_partition(&Poset::antichain(30), 25).is_err());
}

proptest! {
    #[test]
    fn gk_matches_brute_force(n in 1usize..9, edges in proptest::collection::vec((0usize..9, 0usize..9), 0..14)) {
        let rel: Vec<(usize, usize)> = edges.into_iter().filter(|&(a, b)| a < b && b < n).collect();
        let p = Poset::from_relations(n, &rel).unwrap();
        prop_assert_eq!(gk_partition(&p, 25).unwrap(), brute_gk(&p));
    }
}

fn all_mults(len: usize, max: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out.into_iter().flat_map(|v| (0..=max).map(move |k| [v.clone(), vec![k]].concat())).collect();
    }
    out
}

#[test]
fn gk_matches_rho_in_type_a() {
    let d = DynkinDiagram::parse("A3").unwrap();
    for q in DynkinQuiver::all_orientations(&d) {
        for m in 0..3 {
            let mh = MinusculeHeap::new(&q, m).unwrap();
            for c in all_mults(mh.len(), 2) {
                let nu = fibre_partitions(&mh, &rho(&mh, &c).unwrap());
                for i in 0..3 {
                    let p = build_tilde_poset(&mh, &c, i).unwrap();
                    assert_eq!(gk_partition(&p, 25).unwrap(), nu[i]);
                }
            }
        }
    }
    let mh = MinusculeHeap::new(&DynkinQuiver::standard(DynkinDiagram::parse("D4").unwrap()), 0).unwrap();
    assert!(build_tilde_poset(&mh, &vec![1; mh.len()], 0).is_err());
}

#[test]
fn tilde_poset_examples() {
    let q = quiver("A3", "1>2<3");
    let mh = MinusculeHeap::new(&q, 1).unwrap();
    assert_eq!(build_tilde_poset(&mh, &[0; 4], 1).unwrap().len(), 0);
    let mut c = vec![0; 4];
    c[mh.find_root(&[1, 1, 1]).unwrap()] = 3;
    let p = build_tilde_poset(&mh, &c, 0).unwrap();
    assert_eq!(gk_partition(&p, 25).unwrap(), Partition::new(vec![3]));
    let mut c = vec![1; 4];
    c[mh.find_root(&[1, 1, 1]).unwrap()] = 0;
    let p = build_tilde_poset(&mh, &c, 1).unwrap();
    assert_eq!(p.len(), 3);
    assert_eq!(gk_partition(&p, 25).unwrap(), Partition::new(vec![2, 1]));
}
