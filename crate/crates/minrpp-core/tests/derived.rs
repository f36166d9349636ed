use minrpp_core::bijection::{
    fibre_partitions, heart_for_filter, reflect_filter, rho, rho_xi, rho_xi_direct, split_for_rpp, Direction,
};
use minrpp_core::jordan::sigma_k_tuple;
use minrpp_core::oracle::gen_jf;
use minrpp_core::rpp::{is_ext_rpp, promotion_ext, random_ext_rpp, toggle_ext, toggle_fibre_ext};
use minrpp_core::{
    Bitset, DynkinDiagram, DynkinQuiver, ExtValue, Heart, MinusculeHeap, Partition, PartitionTuple, SplitObject,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn quiver(name: &str, orient: &str) -> DynkinQuiver {
    DynkinQuiver::parse(DynkinDiagram::parse(name).unwrap(), orient).unwrap()
}

fn tuple(parts: &[&[u64]]) -> PartitionTuple {
    PartitionTuple::from_parts(parts.iter().map(|p| p.to_vec()).collect())
}

fn finite_partitions(mh: &MinusculeHeap, vals: &[ExtValue]) -> PartitionTuple {
    let heap = mh.heap();
    PartitionTuple(
        (0..heap.rank())
            .map(|i| {
                Partition::new(
                    heap.fibre(i)
                        .iter()
                        .filter_map(|&x| match vals[x] {
                            ExtValue::Fin(v) => Some(v),
                            ExtValue::CoFin(_) => None,
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}

fn all_mults(len: usize, max: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out.into_iter().flat_map(|v| (0..=max).map(move |k| [v.clone(), vec![k]].concat())).collect();
    }
    out
}

// 1←2←3 with the heart whose quiver is 1←2→3, and the object
// 001^2 ⊕ 100 ⊕ 111^3 of that heart.
#[test]
fn reflected_worked_example() {
    let q1 = quiver("A3", "1<2<3");
    let q3 = quiver("A3", "1<2>3");
    let mh = MinusculeHeap::new(&q1, 1).unwrap();
    let want = [(vec![0, 0, 1], 2u64), (vec![1, 0, 0], 1), (vec![1, 1, 1], 3)];
    let (heart, c) = Heart::all_in_window(&q1, 0, 4)
        .into_iter()
        .filter(|h| h.is_right_window(mh.zq()) && h.quiver(&q1).arrows() == q3.arrows())
        .find_map(|h| {
            let dims = h.xi_dimension_vectors(&mh);
            let mut c = vec![0u64; mh.len()];
            for (root, k) in &want {
                let x = (0..mh.len()).find(|&x| dims[x].as_ref() == Some(root))?;
                c[x] = *k;
            }
            Some((h, c))
        })
        .expect("a heart realising the object");
    let split = SplitObject::new(heart, c);
    let vals = rho_xi(&mh, &split).unwrap();
    assert_eq!(vals, rho_xi_direct(&mh, &split).unwrap());
    let nu = finite_partitions(&mh, &vals);
    assert_eq!(nu, tuple(&[&[4], &[3], &[5]]));

    let summands: Vec<_> = want.iter().map(|(r, k)| (r.clone(), *k)).collect();
    assert_eq!(gen_jf(&q3, &summands, 4, 32003, 7).unwrap().jf, nu);

    let mut nu2 = sigma_k_tuple(&nu, &q3, 1).unwrap();
    assert_eq!(nu2, tuple(&[&[4], &[5, 1], &[5]]));
    nu2.0[1] = nu2.0[1].add_to_largest(3);
    let q2 = quiver("A3", "1>2<3");
    let mh2 = MinusculeHeap::new(&q2, 1).unwrap();
    let mut c2 = vec![0; mh2.len()];
    for (name, k) in [("010", 3), ("011", 2), ("110", 1), ("111", 3)] {
        c2[mh2.element_by_name(name).unwrap()] = k;
    }
    assert_eq!(fibre_partitions(&mh2, &rho(&mh2, &c2).unwrap()), nu2);
}

#[test]
fn second_reflected_example() {
    let q2 = quiver("A3", "1>2<3");
    let mh = MinusculeHeap::new(&q2, 1).unwrap();
    let mut c = vec![0; mh.len()];
    for (name, k) in [("010", 1), ("011", 3), ("110", 2), ("111", 3)] {
        c[mh.element_by_name(name).unwrap()] = k;
    }
    assert_eq!(fibre_partitions(&mh, &rho(&mh, &c).unwrap()), tuple(&[&[5], &[7, 2], &[6]]));
}

// 2→1←3←4 relabelled along the line as 1→2←3←4, minuscule at the second
// vertex of the line.
#[test]
fn toggle_figure() {
    use ExtValue::{CoFin, Fin};
    let mh = MinusculeHeap::new(&quiver("A4", "1>2<3<4"), 1).unwrap();
    let heap = mh.heap();
    let p = heap.poset();
    let a = (0..6).find(|&x| heap.lower_covers(x).is_empty()).unwrap();
    let f = (0..6).find(|&x| heap.upper_covers(x).is_empty()).unwrap();
    let e = heap.fibre(1).iter().copied().find(|&x| x != a).unwrap();
    let b = heap.upper_covers(a).iter().copied().find(|&x| heap.upper_covers(x).len() == 2).unwrap();
    let c = heap.upper_covers(a).iter().copied().find(|&x| x != b).unwrap();
    let d = (0..6).find(|&x| ![a, b, c, e, f].contains(&x)).unwrap();
    assert!(p.lt(b, d) && p.lt(c, e) && p.lt(d, f) && !p.lt(c, d));
    let mut vals = vec![Fin(0); 6];
    for (x, v) in [(a, CoFin(0)), (b, CoFin(1)), (c, CoFin(2)), (d, Fin(3)), (e, CoFin(3)), (f, Fin(1))] {
        vals[x] = v;
    }
    assert!(is_ext_rpp(heap, &vals));
    let mut single = vals.clone();
    toggle_ext(heap, &mut single, e);
    assert_eq!(single[e], Fin(2));
    let mut out = vals.clone();
    toggle_fibre_ext(heap, &mut out, 1);
    let mut want = vals.clone();
    want[a] = CoFin(1);
    want[e] = Fin(2);
    assert_eq!(out, want);

    let split = split_for_rpp(&mh, &vals).unwrap();
    assert_eq!(split.filter(&mh).to_vec(), {
        let mut v = vec![d, f];
        v.sort();
        v
    });
    assert_eq!(rho_xi(&mh, &split).unwrap(), vals);
}

fn tog_ref_for(q: &DynkinQuiver, m: usize) {
    let q = q.clone();
    let mh = MinusculeHeap::new(&q, m).unwrap();
    let h = mh.zq().coxeter_number() as i64;
    let hearts: Vec<Heart> =
        Heart::all_in_window(&q, 0, h).into_iter().filter(|x| x.is_right_window(mh.zq())).collect();
    let mut filters: Vec<Bitset> = hearts.iter().map(|x| x.even_filter(&mh)).collect();
    filters.sort_by_key(|f| f.to_vec());
    filters.dedup();
    assert_eq!(filters.len(), mh.heap().filters().len(), "every filter comes from a heart");
    for f in mh.heap().filters() {
        assert_eq!(heart_for_filter(&mh, &f).unwrap().even_filter(&mh), f);
    }
    for heart in &hearts {
        for c in all_mults(mh.len(), 1) {
            let split = SplitObject::new(heart.clone(), c.clone());
            let vals = rho_xi(&mh, &split).unwrap();
            assert_eq!(vals, rho_xi_direct(&mh, &split).unwrap());
            assert_eq!(rho_xi(&mh, &split_for_rpp(&mh, &vals).unwrap()).unwrap(), vals);
            for i in heart.sources(&q) {
                let (h2, f2) = reflect_filter(&mh, heart, i, Direction::Left).unwrap();
                let after = rho_xi(&mh, &SplitObject::new(h2, c.clone())).unwrap();
                let mut toggled = vals.clone();
                toggle_fibre_ext(mh.heap(), &mut toggled, i);
                assert_eq!(after, toggled, "{} heart {:?} source {i}", q.describe(), heart.section());
                let fin = Bitset::from_elems(mh.len(), (0..mh.len()).filter(|&x| after[x].is_finite()));
                assert!(fin.is_subset(&f2));
            }
            let mut promoted = vals.clone();
            promotion_ext(mh.heap(), &mut promoted, &heart.sweep_order(&q));
            assert_eq!(rho_xi(&mh, &SplitObject::new(heart.tau(), c.clone())).unwrap(), promoted);
        }
    }
    assert_eq!(Heart::standard(q.rank()).sweep_order(&q), q.admissible_order());
}

#[test]
fn tog_ref_a2() {
    for q in DynkinQuiver::all_orientations(&DynkinDiagram::parse("A2").unwrap()) {
        for m in 0..2 {
            tog_ref_for(&q, m);
        }
    }
}

#[test]
fn tog_ref_a3() {
    for q in DynkinQuiver::all_orientations(&DynkinDiagram::parse("A3").unwrap()) {
        tog_ref_for(&q, 1);
    }
}

#[test]
fn split_round_trip_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, orient, m) in
        [("A3", "1<2>3", 1), ("A4", "1>2<3>4", 2), ("D4", "1<2>3,2<4", 0), ("D5", "1>2>3>4,3>5", 4)]
    {
        let mh = MinusculeHeap::new(&quiver(name, orient), m).unwrap();
        for _ in 0..60 {
            let vals = random_ext_rpp(mh.heap(), 3, &mut rng);
            let split = split_for_rpp(&mh, &vals).unwrap();
            assert_eq!(rho_xi(&mh, &split).unwrap(), vals);
            assert_eq!(rho_xi_direct(&mh, &split).unwrap(), vals);
        }
    }
}
