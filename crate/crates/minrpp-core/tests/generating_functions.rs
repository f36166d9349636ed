use std::collections::BTreeMap;

use minrpp_core::bijection::heart_for_filter;
use minrpp_core::rpp::rpps_up_to_sum;
use minrpp_core::{Bitset, DynkinDiagram, DynkinQuiver, MinusculeHeap};

type Series = BTreeMap<Vec<u64>, u64>;

const DEGREE: u64 = 8;

fn enumerated(mh: &MinusculeHeap, region: &Bitset) -> Series {
    let heap = mh.heap();
    let mut out = Series::new();
    for vals in rpps_up_to_sum(heap, region, DEGREE) {
        let mut w = vec![0u64; heap.rank()];
        for x in region.iter() {
            w[heap.fib(x)] += vals[x];
        }
        *out.entry(w).or_insert(0) += 1;
    }
    out
}

// Coefficients of the product of 1/(1 - q^d) over `dims`, by counting
// multiplicity vectors.
fn product(rank: usize, dims: &[Vec<u64>]) -> Series {
    let mut out = Series::new();
    fn go(k: usize, dims: &[Vec<u64>], acc: &mut Vec<u64>, out: &mut Series) {
        if k == dims.len() {
            *out.entry(acc.clone()).or_insert(0) += 1;
            return;
        }
        let size: u64 = dims[k].iter().sum();
        assert!(size > 0);
        let mut added = 0;
        loop {
            go(k + 1, dims, acc, out);
            if acc.iter().sum::<u64>() + size > DEGREE {
                break;
            }
            for (a, d) in acc.iter_mut().zip(&dims[k]) {
                *a += d;
            }
            added += 1;
        }
        for (a, d) in acc.iter_mut().zip(&dims[k]) {
            *a -= d * added;
        }
    }
    go(0, dims, &mut vec![0; rank], &mut out);
    out
}

fn to_u64(r: &[i64]) -> Vec<u64> {
    r.iter().map(|&x| u64::try_from(x).unwrap()).collect()
}

fn quiver(name: &str, orient: &str) -> DynkinQuiver {
    DynkinQuiver::parse(DynkinDiagram::parse(name).unwrap(), orient).unwrap()
}

#[test]
fn whole_heap_product_formula() {
    for (name, orient, m) in [("A3", "1>2<3", 1), ("A3", "1<2<3", 1), ("D4", "1<2>3,2<4", 0), ("D4", "1>2>3,2>4", 2)] {
        let mh = MinusculeHeap::new(&quiver(name, orient), m).unwrap();
        let dims: Vec<Vec<u64>> = (0..mh.len()).map(|x| to_u64(mh.root(x))).collect();
        let all = Bitset::full(mh.len());
        let lhs = enumerated(&mh, &all);
        assert!(lhs.values().sum::<u64>() >= 80);
        assert_eq!(lhs, product(mh.quiver().rank(), &dims), "{name} {orient}");
    }
}

#[test]
fn every_filter_product_formula() {
    for q in DynkinQuiver::all_orientations(&DynkinDiagram::parse("A3").unwrap()) {
        let mh = MinusculeHeap::new(&q, 1).unwrap();
        for f in mh.heap().filters() {
            let heart = heart_for_filter(&mh, &f).unwrap();
            let xi = heart.xi_dimension_vectors(&mh);
            let dims: Vec<Vec<u64>> = f.iter().map(|x| to_u64(xi[x].as_ref().expect("even"))).collect();
            assert_eq!(enumerated(&mh, &f), product(3, &dims), "{} {:?}", q.describe(), f.to_vec());
        }
    }
}
