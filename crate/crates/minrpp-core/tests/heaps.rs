use minrpp_core::heap::{isomorphism, Heap, IsoType, Poset};
use minrpp_core::{Bitset, DynkinDiagram, DynkinQuiver, Family, MinusculeHeap};

fn quiver(name: &str, orient: &str) -> DynkinQuiver {
    DynkinQuiver::parse(DynkinDiagram::parse(name).unwrap(), orient).unwrap()
}

// Order ideals under inclusion, computed by brute force over subsets.
fn brute_j(p: &Poset) -> Poset {
    let n = p.len();
    assert!(n <= 20);
    let ideals: Vec<u32> = (0u32..1 << n)
        .filter(|&s| (0..n).all(|y| s >> y & 1 == 0 || (0..n).all(|x| !p.lt(x, y) || s >> x & 1 == 1)))
        .collect();
    let mut rel = Vec::new();
    for (a, &s) in ideals.iter().enumerate() {
        for (b, &t) in ideals.iter().enumerate() {
            if s != t && s & t == s {
                rel.push((a, b));
            }
        }
    }
    Poset::from_relations(ideals.len(), &rel).unwrap()
}

fn brute_grid(a: usize, b: usize) -> Poset {
    let mut rel = Vec::new();
    for x in 0..a * b {
        for y in 0..a * b {
            if x != y && x / b <= y / b && x % b <= y % b {
                rel.push((x, y));
            }
        }
    }
    Poset::from_relations(a * b, &rel).unwrap()
}

fn table_one(family: Family, n: usize, m: usize) -> Poset {
    let label = m + 1;
    let iterate = |k: usize, p: Poset| (0..k).fold(p, |p, _| brute_j(&p));
    match family {
        Family::A => brute_grid(label, n + 1 - label),
        Family::D if label == 1 => iterate(n - 3, brute_grid(2, 2)),
        Family::D => iterate(1, brute_grid(2, n - 2)),
        Family::E => iterate(n - 4, brute_grid(2, 3)),
    }
}

fn every_case() -> Vec<(String, usize)> {
    let mut out = Vec::new();
    for n in 1..=7 {
        out.push(format!("A{n}"));
    }
    for n in 4..=7 {
        out.push(format!("D{n}"));
    }
    out.push("E6".into());
    out.push("E7".into());
    out.into_iter()
        .flat_map(|name| {
            let d = DynkinDiagram::parse(&name).unwrap();
            d.minuscule_vertices().into_iter().map(move |m| (name.clone(), m))
        })
        .collect()
}

#[test]
fn axioms_and_table_one_for_every_minuscule_vertex() {
    for (name, m) in every_case() {
        let d = DynkinDiagram::parse(&name).unwrap();
        let q = DynkinQuiver::standard(d.clone());
        let mh = MinusculeHeap::new(&q, m).unwrap();
        let report = mh.verify();
        assert!(report.all_pass(), "{name} m={}: {:?}", m + 1, report.entries());
        let want = table_one(d.family(), d.rank(), m);
        assert!(mh.heap().poset().is_isomorphic(&want), "{name} m={}", m + 1);
        let t = mh.iso_type().unwrap();
        assert_eq!(Some(t), IsoType::for_vertex(d.family(), d.rank(), m));
        assert!(t.build().is_isomorphic(&want));
        for x in 0..mh.len() {
            assert_eq!(mh.root(x)[m], 1);
        }
    }
}

#[test]
fn sizes() {
    let size = |name: &str, m: usize| {
        MinusculeHeap::new(&DynkinQuiver::standard(DynkinDiagram::parse(name).unwrap()), m - 1).unwrap().len()
    };
    assert_eq!(size("A4", 3), 6);
    assert_eq!(size("D5", 4), 10);
    assert_eq!(size("E6", 1), 16);
    assert_eq!(size("E7", 6), 27);
    let t = |name: &str, m: usize| {
        let d = DynkinDiagram::parse(name).unwrap();
        IsoType::for_vertex(d.family(), d.rank(), m - 1).unwrap().to_string()
    };
    assert_eq!(t("A4", 3), "[3]x[2]");
    assert_eq!(t("D5", 4), "J([2]x[3])");
    assert_eq!(t("E7", 6), "J^3([2]x[3])");
}

#[test]
fn non_minuscule_vertices_are_rejected() {
    assert!(MinusculeHeap::new(&quiver("D4", "1>2<3,2<4"), 1).is_err());
    assert!(MinusculeHeap::new(&DynkinQuiver::standard(DynkinDiagram::parse("E6").unwrap()), 2).is_err());
    assert!(MinusculeHeap::new(&quiver("D4", "1>2<3,2<4"), 0).is_ok());
}

#[test]
fn diamond() {
    let mh = MinusculeHeap::new(&quiver("A3", "1>2<3"), 1).unwrap();
    let heap = mh.heap();
    assert_eq!(heap.len(), 4);
    assert_eq!((heap.fibre(0).len(), heap.fibre(1).len(), heap.fibre(2).len()), (1, 2, 1));
    let f = heap.fibre(1);
    assert!(heap.lt(f[0], f[1]));
    assert!(heap.lt(f[0], heap.fibre(0)[0]) && heap.lt(heap.fibre(2)[0], f[1]));
    assert!(!heap.poset().comparable(heap.fibre(0)[0], heap.fibre(2)[0]));
    assert_eq!(mh.root_name(f[0]), "010");
    assert_eq!(mh.root_name(f[1]), "111");
    let ant = mh.ant();
    assert_eq!(ant[heap.fibre(0)[0]], heap.fibre(2)[0]);
    assert_eq!(ant[f[0]], f[1]);
}

#[test]
fn antiautomorphism() {
    for (name, m) in every_case() {
        let d = DynkinDiagram::parse(&name).unwrap();
        let mh = MinusculeHeap::new(&DynkinQuiver::standard(d.clone()), m).unwrap();
        let heap = mh.heap();
        let ant = mh.ant();
        let psi = d.psi();
        for x in 0..mh.len() {
            assert_eq!(ant[ant[x]], x);
            assert_eq!(heap.fib(ant[x]), psi[heap.fib(x)]);
        }
        for (x, y) in heap.covers() {
            assert!(heap.upper_covers(ant[y]).contains(&ant[x]));
        }
    }
    let one = MinusculeHeap::new(&DynkinQuiver::standard(DynkinDiagram::parse("A1").unwrap()), 0).unwrap();
    assert_eq!(one.ant(), vec![0]);
}

#[test]
fn orientation_independence() {
    for name in ["A2", "A3", "A4", "A5", "D4", "D5"] {
        let d = DynkinDiagram::parse(name).unwrap();
        for m in d.minuscule_vertices() {
            let base = MinusculeHeap::new(&DynkinQuiver::standard(d.clone()), m).unwrap();
            for q in DynkinQuiver::all_orientations(&d) {
                let mh = MinusculeHeap::new(&q, m).unwrap();
                assert!(mh.heap().labelled_isomorphism(base.heap()).is_some(), "{} m={}", q.describe(), m + 1);
            }
        }
    }
}

#[test]
fn intervals_are_two_neighbourly_heaps() {
    for (name, orient, m) in [("A4", "1>2<3>4", 1), ("D5", "1>2>3>4,3>5", 0), ("E6", "1>2>3>4>5,3>6", 0)] {
        let mh = MinusculeHeap::new(&quiver(name, orient), m).unwrap();
        let heap = mh.heap();
        for x in 0..heap.len() {
            for y in 0..heap.len() {
                if heap.le(x, y) {
                    let (sub, _) = heap.interval(x, y);
                    let r = sub.verify();
                    assert!(r.h1 && r.h2 && r.h3 && r.two_neighbourly, "{name} [{x},{y}]");
                }
            }
        }
    }
}

#[test]
fn mutations_are_detected() {
    let mh = MinusculeHeap::new(&quiver("A4", "1<2<3<4"), 1).unwrap();
    let heap = mh.heap();
    let graph = heap.graph().to_vec();
    let fib = heap.fib_map().to_vec();
    for drop in 0..heap.covers().len() {
        let mut covers = heap.covers();
        covers.remove(drop);
        let broken = Heap::from_parts(graph.clone(), fib.clone(), heap.poset().clone(), &covers);
        assert!(!broken.verify().h3);
    }
    let top = (0..heap.len()).find(|&x| heap.upper_covers(x).is_empty()).unwrap();
    let rest: Vec<usize> = (0..heap.len()).filter(|&x| x != top).collect();
    let (cut, _) = heap.restrict(&rest);
    assert!(!cut.verify().converse);
    assert!(cut.verify().two_neighbourly);
}

#[test]
fn filters_and_ideals() {
    let mh = MinusculeHeap::new(&quiver("A3", "1>2<3"), 1).unwrap();
    let heap = mh.heap();
    let filters = heap.filters();
    assert_eq!(filters.len(), 6);
    for f in &filters {
        assert!(heap.is_filter(f));
        assert!(heap.is_ideal(&f.complement()));
    }
    assert!(!heap.is_filter(&Bitset::from_elems(4, [heap.fibre(1)[0]])));
}

#[test]
fn labelled_isomorphism_respects_labels() {
    let p = brute_grid(2, 2);
    let swapped = [0usize, 2, 1, 3];
    assert!(isomorphism(&p, Some(&[0, 1, 2, 1]), &p, Some(&[0, 2, 1, 1])).is_some());
    assert!(isomorphism(&p, Some(&[0, 1, 2, 1]), &p, Some(&swapped)).is_none());
}
