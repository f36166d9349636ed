//! Verification suites behind `minrpp verify`.

use std::collections::BTreeMap;

use anyhow::{bail, ensure, Result};
use minrpp_core::bijection::{
    fibre_partitions, heart_for_filter, reflect_filter, rho, rho_inverse, rho_xi, split_for_rpp, Direction,
};
use minrpp_core::oracle::genjf::gen_jf_with_retry;
use minrpp_core::oracle::gk::{build_tilde_poset, gk_partition};
use minrpp_core::oracle::seeded_rng;
use minrpp_core::rpp::{
    orbit_len_ext, promotion_ext, promotion_order, promotion_order_ext, rpps_up_to_sum, toggle_fibre_ext, OrbitMode,
};
use minrpp_core::typea::{hillman_grassl, hooks_of_mults, rsk_rect, GridTransport, RimHookMultiset};
use minrpp_core::{Bitset, DynkinDiagram, DynkinQuiver, ExtValue, Family, Heart, MinusculeHeap, SplitObject};
use rand::Rng;
use serde_json::{json, Value};

use crate::config::OracleConfig;

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

impl Outcome {
    fn new(name: &str, passed: bool, detail: Value) -> Self {
        Outcome { name: name.into(), passed, detail }
    }

    pub fn to_json(&self) -> Value {
        json!({ "check": self.name, "passed": self.passed, "detail": self.detail })
    }
}

/// Every vector in `[0, max]^len`, in lexicographic order.
pub fn all_mults(len: usize, max: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out.into_iter().flat_map(|v| (0..=max).map(move |k| [v.clone(), vec![k]].concat())).collect();
    }
    out
}

pub fn random_mults<R: Rng + ?Sized>(len: usize, max: u64, rng: &mut R) -> Vec<u64> {
    (0..len).map(|_| if rng.gen_bool(0.4) { rng.gen_range(1..=max) } else { 0 }).collect()
}

pub fn axioms(mh: &MinusculeHeap) -> Outcome {
    let report = mh.verify();
    let iso = mh.iso_type();
    let mut detail: BTreeMap<String, Value> =
        report.entries().iter().map(|&(k, v)| (k.to_string(), json!(v))).collect();
    detail.insert("size".into(), json!(mh.len()));
    detail.insert("iso_type".into(), iso.as_ref().map_or_else(|e| json!(e.to_string()), |t| json!(t.to_string())));
    Outcome::new("axioms", report.all_pass() && iso.is_ok(), json!(detail))
}

/// Least common period of promotion on `[0, bound]` fillings; passes when it divides `h`.
pub fn periodicity(mh: &MinusculeHeap, bound: u64, mode: OrbitMode) -> Outcome {
    let h = mh.zq().coxeter_number() as u64;
    let order = mh.quiver().admissible_order();
    let k = promotion_order(mh.heap(), order, bound, mode, 4 * h);
    let tested = match mode {
        OrbitMode::Exhaustive => json!("all"),
        OrbitMode::Sampled { count, .. } => json!(count),
    };
    Outcome::new(
        "periodicity",
        k.is_some_and(|k| h.is_multiple_of(k)),
        json!({ "N": bound, "h": h, "order": k, "fillings": tested }),
    )
}

/// Promotion on extended fillings, and the orbit of `ρ(S_m)`.
pub fn periodicity_extended(mh: &MinusculeHeap, count: usize, seed: u64) -> Outcome {
    let h = mh.zq().coxeter_number() as u64;
    let order = mh.quiver().admissible_order();
    let k = promotion_order_ext(mh.heap(), order, count, seed, 4 * h);
    let d = mh.quiver().diagram();
    let mut c = vec![0; mh.len()];
    let witness = match mh.find_root(&d.simple_root(mh.m())) {
        Some(x) => {
            c[x] = 1;
            let vals: Vec<ExtValue> =
                rho(mh, &c).map(|v| v.into_iter().map(ExtValue::Fin).collect()).unwrap_or_default();
            orbit_len_ext(mh.heap(), &vals, order, 4 * h)
        }
        None => None,
    };
    Outcome::new(
        "periodicity-extended",
        k.is_some_and(|k| h.is_multiple_of(k)) && witness == Some(h),
        json!({ "h": h, "order": k, "witness_orbit": witness, "fillings": count }),
    )
}

/// `gen_jf` against the fibre partitions of `ρ` on random multiplicity vectors.
pub fn oracle(mh: &MinusculeHeap, cfg: &OracleConfig, cases: usize, max_mult: u64) -> Result<Outcome> {
    let mut rng = seeded_rng(cfg.seed);
    let mut mismatches = Vec::new();
    let mut retried = 0;
    for k in 0..cases {
        let c = random_mults(mh.len(), max_mult, &mut rng);
        let want = fibre_partitions(mh, &rho(mh, &c)?);
        let summands: Vec<_> = (0..mh.len()).filter(|&x| c[x] > 0).map(|x| (mh.root(x).clone(), c[x])).collect();
        let g = gen_jf_with_retry(mh.quiver(), &summands, cfg.samples, cfg.prime, cfg.seed.wrapping_add(k as u64))?;
        if g.prime != cfg.prime {
            retried += 1;
        }
        if g.jf != want {
            mismatches.push(crate::format::mults_json(mh, &c));
        }
    }
    Ok(Outcome::new(
        "oracle",
        mismatches.is_empty(),
        json!({ "cases": cases, "prime": cfg.prime, "samples": cfg.samples, "retried": retried, "mismatches": mismatches }),
    ))
}

/// The type A quiver on which `ρ` is computed by Hillman–Grassl.
pub fn hg_quiver(rank: usize) -> Result<DynkinQuiver> {
    let d = DynkinDiagram::new(Family::A, rank)?;
    let arrows = (0..rank.saturating_sub(1)).map(|i| (i + 1, i)).collect();
    Ok(DynkinQuiver::new(d, arrows)?)
}

/// The type A quiver with every arrow pointing towards `m`, where `ρ` is
/// computed by RSK.
pub fn rsk_quiver(rank: usize, m: usize) -> Result<DynkinQuiver> {
    let d = DynkinDiagram::new(Family::A, rank)?;
    let arrows = (0..rank.saturating_sub(1)).map(|i| if i < m { (i, i + 1) } else { (i + 1, i) }).collect();
    Ok(DynkinQuiver::new(d, arrows)?)
}

fn grid_check(
    name: &str,
    mh: &MinusculeHeap,
    max_mult: u64,
    f: fn(&RimHookMultiset) -> Vec<Vec<u64>>,
) -> Result<Outcome> {
    let t = GridTransport::new(mh)?;
    let mut failures = Vec::new();
    let all = all_mults(mh.len(), max_mult);
    for c in &all {
        let grid = t.to_grid(&rho(mh, c)?);
        if f(&hooks_of_mults(mh, c)?) != grid {
            failures.push(crate::format::mults_json(mh, c));
        }
    }
    Ok(Outcome::new(
        name,
        failures.is_empty(),
        json!({ "rows": t.rows, "cols": t.cols, "cases": all.len(), "failures": failures }),
    ))
}

/// Hillman–Grassl against `ρ` for every multiplicity vector in `[0, max]`.
pub fn hg(rank: usize, m: usize, max_mult: u64) -> Result<Outcome> {
    let mh = MinusculeHeap::new(&hg_quiver(rank)?, m)?;
    grid_check("hg", &mh, max_mult, hillman_grassl)
}

pub fn rsk(rank: usize, m: usize, max_mult: u64) -> Result<Outcome> {
    let mh = MinusculeHeap::new(&rsk_quiver(rank, m)?, m)?;
    grid_check("rsk", &mh, max_mult, rsk_rect)
}

/// Greene–Kleitman partitions of the blown-up posets against `ρ`, for every
/// vertex and every multiplicity vector in `[0, max]`.
pub fn gk(mh: &MinusculeHeap, max_mult: u64) -> Result<Outcome> {
    ensure!(mh.quiver().diagram().family() == Family::A, "the Greene–Kleitman check is only available in type A");
    let mut failures = Vec::new();
    let all = all_mults(mh.len(), max_mult);
    for c in &all {
        let nu = fibre_partitions(mh, &rho(mh, c)?);
        for i in 0..mh.quiver().rank() {
            let p = build_tilde_poset(mh, c, i)?;
            if gk_partition(&p, 64)? != nu[i] {
                failures.push(json!({ "mults": crate::format::mults_json(mh, c), "vertex": i + 1 }));
            }
        }
    }
    Ok(Outcome::new("gk", failures.is_empty(), json!({ "cases": all.len(), "failures": failures })))
}

type Series = BTreeMap<Vec<u64>, u64>;

fn enumerated(mh: &MinusculeHeap, region: &Bitset, degree: u64) -> Series {
    let heap = mh.heap();
    let mut out = Series::new();
    for vals in rpps_up_to_sum(heap, region, degree) {
        let mut w = vec![0u64; heap.rank()];
        for x in region.iter() {
            w[heap.fib(x)] += vals[x];
        }
        *out.entry(w).or_insert(0) += 1;
    }
    out
}

/// Coefficients of `∏ 1/(1 − q^d)` up to total degree `degree`.
fn product(rank: usize, dims: &[Vec<u64>], degree: u64) -> Series {
    let mut series = Series::new();
    series.insert(vec![0; rank], 1);
    for d in dims {
        let size: u64 = d.iter().sum();
        let mut next = Series::new();
        for (w, &coef) in &series {
            let mut cur = w.clone();
            let mut total: u64 = cur.iter().sum();
            loop {
                *next.entry(cur.clone()).or_insert(0) += coef;
                total += size;
                if size == 0 || total > degree {
                    break;
                }
                for (a, b) in cur.iter_mut().zip(d) {
                    *a += b;
                }
            }
        }
        series = next;
    }
    series
}

fn to_u64(r: &[i64]) -> Vec<u64> {
    r.iter().map(|&x| x.max(0) as u64).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FilterChoice {
    Whole,
    Every,
    Given(Bitset),
}

/// Weighted count of reverse plane partitions on an order filter against
/// the product over the dimension vectors of the even indecomposables.
pub fn genfun(mh: &MinusculeHeap, degree: u64, choice: &FilterChoice) -> Result<Outcome> {
    let filters = match choice {
        FilterChoice::Whole => vec![Bitset::full(mh.len())],
        FilterChoice::Every => mh.heap().filters(),
        FilterChoice::Given(f) => {
            ensure!(mh.heap().is_filter(f), "the given set is not an order filter");
            vec![f.clone()]
        }
    };
    let rank = mh.quiver().rank();
    let mut failures = Vec::new();
    let mut coefficients = 0usize;
    for f in &filters {
        let dims: Vec<Vec<u64>> = if f.count() == mh.len() {
            (0..mh.len()).map(|x| to_u64(mh.root(x))).collect()
        } else {
            let heart = heart_for_filter(mh, f)?;
            let xi = heart.xi_dimension_vectors(mh);
            f.iter()
                .map(|x| xi[x].as_deref().map(to_u64).ok_or_else(|| anyhow::anyhow!("element {x} is not even")))
                .collect::<Result<_>>()?
        };
        let lhs = enumerated(mh, f, degree);
        coefficients += lhs.len();
        if lhs != product(rank, &dims, degree) {
            failures.push(json!(f.iter().map(|x| mh.root_name(x)).collect::<Vec<_>>()));
        }
    }
    Ok(Outcome::new(
        "genfun",
        failures.is_empty(),
        json!({ "degree": degree, "filters": filters.len(), "coefficients": coefficients, "failures": failures }),
    ))
}

/// Reflecting a heart at a source toggles the matching fibre of `ρ^Ξ`, and
/// a full sweep is promotion.
pub fn togref(mh: &MinusculeHeap, max_mult: u64) -> Result<Outcome> {
    let q = mh.quiver().clone();
    let h = mh.zq().coxeter_number() as i64;
    let hearts: Vec<Heart> =
        Heart::all_in_window(&q, 0, h).into_iter().filter(|x| x.is_right_window(mh.zq())).collect();
    let mut filters: Vec<Bitset> = hearts.iter().map(|x| x.even_filter(mh)).collect();
    filters.sort_by_key(|f| f.to_vec());
    filters.dedup();
    let all_filters = mh.heap().filters().len();
    let mut failures = Vec::new();
    let mut reflections = 0usize;
    let mults = all_mults(mh.len(), max_mult);
    for heart in &hearts {
        for c in &mults {
            let split = SplitObject::new(heart.clone(), c.clone());
            let vals = rho_xi(mh, &split)?;
            if rho_xi(mh, &split_for_rpp(mh, &vals)?)? != vals {
                failures.push(json!({ "heart": heart.section(), "step": "split" }));
            }
            for i in heart.sources(&q) {
                let (h2, _) = reflect_filter(mh, heart, i, Direction::Left)?;
                let after = rho_xi(mh, &SplitObject::new(h2, c.clone()))?;
                let mut toggled = vals.clone();
                toggle_fibre_ext(mh.heap(), &mut toggled, i);
                reflections += 1;
                if after != toggled {
                    failures.push(json!({ "heart": heart.section(), "source": i + 1 }));
                }
            }
            let mut promoted = vals.clone();
            promotion_ext(mh.heap(), &mut promoted, &heart.sweep_order(&q));
            if rho_xi(mh, &SplitObject::new(heart.tau(), c.clone()))? != promoted {
                failures.push(json!({ "heart": heart.section(), "step": "sweep" }));
            }
        }
    }
    Ok(Outcome::new(
        "togref",
        failures.is_empty() && filters.len() == all_filters,
        json!({
            "hearts": hearts.len(),
            "filters_realised": filters.len(),
            "filters": all_filters,
            "objects": mults.len(),
            "reflections": reflections,
            "failures": failures,
        }),
    ))
}

/// `ρ⁻¹ ∘ ρ` is the identity and `ρ` is injective on `[0, max]` vectors.
pub fn round_trip(mh: &MinusculeHeap, max_mult: u64) -> Result<Outcome> {
    let mut seen = std::collections::BTreeSet::new();
    let all = all_mults(mh.len(), max_mult);
    let mut failures = 0usize;
    for c in &all {
        let vals = rho(mh, c)?;
        if rho_inverse(mh, &vals)? != *c || !seen.insert(vals) {
            failures += 1;
        }
    }
    Ok(Outcome::new("round-trip", failures == 0, json!({ "cases": all.len(), "failures": failures })))
}

pub fn parse_filter(mh: &MinusculeHeap, text: &str) -> Result<FilterChoice> {
    match text.trim() {
        "whole" | "all" | "" => Ok(FilterChoice::Whole),
        "every" => Ok(FilterChoice::Every),
        list => {
            let mut b = Bitset::new(mh.len());
            for id in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                match mh.element_by_name(id) {
                    Some(x) => b.insert(x),
                    None => bail!("unknown element {id:?}"),
                }
            }
            Ok(FilterChoice::Given(b))
        }
    }
}
