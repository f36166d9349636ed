//! JSON and DOT encodings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::{anyhow, bail, ensure, Context, Result};
use minrpp_core::typea::Grid;
use minrpp_core::{ArQuiver, DynkinDiagram, DynkinQuiver, ExtValue, Family, MinusculeHeap, PartitionTuple};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub family: String,
    pub rank: usize,
    /// `[s, t]` is an arrow `s → t`, 1-based.
    pub arrows: Vec<[usize; 2]>,
}

pub fn quiver_to_json(q: &DynkinQuiver) -> QuiverJson {
    QuiverJson {
        family: q.diagram().family().to_string(),
        rank: q.rank(),
        arrows: q.arrows().iter().map(|&(a, b)| [a + 1, b + 1]).collect(),
    }
}

pub fn quiver_from_json(j: &QuiverJson) -> Result<DynkinQuiver> {
    let family = match j.family.as_str() {
        "A" | "a" => Family::A,
        "D" | "d" => Family::D,
        "E" | "e" => Family::E,
        other => bail!("unknown family {other:?}"),
    };
    let d = DynkinDiagram::new(family, j.rank)?;
    let mut arrows = Vec::with_capacity(j.arrows.len());
    for &[s, t] in &j.arrows {
        ensure!(s >= 1 && t >= 1, "vertex labels start at 1");
        arrows.push((s - 1, t - 1));
    }
    Ok(DynkinQuiver::new(d, arrows)?)
}

/// Reads `text` as inline JSON if it starts with `{` or `[`, else as a path.
pub fn read_json(text: &str) -> Result<Value> {
    let t = text.trim_start();
    let src = if t.starts_with('{') || t.starts_with('[') {
        text.to_string()
    } else {
        std::fs::read_to_string(text).with_context(|| format!("reading {text}"))?
    };
    serde_json::from_str(&src).context("parsing JSON")
}

pub fn heap_json(mh: &MinusculeHeap) -> Value {
    let heap = mh.heap();
    let ids: Vec<String> = (0..mh.len()).map(|x| mh.root_name(x)).collect();
    let covers: Vec<[&str; 2]> = heap.covers().into_iter().map(|(x, y)| [ids[x].as_str(), ids[y].as_str()]).collect();
    let pi: BTreeMap<&str, usize> = (0..mh.len()).map(|x| (ids[x].as_str(), heap.fib(x) + 1)).collect();
    json!({
        "quiver": quiver_to_json(mh.quiver()),
        "m": mh.m() + 1,
        "elements": ids,
        "covers": covers,
        "pi": pi,
    })
}

/// Rebuilds the heap from its JSON, checking the listed elements and covers.
pub fn heap_from_json(v: &Value) -> Result<MinusculeHeap> {
    let q: QuiverJson = serde_json::from_value(v.get("quiver").cloned().ok_or_else(|| anyhow!("heap has no quiver"))?)?;
    let q = quiver_from_json(&q)?;
    let m = v.get("m").and_then(Value::as_u64).ok_or_else(|| anyhow!("heap has no m"))? as usize;
    ensure!(m >= 1, "vertex labels start at 1");
    let mh = MinusculeHeap::new(&q, m - 1)?;
    let canonical = heap_json(&mh);
    for key in ["elements", "covers", "pi"] {
        if let Some(given) = v.get(key) {
            ensure!(*given == canonical[key], "heap field {key:?} does not match the quiver");
        }
    }
    Ok(mh)
}

fn value_json(v: ExtValue) -> Value {
    match v {
        ExtValue::Fin(k) => json!(k),
        ExtValue::CoFin(k) => json!({ "cofin": k }),
    }
}

/// `N` is `None` for extended fillings.
pub fn filling_json(mh: &MinusculeHeap, vals: &[ExtValue], n: Option<u64>) -> Value {
    let values: Map<String, Value> = (0..mh.len()).map(|x| (mh.root_name(x), value_json(vals[x]))).collect();
    let mut out = json!({
        "heap": heap_json(mh),
        "N": n.map_or(json!("extended"), |n| json!(n)),
        "values": values,
    });
    if vals.iter().all(|v| v.is_finite()) {
        let fin: Vec<u64> = vals.iter().map(|v| v.restrict(0).unwrap_or(0)).collect();
        out["partitions"] = partitions_json(&minrpp_core::bijection::fibre_partitions(mh, &fin));
    }
    out
}

pub fn finite_filling_json(mh: &MinusculeHeap, vals: &[u64], n: Option<u64>) -> Value {
    let n = n.unwrap_or_else(|| vals.iter().copied().max().unwrap_or(0));
    let ext: Vec<ExtValue> = vals.iter().map(|&v| ExtValue::Fin(v)).collect();
    filling_json(mh, &ext, Some(n))
}

#[derive(Clone, Debug)]
pub struct Filling {
    pub heap: MinusculeHeap,
    pub n: Option<u64>,
    pub values: Vec<ExtValue>,
}

impl Filling {
    pub fn finite(&self) -> Result<Vec<u64>> {
        self.values
            .iter()
            .map(|v| match *v {
                ExtValue::Fin(k) => Ok(k),
                ExtValue::CoFin(_) => Err(anyhow!("filling has entries of the form ∞ − k")),
            })
            .collect()
    }
}

pub fn filling_from_json(v: &Value) -> Result<Filling> {
    let heap = heap_from_json(v.get("heap").ok_or_else(|| anyhow!("filling has no heap"))?)?;
    let n = match v.get("N") {
        None => None,
        Some(Value::String(s)) if s == "extended" => None,
        Some(x) => Some(x.as_u64().ok_or_else(|| anyhow!("N must be a number or \"extended\""))?),
    };
    let obj = v.get("values").and_then(Value::as_object).ok_or_else(|| anyhow!("filling has no values"))?;
    ensure!(obj.len() == heap.len(), "expected {} values, got {}", heap.len(), obj.len());
    let mut values = vec![ExtValue::ZERO; heap.len()];
    for (id, val) in obj {
        let x = heap.element_by_name(id).ok_or_else(|| anyhow!("unknown element {id:?}"))?;
        values[x] = if let Some(k) = val.as_u64() {
            ExtValue::Fin(k)
        } else if let Some(k) = val.get("cofin").and_then(Value::as_u64) {
            ExtValue::CoFin(k)
        } else {
            bail!("bad value for {id:?}: {val}");
        };
    }
    Ok(Filling { heap, n, values })
}

pub fn mults_json(mh: &MinusculeHeap, c: &[u64]) -> Value {
    let m: Map<String, Value> = (0..mh.len()).filter(|&x| c[x] > 0).map(|x| (mh.root_name(x), json!(c[x]))).collect();
    Value::Object(m)
}

/// Multiplicities keyed by dimension-vector strings; absent keys are zero.
pub fn mults_from_json(mh: &MinusculeHeap, v: &Value) -> Result<Vec<u64>> {
    let obj = v.as_object().ok_or_else(|| anyhow!("multiplicities must be a JSON object"))?;
    let mut c = vec![0; mh.len()];
    for (id, k) in obj {
        let x = mh.element_by_name(id).ok_or_else(|| anyhow!("{id:?} is not a summand supported at m"))?;
        c[x] = k.as_u64().ok_or_else(|| anyhow!("multiplicity of {id:?} must be a non-negative integer"))?;
    }
    Ok(c)
}

pub fn partitions_json(nu: &PartitionTuple) -> Value {
    json!(nu.iter().map(|p| p.parts().to_vec()).collect::<Vec<_>>())
}

pub fn grid_json(g: &Grid) -> Value {
    json!(g)
}

pub fn grid_from_json(v: &Value) -> Result<Grid> {
    Ok(serde_json::from_value(v.clone())?)
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// The heap drawn left to right, smaller elements on the left.
pub fn heap_dot(mh: &MinusculeHeap, labels: Option<&[String]>) -> String {
    let heap = mh.heap();
    let mut s = String::from("digraph heap {\n  rankdir=LR;\n  node [shape=box];\n");
    for x in 0..mh.len() {
        let name = mh.root_name(x);
        let mut label = format!("{name}\\nπ={}", heap.fib(x) + 1);
        if let Some(l) = labels {
            let _ = write!(label, "\\n{}", dot_escape(&l[x]));
        }
        let _ = writeln!(s, "  \"{name}\" [label=\"{label}\"];");
    }
    for (x, y) in heap.covers() {
        let _ = writeln!(s, "  \"{}\" -> \"{}\";", mh.root_name(x), mh.root_name(y));
    }
    s.push_str("}\n");
    s
}

pub fn ar_quiver_dot(ar: &ArQuiver) -> String {
    let mut s = String::from("digraph ar {\n  rankdir=LR;\n");
    for v in 0..ar.len() {
        let name = minrpp_core::heap::root_string(ar.root(v));
        let _ = writeln!(s, "  v{v} [label=\"{name}\\nπ={}\"];", ar.pi(v) + 1);
    }
    for &(a, b) in ar.arrows() {
        let _ = writeln!(s, "  v{a} -> v{b};");
    }
    s.push_str("}\n");
    s
}

pub fn ext_label(v: ExtValue) -> String {
    match v {
        ExtValue::Fin(k) => k.to_string(),
        ExtValue::CoFin(0) => "∞".into(),
        ExtValue::CoFin(k) => format!("∞-{k}"),
    }
}
