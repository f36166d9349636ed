use std::io::Read;
use std::process::ExitCode;

use anyhow::{anyhow, bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use minrpp::config::OracleConfig;
use minrpp::format::{self, Filling};
use minrpp::verify::{self, Outcome};
use minrpp_core::bijection::{heart_for_filter, rho, rho_inverse, split_for_rpp, SplitObject};
use minrpp_core::heap::root_string;
use minrpp_core::rpp::{
    check_rpp, promotion, promotion_ext, toggle, toggle_ext, toggle_fibre, toggle_fibre_ext, OrbitMode,
};
use minrpp_core::{ArQuiver, DynkinDiagram, DynkinQuiver, MinusculeHeap};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "minrpp",
    version,
    about = "Minuscule heaps, reverse plane partitions and the representations they encode"
)]
struct Cli {
    /// Compact single-line JSON instead of pretty-printed.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Default)]
struct QuiverArgs {
    /// Dynkin type, e.g. A5, D4, E6.
    #[arg(long = "type")]
    ty: Option<String>,
    /// Orientation such as "1<2>3" or "1>2,3>2"; defaults to the standard one.
    #[arg(long)]
    orient: Option<String>,
    /// Quiver JSON, inline or a file path.
    #[arg(long)]
    quiver: Option<String>,
    /// Minuscule vertex, 1-based.
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Args, Clone)]
struct FillingArg {
    /// Filling JSON, inline, a file path, or `-` for standard input.
    #[arg(long)]
    filling: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// The minuscule heap of a quiver.
    Heap {
        #[command(flatten)]
        q: QuiverArgs,
        #[arg(long)]
        dot: bool,
    },
    /// Positive roots and the Auslander–Reiten quiver.
    Roots {
        #[command(flatten)]
        q: QuiverArgs,
        #[arg(long)]
        dot: bool,
    },
    /// Identifies the heap among the known minuscule posets.
    IsoType {
        #[command(flatten)]
        q: QuiverArgs,
    },
    /// Reverse plane partition of a multiplicity vector.
    Rho {
        #[command(flatten)]
        q: QuiverArgs,
        /// JSON object keyed by dimension vectors, e.g. '{"010":1}'.
        #[arg(long)]
        mults: String,
        #[arg(long)]
        dot: bool,
    },
    /// Multiplicity vector of a reverse plane partition.
    Inv {
        #[command(flatten)]
        f: FillingArg,
    },
    /// Applies promotion.
    Promote {
        #[command(flatten)]
        f: FillingArg,
        #[arg(long, default_value_t = 1)]
        times: u64,
        /// Upper bound for finite fillings; defaults to the filling's own N.
        #[arg(long = "N")]
        n: Option<u64>,
    },
    /// Toggles one fibre or one element.
    Toggle {
        #[command(flatten)]
        f: FillingArg,
        /// Vertex whose fibre is toggled, 1-based.
        #[arg(long, conflicts_with = "element")]
        vertex: Option<usize>,
        /// Element id (its dimension vector).
        #[arg(long)]
        element: Option<String>,
        #[arg(long = "N")]
        n: Option<u64>,
    },
    /// Splits an extended filling into a heart and an object of it, or
    /// finds the heart of an order filter.
    Split {
        #[arg(long)]
        filling: Option<String>,
        #[command(flatten)]
        q: QuiverArgs,
        /// Comma-separated element ids forming an order filter.
        #[arg(long)]
        filter: Option<String>,
    },
    /// Runs a verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Axioms,
    Periodicity,
    Oracle,
    Hg,
    Rsk,
    Gk,
    Genfun,
    Togref,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[command(flatten)]
    q: QuiverArgs,
    /// Entry bound, or `extended`.
    #[arg(long = "N")]
    n: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Samples per generic Jordan form.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    prime: Option<u64>,
    /// Number of random cases or fillings; exhaustive when absent where possible.
    #[arg(long)]
    count: Option<usize>,
    /// Largest multiplicity in exhaustive sweeps.
    #[arg(long)]
    max_mult: Option<u64>,
    #[arg(long, default_value_t = 8)]
    degree: u64,
    /// `whole`, `every`, or comma-separated element ids.
    #[arg(long, default_value = "whole")]
    filter: String,
}

fn read_text(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(arg.to_string())
    }
}

impl QuiverArgs {
    fn quiver(&self) -> Result<DynkinQuiver> {
        if let Some(q) = &self.quiver {
            ensure!(self.ty.is_none() && self.orient.is_none(), "--quiver cannot be combined with --type or --orient");
            let j: format::QuiverJson = serde_json::from_value(format::read_json(&read_text(q)?)?)?;
            return format::quiver_from_json(&j);
        }
        let ty = self.ty.as_deref().ok_or_else(|| anyhow!("give --type or --quiver"))?;
        let d = DynkinDiagram::parse(ty)?;
        Ok(match &self.orient {
            Some(o) => DynkinQuiver::parse(d, o)?,
            None => DynkinQuiver::standard(d),
        })
    }

    fn m(&self, q: &DynkinQuiver) -> Result<usize> {
        let m = self.m.ok_or_else(|| anyhow!("give --m"))?;
        ensure!(m >= 1 && m <= q.rank(), "--m must be between 1 and {}", q.rank());
        Ok(m - 1)
    }

    fn heap(&self) -> Result<MinusculeHeap> {
        let q = self.quiver()?;
        let m = self.m(&q)?;
        Ok(MinusculeHeap::new(&q, m)?)
    }
}

fn read_filling(arg: &str) -> Result<Filling> {
    format::filling_from_json(&format::read_json(&read_text(arg)?)?)
}

enum Output {
    Json(Value),
    Text(String),
    Verdict(Vec<Outcome>),
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.cmd {
        Cmd::Heap { q, dot } => {
            let mh = q.heap()?;
            Ok(if *dot { Output::Text(format::heap_dot(&mh, None)) } else { Output::Json(format::heap_json(&mh)) })
        }
        Cmd::Roots { q, dot } => {
            let quiver = q.quiver()?;
            let ar = ArQuiver::new(&quiver);
            if *dot {
                return Ok(Output::Text(format::ar_quiver_dot(&ar)));
            }
            let d = quiver.diagram();
            let roots: Vec<Value> = (0..ar.len())
                .map(|v| {
                    let supported: Vec<usize> = (0..d.rank()).filter(|&i| ar.root(v)[i] != 0).map(|i| i + 1).collect();
                    json!({ "root": root_string(ar.root(v)), "pi": ar.pi(v) + 1, "support": supported })
                })
                .collect();
            let arrows: Vec<[String; 2]> =
                ar.arrows().iter().map(|&(a, b)| [root_string(ar.root(a)), root_string(ar.root(b))]).collect();
            Ok(Output::Json(json!({
                "quiver": format::quiver_to_json(&quiver),
                "coxeter_number": d.coxeter_number(),
                "minuscule": d.minuscule_vertices().iter().map(|v| v + 1).collect::<Vec<_>>(),
                "roots": roots,
                "arrows": arrows,
            })))
        }
        Cmd::IsoType { q } => {
            let mh = q.heap()?;
            let t = mh.iso_type()?;
            Ok(Output::Json(json!({ "iso_type": t.to_string(), "size": mh.len() })))
        }
        Cmd::Rho { q, mults, dot } => {
            let mh = q.heap()?;
            let c = format::mults_from_json(&mh, &format::read_json(&read_text(mults)?)?)?;
            let vals = rho(&mh, &c)?;
            if *dot {
                let labels: Vec<String> = vals.iter().map(u64::to_string).collect();
                return Ok(Output::Text(format::heap_dot(&mh, Some(&labels))));
            }
            Ok(Output::Json(format::finite_filling_json(&mh, &vals, None)))
        }
        Cmd::Inv { f } => {
            let fl = read_filling(&f.filling)?;
            let vals = fl.finite()?;
            let c = rho_inverse(&fl.heap, &vals)?;
            Ok(Output::Json(json!({
                "quiver": format::quiver_to_json(fl.heap.quiver()),
                "m": fl.heap.m() + 1,
                "mults": format::mults_json(&fl.heap, &c),
            })))
        }
        Cmd::Promote { f, times, n } => {
            let fl = read_filling(&f.filling)?;
            let heap = fl.heap.heap();
            let order = fl.heap.quiver().admissible_order();
            match n.or(fl.n) {
                Some(bound) => {
                    let mut vals = fl.finite()?;
                    check_rpp(heap, &vals, Some(bound))?;
                    for _ in 0..*times {
                        promotion(heap, &mut vals, order, bound);
                    }
                    Ok(Output::Json(format::finite_filling_json(&fl.heap, &vals, Some(bound))))
                }
                None => {
                    let mut vals = fl.values.clone();
                    check_rpp(heap, &vals, None)?;
                    for _ in 0..*times {
                        promotion_ext(heap, &mut vals, order);
                    }
                    Ok(Output::Json(format::filling_json(&fl.heap, &vals, None)))
                }
            }
        }
        Cmd::Toggle { f, vertex, element, n } => {
            let fl = read_filling(&f.filling)?;
            let mh = &fl.heap;
            let heap = mh.heap();
            let target = match (vertex, element) {
                (Some(v), None) => {
                    ensure!(*v >= 1 && *v <= heap.rank(), "--vertex must be between 1 and {}", heap.rank());
                    Err(v - 1)
                }
                (None, Some(id)) => Ok(mh.element_by_name(id).ok_or_else(|| anyhow!("unknown element {id:?}"))?),
                _ => bail!("give exactly one of --vertex and --element"),
            };
            match n.or(fl.n) {
                Some(bound) => {
                    let mut vals = fl.finite()?;
                    check_rpp(heap, &vals, Some(bound))?;
                    match target {
                        Ok(x) => toggle(heap, &mut vals, x, bound),
                        Err(i) => toggle_fibre(heap, &mut vals, i, bound),
                    }
                    Ok(Output::Json(format::finite_filling_json(mh, &vals, Some(bound))))
                }
                None => {
                    let mut vals = fl.values.clone();
                    check_rpp(heap, &vals, None)?;
                    match target {
                        Ok(x) => toggle_ext(heap, &mut vals, x),
                        Err(i) => toggle_fibre_ext(heap, &mut vals, i),
                    }
                    Ok(Output::Json(format::filling_json(mh, &vals, None)))
                }
            }
        }
        Cmd::Split { filling, q, filter } => {
            let (mh, split) = match (filling, filter) {
                (Some(text), None) => {
                    let fl = read_filling(text)?;
                    check_rpp(fl.heap.heap(), &fl.values, None)?;
                    let split = split_for_rpp(&fl.heap, &fl.values)?;
                    (fl.heap, split)
                }
                (None, Some(text)) => {
                    let mh = q.heap()?;
                    let verify::FilterChoice::Given(b) = verify::parse_filter(&mh, text)? else {
                        bail!("--filter needs a list of element ids");
                    };
                    ensure!(mh.heap().is_filter(&b), "the given set is not an order filter");
                    let heart = heart_for_filter(&mh, &b)?;
                    let n = mh.len();
                    (mh, SplitObject::new(heart, vec![0; n]))
                }
                _ => bail!("give exactly one of --filling and --filter"),
            };
            Ok(Output::Json(split_json(&mh, &split)))
        }
        Cmd::Verify(v) => verify_cmd(v).map(Output::Verdict),
    }
}

fn split_json(mh: &MinusculeHeap, split: &SplitObject) -> Value {
    let heart = &split.heart;
    let xi = heart.xi_dimension_vectors(mh);
    let even = split.filter(mh);
    let mut even_mults = serde_json::Map::new();
    let mut odd_mults = serde_json::Map::new();
    for (x, (&k, dims)) in split.mults.iter().zip(&xi).enumerate() {
        if k == 0 {
            continue;
        }
        match (dims, even.contains(x)) {
            (Some(r), true) => {
                even_mults.insert(root_string(r), json!(k));
            }
            _ => {
                odd_mults.insert(mh.root_name(x), json!(k));
            }
        }
    }
    json!({
        "heart": heart.section(),
        "xi_quiver": format::quiver_to_json(&heart.quiver(mh.quiver())),
        "filter": even.iter().map(|x| mh.root_name(x)).collect::<Vec<_>>(),
        "even": even_mults,
        "odd": odd_mults,
    })
}

fn heaps_for_axioms(q: &QuiverArgs) -> Result<Vec<MinusculeHeap>> {
    let mut out = Vec::new();
    let diagrams: Vec<DynkinDiagram> = match (&q.ty, &q.quiver) {
        (None, None) => {
            let mut ds = Vec::new();
            for r in 1..=7 {
                ds.push(DynkinDiagram::parse(&format!("A{r}"))?);
            }
            for r in 4..=7 {
                ds.push(DynkinDiagram::parse(&format!("D{r}"))?);
            }
            ds.push(DynkinDiagram::parse("E6")?);
            ds.push(DynkinDiagram::parse("E7")?);
            ds
        }
        _ => {
            let quiver = q.quiver()?;
            let ms = match q.m {
                Some(_) => vec![q.m(&quiver)?],
                None => quiver.diagram().minuscule_vertices(),
            };
            for m in ms {
                out.push(MinusculeHeap::new(&quiver, m)?);
            }
            return Ok(out);
        }
    };
    for d in diagrams {
        let q = DynkinQuiver::standard(d.clone());
        for m in d.minuscule_vertices() {
            out.push(MinusculeHeap::new(&q, m)?);
        }
    }
    Ok(out)
}

fn verify_cmd(v: &VerifyArgs) -> Result<Vec<Outcome>> {
    let cfg = OracleConfig::from_env()?.with_overrides(v.prime, v.samples, v.seed)?;
    let tag = |mut o: Outcome, mh: &MinusculeHeap| {
        o.detail["heap"] = json!(format!("{} m={}", mh.quiver().describe(), mh.m() + 1));
        o
    };
    Ok(match v.suite {
        Suite::Axioms => heaps_for_axioms(&v.q)?.iter().map(|mh| tag(verify::axioms(mh), mh)).collect(),
        Suite::Periodicity => {
            let mh = v.q.heap()?;
            match v.n.as_deref() {
                Some("extended") => vec![tag(verify::periodicity_extended(&mh, v.count.unwrap_or(200), cfg.seed), &mh)],
                other => {
                    let bound: u64 = other.unwrap_or("1").parse().context("--N must be a number or `extended`")?;
                    let mode = match v.count {
                        Some(count) => OrbitMode::Sampled { count, seed: cfg.seed },
                        None => OrbitMode::Exhaustive,
                    };
                    vec![tag(verify::periodicity(&mh, bound, mode), &mh)]
                }
            }
        }
        Suite::Oracle => {
            let mh = v.q.heap()?;
            vec![tag(verify::oracle(&mh, &cfg, v.count.unwrap_or(50), v.max_mult.unwrap_or(2))?, &mh)]
        }
        Suite::Hg | Suite::Rsk => {
            ensure!(
                v.q.orient.is_none() && v.q.quiver.is_none(),
                "the orientation is fixed by the suite; give only --type and --m"
            );
            let quiver = v.q.quiver()?;
            ensure!(quiver.diagram().family() == minrpp_core::Family::A, "only available in type A");
            let m = v.q.m(&quiver)?;
            let max = v.max_mult.unwrap_or(1);
            vec![match v.suite {
                Suite::Hg => verify::hg(quiver.rank(), m, max)?,
                _ => verify::rsk(quiver.rank(), m, max)?,
            }]
        }
        Suite::Gk => {
            let mh = v.q.heap()?;
            vec![tag(verify::gk(&mh, v.max_mult.unwrap_or(2))?, &mh)]
        }
        Suite::Genfun => {
            let mh = v.q.heap()?;
            let choice = verify::parse_filter(&mh, &v.filter)?;
            vec![tag(verify::genfun(&mh, v.degree, &choice)?, &mh)]
        }
        Suite::Togref => {
            let mh = v.q.heap()?;
            vec![tag(verify::togref(&mh, v.max_mult.unwrap_or(1))?, &mh)]
        }
    })
}

fn print_json(v: &Value, compact: bool) {
    if compact {
        println!("{v}");
    } else {
        println!("{}", serde_json::to_string_pretty(v).expect("serialisable"));
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Output::Json(v)) => {
            print_json(&v, cli.json);
            ExitCode::SUCCESS
        }
        Ok(Output::Text(s)) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Ok(Output::Verdict(outcomes)) => {
            let passed = outcomes.iter().all(|o| o.passed);
            for o in &outcomes {
                eprintln!("{} {}", if o.passed { "PASS" } else { "FAIL" }, o.name);
            }
            let list: Vec<Value> = outcomes.iter().map(Outcome::to_json).collect();
            print_json(&json!({ "passed": passed, "results": list }), cli.json);
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
