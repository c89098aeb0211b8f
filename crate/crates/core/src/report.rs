//! Bounds reports for product instances: every applicable lower and upper
//! bound on `tw(G □ H)`, each tagged with how it was obtained.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::Duration;

use serde::Serialize;

use crate::decomposition::{
    chordal_lift, decomposition_from_ordering, exact_treewidth, heuristic_upper_bound,
    perfect_elimination_ordering, ExactBudget, Strategy, TreeDecomposition, TREEWIDTH_CEILING,
};
use crate::error::{Error, Result};
use crate::graph::{cartesian_product, generate, Family, Graph, ProductGraph};
use crate::ordering::{
    exact_bandwidth, ordering_width, product_ordering, BandwidthBudget, VertexOrdering,
};
use crate::product_bramble::{certify_product_bound, theorem_bound, CertificationMethod};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Computed exactly.
    Exact,
    /// Backed by a checked witness: an exhaustive refutation, or a
    /// validated decomposition or ordering.
    Certified,
    /// Greedy heuristic.
    Heuristic,
    /// Closed-form theorem bound whose hypotheses were checked.
    Formula,
    /// The theorem applies but says nothing (`n <= 2k - 2`).
    Vacuous,
}

impl Provenance {
    pub fn tag(self) -> char {
        match self {
            Provenance::Exact => 'E',
            Provenance::Certified => 'C',
            Provenance::Heuristic => 'H',
            Provenance::Formula => 'F',
            Provenance::Vacuous => 'V',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub value: i64,
    pub provenance: Provenance,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.value, self.provenance.tag())
    }
}

/// A product instance, written `product:<family>,<family>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSpec {
    pub g: Family,
    pub h: Family,
}

impl FromStr for ProductSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.strip_prefix("product:").ok_or_else(|| {
            Error::InvalidParameter(format!(
                "`{s}` is not of the form product:<family>,<family>"
            ))
        })?;
        // split at the comma that starts the second family name
        let split = body
            .match_indices(',')
            .map(|(i, _)| i)
            .find(|&i| {
                body[i + 1..].contains(':')
                    && !body[i + 1..].split(':').next().unwrap_or("").contains('=')
            })
            .ok_or_else(|| Error::InvalidParameter(format!("`{s}` names only one factor")))?;
        Ok(ProductSpec {
            g: body[..split].parse()?,
            h: body[split + 1..].parse()?,
        })
    }
}

impl fmt::Display for ProductSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "product:{},{}", self.g, self.h)
    }
}

/// A single graph or a product of two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceSpec {
    Single(Family),
    Product(ProductSpec),
}

impl FromStr for InstanceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.starts_with("product:") {
            Ok(InstanceSpec::Product(s.parse()?))
        } else {
            Ok(InstanceSpec::Single(s.parse()?))
        }
    }
}

impl InstanceSpec {
    pub fn build(&self) -> Result<Graph> {
        match self {
            InstanceSpec::Single(f) => generate(*f),
            InstanceSpec::Product(p) => Ok(cartesian_product(&generate(p.g)?, &generate(p.h)?)?
                .graph()
                .clone()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BoundsOptions {
    /// Connectivity parameter; defaults to `min(κ(G), κ(H))`.
    pub k: Option<usize>,
    /// Needed only when candidate sets have to be sampled.
    pub seed: Option<u64>,
    pub exact_ceiling: usize,
    pub budget: Option<Duration>,
    /// Exhaustive refutation is attempted when there are at most this many
    /// candidate sets.
    pub exhaustive_limit: u64,
    /// Random candidate sets refuted otherwise.
    pub samples: u64,
}

impl Default for BoundsOptions {
    fn default() -> Self {
        BoundsOptions {
            k: None,
            seed: None,
            exact_ceiling: TREEWIDTH_CEILING,
            budget: Some(Duration::from_secs(60)),
            exhaustive_limit: 200_000,
            samples: 1_000,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    pub instance: String,
    pub g_size: usize,
    pub h_size: usize,
    pub n: usize,
    pub k: usize,
    pub kappa_g: usize,
    pub kappa_h: usize,
    /// `k(n - 2k + 2) - 1`; provenance `formula` or `vacuous`.
    pub theorem_lower: Bound,
    /// The same bound after refuting candidate hitting sets; `certified`
    /// only when every candidate of the critical size was refuted.
    pub refuter_lower: Option<Bound>,
    pub refuter_checks: u64,
    pub heuristic_upper: Bound,
    /// Row-major ordering width over factor layouts.
    pub ordering_upper: Bound,
    /// Antidiagonal ordering width, square products only.
    pub improved_upper: Option<Bound>,
    /// Width of the lifted decomposition when a factor is chordal.
    pub lift_upper: Option<Bound>,
    pub exact: Option<Bound>,
    /// Why `exact` is missing, if it is.
    pub exact_note: Option<String>,
    #[serde(skip)]
    pub best_decomposition: TreeDecomposition,
}

impl BoundsReport {
    pub fn best_lower(&self) -> i64 {
        [Some(self.theorem_lower), self.refuter_lower, self.exact]
            .into_iter()
            .flatten()
            .map(|b| b.value)
            .max()
            .unwrap_or(0)
            .max(0)
    }

    pub fn best_upper(&self) -> i64 {
        [
            Some(self.heuristic_upper),
            Some(self.ordering_upper),
            self.improved_upper,
            self.lift_upper,
            self.exact,
        ]
        .into_iter()
        .flatten()
        .map(|b| b.value)
        .min()
        .expect("heuristic bound always present")
    }

    /// Key-value lines, one bound per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let opt = |b: &Option<Bound>| b.map_or("-".to_string(), |b| b.to_string());
        let _ = writeln!(out, "instance {}", self.instance);
        let _ = writeln!(out, "factors {} {}", self.g_size, self.h_size);
        let _ = writeln!(out, "n {}", self.n);
        let _ = writeln!(out, "k {}", self.k);
        let _ = writeln!(out, "kappa_g {}", self.kappa_g);
        let _ = writeln!(out, "kappa_h {}", self.kappa_h);
        let _ = writeln!(out, "theorem_lower {}", self.theorem_lower);
        let _ = writeln!(out, "refuter_lower {}", opt(&self.refuter_lower));
        let _ = writeln!(out, "refuter_checks {}", self.refuter_checks);
        let _ = writeln!(out, "heuristic_upper {}", self.heuristic_upper);
        let _ = writeln!(out, "ordering_upper {}", self.ordering_upper);
        let _ = writeln!(out, "improved_upper {}", opt(&self.improved_upper));
        let _ = writeln!(out, "lift_upper {}", opt(&self.lift_upper));
        let _ = writeln!(out, "exact {}", opt(&self.exact));
        if let Some(note) = &self.exact_note {
            let _ = writeln!(out, "exact_note {note}");
        }
        out
    }
}

/// Best linear layout of a factor: the identity when it is optimal,
/// otherwise an exact-bandwidth layout when the factor is small enough.
fn factor_layout(g: &Graph, budget: Option<Duration>) -> VertexOrdering {
    let identity = VertexOrdering::identity(g.vertex_count());
    let b = BandwidthBudget {
        time_limit: budget,
        ..BandwidthBudget::default()
    };
    match (exact_bandwidth(g, &b), ordering_width(g, &identity)) {
        (Ok(r), Ok(w)) if r.certified && r.width < w => r.ordering,
        _ => identity,
    }
}

/// Row-major ordering of the product from factor layouts, in whichever
/// orientation (G-major or H-major) is narrower.
pub fn row_major_product_ordering(
    p: &ProductGraph,
    budget: Option<Duration>,
) -> Result<(usize, VertexOrdering)> {
    let og = factor_layout(p.factor_g(), budget);
    let oh = factor_layout(p.factor_h(), budget);
    let gn = p.g_size();
    let g_major = product_ordering(p, &og, &oh)?;
    let h_major = VertexOrdering::from_positions(
        (0..p.graph().vertex_count())
            .map(|id| {
                let (v, w) = p.pair(id);
                (oh.position(w) - 1) * gn + og.position(v)
            })
            .collect(),
    )?;
    let a = ordering_width(p.graph(), &g_major)?;
    let b = ordering_width(p.graph(), &h_major)?;
    Ok(if b < a { (b, h_major) } else { (a, g_major) })
}

/// For square products, the antidiagonal sweep keyed by `x(n+1) + yn` over
/// factor layout positions.
pub fn improved_product_ordering(
    p: &ProductGraph,
    budget: Option<Duration>,
) -> Result<Option<(usize, VertexOrdering)>> {
    let n = p.g_size();
    if n != p.h_size() {
        return Ok(None);
    }
    let og = factor_layout(p.factor_g(), budget);
    let oh = factor_layout(p.factor_h(), budget);
    let mut seq: Vec<usize> = (0..n * n).collect();
    seq.sort_by_key(|&id| {
        let (v, w) = p.pair(id);
        og.position(v) * (n + 1) + oh.position(w) * n
    });
    let o = VertexOrdering::from_sequence(&seq)?;
    Ok(Some((ordering_width(p.graph(), &o)?, o)))
}

/// Decomposition of `G □ H` lifted from a chordal factor, if either is chordal.
pub fn lifted_decomposition(p: &ProductGraph) -> Result<Option<TreeDecomposition>> {
    let mut best: Option<TreeDecomposition> = None;
    for swap in [false, true] {
        let (a, b) = if swap {
            (p.factor_h(), p.factor_g())
        } else {
            (p.factor_g(), p.factor_h())
        };
        let Some(peo) = perfect_elimination_ordering(a) else {
            continue;
        };
        let (_, td) = decomposition_from_ordering(a, &peo)?;
        let lifted = chordal_lift(&td, a, b)?;
        let lifted = if swap {
            // lift indexes (w, v) as w * |G| + v; map back to v * |H| + w
            let (gn, hn) = (p.g_size(), p.h_size());
            let bags = lifted
                .bags()
                .iter()
                .map(|bag| bag.iter().map(|&id| (id % gn) * hn + id / gn).collect())
                .collect();
            TreeDecomposition::new(bags, lifted.tree_edges().to_vec())?
        } else {
            lifted
        };
        if best
            .as_ref()
            .is_none_or(|b| lifted.max_bag_size() < b.max_bag_size())
        {
            best = Some(lifted);
        }
    }
    Ok(best)
}

pub fn compute_bounds(
    name: &str,
    g: &Graph,
    h: &Graph,
    opts: &BoundsOptions,
) -> Result<BoundsReport> {
    let p = cartesian_product(g, h)?;
    let (kappa_g, kappa_h) = p.factor_connectivity();
    let k = match opts.k {
        Some(k) => k,
        None => kappa_g.min(kappa_h),
    };
    if k == 0 {
        return Err(Error::Precondition(
            "a factor is disconnected or trivial; no k >= 1 applies".into(),
        ));
    }
    p.require_k_connected(k)?;
    let n = p.min_factor_size();
    let tb = theorem_bound(k, n);
    let theorem_lower = Bound {
        value: tb.value,
        provenance: if tb.vacuous {
            Provenance::Vacuous
        } else {
            Provenance::Formula
        },
    };

    let mut refuter_lower = None;
    let mut refuter_checks = 0;
    if !tb.vacuous {
        let cert = certify_product_bound(&p, k, opts.exhaustive_limit, opts.samples, opts.seed)?;
        if let Some(j) = &cert.counterexample {
            return Err(Error::Invariant(format!(
                "refuter failed on candidate set {j:?}"
            )));
        }
        let (checks, provenance) = match cert.method {
            CertificationMethod::Exhaustive { checked } => (checked, Provenance::Certified),
            CertificationMethod::Sampled { checked } => (checked, Provenance::Formula),
            CertificationMethod::Vacuous => (0, Provenance::Vacuous),
        };
        refuter_checks = checks;
        refuter_lower = Some(Bound {
            value: tb.value,
            provenance,
        });
    }

    let graph = p.graph();
    let (mut heuristic_width, mut best_decomposition) =
        heuristic_upper_bound(graph, Strategy::MinFill);
    let (w, td) = heuristic_upper_bound(graph, Strategy::MinDegree);
    if w < heuristic_width {
        heuristic_width = w;
        best_decomposition = td;
    }
    let heuristic_upper = Bound {
        value: heuristic_width as i64,
        provenance: Provenance::Heuristic,
    };

    let (ordering_width, _) = row_major_product_ordering(&p, opts.budget)?;
    let ordering_upper = Bound {
        value: ordering_width as i64,
        provenance: Provenance::Certified,
    };
    let improved_upper = improved_product_ordering(&p, opts.budget)?.map(|(w, _)| Bound {
        value: w as i64,
        provenance: Provenance::Certified,
    });

    let lift = lifted_decomposition(&p)?;
    let lift_upper = match lift {
        Some(td) => {
            if !td.validate(graph).is_ok() {
                return Err(Error::Invariant(
                    "lifted decomposition does not validate".into(),
                ));
            }
            let w = td.width()?;
            if w < best_decomposition.width()? {
                best_decomposition = td;
            }
            Some(Bound {
                value: w as i64,
                provenance: Provenance::Certified,
            })
        }
        None => None,
    };

    let mut exact_budget = ExactBudget::default().with_ceiling(opts.exact_ceiling);
    exact_budget.time_limit = opts.budget;
    let (exact, exact_note) = match exact_treewidth(graph, &exact_budget) {
        Ok((w, td)) => {
            best_decomposition = td;
            (
                Some(Bound {
                    value: w as i64,
                    provenance: Provenance::Exact,
                }),
                None,
            )
        }
        Err(Error::Resource(msg)) => (None, Some(msg)),
        Err(e) => return Err(e),
    };

    let report = BoundsReport {
        instance: name.to_string(),
        g_size: p.g_size(),
        h_size: p.h_size(),
        n,
        k,
        kappa_g,
        kappa_h,
        theorem_lower,
        refuter_lower,
        refuter_checks,
        heuristic_upper,
        ordering_upper,
        improved_upper,
        lift_upper,
        exact,
        exact_note,
        best_decomposition,
    };
    check_consistency(&report)?;
    Ok(report)
}

fn check_consistency(r: &BoundsReport) -> Result<()> {
    let lowers = [Some(r.theorem_lower), r.refuter_lower]
        .into_iter()
        .flatten();
    let uppers: Vec<Bound> = [
        Some(r.heuristic_upper),
        Some(r.ordering_upper),
        r.improved_upper,
        r.lift_upper,
    ]
    .into_iter()
    .flatten()
    .collect();
    for lo in lowers {
        for up in uppers.iter().chain(r.exact.iter()) {
            if lo.value > up.value {
                return Err(Error::Invariant(format!(
                    "{}: lower bound {lo} exceeds upper bound {up}",
                    r.instance
                )));
            }
        }
    }
    if let Some(ex) = r.exact {
        if let Some(up) = uppers.iter().find(|up| up.value < ex.value) {
            return Err(Error::Invariant(format!(
                "{}: exact value {ex} exceeds upper bound {up}",
                r.instance
            )));
        }
    }
    Ok(())
}

/// Bounds for a `product:` instance spec.
pub fn bounds_for_spec(spec: &ProductSpec, opts: &BoundsOptions) -> Result<BoundsReport> {
    compute_bounds(
        &spec.to_string(),
        &generate(spec.g)?,
        &generate(spec.h)?,
        opts,
    )
}

/// Expands a sweep such as `grid:n=2..4;pathpower:n=5..6,k=2` into product
/// instances, in order. Ranges are inclusive. Families: `grid` (`P_n □ P_n`),
/// `torus` (`C_n □ C_n`), `pathpower` and `complete` (a factor squared),
/// `ktree` (`ktree(seed) □ ktree(seed + 1)`), or a literal `product:` spec.
pub fn expand_sweep(sweep: &str) -> Result<Vec<ProductSpec>> {
    let mut out = Vec::new();
    for item in sweep.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        if item.starts_with("product:") {
            out.push(item.parse()?);
            continue;
        }
        let (name, params) = item.split_once(':').ok_or_else(|| {
            Error::InvalidParameter(format!("sweep item `{item}` has no parameters"))
        })?;
        let mut axes: Vec<(String, Vec<u64>)> = Vec::new();
        for kv in params.split(',') {
            let (key, value) = kv.split_once('=').ok_or_else(|| {
                Error::InvalidParameter(format!("expected key=value, got `{kv}`"))
            })?;
            axes.push((key.trim().to_string(), parse_range(value.trim())?));
        }
        let mut combos: Vec<Vec<(String, u64)>> = vec![Vec::new()];
        for (key, values) in &axes {
            combos = combos
                .into_iter()
                .flat_map(|c| {
                    values.iter().map(move |&v| {
                        let mut c = c.clone();
                        c.push((key.clone(), v));
                        c
                    })
                })
                .collect();
        }
        for combo in combos {
            let get = |key: &str| -> Result<u64> {
                combo
                    .iter()
                    .find(|(k, _)| k == key)
                    .map(|&(_, v)| v)
                    .ok_or_else(|| Error::InvalidParameter(format!("`{name}` needs `{key}`")))
            };
            let n = get("n")? as usize;
            let spec = match name {
                "grid" => square(Family::Path { n }),
                "torus" => square(Family::Cycle { n }),
                "complete" => square(Family::Complete { n }),
                "pathpower" => square(Family::PathPower {
                    n,
                    k: get("k")? as usize,
                }),
                "ktree" => {
                    let (k, seed) = (get("k")? as usize, get("seed")?);
                    ProductSpec {
                        g: Family::RandomKTree { n, k, seed },
                        h: Family::RandomKTree {
                            n,
                            k,
                            seed: seed + 1,
                        },
                    }
                }
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown sweep family `{other}`"
                    )))
                }
            };
            out.push(spec);
        }
    }
    Ok(out)
}

fn square(f: Family) -> ProductSpec {
    ProductSpec { g: f, h: f }
}

fn parse_range(s: &str) -> Result<Vec<u64>> {
    let bad = || Error::InvalidParameter(format!("bad value or range `{s}`"));
    match s.split_once("..") {
        Some((a, b)) => {
            let a: u64 = a.parse().map_err(|_| bad())?;
            let b: u64 = b.trim_start_matches('=').parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![s.parse().map_err(|_| bad())?]),
    }
}

#[derive(Clone, Debug)]
pub struct TableRow {
    pub instance: String,
    pub outcome: Result<BoundsReport>,
}

/// One row per instance; a failing instance is recorded and the sweep
/// continues. Rows are computed in parallel and returned in sweep order.
pub fn run_table(specs: &[ProductSpec], opts: &BoundsOptions) -> Vec<TableRow> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = specs
            .iter()
            .map(|spec| scope.spawn(move || bounds_for_spec(spec, opts)))
            .collect();
        specs
            .iter()
            .zip(handles)
            .map(|(spec, h)| TableRow {
                instance: spec.to_string(),
                outcome: h
                    .join()
                    .unwrap_or_else(|_| Err(Error::Invariant("row computation panicked".into()))),
            })
            .collect()
    })
}

const TABLE_HEADER: [&str; 12] = [
    "instance",
    "n",
    "k",
    "formula",
    "refuter",
    "heuristic",
    "ordering",
    "improved",
    "lift",
    "exact",
    "status",
    "",
];

/// Aligned text table. Each bound carries its provenance tag:
/// E exact, C certified, H heuristic, F formula, V vacuous.
pub fn table_text(rows: &[TableRow]) -> String {
    let opt = |b: &Option<Bound>| b.map_or("-".to_string(), |b| b.to_string());
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|row| match &row.outcome {
            Ok(r) => vec![
                row.instance.clone(),
                r.n.to_string(),
                r.k.to_string(),
                r.theorem_lower.to_string(),
                opt(&r.refuter_lower),
                r.heuristic_upper.to_string(),
                r.ordering_upper.to_string(),
                opt(&r.improved_upper),
                opt(&r.lift_upper),
                opt(&r.exact),
                "ok".into(),
                r.exact_note.clone().unwrap_or_default(),
            ],
            Err(e) => {
                let mut c = vec![row.instance.clone()];
                c.extend(std::iter::repeat_n("-".to_string(), 9));
                c.push("failed".into());
                c.push(e.to_string());
                c
            }
        })
        .collect();
    let mut widths: Vec<usize> = TABLE_HEADER.iter().map(|h| h.len()).collect();
    for c in &cells {
        for (w, cell) in widths.iter_mut().zip(c) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let header: Vec<String> = TABLE_HEADER.iter().map(|h| h.to_string()).collect();
    for line in std::iter::once(&header).chain(&cells) {
        let mut text = String::new();
        for (i, (cell, w)) in line.iter().zip(&widths).enumerate() {
            if i + 1 == line.len() {
                text.push_str(cell);
            } else {
                let _ = write!(text, "{cell:<w$}  ");
            }
        }
        out.push_str(text.trim_end());
        out.push('\n');
    }
    out
}

pub fn table_json(rows: &[TableRow]) -> serde_json::Value {
    serde_json::Value::Array(
        rows.iter()
            .map(|row| match &row.outcome {
                Ok(r) => serde_json::json!({
                    "instance": row.instance,
                    "status": "ok",
                    "report": r,
                }),
                Err(e) => serde_json::json!({
                    "instance": row.instance,
                    "status": "failed",
                    "error": e.to_string(),
                }),
            })
            .collect(),
    )
}
