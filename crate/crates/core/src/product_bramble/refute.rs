use std::fmt::Write as _;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{
    check_preconditions, element_vertices, make_element, theorem_bound, CopyId, ElementSpec,
    TheoremBound,
};
use crate::error::{Error, Result};
use crate::graph::{is_connected_subset, ProductGraph, VertexSet};

/// Which family of copies a size certificate counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    /// Copies of `H`, one per vertex of `G`.
    Rows,
    /// Copies of `G`, one per vertex of `H`.
    Columns,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RefutationOutcome {
    /// An element of the bramble disjoint from the candidate set.
    AvoidingElement {
        spec: ElementSpec,
        vertices: VertexSet,
    },
    /// Pairwise disjoint copies each holding at least `k` candidate
    /// vertices, which forces `|J| >= implied_bound`.
    SizeCertificate {
        axis: Axis,
        copies: Vec<usize>,
        implied_bound: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Refutation {
    pub k: usize,
    pub n: usize,
    pub g_size: usize,
    pub h_size: usize,
    /// The candidate hitting set `J`.
    pub candidate: VertexSet,
    /// Number of copies of `H` meeting `J` in at most `k - 1` vertices.
    pub s0_size: usize,
    /// Number of copies of `G` meeting `J` in at most `k - 1` vertices.
    pub t0_size: usize,
    pub outcome: RefutationOutcome,
}

impl Refutation {
    pub fn is_avoiding(&self) -> bool {
        matches!(self.outcome, RefutationOutcome::AvoidingElement { .. })
    }
}

/// Either exhibits an element disjoint from `candidate` or certifies
/// `|candidate| >= k(n - 2k + 2)`.
///
/// With `S_0` the copies of `H` (and `T_0` the copies of `G`) containing at
/// most `k - 1` vertices of `candidate`: if both hold at least `2k - 1`
/// copies, the first `2k - 1` of each, stripped of `candidate`, form an
/// avoiding element. Otherwise the short side leaves at least
/// `n - 2k + 2` disjoint copies with `k` candidate vertices each.
pub fn refute_hitting_set(p: &ProductGraph, k: usize, candidate: &VertexSet) -> Result<Refutation> {
    check_preconditions(p, k)?;
    p.graph().check_subset(candidate)?;
    let (gn, hn) = (p.g_size(), p.h_size());
    let mut row_hits = vec![0usize; gn];
    let mut col_hits = vec![0usize; hn];
    for &x in candidate {
        let (v, w) = p.pair(x);
        row_hits[v] += 1;
        col_hits[w] += 1;
    }
    let s0: Vec<usize> = (0..gn).filter(|&v| row_hits[v] < k).collect();
    let t0: Vec<usize> = (0..hn).filter(|&w| col_hits[w] < k).collect();
    let n = p.min_factor_size();
    let size = 2 * k - 1;
    let implied_bound = k * (n + 2 - 2 * k);

    let outcome = if s0.len() < size {
        RefutationOutcome::SizeCertificate {
            axis: Axis::Rows,
            copies: (0..gn).filter(|&v| row_hits[v] >= k).collect(),
            implied_bound,
        }
    } else if t0.len() < size {
        RefutationOutcome::SizeCertificate {
            axis: Axis::Columns,
            copies: (0..hn).filter(|&w| col_hits[w] >= k).collect(),
            implied_bound,
        }
    } else {
        let spec = avoiding_spec(p, k, &s0[..size], &t0[..size], candidate);
        let vertices = make_element(p, &spec)?;
        debug_assert!(vertices.is_disjoint(candidate));
        RefutationOutcome::AvoidingElement { spec, vertices }
    };
    Ok(Refutation {
        k,
        n,
        g_size: gn,
        h_size: hn,
        candidate: candidate.clone(),
        s0_size: s0.len(),
        t0_size: t0.len(),
        outcome,
    })
}

/// The element on rows `s` and columns `t` with every vertex of `candidate`
/// removed from each copy.
fn avoiding_spec(
    p: &ProductGraph,
    k: usize,
    s: &[usize],
    t: &[usize],
    candidate: &VertexSet,
) -> ElementSpec {
    let mut spec = ElementSpec::new(k, s.iter().copied().collect(), t.iter().copied().collect());
    for copy in s
        .iter()
        .map(|&v| CopyId::OfH(v))
        .chain(t.iter().map(|&w| CopyId::OfG(w)))
    {
        let hit: VertexSet = candidate
            .iter()
            .copied()
            .filter(|&x| copy.contains(p, x))
            .collect();
        if !hit.is_empty() {
            spec.deletions.insert(copy, hit);
        }
    }
    spec
}

/// Re-checks a refutation from scratch. Returns the list of problems found;
/// empty means the refutation is sound.
pub fn check_refutation(p: &ProductGraph, r: &Refutation) -> Vec<String> {
    let mut problems = Vec::new();
    if (r.g_size, r.h_size) != (p.g_size(), p.h_size()) {
        problems.push(format!(
            "factor sizes {}x{} do not match the product {}x{}",
            r.g_size,
            r.h_size,
            p.g_size(),
            p.h_size()
        ));
        return problems;
    }
    if let Err(e) = check_preconditions(p, r.k) {
        problems.push(e.to_string());
        return problems;
    }
    if let Err(e) = p.graph().check_subset(&r.candidate) {
        problems.push(format!("candidate set: {e}"));
        return problems;
    }
    let k = r.k;
    match &r.outcome {
        RefutationOutcome::AvoidingElement { spec, vertices } => {
            if spec.k != k {
                problems.push(format!("element uses k={} instead of {k}", spec.k));
            }
            if let Err(e) = spec.check(p) {
                problems.push(e.to_string());
            } else if element_vertices(p, spec) != *vertices {
                problems.push("element vertices do not match its spec".into());
            }
            if !vertices.is_disjoint(&r.candidate) {
                problems.push("element meets the candidate set".into());
            }
            match is_connected_subset(p.graph(), vertices) {
                Ok(true) => {}
                Ok(false) => problems.push("element is not connected".into()),
                Err(e) => problems.push(format!("element: {e}")),
            }
        }
        RefutationOutcome::SizeCertificate {
            axis,
            copies,
            implied_bound,
        } => {
            let n = p.min_factor_size();
            let count = match axis {
                Axis::Rows => p.g_size(),
                Axis::Columns => p.h_size(),
            };
            if copies.windows(2).any(|w| w[0] >= w[1]) || copies.iter().any(|&c| c >= count) {
                problems.push("copy list must be strictly increasing and in range".into());
                return problems;
            }
            if copies.len() + 2 * k < n + 2 {
                problems.push(format!(
                    "{} copies listed, at least n-2k+2 = {} needed",
                    copies.len(),
                    n + 2 - 2 * k
                ));
            }
            for &c in copies {
                let copy = match axis {
                    Axis::Rows => CopyId::OfH(c),
                    Axis::Columns => CopyId::OfG(c),
                };
                let hits = r.candidate.iter().filter(|&&x| copy.contains(p, x)).count();
                if hits < k {
                    problems.push(format!(
                        "{copy:?} holds {hits} candidate vertices, fewer than k={k}"
                    ));
                }
            }
            if *implied_bound != k * (n + 2 - 2 * k) {
                problems.push(format!("implied bound {implied_bound} is not k(n-2k+2)"));
            }
            if *implied_bound > r.candidate.len() {
                problems.push(format!(
                    "implied bound {implied_bound} exceeds |J| = {}",
                    r.candidate.len()
                ));
            }
        }
    }
    problems
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum CertificationMethod {
    /// The bound carries no information.
    Vacuous,
    /// Every vertex set of size `order - 1` was refuted, which proves the
    /// order of the bramble is at least `order`.
    Exhaustive { checked: u64 },
    /// Random vertex sets of size `order - 1` were refuted; the bound rests
    /// on the general argument, spot-checked.
    Sampled { checked: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductCertificate {
    pub bound: TheoremBound,
    pub method: CertificationMethod,
    /// A candidate set that was not refuted, if any. Always `None` unless
    /// there is a bug.
    pub counterexample: Option<VertexSet>,
}

impl ProductCertificate {
    /// The lower bound is backed by an exhaustive refutation.
    pub fn is_certified(&self) -> bool {
        self.counterexample.is_none()
            && matches!(self.method, CertificationMethod::Exhaustive { .. })
    }
}

/// Runs the refuter on every vertex set of size `k(n - 2k + 2) - 1` when
/// there are at most `exhaustive_limit` of them, otherwise on `samples`
/// seeded random ones. Sampling without a seed is a parameter error.
pub fn certify_product_bound(
    p: &ProductGraph,
    k: usize,
    exhaustive_limit: u64,
    samples: u64,
    seed: Option<u64>,
) -> Result<ProductCertificate> {
    let bound = theorem_bound(k, p.min_factor_size());
    if bound.vacuous {
        return Ok(ProductCertificate {
            bound,
            method: CertificationMethod::Vacuous,
            counterexample: None,
        });
    }
    check_preconditions(p, k)?;
    let total = p.graph().vertex_count();
    let size = (bound.order() - 1) as usize;
    if size > total {
        return Err(Error::Precondition(format!(
            "bound order {} exceeds the {total} vertices of the product",
            bound.order()
        )));
    }
    let refuted = |j: &VertexSet| -> Result<bool> {
        let r = refute_hitting_set(p, k, j)?;
        Ok(r.is_avoiding() && check_refutation(p, &r).is_empty())
    };
    let mut checked = 0u64;
    if binomial(total, size).is_some_and(|c| c <= exhaustive_limit) {
        let mut comb: Vec<usize> = (0..size).collect();
        loop {
            let j: VertexSet = comb.iter().copied().collect();
            checked += 1;
            if !refuted(&j)? {
                return Ok(ProductCertificate {
                    bound,
                    method: CertificationMethod::Exhaustive { checked },
                    counterexample: Some(j),
                });
            }
            if !next_combination(&mut comb, total) {
                break;
            }
        }
        return Ok(ProductCertificate {
            bound,
            method: CertificationMethod::Exhaustive { checked },
            counterexample: None,
        });
    }
    let seed = seed.ok_or_else(|| {
        Error::InvalidParameter(
            "too many candidate sets to enumerate; sampling needs a seed".into(),
        )
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let j: VertexSet = sample(&mut rng, total, size).into_iter().collect();
        checked += 1;
        if !refuted(&j)? {
            return Ok(ProductCertificate {
                bound,
                method: CertificationMethod::Sampled { checked },
                counterexample: Some(j),
            });
        }
    }
    Ok(ProductCertificate {
        bound,
        method: CertificationMethod::Sampled { checked },
        counterexample: None,
    })
}

pub(crate) fn binomial(n: usize, k: usize) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Advances `comb` to the next `k`-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    let Some(i) = (0..k).rev().find(|&i| comb[i] < n - k + i) else {
        return false;
    };
    comb[i] += 1;
    for j in i + 1..k {
        comb[j] = comb[j - 1] + 1;
    }
    true
}

fn ids(set: impl IntoIterator<Item = usize>) -> String {
    set.into_iter()
        .map(|v| (v + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn line_with(key: &str, rest: String) -> String {
    if rest.is_empty() {
        format!("{key}\n")
    } else {
        format!("{key} {rest}\n")
    }
}

impl Refutation {
    /// Line-oriented transcript with 1-based ids; see [`Refutation::parse_transcript`].
    pub fn to_transcript(&self) -> String {
        let kind = if self.is_avoiding() {
            "avoiding"
        } else {
            "size"
        };
        let mut out = format!("refutation {kind}\n");
        let _ = writeln!(out, "k {}", self.k);
        let _ = writeln!(out, "factors {} {}", self.g_size, self.h_size);
        let _ = writeln!(out, "n {}", self.n);
        out.push_str(&line_with("j", ids(self.candidate.iter().copied())));
        let _ = writeln!(out, "s0 {}", self.s0_size);
        let _ = writeln!(out, "t0 {}", self.t0_size);
        match &self.outcome {
            RefutationOutcome::AvoidingElement { spec, vertices } => {
                out.push_str(&line_with("s", ids(spec.s.iter().copied())));
                out.push_str(&line_with("t", ids(spec.t.iter().copied())));
                out.push_str(&line_with("element", ids(vertices.iter().copied())));
            }
            RefutationOutcome::SizeCertificate {
                axis,
                copies,
                implied_bound,
            } => {
                let axis = match axis {
                    Axis::Rows => "rows",
                    Axis::Columns => "columns",
                };
                let _ = writeln!(out, "axis {axis}");
                out.push_str(&line_with("copies", ids(copies.iter().copied())));
                let _ = writeln!(out, "implied {implied_bound}");
            }
        }
        out
    }

    /// Parses a transcript. Deletions of an avoiding element are
    /// reconstructed as each copy's intersection with `J`.
    ///
    /// ```text
    /// refutation avoiding|size
    /// k <k>
    /// factors <|V(G)|> <|V(H)|>
    /// n <n>
    /// j <ids>
    /// s0 <count>
    /// t0 <count>
    /// s <ids> / t <ids> / element <ids>            (avoiding)
    /// axis rows|columns / copies <ids> / implied <b> (size)
    /// ```
    pub fn parse_transcript(text: &str) -> Result<Self> {
        let perr = |line: usize, message: String| Error::Parse { line, message };
        let mut fields = std::collections::HashMap::new();
        let mut kind = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || crate::io::is_comment(line) {
                continue;
            }
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            if key == "refutation" {
                kind = Some((i + 1, rest.trim().to_string()));
            } else if fields
                .insert(key.to_string(), (i + 1, rest.trim().to_string()))
                .is_some()
            {
                return Err(perr(i + 1, format!("duplicate `{key}` line")));
            }
        }
        let (kind_line, kind) = kind.ok_or_else(|| perr(1, "missing `refutation` line".into()))?;
        let get = |key: &str| {
            fields
                .get(key)
                .cloned()
                .ok_or_else(|| perr(kind_line, format!("missing `{key}` line")))
        };
        let numbers = |key: &str, one_based: bool| -> Result<Vec<usize>> {
            let (ln, rest) = get(key)?;
            rest.split_whitespace()
                .map(|f| match f.parse::<usize>() {
                    Ok(0) if one_based => Err(perr(ln, "ids are 1-based".into())),
                    Ok(v) => Ok(if one_based { v - 1 } else { v }),
                    Err(_) => Err(perr(ln, format!("`{f}` is not a non-negative integer"))),
                })
                .collect()
        };
        let single = |key: &str| -> Result<usize> {
            let v = numbers(key, false)?;
            match v.as_slice() {
                [x] => Ok(*x),
                _ => Err(perr(get(key)?.0, format!("`{key}` takes one number"))),
            }
        };
        let k = single("k")?;
        let factors = numbers("factors", false)?;
        let [g_size, h_size] = factors[..] else {
            return Err(perr(
                get("factors")?.0,
                "`factors` takes two numbers".into(),
            ));
        };
        let candidate: VertexSet = numbers("j", true)?.into_iter().collect();
        let outcome = match kind.as_str() {
            "avoiding" => {
                let s: VertexSet = numbers("s", true)?.into_iter().collect();
                let t: VertexSet = numbers("t", true)?.into_iter().collect();
                let vertices: VertexSet = numbers("element", true)?.into_iter().collect();
                let mut spec = ElementSpec::new(k, s, t);
                let copies: Vec<CopyId> = spec.copies().collect();
                for copy in copies {
                    let hit: VertexSet = candidate
                        .iter()
                        .copied()
                        .filter(|&x| {
                            let (v, w) = (x / h_size.max(1), x % h_size.max(1));
                            match copy {
                                CopyId::OfH(a) => v == a,
                                CopyId::OfG(b) => w == b,
                            }
                        })
                        .collect();
                    if !hit.is_empty() {
                        spec.deletions.insert(copy, hit);
                    }
                }
                RefutationOutcome::AvoidingElement { spec, vertices }
            }
            "size" => {
                let (ln, axis) = get("axis")?;
                let axis = match axis.as_str() {
                    "rows" => Axis::Rows,
                    "columns" => Axis::Columns,
                    other => return Err(perr(ln, format!("unknown axis `{other}`"))),
                };
                RefutationOutcome::SizeCertificate {
                    axis,
                    copies: numbers("copies", true)?,
                    implied_bound: single("implied")?,
                }
            }
            other => {
                return Err(perr(
                    kind_line,
                    format!("unknown refutation kind `{other}`"),
                ))
            }
        };
        Ok(Refutation {
            k,
            n: single("n")?,
            g_size,
            h_size,
            candidate,
            s0_size: single("s0")?,
            t0_size: single("t0")?,
            outcome,
        })
    }
}
