//! Independent re-checking of certificates written by this crate: bramble
//! certificates, `.td` decompositions, and refutation transcripts.

use serde::Serialize;

use crate::bramble::{
    minimum_hitting_set, validate_bramble, Bramble, BrambleCertificate, SearchBudget,
};
use crate::decomposition::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{cartesian_product, Graph, ProductGraph, VertexSet};
use crate::io;
use crate::product_bramble::{check_refutation, Refutation};

#[derive(Clone, Debug)]
pub enum Certificate {
    Bramble(BrambleCertificate),
    Decomposition { td: TreeDecomposition, n: usize },
    Refutation(Refutation),
}

impl Certificate {
    /// Detects the format from the first non-comment line.
    pub fn parse(text: &str) -> Result<Self> {
        let first = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !io::is_comment(l))
            .ok_or_else(|| Error::Parse {
                line: 1,
                message: "empty certificate".into(),
            })?;
        if first.starts_with("bramble") {
            Ok(Certificate::Bramble(BrambleCertificate::parse(text)?))
        } else if first.starts_with("s td") {
            let (td, n) = io::read_td(text)?;
            Ok(Certificate::Decomposition { td, n })
        } else if first.starts_with("refutation") {
            Ok(Certificate::Refutation(Refutation::parse_transcript(text)?))
        } else {
            let line = text.lines().position(|l| l.trim() == first).unwrap_or(0) + 1;
            Err(Error::Parse {
                line,
                message: format!("unrecognised certificate header `{first}`"),
            })
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Bramble(_) => "bramble",
            Certificate::Decomposition { .. } => "tree_decomposition",
            Certificate::Refutation(_) => "refutation",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub kind: &'static str,
    pub valid: bool,
    /// Violations when invalid, facts established when valid.
    pub messages: Vec<String>,
}

/// Re-checks `cert` against `g`. Hitting-set searches are bounded by `budget`;
/// a claim that cannot be established within it is reported as invalid.
pub fn verify_certificate(cert: &Certificate, g: &Graph, budget: &SearchBudget) -> VerifyReport {
    let mut notes = Vec::new();
    let mut problems = Vec::new();
    match cert {
        Certificate::Bramble(c) => verify_bramble(c, g, budget, &mut notes, &mut problems),
        Certificate::Decomposition { td, n } => {
            if *n != g.vertex_count() {
                problems.push(format!(
                    "decomposition is for {n} vertices, graph has {}",
                    g.vertex_count()
                ));
            } else {
                let report = td.validate(g);
                problems.extend(report.violations.iter().map(|v| v.to_string()));
                if let Ok(w) = td.width() {
                    notes.push(format!("width {w}"));
                }
            }
        }
        Certificate::Refutation(r) => match product_from_layout(g, r.g_size, r.h_size) {
            Ok(p) => {
                problems.extend(check_refutation(&p, r));
                if r.is_avoiding() {
                    notes.push("element avoids the candidate set".into());
                } else {
                    notes.push(format!(
                        "candidate set has at least {} vertices",
                        r.k * (r.n + 2 - 2 * r.k)
                    ));
                }
            }
            Err(e) => problems.push(e.to_string()),
        },
    }
    let valid = problems.is_empty();
    VerifyReport {
        kind: cert.kind(),
        valid,
        messages: if valid { notes } else { problems },
    }
}

fn verify_bramble(
    c: &BrambleCertificate,
    g: &Graph,
    budget: &SearchBudget,
    notes: &mut Vec<String>,
    problems: &mut Vec<String>,
) {
    if c.host_n != g.vertex_count() {
        problems.push(format!(
            "certificate is for {} vertices, graph has {}",
            c.host_n,
            g.vertex_count()
        ));
        return;
    }
    if c.elements.iter().any(VertexSet::is_empty) {
        problems.push("empty element".into());
        return;
    }
    let b = match Bramble::new(g.clone(), c.elements.clone()) {
        Ok(b) if b.len() == c.elements.len() => b,
        Ok(_) => {
            problems.push("certificate lists an element twice".into());
            return;
        }
        Err(e) => {
            problems.push(e.to_string());
            return;
        }
    };
    let report = validate_bramble(&b);
    problems.extend(
        report
            .disconnected
            .iter()
            .map(|i| format!("element {} is disconnected", i + 1)),
    );
    problems.extend(
        report
            .non_touching
            .iter()
            .map(|(i, j)| format!("elements {} and {} do not touch", i + 1, j + 1)),
    );
    if !problems.is_empty() {
        return;
    }
    notes.push(format!(
        "{} elements, connected and pairwise touching",
        b.len()
    ));
    let Some(claim) = c.claimed_order else {
        return;
    };
    if let Some(disjoint) = &c.disjoint {
        let mut used = VertexSet::new();
        let mut distinct = VertexSet::new();
        for &i in disjoint {
            if !distinct.insert(i) {
                problems.push(format!("element {} offered twice as disjoint", i + 1));
            }
            let e = &c.elements[i];
            if !used.is_disjoint(e) {
                problems.push(format!(
                    "element {} overlaps an earlier disjoint element",
                    i + 1
                ));
            }
            used.extend(e.iter().copied());
        }
        if disjoint.len() < claim {
            problems.push(format!(
                "{} disjoint elements cannot certify order {claim}",
                disjoint.len()
            ));
        }
        if problems.is_empty() {
            notes.push(format!(
                "order >= {claim} via {} disjoint elements",
                disjoint.len()
            ));
        }
    } else {
        let hs = minimum_hitting_set(g.vertex_count(), &c.elements, budget);
        if hs.lower_bound >= claim {
            notes.push(format!(
                "order >= {claim} (minimum hitting set {}{})",
                hs.lower_bound,
                if hs.certified_minimum {
                    ""
                } else {
                    ", search incomplete"
                }
            ));
        } else if hs.certified_minimum {
            problems.push(format!(
                "claimed order {claim} but the order is {}",
                hs.lower_bound
            ));
        } else {
            problems.push(format!(
                "could not establish order {claim} within budget (proved {})",
                hs.lower_bound
            ));
        }
    }
}

/// Recovers the factors of a product stored with the flat layout
/// `v * h_size + w`, and checks that `g` is exactly their product.
pub fn product_from_layout(g: &Graph, g_size: usize, h_size: usize) -> Result<ProductGraph> {
    if g_size == 0 || h_size == 0 || g_size * h_size != g.vertex_count() {
        return Err(Error::InvalidInput(format!(
            "a {g_size}x{h_size} product does not have {} vertices",
            g.vertex_count()
        )));
    }
    let column: VertexSet = (0..g_size).map(|v| v * h_size).collect();
    let row: VertexSet = (0..h_size).collect();
    let p = cartesian_product(&g.induced_subgraph(&column)?, &g.induced_subgraph(&row)?)?;
    if p.graph() != g {
        return Err(Error::InvalidInput(
            "graph is not the cartesian product of its first row and column".into(),
        ));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bramble::cross_bramble;
    use crate::graph::{cycle, grid, path};
    use crate::product_bramble::refute_hitting_set;

    #[test]
    fn cross_certificate_verifies() {
        let b = cross_bramble(3).unwrap();
        let cert = Certificate::Bramble(BrambleCertificate::from_bramble(&b).with_claim(3));
        let r = verify_certificate(&cert, &grid(3).unwrap(), &SearchBudget::default());
        assert!(r.valid, "{r:?}");
        let over = Certificate::Bramble(BrambleCertificate::from_bramble(&b).with_claim(4));
        assert!(!verify_certificate(&over, &grid(3).unwrap(), &SearchBudget::default()).valid);
    }

    #[test]
    fn disconnected_element_is_reported_by_index() {
        let text = "bramble 2 4\n1 2\n1 3\n";
        let cert = Certificate::parse(text).unwrap();
        let r = verify_certificate(&cert, &path(4).unwrap(), &SearchBudget::default());
        assert!(!r.valid);
        assert_eq!(r.messages, vec!["element 2 is disconnected".to_string()]);
    }

    #[test]
    fn disjoint_witness() {
        let text = "bramble 2 4\n1 2\n3 4\nclaim 2\ndisjoint 1 2\n";
        let cert = Certificate::parse(text).unwrap();
        assert!(verify_certificate(&cert, &path(4).unwrap(), &SearchBudget::default()).valid);
        let text = "bramble 2 4\n1 2\n2 3\nclaim 2\ndisjoint 1 2\n";
        let cert = Certificate::parse(text).unwrap();
        assert!(!verify_certificate(&cert, &path(4).unwrap(), &SearchBudget::default()).valid);
    }

    #[test]
    fn bad_decomposition() {
        let cert = Certificate::parse("s td 2 2 3\nb 1 1 2\nb 2 3\n1 2\n").unwrap();
        let r = verify_certificate(&cert, &path(3).unwrap(), &SearchBudget::default());
        assert!(!r.valid);
        assert_eq!(r.messages, vec!["edge (1,2) is in no bag".to_string()]);
    }

    #[test]
    fn refutation_transcript_verifies() {
        let p = cartesian_product(&cycle(5).unwrap(), &cycle(5).unwrap()).unwrap();
        let r = refute_hitting_set(&p, 2, &[0, 6, 12, 18, 24].into()).unwrap();
        let cert = Certificate::parse(&r.to_transcript()).unwrap();
        let report = verify_certificate(&cert, p.graph(), &SearchBudget::default());
        assert!(report.valid, "{report:?}");
        // against a graph that is not that product
        let report = verify_certificate(&cert, &path(25).unwrap(), &SearchBudget::default());
        assert!(!report.valid);
    }

    #[test]
    fn unknown_header() {
        assert!(matches!(
            Certificate::parse("c x\nfoo 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
