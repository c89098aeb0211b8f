//! Text format for bramble certificates.
//!
//! ```text
//! c optional comment lines
//! bramble <element_count> <host_n>
//! <1-based vertex ids of element 1, increasing>
//! ...
//! claim <order>                      (optional)
//! disjoint <1-based element ids>     (optional)
//! ```
//!
//! A `claim` asserts that the bramble has order at least `<order>`. A
//! `disjoint` line offers that many pairwise disjoint elements as a cheap
//! witness; without it the verifier re-runs the exact hitting-set solver.

use std::fmt::Write as _;

use super::Bramble;
use crate::error::{Error, Result};
use crate::graph::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrambleCertificate {
    pub host_n: usize,
    pub elements: Vec<VertexSet>,
    pub claimed_order: Option<usize>,
    /// 0-based element indices.
    pub disjoint: Option<Vec<usize>>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_numbers(line: usize, fields: &[&str]) -> Result<Vec<usize>> {
    fields
        .iter()
        .map(|f| {
            f.parse::<usize>()
                .map_err(|_| parse_err(line, format!("`{f}` is not a non-negative integer")))
        })
        .collect()
}

impl BrambleCertificate {
    pub fn from_bramble(b: &Bramble) -> Self {
        BrambleCertificate {
            host_n: b.host().vertex_count(),
            elements: b.elements().to_vec(),
            claimed_order: None,
            disjoint: None,
        }
    }

    pub fn with_claim(mut self, order: usize) -> Self {
        self.claimed_order = Some(order);
        self
    }

    pub fn with_disjoint(mut self, indices: Vec<usize>) -> Self {
        self.disjoint = Some(indices);
        self
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("bramble {} {}\n", self.elements.len(), self.host_n);
        for e in &self.elements {
            let ids: Vec<String> = e.iter().map(|v| (v + 1).to_string()).collect();
            out.push_str(&ids.join(" "));
            out.push('\n');
        }
        if let Some(order) = self.claimed_order {
            let _ = writeln!(out, "claim {order}");
        }
        if let Some(d) = &self.disjoint {
            let ids: Vec<String> = d.iter().map(|i| (i + 1).to_string()).collect();
            let _ = writeln!(out, "disjoint {}", ids.join(" "));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !crate::io::is_comment(l));
        let (hl, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "missing `bramble` header"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 || fields[0] != "bramble" {
            return Err(parse_err(hl, "expected `bramble <element_count> <host_n>`"));
        }
        let counts = parse_numbers(hl, &fields[1..])?;
        let (count, host_n) = (counts[0], counts[1]);
        let mut cert = BrambleCertificate {
            host_n,
            elements: Vec::with_capacity(count),
            claimed_order: None,
            disjoint: None,
        };
        for _ in 0..count {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| parse_err(hl, format!("expected {count} element lines")))?;
            let ids = parse_numbers(ln, &line.split_whitespace().collect::<Vec<_>>())?;
            if ids.windows(2).any(|w| w[0] >= w[1]) {
                return Err(parse_err(ln, "element ids must be strictly increasing"));
            }
            if let Some(&bad) = ids.iter().find(|&&v| v == 0 || v > host_n) {
                return Err(parse_err(ln, format!("vertex {bad} outside 1..={host_n}")));
            }
            cert.elements.push(ids.into_iter().map(|v| v - 1).collect());
        }
        for (ln, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields[0] {
                "claim" if fields.len() == 2 && cert.claimed_order.is_none() => {
                    cert.claimed_order = Some(parse_numbers(ln, &fields[1..])?[0]);
                }
                "disjoint" if cert.disjoint.is_none() => {
                    let ids = parse_numbers(ln, &fields[1..])?;
                    if let Some(&bad) = ids.iter().find(|&&i| i == 0 || i > count) {
                        return Err(parse_err(
                            ln,
                            format!("element index {bad} outside 1..={count}"),
                        ));
                    }
                    cert.disjoint = Some(ids.into_iter().map(|i| i - 1).collect());
                }
                _ => return Err(parse_err(ln, format!("unexpected line `{line}`"))),
            }
        }
        Ok(cert)
    }
}
