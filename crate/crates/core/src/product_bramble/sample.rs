use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{check_preconditions, element_vertices, make_element, CopyId, ElementSpec};
use crate::error::{Error, Result};
use crate::graph::{ProductGraph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeletionPolicy {
    /// Full unions of copies.
    None,
    /// Exactly `k - 1` deletions per copy, all inside `S × T`.
    Adversarial,
    /// Up to `k - 1` random deletions per copy.
    Random,
}

impl std::str::FromStr for DeletionPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(DeletionPolicy::None),
            "adversarial" => Ok(DeletionPolicy::Adversarial),
            "random" => Ok(DeletionPolicy::Random),
            other => Err(Error::InvalidParameter(format!(
                "unknown deletion policy `{other}`"
            ))),
        }
    }
}

/// `count` elements with seeded random `S`, `T` and deletions chosen by
/// `policy`. Deterministic per seed.
pub fn sample_elements(
    p: &ProductGraph,
    k: usize,
    count: usize,
    policy: DeletionPolicy,
    seed: u64,
) -> Result<Vec<(ElementSpec, VertexSet)>> {
    check_preconditions(p, k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = 2 * k - 1;
    (0..count)
        .map(|_| {
            let mut s = sample(&mut rng, p.g_size(), size).into_vec();
            let mut t = sample(&mut rng, p.h_size(), size).into_vec();
            s.shuffle(&mut rng);
            t.shuffle(&mut rng);
            let mut spec =
                ElementSpec::new(k, s.iter().copied().collect(), t.iter().copied().collect());
            match policy {
                DeletionPolicy::None => {}
                DeletionPolicy::Adversarial => {
                    // cyclic band: row s[i] loses (s[i], t[i + j]) for j < k - 1,
                    // so each row and each column of S × T loses exactly k - 1
                    for (i, &v) in s.iter().enumerate() {
                        for j in 0..k - 1 {
                            let w = t[(i + j) % size];
                            spec = spec.with_deletion(CopyId::OfH(v), p.flat(v, w));
                        }
                    }
                }
                DeletionPolicy::Random => random_deletions(p, &mut spec, &mut rng),
            }
            let x = make_element(p, &spec)?;
            Ok((spec, x))
        })
        .collect()
}

fn random_deletions(p: &ProductGraph, spec: &mut ElementSpec, rng: &mut ChaCha8Rng) {
    let budget = spec.k - 1;
    let copies: Vec<CopyId> = spec.copies().collect();
    let mut lost = std::collections::HashMap::<CopyId, usize>::new();
    let owners = |x: usize| -> Vec<CopyId> {
        let (v, w) = p.pair(x);
        let mut c = Vec::with_capacity(2);
        if spec.s.contains(&v) {
            c.push(CopyId::OfH(v));
        }
        if spec.t.contains(&w) {
            c.push(CopyId::OfG(w));
        }
        c
    };
    let mut deleted = VertexSet::new();
    let mut additions = Vec::new();
    for copy in copies {
        let target = rng.gen_range(0..=budget);
        let mut members: Vec<usize> = copy
            .vertices(p)
            .expect("copy in range")
            .into_iter()
            .collect();
        members.shuffle(rng);
        for x in members {
            if lost.get(&copy).copied().unwrap_or(0) >= target {
                break;
            }
            if deleted.contains(&x) {
                continue;
            }
            let affected = owners(x);
            if affected
                .iter()
                .all(|c| lost.get(c).copied().unwrap_or(0) < budget)
            {
                affected
                    .iter()
                    .for_each(|c| *lost.entry(*c).or_default() += 1);
                deleted.insert(x);
                additions.push((copy, x));
            }
        }
    }
    for (copy, x) in additions {
        spec.deletions.entry(copy).or_default().insert(x);
    }
}

/// Every distinct element of the bramble on `p`, or a resource error once
/// more than `limit` have been produced. Only sensible for tiny instances.
pub fn materialize_family(p: &ProductGraph, k: usize, limit: usize) -> Result<Vec<VertexSet>> {
    check_preconditions(p, k)?;
    let size = 2 * k - 1;
    let mut out = BTreeSet::new();
    let mut s: Vec<usize> = (0..size).collect();
    loop {
        let mut t: Vec<usize> = (0..size).collect();
        loop {
            let spec =
                ElementSpec::new(k, s.iter().copied().collect(), t.iter().copied().collect());
            let union: Vec<usize> = element_vertices(p, &spec).into_iter().collect();
            let mut deleted = Vec::new();
            let mut lost = std::collections::HashMap::new();
            enumerate_deletions(p, &spec, &union, 0, &mut deleted, &mut lost, &mut |d| {
                let x: VertexSet = union.iter().copied().filter(|v| !d.contains(v)).collect();
                out.insert(x);
                out.len() <= limit
            });
            if out.len() > limit {
                return Err(Error::Resource(format!(
                    "bramble family exceeds {limit} elements"
                )));
            }
            if !super::refute::next_combination(&mut t, p.h_size()) {
                break;
            }
        }
        if !super::refute::next_combination(&mut s, p.g_size()) {
            break;
        }
    }
    Ok(out.into_iter().collect())
}

fn enumerate_deletions(
    p: &ProductGraph,
    spec: &ElementSpec,
    union: &[usize],
    from: usize,
    deleted: &mut Vec<usize>,
    lost: &mut std::collections::HashMap<CopyId, usize>,
    emit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if !emit(deleted) {
        return false;
    }
    for i in from..union.len() {
        let x = union[i];
        let (v, w) = p.pair(x);
        let owners: Vec<CopyId> = [
            spec.s.contains(&v).then_some(CopyId::OfH(v)),
            spec.t.contains(&w).then_some(CopyId::OfG(w)),
        ]
        .into_iter()
        .flatten()
        .collect();
        if owners
            .iter()
            .all(|c| lost.get(c).copied().unwrap_or(0) < spec.k - 1)
        {
            owners
                .iter()
                .for_each(|c| *lost.entry(*c).or_default() += 1);
            deleted.push(x);
            let keep_going = enumerate_deletions(p, spec, union, i + 1, deleted, lost, emit);
            deleted.pop();
            owners
                .iter()
                .for_each(|c| *lost.get_mut(c).expect("counted") -= 1);
            if !keep_going {
                return false;
            }
        }
    }
    true
}
