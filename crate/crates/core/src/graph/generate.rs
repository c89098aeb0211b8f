use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{cartesian_product, Graph};
use crate::error::{Error, Result};

/// Named graph families understood by [`generate`] and the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    PathPower { n: usize, k: usize },
    Grid { n: usize },
    RandomKTree { n: usize, k: usize, seed: u64 },
}

pub fn generate(family: Family) -> Result<Graph> {
    match family {
        Family::Path { n } => path(n),
        Family::Cycle { n } => cycle(n),
        Family::Complete { n } => complete(n),
        Family::PathPower { n, k } => path_power(n, k),
        Family::Grid { n } => grid(n),
        Family::RandomKTree { n, k, seed } => random_ktree(n, k, seed),
    }
}

fn require_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidParameter("n must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn require_k(n: usize, k: usize) -> Result<()> {
    require_n(n)?;
    if k == 0 || k >= n {
        Err(Error::InvalidParameter(format!(
            "need 1 <= k < n, got k={k}, n={n}"
        )))
    } else {
        Ok(())
    }
}

pub fn path(n: usize) -> Result<Graph> {
    require_n(n)?;
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

/// The `n`-cycle. For `n < 3` there is no simple cycle and the path on `n`
/// vertices is returned instead.
pub fn cycle(n: usize) -> Result<Graph> {
    require_n(n)?;
    if n < 3 {
        return path(n);
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Result<Graph> {
    require_n(n)?;
    Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

/// `P_n^k`: vertices `0..n`, edge `ij` iff `0 < |i - j| <= k`.
pub fn path_power(n: usize, k: usize) -> Result<Graph> {
    require_k(n, k)?;
    Graph::from_edges(
        n,
        (0..n).flat_map(|i| (i + 1..n.min(i + k + 1)).map(move |j| (i, j))),
    )
}

/// The `n x n` planar grid, `P_n □ P_n` with flat ids.
pub fn grid(n: usize) -> Result<Graph> {
    let p = path(n)?;
    Ok(cartesian_product(&p, &p)?.graph().clone())
}

/// A random `k`-tree on `n` vertices: a `(k+1)`-clique on `0..=k`, then each
/// further vertex is joined to a uniformly chosen existing `k`-clique.
pub fn random_ktree(n: usize, k: usize, seed: u64) -> Result<Graph> {
    require_k(n, k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = (0..=k)
        .flat_map(|i| (i + 1..=k).map(move |j| (i, j)))
        .collect();
    let base: Vec<usize> = (0..=k).collect();
    let mut cliques: Vec<Vec<usize>> = (0..=k)
        .map(|skip| base.iter().copied().filter(|&v| v != skip).collect())
        .collect();
    for v in k + 1..n {
        let clique = cliques[rng.gen_range(0..cliques.len())].clone();
        edges.extend(clique.iter().map(|&u| (u, v)));
        for skip in 0..k {
            let mut next = clique.clone();
            next[skip] = v;
            next.sort_unstable();
            cliques.push(next);
        }
    }
    edges.shuffle(&mut rng);
    Graph::from_edges(n, edges)
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Path { n } => write!(f, "path:n={n}"),
            Family::Cycle { n } => write!(f, "cycle:n={n}"),
            Family::Complete { n } => write!(f, "complete:n={n}"),
            Family::PathPower { n, k } => write!(f, "pathpower:n={n},k={k}"),
            Family::Grid { n } => write!(f, "grid:n={n}"),
            Family::RandomKTree { n, k, seed } => write!(f, "ktree:n={n},k={k},seed={seed}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Parses `name:key=value,...`, e.g. `pathpower:n=5,k=2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::InvalidParameter(format!("family spec `{s}`: {msg}"));
        let (name, params) = s.split_once(':').unwrap_or((s, ""));
        let mut n = None;
        let mut k = None;
        let mut seed = None;
        for kv in params.split(',').filter(|p| !p.is_empty()) {
            let (key, value) = kv
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, got `{kv}`")))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| bad(format!("`{value}` is not a non-negative integer")))?;
            match key.trim() {
                "n" => n = Some(value as usize),
                "k" => k = Some(value as usize),
                "seed" => seed = Some(value),
                other => return Err(bad(format!("unknown parameter `{other}`"))),
            }
        }
        let need = |v: Option<usize>, key: &str| v.ok_or_else(|| bad(format!("missing `{key}`")));
        let family = match name.trim() {
            "path" => Family::Path { n: need(n, "n")? },
            "cycle" => Family::Cycle { n: need(n, "n")? },
            "complete" => Family::Complete { n: need(n, "n")? },
            "pathpower" => Family::PathPower {
                n: need(n, "n")?,
                k: need(k, "k")?,
            },
            "grid" => Family::Grid { n: need(n, "n")? },
            "ktree" => Family::RandomKTree {
                n: need(n, "n")?,
                k: need(k, "k")?,
                seed: seed.ok_or_else(|| bad("random families need an explicit `seed`".into()))?,
            },
            other => return Err(bad(format!("unknown family `{other}`"))),
        };
        Ok(family)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_power_edges() {
        assert_eq!(path_power(5, 2).unwrap().edge_count(), 7);
        assert_eq!(path_power(6, 1).unwrap(), path(6).unwrap());
        let g = path_power(7, 3).unwrap();
        for i in 0..7 {
            for j in 0..7 {
                assert_eq!(g.has_edge(i, j), i != j && i.abs_diff(j) <= 3);
            }
        }
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(path_power(4, 4), Err(Error::InvalidParameter(_))));
        assert!(matches!(path_power(4, 0), Err(Error::InvalidParameter(_))));
        assert!(matches!(
            random_ktree(3, 3, 0),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(path(0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn cycle_and_grid_sizes() {
        let c = cycle(4).unwrap();
        assert_eq!((c.vertex_count(), c.edge_count()), (4, 4));
        let g = grid(3).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (9, 12));
    }

    #[test]
    fn ktree_is_deterministic_with_expected_size() {
        let a = random_ktree(10, 3, 42).unwrap();
        let b = random_ktree(10, 3, 42).unwrap();
        assert_eq!(a, b);
        // (k+1 choose 2) + k per additional vertex
        assert_eq!(a.edge_count(), 6 + 3 * 6);
    }

    #[test]
    fn family_specs_parse_and_print() {
        for s in [
            "path:n=3",
            "cycle:n=6",
            "complete:n=4",
            "pathpower:n=5,k=2",
            "grid:n=3",
            "ktree:n=8,k=2,seed=7",
        ] {
            let f: Family = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert!("ktree:n=8,k=2".parse::<Family>().is_err());
        assert!("wheel:n=8".parse::<Family>().is_err());
        assert!("path:m=8".parse::<Family>().is_err());
    }
}
