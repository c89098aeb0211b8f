//! Brute-force oracles written without the library's algorithms. They only
//! read adjacency through `Graph::has_edge` and `Graph::vertex_count`.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use cartwidth::decomposition::TreeDecomposition;
use cartwidth::Graph;

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    (0..n)
        .map(|u| (0..n).map(|v| u != v && g.has_edge(u, v)).collect())
        .collect()
}

/// Connectivity of `set` by BFS restricted to it; the empty set is not connected.
pub fn connected(g: &Graph, set: &BTreeSet<usize>) -> bool {
    let Some(&start) = set.iter().next() else {
        return false;
    };
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &v in set {
            if !seen.contains(&v) && g.has_edge(u, v) {
                seen.insert(v);
                queue.push_back(v);
            }
        }
    }
    seen.len() == set.len()
}

pub fn touching(g: &Graph, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> bool {
    a.iter()
        .any(|&x| b.contains(&x) || b.iter().any(|&y| g.has_edge(x, y)))
}

/// Width of eliminating vertices in `order`.
fn elimination_width(adj: &[Vec<bool>], order: &[usize]) -> usize {
    let mut adj = adj.to_vec();
    let mut gone = vec![false; adj.len()];
    let mut width = 0;
    for &v in order {
        let nbrs: Vec<usize> = (0..adj.len()).filter(|&u| !gone[u] && adj[v][u]).collect();
        width = width.max(nbrs.len());
        for &a in &nbrs {
            for &b in &nbrs {
                if a != b {
                    adj[a][b] = true;
                }
            }
        }
        gone[v] = true;
    }
    width
}

/// Treewidth as the minimum elimination width over all orderings.
/// Feasible up to about 9 vertices.
pub fn brute_treewidth(g: &Graph) -> usize {
    let adj = adjacency(g);
    let n = adj.len();
    let mut best = n.saturating_sub(1);
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        best = best.min(elimination_width(&adj, p))
    });
    best
}

/// Bandwidth as the minimum over all layouts. Feasible up to about 9 vertices.
pub fn brute_bandwidth(g: &Graph) -> usize {
    let adj = adjacency(g);
    let n = adj.len();
    let mut best = n.saturating_sub(1);
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        let mut w = 0;
        for i in 0..n {
            for j in i + 1..n {
                if adj[p[i]][p[j]] {
                    w = w.max(j - i);
                }
            }
        }
        best = best.min(w);
    });
    best
}

fn permutations(p: &mut Vec<usize>, i: usize, f: &mut dyn FnMut(&[usize])) {
    if i == p.len() {
        f(p);
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permutations(p, i + 1, f);
        p.swap(i, j);
    }
}

/// Smallest set meeting every element, by enumerating subsets of `0..n`
/// in order of size. `n` at most about 20.
pub fn brute_hitting_set(n: usize, elements: &[BTreeSet<usize>]) -> usize {
    let masks: Vec<u32> = elements
        .iter()
        .map(|e| e.iter().fold(0u32, |m, &v| m | (1 << v)))
        .collect();
    (0u32..1 << n)
        .filter(|s| masks.iter().all(|m| m & s != 0))
        .map(u32::count_ones)
        .min()
        .expect("the full set hits everything") as usize
}

/// Minimum number of vertices whose removal disconnects `g` (or leaves one
/// vertex), by enumerating removal sets.
pub fn brute_connectivity(g: &Graph) -> usize {
    let n = g.vertex_count();
    for size in 0..n.saturating_sub(1) {
        let mut found = false;
        for_each_subset(n, size, &mut |removed| {
            let rest: BTreeSet<usize> = (0..n).filter(|v| !removed.contains(v)).collect();
            if !connected(g, &rest) {
                found = true;
            }
        });
        if found {
            return size;
        }
    }
    n.saturating_sub(1)
}

pub fn for_each_subset(n: usize, size: usize, f: &mut dyn FnMut(&BTreeSet<usize>)) {
    fn go(
        start: usize,
        n: usize,
        left: usize,
        cur: &mut BTreeSet<usize>,
        f: &mut dyn FnMut(&BTreeSet<usize>),
    ) {
        if left == 0 {
            f(cur);
            return;
        }
        for v in start..n {
            if n - v < left {
                break;
            }
            cur.insert(v);
            go(v + 1, n, left - 1, cur, f);
            cur.remove(&v);
        }
    }
    go(0, n, size, &mut BTreeSet::new(), f);
}

/// Edge coverage plus connected occurrence subtrees, checked directly.
pub fn decomposition_is_valid(td: &TreeDecomposition, g: &Graph) -> bool {
    let n = g.vertex_count();
    let bags = td.bags();
    if bags.iter().flatten().any(|&v| v >= n) {
        return false;
    }
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) && !bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
                return false;
            }
        }
    }
    for v in 0..n {
        let holding: BTreeSet<usize> = (0..bags.len()).filter(|&i| bags[i].contains(&v)).collect();
        let Some(&start) = holding.iter().next() else {
            return false;
        };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(a) = queue.pop_front() {
            for &(x, y) in td.tree_edges() {
                let other = if x == a {
                    y
                } else if y == a {
                    x
                } else {
                    continue;
                };
                if holding.contains(&other) && seen.insert(other) {
                    queue.push_back(other);
                }
            }
        }
        if seen.len() != holding.len() {
            return false;
        }
    }
    true
}
