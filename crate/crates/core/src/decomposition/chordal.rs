use crate::graph::Graph;

/// A perfect elimination ordering of `g`, if one exists.
///
/// Maximum cardinality search visits vertices in order of most visited
/// neighbours (ties to the smallest id); the reverse visit order is a perfect
/// elimination ordering exactly when `g` is chordal.
pub fn perfect_elimination_ordering(g: &Graph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !visited[v])
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("unvisited vertex");
        visited[v] = true;
        visit.push(v);
        for &u in g.neighbors(v) {
            if !visited[u] {
                weight[u] += 1;
            }
        }
    }
    visit.reverse();
    is_perfect_elimination_ordering(g, &visit).then_some(visit)
}

pub fn is_chordal(g: &Graph) -> bool {
    perfect_elimination_ordering(g).is_some()
}

fn is_perfect_elimination_ordering(g: &Graph, order: &[usize]) -> bool {
    let mut position = vec![0; g.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    // For each v, its later neighbours minus the earliest one (u) must all be
    // adjacent to u.
    order.iter().all(|&v| {
        let later: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| position[u] > position[v])
            .collect();
        match later.iter().min_by_key(|&&u| position[u]) {
            None => true,
            Some(&u) => later.iter().all(|&x| x == u || g.has_edge(u, x)),
        }
    })
}

/// Clique number of a chordal graph, read off a perfect elimination ordering.
/// Returns `None` for non-chordal graphs.
pub fn chordal_clique_number(g: &Graph) -> Option<usize> {
    let order = perfect_elimination_ordering(g)?;
    let mut position = vec![0; g.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    order
        .iter()
        .map(|&v| {
            1 + g
                .neighbors(v)
                .iter()
                .filter(|&&u| position[u] > position[v])
                .count()
        })
        .max()
        .or(Some(0))
}
