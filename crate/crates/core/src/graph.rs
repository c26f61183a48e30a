//! Small undirected-graph helpers shared by the flag-completion code paths.

/// Maximal cliques of the graph on `0..n` given by a symmetric adjacency
/// matrix, via Bron–Kerbosch with pivoting. Each clique is returned sorted and
/// the list is sorted lexicographically, so output is deterministic.
pub(crate) fn maximal_cliques(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut out = Vec::new();
    let mut current = Vec::new();
    let candidates: Vec<usize> = (0..n).collect();
    bron_kerbosch(adj, &mut current, candidates, Vec::new(), &mut out);
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    out
}

fn bron_kerbosch(
    adj: &[Vec<bool>],
    current: &mut Vec<usize>,
    candidates: Vec<usize>,
    excluded: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if candidates.is_empty() {
        if excluded.is_empty() {
            out.push(current.clone());
        }
        return;
    }
    // pivot: vertex of P ∪ X with most neighbours in P
    let pivot = candidates
        .iter()
        .chain(excluded.iter())
        .copied()
        .max_by_key(|&u| candidates.iter().filter(|&&v| adj[u][v]).count())
        .expect("nonempty");
    let branch: Vec<usize> = candidates
        .iter()
        .copied()
        .filter(|&v| !adj[pivot][v])
        .collect();
    let mut candidates = candidates;
    let mut excluded = excluded;
    for v in branch {
        let next_p = candidates.iter().copied().filter(|&u| adj[v][u]).collect();
        let next_x = excluded.iter().copied().filter(|&u| adj[v][u]).collect();
        current.push(v);
        bron_kerbosch(adj, current, next_p, next_x, out);
        current.pop();
        candidates.retain(|&u| u != v);
        excluded.push(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; n]; n];
        for &(a, b) in edges {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        adj
    }

    #[test]
    fn triangle_plus_pendant() {
        let adj = adjacency(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        assert_eq!(maximal_cliques(&adj), vec![vec![0, 1, 2], vec![2, 3]]);
    }

    #[test]
    fn isolated_vertices_are_cliques() {
        let adj = adjacency(3, &[(0, 1)]);
        assert_eq!(maximal_cliques(&adj), vec![vec![0, 1], vec![2]]);
    }
}
