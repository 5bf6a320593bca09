//! Maximum bipartite matching (Hopcroft–Karp).

use std::collections::VecDeque;

const NIL: usize = usize::MAX;

/// Maximum matching of a bipartite graph given by left-side adjacency
/// lists. Neighbours are tried in the order given, so sorted adjacency
/// lists give a deterministic result.
///
/// Returns `mate[u]`, the right vertex matched to left vertex `u`.
pub fn hopcroft_karp(adj: &[Vec<usize>], right_len: usize) -> Vec<Option<usize>> {
    let left_len = adj.len();
    let mut mate_left = vec![NIL; left_len];
    let mut mate_right = vec![NIL; right_len];
    let mut dist = vec![0usize; left_len];

    loop {
        // layer the free left vertices
        let mut queue = VecDeque::new();
        for u in 0..left_len {
            if mate_left[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = NIL;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = mate_right[v];
                if w == NIL {
                    found = true;
                } else if dist[w] == NIL {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        let mut it = vec![0usize; left_len];
        for u in 0..left_len {
            if mate_left[u] == NIL {
                augment(u, adj, &mut mate_left, &mut mate_right, &mut dist, &mut it);
            }
        }
    }
    mate_left
        .into_iter()
        .map(|v| if v == NIL { None } else { Some(v) })
        .collect()
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    mate_left: &mut [usize],
    mate_right: &mut [usize],
    dist: &mut [usize],
    it: &mut [usize],
) -> bool {
    while it[u] < adj[u].len() {
        let v = adj[u][it[u]];
        it[u] += 1;
        let w = mate_right[v];
        let ok = w == NIL
            || (dist[w] == dist[u].wrapping_add(1)
                && augment(w, adj, mate_left, mate_right, dist, it));
        if ok {
            mate_left[u] = v;
            mate_right[v] = u;
            return true;
        }
    }
    dist[u] = NIL;
    false
}
