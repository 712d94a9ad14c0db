//! Hopcroft–Karp maximum bipartite matching with deterministic adjacency.

use std::collections::VecDeque;

const NIL: usize = usize::MAX;

/// Maximum matching of the bipartite graph given by `adj` (left vertex →
/// sorted right neighbors). Returns `match_of_left[l] = Some(r)`.
pub fn hopcroft_karp(left: usize, right: usize, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    assert_eq!(adj.len(), left);
    let mut match_l = vec![NIL; left];
    let mut match_r = vec![NIL; right];
    let mut dist = vec![0usize; left];

    loop {
        // BFS layers from free left vertices
        let mut queue = VecDeque::new();
        for l in 0..left {
            if match_l[l] == NIL {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = NIL;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                let l2 = match_r[r];
                if l2 == NIL {
                    found = true;
                } else if dist[l2] == NIL {
                    dist[l2] = dist[l] + 1;
                    queue.push_back(l2);
                }
            }
        }
        if !found {
            break;
        }
        // DFS augmenting along layers
        fn dfs(
            l: usize,
            adj: &[Vec<usize>],
            match_l: &mut [usize],
            match_r: &mut [usize],
            dist: &mut [usize],
        ) -> bool {
            for &r in &adj[l] {
                let l2 = match_r[r];
                if l2 == NIL || (dist[l2] == dist[l] + 1 && dfs(l2, adj, match_l, match_r, dist)) {
                    match_l[l] = r;
                    match_r[r] = l;
                    return true;
                }
            }
            dist[l] = NIL;
            false
        }
        for l in 0..left {
            if match_l[l] == NIL && dist[l] == 0 {
                dfs(l, adj, &mut match_l, &mut match_r, &mut dist);
            }
        }
    }

    match_l.into_iter().map(|r| if r == NIL { None } else { Some(r) }).collect()
}

pub fn matching_size(m: &[Option<usize>]) -> usize {
    m.iter().filter(|r| r.is_some()).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// exponential brute force, the oracle for small instances
    pub fn brute_force_max_matching(left: usize, right: usize, adj: &[Vec<usize>]) -> usize {
        fn go(l: usize, left: usize, used: &mut Vec<bool>, adj: &[Vec<usize>]) -> usize {
            if l == left {
                return 0;
            }
            let mut best = go(l + 1, left, used, adj);
            for &r in &adj[l] {
                if !used[r] {
                    used[r] = true;
                    best = best.max(1 + go(l + 1, left, used, adj));
                    used[r] = false;
                }
            }
            best
        }
        let mut used = vec![false; right];
        go(0, left, &mut used, adj)
    }

    #[test]
    fn perfect_matching_on_cycle() {
        let adj = vec![vec![0, 1], vec![1, 2], vec![2, 0]];
        let m = hopcroft_karp(3, 3, &adj);
        assert_eq!(matching_size(&m), 3);
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        let mut rng = crate::rng::SplitMix64::new(99);
        for _ in 0..60 {
            let left = 1 + rng.usize_below(6);
            let right = 1 + rng.usize_below(6);
            let adj: Vec<Vec<usize>> = (0..left)
                .map(|_| {
                    let mut n: Vec<usize> =
                        (0..right).filter(|_| rng.bool()).collect();
                    n.sort_unstable();
                    n
                })
                .collect();
            let hk = matching_size(&hopcroft_karp(left, right, &adj));
            let bf = brute_force_max_matching(left, right, &adj);
            assert_eq!(hk, bf);
        }
    }

    #[test]
    fn deterministic_output() {
        let adj = vec![vec![0, 1], vec![0, 1]];
        let a = hopcroft_karp(2, 2, &adj);
        let b = hopcroft_karp(2, 2, &adj);
        assert_eq!(a, b);
    }
}
