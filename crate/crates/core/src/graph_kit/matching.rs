use std::collections::VecDeque;

/// Bipartite graph with `left` and `right` vertex counts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BipartiteGraph {
    pub left: usize,
    pub right: usize,
    pub edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize, edges: Vec<(usize, usize)>) -> Self {
        assert!(
            edges.iter().all(|&(l, r)| l < left && r < right),
            "bipartite edge out of range"
        );
        Self { left, right, edges }
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.left];
        for &(l, r) in &self.edges {
            adj[l].push(r);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }
}

/// Matched `(left, right)` pairs, sorted by left index.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

const NIL: usize = usize::MAX;

/// Hopcroft–Karp: BFS layers from free left vertices, then vertex-disjoint
/// shortest augmenting paths by DFS, until no augmenting path remains.
pub fn max_bipartite_matching(b: &BipartiteGraph) -> Matching {
    let adj = b.adjacency();
    let mut match_l = vec![NIL; b.left];
    let mut match_r = vec![NIL; b.right];
    let mut dist = vec![0usize; b.left];

    loop {
        // layering
        let mut queue = VecDeque::new();
        for l in 0..b.left {
            if match_l[l] == NIL {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                let next = match_r[r];
                if next == NIL {
                    found = true;
                } else if dist[next] == usize::MAX {
                    dist[next] = dist[l] + 1;
                    queue.push_back(next);
                }
            }
        }
        if !found {
            break;
        }
        let mut ptr = vec![0usize; b.left];
        for l in 0..b.left {
            if match_l[l] == NIL {
                augment(l, &adj, &mut match_l, &mut match_r, &mut dist, &mut ptr);
            }
        }
    }

    Matching {
        pairs: match_l
            .iter()
            .enumerate()
            .filter(|&(_, &r)| r != NIL)
            .map(|(l, &r)| (l, r))
            .collect(),
    }
}

/// Iterative layered DFS from a free left vertex.
fn augment(
    start: usize,
    adj: &[Vec<usize>],
    match_l: &mut [usize],
    match_r: &mut [usize],
    dist: &mut [usize],
    ptr: &mut [usize],
) -> bool {
    let mut path: Vec<usize> = vec![start];
    while let Some(&l) = path.last() {
        if let Some(&r) = adj[l].get(ptr[l]) {
            ptr[l] += 1;
            let next = match_r[r];
            if next == NIL {
                // flip along the path
                let mut r = r;
                for &pl in path.iter().rev() {
                    let prev = match_l[pl];
                    match_l[pl] = r;
                    match_r[r] = pl;
                    r = prev;
                }
                return true;
            }
            if dist[next] == dist[l] + 1 {
                path.push(next);
            }
        } else {
            dist[l] = usize::MAX;
            path.pop();
        }
    }
    false
}
