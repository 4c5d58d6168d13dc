//! Maximum bipartite matching via Hopcroft-Karp.
//!
//! The lca and height-1 checkers reduce their per-node questions to
//! maximum matching; this is the shared engine. Vertices are dense
//! indices on each side, 0..left_count and 0..right_count.

use fixedbitset::FixedBitSet;

#[derive(Clone, Debug)]
pub struct BipartiteGraph {
    left_count: usize,
    right_count: usize,
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(left_count: usize, right_count: usize) -> BipartiteGraph {
        BipartiteGraph {
            left_count,
            right_count,
            adj: vec![Vec::new(); left_count],
        }
    }

    pub fn add_edge(&mut self, left: usize, right: usize) {
        assert!(left < self.left_count && right < self.right_count);
        self.adj[left].push(right);
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn neighbors(&self, left: usize) -> &[usize] {
        &self.adj[left]
    }
}

#[derive(Clone, Debug)]
pub struct Matching {
    left_to_right: Vec<Option<usize>>,
    right_to_left: Vec<Option<usize>>,
    size: usize,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn right_of(&self, left: usize) -> Option<usize> {
        self.left_to_right[left]
    }

    pub fn left_of(&self, right: usize) -> Option<usize> {
        self.right_to_left[right]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.left_to_right
            .iter()
            .enumerate()
            .filter_map(|(l, r)| r.map(|r| (l, r)))
    }

    /// Every left vertex is matched.
    pub fn is_left_perfect(&self) -> bool {
        self.size == self.left_to_right.len()
    }
}

const UNMATCHED: usize = usize::MAX;

/// Hopcroft-Karp: repeat BFS layering from free left vertices, then
/// augment along disjoint shortest paths found by DFS. O(E sqrt(V)).
pub fn max_bipartite_matching(g: &BipartiteGraph) -> Matching {
    let mut match_l = vec![UNMATCHED; g.left_count];
    let mut match_r = vec![UNMATCHED; g.right_count];
    let mut dist = vec![0u32; g.left_count];
    let mut queue = Vec::with_capacity(g.left_count);
    let mut size = 0;

    loop {
        // BFS from free left vertices; dist counts left-side layers.
        const FAR: u32 = u32::MAX;
        queue.clear();
        for l in 0..g.left_count {
            if match_l[l] == UNMATCHED {
                dist[l] = 0;
                queue.push(l);
            } else {
                dist[l] = FAR;
            }
        }
        let mut layer_of_free_right = FAR;
        let mut head = 0;
        while head < queue.len() {
            let l = queue[head];
            head += 1;
            if dist[l] >= layer_of_free_right {
                continue;
            }
            for &r in &g.adj[l] {
                match match_r[r] {
                    UNMATCHED => layer_of_free_right = layer_of_free_right.min(dist[l] + 1),
                    l2 => {
                        if dist[l2] == FAR {
                            dist[l2] = dist[l] + 1;
                            queue.push(l2);
                        }
                    }
                }
            }
        }
        if layer_of_free_right == FAR {
            break;
        }

        // DFS along layered edges, augmenting vertex-disjoint paths.
        fn augment(
            g: &BipartiteGraph,
            l: usize,
            match_l: &mut [usize],
            match_r: &mut [usize],
            dist: &mut [u32],
        ) -> bool {
            for i in 0..g.adj[l].len() {
                let r = g.adj[l][i];
                let next = match_r[r];
                let reachable = if next == UNMATCHED {
                    true
                } else if dist[next] == dist[l] + 1 {
                    augment(g, next, match_l, match_r, dist)
                } else {
                    false
                };
                if reachable {
                    match_l[l] = r;
                    match_r[r] = l;
                    return true;
                }
            }
            dist[l] = u32::MAX;
            false
        }
        for l in 0..g.left_count {
            if match_l[l] == UNMATCHED && augment(g, l, &mut match_l, &mut match_r, &mut dist) {
                size += 1;
            }
        }
    }

    let matching = Matching {
        left_to_right: match_l
            .iter()
            .map(|&r| (r != UNMATCHED).then_some(r))
            .collect(),
        right_to_left: match_r
            .iter()
            .map(|&l| (l != UNMATCHED).then_some(l))
            .collect(),
        size,
    };
    debug_assert!(no_augmenting_path(g, &matching));
    matching
}

/// Maximality certificate: a matching is maximum iff no augmenting
/// path exists (alternating, from a free left to a free right vertex).
fn no_augmenting_path(g: &BipartiteGraph, m: &Matching) -> bool {
    let mut visited = FixedBitSet::with_capacity(g.right_count.max(1));
    fn reach_free(g: &BipartiteGraph, m: &Matching, l: usize, visited: &mut FixedBitSet) -> bool {
        for &r in &g.adj[l] {
            if visited.contains(r) {
                continue;
            }
            visited.insert(r);
            match m.left_of(r) {
                None => return true,
                Some(l2) => {
                    if reach_free(g, m, l2, visited) {
                        return true;
                    }
                }
            }
        }
        false
    }
    (0..g.left_count).all(|l| {
        if m.right_of(l).is_some() {
            return true;
        }
        visited.clear();
        !reach_free(g, m, l, &mut visited)
    })
}
