//! Partitions of control-state sets into linearly independent groups.

use std::collections::VecDeque;

use crate::f2::{is_independent, rank};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Universe {
    /// All `2^n − 1` nonzero states.
    Nonzero { n: usize },
    /// All states of Hamming weight exactly `k`.
    ConstantWeight { n: usize, k: usize },
}

impl Universe {
    pub fn n(&self) -> usize {
        match *self {
            Universe::Nonzero { n } | Universe::ConstantWeight { n, .. } => n,
        }
    }

    pub fn members(&self) -> Vec<u64> {
        match *self {
            Universe::Nonzero { n } => (1..1u64 << n).collect(),
            Universe::ConstantWeight { n, k } => weight_class(n, k),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependentPartition {
    pub universe: Universe,
    pub groups: Vec<Vec<u64>>,
}

impl IndependentPartition {
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Disjoint exact cover of the universe by full-rank groups of size ≤ n.
    pub fn is_valid(&self) -> bool {
        let n = self.universe.n();
        let mut all: Vec<u64> = self.groups.iter().flatten().copied().collect();
        all.sort_unstable();
        let mut expected = self.universe.members();
        expected.sort_unstable();
        all == expected
            && self
                .groups
                .iter()
                .all(|g| !g.is_empty() && g.len() <= n && is_independent(g))
    }
}

/// All weight-`k` states over `n` bits in increasing order.
pub fn weight_class(n: usize, k: usize) -> Vec<u64> {
    (0..1u64 << n)
        .filter(|v| v.count_ones() as usize == k)
        .collect()
}

pub fn nonzero_bound(n: usize) -> usize {
    ((1usize << n) - 1).div_ceil(n) + 1
}

pub fn constant_weight_bound(n: usize, k: usize) -> usize {
    // ⌈C(n,k) / (n/2)⌉ = ⌈2·C(n,k) / n⌉
    (2 * binomial(n, k)).div_ceil(n)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// First-fit insertion in the given order.
pub fn greedy(vectors: &[u64]) -> Vec<Vec<u64>> {
    let mut groups: Vec<Vec<u64>> = Vec::new();
    for &v in vectors {
        match groups.iter_mut().find(|g| accepts(g, v)) {
            Some(g) => g.push(v),
            None => groups.push(vec![v]),
        }
    }
    groups
}

fn accepts(group: &[u64], v: u64) -> bool {
    let mut g = group.to_vec();
    g.push(v);
    is_independent(&g)
}

fn accepts_swap(group: &[u64], out: u64, v: u64) -> bool {
    let mut g: Vec<u64> = group.iter().copied().filter(|&x| x != out).collect();
    g.push(v);
    is_independent(&g)
}

/// Matroid partition by shortest augmenting paths.
///
/// Each vector is inserted into an existing group, possibly after a chain
/// of exchanges `G_i − z + u`; a new group is opened only when no chain
/// exists, so the group count equals the matroid covering number.
pub fn matroid_partition(vectors: &[u64]) -> Vec<Vec<u64>> {
    let mut groups: Vec<Vec<u64>> = Vec::new();
    let dim = rank(vectors).max(1);
    let lower = vectors.len().div_ceil(dim);
    for _ in 0..lower {
        groups.push(Vec::new());
    }
    for &u in vectors {
        if !augment(&mut groups, u) {
            groups.push(vec![u]);
        }
    }
    groups.retain(|g| !g.is_empty());
    groups
}

fn augment(groups: &mut [Vec<u64>], u: u64) -> bool {
    // BFS over elements; parent records (previous element, group it enters)
    let mut queue = VecDeque::from([u]);
    let mut parent: Vec<(u64, Option<(u64, usize)>)> = vec![(u, None)];
    let lookup = |parent: &Vec<(u64, Option<(u64, usize)>)>, x: u64| {
        parent.iter().find(|(e, _)| *e == x).map(|(_, p)| *p)
    };
    while let Some(x) = queue.pop_front() {
        let home = groups.iter().position(|g| g.contains(&x));
        for (i, g) in groups.iter().enumerate() {
            if Some(i) == home {
                continue;
            }
            if accepts(g, x) {
                // unwind: x joins group i; its predecessor takes x's old slot
                let mut cur = x;
                let mut dest = i;
                loop {
                    if let Some(h) = groups.iter().position(|g| g.contains(&cur)) {
                        groups[h].retain(|&e| e != cur);
                    }
                    groups[dest].push(cur);
                    match lookup(&parent, cur).flatten() {
                        Some((prev, into)) => {
                            cur = prev;
                            dest = into;
                        }
                        None => break,
                    }
                }
                return true;
            }
            for &z in g {
                if lookup(&parent, z).is_none() && accepts_swap(g, z, x) {
                    parent.push((z, Some((x, i))));
                    queue.push_back(z);
                }
            }
        }
    }
    false
}

/// Greedy in (weight, value) order; falls back to matroid partitioning when
/// the greedy count exceeds `bound`.
pub fn partition_with_fallback(vectors: &[u64], bound: usize) -> Vec<Vec<u64>> {
    let mut sorted = vectors.to_vec();
    sorted.sort_unstable_by_key(|&v| (v.count_ones(), v));
    let groups = greedy(&sorted);
    if groups.len() <= bound {
        return groups;
    }
    let alt = matroid_partition(&sorted);
    if alt.len() < groups.len() {
        alt
    } else {
        groups
    }
}

/// Partition of all nonzero states into at most `⌈(2^n−1)/n⌉ + 1` groups.
pub fn partition_nonzero(n: usize) -> IndependentPartition {
    assert!((1..64).contains(&n), "n must be in 1..64");
    let members = Universe::Nonzero { n }.members();
    IndependentPartition {
        universe: Universe::Nonzero { n },
        groups: partition_with_fallback(&members, nonzero_bound(n)),
    }
}

/// Cross-supplement partition of the weight-`k` states.
///
/// Split on the top bit into `A` (top bit clear, weight `k` on `n−1` bits)
/// and `B` (top bit set, weight `k−1` on `n−1` bits), recurse on both, then
/// move `B` members into `A` groups; a vector with the top bit set is
/// independent of any set of vectors without it. For odd `k`, leftover `A`
/// members are moved into the remaining `B` groups.
pub fn partition_constant_weight(n: usize, k: usize) -> IndependentPartition {
    assert!((1..64).contains(&n) && (1..=n).contains(&k), "need 1 ≤ k ≤ n < 64");
    let mut groups = cross_supplement(n, k);
    consolidate(&mut groups, n);
    let bound = constant_weight_bound(n, k);
    if groups.len() > bound {
        let alt = matroid_partition(&weight_class(n, k));
        if alt.len() < groups.len() {
            groups = alt;
        }
    }
    IndependentPartition {
        universe: Universe::ConstantWeight { n, k },
        groups,
    }
}

fn cross_supplement(n: usize, k: usize) -> Vec<Vec<u64>> {
    if k == 1 {
        return vec![(0..n).map(|q| 1u64 << q).collect()];
    }
    if k == n {
        return vec![vec![(1u64 << n) - 1]];
    }
    let top = 1u64 << (n - 1);
    let mut a = cross_supplement(n - 1, k);
    let mut b: Vec<Vec<u64>> = cross_supplement(n - 1, k - 1)
        .into_iter()
        .map(|g| g.into_iter().map(|v| v | top).collect())
        .collect();
    fill(&mut a, &mut b, n);
    if k % 2 == 1 {
        fill(&mut b, &mut a, n);
    }
    a.into_iter().chain(b).filter(|g| !g.is_empty()).collect()
}

/// Moves members of `src` (smallest groups first) into `dst` (largest
/// first) while the receiving group stays independent.
fn fill(dst: &mut [Vec<u64>], src: &mut Vec<Vec<u64>>, n: usize) {
    let mut dst_order: Vec<usize> = (0..dst.len()).collect();
    dst_order.sort_by_key(|&i| std::cmp::Reverse(dst[i].len()));
    for di in dst_order {
        let mut src_order: Vec<usize> = (0..src.len()).collect();
        src_order.sort_by_key(|&i| src[i].len());
        for si in src_order {
            let mut j = 0;
            while j < src[si].len() {
                if dst[di].len() >= n {
                    break;
                }
                let v = src[si][j];
                if accepts(&dst[di], v) {
                    dst[di].push(v);
                    src[si].remove(j);
                } else {
                    j += 1;
                }
            }
        }
    }
    src.retain(|g| !g.is_empty());
}

/// Dissolves a group whenever all its members fit into the others.
fn consolidate(groups: &mut Vec<Vec<u64>>, n: usize) {
    'outer: loop {
        groups.sort_by_key(|g| g.len());
        for i in 0..groups.len() {
            let mut trial: Vec<Vec<u64>> = groups
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let placed = groups[i].iter().all(|&v| {
                let mut order: Vec<usize> = (0..trial.len()).collect();
                order.sort_by_key(|&t| std::cmp::Reverse(trial[t].len()));
                match order
                    .into_iter()
                    .find(|&t| trial[t].len() < n && accepts(&trial[t], v))
                {
                    Some(t) => {
                        trial[t].push(v);
                        true
                    }
                    None => false,
                }
            });
            if placed {
                *groups = trial;
                continue 'outer;
            }
        }
        break;
    }
}
