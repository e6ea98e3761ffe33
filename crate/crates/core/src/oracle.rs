//! Independent ground-truth generators: brute-force hypervolume and Pareto
//! fronts for small instances, random-walk cover times on grid graphs, and
//! exact maximum antichains of the dominance order via minimum chain cover.

use std::collections::VecDeque;

use rand::Rng;

use crate::benchmark::Benchmark;
use crate::bitstring::Bitstring;
use crate::error::{ConfigError, DimensionMismatch};
use crate::fitness::{compare_slices, Dominance, FitnessVector};
use crate::hypervolume::ReferencePoint;

/// Brute-force hypervolume: count every unit lattice cell dominated by some
/// point. Exponential in `m`; intended as an oracle for small inputs only.
pub fn lattice_hypervolume(
    points: &[FitnessVector],
    h: &ReferencePoint,
) -> Result<u64, DimensionMismatch> {
    let m = h.m();
    for p in points {
        if p.m() != m {
            return Err(DimensionMismatch { left: p.m(), right: m });
        }
    }
    if points.is_empty() {
        return Ok(0);
    }
    let lo = h.values();
    let hi: Vec<i64> = (0..m)
        .map(|i| points.iter().map(|p| p[i] as i64).max().unwrap())
        .collect();
    let mut cell = lo.to_vec();
    let mut count = 0u64;
    'outer: loop {
        // Cell [u, u+1) is dominated iff some point exceeds u in every axis.
        if points
            .iter()
            .any(|p| (0..m).all(|i| (p[i] as i64) > cell[i]))
        {
            count += 1;
        }
        for i in 0..m {
            cell[i] += 1;
            if cell[i] < hi[i] {
                continue 'outer;
            }
            cell[i] = lo[i];
        }
        break;
    }
    Ok(count)
}

/// How the walk chooses its next node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WalkMode {
    /// Uniform over incident edges; counted in moves.
    Simple,
    /// One uniform draw from `1..=denominator` per step; the first `2k`
    /// indices map to the axis-direction moves (probability `1/denominator`
    /// each), every other index and every blocked boundary move stays put.
    /// This is exactly the move law of the PAES-25 current solution walking
    /// the m-LOTZ front under one-bit mutation, with `denominator = n`.
    /// Counted in steps, idle steps included.
    Lazy { denominator: usize },
}

/// A random walk on the k-fold product of a path graph.
#[derive(Clone, Debug)]
pub struct GridWalkConfig {
    pub dims: usize,
    pub axis_nodes: usize,
    pub mode: WalkMode,
    pub start: Vec<usize>,
}

impl GridWalkConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let ok = self.dims >= 1
            && self.axis_nodes >= 2
            && self.start.len() == self.dims
            && self.start.iter().all(|&s| s < self.axis_nodes)
            && match self.mode {
                WalkMode::Simple => true,
                WalkMode::Lazy { denominator } => denominator >= 2 * self.dims,
            };
        if ok {
            Ok(())
        } else {
            Err(ConfigError::InstanceTooLarge(format!(
                "invalid grid walk config: {self:?}"
            )))
        }
    }
}

/// Steps until every node of the grid has been visited.
pub fn cover_time<R: Rng + ?Sized>(cfg: &GridWalkConfig, rng: &mut R) -> u64 {
    cfg.validate().expect("valid walk config");
    let k = cfg.dims;
    let n_axis = cfg.axis_nodes;
    let total_nodes: usize = n_axis.pow(k as u32);
    let mut visited = vec![false; total_nodes];
    let mut seen = 0usize;
    let mut node = cfg.start.clone();
    let index = |node: &[usize]| -> usize {
        node.iter().fold(0usize, |acc, &c| acc * n_axis + c)
    };
    let visit = |node: &[usize], visited: &mut [bool], seen: &mut usize| {
        let i = index(node);
        if !visited[i] {
            visited[i] = true;
            *seen += 1;
        }
    };
    visit(&node, &mut visited, &mut seen);
    let mut steps = 0u64;
    let mut moves: Vec<(usize, isize)> = Vec::with_capacity(2 * k);
    while seen < total_nodes {
        steps += 1;
        match cfg.mode {
            WalkMode::Simple => {
                moves.clear();
                for (axis, &position) in node.iter().enumerate() {
                    if position > 0 {
                        moves.push((axis, -1));
                    }
                    if position + 1 < n_axis {
                        moves.push((axis, 1));
                    }
                }
                let (axis, dir) = moves[rng.gen_range(0..moves.len())];
                node[axis] = (node[axis] as isize + dir) as usize;
                visit(&node, &mut visited, &mut seen);
            }
            WalkMode::Lazy { denominator } => {
                let draw = rng.gen_range(0..denominator);
                if draw < 2 * k {
                    let axis = draw / 2;
                    let dir: isize = if draw % 2 == 0 { 1 } else { -1 };
                    let target = node[axis] as isize + dir;
                    if target >= 0 && (target as usize) < n_axis {
                        node[axis] = target as usize;
                        visit(&node, &mut visited, &mut seen);
                    }
                }
            }
        }
    }
    steps
}

/// Non-dominated fitness vectors over all of `{0,1}^n`, by exhaustive
/// enumeration. Refuses instances beyond `n = 20`.
pub fn brute_force_front(bench: &Benchmark) -> Result<Vec<FitnessVector>, ConfigError> {
    let n = bench.n();
    if n > 20 {
        return Err(ConfigError::InstanceTooLarge(format!(
            "brute-force front enumerates 2^n genotypes, n={n} is too large"
        )));
    }
    let mut distinct: Vec<FitnessVector> = Vec::new();
    for bits in 0u64..(1u64 << n) {
        let x = Bitstring::from_u64_bits(bits, n as usize);
        let v = bench.evaluate(&x);
        if !distinct.contains(&v) {
            distinct.push(v);
        }
    }
    let mut front: Vec<FitnessVector> = distinct
        .iter()
        .filter(|v| {
            !distinct
                .iter()
                .any(|u| u.dominance(v) == Dominance::StrictlyDominates)
        })
        .cloned()
        .collect();
    front.sort_unstable_by(|a, b| a.values().cmp(b.values()));
    Ok(front)
}

/// All distinct attainable fitness vectors, enumerated without walking the
/// whole search space. A block of m-LOTZ can realize (lo, tz) exactly when
/// lo + tz equals the block length or leaves at least two free positions.
pub fn attainable_fitness(bench: &Benchmark) -> Vec<FitnessVector> {
    match *bench {
        Benchmark::MLotz { m, n } => {
            let block = 2 * n / m;
            let mut pairs: Vec<(u32, u32)> = Vec::new();
            for lo in 0..=block {
                for tz in 0..=block - lo {
                    if lo + tz == block || lo + tz + 2 <= block {
                        pairs.push((lo, tz));
                    }
                }
            }
            let blocks = (m / 2) as usize;
            let mut out = Vec::new();
            let mut idx = vec![0usize; blocks];
            loop {
                let mut v = FitnessVector::new([]);
                for &i in &idx {
                    v.push(pairs[i].0);
                    v.push(pairs[i].1);
                }
                out.push(v);
                let mut j = blocks;
                loop {
                    if j == 0 {
                        return out;
                    }
                    j -= 1;
                    if idx[j] + 1 < pairs.len() {
                        idx[j] += 1;
                        break;
                    }
                    idx[j] = 0;
                }
            }
        }
        Benchmark::Omm { n } => (0..=n).map(|i| FitnessVector::new([i, n - i])).collect(),
        Benchmark::Cocz { n } => {
            let half = n / 2;
            let mut out = Vec::new();
            for first_ones in 0..=half {
                for second_ones in 0..=half {
                    out.push(FitnessVector::new([
                        first_ones + second_ones,
                        first_ones + half - second_ones,
                    ]));
                }
            }
            out.sort_unstable_by(|a, b| a.values().cmp(b.values()));
            out.dedup();
            out
        }
    }
}

const MAX_ANTICHAIN_VECTORS: usize = 2048;

/// Maximum cardinality of a set of pairwise incomparable fitness vectors,
/// via Dilworth duality: the dominance order is a DAG whose minimum chain
/// cover is `N - maximum bipartite matching` on its comparability edges.
pub fn max_antichain_size(bench: &Benchmark) -> Result<usize, ConfigError> {
    let vectors = attainable_fitness(bench);
    if vectors.len() > MAX_ANTICHAIN_VECTORS {
        return Err(ConfigError::InstanceTooLarge(format!(
            "{} distinct fitness vectors exceed the exact antichain limit of {}",
            vectors.len(),
            MAX_ANTICHAIN_VECTORS
        )));
    }
    let n = vectors.len();
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            if i != j
                && compare_slices(vectors[i].values(), vectors[j].values())
                    == Dominance::StrictlyDominates
            {
                adjacency[i].push(j);
            }
        }
    }
    let matching = hopcroft_karp(&adjacency, n);
    Ok(n - matching)
}

/// Maximum matching in a bipartite graph given as left-side adjacency lists.
fn hopcroft_karp(adjacency: &[Vec<usize>], right_size: usize) -> usize {
    const NIL: usize = usize::MAX;
    let left_size = adjacency.len();
    let mut match_left = vec![NIL; left_size];
    let mut match_right = vec![NIL; right_size];
    let mut dist = vec![0u32; left_size];
    let mut total = 0usize;

    loop {
        // BFS layers from free left vertices.
        let mut queue = VecDeque::new();
        for u in 0..left_size {
            if match_left[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = u32::MAX;
            }
        }
        let mut found_augmenting = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adjacency[u] {
                match match_right[v] {
                    NIL => found_augmenting = true,
                    w => {
                        if dist[w] == u32::MAX {
                            dist[w] = dist[u] + 1;
                            queue.push_back(w);
                        }
                    }
                }
            }
        }
        if !found_augmenting {
            break;
        }
        fn dfs(
            u: usize,
            adjacency: &[Vec<usize>],
            match_left: &mut [usize],
            match_right: &mut [usize],
            dist: &mut [u32],
        ) -> bool {
            const NIL: usize = usize::MAX;
            for idx in 0..adjacency[u].len() {
                let v = adjacency[u][idx];
                let w = match_right[v];
                if w == NIL
                    || (dist[w] == dist[u] + 1 && dfs(w, adjacency, match_left, match_right, dist))
                {
                    match_left[u] = v;
                    match_right[v] = u;
                    return true;
                }
            }
            dist[u] = u32::MAX;
            false
        }
        for u in 0..left_size {
            if match_left[u] == NIL && dfs(u, adjacency, &mut match_left, &mut match_right, &mut dist)
            {
                total += 1;
            }
        }
    }
    total
}
