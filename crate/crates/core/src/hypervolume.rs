//! Exact hypervolume over integer fitness lattices.
//!
//! With integer objectives and an integer reference point `h` (all
//! components <= 0), the hypervolume is the number of unit lattice cells
//! `[u, u+1)` with `h_i <= u_i <= f_i(x) - 1` for some point `x`. The
//! bi-objective case uses a sort-and-sweep; higher dimensions slice along
//! the last axis and recurse.

use smallvec::SmallVec;

use crate::error::{ConfigError, DimensionMismatch};
use crate::fitness::FitnessVector;

/// Reference point with every component <= 0, as required for the archive
/// hypervolume to be non-decreasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferencePoint(SmallVec<[i64; 8]>);

impl ReferencePoint {
    pub fn new(values: impl IntoIterator<Item = i64>) -> Result<Self, ConfigError> {
        let vals: SmallVec<[i64; 8]> = values.into_iter().collect();
        if vals.is_empty() || vals.iter().any(|&h| h > 0) {
            return Err(ConfigError::InvalidReferencePoint { expected: vals.len() });
        }
        Ok(ReferencePoint(vals))
    }

    /// The default `(-1, ..., -1)` used by the archive distribution checks.
    pub fn minus_ones(m: usize) -> Self {
        ReferencePoint(std::iter::repeat_n(-1, m).collect())
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }
}

fn check_dims(points: &[FitnessVector], h: &ReferencePoint) -> Result<(), DimensionMismatch> {
    for p in points {
        if p.m() != h.m() {
            return Err(DimensionMismatch { left: p.m(), right: h.m() });
        }
    }
    Ok(())
}

/// Hypervolume of the union of boxes `[h, f(x)]` over the point set.
/// Duplicate and dominated points are harmless; the empty set has volume 0.
pub fn hypervolume(points: &[FitnessVector], h: &ReferencePoint) -> Result<u64, DimensionMismatch> {
    check_dims(points, h)?;
    let pts: Vec<SmallVec<[i64; 8]>> = points
        .iter()
        .map(|p| p.values().iter().map(|&v| v as i64).collect())
        .collect();
    Ok(hv_rec(&pts, h.values()))
}

fn hv_rec(points: &[SmallVec<[i64; 8]>], h: &[i64]) -> u64 {
    let m = h.len();
    match m {
        1 => points
            .iter()
            .map(|p| (p[0] - h[0]) as u64)
            .max()
            .unwrap_or(0),
        2 => sweep_2d(points, h),
        _ => {
            if points.is_empty() {
                return 0;
            }
            // Slice on the last axis: between consecutive distinct values the
            // dominated region is the (m-1)-dimensional volume of the points
            // reaching that high, times the slab depth.
            let axis = m - 1;
            let mut order: Vec<usize> = (0..points.len()).collect();
            order.sort_unstable_by_key(|&i| std::cmp::Reverse(points[i][axis]));
            let mut total = 0u64;
            let mut active: Vec<SmallVec<[i64; 8]>> = Vec::with_capacity(points.len());
            let mut i = 0;
            while i < order.len() {
                let z = points[order[i]][axis];
                while i < order.len() && points[order[i]][axis] == z {
                    let mut proj = points[order[i]].clone();
                    proj.pop();
                    active.push(proj);
                    i += 1;
                }
                let next = if i < order.len() { points[order[i]][axis] } else { h[axis] };
                let depth = (z - next) as u64;
                if depth > 0 {
                    total += depth * hv_rec(&active, &h[..axis]);
                }
            }
            total
        }
    }
}

fn sweep_2d(points: &[SmallVec<[i64; 8]>], h: &[i64]) -> u64 {
    let mut pts: Vec<(i64, i64)> = points.iter().map(|p| (p[0], p[1])).collect();
    pts.sort_unstable_by(|a, b| b.cmp(a));
    let mut best_y = h[1];
    let mut total = 0u64;
    for (x, y) in pts {
        if y > best_y {
            total += (x - h[0]) as u64 * (y - best_y) as u64;
            best_y = y;
        }
    }
    total
}

/// Exclusive contribution of `x` to `hv(others + {x})`.
pub fn hv_contribution(
    x: &FitnessVector,
    others: &[FitnessVector],
    h: &ReferencePoint,
) -> Result<u64, DimensionMismatch> {
    let mut all: Vec<FitnessVector> = Vec::with_capacity(others.len() + 1);
    all.extend_from_slice(others);
    all.push(x.clone());
    let with = hypervolume(&all, h)?;
    let without = hypervolume(others, h)?;
    Ok(with - without)
}

/// Contribution of every point to the hypervolume of the whole set, in
/// input order. The bi-objective case of a mutually incomparable set runs
/// in O(k log k) off the sorted staircase; anything else falls back to
/// leave-one-out differences.
pub fn all_contributions(points: &[FitnessVector], h: &ReferencePoint) -> Vec<u64> {
    let k = points.len();
    if h.m() == 2 && k > 0 {
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_unstable_by_key(|&i| (points[i][0], points[i][1]));
        let incomparable_chain = order.windows(2).all(|w| {
            let (a, b) = (&points[w[0]], &points[w[1]]);
            b[0] > a[0] && b[1] < a[1]
        });
        if incomparable_chain {
            let h1 = h.values()[0];
            let h2 = h.values()[1];
            let mut out = vec![0u64; k];
            for (rank, &i) in order.iter().enumerate() {
                let left_x = if rank == 0 { h1 } else { points[order[rank - 1]][0] as i64 };
                let right_y = if rank + 1 == k { h2 } else { points[order[rank + 1]][1] as i64 };
                out[i] = (points[i][0] as i64 - left_x) as u64
                    * (points[i][1] as i64 - right_y) as u64;
            }
            return out;
        }
    }
    let total = hypervolume(points, h).expect("dimension-checked by caller");
    (0..k)
        .map(|i| {
            let rest: Vec<FitnessVector> = points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| p.clone())
                .collect();
            total - hypervolume(&rest, h).expect("dimension-checked by caller")
        })
        .collect()
}

/// Hypervolume of a hole-free bi-objective LOTZ chain `{(i, n-i) : a <= i <= b}`
/// with reference point `(-1, -1)`: `(n+1)(b+1) - a(a+1)/2 - b(b+1)/2`.
pub fn chain_hv_formula(n: u32, a: u32, b: u32) -> Result<u64, ConfigError> {
    if a > b || b > n {
        return Err(ConfigError::InstanceTooLarge(format!(
            "chain bounds need a <= b <= n, got a={a}, b={b}, n={n}"
        )));
    }
    let (n, a, b) = (n as u64, a as u64, b as u64);
    Ok((n + 1) * (b + 1) - a * (a + 1) / 2 - b * (b + 1) / 2)
}
