//! The bounded archive and the three policies that arbitrate a full one.
//!
//! Every policy is consulted only when the archive is full and the
//! candidate's fitness is incomparable to every member's. The policy never
//! mutates the archive; it returns a decision the algorithm applies. On a
//! tie between the candidate and a member, the candidate is accepted.

use std::collections::BTreeMap;
use std::collections::HashMap;

use rand::Rng;
use smallvec::SmallVec;

use crate::bitstring::Bitstring;
use crate::error::ConfigError;
use crate::fitness::{compare_slices, Dominance, FitnessVector};
use crate::hypervolume::{all_contributions, ReferencePoint};

/// One stored solution.
#[derive(Clone, Debug)]
pub struct Member {
    pub genotype: Bitstring,
    pub fitness: FitnessVector,
}

/// Bounded set of members with pairwise incomparable fitness vectors.
/// Equality lookups are O(1) through a fitness index, which the plateau
/// replacement path relies on.
#[derive(Clone, Debug)]
pub struct Archive {
    capacity: usize,
    members: Vec<Member>,
    by_fitness: HashMap<FitnessVector, usize>,
}

impl Archive {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity >= 1, "archive capacity must be at least 1");
        Archive {
            capacity,
            members: Vec::with_capacity(capacity.min(1 << 20)),
            by_fitness: HashMap::with_capacity(capacity.min(1 << 20)),
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() >= self.capacity
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    /// Index of the member with exactly this fitness, if any.
    pub fn position_of_fitness(&self, fitness: &FitnessVector) -> Option<usize> {
        self.by_fitness.get(fitness).copied()
    }

    pub fn fitness_values(&self) -> Vec<FitnessVector> {
        self.members.iter().map(|m| m.fitness.clone()).collect()
    }

    pub(crate) fn insert(&mut self, member: Member) {
        debug_assert!(self.members.len() < self.capacity, "archive overfull");
        debug_assert!(self.position_of_fitness(&member.fitness).is_none());
        self.by_fitness
            .insert(member.fitness.clone(), self.members.len());
        self.members.push(member);
    }

    pub(crate) fn remove_at(&mut self, index: usize) -> Member {
        self.by_fitness.remove(&self.members[index].fitness);
        let last = self.members.len() - 1;
        if index != last {
            let moved = self.members[last].fitness.clone();
            self.by_fitness.insert(moved, index);
        }
        self.members.swap_remove(index)
    }

    /// Swaps the genotype of member `index` for `genotype`, keeping the
    /// fitness unchanged. Used when a candidate ties a member's fitness.
    pub(crate) fn replace_genotype_at(&mut self, index: usize, genotype: &mut Bitstring) {
        std::mem::swap(&mut self.members[index].genotype, genotype);
    }

    /// Panics if two members' fitness vectors are weakly comparable.
    pub fn assert_pairwise_incomparable(&self) {
        for (i, a) in self.members.iter().enumerate() {
            for b in &self.members[i + 1..] {
                assert_eq!(
                    a.fitness.dominance(&b.fitness),
                    Dominance::Incomparable,
                    "archive members {} and {} are comparable",
                    a.fitness,
                    b.fitness
                );
            }
        }
    }
}

/// Outcome of consulting an archiver on a full archive: whether the
/// candidate enters, and which member leaves if it does.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArchiverDecision {
    pub accepted: bool,
    /// Index of the member to remove; present exactly when `accepted` on a
    /// full archive. Always distinct from the candidate.
    pub remove: Option<usize>,
}

/// Grid geometry of the adaptive grid archiver: each objective axis is the
/// interval `[0, grid_range]` bisected `bisections` times, the last cell
/// closed at the top.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AgaParams {
    pub grid_range: u32,
    pub bisections: u32,
}

impl AgaParams {
    pub fn new(grid_range: u32, bisections: u32, f_max: u32) -> Result<Self, ConfigError> {
        if grid_range < f_max {
            return Err(ConfigError::InvalidGridRange { grid_range, f_max });
        }
        assert!(bisections >= 1);
        Ok(AgaParams { grid_range, bisections })
    }

    /// Defaults: range = f_max, and the smallest bisection count giving at
    /// least 2^m times the capacity in cells so that crowding is informative.
    pub fn defaults(f_max: u32, capacity: usize, m: u32) -> Self {
        let mut level = 0u32;
        while (1u128 << (level * m)) < capacity as u128 {
            level += 1;
        }
        AgaParams {
            grid_range: f_max,
            bisections: (level + 1).max(1),
        }
    }
}

/// Grid cell key of a fitness vector: per axis `floor(v * 2^l / range)`,
/// clamped so the topmost cell is closed.
pub fn aga_cell(v: &FitnessVector, params: &AgaParams) -> SmallVec<[u32; 8]> {
    let cells = 1u64 << params.bisections;
    let range = params.grid_range as u64;
    v.values()
        .iter()
        .map(|&x| {
            assert!(x as u64 <= range, "fitness {x} above grid range {range}");
            ((x as u64 * cells / range) as u32).min(cells as u32 - 1)
        })
        .collect()
}

/// Box index vector of MGA at coarseness level `b`: componentwise `v >> b`.
pub fn mga_box(v: &FitnessVector, level: u32) -> SmallVec<[u32; 8]> {
    v.values().iter().map(|&x| x >> level).collect()
}

/// Smallest coarseness level at which at least two of the vectors have
/// weakly comparable (possibly equal) box index vectors.
pub fn mga_level(points: &[FitnessVector]) -> u32 {
    assert!(points.len() >= 2);
    let mut level = 0u32;
    loop {
        let boxes: Vec<SmallVec<[u32; 8]>> = points.iter().map(|p| mga_box(p, level)).collect();
        let comparable = boxes.iter().enumerate().any(|(i, a)| {
            boxes[i + 1..]
                .iter()
                .any(|b| compare_slices(a, b) != Dominance::Incomparable)
        });
        if comparable {
            return level;
        }
        level += 1;
        debug_assert!(level <= 40, "mga level runaway");
    }
}

/// The archive policy in force for a run.
#[derive(Clone, Debug)]
pub enum Archiver {
    Aga(AgaParams),
    Hva(ReferencePoint),
    Mga,
    /// Baseline: rejects every candidate once the archive is full.
    None,
}

impl Archiver {
    pub fn name(&self) -> &'static str {
        match self {
            Archiver::Aga(_) => "aga",
            Archiver::Hva(_) => "hva",
            Archiver::Mga => "mga",
            Archiver::None => "none",
        }
    }

    /// Decide on a full archive and a candidate incomparable to all members.
    pub fn decide<R: Rng + ?Sized>(
        &self,
        archive: &Archive,
        candidate: &FitnessVector,
        rng: &mut R,
    ) -> ArchiverDecision {
        debug_assert!(archive.is_full());
        debug_assert!(archive
            .members()
            .iter()
            .all(|m| m.fitness.dominance(candidate) == Dominance::Incomparable));
        match self {
            Archiver::Aga(params) => aga_decide(archive, candidate, params, rng),
            Archiver::Hva(reference) => hva_decide(archive, candidate, reference, rng),
            Archiver::Mga => mga_decide(archive, candidate, rng),
            Archiver::None => ArchiverDecision { accepted: false, remove: None },
        }
    }
}

/// AGA always accepts; the removal comes uniformly from a most-occupied
/// grid cell (occupancy counted over archive plus candidate), cells tied at
/// the maximum broken uniformly. Only cells holding at least one member are
/// eligible, so a removable solution distinct from the candidate always
/// exists.
fn aga_decide<R: Rng + ?Sized>(
    archive: &Archive,
    candidate: &FitnessVector,
    params: &AgaParams,
    rng: &mut R,
) -> ArchiverDecision {
    // BTreeMap keeps the tie-break independent of hash iteration order.
    let mut cells: BTreeMap<SmallVec<[u32; 8]>, (usize, Vec<usize>)> = BTreeMap::new();
    for (i, member) in archive.members().iter().enumerate() {
        let entry = cells.entry(aga_cell(&member.fitness, params)).or_default();
        entry.0 += 1;
        entry.1.push(i);
    }
    cells.entry(aga_cell(candidate, params)).or_default().0 += 1;
    let max_occupancy = cells
        .values()
        .filter(|(_, members)| !members.is_empty())
        .map(|(occ, _)| *occ)
        .max()
        .expect("archive has at least one member");
    let crowded: Vec<&Vec<usize>> = cells
        .values()
        .filter(|(occ, members)| *occ == max_occupancy && !members.is_empty())
        .map(|(_, members)| members)
        .collect();
    let cell = crowded[rng.gen_range(0..crowded.len())];
    let remove = cell[rng.gen_range(0..cell.len())];
    ArchiverDecision { accepted: true, remove: Some(remove) }
}

/// HVA rejects the candidate only when it is the unique minimum hypervolume
/// contributor of archive plus candidate; otherwise a minimum contributor
/// among the members is removed, ties broken uniformly.
fn hva_decide<R: Rng + ?Sized>(
    archive: &Archive,
    candidate: &FitnessVector,
    reference: &ReferencePoint,
    rng: &mut R,
) -> ArchiverDecision {
    let mut points = archive.fitness_values();
    points.push(candidate.clone());
    let contributions = all_contributions(&points, reference);
    let min = *contributions.iter().min().expect("non-empty");
    let member_minima: Vec<usize> = (0..archive.len())
        .filter(|&i| contributions[i] == min)
        .collect();
    if member_minima.is_empty() {
        // The candidate contributes strictly less than every member.
        debug_assert_eq!(contributions[archive.len()], min);
        return ArchiverDecision { accepted: false, remove: None };
    }
    let remove = member_minima[rng.gen_range(0..member_minima.len())];
    ArchiverDecision { accepted: true, remove: Some(remove) }
}

/// MGA works at the smallest coarseness level where two box index vectors
/// of archive plus candidate become comparable. The candidate is rejected
/// only when it is the sole box-dominated point at that level; otherwise a
/// uniformly chosen box-dominated member is removed.
fn mga_decide<R: Rng + ?Sized>(
    archive: &Archive,
    candidate: &FitnessVector,
    rng: &mut R,
) -> ArchiverDecision {
    let mut points = archive.fitness_values();
    points.push(candidate.clone());
    let level = mga_level(&points);
    let boxes: Vec<SmallVec<[u32; 8]>> = points.iter().map(|p| mga_box(p, level)).collect();
    let dominated: Vec<usize> = (0..points.len())
        .filter(|&i| {
            boxes.iter().enumerate().any(|(j, other)| {
                j != i && compare_slices(other, &boxes[i]).is_weak_dominance()
            })
        })
        .collect();
    debug_assert!(!dominated.is_empty());
    let candidate_index = archive.len();
    let removable: Vec<usize> = dominated
        .iter()
        .copied()
        .filter(|&i| i != candidate_index)
        .collect();
    if removable.is_empty() {
        debug_assert_eq!(dominated, vec![candidate_index]);
        return ArchiverDecision { accepted: false, remove: None };
    }
    let remove = removable[rng.gen_range(0..removable.len())];
    ArchiverDecision { accepted: true, remove: Some(remove) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    use crate::RunRng;

    fn fv(values: &[u32]) -> FitnessVector {
        FitnessVector::from_slice(values)
    }

    fn archive_of(fitnesses: &[&[u32]], capacity: usize) -> Archive {
        let mut archive = Archive::new(capacity);
        for (i, f) in fitnesses.iter().enumerate() {
            let mut genotype = Bitstring::zeros(8);
            genotype.set(i % 8, true);
            archive.insert(Member { genotype, fitness: fv(f) });
        }
        archive
    }

    #[test]
    fn aga_cell_examples() {
        let params = AgaParams { grid_range: 8, bisections: 2 };
        assert_eq!(aga_cell(&fv(&[3, 7]), &params).as_slice(), &[1, 3]);
        assert_eq!(aga_cell(&fv(&[0, 0]), &params).as_slice(), &[0, 0]);
        // The last interval is closed at the top.
        assert_eq!(aga_cell(&fv(&[8, 8]), &params).as_slice(), &[3, 3]);
    }

    #[test]
    fn aga_removal_comes_from_most_crowded_cell() {
        // Three members in one cell, candidate alone in another.
        let params = AgaParams { grid_range: 16, bisections: 1 };
        let archive = archive_of(&[&[5, 4], &[4, 5], &[6, 3]], 3);
        let candidate = fv(&[0, 9]);
        let mut rng = RunRng::seed_from_u64(3);
        let mut seen = [false; 3];
        for _ in 0..200 {
            let d = Archiver::Aga(params).decide(&archive, &candidate, &mut rng);
            assert!(d.accepted);
            seen[d.remove.unwrap()] = true;
        }
        // All crowded-cell members are eventually chosen.
        assert_eq!(seen, [true, true, true]);
    }

    #[test]
    fn aga_candidate_cell_counts_toward_occupancy() {
        // The candidate lands in the unique most-crowded cell; removal is
        // uniform over that cell's members, never the candidate itself.
        let params = AgaParams { grid_range: 16, bisections: 1 };
        let archive = archive_of(&[&[5, 4], &[4, 5], &[1, 8]], 3);
        let candidate = fv(&[6, 3]);
        let mut rng = RunRng::seed_from_u64(4);
        for _ in 0..100 {
            let d = Archiver::Aga(params).decide(&archive, &candidate, &mut rng);
            assert!(d.accepted);
            assert!(d.remove.unwrap() < 2, "must remove from the crowded cell");
        }
    }

    #[test]
    fn aga_capacity_one_removes_the_member() {
        let params = AgaParams { grid_range: 8, bisections: 1 };
        let archive = archive_of(&[&[1, 2]], 1);
        let mut rng = RunRng::seed_from_u64(5);
        let d = Archiver::Aga(params).decide(&archive, &fv(&[2, 1]), &mut rng);
        assert_eq!(d, ArchiverDecision { accepted: true, remove: Some(0) });
    }

    #[test]
    fn aga_never_rejects() {
        // Chain points (i, n-i) are always pairwise incomparable.
        let params = AgaParams { grid_range: 16, bisections: 2 };
        let n = 16u32;
        let mut rng = RunRng::seed_from_u64(6);
        for trial in 0..300u32 {
            let a = trial % 14 + 1;
            let b = (a + 1 + trial % 11) % (n + 1);
            let c = (b + 3 + trial % 5) % (n + 1);
            let cand = (c + 2 + trial % 7) % (n + 1);
            let mut picks = vec![a, b, c, cand];
            picks.sort_unstable();
            picks.dedup();
            if picks.len() < 4 {
                continue;
            }
            let fits: Vec<Vec<u32>> = [a, b, c].iter().map(|&i| vec![i, n - i]).collect();
            let refs: Vec<&[u32]> = fits.iter().map(|f| f.as_slice()).collect();
            let archive = archive_of(&refs, 3);
            let d = Archiver::Aga(params).decide(&archive, &fv(&[cand, n - cand]), &mut rng);
            assert!(d.accepted);
            assert!(d.remove.unwrap() < archive.len());
        }
    }

    #[test]
    fn hva_tie_with_member_accepts_candidate() {
        // Contributions are 1 for (0,3), 3 for (2,1)... the candidate (1,2)
        // ties (0,3) at the minimum of 1, so it enters and (0,3) leaves.
        let archive = archive_of(&[&[0, 3], &[2, 1]], 2);
        let h = ReferencePoint::minus_ones(2);
        let mut rng = RunRng::seed_from_u64(7);
        let d = Archiver::Hva(h.clone()).decide(&archive, &fv(&[1, 2]), &mut rng);
        assert_eq!(d, ArchiverDecision { accepted: true, remove: Some(0) });
        // Contributions computed against the lattice oracle.
        let pts = vec![fv(&[0, 3]), fv(&[2, 1]), fv(&[1, 2])];
        assert_eq!(all_contributions(&pts, &h), vec![1, 2, 1]);
    }

    #[test]
    fn hva_unique_minimum_candidate_is_rejected() {
        let archive = archive_of(&[&[0, 3], &[3, 0]], 2);
        let h = ReferencePoint::minus_ones(2);
        let mut rng = RunRng::seed_from_u64(8);
        let d = Archiver::Hva(h).decide(&archive, &fv(&[1, 1]), &mut rng);
        assert_eq!(d, ArchiverDecision { accepted: false, remove: None });
    }

    #[test]
    fn hva_capacity_one_keeps_the_larger_contributor() {
        let h = ReferencePoint::minus_ones(2);
        let mut rng = RunRng::seed_from_u64(9);
        // Member's box is larger: candidate is the unique minimum, rejected.
        let archive = archive_of(&[&[4, 4]], 1);
        let d = Archiver::Hva(h.clone()).decide(&archive, &fv(&[9, 0]), &mut rng);
        assert!(!d.accepted);
        // Candidate's box is larger: member removed.
        let archive = archive_of(&[&[1, 4]], 1);
        let d = Archiver::Hva(h.clone()).decide(&archive, &fv(&[4, 2]), &mut rng);
        assert_eq!(d, ArchiverDecision { accepted: true, remove: Some(0) });
        // Equal boxes tie, and the tie goes to the candidate.
        let d = Archiver::Hva(h).decide(&archive, &fv(&[4, 1]), &mut rng);
        assert_eq!(d, ArchiverDecision { accepted: true, remove: Some(0) });
    }

    #[test]
    fn hva_rejects_iff_candidate_is_unique_argmin() {
        let h = ReferencePoint::minus_ones(2);
        let mut rng = RunRng::seed_from_u64(10);
        for n in [6u32, 9] {
            for c1 in 1..n {
                let candidate = fv(&[c1, n - c1]);
                let archive = archive_of(&[&[0, n], &[n, 0]], 2);
                let mut pts = archive.fitness_values();
                pts.push(candidate.clone());
                let contribs = all_contributions(&pts, &h);
                let min = *contribs.iter().min().unwrap();
                let unique_argmin_candidate =
                    contribs[2] == min && contribs[..2].iter().all(|&c| c > min);
                let d = Archiver::Hva(h.clone()).decide(&archive, &candidate, &mut rng);
                assert_eq!(d.accepted, !unique_argmin_candidate, "candidate {candidate}");
            }
        }
    }

    #[test]
    fn mga_box_examples() {
        assert_eq!(mga_box(&fv(&[5, 3]), 1).as_slice(), &[2, 1]);
        assert_eq!(mga_box(&fv(&[5, 3]), 0).as_slice(), &[5, 3]);
        assert_eq!(mga_box(&fv(&[5, 3]), 3).as_slice(), &[0, 0]);
    }

    #[test]
    fn mga_level_examples() {
        assert_eq!(mga_level(&[fv(&[5, 3]), fv(&[3, 5]), fv(&[4, 4])]), 1);
        assert_eq!(mga_level(&[fv(&[3, 3]), fv(&[3, 3])]), 0);
        assert_eq!(mga_level(&[fv(&[1, 0]), fv(&[0, 1])]), 1);
    }

    #[test]
    fn mga_level_is_minimal() {
        let mut rng = RunRng::seed_from_u64(11);
        for _ in 0..500 {
            let k = rng.gen_range(2..6);
            let points: Vec<FitnessVector> = (0..k)
                .map(|_| fv(&[rng.gen_range(0..16), rng.gen_range(0..16)]))
                .collect();
            let level = mga_level(&points);
            for lower in 0..level {
                let boxes: Vec<_> = points.iter().map(|p| mga_box(p, lower)).collect();
                let any = boxes.iter().enumerate().any(|(i, a)| {
                    boxes[i + 1..]
                        .iter()
                        .any(|b| compare_slices(a, b) != Dominance::Incomparable)
                });
                assert!(!any, "level {lower} already comparable for {points:?}");
            }
        }
    }

    #[test]
    fn mga_accepts_and_removes_box_dominated_member() {
        // Boxes at level 1: (2,1), (1,2), candidate (2,2). Both member boxes
        // are weakly dominated by the candidate's, so either may leave.
        let archive = archive_of(&[&[5, 3], &[3, 5]], 2);
        let mut rng = RunRng::seed_from_u64(12);
        let mut removed = [false; 2];
        for _ in 0..100 {
            let d = Archiver::Mga.decide(&archive, &fv(&[4, 4]), &mut rng);
            assert!(d.accepted);
            removed[d.remove.unwrap()] = true;
        }
        assert_eq!(removed, [true, true]);
    }

    #[test]
    fn mga_rejects_sole_dominated_candidate() {
        let archive = archive_of(&[&[4, 4]], 1);
        let mut rng = RunRng::seed_from_u64(13);
        let d = Archiver::Mga.decide(&archive, &fv(&[5, 3]), &mut rng);
        assert_eq!(d, ArchiverDecision { accepted: false, remove: None });
    }

    #[test]
    fn mga_equal_boxes_favour_candidate() {
        // Boxes at level 1: members (2,1) and (1,2), candidate (2,1). The
        // candidate's box equals the first member's, both land in the
        // dominated set, and the member is the one removed.
        let archive = archive_of(&[&[5, 2], &[2, 5]], 2);
        let mut rng = RunRng::seed_from_u64(14);
        let d = Archiver::Mga.decide(&archive, &fv(&[4, 3]), &mut rng);
        assert!(d.accepted);
        assert_eq!(d.remove, Some(0));
    }

    #[test]
    fn none_archiver_rejects() {
        let archive = archive_of(&[&[1, 2]], 1);
        let mut rng = RunRng::seed_from_u64(15);
        let d = Archiver::None.decide(&archive, &fv(&[2, 1]), &mut rng);
        assert_eq!(d, ArchiverDecision { accepted: false, remove: None });
    }

    #[test]
    fn decisions_always_name_a_distinct_member() {
        let h = ReferencePoint::minus_ones(2);
        let params = AgaParams { grid_range: 32, bisections: 3 };
        let mut rng = RunRng::seed_from_u64(16);
        for trial in 0..300u32 {
            let n = 16u32;
            let base = trial % 10;
            let fits: Vec<Vec<u32>> = (0..4)
                .map(|i| {
                    let a = (base + 3 * i) % (n - 1) + 1;
                    vec![a, n - a]
                })
                .collect();
            let mut unique = fits.clone();
            unique.sort();
            unique.dedup();
            if unique.len() < fits.len() {
                continue;
            }
            let refs: Vec<&[u32]> = fits.iter().map(|f| f.as_slice()).collect();
            let archive = archive_of(&refs, 4);
            let c1 = (base * 7 + 2) % (n - 1) + 1;
            let candidate = fv(&[c1, n - c1]);
            if archive.position_of_fitness(&candidate).is_some() {
                continue;
            }
            for archiver in [
                Archiver::Aga(params),
                Archiver::Hva(h.clone()),
                Archiver::Mga,
                Archiver::None,
            ] {
                let d = archiver.decide(&archive, &candidate, &mut rng);
                if d.accepted {
                    let removed = d.remove.expect("accepted decisions name a removal");
                    assert!(removed < archive.len());
                } else {
                    assert_eq!(d.remove, None);
                }
            }
        }
    }
}
