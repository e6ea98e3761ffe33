//! The two variation operators: one-bit mutation and standard bit mutation.

use rand::Rng;
use rand_distr::{Binomial, Distribution};
use smallvec::SmallVec;

use crate::bitstring::Bitstring;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MutationOperator {
    /// Flip exactly one position, chosen uniformly at random.
    OneBit,
    /// Flip each position independently with probability `1/n`. Sampled as
    /// a Binomial(n, 1/n) flip count followed by a uniform choice of that
    /// many distinct positions, which is the same distribution at
    /// O(expected flips) cost per call.
    StandardBit,
}

impl MutationOperator {
    pub fn name(&self) -> &'static str {
        match self {
            MutationOperator::OneBit => "one-bit",
            MutationOperator::StandardBit => "standard-bit",
        }
    }

    pub fn mutate<R: Rng + ?Sized>(&self, x: &Bitstring, rng: &mut R) -> Bitstring {
        let mut out = x.clone();
        self.mutate_in_place(&mut out, rng);
        out
    }

    /// Flips positions of `x` in place and returns the flipped indices.
    pub fn mutate_in_place<R: Rng + ?Sized>(
        &self,
        x: &mut Bitstring,
        rng: &mut R,
    ) -> SmallVec<[usize; 4]> {
        let n = x.len();
        let mut flips: SmallVec<[usize; 4]> = SmallVec::new();
        match self {
            MutationOperator::OneBit => {
                flips.push(rng.gen_range(0..n));
            }
            MutationOperator::StandardBit => {
                let k = Binomial::new(n as u64, 1.0 / n as f64)
                    .expect("valid binomial parameters")
                    .sample(rng) as usize;
                if k * 4 <= n {
                    // Rejection sampling; collisions are rare for k << n.
                    while flips.len() < k {
                        let pos = rng.gen_range(0..n);
                        if !flips.contains(&pos) {
                            flips.push(pos);
                        }
                    }
                } else {
                    // Improbably many flips: partial Fisher-Yates.
                    let mut idx: Vec<usize> = (0..n).collect();
                    for i in 0..k {
                        let j = rng.gen_range(i..n);
                        idx.swap(i, j);
                        flips.push(idx[i]);
                    }
                }
            }
        }
        for &pos in &flips {
            x.flip(pos);
        }
        flips
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    use crate::RunRng;

    #[test]
    fn one_bit_flips_exactly_one_uniform_position() {
        let mut rng = RunRng::seed_from_u64(11);
        let x: Bitstring = "000".parse().unwrap();
        let mut counts = [0u32; 3];
        for _ in 0..30_000 {
            let y = MutationOperator::OneBit.mutate(&x, &mut rng);
            assert_eq!(x.hamming_distance(&y), 1);
            for (i, count) in counts.iter_mut().enumerate() {
                if y.get(i) {
                    *count += 1;
                }
            }
        }
        // Each position near 10000; 5 sigma of Binomial(30000, 1/3) is ~408.
        for c in counts {
            assert!((c as i64 - 10_000).abs() < 450, "counts {counts:?}");
        }
    }

    #[test]
    fn one_bit_position_frequencies_within_five_sigma() {
        let n = 20usize;
        let trials = 100_000u32;
        let mut rng = RunRng::seed_from_u64(12);
        let x = Bitstring::zeros(n);
        let mut counts = vec![0u32; n];
        for _ in 0..trials {
            let mut y = x.clone();
            let flips = MutationOperator::OneBit.mutate_in_place(&mut y, &mut rng);
            counts[flips[0]] += 1;
        }
        let p = 1.0 / n as f64;
        let mean = trials as f64 * p;
        let sigma = (trials as f64 * p * (1.0 - p)).sqrt();
        for &c in &counts {
            assert!(
                (c as f64 - mean).abs() <= 5.0 * sigma,
                "flip frequency {c} out of range (mean {mean:.1}, sigma {sigma:.1})"
            );
        }
    }

    #[test]
    fn standard_bit_identity_probability_matches() {
        // Pr[output == input] = (1 - 1/n)^n; for n = 4 this is 81/256.
        let trials = 100_000u32;
        let mut rng = RunRng::seed_from_u64(13);
        let x: Bitstring = "0101".parse().unwrap();
        let mut same = 0u32;
        for _ in 0..trials {
            if MutationOperator::StandardBit.mutate(&x, &mut rng) == x {
                same += 1;
            }
        }
        let p = (81.0f64) / 256.0;
        let sigma = (trials as f64 * p * (1.0 - p)).sqrt();
        assert!(
            (same as f64 - trials as f64 * p).abs() <= 5.0 * sigma,
            "identity count {same}"
        );
    }

    #[test]
    fn standard_bit_mean_flip_count_is_one() {
        let n = 50usize;
        let trials = 100_000u32;
        let mut rng = RunRng::seed_from_u64(14);
        let x = Bitstring::zeros(n);
        let mut total_flips = 0u64;
        for _ in 0..trials {
            let mut y = x.clone();
            total_flips += MutationOperator::StandardBit
                .mutate_in_place(&mut y, &mut rng)
                .len() as u64;
        }
        let mean = total_flips as f64 / trials as f64;
        // Var of Binomial(n, 1/n) is about 1, so 3 standard errors is ~0.0095.
        let se = (1.0f64 - 1.0 / n as f64).sqrt() / (trials as f64).sqrt();
        assert!((mean - 1.0).abs() <= 3.0 * se, "mean flips {mean}");
    }

    #[test]
    fn standard_bit_flip_positions_are_distinct() {
        let mut rng = RunRng::seed_from_u64(15);
        for _ in 0..10_000 {
            let mut y = Bitstring::zeros(8);
            let flips = MutationOperator::StandardBit.mutate_in_place(&mut y, &mut rng);
            assert_eq!(y.count_ones(), flips.len());
        }
    }
}
