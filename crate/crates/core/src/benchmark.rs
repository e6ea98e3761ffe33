//! The benchmark functions and exact knowledge of their Pareto fronts.
//!
//! All three are maximized over `{0,1}^n`:
//!
//! * `m`-LOTZ splits the string into `m/2` blocks of length `2n/m`; each
//!   block contributes its leading-ones and trailing-zeros counts.
//! * OMM returns (ones, zeros).
//! * COCZ returns (ones, ones of the first half + zeros of the second half).

use crate::bitstring::Bitstring;
use crate::error::ConfigError;
use crate::fitness::FitnessVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Benchmark {
    MLotz { m: u32, n: u32 },
    Omm { n: u32 },
    Cocz { n: u32 },
}

impl Benchmark {
    /// `m`-objective LOTZ; `m` even, `m <= n`, block length `2n/m` integral.
    pub fn mlotz(m: u32, n: u32) -> Result<Self, ConfigError> {
        if m < 2 || !m.is_multiple_of(2) || m > n || !n.is_multiple_of(m / 2) {
            return Err(ConfigError::InvalidMlotz { m, n });
        }
        Ok(Benchmark::MLotz { m, n })
    }

    /// Bi-objective LOTZ, the `m = 2` case.
    pub fn lotz(n: u32) -> Result<Self, ConfigError> {
        Benchmark::mlotz(2, n)
    }

    pub fn omm(n: u32) -> Result<Self, ConfigError> {
        if n < 1 {
            return Err(ConfigError::InvalidOmm);
        }
        Ok(Benchmark::Omm { n })
    }

    pub fn cocz(n: u32) -> Result<Self, ConfigError> {
        if n < 2 || !n.is_multiple_of(2) {
            return Err(ConfigError::InvalidCocz { n });
        }
        Ok(Benchmark::Cocz { n })
    }

    pub fn n(&self) -> u32 {
        match *self {
            Benchmark::MLotz { n, .. } | Benchmark::Omm { n } | Benchmark::Cocz { n } => n,
        }
    }

    pub fn m(&self) -> u32 {
        match *self {
            Benchmark::MLotz { m, .. } => m,
            Benchmark::Omm { .. } | Benchmark::Cocz { .. } => 2,
        }
    }

    /// Largest value any objective can take.
    pub fn f_max(&self) -> u32 {
        match *self {
            Benchmark::MLotz { m, n } => 2 * n / m,
            Benchmark::Omm { n } | Benchmark::Cocz { n } => n,
        }
    }

    /// Block length `2n/m` of m-LOTZ.
    pub fn block_len(&self) -> Option<u32> {
        match *self {
            Benchmark::MLotz { m, n } => Some(2 * n / m),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Benchmark::MLotz { .. } => "mlotz",
            Benchmark::Omm { .. } => "omm",
            Benchmark::Cocz { .. } => "cocz",
        }
    }

    pub fn evaluate(&self, x: &Bitstring) -> FitnessVector {
        let mut out = FitnessVector::new([]);
        self.evaluate_into(x, &mut out);
        out
    }

    /// Evaluation without reallocating the output vector.
    pub fn evaluate_into(&self, x: &Bitstring, out: &mut FitnessVector) {
        assert_eq!(x.len(), self.n() as usize, "genotype length mismatch");
        out.clear();
        match *self {
            Benchmark::MLotz { m, n } => {
                let block = (2 * n / m) as usize;
                for j in 0..(m / 2) as usize {
                    let start = j * block;
                    out.push(x.leading_ones_in(start, block) as u32);
                    out.push(x.trailing_zeros_in(start, block) as u32);
                }
            }
            Benchmark::Omm { n } => {
                let ones = x.count_ones() as u32;
                out.push(ones);
                out.push(n - ones);
            }
            Benchmark::Cocz { n } => {
                let half = (n / 2) as usize;
                let ones = x.count_ones() as u32;
                let first_half_ones = x.count_ones_in(0, half) as u32;
                let second_half_zeros = half as u32 - x.count_ones_in(half, half) as u32;
                out.push(ones);
                out.push(first_half_ones + second_half_zeros);
            }
        }
    }

    /// Number of distinct Pareto-optimal fitness vectors.
    pub fn front_size(&self) -> u64 {
        match *self {
            Benchmark::MLotz { m, n } => {
                let per_axis = (2 * n / m + 1) as u64;
                per_axis.pow(m / 2)
            }
            Benchmark::Omm { n } => n as u64 + 1,
            Benchmark::Cocz { n } => (n / 2) as u64 + 1,
        }
    }

    /// Membership test for the Pareto-front fitness set.
    pub fn is_front_fitness(&self, v: &FitnessVector) -> bool {
        if v.m() != self.m() as usize {
            return false;
        }
        let vals = v.values();
        match *self {
            Benchmark::MLotz { m, n } => {
                let block = 2 * n / m;
                (0..(m / 2) as usize).all(|j| {
                    vals[2 * j] <= block && vals[2 * j] + vals[2 * j + 1] == block
                })
            }
            Benchmark::Omm { n } => vals[0] <= n && vals[0] + vals[1] == n,
            Benchmark::Cocz { n } => {
                vals[0] >= n / 2 && vals[0] <= n && vals[0] as u64 + vals[1] as u64 == 3 * n as u64 / 2
            }
        }
    }

    /// The full set of Pareto-optimal fitness vectors, lexicographically
    /// sorted. Genotypes are deliberately not enumerated: OMM and COCZ
    /// fronts have exponentially many preimages.
    pub fn front_fitness(&self) -> Vec<FitnessVector> {
        match *self {
            Benchmark::MLotz { m, n } => {
                let block = 2 * n / m;
                let blocks = (m / 2) as usize;
                let mut out = Vec::with_capacity(self.front_size() as usize);
                let mut counters = vec![0u32; blocks];
                loop {
                    let mut v = FitnessVector::new([]);
                    for &c in &counters {
                        v.push(c);
                        v.push(block - c);
                    }
                    out.push(v);
                    let mut j = blocks;
                    loop {
                        if j == 0 {
                            return out;
                        }
                        j -= 1;
                        if counters[j] < block {
                            counters[j] += 1;
                            break;
                        }
                        counters[j] = 0;
                    }
                }
            }
            Benchmark::Omm { n } => (0..=n)
                .map(|i| FitnessVector::new([i, n - i]))
                .collect(),
            Benchmark::Cocz { n } => (0..=n / 2)
                .map(|k| FitnessVector::new([n / 2 + k, n - k]))
                .collect(),
        }
    }

    /// Exact hypervolume of the full front with reference point (-1, ..., -1).
    ///
    /// For m-LOTZ the dominated region factorizes over block pairs, so it is
    /// the bi-objective chain volume raised to the number of blocks.
    pub fn front_hypervolume(&self) -> u64 {
        match *self {
            Benchmark::MLotz { m, n } => {
                let b = (2 * n / m) as u64;
                ((b + 1) * (b + 2) / 2).pow(m / 2)
            }
            Benchmark::Omm { n } => {
                let n = n as u64;
                (n + 1) * (n + 2) / 2
            }
            Benchmark::Cocz { n } => {
                let n = n as u64;
                let front = self.front_fitness();
                let h = crate::hypervolume::ReferencePoint::minus_ones(2);
                debug_assert_eq!(front.len() as u64, n / 2 + 1);
                crate::hypervolume::hypervolume(&front, &h).expect("front hv")
            }
        }
    }
}

impl std::fmt::Display for Benchmark {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Benchmark::MLotz { m, n } => write!(f, "mlotz(m={m},n={n})"),
            Benchmark::Omm { n } => write!(f, "omm(n={n})"),
            Benchmark::Cocz { n } => write!(f, "cocz(n={n})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fv(values: &[u32]) -> FitnessVector {
        FitnessVector::from_slice(values)
    }

    #[test]
    fn parameter_validation() {
        assert!(Benchmark::mlotz(2, 3).is_ok());
        assert!(Benchmark::mlotz(3, 6).is_err());
        assert!(Benchmark::mlotz(4, 6).is_ok());
        assert!(Benchmark::mlotz(4, 7).is_err());
        assert!(Benchmark::mlotz(8, 6).is_err());
        assert!(Benchmark::cocz(5).is_err());
        assert!(Benchmark::cocz(4).is_ok());
        assert!(Benchmark::omm(1).is_ok());
    }

    #[test]
    fn lotz_worked_example() {
        let b = Benchmark::lotz(13).unwrap();
        let x: Bitstring = "1110101100000".parse().unwrap();
        assert_eq!(b.evaluate(&x), fv(&[3, 5]));
    }

    #[test]
    fn mlotz_four_objective_example() {
        let b = Benchmark::mlotz(4, 8).unwrap();
        let x: Bitstring = "11010010".parse().unwrap();
        assert_eq!(b.evaluate(&x), fv(&[2, 0, 0, 1]));
    }

    #[test]
    fn omm_and_cocz_examples() {
        let omm = Benchmark::omm(4).unwrap();
        assert_eq!(omm.evaluate(&"0011".parse().unwrap()), fv(&[2, 2]));
        let cocz = Benchmark::cocz(4).unwrap();
        assert_eq!(cocz.evaluate(&"1100".parse().unwrap()), fv(&[2, 4]));
    }

    #[test]
    fn lotz_front_n3() {
        let b = Benchmark::lotz(3).unwrap();
        let front = b.front_fitness();
        let expected: Vec<_> = [[0, 3], [1, 2], [2, 1], [3, 0]]
            .iter()
            .map(|v| fv(v))
            .collect();
        assert_eq!(front, expected);
        assert_eq!(b.front_size(), 4);
        assert!(b.is_front_fitness(&fv(&[2, 1])));
        assert!(!b.is_front_fitness(&fv(&[1, 1])));
    }

    #[test]
    fn mlotz_front_cardinality() {
        let b = Benchmark::mlotz(4, 4).unwrap();
        assert_eq!(b.front_size(), 9);
        assert_eq!(b.front_fitness().len(), 9);
    }

    #[test]
    fn omm_front_n2() {
        let b = Benchmark::omm(2).unwrap();
        let front = b.front_fitness();
        assert_eq!(front, vec![fv(&[0, 2]), fv(&[1, 1]), fv(&[2, 0])]);
        assert!(b.is_front_fitness(&fv(&[2, 0])));
    }

    #[test]
    fn cocz_front_n4() {
        let b = Benchmark::cocz(4).unwrap();
        assert_eq!(b.front_fitness(), vec![fv(&[2, 4]), fv(&[3, 3]), fv(&[4, 2])]);
    }

    #[test]
    fn front_membership_matches_enumerated_front() {
        for bench in [
            Benchmark::lotz(6).unwrap(),
            Benchmark::mlotz(4, 8).unwrap(),
            Benchmark::mlotz(6, 9).unwrap(),
            Benchmark::omm(5).unwrap(),
            Benchmark::cocz(6).unwrap(),
        ] {
            let front = bench.front_fitness();
            assert_eq!(front.len() as u64, bench.front_size());
            for v in &front {
                assert!(bench.is_front_fitness(v), "{bench} should contain {v}");
            }
        }
    }

    #[test]
    fn front_hypervolume_matches_direct_computation() {
        for bench in [
            Benchmark::lotz(5).unwrap(),
            Benchmark::lotz(30).unwrap(),
            Benchmark::mlotz(4, 8).unwrap(),
            Benchmark::mlotz(6, 9).unwrap(),
            Benchmark::omm(12).unwrap(),
            Benchmark::cocz(10).unwrap(),
        ] {
            let h = crate::hypervolume::ReferencePoint::minus_ones(bench.m() as usize);
            let direct = crate::hypervolume::hypervolume(&bench.front_fitness(), &h).unwrap();
            assert_eq!(bench.front_hypervolume(), direct, "{bench}");
        }
    }

    #[test]
    fn mlotz_front_iff_components_sum_to_n() {
        // Attainable vectors have component sum <= n, with equality exactly
        // on the front.
        let bench = Benchmark::mlotz(4, 8).unwrap();
        for bits in 0u64..256 {
            let x = Bitstring::from_u64_bits(bits, 8);
            let v = bench.evaluate(&x);
            assert!(v.sum() <= 8);
            assert_eq!(v.sum() == 8, bench.is_front_fitness(&v));
        }
    }
}
