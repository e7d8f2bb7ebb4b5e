//! Seeded Monte Carlo estimation of expected divisiveness. The sample mask
//! sequence is pre-generated from the seed, so results are identical for a
//! given (seed, samples) pair regardless of worker scheduling.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dsf::bipartition::MASK_WIDTH_CAP;
use crate::error::{Error, Result};
use crate::profile::SubProfile;
use crate::rat::Rat;

/// An estimated divisiveness value with its standard error.
#[derive(Debug, Clone)]
pub struct Estimate {
    pub mean: Rat,
    pub std_error: f64,
}

/// Uniformly drawn C-side masks (agent 0 pinned, complement nonempty).
pub(crate) fn sample_masks(n: usize, samples: u64, seed: u64) -> Vec<u64> {
    debug_assert!((2..=MASK_WIDTH_CAP).contains(&n));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let free = (1u64 << (n - 1)) - 1; // all-ones excluded: complement must be nonempty
    (0..samples)
        .map(|_| (rng.gen_range(0..free) << 1) | 1)
        .collect()
}

/// Sample mean and standard error of `div` over uniformly drawn nonempty
/// bipartitions. `div(c_mask, comp_mask)` returns one value per proposal.
pub fn estimate_monte_carlo<F>(
    sub: &SubProfile,
    div: F,
    samples: u64,
    seed: u64,
) -> Result<Vec<Estimate>>
where
    F: Fn(u64, u64) -> Result<Vec<Rat>> + Sync,
{
    assert!(samples >= 1, "samples must be at least 1");
    let n = sub.n();
    let m = sub.m();
    if n <= 1 {
        return Ok(vec![
            Estimate { mean: Rat::zero(), std_error: 0.0 };
            m
        ]);
    }
    if n > MASK_WIDTH_CAP {
        return Err(Error::ElectorateTooLarge(n));
    }
    let full = (1u64 << n) - 1;
    let masks = sample_masks(n, samples, seed);

    // Exact rational sums make the reduction order immaterial.
    let zero = || (vec![Rat::zero(); m], vec![Rat::zero(); m]);
    let (sum, sum_sq) = masks
        .par_iter()
        .map(|&c_mask| {
            let values = div(c_mask, full & !c_mask)?;
            let sq = values.iter().map(|v| v * v).collect();
            Ok((values, sq))
        })
        .try_reduce(zero, |mut a, b| {
            for x in 0..m {
                a.0[x] += &b.0[x];
                a.1[x] += &b.1[x];
            }
            Ok(a)
        })?;

    let count = Rat::from_integer(BigInt::from(samples));
    Ok((0..m)
        .map(|x| {
            let mean = &sum[x] / &count;
            let std_error = if samples > 1 {
                // Unbiased sample variance of the mean.
                let var = (&sum_sq[x] - &mean * &sum[x])
                    / Rat::from_integer(BigInt::from(samples - 1));
                let v = (var / count.clone()).to_f64().unwrap_or(0.0);
                v.max(0.0).sqrt()
            } else {
                0.0
            };
            Estimate { mean, std_error }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::Profile;
    use crate::rat::rat;

    #[test]
    fn masks_are_valid_and_deterministic() {
        let a = sample_masks(5, 100, 7);
        let b = sample_masks(5, 100, 7);
        assert_eq!(a, b);
        let full = (1u64 << 5) - 1;
        for &mask in &a {
            assert_eq!(mask & 1, 1);
            assert_ne!(mask, full);
        }
        assert_ne!(sample_masks(5, 100, 8), a);
    }

    #[test]
    fn constant_div_has_zero_error() {
        let r = Profile::from_letter_rows(3, &["abc", "cba", "bac"]).unwrap();
        let est = estimate_monte_carlo(&r, |_, _| Ok(vec![rat(0); 3]), 500, 1).unwrap();
        for e in est {
            assert_eq!(e.mean, rat(0));
            assert_eq!(e.std_error, 0.0);
        }
    }

    #[test]
    fn single_sample_has_zero_error() {
        let r = Profile::from_letter_rows(2, &["ab", "ba"]).unwrap();
        let est = estimate_monte_carlo(&r, |_, _| Ok(vec![rat(1), rat(2)]), 1, 3).unwrap();
        assert_eq!(est[0].mean, rat(1));
        assert_eq!(est[0].std_error, 0.0);
    }
}
