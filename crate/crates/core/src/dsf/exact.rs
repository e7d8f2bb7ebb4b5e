//! Exact expected divisiveness under the uniform distribution over nonempty
//! bipartitions. Positional schemes run on incremental Gray-code tallies,
//! O(m) per bipartition; non-positional schemes fall back to per-bipartition
//! restriction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::dsf::bipartition::{enumerate_bipartitions, GrayWalk, MASK_WIDTH_CAP};
use crate::error::{Error, Result};
use crate::profile::SubProfile;
use crate::rat::Rat;
use crate::scoring::{score, ScoringScheme};
use crate::voting::{winners, Scf};

fn big(v: i128) -> BigInt {
    BigInt::from(v)
}

/// Accumulates per-proposal sums of exact fractions. The i128 variant is
/// only used after a preflight proves it cannot overflow.
enum Acc {
    Small(Vec<Ratio<i128>>),
    Big(Vec<Rat>),
}

impl Acc {
    fn new(m: usize, small: bool) -> Acc {
        if small {
            Acc::Small(vec![Ratio::zero(); m])
        } else {
            Acc::Big(vec![Rat::zero(); m])
        }
    }

    fn add(&mut self, x: usize, num: i128, den: i128) {
        if num == 0 {
            return;
        }
        match self {
            Acc::Small(v) => v[x] += Ratio::new(num, den),
            Acc::Big(v) => v[x] += Rat::new(big(num), big(den)),
        }
    }

    /// Final values: accumulated sum divided by `scale * count`.
    fn finish(self, scale: &BigInt, count: u64) -> Vec<Rat> {
        let divisor = Rat::from_integer(scale * BigInt::from(count));
        let to_rat = |v: Ratio<i128>| Rat::new(big(*v.numer()), big(*v.denom()));
        match self {
            Acc::Small(v) => v.into_iter().map(|r| to_rat(r) / divisor.clone()).collect(),
            Acc::Big(v) => v.into_iter().map(|r| r / divisor.clone()).collect(),
        }
    }
}

/// Scales rational weights to integers; returns (scaled, common denominator).
fn scale_weights(weights: &[Rat]) -> Option<(Vec<i128>, BigInt)> {
    let mut lcm = BigInt::one();
    for w in weights {
        lcm = lcm.lcm(w.denom());
    }
    let scaled = weights
        .iter()
        .map(|w| (w.numer() * &lcm / w.denom()).to_i128())
        .collect::<Option<Vec<i128>>>()?;
    Some((scaled, lcm))
}

/// lcm of |C| * |complement C| over all bipartition sizes.
fn size_product_lcm(n: usize) -> Option<i128> {
    let mut l: i128 = 1;
    for nc in 1..n {
        let prod = (nc as i128).checked_mul((n - nc) as i128)?;
        l = l.checked_mul(prod / l.gcd(&prod))?;
    }
    Some(l)
}

/// Whether count terms of numerator <= max_num over denominators dividing
/// den_lcm can be accumulated in Ratio<i128> without overflow.
fn fits_i128(count: u64, max_num: i128, den_lcm: i128) -> bool {
    let safe = i128::MAX >> 3;
    (count as i128)
        .checked_mul(max_num)
        .and_then(|acc| acc.checked_mul(den_lcm))
        .and_then(|bound| bound.checked_mul(den_lcm))
        .is_some_and(|bound| bound < safe)
}

fn check_size(n: usize, cap: usize) -> Result<()> {
    if n > MASK_WIDTH_CAP {
        return Err(Error::ElectorateTooLarge(n));
    }
    if n > cap {
        return Err(Error::ExactCapExceeded { n, cap });
    }
    Ok(())
}

/// Per-agent, per-proposal scaled weight matrix: wmat[i][x] is the scaled
/// weight agent i's ranking awards proposal x.
fn weight_matrix(sub: &SubProfile, scaled: &[i128]) -> Vec<Vec<i128>> {
    sub.entries()
        .iter()
        .map(|(_, r)| (0..sub.m()).map(|x| scaled[r.position_of(x) - 1]).collect())
        .collect()
}

/// Exact expected div_s(R, x, C, comp) over uniform nonempty bipartitions.
pub(crate) fn exact_score_values(
    sub: &SubProfile,
    scheme: &ScoringScheme,
    cap: usize,
) -> Result<Vec<Rat>> {
    let n = sub.n();
    let m = sub.m();
    if n <= 1 {
        // No nonempty bipartition: the empty sum convention.
        return Ok(vec![Rat::zero(); m]);
    }
    check_size(n, cap)?;
    let count = (1u64 << (n - 1)) - 1;

    let positional = scheme.positional_vector(m)?;
    let Some((weights, normalized)) = positional else {
        return generic_exact(sub, cap, |c, comp| div_score_pair(scheme, c, comp));
    };
    let Some((scaled, denom)) = scale_weights(&weights) else {
        return generic_exact(sub, cap, |c, comp| div_score_pair(scheme, c, comp));
    };

    let max_w = scaled.iter().map(|w| w.abs()).max().unwrap_or(0);
    let small = if normalized {
        let max_num = 2 * max_w * (n as i128) * (n as i128);
        size_product_lcm(n).is_some_and(|l| fits_i128(count, max_num, l))
    } else {
        fits_i128(count, 2 * max_w * n as i128, 1)
    };

    let wmat = weight_matrix(sub, &scaled);
    let tally_all: Vec<i128> = (0..m).map(|x| wmat.iter().map(|row| row[x]).sum()).collect();
    let mut tally_c = wmat[0].clone();
    let mut n_c: i128 = 1;
    let mut acc = Acc::new(m, small);

    let walk = GrayWalk::new(n);
    let full = walk.full_mask();
    for step in walk {
        if let Some((agent, added)) = step.flipped {
            let row = &wmat[agent];
            if added {
                n_c += 1;
                for x in 0..m {
                    tally_c[x] += row[x];
                }
            } else {
                n_c -= 1;
                for x in 0..m {
                    tally_c[x] -= row[x];
                }
            }
        }
        if step.mask == full {
            continue;
        }
        let n_comp = n as i128 - n_c;
        for x in 0..m {
            let t_c = tally_c[x];
            let t_comp = tally_all[x] - t_c;
            if normalized {
                acc.add(x, (t_c * n_comp - t_comp * n_c).abs(), n_c * n_comp);
            } else {
                acc.add(x, (t_c - t_comp).abs(), 1);
            }
        }
    }
    Ok(acc.finish(&denom, count))
}

/// Exact expected div_F(R, x, C, comp) over uniform nonempty bipartitions.
pub(crate) fn exact_scf_values(sub: &SubProfile, scf: &Scf, cap: usize) -> Result<Vec<Rat>> {
    let n = sub.n();
    let m = sub.m();
    if n <= 1 {
        return Ok(vec![Rat::zero(); m]);
    }
    check_size(n, cap)?;
    let count = (1u64 << (n - 1)) - 1;

    let scheme = match scf {
        Scf::BordaRule => ScoringScheme::Borda,
        Scf::PluralityRule => ScoringScheme::Plurality,
        Scf::PositionalRule(s) => s.clone(),
    };
    let Some((weights, _)) = scheme.positional_vector(m)? else {
        return generic_exact(sub, cap, |c, comp| div_scf_pair(scf, c, comp));
    };
    // Winner sets only need argmax of integer tallies; normalization by |C|
    // cannot change the argmax.
    let Some((scaled, _)) = scale_weights(&weights) else {
        return generic_exact(sub, cap, |c, comp| div_scf_pair(scf, c, comp));
    };

    let mut share_lcm: i128 = 1;
    for k in 1..=m as i128 {
        share_lcm = share_lcm / share_lcm.gcd(&k) * k;
    }
    let small = fits_i128(count, 2 * (m as i128) * (m as i128), share_lcm * share_lcm);

    let wmat = weight_matrix(sub, &scaled);
    let tally_all: Vec<i128> = (0..m).map(|x| wmat.iter().map(|row| row[x]).sum()).collect();
    let mut tally_c = wmat[0].clone();
    let mut acc = Acc::new(m, small);
    let mut in_c = vec![false; m];
    let mut in_comp = vec![false; m];

    let walk = GrayWalk::new(n);
    let full = walk.full_mask();
    for step in walk {
        if let Some((agent, added)) = step.flipped {
            let row = &wmat[agent];
            for x in 0..m {
                if added {
                    tally_c[x] += row[x];
                } else {
                    tally_c[x] -= row[x];
                }
            }
        }
        if step.mask == full {
            continue;
        }
        let mut best_c = i128::MIN;
        let mut best_comp = i128::MIN;
        for x in 0..m {
            best_c = best_c.max(tally_c[x]);
            best_comp = best_comp.max(tally_all[x] - tally_c[x]);
        }
        let mut wc: i128 = 0;
        let mut wcomp: i128 = 0;
        for x in 0..m {
            in_c[x] = tally_c[x] == best_c;
            in_comp[x] = tally_all[x] - tally_c[x] == best_comp;
            wc += in_c[x] as i128;
            wcomp += in_comp[x] as i128;
        }
        for x in 0..m {
            // |[x in W_C]/|W_C| - [x in W_comp]/|W_comp||
            let num = (in_c[x] as i128 * wcomp - in_comp[x] as i128 * wc).abs();
            acc.add(x, num, wc * wcomp);
        }
    }
    Ok(acc.finish(&BigInt::one(), count))
}

/// Restriction-based enumeration for schemes without a positional fast path.
fn generic_exact<F>(sub: &SubProfile, cap: usize, div: F) -> Result<Vec<Rat>>
where
    F: Fn(&SubProfile, &SubProfile) -> Result<Vec<Rat>>,
{
    let n = sub.n();
    let m = sub.m();
    let full = (1u64 << n) - 1;
    let mut totals = vec![Rat::zero(); m];
    let mut count = 0u64;
    for (c_mask, comp_mask) in enumerate_bipartitions(n, cap)? {
        let c = sub.restrict_by_mask(c_mask);
        let comp = sub.restrict_by_mask(comp_mask);
        debug_assert_eq!(c_mask | comp_mask, full);
        for (x, v) in div(&c, &comp)?.into_iter().enumerate() {
            totals[x] += v;
        }
        count += 1;
    }
    let divisor = Rat::from_integer(BigInt::from(count));
    Ok(totals.into_iter().map(|t| t / divisor.clone()).collect())
}

/// div_s for one bipartition, all proposals. Both sides must be nonempty.
pub(crate) fn div_score_pair(
    scheme: &ScoringScheme,
    c: &SubProfile,
    comp: &SubProfile,
) -> Result<Vec<Rat>> {
    (0..c.m())
        .map(|x| Ok((score(scheme, c, x)? - score(scheme, comp, x)?).abs()))
        .collect()
}

/// div_F for one bipartition, all proposals. Both sides must be nonempty.
pub(crate) fn div_scf_pair(scf: &Scf, c: &SubProfile, comp: &SubProfile) -> Result<Vec<Rat>> {
    // One winners() call per side, not one per proposal.
    let wc = winners(scf, c)?;
    let wcomp = winners(scf, comp)?;
    (0..c.m())
        .map(|x| {
            let a = if wc.contains(&x) {
                Rat::new(BigInt::one(), BigInt::from(wc.len() as u64))
            } else {
                Rat::zero()
            };
            let b = if wcomp.contains(&x) {
                Rat::new(BigInt::one(), BigInt::from(wcomp.len() as u64))
            } else {
                Rat::zero()
            };
            Ok((a - b).abs())
        })
        .collect()
}

/// Reference share computation kept in sync with [`div_scf_pair`].
#[cfg(test)]
pub(crate) fn div_scf_pair_by_share(scf: &Scf, c: &SubProfile, comp: &SubProfile) -> Result<Vec<Rat>> {
    use crate::voting::win_share;
    (0..c.m())
        .map(|x| Ok((win_share(scf, c, x)? - win_share(scf, comp, x)?).abs()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::Profile;

    #[test]
    fn scf_div_matches_win_share_form() {
        let r = Profile::from_letter_rows(3, &["abc", "bca", "cab", "cba"]).unwrap();
        for (c_mask, comp_mask) in enumerate_bipartitions(r.n(), 20).unwrap() {
            let c = r.restrict_by_mask(c_mask);
            let comp = r.restrict_by_mask(comp_mask);
            assert_eq!(
                div_scf_pair(&Scf::BordaRule, &c, &comp).unwrap(),
                div_scf_pair_by_share(&Scf::BordaRule, &c, &comp).unwrap()
            );
        }
    }

    #[test]
    fn fast_path_matches_generic_enumeration() {
        let r = Profile::from_letter_rows(4, &["abcd", "badc", "dcab", "cabd", "bdca"]).unwrap();
        for scheme in [
            ScoringScheme::NormalizedBorda,
            ScoringScheme::Borda,
            ScoringScheme::NormalizedPlurality,
        ] {
            let fast = exact_score_values(&r, &scheme, 20).unwrap();
            let slow =
                generic_exact(&r, 20, |c, comp| div_score_pair(&scheme, c, comp)).unwrap();
            assert_eq!(fast, slow);
        }
        let fast = exact_scf_values(&r, &Scf::BordaRule, 20).unwrap();
        let slow =
            generic_exact(&r, 20, |c, comp| div_scf_pair(&Scf::BordaRule, c, comp)).unwrap();
        assert_eq!(fast, slow);
    }

    #[test]
    fn single_agent_yields_zeros() {
        let r = Profile::from_letter_rows(3, &["abc"]).unwrap();
        let values = exact_score_values(&r, &ScoringScheme::NormalizedBorda, 20).unwrap();
        assert!(values.iter().all(|v| v.is_zero()));
    }
}
