use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::multiplicity::{mult_theorem1, mult_theorem3};
use super::{enumerate_characters, order_counts, Character};
use crate::arith::{binomial, divisors, gcd};
use crate::cyclo::Rat;
use crate::error::{Error, Result};

/// A summand type `W_{rank, det_degree, torsion}`; for rank one this is
/// `Θ^{det_degree} ⊗ L_torsion`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SummandDescriptor {
    pub rank: usize,
    pub det_degree: usize,
    pub torsion: Character,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub descriptor: SummandDescriptor,
    pub multiplicity: BigInt,
}

/// Multiplicity per character order `ω | h`, and how many characters have
/// each order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityTable {
    pub h: usize,
    pub entries: BTreeMap<usize, Rat>,
    pub character_counts: BTreeMap<usize, usize>,
}

impl MultiplicityTable {
    pub fn theorem1(h: usize, q: usize) -> Result<Self> {
        Self::build(h, |omega| mult_theorem1(h, q, omega))
    }

    pub fn theorem3(h: usize, r: usize, k: usize) -> Result<Self> {
        Self::build(h, |omega| mult_theorem3(h, r, k, omega))
    }

    fn build(h: usize, f: impl Fn(usize) -> Result<Rat>) -> Result<Self> {
        let entries = divisors(h)
            .into_iter()
            .map(|omega| f(omega).map(|m| (omega, m)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(MultiplicityTable {
            h,
            entries,
            character_counts: order_counts(h),
        })
    }

    pub fn get(&self, omega: usize) -> Option<&Rat> {
        self.entries.get(&omega)
    }

    /// Each entry as a nonnegative integer; anything else is a bug.
    pub fn certified(&self) -> Result<BTreeMap<usize, BigInt>> {
        self.entries
            .iter()
            .map(|(&omega, m)| {
                if m.is_integer() && !m.is_negative() {
                    Ok((omega, m.to_integer()))
                } else {
                    Err(Error::Inconsistency(format!(
                        "multiplicity {m} for order {omega} at h={} is not a nonnegative integer",
                        self.h
                    )))
                }
            })
            .collect()
    }

    /// `Σ_ω counts(ω) m(ω)`.
    pub fn summand_count(&self) -> Rat {
        self.entries.iter().fold(Rat::zero(), |acc, (omega, m)| {
            acc + m * Rat::from_integer(BigInt::from(self.character_counts[omega]))
        })
    }
}

/// Formal twist recorded by [`theorem2_decompose`]: the report is the one
/// for `E_{h,K}` and the summands carry an extra `Θ_{1,(det N)^h}^{q-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem2Twist {
    pub r: i64,
    pub d: i64,
    pub level: usize,
    pub det_degree_shift: i64,
    pub theta_power: usize,
}

impl Theorem2Twist {
    pub fn label(&self) -> String {
        format!("Theta_{{1,(det N)^h}}^{}", self.theta_power)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub moduli_rank: usize,
    pub level: usize,
    pub h: usize,
    pub r: usize,
    pub k: usize,
    /// `1 + L/R` when `R | L`.
    pub q: Option<usize>,
    pub table: MultiplicityTable,
    /// One entry per character of `X_h`, sorted by order and then `(a, b)`.
    pub summands: Vec<Summand>,
    pub rank_total: BigInt,
    pub line_bundle_split: bool,
    pub twist: Option<Theorem2Twist>,
}

impl DecompositionReport {
    pub fn theta_power(&self) -> Option<usize> {
        self.q.map(|q| q - 1)
    }
}

/// Splits `E_{R,L}` on an elliptic curve into `W_{r,k,ξ}` summands, with
/// `h = gcd(R, L)`, `r = R/h`, `k = L/h`.
pub fn decompose(moduli_rank: usize, level: usize) -> Result<DecompositionReport> {
    if moduli_rank == 0 {
        return Err(Error::InvalidInput("rank must be positive".into()));
    }
    if level == 0 {
        return Err(Error::InvalidInput("level must be positive".into()));
    }
    let h = gcd(moduli_rank, level);
    let (r, k) = (moduli_rank / h, level / h);
    let table = if r == 1 {
        MultiplicityTable::theorem1(h, k + 1)?
    } else {
        MultiplicityTable::theorem3(h, r, k)?
    };
    let certified = table.certified()?;

    let summands: Vec<Summand> = enumerate_characters(h)
        .into_iter()
        .map(|torsion| Summand {
            descriptor: SummandDescriptor {
                rank: r,
                det_degree: k,
                torsion,
            },
            multiplicity: certified[&torsion.order()].clone(),
        })
        .collect();

    let rank_total: BigInt = summands
        .iter()
        .map(|s| &s.multiplicity * BigInt::from(r))
        .sum();
    let expected = binomial(level + moduli_rank - 1, moduli_rank - 1);
    if rank_total != expected {
        return Err(Error::Inconsistency(format!(
            "summand ranks add to {rank_total}, expected binom({}, {}) = {expected}",
            level + moduli_rank - 1,
            moduli_rank - 1
        )));
    }

    Ok(DecompositionReport {
        moduli_rank,
        level,
        h,
        r,
        k,
        q: (r == 1).then_some(k + 1),
        table,
        summands,
        rank_total,
        line_bundle_split: r == 1,
        twist: None,
    })
}

/// `E_{R,L}` is a sum of line bundles iff `R | L`.
pub fn splits_into_line_bundles(moduli_rank: usize, level: usize) -> bool {
    moduli_rank != 0 && level % moduli_rank == 0
}

/// Rank and degree bookkeeping for `W_{h,d}^{⊗k}`, which splits into
/// `count` summands `W_{h',dk'} ⊗ M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorPowerShape {
    pub h_prime: usize,
    pub k_prime: usize,
    pub summand_rank: usize,
    pub summand_degree: i64,
    pub count: BigInt,
    /// `deg det W_{h,d}^{⊗k} = k d h^{k-1}`.
    pub total_degree: BigInt,
}

pub fn tensor_power_shape(h: usize, d: i64, k: usize) -> Result<TensorPowerShape> {
    if h == 0 || k == 0 {
        return Err(Error::InvalidInput("h and k must be positive".into()));
    }
    let g = gcd(h, d.unsigned_abs() as usize);
    if g != 1 {
        return Err(Error::NotCoprime { r: h, k: d.unsigned_abs() as usize, gcd: g });
    }
    let c = gcd(h, k);
    let (h_prime, k_prime) = (h / c, k / c);
    let total_rank = BigInt::from(h).pow(k as u32);
    let (count, rem) = total_rank.div_rem(&BigInt::from(h_prime));
    debug_assert!(rem.is_zero());
    let summand_degree = d * k_prime as i64;
    let total_degree = BigInt::from(k) * BigInt::from(d) * BigInt::from(h).pow(k as u32 - 1);
    if &count * BigInt::from(summand_degree) != total_degree {
        return Err(Error::Inconsistency(format!(
            "degree bookkeeping fails for W_{{{h},{d}}}^{k}"
        )));
    }
    Ok(TensorPowerShape {
        h_prime,
        k_prime,
        summand_rank: h_prime,
        summand_degree,
        count,
        total_degree,
    })
}

/// Splitting of `E_{r,d,K}` when `h = gcd(r, d)` divides `K`: the table of
/// `E_{h,K}` with a recorded formal twist.
pub fn theorem2_decompose(r: i64, d: i64, level: usize, det_degree_shift: i64) -> Result<DecompositionReport> {
    if r <= 0 {
        return Err(Error::InvalidInput("bundle rank r must be positive".into()));
    }
    if level == 0 {
        return Err(Error::InvalidInput("level must be positive".into()));
    }
    let h = gcd(r as usize, d.unsigned_abs() as usize);
    if level % h != 0 {
        return Err(Error::NotLineBundleSplit { h, level });
    }
    let mut report = decompose(h, level)?;
    report.twist = Some(Theorem2Twist {
        r,
        d,
        level,
        det_degree_shift,
        theta_power: level / h,
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat;

    #[test]
    fn small_tables() {
        let rep = decompose(2, 2).unwrap();
        assert_eq!(rep.table.get(1), Some(&rat(0, 1)));
        assert_eq!(rep.table.get(2), Some(&rat(1, 1)));
        assert_eq!(rep.rank_total, BigInt::from(3));
        assert!(rep.line_bundle_split);
        assert_eq!(rep.theta_power(), Some(1));

        let rep = decompose(4, 2).unwrap();
        assert_eq!((rep.h, rep.r, rep.k), (2, 2, 1));
        assert_eq!(rep.table.get(1), Some(&rat(2, 1)));
        assert_eq!(rep.table.get(2), Some(&rat(1, 1)));
        assert_eq!(rep.rank_total, BigInt::from(10));
        assert!(!rep.line_bundle_split);
        assert_eq!(rep.q, None);

        let rep = decompose(2, 1).unwrap();
        assert_eq!(rep.summands.len(), 1);
        assert_eq!(rep.summands[0].multiplicity, BigInt::from(1));
        assert_eq!(rep.summands[0].descriptor.rank, 2);

        assert!(decompose(0, 1).is_err());
        assert!(decompose(1, 0).is_err());
    }

    #[test]
    fn splitting() {
        assert!(splits_into_line_bundles(3, 6));
        assert!(!splits_into_line_bundles(3, 5));
        assert!((1..10).all(|l| splits_into_line_bundles(1, l)));
    }

    #[test]
    fn tensor_powers() {
        let s = tensor_power_shape(2, 1, 2).unwrap();
        assert_eq!((s.h_prime, s.summand_rank), (1, 1));
        assert_eq!(s.count, BigInt::from(4));
        assert_eq!(s.total_degree, BigInt::from(4));
        let s = tensor_power_shape(3, 1, 1).unwrap();
        assert_eq!((s.h_prime, s.count.clone()), (3, BigInt::from(1)));
        let s = tensor_power_shape(2, 1, 3).unwrap();
        assert_eq!((s.h_prime, s.k_prime, s.count.clone()), (2, 3, BigInt::from(4)));
        assert!(tensor_power_shape(4, 2, 2).is_err());
        assert!(tensor_power_shape(3, -2, 3).is_ok());
    }

    #[test]
    fn theorem2() {
        let base = decompose(2, 2).unwrap();
        for (r, d) in [(2, 2), (6, 4), (2, -2)] {
            let rep = theorem2_decompose(r, d, 2, 5).unwrap();
            assert_eq!(rep.table, base.table);
            assert_eq!(rep.twist.as_ref().unwrap().theta_power, 1);
        }
        assert!(matches!(
            theorem2_decompose(2, 2, 3, 0),
            Err(Error::NotLineBundleSplit { h: 2, level: 3 })
        ));
    }
}
