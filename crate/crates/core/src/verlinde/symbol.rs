use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Character;
use crate::arith::{factorize, gcd3, modulo};
use crate::cyclo::{CycloNum, Rat};
use crate::error::{Error, Result};

/// The multiplicative symbol `{λ/h}`: zero unless `Π p_i^{a_i-1}` divides
/// `λ`, otherwise `Π (ε_i - 1/p_i²)` with `ε_i = [p_i^{a_i} | λ]`.
/// `{λ/1} = 1`.
pub fn brace_symbol(lam: usize, h: usize) -> Rat {
    let factors = factorize(h);
    let radical_cofactor: usize = factors.iter().map(|&(p, a)| p.pow(a - 1)).product();
    if lam % radical_cofactor != 0 {
        return Rat::zero();
    }
    factors.iter().fold(Rat::one(), |acc, &(p, a)| {
        let eps = if lam % p.pow(a) == 0 { Rat::one() } else { Rat::zero() };
        acc * (eps - Rat::new(BigInt::one(), BigInt::from(p * p)))
    })
}

fn check_divisor(delta: usize, h: usize) -> Result<()> {
    if delta == 0 || h % delta != 0 {
        Err(Error::NotADivisor { divisor: delta, n: h })
    } else {
        Ok(())
    }
}

/// `Σ_{gcd(h,x,y)=δ} ξ(x,y) = (h²/δ²) {(h/ω)/(h/δ)}`.
pub fn torsion_sum_closed(h: usize, xi: &Character, delta: usize) -> Result<Rat> {
    check_divisor(delta, h)?;
    xi_level(h, xi)?;
    let scale = (h / delta) * (h / delta);
    Ok(Rat::from_integer(BigInt::from(scale)) * brace_symbol(h / xi.order(), h / delta))
}

/// The same sum by enumerating all `(x, y)` with `gcd(h, x, y) = δ`.
pub fn torsion_sum_brute(h: usize, xi: &Character, delta: usize) -> Result<Rat> {
    check_divisor(delta, h)?;
    xi_level(h, xi)?;
    let mut counts = vec![0i64; h];
    for x in 0..h {
        for y in 0..h {
            if gcd3(h, x, y) == delta {
                counts[xi.exponent(x, y)] += 1;
            }
        }
    }
    CycloNum::from_int_coeffs(h, &counts)
        .to_rational()
        .ok_or_else(|| Error::Inconsistency(format!("torsion sum over X_{h} is not rational")))
}

/// `N_λ(h) = Σ_{gcd(h,x,y)=1} ζ_h^{λ(x+y)}` for any integer `λ`.
pub fn n_lambda(h: usize, lam: i64) -> Result<Rat> {
    let l = modulo(lam, h.max(1)) as i64;
    torsion_sum_brute(h, &Character::new(h, l, l)?, 1)
}

fn xi_level(h: usize, xi: &Character) -> Result<()> {
    if xi.h() == h {
        Ok(())
    } else {
        Err(Error::LevelMismatch {
            expected: h,
            found: xi.h(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::divisors;
    use crate::cyclo::rat;

    #[test]
    fn symbol_examples() {
        assert_eq!(brace_symbol(3, 1), rat(1, 1));
        assert_eq!(brace_symbol(1, 2), rat(-1, 4));
        assert_eq!(brace_symbol(0, 6), rat(2, 3));
        assert_eq!(brace_symbol(1, 4), rat(0, 1));
        assert_eq!(brace_symbol(2, 4), rat(-1, 4));
        assert_eq!(brace_symbol(4, 4), rat(3, 4));
    }

    #[test]
    fn symbol_is_multiplicative() {
        for h1 in 1..=12usize {
            for h2 in 1..=12usize {
                if crate::arith::gcd(h1, h2) != 1 {
                    continue;
                }
                for lam in 0..(h1 * h2) {
                    assert_eq!(
                        brace_symbol(lam, h1 * h2),
                        brace_symbol(lam, h1) * brace_symbol(lam, h2)
                    );
                }
            }
        }
    }

    #[test]
    fn torsion_sum_examples() {
        let triv = Character::trivial(2);
        assert_eq!(torsion_sum_brute(2, &triv, 1).unwrap(), rat(3, 1));
        assert_eq!(torsion_sum_closed(2, &triv, 1).unwrap(), rat(3, 1));
        let xi = Character::new(2, 1, 1).unwrap();
        assert_eq!(torsion_sum_brute(2, &xi, 1).unwrap(), rat(-1, 1));
        assert_eq!(torsion_sum_closed(2, &xi, 1).unwrap(), rat(-1, 1));
        for h in 1..=12 {
            for xi in super::super::enumerate_characters(h) {
                assert_eq!(torsion_sum_brute(h, &xi, h).unwrap(), rat(1, 1));
                assert_eq!(torsion_sum_closed(h, &xi, h).unwrap(), rat(1, 1));
            }
        }
        assert!(matches!(
            torsion_sum_closed(6, &Character::trivial(6), 4),
            Err(Error::NotADivisor { .. })
        ));
    }

    #[test]
    fn jordan_totient() {
        // J_2(h) = h² Π (1 - 1/p²) counts pairs with gcd(h, x, y) = 1.
        for h in 1..=24usize {
            let j2: usize = crate::arith::factorize(h)
                .iter()
                .fold(h * h, |acc, &(p, _)| acc / (p * p) * (p * p - 1));
            assert_eq!(n_lambda(h, 0).unwrap(), Rat::from_integer(j2.into()));
            assert_eq!(
                Rat::from_integer(BigInt::from(h * h)) * brace_symbol(0, h),
                Rat::from_integer(j2.into())
            );
        }
    }

    #[test]
    fn closed_matches_brute_for_small_levels() {
        for h in 1..=12 {
            for delta in divisors(h) {
                for xi in super::super::enumerate_characters(h) {
                    assert_eq!(
                        torsion_sum_brute(h, &xi, delta).unwrap(),
                        torsion_sum_closed(h, &xi, delta).unwrap(),
                        "h={h} delta={delta} xi={xi:?}"
                    );
                }
            }
        }
    }
}
