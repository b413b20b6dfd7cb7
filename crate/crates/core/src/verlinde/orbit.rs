use super::Character;
use crate::arith::modulo;
use crate::error::{Error, Result};
use crate::heisenberg::{hmul, HeisElem};

/// An element `[[λ, ν], [μ, γ]]` of `SL_2(Z/h)` together with the lift
/// `F(α, x, y) = (α ζ^{½(λμx² + νγy² + 2μνxy)}, λx + νy, μx + γy)` to `H_h`.
///
/// The half exponent is read in `Z/2h`: for odd `h` as `2 · (2^{-1} E mod h)`,
/// for even `h` as `E` itself, with representatives `0..h` for all entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitAutomorphism {
    pub h: usize,
    pub lambda: usize,
    pub mu: usize,
    pub nu: usize,
    pub gamma: usize,
}

impl OrbitAutomorphism {
    pub fn identity(h: usize) -> Self {
        OrbitAutomorphism {
            h,
            lambda: 1 % h.max(1),
            mu: 0,
            nu: 0,
            gamma: 1 % h.max(1),
        }
    }

    pub fn quadruple(&self) -> (usize, usize, usize, usize) {
        (self.lambda, self.mu, self.nu, self.gamma)
    }

    pub fn determinant_is_one(&self) -> bool {
        let h = self.h;
        modulo((self.lambda * self.gamma) as i64 - (self.mu * self.nu) as i64, h) == 1 % h
    }

    /// `(x, y) ↦ (λx + νy, μx + γy)` on `X_h`.
    pub fn induced_map(&self, x: usize, y: usize) -> (usize, usize) {
        let h = self.h;
        (
            (self.lambda * x + self.nu * y) % h,
            (self.mu * x + self.gamma * y) % h,
        )
    }

    /// Exponent of `ζ_{2h}` contributed by the cocycle factor.
    pub fn cocycle_exponent(&self, x: usize, y: usize) -> usize {
        let h = self.h;
        let e = self.lambda * self.mu * x * x
            + self.nu * self.gamma * y * y
            + 2 * self.mu * self.nu * x * y;
        if h % 2 == 1 {
            let inv2 = h / 2 + 1;
            2 * ((inv2 * (e % h)) % h)
        } else {
            e % (2 * h)
        }
    }

    pub fn apply(&self, g: &HeisElem) -> HeisElem {
        let h = self.h;
        let (x2, y2) = self.induced_map(g.x(), g.y());
        let t = (g.t() + self.cocycle_exponent(g.x(), g.y())) % (2 * h);
        HeisElem::new(h, t as i64, x2 as i64, y2 as i64).expect("valid level")
    }

    /// `F(gg') = F(g)F(g')` on all pairs. The central coordinate enters `F`
    /// and `hmul` additively, so pairs with `t = 0` suffice.
    pub fn is_homomorphism(&self) -> bool {
        let h = self.h;
        let base: Vec<HeisElem> = HeisElem::all(h).filter(|g| g.t() == 0).collect();
        base.iter().all(|g| {
            let fg = self.apply(g);
            base.iter().all(|g2| {
                let lhs = self.apply(&hmul(g, g2).expect("same level"));
                let rhs = hmul(&fg, &self.apply(g2)).expect("same level");
                lhs == rhs
            })
        })
    }

    pub fn fixes_center(&self) -> bool {
        (0..2 * self.h).all(|t| {
            let c = HeisElem::central(self.h, t);
            self.apply(&c) == c
        })
    }
}

/// Outcome of [`order_orbit_automorphism`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub automorphism: OrbitAutomorphism,
    /// `χ₁ ∘ φ = χ₂` on all of `X_h`.
    pub induced_map_ok: bool,
    pub homomorphism: bool,
    pub fixes_center: bool,
}

fn solves(chi1: &Character, chi2: &Character, m: &OrbitAutomorphism) -> bool {
    let h = chi1.h();
    let (a1, b1) = (chi1.a(), chi1.b());
    (a1 * m.lambda + b1 * m.mu) % h == chi2.a()
        && (a1 * m.nu + b1 * m.gamma) % h == chi2.b()
        && m.determinant_is_one()
}

/// Finds `(λ, μ, ν, γ) ∈ SL_2(Z/h)` carrying `chi1` to `chi2`, trying the
/// identity first and then all quadruples in lexicographic order.
///
/// For odd `h` a lift that fails to be a homomorphism fixing the center is
/// an error. For even `h` the outcome is only reported.
pub fn order_orbit_automorphism(h: usize, chi1: &Character, chi2: &Character) -> Result<OrbitReport> {
    for c in [chi1, chi2] {
        if c.h() != h {
            return Err(Error::LevelMismatch {
                expected: h,
                found: c.h(),
            });
        }
    }
    if chi1.order() != chi2.order() {
        return Err(Error::NoOrbit(chi1.order(), chi2.order()));
    }
    let identity = OrbitAutomorphism::identity(h);
    let found = if solves(chi1, chi2, &identity) {
        Some(identity)
    } else {
        let mut hit = None;
        'search: for lambda in 0..h {
            for mu in 0..h {
                for nu in 0..h {
                    for gamma in 0..h {
                        let m = OrbitAutomorphism { h, lambda, mu, nu, gamma };
                        if solves(chi1, chi2, &m) {
                            hit = Some(m);
                            break 'search;
                        }
                    }
                }
            }
        }
        hit
    };
    let automorphism = found.ok_or_else(|| {
        Error::Inconsistency(format!(
            "no SL2(Z/{h}) element maps ({}, {}) to ({}, {})",
            chi1.a(),
            chi1.b(),
            chi2.a(),
            chi2.b()
        ))
    })?;
    let induced_map_ok = (0..h).all(|x| {
        (0..h).all(|y| {
            let (x2, y2) = automorphism.induced_map(x, y);
            chi1.exponent(x2, y2) == chi2.exponent(x, y)
        })
    });
    if !induced_map_ok {
        return Err(Error::Inconsistency(format!(
            "induced map of {:?} does not carry chi1 to chi2",
            automorphism.quadruple()
        )));
    }
    let report = OrbitReport {
        automorphism,
        induced_map_ok,
        homomorphism: automorphism.is_homomorphism(),
        fixes_center: automorphism.fixes_center(),
    };
    if h % 2 == 1 && !(report.homomorphism && report.fixes_center) {
        return Err(Error::Inconsistency(format!(
            "lift of {:?} to H_{h} is not a homomorphism fixing the center",
            automorphism.quadruple()
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verlinde::enumerate_characters;

    fn ch(h: usize, a: i64, b: i64) -> Character {
        Character::new(h, a, b).unwrap()
    }

    #[test]
    fn examples() {
        let chi = ch(5, 2, 3);
        let rep = order_orbit_automorphism(5, &chi, &chi).unwrap();
        assert_eq!(rep.automorphism.quadruple(), (1, 0, 0, 1));
        let rep = order_orbit_automorphism(2, &ch(2, 1, 0), &ch(2, 1, 1)).unwrap();
        assert_eq!(rep.automorphism.quadruple(), (1, 0, 1, 1));
        assert!(rep.induced_map_ok);
        assert!(matches!(
            order_orbit_automorphism(3, &ch(3, 1, 0), &Character::trivial(3)),
            Err(Error::NoOrbit(3, 1))
        ));
    }

    #[test]
    fn every_sl2_lift_is_a_homomorphism() {
        for h in 1..=6 {
            for lambda in 0..h {
                for mu in 0..h {
                    for nu in 0..h {
                        for gamma in 0..h {
                            let m = OrbitAutomorphism { h, lambda, mu, nu, gamma };
                            if m.determinant_is_one() {
                                assert!(m.is_homomorphism(), "{m:?}");
                                assert!(m.fixes_center());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn same_order_pairs_are_connected() {
        for h in 1..=5 {
            let chars = enumerate_characters(h);
            for c1 in &chars {
                for c2 in chars.iter().filter(|c| c.order() == c1.order()) {
                    let rep = order_orbit_automorphism(h, c1, c2).unwrap();
                    assert!(rep.induced_map_ok && rep.fixes_center);
                }
            }
        }
    }
}
