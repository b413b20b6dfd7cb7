//! Traces of Heisenberg elements on the representations derived from the
//! Schrödinger representation `S_n`.
//!
//! Each trace comes in two forms: a closed formula, and an oracle evaluated
//! on explicit matrices (Newton identities on power sums, or a direct walk
//! over the monomial basis of `Sym^K`). The sweeps in [`crate::suites`]
//! compare the two.

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::{binomial, gcd, gcd3};
use crate::cyclo::{CycloNum, Rat};
use crate::error::{Error, Result};
use crate::heisenberg::{hinv, order_data, schrodinger_monomial, HeisElem, MonomialMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepKind {
    /// `Sym^K(S_n^∨)`.
    SymDual { degree: usize },
    /// `Λ^n S_n`.
    WedgeTop,
    /// `M_k = Sym^k S_h^∨ ⊗ (Λ^h S_h)^{q-1}` with `k = h(q-1)`.
    Mk { h: usize, q: usize },
    /// Schulte's `r`-dimensional representation `R` of `H_{hr}` with
    /// central weight `-hk`, on which `R ⊗ (Λ^h S_h)^{kr}` is `X_h`-trivial.
    SchulteR { h: usize, r: usize, k: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RepDescriptor {
    kind: RepKind,
    level: usize,
}

impl RepDescriptor {
    pub fn new(kind: RepKind, level: usize) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidHeisenbergLevel);
        }
        match kind {
            RepKind::SymDual { .. } | RepKind::WedgeTop => {}
            RepKind::Mk { h, q } => {
                if q < 2 {
                    return Err(Error::InvalidLevel(q));
                }
                if h != level {
                    return Err(Error::LevelMismatch {
                        expected: level,
                        found: h,
                    });
                }
            }
            RepKind::SchulteR { h, r, k } => {
                check_coprime(r, k)?;
                if h == 0 || h * r != level {
                    return Err(Error::LevelMismatch {
                        expected: level,
                        found: h * r,
                    });
                }
            }
        }
        Ok(RepDescriptor { kind, level })
    }

    pub fn kind(&self) -> RepKind {
        self.kind
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn dimension(&self) -> BigInt {
        match self.kind {
            RepKind::SymDual { degree } => binomial(degree + self.level - 1, self.level - 1),
            RepKind::WedgeTop => BigInt::one(),
            RepKind::Mk { h, q } => binomial(h * (q - 1) + h - 1, h - 1),
            RepKind::SchulteR { r, .. } => BigInt::from(r),
        }
    }

    /// Symmetric powers go through the Newton oracle; the others use their
    /// closed formulas.
    pub fn trace(&self, g: &HeisElem) -> Result<CycloNum> {
        g.check_level(self.level)?;
        match self.kind {
            RepKind::SymDual { degree } => sym_trace_oracle(self.level, degree, g),
            RepKind::WedgeTop => Ok(wedge_trace(g)),
            RepKind::Mk { h, q } => {
                Ok(CycloNum::from_rat(2 * h, &mk_trace_closed(h, q, g)?))
            }
            RepKind::SchulteR { h, r, k } => schulte_trace(h, r, k, g),
        }
    }
}

pub(crate) fn check_coprime(r: usize, k: usize) -> Result<()> {
    let g = gcd(r, k);
    if g == 1 {
        Ok(())
    } else {
        Err(Error::NotCoprime { r, k, gcd: g })
    }
}

/// Complete homogeneous symmetric polynomial `h_K` from power sums
/// `p_1..p_K` via `K h_K = Σ_{i=1}^K p_i h_{K-i}`.
pub fn complete_homogeneous(power_sums: &[CycloNum], degree: usize, order: usize) -> CycloNum {
    assert!(power_sums.len() >= degree, "need p_1..p_K");
    let mut h = Vec::with_capacity(degree + 1);
    h.push(CycloNum::one(order));
    for j in 1..=degree {
        let mut acc = CycloNum::zero(order);
        for i in 1..=j {
            acc = &acc + &(&power_sums[i - 1] * &h[j - i]);
        }
        let hj = acc
            .reduce_canonical()
            .scale(&Rat::new(BigInt::one(), BigInt::from(j)));
        h.push(hj);
    }
    h.pop().expect("h_0 is always present")
}

/// Trace of `g` on `Sym^K(S_n^∨)`: `h_K` of the eigenvalues of `g^{-1}`,
/// from the power sums `tr(S(g^{-1})^m)`.
pub fn sym_trace_oracle(n: usize, degree: usize, g: &HeisElem) -> Result<CycloNum> {
    g.check_level(n)?;
    let m = schrodinger_monomial(&hinv(g));
    let mut acc = MonomialMatrix::identity(n, 2 * n);
    let mut power_sums = Vec::with_capacity(degree);
    for _ in 0..degree {
        acc = acc.mul(&m);
        power_sums.push(acc.trace().reduce_canonical());
    }
    Ok(complete_homogeneous(&power_sums, degree, 2 * n))
}

/// Trace of `g` on `Sym^K(S_n^∨)` by walking the monomial basis: the dual
/// action has matrix `S(g^{-1})^T`, and a basis monomial contributes only
/// when the induced substitution fixes it.
pub fn sym_trace_direct(n: usize, degree: usize, g: &HeisElem) -> Result<CycloNum> {
    g.check_level(n)?;
    let dual = schrodinger_monomial(&hinv(g)).transpose();
    let order = 2 * n;
    let mut counts = vec![0i64; order];
    let mut exps = vec![0usize; n];
    walk_monomials(&dual, degree, 0, &mut exps, &mut counts);
    Ok(CycloNum::from_int_coeffs(order, &counts))
}

fn walk_monomials(
    m: &MonomialMatrix,
    remaining: usize,
    idx: usize,
    exps: &mut [usize],
    counts: &mut [i64],
) {
    let n = exps.len();
    if idx + 1 == n {
        exps[idx] = remaining;
        let mut image = vec![0usize; n];
        let mut phase = 0usize;
        for (i, &a) in exps.iter().enumerate() {
            image[m.rows()[i]] += a;
            phase += a * m.exps()[i];
        }
        if image == exps {
            counts[phase % m.order()] += 1;
        }
        return;
    }
    for a in 0..=remaining {
        exps[idx] = a;
        walk_monomials(m, remaining - a, idx + 1, exps, counts);
    }
}

/// `α^n (-1)^{(n+1)(x+y)}`, the trace of `(α,x,y)` on `Λ^n S_n`.
pub fn wedge_trace(g: &HeisElem) -> CycloNum {
    let n = g.level();
    let sign = if ((n + 1) * (g.x() + g.y())) % 2 == 1 { n } else { 0 };
    CycloNum::one(2 * n).mul_root(((g.t() * n + sign) % (2 * n)) as i64)
}

/// Determinant of the Schrödinger matrix, the matrix-side counterpart of
/// [`wedge_trace`].
pub fn wedge_trace_oracle(g: &HeisElem) -> CycloNum {
    schrodinger_monomial(g).determinant()
}

/// `(1/q) binom(qδ, δ)`, times `(-1)^δ` when `h` and `q` are both even.
pub fn mk_trace_closed(h: usize, q: usize, g: &HeisElem) -> Result<Rat> {
    if q < 2 {
        return Err(Error::InvalidLevel(q));
    }
    g.check_level(h)?;
    let delta = order_data(g).delta;
    let mut value = Rat::new(binomial(q * delta, delta), BigInt::from(q));
    if h % 2 == 0 && q % 2 == 0 && delta % 2 == 1 {
        value = -value;
    }
    Ok(value)
}

/// Trace on `M_k` from the oracle pieces: Newton trace on
/// `Sym^{h(q-1)} S_h^∨` times the matrix determinant to the `q-1`.
pub fn mk_trace_oracle(h: usize, q: usize, g: &HeisElem) -> Result<CycloNum> {
    if q < 2 {
        return Err(Error::InvalidLevel(q));
    }
    let sym = sym_trace_oracle(h, h * (q - 1), g)?;
    let det = wedge_trace_oracle(g).pow((q - 1) as u32);
    Ok((&sym * &det).reduce_canonical())
}

/// Trace of `(α,x,y) ∈ H_{hr}` on `Sym^{hk}(S_{hr}^∨)` in closed form:
/// zero off the `h`-torsion, otherwise
/// `(-1)^{xyk(h+1)} α^{-hk} (r/(r+k)) binom((r+k)δ, rδ)` with `x, y` taken
/// as `X_{hr}` coordinates and `δ = gcd(hr, x, y)/r`.
pub fn symhk_trace_closed(h: usize, r: usize, k: usize, g: &HeisElem) -> Result<CycloNum> {
    check_coprime(r, k)?;
    let n = h * r;
    g.check_level(n)?;
    let order = 2 * n;
    if g.x() % r != 0 || g.y() % r != 0 {
        return Ok(CycloNum::zero(order));
    }
    let delta = gcd3(n, g.x(), g.y()) / r;
    let magnitude = Rat::new(
        BigInt::from(r) * binomial((r + k) * delta, r * delta),
        BigInt::from(r + k),
    );
    let sign = if (g.x() * g.y() * k * (h + 1)) % 2 == 1 { n } else { 0 };
    let central = order - (g.t() * h * k) % order;
    let root = CycloNum::one(order).mul_root(((central + sign) % order) as i64);
    Ok(root.scale(&magnitude))
}

/// Character of Schulte's `R` at `i = j = hrk(h+1)/2`:
/// `r α^{-hk} (-1)^{(h+1)kr(x+y)}` on `X_h`, zero elsewhere.
pub fn schulte_trace(h: usize, r: usize, k: usize, g: &HeisElem) -> Result<CycloNum> {
    check_coprime(r, k)?;
    let n = h * r;
    g.check_level(n)?;
    let order = 2 * n;
    if g.x() % r != 0 || g.y() % r != 0 {
        return Ok(CycloNum::zero(order));
    }
    let sign = if ((h + 1) * k * r * (g.x() + g.y())) % 2 == 1 { n } else { 0 };
    let central = order - (g.t() * h * k) % order;
    Ok(CycloNum::from_int(order, r).mul_root(((central + sign) % order) as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat;

    fn el(n: usize, t: i64, x: i64, y: i64) -> HeisElem {
        HeisElem::new(n, t, x, y).unwrap()
    }

    fn as_rat(c: &CycloNum) -> Rat {
        c.to_rational().expect("rational value")
    }

    #[test]
    fn sym_oracle_examples() {
        let g = el(3, 1, 2, 1);
        assert_eq!(as_rat(&sym_trace_oracle(3, 0, &g).unwrap()), rat(1, 1));
        for n in 1..=5 {
            for k in 0..=6 {
                let tr = sym_trace_oracle(n, k, &HeisElem::identity(n)).unwrap();
                assert_eq!(as_rat(&tr), Rat::from_integer(binomial(k + n - 1, n - 1)));
            }
        }
        let diag = el(2, 0, 0, 1);
        assert_eq!(as_rat(&sym_trace_oracle(2, 4, &diag).unwrap()), rat(1, 1));
        assert!(sym_trace_oracle(3, 2, &diag).is_err());
    }

    #[test]
    fn direct_oracle_agrees_with_newton() {
        for n in 1..=6 {
            for k in 0..=(12 / n) {
                for g in HeisElem::all(n) {
                    assert_eq!(
                        sym_trace_direct(n, k, &g).unwrap(),
                        sym_trace_oracle(n, k, &g).unwrap(),
                        "n={n} K={k} g={g:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(as_rat(&wedge_trace(&HeisElem::identity(3))), rat(1, 1));
        assert_eq!(as_rat(&wedge_trace(&el(2, 0, 1, 0))), rat(-1, 1));
        assert_eq!(as_rat(&wedge_trace(&el(3, 0, 1, 1))), rat(1, 1));
    }

    #[test]
    fn wedge_formula_is_the_determinant() {
        for n in 1..=7 {
            for g in HeisElem::all(n) {
                assert_eq!(wedge_trace(&g), wedge_trace_oracle(&g), "g={g:?}");
            }
        }
    }

    #[test]
    fn mk_closed_examples() {
        assert_eq!(mk_trace_closed(2, 2, &HeisElem::identity(2)).unwrap(), rat(3, 1));
        assert_eq!(mk_trace_closed(2, 2, &el(2, 0, 1, 1)).unwrap(), rat(-1, 1));
        assert_eq!(mk_trace_closed(2, 3, &el(2, 0, 0, 1)).unwrap(), rat(1, 1));
        assert_eq!(mk_trace_closed(2, 1, &HeisElem::identity(2)), Err(Error::InvalidLevel(1)));
        let oracle = mk_trace_oracle(2, 2, &el(2, 0, 1, 1)).unwrap();
        assert_eq!(as_rat(&oracle), rat(-1, 1));
    }

    #[test]
    fn mk_closed_ignores_center() {
        for h in 1..=4 {
            for q in 2..=4 {
                for g in HeisElem::all(h) {
                    let base = mk_trace_closed(h, q, &g.with_t(0)).unwrap();
                    assert_eq!(mk_trace_closed(h, q, &g).unwrap(), base);
                }
            }
        }
    }

    #[test]
    fn symhk_examples() {
        let id = symhk_trace_closed(2, 2, 1, &HeisElem::identity(4)).unwrap();
        assert_eq!(as_rat(&id), Rat::from_integer(binomial(2 + 4 - 1, 4 - 1)));
        assert!(symhk_trace_closed(2, 2, 1, &el(4, 0, 1, 0)).unwrap().is_zero());
        let v = symhk_trace_closed(2, 1, 1, &el(2, 0, 1, 1)).unwrap();
        assert_eq!(as_rat(&v), rat(-1, 1));
        assert_eq!(v, sym_trace_oracle(2, 2, &el(2, 0, 1, 1)).unwrap());
        assert!(matches!(
            symhk_trace_closed(2, 2, 2, &HeisElem::identity(4)),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn schulte_examples() {
        let id = schulte_trace(2, 3, 1, &HeisElem::identity(6)).unwrap();
        assert_eq!(as_rat(&id), rat(3, 1));
        assert!(schulte_trace(2, 2, 1, &el(4, 0, 1, 1)).unwrap().is_zero());
        assert_eq!(as_rat(&schulte_trace(2, 1, 1, &el(2, 0, 1, 1)).unwrap()), rat(1, 1));
    }

    #[test]
    fn descriptors_validate_and_dispatch() {
        assert!(RepDescriptor::new(RepKind::Mk { h: 3, q: 2 }, 2).is_err());
        assert!(RepDescriptor::new(RepKind::Mk { h: 2, q: 1 }, 2).is_err());
        assert!(RepDescriptor::new(RepKind::SchulteR { h: 2, r: 2, k: 2 }, 4).is_err());
        assert!(RepDescriptor::new(RepKind::SchulteR { h: 2, r: 3, k: 1 }, 5).is_err());
        let mk = RepDescriptor::new(RepKind::Mk { h: 3, q: 3 }, 3).unwrap();
        assert_eq!(mk.dimension(), binomial(8, 2));
        let id = HeisElem::identity(3);
        assert_eq!(as_rat(&mk.trace(&id).unwrap()), Rat::from_integer(mk.dimension()));
        let sym = RepDescriptor::new(RepKind::SymDual { degree: 4 }, 3).unwrap();
        assert_eq!(as_rat(&sym.trace(&id).unwrap()), Rat::from_integer(sym.dimension()));
        let r = RepDescriptor::new(RepKind::SchulteR { h: 2, r: 3, k: 1 }, 6).unwrap();
        assert_eq!(as_rat(&r.trace(&HeisElem::identity(6)).unwrap()), rat(3, 1));
        assert!(mk.trace(&HeisElem::identity(4)).is_err());
    }
}
