use num_bigint::BigInt;
use num_traits::Zero;

use super::symbol::brace_symbol;
use super::Character;
use crate::arith::divisors;
use crate::chartab::{check_coprime, mk_trace_oracle, sym_trace_oracle};
use crate::cyclo::{CycloNum, Rat};
use crate::error::{Error, Result};
use crate::heisenberg::HeisElem;

fn check_omega(omega: usize, h: usize) -> Result<()> {
    if h == 0 {
        return Err(Error::InvalidInput("torsion order h must be positive".into()));
    }
    if omega == 0 || h % omega != 0 {
        return Err(Error::NotADivisor { divisor: omega, n: h });
    }
    Ok(())
}

/// Closed-form multiplicity of `Θ^{q-1} ⊗ L_ξ` in `E_{h,h(q-1)}` for `ξ`
/// of order `omega`:
/// `Σ_{δ|h} (1/(qδ²)) binom(qδ, δ) {(h/ω)/(h/δ)}`, with an extra `(-1)^δ`
/// in each term when `h` and `q` are both even.
pub fn mult_theorem1(h: usize, q: usize, omega: usize) -> Result<Rat> {
    if q < 2 {
        return Err(Error::InvalidLevel(q));
    }
    check_omega(omega, h)?;
    let even_even = h % 2 == 0 && q % 2 == 0;
    let mut total = Rat::zero();
    for delta in divisors(h) {
        let mut term = Rat::new(
            crate::arith::binomial(q * delta, delta),
            BigInt::from(q * delta * delta),
        ) * brace_symbol(h / omega, h / delta);
        if even_even && delta % 2 == 1 {
            term = -term;
        }
        total += term;
    }
    Ok(total)
}

/// Closed-form multiplicity of `W_{r,k,ξ}` for `ξ` of order `omega`:
/// `Σ_{δ|h} ((-1)^{(h+1)krδ} / ((r+k)δ²)) binom((r+k)δ, rδ) {(h/ω)/(h/δ)}`.
pub fn mult_theorem3(h: usize, r: usize, k: usize, omega: usize) -> Result<Rat> {
    check_coprime(r, k)?;
    check_omega(omega, h)?;
    let mut total = Rat::zero();
    for delta in divisors(h) {
        let mut term = Rat::new(
            crate::arith::binomial((r + k) * delta, r * delta),
            BigInt::from((r + k) * delta * delta),
        ) * brace_symbol(h / omega, h / delta);
        if ((h + 1) * k * r * delta) % 2 == 1 {
            term = -term;
        }
        total += term;
    }
    Ok(total)
}

/// Oracle traces of every element of `H_h` on `M_k`, computed once so that
/// all characters of `X_h` can be tested against the same table.
#[derive(Clone, Debug)]
pub struct MkTraceTable {
    h: usize,
    q: usize,
    traces: Vec<(HeisElem, CycloNum)>,
}

impl MkTraceTable {
    pub fn new(h: usize, q: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidLevel(q));
        }
        if h == 0 {
            return Err(Error::InvalidHeisenbergLevel);
        }
        let traces = HeisElem::all(h)
            .map(|g| mk_trace_oracle(h, q, &g).map(|tr| (g, tr)))
            .collect::<Result<Vec<_>>>()?;
        Ok(MkTraceTable { h, q, traces })
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn traces(&self) -> &[(HeisElem, CycloNum)] {
        &self.traces
    }

    /// `(1/2h³) Σ_η ξ(η^{-1}) Tr_{M_k}(η)`.
    pub fn multiplicity(&self, xi: &Character) -> Result<Rat> {
        let h = self.h;
        if xi.h() != h {
            return Err(Error::LevelMismatch {
                expected: h,
                found: xi.h(),
            });
        }
        let order = 2 * h;
        let mut sum = CycloNum::zero(order);
        for (g, tr) in &self.traces {
            // ξ(η^{-1}) = ζ_h^{-(ax+by)} = ζ_{2h}^{-2(ax+by)}.
            let e = xi.exponent(g.x(), g.y()) as i64;
            sum = &sum + &tr.mul_root(-2 * e);
        }
        let value = sum.to_rational().ok_or_else(|| {
            Error::Inconsistency(format!(
                "character sum for h={h}, q={}, xi=({}, {}) is not rational",
                self.q,
                xi.a(),
                xi.b()
            ))
        })?;
        Ok(value / Rat::from_integer(BigInt::from(2 * h * h * h)))
    }
}

/// Multiplicity of `ξ` as an exact character sum over all of `H_h`, using
/// the oracle traces on `M_k`.
pub fn mult_charsum_oracle(h: usize, q: usize, xi: &Character) -> Result<Rat> {
    MkTraceTable::new(h, q)?.multiplicity(xi)
}

/// For every `η ∈ μ_{2hr} × X_h ⊂ H_{hr}`, the product
/// `Tr_{Sym^{hk} S_{hr}^∨}(η) · Tr_R(η)^{-1}`.
#[derive(Clone, Debug)]
pub struct Theorem3TraceTable {
    h: usize,
    r: usize,
    k: usize,
    terms: Vec<(HeisElem, CycloNum)>,
}

impl Theorem3TraceTable {
    pub fn new(h: usize, r: usize, k: usize) -> Result<Self> {
        check_coprime(r, k)?;
        if h == 0 {
            return Err(Error::InvalidHeisenbergLevel);
        }
        let n = h * r;
        let order = 2 * n;
        let inv_r = Rat::new(BigInt::from(1), BigInt::from(r));
        let mut terms = Vec::with_capacity(2 * n * h * h);
        for g in HeisElem::all(n).filter(|g| g.x() % r == 0 && g.y() % r == 0) {
            let sym = sym_trace_oracle(n, h * k, &g)?;
            let sign = if ((h + 1) * k * r * (g.x() + g.y())) % 2 == 1 { n } else { 0 };
            let exp = (g.t() * h * k + sign) % order;
            let r_inv = CycloNum::from_rat(order, &inv_r).mul_root(exp as i64);
            terms.push((g, (&sym * &r_inv).reduce_canonical()));
        }
        Ok(Theorem3TraceTable { h, r, k, terms })
    }

    /// `(1/2h³r) Σ_η Tr_Sym(η) Tr_R(η)^{-1} χ(η)^{-1}` for `χ` a character
    /// of `X_{hr}`.
    pub fn multiplicity(&self, chi: &Character) -> Result<Rat> {
        let (h, r) = (self.h, self.r);
        let n = h * r;
        if chi.h() != n {
            return Err(Error::LevelMismatch {
                expected: n,
                found: chi.h(),
            });
        }
        let mut sum = CycloNum::zero(2 * n);
        for (g, term) in &self.terms {
            let e = chi.exponent(g.x(), g.y()) as i64;
            sum = &sum + &term.mul_root(-2 * e);
        }
        let value = sum.to_rational().ok_or_else(|| {
            Error::Inconsistency(format!(
                "character sum for (h, r, k)=({h}, {r}, {}), chi=({}, {}) is not rational",
                self.k,
                chi.a(),
                chi.b()
            ))
        })?;
        Ok(value / Rat::from_integer(BigInt::from(2 * h * h * h * r)))
    }
}

/// Multiplicity of `W_{r,k,χ|X_h}` as an exact character sum over
/// `μ_{2hr} × X_h`.
pub fn mult_theorem3_charsum_oracle(h: usize, r: usize, k: usize, chi: &Character) -> Result<Rat> {
    Theorem3TraceTable::new(h, r, k)?.multiplicity(chi)
}

/// Restriction of a character of `X_{hr}` to `X_h = r·X_{hr}`, in the
/// coordinates `(x', y')` with `(x, y) = (rx', ry')`.
pub fn restrict_to_torsion(chi: &Character, h: usize, r: usize) -> Result<Character> {
    if chi.h() != h * r {
        return Err(Error::LevelMismatch {
            expected: h * r,
            found: chi.h(),
        });
    }
    Character::new(h, chi.a() as i64, chi.b() as i64)
}
