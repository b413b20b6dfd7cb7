//! Sweeps comparing closed forms against oracles. Each sweep yields one
//! [`Check`] per parameter group; a failing check carries the first
//! counterexample found.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::arith::{divisors, ext_gcd, gcd};
use crate::chartab::{
    mk_trace_closed, schulte_trace, sym_trace_oracle, symhk_trace_closed, wedge_trace,
};
use crate::cyclo::{CycloNum, Rat};
use crate::error::{Error, Result};
use crate::heisenberg::{hinv, hmul, HeisElem};
use crate::verlinde::{
    enumerate_characters, mult_theorem1, mult_theorem3, n_lambda, order_orbit_automorphism,
    restrict_to_torsion, torsion_sum_brute, torsion_sum_closed, Character, MkTraceTable,
    Theorem3TraceTable,
};

/// The tuples `(h, r, k)` on which the representation identity is checked
/// element by element.
pub const FINAL_IDENTITY_TUPLES: [(usize, usize, usize); 6] =
    [(2, 1, 1), (2, 1, 2), (2, 2, 1), (3, 1, 1), (3, 2, 1), (2, 3, 1)];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    LemmaChr,
    LemmaNl,
    Theorem1,
    Theorem3,
    FinalIdentity,
    OrderOrbit,
    All,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 6] = [
        Suite::LemmaChr,
        Suite::LemmaNl,
        Suite::Theorem1,
        Suite::Theorem3,
        Suite::FinalIdentity,
        Suite::OrderOrbit,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::LemmaChr => "lemma-chr",
            Suite::LemmaNl => "lemma-nl",
            Suite::Theorem1 => "theorem1",
            Suite::Theorem3 => "theorem3",
            Suite::FinalIdentity => "final-identity",
            Suite::OrderOrbit => "order-orbit",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::INDIVIDUAL
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Optional overrides of a suite's default bounds. `max_q` bounds `k` in the
/// `W_{r,k,ξ}` sweep; `max_rk` bounds `hr`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Bounds {
    pub max_h: Option<usize>,
    pub max_q: Option<usize>,
    pub max_rk: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn from_result(name: String, outcome: Result<std::result::Result<(), String>>) -> Self {
        match outcome {
            Ok(Ok(())) => Check { name, passed: true, detail: String::new() },
            Ok(Err(detail)) => Check { name, passed: false, detail },
            Err(e) => Check { name, passed: false, detail: format!("error: {e}") },
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            write!(f, "PASS {}", self.name)
        } else {
            write!(f, "FAIL {}: {}", self.name, self.detail)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub fn run(suite: Suite, bounds: &Bounds) -> SuiteReport {
    let checks = match suite {
        Suite::LemmaChr => {
            let (h, q) = (bounds.max_h.unwrap_or(5), bounds.max_q.unwrap_or(4));
            let mut c = mk_trace_sweep(h, q);
            c.extend(sym_trace_closed_form(h.min(6), 8));
            c.extend(sym_trace_centrality(h.min(6), 8));
            c
        }
        Suite::LemmaNl => {
            let h = bounds.max_h.unwrap_or(24);
            let mut c = torsion_sum_sweep(h);
            c.extend(nl_multiplicativity(h.min(12)));
            c
        }
        Suite::Theorem1 => {
            let (h, q) = (bounds.max_h.unwrap_or(5), bounds.max_q.unwrap_or(4));
            let mut c = theorem1(h, q);
            c.extend(r1_consistency(bounds.max_h.unwrap_or(6), q));
            c
        }
        Suite::Theorem3 => theorem3(bounds.max_rk.unwrap_or(6), bounds.max_q.unwrap_or(3)),
        Suite::FinalIdentity => {
            let tuples: Vec<_> = FINAL_IDENTITY_TUPLES
                .into_iter()
                .filter(|&(h, r, _)| bounds.max_rk.is_none_or(|m| h * r <= m))
                .collect();
            let mut c = final_identity(&tuples);
            c.extend(representative_independence(&tuples));
            c
        }
        Suite::OrderOrbit => {
            let (h, q) = (bounds.max_h.unwrap_or(8), bounds.max_q.unwrap_or(3));
            let mut c = order_orbit(h, q);
            c.extend(orbit_automorphisms(h.min(6)));
            c
        }
        Suite::All => {
            return SuiteReport {
                checks: Suite::INDIVIDUAL
                    .iter()
                    .flat_map(|s| run(*s, bounds).checks)
                    .collect(),
            }
        }
    };
    SuiteReport { checks }
}

fn first_mismatch<T: PartialEq + fmt::Display>(
    items: impl IntoIterator<Item = (String, Result<(T, T)>)>,
) -> Result<std::result::Result<(), String>> {
    for (label, pair) in items {
        let (lhs, rhs) = pair?;
        if lhs != rhs {
            return Ok(Err(format!("{label}: {lhs} != {rhs}")));
        }
    }
    Ok(Ok(()))
}

fn elem_label(g: &HeisElem) -> String {
    format!("(t,x,y)=({},{},{})", g.t(), g.x(), g.y())
}

/// Closed trace on `M_k` against Newton trace times the wedge trace to the
/// `q-1`, on every element of `H_h`.
pub fn mk_trace_sweep(max_h: usize, max_q: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for h in 1..=max_h {
        for q in 2..=max_q {
            let outcome = first_mismatch(HeisElem::all(h).map(|g| {
                let pair = (|| {
                    let closed = CycloNum::from_rat(2 * h, &mk_trace_closed(h, q, &g)?);
                    let sym = sym_trace_oracle(h, h * (q - 1), &g)?;
                    let oracle = &sym * &wedge_trace(&g).pow((q - 1) as u32);
                    Ok((closed.reduce_canonical(), oracle.reduce_canonical()))
                })();
                (elem_label(&g), pair)
            }));
            out.push(Check::from_result(format!("lemma-chr h={h} q={q}"), outcome));
        }
    }
    out
}

/// Closed trace on `Sym^K S_n^∨` against the Newton oracle for all
/// `n ≤ max_n`, `K ≤ max_k`, including its support on `X_h`, `h = gcd(n, K)`.
pub fn sym_trace_closed_form(max_n: usize, max_k: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for degree in 1..=max_k {
            let h = gcd(n, degree);
            let (r, k) = (n / h, degree / h);
            let outcome = first_mismatch(HeisElem::all(n).map(|g| {
                let pair = (|| {
                    let closed = symhk_trace_closed(h, r, k, &g)?;
                    let oracle = sym_trace_oracle(n, degree, &g)?;
                    let on_support = g.x() % r == 0 && g.y() % r == 0;
                    if on_support == oracle.is_zero() {
                        return Err(Error::Inconsistency(format!(
                            "support law fails at {}",
                            elem_label(&g)
                        )));
                    }
                    Ok((closed.reduce_canonical(), oracle.reduce_canonical()))
                })();
                (elem_label(&g), pair)
            }));
            out.push(Check::from_result(format!("sym-trace n={n} K={degree}"), outcome));
        }
    }
    out
}

/// Newton traces on `Sym^K S_n^∨` are class functions on which the center
/// acts through `α^{-K}`.
pub fn sym_trace_centrality(max_n: usize, max_k: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for degree in 1..=max_k {
            let outcome = (|| {
                let table: HashMap<HeisElem, CycloNum> = HeisElem::all(n)
                    .map(|g| sym_trace_oracle(n, degree, &g).map(|tr| (g, tr)))
                    .collect::<Result<_>>()?;
                let gens = [HeisElem::new(n, 0, 1, 0)?, HeisElem::new(n, 0, 0, 1)?];
                for (g, tr) in &table {
                    for s in &gens {
                        let conj = hmul(&hmul(s, g)?, &hinv(s))?;
                        if &table[&conj] != tr {
                            return Ok(Err(format!(
                                "trace differs on conjugate of {}",
                                elem_label(g)
                            )));
                        }
                    }
                    let shifted = hmul(&HeisElem::central(n, 1), g)?;
                    if table[&shifted] != tr.mul_root(-(degree as i64)) {
                        return Ok(Err(format!(
                            "central character fails at {}",
                            elem_label(g)
                        )));
                    }
                }
                Ok(Ok(()))
            })();
            out.push(Check::from_result(format!("sym-centrality n={n} K={degree}"), outcome));
        }
    }
    out
}

/// Brute torsion sums against the closed form for `ξ_λ`, `λ | h`, all `δ | h`.
pub fn torsion_sum_sweep(max_h: usize) -> Vec<Check> {
    (1..=max_h)
        .map(|h| {
            let items = divisors(h).into_iter().flat_map(move |lam| {
                divisors(h).into_iter().map(move |delta| {
                    let pair = Character::new(h, lam as i64, lam as i64).and_then(|xi| {
                        Ok((torsion_sum_brute(h, &xi, delta)?, torsion_sum_closed(h, &xi, delta)?))
                    });
                    (format!("lambda={lam} delta={delta}"), pair)
                })
            });
            Check::from_result(format!("lemma-nl h={h}"), first_mismatch(items))
        })
        .collect()
}

/// `N_λ(h₁h₂) = N_{λv}(h₁) N_{λu}(h₂)` with `h₁u + h₂v = 1`.
pub fn nl_multiplicativity(max_h: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for h1 in 1..=max_h {
        for h2 in 1..=max_h {
            if gcd(h1, h2) != 1 {
                continue;
            }
            let (_, u, v) = ext_gcd(h1 as i64, h2 as i64);
            let items = divisors(h1 * h2).into_iter().map(|lam| {
                let l = lam as i64;
                let pair = (|| {
                    let lhs = n_lambda(h1 * h2, l)?;
                    let rhs = n_lambda(h1, l * v)? * n_lambda(h2, l * u)?;
                    Ok((lhs, rhs))
                })();
                (format!("lambda={lam} u={u} v={v}"), pair)
            });
            out.push(Check::from_result(
                format!("nl-multiplicativity h1={h1} h2={h2}"),
                first_mismatch(items),
            ));
        }
    }
    out
}

/// Closed-form multiplicities against the character sum over `H_h`.
pub fn theorem1(max_h: usize, max_q: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for h in 1..=max_h {
        for q in 2..=max_q {
            let outcome = MkTraceTable::new(h, q).and_then(|table| {
                first_mismatch(enumerate_characters(h).into_iter().map(|xi| {
                    let pair = (|| Ok((mult_theorem1(h, q, xi.order())?, table.multiplicity(&xi)?)))();
                    (format!("xi=({},{})", xi.a(), xi.b()), pair)
                }))
            });
            out.push(Check::from_result(format!("theorem1 h={h} q={q}"), outcome));
        }
    }
    out
}

/// The rank-one case of the general formula reproduces the line-bundle one.
pub fn r1_consistency(max_h: usize, max_q: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for h in 1..=max_h {
        let items: Vec<_> = (2..=max_q)
            .flat_map(|q| {
                divisors(h).into_iter().map(move |omega| {
                    let pair = (|| Ok((mult_theorem3(h, 1, q - 1, omega)?, mult_theorem1(h, q, omega)?)))();
                    (format!("q={q} omega={omega}"), pair)
                })
            })
            .collect();
        out.push(Check::from_result(format!("r1-consistency h={h}"), first_mismatch(items)));
    }
    out
}

/// Coprime `(h, r, k)` with `hr ≤ max_rk` and `k ≤ max_k`.
pub fn theorem3_tuples(max_rk: usize, max_k: usize) -> Vec<(usize, usize, usize)> {
    let mut tuples = Vec::new();
    for n in 1..=max_rk {
        for h in divisors(n) {
            let r = n / h;
            for k in 1..=max_k {
                if gcd(r, k) == 1 {
                    tuples.push((h, r, k));
                }
            }
        }
    }
    tuples
}

/// Closed-form multiplicities of `W_{r,k,ξ}` against the character sum over
/// `μ_{2hr} × X_h`, for every character of `X_{hr}`.
pub fn theorem3(max_rk: usize, max_k: usize) -> Vec<Check> {
    theorem3_tuples(max_rk, max_k)
        .into_iter()
        .map(|(h, r, k)| {
            let outcome = Theorem3TraceTable::new(h, r, k).and_then(|table| {
                first_mismatch(enumerate_characters(h * r).into_iter().map(|chi| {
                    let pair = (|| {
                        let omega = restrict_to_torsion(&chi, h, r)?.order();
                        Ok((mult_theorem3(h, r, k, omega)?, table.multiplicity(&chi)?))
                    })();
                    (format!("chi=({},{})", chi.a(), chi.b()), pair)
                }))
            });
            Check::from_result(format!("theorem3 h={h} r={r} k={k}"), outcome)
        })
        .collect()
}

/// Representatives in `X̂_{hr}` of the characters of `X_h`: `(a, b)` with
/// `a, b < h`, shifted by `h·shift(a, b)`. Any shift gives a valid set.
fn representatives(
    h: usize,
    r: usize,
    shift: impl Fn(usize, usize) -> (usize, usize),
) -> Vec<Character> {
    let n = h * r;
    let mut reps = Vec::with_capacity(h * h);
    for a in 0..h {
        for b in 0..h {
            let (sa, sb) = shift(a, b);
            reps.push(Character::new(n, (a + h * sa) as i64, (b + h * sb) as i64).expect("n > 0"));
        }
    }
    reps
}

/// `Tr_{Sym^{hk} S_{hr}^∨}(g) = Tr_R(g) · Σ_χ m_χ χ(g)` on all of `H_{hr}`.
fn final_identity_with(
    h: usize,
    r: usize,
    k: usize,
    reps: &[Character],
) -> Result<std::result::Result<(), String>> {
    let n = h * r;
    let mults: BTreeMap<usize, Rat> = divisors(h)
        .into_iter()
        .map(|omega| mult_theorem3(h, r, k, omega).map(|m| (omega, m)))
        .collect::<Result<_>>()?;
    let weights: Vec<(Character, Rat)> = reps
        .iter()
        .map(|chi| Ok((*chi, mults[&restrict_to_torsion(chi, h, r)?.order()].clone())))
        .collect::<Result<_>>()?;
    first_mismatch(HeisElem::all(n).map(|g| {
        let pair = (|| {
            let mut sum = CycloNum::zero(2 * n);
            for (chi, m) in &weights {
                let e = chi.exponent(g.x(), g.y()) as i64;
                sum = &sum + &CycloNum::from_rat(2 * n, m).mul_root(2 * e);
            }
            let rhs = &schulte_trace(h, r, k, &g)? * &sum;
            let lhs = sym_trace_oracle(n, h * k, &g)?;
            Ok((lhs.reduce_canonical(), rhs.reduce_canonical()))
        })();
        (elem_label(&g), pair)
    }))
}

pub fn final_identity(tuples: &[(usize, usize, usize)]) -> Vec<Check> {
    tuples
        .iter()
        .map(|&(h, r, k)| {
            let reps = representatives(h, r, |_, _| (0, 0));
            Check::from_result(
                format!("final-identity h={h} r={r} k={k}"),
                final_identity_with(h, r, k, &reps),
            )
        })
        .collect()
}

/// The identity holds for a second, non-canonical choice of representatives.
pub fn representative_independence(tuples: &[(usize, usize, usize)]) -> Vec<Check> {
    tuples
        .iter()
        .map(|&(h, r, k)| {
            let reps = representatives(h, r, |a, b| ((a + b + 1) % r, (a * 7 + 3) % r));
            Check::from_result(
                format!("representatives h={h} r={r} k={k}"),
                final_identity_with(h, r, k, &reps),
            )
        })
        .collect()
}

/// Oracle multiplicities are constant on each order class of `X̂_h`.
pub fn order_orbit(max_h: usize, max_q: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for h in 1..=max_h {
        for q in 2..=max_q {
            let outcome = (|| {
                let table = MkTraceTable::new(h, q)?;
                let mut seen: BTreeMap<usize, (Character, Rat)> = BTreeMap::new();
                for xi in enumerate_characters(h) {
                    let m = table.multiplicity(&xi)?;
                    match seen.get(&xi.order()) {
                        Some((first, m0)) if *m0 != m => {
                            return Ok(Err(format!(
                                "order {}: ({},{}) has {m0}, ({},{}) has {m}",
                                xi.order(),
                                first.a(),
                                first.b(),
                                xi.a(),
                                xi.b()
                            )))
                        }
                        Some(_) => {}
                        None => {
                            seen.insert(xi.order(), (xi, m));
                        }
                    }
                }
                Ok(Ok(()))
            })();
            out.push(Check::from_result(format!("order-orbit h={h} q={q}"), outcome));
        }
    }
    out
}

/// An `SL_2(Z/h)` element connects every pair of characters of equal order.
/// For odd `h` its lift must also be a homomorphism fixing the center.
pub fn orbit_automorphisms(max_h: usize) -> Vec<Check> {
    (1..=max_h)
        .map(|h| {
            let outcome = (|| {
                let chars = enumerate_characters(h);
                let mut non_hom = 0usize;
                for c1 in &chars {
                    for c2 in chars.iter().filter(|c| c.order() == c1.order()) {
                        let rep = order_orbit_automorphism(h, c1, c2)?;
                        if !rep.induced_map_ok {
                            return Ok(Err(format!("({},{}) -> ({},{})", c1.a(), c1.b(), c2.a(), c2.b())));
                        }
                        if !(rep.homomorphism && rep.fixes_center) {
                            non_hom += 1;
                        }
                    }
                }
                if h % 2 == 1 && non_hom > 0 {
                    return Ok(Err(format!("{non_hom} lifts fail to be homomorphisms")));
                }
                Ok(Ok(()))
            })();
            Check::from_result(format!("orbit-automorphism h={h}"), outcome)
        })
        .collect()
}
