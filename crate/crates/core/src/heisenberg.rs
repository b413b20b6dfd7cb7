//! The finite Theta group `H_n = μ_{2n} × Z/n × Z/n` and its Schrödinger
//! representation.
//!
//! Group law: `(α,x,y)(α',x',y') = (αα'ζ^{y'x}, x+x', y+y')` with `ζ = ζ_n`.
//! The central part is stored as an exponent `t` of `ζ_{2n}`, so `ζ_n^e`
//! contributes `2e` to `t`. All scalars live in `Q(ζ_{2n})`.
//!
//! Matrices follow the columns-are-images convention: column `i` of the
//! Schrödinger matrix of `(α,x,y)` holds `η·f_i = αζ^{y(i-x)} f_{i-x}`.

use crate::arith::{gcd, gcd3, modulo};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeisElem {
    n: usize,
    t: usize,
    x: usize,
    y: usize,
}

impl HeisElem {
    /// Normalizes `t` modulo `2n` and `x, y` modulo `n`.
    pub fn new(n: usize, t: i64, x: i64, y: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidHeisenbergLevel);
        }
        Ok(HeisElem {
            n,
            t: modulo(t, 2 * n),
            x: modulo(x, n),
            y: modulo(y, n),
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::central(n, 0)
    }

    pub fn central(n: usize, t: usize) -> Self {
        assert!(n > 0, "Heisenberg level must be positive");
        HeisElem {
            n,
            t: t % (2 * n),
            x: 0,
            y: 0,
        }
    }

    pub fn level(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn x(&self) -> usize {
        self.x
    }

    pub fn y(&self) -> usize {
        self.y
    }

    pub fn is_identity(&self) -> bool {
        self.t == 0 && self.x == 0 && self.y == 0
    }

    /// All `2n³` elements, ordered by `(t, x, y)`.
    pub fn all(n: usize) -> impl Iterator<Item = HeisElem> {
        (0..2 * n).flat_map(move |t| {
            (0..n).flat_map(move |x| (0..n).map(move |y| HeisElem { n, t, x, y }))
        })
    }

    /// Same element with the central part replaced.
    pub fn with_t(&self, t: usize) -> HeisElem {
        HeisElem {
            t: t % (2 * self.n),
            ..*self
        }
    }

    pub fn check_level(&self, n: usize) -> Result<()> {
        if self.n == n {
            Ok(())
        } else {
            Err(Error::LevelMismatch {
                expected: n,
                found: self.n,
            })
        }
    }
}

pub fn hmul(g: &HeisElem, g2: &HeisElem) -> Result<HeisElem> {
    g2.check_level(g.n)?;
    let n = g.n;
    Ok(HeisElem {
        n,
        t: (g.t + g2.t + 2 * (g2.y * g.x % n)) % (2 * n),
        x: (g.x + g2.x) % n,
        y: (g.y + g2.y) % n,
    })
}

/// `(α,x,y)^{-1} = (α^{-1}ζ^{xy}, -x, -y)`.
pub fn hinv(g: &HeisElem) -> HeisElem {
    let n = g.n;
    HeisElem {
        n,
        t: (2 * n - g.t + 2 * (g.x * g.y % n)) % (2 * n),
        x: (n - g.x) % n,
        y: (n - g.y) % n,
    }
}

/// `s = gcd(n, x)`, `h' = n/s`, `δ = gcd(n, x, y)` and the order `n/δ` of
/// the image of `g` in `X_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ElemOrderData {
    pub s: usize,
    pub h_prime: usize,
    pub delta: usize,
    pub image_order: usize,
}

pub fn order_data(g: &HeisElem) -> ElemOrderData {
    let s = gcd(g.n, g.x);
    let delta = gcd3(g.n, g.x, g.y);
    ElemOrderData {
        s,
        h_prime: g.n / s,
        delta,
        image_order: g.n / delta,
    }
}

/// Square matrix with exactly one nonzero entry per column, each a root of
/// unity `ζ_order^e`; column `j` maps `e_j` to `ζ^{exps[j]} e_{rows[j]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMatrix {
    order: usize,
    rows: Vec<usize>,
    exps: Vec<usize>,
}

impl MonomialMatrix {
    pub fn identity(dim: usize, order: usize) -> Self {
        MonomialMatrix {
            order,
            rows: (0..dim).collect(),
            exps: vec![0; dim],
        }
    }

    pub fn new(order: usize, rows: Vec<usize>, exps: Vec<usize>) -> Result<Self> {
        let dim = rows.len();
        let mut seen = vec![false; dim];
        if exps.len() != dim || order == 0 {
            return Err(Error::InvalidInput("malformed monomial matrix".into()));
        }
        for &r in &rows {
            if r >= dim || std::mem::replace(&mut seen[r], true) {
                return Err(Error::InvalidInput("rows do not form a permutation".into()));
            }
        }
        let exps = exps.into_iter().map(|e| e % order).collect();
        Ok(MonomialMatrix { order, rows, exps })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn exps(&self) -> &[usize] {
        &self.exps
    }

    pub fn mul(&self, other: &MonomialMatrix) -> MonomialMatrix {
        assert_eq!(self.dim(), other.dim());
        assert_eq!(self.order, other.order);
        let (rows, exps) = other
            .rows
            .iter()
            .zip(&other.exps)
            .map(|(&r, &e)| (self.rows[r], (e + self.exps[r]) % self.order))
            .unzip();
        MonomialMatrix {
            order: self.order,
            rows,
            exps,
        }
    }

    pub fn pow(&self, m: usize) -> MonomialMatrix {
        (0..m).fold(MonomialMatrix::identity(self.dim(), self.order), |acc, _| {
            acc.mul(self)
        })
    }

    pub fn transpose(&self) -> MonomialMatrix {
        let dim = self.dim();
        let mut rows = vec![0; dim];
        let mut exps = vec![0; dim];
        for (j, (&r, &e)) in self.rows.iter().zip(&self.exps).enumerate() {
            rows[r] = j;
            exps[r] = e;
        }
        MonomialMatrix {
            order: self.order,
            rows,
            exps,
        }
    }

    pub fn trace(&self) -> CycloNum {
        let mut counts = vec![0i64; self.order];
        for (j, (&r, &e)) in self.rows.iter().zip(&self.exps).enumerate() {
            if r == j {
                counts[e] += 1;
            }
        }
        CycloNum::from_int_coeffs(self.order, &counts)
    }

    /// `sign(π) · Π entries`.
    pub fn determinant(&self) -> CycloNum {
        let dim = self.dim();
        let mut visited = vec![false; dim];
        let mut transpositions = 0;
        for start in 0..dim {
            let mut len = 0;
            let mut j = start;
            while !visited[j] {
                visited[j] = true;
                j = self.rows[j];
                len += 1;
            }
            if len > 0 {
                transpositions += len - 1;
            }
        }
        let mut e = self.exps.iter().sum::<usize>();
        if transpositions % 2 == 1 {
            // -1 is ζ^{order/2} when the order is even; otherwise negate directly.
            if self.order % 2 == 0 {
                e += self.order / 2;
            } else {
                return -CycloNum::one(self.order).mul_root(e as i64);
            }
        }
        CycloNum::one(self.order).mul_root((e % self.order) as i64)
    }

    pub fn to_dense(&self) -> CycloMatrix {
        let dim = self.dim();
        let mut m = CycloMatrix::zero(dim, dim, self.order);
        for (j, (&r, &e)) in self.rows.iter().zip(&self.exps).enumerate() {
            m.entries[r * dim + j] = CycloNum::one(self.order).mul_root(e as i64);
        }
        m
    }
}

/// Dense matrix over one cyclotomic ring, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloMatrix {
    n_rows: usize,
    n_cols: usize,
    order: usize,
    entries: Vec<CycloNum>,
}

impl CycloMatrix {
    pub fn new(n_rows: usize, n_cols: usize, entries: Vec<CycloNum>) -> Result<Self> {
        if n_rows == 0 || n_cols == 0 || entries.len() != n_rows * n_cols {
            return Err(Error::InvalidInput("matrix shape does not match entries".into()));
        }
        let order = entries[0].order();
        if let Some(bad) = entries.iter().find(|e| e.order() != order) {
            return Err(Error::OrderMismatch {
                left: order,
                right: bad.order(),
            });
        }
        Ok(CycloMatrix {
            n_rows,
            n_cols,
            order,
            entries,
        })
    }

    pub fn zero(n_rows: usize, n_cols: usize, order: usize) -> Self {
        CycloMatrix {
            n_rows,
            n_cols,
            order,
            entries: vec![CycloNum::zero(order); n_rows * n_cols],
        }
    }

    pub fn identity(n: usize, order: usize) -> Self {
        let mut m = Self::zero(n, n, order);
        for i in 0..n {
            m.entries[i * n + i] = CycloNum::one(order);
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &CycloNum {
        &self.entries[i * self.n_cols + j]
    }

    pub fn try_mul(&self, other: &CycloMatrix) -> Result<CycloMatrix> {
        if self.n_cols != other.n_rows {
            return Err(Error::InvalidInput("matrix dimensions do not chain".into()));
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        let mut out = CycloMatrix::zero(self.n_rows, other.n_cols, self.order);
        for i in 0..self.n_rows {
            for k in 0..self.n_cols {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.n_cols {
                    let b = other.entry(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.n_cols + j;
                    out.entries[idx] = &out.entries[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[CycloNum]) -> Result<Vec<CycloNum>> {
        if v.len() != self.n_cols {
            return Err(Error::InvalidInput("vector length does not match".into()));
        }
        Ok((0..self.n_rows)
            .map(|i| {
                (0..self.n_cols).fold(CycloNum::zero(self.order), |acc, j| {
                    &acc + &(self.entry(i, j) * &v[j])
                })
            })
            .collect())
    }

    pub fn pow(&self, m: u32) -> Result<CycloMatrix> {
        let mut acc = CycloMatrix::identity(self.n_rows, self.order);
        for _ in 0..m {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    pub fn trace(&self) -> CycloNum {
        (0..self.n_rows.min(self.n_cols)).fold(CycloNum::zero(self.order), |acc, i| {
            &acc + self.entry(i, i)
        })
    }

    /// Permutation expansion, pruning branches through zero entries.
    pub fn determinant(&self) -> Result<CycloNum> {
        if self.n_rows != self.n_cols {
            return Err(Error::InvalidInput("determinant of a non-square matrix".into()));
        }
        let n = self.n_rows;
        let nonzero: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| !self.entry(i, j).is_zero()).collect())
            .collect();
        let mut used = vec![false; n];
        let mut acc = CycloNum::zero(self.order);
        let mut perm = Vec::with_capacity(n);
        self.expand(0, &nonzero, &mut used, &mut perm, &mut acc);
        Ok(acc.reduce_canonical())
    }

    fn expand(
        &self,
        row: usize,
        nonzero: &[Vec<bool>],
        used: &mut [bool],
        perm: &mut Vec<usize>,
        acc: &mut CycloNum,
    ) {
        let n = self.n_rows;
        if row == n {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| perm[i] > perm[j])
                .count();
            let term = perm
                .iter()
                .enumerate()
                .fold(CycloNum::one(self.order), |p, (i, &j)| &p * self.entry(i, j));
            *acc = if inversions % 2 == 0 {
                &*acc + &term
            } else {
                &*acc - &term
            };
            return;
        }
        for col in 0..n {
            if used[col] || !nonzero[row][col] {
                continue;
            }
            used[col] = true;
            perm.push(col);
            self.expand(row + 1, nonzero, used, perm, acc);
            perm.pop();
            used[col] = false;
        }
    }
}

/// The Schrödinger action of `g` as a monomial matrix over `Q(ζ_{2n})`.
pub fn schrodinger_monomial(g: &HeisElem) -> MonomialMatrix {
    let n = g.n;
    let two_n = 2 * n;
    let mut rows = vec![0; n];
    let mut exps = vec![0; n];
    for i in 0..n {
        let target = (i + n - g.x) % n;
        rows[i] = target;
        exps[i] = (g.t + 2 * (g.y * target % n)) % two_n;
    }
    MonomialMatrix {
        order: two_n,
        rows,
        exps,
    }
}

pub fn schrodinger_matrix(g: &HeisElem) -> CycloMatrix {
    schrodinger_monomial(g).to_dense()
}

/// Exponents `t_u` (mod `2n`) of every admissible `u = ζ_{2n}^{t_u}` with
/// `u^{h'} = (-1)^{y x' (h'+1)}`, in increasing order.
pub fn admissible_u_exponents(g: &HeisElem) -> Vec<usize> {
    let two_n = 2 * g.n;
    let target = u_sign_exponent(g);
    let od = order_data(g);
    (0..two_n)
        .filter(|&tu| (tu * od.h_prime) % two_n == target)
        .collect()
}

/// `ζ_{2n}`-exponent of `(-1)^{y x' (h'+1)}`: either `0` or `n`.
fn u_sign_exponent(g: &HeisElem) -> usize {
    let od = order_data(g);
    let x_prime = g.x / od.s;
    if (g.y * x_prime * (od.h_prime + 1)) % 2 == 1 {
        g.n
    } else {
        0
    }
}

/// `ζ_{2n}`-exponents of `u ζ_y^i σ^j` (`1 ≤ i ≤ s`, `1 ≤ j ≤ h'`) for the
/// given `u`, before scaling by the central part of `g`.
fn eigen_exponents_unscaled(g: &HeisElem, tu: usize) -> Vec<usize> {
    let n = g.n;
    let two_n = 2 * n;
    let od = order_data(g);
    let mut out = Vec::with_capacity(n);
    for i in 1..=od.s {
        for j in 1..=od.h_prime {
            out.push((tu + 2 * (g.y * i % n) + 2 * od.s * j) % two_n);
        }
    }
    out
}

/// Eigenvalue exponents for an arbitrary admissible choice of `u`, sorted.
pub fn eigenvalue_exponents_with_u(g: &HeisElem, tu: usize) -> Vec<usize> {
    let two_n = 2 * g.n;
    let mut out: Vec<usize> = eigen_exponents_unscaled(g, tu)
        .into_iter()
        .map(|e| (e + g.t) % two_n)
        .collect();
    out.sort_unstable();
    out
}

/// Eigenvalues of the Schrödinger matrix of `g` as `ζ_{2n}` exponents,
/// sorted. Uses the smallest admissible `u`.
pub fn eigenvalue_exponents(g: &HeisElem) -> Vec<usize> {
    eigenvalue_exponents_with_u(g, u_sign_exponent(g) * order_data(g).s / g.n.max(1))
}

pub fn eigenvalue_multiset(g: &HeisElem) -> Vec<CycloNum> {
    let two_n = 2 * g.n;
    eigenvalue_exponents(g)
        .into_iter()
        .map(|e| CycloNum::one(two_n).mul_root(e as i64))
        .collect()
}

/// The eigenvector `v_λ = Σ_k λ^{-k} ζ_y^{ki - k(k+1)x/2} f_{i-kx}` for
/// `λ = λ_{i,j}` (`1 ≤ i ≤ s`, `1 ≤ j ≤ h'`), together with that eigenvalue.
/// The formula is written for trivial central part; a nontrivial `α` only
/// rescales the eigenvalue.
pub fn eigenvector(g: &HeisElem, i: usize, j: usize) -> Result<(CycloNum, Vec<CycloNum>)> {
    let od = order_data(g);
    if i == 0 || i > od.s || j == 0 || j > od.h_prime {
        return Err(Error::InvalidInput(format!(
            "eigenvalue index ({i}, {j}) outside 1..={} x 1..={}",
            od.s, od.h_prime
        )));
    }
    let n = g.n;
    let two_n = 2 * n;
    let tu = u_sign_exponent(g) * od.s / n;
    let lam0 = (tu + 2 * (g.y * i % n) + 2 * od.s * j) % two_n;
    let mut v = vec![CycloNum::zero(two_n); n];
    for k in 0..od.h_prime {
        let tri = k * (k + 1) / 2;
        let zeta_exp = modulo(
            (g.y as i64) * ((k * i) as i64 - (tri * g.x) as i64),
            n,
        );
        let e = modulo(-((k * lam0) as i64) + 2 * zeta_exp as i64, two_n);
        let idx = modulo(i as i64 - (k * g.x) as i64, n);
        v[idx] = &v[idx] + &CycloNum::one(two_n).mul_root(e as i64);
    }
    let lambda = CycloNum::one(two_n).mul_root(((lam0 + g.t) % two_n) as i64);
    Ok((lambda, v))
}

/// Power sums `p_m = tr(M^m)` for `m = 1..=count`.
pub fn power_sums(m: &MonomialMatrix, count: usize) -> Vec<CycloNum> {
    let mut out = Vec::with_capacity(count);
    let mut acc = MonomialMatrix::identity(m.dim(), m.order());
    for _ in 0..count {
        acc = acc.mul(m);
        out.push(acc.trace().reduce_canonical());
    }
    out
}
