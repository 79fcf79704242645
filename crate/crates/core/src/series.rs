//! Truncated power series, Catalan-type counts and graded dimensions.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{int, Coeff};
use crate::error::{Error, Result};
use crate::forest::{enumerate_forests_capped, enumerate_trees_capped, DecorationSet, Forest};
use crate::hopf::reduced_coproduct;
use crate::matrix::rank;
use crate::pairing::DualBasis;
use crate::Element;

/// Catalan number `C_n`, saturating at `u128::MAX`.
pub fn catalan(n: u32) -> u128 {
    let mut c: u128 = 1;
    for i in 0..n {
        let i = u128::from(i);
        c = match c.checked_mul(2 * (2 * i + 1)) {
            Some(v) => v / (i + 2),
            None => return u128::MAX,
        };
    }
    c
}

/// `τ_k = C_{k-1}`, the number of planar rooted trees with `k` vertices;
/// `τ_0 = 0`.
pub fn tau(k: u32) -> u128 {
    if k == 0 {
        0
    } else {
        catalan(k - 1)
    }
}

/// Dimensions `(r_n, p_n)` of the weight-`n` part and of its primitive
/// elements, with `d` decorations.
pub fn dims(n: u32, d: u32) -> (BigInt, BigInt) {
    let dn = BigInt::from(d).pow(n);
    (&dn * BigInt::from(catalan(n)), dn * BigInt::from(tau(n)))
}

/// A power series truncated after `X^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Coeff>,
}

impl PowerSeries {
    /// Series with the given leading coefficients, zero-padded or
    /// truncated to `order`.
    pub fn new(mut coeffs: Vec<Coeff>, order: usize) -> Self {
        coeffs.resize(order + 1, Coeff::zero());
        PowerSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![Coeff::one()], order)
    }

    /// The series `X`.
    pub fn x(order: usize) -> Self {
        Self::new(vec![Coeff::zero(), Coeff::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Coeff {
        self.coeffs.get(n).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// `f(X) ↦ f(dX)`.
    pub fn dilate(&self, d: &Coeff) -> Self {
        let mut p = Coeff::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &p);
            p *= d;
        }
        PowerSeries { coeffs: out }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::ZeroElement);
        }
        let n = self.order();
        let mut out = vec![Coeff::zero(); n + 1];
        out[0] = a0.recip();
        for k in 1..=n {
            let mut s = Coeff::zero();
            for i in 1..=k {
                s += &self.coeffs[i] * &out[k - i];
            }
            out[k] = -s / a0;
        }
        Ok(PowerSeries { coeffs: out })
    }

    pub fn pow(&self, m: usize) -> Self {
        (0..m).fold(Self::one(self.order()), |acc, _| &acc * self)
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        PowerSeries { coeffs: (0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect() }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        PowerSeries { coeffs: (0..=n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect() }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![Coeff::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for j in 0..=n - i {
                out[i + j] += a * &rhs.coeffs[j];
            }
        }
        PowerSeries { coeffs: out }
    }
}

/// `T(X) = Σ τ_k X^k` from the recurrence `τ_k = Σ_{i=1}^{k-1} τ_i τ_{k-i}`.
pub fn tau_series(order: usize) -> PowerSeries {
    let mut c = vec![Coeff::zero(); order + 1];
    if order >= 1 {
        c[1] = Coeff::one();
    }
    for k in 2..=order {
        let mut s = Coeff::zero();
        for i in 1..k {
            s += &c[i] * &c[k - i];
        }
        c[k] = s;
    }
    PowerSeries { coeffs: c }
}

/// A bivariate series truncated at `X^order` and `Y^order`; entry `[n][m]`
/// is the coefficient of `X^n Y^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    pub coeffs: Vec<Vec<Coeff>>,
}

impl BiSeries {
    pub fn zero(order: usize) -> Self {
        BiSeries { coeffs: vec![vec![Coeff::zero(); order + 1]; order + 1] }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize, m: usize) -> Coeff {
        self.coeffs[n][m].clone()
    }

    fn mul(&self, rhs: &BiSeries) -> BiSeries {
        let n = self.order();
        let mut out = Self::zero(n);
        for a in 0..=n {
            for b in 0..=n {
                if self.coeffs[a][b].is_zero() {
                    continue;
                }
                for c in 0..=n - a {
                    for d in 0..=n - b {
                        out.coeffs[a + c][b + d] += &self.coeffs[a][b] * &rhs.coeffs[c][d];
                    }
                }
            }
        }
        out
    }

    fn reciprocal(&self) -> Result<BiSeries> {
        let n = self.order();
        let a0 = self.coeffs[0][0].clone();
        if a0.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut out = Self::zero(n);
        for total in 0..=2 * n {
            for a in 0..=n.min(total) {
                let b = total - a;
                if b > n {
                    continue;
                }
                if a == 0 && b == 0 {
                    out.coeffs[0][0] = a0.recip();
                    continue;
                }
                let mut s = Coeff::zero();
                for c in 0..=a {
                    for d in 0..=b {
                        if (c, d) != (0, 0) {
                            s += &self.coeffs[c][d] * &out.coeffs[a - c][b - d];
                        }
                    }
                }
                out.coeffs[a][b] = -s / &a0;
            }
        }
        Ok(out)
    }
}

/// Generating functions of the tensor coalgebra on a graded space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorSeries {
    /// Generating function of the grades.
    pub p: PowerSeries,
    /// `R = 1/(1 - P)`.
    pub r: PowerSeries,
    /// `H_m = P^m` for `m = 0..=order`.
    pub h_m: Vec<PowerSeries>,
    /// `H(X, Y) = Σ H_m Y^m`.
    pub h: BiSeries,
    /// `R / ((1 - Y) R + Y)`, computed by bivariate division.
    pub h_closed: BiSeries,
}

/// Series of `T(V)` where `grades[i]` is the dimension of `V_i`; requires
/// `grades[0] = 0`.
pub fn tv_series(grades: &[Coeff], order: usize) -> Result<TensorSeries> {
    if grades.first().is_some_and(|g| !g.is_zero()) {
        return Err(Error::Missing("the grade-0 dimension must vanish".into()));
    }
    let p = PowerSeries::new(grades.to_vec(), order);
    let r = (&PowerSeries::one(order) - &p).reciprocal()?;
    let h_m: Vec<PowerSeries> = (0..=order).map(|m| p.pow(m)).collect();
    let mut h = BiSeries::zero(order);
    for (m, hm) in h_m.iter().enumerate() {
        for n in 0..=order {
            h.coeffs[n][m] = hm.coeff(n);
        }
    }
    let mut num = BiSeries::zero(order);
    let mut den = BiSeries::zero(order);
    for n in 0..=order {
        num.coeffs[n][0] = r.coeff(n);
        den.coeffs[n][0] = r.coeff(n);
        if order >= 1 {
            let one = if n == 0 { Coeff::one() } else { Coeff::zero() };
            den.coeffs[n][1] = one - r.coeff(n);
        }
    }
    let h_closed = num.mul(&den.reciprocal()?);
    Ok(TensorSeries { p, r, h_m, h, h_closed })
}

/// Outcome of the primitive rank computation in one weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveRank {
    pub dimension: usize,
    /// Dimension of the kernel of the reduced coproduct.
    pub kernel: usize,
    /// Rank of the family `e_t`, `t` a tree.
    pub dual_trees: usize,
    /// Whether every `e_t` lies in the kernel.
    pub dual_trees_primitive: bool,
}

/// Solves `Δ̃ = 0` on the weight-`n` component and compares with the span
/// of the `e_t`.
pub fn primitive_rank(n: usize, set: &DecorationSet, cap: u128) -> Result<PrimitiveRank> {
    let basis = enumerate_forests_capped(n, set, cap)?;
    let mut keys: std::collections::BTreeMap<Vec<Forest>, usize> = std::collections::BTreeMap::new();
    let mut columns = Vec::with_capacity(basis.len());
    for f in &basis {
        let d = reduced_coproduct(&Element::forest(f.clone()))?;
        let mut col = Vec::new();
        for (k, c) in d.iter() {
            let next = keys.len();
            let idx = *keys.entry(k.clone()).or_insert(next);
            col.push((idx, c.clone()));
        }
        columns.push(col);
    }
    let mut rows = vec![vec![Coeff::zero(); basis.len()]; keys.len()];
    for (j, col) in columns.into_iter().enumerate() {
        for (i, c) in col {
            rows[i][j] = c;
        }
    }
    let kernel = basis.len() - rank(rows);

    let mut db = DualBasis::new(set, cap);
    let mut vectors = Vec::new();
    let mut primitive = true;
    for t in enumerate_trees_capped(n, set, cap)? {
        let e = db.e(&t.to_forest())?;
        primitive &= reduced_coproduct(&e)?.is_zero();
        vectors.push(basis.iter().map(|f| e.coeff(f)).collect());
    }
    Ok(PrimitiveRank { dimension: basis.len(), kernel, dual_trees: rank(vectors), dual_trees_primitive: primitive })
}
