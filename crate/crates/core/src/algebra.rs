//! Sparse linear combinations and tensors with exact rational coefficients.

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::forest::{DecorationSet, Forest};

/// Exact rational coefficient.
pub type Coeff = BigRational;

/// Integer coefficient as a rational.
pub fn int(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

/// The rational `p/q`.
pub fn ratio(p: i64, q: i64) -> Coeff {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Decimal text `p` or `p/q`.
pub fn format_coeff(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Parses `p` or `p/q`.
pub fn parse_coeff(s: &str) -> Option<Coeff> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p.trim().parse().ok()?, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// A basis of a graded algebra whose product sends basis elements to basis
/// elements.
pub trait Monomial: Clone + Ord {
    /// The unit.
    fn one() -> Self;
    /// Product of two basis elements.
    fn mul(&self, other: &Self) -> Self;
    /// Degree in the grading.
    fn weight(&self) -> usize;
    /// Whether this is the unit.
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Monomial for Forest {
    fn one() -> Self {
        Forest::unit()
    }
    fn mul(&self, other: &Self) -> Self {
        self.concat(other)
    }
    fn weight(&self) -> usize {
        Forest::weight(self)
    }
    fn is_one(&self) -> bool {
        self.is_unit()
    }
}

/// A finite linear combination of basis elements `K`; zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Coeff>,
}

/// An element of the forest algebra.
pub type Element = LinComb<Forest>;

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    /// The zero combination.
    pub fn zero() -> Self {
        Self::default()
    }

    /// A basis element with coefficient one.
    pub fn basis(k: K) -> Self {
        Self::term(k, Coeff::one())
    }

    /// `c · k`.
    pub fn term(k: K, c: Coeff) -> Self {
        let mut out = Self::zero();
        out.add_term(k, c);
        out
    }

    /// Sums the given terms.
    pub fn from_terms<I: IntoIterator<Item = (K, Coeff)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    /// Adds `c · k` in place.
    pub fn add_term(&mut self, k: K, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Adds `c · other` in place.
    pub fn add_scaled(&mut self, other: &Self, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    /// Terms in increasing basis order.
    pub fn iter(&self) -> impl Iterator<Item = (&K, &Coeff)> {
        self.terms.iter()
    }

    /// Coefficient of `k`.
    pub fn coeff(&self, k: &K) -> Coeff {
        self.terms.get(k).cloned().unwrap_or_else(Coeff::zero)
    }

    /// Whether every coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Whether there are no terms.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `c · self`.
    pub fn scaled(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    /// Linear extension of a map defined on basis elements.
    pub fn map_linear<J: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<J>) -> LinComb<J> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Fallible version of [`LinComb::map_linear`].
    pub fn try_map_linear<J: Ord + Clone>(
        &self,
        mut f: impl FnMut(&K) -> Result<LinComb<J>>,
    ) -> Result<LinComb<J>> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k)?, c);
        }
        Ok(out)
    }

    /// Keeps the terms whose basis element satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        LinComb { terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, v)| (k.clone(), v.clone())).collect() }
    }

    /// Whether all coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Text form using `show` for basis elements, largest term first, e.g.
    /// `-*[*] + * *`.
    pub fn render_with(&self, mut show: impl FnMut(&K) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let a = c.abs();
            let body = show(k);
            if a.is_one() {
                out.push_str(&body);
            } else {
                out.push_str(&format!("{}·({})", format_coeff(&a), body));
            }
        }
        out
    }
}

impl<K: Monomial> LinComb<K> {
    /// The unit element.
    pub fn one() -> Self {
        Self::basis(K::one())
    }

    /// Coefficient of the unit.
    pub fn counit(&self) -> Coeff {
        self.coeff(&K::one())
    }

    /// The weight-`n` component.
    pub fn homogeneous_part(&self, n: usize) -> Self {
        self.filter(|k| k.weight() == n)
    }

    /// Drops the unit component.
    pub fn augmentation_part(&self) -> Self {
        self.filter(|k| !k.is_one())
    }

    /// Largest weight present, `None` for zero.
    pub fn max_weight(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::weight).max()
    }

    /// Whether all terms have weight `n`.
    pub fn is_homogeneous(&self, n: usize) -> bool {
        self.terms.keys().all(|k| k.weight() == n)
    }

    /// `self^k`.
    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }
}

impl Element {
    /// The forest `f` as an element.
    pub fn forest(f: Forest) -> Self {
        Self::basis(f)
    }

    /// Text form with forests rendered through `set`.
    pub fn render(&self, set: &DecorationSet) -> String {
        self.render_with(|f| set.render(f))
    }
}

impl<K: Ord + Clone> Add for LinComb<K> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<K: Ord + Clone> Add<&LinComb<K>> for &LinComb<K> {
    type Output = LinComb<K>;
    fn add(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<K: Ord + Clone> AddAssign<&LinComb<K>> for LinComb<K> {
    fn add_assign(&mut self, rhs: &LinComb<K>) {
        for (k, v) in &rhs.terms {
            self.add_term(k.clone(), v.clone());
        }
    }
}

impl<K: Ord + Clone> Sub for LinComb<K> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl<K: Ord + Clone> Sub<&LinComb<K>> for &LinComb<K> {
    type Output = LinComb<K>;
    fn sub(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<K: Ord + Clone> SubAssign<&LinComb<K>> for LinComb<K> {
    fn sub_assign(&mut self, rhs: &LinComb<K>) {
        for (k, v) in &rhs.terms {
            self.add_term(k.clone(), -v.clone());
        }
    }
}

impl<K: Ord + Clone> Neg for LinComb<K> {
    type Output = Self;
    fn neg(self) -> Self {
        LinComb { terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect() }
    }
}

impl<K: Monomial> Mul<&LinComb<K>> for &LinComb<K> {
    type Output = LinComb<K>;
    fn mul(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = LinComb::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

impl<K: Monomial> Mul for LinComb<K> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

/// A linear combination of `k`-fold tensors of basis elements.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tensor<K: Ord> {
    arity: usize,
    terms: BTreeMap<Vec<K>, Coeff>,
}

/// Tensors of forests.
pub type ForestTensor = Tensor<Forest>;

impl<K: Ord + Clone> Tensor<K> {
    /// Zero tensor of the given arity.
    pub fn zero(arity: usize) -> Self {
        Tensor { arity, terms: BTreeMap::new() }
    }

    /// `c · (k_1 ⊗ ... ⊗ k_n)`.
    pub fn term(factors: Vec<K>, c: Coeff) -> Self {
        let mut out = Self::zero(factors.len());
        out.add_term(factors, c);
        out
    }

    /// `a ⊗ b` for basis elements.
    pub fn pair(a: K, b: K) -> Self {
        Self::term(vec![a, b], Coeff::one())
    }

    /// Number of tensor factors.
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Adds `c · factors` in place.
    ///
    /// # Panics
    /// If the number of factors differs from the arity.
    pub fn add_term(&mut self, factors: Vec<K>, c: Coeff) {
        assert_eq!(factors.len(), self.arity, "tensor arity");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(factors) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Adds `c · other` in place.
    pub fn add_scaled(&mut self, other: &Self, c: &Coeff) -> Result<()> {
        if other.arity != self.arity {
            return Err(Error::ArityMismatch(self.arity, other.arity));
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
        Ok(())
    }

    /// Terms in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = (&Vec<K>, &Coeff)> {
        self.terms.iter()
    }

    /// Coefficient of a tensor of basis elements.
    pub fn coeff(&self, factors: &[K]) -> Coeff {
        self.terms.get(factors).cloned().unwrap_or_else(Coeff::zero)
    }

    /// Whether the tensor vanishes.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Whether there are no terms.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `c · self`.
    pub fn scaled(&self, c: &Coeff) -> Self {
        let mut out = Self::zero(self.arity);
        out.add_scaled(self, c).expect("same arity");
        out
    }

    /// Sum, failing on arity mismatch.
    pub fn plus(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(other, &Coeff::one())?;
        Ok(out)
    }

    /// Difference, failing on arity mismatch.
    pub fn minus(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(other, &-Coeff::one())?;
        Ok(out)
    }

    /// `a ⊗ b` for linear combinations.
    pub fn from_pair(a: &LinComb<K>, b: &LinComb<K>) -> Self {
        let mut out = Self::zero(2);
        for (x, c) in a.iter() {
            for (y, d) in b.iter() {
                out.add_term(vec![x.clone(), y.clone()], c * d);
            }
        }
        out
    }

    /// Tensor product of tensors, concatenating factors.
    pub fn outer(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.arity + other.arity);
        for (x, c) in &self.terms {
            for (y, d) in &other.terms {
                let mut f = x.clone();
                f.extend_from_slice(y);
                out.add_term(f, c * d);
            }
        }
        out
    }

    /// Applies a linear map to factor `i`, splicing in `out_arity` factors.
    pub fn map_factor<F>(&self, i: usize, out_arity: usize, mut f: F) -> Self
    where
        F: FnMut(&K) -> Tensor<K>,
    {
        let mut out = Self::zero(self.arity - 1 + out_arity);
        for (factors, c) in &self.terms {
            let image = f(&factors[i]);
            debug_assert_eq!(image.arity, out_arity);
            for (g, d) in &image.terms {
                let mut v = Vec::with_capacity(out.arity);
                v.extend_from_slice(&factors[..i]);
                v.extend_from_slice(g);
                v.extend_from_slice(&factors[i + 1..]);
                out.add_term(v, c * d);
            }
        }
        out
    }

    /// Applies a linear endomorphism to factor `i`.
    pub fn map_each<F>(&self, i: usize, mut f: F) -> Self
    where
        F: FnMut(&K) -> LinComb<K>,
    {
        self.map_factor(i, 1, |k| {
            let mut t = Tensor::zero(1);
            for (x, c) in f(k).iter() {
                t.add_term(vec![x.clone()], c.clone());
            }
            t
        })
    }

    /// Applies a linear map to every factor, changing the basis type.
    pub fn map_all<J: Ord + Clone>(&self, mut f: impl FnMut(usize, &K) -> LinComb<J>) -> Tensor<J> {
        let mut out = Tensor::zero(self.arity);
        for (factors, c) in &self.terms {
            let mut acc: Vec<(Vec<J>, Coeff)> = vec![(Vec::new(), c.clone())];
            for (i, k) in factors.iter().enumerate() {
                let img = f(i, k);
                let mut next = Vec::new();
                for (prefix, pc) in &acc {
                    for (j, jc) in img.iter() {
                        let mut p = prefix.clone();
                        p.push(j.clone());
                        next.push((p, pc * jc));
                    }
                }
                acc = next;
            }
            for (p, pc) in acc {
                out.add_term(p, pc);
            }
        }
        out
    }

    /// Text form with factors joined by ` ⊗ `.
    pub fn render_with(&self, mut show: impl FnMut(&K) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let a = c.abs();
            let body = k.iter().map(&mut show).collect::<Vec<_>>().join(" ⊗ ");
            if a.is_one() {
                out.push_str(&body);
            } else {
                out.push_str(&format!("{}·({})", format_coeff(&a), body));
            }
        }
        out
    }
}

impl<K: Monomial> Tensor<K> {
    /// Componentwise product of two tensors of equal arity.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch(self.arity, other.arity));
        }
        let mut out = Self::zero(self.arity);
        for (x, c) in &self.terms {
            for (y, d) in &other.terms {
                let f = x.iter().zip(y).map(|(a, b)| a.mul(b)).collect();
                out.add_term(f, c * d);
            }
        }
        Ok(out)
    }

    /// The unit `1 ⊗ ... ⊗ 1`.
    pub fn one(arity: usize) -> Self {
        Self::term(vec![K::one(); arity], Coeff::one())
    }

    /// Multiplies all factors together.
    pub fn multiply_out(&self) -> LinComb<K> {
        let mut out = LinComb::zero();
        for (factors, c) in &self.terms {
            let p = factors.iter().fold(K::one(), |acc, k| acc.mul(k));
            out.add_term(p, c.clone());
        }
        out
    }

    /// Applies the counit to factor `i`, removing it.
    pub fn counit_factor(&self, i: usize) -> Self {
        let mut out = Self::zero(self.arity - 1);
        for (factors, c) in &self.terms {
            if factors[i].is_one() {
                let mut v = factors.clone();
                v.remove(i);
                out.add_term(v, c.clone());
            }
        }
        out
    }

    /// Reads a one-factor tensor as a linear combination.
    pub fn to_lincomb(&self) -> LinComb<K> {
        LinComb::from_terms(self.terms.iter().map(|(k, c)| (k[0].clone(), c.clone())))
    }
}

impl ForestTensor {
    /// Text form with forests rendered through `set`.
    pub fn render(&self, set: &DecorationSet) -> String {
        self.render_with(|f| set.render(f))
    }
}
