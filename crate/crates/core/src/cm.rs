//! The subalgebra generated by the sums `u_n` of all forests and `v_n` of
//! all trees of weight `n`: closed-form coproducts and the change of
//! variables `u_n ↦ z_n` between its two coproducts.

use std::collections::HashMap;
use std::fmt;

use num_traits::One;

use crate::algebra::{int, ratio, Coeff, Element, ForestTensor, LinComb, Monomial, Tensor};
use crate::error::{Error, Result};
use crate::forest::{enumerate_forests_capped, enumerate_trees_capped, DecorationSet};
use crate::frabetti::reduced_coproduct_fr;
use crate::hopf::{coproduct, reduced_coproduct};
use crate::liealg::choose;

/// A generator `u_n` or `v_n`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Letter {
    U(usize),
    V(usize),
}

impl Letter {
    pub fn weight(self) -> usize {
        match self {
            Letter::U(n) | Letter::V(n) => n,
        }
    }
}

/// A noncommutative word in the generators.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }
}

impl Monomial for Word {
    fn one() -> Self {
        Word(Vec::new())
    }
    fn mul(&self, other: &Self) -> Self {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }
    fn weight(&self) -> usize {
        self.0.iter().map(|l| l.weight()).sum()
    }
    fn is_one(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| match l {
                Letter::U(n) => format!("u{n}"),
                Letter::V(n) => format!("v{n}"),
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Linear combination of words.
pub type VPolynomial = LinComb<Word>;

/// Which coproduct a formula describes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Coproduct {
    /// Admissible cuts.
    Standard,
    /// Left-admissible cuts.
    Frabetti,
}

/// Which family a formula describes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    U,
    V,
}

/// All compositions of `k` into `l` positive parts.
pub fn compositions(k: usize, l: usize) -> Vec<Vec<usize>> {
    if l == 0 {
        return if k == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=k.saturating_sub(l - 1) {
        for mut rest in compositions(k - first, l - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn v_word_sum(k: usize, l: usize) -> VPolynomial {
    LinComb::from_terms(
        compositions(k, l).into_iter().map(|c| (Word(c.into_iter().map(Letter::V).collect()), Coeff::one())),
    )
}

/// Closed form of the reduced coproduct of `u_n` or `v_n`.
pub fn coproduct_formula(family: Family, which: Coproduct, n: usize) -> Tensor<Word> {
    let mut out = Tensor::zero(2);
    for k in 1..n {
        let j = (n - k) as i64;
        for l in 1..=k {
            let top = match (family, which) {
                (Family::V, Coproduct::Standard) => 2 * j + l as i64 - 2,
                (Family::V, Coproduct::Frabetti) => j + l as i64 - 2,
                (Family::U, Coproduct::Standard) => 2 * j + l as i64,
                (Family::U, Coproduct::Frabetti) => j + l as i64,
            };
            let c = choose(top, l as u32);
            if c == 0 {
                continue;
            }
            let right = match family {
                Family::U => Letter::U(n - k),
                Family::V => Letter::V(n - k),
            };
            let left = v_word_sum(k, l);
            let t = Tensor::from_pair(&left, &LinComb::basis(Word::letter(right)));
            out.add_scaled(&t, &Coeff::from_integer(c.into())).expect("arity 2");
        }
    }
    out
}

/// Evaluates words in the undecorated forest algebra, caching `u_n`, `v_n`.
pub struct Evaluator {
    cap: u128,
    set: DecorationSet,
    cache: HashMap<Letter, Element>,
}

impl Evaluator {
    pub fn new(cap: u128) -> Self {
        Evaluator { cap, set: DecorationSet::undecorated(), cache: HashMap::new() }
    }

    /// `u_n` or `v_n` as a sum of forests.
    pub fn letter(&mut self, l: Letter) -> Result<Element> {
        if let Some(e) = self.cache.get(&l) {
            return Ok(e.clone());
        }
        let e = match l {
            Letter::U(n) => LinComb::from_terms(
                enumerate_forests_capped(n, &self.set, self.cap)?.into_iter().map(|f| (f, Coeff::one())),
            ),
            Letter::V(n) => LinComb::from_terms(
                enumerate_trees_capped(n, &self.set, self.cap)?.into_iter().map(|t| (t.to_forest(), Coeff::one())),
            ),
        };
        self.cache.insert(l, e.clone());
        Ok(e)
    }

    pub fn word(&mut self, w: &Word) -> Result<Element> {
        let mut acc = Element::one();
        for &l in &w.0 {
            acc = &acc * &self.letter(l)?;
        }
        Ok(acc)
    }

    pub fn polynomial(&mut self, p: &VPolynomial) -> Result<Element> {
        p.try_map_linear(|w| self.word(w))
    }

    pub fn tensor(&mut self, t: &Tensor<Word>) -> Result<ForestTensor> {
        let mut out = Tensor::zero(t.arity());
        for (ws, c) in t.iter() {
            let mut factors = Vec::with_capacity(ws.len());
            for w in ws {
                factors.push(self.word(w)?);
            }
            let mut acc = Tensor::one(0);
            for f in &factors {
                let mut next = Tensor::zero(acc.arity() + 1);
                for (prefix, a) in acc.iter() {
                    for (g, b) in f.iter() {
                        let mut k = prefix.clone();
                        k.push(g.clone());
                        next.add_term(k, a * b);
                    }
                }
                acc = next;
            }
            out.add_scaled(&acc, c)?;
        }
        Ok(out)
    }
}

/// `u_n` as a sum of forests.
pub fn u(n: usize, cap: u128) -> Result<Element> {
    Evaluator::new(cap).letter(Letter::U(n))
}

/// `v_n` as a sum of trees.
pub fn v(n: usize, cap: u128) -> Result<Element> {
    Evaluator::new(cap).letter(Letter::V(n))
}

fn u_letter(n: usize) -> VPolynomial {
    LinComb::basis(Word::letter(Letter::U(n)))
}

/// `z_n = 2u_n + Σ u_k u_{n-k}` in the letters `u`.
pub fn z_poly(n: usize) -> VPolynomial {
    let mut out = u_letter(n).scaled(&int(2));
    for k in 1..n {
        out += &(&u_letter(k) * &u_letter(n - k));
    }
    out
}

/// `w_n = u_n/2 - Σ w_i w_{n-i}/2` in the letters `u`.
pub fn w_poly(n: usize) -> VPolynomial {
    let mut table: Vec<VPolynomial> = vec![VPolynomial::zero()];
    for m in 1..=n {
        let mut acc = u_letter(m).scaled(&ratio(1, 2));
        for i in 1..m {
            acc -= &(&table[i] * &table[m - i]).scaled(&ratio(1, 2));
        }
        table.push(acc);
    }
    table.swap_remove(n)
}

/// `z_n` as a sum of forests.
pub fn z(n: usize, cap: u128) -> Result<Element> {
    Evaluator::new(cap).polynomial(&z_poly(n))
}

/// `w_n` as a sum of forests.
pub fn w(n: usize, cap: u128) -> Result<Element> {
    Evaluator::new(cap).polynomial(&w_poly(n))
}

/// Rewrites every `v_n` through `v_n = u_n - Σ_{k<n} v_k u_{n-k}`.
pub fn to_u_letters(p: &VPolynomial) -> VPolynomial {
    let mut memo: HashMap<usize, VPolynomial> = HashMap::new();
    fn v_in_u(n: usize, memo: &mut HashMap<usize, VPolynomial>) -> VPolynomial {
        if let Some(p) = memo.get(&n) {
            return p.clone();
        }
        let mut out = u_letter(n);
        for k in 1..n {
            out -= &(&v_in_u(k, memo) * &u_letter(n - k));
        }
        memo.insert(n, out.clone());
        out
    }
    p.map_linear(|w| {
        w.0.iter().fold(VPolynomial::one(), |acc, l| {
            let factor = match *l {
                Letter::U(n) => u_letter(n),
                Letter::V(n) => v_in_u(n, &mut memo),
            };
            &acc * &factor
        })
    })
}

/// The algebra morphism `u_n ↦ z_n`.
pub fn phi(p: &VPolynomial) -> VPolynomial {
    to_u_letters(p).map_linear(|w| {
        w.0.iter().fold(VPolynomial::one(), |acc, l| &acc * &z_poly(l.weight()))
    })
}

/// Brute-force reduced coproduct of `u_n` or `v_n`.
pub fn brute_force(family: Family, which: Coproduct, n: usize, cap: u128) -> Result<ForestTensor> {
    let x = match family {
        Family::U => u(n, cap)?,
        Family::V => v(n, cap)?,
    };
    match which {
        Coproduct::Standard => reduced_coproduct(&x),
        Coproduct::Frabetti => reduced_coproduct_fr(&x, cap),
    }
}

/// Whether the closed form matches the brute-force coproduct.
pub fn formula_holds(family: Family, which: Coproduct, n: usize, cap: u128) -> Result<bool> {
    let closed = Evaluator::new(cap).tensor(&coproduct_formula(family, which, n))?;
    Ok(closed == brute_force(family, which, n, cap)?)
}

/// Result of checking the change of variables in one weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiCheck {
    pub n: usize,
    /// `Φ(w_n) = u_n` among polynomials in the `u` letters.
    pub inverse_symbolic: bool,
    /// `Φ(w_n) = u_n` after evaluation to forests.
    pub inverse_evaluated: bool,
    /// `Δ(z_n) = (Φ⊗Φ) Δ_Fr(u_n)` after evaluation.
    pub morphism: bool,
    /// `2w_n + Σ w_i w_{n-i} = u_n`.
    pub square_root: bool,
}

impl PhiCheck {
    pub fn passed(&self) -> bool {
        self.inverse_symbolic && self.inverse_evaluated && self.morphism && self.square_root
    }
}

/// Checks the change of variables for every weight up to `n_max`.
pub fn phi_check(n_max: usize, cap: u128) -> Result<Vec<PhiCheck>> {
    let mut ev = Evaluator::new(cap);
    let mut out = Vec::new();
    for n in 1..=n_max {
        let un = u_letter(n);
        let image = phi(&w_poly(n));
        let inverse_symbolic = image == un;
        let inverse_evaluated = ev.polynomial(&image)? == ev.letter(Letter::U(n))?;

        let mut fr = coproduct_formula(Family::U, Coproduct::Frabetti, n);
        fr.add_term(vec![Word::letter(Letter::U(n)), Word::one()], Coeff::one());
        fr.add_term(vec![Word::one(), Word::letter(Letter::U(n))], Coeff::one());
        let mapped = fr.map_all(|_, w| phi(&LinComb::basis(w.clone())));
        let rhs = ev.tensor(&mapped)?;
        let lhs = coproduct(&ev.polynomial(&z_poly(n))?)?;
        let morphism = lhs == rhs;

        let mut sq = w_poly(n).scaled(&int(2));
        for i in 1..n {
            sq += &(&w_poly(i) * &w_poly(n - i));
        }
        let square_root = sq == un;
        out.push(PhiCheck { n, inverse_symbolic, inverse_evaluated, morphism, square_root });
    }
    Ok(out)
}

/// Fails with the first weight whose check does not pass.
pub fn require_phi(n_max: usize, cap: u128) -> Result<()> {
    for c in phi_check(n_max, cap)? {
        if !c.passed() {
            return Err(Error::Missing(format!("change of variables fails in weight {}: {c:?}", c.n)));
        }
    }
    Ok(())
}
