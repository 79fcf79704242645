//! The tensor coalgebra on a graded generator set: deconcatenation, the
//! shuffle product, antipodes and 1-cocycles.

use std::fmt;

use num_traits::One;

use crate::algebra::{int, Coeff, LinComb, Tensor};
use crate::error::{Error, Result};

/// A generator of positive grade.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Generator {
    pub name: String,
    pub grade: usize,
}

impl Generator {
    pub fn new(name: impl Into<String>, grade: usize) -> Result<Self> {
        let name = name.into();
        if grade == 0 {
            return Err(Error::InvalidDecorationSet(format!("generator {name} has grade 0")));
        }
        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(Error::InvalidDecorationSet(format!("bad generator name `{name}`")));
        }
        Ok(Generator { name, grade })
    }
}

/// A word `v_1 ⊤ ... ⊤ v_n`; the empty word is the unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of grades.
    pub fn weight(&self) -> usize {
        self.0.iter().map(|g| g.grade).sum()
    }

    /// `self ⊤ other`.
    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn slice(&self, r: std::ops::Range<usize>) -> Word {
        Word(self.0[r].to_vec())
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().cloned().collect())
    }

    /// Parses space-separated generator names from `gens`; `1` is the
    /// empty word.
    pub fn parse(text: &str, gens: &[Generator]) -> Result<Word> {
        let text = text.trim();
        if text == "1" || text.is_empty() {
            return Ok(Word::empty());
        }
        text.split_whitespace()
            .map(|tok| {
                gens.iter().find(|g| g.name == tok).cloned().ok_or_else(|| Error::UnknownDecoration(tok.to_string()))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let names: Vec<&str> = self.0.iter().map(|g| g.name.as_str()).collect();
        write!(f, "{}", names.join(" "))
    }
}

/// Linear combination of words.
pub type WordElement = LinComb<Word>;

/// Every split of `w` into a prefix and a suffix.
pub fn deconcat(w: &Word) -> Tensor<Word> {
    let mut out = Tensor::zero(2);
    for k in 0..=w.len() {
        out.add_term(vec![w.slice(0..k), w.slice(k..w.len())], Coeff::one());
    }
    out
}

/// Linear extension of [`deconcat`].
pub fn deconcat_element(x: &WordElement) -> Tensor<Word> {
    let mut out = Tensor::zero(2);
    for (w, c) in x.iter() {
        out.add_scaled(&deconcat(w), c).expect("arity 2");
    }
    out
}

/// Sum of all shuffles of `x` and `y`.
pub fn shuffle(x: &Word, y: &Word) -> WordElement {
    let mut out = LinComb::zero();
    let mut buf = Vec::with_capacity(x.len() + y.len());
    fn rec(x: &[Generator], y: &[Generator], buf: &mut Vec<Generator>, out: &mut WordElement) {
        match (x.split_first(), y.split_first()) {
            (None, None) => out.add_term(Word(buf.clone()), Coeff::one()),
            (Some((a, xs)), None) | (None, Some((a, xs))) => {
                let before = buf.len();
                buf.push(a.clone());
                buf.extend(xs.iter().cloned());
                out.add_term(Word(buf.clone()), Coeff::one());
                buf.truncate(before);
            }
            (Some((a, xs)), Some((b, ys))) => {
                buf.push(a.clone());
                rec(xs, y, buf, out);
                buf.pop();
                buf.push(b.clone());
                rec(x, ys, buf, out);
                buf.pop();
            }
        }
    }
    rec(&x.0, &y.0, &mut buf, &mut out);
    out
}

/// Bilinear extension of [`shuffle`].
pub fn shuffle_elements(x: &WordElement, y: &WordElement) -> WordElement {
    let mut out = LinComb::zero();
    for (a, c) in x.iter() {
        for (b, d) in y.iter() {
            out.add_scaled(&shuffle(a, b), &(c * d));
        }
    }
    out
}

/// Componentwise shuffle of two 2-tensors.
pub fn shuffle_tensors(x: &Tensor<Word>, y: &Tensor<Word>) -> Tensor<Word> {
    let mut out = Tensor::zero(2);
    for (a, c) in x.iter() {
        for (b, d) in y.iter() {
            let t = Tensor::from_pair(&shuffle(&a[0], &b[0]), &shuffle(&a[1], &b[1]));
            out.add_scaled(&t, &(c * d)).expect("arity 2");
        }
    }
    out
}

/// `(-1)^n` times the reversed word.
pub fn antipode_star(w: &Word) -> WordElement {
    let sign = if w.len() % 2 == 0 { 1 } else { -1 };
    LinComb::term(w.reversed(), int(sign))
}

/// Linear extension of [`antipode_star`].
pub fn antipode_star_element(x: &WordElement) -> WordElement {
    x.map_linear(antipode_star)
}

/// The subset-sum antipode of a word `p_1 ⊤ ... ⊤ p_n` in a bialgebra
/// structure on `T(V)`: every subset of the `n-1` gaps is replaced by the
/// product. `block` embeds a nonempty run of letters, `product` multiplies.
pub fn antipode_generic<L, K, B, P>(letters: &[L], one: LinComb<K>, mut block: B, mut product: P) -> LinComb<K>
where
    K: Ord + Clone,
    B: FnMut(&[L]) -> LinComb<K>,
    P: FnMut(&LinComb<K>, &LinComb<K>) -> LinComb<K>,
{
    let n = letters.len();
    if n == 0 {
        return one;
    }
    let gaps = n - 1;
    let mut out = LinComb::zero();
    for mask in 0u64..(1u64 << gaps) {
        let mut acc: Option<LinComb<K>> = None;
        let mut start = 0;
        for i in 0..n {
            let cut_here = i == n - 1 || mask >> i & 1 == 1;
            if cut_here {
                let b = block(&letters[start..=i]);
                acc = Some(match acc {
                    None => b,
                    Some(a) => product(&a, &b),
                });
                start = i + 1;
            }
        }
        let sign = if mask.count_ones() % 2 == 0 { -1 } else { 1 };
        out.add_scaled(&acc.expect("nonempty word"), &int(sign));
    }
    out
}

/// [`antipode_generic`] for the shuffle product.
pub fn antipode_shuffle_generic(w: &Word) -> WordElement {
    antipode_generic(&w.0, LinComb::basis(Word::empty()), |b| LinComb::basis(Word(b.to_vec())), shuffle_elements)
}

/// The 1-cocycle `L_u` built from a linear map `u: T(V) → V`.
pub fn cocycle_lu(u: &mut impl FnMut(&Word) -> LinComb<Generator>, w: &Word) -> WordElement {
    let lift = |x: LinComb<Generator>| -> WordElement { x.map_linear(|g| LinComb::basis(Word(vec![g.clone()]))) };
    let append = |prefix: &Word, x: &LinComb<Generator>| -> WordElement {
        x.map_linear(|g| LinComb::basis(prefix.concat(&Word(vec![g.clone()]))))
    };
    if w.is_empty() {
        return lift(u(w));
    }
    let n = w.len();
    let mut out = LinComb::zero();
    for j in 1..n {
        out += &append(&w.slice(0..j), &u(&w.slice(j..n)));
    }
    out += &append(w, &u(&Word::empty()));
    out += &lift(u(w));
    out
}

/// Linear extension of [`cocycle_lu`].
pub fn cocycle_lu_element(u: &mut impl FnMut(&Word) -> LinComb<Generator>, x: &WordElement) -> WordElement {
    let mut out = LinComb::zero();
    for (w, c) in x.iter() {
        out.add_scaled(&cocycle_lu(u, w), c);
    }
    out
}

/// `Δ(L_u(x)) - L_u(x)⊗1 - (Id⊗L_u)Δ(x)`.
pub fn cocycle_defect(u: &mut impl FnMut(&Word) -> LinComb<Generator>, x: &WordElement) -> Tensor<Word> {
    let lx = cocycle_lu_element(u, x);
    let mut defect = deconcat_element(&lx);
    defect
        .add_scaled(&Tensor::from_pair(&lx, &LinComb::basis(Word::empty())), &int(-1))
        .expect("arity 2");
    let shifted = deconcat_element(x).map_each(1, |w| cocycle_lu(u, w));
    defect.add_scaled(&shifted, &int(-1)).expect("arity 2");
    defect
}

/// Every word of length at most `max_len` over `gens`.
pub fn words_up_to(gens: &[Generator], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut level = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &level {
            for g in gens {
                let mut v = w.0.clone();
                v.push(g.clone());
                next.push(Word(v));
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}
