//! The Hopf pairing on forests, its Gram matrices and the dual basis `e_F`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{Coeff, Element, LinComb};
use crate::error::{check_cap, Error, Result, DEFAULT_CAP};
use crate::forest::{enumerate_forests_capped, gamma, ge_gauche, ge_haut, mirror, DecorationSet, Forest, VertexRef};
use crate::hopf::admissible_cuts;
use crate::matrix::IntMatrix;

/// Memoized evaluation of the pairing on forests.
#[derive(Default)]
pub struct Pairing {
    memo: HashMap<(Forest, Forest), BigInt>,
}

impl Pairing {
    pub fn new() -> Self {
        Self::default()
    }

    /// `(F, G)` for two forests.
    pub fn forests(&mut self, f: &Forest, g: &Forest) -> BigInt {
        if f.is_unit() {
            return if g.is_unit() { BigInt::one() } else { BigInt::zero() };
        }
        let key = (f.clone(), g.clone());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let value = if let Some(t) = f.as_tree() {
            match gamma(g, t.root()) {
                Some(rest) => self.forests(t.children(), &rest),
                None => BigInt::zero(),
            }
        } else {
            let head = f.slice(0..1);
            let tail = f.slice(1..f.len());
            let mut acc = BigInt::zero();
            // The tree count of `g` bounds its cuts; no cap needed here.
            for (p, r) in admissible_cuts(g).expect("cut enumeration within default cap") {
                let a = self.forests(&head, &p);
                if a.is_zero() {
                    continue;
                }
                acc += a * self.forests(&tail, &r);
            }
            acc
        };
        self.memo.insert(key, value.clone());
        value
    }

    /// Bilinear extension to elements.
    pub fn elements(&mut self, x: &Element, y: &Element) -> Coeff {
        let mut acc = Coeff::zero();
        for (f, a) in x.iter() {
            for (g, b) in y.iter() {
                let v = self.forests(f, g);
                if !v.is_zero() {
                    acc += a * b * Coeff::from_integer(v);
                }
            }
        }
        acc
    }
}

/// `(x, y)` with a fresh memo table.
pub fn pair(x: &Element, y: &Element) -> Coeff {
    Pairing::new().elements(x, y)
}

/// `(F, G)` with a fresh memo table.
pub fn pair_forests(f: &Forest, g: &Forest) -> BigInt {
    Pairing::new().forests(f, g)
}

/// Counts the decoration-preserving bijections between the vertices of `f`
/// and `g` that exchange the height and left orders.
pub fn pair_combinatorial(f: &Forest, g: &Forest) -> Result<BigInt> {
    pair_combinatorial_capped(f, g, DEFAULT_CAP * 100)
}

/// As [`pair_combinatorial`], refusing searches whose naive bound exceeds `cap`.
pub fn pair_combinatorial_capped(f: &Forest, g: &Forest, cap: u128) -> Result<BigInt> {
    let n = f.weight();
    if n != g.weight() {
        return Ok(BigInt::zero());
    }
    let mut df = f.decorations();
    let mut dg = g.decorations();
    df.sort();
    dg.sort();
    if df != dg {
        return Ok(BigInt::zero());
    }
    let mut bound: u128 = 1;
    let mut run = 0u128;
    for (i, d) in df.iter().enumerate() {
        run = if i > 0 && df[i - 1] == *d { run + 1 } else { 1 };
        bound = bound.saturating_mul(run);
    }
    check_cap("candidate bijections", bound, cap)?;

    let order = |h: &Forest, rel: fn(&Forest, VertexRef, VertexRef) -> Result<bool>| -> Result<Vec<Vec<bool>>> {
        (0..n).map(|a| (0..n).map(|b| rel(h, VertexRef(a), VertexRef(b))).collect()).collect()
    };
    let search = Search {
        haut_f: order(f, ge_haut)?,
        gauche_f: order(f, ge_gauche)?,
        haut_g: order(g, ge_haut)?,
        gauche_g: order(g, ge_gauche)?,
        dec_f: crate::forest::Vertices::of(f),
        dec_g: crate::forest::Vertices::of(g),
    };
    let mut image = Vec::with_capacity(n);
    let mut used = vec![false; n];
    Ok(BigInt::from(search.count(&mut image, &mut used)))
}

struct Search {
    haut_f: Vec<Vec<bool>>,
    gauche_f: Vec<Vec<bool>>,
    haut_g: Vec<Vec<bool>>,
    gauche_g: Vec<Vec<bool>>,
    dec_f: crate::forest::Vertices,
    dec_g: crate::forest::Vertices,
}

impl Search {
    fn compatible(&self, a: usize, b: usize, fa: usize, fb: usize) -> bool {
        (!self.haut_f[a][b] || self.gauche_g[fa][fb]) && (!self.haut_g[fa][fb] || self.gauche_f[a][b])
    }

    fn count(&self, image: &mut Vec<usize>, used: &mut [bool]) -> u128 {
        let x = image.len();
        if x == used.len() {
            return 1;
        }
        let mut total = 0;
        for y in 0..used.len() {
            if used[y] || self.dec_f.decoration(x) != self.dec_g.decoration(y) {
                continue;
            }
            let ok = image
                .iter()
                .enumerate()
                .all(|(a, &fa)| self.compatible(a, x, fa, y) && self.compatible(x, a, y, fa));
            if !ok {
                continue;
            }
            used[y] = true;
            image.push(y);
            total += self.count(image, used);
            image.pop();
            used[y] = false;
        }
        total
    }
}

/// The Gram matrix of the pairing on forests of one weight, over the
/// ascending basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    pub basis: Vec<Forest>,
    pub matrix: IntMatrix,
}

/// Builds the Gram matrix in weight `n`.
pub fn gram_matrix(n: usize, set: &DecorationSet, cap: u128) -> Result<GramMatrix> {
    let basis = enumerate_forests_capped(n, set, cap)?;
    check_cap("gram matrix entries", (basis.len() as u128).pow(2), cap.saturating_mul(cap))?;
    let mut pairing = Pairing::new();
    let rows = basis.iter().map(|f| basis.iter().map(|g| pairing.forests(f, g)).collect()).collect();
    Ok(GramMatrix { basis, matrix: IntMatrix::from_rows(rows) })
}

/// An element written in the dual basis: coefficient of `F` is the
/// coefficient of `e_F`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DualElement(pub LinComb<Forest>);

impl DualElement {
    /// The single basis vector `e_F`.
    pub fn basis(f: Forest) -> Self {
        DualElement(LinComb::basis(f))
    }

    /// Renders as `e(...)` terms.
    pub fn render(&self, set: &DecorationSet) -> String {
        self.0.render_with(|f| format!("e({})", set.render(f)))
    }
}

struct WeightBlock {
    basis: Vec<Forest>,
    index: HashMap<Forest, usize>,
    gram: IntMatrix,
    inverse: IntMatrix,
}

/// Cached Gram matrices and inverses, converting between the forest basis
/// and the dual basis.
pub struct DualBasis {
    set: DecorationSet,
    cap: u128,
    blocks: BTreeMap<usize, WeightBlock>,
}

impl DualBasis {
    pub fn new(set: &DecorationSet, cap: u128) -> Self {
        DualBasis { set: set.clone(), cap, blocks: BTreeMap::new() }
    }

    fn block(&mut self, n: usize) -> Result<&WeightBlock> {
        if !self.blocks.contains_key(&n) {
            let g = gram_matrix(n, &self.set, self.cap)?;
            let inverse = g.matrix.inverse_unimodular()?;
            let index = g.basis.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
            self.blocks.insert(n, WeightBlock { basis: g.basis, index, gram: g.matrix, inverse });
        }
        Ok(&self.blocks[&n])
    }

    fn locate(&mut self, f: &Forest) -> Result<(&WeightBlock, usize)> {
        let b = self.block(f.weight())?;
        let i = *b.index.get(f).ok_or_else(|| Error::Missing(format!("forest outside the decoration set: {f:?}")))?;
        Ok((b, i))
    }

    /// The inverse Gram matrix in weight `n`.
    pub fn inverse_matrix(&mut self, n: usize) -> Result<GramMatrix> {
        let b = self.block(n)?;
        Ok(GramMatrix { basis: b.basis.clone(), matrix: b.inverse.clone() })
    }

    /// `e_F` in the forest basis.
    pub fn e(&mut self, f: &Forest) -> Result<Element> {
        let (b, j) = self.locate(f)?;
        let terms = b.basis.iter().enumerate().map(|(i, g)| (g.clone(), Coeff::from_integer(b.inverse.get(i, j).clone())));
        Ok(LinComb::from_terms(terms))
    }

    /// Dual-basis coordinates of `x`: the coefficient of `e_G` is `(x, G)`.
    pub fn to_dual(&mut self, x: &Element) -> Result<DualElement> {
        let mut out = LinComb::zero();
        for (f, c) in x.iter() {
            let (b, i) = self.locate(f)?;
            for (j, g) in b.basis.iter().enumerate() {
                let a = b.gram.get(i, j);
                if !a.is_zero() {
                    out.add_term(g.clone(), c * Coeff::from_integer(a.clone()));
                }
            }
        }
        Ok(DualElement(out))
    }

    /// Expands a dual-basis element in the forest basis.
    pub fn from_dual(&mut self, y: &DualElement) -> Result<Element> {
        let mut out = Element::zero();
        for (f, c) in y.0.iter() {
            out.add_scaled(&self.e(f)?, c);
        }
        Ok(out)
    }
}

/// `e_F` for every forest of weight `n`.
pub fn dual_basis(n: usize, set: &DecorationSet, cap: u128) -> Result<BTreeMap<Forest, Element>> {
    let mut db = DualBasis::new(set, cap);
    let basis = enumerate_forests_capped(n, set, cap)?;
    basis.into_iter().map(|f| Ok((f.clone(), db.e(&f)?))).collect()
}

/// Checks `(e_F, G) = δ_{F,G}` in weight `n`.
pub fn dual_pair_check(n: usize, set: &DecorationSet, cap: u128) -> Result<bool> {
    let es = dual_basis(n, set, cap)?;
    let mut pairing = Pairing::new();
    for (f, e) in &es {
        for g in es.keys() {
            let expected = if f == g { Coeff::one() } else { Coeff::zero() };
            if pairing.elements(e, &Element::forest(g.clone())) != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Determinant facts for the Gram matrix in one weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorDiagnostics {
    pub determinant: BigInt,
    /// `(F_i, m(F_j))` is lower unitriangular with the basis sorted by `m(F_i)`.
    pub triangular: bool,
    pub unimodular: bool,
}

/// Recomputes the triangularity of the pairing against mirrored forests and
/// the determinant of the Gram matrix in weight `n`.
pub fn mirror_diagnostics(n: usize, set: &DecorationSet, cap: u128) -> Result<MirrorDiagnostics> {
    let g = gram_matrix(n, set, cap)?;
    let mut sorted: Vec<(Forest, Forest)> = g.basis.iter().map(|f| (mirror(f), f.clone())).collect();
    sorted.sort();
    let mut pairing = Pairing::new();
    let mut triangular = true;
    'outer: for (i, (_, fi)) in sorted.iter().enumerate() {
        for (j, (mj, _)) in sorted.iter().enumerate().skip(i) {
            let v = pairing.forests(fi, mj);
            let expected = if i == j { BigInt::one() } else { BigInt::zero() };
            if v != expected {
                triangular = false;
                break 'outer;
            }
        }
    }
    let determinant = g.matrix.determinant()?;
    let unimodular = determinant.abs().is_one() && g.matrix.inverse_unimodular().is_ok();
    Ok(MirrorDiagnostics { determinant, triangular, unimodular })
}
