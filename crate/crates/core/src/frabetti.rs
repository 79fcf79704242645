//! Planar binary trees, their bijection with forests, and the second
//! coproduct `Δ_Fr` on forests.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{Element, ForestTensor, LinComb, Monomial, Tensor};
use crate::error::{check_cap, Error, Result};
use crate::forest::{bplus, Forest, PlanarTree};
use crate::hopf::{cuts, CutRule};

/// A planar binary tree: a leaf `|` or a node `left ∨ right`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum BinaryTree {
    Leaf,
    Node(Arc<BinaryTree>, Arc<BinaryTree>, usize),
}

impl BinaryTree {
    /// `left ∨ right`.
    pub fn node(left: BinaryTree, right: BinaryTree) -> Self {
        let degree = 1 + left.degree() + right.degree();
        BinaryTree::Node(Arc::new(left), Arc::new(right), degree)
    }

    /// Number of internal nodes.
    pub fn degree(&self) -> usize {
        match self {
            BinaryTree::Leaf => 0,
            BinaryTree::Node(_, _, d) => *d,
        }
    }

    /// `| ∨ t`.
    pub fn v(t: BinaryTree) -> Self {
        Self::node(BinaryTree::Leaf, t)
    }

    /// The two subtrees of a node.
    pub fn split(&self) -> Option<(&BinaryTree, &BinaryTree)> {
        match self {
            BinaryTree::Leaf => None,
            BinaryTree::Node(l, r, _) => Some((l, r)),
        }
    }

    /// Grafts `t` on the leftmost leaf.
    pub fn product(&self, t: &BinaryTree) -> BinaryTree {
        match self {
            BinaryTree::Leaf => t.clone(),
            BinaryTree::Node(l, r, _) => Self::node(l.product(t), (**r).clone()),
        }
    }

    /// Parses `|` or `(L^R)`.
    pub fn parse(text: &str) -> Result<BinaryTree> {
        let bytes: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let t = parse_binary(&bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(Error::Syntax { position: pos, message: "trailing input".into() });
        }
        Ok(t)
    }

    /// Every binary tree of degree `n`.
    pub fn enumerate(n: usize, cap: u128) -> Result<Vec<BinaryTree>> {
        check_cap("binary trees", crate::series::catalan(n as u32), cap)?;
        let mut table: Vec<Vec<BinaryTree>> = vec![vec![BinaryTree::Leaf]];
        for d in 1..=n {
            let mut level = Vec::new();
            for l in 0..d {
                for a in &table[l] {
                    for b in &table[d - 1 - l] {
                        level.push(Self::node(a.clone(), b.clone()));
                    }
                }
            }
            table.push(level);
        }
        Ok(table.swap_remove(n))
    }
}

fn parse_binary(s: &[char], pos: &mut usize) -> Result<BinaryTree> {
    match s.get(*pos) {
        Some('|') => {
            *pos += 1;
            Ok(BinaryTree::Leaf)
        }
        Some('(') => {
            *pos += 1;
            let l = parse_binary(s, pos)?;
            expect(s, pos, '^')?;
            let r = parse_binary(s, pos)?;
            expect(s, pos, ')')?;
            Ok(BinaryTree::node(l, r))
        }
        _ => Err(Error::Syntax { position: *pos, message: "expected `|` or `(`".into() }),
    }
}

fn expect(s: &[char], pos: &mut usize, c: char) -> Result<()> {
    if s.get(*pos) == Some(&c) {
        *pos += 1;
        Ok(())
    } else {
        Err(Error::Syntax { position: *pos, message: format!("expected `{c}`") })
    }
}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinaryTree::Leaf => write!(f, "|"),
            BinaryTree::Node(l, r, _) => write!(f, "({l}^{r})"),
        }
    }
}

impl fmt::Debug for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Ord for BinaryTree {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| match (self.split(), other.split()) {
            (Some((a, b)), Some((c, d))) => a.cmp(c).then_with(|| b.cmp(d)),
            _ => std::cmp::Ordering::Equal,
        })
    }
}

impl PartialOrd for BinaryTree {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial for BinaryTree {
    fn one() -> Self {
        BinaryTree::Leaf
    }
    fn mul(&self, other: &Self) -> Self {
        self.product(other)
    }
    fn weight(&self) -> usize {
        self.degree()
    }
    fn is_one(&self) -> bool {
        matches!(self, BinaryTree::Leaf)
    }
}

/// The bijection from binary trees to undecorated forests.
pub fn binary_to_forest(b: &BinaryTree) -> Forest {
    match b.split() {
        None => Forest::unit(),
        Some((l, r)) => {
            let mut out = bplus(&binary_to_forest(r), crate::forest::STAR).to_forest();
            out = out.concat(&binary_to_forest(l));
            out
        }
    }
}

/// Inverse of [`binary_to_forest`]; decorations are ignored.
pub fn forest_to_binary(f: &Forest) -> BinaryTree {
    match f.trees().split_first() {
        None => BinaryTree::Leaf,
        Some((t, rest)) => {
            let rest = Forest::from_trees(rest.to_vec());
            BinaryTree::node(forest_to_binary(&rest), forest_to_binary(t.children()))
        }
    }
}

/// The binary-tree coproduct, by its defining recursion.
#[derive(Default)]
pub struct BinaryCoproduct {
    memo: HashMap<BinaryTree, Tensor<BinaryTree>>,
}

impl BinaryCoproduct {
    pub fn new() -> Self {
        Self::default()
    }

    /// Coproduct of one binary tree.
    pub fn tree(&mut self, b: &BinaryTree) -> Tensor<BinaryTree> {
        if let Some(v) = self.memo.get(b) {
            return v.clone();
        }
        let value = match b.split() {
            None => Tensor::one(2),
            Some((l, r)) if !l.is_one() => {
                let vs = BinaryTree::v(r.clone());
                let a = self.tree(&vs);
                a.mul(&self.tree(l)).expect("arity 2")
            }
            Some((_, t)) => {
                let mut out = Tensor::pair(b.clone(), BinaryTree::Leaf);
                let apply_v = |x: &Tensor<BinaryTree>| x.map_each(1, |y| LinComb::basis(BinaryTree::v(y.clone())));
                out = out.plus(&apply_v(&self.tree(t))).expect("arity 2");
                if let Some((tl, tr)) = t.split() {
                    let head = Tensor::pair(BinaryTree::v(tr.clone()), BinaryTree::Leaf);
                    let inner = head.mul(&self.tree(tl)).expect("arity 2");
                    out = out.minus(&apply_v(&inner)).expect("arity 2");
                }
                out
            }
        };
        self.memo.insert(b.clone(), value.clone());
        value
    }
}

/// The binary-tree coproduct transported to forests.
pub fn coproduct_fr_binary(f: &Forest) -> ForestTensor {
    BinaryCoproduct::new().tree(&forest_to_binary(f)).map_all(|_, b| LinComb::basis(binary_to_forest(b)))
}

/// `Δ_Fr` by recursion on the first tree of each forest.
#[derive(Default)]
pub struct FrRecursion {
    memo: HashMap<Forest, ForestTensor>,
}

impl FrRecursion {
    pub fn new() -> Self {
        Self::default()
    }

    /// `Δ_Fr(F)`.
    pub fn forest(&mut self, f: &Forest) -> ForestTensor {
        if let Some(v) = self.memo.get(f) {
            return v.clone();
        }
        let value = match f.len() {
            0 => Tensor::one(2),
            1 => self.tree(&f.trees()[0]),
            _ => {
                let head = self.tree(&f.trees()[0]);
                let tail = self.forest(&f.slice(1..f.len()));
                head.mul(&tail).expect("arity 2")
            }
        };
        self.memo.insert(f.clone(), value.clone());
        value
    }

    fn tree(&mut self, t: &PlanarTree) -> ForestTensor {
        let d = t.root();
        let inner = t.children();
        let graft = |x: &ForestTensor| x.map_each(1, |y| LinComb::basis(bplus(y, d).to_forest()));
        let mut out = Tensor::pair(t.to_forest(), Forest::unit());
        out = out.plus(&graft(&self.forest(inner))).expect("arity 2");
        if let Some(first) = inner.trees().first() {
            let head = Tensor::pair(first.to_forest(), Forest::unit());
            let rest = self.forest(&inner.slice(1..inner.len()));
            out = out.minus(&graft(&head.mul(&rest).expect("arity 2"))).expect("arity 2");
        }
        out
    }

    /// Linear extension to elements.
    pub fn apply(&mut self, x: &Element) -> ForestTensor {
        let mut out = Tensor::zero(2);
        for (f, c) in x.iter() {
            out.add_scaled(&self.forest(f), c).expect("arity 2");
        }
        out
    }
}

/// `Δ_Fr` by the recursion.
pub fn coproduct_fr_recursive(x: &Element) -> ForestTensor {
    FrRecursion::new().apply(x)
}

/// `Δ_Fr` as the sum over left-admissible cuts.
pub fn coproduct_fr_cuts(f: &Forest, cap: u128) -> Result<ForestTensor> {
    let mut out = Tensor::zero(2);
    for (p, r) in cuts(f, CutRule::LeftAdmissible, cap)? {
        out.add_term(vec![p, r], crate::algebra::int(1));
    }
    Ok(out)
}

/// Linear extension of [`coproduct_fr_cuts`].
pub fn coproduct_fr_cuts_element(x: &Element, cap: u128) -> Result<ForestTensor> {
    let mut out = Tensor::zero(2);
    for (f, c) in x.iter() {
        out.add_scaled(&coproduct_fr_cuts(f, cap)?, c)?;
    }
    Ok(out)
}

/// `Δ_Fr(x) - x⊗1 - 1⊗x` on the augmentation part.
pub fn reduced_coproduct_fr(x: &Element, cap: u128) -> Result<ForestTensor> {
    let full = coproduct_fr_cuts_element(&x.augmentation_part(), cap)?;
    let mut out = Tensor::zero(2);
    for (fs, c) in full.iter() {
        if !fs[0].is_unit() && !fs[1].is_unit() {
            out.add_term(fs.clone(), c.clone());
        }
    }
    Ok(out)
}
