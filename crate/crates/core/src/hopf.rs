//! Coproduct and antipode of the forest algebra.
//!
//! Cuts are enumerated tree by tree: a cut of `B_d^+(t_1 ... t_k)` either
//! severs the edge above each `t_i` or recurses into it. Products over the
//! trees of a forest give the cuts of the forest.

use std::collections::HashMap;

use num_traits::One;

use crate::algebra::{int, Coeff, Element, ForestTensor, Tensor};
use crate::error::{check_cap, Error, Result, DEFAULT_CAP};
use crate::forest::{bplus, tot_cmp, Forest, PlanarTree, Vertices};

/// Which edges a cut may sever.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CutRule {
    /// Any admissible cut.
    Admissible,
    /// Admissible cuts avoiding every edge to a first child.
    LeftAdmissible,
}

impl CutRule {
    fn may_sever(self, child_index: usize) -> bool {
        match self {
            CutRule::Admissible => true,
            CutRule::LeftAdmissible => child_index > 0,
        }
    }
}

/// A cut of a forest: a set of severed edges, each named by its lower
/// vertex, together with the trees that are cut totally.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cut {
    /// Lower vertices of the severed edges, increasing.
    pub edges: Vec<usize>,
    /// Indices of the trees detached whole.
    pub total_trees: Vec<usize>,
}

impl Cut {
    /// Number of elementary cuts.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// At most one severed edge on every path from a root, and no severed
    /// edge inside a totally cut tree.
    pub fn is_admissible(&self, v: &Vertices) -> bool {
        let nested = self.edges.iter().any(|&a| self.edges.iter().any(|&b| a < b && b < v.subtree_end(a)));
        let clash = self.edges.iter().any(|&e| self.total_trees.contains(&v.tree_index(e)));
        !nested && !clash
    }

    /// No severed edge leads to a first child.
    pub fn avoids_left_edges(&self, v: &Vertices) -> bool {
        self.edges.iter().all(|&e| !v.is_left_edge(e))
    }

    /// The pruned part and the trunk.
    pub fn apply(&self, v: &Vertices) -> (Forest, Forest) {
        let mut removed = vec![false; v.len()];
        let mut tops: Vec<usize> = self.edges.clone();
        for &e in &self.edges {
            removed[e] = true;
        }
        let mut trunk_roots = Vec::new();
        for r in v.roots() {
            if self.total_trees.contains(&v.tree_index(r)) {
                tops.push(r);
            } else {
                trunk_roots.push(r);
            }
        }
        tops.sort_unstable();
        let pruned = tops.iter().map(|&e| v.subtree_without(e, &removed)).collect();
        let trunk = trunk_roots.iter().map(|&r| v.subtree_without(r, &removed)).collect();
        (Forest::from_trees(pruned), Forest::from_trees(trunk))
    }
}

/// Every cut of `f` allowed by `rule`, found by testing all subsets of edges
/// and of trees.
pub fn edge_cuts(f: &Forest, rule: CutRule) -> Result<Vec<Cut>> {
    let v = Vertices::of(f);
    let edges = v.edges();
    if edges.len() + f.len() > 24 {
        let count = format!("2^{}", edges.len() + f.len());
        return Err(Error::ResourceLimit { what: "edge subsets", count, cap: DEFAULT_CAP });
    }
    let mut out = Vec::new();
    for tmask in 0u32..(1 << f.len()) {
        for mask in 0u32..(1 << edges.len()) {
            let cut = Cut {
                edges: edges.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect(),
                total_trees: (0..f.len()).filter(|i| tmask >> i & 1 == 1).collect(),
            };
            if cut.is_admissible(&v) && (rule == CutRule::Admissible || cut.avoids_left_edges(&v)) {
                out.push(cut);
            }
        }
    }
    Ok(out)
}

fn count_tree_cuts(t: &PlanarTree, rule: CutRule) -> u128 {
    t.subtrees().iter().enumerate().fold(1u128, |acc, (i, c)| {
        let options = count_tree_cuts(c, rule) + u128::from(rule.may_sever(i));
        acc.saturating_mul(options)
    })
}

/// Number of cuts of `f` (including the empty and total cuts).
pub fn count_cuts(f: &Forest, rule: CutRule) -> u128 {
    f.trees().iter().fold(1u128, |acc, t| acc.saturating_mul(count_tree_cuts(t, rule) + 1))
}

fn tree_cuts(t: &PlanarTree, rule: CutRule) -> Vec<(Forest, PlanarTree)> {
    let mut acc: Vec<(Forest, Vec<PlanarTree>)> = vec![(Forest::unit(), Vec::new())];
    for (i, c) in t.subtrees().iter().enumerate() {
        let below = tree_cuts(c, rule);
        let mut next = Vec::with_capacity(acc.len() * (below.len() + 1));
        for (p, r) in &acc {
            if rule.may_sever(i) {
                let mut p2 = p.clone();
                p2.push(c.clone());
                next.push((p2, r.clone()));
            }
            for (bp, br) in &below {
                let mut r2 = r.clone();
                r2.push(br.clone());
                next.push((p.concat(bp), r2));
            }
        }
        acc = next;
    }
    acc.into_iter().map(|(p, r)| (p, PlanarTree::new(t.root(), Forest::from_trees(r)))).collect()
}

/// `(P^c, R^c)` for every cut `c` allowed by `rule`, empty and total cuts
/// included, with multiplicity.
pub fn cuts(f: &Forest, rule: CutRule, cap: u128) -> Result<Vec<(Forest, Forest)>> {
    check_cap("cut enumeration", count_cuts(f, rule), cap)?;
    let mut acc: Vec<(Forest, Forest)> = vec![(Forest::unit(), Forest::unit())];
    for t in f.trees() {
        let mut options: Vec<(Forest, Forest)> =
            tree_cuts(t, rule).into_iter().map(|(p, r)| (p, r.to_forest())).collect();
        options.push((t.to_forest(), Forest::unit()));
        let mut next = Vec::with_capacity(acc.len() * options.len());
        for (p, r) in &acc {
            for (op, or) in &options {
                next.push((p.concat(op), r.concat(or)));
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// Admissible cuts of `f` as `(pruned, trunk)` pairs.
pub fn admissible_cuts(f: &Forest) -> Result<Vec<(Forest, Forest)>> {
    cuts(f, CutRule::Admissible, DEFAULT_CAP)
}

/// Left-admissible cuts of `f` as `(pruned, trunk)` pairs.
pub fn left_admissible_cuts(f: &Forest) -> Result<Vec<(Forest, Forest)>> {
    cuts(f, CutRule::LeftAdmissible, DEFAULT_CAP)
}

fn cut_sum(x: &Element, rule: CutRule, reduced: bool) -> Result<ForestTensor> {
    let mut out = Tensor::zero(2);
    for (f, c) in x.iter() {
        for (p, r) in cuts(f, rule, DEFAULT_CAP)? {
            if reduced && (p.is_unit() || r.is_unit()) {
                continue;
            }
            out.add_term(vec![p, r], c.clone());
        }
    }
    Ok(out)
}

/// The coproduct `Δ`.
pub fn coproduct(x: &Element) -> Result<ForestTensor> {
    cut_sum(x, CutRule::Admissible, false)
}

/// Coproduct of a single forest.
pub fn coproduct_forest(f: &Forest) -> Result<ForestTensor> {
    coproduct(&Element::forest(f.clone()))
}

/// The reduced coproduct `Δ(x) - 1⊗x - x⊗1` of the augmentation part of `x`.
pub fn reduced_coproduct(x: &Element) -> Result<ForestTensor> {
    cut_sum(x, CutRule::Admissible, true)
}

/// `Δ̃^k`, iterated on the left factor; `k = 0` gives the augmentation part.
pub fn reduced_coproduct_iter(x: &Element, k: usize) -> Result<ForestTensor> {
    let mut t = Tensor::zero(1);
    for (f, c) in x.augmentation_part().iter() {
        t.add_term(vec![f.clone()], c.clone());
    }
    for i in 0..k {
        if t.is_zero() {
            return Ok(Tensor::zero(k + 1));
        }
        t = reduced_coproduct_iter_from(&t)?;
        debug_assert_eq!(t.arity(), i + 2);
    }
    Ok(t)
}

/// The least `n` with `Δ̃^n(ρ(x)) = 0`.
pub fn deg_p(x: &Element) -> Result<usize> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut t = reduced_coproduct_iter(x, 0)?;
    let mut n = 0;
    while !t.is_zero() {
        t = reduced_coproduct_iter_from(&t)?;
        n += 1;
    }
    Ok(n)
}

fn reduced_coproduct_iter_from(t: &ForestTensor) -> Result<ForestTensor> {
    let mut err = None;
    let out = t.map_factor(0, 2, |f| match reduced_coproduct(&Element::forest(f.clone())) {
        Ok(d) => d,
        Err(e) => {
            err = Some(e);
            Tensor::zero(2)
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Antipode by the recursion `S(t) = -t - Σ S(t') t''` over the reduced
/// coproduct of each tree, extended as an antimorphism.
#[derive(Default)]
pub struct RecursiveAntipode {
    memo: HashMap<PlanarTree, Element>,
}

impl RecursiveAntipode {
    /// Empty memo table.
    pub fn new() -> Self {
        Self::default()
    }

    /// `S(t)` for a tree.
    pub fn tree(&mut self, t: &PlanarTree) -> Result<Element> {
        if let Some(s) = self.memo.get(t) {
            return Ok(s.clone());
        }
        let mut out = -Element::forest(t.to_forest());
        for (p, r) in cuts(&t.to_forest(), CutRule::Admissible, DEFAULT_CAP)? {
            if p.is_unit() || r.is_unit() {
                continue;
            }
            let sp = self.forest(&p)?;
            out -= &(&sp * &Element::forest(r));
        }
        self.memo.insert(t.clone(), out.clone());
        Ok(out)
    }

    /// `S(t_1 ... t_n) = S(t_n) ... S(t_1)`.
    pub fn forest(&mut self, f: &Forest) -> Result<Element> {
        let mut out = Element::one();
        for t in f.trees().iter().rev() {
            out = &out * &self.tree(t)?;
        }
        Ok(out)
    }

    /// Linear extension.
    pub fn apply(&mut self, x: &Element) -> Result<Element> {
        x.try_map_linear(|f| self.forest(f))
    }
}

/// Antipode computed recursively.
pub fn antipode_recursive(x: &Element) -> Result<Element> {
    RecursiveAntipode::new().apply(x)
}

/// Antipode as a signed sum over all edge subsets `c`:
/// `(-1)^(lg F + |c|)` times the components after cutting, read right to
/// left in the vertex order of `F`.
pub fn antipode_cuts(f: &Forest) -> Result<Element> {
    antipode_cuts_capped(f, DEFAULT_CAP)
}

/// [`antipode_cuts`] with an explicit bound on the number of subsets.
pub fn antipode_cuts_capped(f: &Forest, cap: u128) -> Result<Element> {
    let v = Vertices::of(f);
    let edges = v.edges();
    if edges.len() >= 127 {
        return Err(Error::ResourceLimit { what: "edge subsets", count: format!("2^{}", edges.len()), cap });
    }
    check_cap("edge subsets", 1u128 << edges.len(), cap)?;
    let mut out = Element::zero();
    let base_roots: Vec<usize> = v.roots().collect();
    for mask in 0u128..(1u128 << edges.len()) {
        let mut removed = vec![false; v.len()];
        let mut roots = base_roots.clone();
        for (i, &e) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                removed[e] = true;
                roots.push(e);
            }
        }
        roots.sort_by(|&a, &b| tot_cmp(f, &v, b, a));
        let word = Forest::from_trees(roots.iter().map(|&r| v.subtree_without(r, &removed)).collect());
        let sign = if (f.len() + mask.count_ones() as usize) % 2 == 0 { Coeff::one() } else { -Coeff::one() };
        out.add_term(word, sign);
    }
    Ok(out)
}

/// Linear extension of [`antipode_cuts`].
pub fn antipode_cuts_element(x: &Element) -> Result<Element> {
    x.try_map_linear(antipode_cuts)
}

/// `m ∘ (S ⊗ Id) ∘ Δ` and `m ∘ (Id ⊗ S) ∘ Δ` applied to `f`.
pub fn antipode_convolutions(f: &Forest, s: &mut impl FnMut(&Forest) -> Result<Element>) -> Result<(Element, Element)> {
    let mut left = Element::zero();
    let mut right = Element::zero();
    for (p, r) in admissible_cuts(f)? {
        left += &(&s(&p)? * &Element::forest(r.clone()));
        right += &(&Element::forest(p) * &s(&r)?);
    }
    Ok((left, right))
}

/// `Δ(B_d^+(f)) - B_d^+(f)⊗1 - (Id ⊗ B_d^+)Δ(f)`, zero when the cocycle
/// identity holds.
pub fn cocycle_defect(f: &Forest, d: crate::forest::Decoration) -> Result<ForestTensor> {
    let t = bplus(f, d).to_forest();
    let lhs = coproduct_forest(&t)?;
    let mut rhs = Tensor::pair(t, Forest::unit());
    let shifted = coproduct_forest(f)?.map_each(1, |g| Element::forest(bplus(g, d).to_forest()));
    rhs.add_scaled(&shifted, &int(1))?;
    lhs.minus(&rhs)
}
