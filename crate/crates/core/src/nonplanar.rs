//! Non-planar rooted forests, the projection from planar forests, and the
//! structure maps of the commutative quotient.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::Zero;

use crate::algebra::{int, Coeff, Element, LinComb, Monomial, Tensor};
use crate::error::{Error, Result};
use crate::forest::{enumerate_forests_capped, enumerate_trees_capped, Decoration, DecorationSet, Forest, PlanarTree};
use crate::hopf::{coproduct_forest, cuts, CutRule};
use crate::liealg::bracket_cuts;
use crate::pairing::DualBasis;

/// A rooted tree without planar embedding; children kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RTree {
    root: Decoration,
    children: Vec<RTree>,
    weight: usize,
}

impl RTree {
    pub fn new(root: Decoration, mut children: Vec<RTree>) -> Self {
        children.sort();
        let weight = 1 + children.iter().map(|c| c.weight).sum::<usize>();
        RTree { root, children, weight }
    }

    pub fn root(&self) -> Decoration {
        self.root
    }

    pub fn children(&self) -> &[RTree] {
        &self.children
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    /// The planar representative with children in canonical order.
    pub fn lift(&self) -> PlanarTree {
        PlanarTree::new(self.root, Forest::from_trees(self.children.iter().map(RTree::lift).collect()))
    }

    pub fn to_forest(&self) -> RForest {
        RForest::from_trees(vec![self.clone()])
    }
}

impl Ord for RTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .cmp(&other.weight)
            .then_with(|| self.root.cmp(&other.root))
            .then_with(|| self.children.cmp(&other.children))
    }
}

impl PartialOrd for RTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A multiset of rooted trees, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct RForest {
    trees: Vec<RTree>,
}

impl RForest {
    pub fn unit() -> Self {
        RForest::default()
    }

    pub fn from_trees(mut trees: Vec<RTree>) -> Self {
        trees.sort();
        RForest { trees }
    }

    pub fn trees(&self) -> &[RTree] {
        &self.trees
    }

    pub fn is_unit(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.trees.iter().map(RTree::weight).sum()
    }

    pub fn as_tree(&self) -> Option<&RTree> {
        match self.trees.as_slice() {
            [t] => Some(t),
            _ => None,
        }
    }

    /// The planar representative with trees in canonical order.
    pub fn lift(&self) -> Forest {
        Forest::from_trees(self.trees.iter().map(RTree::lift).collect())
    }

    /// Parses with the planar grammar and forgets the embedding.
    pub fn parse(text: &str, set: &DecorationSet) -> Result<RForest> {
        Ok(project(&set.parse_forest(text)?))
    }

    /// Renders the canonical representative.
    pub fn render(&self, set: &DecorationSet) -> String {
        set.render(&self.lift())
    }
}

impl Ord for RForest {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| self.trees.cmp(&other.trees))
    }
}

impl PartialOrd for RForest {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial for RForest {
    fn one() -> Self {
        RForest::unit()
    }
    fn mul(&self, other: &Self) -> Self {
        RForest::from_trees(self.trees.iter().chain(&other.trees).cloned().collect())
    }
    fn weight(&self) -> usize {
        RForest::weight(self)
    }
    fn is_one(&self) -> bool {
        self.is_unit()
    }
}

/// Element of the non-planar algebra.
pub type RElement = LinComb<RForest>;

/// Forgets the planar embedding of a tree.
pub fn project_tree(t: &PlanarTree) -> RTree {
    RTree::new(t.root(), t.subtrees().iter().map(project_tree).collect())
}

/// Forgets the planar embedding.
pub fn project(f: &Forest) -> RForest {
    RForest::from_trees(f.trees().iter().map(project_tree).collect())
}

/// Linear extension of [`project`].
pub fn project_element(x: &Element) -> RElement {
    x.map_linear(|f| LinComb::basis(project(f)))
}

/// Applies the projection to every factor.
pub fn project_tensor(t: &Tensor<Forest>) -> Tensor<RForest> {
    t.map_all(|_, f| LinComb::basis(project(f)))
}

fn distinct_permutations<T: Clone + Ord>(items: &[T]) -> Vec<Vec<T>> {
    let mut sorted = items.to_vec();
    sorted.sort();
    let mut out = Vec::new();
    let mut used = vec![false; sorted.len()];
    let mut current = Vec::with_capacity(sorted.len());
    fn rec<T: Clone + Ord>(s: &[T], used: &mut [bool], cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == s.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..s.len() {
            if used[i] || (i > 0 && s[i] == s[i - 1] && !used[i - 1]) {
                continue;
            }
            used[i] = true;
            cur.push(s[i].clone());
            rec(s, used, cur, out);
            cur.pop();
            used[i] = false;
        }
    }
    rec(&sorted, &mut used, &mut current, &mut out);
    out
}

fn sequence_fibers(items: &[RTree], memo: &mut HashMap<RTree, Vec<PlanarTree>>) -> Vec<Vec<PlanarTree>> {
    let mut out = BTreeSet::new();
    for order in distinct_permutations(items) {
        let mut acc: Vec<Vec<PlanarTree>> = vec![Vec::new()];
        for t in &order {
            let options = tree_fiber(t, memo);
            acc = acc
                .iter()
                .flat_map(|prefix| {
                    options.iter().map(move |o| {
                        let mut v = prefix.clone();
                        v.push(o.clone());
                        v
                    })
                })
                .collect();
        }
        out.extend(acc);
    }
    out.into_iter().collect()
}

fn tree_fiber(t: &RTree, memo: &mut HashMap<RTree, Vec<PlanarTree>>) -> Vec<PlanarTree> {
    if let Some(v) = memo.get(t) {
        return v.clone();
    }
    let out: Vec<PlanarTree> = sequence_fibers(&t.children, memo)
        .into_iter()
        .map(|cs| PlanarTree::new(t.root, Forest::from_trees(cs)))
        .collect();
    memo.insert(t.clone(), out.clone());
    out
}

/// Every planar forest projecting to `f`, without repetition.
pub fn fiber(f: &RForest) -> Vec<Forest> {
    sequence_fibers(&f.trees, &mut HashMap::new()).into_iter().map(Forest::from_trees).collect()
}

/// Every non-planar forest of weight `n`.
pub fn enumerate_rforests(n: usize, set: &DecorationSet, cap: u128) -> Result<Vec<RForest>> {
    let all: BTreeSet<RForest> = enumerate_forests_capped(n, set, cap)?.iter().map(project).collect();
    Ok(all.into_iter().collect())
}

/// Every non-planar tree of weight `n`.
pub fn enumerate_rtrees(n: usize, set: &DecorationSet, cap: u128) -> Result<Vec<RTree>> {
    let all: BTreeSet<RTree> = enumerate_trees_capped(n, set, cap)?.iter().map(project_tree).collect();
    Ok(all.into_iter().collect())
}

/// Coproduct of the quotient, computed on the canonical lift.
pub fn coproduct_r(f: &RForest) -> Result<Tensor<RForest>> {
    Ok(project_tensor(&coproduct_forest(&f.lift())?))
}

/// Linear extension of [`coproduct_r`].
pub fn coproduct_r_element(x: &RElement) -> Result<Tensor<RForest>> {
    let mut out = Tensor::zero(2);
    for (f, c) in x.iter() {
        out.add_scaled(&coproduct_r(f)?, c)?;
    }
    Ok(out)
}

/// Recursive antipode of the quotient.
#[derive(Default)]
pub struct AntipodeR {
    memo: HashMap<RTree, RElement>,
}

impl AntipodeR {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn tree(&mut self, t: &RTree) -> Result<RElement> {
        if let Some(v) = self.memo.get(t) {
            return Ok(v.clone());
        }
        let mut out = RElement::term(t.to_forest(), int(-1));
        for (fs, c) in coproduct_r(&t.to_forest())?.iter() {
            if fs[0].is_unit() || fs[1].is_unit() {
                continue;
            }
            let s = self.forest(&fs[0])?;
            out.add_scaled(&(&s * &LinComb::basis(fs[1].clone())), &-c);
        }
        self.memo.insert(t.clone(), out.clone());
        Ok(out)
    }

    pub fn forest(&mut self, f: &RForest) -> Result<RElement> {
        let mut acc = RElement::one();
        for t in f.trees() {
            acc = &acc * &self.tree(t)?;
        }
        Ok(acc)
    }

    pub fn apply(&mut self, x: &RElement) -> Result<RElement> {
        x.try_map_linear(|f| self.forest(f))
    }
}

/// `e_{F̄}`: sum of the dual-basis elements over the fiber.
pub fn ebar(f: &RForest, db: &mut DualBasis) -> Result<Element> {
    let mut out = Element::zero();
    for g in fiber(f) {
        out += &db.e(&g)?;
    }
    Ok(out)
}

/// Number of elementary cuts of `t` with pruned part `a` and trunk `b`.
pub fn cut_count_r(a: &RTree, b: &RTree, t: &RTree, cap: u128) -> Result<u128> {
    if a.weight() + b.weight() != t.weight() {
        return Ok(0);
    }
    let count = cuts(&t.lift().to_forest(), CutRule::Admissible, cap)?
        .iter()
        .filter(|(p, r)| p.len() == 1 && r.len() == 1 && project_tree(&p.trees()[0]) == *a && project_tree(&r.trees()[0]) == *b)
        .count();
    Ok(count as u128)
}

/// Structure constants of `[e_{t̄1}, e_{t̄2}]` from elementary cuts of
/// non-planar trees.
pub fn bracket_r(t1: &RTree, t2: &RTree, set: &DecorationSet, cap: u128) -> Result<BTreeMap<RTree, i128>> {
    let mut out = BTreeMap::new();
    for t in enumerate_rtrees(t1.weight() + t2.weight(), set, cap)? {
        let c = cut_count_r(t1, t2, &t, cap)? as i128 - cut_count_r(t2, t1, &t, cap)? as i128;
        if c != 0 {
            out.insert(t, c);
        }
    }
    Ok(out)
}

/// Checks that summing planar brackets over both fibers gives the
/// projected structure constants on every planar tree.
pub fn bracket_consistent(t1: &RTree, t2: &RTree, set: &DecorationSet, cap: u128) -> Result<bool> {
    let expected = bracket_r(t1, t2, set, cap)?;
    let mut planar = LinComb::zero();
    for a in fiber(&t1.to_forest()) {
        for b in fiber(&t2.to_forest()) {
            let (ta, tb) = (a.as_tree().expect("tree fiber"), b.as_tree().expect("tree fiber"));
            planar += &bracket_cuts(ta, tb, set, cap)?.0;
        }
    }
    for t in enumerate_trees_capped(t1.weight() + t2.weight(), set, cap)? {
        let want = expected.get(&project_tree(&t)).copied().unwrap_or(0);
        if planar.coeff(&t.to_forest()) != Coeff::from_integer(want.into()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `F̄ ⊤̄ Ḡ`: the average over vertices `s` of `Ḡ` of grafting the trees of
/// `F̄` onto `s`; zero when `Ḡ` is the unit.
pub fn graft_average(f: &RForest, g: &RForest) -> RElement {
    if g.is_unit() {
        return RElement::zero();
    }
    let lift = g.lift();
    let n = lift.weight();
    let mut out = RElement::zero();
    for s in 0..n {
        let mut next = 0;
        let grafted: Vec<PlanarTree> = lift.trees().iter().map(|t| graft_at(t, s, f, &mut next)).collect();
        out.add_term(project(&Forest::from_trees(grafted)), Coeff::new(1.into(), (n as i64).into()));
    }
    out
}

fn graft_at(t: &PlanarTree, target: usize, f: &RForest, next: &mut usize) -> PlanarTree {
    let here = *next;
    *next += 1;
    let mut children: Vec<PlanarTree> = t.subtrees().iter().map(|c| graft_at(c, target, f, next)).collect();
    if here == target {
        children.extend(f.trees().iter().map(RTree::lift));
    }
    PlanarTree::new(t.root(), Forest::from_trees(children))
}

/// Bilinear extension of [`graft_average`].
pub fn graft_average_element(x: &RElement, p: &RElement) -> RElement {
    let mut out = RElement::zero();
    for (f, a) in x.iter() {
        for (g, b) in p.iter() {
            out.add_scaled(&graft_average(f, g), &(a * b));
        }
    }
    out
}

/// `Δ(x ⊤̄ p) - (x ⊤̄ p)⊗1 - (Id ⊗ (· ⊤̄ p))Δ(x)`.
pub fn graft_cocycle_defect(x: &RElement, p: &RElement) -> Result<Tensor<RForest>> {
    let xp = graft_average_element(x, p);
    let mut defect = coproduct_r_element(&xp)?;
    defect.add_scaled(&Tensor::from_pair(&xp, &RElement::one()), &int(-1))?;
    let shifted = coproduct_r_element(x)?.map_each(1, |g| graft_average_element(&LinComb::basis(g.clone()), p));
    defect.add_scaled(&shifted, &int(-1))?;
    Ok(defect)
}

/// Whether `p` is primitive for the quotient coproduct.
pub fn is_primitive_r(p: &RElement) -> Result<bool> {
    let mut d = coproduct_r_element(p)?;
    d.add_scaled(&Tensor::from_pair(p, &RElement::one()), &int(-1))?;
    d.add_scaled(&Tensor::from_pair(&RElement::one(), p), &int(-1))?;
    Ok(d.is_zero() && p.counit().is_zero())
}

/// Fails unless `p` is primitive.
pub fn require_primitive_r(p: &RElement) -> Result<()> {
    if is_primitive_r(p)? {
        Ok(())
    } else {
        Err(Error::NotPrimitive("non-planar element".into()))
    }
}
