//! The Lie algebra of primitive elements: graftings on angles, brackets,
//! cut-counting identities, the `⊤` product and bialgebra endomorphisms
//! built from primitive families.

use std::collections::BTreeMap;

use num_integer::binomial;
use num_traits::Zero;

use crate::algebra::{int, Element, LinComb, Tensor};
use crate::error::{check_cap, Error, Result};
use crate::forest::{enumerate_forests_capped, enumerate_trees_capped, DecorationSet, Forest, PlanarTree, VertexRef};
use crate::hopf::{coproduct, cuts, reduced_coproduct, CutRule};
use crate::pairing::{DualBasis, DualElement};

/// A gap between consecutive children of a vertex; slot `i` lies left of
/// child `i`, slot `fanout` is the rightmost gap.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Angle {
    pub vertex: VertexRef,
    pub slot: usize,
}

impl Angle {
    /// The leftmost angle of its vertex.
    pub fn is_leftmost(&self) -> bool {
        self.slot == 0
    }
}

/// Angles of `t` in left-to-right order; vertices are numbered in preorder.
pub fn angles(t: &PlanarTree) -> Vec<Angle> {
    fn sweep(t: &PlanarTree, next: &mut usize, out: &mut Vec<Angle>) {
        let v = VertexRef(*next);
        *next += 1;
        for (i, c) in t.subtrees().iter().enumerate() {
            out.push(Angle { vertex: v, slot: i });
            sweep(c, next, out);
        }
        out.push(Angle { vertex: v, slot: t.subtrees().len() });
    }
    let mut out = Vec::with_capacity(2 * t.weight() - 1);
    sweep(t, &mut 0, &mut out);
    out
}

/// Scions placed on a weakly increasing sequence of angles of a target.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Grafting {
    pub target: PlanarTree,
    pub scions: Forest,
    pub slots: Vec<Angle>,
}

/// The tree obtained by performing a grafting.
pub fn graft(g: &Grafting) -> Result<PlanarTree> {
    if g.slots.len() != g.scions.len() {
        return Err(Error::MalformedGrafting(format!("{} scions for {} angles", g.scions.len(), g.slots.len())));
    }
    let all = angles(&g.target);
    let mut positions = Vec::with_capacity(g.slots.len());
    for a in &g.slots {
        let p = all.iter().position(|b| b == a).ok_or_else(|| Error::MalformedGrafting(format!("no angle {a:?}")))?;
        positions.push(p);
    }
    if positions.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::MalformedGrafting("angles must be weakly increasing".into()));
    }
    let mut by_angle: BTreeMap<Angle, Vec<PlanarTree>> = BTreeMap::new();
    for (a, s) in g.slots.iter().zip(g.scions.trees()) {
        by_angle.entry(*a).or_default().push(s.clone());
    }
    Ok(rebuild(&g.target, &by_angle, &mut 0))
}

fn rebuild(t: &PlanarTree, by_angle: &BTreeMap<Angle, Vec<PlanarTree>>, next: &mut usize) -> PlanarTree {
    let v = VertexRef(*next);
    *next += 1;
    let mut children = Vec::new();
    let k = t.subtrees().len();
    for slot in 0..=k {
        if let Some(s) = by_angle.get(&Angle { vertex: v, slot }) {
            children.extend(s.iter().cloned());
        }
        if slot < k {
            children.push(rebuild(&t.subtrees()[slot], by_angle, next));
        }
    }
    PlanarTree::new(t.root(), Forest::from_trees(children))
}

/// `C(n, k)`, zero when `k > n`, one when `k = 0`.
pub fn choose(n: i64, k: u32) -> u128 {
    if k == 0 {
        1
    } else if n < i64::from(k) {
        0
    } else {
        binomial(n as u128, u128::from(k))
    }
}

/// All graftings of `f` onto `t`.
pub fn graftings(f: &Forest, t: &PlanarTree, cap: u128) -> Result<Vec<Grafting>> {
    let all = angles(t);
    let m = f.len();
    check_cap("graftings", choose((m + all.len()) as i64 - 1, m as u32), cap)?;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(m);
    fn rec(all: &[Angle], m: usize, from: usize, current: &mut Vec<Angle>, emit: &mut dyn FnMut(&[Angle])) {
        if current.len() == m {
            emit(current);
            return;
        }
        for i in from..all.len() {
            current.push(all[i]);
            rec(all, m, i, current, emit);
            current.pop();
        }
    }
    rec(&all, m, 0, &mut current, &mut |slots| {
        out.push(Grafting { target: t.clone(), scions: f.clone(), slots: slots.to_vec() });
    });
    Ok(out)
}

/// Number of admissible (or left-admissible) cuts of `h` with pruned part
/// `f` and trunk `g`.
pub fn cut_count(f: &Forest, g: &Forest, h: &Forest, left_only: bool, cap: u128) -> Result<u128> {
    if f.weight() + g.weight() != h.weight() {
        return Ok(0);
    }
    let rule = if left_only { CutRule::LeftAdmissible } else { CutRule::Admissible };
    Ok(cuts(h, rule, cap)?.iter().filter(|(p, r)| p == f && r == g).count() as u128)
}

/// `[e_{t1}, e_{t2}]` from cut counts over every tree of the combined weight.
pub fn bracket_cuts(t1: &PlanarTree, t2: &PlanarTree, set: &DecorationSet, cap: u128) -> Result<DualElement> {
    let (f1, f2) = (t1.to_forest(), t2.to_forest());
    let mut out = LinComb::zero();
    for t in enumerate_trees_capped(t1.weight() + t2.weight(), set, cap)? {
        let h = t.to_forest();
        let c = cut_count(&f1, &f2, &h, false, cap)? as i64 - cut_count(&f2, &f1, &h, false, cap)? as i64;
        out.add_term(h, int(c));
    }
    Ok(DualElement(out))
}

/// `[e_{t1}, e_{t2}]` from graftings of each tree onto the other.
pub fn bracket_graft(t1: &PlanarTree, t2: &PlanarTree, cap: u128) -> Result<DualElement> {
    let mut out = LinComb::zero();
    for g in graftings(&t1.to_forest(), t2, cap)? {
        out.add_term(graft(&g)?.to_forest(), int(1));
    }
    for g in graftings(&t2.to_forest(), t1, cap)? {
        out.add_term(graft(&g)?.to_forest(), int(-1));
    }
    Ok(DualElement(out))
}

/// Bilinear bracket of combinations of `e_t`, `t` trees.
pub fn bracket(x: &DualElement, y: &DualElement, cap: u128) -> Result<DualElement> {
    let mut out = LinComb::zero();
    for (f, a) in x.0.iter() {
        for (g, b) in y.0.iter() {
            let (t1, t2) = match (f.as_tree(), g.as_tree()) {
                (Some(t1), Some(t2)) => (t1, t2),
                _ => return Err(Error::NotPrimitive(format!("e-index is not a tree: {f:?} or {g:?}"))),
            };
            out.add_scaled(&bracket_graft(t1, t2, cap)?.0, &(a * b));
        }
    }
    Ok(DualElement(out))
}

/// Closed forms of the counting sums: pruned forest of `m` trees, trunk of
/// weight `n`, trunk a tree or an arbitrary forest.
pub fn counting_closed_form(m: usize, n: usize, trunk_is_tree: bool) -> (u128, u128) {
    let (m, n) = (m as i64, n as i64);
    let shift = if trunk_is_tree { 2 } else { 0 };
    (choose(2 * n + m - shift, m as u32), choose(n + m - shift, m as u32))
}

/// Total admissible and left-admissible cut counts with pruned part `f` and
/// trunk `t`, over every tree of the combined weight.
pub fn counting_sums(f: &Forest, t: &PlanarTree, set: &DecorationSet, cap: u128) -> Result<(u128, u128)> {
    let trunk = t.to_forest();
    let mut sums = (0, 0);
    for h in enumerate_trees_capped(f.weight() + t.weight(), set, cap)? {
        let h = h.to_forest();
        sums.0 += cut_count(f, &trunk, &h, false, cap)?;
        sums.1 += cut_count(f, &trunk, &h, true, cap)?;
    }
    Ok(sums)
}

/// As [`counting_sums`] with a forest trunk, over every forest of the
/// combined weight.
pub fn forest_counting_sums(f: &Forest, g: &Forest, set: &DecorationSet, cap: u128) -> Result<(u128, u128)> {
    let mut sums = (0, 0);
    for h in enumerate_forests_capped(f.weight() + g.weight(), set, cap)? {
        sums.0 += cut_count(f, g, &h, false, cap)?;
        sums.1 += cut_count(f, g, &h, true, cap)?;
    }
    Ok(sums)
}

/// `e_F ⊤ e_G = e_{FG}`, extended bilinearly.
pub fn top(x: &DualElement, y: &DualElement) -> DualElement {
    let mut out = LinComb::zero();
    for (f, a) in x.0.iter() {
        for (g, b) in y.0.iter() {
            out.add_term(f.concat(g), a * b);
        }
    }
    DualElement(out)
}

/// Appends the trees `ts` to every index of `x`.
pub fn top_product(x: &DualElement, ts: &[PlanarTree]) -> DualElement {
    let tail = Forest::from_trees(ts.to_vec());
    DualElement(x.0.map_linear(|f| LinComb::basis(f.concat(&tail))))
}

/// Tabulates the algebra morphism `Φ` with
/// `Φ(t) = Σ Φ(t') ⊤ P_{t''} + P_t` over the reduced coproduct of `t`, on
/// every forest of weight at most `max_weight`.
pub fn endo_from_primitives(
    p: &BTreeMap<PlanarTree, Element>,
    max_weight: usize,
    set: &DecorationSet,
    cap: u128,
) -> Result<BTreeMap<Forest, Element>> {
    let mut db = DualBasis::new(set, cap);
    let mut table: BTreeMap<Forest, Element> = BTreeMap::new();
    table.insert(Forest::unit(), Element::one());
    for n in 1..=max_weight {
        for t in enumerate_trees_capped(n, set, cap)? {
            let pt = p.get(&t).ok_or_else(|| Error::Missing(format!("no primitive for {}", set.render_tree(&t))))?;
            if !reduced_coproduct(pt)?.is_zero() || !pt.counit().is_zero() {
                return Err(Error::NotPrimitive(set.render_tree(&t)));
            }
            let mut acc = DualElement::default();
            for (factors, c) in reduced_coproduct(&Element::forest(t.to_forest()))?.iter() {
                let (pruned, trunk) = (&factors[0], &factors[1]);
                let trunk_tree = trunk.as_tree().expect("trunk of a tree is a tree");
                let left = db.to_dual(&table[pruned])?;
                let right = db.to_dual(&p[trunk_tree])?;
                acc.0.add_scaled(&top(&left, &right).0, c);
            }
            let value = &db.from_dual(&acc)? + pt;
            table.insert(t.to_forest(), value);
        }
        for f in enumerate_forests_capped(n, set, cap)? {
            if f.len() > 1 {
                let value = f.trees().iter().fold(Element::one(), |acc, t| &acc * &table[&t.to_forest()]);
                table.insert(f, value);
            }
        }
    }
    Ok(table)
}

/// Checks `Δ∘Φ = (Φ⊗Φ)∘Δ` on every tabulated forest.
pub fn is_coalgebra_morphism(table: &BTreeMap<Forest, Element>) -> Result<bool> {
    for (f, image) in table {
        let lhs = coproduct(image)?;
        let mut rhs = Tensor::zero(2);
        for (factors, c) in coproduct(&Element::forest(f.clone()))?.iter() {
            let (a, b) = match (table.get(&factors[0]), table.get(&factors[1])) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err(Error::Missing("coproduct factor outside the table".into())),
            };
            rhs.add_scaled(&Tensor::from_pair(a, b), c)?;
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Commutator `xy - yx` in the forest algebra.
pub fn commutator(x: &Element, y: &Element) -> Element {
    &(x * y) - &(y * x)
}
