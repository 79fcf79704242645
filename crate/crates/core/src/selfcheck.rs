//! Invariant suite run end to end up to a weight bound.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{int, ratio, Coeff, Element, LinComb, Tensor};
use crate::cm::{self, Coproduct, Family};
use crate::error::{Error, Result};
use crate::forest::{
    bplus, enumerate_forests_capped, enumerate_trees_capped, DecorationSet, Forest, PlanarTree, STAR,
};
use crate::frabetti::{binary_to_forest, coproduct_fr_binary, coproduct_fr_cuts, coproduct_fr_recursive, forest_to_binary, BinaryTree};
use crate::hopf::{antipode_convolutions, antipode_cuts_capped, cocycle_defect, coproduct, coproduct_forest, deg_p, RecursiveAntipode};
use crate::liealg::{bracket, bracket_cuts, bracket_graft, counting_closed_form, counting_sums, forest_counting_sums};
use crate::nonplanar::{self, AntipodeR, RForest};
use crate::pairing::{gram_matrix, pair_combinatorial_capped, DualBasis, DualElement, Pairing};
use crate::series::{catalan, dims, primitive_rank, tau};
use crate::shuffle::{self, Generator};

/// Outcome of one invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub module: &'static str,
    pub name: &'static str,
    pub failure: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Every check run by [`run`], in order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub max_weight: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed()).count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            write!(f, "{status}  {:<10} {}", c.module, c.name)?;
            if let Some(why) = &c.failure {
                write!(f, "  ({why})")?;
            }
            writeln!(f)?;
        }
        write!(f, "{} checks, {} failed, max weight {}", self.checks.len(), self.failures(), self.max_weight)
    }
}

struct Runner {
    cap: u128,
    checks: Vec<Check>,
}

impl Runner {
    /// Records a check; resource-limit errors abort the run, any other error
    /// is a failure.
    fn check(&mut self, module: &'static str, name: &'static str, body: impl FnOnce(u128) -> Result<Option<String>>) -> Result<()> {
        let failure = match body(self.cap) {
            Ok(f) => f,
            Err(e @ Error::ResourceLimit { .. }) => return Err(e),
            Err(e) => Some(e.to_string()),
        };
        self.checks.push(Check { module, name, failure });
        Ok(())
    }
}

fn fail_if(bad: bool, why: impl FnOnce() -> String) -> Option<String> {
    bad.then(why)
}

fn forests_up_to(w: usize, set: &DecorationSet, cap: u128) -> Result<Vec<Forest>> {
    let mut out = Vec::new();
    for n in 0..=w {
        out.extend(enumerate_forests_capped(n, set, cap)?);
    }
    Ok(out)
}

fn trees_up_to(w: usize, set: &DecorationSet, cap: u128) -> Result<Vec<PlanarTree>> {
    let mut out = Vec::new();
    for n in 1..=w {
        out.extend(enumerate_trees_capped(n, set, cap)?);
    }
    Ok(out)
}

fn first_failure<T>(items: impl IntoIterator<Item = T>, mut bad: impl FnMut(&T) -> Result<bool>, show: impl Fn(&T) -> String) -> Result<Option<String>> {
    for x in items {
        if bad(&x)? {
            return Ok(Some(show(&x)));
        }
    }
    Ok(None)
}

/// Runs the whole suite on undecorated forests, plus two decorations where
/// decorations matter, up to weight `max_weight`.
pub fn run(max_weight: usize, cap: u128) -> Result<Report> {
    let w = max_weight;
    let one = DecorationSet::undecorated();
    let two = DecorationSet::new(["a", "b"])?;
    let show = |f: &Forest| one.render(f);
    let mut r = Runner { cap, checks: Vec::new() };

    r.check("forest", "enumeration counts", |cap| {
        for n in 1..=w.min(7) {
            for (d, set) in [(1u32, &one), (2, &two)] {
                let dn = u128::from(d).pow(n as u32);
                let trees = enumerate_trees_capped(n, set, cap)?.len() as u128;
                let forests = enumerate_forests_capped(n, set, cap)?.len() as u128;
                if trees != dn * tau(n as u32) || forests != dn * catalan(n as u32) {
                    return Ok(Some(format!("n={n} D={d}")));
                }
            }
        }
        Ok(None)
    })?;

    r.check("forest", "render/parse round trip and ascending order", |cap| {
        for set in [&one, &two] {
            let all = forests_up_to(w, set, cap)?;
            if all.windows(2).any(|p| p[0] >= p[1]) {
                return Ok(Some("enumeration not strictly ascending".into()));
            }
            if let Some(e) = first_failure(&all, |f| Ok(set.parse_forest(&set.render(f))? != **f), |f| set.render(f))? {
                return Ok(Some(e));
            }
        }
        Ok(None)
    })?;

    r.check("hopf", "coassociativity and counit", |cap| {
        first_failure(
            forests_up_to(w, &one, cap)?,
            |f| {
                let d = coproduct_forest(f)?;
                let left = d.map_factor(0, 2, |a| coproduct_forest(a).expect("bounded"));
                let right = d.map_factor(1, 2, |b| coproduct_forest(b).expect("bounded"));
                let x = Element::forest(f.clone());
                Ok(left != right || d.counit_factor(0).to_lincomb() != x || d.counit_factor(1).to_lincomb() != x)
            },
            show,
        )
    })?;

    r.check("hopf", "multiplicativity", |cap| {
        let all = forests_up_to(w, &one, cap)?;
        for f in &all {
            for g in all.iter().filter(|g| f.weight() + g.weight() <= w) {
                if coproduct_forest(&f.concat(g))? != coproduct_forest(f)?.mul(&coproduct_forest(g)?)? {
                    return Ok(Some(format!("{} · {}", show(f), show(g))));
                }
            }
        }
        Ok(None)
    })?;

    r.check("hopf", "grafting cocycle", |cap| {
        for f in forests_up_to(w.saturating_sub(1), &two, cap)? {
            for d in two.decorations() {
                if !cocycle_defect(&f, d)?.is_zero() {
                    return Ok(Some(two.render(&f)));
                }
            }
        }
        Ok(None)
    })?;

    r.check("hopf", "antipode: recursion = cut formula, convolution identities", |cap| {
        let mut s = RecursiveAntipode::new();
        first_failure(
            forests_up_to(w, &one, cap)?,
            |f| {
                let rec = s.forest(f)?;
                if rec != antipode_cuts_capped(f, cap)? {
                    return Ok(true);
                }
                let (l, rgt) = antipode_convolutions(f, &mut |g| s.forest(g))?;
                let eps = if f.is_unit() { Element::one() } else { Element::zero() };
                Ok(l != eps || rgt != eps)
            },
            show,
        )
    })?;

    r.check("hopf", "deg_p additivity", |cap| {
        let all: Vec<Forest> = forests_up_to(w.min(3), &one, cap)?.into_iter().filter(|f| !f.is_unit()).collect();
        for f in &all {
            for g in &all {
                let fg = deg_p(&Element::forest(f.concat(g)))?;
                if fg != deg_p(&Element::forest(f.clone()))? + deg_p(&Element::forest(g.clone()))? {
                    return Ok(Some(format!("{} · {}", show(f), show(g))));
                }
            }
        }
        Ok(None)
    })?;

    r.check("pairing", "recursion = bijection count, symmetry", |cap| {
        let mut p = Pairing::new();
        for set in [&one, &two] {
            for n in 0..=w.min(4) {
                let basis = enumerate_forests_capped(n, set, cap)?;
                for f in &basis {
                    for g in &basis {
                        let v = p.forests(f, g);
                        if v != pair_combinatorial_capped(f, g, cap)? || v != p.forests(g, f) {
                            return Ok(Some(format!("({}, {})", set.render(f), set.render(g))));
                        }
                    }
                }
            }
        }
        Ok(None)
    })?;

    r.check("pairing", "Gram matrices unimodular", |cap| {
        for n in 0..=w {
            let g = gram_matrix(n, &one, cap)?;
            if !g.matrix.determinant()?.abs().is_one() {
                return Ok(Some(format!("n={n}")));
            }
            g.matrix.inverse_unimodular()?;
        }
        Ok(None)
    })?;

    r.check("pairing", "dual basis: duality, deconcatenation, primitivity, grafting", |cap| {
        let mut db = DualBasis::new(&one, cap);
        let mut p = Pairing::new();
        for n in 0..=w {
            let basis = enumerate_forests_capped(n, &one, cap)?;
            for f in &basis {
                let e = db.e(f)?;
                for g in &basis {
                    let want = if f == g { Coeff::one() } else { Coeff::zero() };
                    if p.elements(&e, &Element::forest(g.clone())) != want {
                        return Ok(Some(format!("(e_{}, {})", show(f), show(g))));
                    }
                }
                let mut split = Tensor::zero(2);
                for i in 0..=f.len() {
                    split.add_scaled(&Tensor::from_pair(&db.e(&f.slice(0..i))?, &db.e(&f.slice(i..f.len()))?), &int(1))?;
                }
                if coproduct(&e)? != split {
                    return Ok(Some(format!("Δ(e_{})", show(f))));
                }
                if f.len() == 1 && !crate::hopf::reduced_coproduct(&e)?.is_zero() {
                    return Ok(Some(format!("e_{} not primitive", show(f))));
                }
                if n < w {
                    let grafted = e.map_linear(|g| Element::forest(bplus(g, STAR).to_forest()));
                    let mut fd = f.clone();
                    fd.push(PlanarTree::leaf(STAR));
                    if grafted != db.e(&fd)? {
                        return Ok(Some(format!("B+(e_{})", show(f))));
                    }
                }
            }
        }
        Ok(None)
    })?;

    r.check("liealg", "bracket: cuts = grafts, Jacobi", |cap| {
        let trees = trees_up_to(w, &one, cap)?;
        for a in &trees {
            for b in trees.iter().filter(|b| a.weight() + b.weight() <= w) {
                if bracket_cuts(a, b, &one, cap)? != bracket_graft(a, b, cap)? {
                    return Ok(Some(format!("[{}, {}]", one.render_tree(a), one.render_tree(b))));
                }
            }
        }
        let e = |t: &PlanarTree| DualElement::basis(t.to_forest());
        for a in &trees {
            for b in &trees {
                for c in trees.iter().filter(|c| a.weight() + b.weight() + c.weight() <= w) {
                    let mut sum = bracket(&bracket(&e(a), &e(b), cap)?, &e(c), cap)?.0;
                    sum += &bracket(&bracket(&e(b), &e(c), cap)?, &e(a), cap)?.0;
                    sum += &bracket(&bracket(&e(c), &e(a), cap)?, &e(b), cap)?.0;
                    if !sum.is_zero() {
                        return Ok(Some("Jacobi".into()));
                    }
                }
            }
        }
        Ok(None)
    })?;

    r.check("liealg", "counting identities", |cap| {
        let all = forests_up_to(w, &one, cap)?;
        for f in all.iter().filter(|f| !f.is_unit()) {
            for g in all.iter().filter(|g| f.weight() + g.weight() <= w) {
                if forest_counting_sums(f, g, &one, cap)? != counting_closed_form(f.len(), g.weight(), false) {
                    return Ok(Some(format!("forest trunk {} / {}", show(f), show(g))));
                }
                if let Some(t) = g.as_tree() {
                    if counting_sums(f, t, &one, cap)? != counting_closed_form(f.len(), t.weight(), true) {
                        return Ok(Some(format!("tree trunk {} / {}", show(f), show(g))));
                    }
                }
            }
        }
        Ok(None)
    })?;

    r.check("frabetti", "cut formula = recursion = binary trees", |cap| {
        first_failure(
            forests_up_to(w, &one, cap)?,
            |f| {
                let cuts = coproduct_fr_cuts(f, cap)?;
                Ok(cuts != coproduct_fr_recursive(&Element::forest(f.clone())) || cuts != coproduct_fr_binary(f))
            },
            show,
        )
    })?;

    r.check("frabetti", "forest/binary bijection", |cap| {
        for n in 0..=w + 1 {
            for b in BinaryTree::enumerate(n, cap)? {
                if forest_to_binary(&binary_to_forest(&b)) != b {
                    return Ok(Some(b.to_string()));
                }
            }
            for f in enumerate_forests_capped(n, &one, cap)? {
                if binary_to_forest(&forest_to_binary(&f)) != f {
                    return Ok(Some(show(&f)));
                }
            }
        }
        Ok(None)
    })?;

    r.check("cm", "closed-form coproducts of u_n, v_n", |cap| {
        for n in 1..=w {
            for family in [Family::U, Family::V] {
                for which in [Coproduct::Standard, Coproduct::Frabetti] {
                    if !cm::formula_holds(family, which, n, cap)? {
                        return Ok(Some(format!("{family:?} {which:?} n={n}")));
                    }
                }
            }
        }
        Ok(None)
    })?;

    r.check("cm", "change of variables", |cap| {
        Ok(cm::phi_check(w, cap)?.iter().find(|c| !c.passed()).map(|c| format!("n={}", c.n)))
    })?;

    r.check("shuffle", "Hopf axioms and antipodes", |_| {
        let gens = vec![Generator::new("x", 1)?, Generator::new("y", 1)?, Generator::new("z", 2)?];
        let words = shuffle::words_up_to(&gens, w.min(4));
        let unit = shuffle::Word::empty();
        for a in &words {
            let d = shuffle::deconcat(a);
            let left = d.map_factor(0, 2, shuffle::deconcat);
            let right = d.map_factor(1, 2, shuffle::deconcat);
            if left != right {
                return Ok(Some(format!("coassociativity at {a}")));
            }
            let s = shuffle::antipode_star(a);
            if shuffle::antipode_shuffle_generic(a) != s {
                return Ok(Some(format!("generic antipode at {a}")));
            }
            let mut conv = LinComb::zero();
            for (f, c) in d.iter() {
                conv.add_scaled(&shuffle::shuffle_elements(&shuffle::antipode_star(&f[0]), &LinComb::basis(f[1].clone())), c);
            }
            let eps = if a.is_empty() { LinComb::basis(unit.clone()) } else { LinComb::zero() };
            if conv != eps {
                return Ok(Some(format!("S * Id at {a}")));
            }
            for b in words.iter().filter(|b| a.len() + b.len() <= w.min(4)) {
                let lhs = shuffle::deconcat_element(&shuffle::shuffle(a, b));
                let rhs = shuffle::shuffle_tensors(&shuffle::deconcat(a), &shuffle::deconcat(b));
                if lhs != rhs {
                    return Ok(Some(format!("compatibility at {a}, {b}")));
                }
            }
        }
        Ok(None)
    })?;

    r.check("shuffle", "generic antipode on e-words of forests", |cap| {
        let mut db = DualBasis::new(&one, cap);
        let mut s = RecursiveAntipode::new();
        for f in forests_up_to(w, &one, cap)? {
            let mut blocks = |ts: &[PlanarTree]| db.e(&Forest::from_trees(ts.to_vec())).expect("bounded");
            let generic = shuffle::antipode_generic(f.trees(), Element::one(), &mut blocks, |a, b| a * b);
            if generic != s.apply(&db.e(&f)?)? {
                return Ok(Some(show(&f)));
            }
        }
        Ok(None)
    })?;

    r.check("nonplanar", "projection is a Hopf morphism", |cap| {
        let mut s = AntipodeR::new();
        let mut rec = RecursiveAntipode::new();
        first_failure(
            forests_up_to(w, &one, cap)?,
            |f| {
                let proj = nonplanar::project(f);
                let lifts = nonplanar::fiber(&proj);
                let d = nonplanar::coproduct_r(&proj)?;
                for g in &lifts {
                    if nonplanar::project_tensor(&coproduct_forest(g)?) != d {
                        return Ok(true);
                    }
                }
                Ok(nonplanar::project_element(&rec.forest(f)?) != s.forest(&proj)?)
            },
            show,
        )
    })?;

    r.check("nonplanar", "averaged grafting values", |_| {
        let p = |s: &str| RForest::parse(s, &one);
        let x = nonplanar::graft_average(&p("*[*]")?, &p("*[* *]")?);
        let y = nonplanar::graft_average(&p("*[*]")?, &p("* *")?);
        let ok = x.coeff(&p("*[* * *[*]]")?) == ratio(1, 3)
            && x.coeff(&p("*[*[*[*]] *]")?) == ratio(2, 3)
            && x.len() == 2
            && y.coeff(&p("*[*[*]] *")?) == int(1)
            && y.len() == 1;
        Ok(fail_if(!ok, || "averaged grafting mismatch".into()))
    })?;

    r.check("nonplanar", "bracket consistency and fiber duality", |cap| {
        let trees = nonplanar::enumerate_rtrees(1, &one, cap)?;
        let mut all = trees;
        for n in 2..w {
            all.extend(nonplanar::enumerate_rtrees(n, &one, cap)?);
        }
        for a in &all {
            for b in all.iter().filter(|b| a.weight() + b.weight() <= w) {
                if !nonplanar::bracket_consistent(a, b, &one, cap)? {
                    return Ok(Some("bracket".into()));
                }
            }
        }
        let mut db = DualBasis::new(&one, cap);
        let mut p = Pairing::new();
        for n in 0..=w {
            let planar = enumerate_forests_capped(n, &one, cap)?;
            for fbar in nonplanar::enumerate_rforests(n, &one, cap)? {
                let e = nonplanar::ebar(&fbar, &mut db)?;
                for g in &planar {
                    let want = if nonplanar::project(g) == fbar { Coeff::one() } else { Coeff::zero() };
                    if p.elements(&e, &Element::forest(g.clone())) != want {
                        return Ok(Some(format!("fiber duality at {}", show(g))));
                    }
                }
            }
        }
        Ok(None)
    })?;

    r.check("nonplanar", "averaged grafting cocycle", |cap| {
        let mut db = DualBasis::new(&one, cap);
        let mut prims = Vec::new();
        for t in trees_up_to(w.min(3), &one, cap)? {
            prims.push(nonplanar::project_element(&db.e(&t.to_forest())?));
        }
        for p in &prims {
            nonplanar::require_primitive_r(p)?;
            let pw = p.max_weight().unwrap_or(0);
            for n in 0..=w.saturating_sub(pw) {
                for f in nonplanar::enumerate_rforests(n, &one, cap)? {
                    if !nonplanar::graft_cocycle_defect(&LinComb::basis(f), p)?.is_zero() {
                        return Ok(Some("defect".into()));
                    }
                }
            }
        }
        Ok(None)
    })?;

    r.check("series", "dimensions and primitive rank", |cap| {
        for k in 2..=24u32 {
            if tau(k) != (1..k).map(|i| tau(i) * tau(k - i)).sum::<u128>() {
                return Ok(Some(format!("τ recurrence at {k}")));
            }
        }
        for n in 1..=w {
            let (rn, pn) = dims(n as u32, 1);
            let forests = BigInt::from(enumerate_forests_capped(n, &one, cap)?.len());
            let pr = primitive_rank(n, &one, cap)?;
            let (kernel, span) = (BigInt::from(pr.kernel), BigInt::from(pr.dual_trees));
            if rn != forests || kernel != pn || span != pn || !pr.dual_trees_primitive {
                return Ok(Some(format!("n={n}")));
            }
        }
        Ok(None)
    })?;

    Ok(Report { max_weight: w, checks: r.checks })
}
