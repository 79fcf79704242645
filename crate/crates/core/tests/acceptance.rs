//! Acceptance criteria, one PASS/FAIL line each. Every comparison is exact.

#[path = "support/oracle.rs"]
mod oracle;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use planar_hopf::algebra::ForestTensor;
use planar_hopf::cm::{self, Coproduct, Family};
use planar_hopf::error::DEFAULT_CAP;
use planar_hopf::forest::{enumerate_forests_capped, enumerate_trees_capped};
use planar_hopf::frabetti::{binary_to_forest, coproduct_fr_cuts, coproduct_fr_recursive, forest_to_binary, BinaryTree};
use planar_hopf::hopf::{antipode_cuts, cocycle_defect, coproduct_forest, deg_p, RecursiveAntipode};
use planar_hopf::liealg::{bracket, bracket_cuts, bracket_graft, counting_sums, forest_counting_sums};
use planar_hopf::matrix::IntMatrix;
use planar_hopf::nonplanar::{self, AntipodeR, RForest};
use planar_hopf::pairing::{gram_matrix, pair_combinatorial, DualBasis, DualElement, Pairing};
use planar_hopf::series::{catalan, primitive_rank, tau, tau_series};
use planar_hopf::shuffle::{self, Generator};
use planar_hopf::{DecorationSet, Element, Forest, LinComb, PlanarTree};

use oracle::{OForest, OTree, Q};

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lib<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

const CAP: u128 = DEFAULT_CAP;

fn one() -> DecorationSet {
    DecorationSet::undecorated()
}

fn two() -> DecorationSet {
    DecorationSet::new(["a", "b"]).expect("valid tokens")
}

fn tokens(set: &DecorationSet) -> Vec<String> {
    set.decorations().map(|d| set.token(d).to_string()).collect()
}

fn catalog(max: usize, set: &DecorationSet) -> oracle::Catalog {
    let toks = tokens(set);
    oracle::Catalog::new(max, &toks.iter().map(String::as_str).collect::<Vec<_>>())
}

fn to_o(f: &Forest, set: &DecorationSet) -> OForest {
    oracle::parse(&set.render(f))
}

fn to_lib(f: &[OTree], set: &DecorationSet) -> Forest {
    set.parse_forest(&oracle::render(f)).expect("oracle renders valid forests")
}

fn lin_of(x: &Element, set: &DecorationSet) -> oracle::Lin {
    oracle::clean(x.iter().map(|(f, c)| (to_o(f, set), c.clone())).collect())
}

fn lin2_of(t: &ForestTensor, set: &DecorationSet) -> oracle::Lin2 {
    let mut out = oracle::Lin2::new();
    for (fs, c) in t.iter() {
        oracle::add(&mut out, (to_o(&fs[0], set), to_o(&fs[1], set)), c.clone());
    }
    oracle::clean(out)
}

fn forests_up_to(w: usize, set: &DecorationSet) -> Result<Vec<Forest>, String> {
    let mut out = Vec::new();
    for n in 0..=w {
        out.extend(lib(enumerate_forests_capped(n, set, CAP))?);
    }
    Ok(out)
}

fn trees_up_to(w: usize, set: &DecorationSet) -> Result<Vec<PlanarTree>, String> {
    let mut out = Vec::new();
    for n in 1..=w {
        out.extend(lib(enumerate_trees_capped(n, set, CAP))?);
    }
    Ok(out)
}

fn to_mat(m: &IntMatrix) -> oracle::Mat {
    m.to_rows().into_iter().map(|r| r.into_iter().map(Q::from_integer).collect()).collect()
}

// ---------------------------------------------------------------- golden data

const TAU: [u128; 24] = [
    1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012, 742900, 2674440, 9694845, 35357670, 129644790,
    477638700, 1767263190, 6564120420, 24466267020, 91482563640, 343059613650,
];

const A1: &[&[i64]] = &[&[1]];
const A2: &[&[i64]] = &[&[2, 1], &[1, 0]];
const A3: &[&[i64]] = &[&[6, 3, 3, 2, 1], &[3, 1, 1, 1, 0], &[3, 1, 1, 0, 0], &[2, 1, 0, 0, 0], &[1, 0, 0, 0, 0]];
const A4: &[&[i64]] = &[
    &[24, 12, 12, 8, 4, 12, 6, 8, 4, 6, 3, 3, 2, 1],
    &[12, 5, 5, 4, 1, 5, 2, 4, 1, 3, 1, 1, 1, 0],
    &[12, 5, 5, 3, 1, 5, 2, 3, 1, 3, 1, 1, 0, 0],
    &[8, 4, 3, 2, 1, 2, 1, 2, 0, 2, 1, 0, 0, 0],
    &[4, 1, 1, 1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0],
    &[12, 5, 5, 2, 1, 5, 2, 2, 1, 0, 0, 0, 0, 0],
    &[6, 2, 2, 1, 0, 2, 1, 1, 0, 0, 0, 0, 0, 0],
    &[8, 4, 3, 2, 1, 2, 1, 0, 0, 0, 0, 0, 0, 0],
    &[4, 1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    &[6, 3, 3, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    &[3, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    &[3, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    &[2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
];

const P1: &[&[i64]] = &[&[1]];
const P2: &[&[i64]] = &[&[0, 1], &[1, -2]];
const P3: &[&[i64]] = &[&[0, 0, 0, 0, 1], &[0, 0, 0, 1, -2], &[0, 0, 1, -1, -1], &[0, 1, -1, 0, 0], &[1, -2, -1, 0, 3]];
const P4: &[&[i64]] = &[
    &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, -2],
    &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, -1, -1],
    &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, -1, 0, 0],
    &[0, 0, 0, 0, 0, 0, 0, 0, 0, 1, -2, -1, 0, 3],
    &[0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0, -1],
    &[0, 0, 0, 0, 0, 0, 0, 1, -2, -1, 0, 1, -1, 2],
    &[0, 0, 0, 0, 0, 0, 1, -1, 0, 1, -1, -1, 1, 0],
    &[0, 0, 0, 0, 0, 1, -2, 0, -1, -1, 2, 1, 0, 1],
    &[0, 0, 0, 0, 1, 0, -1, 1, -1, -1, 0, 2, -1, 0],
    &[0, 0, 0, 1, -2, 0, 0, -1, 2, 0, 2, -2, 0, 0],
    &[0, 0, 1, -1, -1, -1, 2, -1, 1, 2, -2, -2, 2, 0],
    &[0, 1, -1, 0, 0, 0, -1, 1, 0, -1, 0, 2, -1, 0],
    &[1, -2, -1, 0, 3, -1, 2, 0, 1, 0, 0, 0, 0, -4],
];

/// Left-admissible coproduct of the weight-7 tree, term for term.
const FR_TREE: &str = "*[* *[*[* *]] *]";
const FR_TERMS: [(&str, &str); 7] = [
    (FR_TREE, "1"),
    ("1", FR_TREE),
    ("*[*[* *]]", "*[* *]"),
    ("*", "*[* *[*[* *]]]"),
    ("*", "*[* *[*[*]] *]"),
    ("*[*[* *]] *", "*[*]"),
    ("* *", "*[* *[*[*]]]"),
];

/// Averaged graftings: left operand, right operand, coefficient of each
/// displayed result, displayed results as planar lifts.
const GRAFT_VALUES: [(&str, &str, (i64, i64), [&str; 3]); 3] = [
    ("*[*]", "*[* *]", (1, 3), ["*[*[*[*]] *]", "*[* *[*[*]]]", "*[*[*] * *]"]),
    ("* *", "*[*[*]]", (1, 3), ["*[* * *[*]]", "*[*[* * *]]", "*[*[*[* *]]]"]),
    ("*[*]", "* *", (1, 2), ["*[*[*]] *", "* *[*[*]]", ""]),
];

// ---------------------------------------------------------------- criteria

fn catalan_table() -> Outcome {
    let series = tau_series(24);
    for (i, &want) in TAU.iter().enumerate() {
        let k = i + 1;
        ensure!(tau(k as u32) == want, "tau({k}) = {} != {want}", tau(k as u32));
        ensure!(oracle::tau(k) == want, "oracle tau({k}) disagrees with the table");
        ensure!(series.coeff(k) == Q::from_integer(want.into()), "series coefficient {k}");
    }
    Ok(())
}

fn appendix_matrices() -> Outcome {
    let set = one();
    for (n, (a, p)) in [(A1, P1), (A2, P2), (A3, P3), (A4, P4)].into_iter().enumerate() {
        let n = n + 1;
        let g = lib(gram_matrix(n, &set, CAP))?;
        ensure!(g.basis.windows(2).all(|w| w[0] < w[1]), "n={n}: basis not ascending");
        let (a, mut p) = (oracle::mat_i64(a), oracle::mat_i64(p));
        if n == 4 {
            // Entry (7, 12) of the table reads 1; only 2 makes P'_4 symmetric
            // and inverse to A'_4.
            ensure!(oracle::mat_mul(&a, &p) != oracle::identity(14), "table entry (7, 12) unexpectedly consistent");
            p[6][11] = oracle::q(2);
        }
        ensure!(to_mat(&g.matrix) == a, "n={n}: Gram matrix differs from the table");
        let basis: Vec<OForest> = g.basis.iter().map(|f| to_o(f, &set)).collect();
        for (i, f) in basis.iter().enumerate() {
            for (j, h) in basis.iter().enumerate() {
                ensure!(oracle::q(oracle::pairing(f, h) as i64) == a[i][j], "n={n}: oracle pairing at ({i},{j})");
            }
        }
        let inv = lib(g.matrix.inverse_unimodular())?;
        ensure!(to_mat(&inv) == p, "n={n}: inverse differs from the table");
        ensure!(oracle::mat_mul(&a, &p) == oracle::identity(a.len()), "n={n}: table product is not the identity");
    }
    Ok(())
}

fn unimodularity() -> Outcome {
    let set = one();
    for n in 1..=6 {
        let g = lib(gram_matrix(n, &set, CAP))?;
        ensure!(g.basis.len() as u128 == oracle::catalan(n), "n={n}: basis size");
        let a = to_mat(&g.matrix);
        ensure!(oracle::is_unit(&oracle::det(&a)), "n={n}: det is not ±1");
        let p = to_mat(&lib(g.matrix.inverse_unimodular())?);
        ensure!(oracle::is_integral(&p), "n={n}: inverse not integral");
        ensure!(oracle::mat_mul(&a, &p) == oracle::identity(a.len()), "n={n}: A·P != I");
    }
    Ok(())
}

fn pairing_equivalence() -> Outcome {
    for set in [one(), two()] {
        let mut p = Pairing::new();
        for n in 0..=4 {
            let basis = lib(enumerate_forests_capped(n, &set, CAP))?;
            let ob: Vec<OForest> = basis.iter().map(|f| to_o(f, &set)).collect();
            for (f, of) in basis.iter().zip(&ob) {
                for (g, og) in basis.iter().zip(&ob) {
                    let v = p.forests(f, g);
                    ensure!(v == lib(pair_combinatorial(f, g))?, "({}, {}): recursion != bijections", set.render(f), set.render(g));
                    ensure!(v == BigInt::from(oracle::pairing(of, og)), "({}, {}): oracle", set.render(f), set.render(g));
                }
            }
        }
    }
    Ok(())
}

fn antipode_equivalence() -> Outcome {
    for (set, w) in [(one(), 5), (two(), 4)] {
        let mut rec = RecursiveAntipode::new();
        let mut os = oracle::Antipode::default();
        for f in forests_up_to(w, &set)? {
            let r = lib(rec.forest(&f))?;
            ensure!(r == lib(antipode_cuts(&f))?, "{}: cut formula != recursion", set.render(&f));
            let of = to_o(&f, &set);
            ensure!(lin_of(&r, &set) == os.forest(&of), "{}: oracle antipode", set.render(&f));
            let mut conv = Element::zero();
            for ((pf, rf), c) in oracle::coproduct(&of, false) {
                let s = lib(rec.forest(&to_lib(&pf, &set)))?;
                conv.add_scaled(&(&s * &Element::forest(to_lib(&rf, &set))), &c);
            }
            let eps = if f.is_unit() { Element::one() } else { Element::zero() };
            ensure!(conv == eps, "{}: m(S⊗Id)Δ != ηε", set.render(&f));
        }
    }
    Ok(())
}

fn coalgebra_axioms() -> Outcome {
    for (set, w) in [(one(), 5), (two(), 4)] {
        let all = forests_up_to(w, &set)?;
        for f in &all {
            let d = lib(coproduct_forest(f))?;
            ensure!(lin2_of(&d, &set) == oracle::coproduct(&to_o(f, &set), false), "{}: Δ != oracle cuts", set.render(f));
            let left = d.map_factor(0, 2, |a| coproduct_forest(a).expect("bounded"));
            let right = d.map_factor(1, 2, |b| coproduct_forest(b).expect("bounded"));
            ensure!(left == right, "{}: coassociativity", set.render(f));
            let x = Element::forest(f.clone());
            ensure!(d.counit_factor(0).to_lincomb() == x && d.counit_factor(1).to_lincomb() == x, "{}: counit", set.render(f));
            for dec in set.decorations() {
                ensure!(lib(cocycle_defect(f, dec))?.is_zero(), "{}: cocycle", set.render(f));
            }
            for g in all.iter().filter(|g| f.weight() + g.weight() <= w) {
                let lhs = lib(coproduct_forest(&f.concat(g)))?;
                ensure!(lhs == lib(lib(coproduct_forest(f))?.mul(&lib(coproduct_forest(g))?))?, "{}·{}: multiplicativity", set.render(f), set.render(g));
            }
        }
    }
    Ok(())
}

fn outer(x: &oracle::Lin, y: &oracle::Lin) -> oracle::Lin2 {
    let mut out = oracle::Lin2::new();
    for (f, a) in x {
        for (g, b) in y {
            oracle::add(&mut out, (f.clone(), g.clone()), a * b);
        }
    }
    oracle::clean(out)
}

fn dual_basis_laws() -> Outcome {
    for (set, w) in [(one(), 4), (two(), 3)] {
        let mut db = DualBasis::new(&set, CAP);
        for n in 0..=w {
            let basis = lib(enumerate_forests_capped(n, &set, CAP))?;
            for f in &basis {
                let e = lib(db.e(f))?;
                let oe = lin_of(&e, &set);
                for g in &basis {
                    let want = if f == g { Q::one() } else { Q::zero() };
                    ensure!(oracle::pair_lin(&oe, &to_o(g, &set)) == want, "(e_{}, {})", set.render(f), set.render(g));
                }
                let mut split = oracle::Lin2::new();
                for i in 0..=f.len() {
                    let l = lin_of(&lib(db.e(&f.slice(0..i)))?, &set);
                    let r = lin_of(&lib(db.e(&f.slice(i..f.len())))?, &set);
                    for (k, c) in outer(&l, &r) {
                        oracle::add(&mut split, k, c);
                    }
                }
                let de = oracle::coproduct_lin(&oe, false);
                ensure!(de == oracle::clean(split), "Δ(e_{}) is not the deconcatenation", set.render(f));
                if f.len() == 1 {
                    ensure!(oracle::reduced(&de).is_empty(), "e_{} is not primitive", set.render(f));
                }
                if n < w {
                    for d in tokens(&set) {
                        let grafted: oracle::Lin = oe.iter().map(|(g, c)| (vec![OTree { d: d.clone(), ch: g.clone() }], c.clone())).collect();
                        let mut fd = to_o(f, &set);
                        fd.push(oracle::leaf(&d));
                        ensure!(grafted == lin_of(&lib(db.e(&to_lib(&fd, &set)))?, &set), "B+(e_{})", set.render(f));
                    }
                }
            }
        }
    }
    Ok(())
}

fn bracket_equivalence() -> Outcome {
    for (set, w) in [(one(), 6), (two(), 4)] {
        let trees = trees_up_to(w, &set)?;
        let cat = catalog(w, &set);
        for a in &trees {
            for b in trees.iter().filter(|b| a.weight() + b.weight() <= w) {
                let cuts = lib(bracket_cuts(a, b, &set, CAP))?;
                ensure!(cuts == lib(bracket_graft(a, b, CAP))?, "[{}, {}]: cuts != grafts", set.render_tree(a), set.render_tree(b));
                let (oa, ob) = (to_o(&a.to_forest(), &set), to_o(&b.to_forest(), &set));
                for h in &cat.trees[a.weight() + b.weight()] {
                    let count = |p: &OForest, r: &OForest| {
                        oracle::forest_cuts(std::slice::from_ref(h), false).iter().filter(|(x, y)| x == p && y == r).count() as i64
                    };
                    let want = count(&oa, &ob) - count(&ob, &oa);
                    let got = cuts.0.coeff(&to_lib(std::slice::from_ref(h), &set));
                    ensure!(got == oracle::q(want), "[{}, {}] at {}", set.render_tree(a), set.render_tree(b), oracle::render_tree(h));
                }
            }
        }
        let e = |t: &PlanarTree| DualElement::basis(t.to_forest());
        let jw = w.min(5);
        for a in trees.iter().filter(|t| t.weight() <= jw) {
            for b in trees.iter().filter(|t| a.weight() + t.weight() < jw) {
                for c in trees.iter().filter(|t| a.weight() + b.weight() + t.weight() <= jw) {
                    let mut sum = lib(bracket(&lib(bracket(&e(a), &e(b), CAP))?, &e(c), CAP))?.0;
                    sum += &lib(bracket(&lib(bracket(&e(b), &e(c), CAP))?, &e(a), CAP))?.0;
                    sum += &lib(bracket(&lib(bracket(&e(c), &e(a), CAP))?, &e(b), CAP))?.0;
                    ensure!(sum.is_zero(), "Jacobi at {}, {}, {}", set.render_tree(a), set.render_tree(b), set.render_tree(c));
                }
            }
        }
    }
    Ok(())
}

fn counting_identities() -> Outcome {
    let set = one();
    let w = 6;
    let cat = catalog(w, &set);
    let mut forest_adm: BTreeMap<(OForest, OForest), u128> = BTreeMap::new();
    let mut forest_left = forest_adm.clone();
    let mut tree_adm = forest_adm.clone();
    let mut tree_left = forest_adm.clone();
    for h in cat.forests_up_to(w) {
        for (left, table, trees) in [(false, &mut forest_adm, &mut tree_adm), (true, &mut forest_left, &mut tree_left)] {
            for (p, r) in oracle::forest_cuts(h, left) {
                if h.len() == 1 {
                    *trees.entry((p.clone(), r.clone())).or_insert(0) += 1;
                }
                *table.entry((p, r)).or_insert(0) += 1;
            }
        }
    }
    let get = |t: &BTreeMap<(OForest, OForest), u128>, p: &OForest, r: &OForest| t.get(&(p.clone(), r.clone())).copied().unwrap_or(0);
    let all = forests_up_to(w, &set)?;
    for f in all.iter().filter(|f| !f.is_unit()) {
        let (m, of) = (f.len() as i64, to_o(f, &set));
        for g in all.iter().filter(|g| f.weight() + g.weight() <= w) {
            let (n, og) = (g.weight() as i64, to_o(g, &set));
            let closed = (oracle::binom(2 * n + m, m), oracle::binom(n + m, m));
            ensure!(lib(forest_counting_sums(f, g, &set, CAP))? == closed, "forest trunk: {} / {}", set.render(f), set.render(g));
            ensure!((get(&forest_adm, &of, &og), get(&forest_left, &of, &og)) == closed, "oracle forest trunk: {} / {}", set.render(f), set.render(g));
            if let Some(t) = g.as_tree() {
                let closed = (oracle::binom(2 * n + m - 2, m), oracle::binom(n + m - 2, m));
                ensure!(lib(counting_sums(f, t, &set, CAP))? == closed, "tree trunk: {} / {}", set.render(f), set.render(g));
                ensure!((get(&tree_adm, &of, &og), get(&tree_left, &of, &og)) == closed, "oracle tree trunk: {} / {}", set.render(f), set.render(g));
            }
        }
    }
    Ok(())
}

fn left_coproduct() -> Outcome {
    let set = one();
    for f in forests_up_to(5, &set)? {
        let cuts = lib(coproduct_fr_cuts(&f, CAP))?;
        ensure!(cuts == coproduct_fr_recursive(&Element::forest(f.clone())), "{}: cuts != recursion", set.render(&f));
        ensure!(lin2_of(&cuts, &set) == oracle::coproduct(&to_o(&f, &set), true), "{}: oracle", set.render(&f));
    }
    let big = lib(set.parse_forest(FR_TREE))?;
    let mut want = oracle::Lin2::new();
    for (p, r) in FR_TERMS {
        oracle::add(&mut want, (oracle::parse(p), oracle::parse(r)), Q::one());
    }
    ensure!(lin2_of(&lib(coproduct_fr_cuts(&big, CAP))?, &set) == want, "weight-7 example differs");
    ensure!(oracle::coproduct(&oracle::parse(FR_TREE), true) == want, "oracle weight-7 example differs");
    for n in 0..=6 {
        let binary = lib(BinaryTree::enumerate(n, CAP))?;
        ensure!(binary.len() as u128 == oracle::catalan(n), "n={n}: binary tree count");
        for b in &binary {
            ensure!(forest_to_binary(&binary_to_forest(b)) == *b, "f∘g != Id at {b}");
        }
        for f in lib(enumerate_forests_capped(n, &set, CAP))? {
            ensure!(binary_to_forest(&forest_to_binary(&f)) == f, "g∘f != Id at {}", set.render(&f));
        }
    }
    Ok(())
}

fn closed_form(family: Family, left: bool, n: usize, cat: &oracle::Catalog) -> oracle::Lin2 {
    let mut out = oracle::Lin2::new();
    for k in 1..n {
        let j = (n - k) as i64;
        let rights: Vec<OForest> = match family {
            Family::U => cat.forests[n - k].clone(),
            Family::V => cat.trees[n - k].iter().map(|t| vec![t.clone()]).collect(),
        };
        for f in &cat.forests[k] {
            let l = f.len() as i64;
            let top = match (family, left) {
                (Family::V, false) => 2 * j + l - 2,
                (Family::V, true) => j + l - 2,
                (Family::U, false) => 2 * j + l,
                (Family::U, true) => j + l,
            };
            let c = oracle::binom(top, l);
            for g in &rights {
                oracle::add(&mut out, (f.clone(), g.clone()), Q::from_integer(c.into()));
            }
        }
    }
    oracle::clean(out)
}

fn cm_formulas() -> Outcome {
    let cat = catalog(6, &one());
    for n in 1..=6 {
        for family in [Family::U, Family::V] {
            let members: Vec<OForest> = match family {
                Family::U => cat.forests[n].clone(),
                Family::V => cat.trees[n].iter().map(|t| vec![t.clone()]).collect(),
            };
            let sum: oracle::Lin = members.into_iter().map(|f| (f, Q::one())).collect();
            for (left, which) in [(false, Coproduct::Standard), (true, Coproduct::Frabetti)] {
                ensure!(lib(cm::formula_holds(family, which, n, CAP))?, "{family:?} {which:?} n={n}");
                let brute = oracle::reduced(&oracle::coproduct_lin(&sum, left));
                ensure!(brute == closed_form(family, left, n, &cat), "oracle {family:?} {which:?} n={n}");
            }
        }
    }
    for c in lib(cm::phi_check(5, CAP))? {
        ensure!(c.inverse_symbolic && c.inverse_evaluated && c.morphism, "change of variables at n={}", c.n);
    }
    for n in 1..=5 {
        ensure!(oracle::substitute(&oracle::w(n), &oracle::z) == oracle::poly_letter(n), "Φ(w_{n}) != u_{n}");
        let lhs = oracle::coproduct_lin(&oracle::evaluate(&oracle::z(n), &cat), false);
        let unit = oracle::Poly::from([(Vec::new(), Q::one())]);
        let phi_z = oracle::evaluate(&oracle::z(n), &cat);
        let mut rhs = outer(&phi_z, &oracle::evaluate(&unit, &cat));
        for (k, c) in outer(&oracle::evaluate(&unit, &cat), &phi_z) {
            oracle::add(&mut rhs, k, c);
        }
        for k in 1..n {
            let right = oracle::evaluate(&oracle::z(n - k), &cat);
            for comp in oracle::compositions(k) {
                let l = comp.len() as i64;
                let c = oracle::binom((n - k) as i64 + l, l);
                let mut word = unit.clone();
                for &a in &comp {
                    word = oracle::poly_mul(&word, &oracle::v_in_u(a));
                }
                let left = oracle::evaluate(&oracle::substitute(&word, &oracle::z), &cat);
                for (key, v) in outer(&left, &right) {
                    oracle::add(&mut rhs, key, v * Q::from_integer(c.into()));
                }
            }
        }
        ensure!(lhs == oracle::clean(rhs), "Δ∘Φ(u_{n}) != (Φ⊗Φ)∘Δ_Fr(u_{n})");
    }
    Ok(())
}

fn names(w: &shuffle::Word) -> Vec<String> {
    w.0.iter().map(|g| g.name.clone()).collect()
}

fn word_map(x: &shuffle::WordElement) -> BTreeMap<Vec<String>, Q> {
    oracle::clean(x.iter().map(|(w, c)| (names(w), c.clone())).collect())
}

fn shuffle_algebra() -> Outcome {
    let gens = vec![lib(Generator::new("x", 1))?, lib(Generator::new("y", 1))?, lib(Generator::new("z", 2))?];
    let words = shuffle::words_up_to(&gens, 4);
    ensure!(words.len() == 1 + 3 + 9 + 27 + 81, "word count {}", words.len());
    let unit = shuffle::Word::empty();
    for a in &words {
        let d = shuffle::deconcat(a);
        ensure!(d.map_factor(0, 2, shuffle::deconcat) == d.map_factor(1, 2, shuffle::deconcat), "coassociativity at {a}");
        let s = shuffle::antipode_star(a);
        let (rev, sign) = oracle::shuffle_antipode(&names(a));
        ensure!(word_map(&s) == BTreeMap::from([(rev, oracle::q(sign))]), "S_* at {a} is not the signed reversal");
        ensure!(shuffle::antipode_shuffle_generic(a) == s, "generic antipode at {a}");
        let mut left = LinComb::zero();
        let mut right = LinComb::zero();
        for (f, c) in d.iter() {
            left.add_scaled(&shuffle::shuffle_elements(&shuffle::antipode_star(&f[0]), &LinComb::basis(f[1].clone())), c);
            right.add_scaled(&shuffle::shuffle_elements(&LinComb::basis(f[0].clone()), &shuffle::antipode_star(&f[1])), c);
        }
        let eps = if a.is_empty() { LinComb::basis(unit.clone()) } else { LinComb::zero() };
        ensure!(left == eps && right == eps, "antipode convolution at {a}");
        for b in words.iter().filter(|b| a.len() + b.len() <= 4) {
            let ab = shuffle::shuffle(a, b);
            let want: BTreeMap<Vec<String>, Q> =
                oracle::shuffle(&names(a), &names(b)).into_iter().map(|(w, c)| (w, oracle::q(c))).collect();
            ensure!(word_map(&ab) == want, "{a} ш {b} differs from the oracle");
            ensure!(ab == shuffle::shuffle(b, a), "commutativity at {a}, {b}");
            let lhs = shuffle::deconcat_element(&ab);
            ensure!(lhs == shuffle::shuffle_tensors(&shuffle::deconcat(a), &shuffle::deconcat(b)), "compatibility at {a}, {b}");
        }
    }
    let set = one();
    let mut db = DualBasis::new(&set, CAP);
    let mut rec = RecursiveAntipode::new();
    let mut os = oracle::Antipode::default();
    for f in forests_up_to(4, &set)? {
        let mut blocks = |ts: &[PlanarTree]| db.e(&Forest::from_trees(ts.to_vec())).expect("bounded");
        let generic = shuffle::antipode_generic(f.trees(), Element::one(), &mut blocks, |a, b| a * b);
        let e = lib(db.e(&f))?;
        ensure!(generic == lib(rec.apply(&e))?, "generic antipode on e_{}", set.render(&f));
        let mut want = oracle::Lin::new();
        for (g, c) in lin_of(&e, &set) {
            for (h, v) in os.forest(&g) {
                oracle::add(&mut want, h, v * &c);
            }
        }
        ensure!(lin_of(&generic, &set) == oracle::clean(want), "oracle antipode on e_{}", set.render(&f));
    }
    Ok(())
}

fn rkey(f: &RForest, set: &DecorationSet) -> String {
    oracle::canon(&to_o(&f.lift(), set))
}

fn nonplanar_checks() -> Outcome {
    for (set, w) in [(one(), 5), (two(), 4)] {
        let mut sr = AntipodeR::new();
        let mut os = oracle::Antipode::default();
        let mut classes: BTreeMap<String, RForest> = BTreeMap::new();
        for f in forests_up_to(w, &set)? {
            let of = to_o(&f, &set);
            let key = oracle::canon(&of);
            let proj = nonplanar::project(&f);
            ensure!(rkey(&proj, &set) == key, "{}: projection shape", set.render(&f));
            if let Some(prev) = classes.insert(key, proj.clone()) {
                ensure!(prev == proj, "{}: projection not constant on a shape", set.render(&f));
            }
            let d = lib(nonplanar::coproduct_r(&proj))?;
            ensure!(nonplanar::project_tensor(&lib(coproduct_forest(&f))?) == d, "{}: ϖ⊗ϖ∘Δ != Δ∘ϖ", set.render(&f));
            let mut got = BTreeMap::new();
            for (fs, c) in d.iter() {
                oracle::add(&mut got, (rkey(&fs[0], &set), rkey(&fs[1], &set)), c.clone());
            }
            let mut want = BTreeMap::new();
            for ((p, r), c) in oracle::coproduct(&of, false) {
                oracle::add(&mut want, (oracle::canon(&p), oracle::canon(&r)), c);
            }
            ensure!(oracle::clean(got) == oracle::clean(want), "{}: oracle quotient coproduct", set.render(&f));
            let mut s_got = BTreeMap::new();
            for (g, c) in lib(sr.forest(&proj))?.iter() {
                oracle::add(&mut s_got, rkey(g, &set), c.clone());
            }
            let mut s_want = BTreeMap::new();
            for (g, c) in os.forest(&of) {
                oracle::add(&mut s_want, oracle::canon(&g), c);
            }
            ensure!(oracle::clean(s_got) == oracle::clean(s_want), "{}: ϖ∘S != S∘ϖ", set.render(&f));
        }
    }

    let set = one();
    for (x, y, (num, den), shown) in GRAFT_VALUES {
        let coeff = Q::new(num.into(), den.into());
        let mut want = BTreeMap::new();
        for t in shown.iter().filter(|t| !t.is_empty()) {
            oracle::add(&mut want, oracle::canon(&oracle::parse(t)), coeff.clone());
        }
        let want = oracle::clean(want);
        let got = nonplanar::graft_average(&lib(RForest::parse(x, &set))?, &lib(RForest::parse(y, &set))?);
        let got: BTreeMap<String, Q> = got.iter().map(|(f, c)| (rkey(f, &set), c.clone())).collect();
        ensure!(got == want, "{x} ⊤̄ {y}: library value");
        ensure!(oracle::graft_average(&oracle::parse(x), &oracle::parse(y)) == want, "{x} ⊤̄ {y}: oracle value");
    }

    let w = 5;
    let cat = catalog(w, &set);
    let mut reps: BTreeMap<String, OTree> = BTreeMap::new();
    for n in 1..=w {
        for t in &cat.trees[n] {
            reps.entry(oracle::canon_tree(t)).or_insert_with(|| t.clone());
        }
    }
    let mut rtrees = Vec::new();
    for n in 1..w {
        rtrees.extend(lib(nonplanar::enumerate_rtrees(n, &set, CAP))?);
    }
    for a in &rtrees {
        for b in rtrees.iter().filter(|b| a.weight() + b.weight() <= w) {
            ensure!(lib(nonplanar::bracket_consistent(a, b, &set, CAP))?, "bracket consistency");
            let (ka, kb) = (rkey(&a.to_forest(), &set), rkey(&b.to_forest(), &set));
            let got: BTreeMap<String, i128> =
                lib(nonplanar::bracket_r(a, b, &set, CAP))?.iter().map(|(t, c)| (rkey(&t.to_forest(), &set), *c)).collect();
            let mut want = BTreeMap::new();
            for (key, t) in reps.iter().filter(|(_, t)| oracle::tree_weight(t) == a.weight() + b.weight()) {
                let c = oracle::edge_cut_count(t, &ka, &kb) - oracle::edge_cut_count(t, &kb, &ka);
                if c != 0 {
                    want.insert(key.clone(), i128::from(c));
                }
            }
            ensure!(got == want, "bracket of {ka} and {kb} differs from the oracle");
        }
    }
    Ok(())
}

fn dimensions() -> Outcome {
    for set in [one(), two()] {
        let d = set.len() as u128;
        let cat = catalog(7, &set);
        for n in 1..=7usize {
            let dn = d.pow(n as u32);
            let trees = lib(enumerate_trees_capped(n, &set, CAP))?.len() as u128;
            let forests = lib(enumerate_forests_capped(n, &set, CAP))?.len() as u128;
            ensure!(trees == dn * oracle::tau(n) && cat.trees[n].len() as u128 == trees, "D={d} n={n}: trees");
            ensure!(forests == dn * oracle::catalan(n) && cat.forests[n].len() as u128 == forests, "D={d} n={n}: forests");
            ensure!(tau(n as u32) == oracle::tau(n) && catalan(n as u32) == oracle::catalan(n), "n={n}: library counting functions");
        }
        for n in 1..=4usize {
            let want = (d.pow(n as u32) * oracle::tau(n)) as usize;
            let pr = lib(primitive_rank(n, &set, CAP))?;
            ensure!(pr.kernel == want && pr.dual_trees == want && pr.dual_trees_primitive, "D={d} n={n}: library primitive rank");
            let basis = &cat.forests[n];
            let mut keys: BTreeMap<(OForest, OForest), usize> = BTreeMap::new();
            let columns: Vec<oracle::Lin2> = basis.iter().map(|f| oracle::reduced(&oracle::coproduct(f, false))).collect();
            for col in &columns {
                for k in col.keys() {
                    let next = keys.len();
                    keys.entry(k.clone()).or_insert(next);
                }
            }
            let mut m = vec![vec![Q::zero(); basis.len()]; keys.len()];
            for (j, col) in columns.iter().enumerate() {
                for (k, c) in col {
                    m[keys[k]][j] = c.clone();
                }
            }
            ensure!(basis.len() - oracle::rank(m) == want, "D={d} n={n}: oracle null space");
        }
    }
    Ok(())
}

fn oracle_deg(f: &OForest) -> usize {
    let mut current: BTreeMap<Vec<OForest>, Q> = BTreeMap::from([(vec![f.clone()], Q::one())]);
    let mut k = 0;
    loop {
        k += 1;
        let mut next = BTreeMap::new();
        for (word, c) in &current {
            let last = word.last().expect("nonempty");
            for ((p, r), v) in oracle::reduced(&oracle::coproduct(last, false)) {
                let mut w = word[..word.len() - 1].to_vec();
                w.push(p);
                w.push(r);
                oracle::add(&mut next, w, v * c);
            }
        }
        current = oracle::clean(next);
        if current.is_empty() {
            return k;
        }
    }
}

fn deg_additivity() -> Outcome {
    let set = one();
    let all: Vec<Forest> = forests_up_to(3, &set)?.into_iter().filter(|f| !f.is_unit()).collect();
    let deg = |f: &Forest| lib(deg_p(&Element::forest(f.clone())));
    for f in &all {
        ensure!(deg(f)? == oracle_deg(&to_o(f, &set)), "{}: deg_p differs from the oracle", set.render(f));
        for g in &all {
            let fg = f.concat(g);
            ensure!(deg(&fg)? == deg(f)? + deg(g)?, "{} · {}", set.render(f), set.render(g));
            ensure!(oracle_deg(&to_o(&fg, &set)) == deg(&fg)?, "{}: oracle", set.render(&fg));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- driver

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Option<Duration>,
    body: fn() -> Outcome,
}

const fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

const CRITERIA: [Criterion; 15] = [
    Criterion { id: 1, name: "Catalan table tau(1..24)", limit: secs(1), body: catalan_table },
    Criterion { id: 2, name: "Gram matrices and inverses, n = 1..4", limit: secs(5), body: appendix_matrices },
    Criterion { id: 3, name: "unimodular Gram matrices, n <= 6", limit: secs(60), body: unimodularity },
    Criterion { id: 4, name: "pairing = bijection count, weight <= 4, D = 1, 2", limit: secs(60), body: pairing_equivalence },
    Criterion { id: 5, name: "antipode formulas and convolution inverse, weight <= 5", limit: secs(60), body: antipode_equivalence },
    Criterion { id: 6, name: "coalgebra axioms and grafting cocycle, weight <= 5", limit: None, body: coalgebra_axioms },
    Criterion { id: 7, name: "dual basis laws, weight <= 4", limit: None, body: dual_basis_laws },
    Criterion { id: 8, name: "bracket by cuts = by grafts, Jacobi", limit: None, body: bracket_equivalence },
    Criterion { id: 9, name: "cut counting identities, weight <= 6", limit: None, body: counting_identities },
    Criterion { id: 10, name: "left-admissible coproduct and binary bijection", limit: None, body: left_coproduct },
    Criterion { id: 11, name: "closed forms for u_n, v_n and change of variables", limit: None, body: cm_formulas },
    Criterion { id: 12, name: "shuffle Hopf algebra and generic antipode", limit: None, body: shuffle_algebra },
    Criterion { id: 13, name: "non-planar quotient, averaged grafting, brackets", limit: None, body: nonplanar_checks },
    Criterion { id: 14, name: "dimensions and primitive rank", limit: None, body: dimensions },
    Criterion { id: 15, name: "deg_p additivity, weight <= 3", limit: None, body: deg_additivity },
];

fn main() -> ExitCode {
    let mut failed = 0;
    for c in &CRITERIA {
        let start = Instant::now();
        let outcome = (c.body)();
        let elapsed = start.elapsed();
        let slow = c.limit.is_some_and(|l| elapsed >= l);
        let pass = outcome.is_ok() && !slow;
        let limit = c.limit.map_or(String::new(), |l| format!(", limit {}s", l.as_secs()));
        let mut line =
            format!("{}  {:>2}  {:<55} tolerance exact  {:.3}s{limit}", if pass { "PASS" } else { "FAIL" }, c.id, c.name, elapsed.as_secs_f64());
        if let Err(why) = &outcome {
            line.push_str(&format!("  ({why})"));
        } else if slow {
            line.push_str("  (over time limit)");
        }
        println!("{line}");
        if !pass {
            failed += 1;
        }
    }
    println!("{} criteria, {failed} failed", CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
