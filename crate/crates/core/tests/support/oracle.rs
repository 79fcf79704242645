//! Independent reference implementations, written from the definitions and
//! sharing no code with the library beyond the text format of forests.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct OTree {
    pub d: String,
    pub ch: Vec<OTree>,
}

pub type OForest = Vec<OTree>;
pub type Lin = BTreeMap<OForest, Q>;
pub type Lin2 = BTreeMap<(OForest, OForest), Q>;

pub fn add<K: Ord>(map: &mut BTreeMap<K, Q>, k: K, c: Q) {
    let e = map.entry(k).or_insert_with(Q::zero);
    *e += c;
}

pub fn clean<K: Ord>(mut map: BTreeMap<K, Q>) -> BTreeMap<K, Q> {
    map.retain(|_, c| !c.is_zero());
    map
}

// ---------------------------------------------------------------- text

pub fn parse(text: &str) -> OForest {
    let text = text.trim();
    if text == "1" || text.is_empty() {
        return Vec::new();
    }
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0;
    let f = parse_seq(&chars, &mut pos);
    assert_eq!(pos, chars.len(), "trailing input in {text:?}");
    f
}

fn parse_seq(c: &[char], pos: &mut usize) -> OForest {
    let mut out = Vec::new();
    loop {
        while *pos < c.len() && c[*pos] == ' ' {
            *pos += 1;
        }
        if *pos >= c.len() || c[*pos] == ']' {
            return out;
        }
        let start = *pos;
        while *pos < c.len() && !matches!(c[*pos], ' ' | '[' | ']') {
            *pos += 1;
        }
        let d: String = c[start..*pos].iter().collect();
        let mut ch = Vec::new();
        if *pos < c.len() && c[*pos] == '[' {
            *pos += 1;
            ch = parse_seq(c, pos);
            assert_eq!(c.get(*pos), Some(&']'));
            *pos += 1;
        }
        out.push(OTree { d, ch });
    }
}

pub fn render_tree(t: &OTree) -> String {
    if t.ch.is_empty() {
        t.d.clone()
    } else {
        format!("{}[{}]", t.d, render_seq(&t.ch))
    }
}

fn render_seq(f: &[OTree]) -> String {
    f.iter().map(render_tree).collect::<Vec<_>>().join(" ")
}

pub fn render(f: &[OTree]) -> String {
    if f.is_empty() {
        "1".into()
    } else {
        render_seq(f)
    }
}

pub fn tree_weight(t: &OTree) -> usize {
    1 + t.ch.iter().map(tree_weight).sum::<usize>()
}

pub fn weight(f: &[OTree]) -> usize {
    f.iter().map(tree_weight).sum()
}

pub fn leaf(d: &str) -> OTree {
    OTree { d: d.into(), ch: Vec::new() }
}

// ---------------------------------------------------------------- enumeration

/// Planar trees and forests by weight, over the given decoration tokens.
pub struct Catalog {
    pub trees: Vec<Vec<OTree>>,
    pub forests: Vec<Vec<OForest>>,
}

impl Catalog {
    pub fn new(max: usize, tokens: &[&str]) -> Self {
        let mut trees: Vec<Vec<OTree>> = vec![Vec::new()];
        let mut forests: Vec<Vec<OForest>> = vec![vec![Vec::new()]];
        for n in 1..=max {
            let mut ts = Vec::new();
            for d in tokens {
                for ch in &forests[n - 1] {
                    ts.push(OTree { d: d.to_string(), ch: ch.clone() });
                }
            }
            trees.push(ts);
            let mut fs = Vec::new();
            for k in 1..=n {
                for t in &trees[k] {
                    for rest in &forests[n - k] {
                        let mut f = vec![t.clone()];
                        f.extend(rest.iter().cloned());
                        fs.push(f);
                    }
                }
            }
            forests.push(fs);
        }
        Catalog { trees, forests }
    }

    pub fn forests_up_to(&self, n: usize) -> impl Iterator<Item = &OForest> {
        self.forests[..=n].iter().flatten()
    }
}

pub fn catalan(n: usize) -> u128 {
    let mut c = vec![1u128];
    for k in 1..=n {
        c.push((0..k).map(|i| c[i] * c[k - 1 - i]).sum());
    }
    c[n]
}

/// Planar trees of weight `k`: Catalan number of `k - 1`.
pub fn tau(k: usize) -> u128 {
    catalan(k - 1)
}

pub fn binom(n: i64, k: i64) -> u128 {
    if k < 0 || n < k {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k as u128 {
        r = r * (n as u128 - i) / (i + 1);
    }
    r
}

// ---------------------------------------------------------------- vertices

/// A forest flattened in preorder.
pub struct Flat {
    pub d: Vec<String>,
    pub parent: Vec<Option<usize>>,
    pub first_child: Vec<bool>,
    pub kids: Vec<Vec<usize>>,
}

impl Flat {
    pub fn of(f: &[OTree]) -> Flat {
        let mut fl = Flat { d: Vec::new(), parent: Vec::new(), first_child: Vec::new(), kids: Vec::new() };
        for t in f {
            fl.push(t, None, false);
        }
        fl
    }

    fn push(&mut self, t: &OTree, parent: Option<usize>, first: bool) -> usize {
        let me = self.d.len();
        self.d.push(t.d.clone());
        self.parent.push(parent);
        self.first_child.push(first);
        self.kids.push(Vec::new());
        for (i, c) in t.ch.iter().enumerate() {
            let k = self.push(c, Some(me), i == 0);
            self.kids[me].push(k);
        }
        me
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    /// `y` is `x` or one of its ancestors.
    pub fn above_or_equal(&self, x: usize, y: usize) -> bool {
        let mut cur = Some(x);
        while let Some(c) = cur {
            if c == y {
                return true;
            }
            cur = self.parent[c];
        }
        false
    }

    /// Left-to-right order: reflexive; distinct vertices compare only when
    /// neither lies above the other, and then the earlier one is larger.
    pub fn left_ge(&self, x: usize, y: usize) -> bool {
        x == y || (!self.above_or_equal(x, y) && !self.above_or_equal(y, x) && x < y)
    }

    pub fn build(&self, v: usize, removed: &[bool]) -> OTree {
        OTree {
            d: self.d[v].clone(),
            ch: self.kids[v].iter().filter(|&&c| !removed[c]).map(|&c| self.build(c, removed)).collect(),
        }
    }
}

// ---------------------------------------------------------------- cuts

/// `(pruned, trunk)` for every cut of a single tree, the total cut
/// included, optionally forbidding edges to first children.
pub fn tree_cuts(t: &OTree, left_only: bool) -> Vec<(OForest, OForest)> {
    let fl = Flat::of(std::slice::from_ref(t));
    let edges: Vec<usize> = (1..fl.len()).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << edges.len()) {
        let cut: Vec<usize> = edges.iter().copied().filter(|&e| mask >> (e - 1) & 1 == 1).collect();
        if left_only && cut.iter().any(|&e| fl.first_child[e]) {
            continue;
        }
        let nested = cut.iter().any(|&a| cut.iter().any(|&b| a != b && fl.above_or_equal(a, b)));
        if nested {
            continue;
        }
        let mut removed = vec![false; fl.len()];
        for &e in &cut {
            removed[e] = true;
        }
        let pruned = cut.iter().map(|&e| fl.build(e, &removed)).collect();
        out.push((pruned, vec![fl.build(0, &removed)]));
    }
    out.push((vec![t.clone()], Vec::new()));
    out
}

pub fn forest_cuts(f: &[OTree], left_only: bool) -> Vec<(OForest, OForest)> {
    let mut acc: Vec<(OForest, OForest)> = vec![(Vec::new(), Vec::new())];
    for t in f {
        let opts = tree_cuts(t, left_only);
        let mut next = Vec::new();
        for (p, r) in &acc {
            for (op, or) in &opts {
                let mut p2 = p.clone();
                p2.extend(op.iter().cloned());
                let mut r2 = r.clone();
                r2.extend(or.iter().cloned());
                next.push((p2, r2));
            }
        }
        acc = next;
    }
    acc
}

pub fn coproduct(f: &[OTree], left_only: bool) -> Lin2 {
    let mut out = Lin2::new();
    for (p, r) in forest_cuts(f, left_only) {
        add(&mut out, (p, r), Q::one());
    }
    out
}

pub fn coproduct_lin(x: &Lin, left_only: bool) -> Lin2 {
    let mut out = Lin2::new();
    for (f, c) in x {
        for (k, v) in coproduct(f, left_only) {
            add(&mut out, k, v * c);
        }
    }
    clean(out)
}

pub fn reduced(t: &Lin2) -> Lin2 {
    t.iter().filter(|((p, r), _)| !p.is_empty() && !r.is_empty()).map(|(k, v)| (k.clone(), v.clone())).collect()
}

pub fn mul(x: &Lin, y: &Lin) -> Lin {
    let mut out = Lin::new();
    for (f, a) in x {
        for (g, b) in y {
            let mut fg = f.clone();
            fg.extend(g.iter().cloned());
            add(&mut out, fg, a * b);
        }
    }
    clean(out)
}

pub fn basis(f: OForest) -> Lin {
    Lin::from([(f, Q::one())])
}

/// Recursive antipode from the reduced coproduct; reverses products.
#[derive(Default)]
pub struct Antipode {
    memo: HashMap<OTree, Lin>,
}

impl Antipode {
    pub fn tree(&mut self, t: &OTree) -> Lin {
        if let Some(s) = self.memo.get(t) {
            return s.clone();
        }
        let mut out = Lin::new();
        add(&mut out, vec![t.clone()], -Q::one());
        for ((p, r), c) in reduced(&coproduct(std::slice::from_ref(t), false)) {
            let sp = self.forest(&p);
            for (g, a) in mul(&sp, &basis(r)) {
                add(&mut out, g, -(a * &c));
            }
        }
        let out = clean(out);
        self.memo.insert(t.clone(), out.clone());
        out
    }

    pub fn forest(&mut self, f: &[OTree]) -> Lin {
        let mut out = basis(Vec::new());
        for t in f.iter().rev() {
            out = mul(&out, &self.tree(t));
        }
        out
    }
}

// ---------------------------------------------------------------- pairing

/// Number of decoration-preserving bijections `f` with
/// `x >=_haut y => f(x) >=_gauche f(y)` and
/// `f(x) >=_haut f(y) => x >=_gauche y`.
pub fn pairing(f: &[OTree], g: &[OTree]) -> u64 {
    let (a, b) = (Flat::of(f), Flat::of(g));
    if a.len() != b.len() {
        return 0;
    }
    let mut image = vec![usize::MAX; a.len()];
    let mut used = vec![false; b.len()];
    count(&a, &b, 0, &mut image, &mut used)
}

fn compatible(a: &Flat, b: &Flat, x: usize, y: usize, fx: usize, fy: usize) -> bool {
    (!a.above_or_equal(x, y) || b.left_ge(fx, fy)) && (!b.above_or_equal(fx, fy) || a.left_ge(x, y))
}

fn count(a: &Flat, b: &Flat, x: usize, image: &mut [usize], used: &mut [bool]) -> u64 {
    if x == a.len() {
        return 1;
    }
    let mut total = 0;
    for fx in 0..b.len() {
        if used[fx] || b.d[fx] != a.d[x] {
            continue;
        }
        let ok = (0..x).all(|y| compatible(a, b, x, y, fx, image[y]) && compatible(a, b, y, x, image[y], fx))
            && compatible(a, b, x, x, fx, fx);
        if ok {
            image[x] = fx;
            used[fx] = true;
            total += count(a, b, x + 1, image, used);
            used[fx] = false;
        }
    }
    total
}

pub fn pair_lin(x: &Lin, g: &[OTree]) -> Q {
    x.iter().map(|(f, c)| c * q(pairing(f, g) as i64)).fold(Q::zero(), |s, v| s + v)
}

// ---------------------------------------------------------------- matrices

pub type Mat = Vec<Vec<Q>>;

pub fn mat_i64(rows: &[&[i64]]) -> Mat {
    rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let (n, m, k) = (a.len(), b[0].len(), b.len());
    (0..n).map(|i| (0..m).map(|j| (0..k).fold(Q::zero(), |s, l| s + &a[i][l] * &b[l][j])).collect()).collect()
}

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect()
}

/// Gaussian elimination over the rationals.
pub fn det(m: &Mat) -> Q {
    let mut a = m.clone();
    let n = a.len();
    let mut d = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            a.swap(p, col);
            d = -d;
        }
        let pivot = a[col][col].clone();
        d *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pivot;
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
        }
    }
    d
}

pub fn rank(mut a: Mat) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                for j in c..cols {
                    let v = &f * &a[r][j];
                    a[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn is_integral(m: &Mat) -> bool {
    m.iter().flatten().all(|x| x.is_integer())
}

pub fn is_unit(x: &Q) -> bool {
    x.abs().is_one()
}

// ---------------------------------------------------------------- shuffle

pub type Word = Vec<String>;

pub fn shuffle(a: &[String], b: &[String]) -> BTreeMap<Word, i64> {
    let mut out = BTreeMap::new();
    if a.is_empty() || b.is_empty() {
        let w: Word = a.iter().chain(b).cloned().collect();
        out.insert(w, 1);
        return out;
    }
    for (rest, first) in [(shuffle(&a[1..], b), &a[0]), (shuffle(a, &b[1..]), &b[0])] {
        for (w, c) in rest {
            let mut full = vec![first.clone()];
            full.extend(w);
            *out.entry(full).or_insert(0) += c;
        }
    }
    out
}

/// `(-1)^n` times the reversed word.
pub fn shuffle_antipode(w: &[String]) -> (Word, i64) {
    let sign = if w.len() % 2 == 0 { 1 } else { -1 };
    (w.iter().rev().cloned().collect(), sign)
}

// ---------------------------------------------------------------- non-planar

pub fn canon_tree(t: &OTree) -> String {
    let mut kids: Vec<String> = t.ch.iter().map(canon_tree).collect();
    kids.sort();
    if kids.is_empty() {
        t.d.clone()
    } else {
        format!("{}[{}]", t.d, kids.join(" "))
    }
}

pub fn canon(f: &[OTree]) -> String {
    let mut ts: Vec<String> = f.iter().map(canon_tree).collect();
    ts.sort();
    if ts.is_empty() {
        "1".into()
    } else {
        ts.join(" ")
    }
}

/// Average over vertices `s` of `g` of grafting every tree of `f` onto `s`,
/// keyed by unordered shape.
pub fn graft_average(f: &[OTree], g: &[OTree]) -> BTreeMap<String, Q> {
    let n = weight(g);
    let mut out = BTreeMap::new();
    for s in 0..n {
        let mut next = 0;
        let grafted: OForest = g.iter().map(|t| graft_at(t, s, f, &mut next)).collect();
        add(&mut out, canon(&grafted), Q::new(BigInt::one(), BigInt::from(n)));
    }
    clean(out)
}

fn graft_at(t: &OTree, s: usize, f: &[OTree], next: &mut usize) -> OTree {
    let here = *next;
    *next += 1;
    let mut ch: Vec<OTree> = t.ch.iter().map(|c| graft_at(c, s, f, next)).collect();
    if here == s {
        ch.extend(f.iter().cloned());
    }
    OTree { d: t.d.clone(), ch }
}

/// Single-edge cuts of `t` with pruned shape `a` and trunk shape `b`.
pub fn edge_cut_count(t: &OTree, a: &str, b: &str) -> i64 {
    let fl = Flat::of(std::slice::from_ref(t));
    let mut n = 0;
    for e in 1..fl.len() {
        let mut removed = vec![false; fl.len()];
        removed[e] = true;
        let pruned = fl.build(e, &removed);
        let trunk = fl.build(0, &removed);
        if canon_tree(&pruned) == a && canon_tree(&trunk) == b {
            n += 1;
        }
    }
    n
}

// ---------------------------------------------------------------- words in u_n

/// Noncommutative polynomials in letters `u_1, u_2, ...`.
pub type Poly = BTreeMap<Vec<usize>, Q>;

pub fn poly_letter(n: usize) -> Poly {
    Poly::from([(vec![n], Q::one())])
}

pub fn poly_mul(x: &Poly, y: &Poly) -> Poly {
    let mut out = Poly::new();
    for (a, c) in x {
        for (b, d) in y {
            let mut w = a.clone();
            w.extend(b);
            add(&mut out, w, c * d);
        }
    }
    clean(out)
}

pub fn poly_add(x: &Poly, y: &Poly, scale: &Q) -> Poly {
    let mut out = x.clone();
    for (w, c) in y {
        add(&mut out, w.clone(), c * scale);
    }
    clean(out)
}

pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `z_n = 2 u_n + sum u_k u_{n-k}`.
pub fn z(n: usize) -> Poly {
    let mut out = poly_add(&Poly::new(), &poly_letter(n), &q(2));
    for k in 1..n {
        out = poly_add(&out, &poly_mul(&poly_letter(k), &poly_letter(n - k)), &Q::one());
    }
    out
}

/// `w_n = u_n / 2 - (1/2) sum w_i w_{n-i}`.
pub fn w(n: usize) -> Poly {
    let half = Q::new(BigInt::one(), BigInt::from(2));
    let mut out = poly_add(&Poly::new(), &poly_letter(n), &half);
    for i in 1..n {
        out = poly_add(&out, &poly_mul(&w(i), &w(n - i)), &-half.clone());
    }
    out
}

/// `v_n` in the `u` letters, from `U = 1/(1 - V)`.
pub fn v_in_u(n: usize) -> Poly {
    let mut out = Poly::new();
    for c in compositions(n) {
        let sign = if c.len() % 2 == 1 { 1 } else { -1 };
        add(&mut out, c, q(sign));
    }
    out
}

/// Substitutes `u_a ↦ image(a)` multiplicatively.
pub fn substitute(p: &Poly, image: &impl Fn(usize) -> Poly) -> Poly {
    let mut out = Poly::new();
    for (word, c) in p {
        let mut term = Poly::from([(Vec::new(), c.clone())]);
        for &a in word {
            term = poly_mul(&term, &image(a));
        }
        out = poly_add(&out, &term, &Q::one());
    }
    out
}

/// Evaluates a polynomial with `u_a` the sum of all forests of weight `a`.
pub fn evaluate(p: &Poly, cat: &Catalog) -> Lin {
    let mut out = Lin::new();
    for (word, c) in p {
        let mut term = Lin::from([(Vec::new(), c.clone())]);
        for &a in word {
            let ua: Lin = cat.forests[a].iter().map(|f| (f.clone(), Q::one())).collect();
            term = mul(&term, &ua);
        }
        for (f, v) in term {
            add(&mut out, f, v);
        }
    }
    clean(out)
}
