//! Planar decorated rooted trees and forests.
//!
//! A [`Forest`] is an ordered word of [`PlanarTree`]s; the empty word is the
//! unit `1`. Forests carry the total order used to index every basis in the
//! crate, and [`Vertices`] gives preorder access to their vertices.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{check_cap, Error, Result, DEFAULT_CAP};

/// A vertex label, stored as its rank in a [`DecorationSet`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Decoration(u16);

impl Decoration {
    /// The decoration of rank `rank` (0-based) in its set.
    pub const fn from_rank(rank: u16) -> Self {
        Decoration(rank)
    }

    /// Rank of the decoration inside its set.
    pub fn rank(self) -> usize {
        self.0 as usize
    }
}

/// The default decoration used by the undecorated algebra.
pub const STAR: Decoration = Decoration(0);

/// A finite, totally ordered set of decoration tokens.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecorationSet {
    tokens: Vec<String>,
}

fn is_token_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_' || b == b'*'
}

impl DecorationSet {
    /// Builds a set from tokens listed in increasing order.
    ///
    /// Tokens must match `[A-Za-z0-9_*]+`, be distinct, and differ from `1`,
    /// which denotes the empty forest.
    pub fn new<I, S>(tokens: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let tokens: Vec<String> = tokens.into_iter().map(Into::into).collect();
        if tokens.is_empty() {
            return Err(Error::InvalidDecorationSet("no tokens".into()));
        }
        if tokens.len() > u16::MAX as usize {
            return Err(Error::InvalidDecorationSet("too many tokens".into()));
        }
        for (i, t) in tokens.iter().enumerate() {
            if t.is_empty() || !t.bytes().all(is_token_byte) {
                return Err(Error::InvalidDecorationSet(format!("bad token `{t}`")));
            }
            if t == "1" {
                return Err(Error::InvalidDecorationSet("`1` is reserved for the empty forest".into()));
            }
            if tokens[..i].contains(t) {
                return Err(Error::InvalidDecorationSet(format!("duplicate token `{t}`")));
            }
        }
        Ok(DecorationSet { tokens })
    }

    /// The one-element set `{*}`.
    pub fn undecorated() -> Self {
        DecorationSet { tokens: vec!["*".to_string()] }
    }

    /// Number of decorations.
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    /// Always false: a decoration set has at least one token.
    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Decorations in increasing order.
    pub fn decorations(&self) -> impl Iterator<Item = Decoration> + '_ {
        (0..self.tokens.len()).map(|i| Decoration(i as u16))
    }

    /// Looks up a token.
    pub fn get(&self, token: &str) -> Option<Decoration> {
        self.tokens.iter().position(|t| t == token).map(|i| Decoration(i as u16))
    }

    /// Whether `d` belongs to the set.
    pub fn contains(&self, d: Decoration) -> bool {
        d.rank() < self.tokens.len()
    }

    /// Token of `d`, or `?` when `d` is foreign to the set.
    pub fn token(&self, d: Decoration) -> &str {
        self.tokens.get(d.rank()).map(String::as_str).unwrap_or("?")
    }

    /// Parses a forest in the bracket grammar.
    pub fn parse_forest(&self, text: &str) -> Result<Forest> {
        Parser { set: self, bytes: text.as_bytes(), pos: 0 }.parse_all()
    }

    /// Parses text that must denote a single tree.
    pub fn parse_tree(&self, text: &str) -> Result<PlanarTree> {
        let f = self.parse_forest(text)?;
        if f.len() != 1 {
            return Err(Error::Syntax { position: 0, message: format!("expected one tree, found {}", f.len()) });
        }
        Ok(f.trees.into_iter().next().unwrap())
    }

    /// Canonical text of a forest.
    pub fn render(&self, f: &Forest) -> String {
        let mut out = String::new();
        self.write_forest(&mut out, f);
        out
    }

    /// Canonical text of a tree.
    pub fn render_tree(&self, t: &PlanarTree) -> String {
        let mut out = String::new();
        self.write_tree(&mut out, t);
        out
    }

    fn write_forest(&self, out: &mut String, f: &Forest) {
        if f.is_unit() {
            out.push('1');
            return;
        }
        for (i, t) in f.trees.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            self.write_tree(out, t);
        }
    }

    fn write_tree(&self, out: &mut String, t: &PlanarTree) {
        out.push_str(self.token(t.root));
        if !t.children.is_unit() {
            out.push('[');
            self.write_forest(out, &t.children);
            out.push(']');
        }
    }
}

impl Default for DecorationSet {
    fn default() -> Self {
        Self::undecorated()
    }
}

struct Parser<'a> {
    set: &'a DecorationSet,
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { position: self.pos, message: message.into() })
    }

    fn parse_all(mut self) -> Result<Forest> {
        let f = self.forest()?;
        if self.pos != self.bytes.len() {
            return self.error(format!("unexpected `{}`", self.bytes[self.pos] as char));
        }
        Ok(f)
    }

    fn token(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.bytes.len() && is_token_byte(self.bytes[self.pos]) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos]).unwrap_or("")
    }

    fn forest(&mut self) -> Result<Forest> {
        let start = self.pos;
        if self.token() == "1" {
            let next = self.bytes.get(self.pos);
            if next.is_none() || next == Some(&b']') {
                return Ok(Forest::unit());
            }
            self.pos = start;
            return self.error("`1` must stand alone");
        }
        self.pos = start;
        let mut trees = vec![self.tree()?];
        while self.bytes.get(self.pos) == Some(&b' ') {
            self.pos += 1;
            trees.push(self.tree()?);
        }
        Ok(Forest::from_trees(trees))
    }

    fn tree(&mut self) -> Result<PlanarTree> {
        let start = self.pos;
        let tok = self.token().to_string();
        if tok.is_empty() {
            return self.error("expected a decoration");
        }
        let d = match self.set.get(&tok) {
            Some(d) => d,
            None if tok == "1" => {
                self.pos = start;
                return self.error("`1` must stand alone");
            }
            None => return Err(Error::UnknownDecoration(tok)),
        };
        let children = if self.bytes.get(self.pos) == Some(&b'[') {
            self.pos += 1;
            let f = self.forest()?;
            if self.bytes.get(self.pos) != Some(&b']') {
                return self.error("expected `]`");
            }
            self.pos += 1;
            f
        } else {
            Forest::unit()
        };
        Ok(PlanarTree::new(d, children))
    }
}

/// A planar rooted tree with decorated vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlanarTree {
    root: Decoration,
    children: Forest,
}

impl PlanarTree {
    /// The tree with root `root` and the trees of `children` below it, in order.
    pub fn new(root: Decoration, children: Forest) -> Self {
        PlanarTree { root, children }
    }

    /// A single vertex.
    pub fn leaf(d: Decoration) -> Self {
        PlanarTree::new(d, Forest::unit())
    }

    /// Decoration of the root.
    pub fn root(&self) -> Decoration {
        self.root
    }

    /// The forest of subtrees hanging from the root.
    pub fn children(&self) -> &Forest {
        &self.children
    }

    /// Number of vertices.
    pub fn weight(&self) -> usize {
        1 + self.children.weight
    }

    /// Whether the tree is a single vertex.
    pub fn is_leaf(&self) -> bool {
        self.children.is_unit()
    }

    /// The tree seen as a one-tree forest.
    pub fn to_forest(&self) -> Forest {
        Forest::from_trees(vec![self.clone()])
    }

    /// Child subtrees, left to right.
    pub fn subtrees(&self) -> &[PlanarTree] {
        &self.children.trees
    }
}

impl fmt::Debug for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.root.0)?;
        if !self.children.is_unit() {
            write!(f, "[{:?}]", self.children)?;
        }
        Ok(())
    }
}

impl Ord for PlanarTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then(self.root.cmp(&other.root))
            .then_with(|| self.children.cmp(&other.children))
    }
}

impl PartialOrd for PlanarTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An ordered word of planar trees.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Forest {
    trees: Vec<PlanarTree>,
    weight: usize,
}

impl Forest {
    /// The empty forest `1`.
    pub fn unit() -> Self {
        Forest { trees: Vec::new(), weight: 0 }
    }

    /// The forest `t_1 ... t_n`.
    pub fn from_trees(trees: Vec<PlanarTree>) -> Self {
        let weight = trees.iter().map(PlanarTree::weight).sum();
        Forest { trees, weight }
    }

    /// The single vertex `•_d`.
    pub fn vertex(d: Decoration) -> Self {
        PlanarTree::leaf(d).to_forest()
    }

    /// Trees from left to right.
    pub fn trees(&self) -> &[PlanarTree] {
        &self.trees
    }

    /// Consumes the forest, returning its trees.
    pub fn into_trees(self) -> Vec<PlanarTree> {
        self.trees
    }

    /// Number of trees.
    pub fn len(&self) -> usize {
        self.trees.len()
    }

    /// Whether this is the unit forest.
    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Whether this is the unit forest.
    pub fn is_unit(&self) -> bool {
        self.trees.is_empty()
    }

    /// Number of vertices.
    pub fn weight(&self) -> usize {
        self.weight
    }

    /// The only tree, when the forest has exactly one.
    pub fn as_tree(&self) -> Option<&PlanarTree> {
        match self.trees.as_slice() {
            [t] => Some(t),
            _ => None,
        }
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Forest) -> Forest {
        let mut trees = Vec::with_capacity(self.trees.len() + other.trees.len());
        trees.extend_from_slice(&self.trees);
        trees.extend_from_slice(&other.trees);
        Forest { trees, weight: self.weight + other.weight }
    }

    /// Appends a tree on the right.
    pub fn push(&mut self, t: PlanarTree) {
        self.weight += t.weight();
        self.trees.push(t);
    }

    /// The forest of trees `range`.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Forest {
        Forest::from_trees(self.trees[range].to_vec())
    }

    /// Every decoration used, in preorder.
    pub fn decorations(&self) -> Vec<Decoration> {
        fn walk(f: &Forest, out: &mut Vec<Decoration>) {
            for t in &f.trees {
                out.push(t.root);
                walk(&t.children, out);
            }
        }
        let mut out = Vec::with_capacity(self.weight);
        walk(self, &mut out);
        out
    }
}

impl From<PlanarTree> for Forest {
    fn from(t: PlanarTree) -> Self {
        t.to_forest()
    }
}

impl fmt::Debug for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.trees.is_empty() {
            return write!(f, "1");
        }
        for (i, t) in self.trees.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{t:?}")?;
        }
        Ok(())
    }
}

/// The total order on forests: weight first, then a single tree above any
/// product, then root decoration and children for trees, then products
/// compared tree by tree from the right.
impl Ord for Forest {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.weight.cmp(&other.weight) {
            Ordering::Equal => {}
            o => return o,
        }
        match (self.trees.len(), other.trees.len()) {
            (0, 0) => Ordering::Equal,
            (1, 1) => self.trees[0].cmp(&other.trees[0]),
            (1, _) => Ordering::Greater,
            (_, 1) => Ordering::Less,
            _ => {
                for (a, b) in self.trees.iter().rev().zip(other.trees.iter().rev()) {
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

impl PartialOrd for Forest {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Three-way comparison in the forest order.
pub fn compare_forests(f: &Forest, g: &Forest) -> Ordering {
    f.cmp(g)
}

/// `B_d^+`: grafts the trees of `f` on a new root decorated `d`.
pub fn bplus(f: &Forest, d: Decoration) -> PlanarTree {
    PlanarTree::new(d, f.clone())
}

/// `B^-`: removes the root.
pub fn bminus(t: &PlanarTree) -> Forest {
    t.children.clone()
}

/// Removes a trailing single vertex decorated `d`; `None` stands for zero.
pub fn gamma(f: &Forest, d: Decoration) -> Option<Forest> {
    match f.trees.last() {
        Some(t) if t.root == d && t.is_leaf() => Some(f.slice(0..f.len() - 1)),
        _ => None,
    }
}

/// The involution `m` pairing each forest with its maximal partner.
pub fn mirror(f: &Forest) -> Forest {
    let Some(last) = f.trees.last() else {
        return Forest::unit();
    };
    let front = f.slice(0..f.len() - 1);
    if last.is_leaf() {
        bplus(&mirror(&front), last.root).to_forest()
    } else {
        mirror(&last.children).concat(&bplus(&mirror(&front), last.root).to_forest())
    }
}

fn catalan(n: usize) -> u128 {
    let mut c: u128 = 1;
    for k in 0..n as u128 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

fn count_forests(n: usize, d: usize) -> u128 {
    (d as u128).saturating_pow(n as u32).saturating_mul(catalan(n))
}

fn count_trees(n: usize, d: usize) -> u128 {
    if n == 0 {
        0
    } else {
        (d as u128).saturating_pow(n as u32).saturating_mul(catalan(n - 1))
    }
}

/// All trees and forests of each weight up to `max`, in ascending order.
#[derive(Clone, Debug)]
pub struct Catalog {
    trees: Vec<Vec<PlanarTree>>,
    forests: Vec<Vec<Forest>>,
}

impl Catalog {
    /// Enumerates every weight up to `max`, refusing if weight `max` has more
    /// than `cap` forests.
    pub fn build(max: usize, set: &DecorationSet, cap: u128) -> Result<Self> {
        if max > 60 {
            return Err(Error::ResourceLimit { what: "forest enumeration", count: "astronomical".into(), cap });
        }
        check_cap("forest enumeration", count_forests(max, set.len()), cap)?;
        let mut trees: Vec<Vec<PlanarTree>> = vec![Vec::new()];
        let mut forests: Vec<Vec<Forest>> = vec![vec![Forest::unit()]];
        for n in 1..=max {
            let mut level = Vec::new();
            for d in set.decorations() {
                for f in &forests[n - 1] {
                    level.push(bplus(f, d));
                }
            }
            level.sort();
            trees.push(level);
            let mut flevel = Vec::new();
            for k in 1..=n {
                for t in &trees[k] {
                    for rest in &forests[n - k] {
                        let mut v = Vec::with_capacity(rest.len() + 1);
                        v.push(t.clone());
                        v.extend_from_slice(rest.trees());
                        flevel.push(Forest::from_trees(v));
                    }
                }
            }
            flevel.sort();
            forests.push(flevel);
        }
        Ok(Catalog { trees, forests })
    }

    /// Highest tabulated weight.
    pub fn max_weight(&self) -> usize {
        self.forests.len() - 1
    }

    /// Trees of weight `n`, ascending.
    pub fn trees(&self, n: usize) -> &[PlanarTree] {
        &self.trees[n]
    }

    /// Forests of weight `n`, ascending.
    pub fn forests(&self, n: usize) -> &[Forest] {
        &self.forests[n]
    }
}

/// Trees of weight `n >= 1`, ascending.
pub fn enumerate_trees(n: usize, set: &DecorationSet) -> Result<Vec<PlanarTree>> {
    enumerate_trees_capped(n, set, DEFAULT_CAP)
}

/// [`enumerate_trees`] with an explicit size limit.
pub fn enumerate_trees_capped(n: usize, set: &DecorationSet, cap: u128) -> Result<Vec<PlanarTree>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    check_cap("tree enumeration", count_trees(n, set.len()), cap)?;
    let cat = Catalog::build(n - 1, set, cap)?;
    let mut out: Vec<PlanarTree> =
        set.decorations().flat_map(|d| cat.forests(n - 1).iter().map(move |f| bplus(f, d))).collect();
    out.sort();
    Ok(out)
}

/// Forests of weight `n`, ascending.
pub fn enumerate_forests(n: usize, set: &DecorationSet) -> Result<Vec<Forest>> {
    enumerate_forests_capped(n, set, DEFAULT_CAP)
}

/// [`enumerate_forests`] with an explicit size limit.
pub fn enumerate_forests_capped(n: usize, set: &DecorationSet, cap: u128) -> Result<Vec<Forest>> {
    let mut cat = Catalog::build(n, set, cap)?;
    Ok(std::mem::take(&mut cat.forests[n]))
}

/// A vertex of a forest, named by its preorder rank.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexRef(pub usize);

/// Preorder vertex table of a forest.
#[derive(Clone, Debug)]
pub struct Vertices {
    decoration: Vec<Decoration>,
    parent: Vec<Option<usize>>,
    tree: Vec<usize>,
    end: Vec<usize>,
    children: Vec<Vec<usize>>,
}

impl Vertices {
    /// Tabulates the vertices of `f`.
    pub fn of(f: &Forest) -> Self {
        let n = f.weight();
        let mut v = Vertices {
            decoration: Vec::with_capacity(n),
            parent: Vec::with_capacity(n),
            tree: Vec::with_capacity(n),
            end: Vec::with_capacity(n),
            children: Vec::with_capacity(n),
        };
        for (i, t) in f.trees().iter().enumerate() {
            v.walk(t, None, i);
        }
        v
    }

    fn walk(&mut self, t: &PlanarTree, parent: Option<usize>, tree: usize) -> usize {
        let me = self.decoration.len();
        self.decoration.push(t.root());
        self.parent.push(parent);
        self.tree.push(tree);
        self.end.push(0);
        self.children.push(Vec::new());
        if let Some(p) = parent {
            self.children[p].push(me);
        }
        for c in t.subtrees() {
            self.walk(c, Some(me), tree);
        }
        self.end[me] = self.decoration.len();
        me
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.decoration.len()
    }

    /// Whether the forest is empty.
    pub fn is_empty(&self) -> bool {
        self.decoration.is_empty()
    }

    /// Decoration of `v`.
    pub fn decoration(&self, v: usize) -> Decoration {
        self.decoration[v]
    }

    /// Parent of `v`, `None` for roots.
    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// Children of `v`, left to right.
    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Index of the tree containing `v`.
    pub fn tree_index(&self, v: usize) -> usize {
        self.tree[v]
    }

    /// One past the last preorder index of the subtree rooted at `v`.
    pub fn subtree_end(&self, v: usize) -> usize {
        self.end[v]
    }

    /// Vertices that are roots.
    pub fn roots(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&v| self.parent[v].is_none())
    }

    /// Edges, each named by its lower (child) vertex, in preorder.
    pub fn edges(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.parent[v].is_some()).collect()
    }

    /// Whether the edge above `v` joins `v` to the first child of its parent.
    pub fn is_left_edge(&self, v: usize) -> bool {
        matches!(self.parent[v], Some(p) if self.children[p][0] == v)
    }

    /// The subtree rooted at `v`, with every vertex in `removed` (and what
    /// hangs below it) detached.
    pub fn subtree_without(&self, v: usize, removed: &[bool]) -> PlanarTree {
        let kids = self.children[v]
            .iter()
            .filter(|&&c| !removed[c])
            .map(|&c| self.subtree_without(c, removed))
            .collect();
        PlanarTree::new(self.decoration[v], Forest::from_trees(kids))
    }

    fn check(&self, x: VertexRef) -> Result<usize> {
        if x.0 < self.len() {
            Ok(x.0)
        } else {
            Err(Error::InvalidVertex { index: x.0, weight: self.len() })
        }
    }
}

/// `x >=_haut y`: `y` lies on the path from `x` up to its root.
pub fn ge_haut(f: &Forest, x: VertexRef, y: VertexRef) -> Result<bool> {
    let v = Vertices::of(f);
    let (x, y) = (v.check(x)?, v.check(y)?);
    Ok(haut(&v, x, y))
}

fn haut(v: &Vertices, x: usize, y: usize) -> bool {
    let mut cur = Some(x);
    while let Some(c) = cur {
        if c == y {
            return true;
        }
        cur = v.parent(c);
    }
    false
}

/// `x >=_gauche y`, by the recursive definition: across trees the left one
/// wins; inside a tree a root is comparable only with itself; otherwise
/// recurse below the root.
pub fn ge_gauche(f: &Forest, x: VertexRef, y: VertexRef) -> Result<bool> {
    let v = Vertices::of(f);
    v.check(x)?;
    v.check(y)?;
    Ok(gauche(f, x.0, y.0))
}

fn locate(f: &Forest, mut v: usize) -> (usize, usize) {
    for (i, t) in f.trees().iter().enumerate() {
        if v < t.weight() {
            return (i, v);
        }
        v -= t.weight();
    }
    unreachable!("vertex outside forest")
}

fn gauche(f: &Forest, x: usize, y: usize) -> bool {
    let (tx, ox) = locate(f, x);
    let (ty, oy) = locate(f, y);
    if tx != ty {
        return tx < ty;
    }
    if ox == oy {
        return true;
    }
    if ox == 0 || oy == 0 {
        return false;
    }
    gauche(f.trees()[tx].children(), ox - 1, oy - 1)
}

/// `x >=_tot y`: `x >=_haut y` or `y >=_gauche x`.
pub fn ge_tot(f: &Forest, x: VertexRef, y: VertexRef) -> Result<bool> {
    Ok(ge_haut(f, x, y)? || ge_gauche(f, y, x)?)
}

/// Vertices sorted in ascending `>=_tot` order.
pub fn tot_order(f: &Forest) -> Vec<VertexRef> {
    let v = Vertices::of(f);
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| tot_cmp(f, &v, a, b));
    order.into_iter().map(VertexRef).collect()
}

pub(crate) fn tot_cmp(f: &Forest, v: &Vertices, a: usize, b: usize) -> Ordering {
    if a == b {
        Ordering::Equal
    } else if haut(v, b, a) || gauche(f, a, b) {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}
