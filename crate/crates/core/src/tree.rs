//! Planar binary trees.
//!
//! A [`Tree`] is either the root tree `e` (no internal vertex) or the grafting
//! `l v r` of two trees on a new root. Values are immutable and cheap to clone;
//! subtrees are shared through reference counting. Every node caches its order
//! and a structural hash, so `order()` is constant time and hashing never walks
//! the tree.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use parking_lot::RwLock;

use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Tree(Option<Arc<Node>>);

struct Node {
    left: Tree,
    right: Tree,
    order: usize,
    hash: u64,
}

const ROOT_HASH: u64 = 0x9e37_79b9_7f4a_7c15;

fn mix(left: u64, right: u64) -> u64 {
    let mut h = left.rotate_left(17) ^ right.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    h ^= h >> 31;
    h = h.wrapping_mul(0x94d0_49bb_1331_11eb);
    h ^ (h >> 29)
}

impl Tree {
    /// The root tree, unit for both `over` and `under`.
    pub fn root() -> Tree {
        Tree(None)
    }

    /// The order-one tree `(e v e)`.
    pub fn y() -> Tree {
        Tree::graft(&Tree::root(), &Tree::root())
    }

    pub fn graft(left: &Tree, right: &Tree) -> Tree {
        Tree(Some(Arc::new(Node {
            order: left.order() + right.order() + 1,
            hash: mix(left.structural_hash(), right.structural_hash()),
            left: left.clone(),
            right: right.clone(),
        })))
    }

    pub fn is_root(&self) -> bool {
        self.0.is_none()
    }

    pub fn order(&self) -> usize {
        self.0.as_ref().map_or(0, |n| n.order)
    }

    fn structural_hash(&self) -> u64 {
        self.0.as_ref().map_or(ROOT_HASH, |n| n.hash)
    }

    /// Left and right subtrees, `None` for the root tree.
    pub fn split(&self) -> Option<(&Tree, &Tree)> {
        self.0.as_ref().map(|n| (&n.left, &n.right))
    }

    pub fn left(&self) -> Option<&Tree> {
        self.split().map(|(l, _)| l)
    }

    pub fn right(&self) -> Option<&Tree> {
        self.split().map(|(_, r)| r)
    }

    pub fn un_graft(&self) -> Result<(Tree, Tree)> {
        self.split()
            .map(|(l, r)| (l.clone(), r.clone()))
            .ok_or(Error::RootTree)
    }

    /// `V(t) = e v t`, the generators of `(Y, /)`.
    pub fn v_wrap(&self) -> Tree {
        Tree::graft(&Tree::root(), self)
    }

    /// True when the tree has the form `e v t`.
    pub fn is_v_generator(&self) -> bool {
        self.left().is_some_and(Tree::is_root)
    }

    /// True when the tree has the form `t v e`.
    pub fn is_under_generator(&self) -> bool {
        self.right().is_some_and(Tree::is_root)
    }

    /// `t / s`: grafts `t` on the leftmost leaf of `s`.
    pub fn over(&self, s: &Tree) -> Tree {
        match s.split() {
            None => self.clone(),
            Some((sl, sr)) => Tree::graft(&self.over(sl), sr),
        }
    }

    /// `t \ s`: grafts `s` on the rightmost leaf of `t`.
    pub fn under(&self, s: &Tree) -> Tree {
        match self.split() {
            None => s.clone(),
            Some((tl, tr)) => Tree::graft(tl, &tr.under(s)),
        }
    }

    /// Arguments `u_1, ..., u_k` with `t = V(u_1) / ... / V(u_k)`.
    pub fn decompose_over(&self) -> Vec<Tree> {
        let mut out = Vec::new();
        let mut cur = self;
        while let Some((l, r)) = cur.split() {
            out.push(r.clone());
            cur = l;
        }
        out.reverse();
        out
    }

    /// Arguments `u_1, ..., u_k` with `t = (u_1 v e) \ ... \ (u_k v e)`.
    pub fn decompose_under(&self) -> Vec<Tree> {
        let mut out = Vec::new();
        let mut cur = self;
        while let Some((l, r)) = cur.split() {
            out.push(l.clone());
            cur = r;
        }
        out
    }

    /// Inverse of [`Tree::decompose_over`].
    pub fn from_over_decomposition<'a>(parts: impl IntoIterator<Item = &'a Tree>) -> Tree {
        parts
            .into_iter()
            .fold(Tree::root(), |acc, u| Tree::graft(&acc, u))
    }

    /// Inverse of [`Tree::decompose_under`].
    pub fn from_under_decomposition(parts: &[Tree]) -> Tree {
        parts
            .iter()
            .rev()
            .fold(Tree::root(), |acc, u| Tree::graft(u, &acc))
    }

    /// Over-product of a sequence of trees, `e` for the empty sequence.
    pub fn over_all<'a>(trees: impl IntoIterator<Item = &'a Tree>) -> Tree {
        trees.into_iter().fold(Tree::root(), |acc, t| acc.over(t))
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        self.write_into(&mut s);
        s
    }

    /// `\|` for the root, `(l \vee r)` otherwise.
    pub fn render_latex(&self) -> String {
        match self.split() {
            None => "\\|".to_string(),
            Some((l, r)) => format!("({} \\vee {})", l.render_latex(), r.render_latex()),
        }
    }

    fn write_into(&self, out: &mut String) {
        match self.split() {
            None => out.push('e'),
            Some((l, r)) => {
                out.push('(');
                l.write_into(out);
                out.push_str(" v ");
                r.write_into(out);
                out.push(')');
            }
        }
    }

    /// The `Y<n>.<k>` name of the tree (1-based index in canonical order).
    pub fn canonical_name(&self) -> String {
        let level = enumerate(self.order());
        let k = level
            .binary_search(self)
            .expect("enumeration contains every tree of its order");
        format!("Y{}.{}", self.order(), k + 1)
    }
}

impl PartialEq for Tree {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (None, None) => true,
            (Some(a), Some(b)) => {
                Arc::ptr_eq(a, b)
                    || (a.hash == b.hash
                        && a.order == b.order
                        && a.left == b.left
                        && a.right == b.right)
            }
            _ => false,
        }
    }
}

impl Eq for Tree {}

impl Hash for Tree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.structural_hash());
    }
}

/// Canonical order: smaller order first; within one order, trees with a
/// heavier left subtree come first, ties broken on the left subtrees and then
/// on the right subtrees. This reproduces the usual listing of `Y_2` and `Y_3`.
impl Ord for Tree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => {
                if Arc::ptr_eq(a, b) {
                    return Ordering::Equal;
                }
                a.order
                    .cmp(&b.order)
                    .then_with(|| b.left.order().cmp(&a.left.order()))
                    .then_with(|| a.left.cmp(&b.left))
                    .then_with(|| a.right.cmp(&b.right))
            }
        }
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl FromStr for Tree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tree> {
        parse(s)
    }
}

static LEVELS: OnceLock<RwLock<Vec<Arc<Vec<Tree>>>>> = OnceLock::new();

/// All trees of order `n`, in canonical order. Levels are memoized.
pub fn enumerate(n: usize) -> Arc<Vec<Tree>> {
    let levels = LEVELS.get_or_init(|| RwLock::new(vec![Arc::new(vec![Tree::root()])]));
    if let Some(level) = levels.read().get(n) {
        return Arc::clone(level);
    }
    let mut guard = levels.write();
    while guard.len() <= n {
        let m = guard.len();
        let mut level = Vec::new();
        // heavier left subtree first, then left and right in canonical order
        for left_order in (0..m).rev() {
            let lefts = Arc::clone(&guard[left_order]);
            let rights = Arc::clone(&guard[m - 1 - left_order]);
            for l in lefts.iter() {
                for r in rights.iter() {
                    level.push(Tree::graft(l, r));
                }
            }
        }
        guard.push(Arc::new(level));
    }
    Arc::clone(&guard[n])
}

/// All trees of order at most `n`, grouped by increasing order.
pub fn enumerate_up_to(n: usize) -> Vec<Tree> {
    (0..=n).flat_map(|k| enumerate(k).iter().cloned().collect::<Vec<_>>()).collect()
}

pub fn catalan(n: usize) -> u64 {
    // C_{k+1} = C_k * 2(2k+1) / (k+2), exact at every step
    (0..n as u64).fold(1u64, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

/// Parses `e`, `(t v s)` with arbitrary whitespace, or a `Y<n>.<k>` alias.
pub fn parse(text: &str) -> Result<Tree> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        text,
    };
    let t = p.tree()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(t)
}

/// Parses a whitespace-separated sequence of trees (a word).
pub fn parse_sequence(text: &str) -> Result<Vec<Tree>> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        text,
    };
    let mut out = Vec::new();
    loop {
        p.skip_ws();
        if p.pos == p.src.len() {
            break;
        }
        out.push(p.tree()?);
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {} in {:?}", self.pos, self.text))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn tree(&mut self) -> Result<Tree> {
        self.skip_ws();
        match self.src.get(self.pos) {
            Some(b'e') => {
                self.pos += 1;
                Ok(Tree::root())
            }
            Some(b'(') => {
                self.pos += 1;
                let l = self.tree()?;
                self.skip_ws();
                if self.src.get(self.pos) != Some(&b'v') {
                    return Err(self.error("expected 'v'"));
                }
                self.pos += 1;
                let r = self.tree()?;
                self.skip_ws();
                if self.src.get(self.pos) != Some(&b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(Tree::graft(&l, &r))
            }
            Some(b'Y') => self.alias(),
            _ => Err(self.error("expected a tree")),
        }
    }

    fn alias(&mut self) -> Result<Tree> {
        let start = self.pos;
        self.pos += 1;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.')
        {
            self.pos += 1;
        }
        let name = &self.text[start..self.pos];
        let (n, k) = name[1..]
            .split_once('.')
            .and_then(|(n, k)| Some((n.parse::<usize>().ok()?, k.parse::<usize>().ok()?)))
            .ok_or_else(|| Error::Parse(format!("bad tree alias {name:?}")))?;
        if n > 16 {
            return Err(Error::Parse(format!("tree alias {name:?} has too large an order")));
        }
        let level = enumerate(n);
        k.checked_sub(1)
            .and_then(|i| level.get(i).cloned())
            .ok_or_else(|| Error::Parse(format!("no tree {name:?}: Y{n} has {} trees", level.len())))
    }
}

/// Named small trees, mostly for tests and examples.
pub mod named {
    use super::Tree;

    pub fn e() -> Tree {
        Tree::root()
    }
    pub fn y() -> Tree {
        Tree::y()
    }
    /// `((e v e) v e)`
    pub fn deuxun() -> Tree {
        Tree::graft(&y(), &e())
    }
    /// `(e v (e v e))`
    pub fn deuxdeux() -> Tree {
        Tree::graft(&e(), &y())
    }
    /// `(((e v e) v e) v e)`
    pub fn troisun() -> Tree {
        Tree::graft(&deuxun(), &e())
    }
    /// `((e v (e v e)) v e)`
    pub fn troisdeux() -> Tree {
        Tree::graft(&deuxdeux(), &e())
    }
    /// `((e v e) v (e v e))`
    pub fn troistrois() -> Tree {
        Tree::graft(&y(), &y())
    }
    /// `(e v ((e v e) v e))`
    pub fn troisquatre() -> Tree {
        Tree::graft(&e(), &deuxun())
    }
    /// `(e v (e v (e v e)))`
    pub fn troiscinq() -> Tree {
        Tree::graft(&e(), &deuxdeux())
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn graft_examples() {
        assert_eq!(Tree::graft(&y(), &y()), troistrois());
        assert_eq!(Tree::graft(&e(), &e()), y());
        assert_eq!(Tree::graft(&deuxdeux(), &e()), troisdeux());
        assert_eq!(troistrois().order(), 3);
    }

    #[test]
    fn un_graft_examples() {
        assert_eq!(y().un_graft().unwrap(), (e(), e()));
        assert_eq!(troisquatre().un_graft().unwrap(), (e(), deuxun()));
        assert_eq!(troistrois().un_graft().unwrap(), (y(), y()));
        assert!(matches!(e().un_graft(), Err(Error::RootTree)));
    }

    #[test]
    fn over_under_examples() {
        assert_eq!(deuxdeux().over(&y()), troisdeux());
        assert_eq!(y().over(&deuxdeux()), troistrois());
        assert_eq!(deuxun().under(&y()), troistrois());
        assert_eq!(y().under(&deuxun()), troisquatre());
        for t in enumerate_up_to(4) {
            assert_eq!(t.over(&e()), t);
            assert_eq!(e().over(&t), t);
            assert_eq!(t.under(&e()), t);
            assert_eq!(e().under(&t), t);
        }
    }

    #[test]
    fn v_wrap_examples() {
        assert_eq!(e().v_wrap(), y());
        assert_eq!(deuxun().v_wrap(), troisquatre());
        assert_eq!(deuxdeux().v_wrap(), troiscinq());
    }

    #[test]
    fn decompositions() {
        assert!(e().decompose_over().is_empty());
        assert_eq!(troisquatre().decompose_over(), vec![deuxun()]);
        assert_eq!(deuxun().decompose_over(), vec![e(), e()]);
        assert!(e().decompose_under().is_empty());
        assert_eq!(deuxdeux().decompose_under(), vec![e(), e()]);
        assert_eq!(troisdeux().decompose_under(), vec![deuxdeux()]);
    }

    #[test]
    fn enumeration_order_matches_listing() {
        assert_eq!(*enumerate(0), vec![e()]);
        assert_eq!(*enumerate(1), vec![y()]);
        assert_eq!(*enumerate(2), vec![deuxun(), deuxdeux()]);
        assert_eq!(
            *enumerate(3),
            vec![troisun(), troisdeux(), troistrois(), troisquatre(), troiscinq()]
        );
        for n in 0..=7 {
            let level = enumerate(n);
            assert!(level.windows(2).all(|w| w[0] < w[1]), "order {n} not sorted");
        }
    }

    #[test]
    fn catalan_numbers() {
        let expected = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012];
        for (n, c) in expected.iter().enumerate() {
            assert_eq!(catalan(n), *c);
        }
    }

    #[test]
    fn render_and_parse() {
        assert_eq!(parse("e").unwrap(), e());
        assert_eq!(troiscinq().render(), "(e v (e v (e v e)))");
        assert_eq!(parse("  ( e\tv\n(e v e) )").unwrap(), deuxdeux());
        assert_eq!(parse("Y3.4").unwrap(), troisquatre());
        assert_eq!(parse("Y0.1").unwrap(), e());
        assert_eq!(troisquatre().canonical_name(), "Y3.4");
        assert!(parse("(e v e").is_err());
        assert!(parse("(e e)").is_err());
        assert!(parse("e e").is_err());
        assert!(parse("Y2.3").is_err());
        assert!(parse("Y2").is_err());
        assert_eq!(parse_sequence("(e v e) Y2.1").unwrap(), vec![y(), deuxun()]);
    }
}
