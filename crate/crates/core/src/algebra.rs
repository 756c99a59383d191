//! Exact linear combinations of tree words, tensors of them, and the products
//! of the four tree algebras.
//!
//! Words store their factors as trees. In the charge algebras `Halpha` and
//! `HalphaNC` every factor is a generator `V(u) = (e v u)`; a single tree `t`
//! enters those algebras through its over-decomposition `V(u_1) ... V(u_k)`, so
//! the degree of a word is always the sum of the orders of its factors.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::tree::Tree;

pub type Scalar = BigRational;

pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// `p/q` with `q > 0`; integers keep the `/1`.
pub fn format_scalar(c: &Scalar) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn latex_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        let sign = if c.is_negative() { "-" } else { "" };
        format!("{sign}\\frac{{{}}}{{{}}}", c.numer().abs(), c.denom())
    }
}

pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let text = text.trim();
    let bad = || Error::Parse(format!("bad rational {text:?}"));
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraTag {
    /// Free algebra on trees, photon pruning coproduct.
    Gamma,
    /// Free algebra on trees, electron pruning coproduct.
    Electron,
    /// Commutative polynomials on the generators `V(t)`.
    Alpha,
    /// Noncommutative polynomials on the generators `V(t)`.
    AlphaNc,
}

impl AlgebraTag {
    pub fn name(self) -> &'static str {
        match self {
            AlgebraTag::Gamma => "Hgamma",
            AlgebraTag::Electron => "He",
            AlgebraTag::Alpha => "Halpha",
            AlgebraTag::AlphaNc => "HalphaNC",
        }
    }

    pub fn from_name(name: &str) -> Result<AlgebraTag> {
        match name {
            "Hgamma" => Ok(AlgebraTag::Gamma),
            "He" => Ok(AlgebraTag::Electron),
            "Halpha" => Ok(AlgebraTag::Alpha),
            "HalphaNC" => Ok(AlgebraTag::AlphaNc),
            _ => Err(Error::Parse(format!("unknown algebra {name:?}"))),
        }
    }

    pub fn is_commutative(self) -> bool {
        self == AlgebraTag::Alpha
    }

    pub fn is_charge(self) -> bool {
        matches!(self, AlgebraTag::Alpha | AlgebraTag::AlphaNc)
    }
}

impl fmt::Display for AlgebraTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A basis monomial. The empty word is the unit `1 = e`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Tree>);

impl Word {
    pub fn unit() -> Word {
        Word(Vec::new())
    }

    /// Builds a normalized word: root factors are dropped, and `Alpha` words
    /// are sorted. Charge words must consist of generators.
    pub fn new(tag: AlgebraTag, factors: Vec<Tree>) -> Result<Word> {
        let mut factors: Vec<Tree> = factors.into_iter().filter(|t| !t.is_root()).collect();
        if tag.is_charge() {
            if let Some(bad) = factors.iter().find(|t| !t.is_v_generator()) {
                return Err(Error::NotGenerator(bad.render()));
            }
        }
        if tag == AlgebraTag::Alpha {
            factors.sort();
        }
        Ok(Word(factors))
    }

    /// Caller guarantees the factors are already normalized for the tag.
    pub(crate) fn from_normalized(factors: Vec<Tree>) -> Word {
        Word(factors)
    }

    /// The basis word of a single tree: one letter for the pruning algebras,
    /// the generator decomposition for the charge algebras.
    pub fn of_tree(tag: AlgebraTag, t: &Tree) -> Word {
        if t.is_root() {
            return Word::unit();
        }
        match tag {
            AlgebraTag::Gamma | AlgebraTag::Electron => Word(vec![t.clone()]),
            AlgebraTag::AlphaNc => Word(t.decompose_over().iter().map(Tree::v_wrap).collect()),
            AlgebraTag::Alpha => {
                let mut f: Vec<Tree> = t.decompose_over().iter().map(Tree::v_wrap).collect();
                f.sort();
                Word(f)
            }
        }
    }

    pub fn factors(&self) -> &[Tree] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(Tree::order).sum()
    }

    pub fn mul(&self, other: &Word, tag: AlgebraTag) -> Word {
        let mut f = Vec::with_capacity(self.0.len() + other.0.len());
        f.extend_from_slice(&self.0);
        f.extend_from_slice(&other.0);
        if tag == AlgebraTag::Alpha {
            f.sort();
        }
        Word(f)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().cloned().collect())
    }

    /// The over-product of the factors: for charge words this is the tree
    /// identified with the word.
    pub fn over_tree(&self) -> Tree {
        Tree::over_all(&self.0)
    }

    pub fn single_tree(&self) -> Option<&Tree> {
        match self.0.as_slice() {
            [t] => Some(t),
            _ => None,
        }
    }

    pub fn render(&self) -> String {
        if self.0.is_empty() {
            "1".to_string()
        } else {
            self.0.iter().map(Tree::render).collect::<Vec<_>>().join(" * ")
        }
    }

    pub fn render_latex(&self) -> String {
        if self.0.is_empty() {
            "1".to_string()
        } else {
            self.0.iter().map(Tree::render_latex).collect::<Vec<_>>().join(" \\, ")
        }
    }

    fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(|t| Value::String(t.render())).collect())
    }

    fn from_json(tag: AlgebraTag, v: &Value) -> Result<Word> {
        let items = v
            .as_array()
            .ok_or_else(|| Error::Json("a word is an array of tree strings".into()))?;
        let mut trees = Vec::with_capacity(items.len());
        for item in items {
            let text = item
                .as_str()
                .ok_or_else(|| Error::Json("a word is an array of tree strings".into()))?;
            trees.push(crate::tree::parse(text)?);
        }
        Word::new(tag, trees)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Converts a word between algebras whose normal forms differ: sorting for
/// `Alpha`, nothing otherwise. Only the charge algebras share generators.
pub fn abelianize(word: &Word) -> Word {
    let mut f = word.0.clone();
    f.sort();
    Word(f)
}

/// A finite linear combination of words in one of the tree algebras.
#[derive(Clone, PartialEq, Eq)]
pub struct Element {
    tag: AlgebraTag,
    terms: BTreeMap<Word, Scalar>,
}

impl Element {
    pub fn zero(tag: AlgebraTag) -> Element {
        Element {
            tag,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(tag: AlgebraTag) -> Element {
        Element::from_word(tag, Word::unit())
    }

    pub fn from_word(tag: AlgebraTag, word: Word) -> Element {
        let mut e = Element::zero(tag);
        e.terms.insert(word, Scalar::one());
        e
    }

    pub fn from_terms(tag: AlgebraTag, terms: impl IntoIterator<Item = (Word, Scalar)>) -> Element {
        let mut e = Element::zero(tag);
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    /// The basis element of a single tree (see [`Word::of_tree`]).
    pub fn embed_tree(tag: AlgebraTag, t: &Tree) -> Element {
        Element::from_word(tag, Word::of_tree(tag, t))
    }

    /// Product of the embedded trees, in order.
    pub fn embed_word(tag: AlgebraTag, trees: &[Tree]) -> Element {
        trees
            .iter()
            .fold(Element::unit(tag), |acc, t| &acc * &Element::embed_tree(tag, t))
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, word: &Word) -> Scalar {
        self.terms.get(word).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, word: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        debug_assert_eq!(self.tag, other.tag);
        for (w, d) in &other.terms {
            self.add_term(w.clone(), d * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let mut out = Element::zero(self.tag);
        if c.is_zero() {
            return out;
        }
        for (w, d) in &self.terms {
            out.terms.insert(w.clone(), d * c);
        }
        out
    }

    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        if self.tag != other.tag {
            return Err(Error::TagMismatch {
                expected: self.tag,
                found: other.tag,
            });
        }
        let mut out = Element::zero(self.tag);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.mul(w2, self.tag), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        if self.tag != other.tag {
            return Err(Error::TagMismatch {
                expected: self.tag,
                found: other.tag,
            });
        }
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        Ok(out)
    }

    /// Coefficient of the unit word.
    pub fn counit(&self) -> Scalar {
        self.coeff(&Word::unit())
    }

    pub fn grade_components(&self) -> BTreeMap<usize, Element> {
        let mut out: BTreeMap<usize, Element> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.degree())
                .or_insert_with(|| Element::zero(self.tag))
                .add_term(w.clone(), c.clone());
        }
        out
    }

    /// Reads the element in another algebra with the same words, applying that
    /// algebra's normal form.
    pub fn retag(&self, tag: AlgebraTag) -> Result<Element> {
        let mut out = Element::zero(tag);
        for (w, c) in &self.terms {
            out.add_term(Word::new(tag, w.0.clone())?, c.clone());
        }
        Ok(out)
    }

    /// Applies a linear map given on basis words.
    pub fn map_linear(&self, tag: AlgebraTag, f: impl Fn(&Word) -> Element) -> Element {
        let mut out = Element::zero(tag);
        for (w, c) in &self.terms {
            out.add_scaled(&f(w), c);
        }
        out
    }

    pub fn render(&self) -> String {
        render_terms(self.terms.iter().map(|(w, c)| (c, w.render())))
    }

    pub fn render_latex(&self) -> String {
        render_terms_with(self.terms.iter().map(|(w, c)| (c, w.render_latex())), latex_scalar)
    }

    /// Parses a linear combination such as `2 (e v e) * Y2.1 - 1/2 1`.
    /// Terms are separated by `+` or `-` outside parentheses; a term is an
    /// optional rational coefficient followed by trees, separated by `*` or
    /// whitespace, or `1` for the unit. Each tree enters the algebra as by
    /// [`Element::embed_tree`].
    pub fn parse(tag: AlgebraTag, text: &str) -> Result<Element> {
        let mut out = Element::zero(tag);
        let mut depth = 0i32;
        let mut start = 0;
        let mut sign = Scalar::one();
        let mut pieces = Vec::new();
        for (i, ch) in text.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' | '-' if depth == 0 => {
                    pieces.push((sign.clone(), &text[start..i]));
                    sign = if ch == '-' { -Scalar::one() } else { Scalar::one() };
                    start = i + 1;
                }
                _ => {}
            }
        }
        pieces.push((sign, &text[start..]));
        let mut any = false;
        for (k, (sign, piece)) in pieces.into_iter().enumerate() {
            let piece = piece.trim();
            if piece.is_empty() {
                // a leading sign leaves an empty first piece
                if k == 0 {
                    continue;
                }
                return Err(Error::Parse(format!("empty term in {text:?}")));
            }
            let (c, x) = parse_term(tag, piece)?;
            out.add_scaled(&x, &(&sign * &c));
            any = true;
        }
        if !any {
            return Err(Error::Parse("empty element".into()));
        }
        Ok(out)
    }

    /// `{"tag": ..., "terms": [{"coeff": "p/q", "word": [tree, ...]}]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(w, c)| json!({"coeff": format_scalar(c), "word": w.to_json()}))
            .collect();
        json!({"tag": self.tag.name(), "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<Element> {
        let tag = AlgebraTag::from_name(json_str(v, "tag")?)?;
        let mut out = Element::zero(tag);
        for term in json_array(v, "terms")? {
            let c = parse_scalar(json_str(term, "coeff")?)?;
            let w = Word::from_json(tag, term.get("word").unwrap_or(&Value::Null))?;
            out.add_term(w, c);
        }
        Ok(out)
    }
}

fn parse_term(tag: AlgebraTag, piece: &str) -> Result<(Scalar, Element)> {
    let is_number = |t: &str| !t.is_empty() && t.split('/').all(|p| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit()));
    let piece = piece.replace('*', " ");
    let mut rest = piece.trim();
    let mut coeff = Scalar::one();
    let first = rest.split_whitespace().next().unwrap_or("");
    if is_number(first) {
        let c = parse_scalar(first)?;
        rest = rest[first.len()..].trim_start();
        if rest.is_empty() {
            return Ok((c, Element::unit(tag)));
        }
        coeff = c;
    }
    let mut x = Element::unit(tag);
    for token in split_trees(rest)? {
        if token == "1" {
            continue;
        }
        x = x.try_mul(&Element::embed_tree(tag, &crate::tree::parse(token)?))?;
    }
    Ok((coeff, x))
}

/// Splits whitespace-separated tree texts, keeping parenthesized groups whole.
fn split_trees(text: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start: Option<usize> = None;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => {
                start.get_or_insert(i);
                depth += 1;
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced parentheses in {text:?}")));
                }
            }
            c if c.is_whitespace() && depth == 0 => {
                if let Some(s) = start.take() {
                    out.push(&text[s..i]);
                }
            }
            _ => {
                start.get_or_insert(i);
            }
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in {text:?}")));
    }
    if let Some(s) = start {
        out.push(&text[s..]);
    }
    Ok(out)
}

fn json_str<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    v.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Json(format!("missing string field {key:?}")))
}

fn json_array<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>> {
    v.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Json(format!("missing array field {key:?}")))
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.tag, self.render())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub(crate) fn render_terms<'a>(terms: impl Iterator<Item = (&'a Scalar, String)>) -> String {
    render_terms_with(terms, |c| c.to_string())
}

fn render_terms_with<'a>(terms: impl Iterator<Item = (&'a Scalar, String)>, coeff: impl Fn(&Scalar) -> String) -> String {
    let mut out = String::new();
    for (c, body) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !abs.is_one() {
            out.push_str(&coeff(&abs));
            out.push(' ');
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("adding elements of different algebras")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.try_add(&-rhs).expect("subtracting elements of different algebras")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-Scalar::one())
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.try_mul(rhs).expect("multiplying elements of different algebras")
    }
}

/// A finite linear combination of tuples of words, one word per slot. Each
/// slot carries its own algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor {
    tags: Vec<AlgebraTag>,
    terms: BTreeMap<Vec<Word>, Scalar>,
}

impl Tensor {
    pub fn zero(tags: &[AlgebraTag]) -> Tensor {
        Tensor {
            tags: tags.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(tags: &[AlgebraTag]) -> Tensor {
        let mut t = Tensor::zero(tags);
        t.terms.insert(vec![Word::unit(); tags.len()], Scalar::one());
        t
    }

    /// `x_1 (x) x_2 (x) ... (x) x_n`.
    pub fn product_of(xs: &[Element]) -> Tensor {
        let tags: Vec<AlgebraTag> = xs.iter().map(Element::tag).collect();
        let mut out = Tensor::unit(&tags);
        for (i, x) in xs.iter().enumerate() {
            let mut next = Tensor::zero(&tags);
            for (ws, c) in &out.terms {
                for (w, d) in &x.terms {
                    let mut ws = ws.clone();
                    ws[i] = w.clone();
                    next.add_term(ws, c * d);
                }
            }
            out = next;
        }
        out
    }

    pub fn from_element(x: &Element) -> Tensor {
        Tensor::product_of(std::slice::from_ref(x))
    }

    pub fn tags(&self) -> &[AlgebraTag] {
        &self.tags
    }

    pub fn slots(&self) -> usize {
        self.tags.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, words: &[Word]) -> Scalar {
        self.terms.get(words).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, words: Vec<Word>, c: Scalar) {
        debug_assert_eq!(words.len(), self.tags.len());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(words) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Tensor, c: &Scalar) {
        debug_assert_eq!(self.tags, other.tags);
        for (ws, d) in &other.terms {
            self.add_term(ws.clone(), d * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Tensor {
        let mut out = Tensor::zero(&self.tags);
        out.add_scaled(self, c);
        out
    }

    fn check_layout(&self, other: &Tensor) -> Result<()> {
        if self.tags != other.tags {
            return Err(Error::SlotMismatch {
                expected: layout(&self.tags),
                found: layout(&other.tags),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Tensor) -> Result<Tensor> {
        self.check_layout(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        Ok(out)
    }

    /// Slotwise product, each slot using its own algebra.
    pub fn try_mul(&self, other: &Tensor) -> Result<Tensor> {
        self.check_layout(other)?;
        let mut out = Tensor::zero(&self.tags);
        for (a, c1) in &self.terms {
            for (b, c2) in &other.terms {
                let ws = a
                    .iter()
                    .zip(b)
                    .zip(&self.tags)
                    .map(|((x, y), &tag)| x.mul(y, tag))
                    .collect();
                out.add_term(ws, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Replaces slot `slot` by the slots of `f(word)`, splicing them in place.
    pub fn expand_slot(&self, slot: usize, f: impl Fn(&Word) -> Tensor) -> Tensor {
        let mut cache: BTreeMap<&Word, Tensor> = BTreeMap::new();
        let mut out: Option<Tensor> = None;
        for (ws, c) in &self.terms {
            let image = cache.entry(&ws[slot]).or_insert_with(|| f(&ws[slot]));
            let target = out.get_or_insert_with(|| {
                let mut tags = self.tags[..slot].to_vec();
                tags.extend_from_slice(&image.tags);
                tags.extend_from_slice(&self.tags[slot + 1..]);
                Tensor::zero(&tags)
            });
            for (inner, d) in &image.terms {
                let mut words = ws[..slot].to_vec();
                words.extend(inner.iter().cloned());
                words.extend(ws[slot + 1..].iter().cloned());
                target.add_term(words, c * d);
            }
        }
        out.unwrap_or_else(|| {
            // zero input: the output layout is that of the image of the unit
            let image = f(&Word::unit());
            let mut tags = self.tags[..slot].to_vec();
            tags.extend_from_slice(&image.tags);
            tags.extend_from_slice(&self.tags[slot + 1..]);
            Tensor::zero(&tags)
        })
    }

    /// Applies a linear map to one slot, keeping the slot count.
    pub fn map_slot(&self, slot: usize, f: impl Fn(&Word) -> Element) -> Tensor {
        self.expand_slot(slot, |w| Tensor::from_element(&f(w)))
    }

    /// Multiplies slot `i` by slot `j` (in that order, with slot `i`'s product)
    /// and puts the result at position `target` of the reduced tensor.
    /// Positions are 0-based; the paper-style `m^3_{24}` is
    /// `slot_multiply(1, 3, 2)`.
    pub fn slot_multiply(&self, i: usize, j: usize, target: usize) -> Result<Tensor> {
        let n = self.tags.len();
        if i >= n || j >= n || i == j || target >= n - 1 {
            return Err(Error::SlotMismatch {
                expected: format!("distinct slots below {n}, target below {}", n - 1),
                found: format!("i={i}, j={j}, target={target}"),
            });
        }
        if self.tags[i] != self.tags[j] {
            return Err(Error::TagMismatch {
                expected: self.tags[i],
                found: self.tags[j],
            });
        }
        let tag = self.tags[i];
        let rest: Vec<usize> = (0..n).filter(|&k| k != i && k != j).collect();
        let mut tags: Vec<AlgebraTag> = rest.iter().map(|&k| self.tags[k]).collect();
        tags.insert(target, tag);
        let mut out = Tensor::zero(&tags);
        for (ws, c) in &self.terms {
            let mut words: Vec<Word> = rest.iter().map(|&k| ws[k].clone()).collect();
            words.insert(target, ws[i].mul(&ws[j], tag));
            out.add_term(words, c.clone());
        }
        Ok(out)
    }

    /// Applies the counit to slot `slot` and removes it.
    pub fn counit_slot(&self, slot: usize) -> Tensor {
        let mut tags = self.tags.clone();
        tags.remove(slot);
        let mut out = Tensor::zero(&tags);
        for (ws, c) in &self.terms {
            if ws[slot].is_unit() {
                let mut words = ws.clone();
                words.remove(slot);
                out.add_term(words, c.clone());
            }
        }
        out
    }

    /// Reorders slots: slot `k` of the result is slot `order[k]` of `self`.
    pub fn permute(&self, order: &[usize]) -> Tensor {
        assert_eq!(order.len(), self.tags.len(), "permutation length");
        let tags: Vec<AlgebraTag> = order.iter().map(|&k| self.tags[k]).collect();
        let mut out = Tensor::zero(&tags);
        for (ws, c) in &self.terms {
            out.add_term(order.iter().map(|&k| ws[k].clone()).collect(), c.clone());
        }
        out
    }

    /// Reinterprets slot `slot` in algebra `tag`, renormalizing its words.
    pub fn retag_slot(&self, slot: usize, tag: AlgebraTag) -> Result<Tensor> {
        let mut tags = self.tags.clone();
        tags[slot] = tag;
        let mut out = Tensor::zero(&tags);
        for (ws, c) in &self.terms {
            let mut words = ws.clone();
            words[slot] = Word::new(tag, words[slot].0.clone())?;
            out.add_term(words, c.clone());
        }
        Ok(out)
    }

    /// Multiplies all slots together (they must share one algebra).
    pub fn multiply_all(&self) -> Result<Element> {
        let tag = *self.tags.first().ok_or_else(|| Error::SlotMismatch {
            expected: "at least one slot".into(),
            found: "none".into(),
        })?;
        if let Some(&other) = self.tags.iter().find(|&&t| t != tag) {
            return Err(Error::TagMismatch {
                expected: tag,
                found: other,
            });
        }
        let mut out = Element::zero(tag);
        for (ws, c) in &self.terms {
            let w = ws.iter().skip(1).fold(ws[0].clone(), |acc, w| acc.mul(w, tag));
            out.add_term(w, c.clone());
        }
        Ok(out)
    }

    /// A one-slot tensor read as an element.
    pub fn into_element(self) -> Result<Element> {
        if self.tags.len() != 1 {
            return Err(Error::SlotMismatch {
                expected: "one slot".into(),
                found: layout(&self.tags),
            });
        }
        let mut out = Element::zero(self.tags[0]);
        for (mut ws, c) in self.terms {
            out.add_term(ws.pop().expect("one slot"), c);
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        self.render_with(" (x) ")
    }

    pub fn render_latex(&self) -> String {
        render_terms_with(
            self.terms.iter().map(|(ws, c)| {
                (
                    c,
                    ws.iter().map(Word::render_latex).collect::<Vec<_>>().join(" \\otimes "),
                )
            }),
            latex_scalar,
        )
    }

    /// `{"tags": [...], "terms": [{"coeff": "p/q", "slots": [[tree, ...], ...]}]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(ws, c)| {
                json!({
                    "coeff": format_scalar(c),
                    "slots": ws.iter().map(Word::to_json).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({"tags": self.tags.iter().map(|t| t.name()).collect::<Vec<_>>(), "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<Tensor> {
        let tags = json_array(v, "tags")?
            .iter()
            .map(|t| {
                t.as_str()
                    .ok_or_else(|| Error::Json("tags are strings".into()))
                    .and_then(AlgebraTag::from_name)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut out = Tensor::zero(&tags);
        for term in json_array(v, "terms")? {
            let c = parse_scalar(json_str(term, "coeff")?)?;
            let slots = json_array(term, "slots")?;
            if slots.len() != tags.len() {
                return Err(Error::Json(format!("expected {} slots, found {}", tags.len(), slots.len())));
            }
            let ws = tags
                .iter()
                .zip(slots)
                .map(|(&tag, w)| Word::from_json(tag, w))
                .collect::<Result<Vec<_>>>()?;
            out.add_term(ws, c);
        }
        Ok(out)
    }

    pub fn render_with(&self, sep: &str) -> String {
        render_terms(self.terms.iter().map(|(ws, c)| {
            (
                c,
                ws.iter().map(Word::render).collect::<Vec<_>>().join(sep),
            )
        }))
    }
}

pub fn layout(tags: &[AlgebraTag]) -> String {
    tags.iter().map(|t| t.name()).collect::<Vec<_>>().join(" (x) ")
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", layout(&self.tags), self.render())
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for &Tensor {
    type Output = Tensor;
    fn add(self, rhs: &Tensor) -> Tensor {
        self.try_add(rhs).expect("adding tensors of different layouts")
    }
}

impl Sub for &Tensor {
    type Output = Tensor;
    fn sub(self, rhs: &Tensor) -> Tensor {
        self.try_add(&rhs.scale(&-Scalar::one()))
            .expect("subtracting tensors of different layouts")
    }
}

impl Mul for &Tensor {
    type Output = Tensor;
    fn mul(self, rhs: &Tensor) -> Tensor {
        self.try_mul(rhs).expect("multiplying tensors of different layouts")
    }
}

/// Extends a map on single trees multiplicatively to a word (in written order).
pub fn multiplicative(
    word: &Word,
    tags: &[AlgebraTag],
    mut on_factor: impl FnMut(&Tree) -> Tensor,
) -> Tensor {
    word.factors()
        .iter()
        .fold(Tensor::unit(tags), |acc, t| &acc * &on_factor(t))
}

/// Every basis word of total degree `n`, built from the factors an algebra
/// admits: all trees for the pruning algebras, generators for the charge
/// algebras. `Alpha` words are multisets.
pub fn basis_words(tag: AlgebraTag, n: usize) -> Vec<Word> {
    fn rec(tag: AlgebraTag, n: usize, min: Option<&Tree>, prefix: &mut Vec<Tree>, out: &mut Vec<Word>) {
        if n == 0 {
            out.push(Word(prefix.clone()));
            return;
        }
        for k in 1..=n {
            let letters: Vec<Tree> = if tag.is_charge() {
                crate::tree::enumerate(k - 1).iter().map(Tree::v_wrap).collect()
            } else {
                crate::tree::enumerate(k).to_vec()
            };
            for t in letters {
                if tag == AlgebraTag::Alpha && min.is_some_and(|m| t < *m) {
                    continue;
                }
                prefix.push(t.clone());
                rec(tag, n - k, Some(&t), prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(tag, n, None, &mut Vec::new(), &mut out);
    if tag == AlgebraTag::Alpha {
        out.sort();
        out.dedup();
    }
    out
}

pub fn basis_words_up_to(tag: AlgebraTag, n: usize) -> Vec<Word> {
    (0..=n).flat_map(|k| basis_words(tag, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::named::*;

    fn he(trees: &[Tree]) -> Element {
        Element::from_word(AlgebraTag::Electron, Word::new(AlgebraTag::Electron, trees.to_vec()).unwrap())
    }

    #[test]
    fn linear_structure() {
        let x = he(&[y()]);
        assert_eq!(Element::unit(AlgebraTag::Electron).counit(), scalar(1));
        assert!((&x + &(-&x)).is_zero());
        let five = &x.scale(&scalar(2)) + &x.scale(&scalar(3));
        assert_eq!(five, x.scale(&scalar(5)));
        assert_eq!(x.counit(), scalar(0));
        assert_eq!((&x + &Element::unit(AlgebraTag::Electron)).counit(), scalar(1));
    }

    #[test]
    fn free_product_concatenates() {
        let p = &he(&[y()]) * &he(&[deuxdeux()]);
        assert_eq!(p, he(&[y(), deuxdeux()]));
        assert_ne!(p, &he(&[deuxdeux()]) * &he(&[y()]));
    }

    #[test]
    fn alpha_product_commutes() {
        let a = Element::embed_tree(AlgebraTag::Alpha, &troisquatre());
        let b = Element::embed_tree(AlgebraTag::Alpha, &y());
        assert_eq!(&a * &b, &b * &a);
        let words: Vec<_> = (&a * &b).terms().map(|(w, _)| w.clone()).collect();
        assert_eq!(words[0].factors(), &[y(), troisquatre()]);
    }

    #[test]
    fn alpha_nc_product_is_over_product() {
        let yy = &Element::embed_tree(AlgebraTag::AlphaNc, &y()) * &Element::embed_tree(AlgebraTag::AlphaNc, &y());
        let (w, _) = yy.terms().next().unwrap();
        assert_eq!(w.factors(), &[y(), y()]);
        assert_eq!(w.over_tree(), deuxun());
    }

    #[test]
    fn embed_tree_examples() {
        assert_eq!(Element::embed_tree(AlgebraTag::Alpha, &e()), Element::unit(AlgebraTag::Alpha));
        let d = Element::embed_tree(AlgebraTag::Alpha, &deuxun());
        assert_eq!(d.terms().next().unwrap().0.factors(), &[y(), y()]);
        assert_eq!(Element::embed_tree(AlgebraTag::Electron, &troisun()), he(&[troisun()]));
    }

    #[test]
    fn tag_mismatch_is_an_error() {
        let a = Element::unit(AlgebraTag::Alpha);
        let b = Element::unit(AlgebraTag::Electron);
        assert!(matches!(a.try_mul(&b), Err(Error::TagMismatch { .. })));
        assert!(Word::new(AlgebraTag::Alpha, vec![deuxun()]).is_err());
    }

    #[test]
    fn grading() {
        assert_eq!(
            Element::unit(AlgebraTag::Gamma).grade_components().keys().copied().collect::<Vec<_>>(),
            vec![0]
        );
        assert_eq!(he(&[y(), deuxdeux()]).grade_components().keys().copied().collect::<Vec<_>>(), vec![3]);
        let a = Element::from_word(AlgebraTag::Alpha, Word::new(AlgebraTag::Alpha, vec![deuxun().v_wrap()]).unwrap());
        assert_eq!(a.grade_components().keys().copied().collect::<Vec<_>>(), vec![3]);
    }

    #[test]
    fn slot_multiply_merges_slots() {
        use AlgebraTag::*;
        let t = Tensor::product_of(&[
            Element::embed_tree(Electron, &y()),
            Element::unit(Alpha),
            Element::embed_tree(Electron, &deuxdeux()),
            Element::unit(Alpha),
        ]);
        let m = t.slot_multiply(1, 3, 2).unwrap();
        assert_eq!(m.tags(), &[Electron, Electron, Alpha]);
        assert_eq!(
            m,
            Tensor::product_of(&[
                Element::embed_tree(Electron, &y()),
                Element::embed_tree(Electron, &deuxdeux()),
                Element::unit(Alpha)
            ])
        );
        // Y (x) Y (x) e (x) deuxdeux with charge slots 2 and 4: the middle
        // product is the abelianized over-product Y / deuxdeux = troistrois
        let t = Tensor::product_of(&[
            Element::embed_tree(Gamma, &y()),
            Element::embed_tree(Alpha, &y()),
            Element::unit(Gamma),
            Element::embed_tree(Alpha, &deuxdeux()),
        ]);
        let m = t.slot_multiply(1, 3, 1).unwrap();
        assert_eq!(
            m,
            Tensor::product_of(&[
                Element::embed_tree(Gamma, &y()),
                Element::embed_tree(Alpha, &y().over(&deuxdeux())),
                Element::unit(Gamma)
            ])
        );
        assert_eq!(y().over(&deuxdeux()), troistrois());
        assert!(t.slot_multiply(0, 1, 0).is_err());
    }

    #[test]
    fn basis_word_counts() {
        // compositions weighted by Catalan numbers: 1, 1, 3, 10, 35, 126
        let counts: Vec<usize> = (0..=5).map(|n| basis_words(AlgebraTag::Electron, n).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 10, 35, 126]);
        // noncommutative charge words of degree n are in bijection with trees
        let counts: Vec<usize> = (0..=5).map(|n| basis_words(AlgebraTag::AlphaNc, n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42]);
        // partitions weighted by Catalan numbers for the commutative quotient
        // (multisets of generators, C_{d-1} of them in degree d)
        let gens = [0usize, 1, 1, 2, 5, 14, 42];
        let mut oracle = vec![0usize; 7];
        oracle[0] = 1;
        for d in 1..=6 {
            for _ in 0..gens[d] {
                for n in d..=6 {
                    oracle[n] += oracle[n - d];
                }
            }
        }
        let counts: Vec<usize> = (0..=6).map(|n| basis_words(AlgebraTag::Alpha, n).len()).collect();
        assert_eq!(counts, oracle);
        assert_eq!(&counts[..5], &[1, 1, 2, 4, 10]);
    }

    #[test]
    fn scalar_text() {
        assert_eq!(format_scalar(&ratio(-3, 6)), "-1/2");
        assert_eq!(format_scalar(&scalar(2)), "2/1");
        assert_eq!(parse_scalar("4/-8").unwrap(), ratio(-1, 2));
        assert_eq!(parse_scalar("7").unwrap(), scalar(7));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }

    #[test]
    fn json_and_latex() {
        let x = &he(&[y(), deuxdeux()]).scale(&ratio(-1, 2)) + &Element::unit(AlgebraTag::Electron);
        assert_eq!(Element::from_json(&x.to_json()).unwrap(), x);
        assert_eq!(
            x.to_json().to_string(),
            r#"{"tag":"He","terms":[{"coeff":"1/1","word":[]},{"coeff":"-1/2","word":["(e v e)","(e v (e v e))"]}]}"#
        );
        assert_eq!(x.render_latex(), r"1 - \frac{1}{2} (\| \vee \|) \, (\| \vee (\| \vee \|))");
        let t = Tensor::product_of(&[x.clone(), Element::embed_tree(AlgebraTag::Alpha, &deuxun())]);
        assert_eq!(Tensor::from_json(&t.to_json()).unwrap(), t);
        assert!(t.render_latex().contains(r"\otimes"));
        // charge words must consist of generators
        let bad = serde_json::json!({"tag": "Halpha", "terms": [{"coeff": "1", "word": ["((e v e) v e)"]}]});
        assert!(Element::from_json(&bad).is_err());
    }

    #[test]
    fn element_text() {
        let e = AlgebraTag::Electron;
        let x = Element::parse(e, "2 (e v e) * Y2.1 - 1/2 1").unwrap();
        let expected = &he(&[y(), deuxun()]).scale(&scalar(2)) - &Element::unit(e).scale(&ratio(1, 2));
        assert_eq!(x, expected);
        assert_eq!(Element::parse(e, "-(e v e)").unwrap(), -&he(&[y()]));
        assert_eq!(Element::parse(e, "1").unwrap(), Element::unit(e));
        assert_eq!(Element::parse(e, "(e v e) (e v e)").unwrap(), he(&[y(), y()]));
        // in the charge algebra a tree enters through its generators
        let a = Element::parse(AlgebraTag::Alpha, "((e v e) v e)").unwrap();
        assert_eq!(a, Element::parse(AlgebraTag::Alpha, "Y1.1 * Y1.1").unwrap());
        assert!(Element::parse(e, "(e v e").is_err());
        assert!(Element::parse(e, "").is_err());
        assert!(Element::parse(e, "e + ").is_err());
    }
}
