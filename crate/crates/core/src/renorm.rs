//! Characters on the tree algebras, tree-expanded propagators, the
//! renormalization factors `Z_3`, `Z_2`, the Ward substitution and the
//! order-by-order Dyson checks.
//!
//! Characters take values in [`RingValue`]. Products of values are always
//! taken left to right, in word order and then in slot order, so that a
//! noncommutative propagator character makes the convention observable.

use std::collections::BTreeMap;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::algebra::{AlgebraTag, Element, Tensor, Word};
use crate::error::{Error, Result};
use crate::hopf::HopfMaps;
use crate::series::{series_inverse, RingValue, TruncatedSeries};
use crate::tree::{self, enumerate, enumerate_up_to, Tree};

use AlgebraTag::{Alpha, AlphaNc, Electron, Gamma};

/// An algebra morphism from a tree algebra to a ring, given by its values
/// on single trees (`Hgamma`, `He`) or on generators `V(u)` (`Halpha`).
#[derive(Clone, PartialEq)]
pub struct Character {
    tag: AlgebraTag,
    values: BTreeMap<Tree, RingValue>,
}

impl Character {
    pub fn new(tag: AlgebraTag, values: BTreeMap<Tree, RingValue>) -> Result<Character> {
        let tag = if tag == AlphaNc { Alpha } else { tag };
        if values.keys().any(Tree::is_root) {
            return Err(Error::Parse("the root tree always maps to the identity".into()));
        }
        if tag == Alpha {
            if let Some(bad) = values.keys().find(|t| !t.is_v_generator()) {
                return Err(Error::NotGenerator(bad.render()));
            }
            let vs: Vec<(&Tree, &RingValue)> = values.iter().collect();
            for (i, (s, a)) in vs.iter().enumerate() {
                for (t, b) in &vs[i + 1..] {
                    if !a.commutes(b) {
                        return Err(Error::NonCommuting(format!("values on {s} and {t}")));
                    }
                }
            }
        }
        Ok(Character { tag, values })
    }

    /// The character that vanishes on every nonroot tree.
    pub fn trivial(tag: AlgebraTag) -> Character {
        Character {
            tag: if tag == AlphaNc { Alpha } else { tag },
            values: BTreeMap::new(),
        }
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    pub fn values(&self) -> &BTreeMap<Tree, RingValue> {
        &self.values
    }

    fn accepts(&self, tag: AlgebraTag) -> bool {
        tag == self.tag || (self.tag == Alpha && tag == AlphaNc)
    }

    /// Value on a letter. A character with no entries is the trivial one.
    fn letter(&self, t: &Tree) -> Result<RingValue> {
        if self.values.is_empty() {
            return Ok(RingValue::zero());
        }
        self.values
            .get(t)
            .cloned()
            .ok_or_else(|| Error::MissingValue(t.render()))
    }

    pub fn evaluate_word(&self, w: &Word) -> Result<RingValue> {
        w.factors()
            .iter()
            .try_fold(RingValue::one(), |acc, t| acc.try_mul(&self.letter(t)?))
    }

    /// Value on a single tree: the letter itself for the propagator
    /// algebras, the product over its generators for the charge algebra.
    pub fn on_tree(&self, t: &Tree) -> Result<RingValue> {
        self.evaluate_word(&Word::of_tree(self.tag, t))
    }

    pub fn evaluate(&self, x: &Element) -> Result<RingValue> {
        if !self.accepts(x.tag()) {
            return Err(Error::TagMismatch {
                expected: self.tag,
                found: x.tag(),
            });
        }
        x.terms().try_fold(RingValue::zero(), |acc, (w, c)| {
            acc.try_add(&self.evaluate_word(w)?.scale(c))
        })
    }

    /// `{tree-text: value}`.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (t, v) in &self.values {
            m.insert(t.render(), v.to_json());
        }
        Value::Object(m)
    }

    pub fn from_json(tag: AlgebraTag, v: &Value) -> Result<Character> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Json("a character table is an object".into()))?;
        let mut values = BTreeMap::new();
        for (k, x) in obj {
            values.insert(tree::parse(k)?, RingValue::from_json(x)?);
        }
        Character::new(tag, values)
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Character({}, {})", self.tag, self.to_json())
    }
}

/// `sum c prod_i chi_i(w_i)` over the terms of `t`, slots multiplied left to right.
pub fn pair_evaluate(chars: &[&Character], t: &Tensor) -> Result<RingValue> {
    if chars.len() != t.tags().len() {
        return Err(Error::SlotMismatch {
            expected: format!("{} characters", t.tags().len()),
            found: chars.len().to_string(),
        });
    }
    for (c, &tag) in chars.iter().zip(t.tags()) {
        if !c.accepts(tag) {
            return Err(Error::TagMismatch { expected: c.tag, found: tag });
        }
    }
    t.terms().try_fold(RingValue::zero(), |acc, (ws, c)| {
        let v = chars
            .iter()
            .zip(ws)
            .try_fold(RingValue::one(), |p, (ch, w)| p.try_mul(&ch.evaluate_word(w)?))?;
        acc.try_add(&v.scale(c))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingKind {
    Scalar,
    Matrix,
}

impl RingKind {
    pub fn from_name(name: &str) -> Option<RingKind> {
        match name {
            "scalar" => Some(RingKind::Scalar),
            "matrix" => Some(RingKind::Matrix),
            _ => None,
        }
    }
}

/// A seeded random character with values on all letters of order at most
/// `max_order`. On `Halpha` the matrix kind draws scalar multiples of the
/// identity, as the domain is commutative.
pub fn make_toy_character(tag: AlgebraTag, seed: u64, kind: RingKind, d: usize, max_order: usize) -> Character {
    let tag = if tag == AlphaNc { Alpha } else { tag };
    let salt = match tag {
        Gamma => 1,
        Electron => 2,
        Alpha | AlphaNc => 3,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(salt));
    let mut values = BTreeMap::new();
    for t in enumerate_up_to(max_order) {
        let letter = match tag {
            Alpha => {
                if t.order() == max_order {
                    continue;
                }
                t.v_wrap()
            }
            _ if t.is_root() => continue,
            _ => t,
        };
        let v = match (kind, tag) {
            (RingKind::Scalar, _) => RingValue::random(&mut rng, None),
            (RingKind::Matrix, Alpha) => {
                let c = RingValue::random(&mut rng, None);
                RingValue::scalar_matrix(d, &c.as_scalar().expect("scalar"))
            }
            (RingKind::Matrix, _) => RingValue::random(&mut rng, Some(d)),
        };
        values.insert(letter, v);
    }
    Character::new(tag, values).expect("toy values are admissible")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpansionKind {
    /// `D(alpha_0)`, coefficients `U^gamma(t)`.
    BarePhoton,
    /// `S(alpha_0)`, coefficients `U^e(t)`.
    BareElectron,
    /// `D-bar(alpha)`, coefficients `R^gamma(t)`.
    RenormalizedPhoton,
    /// `S-bar(alpha)`, coefficients `R^e(t)`.
    RenormalizedElectron,
}

/// A propagator expanded over trees: `sum_t c(t) x^|t|` for `|t| <= order`.
#[derive(Clone, Debug, PartialEq)]
pub struct PropagatorExpansion {
    pub kind: ExpansionKind,
    pub order: usize,
    pub coefficients: BTreeMap<Tree, RingValue>,
}

impl PropagatorExpansion {
    pub fn from_fn(
        kind: ExpansionKind,
        order: usize,
        f: impl Fn(&Tree) -> Result<RingValue>,
    ) -> Result<PropagatorExpansion> {
        let mut coefficients = BTreeMap::new();
        for t in enumerate_up_to(order) {
            coefficients.insert(t.clone(), f(&t)?);
        }
        Ok(PropagatorExpansion {
            kind,
            order,
            coefficients,
        })
    }

    /// The series in one variable obtained by summing trees of equal order.
    pub fn series(&self) -> Result<TruncatedSeries> {
        let mut coeffs = vec![RingValue::zero(); self.order + 1];
        for (t, v) in &self.coefficients {
            coeffs[t.order()] = coeffs[t.order()].try_add(v)?;
        }
        Ok(TruncatedSeries::new(self.order, coeffs))
    }
}

pub fn bare_photon(u: &Character, n: usize) -> Result<PropagatorExpansion> {
    PropagatorExpansion::from_fn(ExpansionKind::BarePhoton, n, |t| u.on_tree(t))
}

pub fn bare_electron(u: &Character, n: usize) -> Result<PropagatorExpansion> {
    PropagatorExpansion::from_fn(ExpansionKind::BareElectron, n, |t| u.on_tree(t))
}

/// `Z_3 = 1 - sum_t C^gamma(V(t)) alpha^(|t|+1)`.
pub fn z3_series(c_gamma: &Character, n: usize) -> Result<TruncatedSeries> {
    let mut coeffs = vec![RingValue::one()];
    for k in 1..=n {
        let mut acc = RingValue::zero();
        for t in enumerate(k - 1).iter() {
            acc = acc.try_add(&c_gamma.letter(&t.v_wrap())?)?;
        }
        coeffs.push(-&acc);
    }
    Ok(TruncatedSeries::new(n, coeffs))
}

/// `1 + sum_{t != e} C^e(S^p_e(t)) alpha^|t|`, summed over single trees.
/// This is the inverse of [`z2_series`].
pub fn z2_inverse_series(maps: &HopfMaps, c_e: &Character, n: usize) -> Result<TruncatedSeries> {
    let mut coeffs = vec![RingValue::one()];
    for k in 1..=n {
        let mut acc = RingValue::zero();
        for t in enumerate(k).iter() {
            let s = maps.antipode_p_e(&Element::embed_tree(Electron, t))?;
            acc = acc.try_add(&c_e.evaluate(&s)?)?;
        }
        coeffs.push(acc);
    }
    Ok(TruncatedSeries::new(n, coeffs))
}

/// The electron renormalization factor entering `S-bar Z_2 = S(alpha_0)`
/// together with [`renormalized_electron`]: the inverse of
/// [`z2_inverse_series`], which equals `sum_t C^e(t) alpha^|t|`.
pub fn z2_series(maps: &HopfMaps, c_e: &Character, n: usize) -> Result<TruncatedSeries> {
    series_inverse(&z2_inverse_series(maps, c_e, n)?)
}

/// Ward: `alpha_0(alpha) = alpha Z_3(alpha)^-1`.
pub fn ward_alpha0(z3: &TruncatedSeries) -> Result<TruncatedSeries> {
    Ok(series_inverse(z3)?.times_alpha())
}

/// `R^gamma(t) = sum U(t_(1)) C^gamma(t_(2))` over `Delta^gamma(t)`.
pub fn renormalized_photon(maps: &HopfMaps, u: &Character, c_gamma: &Character, t: &Tree) -> Result<RingValue> {
    let d = maps.photon_renorm_coaction(&Element::embed_tree(Gamma, t))?;
    pair_evaluate(&[u, c_gamma], &d)
}

/// `R^e(t) = sum U(t_(1)) C^gamma(t_(2)) C^e(S^p_e t_(3))` over `Delta^e(t)`.
pub fn renormalized_electron(
    maps: &HopfMaps,
    u: &Character,
    c_gamma: &Character,
    c_e: &Character,
    t: &Tree,
) -> Result<RingValue> {
    let d = maps.electron_renorm_coaction(&Element::embed_tree(Electron, t))?;
    let twisted = d.map_slot(2, |w| {
        maps.antipode_p_e(&Element::from_word(Electron, w.clone()))
            .expect("slot 3 of Delta^e lies in He")
    });
    pair_evaluate(&[u, c_gamma, c_e], &twisted)
}

/// Per-order comparison of the two sides of a Dyson formula.
#[derive(Clone, Debug, PartialEq)]
pub struct DysonReport {
    pub name: &'static str,
    pub order: usize,
    pub lhs: TruncatedSeries,
    pub rhs: TruncatedSeries,
    pub residuals: Vec<RingValue>,
}

impl DysonReport {
    fn new(name: &'static str, lhs: TruncatedSeries, rhs: TruncatedSeries) -> Result<DysonReport> {
        let residuals = lhs.try_sub(&rhs)?.coeffs().to_vec();
        Ok(DysonReport {
            name,
            order: residuals.len() - 1,
            lhs,
            rhs,
            residuals,
        })
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.residuals.iter().position(|r| !r.is_zero())
    }

    pub fn passed(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check": self.name,
            "order": self.order,
            "per_order_residuals": self.residuals.iter().map(RingValue::to_json).collect::<Vec<_>>(),
            "first_failure": self.first_failure(),
            "status": if self.passed() { "pass" } else { "fail" },
        })
    }
}

/// `D-bar(alpha) Z_3(alpha) = D(alpha_0(alpha))` up to `alpha^n`.
pub fn dyson_check_photon(maps: &HopfMaps, u: &Character, c_gamma: &Character, n: usize) -> Result<DysonReport> {
    let z3 = z3_series(c_gamma, n)?;
    let alpha0 = ward_alpha0(&z3)?;
    let bare = bare_photon(u, n)?.series()?;
    let renormalized = PropagatorExpansion::from_fn(ExpansionKind::RenormalizedPhoton, n, |t| {
        renormalized_photon(maps, u, c_gamma, t)
    })?
    .series()?;
    DysonReport::new("photon", renormalized.try_mul(&z3)?, bare.substitute(&alpha0)?)
}

/// `S-bar(alpha) Z_2(alpha) = S(alpha_0(alpha))` up to `alpha^n`.
pub fn dyson_check_electron(
    maps: &HopfMaps,
    u: &Character,
    c_gamma: &Character,
    c_e: &Character,
    n: usize,
) -> Result<DysonReport> {
    let alpha0 = ward_alpha0(&z3_series(c_gamma, n)?)?;
    let z2 = z2_series(maps, c_e, n)?;
    let bare = bare_electron(u, n)?.series()?;
    let renormalized = PropagatorExpansion::from_fn(ExpansionKind::RenormalizedElectron, n, |t| {
        renormalized_electron(maps, u, c_gamma, c_e, t)
    })?
    .series()?;
    DysonReport::new("electron", renormalized.try_mul(&z2)?, bare.substitute(&alpha0)?)
}
