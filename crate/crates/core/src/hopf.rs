//! Pruning coproducts and antipodes of the propagator algebras, and the charge
//! coproduct, coaction and antipode of the charge algebras.
//!
//! Everything is computed on single trees (or generators), memoized, and
//! extended to words multiplicatively. The charge maps are computed once in
//! the noncommutative algebra `HalphaNC`, where a word is a tree read through
//! its over-decomposition; the commutative versions sort each slot.
//!
//! The charge coaction `delta` is *not* multiplicative: it is defined on trees
//! by `delta(t v s) = Delta(t) / delta(V(s))`, so on `Halpha` it is evaluated on
//! the tree whose generators appear in canonical order.

use std::sync::OnceLock;

use num_traits::One;

use crate::algebra::{abelianize, multiplicative, AlgebraTag, Element, Scalar, Tensor, Word};
use crate::error::{Error, Result};
use crate::memo::Memo;
use crate::tree::Tree;

use AlgebraTag::{Alpha, AlphaNc, Electron, Gamma};

/// Deliberate defects used as negative controls for the law checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Corruption {
    /// Drops one non-primitive term of the charge coproduct of each generator.
    ChargeCoproductTerm,
    /// Drops one non-primitive term of the charge coaction on each tree.
    ChargeCoactionTerm,
    /// Drops one inner term of the electron pruning coproduct of each tree.
    ElectronPruningTerm,
    /// Keeps only `-t` in the electron pruning antipode.
    ElectronAntipode,
}

impl Corruption {
    pub const ALL: [Corruption; 4] = [
        Corruption::ChargeCoproductTerm,
        Corruption::ChargeCoactionTerm,
        Corruption::ElectronPruningTerm,
        Corruption::ElectronAntipode,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Corruption::ChargeCoproductTerm => "charge-coproduct-term",
            Corruption::ChargeCoactionTerm => "charge-coaction-term",
            Corruption::ElectronPruningTerm => "electron-pruning-term",
            Corruption::ElectronAntipode => "electron-antipode",
        }
    }

    pub fn from_name(name: &str) -> Option<Corruption> {
        Corruption::ALL.into_iter().find(|c| c.name() == name)
    }
}

/// The structure maps of all tree algebras, with their memo tables.
pub struct HopfMaps {
    corruption: Option<Corruption>,
    pruning_gamma: Memo<Tree, Tensor>,
    pruning_e: Memo<Tree, Tensor>,
    antipode_gamma: Memo<Tree, Element>,
    antipode_e: Memo<Tree, Element>,
    charge_generator: Memo<Tree, Tensor>,
    charge_coaction: Memo<Tree, Tensor>,
    antipode_alpha: Memo<Tree, Element>,
    antipode_alpha_nc: Memo<Tree, Element>,
    pub(crate) electron_coaction: Memo<Tree, Tensor>,
    pub(crate) photon_coaction: Memo<Tree, Tensor>,
}

impl Default for HopfMaps {
    fn default() -> Self {
        HopfMaps::new()
    }
}

static STANDARD: OnceLock<HopfMaps> = OnceLock::new();

impl HopfMaps {
    pub fn new() -> HopfMaps {
        HopfMaps {
            corruption: None,
            pruning_gamma: Memo::new(),
            pruning_e: Memo::new(),
            antipode_gamma: Memo::new(),
            antipode_e: Memo::new(),
            charge_generator: Memo::new(),
            charge_coaction: Memo::new(),
            antipode_alpha: Memo::new(),
            antipode_alpha_nc: Memo::new(),
            electron_coaction: Memo::new(),
            photon_coaction: Memo::new(),
        }
    }

    pub fn with_corruption(corruption: Corruption) -> HopfMaps {
        HopfMaps {
            corruption: Some(corruption),
            ..HopfMaps::new()
        }
    }

    /// The shared, uncorrupted instance used by the free functions.
    pub fn standard() -> &'static HopfMaps {
        STANDARD.get_or_init(HopfMaps::new)
    }

    pub fn corruption(&self) -> Option<Corruption> {
        self.corruption
    }

    // ---- pruning coproducts -------------------------------------------------

    /// `Delta^p_gamma` on a single tree, by the left-pruning recursion.
    pub fn pruning_gamma_tree(&self, t: &Tree) -> Tensor {
        self.pruning_gamma.get_or_compute(t, || {
            let Some((l, r)) = t.split() else {
                return Tensor::unit(&[Gamma, Gamma]);
            };
            let mut out = Tensor::zero(&[Gamma, Gamma]);
            out.add_term(vec![Word::of_tree(Gamma, t), Word::unit()], Scalar::one());
            for (ws, c) in self.pruning_gamma_tree(l).terms() {
                let right = ws[1].single_tree().cloned().unwrap_or_else(Tree::root);
                out.add_term(
                    vec![ws[0].clone(), Word::of_tree(Gamma, &Tree::graft(&right, r))],
                    c.clone(),
                );
            }
            out
        })
    }

    /// `Delta^p_e` on a single tree, by the right-pruning recursion.
    pub fn pruning_e_tree(&self, t: &Tree) -> Tensor {
        let mut out = self.pruning_e_exact(t);
        if self.corruption == Some(Corruption::ElectronPruningTerm) {
            let inner = out
                .terms()
                .filter(|(ws, _)| !ws[0].is_unit() && !ws[1].is_unit())
                .map(|(ws, c)| (ws.clone(), c.clone()))
                .last();
            if let Some((ws, c)) = inner {
                out.add_term(ws, -c);
            }
        }
        out
    }

    fn pruning_e_exact(&self, t: &Tree) -> Tensor {
        self.pruning_e.get_or_compute(t, || {
            let Some((l, r)) = t.split() else {
                return Tensor::unit(&[Electron, Electron]);
            };
            let mut out = Tensor::zero(&[Electron, Electron]);
            out.add_term(vec![Word::unit(), Word::of_tree(Electron, t)], Scalar::one());
            for (ws, c) in self.pruning_e_exact(r).terms() {
                let left = ws[0].single_tree().cloned().unwrap_or_else(Tree::root);
                out.add_term(
                    vec![Word::of_tree(Electron, &Tree::graft(l, &left)), ws[1].clone()],
                    c.clone(),
                );
            }
            out
        })
    }

    pub fn delta_p_gamma(&self, x: &Element) -> Result<Tensor> {
        expect_tag(x, Gamma)?;
        Ok(self.extend(x, &[Gamma, Gamma], |t| self.pruning_gamma_tree(t)))
    }

    pub fn delta_p_e(&self, x: &Element) -> Result<Tensor> {
        expect_tag(x, Electron)?;
        Ok(self.extend(x, &[Electron, Electron], |t| self.pruning_e_tree(t)))
    }

    /// `P(t) = Delta^p_e(t) - t (x) 1 - 1 (x) t`, for `t != e`.
    pub fn reduced_pruning(&self, t: &Tree) -> Result<Tensor> {
        if t.is_root() {
            return Err(Error::RootTree);
        }
        Ok(reduce(&self.pruning_e_tree(t), &Word::of_tree(Electron, t)))
    }

    fn extend(&self, x: &Element, tags: &[AlgebraTag], on_tree: impl Fn(&Tree) -> Tensor) -> Tensor {
        let mut out = Tensor::zero(tags);
        for (w, c) in x.terms() {
            out.add_scaled(&multiplicative(w, tags, &on_tree), c);
        }
        out
    }

    // ---- pruning antipodes --------------------------------------------------

    fn pruning_antipode_tree(&self, t: &Tree, tag: AlgebraTag) -> Element {
        let memo = if tag == Gamma { &self.antipode_gamma } else { &self.antipode_e };
        memo.get_or_compute(t, || {
            if t.is_root() {
                return Element::unit(tag);
            }
            let word = Word::of_tree(tag, t);
            let mut out = Element::from_word(tag, word.clone());
            out = -&out;
            if tag == Electron && self.corruption == Some(Corruption::ElectronAntipode) {
                return out;
            }
            let coproduct = if tag == Gamma {
                self.pruning_gamma_tree(t)
            } else {
                self.pruning_e_tree(t)
            };
            for (ws, c) in reduce(&coproduct, &word).terms() {
                let left = ws[0].single_tree().expect("pruning coproduct of a tree has tree slots");
                let s = self.pruning_antipode_tree(left, tag);
                let right = Element::from_word(tag, ws[1].clone());
                out.add_scaled(&(&s * &right), &-c);
            }
            out
        })
    }

    /// Antipode as an algebra anti-morphism on words.
    fn pruning_antipode(&self, x: &Element, tag: AlgebraTag) -> Element {
        x.map_linear(tag, |w| {
            w.factors()
                .iter()
                .rev()
                .fold(Element::unit(tag), |acc, t| &acc * &self.pruning_antipode_tree(t, tag))
        })
    }

    pub fn antipode_p_e(&self, x: &Element) -> Result<Element> {
        expect_tag(x, Electron)?;
        Ok(self.pruning_antipode(x, Electron))
    }

    pub fn antipode_p_gamma(&self, x: &Element) -> Result<Element> {
        expect_tag(x, Gamma)?;
        Ok(self.pruning_antipode(x, Gamma))
    }

    // ---- charge coproduct and coaction --------------------------------------

    /// Noncommutative charge coproduct of a generator `V(u)`:
    /// `1 (x) V(u) + delta(V(u))`.
    pub fn charge_coproduct_generator(&self, g: &Tree) -> Tensor {
        debug_assert!(g.is_v_generator());
        self.charge_generator.get_or_compute(g, || {
            let mut out = Tensor::zero(&[AlphaNc, AlphaNc]);
            out.add_term(vec![Word::unit(), Word::from_normalized(vec![g.clone()])], Scalar::one());
            out.add_scaled(&self.charge_coaction_tree(g), &Scalar::one());
            if self.corruption == Some(Corruption::ChargeCoproductTerm) && out.len() > 2 {
                let victim = out
                    .terms()
                    .filter(|(ws, _)| !ws[0].is_unit() && !ws[1].is_unit())
                    .map(|(ws, _)| ws.clone())
                    .last();
                if let Some(ws) = victim {
                    let c = out.coeff(&ws);
                    out.add_term(ws, -c);
                }
            }
            out
        })
    }

    /// Noncommutative charge coproduct of a tree read as the word of its
    /// generators.
    pub fn charge_coproduct_tree(&self, t: &Tree) -> Tensor {
        t.decompose_over().iter().fold(Tensor::unit(&[AlphaNc, AlphaNc]), |acc, u| {
            &acc * &self.charge_coproduct_generator(&u.v_wrap())
        })
    }

    /// The noncommutative charge coaction on a tree:
    /// `delta(e) = 1 (x) 1`, `delta(V(t)) = (V (x) Id) delta(t)`,
    /// `delta(t v s) = Delta(t) / delta(V(s))`.
    pub fn charge_coaction_tree(&self, t: &Tree) -> Tensor {
        self.charge_coaction.get_or_compute(t, || {
            let Some((l, r)) = t.split() else {
                return Tensor::unit(&[AlphaNc, AlphaNc]);
            };
            let mut out = if l.is_root() {
                let inner = self.charge_coaction_tree(r);
                let mut out = Tensor::zero(&[AlphaNc, AlphaNc]);
                for (ws, c) in inner.terms() {
                    let wrapped = ws[0].over_tree().v_wrap();
                    out.add_term(vec![Word::from_normalized(vec![wrapped]), ws[1].clone()], c.clone());
                }
                out
            } else {
                &self.charge_coproduct_tree(l) * &self.charge_coaction_tree(&r.v_wrap())
            };
            if self.corruption == Some(Corruption::ChargeCoactionTerm) {
                let victim = out.terms().filter(|(ws, _)| !ws[1].is_unit()).map(|(ws, _)| ws.clone()).last();
                if let Some(ws) = victim {
                    let c = out.coeff(&ws);
                    out.add_term(ws, -c);
                }
            }
            out
        })
    }

    /// `Delta^alpha` on `Halpha`: multiplicative on generator monomials.
    pub fn delta_alpha(&self, x: &Element) -> Result<Tensor> {
        expect_tag(x, Alpha)?;
        Ok(self.extend(x, &[Alpha, Alpha], |g| abelianize_tensor(&self.charge_coproduct_generator(g))))
    }

    /// Lifted `Delta^alpha` on `HalphaNC`.
    pub fn delta_alpha_nc(&self, x: &Element) -> Result<Tensor> {
        expect_tag(x, AlphaNc)?;
        Ok(self.extend(x, &[AlphaNc, AlphaNc], |g| self.charge_coproduct_generator(g)))
    }

    /// The coaction `delta` on `Halpha`. Each monomial is evaluated on the tree
    /// whose generators appear in canonical order; on generators and on the
    /// unit this is independent of that choice.
    pub fn delta_small(&self, x: &Element) -> Result<Tensor> {
        expect_tag(x, Alpha)?;
        let mut out = Tensor::zero(&[Alpha, Alpha]);
        for (w, c) in x.terms() {
            out.add_scaled(&abelianize_tensor(&self.charge_coaction_tree(&w.over_tree())), c);
        }
        Ok(out)
    }

    /// Lifted coaction on `HalphaNC`, where a word is a tree.
    pub fn delta_small_nc(&self, x: &Element) -> Result<Tensor> {
        expect_tag(x, AlphaNc)?;
        let mut out = Tensor::zero(&[AlphaNc, AlphaNc]);
        for (w, c) in x.terms() {
            out.add_scaled(&self.charge_coaction_tree(&w.over_tree()), c);
        }
        Ok(out)
    }

    // ---- charge antipodes ---------------------------------------------------

    fn charge_antipode_generator(&self, g: &Tree, tag: AlgebraTag) -> Element {
        let memo = if tag == Alpha { &self.antipode_alpha } else { &self.antipode_alpha_nc };
        memo.get_or_compute(g, || {
            let word = Word::from_normalized(vec![g.clone()]);
            let mut coproduct = self.charge_coproduct_generator(g);
            if tag == Alpha {
                coproduct = abelianize_tensor(&coproduct);
            }
            let mut out = -&Element::from_word(tag, word.clone());
            for (ws, c) in reduce(&coproduct, &word).terms() {
                let s = self.charge_antipode_word(&ws[0], tag);
                let right = Element::from_word(tag, ws[1].clone());
                out.add_scaled(&(&s * &right), &-c);
            }
            out
        })
    }

    fn charge_antipode_word(&self, w: &Word, tag: AlgebraTag) -> Element {
        w.factors()
            .iter()
            .rev()
            .fold(Element::unit(tag), |acc, g| &acc * &self.charge_antipode_generator(g, tag))
    }

    /// `S^gamma(t) = -t - sum S^gamma(t_(1)) / t_(2)` over the reduced charge
    /// coproduct, extended as an algebra morphism.
    pub fn antipode_alpha(&self, x: &Element) -> Result<Element> {
        expect_tag(x, Alpha)?;
        Ok(x.map_linear(Alpha, |w| self.charge_antipode_word(w, Alpha)))
    }

    /// The same recursion on `HalphaNC`, extended as an anti-morphism.
    pub fn antipode_alpha_nc(&self, x: &Element) -> Result<Element> {
        expect_tag(x, AlphaNc)?;
        Ok(x.map_linear(AlphaNc, |w| self.charge_antipode_word(w, AlphaNc)))
    }

    // ---- generic dispatch ---------------------------------------------------

    /// The coproduct of a Hopf algebra, by tag.
    pub fn coproduct(&self, x: &Element) -> Result<Tensor> {
        match x.tag() {
            Gamma => self.delta_p_gamma(x),
            Electron => self.delta_p_e(x),
            Alpha => self.delta_alpha(x),
            AlphaNc => self.delta_alpha_nc(x),
        }
    }

    /// The antipode of a Hopf algebra, by tag.
    pub fn antipode(&self, x: &Element) -> Result<Element> {
        match x.tag() {
            Gamma => self.antipode_p_gamma(x),
            Electron => self.antipode_p_e(x),
            Alpha => self.antipode_alpha(x),
            AlphaNc => self.antipode_alpha_nc(x),
        }
    }

    pub(crate) fn coproduct_word(&self, tag: AlgebraTag, w: &Word) -> Tensor {
        self.coproduct(&Element::from_word(tag, w.clone()))
            .expect("tag matches by construction")
    }
}

pub(crate) fn expect_tag(x: &Element, tag: AlgebraTag) -> Result<()> {
    if x.tag() != tag {
        return Err(Error::TagMismatch {
            expected: tag,
            found: x.tag(),
        });
    }
    Ok(())
}

/// Removes `w (x) 1` and `1 (x) w` from a two-slot tensor.
fn reduce(coproduct: &Tensor, w: &Word) -> Tensor {
    let mut out = coproduct.clone();
    out.add_term(vec![w.clone(), Word::unit()], -Scalar::one());
    out.add_term(vec![Word::unit(), w.clone()], -Scalar::one());
    out
}

/// Reads every `HalphaNC` slot in the commutative quotient.
pub fn abelianize_tensor(t: &Tensor) -> Tensor {
    let tags: Vec<AlgebraTag> = t
        .tags()
        .iter()
        .map(|&g| if g == AlphaNc { Alpha } else { g })
        .collect();
    let mut out = Tensor::zero(&tags);
    for (ws, c) in t.terms() {
        let words = ws
            .iter()
            .zip(t.tags())
            .map(|(w, &g)| if g == AlphaNc { abelianize(w) } else { w.clone() })
            .collect();
        out.add_term(words, c.clone());
    }
    out
}

/// `Delta^p_gamma(t)` from the factorizations `t = t_1 / t_2` of the free
/// monoid `(Y, /)`. Independent of the pruning recursion.
pub fn pruning_gamma_by_factorization(t: &Tree) -> Tensor {
    let parts = t.decompose_over();
    let mut out = Tensor::zero(&[Gamma, Gamma]);
    for k in 0..=parts.len() {
        let left = Tree::from_over_decomposition(&parts[..k]);
        let right = Tree::from_over_decomposition(&parts[k..]);
        out.add_term(vec![Word::of_tree(Gamma, &left), Word::of_tree(Gamma, &right)], Scalar::one());
    }
    out
}

/// `Delta^p_e(t)` from the factorizations `t = t_1 \ t_2` of `(Y, \)`.
pub fn pruning_e_by_factorization(t: &Tree) -> Tensor {
    let parts = t.decompose_under();
    let mut out = Tensor::zero(&[Electron, Electron]);
    for k in 0..=parts.len() {
        let left = Tree::from_under_decomposition(&parts[..k]);
        let right = Tree::from_under_decomposition(&parts[k..]);
        out.add_term(
            vec![Word::of_tree(Electron, &left), Word::of_tree(Electron, &right)],
            Scalar::one(),
        );
    }
    out
}

pub fn delta_p_gamma(x: &Element) -> Result<Tensor> {
    HopfMaps::standard().delta_p_gamma(x)
}

pub fn delta_p_e(x: &Element) -> Result<Tensor> {
    HopfMaps::standard().delta_p_e(x)
}

pub fn reduced_pruning(t: &Tree) -> Result<Tensor> {
    HopfMaps::standard().reduced_pruning(t)
}

pub fn antipode_p_e(x: &Element) -> Result<Element> {
    HopfMaps::standard().antipode_p_e(x)
}

pub fn antipode_p_gamma(x: &Element) -> Result<Element> {
    HopfMaps::standard().antipode_p_gamma(x)
}

pub fn delta_alpha(x: &Element) -> Result<Tensor> {
    HopfMaps::standard().delta_alpha(x)
}

pub fn delta_small(x: &Element) -> Result<Tensor> {
    HopfMaps::standard().delta_small(x)
}

pub fn delta_alpha_nc(x: &Element) -> Result<Tensor> {
    HopfMaps::standard().delta_alpha_nc(x)
}

pub fn delta_small_nc(x: &Element) -> Result<Tensor> {
    HopfMaps::standard().delta_small_nc(x)
}

pub fn antipode_alpha(x: &Element) -> Result<Element> {
    HopfMaps::standard().antipode_alpha(x)
}

pub fn antipode_alpha_nc(x: &Element) -> Result<Element> {
    HopfMaps::standard().antipode_alpha_nc(x)
}
