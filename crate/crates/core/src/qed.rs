//! Coactions of the charge algebra on the propagator algebras, the QED Hopf
//! algebra `Halpha x| He`, and the electron and photon renormalization
//! coactions.
//!
//! Slot layouts are explicit. A QED element is a two-slot tensor
//! `Halpha (x) He`; the QED coproduct has four slots `[Halpha, He, Halpha, He]`;
//! the electron renormalization coaction has three slots `[He, Halpha, He]`,
//! the last two of which form the QED factor (see [`regroup_electron_coaction`]).

use num_traits::One;

use crate::algebra::{multiplicative, AlgebraTag, Element, Scalar, Tensor, Word};
use crate::error::{Error, Result};
use crate::hopf::{expect_tag, HopfMaps};
use crate::tree::Tree;

use AlgebraTag::{Alpha, AlphaNc, Electron, Gamma};

pub const QED_LAYOUT: [AlgebraTag; 2] = [Alpha, Electron];

impl HopfMaps {
    /// `delta^e` (or `delta^gamma`) on a single tree: the lifted coaction with
    /// its left slot read as one tree and its right slot abelianized.
    fn propagator_coaction_tree(&self, t: &Tree, tag: AlgebraTag) -> Tensor {
        let memo = if tag == Gamma { &self.photon_coaction } else { &self.electron_coaction };
        memo.get_or_compute(t, || {
            let lifted = self.charge_coaction_tree(t);
            let mut out = Tensor::zero(&[tag, Alpha]);
            for (ws, c) in lifted.terms() {
                let right = crate::algebra::abelianize(&ws[1]);
                out.add_term(vec![Word::of_tree(tag, &ws[0].over_tree()), right], c.clone());
            }
            out
        })
    }

    fn propagator_coaction(&self, x: &Element, tag: AlgebraTag) -> Result<Tensor> {
        expect_tag(x, tag)?;
        let mut out = Tensor::zero(&[tag, Alpha]);
        for (w, c) in x.terms() {
            out.add_scaled(&multiplicative(w, &[tag, Alpha], |t| self.propagator_coaction_tree(t, tag)), c);
        }
        Ok(out)
    }

    /// `delta^gamma : Hgamma -> Hgamma (x) Halpha`.
    pub fn delta_gamma_coaction(&self, x: &Element) -> Result<Tensor> {
        self.propagator_coaction(x, Gamma)
    }

    /// `delta^e : He -> He (x) Halpha`.
    pub fn delta_e_coaction(&self, x: &Element) -> Result<Tensor> {
        self.propagator_coaction(x, Electron)
    }

    /// The coaction on single trees through the grafting recursion
    /// `delta(t v s) = sum t_(1) v s_(p) (x) t_(2) / s_(alpha)`, with `t_(1)`
    /// taken from the lifted charge coproduct so that it is a tree.
    pub fn propagator_coaction_by_recursion(&self, t: &Tree, tag: AlgebraTag) -> Tensor {
        let Some((l, r)) = t.split() else {
            return Tensor::unit(&[tag, Alpha]);
        };
        let charge = self.charge_coproduct_tree(l);
        let inner = self.propagator_coaction_by_recursion(r, tag);
        let mut out = Tensor::zero(&[tag, Alpha]);
        for (a, c1) in charge.terms() {
            let t1 = a[0].over_tree();
            let t2 = crate::algebra::abelianize(&a[1]);
            for (b, c2) in inner.terms() {
                let s_p = b[0].single_tree().cloned().unwrap_or_else(Tree::root);
                out.add_term(
                    vec![Word::of_tree(tag, &Tree::graft(&t1, &s_p)), t2.mul(&b[1], Alpha)],
                    c1 * c2,
                );
            }
        }
        out
    }

    /// `Delta^e = (delta^e (x) Id) Delta^p_e`, layout `[He, Halpha, He]`.
    pub fn electron_renorm_coaction(&self, x: &Element) -> Result<Tensor> {
        let pruned = self.delta_p_e(x)?;
        Ok(pruned.expand_slot(0, |w| self.word_coaction(w, Electron)))
    }

    fn word_coaction(&self, w: &Word, tag: AlgebraTag) -> Tensor {
        multiplicative(w, &[tag, Alpha], |t| self.propagator_coaction_tree(t, tag))
    }

    /// `Delta^e` on a single tree from the grafting recursion
    /// `Delta^e(t v s) = 1 (x) 1 (x) t v s + sum t_(1) v s_(1) (x) t_(2) / s_(2) (x) s_(3)`.
    pub fn electron_renorm_by_recursion(&self, t: &Tree) -> Tensor {
        let layout = [Electron, Alpha, Electron];
        let Some((l, r)) = t.split() else {
            return Tensor::unit(&layout);
        };
        let mut out = Tensor::zero(&layout);
        out.add_term(vec![Word::unit(), Word::unit(), Word::of_tree(Electron, t)], Scalar::one());
        let charge = self.charge_coproduct_tree(l);
        let inner = self.electron_renorm_by_recursion(r);
        for (a, c1) in charge.terms() {
            let t1 = a[0].over_tree();
            let t2 = crate::algebra::abelianize(&a[1]);
            for (b, c2) in inner.terms() {
                let s1 = b[0].single_tree().cloned().unwrap_or_else(Tree::root);
                out.add_term(
                    vec![
                        Word::of_tree(Electron, &Tree::graft(&t1, &s1)),
                        t2.mul(&b[1], Alpha),
                        b[2].clone(),
                    ],
                    c1 * c2,
                );
            }
        }
        out
    }

    /// `sigma(t_1 ... t_n) = t_1 / ... / t_n` in `Halpha`.
    pub fn sigma(&self, x: &Element) -> Result<Element> {
        expect_tag(x, Gamma)?;
        Ok(x.map_linear(Alpha, |w| Element::embed_word(Alpha, w.factors())))
    }

    /// `Delta^gamma = m_23 (delta^gamma (x) sigma) Delta^p_gamma`.
    pub fn photon_renorm_coaction(&self, x: &Element) -> Result<Tensor> {
        expect_tag(x, Gamma)?;
        let parts = SigmaParts {
            coproduct: &|w: &Word| self.coproduct_word(Gamma, w),
            coaction: &|w: &Word| self.word_coaction(w, Gamma),
            sigma: &|w: &Word| Element::embed_word(Alpha, w.factors()),
        };
        delta_sigma(&parts, x)
    }

    /// The semidirect coproduct `Delta^qed(a (x) b) = Delta^alpha(a) [(delta^e (x) Id) Delta^p_e(b)]`
    /// on a QED element (layout `[Halpha, He]`).
    pub fn qed_coproduct(&self, x: &Tensor) -> Result<Tensor> {
        self.semidirect_for(Electron).coproduct(x)
    }

    pub fn qed_antipode(&self, x: &Tensor) -> Result<Tensor> {
        self.semidirect_for(Electron).antipode(x)
    }

    pub fn qed_counit(x: &Tensor) -> Scalar {
        semidirect_counit(x)
    }

    /// The semidirect structure `Halpha x| Hp` for `Hp` one of the
    /// propagator algebras.
    pub fn semidirect_for(&self, propagator: AlgebraTag) -> Semidirect<'_> {
        Semidirect {
            charge_tag: Alpha,
            propagator_tag: propagator,
            charge_coproduct: Box::new(move |w| self.coproduct_word(Alpha, w)),
            propagator_coproduct: Box::new(move |w| self.coproduct_word(propagator, w)),
            coaction: Box::new(move |w| self.word_coaction(w, propagator)),
            charge_antipode: Box::new(move |w| {
                self.antipode(&Element::from_word(Alpha, w.clone())).expect("charge tag")
            }),
            propagator_antipode: Box::new(move |w| {
                self.antipode(&Element::from_word(propagator, w.clone())).expect("propagator tag")
            }),
        }
    }
}

type WordToTensor<'a> = Box<dyn Fn(&Word) -> Tensor + Sync + 'a>;
type WordToElement<'a> = Box<dyn Fn(&Word) -> Element + Sync + 'a>;

/// The smash coproduct on `Hc (x) Hp` built from `Delta^c`, `Delta^p` and a
/// right coaction `delta : Hp -> Hp (x) Hc`, all given on basis words.
pub struct Semidirect<'a> {
    pub charge_tag: AlgebraTag,
    pub propagator_tag: AlgebraTag,
    pub charge_coproduct: WordToTensor<'a>,
    pub propagator_coproduct: WordToTensor<'a>,
    pub coaction: WordToTensor<'a>,
    pub charge_antipode: WordToElement<'a>,
    pub propagator_antipode: WordToElement<'a>,
}

impl Semidirect<'_> {
    pub fn layout(&self) -> [AlgebraTag; 2] {
        [self.charge_tag, self.propagator_tag]
    }

    fn check(&self, x: &Tensor) -> Result<()> {
        if x.tags() != self.layout() {
            return Err(Error::SlotMismatch {
                expected: crate::algebra::layout(&self.layout()),
                found: crate::algebra::layout(x.tags()),
            });
        }
        Ok(())
    }

    /// `(delta (x) Id) Delta^p(b)`, layout `[Hp, Hc, Hp]`.
    pub fn coaction_on_propagator(&self, b: &Word) -> Tensor {
        (self.propagator_coproduct)(b).expand_slot(0, |w| (self.coaction)(w))
    }

    /// Layout `[Hc, Hp, Hc, Hp]`.
    pub fn coproduct(&self, x: &Tensor) -> Result<Tensor> {
        self.check(x)?;
        let (c, p) = (self.charge_tag, self.propagator_tag);
        let layout = [c, p, c, p];
        let mut out = Tensor::zero(&layout);
        for (ws, coeff) in x.terms() {
            let mut charge_part = Tensor::zero(&layout);
            for (a, k) in (self.charge_coproduct)(&ws[0]).terms() {
                charge_part.add_term(vec![a[0].clone(), Word::unit(), a[1].clone(), Word::unit()], k.clone());
            }
            let mut prop_part = Tensor::zero(&layout);
            for (b, k) in self.coaction_on_propagator(&ws[1]).terms() {
                prop_part.add_term(vec![Word::unit(), b[0].clone(), b[1].clone(), b[2].clone()], k.clone());
            }
            out.add_scaled(&(&charge_part * &prop_part), coeff);
        }
        Ok(out)
    }

    /// `S(a (x) b) = S^c(a) [tau (Id (x) S^c) delta (S^p b)]`; needs `Hc`
    /// commutative.
    pub fn antipode(&self, x: &Tensor) -> Result<Tensor> {
        self.check(x)?;
        let layout = self.layout();
        let mut out = Tensor::zero(&layout);
        for (ws, coeff) in x.terms() {
            let sp = (self.propagator_antipode)(&ws[1]);
            let mut twisted = Tensor::zero(&[self.propagator_tag, self.charge_tag]);
            for (w, k) in sp.terms() {
                twisted.add_scaled(&(self.coaction)(w), k);
            }
            let twisted = twisted.map_slot(1, |w| (self.charge_antipode)(w)).permute(&[1, 0]);
            let sc = Tensor::product_of(&[
                (self.charge_antipode)(&ws[0]),
                Element::unit(self.propagator_tag),
            ]);
            out.add_scaled(&(&sc * &twisted), coeff);
        }
        Ok(out)
    }
}

pub fn semidirect_counit(x: &Tensor) -> Scalar {
    x.counit_slot(0).counit_slot(0).coeff(&[])
}

/// A QED basis element `a (x) b`.
pub fn qed_element(a: &Element, b: &Element) -> Result<Tensor> {
    expect_tag(a, Alpha)?;
    expect_tag(b, Electron)?;
    Ok(Tensor::product_of(&[a.clone(), b.clone()]))
}

/// The maps entering the combinator `delta^sigma = m_23 (delta (x) sigma) Delta^p`.
pub struct SigmaParts<'a> {
    pub coproduct: &'a (dyn Fn(&Word) -> Tensor + 'a),
    pub coaction: &'a (dyn Fn(&Word) -> Tensor + 'a),
    pub sigma: &'a (dyn Fn(&Word) -> Element + 'a),
}

/// `delta^sigma(b) = sum b_(1l) (x) b_(1r) sigma(b_(2))`.
pub fn delta_sigma(parts: &SigmaParts<'_>, x: &Element) -> Result<Tensor> {
    let mut out: Option<Tensor> = None;
    for (w, c) in x.terms() {
        let image = (parts.coproduct)(w)
            .expand_slot(0, |v| (parts.coaction)(v))
            .map_slot(2, |v| (parts.sigma)(v))
            .slot_multiply(1, 2, 1)?;
        match &mut out {
            None => out = Some(image.scale(c)),
            Some(acc) => acc.add_scaled(&image, c),
        }
    }
    Ok(out.unwrap_or_else(|| {
        let unit = (parts.coproduct)(&Word::unit()).expand_slot(0, |v| (parts.coaction)(v));
        let tags = [unit.tags()[0], unit.tags()[1]];
        Tensor::zero(&tags)
    }))
}

/// `He (x) Halpha (x) He` read as `He (x) Hqed`: the last two slots become one
/// QED factor. The adapter is the identity on coefficients; it only moves slot
/// boundaries, and [`ungroup_electron_coaction`] inverts it.
pub fn regroup_electron_coaction(t: &Tensor) -> Result<Vec<(Word, Tensor)>> {
    if t.tags() != [Electron, Alpha, Electron] {
        return Err(Error::SlotMismatch {
            expected: "He (x) Halpha (x) He".into(),
            found: crate::algebra::layout(t.tags()),
        });
    }
    let mut groups: std::collections::BTreeMap<Word, Tensor> = std::collections::BTreeMap::new();
    for (ws, c) in t.terms() {
        groups
            .entry(ws[0].clone())
            .or_insert_with(|| Tensor::zero(&QED_LAYOUT))
            .add_term(vec![ws[1].clone(), ws[2].clone()], c.clone());
    }
    Ok(groups.into_iter().collect())
}

pub fn ungroup_electron_coaction(groups: &[(Word, Tensor)]) -> Tensor {
    let mut out = Tensor::zero(&[Electron, Alpha, Electron]);
    for (w, qed) in groups {
        for (ws, c) in qed.terms() {
            out.add_term(vec![w.clone(), ws[0].clone(), ws[1].clone()], c.clone());
        }
    }
    out
}

pub fn delta_gamma_coaction(x: &Element) -> Result<Tensor> {
    HopfMaps::standard().delta_gamma_coaction(x)
}

pub fn delta_e_coaction(x: &Element) -> Result<Tensor> {
    HopfMaps::standard().delta_e_coaction(x)
}

pub fn electron_renorm_coaction(x: &Element) -> Result<Tensor> {
    HopfMaps::standard().electron_renorm_coaction(x)
}

pub fn photon_renorm_coaction(x: &Element) -> Result<Tensor> {
    HopfMaps::standard().photon_renorm_coaction(x)
}

pub fn sigma(x: &Element) -> Result<Element> {
    HopfMaps::standard().sigma(x)
}

pub fn semidirect_coproduct(x: &Tensor) -> Result<Tensor> {
    HopfMaps::standard().qed_coproduct(x)
}

pub fn semidirect_antipode(x: &Tensor) -> Result<Tensor> {
    HopfMaps::standard().qed_antipode(x)
}

/// A single tree of `HalphaNC` read as an element of `Hgamma`: the
/// identification used to compare the photon coaction with the lifted charge
/// coproduct.
pub fn nc_as_photon_tree(t: &Tensor) -> Result<Tensor> {
    if t.tags() != [AlphaNc, AlphaNc] {
        return Err(Error::SlotMismatch {
            expected: "HalphaNC (x) HalphaNC".into(),
            found: crate::algebra::layout(t.tags()),
        });
    }
    let mut out = Tensor::zero(&[Gamma, Alpha]);
    for (ws, c) in t.terms() {
        out.add_term(
            vec![Word::of_tree(Gamma, &ws[0].over_tree()), crate::algebra::abelianize(&ws[1])],
            c.clone(),
        );
    }
    Ok(out)
}
