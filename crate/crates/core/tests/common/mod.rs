//! Shared helpers and the worked-example tables for trees of order at most three.
#![allow(dead_code)]

use num_rational::BigRational;
use treehopf::tree::named;
use treehopf::*;

use AlgebraTag::{Alpha, Electron, Gamma};

pub fn tree(name: &str) -> Tree {
    match name {
        "e" => named::e(),
        "Y" => named::y(),
        "deuxun" => named::deuxun(),
        "deuxdeux" => named::deuxdeux(),
        "troisun" => named::troisun(),
        "troisdeux" => named::troisdeux(),
        "troistrois" => named::troistrois(),
        "troisquatre" => named::troisquatre(),
        "troiscinq" => named::troiscinq(),
        other => panic!("unknown tree {other}"),
    }
}

/// A slot is a `*`-separated product of named trees, each embedded in `tag`.
pub fn slot(tag: AlgebraTag, text: &str) -> Element {
    text.split('*')
        .map(|n| Element::embed_tree(tag, &tree(n.trim())))
        .fold(Element::unit(tag), |acc, x| &acc * &x)
}

pub fn element(tag: AlgebraTag, terms: &[(i64, &str)]) -> Element {
    let mut out = Element::zero(tag);
    for (c, s) in terms {
        out = &out + &slot(tag, s).scale(&BigRational::from_integer((*c).into()));
    }
    out
}

pub fn tensor(tags: &[AlgebraTag], terms: &[(i64, &[&str])]) -> Tensor {
    let mut out = Tensor::zero(tags);
    for (c, slots) in terms {
        let parts: Vec<Element> = tags.iter().zip(slots.iter()).map(|(&t, s)| slot(t, s)).collect();
        out.add_scaled(&Tensor::product_of(&parts), &BigRational::from_integer((*c).into()));
    }
    out
}

pub fn maps() -> &'static HopfMaps {
    HopfMaps::standard()
}

/// Electron pruning antipode on five trees.
pub const ANTIPODE_P_E: &[(&str, &[(i64, &str)])] = &[
    ("Y", &[(-1, "Y")]),
    ("deuxdeux", &[(-1, "deuxdeux"), (1, "Y*Y")]),
    ("deuxun", &[(-1, "deuxun")]),
    ("troiscinq", &[(-1, "troiscinq"), (1, "deuxdeux*Y"), (1, "Y*deuxdeux"), (-1, "Y*Y*Y")]),
    ("troisquatre", &[(-1, "troisquatre"), (1, "Y*deuxun")]),
];

/// Charge coproduct on four generators.
pub const DELTA_ALPHA: &[(&str, &[(i64, &[&str])])] = &[
    ("Y", &[(1, &["Y", "e"]), (1, &["e", "Y"])]),
    ("deuxdeux", &[(1, &["deuxdeux", "e"]), (1, &["e", "deuxdeux"])]),
    ("troisquatre", &[(1, &["troisquatre", "e"]), (1, &["deuxdeux", "Y"]), (1, &["e", "troisquatre"])]),
    ("troiscinq", &[(1, &["troiscinq", "e"]), (1, &["e", "troiscinq"])]),
];

/// Charge coaction on the same generators.
pub const DELTA_SMALL: &[(&str, &[(i64, &[&str])])] = &[
    ("Y", &[(1, &["Y", "e"])]),
    ("deuxdeux", &[(1, &["deuxdeux", "e"])]),
    ("troisquatre", &[(1, &["troisquatre", "e"]), (1, &["deuxdeux", "Y"])]),
    ("troiscinq", &[(1, &["troiscinq", "e"])]),
];

/// Electron renormalization coaction, slots `He (x) Halpha (x) He`.
pub const DELTA_E: &[(&str, &[(i64, &[&str])])] = &[
    ("e", &[(1, &["e", "e", "e"])]),
    ("Y", &[(1, &["Y", "e", "e"]), (1, &["e", "e", "Y"])]),
    ("deuxun", &[(1, &["deuxun", "e", "e"]), (1, &["Y", "Y", "e"]), (1, &["e", "e", "deuxun"])]),
    ("deuxdeux", &[(1, &["deuxdeux", "e", "e"]), (1, &["Y", "e", "Y"]), (1, &["e", "e", "deuxdeux"])]),
    (
        "troisun",
        &[
            (1, &["troisun", "e", "e"]),
            (2, &["deuxun", "Y", "e"]),
            (1, &["Y", "deuxun", "e"]),
            (1, &["e", "e", "troisun"]),
        ],
    ),
    (
        "troisdeux",
        &[(1, &["troisdeux", "e", "e"]), (1, &["Y", "deuxdeux", "e"]), (1, &["e", "e", "troisdeux"])],
    ),
    (
        "troistrois",
        &[
            (1, &["troistrois", "e", "e"]),
            (1, &["deuxdeux", "Y", "e"]),
            (1, &["deuxun", "e", "Y"]),
            (1, &["Y", "Y", "Y"]),
            (1, &["e", "e", "troistrois"]),
        ],
    ),
    (
        "troisquatre",
        &[
            (1, &["troisquatre", "e", "e"]),
            (1, &["deuxdeux", "Y", "e"]),
            (1, &["Y", "e", "deuxun"]),
            (1, &["e", "e", "troisquatre"]),
        ],
    ),
    (
        "troiscinq",
        &[
            (1, &["troiscinq", "e", "e"]),
            (1, &["deuxdeux", "e", "Y"]),
            (1, &["Y", "e", "deuxdeux"]),
            (1, &["e", "e", "troiscinq"]),
        ],
    ),
];

/// Photon renormalization coaction, slots `Hgamma (x) Halpha`.
pub const DELTA_GAMMA: &[(&str, &[(i64, &[&str])])] = &[
    ("e", &[(1, &["e", "e"])]),
    ("Y", &[(1, &["Y", "e"]), (1, &["e", "Y"])]),
    ("deuxun", &[(1, &["deuxun", "e"]), (2, &["Y", "Y"]), (1, &["e", "deuxun"])]),
    ("deuxdeux", &[(1, &["deuxdeux", "e"]), (1, &["e", "deuxdeux"])]),
    (
        "troisun",
        &[(1, &["troisun", "e"]), (3, &["deuxun", "Y"]), (3, &["Y", "deuxun"]), (1, &["e", "troisun"])],
    ),
    (
        "troisdeux",
        &[(1, &["troisdeux", "e"]), (1, &["deuxdeux", "Y"]), (1, &["Y", "deuxdeux"]), (1, &["e", "troisdeux"])],
    ),
    (
        "troistrois",
        &[(1, &["troistrois", "e"]), (1, &["deuxdeux", "Y"]), (1, &["Y", "deuxdeux"]), (1, &["e", "troistrois"])],
    ),
    ("troisquatre", &[(1, &["troisquatre", "e"]), (1, &["deuxdeux", "Y"]), (1, &["e", "troisquatre"])]),
    ("troiscinq", &[(1, &["troiscinq", "e"]), (1, &["e", "troiscinq"])]),
];

/// `(left, op, right, result)` with `op` one of `/` (over) and `\\` (under).
pub const OVER_UNDER: &[(&str, char, &str, &str)] = &[
    ("deuxdeux", '/', "Y", "troisdeux"),
    ("Y", '/', "deuxdeux", "troistrois"),
    ("deuxun", '\\', "Y", "troistrois"),
    ("Y", '\\', "deuxun", "troisquatre"),
];

/// Compares every table entry; returns the number of entries checked and a
/// description of each mismatch.
pub fn table_mismatches(maps: &HopfMaps) -> (usize, Vec<String>) {
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut cmp = |label: String, got: String, expected: String| {
        checked += 1;
        if got != expected {
            bad.push(format!("{label}: got {got}, expected {expected}"));
        }
    };
    for (t, expected) in ANTIPODE_P_E {
        let got = maps.antipode_p_e(&slot(Electron, t)).unwrap();
        cmp(format!("S^p_e({t})"), got.render(), element(Electron, expected).render());
    }
    for (t, expected) in DELTA_ALPHA {
        let got = maps.delta_alpha(&slot(Alpha, t)).unwrap();
        cmp(format!("Delta^alpha({t})"), got.render(), tensor(&[Alpha, Alpha], expected).render());
    }
    for (t, expected) in DELTA_SMALL {
        let got = maps.delta_small(&slot(Alpha, t)).unwrap();
        cmp(format!("delta({t})"), got.render(), tensor(&[Alpha, Alpha], expected).render());
    }
    for (t, expected) in DELTA_E {
        let got = maps.electron_renorm_coaction(&slot(Electron, t)).unwrap();
        cmp(format!("Delta^e({t})"), got.render(), tensor(&[Electron, Alpha, Electron], expected).render());
    }
    for (t, expected) in DELTA_GAMMA {
        let got = maps.photon_renorm_coaction(&slot(Gamma, t)).unwrap();
        cmp(format!("Delta^gamma({t})"), got.render(), tensor(&[Gamma, Alpha], expected).render());
    }
    for (a, op, b, r) in OVER_UNDER {
        let got = if *op == '/' { tree(a).over(&tree(b)) } else { tree(a).under(&tree(b)) };
        cmp(format!("{a} {op} {b}"), got.render(), tree(r).render());
    }
    (checked, bad)
}
