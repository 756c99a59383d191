//! Truncated formal power series with scalar or matrix coefficients, and the
//! two renormalization groups built from them: `G^p` (pointwise product,
//! invertible constant term) and `G^c` (substitution, zero constant term and
//! invertible linear term), with the semidirect product and cocycle actions.
//!
//! Conventions: `gc_compose(phi, psi)` is `phi(psi(alpha))`, and the right
//! action is `f^phi = f(phi(alpha))`. With these, `f^(phi psi) = (f^phi)^psi`.
//! Substitution keeps coefficients on the left: `f(phi) = sum f_n phi^n`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rand::Rng;
use serde_json::{json, Value};

use crate::algebra::{format_scalar, latex_scalar, parse_scalar, Scalar};
use crate::error::{Error, Result};

/// An exact rational scalar, or a square matrix of them. A scalar acts as
/// that multiple of the identity when combined with a matrix.
#[derive(Clone)]
pub enum RingValue {
    Scalar(Scalar),
    Matrix { dim: usize, entries: Vec<Scalar> },
}

impl RingValue {
    pub fn zero() -> RingValue {
        RingValue::Scalar(Scalar::zero())
    }

    pub fn one() -> RingValue {
        RingValue::Scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> RingValue {
        RingValue::Scalar(c)
    }

    pub fn from_int(c: i64) -> RingValue {
        RingValue::Scalar(Scalar::from_integer(c.into()))
    }

    /// Row-major entries.
    pub fn matrix(dim: usize, entries: Vec<Scalar>) -> Result<RingValue> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::Shape(format!("{} entries for a {dim}x{dim} matrix", entries.len())));
        }
        Ok(RingValue::Matrix { dim, entries })
    }

    pub fn scalar_matrix(dim: usize, c: &Scalar) -> RingValue {
        let mut entries = vec![Scalar::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = c.clone();
        }
        RingValue::Matrix { dim, entries }
    }

    pub fn identity(dim: usize) -> RingValue {
        RingValue::scalar_matrix(dim, &Scalar::one())
    }

    pub fn dim(&self) -> Option<usize> {
        match self {
            RingValue::Scalar(_) => None,
            RingValue::Matrix { dim, .. } => Some(*dim),
        }
    }

    /// The scalar `c` if the value is `c` or `c * I`.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self {
            RingValue::Scalar(c) => Some(c.clone()),
            RingValue::Matrix { dim, entries } => {
                let c = entries[0].clone();
                let ok = (0..*dim).all(|i| {
                    (0..*dim).all(|j| entries[i * dim + j] == if i == j { c.clone() } else { Scalar::zero() })
                });
                ok.then_some(c)
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingValue::Scalar(c) => c.is_zero(),
            RingValue::Matrix { entries, .. } => entries.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_scalar().is_some_and(|c| c.is_one())
    }

    fn as_matrix(&self, dim: usize) -> Vec<Scalar> {
        match self {
            RingValue::Scalar(c) => match RingValue::scalar_matrix(dim, c) {
                RingValue::Matrix { entries, .. } => entries,
                RingValue::Scalar(_) => unreachable!(),
            },
            RingValue::Matrix { entries, .. } => entries.clone(),
        }
    }

    fn common_dim(&self, other: &RingValue) -> Result<Option<usize>> {
        match (self.dim(), other.dim()) {
            (Some(a), Some(b)) if a != b => Err(Error::Shape(format!("{a}x{a} against {b}x{b}"))),
            (a, b) => Ok(a.or(b)),
        }
    }

    pub fn try_add(&self, other: &RingValue) -> Result<RingValue> {
        Ok(match self.common_dim(other)? {
            None => RingValue::Scalar(self.scalar_part() + other.scalar_part()),
            Some(d) => {
                let a = self.as_matrix(d);
                let b = other.as_matrix(d);
                RingValue::Matrix {
                    dim: d,
                    entries: a.iter().zip(&b).map(|(x, y)| x + y).collect(),
                }
            }
        })
    }

    pub fn try_mul(&self, other: &RingValue) -> Result<RingValue> {
        let d = self.common_dim(other)?;
        Ok(match (self, other) {
            (RingValue::Scalar(a), RingValue::Scalar(b)) => RingValue::Scalar(a * b),
            (RingValue::Scalar(a), m) | (m, RingValue::Scalar(a)) => m.scale(a),
            _ => {
                let d = d.expect("matrices");
                let a = self.as_matrix(d);
                let b = other.as_matrix(d);
                let mut entries = vec![Scalar::zero(); d * d];
                for i in 0..d {
                    for k in 0..d {
                        let aik = &a[i * d + k];
                        if aik.is_zero() {
                            continue;
                        }
                        for j in 0..d {
                            entries[i * d + j] += aik * &b[k * d + j];
                        }
                    }
                }
                RingValue::Matrix { dim: d, entries }
            }
        })
    }

    fn scalar_part(&self) -> Scalar {
        match self {
            RingValue::Scalar(c) => c.clone(),
            RingValue::Matrix { .. } => unreachable!("scalar_part on a matrix"),
        }
    }

    pub fn scale(&self, c: &Scalar) -> RingValue {
        match self {
            RingValue::Scalar(a) => RingValue::Scalar(a * c),
            RingValue::Matrix { dim, entries } => RingValue::Matrix {
                dim: *dim,
                entries: entries.iter().map(|x| x * c).collect(),
            },
        }
    }

    /// Exact inverse by Gauss-Jordan elimination over the rationals.
    pub fn inverse(&self) -> Result<RingValue> {
        match self {
            RingValue::Scalar(c) => {
                if c.is_zero() {
                    Err(Error::NotInvertible("0".into()))
                } else {
                    Ok(RingValue::Scalar(c.recip()))
                }
            }
            RingValue::Matrix { dim, entries } => {
                let n = *dim;
                let mut a = entries.clone();
                let mut inv = self.identity_like().as_matrix(n);
                for col in 0..n {
                    let pivot = (col..n)
                        .find(|&r| !a[r * n + col].is_zero())
                        .ok_or_else(|| Error::NotInvertible(self.render()))?;
                    if pivot != col {
                        for j in 0..n {
                            a.swap(pivot * n + j, col * n + j);
                            inv.swap(pivot * n + j, col * n + j);
                        }
                    }
                    let p = a[col * n + col].recip();
                    for j in 0..n {
                        a[col * n + j] *= &p;
                        inv[col * n + j] *= &p;
                    }
                    for r in 0..n {
                        if r == col || a[r * n + col].is_zero() {
                            continue;
                        }
                        let f = a[r * n + col].clone();
                        for j in 0..n {
                            let (x, y) = (a[col * n + j].clone(), inv[col * n + j].clone());
                            a[r * n + j] -= &f * x;
                            inv[r * n + j] -= &f * y;
                        }
                    }
                }
                Ok(RingValue::Matrix { dim: n, entries: inv })
            }
        }
    }

    fn identity_like(&self) -> RingValue {
        match self.dim() {
            None => RingValue::one(),
            Some(d) => RingValue::identity(d),
        }
    }

    pub fn commutes(&self, other: &RingValue) -> bool {
        match (self.try_mul(other), other.try_mul(self)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    /// A random value with small numerators and denominators.
    pub fn random(rng: &mut impl Rng, dim: Option<usize>) -> RingValue {
        let mut q = || Scalar::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=4).into());
        match dim {
            None => RingValue::Scalar(q()),
            Some(d) => RingValue::Matrix {
                dim: d,
                entries: (0..d * d).map(|_| q()).collect(),
            },
        }
    }

    pub fn render(&self) -> String {
        match self {
            RingValue::Scalar(c) => format_scalar(c),
            RingValue::Matrix { dim, entries } => {
                let rows: Vec<String> = entries
                    .chunks(*dim)
                    .map(|r| r.iter().map(format_scalar).collect::<Vec<_>>().join(", "))
                    .collect();
                format!("[[{}]]", rows.join("], ["))
            }
        }
    }

    pub fn render_latex(&self) -> String {
        match self {
            RingValue::Scalar(c) => latex_scalar(c),
            RingValue::Matrix { dim, entries } => {
                let rows: Vec<String> = entries
                    .chunks(*dim)
                    .map(|r| r.iter().map(latex_scalar).collect::<Vec<_>>().join(" & "))
                    .collect();
                format!("\\begin{{pmatrix}} {} \\end{{pmatrix}}", rows.join(" \\\\ "))
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            RingValue::Scalar(c) => Value::String(format_scalar(c)),
            RingValue::Matrix { dim, entries } => Value::Array(
                entries
                    .chunks(*dim)
                    .map(|r| Value::Array(r.iter().map(|c| Value::String(format_scalar(c))).collect()))
                    .collect(),
            ),
        }
    }

    pub fn from_json(v: &Value) -> Result<RingValue> {
        match v {
            Value::String(s) => Ok(RingValue::Scalar(parse_scalar(s)?)),
            Value::Number(n) => Ok(RingValue::Scalar(parse_scalar(&n.to_string())?)),
            Value::Array(rows) => {
                let dim = rows.len();
                let mut entries = Vec::with_capacity(dim * dim);
                for row in rows {
                    let row = row.as_array().ok_or_else(|| Error::Json("matrix rows must be arrays".into()))?;
                    if row.len() != dim {
                        return Err(Error::Json("matrix must be square".into()));
                    }
                    for x in row {
                        match RingValue::from_json(x)? {
                            RingValue::Scalar(c) => entries.push(c),
                            RingValue::Matrix { .. } => return Err(Error::Json("nested matrix".into())),
                        }
                    }
                }
                RingValue::matrix(dim, entries)
            }
            _ => Err(Error::Json(format!("not a ring value: {v}"))),
        }
    }
}

impl PartialEq for RingValue {
    fn eq(&self, other: &RingValue) -> bool {
        match (self, other) {
            (RingValue::Scalar(a), RingValue::Scalar(b)) => a == b,
            _ => match self.common_dim(other) {
                Ok(Some(d)) => self.as_matrix(d) == other.as_matrix(d),
                _ => false,
            },
        }
    }
}

impl Eq for RingValue {}

impl fmt::Display for RingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for RingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

// Operator forms panic on a shape mismatch; use try_add / try_mul to recover.
impl Add for &RingValue {
    type Output = RingValue;
    fn add(self, rhs: &RingValue) -> RingValue {
        self.try_add(rhs).expect("ring value shapes")
    }
}

impl Sub for &RingValue {
    type Output = RingValue;
    fn sub(self, rhs: &RingValue) -> RingValue {
        self.try_add(&-rhs).expect("ring value shapes")
    }
}

impl Mul for &RingValue {
    type Output = RingValue;
    fn mul(self, rhs: &RingValue) -> RingValue {
        self.try_mul(rhs).expect("ring value shapes")
    }
}

impl Neg for &RingValue {
    type Output = RingValue;
    fn neg(self) -> RingValue {
        self.scale(&-Scalar::one())
    }
}

/// `c_0 + c_1 alpha + ... + c_N alpha^N`, everything above `alpha^N` dropped.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<RingValue>,
}

impl TruncatedSeries {
    /// Pads with zeros or drops coefficients so that there are `n + 1`.
    pub fn new(n: usize, mut coeffs: Vec<RingValue>) -> TruncatedSeries {
        coeffs.resize(n + 1, RingValue::zero());
        TruncatedSeries { coeffs }
    }

    pub fn constant(n: usize, c: RingValue) -> TruncatedSeries {
        TruncatedSeries::new(n, vec![c])
    }

    pub fn one(n: usize) -> TruncatedSeries {
        TruncatedSeries::constant(n, RingValue::one())
    }

    pub fn zero(n: usize) -> TruncatedSeries {
        TruncatedSeries::new(n, Vec::new())
    }

    /// The indeterminate `alpha`, the identity of `G^c`.
    pub fn alpha(n: usize) -> TruncatedSeries {
        TruncatedSeries::new(n, vec![RingValue::zero(), RingValue::one()])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> RingValue {
        self.coeffs.get(k).cloned().unwrap_or_else(RingValue::zero)
    }

    pub fn coeffs(&self) -> &[RingValue] {
        &self.coeffs
    }

    pub fn truncate(&self, n: usize) -> TruncatedSeries {
        TruncatedSeries::new(n.min(self.order()), self.coeffs.clone())
    }

    pub fn try_add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|k| self.coeffs[k].try_add(&other.coeffs[k]))
            .collect::<Result<_>>()?;
        Ok(TruncatedSeries { coeffs })
    }

    pub fn try_sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Cauchy product, coefficients multiplied in order.
    pub fn try_mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        let n = self.order().min(other.order());
        let mut coeffs = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = RingValue::zero();
            for j in 0..=k {
                acc = acc.try_add(&self.coeffs[j].try_mul(&other.coeffs[k - j])?)?;
            }
            coeffs.push(acc);
        }
        Ok(TruncatedSeries { coeffs })
    }

    /// Multiplies every coefficient on the left by `c`.
    pub fn left_scale(&self, c: &RingValue) -> Result<TruncatedSeries> {
        let coeffs = self.coeffs.iter().map(|x| c.try_mul(x)).collect::<Result<_>>()?;
        Ok(TruncatedSeries { coeffs })
    }

    /// `f(phi) = sum f_n phi^n`; `phi` must have zero constant term.
    pub fn substitute(&self, phi: &TruncatedSeries) -> Result<TruncatedSeries> {
        if !phi.coeff(0).is_zero() {
            return Err(Error::Series("substituted series must have zero constant term".into()));
        }
        let n = self.order().min(phi.order());
        let mut out = TruncatedSeries::zero(n);
        let mut power = TruncatedSeries::one(n);
        for k in 0..=n {
            out = out.try_add(&power.left_scale(&self.coeffs[k])?)?;
            power = power.try_mul(phi)?;
        }
        Ok(out)
    }

    /// `alpha * f`, kept at the same order.
    pub fn times_alpha(&self) -> TruncatedSeries {
        let mut coeffs = vec![RingValue::zero()];
        coeffs.extend_from_slice(&self.coeffs[..self.order()]);
        TruncatedSeries { coeffs }
    }

    /// `f / alpha` for `f` with zero constant term; the order drops by one.
    pub fn divide_by_alpha(&self) -> Result<TruncatedSeries> {
        if !self.coeffs[0].is_zero() || self.order() == 0 {
            return Err(Error::Series("division by alpha needs a zero constant term and order >= 1".into()));
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    pub fn is_gp(&self) -> bool {
        self.coeffs[0].inverse().is_ok()
    }

    pub fn is_gc(&self) -> bool {
        self.order() >= 1 && self.coeffs[0].is_zero() && self.coeffs[1].inverse().is_ok()
    }

    /// Indices and values of the nonzero coefficients.
    pub fn nonzero(&self) -> Vec<(usize, RingValue)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.clone()))
            .collect()
    }

    pub fn random(rng: &mut impl Rng, n: usize, dim: Option<usize>) -> TruncatedSeries {
        TruncatedSeries::new(n, (0..=n).map(|_| RingValue::random(rng, dim)).collect())
    }

    /// A random element of `G^p`: constant term the identity plus noise,
    /// redrawn until invertible.
    pub fn random_gp(rng: &mut impl Rng, n: usize, dim: Option<usize>) -> TruncatedSeries {
        loop {
            let s = TruncatedSeries::random(rng, n, dim);
            if s.is_gp() {
                return s;
            }
        }
    }

    pub fn random_gc(rng: &mut impl Rng, n: usize, dim: Option<usize>) -> TruncatedSeries {
        loop {
            let mut s = TruncatedSeries::random(rng, n, dim);
            s.coeffs[0] = RingValue::zero();
            if s.is_gc() {
                return s;
            }
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "N": self.order(), "coeffs": self.coeffs.iter().map(RingValue::to_json).collect::<Vec<_>>() })
    }

    pub fn from_json(v: &Value) -> Result<TruncatedSeries> {
        let n = v
            .get("N")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Json("series needs an integer \"N\"".into()))? as usize;
        let coeffs = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("series needs a \"coeffs\" array".into()))?
            .iter()
            .map(RingValue::from_json)
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() > n + 1 {
            return Err(Error::Json(format!("{} coefficients for order {n}", coeffs.len())));
        }
        Ok(TruncatedSeries::new(n, coeffs))
    }

    pub fn render(&self) -> String {
        let terms: Vec<String> = self
            .nonzero()
            .into_iter()
            .map(|(k, c)| match k {
                0 => c.render(),
                1 => format!("{c} a"),
                _ => format!("{c} a^{k}"),
            })
            .collect();
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        format!("{body} + O(a^{})", self.order() + 1)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn require_gp(f: &TruncatedSeries) -> Result<()> {
    if f.is_gp() {
        Ok(())
    } else {
        Err(Error::Series("constant term is not invertible".into()))
    }
}

fn require_gc(phi: &TruncatedSeries) -> Result<()> {
    if phi.is_gc() {
        Ok(())
    } else {
        Err(Error::Series("expected zero constant term and invertible linear term".into()))
    }
}

/// Product in `G^p`.
pub fn gp_multiply(f: &TruncatedSeries, g: &TruncatedSeries) -> Result<TruncatedSeries> {
    require_gp(f)?;
    require_gp(g)?;
    f.try_mul(g)
}

/// Product in `G^c`: `phi psi = phi(psi(alpha))`.
pub fn gc_compose(phi: &TruncatedSeries, psi: &TruncatedSeries) -> Result<TruncatedSeries> {
    require_gc(phi)?;
    require_gc(psi)?;
    phi.substitute(psi)
}

/// Right action of `G^c` on `G^p`: `f^phi = f(phi(alpha))`.
pub fn gp_action(f: &TruncatedSeries, phi: &TruncatedSeries) -> Result<TruncatedSeries> {
    require_gp(f)?;
    require_gc(phi)?;
    f.substitute(phi)
}

/// Two-sided inverse in `G^p`.
pub fn series_inverse(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    let c0_inv = f.coeff(0).inverse()?;
    let n = f.order();
    let mut g: Vec<RingValue> = vec![c0_inv.clone()];
    for k in 1..=n {
        let mut acc = RingValue::zero();
        for j in 1..=k {
            acc = acc.try_add(&f.coeffs[j].try_mul(&g[k - j])?)?;
        }
        g.push(-&c0_inv.try_mul(&acc)?);
    }
    Ok(TruncatedSeries::new(n, g))
}

/// The `psi` with `phi(psi(alpha)) = alpha`, solved one coefficient at a time.
pub fn gc_inverse(phi: &TruncatedSeries) -> Result<TruncatedSeries> {
    require_gc(phi)?;
    let n = phi.order();
    let l_inv = phi.coeff(1).inverse()?;
    let mut psi = TruncatedSeries::new(n, vec![RingValue::zero(), l_inv.clone()]);
    for k in 2..=n {
        // with psi_k = 0 the k-th coefficient of phi(psi) is the correction
        let defect = phi.substitute(&psi)?.coeff(k);
        psi.coeffs[k] = -&l_inv.try_mul(&defect)?;
    }
    Ok(psi)
}

/// An element `(phi, f)` of the semidirect product `G^c x| G^p`.
pub type SemidirectPair = (TruncatedSeries, TruncatedSeries);

/// `(phi, f) (psi, g) = (phi psi, f^psi g)`.
pub fn semidirect_multiply(a: &SemidirectPair, b: &SemidirectPair) -> Result<SemidirectPair> {
    let (phi, f) = a;
    let (psi, g) = b;
    Ok((gc_compose(phi, psi)?, gp_action(f, psi)?.try_mul(g)?))
}

pub fn semidirect_identity(n: usize) -> SemidirectPair {
    (TruncatedSeries::alpha(n), TruncatedSeries::one(n))
}

/// Whether `s(psi) s(phi psi)^-1 s(phi)^psi = 1` at the available order.
pub fn cocycle_check(
    s: impl Fn(&TruncatedSeries) -> Result<TruncatedSeries>,
    phi: &TruncatedSeries,
    psi: &TruncatedSeries,
) -> Result<bool> {
    let lhs = s(psi)?
        .try_mul(&series_inverse(&s(&gc_compose(phi, psi)?)?)?)?
        .try_mul(&gp_action(&s(phi)?, psi)?)?;
    Ok(lhs == TruncatedSeries::one(lhs.order()))
}

/// `f ._s phi = f^phi s(phi)`.
pub fn sigma_action(
    f: &TruncatedSeries,
    phi: &TruncatedSeries,
    s: impl Fn(&TruncatedSeries) -> Result<TruncatedSeries>,
) -> Result<TruncatedSeries> {
    gp_action(f, phi)?.try_mul(&s(phi)?)
}

/// The cocycle `s(phi) = phi / alpha`.
pub fn divide_by_alpha(phi: &TruncatedSeries) -> Result<TruncatedSeries> {
    phi.divide_by_alpha()
}
