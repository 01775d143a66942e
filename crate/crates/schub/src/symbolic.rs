//! Exact symbolic arithmetic in the affine root variables `α₁,…,α_n, δ`.
//!
//! Coefficients of the inverse-pair families live in the fraction field of
//! `ℚ[α₁,…,α_n,δ]`: one family consists of sums of inverted products of
//! affine real roots, the other of genuine polynomials.  Three layers cover
//! everything the engines need:
//!
//! * [`LinearForm`] — a degree-one form `Σ cᵢαᵢ + c_δ δ` (the image of an
//!   affine real root is always one of these);
//! * [`Polynomial`] — sparse multivariate polynomials over `ℚ` with a graded
//!   monomial order;
//! * [`RationalForm`] — `scalar · num / Π Lᵢ^{mᵢ}` with a *monic* numerator
//!   and *normalized* denominator factors, so equal values have equal
//!   representations and can be compared with `==`.
//!
//! Addition takes least common denominators over the factor multisets and
//! then cancels: any denominator factor that divides the numerator exactly
//! is removed.  Because denominators are products of linear forms, exact
//! divisibility is decided by one-variable long division — no general
//! factorization is ever needed.
//!
//! Evaluation at `δ = 0` (equivalently `α₀ = −θ`) maps the affine variables
//! onto the finite ones; it is total on the forms arising from real roots
//! because their finite part never vanishes.

use crate::affine::AffineWeylElement;
use crate::root_system::{RootSystem, RootVec};
use crate::{Error, Result};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Exact rational scalars.
pub type Q = BigRational;

fn q_int(k: i64) -> Q {
    Q::from_integer(k.into())
}

/// A linear form `c₁α₁ + … + c_nα_n + c_δ δ` (the last slot is `δ`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm {
    coeffs: Vec<Q>,
}

impl LinearForm {
    /// Builds a form from its `n+1` coefficients.
    pub fn new(coeffs: Vec<Q>) -> Self {
        LinearForm { coeffs }
    }

    /// The zero form of the given width (number of variables, `δ` included).
    pub fn zero(width: usize) -> Self {
        LinearForm { coeffs: vec![Q::zero(); width] }
    }

    /// The form of the affine real root `γ + mδ` for a rank-`n` system
    /// (width `n+1`).
    pub fn from_affine_root(gamma: &RootVec, m: i64) -> Self {
        let mut coeffs: Vec<Q> = gamma.0.iter().map(|&c| q_int(c)).collect();
        coeffs.push(q_int(m));
        LinearForm { coeffs }
    }

    /// The single variable `α_i` (1-based; width `n+1`).
    pub fn alpha(n: usize, i: usize) -> Self {
        let mut coeffs = vec![Q::zero(); n + 1];
        coeffs[i - 1] = Q::one();
        LinearForm { coeffs }
    }

    /// The null-root variable `δ`.
    pub fn delta(n: usize) -> Self {
        let mut coeffs = vec![Q::zero(); n + 1];
        coeffs[n] = Q::one();
        LinearForm { coeffs }
    }

    pub fn width(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Q::is_zero)
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        LinearForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, q: &Q) -> LinearForm {
        LinearForm { coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Splits off the leading scalar: returns `(f, L')` with `self = f·L'`
    /// and the first nonzero coefficient of `L'` equal to `1`.  The zero
    /// form returns `(0, 0)`.
    pub fn normalize(&self) -> (Q, LinearForm) {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            None => (Q::zero(), self.clone()),
            Some(f) => {
                let f = f.clone();
                (f.clone(), LinearForm { coeffs: self.coeffs.iter().map(|c| c / &f).collect() })
            }
        }
    }

    /// Sets the `δ` coefficient to zero.
    pub fn eval_delta_zero(&self) -> LinearForm {
        let mut coeffs = self.coeffs.clone();
        let last = coeffs.len() - 1;
        coeffs[last] = Q::zero();
        LinearForm { coeffs }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Polynomial::from_linear(self).to_string())
    }
}

/// A monomial in `α₁,…,α_n, δ`, as an exponent vector (`δ` last).
///
/// The order is graded: total degree first, then exponents compared from the
/// `δ` end down to `α₁` (so `δ > α_n > … > α₁` as variables).  This is a
/// genuine monomial order, which makes leading terms multiplicative and the
/// monic normalization of [`RationalForm`] numerators stable under products.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(width: usize) -> Self {
        Monomial { exps: vec![0; width] }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.iter().rev().cmp(other.exps.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse polynomial over `ℚ` in the affine root variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polynomial {
    width: usize,
    /// Nonzero terms only.
    terms: BTreeMap<Monomial, Q>,
}

impl Polynomial {
    pub fn zero(width: usize) -> Self {
        Polynomial { width, terms: BTreeMap::new() }
    }

    pub fn one(width: usize) -> Self {
        Self::constant(width, Q::one())
    }

    pub fn constant(width: usize, q: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(Monomial::one(width), q);
        }
        Polynomial { width, terms }
    }

    pub fn from_linear(l: &LinearForm) -> Self {
        let width = l.width();
        let mut terms = BTreeMap::new();
        for (i, c) in l.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut exps = vec![0; width];
                exps[i] = 1;
                terms.insert(Monomial { exps }, c.clone());
            }
        }
        Polynomial { width, terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs — the
    /// inverse of [`Polynomial::terms`], used to deserialize stored values.
    /// Repeated monomials accumulate; zero coefficients are dropped.
    pub fn from_terms<I>(width: usize, terms: I) -> Result<Polynomial>
    where
        I: IntoIterator<Item = (Vec<u32>, Q)>,
    {
        let mut out = Polynomial::zero(width);
        for (exps, c) in terms {
            if exps.len() != width {
                return Err(Error::DimensionMismatch { got: exps.len(), want: width });
            }
            out.insert_term(Monomial { exps }, c);
        }
        Ok(out)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// `Some(d)` iff nonzero and every monomial has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// The coefficient of the monomial `1` — the value at `α₁ = … = δ = 0`.
    pub fn constant_term(&self) -> Q {
        self.terms.get(&Monomial::one(self.width)).cloned().unwrap_or_else(Q::zero)
    }

    /// The constant value, if the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().expect("len = 1");
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Leading term under the monomial order.
    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    fn insert_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.width, other.width);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            width: self.width,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, q: &Q) -> Polynomial {
        if q.is_zero() {
            return Polynomial::zero(self.width);
        }
        Polynomial {
            width: self.width,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.width, other.width);
        let mut out = Polynomial::zero(self.width);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.insert_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn mul_linear(&self, l: &LinearForm) -> Polynomial {
        self.mul(&Polynomial::from_linear(l))
    }

    /// Substitutes `δ = 0`: drops every monomial with a positive `δ`
    /// exponent.
    pub fn eval_delta_zero(&self) -> Polynomial {
        let dpos = self.width - 1;
        Polynomial {
            width: self.width,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exps[dpos] == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Exact division by a nonzero linear form: `Some(q)` with
    /// `self = q · l`, or `None` when the division leaves a remainder.
    ///
    /// One-variable long division in the highest-order variable of `l`
    /// (whose coefficient there is a scalar, `l` being linear), so exactness
    /// is decided without any factorization.
    pub fn divide_exact_by_linear(&self, l: &LinearForm) -> Option<Polynomial> {
        assert!(!l.is_zero(), "division by the zero form");
        if self.is_zero() {
            return Some(self.clone());
        }
        // Main variable: the last (highest in the variable order) nonzero
        // coefficient of l.
        let j = (0..l.width()).rev().find(|&k| !l.coeffs[k].is_zero()).expect("nonzero");
        let a = &l.coeffs[j];
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.width);
        loop {
            let dmax = rem.terms.keys().map(|m| m.exps[j]).max().unwrap_or(0);
            if dmax == 0 {
                return rem.is_zero().then_some(quot);
            }
            // Extract the coefficient of x_j^dmax and push a quotient chunk.
            let mut chunk = Polynomial::zero(self.width);
            for (m, c) in &rem.terms {
                if m.exps[j] == dmax {
                    let mut e = m.exps.clone();
                    e[j] = dmax - 1;
                    chunk.insert_term(Monomial { exps: e }, c / a);
                }
            }
            debug_assert!(!chunk.is_zero());
            rem = rem.sub(&chunk.mul_linear(l));
            quot = quot.add(&chunk);
            debug_assert!(rem.terms.keys().map(|m| m.exps[j]).max().unwrap_or(0) < dmax);
        }
    }
}

impl fmt::Display for Polynomial {
    /// Highest degree first, then lexicographic from `α₁`; variables print
    /// as `a1…an` and `d`, exponents with `^`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let n = self.width - 1;
        let mut ordered: Vec<(&Monomial, &Q)> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| {
            b.degree().cmp(&a.degree()).then_with(|| b.exps.cmp(&a.exps))
        });
        for (k, (m, c)) in ordered.into_iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else if negative {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.degree() == 0 {
                factors.push(mag.to_string());
            }
            for (i, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    let var = if i == n { "d".to_string() } else { format!("a{}", i + 1) };
                    factors.push(if e == 1 { var } else { format!("{var}^{e}") });
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// A value `scalar · num / Π L^m` in the fraction field of `ℚ[α, δ]`.
///
/// Invariants making `==` semantic equality:
/// * the zero value is exactly `{scalar: 0, num: 0, den: ∅}`;
/// * otherwise `scalar ≠ 0`, `num` is monic (leading coefficient `1`),
///   every denominator factor is normalized (first nonzero coefficient `1`)
///   and none divides `num`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalForm {
    scalar: Q,
    num: Polynomial,
    den: BTreeMap<LinearForm, u32>,
}

impl RationalForm {
    pub fn zero(width: usize) -> Self {
        RationalForm {
            scalar: Q::zero(),
            num: Polynomial::zero(width),
            den: BTreeMap::new(),
        }
    }

    pub fn one(width: usize) -> Self {
        RationalForm {
            scalar: Q::one(),
            num: Polynomial::one(width),
            den: BTreeMap::new(),
        }
    }

    pub fn from_scalar(width: usize, q: Q) -> Self {
        if q.is_zero() {
            return Self::zero(width);
        }
        RationalForm { scalar: q, num: Polynomial::one(width), den: BTreeMap::new() }
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        let mut out = RationalForm {
            scalar: Q::one(),
            num: p,
            den: BTreeMap::new(),
        };
        out.normalize();
        out
    }

    /// `1 / l` for a nonzero linear form.
    pub fn inverse_linear(l: &LinearForm) -> Self {
        Self::one(l.width()).div_linear(l)
    }

    pub fn width(&self) -> usize {
        self.num.width()
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    pub fn scalar(&self) -> &Q {
        &self.scalar
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> impl Iterator<Item = (&LinearForm, u32)> {
        self.den.iter().map(|(l, &m)| (l, m))
    }

    pub fn den_degree(&self) -> u32 {
        self.den.values().sum()
    }

    /// Restores the invariants: zero normal form, monic numerator,
    /// numerator/denominator cancellation.
    fn normalize(&mut self) {
        if self.num.is_zero() || self.scalar.is_zero() {
            *self = Self::zero(self.width());
            return;
        }
        // Cancel denominator factors dividing the numerator.
        let keys: Vec<LinearForm> = self.den.keys().cloned().collect();
        for key in keys {
            while self.den.get(&key).copied().unwrap_or(0) > 0 {
                match self.num.divide_exact_by_linear(&key) {
                    Some(q) => {
                        self.num = q;
                        let m = self.den.get_mut(&key).expect("present");
                        *m -= 1;
                        if *m == 0 {
                            self.den.remove(&key);
                        }
                    }
                    None => break,
                }
            }
        }
        // Monic numerator.
        let lead = self.num.leading().expect("nonzero").1.clone();
        if !lead.is_one() {
            self.num = self.num.scale(&(Q::one() / &lead));
            self.scalar *= lead;
        }
    }

    pub fn neg(&self) -> RationalForm {
        if self.is_zero() {
            return self.clone();
        }
        RationalForm {
            scalar: -self.scalar.clone(),
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }

    pub fn mul_scalar(&self, q: &Q) -> RationalForm {
        if self.is_zero() || q.is_zero() {
            return Self::zero(self.width());
        }
        RationalForm {
            scalar: &self.scalar * q,
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }

    /// Divides by a nonzero linear form (cancelling against the numerator
    /// when possible).
    pub fn div_linear(&self, l: &LinearForm) -> RationalForm {
        if self.is_zero() {
            return self.clone();
        }
        let (f, norm) = l.normalize();
        assert!(!f.is_zero(), "division by the zero form");
        let mut out = self.clone();
        out.scalar /= f;
        match out.num.divide_exact_by_linear(&norm) {
            Some(q) => {
                out.num = q;
                out.normalize();
            }
            None => {
                *out.den.entry(norm).or_insert(0) += 1;
            }
        }
        out
    }

    pub fn mul_linear(&self, l: &LinearForm) -> RationalForm {
        self.mul(&RationalForm::from_polynomial(Polynomial::from_linear(l)))
    }

    pub fn mul_polynomial(&self, p: &Polynomial) -> RationalForm {
        self.mul(&RationalForm::from_polynomial(p.clone()))
    }

    pub fn add(&self, other: &RationalForm) -> RationalForm {
        debug_assert_eq!(self.width(), other.width());
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // Least common denominator over the factor multisets.
        let mut lcd: BTreeMap<LinearForm, u32> = self.den.clone();
        for (l, &m) in &other.den {
            let e = lcd.entry(l.clone()).or_insert(0);
            *e = (*e).max(m);
        }
        let lift = |f: &RationalForm| -> Polynomial {
            let mut p = f.num.scale(&f.scalar);
            for (l, &m) in &lcd {
                let have = f.den.get(l).copied().unwrap_or(0);
                for _ in have..m {
                    p = p.mul_linear(l);
                }
            }
            p
        };
        let num = lift(self).add(&lift(other));
        let mut out = RationalForm { scalar: Q::one(), num, den: lcd };
        out.normalize();
        out
    }

    pub fn sub(&self, other: &RationalForm) -> RationalForm {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RationalForm) -> RationalForm {
        debug_assert_eq!(self.width(), other.width());
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.width());
        }
        let mut den = self.den.clone();
        for (l, &m) in &other.den {
            *den.entry(l.clone()).or_insert(0) += m;
        }
        let mut out = RationalForm {
            scalar: &self.scalar * &other.scalar,
            num: self.num.mul(&other.num),
            den,
        };
        out.normalize();
        out
    }

    /// Substitutes `δ = 0` (the evaluation `α₀ = −θ`).
    ///
    /// Fails with [`Error::Inconsistency`] if a denominator factor vanishes;
    /// that cannot happen for factors coming from affine *real* roots, whose
    /// finite part is nonzero.
    pub fn eval_delta_zero(&self) -> Result<RationalForm> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let mut scalar = self.scalar.clone();
        let mut den: BTreeMap<LinearForm, u32> = BTreeMap::new();
        for (l, &m) in &self.den {
            let l0 = l.eval_delta_zero();
            if l0.is_zero() {
                return Err(Error::Inconsistency(format!(
                    "denominator factor {l} vanishes at delta = 0"
                )));
            }
            let (f, norm) = l0.normalize();
            for _ in 0..m {
                scalar /= &f;
            }
            *den.entry(norm).or_insert(0) += m;
        }
        let mut out = RationalForm {
            scalar,
            num: self.num.eval_delta_zero(),
            den,
        };
        out.normalize();
        Ok(out)
    }

    /// Whether the value is a polynomial (no denominator left).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    /// The underlying polynomial when [`Self::is_polynomial`].
    pub fn to_polynomial(&self) -> Option<Polynomial> {
        self.den.is_empty().then(|| self.num.scale(&self.scalar))
    }

    /// The constant value, if the form is a constant.
    pub fn as_constant(&self) -> Option<Q> {
        if self.is_zero() {
            return Some(Q::zero());
        }
        if !self.den.is_empty() {
            return None;
        }
        self.num.as_constant().map(|c| c * &self.scalar)
    }

    /// Degree as a rational function, when the numerator is homogeneous:
    /// `deg(num) − deg(den)`.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let nd = self.num.homogeneous_degree()?;
        Some(nd as i64 - self.den_degree() as i64)
    }
}

impl fmt::Display for RationalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        write!(f, "{}", self.scalar)?;
        if self.num.as_constant() != Some(Q::one()) {
            write!(f, " * ({})", self.num)?;
        }
        if !self.den.is_empty() {
            f.write_str(" / ")?;
            for (l, m) in &self.den {
                if *m == 1 {
                    write!(f, "({l})")?;
                } else {
                    write!(f, "({l})^{m}")?;
                }
            }
        }
        Ok(())
    }
}

/// Applies `x = w·t_λ` to a linear form:
/// `α_i ↦ w(α_i) − ⟨λ, α_i⟩ δ` and `δ ↦ δ`.
pub fn act_linear(rs: &RootSystem, x: &AffineWeylElement, l: &LinearForm) -> LinearForm {
    let n = rs.rank();
    debug_assert_eq!(l.width(), n + 1);
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = l.coeffs[n].clone();
    for i in 0..n {
        let c = &l.coeffs[i];
        if c.is_zero() {
            continue;
        }
        let alpha_i = RootVec::unit(n, i);
        let img = x.w.act_root(&alpha_i);
        for (k, entry) in coeffs.iter_mut().take(n).enumerate() {
            *entry += c * q_int(img.0[k]);
        }
        coeffs[n] -= c * q_int(rs.pairing_unchecked(&x.lam, &alpha_i));
    }
    LinearForm { coeffs }
}

/// Applies `x` to a polynomial by substituting each variable's image and
/// expanding.  Intended for identity checks, not hot paths.
pub fn act_polynomial(rs: &RootSystem, x: &AffineWeylElement, p: &Polynomial) -> Polynomial {
    let n = rs.rank();
    debug_assert_eq!(p.width(), n + 1);
    let images: Vec<Polynomial> = (1..=n)
        .map(|i| Polynomial::from_linear(&act_linear(rs, x, &LinearForm::alpha(n, i))))
        .chain(std::iter::once(Polynomial::from_linear(&LinearForm::delta(n))))
        .collect();
    let mut out = Polynomial::zero(p.width());
    for (m, c) in p.terms() {
        let mut term = Polynomial::constant(p.width(), c.clone());
        for (i, &e) in m.exps().iter().enumerate() {
            for _ in 0..e {
                term = term.mul(&images[i]);
            }
        }
        out = out.add(&term);
    }
    out
}

/// Applies `x` to a rational form (denominator factors stay linear because
/// the action is degree-preserving).
pub fn act_rational(rs: &RootSystem, x: &AffineWeylElement, f: &RationalForm) -> RationalForm {
    if f.is_zero() {
        return f.clone();
    }
    let mut out = RationalForm {
        scalar: f.scalar.clone(),
        num: act_polynomial(rs, x, &f.num),
        den: BTreeMap::new(),
    };
    for (l, &m) in &f.den {
        let (factor, norm) = act_linear(rs, x, l).normalize();
        assert!(!factor.is_zero(), "the affine action preserves nonzero forms");
        for _ in 0..m {
            out.scalar /= &factor;
        }
        *out.den.entry(norm).or_insert(0) += m;
    }
    out.normalize();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::AffineWeyl;

    fn a2() -> RootSystem {
        RootSystem::build("A2".parse().unwrap()).unwrap()
    }

    fn lf(c: &[i64]) -> LinearForm {
        LinearForm::new(c.iter().map(|&k| q_int(k)).collect())
    }

    #[test]
    fn linear_form_normalize() {
        let l = lf(&[-2, -2, 4]);
        let (f, norm) = l.normalize();
        assert_eq!(f, q_int(-2));
        assert_eq!(norm, lf(&[1, 1, -2]));
        assert_eq!(norm.scale(&f), l);
        let (fz, _) = LinearForm::zero(3).normalize();
        assert!(fz.is_zero());
    }

    #[test]
    fn monomial_order_is_graded_and_multiplicative() {
        let m = |e: &[u32]| Monomial { exps: e.to_vec() };
        // degree dominates
        assert!(m(&[2, 0, 0]) > m(&[0, 1, 0]));
        // at equal degree, later variables dominate: δ > α₂ > α₁
        assert!(m(&[0, 0, 1]) > m(&[0, 1, 0]));
        assert!(m(&[0, 1, 0]) > m(&[1, 0, 0]));
        // multiplicativity: a < b ⟹ ac < bc
        let a = m(&[1, 1, 0]);
        let b = m(&[0, 2, 0]);
        let c = m(&[3, 0, 2]);
        assert!(a < b);
        assert!(a.mul(&c) < b.mul(&c));
    }

    #[test]
    fn polynomial_arithmetic() {
        let t = Polynomial::from_linear(&lf(&[1, 1, 0])); // θ = α₁+α₂
        let sq = t.mul(&t);
        // (α₁+α₂)² = α₁² + 2α₁α₂ + α₂²
        assert_eq!(sq.num_terms(), 3);
        assert_eq!(sq.homogeneous_degree(), Some(2));
        assert_eq!(sq.to_string(), "a1^2 + 2*a1*a2 + a2^2");
        let diff = sq.sub(&sq);
        assert!(diff.is_zero());
        assert_eq!(Polynomial::one(3).to_string(), "1");
        assert_eq!(Polynomial::from_linear(&lf(&[-1, 0, 1])).to_string(), "-a1 + d");
    }

    #[test]
    fn from_terms_round_trips_terms() {
        let t = Polynomial::from_linear(&lf(&[1, 1, 0]));
        let p = t.mul(&t).add(&Polynomial::constant(3, q_int(-5)));
        let rebuilt = Polynomial::from_terms(
            3,
            p.terms().map(|(m, c)| (m.exps().to_vec(), c.clone())),
        )
        .unwrap();
        assert_eq!(rebuilt, p);
        // accumulation and zero-dropping
        let z = Polynomial::from_terms(
            2,
            vec![(vec![1, 0], q_int(2)), (vec![1, 0], q_int(-2)), (vec![0, 0], Q::zero())],
        )
        .unwrap();
        assert!(z.is_zero());
        // width mismatch is refused
        assert!(Polynomial::from_terms(2, vec![(vec![1, 0, 0], q_int(1))]).is_err());
    }

    #[test]
    fn polynomial_eval_delta_zero() {
        // (α₁ + δ)(α₂) = α₁α₂ + α₂δ → α₁α₂
        let p = Polynomial::from_linear(&lf(&[1, 0, 1])).mul(&Polynomial::from_linear(&lf(&[0, 1, 0])));
        let e = p.eval_delta_zero();
        assert_eq!(e, Polynomial::from_linear(&lf(&[1, 0, 0])).mul(&Polynomial::from_linear(&lf(&[0, 1, 0]))));
        // mixed homogeneity survives correctly
        assert_eq!(e.homogeneous_degree(), Some(2));
    }

    #[test]
    fn exact_division_round_trip() {
        let a = Polynomial::from_linear(&lf(&[1, 2, 0]));
        let b = lf(&[1, 0, -1]); // α₁ − δ
        let p = a.mul_linear(&b);
        assert_eq!(p.divide_exact_by_linear(&b), Some(a.clone()));
        // not divisible: remainder forces None
        let q = a.add(&Polynomial::one(3));
        assert_eq!(q.mul_linear(&b).add(&Polynomial::one(3)).divide_exact_by_linear(&b), None);
        // divide by a δ-only form
        let d = lf(&[0, 0, 1]);
        assert_eq!(a.mul_linear(&d).divide_exact_by_linear(&d), Some(a));
    }

    #[test]
    fn rational_form_add_and_cancel() {
        // 1/α₁ + 1/α₂ = (α₁+α₂)/(α₁α₂)
        let f = RationalForm::inverse_linear(&lf(&[1, 0, 0]));
        let g = RationalForm::inverse_linear(&lf(&[0, 1, 0]));
        let s = f.add(&g);
        assert_eq!(s.scalar(), &Q::one());
        assert_eq!(s.num(), &Polynomial::from_linear(&lf(&[1, 1, 0])));
        assert_eq!(s.den_degree(), 2);
        // 1/α₁ − 1/α₁ = 0
        assert!(f.sub(&f).is_zero());
        assert_eq!(f.sub(&f), RationalForm::zero(3));
        // 2 × (1/α₁) = 2/α₁
        let doubled = f.add(&f);
        assert_eq!(doubled, f.mul_scalar(&q_int(2)));
        // (α₁+α₂)/(α₁α₂) − 1/α₂ = 1/α₁ (cancellation after subtraction)
        assert_eq!(s.sub(&g), f);
    }

    #[test]
    fn rational_form_mul_and_normalization() {
        // (−2θ)/(α₁) × (α₁)/(4) = −θ/2, with θ = α₁+α₂ monic-normalized on α₂
        let theta = Polynomial::from_linear(&lf(&[1, 1, 0]));
        let f = RationalForm::from_polynomial(theta.scale(&q_int(-2))).div_linear(&lf(&[1, 0, 0]));
        let g = RationalForm::from_polynomial(Polynomial::from_linear(&lf(&[1, 0, 0]))).mul_scalar(&Q::new(1.into(), 4.into()));
        let p = f.mul(&g);
        assert!(p.is_polynomial());
        assert_eq!(p.scalar(), &Q::new((-1).into(), 2.into()));
        assert_eq!(p.to_polynomial().unwrap(), theta.scale(&Q::new((-1).into(), 2.into())));
        // scaling by a divided form: (1/α₁)·(α₁) = 1
        let h = RationalForm::inverse_linear(&lf(&[1, 0, 0])).mul_linear(&lf(&[1, 0, 0]));
        assert_eq!(h, RationalForm::one(3));
        assert_eq!(h.as_constant(), Some(Q::one()));
    }

    #[test]
    fn as_constant_and_homogeneity() {
        let w = 3;
        assert_eq!(RationalForm::zero(w).as_constant(), Some(Q::zero()));
        assert_eq!(RationalForm::from_scalar(w, q_int(-5)).as_constant(), Some(q_int(-5)));
        let f = RationalForm::inverse_linear(&lf(&[1, 1, 0]));
        assert_eq!(f.as_constant(), None);
        assert_eq!(f.homogeneous_degree(), Some(-1));
        let p = RationalForm::from_polynomial(
            Polynomial::from_linear(&lf(&[1, 0, 0])).mul_linear(&lf(&[0, 1, 0])),
        );
        assert_eq!(p.homogeneous_degree(), Some(2));
        assert!(!f.is_polynomial());
        assert!(p.is_polynomial());
    }

    #[test]
    fn eval_delta_zero_merges_denominators() {
        // 1/((θ+δ)(θ+2δ)) → 1/θ² at δ=0
        let f = RationalForm::inverse_linear(&lf(&[1, 1, 1])).mul(&RationalForm::inverse_linear(&lf(&[1, 1, 2])));
        let e = f.eval_delta_zero().unwrap();
        assert_eq!(e.den_degree(), 2);
        assert_eq!(e.den().count(), 1);
        // 1/δ has no value at δ=0
        let bad = RationalForm::inverse_linear(&lf(&[0, 0, 1]));
        assert!(matches!(bad.eval_delta_zero(), Err(Error::Inconsistency(_))));
        // numerator δ-terms drop: (α₁ + δ)/α₂ → α₁/α₂
        let g = RationalForm::from_polynomial(Polynomial::from_linear(&lf(&[1, 0, 1])))
            .div_linear(&lf(&[0, 1, 0]));
        let ge = g.eval_delta_zero().unwrap();
        assert_eq!(
            ge,
            RationalForm::from_polynomial(Polynomial::from_linear(&lf(&[1, 0, 0]))).div_linear(&lf(&[0, 1, 0]))
        );
    }

    #[test]
    fn act_linear_fixtures() {
        let rs = a2();
        let af = AffineWeyl::new(&rs);
        // σ₁: α₁ ↦ −α₁, α₂ ↦ α₁+α₂, δ ↦ δ
        let s1 = AffineWeylElement::from_finite(rs.simple_weyl(1).unwrap());
        assert_eq!(act_linear(&rs, &s1, &lf(&[1, 0, 0])), lf(&[-1, 0, 0]));
        assert_eq!(act_linear(&rs, &s1, &lf(&[0, 1, 0])), lf(&[1, 1, 0]));
        assert_eq!(act_linear(&rs, &s1, &lf(&[0, 0, 1])), lf(&[0, 0, 1]));
        // t_{θ∨}: α₁ ↦ α₁ − ⟨θ∨,α₁⟩δ = α₁ − δ
        let t = AffineWeylElement::translation(rs.theta_vee().clone());
        assert_eq!(act_linear(&rs, &t, &lf(&[1, 0, 0])), lf(&[1, 0, -1]));
        // σ₀(α₀) = −α₀: α₀ = −θ + δ ↦ θ − δ
        let s0 = af.simple_reflection(0).unwrap();
        assert_eq!(act_linear(&rs, &s0, &lf(&[-1, -1, 1])), lf(&[1, 1, -1]));
        // the action matches act_affine on every affine real root
        let x = af.from_word(&[0, 2, 1]).unwrap();
        for (gamma, _) in rs.roots() {
            for m in -2..=2 {
                let img = af.act_affine(&x, &crate::affine::AffineRoot { gamma: gamma.clone(), m });
                assert_eq!(
                    act_linear(&rs, &x, &LinearForm::from_affine_root(gamma, m)),
                    LinearForm::from_affine_root(&img.gamma, img.m)
                );
            }
        }
    }

    #[test]
    fn act_polynomial_is_multiplicative_and_composes() {
        let rs = a2();
        let af = AffineWeyl::new(&rs);
        let x = af.from_word(&[0, 1]).unwrap();
        let y = af.from_word(&[2, 0]).unwrap();
        let p = Polynomial::from_linear(&lf(&[1, 2, 0])).mul_linear(&lf(&[0, 1, 1]));
        let q = Polynomial::from_linear(&lf(&[1, 0, -1]));
        assert_eq!(
            act_polynomial(&rs, &x, &p.mul(&q)),
            act_polynomial(&rs, &x, &p).mul(&act_polynomial(&rs, &x, &q))
        );
        let xy = af.multiply(&x, &y);
        assert_eq!(
            act_polynomial(&rs, &xy, &p),
            act_polynomial(&rs, &x, &act_polynomial(&rs, &y, &p))
        );
    }

    #[test]
    fn act_rational_composes_and_respects_mul() {
        let rs = a2();
        let af = AffineWeyl::new(&rs);
        let x = af.from_word(&[1, 0, 2]).unwrap();
        let f = RationalForm::inverse_linear(&lf(&[1, 1, 1])).mul_scalar(&q_int(-3));
        let g = RationalForm::from_polynomial(Polynomial::from_linear(&lf(&[0, 1, 0]))).div_linear(&lf(&[1, 0, 0]));
        assert_eq!(
            act_rational(&rs, &x, &f.mul(&g)),
            act_rational(&rs, &x, &f).mul(&act_rational(&rs, &x, &g))
        );
        assert_eq!(
            act_rational(&rs, &x, &f.add(&g)),
            act_rational(&rs, &x, &f).add(&act_rational(&rs, &x, &g))
        );
        // identity acts trivially
        let id = AffineWeylElement::identity(2);
        assert_eq!(act_rational(&rs, &id, &g), g);
    }

    #[test]
    fn display_forms() {
        let f = RationalForm::inverse_linear(&lf(&[1, 1, 0])).mul_scalar(&q_int(-1));
        assert_eq!(f.to_string(), "-1 / (a1 + a2)");
        assert_eq!(RationalForm::zero(3).to_string(), "0");
        let g = RationalForm::from_polynomial(Polynomial::from_linear(&lf(&[1, 1, 0])));
        assert_eq!(g.to_string(), "1 * (a1 + a2)");
    }
}
