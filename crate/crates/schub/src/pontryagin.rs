//! Structure constants of the Pontryagin product on the torus-equivariant
//! homology of the based loop group, plus the companion cup products.
//!
//! The homology `H_*^T(ΩK)` carries the Pontryagin product, and in the
//! Schubert basis `{ℑ_x}` (indexed by minimal coset representatives
//! `x ∈ W_af^−`) the structure constants assemble from the two coefficient
//! families of [`crate::coeffs`]:
//!
//! ```text
//! ℑ_x · ℑ_y = Σ_z b_{x,y}^z ℑ_z,
//! b_{x,y}^z = Σ_{λ,μ ∈ Q∨} c_{x,[t_λ]} · c_{y,[t_μ]} · d_{z,[t_{λ+μ}]}.
//! ```
//!
//! The double sum is effectively finite: `c_{x,[t]} ≠ 0` needs a coset
//! member below `x` in the Bruhat order, so only the coset keys present in
//! the `c`-table of `x` contribute, and for a fixed key sum the `d`-column
//! of the coset minimum has finite support.  [`pontryagin_constants`] walks
//! exactly that support.  The result is always a polynomial, homogeneous of
//! degree `ℓ(z) − ℓ(x) − ℓ(y) ≥ 0` — a rational constant at equality; both
//! facts are enforced, not assumed.
//!
//! Two product identities are exposed as runnable checks instead of being
//! used as the production algorithm: the translation rule
//! `ℑ_{wt_λ}·ℑ_{t_μ} = ℑ_{wt_{λ+μ}}` ([`translation_product_check`]) and
//! the divisor rule for `ℑ_{σ_i t_λ}·ℑ_{u t_μ}`
//! ([`chevalley_pontryagin_check`]), the affine shadow of the quantum
//! Chevalley formula.
//!
//! The same `c`/`d` data also assembles cohomology products:
//! [`loop_cohomology_constants`] computes the cup product on `H^*_T(ΩK)`
//! through `p̃_{x,y}^z = Σ_{v∈W_af^−} d_{x,[v]} d_{y,[v]} c_{z,[v]}`, and
//! [`gb_equivariant_constants`] the equivariant cup product on `H^*_T(G/B)`
//! through the finite sum `p_{u,v}^w = Σ_{v₁∈W} d_{u,v₁} d_{v,v₁} c_{w,v₁}`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rayon::prelude::*;

use crate::affine::{AffineWeyl, AffineWeylElement};
use crate::coeffs::Engine;
use crate::root_system::{
    dominates, weight_minus_image, CorootVec, FiniteWeylElement, RootSystem,
};
use crate::symbolic::{LinearForm, Polynomial, Q, RationalForm};
use crate::{Error, Result};

/// A finite linear combination of loop-space Schubert classes `ℑ_z` with
/// polynomial coefficients.
///
/// Invariants: no zero coefficients are stored, and every key is a minimal
/// coset representative (the classes `ℑ_z` are indexed by `W_af^−`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSum {
    width: usize,
    terms: BTreeMap<AffineWeylElement, Polynomial>,
}

impl FormalSum {
    pub fn new(width: usize) -> Self {
        FormalSum { width, terms: BTreeMap::new() }
    }

    pub fn singleton(width: usize, z: AffineWeylElement, coef: Polynomial) -> Self {
        let mut sum = FormalSum::new(width);
        sum.insert_add(z, coef);
        sum
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of `ℑ_z` (zero when absent).
    pub fn get(&self, z: &AffineWeylElement) -> Polynomial {
        self.terms.get(z).cloned().unwrap_or_else(|| Polynomial::zero(self.width))
    }

    /// All stored (nonzero) terms in key order.
    pub fn terms(&self) -> impl Iterator<Item = (&AffineWeylElement, &Polynomial)> {
        self.terms.iter()
    }

    /// Add `coef` to the coefficient of `ℑ_z`, dropping the entry if the
    /// result is zero.
    pub(crate) fn insert_add(&mut self, z: AffineWeylElement, coef: Polynomial) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(z) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let total = e.get().add(&coef);
                if total.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = total;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
        }
    }

    fn from_map(width: usize, terms: BTreeMap<AffineWeylElement, Polynomial>) -> Self {
        debug_assert!(terms.values().all(|p| !p.is_zero()));
        FormalSum { width, terms }
    }

    /// Human-readable rendering, writing each basis element by its reduced
    /// word: `(α₁ + α₂) I[s2 s0] + …`.
    pub fn display(&self, rs: &RootSystem) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let af = AffineWeyl::new(rs);
        self.terms
            .iter()
            .map(|(z, c)| format!("({c}) I[{}]", word_label(&af.reduced_word(z))))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// A finite linear combination of classes `σ^w` indexed by the finite Weyl
/// group, with polynomial coefficients; the output shape of
/// [`gb_equivariant_constants`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteFormalSum {
    width: usize,
    terms: BTreeMap<FiniteWeylElement, Polynomial>,
}

impl FiniteFormalSum {
    pub fn new(width: usize) -> Self {
        FiniteFormalSum { width, terms: BTreeMap::new() }
    }

    pub fn singleton(width: usize, w: FiniteWeylElement, coef: Polynomial) -> Self {
        let mut sum = FiniteFormalSum::new(width);
        sum.insert_add(w, coef);
        sum
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, w: &FiniteWeylElement) -> Polynomial {
        self.terms.get(w).cloned().unwrap_or_else(|| Polynomial::zero(self.width))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FiniteWeylElement, &Polynomial)> {
        self.terms.iter()
    }

    pub(crate) fn insert_add(&mut self, w: FiniteWeylElement, coef: Polynomial) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let total = e.get().add(&coef);
                if total.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = total;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
        }
    }

    pub fn display(&self, rs: &RootSystem) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(w, c)| format!("({c}) S[{}]", word_label(&rs.reduced_word(w))))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

pub(crate) fn word_label(word: &[usize]) -> String {
    if word.is_empty() {
        "e".to_string()
    } else {
        word.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join(" ")
    }
}

fn require_min_rep(eng: &Engine, e: &AffineWeylElement, what: &str) -> Result<()> {
    let af = eng.affine();
    if af.is_min_coset_rep(e) {
        Ok(())
    } else {
        Err(Error::BadElement(format!(
            "{what} expects minimal-length coset representatives, but the element \
             with word {:?} is not one",
            af.reduced_word(e)
        )))
    }
}

/// Final stage shared by the full and the restricted Pontryagin product:
/// fold the per-key-sum weights `s ↦ Σ c_{x,[t₁]}c_{y,[t₂]}` against the
/// `d`-column of each coset minimum `m_{[t_s]}` and return the assembled
/// constants, checked to be polynomial and homogeneous of degree
/// `ℓ(z) − min_len`.
///
/// Key sums are processed in parallel; every per-sum contribution is exact,
/// so the deterministic fold in key order makes the outcome independent of
/// scheduling.
fn assemble(
    eng: &Engine,
    by_sum: BTreeMap<CorootVec, RationalForm>,
    min_len: usize,
    what: &str,
) -> Result<BTreeMap<AffineWeylElement, Polynomial>> {
    let sums: Vec<(CorootVec, RationalForm)> =
        by_sum.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    let partials = sums
        .par_iter()
        .map(|(s, weight)| -> Result<Vec<(AffineWeylElement, RationalForm)>> {
            let af = eng.affine();
            let (m, word) = eng.coset_min_word(s);
            let mut out = Vec::new();
            if af.length(&m) < min_len {
                // d_{z,[t_s]} = 0 whenever ℓ(z) ≥ min_len > ℓ(m_{[t_s]}).
                return Ok(out);
            }
            let col = eng.d_column(&word, min_len)?;
            for (z, d) in col.iter() {
                if af.length(z) < min_len || !af.is_min_coset_rep(z) {
                    continue;
                }
                let d0 = d.eval_delta_zero();
                if d0.is_zero() {
                    continue;
                }
                out.push((z.clone(), weight.mul_polynomial(&d0)));
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut acc: BTreeMap<AffineWeylElement, RationalForm> = BTreeMap::new();
    for part in partials {
        for (z, v) in part {
            match acc.entry(z) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let total = e.get().add(&v);
                    *e.get_mut() = total;
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(v);
                }
            }
        }
    }

    let af = eng.affine();
    let mut out = BTreeMap::new();
    for (z, total) in acc {
        if total.is_zero() {
            continue;
        }
        let p = total.to_polynomial().ok_or_else(|| {
            Error::Inconsistency(format!(
                "{what}: constant at word {:?} did not reduce to a polynomial: {}",
                af.reduced_word(&z),
                total
            ))
        })?;
        if p.is_zero() {
            continue;
        }
        let expected = (af.length(&z) - min_len) as u32;
        if p.homogeneous_degree() != Some(expected) {
            return Err(Error::Inconsistency(format!(
                "{what}: constant at word {:?} is not homogeneous of degree {expected}: {p}",
                af.reduced_word(&z)
            )));
        }
        out.insert(z, p);
    }
    Ok(out)
}

/// The Pontryagin structure constants `b_{x,y}^z` for all `z`, as the
/// formal sum `ℑ_x · ℑ_y = Σ_z b_{x,y}^z ℑ_z`.
///
/// Both inputs must be minimal coset representatives.  The expansion is
/// finite and exact: coset pairs are drawn from the nonzero brackets of the
/// two `c`-tables, candidate `z` from the `d`-support of each key-sum coset
/// minimum.  Results are cached on the engine under both argument orders
/// (the product is commutative).
pub fn pontryagin_constants(
    eng: &Engine,
    x: &AffineWeylElement,
    y: &AffineWeylElement,
) -> Result<FormalSum> {
    require_min_rep(eng, x, "pontryagin_constants")?;
    require_min_rep(eng, y, "pontryagin_constants")?;
    let width = eng.root_system().rank() + 1;
    let key = (x.clone(), y.clone());
    if let Some(hit) = eng.product_cache_get(&key) {
        return Ok(FormalSum::from_map(width, (*hit).clone()));
    }

    let af = eng.affine();
    let min_len = af.length(x) + af.length(y);
    let cx = eng.c_all(x)?;
    let cy = eng.c_all(y)?;
    let mut by_sum: BTreeMap<CorootVec, RationalForm> = BTreeMap::new();
    for (k1, b1) in cx.brackets() {
        for (k2, b2) in cy.brackets() {
            let term = b1.mul(b2);
            match by_sum.entry(k1.add(k2)) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let total = e.get().add(&term);
                    *e.get_mut() = total;
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(term);
                }
            }
        }
    }

    let map = assemble(eng, by_sum, min_len, "pontryagin_constants")?;
    let arc = eng.product_cache_put(key, Arc::new(map));
    eng.product_cache_put((y.clone(), x.clone()), arc.clone());
    Ok(FormalSum::from_map(width, (*arc).clone()))
}

/// Verify the translation rule `ℑ_{wt_λ} · ℑ_{t_μ} = ℑ_{wt_{λ+μ}}`.
///
/// `x` may be any minimal representative `w t_λ`; `t` must be a pure
/// translation `t_μ ∈ W_af^−`.  Returns `true` iff the computed product is
/// exactly `{w t_{λ+μ} ↦ 1}`.
pub fn translation_product_check(
    eng: &Engine,
    x: &AffineWeylElement,
    t: &AffineWeylElement,
) -> Result<bool> {
    require_min_rep(eng, x, "translation_product_check")?;
    require_min_rep(eng, t, "translation_product_check")?;
    if !t.is_translation() {
        return Err(Error::BadElement(
            "translation_product_check expects a pure translation as its right factor"
                .to_string(),
        ));
    }
    let width = eng.root_system().rank() + 1;
    let expected = AffineWeylElement { w: x.w.clone(), lam: x.lam.add(&t.lam) };
    let product = pontryagin_constants(eng, x, t)?;
    Ok(product == FormalSum::singleton(width, expected, Polynomial::one(width)))
}

/// The closed-form right-hand side of the divisor product
/// `ℑ_{σ_i t_λ} · ℑ_{u t_μ}`:
///
/// ```text
/// (u(w_i) − w_i) ℑ_{u t_{λ+μ}}
///   + Σ_{γ∈Γ₁(u)} ⟨γ∨, w_i⟩ ℑ_{uσ_γ t_{λ+μ}}
///   + Σ_{γ∈Γ₂(u)} ⟨γ∨, w_i⟩ ℑ_{uσ_γ t_{λ+μ+γ∨}}
/// ```
///
/// Terms whose index leaves `W_af^−` are dropped; their coefficients vanish
/// identically (asserted in debug builds), so dropping them is exact.
pub fn chevalley_pontryagin_rhs(
    eng: &Engine,
    x: &AffineWeylElement,
    y: &AffineWeylElement,
) -> Result<FormalSum> {
    require_min_rep(eng, x, "chevalley_pontryagin_rhs")?;
    require_min_rep(eng, y, "chevalley_pontryagin_rhs")?;
    let rs = eng.root_system();
    let n = rs.rank();
    let width = n + 1;
    let i = (1..=n)
        .find(|&i| rs.simple_weyl(i).map(|s| s == x.w).unwrap_or(false))
        .ok_or_else(|| {
            Error::BadElement(
                "chevalley_pontryagin_rhs expects x = σ_i t_λ with a simple finite part"
                    .to_string(),
            )
        })?;
    let af = eng.affine();
    let u = &y.w;
    let lam_mu = x.lam.add(&y.lam);
    let mut sum = FormalSum::new(width);

    // (u(w_i) − w_i) ℑ_{u t_{λ+μ}}; the index stays minimal because λ+μ
    // walls only where both λ and μ wall, and y is minimal.
    let z0 = AffineWeylElement { w: u.clone(), lam: lam_mu.clone() };
    debug_assert!(af.is_min_coset_rep(&z0));
    let diff = weight_minus_image(rs, i, u); // w_i − u(w_i)
    sum.insert_add(z0, Polynomial::from_linear(&LinearForm::from_affine_root(&diff, 0)).neg());

    let gs = crate::quantum::gamma_sets(rs, u)?;
    for (gamma, gamma_vee) in &gs.gamma1 {
        let pair = rs.pairing_fundamental_weight(gamma_vee, i);
        let z = AffineWeylElement {
            w: u.multiply(&rs.reflection(gamma)?),
            lam: lam_mu.clone(),
        };
        if af.is_min_coset_rep(&z) {
            sum.insert_add(z, Polynomial::constant(width, Q::from_integer(pair.into())));
        } else {
            debug_assert_eq!(pair, 0, "coefficient must vanish on non-minimal targets");
        }
    }
    for (gamma, gamma_vee) in &gs.gamma2 {
        let pair = rs.pairing_fundamental_weight(gamma_vee, i);
        let z = AffineWeylElement {
            w: u.multiply(&rs.reflection(gamma)?),
            lam: lam_mu.add(gamma_vee),
        };
        if af.is_min_coset_rep(&z) {
            sum.insert_add(z, Polynomial::constant(width, Q::from_integer(pair.into())));
        } else {
            debug_assert_eq!(pair, 0, "coefficient must vanish on non-minimal targets");
        }
    }
    Ok(sum)
}

/// Verify the divisor rule: `pontryagin_constants(σ_i t_λ, u t_μ)` must
/// equal [`chevalley_pontryagin_rhs`].
pub fn chevalley_pontryagin_check(
    eng: &Engine,
    x: &AffineWeylElement,
    y: &AffineWeylElement,
) -> Result<bool> {
    Ok(pontryagin_constants(eng, x, y)? == chevalley_pontryagin_rhs(eng, x, y)?)
}

/// All minimal coset representatives `z` with `ℓ(z) ≤ max_len`.
///
/// Enumerates the antidominant translation parts first — `ℓ(t_λ) = 2Σμ_j`
/// for `λ = −Σμ_jα_j∨` — then pairs each with the finite parts that satisfy
/// the wall condition, delegating the actual test to `is_min_coset_rep`.
fn min_reps_up_to(eng: &Engine, max_len: usize) -> Result<Vec<AffineWeylElement>> {
    let rs = eng.root_system();
    let n = rs.rank();
    let weyl = rs.enumerate_weyl()?;
    let lw0 = rs.length(&rs.longest_element());
    // ℓ(w t_λ) = ⟨λ,−2ρ⟩ − ℓ(w) ≥ ⟨λ,−2ρ⟩ − ℓ(ω₀), and ⟨λ,−2ρ⟩ = 2Σμ_j.
    let cap = (max_len + lw0) / 2;
    let af = eng.affine();
    let mut out = Vec::new();
    let mut mu = vec![0i64; n];
    loop {
        let lam = CorootVec(mu.iter().map(|&m| -m).collect());
        if rs.is_antidominant(&lam) {
            for w in &weyl {
                let z = AffineWeylElement { w: w.clone(), lam: lam.clone() };
                if af.is_min_coset_rep(&z) && af.length(&z) <= max_len {
                    out.push(z);
                }
            }
        }
        // Odometer over μ ∈ ℕⁿ with Σμ_j ≤ cap.
        let mut j = 0;
        loop {
            if j == n {
                return Ok(out);
            }
            mu[j] += 1;
            if mu.iter().sum::<i64>() <= cap as i64 {
                break;
            }
            mu[j] = 0;
            j += 1;
        }
    }
}

/// Cup-product structure constants on the equivariant cohomology of the
/// based loop group:
///
/// ```text
/// p̃_{x,y}^z = Σ_{v ∈ W_af^−} d_{x,[v]} · d_{y,[v]} · c_{z,[v]}
/// ```
///
/// returned for every `z` with `ℓ(z) ≤ bound`.  The inner sum is finite for
/// each `z` (only the coset keys of the `c`-table of `z` contribute), and
/// nonzero constants force `ℓ(z) ≤ ℓ(x) + ℓ(y)` by homogeneity, so the
/// window `bound = ℓ(x)+ℓ(y)` captures the whole product.
pub fn loop_cohomology_constants(
    eng: &Engine,
    x: &AffineWeylElement,
    y: &AffineWeylElement,
    bound: usize,
) -> Result<FormalSum> {
    require_min_rep(eng, x, "loop_cohomology_constants")?;
    require_min_rep(eng, y, "loop_cohomology_constants")?;
    let width = eng.root_system().rank() + 1;
    let af = eng.affine();
    let lx = af.length(x);
    let ly = af.length(y);
    let window = bound.min(lx + ly);
    let mut out = FormalSum::new(width);
    for z in min_reps_up_to(eng, window)? {
        let row = eng.c_all(&z)?;
        let mut acc = RationalForm::zero(width);
        for (k, cz) in row.brackets() {
            let dx = eng.d_bracket(x, k)?;
            if dx.is_zero() {
                continue;
            }
            let dy = eng.d_bracket(y, k)?;
            if dy.is_zero() {
                continue;
            }
            acc = acc.add(&cz.mul_polynomial(&dx).mul_polynomial(&dy));
        }
        if acc.is_zero() {
            continue;
        }
        let p = acc.to_polynomial().ok_or_else(|| {
            Error::Inconsistency(format!(
                "loop_cohomology_constants: constant at word {:?} did not reduce to a \
                 polynomial: {acc}",
                af.reduced_word(&z)
            ))
        })?;
        if p.is_zero() {
            continue;
        }
        let expected = (lx + ly - af.length(&z)) as u32;
        if p.homogeneous_degree() != Some(expected) {
            return Err(Error::Inconsistency(format!(
                "loop_cohomology_constants: constant at word {:?} is not homogeneous of \
                 degree {expected}: {p}",
                af.reduced_word(&z)
            )));
        }
        out.insert_add(z, p);
    }
    Ok(out)
}

/// Equivariant cup-product structure constants of the complete flag
/// variety: `σ^u · σ^v = Σ_w p_{u,v}^w σ^w` in `H^*_T(G/B)` with
///
/// ```text
/// p_{u,v}^w = Σ_{v₁ ∈ W} d_{u,v₁} · d_{v,v₁} · c_{w,v₁}.
/// ```
///
/// Everything is finite here, and the affine variable never enters: the
/// returned coefficients are polynomials in `α₁,…,α_n` alone, homogeneous
/// of degree `ℓ(u)+ℓ(v)−ℓ(w)`.
pub fn gb_equivariant_constants(
    eng: &Engine,
    u: &FiniteWeylElement,
    v: &FiniteWeylElement,
) -> Result<FiniteFormalSum> {
    let rs = eng.root_system();
    let n = rs.rank();
    for e in [u, v] {
        if e.rank() != n {
            return Err(Error::DimensionMismatch { got: e.rank(), want: n });
        }
    }
    let width = n + 1;
    let weyl = rs.enumerate_weyl()?;
    let lu = rs.length(u);
    let lv = rs.length(v);
    let au = AffineWeylElement::from_finite(u.clone());
    let av = AffineWeylElement::from_finite(v.clone());

    // d_{u,v₁} and d_{v,v₁} for the v₁ where both are nonzero.
    let mut columns = Vec::new();
    for v1 in &weyl {
        let col = eng.d_column(&rs.reduced_word(v1), 0)?;
        let (du, dv) = match (col.get(&au), col.get(&av)) {
            (Some(du), Some(dv)) => (du.clone(), dv.clone()),
            _ => continue,
        };
        columns.push((AffineWeylElement::from_finite(v1.clone()), du, dv));
    }

    let mut out = FiniteFormalSum::new(width);
    for w in &weyl {
        let lw = rs.length(w);
        if lw > lu + lv {
            continue;
        }
        let row = eng.c_all(&AffineWeylElement::from_finite(w.clone()))?;
        let mut acc = RationalForm::zero(width);
        for (av1, du, dv) in &columns {
            let c = row.get(av1);
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&c.mul_polynomial(du).mul_polynomial(dv));
        }
        if acc.is_zero() {
            continue;
        }
        let p = acc.to_polynomial().ok_or_else(|| {
            Error::Inconsistency(format!(
                "gb_equivariant_constants: constant at word {:?} did not reduce to a \
                 polynomial: {acc}",
                rs.reduced_word(w)
            ))
        })?;
        if p.is_zero() {
            continue;
        }
        let expected = (lu + lv - lw) as u32;
        if p.homogeneous_degree() != Some(expected) {
            return Err(Error::Inconsistency(format!(
                "gb_equivariant_constants: constant at word {:?} is not homogeneous of \
                 degree {expected}: {p}",
                rs.reduced_word(w)
            )));
        }
        out.insert_add(w.clone(), p);
    }
    Ok(out)
}

/// The Pontryagin product through the single-`v₁` restricted summation,
/// valid when the translation parts are superregular: for `x = u t_η`,
/// `y = v t_κ` with `⟨η,α_i⟩ ≤ −5ℓ(ω₀)` and `⟨κ,α_i⟩ ≤ −5ℓ(ω₀)` for all
/// `i`, the double coset sum collapses to pairs sharing one finite part
/// `v₁`, with both pulled-back translation parts bounded below by `η`
/// resp. `κ` in the dominance order.
///
/// The hypothesis is not enforced — the restriction is an optimization, and
/// agreement with [`pontryagin_constants`] under the hypothesis is a tested
/// property — but outside it the two products may differ.
pub fn pontryagin_constants_restricted(
    eng: &Engine,
    x: &AffineWeylElement,
    y: &AffineWeylElement,
) -> Result<FormalSum> {
    require_min_rep(eng, x, "pontryagin_constants_restricted")?;
    require_min_rep(eng, y, "pontryagin_constants_restricted")?;
    let rs = eng.root_system();
    let width = rs.rank() + 1;
    let af = eng.affine();
    let min_len = af.length(x) + af.length(y);
    let cx = eng.c_all(x)?;
    let cy = eng.c_all(y)?;
    let weyl = rs.enumerate_weyl()?;

    // A coset pair can be admitted by several v₁ only on walls, where the
    // pulled-back translation parts coincide; count each pair once.
    let mut seen: BTreeSet<(CorootVec, CorootVec)> = BTreeSet::new();
    let mut by_sum: BTreeMap<CorootVec, RationalForm> = BTreeMap::new();
    for v1 in &weyl {
        let v1_inv = v1.inverse();
        let admissible = |table: &crate::coeffs::CoefficientTable, floor: &CorootVec| {
            table
                .brackets()
                .filter(|(k, _)| {
                    let pulled = v1_inv.act_coroot(k);
                    rs.is_antidominant(&pulled) && dominates(&pulled, floor)
                })
                .map(|(k, b)| (k.clone(), b.clone()))
                .collect::<Vec<_>>()
        };
        let k1s = admissible(&cx, &x.lam);
        if k1s.is_empty() {
            continue;
        }
        let k2s = admissible(&cy, &y.lam);
        for (k1, b1) in &k1s {
            for (k2, b2) in &k2s {
                if !seen.insert((k1.clone(), k2.clone())) {
                    continue;
                }
                let term = b1.mul(b2);
                match by_sum.entry(k1.add(k2)) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let total = e.get().add(&term);
                        *e.get_mut() = total;
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(term);
                    }
                }
            }
        }
    }

    let map = assemble(eng, by_sum, min_len, "pontryagin_constants_restricted")?;
    Ok(FormalSum::from_map(width, map))
}
