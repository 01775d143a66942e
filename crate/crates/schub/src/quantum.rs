//! (Equivariant) quantum Schubert calculus on the complete flag variety.
//!
//! The quantum structure constants `Ñ_{u,v}^{w,λ}` of `QH_T^*(G/B)` — the
//! three-pointed genus-zero equivariant Gromov–Witten invariants — are read
//! off the Pontryagin product of loop-space homology classes computed in
//! [`crate::pontryagin`]: pick translations `t_η`, `t_κ` deep enough in the
//! antidominant cone that `x = u t_η` and `y = v t_κ` are minimal coset
//! representatives, multiply, and each surviving class `ℑ_{w t_μ}` hands back
//! one invariant with quantum degree `λ = μ − η − κ`, up to the sign
//! `(−1)^{ℓ(z) − ℓ(x) − ℓ(y)}`.
//!
//! The entry points are [`quantum_product`] / [`equivariant_qconstants`] for
//! whole product expansions, [`gromov_witten`] for a single invariant, and
//! [`equivariant_quantum_chevalley`] for the closed-form product with a
//! divisor class.  Results are independent of the translation choice; the
//! default chooser ([`choose_translations`]) prefers the smallest valid
//! antidominant translation and is exposed so callers can pin (and report)
//! the choice.  Product expansions are memoized inside the [`Engine`], keyed
//! by the translated pair, so repeated invariant queries against the same
//! `(u, v, choice)` cost one expansion.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::Zero;

use crate::affine::{AffineWeyl, AffineWeylElement};
use crate::coeffs::Engine;
use crate::pontryagin::{self, FiniteFormalSum};
use crate::root_system::{
    dominates, weight_minus_image, CorootVec, FiniteWeylElement, RootSystem, RootVec,
};
use crate::symbolic::{LinearForm, Polynomial, Q};
use crate::{Error, Result};

/// The two sets of reflections that appear in the (quantum) Chevalley
/// formula for multiplication by a divisor class `σ^{s_i}`.
///
/// For `u ∈ W` and positive roots `γ`:
///
/// * `gamma1` collects the `γ` with `ℓ(u σ_γ) = ℓ(u) + 1` — the classical
///   covers, contributing `⟨γ∨, w_i⟩ σ^{u σ_γ}`;
/// * `gamma2` collects the `γ` with `ℓ(u σ_γ) = ℓ(u) + 1 − ⟨γ∨, 2ρ⟩` — the
///   quantum terms, contributing `⟨γ∨, w_i⟩ q_{γ∨} σ^{u σ_γ}`.
///
/// Each entry carries the root together with its coroot, since every
/// consumer needs the pairing `⟨γ∨, w_i⟩` and the `γ∨` translation shift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaSets {
    pub gamma1: Vec<(RootVec, CorootVec)>,
    pub gamma2: Vec<(RootVec, CorootVec)>,
}

/// Compute `Γ₁(u)` and `Γ₂(u)` by scanning all positive roots.
pub fn gamma_sets(rs: &RootSystem, u: &FiniteWeylElement) -> Result<GammaSets> {
    let lu = rs.length(u) as i64;
    let mut gamma1 = Vec::new();
    let mut gamma2 = Vec::new();
    for gamma in rs.positive_roots() {
        let gamma_vee = rs.coroot_of(gamma)?;
        let len = rs.length(&u.multiply(&rs.reflection(gamma)?)) as i64;
        if len == lu + 1 {
            gamma1.push((gamma.clone(), gamma_vee));
        } else if len == lu + 1 - rs.pairing_2rho(&gamma_vee) {
            gamma2.push((gamma.clone(), gamma_vee));
        }
    }
    Ok(GammaSets { gamma1, gamma2 })
}

/// Key of one quantum term: the class `q^λ σ^w` for a finite Weyl element
/// `w` and an effective degree `λ = Σ λ_i α_i∨ ≽ 0` (so `q^λ = ∏ q_i^{λ_i}`).
///
/// Ordered by `(⟨λ, 2ρ⟩, λ lexicographic, w)` so that iteration starts at
/// the classical (`λ = 0`) block and walks up in quantum degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QKey {
    pub lam: CorootVec,
    pub w: FiniteWeylElement,
}

impl QKey {
    pub fn new(w: FiniteWeylElement, lam: CorootVec) -> Self {
        QKey { lam, w }
    }

    /// `⟨λ, 2ρ⟩ = 2 Σ λ_i` — the (co)homological degree carried by `q^λ`.
    pub fn q_degree(&self) -> i64 {
        2 * self.lam.0.iter().sum::<i64>()
    }
}

impl Ord for QKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.q_degree()
            .cmp(&other.q_degree())
            .then_with(|| self.lam.cmp(&other.lam))
            .then_with(|| self.w.cmp(&other.w))
    }
}

impl PartialOrd for QKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// One rendered term of a [`QuantumSum`], in reporting-friendly form:
/// `coefficient · q₁^{e₁} ⋯ q_n^{e_n} σ^{w}` with `w` given by a reduced
/// word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumRow {
    pub q_exponents: Vec<i64>,
    pub w_word: Vec<usize>,
    pub coefficient: Polynomial,
}

/// A finite combination `Σ c_{w,λ} q^λ σ^w` with polynomial coefficients —
/// the output shape of every product in this module.
///
/// Invariants: no zero coefficients are stored and every stored `λ` is
/// effective (`λ ≽ 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumSum {
    width: usize,
    terms: BTreeMap<QKey, Polynomial>,
}

impl QuantumSum {
    pub fn new(width: usize) -> Self {
        QuantumSum { width, terms: BTreeMap::new() }
    }

    pub fn singleton(width: usize, key: QKey, coef: Polynomial) -> Self {
        let mut s = QuantumSum::new(width);
        s.insert_add(key, coef);
        s
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

    /// The coefficient of `q^λ σ^w`, zero when absent.
    pub fn get(&self, key: &QKey) -> Polynomial {
        self.terms.get(key).cloned().unwrap_or_else(|| Polynomial::zero(self.width))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&QKey, &Polynomial)> {
        self.terms.iter()
    }

    /// Add `coef` to the coefficient of `q^λ σ^w`, dropping the entry if the
    /// result is zero.  Callers are responsible for only inserting effective
    /// degrees (`λ ≽ 0`); the product routines guarantee this.
    pub fn insert_add(&mut self, key: QKey, coef: Polynomial) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let total = e.get().add(&coef);
                if total.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = total;
                }
            }
        }
    }

    /// The `λ = 0` block as a combination of classical Schubert classes.
    pub fn classical_part(&self) -> FiniteFormalSum {
        let mut out = FiniteFormalSum::new(self.width);
        for (key, coef) in &self.terms {
            if key.lam.0.iter().all(|&c| c == 0) {
                out.insert_add(key.w.clone(), coef.clone());
            }
        }
        out
    }

    /// Specialize every coefficient at `α₁ = … = α_n = 0`, keeping only the
    /// terms with a nonzero constant part — the non-equivariant limit.
    pub fn at_equivariant_zero(&self) -> QuantumSum {
        let mut out = QuantumSum::new(self.width);
        for (key, coef) in &self.terms {
            let c = coef.constant_term();
            if !c.is_zero() {
                out.insert_add(key.clone(), Polynomial::constant(self.width, c));
            }
        }
        out
    }

    /// Render the sum as rows sorted by `(⟨λ,2ρ⟩, λ lexicographic, reduced
    /// word lexicographic)` — a stable order for fixtures and reports.
    pub fn rows(&self, rs: &RootSystem) -> Vec<QuantumRow> {
        let mut rows: Vec<QuantumRow> = self
            .terms
            .iter()
            .map(|(key, coef)| QuantumRow {
                q_exponents: key.lam.0.clone(),
                w_word: rs.reduced_word(&key.w),
                coefficient: coef.clone(),
            })
            .collect();
        rows.sort_by(|a, b| {
            let da: i64 = 2 * a.q_exponents.iter().sum::<i64>();
            let db: i64 = 2 * b.q_exponents.iter().sum::<i64>();
            da.cmp(&db)
                .then_with(|| a.q_exponents.cmp(&b.q_exponents))
                .then_with(|| a.w_word.cmp(&b.w_word))
        });
        rows
    }

    /// Human-readable rendering, e.g. `(1) q1 q2 S[s2] + (a1) S[s1]`.
    pub fn display(&self, rs: &RootSystem) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.rows(rs)
            .into_iter()
            .map(|row| {
                let mut piece = format!("({}) ", row.coefficient);
                for (i, &e) in row.q_exponents.iter().enumerate() {
                    if e == 1 {
                        piece.push_str(&format!("q{} ", i + 1));
                    } else if e != 0 {
                        piece.push_str(&format!("q{}^{} ", i + 1, e));
                    }
                }
                piece.push_str(&format!("S[{}]", pontryagin::word_label(&row.w_word)));
                piece
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// The pair of antidominant translations that pushes `(u, v)` into `W_af^−`,
/// together with the reference translation `μ = η + κ + λ` used when a
/// single invariant of degree `λ` is wanted.
///
/// Invariant: `u t_η` and `v t_κ` are minimal coset representatives.  Any
/// such choice yields the same quantum constants; the choice only controls
/// which loop-space product realizes them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationChoice {
    pub eta: CorootVec,
    pub kappa: CorootVec,
    pub mu: CorootVec,
}

/// Strictly antidominant vector of minimal height (lexicographically least
/// among minima): the seed `σ` whose multiples the chooser scans.
///
/// Any strictly antidominant `−c` has `c ≥ ρ∨` coordinatewise (because
/// `c − ρ∨` pairs non-negatively with every simple root and the inverse
/// Cartan matrix is entrywise non-negative), so the search may start at
/// `⌈ρ∨⌉` and enumerate the excess by total height.  `−Σ_{γ≻0} γ∨ = −2ρ∨`
/// is always strictly antidominant, which bounds the search; if the excess
/// ladder is exhausted first (it never is at practical ranks), that vector
/// is returned instead.
fn least_regular_antidominant(rs: &RootSystem) -> Result<CorootVec> {
    let n = rs.rank();
    let base: Vec<i64> = (1..=n)
        .map(|i| {
            let mut acc = Q::zero();
            for j in 1..=n {
                acc += &rs.fundamental_coweight(j)[i - 1];
            }
            acc.ceil().to_integer().try_into().map_err(|_| {
                Error::Inconsistency("fundamental coweight coordinate overflow".into())
            })
        })
        .collect::<Result<_>>()?;
    let strictly_antidominant = |c: &[i64]| -> bool {
        let lam = CorootVec(c.iter().map(|&x| -x).collect());
        (0..n).all(|j| rs.pairing_unchecked(&lam, &RootVec::unit(n, j)) < 0)
    };
    let max_excess = 2 * n + 4;
    for level in 0..=max_excess {
        // Excess vectors of total `level` in lexicographic order.
        let mut excess = vec![0i64; n];
        excess[n - 1] = level as i64;
        loop {
            let c: Vec<i64> = base.iter().zip(&excess).map(|(b, e)| b + e).collect();
            if strictly_antidominant(&c) {
                return Ok(CorootVec(c.into_iter().map(|x| -x).collect()));
            }
            // Advance to the next composition of `level`: move one unit from
            // the tail block to the position left of it.
            let Some(j) = (0..n - 1).rev().find(|&j| excess[j + 1..].iter().any(|&e| e > 0))
            else {
                break;
            };
            let tail: i64 = excess[j + 1..].iter().sum();
            excess[j] += 1;
            for e in &mut excess[j + 1..] {
                *e = 0;
            }
            excess[n - 1] = tail - 1;
        }
    }
    let mut two_rho = CorootVec::zero(n);
    for gamma in rs.positive_roots() {
        two_rho = two_rho.add(&rs.coroot_of(gamma)?);
    }
    Ok(two_rho.scale(-1))
}

/// The guaranteed-valid translation `−12n(n+1) Σᵢ wᵢ∨`: strictly
/// antidominant (every simple pairing is `−12n(n+1)`), hence a minimal
/// coset representative against any finite Weyl element.  Far too deep for
/// practical computation; the chooser only reaches it if every smaller
/// candidate fails, which the seed scan prevents.
fn guaranteed_translation(rs: &RootSystem) -> Result<CorootVec> {
    let n = rs.rank();
    let factor = Q::from_integer((-12 * (n as i64) * (n as i64 + 1)).into());
    let coords: Vec<i64> = (0..n)
        .map(|k| {
            let mut acc = Q::zero();
            for j in 1..=n {
                acc += &rs.fundamental_coweight(j)[k];
            }
            acc *= &factor;
            if !acc.is_integer() {
                return Err(Error::Inconsistency(
                    "guaranteed translation must be a coroot-lattice vector".into(),
                ));
            }
            acc.to_integer().try_into().map_err(|_| {
                Error::Inconsistency("guaranteed translation coordinate overflow".into())
            })
        })
        .collect::<Result<_>>()?;
    Ok(CorootVec(coords))
}

/// Choose antidominant translations `η = κ` such that `u t_η` and `v t_κ`
/// are minimal coset representatives, preferring the cheapest valid choice:
/// `0` (only possible for `u = v = id`), then `−θ∨` (sufficient in every
/// worked low-rank example), then multiples `k·σ` of the minimal strictly
/// antidominant vector — valid at `k = 1` already, since a strictly
/// antidominant translation part leaves no wall condition to check — and
/// finally the guaranteed deep translation.
///
/// `lam` is the quantum degree of interest; it only enters the reference
/// point `μ = η + κ + λ` recorded in the result.
pub fn choose_translations(
    rs: &RootSystem,
    u: &FiniteWeylElement,
    v: &FiniteWeylElement,
    lam: &CorootVec,
) -> Result<TranslationChoice> {
    let n = rs.rank();
    if u.rank() != n || v.rank() != n || lam.len() != n {
        return Err(Error::DimensionMismatch { got: u.rank().max(v.rank()).max(lam.len()), want: n });
    }
    let af = AffineWeyl::new(rs);
    let valid = |eta: &CorootVec| -> bool {
        af.is_min_coset_rep(&AffineWeylElement { w: u.clone(), lam: eta.clone() })
            && af.is_min_coset_rep(&AffineWeylElement { w: v.clone(), lam: eta.clone() })
    };
    let mut candidates = vec![CorootVec::zero(n), rs.theta_vee().scale(-1)];
    let sigma = least_regular_antidominant(rs)?;
    for k in 1..=4 {
        candidates.push(sigma.scale(k));
    }
    candidates.push(guaranteed_translation(rs)?);
    for eta in candidates {
        if valid(&eta) {
            let mu = eta.add(&eta).add(lam);
            return Ok(TranslationChoice { kappa: eta.clone(), eta, mu });
        }
    }
    Err(Error::Inconsistency(
        "no valid translation found, although the deep fallback is always valid".into(),
    ))
}

/// The full equivariant quantum product `σ^u ⋆ σ^v = Σ Ñ_{u,v}^{w,λ} q^λ σ^w`
/// with the default translation choice.
pub fn equivariant_qconstants(
    eng: &Engine,
    u: &FiniteWeylElement,
    v: &FiniteWeylElement,
) -> Result<QuantumSum> {
    let choice = choose_translations(eng.root_system(), u, v, &CorootVec::zero(u.rank()))?;
    equivariant_qconstants_with(eng, u, v, &choice)
}

/// As [`equivariant_qconstants`], with the translation choice pinned by the
/// caller — the entry point for choice-invariance checks and for reporting.
///
/// Computes the loop-space product of `x = u t_η` and `y = v t_κ` and reads
/// each surviving class `ℑ_{w t_μ}` back as the coefficient of `q^{μ−η−κ} σ^w`,
/// applying the sign `(−1)^{ℓ(z)−ℓ(x)−ℓ(y)}`.  Every extracted degree must be
/// effective; a violation would falsify the translation identity and is
/// reported as an inconsistency rather than silently dropped.
pub fn equivariant_qconstants_with(
    eng: &Engine,
    u: &FiniteWeylElement,
    v: &FiniteWeylElement,
    choice: &TranslationChoice,
) -> Result<QuantumSum> {
    let rs = eng.root_system();
    let n = rs.rank();
    if u.rank() != n || v.rank() != n {
        return Err(Error::DimensionMismatch { got: u.rank().max(v.rank()), want: n });
    }
    let af = eng.affine();
    let x = AffineWeylElement { w: u.clone(), lam: choice.eta.clone() };
    let y = AffineWeylElement { w: v.clone(), lam: choice.kappa.clone() };
    let product = pontryagin::pontryagin_constants(eng, &x, &y)?;
    let lx = af.length(&x);
    let ly = af.length(&y);
    let base = choice.eta.add(&choice.kappa);
    let zero = CorootVec::zero(n);
    let mut out = QuantumSum::new(product.width());
    for (z, coef) in product.terms() {
        let lam = z.lam.sub(&base);
        if !dominates(&lam, &zero) {
            return Err(Error::Inconsistency(format!(
                "quantum degree {:?} is not effective in the product of {} and {}",
                lam.0,
                pontryagin::word_label(&rs.reduced_word(u)),
                pontryagin::word_label(&rs.reduced_word(v)),
            )));
        }
        let lz = af.length(z);
        let signed = if (lz + lx + ly) % 2 == 1 { coef.neg() } else { coef.clone() };
        out.insert_add(QKey::new(z.w.clone(), lam), signed);
    }
    Ok(out)
}

/// A single equivariant Gromov–Witten invariant `Ñ_{u,v}^{w,λ}` of degree
/// zero, i.e. the structure constant in front of `q^λ σ^w` when
/// `⟨λ, 2ρ⟩ = ℓ(u) + ℓ(v) − ℓ(w)` — otherwise `0` (for the non-equivariant
/// invariant this is the only degree that can carry a nonzero value).
///
/// Returns `0` outright when `λ` is not effective, when the degree condition
/// fails, or when `w t_μ` is not a minimal coset representative for the
/// chosen `μ = η + κ + λ` (the class `ℑ_{w t_μ}` then indexes no basis
/// element and the invariant vanishes).
pub fn gromov_witten(
    eng: &Engine,
    u: &FiniteWeylElement,
    v: &FiniteWeylElement,
    w: &FiniteWeylElement,
    lam: &CorootVec,
) -> Result<Q> {
    let rs = eng.root_system();
    let n = rs.rank();
    if u.rank() != n || v.rank() != n || w.rank() != n || lam.len() != n {
        return Err(Error::DimensionMismatch {
            got: u.rank().max(v.rank()).max(w.rank()).max(lam.len()),
            want: n,
        });
    }
    let zero = CorootVec::zero(n);
    if !dominates(lam, &zero) {
        return Ok(Q::zero());
    }
    let expected = rs.length(u) as i64 + rs.length(v) as i64 - rs.length(w) as i64;
    if rs.pairing_2rho(lam) != expected {
        return Ok(Q::zero());
    }
    let choice = choose_translations(rs, u, v, lam)?;
    let z = AffineWeylElement { w: w.clone(), lam: choice.mu.clone() };
    if !eng.affine().is_min_coset_rep(&z) {
        return Ok(Q::zero());
    }
    let sum = equivariant_qconstants_with(eng, u, v, &choice)?;
    sum.get(&QKey::new(w.clone(), lam.clone())).as_constant().ok_or_else(|| {
        Error::Inconsistency(
            "a degree-zero quantum structure constant must be a rational number".into(),
        )
    })
}

/// The non-equivariant quantum product `σ^u ⋆ σ^v = Σ N_{u,v}^{w,λ} q^λ σ^w`:
/// the equivariant expansion specialized at `α₁ = … = α_n = 0`, which keeps
/// exactly the degree-zero coefficients.  The translation choice used for
/// the underlying loop-space product is returned alongside.
pub fn quantum_product(
    eng: &Engine,
    u: &FiniteWeylElement,
    v: &FiniteWeylElement,
) -> Result<(QuantumSum, TranslationChoice)> {
    let choice = choose_translations(eng.root_system(), u, v, &CorootVec::zero(u.rank()))?;
    let full = equivariant_qconstants_with(eng, u, v, &choice)?;
    Ok((full.at_equivariant_zero(), choice))
}

/// The classical equivariant product of Schubert classes on the flag
/// variety — the `λ = 0` oracle for [`equivariant_qconstants`].
pub fn classical_constants(
    eng: &Engine,
    u: &FiniteWeylElement,
    v: &FiniteWeylElement,
) -> Result<FiniteFormalSum> {
    pontryagin::gb_equivariant_constants(eng, u, v)
}

/// Closed-form product with a divisor class:
///
/// ```text
/// σ^{s_i} ⋆ σ^u = (w_i − u(w_i)) σ^u
///               + Σ_{γ ∈ Γ₁(u)} ⟨γ∨, w_i⟩ σ^{u σ_γ}
///               + Σ_{γ ∈ Γ₂(u)} ⟨γ∨, w_i⟩ q_{γ∨} σ^{u σ_γ}
/// ```
///
/// with the weight difference `w_i − u(w_i)` expanded exactly in the simple
/// roots.  This is the independent oracle against which the loop-space route
/// is tested, and the cheap path for divisor products.
pub fn equivariant_quantum_chevalley(
    rs: &RootSystem,
    i: usize,
    u: &FiniteWeylElement,
) -> Result<QuantumSum> {
    let n = rs.rank();
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, rank: n });
    }
    if u.rank() != n {
        return Err(Error::DimensionMismatch { got: u.rank(), want: n });
    }
    let width = n + 1;
    let zero = CorootVec::zero(n);
    let mut out = QuantumSum::new(width);
    let diff = weight_minus_image(rs, i, u);
    out.insert_add(
        QKey::new(u.clone(), zero.clone()),
        Polynomial::from_linear(&LinearForm::from_affine_root(&diff, 0)),
    );
    let gs = gamma_sets(rs, u)?;
    for (gamma, gamma_vee) in &gs.gamma1 {
        let pair = rs.pairing_fundamental_weight(gamma_vee, i);
        out.insert_add(
            QKey::new(u.multiply(&rs.reflection(gamma)?), zero.clone()),
            Polynomial::constant(width, Q::from_integer(pair.into())),
        );
    }
    for (gamma, gamma_vee) in &gs.gamma2 {
        let pair = rs.pairing_fundamental_weight(gamma_vee, i);
        out.insert_add(
            QKey::new(u.multiply(&rs.reflection(gamma)?), gamma_vee.clone()),
            Polynomial::constant(width, Q::from_integer(pair.into())),
        );
    }
    Ok(out)
}
