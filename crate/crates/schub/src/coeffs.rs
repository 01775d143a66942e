//! The inverse pair of coefficient families `c` and `d` on the affine Weyl
//! group, with caching, naive-enumeration oracles, and closed-form
//! cross-checks.
//!
//! Fix a reduced word `x = σ_{β₁}…σ_{β_m}` (the `β_k` are simple affine
//! roots).  Two families of coefficients fall out of it:
//!
//! * `c_{x,y}` — for each selector `ε ∈ {0,1}^m`, take the product
//!   `σ^ε = σ_{β₁}^{ε₁} … σ_{β_m}^{ε_m}`; the summand of `ε` is the inverted
//!   product of the roots `(σ_{β₁}^{ε₁}…σ_{β_k}^{ε_k})(β_k)`, and
//!   `c_{x,y} = (−1)^m Σ_{ε: σ^ε = y} (summand)`.  Values are rational forms
//!   of homogeneous degree `−ℓ(x)`.
//! * `d_{y,x}` — with `γ_k = σ_{β₁}…σ_{β_{k−1}}(β_k)` the full-word prefix
//!   images, `d_{y,x} = Σ ∏_j γ_{i_j}` over the *reduced* subwords
//!   `i₁ < … < i_r` of the word whose product is `y`.  Values are
//!   polynomials of homogeneous degree `ℓ(y)`.
//!
//! Neither family depends on which reduced word was chosen (the inversion
//! identities force uniqueness), and the two are inverse to each other:
//!
//! ```text
//! Σ_z c_{x,z} d_{y,z} = δ_{x,y} = Σ_z c_{z,x} d_{z,y}
//! ```
//!
//! [`Engine::verify_inverse`] checks both identities exhaustively on a
//! length ball.
//!
//! Both DPs share their shape: walk the word once, keep a map from partial
//! products to accumulated values, and branch on "use this letter or not".
//! Merging selector paths by their partial product keeps the state count at
//! the size of a Bruhat interval instead of `2^m`.  The naive `2^m`
//! enumerations are retained as [`Engine::c_naive`] / [`Engine::d_naive`]
//! and frozen into tests as oracles.
//!
//! Bracket values fold a coset `yW` into one coefficient: `c_{x,[y]}` sums
//! `c_{x,z}` over `z ∈ yW` and evaluates at `δ = 0`; `d_{y,[x]}` evaluates
//! `d_{y,m}` at the minimal-length representative `m` of `xW`.  These are
//! exactly the combinations the homology structure constants consume.

use crate::affine::{AffineWeyl, AffineWeylElement};
use crate::root_system::{CorootVec, FiniteWeylElement, RootSystem, RootVec};
use crate::symbolic::{act_rational, LinearForm, Polynomial, Q, RationalForm};
use crate::{Error, Result};
use num_traits::One;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

/// Largest word length accepted by the naive `2^m` enumerations.
pub const NAIVE_WORD_BOUND: usize = 14;

/// The full row `y ↦ c_{x,y}` for one `x`, with its coset brackets.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    x: AffineWeylElement,
    word: Vec<usize>,
    /// `c_{x,y}` with `δ` kept, nonzero entries only.
    by_element: BTreeMap<AffineWeylElement, RationalForm>,
    /// `c_{x,[y]}` keyed by the coset invariant `w(λ)` of `y = w t_λ`,
    /// evaluated at `δ = 0`; nonzero entries only.
    by_coset: BTreeMap<CorootVec, RationalForm>,
}

impl CoefficientTable {
    pub fn x(&self) -> &AffineWeylElement {
        &self.x
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// `c_{x,y}` (zero when absent).
    pub fn get(&self, y: &AffineWeylElement) -> RationalForm {
        self.by_element
            .get(y)
            .cloned()
            .unwrap_or_else(|| RationalForm::zero(self.width()))
    }

    /// All nonzero `c_{x,y}`.
    pub fn entries(&self) -> impl Iterator<Item = (&AffineWeylElement, &RationalForm)> {
        self.by_element.iter()
    }

    /// `c_{x,[y]}` by coset key (zero when absent).
    pub fn bracket(&self, coset_key: &CorootVec) -> RationalForm {
        self.by_coset
            .get(coset_key)
            .cloned()
            .unwrap_or_else(|| RationalForm::zero(self.width()))
    }

    /// All nonzero coset brackets.
    pub fn brackets(&self) -> impl Iterator<Item = (&CorootVec, &RationalForm)> {
        self.by_coset.iter()
    }

    pub fn len(&self) -> usize {
        self.by_element.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_element.is_empty()
    }

    fn width(&self) -> usize {
        self.x.w.rank() + 1
    }
}

/// The column `y ↦ d_{y,x}` computed from one reduced word of `x`.
///
/// Contract: contains **every** nonzero entry with `ℓ(y) ≥ min_len` for the
/// `min_len` it was computed with (entries below may or may not be present,
/// depending on pruning); callers filter.
pub type DColumn = BTreeMap<AffineWeylElement, Polynomial>;

/// Report returned by [`Engine::verify_inverse`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InverseCheck {
    /// Elements in the verified ball.
    pub elements: usize,
    /// Ordered pairs checked (each against both identities).
    pub pairs: usize,
}

/// Shared computation context: a root system plus memoized coefficient
/// tables, `d`-columns, and homology products.
///
/// All caches sit behind mutexes, so one engine can serve many threads; the
/// values themselves are canonical, hence the outcome never depends on
/// timing.
pub struct Engine {
    rs: Arc<RootSystem>,
    length_bound: usize,
    c_cache: Mutex<HashMap<AffineWeylElement, Arc<CoefficientTable>>>,
    d_cache: Mutex<HashMap<Vec<usize>, (usize, Arc<DColumn>)>>,
    product_cache: Mutex<HashMap<(AffineWeylElement, AffineWeylElement), Arc<BTreeMap<AffineWeylElement, Polynomial>>>>,
}

impl Engine {
    /// A fresh engine with the default length bound of 24.
    pub fn new(rs: Arc<RootSystem>) -> Self {
        Engine {
            rs,
            length_bound: 24,
            c_cache: Mutex::new(HashMap::new()),
            d_cache: Mutex::new(HashMap::new()),
            product_cache: Mutex::new(HashMap::new()),
        }
    }

    /// Replaces the ceiling on the affine length of any element whose
    /// coefficient row is computed.
    pub fn with_length_bound(mut self, bound: usize) -> Self {
        self.length_bound = bound;
        self
    }

    pub fn length_bound(&self) -> usize {
        self.length_bound
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    /// The affine Weyl operations for this engine's root system.
    pub fn affine(&self) -> AffineWeyl<'_> {
        AffineWeyl::new(&self.rs)
    }

    fn width(&self) -> usize {
        self.rs.rank() + 1
    }

    fn check_length(&self, what: &'static str, len: usize) -> Result<()> {
        if len > self.length_bound {
            return Err(Error::BoundExceeded { what, needed: len, bound: self.length_bound });
        }
        Ok(())
    }

    /// The full coefficient row of `x` (memoized).
    pub fn c_all(&self, x: &AffineWeylElement) -> Result<Arc<CoefficientTable>> {
        if let Some(hit) = self.c_cache.lock().expect("cache lock").get(x) {
            return Ok(hit.clone());
        }
        let af = self.affine();
        self.check_length("coefficient row", af.length(x))?;
        let table = Arc::new(self.c_table_for_word(&af.reduced_word(x))?);
        self.c_cache
            .lock()
            .expect("cache lock")
            .entry(x.clone())
            .or_insert(table.clone());
        Ok(table)
    }

    /// The coefficient row computed from an explicitly given reduced word
    /// (uncached; the value is word-independent, which tests exploit by
    /// feeding different words here).
    pub fn c_table_for_word(&self, word: &[usize]) -> Result<CoefficientTable> {
        let af = self.affine();
        if !af.is_reduced(word)? {
            return Err(Error::NotReduced(word.to_vec()));
        }
        let width = self.width();
        let mut states: BTreeMap<AffineWeylElement, RationalForm> = BTreeMap::new();
        states.insert(AffineWeylElement::identity(self.rs.rank()), RationalForm::one(width));
        for &j in word {
            let beta = af.simple_affine_root(j)?;
            let mut next: BTreeMap<AffineWeylElement, RationalForm> = BTreeMap::new();
            let mut put = |key: AffineWeylElement, val: RationalForm| {
                use std::collections::btree_map::Entry;
                match next.entry(key) {
                    Entry::Vacant(e) => {
                        e.insert(val);
                    }
                    Entry::Occupied(mut e) => {
                        let sum = e.get().add(&val);
                        *e.get_mut() = sum;
                    }
                }
            };
            for (p, val) in &states {
                let img = af.act_affine(p, &beta);
                let form = LinearForm::from_affine_root(&img.gamma, img.m);
                let divided = val.div_linear(&form);
                // ε_k = 0: the partial product stays, the factor is p(β_k).
                put(p.clone(), divided.clone());
                // ε_k = 1: the factor picks up the sign of σ_{β_k}(β_k) = −β_k.
                put(af.right_mul_simple(p, j)?, divided.neg());
            }
            states = next;
        }
        let negate = word.len() % 2 == 1;
        let mut by_element = BTreeMap::new();
        for (y, val) in states {
            if val.is_zero() {
                continue;
            }
            let val = if negate { val.neg() } else { val };
            debug_assert_eq!(val.homogeneous_degree(), Some(-(word.len() as i64)));
            by_element.insert(y, val);
        }
        // Coset brackets: evaluate, then sum within each coset.
        let mut by_coset: BTreeMap<CorootVec, RationalForm> = BTreeMap::new();
        for (y, val) in &by_element {
            let evaluated = val.eval_delta_zero()?;
            let key = af.coset_key(y);
            use std::collections::btree_map::Entry;
            match by_coset.entry(key) {
                Entry::Vacant(e) => {
                    e.insert(evaluated);
                }
                Entry::Occupied(mut e) => {
                    let sum = e.get().add(&evaluated);
                    *e.get_mut() = sum;
                }
            }
        }
        by_coset.retain(|_, v| !v.is_zero());
        Ok(CoefficientTable {
            x: af.from_word(word)?,
            word: word.to_vec(),
            by_element,
            by_coset,
        })
    }

    /// `c_{x,[y]}` for the coset keyed by `coset_key` (zero when absent).
    pub fn c_bracket(&self, x: &AffineWeylElement, coset_key: &CorootVec) -> Result<RationalForm> {
        Ok(self.c_all(x)?.bracket(coset_key))
    }

    /// The `d`-column of the element with the given reduced word, holding
    /// every nonzero `d_{y, x}` with `ℓ(y) ≥ min_len` (memoized per word;
    /// a cached column computed with a smaller `min_len` is reused as a
    /// superset).
    pub fn d_column(&self, x_word: &[usize], min_len: usize) -> Result<Arc<DColumn>> {
        if let Some((cached_min, col)) = self.d_cache.lock().expect("cache lock").get(x_word) {
            if *cached_min <= min_len {
                return Ok(col.clone());
            }
        }
        let col = Arc::new(self.d_column_uncached(x_word, min_len)?);
        let mut cache = self.d_cache.lock().expect("cache lock");
        match cache.get(x_word) {
            Some((cached_min, cached)) if *cached_min <= min_len => Ok(cached.clone()),
            _ => {
                cache.insert(x_word.to_vec(), (min_len, col.clone()));
                Ok(col)
            }
        }
    }

    fn d_column_uncached(&self, x_word: &[usize], min_len: usize) -> Result<DColumn> {
        let af = self.affine();
        if !af.is_reduced(x_word)? {
            return Err(Error::NotReduced(x_word.to_vec()));
        }
        self.check_length("d-column word", x_word.len())?;
        let n = self.rs.rank();
        let m = x_word.len();
        let mut prefix = AffineWeylElement::identity(n);
        let mut states: BTreeMap<AffineWeylElement, (usize, Polynomial)> = BTreeMap::new();
        states.insert(AffineWeylElement::identity(n), (0, Polynomial::one(self.width())));
        for (k, &j) in x_word.iter().enumerate() {
            let beta = af.simple_affine_root(j)?;
            let img = af.act_affine(&prefix, &beta);
            let gamma_k = Polynomial::from_linear(&LinearForm::from_affine_root(&img.gamma, img.m));
            let remaining = m - k - 1;
            let mut next: BTreeMap<AffineWeylElement, (usize, Polynomial)> = BTreeMap::new();
            let mut put = |key: AffineWeylElement, len: usize, val: Polynomial| {
                use std::collections::btree_map::Entry;
                match next.entry(key) {
                    Entry::Vacant(e) => {
                        e.insert((len, val));
                    }
                    Entry::Occupied(mut e) => {
                        debug_assert_eq!(e.get().0, len);
                        let sum = e.get().1.add(&val);
                        e.get_mut().1 = sum;
                    }
                }
            };
            for (q, (lq, val)) in &states {
                // Skip the letter: q survives if it can still reach min_len.
                if lq + remaining >= min_len {
                    put(q.clone(), *lq, val.clone());
                }
                // Take the letter: only length-increasing steps keep the
                // subword reduced.
                let q2 = af.right_mul_simple(q, j)?;
                if af.length(&q2) == lq + 1 && lq + 1 + remaining >= min_len {
                    put(q2, lq + 1, val.mul(&gamma_k));
                }
            }
            states = next;
            prefix = af.right_mul_simple(&prefix, j)?;
        }
        let mut out = DColumn::new();
        for (y, (ly, val)) in states {
            if val.is_zero() {
                continue;
            }
            debug_assert_eq!(val.homogeneous_degree(), Some(ly as u32));
            debug_assert_eq!(af.length(&y), ly);
            out.insert(y, val);
        }
        Ok(out)
    }

    /// `d_{y,x}` from an explicit reduced word for `x`.
    pub fn d_coeff(&self, y: &AffineWeylElement, x_word: &[usize]) -> Result<Polynomial> {
        Ok(self
            .d_column(x_word, 0)?
            .get(y)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.width())))
    }

    /// The minimal-length representative of the coset keyed by `coset_key`,
    /// and its canonical reduced word.
    pub fn coset_min_word(&self, coset_key: &CorootVec) -> (AffineWeylElement, Vec<usize>) {
        let af = self.affine();
        let m = af.coset_min(&AffineWeylElement::translation(coset_key.clone()));
        let word = af.reduced_word(&m);
        (m, word)
    }

    /// `d_{y,[x]}` for the coset keyed by `coset_key`: the value of
    /// `d_{y,m}` at the minimal-length representative `m`, evaluated at
    /// `δ = 0`.
    pub fn d_bracket(&self, y: &AffineWeylElement, coset_key: &CorootVec) -> Result<Polynomial> {
        let (_, word) = self.coset_min_word(coset_key);
        Ok(self.d_coeff(y, &word)?.eval_delta_zero())
    }

    /// Naive `2^m` evaluation of the full `c`-row from a reduced word.
    /// Kept as the permanent oracle for the dynamic program; refuses words
    /// longer than [`NAIVE_WORD_BOUND`].
    pub fn c_naive(&self, word: &[usize]) -> Result<BTreeMap<AffineWeylElement, RationalForm>> {
        let af = self.affine();
        if word.len() > NAIVE_WORD_BOUND {
            return Err(Error::BoundExceeded {
                what: "naive c enumeration",
                needed: word.len(),
                bound: NAIVE_WORD_BOUND,
            });
        }
        if !af.is_reduced(word)? {
            return Err(Error::NotReduced(word.to_vec()));
        }
        let width = self.width();
        let m = word.len();
        let mut out: BTreeMap<AffineWeylElement, RationalForm> = BTreeMap::new();
        for mask in 0u32..(1 << m) {
            let mut p = AffineWeylElement::identity(self.rs.rank());
            let mut val = RationalForm::one(width);
            for (k, &j) in word.iter().enumerate() {
                let beta = af.simple_affine_root(j)?;
                if mask & (1 << k) != 0 {
                    p = af.right_mul_simple(&p, j)?;
                }
                // Factor: the image of β_k under the selector product
                // through position k (inclusive).
                let img = af.act_affine(&p, &beta);
                val = val.div_linear(&LinearForm::from_affine_root(&img.gamma, img.m));
            }
            if m % 2 == 1 {
                val = val.neg();
            }
            use std::collections::btree_map::Entry;
            match out.entry(p) {
                Entry::Vacant(e) => {
                    e.insert(val);
                }
                Entry::Occupied(mut e) => {
                    let sum = e.get().add(&val);
                    *e.get_mut() = sum;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    /// Naive `2^m` evaluation of the full `d`-column from a reduced word;
    /// the oracle twin of [`Engine::d_column`].
    pub fn d_naive(&self, word: &[usize]) -> Result<DColumn> {
        let af = self.affine();
        if word.len() > NAIVE_WORD_BOUND {
            return Err(Error::BoundExceeded {
                what: "naive d enumeration",
                needed: word.len(),
                bound: NAIVE_WORD_BOUND,
            });
        }
        if !af.is_reduced(word)? {
            return Err(Error::NotReduced(word.to_vec()));
        }
        let n = self.rs.rank();
        let m = word.len();
        // Full-word prefix images γ_k.
        let mut gammas = Vec::with_capacity(m);
        let mut prefix = AffineWeylElement::identity(n);
        for &j in word {
            let beta = af.simple_affine_root(j)?;
            let img = af.act_affine(&prefix, &beta);
            gammas.push(Polynomial::from_linear(&LinearForm::from_affine_root(&img.gamma, img.m)));
            prefix = af.right_mul_simple(&prefix, j)?;
        }
        let mut out = DColumn::new();
        'subset: for mask in 0u32..(1 << m) {
            let mut q = AffineWeylElement::identity(n);
            let mut len = 0usize;
            let mut val = Polynomial::one(self.width());
            for (k, &j) in word.iter().enumerate() {
                if mask & (1 << k) == 0 {
                    continue;
                }
                let q2 = af.right_mul_simple(&q, j)?;
                if af.length(&q2) != len + 1 {
                    continue 'subset; // not a reduced subword
                }
                q = q2;
                len += 1;
                val = val.mul(&gammas[k]);
            }
            use std::collections::btree_map::Entry;
            match out.entry(q) {
                Entry::Vacant(e) => {
                    e.insert(val);
                }
                Entry::Occupied(mut e) => {
                    let sum = e.get().add(&val);
                    *e.get_mut() = sum;
                }
            }
        }
        out.retain(|v_key, v| {
            let _ = v_key;
            !v.is_zero()
        });
        Ok(out)
    }

    /// Closed form for the finite diagonal value
    /// `d_{v,v} = Π_{γ∈R⁺, v⁻¹(γ)≺0} γ`.
    pub fn d_diag(&self, v: &FiniteWeylElement) -> Polynomial {
        let vinv = v.inverse();
        let mut out = Polynomial::one(self.width());
        for gamma in self.rs.positive_roots() {
            if vinv.act_root(gamma).is_negative() {
                out = out.mul_linear(&LinearForm::from_affine_root(gamma, 0));
            }
        }
        out
    }

    /// Closed form for the finite simple-reflection value
    /// `d_{σ_i,u} = w_i − u(w_i)` (1-based `i`).
    pub fn d_simple(&self, i: usize, u: &FiniteWeylElement) -> Polynomial {
        let diff: RootVec = crate::root_system::weight_minus_image(&self.rs, i, u);
        Polynomial::from_linear(&LinearForm::from_affine_root(&diff, 0))
    }

    /// The finite `d_{v,u}` recovered through the `c`-family:
    /// `d_{v,u} = (Π_{β∈R⁺} β) · u(c_{v⁻¹ω₀, u⁻¹ω₀})`.
    pub fn d_via_c(&self, v: &FiniteWeylElement, u: &FiniteWeylElement) -> Result<Polynomial> {
        let w0 = self.rs.longest_element();
        let row = self.c_all(&AffineWeylElement::from_finite(v.inverse().multiply(&w0)))?;
        let entry = row.get(&AffineWeylElement::from_finite(u.inverse().multiply(&w0)));
        let mut product = Polynomial::one(self.width());
        for beta in self.rs.positive_roots() {
            product = product.mul_linear(&LinearForm::from_affine_root(beta, 0));
        }
        let value = act_rational(
            &self.rs,
            &AffineWeylElement::from_finite(u.clone()),
            &entry,
        )
        .mul_polynomial(&product);
        value
            .to_polynomial()
            .ok_or_else(|| Error::Inconsistency("d_via_c did not reduce to a polynomial".into()))
    }

    /// Verifies both inversion identities
    /// `Σ_z c_{x,z} d_{y,z} = δ_{x,y} = Σ_z c_{z,x} d_{z,y}` for every pair
    /// `x, y` in the length ball `ℓ ≤ bound`, in the unevaluated model
    /// (`δ` kept).  Returns counts, or the first violation as an error.
    pub fn verify_inverse(&self, bound: usize) -> Result<InverseCheck> {
        let af = self.affine();
        let ball = af.ball(bound);
        let mut c_rows = BTreeMap::new();
        let mut d_cols = BTreeMap::new();
        for x in &ball {
            c_rows.insert(x.clone(), self.c_all(x)?);
            d_cols.insert(x.clone(), self.d_column(&af.reduced_word(x), 0)?);
        }
        let width = self.width();
        let mut pairs = 0;
        for x in &ball {
            for y in &ball {
                pairs += 1;
                let expect_one = x == y;
                // Σ_z c_{x,z} d_{y,z}
                let mut sum = RationalForm::zero(width);
                for (z, c) in c_rows[x].entries() {
                    if let Some(d) = d_cols[z].get(y) {
                        sum = sum.add(&c.mul_polynomial(d));
                    }
                }
                let ok1 = match sum.as_constant() {
                    Some(v) => v == if expect_one { Q::one() } else { Q::from_integer(0.into()) },
                    None => false,
                };
                if !ok1 {
                    return Err(Error::Inconsistency(format!(
                        "sum_z c_{{x,z}} d_{{y,z}} != delta for x = {:?}, y = {:?}: got {}",
                        af.reduced_word(x),
                        af.reduced_word(y),
                        sum
                    )));
                }
                // Σ_z c_{z,x} d_{z,y}
                let mut sum = RationalForm::zero(width);
                for (z, d) in d_cols[y].iter() {
                    let c = c_rows[z].get(x);
                    if !c.is_zero() {
                        sum = sum.add(&c.mul_polynomial(d));
                    }
                }
                let ok2 = match sum.as_constant() {
                    Some(v) => v == if expect_one { Q::one() } else { Q::from_integer(0.into()) },
                    None => false,
                };
                if !ok2 {
                    return Err(Error::Inconsistency(format!(
                        "sum_z c_{{z,x}} d_{{z,y}} != delta for x = {:?}, y = {:?}: got {}",
                        af.reduced_word(x),
                        af.reduced_word(y),
                        sum
                    )));
                }
            }
        }
        Ok(InverseCheck { elements: ball.len(), pairs })
    }

    /// The memoized homology product table for a pair of minimal coset
    /// representatives; filled in by the homology layer.
    pub(crate) fn product_cache_get(
        &self,
        key: &(AffineWeylElement, AffineWeylElement),
    ) -> Option<Arc<BTreeMap<AffineWeylElement, Polynomial>>> {
        self.product_cache.lock().expect("cache lock").get(key).cloned()
    }

    pub(crate) fn product_cache_put(
        &self,
        key: (AffineWeylElement, AffineWeylElement),
        value: Arc<BTreeMap<AffineWeylElement, Polynomial>>,
    ) -> Arc<BTreeMap<AffineWeylElement, Polynomial>> {
        self.product_cache
            .lock()
            .expect("cache lock")
            .entry(key)
            .or_insert(value)
            .clone()
    }
}
