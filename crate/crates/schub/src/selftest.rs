//! The acceptance suite: nine numbered criteria that pin the engine to its
//! ground truth, shared by the `acceptance` integration test and the CLI's
//! `selftest` subcommand.
//!
//! The criteria fall into four groups:
//!
//! * **Worked products** (1–3): the rank-2 and rank-3 products that every
//!   other number in this crate ultimately feeds into, together with their
//!   intermediate `c`-values, `d`-polynomials, and assembled constants.
//! * **Exact identities** (4–7): the `c`/`d` inverse identities, the closed
//!   Chevalley form, the loop-homology translation and divisor rules, and
//!   the classical (`q → 0`, `α → 0`) limit against an independent
//!   cup-product oracle built from iterated divisor multiplication.
//! * **Structural laws** (8): randomized commutativity, homogeneity, unit,
//!   effectivity, vanishing, and translation-choice-invariance checks.
//! * **Enumeration oracles** (9): the `2^m` subword enumerations against
//!   the dynamic program, over every word the worked examples touch.
//!
//! Each criterion runs inside a wall-clock budget and reports a single
//! line; [`run_all`] never panics on a failure — it reports it, so a
//! driver can print the whole table before exiting nonzero.

use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_traits::Zero;

use crate::affine::AffineWeylElement;
use crate::coeffs::Engine;
use crate::pontryagin::{
    chevalley_pontryagin_check, gb_equivariant_constants, pontryagin_constants,
    translation_product_check, word_label,
};
use crate::quantum::{
    choose_translations, equivariant_qconstants, equivariant_qconstants_with,
    equivariant_quantum_chevalley, gromov_witten, quantum_product, QKey, QuantumSum,
    TranslationChoice,
};
use crate::root_system::{dominates, CorootVec, FiniteWeylElement, RootSystem, RootVec};
use crate::symbolic::{LinearForm, Polynomial, Q, RationalForm};
use crate::Error;

/// Scale profile for a suite run.
///
/// `Quick` keeps every criterion comfortably inside its budget; `Full`
/// additionally sweeps the rank-3 type `A3` inside criterion 5, the one
/// deliberately slow check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    Quick,
    Full,
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            other => Err(Error::BadElement(format!(
                "unknown profile {other:?}; expected \"quick\" or \"full\""
            ))),
        }
    }
}

/// Number of criteria in the suite.
pub const CRITERIA: usize = 9;

const NAMES: [&str; CRITERIA] = [
    "A2 worked example",
    "A2 longest-element square",
    "B3 worked example",
    "inverse identities",
    "Chevalley closed form",
    "loop-homology product rules",
    "classical limit",
    "structural properties",
    "naive-oracle equivalence",
];

/// Wall-clock budget per criterion, in seconds.
const CAPS: [u64; CRITERIA] = [10, 10, 300, 120, 300, 300, 120, 300, 120];

/// Outcome of one criterion: a pass/fail verdict, a one-line summary of
/// what was checked (or the first deviation found), and the wall time.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub number: usize,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
    pub duration: Duration,
}

impl CriterionReport {
    /// The canonical single-line rendering, e.g.
    /// `criterion 4 PASS (1.02s) inverse identities: …`.
    pub fn line(&self) -> String {
        format!(
            "criterion {} {} ({:.2}s) {}: {}",
            self.number,
            if self.passed { "PASS" } else { "FAIL" },
            self.duration.as_secs_f64(),
            self.name,
            self.details
        )
    }
}

/// The name of a criterion, if the number is in range.
pub fn criterion_name(number: usize) -> Option<&'static str> {
    (1..=CRITERIA).contains(&number).then(|| NAMES[number - 1])
}

/// Run one criterion (1-based). Returns `None` for unknown numbers.
///
/// A criterion that computes the right answers but overruns its budget is
/// reported as failed: the budgets are part of the contract.
pub fn run(number: usize, profile: Profile) -> Option<CriterionReport> {
    let body: fn(Profile) -> Result<String, String> = match number {
        1 => c1,
        2 => c2,
        3 => c3,
        4 => c4,
        5 => c5,
        6 => c6,
        7 => c7,
        8 => c8,
        9 => c9,
        _ => return None,
    };
    let start = Instant::now();
    let outcome = body(profile);
    let duration = start.elapsed();
    let cap = Duration::from_secs(CAPS[number - 1]);
    let (passed, details) = match outcome {
        Ok(details) if duration <= cap => (true, details),
        Ok(details) => (
            false,
            format!("{details} — but overran the {}s budget", CAPS[number - 1]),
        ),
        Err(details) => (false, details),
    };
    Some(CriterionReport { number, name: NAMES[number - 1], passed, details, duration })
}

/// Run the whole suite in order, collecting every report.
pub fn run_all(profile: Profile) -> Vec<CriterionReport> {
    (1..=CRITERIA)
        .map(|number| run(number, profile).expect("criterion numbers 1..=9 are all defined"))
        .collect()
}

/// Fail the enclosing criterion with a formatted message unless `cond`.
macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

fn lib<T>(step: crate::Result<T>) -> Result<T, String> {
    step.map_err(|e| e.to_string())
}

fn system(t: &str) -> Arc<RootSystem> {
    let ty = t.parse().expect("selftest uses only well-formed type names");
    Arc::new(RootSystem::build(ty).expect("selftest uses only supported types"))
}

fn qi(k: i64) -> Q {
    Q::from_integer(k.into())
}

fn root_linear(coords: &[i64]) -> LinearForm {
    LinearForm::from_affine_root(&RootVec(coords.to_vec()), 0)
}

/// `scale · Π(listed roots)` as a polynomial.
fn root_product(width: usize, scale: i64, roots: &[&[i64]]) -> Polynomial {
    let mut p = Polynomial::constant(width, qi(scale));
    for r in roots {
        p = p.mul_linear(&root_linear(r));
    }
    p
}

/// `scale / Π(listed roots)` as a rational form.
fn inverse_roots(width: usize, scale: i64, roots: &[&[i64]]) -> RationalForm {
    let mut f = RationalForm::from_polynomial(Polynomial::constant(width, qi(scale)));
    for r in roots {
        f = f.div_linear(&root_linear(r));
    }
    f
}

/// `Σ c · α_i α_j` — the irreducible quadratic factors of the tabulated
/// rank-3 `d`-polynomials.
fn quadratic(width: usize, terms: &[(i64, usize, usize)]) -> Polynomial {
    let mut p = Polynomial::zero(width);
    for &(c, i, j) in terms {
        let mut a = vec![0i64; width - 1];
        a[i - 1] += 1;
        let mut b = vec![0i64; width - 1];
        b[j - 1] += 1;
        p = p.add(&root_product(width, c, &[&a, &b]));
    }
    p
}

fn label(rs: &RootSystem, w: &FiniteWeylElement) -> String {
    word_label(&rs.reduced_word(w))
}

/// Criterion 1 — the full rank-2 worked product `σ^{σ₁σ₂} ⋆ σ^{ω₀}`
/// together with its published intermediate values: three element-level
/// `c`-coefficients at `δ = 0`, four coset-bracketed `d`-polynomials, and
/// the two assembled constants.
fn c1(_profile: Profile) -> Result<String, String> {
    let eng = Engine::new(system("A2"));
    let rs = eng.root_system().clone();
    let af = eng.affine();

    let x = lib(af.from_word(&[2, 0]))?; // σ₁σ₂ t_{−θ∨}
    let y = lib(af.from_word(&[0]))?; // σ_θ t_{−θ∨}

    // Element-level c at δ = 0: −1/θ, 1/(α₂θ), −1/(α₁α₂).
    let row_y = lib(eng.c_all(&y))?;
    let got = lib(row_y.get(&y).eval_delta_zero())?;
    let want = inverse_roots(3, -1, &[&[1, 1]]);
    ensure!(got == want, "c'_(s0,s0): got {got}, want {want}");
    let row_x = lib(eng.c_all(&x))?;
    let got = lib(row_x.get(&y).eval_delta_zero())?;
    let want = inverse_roots(3, 1, &[&[0, 1], &[1, 1]]);
    ensure!(got == want, "c'_(s2s0,s0): got {got}, want {want}");
    let got = lib(row_x.get(&x).eval_delta_zero())?;
    let want = inverse_roots(3, -1, &[&[1, 0], &[0, 1]]);
    ensure!(got == want, "c'_(s2s0,s2s0): got {got}, want {want}");

    // Bracketed d-polynomials at the two length-5 coset keys.
    let k1 = af.coset_key(&lib(af.from_word(&[0, 2, 1, 2, 0]))?); // σ_θ t_{−2θ∨}
    let k2 = af.coset_key(&lib(af.from_word(&[0, 2, 1, 0, 1]))?); // σ_θ t_{−α₂∨−θ∨}
    ensure!(k1 == CorootVec(vec![2, 2]), "coset key of σ_θ t_(−2θ∨): got {k1:?}");
    ensure!(k2 == CorootVec(vec![2, 1]), "coset key of σ_θ t_(−α₂∨−θ∨): got {k2:?}");
    let z1 = lib(af.from_word(&[2, 1, 0]))?; // σ₁ t_{−θ∨}
    let z2 = lib(af.from_word(&[1, 2, 0]))?; // σ₂ t_{−θ∨}
    let theta: &[i64] = &[1, 1];
    let cases: [(&AffineWeylElement, &CorootVec, Polynomial, &str); 4] = [
        (&z1, &k1, root_product(3, -1, &[&[1, 0], theta, theta]), "d_(s2s1s0,[2θ∨])"),
        (&z1, &k2, root_product(3, -1, &[&[1, 0], &[1, 0], theta]), "d_(s2s1s0,[θ∨+α₁∨])"),
        (&z2, &k1, root_product(3, -1, &[&[0, 1], theta, theta]), "d_(s1s2s0,[2θ∨])"),
        (&z2, &k2, Polynomial::zero(3), "d_(s1s2s0,[θ∨+α₁∨])"),
    ];
    for (z, key, want, label) in &cases {
        let got = lib(eng.d_bracket(z, key))?;
        ensure!(&got == want, "{label}: got {got}, want {want}");
    }

    // The two assembled homology constants at the length-3 targets.
    let b = lib(pontryagin_constants(&eng, &x, &y))?;
    ensure!(b.get(&z1).is_zero(), "assembled constant at σ₁ t_(−θ∨): got {}, want 0", b.get(&z1));
    ensure!(
        b.get(&z2) == Polynomial::one(3),
        "assembled constant at σ₂ t_(−θ∨): got {}, want 1",
        b.get(&z2)
    );

    // The product itself.
    let u = lib(rs.weyl_from_word(&[1, 2]))?;
    let v = lib(rs.weyl_from_word(&[1, 2, 1]))?;
    let (q, choice) = lib(quantum_product(&eng, &u, &v))?;
    let rows = q.rows(&rs);
    ensure!(
        rows.len() == 1
            && rows[0].q_exponents == vec![1, 1]
            && rows[0].w_word == vec![2]
            && rows[0].coefficient == Polynomial::one(3),
        "product: got {}, want (1) q1 q2 S[s2]",
        q.display(&rs)
    );
    Ok(format!(
        "σ^(s1 s2) ⋆ σ^(s1 s2 s1) = {} via η = {:?}, κ = {:?}; 3 c-values, 4 d-values, both \
         assembled constants match",
        q.display(&rs),
        choice.eta.0,
        choice.kappa.0
    ))
}

/// Criterion 2 — the degree-`θ∨` point of `σ^{ω₀} ⋆ σ^{ω₀}` in `A2` is 1,
/// and the full product is `q₁q₂σ^{σ₁σ₂} + q₁q₂σ^{σ₂σ₁}`.
fn c2(_profile: Profile) -> Result<String, String> {
    let eng = Engine::new(system("A2"));
    let rs = eng.root_system().clone();
    let w0 = rs.longest_element();
    let target = lib(rs.weyl_from_word(&[1, 2]))?;
    let theta_vee = CorootVec(vec![1, 1]);
    let n = lib(gromov_witten(&eng, &w0, &w0, &target, &theta_vee))?;
    ensure!(n == qi(1), "N_(ω₀,ω₀)^(s1s2,θ∨): got {n}, want 1");

    let (q, _) = lib(quantum_product(&eng, &w0, &w0))?;
    let rows = q.rows(&rs);
    ensure!(
        rows.len() == 2
            && rows.iter().all(|r| r.q_exponents == vec![1, 1] && r.coefficient == Polynomial::one(3))
            && rows[0].w_word == vec![1, 2]
            && rows[1].w_word == vec![2, 1],
        "product: got {}, want (1) q1 q2 S[s1 s2] + (1) q1 q2 S[s2 s1]",
        q.display(&rs)
    );
    Ok(format!("N = 1 and σ^ω₀ ⋆ σ^ω₀ = {}", q.display(&rs)))
}

/// Criterion 3 — the rank-3 worked product
/// `σ^{σ₁σ₂σ₃σ₁σ₂} ⋆ σ^{σ₃σ₁σ₂σ₃σ₁σ₂}` in `B3` with its five tabulated
/// `c`-brackets and the complete `d`-table over the five coset keys the
/// assembly touches.
fn c3(_profile: Profile) -> Result<String, String> {
    let eng = Engine::new(system("B3"));
    let rs = eng.root_system().clone();
    let af = eng.affine();
    let u = lib(rs.weyl_from_word(&[1, 2, 3, 1, 2]))?;
    let v = lib(rs.weyl_from_word(&[3, 1, 2, 3, 1, 2]))?;
    let m_theta = rs.theta_vee().scale(-1);
    ensure!(m_theta == CorootVec(vec![-1, -2, -1]), "−θ∨ in B3: got {m_theta:?}");
    let x = AffineWeylElement { w: u.clone(), lam: m_theta.clone() };
    let y = AffineWeylElement { w: v.clone(), lam: m_theta.clone() };
    ensure!(
        af.is_min_coset_rep(&x) && af.is_min_coset_rep(&y),
        "u t_(−θ∨) and v t_(−θ∨) must be minimal representatives"
    );

    // The three tabulated coset keys of the two c-rows.
    let k_s0 = af.coset_key(&lib(af.from_word(&[0]))?);
    let k_s20 = af.coset_key(&lib(af.from_word(&[2, 0]))?);
    let k_s320 = af.coset_key(&lib(af.from_word(&[3, 2, 0]))?);
    ensure!(k_s0 == CorootVec(vec![1, 2, 1]), "coset key [s0]: got {k_s0:?}");
    ensure!(k_s20 == CorootVec(vec![1, 1, 1]), "coset key [s2 s0]: got {k_s20:?}");
    ensure!(k_s320 == CorootVec(vec![1, 1, 0]), "coset key [s3 s2 s0]: got {k_s320:?}");

    // θ = α₁+2α₂+2α₃ and the other recurring roots, as coordinate rows.
    let th: &[i64] = &[1, 2, 2];
    let c_cases: [(&AffineWeylElement, &CorootVec, RationalForm, &str); 5] = [
        (&x, &k_s0, inverse_roots(4, -2, &[&[0, 1, 0], th, &[0, 1, 2]]), "c_(x,[s0])"),
        (&x, &k_s20, inverse_roots(4, 1, &[&[0, 1, 0], &[0, 0, 1], &[1, 1, 2]]), "c_(x,[s2 s0])"),
        (&x, &k_s320, inverse_roots(4, -1, &[&[0, 0, 1], &[0, 1, 2], &[1, 1, 0]]), "c_(x,[s3 s2 s0])"),
        (&y, &k_s0, inverse_roots(4, 1, &[&[0, 1, 0], th]), "c_(y,[s0])"),
        (&y, &k_s20, inverse_roots(4, -1, &[&[0, 1, 0], &[1, 1, 2]]), "c_(y,[s2 s0])"),
    ];
    for (elem, key, want, label) in &c_cases {
        let got = lib(eng.c_bracket(elem, key))?;
        ensure!(&got == want, "{label}: got {got}, want {want}");
    }

    // The five coset keys reachable as sums of x- and y-keys, with the
    // lengths of their minimal representatives.
    let keysums = [
        (CorootVec(vec![2, 4, 2]), 9usize),
        (CorootVec(vec![2, 3, 2]), 6),
        (CorootVec(vec![2, 2, 2]), 10),
        (CorootVec(vec![2, 3, 1]), 7),
        (CorootVec(vec![2, 2, 1]), 5),
    ];
    for (key, len) in &keysums {
        let (_, word) = eng.coset_min_word(key);
        ensure!(
            word.len() == *len,
            "minimal representative of key {key:?} has length {}, want {len}",
            word.len()
        );
    }

    // The complete d-table over the three targets and five keys.
    let z1 = lib(af.from_word(&[1, 2, 3, 2, 0]))?; // σ₂σ₃σ₂ t_{−θ∨}
    let z2 = lib(af.from_word(&[2, 3, 1, 2, 0]))?; // σ₃σ₁σ₂ t_{−θ∨}
    let z3 = lib(af.from_word(&[0, 2, 3, 2, 0]))?; // σ₁σ₂σ₃σ₂σ₁ t_{−θ∨−α₁∨}
    let quad_z2 = quadratic(4, &[(2, 1, 1), (2, 1, 2), (1, 2, 2), (6, 1, 3), (4, 2, 3), (4, 3, 3)]);
    let quad_z3a = quadratic(4, &[(1, 1, 1), (3, 1, 2), (3, 2, 2), (3, 1, 3), (6, 2, 3), (2, 3, 3)]);
    let quad_z3b = quadratic(4, &[(1, 1, 1), (2, 1, 2), (3, 1, 3), (1, 2, 3), (2, 3, 3)]);
    let d_cases: [(&AffineWeylElement, usize, Polynomial); 15] = [
        (&z1, 0, root_product(4, -1, &[&[0, 1, 0], th, th, &[0, 1, 1], &[0, 1, 2]])),
        (&z1, 1, Polynomial::zero(4)),
        (&z1, 2, root_product(4, 1, &[&[0, 1, 0], &[0, 0, 1], &[0, 1, 2], &[1, 1, 2], &[1, 1, 2]])),
        (&z1, 3, Polynomial::zero(4)),
        (&z1, 4, Polynomial::zero(4)),
        (&z2, 0, root_product(4, -2, &[th, th, th, &[0, 1, 1], &[1, 1, 1]])),
        (&z2, 1, root_product(4, -1, &[th, &[0, 1, 2], &[1, 1, 1], &[1, 1, 2], &[1, 1, 2]])),
        (&z2, 2, root_product(4, -1, &[&[0, 0, 1], &[1, 1, 2], &[1, 1, 2]]).mul(&quad_z2)),
        (&z2, 3, root_product(4, -1, &[&[0, 1, 0], th, &[1, 1, 0], &[1, 1, 0], &[1, 1, 1]])),
        (&z2, 4, Polynomial::zero(4)),
        (&z3, 0, root_product(4, -1, &[th, th, th]).mul(&quad_z3a)),
        (&z3, 1, root_product(4, -1, &[th, th, &[1, 1, 1], &[1, 1, 2], &[1, 1, 2]])),
        (&z3, 2, root_product(4, -1, &[&[1, 1, 2], &[1, 1, 2], &[1, 1, 2]]).mul(&quad_z3b)),
        (&z3, 3, root_product(4, -1, &[th, th, &[1, 1, 0], &[1, 1, 0], &[1, 1, 1]])),
        (&z3, 4, root_product(4, -1, &[&[1, 0, 0], th, &[1, 1, 0], &[1, 1, 1], &[1, 1, 2]])),
    ];
    for (z, key_idx, want) in &d_cases {
        let key = &keysums[*key_idx].0;
        let got = lib(eng.d_bracket(z, key))?;
        ensure!(
            &got == want,
            "d at target {:?}, key {key:?}: got {got}, want {want}",
            af.reduced_word(z)
        );
    }

    // The assembled constants are all 1, and the product collects them.
    let b = lib(pontryagin_constants(&eng, &x, &y))?;
    for z in [&z1, &z2, &z3] {
        ensure!(
            b.get(z) == Polynomial::one(4),
            "assembled constant at {:?}: got {}, want 1",
            af.reduced_word(z),
            b.get(z)
        );
    }
    let (q, _) = lib(quantum_product(&eng, &u, &v))?;
    ensure!(q.len() == 3, "product has {} terms: {}", q.len(), q.display(&rs));
    let expect = [
        (lib(rs.weyl_from_word(&[2, 3, 2]))?, vec![1, 2, 1]),
        (lib(rs.weyl_from_word(&[3, 1, 2]))?, vec![1, 2, 1]),
        (lib(rs.weyl_from_word(&[1, 2, 3, 2, 1]))?, vec![0, 2, 1]),
    ];
    for (w, lam) in expect {
        let key = QKey::new(w.clone(), CorootVec(lam.clone()));
        ensure!(
            q.get(&key) == Polynomial::one(4),
            "product term q^{lam:?} σ^({}): got {}, want 1",
            label(&rs, &w),
            q.get(&key)
        );
    }
    Ok(format!(
        "σ^(s1 s2 s3 s1 s2) ⋆ σ^(s3 s1 s2 s3 s1 s2) = {}; 5 c-brackets and the 15-entry d-table \
         match",
        q.display(&rs)
    ))
}

/// Criterion 4 — both inverse identities
/// `Σ_z c_{x,z} d_{y,z} = δ_{x,y} = Σ_z c_{z,x} d_{z,y}` over the full
/// length balls `ℓ ≤ 6` in `A2` and `ℓ ≤ 5` in `B2`.
fn c4(_profile: Profile) -> Result<String, String> {
    let a2 = Engine::new(system("A2"));
    let ra = lib(a2.verify_inverse(6))?;
    let b2 = Engine::new(system("B2"));
    let rb = lib(b2.verify_inverse(5))?;
    Ok(format!(
        "A2 ball ℓ ≤ 6: {} elements / {} ordered pairs; B2 ball ℓ ≤ 5: {} elements / {} pairs; \
         both identities hold everywhere",
        ra.elements, ra.pairs, rb.elements, rb.pairs
    ))
}

fn chevalley_sweep(t: &str, bound: usize) -> Result<usize, String> {
    let eng = Engine::new(system(t)).with_length_bound(bound);
    let rs = eng.root_system().clone();
    let mut count = 0usize;
    for u in lib(rs.enumerate_weyl())? {
        for i in 1..=rs.rank() {
            let si = lib(rs.simple_weyl(i))?;
            let got = lib(equivariant_qconstants(&eng, &si, &u))?;
            let want = lib(equivariant_quantum_chevalley(&rs, i, &u))?;
            ensure!(
                got == want,
                "type {t}: σ^s{i} ⋆ σ^({}) deviates from the closed form: got {}, want {}",
                label(&rs, &u),
                got.display(&rs),
                want.display(&rs)
            );
            count += 1;
        }
    }
    Ok(count)
}

/// Criterion 5 — every divisor product, computed through the affine
/// assembly, equals the closed equivariant quantum Chevalley form: all of
/// `A2` and `B2`, plus all of `A3` under the full profile.
fn c5(profile: Profile) -> Result<String, String> {
    let mut swept = 0usize;
    for t in ["A2", "B2"] {
        swept += chevalley_sweep(t, 24)?;
    }
    let mut details = format!("A2 and B2 in full ({swept} divisor products)");
    if profile == Profile::Full {
        let a3 = chevalley_sweep("A3", 30)?;
        details.push_str(&format!(", plus A3 in full ({a3} products)"));
    }
    Ok(details)
}

/// Criterion 6 — the translation rule `ℑ_x · ℑ_{t_μ} = ℑ_{x t_μ}` and the
/// closed divisor rule for `ℑ_{σ_i t_λ} · ℑ_{u t_μ}`, over every
/// admissible pair with `λ = μ = −θ∨` in `A2` and `B2`.
fn c6(_profile: Profile) -> Result<String, String> {
    let mut translations = 0usize;
    let mut divisors = 0usize;
    for t in ["A2", "B2"] {
        let eng = Engine::new(system(t));
        let rs = eng.root_system().clone();
        let af = eng.affine();
        let m_theta = rs.theta_vee().scale(-1);
        let trans = AffineWeylElement::translation(m_theta.clone());
        ensure!(af.is_min_coset_rep(&trans), "type {t}: t_(−θ∨) must be minimal");
        let admissible: Vec<AffineWeylElement> = lib(rs.enumerate_weyl())?
            .into_iter()
            .map(|w| AffineWeylElement { w, lam: m_theta.clone() })
            .filter(|x| af.is_min_coset_rep(x))
            .collect();
        for x in &admissible {
            ensure!(
                lib(translation_product_check(&eng, x, &trans))?,
                "type {t}: translation rule fails at {:?}",
                af.reduced_word(x)
            );
            translations += 1;
        }
        for i in 1..=rs.rank() {
            let xi = AffineWeylElement { w: lib(rs.simple_weyl(i))?, lam: m_theta.clone() };
            if !af.is_min_coset_rep(&xi) {
                continue;
            }
            for y in &admissible {
                ensure!(
                    lib(chevalley_pontryagin_check(&eng, &xi, y))?,
                    "type {t}: divisor rule fails at (σ{i} t_(−θ∨), {:?})",
                    af.reduced_word(y)
                );
                divisors += 1;
            }
        }
    }
    Ok(format!(
        "translation rule on {translations} products and divisor rule on {divisors} products at \
         λ = μ = −θ∨ in A2 and B2"
    ))
}

/// Criterion 7 — the `λ = 0` block of the quantum constants equals the
/// finite `Σ_{v₁} d_{u,v₁} d_{v,v₁} c_{w,v₁}` formula for all 36 pairs in
/// `A2`, and at `α = 0` both match a brute-force cup-product oracle built
/// from iterated divisor (Chevalley) multiplication and exact elimination.
fn c7(_profile: Profile) -> Result<String, String> {
    let eng = Engine::new(system("A2"));
    let rs = eng.root_system().clone();
    let weyl = lib(rs.enumerate_weyl())?;
    let oracle = CupOracle::build(&rs)?;
    let mut checked = 0usize;
    for u in &weyl {
        for v in &weyl {
            let full = lib(equivariant_qconstants(&eng, u, v))?;
            let finite = lib(gb_equivariant_constants(&eng, u, v))?;
            ensure!(
                full.classical_part() == finite,
                "λ = 0 block of σ^({}) ⋆ σ^({}) differs from the finite d·d·c formula",
                label(&rs, u),
                label(&rs, v)
            );
            for w in &weyl {
                let got = finite.get(w).constant_term();
                let want = oracle.product(u, v, w);
                ensure!(
                    got == want,
                    "classical constant at ({}, {}, {}): got {got}, want {want}",
                    label(&rs, u),
                    label(&rs, v),
                    label(&rs, w)
                );
                checked += 1;
            }
            ensure!(
                {
                    let max = rs.length(u) + rs.length(v);
                    finite
                        .terms()
                        .all(|(w, _)| rs.length(w) <= max)
                },
                "classical block of ({}, {}) escapes the length window",
                label(&rs, u),
                label(&rs, v)
            );
        }
    }
    Ok(format!(
        "36 pairs: λ = 0 blocks equal the finite formula, and {checked} Schubert coefficients \
         match the cup-product oracle at α = 0"
    ))
}

/// Criterion 8 — randomized structural laws in `A2` and `B2`:
/// commutativity across engines, homogeneity, the unit law, effective
/// `q`-support, vanishing at non-minimal `w t_μ`, agreement of the scalar
/// evaluation with the assembled sum, and invariance under a second,
/// strictly deeper translation choice.
fn c8(_profile: Profile) -> Result<String, String> {
    const SAMPLES: usize = 12;
    let mut rng = XorShift64Star::new(0x9E37_79B9_7F4A_7C15);
    let mut products = 0usize;
    let mut gw_points = 0usize;
    let mut rep_vanishings = 0usize;
    for t in ["A2", "B2"] {
        let rs = system(t);
        let n = rs.rank();
        let width = n + 1;
        let eng = Engine::new(rs.clone());
        let eng_rev = Engine::new(rs.clone());
        let weyl = lib(rs.enumerate_weyl())?;
        let zero = CorootVec::zero(n);
        let id = FiniteWeylElement::identity(n);

        // Unit law over the whole group.
        for u in &weyl {
            let got = lib(equivariant_qconstants(&eng, &id, u))?;
            let want = QuantumSum::singleton(
                width,
                QKey::new(u.clone(), zero.clone()),
                Polynomial::one(width),
            );
            ensure!(got == want, "type {t}: unit law fails at σ^({})", label(&rs, u));
        }

        // A strictly antidominant regular deepening, used for the
        // alternative translation choice below.
        let deep = rs.theta_vee().scale(-1).add(&small_regular_antidominant(&rs)?);

        for _ in 0..SAMPLES {
            let u = &weyl[rng.below(weyl.len())];
            let v = &weyl[rng.below(weyl.len())];
            let sum = lib(equivariant_qconstants(&eng, u, v))?;
            products += 1;

            // Commutativity, recomputed on an engine with cold caches.
            let rev = lib(equivariant_qconstants(&eng_rev, v, u))?;
            ensure!(
                sum == rev,
                "type {t}: σ^({}) ⋆ σ^({}) is not symmetric",
                label(&rs, u),
                label(&rs, v)
            );

            // Homogeneity and effective support.
            let (lu, lv) = (rs.length(u) as i64, rs.length(v) as i64);
            for (key, poly) in sum.terms() {
                ensure!(
                    dominates(&key.lam, &zero),
                    "type {t}: non-effective exponent {:?} in σ^({}) ⋆ σ^({})",
                    key.lam,
                    label(&rs, u),
                    label(&rs, v)
                );
                let expected = lu + lv - rs.length(&key.w) as i64 - rs.pairing_2rho(&key.lam);
                ensure!(
                    expected >= 0 && poly.homogeneous_degree() == Some(expected as u32),
                    "type {t}: term q^{:?} σ^({}) of σ^({}) ⋆ σ^({}) is not homogeneous of \
                     degree {expected}: {poly}",
                    key.lam,
                    label(&rs, &key.w),
                    label(&rs, u),
                    label(&rs, v)
                );
            }

            // Scalar evaluations agree with the assembled sum at every
            // degree-matching (w, λ), including the vanishing cases.
            for w in &weyl {
                let rest = lu + lv - rs.length(w) as i64;
                if rest < 0 || rest % 2 != 0 {
                    continue;
                }
                for lam in compositions((rest / 2) as usize, n) {
                    let want = sum.get(&QKey::new(w.clone(), lam.clone())).constant_term();
                    let got = lib(gromov_witten(&eng, u, v, w, &lam))?;
                    ensure!(
                        got == want,
                        "type {t}: invariant at ({}, {}, {}, {:?}): got {got}, want {want}",
                        label(&rs, u),
                        label(&rs, v),
                        label(&rs, w),
                        lam.0
                    );
                    gw_points += 1;
                    let choice = lib(choose_translations(&rs, u, v, &lam))?;
                    let z = AffineWeylElement { w: w.clone(), lam: choice.mu.clone() };
                    if !eng.affine().is_min_coset_rep(&z) {
                        ensure!(
                            got.is_zero(),
                            "type {t}: invariant at non-minimal w t_μ must vanish: got {got}"
                        );
                        rep_vanishings += 1;
                    }
                }
            }

            // Invariance under a second, strictly deeper valid choice.
            let base = lib(choose_translations(&rs, u, v, &zero))?;
            ensure!(base.eta != deep, "type {t}: alternative choice coincides with the default");
            let alt = TranslationChoice {
                eta: deep.clone(),
                kappa: base.kappa.clone(),
                mu: deep.add(&base.kappa),
            };
            let again = lib(equivariant_qconstants_with(&eng, u, v, &alt))?;
            ensure!(
                again == sum,
                "type {t}: σ^({}) ⋆ σ^({}) depends on the translation choice",
                label(&rs, u),
                label(&rs, v)
            );
        }
    }
    Ok(format!(
        "{products} sampled products in A2/B2: symmetric, homogeneous, effective, unit law over \
         both full groups, {gw_points} scalar evaluations ({rep_vanishings} vanishing at \
         non-minimal w t_μ), invariant under a deeper translation choice"
    ))
}

/// Criterion 9 — the `2^m` subword enumerations agree with the dynamic
/// program on every word the worked examples touch (all of length ≤ 12).
fn c9(_profile: Profile) -> Result<String, String> {
    let a2_words: &[&[usize]] =
        &[&[0], &[2, 0], &[2, 1, 0], &[1, 2, 0], &[0, 2, 1, 2, 0], &[0, 2, 1, 0, 1]];
    let b3_words: &[&[usize]] = &[
        &[2, 0],
        &[3, 2, 0],
        &[1, 2, 3, 2, 0],
        &[2, 3, 1, 2, 0],
        &[0, 2, 3, 2, 0],
        &[0, 2, 3, 1, 2, 0],
        &[0, 3, 2, 3, 1, 2, 0],
        &[0, 2, 3, 2, 1, 2, 3, 2, 0],
        &[2, 0, 2, 3, 2, 1, 2, 3, 2, 0],
    ];
    let mut words = 0usize;
    let mut c_entries = 0usize;
    let mut d_entries = 0usize;
    for (t, list) in [("A2", a2_words), ("B3", b3_words)] {
        let eng = Engine::new(system(t));
        for word in list {
            ensure!(word.len() <= 12, "word {word:?} exceeds the criterion's length window");
            let row = lib(eng.c_table_for_word(word))?;
            let c_ref = lib(eng.c_naive(word))?;
            ensure!(
                row.len() == c_ref.len(),
                "type {t}, word {word:?}: c supports differ ({} vs {})",
                row.len(),
                c_ref.len()
            );
            for (y, val) in row.entries() {
                ensure!(
                    c_ref.get(y) == Some(val),
                    "type {t}, word {word:?}: c entry differs at {:?}",
                    eng.affine().reduced_word(y)
                );
                c_entries += 1;
            }
            let col = lib(eng.d_column(word, 0))?;
            let d_ref = lib(eng.d_naive(word))?;
            ensure!(
                col.len() == d_ref.len(),
                "type {t}, word {word:?}: d supports differ ({} vs {})",
                col.len(),
                d_ref.len()
            );
            for (y, val) in col.iter() {
                ensure!(
                    d_ref.get(y) == Some(val),
                    "type {t}, word {word:?}: d entry differs at {:?}",
                    eng.affine().reduced_word(y)
                );
                d_entries += 1;
            }
            words += 1;
        }
    }
    Ok(format!(
        "{words} reduced words (ℓ ≤ 12): {c_entries} c-entries and {d_entries} d-entries agree \
         with the 2^m enumeration"
    ))
}

/// Brute-force classical cup-product oracle on `H^*(G/B; ℚ)`.
///
/// Uses only the divisor (Chevalley) rule `σ^{s_i} · σ^u =
/// Σ_{ℓ(uσ_γ)=ℓ(u)+1} ⟨γ∨, w_i⟩ σ^{uσ_γ}` — none of the affine machinery.
/// Each basis class is expanded over monomials in the divisor classes by
/// exact Gaussian elimination (the divisors generate the rational
/// cohomology), after which an arbitrary product is two matrix sweeps.
struct CupOracle {
    index: std::collections::BTreeMap<FiniteWeylElement, usize>,
    /// `mats[i-1][u]` is the image of the basis vector `u` under
    /// multiplication by the `i`-th divisor class.
    mats: Vec<Vec<Vec<Q>>>,
    /// `expansions[u]`: the divisor-monomial expansion of `σ^u`, as
    /// `(word, coefficient)` pairs with nonzero coefficients.
    expansions: Vec<Vec<(Vec<usize>, Q)>>,
}

impl CupOracle {
    fn build(rs: &RootSystem) -> Result<CupOracle, String> {
        let weyl = lib(rs.enumerate_weyl())?;
        let nw = weyl.len();
        let n = rs.rank();
        let index: std::collections::BTreeMap<FiniteWeylElement, usize> =
            weyl.iter().cloned().zip(0..).collect();

        let mut mats = Vec::with_capacity(n);
        for i in 1..=n {
            let mut cols = vec![vec![Q::zero(); nw]; nw];
            for (ui, u) in weyl.iter().enumerate() {
                let lu = rs.length(u);
                for gamma in rs.positive_roots() {
                    let target = u.multiply(&lib(rs.reflection(gamma))?);
                    if rs.length(&target) != lu + 1 {
                        continue;
                    }
                    let coef = rs.pairing_fundamental_weight(&lib(rs.coroot_of(gamma))?, i);
                    if coef != 0 {
                        let ti = index[&target];
                        cols[ui][ti] = &cols[ui][ti] + &qi(coef);
                    }
                }
            }
            mats.push(cols);
        }

        let mut expansions = Vec::with_capacity(nw);
        for u in &weyl {
            let k = rs.length(u);
            let words = index_words(n, k);
            let mut a = vec![vec![Q::zero(); words.len()]; nw];
            for (wi, word) in words.iter().enumerate() {
                let mut e_id = vec![Q::zero(); nw];
                e_id[index[&FiniteWeylElement::identity(n)]] = qi(1);
                let image = apply_word(&mats, word, e_id);
                for (r, val) in image.into_iter().enumerate() {
                    a[r][wi] = val;
                }
            }
            let mut target = vec![Q::zero(); nw];
            target[index[u]] = qi(1);
            let sol = solve_exact(a, target).ok_or_else(|| {
                format!("no divisor-monomial expansion for σ^({})", word_label(&rs.reduced_word(u)))
            })?;
            expansions
                .push(words.into_iter().zip(sol).filter(|(_, c)| !c.is_zero()).collect());
        }
        Ok(CupOracle { index, mats, expansions })
    }

    fn product(&self, u: &FiniteWeylElement, v: &FiniteWeylElement, w: &FiniteWeylElement) -> Q {
        let nw = self.index.len();
        let mut acc = Q::zero();
        for (word, c) in &self.expansions[self.index[u]] {
            let mut e_v = vec![Q::zero(); nw];
            e_v[self.index[v]] = qi(1);
            let image = apply_word(&self.mats, word, e_v);
            acc = &acc + &(&image[self.index[w]] * c);
        }
        acc
    }
}

/// All words over `{1, …, n}` of the given length, in lexicographic order.
fn index_words(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (1..=n).map(move |i| {
                    let mut next = w.clone();
                    next.push(i);
                    next
                })
            })
            .collect();
    }
    out
}

fn apply_word(mats: &[Vec<Vec<Q>>], word: &[usize], start: Vec<Q>) -> Vec<Q> {
    let mut v = start;
    for &i in word {
        let m = &mats[i - 1];
        let mut out = vec![Q::zero(); v.len()];
        for (u, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, mc) in m[u].iter().enumerate() {
                if !mc.is_zero() {
                    out[t] = &out[t] + &(mc * c);
                }
            }
        }
        v = out;
    }
    v
}

/// Solve `a · x = b` exactly over ℚ by Gauss–Jordan elimination, taking
/// free variables as zero. Returns `None` when inconsistent.
fn solve_exact(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut r = 0usize;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        let pivot = a[r][c].clone();
        for j in c..cols {
            a[r][j] = &a[r][j] / &pivot;
        }
        b[r] = &b[r] / &pivot;
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..cols {
                let t = &a[r][j] * &f;
                a[i][j] = &a[i][j] - &t;
            }
            let t = &b[r] * &f;
            b[i] = &b[i] - &t;
        }
        pivot_of_col[c] = Some(r);
        r += 1;
    }
    if b.iter().skip(r).any(|v| !v.is_zero()) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (c, pivot) in pivot_of_col.iter().enumerate() {
        if let Some(row) = pivot {
            x[c] = b[*row].clone();
        }
    }
    Some(x)
}

/// All length-`parts` vectors of non-negative integers summing to
/// `total`, in lexicographic order.
fn compositions(total: usize, parts: usize) -> Vec<CorootVec> {
    fn rec(total: i64, parts: usize, prefix: &mut Vec<i64>, out: &mut Vec<CorootVec>) {
        if parts == 1 {
            prefix.push(total);
            out.push(CorootVec(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            rec(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(CorootVec(Vec::new()));
        }
        return out;
    }
    rec(total as i64, parts, &mut Vec::new(), &mut out);
    out
}

/// The height-least strictly antidominant integral vector, found by direct
/// search (independently of the production translation chooser, which this
/// value cross-checks in criterion 8).
fn small_regular_antidominant(rs: &RootSystem) -> Result<CorootVec, String> {
    let n = rs.rank();
    for extra in 0..=6 * n {
        for comp in compositions(extra, n) {
            let lam = CorootVec((0..n).map(|j| -(comp.0[j] + 1)).collect());
            let mut regular = true;
            for j in 0..n {
                if lib(rs.pairing(&lam, &RootVec::unit(n, j)))? >= 0 {
                    regular = false;
                    break;
                }
            }
            if regular {
                return Ok(lam);
            }
        }
    }
    Err("no strictly antidominant vector within the search window".to_string())
}

/// `xorshift*` generator: tiny, seedable, and stable across platforms, so
/// the randomized criterion is reproducible.
struct XorShift64Star(u64);

impl XorShift64Star {
    fn new(seed: u64) -> Self {
        XorShift64Star(if seed == 0 { 1 } else { seed })
    }

    fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_parsing_and_names() {
        assert_eq!("quick".parse::<Profile>().unwrap(), Profile::Quick);
        assert_eq!("FULL".parse::<Profile>().unwrap(), Profile::Full);
        assert!("fast".parse::<Profile>().is_err());
        assert_eq!(criterion_name(1), Some("A2 worked example"));
        assert_eq!(criterion_name(9), Some("naive-oracle equivalence"));
        assert_eq!(criterion_name(0), None);
        assert_eq!(criterion_name(10), None);
        assert!(run(0, Profile::Quick).is_none());
    }

    #[test]
    fn report_line_format() {
        let report = CriterionReport {
            number: 4,
            name: "inverse identities",
            passed: true,
            details: "everything checks".to_string(),
            duration: Duration::from_millis(1500),
        };
        assert_eq!(report.line(), "criterion 4 PASS (1.50s) inverse identities: everything checks");
    }

    #[test]
    fn worked_example_criteria_pass() {
        for number in [1, 2] {
            let report = run(number, Profile::Quick).unwrap();
            assert!(report.passed, "{}", report.line());
        }
    }

    #[test]
    fn composition_enumeration() {
        assert_eq!(compositions(0, 2), vec![CorootVec(vec![0, 0])]);
        assert_eq!(
            compositions(2, 2),
            vec![CorootVec(vec![0, 2]), CorootVec(vec![1, 1]), CorootVec(vec![2, 0])]
        );
        assert_eq!(compositions(3, 3).len(), 10);
    }

    #[test]
    fn least_regular_vectors_match_hand_computation() {
        assert_eq!(small_regular_antidominant(&system("A2")).unwrap(), CorootVec(vec![-1, -1]));
        assert_eq!(small_regular_antidominant(&system("B2")).unwrap(), CorootVec(vec![-3, -2]));
        assert_eq!(small_regular_antidominant(&system("B3")).unwrap(), CorootVec(vec![-3, -5, -3]));
    }

    #[test]
    fn exact_solver_handles_redundant_columns() {
        // x + y = 2, 2x + 2y = 4 with a duplicated column: consistent.
        let a = vec![vec![qi(1), qi(1)], vec![qi(2), qi(2)]];
        let sol = solve_exact(a, vec![qi(2), qi(4)]).unwrap();
        assert_eq!(sol, vec![qi(2), qi(0)]);
        // Inconsistent system.
        let a = vec![vec![qi(1)], vec![qi(1)]];
        assert!(solve_exact(a, vec![qi(1), qi(2)]).is_none());
    }

    #[test]
    fn cup_oracle_reproduces_divisor_squares() {
        // σ^{s1}·σ^{s1} in A2 is σ^{s2s1}: the oracle must see it.
        let rs = system("A2");
        let oracle = CupOracle::build(&rs).unwrap();
        let s1 = rs.weyl_from_word(&[1]).unwrap();
        let s21 = rs.weyl_from_word(&[2, 1]).unwrap();
        let s12 = rs.weyl_from_word(&[1, 2]).unwrap();
        assert_eq!(oracle.product(&s1, &s1, &s21), qi(1));
        assert_eq!(oracle.product(&s1, &s1, &s12), qi(0));
        // Poincaré pairing against the longest element: σ^u·σ^v hits
        // σ^{ω₀} exactly when v = ω₀u.
        let w0 = rs.longest_element();
        let id = FiniteWeylElement::identity(2);
        assert_eq!(oracle.product(&s1, &s12, &w0), qi(1));
        assert_eq!(oracle.product(&s1, &s21, &w0), qi(0));
        assert_eq!(oracle.product(&id, &w0, &w0), qi(1));
    }

    #[test]
    fn rng_is_deterministic() {
        let mut a = XorShift64Star::new(7);
        let mut b = XorShift64Star::new(7);
        for _ in 0..32 {
            assert_eq!(a.next_u64(), b.next_u64());
            let x = a.below(5);
            assert_eq!(x, b.below(5));
            assert!(x < 5);
        }
    }
}
