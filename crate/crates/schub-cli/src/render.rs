//! Rendering of library values as text lines and as JSON.
//!
//! The JSON encodings are fixed:
//!
//! * polynomial — list of `{"exp": [e₁, …, e_n, e_δ], "coef": "p/q"}`,
//!   one entry per nonzero term, in the canonical monomial order;
//! * rational form — `{"num": polynomial, "den": [[c₁, …, c_δ], …],
//!   "scalar": "p/q"}` where `den` lists the linear-form coefficient
//!   vectors of the denominator with multiplicity;
//! * affine Weyl element — `{"w": [reduced word over 1..n],
//!   "lambda": [coroot coordinates]}`, the canonical `w·t_λ` split.
//!
//! Every rational number is a string (`"1"`, `"-3/2"`), never a float;
//! exponents, words, and lattice coordinates are JSON integers.  All maps
//! iterate in a canonical order, so rendering is deterministic.

use schub::affine::{AffineWeyl, AffineWeylElement};
use schub::quantum::QuantumRow;
use schub::root_system::RootSystem;
use schub::symbolic::{Polynomial, Q, RationalForm};
use serde_json::{json, Value};

/// `"(a, b, c)"` — the text form of a coordinate vector.
pub fn ivec(v: &[i64]) -> String {
    let inner = v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ");
    format!("({inner})")
}

/// `"s1 s2"` for a word, `"e"` for the identity.
pub fn word_label(word: &[usize]) -> String {
    if word.is_empty() {
        "e".to_string()
    } else {
        word.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join(" ")
    }
}

fn q_str(q: &Q) -> Value {
    Value::String(q.to_string())
}

/// JSON encoding of a polynomial.
pub fn poly_json(p: &Polynomial) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(m, c)| json!({ "exp": m.exps(), "coef": q_str(c) }))
        .collect();
    Value::Array(terms)
}

/// JSON encoding of a rational form.
pub fn rf_json(r: &RationalForm) -> Value {
    let mut den: Vec<Value> = Vec::new();
    for (l, mult) in r.den() {
        let coeffs: Vec<Value> = l.coeffs().iter().map(q_str).collect();
        for _ in 0..mult {
            den.push(Value::Array(coeffs.clone()));
        }
    }
    json!({ "num": poly_json(r.num()), "den": den, "scalar": q_str(r.scalar()) })
}

/// Canonical JSON encoding of an affine Weyl element.
pub fn elem_json(rs: &RootSystem, x: &AffineWeylElement) -> Value {
    json!({ "w": rs.reduced_word(&x.w), "lambda": x.lam.0 })
}

/// Text label for an affine element, by its canonical reduced word.
pub fn elem_label(rs: &RootSystem, x: &AffineWeylElement) -> String {
    word_label(&AffineWeyl::new(rs).reduced_word(x))
}

/// One quantum-product row as text: `q^(1, 1) S[s2] : 1`.
pub fn qrow_text(row: &QuantumRow) -> String {
    format!(
        "q^{} S[{}] : {}",
        ivec(&row.q_exponents),
        word_label(&row.w_word),
        row.coefficient
    )
}

/// One quantum-product row as JSON.
pub fn qrow_json(row: &QuantumRow) -> Value {
    json!({
        "q": row.q_exponents,
        "w": row.w_word,
        "coef": poly_json(&row.coefficient),
    })
}

/// Pads `label` so that the `:` separators of a table line up.
pub fn padded(label: &str, width: usize) -> String {
    format!("{label:<width$}")
}
