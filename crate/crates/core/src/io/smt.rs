//! SMT-LIB 2 (QF_LRA) encoding of a piecewise-affine function.
//!
//! Inputs are `x_0 .. x_{n-1}`, outputs `y_0 .. y_{m-1}`. Each piece becomes
//! one assertion `(=> (and <constraints>) (and (= y_r <affine>) ...))`. The
//! script declares and asserts only; callers append their own assertions
//! and `(check-sat)`.

use std::fmt::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::pwa::PwaFn;
use crate::scalar::Scalar;

fn exact<T: Scalar>(value: &T) -> BigRational {
    value.to_rational().expect("piecewise-affine data must be finite")
}

fn numeral(n: &BigInt) -> String {
    n.to_string()
}

/// `p`, `(/ p q)`, `(- p)` or `(- (/ p q))`.
pub fn rational_literal(value: &BigRational) -> String {
    let magnitude = value.abs();
    let body = if magnitude.is_integer() {
        numeral(magnitude.numer())
    } else {
        format!("(/ {} {})", numeral(magnitude.numer()), numeral(magnitude.denom()))
    };
    if value.is_negative() {
        format!("(- {body})")
    } else {
        body
    }
}

fn affine<T: Scalar>(coeffs: &[T], constant: &T, var: &str) -> String {
    let mut terms = Vec::new();
    for (k, c) in coeffs.iter().enumerate() {
        let c = exact(c);
        if c.is_zero() {
            continue;
        }
        let name = format!("{var}_{k}");
        terms.push(if c.is_one() {
            name
        } else if (-c.clone()).is_one() {
            format!("(- {name})")
        } else {
            format!("(* {} {name})", rational_literal(&c))
        });
    }
    let constant = exact(constant);
    if !constant.is_zero() || terms.is_empty() {
        terms.push(rational_literal(&constant));
    }
    match terms.len() {
        1 => terms.pop().unwrap(),
        _ => format!("(+ {})", terms.join(" ")),
    }
}

fn conjunction(mut atoms: Vec<String>) -> String {
    match atoms.len() {
        0 => "true".to_string(),
        1 => atoms.pop().unwrap(),
        _ => format!("(and {})", atoms.join(" ")),
    }
}

fn disjunction(mut atoms: Vec<String>) -> String {
    match atoms.len() {
        0 => "false".to_string(),
        1 => atoms.pop().unwrap(),
        _ => format!("(or {})", atoms.join(" ")),
    }
}

/// Emits the encoding of `f`. With `assert_domain`, also asserts that the
/// input lies in at least one piece.
pub fn export_smt<T: Scalar>(f: &PwaFn<T>, assert_domain: bool) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "; piecewise-affine function R^{} -> R^{}, {} pieces",
        f.in_dim(),
        f.out_dim(),
        f.pieces().len()
    )
    .unwrap();
    out.push_str("(set-logic QF_LRA)\n");
    for i in 0..f.in_dim() {
        writeln!(out, "(declare-fun x_{i} () Real)").unwrap();
    }
    for r in 0..f.out_dim() {
        writeln!(out, "(declare-fun y_{r} () Real)").unwrap();
    }

    let mut guards = Vec::with_capacity(f.pieces().len());
    for (i, piece) in f.pieces().iter().enumerate() {
        let guard = conjunction(
            piece
                .polyhedron()
                .constraints()
                .iter()
                .map(|c| {
                    format!(
                        "(<= {} {})",
                        affine(c.coeffs().entries(), &T::zero(), "x"),
                        rational_literal(&exact(c.bound()))
                    )
                })
                .collect(),
        );
        let value = conjunction(
            (0..f.out_dim())
                .map(|r| {
                    format!(
                        "(= y_{r} {})",
                        affine(piece.matrix().row_slice(r), &piece.offset()[r], "x")
                    )
                })
                .collect(),
        );
        writeln!(out, "; piece {i}").unwrap();
        writeln!(out, "(assert (=> {guard} {value}))").unwrap();
        guards.push(guard);
    }
    if assert_domain {
        out.push_str("; domain\n");
        writeln!(out, "(assert {})", disjunction(guards)).unwrap();
    }
    out
}
