//! Random instance generators and independent oracles shared by the
//! integration test targets.

#![allow(dead_code)]

pub mod smtlib;

use num_traits::{Signed, Zero};
use pwanet::{
    nn_linear, nn_relu, ColVec, Layer, LinearConstraint, Mat, Network, Polyhedron, PwaFn, RatMat, RatNetwork,
    RatPolyhedron, RatPwaFn, RatVec, Rational,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Rational with numerator and denominator bounded by `bound` in magnitude.
pub fn rand_q(rng: &mut Rng8, bound: i64) -> Rational {
    let n = rng.gen_range(-bound..=bound);
    let d = rng.gen_range(1..=bound);
    frac(n, d)
}

/// Mostly small integers and simple fractions, so that generated points hit
/// boundaries and shared faces reasonably often.
pub fn rand_small(rng: &mut Rng8) -> Rational {
    match rng.gen_range(0..4) {
        0 => q(rng.gen_range(-3..=3)),
        1 => frac(rng.gen_range(-6..=6), 2),
        _ => rand_q(rng, 10),
    }
}

pub fn rand_vec(rng: &mut Rng8, dim: usize, bound: i64) -> RatVec {
    (0..dim).map(|_| rand_q(rng, bound)).collect()
}

pub fn rand_point(rng: &mut Rng8, dim: usize) -> RatVec {
    (0..dim).map(|_| rand_small(rng)).collect()
}

pub fn rand_mat(rng: &mut Rng8, rows: usize, cols: usize, bound: i64) -> RatMat {
    let entries = (0..rows)
        .map(|_| (0..cols).map(|_| rand_q(rng, bound)).collect())
        .collect();
    Mat::from_rows(rows, cols, entries).unwrap()
}

pub fn pieces_of(layer: &Layer<Rational>) -> usize {
    match layer {
        Layer::Pwa(f) => f.pieces().len(),
        _ => 1,
    }
}

/// Random linear/ReLU network: input dim 1-6, 1-4 linear or ReLU layers,
/// weights with numerators/denominators up to 100. Networks whose compiled
/// piece count would exceed `max_pieces` are redrawn.
pub fn random_network(rng: &mut Rng8, max_pieces: usize) -> RatNetwork {
    loop {
        let input_dim = rng.gen_range(1..=6);
        let n_layers = rng.gen_range(1..=4);
        let mut dim = input_dim;
        let mut layers = Vec::new();
        let mut pieces = 1usize;
        for i in 0..n_layers {
            let relu_odds = if i == 0 { 0.25 } else { 0.5 };
            if rng.gen_bool(relu_odds) {
                pieces = pieces.saturating_mul(1 << dim);
                layers.push(nn_relu(dim));
            } else {
                let out = rng.gen_range(1..=6);
                layers.push(nn_linear(rand_mat(rng, out, dim, 100), rand_vec(rng, out, 100)).unwrap());
                dim = out;
            }
        }
        if pieces > max_pieces {
            continue;
        }
        layers.push(Layer::Output);
        return Network::new(input_dim, dim, layers).unwrap();
    }
}

/// Random univalent PWA function `R^in_dim -> R^out_dim`: a compiled small
/// linear/ReLU network, optionally restricted to a random polyhedron. Adding
/// the same constraints to every piece keeps the function univalent.
pub fn random_univalent(rng: &mut Rng8, in_dim: usize, out_dim: usize, max_pieces: usize) -> RatPwaFn {
    loop {
        let mut layers = Vec::new();
        let mut dim = in_dim;
        let mut pieces = 1usize;
        let hidden = rng.gen_range(0..=2);
        for _ in 0..hidden {
            let out = rng.gen_range(1..=3);
            layers.push(nn_linear(rand_mat(rng, out, dim, 10), rand_vec(rng, out, 10)).unwrap());
            dim = out;
            if rng.gen_bool(0.7) {
                layers.push(nn_relu(dim));
                pieces *= 1 << dim;
            }
        }
        layers.push(nn_linear(rand_mat(rng, out_dim, dim, 10), rand_vec(rng, out_dim, 10)).unwrap());
        if rng.gen_bool(0.5) {
            layers.push(nn_relu(out_dim));
            pieces *= 1 << out_dim;
        }
        if pieces > max_pieces {
            continue;
        }
        layers.push(Layer::Output);
        let f = Network::new(in_dim, out_dim, layers).unwrap().transform().unwrap();
        if !rng.gen_bool(0.4) {
            return f;
        }
        let restriction: Vec<_> = (0..rng.gen_range(1..=2))
            .map(|_| LinearConstraint::new(rand_vec(rng, in_dim, 5), rand_q(rng, 5).abs() + q(1)))
            .collect();
        return restrict(&f, &restriction);
    }
}

/// Appends `extra` to every piece's polyhedron.
pub fn restrict(f: &RatPwaFn, extra: &[LinearConstraint<Rational>]) -> RatPwaFn {
    let pieces = f
        .pieces()
        .iter()
        .map(|p| {
            let mut cs = p.polyhedron().constraints().to_vec();
            cs.extend_from_slice(extra);
            pwanet::AffinePiece::new(
                Polyhedron::new(f.in_dim(), cs).unwrap(),
                p.matrix().clone(),
                p.offset().clone(),
            )
            .unwrap()
        })
        .collect();
    PwaFn::new(f.in_dim(), f.out_dim(), pieces).unwrap()
}

/// Arbitrary (not necessarily univalent) function with random polyhedra.
pub fn random_pwa(rng: &mut Rng8, in_dim: usize, out_dim: usize, n_pieces: usize) -> RatPwaFn {
    let pieces = (0..n_pieces)
        .map(|_| {
            let cs = (0..rng.gen_range(0..=3))
                .map(|_| LinearConstraint::new(rand_vec(rng, in_dim, 10), rand_q(rng, 10)))
                .collect();
            pwanet::AffinePiece::new(
                Polyhedron::new(in_dim, cs).unwrap(),
                rand_mat(rng, out_dim, in_dim, 10),
                rand_vec(rng, out_dim, 10),
            )
            .unwrap()
        })
        .collect();
    PwaFn::new(in_dim, out_dim, pieces).unwrap()
}

/// Bounded polyhedron in `R^dim` (`dim <= 3`) with at most 6 constraints:
/// a random simplex `x_i >= -l_i`, `sum x_i <= u` plus up to `6 - (dim + 1)`
/// random cuts, which may make it empty.
pub fn random_bounded_polyhedron(rng: &mut Rng8, dim: usize) -> RatPolyhedron {
    let mut cs = Vec::new();
    for i in 0..dim {
        let mut c = vec![q(0); dim];
        c[i] = q(-1);
        cs.push(LinearConstraint::new(ColVec::new(c), rand_q(rng, 10).abs() + q(1)));
    }
    cs.push(LinearConstraint::new(
        ColVec::new(vec![q(1); dim]),
        rand_q(rng, 10).abs() + q(1),
    ));
    let extra = rng.gen_range(0..=(6 - (dim + 1)));
    for _ in 0..extra {
        cs.push(LinearConstraint::new(rand_vec(rng, dim, 10), rand_q(rng, 10) * q(3)));
    }
    cs.shuffle(rng);
    Polyhedron::new(dim, cs).unwrap()
}

// --- Vertex-enumeration oracle -------------------------------------------

/// Solves the square system `A x = b` by exact Gauss-Jordan elimination.
/// `None` when `A` is singular.
pub fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = b.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for v in m[col].iter_mut() {
            *v = v.clone() / p.clone();
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (target, p) in m[r].iter_mut().zip(pivot_row).skip(col) {
                    *target = target.clone() - factor.clone() * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// All vertices of `p`: solutions of `dim` linearly independent tight
/// constraints that satisfy every constraint.
pub fn vertices(p: &RatPolyhedron) -> Vec<Vec<Rational>> {
    let dim = p.dim();
    let cs = p.constraints();
    let mut out: Vec<Vec<Rational>> = Vec::new();
    for subset in combinations(cs.len(), dim) {
        let a: Vec<Vec<Rational>> = subset.iter().map(|&i| cs[i].coeffs().entries().to_vec()).collect();
        let b: Vec<Rational> = subset.iter().map(|&i| cs[i].bound().clone()).collect();
        let Some(x) = solve_square(&a, &b) else { continue };
        let feasible = cs.iter().all(|c| dot(c.coeffs().entries(), &x) <= *c.bound());
        if feasible && !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

/// Best objective value over the vertices of a bounded polyhedron, or `None`
/// if it has no vertex (empty).
pub fn vertex_optimum(p: &RatPolyhedron, objective: &[Rational], maximize: bool) -> Option<Rational> {
    vertices(p)
        .iter()
        .map(|x| dot(objective, x))
        .reduce(|a, b| if (a < b) == maximize { b } else { a })
}
