//! Composition and concatenation of piecewise-affine functions.
//!
//! Both operations enumerate all piece pairs, g-major (outer loop over the
//! pieces of `g`, inner loop over the pieces of `f`), and keep pairs whose
//! combined polyhedron is empty. Use [`PwaFn::prune_empty`] to drop those.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::{ColVec, Mat};
use crate::polyhedra::{lift_constraints_bottom, lift_constraints_top, LinearConstraint, Polyhedron};
use crate::pwa::{AffinePiece, PwaFn};
use crate::scalar::Scalar;

/// Pulls `p_f` back through `x -> M_g x + b_g` and intersects with `p_g`.
///
/// The result lists `p_g`'s constraints verbatim, then one constraint
/// `(M_g^T c) . x <= b - c . b_g` per constraint `c . y <= b` of `p_f`.
pub fn compose_polyhedron<T: Scalar>(
    p_g: &Polyhedron<T>,
    m_g: &Mat<T>,
    b_g: &ColVec<T>,
    p_f: &Polyhedron<T>,
) -> Result<Polyhedron<T>> {
    if m_g.cols() != p_g.dim() {
        return Err(Error::Dimension {
            op: "compose_polyhedron",
            expected: p_g.dim(),
            found: m_g.cols(),
        });
    }
    if m_g.rows() != p_f.dim() || b_g.dim() != p_f.dim() {
        return Err(Error::Dimension {
            op: "compose_polyhedron",
            expected: p_f.dim(),
            found: if m_g.rows() != p_f.dim() { m_g.rows() } else { b_g.dim() },
        });
    }
    let pulled_back = m_g.transpose();
    let mut constraints = p_g.constraints().to_vec();
    for c in p_f.constraints() {
        constraints.push(LinearConstraint::new(
            pulled_back.mul_vec(c.coeffs())?,
            c.bound().clone() - c.coeffs().dot(b_g)?,
        ));
    }
    Polyhedron::new(p_g.dim(), constraints)
}

/// `(M_f M_g, M_f b_g + b_f)`, the affine map `x -> M_f (M_g x + b_g) + b_f`.
pub fn compose_affine<T: Scalar>(
    m_f: &Mat<T>,
    b_f: &ColVec<T>,
    m_g: &Mat<T>,
    b_g: &ColVec<T>,
) -> Result<(Mat<T>, ColVec<T>)> {
    let matrix = m_f.mul(m_g)?;
    let offset = m_f.mul_vec(b_g)?.add(b_f)?;
    Ok((matrix, offset))
}

/// `f . g`, defined wherever `x` lies in a piece of `g` and `g(x)` in a piece of `f`.
pub fn compose<T: Scalar>(f: &PwaFn<T>, g: &PwaFn<T>) -> Result<PwaFn<T>> {
    if g.out_dim() != f.in_dim() {
        return Err(Error::Dimension {
            op: "compose",
            expected: f.in_dim(),
            found: g.out_dim(),
        });
    }
    let pairs: Vec<(&AffinePiece<T>, &AffinePiece<T>)> = g
        .pieces()
        .iter()
        .flat_map(|pg| f.pieces().iter().map(move |pf| (pf, pg)))
        .collect();
    let pieces = pairs
        .into_par_iter()
        .map(|(pf, pg)| {
            let polyhedron = compose_polyhedron(pg.polyhedron(), pg.matrix(), pg.offset(), pf.polyhedron())?;
            let (matrix, offset) = compose_affine(pf.matrix(), pf.offset(), pg.matrix(), pg.offset())?;
            AffinePiece::new(polyhedron, matrix, offset)
        })
        .collect::<Result<Vec<_>>>()?;
    PwaFn::new(g.in_dim(), f.out_dim(), pieces)
}

/// Polyhedron over stacked inputs `[x_f; x_g]` with `x_f in p_f` and `x_g in p_g`.
pub fn concat_polyhedra<T: Scalar>(p_f: &Polyhedron<T>, p_g: &Polyhedron<T>) -> Polyhedron<T> {
    let dim = p_f.dim() + p_g.dim();
    let mut constraints = lift_constraints_bottom(p_f.constraints(), dim).expect("lifting to a larger dimension");
    constraints.extend(lift_constraints_top(p_g.constraints(), dim).expect("lifting to a larger dimension"));
    Polyhedron::new(dim, constraints).expect("lifted constraints have the summed dimension")
}

/// Blockwise function `[x_f; x_g] -> [f(x_f); g(x_g)]`.
pub fn concat<T: Scalar>(f: &PwaFn<T>, g: &PwaFn<T>) -> PwaFn<T> {
    let pairs: Vec<(&AffinePiece<T>, &AffinePiece<T>)> = g
        .pieces()
        .iter()
        .flat_map(|pg| f.pieces().iter().map(move |pf| (pf, pg)))
        .collect();
    let pieces = pairs
        .into_par_iter()
        .map(|(pf, pg)| {
            AffinePiece::new(
                concat_polyhedra(pf.polyhedron(), pg.polyhedron()),
                pf.matrix().block_diag(pg.matrix()),
                pf.offset().concat(pg.offset()),
            )
            .expect("block-diagonal piece is shape-consistent")
        })
        .collect();
    PwaFn::new(f.in_dim() + g.in_dim(), f.out_dim() + g.out_dim(), pieces)
        .expect("concatenated pieces have the summed dimensions")
}
