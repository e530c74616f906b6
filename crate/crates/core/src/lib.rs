//! Exact piecewise-affine (PWA) functions over polyhedral pieces.
//!
//! The crate provides rational linear algebra, H-representation polyhedra, an
//! exact simplex used to decide emptiness and univalence, composition and
//! concatenation of PWA functions, and a sequential network model whose
//! linear and ReLU layers compile into a single PWA function.
//!
//! Everything is generic over [`Scalar`]. The aliases below fix the scalar to
//! [`Rational`] (arbitrary-precision), which is the setting in which results
//! are exact; `f64` aliases are provided for approximate use.

pub mod algebra;
pub mod error;
pub mod io;
pub mod lp;
pub mod network;
pub mod numeric;
pub mod polyhedra;
pub mod pwa;
pub mod scalar;

pub use algebra::{compose, compose_affine, compose_polyhedron, concat, concat_polyhedra};
pub use error::{Error, Result};
pub use lp::{LpOutcome, Sense};
pub use network::{nn_linear, nn_relu, relu_1d, relu_nd, validate_dims, Layer, Network, NonPwaLayer, PlainLayer};
pub use numeric::{ColVec, Mat};
pub use polyhedra::{LinearConstraint, Polyhedron};
pub use pwa::{AffinePiece, PwaFn, UnivalenceStatus, UnivalenceVerdict, Violation};
pub use scalar::{parse_rational, parse_scalar, Scalar};

pub use num_rational::BigRational as Rational;

pub type RatVec = ColVec<Rational>;
pub type RatMat = Mat<Rational>;
pub type RatConstraint = LinearConstraint<Rational>;
pub type RatPolyhedron = Polyhedron<Rational>;
pub type RatPiece = AffinePiece<Rational>;
pub type RatPwaFn = PwaFn<Rational>;
pub type RatLayer = Layer<Rational>;
pub type RatNetwork = Network<Rational>;

pub type F64Vec = ColVec<f64>;
pub type F64Mat = Mat<f64>;
pub type F64Polyhedron = Polyhedron<f64>;
pub type F64PwaFn = PwaFn<f64>;
pub type F64Network = Network<f64>;
