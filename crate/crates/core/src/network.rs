//! Sequential feedforward networks and their compilation into a single
//! piecewise-affine function.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{compose, concat};
use crate::error::{Error, Result};
use crate::numeric::{ColVec, Mat};
use crate::polyhedra::{LinearConstraint, Polyhedron};
use crate::pwa::{AffinePiece, PwaFn, UnivalenceStatus};
use crate::scalar::Scalar;

pub type HostFn<T> = Arc<dyn Fn(&ColVec<T>) -> ColVec<T> + Send + Sync>;

/// A layer backed by an arbitrary host function with declared dimensions.
#[derive(Clone)]
pub struct PlainLayer<T> {
    pub in_dim: usize,
    pub out_dim: usize,
    pub func: HostFn<T>,
}

impl<T> fmt::Debug for PlainLayer<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PlainLayer")
            .field("in_dim", &self.in_dim)
            .field("out_dim", &self.out_dim)
            .finish_non_exhaustive()
    }
}

#[derive(Clone, Debug)]
pub enum Layer<T> {
    /// Passes its input through; terminates the network.
    Output,
    Pwa(PwaFn<T>),
    Plain(PlainLayer<T>),
    /// A layer whose function is not known; evaluation fails on it.
    Unknown {
        in_dim: usize,
        out_dim: usize,
    },
}

impl<T: Scalar> Layer<T> {
    /// Declared `(in_dim, out_dim)`; `None` for the dimension-polymorphic output layer.
    pub fn dims(&self) -> Option<(usize, usize)> {
        match self {
            Layer::Output => None,
            Layer::Pwa(f) => Some((f.in_dim(), f.out_dim())),
            Layer::Plain(p) => Some((p.in_dim, p.out_dim)),
            Layer::Unknown { in_dim, out_dim } => Some((*in_dim, *out_dim)),
        }
    }

    pub fn is_pwa(&self) -> bool {
        matches!(self, Layer::Output | Layer::Pwa(_))
    }
}

pub fn nn_linear<T: Scalar>(matrix: Mat<T>, offset: ColVec<T>) -> Result<Layer<T>> {
    Ok(Layer::Pwa(PwaFn::linear(matrix, offset)?))
}

pub fn nn_relu<T: Scalar>(dim: usize) -> Layer<T> {
    Layer::Pwa(relu_nd(dim))
}

/// `max(0, x)` on the real line as two pieces: `x <= 0 -> 0`, then `-x <= 0 -> x`.
pub fn relu_1d<T: Scalar>() -> PwaFn<T> {
    let half_line = |sign: T| {
        Polyhedron::new(1, vec![LinearConstraint::new(ColVec::new(vec![sign]), T::zero())])
            .expect("one-dimensional constraint")
    };
    let pieces = vec![
        AffinePiece::new(half_line(T::one()), Mat::zeros(1, 1), ColVec::zeros(1)),
        AffinePiece::new(half_line(-T::one()), Mat::identity(1), ColVec::zeros(1)),
    ];
    let pieces = pieces
        .into_iter()
        .collect::<Result<Vec<_>>>()
        .expect("shape-consistent pieces");
    PwaFn::new(1, 1, pieces)
        .expect("shape-consistent pieces")
        .with_status(UnivalenceStatus::Verified)
}

/// Componentwise ReLU on `R^n`: a fresh 1-d ReLU concatenated on top of the
/// `(n-1)`-dimensional one, bottoming out at the identity on `R^0`.
pub fn relu_nd<T: Scalar>(dim: usize) -> PwaFn<T> {
    (0..dim).fold(PwaFn::identity(0), |acc, _| concat(&relu_1d(), &acc))
}

/// Checks that consecutive layers agree on dimensions and that the list ends
/// with a single output layer producing `output_dim` values.
pub fn validate_dims<T: Scalar>(input_dim: usize, output_dim: usize, layers: &[Layer<T>]) -> Result<()> {
    let mut current = input_dim;
    for (index, layer) in layers.iter().enumerate() {
        match layer.dims() {
            None => {
                if index + 1 != layers.len() {
                    return Err(Error::OutputPlacement { index });
                }
                if current != output_dim {
                    return Err(Error::LayerDimension {
                        index,
                        expected: output_dim,
                        found: current,
                    });
                }
                return Ok(());
            }
            Some((in_dim, out_dim)) => {
                if in_dim != current {
                    return Err(Error::LayerDimension {
                        index,
                        expected: current,
                        found: in_dim,
                    });
                }
                current = out_dim;
            }
        }
    }
    Err(Error::OutputPlacement { index: layers.len() })
}

/// First layer that cannot be expressed as a piecewise-affine function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NonPwaLayer {
    pub index: usize,
}

impl fmt::Display for NonPwaLayer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "layer {}: not piecewise-affine", self.index)
    }
}

impl std::error::Error for NonPwaLayer {}

#[derive(Clone, Debug)]
pub struct Network<T> {
    input_dim: usize,
    output_dim: usize,
    layers: Vec<Layer<T>>,
}

impl<T: Scalar> Network<T> {
    pub fn new(input_dim: usize, output_dim: usize, layers: Vec<Layer<T>>) -> Result<Self> {
        validate_dims(input_dim, output_dim, &layers)?;
        Ok(Self {
            input_dim,
            output_dim,
            layers,
        })
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn output_dim(&self) -> usize {
        self.output_dim
    }

    pub fn layers(&self) -> &[Layer<T>] {
        &self.layers
    }

    /// Runs `x` through the layers. `None` means the value is undefined: a
    /// PWA layer's domain does not contain the intermediate value, or an
    /// unknown layer was reached.
    pub fn eval(&self, x: &ColVec<T>) -> Result<Option<ColVec<T>>> {
        if x.dim() != self.input_dim {
            return Err(Error::Dimension {
                op: "nn_eval",
                expected: self.input_dim,
                found: x.dim(),
            });
        }
        let mut value = x.clone();
        for layer in &self.layers {
            value = match layer {
                Layer::Output => return Ok(Some(value)),
                Layer::Pwa(f) => match f.eval(&value)? {
                    Some(y) => y,
                    None => return Ok(None),
                },
                Layer::Plain(p) => {
                    let y = (p.func)(&value);
                    if y.dim() != p.out_dim {
                        return Err(Error::Dimension {
                            op: "plain layer",
                            expected: p.out_dim,
                            found: y.dim(),
                        });
                    }
                    y
                }
                Layer::Unknown { .. } => return Ok(None),
            };
        }
        unreachable!("validated networks end with an output layer")
    }

    /// Compiles the network into one function, composing from the tail:
    /// `compose(transform(rest), layer)`. Fails on the first plain or
    /// unknown layer.
    pub fn try_transform(&self) -> Result<PwaFn<T>, NonPwaLayer> {
        if let Some(index) = self.layers.iter().position(|l| !l.is_pwa()) {
            return Err(NonPwaLayer { index });
        }
        let tail = PwaFn::identity(self.output_dim);
        Ok(self.layers.iter().rev().fold(tail, |acc, layer| match layer {
            Layer::Pwa(f) => compose(&acc, f).expect("validated dimension chain"),
            _ => acc,
        }))
    }

    pub fn transform(&self) -> Option<PwaFn<T>> {
        self.try_transform().ok()
    }
}
