//! JSON documents for networks and piecewise-affine functions.
//!
//! Every scalar is a JSON string holding a decimal (`"2.7"`) or a fraction
//! (`"27/10"`), so values are never routed through binary floating point.
//! Serialization writes canonical reduced fractions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::{nn_relu, Layer, Network};
use crate::numeric::{ColVec, Mat};
use crate::polyhedra::{LinearConstraint, Polyhedron};
use crate::pwa::{AffinePiece, PwaFn, UnivalenceStatus, Violation};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkDocument {
    pub input_dim: usize,
    pub output_dim: usize,
    pub layers: Vec<LayerDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum LayerDocument {
    Linear {
        weights: Vec<Vec<String>>,
        bias: Vec<String>,
    },
    Relu {
        dim: usize,
    },
    Unknown {
        in_dim: usize,
        out_dim: usize,
    },
    Output,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PwaDocument {
    pub in_dim: usize,
    pub out_dim: usize,
    pub univalence: StatusTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<ViolationDocument>,
    pub pieces: Vec<PieceDocument>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StatusTag {
    Verified,
    Unchecked,
    Refuted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ViolationDocument {
    pub first: usize,
    pub second: usize,
    pub row: usize,
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceDocument {
    pub constraints: Vec<ConstraintDocument>,
    #[serde(rename = "M")]
    pub matrix: Vec<Vec<String>>,
    pub b: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintDocument {
    pub c: Vec<String>,
    pub b: String,
}

fn strings<T: Scalar>(values: &[T]) -> Vec<String> {
    values.iter().map(T::to_string).collect()
}

fn scalars<T: Scalar>(values: &[String]) -> Result<Vec<T>> {
    values.iter().map(|s| T::parse_literal(s)).collect()
}

fn vector<T: Scalar>(values: &[String], dim: usize, what: &'static str) -> Result<ColVec<T>> {
    if values.len() != dim {
        return Err(Error::Dimension {
            op: what,
            expected: dim,
            found: values.len(),
        });
    }
    Ok(ColVec::new(scalars(values)?))
}

fn matrix<T: Scalar>(rows: &[Vec<String>], n_rows: usize, n_cols: usize, what: &'static str) -> Result<Mat<T>> {
    if rows.len() != n_rows {
        return Err(Error::Dimension {
            op: what,
            expected: n_rows,
            found: rows.len(),
        });
    }
    let entries = rows
        .iter()
        .map(|row| vector::<T>(row, n_cols, what).map(ColVec::into_entries))
        .collect::<Result<Vec<_>>>()?;
    Mat::from_rows(n_rows, n_cols, entries)
}

impl NetworkDocument {
    /// Builds and validates the network. Weight rows are checked against the
    /// dimension flowing into each layer, so errors name the layer index.
    pub fn to_network<T: Scalar>(&self) -> Result<Network<T>> {
        let mut current = self.input_dim;
        let mut layers = Vec::with_capacity(self.layers.len());
        for (index, doc) in self.layers.iter().enumerate() {
            let layer = match doc {
                LayerDocument::Linear { weights, bias } => {
                    if weights.len() != bias.len() {
                        return Err(Error::LayerDimension {
                            index,
                            expected: bias.len(),
                            found: weights.len(),
                        });
                    }
                    if let Some(row) = weights.iter().find(|r| r.len() != current) {
                        return Err(Error::LayerDimension {
                            index,
                            expected: current,
                            found: row.len(),
                        });
                    }
                    let m = matrix(weights, bias.len(), current, "linear weights")?;
                    let b = vector(bias, bias.len(), "linear bias")?;
                    Layer::Pwa(PwaFn::linear(m, b)?)
                }
                LayerDocument::Relu { dim } => nn_relu(*dim),
                LayerDocument::Unknown { in_dim, out_dim } => Layer::Unknown {
                    in_dim: *in_dim,
                    out_dim: *out_dim,
                },
                LayerDocument::Output => Layer::Output,
            };
            if let Some((_, out)) = layer.dims() {
                current = out;
            }
            layers.push(layer);
        }
        Network::new(self.input_dim, self.output_dim, layers)
    }

    /// Describes `net` as a document. Only single-piece full-space PWA
    /// layers (linear maps) and componentwise ReLU layers are expressible;
    /// plain host-function layers have no portable form.
    pub fn from_network<T: Scalar>(net: &Network<T>) -> Result<Self> {
        let layers = net
            .layers()
            .iter()
            .enumerate()
            .map(|(index, layer)| match layer {
                Layer::Output => Ok(LayerDocument::Output),
                Layer::Unknown { in_dim, out_dim } => Ok(LayerDocument::Unknown {
                    in_dim: *in_dim,
                    out_dim: *out_dim,
                }),
                Layer::Plain(_) => Err(Error::Document(format!(
                    "layer {index}: plain layers cannot be serialized"
                ))),
                Layer::Pwa(f) => {
                    if f.in_dim() == f.out_dim() && f.pieces() == crate::network::relu_nd::<T>(f.in_dim()).pieces() {
                        return Ok(LayerDocument::Relu { dim: f.in_dim() });
                    }
                    match f.pieces() {
                        [p] if p.polyhedron().constraints().is_empty() => Ok(LayerDocument::Linear {
                            weights: p.matrix().to_rows().iter().map(|r| strings(r)).collect(),
                            bias: strings(p.offset().entries()),
                        }),
                        _ => Err(Error::Document(format!(
                            "layer {index}: only linear and relu layers can be serialized"
                        ))),
                    }
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            input_dim: net.input_dim(),
            output_dim: net.output_dim(),
            layers,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("documents serialize");
        text.push('\n');
        text
    }
}

impl PwaDocument {
    pub fn from_pwa<T: Scalar>(f: &PwaFn<T>) -> Self {
        let (univalence, violation) = match f.status() {
            UnivalenceStatus::Unchecked => (StatusTag::Unchecked, None),
            UnivalenceStatus::Verified => (StatusTag::Verified, None),
            UnivalenceStatus::Refuted(v) => (
                StatusTag::Refuted,
                Some(ViolationDocument {
                    first: v.first,
                    second: v.second,
                    row: v.row,
                    witness: strings(v.witness.entries()),
                }),
            ),
        };
        let pieces = f
            .pieces()
            .iter()
            .map(|p| PieceDocument {
                constraints: p
                    .polyhedron()
                    .constraints()
                    .iter()
                    .map(|c| ConstraintDocument {
                        c: strings(c.coeffs().entries()),
                        b: c.bound().to_string(),
                    })
                    .collect(),
                matrix: p.matrix().to_rows().iter().map(|r| strings(r)).collect(),
                b: strings(p.offset().entries()),
            })
            .collect();
        Self {
            in_dim: f.in_dim(),
            out_dim: f.out_dim(),
            univalence,
            violation,
            pieces,
        }
    }

    /// Rebuilds the function. The stored univalence status is taken as
    /// given, not re-checked.
    pub fn to_pwa<T: Scalar>(&self) -> Result<PwaFn<T>> {
        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                let constraints = p
                    .constraints
                    .iter()
                    .map(|c| {
                        Ok(LinearConstraint::new(
                            vector(&c.c, self.in_dim, "constraint")?,
                            T::parse_literal(&c.b)?,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                AffinePiece::new(
                    Polyhedron::new(self.in_dim, constraints)?,
                    matrix(&p.matrix, self.out_dim, self.in_dim, "piece matrix")?,
                    vector(&p.b, self.out_dim, "piece offset")?,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let status = match (self.univalence, &self.violation) {
            (StatusTag::Unchecked, None) => UnivalenceStatus::Unchecked,
            (StatusTag::Verified, None) => UnivalenceStatus::Verified,
            (StatusTag::Refuted, Some(v)) => {
                if v.first >= v.second || v.second >= self.pieces.len() || v.row >= self.out_dim {
                    return Err(Error::Document(
                        "violation names pieces or a row that do not exist".into(),
                    ));
                }
                UnivalenceStatus::Refuted(Violation {
                    first: v.first,
                    second: v.second,
                    row: v.row,
                    witness: vector(&v.witness, self.in_dim, "violation witness")?,
                })
            }
            (StatusTag::Refuted, None) => return Err(Error::Document("refuted status requires a violation".into())),
            (_, Some(_)) => return Err(Error::Document("violation given for a non-refuted function".into())),
        };
        Ok(PwaFn::new(self.in_dim, self.out_dim, pieces)?.with_status(status))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("documents serialize");
        text.push('\n');
        text
    }
}

/// Parses a network document and builds the validated network.
pub fn parse_network<T: Scalar>(text: &str) -> Result<Network<T>> {
    NetworkDocument::from_json(text)?.to_network()
}

pub fn parse_pwa<T: Scalar>(text: &str) -> Result<PwaFn<T>> {
    PwaDocument::from_json(text)?.to_pwa()
}

pub fn pwa_to_json<T: Scalar>(f: &PwaFn<T>) -> String {
    PwaDocument::from_pwa(f).to_json()
}
