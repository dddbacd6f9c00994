//! Maps from classical inputs to quantum states.

mod ensemble;
mod table;

pub use ensemble::{LabeledEnsemble, LabeledSample};
pub use table::{class_average, embedding_purity_stats, EmbeddedEnsemble};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{validation, Error, Result};
use crate::quantum::{CVector, DensityOperator, PureState};

/// Largest Hilbert-space dimension an embedding may produce.
pub const MAX_DIM: usize = 1 << 10;

/// Descriptor of an embedding `x ↦ ρ(x)`.
///
/// Rotations use `R^α(θ) = exp(iθσ^α)`. The angle encoding expects inputs already
/// rescaled to `[0, 2π]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Embedding {
    /// The same state for every input.
    Constant { state: DensityOperator },
    /// `|i⟩⟨i|` for the `i`-th entry of the input table.
    Basis { inputs: Vec<Vec<f64>> },
    /// `(cos(x/2)|0⟩ + sin(x/2)|1⟩)^{⊗copies}` for scalar `x`.
    Angle { copies: usize },
    /// Single-qubit data-reuploading circuit.
    Reuploading { weights: ReuploadingWeights },
    /// `inner(x)^{⊗copies}`.
    NCopies { inner: Box<Embedding>, copies: usize },
    /// `(1−ε) inner(x) + ε I/d`.
    Depolarized { inner: Box<Embedding>, epsilon: f64 },
}

impl Embedding {
    pub fn constant(state: DensityOperator) -> Self {
        Embedding::Constant { state }
    }

    pub fn basis(inputs: Vec<Vec<f64>>) -> Self {
        Embedding::Basis { inputs }
    }

    pub fn angle(copies: usize) -> Self {
        Embedding::Angle { copies }
    }

    pub fn reuploading(weights: ReuploadingWeights) -> Self {
        Embedding::Reuploading { weights }
    }

    pub fn n_copies(inner: Embedding, copies: usize) -> Self {
        Embedding::NCopies {
            inner: Box::new(inner),
            copies,
        }
    }

    pub fn depolarized(inner: Embedding, epsilon: f64) -> Self {
        Embedding::Depolarized {
            inner: Box::new(inner),
            epsilon,
        }
    }

    /// Checks parameters and the output dimension.
    pub fn validate(&self) -> Result<()> {
        match self {
            Embedding::Constant { .. } => {}
            Embedding::Basis { inputs } => {
                if inputs.is_empty() {
                    return Err(validation("basis embedding needs at least one input"));
                }
            }
            Embedding::Angle { copies } | Embedding::NCopies { copies, .. } if *copies == 0 => {
                return Err(validation("copy count must be at least 1"));
            }
            Embedding::Angle { .. } => {}
            Embedding::Reuploading { weights } => weights.validate()?,
            Embedding::NCopies { inner, .. } => inner.validate()?,
            Embedding::Depolarized { inner, epsilon } => {
                if !(0.0..=1.0).contains(epsilon) {
                    return Err(validation(format!(
                        "depolarizing strength {epsilon} outside [0, 1]"
                    )));
                }
                inner.validate()?;
            }
        }
        let d = self.dim_unchecked();
        if d == 0 || d > MAX_DIM {
            return Err(validation(format!(
                "embedding dimension {d} outside [1, {MAX_DIM}]"
            )));
        }
        Ok(())
    }

    fn dim_unchecked(&self) -> usize {
        match self {
            Embedding::Constant { state } => state.dim(),
            Embedding::Basis { inputs } => inputs.len(),
            Embedding::Angle { copies } => 1usize.checked_shl(*copies as u32).unwrap_or(0),
            Embedding::Reuploading { .. } => 2,
            Embedding::NCopies { inner, copies } => {
                let base = inner.dim_unchecked();
                u32::try_from(*copies)
                    .ok()
                    .and_then(|n| base.checked_pow(n))
                    .unwrap_or(0)
            }
            Embedding::Depolarized { inner, .. } => inner.dim_unchecked(),
        }
    }

    /// Hilbert-space dimension of the output states.
    pub fn dim(&self) -> usize {
        self.dim_unchecked()
    }

    /// Whether every output is a pure state.
    pub fn is_pure(&self) -> bool {
        match self {
            Embedding::Constant { .. } => false,
            Embedding::Basis { .. } | Embedding::Angle { .. } | Embedding::Reuploading { .. } => {
                true
            }
            Embedding::NCopies { inner, .. } => inner.is_pure(),
            Embedding::Depolarized { inner, epsilon } => *epsilon == 0.0 && inner.is_pure(),
        }
    }

    /// State vector for pure embeddings; `None` otherwise.
    pub fn embed_pure(&self, x: &[f64]) -> Result<Option<PureState>> {
        self.validate()?;
        if !self.is_pure() {
            return Ok(None);
        }
        self.pure_unchecked(x).map(Some)
    }

    fn pure_unchecked(&self, x: &[f64]) -> Result<PureState> {
        match self {
            Embedding::Basis { inputs } => {
                let i = lookup(inputs, x)?;
                PureState::basis(inputs.len(), i)
            }
            Embedding::Angle { copies } => {
                let t = scalar_input(x)?;
                let (s, c) = (0.5 * t).sin_cos();
                let qubit = PureState::new(CVector::from_vec(vec![
                    Complex64::new(c, 0.0),
                    Complex64::new(s, 0.0),
                ]))?;
                qubit.tensor_power(*copies)
            }
            Embedding::Reuploading { weights } => weights.state(x),
            Embedding::NCopies { inner, copies } => inner.pure_unchecked(x)?.tensor_power(*copies),
            Embedding::Depolarized { inner, .. } => inner.pure_unchecked(x),
            Embedding::Constant { .. } => Err(validation("constant embedding is not pure")),
        }
    }

    /// `ρ(x)`.
    pub fn embed(&self, x: &[f64]) -> Result<DensityOperator> {
        self.validate()?;
        self.embed_unchecked(x)
    }

    fn embed_unchecked(&self, x: &[f64]) -> Result<DensityOperator> {
        match self {
            Embedding::Constant { state } => Ok(state.clone()),
            Embedding::NCopies { inner, copies } if !inner.is_pure() => {
                inner.embed_unchecked(x)?.tensor_power(*copies)
            }
            Embedding::Depolarized { inner, epsilon } => {
                inner.embed_unchecked(x)?.depolarize(*epsilon)
            }
            _ => Ok(self.pure_unchecked(x)?.density()),
        }
    }
}

/// Free-function form of [`Embedding::embed`].
pub fn embed(e: &Embedding, x: &[f64]) -> Result<DensityOperator> {
    e.embed(x)
}

fn lookup(inputs: &[Vec<f64>], x: &[f64]) -> Result<usize> {
    inputs
        .iter()
        .position(|v| v.as_slice() == x)
        .ok_or_else(|| Error::Lookup(format!("input {x:?} is not in the basis table")))
}

fn scalar_input(x: &[f64]) -> Result<f64> {
    match x {
        [t] if t.is_finite() => Ok(*t),
        [_] => Err(validation("input is not finite")),
        _ => Err(Error::DimensionMismatch {
            expected: 1,
            found: x.len(),
        }),
    }
}

/// Weights of the single-qubit reuploading circuit.
///
/// Layer `ℓ` applies `R^z(w^{zℓ}·x + w^{zℓ}_0) R^y(w^{yℓ}·x + w^{yℓ}_0)`; the circuit is
/// `A_1 A_2 ⋯ A_L |0⟩`. Row `ℓ` of `y` and `z` holds `[w_0, w_1, …, w_n]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReuploadingWeights {
    pub input_dim: usize,
    pub y: Vec<Vec<f64>>,
    pub z: Vec<Vec<f64>>,
}

impl ReuploadingWeights {
    pub fn zeros(layers: usize, input_dim: usize) -> Self {
        Self {
            input_dim,
            y: vec![vec![0.0; input_dim + 1]; layers],
            z: vec![vec![0.0; input_dim + 1]; layers],
        }
    }

    /// Number of free parameters, `2L(n+1)`.
    pub fn param_count(layers: usize, input_dim: usize) -> usize {
        2 * layers * (input_dim + 1)
    }

    /// Inverse of [`ReuploadingWeights::to_flat`].
    pub fn from_flat(layers: usize, input_dim: usize, flat: &[f64]) -> Result<Self> {
        if flat.len() != Self::param_count(layers, input_dim) {
            return Err(Error::DimensionMismatch {
                expected: Self::param_count(layers, input_dim),
                found: flat.len(),
            });
        }
        let row = input_dim + 1;
        let half = layers * row;
        let rows = |offset: usize| -> Vec<Vec<f64>> {
            (0..layers)
                .map(|l| flat[offset + l * row..offset + (l + 1) * row].to_vec())
                .collect()
        };
        Ok(Self {
            input_dim,
            y: rows(0),
            z: rows(half),
        })
    }

    /// All `y` rows followed by all `z` rows.
    pub fn to_flat(&self) -> Vec<f64> {
        self.y.iter().chain(self.z.iter()).flatten().copied().collect()
    }

    pub fn layers(&self) -> usize {
        self.y.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.y.is_empty() || self.y.len() != self.z.len() {
            return Err(validation("reuploading needs the same positive number of y and z layers"));
        }
        let row = self.input_dim + 1;
        if self.y.iter().chain(self.z.iter()).any(|r| r.len() != row) {
            return Err(validation(format!(
                "every reuploading layer needs {row} weights (bias first)"
            )));
        }
        if self.y.iter().chain(self.z.iter()).flatten().any(|w| !w.is_finite()) {
            return Err(validation("reuploading weights must be finite"));
        }
        Ok(())
    }

    fn angle(row: &[f64], x: &[f64]) -> f64 {
        row[0] + row[1..].iter().zip(x).map(|(w, v)| w * v).sum::<f64>()
    }

    /// Amplitudes of `A_1 ⋯ A_L |0⟩`.
    pub fn amplitudes(&self, x: &[f64]) -> Result<[Complex64; 2]> {
        if x.len() != self.input_dim {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim,
                found: x.len(),
            });
        }
        let mut a = Complex64::new(1.0, 0.0);
        let mut b = Complex64::new(0.0, 0.0);
        for (wy, wz) in self.y.iter().zip(&self.z).rev() {
            let (sy, cy) = Self::angle(wy, x).sin_cos();
            let (a1, b1) = (a * cy + b * sy, b * cy - a * sy);
            let phase = Complex64::from_polar(1.0, Self::angle(wz, x));
            a = a1 * phase;
            b = b1 * phase.conj();
        }
        Ok([a, b])
    }

    pub fn state(&self, x: &[f64]) -> Result<PureState> {
        let [a, b] = self.amplitudes(x)?;
        PureState::normalized(CVector::from_vec(vec![a, b]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::linalg::{self, CMatrix};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn zero_ket() -> CVector {
        CVector::from_vec(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)])
    }

    #[test]
    fn angle_at_zero_is_ground_state() {
        let rho = Embedding::angle(1).embed(&[0.0]).unwrap();
        assert_abs_diff_eq!(rho.matrix()[(0, 0)].re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(rho.purity(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn zero_weights_give_ground_state() {
        let e = Embedding::reuploading(ReuploadingWeights::zeros(3, 2));
        for x in [[0.3, -1.0], [2.0, 5.0]] {
            let psi = e.embed_pure(&x).unwrap().unwrap();
            assert_abs_diff_eq!(psi.amplitudes()[0].norm(), 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn single_layer_matches_explicit_rotation() {
        let mut w = ReuploadingWeights::zeros(1, 1);
        w.y[0] = vec![PI / 8.0, 0.5];
        let x = [PI / 4.0];
        let psi = w.state(&x).unwrap();
        let (s, c) = (PI / 4.0).sin_cos();
        let ry = linalg::from_real(2, 2, &[c, s, -s, c]);
        let expected = ry * zero_ket();
        assert_abs_diff_eq!((psi.amplitudes() - expected).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn layer_order_applies_last_layer_first() {
        let mut w = ReuploadingWeights::zeros(2, 1);
        w.y[0] = vec![0.3, 0.0];
        w.z[0] = vec![0.7, 0.0];
        w.y[1] = vec![1.1, 0.0];
        w.z[1] = vec![-0.4, 0.0];
        let rot = |wy: f64, wz: f64| -> CMatrix {
            let i = Complex64::new(0.0, 1.0);
            let rz = CMatrix::from_row_slice(
                2,
                2,
                &[(i * wz).exp(), linalg::ZERO, linalg::ZERO, (-i * wz).exp()],
            );
            let (s, c) = wy.sin_cos();
            rz * linalg::from_real(2, 2, &[c, s, -s, c])
        };
        let expected = rot(0.3, 0.7) * rot(1.1, -0.4) * zero_ket();
        let psi = w.state(&[0.0]).unwrap();
        assert_abs_diff_eq!((psi.amplitudes() - expected).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn flat_round_trip() {
        let flat: Vec<f64> = (0..18).map(|i| i as f64 * 0.1).collect();
        let w = ReuploadingWeights::from_flat(3, 2, &flat).unwrap();
        assert_eq!(w.to_flat(), flat);
        assert_eq!(w.y[1], flat[3..6].to_vec());
        assert_eq!(w.z[0], flat[9..12].to_vec());
        assert!(ReuploadingWeights::from_flat(3, 2, &flat[1..]).is_err());
    }

    #[test]
    fn basis_lookup_errors_on_unseen_input() {
        let e = Embedding::basis(vec![vec![0.0], vec![1.0]]);
        assert!(matches!(e.embed(&[2.0]), Err(Error::Lookup(_))));
        assert_abs_diff_eq!(e.embed(&[1.0]).unwrap().matrix()[(1, 1)].re, 1.0);
    }

    #[test]
    fn wrapper_dimensions() {
        let e = Embedding::n_copies(Embedding::angle(2), 3);
        assert_eq!(e.dim(), 64);
        assert_eq!(e.embed(&[0.4]).unwrap().dim(), 64);
        let d = Embedding::depolarized(Embedding::angle(1), 1.0);
        let rho = d.embed(&[1.3]).unwrap();
        assert_abs_diff_eq!((rho.matrix() - linalg::identity(2).scale(0.5)).norm(), 0.0, epsilon = 1e-15);
        assert!(Embedding::angle(11).validate().is_err());
    }

    #[test]
    fn mixed_inner_copies_use_density_route() {
        let inner = Embedding::depolarized(Embedding::angle(1), 0.2);
        let e = Embedding::n_copies(inner.clone(), 2);
        assert!(!e.is_pure());
        let one = inner.embed(&[0.8]).unwrap();
        let two = e.embed(&[0.8]).unwrap();
        assert_abs_diff_eq!(two.purity(), one.purity().powi(2), epsilon = 1e-12);
    }

    #[test]
    fn json_round_trip_with_tag() {
        let e = Embedding::depolarized(
            Embedding::n_copies(Embedding::reuploading(ReuploadingWeights::zeros(1, 2)), 2),
            0.1,
        );
        let text = serde_json::to_string(&e).unwrap();
        assert!(text.contains("\"kind\":\"depolarized\""));
        let back: Embedding = serde_json::from_str(&text).unwrap();
        assert_eq!(back, e);
        assert!(serde_json::from_str::<Embedding>(r#"{"kind":"angle","copies":1,"extra":0}"#).is_err());
    }
}
