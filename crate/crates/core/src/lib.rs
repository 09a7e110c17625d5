//! # unimus
//!
//! Numerical toolkit for entropic uncertainty orders and minimum uncertainty
//! states (MUS) of two observables under uniform noise.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`quantum`] | states, observables, Haar-random unitaries, Bloch vectors |
//! | [`entropy`] | Renyi entropies of every order (Burg at 0, +-inf), von Neumann entropy, Renyi divergences |
//! | [`order`] | majorization, tensor products, trumping verdicts over alpha grids, catalysis |
//! | [`uncertainty`] | outcome statistics, classical and quantum noise, H2 criteria, flip thresholds |
//! | [`mus`] | psi-infinity construction, qubit MUS sweeps, H2 optimization, ensembles, no-go witnesses |
//! | [`thermo`] | Gibbs contexts, alpha-free energies, thermo-majorization, near-equilibrium ordering |
//!
//! All entropies are in nats. Extended reals are plain `f64` values that may be
//! `f64::INFINITY` or `f64::NEG_INFINITY`; no public function returns NaN.

#![forbid(unsafe_code)]

pub mod entropy;
pub mod error;
pub mod mus;
pub mod optimize;
pub mod order;
pub mod quantum;
pub mod thermo;
pub mod tolerances;
pub mod uncertainty;

pub use entropy::{AlphaGrid, ProbDist, RenyiOrder};
pub use error::{Error, Result};
pub use order::{OrderVerdict, Relation, Witness};
pub use quantum::{BlochVector, DensityMatrix, Observable, ObservablePair, PureState};
pub use uncertainty::NoiseLevel;
