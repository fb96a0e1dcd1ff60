//! Deterministic variational inference for Bayesian neural networks.
//!
//! This crate trains factorized-Gaussian Bayesian neural networks by
//! propagating activation means and covariances through the network in closed
//! form, so the evidence lower bound and its gradients are fully
//! deterministic. A Monte Carlo variational inference baseline (weight
//! sampling and local reparameterization) is included for comparison, along
//! with an empirical-Bayes hierarchical prior whose per-layer variances are
//! updated by a closed-form optimum at every step.
//!
//! Layout:
//! - [`specials`]: scalar special functions (`phi`, `Phi`, soft ReLU, logsumexp)
//! - [`gaussmoments`]: closed-form moment propagation through linear layers and
//!   Heaviside/ReLU nonlinearities, including skip connections
//! - [`heads`]: expected log-likelihoods and posterior predictives
//! - [`ebprior`]: diagonal-Gaussian KL and empirical-Bayes variance updates
//! - [`gradcore`]: reverse-mode tape over the ops used by the ELBO
//! - [`mcvi`]: Monte Carlo VI baseline and gradient-variance probe
//! - [`trainkit`]: ELBO assembly, Adam, training loop, test-time evaluation
//! - [`datasets`]: CSV ingestion, standardization, repeated random splits
//! - [`oracle`]: brute-force quadrature and Monte Carlo references
//! - [`cli`]: `train` / `benchmark` / `verify` / `predict` commands

pub mod cli;
pub mod datasets;
pub mod ebprior;
pub mod error;
pub mod gaussmoments;
pub mod gradcore;
pub mod heads;
pub mod mcvi;
pub mod oracle;
pub mod rng;
pub mod specials;
pub mod trainkit;

pub use error::{Error, Result};
