//! Certified numerics for the inequality `∫₀^{1/2} G₋^t > ∫₀^{1/2} G₊^t` on
//! `(k, k+1)`, `k = 3, 4`, where `G± = |1 + e(x) ± e((k+2)x)|²`.
//!
//! The pipeline: exact endpoint integrals ([`parseval`]), a fourth-order
//! quadrature rule with a worst-case certificate ([`quadrature`]), sup-norm
//! ledgers feeding its error budgets ([`bounds`]), Taylor models with sign
//! chains ([`taylor`]) and the orchestration ([`proof`], [`report`]).

pub mod bounds;
pub mod error;
pub mod parseval;
pub mod proof;
pub mod quadrature;
pub mod reference;
pub mod report;
pub mod taylor;
pub mod trig;

pub use bounds::{BoundLedger, LedgerOptions};
pub use error::{Error, Result};
pub use proof::{prove, ProofConfig, ProofReport, Verdict};
pub use quadrature::{integrate, min_steps, QuadResult};
pub use trig::{EvalPoint, HSpec, PolyFamily, Sign};
