//! Optimal 1-to-M quantum NOT gates for qubits distributed between two
//! latitudes of the Bloch sphere.
//!
//! The crate constructs the gate that best maps every belt state to its
//! orthogonal complement on M output copies, evaluates its fidelity both in
//! closed form and by direct state-vector simulation, certifies optimality
//! against a brute-force oracle, and factors the gate's entangled outputs
//! into the site tensors of a sequential (matrix-product-state) generation
//! scheme.
//!
//! Modules follow the pipeline:
//!
//! * [`belt`] — the latitude region and its derived constants K, P, Q, R;
//! * [`dicke`] — symmetric-subspace states, expansion, partial traces;
//! * [`gate`] — the NOT-gate isometry, validation, application, realization;
//! * [`fidelity`] — pointwise and belt-averaged fidelity, four routes;
//! * [`optimizer`] — analytic optimum and the grid + ascent oracle;
//! * [`mps`] — Schmidt data and sequential-generation site tensors.
//!
//! # Example
//!
//! ```
//! use beltnot::{analytic_optimum, avg_fidelity_closed, realize_optimal, BeltRegion};
//!
//! // States anywhere on the sphere: the universal limit F = 2/3.
//! let sphere = BeltRegion::new(0.0, std::f64::consts::PI)?;
//! let report = analytic_optimum(&sphere, 3)?;
//! assert!((report.f_bar - 2.0 / 3.0).abs() < 1e-12);
//!
//! // The realized gate achieves exactly the reported fidelity.
//! let gate = realize_optimal(&sphere, 3)?;
//! let averaged = avg_fidelity_closed(&gate, &sphere)?;
//! assert!((averaged - report.f_bar).abs() < 1e-12);
//! # Ok::<(), beltnot::Error>(())
//! ```

pub mod belt;
mod binom;
pub mod dicke;
pub mod error;
pub mod fidelity;
pub mod gate;
pub mod json;
pub mod mps;
pub mod optimizer;
pub mod quad;

pub use belt::{belt_constants, classify_case, BeltConstants, BeltRegion, CaseId};
pub use dicke::{
    dicke_amplitude, expand_to_qubits, reduced_single_qubit, DensityMatrix2, DickeIndex,
    JointState,
};
pub use error::{Error, Result};
pub use fidelity::{
    avg_fidelity_closed, avg_fidelity_quadrature, fidelity_formula, fidelity_report,
    fidelity_sim, fidelity_sim_phi_avg, FidelityReport, QuadratureConfig,
};
pub use gate::{apply, realize_from_report, realize_optimal, GateSpec, GateValidity, InputState};
pub use mps::{
    exemplar_chain, exemplar_lambdas, generic_chain, verify_chain, ChainCertificate,
    ExemplarState, MpsChain, MpsSite, SchmidtData,
};
pub use optimizer::{
    analytic_optimum, oracle_optimum, oracle_optimum_with_coupling, verify_case_consistency,
    ConsistencyReport, OptimalGateReport, OracleResult,
};
