//! The 1-to-M NOT gate: the isometry
//!
//!   |0⟩|X⟩ → Σ_k |(M−k)0, k1⟩ ⊗ |A_k⟩
//!   |1⟩|X⟩ → Σ_k |k0, (M−k)1⟩ ⊗ |A_{M+k+1}⟩
//!
//! described entirely by its 2(M+1) unnormalized ancilla vectors |A_l⟩.
//! The second branch is stored re-indexed by ones count so both branches
//! share one Dicke indexing; the serialized format keeps the plain
//! vector list A_0 … A_{2M+1}.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::belt::BeltRegion;
use crate::dicke::JointState;
use crate::error::{Error, Result};
use crate::optimizer::{analytic_optimum, OptimalGateReport};

/// A pure qubit cos(θ/2)|0⟩ + sin(θ/2)e^{iφ}|1⟩.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputState {
    pub theta: f64,
    pub phi: f64,
}

impl InputState {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::InvalidInput(format!("theta={theta} outside [0, pi]")));
        }
        if !(0.0..2.0 * std::f64::consts::PI).contains(&phi) {
            return Err(Error::InvalidInput(format!("phi={phi} outside [0, 2*pi)")));
        }
        Ok(Self { theta, phi })
    }

    /// The state orthogonal to this one, in the fixed phase convention
    /// sin(θ/2)|0⟩ − e^{iφ}cos(θ/2)|1⟩.
    pub fn orthogonal_vector(&self) -> [Complex64; 2] {
        let (s, c) = ((self.theta / 2.0).sin(), (self.theta / 2.0).cos());
        [
            Complex64::new(s, 0.0),
            -Complex64::from_polar(c, self.phi),
        ]
    }
}

/// Gate description: copy count plus the ancilla vectors |A_0⟩ … |A_{2M+1}⟩.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateSpec {
    pub m: u32,
    pub anc_dim: u32,
    /// 2(M+1) vectors, each of length anc_dim.
    #[serde(rename = "A", with = "crate::json::complex_mat")]
    pub vectors: Vec<Vec<Complex64>>,
}

/// Residuals of the three unitarity conditions a gate must satisfy.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct GateValidity {
    /// |Σ_k ⟨A_k|A_k⟩ − 1| over the first branch.
    pub branch_zero_norm_residual: f64,
    /// |Σ_k ⟨A_{M+k+1}|A_{M+k+1}⟩ − 1| over the second branch.
    pub branch_one_norm_residual: f64,
    /// |Σ_k ⟨A_{2M+1−k}|A_k⟩| between the branches.
    pub cross_residual: f64,
}

impl GateValidity {
    pub const TOLERANCE: f64 = 1e-12;

    pub fn is_valid(&self) -> bool {
        self.branch_zero_norm_residual < Self::TOLERANCE
            && self.branch_one_norm_residual < Self::TOLERANCE
            && self.cross_residual < Self::TOLERANCE
    }

    /// Human-readable list of failed checks; empty when valid.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.branch_zero_norm_residual >= Self::TOLERANCE {
            out.push(format!(
                "branch-0 normalization residual {:.3e}",
                self.branch_zero_norm_residual
            ));
        }
        if self.branch_one_norm_residual >= Self::TOLERANCE {
            out.push(format!(
                "branch-1 normalization residual {:.3e}",
                self.branch_one_norm_residual
            ));
        }
        if self.cross_residual >= Self::TOLERANCE {
            out.push(format!("cross-orthogonality residual {:.3e}", self.cross_residual));
        }
        out
    }
}

impl GateSpec {
    pub fn new(m: u32, anc_dim: u32, vectors: Vec<Vec<Complex64>>) -> Result<Self> {
        if vectors.len() != 2 * (m as usize + 1) {
            return Err(Error::DimensionMismatch(format!(
                "expected {} ancilla vectors, got {}",
                2 * (m + 1),
                vectors.len()
            )));
        }
        if vectors.iter().any(|v| v.len() != anc_dim as usize) {
            return Err(Error::DimensionMismatch(format!(
                "every ancilla vector must have length {anc_dim}"
            )));
        }
        Ok(Self { m, anc_dim, vectors })
    }

    /// All-zero gate (invalid until vectors are filled in).
    pub fn zero(m: u32, anc_dim: u32) -> Self {
        Self {
            m,
            anc_dim,
            vectors: vec![vec![Complex64::ZERO; anc_dim as usize]; 2 * (m as usize + 1)],
        }
    }

    pub fn vector(&self, l: u32) -> &[Complex64] {
        &self.vectors[l as usize]
    }

    /// Gram matrix: entry (k, l) = a_{k,l} = ⟨A_l|A_k⟩.
    pub fn gram(&self) -> DMatrix<Complex64> {
        let n = self.vectors.len();
        DMatrix::from_fn(n, n, |k, l| {
            self.vectors[l]
                .iter()
                .zip(&self.vectors[k])
                .map(|(al, ak)| al.conj() * ak)
                .sum()
        })
    }

    /// Diagonal a_l = ⟨A_l|A_l⟩ as plain reals.
    pub fn gram_diagonal(&self) -> Vec<f64> {
        self.vectors
            .iter()
            .map(|v| v.iter().map(|z| z.norm_sqr()).sum())
            .collect()
    }

    /// Check the two branch normalizations and the cross orthogonality
    /// required for the transformation to extend to a unitary.
    pub fn validate(&self) -> GateValidity {
        let m = self.m as usize;
        let diag = self.gram_diagonal();
        let branch_zero: f64 = diag[..=m].iter().sum();
        let branch_one: f64 = diag[m + 1..].iter().sum();
        let mut cross = Complex64::ZERO;
        for k in 0..=m {
            let partner = 2 * m + 1 - k;
            cross += self.vectors[partner]
                .iter()
                .zip(&self.vectors[k])
                .map(|(p, a)| p.conj() * a)
                .sum::<Complex64>();
        }
        GateValidity {
            branch_zero_norm_residual: (branch_zero - 1.0).abs(),
            branch_one_norm_residual: (branch_one - 1.0).abs(),
            cross_residual: cross.norm(),
        }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidGate(v.failures().join("; ")))
        }
    }
}

/// Apply the gate to an input qubit.
///
/// In the shared ones-count indexing the output amplitudes are
/// amp\[k\]\[anc\] = cos(θ/2) A_k\[anc\] + sin(θ/2) e^{iφ} A_{2M+1−k}\[anc\]:
/// the second branch's |j0,(M−j)1⟩ has M−j ones, so its vector A_{M+j+1}
/// lands at k = M−j.
pub fn apply(spec: &GateSpec, input: &InputState) -> Result<JointState> {
    spec.ensure_valid()?;
    let (c, s) = ((input.theta / 2.0).cos(), (input.theta / 2.0).sin());
    let phase = Complex64::from_polar(s, input.phi);
    let mut out = JointState::zero(spec.m, spec.anc_dim);
    for k in 0..=spec.m {
        let second = 2 * spec.m + 1 - k;
        for anc in 0..spec.anc_dim {
            let value = c * spec.vector(k)[anc as usize] + phase * spec.vector(second)[anc as usize];
            out.set_amplitude(k, anc, value);
        }
    }
    Ok(out)
}

const UP: usize = 0;
const DOWN: usize = 1;

fn axis_vector(weight: f64, dir: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::ZERO; 2];
    v[dir] = Complex64::new(weight, 0.0);
    v
}

/// The two-dimensional-ancilla gate realizing an optimizer report.
///
/// When the case-form allocation attains the optimum the construction follows
/// its exact shape (Case1/Case3: A_{⌊M/2⌋} = −√a|↑⟩, A_M = √(1−a)|↓⟩,
/// A_{⌊(3M+1)/2⌋} = |↑⟩; Case2/Case4 mirrored onto the second branch).
/// Otherwise each coupled pair takes an ancilla direction alternating with
/// pair parity, which keeps the cross-orthogonality sum exactly zero.
pub fn realize_from_report(report: &OptimalGateReport) -> Result<GateSpec> {
    let m = report.m;
    let mu = m as usize;
    let mut gate = GateSpec::zero(m, 2);
    if report.case_optimal {
        let a = report.a_star;
        if report.case.first_farther() {
            gate.vectors[mu / 2] = axis_vector(-a.sqrt(), UP);
            gate.vectors[mu] = axis_vector((1.0 - a).sqrt(), DOWN);
            gate.vectors[(3 * mu + 1) / 2] = axis_vector(1.0, UP);
        } else {
            gate.vectors[(mu - 1) / 2] = axis_vector(1.0, UP);
            gate.vectors[(3 * mu + 2) / 2] = axis_vector(-a.sqrt(), UP);
            gate.vectors[2 * mu + 1] = axis_vector((1.0 - a).sqrt(), DOWN);
        }
    } else {
        // General allocation: pair k couples branch-1 weight v_k = a_{M+k+1}
        // with branch-0 weight u_k = a_{M-k-1}.
        let mut used_u = 0.0;
        let mut used_v = 0.0;
        for k in 0..mu {
            let dir = if k % 2 == 0 { UP } else { DOWN };
            let u = report.branch_zero[mu - k - 1];
            let v = report.branch_one[k];
            used_u += u;
            used_v += v;
            if u > 0.0 {
                gate.vectors[mu - k - 1] = axis_vector(-u.sqrt(), dir);
            }
            if v > 0.0 {
                gate.vectors[mu + k + 1] = axis_vector(v.sqrt(), dir);
            }
        }
        let slack_u = (1.0 - used_u).max(0.0);
        let slack_v = (1.0 - used_v).max(0.0);
        if slack_u > 0.0 {
            // Cross partner is A_{M+1} (pair 0, direction UP).
            gate.vectors[mu] = axis_vector(slack_u.sqrt(), DOWN);
        }
        if slack_v > 0.0 {
            // Cross partner is A_0 (pair M-1); take the opposite direction.
            let dir = if (mu - 1) % 2 == 0 { DOWN } else { UP };
            gate.vectors[2 * mu + 1] = axis_vector(slack_v.sqrt(), dir);
        }
    }
    gate.ensure_valid()?;
    Ok(gate)
}

/// The optimal NOT gate for a belt: analytic optimization followed by the
/// two-dimensional ancilla realization.
pub fn realize_optimal(region: &BeltRegion, m: u32) -> Result<GateSpec> {
    let report = analytic_optimum(region, m)?;
    realize_from_report(&report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dicke::reduced_single_qubit;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// The M=1 universal gate: A_0 = -|up>, A_2 = |up>.
    pub(crate) fn universal_m1() -> GateSpec {
        let mut gate = GateSpec::zero(1, 2);
        gate.vectors[0] = vec![c(-1.0, 0.0), Complex64::ZERO];
        gate.vectors[2] = vec![c(1.0, 0.0), Complex64::ZERO];
        gate
    }

    #[test]
    fn gram_of_universal_m1() {
        let g = universal_m1().gram();
        assert_eq!(g[(0, 0)], c(1.0, 0.0));
        assert_eq!(g[(2, 2)], c(1.0, 0.0));
        assert_eq!(g[(0, 2)], c(-1.0, 0.0));
        assert_eq!(g[(2, 0)], c(-1.0, 0.0));
        assert_eq!(g[(1, 1)], Complex64::ZERO);
        assert_eq!(g[(3, 3)], Complex64::ZERO);
    }

    #[test]
    fn gram_is_hermitian_and_cauchy_schwarz() {
        let mut gate = GateSpec::zero(2, 2);
        gate.vectors[0] = vec![c(0.3, 0.1), c(0.0, -0.2)];
        gate.vectors[3] = vec![c(-0.5, 0.4), c(0.1, 0.0)];
        gate.vectors[5] = vec![c(0.2, 0.0), c(0.0, 0.7)];
        let g = gate.gram();
        for k in 0..6 {
            for l in 0..6 {
                assert!((g[(k, l)] - g[(l, k)].conj()).norm() < 1e-15);
                let bound = (g[(k, k)].re * g[(l, l)].re).sqrt();
                assert!(g[(k, l)].norm() <= bound + 1e-15);
            }
        }
    }

    #[test]
    fn gram_of_zero_gate_is_zero() {
        let g = GateSpec::zero(2, 2).gram();
        assert!(g.iter().all(|z| *z == Complex64::ZERO));
    }

    #[test]
    fn validate_universal_m1() {
        let v = universal_m1().validate();
        assert!(v.is_valid());
        assert!(v.branch_zero_norm_residual < 1e-15);
        assert!(v.cross_residual < 1e-15);
    }

    #[test]
    fn validate_catches_bad_normalization() {
        let mut gate = universal_m1();
        gate.vectors[0] = vec![c(-2.0f64.sqrt(), 0.0), Complex64::ZERO];
        let v = gate.validate();
        assert!(!v.is_valid());
        assert!((v.branch_zero_norm_residual - 1.0).abs() < 1e-12);
        assert_eq!(v.failures().len(), 1);
    }

    #[test]
    fn validate_catches_cross_overlap() {
        // A_0 = A_3 = |up> at M = 1: the k = 0 term pairs A_0 with A_3.
        let mut gate = GateSpec::zero(1, 2);
        gate.vectors[0] = vec![c(1.0, 0.0), Complex64::ZERO];
        gate.vectors[3] = vec![c(1.0, 0.0), Complex64::ZERO];
        let v = gate.validate();
        assert!((v.cross_residual - 1.0).abs() < 1e-12);
        assert!(!v.is_valid());
    }

    #[test]
    fn apply_universal_at_pole() {
        let state = apply(&universal_m1(), &InputState::new(0.0, 0.0).unwrap()).unwrap();
        assert!((state.amplitude(0, 0) - c(-1.0, 0.0)).norm() < 1e-15);
        assert!(state.amplitude(1, 0).norm() < 1e-15);
        assert!((state.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn apply_universal_at_equator() {
        let state = apply(&universal_m1(), &InputState::new(PI / 2.0, 0.0).unwrap()).unwrap();
        let r = 0.5f64.sqrt();
        assert!((state.amplitude(0, 0) - c(-r, 0.0)).norm() < 1e-15);
        assert!((state.amplitude(1, 0) - c(r, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn apply_rejects_invalid_gate() {
        let gate = GateSpec::zero(1, 2);
        assert!(apply(&gate, &InputState::new(0.1, 0.2).unwrap()).is_err());
    }

    #[test]
    fn universal_m1_acts_as_sigma_z() {
        // The M=1 universal gate sends |0> to -|0> and |1> to |1| on the copy
        // qubit, so <psi_perp|rho|psi_perp> = sin^2(theta) exactly.
        let gate = universal_m1();
        for i in 0..40 {
            let theta = PI * i as f64 / 39.0;
            for j in 0..7 {
                let phi = 2.0 * PI * j as f64 / 7.0;
                let input = InputState::new(theta, phi).unwrap();
                let rho = reduced_single_qubit(&apply(&gate, &input).unwrap(), 1).unwrap();
                let f = rho.expectation(input.orthogonal_vector());
                assert!((f - theta.sin().powi(2)).abs() < 1e-12, "theta={theta} phi={phi}");
            }
        }
    }

    #[test]
    fn unit_norm_outputs_on_a_grid() {
        let gate = universal_m1();
        for i in 0..10 {
            for j in 0..10 {
                let input = InputState::new(PI * i as f64 / 9.0, 2.0 * PI * j as f64 / 10.0).unwrap();
                let out = apply(&gate, &input).unwrap();
                assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn gate_json_round_trip() {
        let gate = universal_m1();
        let text = crate::json::to_string(&gate).unwrap();
        let back: GateSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(gate, back);
    }

    #[test]
    fn realize_universal_m1_shape() {
        // a = (P/2Q)^2 = 1 on the full sphere: A_0 = -|up>, A_2 = |up>.
        let region = BeltRegion::new(0.0, PI).unwrap();
        let gate = realize_optimal(&region, 1).unwrap();
        assert_eq!(gate.vectors[0], vec![c(-1.0, 0.0), Complex64::ZERO]);
        assert!(gate.vectors[1].iter().all(|z| z.norm() == 0.0));
        assert_eq!(gate.vectors[2], vec![c(1.0, 0.0), Complex64::ZERO]);
        assert!(gate.vectors[3].iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn realize_equatorial_m1_shape() {
        // Q = 0 forces the boundary a = 1; same shape, perfect NOT.
        let region = BeltRegion::new(PI / 2.0, PI / 2.0).unwrap();
        let gate = realize_optimal(&region, 1).unwrap();
        assert_eq!(gate.vectors[0], vec![c(-1.0, 0.0), Complex64::ZERO]);
        assert_eq!(gate.vectors[2], vec![c(1.0, 0.0), Complex64::ZERO]);
    }

    #[test]
    fn realized_gates_validate_and_preserve_norm() {
        // Includes general (non-case-form) optima such as the even-M
        // universal belt.
        let belts = [
            (0.0, PI),
            (0.3, 0.6),
            (2.0, 3.0),
            (PI / 4.0, 3.0 * PI / 4.0),
            (0.0, 0.0),
            (PI / 2.0, PI / 2.0),
        ];
        for (t1, t2) in belts {
            let region = BeltRegion::new(t1, t2).unwrap();
            for m in 1..=5 {
                let gate = realize_optimal(&region, m).unwrap();
                assert!(gate.validate().is_valid(), "belt=({t1},{t2}) M={m}");
                for i in 0..10 {
                    for j in 0..10 {
                        let input = InputState::new(
                            PI * i as f64 / 9.0,
                            2.0 * PI * j as f64 / 10.0,
                        )
                        .unwrap();
                        let out = apply(&gate, &input).unwrap();
                        assert!(
                            (out.norm_sqr() - 1.0).abs() < 1e-12,
                            "belt=({t1},{t2}) M={m} input=({},{})",
                            input.theta,
                            input.phi
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn input_state_range_checks() {
        assert!(InputState::new(-0.1, 0.0).is_err());
        assert!(InputState::new(1.0, 7.0).is_err());
        assert!(InputState::new(PI, 0.0).is_ok());
    }
}
