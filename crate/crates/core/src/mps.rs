//! Sequential-generation (matrix-product-state) form of the gate's output
//! states.
//!
//! A chain of per-site isometries V^\[n\] applied to an ancilla produces the
//! (M+1)-qubit output one qubit at a time; the emitted state is
//! ⟨φ_F| V^\[M+1\] ⋯ V^\[1\] |φ_I⟩ with qubit 1 the least significant bit and
//! the gate's two-level ancilla emitted last. Two constructions are
//! provided: the closed-form chain for the odd-M exemplar output
//!
//!   |Ψ⟩ = −√γ |((M+1)/2)0, ((M−1)/2)1⟩|0⟩ + √(1−γ) |M1⟩|1⟩,
//!
//! whose Schmidt spectra are hypergeometric, and a generic SVD sweep that
//! factors any small state vector. Both satisfy Σ_i [V^i]†V^i = 1 at every
//! site; zero Schmidt branches are trimmed so bond dimensions stay minimal
//! and no Γ denominator is ever divided by zero.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::binom::binomial;
use crate::dicke::{expand_to_qubits, JointState};
use crate::error::{Error, Result};

/// Relative cutoff below which a Schmidt value counts as an absent branch.
const TRIM: f64 = 1e-12;

/// The odd-M case-1 exemplar output state, parametrized by γ = a_{(M−1)/2}.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ExemplarState {
    pub m: u32,
    pub gamma: f64,
}

impl ExemplarState {
    pub fn new(m: u32, gamma: f64) -> Result<Self> {
        if m == 0 || m % 2 == 0 {
            return Err(Error::Unsupported(format!(
                "the exemplar state requires odd M >= 1, got {m}"
            )));
        }
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::InvalidInput(format!("gamma={gamma} outside [0, 1]")));
        }
        Ok(Self { m, gamma })
    }

    /// Compact Dicke ⊗ ancilla form of the state.
    pub fn joint_state(&self) -> JointState {
        let mut state = JointState::zero(self.m, 2);
        let s = (self.m - 1) / 2;
        state.set_amplitude(s, 0, Complex64::new(-self.gamma.sqrt(), 0.0));
        state.set_amplitude(self.m, 1, Complex64::new((1.0 - self.gamma).sqrt(), 0.0));
        state
    }

    /// Full 2^(M+1) amplitude vector (ancilla is the top qubit).
    pub fn full_state(&self) -> Vec<Complex64> {
        expand_to_qubits(&self.joint_state()).expect("exemplar ancilla is two-dimensional")
    }
}

/// Closed-form Schmidt coefficients of the exemplar across the cut after
/// qubit n, slot-indexed: entry l (0-based, l = 0..n) is λ^\[n\]_{l+1}.
///
/// Slots l < n carry √(γ C(n,l) C(M−n, (M−1)/2 − l) / C(M, (M−1)/2)); the
/// last slot carries the mixed value √(1 − γ + γ C(M−n,(M−1)/2−n)/C(M,(M−1)/2))
/// while n ≤ (M−1)/2 and √(1−γ) once n ≥ (M+1)/2; out-of-range slots are 0.
pub fn exemplar_lambdas(state: &ExemplarState, n: u32) -> Result<Vec<f64>> {
    if n == 0 || n > state.m {
        return Err(Error::DimensionMismatch(format!(
            "cut position {n} outside 1..={}",
            state.m
        )));
    }
    let m = state.m;
    let s = (m - 1) / 2;
    let gamma = state.gamma;
    let total = binomial(m, s);
    let mut lambdas = vec![0.0; n as usize + 1];
    for l in 0..n {
        if l > s || s - l > m - n {
            continue;
        }
        lambdas[l as usize] = (gamma * binomial(n, l) * binomial(m - n, s - l) / total).sqrt();
    }
    let special = if n <= s {
        1.0 - gamma + gamma * binomial(m - n, s - n) / total
    } else {
        1.0 - gamma
    };
    lambdas[n as usize] = special.sqrt();
    Ok(lambdas)
}

/// One site of a chain: the pair of matrices V^\[n\]0, V^\[n\]1, each of shape
/// bond_out × bond_in (bond_in is the bond toward the start of the chain).
#[derive(Clone, Debug, PartialEq)]
pub struct MpsSite {
    pub v0: DMatrix<Complex64>,
    pub v1: DMatrix<Complex64>,
}

impl MpsSite {
    pub fn bond_in(&self) -> usize {
        self.v0.ncols()
    }

    pub fn bond_out(&self) -> usize {
        self.v0.nrows()
    }

    pub fn v(&self, bit: usize) -> &DMatrix<Complex64> {
        if bit == 0 {
            &self.v0
        } else {
            &self.v1
        }
    }

    /// Max-entry residual of Σ_i [V^i]†V^i − 1 on the incoming bond.
    pub fn isometry_residual(&self) -> f64 {
        let dim = self.bond_in();
        let mut acc = self.v0.adjoint() * &self.v0 + self.v1.adjoint() * &self.v1;
        for d in 0..dim {
            acc[(d, d)] -= Complex64::ONE;
        }
        acc.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// An MPS chain with its boundary vectors. Site 1 is emitted first and is
/// the least significant bit of the contracted amplitude index.
#[derive(Clone, Debug, PartialEq)]
pub struct MpsChain {
    pub sites: Vec<MpsSite>,
    pub boundary_in: Vec<Complex64>,
    pub boundary_out: Vec<Complex64>,
}

impl MpsChain {
    pub fn site_count(&self) -> usize {
        self.sites.len()
    }

    /// Bond dimensions [1, χ_1, …, χ_{n-1}, 1].
    pub fn bond_dims(&self) -> Vec<usize> {
        let mut dims = vec![self.boundary_in.len()];
        dims.extend(self.sites.iter().map(MpsSite::bond_out));
        dims
    }

    pub fn isometry_residuals(&self) -> Vec<f64> {
        self.sites.iter().map(MpsSite::isometry_residual).collect()
    }

    /// Contract the chain into the full 2^n amplitude vector.
    pub fn contract(&self) -> Result<Vec<Complex64>> {
        let n = self.sites.len();
        if n > 24 {
            return Err(Error::Unsupported(format!(
                "refusing to contract a {n}-site chain into a dense vector"
            )));
        }
        let mut carried: Vec<DVector<Complex64>> =
            vec![DVector::from_column_slice(&self.boundary_in)];
        for (idx, site) in self.sites.iter().enumerate() {
            if site.bond_in() != carried[0].len() {
                return Err(Error::DimensionMismatch(format!(
                    "site {} expects bond_in {}, previous bond is {}",
                    idx + 1,
                    site.bond_in(),
                    carried[0].len()
                )));
            }
            // The new qubit becomes the most significant index bit.
            let mut next = Vec::with_capacity(carried.len() * 2);
            for bit in 0..2 {
                for vec in &carried {
                    next.push(site.v(bit) * vec);
                }
            }
            carried = next;
        }
        let out_dim = self.sites.last().map(MpsSite::bond_out).unwrap_or(1);
        if out_dim != self.boundary_out.len() {
            return Err(Error::DimensionMismatch(format!(
                "final bond {} does not match boundary_out length {}",
                out_dim,
                self.boundary_out.len()
            )));
        }
        Ok(carried
            .iter()
            .map(|vec| {
                self.boundary_out
                    .iter()
                    .zip(vec.iter())
                    .map(|(f, a)| f * a)
                    .sum()
            })
            .collect())
    }
}

/// Schmidt spectra (slot-indexed, zeros kept) and Γ tensors (trimmed bonds,
/// bond_in × bond_out) accompanying an exemplar chain.
#[derive(Clone, Debug)]
pub struct SchmidtData {
    pub lambdas: Vec<Vec<f64>>,
    pub gammas: Vec<(DMatrix<Complex64>, DMatrix<Complex64>)>,
}

/// Build the exemplar chain from the closed-form Schmidt data.
///
/// Site n carries V0\[l→l\] = λ^\[n\]_{l+1} √(C(n−1,l)/C(n,l)) / λ^\[n−1\]_{l+1}
/// and V1\[l→l+1\] = λ^\[n\]_{l+2} √(C(n−1,l)/C(n,l+1)) / λ^\[n−1\]_{l+1} on the
/// surviving slots; the last site encodes the reduced one-qubit states
/// −|0⟩ (γ branch) and |1⟩ (free branch).
pub fn exemplar_chain(state: &ExemplarState) -> Result<(MpsChain, SchmidtData)> {
    let m = state.m;
    let s = (m - 1) / 2;
    let mut all_lambdas = Vec::with_capacity(m as usize);
    for n in 1..=m {
        all_lambdas.push(exemplar_lambdas(state, n)?);
    }
    // Active slot lists per cut; cut 0 is the single slot l = 0.
    let mut active: Vec<Vec<usize>> = Vec::with_capacity(m as usize + 1);
    active.push(vec![0]);
    for lam in &all_lambdas {
        let max = lam.iter().cloned().fold(0.0, f64::max);
        active.push(
            lam.iter()
                .enumerate()
                .filter(|(_, v)| **v > TRIM * max)
                .map(|(i, _)| i)
                .collect(),
        );
    }

    let mut sites = Vec::with_capacity(m as usize + 1);
    let mut gammas = Vec::with_capacity(m as usize + 1);
    for n in 1..=m as usize {
        let cols = &active[n - 1];
        let rows = &active[n];
        let lam_prev: &[f64] = if n == 1 { &[1.0] } else { &all_lambdas[n - 2] };
        let lam_here = &all_lambdas[n - 1];
        let mut v0 = DMatrix::<Complex64>::zeros(rows.len(), cols.len());
        let mut v1 = v0.clone();
        let mut g0 = DMatrix::<Complex64>::zeros(cols.len(), rows.len());
        let mut g1 = g0.clone();
        for (ci, &l) in cols.iter().enumerate() {
            let denom = lam_prev[l];
            // Emitting |0⟩ keeps the ones count l; emitting |1⟩ raises it.
            if let Some(ri) = rows.iter().position(|&r| r == l) {
                let ratio = (binomial(n as u32 - 1, l as u32) / binomial(n as u32, l as u32)).sqrt();
                let gamma_entry = ratio / denom;
                g0[(ci, ri)] = Complex64::new(gamma_entry, 0.0);
                v0[(ri, ci)] = Complex64::new(lam_here[l] * gamma_entry, 0.0);
            }
            if let Some(ri) = rows.iter().position(|&r| r == l + 1) {
                let ratio =
                    (binomial(n as u32 - 1, l as u32) / binomial(n as u32, l as u32 + 1)).sqrt();
                let gamma_entry = ratio / denom;
                g1[(ci, ri)] = Complex64::new(gamma_entry, 0.0);
                v1[(ri, ci)] = Complex64::new(lam_here[l + 1] * gamma_entry, 0.0);
            }
        }
        sites.push(MpsSite { v0, v1 });
        gammas.push((g0, g1));
    }

    // Ancilla site: the γ branch (slot (M−1)/2) emits −|0⟩, the free branch
    // (slot M) emits |1⟩.
    let cols = &active[m as usize];
    let mut v0 = DMatrix::<Complex64>::zeros(1, cols.len());
    let mut v1 = v0.clone();
    for (ci, &l) in cols.iter().enumerate() {
        if l == s as usize {
            v0[(0, ci)] = Complex64::new(-1.0, 0.0);
        } else if l == m as usize {
            v1[(0, ci)] = Complex64::ONE;
        }
    }
    gammas.push((v0.transpose(), v1.transpose()));
    sites.push(MpsSite { v0, v1 });

    let chain = MpsChain {
        sites,
        boundary_in: vec![Complex64::ONE],
        boundary_out: vec![Complex64::ONE],
    };
    Ok((chain, SchmidtData { lambdas: all_lambdas, gammas }))
}

/// Factor an arbitrary normalized state vector into an isometric chain by a
/// right-to-left SVD sweep. Singular values below 1e−12 of the largest at
/// each cut are discarded.
pub fn generic_chain(full_state: &[Complex64], qubit_count: u32) -> Result<MpsChain> {
    if qubit_count == 0 || qubit_count > 14 {
        return Err(Error::Unsupported(format!(
            "generic chain supports 1..=14 qubits, got {qubit_count}"
        )));
    }
    let dim = 1usize << qubit_count;
    if full_state.len() != dim {
        return Err(Error::DimensionMismatch(format!(
            "state has {} amplitudes, expected {dim}",
            full_state.len()
        )));
    }
    let norm_sqr: f64 = full_state.iter().map(|z| z.norm_sqr()).sum();
    if (norm_sqr - 1.0).abs() > 1e-12 {
        return Err(Error::NotNormalized { norm_sqr });
    }

    let n = qubit_count as usize;
    let mut sites: Vec<MpsSite> = Vec::with_capacity(n);
    // carried: 2^k rows (bits i_1..i_k) by bond columns.
    let mut carried = DMatrix::<Complex64>::from_fn(dim, 1, |r, _| full_state[r]);
    for site_index in (2..=n).rev() {
        let rows = 1usize << (site_index - 1);
        let chi = carried.ncols();
        // Fold qubit `site_index` into the column index: (bit, bond).
        let folded = DMatrix::<Complex64>::from_fn(rows, 2 * chi, |r, c| {
            let bit = c / chi;
            let alpha = c % chi;
            carried[(r + (bit << (site_index - 1)), alpha)]
        });
        let svd = folded.svd(true, true);
        let u = svd.u.as_ref().expect("svd with u requested");
        let w_t = svd.v_t.as_ref().expect("svd with v_t requested");
        let sigma = &svd.singular_values;
        let sigma_max = sigma.iter().cloned().fold(0.0, f64::max);
        let mut keep: Vec<usize> = (0..sigma.len())
            .filter(|&i| sigma[i] > TRIM * sigma_max)
            .collect();
        keep.sort_by(|&a, &b| sigma[b].partial_cmp(&sigma[a]).unwrap());
        let rank = keep.len();
        let mut v0 = DMatrix::<Complex64>::zeros(chi, rank);
        let mut v1 = v0.clone();
        for (new_beta, &src) in keep.iter().enumerate() {
            for alpha in 0..chi {
                v0[(alpha, new_beta)] = w_t[(src, alpha)];
                v1[(alpha, new_beta)] = w_t[(src, chi + alpha)];
            }
        }
        sites.push(MpsSite { v0, v1 });
        let mut next = DMatrix::<Complex64>::zeros(rows, rank);
        for (new_beta, &src) in keep.iter().enumerate() {
            for r in 0..rows {
                next[(r, new_beta)] = u[(r, src)] * sigma[src];
            }
        }
        carried = next;
    }
    // Site 1: carried is 2 x chi_1.
    let chi1 = carried.ncols();
    let mut v0 = DMatrix::<Complex64>::zeros(chi1, 1);
    let mut v1 = v0.clone();
    for alpha in 0..chi1 {
        v0[(alpha, 0)] = carried[(0, alpha)];
        v1[(alpha, 0)] = carried[(1, alpha)];
    }
    sites.push(MpsSite { v0, v1 });
    sites.reverse();
    Ok(MpsChain {
        sites,
        boundary_in: vec![Complex64::ONE],
        boundary_out: vec![Complex64::ONE],
    })
}

/// Outcome of checking a chain against a reference state.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainCertificate {
    pub site_isometry_residuals: Vec<f64>,
    pub max_isometry_residual: f64,
    /// |⟨reference|chain⟩|.
    pub overlap: f64,
    pub passed: bool,
}

pub const ISOMETRY_TOL: f64 = 1e-12;
pub const OVERLAP_TOL: f64 = 1e-10;

/// Contract a chain and compare against a reference amplitude vector.
/// Passes iff every site isometry residual is below 1e−12 and the overlap
/// modulus exceeds 1 − 1e−10.
pub fn verify_chain(chain: &MpsChain, reference: &[Complex64]) -> Result<ChainCertificate> {
    let contracted = chain.contract()?;
    if contracted.len() != reference.len() {
        return Err(Error::DimensionMismatch(format!(
            "chain contracts to {} amplitudes, reference has {}",
            contracted.len(),
            reference.len()
        )));
    }
    let overlap = reference
        .iter()
        .zip(&contracted)
        .map(|(r, c)| r.conj() * c)
        .sum::<Complex64>()
        .norm();
    let site_isometry_residuals = chain.isometry_residuals();
    let max_isometry_residual = site_isometry_residuals.iter().cloned().fold(0.0, f64::max);
    let passed = max_isometry_residual < ISOMETRY_TOL && overlap > 1.0 - OVERLAP_TOL;
    Ok(ChainCertificate {
        site_isometry_residuals,
        max_isometry_residual,
        overlap,
        passed,
    })
}

// --- serialization -------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct SiteJson {
    bond_in: usize,
    bond_out: usize,
    #[serde(rename = "V0")]
    v0: Vec<Vec<[f64; 2]>>,
    #[serde(rename = "V1")]
    v1: Vec<Vec<[f64; 2]>>,
}

#[derive(Serialize, Deserialize)]
struct ChainJson {
    sites: Vec<SiteJson>,
    boundary_in: Vec<[f64; 2]>,
    boundary_out: Vec<[f64; 2]>,
}

fn matrix_rows(m: &DMatrix<Complex64>) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
        .collect()
}

fn matrix_from_rows(rows: &[Vec<[f64; 2]>], bond_out: usize, bond_in: usize) -> Result<DMatrix<Complex64>> {
    if rows.len() != bond_out || rows.iter().any(|r| r.len() != bond_in) {
        return Err(Error::Malformed(
            "site matrix shape disagrees with declared bond dimensions".into(),
        ));
    }
    Ok(DMatrix::from_fn(bond_out, bond_in, |r, c| {
        Complex64::new(rows[r][c][0], rows[r][c][1])
    }))
}

impl Serialize for MpsChain {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let json = ChainJson {
            sites: self
                .sites
                .iter()
                .map(|s| SiteJson {
                    bond_in: s.bond_in(),
                    bond_out: s.bond_out(),
                    v0: matrix_rows(&s.v0),
                    v1: matrix_rows(&s.v1),
                })
                .collect(),
            boundary_in: self.boundary_in.iter().map(|z| [z.re, z.im]).collect(),
            boundary_out: self.boundary_out.iter().map(|z| [z.re, z.im]).collect(),
        };
        json.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MpsChain {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = ChainJson::deserialize(deserializer)?;
        let sites = json
            .sites
            .iter()
            .map(|s| {
                Ok(MpsSite {
                    v0: matrix_from_rows(&s.v0, s.bond_out, s.bond_in)?,
                    v1: matrix_from_rows(&s.v1, s.bond_out, s.bond_in)?,
                })
            })
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(MpsChain {
            sites,
            boundary_in: json.boundary_in.iter().map(|p| Complex64::new(p[0], p[1])).collect(),
            boundary_out: json.boundary_out.iter().map(|p| Complex64::new(p[0], p[1])).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn exemplar_rejects_even_m_and_bad_gamma() {
        assert!(ExemplarState::new(2, 0.5).is_err());
        assert!(ExemplarState::new(3, 1.5).is_err());
        assert!(ExemplarState::new(3, 0.5).is_ok());
    }

    #[test]
    fn lambdas_m3_gamma1_cut1() {
        // lambda_1 = sqrt(gamma (M+1)/(2M)) = sqrt(2/3), lambda_2 = sqrt(1/3).
        let state = ExemplarState::new(3, 1.0).unwrap();
        let lam = exemplar_lambdas(&state, 1).unwrap();
        assert_eq!(lam.len(), 2);
        assert!((lam[0] - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!((lam[1] - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn first_cut_lambdas_closed_form() {
        // At the first cut: lambda_1 = sqrt(gamma (M+1)/(2M)) and
        // lambda_2 = sqrt(1 - gamma (M+1)/(2M)).
        for m in [3u32, 5, 9] {
            for gamma in [0.2, 0.7] {
                let state = ExemplarState::new(m, gamma).unwrap();
                let lam = exemplar_lambdas(&state, 1).unwrap();
                let head = gamma * (m as f64 + 1.0) / (2.0 * m as f64);
                assert!((lam[0] - head.sqrt()).abs() < 1e-15, "m={m} gamma={gamma}");
                assert!((lam[1] - (1.0 - head).sqrt()).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn lambdas_gamma0_is_product_state() {
        let state = ExemplarState::new(7, 0.0).unwrap();
        for n in 1..=7 {
            let lam = exemplar_lambdas(&state, n).unwrap();
            let nonzero: Vec<f64> = lam.into_iter().filter(|v| *v > 0.0).collect();
            assert_eq!(nonzero, vec![1.0]);
        }
    }

    #[test]
    fn lambdas_normalized_and_match_svd() {
        for m in [3u32, 5, 7] {
            for gamma in [0.0, 0.3, 0.5, 0.9, 1.0] {
                let state = ExemplarState::new(m, gamma).unwrap();
                let full = state.full_state();
                for n in 1..=m {
                    let lam = exemplar_lambdas(&state, n).unwrap();
                    let sum: f64 = lam.iter().map(|v| v * v).sum();
                    assert!((sum - 1.0).abs() < 1e-12, "m={m} gamma={gamma} n={n}");
                    // Numerical Schmidt values across the same cut.
                    let rows = 1usize << n;
                    let cols = 1usize << (m + 1 - n);
                    let mat = DMatrix::<Complex64>::from_fn(rows, cols, |r, cidx| {
                        full[r + (cidx << n)]
                    });
                    let mut sv: Vec<f64> = mat.svd(false, false).singular_values.iter().cloned().collect();
                    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
                    let mut analytic = lam.clone();
                    analytic.sort_by(|a, b| b.partial_cmp(a).unwrap());
                    for (i, s) in sv.iter().enumerate() {
                        let reference = analytic.get(i).copied().unwrap_or(0.0);
                        assert!(
                            (s - reference).abs() < 1e-10,
                            "m={m} gamma={gamma} n={n} i={i}: svd {s} vs analytic {reference}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn exemplar_chain_m1_gamma1() {
        // The exemplar at M = 1, gamma = 1 is -|00>; the chain must reproduce it
        // exactly, sign included.
        let state = ExemplarState::new(1, 1.0).unwrap();
        let (chain, _) = exemplar_chain(&state).unwrap();
        let amps = chain.contract().unwrap();
        assert_eq!(amps.len(), 4);
        assert!((amps[0] - c(-1.0, 0.0)).norm() < 1e-14);
        assert!(amps[1..].iter().all(|a| a.norm() < 1e-14));
    }

    #[test]
    fn exemplar_chain_m3_gamma1_reconstructs() {
        let state = ExemplarState::new(3, 1.0).unwrap();
        let (chain, _) = exemplar_chain(&state).unwrap();
        let reference = state.full_state();
        let cert = verify_chain(&chain, &reference).unwrap();
        assert!(cert.passed, "{cert:?}");
        assert!(cert.overlap > 1.0 - 1e-12);
        // Exact sign agreement, not just modulus.
        let amps = chain.contract().unwrap();
        for (a, r) in amps.iter().zip(&reference) {
            assert!((a - r).norm() < 1e-12);
        }
    }

    #[test]
    fn exemplar_chain_isometric_everywhere() {
        for gamma in [0.0, 0.1, 0.6, 1.0] {
            let state = ExemplarState::new(5, gamma).unwrap();
            let (chain, _) = exemplar_chain(&state).unwrap();
            for (i, r) in chain.isometry_residuals().iter().enumerate() {
                assert!(*r < 1e-12, "gamma={gamma} site={i} residual={r}");
            }
        }
    }

    #[test]
    fn schmidt_data_shapes() {
        let state = ExemplarState::new(5, 0.4).unwrap();
        let (chain, data) = exemplar_chain(&state).unwrap();
        assert_eq!(data.lambdas.len(), 5);
        assert_eq!(data.gammas.len(), chain.site_count());
        for (n, lam) in data.lambdas.iter().enumerate() {
            assert_eq!(lam.len(), n + 2);
        }
    }

    #[test]
    fn generic_chain_ghz_bond_dims() {
        let r = 0.5f64.sqrt();
        let mut ghz = vec![Complex64::ZERO; 8];
        ghz[0] = c(r, 0.0);
        ghz[7] = c(r, 0.0);
        let chain = generic_chain(&ghz, 3).unwrap();
        assert_eq!(chain.bond_dims(), vec![1, 2, 2, 1]);
        let cert = verify_chain(&chain, &ghz).unwrap();
        assert!(cert.passed, "{cert:?}");
    }

    #[test]
    fn generic_chain_product_state() {
        // |010>: all bonds trivial.
        let mut state = vec![Complex64::ZERO; 8];
        state[2] = Complex64::ONE;
        let chain = generic_chain(&state, 3).unwrap();
        assert_eq!(chain.bond_dims(), vec![1, 1, 1, 1]);
        let amps = chain.contract().unwrap();
        assert!((amps[2].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn generic_chain_rejects_unnormalized() {
        let state = vec![c(0.5, 0.0); 4];
        assert!(generic_chain(&state, 2).is_ok());
        let bad = vec![c(0.7, 0.0); 4];
        assert!(matches!(generic_chain(&bad, 2), Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn generic_chain_rejects_bad_shapes() {
        let state = vec![Complex64::ONE; 4];
        assert!(generic_chain(&state, 0).is_err());
        assert!(generic_chain(&state, 15).is_err());
        assert!(matches!(
            generic_chain(&state, 3),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn exemplar_lambdas_rejects_bad_cut() {
        let state = ExemplarState::new(3, 0.5).unwrap();
        assert!(exemplar_lambdas(&state, 0).is_err());
        assert!(exemplar_lambdas(&state, 4).is_err());
    }

    #[test]
    fn generic_matches_exemplar_rank_profile() {
        let state = ExemplarState::new(5, 0.3).unwrap();
        let full = state.full_state();
        let chain = generic_chain(&full, 6).unwrap();
        let (analytic75, _) = exemplar_chain(&state).unwrap();
        assert_eq!(chain.bond_dims(), analytic75.bond_dims());
        let cert = verify_chain(&chain, &full).unwrap();
        assert!(cert.passed);
    }

    #[test]
    fn tampered_chain_fails_isometry() {
        let state = ExemplarState::new(3, 0.5).unwrap();
        let (mut chain, _) = exemplar_chain(&state).unwrap();
        chain.sites[1].v0 *= Complex64::new(1.01, 0.0);
        chain.sites[1].v1 *= Complex64::new(1.01, 0.0);
        let residual = chain.sites[1].isometry_residual();
        // Scaling a site by 1.01 shifts the isometry check by 1.01^2 - 1.
        assert!((residual - 0.0201).abs() < 1e-12, "residual={residual}");
        let cert = verify_chain(&chain, &state.full_state()).unwrap();
        assert!(!cert.passed);
    }

    #[test]
    fn chain_json_round_trip() {
        let state = ExemplarState::new(3, 0.25).unwrap();
        let (chain, _) = exemplar_chain(&state).unwrap();
        let text = crate::json::to_string(&chain).unwrap();
        let back: MpsChain = serde_json::from_str(&text).unwrap();
        assert_eq!(chain, back);
    }

    #[test]
    fn random_state_round_trips_through_generic_chain() {
        // Deterministic pseudo-random 8-qubit state.
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let mut state: Vec<Complex64> = (0..256).map(|_| c(next(), next())).collect();
        let norm: f64 = state.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut state {
            *z /= norm;
        }
        let chain = generic_chain(&state, 8).unwrap();
        let cert = verify_chain(&chain, &state).unwrap();
        assert!(cert.passed, "{cert:?}");
        assert!(cert.overlap > 1.0 - 1e-10);
    }
}
