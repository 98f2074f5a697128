//! Symmetric (Dicke) subspace algebra: basis indexing, expansion to the
//! computational basis, and single-qubit partial traces.
//!
//! The gate's outputs always live in span{Dicke(M)} ⊗ ancilla, so states are
//! stored compactly as an (M+1) × anc_dim amplitude table instead of a
//! 2^(M+1) vector. Qubit ordering convention: copy qubits 1..M with qubit 1
//! as the least significant bit of a computational index, ancilla last.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::binom::binomial;
use crate::error::{Error, Result};

/// Label |(m−k)0, k1⟩: the normalized symmetric state of m qubits with
/// exactly k of them in |1⟩.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DickeIndex {
    pub m: u32,
    pub k: u32,
}

impl DickeIndex {
    pub fn new(m: u32, k: u32) -> Result<Self> {
        if k > m {
            return Err(Error::DimensionMismatch(format!(
                "Dicke index k={k} exceeds qubit count m={m}"
            )));
        }
        Ok(Self { m, k })
    }
}

/// Amplitude ⟨bits|(m−k)0, k1⟩: 1/√C(m,k) when the bitstring has exactly k
/// ones, 0 otherwise. The bitstring must consist of '0'/'1' and have length m.
pub fn dicke_amplitude(index: DickeIndex, bitstring: &str) -> Result<f64> {
    if bitstring.len() != index.m as usize {
        return Err(Error::DimensionMismatch(format!(
            "bitstring length {} does not match qubit count {}",
            bitstring.len(),
            index.m
        )));
    }
    let mut ones = 0u32;
    for c in bitstring.chars() {
        match c {
            '0' => {}
            '1' => ones += 1,
            other => {
                return Err(Error::Malformed(format!(
                    "bitstring may only contain '0' and '1', found {other:?}"
                )))
            }
        }
    }
    if ones == index.k {
        Ok(1.0 / binomial(index.m, index.k).sqrt())
    } else {
        Ok(0.0)
    }
}

/// A state on M copy qubits plus an ancilla, restricted to the symmetric
/// subspace of the copies: amplitudes indexed by (ones count k, ancilla
/// basis index), row-major with k outermost.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JointState {
    pub m: u32,
    pub anc_dim: u32,
    /// (m+1) * anc_dim complex amplitudes as [re, im] pairs in JSON.
    #[serde(with = "crate::json::complex_vec")]
    pub amplitudes: Vec<Complex64>,
}

impl JointState {
    pub fn zero(m: u32, anc_dim: u32) -> Self {
        Self {
            m,
            anc_dim,
            amplitudes: vec![Complex64::ZERO; ((m + 1) * anc_dim) as usize],
        }
    }

    pub fn amplitude(&self, k: u32, anc: u32) -> Complex64 {
        self.amplitudes[(k * self.anc_dim + anc) as usize]
    }

    pub fn set_amplitude(&mut self, k: u32, anc: u32, value: Complex64) {
        self.amplitudes[(k * self.anc_dim + anc) as usize] = value;
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// ⟨self|other⟩ in the compact representation.
    pub fn inner(&self, other: &JointState) -> Result<Complex64> {
        if self.m != other.m || self.anc_dim != other.anc_dim {
            return Err(Error::DimensionMismatch(
                "joint states have different shapes".into(),
            ));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    fn check_normalized(&self) -> Result<()> {
        let n = self.norm_sqr();
        if (n - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized { norm_sqr: n });
        }
        Ok(())
    }
}

/// Expand a compact state to the full computational basis.
///
/// The result has 2^m entries for a trivial ancilla and 2^(m+1) entries for a
/// two-dimensional one (the ancilla becomes the top qubit). Larger ancillas
/// are rejected: the realized gates never need them.
pub fn expand_to_qubits(state: &JointState) -> Result<Vec<Complex64>> {
    if state.anc_dim == 0 || state.anc_dim > 2 {
        return Err(Error::Unsupported(format!(
            "expansion requires anc_dim in {{1, 2}}, got {}",
            state.anc_dim
        )));
    }
    if state.m > 20 {
        return Err(Error::Unsupported(format!(
            "expansion limited to m <= 20, got {}",
            state.m
        )));
    }
    let m = state.m as usize;
    let total_qubits = m + if state.anc_dim == 2 { 1 } else { 0 };
    let mut out = vec![Complex64::ZERO; 1usize << total_qubits];
    let inv_sqrt: Vec<f64> = (0..=state.m)
        .map(|k| 1.0 / binomial(state.m, k).sqrt())
        .collect();
    for (x, slot) in out.iter_mut().enumerate() {
        let copies = x & ((1usize << m) - 1);
        let anc = (x >> m) as u32;
        let k = copies.count_ones();
        *slot = state.amplitude(k, anc) * inv_sqrt[k as usize];
    }
    Ok(out)
}

/// A 2×2 density matrix with entries rho[(i, j)] = ⟨i|ρ|j⟩.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix2 {
    pub entries: [[Complex64; 2]; 2],
}

impl DensityMatrix2 {
    pub fn trace(&self) -> Complex64 {
        self.entries[0][0] + self.entries[1][1]
    }

    pub fn hermiticity_residual(&self) -> f64 {
        let d = self.entries[0][1] - self.entries[1][0].conj();
        let diag = self.entries[0][0].im.abs().max(self.entries[1][1].im.abs());
        d.norm().max(diag)
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let a = self.entries[0][0].re;
        let d = self.entries[1][1].re;
        let b = self.entries[0][1];
        let mid = 0.5 * (a + d);
        let disc = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        [mid - disc, mid + disc]
    }

    /// ⟨v|ρ|v⟩ for a single-qubit vector v = (v0, v1).
    pub fn expectation(&self, v: [Complex64; 2]) -> f64 {
        let mut acc = Complex64::ZERO;
        for i in 0..2 {
            for j in 0..2 {
                acc += v[i].conj() * self.entries[i][j] * v[j];
            }
        }
        acc.re
    }
}

/// Partial trace of a normalized joint state down to one copy qubit.
///
/// By the permutation symmetry of the Dicke basis the result is the same for
/// every copy, so `which` only gets range-checked. The trace is evaluated in
/// the compact representation: diagonal weights (M−k)/M and k/M, off-diagonal
/// couplings √((M−k)(k+1))/M · ⟨β_{k+1}|β_k⟩ between adjacent ancilla rows.
pub fn reduced_single_qubit(state: &JointState, which: u32) -> Result<DensityMatrix2> {
    if which == 0 || which > state.m {
        return Err(Error::DimensionMismatch(format!(
            "qubit index {which} out of range 1..={}",
            state.m
        )));
    }
    state.check_normalized()?;
    let m = state.m;
    let mf = m as f64;
    let mut rho00 = 0.0;
    let mut rho11 = 0.0;
    let mut rho01 = Complex64::ZERO;
    for k in 0..=m {
        let mut row_norm = 0.0;
        for anc in 0..state.anc_dim {
            row_norm += state.amplitude(k, anc).norm_sqr();
        }
        rho00 += (m - k) as f64 / mf * row_norm;
        rho11 += k as f64 / mf * row_norm;
        if k < m {
            // ⟨β_{k+1}|β_k⟩ over the ancilla.
            let mut overlap = Complex64::ZERO;
            for anc in 0..state.anc_dim {
                overlap += state.amplitude(k + 1, anc).conj() * state.amplitude(k, anc);
            }
            let w = (((m - k) * (k + 1)) as f64).sqrt() / mf;
            rho01 += w * overlap;
        }
    }
    Ok(DensityMatrix2 {
        entries: [
            [Complex64::new(rho00, 0.0), rho01],
            [rho01.conj(), Complex64::new(rho11, 0.0)],
        ],
    })
}

/// Brute-force partial trace from the expanded 2^n vector; test oracle for
/// the compact path, also used by the verification tooling.
pub fn reduced_single_qubit_brute(state: &JointState, which: u32) -> Result<DensityMatrix2> {
    if which == 0 || which > state.m {
        return Err(Error::DimensionMismatch(format!(
            "qubit index {which} out of range 1..={}",
            state.m
        )));
    }
    let full = expand_to_qubits(state)?;
    let bit = which - 1;
    let mut rho = [[Complex64::ZERO; 2]; 2];
    for (x, amp) in full.iter().enumerate() {
        if amp == &Complex64::ZERO {
            continue;
        }
        // rho[i][j] = sum over the other qubits of psi(i, rest) psi(j, rest)*.
        let i = (x >> bit) & 1;
        for (j, slot) in rho[i].iter_mut().enumerate() {
            let y = (x & !(1usize << bit)) | (j << bit);
            *slot += amp * full[y].conj();
        }
    }
    Ok(DensityMatrix2 { entries: rho })
}
