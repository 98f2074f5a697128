//! The latitude belt: where the input qubits live, and the derived constants
//! that drive the averaged fidelity.
//!
//! Inputs are qubits cos(θ/2)|0⟩ + sin(θ/2)e^{iφ}|1⟩ with φ uniform and θ
//! uniform (under the sin θ surface measure) between two latitudes θ1 ≤ θ2.
//! Four belt constants K, P, Q, R summarize everything the averaged fidelity
//! needs to know about the belt.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A pair of latitudes 0 ≤ θ1 ≤ θ2 ≤ π on the Bloch sphere, in radians.
///
/// θ1 = θ2 is allowed and denotes a single latitude circle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BeltRegion {
    pub theta1: f64,
    pub theta2: f64,
}

impl BeltRegion {
    pub fn new(theta1: f64, theta2: f64) -> Result<Self> {
        if !theta1.is_finite() || !theta2.is_finite() {
            return Err(Error::InvalidRegion(format!(
                "theta1={theta1}, theta2={theta2}: angles must be finite"
            )));
        }
        if theta1 < 0.0 || theta2 > std::f64::consts::PI || theta1 > theta2 {
            return Err(Error::InvalidRegion(format!(
                "theta1={theta1}, theta2={theta2}: need 0 <= theta1 <= theta2 <= pi"
            )));
        }
        Ok(Self { theta1, theta2 })
    }

    /// The belt is a single latitude circle.
    pub fn is_degenerate(&self) -> bool {
        self.theta1 == self.theta2
    }

    /// cos θ1 and cos θ2. cos is monotone decreasing, so the first value is
    /// the larger one.
    pub fn cosines(&self) -> (f64, f64) {
        (self.theta1.cos(), self.theta2.cos())
    }
}

/// The four constants entering the belt-averaged fidelity:
///
/// K = cos²θ1 + cosθ1·cosθ2 + cos²θ2,  P = (3 − K)/6,
/// Q = K/6 + (cosθ1 + cosθ2)/4,        R = K/6 − (cosθ1 + cosθ2)/4.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BeltConstants {
    pub k_const: f64,
    pub p_const: f64,
    pub q_const: f64,
    pub r_const: f64,
}

/// Belt constants from the latitude pair.
pub fn belt_constants(region: &BeltRegion) -> BeltConstants {
    let (c1, c2) = region.cosines();
    belt_constants_from_cosines(c1, c2)
}

/// Belt constants from the two cosines directly.
///
/// The squares are summed in sorted order so the result is bitwise identical
/// under the swap (c1, c2) -> (c2, c1) and under the reflection
/// (c1, c2) -> (-c2, -c1), which negates both cosines and therefore swaps
/// Q and R exactly.
pub fn belt_constants_from_cosines(c1: f64, c2: f64) -> BeltConstants {
    let (s_lo, s_hi) = {
        let (a, b) = (c1 * c1, c2 * c2);
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    };
    let k = (s_lo + s_hi) + c1 * c2;
    let p = (3.0 - k) / 6.0;
    let sum = c1 + c2;
    let q = k / 6.0 + sum / 4.0;
    let r = k / 6.0 - sum / 4.0;
    BeltConstants {
        k_const: k,
        p_const: p,
        q_const: q,
        r_const: r,
    }
}

/// Which of the four optimal-gate cases applies: the latitude-ordering
/// predicate |θ1 − π/2| ≥ |θ2 − π/2| crossed with the parity of M.
/// Ties in the ordering resolve to the "≥" branch (Case1/Case3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseId {
    Case1,
    Case2,
    Case3,
    Case4,
}

impl CaseId {
    /// True for Case1/Case3 (θ1 at least as far from the equator as θ2).
    pub fn first_farther(&self) -> bool {
        matches!(self, CaseId::Case1 | CaseId::Case3)
    }

    pub fn odd_m(&self) -> bool {
        matches!(self, CaseId::Case1 | CaseId::Case2)
    }
}

impl std::fmt::Display for CaseId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CaseId::Case1 => "case1",
            CaseId::Case2 => "case2",
            CaseId::Case3 => "case3",
            CaseId::Case4 => "case4",
        };
        write!(f, "{s}")
    }
}

/// Classify a belt and copy count into one of the four cases.
///
/// The ordering comparison is an exact >= on the computed doubles; no epsilon.
/// At exact ties the two eligible case branches give the same fidelity, which
/// the optimizer module verifies.
pub fn classify_case(region: &BeltRegion, m: u32) -> CaseId {
    assert!(m >= 1, "copy count must be at least 1");
    let half_pi = std::f64::consts::FRAC_PI_2;
    let d1 = (region.theta1 - half_pi).abs();
    let d2 = (region.theta2 - half_pi).abs();
    let first = d1 >= d2;
    match (first, m % 2 == 1) {
        (true, true) => CaseId::Case1,
        (false, true) => CaseId::Case2,
        (true, false) => CaseId::Case3,
        (false, false) => CaseId::Case4,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn rejects_bad_regions() {
        assert!(BeltRegion::new(-0.1, 1.0).is_err());
        assert!(BeltRegion::new(0.2, 0.1).is_err());
        assert!(BeltRegion::new(0.0, PI + 0.1).is_err());
        assert!(BeltRegion::new(f64::NAN, 1.0).is_err());
        assert!(BeltRegion::new(0.5, 0.5).is_ok());
    }

    #[test]
    fn universal_belt_constants() {
        // Full sphere: K = 1, P = 1/3, Q = R = 1/6.
        let c = belt_constants(&BeltRegion::new(0.0, PI).unwrap());
        assert!((c.k_const - 1.0).abs() < 1e-15);
        assert!((c.p_const - 1.0 / 3.0).abs() < 1e-15);
        assert!((c.q_const - 1.0 / 6.0).abs() < 1e-15);
        assert!((c.r_const - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn equator_belt_constants() {
        // Phase-covariant circle: K = 0, P = 1/2, Q = R = 0.
        let c = belt_constants(&BeltRegion::new(PI / 2.0, PI / 2.0).unwrap());
        assert!(c.k_const.abs() < 1e-31);
        assert!((c.p_const - 0.5).abs() < 1e-15);
        assert!(c.q_const.abs() < 1e-16);
        assert!(c.r_const.abs() < 1e-16);
    }

    #[test]
    fn north_pole_belt_constants() {
        // theta1 = theta2 = 0: K = 3, P = 0, Q = 1, R = 0.
        let c = belt_constants(&BeltRegion::new(0.0, 0.0).unwrap());
        assert_eq!(c.k_const, 3.0);
        assert_eq!(c.p_const, 0.0);
        assert_eq!(c.q_const, 1.0);
        assert_eq!(c.r_const, 0.0);
    }

    #[test]
    fn case_classification() {
        let universal = BeltRegion::new(0.0, PI).unwrap();
        assert_eq!(classify_case(&universal, 3), CaseId::Case1);
        let south_heavy = BeltRegion::new(PI / 3.0, PI).unwrap();
        assert_eq!(classify_case(&south_heavy, 2), CaseId::Case4);
        let symmetric = BeltRegion::new(PI / 4.0, 3.0 * PI / 4.0).unwrap();
        assert_eq!(classify_case(&symmetric, 4), CaseId::Case3);
        assert_eq!(classify_case(&symmetric, 3), CaseId::Case1);
        let north_heavy = BeltRegion::new(0.1, PI / 2.0).unwrap();
        assert_eq!(classify_case(&north_heavy, 1), CaseId::Case1);
        assert_eq!(classify_case(&north_heavy, 2), CaseId::Case3);
    }

    proptest! {
        // K and P are swap-symmetric and the Q/R pair only sees c1 + c2, so a
        // swapped latitude pair must reproduce all four constants bitwise.
        #[test]
        fn constants_symmetric_under_swap(t1 in 0.0..PI, t2 in 0.0..PI) {
            let a = belt_constants_from_cosines(t1.cos(), t2.cos());
            let b = belt_constants_from_cosines(t2.cos(), t1.cos());
            prop_assert_eq!(a.k_const, b.k_const);
            prop_assert_eq!(a.p_const, b.p_const);
            prop_assert_eq!(a.q_const, b.q_const);
            prop_assert_eq!(a.r_const, b.r_const);
        }

        // Reflecting the belt through the equator negates both cosines:
        // K and P are fixed and Q <-> R swap, exactly.
        #[test]
        fn constants_swap_under_reflection(t1 in 0.0..PI, t2 in 0.0..PI) {
            let (c1, c2) = (t1.cos(), t2.cos());
            let a = belt_constants_from_cosines(c1, c2);
            let b = belt_constants_from_cosines(-c2, -c1);
            prop_assert_eq!(a.k_const, b.k_const);
            prop_assert_eq!(a.p_const, b.p_const);
            prop_assert_eq!(a.q_const, b.r_const);
            prop_assert_eq!(a.r_const, b.q_const);
        }

        #[test]
        fn constants_in_range(t1 in 0.0..PI, t2 in 0.0..PI) {
            let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
            let c = belt_constants(&BeltRegion::new(lo, hi).unwrap());
            prop_assert!((0.0..=3.0 + 1e-15).contains(&c.k_const));
            prop_assert!((0.0..=0.5 + 1e-15).contains(&c.p_const));
            // Q + R = K/3 and Q - R = (cos t1 + cos t2)/2.
            prop_assert!((c.q_const + c.r_const - c.k_const / 3.0).abs() < 1e-15);
            let s = lo.cos() + hi.cos();
            prop_assert!((c.q_const - c.r_const - s / 2.0).abs() < 1e-15);
        }

        #[test]
        fn classification_total(t1 in 0.0..PI, t2 in 0.0..PI, m in 1u32..12) {
            let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
            let region = BeltRegion::new(lo, hi).unwrap();
            let case = classify_case(&region, m);
            prop_assert_eq!(case.odd_m(), m % 2 == 1);
            prop_assert_eq!(case, classify_case(&region, m));
        }
    }

    #[test]
    fn angle_level_reflection_is_close() {
        // Through angles the reflection pi - theta is inexact in the last ulp;
        // the cosine-level property above is the exact statement.
        let region = BeltRegion::new(0.4, 2.0).unwrap();
        let reflected = BeltRegion::new(PI - 2.0, PI - 0.4).unwrap();
        let a = belt_constants(&region);
        let b = belt_constants(&reflected);
        assert!((a.k_const - b.k_const).abs() < 1e-14);
        assert!((a.q_const - b.r_const).abs() < 1e-14);
    }
}
