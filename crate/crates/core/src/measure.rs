//! Signed measures on a finite metric space: dense mass vectors with Jordan
//! decomposition, total variation and balance checks.

use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;

/// A signed measure as one real mass per point of its space.
///
/// The vector is indexed exactly by the space's points; constructors check
/// the length and operations taking a space re-check it.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedMeasure {
    mass: Vec<f64>,
}

impl SignedMeasure {
    pub fn new(space: &FiniteMetricSpace, mass: Vec<f64>) -> Result<Self> {
        if mass.len() != space.len() {
            return Err(Error::SpaceMismatch {
                got: mass.len(),
                expected: space.len(),
            });
        }
        if let Some(i) = mass.iter().position(|m| !m.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "mass at point {i} is {}; masses must be finite",
                mass[i]
            )));
        }
        Ok(Self { mass })
    }

    pub fn zero(space: &FiniteMetricSpace) -> Self {
        Self {
            mass: vec![0.0; space.len()],
        }
    }

    /// The Dirac measure `delta_x`.
    pub fn dirac(space: &FiniteMetricSpace, x: usize) -> Self {
        let mut mass = vec![0.0; space.len()];
        mass[x] = 1.0;
        Self { mass }
    }

    /// The dipole `delta_x - delta_y`.
    pub fn dirac_difference(space: &FiniteMetricSpace, x: usize, y: usize) -> Self {
        let mut mass = vec![0.0; space.len()];
        mass[x] += 1.0;
        mass[y] -= 1.0;
        Self { mass }
    }

    pub fn len(&self) -> usize {
        self.mass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mass.is_empty()
    }

    #[inline]
    pub fn mass(&self, i: usize) -> f64 {
        self.mass[i]
    }

    pub fn masses(&self) -> &[f64] {
        &self.mass
    }

    /// Total mass `nu(K)`.
    pub fn total(&self) -> f64 {
        self.mass.iter().sum()
    }

    /// Total variation `|nu|(K)`.
    pub fn tv(&self) -> f64 {
        self.mass.iter().map(|m| m.abs()).sum()
    }

    /// True iff `|nu(K)| <= tol`.
    pub fn is_balanced(&self, tol: f64) -> bool {
        self.total().abs() <= tol
    }

    /// Exact sign split `nu = plus - minus` with `plus`, `minus >= 0` and
    /// disjoint supports. No tolerance: the split is on stored values.
    pub fn jordan_decompose(&self) -> (SignedMeasure, SignedMeasure) {
        let plus = self
            .mass
            .iter()
            .map(|&m| if m > 0.0 { m } else { 0.0 })
            .collect();
        let minus = self
            .mass
            .iter()
            .map(|&m| if m < 0.0 { -m } else { 0.0 })
            .collect();
        (SignedMeasure { mass: plus }, SignedMeasure { mass: minus })
    }

    /// Zeroes every mass with `|m| < eps`.
    ///
    /// The dropped mass bounds the KR distance between input and output by
    /// `(sum of dropped |m|) * max(1, diam)`.
    pub fn finite_support_truncate(&self, eps: f64) -> SignedMeasure {
        let mass = self
            .mass
            .iter()
            .map(|&m| if m.abs() < eps { 0.0 } else { m })
            .collect();
        SignedMeasure { mass }
    }

    /// Support indices (nonzero masses) in ascending order.
    pub fn support(&self) -> Vec<usize> {
        (0..self.mass.len())
            .filter(|&i| self.mass[i] != 0.0)
            .collect()
    }

    pub fn scaled(&self, factor: f64) -> SignedMeasure {
        SignedMeasure {
            mass: self.mass.iter().map(|m| m * factor).collect(),
        }
    }

    pub fn add(&self, other: &SignedMeasure) -> Result<SignedMeasure> {
        if self.mass.len() != other.mass.len() {
            return Err(Error::SpaceMismatch {
                got: other.mass.len(),
                expected: self.mass.len(),
            });
        }
        Ok(SignedMeasure {
            mass: self
                .mass
                .iter()
                .zip(&other.mass)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &SignedMeasure) -> Result<SignedMeasure> {
        self.add(&other.scaled(-1.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::FiniteMetricSpace;
    use proptest::prelude::*;

    fn two_points() -> FiniteMetricSpace {
        FiniteMetricSpace::new(
            vec!["a".into(), "b".into()],
            vec![vec![0.0, 1.0], vec![1.0, 0.0]],
        )
        .unwrap()
    }

    fn three_points() -> FiniteMetricSpace {
        FiniteMetricSpace::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![0.0, 1.0, 2.0],
                vec![1.0, 0.0, 1.0],
                vec![2.0, 1.0, 0.0],
            ],
        )
        .unwrap()
    }

    #[test]
    fn jordan_sign_split() {
        let s = two_points();
        let nu = SignedMeasure::new(&s, vec![3.0, -2.0]).unwrap();
        let (plus, minus) = nu.jordan_decompose();
        assert_eq!(plus.masses(), &[3.0, 0.0]);
        assert_eq!(minus.masses(), &[0.0, 2.0]);
        assert_eq!(nu.tv(), plus.total() + minus.total());
    }

    #[test]
    fn jordan_of_zero() {
        let s = two_points();
        let (plus, minus) = SignedMeasure::zero(&s).jordan_decompose();
        assert_eq!(plus.masses(), &[0.0, 0.0]);
        assert_eq!(minus.masses(), &[0.0, 0.0]);
    }

    #[test]
    fn tv_hand_sum() {
        let s = three_points();
        let nu = SignedMeasure::new(&s, vec![1.0, -1.0, 0.5]).unwrap();
        assert_eq!(nu.tv(), 2.5);
        let (plus, minus) = nu.jordan_decompose();
        assert_eq!(plus.total(), 1.5);
        assert_eq!(minus.total(), 1.0);
    }

    #[test]
    fn balance_checks() {
        let s = three_points();
        assert!(SignedMeasure::dirac_difference(&s, 0, 1).is_balanced(0.0));
        assert!(!SignedMeasure::dirac(&s, 0).is_balanced(1e-9));
        let nu = SignedMeasure::new(&s, vec![0.3, 0.2, -0.5]).unwrap();
        assert!(nu.is_balanced(1e-12));
    }

    #[test]
    fn dirac_difference_tv_is_two() {
        let s = three_points();
        assert_eq!(SignedMeasure::dirac_difference(&s, 0, 2).tv(), 2.0);
    }

    #[test]
    fn truncate_examples() {
        let s = two_points();
        let nu = SignedMeasure::new(&s, vec![1.0, 1e-15]).unwrap();
        assert_eq!(nu.finite_support_truncate(0.0).masses(), nu.masses());
        assert_eq!(nu.finite_support_truncate(1e-12).masses(), &[1.0, 0.0]);
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let s = two_points();
        assert!(matches!(
            SignedMeasure::new(&s, vec![1.0]),
            Err(Error::SpaceMismatch { .. })
        ));
    }

    #[test]
    fn non_finite_masses_are_rejected() {
        let s = two_points();
        assert!(SignedMeasure::new(&s, vec![1.0, f64::NAN]).is_err());
        assert!(SignedMeasure::new(&s, vec![f64::INFINITY, 0.0]).is_err());
    }

    proptest! {
        #[test]
        fn jordan_recomposes_exactly(mass in proptest::collection::vec(-1e3f64..1e3, 1..12)) {
            let nu = SignedMeasure { mass: mass.clone() };
            let (plus, minus) = nu.jordan_decompose();
            for i in 0..mass.len() {
                prop_assert!(plus.mass(i) >= 0.0 && minus.mass(i) >= 0.0);
                prop_assert_eq!(plus.mass(i) * minus.mass(i), 0.0);
                prop_assert_eq!(plus.mass(i) - minus.mass(i), mass[i]);
            }
            // summation order differs, so only up to rounding
            let split_tv = plus.total() + minus.total();
            prop_assert!((nu.tv() - split_tv).abs() <= 1e-12 * (1.0 + nu.tv()));
        }

        #[test]
        fn tv_is_a_norm(
            a in proptest::collection::vec(-10f64..10.0, 6),
            b in proptest::collection::vec(-10f64..10.0, 6),
            lambda in -5f64..5.0,
        ) {
            let ma = SignedMeasure { mass: a.clone() };
            let mb = SignedMeasure { mass: b.clone() };
            let sum = ma.add(&mb).unwrap();
            prop_assert!(sum.tv() <= ma.tv() + mb.tv() + 1e-12);
            let scaled = ma.scaled(lambda);
            prop_assert!((scaled.tv() - lambda.abs() * ma.tv()).abs() <= 1e-12 * (1.0 + ma.tv()));
            prop_assert!(ma.tv() >= ma.total().abs() - 1e-12);
        }
    }
}
