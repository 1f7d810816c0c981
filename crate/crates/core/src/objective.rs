//! Spectral objective functionals and their admissibility gates.
//!
//! An objective applies a function F to the leading eigenvalues. Two
//! problem classes exist, picked by the sign of the boundary parameter:
//! positive beta minimizes F (which must be nondecreasing, strictly
//! sensitive to the first eigenvalue, and coercive on the positive ordered
//! cone), negative beta maximizes F (which must be nondecreasing and
//! diverge to minus infinity when any coordinate does). Only built-in
//! functional families are accepted, so compliance can be certified
//! numerically; `hypothesis_check` is that certificate.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::fem::SpectrumResult;

#[derive(Debug, Error)]
pub enum ObjectiveError {
    #[error("parameter out of range: {0}")]
    InvalidParameter(String),
    #[error("objective rejected: {reason}; witness point {witness:?}")]
    RejectedSpec { reason: String, witness: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "objective", rename_all = "snake_case")]
pub enum ObjectiveKind {
    FirstEigenvalue,
    SumFirstK { k: usize },
    WeightedSum { weights: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveSpec {
    #[serde(flatten)]
    pub kind: ObjectiveKind,
    pub beta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone)]
pub struct HypothesisReport {
    pub direction: Direction,
    pub arity: usize,
    /// Number of sample points the monotonicity sweep used.
    pub samples: usize,
    /// One line per verified property.
    pub verified: Vec<String>,
}

impl ObjectiveSpec {
    pub fn new(kind: ObjectiveKind, beta: f64) -> Self {
        ObjectiveSpec { kind, beta }
    }

    /// How many leading eigenvalues F consumes.
    pub fn arity(&self) -> usize {
        match &self.kind {
            ObjectiveKind::FirstEigenvalue => 1,
            ObjectiveKind::SumFirstK { k } => *k,
            ObjectiveKind::WeightedSum { weights } => weights.len(),
        }
    }

    pub fn direction(&self) -> Direction {
        if self.beta >= 0.0 {
            Direction::Minimize
        } else {
            Direction::Maximize
        }
    }

    /// F itself, on a plain coordinate tuple.
    pub fn apply(&self, xi: &[f64]) -> f64 {
        match &self.kind {
            ObjectiveKind::FirstEigenvalue => xi[0],
            ObjectiveKind::SumFirstK { k } => xi[..*k].iter().sum(),
            ObjectiveKind::WeightedSum { weights } => {
                weights.iter().zip(xi).map(|(w, x)| w * x).sum()
            }
        }
    }
}

/// Applies the objective to a computed spectrum.
pub fn evaluate(spec: &ObjectiveSpec, spectrum: &SpectrumResult) -> Result<f64, ObjectiveError> {
    let k = spec.arity();
    if k == 0 {
        return Err(ObjectiveError::InvalidParameter(
            "objective consumes zero eigenvalues".into(),
        ));
    }
    if spectrum.eigenvalues.len() < k {
        return Err(ObjectiveError::InvalidParameter(format!(
            "objective needs {} eigenvalues, spectrum has {}",
            k,
            spectrum.eigenvalues.len()
        )));
    }
    if spectrum.beta != spec.beta {
        return Err(ObjectiveError::InvalidParameter(format!(
            "spectrum was computed at beta = {}, objective wants {}",
            spectrum.beta, spec.beta
        )));
    }
    Ok(spec.apply(&spectrum.eigenvalues[..k]))
}

const MONO_SAMPLES: usize = 120;
const DIFF_STEP: f64 = 1e-3;
const FAR: f64 = 1e6;

/// Certifies the objective against its problem class by sampling.
///
/// Positive beta: nondecreasing in every coordinate, strictly increasing in
/// the first, and divergent to +inf along every direction of the ordered
/// nonnegative cone. Negative beta: nondecreasing, and divergent to -inf
/// when any single coordinate is sent to -inf. Violations come back as
/// errors carrying a witness point.
pub fn hypothesis_check(spec: &ObjectiveSpec) -> Result<HypothesisReport, ObjectiveError> {
    let k = spec.arity();
    if k == 0 {
        return Err(ObjectiveError::InvalidParameter(
            "objective consumes zero eigenvalues".into(),
        ));
    }
    if spec.beta == 0.0 || !spec.beta.is_finite() {
        return Err(ObjectiveError::InvalidParameter(format!(
            "problem class needs a signed finite beta, got {}",
            spec.beta
        )));
    }
    let mut verified = Vec::new();

    // sample points; sorted so they look like plausible spectra
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut points: Vec<Vec<f64>> = Vec::with_capacity(MONO_SAMPLES + 1);
    points.push(vec![0.0; k]);
    for _ in 0..MONO_SAMPLES {
        let mut p: Vec<f64> = (0..k).map(|_| rng.gen_range(-8.0..8.0)).collect();
        p.sort_by(f64::total_cmp);
        points.push(p);
    }

    // nondecreasing in every coordinate (both classes)
    for p in &points {
        let base = spec.apply(p);
        for j in 0..k {
            for step in [DIFF_STEP, 0.5] {
                let mut q = p.clone();
                q[j] += step;
                let up = spec.apply(&q);
                if up < base - 1e-9 * (1.0 + base.abs()) {
                    return Err(ObjectiveError::RejectedSpec {
                        reason: format!("decreasing in coordinate {}", j + 1),
                        witness: q,
                    });
                }
            }
        }
    }
    verified.push(format!("nondecreasing in all {} coordinates", k));

    if spec.beta > 0.0 {
        // strict first-coordinate sensitivity
        for p in &points {
            let base = spec.apply(p);
            let mut q = p.clone();
            q[0] += DIFF_STEP;
            if (spec.apply(&q) - base) / DIFF_STEP <= 1e-9 {
                return Err(ObjectiveError::RejectedSpec {
                    reason: "derivative in the first eigenvalue is not strictly positive".into(),
                    witness: p.clone(),
                });
            }
        }
        verified.push("strictly increasing in the first eigenvalue".into());

        // coercive over the ordered nonnegative cone: grows without bound
        // along every sampled escape direction, including those that leave
        // leading coordinates behind
        let mut dirs: Vec<Vec<f64>> = Vec::new();
        dirs.push(vec![1.0; k]);
        for lead_zero in 1..k {
            let mut d = vec![0.0; k];
            for v in d.iter_mut().skip(lead_zero) {
                *v = 1.0;
            }
            dirs.push(d);
        }
        for _ in 0..40 {
            let mut d: Vec<f64> = (0..k).map(|_| rng.gen_range(0.0..1.0)).collect();
            d.sort_by(f64::total_cmp);
            let n = d.iter().map(|v| v * v).sum::<f64>().sqrt();
            if n > 1e-9 {
                for v in d.iter_mut() {
                    *v /= n;
                }
                dirs.push(d);
            }
        }
        for d in &dirs {
            let far: Vec<f64> = d.iter().map(|v| v * FAR).collect();
            if spec.apply(&far) < 1e3 {
                return Err(ObjectiveError::RejectedSpec {
                    reason: "not coercive along an escape direction of the ordered cone".into(),
                    witness: far,
                });
            }
        }
        verified.push(format!("coercive along {} cone directions", dirs.len()));
    } else {
        // must sink to -inf when any single coordinate does
        for j in 0..k {
            let mut far = vec![0.0; k];
            far[j] = -FAR;
            if spec.apply(&far) > -1e3 {
                return Err(ObjectiveError::RejectedSpec {
                    reason: format!("bounded below as coordinate {} goes to -infinity", j + 1),
                    witness: far,
                });
            }
        }
        verified.push("diverges to -infinity in each coordinate".into());
    }

    Ok(HypothesisReport {
        direction: spec.direction(),
        arity: k,
        samples: points.len(),
        verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dummy_spectrum(beta: f64, vals: &[f64]) -> SpectrumResult {
        SpectrumResult {
            beta,
            eigenvalues: vals.to_vec(),
            eigenvectors: vec![],
            residuals: vec![],
            mesh_h: 0.1,
            levels: None,
        }
    }

    #[test]
    fn evaluate_built_ins() {
        let s = dummy_spectrum(1.0, &[3.41, 5.2, 7.9]);
        let first = ObjectiveSpec::new(ObjectiveKind::FirstEigenvalue, 1.0);
        assert_eq!(evaluate(&first, &s).unwrap(), 3.41);

        let sum2 = ObjectiveSpec::new(ObjectiveKind::SumFirstK { k: 2 }, 1.0);
        assert_eq!(
            evaluate(&sum2, &dummy_spectrum(1.0, &[1.0, 2.0])).unwrap(),
            3.0
        );

        let w = ObjectiveSpec::new(ObjectiveKind::WeightedSum { weights: vec![1.0, 0.0] }, 1.0);
        assert_eq!(evaluate(&w, &s).unwrap(), evaluate(&first, &s).unwrap());
    }

    #[test]
    fn evaluate_rejects_mismatches() {
        let spec = ObjectiveSpec::new(ObjectiveKind::SumFirstK { k: 3 }, 1.0);
        let short = dummy_spectrum(1.0, &[1.0, 2.0]);
        assert!(matches!(
            evaluate(&spec, &short),
            Err(ObjectiveError::InvalidParameter(_))
        ));
        let wrong_beta = dummy_spectrum(2.0, &[1.0, 2.0, 3.0]);
        assert!(matches!(
            evaluate(&spec, &wrong_beta),
            Err(ObjectiveError::InvalidParameter(_))
        ));
    }

    #[test]
    fn evaluate_is_monotone_for_valid_specs() {
        let specs = [
            ObjectiveSpec::new(ObjectiveKind::SumFirstK { k: 3 }, 1.0),
            ObjectiveSpec::new(
                ObjectiveKind::WeightedSum { weights: vec![2.0, 1.0, 0.5] },
                1.0,
            ),
        ];
        let base = [1.0, 2.0, 3.0];
        for spec in &specs {
            let f0 = evaluate(spec, &dummy_spectrum(1.0, &base)).unwrap();
            for j in 0..3 {
                let mut up = base;
                up[j] += 0.7;
                let f1 = evaluate(spec, &dummy_spectrum(1.0, &up)).unwrap();
                assert!(f1 >= f0);
            }
        }
    }

    #[test]
    fn hypothesis_accepts_the_built_in_classes() {
        let r = hypothesis_check(&ObjectiveSpec::new(ObjectiveKind::FirstEigenvalue, 1.0)).unwrap();
        assert_eq!(r.direction, Direction::Minimize);

        let r = hypothesis_check(&ObjectiveSpec::new(ObjectiveKind::SumFirstK { k: 3 }, 1.0)).unwrap();
        assert_eq!(r.arity, 3);

        let r = hypothesis_check(&ObjectiveSpec::new(ObjectiveKind::SumFirstK { k: 4 }, -1.0)).unwrap();
        assert_eq!(r.direction, Direction::Maximize);

        hypothesis_check(&ObjectiveSpec::new(ObjectiveKind::FirstEigenvalue, -0.5)).unwrap();
    }

    #[test]
    fn hypothesis_rejects_first_coordinate_blindness() {
        // weight vector (0, 1): flat in the first eigenvalue
        let spec = ObjectiveSpec::new(ObjectiveKind::WeightedSum { weights: vec![0.0, 1.0] }, 1.0);
        match hypothesis_check(&spec) {
            Err(ObjectiveError::RejectedSpec { reason, witness }) => {
                assert!(reason.contains("first eigenvalue"), "{}", reason);
                assert_eq!(witness.len(), 2);
            }
            other => panic!("expected rejection, got {:?}", other.map(|r| r.verified)),
        }
    }

    #[test]
    fn hypothesis_rejects_tail_blind_negative_class() {
        // weight vector (1, 0): stays bounded when only the second
        // eigenvalue dives
        let spec = ObjectiveSpec::new(ObjectiveKind::WeightedSum { weights: vec![1.0, 0.0] }, -1.0);
        match hypothesis_check(&spec) {
            Err(ObjectiveError::RejectedSpec { reason, witness }) => {
                assert!(reason.contains("coordinate 2"), "{}", reason);
                assert_eq!(witness, vec![0.0, -1e6]);
            }
            other => panic!("expected rejection, got {:?}", other.map(|r| r.verified)),
        }
    }

    #[test]
    fn hypothesis_rejects_non_coercive_positive_class() {
        let spec = ObjectiveSpec::new(ObjectiveKind::WeightedSum { weights: vec![1.0, 0.0] }, 1.0);
        match hypothesis_check(&spec) {
            Err(ObjectiveError::RejectedSpec { reason, .. }) => {
                assert!(reason.contains("coercive"), "{}", reason);
            }
            other => panic!("expected rejection, got {:?}", other.map(|r| r.verified)),
        }
    }

    #[test]
    fn hypothesis_rejects_negative_weights_and_zero_beta() {
        let spec =
            ObjectiveSpec::new(ObjectiveKind::WeightedSum { weights: vec![1.0, -0.5] }, 1.0);
        assert!(matches!(
            hypothesis_check(&spec),
            Err(ObjectiveError::RejectedSpec { .. })
        ));
        let zero = ObjectiveSpec::new(ObjectiveKind::FirstEigenvalue, 0.0);
        assert!(matches!(
            hypothesis_check(&zero),
            Err(ObjectiveError::InvalidParameter(_))
        ));
    }

    #[test]
    fn config_json_shape_is_stable() {
        let spec = ObjectiveSpec::new(ObjectiveKind::SumFirstK { k: 3 }, -1.0);
        let js = serde_json::to_value(&spec).unwrap();
        assert_eq!(
            js,
            serde_json::json!({"objective": "sum_first_k", "k": 3, "beta": -1.0})
        );
        let back: ObjectiveSpec =
            serde_json::from_value(serde_json::json!({"objective": "first_eigenvalue", "beta": 2.0}))
                .unwrap();
        assert_eq!(back.kind, ObjectiveKind::FirstEigenvalue);
        assert_eq!(back.beta, 2.0);
    }
}
