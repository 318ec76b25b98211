//! Continuation of principal-value phase series across branch cuts.

use std::f64::consts::TAU;

use crate::error::CliError;

/// Lifts a principal-value phase series to a continuous one by adding
/// the 2π multiple that brings each value closest to its defined
/// predecessor.
///
/// The input pairs a strictly increasing time with an optional phase;
/// `None` marks points where the phase is ill-defined. Gaps are passed
/// through unchanged and the running reference survives them, so a
/// curve resumes on the branch it left. The first defined value is
/// returned as-is.
pub fn unwrap_phase(series: &[(f64, Option<f64>)]) -> Result<Vec<Option<f64>>, CliError> {
    for (i, window) in series.windows(2).enumerate() {
        if window[1].0 <= window[0].0 {
            return Err(CliError::NonMonotonicTimeGrid {
                index: i + 1,
                t: window[1].0,
            });
        }
    }

    let mut reference: Option<f64> = None;
    let mut out = Vec::with_capacity(series.len());
    for &(_, gamma) in series {
        match (gamma, reference) {
            (None, _) => out.push(None),
            (Some(g), None) => {
                reference = Some(g);
                out.push(Some(g));
            }
            (Some(g), Some(prev)) => {
                let lifted = g + TAU * ((prev - g) / TAU).round();
                reference = Some(lifted);
                out.push(Some(lifted));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn defined(series: &[(f64, Option<f64>)]) -> Vec<Option<f64>> {
        unwrap_phase(series).unwrap()
    }

    #[test]
    fn constant_series_is_unchanged() {
        let series: Vec<_> = (0..5).map(|i| (i as f64, Some(1.2))).collect();
        assert_eq!(defined(&series), vec![Some(1.2); 5]);
    }

    #[test]
    fn single_jump_is_lifted_by_one_turn() {
        let out = defined(&[(0.0, Some(3.0)), (1.0, Some(-3.0))]);
        assert_eq!(out[0], Some(3.0));
        let lifted = out[1].unwrap();
        assert!((lifted - (TAU - 3.0)).abs() < 1e-15, "{lifted}");
    }

    #[test]
    fn consecutive_defined_values_end_up_within_half_a_turn() {
        let series: Vec<_> = (0..100)
            .map(|i| {
                let t = i as f64 * 0.1;
                let raw = 0.7 * t;
                let principal = (raw + PI).rem_euclid(TAU) - PI;
                (t, Some(principal))
            })
            .collect();
        let out = defined(&series);
        for pair in out.windows(2) {
            let step = pair[1].unwrap() - pair[0].unwrap();
            assert!(step.abs() < PI);
        }
        let last = out.last().unwrap().unwrap();
        assert!((last - 0.7 * 9.9).abs() < 1e-12, "{last}");
    }

    #[test]
    fn gaps_pass_through_and_preserve_the_branch() {
        let out = defined(&[
            (0.0, Some(3.0)),
            (1.0, None),
            (2.0, Some(-3.0)),
            (3.0, None),
        ]);
        assert_eq!(out[1], None);
        assert_eq!(out[3], None);
        assert!((out[2].unwrap() - (TAU - 3.0)).abs() < 1e-15);
    }

    #[test]
    fn non_monotonic_time_is_rejected() {
        let err = unwrap_phase(&[(0.0, Some(1.0)), (0.0, Some(1.0))]).unwrap_err();
        assert!(matches!(err, CliError::NonMonotonicTimeGrid { index: 1, .. }));
        let err = unwrap_phase(&[(0.0, None), (-1.0, None)]).unwrap_err();
        assert!(matches!(err, CliError::NonMonotonicTimeGrid { index: 1, .. }));
    }

    #[test]
    fn empty_and_all_gap_series_are_fine() {
        assert_eq!(defined(&[]), Vec::<Option<f64>>::new());
        assert_eq!(defined(&[(0.0, None), (1.0, None)]), vec![None, None]);
    }
}
