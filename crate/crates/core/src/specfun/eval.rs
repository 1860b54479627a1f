use serde::Serialize;

/// Ratio between the largest intermediate summand and |value| above which a
/// result carries `cancellation_warning`.
pub const CANCELLATION_THRESHOLD: f64 = 1e8;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct EvalFlags {
    pub converged: bool,
    pub cancellation_warning: bool,
    pub overflow_guarded: bool,
}

/// Uniform return contract for every special-function evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub flags: EvalFlags,
}

impl EvalResult {
    pub fn exact(value: f64) -> Self {
        Self::converged(value, value.abs() * f64::EPSILON * 0.5)
    }

    pub fn converged(value: f64, abs_error_estimate: f64) -> Self {
        Self {
            value,
            abs_error_estimate,
            flags: EvalFlags {
                converged: true,
                ..EvalFlags::default()
            },
        }
    }

    /// Relative error estimate; infinite when the value is zero but the error is not.
    pub fn rel_error(&self) -> f64 {
        if self.value == 0.0 {
            if self.abs_error_estimate == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            self.abs_error_estimate / self.value.abs()
        }
    }

    /// Sets `cancellation_warning` when `largest_term / |value|` exceeds the threshold.
    pub fn with_cancellation_check(mut self, largest_term: f64) -> Self {
        if largest_term > CANCELLATION_THRESHOLD * self.value.abs() {
            self.flags.cancellation_warning = true;
        }
        self
    }

    pub fn scale(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            abs_error_estimate: self.abs_error_estimate * factor.abs(),
            flags: self.flags,
        }
    }

    /// Combine flags of inputs into a derived result.
    pub(crate) fn merge_flags(&mut self, other: &EvalResult) {
        self.flags.converged &= other.flags.converged;
        self.flags.cancellation_warning |= other.flags.cancellation_warning;
        self.flags.overflow_guarded |= other.flags.overflow_guarded;
    }
}
