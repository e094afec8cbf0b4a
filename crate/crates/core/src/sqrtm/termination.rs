#[allow(unused_imports)]
use num_traits::Float;

/// Outcome of [`termination_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Continue,
    /// The main criterion holds; accept `Y~_k`, `Z~_k`.
    Accept,
    /// The relative change is small but no longer decreasing.
    Stagnate,
}

/// Primary stopping test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MainTest {
    /// `||Z~_{k-1} Y~_{k-1} - I|| <= 8 (delta/4)^{1/N}`.
    Product { residual: f64 },
    /// `||Y~_k - Y~_{k-1}|| <= (delta ||Y~_k|| / (||A^{-1}|| ||Z~_{k-1}^{-1}||))^{1/N}`.
    Increment { a_inv_norm: f64, z_inv_norm: f64 },
}

/// Norms of step `k` needed by [`termination_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TerminationInputs {
    /// `||Y~_k - Y~_{k-1}||`.
    pub change: f64,
    /// `||Y~_k||`.
    pub y_norm: f64,
    /// `||Y~_{k-1} - Y~_{k-2}|| / ||Y~_{k-1}||`; `None` before `k = 2`.
    pub prev_rel_change: Option<f64>,
    pub test: MainTest,
}

impl TerminationInputs {
    pub fn rel_change(&self) -> f64 {
        if self.y_norm == 0.0 {
            f64::INFINITY
        } else {
            self.change / self.y_norm
        }
    }
}

/// Decides whether to stop after step `k` of an iteration of order `order`.
pub fn termination_check(inp: &TerminationInputs, order: u32, delta: f64) -> Decision {
    let root = 1.0 / f64::from(order);
    let accept = match inp.test {
        MainTest::Product { residual } => residual <= 8.0 * (delta / 4.0).powf(root),
        MainTest::Increment { a_inv_norm, z_inv_norm } => {
            inp.change <= (delta * inp.y_norm / (a_inv_norm * z_inv_norm)).powf(root)
        }
    };
    if accept {
        return Decision::Accept;
    }
    let rel = inp.rel_change();
    match inp.prev_rel_change {
        Some(prev) if 0.5 * prev <= rel && rel <= 1e-2 => Decision::Stagnate,
        _ => Decision::Continue,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DELTA: f64 = 1e-15;

    fn increment(change: f64, prev: Option<f64>) -> TerminationInputs {
        TerminationInputs {
            change,
            y_norm: 1.0,
            prev_rel_change: prev,
            test: MainTest::Increment { a_inv_norm: 1.0, z_inv_norm: 1.0 },
        }
    }

    #[test]
    fn fixed_point_accepted() {
        assert_eq!(termination_check(&increment(0.0, None), 9, DELTA), Decision::Accept);
        let product = TerminationInputs { test: MainTest::Product { residual: 0.0 }, ..increment(0.0, None) };
        assert_eq!(termination_check(&product, 9, DELTA), Decision::Accept);
    }

    #[test]
    fn early_large_changes_continue() {
        assert_eq!(termination_check(&increment(0.8, None), 9, DELTA), Decision::Continue);
        assert_eq!(termination_check(&increment(0.3, Some(0.8)), 9, DELTA), Decision::Continue);
    }

    #[test]
    fn stalled_sequence_stagnates() {
        assert_eq!(termination_check(&increment(9e-4, Some(1e-3)), 2, DELTA), Decision::Stagnate);
        // decreasing fast enough: keep going
        assert_eq!(termination_check(&increment(1e-4, Some(1e-3)), 2, DELTA), Decision::Continue);
        // stagnation is inactive without a previous change
        assert_eq!(termination_check(&increment(9e-4, None), 2, DELTA), Decision::Continue);
    }

    #[test]
    fn thresholds() {
        // order 9: 8 (delta/4)^{1/9}
        let bound = 8.0 * (DELTA / 4.0).powf(1.0 / 9.0);
        let at = |r: f64| TerminationInputs { test: MainTest::Product { residual: r }, ..increment(1.0, None) };
        assert_eq!(termination_check(&at(0.99 * bound), 9, DELTA), Decision::Accept);
        assert_eq!(termination_check(&at(1.01 * bound), 9, DELTA), Decision::Continue);
        // order 2 increment test scales with ||A^{-1}||
        let inp = TerminationInputs {
            test: MainTest::Increment { a_inv_norm: 1e4, z_inv_norm: 1.0 },
            ..increment(2e-9, None)
        };
        assert_eq!(termination_check(&inp, 2, DELTA), Decision::Continue);
        assert_eq!(termination_check(&increment(2e-9, None), 2, DELTA), Decision::Accept);
    }
}
