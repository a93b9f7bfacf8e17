//! Composite Gauss-Legendre quadrature for the spectral synthesis.
//!
//! A fixed 64-point base rule is tiled over equal panels; the total node
//! count is the only tuning knob, and doubling it doubles the panel count.

/// Order of the base rule per panel.
pub const PANEL_ORDER: usize = 64;

/// Gauss-Legendre nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Computes the rule of the given order by Newton iteration on P_n,
    /// seeded with the Chebyshev-like asymptotic guess.
    pub fn new(order: usize) -> Self {
        assert!(order >= 2, "quadrature order must be at least 2");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n {
            let mut x =
                (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            // The seed walks from +1 down to -1; store ascending.
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Node/weight pairs mapped onto [lo, hi].
    pub fn mapped(&self, lo: f64, hi: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let pk = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = pk;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// The composite rule: `panels` copies of the base rule over equal panels.
#[derive(Debug, Clone)]
pub struct CompositeGaussLegendre {
    base: GaussLegendre,
    panels: usize,
}

impl CompositeGaussLegendre {
    /// Builds the rule with at least `total_nodes` nodes (rounded up to a
    /// whole number of panels).
    pub fn with_total_nodes(total_nodes: usize) -> Self {
        let panels = total_nodes.div_ceil(PANEL_ORDER).max(1);
        Self {
            base: GaussLegendre::new(PANEL_ORDER),
            panels,
        }
    }

    pub fn total_nodes(&self) -> usize {
        self.panels * self.base.order()
    }

    /// All node/weight pairs over [lo, hi], panel by panel in ascending
    /// order. Summation order is therefore deterministic.
    pub fn node_weights(&self, lo: f64, hi: f64) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(self.total_nodes());
        let width = (hi - lo) / self.panels as f64;
        for p in 0..self.panels {
            let plo = lo + width * p as f64;
            let phi = lo + width * (p + 1) as f64;
            out.extend(self.base.mapped(plo, phi));
        }
        out
    }

    /// Integrates a real function over [lo, hi].
    pub fn integrate<F: Fn(f64) -> f64>(&self, lo: f64, hi: f64, f: F) -> f64 {
        self.node_weights(lo, hi)
            .iter()
            .map(|&(x, w)| w * f(x))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn base_rule_is_exact_for_polynomials() {
        let rule = GaussLegendre::new(8);
        // Degree 15 is the highest an 8-point rule integrates exactly.
        let integral: f64 = rule.mapped(-1.0, 1.0).map(|(x, w)| w * x.powi(14)).sum();
        assert_relative_eq!(integral, 2.0 / 15.0, max_relative = 1e-13);
        let odd: f64 = rule.mapped(-1.0, 1.0).map(|(x, w)| w * x.powi(15)).sum();
        assert!(odd.abs() < 1e-15);
    }

    #[test]
    fn weights_sum_to_interval_length() {
        let rule = CompositeGaussLegendre::with_total_nodes(4096);
        assert_eq!(rule.total_nodes(), 4096);
        let total: f64 = rule.node_weights(1.0, 2.0).iter().map(|&(_, w)| w).sum();
        assert_relative_eq!(total, 1.0, max_relative = 1e-13);
    }

    #[test]
    fn sine_over_half_period() {
        let rule = CompositeGaussLegendre::with_total_nodes(128);
        assert_relative_eq!(rule.integrate(0.0, PI, f64::sin), 2.0, max_relative = 1e-13);
    }

    #[test]
    fn oscillatory_integrand() {
        // int_0^1 cos(200 x) dx = sin(200)/200.
        let rule = CompositeGaussLegendre::with_total_nodes(1024);
        let exact = (200.0_f64).sin() / 200.0;
        assert_relative_eq!(
            rule.integrate(0.0, 1.0, |x| (200.0 * x).cos()),
            exact,
            max_relative = 1e-12
        );
    }

    #[test]
    fn gaussian_tail() {
        // int over [-8, 8] of exp(-x^2) = sqrt(pi) to machine precision.
        let rule = CompositeGaussLegendre::with_total_nodes(512);
        assert_relative_eq!(
            rule.integrate(-8.0, 8.0, |x| (-x * x).exp()),
            PI.sqrt(),
            max_relative = 1e-13
        );
    }

    #[test]
    fn node_count_rounds_up_to_whole_panels() {
        let rule = CompositeGaussLegendre::with_total_nodes(100);
        assert_eq!(rule.total_nodes(), 128);
    }
}
