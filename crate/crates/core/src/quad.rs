//! Quadrature primitives: Gauss–Legendre panels and trapezoid rules.
//!
//! The oscillatory radial transforms integrate `f(k)·sin(kr)` with phases up
//! to `k_max·r_max`. Composite Gauss–Legendre panels sized to the oscillation
//! period keep the rule accurate without per-target adaptivity; an optional
//! geometric grading of the first panel absorbs the `k^γ`-type endpoint
//! non-smoothness of attenuated spectra at k = 0.

/// Gauss–Legendre nodes and weights on the reference interval [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Compute an `n`-point rule by Newton iteration on the Legendre
    /// polynomial, symmetric pairs resolved from Chebyshev initial guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Evaluate (P_n(x), P_n'(x)) by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// A composite quadrature rule: flattened nodes and weights over [a, b].
#[derive(Debug, Clone)]
pub struct PanelRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl PanelRule {
    /// Composite Gauss–Legendre rule with `panels` equal panels of
    /// `points_per_panel` nodes each.
    pub fn composite(a: f64, b: f64, panels: usize, points_per_panel: usize) -> Self {
        let edges: Vec<f64> = (0..=panels)
            .map(|i| a + (b - a) * i as f64 / panels as f64)
            .collect();
        Self::from_edges(&edges, points_per_panel)
    }

    /// Composite rule whose first panel is split geometrically toward `a`
    /// (`grade_levels` halvings), then equal panels to `b`.
    pub fn graded_composite(
        a: f64,
        b: f64,
        panels: usize,
        points_per_panel: usize,
        grade_levels: usize,
    ) -> Self {
        let width = (b - a) / panels as f64;
        let mut edges = Vec::with_capacity(panels + grade_levels + 1);
        edges.push(a);
        // geometric subdivision of [a, a + width]
        for lvl in (0..grade_levels).rev() {
            edges.push(a + width / (1u64 << (lvl + 1)) as f64);
        }
        for i in 1..=panels {
            edges.push(a + width * i as f64);
        }
        Self::from_edges(&edges, points_per_panel)
    }

    fn from_edges(edges: &[f64], points_per_panel: usize) -> Self {
        let gl = GaussLegendre::new(points_per_panel);
        let mut nodes = Vec::with_capacity((edges.len() - 1) * points_per_panel);
        let mut weights = Vec::with_capacity(nodes.capacity());
        for w in edges.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let half = 0.5 * (hi - lo);
            let mid = 0.5 * (hi + lo);
            for (x, wt) in gl.nodes().iter().zip(gl.weights()) {
                nodes.push(mid + half * x);
                weights.push(half * wt);
            }
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Weighted sum of samples taken at the rule's nodes.
    pub fn integrate_samples(&self, samples: &[f64]) -> f64 {
        debug_assert_eq!(samples.len(), self.nodes.len());
        self.weights
            .iter()
            .zip(samples)
            .map(|(w, s)| w * s)
            .sum()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(*x))
            .sum()
    }
}

/// Trapezoid rule on an arbitrary increasing grid.
pub fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    x.windows(2)
        .zip(y.windows(2))
        .map(|(xs, ys)| 0.5 * (xs[1] - xs[0]) * (ys[0] + ys[1]))
        .sum()
}

/// Trapezoid rule restricted to x >= x0, splitting the straddling cell
/// linearly at x0. Returns 0 when x0 lies beyond the grid.
pub fn trapezoid_beyond(x: &[f64], y: &[f64], x0: f64) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    let mut total = 0.0;
    for (xs, ys) in x.windows(2).zip(y.windows(2)) {
        let (xa, xb) = (xs[0], xs[1]);
        if xb <= x0 {
            continue;
        }
        if xa >= x0 {
            total += 0.5 * (xb - xa) * (ys[0] + ys[1]);
        } else {
            // linear value at the split point
            let s = (x0 - xa) / (xb - xa);
            let y0 = ys[0] + s * (ys[1] - ys[0]);
            total += 0.5 * (xb - x0) * (y0 + ys[1]);
        }
    }
    total
}
