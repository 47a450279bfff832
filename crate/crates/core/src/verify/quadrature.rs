//! Tensor Gauss-Legendre quadrature over `{t in cone, |t| <= T}`.
//!
//! The cone of a product is `prod_k {t_k1 > ... > t_kr_k > 0}`. It splits into
//! fully ordered chambers `u_1 > ... > u_n > 0`, one per interleaving of the
//! factor blocks; on each chamber the density is smooth. A chamber is
//! parametrized by ratio coordinates
//!
//! ```text
//! u_1 = l,  u_{k+1} = u_k s_k,  l > 0,  s_k in (0, 1)
//! du  = l^(n-1) prod_{i=1}^{n-2} s_i^(n-1-i) dl ds
//! ```
//!
//! and the ball becomes `l <= T / sqrt(1 + s_1^2 + (s_1 s_2)^2 + ...)`, a
//! smooth upper limit, so composite Gauss-Legendre rules converge fast in
//! every variable.

use rayon::prelude::*;

use super::{LogSumExp, RadialModel, VerifyError};

pub const MAX_QUADRATURE_RANK: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    /// Width of the panels along `l`.
    pub radial_panel: f64,
    /// Panels per ratio coordinate on `(0, 1)`.
    pub angular_panels: usize,
    /// Gauss-Legendre points per panel.
    pub order: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions { radial_panel: 0.5, angular_panels: 16, order: 10 }
    }
}

/// Nodes and weights of the `order`-point Gauss-Legendre rule on `[-1, 1]`.
pub(crate) fn gauss_legendre(order: usize) -> Vec<(f64, f64)> {
    let n = order;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Tricomi's initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pn_1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pn_1) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out.reverse();
    out
}

/// Composite rule on `[lo, hi]` with `panels` equal panels, as `(x, ln w)`.
fn composite(rule: &[(f64, f64)], lo: f64, hi: f64, panels: usize) -> Vec<(f64, f64)> {
    let h = (hi - lo) / panels as f64;
    let mut out = Vec::with_capacity(panels * rule.len());
    for p in 0..panels {
        let mid = lo + (p as f64 + 0.5) * h;
        for &(x, w) in rule {
            out.push((mid + 0.5 * h * x, (0.5 * h * w).ln()));
        }
    }
    out
}

/// Distinct sequences of block labels with `sizes[k]` copies of label `k`.
fn interleavings(sizes: &[usize]) -> Vec<Vec<usize>> {
    fn go(remaining: &mut [usize], current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining.iter().all(|&r| r == 0) {
            out.push(current.clone());
            return;
        }
        for k in 0..remaining.len() {
            if remaining[k] > 0 {
                remaining[k] -= 1;
                current.push(k);
                go(remaining, current, out);
                current.pop();
                remaining[k] += 1;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut sizes.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// `ln V(T)` by quadrature.
pub(crate) fn log_volume(model: &RadialModel, radius: f64, opts: &QuadratureOptions) -> Result<f64, VerifyError> {
    let n = model.rank();
    if n > MAX_QUADRATURE_RANK {
        return Err(VerifyError::UnsupportedRank { rank: n, max: MAX_QUADRATURE_RANK });
    }
    let rule = gauss_legendre(opts.order);
    let angular = composite(&rule, 0.0, 1.0, opts.angular_panels);

    // Tensor grid over the n - 1 ratio coordinates.
    let mut grid: Vec<(Vec<f64>, f64)> = vec![(Vec::new(), 0.0)];
    for _ in 1..n {
        grid = grid
            .into_iter()
            .flat_map(|(s, lw)| {
                angular.iter().map(move |&(x, w)| {
                    let mut s = s.clone();
                    s.push(x);
                    (s, lw + w)
                })
            })
            .collect();
    }

    let sizes = model.block_sizes();
    let starts: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, &r| {
            let s = *acc;
            *acc += r;
            Some(s)
        })
        .collect();
    let chambers = interleavings(&sizes);

    let partials: Vec<LogSumExp> = grid
        .par_iter()
        .map(|(s, log_w)| {
            // u_k / l for the chamber point, and the angular Jacobian.
            let mut ratios = Vec::with_capacity(n);
            let mut prod = 1.0;
            ratios.push(1.0);
            for &si in s {
                prod *= si;
                ratios.push(prod);
            }
            let log_jac: f64 = s.iter().enumerate().map(|(i, si)| (n - 2 - i) as f64 * si.ln()).sum();
            let reach = radius / ratios.iter().map(|q| q * q).sum::<f64>().sqrt();
            let panels = (reach / opts.radial_panel).ceil().max(1.0) as usize;
            let radial = composite(&rule, 0.0, reach, panels);

            let mut acc = LogSumExp::new();
            let mut t = vec![0.0; n];
            for labels in &chambers {
                for &(l, log_wl) in &radial {
                    let mut next = starts.clone();
                    for (pos, &k) in labels.iter().enumerate() {
                        t[next[k]] = l * ratios[pos];
                        next[k] += 1;
                    }
                    let term = log_w + log_wl + log_jac + (n - 1) as f64 * l.ln() + model.log_density(&t);
                    acc.push(term);
                }
            }
            acc
        })
        .collect();

    let mut total = LogSumExp::new();
    for p in &partials {
        total.merge(p);
    }
    Ok(total.value())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        for order in [1, 2, 5, 10] {
            let rule = gauss_legendre(order);
            assert_eq!(rule.len(), order);
            assert!((rule.iter().map(|p| p.1).sum::<f64>() - 2.0).abs() < 1e-14);
            // exact through degree 2 order - 1
            let deg = 2 * order - 1;
            let got: f64 = rule.iter().map(|&(x, w)| w * x.powi(deg as i32 - 1)).sum();
            let exact = if (deg - 1) % 2 == 0 { 2.0 / deg as f64 } else { 0.0 };
            assert!((got - exact).abs() < 1e-13, "order {order}: {got} vs {exact}");
        }
        let five = gauss_legendre(5);
        assert!(five.windows(2).all(|w| w[0].0 < w[1].0));
    }

    #[test]
    fn interleaving_counts() {
        assert_eq!(interleavings(&[1]).len(), 1);
        assert_eq!(interleavings(&[3]).len(), 1);
        assert_eq!(interleavings(&[1, 1]).len(), 2);
        assert_eq!(interleavings(&[2, 1]).len(), 3);
        assert_eq!(interleavings(&[1, 1, 1]).len(), 6);
    }
}
