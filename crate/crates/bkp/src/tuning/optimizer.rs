//! Box-constrained local search: projected quasi-Newton (BFGS with a dense
//! inverse-Hessian approximation, central finite-difference gradients) with
//! a bounded Nelder-Mead fallback when the line search stalls.
//!
//! The first line search scales its trial step to unit infinity-norm, and
//! the inverse Hessian is rescaled after the first accepted step, so the
//! iterate sequence is invariant under positive rescaling of the objective.

const ARMIJO_C1: f64 = 1e-4;
const PROJ_GRAD_TOL: f64 = 1e-10;
const MAX_BACKTRACKS: usize = 60;

#[derive(Debug, Clone)]
pub(crate) struct LocalOutcome {
    pub x: Vec<f64>,
    pub f: f64,
    pub iterations: usize,
    pub converged: bool,
}

fn clamp_vec(x: &[f64], lower: &[f64], upper: &[f64]) -> Vec<f64> {
    x.iter().zip(lower.iter().zip(upper)).map(|(&v, (&lo, &hi))| v.clamp(lo, hi)).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn inf_norm(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |acc, v| acc.max(v.abs()))
}

/// Central finite-difference gradient; `None` if any stencil value is
/// non-finite.
fn fd_gradient<F: Fn(&[f64]) -> f64>(f: &F, x: &[f64], step: f64) -> Option<Vec<f64>> {
    let d = x.len();
    let mut g = Vec::with_capacity(d);
    let mut probe = x.to_vec();
    for j in 0..d {
        probe[j] = x[j] + step;
        let fp = f(&probe);
        probe[j] = x[j] - step;
        let fm = f(&probe);
        probe[j] = x[j];
        if !fp.is_finite() || !fm.is_finite() {
            return None;
        }
        g.push((fp - fm) / (2.0 * step));
    }
    Some(g)
}

/// Infinity norm of the projected gradient x - P(x - g).
fn projected_gradient_norm(x: &[f64], g: &[f64], lower: &[f64], upper: &[f64]) -> f64 {
    let mut worst = 0.0f64;
    for j in 0..x.len() {
        let stepped = (x[j] - g[j]).clamp(lower[j], upper[j]);
        worst = worst.max((x[j] - stepped).abs());
    }
    worst
}

struct InverseHessian {
    d: usize,
    m: Vec<f64>,
}

impl InverseHessian {
    fn identity(d: usize) -> Self {
        let mut m = vec![0.0; d * d];
        for j in 0..d {
            m[j * d + j] = 1.0;
        }
        Self { d, m }
    }

    fn scaled_identity(d: usize, scale: f64) -> Self {
        let mut h = Self::identity(d);
        for v in &mut h.m {
            *v *= scale;
        }
        h
    }

    fn matvec(&self, v: &[f64]) -> Vec<f64> {
        self.m.chunks_exact(self.d).map(|row| dot(row, v)).collect()
    }

    /// BFGS inverse update H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T.
    fn update(&mut self, s: &[f64], y: &[f64], sy: f64) {
        let rho = 1.0 / sy;
        let hy = self.matvec(y);
        let y_h_y = dot(y, &hy);
        let coeff = rho * rho * y_h_y + rho;
        for i in 0..self.d {
            for j in 0..self.d {
                self.m[i * self.d + j] += coeff * s[i] * s[j] - rho * (s[i] * hy[j] + hy[i] * s[j]);
            }
        }
    }
}

/// Minimize `f` over the box `[lower, upper]` starting from `x0`.
pub(crate) fn bounded_quasi_newton<F: Fn(&[f64]) -> f64>(
    f: &F,
    x0: &[f64],
    lower: &[f64],
    upper: &[f64],
    max_iter: usize,
    rel_tol: f64,
    fd_step: f64,
) -> LocalOutcome {
    let d = x0.len();
    let mut x = clamp_vec(x0, lower, upper);
    let mut fx = f(&x);
    if !fx.is_finite() {
        return LocalOutcome { x, f: f64::INFINITY, iterations: 0, converged: false };
    }
    let Some(mut g) = fd_gradient(f, &x, fd_step) else {
        return fallback(f, x, fx, lower, upper, 0);
    };
    let mut h_inv = InverseHessian::identity(d);

    for iter in 0..max_iter {
        if projected_gradient_norm(&x, &g, lower, upper) <= PROJ_GRAD_TOL {
            return LocalOutcome { x, f: fx, iterations: iter, converged: true };
        }

        let mut dir: Vec<f64> = h_inv.matvec(&g).iter().map(|v| -v).collect();
        if !(dot(&g, &dir) < 0.0) {
            // Curvature information went bad; restart from steepest descent.
            h_inv = InverseHessian::identity(d);
            dir = g.iter().map(|v| -v).collect();
            if !(dot(&g, &dir) < 0.0) {
                return LocalOutcome { x, f: fx, iterations: iter, converged: true };
            }
        }

        let t0 = if iter == 0 { 1.0 / inf_norm(&dir) } else { 1.0 };
        let mut t = t0;
        let mut accepted: Option<(Vec<f64>, f64)> = None;
        for _ in 0..MAX_BACKTRACKS {
            let trial: Vec<f64> = (0..d).map(|j| x[j] + t * dir[j]).collect();
            let xt = clamp_vec(&trial, lower, upper);
            if xt == x {
                break;
            }
            let ft = f(&xt);
            if ft.is_finite() {
                let moved: f64 = (0..d).map(|j| g[j] * (xt[j] - x[j])).sum();
                if moved < 0.0 && ft <= fx + ARMIJO_C1 * moved {
                    accepted = Some((xt, ft));
                    break;
                }
            }
            t *= 0.5;
        }
        let Some((xt, ft)) = accepted else {
            return fallback(f, x, fx, lower, upper, iter);
        };
        let Some(g_new) = fd_gradient(f, &xt, fd_step) else {
            return fallback(f, xt, ft, lower, upper, iter + 1);
        };

        let s: Vec<f64> = (0..d).map(|j| xt[j] - x[j]).collect();
        let y: Vec<f64> = (0..d).map(|j| g_new[j] - g[j]).collect();
        let sy = dot(&s, &y);
        if iter == 0 && sy > 0.0 {
            let yy = dot(&y, &y);
            if yy > 0.0 {
                h_inv = InverseHessian::scaled_identity(d, sy / yy);
            }
        }
        if sy > 1e-10 * norm2(&s) * norm2(&y) {
            h_inv.update(&s, &y, sy);
        }

        let decrease = fx - ft;
        x = xt;
        fx = ft;
        g = g_new;
        if decrease <= rel_tol * (fx.abs() + rel_tol) {
            return LocalOutcome { x, f: fx, iterations: iter + 1, converged: true };
        }
    }
    LocalOutcome { x, f: fx, iterations: max_iter, converged: false }
}

/// Nelder-Mead rescue from a stalled line search; keeps whichever point is
/// better.
fn fallback<F: Fn(&[f64]) -> f64>(
    f: &F,
    x: Vec<f64>,
    fx: f64,
    lower: &[f64],
    upper: &[f64],
    iterations: usize,
) -> LocalOutcome {
    let nm = nelder_mead(f, &x, lower, upper, 400 * x.len().max(1), 1e-12);
    if nm.f < fx {
        LocalOutcome { iterations: iterations + nm.iterations, ..nm }
    } else {
        LocalOutcome { x, f: fx, iterations, converged: true }
    }
}

/// Bounded Nelder-Mead simplex search; every candidate vertex is clamped
/// into the box.
pub(crate) fn nelder_mead<F: Fn(&[f64]) -> f64>(
    f: &F,
    x0: &[f64],
    lower: &[f64],
    upper: &[f64],
    max_evals: usize,
    ftol: f64,
) -> LocalOutcome {
    let d = x0.len();
    let mut evals = 0usize;
    let eval = |p: &[f64], evals: &mut usize| -> f64 {
        *evals += 1;
        let v = f(p);
        if v.is_finite() {
            v
        } else {
            f64::INFINITY
        }
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(d + 1);
    let base = clamp_vec(x0, lower, upper);
    let fb = eval(&base, &mut evals);
    simplex.push((base.clone(), fb));
    for j in 0..d {
        let span = 0.1 * (upper[j] - lower[j]);
        let mut p = base.clone();
        p[j] = if p[j] + span <= upper[j] { p[j] + span } else { p[j] - span };
        let fp = eval(&p, &mut evals);
        simplex.push((p, fp));
    }

    let mut iterations = 0usize;
    while evals < max_evals {
        iterations += 1;
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
        let best = simplex[0].1;
        let worst = simplex[d].1;
        if (worst - best).abs() <= ftol * (best.abs() + ftol) {
            break;
        }

        let mut centroid = vec![0.0; d];
        for (p, _) in simplex.iter().take(d) {
            for j in 0..d {
                centroid[j] += p[j] / d as f64;
            }
        }
        let worst_point = simplex[d].0.clone();
        let clamped_combo = |scale: f64| -> Vec<f64> {
            let p: Vec<f64> =
                (0..d).map(|j| centroid[j] + scale * (centroid[j] - worst_point[j])).collect();
            clamp_vec(&p, lower, upper)
        };

        let reflected = clamped_combo(1.0);
        let fr = eval(&reflected, &mut evals);
        if fr < simplex[0].1 {
            let expanded = clamped_combo(2.0);
            let fe = eval(&expanded, &mut evals);
            simplex[d] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[d - 1].1 {
            simplex[d] = (reflected, fr);
        } else {
            let contracted = clamped_combo(-0.5);
            let fc = eval(&contracted, &mut evals);
            if fc < simplex[d].1 {
                simplex[d] = (contracted, fc);
            } else {
                // Shrink toward the best vertex.
                let anchor = simplex[0].0.clone();
                for (p, fp) in simplex.iter_mut().skip(1) {
                    for j in 0..d {
                        p[j] = anchor[j] + 0.5 * (p[j] - anchor[j]);
                    }
                    *fp = eval(p, &mut evals);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
    let (x, fx) = simplex.swap_remove(0);
    LocalOutcome { x, f: fx, iterations, converged: true }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_minimum_recovered() {
        let f = |x: &[f64]| (x[0] - 0.7).powi(2) + 2.0 * (x[1] + 0.3).powi(2);
        let out =
            bounded_quasi_newton(&f, &[-2.0, 3.0], &[-10.0, -10.0], &[10.0, 10.0], 200, 1e-8, 1e-4);
        assert!((out.x[0] - 0.7).abs() < 1e-6, "{:?}", out.x);
        assert!((out.x[1] + 0.3).abs() < 1e-6, "{:?}", out.x);
        assert!(out.converged);
    }

    #[test]
    fn minimum_outside_box_clamps_to_boundary() {
        let f = |x: &[f64]| (x[0] - 12.0).powi(2);
        let out = bounded_quasi_newton(&f, &[0.0], &[-10.0], &[10.0], 200, 1e-8, 1e-4);
        assert!((out.x[0] - 10.0).abs() < 1e-8, "{:?}", out.x);
    }

    #[test]
    fn objective_rescaling_reaches_the_same_minimum() {
        // Rescaling the objective should steer the search to the same
        // terminal point (first step and curvature scaling are scale-free).
        let raw = |x: &[f64]| {
            (x[0] - 0.31).powi(4) + (x[1] * x[1] - 0.5).powi(2) + (x[0] * x[1]).sin() * 0.1
        };
        let doubled = |x: &[f64]| 2.0 * raw(x);
        let a = bounded_quasi_newton(&raw, &[1.5, -1.2], &[-10.0; 2], &[10.0; 2], 200, 1e-8, 1e-4);
        let b =
            bounded_quasi_newton(&doubled, &[1.5, -1.2], &[-10.0; 2], &[10.0; 2], 200, 1e-8, 1e-4);
        assert!((a.x[0] - b.x[0]).abs() < 1e-6, "{:?} vs {:?}", a.x, b.x);
        assert!((a.x[1] - b.x[1]).abs() < 1e-6, "{:?} vs {:?}", a.x, b.x);
    }

    #[test]
    fn constant_loss_returns_immediately() {
        let f = |_: &[f64]| 3.25;
        let out = bounded_quasi_newton(&f, &[1.0], &[-10.0], &[10.0], 200, 1e-8, 1e-4);
        assert_eq!(out.f, 3.25);
        assert!(out.converged);
    }

    #[test]
    fn never_worse_than_start() {
        let f = |x: &[f64]| x[0].sin() * (3.0 * x[0]).cos() + 0.01 * x[0] * x[0];
        for start in [-9.0, -3.3, 0.4, 2.0, 8.8] {
            let out = bounded_quasi_newton(&f, &[start], &[-10.0], &[10.0], 200, 1e-8, 1e-4);
            assert!(out.f <= f(&[start]) + 1e-15, "worse than start {start}");
        }
    }

    #[test]
    fn nelder_mead_finds_quadratic_minimum() {
        let f = |x: &[f64]| (x[0] - 1.0).powi(2) + (x[1] - 2.0).powi(2);
        let out = nelder_mead(&f, &[5.0, -5.0], &[-10.0; 2], &[10.0; 2], 2000, 1e-14);
        assert!((out.x[0] - 1.0).abs() < 1e-4, "{:?}", out.x);
        assert!((out.x[1] - 2.0).abs() < 1e-4, "{:?}", out.x);
    }

    #[test]
    fn nelder_mead_respects_bounds() {
        let f = |x: &[f64]| (x[0] - 12.0).powi(2);
        let out = nelder_mead(&f, &[0.0], &[-10.0], &[10.0], 2000, 1e-14);
        assert!(out.x[0] <= 10.0);
        assert!((out.x[0] - 10.0).abs() < 1e-6);
    }
}
