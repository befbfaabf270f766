//! Projected gradient descent on the probability simplex.

/// Euclidean projection onto {x : x >= 0, sum x = 1} (sort-based, Duchi et al.).
pub fn project_onto_simplex(v: &[f64]) -> Vec<f64> {
    let mut u = v.to_vec();
    u.sort_by(|a, b| b.partial_cmp(a).expect("finite input"));
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (i, &ui) in u.iter().enumerate() {
        cumsum += ui;
        let t = (cumsum - 1.0) / (i + 1) as f64;
        if ui - t > 0.0 {
            theta = t;
        }
    }
    v.iter().map(|&x| (x - theta).max(0.0)).collect()
}

#[derive(Clone, Copy, Debug)]
pub struct PgdOptions {
    pub max_iter: usize,
    pub initial_step: f64,
    /// Stop once an iteration improves the objective by less than this.
    pub tol: f64,
}

impl Default for PgdOptions {
    fn default() -> Self {
        PgdOptions { max_iter: 2000, initial_step: 0.1, tol: 1e-14 }
    }
}

/// Minimize `f` over the simplex from `x0`, with backtracking on the step
/// size. `grad` may return a subgradient. Returns the best point visited.
pub fn projected_gradient_descent<F, G>(f: F, grad: G, x0: &[f64], opts: PgdOptions) -> (Vec<f64>, f64)
where
    F: Fn(&[f64]) -> f64,
    G: Fn(&[f64]) -> Vec<f64>,
{
    let mut x = project_onto_simplex(x0);
    let mut fx = f(&x);
    let mut step = opts.initial_step;
    for _ in 0..opts.max_iter {
        let g = grad(&x);
        if g.iter().any(|v| !v.is_finite()) {
            break;
        }
        let mut improved = false;
        let mut s = step;
        for _ in 0..60 {
            let cand: Vec<f64> = x.iter().zip(&g).map(|(&xi, &gi)| xi - s * gi).collect();
            let y = project_onto_simplex(&cand);
            let fy = f(&y);
            if fy < fx {
                let gain = fx - fy;
                x = y;
                fx = fy;
                improved = true;
                step = s * 2.0;
                if gain < opts.tol {
                    return (x, fx);
                }
                break;
            }
            s *= 0.5;
        }
        if !improved {
            break;
        }
    }
    (x, fx)
}
