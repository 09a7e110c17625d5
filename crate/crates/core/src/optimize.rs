//! Derivative-free local minimization (Nelder-Mead) and deterministic seeding.

/// Result of a local minimization.
#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMead {
    pub initial_step: f64,
    pub ftol: f64,
    pub xtol: f64,
    pub max_evaluations: usize,
    /// Restarts from the best vertex with a fresh simplex; guards against collapse.
    pub restarts: usize,
}

impl Default for NelderMead {
    fn default() -> Self {
        Self {
            initial_step: 0.3,
            ftol: 1e-13,
            xtol: 1e-10,
            max_evaluations: 20_000,
            restarts: 2,
        }
    }
}

impl NelderMead {
    pub fn minimize(&self, f: impl Fn(&[f64]) -> f64, x0: &[f64]) -> Minimum {
        let mut best = Minimum {
            x: x0.to_vec(),
            value: f(x0),
            evaluations: 1,
        };
        let mut step = self.initial_step;
        for _ in 0..=self.restarts {
            let run = self.run(&f, &best.x, step);
            let evaluations = best.evaluations + run.evaluations;
            let improved = run.value < best.value - self.ftol;
            if run.value <= best.value {
                best = Minimum { evaluations, ..run };
            } else {
                best.evaluations = evaluations;
            }
            if !improved {
                break;
            }
            step *= 0.5;
        }
        best
    }

    fn run(&self, f: &impl Fn(&[f64]) -> f64, x0: &[f64], step: f64) -> Minimum {
        let n = x0.len();
        let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
        simplex.push(x0.to_vec());
        for i in 0..n {
            let mut v = x0.to_vec();
            v[i] += step;
            simplex.push(v);
        }
        let mut values: Vec<f64> = simplex.iter().map(|v| f(v)).collect();
        let mut evals = n + 1;

        while evals < self.max_evaluations {
            let mut idx: Vec<usize> = (0..=n).collect();
            idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
            simplex = idx.iter().map(|&i| simplex[i].clone()).collect();
            values = idx.iter().map(|&i| values[i]).collect();

            let spread_f = (values[n] - values[0]).abs();
            let spread_x = simplex[1..]
                .iter()
                .flat_map(|v| v.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()))
                .fold(0.0, f64::max);
            if spread_f <= self.ftol && spread_x <= self.xtol {
                break;
            }

            let centroid: Vec<f64> = (0..n)
                .map(|k| simplex[..n].iter().map(|v| v[k]).sum::<f64>() / n as f64)
                .collect();
            let along = |t: f64| -> Vec<f64> {
                centroid
                    .iter()
                    .zip(&simplex[n])
                    .map(|(c, w)| c + t * (w - c))
                    .collect()
            };

            let xr = along(-1.0);
            let fr = f(&xr);
            evals += 1;
            if fr < values[0] {
                let xe = along(-2.0);
                let fe = f(&xe);
                evals += 1;
                if fe < fr {
                    simplex[n] = xe;
                    values[n] = fe;
                } else {
                    simplex[n] = xr;
                    values[n] = fr;
                }
                continue;
            }
            if fr < values[n - 1] {
                simplex[n] = xr;
                values[n] = fr;
                continue;
            }
            let (xc, fc) = if fr < values[n] {
                let xc = along(-0.5);
                let fc = f(&xc);
                (xc, fc)
            } else {
                let xc = along(0.5);
                let fc = f(&xc);
                (xc, fc)
            };
            evals += 1;
            if fc < values[n].min(fr) {
                simplex[n] = xc;
                values[n] = fc;
                continue;
            }
            for i in 1..=n {
                let shrunk: Vec<f64> = simplex[0]
                    .iter()
                    .zip(&simplex[i])
                    .map(|(b, v)| b + 0.5 * (v - b))
                    .collect();
                values[i] = f(&shrunk);
                simplex[i] = shrunk;
            }
            evals += n;
        }

        let best = (0..=n)
            .min_by(|&a, &b| values[a].total_cmp(&values[b]))
            .unwrap_or(0);
        Minimum {
            x: simplex[best].clone(),
            value: values[best],
            evaluations: evals,
        }
    }
}

/// Derives an independent stream seed from a base seed and an item index.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
