use std::f64::consts::FRAC_PI_6;

use unimus::entropy::renyi_entropy;
use unimus::mus::{
    ensemble_overlap, nogo_witness_highd, nogo_witness_mub, qubit_sweep, qutrit_profile,
    zeta_default_alphas, zeta_sign_check,
};
use unimus::order::{trumping_verdict, uncertainty_verdict_s};
use unimus::quantum::rotation_pair_qutrit;
use unimus::thermo::{
    f2_ordering_threshold, free_energy, thermo_majorizes, EnergyDiagonalState, ThermoContext,
};
use unimus::uncertainty::flip_threshold;
use unimus::{AlphaGrid, NoiseLevel, OrderVerdict, RenyiOrder, Result};

use crate::report::{Cell, Report};
use crate::{Cli, Command};

fn dist_param(p: &unimus::ProbDist) -> String {
    p.probs()
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn threshold_cell(t: Option<f64>) -> Cell {
    t.map_or(Cell::Missing, Cell::Real)
}

fn verdict_row(family: &str, v: OrderVerdict) -> Vec<Cell> {
    vec![
        Cell::Text(family.into()),
        Cell::Text(v.relation.to_string()),
        v.witness
            .map_or(Cell::Missing, |w| Cell::Text(w.to_string())),
    ]
}

pub fn run(cli: &Cli) -> Result<Report> {
    let seed = cli.global.seed;
    let grid = cli.global.alpha_grid.clone();
    let grid_or_default = || grid.clone().unwrap_or_else(AlphaGrid::default_grid);
    let name = cli.command.name();
    let mut report = match &cli.command {
        Command::Entropy { p } => {
            let g = grid_or_default();
            let mut r = Report::new(name, seed, &["alpha", "entropy"]);
            r.param("p", dist_param(p)).alpha_grid = Some(g.to_string());
            for a in g.iter() {
                r.row(vec![Cell::Order(a), Cell::Real(renyi_entropy(p, a))]);
            }
            r
        }
        Command::Order { p, q } => {
            if p.len() != q.len() {
                return Err(unimus::Error::Validation(
                    "p and q must have equal length".into(),
                ));
            }
            let g = grid_or_default();
            let mut r = Report::new(name, seed, &["family", "relation", "witness"]);
            r.param("p", dist_param(p))
                .param("q", dist_param(q))
                .alpha_grid = Some(g.to_string());
            r.row(verdict_row("majorization", uncertainty_verdict_s(p, q)));
            r.row(verdict_row("trumping", trumping_verdict(p, q, &g)));
            r
        }
        Command::Flip { p, q, alpha } => {
            let mut r = Report::new(name, seed, &["alpha", "threshold"]);
            r.param("p", dist_param(p)).param("q", dist_param(q));
            let orders: Vec<RenyiOrder> = match alpha {
                Some(a) => {
                    r.param("alpha", a);
                    vec![*a]
                }
                None => {
                    let g = grid_or_default();
                    r.alpha_grid = Some(g.to_string());
                    g.iter().filter(|a| a.is_finite()).collect()
                }
            };
            for a in orders {
                r.row(vec![
                    Cell::Order(a),
                    threshold_cell(flip_threshold(p, q, a)?),
                ]);
            }
            r
        }
        Command::QubitSweep {
            gamma,
            purity_steps,
        } => {
            let g = grid_or_default();
            let mut r = Report::new(
                name,
                seed,
                &["alpha", "epsilon", "purity", "theta_min", "entropy_value"],
            );
            r.param("gamma", gamma)
                .param("purity_steps", purity_steps)
                .alpha_grid = Some(g.to_string());
            for pt in qubit_sweep(*gamma, &g, *purity_steps)? {
                r.row(vec![
                    Cell::Order(pt.alpha),
                    Cell::Real(1.0 - pt.purity),
                    Cell::Real(pt.purity),
                    Cell::Real(pt.theta_min),
                    Cell::Real(pt.entropy_value),
                ]);
            }
            r
        }
        Command::ZetaCheck { theta_step } => {
            let alphas: Vec<f64> = match &grid {
                Some(g) => g
                    .finite_orders()
                    .into_iter()
                    .filter(|&a| a != 0.0 && a != 1.0)
                    .collect(),
                None => zeta_default_alphas(),
            };
            let report = zeta_sign_check(&alphas, *theta_step)?;
            let mut r = Report::new(name, seed, &["alpha", "theta", "zeta"]);
            r.param("theta_step", theta_step);
            r.alpha_grid = grid.as_ref().map(ToString::to_string);
            r.summary("n_alphas", Cell::Int(alphas.len() as u64))
                .summary("points_checked", Cell::Int(report.points_checked as u64))
                .summary("violations", Cell::Int(report.violations.len() as u64));
            for v in report.violations {
                r.row(vec![
                    Cell::Real(v.alpha),
                    Cell::Real(v.theta),
                    Cell::Real(v.zeta),
                ]);
            }
            r
        }
        Command::Ensemble { d, pairs, restarts } => {
            let s = ensemble_overlap(*d, *pairs, *restarts, seed)?;
            let mut r = Report::new(name, seed, &["pair", "overlap"]);
            r.param("d", d)
                .param("pairs", pairs)
                .param("restarts", restarts);
            r.summary("dimension", Cell::Int(s.dimension as u64))
                .summary("n_pairs", Cell::Int(s.n_pairs as u64))
                .summary("mean_overlap", Cell::Real(s.mean_overlap))
                .summary("min_overlap", Cell::Real(s.min_overlap))
                .summary("seed", Cell::Int(s.seed));
            for (k, o) in s.overlaps.iter().enumerate() {
                r.row(vec![Cell::Int(k as u64), Cell::Real(*o)]);
            }
            r
        }
        Command::Fig3 { eps, restarts } => {
            let alphas: Vec<RenyiOrder> = match &grid {
                Some(g) => g.orders().to_vec(),
                None => (0..=20)
                    .map(|k| RenyiOrder::Finite(k as f64 / 10.0))
                    .collect(),
            };
            let mut r = Report::new(
                name,
                seed,
                &["alpha", "h_candidate", "h_eigen", "h_optimal"],
            );
            r.param("eps", eps.epsilon()).param("restarts", restarts);
            r.alpha_grid = Some(
                alphas
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
            );
            for row in qutrit_profile(*eps, &alphas, *restarts, seed)? {
                r.row(vec![
                    Cell::Order(row.alpha),
                    Cell::Real(row.h_candidate),
                    Cell::Real(row.h_eigen),
                    Cell::Real(row.h_optimal),
                ]);
            }
            r
        }
        Command::Nogo { eps } => {
            let levels = eps
                .0
                .iter()
                .map(|&e| NoiseLevel::new(e))
                .collect::<Result<Vec<_>>>()?;
            let mut r = Report::new(
                name,
                seed,
                &["case", "epsilon", "order", "h_witness", "h_psi_inf"],
            );
            r.param(
                "eps",
                eps.0
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
            );
            for &e in &levels {
                let w = nogo_witness_mub(e)?;
                r.row(vec![
                    Cell::Text("qubit-mub".into()),
                    Cell::Real(e.epsilon()),
                    Cell::Order(RenyiOrder::SHANNON),
                    Cell::Real(w.h1_eigen),
                    Cell::Real(w.h1_psi_inf),
                ]);
            }
            let pair = rotation_pair_qutrit(FRAC_PI_6)?;
            for &e in &levels {
                let w = nogo_witness_highd(&pair, e)?;
                r.row(vec![
                    Cell::Text("qutrit".into()),
                    Cell::Real(e.epsilon()),
                    Cell::Order(RenyiOrder::NegInfinity),
                    Cell::Real(w.hminf_xi),
                    Cell::Real(w.hminf_psi_inf),
                ]);
            }
            r
        }
        Command::Thermo {
            energies,
            beta,
            p,
            q,
        } => {
            let g = grid_or_default();
            let ctx = ThermoContext::new(energies.0.clone(), *beta)?;
            let (sp, sq) = (
                EnergyDiagonalState::new(p.clone(), &ctx)?,
                EnergyDiagonalState::new(q.clone(), &ctx)?,
            );
            let mut r = Report::new(
                name,
                seed,
                &["alpha", "free_energy_p", "free_energy_q", "threshold"],
            );
            r.param(
                "energies",
                energies
                    .0
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
            )
            .param("beta", beta)
            .param("p", dist_param(p))
            .param("q", dist_param(q))
            .alpha_grid = Some(g.to_string());
            r.summary("log_z", Cell::Real(ctx.log_z()))
                .summary(
                    "equilibrium_free_energy",
                    Cell::Real(ctx.equilibrium_free_energy()),
                )
                .summary(
                    "p_thermo_majorizes_q",
                    Cell::Bool(thermo_majorizes(&sp, &sq, &ctx)?),
                )
                .summary(
                    "q_thermo_majorizes_p",
                    Cell::Bool(thermo_majorizes(&sq, &sp, &ctx)?),
                );
            for a in g.iter() {
                let t = if a.is_finite() {
                    f2_ordering_threshold(&sp, &sq, &ctx, a)?
                } else {
                    None
                };
                r.row(vec![
                    Cell::Order(a),
                    Cell::Real(free_energy(&sp, &ctx, a)?),
                    Cell::Real(free_energy(&sq, &ctx, a)?),
                    threshold_cell(t),
                ]);
            }
            r
        }
    };
    report.seed = seed;
    Ok(report)
}
