//! Seeded parameter sampling and figure sweeps.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pythaproof_core::geometry::{check_figure, construct_figure, FigureId, GeometryError};

/// Distance kept from every domain endpoint, in radians.
pub const MARGIN: f64 = 0.01;

/// Breaches kept per figure in a report.
const MAX_BREACHES: usize = 10;

/// `samples` uniform points of the figure's domain followed by its corner
/// points. Each figure draws from its own stream of the seed.
pub fn sample_params(fig: FigureId, samples: usize, seed: u64) -> Vec<BTreeMap<String, f64>> {
    let domain = fig.domain();
    let dims = domain.param_names().len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(fig as u64);
    let mut out: Vec<_> = (0..samples)
        .map(|_| {
            let u: Vec<f64> = (0..dims).map(|_| rng.gen::<f64>()).collect();
            domain.from_unit(&u, MARGIN)
        })
        .collect();
    out.extend(domain.corners().iter().map(|c| domain.from_unit(c, MARGIN)));
    out
}

#[derive(Debug, Clone)]
pub struct Breach {
    pub params: BTreeMap<String, f64>,
    pub check: String,
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct FigureSweep {
    pub figure: FigureId,
    pub points: usize,
    pub checks: usize,
    pub max_residual: f64,
    pub worst: Option<Breach>,
    pub breaches: Vec<Breach>,
    pub breach_count: usize,
    pub tol: f64,
}

impl FigureSweep {
    pub fn passed(&self) -> bool {
        self.breach_count == 0
    }
}

pub fn sweep(fig: FigureId, samples: usize, seed: u64, tol: f64) -> Result<FigureSweep, GeometryError> {
    let params = sample_params(fig, samples, seed);
    let mut out = FigureSweep {
        figure: fig,
        points: params.len(),
        checks: 0,
        max_residual: 0.0,
        worst: None,
        breaches: Vec::new(),
        breach_count: 0,
        tol,
    };
    for p in &params {
        let report = check_figure(&construct_figure(fig, p)?, tol);
        out.checks += report.checks.len();
        for c in &report.checks {
            if !(c.residual < tol) {
                out.breach_count += 1;
                if out.breaches.len() < MAX_BREACHES {
                    out.breaches.push(Breach { params: p.clone(), check: c.name.clone(), residual: c.residual });
                }
            }
        }
        if let Some(w) = report.worst() {
            if out.worst.is_none() || w.residual > out.max_residual {
                out.max_residual = out.max_residual.max(w.residual);
                out.worst = Some(Breach { params: p.clone(), check: w.name.clone(), residual: w.residual });
            }
        }
    }
    Ok(out)
}
