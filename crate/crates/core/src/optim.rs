//! Derivative-free shape optimization over polygon vertices.
//!
//! The search variable is a simple N-gon (optionally restricted to
//! axis-aligned rectangles); cracked competitors only arise from the
//! geometric constructions, never from the search itself. Candidates that
//! self-intersect, violate convexity (when demanded), or blow past the mesh
//! budget are rejected with an infinite score. For positive beta every
//! feasible candidate is dilated until the constraint saturates before it
//! is scored, which dilation monotonicity justifies; for negative beta the
//! constraint enters through a quadratic penalty and the winner is
//! projected back onto the feasible set at the end. Restarts run in
//! parallel and the whole procedure is deterministic for a fixed seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fem::{assemble, converged_eigs, robin_eigs, FemError, SpectrumResult};
use crate::geom::construct::{cut_corner, fill_holes, CornerRef, CutSide};
use crate::geom::measures::{area, generalized_perimeter, regular_ngon, scale};
use crate::geom::predicates::{orient_sign, tolerance_for_diameter};
use crate::geom::{ConstraintKind, ConstraintSpec, GeneralizedPolygon, GeometryError, Point2, SimplePolygon};
use crate::mesh::mesh;
use crate::objective::{evaluate, hypothesis_check, Direction, ObjectiveError, ObjectiveSpec};

#[derive(Debug, Error)]
pub enum OptimError {
    #[error("parameter out of range: {0}")]
    InvalidParameter(String),
    #[error("objective failed its hypothesis gate: {0}")]
    BadObjective(#[from] ObjectiveError),
    #[error("no usable cut corner: {0}")]
    NotApplicable(String),
    #[error("optimization failed: {0}")]
    AllRestartsFailed(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Fem(#[from] FemError),
}

/// Shape of the search space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parameterization {
    /// All 2N vertex coordinates move freely.
    #[default]
    Free,
    /// Axis-aligned rectangles, parameterized by width and height.
    Rectangle,
}

#[derive(Debug, Clone)]
pub struct OptimizationProblem {
    pub objective: ObjectiveSpec,
    pub constraint: ConstraintSpec,
    pub side_budget: usize,
    pub restarts: usize,
    pub seed: u64,
    pub mesh_h: f64,
    pub max_iters: usize,
    pub parameterization: Parameterization,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HistoryEntry {
    pub iter: usize,
    /// Best working score so far (the penalized objective the search sees).
    pub value: f64,
    pub feasible: bool,
    pub area: f64,
    pub gen_perimeter: f64,
}

#[derive(Debug)]
pub struct OptimizationResult {
    pub best_polygon: GeneralizedPolygon,
    /// Objective at the certified spectrum of the winner.
    pub best_value: f64,
    pub spectrum: SpectrumResult,
    /// Constrained quantity minus its bound.
    pub constraint_residual: f64,
    pub history: Vec<HistoryEntry>,
    pub saturated: bool,
}

/// Candidates are rejected before meshing when their estimated node count
/// would knock the inner solves off the fast dense path.
const INNER_NODE_CAP: f64 = 2000.0;

const FEAS_TOL: f64 = 1e-8;

struct Candidate {
    polygon: GeneralizedPolygon,
    /// Working score, lower is better (maximization runs negate).
    score: f64,
    feasible: bool,
    area: f64,
    per: f64,
}

struct Evaluator<'a> {
    problem: &'a OptimizationProblem,
    penalty_weight: f64,
}

impl<'a> Evaluator<'a> {
    fn decode(&self, x: &[f64]) -> Option<GeneralizedPolygon> {
        for v in x {
            if !v.is_finite() || v.abs() > 1e6 {
                return None;
            }
        }
        let verts: Vec<Point2> = match self.problem.parameterization {
            Parameterization::Rectangle => {
                let (w, h) = (x[0], x[1]);
                if w <= 1e-6 || h <= 1e-6 {
                    return None;
                }
                vec![
                    Point2::new(0.0, 0.0),
                    Point2::new(w, 0.0),
                    Point2::new(w, h),
                    Point2::new(0.0, h),
                ]
            }
            Parameterization::Free => x
                .chunks(2)
                .map(|c| Point2::new(c[0], c[1]))
                .collect(),
        };
        let mut verts = verts;
        let doubled: f64 = (0..verts.len())
            .map(|i| verts[i].cross(verts[(i + 1) % verts.len()]))
            .sum();
        if doubled < 0.0 {
            verts.reverse();
        }
        if self.problem.constraint.convex {
            let diam = {
                let xs = verts.iter().map(|p| p.x);
                let ys = verts.iter().map(|p| p.y);
                let (xmin, xmax) = (xs.clone().fold(f64::MAX, f64::min), xs.fold(f64::MIN, f64::max));
                let (ymin, ymax) = (ys.clone().fold(f64::MAX, f64::min), ys.fold(f64::MIN, f64::max));
                ((xmax - xmin).powi(2) + (ymax - ymin).powi(2)).sqrt()
            };
            let tol = tolerance_for_diameter(diam);
            let n = verts.len();
            for i in 0..n {
                if orient_sign(verts[(i + n - 1) % n], verts[i], verts[(i + 1) % n], tol) != 1 {
                    return None;
                }
            }
        }
        let walk = SimplePolygon::new(verts).ok()?;
        GeneralizedPolygon::simple(walk, self.problem.side_budget).ok()
    }

    /// Full scoring pipeline; None means rejection.
    fn score(&self, x: &[f64]) -> Option<Candidate> {
        let raw = self.decode(x)?;
        let spec = &self.problem.objective;
        let bound = self.problem.constraint.bound;

        let (poly, feasible) = if spec.beta > 0.0 {
            // saturate by dilation
            let measured = self.problem.constraint.measure(&raw);
            if measured <= 0.0 {
                return None;
            }
            let s = match self.problem.constraint.kind {
                ConstraintKind::Area => (bound / measured).sqrt(),
                ConstraintKind::GeneralizedPerimeter => bound / measured,
            };
            (scale(&raw, s).ok()?, true)
        } else {
            let measured = self.problem.constraint.measure(&raw);
            (raw, measured <= bound + FEAS_TOL)
        };

        let a = area(&poly);
        let per = generalized_perimeter(&poly);
        let h = self.problem.mesh_h;
        let estimated_nodes = a / (0.433 * h * h) + 2.0 * per / h + poly.side_budget() as f64;
        if estimated_nodes > INNER_NODE_CAP {
            return None;
        }

        let msh = mesh(&poly, h).ok()?;
        let forms = assemble(&msh);
        let k = spec.arity();
        let spectrum = robin_eigs(&forms, spec.beta, k).ok()?;
        let f = spec.apply(&spectrum.eigenvalues[..k]);

        let score = match spec.direction() {
            Direction::Minimize => f,
            Direction::Maximize => {
                let viol = (self.problem.constraint.measure(&poly) - bound).max(0.0);
                -(f - self.penalty_weight * viol * viol)
            }
        };
        if !score.is_finite() {
            return None;
        }
        Some(Candidate {
            polygon: poly,
            score,
            feasible,
            area: a,
            per,
        })
    }
}

struct RestartOutcome {
    best: Option<Candidate>,
    rows: Vec<HistoryEntry>,
    rejected: usize,
}

fn initial_coords(
    problem: &OptimizationProblem,
    base: &GeneralizedPolygon,
    restart: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<f64> {
    match problem.parameterization {
        Parameterization::Rectangle => {
            let mut x = vec![1.0, 1.0];
            if restart > 0 {
                for v in x.iter_mut() {
                    *v *= 1.0 + rng.gen_range(-0.4..0.4);
                }
            }
            x
        }
        Parameterization::Free => {
            let verts = base.components()[0].walk.verts();
            let diam = base.bbox().diameter();
            let mut x: Vec<f64> = verts.iter().flat_map(|p| [p.x, p.y]).collect();
            if restart > 0 {
                for v in x.iter_mut() {
                    *v += rng.gen_range(-0.1..0.1) * diam;
                }
            }
            x
        }
    }
}

fn run_restart(
    problem: &OptimizationProblem,
    base: &GeneralizedPolygon,
    restart: usize,
) -> RestartOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(problem.seed.wrapping_add(restart as u64));
    let start_diam = base.bbox().diameter().max(1e-6);
    let mut rejected = 0usize;

    let mut ev = Evaluator {
        problem,
        penalty_weight: 1.0,
    };

    // find a decodable start, perturbing until one is accepted
    let mut x0 = initial_coords(problem, base, restart, &mut rng);
    let mut start_score = ev.score(&x0);
    let mut tries = 0;
    while start_score.is_none() && tries < 60 {
        x0 = initial_coords(problem, base, restart.max(1), &mut rng);
        start_score = ev.score(&x0);
        tries += 1;
        rejected += 1;
    }
    let Some(start) = start_score else {
        return RestartOutcome { best: None, rows: vec![], rejected };
    };
    if problem.objective.beta < 0.0 {
        ev.penalty_weight = (10.0 * start.score.abs() / problem.constraint.bound).max(1.0);
    }

    let d = x0.len();
    let step = 0.1 * start_diam;
    let build_simplex = |center: &[f64], scale: f64| -> Vec<Vec<f64>> {
        let mut pts = vec![center.to_vec()];
        for j in 0..d {
            let mut p = center.to_vec();
            p[j] += scale;
            pts.push(p);
        }
        pts
    };

    let mut pts = build_simplex(&x0, step);
    let mut evals: Vec<Option<Candidate>> = pts.iter().map(|p| ev.score(p)).collect();
    let val = |c: &Option<Candidate>| c.as_ref().map(|c| c.score).unwrap_or(f64::INFINITY);

    let mut best: Option<Candidate> = None;
    let mut best_x = x0.clone();
    let mut rows: Vec<HistoryEntry> = Vec::with_capacity(problem.max_iters);
    let mut since_improve = 0usize;
    let stall_window = 2 * d + 20;

    for iter in 0..problem.max_iters {
        // order simplex, best first
        let mut order: Vec<usize> = (0..pts.len()).collect();
        order.sort_by(|&i, &j| val(&evals[i]).total_cmp(&val(&evals[j])));
        let reorder_pts: Vec<Vec<f64>> = order.iter().map(|&i| pts[i].clone()).collect();
        let mut reorder_evals: Vec<Option<Candidate>> = Vec::with_capacity(evals.len());
        for &i in &order {
            reorder_evals.push(evals[i].take());
        }
        pts = reorder_pts;
        evals = reorder_evals;

        // track the incumbent
        let improved = match (&best, &evals[0]) {
            (None, Some(c)) => Some(c),
            (Some(b), Some(c)) if c.score < b.score - 1e-12 * (1.0 + b.score.abs()) => Some(c),
            _ => None,
        };
        if let Some(c) = improved {
            best = Some(Candidate {
                polygon: c.polygon.clone(),
                score: c.score,
                feasible: c.feasible,
                area: c.area,
                per: c.per,
            });
            best_x = pts[0].clone();
            since_improve = 0;
        } else {
            since_improve += 1;
        }
        if let Some(b) = &best {
            rows.push(HistoryEntry {
                iter,
                value: match problem.objective.direction() {
                    Direction::Minimize => b.score,
                    Direction::Maximize => -b.score,
                },
                feasible: b.feasible,
                area: b.area,
                gen_perimeter: b.per,
            });
        }

        // stagnation: rebuild the simplex around the incumbent
        if since_improve > stall_window {
            if problem.objective.beta < 0.0 {
                if let Some(b) = &best {
                    if !b.feasible {
                        ev.penalty_weight *= 2.0;
                    }
                }
            }
            let jitter: Vec<f64> = best_x
                .iter()
                .map(|v| v + rng.gen_range(-0.05..0.05) * start_diam)
                .collect();
            pts = build_simplex(&jitter, step);
            evals = pts.iter().map(|p| ev.score(p)).collect();
            since_improve = 0;
            continue;
        }

        // Nelder-Mead step (reflect / expand / contract / shrink)
        let worst = pts.len() - 1;
        let centroid: Vec<f64> = (0..d)
            .map(|j| pts[..worst].iter().map(|p| p[j]).sum::<f64>() / worst as f64)
            .collect();
        let shifted = |t: f64| -> Vec<f64> {
            (0..d)
                .map(|j| centroid[j] + t * (centroid[j] - pts[worst][j]))
                .collect()
        };

        let xr = shifted(1.0);
        let cr = ev.score(&xr);
        if cr.is_none() {
            rejected += 1;
        }
        let fr = val(&cr);
        let f_best = val(&evals[0]);
        let f_second = val(&evals[worst - 1]);
        let f_worst = val(&evals[worst]);

        if fr < f_best {
            let xe = shifted(2.0);
            let ce = ev.score(&xe);
            if ce.is_none() {
                rejected += 1;
            }
            if val(&ce) < fr {
                pts[worst] = xe;
                evals[worst] = ce;
            } else {
                pts[worst] = xr;
                evals[worst] = cr;
            }
        } else if fr < f_second {
            pts[worst] = xr;
            evals[worst] = cr;
        } else {
            let (xc, cc) = if fr < f_worst {
                let xc = shifted(0.5);
                let cc = ev.score(&xc);
                (xc, cc)
            } else {
                let xc = shifted(-0.5);
                let cc = ev.score(&xc);
                (xc, cc)
            };
            if val(&cc) < fr.min(f_worst) {
                pts[worst] = xc;
                evals[worst] = cc;
            } else {
                // shrink toward the best point
                for i in 1..pts.len() {
                    for j in 0..d {
                        pts[i][j] = pts[0][j] + 0.5 * (pts[i][j] - pts[0][j]);
                    }
                    evals[i] = ev.score(&pts[i]);
                }
            }
        }
    }

    RestartOutcome { best, rows, rejected }
}

/// Multi-start Nelder-Mead over the vertex coordinates.
pub fn optimize(problem: &OptimizationProblem) -> Result<OptimizationResult, OptimError> {
    if problem.side_budget < 3 {
        return Err(OptimError::InvalidParameter(format!(
            "side budget must be at least 3, got {}",
            problem.side_budget
        )));
    }
    if problem.parameterization == Parameterization::Rectangle && problem.side_budget < 4 {
        return Err(OptimError::InvalidParameter(
            "rectangle search needs a side budget of at least 4".into(),
        ));
    }
    if problem.restarts < 1 {
        return Err(OptimError::InvalidParameter("need at least one restart".into()));
    }
    if !(problem.mesh_h.is_finite() && problem.mesh_h > 0.0) {
        return Err(OptimError::InvalidParameter(format!(
            "mesh size must be positive, got {}",
            problem.mesh_h
        )));
    }
    if problem.max_iters == 0 {
        return Err(OptimError::InvalidParameter("need at least one iteration".into()));
    }
    if !(problem.constraint.bound.is_finite() && problem.constraint.bound > 0.0) {
        return Err(OptimError::InvalidParameter(format!(
            "constraint bound must be positive, got {}",
            problem.constraint.bound
        )));
    }
    hypothesis_check(&problem.objective)?;

    let ngon_sides = match problem.parameterization {
        Parameterization::Rectangle => 4,
        Parameterization::Free => problem.side_budget,
    };
    let base = regular_ngon(ngon_sides, &problem.constraint)?;

    let outcomes: Vec<RestartOutcome> = (0..problem.restarts)
        .into_par_iter()
        .map(|r| run_restart(problem, &base, r))
        .collect();

    // merged best-so-far trace: row t is the best over all restarts of each
    // restart's incumbent at iteration t
    let longest = outcomes.iter().map(|o| o.rows.len()).max().unwrap_or(0);
    let dir = problem.objective.direction();
    let better = |a: f64, b: f64| match dir {
        Direction::Minimize => a < b,
        Direction::Maximize => a > b,
    };
    let mut history: Vec<HistoryEntry> = Vec::with_capacity(longest);
    for t in 0..longest {
        let mut row: Option<&HistoryEntry> = None;
        for o in &outcomes {
            if o.rows.is_empty() {
                continue;
            }
            let r = &o.rows[t.min(o.rows.len() - 1)];
            if row.map(|cur| better(r.value, cur.value)).unwrap_or(true) {
                row = Some(r);
            }
        }
        if let Some(r) = row {
            history.push(HistoryEntry { iter: t, ..r.clone() });
        }
    }

    let rejected: usize = outcomes.iter().map(|o| o.rejected).sum();
    let winner = outcomes
        .into_iter()
        .filter_map(|o| o.best)
        .min_by(|a, b| a.score.total_cmp(&b.score));
    let Some(winner) = winner else {
        return Err(OptimError::AllRestartsFailed(format!(
            "every restart failed to produce a valid candidate ({} rejections)",
            rejected
        )));
    };

    // negative-beta runs may end infeasible; project back by dilation
    let mut final_poly = winner.polygon;
    let bound = problem.constraint.bound;
    let measured = problem.constraint.measure(&final_poly);
    if problem.objective.beta < 0.0 && measured > bound + FEAS_TOL {
        let s = match problem.constraint.kind {
            ConstraintKind::Area => (bound / measured).sqrt(),
            ConstraintKind::GeneralizedPerimeter => bound / measured,
        };
        final_poly = scale(&final_poly, s)?;
    }

    // certify the winner on refined meshes
    let spec = &problem.objective;
    let spectrum = converged_eigs(&final_poly, spec.beta, spec.arity(), problem.mesh_h, 2)?;
    let best_value = evaluate(spec, &spectrum)?;
    let residual = problem.constraint.measure(&final_poly) - bound;

    Ok(OptimizationResult {
        saturated: residual.abs() <= FEAS_TOL,
        best_polygon: final_poly,
        best_value,
        spectrum,
        constraint_residual: residual,
        history,
    })
}

/// One eigenvalue sweep row of a corner-cut experiment.
#[derive(Debug, Clone)]
pub struct CutRow {
    pub eps: f64,
    pub values: Vec<f64>,
    pub objective: f64,
}

#[derive(Debug, Clone)]
pub struct CutReport {
    pub corner_vertex: usize,
    pub base_values: Vec<f64>,
    pub base_objective: f64,
    pub rows: Vec<CutRow>,
    /// Least-squares slope of (first eigenvalue change) against depth.
    pub slope_first: f64,
    pub r_squared: f64,
    /// Largest first-order growth of a higher eigenvalue relative to the
    /// first eigenvalue's drop, at the smallest depth. Cuts may lower
    /// higher eigenvalues at first order too (a degenerate pair splits and
    /// its lower branch follows the cut down), so only growth counts
    /// against the separation; decreases never hurt the objective.
    pub growth_ratio: f64,
    /// Objective strictly below the uncut value at every depth.
    pub objective_decreased: bool,
}

/// Cuts a convex corner at each depth and reports how the spectrum moves.
/// The first eigenvalue should drop linearly; higher ones should move
/// sublinearly.
pub fn cut_improves(
    poly: &GeneralizedPolygon,
    objective: &ObjectiveSpec,
    epsilons: &[f64],
    h0: f64,
    levels: usize,
) -> Result<CutReport, OptimError> {
    if objective.beta <= 0.0 {
        return Err(OptimError::InvalidParameter(format!(
            "corner cutting needs a positive beta, got {}",
            objective.beta
        )));
    }
    if epsilons.is_empty() || epsilons.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
        return Err(OptimError::InvalidParameter(
            "need a nonempty list of positive depths".into(),
        ));
    }
    let mut eps = epsilons.to_vec();
    eps.sort_by(f64::total_cmp);

    let k = objective.arity().max(2);
    let base = converged_eigs(poly, objective.beta, k, h0, levels)?;
    let base_values = base.eigenvalues.clone();
    let base_objective = objective.apply(&base_values[..objective.arity()]);

    // first walk vertex that admits every requested cut
    let walk = &poly.components()[0].walk;
    let mut corner = None;
    'vertices: for vi in 0..walk.len() {
        let reference = CornerRef::Walk { component: 0, vertex: vi };
        for &e in &eps {
            if cut_corner(poly, reference, e, CutSide::Plus).is_err() {
                continue 'vertices;
            }
        }
        corner = Some(vi);
        break;
    }
    let Some(vi) = corner else {
        return Err(OptimError::NotApplicable(
            "no convex corner admits the whole requested depth range".into(),
        ));
    };

    let mut rows = Vec::with_capacity(eps.len());
    for &e in &eps {
        let cut = cut_corner(poly, CornerRef::Walk { component: 0, vertex: vi }, e, CutSide::Plus)?;
        let spec = converged_eigs(&cut.polygon, objective.beta, k, h0, levels)?;
        let objective_value = objective.apply(&spec.eigenvalues[..objective.arity()]);
        rows.push(CutRow {
            eps: e,
            values: spec.eigenvalues,
            objective: objective_value,
        });
    }

    // least-squares line through the first-eigenvalue changes
    let n = rows.len() as f64;
    let xs: Vec<f64> = rows.iter().map(|r| r.eps).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.values[0] - base_values[0]).collect();
    let xbar = xs.iter().sum::<f64>() / n;
    let ybar = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - xbar).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xbar) * (y - ybar)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = ybar - slope * xbar;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (slope * x + intercept)).powi(2))
        .sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - ybar).powi(2)).sum();
    let r_squared = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else { 1.0 };

    let smallest = &rows[0];
    let d1 = (smallest.values[0] - base_values[0]).abs().max(1e-300);
    let growth_ratio = (1..k)
        .map(|h| (smallest.values[h] - base_values[h]).max(0.0) / d1)
        .fold(0.0f64, f64::max);
    let objective_decreased = rows.iter().all(|r| r.objective < base_objective);

    Ok(CutReport {
        corner_vertex: vi,
        base_values,
        base_objective,
        rows,
        slope_first: slope,
        r_squared,
        growth_ratio,
        objective_decreased,
    })
}

#[derive(Debug, Clone)]
pub struct FillReport {
    pub original_values: Vec<f64>,
    pub filled_values: Vec<f64>,
    pub per_original: f64,
    pub per_filled: f64,
    /// Every negative eigenvalue of the original rose (or held) after
    /// filling, up to the tolerance below.
    pub monotone_ok: bool,
    pub tolerance: f64,
    pub objective_original: f64,
    pub objective_filled: f64,
    /// The polygon was already free of holes and cracks.
    pub unchanged: bool,
}

/// Compares the spectrum of a polygon against its filled version (holes and
/// cracks erased). Filling can only raise negative eigenvalues and can only
/// shorten the generalized perimeter.
pub fn fill_improves(
    poly: &GeneralizedPolygon,
    objective: &ObjectiveSpec,
    k: usize,
    h0: f64,
    levels: usize,
) -> Result<FillReport, OptimError> {
    if objective.beta >= 0.0 {
        return Err(OptimError::InvalidParameter(format!(
            "filling comparisons need a negative beta, got {}",
            objective.beta
        )));
    }
    if k == 0 {
        return Err(OptimError::InvalidParameter("need at least one eigenvalue".into()));
    }
    let k_solve = k.max(objective.arity());
    let filled = fill_holes(poly)?;

    let per_original = generalized_perimeter(poly);
    let per_filled = generalized_perimeter(&filled);
    let unchanged = poly.components().len() == filled.components().len()
        && (area(poly) - area(&filled)).abs() <= 1e-12 * area(poly).max(1.0)
        && (per_original - per_filled).abs() <= 1e-12 * per_original.max(1.0)
        && !poly.has_cracks();

    let original = converged_eigs(poly, objective.beta, k_solve, h0, levels)?;
    let after = converged_eigs(&filled, objective.beta, k_solve, h0, levels)?;

    let tolerance = 1e-3;
    let monotone_ok = (0..k).all(|h| {
        original.eigenvalues[h] >= 0.0
            || after.eigenvalues[h] >= original.eigenvalues[h] - tolerance
    });

    Ok(FillReport {
        objective_original: objective.apply(&original.eigenvalues[..objective.arity()]),
        objective_filled: objective.apply(&after.eigenvalues[..objective.arity()]),
        original_values: original.eigenvalues,
        filled_values: after.eigenvalues,
        per_original,
        per_filled,
        monotone_ok,
        tolerance,
        unchanged,
    })
}

/// Isoperimetric lower envelope for the first eigenvalue at parameter -eta:
/// any polygon of this area satisfies lambda_1 <= -2 eta sqrt(pi / area)
/// through the constant test vector, so shrinking candidates dive to
/// -infinity and a maximizing search can prune them.
pub fn vanishing_guard(poly: &GeneralizedPolygon, eta: f64) -> Result<f64, OptimError> {
    if !(eta.is_finite() && eta > 0.0) {
        return Err(OptimError::InvalidParameter(format!(
            "guard needs a positive eta, got {}",
            eta
        )));
    }
    let a = area(poly);
    if !(a > 0.0) {
        return Err(OptimError::InvalidParameter("polygon has zero area".into()));
    }
    Ok(-eta * 2.0 * std::f64::consts::PI.sqrt() / a.sqrt())
}

/// Admissibility cap on the number of connected components: the geometric
/// cap floor((N-1)/2) against the spectral cap floor(m A*^2 / (4 pi eta^2)) + k.
pub fn component_bound(
    poly: &GeneralizedPolygon,
    eta: f64,
    k: usize,
    a_star: f64,
) -> Result<usize, OptimError> {
    if !(a_star.is_finite() && a_star > 0.0) {
        return Err(OptimError::InvalidParameter(format!(
            "reference value must be positive, got {}",
            a_star
        )));
    }
    let geometric = (poly.side_budget() - 1) / 2;
    let spectral = area(poly) * a_star * a_star / (4.0 * std::f64::consts::PI * eta * eta);
    if !spectral.is_finite() {
        return Ok(geometric);
    }
    // the ratio counts components, so a boundary value one rounding error
    // below a whole number must not lose that component
    let whole = (spectral * (1.0 + 1e-12)).floor() as usize;
    Ok(geometric.min(whole.saturating_add(k)))
}
