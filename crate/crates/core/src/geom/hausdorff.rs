//! Complement Hausdorff distance between two open figures.
//!
//! The distance between E and F is the Hausdorff distance between D \ E and
//! D \ F, where D is a common inflated bounding box. Complements are sampled
//! on a regular grid of the requested resolution, and the boundary curves
//! (walks and cracks, which belong to the complement of the open sets) are
//! sampled densely as well so that slits of measure zero are visible. The
//! result carries an O(resolution) sampling error.

use super::{Aabb, GeneralizedPolygon, GeometryError, Point2};

pub fn hc_distance(
    e: &GeneralizedPolygon,
    f: &GeneralizedPolygon,
    resolution: f64,
) -> Result<f64, GeometryError> {
    if !(resolution.is_finite() && resolution > 0.0) {
        return Err(GeometryError::InvalidParameter(format!(
            "resolution must be positive, got {}",
            resolution
        )));
    }
    let bb = e.bbox().merge(f.bbox());
    let pad = 0.05 * bb.diameter() + 2.0 * resolution;
    let domain = bb.inflated(pad);

    let ce = complement_samples(e, &domain, resolution);
    let cf = complement_samples(f, &domain, resolution);

    let grid_e = BucketGrid::build(&ce, resolution);
    let grid_f = BucketGrid::build(&cf, resolution);

    let d_ef = ce
        .iter()
        .map(|&p| grid_f.nearest_dist(p))
        .fold(0.0_f64, f64::max);
    let d_fe = cf
        .iter()
        .map(|&p| grid_e.nearest_dist(p))
        .fold(0.0_f64, f64::max);
    Ok(d_ef.max(d_fe))
}

/// Grid points of the domain outside the open set, plus samples along every
/// boundary curve (boundaries belong to the complement of an open set).
fn complement_samples(poly: &GeneralizedPolygon, domain: &Aabb, res: f64) -> Vec<Point2> {
    let tol = poly.tolerance();
    let nx = ((domain.max.x - domain.min.x) / res).ceil() as usize + 1;
    let ny = ((domain.max.y - domain.min.y) / res).ceil() as usize + 1;
    let mut out = Vec::with_capacity(nx * ny / 2);
    for i in 0..nx {
        for j in 0..ny {
            let p = Point2::new(domain.min.x + i as f64 * res, domain.min.y + j as f64 * res);
            if !poly.contains(p, tol) {
                out.push(p);
            }
        }
    }
    for comp in poly.components() {
        for i in 0..comp.walk.len() {
            let (a, b) = comp.walk.edge(i);
            sample_segment(a, b, res, &mut out);
        }
        for crack in &comp.cracks {
            for (a, b) in crack.segments() {
                sample_segment(a, b, res, &mut out);
            }
        }
    }
    out
}

fn sample_segment(a: Point2, b: Point2, res: f64, out: &mut Vec<Point2>) {
    let len = a.dist(b);
    let n = (len / res).ceil().max(1.0) as usize;
    for k in 0..=n {
        out.push(a + (b - a) * (k as f64 / n as f64));
    }
}

/// Uniform hash grid for nearest-neighbor queries over a fixed point cloud.
struct BucketGrid {
    cell: f64,
    min: Point2,
    nx: i64,
    ny: i64,
    buckets: Vec<Vec<Point2>>,
}

impl BucketGrid {
    fn build(points: &[Point2], cell: f64) -> Self {
        let mut bb = Aabb::empty();
        for p in points {
            bb.include(*p);
        }
        let nx = (((bb.max.x - bb.min.x) / cell).floor() as i64 + 1).max(1);
        let ny = (((bb.max.y - bb.min.y) / cell).floor() as i64 + 1).max(1);
        let mut buckets = vec![Vec::new(); (nx * ny) as usize];
        for &p in points {
            let (i, j) = Self::cell_of(bb.min, cell, nx, ny, p);
            buckets[(j * nx + i) as usize].push(p);
        }
        BucketGrid {
            cell,
            min: bb.min,
            nx,
            ny,
            buckets,
        }
    }

    fn cell_of(min: Point2, cell: f64, nx: i64, ny: i64, p: Point2) -> (i64, i64) {
        let i = (((p.x - min.x) / cell).floor() as i64).clamp(0, nx - 1);
        let j = (((p.y - min.y) / cell).floor() as i64).clamp(0, ny - 1);
        (i, j)
    }

    /// Distance from `p` to the nearest stored point, searched ring by ring.
    fn nearest_dist(&self, p: Point2) -> f64 {
        let (ci, cj) = Self::cell_of(self.min, self.cell, self.nx, self.ny, p);
        let max_ring = (self.nx.max(self.ny)) as i64;
        let mut best = f64::INFINITY;
        for ring in 0..=max_ring {
            // Once a candidate is found, one extra ring guarantees the true
            // nearest point is seen.
            if best.is_finite() && (ring as f64 - 1.0) * self.cell > best {
                break;
            }
            let mut found_cell = false;
            for i in (ci - ring)..=(ci + ring) {
                for j in (cj - ring)..=(cj + ring) {
                    if (ci - i).abs().max((cj - j).abs()) != ring {
                        continue;
                    }
                    if i < 0 || j < 0 || i >= self.nx || j >= self.ny {
                        continue;
                    }
                    found_cell = true;
                    for q in &self.buckets[(j * self.nx + i) as usize] {
                        best = best.min(p.dist(*q));
                    }
                }
            }
            if !found_cell && best.is_finite() {
                break;
            }
        }
        best
    }
}
