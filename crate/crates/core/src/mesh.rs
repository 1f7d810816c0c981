//! Triangular meshing of generalized polygons.
//!
//! Each component is triangulated separately (touching components keep
//! independent node sets) with a constrained Delaunay triangulation refined
//! to a 20 degree minimum angle and triangle areas of order `h^2`. Crack
//! polylines enter as interior constraints; afterwards the nodes along each
//! crack are duplicated per side, so functions on the mesh may jump across
//! the crack. Every crack edge therefore shows up twice in the boundary
//! list, which makes the total boundary length equal the generalized
//! perimeter.

use std::collections::HashMap;

use spade::{
    AngleLimit, ConstrainedDelaunayTriangulation, Point2 as SpadePoint, RefinementParameters,
    Triangulation,
};
use thiserror::Error;

use crate::geom::measures::{area, generalized_perimeter};
use crate::geom::predicates::on_segment;
use crate::geom::{Component, GeneralizedPolygon, Point2};

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("mesh size must be positive and finite, got {0}")]
    BadSize(f64),
    #[error("point insertion failed: {0}")]
    Insertion(String),
    #[error("refinement ran out of vertices at size {0}; use a coarser size")]
    Incomplete(f64),
    #[error("mesh validation failed: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryKind {
    /// Ordinary wall edge, material on one side.
    Wall,
    /// One side of a crack; the twin side is a separate edge.
    CrackSide,
}

#[derive(Debug, Clone, Copy)]
pub struct BoundaryEdge {
    pub a: usize,
    pub b: usize,
    pub kind: BoundaryKind,
}

/// Triangle mesh with duplicated nodes along crack seams.
///
/// `seam_pairs` lists pairs of distinct node indices sharing bitwise equal
/// coordinates; those stem from crack-side duplication (and, in meshes of
/// several touching components, from shared contact points).
#[derive(Debug, Clone)]
pub struct TriMesh {
    pub nodes: Vec<Point2>,
    pub tris: Vec<[usize; 3]>,
    pub boundary: Vec<BoundaryEdge>,
    pub seam_pairs: Vec<(usize, usize)>,
}

impl TriMesh {
    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_tris(&self) -> usize {
        self.tris.len()
    }

    pub fn tri_area(&self, t: usize) -> f64 {
        let [i, j, k] = self.tris[t];
        0.5 * (self.nodes[j] - self.nodes[i]).cross(self.nodes[k] - self.nodes[i])
    }

    pub fn total_area(&self) -> f64 {
        (0..self.tris.len()).map(|t| self.tri_area(t)).sum()
    }

    pub fn boundary_length(&self) -> f64 {
        self.boundary
            .iter()
            .map(|e| self.nodes[e.a].dist(self.nodes[e.b]))
            .sum()
    }

    pub fn min_angle_deg(&self) -> f64 {
        let mut best = f64::INFINITY;
        for t in &self.tris {
            for r in 0..3 {
                let a = self.nodes[t[r]];
                let b = self.nodes[t[(r + 1) % 3]];
                let c = self.nodes[t[(r + 2) % 3]];
                let u = b - a;
                let v = c - a;
                let ang = u.cross(v).atan2(u.dot(v));
                best = best.min(ang.abs());
            }
        }
        best.to_degrees()
    }

    pub fn max_edge_len(&self) -> f64 {
        let mut best: f64 = 0.0;
        for t in &self.tris {
            for r in 0..3 {
                best = best.max(self.nodes[t[r]].dist(self.nodes[t[(r + 1) % 3]]));
            }
        }
        best
    }
}

/// Meshes the polygon with target edge length `h`.
pub fn mesh(poly: &GeneralizedPolygon, h: f64) -> Result<TriMesh, MeshError> {
    if !(h.is_finite() && h > 0.0) {
        return Err(MeshError::BadSize(h));
    }
    let tol = poly.tolerance();
    let crack_segs = crack_segments(poly);

    let mut nodes: Vec<Point2> = Vec::new();
    let mut tris: Vec<[usize; 3]> = Vec::new();
    for comp in poly.components() {
        let part = mesh_component(comp, h, tol)?;
        let offset = nodes.len();
        nodes.extend(part.nodes);
        tris.extend(part.tris.into_iter().map(|[a, b, c]| [a + offset, b + offset, c + offset]));
    }

    assemble(nodes, tris, &crack_segs, tol)
}

/// One uniform refinement step: every triangle splits into four via edge
/// midpoints. Crack seams stay separated because midpoints are keyed by node
/// indices, and the two sides of a crack use distinct indices.
pub fn refine(m: &TriMesh) -> TriMesh {
    let mut nodes = m.nodes.clone();
    let mut midpoint: HashMap<(usize, usize), usize> = HashMap::new();
    let mut mid = |i: usize, j: usize, nodes: &mut Vec<Point2>| -> usize {
        let key = (i.min(j), i.max(j));
        *midpoint.entry(key).or_insert_with(|| {
            nodes.push((nodes[i] + nodes[j]) * 0.5);
            nodes.len() - 1
        })
    };
    let mut tris = Vec::with_capacity(4 * m.tris.len());
    for &[i, j, k] in &m.tris {
        let ij = mid(i, j, &mut nodes);
        let jk = mid(j, k, &mut nodes);
        let ki = mid(k, i, &mut nodes);
        tris.push([i, ij, ki]);
        tris.push([ij, j, jk]);
        tris.push([ki, jk, k]);
        tris.push([ij, jk, ki]);
    }
    let mut boundary = Vec::with_capacity(2 * m.boundary.len());
    for e in &m.boundary {
        let mab = mid(e.a, e.b, &mut nodes);
        boundary.push(BoundaryEdge { a: e.a, b: mab, kind: e.kind });
        boundary.push(BoundaryEdge { a: mab, b: e.b, kind: e.kind });
    }
    let seam_pairs = coincident_pairs(&nodes);
    TriMesh { nodes, tris, boundary, seam_pairs }
}

/// Consistency checks of a mesh against its polygon: positive triangle
/// orientation, manifold edges, and matching area and boundary length.
pub fn validate(m: &TriMesh, poly: &GeneralizedPolygon) -> Result<(), MeshError> {
    let scale = poly.bbox().diameter();
    for t in 0..m.tris.len() {
        let a = m.tri_area(t);
        if !(a > 0.0) {
            return Err(MeshError::Invalid(format!(
                "triangle {} has non-positive area {}",
                t, a
            )));
        }
        for &v in &m.tris[t] {
            if v >= m.nodes.len() {
                return Err(MeshError::Invalid(format!("triangle {} references node {}", t, v)));
            }
        }
    }
    let mut incidence: HashMap<(usize, usize), u32> = HashMap::new();
    for t in &m.tris {
        for r in 0..3 {
            let (i, j) = (t[r], t[(r + 1) % 3]);
            *incidence.entry((i.min(j), i.max(j))).or_insert(0) += 1;
        }
    }
    for (&(i, j), &cnt) in &incidence {
        if cnt > 2 {
            return Err(MeshError::Invalid(format!(
                "edge ({}, {}) belongs to {} triangles",
                i, j, cnt
            )));
        }
    }
    let mut boundary_set: HashMap<(usize, usize), u32> = HashMap::new();
    for e in &m.boundary {
        *boundary_set.entry((e.a.min(e.b), e.a.max(e.b))).or_insert(0) += 1;
    }
    for (key, &cnt) in &incidence {
        let listed = boundary_set.get(key).copied().unwrap_or(0);
        if cnt == 1 && listed != 1 {
            return Err(MeshError::Invalid(format!(
                "edge ({}, {}) is a rim edge listed {} times",
                key.0, key.1, listed
            )));
        }
        if cnt == 2 && listed != 0 {
            return Err(MeshError::Invalid(format!(
                "interior edge ({}, {}) appears in the boundary list",
                key.0, key.1
            )));
        }
    }
    if boundary_set.values().sum::<u32>() as usize != m.boundary.len() {
        return Err(MeshError::Invalid("duplicate boundary edges".to_string()));
    }

    let want_area = area(poly);
    if (m.total_area() - want_area).abs() > 1e-10 * want_area.max(1.0) {
        return Err(MeshError::Invalid(format!(
            "mesh area {} differs from polygon area {}",
            m.total_area(),
            want_area
        )));
    }
    let want_per = generalized_perimeter(poly);
    if (m.boundary_length() - want_per).abs() > 1e-10 * want_per.max(1.0) {
        return Err(MeshError::Invalid(format!(
            "mesh boundary length {} differs from generalized perimeter {}",
            m.boundary_length(),
            want_per
        )));
    }
    for p in &m.nodes {
        if !p.is_finite() || p.x.abs() + p.y.abs() > 1e6 * scale.max(1.0) {
            return Err(MeshError::Invalid("node coordinates out of range".to_string()));
        }
    }
    Ok(())
}

struct RawMesh {
    nodes: Vec<Point2>,
    tris: Vec<[usize; 3]>,
}

fn crack_segments(poly: &GeneralizedPolygon) -> Vec<(Point2, Point2)> {
    poly.components()
        .iter()
        .flat_map(|c| c.cracks.iter().flat_map(|k| k.segments().collect::<Vec<_>>()))
        .collect()
}

fn mesh_component(comp: &Component, h: f64, tol: f64) -> Result<RawMesh, MeshError> {
    // Constraint soup: walk ring plus crack polylines, split at mutual
    // meeting points and snapped so shared endpoints are bitwise equal.
    let mut raw: Vec<(Point2, Point2)> = Vec::new();
    for i in 0..comp.walk.len() {
        raw.push(comp.walk.edge(i));
    }
    for k in &comp.cracks {
        raw.extend(k.segments());
    }
    let segs = canonical_split(&raw, tol);

    // Constraints go in whole; the area criterion below makes the refiner
    // subdivide them. Pre-chunking at h spacing used to defeat spade's
    // small-angle bookkeeping (it tracks ancestry per inserted constraint)
    // and caused unbounded splitting cascades on slanted walls.
    let mut cdt = ConstrainedDelaunayTriangulation::<SpadePoint<f64>>::new();
    for &(a, b) in &segs {
        cdt.add_constraint_edge(SpadePoint::new(a.x, a.y), SpadePoint::new(b.x, b.y))
            .map_err(|e| MeshError::Insertion(format!("{:?}", e)))?;
    }

    let max_area = 3.0_f64.sqrt() / 4.0 * h * h;
    let expected = (comp.walk.area() / max_area).ceil() as usize;
    // The layer peeling behind exclude_outer_faces assumes closed constraint
    // shapes; a crack is open and derails it, so only crack-free components
    // may skip refining the faces between walk and convex hull.
    let params = RefinementParameters::<f64>::new()
        .with_angle_limit(AngleLimit::from_deg(20.0))
        .with_max_allowed_area(max_area)
        .with_max_additional_vertices((expected * 8).max(20_000))
        .exclude_outer_faces(comp.cracks.is_empty());
    let outcome = cdt.refine(params);
    if !outcome.refinement_complete {
        return Err(MeshError::Incomplete(h));
    }

    let mut nodes = vec![Point2::new(0.0, 0.0); cdt.num_vertices()];
    for v in cdt.vertices() {
        let p = v.position();
        nodes[v.index()] = Point2::new(p.x, p.y);
    }
    // Faces never straddle constraint edges, so the centroid decides whether
    // the triangle lies in the domain.
    let mut tris = Vec::new();
    for f in cdt.inner_faces() {
        let [a, b, c] = f.vertices();
        let t = [a.index(), b.index(), c.index()];
        let centroid = (nodes[t[0]] + nodes[t[1]] + nodes[t[2]]) * (1.0 / 3.0);
        if comp.walk.locate(centroid, tol) == crate::geom::predicates::InOut::Inside {
            tris.push(t);
        }
    }
    // Drop nodes the face extraction never references (outer helpers).
    let mut remap = vec![usize::MAX; nodes.len()];
    let mut packed = Vec::new();
    for t in &mut tris {
        for v in t.iter_mut() {
            if remap[*v] == usize::MAX {
                remap[*v] = packed.len();
                packed.push(nodes[*v]);
            }
            *v = remap[*v];
        }
    }
    Ok(RawMesh { nodes: packed, tris })
}

/// Splits segments at mutual meeting points; every endpoint is snapped to a
/// canonical representative so coincident points agree bitwise.
fn canonical_split(raw: &[(Point2, Point2)], tol: f64) -> Vec<(Point2, Point2)> {
    let mut reps: Vec<Point2> = Vec::new();
    for &(a, b) in raw {
        for p in [a, b] {
            if !reps.iter().any(|r| r.dist(p) <= tol) {
                reps.push(p);
            }
        }
    }
    let canon = |p: Point2, reps: &mut Vec<Point2>| -> Point2 {
        match reps.iter().find(|r| r.dist(p) <= 4.0 * tol) {
            Some(r) => *r,
            None => {
                reps.push(p);
                p
            }
        }
    };
    let mut out = Vec::new();
    for (i, &(a, b)) in raw.iter().enumerate() {
        let len = a.dist(b);
        if len <= tol {
            continue;
        }
        let mut ts = vec![0.0, 1.0];
        for (j, &(c, d)) in raw.iter().enumerate() {
            if i == j {
                continue;
            }
            use crate::geom::predicates::{seg_meet, SegMeet};
            match seg_meet(a, b, c, d, tol) {
                SegMeet::Disjoint => {}
                SegMeet::Point { t, .. } => ts.push(t),
                SegMeet::Overlap { t0, t1 } => {
                    ts.push(t0);
                    ts.push(t1);
                }
            }
        }
        ts.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let tol_t = tol / len;
        let mut prev_t = 0.0;
        let mut prev_p = canon(a, &mut reps);
        for &t in &ts {
            if t - prev_t > tol_t {
                let q = if t >= 1.0 - tol_t { b } else { a + (b - a) * t };
                let qc = canon(q, &mut reps);
                if qc.dist(prev_p) > tol {
                    out.push((prev_p, qc));
                }
                prev_t = t;
                prev_p = qc;
            }
        }
    }
    // Coincident duplicates collapse to one constraint.
    let mut merged: Vec<(Point2, Point2)> = Vec::new();
    'outer: for (a, b) in out {
        for &(c, d) in &merged {
            if (c.dist(a) <= tol && d.dist(b) <= tol) || (c.dist(b) <= tol && d.dist(a) <= tol) {
                continue 'outer;
            }
        }
        merged.push((a, b));
    }
    merged
}

/// Duplicates crack nodes per side, extracts the boundary, and groups
/// coincident nodes.
fn assemble(
    mut nodes: Vec<Point2>,
    mut tris: Vec<[usize; 3]>,
    crack_segs: &[(Point2, Point2)],
    tol: f64,
) -> Result<TriMesh, MeshError> {
    let snap = (8.0 * tol).max(1e-12);
    let on_crack =
        |p: Point2| crack_segs.iter().any(|&(a, b)| on_segment(p, a, b, snap));
    let edge_on_crack = |p: Point2, q: Point2| {
        crack_segs
            .iter()
            .any(|&(a, b)| on_segment(p, a, b, snap) && on_segment(q, a, b, snap)
                && on_segment((p + q) * 0.5, a, b, snap))
    };

    // Split the triangle fan at every crack node into its sectors.
    let crack_nodes: Vec<usize> =
        (0..nodes.len()).filter(|&i| on_crack(nodes[i])).collect();
    for v in crack_nodes {
        let incident: Vec<usize> = (0..tris.len())
            .filter(|&t| tris[t].contains(&v))
            .collect();
        if incident.is_empty() {
            continue;
        }
        // Union by shared non-crack edges through v.
        let mut parent: Vec<usize> = (0..incident.len()).collect();
        fn find(parent: &mut Vec<usize>, i: usize) -> usize {
            if parent[i] != i {
                let r = find(parent, parent[i]);
                parent[i] = r;
                r
            } else {
                i
            }
        }
        for x in 0..incident.len() {
            for y in (x + 1)..incident.len() {
                let (tx, ty) = (tris[incident[x]], tris[incident[y]]);
                let shared = tx
                    .iter()
                    .find(|&&w| w != v && ty.contains(&w));
                if let Some(&w) = shared {
                    if !edge_on_crack(nodes[v], nodes[w]) {
                        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                        if rx != ry {
                            parent[rx] = ry;
                        }
                    }
                }
            }
        }
        // Sector index per incident triangle, numbered by first appearance.
        let mut sector_of: HashMap<usize, usize> = HashMap::new();
        let mut n_sectors = 0;
        let sectors: Vec<usize> = (0..incident.len())
            .map(|x| {
                let root = find(&mut parent, x);
                *sector_of.entry(root).or_insert_with(|| {
                    n_sectors += 1;
                    n_sectors - 1
                })
            })
            .collect();
        if n_sectors <= 1 {
            continue;
        }
        // Sector 0 keeps the node; each further sector gets a fresh copy.
        let mut copy_of: Vec<usize> = vec![v];
        for _ in 1..n_sectors {
            nodes.push(nodes[v]);
            copy_of.push(nodes.len() - 1);
        }
        for (x, &t) in incident.iter().enumerate() {
            let id = copy_of[sectors[x]];
            for w in tris[t].iter_mut() {
                if *w == v {
                    *w = id;
                }
            }
        }
    }

    // Boundary extraction: edges with a single incident triangle.
    let mut incidence: HashMap<(usize, usize), u32> = HashMap::new();
    for t in &tris {
        for r in 0..3 {
            let (i, j) = (t[r], t[(r + 1) % 3]);
            *incidence.entry((i.min(j), i.max(j))).or_insert(0) += 1;
        }
    }
    let mut boundary = Vec::new();
    let mut keys: Vec<(usize, usize)> = incidence
        .iter()
        .filter(|(_, &c)| c == 1)
        .map(|(&k, _)| k)
        .collect();
    keys.sort_unstable();
    for (i, j) in keys {
        let kind = if edge_on_crack(nodes[i], nodes[j]) {
            BoundaryKind::CrackSide
        } else {
            BoundaryKind::Wall
        };
        boundary.push(BoundaryEdge { a: i, b: j, kind });
    }

    let seam_pairs = coincident_pairs(&nodes);
    Ok(TriMesh { nodes, tris, boundary, seam_pairs })
}

/// All unordered pairs of distinct nodes with bitwise equal coordinates.
fn coincident_pairs(nodes: &[Point2]) -> Vec<(usize, usize)> {
    let mut keyed: Vec<(u64, u64, usize)> = nodes
        .iter()
        .enumerate()
        .map(|(i, p)| (p.x.to_bits(), p.y.to_bits(), i))
        .collect();
    keyed.sort_unstable();
    let mut pairs = Vec::new();
    let mut start = 0;
    while start < keyed.len() {
        let mut end = start + 1;
        while end < keyed.len() && keyed[end].0 == keyed[start].0 && keyed[end].1 == keyed[start].1
        {
            end += 1;
        }
        for x in start..end {
            for y in (x + 1)..end {
                let (i, j) = (keyed[x].2, keyed[y].2);
                pairs.push((i.min(j), i.max(j)));
            }
        }
        start = end;
    }
    pairs.sort_unstable();
    pairs
}
