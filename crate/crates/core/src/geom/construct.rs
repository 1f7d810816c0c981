//! Geometric surgeries: corner cuts, hole filling, crack detachment.

use super::predicates::{
    on_segment, orient_sign, point_in_ring, point_seg_dist, seg_meet, InOut, SegMeet,
};
use super::{
    Component, Crack, GeneralizedPolygon, GeometryError, Point2, SimplePolygon,
};

/// Which corner to cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CornerRef {
    /// A convex vertex of a component walk with no crack attached to it.
    Walk { component: usize, vertex: usize },
    /// The boundary root of a crack; the cut removes material on one side
    /// of the crack only.
    CrackRoot { component: usize, crack: usize },
}

/// Side selector for cuts at a crack root: `Plus` is the side to the left of
/// the crack direction (root towards interior), `Minus` the right side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CutSide {
    #[default]
    Plus,
    Minus,
}

#[derive(Debug, Clone)]
pub struct CutResult {
    pub polygon: GeneralizedPolygon,
    /// Area of the removed triangle; equals eps * cut_len / 2.
    pub removed_area: f64,
    /// Length of the freshly exposed cut segment.
    pub cut_len: f64,
    /// Total length of the boundary flanks removed by the cut.
    pub flank_len: f64,
    /// flank_len / cut_len; strictly above 1 for a genuine corner.
    pub flank_ratio: f64,
}

/// Cuts a triangle of depth `eps` off a convex corner. The depth is measured
/// along the inward bisector of the corner, so the cut segment is orthogonal
/// to the bisector. At a crack root only the chosen side is cut.
///
/// The returned polygon's side budget grows when the extra cut side needs it.
pub fn cut_corner(
    poly: &GeneralizedPolygon,
    corner: CornerRef,
    eps: f64,
    side: CutSide,
) -> Result<CutResult, GeometryError> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(GeometryError::InvalidParameter(format!(
            "cut depth must be positive, got {}",
            eps
        )));
    }
    match corner {
        CornerRef::Walk { component, vertex } => cut_walk_corner(poly, component, vertex, eps),
        CornerRef::CrackRoot { component, crack } => {
            cut_crack_root(poly, component, crack, eps, side)
        }
    }
}

fn cut_walk_corner(
    poly: &GeneralizedPolygon,
    ci: usize,
    vi: usize,
    eps: f64,
) -> Result<CutResult, GeometryError> {
    let tol = poly.tolerance();
    let comp = poly
        .components()
        .get(ci)
        .ok_or_else(|| GeometryError::InvalidParameter(format!("no component {}", ci)))?;
    let walk = &comp.walk;
    let n = walk.len();
    if vi >= n {
        return Err(GeometryError::InvalidParameter(format!(
            "no vertex {} in component {}",
            vi, ci
        )));
    }
    let v = walk.verts()[vi];
    let prev = walk.verts()[(vi + n - 1) % n];
    let next = walk.verts()[(vi + 1) % n];
    if comp
        .cracks
        .iter()
        .any(|k| k.root().dist(v) <= tol)
    {
        return Err(GeometryError::InvalidCut(
            "vertex carries a crack; cut it through its crack root".to_string(),
        ));
    }
    if orient_sign(prev, v, next, tol) != 1 {
        return Err(GeometryError::InvalidCut(format!(
            "vertex {} of component {} is not convex",
            vi, ci
        )));
    }
    let u_a = (prev - v).normalized();
    let u_b = (next - v).normalized();
    let bis = u_a + u_b;
    if bis.norm() <= 1e-9 {
        return Err(GeometryError::InvalidCut(
            "corner is too flat to cut".to_string(),
        ));
    }
    let d = bis.normalized();
    let cos_half = d.dot(u_a);
    let t = eps / cos_half;
    if t >= v.dist(prev) - tol || t >= v.dist(next) - tol {
        return Err(GeometryError::InvalidCut(format!(
            "cut depth {} reaches past an incident side",
            eps
        )));
    }
    let p_a = v + u_a * t;
    let p_b = v + u_b * t;

    // The cut line must meet only the two incident sides.
    let tri = [v, p_a, p_b];
    let mut obstacles = all_segments(poly);
    obstacles.retain(|&(a, b)| {
        !(points_eq(a, prev, tol) && points_eq(b, v, tol)
            || points_eq(a, v, tol) && points_eq(b, prev, tol)
            || points_eq(a, v, tol) && points_eq(b, next, tol)
            || points_eq(a, next, tol) && points_eq(b, v, tol))
    });
    if triangle_blocked(&tri, &obstacles, &[v], tol).is_some() {
        return Err(GeometryError::InvalidCut(
            "cut triangle touches other boundary parts".to_string(),
        ));
    }

    let mut verts = walk.verts().to_vec();
    verts.splice(vi..=vi, [p_a, p_b]);
    let new_walk = SimplePolygon::new(verts).map_err(|e| {
        GeometryError::InvalidCut(format!("cut breaks the walk: {}", e))
    })?;
    let mut comps = poly.components().to_vec();
    comps[ci] = Component {
        walk: new_walk,
        cracks: comp.cracks.clone(),
    };
    let polygon = rebuild_with_budget(comps, poly.side_budget())?;

    let cut_len = p_a.dist(p_b);
    let flank_len = 2.0 * t;
    Ok(CutResult {
        polygon,
        removed_area: 0.5 * (p_a - v).cross(p_b - v).abs(),
        cut_len,
        flank_len,
        flank_ratio: flank_len / cut_len,
    })
}

fn cut_crack_root(
    poly: &GeneralizedPolygon,
    ci: usize,
    ki: usize,
    eps: f64,
    side: CutSide,
) -> Result<CutResult, GeometryError> {
    let tol = poly.tolerance();
    let comp = poly
        .components()
        .get(ci)
        .ok_or_else(|| GeometryError::InvalidParameter(format!("no component {}", ci)))?;
    let crack = comp
        .cracks
        .get(ki)
        .ok_or_else(|| GeometryError::InvalidParameter(format!("no crack {} in component {}", ki, ci)))?;
    let walk = &comp.walk;
    let n = walk.len();
    let r = crack.root();
    let q1 = crack.polyline[1];
    let u_c = (q1 - r).normalized();

    // Boundary rays leaving the root along the walk.
    let mut rays: Vec<(Point2, f64, RootPlace)> = Vec::new();
    let at_vertex = (0..n).find(|&i| walk.verts()[i].dist(r) <= tol);
    match at_vertex {
        Some(i) => {
            let prev = walk.verts()[(i + n - 1) % n];
            let next = walk.verts()[(i + 1) % n];
            rays.push(((prev - r).normalized(), r.dist(prev), RootPlace::Vertex { i, forward: false }));
            rays.push(((next - r).normalized(), r.dist(next), RootPlace::Vertex { i, forward: true }));
        }
        None => {
            let e = (0..n)
                .find(|&i| {
                    let (a, b) = walk.edge(i);
                    on_segment(r, a, b, tol)
                })
                .ok_or_else(|| {
                    GeometryError::InvalidCut("crack root does not lie on the walk".to_string())
                })?;
            let (a, b) = walk.edge(e);
            rays.push(((a - r).normalized(), r.dist(a), RootPlace::Edge { e, forward: false }));
            rays.push(((b - r).normalized(), r.dist(b), RootPlace::Edge { e, forward: true }));
        }
    }

    // Pick the ray on the requested side of the crack line.
    let nu = u_c.perp();
    let want = match side {
        CutSide::Plus => 1.0,
        CutSide::Minus => -1.0,
    };
    let (w, w_len, place) = rays
        .into_iter()
        .filter(|(u, _, _)| u.dot(nu) * want > 1e-9)
        .max_by(|x, y| (x.0.dot(nu) * want).partial_cmp(&(y.0.dot(nu) * want)).unwrap())
        .ok_or_else(|| {
            GeometryError::InvalidCut("no boundary ray on the requested side of the crack".to_string())
        })?;

    let bis = u_c + w;
    if bis.norm() <= 1e-9 {
        return Err(GeometryError::InvalidCut("crack is flat against the wall".to_string()));
    }
    let d = bis.normalized();
    let (cos_c, cos_w) = (d.dot(u_c), d.dot(w));
    if cos_c <= 1e-9 || cos_w <= 1e-9 {
        return Err(GeometryError::InvalidCut("corner sector is not acute enough".to_string()));
    }
    let t_c = eps / cos_c;
    let t_w = eps / cos_w;
    if t_c >= r.dist(q1) - tol {
        return Err(GeometryError::InvalidCut("cut depth reaches past the first crack segment".to_string()));
    }
    if t_w >= w_len - tol {
        return Err(GeometryError::InvalidCut("cut depth reaches past the incident wall".to_string()));
    }
    let p_c = r + u_c * t_c;
    let p_w = r + w * t_w;

    let tri = [r, p_w, p_c];
    let mut obstacles = all_segments(poly);
    obstacles.retain(|&(a, b)| {
        // Exempt segments through the root that are collinear with the wall
        // ray or with the crack; the triangle legs lie on them by design.
        if !on_segment(r, a, b, tol) {
            return true;
        }
        let dir = (b - a).normalized();
        let along_wall = dir.cross(w).abs() <= 1e-9;
        let along_crack = dir.cross(u_c).abs() <= 1e-9;
        !(along_wall || along_crack)
    });
    if triangle_blocked(&tri, &obstacles, &[r], tol).is_some() {
        return Err(GeometryError::InvalidCut(
            "cut triangle touches other boundary parts".to_string(),
        ));
    }

    // Rebuild the walk with the detour around the removed triangle.
    let mut verts = walk.verts().to_vec();
    match place {
        RootPlace::Vertex { i, forward } => {
            if forward {
                // ray towards verts[i+1]: ... r(=v_i), p_c, p_w, next ...
                verts.splice(i + 1..i + 1, [p_c, p_w]);
            } else {
                verts.splice(i..i, [p_w, p_c]);
            }
        }
        RootPlace::Edge { e, forward } => {
            // Edge runs a -> b; r lies between.
            if forward {
                // wall ray towards b: ... a, r, p_c, p_w, b ...
                verts.splice(e + 1..e + 1, [r, p_c, p_w]);
            } else {
                verts.splice(e + 1..e + 1, [p_w, p_c, r]);
            }
        }
    }
    let new_walk = SimplePolygon::new(verts)
        .map_err(|e| GeometryError::InvalidCut(format!("cut breaks the walk: {}", e)))?;
    let mut cracks = comp.cracks.clone();
    let mut pl = crack.polyline.clone();
    pl[0] = p_c;
    cracks[ki] = Crack::new(pl);
    let mut comps = poly.components().to_vec();
    comps[ci] = Component {
        walk: new_walk,
        cracks,
    };
    let polygon = rebuild_with_budget(comps, poly.side_budget())?;

    let cut_len = p_w.dist(p_c);
    let flank_len = t_c + t_w;
    Ok(CutResult {
        polygon,
        removed_area: 0.5 * (p_w - r).cross(p_c - r).abs(),
        cut_len,
        flank_len,
        flank_ratio: flank_len / cut_len,
    })
}

#[derive(Debug, Clone, Copy)]
enum RootPlace {
    Vertex { i: usize, forward: bool },
    Edge { e: usize, forward: bool },
}

fn points_eq(a: Point2, b: Point2, tol: f64) -> bool {
    a.dist(b) <= tol
}

fn all_segments(poly: &GeneralizedPolygon) -> Vec<(Point2, Point2)> {
    let mut segs = Vec::new();
    for c in poly.components() {
        for i in 0..c.walk.len() {
            segs.push(c.walk.edge(i));
        }
        for k in &c.cracks {
            segs.extend(k.segments());
        }
    }
    segs
}

/// Does any obstacle segment touch the closed triangle away from the allowed
/// contact points? Returns the offending obstacle index.
fn triangle_blocked(
    tri: &[Point2; 3],
    obstacles: &[(Point2, Point2)],
    allowed: &[Point2],
    tol: f64,
) -> Option<usize> {
    let edges = [(tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])];
    for (idx, &(a, b)) in obstacles.iter().enumerate() {
        for &p in &[a, b] {
            if point_in_ring(p, tri, tol) == InOut::Inside {
                return Some(idx);
            }
        }
        for &(ea, eb) in &edges {
            match seg_meet(a, b, ea, eb, tol) {
                SegMeet::Disjoint => {}
                SegMeet::Point { t, .. } => {
                    let p = a + (b - a) * t;
                    if !allowed.iter().any(|q| q.dist(p) <= tol) {
                        return Some(idx);
                    }
                }
                SegMeet::Overlap { t0, t1 } => {
                    let p0 = a + (b - a) * t0;
                    let p1 = a + (b - a) * t1;
                    if p0.dist(p1) > tol {
                        return Some(idx);
                    }
                }
            }
        }
    }
    None
}

/// Rebuilds a polygon, growing the side budget just enough to admit the
/// measured side count (surgeries may add a side).
fn rebuild_with_budget(
    comps: Vec<Component>,
    budget: usize,
) -> Result<GeneralizedPolygon, GeometryError> {
    let generous = GeneralizedPolygon::new(comps, budget + 4)?;
    let sides = super::measures::side_count(&generous);
    if sides <= budget {
        GeneralizedPolygon::new(generous.components().to_vec(), budget)
    } else {
        GeneralizedPolygon::new(generous.components().to_vec(), sides)
    }
}

/// Fills the holes of a polygon: returns the complement of the closure of
/// the unbounded complement component. Cracks and internal interfaces are
/// absorbed; the result is a union of simple polygons without cracks.
pub fn fill_holes(poly: &GeneralizedPolygon) -> Result<GeneralizedPolygon, GeometryError> {
    let tol = poly.tolerance();
    let diam = poly.bbox().diameter();

    // Walk edges only; cracks are interior to the closure and vanish.
    let mut raw: Vec<(Point2, Point2)> = Vec::new();
    for c in poly.components() {
        for i in 0..c.walk.len() {
            raw.push(c.walk.edge(i));
        }
    }
    let fragments = split_at_meets(&raw, tol);

    // Keep fragments with the closure on exactly one side, oriented so the
    // covered side lies on the left.
    let covered = |q: Point2| {
        poly.components()
            .iter()
            .any(|c| c.walk.locate(q, tol) != InOut::Outside)
    };
    let mut directed: Vec<(Point2, Point2)> = Vec::new();
    for &(a, b) in &fragments {
        let mid = (a + b) * 0.5;
        let len = a.dist(b);
        let mut clearance = f64::INFINITY;
        for &(c, d) in &fragments {
            if (c.dist(a) <= tol && d.dist(b) <= tol) || (c.dist(b) <= tol && d.dist(a) <= tol) {
                continue;
            }
            clearance = clearance.min(point_seg_dist(mid, c, d));
        }
        let delta = (clearance * 0.5).min(len * 0.25).min(1e-3 * diam).max(8.0 * tol);
        let nrm = (b - a).perp().normalized();
        let left = covered(mid + nrm * delta);
        let right = covered(mid + nrm * (-delta));
        match (left, right) {
            (true, false) => directed.push((a, b)),
            (false, true) => directed.push((b, a)),
            _ => {}
        }
    }
    if directed.is_empty() {
        return Err(GeometryError::InvalidParameter(
            "polygon has no one-sided boundary".to_string(),
        ));
    }

    // Node graph with tolerance-clustered endpoints.
    let mut nodes: Vec<Point2> = Vec::new();
    let node_id = |p: Point2, nodes: &mut Vec<Point2>| -> usize {
        for (i, q) in nodes.iter().enumerate() {
            if q.dist(p) <= tol {
                return i;
            }
        }
        nodes.push(p);
        nodes.len() - 1
    };
    let edges: Vec<(usize, usize)> = directed
        .iter()
        .map(|&(a, b)| {
            let ia = node_id(a, &mut nodes);
            let ib = node_id(b, &mut nodes);
            (ia, ib)
        })
        .collect();

    // Trace faces keeping the covered region on the left: at each node take
    // the first outgoing edge clockwise from the reversed incoming direction.
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
    for (ei, &(a, _)) in edges.iter().enumerate() {
        out_edges[a].push(ei);
    }
    let mut used = vec![false; edges.len()];
    let mut loops: Vec<Vec<usize>> = Vec::new();
    for start in 0..edges.len() {
        if used[start] {
            continue;
        }
        let mut loop_nodes = Vec::new();
        let mut cur = start;
        loop {
            used[cur] = true;
            let (a, b) = edges[cur];
            loop_nodes.push(a);
            let rev = nodes[a] - nodes[b];
            let rev_ang = rev.y.atan2(rev.x);
            let next = out_edges[b]
                .iter()
                .copied()
                .filter(|&e| !used[e] || edges[e] == edges[start] && e == start)
                .min_by(|&e1, &e2| {
                    let key = |e: usize| {
                        let d = nodes[edges[e].1] - nodes[edges[e].0];
                        let mut delta = rev_ang - d.y.atan2(d.x);
                        delta = delta.rem_euclid(2.0 * std::f64::consts::PI);
                        if delta < 1e-12 {
                            delta = 2.0 * std::f64::consts::PI;
                        }
                        delta
                    };
                    key(e1).partial_cmp(&key(e2)).unwrap()
                });
            match next {
                Some(e) if e == start => break,
                Some(e) => cur = e,
                None => break,
            }
        }
        loops.push(loop_nodes);
    }

    // Keep counter-clockwise loops not contained in any other loop.
    let ring_of = |ids: &[usize]| ids.iter().map(|&i| nodes[i]).collect::<Vec<_>>();
    let mut keep: Vec<Vec<Point2>> = Vec::new();
    for (li, ids) in loops.iter().enumerate() {
        let ring = ring_of(ids);
        if ring.len() < 3 || shoelace(&ring) <= tol * diam {
            continue;
        }
        // Probe point just inside this loop.
        let longest = (0..ring.len())
            .max_by(|&i, &j| {
                let d = |k: usize| ring[k].dist(ring[(k + 1) % ring.len()]);
                d(i).partial_cmp(&d(j)).unwrap()
            })
            .unwrap();
        let (ea, eb) = (ring[longest], ring[(longest + 1) % ring.len()]);
        let probe = (ea + eb) * 0.5 + (eb - ea).perp().normalized() * (1e-6 * diam);
        let contained = loops.iter().enumerate().any(|(lj, other)| {
            lj != li && {
                let oring = ring_of(other);
                oring.len() >= 3 && point_in_ring(probe, &oring, tol) == InOut::Inside
            }
        });
        if !contained {
            keep.push(ring);
        }
    }

    let mut comps = Vec::new();
    for ring in keep {
        let cleaned = drop_collinear(&ring, tol);
        comps.push(Component::simple(SimplePolygon::new(cleaned)?));
    }
    GeneralizedPolygon::new(comps, poly.side_budget())
}

fn shoelace(ring: &[Point2]) -> f64 {
    let n = ring.len();
    let mut s = 0.0;
    for i in 0..n {
        s += ring[i].cross(ring[(i + 1) % n]);
    }
    0.5 * s
}

fn drop_collinear(ring: &[Point2], tol: f64) -> Vec<Point2> {
    let n = ring.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let prev = ring[(i + n - 1) % n];
        let v = ring[i];
        let next = ring[(i + 1) % n];
        if orient_sign(prev, v, next, tol) != 0 {
            out.push(v);
        }
    }
    if out.len() < 3 {
        ring.to_vec()
    } else {
        out
    }
}

/// Splits segments at all mutual meeting points and drops duplicates.
fn split_at_meets(raw: &[(Point2, Point2)], tol: f64) -> Vec<(Point2, Point2)> {
    let mut fragments = Vec::new();
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
        let mut prev = 0.0;
        for &t in &ts {
            if t - prev > tol_t {
                fragments.push((a + (b - a) * prev, a + (b - a) * t));
                prev = t;
            }
        }
    }
    let mut merged: Vec<(Point2, Point2)> = Vec::new();
    'outer: for (a, b) in fragments {
        for &(c, d) in &merged {
            if (c.dist(a) <= tol && d.dist(b) <= tol) || (c.dist(b) <= tol && d.dist(a) <= tol) {
                continue 'outer;
            }
        }
        merged.push((a, b));
    }
    merged
}

/// Opens every crack into a thin notch of width at most `eps` and separates
/// components that share boundary segments, producing a union of simple
/// polygons without cracks. Neither the area nor the generalized perimeter
/// increases, and the result stays within O(eps) in complement Hausdorff
/// distance.
pub fn detach_cracks(
    poly: &GeneralizedPolygon,
    eps: f64,
) -> Result<GeneralizedPolygon, GeometryError> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(GeometryError::InvalidParameter(format!(
            "detachment width must be positive, got {}",
            eps
        )));
    }
    let tol = poly.tolerance();
    let mut comps: Vec<Component> = poly.components().to_vec();

    // Open cracks into notches, declaration order so crack roots resting on
    // earlier cracks land on the walk by the time they are processed.
    for comp in comps.iter_mut() {
        let cracks = std::mem::take(&mut comp.cracks);
        let mut walk_verts = comp.walk.verts().to_vec();
        let pending: Vec<Vec<Point2>> = cracks.into_iter().map(|k| k.polyline).collect();
        for idx in 0..pending.len() {
            let polyline = pending[idx].clone();
            let obstacles: Vec<(Point2, Point2)> = pending[idx + 1..]
                .iter()
                .flat_map(|pl| pl.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>())
                .collect();
            walk_verts = absorb_polyline(walk_verts, &polyline, &obstacles, eps, tol)?;
        }
        comp.walk = SimplePolygon::new(walk_verts).map_err(|e| {
            GeometryError::InvalidParameter(format!("detachment broke a walk: {}", e))
        })?;
    }

    // Separate components sharing boundary segments (slide nested sides
    // inward, otherwise rotate an edge about its far vertex).
    let mut passes = 0;
    loop {
        passes += 1;
        if passes > 64 {
            return Err(GeometryError::InvalidParameter(
                "component separation did not terminate".to_string(),
            ));
        }
        match find_overlap(&comps, tol) {
            None => break,
            Some(ov) => separate_overlap(&mut comps, ov, eps, tol)?,
        }
    }

    rebuild_with_budget(comps, poly.side_budget())
}

/// Absorbs one crack polyline into the walk, one segment at a time: each
/// segment [q, q'] is replaced by the notch q -> q' -> A where A sits on the
/// walk within `eps` of q.
fn absorb_polyline(
    mut verts: Vec<Point2>,
    polyline: &[Point2],
    other_obstacles: &[(Point2, Point2)],
    eps: f64,
    tol: f64,
) -> Result<Vec<Point2>, GeometryError> {
    for si in 0..polyline.len() - 1 {
        let q = polyline[si];
        let q_next = polyline[si + 1];
        let remaining: Vec<(Point2, Point2)> = polyline[si + 1..]
            .windows(2)
            .map(|w| (w[0], w[1]))
            .chain(other_obstacles.iter().copied())
            .collect();
        verts = open_notch(verts, q, q_next, &remaining, eps, tol)?;
    }
    Ok(verts)
}

fn open_notch(
    mut verts: Vec<Point2>,
    q: Point2,
    q_next: Point2,
    obstacles: &[(Point2, Point2)],
    eps: f64,
    tol: f64,
) -> Result<Vec<Point2>, GeometryError> {
    let n = verts.len();
    // Make q a vertex of the walk.
    let qi = match (0..n).find(|&i| verts[i].dist(q) <= tol) {
        Some(i) => i,
        None => {
            let e = (0..n)
                .find(|&i| on_segment(q, verts[i], verts[(i + 1) % n], tol))
                .ok_or_else(|| {
                    GeometryError::InvalidParameter(
                        "crack root does not lie on the walk".to_string(),
                    )
                })?;
            verts.insert(e + 1, q);
            e + 1
        }
    };
    let n = verts.len();
    let prev = verts[(qi + n - 1) % n];
    let next = verts[(qi + 1) % n];

    // Try the anchor forward along the walk, then backward.
    for (target, forward) in [(next, true), (prev, false)] {
        let avail = q.dist(target);
        if avail <= 2.0 * tol {
            continue;
        }
        let delta = eps.min(0.5 * avail);
        let a = q + (target - q).normalized() * delta;
        let tri = [q, a, q_next];
        // The notch must not swallow other boundary parts. Walk edges
        // incident to q and the segment being absorbed are exempt.
        let mut obs: Vec<(Point2, Point2)> = Vec::new();
        for i in 0..n {
            let (ea, eb) = (verts[i], verts[(i + 1) % n]);
            if points_eq(ea, q, tol) || points_eq(eb, q, tol) {
                continue;
            }
            obs.push((ea, eb));
        }
        obs.extend(obstacles.iter().copied());
        if triangle_blocked(&tri, &obs, &[q, a, q_next], tol).is_some() {
            continue;
        }
        let mut candidate = verts.clone();
        if forward {
            candidate.splice(qi + 1..qi + 1, [q_next, a]);
        } else {
            candidate.splice(qi..qi, [a, q_next]);
        }
        if let Ok(p) = SimplePolygon::new(candidate.clone()) {
            let _ = p;
            return Ok(candidate);
        }
    }
    Err(GeometryError::InvalidParameter(format!(
        "detachment width {} is too large to open the crack cleanly",
        eps
    )))
}

struct Overlap {
    comp_a: usize,
    edge_a: usize,
    comp_b: usize,
    edge_b: usize,
    /// b's edge nested inside a's edge span.
    b_nested: bool,
    a_nested: bool,
}

fn find_overlap(comps: &[Component], tol: f64) -> Option<Overlap> {
    for i in 0..comps.len() {
        for j in (i + 1)..comps.len() {
            for ea in 0..comps[i].walk.len() {
                let (a1, a2) = comps[i].walk.edge(ea);
                for eb in 0..comps[j].walk.len() {
                    let (b1, b2) = comps[j].walk.edge(eb);
                    if let SegMeet::Overlap { t0, t1 } = seg_meet(a1, a2, b1, b2, tol) {
                        let p0 = a1 + (a2 - a1) * t0;
                        let p1 = a1 + (a2 - a1) * t1;
                        if p0.dist(p1) <= tol {
                            continue;
                        }
                        let b_nested =
                            on_segment(b1, a1, a2, tol) && on_segment(b2, a1, a2, tol);
                        let a_nested =
                            on_segment(a1, b1, b2, tol) && on_segment(a2, b1, b2, tol);
                        return Some(Overlap {
                            comp_a: i,
                            edge_a: ea,
                            comp_b: j,
                            edge_b: eb,
                            b_nested,
                            a_nested,
                        });
                    }
                }
            }
        }
    }
    None
}

fn separate_overlap(
    comps: &mut [Component],
    ov: Overlap,
    eps: f64,
    tol: f64,
) -> Result<(), GeometryError> {
    // Strictly nested side: slide it inward along a parallel line.
    if ov.b_nested && !ov.a_nested {
        if slide_edge_inward(&mut comps[ov.comp_b], ov.edge_b, eps, tol).is_ok() {
            return Ok(());
        }
    }
    if ov.a_nested && !ov.b_nested {
        if slide_edge_inward(&mut comps[ov.comp_a], ov.edge_a, eps, tol).is_ok() {
            return Ok(());
        }
    }
    // Otherwise (equal spans, staggered overlap, or slide impossible):
    // rotate one edge off the line about its far vertex.
    for (ci, ei) in [(ov.comp_b, ov.edge_b), (ov.comp_a, ov.edge_a)] {
        if rotate_edge_off(&mut comps[ci], ei, eps).is_ok() {
            return Ok(());
        }
    }
    Err(GeometryError::InvalidParameter(
        "cannot separate overlapping components at this width".to_string(),
    ))
}

/// Replaces edge (A, B) by its inward parallel at distance `eps`, trimming
/// the adjacent edges. Fails if the adjacent edges cannot absorb the slide.
fn slide_edge_inward(
    comp: &mut Component,
    e: usize,
    eps: f64,
    tol: f64,
) -> Result<(), GeometryError> {
    let verts = comp.walk.verts().to_vec();
    let n = verts.len();
    let a = verts[e];
    let b = verts[(e + 1) % n];
    let prev = verts[(e + n - 1) % n];
    let next = verts[(e + 2) % n];
    let inward = (b - a).perp().normalized();
    let c = a.dot(inward) + eps;
    let hit = |p: Point2, q: Point2| -> Option<Point2> {
        let denom = (q - p).dot(inward);
        if denom.abs() <= 1e-15 {
            return None;
        }
        let t = (c - p.dot(inward)) / denom;
        if t <= tol || t >= 1.0 - tol {
            return None;
        }
        Some(p + (q - p) * t)
    };
    let a_new = hit(a, prev).ok_or_else(|| {
        GeometryError::InvalidParameter("cannot slide: previous edge too short".to_string())
    })?;
    let b_new = hit(b, next).ok_or_else(|| {
        GeometryError::InvalidParameter("cannot slide: next edge too short".to_string())
    })?;
    if a_new.dist(b_new) <= tol {
        return Err(GeometryError::InvalidParameter(
            "cannot slide: side would collapse".to_string(),
        ));
    }
    let mut out = verts;
    out[e] = a_new;
    out[(e + 1) % n] = b_new;
    comp.walk = SimplePolygon::new(out)
        .map_err(|err| GeometryError::InvalidParameter(format!("slide broke the walk: {}", err)))?;
    Ok(())
}

/// Rotates edge (A, B) off its supporting line by moving B a little way
/// along the following edge (or A along the preceding one).
fn rotate_edge_off(comp: &mut Component, e: usize, eps: f64) -> Result<(), GeometryError> {
    let verts = comp.walk.verts().to_vec();
    let n = verts.len();
    let a = verts[e];
    let b = verts[(e + 1) % n];
    let line_dir = (b - a).normalized();

    // Move B towards the next vertex if that leaves the line.
    let next = verts[(e + 2) % n];
    if (next - b).normalized().cross(line_dir).abs() > 1e-9 {
        let step = eps.min(0.5 * b.dist(next));
        let mut out = verts.clone();
        out[(e + 1) % n] = b + (next - b).normalized() * step;
        if let Ok(w) = SimplePolygon::new(out) {
            comp.walk = w;
            return Ok(());
        }
    }
    // Otherwise move A towards the previous vertex.
    let prev = verts[(e + n - 1) % n];
    if (prev - a).normalized().cross(line_dir).abs() > 1e-9 {
        let step = eps.min(0.5 * a.dist(prev));
        let mut out = verts;
        out[e] = a + (prev - a).normalized() * step;
        if let Ok(w) = SimplePolygon::new(out) {
            comp.walk = w;
            return Ok(());
        }
    }
    Err(GeometryError::InvalidParameter(
        "cannot rotate edge off the shared line".to_string(),
    ))
}
