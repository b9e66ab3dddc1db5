//! Seifert surfaces and Seifert matrices.
//!
//! For a diagram the surface comes from Seifert's algorithm: one disk per
//! Seifert circle and one half-twisted band per crossing. H1 is generated by
//! the fundamental cycles of the Seifert graph. Each cycle is realised by a
//! curve that crosses the bands of its cycle and, on every disk it visits,
//! runs along the boundary in the direction of the circle from the band where
//! it arrives to the band where it leaves. Linking numbers are then sums of
//! local contributions at crossings, which depend only on the crossing sign,
//! on whether the two circles are side by side or nested, and on how each of
//! the two curves passes the crossing.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::diagram::{integer_tokens, BraidWord, PDCode};
use crate::error::{KnotError, Result};
use crate::linalg::{det_bareiss, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeifertSource {
    FromDiagram,
    FromBraid,
    UserSupplied,
}

/// Square integer matrix `V` with `det(V - V^T) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeifertMatrix {
    #[serde(serialize_with = "ser_matrix")]
    entries: IntMatrix,
    source: SeifertSource,
}

fn ser_matrix<S: serde::Serializer>(m: &IntMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<serde_json::Value>> =
        m.iter().map(|r| r.iter().map(crate::polyalg::bigint_json).collect()).collect();
    rows.serialize(s)
}

impl SeifertMatrix {
    pub fn new(entries: IntMatrix, source: SeifertSource) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(KnotError::InvalidSeifert("matrix is not square".into()));
        }
        if !n.is_multiple_of(2) {
            return Err(KnotError::InvalidSeifert(format!("odd size {n}")));
        }
        let skew: IntMatrix = (0..n).map(|i| (0..n).map(|j| &entries[i][j] - &entries[j][i]).collect()).collect();
        let det = det_bareiss(&skew);
        if !det.is_one() {
            return Err(KnotError::InvalidSeifert(format!("det(V - V^T) = {det}, expected 1")));
        }
        Ok(Self { entries, source })
    }

    pub fn user_supplied(entries: IntMatrix) -> Result<Self> {
        Self::new(entries, SeifertSource::UserSupplied)
    }

    pub fn entries(&self) -> &IntMatrix {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn source(&self) -> SeifertSource {
        self.source
    }

    /// Block sum, a Seifert matrix of the connected sum.
    pub fn direct_sum(&self, other: &SeifertMatrix) -> SeifertMatrix {
        let (n, m) = (self.size(), other.size());
        let mut entries = vec![vec![BigInt::from(0); n + m]; n + m];
        for (row, src) in entries.iter_mut().zip(&self.entries) {
            row[..n].clone_from_slice(src);
        }
        for (row, src) in entries[n..].iter_mut().zip(&other.entries) {
            row[n..].clone_from_slice(src);
        }
        let source = if self.source == other.source { self.source } else { SeifertSource::UserSupplied };
        SeifertMatrix { entries, source }
    }

    /// `-V^T`, a Seifert matrix of the mirror image.
    pub fn mirror(&self) -> SeifertMatrix {
        let n = self.size();
        let entries = (0..n).map(|i| (0..n).map(|j| -&self.entries[j][i]).collect()).collect();
        SeifertMatrix { entries, source: self.source }
    }
}

impl fmt::Display for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.size())?;
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            write!(f, "\n{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Parses a size header followed by the rows: `2: 1 1 0 -2`, or the same
/// numbers spread over lines. `0` is the empty matrix.
pub fn parse_seifert(text: &str) -> Result<SeifertMatrix> {
    let tokens = integer_tokens(text, |c| matches!(c, ':' | ',' | '[' | ']'))?;
    let Some(&(n, line, col)) = tokens.first() else {
        return Err(KnotError::parse(1, 1, "missing size header"));
    };
    if n < 0 {
        return Err(KnotError::parse(line, col, "negative size"));
    }
    let n = n as usize;
    let body = &tokens[1..];
    if body.len() != n * n {
        let (l, c) = body.get(n * n).map_or((line, col), |t| (t.1, t.2));
        return Err(KnotError::parse(l, c, format!("expected {} entries for size {n}, found {}", n * n, body.len())));
    }
    let entries = body.chunks(n.max(1)).take(n).map(|row| row.iter().map(|t| BigInt::from(t.0)).collect()).collect();
    SeifertMatrix::user_supplied(entries)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceData {
    pub seifert_circle_count: usize,
    pub crossing_count: usize,
    pub genus: usize,
    /// One edge per crossing, joining the two circles it touches.
    pub seifert_graph: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Config {
    SideBySide,
    LeftOuter,
    RightOuter,
}

/// How a curve passes a crossing: along the left or right circle, or through
/// the band in either direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Piece {
    PassLeft = 0,
    PassRight = 1,
    LeftToRight = 2,
    RightToLeft = 3,
}

/// Doubled local linking contributions, indexed by configuration, sign
/// (positive first), the piece of the curve and the piece of the push-off.
const LOCAL: [[[[i64; 4]; 4]; 2]; 3] = [
    [
        [[0, 0, 1, -1], [0, 0, -1, 1], [0, 0, -1, 1], [0, 0, 1, -1]],
        [[0, 0, 1, -1], [0, 0, -1, 1], [0, 0, 1, -1], [0, 0, -1, 1]],
    ],
    [
        [[0, 0, 2, -2], [0, 0, -1, 1], [1, 0, 0, 1], [-1, 0, 1, -2]],
        [[0, 0, 2, -2], [0, 0, -1, 1], [1, 0, 2, -1], [-1, 0, -1, 0]],
    ],
    [
        [[0, 0, 1, -1], [0, 0, 0, 0], [0, 1, 0, 1], [0, -1, 1, -2]],
        [[0, 0, 1, -1], [0, 0, 0, 0], [0, 1, 2, -1], [0, -1, -1, 0]],
    ],
];

/// Seifert circles of a diagram with their incidence to crossings.
struct Smoothing {
    /// Crossings met along each circle, in the direction of the circle.
    circles: Vec<Vec<usize>>,
    /// `(left, right)` circle at each crossing, strands framed pointing up.
    sides: Vec<(usize, usize)>,
}

fn edge_index(d: &PDCode, c: usize, slot: usize) -> usize {
    2 * c + usize::from(slot != 2 && slot == d.crossings()[c].over_out())
}

fn smoothing(d: &PDCode) -> Result<Smoothing> {
    let n = d.crossing_count();
    let mut next = vec![0; 2 * n];
    let mut head = vec![0; 2 * n];
    for c in 0..n {
        let x = &d.crossings()[c];
        for slot in [2, x.over_out()] {
            let (c2, s2) = d.partner(c, slot);
            let y = &d.crossings()[c2];
            let out = if s2 == 0 { y.over_out() } else { 2 };
            next[edge_index(d, c, slot)] = edge_index(d, c2, out);
            head[edge_index(d, c, slot)] = c2;
        }
    }
    let mut circle_of = vec![usize::MAX; 2 * n];
    let mut circles = Vec::new();
    for e0 in 0..2 * n {
        if circle_of[e0] != usize::MAX {
            continue;
        }
        let id = circles.len();
        let mut seq = Vec::new();
        let mut e = e0;
        while circle_of[e] == usize::MAX {
            circle_of[e] = id;
            seq.push(head[e]);
            e = next[e];
        }
        circles.push(seq);
    }
    let sides = (0..n)
        .map(|c| {
            let x = &d.crossings()[c];
            let (l, r) = if x.sign > 0 { (2, 1) } else { (3, 2) };
            (circle_of[edge_index(d, c, l)], circle_of[edge_index(d, c, r)])
        })
        .collect::<Vec<_>>();
    if let Some(c) = sides.iter().position(|(l, r)| l == r) {
        return Err(KnotError::Internal(format!("crossing {} joins a Seifert circle to itself", c + 1)));
    }
    if n == 0 {
        circles.push(Vec::new());
    }
    Ok(Smoothing { circles, sides })
}

/// Faces of the projection, as the face id to the left of each dart.
fn faces(d: &PDCode) -> (Vec<[usize; 4]>, usize) {
    let n = d.crossing_count();
    let mut face = vec![[usize::MAX; 4]; n];
    let mut count = 0;
    for v in 0..n {
        for s in 0..4 {
            if face[v][s] != usize::MAX {
                continue;
            }
            let (mut w, mut t) = (v, s);
            while face[w][t] == usize::MAX {
                face[w][t] = count;
                let (w2, t2) = d.partner(w, t);
                w = w2;
                t = (t2 + 3) % 4;
            }
            count += 1;
        }
    }
    (face, count)
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let nxt = parent[y];
        parent[y] = r;
        y = nxt;
    }
    r
}

/// Whether each circle runs counterclockwise when `infinity` is the
/// unbounded face.
fn circle_orientations(d: &PDCode, sm: &Smoothing, infinity: usize) -> Result<Vec<bool>> {
    let n = d.crossing_count();
    let (face, face_count) = faces(d);
    if face_count != n + 2 {
        return Err(KnotError::Internal(format!("{face_count} faces for {n} crossings")));
    }
    if infinity >= face_count {
        return Err(KnotError::Internal(format!("no face {infinity}")));
    }
    let mut parent: Vec<usize> = (0..face_count).collect();
    for (v, x) in d.crossings().iter().enumerate() {
        let in_in = if x.over_in() == 3 { 3 } else { 0 };
        let out_out = if x.over_out() == 1 { 1 } else { 2 };
        let (a, b) = (find(&mut parent, face[v][in_in]), find(&mut parent, face[v][out_out]));
        parent[a] = b;
    }
    let mut region_id = vec![usize::MAX; face_count];
    let mut regions = 0;
    for f in 0..face_count {
        let r = find(&mut parent, f);
        if region_id[r] == usize::MAX {
            region_id[r] = regions;
            regions += 1;
        }
    }
    let mut region = |f: usize| region_id[find(&mut parent, f)];
    if regions != sm.circles.len() + 1 {
        return Err(KnotError::Internal(format!("{regions} regions for {} Seifert circles", sm.circles.len())));
    }
    // left and right region of each circle, read off one of its edges
    let mut adjacency = vec![Vec::new(); regions];
    let mut sides_of = vec![(0, 0); sm.circles.len()];
    let mut seen = vec![false; sm.circles.len()];
    for c in 0..n {
        let x = &d.crossings()[c];
        for slot in [2, x.over_out()] {
            let circ = circle_containing(d, sm, c, slot);
            if seen[circ] {
                continue;
            }
            seen[circ] = true;
            let (c2, s2) = d.partner(c, slot);
            let left = region(face[c][slot]);
            let right = region(face[c2][s2]);
            sides_of[circ] = (left, right);
            adjacency[left].push(right);
            adjacency[right].push(left);
        }
    }
    let root = region(infinity);
    let mut depth = vec![usize::MAX; regions];
    depth[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(r) = queue.pop_front() {
        for &s in &adjacency[r] {
            if depth[s] == usize::MAX {
                depth[s] = depth[r] + 1;
                queue.push_back(s);
            }
        }
    }
    if depth.contains(&usize::MAX) {
        return Err(KnotError::Internal("Seifert circles do not bound a tree of regions".into()));
    }
    Ok(sides_of.iter().map(|&(l, r)| depth[l] > depth[r]).collect())
}

fn circle_containing(d: &PDCode, sm: &Smoothing, c: usize, slot: usize) -> usize {
    let x = &d.crossings()[c];
    let (l, r) = sm.sides[c];
    // the edge leaving at slot 2 lies on the left circle iff the crossing is positive
    if (slot == 2) == (x.sign > 0) {
        l
    } else {
        r
    }
}

/// Parent `(edge, vertex)` of each vertex, and the BFS order.
type SpanningTree = (Vec<Option<(usize, usize)>>, Vec<usize>);

fn spanning_tree(sides: &[(usize, usize)], vertices: usize) -> Result<SpanningTree> {
    let mut incident = vec![Vec::new(); vertices];
    for (x, &(l, r)) in sides.iter().enumerate() {
        incident[l].push((x, r));
        incident[r].push((x, l));
    }
    // parent edge and parent vertex
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; vertices];
    let mut depth = vec![usize::MAX; vertices];
    depth[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for &(x, v) in &incident[u] {
            if depth[v] == usize::MAX {
                depth[v] = depth[u] + 1;
                parent[v] = Some((x, u));
                queue.push_back(v);
            }
        }
    }
    if depth.contains(&usize::MAX) {
        return Err(KnotError::Internal("Seifert graph is disconnected".into()));
    }
    Ok((parent, depth))
}

pub fn seifert_surface(d: &PDCode) -> Result<SurfaceData> {
    let sm = smoothing(d)?;
    let s = sm.circles.len();
    let c = d.crossing_count();
    spanning_tree(&sm.sides, s)?;
    if (1 + c) < s || !(1 + c - s).is_multiple_of(2) {
        return Err(KnotError::Internal(format!("{s} Seifert circles for {c} crossings")));
    }
    Ok(SurfaceData { seifert_circle_count: s, crossing_count: c, genus: (1 + c - s) / 2, seifert_graph: sm.sides })
}

pub fn seifert_matrix(d: &PDCode) -> Result<SeifertMatrix> {
    seifert_matrix_with_infinity(d, 0)
}

/// Number of faces of the projection, each a valid choice of unbounded face.
pub fn face_count(d: &PDCode) -> usize {
    if d.crossing_count() == 0 {
        1
    } else {
        faces(d).1
    }
}

/// Seifert matrix computed with the given face of the projection placed at
/// infinity. The congruence class does not depend on the choice.
pub fn seifert_matrix_with_infinity(d: &PDCode, infinity: usize) -> Result<SeifertMatrix> {
    let n = d.crossing_count();
    if n == 0 {
        return SeifertMatrix::new(Vec::new(), SeifertSource::FromDiagram);
    }
    let sm = smoothing(d)?;
    let ccw = circle_orientations(d, &sm, infinity)?;
    let config: Vec<Config> = sm
        .sides
        .iter()
        .map(|&(l, r)| match (ccw[l], ccw[r]) {
            (true, false) => Ok(Config::SideBySide),
            (false, false) => Ok(Config::LeftOuter),
            (true, true) => Ok(Config::RightOuter),
            (false, true) => Err(KnotError::Internal("impossible circle nesting".into())),
        })
        .collect::<Result<_>>()?;
    let (parent, depth) = spanning_tree(&sm.sides, sm.circles.len())?;
    let mut position = vec![Vec::new(); sm.circles.len()];
    for (k, seq) in sm.circles.iter().enumerate() {
        let mut pos = vec![usize::MAX; n];
        for (i, &x) in seq.iter().enumerate() {
            pos[x] = i;
        }
        position[k] = pos;
    }
    let tree_edges: Vec<usize> = parent.iter().flatten().map(|&(x, _)| x).collect();
    let curves: Vec<Vec<Vec<Piece>>> = (0..n)
        .filter(|x| !tree_edges.contains(x))
        .map(|x| {
            let steps = cycle_steps(x, &sm.sides, &parent, &depth);
            curve_pieces(&steps, &sm, &position, n)
        })
        .collect();
    let k = curves.len();
    let mut entries = vec![vec![BigInt::from(0); k]; k];
    for a in 0..k {
        for b in 0..k {
            let mut twice = 0i64;
            for x in 0..n {
                let cfg = config[x] as usize;
                let sg = usize::from(d.crossings()[x].sign < 0);
                for &p in &curves[a][x] {
                    for &q in &curves[b][x] {
                        twice += LOCAL[cfg][sg][p as usize][q as usize];
                    }
                }
            }
            if twice % 2 != 0 {
                return Err(KnotError::Internal("half-integral linking number".into()));
            }
            entries[a][b] = BigInt::from(twice / 2);
        }
    }
    SeifertMatrix::new(entries, SeifertSource::FromDiagram)
        .map_err(|e| KnotError::Internal(format!("diagram Seifert matrix failed validation: {e}")))
}

/// The fundamental cycle of a non-tree crossing as `(crossing, from, to)`
/// steps between circles.
fn cycle_steps(
    x: usize,
    sides: &[(usize, usize)],
    parent: &[Option<(usize, usize)>],
    depth: &[usize],
) -> Vec<(usize, usize, usize)> {
    let (l, r) = sides[x];
    let mut steps = vec![(x, l, r)];
    // walk r and l up to their common ancestor
    let (mut u, mut v) = (r, l);
    let mut up = Vec::new();
    let mut down = Vec::new();
    while u != v {
        if depth[u] >= depth[v] {
            let (e, p) = parent[u].expect("non-root has a parent");
            up.push((e, u, p));
            u = p;
        } else {
            let (e, p) = parent[v].expect("non-root has a parent");
            down.push((e, p, v));
            v = p;
        }
    }
    steps.extend(up);
    steps.extend(down.into_iter().rev());
    steps
}

fn curve_pieces(steps: &[(usize, usize, usize)], sm: &Smoothing, position: &[Vec<usize>], n: usize) -> Vec<Vec<Piece>> {
    let mut pieces = vec![Vec::new(); n];
    for (i, &(x, from, _)) in steps.iter().enumerate() {
        pieces[x].push(if sm.sides[x].0 == from { Piece::LeftToRight } else { Piece::RightToLeft });
        let (next_x, circle, _) = steps[(i + 1) % steps.len()];
        let seq = &sm.circles[circle];
        let mut p = (position[circle][x] + 1) % seq.len();
        let stop = position[circle][next_x];
        while p != stop {
            let y = seq[p];
            pieces[y].push(if sm.sides[y].0 == circle { Piece::PassLeft } else { Piece::PassRight });
            p = (p + 1) % seq.len();
        }
    }
    pieces
}

/// Seifert matrix of the band surface of a braid closure: one disk per strand
/// and one band per letter. Basis loops run through consecutive bands of the
/// same generator.
pub fn seifert_matrix_from_braid(b: &BraidWord) -> Result<SeifertMatrix> {
    let letters = b.letters();
    let mut loops: Vec<(usize, usize, usize)> = Vec::new();
    for i in 1..b.strand_count() {
        let at: Vec<usize> = (0..letters.len()).filter(|&p| letters[p].unsigned_abs() as usize == i).collect();
        loops.extend(at.windows(2).map(|w| (i, w[0], w[1])));
    }
    let sign = |p: usize| if letters[p] > 0 { 1i64 } else { -1 };
    let k = loops.len();
    let mut twice = vec![vec![0i64; k]; k];
    for (a, &(i, p, q)) in loops.iter().enumerate() {
        twice[a][a] = -(sign(p) + sign(q));
        for (c, &(j, r, s)) in loops.iter().enumerate() {
            if j == i && r == q {
                let e = sign(q);
                twice[a][c] = e - 1;
                twice[c][a] = e + 1;
            } else if j == i + 1 {
                twice[a][c] = if p < r && r < q && q < s {
                    2
                } else if r < p && p < s && s < q {
                    -2
                } else {
                    0
                };
            }
        }
    }
    let entries = twice.iter().map(|row| row.iter().map(|&v| BigInt::from(v / 2)).collect()).collect();
    SeifertMatrix::new(entries, SeifertSource::FromBraid)
        .map_err(|e| KnotError::Internal(format!("braid Seifert matrix failed validation: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{braid_to_pd, parse_braid, parse_pd};
    use crate::linalg::int_matrix;

    #[test]
    fn surface_counts() {
        let tref = braid_to_pd(&parse_braid("2: 1 1 1").unwrap()).unwrap();
        let s = seifert_surface(&tref).unwrap();
        assert_eq!((s.seifert_circle_count, s.genus), (2, 1));
        let t25 = braid_to_pd(&parse_braid("2: 1 1 1 1 1").unwrap()).unwrap();
        let s = seifert_surface(&t25).unwrap();
        assert_eq!((s.seifert_circle_count, s.genus), (2, 2));
        let s = seifert_surface(&PDCode::unknot()).unwrap();
        assert_eq!((s.seifert_circle_count, s.genus), (1, 0));
    }

    #[test]
    fn braid_trefoil_matrix() {
        let v = seifert_matrix_from_braid(&parse_braid("2: 1 1 1").unwrap()).unwrap();
        assert_eq!(v.entries(), &int_matrix(&[vec![-1, 0], vec![1, -1]]));
        assert_eq!(seifert_matrix_from_braid(&parse_braid("1:").unwrap()).unwrap().size(), 0);
    }

    #[test]
    fn diagram_matrices_have_the_right_size() {
        let d = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        for f in 0..face_count(&d) {
            assert_eq!(seifert_matrix_with_infinity(&d, f).unwrap().size(), 2);
        }
        assert_eq!(seifert_matrix(&PDCode::unknot()).unwrap().size(), 0);
    }

    #[test]
    fn seifert_text_format() {
        let v = parse_seifert("2: 1 1 0 -2").unwrap();
        assert_eq!(v.entries(), &int_matrix(&[vec![1, 1], vec![0, -2]]));
        assert_eq!(parse_seifert("2\n1 1\n0 -2").unwrap(), v);
        assert_eq!(parse_seifert("0").unwrap().size(), 0);
        assert!(matches!(parse_seifert("2: 1 1 0"), Err(KnotError::Parse { .. })));
        assert!(matches!(parse_seifert("2: 1 0 0 1"), Err(KnotError::InvalidSeifert(_))));
        assert!(matches!(parse_seifert("1: 0"), Err(KnotError::InvalidSeifert(_))));
    }
}
