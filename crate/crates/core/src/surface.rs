//! Closed surfaces as Δ-complex triangulations.
//!
//! A triangulation is a set of `F` triangles whose `3F` sides are glued in
//! pairs. Within triangle `t`, side `s` runs from corner `s` to corner
//! `s + 1 (mod 3)`. A gluing with `flip = false` identifies the two directed
//! sides head-to-tail (consistent when both triangles keep their default
//! orientation); `flip = true` identifies them head-to-head.
//!
//! Self-gluings within one triangle and multiple edges between the same
//! vertices are allowed. Vertices are not stored: they are the orbits of
//! corners under the gluing and are recomputed on demand.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("side {side} is glued to itself or glued more than once")]
    NotAnInvolution { side: Side },
    #[error("side {side} is not glued to anything")]
    IncompleteGluing { side: Side },
    #[error("flip bits disagree across the gluing of side {side}")]
    InconsistentFlip { side: Side },
    #[error("{what} index {index} out of range (bound {bound})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        bound: usize,
    },
    #[error("both sides of the edge at {side} lie on one triangle")]
    SelfGluedEdge { side: Side },
    #[error("vertex {vertex} does not have three corners on three distinct triangles (valence {valence})")]
    BadValence { vertex: usize, valence: usize },
    #[error("a non-orientable surface needs at least one crosscap")]
    InvalidCrosscaps,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// One side of one triangle: half of a glued edge, and the carrier of a flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Side {
    pub triangle: usize,
    pub slot: u8,
}

impl Side {
    pub fn new(triangle: usize, slot: u8) -> Self {
        Side { triangle, slot }
    }

    /// Position of this side in the flat `3F` side table.
    pub fn index(self) -> usize {
        3 * self.triangle + self.slot as usize
    }

    pub fn from_index(index: usize) -> Self {
        Side::new(index / 3, (index % 3) as u8)
    }

    pub fn tail(self) -> u8 {
        self.slot
    }

    pub fn head(self) -> u8 {
        (self.slot + 1) % 3
    }
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.triangle, self.slot)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gluing {
    pub partner: Side,
    pub flip: bool,
}

/// A glued pair of sides, listed with the smaller side first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub first: Side,
    pub second: Side,
    pub flip: bool,
}

/// Whether the two triangles at an edge induce opposite directions on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    Agree,
    Disagree,
}

/// Per-triangle choice of keeping (+1) or reversing (-1) the local cyclic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientationAssignment {
    signs: Vec<i8>,
}

impl OrientationAssignment {
    pub fn all_positive(face_count: usize) -> Self {
        OrientationAssignment {
            signs: vec![1; face_count],
        }
    }

    /// Builds an assignment from explicit signs; anything other than ±1 is rejected.
    pub fn from_signs(signs: Vec<i8>) -> Option<Self> {
        signs
            .iter()
            .all(|&s| s == 1 || s == -1)
            .then_some(OrientationAssignment { signs })
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn sign(&self, triangle: usize) -> i8 {
        self.signs[triangle]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Same assignment with one triangle reversed.
    pub fn flipped(&self, triangle: usize) -> Self {
        let mut signs = self.signs.clone();
        signs[triangle] = -signs[triangle];
        OrientationAssignment { signs }
    }

    /// Agree iff `(flip = false) XOR (signs differ)`.
    pub fn classify(&self, edge: &Edge) -> EdgeKind {
        let differ = self.sign(edge.first.triangle) != self.sign(edge.second.triangle);
        if !edge.flip ^ differ {
            EdgeKind::Agree
        } else {
            EdgeKind::Disagree
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Orientability {
    Orientable(OrientationAssignment),
    Nonorientable,
}

impl Orientability {
    pub fn is_orientable(&self) -> bool {
        matches!(self, Orientability::Orientable(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    faces: usize,
    gluing: Vec<Gluing>,
}

impl Triangulation {
    /// Validates a list of glued side pairs covering all `3F` sides.
    pub fn from_gluing_data(
        face_count: usize,
        pairs: &[(Side, Side, bool)],
    ) -> Result<Self, SurfaceError> {
        let mut table: Vec<Option<Gluing>> = vec![None; 3 * face_count];
        for &(a, b, flip) in pairs {
            for side in [a, b] {
                check_side(side, face_count)?;
            }
            if a == b || table[a.index()].is_some() || table[b.index()].is_some() {
                let culprit = if table[b.index()].is_some() && a != b { b } else { a };
                return Err(SurfaceError::NotAnInvolution { side: culprit });
            }
            table[a.index()] = Some(Gluing { partner: b, flip });
            table[b.index()] = Some(Gluing { partner: a, flip });
        }
        Self::from_side_table(face_count, table)
    }

    /// Validates a per-side table; every side names its own partner and flip bit.
    pub fn from_side_table(
        face_count: usize,
        table: Vec<Option<Gluing>>,
    ) -> Result<Self, SurfaceError> {
        if table.len() != 3 * face_count {
            return Err(SurfaceError::IndexOutOfRange {
                what: "side table length",
                index: table.len(),
                bound: 3 * face_count,
            });
        }
        let mut gluing = Vec::with_capacity(table.len());
        for (i, entry) in table.iter().enumerate() {
            let side = Side::from_index(i);
            let g = entry.ok_or(SurfaceError::IncompleteGluing { side })?;
            check_side(g.partner, face_count)?;
            if g.partner == side {
                return Err(SurfaceError::NotAnInvolution { side });
            }
            match table[g.partner.index()] {
                None => return Err(SurfaceError::IncompleteGluing { side: g.partner }),
                Some(back) if back.partner != side => {
                    return Err(SurfaceError::NotAnInvolution { side })
                }
                Some(back) if back.flip != g.flip => {
                    return Err(SurfaceError::InconsistentFlip { side })
                }
                Some(_) => {}
            }
            gluing.push(g);
        }
        Ok(Triangulation {
            faces: face_count,
            gluing,
        })
    }

    pub fn face_count(&self) -> usize {
        self.faces
    }

    pub fn edge_count(&self) -> usize {
        3 * self.faces / 2
    }

    pub fn vertex_count(&self) -> usize {
        self.corner_vertices().1
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.faces as i64
    }

    pub fn gluing(&self, side: Side) -> Gluing {
        self.gluing[side.index()]
    }

    /// Edges in canonical order: by the smaller of their two sides.
    pub fn edges(&self) -> Vec<Edge> {
        (0..3 * self.faces)
            .filter_map(|i| {
                let side = Side::from_index(i);
                let g = self.gluing[i];
                (side < g.partner).then_some(Edge {
                    first: side,
                    second: g.partner,
                    flip: g.flip,
                })
            })
            .collect()
    }

    /// Index into [`Triangulation::edges`] of the edge containing each side.
    pub fn side_edges(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; 3 * self.faces];
        for (e, edge) in self.edges().iter().enumerate() {
            out[edge.first.index()] = e;
            out[edge.second.index()] = e;
        }
        out
    }

    /// Corner of the partner triangle identified with `corner` (an endpoint of `side`).
    pub fn glued_corner(&self, side: Side, corner: u8) -> (usize, u8) {
        debug_assert!(corner == side.tail() || corner == side.head());
        let g = self.gluing(side);
        let at_tail = corner == side.tail();
        let c = if g.flip == at_tail {
            g.partner.tail()
        } else {
            g.partner.head()
        };
        (g.partner.triangle, c)
    }

    /// Vertex id of every corner `3t + c`, and the number of vertices.
    /// Ids are assigned in order of each orbit's smallest corner.
    pub fn corner_vertices(&self) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(3 * self.faces);
        for i in 0..3 * self.faces {
            let side = Side::from_index(i);
            for corner in [side.tail(), side.head()] {
                let (t, c) = self.glued_corner(side, corner);
                uf.union(3 * side.triangle + corner as usize, 3 * t + c as usize);
            }
        }
        let mut ids = vec![usize::MAX; 3 * self.faces];
        let mut root_id = vec![usize::MAX; 3 * self.faces];
        let mut next = 0;
        for (i, id) in ids.iter_mut().enumerate() {
            let r = uf.find(i);
            if root_id[r] == usize::MAX {
                root_id[r] = next;
                next += 1;
            }
            *id = root_id[r];
        }
        (ids, next)
    }

    /// Two-colours the dual graph. Triangle 0 (and the first triangle of each
    /// further component) gets +1; signs propagate breadth-first.
    pub fn orientability(&self) -> Orientability {
        let mut signs = vec![0i8; self.faces];
        for start in 0..self.faces {
            if signs[start] != 0 {
                continue;
            }
            signs[start] = 1;
            let mut queue = VecDeque::from([start]);
            while let Some(t) = queue.pop_front() {
                for slot in 0..3 {
                    let g = self.gluing(Side::new(t, slot));
                    let want = if g.flip { -signs[t] } else { signs[t] };
                    let u = g.partner.triangle;
                    if signs[u] == 0 {
                        signs[u] = want;
                        queue.push_back(u);
                    } else if signs[u] != want {
                        return Orientability::Nonorientable;
                    }
                }
            }
        }
        Orientability::Orientable(OrientationAssignment { signs })
    }

    pub fn is_orientable(&self) -> bool {
        self.orientability().is_orientable()
    }

    pub fn is_connected(&self) -> bool {
        if self.faces == 0 {
            return true;
        }
        let mut seen = vec![false; self.faces];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(t) = stack.pop() {
            for slot in 0..3 {
                let u = self.gluing(Side::new(t, slot)).partner.triangle;
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.faces
    }

    /// Subdivides `triangle` into three around a new interior vertex.
    pub fn pachner_13(&self, triangle: usize) -> Result<Self, SurfaceError> {
        if triangle >= self.faces {
            return Err(SurfaceError::IndexOutOfRange {
                what: "triangle",
                index: triangle,
                bound: self.faces,
            });
        }
        // Piece i has corners (c_i, c_{i+1}, new) and inherits old side i as its side 0.
        let pieces = [triangle, self.faces, self.faces + 1];
        let map = |side: Side| -> Option<(Side, bool)> {
            if side.triangle == triangle {
                Some((Side::new(pieces[side.slot as usize], 0), false))
            } else {
                Some((side, false))
            }
        };
        let extra: Vec<_> = (0..3)
            .map(|i| {
                (
                    Side::new(pieces[i], 1),
                    Side::new(pieces[(i + 1) % 3], 2),
                    false,
                )
            })
            .collect();
        Ok(self.rebuild(self.faces + 2, map, &extra))
    }

    /// Flips the diagonal of the quadrilateral formed by the two triangles at
    /// the edge containing `side`.
    pub fn pachner_22(&self, side: Side) -> Result<Self, SurfaceError> {
        check_side(side, self.faces)?;
        let g = self.gluing(side);
        let (t1, t2) = (side.triangle, g.partner.triangle);
        if t1 == t2 {
            return Err(SurfaceError::SelfGluedEdge { side });
        }
        // t1 has corners a -> b -> c with the shared side a -> b.
        let a = side.tail();
        let b = side.head();
        let (_, ma) = self.glued_corner(side, a);
        let (_, mb) = self.glued_corner(side, b);
        let d = 3 - ma - mb;
        let (ad_side, ad_rev) = side_between(ma, d);
        let (db_side, db_rev) = side_between(d, mb);
        let bc = (side.slot + 1) % 3;
        let ca = (side.slot + 2) % 3;
        // New triangles: (c, a, d) at t1 and (d, b, c) at t2, diagonal d -> c / c -> d.
        let map = |s: Side| -> Option<(Side, bool)> {
            if s.triangle == t1 {
                match s.slot {
                    x if x == ca => Some((Side::new(t1, 0), false)),
                    x if x == bc => Some((Side::new(t2, 1), false)),
                    _ => None,
                }
            } else if s.triangle == t2 {
                match s.slot {
                    x if x == ad_side => Some((Side::new(t1, 1), ad_rev)),
                    x if x == db_side => Some((Side::new(t2, 0), db_rev)),
                    _ => None,
                }
            } else {
                Some((s, false))
            }
        };
        let extra = [(Side::new(t1, 2), Side::new(t2, 2), false)];
        Ok(self.rebuild(self.faces, map, &extra))
    }

    /// Merges the three triangles around a valence-3 vertex into one.
    pub fn pachner_31(&self, vertex: usize) -> Result<Self, SurfaceError> {
        let (ids, count) = self.corner_vertices();
        if vertex >= count {
            return Err(SurfaceError::IndexOutOfRange {
                what: "vertex",
                index: vertex,
                bound: count,
            });
        }
        let corners: Vec<(usize, u8)> = ids
            .iter()
            .enumerate()
            .filter(|&(_, &v)| v == vertex)
            .map(|(i, _)| (i / 3, (i % 3) as u8))
            .collect();
        let bad = SurfaceError::BadValence {
            vertex,
            valence: corners.len(),
        };
        if corners.len() != 3
            || corners[0].0 == corners[1].0
            || corners[1].0 == corners[2].0
            || corners[0].0 == corners[2].0
        {
            return Err(bad);
        }

        // Each piece is (triangle, [c_i, c_{i+1}, v]) in actual corner indices,
        // with all three pieces read in a common orientation.
        let (t0, v0) = corners[0];
        let mut pieces = vec![(t0, [(v0 + 1) % 3, (v0 + 2) % 3, v0])];
        for _ in 0..3 {
            let &(t, e) = pieces.last().unwrap();
            let (s, _) = side_between(e[1], e[2]);
            let spoke = Side::new(t, s);
            let (u, m1) = self.glued_corner(spoke, e[1]);
            let (_, m2) = self.glued_corner(spoke, e[2]);
            if ids[3 * u + m2 as usize] != vertex {
                return Err(bad);
            }
            pieces.push((u, [m1, 3 - m1 - m2, m2]));
        }
        if pieces[3] != pieces[0] {
            return Err(bad);
        }
        pieces.truncate(3);

        let removed = [pieces[1].0, pieces[2].0];
        let renumber = |t: usize| t - removed.iter().filter(|&&r| r < t).count();
        let merged = renumber(t0);
        let outer: Vec<(Side, bool)> = pieces
            .iter()
            .map(|&(t, e)| {
                let (s, rev) = side_between(e[0], e[1]);
                (Side::new(t, s), rev)
            })
            .collect();
        let map = |s: Side| -> Option<(Side, bool)> {
            if let Some(i) = outer.iter().position(|&(o, _)| o == s) {
                Some((Side::new(merged, i as u8), outer[i].1))
            } else if pieces.iter().any(|&(t, _)| t == s.triangle) {
                None
            } else {
                Some((Side::new(renumber(s.triangle), s.slot), false))
            }
        };
        Ok(self.rebuild(self.faces - 2, map, &[]))
    }

    /// Reassembles a triangulation: every surviving old gluing is carried
    /// through `map` (flip toggled once per reversed side), plus `extra` pairs.
    fn rebuild(
        &self,
        face_count: usize,
        map: impl Fn(Side) -> Option<(Side, bool)>,
        extra: &[(Side, Side, bool)],
    ) -> Self {
        let mut pairs: Vec<(Side, Side, bool)> = extra.to_vec();
        for edge in self.edges() {
            match (map(edge.first), map(edge.second)) {
                (Some((a, ra)), Some((b, rb))) => pairs.push((a, b, edge.flip ^ ra ^ rb)),
                (None, None) => {}
                _ => unreachable!("a move dropped only one side of an edge"),
            }
        }
        Triangulation::from_gluing_data(face_count, &pairs)
            .expect("local moves produce a valid gluing")
    }

    /// Combinatorial isomorphism of Δ-complexes, allowing any relabelling of
    /// triangles and any rotation or reflection of each triangle.
    /// Only meaningful for connected triangulations.
    pub fn is_isomorphic(&self, other: &Triangulation) -> bool {
        if self.faces != other.faces {
            return false;
        }
        if self.faces == 0 {
            return true;
        }
        const PERMS: [[u8; 3]; 6] = [
            [0, 1, 2],
            [1, 2, 0],
            [2, 0, 1],
            [0, 2, 1],
            [2, 1, 0],
            [1, 0, 2],
        ];
        (0..other.faces).any(|target| {
            PERMS
                .iter()
                .any(|&perm| self.extend_isomorphism(other, target, perm))
        })
    }

    fn extend_isomorphism(&self, other: &Triangulation, target: usize, perm: [u8; 3]) -> bool {
        let mut image: Vec<Option<(usize, [u8; 3])>> = vec![None; self.faces];
        let mut used = vec![false; other.faces];
        image[0] = Some((target, perm));
        used[target] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(t) = queue.pop_front() {
            let (t_img, pi) = image[t].unwrap();
            for slot in 0..3u8 {
                let side = Side::new(t, slot);
                let g = self.gluing(side);
                let (s_img, rev) = side_between(pi[side.tail() as usize], pi[side.head() as usize]);
                let img_side = Side::new(t_img, s_img);
                let g_img = other.gluing(img_side);
                // Partner corners seen from both complexes.
                let (u, pt) = self.glued_corner(side, side.tail());
                let (_, ph) = self.glued_corner(side, side.head());
                let (u_img, qt) = other.glued_corner(img_side, pi[side.tail() as usize]);
                let (_, qh) = other.glued_corner(img_side, pi[side.head() as usize]);
                let mut sigma = [0u8; 3];
                sigma[pt as usize] = qt;
                sigma[ph as usize] = qh;
                sigma[(3 - pt - ph) as usize] = 3 - qt - qh;
                let (_, rev_partner) = side_between(sigma[g.partner.tail() as usize], sigma[g.partner.head() as usize]);
                if g.flip ^ rev ^ rev_partner != g_img.flip {
                    return false;
                }
                match image[u] {
                    Some(existing) => {
                        if existing != (u_img, sigma) {
                            return false;
                        }
                    }
                    None => {
                        if used[u_img] {
                            return false;
                        }
                        used[u_img] = true;
                        image[u] = Some((u_img, sigma));
                        queue.push_back(u);
                    }
                }
            }
        }
        image.iter().all(Option::is_some)
    }

    /// Text form: header `tri-v1 <F>`, then one `t1 s1 t2 s2 flip` line per edge.
    pub fn serialize(&self) -> String {
        let mut out = format!("tri-v1 {}\n", self.faces);
        for e in self.edges() {
            writeln!(
                out,
                "{} {} {} {} {}",
                e.first.triangle,
                e.first.slot,
                e.second.triangle,
                e.second.slot,
                u8::from(e.flip)
            )
            .unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, SurfaceError> {
        let perr = |line: usize, message: String| SurfaceError::Parse { line, message };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines
            .next()
            .ok_or_else(|| perr(1, "missing `tri-v1` header".into()))?;
        let mut tokens = header.split_whitespace();
        if tokens.next() != Some("tri-v1") {
            return Err(perr(hline, "expected `tri-v1 <F>` header".into()));
        }
        let faces: usize = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| perr(hline, "missing or invalid face count".into()))?;
        if tokens.next().is_some() {
            return Err(perr(hline, "trailing tokens after face count".into()));
        }
        let mut pairs = Vec::new();
        let mut last_line = hline;
        for (n, line) in lines {
            last_line = n;
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 5 {
                return Err(perr(n, format!("expected 5 fields, found {}", fields.len())));
            }
            let num = |i: usize| -> Result<usize, SurfaceError> {
                fields[i]
                    .parse()
                    .map_err(|_| perr(n, format!("invalid integer `{}`", fields[i])))
            };
            let slot = |i: usize| -> Result<u8, SurfaceError> {
                match fields[i] {
                    "0" => Ok(0),
                    "1" => Ok(1),
                    "2" => Ok(2),
                    other => Err(perr(n, format!("invalid slot `{other}`"))),
                }
            };
            let flip = match fields[4] {
                "0" => false,
                "1" => true,
                other => return Err(perr(n, format!("invalid flip token `{other}`"))),
            };
            pairs.push((Side::new(num(0)?, slot(1)?), Side::new(num(2)?, slot(3)?), flip));
        }
        if !faces.is_multiple_of(2) {
            return Err(perr(hline, format!("face count {faces} is odd")));
        }
        if pairs.len() != 3 * faces / 2 {
            return Err(perr(
                last_line,
                format!(
                    "expected {} gluing lines for {} faces, found {}",
                    3 * faces / 2,
                    faces,
                    pairs.len()
                ),
            ));
        }
        Triangulation::from_gluing_data(faces, &pairs)
    }
}

fn check_side(side: Side, face_count: usize) -> Result<(), SurfaceError> {
    if side.triangle >= face_count {
        return Err(SurfaceError::IndexOutOfRange {
            what: "triangle",
            index: side.triangle,
            bound: face_count,
        });
    }
    if side.slot > 2 {
        return Err(SurfaceError::IndexOutOfRange {
            what: "slot",
            index: side.slot as usize,
            bound: 3,
        });
    }
    Ok(())
}

/// Local side joining corners `from -> to`, and whether it runs `to -> from`.
fn side_between(from: u8, to: u8) -> (u8, bool) {
    if (from + 1) % 3 == to {
        (from, false)
    } else {
        debug_assert_eq!((to + 1) % 3, from);
        (to, true)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Boundary letter of a polygon word: generator index and exponent.
type Letter = (usize, bool);

/// Fan-triangulates a polygon with paired boundary letters from a centre vertex.
///
/// Triangle `i` has corners (centre, P_i, P_{i+1}); side 1 is boundary edge `i`.
fn fan(word: &[Letter]) -> Triangulation {
    let m = word.len();
    let mut pairs = Vec::with_capacity(3 * m / 2);
    for i in 0..m {
        pairs.push((Side::new(i, 2), Side::new((i + 1) % m, 0), false));
    }
    for i in 0..m {
        for j in i + 1..m {
            if word[i].0 == word[j].0 {
                // Same exponent: both sides traverse the letter the same way.
                pairs.push((Side::new(i, 1), Side::new(j, 1), word[i].1 == word[j].1));
            }
        }
    }
    Triangulation::from_gluing_data(m, &pairs).expect("fan words pair every letter")
}

/// Closed orientable surface of genus `g`: the `a1 b1 a1⁻¹ b1⁻¹ …` polygon,
/// fan-triangulated (the 2-gon `a a⁻¹` for the sphere).
pub fn orientable_genus_surface(genus: usize) -> Triangulation {
    if genus == 0 {
        return fan(&[(0, true), (0, false)]);
    }
    let word: Vec<Letter> = (0..genus)
        .flat_map(|i| {
            let (a, b) = (2 * i, 2 * i + 1);
            [(a, true), (b, true), (a, false), (b, false)]
        })
        .collect();
    fan(&word)
}

/// Connected sum of `k` projective planes: the `a1 a1 a2 a2 …` polygon, fan-triangulated.
pub fn nonorientable_surface(crosscaps: usize) -> Result<Triangulation, SurfaceError> {
    if crosscaps == 0 {
        return Err(SurfaceError::InvalidCrosscaps);
    }
    let word: Vec<Letter> = (0..crosscaps).flat_map(|i| [(i, true), (i, true)]).collect();
    Ok(fan(&word))
}

/// Boundary of the tetrahedron, consistently oriented.
pub fn tetrahedron() -> Triangulation {
    // Faces as outward-oriented vertex triples of the simplex {0,1,2,3}.
    let faces: [[usize; 3]; 4] = [[0, 1, 2], [0, 3, 1], [0, 2, 3], [1, 3, 2]];
    let mut pairs = Vec::new();
    for (t, f) in faces.iter().enumerate() {
        for s in 0..3u8 {
            let (x, y) = (f[s as usize], f[(s as usize + 1) % 3]);
            for (u, g) in faces.iter().enumerate().skip(t + 1) {
                for r in 0..3u8 {
                    if (g[r as usize], g[(r as usize + 1) % 3]) == (y, x) {
                        pairs.push((Side::new(t, s), Side::new(u, r), false));
                    }
                }
            }
        }
    }
    Triangulation::from_gluing_data(4, &pairs).expect("tetrahedron gluing is valid")
}

/// Applies `steps` random Pachner moves drawn from a ChaCha8 stream seeded
/// with `seed`.
///
/// Each draw picks a move kind uniformly from {1–3, 3–1, 2–2} and then a
/// uniform target (triangle, vertex or edge), using `next_u64() % n`. Illegal
/// draws are discarded and redrawn. The result is fully determined by the
/// input triangulation, `steps` and `seed`.
pub fn random_pachner_walk(start: &Triangulation, steps: usize, seed: u64) -> Triangulation {
    PachnerWalk::new(start, seed).take(steps).last().unwrap_or_else(|| start.clone())
}

/// The triangulations visited by [`random_pachner_walk`], one per move.
pub struct PachnerWalk {
    rng: ChaCha8Rng,
    current: Triangulation,
}

impl PachnerWalk {
    pub fn new(start: &Triangulation, seed: u64) -> Self {
        PachnerWalk {
            rng: ChaCha8Rng::seed_from_u64(seed),
            current: start.clone(),
        }
    }
}

impl Iterator for PachnerWalk {
    type Item = Triangulation;

    fn next(&mut self) -> Option<Triangulation> {
        let rng = &mut self.rng;
        let mut pick = |n: usize| (rng.next_u64() % n as u64) as usize;
        let current = &self.current;
        let next = loop {
            let moved = match pick(3) {
                0 => current.pachner_13(pick(current.face_count())),
                1 => current.pachner_31(pick(current.vertex_count())),
                _ => {
                    let edges = current.edges();
                    current.pachner_22(edges[pick(edges.len())].first)
                }
            };
            if let Ok(next) = moved {
                break next;
            }
        };
        self.current = next.clone();
        Some(next)
    }
}
