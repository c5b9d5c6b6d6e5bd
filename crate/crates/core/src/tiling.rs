//! Toroidal quotients of the square and triangular tilings and the complexes
//! derived from them by duality, line complexes and carving.
//!
//! Plane frame: integer coordinates, x to the right and y up. The triangular
//! tiling is the grid plus one diagonal per unit square; `anti` uses the
//! diagonal from `(x+1, y)` to `(x, y+1)`, `main` the one from `(x, y)` to
//! `(x+1, y+1)`. Neighbour steps in the anti frame are `(±1, 0)`, `(0, ±1)`
//! and `±(1, -1)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{
    dual_torus, line_complex, Cell, CellComplex, CellId, ComplexError, Rank, VertexLabel,
};
use crate::lattice::{ColorForm, Lattice2D, LatticeError, Point, DEFAULT_COSET_BOUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TilingError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("quotient is too small for a simple skeleton: {0}")]
    SkeletonNotSimple(String),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("cannot parse tiling spec {0:?}")]
    Parse(String),
    #[error("lattice {lattice} is not compatible with {family}: {reason}")]
    IncompatibleLattice { family: Family, lattice: Lattice2D, reason: String },
    #[error("family {0} has no {1} chirality")]
    InvalidChirality(Family, Chirality),
    #[error("deleted vertices {0} and {1} are adjacent")]
    NotIndependent(CellId, CellId),
    #[error("face {0} contains more than one deleted vertex")]
    FaceWithTwoDeleted(CellId),
    #[error("deleted edge {0} does not border two faces")]
    BoundaryEdge(CellId),
    #[error("face {0} loses more than one edge")]
    DoubleMerge(CellId),
    #[error("merged region around face {0} is not a disk with a single border cycle")]
    RegionNotDisk(CellId),
    #[error("vertex {0} would be left inside a merged face")]
    IsolatedVertex(CellId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chirality {
    Anti,
    Main,
}

impl fmt::Display for Chirality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chirality::Anti => "anti",
            Chirality::Main => "main",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Frame {
    Square,
    Triangular(Chirality),
}

/// Plane role of a cell of a base tiling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Vertex,
    H,
    V,
    D,
    Square,
    Up,
    Down,
}

impl Role {
    /// Role key used by the color forms.
    pub fn key(self) -> &'static str {
        match self {
            Role::Vertex => "vertex",
            Role::H => "h",
            Role::V => "v",
            Role::D => "d",
            Role::Square => "face",
            Role::Up => "up",
            Role::Down => "down",
        }
    }
}

/// A base-tiling cell: its role and the base point it hangs off.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlaneCell {
    pub role: Role,
    pub base: Point,
}

fn add(p: Point, q: Point) -> Point {
    (p.0 + q.0, p.1 + q.1)
}

fn sub(p: Point, q: Point) -> Point {
    (p.0 - q.0, p.1 - q.1)
}

/// Graph distance in the anti-frame triangular grid.
pub fn hex_distance(p: Point) -> i64 {
    p.0.abs().max(p.1.abs()).max((p.0 + p.1).abs())
}

const ANTI_STEPS: [Point; 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];

impl Frame {
    pub fn edge_roles(self) -> &'static [Role] {
        match self {
            Frame::Square => &[Role::H, Role::V],
            Frame::Triangular(_) => &[Role::H, Role::V, Role::D],
        }
    }

    pub fn face_roles(self) -> &'static [Role] {
        match self {
            Frame::Square => &[Role::Square],
            Frame::Triangular(_) => &[Role::Up, Role::Down],
        }
    }

    /// Plane end points of an edge.
    pub fn edge_points(self, role: Role, p: Point) -> [Point; 2] {
        match (role, self) {
            (Role::H, _) => [p, add(p, (1, 0))],
            (Role::V, _) => [p, add(p, (0, 1))],
            (Role::D, Frame::Triangular(Chirality::Anti)) => [add(p, (1, 0)), add(p, (0, 1))],
            (Role::D, Frame::Triangular(Chirality::Main)) => [p, add(p, (1, 1))],
            _ => panic!("{role:?} is not an edge role of {self:?}"),
        }
    }

    /// Plane border cycle of a face.
    pub fn face_points(self, role: Role, p: Point) -> Vec<Point> {
        let offs: &[Point] = match (role, self) {
            (Role::Square, Frame::Square) => &[(0, 0), (1, 0), (1, 1), (0, 1)],
            (Role::Up, Frame::Triangular(Chirality::Anti)) => &[(0, 0), (1, 0), (0, 1)],
            (Role::Down, Frame::Triangular(Chirality::Anti)) => &[(1, 0), (1, 1), (0, 1)],
            (Role::Up, Frame::Triangular(Chirality::Main)) => &[(0, 0), (1, 0), (1, 1)],
            (Role::Down, Frame::Triangular(Chirality::Main)) => &[(0, 0), (1, 1), (0, 1)],
            _ => panic!("{role:?} is not a face role of {self:?}"),
        };
        offs.iter().map(|&o| add(p, o)).collect()
    }

    /// Number of colors minus one of the frame's closed form.
    pub fn k(self) -> u8 {
        match self {
            Frame::Square => 4,
            Frame::Triangular(_) => 6,
        }
    }

    pub fn color_form(self) -> ColorForm {
        match self {
            Frame::Square => ColorForm::square(),
            Frame::Triangular(Chirality::Anti) => ColorForm::triangular(),
            Frame::Triangular(Chirality::Main) => ColorForm::triangular_main(),
        }
    }
}

/// Plane embedding data: vertex positions and, for every edge, the plane
/// displacement from its lower end id to its higher end id. Faces are lifted
/// by walking their borders.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Geometry {
    pub positions: BTreeMap<CellId, [f64; 2]>,
    pub steps: BTreeMap<CellId, [f64; 2]>,
}

impl Geometry {
    fn step_from(&self, x: &CellComplex, e: CellId, from: CellId) -> [f64; 2] {
        let s = self.steps[&e];
        if x.edge_ends(e).0 == from {
            s
        } else {
            [-s[0], -s[1]]
        }
    }

    /// Plane points of a face border, starting at the first border vertex.
    pub fn lifted_border(&self, x: &CellComplex, f: CellId) -> Vec<[f64; 2]> {
        let b = x.border(f);
        let mut pts = vec![self.positions[&b.vertices[0]]];
        for i in 0..b.len() - 1 {
            let s = self.step_from(x, b.edges[i], b.vertices[i]);
            let last = pts[i];
            pts.push([last[0] + s[0], last[1] + s[1]]);
        }
        pts
    }

    fn centroid(pts: &[[f64; 2]]) -> [f64; 2] {
        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p[0]).sum();
        let sy: f64 = pts.iter().map(|p| p[1]).sum();
        [sx / n, sy / n]
    }

    fn restricted(&self, x: &CellComplex) -> Geometry {
        Geometry {
            positions: self
                .positions
                .iter()
                .filter(|(id, _)| x.contains_id(**id))
                .map(|(a, b)| (*a, *b))
                .collect(),
            steps: self
                .steps
                .iter()
                .filter(|(id, _)| x.contains_id(**id))
                .map(|(a, b)| (*a, *b))
                .collect(),
        }
    }
}

/// A complex on a torus together with its lattice, plane frame and plane data.
#[derive(Clone, Debug)]
pub struct TorusComplex {
    pub complex: CellComplex,
    pub lattice: Lattice2D,
    pub frame: Frame,
    /// Plane role of cells inherited unchanged from a base tiling.
    pub roles: BTreeMap<CellId, PlaneCell>,
    pub geometry: Geometry,
}

impl TorusComplex {
    /// Face-size fan around every vertex, tallied.
    pub fn vertex_configurations(&self) -> Result<BTreeMap<Vec<usize>, usize>, ComplexError> {
        let mut out = BTreeMap::new();
        for &v in self.complex.vertices() {
            *out.entry(self.complex.vertex_configuration(v)?).or_insert(0) += 1;
        }
        Ok(out)
    }

    /// Face count by border length.
    pub fn face_sizes(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for &f in self.complex.faces() {
            *out.entry(self.complex.border(f).len()).or_insert(0) += 1;
        }
        out
    }

    /// Representative plane point of a vertex cell.
    pub fn point_of(&self, v: CellId) -> Option<Point> {
        self.roles.get(&v).filter(|c| c.role == Role::Vertex).map(|c| c.base)
    }

    /// The vertex cell sitting at a plane point.
    pub fn vertex_at(&self, p: Point) -> Option<CellId> {
        self.complex.vertex_by_label(self.lattice.coset_index(p) as VertexLabel)
    }
}

fn not_simple(e: ComplexError) -> TilingError {
    match e {
        ComplexError::DuplicateCell(a, b) => {
            TilingError::SkeletonNotSimple(format!("cells {a} and {b} coincide in the quotient"))
        }
        ComplexError::NonCyclicBorder(f) => {
            TilingError::SkeletonNotSimple(format!("face {f} repeats a vertex in the quotient"))
        }
        other => TilingError::Complex(other),
    }
}

/// Quotient of the base tiling of `frame` by `lattice`. Vertex `i` is the
/// `i`-th coset representative (ordered by `(y, x)`) and carries label `i`;
/// edges and faces follow in representative order.
pub fn gen_base(lattice: Lattice2D, frame: Frame) -> Result<TorusComplex, TilingError> {
    let reps = lattice.cosets(DEFAULT_COSET_BOUND)?;
    let n = reps.len() as u32;
    let label = |p: Point| lattice.coset_index(p) as VertexLabel;
    let mut cells = Vec::new();
    let mut roles = BTreeMap::new();
    let mut geometry = Geometry::default();
    for (i, &p) in reps.iter().enumerate() {
        cells.push(Cell::vertex(i as u32, i as u32));
        roles.insert(CellId(i as u32), PlaneCell { role: Role::Vertex, base: p });
        geometry.positions.insert(CellId(i as u32), [p.0 as f64, p.1 as f64]);
    }
    let mut id = n;
    for &p in &reps {
        for &role in frame.edge_roles() {
            let [a, b] = frame.edge_points(role, p);
            let (la, lb) = (label(a), label(b));
            if la == lb {
                return Err(TilingError::SkeletonNotSimple(format!(
                    "{role:?} edge at {p:?} is a loop"
                )));
            }
            let d = sub(b, a);
            let step = if la < lb { d } else { (-d.0, -d.1) };
            cells.push(Cell::edge(id, la, lb));
            roles.insert(CellId(id), PlaneCell { role, base: p });
            geometry.steps.insert(CellId(id), [step.0 as f64, step.1 as f64]);
            id += 1;
        }
    }
    for &p in &reps {
        for &role in frame.face_roles() {
            let border: Vec<_> = frame.face_points(role, p).into_iter().map(label).collect();
            cells.push(Cell::face(id, &border));
            roles.insert(CellId(id), PlaneCell { role, base: p });
            id += 1;
        }
    }
    let complex = CellComplex::build(cells).map_err(not_simple)?;
    Ok(TorusComplex { complex, lattice, frame, roles, geometry })
}

pub fn gen_square(lattice: Lattice2D) -> Result<TorusComplex, TilingError> {
    gen_base(lattice, Frame::Square)
}

pub fn gen_triangular(lattice: Lattice2D, chirality: Chirality) -> Result<TorusComplex, TilingError> {
    gen_base(lattice, Frame::Triangular(chirality))
}

/// Toroidal dual with plane data: dual vertices sit at face centroids.
pub fn dual_of(t: &TorusComplex) -> Result<(TorusComplex, BTreeMap<CellId, CellId>), TilingError> {
    let d = dual_torus(&t.complex)?;
    let x = &t.complex;
    let mut lifts = BTreeMap::new();
    for &f in x.faces() {
        lifts.insert(f, t.geometry.lifted_border(x, f));
    }
    let centroid = |f: CellId| Geometry::centroid(&lifts[&f]);
    // centroid of f measured from its border vertex v
    let offset = |f: CellId, v: CellId| {
        let i = x.border(f).vertices.iter().position(|&w| w == v).unwrap();
        let c = centroid(f);
        let p = lifts[&f][i];
        [c[0] - p[0], c[1] - p[1]]
    };
    let mut geometry = Geometry::default();
    for (&new, &old) in &d.origin {
        match d.complex.rank_of(new) {
            Rank::Vertex => {
                geometry.positions.insert(new, centroid(old));
            }
            Rank::Edge => {
                let (a, _) = x.edge_ends(old);
                let (na, nb) = d.complex.edge_ends(new);
                let (oa, ob) = (offset(d.origin[&na], a), offset(d.origin[&nb], a));
                geometry.steps.insert(new, [ob[0] - oa[0], ob[1] - oa[1]]);
            }
            Rank::Face => {}
        }
    }
    let torus = TorusComplex {
        complex: d.complex,
        lattice: t.lattice,
        frame: t.frame,
        roles: BTreeMap::new(),
        geometry,
    };
    Ok((torus, d.origin))
}

/// Line complex with plane data: line vertices sit at edge midpoints.
pub fn line_of(t: &TorusComplex) -> Result<(TorusComplex, BTreeMap<CellId, CellId>), TilingError> {
    let l = line_complex(&t.complex)?;
    let x = &t.complex;
    let half = |e: CellId, from: CellId| {
        let s = t.geometry.step_from(x, e, from);
        [s[0] / 2.0, s[1] / 2.0]
    };
    let mut geometry = Geometry::default();
    for (&new, &old) in &l.origin {
        match l.complex.rank_of(new) {
            Rank::Vertex => {
                let (a, _) = x.edge_ends(old);
                let p = t.geometry.positions[&a];
                let h = half(old, a);
                geometry.positions.insert(new, [p[0] + h[0], p[1] + h[1]]);
            }
            Rank::Edge => {
                let (na, nb) = l.complex.edge_ends(new);
                let (ha, hb) = (half(l.origin[&na], old), half(l.origin[&nb], old));
                geometry.steps.insert(new, [hb[0] - ha[0], hb[1] - ha[1]]);
            }
            Rank::Face => {}
        }
    }
    let torus = TorusComplex {
        complex: l.complex,
        lattice: t.lattice,
        frame: t.frame,
        roles: BTreeMap::new(),
        geometry,
    };
    Ok((torus, l.origin))
}

/// A face of a carved complex that replaced several faces of the original.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Merge {
    pub faces: Vec<CellId>,
    pub deleted_vertices: Vec<CellId>,
    pub deleted_edges: Vec<CellId>,
    /// The deleted cell whose color the merged face inherits: the deleted
    /// vertex with most deleted neighbours (least id on ties), otherwise the
    /// least deleted edge.
    pub representative: CellId,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, a: usize) -> usize {
        let mut r = a;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut a = a;
        while self.0[a] != r {
            let next = self.0[a];
            self.0[a] = r;
            a = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Deletes the given vertices and edges (and every edge at a deleted vertex)
/// and merges the faces on either side of each deleted edge. Surviving cells
/// keep their ids; merged faces get fresh ids after the largest existing one,
/// in order of their least original face.
pub fn merge_regions(
    t: &TorusComplex,
    del_v: &BTreeSet<CellId>,
    del_e: &BTreeSet<CellId>,
) -> Result<(TorusComplex, BTreeMap<CellId, Merge>), TilingError> {
    let x = &t.complex;
    let mut gone: BTreeSet<CellId> = del_e.clone();
    for &v in del_v {
        gone.extend(x.edges_at(v).iter().copied());
    }
    let faces = x.faces();
    let pos: BTreeMap<CellId, usize> = faces.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut uf = UnionFind((0..faces.len()).collect());
    for &e in &gone {
        let on = x.faces_on(e);
        if on.len() != 2 {
            return Err(TilingError::BoundaryEdge(e));
        }
        uf.union(pos[&on[0]], pos[&on[1]]);
    }
    let mut regions: BTreeMap<usize, Vec<CellId>> = BTreeMap::new();
    for (i, &f) in faces.iter().enumerate() {
        regions.entry(uf.find(i)).or_default().push(f);
    }

    let mut next_id = x.cells().iter().map(|c| c.id.0).max().unwrap() + 1;
    let mut cells: Vec<Cell> = Vec::new();
    let mut merges = BTreeMap::new();
    let mut on_border: BTreeSet<CellId> = BTreeSet::new();
    for &v in x.vertices() {
        if !del_v.contains(&v) {
            cells.push(Cell::vertex(v.0, x.label_of(v)));
        }
    }
    for &e in x.edges() {
        if !gone.contains(&e) {
            let (a, b) = x.edge_ends(e);
            cells.push(Cell::edge(e.0, x.label_of(a), x.label_of(b)));
        }
    }
    for region in regions.values() {
        let first = region[0];
        let inside: BTreeSet<CellId> = region.iter().copied().collect();
        let mut border_edges = BTreeSet::new();
        let mut region_v = BTreeSet::new();
        let mut region_e = BTreeSet::new();
        for &f in region {
            let b = x.border(f);
            region_v.extend(b.vertices.iter().copied().filter(|v| del_v.contains(v)));
            for &e in &b.edges {
                if gone.contains(&e) {
                    region_e.insert(e);
                } else if x.faces_on(e).iter().all(|g| inside.contains(g)) {
                    return Err(TilingError::RegionNotDisk(first));
                } else {
                    border_edges.insert(e);
                }
            }
        }
        let cycle = border_cycle(x, &border_edges).ok_or(TilingError::RegionNotDisk(first))?;
        on_border.extend(cycle.iter().copied());
        let labels: Vec<_> = cycle.iter().map(|&v| x.label_of(v)).collect();
        if region.len() == 1 && region_e.is_empty() {
            cells.push(Cell::face(first.0, &labels));
            continue;
        }
        let representative = region_v
            .iter()
            .copied()
            .max_by_key(|&v| {
                let deleted_nb = x.neighbors(v).iter().filter(|w| del_v.contains(w)).count();
                (deleted_nb, std::cmp::Reverse(v))
            })
            .or_else(|| region_e.iter().next().copied())
            .unwrap();
        cells.push(Cell::face(next_id, &labels));
        merges.insert(
            CellId(next_id),
            Merge {
                faces: region.clone(),
                deleted_vertices: region_v.into_iter().collect(),
                deleted_edges: region_e.into_iter().collect(),
                representative,
            },
        );
        next_id += 1;
    }
    if let Some(&v) = x.vertices().iter().find(|v| !del_v.contains(v) && !on_border.contains(v)) {
        return Err(TilingError::IsolatedVertex(v));
    }
    let complex = CellComplex::build(cells).map_err(not_simple)?;
    let geometry = t.geometry.restricted(&complex);
    let roles = t
        .roles
        .iter()
        .filter(|(id, _)| complex.contains_id(**id) && !merges.contains_key(*id))
        .map(|(a, b)| (*a, *b))
        .collect();
    let torus = TorusComplex { complex, lattice: t.lattice, frame: t.frame, roles, geometry };
    Ok((torus, merges))
}

/// Orders the end vertices of a set of edges as one cycle, if they form one.
fn border_cycle(x: &CellComplex, edges: &BTreeSet<CellId>) -> Option<Vec<CellId>> {
    let mut adj: BTreeMap<CellId, Vec<CellId>> = BTreeMap::new();
    for &e in edges {
        let (a, b) = x.edge_ends(e);
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if adj.len() < 3 || adj.values().any(|n| n.len() != 2) {
        return None;
    }
    let start = *adj.keys().next().unwrap();
    let mut order = vec![start];
    let (mut prev, mut cur) = (start, adj[&start][0]);
    while cur != start {
        order.push(cur);
        let nb = &adj[&cur];
        let next = if nb[0] == prev { nb[1] } else { nb[0] };
        prev = cur;
        cur = next;
    }
    (order.len() == adj.len()).then_some(order)
}

/// Deletes an independent vertex set, merging the fan of faces around each
/// deleted vertex into one face.
pub fn carve_vertices(
    t: &TorusComplex,
    d: &BTreeSet<CellId>,
) -> Result<(TorusComplex, BTreeMap<CellId, Merge>), TilingError> {
    let x = &t.complex;
    for &v in d {
        if let Some(&w) = x.neighbors(v).iter().filter(|w| d.contains(w)).min() {
            return Err(TilingError::NotIndependent(v.min(w), v.max(w)));
        }
    }
    for &f in x.faces() {
        if x.border(f).vertices.iter().filter(|v| d.contains(v)).count() > 1 {
            return Err(TilingError::FaceWithTwoDeleted(f));
        }
    }
    merge_regions(t, d, &BTreeSet::new())
}

/// Deletes edges, merging the two faces along each.
pub fn carve_edges(
    t: &TorusComplex,
    d: &BTreeSet<CellId>,
) -> Result<(TorusComplex, BTreeMap<CellId, Merge>), TilingError> {
    let x = &t.complex;
    for &e in d {
        if x.faces_on(e).len() != 2 {
            return Err(TilingError::BoundaryEdge(e));
        }
    }
    for &f in x.faces() {
        if x.border(f).edges.iter().filter(|e| d.contains(e)).count() > 1 {
            return Err(TilingError::DoubleMerge(f));
        }
    }
    merge_regions(t, &BTreeSet::new(), d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Square,
    Triangular,
    Hexagonal,
    Trihexagonal,
    Cr4_8_8,
    Cr3_3_3_4_4,
    Cr3_3_4_3_4,
    SquareMod7,
    Cr3_3_3_3_6,
    Cr3_4_6_4,
    Cr3_12_12,
    Cr4_6_12,
    Rhombille,
}

impl Family {
    pub const ALL: [Family; 13] = [
        Family::Square,
        Family::Triangular,
        Family::Hexagonal,
        Family::Trihexagonal,
        Family::Cr4_8_8,
        Family::Cr3_3_3_4_4,
        Family::Cr3_3_4_3_4,
        Family::SquareMod7,
        Family::Cr3_3_3_3_6,
        Family::Cr3_4_6_4,
        Family::Cr3_12_12,
        Family::Cr4_6_12,
        Family::Rhombille,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Square => "square",
            Family::Triangular => "triangular",
            Family::Hexagonal => "hexagonal",
            Family::Trihexagonal => "trihexagonal",
            Family::Cr4_8_8 => "cr4_8_8",
            Family::Cr3_3_3_4_4 => "cr3_3_3_4_4",
            Family::Cr3_3_4_3_4 => "cr3_3_4_3_4",
            Family::SquareMod7 => "square_mod7",
            Family::Cr3_3_3_3_6 => "cr3_3_3_3_6",
            Family::Cr3_4_6_4 => "cr3_4_6_4",
            Family::Cr3_12_12 => "cr3_12_12",
            Family::Cr4_6_12 => "cr4_6_12",
            Family::Rhombille => "rhombille",
        }
    }

    /// Vertex configuration every vertex must have, for uniform families.
    pub fn vertex_configuration(self) -> Option<Vec<usize>> {
        match self {
            Family::Square | Family::SquareMod7 => Some(vec![4, 4, 4, 4]),
            Family::Triangular => Some(vec![3; 6]),
            Family::Hexagonal => Some(vec![6, 6, 6]),
            Family::Trihexagonal => Some(vec![3, 6, 3, 6]),
            Family::Cr4_8_8 => Some(vec![4, 8, 8]),
            Family::Cr3_3_3_4_4 => Some(vec![3, 3, 3, 4, 4]),
            Family::Cr3_3_4_3_4 => Some(vec![3, 3, 4, 3, 4]),
            Family::Cr3_3_3_3_6 => Some(vec![3, 3, 3, 3, 6]),
            Family::Cr3_4_6_4 => Some(vec![3, 4, 6, 4]),
            Family::Cr3_12_12 => Some(vec![3, 12, 12]),
            Family::Cr4_6_12 => Some(vec![4, 6, 12]),
            Family::Rhombille => None,
        }
    }

    fn takes_chirality(self) -> bool {
        matches!(
            self,
            Family::Triangular | Family::Hexagonal | Family::Trihexagonal | Family::SquareMod7
        )
    }

    /// Smallest torus used by default for the family.
    pub fn smallest(self) -> TilingSpec {
        let l = |u: Point, v: Point| Lattice2D::new(u, v).unwrap();
        let (lattice, chirality) = match self {
            Family::Square => (l((5, 0), (2, -1)), Chirality::Anti),
            Family::Triangular | Family::Hexagonal | Family::Trihexagonal => {
                (l((7, 0), (2, 1)), Chirality::Anti)
            }
            Family::Cr4_8_8 => (l((5, 0), (0, 5)), Chirality::Anti),
            Family::Cr3_3_3_4_4 => (l((7, 0), (4, 2)), Chirality::Anti),
            Family::Cr3_3_4_3_4 => (l((28, 0), (11, 2)), Chirality::Anti),
            Family::SquareMod7 => (l((7, 0), (0, 7)), Chirality::Main),
            Family::Cr3_3_3_3_6 | Family::Cr3_4_6_4 => (l((7, 0), (0, 7)), Chirality::Anti),
            Family::Cr3_12_12 => (twelve_centers().intersect(&seven_kernel()), Chirality::Anti),
            Family::Cr4_6_12 => (six_twelve_centers(), Chirality::Anti),
            Family::Rhombille => (l((6, 3), (11, 2)), Chirality::Anti),
        };
        TilingSpec { family: self, lattice, chirality }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = TilingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| TilingError::UnknownFamily(s.to_string()))
    }
}

/// `family@u=a,b;v=c,d[;chirality=anti|main]`; a bare family name selects
/// its smallest torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TilingSpec {
    pub family: Family,
    pub lattice: Lattice2D,
    pub chirality: Chirality,
}

impl fmt::Display for TilingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.family, self.lattice)?;
        if self.chirality == Chirality::Main {
            write!(f, ";chirality=main")?;
        }
        Ok(())
    }
}

impl FromStr for TilingSpec {
    type Err = TilingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let Some((fam, rest)) = s.split_once('@') else {
            return Ok(s.parse::<Family>()?.smallest());
        };
        let family: Family = fam.trim().parse()?;
        let parts: Vec<&str> = rest.split(';').map(str::trim).collect();
        if parts.len() < 2 || parts.len() > 3 {
            return Err(TilingError::Parse(s.to_string()));
        }
        let lattice: Lattice2D = format!("{};{}", parts[0], parts[1]).parse()?;
        let chirality = match parts.get(2) {
            None => Chirality::Anti,
            Some(&"chirality=anti") => Chirality::Anti,
            Some(&"chirality=main") => Chirality::Main,
            Some(_) => return Err(TilingError::Parse(s.to_string())),
        };
        Ok(TilingSpec { family, lattice, chirality })
    }
}

impl Serialize for TilingSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TilingSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// How a generated complex was obtained, kept so colorings can be carried over.
#[derive(Clone, Debug)]
pub enum Provenance {
    Base,
    Dual { of: Box<Generated>, origin: BTreeMap<CellId, CellId> },
    Line { of: Box<Generated>, origin: BTreeMap<CellId, CellId> },
    Carved { of: Box<Generated>, merges: BTreeMap<CellId, Merge> },
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub torus: TorusComplex,
    pub provenance: Provenance,
}

impl Generated {
    pub fn complex(&self) -> &CellComplex {
        &self.torus.complex
    }

    fn carved(of: Generated, r: (TorusComplex, BTreeMap<CellId, Merge>)) -> Generated {
        Generated { torus: r.0, provenance: Provenance::Carved { of: Box::new(of), merges: r.1 } }
    }
}

fn seven_kernel() -> Lattice2D {
    ColorForm::triangular().kernel()
}

/// Centers of the dodecagons of the truncated hexagonal tiling.
pub fn twelve_centers() -> Lattice2D {
    Lattice2D::new((3, 1), (-1, 4)).unwrap()
}

/// Centers of the dodecagons of the truncated trihexagonal tiling.
pub fn six_twelve_centers() -> Lattice2D {
    Lattice2D::new((1, 4), (-4, 5)).unwrap()
}

/// Period of the frozen deletion pattern of the 3².4.3.4 family.
pub fn snub_period() -> Lattice2D {
    Lattice2D::new((2, 0), (1, 2)).unwrap()
}

/// Deleted edge orbits of the 3².4.3.4 family (anti frame), as
/// `(role, representative modulo the period)`. Found by exhaustive search
/// over pairs of edge orbits of the index-4 period lattices, keeping the
/// patterns that leave every vertex with configuration (3,3,4,3,4).
pub const SNUB_PATTERN: [(Role, Point); 2] = [(Role::V, (0, 0)), (Role::D, (0, 1))];

/// Index-3 sublattice of the rhombille construction.
pub fn rhombille_centers() -> Lattice2D {
    Lattice2D::new((1, 1), (2, -1)).unwrap()
}

fn require_sublattice(spec: &TilingSpec, of: &Lattice2D, what: &str) -> Result<(), TilingError> {
    if spec.lattice.is_sublattice_of(of) {
        Ok(())
    } else {
        Err(TilingError::IncompatibleLattice {
            family: spec.family,
            lattice: spec.lattice,
            reason: format!("must lie in {what} ({of})"),
        })
    }
}

fn require_even_rows(spec: &TilingSpec) -> Result<(), TilingError> {
    if spec.lattice.v().1 % 2 == 0 {
        Ok(())
    } else {
        Err(TilingError::IncompatibleLattice {
            family: spec.family,
            lattice: spec.lattice,
            reason: "the row pattern needs an even vertical period".into(),
        })
    }
}

fn edges_where(t: &TorusComplex, keep: impl Fn(PlaneCell) -> bool) -> BTreeSet<CellId> {
    t.complex.edges().iter().copied().filter(|e| keep(t.roles[e])).collect()
}

/// Vertices within hex distance `r` of `centers`.
fn near_centers(t: &TorusComplex, centers: &Lattice2D, r: i64) -> BTreeSet<CellId> {
    t.complex
        .vertices()
        .iter()
        .copied()
        .filter(|v| {
            let p = t.point_of(*v).unwrap();
            offsets_within(r).any(|o| centers.contains(sub(p, o)))
        })
        .collect()
}

fn offsets_within(r: i64) -> impl Iterator<Item = Point> {
    (-r..=r).flat_map(move |x| (-r..=r).map(move |y| (x, y))).filter(move |&o| hex_distance(o) <= r)
}

/// Is the plane edge `[a, b]` a side of the 12-gon around some center, i.e.
/// are both ends at distance exactly 2 from one common center?
fn on_ring_two(centers: &Lattice2D, a: Point, b: Point) -> bool {
    offsets_within(2)
        .filter(|&o| hex_distance(o) == 2)
        .map(|o| sub(a, o))
        .any(|s| centers.contains(s) && hex_distance(sub(b, s)) == 2)
}

fn truncated(spec: &TilingSpec, centers: &Lattice2D, with_hexagons: bool) -> Result<Generated, TilingError> {
    require_sublattice(spec, centers, "the lattice of 12-gon centers")?;
    let base = gen_triangular(spec.lattice, Chirality::Anti)?;
    let mut del_v = near_centers(&base, centers, 1);
    let far: BTreeSet<CellId> = if with_hexagons {
        let near2 = near_centers(&base, centers, 2);
        base.complex.vertices().iter().copied().filter(|v| !near2.contains(v)).collect()
    } else {
        BTreeSet::new()
    };
    del_v.extend(far.iter().copied());
    let frame = base.frame;
    let is_far = |p: Point| base.vertex_at(p).is_some_and(|v| far.contains(&v));
    let del_e = edges_where(&base, |c| {
        let [a, b] = frame.edge_points(c.role, c.base);
        let hexagon_side = ANTI_STEPS
            .iter()
            .map(|&o| add(a, o))
            .any(|h| is_far(h) && hex_distance(sub(b, h)) == 1);
        !(on_ring_two(centers, a, b) || hexagon_side)
    });
    let carved = merge_regions(&base, &del_v, &del_e)?;
    Ok(Generated::carved(Generated { torus: base, provenance: Provenance::Base }, carved))
}

fn base_generated(t: TorusComplex) -> Generated {
    Generated { torus: t, provenance: Provenance::Base }
}

/// Builds the complex named by a spec.
pub fn gen_family(spec: &TilingSpec) -> Result<Generated, TilingError> {
    if spec.chirality == Chirality::Main && !spec.family.takes_chirality() {
        return Err(TilingError::InvalidChirality(spec.family, spec.chirality));
    }
    let anti = Chirality::Anti;
    match spec.family {
        Family::Square => Ok(base_generated(gen_square(spec.lattice)?)),
        Family::Triangular => Ok(base_generated(gen_triangular(spec.lattice, spec.chirality)?)),
        Family::Hexagonal => {
            let tri = base_generated(gen_triangular(spec.lattice, spec.chirality)?);
            let (torus, origin) = dual_of(&tri.torus)?;
            Ok(Generated { torus, provenance: Provenance::Dual { of: Box::new(tri), origin } })
        }
        Family::Trihexagonal => {
            let hex = gen_family(&TilingSpec { family: Family::Hexagonal, ..*spec })?;
            let (torus, origin) = line_of(&hex.torus)?;
            Ok(Generated { torus, provenance: Provenance::Line { of: Box::new(hex), origin } })
        }
        Family::Cr4_8_8 => {
            let form = ColorForm::square();
            require_sublattice(spec, &form.kernel(), "the kernel of the square color form")?;
            let base = gen_square(spec.lattice)?;
            let d = vertex_class(&base, &form, 0);
            let carved = carve_vertices(&base, &d)?;
            Ok(Generated::carved(base_generated(base), carved))
        }
        Family::Cr3_3_3_4_4 => {
            require_even_rows(spec)?;
            let base = gen_triangular(spec.lattice, anti)?;
            let d = edges_where(&base, |c| c.role == Role::D && c.base.1 % 2 == 0);
            let carved = carve_edges(&base, &d)?;
            Ok(Generated::carved(base_generated(base), carved))
        }
        Family::SquareMod7 => {
            let base = gen_triangular(spec.lattice, spec.chirality)?;
            let d = match spec.chirality {
                // every diagonal
                Chirality::Main => edges_where(&base, |c| c.role == Role::D),
                // diagonals in even rows, verticals in odd rows
                Chirality::Anti => {
                    require_even_rows(spec)?;
                    edges_where(&base, |c| match c.role {
                        Role::D => c.base.1 % 2 == 0,
                        Role::V => c.base.1 % 2 == 1,
                        _ => false,
                    })
                }
            };
            let carved = carve_edges(&base, &d)?;
            Ok(Generated::carved(base_generated(base), carved))
        }
        Family::Cr3_3_4_3_4 => {
            let period = snub_period();
            require_sublattice(spec, &period, "the period of the deletion pattern")?;
            let base = gen_triangular(spec.lattice, anti)?;
            let d = edges_where(&base, |c| {
                SNUB_PATTERN.iter().any(|&(r, p)| r == c.role && period.reduce(c.base) == p)
            });
            let carved = carve_edges(&base, &d)?;
            Ok(Generated::carved(base_generated(base), carved))
        }
        Family::Cr3_3_3_3_6 => {
            let form = ColorForm::triangular();
            require_sublattice(spec, &form.kernel(), "the kernel of the triangular color form")?;
            let base = gen_triangular(spec.lattice, anti)?;
            let d = vertex_class(&base, &form, 0);
            let carved = carve_vertices(&base, &d)?;
            Ok(Generated::carved(base_generated(base), carved))
        }
        Family::Cr3_4_6_4 => {
            let snub = gen_family(&TilingSpec { family: Family::Cr3_3_3_3_6, ..*spec })?;
            let x = snub.complex();
            let is_tri = |f: CellId| x.border(f).len() == 3;
            let touches_hexagon = |f: CellId| {
                x.border(f).edges.iter().any(|&e| x.faces_on(e).iter().any(|&g| x.border(g).len() == 6))
            };
            let d: BTreeSet<CellId> = x
                .edges()
                .iter()
                .copied()
                .filter(|&e| x.faces_on(e).iter().all(|&f| is_tri(f) && touches_hexagon(f)))
                .collect();
            let carved = carve_edges(&snub.torus, &d)?;
            Ok(Generated::carved(snub, carved))
        }
        Family::Cr3_12_12 => truncated(spec, &twelve_centers(), false),
        Family::Cr4_6_12 => truncated(spec, &six_twelve_centers(), true),
        Family::Rhombille => {
            let centers = rhombille_centers();
            require_sublattice(spec, &centers, "the rhombus-center sublattice")?;
            let base = gen_triangular(spec.lattice, anti)?;
            let frame = base.frame;
            let d = edges_where(&base, |c| {
                frame.edge_points(c.role, c.base).iter().all(|&p| !centers.contains(p))
            });
            let carved = carve_edges(&base, &d)?;
            Ok(Generated::carved(base_generated(base), carved))
        }
    }
}

/// Vertices whose closed-form color is `t`.
pub fn vertex_class(t: &TorusComplex, form: &ColorForm, color: u8) -> BTreeSet<CellId> {
    t.complex
        .vertices()
        .iter()
        .copied()
        .filter(|v| form.eval("vertex", t.point_of(*v).unwrap()) == Some(color))
        .collect()
}
