//! Finite combinatorial 2-cell complexes.
//!
//! A complex is a set of cells over a vertex set `V`. Each cell is a subset of
//! `V` with a rank in `{0, 1, 2}`; the order between cells is vertex-set
//! containment. Faces additionally carry the cyclic order of their border,
//! since in very small toroidal quotients the induced subgraph on a face's
//! vertices can contain chords.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Stable identifier of a cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CellId(pub u32);

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Label of an element of the vertex set `V`.
pub type VertexLabel = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Rank {
    Vertex,
    Edge,
    Face,
}

impl Rank {
    pub const ALL: [Rank; 3] = [Rank::Vertex, Rank::Edge, Rank::Face];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl From<Rank> for u8 {
    fn from(r: Rank) -> u8 {
        r as u8
    }
}

impl TryFrom<u8> for Rank {
    type Error = String;

    fn try_from(v: u8) -> Result<Self, Self::Error> {
        match v {
            0 => Ok(Rank::Vertex),
            1 => Ok(Rank::Edge),
            2 => Ok(Rank::Face),
            _ => Err(format!("rank {v} is not in {{0,1,2}}")),
        }
    }
}

/// One graded element of a complex.
///
/// `vertices` lists the labels of the cell: a single label for a vertex, the
/// two end labels (sorted) for an edge and the border cycle for a face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub id: CellId,
    pub rank: Rank,
    pub vertices: Vec<VertexLabel>,
}

impl Cell {
    pub fn vertex(id: u32, label: VertexLabel) -> Self {
        Cell { id: CellId(id), rank: Rank::Vertex, vertices: vec![label] }
    }

    pub fn edge(id: u32, a: VertexLabel, b: VertexLabel) -> Self {
        Cell { id: CellId(id), rank: Rank::Edge, vertices: vec![a, b] }
    }

    pub fn face(id: u32, border: &[VertexLabel]) -> Self {
        Cell { id: CellId(id), rank: Rank::Face, vertices: border.to_vec() }
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexLabel> {
        self.vertices.iter().copied().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("cell list is empty")]
    Empty,
    #[error("cell id {0} is used more than once")]
    DuplicateId(CellId),
    #[error("cells {0} and {1} have the same rank and vertex set")]
    DuplicateCell(CellId, CellId),
    #[error("cell {cell} references vertex label {label} which is not a 0-cell")]
    DanglingVertexReference { cell: CellId, label: VertexLabel },
    #[error("cell {0} has the wrong number of vertices for its rank")]
    BadArity(CellId),
    #[error("border of face {0} is not a single cycle of the 1-skeleton")]
    NonCyclicBorder(CellId),
    #[error("complex is not a closed surface: {0}")]
    NotClosedSurface(String),
    #[error("complex is not toroidal (Euler characteristic {0})")]
    NotToroidal(i64),
    #[error("skeleton is not cubic")]
    NotCubic,
    #[error("derived complex would not be simple: {0}")]
    NotSimple(String),
    #[error("graph has {size} vertices, above the bound {bound}")]
    SizeBound { size: usize, bound: usize },
}

/// Border of a face: `edges[i]` joins `vertices[i]` and `vertices[i + 1]`
/// (indices mod the length). Both sequences hold cell ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Border {
    pub vertices: Vec<CellId>,
    pub edges: Vec<CellId>,
}

impl Border {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertex and edge ids in alternating order, starting from the first vertex.
    pub fn alternating(&self) -> Vec<CellId> {
        self.vertices.iter().zip(&self.edges).flat_map(|(v, e)| [*v, *e]).collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = CellId> + '_ {
        self.vertices.iter().chain(self.edges.iter()).copied()
    }
}

/// Immutable combinatorial 2-cell complex with derived incidences.
#[derive(Clone, Debug)]
pub struct CellComplex {
    cells: Vec<Cell>,
    index: HashMap<CellId, usize>,
    by_rank: [Vec<CellId>; 3],
    vertex_of_label: BTreeMap<VertexLabel, CellId>,
    edge_ends: HashMap<CellId, (CellId, CellId)>,
    edge_of_pair: HashMap<(CellId, CellId), CellId>,
    borders: BTreeMap<CellId, Border>,
    vertex_edges: HashMap<CellId, Vec<CellId>>,
    vertex_faces: HashMap<CellId, Vec<CellId>>,
    edge_faces: HashMap<CellId, Vec<CellId>>,
}

fn ordered(a: CellId, b: CellId) -> (CellId, CellId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Rotate/reflect a cyclic label sequence so it starts at its least label and
/// continues towards the smaller of the two neighbours.
pub fn canonical_cycle(cycle: &[VertexLabel]) -> Vec<VertexLabel> {
    let n = cycle.len();
    if n == 0 {
        return Vec::new();
    }
    let start = (0..n).min_by_key(|&i| cycle[i]).unwrap();
    let forward: Vec<_> = (0..n).map(|i| cycle[(start + i) % n]).collect();
    let backward: Vec<_> = (0..n).map(|i| cycle[(start + n - i) % n]).collect();
    forward.min(backward)
}

impl CellComplex {
    /// Build a complex from a cell list, deriving incidences and face borders.
    pub fn build(cells: Vec<Cell>) -> Result<CellComplex, ComplexError> {
        if cells.is_empty() {
            return Err(ComplexError::Empty);
        }
        let mut seen_ids = BTreeSet::new();
        for c in &cells {
            if !seen_ids.insert(c.id) {
                return Err(ComplexError::DuplicateId(c.id));
            }
            let ok = match c.rank {
                Rank::Vertex => c.vertices.len() == 1,
                Rank::Edge => c.vertices.len() == 2 && c.vertices[0] != c.vertices[1],
                Rank::Face => c.vertices.len() >= 3,
            };
            if !ok {
                return Err(ComplexError::BadArity(c.id));
            }
        }

        let mut cells = cells;
        cells.sort_by_key(|c| (c.rank, c.id));

        let mut vertex_of_label = BTreeMap::new();
        for c in cells.iter().filter(|c| c.rank == Rank::Vertex) {
            if let Some(prev) = vertex_of_label.insert(c.vertices[0], c.id) {
                return Err(ComplexError::DuplicateCell(prev, c.id));
            }
        }
        let lookup = |cell: CellId, label: VertexLabel| {
            vertex_of_label
                .get(&label)
                .copied()
                .ok_or(ComplexError::DanglingVertexReference { cell, label })
        };

        let mut edge_ends = HashMap::new();
        let mut edge_of_pair = HashMap::new();
        let mut label_adj: BTreeMap<VertexLabel, BTreeSet<VertexLabel>> = BTreeMap::new();
        for c in cells.iter_mut().filter(|c| c.rank == Rank::Edge) {
            c.vertices.sort_unstable();
            let a = lookup(c.id, c.vertices[0])?;
            let b = lookup(c.id, c.vertices[1])?;
            if let Some(prev) = edge_of_pair.insert(ordered(a, b), c.id) {
                return Err(ComplexError::DuplicateCell(prev, c.id));
            }
            edge_ends.insert(c.id, ordered(a, b));
            label_adj.entry(c.vertices[0]).or_default().insert(c.vertices[1]);
            label_adj.entry(c.vertices[1]).or_default().insert(c.vertices[0]);
        }

        let mut borders = BTreeMap::new();
        let mut face_sets: HashMap<Vec<VertexLabel>, CellId> = HashMap::new();
        for c in cells.iter_mut().filter(|c| c.rank == Rank::Face) {
            for &l in &c.vertices {
                lookup(c.id, l)?;
            }
            let set: BTreeSet<_> = c.vertices.iter().copied().collect();
            if set.len() != c.vertices.len() {
                return Err(ComplexError::NonCyclicBorder(c.id));
            }
            let is_edge = |a: VertexLabel, b: VertexLabel| {
                label_adj.get(&a).is_some_and(|s| s.contains(&b))
            };
            let n = c.vertices.len();
            let given_ok = (0..n).all(|i| is_edge(c.vertices[i], c.vertices[(i + 1) % n]));
            let order = if given_ok {
                c.vertices.clone()
            } else {
                induced_cycle(&set, &label_adj).ok_or(ComplexError::NonCyclicBorder(c.id))?
            };
            let order = canonical_cycle(&order);
            let key: Vec<_> = set.iter().copied().collect();
            if let Some(prev) = face_sets.insert(key, c.id) {
                return Err(ComplexError::DuplicateCell(prev, c.id));
            }
            let vs: Vec<CellId> = order.iter().map(|l| vertex_of_label[l]).collect();
            let es: Vec<CellId> =
                (0..n).map(|i| edge_of_pair[&ordered(vs[i], vs[(i + 1) % n])]).collect();
            c.vertices = order;
            borders.insert(c.id, Border { vertices: vs, edges: es });
        }

        let index = cells.iter().enumerate().map(|(i, c)| (c.id, i)).collect();
        let mut by_rank: [Vec<CellId>; 3] = Default::default();
        for c in &cells {
            by_rank[c.rank.index()].push(c.id);
        }

        let mut vertex_edges: HashMap<CellId, Vec<CellId>> =
            by_rank[0].iter().map(|&v| (v, Vec::new())).collect();
        for &e in &by_rank[1] {
            let (a, b) = edge_ends[&e];
            vertex_edges.get_mut(&a).unwrap().push(e);
            vertex_edges.get_mut(&b).unwrap().push(e);
        }
        let mut vertex_faces: HashMap<CellId, Vec<CellId>> =
            by_rank[0].iter().map(|&v| (v, Vec::new())).collect();
        let mut edge_faces: HashMap<CellId, Vec<CellId>> =
            by_rank[1].iter().map(|&e| (e, Vec::new())).collect();
        for (&f, b) in &borders {
            for v in &b.vertices {
                vertex_faces.get_mut(v).unwrap().push(f);
            }
            for e in &b.edges {
                edge_faces.get_mut(e).unwrap().push(f);
            }
        }

        Ok(CellComplex {
            cells,
            index,
            by_rank,
            vertex_of_label,
            edge_ends,
            edge_of_pair,
            borders,
            vertex_edges,
            vertex_faces,
            edge_faces,
        })
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cell(&self, id: CellId) -> Option<&Cell> {
        self.index.get(&id).map(|&i| &self.cells[i])
    }

    pub fn contains_id(&self, id: CellId) -> bool {
        self.index.contains_key(&id)
    }

    pub fn rank_of(&self, id: CellId) -> Rank {
        self.cells[self.index[&id]].rank
    }

    /// Ids of all `j`-cells, ascending.
    pub fn level(&self, rank: Rank) -> &[CellId] {
        &self.by_rank[rank.index()]
    }

    pub fn vertices(&self) -> &[CellId] {
        self.level(Rank::Vertex)
    }

    pub fn edges(&self) -> &[CellId] {
        self.level(Rank::Edge)
    }

    pub fn faces(&self) -> &[CellId] {
        self.level(Rank::Face)
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        (self.vertices().len(), self.edges().len(), self.faces().len())
    }

    pub fn label_of(&self, vertex: CellId) -> VertexLabel {
        self.cells[self.index[&vertex]].vertices[0]
    }

    pub fn vertex_by_label(&self, label: VertexLabel) -> Option<CellId> {
        self.vertex_of_label.get(&label).copied()
    }

    /// End vertices of an edge, as vertex cell ids (ascending).
    pub fn edge_ends(&self, edge: CellId) -> (CellId, CellId) {
        self.edge_ends[&edge]
    }

    pub fn edge_between(&self, a: CellId, b: CellId) -> Option<CellId> {
        self.edge_of_pair.get(&ordered(a, b)).copied()
    }

    pub fn border(&self, face: CellId) -> &Border {
        &self.borders[&face]
    }

    pub fn borders(&self) -> &BTreeMap<CellId, Border> {
        &self.borders
    }

    pub fn edges_at(&self, vertex: CellId) -> &[CellId] {
        &self.vertex_edges[&vertex]
    }

    pub fn faces_at(&self, vertex: CellId) -> &[CellId] {
        &self.vertex_faces[&vertex]
    }

    pub fn faces_on(&self, edge: CellId) -> &[CellId] {
        &self.edge_faces[&edge]
    }

    pub fn other_end(&self, edge: CellId, v: CellId) -> CellId {
        let (a, b) = self.edge_ends(edge);
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn neighbors(&self, vertex: CellId) -> Vec<CellId> {
        self.edges_at(vertex).iter().map(|&e| self.other_end(e, vertex)).collect()
    }

    pub fn degree(&self, vertex: CellId) -> usize {
        self.edges_at(vertex).len()
    }

    /// Vertex cell ids of a cell (the cell itself for a vertex).
    pub fn vertex_cells(&self, id: CellId) -> Vec<CellId> {
        match self.rank_of(id) {
            Rank::Vertex => vec![id],
            Rank::Edge => {
                let (a, b) = self.edge_ends(id);
                vec![a, b]
            }
            Rank::Face => self.border(id).vertices.clone(),
        }
    }

    /// Cells strictly below `id` in the containment order.
    pub fn contained_in(&self, id: CellId) -> Vec<CellId> {
        let target = self.cell(id).unwrap().vertex_set();
        self.cells
            .iter()
            .filter(|c| c.id != id && c.rank < self.rank_of(id))
            .filter(|c| c.vertices.iter().all(|l| target.contains(l)))
            .map(|c| c.id)
            .collect()
    }

    /// Cells strictly above `id` in the containment order.
    pub fn containing(&self, id: CellId) -> Vec<CellId> {
        let own = self.cell(id).unwrap().vertex_set();
        self.cells
            .iter()
            .filter(|c| c.id != id && c.rank > self.rank_of(id))
            .filter(|c| own.iter().all(|l| c.vertices.contains(l)))
            .map(|c| c.id)
            .collect()
    }

    /// `|X^0| - |X^1| + |X^2|`.
    pub fn euler_characteristic(&self) -> i64 {
        let (v, e, f) = self.counts();
        v as i64 - e as i64 + f as i64
    }

    /// The faces around a vertex in cyclic order, as `(edge, face)` steps:
    /// face `i` lies between edge `i` and edge `i + 1`.
    pub fn vertex_fan(&self, vertex: CellId) -> Result<Vec<(CellId, CellId)>, ComplexError> {
        let edges = self.edges_at(vertex);
        let faces = self.faces_at(vertex);
        let bad = |why: &str| ComplexError::NotClosedSurface(format!("vertex {vertex}: {why}"));
        if edges.is_empty() || faces.len() != edges.len() {
            return Err(bad("faces and edges around it do not alternate"));
        }
        // each face at the vertex meets it through exactly two border edges
        let mut face_edges: HashMap<CellId, [CellId; 2]> = HashMap::new();
        for &f in faces {
            let b = self.border(f);
            let i = b.vertices.iter().position(|&v| v == vertex).unwrap();
            let n = b.len();
            face_edges.insert(f, [b.edges[(i + n - 1) % n], b.edges[i]]);
        }
        let mut fan = Vec::with_capacity(edges.len());
        let start = edges[0];
        let mut edge = start;
        let mut prev_face: Option<CellId> = None;
        loop {
            let on = self.faces_on(edge);
            if on.len() != 2 {
                return Err(bad("an incident edge does not border two faces"));
            }
            let next = if Some(on[0]) == prev_face { on[1] } else { on[0] };
            let [e0, e1] = face_edges[&next];
            let out = if e0 == edge { e1 } else { e0 };
            fan.push((edge, next));
            prev_face = Some(next);
            edge = out;
            if edge == start {
                break;
            }
            if fan.len() > edges.len() {
                return Err(bad("fan does not close"));
            }
        }
        if fan.len() != edges.len() {
            return Err(bad("incident faces form more than one fan"));
        }
        Ok(fan)
    }

    /// Checks that every edge borders exactly two faces and every vertex is
    /// surrounded by a single cyclic fan.
    pub fn check_closed_surface(&self) -> Result<(), ComplexError> {
        for &e in self.edges() {
            let n = self.faces_on(e).len();
            if n != 2 {
                return Err(ComplexError::NotClosedSurface(format!(
                    "edge {e} borders {n} faces"
                )));
            }
        }
        for &v in self.vertices() {
            self.vertex_fan(v)?;
        }
        Ok(())
    }

    pub fn check_toroidal(&self) -> Result<(), ComplexError> {
        self.check_closed_surface()?;
        match self.euler_characteristic() {
            0 => Ok(()),
            chi => Err(ComplexError::NotToroidal(chi)),
        }
    }

    /// Cyclic sequence of face sizes around a vertex, normalised to the
    /// lexicographically least rotation or reflection.
    pub fn vertex_configuration(&self, vertex: CellId) -> Result<Vec<usize>, ComplexError> {
        let sizes: Vec<usize> =
            self.vertex_fan(vertex)?.iter().map(|&(_, f)| self.border(f).len()).collect();
        let n = sizes.len();
        let mut best: Option<Vec<usize>> = None;
        for s in 0..n {
            for dir in [1isize, -1] {
                let seq: Vec<usize> = (0..n as isize)
                    .map(|i| sizes[(s as isize + dir * i).rem_euclid(n as isize) as usize])
                    .collect();
                if best.as_ref().is_none_or(|b| seq < *b) {
                    best = Some(seq);
                }
            }
        }
        Ok(best.unwrap_or_default())
    }

    /// The cell list, sorted by `(rank, id)`.
    pub fn to_cells(&self) -> Vec<Cell> {
        self.cells.clone()
    }
}

/// One failing instance of a defining axiom, on the ordered pair `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AxiomFailure {
    pub axiom: u8,
    pub a: CellId,
    pub b: CellId,
}

/// Result of checking the four axioms over all cell pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    /// Failures sorted by `(axiom, a, b)`.
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failing_axioms(&self) -> BTreeSet<u8> {
        self.failures.iter().map(|f| f.axiom).collect()
    }
}

/// Exhaustive check of the poset axioms on vertex sets:
///
/// 1. `A ⊊ B` implies `rank A < rank B`;
/// 2. a non-empty `A ∩ B` is itself a cell;
/// 3. `A ⊊ B` implies some `C` of rank `rank A + 1` with `A ⊊ C ⊆ B`;
/// 4. `A ⊊ B` with `rank B = rank A + 2` implies two cells `C, D` of the
///    middle rank, both between `A` and `B`, with `C ∩ D = A`.
pub fn validate_axioms(x: &CellComplex) -> AxiomReport {
    let sets: Vec<Vec<VertexLabel>> = x
        .cells
        .iter()
        .map(|c| {
            let mut v = c.vertices.clone();
            v.sort_unstable();
            v
        })
        .collect();
    let ranks: Vec<u8> = x.cells.iter().map(|c| c.rank as u8).collect();
    let ids: Vec<CellId> = x.cells.iter().map(|c| c.id).collect();
    let known: HashMap<&[VertexLabel], usize> =
        sets.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let mut with_label: HashMap<VertexLabel, Vec<usize>> = HashMap::new();
    for (i, s) in sets.iter().enumerate() {
        for &l in s {
            with_label.entry(l).or_default().push(i);
        }
    }
    let subset = |a: &[VertexLabel], b: &[VertexLabel]| a.iter().all(|l| b.binary_search(l).is_ok());

    let mut failures = BTreeSet::new();
    let mut fail = |axiom: u8, a: usize, b: usize| {
        failures.insert(AxiomFailure { axiom, a: ids[a], b: ids[b] });
    };
    for a in 0..sets.len() {
        // every cell meeting A shares A's labels somewhere
        let mut meeting: BTreeSet<usize> = BTreeSet::new();
        for l in &sets[a] {
            meeting.extend(with_label[l].iter().copied());
        }
        meeting.remove(&a);
        for &b in &meeting {
            let inter: Vec<VertexLabel> =
                sets[a].iter().filter(|l| sets[b].binary_search(l).is_ok()).copied().collect();
            if !known.contains_key(inter.as_slice()) {
                fail(2, a, b);
            }
            let proper = inter.len() == sets[a].len() && sets[a].len() < sets[b].len();
            if !proper {
                continue;
            }
            if ranks[a] >= ranks[b] {
                fail(1, a, b);
            }
            let mids: Vec<usize> = meeting
                .iter()
                .copied()
                .filter(|&c| ranks[c] == ranks[a] + 1)
                .filter(|&c| sets[c].len() > sets[a].len() && subset(&sets[c], &sets[b]))
                .collect();
            if mids.is_empty() {
                fail(3, a, b);
            }
            if ranks[b] == ranks[a] + 2 {
                let diamond = mids.iter().any(|&c| {
                    mids.iter().any(|&d| {
                        c != d && sets[c].iter().filter(|l| sets[d].binary_search(l).is_ok()).count()
                            == sets[a].len()
                    })
                });
                if !diamond {
                    fail(4, a, b);
                }
            }
        }
    }
    AxiomReport { failures: failures.into_iter().collect() }
}

/// The 1-skeleton: vertex cell ids and edges as vertex-id pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    pub vertices: Vec<CellId>,
    pub edges: Vec<(CellId, CellId)>,
    adjacency: BTreeMap<CellId, Vec<CellId>>,
}

impl Skeleton {
    pub fn from_edges(vertices: Vec<CellId>, edges: Vec<(CellId, CellId)>) -> Skeleton {
        let mut adjacency: BTreeMap<CellId, Vec<CellId>> =
            vertices.iter().map(|&v| (v, Vec::new())).collect();
        for &(a, b) in &edges {
            adjacency.get_mut(&a).unwrap().push(b);
            adjacency.get_mut(&b).unwrap().push(a);
        }
        for list in adjacency.values_mut() {
            list.sort_unstable();
        }
        Skeleton { vertices, edges, adjacency }
    }

    pub fn neighbors(&self, v: CellId) -> &[CellId] {
        &self.adjacency[&v]
    }

    pub fn degree(&self, v: CellId) -> usize {
        self.adjacency[&v].len()
    }

    /// Degrees as a multiset: degree → number of vertices.
    pub fn degree_sequence(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for v in &self.vertices {
            *out.entry(self.degree(*v)).or_insert(0) += 1;
        }
        out
    }

    /// The common degree, if every vertex has the same one.
    pub fn is_regular(&self) -> Option<usize> {
        let seq = self.degree_sequence();
        (seq.len() == 1).then(|| *seq.keys().next().unwrap())
    }
}

pub fn skeleton(x: &CellComplex) -> Skeleton {
    let edges = x.edges().iter().map(|&e| x.edge_ends(e)).collect();
    Skeleton::from_edges(x.vertices().to_vec(), edges)
}

/// Orders the vertex set of a face as a cycle when the induced subgraph on it
/// is exactly one cycle.
fn induced_cycle(
    set: &BTreeSet<VertexLabel>,
    adj: &BTreeMap<VertexLabel, BTreeSet<VertexLabel>>,
) -> Option<Vec<VertexLabel>> {
    let inside = |v: &VertexLabel| -> Vec<VertexLabel> {
        adj.get(v).map(|s| s.iter().filter(|w| set.contains(w)).copied().collect()).unwrap_or_default()
    };
    if set.iter().any(|v| inside(v).len() != 2) {
        return None;
    }
    let first = *set.iter().next()?;
    let mut order = vec![first];
    let mut prev = first;
    let mut cur = inside(&first)[0];
    while cur != first {
        order.push(cur);
        let nb = inside(&cur);
        let next = if nb[0] == prev { nb[1] } else { nb[0] };
        prev = cur;
        cur = next;
        if order.len() > set.len() {
            return None;
        }
    }
    (order.len() == set.len()).then_some(order)
}

/// A complex produced from another one, with the originating cell of every
/// new cell.
#[derive(Clone, Debug)]
pub struct DerivedComplex {
    pub complex: CellComplex,
    pub origin: BTreeMap<CellId, CellId>,
}

/// Same complex with ids renumbered in breadth-first order over the
/// skeleton: each vertex is followed by its edges back to earlier vertices
/// and then by the faces whose vertices have all appeared. Labels are kept.
pub fn breadth_first_relabel(x: &CellComplex) -> DerivedComplex {
    let mut order: Vec<CellId> = Vec::with_capacity(x.cells().len());
    let mut placed: HashSet<CellId> = HashSet::new();
    let mut queued: HashSet<CellId> = HashSet::new();
    for &start in x.vertices() {
        if !queued.insert(start) {
            continue;
        }
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            placed.insert(v);
            for &e in x.edges_at(v) {
                if placed.contains(&x.other_end(e, v)) && placed.insert(e) {
                    order.push(e);
                }
            }
            for &f in x.faces_at(v) {
                if !placed.contains(&f) && x.border(f).vertices.iter().all(|w| placed.contains(w)) {
                    placed.insert(f);
                    order.push(f);
                }
            }
            let mut next = x.neighbors(v);
            next.sort_unstable();
            for u in next {
                if queued.insert(u) {
                    queue.push_back(u);
                }
            }
        }
    }
    let new_id: HashMap<CellId, CellId> =
        order.iter().enumerate().map(|(i, &old)| (old, CellId(i as u32))).collect();
    let cells = x.cells().iter().map(|c| Cell { id: new_id[&c.id], ..c.clone() }).collect();
    DerivedComplex {
        complex: CellComplex::build(cells).expect("relabeling keeps a valid complex"),
        origin: order.iter().map(|old| (new_id[old], *old)).collect(),
    }
}

/// Toroidal dual: faces become vertices, edges stay edges (joining the two
/// faces they separate) and each vertex becomes the face formed by its fan.
pub fn dual_torus(x: &CellComplex) -> Result<DerivedComplex, ComplexError> {
    x.check_closed_surface()?;
    let nf = x.faces().len() as u32;
    let ne = x.edges().len() as u32;
    let face_label: HashMap<CellId, VertexLabel> =
        x.faces().iter().enumerate().map(|(i, &f)| (f, i as u32)).collect();

    let mut cells = Vec::new();
    let mut origin = BTreeMap::new();
    for (i, &f) in x.faces().iter().enumerate() {
        cells.push(Cell::vertex(i as u32, i as u32));
        origin.insert(CellId(i as u32), f);
    }
    for (i, &e) in x.edges().iter().enumerate() {
        let on = x.faces_on(e);
        let (a, b) = (face_label[&on[0]], face_label[&on[1]]);
        if a == b {
            return Err(ComplexError::NotSimple(format!("edge {e} has the same face on both sides")));
        }
        let id = nf + i as u32;
        cells.push(Cell::edge(id, a, b));
        origin.insert(CellId(id), e);
    }
    for (i, &v) in x.vertices().iter().enumerate() {
        let fan = x.vertex_fan(v)?;
        let border: Vec<_> = fan.iter().map(|(_, f)| face_label[f]).collect();
        let id = nf + ne + i as u32;
        cells.push(Cell::face(id, &border));
        origin.insert(CellId(id), v);
    }
    let complex = CellComplex::build(cells).map_err(|e| match e {
        ComplexError::DuplicateCell(a, b) => {
            ComplexError::NotSimple(format!("dual cells {a} and {b} coincide"))
        }
        ComplexError::NonCyclicBorder(f) => {
            ComplexError::NotSimple(format!("dual face {f} repeats a vertex"))
        }
        other => other,
    })?;
    Ok(DerivedComplex { complex, origin })
}

/// Line (medial) complex of a toroidal complex with cubic skeleton: edges
/// become vertices, one polygon per face and one triangle per vertex.
pub fn line_complex(x: &CellComplex) -> Result<DerivedComplex, ComplexError> {
    x.check_toroidal()?;
    if x.vertices().iter().any(|&v| x.degree(v) != 3) {
        return Err(ComplexError::NotCubic);
    }
    let ne = x.edges().len() as u32;
    let edge_label: HashMap<CellId, VertexLabel> =
        x.edges().iter().enumerate().map(|(i, &e)| (e, i as u32)).collect();
    let mut cells = Vec::new();
    let mut origin = BTreeMap::new();
    for (i, &e) in x.edges().iter().enumerate() {
        cells.push(Cell::vertex(i as u32, i as u32));
        origin.insert(CellId(i as u32), e);
    }
    let mut next = ne;
    for &v in x.vertices() {
        let es = x.edges_at(v);
        for i in 0..es.len() {
            for j in i + 1..es.len() {
                cells.push(Cell::edge(next, edge_label[&es[i]], edge_label[&es[j]]));
                origin.insert(CellId(next), v);
                next += 1;
            }
        }
    }
    for &f in x.faces() {
        let border: Vec<_> = x.border(f).edges.iter().map(|e| edge_label[e]).collect();
        cells.push(Cell::face(next, &border));
        origin.insert(CellId(next), f);
        next += 1;
    }
    for &v in x.vertices() {
        let fan = x.vertex_fan(v)?;
        let border: Vec<_> = fan.iter().map(|(e, _)| edge_label[e]).collect();
        cells.push(Cell::face(next, &border));
        origin.insert(CellId(next), v);
        next += 1;
    }
    let complex = CellComplex::build(cells).map_err(|e| match e {
        ComplexError::DuplicateCell(a, b) => {
            ComplexError::NotSimple(format!("line cells {a} and {b} coincide"))
        }
        other => other,
    })?;
    Ok(DerivedComplex { complex, origin })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn triangle() -> CellComplex {
        CellComplex::build(vec![
            Cell::vertex(0, 0),
            Cell::vertex(1, 1),
            Cell::vertex(2, 2),
            Cell::edge(3, 0, 1),
            Cell::edge(4, 1, 2),
            Cell::edge(5, 0, 2),
            Cell::face(6, &[0, 1, 2]),
        ])
        .unwrap()
    }

    #[test]
    fn single_vertex_complex() {
        let x = CellComplex::build(vec![Cell::vertex(0, 7)]).unwrap();
        assert_eq!(x.counts(), (1, 0, 0));
        assert_eq!(x.euler_characteristic(), 1);
    }

    #[test]
    fn triangle_border_alternates() {
        let x = triangle();
        let b = x.border(CellId(6));
        assert_eq!(b.alternating().len(), 6);
        assert_eq!(x.euler_characteristic(), 1);
        assert_eq!(b.vertices, vec![CellId(0), CellId(1), CellId(2)]);
        assert_eq!(b.edges, vec![CellId(3), CellId(4), CellId(5)]);
    }

    #[test]
    fn canonical_cycle_direction() {
        assert_eq!(canonical_cycle(&[3, 1, 4, 2]), vec![1, 3, 2, 4]);
        assert_eq!(canonical_cycle(&[5, 2, 9]), vec![2, 5, 9]);
    }

    #[test]
    fn unordered_face_is_ordered_from_induced_cycle() {
        let x = CellComplex::build(vec![
            Cell::vertex(0, 0),
            Cell::vertex(1, 1),
            Cell::vertex(2, 2),
            Cell::vertex(3, 3),
            Cell::edge(4, 0, 1),
            Cell::edge(5, 1, 2),
            Cell::edge(6, 2, 3),
            Cell::edge(7, 0, 3),
            Cell::face(8, &[0, 2, 1, 3]),
        ])
        .unwrap();
        assert_eq!(x.cell(CellId(8)).unwrap().vertices, vec![0, 1, 2, 3]);
    }

    #[test]
    fn errors() {
        assert_eq!(CellComplex::build(vec![]).unwrap_err(), ComplexError::Empty);
        let dup = CellComplex::build(vec![Cell::vertex(0, 0), Cell::vertex(0, 1)]);
        assert_eq!(dup.unwrap_err(), ComplexError::DuplicateId(CellId(0)));
        let same = CellComplex::build(vec![
            Cell::vertex(0, 0),
            Cell::vertex(1, 1),
            Cell::edge(2, 0, 1),
            Cell::edge(3, 1, 0),
        ]);
        assert_eq!(same.unwrap_err(), ComplexError::DuplicateCell(CellId(2), CellId(3)));
        let dangling = CellComplex::build(vec![Cell::vertex(0, 0), Cell::edge(1, 0, 9)]);
        assert!(matches!(
            dangling.unwrap_err(),
            ComplexError::DanglingVertexReference { label: 9, .. }
        ));
        let open = CellComplex::build(vec![
            Cell::vertex(0, 0),
            Cell::vertex(1, 1),
            Cell::vertex(2, 2),
            Cell::edge(3, 0, 1),
            Cell::edge(4, 1, 2),
            Cell::face(5, &[0, 1, 2]),
        ]);
        assert_eq!(open.unwrap_err(), ComplexError::NonCyclicBorder(CellId(5)));
        let repeated = CellComplex::build(vec![
            Cell::vertex(0, 0),
            Cell::vertex(1, 1),
            Cell::vertex(2, 2),
            Cell::edge(3, 0, 1),
            Cell::edge(4, 1, 2),
            Cell::edge(5, 0, 2),
            Cell::face(6, &[0, 1, 2, 1]),
        ]);
        assert_eq!(repeated.unwrap_err(), ComplexError::NonCyclicBorder(CellId(6)));
    }

    #[test]
    fn containment_queries() {
        let x = triangle();
        assert_eq!(x.contained_in(CellId(6)).len(), 6);
        assert_eq!(x.containing(CellId(0)), vec![CellId(3), CellId(5), CellId(6)]);
    }

    #[test]
    fn sphere_is_rejected_by_line_complex() {
        // tetrahedron: K4 on the sphere
        let mut cells: Vec<Cell> = (0..4).map(|i| Cell::vertex(i, i)).collect();
        let mut id = 4;
        for a in 0..4 {
            for b in a + 1..4 {
                cells.push(Cell::edge(id, a, b));
                id += 1;
            }
        }
        for tri in [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
            cells.push(Cell::face(id, &tri));
            id += 1;
        }
        let k4 = CellComplex::build(cells).unwrap();
        assert_eq!(k4.euler_characteristic(), 2);
        assert!(k4.check_closed_surface().is_ok());
        assert_eq!(line_complex(&k4).unwrap_err(), ComplexError::NotToroidal(2));
        assert!(dual_torus(&k4).is_ok());
    }

    #[test]
    fn open_triangle_is_not_closed() {
        assert!(matches!(dual_torus(&triangle()), Err(ComplexError::NotClosedSurface(_))));
    }
}
