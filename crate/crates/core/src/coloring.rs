//! Color assignments and the ways colorings are built and carried between
//! complexes.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{CellComplex, CellId, Rank};
use crate::lattice::{kernel_check, Lattice2D};
use crate::search::{solve, Outcome, SearchError, SearchProblem, Target};
use crate::tiling::{Frame, Generated, Merge, Provenance, Role, TilingSpec, TorusComplex};

/// Total map from cells to colors in `0..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorAssignment {
    pub k: u8,
    pub colors: BTreeMap<CellId, u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("the color form does not vanish on lattice {0}")]
    NotDescendable(Lattice2D),
    #[error("complex has no closed-form coloring: {0}")]
    WrongSource(String),
    #[error("no completion of the inherited colors exists")]
    NoCompletion,
    #[error("merged face {face} has color {color} but its border leaves {missing:?} unused")]
    MissingColorMismatch { face: CellId, color: u8, missing: Vec<u8> },
    #[error("border uses {present:?}; exactly one of 0..={k} must be missing")]
    NotExactlyOneMissing { present: Vec<u8>, k: u8 },
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error(transparent)]
    Search(#[from] SearchError),
}

impl ColorAssignment {
    pub fn new(k: u8) -> Self {
        ColorAssignment { k, colors: BTreeMap::new() }
    }

    pub fn get(&self, id: CellId) -> Option<u8> {
        self.colors.get(&id).copied()
    }

    pub fn color(&self, id: CellId) -> u8 {
        self.colors[&id]
    }

    /// Every cell of `x` colored, nothing else colored, all colors in range.
    pub fn is_total_on(&self, x: &CellComplex) -> bool {
        self.colors.len() == x.len()
            && x.cells().iter().all(|c| self.colors.contains_key(&c.id))
            && self.colors.values().all(|&c| c <= self.k)
    }

    pub fn restricted(&self, keep: impl Fn(CellId) -> bool) -> BTreeMap<CellId, u8> {
        self.colors.iter().filter(|(id, _)| keep(**id)).map(|(a, b)| (*a, *b)).collect()
    }

    /// Per rank, the number of cells of each color.
    pub fn color_counts(&self, x: &CellComplex) -> [BTreeMap<u8, usize>; 3] {
        let mut out: [BTreeMap<u8, usize>; 3] = Default::default();
        for c in x.cells() {
            if let Some(col) = self.get(c.id) {
                *out[c.rank.index()].entry(col).or_insert(0) += 1;
            }
        }
        out
    }

    /// Relabels colors in order of first appearance along ascending cell id,
    /// giving one representative per orbit under color permutation.
    pub fn canonical_relabel(&self) -> ColorAssignment {
        let mut map: BTreeMap<u8, u8> = BTreeMap::new();
        let mut colors = BTreeMap::new();
        for (&id, &c) in &self.colors {
            let next = map.len() as u8;
            colors.insert(id, *map.entry(c).or_insert(next));
        }
        ColorAssignment { k: self.k, colors }
    }

    pub fn same_up_to_permutation(&self, other: &ColorAssignment) -> bool {
        self.k == other.k && self.canonical_relabel() == other.canonical_relabel()
    }

    /// Colors as one digit per cell in ascending id order (base 36).
    pub fn to_digits(&self) -> String {
        self.colors.values().map(|&c| std::char::from_digit(c as u32, 36).unwrap()).collect()
    }

    pub fn from_digits(x: &CellComplex, k: u8, digits: &str) -> Option<ColorAssignment> {
        let mut ids: Vec<CellId> = x.cells().iter().map(|c| c.id).collect();
        ids.sort_unstable();
        if ids.len() != digits.chars().count() {
            return None;
        }
        let colors = ids
            .into_iter()
            .zip(digits.chars())
            .map(|(id, ch)| Some((id, ch.to_digit(36)? as u8)))
            .collect::<Option<BTreeMap<_, _>>>()?;
        Some(ColorAssignment { k, colors })
    }
}

/// Colors of the border cells (vertices and edges) of a face.
pub fn border_colors(x: &CellComplex, c: &ColorAssignment, f: CellId) -> BTreeSet<u8> {
    x.border(f).elements().filter_map(|id| c.get(id)).collect()
}

/// The single color of `0..=k` absent from `present`.
pub fn missing_color(present: &BTreeSet<u8>, k: u8) -> Result<u8, ColoringError> {
    let missing: Vec<u8> = (0..=k).filter(|c| !present.contains(c)).collect();
    match missing.as_slice() {
        [m] => Ok(*m),
        _ => Err(ColoringError::NotExactlyOneMissing { present: present.iter().copied().collect(), k }),
    }
}

/// Closed-form coloring of a square or triangular quotient.
pub fn color_closed_form(t: &TorusComplex) -> Result<ColorAssignment, ColoringError> {
    let form = t.frame.color_form();
    if !kernel_check(&form, &t.lattice) {
        return Err(ColoringError::NotDescendable(t.lattice));
    }
    let mut c = ColorAssignment::new(t.frame.k());
    for cell in t.complex.cells() {
        let pc = t.roles.get(&cell.id).ok_or_else(|| {
            ColoringError::WrongSource(format!("cell {} has no plane role", cell.id))
        })?;
        c.colors.insert(cell.id, form.eval(pc.role.key(), pc.base).unwrap());
    }
    Ok(c)
}

pub fn color_square(t: &TorusComplex) -> Result<ColorAssignment, ColoringError> {
    match t.frame {
        Frame::Square => color_closed_form(t),
        _ => Err(ColoringError::WrongSource("not a square quotient".into())),
    }
}

pub fn color_triangular(t: &TorusComplex) -> Result<ColorAssignment, ColoringError> {
    match t.frame {
        Frame::Triangular(_) => color_closed_form(t),
        _ => Err(ColoringError::WrongSource("not a triangular quotient".into())),
    }
}

/// Carries a coloring to the dual: each dual cell takes the color of the
/// cell it came from, so vertex and face colors swap and edges keep theirs.
pub fn color_dual(origin: &BTreeMap<CellId, CellId>, c: &ColorAssignment) -> ColorAssignment {
    ColorAssignment { k: c.k, colors: origin.iter().map(|(&new, old)| (new, c.color(*old))).collect() }
}

/// Colors of the line complex fixed by inheritance: line vertices from the
/// underlying edges, polygons from the faces and triangles from the vertices.
pub fn line_inherited(
    line: &CellComplex,
    origin: &BTreeMap<CellId, CellId>,
    c: &ColorAssignment,
) -> BTreeMap<CellId, u8> {
    origin
        .iter()
        .filter(|(new, _)| line.rank_of(**new) != Rank::Edge)
        .map(|(&new, old)| (new, c.color(*old)))
        .collect()
}

/// Inherited line-complex colors with the line edges completed by search
/// (first solution at the strict level).
pub fn color_line(
    line: &CellComplex,
    origin: &BTreeMap<CellId, CellId>,
    c: &ColorAssignment,
    bound: usize,
) -> Result<ColorAssignment, ColoringError> {
    let fixed = line_inherited(line, origin, c);
    let p = SearchProblem::new(line, c.k, Target::Setcc).fixed(fixed).bound(bound);
    match solve(&p)? {
        Outcome::Solution(s) => Ok(s),
        _ => Err(ColoringError::NoCompletion),
    }
}

/// Surviving cells keep their colors; each merged face takes the color of
/// its representative deleted cell. No check is made.
pub fn inherit_carved(
    x: &CellComplex,
    merges: &BTreeMap<CellId, Merge>,
    c: &ColorAssignment,
) -> ColorAssignment {
    let colors = x
        .cells()
        .iter()
        .map(|cell| {
            let col = match merges.get(&cell.id) {
                Some(m) => c.color(m.representative),
                None => c.color(cell.id),
            };
            (cell.id, col)
        })
        .collect();
    ColorAssignment { k: c.k, colors }
}

/// As [`inherit_carved`], but every merged face's border must miss exactly
/// the color the face received.
pub fn color_carved(
    x: &CellComplex,
    merges: &BTreeMap<CellId, Merge>,
    c: &ColorAssignment,
) -> Result<ColorAssignment, ColoringError> {
    let out = inherit_carved(x, merges, c);
    for &f in merges.keys() {
        let present = border_colors(x, &out, f);
        let color = out.color(f);
        if missing_color(&present, c.k) != Ok(color) {
            let missing = (0..=c.k).filter(|m| !present.contains(m)).collect();
            return Err(ColoringError::MissingColorMismatch { face: f, color, missing });
        }
    }
    Ok(out)
}

/// The coloring the construction carries: closed forms on base quotients,
/// transported through duals and line complexes, and inherited through
/// carving. With `strict`, carved faces must satisfy the missing-color rule.
pub fn construction_coloring(
    g: &Generated,
    strict: bool,
    bound: usize,
) -> Result<ColorAssignment, ColoringError> {
    match &g.provenance {
        Provenance::Base => color_closed_form(&g.torus),
        Provenance::Dual { of, origin } => Ok(color_dual(origin, &construction_coloring(of, strict, bound)?)),
        Provenance::Line { of, origin } => {
            color_line(g.complex(), origin, &construction_coloring(of, strict, bound)?, bound)
        }
        Provenance::Carved { of, merges } => {
            let base = construction_coloring(of, strict, bound)?;
            if strict {
                color_carved(g.complex(), merges, &base)
            } else {
                Ok(inherit_carved(g.complex(), merges, &base))
            }
        }
    }
}

/// Colors of the construction restricted to vertices, for searches that
/// keep the inherited vertex coloring.
pub fn inherited_vertex_colors(g: &Generated, bound: usize) -> Result<BTreeMap<CellId, u8>, ColoringError> {
    let c = construction_coloring(g, false, bound)?;
    let x = g.complex();
    Ok(c.restricted(|id| x.rank_of(id) == Rank::Vertex))
}

/// Colors a 3².4.3.4 complex from its base triangulation, giving each square
/// the color of one of the two triangles it replaced: the up triangle for
/// deleted edges whose orbit flag is false, the down triangle otherwise.
/// Orbit `i` is the `i`-th entry of the frozen deletion pattern.
pub fn snub_triangle_choice(g: &Generated, choice: [bool; 2]) -> Result<ColorAssignment, ColoringError> {
    let Provenance::Carved { of, merges } = &g.provenance else {
        return Err(ColoringError::WrongSource("not a carved complex".into()));
    };
    let base = color_closed_form(&of.torus)?;
    let mut out = inherit_carved(g.complex(), merges, &base);
    for (&f, m) in merges {
        let e = m.deleted_edges[0];
        let orbit = if of.torus.roles[&e].role == Role::V { 0 } else { 1 };
        let want = if choice[orbit] { Role::Down } else { Role::Up };
        let tri = m.faces.iter().copied().find(|t| of.torus.roles[t].role == want).unwrap();
        out.colors.insert(f, base.color(tri));
    }
    Ok(out)
}

/// A coloring found once by search and frozen, stored as [`ColorAssignment::to_digits`].
#[derive(Clone, Copy, Debug)]
pub struct Preset {
    pub spec: &'static str,
    pub name: &'static str,
    pub digits: &'static str,
    /// What the preset is for and the level it reaches.
    pub note: &'static str,
}

pub const PRESETS: &[Preset] = &[
    Preset {
        spec: "cr3_4_6_4@u=7,0;v=0,7",
        name: "strong",
        digits: "010651101260210421056043412621104356012132235630340432654345010534165232523650413056315062046141401352653256506403345344252646323331426066665254201440456643061553543253",
        note: "strong coloring; inherited faces all receive color 0, so edges are recolored",
    },
    Preset {
        spec: "cr3_3_4_3_4@u=28,0;v=11,2",
        name: "inherited_vertices",
        digits: "0123456012345601234560123456560123456012345601234560123420340420521604212362016451063030513235041602626012124636345615631301532453163043156051040230624521462506126153520434505613420123240254624106354601345161524345043241601226542315305430265425156015306135324653502412661301360336",
        note: "triangular vertex colors kept; reaches the face rule but not the strong level",
    },
    Preset {
        spec: "cr3_3_4_3_4@u=16,0;v=13,2",
        name: "strong_a",
        digits: "0143461250636402525053141215135623603042163204245360234535620432562603414661021436100643652064405206340514634021656505014141511532232332322323324116600404455660",
        note: "strong coloring",
    },
    Preset {
        spec: "cr3_3_4_3_4@u=16,0;v=13,2",
        name: "strong_b",
        digits: "0532365150626301414042434145424612602031562103135260123525610321561602353665015326500632651063305106230553623015646404043434545421121221211212213556600303355660",
        note: "strong coloring, not a color permutation of strong_a",
    },
    Preset {
        spec: "cr3_3_4_3_4@u=16,0;v=13,2",
        name: "face_rule",
        digits: "0201020343010201364216526143614510341453645314521506152465246513546302645232106536042304613403523061240523536126153553612552532353451252655263456264034545215141",
        note: "reaches the face rule but two faces at a vertex share a color",
    },
];

/// The frozen coloring `name` for the complex generated from `spec`.
pub fn preset(spec: &TilingSpec, name: &str) -> Option<ColorAssignment> {
    let p = PRESETS.iter().find(|p| p.name == name && p.spec.parse::<TilingSpec>().ok() == Some(*spec))?;
    let g = crate::tiling::gen_family(spec).ok()?;
    ColorAssignment::from_digits(g.complex(), g.torus.frame.k(), p.digits)
}

pub fn preset_names(spec: &TilingSpec) -> Vec<&'static str> {
    PRESETS
        .iter()
        .filter(|p| p.spec.parse::<TilingSpec>().ok() == Some(*spec))
        .map(|p| p.name)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Point;
    use crate::tiling::{gen_family, Generated};

    fn gen(s: &str) -> Generated {
        gen_family(&s.parse().unwrap()).unwrap()
    }

    fn at(g: &Generated, role: Role, p: Point) -> CellId {
        *g.torus.roles.iter().find(|(_, c)| c.role == role && c.base == p).unwrap().0
    }

    #[test]
    fn square_closed_form_values() {
        let g = gen("square@u=5,0;v=0,5");
        let c = color_square(&g.torus).unwrap();
        assert_eq!(c.color(at(&g, Role::Vertex, (0, 0))), 2);
        assert_eq!(c.color(at(&g, Role::Vertex, (1, 0))), 3);
        assert_eq!(c.color(at(&g, Role::Square, (0, 0))), 1);
        assert_eq!(c.color(at(&g, Role::V, (0, 0))), 3);
        assert_eq!(c.color(at(&g, Role::H, (0, 0))), 0);
        let row: Vec<u8> = (0..5).map(|x| c.color(at(&g, Role::Vertex, (x, 0)))).collect();
        assert_eq!(row, vec![2, 3, 4, 0, 1]);
    }

    #[test]
    fn triangular_closed_form_values() {
        let g = gen("triangular@u=7,0;v=0,7");
        let c = color_triangular(&g.torus).unwrap();
        assert_eq!(c.color(at(&g, Role::Vertex, (0, 0))), 0);
        assert_eq!(c.color(at(&g, Role::Vertex, (1, 0))), 1);
        assert_eq!(c.color(at(&g, Role::Vertex, (0, 1))), 5);
        let up = at(&g, Role::Up, (0, 0));
        assert_eq!(c.color(up), 2);
        let border = border_colors(g.complex(), &c, up);
        assert_eq!(border, BTreeSet::from([0, 1, 5, 4, 6, 3]));
        assert_eq!(missing_color(&border, 6), Ok(2));
    }

    #[test]
    fn not_descendable() {
        let g = gen("square@u=5,0;v=0,3");
        assert!(matches!(color_square(&g.torus), Err(ColoringError::NotDescendable(_))));
        let g = gen("triangular@u=7,0;v=1,7;chirality=main");
        assert!(matches!(color_triangular(&g.torus), Err(ColoringError::NotDescendable(_))));
    }

    #[test]
    fn closed_forms_are_lattice_periodic() {
        // the same plane cell reached through different lifts gets one color
        let g = gen("triangular@u=7,0;v=0,7");
        let form = g.torus.frame.color_form();
        for p in [(0, 0), (3, 5), (-2, 4)] {
            for lam in [(7, 0), (0, 7), (-7, 14)] {
                let q = (p.0 + lam.0, p.1 + lam.1);
                for role in ["vertex", "h", "v", "d", "up", "down"] {
                    assert_eq!(form.eval(role, p), form.eval(role, q));
                }
            }
        }
    }

    #[test]
    fn missing_color_cases() {
        assert_eq!(missing_color(&BTreeSet::from([0, 2, 3, 4]), 4), Ok(1));
        assert_eq!(missing_color(&BTreeSet::from([0, 1, 2, 3, 4, 5]), 6), Ok(6));
        assert!(matches!(
            missing_color(&BTreeSet::from([0, 1, 2]), 4),
            Err(ColoringError::NotExactlyOneMissing { .. })
        ));
    }

    #[test]
    fn dual_coloring_swaps_ranks() {
        let g = gen("hexagonal");
        let Provenance::Dual { of, origin } = &g.provenance else { panic!() };
        let base = color_triangular(&of.torus).unwrap();
        let d = color_dual(origin, &base);
        let up = at(of, Role::Up, (0, 0));
        let v0 = at(of, Role::Vertex, (0, 0));
        let dual_vertex = origin.iter().find(|(_, o)| **o == up).unwrap().0;
        let dual_face = origin.iter().find(|(_, o)| **o == v0).unwrap().0;
        assert_eq!(d.color(*dual_vertex), 2);
        assert_eq!(d.color(*dual_face), 0);
        // dual twice is the original up to the id correspondence
        let Provenance::Dual { origin: o1, .. } = &g.provenance else { panic!() };
        let (back, o2) = crate::tiling::dual_of(&g.torus).unwrap();
        let twice = color_dual(&o2, &d);
        for (&id, &mid) in &o2 {
            assert_eq!(twice.color(id), base.color(o1[&mid]));
        }
        assert_eq!(back.complex.counts(), of.complex().counts());
    }

    #[test]
    fn digits_round_trip() {
        let g = gen("triangular");
        let c = color_triangular(&g.torus).unwrap();
        let s = c.to_digits();
        assert_eq!(s.len(), 42);
        assert_eq!(ColorAssignment::from_digits(g.complex(), 6, &s), Some(c.clone()));
        assert!(c.same_up_to_permutation(&c.canonical_relabel()));
    }

    #[test]
    fn line_inheritance() {
        let g = gen("trihexagonal");
        let Provenance::Line { of, origin } = &g.provenance else { panic!() };
        let hex = construction_coloring(of, true, 200).unwrap();
        let c = color_line(g.complex(), origin, &hex, 200).unwrap();
        for (&new, &old) in origin {
            if g.complex().rank_of(new) != Rank::Edge {
                assert_eq!(c.color(new), hex.color(old));
            }
        }
        // a triangle of the line complex carries the color of an up face
        let Provenance::Dual { of: tri, origin: dorig } = &of.provenance else { panic!() };
        let up = at(tri, Role::Up, (0, 0));
        let hex_vertex = *dorig.iter().find(|(_, o)| **o == up).unwrap().0;
        let line_tri = *origin.iter().find(|(n, o)| **o == hex_vertex && g.complex().rank_of(**n) == Rank::Face).unwrap().0;
        assert_eq!(c.color(line_tri), 2);
    }

    #[test]
    fn presets_reach_their_levels() {
        use crate::verify::{verify, Level};
        let expect = [
            ("strong", true),
            ("strong_a", true),
            ("strong_b", true),
            ("face_rule", false),
            ("inherited_vertices", false),
        ];
        for p in PRESETS {
            let spec: TilingSpec = p.spec.parse().unwrap();
            let g = gen(p.spec);
            let c = preset(&spec, p.name).unwrap();
            assert!(c.is_total_on(g.complex()), "{}", p.name);
            let r = verify(g.complex(), &c);
            let strong = expect.iter().find(|e| e.0 == p.name).unwrap().1;
            for l in [Level::L2ProperTotal, Level::L4Etcc] {
                assert!(!r.level(l).failed(), "{} {l:?}", p.name);
            }
            assert_eq!(r.level(Level::L5Setcc).passed(), strong, "{}", p.name);
        }
        let spec: TilingSpec = "cr3_3_4_3_4@u=16,0;v=13,2".parse().unwrap();
        let a = preset(&spec, "strong_a").unwrap();
        assert!(!a.same_up_to_permutation(&preset(&spec, "strong_b").unwrap()));
        assert_eq!(preset_names(&spec), ["strong_a", "strong_b", "face_rule"]);
    }

    #[test]
    fn snub_triangle_choices_break_the_face_rule() {
        use crate::verify::{verify, Level};
        let g = gen("cr3_3_4_3_4");
        for choice in [[false, false], [false, true], [true, false], [true, true]] {
            let c = snub_triangle_choice(&g, choice).unwrap();
            assert!(verify(g.complex(), &c).level(Level::L4Etcc).failed(), "{choice:?}");
        }
    }
}
