//! Incidence structures, the field planes PG(2,q), and the three
//! projective-plane axioms.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{make_field, FieldElement, FieldError, FieldSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlaneError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("line {line} contains point {point}, outside 0..{point_count}")]
    PointOutOfRange {
        line: usize,
        point: usize,
        point_count: usize,
    },
    #[error("line {line} lists point {point} more than once")]
    DuplicatePoint { line: usize, point: usize },
    #[error("lines {first} and {second} contain the same points")]
    DuplicateLine { first: usize, second: usize },
    #[error("line {0} is empty")]
    EmptyLine(usize),
    #[error("expected {expected} point labels, found {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("structure is not a projective plane: {0}")]
    NotAPlane(String),
    #[error("arguments must be distinct, got {0} twice")]
    IdenticalArguments(usize),
    #[error("index {index} out of range (count {count})")]
    IndexOutOfRange { index: usize, count: usize },
}

/// Where an incidence structure came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Origin {
    FieldPlane { q: u8 },
    Developed { n: usize, residues: Vec<usize> },
    Custom,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::FieldPlane { q } => write!(f, "field plane PG(2,{q})"),
            Origin::Developed { n, residues } => {
                let set: Vec<String> = residues.iter().map(|r| r.to_string()).collect();
                write!(f, "developed from {{{}}} mod {n}", set.join(","))
            }
            Origin::Custom => write!(f, "custom"),
        }
    }
}

/// A point of PG(2,q): a nonzero triple scaled so that its leftmost nonzero
/// coordinate is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomogeneousPoint {
    coords: [FieldElement; 3],
}

impl HomogeneousPoint {
    /// Normalizes `coords`; `None` when all three are zero.
    pub fn new(coords: [FieldElement; 3]) -> Result<Option<Self>, FieldError> {
        let spec = coords[0].spec();
        for c in &coords[1..] {
            if c.spec() != spec {
                return Err(FieldError::SpecMismatch {
                    left: spec.q(),
                    right: c.spec().q(),
                });
            }
        }
        let Some(lead) = coords.iter().find(|c| !c.is_zero()) else {
            return Ok(None);
        };
        let scale = lead.inv()?;
        let coords = coords.map(|c| c.mul(&scale).expect("same field"));
        Ok(Some(HomogeneousPoint { coords }))
    }

    pub fn coords(&self) -> &[FieldElement; 3] {
        &self.coords
    }

    pub fn reps(&self) -> [u8; 3] {
        self.coords.map(|c| c.rep())
    }

    pub fn label(&self) -> String {
        let [x, y, z] = self.reps();
        format!("({x},{y},{z})")
    }
}

/// All normalized points of PG(2,q), in lexicographic order of coordinate reps.
pub fn normalized_points(spec: &FieldSpec) -> Vec<HomogeneousPoint> {
    let els = spec.elements();
    let mut out = Vec::new();
    for x in &els {
        for y in &els {
            for z in &els {
                if let Some(pt) = HomogeneousPoint::new([*x, *y, *z]).expect("same field") {
                    if pt.coords == [*x, *y, *z] {
                        out.push(pt);
                    }
                }
            }
        }
    }
    out
}

/// Points plus lines-as-point-sets.
///
/// Lines are kept in the order supplied, each sorted ascending. Construction
/// rejects out-of-range indices, repeated points within a line, empty lines,
/// and two lines with the same membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceStructure {
    point_count: usize,
    point_labels: Option<Vec<String>>,
    lines: Vec<Vec<usize>>,
    origin: Origin,
}

/// Serialized plane document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneDocument {
    pub origin: Origin,
    pub point_count: usize,
    pub point_labels: Option<Vec<String>>,
    pub lines: Vec<Vec<usize>>,
}

impl IncidenceStructure {
    pub fn new(
        point_count: usize,
        lines: Vec<Vec<usize>>,
        point_labels: Option<Vec<String>>,
        origin: Origin,
    ) -> Result<Self, PlaneError> {
        if let Some(labels) = &point_labels {
            if labels.len() != point_count {
                return Err(PlaneError::LabelCount {
                    expected: point_count,
                    found: labels.len(),
                });
            }
        }
        let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut sorted_lines = Vec::with_capacity(lines.len());
        for (idx, mut line) in lines.into_iter().enumerate() {
            if line.is_empty() {
                return Err(PlaneError::EmptyLine(idx));
            }
            line.sort_unstable();
            for pair in line.windows(2) {
                if pair[0] == pair[1] {
                    return Err(PlaneError::DuplicatePoint {
                        line: idx,
                        point: pair[0],
                    });
                }
            }
            if let Some(&point) = line.iter().find(|&&p| p >= point_count) {
                return Err(PlaneError::PointOutOfRange {
                    line: idx,
                    point,
                    point_count,
                });
            }
            if let Some(&first) = seen.get(&line) {
                return Err(PlaneError::DuplicateLine { first, second: idx });
            }
            seen.insert(line.clone(), idx);
            sorted_lines.push(line);
        }
        Ok(IncidenceStructure {
            point_count,
            point_labels,
            lines: sorted_lines,
            origin,
        })
    }

    pub fn from_document(doc: PlaneDocument) -> Result<Self, PlaneError> {
        Self::new(doc.point_count, doc.lines, doc.point_labels, doc.origin)
    }

    pub fn to_document(&self) -> PlaneDocument {
        PlaneDocument {
            origin: self.origin.clone(),
            point_count: self.point_count,
            point_labels: self.point_labels.clone(),
            lines: self.lines.clone(),
        }
    }

    pub fn point_count(&self) -> usize {
        self.point_count
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn point_labels(&self) -> Option<&[String]> {
        self.point_labels.as_deref()
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    /// The set of lines, each as a sorted point list, ignoring line order.
    pub fn line_set(&self) -> BTreeSet<Vec<usize>> {
        self.lines.iter().cloned().collect()
    }

    /// `incidence[l][p]` is true when point `p` lies on line `l`.
    pub fn incidence_matrix(&self) -> Vec<Vec<bool>> {
        self.lines
            .iter()
            .map(|line| {
                let mut row = vec![false; self.point_count];
                for &p in line {
                    row[p] = true;
                }
                row
            })
            .collect()
    }

    /// Lines through each point, ascending.
    pub fn lines_through_points(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.point_count];
        for (l, line) in self.lines.iter().enumerate() {
            for &p in line {
                out[p].push(l);
            }
        }
        out
    }
}

/// Builds PG(2,q).
///
/// Points are the normalized triples in lexicographic rep order; line
/// `[a,b,c]` is the set of points with `a·x + b·y + c·z = 0`, and lines are
/// ordered lexicographically by their sorted member lists.
pub fn build_field_plane(q: i64) -> Result<IncidenceStructure, PlaneError> {
    let spec = make_field(q)?;
    let points = normalized_points(&spec);
    let reps: Vec<[u8; 3]> = points.iter().map(|p| p.reps()).collect();
    let mut lines: Vec<Vec<usize>> = reps
        .iter()
        .map(|dual| {
            reps.iter()
                .enumerate()
                .filter(|(_, pt)| dot(&spec, dual, pt) == 0)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    lines.sort();
    let labels = points.iter().map(|p| p.label()).collect();
    IncidenceStructure::new(
        points.len(),
        lines,
        Some(labels),
        Origin::FieldPlane { q: spec.q() },
    )
}

fn dot(spec: &FieldSpec, a: &[u8; 3], b: &[u8; 3]) -> u8 {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| spec.add_rep(acc, spec.mul_rep(x, y)))
}

/// Counterexample attached to a failed axiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Two points lying on zero or several common lines.
    PointPair {
        points: [usize; 2],
        common_lines: Vec<usize>,
    },
    /// Two lines sharing zero or several points.
    LinePair {
        lines: [usize; 2],
        common_points: Vec<usize>,
    },
    /// Every 4-set of points contains three collinear ones.
    NoQuadrilateral { point_count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axiom1_ok: bool,
    pub axiom2_ok: bool,
    pub axiom3_ok: bool,
    pub witnesses: AxiomWitnesses,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct AxiomWitnesses {
    pub axiom1: Option<Witness>,
    pub axiom2: Option<Witness>,
    pub axiom3: Option<Witness>,
}

impl AxiomReport {
    pub fn all_ok(&self) -> bool {
        self.axiom1_ok && self.axiom2_ok && self.axiom3_ok
    }
}

/// Decides the three axioms by exhaustive search. Witnesses are the first
/// failing pair in lexicographic order.
pub fn check_axioms(s: &IncidenceStructure) -> AxiomReport {
    let incidence = s.incidence_matrix();
    let n = s.point_count;

    let mut axiom1 = None;
    'points: for a in 0..n {
        for b in a + 1..n {
            let common: Vec<usize> = (0..s.lines.len())
                .filter(|&l| incidence[l][a] && incidence[l][b])
                .collect();
            if common.len() != 1 {
                axiom1 = Some(Witness::PointPair {
                    points: [a, b],
                    common_lines: common,
                });
                break 'points;
            }
        }
    }

    let mut axiom2 = None;
    'lines: for l in 0..s.lines.len() {
        for m in l + 1..s.lines.len() {
            let common: Vec<usize> = (0..n)
                .filter(|&p| incidence[l][p] && incidence[m][p])
                .collect();
            if common.len() != 1 {
                axiom2 = Some(Witness::LinePair {
                    lines: [l, m],
                    common_points: common,
                });
                break 'lines;
            }
        }
    }

    let axiom3 = if find_quadrilateral(s, &incidence).is_some() {
        None
    } else {
        Some(Witness::NoQuadrilateral { point_count: n })
    };

    AxiomReport {
        axiom1_ok: axiom1.is_none(),
        axiom2_ok: axiom2.is_none(),
        axiom3_ok: axiom3.is_none(),
        witnesses: AxiomWitnesses {
            axiom1,
            axiom2,
            axiom3,
        },
    }
}

/// First 4-set (lexicographic) with no three points on a common line.
pub fn find_quadrilateral(s: &IncidenceStructure, incidence: &[Vec<bool>]) -> Option<[usize; 4]> {
    let collinear = |pts: [usize; 3]| incidence.iter().any(|row| pts.iter().all(|&p| row[p]));
    let n = s.point_count;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if collinear([a, b, c]) {
                    continue;
                }
                for d in c + 1..n {
                    if !collinear([a, b, d]) && !collinear([a, c, d]) && !collinear([b, c, d]) {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityStats {
    pub points: usize,
    pub lines: usize,
    pub points_per_line: BTreeSet<usize>,
    pub lines_per_point: BTreeSet<usize>,
    pub order: Option<usize>,
}

pub fn regularity_stats(s: &IncidenceStructure) -> RegularityStats {
    let points_per_line: BTreeSet<usize> = s.lines.iter().map(|l| l.len()).collect();
    let lines_per_point: BTreeSet<usize> =
        s.lines_through_points().iter().map(|l| l.len()).collect();
    let order = match (points_per_line.len(), lines_per_point.len()) {
        (1, 1) => {
            let k = *points_per_line.first().unwrap();
            (lines_per_point.first() == Some(&k) && k >= 1).then(|| k - 1)
        }
        _ => None,
    };
    RegularityStats {
        points: s.point_count,
        lines: s.lines.len(),
        points_per_line,
        lines_per_point,
        order,
    }
}

/// An incidence structure known to satisfy all three axioms.
#[derive(Debug, Clone)]
pub struct ProjectivePlane {
    structure: IncidenceStructure,
    lines_through: Vec<Vec<usize>>,
    incidence: Vec<Vec<bool>>,
}

impl ProjectivePlane {
    pub fn verify(structure: IncidenceStructure) -> Result<Self, PlaneError> {
        let report = check_axioms(&structure);
        if !report.all_ok() {
            let failed: Vec<&str> = [
                (report.axiom1_ok, "axiom 1"),
                (report.axiom2_ok, "axiom 2"),
                (report.axiom3_ok, "axiom 3"),
            ]
            .iter()
            .filter(|(ok, _)| !ok)
            .map(|(_, name)| *name)
            .collect();
            return Err(PlaneError::NotAPlane(format!(
                "{} failed",
                failed.join(", ")
            )));
        }
        Ok(ProjectivePlane {
            lines_through: structure.lines_through_points(),
            incidence: structure.incidence_matrix(),
            structure,
        })
    }

    pub fn structure(&self) -> &IncidenceStructure {
        &self.structure
    }

    pub fn into_structure(self) -> IncidenceStructure {
        self.structure
    }

    /// Points per line minus one.
    pub fn order(&self) -> usize {
        self.structure.lines[0].len() - 1
    }

    pub fn lines_through(&self, p: usize) -> &[usize] {
        &self.lines_through[p]
    }

    pub fn incidence(&self) -> &[Vec<bool>] {
        &self.incidence
    }

    pub fn line_through(&self, p1: usize, p2: usize) -> Result<usize, PlaneError> {
        self.check_point(p1)?;
        self.check_point(p2)?;
        if p1 == p2 {
            return Err(PlaneError::IdenticalArguments(p1));
        }
        let line = self.lines_through[p1]
            .iter()
            .copied()
            .find(|&l| self.incidence[l][p2])
            .expect("axiom 1 holds");
        Ok(line)
    }

    pub fn meet(&self, l1: usize, l2: usize) -> Result<usize, PlaneError> {
        let count = self.structure.lines.len();
        for l in [l1, l2] {
            if l >= count {
                return Err(PlaneError::IndexOutOfRange { index: l, count });
            }
        }
        if l1 == l2 {
            return Err(PlaneError::IdenticalArguments(l1));
        }
        let point = self.structure.lines[l1]
            .iter()
            .copied()
            .find(|&p| self.incidence[l2][p])
            .expect("axiom 2 holds");
        Ok(point)
    }

    fn check_point(&self, p: usize) -> Result<(), PlaneError> {
        if p >= self.structure.point_count {
            return Err(PlaneError::IndexOutOfRange {
                index: p,
                count: self.structure.point_count,
            });
        }
        Ok(())
    }
}

/// Searches for a point bijection mapping the lines of `a` onto the lines of
/// `b`. Plain backtracking with a line-consistency check after each
/// assignment; fine for the small planes handled here.
pub fn find_isomorphism(a: &IncidenceStructure, b: &IncidenceStructure) -> Option<Vec<usize>> {
    if a.point_count != b.point_count || a.lines.len() != b.lines.len() {
        return None;
    }
    let mut sizes_a: Vec<usize> = a.lines.iter().map(|l| l.len()).collect();
    let mut sizes_b: Vec<usize> = b.lines.iter().map(|l| l.len()).collect();
    sizes_a.sort_unstable();
    sizes_b.sort_unstable();
    if sizes_a != sizes_b {
        return None;
    }
    let target: HashSet<Vec<usize>> = b.lines.iter().cloned().collect();
    let n = a.point_count;
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend_map(a, &target, b, &mut map, &mut used, 0) {
        Some(map)
    } else {
        None
    }
}

fn extend_map(
    a: &IncidenceStructure,
    target: &HashSet<Vec<usize>>,
    b: &IncidenceStructure,
    map: &mut [usize],
    used: &mut [bool],
    next: usize,
) -> bool {
    if next == map.len() {
        return a.lines.iter().all(|line| {
            let mut image: Vec<usize> = line.iter().map(|&p| map[p]).collect();
            image.sort_unstable();
            target.contains(&image)
        });
    }
    for cand in 0..map.len() {
        if used[cand] {
            continue;
        }
        map[next] = cand;
        used[cand] = true;
        // Every fully mapped line of `a` must land inside some line of `b`.
        let consistent = a
            .lines
            .iter()
            .filter(|line| line.contains(&next) && line.iter().all(|&p| p <= next))
            .all(|line| {
                let mut image: Vec<usize> = line.iter().map(|&p| map[p]).collect();
                image.sort_unstable();
                target.contains(&image)
            })
            && partial_lines_fit(a, b, map, next);
        if consistent && extend_map(a, target, b, map, used, next + 1) {
            return true;
        }
        used[cand] = false;
        map[next] = usize::MAX;
    }
    false
}

/// Any two mapped points that share a line in `a` must share a line in `b`.
fn partial_lines_fit(
    a: &IncidenceStructure,
    b: &IncidenceStructure,
    map: &[usize],
    next: usize,
) -> bool {
    a.lines
        .iter()
        .filter(|line| line.contains(&next))
        .all(|line| {
            let mapped: Vec<usize> = line
                .iter()
                .filter(|&&p| p <= next)
                .map(|&p| map[p])
                .collect();
            b.lines
                .iter()
                .any(|bl| mapped.iter().all(|p| bl.binary_search(p).is_ok()))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn canonical_fano() -> IncidenceStructure {
        let rows = vec![
            vec![0, 1, 3],
            vec![0, 4, 5],
            vec![0, 2, 6],
            vec![1, 5, 6],
            vec![1, 4, 2],
            vec![3, 4, 6],
            vec![3, 5, 2],
        ];
        IncidenceStructure::new(7, rows, None, Origin::Custom).unwrap()
    }

    #[test]
    fn field_plane_counts() {
        for (q, n, k) in [(2, 7, 3), (3, 13, 4), (5, 31, 6)] {
            let s = build_field_plane(q).unwrap();
            assert_eq!(s.point_count(), n);
            assert_eq!(s.line_count(), n);
            assert!(s.lines().iter().all(|l| l.len() == k));
        }
        assert!(matches!(
            build_field_plane(6),
            Err(PlaneError::Field(FieldError::UnsupportedOrder(6)))
        ));
    }

    #[test]
    fn field_plane_point_order_is_lexicographic() {
        let s = build_field_plane(3).unwrap();
        let labels = s.point_labels().unwrap();
        assert_eq!(labels[0], "(0,0,1)");
        assert_eq!(labels[1], "(0,1,0)");
        assert_eq!(labels[4], "(1,0,0)");
        assert_eq!(labels[12], "(1,2,2)");
        let lines = s.lines();
        assert!(lines.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn normalized_points_enumeration_oracle() {
        // Count nonzero triples directly and divide by the q-1 scalings.
        for q in [2i64, 3, 4, 5, 7, 8, 9] {
            let spec = make_field(q).unwrap();
            let expected = ((q * q * q) - 1) / (q - 1);
            assert_eq!(normalized_points(&spec).len() as i64, expected);
        }
    }

    #[test]
    fn fano_passes_axioms() {
        let report = check_axioms(&canonical_fano());
        assert!(report.all_ok());
        assert_eq!(report.witnesses, AxiomWitnesses::default());
    }

    #[test]
    fn deleted_line_breaks_axiom1() {
        let mut rows: Vec<Vec<usize>> = canonical_fano().lines().to_vec();
        let removed = rows.remove(0);
        let s = IncidenceStructure::new(7, rows, None, Origin::Custom).unwrap();
        let report = check_axioms(&s);
        assert!(!report.axiom1_ok);
        match report.witnesses.axiom1 {
            Some(Witness::PointPair {
                points,
                common_lines,
            }) => {
                assert!(removed.contains(&points[0]) && removed.contains(&points[1]));
                assert!(common_lines.is_empty());
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn construction_rejects_malformed() {
        let dup =
            IncidenceStructure::new(7, vec![vec![0, 1, 3], vec![3, 1, 0]], None, Origin::Custom);
        assert_eq!(
            dup,
            Err(PlaneError::DuplicateLine {
                first: 0,
                second: 1
            })
        );
        assert_eq!(
            IncidenceStructure::new(3, vec![vec![0, 3]], None, Origin::Custom),
            Err(PlaneError::PointOutOfRange {
                line: 0,
                point: 3,
                point_count: 3
            })
        );
        assert_eq!(
            IncidenceStructure::new(3, vec![vec![0, 0]], None, Origin::Custom),
            Err(PlaneError::DuplicatePoint { line: 0, point: 0 })
        );
        assert_eq!(
            IncidenceStructure::new(3, vec![vec![]], None, Origin::Custom),
            Err(PlaneError::EmptyLine(0))
        );
    }

    #[test]
    fn regularity() {
        let stats = regularity_stats(&build_field_plane(2).unwrap());
        assert_eq!((stats.points, stats.lines, stats.order), (7, 7, Some(2)));
        assert_eq!(stats.points_per_line, BTreeSet::from([3]));
        assert_eq!(stats.lines_per_point, BTreeSet::from([3]));
        assert_eq!(
            regularity_stats(&build_field_plane(3).unwrap()).order,
            Some(3)
        );

        let single = IncidenceStructure::new(3, vec![vec![0, 1, 2]], None, Origin::Custom).unwrap();
        let stats = regularity_stats(&single);
        assert_eq!(stats.order, None);
        assert!(!check_axioms(&single).axiom3_ok);
    }

    #[test]
    fn joins_and_meets() {
        let plane = ProjectivePlane::verify(canonical_fano()).unwrap();
        let l = plane.line_through(0, 1).unwrap();
        assert_eq!(plane.structure().lines()[l], vec![0, 1, 3]);
        // Rows "0 1 3" and "0 4 5".
        assert_eq!(plane.meet(0, 1).unwrap(), 0);
        // Rows "1 5 6" and "3 4 6".
        assert_eq!(plane.meet(3, 5).unwrap(), 6);
        assert_eq!(
            plane.line_through(2, 2),
            Err(PlaneError::IdenticalArguments(2))
        );
        assert_eq!(plane.meet(4, 4), Err(PlaneError::IdenticalArguments(4)));

        let broken = IncidenceStructure::new(3, vec![vec![0, 1, 2]], None, Origin::Custom).unwrap();
        assert!(matches!(
            ProjectivePlane::verify(broken),
            Err(PlaneError::NotAPlane(_))
        ));
    }

    #[test]
    fn field_planes_are_regular_and_dual() {
        for q in [2usize, 3, 4, 5, 7, 8, 9] {
            let s = build_field_plane(q as i64).unwrap();
            let report = check_axioms(&s);
            assert!(report.all_ok(), "PG(2,{q})");
            let stats = regularity_stats(&s);
            assert_eq!(stats.points, q * q + q + 1);
            assert_eq!(stats.lines, stats.points);
            assert_eq!(stats.order, Some(q));
            if q % 2 == 1 {
                assert!(s.lines().iter().all(|l| l.len() % 2 == 0));
            }
            let mut line_sizes: Vec<usize> = s.lines().iter().map(|l| l.len()).collect();
            let mut point_degrees: Vec<usize> =
                s.lines_through_points().iter().map(|l| l.len()).collect();
            line_sizes.sort_unstable();
            point_degrees.sort_unstable();
            assert_eq!(line_sizes, point_degrees);
        }
    }

    #[test]
    fn isomorphism_search() {
        let pg2 = build_field_plane(2).unwrap();
        let fano = canonical_fano();
        let map = find_isomorphism(&fano, &pg2).expect("Fano planes are isomorphic");
        let image: BTreeSet<Vec<usize>> = fano
            .lines()
            .iter()
            .map(|l| {
                let mut v: Vec<usize> = l.iter().map(|&p| map[p]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        assert_eq!(image, pg2.line_set());

        let mut rows = fano.lines().to_vec();
        rows[0] = vec![0, 1, 2];
        let other = IncidenceStructure::new(7, rows, None, Origin::Custom).unwrap();
        assert!(find_isomorphism(&other, &pg2).is_none());
    }

    #[test]
    fn document_round_trip() {
        let s = build_field_plane(2).unwrap();
        let json = serde_json::to_string(&s.to_document()).unwrap();
        assert!(json.starts_with(r#"{"origin":{"kind":"field_plane","q":2},"point_count":7,"#));
        let back: PlaneDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(IncidenceStructure::from_document(back).unwrap(), s);
    }
}
