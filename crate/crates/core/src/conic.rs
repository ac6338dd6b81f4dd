//! Arcs, ovals, and conics in small planes.
//!
//! Ovals are found combinatorially by ordered extension over point indices;
//! conics are the zero sets of nondegenerate quadratic forms over GF(q) for
//! odd q. In PG(2,q) with q odd the two collections coincide, which is what
//! [`segre_check`] tests.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::field::{make_field, FieldElement, FieldError, FieldSpec};
use crate::plane::{
    build_field_plane, normalized_points, regularity_stats, IncidenceStructure, PlaneError,
};

/// Largest plane order accepted by [`enumerate_ovals`].
pub const MAX_OVAL_ORDER: usize = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConicError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error("plane order is undefined (incidence counts are not constant)")]
    OrderUndefined,
    #[error("plane order {0} is above the supported maximum of {MAX_OVAL_ORDER}")]
    OrderTooLarge(usize),
    #[error("conics are only handled in odd characteristic, got q = {0}")]
    EvenCharacteristic(u8),
    #[error("q = {0} requires the long-running flag")]
    LongRunning(u8),
    #[error("q = {0} is outside the supported range for this check")]
    UnsupportedOrder(u8),
    #[error("quadratic form has all coefficients zero")]
    ZeroForm,
    #[error("quadratic form is degenerate (zero determinant)")]
    Degenerate,
    #[error("point index {index} out of range (plane has {count} points)")]
    PointOutOfRange { index: usize, count: usize },
    #[error("points {0:?} do not form an arc")]
    NotAnArc(Vec<usize>),
}

/// A point set meeting every line of its plane in at most two points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc<'a> {
    plane: &'a IncidenceStructure,
    points: Vec<usize>,
}

impl<'a> Arc<'a> {
    pub fn new(plane: &'a IncidenceStructure, mut points: Vec<usize>) -> Result<Self, ConicError> {
        points.sort_unstable();
        points.dedup();
        if let Some(&index) = points.iter().find(|&&p| p >= plane.point_count()) {
            return Err(ConicError::PointOutOfRange {
                index,
                count: plane.point_count(),
            });
        }
        if !is_arc(plane, &points) {
            return Err(ConicError::NotAnArc(points));
        }
        Ok(Arc { plane, points })
    }

    pub fn plane(&self) -> &IncidenceStructure {
        self.plane
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    /// True when the arc has `order + 1` points.
    pub fn is_oval(&self) -> bool {
        regularity_stats(self.plane).order == Some(self.points.len().wrapping_sub(1))
    }
}

/// True iff no line of `plane` contains three or more of `pts`.
pub fn is_arc(plane: &IncidenceStructure, pts: &[usize]) -> bool {
    let members: BTreeSet<usize> = pts.iter().copied().collect();
    plane
        .lines()
        .iter()
        .all(|line| line.iter().filter(|p| members.contains(p)).count() <= 2)
}

/// All arcs of size `order + 1`, sorted lexicographically.
///
/// Depth-first extension in ascending index order, keeping a per-line count
/// of chosen points so a candidate is rejected as soon as it would put a
/// third point on any line.
pub fn enumerate_ovals(plane: &IncidenceStructure) -> Result<Vec<Vec<usize>>, ConicError> {
    let order = regularity_stats(plane)
        .order
        .ok_or(ConicError::OrderUndefined)?;
    if order > MAX_OVAL_ORDER {
        return Err(ConicError::OrderTooLarge(order));
    }
    let lines_through = plane.lines_through_points();
    let mut search = OvalSearch {
        size: order + 1,
        point_count: plane.point_count(),
        lines_through: &lines_through,
        on_line: vec![0u8; plane.line_count()],
        chosen: Vec::with_capacity(order + 1),
        found: Vec::new(),
    };
    search.extend(0);
    Ok(search.found)
}

struct OvalSearch<'a> {
    size: usize,
    point_count: usize,
    lines_through: &'a [Vec<usize>],
    on_line: Vec<u8>,
    chosen: Vec<usize>,
    found: Vec<Vec<usize>>,
}

impl OvalSearch<'_> {
    fn extend(&mut self, start: usize) {
        if self.chosen.len() == self.size {
            self.found.push(self.chosen.clone());
            return;
        }
        let needed = self.size - self.chosen.len();
        for p in start..=self.point_count.saturating_sub(needed) {
            let lines = &self.lines_through[p];
            if lines.iter().any(|&l| self.on_line[l] >= 2) {
                continue;
            }
            for &l in lines {
                self.on_line[l] += 1;
            }
            self.chosen.push(p);
            self.extend(p + 1);
            self.chosen.pop();
            for &l in lines {
                self.on_line[l] -= 1;
            }
        }
    }
}

/// `F(x,y,z) = a·x² + b·y² + c·z² + d·xy + e·xz + f·yz` over an odd field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticForm {
    spec: FieldSpec,
    coeffs: [u8; 6],
}

impl QuadraticForm {
    /// Coefficients `(a, b, c, d, e, f)`; rejects the zero form and forms whose
    /// symmetric matrix is singular.
    pub fn new(coeffs: [FieldElement; 6]) -> Result<Self, ConicError> {
        let spec = coeffs[0].spec();
        if !spec.is_odd() {
            return Err(ConicError::EvenCharacteristic(spec.q()));
        }
        for c in &coeffs {
            if c.spec() != spec {
                return Err(FieldError::SpecMismatch {
                    left: spec.q(),
                    right: c.spec().q(),
                }
                .into());
            }
        }
        Self::from_reps(spec, coeffs.map(|c| c.rep()))
    }

    fn from_reps(spec: FieldSpec, coeffs: [u8; 6]) -> Result<Self, ConicError> {
        if coeffs.iter().all(|&c| c == 0) {
            return Err(ConicError::ZeroForm);
        }
        let form = QuadraticForm { spec, coeffs };
        if form.determinant() == 0 {
            return Err(ConicError::Degenerate);
        }
        Ok(form)
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn coeff_reps(&self) -> [u8; 6] {
        self.coeffs
    }

    /// Determinant of `[[a, d/2, e/2], [d/2, b, f/2], [e/2, f/2, c]]`.
    pub fn determinant(&self) -> u8 {
        let s = &self.spec;
        let half = s.inv_rep(s.from_int(2).rep()).expect("odd characteristic");
        let [a, b, c, d, e, f] = self.coeffs;
        let (d, e, f) = (s.mul_rep(d, half), s.mul_rep(e, half), s.mul_rep(f, half));
        let m = [[a, d, e], [d, b, f], [e, f, c]];
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
            s.add_rep(
                s.mul_rep(m[r1][c1], m[r2][c2]),
                s.neg_rep(s.mul_rep(m[r1][c2], m[r2][c1])),
            )
        };
        let t0 = s.mul_rep(m[0][0], minor(1, 2, 1, 2));
        let t1 = s.neg_rep(s.mul_rep(m[0][1], minor(1, 2, 0, 2)));
        let t2 = s.mul_rep(m[0][2], minor(1, 2, 0, 1));
        s.add_rep(s.add_rep(t0, t1), t2)
    }

    pub fn evaluate(&self, point: [u8; 3]) -> u8 {
        let s = &self.spec;
        let [x, y, z] = point;
        let [a, b, c, d, e, f] = self.coeffs;
        [
            (a, x, x),
            (b, y, y),
            (c, z, z),
            (d, x, y),
            (e, x, z),
            (f, y, z),
        ]
        .iter()
        .fold(0, |acc, &(k, u, v)| {
            s.add_rep(acc, s.mul_rep(k, s.mul_rep(u, v)))
        })
    }

    /// Indices (in PG(2,q) point order) of the points where the form vanishes.
    pub fn zero_set(&self) -> Vec<usize> {
        normalized_points(&self.spec)
            .iter()
            .enumerate()
            .filter(|(_, p)| self.evaluate(p.reps()) == 0)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Zero sets of every nondegenerate quadratic form over GF(q), one
/// representative per scalar class (leftmost nonzero coefficient 1),
/// deduplicated and sorted.
pub fn enumerate_conics(q: i64) -> Result<Vec<Vec<usize>>, ConicError> {
    let spec = make_field(q)?;
    if !spec.is_odd() {
        return Err(ConicError::EvenCharacteristic(spec.q()));
    }
    let points: Vec<[u8; 3]> = normalized_points(&spec).iter().map(|p| p.reps()).collect();
    let qq = spec.q();
    let mut conics = BTreeSet::new();
    let mut coeffs = [0u8; 6];
    loop {
        let lead = coeffs.iter().find(|&&c| c != 0);
        if lead == Some(&1) {
            if let Ok(form) = QuadraticForm::from_reps(spec, coeffs) {
                let zeros: Vec<usize> = points
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| form.evaluate(**p) == 0)
                    .map(|(i, _)| i)
                    .collect();
                conics.insert(zeros);
            }
        }
        // Odometer over GF(q)^6.
        let mut i = 5;
        loop {
            coeffs[i] += 1;
            if coeffs[i] < qq {
                break;
            }
            coeffs[i] = 0;
            if i == 0 {
                return Ok(conics.into_iter().collect());
            }
            i -= 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SegreReport {
    pub q: u8,
    pub oval_count: usize,
    pub conic_count: usize,
    pub equal: bool,
}

/// Compares the ovals of PG(2,q) with its conics. q = 7 is only run when
/// `allow_long` is set.
pub fn segre_check(q: i64, allow_long: bool) -> Result<SegreReport, ConicError> {
    let spec = make_field(q)?;
    if !spec.is_odd() {
        return Err(ConicError::EvenCharacteristic(spec.q()));
    }
    match spec.q() {
        3 | 5 => {}
        7 if allow_long => {}
        7 => return Err(ConicError::LongRunning(7)),
        other => return Err(ConicError::UnsupportedOrder(other)),
    }
    let plane = build_field_plane(q)?;
    let ovals = enumerate_ovals(&plane)?;
    let conics = enumerate_conics(q)?;
    Ok(SegreReport {
        q: spec.q(),
        oval_count: ovals.len(),
        conic_count: conics.len(),
        equal: ovals == conics,
    })
}
