//! Projective-plane poetic forms: every point of the plane is a poetic line
//! and every plane line is a stanza.
//!
//! A [`FormPattern`] fixes the stanza order and the order of lines within
//! each stanza. [`scaffold`] fills a pattern with base lines, and [`validate`]
//! checks a poem against a pattern, treating repeated lines as identical,
//! identical after normalization, or merely similar.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diffset::{develop, verify_difference_set, DifferenceSet};
use crate::plane::{check_axioms, AxiomReport, IncidenceStructure, Origin, PlaneError};

/// Rows of the original form, in printed order.
pub const CANONICAL_ROWS: [[usize; 3]; 7] = [
    [0, 1, 3],
    [0, 4, 5],
    [0, 2, 6],
    [1, 5, 6],
    [1, 4, 2],
    [3, 4, 6],
    [3, 5, 2],
];

/// Rows of the octonion-ordered variant: the directed cycles, in listing order.
pub const OCTONION_ROWS: [[usize; 3]; 7] = [
    [3, 1, 0],
    [0, 2, 6],
    [0, 5, 4],
    [3, 4, 6],
    [2, 5, 3],
    [2, 1, 4],
    [1, 5, 6],
];

pub const FANO_PAPER: &str = "fano-paper";
pub const FANO_OCTONION: &str = "fano-octonion";

/// Default similarity threshold for fuzzy validation.
pub const DEFAULT_THRESHOLD: f64 = 0.6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FormError {
    #[error("form {name:?}: stanzas do not form a projective plane ({reason})")]
    NotAPlane { name: String, reason: String },
    #[error("form {name:?}: point {point} appears in no stanza")]
    UncoveredPoint { name: String, point: usize },
    #[error("form {name:?}: {source}")]
    Structure {
        name: String,
        #[source]
        source: PlaneError,
    },
    #[error("difference set is not perfect")]
    NotPerfect,
    #[error("missing base line for point {0}")]
    MissingBaseLine(usize),
    #[error("expected {expected} base lines, got {found}")]
    BaseLineCount { expected: usize, found: usize },
    #[error("input contains no non-blank lines")]
    EmptyInput,
    #[error("threshold {0} is outside [0, 1]")]
    BadThreshold(f64),
    #[error("unknown match mode {0:?}: expected exact, normalized or fuzzy")]
    BadMode(String),
    #[error("unknown strategy {0:?}: expected anchor_grouped or translation_order")]
    BadStrategy(String),
}

/// How the lines of a difference-set form are ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Lines through each residue of the set in turn, anchor first.
    AnchorGrouped,
    /// Translates `D + 0, D + 1, ...`, each ascending.
    TranslationOrder,
}

impl FromStr for Strategy {
    type Err = FormError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "anchor_grouped" | "anchor-grouped" | "anchor" => Ok(Strategy::AnchorGrouped),
            "translation_order" | "translation-order" | "translation" => {
                Ok(Strategy::TranslationOrder)
            }
            other => Err(FormError::BadStrategy(other.to_string())),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::AnchorGrouped => "anchor_grouped",
            Strategy::TranslationOrder => "translation_order",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FormSource {
    CanonicalFano,
    OctonionOrdered,
    Developed {
        n: usize,
        residues: Vec<usize>,
        strategy: Strategy,
    },
    Custom,
}

/// Stanza-ordered point ids. As unordered sets the stanzas are the lines of
/// a projective plane.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FormDocument", into = "FormDocument")]
pub struct FormPattern {
    name: String,
    point_count: usize,
    stanzas: Vec<Vec<usize>>,
    source: FormSource,
}

/// Serialized form file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormDocument {
    pub name: String,
    pub point_count: usize,
    pub stanzas: Vec<Vec<usize>>,
    #[serde(default = "custom_source")]
    pub source: FormSource,
}

fn custom_source() -> FormSource {
    FormSource::Custom
}

impl TryFrom<FormDocument> for FormPattern {
    type Error = FormError;

    fn try_from(doc: FormDocument) -> Result<Self, Self::Error> {
        FormPattern::new(doc.name, doc.point_count, doc.stanzas, doc.source)
    }
}

impl From<FormPattern> for FormDocument {
    fn from(p: FormPattern) -> Self {
        FormDocument {
            name: p.name,
            point_count: p.point_count,
            stanzas: p.stanzas,
            source: p.source,
        }
    }
}

impl FormPattern {
    pub fn new(
        name: impl Into<String>,
        point_count: usize,
        stanzas: Vec<Vec<usize>>,
        source: FormSource,
    ) -> Result<Self, FormError> {
        let name = name.into();
        let structure = IncidenceStructure::new(point_count, stanzas.clone(), None, Origin::Custom)
            .map_err(|source| FormError::Structure {
                name: name.clone(),
                source,
            })?;
        let covered: BTreeSet<usize> = stanzas.iter().flatten().copied().collect();
        if let Some(point) = (0..point_count).find(|p| !covered.contains(p)) {
            return Err(FormError::UncoveredPoint { name, point });
        }
        let report = check_axioms(&structure);
        if !report.all_ok() {
            let reason = [
                (report.axiom1_ok, "two points not on a unique stanza"),
                (report.axiom2_ok, "two stanzas not sharing a unique point"),
                (report.axiom3_ok, "no four points in general position"),
            ]
            .iter()
            .filter(|(ok, _)| !ok)
            .map(|(_, r)| *r)
            .collect::<Vec<_>>()
            .join("; ");
            return Err(FormError::NotAPlane { name, reason });
        }
        Ok(FormPattern {
            name,
            point_count,
            stanzas,
            source,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn point_count(&self) -> usize {
        self.point_count
    }

    pub fn stanzas(&self) -> &[Vec<usize>] {
        &self.stanzas
    }

    pub fn source(&self) -> &FormSource {
        &self.source
    }

    /// Line count of each stanza.
    pub fn stanza_shape(&self) -> Vec<usize> {
        self.stanzas.iter().map(|s| s.len()).collect()
    }

    /// Stanzas as unordered sets.
    pub fn stanza_sets(&self) -> BTreeSet<BTreeSet<usize>> {
        self.stanzas
            .iter()
            .map(|s| s.iter().copied().collect())
            .collect()
    }

    /// `(stanza, position)` slots of each point id.
    pub fn classes(&self) -> Vec<Vec<[usize; 2]>> {
        let mut out = vec![Vec::new(); self.point_count];
        for (s, stanza) in self.stanzas.iter().enumerate() {
            for (j, &p) in stanza.iter().enumerate() {
                out[p].push([s, j]);
            }
        }
        out
    }

    pub fn to_document(&self) -> FormDocument {
        self.clone().into()
    }

    /// The underlying incidence structure (stanzas as lines).
    pub fn structure(&self) -> IncidenceStructure {
        IncidenceStructure::new(self.point_count, self.stanzas.clone(), None, Origin::Custom)
            .expect("validated at construction")
    }
}

fn rows_to_stanzas(rows: &[[usize; 3]]) -> Vec<Vec<usize>> {
    rows.iter().map(|r| r.to_vec()).collect()
}

/// The printed form, including its unsorted rows `1 4 2` and `3 5 2`.
pub fn canonical_fano_form() -> FormPattern {
    FormPattern::new(
        FANO_PAPER,
        7,
        rows_to_stanzas(&CANONICAL_ROWS),
        FormSource::CanonicalFano,
    )
    .expect("Fano rows form a plane")
}

/// Stanzas follow the octonion orientation's directed cycles.
pub fn octonion_ordered_form() -> FormPattern {
    FormPattern::new(
        FANO_OCTONION,
        7,
        rows_to_stanzas(&OCTONION_ROWS),
        FormSource::OctonionOrdered,
    )
    .expect("octonion rows form a plane")
}

/// Name used for a difference-set form, e.g. `ds13-0.1.3.9-anchor_grouped`.
pub fn difference_set_form_name(d: &DifferenceSet, strategy: Strategy) -> String {
    let residues: Vec<String> = d.residues().iter().map(|r| r.to_string()).collect();
    format!("ds{}-{}-{}", d.n(), residues.join("."), strategy)
}

pub fn form_from_difference_set(
    d: &DifferenceSet,
    strategy: Strategy,
) -> Result<FormPattern, FormError> {
    if !verify_difference_set(d).ok {
        return Err(FormError::NotPerfect);
    }
    let developed = develop(d).map_err(|_| FormError::NotPerfect)?;
    let lines = developed.lines();
    let stanzas = match strategy {
        Strategy::TranslationOrder => lines.to_vec(),
        Strategy::AnchorGrouped => {
            let mut emitted = vec![false; lines.len()];
            let mut out = Vec::with_capacity(lines.len());
            for &anchor in d.residues() {
                for (i, line) in lines.iter().enumerate() {
                    if emitted[i] || !line.contains(&anchor) {
                        continue;
                    }
                    emitted[i] = true;
                    let mut stanza = vec![anchor];
                    stanza.extend(line.iter().copied().filter(|&p| p != anchor));
                    out.push(stanza);
                }
            }
            // Every translate meets D, so every line has been emitted.
            debug_assert!(emitted.iter().all(|&e| e));
            out
        }
    };
    FormPattern::new(
        difference_set_form_name(d, strategy),
        d.n(),
        stanzas,
        FormSource::Developed {
            n: d.n(),
            residues: d.residues().to_vec(),
            strategy,
        },
    )
}

/// Forms available by name: the two Fano forms plus both orderings of the
/// 13-point plane developed from `{0,1,3,9}`.
pub fn builtin_forms() -> Vec<FormPattern> {
    let d13 = DifferenceSet::new(13, [0, 1, 3, 9]).expect("valid residues");
    vec![
        canonical_fano_form(),
        octonion_ordered_form(),
        form_from_difference_set(&d13, Strategy::AnchorGrouped).expect("perfect set"),
        form_from_difference_set(&d13, Strategy::TranslationOrder).expect("perfect set"),
    ]
}

pub fn find_builtin_form(name: &str) -> Option<FormPattern> {
    builtin_forms().into_iter().find(|f| f.name() == name)
}

/// Text for each point id of a form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseLines {
    lines: Vec<String>,
}

impl BaseLines {
    /// Entry `i` is the text for point `i`. Blank entries are rejected.
    pub fn new(lines: Vec<String>) -> Result<Self, FormError> {
        if let Some(i) = lines.iter().position(|l| l.trim().is_empty()) {
            return Err(FormError::MissingBaseLine(i));
        }
        Ok(BaseLines { lines })
    }

    pub fn lines(&self) -> &[String] {
        &self.lines
    }
}

/// A poem as stanzas of raw lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoemDocument {
    pub stanzas: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl PoemDocument {
    pub fn line_count(&self) -> usize {
        self.stanzas.iter().map(|s| s.len()).sum()
    }

    /// Stanzas separated by one blank line; every line ends with `\n`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, stanza) in self.stanzas.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            for line in stanza {
                out.push_str(line);
                out.push('\n');
            }
        }
        out
    }
}

pub fn scaffold(p: &FormPattern, b: &BaseLines) -> Result<PoemDocument, FormError> {
    if b.lines.len() < p.point_count {
        return Err(FormError::MissingBaseLine(b.lines.len()));
    }
    if b.lines.len() > p.point_count {
        return Err(FormError::BaseLineCount {
            expected: p.point_count,
            found: b.lines.len(),
        });
    }
    let stanzas = p
        .stanzas
        .iter()
        .map(|stanza| stanza.iter().map(|&id| b.lines[id].clone()).collect())
        .collect();
    Ok(PoemDocument {
        stanzas,
        provenance: None,
    })
}

fn is_blank(line: &str) -> bool {
    line.trim().is_empty()
}

/// Splits on runs of blank lines. Lines are kept verbatim apart from a
/// trailing `\r`.
pub fn parse_poem(text: &str) -> Result<PoemDocument, FormError> {
    let mut stanzas: Vec<Vec<String>> = Vec::new();
    let mut current: Vec<String> = Vec::new();
    for line in text.lines() {
        if is_blank(line) {
            if !current.is_empty() {
                stanzas.push(std::mem::take(&mut current));
            }
        } else {
            current.push(line.to_string());
        }
    }
    if !current.is_empty() {
        stanzas.push(current);
    }
    if stanzas.is_empty() {
        return Err(FormError::EmptyInput);
    }
    Ok(PoemDocument {
        stanzas,
        provenance: None,
    })
}

/// How repeated lines are compared.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatchMode {
    Exact,
    Normalized,
    Fuzzy { threshold: f64 },
}

impl MatchMode {
    /// Builds a mode from its name. `fuzzy` falls back to
    /// [`DEFAULT_THRESHOLD`]; the other modes take no threshold.
    pub fn parse(mode: &str, threshold: Option<f64>) -> Result<Self, FormError> {
        if let Some(t) = threshold {
            if !(0.0..=1.0).contains(&t) {
                return Err(FormError::BadThreshold(t));
            }
        }
        match mode {
            "exact" => Ok(MatchMode::Exact),
            "normalized" => Ok(MatchMode::Normalized),
            "fuzzy" => Ok(MatchMode::Fuzzy {
                threshold: threshold.unwrap_or(DEFAULT_THRESHOLD),
            }),
            other => Err(FormError::BadMode(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MatchMode::Exact => "exact",
            MatchMode::Normalized => "normalized",
            MatchMode::Fuzzy { .. } => "fuzzy",
        }
    }

    /// Similarity a pair must reach; exact and normalized demand identity.
    pub fn threshold(&self) -> f64 {
        match self {
            MatchMode::Fuzzy { threshold } => *threshold,
            _ => 1.0,
        }
    }

    fn accepts(&self, a: &str, b: &str, sim: f64) -> bool {
        match self {
            MatchMode::Exact => a == b,
            MatchMode::Normalized => normalize_line(a) == normalize_line(b),
            MatchMode::Fuzzy { threshold } => sim >= *threshold,
        }
    }
}

fn is_strippable(c: char) -> bool {
    c.is_ascii_punctuation()
        || matches!(
            c,
            '\u{2018}' // ‘
                | '\u{2019}' // ’
                | '\u{201A}'
                | '\u{201B}'
                | '\u{201C}' // “
                | '\u{201D}' // ”
                | '\u{201E}'
                | '\u{201F}'
                | '\u{2010}'
                ..='\u{2015}' // hyphens and dashes
                | '\u{2026}' // …
                | '\u{00AB}'
                | '\u{00BB}'
                | '\u{2039}'
                | '\u{203A}'
                | '\u{00B7}'
        )
}

/// Lowercases, drops punctuation, and collapses whitespace.
pub fn normalize_line(s: &str) -> String {
    let stripped: String = s
        .chars()
        .filter(|&c| !is_strippable(c))
        .flat_map(char::to_lowercase)
        .collect();
    stripped.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Levenshtein distance over Unicode scalar values.
pub fn edit_distance(a: &str, b: &str) -> usize {
    strsim::levenshtein(a, b)
}

/// `1 - distance / max_len` on normalized text; two empty strings score 1.
pub fn similarity(a: &str, b: &str) -> f64 {
    let (a, b) = (normalize_line(a), normalize_line(b));
    let max_len = a.chars().count().max(b.chars().count());
    if max_len == 0 {
        return 1.0;
    }
    1.0 - edit_distance(&a, &b) as f64 / max_len as f64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub point: usize,
    /// `(stanza, position)`, both zero-based.
    pub positions: Vec<[usize; 2]>,
    pub min_pairwise_similarity: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub point: usize,
    pub first: [usize; 2],
    pub second: [usize; 2],
    pub similarity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub form: String,
    pub shape_ok: bool,
    pub expected_shape: Vec<usize>,
    pub actual_shape: Vec<usize>,
    pub mode: String,
    pub threshold: f64,
    pub classes: Vec<ClassReport>,
    pub violations: Vec<Violation>,
    pub overall_ok: bool,
}

/// Checks the stanza shape and every repetition class of `p` against `poem`.
///
/// `min_pairwise_similarity` is always the edit-distance similarity; whether a
/// pair passes depends on `mode`. Slots missing from a misshapen poem are
/// left out of their class.
pub fn validate(poem: &PoemDocument, p: &FormPattern, mode: MatchMode) -> ValidationReport {
    let expected_shape = p.stanza_shape();
    let actual_shape: Vec<usize> = poem.stanzas.iter().map(|s| s.len()).collect();
    let shape_ok = expected_shape == actual_shape;
    let slot = |[s, j]: [usize; 2]| poem.stanzas.get(s).and_then(|st| st.get(j));

    let mut classes = Vec::with_capacity(p.point_count);
    let mut violations = Vec::new();
    for (point, positions) in p.classes().into_iter().enumerate() {
        let present: Vec<[usize; 2]> = positions
            .into_iter()
            .filter(|&pos| slot(pos).is_some())
            .collect();
        let mut min_sim: f64 = 1.0;
        let mut ok = true;
        for (i, &first) in present.iter().enumerate() {
            for &second in &present[i + 1..] {
                let (a, b) = (slot(first).unwrap(), slot(second).unwrap());
                let sim = similarity(a, b);
                min_sim = min_sim.min(sim);
                if !mode.accepts(a, b, sim) {
                    ok = false;
                    violations.push(Violation {
                        point,
                        first,
                        second,
                        similarity: sim,
                    });
                }
            }
        }
        classes.push(ClassReport {
            point,
            positions: present,
            min_pairwise_similarity: min_sim,
            ok,
        });
    }
    let overall_ok = shape_ok && classes.iter().all(|c| c.ok);
    ValidationReport {
        form: p.name.clone(),
        shape_ok,
        expected_shape,
        actual_shape,
        mode: mode.name().to_string(),
        threshold: mode.threshold(),
        classes,
        violations,
        overall_ok,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cluster {
    pub id: usize,
    /// `(stanza, position)` of each member line.
    pub members: Vec<[usize; 2]>,
    /// Text of the first member.
    pub representative: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Discovery {
    pub threshold: f64,
    pub clusters: Vec<Cluster>,
    /// Sorted cluster ids per stanza, before duplicates are dropped.
    pub stanza_sets: Vec<Vec<usize>>,
    /// Stanzas whose cluster set repeats an earlier stanza's.
    pub dropped_stanzas: Vec<usize>,
    pub induced: crate::plane::PlaneDocument,
    pub axiom_report: AxiomReport,
}

/// Recovers an incidence structure from a poem's repetitions.
///
/// Lines are clustered by single linkage over pairs with similarity at least
/// `threshold`; cluster ids follow first appearance. Each stanza becomes the
/// set of its clusters, and repeated stanza sets are dropped.
pub fn discover_structure(poem: &PoemDocument, threshold: f64) -> Result<Discovery, FormError> {
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(FormError::BadThreshold(threshold));
    }
    let slots: Vec<([usize; 2], &str)> = poem
        .stanzas
        .iter()
        .enumerate()
        .flat_map(|(s, st)| {
            st.iter()
                .enumerate()
                .map(move |(j, l)| ([s, j], l.as_str()))
        })
        .collect();
    let mut uf = UnionFind::new(slots.len());
    for i in 0..slots.len() {
        for j in i + 1..slots.len() {
            if similarity(slots[i].1, slots[j].1) >= threshold {
                uf.union(i, j);
            }
        }
    }
    let mut cluster_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut clusters: Vec<Cluster> = Vec::new();
    let mut cluster_ids = Vec::with_capacity(slots.len());
    for (i, (pos, text)) in slots.iter().enumerate() {
        let root = uf.find(i);
        let id = *cluster_of_root.entry(root).or_insert_with(|| {
            clusters.push(Cluster {
                id: clusters.len(),
                members: Vec::new(),
                representative: text.to_string(),
            });
            clusters.len() - 1
        });
        clusters[id].members.push(*pos);
        cluster_ids.push(id);
    }

    let mut stanza_sets = Vec::with_capacity(poem.stanzas.len());
    let mut offset = 0;
    for stanza in &poem.stanzas {
        let set: BTreeSet<usize> = cluster_ids[offset..offset + stanza.len()]
            .iter()
            .copied()
            .collect();
        offset += stanza.len();
        stanza_sets.push(set.into_iter().collect::<Vec<_>>());
    }
    let mut seen = BTreeSet::new();
    let mut lines = Vec::new();
    let mut dropped = Vec::new();
    for (i, set) in stanza_sets.iter().enumerate() {
        if seen.insert(set.clone()) {
            lines.push(set.clone());
        } else {
            dropped.push(i);
        }
    }
    let induced = IncidenceStructure::new(clusters.len(), lines, None, Origin::Custom)
        .expect("cluster sets are distinct and in range");
    let axiom_report = check_axioms(&induced);
    Ok(Discovery {
        threshold,
        clusters,
        stanza_sets,
        dropped_stanzas: dropped,
        induced: induced.to_document(),
        axiom_report,
    })
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
            // Keep the smaller root so roots track first appearance.
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}
