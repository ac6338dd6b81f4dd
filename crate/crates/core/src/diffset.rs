//! Perfect difference sets modulo n: verification, exhaustive search,
//! development into an incidence structure, and the shift check.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::plane::{IncidenceStructure, Origin, PlaneError};

/// Largest modulus accepted by [`search_difference_sets`].
pub const MAX_SEARCH_MODULUS: usize = 40;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiffSetError {
    #[error("modulus must be at least 3, got {0}")]
    ModulusTooSmall(usize),
    #[error("a difference set needs at least 2 residues, got {0}")]
    TooFewResidues(usize),
    #[error("residue {residue} listed more than once mod {n}")]
    DuplicateResidue { residue: usize, n: usize },
    #[error("{{{residues}}} is not a perfect difference set mod {n}")]
    NotPerfect { residues: String, n: usize },
    #[error("search space too large: need 2 <= k < n <= {max}, got n={n}, k={k}")]
    SearchSpaceTooLarge { n: usize, k: usize, max: usize },
    #[error("structure origin is {0}, expected a developed difference set")]
    WrongOrigin(String),
    #[error(transparent)]
    Plane(#[from] PlaneError),
}

/// Distinct residues modulo `n`, stored ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DifferenceSet {
    n: usize,
    residues: Vec<usize>,
}

impl DifferenceSet {
    /// Reduces every residue mod `n` and sorts; repeated residues are an error.
    pub fn new(n: usize, residues: impl IntoIterator<Item = i64>) -> Result<Self, DiffSetError> {
        if n < 3 {
            return Err(DiffSetError::ModulusTooSmall(n));
        }
        let mut reduced: Vec<usize> = residues
            .into_iter()
            .map(|r| r.rem_euclid(n as i64) as usize)
            .collect();
        reduced.sort_unstable();
        if let Some(w) = reduced.windows(2).find(|w| w[0] == w[1]) {
            return Err(DiffSetError::DuplicateResidue { residue: w[0], n });
        }
        if reduced.len() < 2 {
            return Err(DiffSetError::TooFewResidues(reduced.len()));
        }
        Ok(DifferenceSet {
            n,
            residues: reduced,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn residues(&self) -> &[usize] {
        &self.residues
    }

    pub fn k(&self) -> usize {
        self.residues.len()
    }

    /// `D + t (mod n)`.
    pub fn translate(&self, t: usize) -> DifferenceSet {
        let mut residues: Vec<usize> = self.residues.iter().map(|r| (r + t) % self.n).collect();
        residues.sort_unstable();
        DifferenceSet {
            n: self.n,
            residues,
        }
    }

    /// Lexicographically least translate.
    pub fn orbit_representative(&self) -> DifferenceSet {
        (0..self.n)
            .map(|t| self.translate(t))
            .min()
            .expect("n >= 3")
    }

    fn describe(&self) -> String {
        self.residues
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceRow {
    pub a: usize,
    pub b: usize,
    pub diff: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Repeat {
    pub value: usize,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub n: usize,
    pub residues: Vec<usize>,
    pub ok: bool,
    /// `(a, b, a - b mod n)` for ordered pairs, `a` then `b` ascending.
    pub table: Vec<DifferenceRow>,
    pub missing: Vec<usize>,
    pub repeated: Vec<Repeat>,
}

pub fn verify_difference_set(d: &DifferenceSet) -> Verification {
    let n = d.n;
    let mut counts = vec![0usize; n];
    let mut table = Vec::with_capacity(d.k() * (d.k() - 1));
    for &a in &d.residues {
        for &b in &d.residues {
            if a == b {
                continue;
            }
            let diff = (a + n - b) % n;
            counts[diff] += 1;
            table.push(DifferenceRow { a, b, diff });
        }
    }
    let missing: Vec<usize> = (1..n).filter(|&v| counts[v] == 0).collect();
    let repeated: Vec<Repeat> = (1..n)
        .filter(|&v| counts[v] > 1)
        .map(|value| Repeat {
            value,
            count: counts[value],
        })
        .collect();
    Verification {
        n,
        residues: d.residues.clone(),
        ok: missing.is_empty() && repeated.is_empty(),
        table,
        missing,
        repeated,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchHit {
    pub set: DifferenceSet,
    pub orbit_representative: bool,
}

/// Every perfect `k`-subset of Z_n in lexicographic order, each tagged with
/// whether it is the least translate in its orbit.
pub fn search_difference_sets(n: usize, k: usize) -> Result<Vec<SearchHit>, DiffSetError> {
    if !(2 <= k && k < n && n <= MAX_SEARCH_MODULUS) {
        return Err(DiffSetError::SearchSpaceTooLarge {
            n,
            k,
            max: MAX_SEARCH_MODULUS,
        });
    }
    if k * (k - 1) != n - 1 {
        return Ok(Vec::new());
    }
    let mut hits = Vec::new();
    let mut chosen = Vec::with_capacity(k);
    let mut used = vec![false; n];
    search_from(n, k, 0, &mut chosen, &mut used, &mut hits);
    Ok(hits
        .into_iter()
        .map(|set| SearchHit {
            orbit_representative: set.orbit_representative() == set,
            set,
        })
        .collect())
}

// Combinations in lexicographic order; a branch is cut as soon as two pairs
// produce the same difference.
fn search_from(
    n: usize,
    k: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    used: &mut [bool],
    hits: &mut Vec<DifferenceSet>,
) {
    if chosen.len() == k {
        hits.push(DifferenceSet {
            n,
            residues: chosen.clone(),
        });
        return;
    }
    let remaining = k - chosen.len();
    for x in start..=n - remaining {
        let diffs: Vec<usize> = chosen
            .iter()
            .flat_map(|&c| [(x + n - c) % n, (c + n - x) % n])
            .collect();
        let mut fresh = diffs.iter().all(|&d| !used[d]);
        if fresh {
            let distinct: BTreeSet<usize> = diffs.iter().copied().collect();
            fresh = distinct.len() == diffs.len();
        }
        if !fresh {
            continue;
        }
        for &d in &diffs {
            used[d] = true;
        }
        chosen.push(x);
        search_from(n, k, x + 1, chosen, used, hits);
        chosen.pop();
        for &d in &diffs {
            used[d] = false;
        }
    }
}

/// Lines `L_i = D + i` for `i = 0..n-1`, kept in translation order.
pub fn develop(d: &DifferenceSet) -> Result<IncidenceStructure, DiffSetError> {
    if !verify_difference_set(d).ok {
        return Err(DiffSetError::NotPerfect {
            residues: d.describe(),
            n: d.n,
        });
    }
    let lines = (0..d.n).map(|i| d.translate(i).residues).collect();
    let labels = (0..d.n).map(|p| p.to_string()).collect();
    Ok(IncidenceStructure::new(
        d.n,
        lines,
        Some(labels),
        Origin::Developed {
            n: d.n,
            residues: d.residues.clone(),
        },
    )?)
}

/// True when `x -> x + 1 (mod n)` maps every line onto a line and acts on
/// the points as a single `n`-cycle.
pub fn singer_shift_check(s: &IncidenceStructure) -> Result<bool, DiffSetError> {
    let n = match s.origin() {
        Origin::Developed { n, .. } => *n,
        other => return Err(DiffSetError::WrongOrigin(other.to_string())),
    };
    if s.point_count() != n {
        return Ok(false);
    }
    let lines = s.line_set();
    let closed = s.lines().iter().all(|line| {
        let mut image: Vec<usize> = line.iter().map(|&p| (p + 1) % n).collect();
        image.sort_unstable();
        lines.contains(&image)
    });
    let mut orbit = 1;
    let mut x = 1 % n;
    while x != 0 {
        x = (x + 1) % n;
        orbit += 1;
    }
    Ok(closed && orbit == n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::check_axioms;

    fn ds(n: usize, r: &[i64]) -> DifferenceSet {
        DifferenceSet::new(n, r.iter().copied()).unwrap()
    }

    #[test]
    fn fano_difference_table() {
        let v = verify_difference_set(&ds(7, &[0, 1, 3]));
        assert!(v.ok);
        let rows: Vec<(usize, usize, usize)> = v.table.iter().map(|r| (r.a, r.b, r.diff)).collect();
        assert_eq!(
            rows,
            vec![
                (0, 1, 6),
                (0, 3, 4),
                (1, 0, 1),
                (1, 3, 5),
                (3, 0, 3),
                (3, 1, 2)
            ]
        );
    }

    #[test]
    fn imperfect_set_reports_gaps() {
        let v = verify_difference_set(&ds(7, &[0, 1, 2]));
        assert!(!v.ok);
        assert!(v.repeated.contains(&Repeat { value: 1, count: 2 }));
        assert!(v.missing.contains(&3));
        assert_eq!(v.table.len(), 6);
    }

    #[test]
    fn brute_force_thirteen() {
        // Independent check: collect all 12 ordered differences by hand.
        let set = [0usize, 1, 3, 9];
        let mut seen = BTreeSet::new();
        for a in set {
            for b in set {
                if a != b {
                    assert!(seen.insert((a + 13 - b) % 13));
                }
            }
        }
        assert_eq!(seen, (1..13).collect());
        assert!(verify_difference_set(&ds(13, &[0, 1, 3, 9])).ok);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            DifferenceSet::new(7, [0, 7]),
            Err(DiffSetError::DuplicateResidue { residue: 0, n: 7 })
        );
        assert_eq!(
            DifferenceSet::new(2, [0, 1]),
            Err(DiffSetError::ModulusTooSmall(2))
        );
        assert_eq!(
            DifferenceSet::new(7, [4]),
            Err(DiffSetError::TooFewResidues(1))
        );
        assert_eq!(ds(7, &[-1, 8]).residues(), &[1, 6]);
    }

    #[test]
    fn search_examples() {
        let hits = search_difference_sets(7, 3).unwrap();
        assert!(hits.iter().any(|h| h.set.residues() == [0, 1, 3]));
        assert!(search_difference_sets(7, 4).unwrap().is_empty());
        assert!(matches!(
            search_difference_sets(41, 5),
            Err(DiffSetError::SearchSpaceTooLarge { .. })
        ));
        assert!(matches!(
            search_difference_sets(7, 7),
            Err(DiffSetError::SearchSpaceTooLarge { .. })
        ));
    }

    #[test]
    fn search_matches_unpruned_filter() {
        // Exhaustive filter over all k-subsets, no pruning.
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            (0..n)
                .flat_map(|last| {
                    subsets(last, k - 1).into_iter().map(move |mut s| {
                        s.push(last);
                        s
                    })
                })
                .collect()
        }
        for (n, k) in [(7, 3), (13, 4), (21, 5)] {
            let mut expected: Vec<Vec<usize>> = subsets(n, k)
                .into_iter()
                .filter(|s| {
                    let d = DifferenceSet::new(n, s.iter().map(|&x| x as i64)).unwrap();
                    verify_difference_set(&d).ok
                })
                .collect();
            expected.sort();
            let found: Vec<Vec<usize>> = search_difference_sets(n, k)
                .unwrap()
                .into_iter()
                .map(|h| h.set.residues().to_vec())
                .collect();
            assert_eq!(found, expected, "n={n}, k={k}");
        }
    }

    #[test]
    fn thirteen_point_search_counts() {
        let hits = search_difference_sets(13, 4).unwrap();
        assert!(hits.iter().any(|h| h.set.residues() == [0, 1, 3, 9]));
        assert_eq!(hits.len(), 52);
        let reps: Vec<&[usize]> = hits
            .iter()
            .filter(|h| h.orbit_representative)
            .map(|h| h.set.residues())
            .collect();
        assert_eq!(reps.len(), 4);
        assert!(reps.contains(&&[0, 1, 3, 9][..]));
    }

    #[test]
    fn perfect_sets_satisfy_counting() {
        for n in 3..=21 {
            for k in 2..n.min(7) {
                for hit in search_difference_sets(n, k).unwrap() {
                    assert_eq!(k * (k - 1), n - 1);
                    let s = develop(&hit.set).unwrap();
                    if k == 2 {
                        // {0,1} mod 3 develops to a triangle: no quadrilateral.
                        let report = check_axioms(&s);
                        assert!(report.axiom1_ok && report.axiom2_ok && !report.axiom3_ok);
                        continue;
                    }
                    assert!(check_axioms(&s).all_ok(), "{:?}", hit.set);
                    assert!(singer_shift_check(&s).unwrap());
                }
            }
        }
    }

    #[test]
    fn develop_fano() {
        let s = develop(&ds(7, &[0, 1, 3])).unwrap();
        let expected: BTreeSet<Vec<usize>> = [
            [0, 1, 3],
            [0, 4, 5],
            [0, 2, 6],
            [1, 5, 6],
            [1, 2, 4],
            [3, 4, 6],
            [2, 3, 5],
        ]
        .iter()
        .map(|l| l.to_vec())
        .collect();
        assert_eq!(s.line_set(), expected);
        assert_eq!(s.lines()[1], vec![1, 2, 4]);
        assert!(matches!(
            develop(&ds(7, &[0, 1, 2])),
            Err(DiffSetError::NotPerfect { .. })
        ));
    }

    #[test]
    fn develop_thirteen() {
        let s = develop(&ds(13, &[0, 1, 3, 9])).unwrap();
        assert_eq!((s.point_count(), s.line_count()), (13, 13));
        assert!(s.lines().iter().all(|l| l.len() == 4));
        assert!(check_axioms(&s).all_ok());
        assert!(singer_shift_check(&s).unwrap());
    }

    #[test]
    fn translation_invariance() {
        for base in [ds(7, &[0, 1, 3]), ds(13, &[0, 1, 3, 9])] {
            let lines = develop(&base).unwrap().line_set();
            for t in 0..base.n() {
                assert_eq!(develop(&base.translate(t)).unwrap().line_set(), lines);
            }
        }
    }

    #[test]
    fn shift_check_detects_broken_closure() {
        let fano = develop(&ds(7, &[0, 1, 3])).unwrap();
        assert!(singer_shift_check(&fano).unwrap());

        let mut lines = fano.lines().to_vec();
        lines[6] = vec![0, 2, 5];
        let broken = IncidenceStructure::new(7, lines, None, fano.origin().clone()).unwrap();
        assert!(!singer_shift_check(&broken).unwrap());

        let custom =
            IncidenceStructure::new(7, fano.lines().to_vec(), None, Origin::Custom).unwrap();
        assert!(matches!(
            singer_shift_check(&custom),
            Err(DiffSetError::WrongOrigin(_))
        ));
    }
}
