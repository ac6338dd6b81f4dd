use proptest::prelude::*;

use planeform::form::{edit_distance, normalize_line};
use planeform::{
    canonical_fano_form, octonion_ordered_form, parse_poem, scaffold, similarity, validate,
    BaseLines, MatchMode, PoemDocument,
};

/// Textbook full-matrix Levenshtein over chars.
fn levenshtein_oracle(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut d = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for (i, row) in d.iter_mut().enumerate() {
        row[0] = i;
    }
    d[0] = (0..=b.len()).collect();
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            let sub = d[i - 1][j - 1] + usize::from(a[i - 1] != b[j - 1]);
            d[i][j] = sub.min(d[i - 1][j] + 1).min(d[i][j - 1] + 1);
        }
    }
    d[a.len()][b.len()]
}

fn line() -> impl Strategy<Value = String> {
    "[a-zA-Z ,.;'’—é]{0,30}".prop_filter("nonblank", |s| !s.trim().is_empty())
}

proptest! {
    #[test]
    fn edit_distance_matches_oracle(a in "\\PC{0,20}", b in "\\PC{0,20}") {
        prop_assert_eq!(edit_distance(&a, &b), levenshtein_oracle(&a, &b));
    }

    #[test]
    fn similarity_is_symmetric_and_bounded(a in "\\PC{0,30}", b in "\\PC{0,30}") {
        let s = similarity(&a, &b);
        prop_assert!((0.0..=1.0).contains(&s));
        prop_assert_eq!(s, similarity(&b, &a));
        prop_assert_eq!(similarity(&a, &a), 1.0);
    }

    #[test]
    fn normalization_is_idempotent(a in "\\PC{0,40}") {
        let n = normalize_line(&a);
        prop_assert_eq!(normalize_line(&n), n);
    }

    #[test]
    fn scaffold_validates_exactly(base in prop::collection::vec(line(), 7)) {
        for form in [canonical_fano_form(), octonion_ordered_form()] {
            let poem = scaffold(&form, &BaseLines::new(base.clone()).unwrap()).unwrap();
            prop_assert!(validate(&poem, &form, MatchMode::Exact).overall_ok);
            prop_assert!(validate(&poem, &form, MatchMode::Normalized).overall_ok);
        }
    }

    #[test]
    fn parse_inverts_render(
        stanzas in prop::collection::vec(prop::collection::vec(line(), 1..5), 1..8)
    ) {
        let doc = PoemDocument { stanzas, provenance: None };
        prop_assert_eq!(parse_poem(&doc.render()).unwrap(), doc);
    }
}
