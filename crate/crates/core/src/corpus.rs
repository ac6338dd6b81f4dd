//! The four poems written in the Fano form, bundled as fixtures.
//!
//! Files hold stanza text only; titles and epigraphs are kept as provenance.

use crate::form::{parse_poem, PoemDocument};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fixture {
    pub number: u8,
    pub file: &'static str,
    pub title: &'static str,
    pub epigraph: Option<&'static str>,
    pub text: &'static str,
}

pub const FIXTURES: [Fixture; 4] = [
    Fixture {
        number: 3,
        file: "poem3.txt",
        title: "The smallest finite projective plane 3",
        epigraph: None,
        text: include_str!("../corpus/poem3.txt"),
    },
    Fixture {
        number: 4,
        file: "poem4.txt",
        title: "The smallest finite projective plane 4",
        epigraph: None,
        text: include_str!("../corpus/poem4.txt"),
    },
    Fixture {
        number: 5,
        file: "poem5.txt",
        title: "The smallest finite projective plane 5",
        epigraph: Some("\u{2018}Could you use this form to write about, say, bluebells?\u{2019}"),
        text: include_str!("../corpus/poem5.txt"),
    },
    Fixture {
        number: 6,
        file: "poem6.txt",
        title: "The smallest finite projective plane 6",
        epigraph: None,
        text: include_str!("../corpus/poem6.txt"),
    },
];

pub fn fixture(number: u8) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.number == number)
}

impl Fixture {
    pub fn poem(&self) -> PoemDocument {
        let mut doc = parse_poem(self.text).expect("bundled fixtures are non-empty");
        doc.provenance = Some(match self.epigraph {
            Some(e) => format!("{} (epigraph: {e})", self.title),
            None => self.title.to_string(),
        });
        doc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_is_seven_tercets() {
        for f in &FIXTURES {
            let poem = f.poem();
            assert_eq!(poem.stanzas.len(), 7, "{}", f.file);
            assert!(poem.stanzas.iter().all(|s| s.len() == 3), "{}", f.file);
        }
    }

    #[test]
    fn epigraph_is_not_stanza_text() {
        let poem = fixture(5).unwrap().poem();
        assert_eq!(poem.stanzas[0][0], "What exactly can a poet say about");
        assert!(poem.provenance.unwrap().contains("bluebells?"));
    }
}
