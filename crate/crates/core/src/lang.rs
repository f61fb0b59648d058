//! Lexicon, tokenizer and the two-production sentence grammar
//!
//! ```text
//! S  → NP V NP | NP VP
//! NP → D N
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WordClass {
    Determiner,
    Noun,
    Verb,
    Vp,
}

impl fmt::Display for WordClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WordClass::Determiner => "determiner",
            WordClass::Noun => "noun",
            WordClass::Verb => "verb",
            WordClass::Vp => "vp",
        })
    }
}

/// Words by class, each mapped to the name of its denotation in a model.
/// A word belongs to at most one class.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lexicon {
    determiners: BTreeMap<String, String>,
    nouns: BTreeMap<String, String>,
    verbs: BTreeMap<String, String>,
    vps: BTreeMap<String, String>,
}

impl Lexicon {
    pub fn new() -> Self {
        Self::default()
    }

    fn map(&self, class: WordClass) -> &BTreeMap<String, String> {
        match class {
            WordClass::Determiner => &self.determiners,
            WordClass::Noun => &self.nouns,
            WordClass::Verb => &self.verbs,
            WordClass::Vp => &self.vps,
        }
    }

    /// Adds `word` to `class`. Words are stored lowercased; rebinding a word
    /// within its own class replaces the denotation.
    pub fn insert(&mut self, class: WordClass, word: &str, denotation: &str) -> Result<()> {
        let word = word.to_lowercase();
        if word.is_empty() || word.chars().any(|c| !c.is_alphanumeric() && c != '_' && c != '-') {
            return Err(Error::ModelFile(format!("invalid lexicon word `{word}`")));
        }
        if self.classes_of(&word).into_iter().any(|c| c != class) {
            return Err(Error::AmbiguousClass(word));
        }
        let map = match class {
            WordClass::Determiner => &mut self.determiners,
            WordClass::Noun => &mut self.nouns,
            WordClass::Verb => &mut self.verbs,
            WordClass::Vp => &mut self.vps,
        };
        map.insert(word, denotation.to_string());
        Ok(())
    }

    pub fn with(mut self, class: WordClass, word: &str, denotation: &str) -> Result<Self> {
        self.insert(class, word, denotation)?;
        Ok(self)
    }

    pub fn classes_of(&self, word: &str) -> Vec<WordClass> {
        [WordClass::Determiner, WordClass::Noun, WordClass::Verb, WordClass::Vp]
            .into_iter()
            .filter(|c| self.map(*c).contains_key(word))
            .collect()
    }

    pub fn denotation(&self, class: WordClass, word: &str) -> Option<&str> {
        self.map(class).get(word).map(String::as_str)
    }

    pub fn words(&self, class: WordClass) -> impl Iterator<Item = (&str, &str)> {
        self.map(class).iter().map(|(w, d)| (w.as_str(), d.as_str()))
    }

    pub fn is_empty(&self) -> bool {
        self.determiners.is_empty() && self.nouns.is_empty() && self.verbs.is_empty() && self.vps.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "shape", rename_all = "lowercase")]
pub enum SentenceAst {
    Transitive {
        d1: String,
        n1: String,
        v: String,
        d2: String,
        n2: String,
    },
    Intransitive {
        d: String,
        n: String,
        vp: String,
    },
}

impl SentenceAst {
    pub fn shape(&self) -> &'static str {
        match self {
            SentenceAst::Transitive { .. } => "transitive",
            SentenceAst::Intransitive { .. } => "intransitive",
        }
    }

    pub fn words(&self) -> Vec<&str> {
        match self {
            SentenceAst::Transitive { d1, n1, v, d2, n2 } => vec![d1, n1, v, d2, n2],
            SentenceAst::Intransitive { d, n, vp } => vec![d, n, vp],
        }
    }

    /// Words joined by single spaces.
    pub fn render(&self) -> String {
        self.words().join(" ")
    }
}

impl fmt::Display for SentenceAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reading {
    SubjectWide,
    ObjectWide,
    Branching,
}

impl Reading {
    pub const ALL: [Reading; 3] = [Reading::SubjectWide, Reading::ObjectWide, Reading::Branching];
    pub const LINEAR: [Reading; 2] = [Reading::SubjectWide, Reading::ObjectWide];

    pub fn as_str(self) -> &'static str {
        match self {
            Reading::SubjectWide => "subject-wide",
            Reading::ObjectWide => "object-wide",
            Reading::Branching => "branching",
        }
    }
}

impl fmt::Display for Reading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Reading {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "subject-wide" => Ok(Reading::SubjectWide),
            "object-wide" => Ok(Reading::ObjectWide),
            "branching" => Ok(Reading::Branching),
            other => Err(Error::TypeMismatch(format!(
                "unknown reading `{other}` (expected subject-wide, object-wide or branching)"
            ))),
        }
    }
}

/// Whitespace-split, lowercased tokens with punctuation removed.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split_whitespace()
        .map(|w| {
            w.chars()
                .filter(|c| !c.is_ascii_punctuation() || *c == '_' || *c == '-')
                .flat_map(char::to_lowercase)
                .collect::<String>()
        })
        .filter(|w| !w.is_empty())
        .collect()
}

const EXPECTED: &str = "`D N V D N` or `D N VP`";

fn classify(word: &str, lex: &Lexicon) -> Result<WordClass> {
    match lex.classes_of(word).as_slice() {
        [] => Err(Error::UnknownWord(word.to_string())),
        [c] => Ok(*c),
        _ => Err(Error::AmbiguousClass(word.to_string())),
    }
}

pub fn parse(tokens: &[String], lex: &Lexicon) -> Result<SentenceAst> {
    let mismatch = || Error::ShapeMismatch {
        expected: EXPECTED.to_string(),
        got: tokens.join(" "),
    };
    if tokens.len() != 3 && tokens.len() != 5 {
        // Still report an unknown word first: it is the more useful message.
        for t in tokens {
            classify(t, lex)?;
        }
        return Err(mismatch());
    }
    let classes = tokens.iter().map(|t| classify(t, lex)).collect::<Result<Vec<_>>>()?;
    use WordClass::*;
    let w = |i: usize| tokens[i].clone();
    match classes.as_slice() {
        [Determiner, Noun, Verb, Determiner, Noun] => Ok(SentenceAst::Transitive {
            d1: w(0),
            n1: w(1),
            v: w(2),
            d2: w(3),
            n2: w(4),
        }),
        [Determiner, Noun, Vp] => Ok(SentenceAst::Intransitive {
            d: w(0),
            n: w(1),
            vp: w(2),
        }),
        _ => Err(mismatch()),
    }
}

pub fn parse_text(text: &str, lex: &Lexicon) -> Result<SentenceAst> {
    parse(&tokenize(text), lex)
}
