//! The TOML model format.
//!
//! ```toml
//! version = 1
//! universe = ["m1", "m2", "c1", "c2"]
//!
//! [nouns]
//! men = ["m1", "m2"]
//! cars = ["c1", "c2"]
//!
//! [verbs]
//! admire = [["m1", "c1"], ["m2", "c2"]]
//!
//! [quantifiers]
//! two = { kind = "at_least(2)" }
//! ```
//!
//! Without a `[lexicon]` table every denotation name is also its word and the
//! usual determiners are available; with one, the lexicon is exactly what it
//! lists. [`to_canonical_toml`] writes a model back in a fixed layout, so
//! loading and writing again is the identity on its output.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::Model;
use crate::finite_model::{BinRel, Universe, DEFAULT_UNIVERSE_CAP};
use crate::lang::{Lexicon, WordClass};
use crate::quantifier::{Definition, GeneralizedQuantifier, QuantifierKind, QuantifierTable};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub version: u32,
    pub universe: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub nouns: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub vps: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub verbs: BTreeMap<String, Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub quantifiers: BTreeMap<String, QuantifierSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lexicon: Option<LexiconSpec>,
}

/// Exactly one of `kind` (a builtin such as `"most"` or `"exactly(1)"`) and
/// `table` (the `[A, X]` pairs of the relation) must be given.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantifierSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<[Vec<String>; 2]>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LexiconSpec {
    #[serde(default)]
    pub determiners: BTreeMap<String, String>,
    #[serde(default)]
    pub nouns: BTreeMap<String, String>,
    #[serde(default)]
    pub verbs: BTreeMap<String, String>,
    #[serde(default)]
    pub vps: BTreeMap<String, String>,
}

/// Prefixes validation errors with the field they come from. Cap errors keep
/// their own kind so callers can tell them apart.
fn at(path: impl std::fmt::Display) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::CapExceeded { .. } => e,
        other => Error::ModelFile(format!("{path}: {other}")),
    }
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<ModelFile> {
        toml::from_str(text).map_err(|e| Error::ModelFile(e.to_string().trim_end().to_string()))
    }

    pub fn into_model(self) -> Result<Model> {
        if self.version != FORMAT_VERSION {
            return Err(Error::ModelFile(format!(
                "version: unsupported format version {} (expected {FORMAT_VERSION})",
                self.version
            )));
        }
        let u = Universe::with_cap(self.universe.iter().cloned(), DEFAULT_UNIVERSE_CAP).map_err(at("universe"))?;
        let mut m = Model::new(u.clone());
        for (name, members) in &self.nouns {
            let s = u.subset_of_names(members).map_err(at(format_args!("nouns.{name}")))?;
            m.add_noun(name, s).map_err(at(format_args!("nouns.{name}")))?;
        }
        for (name, members) in &self.vps {
            let s = u.subset_of_names(members).map_err(at(format_args!("vps.{name}")))?;
            m.add_vp(name, s).map_err(at(format_args!("vps.{name}")))?;
        }
        for (name, pairs) in &self.verbs {
            let v = BinRel::from_named_pairs(&u, pairs.iter().map(|[a, b]| (a, b)))
                .map_err(at(format_args!("verbs.{name}")))?;
            m.add_verb(name, v).map_err(at(format_args!("verbs.{name}")))?;
        }
        for (name, spec) in &self.quantifiers {
            let q = spec.build(name, &u).map_err(at(format_args!("quantifiers.{name}")))?;
            m.add_quantifier(q).map_err(at(format_args!("quantifiers.{name}")))?;
        }
        match &self.lexicon {
            None => m.use_default_lexicon().map_err(at("lexicon"))?,
            Some(spec) => {
                let lex = spec.build().map_err(at("lexicon"))?;
                m.set_lexicon(lex).map_err(at("lexicon"))?;
            }
        }
        Ok(m)
    }

    pub fn from_model(m: &Model) -> Result<ModelFile> {
        let default = m.default_lexicon()?;
        Ok(ModelFile {
            version: FORMAT_VERSION,
            universe: m.universe().entities().to_vec(),
            nouns: m.nouns().iter().map(|(k, s)| (k.clone(), s.names())).collect(),
            vps: m.vps().iter().map(|(k, s)| (k.clone(), s.names())).collect(),
            verbs: m
                .verbs()
                .iter()
                .map(|(k, v)| (k.clone(), v.named_pairs().into_iter().map(|(a, b)| [a, b]).collect()))
                .collect(),
            quantifiers: m
                .quantifiers()
                .iter()
                .map(|(k, q)| (k.clone(), QuantifierSpec::from_quantifier(q, m.universe())))
                .collect(),
            lexicon: (m.lexicon() != &default).then(|| LexiconSpec::from_lexicon(m.lexicon())),
        })
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::ModelFile(e.to_string()))
    }
}

impl QuantifierSpec {
    fn build(&self, name: &str, u: &Universe) -> Result<GeneralizedQuantifier> {
        match (&self.kind, &self.table) {
            (Some(kind), None) => Ok(GeneralizedQuantifier::named_builtin(
                name,
                kind.parse::<QuantifierKind>()?,
            )),
            (None, Some(rows)) => {
                let pairs = rows
                    .iter()
                    .map(|[a, x]| Ok((u.subset_of_names(a)?, u.subset_of_names(x)?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(GeneralizedQuantifier::table(name, QuantifierTable::new(u, pairs)?))
            }
            _ => Err(Error::ModelFile("give exactly one of `kind` and `table`".to_string())),
        }
    }

    fn from_quantifier(q: &GeneralizedQuantifier, u: &Universe) -> QuantifierSpec {
        match q.definition() {
            Definition::Builtin(kind) => QuantifierSpec {
                kind: Some(kind.to_string()),
                table: None,
            },
            Definition::Table(t) => QuantifierSpec {
                kind: None,
                table: Some(
                    t.pairs()
                        .map(|(a, x)| {
                            let names = |m| u.subset(m).map(|s| s.names()).unwrap_or_default();
                            [names(a), names(x)]
                        })
                        .collect(),
                ),
            },
        }
    }
}

impl LexiconSpec {
    fn build(&self) -> Result<Lexicon> {
        let mut lex = Lexicon::new();
        for (class, map) in [
            (WordClass::Determiner, &self.determiners),
            (WordClass::Noun, &self.nouns),
            (WordClass::Verb, &self.verbs),
            (WordClass::Vp, &self.vps),
        ] {
            for (word, denotation) in map {
                lex.insert(class, word, denotation)?;
            }
        }
        Ok(lex)
    }

    fn from_lexicon(lex: &Lexicon) -> LexiconSpec {
        let collect = |c| lex.words(c).map(|(w, d)| (w.to_string(), d.to_string())).collect();
        LexiconSpec {
            determiners: collect(WordClass::Determiner),
            nouns: collect(WordClass::Noun),
            verbs: collect(WordClass::Verb),
            vps: collect(WordClass::Vp),
        }
    }
}

pub fn parse_model(text: &str) -> Result<Model> {
    ModelFile::parse(text)?.into_model()
}

pub fn load_model(path: impl AsRef<Path>) -> Result<Model> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_model(&text).map_err(|e| match e {
        Error::ModelFile(msg) => Error::ModelFile(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn to_canonical_toml(m: &Model) -> Result<String> {
    ModelFile::from_model(m)?.to_toml()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::Reading;

    const DESK: &str = r#"
version = 1
universe = ["m1", "m2", "c1", "c2"]

[nouns]
men = ["m1", "m2"]
cars = ["c1", "c2"]

[verbs]
admire = [["m1", "c1"], ["m2", "c2"]]
"#;

    #[test]
    fn loads_the_desk_model() {
        let m = parse_model(DESK).unwrap();
        assert_eq!(m.universe().size(), 4);
        assert_eq!(m.nouns().len(), 2);
        let ast = m.parse("all men admire some cars").unwrap();
        assert!(crate::eval::oracle_reading(&m, &ast, Reading::SubjectWide).unwrap());
    }

    #[test]
    fn unknown_entities_are_named() {
        let text = DESK.replace(r#"men = ["m1", "m2"]"#, r#"men = ["m1", "m3"]"#);
        let err = parse_model(&text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("nouns.men") && msg.contains("m3"), "{msg}");
        assert_eq!(err.exit_code(), 4);
    }

    #[test]
    fn degenerate_model() {
        let m = parse_model("version = 1\nuniverse = []\n[nouns]\nthings = []\n").unwrap();
        assert_eq!(m.universe().size(), 0);
        assert!(m.nouns()["things"].is_empty());
    }

    #[test]
    fn syntax_errors_carry_a_position() {
        let msg = parse_model("version = 1\nuniverse = [\"a\"\n").unwrap_err().to_string();
        assert!(msg.contains("line"), "{msg}");
        let msg = parse_model("version = 1\nuniverse = []\ncolour = 3\n")
            .unwrap_err()
            .to_string();
        assert!(msg.contains("colour"), "{msg}");
    }

    #[test]
    fn version_and_caps() {
        assert!(parse_model("version = 2\nuniverse = []\n")
            .unwrap_err()
            .to_string()
            .contains("version"));
        let big: Vec<String> = (0..13).map(|i| format!("\"e{i}\"")).collect();
        let err = parse_model(&format!("version = 1\nuniverse = [{}]\n", big.join(","))).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
        let err = parse_model("version = 1\nuniverse = [\"a\", \"a\"]\n").unwrap_err();
        assert!(err.to_string().contains("duplicate"));
    }

    #[test]
    fn quantifier_specs() {
        let text = format!(
            "{DESK}\n[quantifiers]\ntwo = {{ kind = \"at_least(2)\" }}\nodd = {{ table = [[[\"m1\"], [\"m1\"]]] }}\n"
        );
        let m = parse_model(&text).unwrap();
        assert!(m.quantifier("two").is_ok());
        let ast = m.parse("two men admire odd cars").unwrap();
        assert!(m.resolve(&ast).is_ok());
        let bad = format!("{DESK}\n[quantifiers]\nq = {{ kind = \"some\", table = [] }}\n");
        assert!(parse_model(&bad).unwrap_err().to_string().contains("quantifiers.q"));
        let bad = format!("{DESK}\n[quantifiers]\nq = {{ kind = \"several\" }}\n");
        assert!(parse_model(&bad).is_err());
    }

    #[test]
    fn explicit_lexicon() {
        let text = format!(
            "{DESK}\n[lexicon]\ndeterminers = {{ every = \"all\", a = \"some\" }}\nnouns = {{ man = \"men\", car = \"cars\" }}\nverbs = {{ admires = \"admire\" }}\n"
        );
        let m = parse_model(&text).unwrap();
        assert!(m.parse("every man admires a car").is_ok());
        assert!(m.parse("all men admire some cars").is_err());
        let bad = format!("{DESK}\n[lexicon]\nnouns = {{ man = \"women\" }}\n");
        assert!(parse_model(&bad).unwrap_err().to_string().contains("women"));
    }

    #[test]
    fn canonical_form_round_trips() {
        let text = format!(
            "{DESK}\n[vps]\nsleep = [\"m2\", \"m1\"]\n[quantifiers]\ntwo = {{ kind = \"at_least(2)\" }}\nodd = {{ table = [[[\"m2\", \"m1\"], [\"m1\"]]] }}\n"
        );
        let m = parse_model(&text).unwrap();
        let canon = to_canonical_toml(&m).unwrap();
        let again = to_canonical_toml(&parse_model(&canon).unwrap()).unwrap();
        assert_eq!(canon, again);
        assert!(!canon.contains("[lexicon]"));
        assert!(canon.contains(r#"sleep = ["m1", "m2"]"#), "{canon}");

        let lexed = format!("{DESK}\n[lexicon]\nnouns = {{ man = \"men\" }}\n");
        let canon = to_canonical_toml(&parse_model(&lexed).unwrap()).unwrap();
        assert!(canon.contains("[lexicon"));
        assert_eq!(canon, to_canonical_toml(&parse_model(&canon).unwrap()).unwrap());
    }
}
