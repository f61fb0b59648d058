//! Truth of parsed sentences in a finite model, by several independent routes.
//!
//! * [`oracle`]: the set-theoretic clauses.
//! * [`categorical`]: closed relational diagrams built from the generators.
//! * the vector backend: the same diagrams with witness-path counts.
//! * [`branching`]: the witness search and the branching diagram.

pub mod branching;
pub mod categorical;
pub mod oracle;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite_model::{BinRel, Subset, Universe};
use crate::lang::{parse_text, Lexicon, Reading, SentenceAst, WordClass};
use crate::quantifier::{GeneralizedQuantifier, QuantifierKind};
use crate::vect::Scalar;

pub use branching::{BranchCase, BranchEncoding, BranchingResult, BranchingWitness, DEFAULT_BRANCHING_CAP};

/// Determiner words every default lexicon knows, with their quantifiers.
pub const DEFAULT_DETERMINERS: [(&str, &str); 7] = [
    ("a", "some"),
    ("all", "all"),
    ("every", "all"),
    ("few", "few"),
    ("most", "most"),
    ("no", "no"),
    ("some", "some"),
];

/// A universe with named denotations and the lexicon that reaches them.
#[derive(Debug, Clone)]
pub struct Model {
    universe: Universe,
    nouns: BTreeMap<String, Subset>,
    vps: BTreeMap<String, Subset>,
    verbs: BTreeMap<String, BinRel>,
    quantifiers: BTreeMap<String, GeneralizedQuantifier>,
    lexicon: Lexicon,
}

fn insert_unique<V>(map: &mut BTreeMap<String, V>, kind: &'static str, name: &str, value: V) -> Result<()> {
    if name.is_empty() {
        return Err(Error::ModelFile(format!("{kind} names must be nonempty")));
    }
    if map.insert(name.to_string(), value).is_some() {
        return Err(Error::Duplicate {
            kind,
            name: name.to_string(),
        });
    }
    Ok(())
}

impl Model {
    pub fn new(universe: Universe) -> Self {
        Model {
            universe,
            nouns: BTreeMap::new(),
            vps: BTreeMap::new(),
            verbs: BTreeMap::new(),
            quantifiers: BTreeMap::new(),
            lexicon: Lexicon::new(),
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn nouns(&self) -> &BTreeMap<String, Subset> {
        &self.nouns
    }

    pub fn vps(&self) -> &BTreeMap<String, Subset> {
        &self.vps
    }

    pub fn verbs(&self) -> &BTreeMap<String, BinRel> {
        &self.verbs
    }

    pub fn quantifiers(&self) -> &BTreeMap<String, GeneralizedQuantifier> {
        &self.quantifiers
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn add_noun(&mut self, name: &str, s: Subset) -> Result<()> {
        self.bound(s.universe())?;
        insert_unique(&mut self.nouns, "noun", name, s)
    }

    pub fn add_vp(&mut self, name: &str, s: Subset) -> Result<()> {
        self.bound(s.universe())?;
        insert_unique(&mut self.vps, "vp", name, s)
    }

    pub fn add_verb(&mut self, name: &str, v: BinRel) -> Result<()> {
        self.bound(v.universe())?;
        insert_unique(&mut self.verbs, "verb", name, v)
    }

    /// Registers a quantifier under its own name; it shadows a builtin of
    /// the same name.
    pub fn add_quantifier(&mut self, q: GeneralizedQuantifier) -> Result<()> {
        if let crate::quantifier::Definition::Table(t) = q.definition() {
            self.bound(t.universe())?;
        }
        let name = q.name().to_string();
        insert_unique(&mut self.quantifiers, "quantifier", &name, q)
    }

    pub fn set_lexicon(&mut self, lexicon: Lexicon) -> Result<()> {
        self.lexicon = lexicon;
        self.validate()
    }

    /// Every denotation name is its own word, plus the default determiners
    /// and one word per registered quantifier.
    pub fn default_lexicon(&self) -> Result<Lexicon> {
        let mut lex = Lexicon::new();
        for (word, q) in DEFAULT_DETERMINERS {
            lex.insert(WordClass::Determiner, word, q)?;
        }
        for name in self.quantifiers.keys() {
            lex.insert(WordClass::Determiner, name, name)?;
        }
        for name in self.nouns.keys() {
            lex.insert(WordClass::Noun, name, name)?;
        }
        for name in self.verbs.keys() {
            lex.insert(WordClass::Verb, name, name)?;
        }
        for name in self.vps.keys() {
            lex.insert(WordClass::Vp, name, name)?;
        }
        Ok(lex)
    }

    pub fn use_default_lexicon(&mut self) -> Result<()> {
        let lex = self.default_lexicon()?;
        self.set_lexicon(lex)
    }

    fn bound(&self, u: &Universe) -> Result<()> {
        if self.universe.same_as(u) {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    /// Every lexicon entry resolves to a denotation.
    pub fn validate(&self) -> Result<()> {
        for (_, q) in self.lexicon.words(WordClass::Determiner) {
            self.quantifier(q)?;
        }
        for (_, n) in self.lexicon.words(WordClass::Noun) {
            self.noun(n)?;
        }
        for (_, v) in self.lexicon.words(WordClass::Verb) {
            self.verb(v)?;
        }
        for (_, vp) in self.lexicon.words(WordClass::Vp) {
            self.vp(vp)?;
        }
        Ok(())
    }

    /// A registered quantifier, or a builtin such as `some` or `at_least(2)`.
    pub fn quantifier(&self, name: &str) -> Result<GeneralizedQuantifier> {
        if let Some(q) = self.quantifiers.get(name) {
            return Ok(q.clone());
        }
        QuantifierKind::from_str(name)
            .map(|kind| GeneralizedQuantifier::named_builtin(name, kind))
            .map_err(|_| Error::Unresolved {
                kind: "quantifier",
                name: name.to_string(),
            })
    }

    pub fn noun(&self, name: &str) -> Result<&Subset> {
        self.nouns.get(name).ok_or_else(|| unresolved("noun", name))
    }

    pub fn vp(&self, name: &str) -> Result<&Subset> {
        self.vps.get(name).ok_or_else(|| unresolved("vp", name))
    }

    pub fn verb(&self, name: &str) -> Result<&BinRel> {
        self.verbs.get(name).ok_or_else(|| unresolved("verb", name))
    }

    fn word(&self, class: WordClass, word: &str) -> Result<&str> {
        self.lexicon
            .denotation(class, word)
            .ok_or_else(|| Error::UnknownWord(word.to_string()))
    }

    pub fn parse(&self, text: &str) -> Result<SentenceAst> {
        parse_text(text, &self.lexicon)
    }

    pub fn resolve(&self, ast: &SentenceAst) -> Result<Denotation> {
        use WordClass::*;
        Ok(match ast {
            SentenceAst::Transitive { d1, n1, v, d2, n2 } => Denotation::Transitive(TransitiveDenotation {
                d1: self.quantifier(self.word(Determiner, d1)?)?,
                n1: self.noun(self.word(Noun, n1)?)?.clone(),
                v: self.verb(self.word(Verb, v)?)?.clone(),
                d2: self.quantifier(self.word(Determiner, d2)?)?,
                n2: self.noun(self.word(Noun, n2)?)?.clone(),
            }),
            SentenceAst::Intransitive { d, n, vp } => Denotation::Intransitive(IntransitiveDenotation {
                d: self.quantifier(self.word(Determiner, d)?)?,
                n: self.noun(self.word(Noun, n)?)?.clone(),
                vp: self.vp(self.word(Vp, vp)?)?.clone(),
            }),
        })
    }

    fn transitive(&self, ast: &SentenceAst, r: Reading) -> Result<TransitiveDenotation> {
        match self.resolve(ast)? {
            Denotation::Transitive(t) => Ok(t),
            Denotation::Intransitive(_) => Err(Error::ReadingNotApplicable {
                reading: r.to_string(),
                shape: "intransitive",
            }),
        }
    }
}

fn unresolved(kind: &'static str, name: &str) -> Error {
    Error::Unresolved {
        kind,
        name: name.to_string(),
    }
}

/// The denotations a transitive sentence `d1 n1 v d2 n2` is evaluated on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitiveDenotation {
    pub d1: GeneralizedQuantifier,
    pub n1: Subset,
    pub v: BinRel,
    pub d2: GeneralizedQuantifier,
    pub n2: Subset,
}

impl TransitiveDenotation {
    pub(crate) fn check(&self) -> Result<()> {
        let u = self.n1.universe();
        if !u.same_as(self.n2.universe()) || !u.same_as(self.v.universe()) {
            return Err(Error::UniverseMismatch);
        }
        self.d1.check_universe(u)?;
        self.d2.check_universe(u)
    }

    pub(crate) fn not_linear(&self, r: Reading) -> Error {
        Error::TypeMismatch(format!("`{r}` is not a linear reading"))
    }
}

/// The denotations of an intransitive sentence `d n vp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntransitiveDenotation {
    pub d: GeneralizedQuantifier,
    pub n: Subset,
    pub vp: Subset,
}

impl IntransitiveDenotation {
    pub(crate) fn check(&self) -> Result<()> {
        if !self.n.universe().same_as(self.vp.universe()) {
            return Err(Error::UniverseMismatch);
        }
        self.d.check_universe(self.n.universe())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Denotation {
    Transitive(TransitiveDenotation),
    Intransitive(IntransitiveDenotation),
}

fn branching_on_intransitive() -> Error {
    Error::ReadingNotApplicable {
        reading: Reading::Branching.to_string(),
        shape: "intransitive",
    }
}

pub fn oracle_intransitive(m: &Model, ast: &SentenceAst) -> Result<bool> {
    match m.resolve(ast)? {
        Denotation::Intransitive(s) => oracle::intransitive(&s),
        Denotation::Transitive(_) => Err(Error::TypeMismatch("expected an intransitive sentence".to_string())),
    }
}

/// Set-theoretic truth of a linear reading; intransitive sentences have a
/// single reading and ignore `r`.
pub fn oracle_reading(m: &Model, ast: &SentenceAst, r: Reading) -> Result<bool> {
    match (m.resolve(ast)?, r) {
        (Denotation::Intransitive(_), Reading::Branching) => Err(branching_on_intransitive()),
        (Denotation::Transitive(s), Reading::Branching) => branching::barwise(&s).map(|b| b.truth),
        (Denotation::Transitive(s), r) => oracle::linear(&s, r),
        (Denotation::Intransitive(s), _) => oracle::intransitive(&s),
    }
}

pub fn categorical_truth(m: &Model, ast: &SentenceAst, r: Reading) -> Result<bool> {
    match (m.resolve(ast)?, r) {
        (Denotation::Intransitive(_), Reading::Branching) => Err(branching_on_intransitive()),
        (Denotation::Transitive(s), Reading::Branching) => branching::diagram_truth(&s),
        (Denotation::Transitive(s), r) => categorical::linear_truth(&s, r),
        (Denotation::Intransitive(s), _) => categorical::intransitive_truth(&s),
    }
}

pub fn vector_truth(m: &Model, ast: &SentenceAst, r: Reading) -> Result<Scalar> {
    let count = match (m.resolve(ast)?, r) {
        (Denotation::Intransitive(_), Reading::Branching) => return Err(branching_on_intransitive()),
        (Denotation::Transitive(s), Reading::Branching) => branching::diagram_count(&s)?,
        (Denotation::Transitive(s), r) => categorical::linear_count(&s, r)?,
        (Denotation::Intransitive(s), _) => categorical::intransitive_count(&s)?,
    };
    Ok(Scalar { count })
}

pub fn branching_barwise(m: &Model, ast: &SentenceAst) -> Result<BranchingResult> {
    branching::barwise(&m.transitive(ast, Reading::Branching)?)
}

pub fn branching_diagram(m: &Model, ast: &SentenceAst) -> Result<bool> {
    branching::diagram_truth(&m.transitive(ast, Reading::Branching)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Oracle,
    Categorical,
    Vector,
}

impl Backend {
    pub const ALL: [Backend; 3] = [Backend::Oracle, Backend::Categorical, Backend::Vector];

    pub fn as_str(self) -> &'static str {
        match self {
            Backend::Oracle => "oracle",
            Backend::Categorical => "categorical",
            Backend::Vector => "vector",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oracle" => Ok(Backend::Oracle),
            "categorical" => Ok(Backend::Categorical),
            "vector" => Ok(Backend::Vector),
            other => Err(Error::TypeMismatch(format!(
                "unknown backend `{other}` (expected oracle, categorical or vector)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    /// The inner set a linear reading hands to its wide-scope determiner.
    Scope { set: Vec<String> },
    /// The first `(X, Y)` pair found by the branching search.
    Branching { x: Vec<String>, y: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub reading: Reading,
    pub backend: Backend,
    pub truth: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scalar: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvalReport {
    pub sentence: String,
    pub ast: SentenceAst,
    pub universe_size: usize,
    pub outcomes: Vec<Outcome>,
    pub notes: Vec<String>,
}

impl EvalReport {
    pub fn outcome(&self, r: Reading, b: Backend) -> Option<&Outcome> {
        self.outcomes.iter().find(|o| o.reading == r && o.backend == b)
    }

    /// Readings on which the requested backends returned different truth values.
    pub fn disagreements(&self) -> Vec<Reading> {
        let mut by_reading: BTreeMap<Reading, BTreeSet<bool>> = BTreeMap::new();
        for o in &self.outcomes {
            by_reading.entry(o.reading).or_default().insert(o.truth);
        }
        by_reading
            .into_iter()
            .filter(|(_, truths)| truths.len() > 1)
            .map(|(r, _)| r)
            .collect()
    }
}

fn names(s: &Subset) -> Vec<String> {
    s.names()
}

fn outcome(den: &Denotation, r: Reading, b: Backend) -> Result<Outcome> {
    let mut out = Outcome {
        reading: r,
        backend: b,
        truth: false,
        scalar: None,
        witness: None,
    };
    match (den, r, b) {
        (Denotation::Intransitive(_), Reading::Branching, _) => return Err(branching_on_intransitive()),
        (Denotation::Intransitive(s), _, Backend::Oracle) => out.truth = oracle::intransitive(s)?,
        (Denotation::Intransitive(s), _, Backend::Categorical) => out.truth = categorical::intransitive_truth(s)?,
        (Denotation::Intransitive(s), _, Backend::Vector) => {
            let c = categorical::intransitive_count(s)?;
            out.truth = c > 0;
            out.scalar = Some(c);
        }
        (Denotation::Transitive(s), Reading::Branching, Backend::Oracle) => {
            let res = branching::barwise(s)?;
            out.truth = res.truth;
            out.witness = res.witness.map(|w| Witness::Branching {
                x: names(&w.x),
                y: names(&w.y),
            });
        }
        (Denotation::Transitive(s), Reading::Branching, Backend::Categorical) => {
            out.truth = branching::diagram_truth(s)?
        }
        (Denotation::Transitive(s), Reading::Branching, Backend::Vector) => {
            let c = branching::diagram_count(s)?;
            out.truth = c > 0;
            out.scalar = Some(c);
        }
        (Denotation::Transitive(s), r, Backend::Oracle) => {
            out.truth = oracle::linear(s, r)?;
            out.witness = Some(Witness::Scope {
                set: names(&oracle::scope_set(s, r)?),
            });
        }
        (Denotation::Transitive(s), r, Backend::Categorical) => out.truth = categorical::linear_truth(s, r)?,
        (Denotation::Transitive(s), r, Backend::Vector) => {
            let c = categorical::linear_count(s, r)?;
            out.truth = c > 0;
            out.scalar = Some(c);
        }
    }
    // Test builds can flip one backend to exercise the disagreement path.
    #[cfg(feature = "fault-injection")]
    if std::env::var("GQB_INJECT_FAULT").is_ok_and(|v| v == b.as_str()) {
        out.truth = !out.truth;
    }
    Ok(out)
}

/// Evaluates every requested `(reading, backend)` pair. Backends that
/// disagree on a reading are listed in the notes.
pub fn evaluate(m: &Model, text: &str, readings: &[Reading], backends: &[Backend]) -> Result<EvalReport> {
    let ast = m.parse(text)?;
    let den = m.resolve(&ast)?;
    let readings: BTreeSet<Reading> = readings.iter().copied().collect();
    let backends: BTreeSet<Backend> = backends.iter().copied().collect();
    let mut outcomes = Vec::new();
    for &r in &readings {
        for &b in &backends {
            outcomes.push(outcome(&den, r, b)?);
        }
    }
    let mut report = EvalReport {
        sentence: ast.render(),
        ast,
        universe_size: m.universe().size(),
        outcomes,
        notes: Vec::new(),
    };
    report.notes = disagreement_notes(&report);
    Ok(report)
}

fn disagreement_notes(report: &EvalReport) -> Vec<String> {
    report
        .disagreements()
        .into_iter()
        .map(|r| {
            let detail: Vec<String> = report
                .outcomes
                .iter()
                .filter(|o| o.reading == r)
                .map(|o| format!("{}={}", o.backend, o.truth))
                .collect();
            format!("backend disagreement on {r}: {}", detail.join(", "))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Agree,
    Differ,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompareReport {
    pub report: EvalReport,
    /// Whether the two linear readings agree (by the oracle).
    pub readings: Verdict,
    /// `None` when the determiners' monotonicity rules out a branching reading.
    pub branching_case: Option<BranchCase>,
}

/// Both linear readings and, when the determiners allow it, the branching
/// reading, on every backend.
pub fn compare(m: &Model, text: &str) -> Result<CompareReport> {
    let ast = m.parse(text)?;
    let s = m.transitive(&ast, Reading::SubjectWide)?;
    let case = match branching::branch_case(&s.d1, &s.d2, m.universe()) {
        Ok(c) => Some(c),
        Err(Error::MixedMonotonicity { .. }) => None,
        Err(e) => return Err(e),
    };
    let mut readings = Reading::LINEAR.to_vec();
    if case.is_some() {
        readings.push(Reading::Branching);
    }
    let mut report = evaluate(m, text, &readings, &Backend::ALL)?;
    if case.is_none() {
        report.notes.push(format!(
            "branching skipped: `{}` and `{}` differ in monotonicity",
            s.d1.name(),
            s.d2.name()
        ));
    }
    let truth = |r| report.outcome(r, Backend::Oracle).map(|o| o.truth);
    let verdict = if truth(Reading::SubjectWide) == truth(Reading::ObjectWide) {
        Verdict::Agree
    } else {
        Verdict::Differ
    };
    Ok(CompareReport {
        report,
        readings: verdict,
        branching_case: case,
    })
}
