//! External lexical resources: a Kelly-style CEFR word list, a sense-count
//! lexicon and the tagset category map.
//!
//! Word-list and sense lookups try the exact `(lemma, pos)` key first and
//! fall back to the first entry for the lemma alone. Each result says which
//! route matched so callers can count fallback use.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::level::CefrLabel;

/// Default category map for the SUC tagset.
pub const SUC_CATEGORY_MAP: &str = include_str!("../data/suc.catmap");

#[derive(Debug, Clone, PartialEq)]
pub struct KellyEntry {
    pub lemma: String,
    pub pos: String,
    pub level: CefrLabel,
    /// Natural log of frequency per million.
    pub log_freq: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Match<'a, T> {
    pub value: &'a T,
    /// True when only the lemma matched.
    pub fallback: bool,
}

#[derive(Debug, Clone)]
struct LemmaSlots {
    first: usize,
    by_pos: HashMap<String, usize>,
}

/// `(lemma, pos)` index with a lemma-only fallback to the first entry.
#[derive(Debug, Clone, Default)]
struct DualIndex {
    by_lemma: HashMap<String, LemmaSlots>,
}

impl DualIndex {
    /// Returns false when the `(lemma, pos)` key was already present.
    fn insert(&mut self, lemma: &str, pos: &str, slot: usize) -> bool {
        let slots = self
            .by_lemma
            .entry(lemma.to_string())
            .or_insert_with(|| LemmaSlots {
                first: slot,
                by_pos: HashMap::new(),
            });
        if slots.by_pos.contains_key(pos) {
            return false;
        }
        slots.by_pos.insert(pos.to_string(), slot);
        true
    }

    fn find(&self, lemma: &str, pos: &str) -> Option<(usize, bool)> {
        let slots = self.by_lemma.get(lemma)?;
        Some(match slots.by_pos.get(pos) {
            Some(&i) => (i, false),
            None => (slots.first, true),
        })
    }
}

#[derive(Debug, Clone, Default)]
pub struct KellyList {
    entries: Vec<KellyEntry>,
    index: DualIndex,
    warnings: Vec<String>,
}

impl KellyList {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[KellyEntry] {
        &self.entries
    }

    /// Warnings recorded while loading (duplicate keys).
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn lookup(&self, lemma: &str, pos: &str) -> Option<Match<'_, KellyEntry>> {
        self.index.find(lemma, pos).map(|(i, fallback)| Match {
            value: &self.entries[i],
            fallback,
        })
    }

    /// Add an entry; a repeated `(lemma, pos)` keeps the first and warns.
    pub fn insert(&mut self, entry: KellyEntry) -> bool {
        if self.index.insert(&entry.lemma, &entry.pos, self.entries.len()) {
            self.entries.push(entry);
            true
        } else {
            self.warnings.push(format!(
                "duplicate entry ({}, {}) ignored",
                entry.lemma, entry.pos
            ));
            false
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SenseLexicon {
    counts: Vec<u32>,
    index: DualIndex,
}

impl SenseLexicon {
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn lookup(&self, lemma: &str, pos: &str) -> Option<Match<'_, u32>> {
        self.index.find(lemma, pos).map(|(i, fallback)| Match {
            value: &self.counts[i],
            fallback,
        })
    }

    pub fn insert(&mut self, lemma: &str, pos: &str, senses: u32) -> Result<bool> {
        if senses < 1 {
            return Err(Error::invalid(format!(
                "sense count for ({lemma}, {pos}) must be at least 1"
            )));
        }
        let added = self.index.insert(lemma, pos, self.counts.len());
        if added {
            self.counts.push(senses);
        }
        Ok(added)
    }
}

/// Data rows of a TSV resource: skips blanks, `#` comments and a header
/// row whose first column is `lemma`.
fn data_rows(input: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .enumerate()
        .filter(|(k, (_, l))| !(*k == 0 && l.split('\t').next() == Some("lemma")))
        .map(|(_, (n, l))| (n, l.split('\t').collect()))
}

/// Load a 4-column TSV word list: lemma, pos, level (A1..C2), log frequency.
pub fn load_kelly(input: &str) -> Result<KellyList> {
    let mut list = KellyList::default();
    for (line, cols) in data_rows(input) {
        if cols.len() != 4 {
            return Err(Error::parse(
                line,
                format!("expected 4 columns, found {}", cols.len()),
            ));
        }
        let level: CefrLabel = cols[2]
            .parse()
            .map_err(|e| Error::parse(line, format!("{e}")))?;
        let log_freq: f64 = cols[3]
            .trim()
            .parse()
            .ok()
            .filter(|f: &f64| f.is_finite())
            .ok_or_else(|| Error::parse(line, format!("bad log frequency {:?}", cols[3])))?;
        if !list.insert(KellyEntry {
            lemma: cols[0].to_string(),
            pos: cols[1].to_string(),
            level,
            log_freq,
        }) {
            let w = list.warnings.last_mut().expect("warning just pushed");
            *w = format!("line {line}: {w}");
        }
    }
    Ok(list)
}

/// Load a 3-column TSV sense lexicon: lemma, pos, sense count (≥ 1).
pub fn load_senses(input: &str) -> Result<SenseLexicon> {
    let mut lex = SenseLexicon::default();
    for (line, cols) in data_rows(input) {
        if cols.len() != 3 {
            return Err(Error::parse(
                line,
                format!("expected 3 columns, found {}", cols.len()),
            ));
        }
        let senses: u32 = cols[2]
            .trim()
            .parse()
            .map_err(|_| Error::parse(line, format!("bad sense count {:?}", cols[2])))?;
        lex.insert(cols[0], cols[1], senses)
            .map_err(|e| Error::parse(line, e.to_string()))?;
    }
    Ok(lex)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PosCategory {
    Noun,
    Verb,
    Adjective,
    Adverb,
    Pronoun,
    Preposition,
    Particle,
    Punctuation,
    Subjunction,
    Conjunction,
    Relative,
    Participle,
    FunctionWord,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeprelCategory {
    PreModifier,
    PostModifier,
    SubordinateClause,
    RelativeClause,
    PrepositionalComplement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MsdMarker {
    Neuter,
    Preterite,
    Present,
    Supine,
    PastParticiple,
    PresentParticiple,
    Passive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LexemeList {
    ModalVerb,
    ThirdPersonSingular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Pos,
    Deprel,
    Msd,
    Lexemes,
}

impl Section {
    fn name(self) -> &'static str {
        match self {
            Section::Pos => "pos",
            Section::Deprel => "deprel",
            Section::Msd => "msd",
            Section::Lexemes => "lexemes",
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Key {
    Pos(PosCategory),
    Deprel(DeprelCategory),
    Msd(MsdMarker),
    Lexemes(LexemeList),
}

struct KeySpec {
    section: Section,
    name: &'static str,
    key: Key,
    required: bool,
    may_be_empty: bool,
}

const fn spec(
    section: Section,
    name: &'static str,
    key: Key,
    required: bool,
    may_be_empty: bool,
) -> KeySpec {
    KeySpec {
        section,
        name,
        key,
        required,
        may_be_empty,
    }
}

const KEYS: &[KeySpec] = &[
    spec(Section::Pos, "noun", Key::Pos(PosCategory::Noun), true, false),
    spec(Section::Pos, "verb", Key::Pos(PosCategory::Verb), true, false),
    spec(Section::Pos, "adjective", Key::Pos(PosCategory::Adjective), true, false),
    spec(Section::Pos, "adverb", Key::Pos(PosCategory::Adverb), true, false),
    spec(Section::Pos, "pronoun", Key::Pos(PosCategory::Pronoun), true, false),
    spec(Section::Pos, "preposition", Key::Pos(PosCategory::Preposition), true, false),
    spec(Section::Pos, "particle", Key::Pos(PosCategory::Particle), true, false),
    spec(Section::Pos, "punctuation", Key::Pos(PosCategory::Punctuation), true, false),
    spec(Section::Pos, "subjunction", Key::Pos(PosCategory::Subjunction), true, false),
    spec(Section::Pos, "conjunction", Key::Pos(PosCategory::Conjunction), true, false),
    spec(Section::Pos, "relative", Key::Pos(PosCategory::Relative), true, false),
    spec(Section::Pos, "participle", Key::Pos(PosCategory::Participle), true, false),
    spec(Section::Pos, "function_word", Key::Pos(PosCategory::FunctionWord), true, false),
    spec(Section::Deprel, "pre_modifier", Key::Deprel(DeprelCategory::PreModifier), true, false),
    spec(Section::Deprel, "post_modifier", Key::Deprel(DeprelCategory::PostModifier), true, false),
    spec(Section::Deprel, "subordinate_clause", Key::Deprel(DeprelCategory::SubordinateClause), true, false),
    spec(Section::Deprel, "relative_clause", Key::Deprel(DeprelCategory::RelativeClause), true, false),
    spec(Section::Deprel, "prepositional_complement", Key::Deprel(DeprelCategory::PrepositionalComplement), true, false),
    spec(Section::Msd, "neuter", Key::Msd(MsdMarker::Neuter), true, false),
    spec(Section::Msd, "preterite", Key::Msd(MsdMarker::Preterite), true, false),
    spec(Section::Msd, "present", Key::Msd(MsdMarker::Present), true, false),
    spec(Section::Msd, "supine", Key::Msd(MsdMarker::Supine), true, false),
    spec(Section::Msd, "past_participle", Key::Msd(MsdMarker::PastParticiple), true, false),
    spec(Section::Msd, "present_participle", Key::Msd(MsdMarker::PresentParticiple), true, false),
    spec(Section::Msd, "passive", Key::Msd(MsdMarker::Passive), false, true),
    spec(Section::Lexemes, "modal_verb", Key::Lexemes(LexemeList::ModalVerb), true, true),
    spec(Section::Lexemes, "third_person_singular", Key::Lexemes(LexemeList::ThirdPersonSingular), true, true),
];

/// Maps tagset symbols onto the categories the feature catalog counts.
#[derive(Debug, Clone, Default)]
pub struct CategoryMap {
    pos: HashMap<PosCategory, HashSet<String>>,
    deprel: HashMap<DeprelCategory, HashSet<String>>,
    msd: HashMap<MsdMarker, HashSet<String>>,
    lexemes: HashMap<LexemeList, HashSet<String>>,
    warnings: Vec<String>,
}

impl CategoryMap {
    /// The built-in SUC map.
    pub fn suc() -> Self {
        load_category_map(SUC_CATEGORY_MAP).expect("bundled category map is valid")
    }

    pub fn pos_is(&self, cat: PosCategory, tag: &str) -> bool {
        self.pos.get(&cat).is_some_and(|s| s.contains(tag))
    }

    pub fn deprel_is(&self, cat: DeprelCategory, deprel: &str) -> bool {
        self.deprel.get(&cat).is_some_and(|s| s.contains(deprel))
    }

    pub fn msd_has(&self, marker: MsdMarker, features: &[String]) -> bool {
        self.msd
            .get(&marker)
            .is_some_and(|s| features.iter().any(|f| s.contains(f)))
    }

    /// `word` must already be lowercased.
    pub fn lexeme_in(&self, list: LexemeList, word: &str) -> bool {
        self.lexemes.get(&list).is_some_and(|s| s.contains(word))
    }

    /// Noun, verb, adjective or adverb.
    pub fn is_lexical(&self, tag: &str) -> bool {
        [
            PosCategory::Noun,
            PosCategory::Verb,
            PosCategory::Adjective,
            PosCategory::Adverb,
        ]
        .iter()
        .any(|&c| self.pos_is(c, tag))
    }

    /// Unknown keys seen while loading.
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }
}

/// Parse a category map: `name = a, b, c` lines under `[pos]`, `[deprel]`,
/// `[msd]` and `[lexemes]` headers.
pub fn load_category_map(input: &str) -> Result<CategoryMap> {
    let mut map = CategoryMap::default();
    let mut section: Option<Section> = None;
    let mut seen: HashSet<(&'static str, &'static str)> = HashSet::new();

    for (i, raw) in input.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            section = match name.trim() {
                "pos" => Some(Section::Pos),
                "deprel" => Some(Section::Deprel),
                "msd" => Some(Section::Msd),
                "lexemes" => Some(Section::Lexemes),
                other => {
                    return Err(Error::parse(line_no, format!("unknown section [{other}]")))
                }
            };
            continue;
        }
        let Some((name, values)) = line.split_once('=') else {
            return Err(Error::parse(line_no, "expected `name = value, ...`"));
        };
        let Some(sec) = section else {
            return Err(Error::parse(line_no, "entry before any section header"));
        };
        let name = name.trim();
        let Some(ks) = KEYS.iter().find(|k| k.section == sec && k.name == name) else {
            let w = format!("line {line_no}: unknown key {name} in [{}]", sec.name());
            log::warn!("{w}");
            map.warnings.push(w);
            continue;
        };
        let mut items: HashSet<String> = values
            .split(',')
            .map(str::trim)
            .filter(|v| !v.is_empty())
            .map(str::to_string)
            .collect();
        if sec == Section::Lexemes {
            items = items.into_iter().map(|v| v.to_lowercase()).collect();
        }
        if items.is_empty() && !ks.may_be_empty {
            return Err(Error::parse(line_no, format!("empty category: {name}")));
        }
        seen.insert((sec.name(), ks.name));
        match ks.key {
            Key::Pos(c) => map.pos.entry(c).or_default().extend(items),
            Key::Deprel(c) => map.deprel.entry(c).or_default().extend(items),
            Key::Msd(c) => map.msd.entry(c).or_default().extend(items),
            Key::Lexemes(c) => map.lexemes.entry(c).or_default().extend(items),
        }
    }

    if let Some(missing) = KEYS
        .iter()
        .find(|k| k.required && !seen.contains(&(k.section.name(), k.name)))
    {
        return Err(Error::Config(format!("missing category: {}", missing.name)));
    }

    let lexical = [
        PosCategory::Noun,
        PosCategory::Verb,
        PosCategory::Adjective,
        PosCategory::Adverb,
    ];
    for (a, ca) in lexical.iter().enumerate() {
        for cb in &lexical[a + 1..] {
            if let Some(tag) = map.pos[ca].intersection(&map.pos[cb]).next() {
                return Err(Error::Config(format!(
                    "tag {tag} is in both {ca:?} and {cb:?}; lexical categories must be disjoint"
                )));
            }
        }
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    const KELLY: &str = "lemma\tpos\tlevel\tlog_freq\n\
katt\tNN\tA2\t4.5\n\
hund\tNN\tA1\t5.25\n\
springa\tVB\tB1\t3.0\n";

    #[test]
    fn kelly_loads_and_looks_up() {
        let k = load_kelly(KELLY).unwrap();
        assert_eq!(k.len(), 3);
        let m = k.lookup("katt", "NN").unwrap();
        assert_eq!(m.value.level, CefrLabel::A2);
        assert_eq!(m.value.log_freq, 4.5);
        assert!(!m.fallback);
        assert!(k.lookup("fisk", "NN").is_none());
        assert!(k.warnings().is_empty());
    }

    #[test]
    fn kelly_duplicate_keeps_first_and_warns() {
        let input = format!("{KELLY}hund\tNN\tC1\t1.0\n");
        let k = load_kelly(&input).unwrap();
        assert_eq!(k.len(), 3);
        assert_eq!(k.warnings().len(), 1);
        assert!(k.warnings()[0].starts_with("line 5"));
        assert_eq!(k.lookup("hund", "NN").unwrap().value.level, CefrLabel::A1);
    }

    #[test]
    fn kelly_falls_back_to_lemma() {
        let k = load_kelly(KELLY).unwrap();
        let m = k.lookup("katt", "PM").unwrap();
        assert!(m.fallback);
        assert_eq!(m.value.level, CefrLabel::A2);
        // lookups are pure
        assert_eq!(k.lookup("katt", "PM"), k.lookup("katt", "PM"));
    }

    #[test]
    fn kelly_rejects_bad_rows() {
        for (input, line) in [
            ("a\tNN\tD3\t1.0\n", 1),
            ("a\tNN\tA1\t1.0\nb\tNN\tA1\tmany\n", 2),
            ("a\tNN\tA1\n", 1),
            ("a\tNN\tA1\tNaN\n", 1),
        ] {
            match load_kelly(input) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line),
                other => panic!("{input:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn senses_load() {
        let s = load_senses("bok\tNN\t3\nbok\tNN\t7\n").unwrap();
        assert_eq!(*s.lookup("bok", "NN").unwrap().value, 3);
        assert!(s.lookup("penna", "NN").is_none());
        assert!(load_senses("bok\tNN\t0\n").is_err());
        assert!(load_senses("bok\tNN\t-1\n").is_err());
    }

    #[test]
    fn bundled_map_is_complete() {
        let m = CategoryMap::suc();
        assert!(m.pos_is(PosCategory::Relative, "HP"));
        assert!(m.pos_is(PosCategory::Punctuation, "MAD"));
        assert!(m.deprel_is(DeprelCategory::RelativeClause, "EF"));
        assert!(m.lexeme_in(LexemeList::ModalVerb, "måste"));
        assert!(m.is_lexical("NN"));
        assert!(!m.is_lexical("PN"));
        assert!(m.warnings().is_empty());
    }

    #[test]
    fn missing_category_is_named() {
        let without_noun: String = SUC_CATEGORY_MAP
            .lines()
            .filter(|l| !l.starts_with("noun"))
            .map(|l| format!("{l}\n"))
            .collect();
        let err = load_category_map(&without_noun).unwrap_err();
        assert_eq!(err.to_string(), "missing category: noun");
    }

    #[test]
    fn unknown_key_warns() {
        let input = format!("{SUC_CATEGORY_MAP}\n[pos]\ninterjection = IN\n");
        let m = load_category_map(&input).unwrap();
        assert_eq!(m.warnings().len(), 1);
    }

    #[test]
    fn lexical_sets_must_be_disjoint() {
        let input = SUC_CATEGORY_MAP.replace("adverb = AB", "adverb = AB, JJ");
        assert!(load_category_map(&input).is_err());
    }

    #[test]
    fn unmapped_tag_is_in_no_category() {
        let m = CategoryMap::suc();
        for cat in [
            PosCategory::Noun,
            PosCategory::Verb,
            PosCategory::Pronoun,
            PosCategory::Punctuation,
            PosCategory::FunctionWord,
        ] {
            assert!(!m.pos_is(cat, "XYZ"));
        }
    }
}
