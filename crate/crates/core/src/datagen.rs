//! Seeded synthetic corpora, word lists and sense lexicons.
//!
//! Complexity grows with level through the signals the features measure:
//! sentence length, word length, the level mix of sampled lexemes and
//! clause embedding. One ChaCha8 stream drives everything, consumed in a
//! fixed order (lexicon, documents, standalone sentences), so a seed fully
//! determines the output bytes.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::{write_corpus, AnnotatedToken, Corpus, Document, LabeledSentence, Sentence};
use crate::error::{Error, Result};
use crate::level::CefrLabel;
use crate::lexicon::SUC_CATEGORY_MAP;

pub const RNG_ALGORITHM: &str = "chacha8";

pub const CORPUS_FILE: &str = "corpus.conll";
pub const KELLY_FILE: &str = "kelly.tsv";
pub const SENSES_FILE: &str = "senses.tsv";
pub const CATMAP_FILE: &str = "categories.catmap";
pub const MANIFEST_FILE: &str = "manifest.json";

/// Level-indexed arrays run A1..C1; lexeme weights have one column per
/// lexical level A1..C2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub seed: u64,
    pub docs_per_level: usize,
    /// Labeled standalone sentences per level.
    pub sentences_per_level: usize,
    pub sentences_per_doc: [f64; 5],
    /// Uniform half-width around `sentences_per_doc`.
    pub sentences_spread: f64,
    pub sentence_length: [f64; 5],
    /// Uniform half-width around `sentence_length`.
    pub length_spread: f64,
    pub lexicon_size: usize,
    /// Row = text level, column = level of the sampled content lexeme.
    pub lexeme_weights: [[f64; 6]; 5],
    pub long_word_prob: [f64; 5],
    pub subordinate_prob: [f64; 5],
    /// Chance that a document sentence is generated at another level.
    pub foreign_sentence_prob: f64,
    /// Chance that a content token is written without a lemma.
    pub missing_lemma_prob: f64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 42,
            docs_per_level: 100,
            sentences_per_level: 60,
            sentences_per_doc: [6.0, 7.0, 8.0, 9.0, 10.0],
            sentences_spread: 2.0,
            sentence_length: [6.0, 9.0, 12.0, 15.0, 18.0],
            length_spread: 2.0,
            lexicon_size: 600,
            lexeme_weights: [
                [0.70, 0.20, 0.06, 0.03, 0.01, 0.00],
                [0.40, 0.40, 0.12, 0.05, 0.02, 0.01],
                [0.20, 0.25, 0.35, 0.12, 0.06, 0.02],
                [0.10, 0.15, 0.20, 0.35, 0.15, 0.05],
                [0.05, 0.10, 0.15, 0.20, 0.35, 0.15],
            ],
            long_word_prob: [0.05, 0.12, 0.20, 0.30, 0.40],
            subordinate_prob: [0.05, 0.15, 0.30, 0.45, 0.60],
            foreign_sentence_prob: 0.0,
            missing_lemma_prob: 0.02,
        }
    }
}

fn check_prob(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} must lie in [0, 1], got {p}")))
    }
}

impl GenConfig {
    pub fn validate(&self) -> Result<()> {
        if self.lexicon_size == 0 {
            return Err(Error::Config("lexicon_size must be positive".into()));
        }
        for (name, means) in [
            ("sentences_per_doc", &self.sentences_per_doc),
            ("sentence_length", &self.sentence_length),
        ] {
            if let Some(m) = means.iter().find(|m| !(m.is_finite() && **m > 0.0)) {
                return Err(Error::Config(format!("{name} means must be positive, got {m}")));
            }
        }
        for (name, s) in [
            ("sentences_spread", self.sentences_spread),
            ("length_spread", self.length_spread),
        ] {
            if !(s.is_finite() && s >= 0.0) {
                return Err(Error::Config(format!("{name} must be non-negative, got {s}")));
            }
        }
        for p in self.long_word_prob {
            check_prob("long_word_prob", p)?;
        }
        for p in self.subordinate_prob {
            check_prob("subordinate_prob", p)?;
        }
        check_prob("foreign_sentence_prob", self.foreign_sentence_prob)?;
        check_prob("missing_lemma_prob", self.missing_lemma_prob)?;
        for row in &self.lexeme_weights {
            if row.iter().any(|w| !(w.is_finite() && *w >= 0.0)) || row.iter().sum::<f64>() <= 0.0
            {
                return Err(Error::Config(
                    "lexeme_weights rows must be non-negative with a positive sum".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Everything one generator run produces.
#[derive(Debug, Clone)]
pub struct GeneratedBundle {
    pub corpus: Corpus,
    pub corpus_text: String,
    pub kelly_tsv: String,
    pub senses_tsv: String,
    pub catmap: String,
    pub manifest: String,
    /// Generation level of every document sentence, parallel to
    /// `corpus.documents[d].sentences`.
    pub sentence_levels: Vec<Vec<CefrLabel>>,
}

impl GeneratedBundle {
    /// Write the five files into `dir`, creating it if needed.
    pub fn write_to(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let files = [
            (CORPUS_FILE, &self.corpus_text),
            (KELLY_FILE, &self.kelly_tsv),
            (SENSES_FILE, &self.senses_tsv),
            (CATMAP_FILE, &self.catmap),
            (MANIFEST_FILE, &self.manifest),
        ];
        let mut paths = Vec::with_capacity(files.len());
        for (name, body) in files {
            let path = dir.join(name);
            fs::write(&path, body)?;
            paths.push(path);
        }
        Ok(paths)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ContentPos {
    Noun,
    Verb,
    Adjective,
    Adverb,
}

impl ContentPos {
    const ALL: [ContentPos; 4] = [
        ContentPos::Noun,
        ContentPos::Verb,
        ContentPos::Adjective,
        ContentPos::Adverb,
    ];

    fn tag(self) -> &'static str {
        match self {
            ContentPos::Noun => "NN",
            ContentPos::Verb => "VB",
            ContentPos::Adjective => "JJ",
            ContentPos::Adverb => "AB",
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone)]
struct Lexeme {
    lemma: String,
    pos: ContentPos,
    level: usize,
    neuter: bool,
}

const CONSONANTS: &[u8] = b"bdfghjklmnprtv";
const VOWELS: &[u8] = b"aeiouy";

fn syllable(k: usize) -> String {
    let c = CONSONANTS[k / VOWELS.len()] as char;
    let v = VOWELS[k % VOWELS.len()] as char;
    format!("{c}{v}")
}

/// Unique consonant-vowel core for lexeme `i`: at least two syllables.
fn core(mut i: usize) -> String {
    let base = CONSONANTS.len() * VOWELS.len();
    let mut out = String::new();
    let mut digits = 0;
    while digits < 2 || i > 0 {
        out.push_str(&syllable(i % base));
        i /= base;
        digits += 1;
    }
    out
}

struct Lexicon {
    lexemes: Vec<Lexeme>,
    /// `pools[pos][level][long]` holds indices into `lexemes`.
    pools: Vec<Vec<[Vec<usize>; 2]>>,
}

impl Lexicon {
    fn generate(size: usize, rng: &mut ChaCha8Rng) -> Self {
        let base = CONSONANTS.len() * VOWELS.len();
        let mut lexemes = Vec::with_capacity(size);
        let mut pools: Vec<Vec<[Vec<usize>; 2]>> = (0..4)
            .map(|_| (0..6).map(|_| [Vec::new(), Vec::new()]).collect())
            .collect();
        for i in 0..size {
            let pos = ContentPos::ALL[i % 4];
            let level = (i / 4) % 6;
            let long = (i / 24) % 2 == 1;
            let mut lemma = core(i);
            if long {
                // cores are at most 6 characters, so this pushes past 6
                let extra = rng.gen_range(2..=3) + usize::from(level >= 4 && rng.gen_bool(0.5));
                for _ in 0..extra {
                    lemma.push_str(&syllable(rng.gen_range(0..base)));
                }
            }
            pools[pos.slot()][level][usize::from(long)].push(lexemes.len());
            lexemes.push(Lexeme {
                lemma,
                pos,
                level,
                neuter: rng.gen_bool(0.3),
            });
        }
        Lexicon { lexemes, pools }
    }

    /// Closest available lexeme: same pos first, then nearest level, then
    /// the other length class; any lexeme as last resort.
    fn pick(&self, pos: ContentPos, level: usize, long: bool, rng: &mut ChaCha8Rng) -> &Lexeme {
        let by_pos = &self.pools[pos.slot()];
        for distance in 0..6 {
            for lvl in [level.checked_sub(distance), Some(level + distance)]
                .into_iter()
                .flatten()
                .filter(|&l| l < 6)
            {
                for length in [usize::from(long), usize::from(!long)] {
                    let pool = &by_pos[lvl][length];
                    if !pool.is_empty() {
                        return &self.lexemes[pool[rng.gen_range(0..pool.len())]];
                    }
                }
            }
        }
        &self.lexemes[rng.gen_range(0..self.lexemes.len())]
    }
}

struct FunctionWord {
    lemma: &'static str,
    pos: &'static str,
    msd: &'static str,
    log_freq: f64,
}

const fn fw(lemma: &'static str, pos: &'static str, msd: &'static str, log_freq: f64) -> FunctionWord {
    FunctionWord {
        lemma,
        pos,
        msd,
        log_freq,
    }
}

const PRONOUNS: &[FunctionWord] = &[
    fw("jag", "PN", "UTR|SIN|DEF|SUB", 9.4),
    fw("du", "PN", "UTR|SIN|DEF|SUB", 9.0),
    fw("han", "PN", "UTR|SIN|DEF|SUB", 9.3),
    fw("hon", "PN", "UTR|SIN|DEF|SUB", 9.1),
    fw("vi", "PN", "UTR|PLU|DEF|SUB", 9.0),
    fw("de", "PN", "UTR|PLU|DEF|SUB", 9.5),
    fw("det", "PN", "NEU|SIN|DEF|SUB/OBJ", 9.8),
];
const DET_UTR: FunctionWord = fw("en", "DT", "UTR|SIN|IND", 9.9);
const DET_NEU: FunctionWord = fw("ett", "DT", "NEU|SIN|IND", 9.6);
const PREPOSITIONS: &[FunctionWord] = &[
    fw("i", "PP", "", 10.0),
    fw("på", "PP", "", 9.8),
    fw("med", "PP", "", 9.6),
    fw("till", "PP", "", 9.5),
    fw("från", "PP", "", 8.9),
    fw("under", "PP", "", 8.2),
    fw("efter", "PP", "", 8.4),
];
const SUBJUNCTIONS: &[FunctionWord] = &[
    fw("att", "SN", "", 9.7),
    fw("när", "SN", "", 8.8),
    fw("eftersom", "SN", "", 7.9),
    fw("om", "SN", "", 8.9),
];
const CONJUNCTION: FunctionWord = fw("och", "KN", "", 10.1);
const RELATIVE: FunctionWord = fw("som", "HP", "-|-|-", 9.7);
const PARTICLES: &[FunctionWord] = &[fw("upp", "PL", "", 8.3), fw("ut", "PL", "", 8.2)];
const MODALS: &[(FunctionWord, &str)] = &[
    (fw("kunna", "VB", "", 9.0), "kan"),
    (fw("vilja", "VB", "", 8.6), "vill"),
    (fw("måste", "VB", "", 8.5), "måste"),
    (fw("skola", "VB", "", 8.9), "ska"),
];
const PERIOD: FunctionWord = fw(".", "MAD", "", 10.5);
const COMMA: FunctionWord = fw(",", "MID", "", 10.2);

fn all_function_words() -> impl Iterator<Item = &'static FunctionWord> {
    PRONOUNS
        .iter()
        .chain([&DET_UTR, &DET_NEU])
        .chain(PREPOSITIONS)
        .chain(SUBJUNCTIONS)
        .chain([&CONJUNCTION, &RELATIVE])
        .chain(PARTICLES)
        .chain(MODALS.iter().map(|(w, _)| w))
        .chain([&PERIOD, &COMMA])
}

/// Linear interpolation across levels A1..C1.
fn by_level(li: usize, a1: f64, c1: f64) -> f64 {
    a1 + (c1 - a1) * li as f64 / 4.0
}

struct Draft {
    id: usize,
    form: String,
    lemma: String,
    pos: &'static str,
    msd: String,
    head: Option<usize>,
    deprel: &'static str,
}

struct Clause {
    verb: usize,
    last: usize,
    has_object: bool,
    has_particle: bool,
}

struct SentenceBuilder<'a> {
    toks: Vec<Draft>,
    next_id: usize,
    nouns: Vec<usize>,
    clauses: Vec<Clause>,
    lexicon: &'a Lexicon,
    cfg: &'a GenConfig,
    li: usize,
}

#[derive(Clone, Copy)]
enum Op {
    Adjective,
    Object,
    Prepositional,
    Adverb,
    Particle,
    Subordinate,
    Relative,
    PostModifier,
    Coordination,
}

impl<'a> SentenceBuilder<'a> {
    fn new(lexicon: &'a Lexicon, cfg: &'a GenConfig, li: usize) -> Self {
        SentenceBuilder {
            toks: Vec::new(),
            next_id: 0,
            nouns: Vec::new(),
            clauses: Vec::new(),
            lexicon,
            cfg,
            li,
        }
    }

    fn position(&self, id: usize) -> usize {
        self.toks.iter().position(|t| t.id == id).expect("live id")
    }

    fn draft(&mut self, form: String, lemma: String, pos: &'static str, msd: String) -> Draft {
        let id = self.next_id;
        self.next_id += 1;
        Draft {
            id,
            form,
            lemma,
            pos,
            msd,
            head: None,
            deprel: "",
        }
    }

    fn function_word(&mut self, w: &FunctionWord) -> Draft {
        self.draft(
            w.lemma.to_string(),
            w.lemma.to_string(),
            w.pos,
            w.msd.to_string(),
        )
    }

    /// Insert after `anchor` (or append), extending any clause ending there.
    fn insert_after(&mut self, anchor: Option<usize>, drafts: Vec<Draft>) {
        let Some(last_new) = drafts.last().map(|d| d.id) else {
            return;
        };
        let at = anchor.map_or(self.toks.len(), |a| self.position(a) + 1);
        if let Some(a) = anchor {
            for c in &mut self.clauses {
                if c.last == a {
                    c.last = last_new;
                }
            }
        }
        self.toks.splice(at..at, drafts);
    }

    fn insert_before(&mut self, anchor: usize, draft: Draft) {
        let at = self.position(anchor);
        self.toks.insert(at, draft);
    }

    fn pick_lexeme(&self, pos: ContentPos, rng: &mut ChaCha8Rng) -> Lexeme {
        let weights = WeightedIndex::new(self.cfg.lexeme_weights[self.li]).expect("validated");
        let level = weights.sample(rng);
        let long = rng.gen_bool(self.cfg.long_word_prob[self.li]);
        self.lexicon.pick(pos, level, long, rng).clone()
    }

    fn lemma_of(&self, lex: &Lexeme, rng: &mut ChaCha8Rng) -> String {
        if rng.gen_bool(self.cfg.missing_lemma_prob) {
            String::new()
        } else {
            lex.lemma.clone()
        }
    }

    fn content(&mut self, pos: ContentPos, rng: &mut ChaCha8Rng) -> Draft {
        let lex = self.pick_lexeme(pos, rng);
        let (form, msd) = inflect(&lex, self.li, rng);
        let lemma = self.lemma_of(&lex, rng);
        self.draft(form, lemma, lex.pos.tag(), msd)
    }

    /// Noun with an optional determiner; returns the drafts and the noun id.
    fn noun_phrase(&mut self, rng: &mut ChaCha8Rng, head: usize, deprel: &'static str) -> (Vec<Draft>, usize) {
        let mut noun = self.content(ContentPos::Noun, rng);
        noun.head = Some(head);
        noun.deprel = deprel;
        let noun_id = noun.id;
        self.nouns.push(noun_id);
        let mut out = Vec::new();
        if noun.pos == "NN" && rng.gen_bool(0.5) {
            let neuter = noun.msd.starts_with("NEU");
            let mut det = self.function_word(if neuter { &DET_NEU } else { &DET_UTR });
            det.head = Some(noun_id);
            det.deprel = "DT";
            out.push(det);
        }
        out.push(noun);
        (out, noun_id)
    }

    fn subject(&mut self, rng: &mut ChaCha8Rng, verb: usize) -> Vec<Draft> {
        if rng.gen_bool(by_level(self.li, 0.8, 0.4)) {
            let w = &PRONOUNS[rng.gen_range(0..PRONOUNS.len())];
            let mut p = self.function_word(w);
            p.head = Some(verb);
            p.deprel = "SS";
            vec![p]
        } else {
            self.noun_phrase(rng, verb, "SS").0
        }
    }

    fn main_clause(&mut self, rng: &mut ChaCha8Rng) {
        let mut verb = self.content(ContentPos::Verb, rng);
        let verb_id = verb.id;
        let mut drafts = Vec::new();
        let mut root = verb_id;
        if rng.gen_bool(by_level(self.li, 0.1, 0.3)) {
            let (w, form) = &MODALS[rng.gen_range(0..MODALS.len())];
            let mut modal = self.function_word(w);
            modal.form = form.to_string();
            modal.msd = "PRS|AKT".into();
            modal.deprel = "ROOT";
            root = modal.id;
            verb.head = Some(root);
            verb.deprel = "VG";
            if verb.pos == "VB" && !verb.lemma.is_empty() {
                verb.form = verb.lemma.clone();
                verb.msd = "INF|AKT".into();
            }
            drafts.push(modal);
        } else {
            verb.deprel = "ROOT";
        }
        let subject = self.subject(rng, root);
        drafts.splice(0..0, subject);
        drafts.push(verb);
        self.insert_after(None, drafts);
        self.clauses.push(Clause {
            verb: verb_id,
            last: verb_id,
            has_object: false,
            has_particle: false,
        });
    }

    fn apply(&mut self, op: Op, rng: &mut ChaCha8Rng) {
        let ci = rng.gen_range(0..self.clauses.len());
        match op {
            Op::Adjective => {
                let noun = self.nouns[rng.gen_range(0..self.nouns.len())];
                let mut adj = if rng.gen_bool(by_level(self.li, 0.0, 0.2)) {
                    self.participle(rng)
                } else {
                    self.content(ContentPos::Adjective, rng)
                };
                adj.head = Some(noun);
                adj.deprel = "AT";
                self.insert_before(noun, adj);
            }
            Op::Object => {
                let Some(ci) = self.clauses.iter().position(|c| !c.has_object) else {
                    return;
                };
                let (verb, last) = (self.clauses[ci].verb, self.clauses[ci].last);
                let (np, _) = self.noun_phrase(rng, verb, "OO");
                self.clauses[ci].has_object = true;
                self.insert_after(Some(last), np);
            }
            Op::Prepositional => {
                let (verb, last) = (self.clauses[ci].verb, self.clauses[ci].last);
                let pp = self.preposition_phrase(rng, verb, "RA");
                self.insert_after(Some(last), pp);
            }
            Op::Adverb => {
                let verb = self.clauses[ci].verb;
                let mut adv = self.content(ContentPos::Adverb, rng);
                adv.head = Some(verb);
                adv.deprel = "AA";
                self.insert_after(Some(verb), vec![adv]);
            }
            Op::Particle => {
                let Some(ci) = self.clauses.iter().position(|c| !c.has_particle) else {
                    return;
                };
                let verb = self.clauses[ci].verb;
                let mut pl = self.function_word(&PARTICLES[rng.gen_range(0..PARTICLES.len())]);
                pl.head = Some(verb);
                pl.deprel = "PL";
                self.clauses[ci].has_particle = true;
                self.insert_after(Some(verb), vec![pl]);
            }
            Op::Subordinate => {
                let governor = self.clauses[ci].verb;
                let mut verb = self.content(ContentPos::Verb, rng);
                verb.head = Some(governor);
                verb.deprel = "UA";
                let vid = verb.id;
                let mut comma = self.function_word(&COMMA);
                comma.head = Some(vid);
                comma.deprel = "IK";
                let mut sn = self.function_word(&SUBJUNCTIONS[rng.gen_range(0..SUBJUNCTIONS.len())]);
                sn.head = Some(vid);
                sn.deprel = "UK";
                let mut drafts = vec![comma, sn];
                drafts.extend(self.subject(rng, vid));
                drafts.push(verb);
                self.insert_after(None, drafts);
                self.clauses.push(Clause {
                    verb: vid,
                    last: vid,
                    has_object: false,
                    has_particle: false,
                });
            }
            Op::Relative => {
                let noun = self.nouns[rng.gen_range(0..self.nouns.len())];
                let mut verb = self.content(ContentPos::Verb, rng);
                verb.head = Some(noun);
                verb.deprel = "EF";
                let vid = verb.id;
                let mut som = self.function_word(&RELATIVE);
                som.head = Some(vid);
                som.deprel = "SS";
                self.insert_after(Some(noun), vec![som, verb]);
                self.clauses.push(Clause {
                    verb: vid,
                    last: vid,
                    has_object: false,
                    has_particle: false,
                });
            }
            Op::PostModifier => {
                let noun = self.nouns[rng.gen_range(0..self.nouns.len())];
                let pp = self.preposition_phrase(rng, noun, "ET");
                self.insert_after(Some(noun), pp);
            }
            Op::Coordination => {
                let noun = self.nouns[rng.gen_range(0..self.nouns.len())];
                let mut second = self.content(ContentPos::Noun, rng);
                second.head = Some(noun);
                second.deprel = "CJ";
                let mut och = self.function_word(&CONJUNCTION);
                och.head = Some(second.id);
                och.deprel = "++";
                self.nouns.push(second.id);
                self.insert_after(Some(noun), vec![och, second]);
            }
        }
    }

    fn preposition_phrase(&mut self, rng: &mut ChaCha8Rng, head: usize, deprel: &'static str) -> Vec<Draft> {
        let mut pp = self.function_word(&PREPOSITIONS[rng.gen_range(0..PREPOSITIONS.len())]);
        pp.head = Some(head);
        pp.deprel = deprel;
        let pid = pp.id;
        let (np, _) = self.noun_phrase(rng, pid, "PA");
        let mut out = vec![pp];
        out.extend(np);
        out
    }

    fn participle(&mut self, rng: &mut ChaCha8Rng) -> Draft {
        let lex = self.pick_lexeme(ContentPos::Verb, rng);
        if lex.pos != ContentPos::Verb {
            let (form, msd) = inflect(&lex, self.li, rng);
            let lemma = self.lemma_of(&lex, rng);
            return self.draft(form, lemma, lex.pos.tag(), msd);
        }
        let (form, msd) = if rng.gen_bool(0.5) {
            (format!("{}nde", lex.lemma), "PRS|UTR/NEU|SIN/PLU|IND/DEF|NOM")
        } else {
            (format!("{}d", lex.lemma), "PRF|UTR|SIN|IND|NOM")
        };
        let lemma = self.lemma_of(&lex, rng);
        self.draft(form, lemma, "PC", msd.to_string())
    }

    fn grow(&mut self, target: usize, rng: &mut ChaCha8Rng) {
        let p_sub = self.cfg.subordinate_prob[self.li];
        // the final period is appended later
        while self.toks.len() + 1 < target {
            let has_noun = !self.nouns.is_empty();
            let needs_object = self.clauses.iter().any(|c| !c.has_object);
            let needs_particle = self.clauses.iter().any(|c| !c.has_particle);
            let options: [(Op, f64); 9] = [
                (Op::Adjective, if has_noun { 1.0 } else { 0.0 }),
                (Op::Object, if needs_object { 3.0 } else { 0.0 }),
                (Op::Prepositional, 1.0),
                (Op::Adverb, 0.6),
                (Op::Particle, if needs_particle { 0.2 } else { 0.0 }),
                (Op::Subordinate, 2.0 * p_sub),
                (Op::Relative, if has_noun { 1.5 * p_sub } else { 0.0 }),
                (Op::PostModifier, if has_noun { p_sub } else { 0.0 }),
                (Op::Coordination, if has_noun { 0.3 } else { 0.0 }),
            ];
            let dist = WeightedIndex::new(options.iter().map(|o| o.1)).expect("positive weights");
            let op = options[dist.sample(rng)].0;
            self.apply(op, rng);
        }
    }

    fn finish(mut self, id: String) -> Sentence {
        let root = self.toks.iter().find(|t| t.head.is_none()).map(|t| t.id);
        let mut period = self.function_word(&PERIOD);
        period.head = root;
        period.deprel = "IP";
        self.toks.push(period);
        let index_of = |id: usize| self.toks.iter().position(|t| t.id == id).expect("live id") + 1;
        let tokens = self
            .toks
            .iter()
            .enumerate()
            .map(|(i, t)| AnnotatedToken {
                index: i + 1,
                form: t.form.clone(),
                lemma: t.lemma.clone(),
                pos: t.pos.to_string(),
                msd: if t.msd.is_empty() {
                    Vec::new()
                } else {
                    t.msd.split('|').map(str::to_string).collect()
                },
                head: t.head.map_or(0, index_of),
                deprel: t.deprel.to_string(),
            })
            .collect();
        Sentence { id, tokens }
    }
}

/// Surface form and morphology for a content lexeme.
fn inflect(lex: &Lexeme, li: usize, rng: &mut ChaCha8Rng) -> (String, String) {
    let lemma = &lex.lemma;
    match lex.pos {
        ContentPos::Noun => {
            let gender = if lex.neuter { "NEU" } else { "UTR" };
            if rng.gen_bool(0.3) {
                let suffix = if lex.neuter { "et" } else { "en" };
                (format!("{lemma}{suffix}"), format!("{gender}|SIN|DEF|NOM"))
            } else {
                (lemma.clone(), format!("{gender}|SIN|IND|NOM"))
            }
        }
        ContentPos::Verb => {
            if rng.gen_bool(by_level(li, 0.02, 0.2)) {
                return (format!("{lemma}s"), "PRS|SFO".into());
            }
            let present = by_level(li, 0.85, 0.4);
            let u: f64 = rng.gen();
            if u < present {
                (format!("{lemma}r"), "PRS|AKT".into())
            } else if u < present + (1.0 - present) * 0.6 {
                (format!("{lemma}de"), "PRT|AKT".into())
            } else {
                (format!("{lemma}t"), "SUP|AKT".into())
            }
        }
        ContentPos::Adjective => (lemma.clone(), "POS|UTR|SIN|IND|NOM".into()),
        ContentPos::Adverb => (lemma.clone(), "POS".into()),
    }
}

fn round_count(mean: f64, spread: f64, min: usize, rng: &mut ChaCha8Rng) -> usize {
    let x = if spread > 0.0 {
        mean + rng.gen_range(-spread..=spread)
    } else {
        mean
    };
    (x.round().max(0.0) as usize).max(min)
}

fn sentence(
    lexicon: &Lexicon,
    cfg: &GenConfig,
    li: usize,
    id: String,
    rng: &mut ChaCha8Rng,
) -> Sentence {
    let target = round_count(cfg.sentence_length[li], cfg.length_spread, 3, rng);
    let mut b = SentenceBuilder::new(lexicon, cfg, li);
    b.main_clause(rng);
    b.grow(target, rng);
    b.finish(id)
}

fn header(cfg: &GenConfig) -> String {
    format!(
        "# generator = cefrlab datagen, rng = {RNG_ALGORITHM}, seed = {}\n",
        cfg.seed
    )
}

/// Generate a corpus with its word list, sense lexicon and category map.
pub fn generate_corpus(cfg: &GenConfig) -> Result<GeneratedBundle> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let lexicon = Lexicon::generate(cfg.lexicon_size, &mut rng);

    let mut kelly = header(cfg);
    kelly.push_str("lemma\tpos\tlevel\tlog_freq\n");
    let mut senses = header(cfg);
    senses.push_str("lemma\tpos\tsenses\n");
    for w in all_function_words() {
        let _ = writeln!(kelly, "{}\t{}\tA1\t{:.4}", w.lemma, w.pos, w.log_freq);
    }
    for lex in &lexicon.lexemes {
        let level = CefrLabel::LEXICAL[lex.level];
        let log_freq = 7.0 - 0.8 * lex.level as f64 + rng.gen_range(-0.5..0.5);
        let _ = writeln!(kelly, "{}\t{}\t{level}\t{log_freq:.4}", lex.lemma, lex.pos.tag());
        let max_senses = 6u32.saturating_sub(lex.level as u32).max(1);
        let _ = writeln!(
            senses,
            "{}\t{}\t{}",
            lex.lemma,
            lex.pos.tag(),
            rng.gen_range(1..=max_senses)
        );
    }

    let mut corpus = Corpus::default();
    let mut sentence_levels = Vec::new();
    for (li, level) in CefrLabel::CLASSES.iter().enumerate() {
        for d in 0..cfg.docs_per_level {
            let doc_id = format!("{level}-{:04}", d + 1);
            let n = round_count(cfg.sentences_per_doc[li], cfg.sentences_spread, 1, &mut rng);
            let mut sentences = Vec::with_capacity(n);
            let mut levels = Vec::with_capacity(n);
            for s in 0..n {
                let mut sl = li;
                if rng.gen_bool(cfg.foreign_sentence_prob) {
                    sl = (li + rng.gen_range(1..5)) % 5;
                }
                levels.push(CefrLabel::CLASSES[sl]);
                sentences.push(sentence(&lexicon, cfg, sl, format!("{doc_id}.{}", s + 1), &mut rng));
            }
            corpus.documents.push(Document {
                id: doc_id,
                level: *level,
                sentences,
            });
            sentence_levels.push(levels);
        }
    }
    for (li, level) in CefrLabel::CLASSES.iter().enumerate() {
        for s in 0..cfg.sentences_per_level {
            let id = format!("s{level}-{:04}", s + 1);
            corpus.standalone_sentences.push(LabeledSentence {
                sentence: sentence(&lexicon, cfg, li, id, &mut rng),
                level: *level,
            });
        }
    }

    let mut corpus_text = header(cfg);
    corpus_text.push_str(&write_corpus(&corpus));
    let mut catmap = header(cfg);
    catmap.push_str(SUC_CATEGORY_MAP);
    let manifest = serde_json::to_string_pretty(&serde_json::json!({
        "generator": "cefrlab datagen",
        "rng": RNG_ALGORITHM,
        "seed": cfg.seed,
        "config": cfg,
        "counts": {
            "documents": corpus.documents.len(),
            "document_sentences": corpus.documents.iter().map(|d| d.sentences.len()).sum::<usize>(),
            "standalone_sentences": corpus.standalone_sentences.len(),
            "lexemes": lexicon.lexemes.len(),
        },
        "files": [CORPUS_FILE, KELLY_FILE, SENSES_FILE, CATMAP_FILE],
    }))? + "\n";

    Ok(GeneratedBundle {
        corpus,
        corpus_text,
        kelly_tsv: kelly,
        senses_tsv: senses,
        catmap,
        manifest,
        sentence_levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> GenConfig {
        GenConfig {
            docs_per_level: 3,
            sentences_per_level: 4,
            lexicon_size: 120,
            ..GenConfig::default()
        }
    }

    #[test]
    fn cores_are_unique() {
        let cores: std::collections::HashSet<String> = (0..5000).map(core).collect();
        assert_eq!(cores.len(), 5000);
        assert!(cores.iter().all(|c| c.len() <= 6));
    }

    #[test]
    fn zero_lexicon_is_rejected() {
        let cfg = GenConfig {
            lexicon_size: 0,
            ..small()
        };
        assert!(matches!(generate_corpus(&cfg), Err(Error::Config(_))));
    }

    #[test]
    fn out_of_range_probability_is_rejected() {
        let mut cfg = small();
        cfg.subordinate_prob[2] = 1.5;
        assert!(generate_corpus(&cfg).is_err());
    }

    #[test]
    fn tiny_lexicon_still_generates() {
        let cfg = GenConfig {
            lexicon_size: 1,
            ..small()
        };
        let b = generate_corpus(&cfg).unwrap();
        assert_eq!(b.corpus.documents.len(), 15);
    }

    #[test]
    fn counts_follow_config() {
        let b = generate_corpus(&small()).unwrap();
        assert_eq!(b.corpus.documents.len(), 15);
        assert_eq!(b.corpus.standalone_sentences.len(), 20);
        for (doc, levels) in b.corpus.documents.iter().zip(&b.sentence_levels) {
            assert_eq!(doc.sentences.len(), levels.len());
            assert!(levels.iter().all(|&l| l == doc.level));
        }
    }
}
