//! The 61-dimensional linguistic complexity vector.
//!
//! Features are computed per sentence and averaged over the sentences of a
//! document. Token counts include punctuation. Incidence scores (IncSc) are
//! category counts per 1000 tokens. See [`FEATURE_NAMES`] for the fixed
//! column order.

use std::collections::HashSet;
use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use crate::corpus::{Document, Sentence};
use crate::error::{Error, Result};
use crate::level::CefrLabel;
use crate::lexicon::{
    CategoryMap, DeprelCategory, KellyList, LexemeList, MsdMarker, PosCategory, SenseLexicon,
};

pub const FEATURE_COUNT: usize = 61;

/// Column names, in catalog order (`FEATURE_NAMES[0]` is feature #1).
pub const FEATURE_NAMES: [&str; FEATURE_COUNT] = [
    "f01_sentence_length",
    "f02_avg_token_length",
    "f03_extra_long_words",
    "f04_num_characters",
    "f05_lix",
    "f06_a1_lemma_incsc",
    "f07_a2_lemma_incsc",
    "f08_b1_lemma_incsc",
    "f09_b2_lemma_incsc",
    "f10_c1_lemma_incsc",
    "f11_c2_lemma_incsc",
    "f12_difficult_word_incsc",
    "f13_difficult_noun_verb_incsc",
    "f14_out_of_kelly_incsc",
    "f15_missing_lemma_incsc",
    "f16_avg_kelly_log_freq",
    "f17_avg_dep_length",
    "f18_long_arcs_incsc",
    "f19_max_root_depth",
    "f20_right_arc_ratio",
    "f21_left_arc_ratio",
    "f22_modifier_variation",
    "f23_pre_modifier_incsc",
    "f24_post_modifier_incsc",
    "f25_subordinate_incsc",
    "f26_relative_clause_incsc",
    "f27_prep_complement_incsc",
    "f28_senses_per_token",
    "f29_noun_senses_per_noun",
    "f30_modal_to_verbs",
    "f31_particle_incsc",
    "f32_3sg_pronoun_incsc",
    "f33_punctuation_incsc",
    "f34_subjunction_incsc",
    "f35_s_verb_incsc",
    "f36_s_verbs_to_verbs",
    "f37_adjective_incsc",
    "f38_adjective_variation",
    "f39_adverb_incsc",
    "f40_adverb_variation",
    "f41_noun_incsc",
    "f42_noun_variation",
    "f43_verb_incsc",
    "f44_verb_variation",
    "f45_nominal_ratio",
    "f46_nouns_to_verbs",
    "f47_function_word_incsc",
    "f48_lex_to_nonlex",
    "f49_lex_to_tokens",
    "f50_neuter_noun_incsc",
    "f51_conj_subj_incsc",
    "f52_past_participle_to_verbs",
    "f53_present_participle_to_verbs",
    "f54_past_verb_to_verbs",
    "f55_present_verb_to_verbs",
    "f56_supine_to_verbs",
    "f57_relative_structure_incsc",
    "f58_bilog_ttr",
    "f59_root_ttr",
    "f60_pron_to_noun",
    "f61_pron_to_prep",
];

/// 1-based catalog numbers of all IncSc features.
pub const INCSC_FEATURES: [usize; 29] = [
    3, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 18, 23, 24, 25, 26, 27, 31, 32, 33, 34, 35, 37, 39, 41,
    43, 47, 50, 51,
];

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector([f64; FEATURE_COUNT]);

impl FeatureVector {
    pub fn zeros() -> Self {
        FeatureVector([0.0; FEATURE_COUNT])
    }

    pub fn from_slice(values: &[f64]) -> Result<Self> {
        let arr: [f64; FEATURE_COUNT] = values.try_into().map_err(|_| Error::Dimension {
            expected: FEATURE_COUNT,
            actual: values.len(),
        })?;
        Ok(FeatureVector(arr))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// Feature by 1-based catalog number.
    pub fn get(&self, number: usize) -> f64 {
        self.0[number - 1]
    }

    fn set(&mut self, number: usize, value: f64) {
        self.0[number - 1] = value;
    }
}

impl Index<usize> for FeatureVector {
    type Output = f64;

    /// 0-based, like the underlying array.
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Swedish readability index: words per sentence plus the percentage of
/// words longer than six characters.
pub fn lix(word_count: usize, sentence_count: usize, long_word_count: usize) -> f64 {
    if word_count == 0 || sentence_count == 0 {
        return 0.0;
    }
    word_count as f64 / sentence_count as f64 + 100.0 * long_word_count as f64 / word_count as f64
}

pub fn inc_sc(category_count: usize, token_count: usize) -> f64 {
    if token_count == 0 {
        return 0.0;
    }
    1000.0 / token_count as f64 * category_count as f64
}

/// Share of a category among lexical (noun, verb, adjective, adverb) tokens.
pub fn variation(category_count: usize, lexical_count: usize) -> f64 {
    ratio(category_count, lexical_count)
}

/// `(bilogarithmic, square root)` type-token ratios.
pub fn ttr_pair(type_count: usize, token_count: usize) -> (f64, f64) {
    let bilog = if token_count <= 1 {
        1.0
    } else if type_count == 0 {
        0.0
    } else {
        (type_count as f64).ln() / (token_count as f64).ln()
    };
    let root = if token_count == 0 {
        0.0
    } else {
        type_count as f64 / (token_count as f64).sqrt()
    };
    (bilog, root)
}

/// (nouns + prepositions + participles) / (pronouns + adverbs + verbs).
pub fn nominal_ratio(nominal_count: usize, verbal_count: usize) -> f64 {
    ratio(nominal_count, verbal_count)
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn mean_or_zero(sum: f64, n: usize) -> f64 {
    if n == 0 {
        0.0
    } else {
        sum / n as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DependencyStats {
    pub avg_arc_len: f64,
    pub long_arc_count: usize,
    pub root_depth: usize,
    pub right_ratio: f64,
    pub left_ratio: f64,
}

pub const LONG_ARC: usize = 5;

/// Arc length and direction statistics over non-root tokens.
///
/// Every token with head 0 is a root; depth is the longest root-to-token
/// path in arcs.
pub fn dependency_stats(sentence: &Sentence) -> Result<DependencyStats> {
    let n = sentence.tokens.len();
    let not_a_tree = |reason: String| Error::NotATree {
        sentence: sentence.id.clone(),
        reason,
    };
    for (i, t) in sentence.tokens.iter().enumerate() {
        if t.index != i + 1 {
            return Err(not_a_tree(format!("token {} out of sequence", t.index)));
        }
        if t.head > n {
            return Err(not_a_tree(format!("head {} out of range", t.head)));
        }
    }

    // depth[i] for token i+1, computed by walking to a root
    let mut depth: Vec<Option<usize>> = vec![None; n];
    for start in 0..n {
        let mut path = Vec::new();
        let mut cur = start;
        let base = loop {
            if let Some(d) = depth[cur] {
                break d;
            }
            if path.len() > n {
                return Err(not_a_tree("cycle in head chain".into()));
            }
            path.push(cur);
            match sentence.tokens[cur].head {
                0 => {
                    path.pop();
                    depth[cur] = Some(0);
                    break 0;
                }
                h => cur = h - 1,
            }
        };
        for (k, &node) in path.iter().rev().enumerate() {
            depth[node] = Some(base + k + 1);
        }
    }

    let mut arcs = 0usize;
    let mut total_len = 0usize;
    let mut long = 0usize;
    let mut right = 0usize;
    for t in sentence.tokens.iter().filter(|t| t.head != 0) {
        let len = t.index.abs_diff(t.head);
        arcs += 1;
        total_len += len;
        if len > LONG_ARC {
            long += 1;
        }
        if t.index > t.head {
            right += 1;
        }
    }
    Ok(DependencyStats {
        avg_arc_len: ratio(total_len, arcs),
        long_arc_count: long,
        root_depth: depth.iter().map(|d| d.unwrap_or(0)).max().unwrap_or(0),
        right_ratio: ratio(right, arcs),
        left_ratio: ratio(arcs - right, arcs),
    })
}

/// How the level-dependent features #12 and #13 are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelMode {
    /// Compare word levels against the context's reference level.
    UseReference,
    /// Emit 0 for both features.
    ZeroOut,
}

impl FromStr for LevelMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "use-reference" => Ok(LevelMode::UseReference),
            "zero-out" => Ok(LevelMode::ZeroOut),
            other => Err(format!("unknown level mode {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ExtractionContext<'a> {
    pub kelly: &'a KellyList,
    pub senses: &'a SenseLexicon,
    pub map: &'a CategoryMap,
    pub reference_level: CefrLabel,
    pub mode: LevelMode,
}

impl<'a> ExtractionContext<'a> {
    pub fn new(kelly: &'a KellyList, senses: &'a SenseLexicon, map: &'a CategoryMap) -> Self {
        ExtractionContext {
            kelly,
            senses,
            map,
            reference_level: CefrLabel::B1,
            mode: LevelMode::UseReference,
        }
    }

    pub fn with_reference(self, level: CefrLabel) -> Self {
        ExtractionContext {
            reference_level: level,
            ..self
        }
    }

    pub fn with_mode(self, mode: LevelMode) -> Self {
        ExtractionContext { mode, ..self }
    }
}

/// Counts that do not appear in the vector itself.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Diagnostics {
    pub extra_long_words: usize,
    pub kelly_matches: usize,
    pub kelly_fallbacks: usize,
    pub sense_matches: usize,
    pub sense_fallbacks: usize,
}

impl std::ops::AddAssign for Diagnostics {
    fn add_assign(&mut self, o: Self) {
        self.extra_long_words += o.extra_long_words;
        self.kelly_matches += o.kelly_matches;
        self.kelly_fallbacks += o.kelly_fallbacks;
        self.sense_matches += o.sense_matches;
        self.sense_fallbacks += o.sense_fallbacks;
    }
}

pub const LONG_WORD: usize = 6;
pub const EXTRA_LONG_WORD: usize = 13;

pub fn extract_sentence_features(
    sentence: &Sentence,
    ctx: &ExtractionContext<'_>,
) -> Result<FeatureVector> {
    extract_with_diagnostics(sentence, ctx).map(|(v, _)| v)
}

#[derive(Default)]
struct Counts {
    chars: usize,
    long: usize,
    extra_long: usize,
    kelly_level: [usize; 6],
    difficult: usize,
    difficult_nv: usize,
    out_of_kelly: usize,
    missing_lemma: usize,
    kelly_matched: usize,
    log_freq_sum: f64,
    pre_mod: usize,
    post_mod: usize,
    subordinate: usize,
    relative_clause: usize,
    prep_comp: usize,
    senses_found: usize,
    senses_sum: u64,
    noun_senses_found: usize,
    noun_senses_sum: u64,
    noun: usize,
    verb: usize,
    adjective: usize,
    adverb: usize,
    pronoun: usize,
    preposition: usize,
    particle: usize,
    punctuation: usize,
    subjunction: usize,
    conjunction: usize,
    relative: usize,
    participle: usize,
    function_word: usize,
    modal: usize,
    third_sg: usize,
    s_verb: usize,
    neuter_noun: usize,
    past_participle: usize,
    present_participle: usize,
    preterite: usize,
    present: usize,
    supine: usize,
}

pub fn extract_with_diagnostics(
    sentence: &Sentence,
    ctx: &ExtractionContext<'_>,
) -> Result<(FeatureVector, Diagnostics)> {
    let map = ctx.map;
    let n = sentence.tokens.len();
    let mut c = Counts::default();
    let mut diag = Diagnostics::default();
    let mut types: HashSet<String> = HashSet::new();

    for t in &sentence.tokens {
        let len = t.char_len();
        c.chars += len;
        if len > LONG_WORD {
            c.long += 1;
        }
        if len > EXTRA_LONG_WORD {
            c.extra_long += 1;
        }
        types.insert(t.form.to_lowercase());

        let is = |cat| map.pos_is(cat, &t.pos);
        let is_noun = is(PosCategory::Noun);
        let is_verb = is(PosCategory::Verb);
        let is_participle = is(PosCategory::Participle);

        if t.lemma.is_empty() {
            c.missing_lemma += 1;
        } else {
            match ctx.kelly.lookup(&t.lemma, &t.pos) {
                Some(m) => {
                    let entry = m.value;
                    diag.kelly_matches += 1;
                    if m.fallback {
                        diag.kelly_fallbacks += 1;
                    }
                    c.kelly_matched += 1;
                    c.log_freq_sum += entry.log_freq;
                    c.kelly_level[usize::from(entry.level.ordinal() - 1)] += 1;
                    if entry.level > ctx.reference_level {
                        c.difficult += 1;
                        if is_noun || is_verb {
                            c.difficult_nv += 1;
                        }
                    }
                }
                None => c.out_of_kelly += 1,
            }
            if let Some(m) = ctx.senses.lookup(&t.lemma, &t.pos) {
                diag.sense_matches += 1;
                if m.fallback {
                    diag.sense_fallbacks += 1;
                }
                c.senses_found += 1;
                c.senses_sum += u64::from(*m.value);
                if is_noun {
                    c.noun_senses_found += 1;
                    c.noun_senses_sum += u64::from(*m.value);
                }
            }
        }

        let deprel = |cat| map.deprel_is(cat, &t.deprel);
        c.pre_mod += usize::from(deprel(DeprelCategory::PreModifier));
        c.post_mod += usize::from(deprel(DeprelCategory::PostModifier));
        c.subordinate += usize::from(deprel(DeprelCategory::SubordinateClause));
        c.relative_clause += usize::from(deprel(DeprelCategory::RelativeClause));
        c.prep_comp += usize::from(deprel(DeprelCategory::PrepositionalComplement));

        c.noun += usize::from(is_noun);
        c.verb += usize::from(is_verb);
        c.adjective += usize::from(is(PosCategory::Adjective));
        c.adverb += usize::from(is(PosCategory::Adverb));
        c.pronoun += usize::from(is(PosCategory::Pronoun));
        c.preposition += usize::from(is(PosCategory::Preposition));
        c.particle += usize::from(is(PosCategory::Particle));
        c.punctuation += usize::from(is(PosCategory::Punctuation));
        c.subjunction += usize::from(is(PosCategory::Subjunction));
        c.conjunction += usize::from(is(PosCategory::Conjunction));
        c.relative += usize::from(is(PosCategory::Relative));
        c.participle += usize::from(is_participle);
        c.function_word += usize::from(is(PosCategory::FunctionWord));

        let lexeme = if t.lemma.is_empty() {
            t.form.to_lowercase()
        } else {
            t.lemma.to_lowercase()
        };
        if is_verb && map.lexeme_in(LexemeList::ModalVerb, &lexeme) {
            c.modal += 1;
        }
        if is(PosCategory::Pronoun) && map.lexeme_in(LexemeList::ThirdPersonSingular, &lexeme) {
            c.third_sg += 1;
        }
        let msd = |m| map.msd_has(m, &t.msd);
        if is_verb {
            if t.form.to_lowercase().ends_with('s') || msd(MsdMarker::Passive) {
                c.s_verb += 1;
            }
            c.preterite += usize::from(msd(MsdMarker::Preterite));
            c.present += usize::from(msd(MsdMarker::Present));
            c.supine += usize::from(msd(MsdMarker::Supine));
        }
        if is_participle {
            c.past_participle += usize::from(msd(MsdMarker::PastParticiple));
            c.present_participle += usize::from(msd(MsdMarker::PresentParticiple));
        }
        if is_noun && msd(MsdMarker::Neuter) {
            c.neuter_noun += 1;
        }
    }
    diag.extra_long_words = c.extra_long;

    let deps = dependency_stats(sentence)?;
    let lexical = c.noun + c.verb + c.adjective + c.adverb;
    let level_dependent = ctx.mode == LevelMode::UseReference;
    let (bilog, root) = ttr_pair(types.len(), n);

    let mut v = FeatureVector::zeros();
    let values: [(usize, f64); FEATURE_COUNT] = [
        (1, n as f64),
        (2, ratio(c.chars, n)),
        (3, inc_sc(c.extra_long, n)),
        (4, c.chars as f64),
        (5, lix(n, 1, c.long)),
        (6, inc_sc(c.kelly_level[0], n)),
        (7, inc_sc(c.kelly_level[1], n)),
        (8, inc_sc(c.kelly_level[2], n)),
        (9, inc_sc(c.kelly_level[3], n)),
        (10, inc_sc(c.kelly_level[4], n)),
        (11, inc_sc(c.kelly_level[5], n)),
        (12, if level_dependent { inc_sc(c.difficult, n) } else { 0.0 }),
        (13, if level_dependent { inc_sc(c.difficult_nv, n) } else { 0.0 }),
        (14, inc_sc(c.out_of_kelly, n)),
        (15, inc_sc(c.missing_lemma, n)),
        (16, mean_or_zero(c.log_freq_sum, c.kelly_matched)),
        (17, deps.avg_arc_len),
        (18, inc_sc(deps.long_arc_count, n)),
        (19, deps.root_depth as f64),
        (20, deps.right_ratio),
        (21, deps.left_ratio),
        (22, variation(c.pre_mod + c.post_mod, lexical)),
        (23, inc_sc(c.pre_mod, n)),
        (24, inc_sc(c.post_mod, n)),
        (25, inc_sc(c.subordinate, n)),
        (26, inc_sc(c.relative_clause, n)),
        (27, inc_sc(c.prep_comp, n)),
        (28, mean_or_zero(c.senses_sum as f64, c.senses_found)),
        (29, mean_or_zero(c.noun_senses_sum as f64, c.noun_senses_found)),
        (30, ratio(c.modal, c.verb)),
        (31, inc_sc(c.particle, n)),
        (32, inc_sc(c.third_sg, n)),
        (33, inc_sc(c.punctuation, n)),
        (34, inc_sc(c.subjunction, n)),
        (35, inc_sc(c.s_verb, n)),
        (36, ratio(c.s_verb, c.verb)),
        (37, inc_sc(c.adjective, n)),
        (38, variation(c.adjective, lexical)),
        (39, inc_sc(c.adverb, n)),
        (40, variation(c.adverb, lexical)),
        (41, inc_sc(c.noun, n)),
        (42, variation(c.noun, lexical)),
        (43, inc_sc(c.verb, n)),
        (44, variation(c.verb, lexical)),
        (
            45,
            nominal_ratio(
                c.noun + c.preposition + c.participle,
                c.pronoun + c.adverb + c.verb,
            ),
        ),
        (46, ratio(c.noun, c.verb)),
        (47, inc_sc(c.function_word, n)),
        (48, ratio(lexical, n - lexical)),
        (49, ratio(lexical, n)),
        (50, inc_sc(c.neuter_noun, n)),
        (51, inc_sc(c.conjunction + c.subjunction, n)),
        (52, ratio(c.past_participle, c.verb)),
        (53, ratio(c.present_participle, c.verb)),
        (54, ratio(c.preterite, c.verb)),
        (55, ratio(c.present, c.verb)),
        (56, ratio(c.supine, c.verb)),
        (57, inc_sc(c.relative, n)),
        (58, bilog),
        (59, root),
        (60, ratio(c.pronoun, c.noun)),
        (61, ratio(c.pronoun, c.preposition)),
    ];
    for (number, value) in values {
        v.set(number, value);
    }
    Ok((v, diag))
}

/// Componentwise mean of sentence vectors.
pub fn aggregate_document(vectors: &[FeatureVector]) -> Result<FeatureVector> {
    if vectors.is_empty() {
        return Err(Error::invalid("cannot aggregate zero feature vectors"));
    }
    let mut sum = [0.0; FEATURE_COUNT];
    for v in vectors {
        for (s, x) in sum.iter_mut().zip(v.as_slice()) {
            *s += x;
        }
    }
    let k = vectors.len() as f64;
    Ok(FeatureVector(sum.map(|s| s / k)))
}

/// Document vector: sentence features averaged over the document.
pub fn extract_document_features(
    doc: &Document,
    ctx: &ExtractionContext<'_>,
) -> Result<FeatureVector> {
    let vectors = doc
        .sentences
        .iter()
        .map(|s| extract_sentence_features(s, ctx))
        .collect::<Result<Vec<_>>>()?;
    aggregate_document(&vectors).map_err(|_| {
        Error::invalid(format!("document {:?} has no sentences", doc.id))
    })
}

/// LIX over a whole text, as opposed to the per-sentence value (#5) that
/// document vectors average.
pub fn lix_whole_text(sentences: &[Sentence]) -> f64 {
    let words: usize = sentences.iter().map(|s| s.tokens.len()).sum();
    let long = sentences
        .iter()
        .flat_map(|s| &s.tokens)
        .filter(|t| t.char_len() > LONG_WORD)
        .count();
    lix(words, sentences.len(), long)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FeatureGroup {
    All,
    Len,
    Lex,
    Synt,
    Sem,
    Morph,
    /// LIX alone (#5), used as a baseline.
    Lix,
}

impl FeatureGroup {
    /// 1-based inclusive catalog range.
    pub fn range(self) -> (usize, usize) {
        match self {
            FeatureGroup::All => (1, 61),
            FeatureGroup::Len => (1, 5),
            FeatureGroup::Lex => (6, 16),
            FeatureGroup::Synt => (17, 27),
            FeatureGroup::Sem => (28, 29),
            FeatureGroup::Morph => (30, 61),
            FeatureGroup::Lix => (5, 5),
        }
    }

    pub fn len(self) -> usize {
        let (a, b) = self.range();
        b - a + 1
    }

    pub fn names(self) -> Vec<String> {
        let (a, b) = self.range();
        FEATURE_NAMES[a - 1..b].iter().map(|s| s.to_string()).collect()
    }
}

impl fmt::Display for FeatureGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FeatureGroup::All => "All",
            FeatureGroup::Len => "Len",
            FeatureGroup::Lex => "Lex",
            FeatureGroup::Synt => "Synt",
            FeatureGroup::Sem => "Sem",
            FeatureGroup::Morph => "Morph",
            FeatureGroup::Lix => "Lix",
        };
        f.write_str(s)
    }
}

impl FromStr for FeatureGroup {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "All" => FeatureGroup::All,
            "Len" => FeatureGroup::Len,
            "Lex" => FeatureGroup::Lex,
            "Synt" => FeatureGroup::Synt,
            "Sem" => FeatureGroup::Sem,
            "Morph" => FeatureGroup::Morph,
            "Lix" => FeatureGroup::Lix,
            other => return Err(format!("unknown feature group {other:?}")),
        })
    }
}

pub fn select_feature_group(v: &FeatureVector, group: FeatureGroup) -> Vec<f64> {
    let (a, b) = group.range();
    v.as_slice()[a - 1..b].to_vec()
}

/// Pick features by column name; used to feed a model its own inputs.
pub fn select_by_names(v: &FeatureVector, names: &[String]) -> Result<Vec<f64>> {
    names
        .iter()
        .map(|name| {
            FEATURE_NAMES
                .iter()
                .position(|n| n == name)
                .map(|i| v[i])
                .ok_or_else(|| Error::invalid(format!("unknown feature name {name:?}")))
        })
        .collect()
}
