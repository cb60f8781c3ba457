//! Dependency-annotated corpora with CEFR labels.
//!
//! The on-disk format is a CoNLL-like, tab-separated layout with eight
//! columns per token line:
//!
//! ```text
//! INDEX  FORM  LEMMA  POS  MSD  HEAD  DEPREL  MISC
//! ```
//!
//! `MSD` holds `|`-joined morphological features (`_` when empty) and an
//! empty lemma is written as `_`. Blank lines end sentences. Comment lines
//! of the form `# key = value` carry metadata:
//!
//! * `doc_id` opens a new document (a text) that spans the following
//!   sentence blocks until the next `doc_id` or `unit = sentence`.
//! * `unit` is `text` or `sentence`; `sentence` switches to standalone
//!   sentences, each carrying its own level.
//! * `level` is one of `A1`, `A2`, `B1`, `B2`, `C1`.
//! * `sent_id` names the next sentence block.
//!
//! Other comment keys are ignored.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::level::CefrLabel;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedToken {
    /// 1-based position in the sentence.
    pub index: usize,
    pub form: String,
    /// Empty when the lemmatizer produced nothing.
    pub lemma: String,
    pub pos: String,
    pub msd: Vec<String>,
    /// Head position, 0 for the root.
    pub head: usize,
    pub deprel: String,
}

impl AnnotatedToken {
    pub fn has_msd(&self, marker: &str) -> bool {
        self.msd.iter().any(|m| m == marker)
    }

    /// Form length in characters, not bytes.
    pub fn char_len(&self) -> usize {
        self.form.chars().count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub id: String,
    pub tokens: Vec<AnnotatedToken>,
}

impl Sentence {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// The heads of all tokens in order.
    pub fn heads(&self) -> Vec<usize> {
        self.tokens.iter().map(|t| t.head).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub level: CefrLabel,
    pub sentences: Vec<Sentence>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledSentence {
    pub sentence: Sentence,
    pub level: CefrLabel,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    pub documents: Vec<Document>,
    pub standalone_sentences: Vec<LabeledSentence>,
}

impl Corpus {
    pub fn is_empty(&self) -> bool {
        self.documents.is_empty() && self.standalone_sentences.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Unit {
    Text,
    Sentence,
}

struct OpenDocument {
    id: String,
    level: Option<CefrLabel>,
    opened_at: usize,
    sentences: Vec<Sentence>,
}

#[derive(Default)]
struct Parser {
    corpus: Corpus,
    open: Option<OpenDocument>,
    unit: Option<Unit>,
    pending_level: Option<CefrLabel>,
    sentence_level: Option<CefrLabel>,
    pending_sent_id: Option<(usize, String)>,
    tokens: Vec<(usize, AnnotatedToken)>,
}

impl Parser {
    fn close_document(&mut self) -> Result<()> {
        if let Some(doc) = self.open.take() {
            let level = doc.level.ok_or_else(|| {
                Error::parse(doc.opened_at, format!("document {:?} has no level", doc.id))
            })?;
            self.corpus.documents.push(Document {
                id: doc.id,
                level,
                sentences: doc.sentences,
            });
        }
        Ok(())
    }

    fn comment(&mut self, line_no: usize, body: &str) -> Result<()> {
        let Some((key, value)) = body.split_once('=') else {
            return Ok(());
        };
        let key = key.trim();
        let value = value.trim();
        if !self.tokens.is_empty() {
            return Err(Error::parse(
                line_no,
                "comment inside a sentence block (missing blank line?)",
            ));
        }
        match key {
            "doc_id" => {
                self.close_document()?;
                self.open = Some(OpenDocument {
                    id: value.to_string(),
                    level: self.pending_level.take(),
                    opened_at: line_no,
                    sentences: Vec::new(),
                });
                self.unit = Some(Unit::Text);
            }
            "unit" => match value {
                "text" => self.unit = Some(Unit::Text),
                "sentence" => {
                    self.close_document()?;
                    self.unit = Some(Unit::Sentence);
                }
                other => {
                    return Err(Error::parse(
                        line_no,
                        format!("unsupported unit {other:?} (expected text or sentence)"),
                    ))
                }
            },
            "level" => {
                let level = CefrLabel::parse_class(value).ok_or_else(|| {
                    Error::parse(line_no, format!("unknown level {value:?}"))
                })?;
                match (self.unit, self.open.as_mut()) {
                    (Some(Unit::Sentence), _) => self.sentence_level = Some(level),
                    (_, Some(doc)) => match doc.level {
                        None => doc.level = Some(level),
                        Some(existing) if existing == level => {}
                        Some(existing) => {
                            return Err(Error::parse(
                                line_no,
                                format!(
                                    "level {level} conflicts with level {existing} of document {:?}",
                                    doc.id
                                ),
                            ))
                        }
                    },
                    (_, None) => self.pending_level = Some(level),
                }
            }
            "sent_id" => self.pending_sent_id = Some((line_no, value.to_string())),
            _ => {}
        }
        Ok(())
    }

    fn token(&mut self, line_no: usize, line: &str) -> Result<()> {
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 8 {
            return Err(Error::parse(
                line_no,
                format!("expected 8 tab-separated columns, found {}", cols.len()),
            ));
        }
        let index: usize = cols[0]
            .parse()
            .map_err(|_| Error::parse(line_no, format!("non-integer index {:?}", cols[0])))?;
        if index == 0 {
            return Err(Error::parse(line_no, "token index must be at least 1"));
        }
        let head: usize = cols[5]
            .parse()
            .map_err(|_| Error::parse(line_no, format!("non-integer head {:?}", cols[5])))?;
        if head == index {
            return Err(Error::parse(line_no, format!("token {index} is its own head")));
        }
        let lemma = match cols[2] {
            "_" => String::new(),
            l => l.to_string(),
        };
        let msd = match cols[4] {
            "_" | "" => Vec::new(),
            m => m.split('|').map(str::to_string).collect(),
        };
        self.tokens.push((
            line_no,
            AnnotatedToken {
                index,
                form: cols[1].to_string(),
                lemma,
                pos: cols[3].to_string(),
                msd,
                head,
                deprel: cols[6].to_string(),
            },
        ));
        Ok(())
    }

    fn end_block(&mut self) -> Result<()> {
        if self.tokens.is_empty() {
            if let Some((at, id)) = self.pending_sent_id.take() {
                return Err(Error::parse(at, format!("sentence {id:?} has zero tokens")));
            }
            return Ok(());
        }
        let tokens = std::mem::take(&mut self.tokens);
        let n = tokens.len();
        for (at, tok) in &tokens {
            if tok.head > n {
                return Err(Error::parse(
                    *at,
                    format!("head {} out of range for a {n}-token sentence", tok.head),
                ));
            }
        }
        let first_line = tokens[0].0;
        let tokens: Vec<AnnotatedToken> = tokens.into_iter().map(|(_, t)| t).collect();
        let explicit_id = self.pending_sent_id.take().map(|(_, id)| id);

        match self.unit {
            Some(Unit::Sentence) => {
                let level = self.sentence_level.ok_or_else(|| {
                    Error::parse(first_line, "standalone sentence without a level")
                })?;
                let id = explicit_id.unwrap_or_else(|| {
                    format!("s{}", self.corpus.standalone_sentences.len() + 1)
                });
                self.corpus.standalone_sentences.push(LabeledSentence {
                    sentence: Sentence { id, tokens },
                    level,
                });
            }
            _ => {
                let doc = self.open.as_mut().ok_or_else(|| {
                    Error::parse(
                        first_line,
                        "sentence outside any document (add doc_id or unit = sentence)",
                    )
                })?;
                let id = explicit_id
                    .unwrap_or_else(|| format!("{}.{}", doc.id, doc.sentences.len() + 1));
                doc.sentences.push(Sentence { id, tokens });
            }
        }
        Ok(())
    }
}

/// Parse a corpus file. The first malformed line aborts parsing.
pub fn parse_corpus(input: &str) -> Result<Corpus> {
    let mut parser = Parser::default();
    for (i, raw) in input.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() {
            parser.end_block()?;
        } else if let Some(body) = line.strip_prefix('#') {
            parser.comment(line_no, body)?;
        } else {
            parser.token(line_no, line)?;
        }
    }
    parser.end_block()?;
    parser.close_document()?;
    Ok(parser.corpus)
}

fn write_sentence(out: &mut String, sentence: &Sentence) {
    let _ = writeln!(out, "# sent_id = {}", sentence.id);
    for t in &sentence.tokens {
        let lemma = if t.lemma.is_empty() { "_" } else { &t.lemma };
        let msd = if t.msd.is_empty() {
            "_".to_string()
        } else {
            t.msd.join("|")
        };
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t_",
            t.index, t.form, lemma, t.pos, msd, t.head, t.deprel
        );
    }
    out.push('\n');
}

/// Serialize a corpus into the file format read by [`parse_corpus`].
pub fn write_corpus(corpus: &Corpus) -> String {
    let mut out = String::new();
    for doc in &corpus.documents {
        let _ = writeln!(out, "# doc_id = {}", doc.id);
        let _ = writeln!(out, "# unit = text");
        let _ = writeln!(out, "# level = {}", doc.level);
        for s in &doc.sentences {
            write_sentence(&mut out, s);
        }
    }
    if !corpus.standalone_sentences.is_empty() {
        let _ = writeln!(out, "# unit = sentence");
    }
    for ls in &corpus.standalone_sentences {
        let _ = writeln!(out, "# level = {}", ls.level);
        write_sentence(&mut out, &ls.sentence);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IssueKind {
    EmptyDocument,
    MissingRoot,
    MultipleRoots,
    DuplicateIndex,
    NonContiguousIndices,
    HeadOutOfRange,
    Cycle,
    EmptySentence,
    UnclassifiableLevel,
}

impl IssueKind {
    pub fn label(&self) -> &'static str {
        match self {
            IssueKind::EmptyDocument => "empty document",
            IssueKind::MissingRoot => "missing root",
            IssueKind::MultipleRoots => "multiple roots",
            IssueKind::DuplicateIndex => "duplicate index",
            IssueKind::NonContiguousIndices => "non-contiguous indices",
            IssueKind::HeadOutOfRange => "head out of range",
            IssueKind::Cycle => "cycle in head chain",
            IssueKind::EmptySentence => "empty sentence",
            IssueKind::UnclassifiableLevel => "level outside A1..C1",
        }
    }

    /// Multiple roots are tolerated by the feature code.
    pub fn is_warning(&self) -> bool {
        matches!(self, IssueKind::MultipleRoots)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Issue {
    pub kind: IssueKind,
    /// Document or sentence id the issue refers to.
    pub unit: String,
    pub detail: String,
}

impl std::fmt::Display for Issue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}\t{}", self.unit, self.kind.label())?;
        if !self.detail.is_empty() {
            write!(f, "\t{}", self.detail)?;
        }
        Ok(())
    }
}

fn check_sentence(sentence: &Sentence, issues: &mut Vec<Issue>) {
    let issue = |kind, detail: String| Issue {
        kind,
        unit: sentence.id.clone(),
        detail,
    };
    if sentence.tokens.is_empty() {
        issues.push(issue(IssueKind::EmptySentence, String::new()));
        return;
    }
    let n = sentence.tokens.len();
    let mut seen = HashSet::new();
    for t in &sentence.tokens {
        if !seen.insert(t.index) {
            issues.push(issue(IssueKind::DuplicateIndex, format!("index {}", t.index)));
        }
    }
    let contiguous = sentence
        .tokens
        .iter()
        .enumerate()
        .all(|(i, t)| t.index == i + 1);
    if !contiguous && seen.len() == n {
        issues.push(issue(IssueKind::NonContiguousIndices, String::new()));
    }
    let roots = sentence.tokens.iter().filter(|t| t.head == 0).count();
    match roots {
        0 => issues.push(issue(IssueKind::MissingRoot, String::new())),
        1 => {}
        k => issues.push(issue(IssueKind::MultipleRoots, format!("{k} roots"))),
    }
    let mut out_of_range = false;
    for t in &sentence.tokens {
        if t.head > n {
            out_of_range = true;
            issues.push(issue(
                IssueKind::HeadOutOfRange,
                format!("token {} head {}", t.index, t.head),
            ));
        }
    }
    if roots > 0 && !out_of_range && contiguous && has_cycle(&sentence.heads()) {
        issues.push(issue(IssueKind::Cycle, String::new()));
    }
}

/// True when following heads from some token never reaches a root.
pub(crate) fn has_cycle(heads: &[usize]) -> bool {
    let n = heads.len();
    // 0 = unvisited, 1 = on current path, 2 = reaches a root
    let mut state = vec![0u8; n + 1];
    for start in 1..=n {
        let mut path = Vec::new();
        let mut cur = start;
        loop {
            if cur == 0 || state[cur] == 2 {
                break;
            }
            if state[cur] == 1 {
                return true;
            }
            state[cur] = 1;
            path.push(cur);
            cur = heads[cur - 1];
            if cur > n {
                return true;
            }
        }
        for p in path {
            state[p] = 2;
        }
    }
    false
}

/// Structural checks that parsing does not enforce. An empty list means the
/// corpus is valid; multiple roots are reported but are only a warning.
pub fn validate_corpus(corpus: &Corpus) -> Vec<Issue> {
    let mut issues = Vec::new();
    for doc in &corpus.documents {
        if doc.sentences.is_empty() {
            issues.push(Issue {
                kind: IssueKind::EmptyDocument,
                unit: doc.id.clone(),
                detail: String::new(),
            });
        }
        if !doc.level.is_class() {
            issues.push(Issue {
                kind: IssueKind::UnclassifiableLevel,
                unit: doc.id.clone(),
                detail: doc.level.to_string(),
            });
        }
        for s in &doc.sentences {
            check_sentence(s, &mut issues);
        }
    }
    for ls in &corpus.standalone_sentences {
        if !ls.level.is_class() {
            issues.push(Issue {
                kind: IssueKind::UnclassifiableLevel,
                unit: ls.sentence.id.clone(),
                detail: ls.level.to_string(),
            });
        }
        check_sentence(&ls.sentence, &mut issues);
    }
    issues
}

#[derive(Debug, Clone, PartialEq)]
pub struct StatsRow {
    /// `None` for the totals row.
    pub level: Option<CefrLabel>,
    pub texts: usize,
    pub mean_sentences: f64,
    pub sentences: usize,
}

/// Per-level item counts: one row per level A1..C1, then a totals row.
///
/// The totals row's mean is taken over all documents.
pub fn corpus_stats(corpus: &Corpus) -> Vec<StatsRow> {
    let row = |level: Option<CefrLabel>| {
        let docs: Vec<&Document> = corpus
            .documents
            .iter()
            .filter(|d| level.is_none_or(|l| d.level == l))
            .collect();
        let total_sents: usize = docs.iter().map(|d| d.sentences.len()).sum();
        let mean_sentences = if docs.is_empty() {
            0.0
        } else {
            total_sents as f64 / docs.len() as f64
        };
        StatsRow {
            level,
            texts: docs.len(),
            mean_sentences,
            sentences: corpus
                .standalone_sentences
                .iter()
                .filter(|s| level.is_none_or(|l| s.level == l))
                .count(),
        }
    };
    CefrLabel::CLASSES
        .iter()
        .map(|&l| row(Some(l)))
        .chain(std::iter::once(row(None)))
        .collect()
}

pub fn stats_tsv(rows: &[StatsRow]) -> String {
    let mut out = String::from("level\ttexts\tmean_sentences\tsentences\n");
    for r in rows {
        let name = r.level.map_or("Total", |l| l.as_str());
        let _ = writeln!(
            out,
            "{name}\t{}\t{:.1}\t{}",
            r.texts, r.mean_sentences, r.sentences
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIXTURE: &str = "# doc_id = d1\n# unit = text\n# level = B1\n# sent_id = d1.s1\n\
1\tJag\tjag\tPN\tUTR|SIN|DEF|SUB\t2\tSS\t_\n\
2\tser\tse\tVB\tPRS|AKT\t0\tROOT\t_\n\
3\thunden\thund\tNN\tUTR|SIN|DEF|NOM\t2\tOO\t_\n\
\n\
# sent_id = d1.s2\n\
1\tDen\tden\tPN\t_\t2\tSS\t_\n\
2\tsover\t_\tVB\tPRS|AKT\t0\tROOT\t_\n\
3\t.\t.\tMAD\t_\t2\tIP\t_\n";

    fn tok(index: usize, head: usize) -> AnnotatedToken {
        AnnotatedToken {
            index,
            form: format!("w{index}"),
            lemma: format!("w{index}"),
            pos: "NN".into(),
            msd: vec![],
            head,
            deprel: "X".into(),
        }
    }

    #[test]
    fn empty_input_is_empty_corpus() {
        let c = parse_corpus("").unwrap();
        assert!(c.documents.is_empty());
        assert!(c.standalone_sentences.is_empty());
    }

    #[test]
    fn two_sentence_fixture_maps_columns() {
        let c = parse_corpus(FIXTURE).unwrap();
        assert_eq!(c.documents.len(), 1);
        assert!(c.standalone_sentences.is_empty());
        let d = &c.documents[0];
        assert_eq!(d.id, "d1");
        assert_eq!(d.level, CefrLabel::B1);
        assert_eq!(d.sentences.len(), 2);
        let t = &d.sentences[0].tokens[2];
        assert_eq!(t.index, 3);
        assert_eq!(t.form, "hunden");
        assert_eq!(t.lemma, "hund");
        assert_eq!(t.pos, "NN");
        assert_eq!(t.msd, vec!["UTR", "SIN", "DEF", "NOM"]);
        assert_eq!(t.head, 2);
        assert_eq!(t.deprel, "OO");
        let s2 = &d.sentences[1];
        assert_eq!(s2.id, "d1.s2");
        assert_eq!(s2.tokens[1].lemma, "");
        assert!(s2.tokens[0].msd.is_empty());
        assert!(validate_corpus(&c).is_empty());
    }

    #[test]
    fn head_out_of_range_names_line() {
        let input = "# doc_id = d\n# level = A1\n1\ta\ta\tNN\t_\t0\tROOT\t_\n2\tb\tb\tNN\t_\t1\tX\t_\n\
3\tc\tc\tNN\t_\t1\tX\t_\n4\td\td\tNN\t_\t9\tX\t_\n";
        match parse_corpus(input) {
            Err(Error::Parse { line, message }) => {
                assert_eq!(line, 6);
                assert!(message.contains("head 9"), "{message}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn format_errors_carry_line_numbers() {
        let cases = [
            ("# doc_id = d\n# level = A1\n1\ta\ta\tNN\t_\t0\tROOT\n", 3),
            ("# doc_id = d\n# level = A1\n1\ta\ta\tNN\t_\tx\tROOT\t_\n", 3),
            ("# doc_id = d\n# level = X9\n", 2),
            ("# doc_id = d\n# level = A1\n# sent_id = e\n\n", 3),
            ("# unit = exercise\n", 1),
            ("# doc_id = d\n# level = C2\n", 2),
            ("# doc_id = d\n1\ta\ta\tNN\t_\t0\tROOT\t_\n", 1),
            ("1\ta\ta\tNN\t_\t0\tROOT\t_\n", 1),
            ("# unit = sentence\n1\ta\ta\tNN\t_\t0\tROOT\t_\n", 2),
            ("# doc_id = d\n# level = A1\n1\ta\ta\tNN\t_\t1\tROOT\t_\n", 3),
        ];
        for (input, expected) in cases {
            match parse_corpus(input) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, expected, "{input:?}"),
                other => panic!("{input:?}: expected parse error, got {other:?}"),
            }
        }
    }

    #[test]
    fn standalone_sentences_carry_levels() {
        let input = "# unit = sentence\n# level = A2\n# sent_id = x\n1\ta\ta\tNN\t_\t0\tROOT\t_\n\n\
# level = C1\n1\tb\tb\tNN\t_\t0\tROOT\t_\n\n# doc_id = d\n# level = B2\n1\tc\tc\tNN\t_\t0\tROOT\t_\n";
        let c = parse_corpus(input).unwrap();
        assert_eq!(c.standalone_sentences.len(), 2);
        assert_eq!(c.standalone_sentences[0].level, CefrLabel::A2);
        assert_eq!(c.standalone_sentences[0].sentence.id, "x");
        assert_eq!(c.standalone_sentences[1].level, CefrLabel::C1);
        assert_eq!(c.documents.len(), 1);
        assert_eq!(c.documents[0].level, CefrLabel::B2);
    }

    #[test]
    fn empty_document_survives_parse_and_is_flagged() {
        let input = "# doc_id = empty\n# level = A1\n# doc_id = full\n# level = A2\n\
1\ta\ta\tNN\t_\t0\tROOT\t_\n";
        let c = parse_corpus(input).unwrap();
        assert_eq!(c.documents.len(), 2);
        let issues = validate_corpus(&c);
        assert_eq!(issues.len(), 1);
        assert_eq!(issues[0].kind, IssueKind::EmptyDocument);
        assert_eq!(issues[0].unit, "empty");
    }

    #[test]
    fn missing_root_is_reported_with_sentence_id() {
        let c = Corpus {
            documents: vec![Document {
                id: "d".into(),
                level: CefrLabel::A1,
                sentences: vec![Sentence {
                    id: "rootless".into(),
                    tokens: vec![tok(1, 2), tok(2, 1)],
                }],
            }],
            standalone_sentences: vec![],
        };
        let issues = validate_corpus(&c);
        assert_eq!(issues.len(), 1);
        assert_eq!(issues[0].kind, IssueKind::MissingRoot);
        assert_eq!(issues[0].unit, "rootless");
    }

    #[test]
    fn cycles_and_duplicates_are_issues() {
        let s = Sentence {
            id: "cyc".into(),
            tokens: vec![tok(1, 0), tok(2, 3), tok(3, 2)],
        };
        let mut issues = Vec::new();
        check_sentence(&s, &mut issues);
        assert_eq!(issues.len(), 1);
        assert_eq!(issues[0].kind, IssueKind::Cycle);

        let s = Sentence {
            id: "dup".into(),
            tokens: vec![tok(1, 0), tok(1, 1)],
        };
        let mut issues = Vec::new();
        check_sentence(&s, &mut issues);
        assert!(issues.iter().any(|i| i.kind == IssueKind::DuplicateIndex));
    }

    #[test]
    fn multiple_roots_only_warn() {
        let s = Sentence {
            id: "two".into(),
            tokens: vec![tok(1, 0), tok(2, 0)],
        };
        let mut issues = Vec::new();
        check_sentence(&s, &mut issues);
        assert_eq!(issues.len(), 1);
        assert!(issues[0].kind.is_warning());
    }

    fn doc(level: CefrLabel, n_sents: usize) -> Document {
        Document {
            id: "d".into(),
            level,
            sentences: (0..n_sents)
                .map(|i| Sentence {
                    id: format!("s{i}"),
                    tokens: vec![tok(1, 0)],
                })
                .collect(),
        }
    }

    #[test]
    fn stats_empty_corpus_is_all_zero() {
        let rows = corpus_stats(&Corpus::default());
        assert_eq!(rows.len(), 6);
        for r in rows {
            assert_eq!((r.texts, r.mean_sentences, r.sentences), (0, 0.0, 0));
        }
    }

    #[test]
    fn stats_two_b1_docs() {
        let c = Corpus {
            documents: vec![doc(CefrLabel::B1, 3), doc(CefrLabel::B1, 5)],
            standalone_sentences: vec![],
        };
        let rows = corpus_stats(&c);
        let b1 = &rows[2];
        assert_eq!(b1.level, Some(CefrLabel::B1));
        assert_eq!((b1.texts, b1.mean_sentences, b1.sentences), (2, 4.0, 0));
    }

    #[test]
    fn stats_a1_row_matches_table_shape() {
        // 49 A1 texts, alternating 13 and 15 sentences plus one extra: mean 14.0
        let mut docs: Vec<Document> = (0..49)
            .map(|i| doc(CefrLabel::A1, if i % 2 == 0 { 13 } else { 15 }))
            .collect();
        let first = docs[0].sentences[0].clone();
        docs[0].sentences.push(first);
        let c = Corpus {
            documents: docs,
            standalone_sentences: vec![],
        };
        let rows = corpus_stats(&c);
        assert_eq!(rows[0].texts, 49);
        assert!((rows[0].mean_sentences - 14.0).abs() < 1e-12);
        assert_eq!(rows[5].texts, 49);
    }
}
