use cefrlab::corpus::{parse_corpus, validate_corpus, write_corpus};
use cefrlab::datagen::{generate_corpus, GenConfig};
use cefrlab::lexicon::{load_category_map, load_kelly, load_senses};
use cefrlab::CefrLabel;
use proptest::prelude::*;

fn small(seed: u64) -> GenConfig {
    GenConfig {
        seed,
        docs_per_level: 4,
        sentences_per_level: 5,
        lexicon_size: 120,
        ..GenConfig::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn reruns_are_byte_identical(seed in any::<u64>()) {
        let a = generate_corpus(&small(seed)).unwrap();
        let b = generate_corpus(&small(seed)).unwrap();
        prop_assert_eq!(&a.corpus_text, &b.corpus_text);
        prop_assert_eq!(&a.kelly_tsv, &b.kelly_tsv);
        prop_assert_eq!(&a.senses_tsv, &b.senses_tsv);
        prop_assert_eq!(&a.catmap, &b.catmap);
        prop_assert_eq!(&a.manifest, &b.manifest);
    }

    #[test]
    fn output_is_valid_and_loads_cleanly(seed in any::<u64>()) {
        let b = generate_corpus(&small(seed)).unwrap();
        let parsed = parse_corpus(&b.corpus_text).unwrap();
        prop_assert!(validate_corpus(&parsed).is_empty(), "{:?}", validate_corpus(&parsed));
        prop_assert_eq!(&parsed, &b.corpus);
        prop_assert!(parsed.documents.iter().flat_map(|d| &d.sentences)
            .chain(parsed.standalone_sentences.iter().map(|s| &s.sentence))
            .all(|s| s.tokens.iter().all(|t| !t.deprel.is_empty())));
        // the text is the writer's output behind one generator comment line
        let body = b.corpus_text.split_once('\n').unwrap().1;
        prop_assert_eq!(write_corpus(&parsed), body);
        let kelly = load_kelly(&b.kelly_tsv).unwrap();
        prop_assert!(kelly.warnings().is_empty(), "{:?}", kelly.warnings());
        // content lexemes plus the fixed function words
        prop_assert_eq!(kelly.len(), 120 + 30);
        load_senses(&b.senses_tsv).unwrap();
        let map = load_category_map(&b.catmap).unwrap();
        prop_assert!(map.warnings().is_empty());
    }
}

#[test]
fn different_seeds_differ() {
    let a = generate_corpus(&small(1)).unwrap();
    let b = generate_corpus(&small(2)).unwrap();
    assert_ne!(a.corpus_text, b.corpus_text);
}

#[test]
fn mean_sentence_length_rises_with_level() {
    let b = generate_corpus(&GenConfig::default()).unwrap();
    let mut means = Vec::new();
    for level in CefrLabel::CLASSES {
        let (tokens, sentences) = b
            .corpus
            .documents
            .iter()
            .filter(|d| d.level == level)
            .flat_map(|d| &d.sentences)
            .fold((0usize, 0usize), |(t, s), x| (t + x.tokens.len(), s + 1));
        means.push(tokens as f64 / sentences as f64);
    }
    assert!(means.windows(2).all(|w| w[0] < w[1]), "{means:?}");
}

#[test]
fn empty_document_set_still_parses() {
    let cfg = GenConfig {
        docs_per_level: 0,
        ..small(7)
    };
    let b = generate_corpus(&cfg).unwrap();
    let parsed = parse_corpus(&b.corpus_text).unwrap();
    assert!(parsed.documents.is_empty());
    assert_eq!(parsed.standalone_sentences.len(), 25);
    assert!(b.sentence_levels.is_empty());
}

#[test]
fn counts_and_manifest() {
    let b = generate_corpus(&small(9)).unwrap();
    assert_eq!(b.corpus.documents.len(), 20);
    assert_eq!(b.corpus.standalone_sentences.len(), 25);
    for (d, levels) in b.corpus.documents.iter().zip(&b.sentence_levels) {
        assert_eq!(d.sentences.len(), levels.len());
        // no injection by default
        assert!(levels.iter().all(|&l| l == d.level));
    }
    let m: serde_json::Value = serde_json::from_str(&b.manifest).unwrap();
    assert_eq!(m["seed"], 9);
    assert_eq!(m["rng"], "chacha8");
}

#[test]
fn config_round_trips_through_json() {
    let cfg = small(11);
    let text = serde_json::to_string(&cfg).unwrap();
    let back: GenConfig = serde_json::from_str(&text).unwrap();
    assert_eq!(
        generate_corpus(&back).unwrap().corpus_text,
        generate_corpus(&cfg).unwrap().corpus_text
    );
}
