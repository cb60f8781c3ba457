use cefrlab::eval::{pearson, rmse};
use cefrlab::model::{
    load_model, model_from_str, model_to_string, save_model, train_linreg, train_mlr,
    TrainOptions,
};
use cefrlab::{CefrLabel, Error};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn names(d: usize) -> Vec<String> {
    (0..d).map(|i| format!("f{i}")).collect()
}

/// Three overlapping classes in two dimensions.
fn overlapping(seed: u64, n: usize) -> (Vec<Vec<f64>>, Vec<CefrLabel>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = (0..n)
        .map(|i| {
            let c = (i % 3) as f64;
            vec![c + rng.gen_range(-2.0..2.0), 2.0 * c + rng.gen_range(-3.0..3.0)]
        })
        .collect();
    let y = (0..n).map(|i| CefrLabel::CLASSES[i % 3]).collect();
    (x, y)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fit_never_worse_than_zero_weights(seed in any::<u64>(), ridge in prop::sample::select(vec![0.0, 1e-8, 0.1, 10.0])) {
        let (x, y) = overlapping(seed, 45);
        let m = train_mlr(&x, &y, &names(2), ridge, &TrainOptions::default()).unwrap();
        let at_zero = 45.0 * 3f64.ln();
        prop_assert!(m.training.final_nll <= at_zero + 1e-9);
    }

    #[test]
    fn predictions_invariant_to_affine_rescaling(
        a in 0.01f64..100.0,
        b in -100.0f64..100.0,
        c in 0.01f64..100.0,
        d in -100.0f64..100.0,
    ) {
        let (x, y) = overlapping(5, 60);
        let scaled: Vec<Vec<f64>> = x.iter().map(|r| vec![a * r[0] + b, c * r[1] + d]).collect();
        let opts = TrainOptions::default();
        let m1 = train_mlr(&x, &y, &names(2), 0.0, &opts).unwrap();
        let m2 = train_mlr(&scaled, &y, &names(2), 0.0, &opts).unwrap();
        for r in x.iter().take(20) {
            let p1 = m1.predict_proba(r).unwrap();
            let p2 = m2.predict_proba(&[a * r[0] + b, c * r[1] + d]).unwrap();
            for (u, v) in p1.iter().zip(&p2) {
                prop_assert!((u - v).abs() < 1e-6, "{} vs {}", u, v);
            }
        }
    }

    #[test]
    fn probabilities_sum_to_one(v in prop::collection::vec(-1e3f64..1e3, 2)) {
        let (x, y) = overlapping(9, 30);
        let m = train_mlr(&x, &y, &names(2), 1e-8, &TrainOptions::default()).unwrap();
        let p = m.predict_proba(&v).unwrap();
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn training_is_bit_deterministic() {
    let (x, y) = overlapping(3, 60);
    let a = train_mlr(&x, &y, &names(2), 1e-8, &TrainOptions::default()).unwrap();
    let b = train_mlr(&x, &y, &names(2), 1e-8, &TrainOptions::default()).unwrap();
    assert_eq!(model_to_string(&a).unwrap(), model_to_string(&b).unwrap());
}

#[test]
fn separable_two_class_fits_training_data() {
    let x = vec![vec![0.0], vec![0.0], vec![1.0], vec![1.0]];
    let y = vec![CefrLabel::A1, CefrLabel::A1, CefrLabel::B1, CefrLabel::B1];
    let m = train_mlr(&x, &y, &names(1), 1e-8, &TrainOptions::default()).unwrap();
    for (r, l) in x.iter().zip(&y) {
        assert_eq!(m.predict_label(r).unwrap(), *l);
    }
}

#[test]
fn unknown_format_version_is_rejected() {
    let (x, y) = overlapping(1, 30);
    let m = train_mlr(&x, &y, &names(2), 1e-8, &TrainOptions::default()).unwrap();
    let mut json: serde_json::Value = serde_json::from_str(&model_to_string(&m).unwrap()).unwrap();
    json["format_version"] = 99.into();
    let err = model_from_str(&json.to_string()).unwrap_err();
    assert!(matches!(err, Error::FormatVersion { found: 99, expected: 1 }), "{err}");
}

#[test]
fn truncated_file_is_rejected() {
    let (x, y) = overlapping(1, 30);
    let m = train_mlr(&x, &y, &names(2), 1e-8, &TrainOptions::default()).unwrap();
    let text = model_to_string(&m).unwrap();
    assert!(model_from_str(&text[..text.len() / 2]).is_err());
}

#[test]
fn hand_edited_weight_takes_effect() {
    let (x, y) = overlapping(2, 30);
    let m = train_mlr(&x, &y, &names(2), 1e-8, &TrainOptions::default()).unwrap();
    let mut json: serde_json::Value = serde_json::from_str(&model_to_string(&m).unwrap()).unwrap();
    let old = json["weights"][0][2].as_f64().unwrap();
    json["weights"][0][2] = (old + 1.0).into();
    let edited = model_from_str(&json.to_string()).unwrap();
    assert_eq!(edited.weights[0][2], old + 1.0);

    // raising the first intercept by 1 multiplies its odds by e
    let probe = [0.3, -0.7];
    let before = m.predict_proba(&probe).unwrap();
    let after = edited.predict_proba(&probe).unwrap();
    let odds = |p: &[f64]| p[0] / p[1];
    assert!((odds(&after) / odds(&before) - 1f64.exp()).abs() < 1e-9);
}

#[test]
fn save_and_load_through_io() {
    let (x, y) = overlapping(4, 30);
    let m = train_mlr(&x, &y, &names(2), 0.5, &TrainOptions::default()).unwrap();
    let mut buf = Vec::new();
    save_model(&m, &mut buf).unwrap();
    assert_eq!(load_model(buf.as_slice()).unwrap(), m);
}

#[test]
fn linear_regression_hand_fit_correlation() {
    // least squares through (0,1),(1,2),(2,2): slope 1/2, intercept 7/6
    let x = vec![vec![0.0], vec![1.0], vec![2.0]];
    let gold = [1.0, 2.0, 2.0];
    let m = train_linreg(&x, &gold, &names(1), 0.0).unwrap();
    let pred: Vec<f64> = x.iter().map(|r| m.predict(r).unwrap()).collect();
    let r = pearson(&pred, &gold).unwrap();
    assert!((r - 0.75f64.sqrt()).abs() < 1e-12, "{r}");
    // residuals -1/6, 1/3, -1/6
    assert!((rmse(&pred, &gold) - (1.0f64 / 18.0).sqrt()).abs() < 1e-12);
}

#[test]
fn linear_regression_exact_fit() {
    let x = vec![vec![1.0], vec![2.0], vec![3.0]];
    let gold = [1.0, 2.0, 3.0];
    let m = train_linreg(&x, &gold, &names(1), 0.0).unwrap();
    let pred: Vec<f64> = x.iter().map(|r| m.predict(r).unwrap()).collect();
    assert!((pearson(&pred, &gold).unwrap() - 1.0).abs() < 1e-12);
    assert!(rmse(&pred, &gold) < 1e-12);
}
