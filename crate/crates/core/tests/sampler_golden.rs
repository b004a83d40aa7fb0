//! Golden sampler outputs. A failure here means the seeded generator
//! changed and previously published samples no longer reproduce.

use schwarz_core::{emit_state, full_separability, parse_state, sample_state, SampleKind, SamplerSpec};

fn check(file: &str, dims: &[usize], kind: SampleKind, seed: u64) {
    let path = format!("{}/tests/data/{file}", env!("CARGO_MANIFEST_DIR"));
    let golden = parse_state(&std::fs::read_to_string(path).unwrap()).unwrap();
    let fresh = sample_state(&SamplerSpec {
        dims: dims.to_vec(),
        kind,
        seed,
    })
    .unwrap();
    assert_eq!(fresh.dims(), golden.dims());
    assert_eq!(fresh.amps(), golden.amps());
    assert_eq!(emit_state(&fresh.with_label(golden.label().unwrap())), emit_state(&golden));
}

#[test]
fn haar_2x2_seed_7() {
    check("haar_2x2_seed7.json", &[2, 2], SampleKind::Haar, 7);
}

#[test]
fn haar_2x2x2_seed_42() {
    check("haar_2x2x2_seed42.json", &[2, 2, 2], SampleKind::Haar, 42);
}

#[test]
fn product_3x2_seed_1() {
    check("product_3x2_seed1.json", &[3, 2], SampleKind::Product, 1);
}

#[test]
fn product_sampler_is_always_fully_separable() {
    for seed in 0..200 {
        let dims = [vec![2, 3], vec![3, 2, 2], vec![2, 2, 2, 2]][seed as usize % 3].clone();
        let s = sample_state(&SamplerSpec {
            dims,
            kind: SampleKind::Product,
            seed,
        })
        .unwrap();
        let res = full_separability(&s, 1e-9).unwrap();
        assert!(res.fully_separable, "seed {seed}");
        let rebuilt = res
            .factors
            .iter()
            .map(|(_, f)| f.clone())
            .reduce(|a, b| a.tensor(&b))
            .unwrap();
        assert!(rebuilt.fidelity(&s).unwrap() >= 1.0 - 1e-10);
    }
}
