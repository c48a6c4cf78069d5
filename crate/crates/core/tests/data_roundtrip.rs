use farmeff_core::data::{generate_synthetic, load_dataset, write_dataset, Schema, SyntheticTargets};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn synthetic_csv_round_trips(seed in any::<u64>(), k in 1usize..60) {
        let targets = SyntheticTargets::default();
        let k = k.max(2);
        let d = generate_synthetic(k, seed, &targets).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("farms.csv");
        write_dataset(&d, std::fs::File::create(&path).unwrap()).unwrap();
        // the default schema reads what the generator writes
        let back = load_dataset(&path, &Schema::default()).unwrap();
        prop_assert_eq!(&back, &d);
        let again = load_dataset(&path, &Schema::for_dataset(&d)).unwrap();
        prop_assert_eq!(again, d);
    }
}

#[test]
fn synthetic_generation_is_deterministic() {
    let t = SyntheticTargets::default();
    let a = generate_synthetic(45, 7, &t).unwrap();
    let b = generate_synthetic(45, 7, &t).unwrap();
    let mut wa = Vec::new();
    let mut wb = Vec::new();
    write_dataset(&a, &mut wa).unwrap();
    write_dataset(&b, &mut wb).unwrap();
    assert_eq!(wa, wb);
    assert_ne!(generate_synthetic(45, 8, &t).unwrap(), a);
}
