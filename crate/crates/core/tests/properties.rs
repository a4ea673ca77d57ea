use cb_core::divisor::{symmetric_class, symmetric_coordinates};
use cb_core::fusion::rank;
use cb_core::intersect::intersect_fcurve;
use cb_core::search::{run_search, SearchConfig};
use cb_core::types::{apply_permutation, enumerate_fcurves, Level, Permutation, WeightData};
use proptest::prelude::*;

fn datum(n: usize) -> impl Strategy<Value = WeightData> {
    (1u32..=4).prop_flat_map(move |ell| {
        proptest::collection::vec(0..=ell, n).prop_filter_map("odd total", move |w| {
            (w.iter().sum::<u32>() % 2 == 0).then(|| WeightData::new(ell, w).unwrap())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_is_symmetric(wd in datum(6), seed in 0usize..720) {
        let sigma = &Permutation::all(6)[seed];
        let moved: Vec<u32> = (1..=6).map(|p| wd.weight(sigma.apply(p))).collect();
        prop_assert_eq!(rank(wd.level(), wd.weights()).unwrap(), rank(Level(wd.ell()), &moved).unwrap());
    }

    #[test]
    fn intersection_follows_relabeling(wd in datum(6), seed in 0usize..720, k in 0usize..65) {
        let sigma = &Permutation::all(6)[seed];
        let f = enumerate_fcurves(6, None).unwrap()[k];
        let g = apply_permutation(sigma, &f).unwrap();
        let mut moved = vec![0; 6];
        for p in 1..=6 {
            moved[sigma.apply(p) - 1] = wd.weight(p);
        }
        let moved = WeightData::new(wd.ell(), moved).unwrap();
        prop_assert_eq!(intersect_fcurve(&wd, &f).unwrap(), intersect_fcurve(&moved, &g).unwrap());
    }

    #[test]
    fn symmetric_coordinates_ignore_weight_order(wd in datum(7), seed in 0usize..5040) {
        let sigma = &Permutation::all(7)[seed];
        let moved: Vec<u32> = (1..=7).map(|p| wd.weight(sigma.apply(p))).collect();
        let moved = WeightData::new(wd.ell(), moved).unwrap();
        prop_assert_eq!(symmetric_coordinates(&wd).unwrap(), symmetric_coordinates(&moved).unwrap());
    }
}

#[test]
fn search_is_identical_on_one_thread() {
    let cfg = SearchConfig::new(8, 3);
    let parallel = serde_json::to_string(&run_search(&cfg).unwrap()).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let serial = pool.install(|| serde_json::to_string(&run_search(&cfg).unwrap()).unwrap());
    assert_eq!(parallel, serial);
}

#[test]
fn search_output_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rays.json");
    let mut cfg = SearchConfig::new(7, 3);
    cfg.require_nontrivial = true;
    cfg.output_path = Some(path.clone());
    let samples = run_search(&cfg).unwrap();
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), samples.len());
    // (1,1) comes from level 2 with weights 2^5 1^2
    let wd = WeightData::new(2, vec![1, 1, 2, 2, 2, 2, 2]).unwrap();
    let ray = symmetric_class(&wd).unwrap().primitive();
    assert!(samples.iter().any(|s| s.sym_ray == ray));
}
