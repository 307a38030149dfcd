use growthmeter::kaldor::StylizedFacts;
use growthmeter_web::{curl_grid, curl_grid_json, islands, islands_json, kaldor, kaldor_json};

#[test]
fn islands_match_the_builtin_experiment() {
    let paths = islands(1.6990, 5.0, 0.06, 98, 0.06).unwrap();
    let names: Vec<_> = paths.iter().map(|p| p.name.as_str()).collect();
    assert_eq!(names, ["north", "middle", "south"]);
    let folds: Vec<f64> = paths.iter().map(|p| p.chained_factor).collect();
    assert!(
        (folds[0] - 31.0).abs() < 3.1 && (folds[2] - 8.0).abs() < 0.8,
        "{folds:?}"
    );
    // Identical endpoints: fixed-base factors agree closely, chained ones do not.
    let fixed: Vec<f64> = paths.iter().map(|p| p.fixed_base_factor).collect();
    assert!((fixed[0] / fixed[2] - 1.0).abs() < 1e-9);
    for p in &paths {
        assert_eq!(p.years.len(), 98);
        assert_eq!(p.chained.len(), 98);
        assert_eq!(p.labor_share_a.len(), 99);
    }
}

#[test]
fn curl_grid_is_positive_without_symmetry() {
    let g = curl_grid(1.6990, 5.0, 1.0, 10.0, 5).unwrap();
    assert_eq!(g.levels, [1.0, 3.25, 5.5, 7.75, 10.0]);
    assert_eq!(g.values.len(), 5);
    assert!(g.min > 0.0 && g.max > g.min);
    let flat = curl_grid(0.0, 1.0, 1.0, 10.0, 4).unwrap();
    assert!(flat.max.abs() < 1e-10 && flat.min.abs() < 1e-10);
}

#[test]
fn kaldor_report_closes_identity() {
    let f = StylizedFacts {
        labor_share: 2.0 / 3.0,
        saving_rate: 0.06,
        rate_of_return: 0.055,
        mean_depreciation: 0.055,
        tech_growth: 0.03,
    };
    let r = kaldor(f).unwrap();
    assert!((r.sustainable_growth * r.investment_interval - 0.03).abs() < 1e-12);
    assert!((r.new_output_share - r.sustainable_growth).abs() < 1e-12);
}

#[test]
fn json_wrappers_report_errors_inline() {
    let v: serde_json::Value =
        serde_json::from_str(&kaldor_json(1.5, 0.1, 0.05, 0.05, 0.02)).unwrap();
    assert!(v["error"].as_str().unwrap().contains("labor share"));
    let v: serde_json::Value =
        serde_json::from_str(&curl_grid_json(1.0, 1.0, 5.0, 1.0, 3)).unwrap();
    assert!(v.get("error").is_some());
    // Infeasible subsistence at the first year.
    let v: serde_json::Value =
        serde_json::from_str(&islands_json(50.0, 5.0, 0.06, 10, 0.06)).unwrap();
    assert!(v.get("error").is_some());
    let v: serde_json::Value =
        serde_json::from_str(&islands_json(1.6990, 5.0, 0.06, 10, 0.06)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
}
