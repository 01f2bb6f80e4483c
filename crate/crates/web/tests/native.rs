use grouppoly::fixtures::{CHEN_GENERATORS, EXAMPLE_HYPERGRAPH, H_S3_GENERATORS};
use grouppoly_web::{analyze, hypergraph, spectrum};

#[test]
fn analyze_hs3() {
    let v = analyze("symmetric:3,symmetric:3", H_S3_GENERATORS).unwrap();
    assert_eq!(v["order"], 6);
    assert_eq!(v["dual_char_poly"], "t - t^{log_6 3}");
    assert_eq!(v["weights"], "1 + 2t + 3t^2");
    assert_eq!(v["spectrum"].as_array().unwrap().len(), 4);
    assert_eq!(v["dual_flats"], serde_json::json!(["{}", "{2}", "{1,2}"]));
}

#[test]
fn chen_spectrum() {
    let v = spectrum("cyclic:6^3", CHEN_GENERATORS, 0, false).unwrap();
    assert_eq!(v["char_poly"], "λ^3 - 12λ^2 + 33λ");
    assert_eq!(v["residual"], "λ^2 - 12λ + 33");
    let top = spectrum("cyclic:6^3", CHEN_GENERATORS, -1, true).unwrap();
    assert_eq!(top["dim"], 2);
}

#[test]
fn hypergraph_example() {
    let v = hypergraph(EXAMPLE_HYPERGRAPH, 4, "cyclic:2, cyclic:3, symmetric:3").unwrap();
    let cols = v["colorings"].as_array().unwrap();
    assert_eq!(cols.len(), 4);
    assert!(cols.iter().all(|c| c["match"] == true));
    let flows = v["flows"].as_array().unwrap();
    assert_eq!(flows[1]["brute"], 468);
    assert!(flows[2]["error"].is_string());
}

#[test]
fn bad_input_is_an_error() {
    assert!(analyze("cyclic:6", "1|2").is_err());
    assert!(spectrum("cyclic:6^3", CHEN_GENERATORS, 7, true).is_err());
}
