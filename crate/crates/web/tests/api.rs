use kromatic_web::{compare_json, expand_json, tableaux_json};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn expand_in_k_monomial_basis() {
    let v = parse(expand_json("table1:2", "km", 6).unwrap());
    assert_eq!(
        v["expansion"]["terms"][0]["partition"].to_string(),
        "[1,1,1]"
    );
    assert_eq!(v["text"], "m̄̃(1,1,1)");
}

#[test]
fn expand_in_k_power_basis() {
    let v = parse(expand_json("complete:3", "kp", 4).unwrap());
    let coeffs: Vec<&str> = v["expansion"]["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["coeff"].as_str().unwrap())
        .collect();
    assert_eq!(coeffs, ["2", "-3", "1", "-9", "12", "3", "-6"]);
}

#[test]
fn expand_grothendieck_is_nonnegative_for_path() {
    let v = parse(expand_json("path:3", "gs", 5).unwrap());
    assert!(v["expansion"]["terms"]
        .as_array()
        .unwrap()
        .iter()
        .all(|t| !t["coeff"].as_str().unwrap().starts_with('-')));
}

#[test]
fn compare_first_example() {
    let v = parse(compare_json("ex1G", "ex1H", 7).unwrap());
    assert_eq!(v["chromaticEqual"], true);
    assert_eq!(v["kromaticEqualUpToD"], false);
    assert!(v["kmSupportOnlyRight"]
        .as_array()
        .unwrap()
        .iter()
        .any(|l| l == "(2,2,2)"));
}

#[test]
fn tableaux_listing() {
    let v = parse(tableaux_json("2+1", "1,1,1").unwrap());
    assert_eq!(v["count"], 4);
    assert_eq!(v["report"]["allEqual"], true);
    assert_eq!(v["tableaux"][0].to_string(), r#"[["p0"],["p1"],["p2"]]"#);
}

#[test]
fn errors_are_messages() {
    assert!(expand_json("nosuch", "km", 3)
        .unwrap_err()
        .contains("nosuch"));
    assert!(expand_json("path:3", "zz", 3).is_err());
    assert!(expand_json("complete:11", "km", 3).is_err());
    assert!(tableaux_json("chain:6", "1").is_err());
}
