use lietower_web::{bch_series, fixture_document, fixture_names, tower, witt_table};
use serde_json::Value;

#[test]
fn wedge_tower_through_the_page_api() {
    let doc = fixture_document("wedge").unwrap();
    let v: Value = serde_json::from_str(&tower(&doc, 5, 1).unwrap()).unwrap();
    assert_eq!(v["dims"][0], serde_json::json!([2, 3, 5, 8]));
    assert!(v["stabilization"][0]["stable_from"].is_null());
}

#[test]
fn bad_documents_come_back_as_messages() {
    let doc = fixture_document("broken").unwrap();
    let err = tower(&doc, 3, 2).unwrap_err();
    assert!(err.contains("simplex e"), "{err}");
    assert!(tower("{", 3, 2).is_err());
    assert!(fixture_document("nope").is_err());
}

#[test]
fn bch_has_the_twelfth_terms() {
    let v: Value = serde_json::from_str(&bch_series(3).unwrap()).unwrap();
    assert_eq!(v[0]["terms"], "x + y");
    assert_eq!(v[1]["terms"], "1/2[x,y]");
    let cubic = v[2]["terms"].as_str().unwrap();
    assert!(cubic.contains("1/12"), "{cubic}");
}

#[test]
fn witt_columns_agree() {
    let v: Value = serde_json::from_str(&witt_table(3, 6).unwrap()).unwrap();
    for row in v.as_array().unwrap() {
        assert_eq!(row["lyndon"], row["necklace"]);
        assert_eq!(row["lyndon"], row["rank"]);
    }
    assert_eq!(v[5]["lyndon"], 116);
    assert!(witt_table(0, 3).is_err());
}

#[test]
fn names_list_every_fixture() {
    let v: Value = serde_json::from_str(&fixture_names()).unwrap();
    assert!(v.as_array().unwrap().iter().any(|n| n == "s2"));
}
