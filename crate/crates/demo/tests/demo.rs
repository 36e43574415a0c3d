use cyclohecke_demo::{blocks_json, center_json, table_json};

fn parse(s: &str) -> serde_json::Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn table() {
    let v = parse(&table_json(3, 2).unwrap());
    assert_eq!(v["table"]["rows"].as_array().unwrap().len(), 10);
    assert_eq!(v["report"]["status"], "pass");
    assert!(table_json(6, 2).is_err());
}

#[test]
fn blocks() {
    assert_eq!(parse(&blocks_json(2, 2, 2, "0,0").unwrap())["data"]["blocks"], 2);
    assert!(blocks_json(2, 2, 2, "0").is_err());
}

#[test]
fn center() {
    let v = parse(&center_json(2, 1, "-1", "1").unwrap());
    assert_eq!(v["center_dim"], 2);
    assert_eq!(v["relations"], "pass");
    assert_eq!(parse(&center_json(2, 2, "3", "5,7").unwrap())["cocenter_dim"], 5);
    assert!(center_json(2, 1, "x", "1").is_err());
}
