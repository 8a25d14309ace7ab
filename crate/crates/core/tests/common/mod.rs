#![allow(dead_code)]

use knotq::diagram::Diagram;

pub fn data_path(name: &str) -> String {
    format!("{}/data/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

pub fn load(name: &str) -> Diagram {
    let text = std::fs::read_to_string(data_path(name)).expect("data file exists");
    Diagram::from_json(&text).expect("data file is a valid diagram")
}

pub fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).expect("golden file exists")
}
