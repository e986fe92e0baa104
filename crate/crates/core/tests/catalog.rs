//! The shipped catalog file against a fresh build.

use linkform::cli::catalog_json;
use linkform::invariants::GaussOptions;
use linkform::parse::{parse_block_sum, parse_presentation};
use linkform::realize::{catalog, verify_realization};
use serde_json::Value;

const SHIPPED: &str = include_str!("../data/catalog.json");

#[test]
fn shipped_catalog_is_current() {
    let opts = GaussOptions::default();
    let fresh = catalog_json(&catalog(&opts).unwrap());
    let shipped: Value = serde_json::from_str(SHIPPED).unwrap();
    assert_eq!(shipped, fresh, "regenerate with `linkform catalog > crates/core/data/catalog.json`");
}

#[test]
fn every_shipped_entry_verifies() {
    let opts = GaussOptions::default();
    let shipped: Vec<Value> = serde_json::from_str(SHIPPED).unwrap();
    // 23 generators (the two cyclic classes coincide at k = 1), 12 mixed-five, 4 family
    assert_eq!(shipped.len(), 23 + 12 + 4);
    for e in shipped {
        let target = parse_block_sum(e["target"].as_str().unwrap()).unwrap();
        let p = parse_presentation(e["presentation"].as_str().unwrap()).unwrap();
        let r = verify_realization(&p, &target.pairing(), &opts).unwrap();
        assert!(r.verdict && r.homology_ok, "{e}");
    }
}
