use linkform::invariants::{decompose, invariant_table, GaussOptions};
use linkform::seifert::linking_pairing;
use linkform::SeifertPresentation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p: SeifertPresentation = "1; 8/7, 8/7, 8/7".parse()?;
    let lp = linking_pairing(&p, 2, false)?;
    let table = invariant_table(&lp.pairing)?;
    let blocks = decompose(&lp.pairing, &GaussOptions::default())?;
    assert_eq!(blocks.to_string(), "E1(3)");
    println!("{table}\n{blocks}");
    Ok(())
}
