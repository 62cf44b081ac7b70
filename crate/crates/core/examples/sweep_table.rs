//! A parameter sweep written as CSV, with a verdict summary.
//!
//! cargo run --example sweep_table

use std::collections::BTreeMap;

use painleve::equations::Family;
use painleve::sweep::{parse_range, summarize, sweep, write_csv};

fn main() -> painleve::Result<()> {
    let ranges = BTreeMap::from([
        ("v1".to_string(), parse_range("-1:1/2:1")?),
        ("v2".to_string(), parse_range("0,1,@b")?),
    ]);
    let rows = sweep(Family::III2p, &ranges)?;
    write_csv(Family::III2p, &rows, std::io::stdout())?;
    println!("{}", serde_json::to_string_pretty(&summarize(&rows)).unwrap());
    Ok(())
}
