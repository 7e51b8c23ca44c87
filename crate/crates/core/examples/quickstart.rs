//! Build an index over a small text and run the three basic queries.
//!
//! cargo run --example quickstart

use gcis::{BuildOptions, Grammar};

fn main() -> gcis::Result<()> {
    let text = b"acabacab";
    let g = Grammar::build(text, &BuildOptions::without_heuristic())?;

    let r = g.locate(b"acab")?;
    println!("locate(acab) = {:?}", r.positions);
    println!("count(a) = {}", g.count(b"a")?);
    println!("count(zz) = {}", g.count(b"zz")?);

    let piece = g.extract(g.start(), 3, 4)?;
    println!("T[3..6] = {}", String::from_utf8_lossy(&piece));

    // |Γ|, g, start rule length, height, n
    println!("stats: {}", g.stats());
    Ok(())
}
