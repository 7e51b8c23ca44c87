//! Time locate on patterns sampled from the text, per pattern length.
//!
//! cargo run --release --example query_bench -- [ORDER]

use gcis::{bench, corpus, BuildOptions, Grammar};

fn main() -> gcis::Result<()> {
    let order = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(27);
    let text = corpus::fibonacci(order)?;
    let g = Grammar::build(&text, &BuildOptions::default())?;
    println!("Fibonacci word of order {order}: {}", g.stats());
    println!("{}", bench::BenchRow::HEADER);
    for row in bench::run(&g, &[10, 30, 100, 300, 1000, 3000], 50, 7)? {
        println!("{row}");
    }
    Ok(())
}
