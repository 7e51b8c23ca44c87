//! Grammar statistics of the synthetic corpora as they grow.
//!
//! cargo run --release --example corpus_growth

use gcis::{corpus, BuildOptions, Grammar};

fn main() -> gcis::Result<()> {
    println!("family\torder\t|Γ|\tg\tstart\tτ\tn");
    for k in (10..=32).step_by(2) {
        let g = Grammar::build(&corpus::fibonacci(k)?, &BuildOptions::without_heuristic())?;
        println!("fib\t{k}\t{}", g.stats());
    }
    for k in (8..=24).step_by(2) {
        let g = Grammar::build(&corpus::thue_morse(k)?, &BuildOptions::without_heuristic())?;
        println!("tm\t{k}\t{}", g.stats());
    }
    for k in (6..=18).step_by(2) {
        let g = Grammar::build(&corpus::run_rich(k)?, &BuildOptions::without_heuristic())?;
        println!("rr\t{k}\t{}", g.stats());
    }
    Ok(())
}
