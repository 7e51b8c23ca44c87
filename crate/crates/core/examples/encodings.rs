//! Compare the plain and the succinct rule store on a few corpora.
//!
//! cargo run --release --example encodings

use std::time::Instant;

use gcis::{corpus, BuildOptions, Grammar, RuleStore};

fn main() -> gcis::Result<()> {
    let inputs = [
        ("fibonacci 27", corpus::fibonacci(27)?),
        ("thue-morse 20", corpus::thue_morse(20)?),
        ("run-rich 16", corpus::run_rich(16)?),
        ("random σ=4", corpus::random(1 << 20, 4, 1)?),
    ];
    println!(
        "{:<14} {:>10} {:>8} {:>12} {:>12} {:>10} {:>10}",
        "input", "n", "rules", "nep bytes", "uni bytes", "nep µs", "uni µs"
    );
    for (name, text) in inputs {
        let opts = BuildOptions::default();
        let nep = Grammar::build(&text, &opts)?;
        let uni = Grammar::build_uni(&text, &opts)?;
        let pattern = &text[text.len() / 2..text.len() / 2 + 20];
        let time = |f: &dyn Fn() -> gcis::Result<u64>| -> gcis::Result<u128> {
            let t = Instant::now();
            f()?;
            Ok(t.elapsed().as_micros())
        };
        let tn = time(&|| nep.count(pattern))?;
        let tu = time(&|| uni.count(pattern))?;
        assert_eq!(
            nep.locate(pattern)?.positions,
            uni.locate(pattern)?.positions
        );
        println!(
            "{:<14} {:>10} {:>8} {:>12} {:>12} {:>10} {:>10}",
            name,
            text.len(),
            nep.num_rules(),
            nep.store().size_in_bytes(),
            uni.store().size_in_bytes(),
            tn,
            tu
        );
    }
    Ok(())
}
