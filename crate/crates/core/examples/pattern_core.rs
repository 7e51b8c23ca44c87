//! Show how a query is anchored: the pattern's parse, its core and the
//! work done to extend core occurrences.
//!
//! cargo run --release --example pattern_core -- [PATTERN]

use gcis::locate::{find_core_occurrences, parse_pattern, select_core};
use gcis::{corpus, BuildOptions, Grammar, LocateOptions};

fn main() -> gcis::Result<()> {
    let text = corpus::fibonacci(25)?;
    let g = Grammar::build(&text, &BuildOptions::without_heuristic())?;
    let pattern = std::env::args()
        .nth(1)
        .map(String::into_bytes)
        .unwrap_or_else(|| text[1000..1100].to_vec());
    println!(
        "text: Fibonacci word, n = {}, τ = {}",
        text.len(),
        g.heights()
    );
    println!("pattern: {} characters", pattern.len());

    let Some(parsed) = parse_pattern(&pattern, &g)? else {
        println!("an inner factor has no rule: no occurrence");
        return Ok(());
    };
    for (h, (l, r)) in parsed
        .left_fringes
        .iter()
        .zip(&parsed.right_fringes)
        .enumerate()
    {
        println!(
            "height {h}: fringes of {} and {} symbols set aside",
            l.len(),
            r.len()
        );
    }
    println!(
        "top string at height {}: {} symbols",
        parsed.height,
        parsed.top.len()
    );

    let opts = LocateOptions::default();
    let core = select_core(&pattern, &parsed, &g, &opts);
    println!(
        "core: {} symbols at height {}, {} characters before, {} after{}",
        core.symbols.len(),
        core.height,
        core.prefix_chars,
        core.suffix_chars,
        if core.fallback {
            " (single-character fallback)"
        } else {
            ""
        }
    );
    println!(
        "core occurrences in right-hand sides: {}",
        find_core_occurrences(&core, &g, &opts).len()
    );

    let r = g.locate(&pattern)?;
    println!(
        "occ = {}, occ_C = {}, visited nodes = {}, time = {:?}",
        r.occ, r.occ_core, r.visited_nodes, r.total_time
    );
    Ok(())
}
