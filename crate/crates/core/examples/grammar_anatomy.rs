//! Print the rules of a grammar height by height, with expansion lengths,
//! parents and the text read at every height.
//!
//! cargo run --example grammar_anatomy -- [TEXT]

use gcis::{BuildOptions, Grammar, Symbol, FIRST_NONTERMINAL};

fn show(s: Symbol) -> String {
    if s < FIRST_NONTERMINAL {
        (s as u8 as char).escape_default().to_string()
    } else {
        format!("X{s}")
    }
}

fn main() -> gcis::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "acabacab".into());
    let g = Grammar::build(text.as_bytes(), &BuildOptions::without_heuristic())?;
    println!(
        "text: {text} (n = {}), heights: {}, stop: {:?}",
        g.text_len(),
        g.heights(),
        g.stop_reason()
    );
    for h in 1..=g.heights() {
        println!("height {h}:");
        for id in g.height_range(h) {
            let rhs: Vec<String> = g.rhs(id)?.into_iter().map(show).collect();
            let parents: Vec<String> = g
                .parents(id)?
                .iter()
                .map(|e| format!("{}[{}]", show(e.parent), e.index))
                .collect();
            println!(
                "  {} -> {}   L = {}   in: {}",
                show(id),
                rhs.join(" "),
                g.expansion_length(id)?,
                if parents.is_empty() {
                    "-".into()
                } else {
                    parents.join(", ")
                }
            );
        }
    }
    for h in 0..g.heights() {
        let level: Vec<String> = g.level_string(h).into_iter().map(show).collect();
        println!("T^({h}) = {}", level.join(" "));
    }
    for id in FIRST_NONTERMINAL..FIRST_NONTERMINAL + g.num_rules() as Symbol {
        let mut occ = g.occurrences_in_text(id)?;
        occ.sort_unstable();
        println!("{} occurs at {occ:?}", show(id));
    }
    Ok(())
}
