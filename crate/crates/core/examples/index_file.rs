//! Write an index file, load it back and see how damage is reported.
//!
//! cargo run --example index_file

use gcis::{corpus, AnyStore, BuildOptions, Encoding, Grammar};

fn main() -> gcis::Result<()> {
    let text = corpus::run_rich(12)?;
    let dir = std::env::temp_dir().join(format!("gcis-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    for encoding in [Encoding::Nep, Encoding::Uni] {
        let g = gcis::build_index(&text, &BuildOptions::default(), encoding)?;
        let path = dir.join(format!("{encoding:?}.idx").to_lowercase());
        std::fs::write(&path, g.to_bytes()?)?;

        let bytes = std::fs::read(&path)?;
        let loaded = Grammar::<AnyStore>::from_bytes(&bytes)?;
        assert_eq!(loaded.decompress(), text);
        println!(
            "{}: {} bytes, stats {}",
            path.display(),
            bytes.len(),
            loaded.stats()
        );

        let mut damaged = bytes.clone();
        damaged[bytes.len() / 2] ^= 0x40;
        println!(
            "  flipped bit: {}",
            Grammar::<AnyStore>::from_bytes(&damaged).unwrap_err()
        );
        println!(
            "  cut short:   {}",
            Grammar::<AnyStore>::from_bytes(&bytes[..bytes.len() - 3]).unwrap_err()
        );
    }
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
