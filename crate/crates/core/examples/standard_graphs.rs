//! Writes the built-in graphs of groups as JSON files usable with `scs gog`
//! and `scs vf`.
//!
//!     cargo run --example standard_graphs -- data/

use std::path::PathBuf;

use subconj::gog::{check_normalizer_condition, standard};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "data".into()));
    std::fs::create_dir_all(&dir)?;
    for (name, gog) in standard::catalog() {
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, serde_json::to_string(&gog)? + "\n")?;
        println!(
            "{:<20} {} vertices, normalizer condition {}  -> {}",
            name,
            gog.num_vertices(),
            check_normalizer_condition(&gog).label(),
            path.display()
        );
    }
    Ok(())
}
