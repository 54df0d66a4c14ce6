//! Gluing r-stars to s-stars into a connected graph of large girth.

use subconj::config::Limits;
use subconj::gluing::{glue_stars, glued_girth};

fn main() -> subconj::error::Result<()> {
    let limits = Limits::default();
    for (r, s, t) in [(2, 2, 8), (3, 2, 6), (4, 4, 10), (16, 2, 7), (128, 3, 7)] {
        let g = glue_stars(r, s, t, 1, &limits)?;
        println!(
            "r={r:<3} s={s} t={t:<2}: {} r-stars, {} s-stars, girth {}, valid {}",
            g.num_r,
            g.num_s,
            glued_girth(&g, 4 * t),
            g.validate().is_ok()
        );
    }
    println!("{}", serde_json::to_string(&glue_stars(2, 2, 8, 1, &limits)?)?);
    Ok(())
}
