//! The normalizer condition on edge groups, for the built-in examples.

use subconj::gog::{check_normalizer_condition, standard, NormalizerVerdict};

fn main() {
    for (name, gog) in standard::catalog() {
        match check_normalizer_condition(&gog) {
            NormalizerVerdict::Holds => println!("{name}: holds"),
            NormalizerVerdict::Fails { edge, subgroup, cycle } => println!(
                "{name}: fails at edge {edge}, subgroup {:?}, cycle of {} states",
                subgroup.elements(),
                cycle.len()
            ),
            NormalizerVerdict::Unknown { reason } => println!("{name}: unknown ({reason})"),
        }
    }
}
