//! Inputs shared by the benchmarks.

use semipeano::{parse_presentation, Presentation, Signature, Symbol, Word};

/// Presentation mixing cycles, substitutions and a merge over three symbols.
pub fn mixed_presentation() -> Presentation {
    parse_presentation(
        "ops f g h\n\
         gens a b c d\n\
         rel a = f g h f g h a\n\
         rel f g h a = a\n\
         rel b = g g a\n\
         rel c = h f c\n\
         rel f d = f h f c\n",
    )
    .expect("valid presentation")
}

/// `{c = ω c}` for the given cycle word.
pub fn cycle_presentation(omega: &str) -> Presentation {
    parse_presentation(&format!("ops f g h\ngens c\nrel c = {omega} c\n")).expect("valid presentation")
}

/// Deterministic pseudo-random word over `symbols` letters.
pub fn word(symbols: u16, len: usize, seed: u64) -> Word {
    let mut state = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) | 1;
    (0..len)
        .map(|_| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            Symbol((state % symbols as u64) as u16)
        })
        .collect()
}

pub fn signature() -> Signature {
    Signature::new(["f", "g", "h"]).expect("valid signature")
}
