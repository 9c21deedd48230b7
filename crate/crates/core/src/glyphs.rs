//! Bundled test glyphs.
//!
//! `0` is 30x20 (noise filtering); `1`..`4` are 16x12 and drawn so that the
//! two Hebbian pairs (`1`->`2`, `3`->`4`) are separable with 3x3 coupling.

use crate::error::{Error, Result};
use crate::pattern::Pattern;

const ZERO: &str = include_str!("../assets/zero.pat");
const ONE: &str = include_str!("../assets/one.pat");
const TWO: &str = include_str!("../assets/two.pat");
const THREE: &str = include_str!("../assets/three.pat");
const FOUR: &str = include_str!("../assets/four.pat");

pub const GLYPH_NAMES: [&str; 5] = ["0", "1", "2", "3", "4"];

/// Looks a glyph up by name (`"0"`..`"4"`, or `zero`..`four`).
pub fn glyph(name: &str) -> Result<Pattern> {
    let text = match name {
        "0" | "zero" => ZERO,
        "1" | "one" => ONE,
        "2" | "two" => TWO,
        "3" | "three" => THREE,
        "4" | "four" => FOUR,
        _ => return Err(Error::Pattern(format!("unknown glyph {name:?}"))),
    };
    Pattern::parse(text)
}

/// The two associative training pairs `(cue, target)`.
pub fn associative_pairs() -> Vec<(Pattern, Pattern)> {
    let g = |n| glyph(n).expect("bundled glyph");
    vec![(g("1"), g("2")), (g("3"), g("4"))]
}
