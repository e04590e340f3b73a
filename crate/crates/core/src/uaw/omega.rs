use std::fmt;

use serde::{Deserialize, Serialize};

use super::element::write_powers;

/// Exponents of `A^i B^j C^k Ω^l α^r β^s γ^t` with `ijk = 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OmegaWord {
    pub i: u32,
    pub j: u32,
    pub k: u32,
    pub l: u32,
    pub r: u32,
    pub s: u32,
    pub t: u32,
}

impl OmegaWord {
    pub fn new(i: u32, j: u32, k: u32, l: u32, r: u32, s: u32, t: u32) -> Self {
        debug_assert!(i == 0 || j == 0 || k == 0, "ijk must vanish");
        OmegaWord { i, j, k, l, r, s, t }
    }

    /// Filtration weight `i + j + k + 3l + r + s + t`.
    pub fn weight(&self) -> u32 {
        self.i + self.j + self.k + 3 * self.l + self.r + self.s + self.t
    }
}

impl fmt::Display for OmegaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_powers(
            f,
            &[
                ("A", self.i),
                ("B", self.j),
                ("C", self.k),
                ("Om", self.l),
                ("al", self.r),
                ("be", self.s),
                ("ga", self.t),
            ],
        )
    }
}
