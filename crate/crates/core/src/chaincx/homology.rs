use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

/// A finitely generated abelian group `Z^betti ⊕ ⊕ Z/t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct HomologyGroup {
    pub betti: usize,
    /// Torsion coefficients, each > 1, in divisibility order.
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn zero() -> Self {
        HomologyGroup::default()
    }

    pub fn free(betti: usize) -> Self {
        HomologyGroup { betti, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    /// Builds the group from the ranks around it and the invariant factors of
    /// the incoming boundary.
    pub(crate) fn from_ranks(rank: usize, rank_out: usize, incoming: &[BigInt]) -> Self {
        let betti = rank - rank_out - incoming.len();
        let torsion = incoming.iter().filter(|d| !d.is_one()).cloned().collect();
        HomologyGroup { betti, torsion }
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" + "))
    }
}
