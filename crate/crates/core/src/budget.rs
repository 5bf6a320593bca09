/// Resource caps for the enumeration-heavy stages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of flats in a lattice.
    pub flats: usize,
    /// Maximum number of candidate subsets examined by subset enumeration.
    pub subsets: usize,
    /// Maximum number of chain monomials in one Chow ring degree.
    pub chow_monomials: usize,
    /// Maximum dimension parameter for the permutohedral fan.
    pub fan_dimension: usize,
    /// Above this many maximal chains the R3 check samples instead.
    pub max_chains: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            flats: 1_000_000,
            subsets: 1_000_000,
            chow_monomials: 20_000,
            fan_dimension: 6,
            max_chains: 5_000,
        }
    }
}

impl Budget {
    /// Applies a single scalar override to the flat and subset caps.
    pub fn with_enumeration_cap(mut self, cap: usize) -> Self {
        self.flats = cap;
        self.subsets = cap;
        self
    }
}
