/// Size caps for the exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of transition-monoid elements.
    pub max_monoid: usize,
    /// Maximum number of subsets visited by the power-automaton search.
    pub max_subsets: usize,
    /// Maximum number of congruences in a lattice enumeration.
    pub max_congruences: usize,
    /// Maximum number of reachable states in a product recognizer.
    pub max_product_states: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_monoid: 1_000_000,
            max_subsets: 1 << 20,
            max_congruences: 100_000,
            max_product_states: 1 << 20,
        }
    }
}
