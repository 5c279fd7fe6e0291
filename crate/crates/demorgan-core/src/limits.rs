/// Size guards for operations whose cost grows combinatorially.
///
/// Every limit can be raised by the caller; the defaults keep all
/// exhaustive scans at desk scale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest carrier accepted by products and congruence-lattice
    /// computations.
    pub max_algebra_size: usize,
    /// Largest carrier for the exhaustive partition oracle
    /// (Bell(10) = 115975 partitions).
    pub bell_cap: usize,
    /// Largest dual space accepted by morphism enumeration and by the
    /// dual-space enumerator.
    pub max_dual_points: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_algebra_size: 64,
            bell_cap: 10,
            max_dual_points: 7,
        }
    }
}

impl Limits {
    /// Limits with `max_algebra_size` raised to at least `n`.
    pub fn with_min_algebra_size(mut self, n: usize) -> Self {
        if self.max_algebra_size < n {
            self.max_algebra_size = n;
        }
        self
    }
}
