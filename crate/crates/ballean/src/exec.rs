//! Execution helpers for the brute-force inner loops.
//!
//! Independent work items (catalog instances, subset pairs, cover pieces)
//! are mapped in parallel with rayon when the `parallel` feature is enabled
//! and sequentially otherwise. Output order always matches input order, so
//! reports are identical under both modes.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `items`, preserving input order in the output.
pub fn map_ordered<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Sequential twin of [`map_ordered`], kept available under every feature
/// set so benchmarks can compare both lanes on the same workload.
pub fn map_ordered_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_lanes_agree() {
        let items: Vec<u64> = (0..1000).collect();
        let f = |x: &u64| x * x + 1;
        assert_eq!(map_ordered(&items, f), map_ordered_seq(&items, f));
    }
}
