//! Parallel/sequential execution switch.
//!
//! With the default `parallel` feature the loops below run on rayon; without
//! it they run sequentially. Outputs are collected in index order either way,
//! so every caller observes identical results regardless of scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `0..n`, returning results in index order.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Minimum of `f` over `0..n` under `cmp`, with the lowest index winning ties.
pub fn min_indexed<T, F, C>(n: usize, f: F, cmp: C) -> Option<(usize, T)>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
    C: Fn(&T, &T) -> std::cmp::Ordering + Sync + Send,
{
    let pick = |acc: Option<(usize, T)>, item: (usize, T)| match acc {
        None => Some(item),
        Some(best) => match cmp(&item.1, &best.1) {
            std::cmp::Ordering::Less => Some(item),
            std::cmp::Ordering::Equal if item.0 < best.0 => Some(item),
            _ => Some(best),
        },
    };
    #[cfg(feature = "parallel")]
    {
        (0..n)
            .into_par_iter()
            .map(|i| (i, f(i)))
            .fold(|| None, pick)
            .reduce(
                || None,
                |a, b| match (a, b) {
                    (None, x) | (x, None) => x,
                    (Some(a), Some(b)) => pick(Some(a), b),
                },
            )
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(|i| (i, f(i))).fold(None, pick)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order() {
        let out = map_indexed(100, |i| i * i);
        assert_eq!(out[7], 49);
        assert_eq!(out.len(), 100);
    }

    #[test]
    fn min_breaks_ties_by_lowest_index() {
        let values = [3.0, 1.0, 2.0, 1.0];
        let (idx, best) =
            min_indexed(4, |i| values[i], |a: &f64, b: &f64| a.partial_cmp(b).unwrap()).unwrap();
        assert_eq!(idx, 1);
        assert_eq!(best, 1.0);
    }
}
