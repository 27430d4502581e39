//! Data-parallel mapping with a sequential fallback.
//!
//! The heavy inner loops (lattice enumeration, patch censuses, region
//! counting) are embarrassingly parallel over immutable inputs. With the
//! `parallel` feature (default) they fan out through rayon; without it the
//! same entry points run sequentially. Outputs preserve input order, so
//! results are identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution strategy for the data-parallel entry points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    /// Parallel when the `parallel` feature is enabled, sequential otherwise.
    Auto,
}

pub fn map<T, U, F>(mode: ExecMode, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match mode {
        ExecMode::Sequential => items.iter().map(f).collect(),
        ExecMode::Auto => map_auto(items, f),
    }
}

#[cfg(feature = "parallel")]
fn map_auto<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_auto<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

pub fn flat_map<T, U, F>(mode: ExecMode, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Vec<U> + Sync + Send,
{
    match mode {
        ExecMode::Sequential => items.iter().flat_map(f).collect(),
        ExecMode::Auto => flat_map_auto(items, f),
    }
}

#[cfg(feature = "parallel")]
fn flat_map_auto<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Vec<U> + Sync + Send,
{
    items.par_iter().flat_map_iter(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn flat_map_auto<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> Vec<U>,
{
    items.iter().flat_map(f).collect()
}
