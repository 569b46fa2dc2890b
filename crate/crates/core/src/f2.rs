//! Helpers for sets used as F2-vector spaces (addition is symmetric difference).

use std::collections::{BTreeSet, HashSet};
use std::hash::Hash;

/// Adds `t` to a hashed F2-combination.
#[inline]
pub fn toggle<T: Hash + Eq>(set: &mut HashSet<T>, t: T) {
    if !set.remove(&t) {
        set.insert(t);
    }
}

/// Adds `t` to an ordered F2-combination.
#[inline]
pub fn toggle_ord<T: Ord>(set: &mut BTreeSet<T>, t: T) {
    if !set.remove(&t) {
        set.insert(t);
    }
}

/// In-place sum of two ordered combinations.
pub fn add_assign<T: Ord + Clone>(acc: &mut BTreeSet<T>, other: &BTreeSet<T>) {
    for t in other {
        toggle_ord(acc, t.clone());
    }
}
