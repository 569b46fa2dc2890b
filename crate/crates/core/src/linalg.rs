//! Sparse linear algebra over F2. Vectors are sorted lists of coordinates.

use std::collections::BTreeMap;

pub type SparseVec = Vec<usize>;

/// Sum of two sorted coordinate lists.
pub fn xor(a: &[usize], b: &[usize]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Builds a sorted vector from unsorted coordinates with F2 cancellation.
pub fn from_coords(mut coords: Vec<usize>) -> SparseVec {
    coords.sort_unstable();
    let mut out: Vec<usize> = Vec::with_capacity(coords.len());
    for c in coords {
        if out.last() == Some(&c) {
            out.pop();
        } else {
            out.push(c);
        }
    }
    out
}

/// Row echelon form keyed by lowest coordinate.
#[derive(Debug, Default, Clone)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Reduces the leading coordinate until it is not a pivot.
    pub fn reduce(&self, v: &[usize]) -> SparseVec {
        let mut v = v.to_vec();
        while let Some(&lead) = v.first() {
            match self.rows.get(&lead) {
                Some(row) => v = xor(&v, row),
                None => break,
            }
        }
        v
    }

    /// Reduces every coordinate that is a pivot.
    pub fn reduce_fully(&self, v: &[usize]) -> SparseVec {
        let mut v = v.to_vec();
        let mut idx = 0;
        while idx < v.len() {
            match self.rows.get(&v[idx]) {
                Some(row) => {
                    v = xor(&v, row);
                    // coordinates before idx are unaffected: row's lead is v[idx]
                }
                None => idx += 1,
            }
        }
        v
    }

    /// Inserts a vector; returns false if it was dependent.
    pub fn insert(&mut self, v: &[usize]) -> bool {
        let r = self.reduce(v);
        match r.first() {
            None => false,
            Some(&lead) => {
                self.rows.insert(lead, r);
                true
            }
        }
    }

    pub fn contains(&self, v: &[usize]) -> bool {
        self.reduce(v).is_empty()
    }

    /// The reduced row echelon basis, sorted by pivot.
    pub fn rref(&self) -> Vec<SparseVec> {
        let mut rows: Vec<(usize, SparseVec)> =
            self.rows.iter().map(|(k, v)| (*k, v.clone())).collect();
        // clear each pivot from every other row, from the back
        for i in (0..rows.len()).rev() {
            let (p, row) = rows[i].clone();
            for (j, other) in rows.iter_mut().enumerate() {
                if j != i && other.1.binary_search(&p).is_ok() {
                    other.1 = xor(&other.1, &row);
                }
            }
        }
        rows.into_iter().map(|(_, v)| v).collect()
    }
}

/// Basis of the kernel of the map sending basis vector `i` to `images[i]`,
/// in reduced echelon form with lowest-coordinate pivots.
pub fn kernel(images: &[SparseVec]) -> Vec<SparseVec> {
    // augmented rows: (image, combination)
    let mut pivots: BTreeMap<usize, (SparseVec, SparseVec)> = BTreeMap::new();
    let mut ker = Echelon::new();
    for (i, img) in images.iter().enumerate() {
        let mut v = img.clone();
        let mut combo = vec![i];
        while let Some(&lead) = v.first() {
            match pivots.get(&lead) {
                Some((row, c)) => {
                    v = xor(&v, row);
                    combo = xor(&combo, c);
                }
                None => break,
            }
        }
        match v.first() {
            None => {
                ker.insert(&combo);
            }
            Some(&lead) => {
                pivots.insert(lead, (v, combo));
            }
        }
    }
    ker.rref()
}

/// Rank of a list of vectors.
pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    vectors.iter().filter(|v| e.insert(v)).count()
}
