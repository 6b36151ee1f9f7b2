//! Mod-2 homology and anti-persistence barcodes.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::complex::{facets, FilteredComplex};
use crate::error::{Error, Result};
use crate::scalar::{at_least, Scalar};

/// Default simplex-count limit for [`betti_numbers_naive`].
pub const DEFAULT_NAIVE_LIMIT: usize = 2000;

/// One anti-persistence interval. Classes are born at the larger scale
/// `birth` and die once the scale drops to `death` (`-inf` if never).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Bar<T> {
    pub dim: usize,
    pub birth: T,
    pub death: T,
}

/// Multiset of intervals, sorted by dimension, then decreasing birth and death.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Barcode<T> {
    pub bars: Vec<Bar<T>>,
}

impl<T: Scalar> Barcode<T> {
    fn sorted(mut bars: Vec<Bar<T>>) -> Self {
        bars.sort_by(|a, b| {
            a.dim
                .cmp(&b.dim)
                .then(b.birth.partial_cmp(&a.birth).unwrap_or(std::cmp::Ordering::Equal))
                .then(b.death.partial_cmp(&a.death).unwrap_or(std::cmp::Ordering::Equal))
        });
        Self { bars }
    }

    pub fn in_dim(&self, dim: usize) -> impl Iterator<Item = &Bar<T>> + '_ {
        self.bars.iter().filter(move |b| b.dim == dim)
    }

    /// Betti numbers of the slice at `r`: bars with `birth >= r > death`.
    pub fn betti_at(&self, r: T, max_dim: usize) -> Vec<usize> {
        let mut out = vec![0; max_dim + 1];
        for b in &self.bars {
            if b.dim <= max_dim && at_least(b.birth, r) && !at_least(b.death, r) {
                out[b.dim] += 1;
            }
        }
        out
    }
}

/// Sparse mod-2 column reduction over the canonical order; returns the
/// pivot row of each column, or `None` for columns reducing to zero.
fn reduce<T: Scalar>(complex: &FilteredComplex<T>, max_col_dim: usize) -> Vec<Option<usize>> {
    let simplices = complex.simplices();
    let mut low = vec![None; simplices.len()];
    let mut owner: HashMap<usize, usize> = HashMap::new();
    let mut reduced: Vec<Vec<usize>> = vec![Vec::new(); simplices.len()];
    for (j, s) in simplices.iter().enumerate() {
        if s.vertices.len() < 2 || s.dim() > max_col_dim {
            continue;
        }
        let mut col: Vec<usize> = facets(&s.vertices)
            .map(|f| complex.index_of(&f).expect("validated complex"))
            .collect();
        col.sort_unstable();
        while let Some(&pivot) = col.last() {
            match owner.get(&pivot) {
                Some(&k) => col = symmetric_difference(&col, &reduced[k]),
                None => break,
            }
        }
        if let Some(&pivot) = col.last() {
            owner.insert(pivot, j);
            low[j] = Some(pivot);
        }
        reduced[j] = col;
    }
    low
}

fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
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

fn check_cap<T: Scalar>(complex: &FilteredComplex<T>, max_dim: usize) -> Result<()> {
    if max_dim + 1 > complex.dim_cap() {
        return Err(Error::DimCapTooLow { dim_cap: complex.dim_cap(), max_dim });
    }
    Ok(())
}

/// Mod-2 Betti numbers `beta_0..=beta_max_dim`.
pub fn betti_numbers<T: Scalar>(complex: &FilteredComplex<T>, max_dim: usize) -> Result<Vec<usize>> {
    check_cap(complex, max_dim)?;
    let low = reduce(complex, max_dim + 1);
    let mut count = vec![0usize; max_dim + 2];
    let mut rank = vec![0usize; max_dim + 2];
    for (s, l) in complex.simplices().iter().zip(&low) {
        if s.dim() <= max_dim + 1 {
            count[s.dim()] += 1;
            if l.is_some() {
                rank[s.dim()] += 1;
            }
        }
    }
    Ok((0..=max_dim).map(|k| count[k] - rank[k] - rank[k + 1]).collect())
}

/// Dense Gaussian-elimination reference for [`betti_numbers`].
pub fn betti_numbers_naive<T: Scalar>(
    complex: &FilteredComplex<T>,
    max_dim: usize,
    limit: usize,
) -> Result<Vec<usize>> {
    check_cap(complex, max_dim)?;
    if complex.len() > limit {
        return Err(Error::SizeLimitExceeded { size: complex.len(), limit });
    }
    let mut by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); max_dim + 2];
    for s in complex.simplices() {
        if s.dim() <= max_dim + 1 {
            by_dim[s.dim()].push(s.vertices.clone());
        }
    }
    let rank_of = |k: usize| -> usize {
        if k == 0 || by_dim[k].is_empty() {
            return 0;
        }
        let rows: BTreeMap<&Vec<usize>, usize> =
            by_dim[k - 1].iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut m: Vec<Vec<bool>> = by_dim[k]
            .iter()
            .map(|s| {
                let mut col = vec![false; rows.len()];
                for skip in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(skip);
                    col[rows[&f]] = true;
                }
                col
            })
            .collect();
        gaussian_rank(&mut m)
    };
    let ranks: Vec<usize> = (0..=max_dim + 1).map(rank_of).collect();
    Ok((0..=max_dim)
        .map(|k| by_dim[k].len() - ranks[k] - ranks[k + 1])
        .collect())
}

fn gaussian_rank(m: &mut [Vec<bool>]) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c]) else { continue };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] {
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Anti-persistence barcode up to `max_dim`, reducing in canonical order.
///
/// Zero-length pairs are dropped; unpaired simplices give bars dying at `-inf`.
pub fn anti_persistence<T: Scalar>(complex: &FilteredComplex<T>, max_dim: usize) -> Result<Barcode<T>> {
    complex.validate()?;
    check_cap(complex, max_dim)?;
    let simplices = complex.simplices();
    let low = reduce(complex, max_dim + 1);
    let mut paired = vec![false; simplices.len()];
    let mut bars = Vec::new();
    for (j, l) in low.iter().enumerate() {
        if let Some(i) = *l {
            paired[i] = true;
            paired[j] = true;
            let (birth, death) = (simplices[i].value, simplices[j].value);
            if simplices[i].dim() <= max_dim && birth != death {
                bars.push(Bar { dim: simplices[i].dim(), birth, death });
            }
        }
    }
    for (i, s) in simplices.iter().enumerate() {
        if !paired[i] && s.dim() <= max_dim {
            bars.push(Bar { dim: s.dim(), birth: s.value, death: T::neg_infinity() });
        }
    }
    Ok(Barcode::sorted(bars))
}
