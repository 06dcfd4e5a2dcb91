//! Persistence barcodes over the two-element field.
//!
//! The reduction is the standard left-to-right column algorithm on sparse
//! columns, processed one dimension at a time from the top down so that
//! pivot rows can be cleared before their own columns are ever reduced.
//! [`betti_numbers_at`] recomputes ranks densely and independently; it is the
//! oracle the reduction is tested against.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::complex::FilteredComplex;
use crate::error::{Error, Result};

/// One bar: a homology class of degree `dim` alive on `[birth, death)`.
/// Essential classes carry `death = f64::INFINITY`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub dim: usize,
    pub birth: f64,
    pub death: f64,
}

impl Interval {
    pub fn is_essential(&self) -> bool {
        self.death.is_infinite()
    }

    /// `death - birth`, with infinite deaths clipped to `cap`.
    pub fn lifespan(&self, cap: f64) -> f64 {
        if self.is_essential() {
            (cap - self.birth).max(0.0)
        } else {
            self.death - self.birth
        }
    }
}

/// A multiset of intervals, kept sorted by (dim, birth, death).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Barcode {
    intervals: Vec<Interval>,
}

impl Barcode {
    pub fn new(mut intervals: Vec<Interval>) -> Self {
        intervals.sort_by(cmp_intervals);
        Barcode { intervals }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn in_dim(&self, dim: usize) -> impl Iterator<Item = &Interval> {
        self.intervals.iter().filter(move |i| i.dim == dim)
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Bars of degree `dim` alive at `eps`, i.e. `birth <= eps < death`.
    pub fn alive_at(&self, dim: usize, eps: f64) -> usize {
        self.in_dim(dim).filter(|i| i.birth <= eps && eps < i.death).count()
    }

    /// TSV rendering with '#' header comments, 12 significant digits and
    /// "inf" for essential deaths.
    pub fn to_tsv(&self, header: &[String]) -> String {
        let mut out = String::new();
        for line in header {
            let _ = writeln!(out, "# {line}");
        }
        out.push_str("dim\tbirth\tdeath\n");
        for i in &self.intervals {
            let death = if i.is_essential() { "inf".to_string() } else { format!("{:.11e}", i.death) };
            let _ = writeln!(out, "{}\t{:.11e}\t{}", i.dim, i.birth, death);
        }
        out
    }

    pub fn parse_tsv(text: &str) -> Result<Barcode> {
        let mut intervals = Vec::new();
        let mut saw_header = false;
        for (lineno, line) in text.lines().enumerate() {
            let row = lineno + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            if !saw_header {
                if trimmed != "dim\tbirth\tdeath" {
                    return Err(Error::parse(row, "expected header 'dim<TAB>birth<TAB>death'"));
                }
                saw_header = true;
                continue;
            }
            let fields: Vec<&str> = trimmed.split('\t').collect();
            if fields.len() != 3 {
                return Err(Error::parse(row, format!("expected 3 fields, got {}", fields.len())));
            }
            let dim: usize =
                fields[0].parse().map_err(|_| Error::parse(row, format!("bad dim {:?}", fields[0])))?;
            let birth: f64 =
                fields[1].parse().map_err(|_| Error::parse(row, format!("bad birth {:?}", fields[1])))?;
            let death: f64 = if fields[2] == "inf" {
                f64::INFINITY
            } else {
                fields[2].parse().map_err(|_| Error::parse(row, format!("bad death {:?}", fields[2])))?
            };
            intervals.push(Interval { dim, birth, death });
        }
        if !saw_header {
            return Err(Error::EmptyInput);
        }
        Ok(Barcode::new(intervals))
    }
}

fn cmp_intervals(a: &Interval, b: &Interval) -> std::cmp::Ordering {
    a.dim.cmp(&b.dim).then(a.birth.total_cmp(&b.birth)).then(a.death.total_cmp(&b.death))
}

// ---------------------------------------------------------------------------
// Filtration order
// ---------------------------------------------------------------------------

/// All simplices ordered by (value, dimension, vertex tuple); faces strictly
/// precede cofaces. Re-validates monotonicity and fails with
/// [`Error::InvalidComplex`] if violated.
pub fn sort_filtration(complex: &FilteredComplex) -> Result<Vec<(Vec<u32>, f64)>> {
    complex.validate()?;
    let mut rows: Vec<(Vec<u32>, f64)> = Vec::with_capacity(complex.n_simplices());
    for dim in 0..=complex.dmax() {
        for (s, v) in complex.simplices_in_dim(dim) {
            rows.push((s.to_vec(), v));
        }
    }
    rows.sort_by(|a, b| {
        a.1.total_cmp(&b.1).then(a.0.len().cmp(&b.0.len())).then_with(|| a.0.cmp(&b.0))
    });
    Ok(rows)
}

// ---------------------------------------------------------------------------
// Reduction
// ---------------------------------------------------------------------------

/// Symmetric difference of two sorted index lists.
fn add_columns(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut x, mut y) = (0, 0);
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            std::cmp::Ordering::Less => {
                out.push(a[x]);
                x += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[y]);
                y += 1;
            }
            std::cmp::Ordering::Equal => {
                x += 1;
                y += 1;
            }
        }
    }
    out.extend_from_slice(&a[x..]);
    out.extend_from_slice(&b[y..]);
    out
}

/// Barcode of the filtered complex up to homology degree `max_dim`.
///
/// Finite deaths in degree `max_dim` require simplices of dimension
/// `max_dim + 1`; on a truncated complex the unpaired classes surface as
/// essential bars instead. Zero-length intervals are dropped.
pub fn compute_persistence(complex: &FilteredComplex, max_dim: usize) -> Result<Barcode> {
    complex.validate()?;
    let dmax = complex.dmax();
    let top = dmax.min(max_dim + 1);

    // Per-dimension filtration values, in each layer's sorted order.
    let values: Vec<Vec<f64>> =
        (0..=dmax).map(|d| complex.simplices_in_dim(d).map(|(_, v)| v).collect()).collect();

    let mut cleared: Vec<Vec<bool>> = (0..=dmax).map(|d| vec![false; complex.len_dim(d)]).collect();
    let mut intervals: Vec<Interval> = Vec::new();

    for p in (1..=top).rev() {
        // Row indices are positions of (p-1)-simplices in filtration order.
        let mut row_of: HashMap<&[u32], u32> = HashMap::with_capacity(complex.len_dim(p - 1));
        for (idx, (s, _)) in complex.simplices_in_dim(p - 1).enumerate() {
            row_of.insert(s, idx as u32);
        }

        let mut pivot_to_col: HashMap<u32, Vec<u32>> = HashMap::new();
        let mut facet = Vec::with_capacity(p);
        for (j, (s, _)) in complex.simplices_in_dim(p).enumerate() {
            if cleared[p][j] {
                continue; // known zero column: its class is already paired
            }
            let mut col: Vec<u32> = Vec::with_capacity(p + 1);
            for drop in 0..=p {
                facet.clear();
                facet.extend(s.iter().enumerate().filter(|(k, _)| *k != drop).map(|(_, &v)| v));
                col.push(row_of[facet.as_slice()]);
            }
            col.sort_unstable();
            loop {
                match col.last() {
                    None => {
                        // Zero column: a class of degree p is born. Killers
                        // of degree p + 1 were already processed (or do not
                        // exist), so an unpaired birth here is essential.
                        if p <= max_dim {
                            intervals.push(Interval {
                                dim: p,
                                birth: values[p][j],
                                death: f64::INFINITY,
                            });
                        }
                        break;
                    }
                    Some(&low) => match pivot_to_col.get(&low) {
                        Some(other) => col = add_columns(&col, other),
                        None => {
                            let birth = values[p - 1][low as usize];
                            let death = values[p][j];
                            if birth != death {
                                intervals.push(Interval { dim: p - 1, birth, death });
                            }
                            cleared[p - 1][low as usize] = true;
                            pivot_to_col.insert(low, col);
                            break;
                        }
                    },
                }
            }
        }
    }

    // Degree 0: vertices never paired by an edge are essential components.
    for &was_cleared in &cleared[0] {
        if !was_cleared {
            intervals.push(Interval { dim: 0, birth: 0.0, death: f64::INFINITY });
        }
    }

    Ok(Barcode::new(intervals))
}

// ---------------------------------------------------------------------------
// Betti-number oracle
// ---------------------------------------------------------------------------

/// GF(2) rank of a dense bit matrix given as columns of u64 words.
fn gf2_rank(mut columns: Vec<Vec<u64>>) -> usize {
    let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut rank = 0;
    'cols: for col in columns.iter_mut() {
        loop {
            let top = match highest_bit(col) {
                Some(t) => t,
                None => continue 'cols,
            };
            match pivots.iter().find(|(p, _)| *p == top) {
                Some((_, other)) => {
                    for (w, o) in col.iter_mut().zip(other) {
                        *w ^= o;
                    }
                }
                None => {
                    pivots.push((top, col.clone()));
                    rank += 1;
                    continue 'cols;
                }
            }
        }
    }
    rank
}

fn highest_bit(words: &[u64]) -> Option<usize> {
    for (i, &w) in words.iter().enumerate().rev() {
        if w != 0 {
            return Some(i * 64 + 63 - w.leading_zeros() as usize);
        }
    }
    None
}

/// Betti numbers over GF(2) of the sublevel complex `{s : value(s) <= eps}`,
/// computed by dense rank of the boundary operators. This is deliberately a
/// separate code path from the sparse reduction.
pub fn betti_numbers_at(complex: &FilteredComplex, eps: f64, max_dim: usize) -> Result<Vec<usize>> {
    complex.validate()?;
    let dmax = complex.dmax();

    // Sublevel simplices per dimension, with their row index.
    let mut present: Vec<HashMap<Vec<u32>, usize>> = Vec::with_capacity(dmax + 1);
    for dim in 0..=dmax {
        let mut map = HashMap::new();
        for (s, v) in complex.simplices_in_dim(dim) {
            if v <= eps {
                let idx = map.len();
                map.insert(s.to_vec(), idx);
            }
        }
        present.push(map);
    }

    let rank_of_boundary = |p: usize| -> usize {
        if p == 0 || p > dmax || present[p].is_empty() {
            return 0;
        }
        let rows = present[p - 1].len();
        let words = rows.div_ceil(64);
        let mut columns = Vec::with_capacity(present[p].len());
        for s in present[p].keys() {
            let mut col = vec![0u64; words];
            for drop in 0..s.len() {
                let facet: Vec<u32> =
                    s.iter().enumerate().filter(|(k, _)| *k != drop).map(|(_, &v)| v).collect();
                let row = present[p - 1][&facet];
                col[row / 64] ^= 1u64 << (row % 64);
            }
            columns.push(col);
        }
        gf2_rank(columns)
    };

    let mut betti = Vec::with_capacity(max_dim + 1);
    for p in 0..=max_dim {
        if p > dmax {
            betti.push(0);
            continue;
        }
        let count = present[p].len();
        betti.push(count - rank_of_boundary(p) - rank_of_boundary(p + 1));
    }
    Ok(betti)
}
