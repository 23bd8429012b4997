//! Linear algebra over the binary field and filtered reduction of grid
//! complexes.
//!
//! [`filtered_reduce`] is the fast path: iterated cancellation in order of
//! increasing filtration drop. [`tau_jump_oracle`] computes the same jump
//! levels straight from the definition, as ranks of the maps
//! `H_m(Filt_r) → H_m(C)`, and is kept independent of the reduction.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use crate::chain::{FilteredComplex, Mode};
use crate::error::{Error, Result};
use crate::grading::{Bigrading, HalfInt};

/// Dense bit vector with word-level XOR.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = BitVec::zeros(len);
        for i in ones {
            v.toggle(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        if self.get(i) != value {
            self.toggle(i);
        }
    }

    pub fn toggle(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit.
    pub fn lowest_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

/// Row-reduced basis that accepts vectors one at a time and reports whether
/// each one increased the rank.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    by_pivot: HashMap<usize, BitVec>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        EchelonBasis {
            by_pivot: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.by_pivot.len()
    }

    /// Adds `v` to the span; returns true when the rank grew.
    pub fn insert(&mut self, mut v: BitVec) -> bool {
        while let Some(p) = v.lowest_one() {
            match self.by_pivot.get(&p) {
                Some(b) => v.xor_assign(b),
                None => {
                    self.by_pivot.insert(p, v);
                    return true;
                }
            }
        }
        false
    }
}

impl Default for EchelonBasis {
    fn default() -> Self {
        Self::new()
    }
}

/// Dense matrix over the binary field, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: Vec<BitVec>,
    cols: usize,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows: vec![BitVec::zeros(cols); rows],
            cols,
        }
    }

    pub fn from_rows(rows: Vec<BitVec>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols));
        BitMatrix { rows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in 0..self.cols {
                if row.get(c) {
                    t.rows[c].toggle(r);
                }
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        let mut basis = EchelonBasis::new();
        for row in &self.rows {
            basis.insert(row.clone());
        }
        basis.rank()
    }

    /// Dimension of the right kernel.
    pub fn nullity(&self) -> usize {
        self.cols - self.transpose().rank()
    }
}

/// Surviving generators of a fully cancelled complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedComplex {
    generators: Vec<Bigrading>,
}

impl ReducedComplex {
    pub fn new(mut generators: Vec<Bigrading>) -> Self {
        generators.sort();
        ReducedComplex { generators }
    }

    pub fn generators(&self) -> &[Bigrading] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Levels per Maslov grading, each list sorted.
    pub fn levels_by_maslov(&self) -> BTreeMap<i64, Vec<HalfInt>> {
        let mut out: BTreeMap<i64, Vec<HalfInt>> = BTreeMap::new();
        for g in &self.generators {
            out.entry(g.maslov).or_default().push(g.alexander);
        }
        for v in out.values_mut() {
            v.sort();
        }
        out
    }
}

fn sym_diff(a: &[u32], b: &[u32]) -> Vec<u32> {
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

fn remove_sorted(v: &mut Vec<u32>, x: u32) {
    if let Ok(i) = v.binary_search(&x) {
        v.remove(i);
    }
}

/// Cancellation state: forward and backward adjacency of the live part of
/// the complex.
struct Cancellation {
    out: Vec<Vec<u32>>,
    inc: Vec<Vec<u32>>,
    alive: Vec<bool>,
    alexander: Vec<i32>,
}

impl Cancellation {
    fn new(c: &FilteredComplex) -> Self {
        let n = c.len();
        let mut out = Vec::with_capacity(n);
        let mut inc: Vec<Vec<u32>> = vec![Vec::new(); n];
        for g in 0..n {
            let targets: Vec<u32> = c.boundary(g).map(|(t, _)| t as u32).collect();
            for &t in &targets {
                inc[t as usize].push(g as u32);
            }
            out.push(targets);
        }
        // Sources are pushed in increasing order, so every list is sorted.
        Cancellation {
            out,
            inc,
            alive: vec![true; n],
            alexander: (0..n).map(|g| c.alexander(g).doubled() as i32).collect(),
        }
    }

    fn drop(&self, a: u32, b: u32) -> i32 {
        (self.alexander[a as usize] - self.alexander[b as usize]) / 2
    }

    /// Cancels the arrow `x → y`; returns the generators whose boundary
    /// changed.
    fn cancel(&mut self, x: u32, y: u32) -> Vec<u32> {
        let (xu, yu) = (x as usize, y as usize);
        let outs: Vec<u32> = self.out[xu].iter().copied().filter(|&b| b != y).collect();
        let ins: Vec<u32> = self.inc[yu].iter().copied().filter(|&a| a != x).collect();

        for &a in &ins {
            let updated = sym_diff(&self.out[a as usize], &outs);
            self.out[a as usize] = updated;
            remove_sorted(&mut self.out[a as usize], y);
        }
        for &b in &outs {
            let updated = sym_diff(&self.inc[b as usize], &ins);
            self.inc[b as usize] = updated;
            remove_sorted(&mut self.inc[b as usize], x);
        }
        for c in std::mem::take(&mut self.inc[xu]) {
            remove_sorted(&mut self.out[c as usize], x);
        }
        for c in std::mem::take(&mut self.out[yu]) {
            remove_sorted(&mut self.inc[c as usize], y);
        }
        self.out[xu].clear();
        self.inc[yu].clear();
        self.alive[xu] = false;
        self.alive[yu] = false;
        ins
    }

    fn min_drop(&self) -> Option<i32> {
        (0..self.out.len())
            .filter(|&g| self.alive[g])
            .flat_map(|g| self.out[g].iter().map(move |&t| (g, t)))
            .map(|(g, t)| self.drop(g as u32, t))
            .min()
    }
}

/// Reduces a filtered complex to zero differential by cancelling arrows in
/// order of increasing filtration drop.
///
/// Within one drop value sources are visited by `(A, M, rank)` and each is
/// paired with its lowest-ranked target of that drop. Cancelling `x → y`
/// adds `a → b` for every `a → y`, `x → b`; the new drop is at least the
/// current one, so surviving levels are the jump levels of the filtration.
pub fn filtered_reduce(c: &FilteredComplex) -> Result<ReducedComplex> {
    if !c.is_verified() {
        c.check_square_zero()?;
    }
    let n = c.len();
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_by_key(|&g| (c.alexander(g as usize), c.maslov(g as usize), g));
    let mut position = vec![0u32; n];
    for (p, &g) in order.iter().enumerate() {
        position[g as usize] = p as u32;
    }

    let mut state = Cancellation::new(c);
    let mut current = state.min_drop();
    while let Some(d) = current {
        let mut work: BTreeSet<u32> = (0..n)
            .filter(|&g| state.alive[g] && !state.out[g].is_empty())
            .map(|g| position[g])
            .collect();
        while let Some(p) = work.pop_first() {
            let x = order[p as usize];
            if !state.alive[x as usize] {
                continue;
            }
            let target = state.out[x as usize]
                .iter()
                .copied()
                .find(|&t| state.drop(x, t) == d);
            if let Some(y) = target {
                for a in state.cancel(x, y) {
                    work.insert(position[a as usize]);
                }
            }
        }
        let next = state.min_drop();
        if let Some(nd) = next {
            if nd <= d {
                return Err(Error::Inconsistent(format!(
                    "cancellation left an arrow of drop {nd} after clearing drop {d}"
                )));
            }
        }
        current = next;
    }

    let survivors = (0..n)
        .filter(|&g| state.alive[g])
        .map(|g| c.bigrading(g))
        .collect();
    Ok(ReducedComplex::new(survivors))
}

/// Generators of each Maslov grading, sorted by `(level, index)`.
fn by_maslov(c: &FilteredComplex) -> BTreeMap<i64, Vec<usize>> {
    let mut map: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for g in 0..c.len() {
        map.entry(c.maslov(g)).or_default().push(g);
    }
    for v in map.values_mut() {
        v.sort_by_key(|&g| (c.alexander(g), g));
    }
    map
}

/// Jump levels of `H_m(Filt_r) → H_m(C)` for every Maslov grading `m`.
///
/// With `F` the generators of level at most `r` in grading `m`,
/// `dim Im = |F| − rank(∂_m|F) − rank ∂_{m+1} + rank(π_{∉F} ∂_{m+1})`,
/// each rank computed by adding columns (resp. rows) in filtration order.
pub fn tau_jump_oracle(c: &FilteredComplex) -> BTreeMap<i64, Vec<HalfInt>> {
    let groups = by_maslov(c);
    let empty = Vec::new();
    let index_of: HashMap<usize, usize> = groups
        .values()
        .flat_map(|v| v.iter().enumerate().map(|(i, &g)| (g, i)))
        .collect();

    let per_grading: Vec<(i64, Vec<HalfInt>)> = groups
        .par_iter()
        .map(|(&m, gens)| {
            let below = groups.get(&(m - 1)).unwrap_or(&empty);
            let above = groups.get(&(m + 1)).unwrap_or(&empty);

            // Column ranks of ∂_m restricted to Filt_r, by level.
            let mut col_basis = EchelonBasis::new();
            let mut col_rank_at: Vec<usize> = Vec::with_capacity(gens.len());
            for &g in gens {
                let v = BitVec::from_indices(below.len(), c.boundary(g).map(|(t, _)| index_of[&t]));
                col_basis.insert(v);
                col_rank_at.push(col_basis.rank());
            }

            // Rows of ∂_{m+1} indexed by generators of grading m.
            let mut rows: Vec<Vec<usize>> = vec![Vec::new(); gens.len()];
            for (j, &s) in above.iter().enumerate() {
                for (t, _) in c.boundary(s) {
                    rows[index_of[&t]].push(j);
                }
            }
            let total_rank = {
                let mut b = EchelonBasis::new();
                for &s in above {
                    b.insert(BitVec::from_indices(
                        gens.len(),
                        c.boundary(s).map(|(t, _)| index_of[&t]),
                    ));
                }
                b.rank()
            };
            // Row rank over generators strictly above each cut, descending.
            let mut row_basis = EchelonBasis::new();
            let mut row_rank_above = vec![0usize; gens.len() + 1];
            for i in (0..gens.len()).rev() {
                row_basis.insert(BitVec::from_indices(above.len(), rows[i].iter().copied()));
                row_rank_above[i] = row_basis.rank();
            }

            let mut levels = Vec::new();
            let mut previous = 0usize;
            let mut i = 0;
            while i < gens.len() {
                let level = c.alexander(gens[i]);
                let mut j = i;
                while j < gens.len() && c.alexander(gens[j]) == level {
                    j += 1;
                }
                // Filt_r = gens[..j]
                let dim_im = j + row_rank_above[j] - col_rank_at[j - 1] - total_rank;
                for _ in previous..dim_im {
                    levels.push(level);
                }
                previous = dim_im;
                i = j;
            }
            (m, levels)
        })
        .collect();

    per_grading
        .into_iter()
        .filter(|(_, v)| !v.is_empty())
        .collect()
}

/// Homology ranks of the associated graded complex per `(M, A)`.
pub fn bigraded_homology(c: &FilteredComplex) -> Result<BTreeMap<(i64, HalfInt), usize>> {
    if c.mode() != Mode::Graded {
        return Err(Error::Inconsistent(
            "bigraded homology requires the graded complex".into(),
        ));
    }
    let mut blocks: BTreeMap<(i64, HalfInt), Vec<usize>> = BTreeMap::new();
    for g in 0..c.len() {
        blocks
            .entry((c.maslov(g), c.alexander(g)))
            .or_default()
            .push(g);
    }
    let index_of: HashMap<usize, usize> = blocks
        .values()
        .flat_map(|v| v.iter().enumerate().map(|(i, &g)| (g, i)))
        .collect();

    // Rank of ∂ leaving each block.
    let ranks: BTreeMap<(i64, HalfInt), usize> = blocks
        .par_iter()
        .map(|(&(m, a), gens)| {
            let width = blocks.get(&(m - 1, a)).map_or(0, Vec::len);
            let mut basis = EchelonBasis::new();
            for &g in gens {
                let v = BitVec::from_indices(width, c.boundary(g).map(|(t, _)| index_of[&t]));
                basis.insert(v);
            }
            ((m, a), basis.rank())
        })
        .collect();

    let mut out = BTreeMap::new();
    for (&(m, a), gens) in &blocks {
        let outgoing = ranks[&(m, a)];
        let incoming = ranks.get(&(m + 1, a)).copied().unwrap_or(0);
        let h = gens.len() - outgoing - incoming;
        debug_assert!(outgoing + (gens.len() - outgoing) == gens.len());
        if h > 0 {
            out.insert((m, a), h);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{build_filtered_complex, build_graded_complex, BuildOptions};
    use crate::grid::{fixture_by_name, GridDiagram};

    fn bg(m: i64, a2: i64) -> Bigrading {
        Bigrading::new(m, HalfInt::from_doubled(a2))
    }

    #[test]
    fn bitmatrix_rank_and_transpose() {
        let mut m = BitMatrix::zeros(3, 4);
        m.set(0, 0, true);
        m.set(0, 1, true);
        m.set(1, 1, true);
        m.set(1, 2, true);
        m.set(2, 0, true);
        m.set(2, 2, true);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.transpose().rank(), 2);
        assert_eq!(m.rank() + m.nullity(), m.ncols());
    }

    #[test]
    fn unknot_reduction_and_oracle() {
        let c = build_filtered_complex(&GridDiagram::unknot(), &BuildOptions::default()).unwrap();
        let r = filtered_reduce(&c).unwrap();
        assert_eq!(r.generators(), &[bg(-1, -2), bg(0, 0)]);
        let oracle = tau_jump_oracle(&c);
        assert_eq!(oracle[&0], vec![HalfInt::ZERO]);
        assert_eq!(oracle[&-1], vec![HalfInt::from_int(-1)]);
    }

    #[test]
    fn zero_differential_is_identity() {
        let gens = vec![bg(0, 2), bg(0, 0), bg(-1, 4)];
        let c = FilteredComplex::from_parts(&gens, &[], 2, 1, Mode::Filtered).unwrap();
        let r = filtered_reduce(&c).unwrap();
        assert_eq!(r, ReducedComplex::new(gens));
    }

    #[test]
    fn filtered_square_is_rejected() {
        // a → b, a → c, b → d, c → e: ∂²(a) = d + e ≠ 0.
        let gens = vec![bg(2, 4), bg(1, 2), bg(1, 2), bg(0, 0), bg(0, 0)];
        let err = FilteredComplex::from_parts(
            &gens,
            &[(0, 1), (0, 2), (1, 3), (2, 4)],
            3,
            1,
            Mode::Filtered,
        );
        assert!(matches!(err, Err(Error::Inconsistent(_))));
    }

    #[test]
    fn staircase_jump_levels() {
        // a → b has drop 1, c → b drop 0. The homology class a + c of
        // grading 1 first appears at level 2.
        let gens = vec![bg(1, 4), bg(0, 2), bg(1, 2), bg(0, 0)];
        let arrows = [(0, 1), (2, 1)];
        let c = FilteredComplex::from_parts(&gens, &arrows, 3, 1, Mode::Filtered).unwrap();
        let r = filtered_reduce(&c).unwrap();
        let oracle = tau_jump_oracle(&c);
        assert_eq!(r.levels_by_maslov(), oracle);
        assert_eq!(oracle[&1], vec![HalfInt::from_int(2)]);
        assert_eq!(oracle[&0], vec![HalfInt::ZERO]);
    }

    #[test]
    fn reduction_matches_oracle_on_fixtures() {
        for f in crate::grid::fixtures() {
            let c = build_filtered_complex(&f.grid, &BuildOptions::default()).unwrap();
            let r = filtered_reduce(&c).unwrap();
            assert_eq!(r.len(), 1 << (f.grid.size() - 1), "{}", f.name);
            assert_eq!(r.levels_by_maslov(), tau_jump_oracle(&c), "{}", f.name);
        }
    }

    #[test]
    fn unknot_graded_homology() {
        let c = build_graded_complex(&GridDiagram::unknot(), &BuildOptions::default()).unwrap();
        let h = bigraded_homology(&c).unwrap();
        assert_eq!(h.len(), 2);
        assert_eq!(h[&(0, HalfInt::ZERO)], 1);
        assert_eq!(h[&(-1, HalfInt::from_int(-1))], 1);
        let f = build_filtered_complex(
            &fixture_by_name("trefoil5").unwrap().grid,
            &BuildOptions::default(),
        )
        .unwrap();
        assert!(bigraded_homology(&f).is_err());
    }
}
