//! Grid states, their gradings, empty rectangles, and the grid chain
//! complexes over the binary field.
//!
//! States are permutations `x` (column → row) and are enumerated in
//! lexicographic order, so a state is identified by its Lehmer-code rank.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grading::{Bigrading, HalfInt};
use crate::grid::GridDiagram;

/// Default upper bound on the grid size accepted by complex construction.
pub const DEFAULT_MAX_SIZE: usize = 10;

/// Hard ceiling: ranks are stored as `u32`, and 12! still fits.
pub const HARD_MAX_SIZE: usize = 12;

/// A point of the grid plane in doubled coordinates, so cell centres
/// `(i + ½, r + ½)` become odd integers.
pub type Point = (i64, i64);

fn sw_count(p: &[Point], q: &[Point]) -> i64 {
    let mut count = 0;
    for a in p {
        for b in q {
            if a.0 < b.0 && a.1 < b.1 {
                count += 1;
            }
        }
    }
    count
}

/// `J(P, Q) = (I(P, Q) + I(Q, P)) / 2`, with `I` counting pairs `(p, q)`
/// where `p` lies strictly south-west of `q`.
pub fn j_pairing(p: &[Point], q: &[Point]) -> HalfInt {
    HalfInt::from_doubled(sw_count(p, q) + sw_count(q, p))
}

/// Lattice points of a state, doubled.
pub fn state_points(x: &[u8]) -> Vec<Point> {
    x.iter()
        .enumerate()
        .map(|(i, &r)| (2 * i as i64, 2 * r as i64))
        .collect()
}

/// Cell centres of a marker set, doubled.
pub fn marker_points(rows: &[usize]) -> Vec<Point> {
    rows.iter()
        .enumerate()
        .map(|(i, &r)| (2 * i as i64 + 1, 2 * r as i64 + 1))
        .collect()
}

/// Maslov grading with respect to a marker set:
/// `M(x) = J(x,x) − 2J(x,M) + J(M,M) + 1`.
pub fn maslov(x: &[u8], markers: &[usize]) -> i64 {
    let n = x.len();
    let mut xx = 0i64;
    for i in 0..n {
        for j in i + 1..n {
            if x[i] < x[j] {
                xx += 1;
            }
        }
    }
    let mut xm = 0i64;
    let mut mm = 0i64;
    for i in 0..n {
        for j in 0..n {
            // (i, x_i) SW of (j+½, m_j+½), or (j+½, m_j+½) SW of (i, x_i)
            if i <= j && (x[i] as usize) <= markers[j] {
                xm += 1;
            }
            if j < i && markers[j] < x[i] as usize {
                xm += 1;
            }
            if i < j && markers[i] < markers[j] {
                mm += 1;
            }
        }
    }
    xx - xm + mm + 1
}

/// Alexander grading `½(M_O − M_X) − (n − ℓ)/2`.
pub fn alexander(x: &[u8], grid: &GridDiagram) -> HalfInt {
    alexander_with(x, grid, grid.components())
}

fn alexander_with(x: &[u8], grid: &GridDiagram, components: usize) -> HalfInt {
    let mo = maslov(x, grid.o());
    let mx = maslov(x, grid.x());
    HalfInt::from_doubled(mo - mx - (grid.size() as i64 - components as i64))
}

/// An empty rectangle from a state to the state obtained by exchanging the
/// rows of its two corner columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rectangle {
    /// Column of the lower-left corner.
    pub left: usize,
    /// Column of the upper-right corner.
    pub right: usize,
    pub o_count: u8,
    pub x_count: u8,
}

impl Rectangle {
    /// The target state.
    pub fn apply(&self, x: &[u8]) -> Vec<u8> {
        let mut y = x.to_vec();
        y.swap(self.left, self.right);
        y
    }
}

/// All empty rectangles starting at `x`, on the torus.
///
/// For each ordered pair of distinct columns `(i, j)` there is exactly one
/// rectangle with lower-left corner `(i, x_i)` and upper-right corner
/// `(j, x_j)`, wrapping around as needed; it is kept when no other point of
/// `x` lies in its interior.
pub fn empty_rectangles(x: &[u8], grid: &GridDiagram) -> Vec<Rectangle> {
    let mut out = Vec::new();
    for_each_empty_rectangle(x, grid.x(), grid.o(), |r| out.push(r));
    out
}

#[inline]
fn for_each_empty_rectangle(x: &[u8], xs: &[usize], os: &[usize], mut f: impl FnMut(Rectangle)) {
    let n = x.len();
    for i in 0..n {
        let bottom = x[i] as usize;
        for w in 1..n {
            let j = (i + w) % n;
            let h = (x[j] as usize + n - bottom) % n;
            if h == 0 {
                continue;
            }
            let mut empty = true;
            for dc in 1..w {
                let c = (i + dc) % n;
                let dr = (x[c] as usize + n - bottom) % n;
                if dr > 0 && dr < h {
                    empty = false;
                    break;
                }
            }
            if !empty {
                continue;
            }
            let mut o_count = 0u8;
            let mut x_count = 0u8;
            for dc in 0..w {
                let c = (i + dc) % n;
                if (os[c] + n - bottom) % n < h {
                    o_count += 1;
                }
                if (xs[c] + n - bottom) % n < h {
                    x_count += 1;
                }
            }
            f(Rectangle {
                left: i,
                right: j,
                o_count,
                x_count,
            });
        }
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Lexicographic rank of a permutation.
pub fn rank(x: &[u8]) -> u64 {
    let n = x.len();
    let mut remaining: u32 = (1u32 << n) - 1;
    let mut r = 0u64;
    for (k, &v) in x.iter().enumerate() {
        let below = (remaining & ((1u32 << v) - 1)).count_ones() as u64;
        r = r * (n - k) as u64 + below;
        remaining &= !(1u32 << v);
    }
    r
}

/// Inverse of [`rank`].
pub fn unrank(mut r: u64, n: usize) -> Vec<u8> {
    let mut digits = vec![0u64; n];
    for k in (0..n).rev() {
        let base = (n - k) as u64;
        digits[k] = r % base;
        r /= base;
    }
    let mut available: Vec<u8> = (0..n as u8).collect();
    digits
        .into_iter()
        .map(|d| available.remove(d as usize))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Rectangles avoid O markers; X markers counted as filtration drop.
    Filtered,
    /// Rectangles avoid both marker sets.
    Graded,
}

/// The grid complex over the binary field, stored as a sparse adjacency
/// list keyed by state rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex {
    size: usize,
    components: usize,
    mode: Mode,
    maslov: Vec<i32>,
    alexander: Vec<i32>,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    drops: Vec<u8>,
    verified: bool,
}

/// Limits applied when building complexes.
#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    pub max_size: usize,
    /// Verify ∂² = 0 after construction.
    pub check_square: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_size: DEFAULT_MAX_SIZE,
            check_square: true,
        }
    }
}

pub fn build_filtered_complex(grid: &GridDiagram, opts: &BuildOptions) -> Result<FilteredComplex> {
    FilteredComplex::build(grid, Mode::Filtered, opts)
}

pub fn build_graded_complex(grid: &GridDiagram, opts: &BuildOptions) -> Result<FilteredComplex> {
    FilteredComplex::build(grid, Mode::Graded, opts)
}

struct StateRow {
    maslov: i32,
    alexander: i32,
    arrows: Vec<(u32, u8)>,
}

impl FilteredComplex {
    pub fn build(grid: &GridDiagram, mode: Mode, opts: &BuildOptions) -> Result<Self> {
        let n = grid.size();
        let limit = opts.max_size.min(HARD_MAX_SIZE);
        if n > limit {
            return Err(Error::SizeLimit { size: n, limit });
        }
        let components = grid.components();
        let count = factorial(n);
        let xs = grid.x();
        let os = grid.o();

        let rows: Vec<StateRow> = (0..count)
            .into_par_iter()
            .map(|r| {
                let mut x = unrank(r, n);
                let mo = maslov(&x, os);
                let a = alexander_with(&x, grid, components).doubled();
                let mut arrows: Vec<(u32, u8)> = Vec::new();
                let mut found = Vec::new();
                for_each_empty_rectangle(&x, xs, os, |rect| {
                    let keep = rect.o_count == 0 && (mode == Mode::Filtered || rect.x_count == 0);
                    if keep {
                        found.push(rect);
                    }
                });
                for rect in found {
                    x.swap(rect.left, rect.right);
                    arrows.push((rank(&x) as u32, rect.x_count));
                    x.swap(rect.left, rect.right);
                }
                arrows.sort_unstable();
                // Coefficients are mod 2: drop pairs of parallel rectangles.
                let mut reduced: Vec<(u32, u8)> = Vec::with_capacity(arrows.len());
                for a in arrows {
                    if reduced.last().map(|l| l.0) == Some(a.0) {
                        reduced.pop();
                    } else {
                        reduced.push(a);
                    }
                }
                StateRow {
                    maslov: mo as i32,
                    alexander: a as i32,
                    arrows: reduced,
                }
            })
            .collect();

        let mut offsets = Vec::with_capacity(rows.len() + 1);
        let total: usize = rows.iter().map(|r| r.arrows.len()).sum();
        let mut targets = Vec::with_capacity(total);
        let mut drops = Vec::with_capacity(total);
        let mut maslov_v = Vec::with_capacity(rows.len());
        let mut alexander_v = Vec::with_capacity(rows.len());
        offsets.push(0);
        for row in rows {
            maslov_v.push(row.maslov);
            alexander_v.push(row.alexander);
            for (t, d) in row.arrows {
                targets.push(t);
                drops.push(d);
            }
            offsets.push(targets.len());
        }
        let mut complex = FilteredComplex {
            size: n,
            components,
            mode,
            maslov: maslov_v,
            alexander: alexander_v,
            offsets,
            targets,
            drops,
            verified: false,
        };
        if opts.check_square {
            complex.check_square_zero()?;
            complex.verified = true;
        }
        Ok(complex)
    }

    /// Assembles a complex directly from generators and arrows; used for
    /// small hand-made complexes.
    pub fn from_parts(
        gradings: &[Bigrading],
        arrows: &[(usize, usize)],
        size: usize,
        components: usize,
        mode: Mode,
    ) -> Result<Self> {
        let g = gradings.len();
        let mut adj: Vec<Vec<(u32, u8)>> = vec![Vec::new(); g];
        for &(s, t) in arrows {
            if s >= g || t >= g {
                return Err(Error::Inconsistent(format!("arrow {s}->{t} out of range")));
            }
            let drop = gradings[s].alexander.doubled() - gradings[t].alexander.doubled();
            if drop < 0 || drop % 2 != 0 || gradings[s].maslov - 1 != gradings[t].maslov {
                return Err(Error::Inconsistent(format!(
                    "arrow {s}->{t} breaks the grading laws"
                )));
            }
            adj[s].push((t as u32, (drop / 2) as u8));
        }
        let mut offsets = vec![0];
        let mut targets = Vec::new();
        let mut drops = Vec::new();
        for mut list in adj {
            list.sort_unstable();
            for (t, d) in list {
                targets.push(t);
                drops.push(d);
            }
            offsets.push(targets.len());
        }
        let c = FilteredComplex {
            size,
            components,
            mode,
            maslov: gradings.iter().map(|b| b.maslov as i32).collect(),
            alexander: gradings
                .iter()
                .map(|b| b.alexander.doubled() as i32)
                .collect(),
            offsets,
            targets,
            drops,
            verified: true,
        };
        c.check_square_zero()?;
        Ok(c)
    }

    /// Grid size `n`.
    pub fn grid_size(&self) -> usize {
        self.size
    }

    /// Number of link components `ℓ`.
    pub fn components(&self) -> usize {
        self.components
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.maslov.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maslov.is_empty()
    }

    /// Whether ∂² = 0 has already been checked.
    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn arrow_count(&self) -> usize {
        self.targets.len()
    }

    pub fn maslov(&self, g: usize) -> i64 {
        self.maslov[g] as i64
    }

    pub fn alexander(&self, g: usize) -> HalfInt {
        HalfInt::from_doubled(self.alexander[g] as i64)
    }

    pub fn bigrading(&self, g: usize) -> Bigrading {
        Bigrading::new(self.maslov(g), self.alexander(g))
    }

    /// Boundary of generator `g` as `(target, drop)` pairs, sorted by target.
    pub fn boundary(&self, g: usize) -> impl Iterator<Item = (usize, u8)> + '_ {
        let range = self.offsets[g]..self.offsets[g + 1];
        self.targets[range.clone()]
            .iter()
            .zip(&self.drops[range])
            .map(|(&t, &d)| (t as usize, d))
    }

    /// Checks ∂∘∂ = 0 over the binary field and the arrow-by-arrow grading
    /// laws.
    pub fn check_square_zero(&self) -> Result<()> {
        (0..self.len()).into_par_iter().try_for_each(|g| {
            let mut second: Vec<usize> = Vec::new();
            for (t, drop) in self.boundary(g) {
                if self.maslov[t] != self.maslov[g] - 1 {
                    return Err(Error::Inconsistent(format!(
                        "arrow {g}->{t} does not lower Maslov grading by one"
                    )));
                }
                if self.alexander[g] - self.alexander[t] != 2 * drop as i32 {
                    return Err(Error::Inconsistent(format!(
                        "arrow {g}->{t} has drop {drop} but Alexander difference {}",
                        HalfInt::from_doubled((self.alexander[g] - self.alexander[t]) as i64)
                    )));
                }
                second.extend(self.boundary(t).map(|(s, _)| s));
            }
            second.sort_unstable();
            let mut i = 0;
            while i < second.len() {
                let mut j = i;
                while j < second.len() && second[j] == second[i] {
                    j += 1;
                }
                if (j - i) % 2 == 1 {
                    return Err(Error::Inconsistent(format!(
                        "boundary squared is nonzero at generator {g}"
                    )));
                }
                i = j;
            }
            Ok(())
        })
    }
}
