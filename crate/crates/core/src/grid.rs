//! Grid diagrams and the moves between them.
//!
//! Columns are indexed left to right and rows bottom to top. The marker of
//! column `i` in row `r` sits at the cell centre `(i + ½, r + ½)`. Each column
//! segment is oriented from its X to its O and each row segment from its O to
//! its X; vertical segments cross over horizontal ones.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grading::HalfInt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GridDiagram {
    x: Vec<usize>,
    o: Vec<usize>,
}

/// Which corner of the new 2×2 block receives the O marker when an X is
/// split by a stabilization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Corner {
    NorthEast,
    NorthWest,
    SouthEast,
    SouthWest,
}

impl Corner {
    pub const ALL: [Corner; 4] = [
        Corner::NorthEast,
        Corner::NorthWest,
        Corner::SouthEast,
        Corner::SouthWest,
    ];

    fn is_east(self) -> bool {
        matches!(self, Corner::NorthEast | Corner::SouthEast)
    }

    fn is_north(self) -> bool {
        matches!(self, Corner::NorthEast | Corner::NorthWest)
    }
}

impl FromStr for Corner {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ne" => Ok(Corner::NorthEast),
            "nw" => Ok(Corner::NorthWest),
            "se" => Ok(Corner::SouthEast),
            "sw" => Ok(Corner::SouthWest),
            other => Err(Error::Parse(format!("unknown corner '{other}'"))),
        }
    }
}

fn check_permutation(v: &[usize], n: usize) -> std::result::Result<(), String> {
    let mut seen = vec![false; n];
    for &r in v {
        if r >= n {
            return Err(format!("entry {r} out of range 0..{n}"));
        }
        if seen[r] {
            return Err(format!("entry {r} repeated"));
        }
        seen[r] = true;
    }
    Ok(())
}

fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

impl GridDiagram {
    /// Builds a grid from the X and O rows of each column (0-indexed).
    pub fn new(x: Vec<usize>, o: Vec<usize>) -> Result<Self> {
        let n = x.len();
        if n == 0 {
            return Err(Error::InvalidGrid("empty grid".into()));
        }
        if o.len() != n {
            return Err(Error::InvalidGrid(format!(
                "X has {} entries but O has {}",
                n,
                o.len()
            )));
        }
        check_permutation(&x, n).map_err(Error::XNotPermutation)?;
        check_permutation(&o, n).map_err(Error::ONotPermutation)?;
        if let Some(column) = (0..n).find(|&i| x[i] == o[i]) {
            return Err(Error::SharedCell { column });
        }
        Ok(GridDiagram { x, o })
    }

    pub fn size(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &[usize] {
        &self.x
    }

    pub fn o(&self) -> &[usize] {
        &self.o
    }

    /// The 2×2 grid of the unknot.
    pub fn unknot() -> Self {
        GridDiagram {
            x: vec![1, 0],
            o: vec![0, 1],
        }
    }

    /// Column following `c` along the link: down column `c` from X to O,
    /// then along the row of that O to its X.
    fn next_column(&self, c: usize, x_inv: &[usize]) -> usize {
        x_inv[self.o[c]]
    }

    /// Component index of every column, numbered in order of first column.
    pub fn column_components(&self) -> Vec<usize> {
        let n = self.size();
        let x_inv = inverse(&self.x);
        let mut label = vec![usize::MAX; n];
        let mut next_label = 0;
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            let mut c = start;
            while label[c] == usize::MAX {
                label[c] = next_label;
                c = self.next_column(c, &x_inv);
            }
            next_label += 1;
        }
        label
    }

    /// Number of link components: the cycle count of O⁻¹∘X.
    pub fn components(&self) -> usize {
        self.column_components()
            .into_iter()
            .max()
            .map_or(0, |m| m + 1)
    }

    pub fn mirror(&self) -> Self {
        let n = self.size();
        GridDiagram {
            x: (0..n).map(|i| self.x[n - 1 - i]).collect(),
            o: (0..n).map(|i| self.o[n - 1 - i]).collect(),
        }
    }

    /// Cyclic translation on the torus: column `i` moves to `i + dc` and row
    /// `r` to `r + dr` (mod n).
    pub fn translate(&self, dc: usize, dr: usize) -> Self {
        let n = self.size();
        let mut x = vec![0; n];
        let mut o = vec![0; n];
        for i in 0..n {
            let j = (i + dc) % n;
            x[j] = (self.x[i] + dr) % n;
            o[j] = (self.o[i] + dr) % n;
        }
        GridDiagram { x, o }
    }

    /// Connected sum of two knot grids, of size `n₁ + n₂ − 1`.
    ///
    /// The first grid is rotated so the X of its last column sits in its top
    /// row, the second so the O of its first column sits in its bottom row.
    /// The grids are placed corner to corner, the top row of the first is
    /// merged with the bottom row of the second, and those two columns are
    /// merged into a single rightmost column. The merged row and column cross
    /// nothing, so the result is a band sum along a trivial band.
    pub fn connected_sum(&self, other: &GridDiagram) -> Result<Self> {
        for g in [self, other] {
            let components = g.components();
            if components != 1 {
                return Err(Error::NotAKnot { components });
            }
        }
        let n1 = self.size();
        let n2 = other.size();
        let g1 = self.translate(0, (n1 - 1 + n1 - self.x[n1 - 1]) % n1);
        let g2 = other.translate(0, (n2 - other.o[0]) % n2);
        debug_assert_eq!(g1.x[n1 - 1], n1 - 1);
        debug_assert_eq!(g2.o[0], 0);

        let size = n1 + n2 - 1;
        let row2 = |r: usize| if r == 0 { n1 - 1 } else { r + n1 - 1 };
        let mut x = Vec::with_capacity(size);
        let mut o = Vec::with_capacity(size);
        for c in 0..n1 - 1 {
            x.push(g1.x[c]);
            o.push(g1.o[c]);
        }
        for c in 1..n2 {
            x.push(row2(g2.x[c]));
            o.push(row2(g2.o[c]));
        }
        x.push(row2(g2.x[0]));
        o.push(g1.o[n1 - 1]);
        GridDiagram::new(x, o)
    }

    /// Splits the X marker of `column` into a 2×2 block with the new O in the
    /// given corner. Grid size grows by one; the link type is unchanged.
    pub fn stabilize(&self, column: usize, corner: Corner) -> Result<Self> {
        let n = self.size();
        if column >= n {
            return Err(Error::IndexOutOfRange {
                index: column,
                size: n,
            });
        }
        let row = self.x[column];
        let new_col = if corner.is_east() { column + 1 } else { column };
        let new_row = if corner.is_north() { row + 1 } else { row };
        let map_col = |j: usize| if j >= new_col { j + 1 } else { j };
        let map_row = |r: usize| if r >= new_row { r + 1 } else { r };

        let mut x = vec![0; n + 1];
        let mut o = vec![0; n + 1];
        for j in 0..n {
            x[map_col(j)] = map_row(self.x[j]);
            o[map_col(j)] = map_row(self.o[j]);
        }
        let old_col = map_col(column);
        x[old_col] = new_row;
        x[new_col] = map_row(row);
        o[new_col] = new_row;
        GridDiagram::new(x, o)
    }

    /// Swaps columns `column` and `column + 1` when their segments are
    /// disjoint or nested.
    pub fn commutation_move(&self, column: usize) -> Result<Self> {
        let n = self.size();
        if column + 1 >= n {
            return Err(Error::IndexOutOfRange {
                index: column + 1,
                size: n,
            });
        }
        let span = |c: usize| {
            let (a, b) = (self.x[c], self.o[c]);
            (a.min(b), a.max(b))
        };
        let (lo1, hi1) = span(column);
        let (lo2, hi2) = span(column + 1);
        let illegal = |reason: &str| Error::IllegalCommutation {
            column,
            reason: reason.to_string(),
        };
        if lo1 == lo2 || lo1 == hi2 || hi1 == lo2 || hi1 == hi2 {
            return Err(illegal("segments share an endpoint row"));
        }
        let disjoint = hi1 < lo2 || hi2 < lo1;
        let nested = (lo1 < lo2 && hi2 < hi1) || (lo2 < lo1 && hi1 < hi2);
        if !(disjoint || nested) {
            return Err(illegal("segments interleave"));
        }
        let mut x = self.x.clone();
        let mut o = self.o.clone();
        x.swap(column, column + 1);
        o.swap(column, column + 1);
        Ok(GridDiagram { x, o })
    }

    /// Signed crossings of the planar drawing as
    /// `(column, row, sign)`, the column segment passing over the row segment.
    pub fn crossings(&self) -> Vec<(usize, usize, i32)> {
        let n = self.size();
        let x_inv = inverse(&self.x);
        let o_inv = inverse(&self.o);
        let mut out = Vec::new();
        for c in 0..n {
            let (top, bottom) = (self.x[c], self.o[c]);
            let dy: i32 = if bottom > top { 1 } else { -1 };
            let (rlo, rhi) = (top.min(bottom), top.max(bottom));
            for r in rlo + 1..rhi {
                let (from, to) = (o_inv[r], x_inv[r]);
                let (clo, chi) = (from.min(to), from.max(to));
                if clo < c && c < chi {
                    let dx: i32 = if to > from { 1 } else { -1 };
                    out.push((c, r, -dx * dy));
                }
            }
        }
        out
    }

    /// Total writhe of the planar drawing.
    pub fn writhe(&self) -> i32 {
        self.crossings().iter().map(|c| c.2).sum()
    }

    /// Pairwise linking numbers, indexed by [`Self::column_components`] labels.
    pub fn linking_matrix(&self) -> Vec<Vec<HalfInt>> {
        let comp = self.column_components();
        let l = self.components();
        let x_inv = inverse(&self.x);
        let mut m = vec![vec![0i64; l]; l];
        for (c, r, sign) in self.crossings() {
            let a = comp[c];
            let b = comp[x_inv[r]];
            if a != b {
                m[a][b] += sign as i64;
                m[b][a] += sign as i64;
            }
        }
        m.into_iter()
            .map(|row| row.into_iter().map(HalfInt::from_doubled).collect())
            .collect()
    }

    /// Parses the text format:
    ///
    /// ```text
    /// n = 2
    /// X = 1 0
    /// O = 0 1
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut size = None;
        let mut x = None;
        let mut o = None;
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected 'key = value', got '{line}'")))?;
            let nums = || -> Result<Vec<usize>> {
                value
                    .split_whitespace()
                    .map(|t| {
                        t.parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad entry '{t}'")))
                    })
                    .collect()
            };
            match key.trim() {
                "n" => {
                    size = Some(
                        value
                            .trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad size '{}'", value.trim())))?,
                    )
                }
                "X" => x = Some(nums()?),
                "O" => o = Some(nums()?),
                other => return Err(Error::Parse(format!("unknown key '{other}'"))),
            }
        }
        let size = size.ok_or_else(|| Error::Parse("missing 'n = ' line".into()))?;
        let x = x.ok_or_else(|| Error::Parse("missing 'X = ' line".into()))?;
        let o = o.ok_or_else(|| Error::Parse("missing 'O = ' line".into()))?;
        if x.len() != size || o.len() != size {
            return Err(Error::InvalidGrid(format!(
                "n = {size} but X has {} and O has {} entries",
                x.len(),
                o.len()
            )));
        }
        GridDiagram::new(x, o)
    }
}

impl fmt::Display for GridDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(f, "n = {}", self.size())?;
        writeln!(f, "X = {}", join(&self.x))?;
        writeln!(f, "O = {}", join(&self.o))
    }
}

impl FromStr for GridDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GridDiagram::parse(s)
    }
}

/// Expected invariants of a fixture, where known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureExpect {
    pub components: usize,
    pub tau_top: HalfInt,
    pub tau_bot: HalfInt,
    pub signature: Option<i64>,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub grid: GridDiagram,
    pub expected: FixtureExpect,
}

fn fixture(name: &'static str, x: &[usize], o: &[usize], exp: (usize, i64, i64, i64)) -> Fixture {
    Fixture {
        name,
        grid: GridDiagram::new(x.to_vec(), o.to_vec()).expect("fixture grid is valid"),
        expected: FixtureExpect {
            components: exp.0,
            tau_top: HalfInt::from_int(exp.1),
            tau_bot: HalfInt::from_int(exp.2),
            signature: Some(exp.3),
        },
    }
}

/// The shipped fixture corpus.
pub fn fixtures() -> Vec<Fixture> {
    vec![
        fixture("unknot2", &[1, 0], &[0, 1], (1, 0, 0, 0)),
        fixture("trefoil5", &TREFOIL_X, &TREFOIL_O, (1, 1, 1, -2)),
        fixture("figure8_6", &FIGURE8_X, &FIGURE8_O, (1, 0, 0, 0)),
        fixture("hopf4", &HOPF_X, &HOPF_O, (2, 1, 0, -1)),
        fixture("torus24_6", &T24_X, &T24_O, (2, 2, 1, -3)),
        fixture("torus25_7", &T25_X, &T25_O, (1, 2, 2, -4)),
    ]
}

pub fn fixture_by_name(name: &str) -> Result<Fixture> {
    let name = name.trim_end_matches(".grid");
    fixtures()
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

const TREFOIL_X: [usize; 5] = [4, 3, 2, 1, 0];
const TREFOIL_O: [usize; 5] = [2, 1, 0, 4, 3];
const HOPF_X: [usize; 4] = [3, 2, 1, 0];
const HOPF_O: [usize; 4] = [1, 0, 3, 2];
const T24_X: [usize; 6] = [5, 4, 3, 2, 1, 0];
const T24_O: [usize; 6] = [3, 2, 1, 0, 5, 4];
const T25_X: [usize; 7] = [6, 5, 4, 3, 2, 1, 0];
const T25_O: [usize; 7] = [4, 3, 2, 1, 0, 6, 5];
const FIGURE8_X: [usize; 6] = [3, 2, 0, 1, 4, 5];
const FIGURE8_O: [usize; 6] = [1, 4, 3, 5, 0, 2];
