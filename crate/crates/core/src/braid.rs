//! Braid words, quasipositive band words and the quantities read off them.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::GridDiagram;

/// A braid on `strands` strands. Letter `g > 0` is σ_g, `g < 0` is σ_|g|⁻¹.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Parse("a braid needs at least one strand".into()));
        }
        for &g in &letters {
            if g == 0 || g.unsigned_abs() as usize >= strands {
                return Err(Error::GeneratorOutOfRange { index: g, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn positive_count(&self) -> usize {
        self.letters.iter().filter(|&&g| g > 0).count()
    }

    pub fn negative_count(&self) -> usize {
        self.letters.iter().filter(|&&g| g < 0).count()
    }

    pub fn writhe(&self) -> i64 {
        self.positive_count() as i64 - self.negative_count() as i64
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|&g| g > 0)
    }

    /// Every generator index occurs, so the closure is non-split by construction.
    pub fn uses_all_generators(&self) -> bool {
        let seen: BTreeSet<u32> = self.letters.iter().map(|g| g.unsigned_abs()).collect();
        seen.len() + 1 == self.strands
    }

    /// Each index keeps one sign and adjacent indices have opposite signs, so
    /// the closure diagram is alternating.
    pub fn is_alternating(&self) -> bool {
        let mut sign = vec![0i32; self.strands];
        for &g in &self.letters {
            let i = g.unsigned_abs() as usize;
            if sign[i] == 0 {
                sign[i] = g.signum();
            } else if sign[i] != g.signum() {
                return false;
            }
        }
        sign.windows(2)
            .all(|p| p[0] == 0 || p[1] == 0 || p[0] != p[1])
    }

    /// Negates every letter.
    pub fn mirror(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().map(|g| -g).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|g| -g).collect(),
        }
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &BraidWord) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::Parse(format!(
                "strand counts differ: {} and {}",
                self.strands, other.strands
            )));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate(&self, g: i32) -> Result<Self> {
        let mut letters = Vec::with_capacity(self.letters.len() + 2);
        letters.push(g);
        letters.extend_from_slice(&self.letters);
        letters.push(-g);
        BraidWord::new(self.strands, letters)
    }

    /// Markov stabilization: adds a strand and appends σ_b^{±1}.
    pub fn stabilize(&self, positive: bool) -> Self {
        let b = self.strands as i32;
        let mut letters = self.letters.clone();
        letters.push(if positive { b } else { -b });
        BraidWord {
            strands: self.strands + 1,
            letters,
        }
    }

    /// Strand permutation: position at the top ↦ position at the bottom.
    pub fn permutation(&self) -> Vec<usize> {
        // at[p] = which starting strand currently sits at position p
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &g in &self.letters {
            let i = g.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        let mut perm = vec![0; self.strands];
        for (p, &s) in at.iter().enumerate() {
            perm[s] = p;
        }
        perm
    }

    /// Components of the closure: the starting strand of each position's cycle.
    pub fn strand_components(&self) -> Vec<usize> {
        let perm = self.permutation();
        let mut label = vec![usize::MAX; self.strands];
        let mut next = 0;
        for s in 0..self.strands {
            if label[s] != usize::MAX {
                continue;
            }
            let mut k = s;
            while label[k] == usize::MAX {
                label[k] = next;
                k = perm[k];
            }
            next += 1;
        }
        label
    }

    /// Parses `"b: g1 g2 …"`.
    pub fn parse(text: &str) -> Result<Self> {
        let (head, body) = text
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected 'b: letters', got '{}'", text.trim())))?;
        let strands = parse_strands(head)?;
        let letters = parse_letters(body)?;
        BraidWord::new(strands, letters)
    }
}

fn parse_strands(head: &str) -> Result<usize> {
    head.trim()
        .parse::<usize>()
        .map_err(|_| Error::Parse(format!("bad strand count '{}'", head.trim())))
}

fn parse_letters(body: &str) -> Result<Vec<i32>> {
    body.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<i32>()
                .map_err(|_| Error::Parse(format!("bad braid letter '{s}'")))
        })
        .collect()
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.strands)?;
        for g in &self.letters {
            write!(f, " {g}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BraidWord::parse(s)
    }
}

pub fn closure_components(w: &BraidWord) -> usize {
    w.strand_components().into_iter().max().map_or(0, |m| m + 1)
}

/// One band `w σ_i w⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Band {
    pub conjugator: Vec<i32>,
    pub generator: usize,
}

/// A product of positive bands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasipositiveWord {
    strands: usize,
    bands: Vec<Band>,
}

impl QuasipositiveWord {
    pub fn new(strands: usize, bands: Vec<Band>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Parse("a braid needs at least one strand".into()));
        }
        for band in &bands {
            if band.generator == 0 || band.generator >= strands {
                return Err(Error::GeneratorOutOfRange {
                    index: band.generator as i32,
                    strands,
                });
            }
            BraidWord::new(strands, band.conjugator.clone())?;
        }
        Ok(QuasipositiveWord { strands, bands })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn bands(&self) -> &[Band] {
        &self.bands
    }

    /// Parses `"b: (w | i) (w | i) …"`; `w` may be empty.
    pub fn parse(text: &str) -> Result<Self> {
        let (head, body) = text.split_once(':').ok_or_else(|| {
            Error::Parse(format!("expected 'b: (w | i) …', got '{}'", text.trim()))
        })?;
        let strands = parse_strands(head)?;
        let mut bands = Vec::new();
        let mut rest = body.trim();
        while !rest.is_empty() {
            let inner = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' at '{rest}'")))?;
            let close = inner
                .find(')')
                .ok_or_else(|| Error::Parse("unclosed band".into()))?;
            let (w, i) = inner[..close]
                .split_once('|')
                .ok_or_else(|| Error::Parse(format!("band '{}' lacks '|'", &inner[..close])))?;
            let generator = i
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad band generator '{}'", i.trim())))?;
            bands.push(Band {
                conjugator: parse_letters(w)?,
                generator,
            });
            rest = inner[close + 1..].trim_start();
        }
        QuasipositiveWord::new(strands, bands)
    }
}

impl fmt::Display for QuasipositiveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.strands)?;
        for band in &self.bands {
            let w: Vec<String> = band.conjugator.iter().map(|g| g.to_string()).collect();
            write!(f, " ({} | {})", w.join(" "), band.generator)?;
        }
        Ok(())
    }
}

impl FromStr for QuasipositiveWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        QuasipositiveWord::parse(s)
    }
}

pub fn expand_quasipositive(qp: &QuasipositiveWord) -> Result<BraidWord> {
    let mut letters = Vec::new();
    for band in &qp.bands {
        letters.extend_from_slice(&band.conjugator);
        letters.push(band.generator as i32);
        letters.extend(band.conjugator.iter().rev().map(|g| -g));
    }
    BraidWord::new(qp.strands, letters)
}

/// Euler characteristic `b − m` of the ribbon surface.
pub fn qp_euler_characteristic(qp: &QuasipositiveWord) -> i64 {
    qp.strands as i64 - qp.bands.len() as i64
}

/// Legendrian `(tb, rot)` of the closure of the front built from `w`.
pub fn legendrian_tb_rot(w: &BraidWord) -> (i64, i64) {
    let (p, n, b) = (
        w.positive_count() as i64,
        w.negative_count() as i64,
        w.strands as i64,
    );
    (p - 2 * n - b, n)
}

/// Seifert form of the surface obtained from Seifert's algorithm on the closure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeifertData {
    pub matrix: Vec<Vec<i64>>,
    pub euler_char: i64,
    pub components: usize,
}

impl SeifertData {
    pub fn dimension(&self) -> usize {
        self.matrix.len()
    }

    /// `V + Vᵀ`.
    pub fn symmetrized(&self) -> Vec<Vec<i64>> {
        let d = self.matrix.len();
        (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| self.matrix[i][j] + self.matrix[j][i])
                    .collect()
            })
            .collect()
    }
}

// Cycle between two consecutive occurrences (at word positions p < q) of σ_i^{±1}.
struct Cycle {
    index: u32,
    p: usize,
    q: usize,
}

/// Seifert matrix in the basis of cycles between consecutive same-index letters.
///
/// Split closures come out block-diagonal: cycles only interact through equal
/// or adjacent indices.
pub fn seifert_matrix(w: &BraidWord) -> SeifertData {
    let letters = &w.letters;
    let mut cycles = Vec::new();
    for index in 1..w.strands as u32 {
        let occ: Vec<usize> = (0..letters.len())
            .filter(|&k| letters[k].unsigned_abs() == index)
            .collect();
        for pair in occ.windows(2) {
            cycles.push(Cycle {
                index,
                p: pair[0],
                q: pair[1],
            });
        }
    }
    let sign = |k: usize| letters[k].signum() as i64;
    let d = cycles.len();
    let mut v = vec![vec![0i64; d]; d];
    for (a, ca) in cycles.iter().enumerate() {
        v[a][a] = -(sign(ca.p) + sign(ca.q)) / 2;
        for (c, cc) in cycles.iter().enumerate() {
            if cc.index == ca.index && cc.p == ca.q {
                // consecutive cycles sharing the band at ca.q
                if sign(ca.q) > 0 {
                    v[a][c] = 1;
                } else {
                    v[c][a] = -1;
                }
            } else if cc.index == ca.index + 1 {
                if ca.p < cc.p && cc.p < ca.q && ca.q < cc.q {
                    v[c][a] = 1;
                } else if cc.p < ca.p && ca.p < cc.q && cc.q < ca.q {
                    v[c][a] = -1;
                }
            }
        }
    }
    SeifertData {
        matrix: v,
        euler_char: w.strands as i64 - letters.len() as i64,
        components: closure_components(w),
    }
}

/// Signature of a symmetric integer matrix, by exact congruence diagonalization.
pub fn symmetric_signature(m: &[Vec<i64>]) -> i64 {
    let mut a: Vec<Vec<Ratio<i128>>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| Ratio::from_integer(x as i128))
                .collect()
        })
        .collect();
    let zero = Ratio::from_integer(0);
    let mut sig = 0i64;
    while !a.is_empty() {
        let d = a.len();
        if let Some(k) = (0..d).find(|&k| a[k][k] != zero) {
            let pivot = a[k][k];
            sig += if pivot > zero { 1 } else { -1 };
            a = eliminate(&a, &[k]);
            continue;
        }
        let Some((i, j)) = (0..d)
            .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
            .find(|&(i, j)| a[i][j] != zero)
        else {
            break;
        };
        // [[0, x], [x, 0]] contributes one positive and one negative square
        a = eliminate(&a, &[i, j]);
    }
    sig
}

// Schur complement of the principal block on `block` (size 1 or 2, invertible).
fn eliminate(a: &[Vec<Ratio<i128>>], block: &[usize]) -> Vec<Vec<Ratio<i128>>> {
    let d = a.len();
    let inv: Vec<Vec<Ratio<i128>>> = match *block {
        [k] => vec![vec![a[k][k].recip()]],
        [i, j] => {
            let det = a[i][i] * a[j][j] - a[i][j] * a[j][i];
            vec![
                vec![a[j][j] / det, -a[i][j] / det],
                vec![-a[j][i] / det, a[i][i] / det],
            ]
        }
        _ => unreachable!("blocks have size one or two"),
    };
    let rest: Vec<usize> = (0..d).filter(|k| !block.contains(k)).collect();
    rest.iter()
        .map(|&r| {
            rest.iter()
                .map(|&c| {
                    let mut x = a[r][c];
                    for (bi, &u) in block.iter().enumerate() {
                        for (bj, &v) in block.iter().enumerate() {
                            x -= a[r][u] * inv[bi][bj] * a[v][c];
                        }
                    }
                    x
                })
                .collect()
        })
        .collect()
}

pub fn signature(w: &BraidWord) -> i64 {
    symmetric_signature(&seifert_matrix(w).symmetrized())
}

/// Grid diagram of the closure.
///
/// Strands run left to right along rows. Each letter adds one column in which
/// the over-strand jumps across its partner onto a fresh row; a final column
/// per strand returns it to its starting row. A strand that never jumps and
/// ends where it started gets one extra empty jump, so the size is
/// `b + c + (number of such strands)`.
pub fn to_grid(w: &BraidWord) -> GridDiagram {
    let b = w.strands;
    let mut pieces = b;
    let mut current: Vec<usize> = (0..b).collect();
    let initial = current.clone();
    // rows, top to bottom
    let mut order: Vec<usize> = current.clone();
    let mut columns: Vec<(usize, usize)> = Vec::new();
    let place = |order: &mut Vec<usize>, anchor: usize, below: bool, piece: usize| {
        let at = order
            .iter()
            .position(|&r| r == anchor)
            .expect("anchor row present");
        order.insert(if below { at + 1 } else { at }, piece);
    };
    for &g in &w.letters {
        let i = g.unsigned_abs() as usize - 1;
        let (upper, lower) = (current[i], current[i + 1]);
        let fresh = pieces;
        pieces += 1;
        if g > 0 {
            place(&mut order, lower, true, fresh);
            columns.push((upper, fresh));
            current[i] = lower;
            current[i + 1] = fresh;
        } else {
            place(&mut order, upper, false, fresh);
            columns.push((lower, fresh));
            current[i] = fresh;
            current[i + 1] = upper;
        }
    }
    for p in 0..b {
        if current[p] == initial[p] {
            let fresh = pieces;
            pieces += 1;
            place(&mut order, current[p], true, fresh);
            columns.push((current[p], fresh));
            current[p] = fresh;
        }
    }
    let mut pos = vec![0; pieces];
    for (k, &r) in order.iter().enumerate() {
        pos[r] = k;
    }
    let mut done = vec![false; b];
    let mut resets = Vec::with_capacity(b);
    let found = reset_order(&current, &initial, &pos, &mut done, &mut resets);
    assert!(found, "no crossing-free return order for {w}");
    columns.extend(resets.iter().map(|&p| (current[p], initial[p])));
    let n = pieces;
    let row = |piece: usize| n - 1 - pos[piece];
    let x = columns.iter().map(|&(from, _)| row(from)).collect();
    let o = columns.iter().map(|&(_, to)| row(to)).collect();
    GridDiagram::new(x, o).expect("braid closure grid is valid")
}

// Depth-first search for an order of return columns in which no return
// crosses a row that is live at that moment.
fn reset_order(
    current: &[usize],
    initial: &[usize],
    pos: &[usize],
    done: &mut [bool],
    out: &mut Vec<usize>,
) -> bool {
    let b = current.len();
    if out.len() == b {
        return true;
    }
    for p in 0..b {
        if done[p] {
            continue;
        }
        let (lo, hi) = {
            let (s, t) = (pos[current[p]], pos[initial[p]]);
            (s.min(t), s.max(t))
        };
        let blocked = (0..b).any(|q| {
            let live = if done[q] {
                initial[q]
            } else if q != p {
                current[q]
            } else {
                return false;
            };
            lo < pos[live] && pos[live] < hi
        });
        if blocked {
            continue;
        }
        done[p] = true;
        out.push(p);
        if reset_order(current, initial, pos, done, out) {
            return true;
        }
        out.pop();
        done[p] = false;
    }
    false
}
