//! Classical crystals on Kashiwara-Nakashima tableaux.
//!
//! Letters are signed integers: `k` for k, `-k` for k̄, `0` for the type B
//! letter 0. A tableau stores its columns through the reading word: columns
//! are read right to left, each column from its smallest letter upward, and a
//! spin column (always leftmost) is the last tensor factor. Operators act on
//! that word by the signature rule matching the tensor convention in
//! [`crate::crystal::tensor`].

use std::fmt::Write as _;

use thiserror::Error;

use crate::cartan::{CartanError, ClassicalType, Family, Weight};
use crate::crystal::{generate, CrystalError, Dir, Generated, RootDatum};

pub type Letter = i8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableauError {
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Crystal(#[from] CrystalError),
    #[error("invalid tableau: {0}")]
    Invalid(String),
    #[error("promotion needs a rectangular type A tableau")]
    NotRectangular,
}

/// Position of a letter in the type order (D letters n and n̄ share a rank).
pub fn letter_rank(ct: ClassicalType, x: Letter) -> i32 {
    let n = ct.rank as i32;
    let x = x as i32;
    match ct.family {
        Family::A => x,
        Family::C => {
            if x > 0 {
                x
            } else {
                2 * n + 1 + x
            }
        }
        Family::B => {
            if x > 0 {
                x
            } else if x == 0 {
                n + 1
            } else {
                2 * n + 2 + x
            }
        }
        Family::D => {
            if x > 0 {
                x
            } else if x == -n {
                n
            } else {
                2 * n + x
            }
        }
    }
}

pub fn alphabet(ct: ClassicalType) -> Vec<Letter> {
    let n = ct.rank as i8;
    match ct.family {
        Family::A => (1..=n + 1).collect(),
        Family::B => (1..=n)
            .chain([0])
            .chain((1..=n).rev().map(|k| -k))
            .collect(),
        Family::C | Family::D => (1..=n).chain((1..=n).rev().map(|k| -k)).collect(),
    }
}

/// (ε_i, φ_i) of a single letter.
pub fn letter_stats(ct: ClassicalType, i: usize, x: Letter) -> (u8, u8) {
    let n = ct.rank;
    let i8_ = i as i8;
    if i < n || ct.family == Family::A {
        if x == i8_ || x == -(i8_ + 1) {
            return (0, 1);
        }
        if x == i8_ + 1 || x == -i8_ {
            return (1, 0);
        }
        return (0, 0);
    }
    let n8 = n as i8;
    match ct.family {
        Family::C => match x {
            _ if x == n8 => (0, 1),
            _ if x == -n8 => (1, 0),
            _ => (0, 0),
        },
        Family::B => match x {
            _ if x == n8 => (0, 2),
            0 => (1, 1),
            _ if x == -n8 => (2, 0),
            _ => (0, 0),
        },
        Family::D => match x {
            _ if x == n8 - 1 || x == n8 => (0, 1),
            _ if x == -n8 || x == -(n8 - 1) => (1, 0),
            _ => (0, 0),
        },
        Family::A => unreachable!(),
    }
}

pub fn letter_f(ct: ClassicalType, i: usize, x: Letter) -> Option<Letter> {
    let n = ct.rank;
    let i8_ = i as i8;
    if i < n || ct.family == Family::A {
        if x == i8_ {
            return Some(i8_ + 1);
        }
        if x == -(i8_ + 1) && ct.family != Family::A {
            return Some(-i8_);
        }
        return None;
    }
    let n8 = n as i8;
    match ct.family {
        Family::C => (x == n8).then_some(-n8),
        Family::B => {
            if x == n8 {
                Some(0)
            } else if x == 0 {
                Some(-n8)
            } else {
                None
            }
        }
        Family::D => {
            if x == n8 - 1 {
                Some(-n8)
            } else if x == n8 {
                Some(-(n8 - 1))
            } else {
                None
            }
        }
        Family::A => unreachable!(),
    }
}

pub fn letter_e(ct: ClassicalType, i: usize, x: Letter) -> Option<Letter> {
    alphabet(ct)
        .into_iter()
        .find(|&y| letter_f(ct, i, y) == Some(x))
}

/// Spin columns: bit k of the mask set means coordinate k+1 carries −.
fn spin_stats(ct: ClassicalType, i: usize, mask: u16) -> (u8, u8) {
    let n = ct.rank;
    let bit = |k: usize| (mask >> k) & 1 == 1;
    if i < n {
        match (bit(i - 1), bit(i)) {
            (false, true) => (0, 1),
            (true, false) => (1, 0),
            _ => (0, 0),
        }
    } else {
        match ct.family {
            Family::B => {
                if bit(n - 1) {
                    (1, 0)
                } else {
                    (0, 1)
                }
            }
            Family::D => match (bit(n - 2), bit(n - 1)) {
                (false, false) => (0, 1),
                (true, true) => (1, 0),
                _ => (0, 0),
            },
            _ => unreachable!("spin only in types B and D"),
        }
    }
}

fn spin_flip(ct: ClassicalType, i: usize, mask: u16) -> u16 {
    let n = ct.rank;
    let flip = if i < n {
        (1u16 << (i - 1)) | (1u16 << i)
    } else if ct.family == Family::B {
        1u16 << (n - 1)
    } else {
        (1u16 << (n - 2)) | (1u16 << (n - 1))
    };
    mask ^ flip
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    pub ty: ClassicalType,
    heights: Vec<u8>,
    word: Vec<Letter>,
    spin: Option<u16>,
}

impl Tableau {
    /// Columns left to right, each listed bottom to top; spin signs ±1.
    pub fn from_columns(ty: ClassicalType, cols: &[Vec<Letter>], spin: Option<&[i8]>) -> Self {
        let heights = cols.iter().map(|c| c.len() as u8).collect();
        let mut word = Vec::new();
        for c in cols.iter().rev() {
            word.extend_from_slice(c);
        }
        let spin = spin.map(|s| {
            s.iter()
                .enumerate()
                .fold(0u16, |m, (k, &x)| if x < 0 { m | (1 << k) } else { m })
        });
        Tableau {
            ty,
            heights,
            word,
            spin,
        }
    }

    pub fn columns(&self) -> Vec<Vec<Letter>> {
        let mut cols = Vec::with_capacity(self.heights.len());
        let mut end = self.word.len();
        for &h in &self.heights {
            let start = end - h as usize;
            cols.push(self.word[start..end].to_vec());
            end = start;
        }
        cols
    }

    pub fn heights(&self) -> &[u8] {
        &self.heights
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    pub fn spin_signs(&self) -> Option<Vec<i8>> {
        self.spin.map(|m| {
            (0..self.ty.rank)
                .map(|k| if (m >> k) & 1 == 1 { -1 } else { 1 })
                .collect()
        })
    }

    pub fn serialize(&self) -> String {
        let mut s = String::new();
        write!(s, "{}|", self.ty).unwrap();
        let hs: Vec<String> = self.heights.iter().map(|h| h.to_string()).collect();
        s.push_str(&hs.join(","));
        s.push('|');
        if let Some(signs) = self.spin_signs() {
            let v: Vec<String> = signs.iter().map(|x| x.to_string()).collect();
            s.push_str(&v.join(","));
        }
        s.push('|');
        let cols: Vec<String> = self
            .columns()
            .iter()
            .map(|c| {
                c.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        s.push_str(&cols.join(";"));
        s
    }

    pub fn parse(s: &str) -> Result<Self, TableauError> {
        let bad = || TableauError::Invalid(format!("cannot parse `{s}`"));
        let mut it = s.split('|');
        let ty: ClassicalType = it.next().ok_or_else(bad)?.parse()?;
        let _heights = it.next().ok_or_else(bad)?;
        let spin = it.next().ok_or_else(bad)?;
        let cols = it.next().ok_or_else(bad)?;
        let spin: Option<Vec<i8>> = if spin.is_empty() {
            None
        } else {
            Some(
                spin.split(',')
                    .map(|x| x.parse::<i8>().map_err(|_| bad()))
                    .collect::<Result<_, _>>()?,
            )
        };
        let cols: Vec<Vec<Letter>> = if cols.is_empty() {
            vec![]
        } else {
            cols.split(';')
                .map(|c| {
                    c.split(',')
                        .map(|x| x.parse::<i8>().map_err(|_| bad()))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<_, _>>()?
        };
        Ok(Tableau::from_columns(ty, &cols, spin.as_deref()))
    }

    pub fn weight(&self) -> Weight {
        let dim = self.ty.dim();
        let mut d = vec![0i32; dim];
        for &x in &self.word {
            if x > 0 {
                d[x as usize - 1] += 2;
            } else if x < 0 {
                d[(-x) as usize - 1] -= 2;
            }
        }
        if let Some(m) = self.spin {
            for (k, v) in d.iter_mut().enumerate().take(self.ty.rank) {
                *v += if (m >> k) & 1 == 1 { -1 } else { 1 };
            }
        }
        Weight::from_doubled(d)
    }

    fn factor_stats(&self, i: usize, k: usize) -> (u8, u8) {
        if k < self.word.len() {
            letter_stats(self.ty, i, self.word[k])
        } else {
            spin_stats(self.ty, i, self.spin.unwrap())
        }
    }

    fn factor_count(&self) -> usize {
        self.word.len() + usize::from(self.spin.is_some())
    }

    /// Signature of color i: (ε, φ, factor for e, factor for f).
    fn signature(&self, i: usize) -> (u32, u32, Option<usize>, Option<usize>) {
        let mut stack: Vec<usize> = Vec::new();
        let mut minus = 0u32;
        let mut last_minus = None;
        for k in 0..self.factor_count() {
            let (e, p) = self.factor_stats(i, k);
            for _ in 0..e {
                if stack.pop().is_none() {
                    minus += 1;
                    last_minus = Some(k);
                }
            }
            for _ in 0..p {
                stack.push(k);
            }
        }
        (
            minus,
            stack.len() as u32,
            last_minus,
            stack.first().copied(),
        )
    }

    pub fn eps(&self, i: usize) -> u32 {
        self.signature(i).0
    }

    pub fn phi(&self, i: usize) -> u32 {
        self.signature(i).1
    }

    pub fn crystal_op(&self, i: usize, dir: Dir) -> Option<Tableau> {
        let (_, _, em, fp) = self.signature(i);
        let k = match dir {
            Dir::E => em?,
            Dir::F => fp?,
        };
        let mut t = self.clone();
        if k < t.word.len() {
            let x = t.word[k];
            t.word[k] = match dir {
                Dir::F => letter_f(t.ty, i, x),
                Dir::E => letter_e(t.ty, i, x),
            }
            .expect("signature picked an active factor");
        } else {
            t.spin = Some(spin_flip(t.ty, i, t.spin.unwrap()));
        }
        Some(t)
    }

    /// Necessary conditions for a KN tableau: column strictness in the type
    /// order, the column admissibility count, and weak row increase.
    pub fn check_kn(&self) -> Result<(), String> {
        let ct = self.ty;
        let n = ct.rank as i8;
        let cols = self.columns();
        for (j, c) in cols.iter().enumerate() {
            for w in c.windows(2) {
                let (x, y) = (w[0], w[1]);
                let ok = letter_rank(ct, x) < letter_rank(ct, y)
                    || (ct.family == Family::B && x == 0 && y == 0)
                    || (ct.family == Family::D && x != y && x.abs() == n && y.abs() == n);
                if !ok {
                    return Err(format!("column {j} not increasing at {x},{y}"));
                }
            }
            if ct.family != Family::A {
                for k in 1..=n {
                    if c.contains(&k) && c.contains(&-k) {
                        let cnt = c.iter().filter(|&&x| x != 0 && x.abs() <= k).count();
                        if cnt > k as usize {
                            return Err(format!("column {j} violates admissibility at {k}"));
                        }
                    }
                }
            }
        }
        for j in 0..cols.len().saturating_sub(1) {
            let (l, r) = (&cols[j], &cols[j + 1]);
            for t in 0..l.len().min(r.len()) {
                let (x, y) = (l[t], r[t]);
                let ok = letter_rank(ct, x) < letter_rank(ct, y)
                    || (letter_rank(ct, x) == letter_rank(ct, y)
                        && x == y
                        && !(ct.family == Family::B && x == 0));
                if !ok {
                    return Err(format!("row {t} decreases between columns {j},{}", j + 1));
                }
            }
        }
        Ok(())
    }

    /// Entries as rows (bottom row first) for rectangular type A tableaux.
    fn rows(&self) -> Result<Vec<Vec<i8>>, TableauError> {
        if self.ty.family != Family::A || self.heights.windows(2).any(|w| w[0] != w[1]) {
            return Err(TableauError::NotRectangular);
        }
        let cols = self.columns();
        let h = self.heights.first().copied().unwrap_or(0) as usize;
        Ok((0..h)
            .map(|r| cols.iter().map(|c| c[r]).collect())
            .collect())
    }

    fn from_rows(ty: ClassicalType, rows: &[Vec<i8>]) -> Tableau {
        let w = rows.first().map(|r| r.len()).unwrap_or(0);
        let cols: Vec<Vec<i8>> = (0..w)
            .map(|c| rows.iter().map(|r| r[c]).collect())
            .collect();
        Tableau::from_columns(ty, &cols, None)
    }
}

/// Highest element of B(λ) for a dominant weight λ.
pub fn highest_tableau(ct: ClassicalType, wt: &Weight) -> Result<Tableau, TableauError> {
    let bad = |reason: &str| {
        TableauError::Cartan(CartanError::BadWeight {
            weight: wt.to_string(),
            reason: reason.into(),
        })
    };
    if wt.dim() != ct.dim() {
        return Err(bad("wrong dimension"));
    }
    if !ct.is_dominant(wt) {
        return Err(bad("not dominant"));
    }
    let d = wt.doubled();
    let n = ct.rank;
    let half = d.iter().any(|x| x % 2 != 0);
    if half && !wt.is_half_integral() {
        return Err(bad("mixed integral and half-integral coordinates"));
    }
    if half && !matches!(ct.family, Family::B | Family::D) {
        return Err(bad("half-integral weight outside types B, D"));
    }
    let (spin, ints): (Option<Vec<i8>>, Vec<i32>) = if half {
        let mut signs = vec![1i8; n];
        if ct.family == Family::D && d[n - 1] < 0 {
            signs[n - 1] = -1;
        }
        let ints = d
            .iter()
            .zip(&signs)
            .map(|(x, s)| (x - *s as i32) / 2)
            .collect();
        (Some(signs), ints)
    } else {
        (None, d.iter().map(|x| x / 2).collect())
    };
    if ct.family == Family::A && ints.iter().any(|&x| x < 0) {
        return Err(bad("negative part"));
    }
    let negative_last = ct.family == Family::D && ints[n - 1] < 0;
    let abs: Vec<u32> = ints.iter().map(|x| x.unsigned_abs()).collect();
    let width = abs.first().copied().unwrap_or(0);
    let mut cols = Vec::new();
    for c in 1..=width {
        let h = abs.iter().filter(|&&p| p >= c).count();
        let mut col: Vec<i8> = (1..=h as i8).collect();
        if negative_last && h == n {
            col[n - 1] = -(n as i8);
        }
        cols.push(col);
    }
    Ok(Tableau::from_columns(ct, &cols, spin.as_deref()))
}

/// All of B(λ_1) ⊔ B(λ_2) ⊔ … as one graph.
pub fn build_classical_union(
    ct: ClassicalType,
    wts: &[Weight],
    budget: usize,
) -> Result<Generated<Tableau>, TableauError> {
    let seeds = wts
        .iter()
        .map(|w| highest_tableau(ct, w))
        .collect::<Result<Vec<_>, _>>()?;
    let datum = RootDatum::classical(ct);
    Ok(generate(
        &datum,
        seeds,
        |t, i, dir| Ok(t.crystal_op(i, dir)),
        |t| t.serialize(),
        |t| t.weight(),
        budget,
    )?)
}

pub fn build_classical(
    ct: ClassicalType,
    wt: &Weight,
    budget: usize,
) -> Result<Generated<Tableau>, TableauError> {
    build_classical_union(ct, std::slice::from_ref(wt), budget)
}

/// The crystal of the vector representation.
pub fn vector_crystal(ct: ClassicalType) -> Generated<Tableau> {
    let mut w = vec![0; ct.dim()];
    w[0] = 1;
    build_classical(ct, &Weight::from_ints(&w), usize::MAX).expect("vector representation")
}

type Grid = Vec<Vec<Option<i8>>>;

/// Slide every hole in `holes` (marked `None`) toward the bottom-left corner.
fn slide_down_left(g: &mut Grid) {
    let h = g.len();
    let w = g.first().map(|r| r.len()).unwrap_or(0);
    let mut settled = vec![vec![false; w]; h];
    loop {
        // an unsettled hole whose left and lower neighbours are not unsettled holes
        let mut pick = None;
        'find: for r in 0..h {
            for c in 0..w {
                if g[r][c].is_none() && !settled[r][c] {
                    let left_hole = c > 0 && g[r][c - 1].is_none() && !settled[r][c - 1];
                    let down_hole = r > 0 && g[r - 1][c].is_none() && !settled[r - 1][c];
                    if !left_hole && !down_hole {
                        pick = Some((r, c));
                        break 'find;
                    }
                }
            }
        }
        let Some((mut r, mut c)) = pick else { break };
        loop {
            let left = if c > 0 { g[r][c - 1] } else { None };
            let down = if r > 0 { g[r - 1][c] } else { None };
            match (left, down) {
                (None, None) => break,
                (Some(a), Some(b)) if a > b => {
                    g[r][c] = Some(a);
                    g[r][c - 1] = None;
                    c -= 1;
                }
                (Some(_), Some(b)) | (None, Some(b)) => {
                    g[r][c] = Some(b);
                    g[r - 1][c] = None;
                    r -= 1;
                }
                (Some(a), None) => {
                    g[r][c] = Some(a);
                    g[r][c - 1] = None;
                    c -= 1;
                }
            }
        }
        settled[r][c] = true;
    }
}

/// Slide every hole toward the top-right corner.
fn slide_up_right(g: &mut Grid) {
    let h = g.len();
    let w = g.first().map(|r| r.len()).unwrap_or(0);
    let mut settled = vec![vec![false; w]; h];
    loop {
        let mut pick = None;
        'find: for r in (0..h).rev() {
            for c in (0..w).rev() {
                if g[r][c].is_none() && !settled[r][c] {
                    let right_hole = c + 1 < w && g[r][c + 1].is_none() && !settled[r][c + 1];
                    let up_hole = r + 1 < h && g[r + 1][c].is_none() && !settled[r + 1][c];
                    if !right_hole && !up_hole {
                        pick = Some((r, c));
                        break 'find;
                    }
                }
            }
        }
        let Some((mut r, mut c)) = pick else { break };
        loop {
            let right = if c + 1 < w { g[r][c + 1] } else { None };
            let up = if r + 1 < h { g[r + 1][c] } else { None };
            match (right, up) {
                (None, None) => break,
                (Some(a), Some(b)) if a < b => {
                    g[r][c] = Some(a);
                    g[r][c + 1] = None;
                    c += 1;
                }
                (Some(_), Some(b)) | (None, Some(b)) => {
                    g[r][c] = Some(b);
                    g[r + 1][c] = None;
                    r += 1;
                }
                (Some(a), None) => {
                    g[r][c] = Some(a);
                    g[r][c + 1] = None;
                    c += 1;
                }
            }
        }
        settled[r][c] = true;
    }
}

/// Promotion on rectangular tableaux over 1..N: drop the N's, add one to every
/// entry, slide the holes to the bottom-left and fill them with 1.
pub fn promotion(t: &Tableau) -> Result<Tableau, TableauError> {
    let big = t.ty.rank as i8 + 1;
    let rows = t.rows()?;
    let mut g: Grid = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| if x == big { None } else { Some(x + 1) })
                .collect()
        })
        .collect();
    slide_down_left(&mut g);
    let rows: Vec<Vec<i8>> = g
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.unwrap_or(1)).collect())
        .collect();
    Ok(Tableau::from_rows(t.ty, &rows))
}

pub fn promotion_inverse(t: &Tableau) -> Result<Tableau, TableauError> {
    let big = t.ty.rank as i8 + 1;
    let rows = t.rows()?;
    let mut g: Grid = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| if x == 1 { None } else { Some(x - 1) })
                .collect()
        })
        .collect();
    slide_up_right(&mut g);
    let rows: Vec<Vec<i8>> = g
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.unwrap_or(big)).collect())
        .collect();
    Ok(Tableau::from_rows(t.ty, &rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(f: Family, n: usize) -> ClassicalType {
        ClassicalType::new(f, n).unwrap()
    }

    #[test]
    fn vector_crystals() {
        let c2 = ct(Family::C, 2);
        assert_eq!(letter_f(c2, 2, 2), Some(-2));
        assert_eq!(letter_f(c2, 1, 1), Some(2));
        assert_eq!(letter_f(c2, 1, -2), Some(-1));
        let b2 = ct(Family::B, 2);
        assert_eq!(letter_f(b2, 2, 2), Some(0));
        assert_eq!(letter_f(b2, 2, 0), Some(-2));
        assert_eq!(vector_crystal(c2).graph.len(), 4);
        assert_eq!(vector_crystal(b2).graph.len(), 5);
        assert_eq!(vector_crystal(ct(Family::A, 2)).graph.len(), 3);
        assert_eq!(vector_crystal(ct(Family::D, 4)).graph.len(), 8);
    }

    #[test]
    fn highest_examples() {
        let t = highest_tableau(ct(Family::A, 2), &Weight::from_ints(&[2, 1, 0])).unwrap();
        assert_eq!(t.columns(), vec![vec![1, 2], vec![1]]);
        let t = highest_tableau(ct(Family::D, 4), &Weight::from_doubled(vec![1, 1, 1, 1])).unwrap();
        assert_eq!(t.spin_signs(), Some(vec![1, 1, 1, 1]));
        assert!(t.columns().is_empty());
    }

    #[test]
    fn column_c2() {
        let c2 = ct(Family::C, 2);
        let t = Tableau::from_columns(c2, &[vec![1, 2]], None);
        let u = t.crystal_op(2, Dir::F).unwrap();
        assert_eq!(u.columns(), vec![vec![1, -2]]);
        let g = build_classical(c2, &Weight::from_ints(&[1, 1]), 100).unwrap();
        assert_eq!(g.graph.len(), 5);
    }

    #[test]
    fn promotion_examples() {
        let a2 = ct(Family::A, 2);
        let t = Tableau::from_columns(a2, &[vec![1], vec![2]], None);
        assert_eq!(promotion(&t).unwrap().columns(), vec![vec![2], vec![3]]);
        let t = Tableau::from_columns(a2, &[vec![3]], None);
        assert_eq!(promotion(&t).unwrap().columns(), vec![vec![1]]);
        let a1 = ct(Family::A, 1);
        let t = Tableau::from_columns(a1, &[vec![1, 2]], None);
        assert_eq!(promotion(&t).unwrap().columns(), vec![vec![1, 2]]);
    }

    #[test]
    fn serialization_round_trip() {
        let d4 = ct(Family::D, 4);
        let t = Tableau::from_columns(d4, &[vec![1, 2, -4, 4], vec![3]], Some(&[1, -1, -1, 1]));
        assert_eq!(Tableau::parse(&t.serialize()).unwrap(), t);
    }
}
