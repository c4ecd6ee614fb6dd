//! Dynkin data for the classical and nonexceptional affine families.
//!
//! Weights live in the orthogonal ε-basis. Coordinates are stored doubled so
//! that spin weights (half-integers in types B and D) stay integral.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CartanError {
    #[error("rank {rank} is below the floor {floor} for {family}")]
    RankTooSmall {
        family: String,
        rank: usize,
        floor: usize,
    },
    #[error("index {index} out of range for {ty}")]
    IndexOutOfRange { ty: String, index: usize },
    #[error("cannot parse type string `{0}`")]
    Parse(String),
    #[error("node {r} is exceptional for {ty}")]
    ExceptionalNode { ty: String, r: usize },
    #[error("weight {weight} is not admissible: {reason}")]
    BadWeight { weight: String, reason: String },
    #[error("width s must be positive")]
    ZeroWidth,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(c)
    }
}

/// A weight in ε-coordinates, stored doubled.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<i32>);

impl Weight {
    pub fn zero(dim: usize) -> Self {
        Weight(vec![0; dim])
    }

    pub fn from_ints(coords: &[i32]) -> Self {
        Weight(coords.iter().map(|c| 2 * c).collect())
    }

    pub fn from_doubled(doubled: Vec<i32>) -> Self {
        Weight(doubled)
    }

    pub fn doubled(&self) -> &[i32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Integer coordinates, if every coordinate is integral.
    pub fn to_ints(&self) -> Option<Vec<i32>> {
        self.0
            .iter()
            .map(|c| if c % 2 == 0 { Some(c / 2) } else { None })
            .collect()
    }

    pub fn is_half_integral(&self) -> bool {
        !self.0.is_empty() && self.0.iter().all(|c| c.rem_euclid(2) == 1)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, m: i32) -> Weight {
        Weight(self.0.iter().map(|a| a * m).collect())
    }

    /// Drop the first `k` coordinates.
    pub fn tail(&self, k: usize) -> Weight {
        Weight(self.0[k..].to_vec())
    }

    fn add_root(&self, root: &[i32], sign: i32) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(root)
                .map(|(a, r)| a + sign * 2 * r)
                .collect(),
        )
    }

    pub fn minus_root(&self, root: &[i32]) -> Weight {
        self.add_root(root, -1)
    }

    pub fn plus_root(&self, root: &[i32]) -> Weight {
        self.add_root(root, 1)
    }
}

fn fmt_half(d: i32) -> String {
    if d % 2 == 0 {
        format!("{}", d / 2)
    } else {
        format!("{}/2", d)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|&d| fmt_half(d)).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Partition with an optional half column of full height (spin shapes).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    pub parts: Vec<u32>,
    #[serde(default)]
    pub half: bool,
}

impl Partition {
    pub fn new(parts: &[u32]) -> Self {
        let parts: Vec<u32> = parts.iter().copied().filter(|&p| p > 0).collect();
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Partition { parts, half: false }
    }

    pub fn with_half(parts: &[u32]) -> Self {
        let mut p = Partition::new(parts);
        p.half = true;
        p
    }

    pub fn empty() -> Self {
        Partition::new(&[])
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty() && !self.half
    }

    /// Column heights, left to right.
    pub fn conjugate(&self) -> Vec<u32> {
        let w = self.parts.first().copied().unwrap_or(0);
        (1..=w)
            .map(|c| self.parts.iter().filter(|&&p| p >= c).count() as u32)
            .collect()
    }

    pub fn from_columns(cols: &[u32]) -> Self {
        let h = cols.iter().copied().max().unwrap_or(0);
        let parts: Vec<u32> = (1..=h)
            .map(|row| cols.iter().filter(|&&c| c >= row).count() as u32)
            .collect();
        Partition::new(&parts)
    }

    /// The weight of this shape for a classical type (half column adds 1/2 to
    /// every coordinate).
    pub fn to_weight(&self, ct: ClassicalType) -> Weight {
        let dim = ct.dim();
        let mut d = vec![0i32; dim];
        for (i, &p) in self.parts.iter().enumerate() {
            if i < dim {
                d[i] = 2 * p as i32;
            }
        }
        if self.half {
            for x in d.iter_mut().take(ct.rank) {
                *x += 1;
            }
        }
        Weight(d)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        if self.half {
            write!(f, "({})+spin", p.join(","))
        } else {
            write!(f, "({})", p.join(","))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassicalType {
    pub family: Family,
    pub rank: usize,
}

impl ClassicalType {
    pub fn new(family: Family, rank: usize) -> Result<Self, CartanError> {
        let floor = match family {
            Family::A | Family::B | Family::C => 1,
            Family::D => 2,
        };
        if rank < floor {
            return Err(CartanError::RankTooSmall {
                family: family.to_string(),
                rank,
                floor,
            });
        }
        Ok(ClassicalType { family, rank })
    }

    /// Number of ε-coordinates.
    pub fn dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            _ => self.rank,
        }
    }

    pub fn index_set(&self) -> Vec<usize> {
        (1..=self.rank).collect()
    }

    fn unit(&self, k: usize) -> Vec<i32> {
        let mut v = vec![0; self.dim()];
        v[k] = 1;
        v
    }

    fn check_index(&self, i: usize) -> Result<(), CartanError> {
        if i == 0 || i > self.rank {
            Err(CartanError::IndexOutOfRange {
                ty: self.to_string(),
                index: i,
            })
        } else {
            Ok(())
        }
    }

    /// Simple root α_i in ε-coordinates.
    pub fn root(&self, i: usize) -> Result<Vec<i32>, CartanError> {
        self.check_index(i)?;
        let n = self.rank;
        let mut v = vec![0; self.dim()];
        if i < n || self.family == Family::A {
            v[i - 1] = 1;
            v[i] = -1;
            return Ok(v);
        }
        match self.family {
            Family::B => v[n - 1] = 1,
            Family::C => v[n - 1] = 2,
            Family::D => {
                v[n - 2] = 1;
                v[n - 1] = 1;
            }
            Family::A => unreachable!(),
        }
        Ok(v)
    }

    /// Simple coroot h_i as a functional on ε-coordinates.
    pub fn coroot(&self, i: usize) -> Result<Vec<i32>, CartanError> {
        self.check_index(i)?;
        let n = self.rank;
        let mut v = vec![0; self.dim()];
        if i < n || self.family == Family::A {
            v[i - 1] = 1;
            v[i] = -1;
            return Ok(v);
        }
        match self.family {
            Family::B => v[n - 1] = 2,
            Family::C => v[n - 1] = 1,
            Family::D => {
                v[n - 2] = 1;
                v[n - 1] = 1;
            }
            Family::A => unreachable!(),
        }
        Ok(v)
    }

    pub fn pairing(&self, i: usize, wt: &Weight) -> Result<i32, CartanError> {
        let h = self.coroot(i)?;
        Ok(pair(&h, wt))
    }

    pub fn pairings(&self, wt: &Weight) -> Vec<i32> {
        self.index_set()
            .into_iter()
            .map(|i| self.pairing(i, wt).expect("index in range"))
            .collect()
    }

    /// The weight with prescribed pairings ⟨h_i, ·⟩ (i = 1..rank). For type A
    /// the last coordinate is normalized to zero.
    pub fn weight_from_pairings(&self, a: &[i32]) -> Weight {
        assert_eq!(a.len(), self.rank);
        let n = self.rank;
        let mut d = vec![0i32; self.dim()];
        match self.family {
            Family::A => {
                for i in (0..n).rev() {
                    d[i] = d[i + 1] + 2 * a[i];
                }
            }
            Family::B => {
                d[n - 1] = a[n - 1];
                for i in (0..n - 1).rev() {
                    d[i] = d[i + 1] + 2 * a[i];
                }
            }
            Family::C => {
                d[n - 1] = 2 * a[n - 1];
                for i in (0..n - 1).rev() {
                    d[i] = d[i + 1] + 2 * a[i];
                }
            }
            Family::D => {
                d[n - 1] = a[n - 1] - a[n - 2];
                d[n - 2] = a[n - 1] + a[n - 2];
                for i in (0..n - 2).rev() {
                    d[i] = d[i + 1] + 2 * a[i];
                }
            }
        }
        Weight(d)
    }

    pub fn is_dominant(&self, wt: &Weight) -> bool {
        self.pairings(wt).iter().all(|&p| p >= 0)
    }

    /// Representative of the Weyl orbit of `wt` in the dominant chamber.
    /// Type A representatives are normalized so the last coordinate is zero.
    pub fn dominant_representative(&self, wt: &Weight) -> Weight {
        let mut d = wt.0.clone();
        match self.family {
            Family::A => {
                d.sort_unstable_by(|a, b| b.cmp(a));
                let last = *d.last().unwrap();
                for x in d.iter_mut() {
                    *x -= last;
                }
            }
            Family::B | Family::C => {
                for x in d.iter_mut() {
                    *x = x.abs();
                }
                d.sort_unstable_by(|a, b| b.cmp(a));
            }
            Family::D => {
                let negatives = d.iter().filter(|&&x| x < 0).count();
                let has_zero = d.contains(&0);
                for x in d.iter_mut() {
                    *x = x.abs();
                }
                d.sort_unstable_by(|a, b| b.cmp(a));
                if negatives % 2 == 1 && !has_zero {
                    let last = d.len() - 1;
                    d[last] = -d[last];
                }
            }
        }
        Weight(d)
    }

    /// Positive roots in ε-coordinates.
    pub fn positive_roots(&self) -> Vec<Vec<i32>> {
        let m = self.dim();
        let mut out = Vec::new();
        let pm = |i: usize, j: usize, si: i32, sj: i32| {
            let mut v = vec![0; m];
            v[i] += si;
            v[j] += sj;
            v
        };
        for i in 0..m {
            for j in i + 1..m {
                out.push(pm(i, j, 1, -1));
                if self.family != Family::A {
                    out.push(pm(i, j, 1, 1));
                }
            }
        }
        match self.family {
            Family::B => out.extend((0..m).map(|i| self.unit(i))),
            Family::C => out.extend((0..m).map(|i| {
                let mut v = self.unit(i);
                v[i] = 2;
                v
            })),
            _ => {}
        }
        out
    }

    /// ρ in doubled coordinates.
    fn rho(&self) -> Weight {
        let m = self.dim() as i32;
        let d: Vec<i32> = match self.family {
            Family::A => (0..m).map(|k| 2 * (m - 1 - k)).collect(),
            Family::B => (0..m).map(|k| 2 * (m - k) - 1).collect(),
            Family::C => (0..m).map(|k| 2 * (m - k)).collect(),
            Family::D => (0..m).map(|k| 2 * (m - 1 - k)).collect(),
        };
        Weight(d)
    }

    /// Weyl dimension formula for dominant `wt`.
    pub fn weyl_dimension(&self, wt: &Weight) -> u128 {
        let rho = self.rho();
        let lr = wt.add(&rho);
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for a in self.positive_roots() {
            let p = |w: &Weight| -> i64 {
                w.0.iter().zip(&a).map(|(x, y)| *x as i64 * *y as i64).sum()
            };
            let top = p(&lr);
            let bot = p(&rho);
            debug_assert!(bot > 0);
            if top <= 0 {
                return 0;
            }
            num *= top as u128;
            den *= bot as u128;
            let g = gcd(num, den);
            num /= g;
            den /= g;
        }
        debug_assert_eq!(den, 1);
        num / den
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn pair(h: &[i32], wt: &Weight) -> i32 {
    let s: i32 = h.iter().zip(&wt.0).map(|(x, y)| x * y).sum();
    debug_assert!(s % 2 == 0, "non-integral pairing");
    s / 2
}

impl fmt::Display for ClassicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for ClassicalType {
    type Err = CartanError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || CartanError::Parse(s.to_string());
        let (head, tail) = s.split_at(1.min(s.len()));
        let family = match head {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            _ => return Err(bad()),
        };
        let rank: usize = tail.trim_start_matches(':').parse().map_err(|_| bad())?;
        ClassicalType::new(family, rank)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AffineFamily {
    A1,
    B1,
    C1,
    D1,
    A2Even,
    A2Odd,
    D2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RemovalShape {
    None,
    Box,
    HorizontalDomino,
    VerticalDomino,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineType {
    pub family: AffineFamily,
    pub n: usize,
}

impl AffineType {
    pub fn new(family: AffineFamily, n: usize) -> Result<Self, CartanError> {
        let floor = match family {
            AffineFamily::A1 => 2,
            AffineFamily::B1 | AffineFamily::C1 => 2,
            AffineFamily::D1 => 4,
            AffineFamily::A2Even => 1,
            AffineFamily::A2Odd | AffineFamily::D2 => 2,
        };
        if n < floor {
            return Err(CartanError::RankTooSmall {
                family: format!("{:?}", family),
                rank: n,
                floor,
            });
        }
        Ok(AffineType { family, n })
    }

    pub fn classical(&self) -> ClassicalType {
        let (family, rank) = match self.family {
            AffineFamily::A1 => (Family::A, self.n - 1),
            AffineFamily::B1 => (Family::B, self.n),
            AffineFamily::C1 | AffineFamily::A2Even | AffineFamily::A2Odd => (Family::C, self.n),
            AffineFamily::D1 => (Family::D, self.n),
            AffineFamily::D2 => (Family::B, self.n),
        };
        ClassicalType { family, rank }
    }

    /// Classical index set I_0.
    pub fn classical_nodes(&self) -> Vec<usize> {
        self.classical().index_set()
    }

    /// Affine index set I.
    pub fn index_set(&self) -> Vec<usize> {
        (0..=self.classical().rank).collect()
    }

    fn zero_data(&self) -> (Vec<i32>, Vec<i32>) {
        let ct = self.classical();
        let mut root = vec![0; ct.dim()];
        let mut coroot = vec![0; ct.dim()];
        match self.family {
            AffineFamily::A1 => {
                let last = ct.dim() - 1;
                root[0] = -1;
                root[last] = 1;
                coroot[0] = -1;
                coroot[last] = 1;
            }
            AffineFamily::B1 | AffineFamily::D1 | AffineFamily::A2Odd => {
                root[0] = -1;
                root[1] = -1;
                coroot[0] = -1;
                coroot[1] = -1;
            }
            AffineFamily::C1 => {
                root[0] = -2;
                coroot[0] = -1;
            }
            AffineFamily::A2Even | AffineFamily::D2 => {
                root[0] = -1;
                coroot[0] = -2;
            }
        }
        (root, coroot)
    }

    /// Classical projection of α_i (i ∈ I).
    pub fn root(&self, i: usize) -> Result<Vec<i32>, CartanError> {
        if i == 0 {
            Ok(self.zero_data().0)
        } else {
            self.classical().root(i)
        }
    }

    /// Classical projection of h_i (i ∈ I), valid on level-zero weights.
    pub fn coroot(&self, i: usize) -> Result<Vec<i32>, CartanError> {
        if i == 0 {
            Ok(self.zero_data().1)
        } else {
            self.classical().coroot(i)
        }
    }

    pub fn level0_pairing(&self, i: usize, wt: &Weight) -> Result<i32, CartanError> {
        Ok(pair(&self.coroot(i)?, wt))
    }

    /// Affine Cartan entry ⟨h_i, α_j⟩.
    pub fn cartan_entry(&self, i: usize, j: usize) -> Result<i32, CartanError> {
        let h = self.coroot(i)?;
        let a = self.root(j)?;
        Ok(h.iter().zip(&a).map(|(x, y)| x * y).sum())
    }

    pub fn exceptional_nodes(&self) -> Vec<usize> {
        let n = self.n;
        match self.family {
            AffineFamily::C1 => vec![n],
            AffineFamily::D1 => vec![n - 1, n],
            AffineFamily::D2 => vec![n],
            _ => vec![],
        }
    }

    pub fn is_exceptional(&self, r: usize) -> bool {
        self.exceptional_nodes().contains(&r)
    }

    pub fn removal_shape(&self) -> RemovalShape {
        match self.family {
            AffineFamily::A1 => RemovalShape::None,
            AffineFamily::B1 | AffineFamily::D1 | AffineFamily::A2Odd => {
                RemovalShape::VerticalDomino
            }
            AffineFamily::C1 => RemovalShape::HorizontalDomino,
            AffineFamily::A2Even | AffineFamily::D2 => RemovalShape::Box,
        }
    }

    pub fn check_node(&self, r: usize) -> Result<(), CartanError> {
        if r == 0 || r > self.classical().rank {
            return Err(CartanError::IndexOutOfRange {
                ty: self.to_string(),
                index: r,
            });
        }
        Ok(())
    }

    /// Classical highest weights of B^{r,s}; rejects exceptional nodes.
    pub fn decomposition_shapes(&self, r: usize, s: usize) -> Result<Vec<Partition>, CartanError> {
        self.check_node(r)?;
        if s == 0 {
            return Err(CartanError::ZeroWidth);
        }
        if self.is_exceptional(r) {
            return Err(CartanError::ExceptionalNode {
                ty: self.to_string(),
                r,
            });
        }
        let s32 = s as u32;
        let mut out = match self.removal_shape() {
            RemovalShape::None => vec![Partition::new(&vec![s32; r])],
            RemovalShape::Box => {
                let mut v = Vec::new();
                boxes_in_rectangle(r, s32, &mut Vec::new(), &mut v);
                v
            }
            RemovalShape::HorizontalDomino => {
                let mut v = Vec::new();
                rows_with_parity(r, s32, s32 % 2, &mut Vec::new(), &mut v);
                v
            }
            RemovalShape::VerticalDomino => {
                if self.family == AffineFamily::B1 && r == self.n {
                    let mut v = columns_with_parity(r as u32, s32 / 2);
                    if s % 2 == 1 {
                        for p in v.iter_mut() {
                            p.half = true;
                        }
                    }
                    v
                } else {
                    columns_with_parity(r as u32, s32)
                }
            }
        };
        out.sort_by(|a, b| b.cmp(a));
        out.dedup();
        Ok(out)
    }

    pub fn pretty(&self) -> String {
        match self.family {
            AffineFamily::A1 => format!("A_{}^(1)", self.n - 1),
            AffineFamily::B1 => format!("B_{}^(1)", self.n),
            AffineFamily::C1 => format!("C_{}^(1)", self.n),
            AffineFamily::D1 => format!("D_{}^(1)", self.n),
            AffineFamily::A2Even => format!("A_{}^(2)", 2 * self.n),
            AffineFamily::A2Odd => format!("A_{}^(2)", 2 * self.n - 1),
            AffineFamily::D2 => format!("D_{}^(2)", self.n + 1),
        }
    }
}

fn boxes_in_rectangle(rows: usize, bound: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    out.push(Partition::new(cur));
    if cur.len() == rows {
        return;
    }
    for p in (1..=bound).rev() {
        cur.push(p);
        boxes_in_rectangle(rows, p, cur, out);
        cur.pop();
    }
}

fn rows_with_parity(
    rows: usize,
    bound: u32,
    parity: u32,
    cur: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    if cur.len() == rows {
        out.push(Partition::new(cur));
        return;
    }
    let mut p = bound as i64;
    while p >= 0 {
        if p as u32 % 2 == parity {
            cur.push(p as u32);
            rows_with_parity(rows, p as u32, parity, cur, out);
            cur.pop();
        }
        p -= 1;
    }
}

/// Partitions given by `width` columns whose heights are ≤ r and ≡ r mod 2.
fn columns_with_parity(r: u32, width: u32) -> Vec<Partition> {
    let heights: Vec<u32> = (0..=r).rev().filter(|h| h % 2 == r % 2).collect();
    let mut out = Vec::new();
    fn go(heights: &[u32], left: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if heights.is_empty() {
            if left == 0 {
                out.push(Partition::from_columns(cur));
            }
            return;
        }
        for k in (0..=left).rev() {
            let before = cur.len();
            cur.extend(std::iter::repeat_n(heights[0], k as usize));
            go(&heights[1..], left - k, cur, out);
            cur.truncate(before);
        }
    }
    go(&heights, width, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.family {
            AffineFamily::A1 => "A1",
            AffineFamily::B1 => "B1",
            AffineFamily::C1 => "C1",
            AffineFamily::D1 => "D1",
            AffineFamily::A2Even => "A2e",
            AffineFamily::A2Odd => "A2o",
            AffineFamily::D2 => "D2",
        };
        write!(f, "{}:{}", tag, self.n)
    }
}

impl FromStr for AffineType {
    type Err = CartanError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CartanError::Parse(s.to_string());
        let (tag, n) = s.trim().split_once(':').ok_or_else(bad)?;
        let family = match tag {
            "A1" => AffineFamily::A1,
            "B1" => AffineFamily::B1,
            "C1" => AffineFamily::C1,
            "D1" => AffineFamily::D1,
            "A2e" => AffineFamily::A2Even,
            "A2o" => AffineFamily::A2Odd,
            "D2" => AffineFamily::D2,
            _ => return Err(bad()),
        };
        let n: usize = n.parse().map_err(|_| bad())?;
        AffineType::new(family, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(s: &str) -> AffineType {
        s.parse().unwrap()
    }

    #[test]
    fn pairing_examples() {
        let c2 = ClassicalType::new(Family::C, 2).unwrap();
        assert_eq!(c2.pairing(2, &Weight::from_ints(&[0, 1])).unwrap(), 1);
        let a2 = ClassicalType::new(Family::A, 2).unwrap();
        assert_eq!(a2.pairing(1, &Weight::from_ints(&[1, 0, 0])).unwrap(), 1);
        assert!(a2.pairing(3, &Weight::zero(3)).is_err());
    }

    #[test]
    fn exceptional_and_removal() {
        assert_eq!(at("D1:4").exceptional_nodes(), vec![3, 4]);
        assert!(at("A1:5").exceptional_nodes().is_empty());
        assert_eq!(at("C1:3").exceptional_nodes(), vec![3]);
        assert_eq!(at("C1:3").removal_shape(), RemovalShape::HorizontalDomino);
        assert_eq!(at("D2:3").removal_shape(), RemovalShape::Box);
    }

    #[test]
    fn shapes_examples() {
        assert_eq!(
            at("C1:2").decomposition_shapes(1, 2).unwrap(),
            vec![Partition::new(&[2]), Partition::empty()]
        );
        assert_eq!(
            at("D1:4").decomposition_shapes(2, 2).unwrap(),
            vec![
                Partition::new(&[2, 2]),
                Partition::new(&[1, 1]),
                Partition::empty()
            ]
        );
        assert_eq!(
            at("A1:4").decomposition_shapes(2, 3).unwrap(),
            vec![Partition::new(&[3, 3])]
        );
        assert!(at("C1:2").decomposition_shapes(2, 1).is_err());
    }

    #[test]
    fn affine_cartan_entries() {
        // A_{2n}^{(2)}: 0 and 1 joined by a double bond
        let t = at("A2e:2");
        assert_eq!(t.cartan_entry(0, 0).unwrap(), 2);
        assert_eq!(t.cartan_entry(0, 1).unwrap(), -2);
        assert_eq!(t.cartan_entry(1, 0).unwrap(), -1);
        // B_n^{(1)}: 0 attaches to 2
        let b = at("B1:3");
        assert_eq!(b.cartan_entry(0, 1).unwrap(), 0);
        assert_eq!(b.cartan_entry(0, 2).unwrap(), -1);
        // every diagonal entry is 2
        for s in ["A1:3", "B1:2", "C1:3", "D1:4", "A2e:1", "A2o:2", "D2:3"] {
            let t = at(s);
            for i in t.index_set() {
                assert_eq!(t.cartan_entry(i, i).unwrap(), 2, "{s} {i}");
            }
        }
    }

    #[test]
    fn weyl_dimensions() {
        let c3 = ClassicalType::new(Family::C, 3).unwrap();
        assert_eq!(c3.weyl_dimension(&Weight::from_ints(&[1, 0, 0])), 6);
        let b2 = ClassicalType::new(Family::B, 2).unwrap();
        assert_eq!(b2.weyl_dimension(&Weight::from_doubled(vec![3, 3])), 20);
        let d4 = ClassicalType::new(Family::D, 4).unwrap();
        assert_eq!(d4.weyl_dimension(&Weight::from_ints(&[1, 1, 0, 0])), 28);
        assert_eq!(
            d4.weyl_dimension(&Weight::from_doubled(vec![1, 1, 1, -1])),
            8
        );
        let a2 = ClassicalType::new(Family::A, 2).unwrap();
        assert_eq!(a2.weyl_dimension(&Weight::from_ints(&[2, 1, 0])), 8);
    }

    #[test]
    fn pairings_round_trip() {
        for ct in [
            ClassicalType::new(Family::A, 3).unwrap(),
            ClassicalType::new(Family::B, 3).unwrap(),
            ClassicalType::new(Family::C, 3).unwrap(),
            ClassicalType::new(Family::D, 4).unwrap(),
        ] {
            let a: Vec<i32> = (0..ct.rank as i32).map(|i| (i * 7 + 3) % 4).collect();
            let w = ct.weight_from_pairings(&a);
            assert_eq!(ct.pairings(&w), a);
        }
    }

    #[test]
    fn dominant_reps() {
        let d4 = ClassicalType::new(Family::D, 4).unwrap();
        let w = Weight::from_ints(&[0, -1, 2, -1]);
        assert_eq!(
            d4.dominant_representative(&w),
            Weight::from_ints(&[2, 1, 1, 0])
        );
        let w = Weight::from_doubled(vec![-1, 1, 1, 1]);
        assert_eq!(
            d4.dominant_representative(&w),
            Weight::from_doubled(vec![1, 1, 1, -1])
        );
    }
}
