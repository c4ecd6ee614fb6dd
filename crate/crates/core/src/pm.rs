//! ±-diagrams for types B, C, D: enumeration, the bijection Φ onto
//! {2,…,n}-highest tableaux, the involution 𝔖, and branching to rank n−1.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::cartan::{ClassicalType, Family, Partition, Weight};
use crate::tableaux::{build_classical, Letter, Tableau, TableauError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PmError {
    #[error("weight {0} is not admissible for ±-diagrams of {1}")]
    Inadmissible(String, String),
    #[error("Φ failed: {0}")]
    Phi(String),
    #[error("invalid ±-diagram: {0}")]
    Invalid(String),
    #[error("𝔖 does not apply: {0}")]
    FrakS(String),
    #[error("{0}")]
    Lookup(String),
    #[error(transparent)]
    Tableau(#[from] TableauError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Signs {
    Empty,
    Plus,
    Minus,
    PlusMinus,
    Zero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PmColumn {
    pub outer: usize,
    pub signs: Signs,
}

impl PmColumn {
    pub fn inner(&self) -> usize {
        match self.signs {
            Signs::Empty => self.outer,
            Signs::Plus | Signs::Minus | Signs::Zero => self.outer - 1,
            Signs::PlusMinus => self.outer - 2,
        }
    }

    /// Doubled height of μ in this column; a 0 sits between + and −.
    pub fn mu2(&self) -> usize {
        match self.signs {
            Signs::Empty | Signs::Plus => 2 * self.outer,
            Signs::Minus | Signs::PlusMinus => 2 * self.outer - 2,
            Signs::Zero => 2 * self.outer - 1,
        }
    }

    fn key(&self) -> (usize, usize, usize) {
        (self.outer, self.mu2(), self.inner())
    }
}

/// A ±-diagram. The spin column, if any, is leftmost. In type D columns have
/// height at most n−2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PmDiagram {
    pub ty: ClassicalType,
    pub spin: Option<Signs>,
    pub columns: Vec<PmColumn>,
}

impl PmDiagram {
    /// Sort the columns into canonical order and validate.
    pub fn new(
        ty: ClassicalType,
        spin: Option<Signs>,
        columns: Vec<PmColumn>,
    ) -> Result<Self, PmError> {
        let mut d = PmDiagram { ty, spin, columns };
        d.sort_columns();
        d.validate().map_err(PmError::Invalid)?;
        Ok(d)
    }

    fn spin_key(&self) -> Option<(usize, usize, usize)> {
        let n = self.ty.rank;
        self.spin.map(|s| {
            let mu2 = if s == Signs::Plus { 2 * n } else { 2 * n - 2 };
            (n, mu2, n - 1)
        })
    }

    pub fn count(&self, signs: Signs) -> usize {
        self.columns.iter().filter(|c| c.signs == signs).count()
    }

    fn shape(&self, f: impl Fn(&PmColumn) -> usize) -> Vec<u32> {
        self.columns.iter().map(|c| f(c) as u32).collect()
    }

    pub fn inner_partition(&self) -> Partition {
        Partition::from_columns(&self.shape(|c| c.inner()))
    }

    pub fn outer_partition(&self) -> Partition {
        let mut p = Partition::from_columns(&self.shape(|c| c.outer));
        p.half = self.spin.is_some();
        p
    }

    /// Λ as a weight of the ambient classical type.
    pub fn outer_weight(&self) -> Weight {
        self.outer_partition().to_weight(self.ty)
    }

    /// Inner shape as a weight on ε_2..ε_n.
    pub fn inner_weight(&self) -> Weight {
        let mut d = vec![0i32; self.ty.rank - 1];
        for c in &self.columns {
            for x in d.iter_mut().take(c.inner()) {
                *x += 2;
            }
        }
        if self.spin.is_some() {
            for x in d.iter_mut() {
                *x += 1;
            }
        }
        Weight::from_doubled(d)
    }

    /// ε_1 coordinate (doubled) contributed by the signs.
    pub fn first_coordinate2(&self) -> i32 {
        let mut x = 0;
        for c in &self.columns {
            match c.signs {
                Signs::Plus => x += 2,
                Signs::Minus => x -= 2,
                _ => {}
            }
        }
        match self.spin {
            Some(Signs::Plus) => x += 1,
            Some(Signs::Minus) => x -= 1,
            _ => {}
        }
        x
    }

    /// Weight of the element Φ(P).
    pub fn full_weight(&self) -> Weight {
        let mut d = vec![self.first_coordinate2()];
        d.extend_from_slice(self.inner_weight().doubled());
        Weight::from_doubled(d)
    }

    pub fn validate(&self) -> Result<(), String> {
        let n = self.ty.rank;
        let mut prev = self.spin_key();
        for c in &self.columns {
            if c.outer == 0 || c.outer > n {
                return Err("column height out of range".into());
            }
            if c.outer < 2 && c.signs == Signs::PlusMinus {
                return Err("∓ needs two cells".into());
            }
            let k = c.key();
            if let Some(p) = prev {
                if k.0 > p.0 || k.1 > p.1 || k.2 > p.2 {
                    return Err("λ, μ, Λ not nested horizontal strips".into());
                }
            }
            prev = Some(k);
            if c.outer == n && c.signs == Signs::Empty {
                return Err("empty column of height n".into());
            }
            if c.signs == Signs::Zero && (self.ty.family != Family::B || c.outer != n) {
                return Err("0 only at height n in type B".into());
            }
        }
        if self.count(Signs::Zero) > 1 {
            return Err("more than one 0".into());
        }
        if self.ty.family == Family::D && self.columns.iter().any(|c| c.outer + 1 >= n) {
            return Err("type D columns of height n−1 or n".into());
        }
        if self.spin.is_some() && self.ty.family != Family::B {
            return Err("spin column outside type B".into());
        }
        Ok(())
    }

    fn sort_columns(&mut self) {
        self.columns.sort_by_key(|c| std::cmp::Reverse(c.key()));
    }
}

/// Outer column heights and spin flag of a dominant weight.
fn decode_outer(ty: ClassicalType, lam: &Weight) -> Result<(Vec<usize>, bool), PmError> {
    let bad = || PmError::Inadmissible(lam.to_string(), ty.to_string());
    if ty.family == Family::A || lam.dim() != ty.dim() || !ty.is_dominant(lam) {
        return Err(bad());
    }
    let d = lam.doubled();
    let n = ty.rank;
    let half = d.iter().any(|x| x % 2 != 0);
    if half && (!lam.is_half_integral() || ty.family != Family::B) {
        return Err(bad());
    }
    if ty.family == Family::D && n >= 2 && d[n - 2] != 0 {
        return Err(bad());
    }
    let ints: Vec<u32> = d
        .iter()
        .map(|x| {
            let a = x.unsigned_abs();
            if half {
                (a - 1) / 2
            } else {
                a / 2
            }
        })
        .collect();
    let cols = Partition::new(&ints)
        .conjugate()
        .into_iter()
        .map(|h| h as usize)
        .collect();
    Ok((cols, half))
}

/// All ±-diagrams with outer shape `lam`.
pub fn enumerate_pm(ty: ClassicalType, lam: &Weight) -> Result<Vec<PmDiagram>, PmError> {
    let (heights, half) = decode_outer(ty, lam)?;
    let spins: Vec<Option<Signs>> = if half {
        vec![Some(Signs::Plus), Some(Signs::Minus)]
    } else {
        vec![None]
    };
    let mut out = Vec::new();
    for spin in spins {
        let mut d = PmDiagram {
            ty,
            spin,
            columns: Vec::new(),
        };
        let start = d.spin_key();
        extend(&mut d, &heights, start, &mut out);
    }
    Ok(out)
}

fn options(ty: ClassicalType, h: usize) -> Vec<Signs> {
    let n = ty.rank;
    let mut v = Vec::new();
    if h < n {
        v.push(Signs::Empty);
    }
    v.push(Signs::Plus);
    v.push(Signs::Minus);
    if h >= 2 {
        v.push(Signs::PlusMinus);
    }
    if ty.family == Family::B && h == n {
        v.push(Signs::Zero);
    }
    v
}

fn extend(
    d: &mut PmDiagram,
    heights: &[usize],
    prev: Option<(usize, usize, usize)>,
    out: &mut Vec<PmDiagram>,
) {
    let k = d.columns.len();
    if k == heights.len() {
        if d.validate().is_ok() {
            out.push(d.clone());
        }
        return;
    }
    for s in options(d.ty, heights[k]) {
        let c = PmColumn {
            outer: heights[k],
            signs: s,
        };
        let key = c.key();
        if let Some(p) = prev {
            if key.1 > p.1 || key.2 > p.2 {
                continue;
            }
        }
        if s == Signs::Zero && d.count(Signs::Zero) > 0 {
            continue;
        }
        d.columns.push(c);
        extend(d, heights, Some(key), out);
        d.columns.pop();
    }
}

enum Item {
    Spin,
    Bar(usize),
    Str(usize),
}

/// The bijection Φ, following the fill-then-rewrite procedure.
pub fn phi(p: &PmDiagram) -> Result<Tableau, PmError> {
    let ty = p.ty;
    let n = ty.rank;
    if ty.family == Family::D && (p.spin.is_some() || p.columns.iter().any(|c| c.outer == n)) {
        return Err(PmError::Phi(
            "height-n columns of type D are not covered".into(),
        ));
    }
    if ty.family == Family::A {
        return Err(PmError::Phi("type A has no ±-diagrams".into()));
    }
    let mut items = Vec::new();
    let mut spin: Option<Vec<i8>> = None;
    match p.spin {
        Some(Signs::Plus) => spin = Some(vec![1; n]),
        Some(Signs::Minus) => {
            let mut s = vec![1; n];
            s[0] = -1;
            spin = Some(s);
            items.push(Item::Spin);
        }
        _ => {}
    }
    let mut cols: Vec<Vec<Letter>> = Vec::new();
    for (j, c) in p.columns.iter().enumerate() {
        let h = c.outer;
        if c.signs == Signs::Plus && h == n {
            cols.push((1..=n as i8).collect());
            continue;
        }
        let top: Option<Letter> = match c.signs {
            Signs::Minus | Signs::PlusMinus => Some(-1),
            Signs::Zero => Some(0),
            _ => None,
        };
        let m = h - usize::from(top.is_some());
        let mut col: Vec<Letter> = (2..=m as i8 + 1).collect();
        if let Some(t) = top {
            col.push(t);
        }
        if top == Some(-1) {
            items.push(Item::Bar(j));
        }
        if m >= 1 {
            items.push(Item::Str(j));
        }
        cols.push(col);
    }
    // heights of the + signs, left to right, skipping + at height n
    let mut pluses = Vec::new();
    for c in &p.columns {
        match c.signs {
            Signs::Plus if c.outer < n => pluses.push(c.outer),
            Signs::PlusMinus => pluses.push(c.outer - 1),
            _ => {}
        }
    }
    let mut next = items.into_iter();
    for h in pluses {
        let item = next
            .next()
            .ok_or_else(|| PmError::Phi("no entry left to rewrite".into()))?;
        match item {
            Item::Spin => {
                let s = spin.as_mut().unwrap();
                if h >= n {
                    return Err(PmError::Phi("spin rewrite out of range".into()));
                }
                *s = vec![1; n];
                s[h] = -1;
            }
            Item::Bar(j) => {
                let last = cols[j].len() - 1;
                cols[j][last] = -(h as i8 + 1);
            }
            Item::Str(j) => {
                let m = cols[j].iter().take_while(|&&x| x > 0).count();
                if h > m {
                    return Err(PmError::Phi(format!(
                        "string of length {m} cannot absorb + at {h}"
                    )));
                }
                let k = m as i8 + 1;
                let new: Vec<Letter> = (1..=h as i8).chain(h as i8 + 2..=k).collect();
                cols[j].splice(0..m, new);
            }
        }
    }
    let t = Tableau::from_columns(ty, &cols, spin.as_deref());
    t.check_kn()
        .map_err(|e| PmError::Phi(format!("output {} is not KN: {e}", t.serialize())))?;
    Ok(t)
}

/// Φ over every diagram of the given outer shapes, keyed by tableau.
#[derive(Clone, Debug, Default)]
pub struct PhiTable {
    pub by_tableau: HashMap<Tableau, PmDiagram>,
    pub by_diagram: HashMap<PmDiagram, Tableau>,
}

impl PhiTable {
    pub fn new(ty: ClassicalType, outers: &[Weight]) -> Result<Self, PmError> {
        let mut t = PhiTable::default();
        for lam in outers {
            for p in enumerate_pm(ty, lam)? {
                let tab = phi(&p)?;
                if t.by_tableau.insert(tab.clone(), p.clone()).is_some() {
                    return Err(PmError::Phi(format!(
                        "Φ not injective at {}",
                        tab.serialize()
                    )));
                }
                t.by_diagram.insert(p, tab);
            }
        }
        Ok(t)
    }

    pub fn inverse(&self, t: &Tableau) -> Result<&PmDiagram, PmError> {
        self.by_tableau
            .get(t)
            .ok_or_else(|| PmError::Lookup(format!("{} is not in the image of Φ", t.serialize())))
    }
}

/// 𝔖 on diagrams of B^{r,s}.
pub fn frak_s(p: &PmDiagram, r: usize, s: usize) -> Result<PmDiagram, PmError> {
    if p.spin.is_some() || p.count(Signs::Zero) > 0 {
        return Err(PmError::FrakS(
            "spin columns and 0-columns are not handled".into(),
        ));
    }
    if p.columns.len() > s {
        return Err(PmError::FrakS("more columns than s".into()));
    }
    let mut by_inner: Vec<[usize; 4]> = vec![[0; 4]; r + 1];
    let idx = |s: Signs| match s {
        Signs::Empty => 0,
        Signs::Plus => 1,
        Signs::Minus => 2,
        Signs::PlusMinus => 3,
        Signs::Zero => unreachable!(),
    };
    for c in &p.columns {
        let i = c.inner();
        if i > r {
            return Err(PmError::FrakS("inner height exceeds r".into()));
        }
        by_inner[i][idx(c.signs)] += 1;
    }
    by_inner[0][0] += s - p.columns.len();
    let mut cols = Vec::new();
    for (i, cnt) in by_inner.iter().enumerate() {
        let total: usize = cnt.iter().sum();
        let mut new = *cnt;
        if i == r {
            if cnt[0] != total {
                return Err(PmError::FrakS("signs above inner height r".into()));
            }
        } else if (r - i) % 2 == 1 {
            if cnt[0] + cnt[3] > 0 {
                return Err(PmError::FrakS(format!(
                    "parity violation at inner height {i}"
                )));
            }
            new = [0, cnt[2], cnt[1], 0];
        } else {
            if cnt[1] + cnt[2] > 0 {
                return Err(PmError::FrakS(format!(
                    "parity violation at inner height {i}"
                )));
            }
            new = [cnt[3], 0, 0, total - cnt[3]];
        }
        for (k, signs) in [Signs::Empty, Signs::Plus, Signs::Minus, Signs::PlusMinus]
            .into_iter()
            .enumerate()
        {
            let extra = match signs {
                Signs::Empty => 0,
                Signs::Plus | Signs::Minus => 1,
                _ => 2,
            };
            if i + extra == 0 {
                continue;
            }
            for _ in 0..new[k] {
                cols.push(PmColumn {
                    outer: i + extra,
                    signs,
                });
            }
        }
    }
    let mut q = PmDiagram {
        ty: p.ty,
        spin: None,
        columns: cols,
    };
    q.sort_columns();
    q.validate().map_err(PmError::FrakS)?;
    Ok(q)
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchingReport {
    pub ok: bool,
    pub from_diagrams: Vec<String>,
    pub from_crystal: Vec<String>,
}

/// Inner weights of the type D_n ±-diagrams of outer shape Λ when Λ has
/// columns of height n−1 or n. Outer columns of height n carry a color (the
/// sign of λ_n); inner columns of height n−1 are colored too, so each inner
/// shape with such columns appears with both signs of its last coordinate.
/// Height-n columns all lose their top cell, hence never mix + and −.
pub fn colored_inner_weights_d(ty: ClassicalType, lam: &Weight) -> Result<Vec<Weight>, PmError> {
    let n = ty.rank;
    let bad = || PmError::Inadmissible(lam.to_string(), ty.to_string());
    let rows = lam.to_ints().ok_or_else(bad)?;
    if ty.family != Family::D || !ty.is_dominant(lam) {
        return Err(bad());
    }
    let outer: Vec<i32> = rows.iter().map(|x| x.abs()).collect();
    // mid: outer/mid a horizontal strip, mid has n−1 rows
    let mut mids = vec![Vec::new()];
    for i in 0..n - 1 {
        let mut next = Vec::new();
        for m in &mids {
            for v in outer[i + 1]..=outer[i] {
                let mut m2: Vec<i32> = m.clone();
                m2.push(v);
                next.push(m2);
            }
        }
        mids = next;
    }
    let mut out = Vec::new();
    for mid in &mids {
        // mid/inner a horizontal strip, inner has n−1 rows
        let mut inners = vec![Vec::new()];
        for i in 0..n - 1 {
            let lo = if i + 1 < n - 1 { mid[i + 1] } else { 0 };
            let mut next = Vec::new();
            for m in &inners {
                for v in lo..=mid[i] {
                    let mut m2: Vec<i32> = m.clone();
                    m2.push(v);
                    next.push(m2);
                }
            }
            inners = next;
        }
        for mut inner in inners {
            out.push(Weight::from_ints(&inner));
            if inner[n - 2] > 0 {
                inner[n - 2] = -inner[n - 2];
                out.push(Weight::from_ints(&inner));
            }
        }
    }
    Ok(out)
}

/// Compare inner shapes of diagrams with the {2..n}-highest weights of B(Λ).
pub fn branching_check(
    ty: ClassicalType,
    lam: &Weight,
    budget: usize,
) -> Result<BranchingReport, PmError> {
    let tall = ty.family == Family::D
        && lam
            .to_ints()
            .is_some_and(|r| r.len() >= ty.rank && r[ty.rank - 2] != 0);
    let mut a: Vec<Weight> = if tall {
        colored_inner_weights_d(ty, lam)?
    } else {
        enumerate_pm(ty, lam)?
            .iter()
            .map(|p| p.inner_weight())
            .collect()
    };
    let g = build_classical(ty, lam, budget)?;
    let j: Vec<usize> = (2..=ty.rank).collect();
    let mut b: Vec<Weight> = g
        .graph
        .highest(&j)
        .into_iter()
        .map(|x| g.graph.weight(x).tail(1))
        .collect();
    a.sort();
    b.sort();
    Ok(BranchingReport {
        ok: a == b,
        from_diagrams: a.iter().map(|w| w.to_string()).collect(),
        from_crystal: b.iter().map(|w| w.to_string()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(f: Family, n: usize) -> ClassicalType {
        ClassicalType::new(f, n).unwrap()
    }

    #[test]
    fn c2_counts() {
        let c2 = ct(Family::C, 2);
        assert_eq!(
            enumerate_pm(c2, &Weight::from_ints(&[1, 0])).unwrap().len(),
            3
        );
        assert_eq!(
            enumerate_pm(c2, &Weight::from_ints(&[0, 0])).unwrap().len(),
            1
        );
        assert_eq!(
            enumerate_pm(c2, &Weight::from_ints(&[2, 0])).unwrap().len(),
            6
        );
    }

    #[test]
    fn phi_single_box() {
        let c2 = ct(Family::C, 2);
        let mk = |signs| PmDiagram {
            ty: c2,
            spin: None,
            columns: vec![PmColumn { outer: 1, signs }],
        };
        assert_eq!(phi(&mk(Signs::Plus)).unwrap().columns(), vec![vec![1]]);
        assert_eq!(phi(&mk(Signs::Minus)).unwrap().columns(), vec![vec![-1]]);
        assert_eq!(phi(&mk(Signs::Empty)).unwrap().columns(), vec![vec![2]]);
    }
}
