//! Finite seminormal crystals as labeled digraphs.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use thiserror::Error;

use crate::cartan::{AffineType, CartanError, ClassicalType, Weight};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrystalError {
    #[error("element budget of {budget} exceeded")]
    BudgetExceeded { budget: usize },
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("color {color} is not in the index set")]
    UnknownColor { color: usize },
    #[error("f_{color} is not injective at `{label}`")]
    NotInjective { color: usize, label: String },
    #[error("color {color} string through `{label}` is not a finite interval")]
    InfiniteString { color: usize, label: String },
    #[error("operator oracle failed: {0}")]
    Oracle(String),
    #[error("e_{color} and f_{color} are not inverse at `{label}`")]
    NotInverse { color: usize, label: String },
    #[error("index sets differ: {0} vs {1}")]
    IndexMismatch(String, String),
    #[error(transparent)]
    Cartan(#[from] CartanError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dir {
    E,
    F,
}

/// Colors with the classical projections of their roots and coroots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub name: String,
    pub colors: Vec<usize>,
    pub roots: Vec<Vec<i32>>,
    pub coroots: Vec<Vec<i32>>,
    pub dim: usize,
}

impl RootDatum {
    pub fn classical(ct: ClassicalType) -> Self {
        let colors = ct.index_set();
        RootDatum {
            name: ct.to_string(),
            roots: colors.iter().map(|&i| ct.root(i).unwrap()).collect(),
            coroots: colors.iter().map(|&i| ct.coroot(i).unwrap()).collect(),
            colors,
            dim: ct.dim(),
        }
    }

    pub fn affine(at: AffineType) -> Self {
        let colors = at.index_set();
        RootDatum {
            name: at.to_string(),
            roots: colors.iter().map(|&i| at.root(i).unwrap()).collect(),
            coroots: colors.iter().map(|&i| at.coroot(i).unwrap()).collect(),
            colors,
            dim: at.classical().dim(),
        }
    }

    /// Resolve a datum from its name: affine tags like `C1:2`, classical like `C2`.
    pub fn from_name(name: &str) -> Result<Self, CartanError> {
        if name.contains(':') {
            Ok(RootDatum::affine(name.parse()?))
        } else {
            Ok(RootDatum::classical(name.parse()?))
        }
    }

    pub fn pos(&self, color: usize) -> Option<usize> {
        self.colors.iter().position(|&c| c == color)
    }

    pub fn pairing_at(&self, pos: usize, wt: &Weight) -> i32 {
        let s: i32 = self.coroots[pos]
            .iter()
            .zip(wt.doubled())
            .map(|(h, x)| h * x)
            .sum();
        s / 2
    }

    pub fn pairing(&self, color: usize, wt: &Weight) -> Option<i32> {
        self.pos(color).map(|p| self.pairing_at(p, wt))
    }
}

/// An immutable finite crystal graph with canonical element ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrystalGraph {
    datum: RootDatum,
    labels: Vec<String>,
    weights: Vec<Weight>,
    f: Vec<Vec<Option<u32>>>,
    e: Vec<Vec<Option<u32>>>,
    eps: Vec<Vec<u32>>,
    phi: Vec<Vec<u32>>,
}

pub struct Generated<E> {
    pub graph: CrystalGraph,
    /// Elements in canonical id order.
    pub elements: Vec<E>,
}

impl CrystalGraph {
    /// Build from raw f-tables (indexed by color position, then element).
    /// Elements are renumbered by label order.
    pub fn from_tables(
        datum: RootDatum,
        labels: Vec<String>,
        weights: Vec<Weight>,
        f: Vec<Vec<Option<u32>>>,
    ) -> Result<Self, CrystalError> {
        let (g, _) = Self::from_tables_perm(datum, labels, weights, f)?;
        Ok(g)
    }

    /// As `from_tables`, also returning `perm[old] = new`.
    pub fn from_tables_perm(
        datum: RootDatum,
        labels: Vec<String>,
        weights: Vec<Weight>,
        f: Vec<Vec<Option<u32>>>,
    ) -> Result<(Self, Vec<u32>), CrystalError> {
        let n = labels.len();
        assert_eq!(weights.len(), n);
        assert_eq!(f.len(), datum.colors.len());
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_by(|&a, &b| labels[a as usize].cmp(&labels[b as usize]));
        for w in order.windows(2) {
            if labels[w[0] as usize] == labels[w[1] as usize] {
                return Err(CrystalError::DuplicateLabel(labels[w[0] as usize].clone()));
            }
        }
        let mut perm = vec![0u32; n];
        for (new, &old) in order.iter().enumerate() {
            perm[old as usize] = new as u32;
        }
        let new_labels: Vec<String> = order.iter().map(|&o| labels[o as usize].clone()).collect();
        let new_weights: Vec<Weight> = order.iter().map(|&o| weights[o as usize].clone()).collect();
        let mut new_f = Vec::with_capacity(f.len());
        for table in &f {
            let mut t = vec![None; n];
            for (old, x) in table.iter().enumerate() {
                t[perm[old] as usize] = x.map(|y| perm[y as usize]);
            }
            new_f.push(t);
        }
        let g = Self::assemble(datum, new_labels, new_weights, new_f)?;
        Ok((g, perm))
    }

    fn assemble(
        datum: RootDatum,
        labels: Vec<String>,
        weights: Vec<Weight>,
        f: Vec<Vec<Option<u32>>>,
    ) -> Result<Self, CrystalError> {
        let n = labels.len();
        let mut e = Vec::with_capacity(f.len());
        for (p, table) in f.iter().enumerate() {
            let mut t: Vec<Option<u32>> = vec![None; n];
            for (b, x) in table.iter().enumerate() {
                if let Some(c) = x {
                    if t[*c as usize].is_some() {
                        return Err(CrystalError::NotInjective {
                            color: datum.colors[p],
                            label: labels[*c as usize].clone(),
                        });
                    }
                    t[*c as usize] = Some(b as u32);
                }
            }
            e.push(t);
        }
        let mut eps = Vec::with_capacity(f.len());
        let mut phi = Vec::with_capacity(f.len());
        for p in 0..f.len() {
            let mut ep = vec![u32::MAX; n];
            let mut ph = vec![u32::MAX; n];
            for (head, up) in e[p].iter().enumerate() {
                if up.is_some() {
                    continue;
                }
                let mut chain = vec![head as u32];
                let mut cur = head as u32;
                while let Some(nx) = f[p][cur as usize] {
                    chain.push(nx);
                    cur = nx;
                    if chain.len() > n {
                        break;
                    }
                }
                let len = chain.len() as u32;
                for (k, &b) in chain.iter().enumerate() {
                    ep[b as usize] = k as u32;
                    ph[b as usize] = len - 1 - k as u32;
                }
            }
            if let Some(bad) = ep.iter().position(|&x| x == u32::MAX) {
                return Err(CrystalError::InfiniteString {
                    color: datum.colors[p],
                    label: labels[bad].clone(),
                });
            }
            eps.push(ep);
            phi.push(ph);
        }
        Ok(CrystalGraph {
            datum,
            labels,
            weights,
            f,
            e,
            eps,
            phi,
        })
    }

    pub fn empty(datum: RootDatum) -> Self {
        let k = datum.colors.len();
        CrystalGraph {
            datum,
            labels: vec![],
            weights: vec![],
            f: vec![vec![]; k],
            e: vec![vec![]; k],
            eps: vec![vec![]; k],
            phi: vec![vec![]; k],
        }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn colors(&self) -> &[usize] {
        &self.datum.colors
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = u32> {
        0..self.len() as u32
    }

    pub fn label(&self, b: u32) -> &str {
        &self.labels[b as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weight(&self, b: u32) -> &Weight {
        &self.weights[b as usize]
    }

    pub fn find(&self, label: &str) -> Option<u32> {
        self.labels
            .binary_search_by(|l| l.as_str().cmp(label))
            .ok()
            .map(|i| i as u32)
    }

    fn p(&self, color: usize) -> usize {
        self.datum
            .pos(color)
            .unwrap_or_else(|| panic!("color {color} not in {:?}", self.datum.colors))
    }

    pub fn has_color(&self, color: usize) -> bool {
        self.datum.pos(color).is_some()
    }

    pub fn f(&self, color: usize, b: u32) -> Option<u32> {
        self.f[self.p(color)][b as usize]
    }

    pub fn e(&self, color: usize, b: u32) -> Option<u32> {
        self.e[self.p(color)][b as usize]
    }

    pub fn op(&self, color: usize, dir: Dir, b: u32) -> Option<u32> {
        match dir {
            Dir::E => self.e(color, b),
            Dir::F => self.f(color, b),
        }
    }

    pub fn f_pow(&self, color: usize, k: u32, b: u32) -> Option<u32> {
        (0..k).try_fold(b, |x, _| self.f(color, x))
    }

    pub fn e_pow(&self, color: usize, k: u32, b: u32) -> Option<u32> {
        (0..k).try_fold(b, |x, _| self.e(color, x))
    }

    pub fn eps(&self, color: usize, b: u32) -> u32 {
        self.eps[self.p(color)][b as usize]
    }

    pub fn phi(&self, color: usize, b: u32) -> u32 {
        self.phi[self.p(color)][b as usize]
    }

    pub fn f_table(&self, color: usize) -> &[Option<u32>] {
        &self.f[self.p(color)]
    }

    /// ⟨h_i, wt(b)⟩ computed from the stored weight.
    pub fn pairing(&self, color: usize, b: u32) -> i32 {
        self.datum
            .pairing_at(self.p(color), &self.weights[b as usize])
    }

    /// Structural and weight checks; returns a list of problems.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (p, &c) in self.datum.colors.iter().enumerate() {
            for b in 0..self.len() {
                let wt = &self.weights[b];
                let pr = self.datum.pairing_at(p, wt);
                let diff = self.phi[p][b] as i32 - self.eps[p][b] as i32;
                if pr != diff {
                    out.push(format!(
                        "color {c}: ⟨h,wt⟩={pr} but φ−ε={diff} at `{}`",
                        self.labels[b]
                    ));
                }
                if let Some(x) = self.f[p][b] {
                    let expect = wt.minus_root(&self.datum.roots[p]);
                    if self.weights[x as usize] != expect {
                        out.push(format!(
                            "color {c}: wt(f b) ≠ wt(b) − α at `{}`",
                            self.labels[b]
                        ));
                    }
                }
                if out.len() > 20 {
                    return out;
                }
            }
        }
        out
    }

    /// Elements killed by every e_j, j ∈ J.
    pub fn highest(&self, colors: &[usize]) -> Vec<u32> {
        let ps: Vec<usize> = colors.iter().map(|&c| self.p(c)).collect();
        self.ids()
            .filter(|&b| ps.iter().all(|&p| self.e[p][b as usize].is_none()))
            .collect()
    }

    pub fn lowest(&self, colors: &[usize]) -> Vec<u32> {
        let ps: Vec<usize> = colors.iter().map(|&c| self.p(c)).collect();
        self.ids()
            .filter(|&b| ps.iter().all(|&p| self.f[p][b as usize].is_none()))
            .collect()
    }

    pub fn is_highest(&self, colors: &[usize], b: u32) -> bool {
        colors.iter().all(|&c| self.e(c, b).is_none())
    }

    /// Connected components of the J-colored subgraph, each sorted, ordered by
    /// smallest member.
    pub fn restrict(&self, colors: &[usize]) -> Vec<Vec<u32>> {
        let n = self.len();
        let ps: Vec<usize> = colors.iter().map(|&c| self.p(c)).collect();
        let mut comp = vec![u32::MAX; n];
        let mut out: Vec<Vec<u32>> = Vec::new();
        for start in 0..n {
            if comp[start] != u32::MAX {
                continue;
            }
            let id = out.len() as u32;
            comp[start] = id;
            let mut members = vec![start as u32];
            let mut stack = vec![start as u32];
            while let Some(b) = stack.pop() {
                for &p in &ps {
                    for nb in [self.f[p][b as usize], self.e[p][b as usize]]
                        .into_iter()
                        .flatten()
                    {
                        if comp[nb as usize] == u32::MAX {
                            comp[nb as usize] = id;
                            members.push(nb);
                            stack.push(nb);
                        }
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.restrict(&self.datum.colors.clone()).len() <= 1
    }

    /// Simple reflection 𝒮_i acting on an element.
    pub fn weyl_reflection(&self, color: usize, b: u32) -> u32 {
        let k = self.phi(color, b) as i64 - self.eps(color, b) as i64;
        if k >= 0 {
            self.f_pow(color, k as u32, b).expect("seminormal string")
        } else {
            self.e_pow(color, (-k) as u32, b)
                .expect("seminormal string")
        }
    }

    /// Walk up to the J-highest element of the J-component of `b`, returning
    /// it and the colors used (in order of application of e).
    pub fn raise_to_highest(&self, colors: &[usize], b: u32) -> (u32, Vec<usize>) {
        let mut cur = b;
        let mut path = Vec::new();
        'outer: loop {
            for &c in colors {
                if let Some(x) = self.e(c, cur) {
                    cur = x;
                    path.push(c);
                    continue 'outer;
                }
            }
            return (cur, path);
        }
    }

    /// Highest weights of the J-components for the classical type `ct`,
    /// requiring a unique dominant highest element per component.
    pub fn classical_decomposition(&self, ct: ClassicalType) -> Result<Vec<Weight>, String> {
        let colors = ct.index_set();
        let mut out = Vec::new();
        for comp in self.restrict(&colors) {
            let hs: Vec<u32> = comp
                .iter()
                .copied()
                .filter(|&b| self.is_highest(&colors, b))
                .collect();
            if hs.len() != 1 {
                return Err(format!(
                    "component of `{}` has {} highest elements",
                    self.labels[comp[0] as usize],
                    hs.len()
                ));
            }
            let w = self.weights[hs[0] as usize].clone();
            if !ct.is_dominant(&w) {
                return Err(format!("highest weight {w} is not dominant"));
            }
            out.push(w);
        }
        out.sort();
        Ok(out)
    }

    /// Same elements, colors restricted to `colors` (a subset of the index set),
    /// with a new datum.
    pub fn with_colors(&self, datum: RootDatum) -> Result<Self, CrystalError> {
        let mut f = Vec::new();
        for &c in &datum.colors {
            let p = self
                .datum
                .pos(c)
                .ok_or(CrystalError::UnknownColor { color: c })?;
            f.push(self.f[p].clone());
        }
        Self::assemble(datum, self.labels.clone(), self.weights.clone(), f)
    }

    /// Add or replace the table of one color.
    pub fn with_color_table(
        &self,
        datum: RootDatum,
        color: usize,
        table: Vec<Option<u32>>,
    ) -> Result<Self, CrystalError> {
        let mut f = Vec::new();
        for &c in &datum.colors {
            if c == color {
                f.push(table.clone());
            } else {
                let p = self
                    .datum
                    .pos(c)
                    .ok_or(CrystalError::UnknownColor { color: c })?;
                f.push(self.f[p].clone());
            }
        }
        Self::assemble(datum, self.labels.clone(), self.weights.clone(), f)
    }

    /// Relabel every element and recompute canonical order.
    pub fn relabel(
        &self,
        f: impl Fn(u32, &str) -> String,
    ) -> Result<(Self, Vec<u32>), CrystalError> {
        let labels = self.ids().map(|b| f(b, self.label(b))).collect();
        Self::from_tables_perm(
            self.datum.clone(),
            labels,
            self.weights.clone(),
            self.f.clone(),
        )
    }

    /// Subgraph induced on `keep` (must be closed under all operators).
    pub fn induced(&self, keep: &[u32]) -> Result<(Self, Vec<u32>), CrystalError> {
        let mut map = vec![u32::MAX; self.len()];
        for (k, &b) in keep.iter().enumerate() {
            map[b as usize] = k as u32;
        }
        let mut f = Vec::new();
        for p in 0..self.datum.colors.len() {
            let mut t = Vec::with_capacity(keep.len());
            for &b in keep {
                let x = self.f[p][b as usize].map(|y| map[y as usize]);
                if x == Some(u32::MAX) {
                    return Err(CrystalError::Oracle("induced set not closed".into()));
                }
                t.push(x);
            }
            f.push(t);
        }
        let labels = keep
            .iter()
            .map(|&b| self.labels[b as usize].clone())
            .collect();
        let weights = keep
            .iter()
            .map(|&b| self.weights[b as usize].clone())
            .collect();
        Self::from_tables_perm(self.datum.clone(), labels, weights, f)
    }
}

/// Closure of `seeds` under the operator oracle; ids follow label order.
pub fn generate<E, Op, L, W>(
    datum: &RootDatum,
    seeds: Vec<E>,
    mut op: Op,
    label: L,
    weight: W,
    budget: usize,
) -> Result<Generated<E>, CrystalError>
where
    E: Clone + Eq + Hash,
    Op: FnMut(&E, usize, Dir) -> Result<Option<E>, CrystalError>,
    L: Fn(&E) -> String,
    W: Fn(&E) -> Weight,
{
    let k = datum.colors.len();
    let mut index: HashMap<E, u32> = HashMap::new();
    let mut elems: Vec<E> = Vec::new();
    let mut queue = VecDeque::new();
    for s in seeds {
        if !index.contains_key(&s) {
            index.insert(s.clone(), elems.len() as u32);
            queue.push_back(elems.len() as u32);
            elems.push(s);
        }
    }
    if elems.len() > budget {
        return Err(CrystalError::BudgetExceeded { budget });
    }
    let mut f: Vec<Vec<Option<u32>>> = vec![Vec::new(); k];
    let mut e: Vec<Vec<Option<u32>>> = vec![Vec::new(); k];
    while let Some(b) = queue.pop_front() {
        let cur = elems[b as usize].clone();
        for (p, &c) in datum.colors.iter().enumerate() {
            for dir in [Dir::F, Dir::E] {
                let res = op(&cur, c, dir)?;
                let id = match res {
                    None => None,
                    Some(x) => Some(match index.get(&x) {
                        Some(&i) => i,
                        None => {
                            let i = elems.len() as u32;
                            if elems.len() >= budget {
                                return Err(CrystalError::BudgetExceeded { budget });
                            }
                            index.insert(x.clone(), i);
                            elems.push(x);
                            queue.push_back(i);
                            i
                        }
                    }),
                };
                let t = if dir == Dir::F { &mut f[p] } else { &mut e[p] };
                if t.len() <= b as usize {
                    t.resize(b as usize + 1, None);
                }
                t[b as usize] = id;
            }
        }
    }
    let n = elems.len();
    for p in 0..k {
        f[p].resize(n, None);
        e[p].resize(n, None);
        for b in 0..n {
            if let Some(x) = f[p][b] {
                if e[p][x as usize] != Some(b as u32) {
                    return Err(CrystalError::NotInverse {
                        color: datum.colors[p],
                        label: label(&elems[b]),
                    });
                }
            }
            if let Some(x) = e[p][b] {
                if f[p][x as usize] != Some(b as u32) {
                    return Err(CrystalError::NotInverse {
                        color: datum.colors[p],
                        label: label(&elems[b]),
                    });
                }
            }
        }
    }
    let labels: Vec<String> = elems.iter().map(&label).collect();
    let weights: Vec<Weight> = elems.iter().map(&weight).collect();
    let (graph, perm) = CrystalGraph::from_tables_perm(datum.clone(), labels, weights, f)?;
    let mut ordered: Vec<Option<E>> = vec![None; n];
    for (old, x) in elems.into_iter().enumerate() {
        ordered[perm[old] as usize] = Some(x);
    }
    Ok(Generated {
        graph,
        elements: ordered.into_iter().map(|x| x.unwrap()).collect(),
    })
}

/// Tensor product b1 ⊗ b2: f acts on b1 iff φ(b1) > ε(b2), e acts on b1 iff
/// φ(b1) ≥ ε(b2).
pub fn tensor(
    b1: &CrystalGraph,
    b2: &CrystalGraph,
    budget: usize,
) -> Result<CrystalGraph, CrystalError> {
    if b1.datum != b2.datum {
        return Err(CrystalError::IndexMismatch(
            b1.datum.name.clone(),
            b2.datum.name.clone(),
        ));
    }
    let n1 = b1.len();
    let n2 = b2.len();
    if n1.saturating_mul(n2) > budget {
        return Err(CrystalError::BudgetExceeded { budget });
    }
    let idx = |x: u32, y: u32| x * n2 as u32 + y;
    let mut f = Vec::new();
    for &c in b1.colors() {
        let mut t = vec![None; n1 * n2];
        for x in 0..n1 as u32 {
            for y in 0..n2 as u32 {
                let r = if b1.phi(c, x) > b2.eps(c, y) {
                    b1.f(c, x).map(|x2| idx(x2, y))
                } else {
                    b2.f(c, y).map(|y2| idx(x, y2))
                };
                t[idx(x, y) as usize] = r;
            }
        }
        f.push(t);
    }
    let mut labels = Vec::with_capacity(n1 * n2);
    let mut weights = Vec::with_capacity(n1 * n2);
    for x in 0..n1 as u32 {
        for y in 0..n2 as u32 {
            labels.push(format!("{} ⊗ {}", b1.label(x), b2.label(y)));
            weights.push(b1.weight(x).add(b2.weight(y)));
        }
    }
    CrystalGraph::from_tables(b1.datum.clone(), labels, weights, f)
}

/// Disjoint union with labels prefixed by the summand index.
pub fn disjoint_union(parts: &[&CrystalGraph]) -> Result<CrystalGraph, CrystalError> {
    let datum = parts[0].datum.clone();
    let mut labels = Vec::new();
    let mut weights = Vec::new();
    let mut f: Vec<Vec<Option<u32>>> = vec![Vec::new(); datum.colors.len()];
    let mut offset = 0u32;
    for (k, g) in parts.iter().enumerate() {
        if g.datum != datum {
            return Err(CrystalError::IndexMismatch(
                datum.name.clone(),
                g.datum.name.clone(),
            ));
        }
        for b in g.ids() {
            labels.push(format!("{k}:{}", g.label(b)));
            weights.push(g.weight(b).clone());
        }
        for (p, t) in f.iter_mut().enumerate() {
            t.extend(g.f[p].iter().map(|x| x.map(|y| y + offset)));
        }
        offset += g.len() as u32;
    }
    CrystalGraph::from_tables(datum, labels, weights, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Family;

    fn a1() -> RootDatum {
        RootDatum::classical(ClassicalType::new(Family::A, 1).unwrap())
    }

    fn chain(len: u32) -> CrystalGraph {
        let d = a1();
        let labels = (0..len).map(|i| format!("{i}")).collect();
        let weights = (0..len)
            .map(|i| Weight::from_ints(&[(len - 1 - i) as i32, i as i32]))
            .collect();
        let f = vec![(0..len)
            .map(|i| if i + 1 < len { Some(i + 1) } else { None })
            .collect()];
        CrystalGraph::from_tables(d, labels, weights, f).unwrap()
    }

    #[test]
    fn chain_stats() {
        let g = chain(3);
        assert_eq!(g.eps(1, 0), 0);
        assert_eq!(g.phi(1, 0), 2);
        assert_eq!(g.eps(1, 2), 2);
        assert!(g.validate().is_empty());
        assert_eq!(g.weyl_reflection(1, 0), 2);
        assert_eq!(g.weyl_reflection(1, 1), 1);
    }

    #[test]
    fn tensor_of_two_strings() {
        let g = chain(2);
        let t = tensor(&g, &g, 100).unwrap();
        assert_eq!(t.len(), 4);
        let comps = t.restrict(&[1]);
        let mut sizes: Vec<usize> = comps.iter().map(|c| c.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3]);
        assert!(t.validate().is_empty());
    }

    #[test]
    fn empty_generate() {
        let g = generate(
            &a1(),
            Vec::<u8>::new(),
            |_, _, _| Ok(None),
            |x| x.to_string(),
            |_| Weight::zero(2),
            10,
        )
        .unwrap();
        assert!(g.graph.is_empty());
        let g = generate(
            &a1(),
            vec![7u8],
            |_, _, _| Ok(None),
            |x| x.to_string(),
            |_| Weight::zero(2),
            10,
        )
        .unwrap();
        assert_eq!(g.graph.len(), 1);
        assert_eq!(g.graph.eps(1, 0), 0);
        assert_eq!(g.graph.phi(1, 0), 0);
    }

    #[test]
    fn budget_guard() {
        let r = generate(
            &a1(),
            vec![0u32],
            |x, _, d| {
                Ok(if d == Dir::F {
                    Some(x + 1)
                } else {
                    x.checked_sub(1)
                })
            },
            |x| x.to_string(),
            |_| Weight::zero(2),
            50,
        );
        assert!(matches!(r, Err(CrystalError::BudgetExceeded { .. })));
    }
}
