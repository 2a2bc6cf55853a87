//! Saturation matrix and the support operations built on it.
//!
//! Everything here works on skeleton element ids (row indices of the
//! saturation matrix) and constraint ids (column indices). Singular
//! elements (lines, or equalities on the constraint side) saturate every
//! column and are left out of supports.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use num_traits::{Signed, Zero};

use crate::arith::HomVec;
use crate::eps::enumerate_faces_bruteforce;
use crate::error::{Error, Result};
use crate::geom::{ConKind, Constraint, GenKind, Generator, SkelGenSys};
use crate::stats::StatsRecord;

/// Sorted set of skeleton element ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Support(Vec<usize>);

impl Support {
    pub fn new(ids: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = ids.into_iter().collect();
        Support(set.into_iter().collect())
    }

    pub fn ids(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.0.binary_search(&id).is_ok()
    }

    pub fn is_subset(&self, other: &Support) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|x| it.by_ref().any(|y| y == x))
    }

    pub fn with(&self, id: usize) -> Support {
        let mut v = self.0.clone();
        if let Err(pos) = v.binary_search(&id) {
            v.insert(pos, id);
        }
        Support(v)
    }

    pub fn filter(&self, keep: impl Fn(usize) -> bool) -> Support {
        Support(self.0.iter().copied().filter(|&i| keep(i)).collect())
    }

    /// Renumbers ids through `map`; `None` entries mark removed elements.
    pub fn remap(&self, map: &[Option<usize>]) -> Result<Support> {
        let mut v = Vec::with_capacity(self.0.len());
        for &i in &self.0 {
            v.push(map.get(i).copied().flatten().ok_or(Error::StaleId(i))?);
        }
        v.sort_unstable();
        Ok(Support(v))
    }
}

impl FromIterator<usize> for Support {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Support::new(iter)
    }
}

/// Row `g`, column `c` is set iff element `g` saturates column `c`.
#[derive(Debug, Clone, Default)]
pub struct SatMatrix {
    rows: Vec<FixedBitSet>,
    ncols: usize,
}

impl SatMatrix {
    pub fn new(ncols: usize) -> Self {
        SatMatrix { rows: Vec::new(), ncols }
    }

    /// Computes every bit from scratch.
    pub fn from_rows(elems: &[HomVec], cols: &[HomVec]) -> Self {
        let mut m = SatMatrix::new(cols.len());
        for e in elems {
            let mut bits = FixedBitSet::with_capacity(cols.len());
            for (c, col) in cols.iter().enumerate() {
                bits.set(c, col.dot(e).is_zero());
            }
            m.rows.push(bits);
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, g: usize) -> Result<&FixedBitSet> {
        self.rows.get(g).ok_or(Error::StaleId(g))
    }

    pub fn get(&self, g: usize, c: usize) -> bool {
        self.rows[g].contains(c)
    }

    pub fn push_row(&mut self, mut bits: FixedBitSet) {
        bits.grow(self.ncols);
        self.rows.push(bits);
    }

    pub fn push_col(&mut self, saturated: impl Fn(usize) -> bool) {
        self.ncols += 1;
        for (g, bits) in self.rows.iter_mut().enumerate() {
            bits.grow(self.ncols);
            bits.set(self.ncols - 1, saturated(g));
        }
    }

    /// Keeps the rows whose flag is set, in order.
    pub fn retain_rows(&mut self, keep: &[bool]) {
        let mut k = keep.iter();
        self.rows.retain(|_| *k.next().unwrap_or(&false));
    }
}

/// Read-only view of a skeleton for support computations.
#[derive(Clone, Copy)]
pub struct SkelView<'a> {
    pub sat: &'a SatMatrix,
    pub singular: &'a [bool],
}

impl SkelView<'_> {
    /// Columns saturated by every element of `ids`.
    pub fn sat_inter_c(&self, ids: &Support, stats: &mut StatsRecord) -> Result<FixedBitSet> {
        let mut acc = FixedBitSet::with_capacity(self.sat.ncols());
        acc.insert_range(..);
        for &g in ids.ids() {
            acc.intersect_with(self.sat.row(g)?);
            stats.sat_ops += 1;
        }
        Ok(acc)
    }

    /// Non-singular elements saturating every column of `cols`.
    pub fn sat_inter_sk(&self, cols: &FixedBitSet, stats: &mut StatsRecord) -> Support {
        let mut out = Vec::new();
        for g in 0..self.sat.nrows() {
            if self.singular[g] {
                continue;
            }
            stats.sat_ops += 1;
            if cols.is_subset(&self.sat.rows[g]) {
                out.push(g);
            }
        }
        Support(out)
    }

    /// Skeleton elements of the smallest face containing `ns`.
    pub fn supp_cl(&self, ns: &Support, stats: &mut StatsRecord) -> Result<Support> {
        let cols = self.sat_inter_c(ns, stats)?;
        Ok(self.sat_inter_sk(&cols, stats))
    }

    /// Combinatorial adjacency: no third non-singular element saturates all
    /// columns saturated by both.
    pub fn adjacent(&self, g1: usize, g2: usize, stats: &mut StatsRecord) -> Result<bool> {
        if g1 == g2 {
            return Err(Error::Kind("adjacency of an element with itself".into()));
        }
        let mut common = self.sat.row(g1)?.clone();
        common.intersect_with(self.sat.row(g2)?);
        stats.sat_ops += 1;
        for g in 0..self.sat.nrows() {
            if g == g1 || g == g2 || self.singular[g] {
                continue;
            }
            stats.sat_ops += 1;
            if common.is_subset(&self.sat.rows[g]) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Pos,
    Zero,
    Neg,
}

impl Sign {
    pub fn of(x: &num_bigint::BigInt) -> Sign {
        if x.is_positive() {
            Sign::Pos
        } else if x.is_negative() {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NsClass {
    Pos,
    Zero,
    Neg,
    Mixed,
}

/// Where a support lies with respect to the constraint that produced
/// `signs`.
pub fn classify_ns(ns: &Support, signs: &[Sign]) -> NsClass {
    let pos = ns.ids().iter().any(|&i| signs[i] == Sign::Pos);
    let neg = ns.ids().iter().any(|&i| signs[i] == Sign::Neg);
    match (pos, neg) {
        (true, true) => NsClass::Mixed,
        (true, false) => NsClass::Pos,
        (false, true) => NsClass::Neg,
        (false, false) => NsClass::Zero,
    }
}

/// Restriction of a closed support to the part kept by a constraint of
/// kind `kind`: drop the violating side for strict inequalities, keep only
/// the hyperplane otherwise.
pub fn proj(kind: ConKind, ns: &Support, signs: &[Sign]) -> Result<Support> {
    let out = match kind {
        ConKind::Strict => ns.filter(|i| signs[i] != Sign::Neg),
        _ => ns.filter(|i| signs[i] == Sign::Zero),
    };
    if out.is_empty() {
        return Err(Error::EmptySupport);
    }
    Ok(out)
}

/// Union of support families with redundant members removed: duplicates,
/// strict supersets of another member, and members meeting a skeleton
/// point (`is_sp`).
pub fn nonredundant_union(
    parts: impl IntoIterator<Item = Support>,
    is_sp: impl Fn(usize) -> bool,
    stats: &mut StatsRecord,
) -> Vec<Support> {
    let mut all: Vec<Support> = parts
        .into_iter()
        .filter(|s| !s.ids().iter().any(|&i| is_sp(i)))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    all.sort_by_key(Support::len);
    let mut out: Vec<Support> = Vec::new();
    for s in all {
        let mut dominated = false;
        for kept in &out {
            stats.sat_ops += 1;
            if kept.is_subset(&s) {
                dominated = true;
                break;
            }
        }
        if !dominated {
            out.push(s);
        }
    }
    out.sort();
    out
}

/// Desk-scale bounds for [`alpha`] and [`gamma_contains`].
pub const GALOIS_MAX_DIM: usize = 3;
pub const GALOIS_MAX_ELEMS: usize = 8;

struct FaceTable {
    elems: Vec<Generator>,
    cons: Vec<Constraint>,
    faces: Vec<Support>,
}

fn face_table(sk: &SkelGenSys, cs: &[Constraint]) -> Result<FaceTable> {
    let elems = sk.generators();
    let dim = elems.first().map_or(0, Generator::space_dim);
    if dim > GALOIS_MAX_DIM || elems.len() > GALOIS_MAX_ELEMS {
        return Err(Error::ScaleLimit(format!("dimension {dim}, {} elements", elems.len())));
    }
    let cons: Vec<Constraint> = cs.iter().map(Constraint::closed).collect();
    let closed: Vec<Generator> = elems
        .iter()
        .map(|g| match g.kind {
            GenKind::ClosurePoint => Generator { kind: GenKind::Point, row: g.row.clone() },
            _ => g.clone(),
        })
        .collect();
    let faces = enumerate_faces_bruteforce(&cons, &closed)?
        .into_iter()
        .map(|f| Support::new(f.generators))
        .collect();
    Ok(FaceTable { elems, cons, faces })
}

impl FaceTable {
    /// Support of the face whose relative interior holds `p`, or `None`
    /// when `p` lies outside the closure.
    fn support_of(&self, p: &HomVec) -> Result<Option<Support>> {
        let mut tight = Vec::new();
        for (i, c) in self.cons.iter().enumerate() {
            let sp = c.row.dot(p);
            if !c.accepts(&sp) {
                return Ok(None);
            }
            if sp.is_zero() {
                tight.push(i);
            }
        }
        let ids = (0..self.elems.len())
            .filter(|&g| self.elems[g].kind != GenKind::Line)
            .filter(|&g| tight.iter().all(|&c| self.cons[c].row.dot(&self.elems[g].row).is_zero()));
        Ok(Some(Support::new(ids)))
    }
}

/// Upward-closed family of face supports touched by the points `s`.
///
/// Ids index `sk.generators()`; `cs` must describe the closure of the
/// polyhedron generated by `sk`.
pub fn alpha(s: &[HomVec], sk: &SkelGenSys, cs: &[Constraint]) -> Result<BTreeSet<Support>> {
    let table = face_table(sk, cs)?;
    let mut out = BTreeSet::new();
    for p in s {
        let Some(f) = table.support_of(p)? else {
            return Err(Error::Kind(format!("point {p:?} lies outside the closure")));
        };
        out.extend(table.faces.iter().filter(|g| f.is_subset(g)).cloned());
    }
    Ok(out)
}

/// Membership of `p` in the union of the relative interiors of the faces
/// named by `ns` (a family of face supports).
pub fn gamma_contains(ns: &BTreeSet<Support>, sk: &SkelGenSys, cs: &[Constraint], p: &HomVec) -> Result<bool> {
    let table = face_table(sk, cs)?;
    Ok(table.support_of(p)?.is_some_and(|f| ns.contains(&f)))
}

/// All face supports of the closure, for building test families.
pub fn face_supports(sk: &SkelGenSys, cs: &[Constraint]) -> Result<Vec<Support>> {
    Ok(face_table(sk, cs)?.faces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rational_point;

    fn square() -> (Vec<HomVec>, Vec<HomVec>) {
        let gens = [[0, 0], [1, 0], [1, 1], [0, 1]]
            .iter()
            .map(|c| rational_point(c, 1))
            .collect();
        let cons = [
            Constraint::ge(&[0, 1], 0),
            Constraint::le(&[1, 0], 1),
            Constraint::le(&[0, 1], 1),
            Constraint::ge(&[1, 0], 0),
        ]
        .iter()
        .map(|c| c.row.clone())
        .collect();
        (gens, cons)
    }

    fn st() -> StatsRecord {
        StatsRecord::default()
    }

    #[test]
    fn intersections_on_square() {
        let (g, c) = square();
        let sat = SatMatrix::from_rows(&g, &c);
        let view = SkelView { sat: &sat, singular: &[false; 4] };
        let one = view.sat_inter_c(&Support::new([1]), &mut st()).unwrap();
        assert_eq!(&one, sat.row(1).unwrap());
        // edge (0,0)-(1,0) saturates y >= 0 only
        let edge = view.sat_inter_c(&Support::new([0, 1]), &mut st()).unwrap();
        assert_eq!(edge.ones().collect::<Vec<_>>(), vec![0]);
        let opposite = view.sat_inter_c(&Support::new([0, 2]), &mut st()).unwrap();
        assert_eq!(opposite.count_ones(..), 0);
        assert_eq!(view.sat_inter_c(&Support::new([9]), &mut st()), Err(Error::StaleId(9)));
    }

    #[test]
    fn adjacency_on_square() {
        let (g, c) = square();
        let sat = SatMatrix::from_rows(&g, &c);
        let view = SkelView { sat: &sat, singular: &[false; 4] };
        let mut s = st();
        assert!(view.adjacent(0, 1, &mut s).unwrap());
        assert!(view.adjacent(1, 0, &mut s).unwrap());
        assert!(!view.adjacent(0, 2, &mut s).unwrap());
        assert!(!view.adjacent(1, 3, &mut s).unwrap());
        assert!(view.adjacent(1, 1, &mut s).is_err());
        assert!(s.sat_ops > 0);
    }

    #[test]
    fn support_closure_on_square() {
        let (g, c) = square();
        let sat = SatMatrix::from_rows(&g, &c);
        let view = SkelView { sat: &sat, singular: &[false; 4] };
        let mut s = st();
        assert_eq!(view.supp_cl(&Support::new([0, 2]), &mut s).unwrap(), Support::new(0..4));
        assert_eq!(view.supp_cl(&Support::new([0, 1]), &mut s).unwrap(), Support::new([0, 1]));
        assert_eq!(view.supp_cl(&Support::new([3]), &mut s).unwrap(), Support::new([3]));
    }

    #[test]
    fn classification_and_projection() {
        use Sign::*;
        let signs = [Pos, Pos, Neg, Neg, Zero, Zero];
        assert_eq!(classify_ns(&Support::new([0, 3]), &signs), NsClass::Mixed);
        assert_eq!(classify_ns(&Support::new([2, 3]), &signs), NsClass::Neg);
        assert_eq!(classify_ns(&Support::new([4, 5]), &signs), NsClass::Zero);
        assert_eq!(classify_ns(&Support::new([0, 4]), &signs), NsClass::Pos);
        let cl = Support::new([0, 3, 4]);
        assert_eq!(proj(ConKind::Strict, &cl, &signs).unwrap(), Support::new([0, 4]));
        assert_eq!(proj(ConKind::NonStrict, &cl, &signs).unwrap(), Support::new([4]));
        assert_eq!(proj(ConKind::NonStrict, &Support::new([0, 3]), &signs), Err(Error::EmptySupport));
    }

    #[test]
    fn union_drops_redundant_supports() {
        let mut s = st();
        let out = nonredundant_union([Support::new([0, 1]), Support::new([0, 1, 2])], |_| false, &mut s);
        assert_eq!(out, vec![Support::new([0, 1])]);
        let out = nonredundant_union([Support::new([0, 3, 1])], |i| i == 3, &mut s);
        assert!(out.is_empty());
        let out = nonredundant_union([Support::new([0, 1]), Support::new([2, 3])], |_| false, &mut s);
        assert_eq!(out.len(), 2);
    }

    #[test]
    fn support_set_operations() {
        let a = Support::new([3, 1]);
        assert_eq!(a.ids(), &[1, 3]);
        assert!(a.is_subset(&Support::new([0, 1, 2, 3])));
        assert!(!a.is_subset(&Support::new([1, 2])));
        assert_eq!(a.with(2), Support::new([1, 2, 3]));
        let map = [None, Some(0), None, Some(1)];
        assert_eq!(a.remap(&map).unwrap(), Support::new([0, 1]));
        assert_eq!(Support::new([2]).remap(&map), Err(Error::StaleId(2)));
    }

    #[test]
    fn alpha_of_empty_set() {
        let sk = SkelGenSys {
            skel_points: vec![rational_point(&[0], 1), rational_point(&[1], 1)],
            ..Default::default()
        };
        let cs = [Constraint::ge(&[1], 0), Constraint::le(&[1], 1)];
        assert!(alpha(&[], &sk, &cs).unwrap().is_empty());
        let all = alpha(&[rational_point(&[1], 2)], &sk, &cs).unwrap();
        assert_eq!(all.len(), 1);
        assert!(gamma_contains(&all, &sk, &cs, &rational_point(&[1], 3)).unwrap());
        assert!(!gamma_contains(&all, &sk, &cs, &rational_point(&[0], 1)).unwrap());
    }
}
