//! Constraint and generator kinds, skeleton systems and the membership
//! predicates used to state what a representation means.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::HomVec;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConKind {
    Equality,
    NonStrict,
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GenKind {
    Line,
    Ray,
    ClosurePoint,
    Point,
}

/// `a·x ⋈ b`, stored as the homogeneous row `(-b, a)` so that a generator
/// `g` satisfies it when `row · g ⋈ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Constraint {
    pub kind: ConKind,
    pub row: HomVec,
}

impl Constraint {
    pub fn new(kind: ConKind, row: HomVec) -> Result<Self> {
        if row.len() < 2 {
            return Err(Error::Dimension { expected: 2, found: row.len() });
        }
        let row = row.normalize(kind == ConKind::Equality)?;
        Ok(Constraint { kind, row })
    }

    fn from_parts(kind: ConKind, a: &[i64], b: i64, flip: bool) -> Self {
        let s = if flip { -1 } else { 1 };
        let mut c = vec![-b * s];
        c.extend(a.iter().map(|&x| x * s));
        Constraint::new(kind, HomVec::from_i64(&c)).expect("nonzero constraint row")
    }

    /// `a·x >= b`
    pub fn ge(a: &[i64], b: i64) -> Self {
        Self::from_parts(ConKind::NonStrict, a, b, false)
    }

    /// `a·x > b`
    pub fn gt(a: &[i64], b: i64) -> Self {
        Self::from_parts(ConKind::Strict, a, b, false)
    }

    /// `a·x <= b`
    pub fn le(a: &[i64], b: i64) -> Self {
        Self::from_parts(ConKind::NonStrict, a, b, true)
    }

    /// `a·x < b`
    pub fn lt(a: &[i64], b: i64) -> Self {
        Self::from_parts(ConKind::Strict, a, b, true)
    }

    /// `a·x = b`
    pub fn eq(a: &[i64], b: i64) -> Self {
        Self::from_parts(ConKind::Equality, a, b, false)
    }

    /// The tautology `1 >= 0` that keeps homogenized points on the
    /// positive side.
    pub fn positivity(dim: usize) -> Self {
        Constraint { kind: ConKind::NonStrict, row: HomVec::unit(dim + 1, 0) }
    }

    pub fn space_dim(&self) -> usize {
        self.row.space_dim()
    }

    /// Whether the homogeneous product `sp` is acceptable for a point.
    pub fn accepts(&self, sp: &BigInt) -> bool {
        match self.kind {
            ConKind::Equality => sp.is_zero(),
            ConKind::NonStrict => !sp.is_negative(),
            ConKind::Strict => sp.is_positive(),
        }
    }

    pub fn closed(&self) -> Constraint {
        let kind = match self.kind {
            ConKind::Strict => ConKind::NonStrict,
            k => k,
        };
        Constraint { kind, row: self.row.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub kind: GenKind,
    pub row: HomVec,
}

impl Generator {
    /// Validates the slot-0 discipline and normalizes the row.
    pub fn new(kind: GenKind, row: HomVec) -> Result<Self> {
        if row.len() < 2 {
            return Err(Error::Dimension { expected: 2, found: row.len() });
        }
        let s0 = row.slot0();
        let ok = match kind {
            GenKind::Line | GenKind::Ray => s0.is_zero() && !row.is_zero(),
            GenKind::ClosurePoint | GenKind::Point => s0.is_positive(),
        };
        if !ok {
            return Err(Error::Kind(format!("{kind:?} with homogenizing slot {s0}")));
        }
        let row = row.normalize(kind == GenKind::Line)?;
        Ok(Generator { kind, row })
    }

    fn point_like(kind: GenKind, coords: &[i64], div: i64) -> Self {
        let mut c = vec![div];
        c.extend_from_slice(coords);
        Generator::new(kind, HomVec::from_i64(&c)).expect("positive divisor")
    }

    /// The point `coords / div`.
    pub fn point(coords: &[i64], div: i64) -> Self {
        Self::point_like(GenKind::Point, coords, div)
    }

    pub fn closure_point(coords: &[i64], div: i64) -> Self {
        Self::point_like(GenKind::ClosurePoint, coords, div)
    }

    pub fn ray(dir: &[i64]) -> Self {
        let mut c = vec![0];
        c.extend_from_slice(dir);
        Generator::new(GenKind::Ray, HomVec::from_i64(&c)).expect("nonzero ray")
    }

    pub fn line(dir: &[i64]) -> Self {
        let mut c = vec![0];
        c.extend_from_slice(dir);
        Generator::new(GenKind::Line, HomVec::from_i64(&c)).expect("nonzero line")
    }

    pub fn space_dim(&self) -> usize {
        self.row.space_dim()
    }

    pub fn is_point_like(&self) -> bool {
        matches!(self.kind, GenKind::Point | GenKind::ClosurePoint)
    }
}

/// Generator skeleton `⟨L, R, C, SP⟩`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SkelGenSys {
    pub lines: Vec<HomVec>,
    pub rays: Vec<HomVec>,
    pub closure_points: Vec<HomVec>,
    pub skel_points: Vec<HomVec>,
}

impl SkelGenSys {
    pub fn len(&self) -> usize {
        self.lines.len() + self.rays.len() + self.closure_points.len() + self.skel_points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn generators(&self) -> Vec<Generator> {
        let tag = |kind, rows: &[HomVec]| {
            rows.iter()
                .map(|r| Generator { kind, row: r.clone() })
                .collect::<Vec<_>>()
        };
        let mut out = tag(GenKind::Line, &self.lines);
        out.extend(tag(GenKind::Ray, &self.rays));
        out.extend(tag(GenKind::ClosurePoint, &self.closure_points));
        out.extend(tag(GenKind::Point, &self.skel_points));
        out
    }
}

/// Constraint skeleton `⟨C=, C≥, SC>⟩`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SkelConSys {
    pub equalities: Vec<HomVec>,
    pub nonstrict: Vec<HomVec>,
    pub skel_strict: Vec<HomVec>,
}

impl SkelConSys {
    pub fn len(&self) -> usize {
        self.equalities.len() + self.nonstrict.len() + self.skel_strict.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn constraints(&self) -> Vec<Constraint> {
        let tag = |kind, rows: &[HomVec]| {
            rows.iter()
                .map(|r| Constraint { kind, row: r.clone() })
                .collect::<Vec<_>>()
        };
        let mut out = tag(ConKind::Equality, &self.equalities);
        out.extend(tag(ConKind::NonStrict, &self.nonstrict));
        out.extend(tag(ConKind::Strict, &self.skel_strict));
        out
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::Dimension { expected, found });
    }
    Ok(())
}

/// Rational point `coords / div` as a homogeneous row.
pub fn rational_point(coords: &[i64], div: i64) -> HomVec {
    Generator::point(coords, div).row
}

/// Membership of the homogeneous point `p` in `con(cs)`.
pub fn con_contains(cs: &[Constraint], p: &HomVec) -> Result<bool> {
    for c in cs {
        check_dim(c.row.len(), p.len())?;
        if !c.accepts(&c.row.dot(p)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership of `p` in the closed polyhedron generated by `sk` with its
/// closure points read as points.
pub fn full_gen_contains(sk: &SkelGenSys, p: &HomVec) -> Result<bool> {
    let gens = sk.generators();
    let Some(first) = gens.first() else {
        return Err(Error::EmptySystem);
    };
    check_dim(first.row.len(), p.len())?;
    let cons = crate::eps::closed_hull_constraints(&gens)?;
    con_contains(&cons, p)
}

/// Splits an arbitrary generator system into its skeleton and the points
/// that are not part of it.
///
/// Every skeleton element is one of the input rows (lines excepted, which
/// come back as a reduced basis of the lineality space). When a point and a
/// closure point sit on the same vertex the closure point is kept.
pub fn extract_skeleton(gs: &[Generator]) -> Result<(SkelGenSys, Vec<Generator>)> {
    if !gs.iter().any(Generator::is_point_like) {
        return Err(Error::EmptySystem);
    }
    let len = gs[0].row.len();
    for g in gs {
        check_dim(len, g.row.len())?;
    }
    let closure = crate::eps::closed_hull_constraints(gs)?;
    let minimal = crate::eps::closed_generators(len - 1, &closure, &mut Default::default());
    let zero_set = |row: &HomVec| -> Vec<bool> {
        closure.iter().map(|c| c.row.dot(row).is_zero()).collect()
    };

    let mut sk = SkelGenSys { lines: minimal.lines.clone(), ..Default::default() };
    let mut taken = vec![false; gs.len()];
    for v in &minimal.rays {
        let target = zero_set(v);
        let is_point = v.slot0().is_positive();
        // candidates in preference order: rays or closure points, then points
        let pick = |pref: GenKind| {
            gs.iter().position(|g| g.kind == pref && zero_set(&g.row) == target)
        };
        let chosen = if is_point {
            pick(GenKind::ClosurePoint).or_else(|| pick(GenKind::Point))
        } else {
            pick(GenKind::Ray)
        };
        let Some(i) = chosen else {
            // an extreme ray produced only by a pair of opposite rays cannot
            // occur once the lineality space is factored out
            return Err(Error::Kind("input is not reducible to a skeleton".into()));
        };
        taken[i] = true;
        let g = &gs[i];
        match g.kind {
            GenKind::Ray => sk.rays.push(g.row.clone()),
            GenKind::ClosurePoint => sk.closure_points.push(g.row.clone()),
            GenKind::Point => sk.skel_points.push(g.row.clone()),
            GenKind::Line => unreachable!(),
        }
    }
    let residual = gs
        .iter()
        .zip(&taken)
        .filter(|(g, t)| g.kind == GenKind::Point && !**t)
        .map(|(g, _)| g.clone())
        .collect();
    Ok((sk, residual))
}
