//! NNC polyhedra as lazily converted DD pairs.

use num_traits::{Signed, Zero};

use crate::arith::HomVec;
use crate::conversion::{conversion_c2g, conversion_g2c, ConRepr, GenRepr};
use crate::error::{Error, Result};
use crate::geom::{ConKind, Constraint, GenKind, Generator};
use crate::stats::StatsRecord;

#[derive(Debug, Clone)]
enum GenSide {
    Raw(Vec<Generator>),
    Dd(GenRepr),
}

#[derive(Debug, Clone)]
enum ConSide {
    Raw(Vec<Constraint>),
    Dd(ConRepr),
}

/// A convex polyhedron in `dim` dimensions, possibly not closed.
///
/// At least one side is always present; the other is computed on demand.
/// Known emptiness short-circuits everything.
#[derive(Debug, Clone)]
pub struct NncPolyhedron {
    dim: usize,
    empty: bool,
    gens: Option<GenSide>,
    cons: Option<ConSide>,
    stats: StatsRecord,
}

/// Whether generator `g` lies in the half-space (or hyperplane) of `c`,
/// with strictness checked only on points.
pub fn satisfies(c: &Constraint, g: &Generator) -> bool {
    let sp = c.row.dot(&g.row);
    match (c.kind, g.kind) {
        (_, GenKind::Line) | (ConKind::Equality, _) => sp.is_zero(),
        (ConKind::Strict, GenKind::Point) => sp.is_positive(),
        _ => !sp.is_negative(),
    }
}

fn check_rows<'a>(dim: usize, rows: impl IntoIterator<Item = &'a HomVec>) -> Result<()> {
    for r in rows {
        if r.len() != dim + 1 {
            return Err(Error::Dimension { expected: dim + 1, found: r.len() });
        }
    }
    Ok(())
}

impl NncPolyhedron {
    pub fn from_constraints(dim: usize, cs: Vec<Constraint>) -> Result<Self> {
        check_rows(dim, cs.iter().map(|c| &c.row))?;
        Ok(NncPolyhedron { dim, empty: false, gens: None, cons: Some(ConSide::Raw(cs)), stats: StatsRecord::default() })
    }

    /// `gen(gs)`; without a point the set is empty.
    pub fn from_generators(dim: usize, gs: Vec<Generator>) -> Result<Self> {
        check_rows(dim, gs.iter().map(|g| &g.row))?;
        let empty = !gs.iter().any(|g| g.kind == GenKind::Point);
        let gens = (!empty).then_some(GenSide::Raw(gs));
        Ok(NncPolyhedron { dim, empty, gens, cons: None, stats: StatsRecord::default() })
    }

    pub fn from_gen_repr(repr: GenRepr) -> Self {
        NncPolyhedron { dim: repr.dim(), empty: false, gens: Some(GenSide::Dd(repr)), cons: None, stats: StatsRecord::default() }
    }

    pub fn from_con_repr(repr: ConRepr) -> Self {
        NncPolyhedron { dim: repr.dim(), empty: false, gens: None, cons: Some(ConSide::Dd(repr)), stats: StatsRecord::default() }
    }

    pub fn universe(dim: usize) -> Self {
        Self::from_gen_repr(GenRepr::universe(dim))
    }

    pub fn empty(dim: usize) -> Self {
        NncPolyhedron { dim, empty: true, gens: None, cons: None, stats: StatsRecord::default() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Counters of every conversion this value has run.
    pub fn stats(&self) -> &StatsRecord {
        &self.stats
    }

    fn set_empty(&mut self) {
        self.empty = true;
        self.gens = None;
        self.cons = None;
    }

    fn ensure_gen_dd(&mut self) -> Result<()> {
        if self.empty || matches!(self.gens, Some(GenSide::Dd(_))) {
            return Ok(());
        }
        if matches!(self.cons, None | Some(ConSide::Raw(_))) && matches!(self.gens, Some(GenSide::Raw(_))) {
            self.ensure_con_dd()?;
            if self.empty {
                return Ok(());
            }
        }
        let cs = match &self.cons {
            Some(ConSide::Raw(cs)) => cs.clone(),
            Some(ConSide::Dd(c)) => c.flat(),
            None => unreachable!("a polyhedron keeps at least one side"),
        };
        match conversion_c2g(self.dim, &cs, None, &mut self.stats)? {
            Some(g) => self.gens = Some(GenSide::Dd(g)),
            None => self.set_empty(),
        }
        Ok(())
    }

    fn ensure_con_dd(&mut self) -> Result<()> {
        if self.empty || matches!(self.cons, Some(ConSide::Dd(_))) {
            return Ok(());
        }
        if self.gens.is_none() {
            self.ensure_gen_dd()?;
            if self.empty {
                return Ok(());
            }
        }
        let gs = match &self.gens {
            Some(GenSide::Raw(gs)) => gs.clone(),
            Some(GenSide::Dd(g)) => g.flat(),
            None => unreachable!("generators were just computed"),
        };
        match conversion_g2c(self.dim, &gs, None, &mut self.stats)? {
            Some(c) => self.cons = Some(ConSide::Dd(c)),
            None => self.set_empty(),
        }
        Ok(())
    }

    pub fn is_empty(&mut self) -> Result<bool> {
        self.ensure_gen_dd()?;
        Ok(self.empty)
    }

    /// Minimized generator side, `None` when empty.
    pub fn gen_repr(&mut self) -> Result<Option<&GenRepr>> {
        self.ensure_gen_dd()?;
        Ok(match &self.gens {
            Some(GenSide::Dd(g)) => Some(g),
            _ => None,
        })
    }

    /// Minimized constraint side, `None` when empty.
    pub fn con_repr(&mut self) -> Result<Option<&ConRepr>> {
        self.ensure_gen_dd()?;
        self.ensure_con_dd()?;
        Ok(match &self.cons {
            Some(ConSide::Dd(c)) => Some(c),
            _ => None,
        })
    }

    /// Plain generator system; empty for the empty polyhedron.
    pub fn generators(&mut self) -> Result<Vec<Generator>> {
        Ok(self.gen_repr()?.map(GenRepr::flat).unwrap_or_default())
    }

    /// Plain constraint system; the empty polyhedron yields `0 >= 1`.
    pub fn constraints(&mut self) -> Result<Vec<Constraint>> {
        let dim = self.dim;
        Ok(match self.con_repr()? {
            Some(c) => c.flat(),
            None => vec![Constraint { kind: ConKind::NonStrict, row: HomVec::unit(dim + 1, 0).neg() }],
        })
    }

    fn same_dim(&self, other: &NncPolyhedron) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Dimension { expected: self.dim + 1, found: other.dim + 1 });
        }
        Ok(())
    }

    /// Whether `other` is a subset of `self`.
    pub fn includes(&mut self, other: &mut NncPolyhedron) -> Result<bool> {
        self.same_dim(other)?;
        if other.is_empty()? {
            return Ok(true);
        }
        if self.is_empty()? {
            return Ok(false);
        }
        let cs = self.constraints()?;
        let gs = other.generators()?;
        Ok(cs.iter().all(|c| gs.iter().all(|g| satisfies(c, g))))
    }

    pub fn equals(&mut self, other: &mut NncPolyhedron) -> Result<bool> {
        Ok(self.includes(other)? && other.includes(self)?)
    }

    /// Adds the constraints of `other` to this polyhedron's generators.
    pub fn intersect(&mut self, other: &mut NncPolyhedron) -> Result<NncPolyhedron> {
        self.same_dim(other)?;
        if self.is_empty()? || other.is_empty()? {
            return Ok(Self::empty(self.dim));
        }
        let cs = other.constraints()?;
        let start = self.gen_repr()?.cloned();
        let mut stats = StatsRecord::default();
        let out = conversion_c2g(self.dim, &cs, start, &mut stats)?;
        let mut p = out.map_or_else(|| Self::empty(self.dim), Self::from_gen_repr);
        p.stats = stats;
        Ok(p)
    }

    /// Convex polyhedral hull: adds the generators of `other` to this
    /// polyhedron's constraints.
    pub fn poly_hull(&mut self, other: &mut NncPolyhedron) -> Result<NncPolyhedron> {
        self.same_dim(other)?;
        if self.is_empty()? {
            return Ok(other.clone());
        }
        if other.is_empty()? {
            return Ok(self.clone());
        }
        let gs = other.generators()?;
        let start = self.con_repr()?.cloned();
        let mut stats = StatsRecord::default();
        let out = conversion_g2c(self.dim, &gs, start, &mut stats)?;
        let mut p = out.map_or_else(|| Self::empty(self.dim), Self::from_con_repr);
        p.stats = stats;
        Ok(p)
    }

    /// Topological closure: the skeleton with closure points read as
    /// points.
    pub fn closure(&mut self) -> Result<NncPolyhedron> {
        let dim = self.dim;
        let Some(g) = self.gen_repr()? else {
            return Ok(Self::empty(dim));
        };
        let gs = g
            .elements()
            .into_iter()
            .map(|g| match g.kind {
                GenKind::ClosurePoint => Generator { kind: GenKind::Point, row: g.row },
                _ => g,
            })
            .collect();
        Self::from_generators(dim, gs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval(lo: Constraint, hi: Constraint) -> NncPolyhedron {
        NncPolyhedron::from_constraints(1, vec![lo, hi]).unwrap()
    }

    #[test]
    fn intervals() {
        let mut half_open = interval(Constraint::ge(&[1], 1), Constraint::lt(&[1], 3));
        let mut closed = interval(Constraint::ge(&[1], 1), Constraint::le(&[1], 3));
        assert!(closed.includes(&mut half_open).unwrap());
        assert!(!half_open.includes(&mut closed).unwrap());
        assert!(half_open.clone().equals(&mut half_open).unwrap());

        let mut other = interval(Constraint::gt(&[1], 2), Constraint::le(&[1], 5));
        let mut meet = half_open.intersect(&mut other).unwrap();
        let mut want = interval(Constraint::gt(&[1], 2), Constraint::lt(&[1], 3));
        assert!(meet.equals(&mut want).unwrap());

        let mut u = NncPolyhedron::universe(1);
        assert!(half_open.intersect(&mut u).unwrap().equals(&mut half_open).unwrap());
        assert!(half_open.closure().unwrap().equals(&mut closed).unwrap());
    }

    #[test]
    fn emptiness() {
        let mut e = interval(Constraint::gt(&[1], 0), Constraint::lt(&[1], 0));
        assert!(e.is_empty().unwrap());
        let mut p = interval(Constraint::ge(&[1], 1), Constraint::lt(&[1], 3));
        assert!(p.includes(&mut e).unwrap());
        assert!(!e.includes(&mut p).unwrap());
        assert!(NncPolyhedron::from_generators(1, vec![Generator::ray(&[1])]).unwrap().is_empty().unwrap());
    }

    #[test]
    fn hull_of_two_points() {
        let mut a = NncPolyhedron::from_generators(1, vec![Generator::point(&[0], 1)]).unwrap();
        let mut b = NncPolyhedron::from_generators(1, vec![Generator::point(&[1], 1)]).unwrap();
        let mut h = a.poly_hull(&mut b).unwrap();
        let mut want = interval(Constraint::ge(&[1], 0), Constraint::le(&[1], 1));
        assert!(h.equals(&mut want).unwrap());
        assert_eq!(a.generators().unwrap(), vec![Generator::point(&[0], 1)]);
    }

    #[test]
    fn generators_round_trip() {
        let gs = vec![Generator::point(&[1], 1), Generator::closure_point(&[3], 1)];
        let mut p = NncPolyhedron::from_generators(1, gs).unwrap();
        let mut q = NncPolyhedron::from_constraints(1, p.constraints().unwrap()).unwrap();
        assert!(p.equals(&mut q).unwrap());
        assert!(p.stats().iterations > 0);
    }

    #[test]
    fn dimension_checks() {
        let mut a = NncPolyhedron::universe(1);
        let mut b = NncPolyhedron::universe(2);
        assert!(a.includes(&mut b).is_err());
        assert!(NncPolyhedron::from_constraints(2, vec![Constraint::ge(&[1], 0)]).is_err());
    }
}
