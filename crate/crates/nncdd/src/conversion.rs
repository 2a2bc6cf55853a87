//! Incremental conversion between constraint and generator descriptions of
//! NNC polyhedra.
//!
//! One engine serves both directions. Its state is a skeleton (a list of
//! elements, each singular, non-singular or a skeleton point) plus a
//! non-skeleton: a family of supports, each naming a face whose relative
//! interior is included. Processed inputs are the columns of the
//! saturation matrix.
//!
//! | engine term  | generators (c2g)     | constraints (g2c)       |
//! |--------------|----------------------|-------------------------|
//! | singular     | line                 | equality                |
//! | non-singular | ray or closure point | non-strict inequality   |
//! | skel point   | point                | strict inequality       |
//! | support      | filler point         | cutter (strict)         |
//!
//! Inputs are classified by [`ConKind`]; generators map to it through
//! [`gen_input_kind`].

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{combine_with, HomVec};
use crate::error::{Error, Result};
use crate::geom::{ConKind, Constraint, GenKind, Generator, SkelConSys, SkelGenSys};
use crate::satlat::{classify_ns, nonredundant_union, proj, NsClass, SatMatrix, Sign, SkelView, Support};
use crate::stats::StatsRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElemKind {
    Singular,
    NonSingular,
    SkelPoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    ConToGen,
    GenToCon,
}

/// How a generator acts when it is the input of the dual conversion.
pub fn gen_input_kind(kind: GenKind) -> ConKind {
    match kind {
        GenKind::Line => ConKind::Equality,
        GenKind::Ray | GenKind::ClosurePoint => ConKind::NonStrict,
        GenKind::Point => ConKind::Strict,
    }
}

/// Kind of the combination of two elements on opposite sides of an input
/// of kind `beta`.
pub fn combined_kind(beta: ConKind, a: ElemKind, b: ElemKind) -> ElemKind {
    match beta {
        ConKind::Strict => ElemKind::NonSingular,
        _ if a == ElemKind::SkelPoint || b == ElemKind::SkelPoint => ElemKind::SkelPoint,
        _ => ElemKind::NonSingular,
    }
}

/// One input being processed: its scalar products with every element and
/// their signs. Elements appended during the step get sign zero.
#[derive(Debug, Clone)]
pub struct Step {
    pub kind: ConKind,
    pub beta: HomVec,
    pub sps: Vec<BigInt>,
    pub signs: Vec<Sign>,
}

impl Step {
    pub fn has(&self, sign: Sign) -> bool {
        self.signs.contains(&sign)
    }
}

#[derive(Debug, Clone)]
pub struct DdState {
    dir: Direction,
    len: usize,
    rows: Vec<HomVec>,
    kinds: Vec<ElemKind>,
    sat: SatMatrix,
    cols: Vec<HomVec>,
    ns: Vec<Support>,
}

impl DdState {
    /// Generators of the whole space with the positivity constraint
    /// processed: one line per axis and the origin.
    pub fn universe(dim: usize) -> Self {
        let len = dim + 1;
        let mut rows: Vec<HomVec> = (1..len).map(|i| HomVec::unit(len, i)).collect();
        let mut kinds = vec![ElemKind::Singular; dim];
        rows.push(HomVec::unit(len, 0));
        kinds.push(ElemKind::SkelPoint);
        let cols = vec![HomVec::unit(len, 0)];
        let sat = SatMatrix::from_rows(&rows, &cols);
        DdState { dir: Direction::ConToGen, len, rows, kinds, sat, cols, ns: Vec::new() }
    }

    /// Constraints of the single point `p`: one equality per axis plus the
    /// strict positivity constraint.
    pub fn point(p: &HomVec) -> Result<Self> {
        let len = p.len();
        if !p.slot0().is_positive() {
            return Err(Error::Kind("initial generator must be a point".into()));
        }
        let mut rows = Vec::with_capacity(len);
        for i in 1..len {
            let mut c = HomVec::zero(len).into_coeffs();
            c[0] = -&p.coeffs()[i];
            c[i] = p.slot0().clone();
            rows.push(HomVec::new(c).normalized(true));
        }
        let mut kinds = vec![ElemKind::Singular; len - 1];
        rows.push(HomVec::unit(len, 0));
        kinds.push(ElemKind::SkelPoint);
        let cols = vec![p.clone()];
        let sat = SatMatrix::from_rows(&rows, &cols);
        Ok(DdState { dir: Direction::GenToCon, len, rows, kinds, sat, cols, ns: Vec::new() })
    }

    /// Assembles a state from explicit parts; the saturation matrix is
    /// computed from `cols`.
    pub fn from_parts(
        dir: Direction,
        rows: Vec<HomVec>,
        kinds: Vec<ElemKind>,
        cols: Vec<HomVec>,
        ns: Vec<Support>,
    ) -> Result<Self> {
        let len = rows.first().or(cols.first()).map_or(0, HomVec::len);
        if len == 0 {
            return Err(Error::EmptySystem);
        }
        for r in rows.iter().chain(&cols) {
            if r.len() != len {
                return Err(Error::Dimension { expected: len, found: r.len() });
            }
        }
        if kinds.len() != rows.len() {
            return Err(Error::Kind("one kind per element expected".into()));
        }
        for s in &ns {
            if let Some(&bad) = s.ids().iter().find(|&&i| i >= rows.len() || kinds[i] == ElemKind::Singular) {
                return Err(Error::StaleId(bad));
            }
        }
        let sat = SatMatrix::from_rows(&rows, &cols);
        Ok(DdState { dir, len, rows, kinds, sat, cols, ns })
    }

    pub fn direction(&self) -> Direction {
        self.dir
    }

    /// Homogeneous row length.
    pub fn row_len(&self) -> usize {
        self.len
    }

    pub fn rows(&self) -> &[HomVec] {
        &self.rows
    }

    pub fn kinds(&self) -> &[ElemKind] {
        &self.kinds
    }

    pub fn cols(&self) -> &[HomVec] {
        &self.cols
    }

    pub fn supports(&self) -> &[Support] {
        &self.ns
    }

    pub fn sat(&self) -> &SatMatrix {
        &self.sat
    }

    /// Skeleton elements plus supports.
    pub fn size(&self) -> usize {
        self.rows.len() + self.ns.len()
    }

    fn singular_mask(&self) -> Vec<bool> {
        self.kinds.iter().map(|k| *k == ElemKind::Singular).collect()
    }

    fn ids(&self, step: &Step, sign: Sign, pred: impl Fn(ElemKind) -> bool) -> Vec<usize> {
        (0..self.rows.len()).filter(|&i| step.signs[i] == sign && pred(self.kinds[i])).collect()
    }

    fn ns_in(&self, step: &Step, class: NsClass) -> Vec<Support> {
        self.ns.iter().filter(|s| classify_ns(s, &step.signs) == class).cloned().collect()
    }

    pub fn supp_cl(&self, ns: &Support, stats: &mut StatsRecord) -> Result<Support> {
        let singular = self.singular_mask();
        SkelView { sat: &self.sat, singular: &singular }.supp_cl(ns, stats)
    }

    /// Scalar products of `beta` with every element.
    pub fn partition(&self, kind: ConKind, beta: &HomVec, stats: &mut StatsRecord) -> Result<Step> {
        if beta.len() != self.len {
            return Err(Error::Dimension { expected: self.len, found: beta.len() });
        }
        let sps: Vec<BigInt> = self.rows.iter().map(|r| beta.dot(r)).collect();
        stats.vec_ops += sps.len() as u64;
        let signs = sps.iter().map(Sign::of).collect();
        Ok(Step { kind, beta: beta.clone(), sps, signs })
    }

    /// Appends the combination of every adjacent pair of non-singular
    /// elements lying on opposite sides of the input; returns the new ids.
    pub fn combine_adjacent(&mut self, step: &mut Step, stats: &mut StatsRecord) -> Result<Vec<usize>> {
        let nonsingular = |k| k != ElemKind::Singular;
        let pos = self.ids(step, Sign::Pos, nonsingular);
        let neg = self.ids(step, Sign::Neg, nonsingular);
        let singular = self.singular_mask();
        let view = SkelView { sat: &self.sat, singular: &singular };
        let mut fresh = Vec::new();
        for &i in &pos {
            for &j in &neg {
                if !view.adjacent(i, j, stats)? {
                    continue;
                }
                stats.vec_ops += 1;
                let row = combine_with(&step.sps[i], &self.rows[i], &step.sps[j], &self.rows[j])?;
                let kind = combined_kind(step.kind, self.kinds[i], self.kinds[j]);
                let mut bits = self.sat.row(i)?.clone();
                bits.intersect_with(self.sat.row(j)?);
                fresh.push((row, kind, bits));
            }
        }
        let first = self.rows.len();
        for (row, kind, bits) in fresh {
            self.rows.push(row);
            self.kinds.push(kind);
            self.sat.push_row(bits);
            step.sps.push(BigInt::zero());
            step.signs.push(Sign::Zero);
        }
        Ok((first..self.rows.len()).collect())
    }

    /// Supports of faces obtained by adding one non-singular element from
    /// side `side` to `ns`, projected onto what the input keeps.
    pub fn enumerate_faces(
        &self,
        step: &Step,
        ns: &Support,
        side: Sign,
        stats: &mut StatsRecord,
    ) -> Result<Vec<Support>> {
        let singular = self.singular_mask();
        let view = SkelView { sat: &self.sat, singular: &singular };
        let mut out = BTreeSet::new();
        for g in self.ids(step, side, |k| k == ElemKind::NonSingular) {
            let cl = view.supp_cl(&ns.with(g), stats)?;
            out.insert(proj(step.kind, &cl, &step.signs)?);
        }
        Ok(out.into_iter().collect())
    }

    /// Supports crossing the input, moved onto the part it keeps.
    pub fn move_ns(&self, step: &Step, stats: &mut StatsRecord) -> Result<Vec<Support>> {
        let mut out = Vec::new();
        for ns in self.ns_in(step, NsClass::Mixed) {
            let cl = self.supp_cl(&ns, stats)?;
            out.push(proj(step.kind, &cl, &step.signs)?);
        }
        Ok(out)
    }

    /// New supports for faces whose relative interior was filled through a
    /// skeleton point or support lying on one side of the input.
    pub fn create_ns(&self, step: &Step, stats: &mut StatsRecord) -> Result<Vec<Support>> {
        let mut out = Vec::new();
        let mut run = |sign: Sign, class: NsClass, side: Sign, out: &mut Vec<Support>| -> Result<()> {
            let seeds = self
                .ids(step, sign, |k| k == ElemKind::SkelPoint)
                .into_iter()
                .map(|p| Support::new([p]))
                .chain(self.ns_in(step, class));
            for seed in seeds {
                out.extend(self.enumerate_faces(step, &seed, side, stats)?);
            }
            Ok(())
        };
        run(Sign::Neg, NsClass::Neg, Sign::Pos, &mut out)?;
        match step.kind {
            ConKind::Strict => run(Sign::Zero, NsClass::Zero, Sign::Pos, &mut out)?,
            // an equality keeps only the hyperplane, so faces filled from
            // either side matter
            ConKind::NonStrict | ConKind::Equality => run(Sign::Pos, NsClass::Pos, Sign::Neg, &mut out)?,
        }
        Ok(out)
    }

    /// Turns a line violating the input into a ray on its positive side and
    /// shears every other element onto the hyperplane; returns the ray id.
    pub fn violating_line(&mut self, step: &mut Step, l: usize, stats: &mut StatsRecord) -> usize {
        if step.sps[l].is_negative() {
            self.rows[l] = self.rows[l].neg();
            step.sps[l] = -&step.sps[l];
        }
        let sp_l = step.sps[l].clone();
        let line = self.rows[l].clone();
        for i in 0..self.rows.len() {
            if i == l || step.sps[i].is_zero() {
                continue;
            }
            stats.vec_ops += 1;
            let v = HomVec::lin_comb(&sp_l, &self.rows[i], &-&step.sps[i], &line);
            self.rows[i] = v.normalized(self.kinds[i] == ElemKind::Singular);
            step.sps[i] = BigInt::zero();
            step.signs[i] = Sign::Zero;
        }
        self.kinds[l] = ElemKind::NonSingular;
        step.signs[l] = Sign::Pos;
        l
    }

    /// Strict input with no violating element: skeleton points on the
    /// hyperplane become non-singular, and the faces they filled are
    /// re-filled from the positive side.
    pub fn strict_on_eq_points(&mut self, step: &Step, stats: &mut StatsRecord) -> Result<()> {
        let mut star = Vec::new();
        let zero_points = self.ids(step, Sign::Zero, |k| k == ElemKind::SkelPoint);
        let seeds = zero_points.iter().map(|&p| Support::new([p])).chain(self.ns_in(step, NsClass::Zero));
        for seed in seeds.collect::<Vec<_>>() {
            star.extend(self.enumerate_faces(step, &seed, Sign::Pos, stats)?);
        }
        for p in zero_points {
            self.kinds[p] = ElemKind::NonSingular;
        }
        let keep: Vec<bool> = step.signs.iter().map(|s| *s != Sign::Neg).collect();
        let mut ns = self.ns_in(step, NsClass::Pos);
        ns.extend(star);
        self.commit(step, &keep, ns, stats)
    }

    /// Drops unkept elements, installs the new non-skeleton and records the
    /// input as a column.
    fn commit(&mut self, step: &Step, keep: &[bool], ns: Vec<Support>, stats: &mut StatsRecord) -> Result<()> {
        let kinds = &self.kinds;
        let ns = nonredundant_union(ns, |i| kinds[i] == ElemKind::SkelPoint, stats);
        let mut map = vec![None; self.rows.len()];
        let mut next = 0;
        for (i, slot) in map.iter_mut().enumerate() {
            if keep[i] {
                *slot = Some(next);
                next += 1;
            }
        }
        let ns = ns.iter().map(|s| s.remap(&map)).collect::<Result<Vec<_>>>()?;
        let zero: Vec<bool> = (0..self.rows.len())
            .filter(|&i| keep[i])
            .map(|i| step.signs[i] == Sign::Zero)
            .collect();
        let mut k = keep.iter();
        self.rows.retain(|_| *k.next().unwrap());
        let mut k = keep.iter();
        self.kinds.retain(|_| *k.next().unwrap());
        self.sat.retain_rows(keep);
        self.sat.push_col(|g| zero[g]);
        self.cols.push(step.beta.clone());
        self.ns = ns;
        Ok(())
    }

    fn keep_where(step: &Step, pred: impl Fn(Sign) -> bool) -> Vec<bool> {
        step.signs.iter().map(|s| pred(*s)).collect()
    }

    /// Makes the sole element of every singleton support a skeleton point.
    pub fn promote_singletons(&mut self) {
        let singles: Vec<usize> = self.ns.iter().filter(|s| s.len() == 1).map(|s| s.ids()[0]).collect();
        if singles.is_empty() {
            return;
        }
        for g in singles {
            self.kinds[g] = ElemKind::SkelPoint;
        }
        let kinds = &self.kinds;
        self.ns.retain(|s| !s.ids().iter().any(|&i| kinds[i] == ElemKind::SkelPoint));
    }

    /// Processes one input. Returns `false` when the conversion from
    /// constraints detects an empty polyhedron; the state is then stale.
    pub fn add(&mut self, kind: ConKind, beta: &HomVec, stats: &mut StatsRecord) -> Result<bool> {
        let check = self.dir == Direction::ConToGen;
        let mut step = self.partition(kind, beta, stats)?;
        let violating = (0..self.rows.len()).find(|&i| self.kinds[i] == ElemKind::Singular && step.signs[i] != Sign::Zero);
        if let Some(l) = violating {
            let l = self.violating_line(&mut step, l, stats);
            let ns = self.ns.clone();
            match kind {
                ConKind::Equality => {
                    let keep: Vec<bool> = (0..self.rows.len()).map(|i| i != l).collect();
                    self.commit(&step, &keep, ns, stats)?;
                }
                ConKind::NonStrict => self.commit(&step, &vec![true; self.rows.len()], ns, stats)?,
                ConKind::Strict => self.strict_on_eq_points(&step, stats)?,
            }
        } else if !step.has(Sign::Neg) {
            match kind {
                ConKind::Equality => {
                    if check && !step.has(Sign::Zero) {
                        return Ok(false);
                    }
                    let ns = self.ns_in(&step, NsClass::Zero);
                    self.commit(&step, &Self::keep_where(&step, |s| s == Sign::Zero), ns, stats)?;
                }
                ConKind::Strict => {
                    if check && !step.has(Sign::Pos) {
                        return Ok(false);
                    }
                    if step.has(Sign::Zero) {
                        self.strict_on_eq_points(&step, stats)?;
                    } else {
                        let ns = self.ns.clone();
                        self.commit(&step, &vec![true; self.rows.len()], ns, stats)?;
                    }
                }
                ConKind::NonStrict => {
                    let ns = self.ns.clone();
                    self.commit(&step, &vec![true; self.rows.len()], ns, stats)?;
                }
            }
        } else if !step.has(Sign::Pos) {
            if check && (kind == ConKind::Strict || !step.has(Sign::Zero)) {
                return Ok(false);
            }
            let ns = self.ns_in(&step, NsClass::Zero);
            self.commit(&step, &Self::keep_where(&step, |s| s == Sign::Zero), ns, stats)?;
        } else {
            self.combine_adjacent(&mut step, stats)?;
            let mut star = self.move_ns(&step, stats)?;
            star.extend(self.create_ns(&step, stats)?);
            let (keep, mut ns) = match kind {
                ConKind::Equality => (Self::keep_where(&step, |s| s == Sign::Zero), self.ns_in(&step, NsClass::Zero)),
                ConKind::NonStrict => {
                    let mut ns = self.ns_in(&step, NsClass::Pos);
                    ns.extend(self.ns_in(&step, NsClass::Zero));
                    (Self::keep_where(&step, |s| s != Sign::Neg), ns)
                }
                ConKind::Strict => {
                    for p in self.ids(&step, Sign::Zero, |k| k == ElemKind::SkelPoint) {
                        self.kinds[p] = ElemKind::NonSingular;
                    }
                    (Self::keep_where(&step, |s| s != Sign::Neg), self.ns_in(&step, NsClass::Pos))
                }
            };
            ns.extend(star);
            self.commit(&step, &keep, ns, stats)?;
        }
        self.promote_singletons();
        stats.iterations += 1;
        stats.sizes.push(self.size());
        if check && self.ns.is_empty() && !self.kinds.contains(&ElemKind::SkelPoint) {
            return Ok(false);
        }
        Ok(true)
    }

    /// Brings the singular rows to reduced echelon form.
    pub fn reduce_singular(&mut self) {
        let ids: Vec<usize> = (0..self.rows.len()).filter(|&i| self.kinds[i] == ElemKind::Singular).collect();
        let mut rows: Vec<HomVec> = ids.iter().map(|&i| self.rows[i].clone()).collect();
        let mut r = 0;
        for col in 0..self.len {
            let Some(k) = (r..rows.len()).find(|&k| !rows[k].coeffs()[col].is_zero()) else {
                continue;
            };
            rows.swap(r, k);
            for k in 0..rows.len() {
                let c = rows[k].coeffs()[col].clone();
                if k != r && !c.is_zero() {
                    let v = HomVec::lin_comb(&rows[r].coeffs()[col], &rows[k], &-c, &rows[r]);
                    rows[k] = v.normalize(true).unwrap_or(v);
                }
            }
            r += 1;
        }
        for (j, &i) in ids.iter().enumerate() {
            self.rows[i] = rows[j].normalize(true).unwrap_or_else(|_| rows[j].clone());
        }
    }

    /// Structural invariants of a non-redundant state: supports form an
    /// antichain of support-closed sets of at least two non-singular,
    /// non-point elements.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let st = &mut StatsRecord::default();
        for (k, s) in self.ns.iter().enumerate() {
            if s.len() < 2 {
                return Err(format!("support {k} has {} element(s)", s.len()));
            }
            if let Some(&i) = s.ids().iter().find(|&&i| i >= self.rows.len() || self.kinds[i] != ElemKind::NonSingular) {
                return Err(format!("support {k} names element {i}, which is not a ray or closure point"));
            }
            let cl = self.supp_cl(s, st).map_err(|e| e.to_string())?;
            if &cl != s {
                return Err(format!("support {k} is not support-closed"));
            }
            for (j, t) in self.ns.iter().enumerate() {
                if j != k && s.is_subset(t) {
                    return Err(format!("support {k} is contained in support {j}"));
                }
            }
        }
        if self.sat.nrows() != self.rows.len() || self.sat.ncols() != self.cols.len() {
            return Err("saturation matrix shape is stale".into());
        }
        for (g, row) in self.rows.iter().enumerate() {
            for (c, col) in self.cols.iter().enumerate() {
                if self.sat.get(g, c) != col.dot(row).is_zero() {
                    return Err(format!("saturation bit ({g}, {c}) is stale"));
                }
            }
        }
        Ok(())
    }

    fn materialize(&self, ns: &Support) -> HomVec {
        let mut acc = HomVec::zero(self.len);
        for &i in ns.ids() {
            acc = acc.add(&self.rows[i]);
        }
        acc.normalize(false).unwrap_or(acc)
    }
}

fn check_row(len: usize, row: &HomVec) -> Result<()> {
    if row.len() != len {
        return Err(Error::Dimension { expected: len, found: row.len() });
    }
    Ok(())
}

/// Generator side of a polyhedron: skeleton `⟨L, R, C, SP⟩` plus filler
/// supports.
#[derive(Debug, Clone)]
pub struct GenRepr(DdState);

impl GenRepr {
    pub fn universe(dim: usize) -> Self {
        GenRepr(DdState::universe(dim))
    }

    /// Builds a state from skeleton generators, supports over their
    /// positions, and the constraints whose saturation defines the faces.
    pub fn from_parts(elements: &[Generator], supports: Vec<Support>, constraints: &[Constraint]) -> Result<Self> {
        let len = elements.first().ok_or(Error::EmptySystem)?.row.len();
        let mut cols = vec![HomVec::unit(len, 0)];
        cols.extend(constraints.iter().map(|c| c.row.clone()));
        let kinds = elements
            .iter()
            .map(|g| match g.kind {
                GenKind::Line => ElemKind::Singular,
                GenKind::Point => ElemKind::SkelPoint,
                GenKind::Ray | GenKind::ClosurePoint => ElemKind::NonSingular,
            })
            .collect();
        let rows = elements.iter().map(|g| g.row.clone()).collect();
        Ok(GenRepr(DdState::from_parts(Direction::ConToGen, rows, kinds, cols, supports)?))
    }

    pub fn state(&self) -> &DdState {
        &self.0
    }

    pub fn state_mut(&mut self) -> &mut DdState {
        &mut self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len - 1
    }

    pub fn size(&self) -> usize {
        self.0.size()
    }

    /// Skeleton elements in id order.
    pub fn elements(&self) -> Vec<Generator> {
        self.0
            .rows
            .iter()
            .zip(&self.0.kinds)
            .map(|(row, k)| {
                let kind = match k {
                    ElemKind::Singular => GenKind::Line,
                    ElemKind::SkelPoint => GenKind::Point,
                    ElemKind::NonSingular if row.slot0().is_zero() => GenKind::Ray,
                    ElemKind::NonSingular => GenKind::ClosurePoint,
                };
                Generator { kind, row: row.clone() }
            })
            .collect()
    }

    pub fn skeleton(&self) -> SkelGenSys {
        let mut sk = SkelGenSys::default();
        for g in self.elements() {
            match g.kind {
                GenKind::Line => sk.lines.push(g.row),
                GenKind::Ray => sk.rays.push(g.row),
                GenKind::ClosurePoint => sk.closure_points.push(g.row),
                GenKind::Point => sk.skel_points.push(g.row),
            }
        }
        sk
    }

    pub fn supports(&self) -> &[Support] {
        &self.0.ns
    }

    /// One point in the relative interior of each support's face.
    pub fn fillers(&self) -> Vec<Generator> {
        self.0
            .ns
            .iter()
            .map(|ns| Generator { kind: GenKind::Point, row: self.0.materialize(ns) })
            .collect()
    }

    /// Plain generator system: skeleton plus fillers.
    pub fn flat(&self) -> Vec<Generator> {
        let mut out = self.elements();
        out.extend(self.fillers());
        out
    }
}

/// Constraint side of a polyhedron: skeleton `⟨C=, C≥, SC>⟩` plus cutter
/// supports.
#[derive(Debug, Clone)]
pub struct ConRepr(DdState);

impl ConRepr {
    /// Constraints of the single point `p`.
    pub fn point(p: &HomVec) -> Result<Self> {
        Ok(ConRepr(DdState::point(p)?))
    }

    /// Builds a state from skeleton constraints, supports over their
    /// positions, and the generators whose saturation defines the faces.
    pub fn from_parts(elements: &[Constraint], supports: Vec<Support>, generators: &[Generator]) -> Result<Self> {
        let kinds = elements
            .iter()
            .map(|c| match c.kind {
                ConKind::Equality => ElemKind::Singular,
                ConKind::NonStrict => ElemKind::NonSingular,
                ConKind::Strict => ElemKind::SkelPoint,
            })
            .collect();
        let rows = elements.iter().map(|c| c.row.clone()).collect();
        let cols = generators.iter().map(|g| g.row.clone()).collect();
        Ok(ConRepr(DdState::from_parts(Direction::GenToCon, rows, kinds, cols, supports)?))
    }

    pub fn state(&self) -> &DdState {
        &self.0
    }

    pub fn state_mut(&mut self) -> &mut DdState {
        &mut self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len - 1
    }

    pub fn size(&self) -> usize {
        self.0.size()
    }

    pub fn elements(&self) -> Vec<Constraint> {
        self.0
            .rows
            .iter()
            .zip(&self.0.kinds)
            .map(|(row, k)| {
                let kind = match k {
                    ElemKind::Singular => ConKind::Equality,
                    ElemKind::NonSingular => ConKind::NonStrict,
                    ElemKind::SkelPoint => ConKind::Strict,
                };
                Constraint { kind, row: row.clone() }
            })
            .collect()
    }

    pub fn skeleton(&self) -> SkelConSys {
        let mut sk = SkelConSys::default();
        for c in self.elements() {
            match c.kind {
                ConKind::Equality => sk.equalities.push(c.row),
                ConKind::NonStrict => sk.nonstrict.push(c.row),
                ConKind::Strict => sk.skel_strict.push(c.row),
            }
        }
        sk
    }

    pub fn supports(&self) -> &[Support] {
        &self.0.ns
    }

    /// One strict inequality per support, cutting away the ghost face it
    /// names.
    pub fn cutters(&self) -> Vec<Constraint> {
        self.0
            .ns
            .iter()
            .map(|ns| Constraint { kind: ConKind::Strict, row: self.0.materialize(ns) })
            .collect()
    }

    /// Plain constraint system: skeleton plus cutters.
    pub fn flat(&self) -> Vec<Constraint> {
        let mut out = self.elements();
        out.extend(self.cutters());
        out
    }
}

/// Adds the constraints `cs` to `start` (the universe when `None`).
/// Returns `None` for the empty polyhedron.
pub fn conversion_c2g(
    dim: usize,
    cs: &[Constraint],
    start: Option<GenRepr>,
    stats: &mut StatsRecord,
) -> Result<Option<GenRepr>> {
    let t0 = Instant::now();
    let mut repr = start.unwrap_or_else(|| GenRepr::universe(dim));
    if repr.dim() != dim {
        return Err(Error::Dimension { expected: dim + 1, found: repr.dim() + 1 });
    }
    for c in cs {
        check_row(dim + 1, &c.row)?;
    }
    let mut seen = BTreeSet::new();
    let mut alive = true;
    for c in cs {
        if seen.insert((c.kind, c.row.clone())) && !repr.0.add(c.kind, &c.row, stats)? {
            alive = false;
            break;
        }
    }
    repr.0.reduce_singular();
    stats.time_ms += t0.elapsed().as_secs_f64() * 1e3;
    Ok(alive.then_some(repr))
}

/// Adds the generators `gs` to `start`; from scratch the first point seeds
/// the state. Returns `None` when there is nothing to start from (no
/// `start` and no point in `gs`), i.e. for the empty polyhedron.
pub fn conversion_g2c(
    dim: usize,
    gs: &[Generator],
    start: Option<ConRepr>,
    stats: &mut StatsRecord,
) -> Result<Option<ConRepr>> {
    let t0 = Instant::now();
    for g in gs {
        check_row(dim + 1, &g.row)?;
    }
    let mut seen = BTreeSet::new();
    let mut repr = match start {
        Some(r) => {
            if r.dim() != dim {
                return Err(Error::Dimension { expected: dim + 1, found: r.dim() + 1 });
            }
            r
        }
        None => {
            let Some(first) = gs.iter().find(|g| g.kind == GenKind::Point) else {
                return Ok(None);
            };
            seen.insert((first.kind, first.row.clone()));
            ConRepr::point(&first.row)?
        }
    };
    for g in gs {
        if seen.insert((g.kind, g.row.clone())) {
            repr.0.add(gen_input_kind(g.kind), &g.row, stats)?;
        }
    }
    repr.0.reduce_singular();
    stats.time_ms += t0.elapsed().as_secs_f64() * 1e3;
    Ok(Some(repr))
}
