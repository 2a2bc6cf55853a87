//! Reference machinery: the classical conversion for closed polyhedra, the
//! ε-representation of NNC systems on top of it, and a brute-force face
//! enumerator. None of this is used by the main engine; tests and the
//! `--oracle eps` check compare against it.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use num_traits::{Signed, Zero};

use crate::arith::HomVec;
use crate::error::{Error, Result};
use crate::geom::{ConKind, Constraint, GenKind, Generator};
use crate::stats::StatsRecord;

/// Incremental conversion state for a closed cone. Elements are the
/// current lines and extreme rays; columns are the rows processed so far.
#[derive(Debug, Clone)]
pub struct ClosedCone {
    len: usize,
    pub lines: Vec<HomVec>,
    pub rays: Vec<HomVec>,
    sat: Vec<FixedBitSet>,
    pub cols: Vec<HomVec>,
}

impl ClosedCone {
    /// The whole space: one line per coordinate, nothing processed.
    pub fn universe(len: usize) -> Self {
        ClosedCone {
            len,
            lines: (0..len).map(|i| HomVec::unit(len, i)).collect(),
            rays: Vec::new(),
            sat: Vec::new(),
            cols: Vec::new(),
        }
    }

    /// Generators of the universe polyhedron with the positivity constraint
    /// already processed: lines along the axes plus the origin.
    pub fn universe_polyhedron(dim: usize) -> Self {
        let len = dim + 1;
        ClosedCone {
            len,
            lines: (1..len).map(|i| HomVec::unit(len, i)).collect(),
            rays: vec![HomVec::unit(len, 0)],
            sat: vec![FixedBitSet::with_capacity(1)],
            cols: vec![HomVec::unit(len, 0)],
        }
    }

    pub fn size(&self) -> usize {
        self.lines.len() + self.rays.len()
    }

    fn push_col(&mut self, row: &HomVec, zero: impl Fn(usize) -> bool) {
        let n = self.cols.len() + 1;
        for (i, bits) in self.sat.iter_mut().enumerate() {
            bits.grow(n);
            bits.set(n - 1, zero(i));
        }
        self.cols.push(row.clone());
    }

    fn adjacent(&self, i: usize, j: usize, stats: &mut StatsRecord) -> bool {
        let mut common = self.sat[i].clone();
        common.intersect_with(&self.sat[j]);
        stats.sat_ops += 1;
        for k in 0..self.rays.len() {
            if k == i || k == j {
                continue;
            }
            stats.sat_ops += 1;
            if common.is_subset(&self.sat[k]) {
                return false;
            }
        }
        true
    }

    /// Intersects the cone with `row · x >= 0`, or `= 0` when `equality`.
    pub fn add(&mut self, row: &HomVec, equality: bool, stats: &mut StatsRecord) {
        assert_eq!(row.len(), self.len, "row length");
        stats.iterations += 1;
        let line_sps: Vec<_> = self.lines.iter().map(|l| row.dot(l)).collect();
        let ray_sps: Vec<_> = self.rays.iter().map(|r| row.dot(r)).collect();
        stats.vec_ops += (line_sps.len() + ray_sps.len()) as u64;

        if let Some(li) = line_sps.iter().position(|s| !s.is_zero()) {
            let mut l = self.lines.remove(li);
            let mut sp_l = line_sps[li].clone();
            if sp_l.is_negative() {
                l = l.neg();
                sp_l = -sp_l;
            }
            let mut lines = Vec::with_capacity(self.lines.len());
            for (k, other) in self.lines.iter().enumerate() {
                let s = &line_sps[if k < li { k } else { k + 1 }];
                if s.is_zero() {
                    lines.push(other.clone());
                } else {
                    stats.vec_ops += 1;
                    lines.push(HomVec::lin_comb(&sp_l, other, &-s, &l).normalized(true));
                }
            }
            self.lines = lines;
            for (r, s) in self.rays.iter_mut().zip(&ray_sps) {
                if !s.is_zero() {
                    stats.vec_ops += 1;
                    *r = HomVec::lin_comb(&sp_l, r, &-s, &l).normalized(false);
                }
            }
            let ncols = self.cols.len();
            if !equality {
                let mut bits = FixedBitSet::with_capacity(ncols);
                bits.insert_range(..);
                self.rays.push(l);
                self.sat.push(bits);
            }
            let nr = self.rays.len();
            self.push_col(row, |i| equality || i + 1 != nr);
        } else {
            let pos: Vec<usize> = (0..self.rays.len()).filter(|&i| ray_sps[i].is_positive()).collect();
            let neg: Vec<usize> = (0..self.rays.len()).filter(|&i| ray_sps[i].is_negative()).collect();
            let mut new_rays = Vec::new();
            let mut new_sat = Vec::new();
            for &i in &pos {
                for &j in &neg {
                    if self.adjacent(i, j, stats) {
                        stats.vec_ops += 1;
                        let v = HomVec::lin_comb(&-&ray_sps[j], &self.rays[i], &ray_sps[i], &self.rays[j]);
                        let mut bits = self.sat[i].clone();
                        bits.intersect_with(&self.sat[j]);
                        new_rays.push(v.normalized(false));
                        new_sat.push(bits);
                    }
                }
            }
            let mut rays = Vec::new();
            let mut sat = Vec::new();
            let mut zero = Vec::new();
            for ((r, bits), sp) in self.rays.iter().zip(&self.sat).zip(&ray_sps) {
                if sp.is_zero() || (!equality && sp.is_positive()) {
                    rays.push(r.clone());
                    sat.push(bits.clone());
                    zero.push(sp.is_zero());
                }
            }
            zero.extend(std::iter::repeat_n(true, new_rays.len()));
            rays.extend(new_rays);
            sat.extend(new_sat);
            self.rays = rays;
            self.sat = sat;
            self.push_col(row, |i| zero[i]);
        }
        stats.sizes.push(self.size());
    }
}

/// Lines and extreme rays of a closed polyhedron given by constraints.
/// Rays with a positive homogenizing slot are the vertices.
pub fn closed_generators(dim: usize, cs: &[Constraint], stats: &mut StatsRecord) -> ClosedCone {
    let mut cone = ClosedCone::universe_polyhedron(dim);
    let mut seen = BTreeSet::new();
    for c in cs {
        if seen.insert(c.clone()) {
            cone.add(&c.row, c.kind == ConKind::Equality, stats);
        }
    }
    cone
}

/// Constraint cone of the polyhedron generated by `gs` (closed reading).
pub fn closed_constraints(len: usize, gs: &[Generator], stats: &mut StatsRecord) -> ClosedCone {
    let mut cone = ClosedCone::universe(len);
    let mut seen = BTreeSet::new();
    for g in gs {
        let row = g.row.clone();
        if seen.insert((g.kind == GenKind::Line, row.clone())) {
            cone.add(&row, g.kind == GenKind::Line, stats);
        }
    }
    cone
}

/// Closed-kind generators recovered from a cone: vertices read as points.
pub fn cone_to_generators(cone: &ClosedCone) -> Vec<Generator> {
    let mut out: Vec<Generator> = cone
        .lines
        .iter()
        .map(|l| Generator { kind: GenKind::Line, row: l.clone() })
        .collect();
    for r in &cone.rays {
        let kind = if r.slot0().is_zero() { GenKind::Ray } else { GenKind::Point };
        out.push(Generator { kind, row: r.clone() });
    }
    out
}

/// Closed-kind constraints of a constraint cone.
pub fn cone_to_constraints(cone: &ClosedCone) -> Vec<Constraint> {
    let mut out: Vec<Constraint> = cone
        .lines
        .iter()
        .map(|l| Constraint { kind: ConKind::Equality, row: l.clone() })
        .collect();
    out.extend(
        cone.rays
            .iter()
            .map(|r| Constraint { kind: ConKind::NonStrict, row: r.clone() }),
    );
    out
}

/// Constraints of the closed hull of `gs`, reading closure points as points.
pub fn closed_hull_constraints(gs: &[Generator]) -> Result<Vec<Constraint>> {
    let Some(first) = gs.first() else {
        return Err(Error::EmptySystem);
    };
    let cone = closed_constraints(first.row.len(), gs, &mut StatsRecord::default());
    Ok(cone_to_constraints(&cone))
}

/// Classical conversion for closed inputs. Strict constraints are refused;
/// `None` means the polyhedron is empty.
pub fn closed_conversion(dim: usize, cs: &[Constraint], stats: &mut StatsRecord) -> Result<Option<Vec<Generator>>> {
    if let Some(c) = cs.iter().find(|c| c.kind == ConKind::Strict) {
        return Err(Error::Kind(format!("strict constraint {:?} in closed conversion", c.row)));
    }
    let cone = closed_generators(dim, cs, stats);
    let gens = cone_to_generators(&cone);
    Ok(gens.iter().any(|g| g.kind == GenKind::Point).then_some(gens))
}

/// Generator-to-constraint counterpart of [`closed_conversion`].
pub fn closed_conversion_g2c(dim: usize, gs: &[Generator], stats: &mut StatsRecord) -> Result<Option<Vec<Constraint>>> {
    if let Some(g) = gs.iter().find(|g| g.kind == GenKind::ClosurePoint) {
        return Err(Error::Kind(format!("closure point {:?} in closed conversion", g.row)));
    }
    if !gs.iter().any(|g| g.kind == GenKind::Point) {
        return Ok(None);
    }
    let cone = closed_constraints(dim + 1, gs, stats);
    Ok(Some(cone_to_constraints(&cone)))
}

fn with_eps(row: &HomVec, eps: i64) -> HomVec {
    let mut c = row.coeffs().to_vec();
    c.push(eps.into());
    HomVec::new(c)
}

/// `a·x > b` becomes `a·x - ε >= b`; other rows gain a zero ε coefficient.
/// The bounds `ε >= 0` and `ε <= 1` come first.
pub fn eps_encode(dim: usize, cs: &[Constraint]) -> Vec<Constraint> {
    let len = dim + 2;
    let mut out = vec![
        Constraint { kind: ConKind::NonStrict, row: HomVec::unit(len, len - 1) },
        Constraint::new(ConKind::NonStrict, {
            let mut v = HomVec::unit(len, 0).into_coeffs();
            v[len - 1] = (-1).into();
            HomVec::new(v)
        })
        .expect("nonzero"),
    ];
    for c in cs {
        let (kind, e) = match c.kind {
            ConKind::Strict => (ConKind::NonStrict, -1),
            k => (k, 0),
        };
        out.push(Constraint::new(kind, with_eps(&c.row, e)).expect("nonzero"));
    }
    out
}

/// Points get two copies at ε = 1 and ε = 0; everything else sits at ε = 0.
pub fn eps_encode_generators(gs: &[Generator]) -> Vec<Generator> {
    let mut out = Vec::new();
    for g in gs {
        let closed = with_eps(&g.row, 0);
        match g.kind {
            GenKind::Point => {
                let mut lifted = g.row.coeffs().to_vec();
                lifted.push(g.row.slot0().clone());
                out.push(Generator { kind: GenKind::Point, row: HomVec::new(lifted) });
                out.push(Generator { kind: GenKind::Point, row: closed });
            }
            GenKind::ClosurePoint => out.push(Generator { kind: GenKind::Point, row: closed }),
            k => out.push(Generator { kind: k, row: closed }),
        }
    }
    out
}

fn drop_eps(row: &HomVec) -> HomVec {
    let c = row.coeffs();
    HomVec::new(c[..c.len() - 1].to_vec())
}

/// Generators of `⟦R⟧` from generators of the closed ε-polyhedron `R`.
/// `None` when no generator has a positive ε coordinate.
pub fn eps_decode_generators(gs: &[Generator]) -> Option<Vec<Generator>> {
    let mut out = Vec::new();
    let mut has_point = false;
    for g in gs {
        let e = g.row.coeffs().last().expect("nonempty row");
        let row = drop_eps(&g.row);
        let kind = match g.kind {
            GenKind::Point if e.is_positive() => {
                has_point = true;
                GenKind::Point
            }
            GenKind::Point | GenKind::ClosurePoint => GenKind::ClosurePoint,
            k => k,
        };
        if row.is_zero() {
            continue;
        }
        out.push(Generator::new(kind, row).expect("decoded row keeps its kind"));
    }
    has_point.then_some(out)
}

/// Constraints of `⟦R⟧` from constraints of `R`: rows with a negative ε
/// coefficient turn strict, the ε bounds and tautologies disappear.
pub fn eps_decode_constraints(cs: &[Constraint]) -> Vec<Constraint> {
    let mut out = Vec::new();
    for c in cs {
        let e = c.row.coeffs().last().expect("nonempty row").clone();
        let row = drop_eps(&c.row);
        if row.is_constant() {
            // ε bounds and tautologies vanish; contradictions survive as `-1 >= 0`
            let s0 = row.slot0();
            let contradiction = match c.kind {
                ConKind::Equality => !s0.is_zero(),
                _ => s0.is_negative() || (s0.is_zero() && e.is_negative()),
            };
            if contradiction {
                out.push(Constraint { kind: ConKind::NonStrict, row: HomVec::unit(row.len(), 0).neg() });
            }
            continue;
        }
        let kind = match c.kind {
            ConKind::Equality => ConKind::Equality,
            _ if e.is_negative() => ConKind::Strict,
            _ => ConKind::NonStrict,
        };
        out.push(Constraint::new(kind, row).expect("nonconstant row"));
    }
    out
}

/// ε-path conversion: encode, run the closed engine in one more dimension,
/// decode. `None` means empty.
pub fn eps_c2g(dim: usize, cs: &[Constraint], stats: &mut StatsRecord) -> Option<Vec<Generator>> {
    let enc = eps_encode(dim, cs);
    let cone = closed_generators(dim + 1, &enc, stats);
    eps_decode_generators(&cone_to_generators(&cone))
}

/// ε-path conversion from generators. `None` means empty.
pub fn eps_g2c(dim: usize, gs: &[Generator], stats: &mut StatsRecord) -> Option<Vec<Constraint>> {
    if !gs.iter().any(|g| g.kind == GenKind::Point) {
        return None;
    }
    let enc = eps_encode_generators(gs);
    let cone = closed_constraints(dim + 2, &enc, stats);
    Some(eps_decode_constraints(&cone_to_constraints(&cone)))
}

/// A nonempty face of a closed polyhedron: the constraints it saturates and
/// the non-line generators it contains, both as index sets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub constraints: BTreeSet<usize>,
    pub generators: BTreeSet<usize>,
}

pub const FACE_ENUM_MAX_CONSTRAINTS: usize = 12;
pub const FACE_ENUM_MAX_DIM: usize = 3;

/// All nonempty faces, found by saturating every subset of constraints.
pub fn enumerate_faces_bruteforce(cs: &[Constraint], gs: &[Generator]) -> Result<Vec<Face>> {
    if cs.len() > FACE_ENUM_MAX_CONSTRAINTS {
        return Err(Error::ScaleLimit(format!("{} constraints", cs.len())));
    }
    if let Some(g) = gs.first() {
        if g.space_dim() > FACE_ENUM_MAX_DIM {
            return Err(Error::ScaleLimit(format!("dimension {}", g.space_dim())));
        }
    }
    let zero: Vec<Vec<bool>> = gs
        .iter()
        .map(|g| cs.iter().map(|c| c.row.dot(&g.row).is_zero()).collect())
        .collect();
    let mut faces = BTreeSet::new();
    for mask in 0u32..(1 << cs.len()) {
        let gens: BTreeSet<usize> = (0..gs.len())
            .filter(|&g| gs[g].kind != GenKind::Line)
            .filter(|&g| (0..cs.len()).all(|c| mask & (1 << c) == 0 || zero[g][c]))
            .collect();
        if !gens.iter().any(|&g| gs[g].is_point_like()) {
            continue;
        }
        let constraints = (0..cs.len()).filter(|&c| gens.iter().all(|&g| zero[g][c])).collect();
        faces.insert(Face { constraints, generators: gens });
    }
    Ok(faces.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> Vec<Constraint> {
        vec![
            Constraint::ge(&[1, 0], 0),
            Constraint::ge(&[0, 1], 0),
            Constraint::le(&[1, 0], 1),
            Constraint::le(&[0, 1], 1),
        ]
    }

    fn rows_of(gs: &[Generator], kind: GenKind) -> BTreeSet<HomVec> {
        gs.iter().filter(|g| g.kind == kind).map(|g| g.row.clone()).collect()
    }

    #[test]
    fn square_has_four_vertices() {
        let gs = closed_conversion(2, &unit_square(), &mut StatsRecord::default()).unwrap().unwrap();
        let want: BTreeSet<_> = [[0, 0], [1, 0], [0, 1], [1, 1]]
            .iter()
            .map(|c| Generator::point(c, 1).row)
            .collect();
        assert_eq!(rows_of(&gs, GenKind::Point), want);
        assert_eq!(gs.len(), 4);
    }

    #[test]
    fn half_line() {
        let gs = closed_conversion(1, &[Constraint::ge(&[1], 0)], &mut StatsRecord::default())
            .unwrap()
            .unwrap();
        assert_eq!(rows_of(&gs, GenKind::Point), [Generator::point(&[0], 1).row].into());
        assert_eq!(rows_of(&gs, GenKind::Ray), [Generator::ray(&[1]).row].into());
    }

    #[test]
    fn redundant_constraint_leaves_no_trace() {
        let cs = [Constraint::ge(&[1], 0), Constraint::ge(&[1], -1)];
        let gs = closed_conversion(1, &cs, &mut StatsRecord::default()).unwrap().unwrap();
        assert_eq!(gs.len(), 2);
        let back = closed_conversion_g2c(1, &gs, &mut StatsRecord::default()).unwrap().unwrap();
        assert!(!back.iter().any(|c| c.row == Constraint::ge(&[1], -1).row));
    }

    #[test]
    fn strict_input_refused() {
        let r = closed_conversion(1, &[Constraint::gt(&[1], 0)], &mut StatsRecord::default());
        assert!(matches!(r, Err(Error::Kind(_))));
    }

    #[test]
    fn empty_closed_system() {
        let cs = [Constraint::ge(&[1], 1), Constraint::le(&[1], 0)];
        assert_eq!(closed_conversion(1, &cs, &mut StatsRecord::default()).unwrap(), None);
    }

    #[test]
    fn encode_interval() {
        let cs = [Constraint::ge(&[1], 1), Constraint::lt(&[1], 3)];
        let enc = eps_encode(1, &cs);
        let rows: BTreeSet<_> = enc.iter().map(|c| c.row.clone()).collect();
        let want: BTreeSet<_> = [
            HomVec::from_i64(&[0, 0, 1]),   // ε >= 0
            HomVec::from_i64(&[1, 0, -1]),  // ε <= 1
            HomVec::from_i64(&[-1, 1, 0]),  // x >= 1
            HomVec::from_i64(&[3, -1, -1]), // x + ε <= 3
        ]
        .into();
        assert_eq!(rows, want);
    }

    #[test]
    fn decode_interval_generators() {
        let cs = [Constraint::ge(&[1], 1), Constraint::lt(&[1], 3)];
        let gs = eps_c2g(1, &cs, &mut StatsRecord::default()).unwrap();
        assert!(rows_of(&gs, GenKind::Point).contains(&Generator::point(&[1], 1).row));
        assert!(rows_of(&gs, GenKind::ClosurePoint).contains(&Generator::point(&[3], 1).row));
        assert!(!rows_of(&gs, GenKind::Point).contains(&Generator::point(&[3], 1).row));
    }

    #[test]
    fn decode_interval_constraints() {
        let gs = [Generator::point(&[1], 1), Generator::closure_point(&[3], 1)];
        let cs = eps_g2c(1, &gs, &mut StatsRecord::default()).unwrap();
        let pt = |x| Generator::point(&[x], 1).row;
        assert!(crate::geom::con_contains(&cs, &pt(1)).unwrap());
        assert!(crate::geom::con_contains(&cs, &pt(2)).unwrap());
        assert!(!crate::geom::con_contains(&cs, &pt(3)).unwrap());
        assert!(!crate::geom::con_contains(&cs, &pt(0)).unwrap());
    }

    #[test]
    fn strict_pair_is_empty_under_eps() {
        let cs = [Constraint::gt(&[1], 0), Constraint::lt(&[1], 0)];
        assert!(eps_c2g(1, &cs, &mut StatsRecord::default()).is_none());
    }

    #[test]
    fn square_face_count() {
        let cs = unit_square();
        let gs = closed_conversion(2, &cs, &mut StatsRecord::default()).unwrap().unwrap();
        let faces = enumerate_faces_bruteforce(&cs, &gs).unwrap();
        assert_eq!(faces.len(), 9);
        let sizes: Vec<usize> = faces.iter().map(|f| f.generators.len()).collect();
        assert_eq!(sizes.iter().filter(|&&s| s == 1).count(), 4);
        assert_eq!(sizes.iter().filter(|&&s| s == 2).count(), 4);
        assert_eq!(sizes.iter().filter(|&&s| s == 4).count(), 1);
    }

    #[test]
    fn single_point_and_ray_faces() {
        let cs = [Constraint::eq(&[1], 0)];
        let gs = [Generator::point(&[0], 1)];
        assert_eq!(enumerate_faces_bruteforce(&cs, &gs).unwrap().len(), 1);

        let cs = [Constraint::ge(&[1], 0)];
        let gs = closed_conversion(1, &cs, &mut StatsRecord::default()).unwrap().unwrap();
        let faces = enumerate_faces_bruteforce(&cs, &gs).unwrap();
        assert_eq!(faces.len(), 2);
        assert!(faces.iter().any(|f| f.generators.len() == 2));
    }
}
