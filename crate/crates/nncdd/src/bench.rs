//! Dual-hypercube workload: four NNC cross-polytopes combined by two hulls
//! and one intersection, run on both the direct engine and the
//! ε-representation engine.

use serde::Serialize;

use crate::eps::{eps_c2g, eps_g2c};
use crate::error::Result;
use crate::geom::{ConKind, Constraint};
use crate::polyhedron::NncPolyhedron;
use crate::stats::StatsRecord;

#[derive(Debug, Clone, Serialize)]
pub struct DualHypercubeParams {
    pub dim: usize,
    pub radius: i64,
    pub centers: Vec<Vec<i64>>,
    /// Facets with a `+1` sign on both of these axes stay non-strict.
    pub nonstrict_axes: (usize, usize),
}

impl DualHypercubeParams {
    pub fn new(dim: usize) -> Self {
        let shifted = |axis: usize, by: i64| {
            let mut c = vec![0; dim];
            c[axis % dim] = by;
            c
        };
        DualHypercubeParams {
            dim,
            radius: 2,
            centers: vec![vec![0; dim], shifted(0, 2), shifted(1, 1), shifted(1, -1)],
            nonstrict_axes: (0, 1.min(dim.saturating_sub(1))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub workload: &'static str,
    pub params: DualHypercubeParams,
    pub new_engine: StatsRecord,
    pub eps_engine: StatsRecord,
    pub results_equal: bool,
}

/// `sum_i s_i (x_i - center_i) <= radius` for every sign vector `s`.
pub fn cross_polytope(params: &DualHypercubeParams, center: &[i64]) -> Vec<Constraint> {
    let d = params.dim;
    let (a, b) = params.nonstrict_axes;
    (0..1u32 << d)
        .map(|mask| {
            let s: Vec<i64> = (0..d).map(|i| if mask & (1 << i) != 0 { -1 } else { 1 }).collect();
            let rhs = params.radius + s.iter().zip(center).map(|(x, c)| x * c).sum::<i64>();
            if s[a] == 1 && s[b] == 1 {
                Constraint::le(&s, rhs)
            } else {
                Constraint::lt(&s, rhs)
            }
        })
        .collect()
}

/// Runs `(A ⊎ B) ∩ (C ⊎ D)` on both engines.
pub fn dual_hypercube(params: DualHypercubeParams) -> Result<BenchReport> {
    let d = params.dim;
    let cubes: Vec<Vec<Constraint>> = params.centers.iter().map(|c| cross_polytope(&params, c)).collect();

    let mut new_engine = StatsRecord::default();
    let polys = cubes
        .iter()
        .map(|cs| NncPolyhedron::from_constraints(d, cs.clone()))
        .collect::<Result<Vec<_>>>()?;
    let [mut a, mut b, mut c, mut e]: [NncPolyhedron; 4] = polys.try_into().expect("four cubes");
    let mut h1 = a.poly_hull(&mut b)?;
    let mut h2 = c.poly_hull(&mut e)?;
    let mut result = h1.intersect(&mut h2)?;
    result.is_empty()?;
    for p in [&a, &b, &c, &e, &h1, &h2, &result] {
        new_engine.absorb(p.stats());
    }

    let mut eps_engine = StatsRecord::default();
    let t0 = std::time::Instant::now();
    let gens: Vec<_> = cubes.iter().map(|cs| eps_c2g(d, cs, &mut eps_engine).unwrap_or_default()).collect();
    let hull = |a: usize, b: usize, st: &mut StatsRecord| {
        let gs: Vec<_> = gens[a].iter().chain(&gens[b]).cloned().collect();
        eps_g2c(d, &gs, st).unwrap_or_default()
    };
    let mut meet = hull(0, 1, &mut eps_engine);
    meet.extend(hull(2, 3, &mut eps_engine));
    let eps_result = eps_c2g(d, &meet, &mut eps_engine);
    eps_engine.time_ms = t0.elapsed().as_secs_f64() * 1e3;

    let mut eps_poly = match eps_result {
        Some(gs) => NncPolyhedron::from_generators(d, gs)?,
        None => NncPolyhedron::empty(d),
    };
    let results_equal = result.equals(&mut eps_poly)?;
    Ok(BenchReport { workload: "dualhypercube", params, new_engine, eps_engine, results_equal })
}

/// Number of strict facets per cube, for reporting.
pub fn strict_facets(params: &DualHypercubeParams) -> usize {
    cross_polytope(params, &params.centers[0]).iter().filter(|c| c.kind == ConKind::Strict).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_facets() {
        let p = DualHypercubeParams::new(3);
        let cs = cross_polytope(&p, &[0, 0, 0]);
        assert_eq!(cs.len(), 8);
        assert_eq!(strict_facets(&p), 6);
    }

    #[test]
    fn small_workload_agrees() {
        let r = dual_hypercube(DualHypercubeParams::new(2)).unwrap();
        assert!(r.results_equal);
        assert!(r.new_engine.iterations > 0 && r.eps_engine.iterations > 0);
    }
}
