#![allow(dead_code)]

use nncdd::eps::{eps_c2g, eps_g2c};
use nncdd::geom::{con_contains, rational_point};
use nncdd::{ConKind, Constraint, GenKind, Generator, HomVec, StatsRecord};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Rational grid `{-r, .., r}^dim / den`.
pub fn grid(dim: usize, r: i64, den: i64) -> Vec<HomVec> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| (-r..=r).map(move |x| [p.clone(), vec![x]].concat()))
            .collect();
    }
    out.iter().map(|c| rational_point(c, den)).collect()
}

pub fn random_constraint(rng: &mut ChaCha8Rng, dim: usize, coef: i64) -> Constraint {
    loop {
        let a: Vec<i64> = (0..dim).map(|_| rng.gen_range(-coef..=coef)).collect();
        if a.iter().all(|&x| x == 0) {
            continue;
        }
        let b = rng.gen_range(-coef..=coef);
        return match rng.gen_range(0..10) {
            0 => Constraint::eq(&a, b),
            1..=4 => Constraint::ge(&a, b),
            _ => Constraint::gt(&a, b),
        };
    }
}

pub fn random_constraints(rng: &mut ChaCha8Rng, dim: usize, n: usize, coef: i64) -> Vec<Constraint> {
    (0..n).map(|_| random_constraint(rng, dim, coef)).collect()
}

pub fn random_generators(rng: &mut ChaCha8Rng, dim: usize, n: usize, coef: i64) -> Vec<Generator> {
    let mut out = Vec::new();
    let coords = |rng: &mut ChaCha8Rng| (0..dim).map(|_| rng.gen_range(-coef..=coef)).collect::<Vec<_>>();
    out.push(Generator::point(&coords(rng), 1));
    for _ in 1..n {
        let c = coords(rng);
        let g = match rng.gen_range(0..10) {
            0..=3 => Generator::point(&c, rng.gen_range(1..=2)),
            4..=7 => Generator::closure_point(&c, rng.gen_range(1..=2)),
            8 if c.iter().any(|&x| x != 0) => Generator::ray(&c),
            9 if c.iter().any(|&x| x != 0) && rng.gen_bool(0.3) => Generator::line(&c),
            _ => Generator::point(&c, 1),
        };
        out.push(g);
    }
    out
}

/// Constraint description of `gen(gs)` computed by the reference engine.
pub fn reference_constraints(dim: usize, gs: &[Generator]) -> Option<Vec<Constraint>> {
    eps_g2c(dim, gs, &mut StatsRecord::default())
}

/// Membership predicate of `gen(gs)` on `pts`, via the reference engine.
pub fn gen_membership(dim: usize, gs: &[Generator], pts: &[HomVec]) -> Vec<bool> {
    match reference_constraints(dim, gs) {
        None => vec![false; pts.len()],
        Some(cs) => pts.iter().map(|p| con_contains(&cs, p).unwrap()).collect(),
    }
}

pub fn con_membership(cs: &[Constraint], pts: &[HomVec]) -> Vec<bool> {
    pts.iter().map(|p| con_contains(cs, p).unwrap()).collect()
}

/// Membership of `con(cs)` via the reference generator conversion, used
/// to confirm the grid is not hiding a difference.
pub fn reference_gens(dim: usize, cs: &[Constraint]) -> Option<Vec<Generator>> {
    eps_c2g(dim, cs, &mut StatsRecord::default())
}

pub fn count_kind(gs: &[Generator], kind: GenKind) -> usize {
    gs.iter().filter(|g| g.kind == kind).count()
}

pub fn count_con_kind(cs: &[Constraint], kind: ConKind) -> usize {
    cs.iter().filter(|c| c.kind == kind).count()
}
