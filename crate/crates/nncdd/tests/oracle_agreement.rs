mod common;

use common::*;
use nncdd::conversion::{conversion_c2g, conversion_g2c};
use nncdd::{StatsRecord};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn c2g_matches_constraint_semantics_2d() {
    let pts = grid(2, 8, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..300 {
        let n = 1 + case % 6;
        let cs = random_constraints(&mut rng, 2, n, 3);
        let out = conversion_c2g(2, &cs, None, &mut StatsRecord::default()).unwrap();
        let want = con_membership(&cs, &pts);
        match out {
            None => assert!(reference_gens(2, &cs).is_none(), "case {case}: wrongly empty {cs:?}"),
            Some(g) => {
                let got = gen_membership(2, &g.flat(), &pts);
                assert_eq!(got, want, "case {case}: {cs:?}\n{:?}\n{:?}", g.elements(), g.supports());
            }
        }
    }
}

#[test]
fn c2g_matches_constraint_semantics_3d() {
    let pts = grid(3, 4, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..120 {
        let n = 2 + case % 6;
        let cs = random_constraints(&mut rng, 3, n, 2);
        let out = conversion_c2g(3, &cs, None, &mut StatsRecord::default()).unwrap();
        let want = con_membership(&cs, &pts);
        match out {
            None => assert!(reference_gens(3, &cs).is_none(), "case {case}: wrongly empty {cs:?}"),
            Some(g) => assert_eq!(gen_membership(3, &g.flat(), &pts), want, "case {case}: {cs:?}"),
        }
    }
}

#[test]
fn g2c_matches_generator_semantics_2d() {
    let pts = grid(2, 8, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for case in 0..300 {
        let n = 1 + case % 6;
        let gs = random_generators(&mut rng, 2, n, 3);
        let c = conversion_g2c(2, &gs, None, &mut StatsRecord::default()).unwrap().unwrap();
        let want = gen_membership(2, &gs, &pts);
        assert_eq!(con_membership(&c.flat(), &pts), want, "case {case}: {gs:?}\n{:?}", c.elements());
    }
}

#[test]
fn g2c_matches_generator_semantics_3d() {
    let pts = grid(3, 4, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for case in 0..120 {
        let n = 2 + case % 6;
        let gs = random_generators(&mut rng, 3, n, 2);
        let c = conversion_g2c(3, &gs, None, &mut StatsRecord::default()).unwrap().unwrap();
        assert_eq!(con_membership(&c.flat(), &pts), gen_membership(3, &gs, &pts), "case {case}: {gs:?}");
    }
}

#[test]
fn invariants_hold_after_every_iteration() {
    use nncdd::conversion::DdState;
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for case in 0..200 {
        let dim = 2 + case % 2;
        let cs = random_constraints(&mut rng, dim, 6, 3);
        let mut s = DdState::universe(dim);
        let st = &mut StatsRecord::default();
        for c in &cs {
            if !s.add(c.kind, &c.row, st).unwrap() {
                break;
            }
            s.check_invariants().unwrap_or_else(|e| panic!("case {case}: {e}\n{cs:?}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for case in 0..200 {
        let dim = 2 + case % 2;
        let gs = random_generators(&mut rng, dim, 6, 3);
        let c = conversion_g2c(dim, &gs, None, &mut StatsRecord::default()).unwrap().unwrap();
        c.state().check_invariants().unwrap_or_else(|e| panic!("case {case}: {e}\n{gs:?}"));
    }
}
