use lis_lab::ecc::sample_pair_from;
use lis_lab::gadget1::{build_z, embed_in_order, type1_code, type1_gap};
use lis_lab::gadget2::{build_matrix, grid_max_weight, type2_bounds, type2_codes};
use lis_lab::lis::lis;
use lis_lab::order::{random_order, type1_witness, verify_type1};
use lis_lab::rng;

#[test]
fn type1_instance_survives_embedding_in_random_order() {
    let n = 64;
    let code = type1_code(n, 5).unwrap();
    let (lb, ub) = type1_gap(n).unwrap();
    let mut g = rng::seeded(5);
    let (u, v) = sample_pair_from(&code, &mut g).unwrap();
    let inst = build_z(&u, &v).unwrap();
    let len = inst.z_uv.len();
    let order = random_order(16 * len, 11);
    let w = type1_witness(&order, len / 2).expect("a long random order has a type-1 witness");
    assert!(verify_type1(&order, &w));
    let x = embed_in_order(&inst, &order, &w).unwrap();
    assert_eq!(x.len(), 16 * len);
    assert_eq!(lis(&x.without_zeros()), lis(&inst.z_uv.without_zeros()));
    assert!(lis(&inst.z_uv).min(lis(&inst.z_vu)) <= ub);
    let same = build_z(&u, &u).unwrap();
    assert!(lis(&same.z_uv) >= lb);
}

#[test]
fn type2_matrix_separates_equal_from_distinct() {
    let (p, q) = (8, 8);
    let (inner, outer) = type2_codes(p, q, 3).unwrap();
    let (ub, lb) = type2_bounds(p, q).unwrap();
    let mut g = rng::seeded(3);
    for _ in 0..10 {
        let (u, v) = sample_pair_from(&outer, &mut g).unwrap();
        let same = build_matrix(&u, &u, &inner).unwrap();
        let diff = build_matrix(&u, &v, &inner).unwrap();
        assert!(grid_max_weight(&same.m).unwrap().0 <= ub);
        assert!(grid_max_weight(&diff.m).unwrap().0 >= lb);
        // The serialised sequence keeps the path weight as its nonzero LIS.
        assert_eq!(lis(&diff.sigma.without_zeros()), grid_max_weight(&diff.m).unwrap().0);
    }
}
