use tricount_core::arith::{canonical_residue, frac_part, gcd, integer, mod_inverse, ratio};
use tricount_core::correction::{
    a_count, correction_r, correction_r_1q, correction_r_global, delta_comb, delta_invariant,
    normalize_type,
};
use tricount_core::ehrhart::{
    count, count_bruteforce, count_series, euler_characteristic, intersection_number,
    lattice_points, pick_area, quadratic_term, virtual_genus,
};
use tricount_core::hj::{
    blache_bound_report, blache_diff_report, canonical_multiple_degree, delta_top,
    gorenstein_index, hj_expand, intersection_matrix, lct, relative_canonical,
};
use tricount_core::unity::{r_via_roots, unity_sum_identity};
use tricount_core::weights::{pairwise_gcds, reduce, residues_r};
use tricount_core::{BigInt, CyclicQuotient, Error, Rational, WeightVector};

fn b(n: i64) -> BigInt {
    BigInt::from(n)
}

fn q(n: i64, d: i64) -> Rational {
    ratio(n, d)
}

fn wv(a: i64, c: i64, e: i64) -> WeightVector {
    WeightVector::new(a, c, e).unwrap()
}

fn cq(d: i64, a: i64, c: i64) -> CyclicQuotient {
    CyclicQuotient::new(d, a, c).unwrap()
}

#[test]
fn arithmetic() {
    assert_eq!(gcd(&b(19), &b(12)), b(1));
    assert_eq!(gcd(&b(0), &b(0)), b(0));
    assert_eq!(gcd(&b(1235), &b(6545)), b(5));
    assert_eq!(mod_inverse(&b(7), &b(19)).unwrap(), b(11));
    assert_eq!(mod_inverse(&b(13), &b(19)).unwrap(), b(3));
    assert_eq!(mod_inverse(&b(1), &b(8)).unwrap(), b(1));
    assert!(matches!(mod_inverse(&b(6), &b(9)), Err(Error::NotCoprime { .. })));
    assert_eq!(canonical_residue(&b(1528), &b(19)), b(8));
    assert_eq!(canonical_residue(&b(-8), &b(19)), b(11));
    assert_eq!(frac_part(&q(8, 12)), q(2, 3));
    assert_eq!(frac_part(&q(-3, 5)), q(2, 5));
    assert_eq!(frac_part(&integer(7)), integer(0));
}

#[test]
fn weights_and_reduction() {
    let g = pairwise_gcds(&wv(1235, 6545, 2652));
    assert_eq!((g.w01, g.w02, g.w12), (b(5), b(13), b(17)));
    let g = pairwise_gcds(&wv(2, 2, 3));
    assert_eq!((g.w01, g.w02, g.w12), (b(2), b(1), b(1)));
    assert_eq!(residues_r(&wv(2, 2, 3), 5).unwrap(), [b(0), b(0), b(1)]);
    assert_eq!(residues_r(&wv(3, 5, 7), 40).unwrap(), [b(0), b(0), b(0)]);
    let red = reduce(&wv(1235, 6545, 2652), 1710721).unwrap();
    assert_eq!((red.v, red.e, red.r), (wv(19, 77, 12), b(1528), [b(1), b(2), b(3)]));
    assert!(reduce(&wv(2, 2, 3), 1).unwrap().is_empty());
}

#[test]
fn local_terms() {
    let n = normalize_type(&cq(19, 77, 12), 1528);
    assert_eq!((n.d, n.q, n.k), (b(19), b(12), b(8)));
    let n = normalize_type(&cq(1, 4, 9), 5);
    assert_eq!((n.d, n.q, n.k), (b(1), b(0), b(0)));
    assert_eq!(correction_r_1q(19, 12, 8).unwrap(), q(-7, 19));
    assert_eq!(correction_r_1q(2, 1, 1).unwrap(), q(-1, 4));
    assert_eq!(correction_r_1q(12, 7, 8).unwrap(), -correction_r_1q(7, 5, 1).unwrap() - q(1, 3));
    assert_eq!(correction_r(&cq(19, 77, 12), 1528), q(-7, 19));
    assert_eq!(correction_r(&cq(77, 19, 12), 1528), q(-38, 77));
    assert_eq!(correction_r(&cq(12, 19, 77), 1528), q(-4, 3));
    assert_eq!(correction_r_global(&wv(19, 77, 12), 1528).unwrap(), q(-9635, 4389));
    assert_eq!(correction_r_global(&wv(19, 77, 12), 0).unwrap(), integer(0));
    assert_eq!(correction_r_global(&wv(1, 1, 1), 17).unwrap(), integer(0));
}

#[test]
fn delta_and_counting_region() {
    assert_eq!(a_count(19, 7, 12), 19);
    assert_eq!(a_count(1, 1, 3), 3);
    assert_eq!(a_count(5, 3, 0), 0);
    assert_eq!(delta_comb(19, 7, 12), q(354, 19));
    assert_eq!(delta_comb(1, 1, 9), integer(36));
    assert_eq!(delta_invariant(&cq(19, -1, 7), 8).unwrap(), q(7, 19));
    assert_eq!(delta_invariant(&cq(19, 1, 12), 11).unwrap(), q(7, 19));
    assert_eq!(delta_invariant(&cq(19, 3, 5), 0).unwrap(), integer(0));
}

#[test]
fn counting() {
    let w = wv(19, 77, 12);
    assert_eq!(count(&w, 1528), b(70));
    assert_eq!(count(&wv(1235, 6545, 2652), 1710721), b(70));
    assert_eq!(count(&wv(1, 1, 1), 2), b(6));
    assert_eq!(count(&wv(2, 2, 3), 1), b(0));
    assert_eq!(count(&wv(2, 3, 5), 10), b(4));
    assert_eq!(count_bruteforce(&wv(2, 3, 5), 10).unwrap(), 4);
    assert_eq!(count_series(&w, 1528).unwrap(), 70);
    assert_eq!(lattice_points(&w, 1528).unwrap().len(), 70);
    assert_eq!(euler_characteristic(&w, 1528).unwrap(), b(70));
    assert_eq!(euler_characteristic(&w, 0).unwrap(), b(1));
    assert_eq!(euler_characteristic(&w, -5).unwrap(), b(0));
    assert_eq!(quadratic_term(&w, 1528), q(312476, 4389));
    assert_eq!(quadratic_term(&w, 0), integer(0));
    assert_eq!(intersection_number(&w, 1528, 1636), q(624952, 4389));
    assert_eq!(intersection_number(&wv(1, 1, 1), 4, 7), integer(28));
    assert_eq!(virtual_genus(&w, 0), integer(1));
    assert_eq!(virtual_genus(&wv(1, 1, 1), 5), integer(6));
    for d in 0..30 {
        assert_eq!(count(&wv(1, 1, 1), d), b((d + 1) * (d + 2) / 2));
        assert_eq!(quadratic_term(&wv(1, 1, 1), d), integer(d * (d + 3) / 2));
    }
    assert_eq!(pick_area(6, 4), integer(7));
    assert_eq!(pick_area(0, 3), q(1, 2));
    assert_eq!(pick_area(61, 9), q(129, 2));
}

#[test]
fn resolution_geometry() {
    let h = hj_expand(19, 12).unwrap();
    assert_eq!((h.c.clone(), h.q.clone(), h.qbar.clone()), (vec![2, 3, 2, 3], vec![12, 5, 3, 1], vec![1, 2, 5, 8]));
    let h52 = hj_expand(5, 2).unwrap();
    assert_eq!((h52.c.clone(), h52.q.clone(), h52.qbar.clone()), (vec![3, 2], vec![2, 1], vec![1, 3]));
    let h71 = hj_expand(7, 1).unwrap();
    assert_eq!((h71.c.clone(), intersection_matrix(&h71)), (vec![7], vec![vec![-7]]));
    let m = intersection_matrix(&h);
    assert_eq!((0..4).map(|i| m[i][i]).collect::<Vec<_>>(), vec![-2, -3, -2, -3]);
    assert_eq!(relative_canonical(&h), vec![q(-6, 19), q(-12, 19), q(-11, 19), q(-10, 19)]);
    assert_eq!(relative_canonical(&h52), vec![q(-2, 5), q(-1, 5)]);
    assert_eq!(relative_canonical(&h71), vec![q(2, 7) - integer(1)]);
    let ed = [q(11, 19), q(22, 19), q(17, 19), q(12, 19)];
    assert_eq!(delta_top(&h, &ed).unwrap(), q(45, 19));
    assert_eq!(delta_top(&h, &vec![integer(0); 4]).unwrap(), integer(0));
    assert!(delta_top(&h, &ed[..2]).is_err());
    assert_eq!(lct(19, 12).unwrap(), q(7, 19));
    assert_eq!(lct(9, 1).unwrap(), q(2, 9));
    assert_eq!(lct(5, 2).unwrap(), q(3, 5));
}

#[test]
fn blache_checks() {
    assert_eq!(gorenstein_index(19, 12), 19);
    assert_eq!(gorenstein_index(20, 1), 10);
    assert_eq!(gorenstein_index(11, 10), 1);
    assert_eq!(canonical_multiple_degree(19, 12, 14), 8);
    assert_eq!(canonical_multiple_degree(19, 12, 0), 0);
    assert_eq!(canonical_multiple_degree(20, 1, 5), 10);
    let r = blache_bound_report(19, 12).unwrap();
    assert!(r.holds);
    assert_eq!(r.rows.iter().find(|row| row.ell == 14).unwrap().r, q(-7, 19));
    let r = blache_bound_report(20, 1).unwrap();
    let row = r.rows.iter().find(|row| row.ell == 5).unwrap();
    assert_eq!((row.r.clone(), row.bound.clone(), row.holds), (integer(2), integer(2), true));
    let r = blache_bound_report(2, 1).unwrap();
    assert!(r.holds && r.rows.is_empty());
    let d = blache_diff_report(19, 12).unwrap();
    assert_eq!((d.max, d.attained_at, d.holds), (q(12, 19), vec![4, 15], true));
    let d = blache_diff_report(5, 2).unwrap();
    assert_eq!(d.bound, q(2, 5));
    assert!(d.holds);
    assert!(blache_diff_report(2, 1).unwrap().rows.iter().all(|r| r.diff <= q(1, 2)));
}

#[test]
fn floating_oracle() {
    assert!((r_via_roots(19, 77, 12, 1528).unwrap() + 7.0 / 19.0).abs() < 1e-12);
    assert!((r_via_roots(12, 19, 77, 1528).unwrap() + 4.0 / 3.0).abs() < 1e-12);
    assert!(r_via_roots(40, 3, 7, 0).unwrap().abs() < 1e-12);
    assert!((unity_sum_identity(2) - 0.5).abs() < 1e-12);
    assert!((unity_sum_identity(7) - 3.0).abs() < 1e-12);
    assert!((unity_sum_identity(360) - 179.5).abs() < 1e-9);
}
