use klslalom::kl::*;
use klslalom::poly::QPoly;
use klslalom::qsym::f_tilde_in;
use klslalom::{BinaryWord, CoxSystem, Interval, RefOrder, Side};

/// Every pair `x ≤ v` with `ℓ(v) ≤ max_len` and `ℓ(x, v) ≤ max_gap`, checked
/// three ways: slalom formula, classical recursion, and the skew identity.
fn check_group(sys: &CoxSystem, order: &RefOrder, max_len: usize, max_gap: usize) -> usize {
    let mut oracle = KlOracle::new(sys, Side::Right);
    let mut table = OmegaTable::new();
    let mut checked = 0;
    for v in sys.elements_up_to_length(max_len) {
        let iv = Interval::new(sys, &sys.identity(), &v).unwrap();
        let pos = iv.root_positions(order);
        let top = iv.top();
        for x in 0..iv.len() {
            let ell = v.length() - iv.elem(x).length();
            if ell > max_gap || !iv.leq(x, top) {
                continue;
            }
            let slalom = kl_slalom_in(&iv, &pos, x, top, &mut table).unwrap();
            let classical = oracle.p(iv.elem(x), &v).unwrap();
            assert_eq!(slalom, classical, "{} [{}, {}]", sys.name(), iv.elem(x), v);
            assert_eq!(slalom.coeff(0), 1);
            let counts = iv.b_counts_with_positions(&pos, x, top);
            if ell > 0 {
                let skew = kl_skew_from_counts(&counts, ell, &mut table).unwrap();
                assert_eq!(skew, &classical - &classical.reflect(ell));
            }
            checked += 1;
        }
    }
    checked
}

#[test]
fn a2_b2_a3() {
    for (sys, top) in [
        (CoxSystem::type_a(2).unwrap(), 3),
        (CoxSystem::type_b(2).unwrap(), 4),
        (CoxSystem::type_a(3).unwrap(), 6),
    ] {
        let order = RefOrder::height(&sys);
        assert!(check_group(&sys, &order, top, top) > 0);
    }
}

#[test]
fn a3_other_orders() {
    let sys = CoxSystem::type_a(3).unwrap();
    for spec in ["good:1", "good:3", "biparabolic:1,2"] {
        let order = RefOrder::from_spec(&sys, spec, &[]).unwrap();
        check_group(&sys, &order, 6, 6);
    }
}

#[test]
fn a4_up_to_gap_eight() {
    let sys = CoxSystem::type_a(4).unwrap();
    let order = RefOrder::height(&sys);
    let n = check_group(&sys, &order, 10, 8);
    assert!(n > 1000);
}

#[test]
fn three_complete_rank_three() {
    let sys = CoxSystem::three_complete(3).unwrap();
    let order = RefOrder::height(&sys);
    let mut oracle = KlOracle::new(&sys, Side::Right);
    let e = sys.identity();
    for v in sys.elements_up_to_length(6) {
        let slalom = kl_slalom(&sys, &order, &e, &v).unwrap();
        assert_eq!(slalom, oracle.p(&e, &v).unwrap(), "[e, {v}]");
    }
}

#[test]
fn left_and_right_recursions_agree() {
    let sys = CoxSystem::type_a(3).unwrap();
    let mut right = KlOracle::new(&sys, Side::Right);
    let mut left = KlOracle::new(&sys, Side::Left);
    let elems = sys.elements_up_to_length(6);
    for u in &elems {
        for v in &elems {
            assert_eq!(right.r(u, v), left.r(u, v), "R[{u}, {v}]");
            if sys.bruhat_leq(u, v) {
                assert_eq!(right.p(u, v).unwrap(), left.p(u, v).unwrap());
            }
        }
    }
}

#[test]
fn kmap_bridge_on_s4() {
    let sys = CoxSystem::type_a(3).unwrap();
    let order = RefOrder::height(&sys);
    let mut oracle = KlOracle::new(&sys, Side::Right);
    let w0 = sys.elements_up_to_length(6).pop().unwrap();
    let iv = Interval::new(&sys, &sys.identity(), &w0).unwrap();
    for x in 0..iv.len() {
        for y in 0..iv.len() {
            if x == y || !iv.leq(x, y) {
                continue;
            }
            let f = f_tilde_in(&iv, &order, x, y).unwrap();
            let ell = iv.elem(y).length() - iv.elem(x).length();
            let p = oracle.p(iv.elem(x), iv.elem(y)).unwrap();
            assert_eq!(kmap_graded(&f).unwrap(), kl_bridge(&p, ell));
        }
    }
}

#[test]
fn length_three_specialisation() {
    let sys = CoxSystem::type_a(3).unwrap();
    let order = RefOrder::height(&sys);
    let mut oracle = KlOracle::new(&sys, Side::Right);
    let w0 = sys.elements_up_to_length(6).pop().unwrap();
    let iv = Interval::new(&sys, &sys.identity(), &w0).unwrap();
    let pos = iv.root_positions(&order);
    let mut seen = 0;
    for x in 0..iv.len() {
        for y in 0..iv.len() {
            if !iv.leq(x, y) || iv.elem(y).length() != iv.elem(x).length() + 3 {
                continue;
            }
            let b = iv.b_counts_with_positions(&pos, x, y);
            let get = |w: &str| *b.get(&w.parse::<BinaryWord>().unwrap()).unwrap_or(&0) as i64;
            let expected = QPoly::from_coeffs(vec![1, -2 + get("01") + get("")]);
            assert_eq!(oracle.p(iv.elem(x), iv.elem(y)).unwrap(), expected);
            seen += 1;
        }
    }
    assert!(seen > 0);
}

#[test]
fn low_lengths() {
    let sys = CoxSystem::type_b(3).unwrap();
    let order = RefOrder::height(&sys);
    for v in sys.elements_up_to_length(5) {
        for u in sys.elements_up_to_length(5) {
            let ell = v.length() as i64 - u.length() as i64;
            if (ell == 1 || ell == 2) && sys.bruhat_leq(&u, &v) {
                assert_eq!(kl_slalom(&sys, &order, &u, &v).unwrap(), QPoly::one());
            }
        }
    }
}
