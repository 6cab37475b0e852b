use klslalom::lattice::*;
use klslalom::poly::QPoly;
use klslalom::qsym::g_set;
use klslalom::BinaryWord;

fn sparse_upto(max_len: usize) -> Vec<BinaryWord> {
    (0..=max_len).flat_map(BinaryWord::sparse_words).collect()
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

#[test]
fn upsilon_zero_criterion() {
    for len in 0..=11 {
        for e in BinaryWord::all(len) {
            let alpha = e.exponent_composition();
            let nonzero = !upsilon(&e).is_zero();
            if alpha.len() < 2 {
                assert!(nonzero, "{e}");
                continue;
            }
            let inner_odd = alpha[1..alpha.len() - 1].iter().all(|a| a % 2 == 1);
            let first = alpha[0] % 2 == e.bit(1) as usize;
            assert_eq!(nonzero, inner_odd && first, "{e}");
        }
    }
}

#[test]
fn upsilon_by_enumerating_all_paths() {
    for n in 1..=9 {
        let paths = all_paths(n);
        for e in BinaryWord::all(n - 1) {
            let mut p = QPoly::zero();
            for g in paths.iter().filter(|g| g.n_word() == e) {
                let d = g.d_plus();
                p = p + QPoly::monomial(sign(e.count(0)) * sign(d), d);
            }
            assert_eq!(p, upsilon(&e), "{e}");
        }
    }
}

#[test]
fn j_inside_g_and_empty_off_sparse() {
    for len in 1..=10 {
        for t in BinaryWord::all(len) {
            let j = j_set(&t);
            if !t.is_sparse() {
                assert!(j.is_empty(), "{t}");
                continue;
            }
            let g = g_set(&t).unwrap();
            for entry in &j {
                assert!(g.contains(entry), "{t}: {entry:?}");
            }
        }
    }
}

#[test]
fn omega_tilde_via_signed_paths() {
    for t in sparse_upto(10) {
        let by_paths = l_paths(&t)
            .iter()
            .fold(QPoly::zero(), |acc, g| acc + signed_weight(&t, g));
        assert_eq!(by_paths, omega_tilde(&t), "{t}");
    }
}

#[test]
fn cancellation_on_l0_and_l0_prime() {
    for t in sparse_upto(10) {
        let even = (t.len() + 1) % 2 == 0;
        let mut l0 = QPoly::zero();
        let mut l0p = QPoly::zero();
        for g in l_paths(&t) {
            if in_l0(&t, &g) {
                l0 = l0 + signed_weight(&t, &g);
            } else if even && in_l0_prime(&t, &g) {
                l0p = l0p + signed_weight(&t, &g);
            }
        }
        assert!(l0.is_zero(), "{t}: {l0}");
        assert!(l0p.is_zero(), "{t}: {l0p}");
    }
}

#[test]
fn parity_on_l_tilde() {
    for t in sparse_upto(10) {
        let m = Marks::new(&t);
        let n = m.n;
        let rsum: usize = (1..=m.t()).map(|h| m.r(h)).sum();
        for g in l_tilde(&t) {
            assert_ne!(g.end(), 0);
            let lhs = epsilon(&t, &g).unwrap() + eta(&g);
            let rhs = if g.end() > 0 { n - 1 } else { 0 } + rsum;
            assert_eq!(lhs % 2, rhs % 2, "{t} {g}");
        }
    }
}

#[test]
fn omega_tilde_from_endpoint_counts() {
    for t in sparse_upto(10) {
        let m = Marks::new(&t);
        let n = m.n;
        let rsum: usize = (1..=m.t()).map(|h| m.r(h)).sum();
        let lt = l_tilde(&t);
        let ot = omega_tilde(&t);
        for i in 0..=n {
            let count = lt.iter().filter(|g| g.end() == 2 * i as i64 - n as i64).count() as i64;
            let s = sign(i + rsum + if 2 * i > n { n - 1 } else { 0 });
            assert_eq!(ot.coeff(i), s * count, "{t} i={i}");
            let mirror = lt.iter().filter(|g| g.end() == n as i64 - 2 * i as i64).count() as i64;
            assert_eq!(count, mirror, "{t} i={i}");
        }
    }
}

#[test]
fn omega_tilde_skew() {
    for t in sparse_upto(11) {
        let n = t.len() + 1;
        let ot = omega_tilde(&t);
        assert_eq!(ot.reflect(n), ot.scale(-1), "{t}");
    }
}

#[test]
fn slalom_definitions_agree() {
    for t in sparse_upto(10) {
        assert_eq!(slaloms(&t), slaloms_geometric(&t), "{t}");
    }
}

#[test]
fn omega_is_lower_half_of_omega_tilde() {
    for t in sparse_upto(10) {
        let n = t.len() + 1;
        let o = omega(&t);
        assert_eq!(o, omega_tilde(&t).truncate((n - 1) / 2), "{t}");
        assert!(o.degree().is_none_or(|d| d <= t.len() / 2), "{t}");
    }
}
