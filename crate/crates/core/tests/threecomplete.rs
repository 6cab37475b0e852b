use klslalom::threecomplete::*;

fn assert_report(r: &Report) {
    if !r.passed() {
        let bad: Vec<&str> = r.instances.iter().filter(|i| !i.pass).map(|i| i.label.as_str()).collect();
        panic!("{}: {} failures, e.g. {:?}", r.suite, bad.len(), &bad[..bad.len().min(5)]);
    }
    assert!(!r.instances.is_empty());
}

#[test]
fn pyramids() {
    assert_report(&pyramid_suite(4).unwrap());
}

#[test]
fn finalsvs() {
    assert_report(&finalsvs_suite().unwrap());
}

#[test]
fn svs_family() {
    assert_report(&svs_family_suite(5).unwrap());
}

#[test]
fn dvectors() {
    assert_report(&dvector_suite(4, 6).unwrap());
}

#[test]
fn mainhomo() {
    assert_report(&mainhomo_suite(8, 2));
    assert_eq!(mainhomo_rank(8, 2), 34);
}

#[test]
fn norel() {
    assert_report(&norel_suite(4, 1).unwrap());
}

#[test]
fn conjecture() {
    for n in 1..=5 {
        let cert = conjecture_span(n).unwrap();
        assert_eq!(cert.expected_dim, conjectured_dimension(n));
        assert!(cert.holds(), "n={n}: rank {} of {}", cert.rank, cert.expected_dim);
        assert_eq!(cert.matrix.len(), cert.pool.len());
    }
}
