use fermi1d::analysis::envelope_fit;

const FIXTURE: &str = include_str!("fixtures/envelope_fit.tsv");

#[test]
fn envelope_fits_match_archive() {
    let mut seen = 0;
    for line in FIXTURE.lines().filter(|l| !l.starts_with('#')) {
        let f: Vec<&str> = line.split('\t').collect();
        let n: usize = f[0].parse().unwrap();
        let fit = envelope_fit(n).unwrap();
        let close = |a: f64, s: &str| {
            let b: f64 = s.parse().unwrap();
            (a - b).abs() <= 1e-9 * b.abs()
        };
        assert!(close(fit.delta, f[1]), "N = {n}: delta {}", fit.delta);
        assert!(close(fit.residual, f[2]), "N = {n}: residual {}", fit.residual);
        assert_eq!(fit.points.len(), f[3].parse::<usize>().unwrap());
        assert!(close(fit.fit_window.0, f[4]) && close(fit.fit_window.1, f[5]));
        seen += 1;
    }
    assert_eq!(seen, 3);
}

#[test]
fn envelope_exponent_trend() {
    let d: Vec<f64> = [100, 1000, 10_000].iter().map(|&n| envelope_fit(n).unwrap().delta).collect();
    assert!(d[0] < d[1] && d[1] < d[2]);
    assert!(d.iter().all(|&x| x > 0.5 && x < 1.1));
    assert!(d[1] > 0.7 && d[1] < 1.0);
    assert!(envelope_fit(10_000).unwrap().residual < 0.1);
}
