use fermi1d::oracle::reference::{laguerre_dd, osc_psi_dd};
use fermi1d::oracle::{evaluate_row, parse_corpus, row_passes};

const CORPUS: &str = include_str!("../data/reference_corpus.tsv");

#[test]
fn every_row_meets_its_tolerance() {
    let rows = parse_corpus(CORPUS).unwrap();
    assert!(rows.len() > 100);
    let failures: Vec<String> = rows
        .iter()
        .filter_map(|r| {
            let v = evaluate_row(r).unwrap();
            (!row_passes(r, v)).then(|| format!("{}({:?}) = {v:e}, reference {:e}", r.function, r.args, r.value))
        })
        .collect();
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn corpus_covers_every_function() {
    let rows = parse_corpus(CORPUS).unwrap();
    for f in ["osc_psi", "airy_ai", "airy_ai_prime", "laguerre_assoc", "laguerre_weighted", "bessel_j1"] {
        assert!(rows.iter().any(|r| r.function == f), "{f} missing");
    }
}

// The corpus and the double-double references come from unrelated code;
// agreement between them guards against a bad corpus row.
#[test]
fn corpus_agrees_with_double_double_references() {
    let rows = parse_corpus(CORPUS).unwrap();
    let mut checked = 0;
    for r in &rows {
        let dd = match r.function.as_str() {
            "osc_psi" if r.args[1] * r.args[1] <= 1400.0 && r.args[0] <= 2000.0 => {
                osc_psi_dd(r.args[0] as usize, r.args[1]).unwrap()
            }
            "laguerre_assoc" if r.args[0] <= 100.0 => laguerre_dd(r.args[0] as usize, r.args[1], r.args[2]),
            _ => continue,
        };
        checked += 1;
        assert!(
            (dd - r.value).abs() <= 1e-12 * r.value.abs().max(1e-3),
            "{}({:?}): dd {dd:e} vs corpus {:e}",
            r.function,
            r.args,
            r.value
        );
    }
    assert!(checked > 50);
}
