//! Acceptance criterion 8, exercised through the shipped binary: the two
//! figure presets must reproduce the published curve shapes — monotone
//! decay in `M`, pointwise ordering across the parameter family, and the
//! cloning bracket `2/3 <= F <= 2/3 + 1/(3M)`. The remaining criteria run
//! in the core crate's acceptance suite.

use std::process::Command;

/// Ordered curves from one preset run: `(family key, F values for M = 1..)`.
fn preset_curves(subcommand: &str, key_column: usize) -> Vec<(f64, Vec<f64>)> {
    let out = Command::new(env!("CARGO_BIN_EXE_horizon"))
        .arg(subcommand)
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{subcommand} failed: {out:?}");
    let text = String::from_utf8(out.stdout).expect("utf-8 output");
    let mut lines = text.lines();
    assert_eq!(
        lines.next().expect("header").split(',').nth(4),
        Some("F_analytic"),
        "unexpected column layout"
    );
    let mut curves: Vec<(f64, Vec<f64>)> = Vec::new();
    let mut expect_m = 0;
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        let key: f64 = cells[key_column].parse().expect("family key");
        let m: usize = cells[3].parse().expect("M");
        let f: f64 = cells[4].parse().expect("F_analytic");
        match curves.last_mut() {
            Some((k, fs)) if *k == key => fs.push(f),
            _ => {
                curves.push((key, vec![f]));
                expect_m = 0;
            }
        }
        expect_m += 1;
        assert_eq!(m, expect_m, "M values not contiguous from 1");
    }
    assert_eq!(curves.len(), 5, "expected five curves");
    for (_, fs) in &curves {
        assert_eq!(fs.len(), 20, "expected M = 1..=20 per curve");
    }
    curves
}

fn assert_shapes(label: &str, curves: &[(f64, Vec<f64>)], lower_key_dominates: bool) {
    let eps = 1e-9;
    for (key, fs) in curves {
        for (i, f) in fs.iter().enumerate() {
            let m = (i + 1) as f64;
            assert!(
                (2.0 / 3.0 - eps..=2.0 / 3.0 + 1.0 / (3.0 * m) + eps).contains(f),
                "{label}: F = {f} outside bracket at key {key}, M = {m}"
            );
        }
        for w in fs.windows(2) {
            assert!(
                w[1] <= w[0] + eps,
                "{label}: curve at key {key} increases in M ({} -> {})",
                w[0],
                w[1]
            );
        }
    }
    // Keys come out ascending; check the required pointwise dominance.
    for pair in curves.windows(2) {
        let ((ka, fa), (kb, fb)) = (&pair[0], &pair[1]);
        assert!(ka < kb, "{label}: keys not ascending");
        let (hi, lo) = if lower_key_dominates { (fa, fb) } else { (fb, fa) };
        for (i, (h, l)) in hi.iter().zip(lo).enumerate() {
            assert!(
                h + eps >= *l,
                "{label}: dominance broken between keys {ka} and {kb} at M = {}",
                i + 1
            );
        }
    }
}

#[test]
fn criterion_8_figure_presets_have_the_right_shape_ordering_and_bracket() {
    // Absorption family: weaker absorption clones better at every M.
    let fig2 = preset_curves("figure2", 0);
    assert_shapes("figure2", &fig2, true);
    // Frequency family: colder modes clone better at every M.
    let fig3 = preset_curves("figure3", 1);
    assert_shapes("figure3", &fig3, false);
    println!(
        "[PASS] criterion 8: figure presets non-increasing in M, ordered across the family, inside [2/3, 2/3 + 1/(3M)]"
    );
}
