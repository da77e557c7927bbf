use hamming_eigen::constructions::dual_layer_basis_coefficients;
use hamming_eigen::function_space::{rational, Rational};
use hamming_eigen::reduction::ReductionSpec;
use hamming_eigen::*;

fn p(n: usize, q: usize) -> GraphParams {
    GraphParams::new(n, q).unwrap()
}

#[test]
fn construct_serialize_reduce_classify() {
    let g = p(3, 4);
    let f = construct_dual_layer(&g, 1, 2, 3, 0, rational(-2)).unwrap();
    let f = VertexFunction::from_json(&f.to_json()).unwrap();
    assert!(f.is_eigenfunction(eigenvalue(1, &g).unwrap()));

    // Reducing along a coordinate outside both layers gives zero; along a
    // layer coordinate it gives a constant on the smaller graph.
    let g2 = reduce(&f, ReductionSpec::new(2, 0, 1)).unwrap();
    assert!(g2.is_zero());
    let g1 = reduce(&f, ReductionSpec::new(1, 2, 0)).unwrap();
    assert_eq!(g1, VertexFunction::constant(p(2, 4), rational(-2)));
    let text = g1.to_json();
    assert!(text.contains("\"n\": 2"));

    assert_eq!(
        classify_additive(&f).unwrap(),
        CanonicalForm::DualLayer {
            i: 1,
            k: 2,
            j: 3,
            m: 0,
            c: rational(-2)
        }
    );
}

/// Each achiever occupies exactly two coordinate blocks of the basis, and
/// within them is the positive multiple of the dual layer's coordinates.
#[test]
fn achiever_coefficient_shadow() {
    for (n, q, grid) in [(2, 3, "-2..2"), (3, 3, "-1..1")] {
        let g = p(n, q);
        let report = grid_min_support(&g, &grid.parse().unwrap(), &SearchConfig::default()).unwrap();
        assert!(report.verdict);
        for a in &report.achievers {
            let active: Vec<usize> = (0..n)
                .filter(|t| a.coefficients[t * (q - 1)..(t + 1) * (q - 1)].iter().any(|&c| c != 0))
                .collect();
            assert_eq!(active.len(), 2, "{:?}", a.coefficients);
            let Some(CanonicalForm::DualLayer { i, k, j, m, c }) = &a.form else {
                panic!("{:?} not dual layer", a.coefficients)
            };
            assert_eq!(active, vec![i - 1, j - 1]);
            let expected = dual_layer_basis_coefficients(&g, *i, *k, *j, *m, c);
            let got: Vec<Rational> = a.coefficients.iter().map(|&x| rational(x)).collect();
            assert_eq!(got, expected);
        }
    }
}

#[test]
fn h33_achievers_cover_k_m_zero_family_only_on_unit_grid() {
    let report = verify_main_theorem(&p(3, 3), &"-1..1".parse().unwrap(), &SearchConfig::default()).unwrap();
    assert_eq!(report.observed_min, 12);
    // Coordinates of c([x_i=k] − [x_j=m]) scaled by q are ±(q·[v=k] − 1) per
    // block, which lie in {−1, 0, 1} only when k = m = 0: 3 pairs × 2 signs.
    assert_eq!(report.achievers.len(), 6);
    assert!(report.note.contains("grid"));
}

#[test]
fn every_sampled_grid_point_is_lambda1() {
    let g = p(2, 5);
    let cfg = SearchConfig {
        sample_checks: 300,
        seed: 42,
        ..SearchConfig::default()
    };
    let report = verify_main_theorem(&g, &"-2..2".parse().unwrap(), &cfg).unwrap();
    assert_eq!(report.sampled_grid_checks, 300);
    assert!(report.diagnostics.is_empty(), "{:?}", report.diagnostics);
    assert_eq!(report.observed_min, 8);
}
