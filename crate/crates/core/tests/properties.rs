use proptest::prelude::*;

use simplicial_hoffman::bounds::{hoffman_graph_bound, local_bound, main_hd_bound};
use simplicial_hoffman::chains::{boundary_matrix, coboundary_matrix, inner_product};
use simplicial_hoffman::generators::{random_pure, random_regular_graph};
use simplicial_hoffman::invariants::{chromatic_number, independence_number, OracleConfig};
use simplicial_hoffman::io::ComplexFile;
use simplicial_hoffman::spectra::{lambda_max, rayleigh_quotient, spectrum, OperatorKind};
use simplicial_hoffman::SimplicialComplex;

fn complex_strategy() -> impl Strategy<Value = SimplicialComplex> {
    (3usize..=7).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::btree_set(0..n, 1..=4), 1..8).prop_map(
            move |facets| {
                let facets: Vec<Vec<usize>> = facets
                    .into_iter()
                    .map(|s| s.into_iter().collect())
                    .collect();
                SimplicialComplex::from_facets(n, facets).unwrap()
            },
        )
    })
}

fn cochain(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3i32..=3, len).prop_map(|v| v.into_iter().map(f64::from).collect())
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-8 * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coboundary_squares_to_zero(x in complex_strategy()) {
        let d = x.dim().unwrap();
        for j in 0..d.saturating_sub(1) {
            let a = coboundary_matrix(&x, j).unwrap();
            let b = coboundary_matrix(&x, j + 1).unwrap();
            prop_assert!(b.product(&a).unwrap().iter().all(|&v| v == 0));
        }
    }

    #[test]
    fn boundary_is_adjoint((x, seed) in (complex_strategy(), any::<u64>())) {
        let d = x.dim().unwrap();
        let mut state = seed;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 7) as f64 - 3.0
        };
        for j in 0..d {
            let f: Vec<f64> = (0..x.face_count(j)).map(|_| next()).collect();
            let g: Vec<f64> = (0..x.face_count(j + 1)).map(|_| next()).collect();
            let df = coboundary_matrix(&x, j).unwrap().apply_f64(&f).unwrap();
            let bg = boundary_matrix(&x, j).unwrap().apply_f64(&g).unwrap();
            prop_assert!(close(inner_product(&df, &g).unwrap(), inner_product(&f, &bg).unwrap()));
        }
    }

    #[test]
    fn nonzero_spectra_pair_up(x in complex_strategy()) {
        let d = x.dim().unwrap();
        for j in 0..d {
            let up = spectrum(&x, j, OperatorKind::Upper).unwrap().nonzero();
            let down = spectrum(&x, j + 1, OperatorKind::Lower).unwrap().nonzero();
            prop_assert_eq!(up.len(), down.len());
            for (a, b) in up.iter().zip(&down) {
                prop_assert!(close(*a, *b));
            }
        }
    }

    #[test]
    fn upper_trace_is_degree_sum(x in complex_strategy()) {
        let d = x.dim().unwrap();
        for j in 0..d {
            let total: f64 = spectrum(&x, j, OperatorKind::Upper).unwrap().eigenvalues.iter().sum();
            let degrees: usize = x.degrees(j).iter().sum();
            prop_assert!(close(total, degrees as f64));
        }
    }

    #[test]
    fn rayleigh_quotient_is_at_most_lambda_max(
        (x, f) in complex_strategy()
            .prop_filter("needs an edge", |x| x.dim().unwrap() >= 1)
            .prop_flat_map(|x| { let len = x.face_count(0); (Just(x), cochain(len)) })
    ) {
        prop_assume!(f.iter().any(|&v| v != 0.0));
        let r = rayleigh_quotient(&x, 0, &f).unwrap();
        let lam = lambda_max(&x, 0).unwrap();
        prop_assert!(r <= lam + 1e-9 * lam.max(1.0));
        prop_assert!(r >= -1e-12);
    }

    #[test]
    fn upper_laplacian_kills_coboundaries(
        (x, g) in complex_strategy()
            .prop_filter("needs a triangle", |x| x.dim().unwrap() >= 2)
            .prop_flat_map(|x| { let len = x.face_count(0); (Just(x), cochain(len)) })
    ) {
        let dg = coboundary_matrix(&x, 0).unwrap().apply_f64(&g).unwrap();
        let delta1 = coboundary_matrix(&x, 1).unwrap();
        let image = delta1.transpose().apply_f64(&delta1.apply_f64(&dg).unwrap()).unwrap();
        prop_assert!(image.iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn independence_and_chromatic_are_monotone(x in complex_strategy()) {
        let d = x.dim().unwrap();
        let cfg = OracleConfig::default();
        for j in 1..d {
            let (i_lo, _) = independence_number(&x, j, &cfg).unwrap();
            let (i_hi, _) = independence_number(&x, j + 1, &cfg).unwrap();
            let (c_lo, _) = chromatic_number(&x, j, &cfg).unwrap();
            let (c_hi, _) = chromatic_number(&x, j + 1, &cfg).unwrap();
            prop_assert!(i_lo <= i_hi);
            prop_assert!(c_lo >= c_hi);
        }
    }

    #[test]
    fn random_pure_is_valid_and_pure(n in 3usize..=9, d in 1usize..=3, p in 0.05f64..1.0, seed: u64) {
        prop_assume!(d < n);
        let x = random_pure(n, d, p, seed).unwrap();
        prop_assert!(x.validate().is_ok());
        if let Some(dim) = x.dim() {
            prop_assert_eq!(dim, d);
            prop_assert!(x.regularity_profile().is_pure);
        }
        prop_assert_eq!(x, random_pure(n, d, p, seed).unwrap());
    }

    #[test]
    fn hoffman_bound_is_sound_on_random_regular_graphs(n in 4usize..=12, k in 2usize..=4, seed: u64) {
        prop_assume!(k < n && (n * k) % 2 == 0);
        let g = random_regular_graph(n, k, seed).unwrap();
        prop_assert!(g.degrees(0).iter().all(|&x| x == k));
        let b = hoffman_graph_bound(&g).unwrap();
        let m = main_hd_bound(&g).unwrap();
        prop_assert!(close(b.i_upper, m.i_upper));
        let cfg = OracleConfig::default();
        let (i, _) = independence_number(&g, 1, &cfg).unwrap();
        let (chi, _) = chromatic_number(&g, 1, &cfg).unwrap();
        prop_assert!(i as f64 <= b.i_upper + 1e-9);
        prop_assert!(chi as f64 >= b.chi_lower.value().unwrap() - 1e-9);
    }

    #[test]
    fn local_bound_is_sound_on_random_pure_complexes(n in 4usize..=9, p in 0.2f64..0.9, seed: u64) {
        let x = random_pure(n, 2, p, seed).unwrap();
        prop_assume!(x.dim() == Some(2));
        let b = local_bound(&x).unwrap();
        let (i, _) = independence_number(&x, 2, &OracleConfig::default()).unwrap();
        prop_assert!(i as f64 <= b.i_upper + 1e-9, "i_2 = {} > {}", i, b.i_upper);
    }

    #[test]
    fn complex_files_round_trip(x in complex_strategy()) {
        let text = ComplexFile::from_complex(&x).to_text();
        prop_assert_eq!(ComplexFile::parse(&text).unwrap().complex, x);
    }

    #[test]
    fn relabelling_preserves_shape(x in complex_strategy(), salt in "[a-z]{1,3}") {
        let text: String = x
            .maximal_faces()
            .iter()
            .map(|f| f.vertices().iter().map(|v| format!("{salt}{}", 9 - v)).collect::<Vec<_>>().join(" ") + "\n")
            .collect();
        let parsed = ComplexFile::parse(&text).unwrap();
        prop_assert_eq!(parsed.complex.f_vector(), x.f_vector());
        for label in &parsed.labels {
            prop_assert!(label.starts_with(&salt));
        }
    }
}
