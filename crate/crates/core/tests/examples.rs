macro_rules! example {
    ($name:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $name() {
            $name::run_example().expect("example runs");
        }
    };
}

example!(concentric_spectrum, "concentric_spectrum.rs");
example!(rayleigh_bound, "rayleigh_bound.rs");
example!(planar_eigensolver, "planar_eigensolver.rs");
example!(dirichlet_steklov, "dirichlet_steklov.rs");
example!(optimal_ratio, "optimal_ratio.rs");
example!(wallis_series, "wallis_series.rs");
example!(verify_suite, "verify_suite.rs");
