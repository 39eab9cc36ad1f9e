macro_rules! example {
    ($module:ident, $file:literal, $test:ident) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(transform_pair, "transform_pair.rs", transform_pair_runs);
example!(operator_calculus, "operator_calculus.rs", operator_calculus_runs);
example!(division_transforms, "division_transforms.rs", division_transforms_runs);
example!(sequence_families, "sequence_families.rs", sequence_families_runs);
example!(identity_sweep, "identity_sweep.rs", identity_sweep_runs);
