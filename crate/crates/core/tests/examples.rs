macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }

        #[test]
        fn $name() {
            $name::run_example().expect("example runs");
        }
    };
}

example!(capacities);
example!(choquet_integrals);
example!(sugeno_integrals);
example!(axiom_audit);
example!(separation_form);
example!(max_min_normal_form);
example!(fit_choquet);
example!(quasi_sugeno_factorization);
example!(random_capacities);
