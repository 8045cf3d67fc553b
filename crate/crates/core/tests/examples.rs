macro_rules! example {
    ($name:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $name() {
            $name::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(field_tables, "field_tables.rs");
example!(exact_cyclotomic, "exact_cyclotomic.rs");
example!(jacobi_sums, "jacobi_sums.rs");
example!(hypergeometric, "hypergeometric.rs");
example!(appell_f1, "appell_f1.rs");
example!(generating_function, "generating_function.rs");
example!(identity_sweeps, "identity_sweeps.rs");
example!(table_cache, "table_cache.rs");
