mod common;

const CASES: u32 = 1000;

macro_rules! law_tests {
    ($($name:ident),* $(,)?) => {
        $(
            #[test]
            fn $name() {
                if let Err(e) = common::$name(CASES) {
                    panic!("{e}");
                }
            }
        )*
    };
}

law_tests!(
    division_round_trip,
    harmonic_symbol_on_radial_power,
    harmonic_symbol_kills_low_radial_powers,
    iterated_laplacian_of_radial_power,
    decomposition_round_trip,
    decomposition_uniqueness,
    gamma_ratio_is_rational,
    gamma_recurrence,
    pi_scalar_canonical_form,
);
