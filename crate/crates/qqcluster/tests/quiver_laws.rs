mod common;

use proptest::prelude::*;

use common::{case, greens_commute, involutive, shift_down};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn mutation_is_involutive(c in case()) {
        involutive(&c)?;
    }

    #[test]
    fn green_mutations_commute(c in case()) {
        greens_commute(&c)?;
    }

    #[test]
    fn green_mutations_shift_down(c in case()) {
        shift_down(&c)?;
    }
}
