//! Property tests for the serialization contract and the canonical
//! subspace form, driven by randomly generated two-step nilpotent
//! algebras (any antisymmetric bracket into a central tail satisfies the
//! Jacobi identity, so the whole sample space is valid input).

use num_bigint::BigInt;
use proptest::prelude::*;

use centroidkit::format::{algebra_from_json, algebra_to_json};
use centroidkit::lie::SCAlgebra;
use centroidkit::linalg::Subspace;
use centroidkit::rational::Rat;

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=9).prop_map(|(n, d)| Rat::new(BigInt::from(n), BigInt::from(d)))
}

fn arb_two_step(body: usize, tail: usize) -> impl Strategy<Value = SCAlgebra> {
    let pairs: Vec<(usize, usize)> = (0..body)
        .flat_map(|i| ((i + 1)..body).map(move |j| (i, j)))
        .collect();
    let npairs = pairs.len();
    proptest::collection::vec(proptest::collection::vec(arb_rat(), tail), npairs).prop_map(
        move |coeffs| {
            let mut entries = Vec::new();
            for ((i, j), v) in pairs.iter().zip(coeffs) {
                let terms: Vec<(usize, Rat)> = v
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| *c != Rat::default())
                    .map(|(t, c)| (body + t, c))
                    .collect();
                if !terms.is_empty() {
                    entries.push((*i, *j, terms));
                }
            }
            SCAlgebra::new("two-step", body + tail, entries).expect("central tail is always Lie")
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn algebra_json_round_trip_is_identity(
        a in (2usize..=4, 1usize..=2).prop_flat_map(|(b, t)| arb_two_step(b, t))
    ) {
        let json = algebra_to_json(&a);
        let back = algebra_from_json(&json).expect("own output parses");
        prop_assert_eq!(algebra_to_json(&back), json);
        prop_assert_eq!(back.dim, a.dim);
        for i in 0..a.dim {
            for j in 0..a.dim {
                prop_assert_eq!(a.bracket_basis_dense(i, j), back.bracket_basis_dense(i, j));
            }
        }
    }

    #[test]
    fn subspace_canonical_form_ignores_presentation(
        rows in proptest::collection::vec(proptest::collection::vec(arb_rat(), 5), 1..4),
        scales in proptest::collection::vec((1i64..=7, 1i64..=7), 4),
        rev in any::<bool>(),
    ) {
        let s = Subspace::from_vectors(5, rows.clone());
        // Scale every generator and optionally reverse their order: the
        // canonical form must not move.
        let mut mangled: Vec<Vec<Rat>> = rows
            .iter()
            .zip(scales.iter().cycle())
            .map(|(r, (n, d))| {
                let c = Rat::new(BigInt::from(*n), BigInt::from(*d));
                r.iter().map(|x| x * &c).collect()
            })
            .collect();
        if rev {
            mangled.reverse();
        }
        let t = Subspace::from_vectors(5, mangled);
        prop_assert_eq!(s, t);
    }
}
