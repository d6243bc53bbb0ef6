//! Property-based tests for the algebraic kernels.

use flagchow::forms::Form;
use flagchow::poly::{divided_difference, Poly};
use flagchow::rat;
use proptest::prelude::*;

fn arb_poly(nvars: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(
        (prop::collection::vec(0u16..4, nvars), -5i64..=5),
        0..6,
    )
    .prop_map(move |terms| {
        let mut f = Poly::zero(nvars);
        for (exps, c) in terms {
            f = f.add(&Poly::monomial(exps, rat(c)));
        }
        f
    })
}

proptest! {
    /// ∂_i f · (X_i - X_{i+1}) = f - s_i f: the divided difference divides exactly.
    #[test]
    fn divided_difference_exact_division(f in arb_poly(4), i in 1usize..4) {
        let lhs = divided_difference(i, &f).mul(&Poly::var(i, 4).sub(&Poly::var(i + 1, 4)));
        prop_assert_eq!(lhs, f.sub(&f.swap_vars(i)));
    }

    /// ∂_i ∂_i = 0 and the braid relation ∂_i∂_{i+1}∂_i = ∂_{i+1}∂_i∂_{i+1}.
    #[test]
    fn divided_difference_relations(f in arb_poly(4), i in 1usize..3) {
        prop_assert!(divided_difference(i, &divided_difference(i, &f)).is_zero());
        let a = divided_difference(i, &divided_difference(i + 1, &divided_difference(i, &f)));
        let b = divided_difference(i + 1, &divided_difference(i, &divided_difference(i + 1, &f)));
        prop_assert_eq!(a, b);
    }
}

fn arb_word(n: u32) -> impl Strategy<Value = Form> {
    let mut gens = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            gens.push((i, j, true));
            gens.push((i, j, false));
        }
    }
    prop::collection::vec(prop::sample::select(gens), 0..4).prop_map(move |letters| {
        let mut f = Form::one(n);
        for (i, j, a) in letters {
            let g = if a {
                Form::gen_a(i, j, n).unwrap()
            } else {
                Form::gen_b(i, j, n).unwrap()
            };
            f = f.wedge(&g).unwrap();
        }
        f
    })
}

proptest! {
    /// Koszul supercommutativity: f∧g = (-1)^{|f||g|} g∧f on generator words.
    #[test]
    fn wedge_supercommutes(f in arb_word(4), g in arb_word(4)) {
        let fg = f.wedge(&g).unwrap();
        let gf = g.wedge(&f).unwrap();
        let df = f.homogeneous_bidegree().map_or(0, |d| d.0 + d.1);
        let dg = g.homogeneous_bidegree().map_or(0, |d| d.0 + d.1);
        let expect = if (df * dg) % 2 == 1 { gf.neg() } else { gf };
        prop_assert_eq!(fg, expect);
    }

    /// Bidegrees add under the wedge whenever the product survives.
    #[test]
    fn wedge_bidegree_additive(f in arb_word(5), g in arb_word(5)) {
        let fg = f.wedge(&g).unwrap();
        if !fg.is_zero() {
            if let (Some(a), Some(b), Some(c)) = (
                f.homogeneous_bidegree(),
                g.homogeneous_bidegree(),
                fg.homogeneous_bidegree(),
            ) {
                prop_assert_eq!(c, (a.0 + b.0, a.1 + b.1));
            }
        }
    }
}
