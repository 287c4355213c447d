use proptest::prelude::*;

use superspectral::clifford::{lower, raise};
use superspectral::distance::{Distance, PointMetric};
use superspectral::grassmann::{GrassmannElement, Parity, DEFAULT_GENERATORS};
use superspectral::variational::{divergence, is_total_derivative};
use superspectral::{Cq, Expr, Field};

const N: usize = DEFAULT_GENERATORS;

fn element() -> impl Strategy<Value = GrassmannElement> {
    prop::collection::vec((any::<u8>(), -3i64..=3, -3i64..=3), 0..6).prop_map(|terms| {
        terms.into_iter().fold(GrassmannElement::zero(N), |acc, (mask, re, im)| {
            let word: Vec<u32> = (0..N as u32).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect();
            &acc + &GrassmannElement::monomial(N, &word, Cq::gaussian(re, im)).unwrap()
        })
    })
}

fn gaussian() -> impl Strategy<Value = Cq> {
    (-5i64..=5, -5i64..=5, 1i64..=4).prop_map(|(re, im, d)| &Cq::gaussian(re, im) * &Cq::from_ratio(1, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn star_reverses_products(g in element(), h in element()) {
        prop_assert_eq!((&g * &h).star(), &h.star() * &g.star());
        prop_assert_eq!(g.star().star(), g);
    }

    #[test]
    fn product_is_associative_and_distributive(g in element(), h in element(), k in element()) {
        prop_assert_eq!(&(&g * &h) * &k, &g * &(&h * &k));
        prop_assert_eq!(&g * &(&h + &k), &(&g * &h) + &(&g * &k));
        prop_assert_eq!(&(&g + &h) * &k, &(&g * &k) + &(&h * &k));
    }

    #[test]
    fn parity_is_graded(g in element(), h in element()) {
        let (ge, go, he, ho) = (g.even_part(), g.odd_part(), h.even_part(), h.odd_part());
        prop_assert_eq!(&ge + &go, g.clone());
        prop_assert_eq!((&ge * &he).parity(), Some(Parity::Even));
        prop_assert_eq!((&go * &ho).parity(), Some(Parity::Even));
        let mixed = &ge * &ho;
        prop_assert!(mixed.is_zero() || mixed.parity() == Some(Parity::Odd));
        // odd elements anticommute, even ones are central
        prop_assert_eq!(&go * &ho, (&ho * &go).scale(&Cq::from_int(-1)));
        prop_assert_eq!(&ge * &h, &h * &ge);
    }

    #[test]
    fn soul_is_nilpotent(g in element()) {
        prop_assert!(g.soul().pow(N as u32 + 1).is_zero());
    }

    #[test]
    fn exponential_of_real_even_soul_is_unitary(g in element()) {
        let e = g.soul().even_part();
        let real = (&e + &e.star()).scale(&Cq::from_ratio(1, 2));
        let u = real.scale(&Cq::i()).gr_exp().unwrap();
        let w = u.is_unitary();
        prop_assert!(w.unitary);
        prop_assert_eq!(w.log, Some(real));
    }

    #[test]
    fn complex_rationals_form_a_field(a in gaussian(), b in gaussian(), c in gaussian()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Cq::one());
        }
    }
}

fn small_expr() -> impl Strategy<Value = Expr> {
    let atoms = ["a", "b", "c"];
    prop::collection::vec((0usize..3, 0u8..3, 0usize..3, 0u8..3, -3i64..=3), 1..4).prop_map(move |terms| {
        terms.into_iter().fold(Expr::zero(), |acc, (f1, d1, f2, d2, c)| {
            let x = Field::even(atoms[f1], &[]).d(d1 as usize);
            let y = Field::odd(atoms[f2], &[1]).expr().deriv(d2 as usize);
            &acc + &(&x * &y).scale_int(c)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn divergences_are_certified(v0 in small_expr(), v1 in small_expr(), v2 in small_expr()) {
        let v = [v0, v1, v2];
        let l = divergence(&v);
        let cert = is_total_derivative(&l);
        prop_assert!(cert.is_divergence);
        prop_assert_eq!(divergence(&cert.witness.unwrap()), l);
    }

    #[test]
    fn expression_star_is_an_involution(x in small_expr(), y in small_expr()) {
        prop_assert_eq!(x.star().star(), x.clone());
        prop_assert_eq!((&x * &y).star(), &y.star() * &x.star());
    }

    #[test]
    fn index_raising_inverts_lowering(x in small_expr(), y in small_expr()) {
        let v = [x, y];
        prop_assert_eq!(raise(&lower(&v)), v.clone());
        prop_assert_eq!(lower(&raise(&v)), v);
    }

    #[test]
    fn distances_form_a_metric(seed in any::<u64>(), n in 2usize..=5, c in 0.1f64..10.0) {
        use rand::SeedableRng;
        let m = PointMetric::random(n, 0.7, &mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let d = m.distance_matrix().unwrap();
        let scaled = m.scaled(c).distance_matrix().unwrap();
        for i in 0..n {
            prop_assert_eq!(d[i][i], Distance::Finite(0.0));
            for j in 0..n {
                prop_assert!(d[i][j].close_to(d[j][i], 1e-9));
                prop_assert!(d[i][j].close_to(m.distance_by_paths(i, j), 1e-6));
                if let Some(x) = d[i][j].finite() {
                    prop_assert!(scaled[i][j].close_to(Distance::Finite(x / c), 1e-9));
                }
                for k in 0..n {
                    if let (Some(a), Some(b), Some(x)) = (d[i][k].finite(), d[k][j].finite(), d[i][j].finite()) {
                        prop_assert!(x <= a + b + 1e-9);
                    }
                }
            }
        }
    }
}
