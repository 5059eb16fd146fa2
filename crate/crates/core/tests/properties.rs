mod common;

use common::{atoms_of, random_case, random_fn, Ext};
use lebesgue::lintp::{convergence_certificate, lint_p};
use lebesgue::sigma::{generate_sigma, product_generator, sigma_equal_generated, FiniteSpace, SubsetMask};
use lebesgue::specfile::parse_spec;
use lebesgue::suite::{case_rng, random_spec};
use lebesgue::{Rational, XReal};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn integral_monotone(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let case = random_case(&mut r, 6);
        let lib = case.lib();
        let f = random_fn(&mut r, &case, true);
        let bump = random_fn(&mut r, &case, true);
        let g: Vec<Ext> = f.iter().zip(&bump).map(|(a, b)| a.plus(b)).collect();
        let (int_f, int_g) = (lint_p(&lib.measure, &lib.func(&f)).unwrap(), lint_p(&lib.measure, &lib.func(&g)).unwrap());
        prop_assert!(int_f <= int_g);
        prop_assert_eq!(int_g, case.integral(&g).to_x());
    }

    #[test]
    fn certificate_gap_bound(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let mut case = random_case(&mut r, 5);
        for w in case.weights.iter_mut() {
            if *w == Ext::Inf {
                *w = Ext::int(1);
            }
        }
        let lib = case.lib();
        let f = random_fn(&mut r, &case, false);
        let rows = convergence_certificate(&lib.measure, &lib.func(&f), 12).unwrap();
        let total = match case.measure(case.full()) {
            Ext::Fin(q) => q,
            Ext::Inf => unreachable!(),
        };
        for w in rows.windows(2) {
            prop_assert!(w[0].integral <= w[1].integral);
        }
        for row in &rows {
            let below: u32 = (0..case.n)
                .filter(|&x| matches!(&f[x], Ext::Fin(v) if v < &Rational::from_integer(BigInt::from(row.n))))
                .fold(0, |acc, x| acc | 1 << x);
            let above = case.full() & !below;
            // points at or above n contribute their whole excess to the gap
            let excess = common::sum((0..case.n).filter(|x| above >> x & 1 == 1).map(|x| match &f[x] {
                Ext::Fin(v) => Ext::Fin(v - Rational::from_integer(BigInt::from(row.n))).times(&case.weights[case.atom_index(x)]),
                Ext::Inf => Ext::Inf,
            }));
            let Ext::Fin(excess) = excess else { unreachable!() };
            let bound = &total / Rational::from_integer(BigInt::from(1) << row.n) + excess;
            prop_assert!(row.gap <= XReal::Finite(bound.clone()), "gap {} above {}", row.gap, bound);
        }
    }

    #[test]
    fn generated_equality_is_atom_equality(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let n = r.gen_range(1..=6);
        let space = FiniteSpace::of_size(n).unwrap();
        let g1: Vec<u32> = (0..r.gen_range(0..4)).map(|_| r.gen::<u32>() & ((1 << n) - 1)).collect();
        let mut g2 = g1.clone();
        if r.gen_bool(0.5) {
            g2.push(r.gen::<u32>() & ((1 << n) - 1));
        }
        if r.gen_bool(0.5) {
            g2 = g2.iter().map(|g| !g & ((1 << n) - 1)).collect();
        }
        let masks = |gs: &[u32]| gs.iter().map(|&g| SubsetMask::from_word(&space, u64::from(g))).collect::<Vec<_>>();
        let sa1 = generate_sigma(&space, &masks(&g1)).unwrap();
        let sa2 = generate_sigma(&space, &masks(&g2)).unwrap();
        let mut a1 = atoms_of(n, &g1);
        let mut a2 = atoms_of(n, &g2);
        a1.sort();
        a2.sort();
        prop_assert_eq!(sigma_equal_generated(&sa1, &sa2).unwrap(), a1 == a2);
        prop_assert_eq!(sigma_equal_generated(&sa2, &sa1).unwrap(), a1 == a2);
    }

    #[test]
    fn product_atoms_are_atom_products(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let (ne, nf) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let ge: Vec<u32> = (0..r.gen_range(0..3)).map(|_| r.gen::<u32>() & ((1 << ne) - 1)).collect();
        let gf: Vec<u32> = (0..r.gen_range(0..3)).map(|_| r.gen::<u32>() & ((1 << nf) - 1)).collect();
        let (se, sf) = (FiniteSpace::of_size(ne).unwrap(), FiniteSpace::of_size(nf).unwrap());
        let me: Vec<SubsetMask> = ge.iter().map(|&g| SubsetMask::from_word(&se, u64::from(g))).collect();
        let mf: Vec<SubsetMask> = gf.iter().map(|&g| SubsetMask::from_word(&sf, u64::from(g))).collect();
        let (product, gens) = product_generator(&se, &me, &sf, &mf).unwrap();
        let sa = generate_sigma(&product, &gens).unwrap();
        let mut expected: Vec<u32> = Vec::new();
        for ae in atoms_of(ne, &ge) {
            for af in atoms_of(nf, &gf) {
                let cell = (0..ne * nf)
                    .filter(|k| ae >> (k / nf) & 1 == 1 && af >> (k % nf) & 1 == 1)
                    .fold(0u32, |acc, k| acc | 1 << k);
                expected.push(cell);
            }
        }
        let mut got: Vec<u32> = sa.atoms().iter().map(|a| a.indices().fold(0u32, |acc, k| acc | 1 << k)).collect();
        expected.sort();
        got.sort();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn printed_specs_load_back(seed in any::<u64>(), index in 0usize..1000, size in 1usize..8) {
        let spec = random_spec(&mut case_rng(seed, index), size);
        let text = spec.to_string();
        prop_assert_eq!(parse_spec(&text).unwrap(), spec);
    }
}

#[test]
fn comments_and_blank_lines_are_ignored() {
    let plain = parse_spec("universe a b\ngenerator a\nmeasure weights a=1 b=inf\nfunction f a=1/2 b=0\n").unwrap();
    let noisy = parse_spec(
        "# header\n\n  universe   a b  # points\n\t\ngenerator   a\nmeasure weights b=inf a=2/2\n# done\nfunction f b=0 a=2/4 #\n",
    )
    .unwrap();
    assert_eq!(plain, noisy);
}
