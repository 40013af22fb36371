use std::sync::OnceLock;

use proptest::prelude::*;
use skewcodes::codec::{code_from_generator, enumerate_min_distance, min_distance, tau_shift, LinearCode};
use skewcodes::dna::{complement_vec, is_reversible, is_reversible_exhaustive, reverse_complement_poly};
use skewcodes::*;

fn field(q: u32) -> GaloisField {
    static CACHE: OnceLock<Vec<GaloisField>> = OnceLock::new();
    CACHE
        .get_or_init(|| [4, 9, 16, 25, 49].iter().map(|&q| GaloisField::with_order(q).unwrap()).collect())
        .iter()
        .find(|f| f.order() == q)
        .unwrap()
        .clone()
}

/// (q, frobenius exponent, log of alpha or None for zero)
const CONTEXTS: &[(u32, u32, Option<i64>)] =
    &[(4, 1, Some(1)), (9, 1, Some(2)), (16, 1, Some(3)), (16, 2, Some(1)), (25, 1, Some(1)), (49, 1, Some(2)), (49, 1, None)];

fn ring(ctx: usize) -> FieldOre {
    let (q, e, a) = CONTEXTS[ctx];
    let f = field(q);
    let alpha = a.map_or(Felt::ZERO, |k| f.primitive_power(k));
    OreRing::new(f.clone(), f.frobenius(e), alpha)
}

fn elems(q: u32, len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<u16>> {
    prop::collection::vec(0..q as u16, len)
}

fn to_poly(r: &FieldOre, codes: &[u16]) -> FieldPoly {
    r.poly(codes.iter().map(|&c| r.base().from_code(c as u32).unwrap()).collect())
}

// Independent expander: x^i (b x^j) = x^{i-1} (theta(b) x^{j+1} + delta(b) x^j),
// evaluated term by term on a dense vector.
fn oracle_mul(r: &FieldOre, f: &[Felt], g: &[Felt]) -> Vec<Felt> {
    let fl = r.base();
    let th = |a: Felt| fl.frobenius_apply(r.theta(), a);
    let de = |a: Felt| fl.mul(*r.alpha(), fl.sub(th(a), a));
    let mut out = vec![Felt::ZERO; f.len() + g.len()];
    for (i, &a) in f.iter().enumerate() {
        for (j, &b) in g.iter().enumerate() {
            // terms of x^i b x^j as (coefficient, exponent)
            let mut terms = vec![(b, j)];
            for _ in 0..i {
                let mut next = Vec::with_capacity(terms.len() * 2);
                for &(c, e) in &terms {
                    next.push((th(c), e + 1));
                    next.push((de(c), e));
                }
                terms = next;
            }
            for (c, e) in terms {
                out[e] = fl.add(out[e], fl.mul(a, c));
            }
        }
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(q in prop::sample::select(vec![4u32, 9, 16, 25, 49]), a in 0u16..49, b in 0u16..49, c in 0u16..49) {
        let f = field(q);
        let [a, b, c] = [a, b, c].map(|x| f.from_code(x as u32 % q).unwrap());
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        let th = f.frobenius(1);
        prop_assert_eq!(f.frobenius_apply(th, f.mul(a, b)), f.mul(f.frobenius_apply(th, a), f.frobenius_apply(th, b)));
        prop_assert_eq!(f.frobenius_apply(th, f.add(a, b)), f.add(f.frobenius_apply(th, a), f.frobenius_apply(th, b)));
        if !a.is_zero() {
            prop_assert_eq!(f.pow(a, (q - 1) as i64).unwrap(), Felt::ONE);
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Felt::ONE);
        }
    }

    #[test]
    fn leibniz_rule(ctx in 0..CONTEXTS.len(), a in 0u16..49, b in 0u16..49) {
        let r = ring(ctx);
        let f = r.base();
        let q = f.order() as u16;
        let [a, b] = [a, b].map(|x| f.from_code((x % q) as u32).unwrap());
        let lhs = r.delta(&f.mul(a, b));
        let rhs = f.add(f.mul(r.delta(&a), b), f.mul(r.sigma(&a), r.delta(&b)));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(r.delta(&f.add(a, b)), f.add(r.delta(&a), r.delta(&b)));
    }

    #[test]
    fn rl_leibniz_and_crt(q in prop::sample::select(vec![9u32, 16, 25, 49]), l in 2usize..4, seed in prop::collection::vec(0u16..49, 6)) {
        let f = field(q);
        prop_assume!((q as usize - 1).is_multiple_of(l - 1));
        let rl = RlRing::new(f.clone(), l).unwrap();
        let mk = |s: &[u16]| rl.element(s.iter().map(|&c| f.from_code(c as u32 % q).unwrap()).collect()).unwrap();
        let a = mk(&seed[..l]);
        let b = mk(&seed[3..3 + l]);
        let r = OreRing::new(rl.clone(), f.frobenius(1), rl.scalar(f.generator()));
        let lhs = r.delta(&rl.mul(&a, &b));
        let rhs = rl.add(&rl.mul(&r.delta(&a), &b), &rl.mul(&r.sigma(&a), &r.delta(&b)));
        prop_assert_eq!(lhs, rhs);
        let set = rl.idempotents().unwrap();
        let parts = rl.crt_decompose(&set, &a).unwrap();
        prop_assert_eq!(rl.crt_compose(&set, &parts).unwrap(), a.clone());
        // sigma is a ring automorphism of R_l
        let th = f.frobenius(1);
        prop_assert_eq!(rl.sigma(th, &rl.mul(&a, &b)), rl.mul(&rl.sigma(th, &a), &rl.sigma(th, &b)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn skew_ring_laws(ctx in 0..CONTEXTS.len(), a in elems(49, 0..6), b in elems(49, 0..6), c in elems(49, 0..6)) {
        let r = ring(ctx);
        let q = r.base().order() as u16;
        let m = |v: &Vec<u16>| to_poly(&r, &v.iter().map(|x| x % q).collect::<Vec<_>>());
        let (f, g, h) = (m(&a), m(&b), m(&c));
        prop_assert_eq!(r.mul(&r.mul(&f, &g), &h), r.mul(&f, &r.mul(&g, &h)));
        prop_assert_eq!(r.mul(&f, &r.add(&g, &h)), r.add(&r.mul(&f, &g), &r.mul(&f, &h)));
        prop_assert_eq!(r.mul(&r.add(&f, &g), &h), r.add(&r.mul(&f, &h), &r.mul(&g, &h)));
        let product = r.mul(&f, &g);
        let expected = oracle_mul(&r, f.coeffs(), g.coeffs());
        prop_assert_eq!(product.coeffs(), expected.as_slice());
    }

    #[test]
    fn division_identity(ctx in 0..CONTEXTS.len(), a in elems(49, 0..12), b in elems(49, 1..6)) {
        let r = ring(ctx);
        let q = r.base().order() as u16;
        let f = to_poly(&r, &a.iter().map(|x| x % q).collect::<Vec<_>>());
        let g = to_poly(&r, &b.iter().map(|x| x % q).collect::<Vec<_>>());
        prop_assume!(!g.is_zero());
        let (quo, rem) = r.right_divide(&f, &g).unwrap();
        prop_assert_eq!(r.add(&r.mul(&quo, &g), &rem), f);
        prop_assert!(rem.degree().is_none_or(|d| d < g.degree().unwrap()));
    }

    #[test]
    fn tau_is_multiplication_by_x(ctx in 0..CONTEXTS.len(), n in 1usize..10, a in elems(49, 10..11)) {
        let r = ring(ctx);
        let f = r.base();
        let c: Vec<Felt> = a[..n].iter().map(|&x| f.from_code(x as u32 % f.order()).unwrap()).collect();
        let poly = r.poly(c.clone());
        let via_ring = r.reduce_mod_xn_minus_one(&r.mul_x(&poly), n);
        prop_assert_eq!(tau_shift(&r, &c), via_ring);
    }

    #[test]
    fn rc_theorem_identity(deg in 0usize..=12, extra in 0usize..3, a in elems(4, 13..14)) {
        let f = field(4);
        let r = OreRing::new(f.clone(), f.frobenius(1), f.generator());
        let n = deg + extra;
        let poly = to_poly(&r, &a[..=deg]);
        let via_theorem = reverse_complement_poly(&r, &poly, n).unwrap();
        let mut dense = poly.coeffs().to_vec();
        dense.resize(n + 1, Felt::ZERO);
        dense.reverse();
        let direct = complement_vec(&f, &dense).unwrap();
        prop_assert_eq!(r.poly(direct), via_theorem.clone());
        prop_assert_eq!(r.reverse_poly(&r.reverse_poly(&poly, n).unwrap(), n).unwrap(), poly);
    }

    #[test]
    fn reverse_and_complement_commute(w in "[ACGT]{0,20}") {
        let word: dna::DnaWord = w.parse().unwrap();
        prop_assert_eq!(word.reverse().complement(), word.complement().reverse());
        prop_assert_eq!(word.complement().complement(), word.clone());
        let f = field(4);
        let v = dna::dna_to_f4(&f, &word).unwrap();
        prop_assert_eq!(dna::f4_to_dna(&f, &v).unwrap(), word);
    }
}

#[test]
fn idempotents_for_every_supported_ring() {
    let mut checked = 0;
    for q in [4u32, 9, 16, 25, 49] {
        let f = field(q);
        for l in 2..=q as usize {
            if !(q as usize - 1).is_multiple_of(l - 1) {
                assert!(RlRing::new(f.clone(), l).unwrap().idempotents().is_err());
                continue;
            }
            let rl = RlRing::new(f.clone(), l).unwrap();
            let set = rl.idempotents().unwrap();
            let gs = set.gammas();
            for i in 0..l {
                for j in 0..l {
                    let want = if i == j { gs[i].clone() } else { rl.zero() };
                    assert_eq!(rl.mul(&gs[i], &gs[j]), want, "q={q} l={l}");
                }
            }
            assert_eq!(gs.iter().fold(rl.zero(), |a, g| rl.add(&a, g)), rl.one());
            // evaluation at v = 0 and v = varsigma^{-j} is an independent view of the CRT
            let eval = |r: &RlElement, x: Felt| {
                r.coeffs().iter().rev().fold(Felt::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
            };
            let points: Vec<Felt> = std::iter::once(Felt::ZERO)
                .chain((0..l - 1).map(|j| f.pow(set.varsigma(), -(j as i64)).unwrap()))
                .collect();
            for (i, g) in gs.iter().enumerate() {
                for (k, &x) in points.iter().enumerate() {
                    assert_eq!(eval(g, x), if i == k { Felt::ONE } else { Felt::ZERO }, "q={q} l={l}");
                }
            }
            checked += 1;
        }
    }
    assert!(checked >= 15);
}

#[test]
fn delta_commutes_with_theta_exactly_when_alpha_fixed() {
    let f = field(4);
    let all: Vec<Felt> = f.elements().collect();
    for alpha in f.elements() {
        let r = OreRing::new(f.clone(), f.frobenius(1), alpha);
        let fixed = f.frobenius_apply(f.frobenius(1), alpha) == alpha;
        assert_eq!(r.delta_commutes_on(&all), fixed, "alpha={alpha:?}");
    }
    let f49 = field(49);
    let sample: Vec<Felt> = (0..48).step_by(5).map(|k| f49.primitive_power(k)).collect();
    for k in [0i64, 2, 8, 16] {
        let alpha = f49.primitive_power(k);
        let r = OreRing::new(f49.clone(), f49.frobenius(1), alpha);
        let fixed = f49.frobenius_apply(f49.frobenius(1), alpha) == alpha;
        assert_eq!(r.delta_commutes_on(&sample), fixed, "alpha=t^{k}");
    }
}

#[test]
fn binomial_lemma_for_fixed_alpha_over_f4() {
    let f = field(4);
    for alpha in [Felt::ZERO, Felt::ONE] {
        let r = OreRing::new(f.clone(), f.frobenius(1), alpha);
        for a in f.elements() {
            for n in 0..=8 {
                assert_eq!(r.x_pow_times(n, &a), r.binomial_x_pow_times(n, &a), "alpha={alpha:?} n={n}");
            }
        }
    }
}

#[test]
fn corollary_even_case_counterexample() {
    let f = field(4);
    let t = f.generator();
    let r = OreRing::new(f.clone(), f.frobenius(1), t);
    let lhs = r.x_pow_times(2, &t);
    assert_eq!(lhs, r.poly(vec![t, Felt::ONE, t]));
    assert_ne!(lhs, r.monomial(t, 2));
}

/// All codes built from monic right divisors with `q^k <= 2^16` for a few small
/// lengths; column search must agree with enumeration, and basis reversibility
/// with exhaustive reversibility.
#[test]
fn column_search_matches_enumeration() {
    let mut compared = 0;
    for &(q, alpha_log, lengths) in &[
        (4u32, None, &[4usize, 6, 8, 10, 12][..]),
        (4, Some(1), &[3, 6, 9][..]),
        (9, Some(2), &[4, 6][..]),
        (16, Some(1), &[5][..]),
    ] {
        let f = field(q);
        let alpha = alpha_log.map_or(Felt::ZERO, |k| f.primitive_power(k));
        let r = OreRing::new(f.clone(), f.frobenius(1), alpha);
        for &n in lengths {
            for d in 1..n {
                let k = n - d;
                if (q as u64).pow(k as u32) > 1 << 16 {
                    continue;
                }
                for g in r.right_divisors(n, d, 0).take(6) {
                    let code = code_from_generator(&r, &g, n).unwrap();
                    let search = min_distance(code.code(), None, u64::MAX).unwrap();
                    assert!(search.is_exact());
                    assert_eq!(Some(search.d), enumerate_min_distance(code.code()), "q={q} n={n} g={g:?}");
                    assert_eq!(
                        is_reversible(code.code()),
                        is_reversible_exhaustive(code.code(), 1 << 16).unwrap()
                    );
                    compared += 1;
                }
            }
        }
    }
    assert!(compared > 40, "only {compared} codes compared");
}

#[test]
fn random_spanning_codes_match_enumeration() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let f = field(4);
    for _ in 0..60 {
        let n = rng.gen_range(3..11);
        let k = rng.gen_range(1..=n.min(6));
        let rows: Vec<Vec<Felt>> =
            (0..k).map(|_| (0..n).map(|_| f.from_code(rng.gen_range(0..4)).unwrap()).collect()).collect();
        let code = LinearCode::from_spanning(f.clone(), n, &rows).unwrap();
        if code.k() == 0 {
            continue;
        }
        let search = min_distance(&code, None, u64::MAX).unwrap();
        assert_eq!(Some(search.d), enumerate_min_distance(&code));
    }
}
