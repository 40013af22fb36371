//! Acceptance criteria, one line each. Criterion 6 cannot hold as stated: no
//! derivation multiplier in {1, t, t^2} makes the listed generators right
//! divisors. It runs faithfully, prints FAIL and counts as expected.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skewcodes::codec::{classify, code_from_generator, enumerate_min_distance, min_distance, tau_shift, Classification};
use skewcodes::dna::{
    complement_vec, emit_dna_table, is_complement_closed, is_rc_closed_exhaustive, is_reversible,
    is_reversible_exhaustive, reverse_complement_poly,
};
use skewcodes::notation::{format_expression, parse_canonical, parse_expression};
use skewcodes::*;
use skewcodes_cli::config::Config;
use skewcodes_cli::fixture::{FixtureFile, Row};
use skewcodes_cli::verify::{verify_row, verify_rows, Status};

const EXPECTED_FAILURES: &[u32] = &[6];

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn fixtures(name: &str) -> Vec<Row> {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    FixtureFile::load(&p).unwrap().rows
}

fn field(q: u32) -> GaloisField {
    GaloisField::with_order(q).unwrap()
}

fn ring(q: u32, alpha_log: Option<i64>) -> FieldOre {
    let f = field(q);
    let alpha = alpha_log.map_or(Felt::ZERO, |k| f.primitive_power(k));
    OreRing::new(f.clone(), f.frobenius(1), alpha)
}

fn c1() -> Outcome {
    let r = ring(49, Some(2));
    let g = r.poly(parse_canonical(r.base(), "t^20,t^19,1").unwrap());
    let (_, rem) = r.right_divide(&r.x_n_minus_one(21), &g).unwrap();
    let code = code_from_generator(&r, &g, 21).unwrap();
    let d = min_distance(code.code(), None, u64::MAX).unwrap();
    let class = classify(21, code.k(), &d).unwrap();
    let pass = rem.is_zero() && code.k() == 19 && d.is_exact() && d.d == 3 && class == Classification::Mds;
    ok(pass, format!("remainder zero={}, [21,{},{}] {}", rem.is_zero(), code.k(), d.d, class.label()))
}

fn c2() -> Outcome {
    let rows = fixtures("table1.toml");
    let reps = verify_rows(&Config::default(), &rows);
    let structural = reps.iter().all(|r| {
        r.status != Status::Fail && r.representative().is_some_and(|a| a.all_divide() && a.k == Some(r.expected.k))
    });
    let pass_count = reps.iter().filter(|r| r.status == Status::Pass).count();
    let flagged: Vec<&str> = reps.iter().filter(|r| r.status == Status::Flagged).map(|r| r.id.as_str()).collect();
    ok(
        reps.len() == 8 && structural,
        format!("{} rows, {pass_count} exact, flagged {:?}", reps.len(), flagged),
    )
}

fn c3() -> Outcome {
    let pairs: [(u32, usize, &str, &str); 5] = [
        (16, 12, "x^8 + t^13x^7 + t^2x^6 + t^7x^5 + t^2x^4 + t^14x^3 + t^5x^2 + t^6x + t^11", "x^4 + t^13x^3 + t^7x^2 + t"),
        (16, 12, "x^9 + t^5x^8 + t^3x^7 + t^10x^5 + t^14x^4 + x^2 + x + 1", "x^3 + t^10x^2 + t^11x + t^14"),
        (
            25,
            15,
            "x^12 + t^19x^11 + 4x^10 + t^13x^9 + t^23x^8 + t^8x^7 + t^10x^6 + t^7x^5 + t^11x^4 + t^10x^3 + t^14x^2 + t^2x + t^5",
            "x^3 + t^7x^2 + t^22x + t^9",
        ),
        (
            25,
            15,
            "x^14 + t^23x^13 + t^20x^12 + 4x^11 + t^21x^10 + t^9x^9 + tx^8 + t^15x^7 + t^20x^6 + t^22x^5 + t^17x^4 + t^13x^3 + 4x^2 + t^15x + t^5",
            "x + t^11",
        ),
        (25, 15, "x^14 + x^13 + x^12 + x^11 + x^10 + x^9 + x^8 + x^7 + x^6 + x^5 + x^4 + x^3 + x^2 + x + 1", "x + 4"),
    ];
    let mut good = 0;
    for (q, n, h, g) in pairs {
        let r = ring(q, Some(1));
        let h = r.poly(parse_expression(r.base(), h).unwrap());
        let g = r.poly(parse_expression(r.base(), g).unwrap());
        if r.mul(&h, &g) == r.x_n_minus_one(n) {
            good += 1;
        }
    }
    ok(good == 5, format!("{good}/5 products equal x^n - 1 (F_16: t^4+t+1, F_25: t^2+4t+2)"))
}

fn c4() -> Outcome {
    let text = "x^13 + tx^12 + x^11 + t^2x^10 + tx^8 + x^7 + x^6 + tx^5 + t^2x^3 + x^2 + tx + 1";
    let under_t = ring(4, Some(1));
    let divides_t = under_t.is_right_divisor(&under_t.poly(parse_expression(under_t.base(), text).unwrap()), 30);
    let r = ring(4, None);
    let g = r.poly(parse_expression(r.base(), text).unwrap());
    let code = code_from_generator(&r, &g, 30).unwrap();
    let d = min_distance(code.code(), None, u64::MAX).unwrap();
    let w = d.witness.as_ref().map(|c| c.iter().filter(|x| !x.is_zero()).count());
    let witness_ok = d.witness.as_ref().is_some_and(|c| code.code().contains(c)) && w == Some(8);
    ok(
        code.k() == 17 && d.is_exact() && d.d == 8 && witness_ok,
        format!(
            "[30,{},{}] exact={}, weight-8 codeword found, {} search nodes; generator divides under alpha=t: {divides_t}, code built with delta=0",
            code.k(),
            d.d,
            d.is_exact(),
            d.nodes
        ),
    )
}

fn c5() -> Outcome {
    let rows = fixtures("table5.toml");
    let rep = verify_row(&Config::default(), &rows[0]);
    let a = rep.chosen_attempt();
    let dna = a.and_then(|a| a.dna.as_ref());
    let r = ring(4, None);
    let g = r.poly(parse_expression(r.base(), &rows[0].generators[0]).unwrap());
    let code = code_from_generator(&r, &g, 12).unwrap().into_code();
    let table = emit_dna_table(&code, 64).unwrap();
    let exhaustive_rev = is_reversible_exhaustive(&code, 64).unwrap();
    let comp_exhaustive = code.codewords().all(|c| code.contains(&complement_vec(code.field(), &c).unwrap()));
    let rc = is_rc_closed_exhaustive(&code, 64).unwrap();
    let pass = rep.status == Status::Pass
        && table.words.len() == 64
        && dna.is_some_and(|d| d.malformed == ["GCCGTTGCCGT"] && d.not_in_code.is_empty())
        && exhaustive_rev
        && comp_exhaustive
        && is_reversible(&code)
        && is_complement_closed(&code).unwrap();
    ok(
        pass,
        format!(
            "64 words, set equal to the table except malformed {:?} (computed {:?}); reversible={exhaustive_rev}, complement-closed={comp_exhaustive}, rc-closed={rc}, alpha={}",
            dna.map(|d| d.malformed.clone()).unwrap_or_default(),
            dna.map(|d| d.missing_from_table.clone()).unwrap_or_default(),
            a.map(|a| a.alpha.as_str()).unwrap_or("-"),
        ),
    )
}

fn c6() -> Outcome {
    let rows = fixtures("table4.toml");
    let wanted = ["table4.row1", "table4.row3", "table4.row7"];
    let cfg = Config::default();
    let mut faithful = Vec::new();
    let mut with_zero = Vec::new();
    for id in wanted {
        let mut row = rows.iter().find(|r| r.id == id).unwrap().clone();
        row.alpha = vec!["1".into(), "t".into(), "t^2".into()];
        let rep = verify_row(&cfg, &row);
        let divides = rep.attempts.iter().any(|a| a.all_divide());
        faithful.push((id, rep.status, divides));
        row.alpha = vec!["0".into()];
        with_zero.push(verify_row(&cfg, &row).status);
    }
    let pass = faithful.iter().all(|(_, s, _)| *s == Status::Pass);
    let summary: Vec<String> = faithful
        .iter()
        .zip(&with_zero)
        .map(|((id, s, d), z)| format!("{id}: {} (divides={d}), alpha=0: {}", s.as_str(), z.as_str()))
        .collect();
    ok(pass, summary.join("; "))
}

fn c7() -> Outcome {
    let rows = fixtures("table2.toml");
    let cfg = Config::default();
    let mut parts = Vec::new();
    let mut pass = true;
    for id in ["table2.row7", "table2.row8"] {
        let rep = verify_row(&cfg, rows.iter().find(|r| r.id == id).unwrap());
        let a = rep.representative().unwrap();
        pass &= rep.status == Status::Pass;
        let ds: Vec<String> = rep.attempts.iter().filter_map(|a| a.d.map(|d| d.to_string())).collect();
        parts.push(format!(
            "{id}: {} [{},{},{}] N={} (d over tried N: {})",
            rep.status.as_str(),
            a.n.unwrap_or(0),
            a.k.unwrap_or(0),
            a.d.unwrap_or(0),
            a.gray.as_deref().unwrap_or("-"),
            ds.join(",")
        ));
    }
    ok(pass, parts.join("; "))
}

const CONTEXTS: &[(u32, u32, Option<i64>)] =
    &[(4, 1, Some(1)), (9, 1, Some(2)), (16, 1, Some(3)), (16, 2, Some(1)), (25, 1, Some(1)), (49, 1, Some(2)), (49, 1, None)];

fn ctx_ring(&(q, e, a): &(u32, u32, Option<i64>)) -> FieldOre {
    let f = field(q);
    let alpha = a.map_or(Felt::ZERO, |k| f.primitive_power(k));
    OreRing::new(f.clone(), f.frobenius(e), alpha)
}

fn random_poly(rng: &mut ChaCha8Rng, r: &FieldOre, len: usize) -> FieldPoly {
    let q = r.base().order();
    r.poly((0..len).map(|_| r.base().from_code(rng.gen_range(0..q)).unwrap()).collect())
}

fn c8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut failures = Vec::new();
    let mut check = |name: &str, good: bool| {
        if !good && !failures.contains(&name.to_string()) {
            failures.push(name.to_string());
        }
    };
    for ctx in CONTEXTS {
        let r = ctx_ring(ctx);
        let f = r.base().clone();
        for _ in 0..500 {
            let (a, b, c) = (random_poly(&mut rng, &r, 6), random_poly(&mut rng, &r, 6), random_poly(&mut rng, &r, 6));
            check("associativity", r.mul(&r.mul(&a, &b), &c) == r.mul(&a, &r.mul(&b, &c)));
            check("distributivity", r.mul(&a, &r.add(&b, &c)) == r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
            check("distributivity", r.mul(&r.add(&a, &b), &c) == r.add(&r.mul(&a, &c), &r.mul(&b, &c)));

            let num = random_poly(&mut rng, &r, 12);
            let den_len = rng.gen_range(1..6);
            let den = random_poly(&mut rng, &r, den_len);
            if !den.is_zero() {
                let (quo, rem) = r.right_divide(&num, &den).unwrap();
                check("division identity", r.add(&r.mul(&quo, &den), &rem) == num);
                check("division degree", rem.degree().is_none_or(|d| d < den.degree().unwrap()));
            }

            let n = rng.gen_range(1..10);
            let v: Vec<Felt> = (0..n).map(|_| f.from_code(rng.gen_range(0..f.order())).unwrap()).collect();
            check("tau shift", tau_shift(&r, &v) == r.reduce_mod_xn_minus_one(&r.mul_x(&r.poly(v.clone())), n));
        }
        for _ in 0..1000 {
            let a = f.from_code(rng.gen_range(0..f.order())).unwrap();
            let b = f.from_code(rng.gen_range(0..f.order())).unwrap();
            check("leibniz", r.delta(&f.mul(a, b)) == f.add(f.mul(r.delta(&a), b), f.mul(r.sigma(&a), r.delta(&b))));
        }
    }

    let mut rings_checked = 0;
    for q in [4u32, 9, 16, 25, 49] {
        let f = field(q);
        for l in 2..=q as usize {
            if !(q as usize - 1).is_multiple_of(l - 1) {
                continue;
            }
            let rl = RlRing::new(f.clone(), l).unwrap();
            let set = rl.idempotents().unwrap();
            let gs = set.gammas();
            for i in 0..l {
                for j in 0..l {
                    let want = if i == j { gs[i].clone() } else { rl.zero() };
                    check("idempotent orthogonality", rl.mul(&gs[i], &gs[j]) == want);
                }
            }
            check("idempotent sum", gs.iter().fold(rl.zero(), |a, g| rl.add(&a, g)) == rl.one());
            rings_checked += 1;
        }
    }

    let f4 = field(4);
    for alpha in [Felt::ZERO, Felt::ONE] {
        let r = OreRing::new(f4.clone(), f4.frobenius(1), alpha);
        for a in f4.elements() {
            for n in 0..=8 {
                check("binomial lemma", r.x_pow_times(n, &a) == r.binomial_x_pow_times(n, &a));
            }
        }
    }

    let r4 = ring(4, Some(1));
    for _ in 0..500 {
        let deg = rng.gen_range(0..=12);
        let n = deg + rng.gen_range(0..3);
        let a = random_poly(&mut rng, &r4, deg + 1);
        let mut dense = a.coeffs().to_vec();
        dense.resize(n + 1, Felt::ZERO);
        dense.reverse();
        let direct = r4.poly(complement_vec(&f4, &dense).unwrap());
        check("rc identity", reverse_complement_poly(&r4, &a, n).unwrap() == direct);
    }

    let mut codes = 0;
    for &(q, alpha_log, lengths) in &[
        (4u32, None, &[4usize, 6, 8, 10, 12][..]),
        (4, Some(1), &[3, 6, 9][..]),
        (9, Some(2), &[4, 6, 8][..]),
        (16, Some(1), &[5][..]),
        (25, Some(1), &[4][..]),
    ] {
        let r = ring(q, alpha_log);
        for &n in lengths {
            for d in 1..n {
                if (q as u64).pow((n - d) as u32) > 1 << 16 {
                    continue;
                }
                for g in r.right_divisors(n, d, 0) {
                    let code = code_from_generator(&r, &g, n).unwrap();
                    let search = min_distance(code.code(), None, u64::MAX).unwrap();
                    check("column search vs enumeration", search.is_exact() && Some(search.d) == enumerate_min_distance(code.code()));
                    codes += 1;
                }
            }
        }
    }
    ok(
        failures.is_empty(),
        format!(
            "{} contexts x 500 triples/pairs/vectors, 1000 Leibniz pairs, {rings_checked} idempotent sets, 500 rc polynomials, {codes} codes cross-checked{}",
            CONTEXTS.len(),
            if failures.is_empty() { String::new() } else { format!("; failed: {failures:?}") }
        ),
    )
}

fn c9() -> Outcome {
    let r = ring(4, Some(1));
    let f = r.base();
    let t = f.generator();
    let lhs = r.mul(&r.x_power(2), &r.constant(t));
    // x t = t^2 x + t, so x^2 t = t x^2 + x + t by hand
    let by_hand = r.poly(vec![t, Felt::ONE, t]);
    let naive = r.monomial(t, 2);
    ok(
        lhs == by_hand && lhs != naive,
        format!("x^2 t = {}, differs from tx^2: {}", format_expression(f, lhs.coeffs()), lhs != naive),
    )
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, Duration, fn() -> Outcome); 9] = [
        (1, "F_49 example [21,19,3] MDS", Duration::from_secs(5), c1),
        (2, "Table 1 rows", Duration::from_secs(120), c2),
        (3, "Example 1-2 factorizations", Duration::from_secs(5), c3),
        (4, "Example 3 [30,17,8]", Duration::from_secs(600), c4),
        (5, "Example 4 / Table 5 DNA set", Duration::from_secs(1), c5),
        (6, "Table 4 rows with alpha in {1,t,t^2}", Duration::from_secs(300), c6),
        (7, "Table 2 (6,49) rows", Duration::from_secs(120), c7),
        (8, "property suites", Duration::from_secs(300), c8),
        (9, "x^2 t != t x^2 over F_4, alpha = t", Duration::from_secs(1), c9),
    ];
    let mut unexpected = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let pass = out.pass && took <= limit;
        let verdict = if pass { "PASS" } else { "FAIL" };
        let expected = if !pass && EXPECTED_FAILURES.contains(&id) { " (expected)" } else { "" };
        println!(
            "criterion {id}: {verdict}{expected} [{:.2}s / {}s] {name}: {}",
            took.as_secs_f64(),
            limit.as_secs(),
            out.detail
        );
        if pass == EXPECTED_FAILURES.contains(&id) {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        println!("{unexpected} criteria differ from the expected outcome");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
