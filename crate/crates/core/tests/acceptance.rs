//! Acceptance suite: every check the engine promises, at its full stated
//! scale, one printed pass/fail line per criterion.
//!
//! Run with `cargo test -p weighted-words --test acceptance -- --nocapture`
//! to see the lines.

use std::time::{Duration, Instant};

use weighted_words::colored::ColoredInt;
use weighted_words::dilation::{
    dilated_value, verify_classical, verify_dilated_theorem, Classical, DilatedTheorem,
    DILATION_COMPANION, DILATION_SCHUR, DILATION_SILADIC,
};
use weighted_words::enumerate::enumerate_dk;
use weighted_words::ladder::{
    initial_conditions, verify_eqd, verify_initials, verify_keyprop, verify_product_limit,
    verify_proof_steps, verify_qdiff, GLadder, TableCache,
};
use weighted_words::report::ReplayReport;
use weighted_words::series::{Caps, TriSeries};
use weighted_words::Status;

fn ci(s: &str) -> ColoredInt {
    s.parse().unwrap()
}

fn finish(criterion: &str, description: &str, ok: bool, start: Instant, budget: Option<Duration>) {
    let elapsed = start.elapsed();
    println!(
        "criterion {criterion} ({description}): {} in {elapsed:.2?}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion} failed");
    if let Some(budget) = budget {
        assert!(elapsed < budget, "criterion {criterion} exceeded its {budget:?} budget");
    }
}

fn all_pass(reports: &[ReplayReport]) -> bool {
    let ok = reports.iter().all(|r| r.status == Status::Pass);
    if !ok {
        for r in reports.iter().filter(|r| r.status != Status::Pass) {
            println!("  {}", r.summary_line());
        }
    }
    ok
}

#[test]
fn criterion_1_initial_conditions() {
    let start = Instant::now();
    let caps = Caps::square(10);
    // the eight base polynomials, frozen term by term
    let expected: [(&str, &[(u32, u32, u32)]); 8] = [
        ("1_ab", &[(0, 0, 0)]),
        ("1_a", &[(0, 0, 0), (1, 0, 1)]),
        ("1_b2", &[(0, 0, 0), (1, 0, 1)]),
        ("1_b", &[(0, 0, 0), (1, 0, 1), (0, 1, 1)]),
        ("2_ab", &[(0, 0, 0), (1, 0, 1), (0, 1, 1), (1, 1, 2)]),
        ("2_a", &[(0, 0, 0), (1, 0, 1), (0, 1, 1), (1, 1, 2), (1, 0, 2)]),
        ("3_a2", &[(0, 0, 0), (1, 0, 1), (0, 1, 1), (1, 1, 2), (1, 0, 2), (2, 0, 3)]),
        (
            "2_b",
            &[
                (0, 0, 0),
                (1, 0, 1),
                (0, 1, 1),
                (1, 1, 2),
                (1, 0, 2),
                (2, 0, 3),
                (0, 1, 2),
                (1, 1, 3),
            ],
        ),
    ];
    let ladder = GLadder::build(7, caps);
    let mut cache = TableCache::new(caps);
    let reports = verify_initials(&mut cache);
    let mut ok = reports.len() == 8 && all_pass(&reports);
    for (idx, (name, terms)) in expected.iter().enumerate() {
        let x = ci(name);
        let frozen = {
            let mut s = TriSeries::zero(caps);
            for &(u, v, n) in *terms {
                s = s.add(&TriSeries::monomial(caps, u, v, n, 1)).unwrap();
            }
            s
        };
        let from_ladder = ladder.series_for(x).unwrap();
        let from_enum = enumerate_dk(x, caps).to_series();
        ok &= initial_conditions(caps)[idx].1 == frozen;
        ok &= from_ladder.eq_up_to(&frozen, caps.n).unwrap();
        ok &= from_enum.eq_up_to(&frozen, caps.n).unwrap();
    }
    finish("1", "eight initial series, ladder and enumeration", ok, start, Some(Duration::from_secs(1)));
}

#[test]
fn criterion_2_ladder_vs_oracle() {
    let start = Instant::now();
    let caps = Caps::square(30);
    let top = ci("12_b").rank();
    let ladder = GLadder::build(top, caps);
    let mut ok = true;
    for rank in 0..=top {
        let x = ColoredInt::from_rank(rank);
        let oracle = enumerate_dk(x, caps).to_series();
        if !ladder.series_for(x).unwrap().eq_up_to(&oracle, caps.n).unwrap() {
            println!("  ladder disagrees with enumeration at {x}");
            ok = false;
        }
    }
    finish("2", "ladder equals enumeration through 12_b at N=30", ok, start, Some(Duration::from_secs(120)));
}

#[test]
fn criterion_3_keyprop() {
    let start = Instant::now();
    let caps = Caps::square(30);
    // key3 at k = 12 references G_{26_ab}
    let ladder = GLadder::build(ci("26_ab").rank(), caps);
    let mut reports = Vec::new();
    for k in 1..=12 {
        reports.extend(verify_keyprop(k, &ladder).unwrap());
    }
    let ok = reports.len() == 48 && all_pass(&reports);
    finish("3", "key1..key4 for k = 1..12 at N=30", ok, start, Some(Duration::from_secs(120)));
}

#[test]
fn criterion_4_product_limit() {
    let start = Instant::now();
    let report = verify_product_limit(Caps::square(25));
    let ok = report.is_pass();
    if !ok {
        println!("  {}", report.summary_line());
    }
    finish("4", "full enumeration equals the two-colour product, n <= 25", ok, start, Some(Duration::from_secs(60)));
}

#[test]
fn criterion_5_recurrences_and_proof_steps() {
    let start = Instant::now();
    let caps = Caps::square(30);
    let mut cache = TableCache::new(caps);
    let mut ok = true;
    let mut resolution: Option<String> = None;
    for k in 1..=8 {
        let mut reports = verify_eqd(k, &mut cache);
        reports.extend(verify_qdiff(k, &mut cache));
        let steps = verify_proof_steps(k, &mut cache);
        // every identity of the catalogue must be replayed at its k range
        let expected: &[&str] = if k >= 2 {
            &[
                "plic", "ploc", "eq1star", "eq2star", "cas2eq1", "cas2eq2", "cas2eq3", "plouf",
                "plouf3", "etoile", "star", "paf", "eq34", "goal", "pif3", "pif1", "pif2",
                "e1_ab", "e2_b", "e3_ab_eq_b", "e4_a2", "e5_a", "e6_a2_eq_a",
            ]
        } else {
            &[
                "plic", "cas2eq1", "plouf", "star", "eq34", "goal", "pif3", "pif1", "pif2",
                "e1_ab", "e2_b", "e3_ab_eq_b",
            ]
        };
        for id in expected {
            if !steps.iter().any(|r| r.id == *id) {
                println!("  missing identity {id} at k={k}");
                ok = false;
            }
        }
        if let Some(e5) = steps.iter().find(|r| r.id == "e5_a") {
            match e5.note.as_deref() {
                Some("shift n-(2k+3) holds; printed alternative n-(2k+2) fails") => {
                    if resolution.is_none() {
                        resolution = Some(format!("{} (decided at k={k})", e5.note.clone().unwrap()));
                    }
                }
                // near the cap both shifted tables are identically zero,
                // so the probe is vacuous there; the small k decide it
                Some("both candidate shifts hold (tables too small to separate)") if 4 * k + 2 > caps.n => {}
                other => {
                    println!("  unexpected offset resolution at k={k}: {other:?}");
                    ok = false;
                }
            }
        }
        reports.extend(steps);
        ok &= all_pass(&reports);
    }
    if let Some(res) = &resolution {
        println!("  e-table shift for e_{{2k_a}} resolved: {res}");
    } else {
        ok = false;
    }
    finish("5", "eqd1..8 and all intermediate identities, k <= 8, N=30", ok, start, None);
}

#[test]
fn criterion_6_dilated_theorems() {
    let start = Instant::now();
    let mut ok = true;
    for (theorem, n) in [
        (DilatedTheorem::Refdilat, 60),
        (DilatedTheorem::Comp, 60),
        (DilatedTheorem::Newschur, 40),
        (DilatedTheorem::Refinement, 60),
    ] {
        let reports = verify_dilated_theorem(theorem, n);
        ok &= reports.len() == 3 && all_pass(&reports);
    }
    finish("6", "three-way dilated theorems (n <= 60 / 40)", ok, start, Some(Duration::from_secs(300)));
}

#[test]
fn criterion_7_classical_references() {
    let start = Instant::now();
    let mut ok = true;
    for which in [Classical::Rr0, Classical::Rr1, Classical::Schur] {
        let r = verify_classical(which, 40);
        if !r.is_pass() {
            println!("  {}", r.summary_line());
            ok = false;
        }
    }
    let r = verify_classical(Classical::SchurProduct, 40);
    if !r.is_pass() {
        println!("  {}", r.summary_line());
        ok = false;
    }
    finish("7", "Rogers-Ramanujan, Schur, and the Schur product to q^40", ok, start, None);
}

#[test]
fn criterion_8_property_suites() {
    use rand::{Rng, SeedableRng};

    let start = Instant::now();
    let caps = Caps::square(8);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let random_series = |rng: &mut rand_chacha::ChaCha8Rng| {
        let mut s = TriSeries::zero(caps);
        for _ in 0..rng.gen_range(0..6) {
            let term = TriSeries::monomial(
                caps,
                rng.gen_range(0..=3),
                rng.gen_range(0..=3),
                rng.gen_range(0..=6),
                rng.gen_range(-4..=4),
            );
            s = s.add(&term).unwrap();
        }
        s
    };
    let one = TriSeries::one(caps);
    let mut ok = true;
    for _ in 0..200 {
        let s = random_series(&mut rng);
        let t = random_series(&mut rng);
        let r = random_series(&mut rng);
        ok &= s.add(&t).unwrap() == t.add(&s).unwrap();
        ok &= s.mul(&t).unwrap() == t.mul(&s).unwrap();
        ok &= s.add(&t).unwrap().add(&r).unwrap() == s.add(&t.add(&r).unwrap()).unwrap();
        ok &= s.mul(&t).unwrap().mul(&r).unwrap() == s.mul(&t.mul(&r).unwrap()).unwrap();
        ok &= s.add(&t).unwrap().mul(&r).unwrap()
            == s.mul(&r).unwrap().add(&t.mul(&r).unwrap()).unwrap();
        ok &= s.mul(&one).unwrap() == s;
        // substitution homomorphism
        let lhs = s.mul(&t).unwrap().swap_sub().unwrap();
        let rhs = s.swap_sub().unwrap().mul(&t.swap_sub().unwrap()).unwrap();
        ok &= lhs.eq_up_to(&rhs, caps.n).unwrap();
        if !ok {
            println!("  algebraic law failed for {} / {}", s.to_polynomial_string(), t.to_polynomial_string());
            break;
        }
    }
    // horizon-soundness lemma: image at least preimage for every allowed
    // part of value <= 50 under each of the three dilations
    for spec in [DILATION_SILADIC, DILATION_COMPANION, DILATION_SCHUR] {
        for x in ColoredInt::all_up_to_value(50) {
            if x.is_allowed_part() && dilated_value(x, spec) < x.value() as i64 {
                println!("  horizon lemma fails for {x} under {spec}");
                ok = false;
            }
        }
    }
    finish("8", "ring laws, substitution homomorphism, horizon lemma", ok, start, None);
}
