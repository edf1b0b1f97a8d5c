//! One line per acceptance criterion. Run with `cargo test --test acceptance`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nilorbit::ff_oracle::default_budget;
use nilorbit::{
    all_partitions, all_segmentations, canonical_quotient_order, collapse, component_count,
    decompose, descriptor, dimension, dominance_leq, dual_pair, e_polynomial, enumerate_valid,
    epoly_equality_check, fiber_point_count_with_budget, is_richardson,
    is_richardson_via_induction, is_special, minimal_richardson_bruteforce,
    minimal_richardson_orbits, orbit_dim, pairing_records, polarizations, realize, seesaw_check,
    springer_dual, springer_dual_inverse, uv_degree, BlockKind, Family, LeviType, OrbitLabel,
    Partition,
};

type Outcome = (bool, String);

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn dim(p: &Partition, f: Family) -> i64 {
    orbit_dim(&OrbitLabel::new(p.clone(), f).unwrap())
}

fn leq(a: &Partition, b: &Partition) -> bool {
    dominance_leq(a, b).unwrap()
}

fn sizes(f: Family, max_n: u32) -> impl Iterator<Item = u32> {
    (1..=max_n).filter(move |&n| f.accepts_size(n))
}

fn valid_up_to_rank(f: Family, rank: u32) -> Vec<Partition> {
    (1..=rank)
        .flat_map(|r| enumerate_valid(f.dimension_at_rank(r), f).unwrap())
        .collect()
}

fn collapse_oracle() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (f, max_n) in [(Family::B, 13), (Family::C, 12), (Family::D, 12)] {
        for n in sizes(f, max_n) {
            let valid = enumerate_valid(n, f).unwrap();
            for q in all_partitions(n) {
                let below: Vec<&Partition> = valid.iter().filter(|v| leq(v, &q)).collect();
                let top: Vec<&&Partition> = below
                    .iter()
                    .filter(|a| below.iter().all(|b| leq(b, a)))
                    .collect();
                let c = collapse(&q, f).unwrap();
                checked += 1;
                if top.len() != 1 || **top[0] != c {
                    bad.push(format!("{f} {q}"));
                }
            }
        }
    }
    (
        bad.is_empty(),
        format!("{checked} partitions, mismatches {bad:?}"),
    )
}

fn richardson_agreement() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for f in Family::ALL {
        for q in valid_up_to_rank(f, 6) {
            checked += 1;
            if is_richardson(&q, f).unwrap() != is_richardson_via_induction(&q, f) {
                bad.push(format!("{f} {q}"));
            }
        }
    }
    let so5: BTreeSet<String> = enumerate_valid(5, Family::B)
        .unwrap()
        .into_iter()
        .filter(|q| is_richardson(q, Family::B).unwrap())
        .map(|q| q.to_string())
        .collect();
    let spot: BTreeSet<String> = ["[5]", "[3,1,1]", "[1,1,1,1,1]"].map(String::from).into();
    (
        bad.is_empty() && so5 == spot,
        format!("{checked} orbits, mismatches {bad:?}, so5 Richardson {so5:?}"),
    )
}

fn minimal_richardson() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for f in Family::ALL {
        for q in valid_up_to_rank(f, 6) {
            checked += 1;
            let mut c = minimal_richardson_orbits(&q, f).unwrap();
            c.sort_unstable_by(|a, b| b.cmp(a));
            let brute = minimal_richardson_bruteforce(&q, f).unwrap();
            let incomparable = c
                .iter()
                .enumerate()
                .all(|(i, a)| c[i + 1..].iter().all(|b| !leq(a, b) && !leq(b, a)));
            let fixed = (c == vec![q.clone()]) == is_richardson(&q, f).unwrap();
            if c != brute || !incomparable || !fixed {
                bad.push(format!("{f} {q}"));
            }
        }
    }
    let s1 = minimal_richardson_orbits(&p("2,2,1"), Family::B).unwrap() == vec![p("3,1,1")];
    let mut big = minimal_richardson_orbits(&p("4,4,4,4,3,3,1"), Family::B).unwrap();
    big.sort();
    let s2 = big == vec![p("5,4,4,4,4,1,1"), p("5,5,3,3,3,3,1")]
        && !leq(&big[0], &big[1])
        && !leq(&big[1], &big[0]);
    (
        bad.is_empty() && s1 && s2,
        format!("{checked} orbits, mismatches {bad:?}, spots {s1} {s2}"),
    )
}

fn springer() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in sizes(Family::B, 13) {
        let special_c: BTreeSet<Partition> = enumerate_valid(n - 1, Family::C)
            .unwrap()
            .into_iter()
            .filter(|c| is_special(c, Family::C).unwrap())
            .collect();
        let mut image = BTreeSet::new();
        for b in enumerate_valid(n, Family::B).unwrap() {
            if !is_special(&b, Family::B).unwrap() {
                continue;
            }
            checked += 1;
            let c = springer_dual(&b).unwrap();
            let ok = springer_dual_inverse(&c).unwrap() == b
                && dim(&b, Family::B) == dim(&c, Family::C)
                && is_special(&c, Family::C).unwrap()
                && dual_pair(&b).unwrap().is_consistent()
                && image.insert(c);
            if !ok {
                bad.push(b.literal());
            }
        }
        if image != special_c {
            bad.push(format!("image at N={n} is not all special C orbits"));
        }
    }
    let spot = springer_dual(&p("3,1,1")).unwrap() == p("2,2");
    (
        bad.is_empty() && spot,
        format!("{checked} special B orbits, failures {bad:?}, [3,1,1] -> [2,2] {spot}"),
    )
}

fn finite_field_counts() -> Outcome {
    let budget = default_budget();
    let (mut matched, mut skipped) = (0, 0);
    let mut bad = Vec::new();
    let count = |q: &Partition, f: Family, l: &LeviType, m: u32| {
        fiber_point_count_with_budget(&realize(q, f, m).unwrap(), l, budget)
            .unwrap()
            .count()
    };
    for f in Family::ALL {
        for n in sizes(f, 9) {
            for q in enumerate_valid(n, f).unwrap() {
                for r in minimal_richardson_orbits(&q, f).unwrap() {
                    for l in polarizations(&r, f).unwrap() {
                        let e = e_polynomial(&descriptor(&q, f, &r, &l).unwrap()).unwrap();
                        for m in [3, 5] {
                            match count(&q, f, &l, m) {
                                Some(c) if c as i64 == e.eval(m as i64) => matched += 1,
                                Some(c) => bad.push(format!("{f} {q} {l} F_{m}: {c} vs {e}")),
                                None => skipped += 1,
                            }
                        }
                    }
                }
            }
        }
    }
    let spots = [
        ("2,2,1", "1;3", [4, 6]),
        ("3,1,1", "2;1", [2, 2]),
        ("2,2,2,2,1", "4;1", [1, 1]),
    ];
    let mut spot_ok = true;
    for (q, l, want) in spots {
        let l = LeviType::parse(l, Family::B).unwrap();
        let got = [3, 5].map(|m| count(&p(q), Family::B, &l, m));
        spot_ok &= got == want.map(Some);
    }
    (
        bad.is_empty() && spot_ok,
        format!("{matched} counts matched, {skipped} skipped for budget, mismatches {bad:?}, spots {spot_ok}"),
    )
}

fn structural_invariants() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for f in Family::ALL {
        for q in valid_up_to_rank(f, 6) {
            for r in minimal_richardson_orbits(&q, f).unwrap() {
                for l in polarizations(&r, f).unwrap() {
                    checked += 1;
                    let d = descriptor(&q, f, &r, &l).unwrap();
                    let e = e_polynomial(&d).unwrap();
                    let fd = dimension(&d).unwrap() as i64;
                    let ok = d.steps().all(|s| s.is_maximal())
                        && uv_degree(&e) as i64 == 2 * fd
                        && e.div_exact(component_count(&d) as i64).is_some()
                        && 2 * fd <= dim(&r, f) - dim(&q, f);
                    if !ok {
                        bad.push(format!("{f} {q} {r} {l}"));
                    }
                }
            }
        }
    }
    let o = p("4,4,4,4,3,3,1");
    let f = Family::B;
    let mut spots = true;
    let r1 = p("5,5,3,3,3,3,1");
    let d1 = descriptor(&o, f, &r1, &LeviType::parse("2,6;7", f).unwrap()).unwrap();
    spots &= d1.to_string() == "IG(2,4)"
        && dimension(&d1).unwrap() == 3
        && component_count(&d1) == 1
        && dim(&r1, f) == 192
        && dim(&o, f) == 186;
    let r2 = p("5,4,4,4,4,1,1");
    let d2 = descriptor(&o, f, &r2, &LeviType::parse("5,6;1", f).unwrap()).unwrap();
    spots &= e_polynomial(&d2).unwrap().eval(1) == 2
        && dimension(&d2).unwrap() == 0
        && dim(&r2, f) - dim(&o, f) == 6;
    (
        bad.is_empty() && spots,
        format!("{checked} descriptors, failures {bad:?}, spots {spots}"),
    )
}

fn duality_identities() -> Outcome {
    let mut pairs = 0;
    let mut pairings = 0;
    let mut bad = Vec::new();
    for q in valid_up_to_rank(Family::B, 6) {
        if !is_special(&q, Family::B).unwrap() {
            continue;
        }
        pairs += 1;
        let dp = dual_pair(&q).unwrap();
        let b2 = decompose(&q, Family::B).unwrap().count(BlockKind::B2) as u32;
        let abar = canonical_quotient_order(&q).unwrap();
        pairings += pairing_records(&dp).unwrap().len();
        if !seesaw_check(&dp).unwrap().pass
            || !epoly_equality_check(&dp).unwrap().pass
            || abar != 1 << b2
        {
            bad.push(q.literal());
        }
    }
    let recs = pairing_records(&dual_pair(&p("3,1,1")).unwrap()).unwrap();
    let mut prods: Vec<(u64, u64, u64)> = recs
        .iter()
        .map(|r| (r.components_b, r.components_c, r.product))
        .collect();
    prods.sort();
    let spot = prods == vec![(1, 2, 2), (2, 1, 2)];
    (
        bad.is_empty() && spot,
        format!(
            "{pairs} dual pairs, {pairings} pairings, failures {bad:?}, [3,1,1]/[2,2] {prods:?}"
        ),
    )
}

fn segmentation_uniqueness() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for f in Family::ALL {
        for n in sizes(f, 11) {
            for q in enumerate_valid(n, f).unwrap() {
                checked += 1;
                let segs = all_segmentations(&q, f);
                if segs.len() != 1 || segs[0] != decompose(&q, f).unwrap() {
                    bad.push(format!("{f} {q}: {}", segs.len()));
                }
            }
        }
    }
    (
        bad.is_empty(),
        format!("{checked} partitions, failures {bad:?}"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 8] = [
        ("collapse oracle", collapse_oracle, Duration::from_secs(10)),
        (
            "richardson agreement",
            richardson_agreement,
            Duration::from_secs(30),
        ),
        (
            "minimal richardson",
            minimal_richardson,
            Duration::from_secs(300),
        ),
        ("springer dual", springer, Duration::from_secs(300)),
        (
            "finite-field counts",
            finite_field_counts,
            Duration::from_secs(900),
        ),
        (
            "structural invariants",
            structural_invariants,
            Duration::from_secs(300),
        ),
        (
            "duality identities",
            duality_identities,
            Duration::from_secs(300),
        ),
        (
            "segmentation uniqueness",
            segmentation_uniqueness,
            Duration::from_secs(30),
        ),
    ];
    let mut all = true;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let (ok, detail) = run();
        let el = t.elapsed();
        let ok = ok && el <= limit;
        all &= ok;
        println!(
            "criterion {}: {} {name} ({:.2}s, limit {}s) {detail}",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            el.as_secs_f64(),
            limit.as_secs()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
