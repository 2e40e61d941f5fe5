//! End-to-end acceptance checks. Prints one line per criterion and fails if
//! any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::Instant;

use arrangement_core::algebra::{default_var_names, parse_poly, Polynomial};
use arrangement_core::arrangement::io::read_file;
use arrangement_core::arrangement::random::sample_suite;
use arrangement_core::arrangement::{Arrangement, Flat, IntersectionLattice};
use arrangement_core::assoc::associated_primes;
use arrangement_core::classification::{classify, saito_check, Classification, Derivation, Kind};
use arrangement_core::groebner::{free_resolution, groebner_with_cofactors, verify_groebner, BettiTable, Ideal};
use arrangement_core::properties::{check_arrangement, Checks};
use arrangement_core::Rat;

const SUITE_SEED: u64 = 2024;
const SUITE_SIZE: usize = 200;

fn load(name: &str) -> Arrangement {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../arrangements")
        .join(format!("{name}.json"));
    read_file(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn suite() -> Vec<Arrangement> {
    sample_suite(SUITE_SEED, SUITE_SIZE, &[3, 4], 3..=7, 3).unwrap()
}

/// Shifts of `F_1, F_2, ...` as positive degrees, ascending within each module.
fn shifts(b: &BettiTable) -> Vec<Vec<i64>> {
    (1..=b.projdim()).map(|i| b.shifts(i)).collect()
}

fn expect_shifts(what: &str, b: &BettiTable, want: &[&[i64]]) {
    let want: Vec<Vec<i64>> = want.iter().map(|s| s.to_vec()).collect();
    assert_eq!(shifts(b), want, "{what}: resolution {}", b.notation());
}

fn expect_pog(c: &Classification, poexp: &[i64], level: i64) {
    let want = Kind::PlusOneGenerated {
        poexp: poexp.to_vec(),
        level,
    };
    assert_eq!(c.kind, want);
}

fn prime(a: &Arrangement, gens: &[&str]) -> Ideal<Rat> {
    let gens = gens.iter().map(|g| parse_poly(g, a.names()).unwrap()).collect();
    Ideal::new(a.nvars(), gens).unwrap()
}

/// Embedded flats of `a`, matched against the expected prime ideals.
fn expect_embedded(a: &Arrangement, want: &[&[&str]]) -> Vec<Flat> {
    let ass = associated_primes(a).unwrap();
    let rank2 = a.lattice().rank_level(2).to_vec();
    assert!(rank2.iter().all(|x| ass.flats.contains(x)), "a rank-2 flat is missing");
    let embedded: Vec<Flat> = ass.embedded().cloned().collect();
    assert_eq!(embedded.len(), want.len(), "embedded flats {embedded:?}");
    for gens in want {
        let p = prime(a, gens);
        let hit = embedded
            .iter()
            .any(|x| a.flat_prime_ideal::<Rat>(x).unwrap() == p);
        assert!(hit, "no embedded flat with ideal <{}>", gens.join(", "));
    }
    embedded
}

fn criterion_1() -> String {
    let a = load("ex34");
    let c = classify(&a);
    expect_pog(&c, &[1, 1, 2, 2], 2);
    expect_shifts("S/J", &c.betti, &[&[4, 4, 4, 4], &[5, 6, 6, 6], &[7]]);
    let d = c.derivations.resolution.betti();
    assert_eq!(d.shifts(0), vec![1, 1, 2, 2, 2]);
    assert_eq!(d.shifts(1), vec![3]);
    assert_eq!(d.projdim(), 1);
    c.betti.notation()
}

fn criterion_2() -> String {
    let c = classify(&load("ex35"));
    expect_pog(&c, &[1, 4, 4, 4], 5);
    expect_shifts("S/J", &c.betti, &[&[11, 11, 11, 11], &[15, 15, 15, 16], &[17]]);
    c.betti.notation()
}

fn criterion_3() -> String {
    let c = classify(&load("ex36"));
    assert_eq!(c.kind, Kind::Other);
    expect_shifts("S/J", &c.betti, &[&[7, 7, 7, 7], &[8, 11, 11, 11], &[13]]);
    c.betti.notation()
}

fn criterion_4() -> String {
    let a = load("ex45");
    let c = classify(&a);
    expect_pog(&c, &[1, 5, 5, 5], 5);
    expect_shifts("S/J", &c.betti, &[&[14, 14, 14, 14], &[19, 19, 19, 19], &[20]]);
    expect_embedded(&a, &[]);
    c.betti.notation()
}

fn criterion_5() -> String {
    let a = load("ex34");
    expect_embedded(&a, &[&["y - z", "x - t", "z - t"]]);
    let b = load("ex35");
    expect_embedded(
        &b,
        &[&["y + z", "x + z", "t"], &["y - z", "x - z", "t"], &["y - t", "x - t", "z"]],
    );
    "one and three embedded primes".into()
}

fn criterion_6() -> String {
    let a = load("ex411");
    let c = classify(&a);
    assert_eq!(c.kind, Kind::Other);
    expect_shifts("S/J", &c.betti, &[&[6, 6, 6, 6], &[7, 10, 10, 10, 10, 10], &[11, 11, 11]]);
    expect_embedded(&a, &[&["x", "y", "z"]]);
    c.betti.notation()
}

fn criterion_7() -> String {
    let c = classify(&load("sec5"));
    assert!(c.kind.is_pog(), "{:?}", c.kind);
    expect_shifts("A", &c.betti, &[&[7; 5], &[9; 5], &[10]]);
    let c1 = classify(&load("sec5_a1"));
    assert!(c1.kind.is_free(), "{:?}", c1.kind);
    expect_shifts("A1", &c1.betti, &[&[6; 5], &[7, 7, 8, 8]]);
    let c2 = classify(&load("sec5_a2"));
    assert!(c2.kind.is_pog(), "{:?}", c2.kind);
    expect_shifts("A2", &c2.betti, &[&[6; 5], &[7, 8, 8, 8, 8], &[9]]);
    let c3 = classify(&load("sec5_a3"));
    assert_eq!(c3.kind, Kind::Other);
    expect_shifts("A3", &c3.betti, &[&[6; 5], &[8; 7], &[9; 4], &[10]]);
    "POG, Free, POG, Other".into()
}

fn criterion_8() -> String {
    let mut checks = 0;
    let mut kinds = [0usize; 3];
    for (k, a) in suite().iter().enumerate() {
        let rep = check_arrangement(a, Checks::default()).unwrap();
        assert!(rep.passed(), "instance {k} {:?}: {:?}", a.rendered_forms(), rep.violations);
        checks += rep.checks;
        kinds[match rep.kind {
            Kind::Free { .. } => 0,
            Kind::PlusOneGenerated { .. } => 1,
            Kind::Other => 2,
        }] += 1;
    }
    format!(
        "{SUITE_SIZE} instances, {checks} checks, 0 violations (free {}, pog {}, other {})",
        kinds[0], kinds[1], kinds[2]
    )
}

fn derivations(a: &Arrangement, coeffs: &[&[&str]]) -> Vec<Derivation<Rat>> {
    coeffs
        .iter()
        .map(|row| Derivation::new(row.iter().map(|s| parse_poly(s, a.names()).unwrap()).collect()).unwrap())
        .collect()
}

fn criterion_9() -> String {
    for (name, l) in [("boolean3", 3), ("boolean4", 4), ("braid3", 3), ("braid4", 4)] {
        let a = load(name);
        let c = classify(&a);
        let Kind::Free { exponents } = &c.kind else {
            panic!("{name} is {:?}", c.kind);
        };
        assert_eq!(exponents.iter().sum::<i64>(), a.len() as i64, "{name}");
        let names = a.names();
        let cands: Vec<Vec<String>> = (0..l)
            .map(|k| {
                (0..l)
                    .map(|i| match (name.starts_with("boolean"), k) {
                        (true, _) if i == k => names[i].clone(),
                        (true, _) => "0".into(),
                        (false, 0) => "1".into(),
                        (false, k) => format!("{}^{k}", names[i]),
                    })
                    .collect()
            })
            .collect();
        let rows: Vec<Vec<&str>> = cands.iter().map(|r| r.iter().map(String::as_str).collect()).collect();
        let rows: Vec<&[&str]> = rows.iter().map(Vec::as_slice).collect();
        assert!(saito_check(&derivations(&a, &rows), &a).unwrap(), "{name}: candidate basis");
        assert!(saito_check(&c.derivations.generators, &a).unwrap(), "{name}: computed basis");
    }
    let names = default_var_names(2);
    let xy: Vec<Polynomial<Rat>> = ["x", "y"].iter().map(|s| parse_poly(s, &names).unwrap()).collect();
    let (r, b) = free_resolution(2, &xy).unwrap().minimalize();
    expect_shifts("Koszul", &b, &[&[1, 1], &[2]]);
    let d2 = r.maps()[1].entries();
    let (x, y) = (&xy[0], &xy[1]);
    let col = [d2[0][0].clone(), d2[1][0].clone()];
    assert!(col == [-y.clone(), x.clone()] || col == [y.clone(), -x.clone()], "Koszul map {col:?}");
    "boolean and braid free, Saito bases verified, Koszul exact".into()
}

fn criterion_10() -> String {
    let mut lattices = 0;
    let mut bases = 0;
    for (k, a) in suite().iter().enumerate() {
        if a.len() <= 6 {
            assert_eq!(a.lattice(), IntersectionLattice::brute_force(a), "instance {k}");
            lattices += 1;
        }
        let gens = a.jacobian_ideal::<Rat>().generators().to_vec();
        let gb = groebner_with_cofactors(&gens).unwrap();
        assert!(verify_groebner(&gens, &gb), "instance {k}: Jacobian basis");
        bases += 1;
    }
    let internal = if cfg!(debug_assertions) {
        "engine self-checks active"
    } else {
        "engine self-checks compiled out"
    };
    format!("{lattices} lattices, {bases} Jacobian bases, {internal}")
}

fn main() {
    let criteria: [(u32, &str, fn() -> String); 10] = [
        (1, "ex34 POG and resolutions", criterion_1),
        (2, "ex35 POG", criterion_2),
        (3, "ex36 Other", criterion_3),
        (4, "ex45 POG and associated primes", criterion_4),
        (5, "associated primes of ex34 and ex35", criterion_5),
        (6, "ex411 Other with one embedded prime", criterion_6),
        (7, "sec5 family", criterion_7),
        (8, "random property suite", criterion_8),
        (9, "Saito and Koszul coherence", criterion_9),
        (10, "lattice and Gröbner oracles", criterion_10),
    ];
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (n, name, f) in criteria {
        if !only.is_empty() && !only.contains(&n) {
            continue;
        }
        let t = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f));
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("criterion {n:>2} PASS {name}: {detail} ({secs:.2} s)"),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {n:>2} FAIL {name}: {msg} ({secs:.2} s)");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
