//! Acceptance suite: one pass/fail line per criterion.

use std::time::Instant;

use num_bigint::BigUint;
use omfact_core::factorcore::property_corpus;
use omfact_core::gens::{omega_minus_gens, su_gens, PermModule};
use omfact_core::orders::{identity_grid, identity_suite, order_of, Family};
use omfact_core::verify::{
    build_instance, swap_absence_check, verify_row, Status, VerificationReport, VerifyOptions,
};
use omfact_core::{Fe, FormType, HermitianSpace, QuadraticSpace};

type Outcome = Result<String, String>;
type Criterion = (u32, fn() -> Outcome);

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn row(row: u32, m: u32, q: u32) -> Result<Vec<VerificationReport>, String> {
    let reports = verify_row(row, m, q, &VerifyOptions::default()).map_err(|e| e.to_string())?;
    for r in &reports {
        let failed: Vec<_> = r
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.clone())
            .collect();
        ensure(
            r.passed(),
            format!(
                "row {row} ({m},{q}) status {:?}, failed checks {failed:?}",
                r.status
            ),
        )?;
    }
    Ok(reports)
}

fn orbit_and_stab(r: &VerificationReport, orbit: u64, stab: u64) -> Result<(), String> {
    ensure(
        r.check_named("orbit equality").is_some_and(|c| c.passed),
        "orbit sets differ",
    )?;
    ensure(
        r.orbit_size == Some(orbit),
        format!("orbit {:?}, expected {orbit}", r.orbit_size),
    )?;
    ensure(
        r.intersection_order == Some(big(stab)),
        format!("stabilizer {:?}, expected {stab}", r.intersection_order),
    )
}

fn singular_count(space: &QuadraticSpace, value: Fe) -> u64 {
    space.count_value(value, 1 << 24).unwrap()
}

fn c1() -> Outcome {
    let t = Instant::now();
    let grid = identity_grid(20, &[2, 3, 4, 5, 8, 9]);
    for &(row, m, q) in &grid {
        let r = identity_suite(row, m, q).map_err(|e| e.to_string())?;
        ensure(r.passed(), format!("row {row} at ({m},{q})"))?;
    }
    Ok(format!(
        "{} (row, m, q) cases in {:?}",
        grid.len(),
        t.elapsed()
    ))
}

fn c2() -> Outcome {
    let mut n = 0;
    for (m, q) in [(4, 2), (4, 3), (4, 4), (5, 2), (6, 2)] {
        let h = omega_minus_gens(&QuadraticSpace::minus_standard(m, q).unwrap())
            .map_err(|e| e.to_string())?;
        let want = order_of(Family::OmegaMinus { m: m as u32, q }).unwrap();
        ensure(h.order().unwrap() == want, format!("Omega-_{}({q})", 2 * m))?;
        n += 1;
    }
    for (m, q) in [(3, 2), (3, 4), (4, 2), (4, 3), (5, 2), (5, 3)] {
        let h = su_gens(&HermitianSpace::standard(m, q).unwrap()).map_err(|e| e.to_string())?;
        let want = order_of(Family::SU { n: m as u32, q }).unwrap();
        ensure(h.order().unwrap() == want, format!("SU_{m}({q})"))?;
        n += 1;
    }
    Ok(format!("{n} gates"))
}

fn c3() -> Outcome {
    let a = &row(1, 5, 2)?[0];
    orbit_and_stab(a, 528, 25_920)?;
    let b = &row(1, 5, 3)?[0];
    orbit_and_stab(b, 19_764, 13_063_680)?;
    Ok("orbits 528 and 19764, stabilizers 25920 and 13063680".into())
}

fn c4() -> Outcome {
    let r = &row(2, 5, 2)?[0];
    orbit_and_stab(r, 495, 27_648)?;
    let inst = build_instance(2, 5, 2, &VerifyOptions::default()).map_err(|e| e.to_string())?;
    let singular = singular_count(&inst.space, Fe::ZERO);
    ensure(
        singular == 495,
        format!("{singular} nonzero singular vectors"),
    )?;
    Ok("orbit = all 495 singular vectors, stabilizer 27648".into())
}

fn c5() -> Outcome {
    let r = &row(3, 5, 2)?[0];
    orbit_and_stab(r, 63_360, 216)?;
    ensure(
        r.check_named("pointwise stabilizer order")
            .is_some_and(|c| c.passed),
        "pointwise order",
    )?;
    ensure(
        swap_absence_check(5, 2, &VerifyOptions::default()).map_err(|e| e.to_string())?,
        "swap reached under Y",
    )?;
    Ok("orbit 63360, swap absent under Y and present under Z, pointwise stabilizer 216".into())
}

fn c6() -> Outcome {
    let r = &row(4, 5, 2)?[0];
    ensure(
        r.intersection_order == Some(big(216)),
        format!("|X n Y| = {:?}", r.intersection_order),
    )?;
    ensure(r.x_order == Some(big(394_813_440)), "|X|")?;
    ensure(r.y_order == Some(big(27_371_520)), "|Y|")?;
    ensure(r.z_order == Some(big(50_030_759_116_800)), "|Z|")?;
    ensure(
        big(394_813_440) * big(27_371_520) == big(50_030_759_116_800) * big(216),
        "product count",
    )?;
    Ok("|X n Y| = 216, |X||Y| = |Z||X n Y|".into())
}

fn c7() -> Outcome {
    let r = &row(6, 4, 2)?[0];
    orbit_and_stab(r, 136, 120)?;
    ensure(
        r.x_order == Some(big(16_320)),
        format!("|X| = {:?}", r.x_order),
    )?;
    let inst = build_instance(6, 4, 2, &VerifyOptions::default()).map_err(|e| e.to_string())?;
    ensure(singular_count(&inst.space, Fe::ONE) == 136, "Q = 1 count")?;
    ensure(!r.findings.is_empty(), "display discrepancy not reported")?;
    Ok("orbit = all 136 vectors with Q = 1, |X| = 16320, stabilizer 120 = 2|Omega_3(4)|".into())
}

fn c8() -> Outcome {
    let r = &row(7, 4, 4)?[0];
    orbit_and_stab(r, 16_448, 8_160)?;
    Ok("orbit 16448, stabilizer 8160".into())
}

fn c9() -> Outcome {
    let r = &row(8, 6, 2)?[0];
    orbit_and_stab(r, 2_080, 120)?;
    let inst = build_instance(8, 6, 2, &VerifyOptions::default()).map_err(|e| e.to_string())?;
    ensure(singular_count(&inst.space, Fe::ONE) == 2_080, "Q = 1 count")?;
    let ext = r
        .checks
        .iter()
        .find(|c| c.name.starts_with("extension SU."))
        .ok_or("extension not recorded")?;
    Ok(format!(
        "orbit = all 2080 vectors with Q = 1, stabilizer 120, {}",
        ext.name
    ))
}

fn c10() -> Outcome {
    let module = PermModule::new().map_err(|e| e.to_string())?;
    ensure(
        module
            .space
            .classify_type(1 << 12)
            .map_err(|e| e.to_string())?
            == FormType::Minus,
        "not minus type",
    )?;
    ensure(
        singular_count(&module.space, Fe::ZERO) == 495,
        "singular count",
    )?;
    let rs = row(10, 5, 2)?;
    ensure(rs.len() == 2, "two variants")?;
    orbit_and_stab(&rs[0], 495, 483_840)?;
    orbit_and_stab(&rs[1], 495, 192)?;
    Ok("minus type, 495 singular vectors; A12 stabilizer 483840, M12 stabilizer 192".into())
}

fn c11() -> Outcome {
    let r = &row(11, 9, 2)?[0];
    ensure(
        r.expected.first().is_some_and(|e| e.value == big(130_815)),
        "index",
    )?;
    ensure(big(150_698_880) / big(1_152) == big(130_815), "quotient")?;
    ensure(big(150_698_880) % big(1_152) == big(0), "divisibility")?;
    ensure(big(513 * 255) == big(130_815), "factored form")?;
    Ok("150698880 / 1152 = 130815 = (2^9+1)(2^8-1)".into())
}

fn c12() -> Outcome {
    let r = property_corpus(2024, 130).map_err(|e| e.to_string())?;
    ensure(r.samples >= 500, format!("{} samples", r.samples))?;
    ensure(r.passed(), format!("failures: {:?}", r.failures))?;
    Ok(format!(
        "{} samples, {} factorizations, {} mixed-product checks",
        r.samples, r.factorizations, r.mixed_checked
    ))
}

fn run(criteria: &[Criterion]) -> bool {
    let mut all = true;
    for (n, f) in criteria {
        let t = Instant::now();
        let out = f();
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(d) => println!("criterion {n:>2}: PASS ({secs:.2}s) {d}"),
            Err(d) => {
                all = false;
                println!("criterion {n:>2}: FAIL ({secs:.2}s) {d}");
            }
        }
    }
    all
}

fn c13() -> Outcome {
    let o = VerifyOptions {
        cap: 50_000_000,
        ..VerifyOptions::default()
    };
    let mut notes = Vec::new();
    for (r, m, q) in [(5, 5, 4), (9, 6, 4)] {
        let rep = &verify_row(r, m, q, &o).map_err(|e| e.to_string())?[0];
        ensure(
            rep.status == Status::Verified,
            format!("row {r} ({m},{q}) status {:?}", rep.status),
        )?;
        notes.push(format!("row {r} ({m},{q}) verified"));
    }
    Ok(notes.join(", "))
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    // `cargo test -- --list` probes the target; report the suite as one test
    if args.iter().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let optional = args
        .iter()
        .any(|a| a == "--ignored" || a == "--include-ignored");
    let criteria: [Criterion; 12] = [
        (1, c1),
        (2, c2),
        (3, c3),
        (4, c4),
        (5, c5),
        (6, c6),
        (7, c7),
        (8, c8),
        (9, c9),
        (10, c10),
        (11, c11),
        (12, c12),
    ];
    let mut ok = run(&criteria);
    if optional {
        ok &= run(&[(13, c13)]);
    } else {
        println!(
            "criterion 13: SKIP optional long runs (rows 5 and 9); pass --include-ignored to run"
        );
    }
    if !ok {
        println!("acceptance: FAILED");
        std::process::exit(1);
    }
    println!("acceptance: all gating criteria passed");
}
